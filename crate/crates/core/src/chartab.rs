use std::sync::Arc;

use num::{BigRational, Zero};

use crate::classes::{conjugacy_classes, ClassData};
use crate::cyclotomic::{rat, Cyc, Rat};
use crate::error::{Error, Result};
use crate::group::{ElemId, Epimorphism, PermGroup};
use crate::subgroup::{generated_subgroup, SubgroupHandle};

/// The exact ordinary character table of a finite group.
///
/// Rows are sorted by degree and then by the canonical encoding of their
/// value vectors, so tables print identically across runs.
pub struct CharacterTable {
    pub group: PermGroup,
    pub class_data: Arc<ClassData>,
    /// `rows[r][k]` = value of the r-th irreducible character on class k.
    pub rows: Vec<Vec<Cyc>>,
    pub degrees: Vec<u64>,
    /// Prime used for the modular eigenvalue computation.
    pub dixon_prime: u64,
    pub exponent: u64,
}

/// One row of a character table.
#[derive(Clone)]
pub struct Character {
    pub table: Arc<CharacterTable>,
    pub row: usize,
}

/// An exact class function, not necessarily irreducible: the result of
/// restricting, inducing, or multiplying characters.
#[derive(Clone)]
pub struct ClassFunction {
    pub group: PermGroup,
    pub values: Vec<Cyc>,
}

/// The character table, computed on first use and cached on the group.
pub fn character_table(group: &PermGroup) -> Result<Arc<CharacterTable>> {
    group
        .inner
        .chartab
        .get_or_init(|| crate::dixon::build_table(group).map(Arc::new))
        .clone()
}

impl CharacterTable {
    pub fn class_count(&self) -> usize {
        self.class_data.class_count()
    }

    pub fn character(self: &Arc<Self>, row: usize) -> Character {
        Character {
            table: self.clone(),
            row,
        }
    }

    pub fn characters(self: &Arc<Self>) -> Vec<Character> {
        (0..self.rows.len()).map(|r| self.character(r)).collect()
    }

    /// Index of the principal (all-ones) character.
    pub fn principal_row(&self) -> usize {
        self.rows
            .iter()
            .position(|row| row.iter().all(|v| *v == Cyc::one()))
            .expect("principal character is always present")
    }

    pub fn find_row(&self, values: &[Cyc]) -> Option<usize> {
        self.rows.iter().position(|row| row.as_slice() == values)
    }

    /// Exact first and second orthogonality. Any violation is a defect in
    /// the table construction, never a tolerance issue.
    pub fn verify_orthogonality(&self) -> Result<()> {
        let r = self.rows.len();
        let order = rat(self.group.order()? as i64);
        let sizes = &self.class_data.sizes;
        for a in 0..r {
            for b in 0..r {
                let mut sum = Cyc::zero();
                for k in 0..r {
                    let term = self.rows[a][k].mul(&self.rows[b][k].conj());
                    sum = sum.add(&term.scale(&rat(sizes[k] as i64)));
                }
                let expected = if a == b { order.clone() } else { Rat::zero() };
                if sum != Cyc::from_rat(expected) {
                    return Err(Error::Defect(format!(
                        "first orthogonality fails for rows {a}, {b} of {}",
                        self.group.name()
                    )));
                }
            }
        }
        for i in 0..r {
            for j in 0..r {
                let mut sum = Cyc::zero();
                for row in &self.rows {
                    sum = sum.add(&row[i].mul(&row[j].conj()));
                }
                let expected = if i == j {
                    Cyc::from_rat(&order / rat(sizes[i] as i64))
                } else {
                    Cyc::zero()
                };
                if sum != expected {
                    return Err(Error::Defect(format!(
                        "second orthogonality fails for classes {i}, {j} of {}",
                        self.group.name()
                    )));
                }
            }
        }
        Ok(())
    }
}

impl Character {
    pub fn group(&self) -> &PermGroup {
        &self.table.group
    }

    pub fn degree(&self) -> u64 {
        self.table.degrees[self.row]
    }

    pub fn value(&self, class: usize) -> &Cyc {
        &self.table.rows[self.row][class]
    }

    pub fn values(&self) -> &[Cyc] {
        &self.table.rows[self.row]
    }

    pub fn value_at_element(&self, id: ElemId) -> &Cyc {
        self.value(self.table.class_data.class_of[id as usize])
    }

    pub fn is_linear(&self) -> bool {
        self.degree() == 1
    }

    pub fn is_principal(&self) -> bool {
        self.values().iter().all(|v| *v == Cyc::one())
    }

    pub fn to_class_function(&self) -> ClassFunction {
        ClassFunction {
            group: self.table.group.clone(),
            values: self.values().to_vec(),
        }
    }

    /// Does the kernel contain the given subgroup? True exactly when every
    /// generator takes the value of the degree.
    pub fn kernel_contains(&self, h: &SubgroupHandle) -> bool {
        let deg = Cyc::from_int(self.degree() as i64);
        h.generator_ids()
            .iter()
            .all(|&g| *self.value_at_element(g) == deg)
    }

    /// The kernel: all elements with value equal to the degree.
    pub fn kernel(&self) -> Result<SubgroupHandle> {
        let deg = Cyc::from_int(self.degree() as i64);
        let cd = &self.table.class_data;
        let mut members = Vec::new();
        for (k, class) in cd.classes.iter().enumerate() {
            if *self.value(k) == deg {
                members.extend_from_slice(class);
            }
        }
        let h = SubgroupHandle::from_members(self.group(), members)?;
        if !h.is_normal() {
            return Err(Error::Defect("character kernel not normal".into()));
        }
        Ok(h)
    }

    /// The vanishing-off subgroup: generated by all elements where the
    /// character is nonzero. Always contains the kernel.
    pub fn vanishing_off(&self) -> Result<SubgroupHandle> {
        let cd = &self.table.class_data;
        let mut seeds = Vec::new();
        for (k, class) in cd.classes.iter().enumerate() {
            if !self.value(k).is_zero() {
                seeds.extend_from_slice(class);
            }
        }
        let v = generated_subgroup(self.group(), &seeds)?;
        let ker = self.kernel()?;
        if !v.contains_subgroup(&ker) {
            return Err(Error::Defect(
                "kernel not contained in vanishing-off subgroup".into(),
            ));
        }
        Ok(v)
    }

    /// Multiplicities of each n-th root of unity among the eigenvalues of a
    /// representing matrix at class k, where n is the representative order:
    /// discrete Fourier inversion of the values along the power orbit.
    pub fn eigenvalue_multiplicities(&self, class: usize) -> Result<Vec<u64>> {
        let cd = &self.table.class_data;
        let n = cd.rep_orders[class];
        let mut mults = Vec::with_capacity(n as usize);
        let n_rat = Cyc::from_rat(Rat::new(1.into(), (n as i64).into()));
        for j in 0..n {
            let mut sum = Cyc::zero();
            for l in 0..n {
                let v = self.value(cd.power_class(class, l));
                // zeta_n^(-jl)
                let w = Cyc::root_of_unity(n, (n - (j * l) % n) % n);
                sum = sum.add(&v.mul(&w));
            }
            let m = sum.mul(&n_rat);
            let Some(int) = m.as_u64() else {
                return Err(Error::Defect(format!(
                    "non-integral eigenvalue multiplicity at class {class}"
                )));
            };
            mults.push(int);
        }
        let total: u64 = mults.iter().sum();
        if total != self.degree() {
            return Err(Error::Defect(format!(
                "eigenvalue multiplicities at class {class} sum to {total}, expected {}",
                self.degree()
            )));
        }
        Ok(mults)
    }

    /// The determinant character and its multiplicative order.
    ///
    /// At each class the determinant value is the root of unity whose
    /// exponent is the weighted sum of eigenvalue multiplicities; the
    /// resulting linear class function must be a row of the table.
    pub fn det_order(&self) -> Result<(Character, u64)> {
        let cd = &self.table.class_data;
        let r = cd.class_count();
        let mut values = Vec::with_capacity(r);
        for k in 0..r {
            let n = cd.rep_orders[k];
            let mults = self.eigenvalue_multiplicities(k)?;
            let mut exp: u64 = 0;
            for (j, &m) in mults.iter().enumerate() {
                exp = (exp + (j as u64 % n) * (m % n)) % n;
            }
            values.push(Cyc::root_of_unity(n, exp));
        }
        let row = self.table.find_row(&values).ok_or_else(|| {
            Error::Defect("determinant character is not a row of the table".into())
        })?;
        if self.table.degrees[row] != 1 {
            return Err(Error::Defect("determinant character is not linear".into()));
        }
        let det = Character {
            table: self.table.clone(),
            row,
        };
        let mut order = 1u64;
        for v in det.values() {
            let o = v
                .root_of_unity_order()
                .ok_or_else(|| Error::Defect("determinant value is not a root of unity".into()))?;
            order = num::integer::lcm(order, o);
        }
        Ok((det, order))
    }

    /// Pointwise product with another character of the same group.
    pub fn product(&self, other: &Character) -> Result<ClassFunction> {
        if !self.group().same_group(other.group()) {
            return Err(Error::GroupMismatch);
        }
        let values = self
            .values()
            .iter()
            .zip(other.values())
            .map(|(a, b)| a.mul(b))
            .collect();
        Ok(ClassFunction {
            group: self.group().clone(),
            values,
        })
    }

    /// The complex conjugate character; always a row of the table.
    pub fn conjugate(&self) -> Result<Character> {
        let values: Vec<Cyc> = self.values().iter().map(|v| v.conj()).collect();
        let row = self
            .table
            .find_row(&values)
            .ok_or_else(|| Error::Defect("conjugate character is not a row".into()))?;
        Ok(Character {
            table: self.table.clone(),
            row,
        })
    }
}

impl ClassFunction {
    pub fn from_character(chi: &Character) -> ClassFunction {
        chi.to_class_function()
    }

    pub fn degree_value(&self) -> &Cyc {
        // identity class is always class 0
        &self.values[0]
    }

    /// Exact inner product `(1/|G|) sum_k |C_k| a(g_k) conj(b(g_k))`.
    /// For pairs of characters this is a non-negative integer; a
    /// non-rational result signals a defect in the caller.
    pub fn inner_product(&self, other: &ClassFunction) -> Result<Rat> {
        if !self.group.same_group(&other.group) {
            return Err(Error::GroupMismatch);
        }
        let cd = conjugacy_classes(&self.group)?;
        let mut sum = Cyc::zero();
        for k in 0..cd.class_count() {
            let term = self.values[k].mul(&other.values[k].conj());
            sum = sum.add(&term.scale(&rat(cd.sizes[k] as i64)));
        }
        let total = sum.scale(&Rat::new(1.into(), (self.group.order()? as i64).into()));
        total
            .as_rational()
            .ok_or_else(|| Error::Defect("inner product of class functions not rational".into()))
    }

    /// Decompose into irreducible constituents `(row, multiplicity)` with
    /// positive multiplicity. Multiplicities must be non-negative integers
    /// and their degree-weighted sum must reproduce the degree.
    pub fn constituents(&self) -> Result<Vec<(usize, u64)>> {
        let table = character_table(&self.group)?;
        let mut out = Vec::new();
        let mut degree_sum = BigRational::zero();
        for (row, _) in table.rows.iter().enumerate() {
            let chi = table.character(row);
            let m = self.inner_product(&chi.to_class_function())?;
            if m.is_zero() {
                continue;
            }
            if !m.is_integer() || m < Rat::zero() {
                return Err(Error::Defect(format!(
                    "non-integral constituent multiplicity {m} in {}",
                    self.group.name()
                )));
            }
            use num::ToPrimitive;
            let mult = m.to_integer().to_u64().ok_or_else(|| {
                Error::Defect("constituent multiplicity out of range".into())
            })?;
            degree_sum += m * rat(table.degrees[row] as i64);
            out.push((row, mult));
        }
        let deg = self
            .degree_value()
            .as_rational()
            .ok_or_else(|| Error::Defect("class function degree not rational".into()))?;
        if degree_sum != deg {
            return Err(Error::Defect(
                "constituent degrees do not add up to the degree".into(),
            ));
        }
        Ok(out)
    }

    /// Degrees of the irreducible constituents, sorted and deduplicated.
    pub fn constituent_degrees(&self) -> Result<Vec<u64>> {
        let table = character_table(&self.group)?;
        let mut degs: Vec<u64> = self
            .constituents()?
            .into_iter()
            .map(|(row, _)| table.degrees[row])
            .collect();
        degs.sort_unstable();
        degs.dedup();
        Ok(degs)
    }

    pub fn product(&self, other: &ClassFunction) -> Result<ClassFunction> {
        if !self.group.same_group(&other.group) {
            return Err(Error::GroupMismatch);
        }
        Ok(ClassFunction {
            group: self.group.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.mul(b))
                .collect(),
        })
    }
}

/// Restrict a class function on the parent of `h` to `h.as_group()`,
/// by transporting values along the embedding.
pub fn restrict(f: &ClassFunction, h: &SubgroupHandle) -> Result<ClassFunction> {
    if !f.group.same_group(h.parent()) {
        return Err(Error::GroupMismatch);
    }
    let parent_cd = conjugacy_classes(&f.group)?;
    let sub = h.as_group();
    let sub_cd = conjugacy_classes(&sub)?;
    let values = sub_cd
        .representatives
        .iter()
        .map(|&local| {
            let parent_id = h.parent_id(local);
            f.values[parent_cd.class_of[parent_id as usize]].clone()
        })
        .collect();
    Ok(ClassFunction { group: sub, values })
}

pub fn restrict_character(chi: &Character, h: &SubgroupHandle) -> Result<ClassFunction> {
    restrict(&chi.to_class_function(), h)
}

/// Induce a class function on `h.as_group()` up to the parent group.
/// Full element summation at desk scale; the class-fusion formula above it.
pub fn induce(h: &SubgroupHandle, theta: &ClassFunction) -> Result<ClassFunction> {
    if h.parent().order()? <= 2000 {
        induce_by_summation(h, theta)
    } else {
        induce_by_fusion(h, theta)
    }
}

/// Induction by summing over the whole parent group:
/// `theta^G(g) = (1/|H|) sum over x in G with x g x^-1 in H of theta(x g x^-1)`.
pub fn induce_by_summation(h: &SubgroupHandle, theta: &ClassFunction) -> Result<ClassFunction> {
    check_theta(h, theta)?;
    let parent = h.parent();
    let parent_cd = conjugacy_classes(parent)?;
    let sub = h.as_group();
    let sub_cd = conjugacy_classes(&sub)?;
    let order = parent.order()? as u64;
    let scale = Rat::new(1.into(), (h.order() as i64).into());
    let mut values = Vec::with_capacity(parent_cd.class_count());
    for &g in &parent_cd.representatives {
        let mut sum = Cyc::zero();
        for x in 0..order as ElemId {
            let conj = parent.conj(g, parent.inv(x)); // x g x^-1
            if h.contains(conj) {
                let local = h.local_id(conj);
                sum = sum.add(&theta.values[sub_cd.class_of[local as usize]]);
            }
        }
        values.push(sum.scale(&scale));
    }
    Ok(ClassFunction {
        group: parent.clone(),
        values,
    })
}

/// Induction by class fusion:
/// `theta^G(g) = |C_G(g)| * sum over H-classes D inside g^G of theta(D) / |C_H(d)|`.
pub fn induce_by_fusion(h: &SubgroupHandle, theta: &ClassFunction) -> Result<ClassFunction> {
    check_theta(h, theta)?;
    let parent = h.parent();
    let parent_cd = conjugacy_classes(parent)?;
    let sub = h.as_group();
    let sub_cd = conjugacy_classes(&sub)?;
    let g_order = parent.order()? as i64;
    let h_order = h.order() as i64;

    // fusion[d] = parent class containing the H-class d
    let fusion: Vec<usize> = sub_cd
        .representatives
        .iter()
        .map(|&local| parent_cd.class_of[h.parent_id(local) as usize])
        .collect();

    let mut values = vec![Cyc::zero(); parent_cd.class_count()];
    for (k, value) in values.iter_mut().enumerate() {
        let centralizer_g = rat(g_order / parent_cd.sizes[k] as i64);
        let mut sum = Cyc::zero();
        for (d, &target) in fusion.iter().enumerate() {
            if target != k {
                continue;
            }
            let centralizer_h = Rat::new((h_order / sub_cd.sizes[d] as i64).into(), 1.into());
            sum = sum.add(&theta.values[d].scale(&(centralizer_g.clone() / centralizer_h)));
        }
        *value = sum;
    }
    Ok(ClassFunction {
        group: parent.clone(),
        values,
    })
}

fn check_theta(h: &SubgroupHandle, theta: &ClassFunction) -> Result<()> {
    if !theta.group.same_group(&h.as_group()) {
        return Err(Error::GroupMismatch);
    }
    Ok(())
}

/// The stabilizer of a character of a normal subgroup under conjugation.
pub fn inertia_group(
    group: &PermGroup,
    n: &SubgroupHandle,
    theta: &Character,
) -> Result<SubgroupHandle> {
    if !n.parent().same_group(group) {
        return Err(Error::GroupMismatch);
    }
    n.require_normal()?;
    let sub = n.as_group();
    if !theta.group().same_group(&sub) {
        return Err(Error::GroupMismatch);
    }
    let sub_cd = conjugacy_classes(&sub)?;
    let order = group.order()? as ElemId;
    let mut members = Vec::new();
    'outer: for g in 0..order {
        for &local in &sub_cd.representatives {
            let x = n.parent_id(local);
            let conj = group.conj(x, g); // g^-1 x g
            let conj_local = n.local_id(conj);
            let moved = &theta.values()[sub_cd.class_of[conj_local as usize]];
            if moved != theta.value(sub_cd.class_of[local as usize]) {
                continue 'outer;
            }
        }
        members.push(g);
    }
    SubgroupHandle::from_members(group, members)
}

/// Pull a character of a quotient image back along the epimorphism.
/// The lift must be a row of the source table.
pub fn lift_character(chi_bar: &Character, epi: &Epimorphism) -> Result<Character> {
    if !chi_bar.group().same_group(&epi.target) {
        return Err(Error::GroupMismatch);
    }
    let source_table = character_table(&epi.source)?;
    let source_cd = &source_table.class_data;
    let target_cd = conjugacy_classes(&epi.target)?;
    let values: Vec<Cyc> = source_cd
        .representatives
        .iter()
        .map(|&rep| {
            let img = epi.image_of(rep);
            chi_bar.values()[target_cd.class_of[img as usize]].clone()
        })
        .collect();
    let row = source_table
        .find_row(&values)
        .ok_or_else(|| Error::Defect("lifted character is not a row of the source table".into()))?;
    let lift = source_table.character(row);
    if !lift.kernel_contains(&epi.kernel) {
        return Err(Error::Defect("lift does not kill the kernel".into()));
    }
    Ok(lift)
}

/// The principal character of a group as a class function.
pub fn principal_class_function(group: &PermGroup) -> Result<ClassFunction> {
    let cd = conjugacy_classes(group)?;
    Ok(ClassFunction {
        group: group.clone(),
        values: vec![Cyc::one(); cd.class_count()],
    })
}
