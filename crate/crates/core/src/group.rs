use std::collections::HashMap;
use std::collections::VecDeque;
use std::sync::{Arc, Mutex, OnceLock};

use crate::classes::ClassData;
use crate::chartab::CharacterTable;
use crate::error::{Error, Result};
use crate::guards::Guards;
use crate::perm::Permutation;
use crate::subgroup::SubgroupHandle;

/// Stable integer id of a group element, valid within one `PermGroup`.
///
/// Ids are assigned by lexicographic order of the image arrays, so the
/// identity always gets id 0 and id assignment is reproducible across runs.
pub type ElemId = u32;

/// The fully enumerated element set of a group.
pub struct ElementTable {
    perms: Vec<Permutation>,
    index: HashMap<Permutation, ElemId>,
    inverse: Vec<ElemId>,
    /// Shortest generator word per element, as generator indices.
    words: Vec<Vec<u16>>,
    identity: ElemId,
}

impl ElementTable {
    pub fn order(&self) -> usize {
        self.perms.len()
    }
}

pub(crate) struct GroupInner {
    name: String,
    degree: usize,
    generators: Vec<Permutation>,
    guards: Guards,
    elements: OnceLock<std::result::Result<ElementTable, Error>>,
    pub(crate) classes: OnceLock<Arc<ClassData>>,
    pub(crate) chartab: OnceLock<std::result::Result<Arc<CharacterTable>, Error>>,
    pub(crate) normals: OnceLock<std::result::Result<Vec<SubgroupHandle>, Error>>,
    pub(crate) subgroup_cache: Mutex<HashMap<Vec<ElemId>, PermGroup>>,
}

/// A finite permutation group given by generators, with all derived data
/// (element table, conjugacy classes, character table, normal subgroups)
/// cached behind the same handle. Cloning is cheap and shares the caches;
/// lazy construction is synchronized, so a group can be used from several
/// threads at once.
#[derive(Clone)]
pub struct PermGroup {
    pub(crate) inner: Arc<GroupInner>,
}

impl PermGroup {
    pub fn new(
        name: impl Into<String>,
        degree: usize,
        generators: Vec<Permutation>,
        guards: Guards,
    ) -> Result<Self> {
        if degree == 0 {
            return Err(Error::ZeroDegree);
        }
        for (row, g) in generators.iter().enumerate() {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    row: row + 1,
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        Ok(PermGroup {
            inner: Arc::new(GroupInner {
                name: name.into(),
                degree,
                generators,
                guards,
                elements: OnceLock::new(),
                classes: OnceLock::new(),
                chartab: OnceLock::new(),
                normals: OnceLock::new(),
                subgroup_cache: Mutex::new(HashMap::new()),
            }),
        })
    }

    pub fn trivial(guards: Guards) -> Self {
        PermGroup::new("trivial", 1, Vec::new(), guards).expect("trivial group")
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.inner.generators
    }

    pub fn guards(&self) -> Guards {
        self.inner.guards
    }

    /// Two handles are the same group exactly when they share their cache.
    pub fn same_group(&self, other: &PermGroup) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
    }

    /// Breadth-first closure of the generators, cached after the first call.
    pub fn elements(&self) -> Result<&ElementTable> {
        self.inner
            .elements
            .get_or_init(|| enumerate(self))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn order(&self) -> Result<usize> {
        Ok(self.elements()?.order())
    }

    pub fn identity_id(&self) -> Result<ElemId> {
        Ok(self.elements()?.identity)
    }

    pub fn perm(&self, id: ElemId) -> &Permutation {
        &self.elements().expect("element table").perms[id as usize]
    }

    pub fn id_of(&self, p: &Permutation) -> Result<ElemId> {
        self.elements()?
            .index
            .get(p)
            .copied()
            .ok_or(Error::NotASubgroup)
    }

    pub fn contains_perm(&self, p: &Permutation) -> Result<bool> {
        Ok(self.elements()?.index.contains_key(p))
    }

    pub fn check_id(&self, id: ElemId) -> Result<()> {
        if (id as usize) < self.order()? {
            Ok(())
        } else {
            Err(Error::InvalidElementId(id))
        }
    }

    #[inline]
    pub fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        let t = self.elements().expect("element table");
        let p = t.perms[a as usize].then(&t.perms[b as usize]);
        t.index[&p]
    }

    #[inline]
    pub fn inv(&self, a: ElemId) -> ElemId {
        self.elements().expect("element table").inverse[a as usize]
    }

    /// Conjugate `x` by `g`: the id of `g^-1 x g`.
    #[inline]
    pub fn conj(&self, x: ElemId, g: ElemId) -> ElemId {
        let gi = self.inv(g);
        self.mul(self.mul(gi, x), g)
    }

    /// Commutator `[x, y] = x^-1 y^-1 x y`.
    #[inline]
    pub fn comm(&self, x: ElemId, y: ElemId) -> ElemId {
        let xy = self.mul(x, y);
        let yx = self.mul(y, x);
        self.mul(self.inv(yx), xy)
    }

    pub fn element_order(&self, id: ElemId) -> u64 {
        self.perm(id).order()
    }

    pub fn power(&self, id: ElemId, k: u64) -> ElemId {
        let n = self.element_order(id);
        let mut k = k % n;
        let mut acc = self.identity_id().expect("element table");
        let mut base = id;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Ids of the generators; identity generators map to the identity id.
    pub fn generator_ids(&self) -> Result<Vec<ElemId>> {
        self.generators()
            .iter()
            .map(|g| self.id_of(g))
            .collect()
    }

    /// Shortest word for an element in the generators, e.g. `g1*g2`.
    pub fn word(&self, id: ElemId) -> String {
        let t = self.elements().expect("element table");
        let w = &t.words[id as usize];
        if w.is_empty() {
            return "e".into();
        }
        w.iter()
            .map(|&gi| format!("g{}", gi + 1))
            .collect::<Vec<_>>()
            .join("*")
    }

    /// The exponent: lcm of all element orders.
    pub fn exponent(&self) -> Result<u64> {
        let t = self.elements()?;
        Ok(t.perms
            .iter()
            .fold(1u64, |acc, p| num::integer::lcm(acc, p.order())))
    }

    pub fn is_abelian(&self) -> Result<bool> {
        let gens = self.generator_ids()?;
        for (i, &a) in gens.iter().enumerate() {
            for &b in &gens[i + 1..] {
                if self.mul(a, b) != self.mul(b, a) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Realize a subgroup (given by its sorted member ids) as a `PermGroup`
    /// of the same degree, cached per member set. The subgroup's own element
    /// ids coincide with the position of each member in the sorted member
    /// list, because both sides sort by image array.
    pub(crate) fn subgroup_as_group(
        &self,
        members: &[ElemId],
        generator_ids: &[ElemId],
    ) -> PermGroup {
        if members.len() == self.order().expect("element table") {
            return self.clone();
        }
        let mut cache = self.inner.subgroup_cache.lock().unwrap();
        if let Some(g) = cache.get(members) {
            return g.clone();
        }
        let gens: Vec<Permutation> = generator_ids.iter().map(|&g| self.perm(g).clone()).collect();
        let name = format!("{}:sub{}", self.name(), members.len());
        let sub = PermGroup::new(name, self.degree(), gens, self.guards()).expect("subgroup");
        cache.insert(members.to_vec(), sub.clone());
        sub
    }
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PermGroup({}, degree {})", self.name(), self.degree())
    }
}

fn enumerate(group: &PermGroup) -> std::result::Result<ElementTable, Error> {
    let limit = group.guards().element_limit;
    let identity = Permutation::identity(group.degree());
    let mut discovered: HashMap<Permutation, Vec<u16>> = HashMap::new();
    discovered.insert(identity.clone(), Vec::new());
    let mut queue = VecDeque::new();
    queue.push_back(identity);
    while let Some(p) = queue.pop_front() {
        let word = discovered[&p].clone();
        for (gi, g) in group.generators().iter().enumerate() {
            let next = p.then(g);
            if !discovered.contains_key(&next) {
                if discovered.len() >= limit {
                    return Err(Error::GuardExceeded {
                        what: "element enumeration",
                        limit,
                        at: discovered.len(),
                    });
                }
                let mut w = word.clone();
                w.push(gi as u16);
                discovered.insert(next.clone(), w);
                queue.push_back(next);
            }
        }
    }

    let mut entries: Vec<(Permutation, Vec<u16>)> = discovered.into_iter().collect();
    entries.sort_by(|a, b| a.0.cmp(&b.0));
    let perms: Vec<Permutation> = entries.iter().map(|(p, _)| p.clone()).collect();
    let words: Vec<Vec<u16>> = entries.into_iter().map(|(_, w)| w).collect();
    let index: HashMap<Permutation, ElemId> = perms
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i as ElemId))
        .collect();
    let inverse: Vec<ElemId> = perms.iter().map(|p| index[&p.inverse()]).collect();
    let identity = index[&Permutation::identity(group.degree())];
    Ok(ElementTable {
        perms,
        index,
        inverse,
        words,
        identity,
    })
}

/// A surjective homomorphism realized by a coset action, with its kernel.
pub struct Epimorphism {
    pub source: PermGroup,
    pub target: PermGroup,
    image_of: Vec<ElemId>,
    pub kernel: SubgroupHandle,
}

impl Epimorphism {
    #[inline]
    pub fn image_of(&self, x: ElemId) -> ElemId {
        self.image_of[x as usize]
    }

    /// Image of a whole subgroup of the source, as a handle in the target.
    pub fn image_of_subgroup(&self, h: &SubgroupHandle) -> Result<SubgroupHandle> {
        let mut members: Vec<ElemId> = h.members().iter().map(|&x| self.image_of(x)).collect();
        members.sort_unstable();
        members.dedup();
        SubgroupHandle::from_members(&self.target, members)
    }
}

/// The action of `group` on the right cosets of `subgroup`, together with
/// the epimorphism onto the image. For a normal subgroup the kernel is the
/// subgroup itself, so the image is a faithful model of the quotient.
pub fn coset_action(group: &PermGroup, subgroup: &SubgroupHandle) -> Result<(PermGroup, Epimorphism)> {
    if !subgroup.parent().same_group(group) {
        return Err(Error::NotASubgroup);
    }
    let order = group.order()?;
    let members = subgroup.members();
    let index = order / members.len();
    if index > group.guards().element_limit {
        return Err(Error::GuardExceeded {
            what: "coset action",
            limit: group.guards().element_limit,
            at: index,
        });
    }

    // coset_of[x] = index of the right coset Hx, discovered in BFS order
    // from the coset of the identity.
    let mut coset_of: Vec<usize> = vec![usize::MAX; order];
    let mut reps: Vec<ElemId> = Vec::with_capacity(index);
    let gen_ids = group.generator_ids()?;

    let assign = |rep: ElemId, idx: usize, coset_of: &mut Vec<usize>| {
        for &h in members {
            coset_of[group.mul(h, rep) as usize] = idx;
        }
    };
    let identity = group.identity_id()?;
    assign(identity, 0, &mut coset_of);
    reps.push(identity);
    let mut head = 0;
    while head < reps.len() {
        let rep = reps[head];
        head += 1;
        for &g in &gen_ids {
            let moved = group.mul(rep, g);
            if coset_of[moved as usize] == usize::MAX {
                let idx = reps.len();
                assign(moved, idx, &mut coset_of);
                reps.push(moved);
            }
        }
    }
    debug_assert_eq!(reps.len(), index);

    let coset_perm = |x: ElemId| -> Permutation {
        let images: Vec<u16> = reps
            .iter()
            .map(|&rep| coset_of[group.mul(rep, x) as usize] as u16)
            .collect();
        Permutation::from_images(images, 0).expect("coset permutation")
    };

    let image_gens: Vec<Permutation> = gen_ids.iter().map(|&g| coset_perm(g)).collect();
    let name = format!("{}/{}", group.name(), subgroup.describe_short());
    let target = PermGroup::new(name, index, image_gens, group.guards())?;

    let mut image_of = Vec::with_capacity(order);
    let mut kernel_members = Vec::new();
    let target_identity = target.identity_id()?;
    for x in 0..order as ElemId {
        let img = target.id_of(&coset_perm(x))?;
        image_of.push(img);
        if img == target_identity {
            kernel_members.push(x);
        }
    }
    let target_order = target.order()?;
    if target_order * kernel_members.len() != order {
        return Err(Error::Defect(format!(
            "coset action of {} lost elements: image {} * kernel {} != {}",
            group.name(),
            target_order,
            kernel_members.len(),
            order
        )));
    }
    let kernel = SubgroupHandle::from_members(group, kernel_members)?;
    kernel.set_normal_verified();
    let epi = Epimorphism {
        source: group.clone(),
        target: target.clone(),
        image_of,
        kernel,
    };
    Ok((target, epi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subgroup::generated_subgroup;
    use std::collections::HashSet;

    fn g(name: &str, degree: usize, gens: &[&[u64]]) -> PermGroup {
        let perms = gens
            .iter()
            .enumerate()
            .map(|(i, row)| Permutation::from_one_based(row, degree, i + 1).unwrap())
            .collect();
        PermGroup::new(name, degree, perms, Guards::default()).unwrap()
    }

    /// Independent oracle: naive fixpoint closure over raw image arrays.
    fn brute_closure(degree: usize, gens: &[&[u64]]) -> HashSet<Vec<u16>> {
        let gens: Vec<Vec<u16>> = gens
            .iter()
            .map(|row| row.iter().map(|&x| (x - 1) as u16).collect())
            .collect();
        let id: Vec<u16> = (0..degree as u16).collect();
        let mut set: HashSet<Vec<u16>> = HashSet::new();
        set.insert(id);
        loop {
            let mut fresh = Vec::new();
            for p in &set {
                for q in &gens {
                    let prod: Vec<u16> = p.iter().map(|&i| q[i as usize]).collect();
                    if !set.contains(&prod) {
                        fresh.push(prod);
                    }
                }
            }
            if fresh.is_empty() {
                break;
            }
            set.extend(fresh);
        }
        set
    }

    #[test]
    fn s3_has_six_elements() {
        let s3 = g("s3", 3, &[&[2, 3, 1], &[2, 1, 3]]);
        assert_eq!(s3.order().unwrap(), 6);
        let oracle = brute_closure(3, &[&[2, 3, 1], &[2, 1, 3]]);
        assert_eq!(oracle.len(), 6);
    }

    #[test]
    fn trivial_group_has_one_element() {
        let t = PermGroup::trivial(Guards::default());
        assert_eq!(t.order().unwrap(), 1);
        assert!(t.perm(t.identity_id().unwrap()).is_identity());
    }

    #[test]
    fn element_ids_are_lexicographic_and_stable() {
        let s3a = g("s3", 3, &[&[2, 3, 1], &[2, 1, 3]]);
        let s3b = g("s3", 3, &[&[2, 3, 1], &[2, 1, 3]]);
        let perms_a: Vec<_> = (0..6).map(|i| s3a.perm(i).clone()).collect();
        let perms_b: Vec<_> = (0..6).map(|i| s3b.perm(i).clone()).collect();
        assert_eq!(perms_a, perms_b);
        for w in perms_a.windows(2) {
            assert!(w[0] < w[1]);
        }
        assert_eq!(s3a.identity_id().unwrap(), 0);
    }

    #[test]
    fn closure_is_a_group() {
        let s4 = g("s4", 4, &[&[2, 1, 3, 4], &[2, 3, 4, 1]]);
        let n = s4.order().unwrap() as ElemId;
        assert_eq!(n, 24);
        for a in 0..n {
            assert_eq!(s4.mul(a, s4.inv(a)), s4.identity_id().unwrap());
            for b in 0..n {
                let _ = s4.mul(a, b); // closed: lookup never panics
            }
        }
    }

    #[test]
    fn guard_aborts_enumeration() {
        let guards = Guards {
            element_limit: 10,
            ..Guards::default()
        };
        let gens = vec![
            Permutation::from_one_based(&[2, 1, 3, 4, 5], 5, 1).unwrap(),
            Permutation::from_one_based(&[2, 3, 4, 5, 1], 5, 2).unwrap(),
        ];
        let s5 = PermGroup::new("s5", 5, gens, guards).unwrap();
        let err = s5.order().unwrap_err();
        assert!(err.is_guard());
    }

    #[test]
    fn coset_action_on_v4_in_s4_gives_s3() {
        let s4 = g("s4", 4, &[&[2, 1, 3, 4], &[2, 3, 4, 1]]);
        // V4 = <(12)(34), (13)(24)>
        let a = s4
            .id_of(&Permutation::from_one_based(&[2, 1, 4, 3], 4, 0).unwrap())
            .unwrap();
        let b = s4
            .id_of(&Permutation::from_one_based(&[3, 4, 1, 2], 4, 0).unwrap())
            .unwrap();
        let v4 = generated_subgroup(&s4, &[a, b]).unwrap();
        assert_eq!(v4.order(), 4);
        let (image, epi) = coset_action(&s4, &v4).unwrap();
        assert_eq!(image.order().unwrap(), 6);
        assert_eq!(epi.kernel.order(), 4);
        assert_eq!(epi.kernel.members(), v4.members());
        // homomorphism law, exhaustively
        for x in 0..24 {
            for y in 0..24 {
                assert_eq!(
                    epi.image_of(s4.mul(x, y)),
                    image.mul(epi.image_of(x), epi.image_of(y))
                );
            }
        }
    }

    #[test]
    fn coset_action_on_trivial_subgroup_is_faithful() {
        let s3 = g("s3", 3, &[&[2, 3, 1], &[2, 1, 3]]);
        let triv = generated_subgroup(&s3, &[]).unwrap();
        let (image, epi) = coset_action(&s3, &triv).unwrap();
        assert_eq!(image.order().unwrap(), 6);
        assert_eq!(epi.kernel.order(), 1);
    }

    #[test]
    fn words_reproduce_elements() {
        let s4 = g("s4", 4, &[&[2, 1, 3, 4], &[2, 3, 4, 1]]);
        assert_eq!(s4.word(s4.identity_id().unwrap()), "e");
        let t = s4.elements().unwrap();
        for id in 0..t.order() as ElemId {
            let w = &t.words[id as usize];
            let mut acc = s4.identity_id().unwrap();
            for &gi in w {
                let gid = s4.id_of(&s4.generators()[gi as usize].clone()).unwrap();
                acc = s4.mul(acc, gid);
            }
            assert_eq!(acc, id);
        }
    }
}
