//! Relative character degrees: the irreducible characters of a group whose
//! kernels do not contain a given normal subgroup, their degree sets, and
//! reducing sections of characters along chief factors.

use std::sync::Arc;

use crate::chartab::{character_table, restrict_character, CharacterTable};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::structure::chief_sections_within;
use crate::subgroup::SubgroupHandle;

/// The rows of `Irr(G)` whose kernel does not contain `normal`, with their
/// degree set. Empty exactly when the normal subgroup is trivial.
pub struct RelativeDegreeData {
    pub table: Arc<CharacterTable>,
    pub normal: SubgroupHandle,
    /// Row indices of the member characters.
    pub members: Vec<usize>,
    /// Sorted distinct degrees of the members.
    pub degrees: Vec<u64>,
}

impl RelativeDegreeData {
    pub fn min(&self) -> Option<u64> {
        self.degrees.first().copied()
    }

    pub fn max(&self) -> Option<u64> {
        self.degrees.last().copied()
    }

    pub fn degree_count(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Member rows of one specific degree.
    pub fn members_of_degree(&self, d: u64) -> Vec<usize> {
        self.members
            .iter()
            .copied()
            .filter(|&r| self.table.degrees[r] == d)
            .collect()
    }
}

/// The characters of the table whose kernels do not contain `normal`.
pub fn irr_rel(table: &Arc<CharacterTable>, normal: &SubgroupHandle) -> Result<RelativeDegreeData> {
    if !normal.parent().same_group(&table.group) {
        return Err(Error::GroupMismatch);
    }
    normal.require_normal()?;
    let mut members = Vec::new();
    for row in 0..table.rows.len() {
        if !table.character(row).kernel_contains(normal) {
            members.push(row);
        }
    }
    let mut degrees: Vec<u64> = members.iter().map(|&r| table.degrees[r]).collect();
    degrees.sort_unstable();
    degrees.dedup();
    Ok(RelativeDegreeData {
        table: table.clone(),
        normal: normal.clone(),
        members,
        degrees,
    })
}

/// Degrees of characters outside the kernel of `normal` that factor through
/// the quotient by `modulus`: `{chi(1) : chi in Irr(G|N), M <= ker chi}`.
/// Equals the relative degree set of `N/M` in `G/M` computed on a quotient
/// table, which is the independent cross-check route.
pub fn cd_rel_mod(
    table: &Arc<CharacterTable>,
    normal: &SubgroupHandle,
    modulus: &SubgroupHandle,
) -> Result<Vec<u64>> {
    if !normal.parent().same_group(&table.group) || !modulus.parent().same_group(&table.group) {
        return Err(Error::GroupMismatch);
    }
    normal.require_normal()?;
    modulus.require_normal()?;
    if !normal.contains_subgroup(modulus) {
        return Err(Error::ContainmentViolation("modulus not inside the normal subgroup"));
    }
    let mut degrees = Vec::new();
    for row in 0..table.rows.len() {
        let chi = table.character(row);
        if !chi.kernel_contains(normal) && chi.kernel_contains(modulus) {
            degrees.push(table.degrees[row]);
        }
    }
    degrees.sort_unstable();
    degrees.dedup();
    Ok(degrees)
}

/// The quotient-table route for the same degree set: form the coset action
/// on `modulus`, push `normal` through, and read relative degrees there.
pub fn cd_rel_mod_via_quotient(
    group: &PermGroup,
    normal: &SubgroupHandle,
    modulus: &SubgroupHandle,
) -> Result<Vec<u64>> {
    let (quotient, epi) = crate::group::coset_action(group, modulus)?;
    let image = epi.image_of_subgroup(normal)?;
    let qtable = character_table(&quotient)?;
    Ok(irr_rel(&qtable, &image)?.degrees)
}

/// One chief section of the group inside a normal subgroup, together with
/// the constituent degrees of a fixed character on both ends.
pub struct SectionRecord {
    /// Y: the lower term of the section.
    pub below: SubgroupHandle,
    /// X: the upper term; X/Y is a chief factor of the group.
    pub above: SubgroupHandle,
    pub abelian: bool,
    /// The section prime for abelian factors (elementary abelian order p^e).
    pub prime: Option<u64>,
    /// Common degree of the irreducible constituents of the restriction to X.
    pub degree_above: u64,
    /// Common degree of the constituents of the restriction to Y.
    pub degree_below: u64,
    /// A reducing p-section: abelian, with strictly smaller constituent
    /// degrees below than above.
    pub reducing: bool,
    /// Whether the section is centralized by the ambient normal subgroup.
    pub central_in_normal: bool,
    /// Reducing but not central: the exceptional case.
    pub exceptional: bool,
}

/// Constituent degree of a character restricted to a normal subgroup.
/// All constituents of such a restriction share one degree; anything else
/// is a defect.
pub fn clifford_constituent_degree(
    chi: &crate::chartab::Character,
    h: &SubgroupHandle,
) -> Result<u64> {
    let restricted = restrict_character(chi, h)?;
    let degs = restricted.constituent_degrees()?;
    if degs.len() != 1 {
        return Err(Error::Defect(format!(
            "restriction to a normal subgroup has mixed constituent degrees {degs:?}"
        )));
    }
    Ok(degs[0])
}

/// Every chief section of the group inside `normal`, scanned over all pairs
/// of normal subgroups (not just one chief series), with reducing and
/// exceptionality flags for the given character.
pub fn reducing_sections(
    table: &Arc<CharacterTable>,
    normal: &SubgroupHandle,
    chi_row: usize,
) -> Result<Vec<SectionRecord>> {
    let group = &table.group;
    let chi = table.character(chi_row);
    if chi.kernel_contains(normal) {
        return Err(Error::ContainmentViolation(
            "character does not lie over the normal subgroup",
        ));
    }
    let mut out = Vec::new();
    for (below, above) in chief_sections_within(group, normal)? {
        let degree_above = clifford_constituent_degree(&chi, &above)?;
        let degree_below = clifford_constituent_degree(&chi, &below)?;
        let abelian = crate::structure::section_is_abelian(&below, &above);
        let prime = if abelian {
            let factor = (above.order() / below.order()) as u64;
            let primes = crate::arith::prime_divisors(factor);
            if primes.len() != 1 {
                return Err(Error::Defect(
                    "abelian chief factor is not of prime power order".into(),
                ));
            }
            Some(primes[0])
        } else {
            None
        };
        let reducing = abelian && degree_below < degree_above;
        let central_in_normal = section_central_in(normal, &above, &below)?;
        let exceptional = reducing && !central_in_normal;
        out.push(SectionRecord {
            below,
            above,
            abelian,
            prime,
            degree_above,
            degree_below,
            reducing,
            central_in_normal,
            exceptional,
        });
    }
    Ok(out)
}

/// Is the section X/Y centralized by N: does every commutator `[x, n]`
/// land in Y? Generator pairs suffice because Y is normal in the parent.
pub fn section_central_in(
    n: &SubgroupHandle,
    x: &SubgroupHandle,
    y: &SubgroupHandle,
) -> Result<bool> {
    if !x.contains_subgroup(y) || !n.contains_subgroup(x) {
        return Err(Error::ContainmentViolation("expected Y <= X <= N"));
    }
    y.require_normal()?;
    let parent = n.parent();
    Ok(x.generator_ids().iter().all(|&a| {
        n.generator_ids()
            .iter()
            .all(|&b| y.contains(parent.comm(a, b)))
    }))
}

/// The relative degree data and the normal subgroups of the group, bundled
/// for report rendering.
pub fn relative_degrees_for_all_normals(
    group: &PermGroup,
) -> Result<Vec<(SubgroupHandle, Vec<u64>)>> {
    let table = character_table(group)?;
    let mut out = Vec::new();
    for n in crate::structure::normal_subgroups(group)? {
        let data = irr_rel(&table, &n)?;
        out.push((n, data.degrees));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::character_table;
    use crate::guards::Guards;
    use crate::perm::Permutation;
    use crate::structure::normal_subgroups;

    fn group(name: &str, degree: usize, gens: &[&[u64]]) -> PermGroup {
        let perms = gens
            .iter()
            .map(|row| Permutation::from_one_based(row, degree, 0).unwrap())
            .collect();
        PermGroup::new(name, degree, perms, Guards::default()).unwrap()
    }

    fn s4() -> PermGroup {
        group("s4", 4, &[&[2, 1, 3, 4], &[2, 3, 4, 1]])
    }

    #[test]
    fn trivial_normal_subgroup_gives_empty_set() {
        let s4 = s4();
        let table = character_table(&s4).unwrap();
        let trivial = crate::subgroup::generated_subgroup(&s4, &[]).unwrap();
        let data = irr_rel(&table, &trivial).unwrap();
        assert!(data.is_empty());
        assert_eq!(data.min(), None);
    }

    #[test]
    fn s4_relative_to_a4_has_degrees_2_and_3() {
        let s4 = s4();
        let table = character_table(&s4).unwrap();
        let normals = normal_subgroups(&s4).unwrap();
        let a4 = normals.iter().find(|h| h.order() == 12).unwrap();
        let data = irr_rel(&table, a4).unwrap();
        assert_eq!(data.degrees, vec![2, 3]);
        // brute kernel scan oracle: rows failing chi(a) = chi(1) on some
        // element a of A4
        let mut expected = Vec::new();
        for row in 0..table.rows.len() {
            let chi = table.character(row);
            let deg = crate::cyclotomic::Cyc::from_int(table.degrees[row] as i64);
            if a4.members().iter().any(|&x| *chi.value_at_element(x) != deg) {
                expected.push(row);
            }
        }
        assert_eq!(data.members, expected);
    }

    #[test]
    fn monotone_in_the_normal_subgroup() {
        let s4 = s4();
        let table = character_table(&s4).unwrap();
        let normals = normal_subgroups(&s4).unwrap();
        for small in &normals {
            for large in &normals {
                if !large.contains_subgroup(small) {
                    continue;
                }
                let a = irr_rel(&table, small).unwrap();
                let b = irr_rel(&table, large).unwrap();
                assert!(a.members.iter().all(|r| b.members.contains(r)));
            }
        }
    }

    #[test]
    fn cd_rel_mod_of_s4_a4_v4_is_2() {
        let s4 = s4();
        let table = character_table(&s4).unwrap();
        let normals = normal_subgroups(&s4).unwrap();
        let a4 = normals.iter().find(|h| h.order() == 12).unwrap();
        let v4 = normals.iter().find(|h| h.order() == 4).unwrap();
        assert_eq!(cd_rel_mod(&table, a4, v4).unwrap(), vec![2]);
        // trivial modulus reproduces the full relative degree set
        let trivial = normals.iter().find(|h| h.order() == 1).unwrap();
        assert_eq!(
            cd_rel_mod(&table, a4, trivial).unwrap(),
            irr_rel(&table, a4).unwrap().degrees
        );
    }

    #[test]
    fn quotient_route_agrees_on_s4() {
        let s4 = s4();
        let table = character_table(&s4).unwrap();
        let normals = normal_subgroups(&s4).unwrap();
        for n in &normals {
            for m in &normals {
                if !n.contains_subgroup(m) {
                    continue;
                }
                let direct = cd_rel_mod(&table, n, m).unwrap();
                let via_quotient = cd_rel_mod_via_quotient(&s4, n, m).unwrap();
                assert_eq!(direct, via_quotient);
            }
        }
    }

    #[test]
    fn lift_bijection_counts_rows() {
        // |Irr(G|N)| + |Irr(G/N)| = |Irr(G)|
        let s4 = s4();
        let table = character_table(&s4).unwrap();
        for n in normal_subgroups(&s4).unwrap() {
            let data = irr_rel(&table, &n).unwrap();
            let (quotient, _) = crate::group::coset_action(&s4, &n).unwrap();
            let qtable = character_table(&quotient).unwrap();
            assert_eq!(data.members.len() + qtable.rows.len(), table.rows.len());
        }
    }

    #[test]
    fn linear_characters_have_no_reducing_sections() {
        let s4 = s4();
        let table = character_table(&s4).unwrap();
        let normals = normal_subgroups(&s4).unwrap();
        let a4 = normals.iter().find(|h| h.order() == 12).unwrap();
        // sign character: linear, nontrivial on A4? no; use it on the whole
        // group instead, where it is a member
        let whole = normals.iter().find(|h| h.order() == 24).unwrap();
        let data = irr_rel(&table, whole).unwrap();
        let linear_row = data
            .members
            .iter()
            .copied()
            .find(|&r| table.degrees[r] == 1)
            .unwrap();
        for record in reducing_sections(&table, whole, linear_row).unwrap() {
            assert!(!record.reducing);
            assert_eq!(record.degree_above, 1);
            assert_eq!(record.degree_below, 1);
        }
        let _ = a4;
    }

    #[test]
    fn degree_three_of_s4_is_not_reduced_by_v4() {
        let s4 = s4();
        let table = character_table(&s4).unwrap();
        let normals = normal_subgroups(&s4).unwrap();
        let a4 = normals.iter().find(|h| h.order() == 12).unwrap();
        let data = irr_rel(&table, a4).unwrap();
        let row3 = data
            .members
            .iter()
            .copied()
            .find(|&r| table.degrees[r] == 3)
            .unwrap();
        let records = reducing_sections(&table, a4, row3).unwrap();
        let v4_section = records
            .iter()
            .find(|s| s.below.is_trivial() && s.above.order() == 4)
            .unwrap();
        assert_eq!(v4_section.degree_above, 1);
        assert_eq!(v4_section.degree_below, 1);
        assert!(!v4_section.reducing);
        assert!(!v4_section.exceptional);
    }

    #[test]
    fn centrality_test_matches_brute_force() {
        let s4 = s4();
        let normals = normal_subgroups(&s4).unwrap();
        let a4 = normals.iter().find(|h| h.order() == 12).unwrap();
        let v4 = normals.iter().find(|h| h.order() == 4).unwrap();
        let trivial = normals.iter().find(|h| h.order() == 1).unwrap();
        for (y, x) in [(trivial, v4), (v4, a4)] {
            let fast = section_central_in(a4, x, y).unwrap();
            let brute = x.members().iter().all(|&a| {
                a4.members()
                    .iter()
                    .all(|&b| y.contains(s4.comm(a, b)))
            });
            assert_eq!(fast, brute);
        }
    }
}
