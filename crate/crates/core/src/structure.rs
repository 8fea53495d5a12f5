//! Subgroup-theoretic structure: derived and lower central series, Fitting
//! subgroups and heights, Sylow subgroups, `O_p` and `O^p`, normal
//! p-complements, the normal-subgroup lattice with chief series, solvability,
//! and guarded full subgroup enumeration.

use std::collections::{BTreeMap, BTreeSet};

use crate::arith::{self, p_part, prime_divisors, require_prime};
use crate::error::{Error, Result};
use crate::group::{coset_action, ElemId, PermGroup};
use crate::subgroup::{generated_subgroup, normal_closure_members, SubgroupHandle};

pub use crate::arith::p_part as integer_p_part;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    Derived,
    LowerCentral,
    Chief,
    Fitting,
}

/// A descending series of subgroups; the last term is not repeated.
pub struct NormalSeries {
    pub kind: SeriesKind,
    pub terms: Vec<SubgroupHandle>,
}

/// `[a, b]`: the subgroup generated by all commutators between `a` and `b`,
/// computed from generator commutators and closed under conjugation by
/// `context` (which must contain both and normalize the result).
pub fn commutator_subgroup(
    context: &SubgroupHandle,
    a: &SubgroupHandle,
    b: &SubgroupHandle,
) -> Result<SubgroupHandle> {
    let parent = context.parent();
    let mut seeds = Vec::new();
    for &x in a.generator_ids() {
        for &y in b.generator_ids() {
            seeds.push(parent.comm(x, y));
        }
    }
    let members = normal_closure_members(parent, context.generator_ids(), &seeds)?;
    SubgroupHandle::from_members(parent, members)
}

pub fn derived_subgroup(h: &SubgroupHandle) -> Result<SubgroupHandle> {
    commutator_subgroup(h, h, h)
}

/// The derived series of `h` and its derived length; `None` marks a
/// perfect tail, i.e. a non-solvable subgroup.
pub fn derived_series(h: &SubgroupHandle) -> Result<(NormalSeries, Option<u32>)> {
    let mut terms = vec![h.clone()];
    loop {
        let next = derived_subgroup(terms.last().unwrap())?;
        let stabilized = next.order() == terms.last().unwrap().order();
        if stabilized {
            // solvable only if already trivial
            let dl = if terms.last().unwrap().is_trivial() {
                Some((terms.len() - 1) as u32)
            } else {
                None
            };
            return Ok((
                NormalSeries {
                    kind: SeriesKind::Derived,
                    terms,
                },
                dl,
            ));
        }
        let done = next.is_trivial();
        terms.push(next);
        if done {
            let dl = Some((terms.len() - 1) as u32);
            return Ok((
                NormalSeries {
                    kind: SeriesKind::Derived,
                    terms,
                },
                dl,
            ));
        }
    }
}

pub fn derived_length(h: &SubgroupHandle) -> Result<Option<u32>> {
    Ok(derived_series(h)?.1)
}

pub fn is_solvable_subgroup(h: &SubgroupHandle) -> Result<bool> {
    Ok(derived_length(h)?.is_some())
}

/// Lower central series, nilpotency flag, and the nilpotent residual (the
/// final term, satisfying `[residual, h] = residual`).
pub fn lower_central_series(h: &SubgroupHandle) -> Result<(NormalSeries, bool, SubgroupHandle)> {
    let mut terms = vec![h.clone()];
    loop {
        let next = commutator_subgroup(h, terms.last().unwrap(), h)?;
        let stabilized = next.order() == terms.last().unwrap().order();
        if stabilized {
            // the residual satisfies [residual, h] = residual by stabilization
            let residual = terms.last().unwrap().clone();
            let nilpotent = residual.is_trivial();
            return Ok((
                NormalSeries {
                    kind: SeriesKind::LowerCentral,
                    terms,
                },
                nilpotent,
                residual,
            ));
        }
        let done = next.is_trivial();
        terms.push(next);
        if done {
            let residual = terms.last().unwrap().clone();
            return Ok((
                NormalSeries {
                    kind: SeriesKind::LowerCentral,
                    terms,
                },
                true,
                residual,
            ));
        }
    }
}

pub fn is_nilpotent(h: &SubgroupHandle) -> Result<bool> {
    Ok(lower_central_series(h)?.1)
}

/// The nilpotent residual: the last term of the lower central series.
pub fn nilpotent_residual(h: &SubgroupHandle) -> Result<SubgroupHandle> {
    Ok(lower_central_series(h)?.2)
}

pub fn is_p_group(h: &SubgroupHandle, p: u64) -> bool {
    let mut n = h.order() as u64;
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

/// A Sylow p-subgroup of `h`, by subnormal ascent: grow a p-subgroup by
/// adjoining p-elements from its normalizer until the full p-part of the
/// order is reached.
pub fn sylow_subgroup(h: &SubgroupHandle, p: u64) -> Result<SubgroupHandle> {
    require_prime(p)?;
    let parent = h.parent();
    let target = p_part(h.order() as u64, p)?;
    let mut current = generated_subgroup(parent, &[])?;
    while (current.order() as u64) < target {
        let grown = grow_p_subgroup(h, &current, p)?;
        debug_assert!(grown.order() > current.order());
        current = grown;
    }
    debug_assert!(is_p_group(&current, p));
    Ok(current)
}

fn grow_p_subgroup(
    h: &SubgroupHandle,
    current: &SubgroupHandle,
    p: u64,
) -> Result<SubgroupHandle> {
    let parent = h.parent();
    // normalizer of `current` within h
    let normalizes = |x: ElemId| {
        current
            .generator_ids()
            .iter()
            .all(|&g| current.contains(parent.conj(g, x)))
    };
    for &y in h.members() {
        if current.contains(y) || !normalizes(y) {
            continue;
        }
        let k = parent.element_order(y);
        let m = k / p_part(k, p)?;
        let z = parent.power(y, m);
        if z != parent.identity_id()? && !current.contains(z) {
            let mut seeds = current.generator_ids().to_vec();
            seeds.push(z);
            let next = generated_subgroup(parent, &seeds)?;
            if is_p_group(&next, p) {
                return Ok(next);
            }
        }
    }
    Err(Error::Defect(
        "sylow ascent found no p-element in the normalizer".into(),
    ))
}

/// `O_p(h)`: the largest normal p-subgroup, as the intersection of the
/// conjugates of one Sylow p-subgroup.
pub fn o_p(h: &SubgroupHandle, p: u64) -> Result<SubgroupHandle> {
    let sylow = sylow_subgroup(h, p)?;
    let parent = h.parent();
    let mut core: Vec<ElemId> = sylow.members().to_vec();
    for &x in h.members() {
        if core.len() == 1 {
            break;
        }
        let conj_contains = |id: ElemId| sylow.contains(parent.conj(id, parent.inv(x)));
        core.retain(|&id| conj_contains(id));
    }
    let result = SubgroupHandle::from_members(parent, core)?;
    debug_assert!(is_p_group(&result, p));
    debug_assert!(is_normal_in(&result, h));
    Ok(result)
}

/// Is `sub` normal inside `over` (both handles over the same parent)?
pub fn is_normal_in(sub: &SubgroupHandle, over: &SubgroupHandle) -> bool {
    let parent = sub.parent();
    over.generator_ids()
        .iter()
        .all(|&g| sub.generator_ids().iter().all(|&x| sub.contains(parent.conj(x, g))))
}

/// `O^p(h)`: the smallest normal subgroup with p-group quotient, generated
/// by all elements of order coprime to p.
pub fn o_p_residual(h: &SubgroupHandle, p: u64) -> Result<SubgroupHandle> {
    require_prime(p)?;
    let parent = h.parent();
    let seeds: Vec<ElemId> = h
        .members()
        .iter()
        .copied()
        .filter(|&x| parent.element_order(x) % p != 0)
        .collect();
    let result = generated_subgroup(parent, &seeds)?;
    // quotient order must be a power of p
    let quotient = (h.order() / result.order()) as u64;
    if arith::p_part(quotient, p)? != quotient {
        return Err(Error::Defect("O^p quotient is not a p-group".into()));
    }
    Ok(result)
}

/// Does `h` have a normal p-complement? The witness is `O^p(h)` when its
/// order is exactly the p'-part of `|h|`.
pub fn normal_p_complement(h: &SubgroupHandle, p: u64) -> Result<Option<SubgroupHandle>> {
    let residual = o_p_residual(h, p)?;
    let p_prime = arith::p_prime_part(h.order() as u64, p)?;
    if residual.order() as u64 == p_prime {
        Ok(Some(residual))
    } else {
        Ok(None)
    }
}

/// The Fitting subgroup: the join of `O_p` over the primes dividing the
/// order. Verified nilpotent.
pub fn fitting_subgroup(h: &SubgroupHandle) -> Result<SubgroupHandle> {
    let parent = h.parent();
    let mut seeds: Vec<ElemId> = Vec::new();
    for p in prime_divisors(h.order() as u64) {
        seeds.extend_from_slice(o_p(h, p)?.generator_ids());
    }
    let fit = generated_subgroup(parent, &seeds)?;
    if !is_nilpotent(&fit)? {
        return Err(Error::Defect("fitting subgroup is not nilpotent".into()));
    }
    debug_assert!(is_normal_in(&fit, h));
    Ok(fit)
}

/// Fitting height of a solvable subgroup: the number of times the Fitting
/// subgroup must be factored out (through coset actions) to exhaust it.
pub fn fitting_height(h: &SubgroupHandle) -> Result<u32> {
    if !is_solvable_subgroup(h)? {
        return Err(Error::NotSolvable);
    }
    let mut current = h.as_group();
    let mut height = 0;
    while current.order()? > 1 {
        let whole = SubgroupHandle::whole_group(&current)?;
        let fit = fitting_subgroup(&whole)?;
        if fit.is_trivial() {
            return Err(Error::Defect(
                "solvable group with trivial fitting subgroup".into(),
            ));
        }
        let (quotient, _) = coset_action(&current, &fit)?;
        current = quotient;
        height += 1;
    }
    Ok(height)
}

/// All normal subgroups of the group, by closing unions of conjugacy
/// classes under joins. Cached on the group; sorted by (order, members).
pub fn normal_subgroups(group: &PermGroup) -> Result<Vec<SubgroupHandle>> {
    group
        .inner
        .normals
        .get_or_init(|| compute_normal_subgroups(group))
        .clone()
}

fn compute_normal_subgroups(group: &PermGroup) -> Result<Vec<SubgroupHandle>> {
    let cd = crate::classes::conjugacy_classes(group)?;
    let trivial = generated_subgroup(group, &[])?;
    trivial.set_normal_verified();
    let mut handles: Vec<SubgroupHandle> = vec![trivial];
    let mut seen: BTreeSet<Vec<ElemId>> = handles.iter().map(|h| h.members().to_vec()).collect();

    // seed with the normal closures of single classes
    for class in &cd.classes {
        let h = generated_subgroup(group, class)?;
        if seen.insert(h.members().to_vec()) {
            h.set_normal_verified();
            handles.push(h);
        }
    }
    // close under pairwise joins; each unordered pair is processed once
    let mut i = 0;
    while i < handles.len() {
        for j in 0..=i {
            let a = &handles[i];
            let b = &handles[j];
            if a.contains_subgroup(b) || b.contains_subgroup(a) {
                continue;
            }
            let joined = a.join(b)?;
            if seen.insert(joined.members().to_vec()) {
                joined.set_normal_verified();
                handles.push(joined);
            }
        }
        i += 1;
    }
    handles.sort_by(|a, b| {
        a.order()
            .cmp(&b.order())
            .then_with(|| a.members().cmp(b.members()))
    });
    Ok(handles)
}

/// Normal subgroups of the group contained in `within`.
pub fn normal_subgroups_within(
    group: &PermGroup,
    within: &SubgroupHandle,
) -> Result<Vec<SubgroupHandle>> {
    within.require_normal()?;
    Ok(normal_subgroups(group)?
        .into_iter()
        .filter(|h| within.contains_subgroup(h))
        .collect())
}

/// Nontrivial normal subgroups with no nontrivial normal subgroup below.
pub fn minimal_normal_subgroups(group: &PermGroup) -> Result<Vec<SubgroupHandle>> {
    let all = normal_subgroups(group)?;
    Ok(all
        .iter()
        .filter(|h| {
            !h.is_trivial()
                && all
                    .iter()
                    .all(|k| k.is_trivial() || k.order() >= h.order() || !h.contains_subgroup(k))
        })
        .cloned()
        .collect())
}

/// A chief series from the trivial subgroup to the whole group, refining
/// the given ascending chain of normal subgroups. Ties are broken by
/// smallest order, then smallest member set, so the series is reproducible.
pub fn chief_series(group: &PermGroup, through: &[SubgroupHandle]) -> Result<Vec<SubgroupHandle>> {
    let all = normal_subgroups(group)?;
    let whole = SubgroupHandle::whole_group(group)?;
    let mut series = vec![generated_subgroup(group, &[])?];
    let mut waypoints: Vec<SubgroupHandle> = through.to_vec();
    waypoints.push(whole);
    for target in waypoints {
        loop {
            let current = series.last().unwrap();
            if current.order() == target.order() {
                break;
            }
            // smallest normal subgroup strictly between current and target
            let next = all
                .iter()
                .find(|h| {
                    h.order() > current.order()
                        && target.contains_subgroup(h)
                        && h.contains_subgroup(current)
                        && all.iter().all(|z| {
                            !(z.order() > current.order()
                                && z.order() < h.order()
                                && h.contains_subgroup(z)
                                && z.contains_subgroup(current))
                        })
                })
                .ok_or_else(|| Error::ContainmentViolation("chain is not made of normal subgroups"))?;
            series.push(next.clone());
        }
    }
    Ok(series)
}

/// Consecutive chief factors `(below, above)` of one chief series.
pub fn chief_factors(group: &PermGroup) -> Result<Vec<(SubgroupHandle, SubgroupHandle)>> {
    let series = chief_series(group, &[])?;
    Ok(series
        .windows(2)
        .map(|w| (w[0].clone(), w[1].clone()))
        .collect())
}

/// All chief sections `(below, above)` of the group lying inside `within`:
/// pairs of normal subgroups with nothing normal strictly between.
pub fn chief_sections_within(
    group: &PermGroup,
    within: &SubgroupHandle,
) -> Result<Vec<(SubgroupHandle, SubgroupHandle)>> {
    let inside = normal_subgroups_within(group, within)?;
    let mut out = Vec::new();
    for below in &inside {
        for above in &inside {
            if above.order() <= below.order() || !above.contains_subgroup(below) {
                continue;
            }
            let minimal = inside.iter().all(|z| {
                !(z.order() > below.order()
                    && z.order() < above.order()
                    && above.contains_subgroup(z)
                    && z.contains_subgroup(below))
            });
            if minimal {
                out.push((below.clone(), above.clone()));
            }
        }
    }
    Ok(out)
}

/// Is X/Y abelian, given Y normal in the parent group and Y <= X?
/// Generator pairs suffice because commutators multiply modulo Y.
pub fn section_is_abelian(below: &SubgroupHandle, above: &SubgroupHandle) -> bool {
    let parent = above.parent();
    above.generator_ids().iter().all(|&a| {
        above
            .generator_ids()
            .iter()
            .all(|&b| below.contains(parent.comm(a, b)))
    })
}

pub fn is_solvable(group: &PermGroup) -> Result<bool> {
    is_solvable_subgroup(&SubgroupHandle::whole_group(group)?)
}

/// p-solvability: every chief factor is a p-group or a p'-group.
pub fn is_p_solvable(group: &PermGroup, p: u64) -> Result<bool> {
    require_prime(p)?;
    for (below, above) in chief_factors(group)? {
        let factor = (above.order() / below.order()) as u64;
        let p_pow = p_part(factor, p)?;
        if p_pow != 1 && p_pow != factor {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every subgroup of the group (up to equality, not conjugacy), guarded.
/// Cyclic subgroups are closed under pairwise joins, which reaches every
/// subgroup: any subgroup is the join of the cyclic subgroups it contains.
pub fn enumerate_subgroups(group: &PermGroup) -> Result<Vec<SubgroupHandle>> {
    let order = group.order()?;
    let limit = group.guards().subgroup_limit;
    if order > limit {
        return Err(Error::GuardExceeded {
            what: "subgroup enumeration",
            limit,
            at: order,
        });
    }
    let mut seen: BTreeSet<Vec<ElemId>> = BTreeSet::new();
    let mut handles: Vec<SubgroupHandle> = Vec::new();
    let trivial = generated_subgroup(group, &[])?;
    seen.insert(trivial.members().to_vec());
    handles.push(trivial);
    for x in 0..order as ElemId {
        let h = generated_subgroup(group, &[x])?;
        if seen.insert(h.members().to_vec()) {
            handles.push(h);
        }
    }
    let mut i = 0;
    while i < handles.len() {
        for j in 0..i {
            let a = &handles[i];
            let b = &handles[j];
            if a.contains_subgroup(b) || b.contains_subgroup(a) {
                continue;
            }
            let joined = a.join(b)?;
            if seen.insert(joined.members().to_vec()) {
                handles.push(joined);
            }
        }
        i += 1;
    }
    handles.sort_by(|a, b| {
        a.order()
            .cmp(&b.order())
            .then_with(|| a.members().cmp(b.members()))
    });
    Ok(handles)
}

/// Orders of everything in a list of handles, useful in reports and tests.
pub fn orders(handles: &[SubgroupHandle]) -> Vec<usize> {
    handles.iter().map(|h| h.order()).collect()
}

/// Group the primes dividing `n` with their multiplicities.
pub fn order_factorization(n: u64) -> BTreeMap<u64, u32> {
    arith::factorize(n).into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::guards::Guards;
    use crate::perm::Permutation;

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

    fn a5() -> PermGroup {
        group("a5", 5, &[&[2, 3, 4, 5, 1], &[2, 3, 1, 4, 5]])
    }

    fn q8() -> PermGroup {
        group("q8", 8, &[&[2, 3, 4, 1, 8, 5, 6, 7], &[5, 6, 7, 8, 3, 4, 1, 2]])
    }

    fn whole(g: &PermGroup) -> SubgroupHandle {
        SubgroupHandle::whole_group(g).unwrap()
    }

    #[test]
    fn derived_series_of_s4() {
        let s4 = s4();
        let (series, dl) = derived_series(&whole(&s4)).unwrap();
        assert_eq!(dl, Some(3));
        assert_eq!(orders(&series.terms), vec![24, 12, 4, 1]);
    }

    #[test]
    fn abelian_groups_are_metabelian_at_depth_one() {
        let c6 = group("c6", 6, &[&[2, 3, 4, 5, 6, 1]]);
        assert_eq!(derived_length(&whole(&c6)).unwrap(), Some(1));
    }

    #[test]
    fn a5_is_perfect_and_nonsolvable() {
        let a5 = a5();
        let (series, dl) = derived_series(&whole(&a5)).unwrap();
        assert_eq!(dl, None);
        assert_eq!(series.terms.len(), 1);
        assert!(!is_solvable(&a5).unwrap());
        // brute check: every element is a product of commutators
        let derived = derived_subgroup(&whole(&a5)).unwrap();
        assert_eq!(derived.order(), 60);
    }

    #[test]
    fn lower_central_series_of_s3_stops_at_a3() {
        let s3 = group("s3", 3, &[&[2, 3, 1], &[2, 1, 3]]);
        let (series, nilpotent, residual) = lower_central_series(&whole(&s3)).unwrap();
        assert!(!nilpotent);
        assert_eq!(residual.order(), 3);
        assert_eq!(orders(&series.terms), vec![6, 3]);
        // [residual, g] = residual
        let again = commutator_subgroup(&whole(&s3), &residual, &whole(&s3)).unwrap();
        assert_eq!(again.order(), 3);
    }

    #[test]
    fn q8_is_nilpotent() {
        let q8 = q8();
        let (_, nilpotent, residual) = lower_central_series(&whole(&q8)).unwrap();
        assert!(nilpotent);
        assert!(residual.is_trivial());
        assert_eq!(fitting_subgroup(&whole(&q8)).unwrap().order(), 8);
        assert_eq!(fitting_height(&whole(&q8)).unwrap(), 1);
    }

    #[test]
    fn fitting_data_of_s4() {
        let s4 = s4();
        let fit = fitting_subgroup(&whole(&s4)).unwrap();
        assert_eq!(fit.order(), 4); // V4
        assert_eq!(fitting_height(&whole(&s4)).unwrap(), 3);
    }

    #[test]
    fn sylow_subgroups_of_s4() {
        let s4 = s4();
        let p2 = sylow_subgroup(&whole(&s4), 2).unwrap();
        assert_eq!(p2.order(), 8);
        let p3 = sylow_subgroup(&whole(&s4), 3).unwrap();
        assert_eq!(p3.order(), 3);
        let p5 = sylow_subgroup(&whole(&s4), 5).unwrap();
        assert!(p5.is_trivial());
        assert!(sylow_subgroup(&whole(&s4), 4).is_err());
    }

    #[test]
    fn o_2_of_s4_is_v4() {
        let s4 = s4();
        let core = o_p(&whole(&s4), 2).unwrap();
        assert_eq!(core.order(), 4);
        assert!(core.is_normal());
    }

    #[test]
    fn s3_has_normal_2_complement() {
        let s3 = group("s3", 3, &[&[2, 3, 1], &[2, 1, 3]]);
        let residual = o_p_residual(&whole(&s3), 2).unwrap();
        assert_eq!(residual.order(), 3);
        let complement = normal_p_complement(&whole(&s3), 2).unwrap();
        assert_eq!(complement.unwrap().order(), 3);
        // p-group edge: O^p of a p-group is trivial
        let q8 = q8();
        let r = o_p_residual(&whole(&q8), 2).unwrap();
        assert!(r.is_trivial());
        assert_eq!(normal_p_complement(&whole(&q8), 2).unwrap().unwrap().order(), 1);
    }

    #[test]
    fn normal_subgroups_of_s4() {
        let s4 = s4();
        let normals = normal_subgroups(&s4).unwrap();
        assert_eq!(orders(&normals), vec![1, 4, 12, 24]);
        for h in &normals {
            assert!(h.is_normal());
        }
        let minimal = minimal_normal_subgroups(&s4).unwrap();
        assert_eq!(orders(&minimal), vec![4]);
    }

    #[test]
    fn normal_subgroups_of_simple_and_trivial_groups() {
        let a5 = a5();
        assert_eq!(orders(&normal_subgroups(&a5).unwrap()), vec![1, 60]);
        let t = PermGroup::trivial(Guards::default());
        assert_eq!(orders(&normal_subgroups(&t).unwrap()), vec![1]);
    }

    #[test]
    fn chief_series_of_s4_has_elementary_abelian_factors() {
        let s4 = s4();
        let series = chief_series(&s4, &[]).unwrap();
        assert_eq!(orders(&series), vec![1, 4, 12, 24]);
        for w in series.windows(2) {
            let factor = w[1].order() / w[0].order();
            // prime power with every nonidentity element of prime order
            let primes = prime_divisors(factor as u64);
            assert_eq!(primes.len(), 1);
        }
    }

    #[test]
    fn solvability_flags() {
        let s4 = s4();
        assert!(is_solvable(&s4).unwrap());
        for p in [2, 3, 5, 7] {
            assert!(is_p_solvable(&s4, p).unwrap());
        }
        let a5 = a5();
        assert!(!is_p_solvable(&a5, 2).unwrap());
        assert!(!is_p_solvable(&a5, 5).unwrap());
        // p not dividing the order at all: chief factor A5 is a p'-group
        assert!(is_p_solvable(&a5, 7).unwrap());
    }

    #[test]
    fn subgroup_enumeration_of_small_groups() {
        let s3 = group("s3", 3, &[&[2, 3, 1], &[2, 1, 3]]);
        let subs = enumerate_subgroups(&s3).unwrap();
        assert_eq!(orders(&subs), vec![1, 2, 2, 2, 3, 6]);

        let q8 = q8();
        let subs = enumerate_subgroups(&q8).unwrap();
        assert_eq!(orders(&subs), vec![1, 2, 4, 4, 4, 8]);

        let t = PermGroup::trivial(Guards::default());
        assert_eq!(enumerate_subgroups(&t).unwrap().len(), 1);
    }

    #[test]
    fn subgroup_enumeration_is_complete_on_s4() {
        // completeness oracle: every cyclic subgroup is listed and the list
        // is closed under pairwise joins; 30 is the known count for s4
        let s4 = s4();
        let subs = enumerate_subgroups(&s4).unwrap();
        assert_eq!(subs.len(), 30);
        for a in &subs {
            for b in &subs {
                let j = a.join(b).unwrap();
                assert!(subs.iter().any(|h| h.members() == j.members()));
            }
        }
    }

    #[test]
    fn subgroup_guard_reports_exceedance() {
        let guards = Guards {
            subgroup_limit: 10,
            ..Guards::default()
        };
        let gens = vec![
            Permutation::from_one_based(&[2, 1, 3, 4], 4, 1).unwrap(),
            Permutation::from_one_based(&[2, 3, 4, 1], 4, 2).unwrap(),
        ];
        let s4 = PermGroup::new("s4", 4, gens, guards).unwrap();
        assert!(enumerate_subgroups(&s4).unwrap_err().is_guard());
    }

    #[test]
    fn a5_inside_s5_is_found_despite_being_perfect() {
        let s5 = group("s5", 5, &[&[2, 1, 3, 4, 5], &[2, 3, 4, 5, 1]]);
        let subs = enumerate_subgroups(&s5).unwrap();
        assert_eq!(subs.len(), 156);
        assert!(subs.iter().any(|h| h.order() == 60));
    }
}
