use std::collections::HashSet;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::group::{ElemId, PermGroup};

/// A subgroup of a fixed parent group: a generator list plus the sorted set
/// of member element ids. Handles are cheap to clone and immutable.
#[derive(Clone)]
pub struct SubgroupHandle {
    parent: PermGroup,
    generators: Vec<ElemId>,
    members: Arc<Vec<ElemId>>,
    normal: Arc<OnceLock<bool>>,
}

impl PartialEq for SubgroupHandle {
    fn eq(&self, other: &Self) -> bool {
        self.parent.same_group(&other.parent) && self.members == other.members
    }
}
impl Eq for SubgroupHandle {}

impl std::fmt::Debug for SubgroupHandle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subgroup(order {} of {})", self.order(), self.parent.name())
    }
}

impl SubgroupHandle {
    pub fn parent(&self) -> &PermGroup {
        &self.parent
    }

    pub fn generator_ids(&self) -> &[ElemId] {
        &self.generators
    }

    pub fn members(&self) -> &[ElemId] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn index(&self) -> usize {
        self.parent.order().expect("element table") / self.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_whole_group(&self) -> bool {
        self.order() == self.parent.order().expect("element table")
    }

    #[inline]
    pub fn contains(&self, id: ElemId) -> bool {
        self.members.binary_search(&id).is_ok()
    }

    pub fn contains_subgroup(&self, other: &SubgroupHandle) -> bool {
        other.members.iter().all(|&x| self.contains(x))
    }

    /// Generator words in the parent's generators, for reports.
    pub fn generator_words(&self) -> Vec<String> {
        self.generators.iter().map(|&g| self.parent.word(g)).collect()
    }

    pub fn describe_short(&self) -> String {
        format!("sub{}", self.order())
    }

    /// Normality in the parent, verified by conjugating the subgroup
    /// generators with the parent generators. Cached.
    pub fn is_normal(&self) -> bool {
        *self.normal.get_or_init(|| {
            let parent_gens = self.parent.generator_ids().expect("element table");
            parent_gens.iter().all(|&g| {
                self.generators
                    .iter()
                    .all(|&h| self.contains(self.parent.conj(h, g)))
            })
        })
    }

    pub(crate) fn set_normal_verified(&self) {
        // Only called by constructions whose output is normal by closure;
        // debug builds re-check the claim.
        debug_assert!({
            let parent_gens = self.parent.generator_ids().expect("element table");
            parent_gens.iter().all(|&g| {
                self.members
                    .iter()
                    .all(|&h| self.contains(self.parent.conj(h, g)))
            })
        });
        let _ = self.normal.set(true);
    }

    pub fn require_normal(&self) -> Result<()> {
        if self.is_normal() {
            Ok(())
        } else {
            Err(Error::NotNormal)
        }
    }

    /// Realize this subgroup as a group in its own right (same degree).
    /// Its element ids coincide with positions in `members()`.
    pub fn as_group(&self) -> PermGroup {
        self.parent.subgroup_as_group(&self.members, &self.generators)
    }

    /// Translate a member's parent id to its id inside `as_group()`.
    pub fn local_id(&self, parent_id: ElemId) -> ElemId {
        self.members
            .binary_search(&parent_id)
            .expect("member of subgroup") as ElemId
    }

    /// Translate an `as_group()` id back to the parent id.
    pub fn parent_id(&self, local_id: ElemId) -> ElemId {
        self.members[local_id as usize]
    }

    pub fn intersection(&self, other: &SubgroupHandle) -> Result<SubgroupHandle> {
        let small = if self.order() <= other.order() { self } else { other };
        let large = if self.order() <= other.order() { other } else { self };
        let members: Vec<ElemId> = small
            .members
            .iter()
            .copied()
            .filter(|&x| large.contains(x))
            .collect();
        SubgroupHandle::from_members(&self.parent, members)
    }

    pub fn join(&self, other: &SubgroupHandle) -> Result<SubgroupHandle> {
        let seeds: Vec<ElemId> = self
            .generators
            .iter()
            .chain(other.generators.iter())
            .copied()
            .collect();
        generated_subgroup(&self.parent, &seeds)
    }

    pub fn conjugate_by(&self, g: ElemId) -> SubgroupHandle {
        let members: Vec<ElemId> = {
            let mut m: Vec<ElemId> = self
                .members
                .iter()
                .map(|&x| self.parent.conj(x, g))
                .collect();
            m.sort_unstable();
            m
        };
        let generators = self.generators.iter().map(|&x| self.parent.conj(x, g)).collect();
        SubgroupHandle {
            parent: self.parent.clone(),
            generators,
            members: Arc::new(members),
            normal: Arc::new(OnceLock::new()),
        }
    }

    /// The center: members commuting with every generator of this subgroup.
    pub fn center(&self) -> Result<SubgroupHandle> {
        let members: Vec<ElemId> = self
            .members
            .iter()
            .copied()
            .filter(|&x| {
                self.generators
                    .iter()
                    .all(|&g| self.parent.mul(x, g) == self.parent.mul(g, x))
            })
            .collect();
        SubgroupHandle::from_members(&self.parent, members)
    }

    /// Build a handle from a known member set, extracting a small
    /// generating set greedily. Errors if the set is not a subgroup.
    pub fn from_members(parent: &PermGroup, mut members: Vec<ElemId>) -> Result<SubgroupHandle> {
        members.sort_unstable();
        members.dedup();
        let identity = parent.identity_id()?;
        if members.binary_search(&identity).is_err() {
            return Err(Error::NotASubgroup);
        }
        // Greedy generators: repeatedly adjoin the smallest member outside
        // the closure so far. Each step at least doubles the closure.
        let mut generators = Vec::new();
        let mut closed: Vec<ElemId> = vec![identity];
        while closed.len() < members.len() {
            let next = members
                .iter()
                .copied()
                .find(|x| closed.binary_search(x).is_err())
                .ok_or(Error::NotASubgroup)?;
            generators.push(next);
            closed = close_under_products(parent, &generators)?;
            if closed.iter().any(|x| members.binary_search(x).is_err()) {
                return Err(Error::NotASubgroup);
            }
        }
        if closed != members {
            return Err(Error::NotASubgroup);
        }
        Ok(SubgroupHandle {
            parent: parent.clone(),
            generators,
            members: Arc::new(members),
            normal: Arc::new(OnceLock::new()),
        })
    }

    /// The whole group as a handle over itself.
    pub fn whole_group(parent: &PermGroup) -> Result<SubgroupHandle> {
        let order = parent.order()?;
        let members: Vec<ElemId> = (0..order as ElemId).collect();
        let generators = if order == 1 {
            Vec::new()
        } else {
            parent.generator_ids()?
        };
        let h = SubgroupHandle {
            parent: parent.clone(),
            generators,
            members: Arc::new(members),
            normal: Arc::new(OnceLock::new()),
        };
        let _ = h.normal.set(true);
        Ok(h)
    }

    pub fn trivial(parent: &PermGroup) -> Result<SubgroupHandle> {
        generated_subgroup(parent, &[])
    }
}

/// Sorted closure of a seed list under products, by breadth-first search.
fn close_under_products(parent: &PermGroup, seeds: &[ElemId]) -> Result<Vec<ElemId>> {
    let identity = parent.identity_id()?;
    let mut known: HashSet<ElemId> = HashSet::new();
    known.insert(identity);
    let mut queue: Vec<ElemId> = vec![identity];
    // Include inverses so the closure is a subgroup even for seeds of
    // infinite-looking one-sided products (finite groups make this exact).
    let mut gens: Vec<ElemId> = Vec::new();
    for &s in seeds {
        gens.push(s);
        gens.push(parent.inv(s));
    }
    gens.sort_unstable();
    gens.dedup();
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for &g in &gens {
            let y = parent.mul(x, g);
            if known.insert(y) {
                queue.push(y);
            }
        }
    }
    let mut members: Vec<ElemId> = known.into_iter().collect();
    members.sort_unstable();
    Ok(members)
}

/// The smallest subgroup of `parent` containing the seed elements.
/// An empty seed list yields the trivial subgroup.
pub fn generated_subgroup(parent: &PermGroup, seeds: &[ElemId]) -> Result<SubgroupHandle> {
    for &s in seeds {
        parent.check_id(s)?;
    }
    let members = close_under_products(parent, seeds)?;
    let mut generators: Vec<ElemId> = seeds.to_vec();
    generators.sort_unstable();
    generators.dedup();
    let identity = parent.identity_id()?;
    generators.retain(|&g| g != identity);
    Ok(SubgroupHandle {
        parent: parent.clone(),
        generators,
        members: Arc::new(members),
        normal: Arc::new(OnceLock::new()),
    })
}

/// The smallest normal subgroup of `parent` containing the seeds:
/// closure under products and conjugation by the parent's generators.
pub fn normal_closure(parent: &PermGroup, seeds: &[ElemId]) -> Result<SubgroupHandle> {
    let closure = normal_closure_members(parent, parent.generator_ids()?.as_slice(), seeds)?;
    let h = SubgroupHandle::from_members(parent, closure)?;
    h.set_normal_verified();
    Ok(h)
}

/// Closure of `seeds` under products and conjugation by `conjugators`.
/// With the parent's generators as conjugators this is the normal closure;
/// with a subgroup's generators it is the closure normalized by that subgroup.
pub(crate) fn normal_closure_members(
    parent: &PermGroup,
    conjugators: &[ElemId],
    seeds: &[ElemId],
) -> Result<Vec<ElemId>> {
    for &s in seeds {
        parent.check_id(s)?;
    }
    let identity = parent.identity_id()?;
    let mut known: HashSet<ElemId> = HashSet::new();
    known.insert(identity);
    let mut queue: Vec<ElemId> = vec![identity];
    let mut pending: Vec<ElemId> = seeds.to_vec();
    while let Some(s) = pending.pop() {
        if !known.insert(s) {
            continue;
        }
        queue.push(s);
        let si = parent.inv(s);
        if !known.contains(&si) {
            pending.push(si);
        }
        for &c in conjugators {
            let t = parent.conj(s, c);
            if !known.contains(&t) {
                pending.push(t);
            }
        }
        // close under products with everything already present
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            let y = parent.mul(x, s);
            if !known.contains(&y) {
                pending.push(y);
            }
            let z = parent.mul(s, x);
            if !known.contains(&z) {
                pending.push(z);
            }
        }
    }
    // The loop above interleaves closure steps; finish with a plain product
    // closure to guarantee the result is a subgroup.
    let mut members: Vec<ElemId> = known.into_iter().collect();
    members.sort_unstable();
    loop {
        let before = members.len();
        let set: HashSet<ElemId> = members.iter().copied().collect();
        let mut fresh: Vec<ElemId> = Vec::new();
        for &x in &members {
            for &y in &members {
                let p = parent.mul(x, y);
                if !set.contains(&p) {
                    fresh.push(p);
                }
            }
            for &c in conjugators {
                let t = parent.conj(x, c);
                if !set.contains(&t) {
                    fresh.push(t);
                }
            }
        }
        if fresh.is_empty() && members.len() == before {
            break;
        }
        members.extend(fresh);
        members.sort_unstable();
        members.dedup();
        if members.len() == before {
            break;
        }
    }
    Ok(members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::guards::Guards;
    use crate::perm::Permutation;

    fn s4() -> PermGroup {
        let gens = vec![
            Permutation::from_one_based(&[2, 1, 3, 4], 4, 1).unwrap(),
            Permutation::from_one_based(&[2, 3, 4, 1], 4, 2).unwrap(),
        ];
        PermGroup::new("s4", 4, gens, Guards::default()).unwrap()
    }

    fn id_of(g: &PermGroup, row: &[u64]) -> ElemId {
        g.id_of(&Permutation::from_one_based(row, g.degree(), 0).unwrap())
            .unwrap()
    }

    #[test]
    fn three_cycle_generates_order_three() {
        let s4 = s4();
        let c = id_of(&s4, &[2, 3, 1, 4]);
        let h = generated_subgroup(&s4, &[c]).unwrap();
        assert_eq!(h.order(), 3);
    }

    #[test]
    fn empty_seeds_give_trivial_subgroup() {
        let s4 = s4();
        let h = generated_subgroup(&s4, &[]).unwrap();
        assert_eq!(h.order(), 1);
        assert!(h.is_normal());
    }

    #[test]
    fn normal_closure_of_transposition_is_s4() {
        let s4 = s4();
        let t = id_of(&s4, &[2, 1, 3, 4]);
        let h = normal_closure(&s4, &[t]).unwrap();
        assert_eq!(h.order(), 24);
    }

    #[test]
    fn normal_closure_of_double_transposition_is_v4() {
        let s4 = s4();
        let t = id_of(&s4, &[2, 1, 4, 3]);
        let h = normal_closure(&s4, &[t]).unwrap();
        assert_eq!(h.order(), 4);
        assert!(h.is_normal());
        // brute oracle: conjugation closure inside S4 by scanning all elements
        let mut set: HashSet<ElemId> = HashSet::new();
        for g in 0..24 {
            set.insert(s4.conj(t, g));
        }
        assert!(set.iter().all(|&x| h.contains(x)));
    }

    #[test]
    fn from_members_rejects_non_subgroups() {
        let s4 = s4();
        let t = id_of(&s4, &[2, 1, 3, 4]);
        let c = id_of(&s4, &[2, 3, 1, 4]);
        let e = s4.identity_id().unwrap();
        assert!(SubgroupHandle::from_members(&s4, vec![e, t, c]).is_err());
        assert!(SubgroupHandle::from_members(&s4, vec![t]).is_err());
    }

    #[test]
    fn lagrange_holds_for_generated_subgroups() {
        let s4 = s4();
        for x in 0..24 {
            let h = generated_subgroup(&s4, &[x]).unwrap();
            assert_eq!(24 % h.order(), 0);
        }
    }

    #[test]
    fn center_of_s4_is_trivial() {
        let s4 = s4();
        let whole = SubgroupHandle::whole_group(&s4).unwrap();
        assert_eq!(whole.center().unwrap().order(), 1);
    }
}
