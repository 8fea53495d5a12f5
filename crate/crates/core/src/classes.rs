use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::Result;
use crate::group::{ElemId, PermGroup};

/// Conjugacy classes of a group with the maps every character formula needs:
/// sizes, representatives, the inverse map, and power maps for all primes up
/// to the exponent. Classes are ordered by their smallest element id, so the
/// identity class is always class 0.
pub struct ClassData {
    pub group: PermGroup,
    pub classes: Vec<Vec<ElemId>>,
    pub representatives: Vec<ElemId>,
    pub sizes: Vec<usize>,
    pub class_of: Vec<usize>,
    pub inverse_map: Vec<usize>,
    /// For each prime p up to the exponent, class k maps to the class of
    /// rep_k^p. Arbitrary powers compose along the prime factorization.
    pub power_maps: BTreeMap<u64, Vec<usize>>,
    pub exponent: u64,
    /// Multiplicative order of each class representative.
    pub rep_orders: Vec<u64>,
}

impl ClassData {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn identity_class(&self) -> usize {
        0
    }

    /// The class of `rep_k^e`, by composing prime power maps.
    pub fn power_class(&self, k: usize, e: u64) -> usize {
        let n = self.rep_orders[k];
        let mut e = e % n;
        if e == 0 {
            return self.identity_class();
        }
        let mut class = k;
        let mut p = 2;
        while e > 1 {
            while e % p == 0 {
                class = self.power_maps[&p][class];
                e /= p;
            }
            p += 1;
        }
        class
    }
}

/// Conjugacy classes by orbit closure under conjugation with the generators.
pub fn conjugacy_classes(group: &PermGroup) -> Result<Arc<ClassData>> {
    if let Some(cd) = group.inner.classes.get() {
        return Ok(cd.clone());
    }
    let order = group.order()?;
    let gen_ids = group.generator_ids()?;
    let mut class_of: Vec<usize> = vec![usize::MAX; order];
    let mut classes: Vec<Vec<ElemId>> = Vec::new();
    for start in 0..order as ElemId {
        if class_of[start as usize] != usize::MAX {
            continue;
        }
        let idx = classes.len();
        let mut orbit = vec![start];
        class_of[start as usize] = idx;
        let mut head = 0;
        while head < orbit.len() {
            let x = orbit[head];
            head += 1;
            for &g in &gen_ids {
                let y = group.conj(x, g);
                if class_of[y as usize] == usize::MAX {
                    class_of[y as usize] = idx;
                    orbit.push(y);
                }
            }
        }
        orbit.sort_unstable();
        classes.push(orbit);
    }

    let representatives: Vec<ElemId> = classes.iter().map(|c| c[0]).collect();
    let sizes: Vec<usize> = classes.iter().map(|c| c.len()).collect();
    let rep_orders: Vec<u64> = representatives
        .iter()
        .map(|&r| group.element_order(r))
        .collect();
    let exponent = group.exponent()?;
    let inverse_map: Vec<usize> = representatives
        .iter()
        .map(|&r| class_of[group.inv(r) as usize])
        .collect();
    let mut power_maps = BTreeMap::new();
    for p in 2..=exponent {
        if !crate::arith::is_prime(p) {
            continue;
        }
        let map: Vec<usize> = representatives
            .iter()
            .map(|&r| class_of[group.power(r, p) as usize])
            .collect();
        power_maps.insert(p, map);
    }

    let cd = Arc::new(ClassData {
        group: group.clone(),
        classes,
        representatives,
        sizes,
        class_of,
        inverse_map,
        power_maps,
        exponent,
        rep_orders,
    });
    let _ = group.inner.classes.set(cd.clone());
    Ok(group.inner.classes.get().unwrap().clone())
}

/// Class multiplication coefficient: the number of pairs
/// `(x, y) in C_i x C_j` with `x y = z` for one fixed `z in C_k`.
/// The count does not depend on the choice of `z`.
pub fn class_mult_coefficient(cd: &ClassData, i: usize, j: usize, k: usize) -> u64 {
    let z = cd.representatives[k];
    count_with_fixed_product(cd, i, j, z)
}

pub(crate) fn count_with_fixed_product(cd: &ClassData, i: usize, j: usize, z: ElemId) -> u64 {
    let group = &cd.group;
    let mut count = 0;
    for &x in &cd.classes[i] {
        // x y = z  <=>  y = x^-1 z
        let y = group.mul(group.inv(x), z);
        if cd.class_of[y as usize] == j {
            count += 1;
        }
    }
    count
}

/// Column k of the class matrix for class i: `a_{i j k}` for all j at once.
pub(crate) fn class_matrix_column(cd: &ClassData, i: usize, k: usize) -> Vec<u64> {
    let group = &cd.group;
    let z = cd.representatives[k];
    let mut col = vec![0u64; cd.class_count()];
    for &x in &cd.classes[i] {
        let y = group.mul(group.inv(x), z);
        col[cd.class_of[y as usize]] += 1;
    }
    col
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

    fn s3() -> PermGroup {
        group("s3", 3, &[&[2, 3, 1], &[2, 1, 3]])
    }

    #[test]
    fn s3_has_three_classes_of_sizes_1_3_2() {
        let cd = conjugacy_classes(&s3()).unwrap();
        let mut sizes = cd.sizes.clone();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert_eq!(cd.sizes[0], 1); // identity class first
        assert_eq!(cd.sizes.iter().sum::<usize>(), 6);
    }

    #[test]
    fn abelian_group_has_singleton_classes() {
        let c6 = group("c6", 6, &[&[2, 3, 4, 5, 6, 1]]);
        let cd = conjugacy_classes(&c6).unwrap();
        assert_eq!(cd.class_count(), 6);
        assert!(cd.sizes.iter().all(|&s| s == 1));
    }

    #[test]
    fn identity_class_convolution_is_diagonal() {
        // with x forced to the identity, the only pair is (e, z)
        let cd = conjugacy_classes(&s3()).unwrap();
        for j in 0..3 {
            for k in 0..3 {
                let expected = u64::from(j == k);
                assert_eq!(class_mult_coefficient(&cd, 0, j, k), expected);
            }
        }
    }

    #[test]
    fn transposition_class_squares_to_three_identities() {
        let cd = conjugacy_classes(&s3()).unwrap();
        let transpositions = (0..3).find(|&i| cd.sizes[i] == 3).unwrap();
        assert_eq!(class_mult_coefficient(&cd, transpositions, transpositions, 0), 3);
    }

    #[test]
    fn counting_identity_over_k() {
        // sum_k a_{ijk} |C_k| = |C_i| |C_j|
        let s4 = group("s4", 4, &[&[2, 1, 3, 4], &[2, 3, 4, 1]]);
        let cd = conjugacy_classes(&s4).unwrap();
        let r = cd.class_count();
        for i in 0..r {
            for j in 0..r {
                let total: u64 = (0..r)
                    .map(|k| class_mult_coefficient(&cd, i, j, k) * cd.sizes[k] as u64)
                    .sum();
                assert_eq!(total, (cd.sizes[i] * cd.sizes[j]) as u64);
            }
        }
    }

    #[test]
    fn coefficient_is_independent_of_chosen_z() {
        let s4 = group("s4", 4, &[&[2, 1, 3, 4], &[2, 3, 4, 1]]);
        let cd = conjugacy_classes(&s4).unwrap();
        let r = cd.class_count();
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    let counts: Vec<u64> = cd.classes[k]
                        .iter()
                        .map(|&z| count_with_fixed_product(&cd, i, j, z))
                        .collect();
                    assert!(counts.windows(2).all(|w| w[0] == w[1]));
                }
            }
        }
    }

    #[test]
    fn power_maps_compose_along_factorizations() {
        let s4 = group("s4", 4, &[&[2, 1, 3, 4], &[2, 3, 4, 1]]);
        let cd = conjugacy_classes(&s4).unwrap();
        for k in 0..cd.class_count() {
            let rep = cd.representatives[k];
            for e in 0..12u64 {
                let direct = cd.class_of[s4.power(rep, e) as usize];
                assert_eq!(cd.power_class(k, e), direct, "class {k} power {e}");
            }
        }
    }
}
