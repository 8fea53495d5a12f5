use crate::error::{Error, Result};

/// A permutation of `{0, .., degree-1}`, stored as a dense image array.
///
/// Points are 0-based internally; the group-file format and all printed
/// output use 1-based points. Products compose left to right: `(a * b)`
/// moves `x` to `b[a[x]]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u16]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u16).collect(),
        }
    }

    /// Build from a 0-based image array, checking bijectivity.
    ///
    /// `row` is only used to label errors when parsing a group file.
    pub fn from_images(images: Vec<u16>, row: usize) -> Result<Self> {
        let degree = images.len();
        let mut seen = vec![false; degree];
        for &img in &images {
            let i = img as usize;
            if i >= degree || seen[i] {
                return Err(Error::NotABijection {
                    row,
                    point: img as usize + 1,
                });
            }
            seen[i] = true;
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }

    /// Build from a 1-based image array as found in group files.
    pub fn from_one_based(images: &[u64], degree: usize, row: usize) -> Result<Self> {
        if images.len() != degree {
            return Err(Error::DegreeMismatch {
                row,
                expected: degree,
                found: images.len(),
            });
        }
        let mut zero_based = Vec::with_capacity(degree);
        for &img in images {
            if img < 1 || img > degree as u64 {
                return Err(Error::NotABijection {
                    row,
                    point: img as usize,
                });
            }
            zero_based.push((img - 1) as u16);
        }
        Self::from_images(zero_based, row)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: u16) -> u16 {
        self.images[point as usize]
    }

    pub fn images(&self) -> &[u16] {
        &self.images
    }

    pub fn one_based_images(&self) -> Vec<u64> {
        self.images.iter().map(|&i| i as u64 + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| i == img as usize)
    }

    /// `self * other`, acting as `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        let images = self.images.iter().map(|&i| other.images[i as usize]).collect();
        Permutation { images }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u16; self.degree()];
        for (i, &img) in self.images.iter().enumerate() {
            images[img as usize] = i as u16;
        }
        Permutation {
            images: images.into_boxed_slice(),
        }
    }

    /// Cycle lengths of the disjoint cycle decomposition, including fixed points.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                len += 1;
                p = self.images[p] as usize;
            }
            lengths.push(len);
        }
        lengths
    }

    /// Multiplicative order: the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycle_lengths()
            .into_iter()
            .fold(1u64, |acc, len| num::integer::lcm(acc, len as u64))
    }

    /// Disjoint cycle notation on 1-based points, `()` for the identity.
    pub fn cycle_string(&self) -> String {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                seen[start] = true;
                continue;
            }
            out.push('(');
            let mut p = start;
            let mut first = true;
            while !seen[p] {
                seen[p] = true;
                if !first {
                    out.push(' ');
                }
                out.push_str(&(p + 1).to_string());
                first = false;
                p = self.images[p] as usize;
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl std::fmt::Debug for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.cycle_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(v: &[u16]) -> Permutation {
        Permutation::from_images(v.to_vec(), 0).unwrap()
    }

    #[test]
    fn identity_round_trip() {
        let id = Permutation::identity(5);
        assert!(id.is_identity());
        assert_eq!(id.order(), 1);
        assert_eq!(id.cycle_string(), "()");
    }

    #[test]
    fn rejects_non_bijection() {
        // 1-based [2,1,3,3] duplicates point 3.
        let err = Permutation::from_one_based(&[2, 1, 3, 3], 4, 1).unwrap_err();
        match err {
            Error::NotABijection { row, point } => {
                assert_eq!(row, 1);
                assert_eq!(point, 3);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn three_cycle_has_order_three() {
        let c = Permutation::from_one_based(&[2, 3, 1], 3, 0).unwrap();
        assert_eq!(c.order(), 3);
        assert!(c.then(&c).then(&c).is_identity());
    }

    #[test]
    fn order_is_lcm_of_cycle_lengths() {
        // 1-based [2,1,4,3,5]: two 2-cycles and a fixed point.
        let p = Permutation::from_one_based(&[2, 1, 4, 3, 5], 5, 0).unwrap();
        assert_eq!(p.order(), 2);
    }

    #[test]
    fn inverse_cancels() {
        let p = perm(&[2, 0, 3, 1]);
        assert!(p.then(&p.inverse()).is_identity());
        assert!(p.inverse().then(&p).is_identity());
    }

    #[test]
    fn composition_order_is_left_to_right() {
        let a = perm(&[1, 0, 2]); // swap 1,2 (1-based)
        let b = perm(&[0, 2, 1]); // swap 2,3
        let ab = a.then(&b);
        // x=1: a sends 1 to 2, b sends 2 to 3.
        assert_eq!(ab.apply(0), 2);
    }
}
