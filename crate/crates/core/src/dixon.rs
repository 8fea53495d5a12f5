//! Exact character tables by modular eigenvalue splitting.
//!
//! The class sums of a group act on the class-function space through the
//! class multiplication coefficients; the vectors of central character
//! values are their common eigenvectors. Working modulo a prime
//! `q = 1 (mod exponent)` with `q > |G|` turns the search for those
//! eigenvectors into linear algebra over `F_q`: the bound `q > |G|` makes
//! every recovered integer (squared degrees, eigenvalue multiplicities)
//! land on its unique representative below `q`, so the exact values can be
//! read off without ambiguity. The exact character values are then
//! assembled from root-of-unity multiplicities obtained by discrete
//! Fourier inversion along power orbits.



use crate::arith::{next_prime_one_mod, perfect_sqrt};
use crate::chartab::CharacterTable;
use crate::classes::{class_matrix_column, conjugacy_classes, ClassData};
use crate::cyclotomic::Cyc;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::modp::{minimal_polynomial, null_space, rref, split_roots, Fq, Mat};

pub fn build_table(group: &PermGroup) -> Result<CharacterTable> {
    let order = group.order()?;
    let limit = group.guards().table_limit;
    if order > limit {
        return Err(Error::GuardExceeded {
            what: "character table",
            limit,
            at: order,
        });
    }
    let cd = conjugacy_classes(group)?;
    if order == 1 {
        return Ok(CharacterTable {
            group: group.clone(),
            class_data: cd,
            rows: vec![vec![Cyc::one()]],
            degrees: vec![1],
            dixon_prime: 2,
            exponent: 1,
        });
    }

    let r = cd.class_count();
    let e = cd.exponent;
    let q = next_prime_one_mod(e, order as u64);
    let f = Fq::new(q);

    let eigenvectors = common_eigenvectors(&f, &cd)?;
    debug_assert_eq!(eigenvectors.len(), r);

    // Recover degrees and residues of the character values.
    let inv_sizes: Vec<u64> = cd.sizes.iter().map(|&h| f.inv(h as u64)).collect();
    let zeta = f.element_of_order(e);
    let mut rows: Vec<(u64, Vec<Cyc>)> = Vec::with_capacity(r);
    for v in &eigenvectors {
        // normalize at the identity class, where the central character is 1
        if v[0] == 0 {
            return Err(Error::Defect("eigenvector vanishes at the identity class".into()));
        }
        let scale = f.inv(v[0]);
        let v: Vec<u64> = v.iter().map(|&x| f.mul(x, scale)).collect();

        // 1/d^2 = (1/|G|) sum_k v_k v_{k'} / |C_k|
        let mut s = 0u64;
        for k in 0..r {
            let term = f.mul(f.mul(v[k], v[cd.inverse_map[k]]), inv_sizes[k]);
            s = f.add(s, term);
        }
        if s == 0 {
            return Err(Error::Defect("degree sum vanished".into()));
        }
        let d_squared = f.mul(order as u64, f.inv(s));
        if d_squared > order as u64 {
            return Err(Error::Defect(format!(
                "recovered squared degree {d_squared} exceeds the group order"
            )));
        }
        let Some(degree) = perfect_sqrt(d_squared) else {
            return Err(Error::Defect(format!(
                "recovered squared degree {d_squared} is not a perfect square"
            )));
        };
        if order as u64 % degree != 0 {
            return Err(Error::Defect(format!(
                "degree {degree} does not divide the group order"
            )));
        }

        // residues of the character values: chi(g_k) = d v_k / |C_k| mod q
        let residues: Vec<u64> = (0..r)
            .map(|k| f.mul(f.mul(degree, v[k]), inv_sizes[k]))
            .collect();

        let values = lift_row(&f, &cd, e, zeta, degree, &residues)?;
        rows.push((degree, values));
    }

    rows.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
    let degrees: Vec<u64> = rows.iter().map(|(d, _)| *d).collect();
    let rows: Vec<Vec<Cyc>> = rows.into_iter().map(|(_, vals)| vals).collect();

    let sum_of_squares: u64 = degrees.iter().map(|d| d * d).sum();
    if sum_of_squares != order as u64 {
        return Err(Error::Defect(format!(
            "degree squares sum to {sum_of_squares}, expected {order}"
        )));
    }

    let table = CharacterTable {
        group: group.clone(),
        class_data: cd,
        rows,
        degrees,
        dixon_prime: q,
        exponent: e,
    };
    table.verify_orthogonality()?;
    Ok(table)
}

/// Lift one row from residues mod q to exact cyclotomic values.
fn lift_row(
    f: &Fq,
    cd: &ClassData,
    e: u64,
    zeta: u64,
    degree: u64,
    residues: &[u64],
) -> Result<Vec<Cyc>> {
    let r = cd.class_count();
    let mut values = Vec::with_capacity(r);
    for k in 0..r {
        let n = cd.rep_orders[k];
        // n-th root of unity inside F_q
        let zn = f.pow(zeta, e / n);
        let zn_inv = f.inv(zn);
        let n_inv = f.inv(n % f.q);
        let mut mults = Vec::with_capacity(n as usize);
        let mut total = 0u64;
        for j in 0..n {
            let mut sum = 0u64;
            for l in 0..n {
                let chi_l = residues[cd.power_class(k, l)];
                let w = f.pow(zn_inv, (j * l) % n);
                sum = f.add(sum, f.mul(chi_l, w));
            }
            let m = f.mul(sum, n_inv);
            if m > degree {
                return Err(Error::Defect(format!(
                    "eigenvalue multiplicity {m} exceeds degree {degree}"
                )));
            }
            total += m;
            mults.push(m);
        }
        if total != degree {
            return Err(Error::Defect(format!(
                "eigenvalue multiplicities sum to {total}, expected {degree}"
            )));
        }
        // lift consistency: the assembled value reduces back to the residue
        let mut back = 0u64;
        for (j, &m) in mults.iter().enumerate() {
            back = f.add(back, f.mul(m, f.pow(zn, j as u64)));
        }
        if back != residues[k] {
            return Err(Error::Defect(
                "lifted value does not reduce to the modular residue".into(),
            ));
        }
        values.push(Cyc::from_multiplicities(n, &mults));
    }
    Ok(values)
}

/// Split the class-function space over `F_q` into the common eigenlines of
/// the class matrices. Matrices are applied in class-index order; if the
/// single matrices do not finish the job, products of pairs are applied
/// as a fallback before giving up.
fn common_eigenvectors(f: &Fq, cd: &ClassData) -> Result<Vec<Vec<u64>>> {
    let r = cd.class_count();
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![identity_basis(r)];
    let mut matrices: Vec<Option<Mat>> = vec![None; r];

    for i in 1..r {
        if all_lines(&spaces) {
            break;
        }
        let m = matrix_for(f, cd, &mut matrices, i);
        split_spaces(f, &mut spaces, m);
    }
    if !all_lines(&spaces) {
        // products of class matrices still commute with everything and can
        // separate what single matrices did not
        'outer: for i in 1..r {
            for j in i..r {
                if all_lines(&spaces) {
                    break 'outer;
                }
                let a = matrix_for(f, cd, &mut matrices, i).clone();
                let b = matrix_for(f, cd, &mut matrices, j).clone();
                let prod = mat_mul(f, &a, &b);
                split_spaces(f, &mut spaces, &prod);
            }
        }
    }
    if !all_lines(&spaces) {
        return Err(Error::Defect(
            "eigenspace splitting did not reach one-dimensional spaces".into(),
        ));
    }
    Ok(spaces.into_iter().map(|mut s| s.pop().unwrap()).collect())
}

fn identity_basis(r: usize) -> Vec<Vec<u64>> {
    (0..r)
        .map(|i| {
            let mut v = vec![0u64; r];
            v[i] = 1;
            v
        })
        .collect()
}

fn all_lines(spaces: &[Vec<Vec<u64>>]) -> bool {
    spaces.iter().all(|s| s.len() == 1)
}

fn matrix_for<'a>(
    f: &Fq,
    cd: &ClassData,
    matrices: &'a mut Vec<Option<Mat>>,
    i: usize,
) -> &'a Mat {
    if matrices[i].is_none() {
        let r = cd.class_count();
        let mut m = Mat::zero(r, r);
        for k in 0..r {
            let col = class_matrix_column(cd, i, k);
            for (j, &a) in col.iter().enumerate() {
                m.set(j, k, a % f.q);
            }
        }
        matrices[i] = Some(m);
    }
    matrices[i].as_ref().unwrap()
}

fn mat_mul(f: &Fq, a: &Mat, b: &Mat) -> Mat {
    let n = a.n_rows;
    let mut out = Mat::zero(n, n);
    for i in 0..n {
        for k in 0..n {
            let aik = a.at(i, k);
            if aik == 0 {
                continue;
            }
            for j in 0..n {
                let v = f.add(out.at(i, j), f.mul(aik, b.at(k, j)));
                out.set(i, j, v);
            }
        }
    }
    out
}

/// Refine every subspace into eigenspaces of `m`. Subspaces are stored as
/// row-reduced bases, which makes expressing `m * w` in the basis a lookup
/// at the pivot columns.
fn split_spaces(f: &Fq, spaces: &mut Vec<Vec<Vec<u64>>>, m: &Mat) {
    let mut next: Vec<Vec<Vec<u64>>> = Vec::with_capacity(spaces.len());
    for basis in spaces.drain(..) {
        if basis.len() == 1 {
            next.push(basis);
            continue;
        }
        next.extend(split_one(f, basis, m));
    }
    *spaces = next;
}

fn split_one(f: &Fq, basis: Vec<Vec<u64>>, m: &Mat) -> Vec<Vec<Vec<u64>>> {
    let dim = basis.len();
    // row reduce the basis to identify pivot columns
    let mut reduced = basis;
    let pivots = rref(f, &mut reduced);
    debug_assert_eq!(pivots.len(), dim, "basis must be independent");

    // action of m on the subspace: column j = coords of m * b_j
    let mut action = Mat::zero(dim, dim);
    for (j, b) in reduced.iter().enumerate() {
        let image = m.mul_vec(f, b);
        // invariance: image must be a combination of the basis rows, and in
        // reduced form the coefficients sit at the pivot columns
        for (i, &p) in pivots.iter().enumerate() {
            action.set(i, j, image[p]);
        }
        #[cfg(debug_assertions)]
        {
            let mut check = vec![0u64; image.len()];
            for (i, row) in reduced.iter().enumerate() {
                let c = action.at(i, j);
                for (t, &x) in row.iter().enumerate() {
                    check[t] = f.add(check[t], f.mul(c, x));
                }
            }
            debug_assert_eq!(check, image, "subspace not invariant");
        }
    }

    let minpoly = minimal_polynomial(f, &action);
    let eigenvalues = split_roots(f, &minpoly);
    if eigenvalues.len() <= 1 {
        return vec![reduced];
    }
    let mut out = Vec::new();
    for lambda in eigenvalues {
        // null space of (action - lambda)
        let rows: Vec<Vec<u64>> = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| {
                        let v = action.at(i, j);
                        if i == j {
                            f.sub(v, lambda)
                        } else {
                            v
                        }
                    })
                    .collect()
            })
            .collect();
        let kernel = null_space(f, &rows);
        debug_assert!(!kernel.is_empty());
        let sub_basis: Vec<Vec<u64>> = kernel
            .into_iter()
            .map(|coeffs| {
                let mut v = vec![0u64; m.n_cols];
                for (b, &c) in coeffs.iter().enumerate() {
                    if c != 0 {
                        for (t, &x) in reduced[b].iter().enumerate() {
                            v[t] = f.add(v[t], f.mul(c, x));
                        }
                    }
                }
                v
            })
            .collect();
        out.push(sub_basis);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::character_table;
    use crate::guards::Guards;
    use crate::perm::Permutation;

    fn group(name: &str, degree: usize, gens: &[&[u64]]) -> PermGroup {
        let perms = gens
            .iter()
            .map(|row| Permutation::from_one_based(row, degree, 0).unwrap())
            .collect();
        PermGroup::new(name, degree, perms, Guards::default()).unwrap()
    }

    #[test]
    fn trivial_group_table() {
        let t = PermGroup::trivial(Guards::default());
        let table = character_table(&t).unwrap();
        assert_eq!(table.rows, vec![vec![Cyc::one()]]);
    }

    #[test]
    fn c2_table_is_forced() {
        let c2 = group("c2", 2, &[&[2, 1]]);
        let table = character_table(&c2).unwrap();
        assert_eq!(table.degrees, vec![1, 1]);
        let minus_one = Cyc::from_int(-1);
        // rows sorted by value encoding: [1,-1] and [1,1] in canonical order
        let has_sign = table
            .rows
            .iter()
            .any(|r| r[0] == Cyc::one() && r[1] == minus_one);
        assert!(has_sign);
    }

    #[test]
    fn s3_table_matches_known_values() {
        let s3 = group("s3", 3, &[&[2, 3, 1], &[2, 1, 3]]);
        let table = character_table(&s3).unwrap();
        let mut degrees = table.degrees.clone();
        degrees.sort_unstable();
        assert_eq!(degrees, vec![1, 1, 2]);
        // the degree-2 row restricted to the 3-cycle class is -1
        let cd = &table.class_data;
        let three_cycle_class = (0..3).find(|&k| cd.rep_orders[k] == 3).unwrap();
        let deg2 = table.degrees.iter().position(|&d| d == 2).unwrap();
        assert_eq!(table.rows[deg2][three_cycle_class], Cyc::from_int(-1));
    }

    #[test]
    fn q8_degrees_forced_by_class_count() {
        // regular action of the quaternion group on its 8 elements
        let q8 = group("q8", 8, &[&[2, 3, 4, 1, 8, 5, 6, 7], &[5, 6, 7, 8, 3, 4, 1, 2]]);
        assert_eq!(q8.order().unwrap(), 8);
        let table = character_table(&q8).unwrap();
        assert_eq!(table.class_count(), 5);
        // independent oracle: 5 classes and degree squares summing to 8
        // leave exactly one multiset
        let forced = degree_multisets(8, 5);
        assert_eq!(forced, vec![vec![1, 1, 1, 1, 2]]);
        assert_eq!(table.degrees, vec![1, 1, 1, 1, 2]);
    }

    /// All non-decreasing multisets of `r` positive integers whose squares
    /// sum to `n`.
    fn degree_multisets(n: u64, r: usize) -> Vec<Vec<u64>> {
        fn go(n: u64, r: usize, min: u64, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
            if r == 0 {
                if n == 0 {
                    out.push(acc.clone());
                }
                return;
            }
            let mut d = min;
            while d * d <= n {
                acc.push(d);
                go(n - d * d, r - 1, d, acc, out);
                acc.pop();
                d += 1;
            }
        }
        let mut out = Vec::new();
        go(n, r, 1, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn a5_table_has_golden_ratio_values() {
        let a5 = group("a5", 5, &[&[2, 3, 4, 5, 1], &[2, 3, 1, 4, 5]]);
        assert_eq!(a5.order().unwrap(), 60);
        let table = character_table(&a5).unwrap();
        let mut degrees = table.degrees.clone();
        degrees.sort_unstable();
        assert_eq!(degrees, vec![1, 3, 3, 4, 5]);
        // the two degree-3 rows carry (1 +- sqrt5)/2 on the 5-cycle classes
        let irrational = table
            .rows
            .iter()
            .flat_map(|r| r.iter())
            .any(|v| v.conductor() == 5);
        assert!(irrational);
    }
}
