//! Exact arithmetic in cyclotomic fields.
//!
//! A value is a vector of rationals over the power basis
//! `1, z, .., z^(phi(e)-1)` of `Q(zeta_e)`, reduced modulo the e-th
//! cyclotomic polynomial. Every value is stored at its true conductor:
//! two values are equal exactly when their (conductor, coefficient)
//! encodings are identical, which makes equality, hashing and ordering
//! structural. Rationals live at conductor 1, and a stored conductor is
//! never congruent to 2 mod 4 (those fields coincide with their odd part).

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::arith::{divisors, euler_phi};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// An element of `Q(zeta_conductor)` in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cyc {
    conductor: u64,
    coeffs: Vec<Rat>,
}

struct Field {
    phi: usize,
    /// `x^k mod Phi_n` for `k < max(n, 2*phi - 1)`, each row of length phi.
    powers: Vec<Vec<Rat>>,
}

fn field_cache() -> &'static Mutex<HashMap<u64, Arc<Field>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Field>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn field(n: u64) -> Arc<Field> {
    let mut cache = field_cache().lock().unwrap();
    if let Some(f) = cache.get(&n) {
        return f.clone();
    }
    let f = Arc::new(Field::new(n));
    cache.insert(n, f.clone());
    f
}

/// Monic integer coefficients of the n-th cyclotomic polynomial, low degree
/// first: `x^n - 1` divided by all lower cyclotomic polynomials.
fn cyclotomic_polynomial(n: u64, memo: &mut HashMap<u64, Vec<BigInt>>) -> Vec<BigInt> {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    let mut poly: Vec<BigInt> = vec![BigInt::zero(); n as usize + 1];
    poly[0] = -BigInt::one();
    poly[n as usize] = BigInt::one();
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let div = cyclotomic_polynomial(d, memo);
        poly = exact_div(&poly, &div);
    }
    memo.insert(n, poly.clone());
    poly
}

/// Exact division of monic integer polynomials, low degree first.
fn exact_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = num.len() - 1;
    let dd = den.len() - 1;
    let mut rem: Vec<BigInt> = num.to_vec();
    let mut quot = vec![BigInt::zero(); dn - dd + 1];
    for k in (0..=dn - dd).rev() {
        let c = rem[k + dd].clone();
        quot[k] = c.clone();
        for j in 0..=dd {
            let t = &den[j] * &c;
            rem[k + j] -= t;
        }
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()), "non-exact division");
    quot
}

impl Field {
    fn new(n: u64) -> Field {
        assert!(n >= 1);
        let mut memo = HashMap::new();
        let cyclo = cyclotomic_polynomial(n, &mut memo);
        let phi = cyclo.len() - 1;
        debug_assert_eq!(phi as u64, euler_phi(n));
        let rows = std::cmp::max(n as usize, 2 * phi.max(1) - 1);
        let mut powers: Vec<Vec<Rat>> = Vec::with_capacity(rows);
        let mut row = vec![Rat::zero(); phi];
        if phi > 0 {
            row[0] = Rat::one();
        }
        let reduced_top: Vec<Rat> = cyclo[..phi]
            .iter()
            .map(|c| -Rat::from_integer(c.clone()))
            .collect();
        for _ in 0..rows {
            powers.push(row.clone());
            // multiply by x and fold the overflow through x^phi = reduced_top
            let carry = if phi > 0 { row[phi - 1].clone() } else { Rat::zero() };
            for j in (1..phi).rev() {
                row[j] = row[j - 1].clone();
            }
            if phi > 0 {
                row[0] = Rat::zero();
            }
            if !carry.is_zero() {
                for j in 0..phi {
                    row[j] += &carry * &reduced_top[j];
                }
            }
        }
        Field { phi, powers }
    }

    /// Reduce a coefficient vector indexed by exponent (any length up to the
    /// power table) into the power basis.
    fn reduce(&self, long: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.phi];
        for (k, c) in long.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < self.phi {
                out[k] += c;
            } else {
                for j in 0..self.phi {
                    let t = c * &self.powers[k][j];
                    out[j] += t;
                }
            }
        }
        out
    }
}

impl Cyc {
    pub fn zero() -> Cyc {
        Cyc {
            conductor: 1,
            coeffs: vec![Rat::zero()],
        }
    }

    pub fn one() -> Cyc {
        Cyc::from_int(1)
    }

    pub fn from_int(n: i64) -> Cyc {
        Cyc {
            conductor: 1,
            coeffs: vec![rat(n)],
        }
    }

    pub fn from_rat(r: Rat) -> Cyc {
        Cyc {
            conductor: 1,
            coeffs: vec![r],
        }
    }

    /// `zeta_n^k`, canonicalized.
    pub fn root_of_unity(n: u64, k: u64) -> Cyc {
        assert!(n >= 1);
        let k = (k % n) as usize;
        let f = field(n);
        let mut long = vec![Rat::zero(); k + 1];
        long[k] = Rat::one();
        Cyc::canonical(n, f.reduce(&long))
    }

    /// `sum_j m[j] * zeta_n^j`.
    pub fn from_multiplicities(n: u64, m: &[u64]) -> Cyc {
        assert!(m.len() as u64 <= n);
        let f = field(n);
        let long: Vec<Rat> = m
            .iter()
            .map(|&c| Rat::from_integer(BigInt::from(c)))
            .collect();
        Cyc::canonical(n, f.reduce(&long))
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.conductor == 1 && self.coeffs[0].is_zero()
    }

    pub fn as_rational(&self) -> Option<Rat> {
        if self.conductor == 1 {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        let r = self.as_rational()?;
        if r.is_integer() {
            Some(r.to_integer())
        } else {
            None
        }
    }

    pub fn as_u64(&self) -> Option<u64> {
        use num::ToPrimitive;
        let i = self.as_integer()?;
        if i.is_negative() {
            None
        } else {
            i.to_u64()
        }
    }

    pub fn add(&self, other: &Cyc) -> Cyc {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Cyc) -> Cyc {
        self.combine(other, true)
    }

    fn combine(&self, other: &Cyc, subtract: bool) -> Cyc {
        if self.conductor == other.conductor {
            let coeffs: Vec<Rat> = self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| if subtract { a - b } else { a + b })
                .collect();
            return Cyc::canonical(self.conductor, coeffs);
        }
        let l = num::integer::lcm(self.conductor, other.conductor);
        let mut long = self.lift_long(l);
        for (k, c) in other.lift_long(l).into_iter().enumerate() {
            if subtract {
                long[k] -= c;
            } else {
                long[k] += c;
            }
        }
        Cyc::canonical(l, field(l).reduce(&long))
    }

    pub fn neg(&self) -> Cyc {
        Cyc {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, s: &Rat) -> Cyc {
        if s.is_zero() {
            return Cyc::zero();
        }
        Cyc {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn mul(&self, other: &Cyc) -> Cyc {
        if let Some(r) = self.as_rational() {
            return other.scale(&r);
        }
        if let Some(r) = other.as_rational() {
            return self.scale(&r);
        }
        let l = num::integer::lcm(self.conductor, other.conductor);
        let a = self.lift_reduced(l);
        let b = other.lift_reduced(l);
        let phi = a.len();
        let mut long = vec![Rat::zero(); 2 * phi - 1];
        for (i, ca) in a.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (j, cb) in b.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let t = ca * cb;
                long[i + j] += t;
            }
        }
        Cyc::canonical(l, field(l).reduce(&long))
    }

    /// Galois action `zeta_e -> zeta_e^t` for t coprime to the conductor.
    pub fn galois(&self, t: u64) -> Cyc {
        let e = self.conductor;
        if e == 1 {
            return self.clone();
        }
        let t = t % e;
        assert_eq!(num::integer::gcd(t, e), 1, "galois exponent not coprime");
        let mut long = vec![Rat::zero(); e as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                long[((i as u64 * t) % e) as usize] += c;
            }
        }
        Cyc::canonical(e, field(e).reduce(&long))
    }

    /// Complex conjugation: `zeta -> zeta^-1`.
    pub fn conj(&self) -> Cyc {
        if self.conductor == 1 {
            self.clone()
        } else {
            self.galois(self.conductor - 1)
        }
    }

    /// Multiplicative order when this value is a root of unity, else None.
    /// Roots of unity inside `Q(zeta_e)` have order dividing `lcm(2, e)`.
    pub fn root_of_unity_order(&self) -> Option<u64> {
        let e = self.conductor;
        let bound = if e % 2 == 1 { 2 * e } else { e };
        for k in 0..bound {
            if *self == Cyc::root_of_unity(bound, k) {
                return Some(if k == 0 {
                    1
                } else {
                    bound / num::integer::gcd(bound, k)
                });
            }
        }
        None
    }

    /// Coefficient vector at a multiple `l` of the conductor, indexed by
    /// exponent of `zeta_l` but not reduced.
    fn lift_long(&self, l: u64) -> Vec<Rat> {
        debug_assert_eq!(l % self.conductor, 0);
        let step = (l / self.conductor) as usize;
        let mut long = vec![Rat::zero(); l as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                long[i * step] += c;
            }
        }
        long
    }

    fn lift_reduced(&self, l: u64) -> Vec<Rat> {
        if l == self.conductor {
            return self.coeffs.clone();
        }
        field(l).reduce(&self.lift_long(l))
    }

    /// Canonicalize a reduced coefficient vector at conductor `e`: descend
    /// to the smallest divisor of `e` whose cyclotomic field contains the
    /// value. The divisor scan never leaves a conductor congruent to
    /// 2 mod 4 because the odd part is scanned first.
    fn canonical(e: u64, coeffs: Vec<Rat>) -> Cyc {
        debug_assert_eq!(coeffs.len() as u64, euler_phi(e));
        if e == 1 {
            return Cyc { conductor: 1, coeffs };
        }
        if coeffs[1..].iter().all(|c| c.is_zero()) {
            return Cyc {
                conductor: 1,
                coeffs: vec![coeffs[0].clone()],
            };
        }
        for d in divisors(e) {
            if d == 1 || d == e {
                continue;
            }
            if let Some(sub) = rebase(e, &coeffs, d) {
                return Cyc {
                    conductor: d,
                    coeffs: sub,
                };
            }
        }
        Cyc { conductor: e, coeffs }
    }

    /// Canonical textual encoding, used for deterministic row ordering
    /// and in serialized tables.
    pub fn encode(&self) -> String {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        format!("c{}:[{}]", self.conductor, parts.join(","))
    }
}

/// Try to express a reduced value at conductor `e` over the power basis of
/// `zeta_e^(e/d)`, i.e. inside `Q(zeta_d)`. Returns the coefficients at `d`
/// when the value lies in the subfield.
fn rebase(e: u64, coeffs: &[Rat], d: u64) -> Option<Vec<Rat>> {
    let fe = field(e);
    let phi_d = euler_phi(d) as usize;
    let step = (e / d) as usize;
    // columns: power-basis coordinates of zeta_e^(step*j) for j < phi_d
    let cols: Vec<&Vec<Rat>> = (0..phi_d).map(|j| &fe.powers[step * j]).collect();
    // solve cols * b = coeffs by Gaussian elimination
    let rows = fe.phi;
    let mut mat: Vec<Vec<Rat>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Rat> = cols.iter().map(|c| c[r].clone()).collect();
            row.push(coeffs[r].clone());
            row
        })
        .collect();
    let mut pivot_row = 0;
    let mut pivots: Vec<usize> = Vec::new();
    for col in 0..phi_d {
        let Some(r) = (pivot_row..rows).find(|&r| !mat[r][col].is_zero()) else {
            continue;
        };
        mat.swap(pivot_row, r);
        let inv = mat[pivot_row][col].recip();
        for c in col..=phi_d {
            mat[pivot_row][c] = &mat[pivot_row][c] * &inv;
        }
        for r in 0..rows {
            if r != pivot_row && !mat[r][col].is_zero() {
                let factor = mat[r][col].clone();
                for c in col..=phi_d {
                    let t = &factor * &mat[pivot_row][c];
                    mat[r][c] -= t;
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    // consistency: all non-pivot rows must have zero rhs
    for r in pivot_row..rows {
        if !mat[r][phi_d].is_zero() {
            return None;
        }
    }
    let mut sol = vec![Rat::zero(); phi_d];
    for (i, &col) in pivots.iter().enumerate() {
        sol[col] = mat[i][phi_d].clone();
    }
    Some(sol)
}

impl std::fmt::Display for Cyc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{r}");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            if k == 0 {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                write!(f, "z{}", self.conductor)?;
                if k > 1 {
                    write!(f, "^{k}")?;
                }
            }
        }
        Ok(())
    }
}

impl std::fmt::Debug for Cyc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zeta(n: u64, k: u64) -> Cyc {
        Cyc::root_of_unity(n, k)
    }

    #[test]
    fn primitive_root_sums_vanish() {
        // sum of all n-th roots of unity is 0 for n > 1
        for n in 2..=12u64 {
            let mut s = Cyc::zero();
            for k in 0..n {
                s = s.add(&zeta(n, k));
            }
            assert!(s.is_zero(), "sum of {n}-th roots");
        }
    }

    #[test]
    fn conductor_is_minimal() {
        assert_eq!(zeta(6, 1).conductor(), 3); // Q(zeta_6) = Q(zeta_3)
        assert_eq!(zeta(4, 1).conductor(), 4);
        assert_eq!(zeta(4, 2).conductor(), 1); // -1
        assert_eq!(zeta(8, 1).conductor(), 8);
        assert_eq!(zeta(12, 3).conductor(), 4); // zeta_12^3 = i
        let sqrt5 = zeta(5, 1).add(&zeta(5, 4)); // 2cos(2pi/5) has conductor 5
        assert_eq!(sqrt5.conductor(), 5);
    }

    #[test]
    fn golden_ratio_arithmetic() {
        // (1+sqrt5)/2 = 1 + zeta5 + zeta5^4 over the power basis; its square
        // minus itself minus 1 is zero.
        let phi = Cyc::one().add(&zeta(5, 1)).add(&zeta(5, 4));
        let check = phi.mul(&phi).sub(&phi).sub(&Cyc::one());
        assert!(check.is_zero());
    }

    #[test]
    fn roots_of_unity_multiply_by_exponent() {
        for n in [4u64, 6, 8, 9, 12] {
            for a in 0..n {
                for b in 0..n {
                    assert_eq!(zeta(n, a).mul(&zeta(n, b)), zeta(n, (a + b) % n));
                }
            }
        }
    }

    #[test]
    fn conjugation_is_an_involution_and_multiplicative() {
        let vals = [
            zeta(8, 3),
            zeta(5, 2).add(&zeta(5, 3)),
            Cyc::from_rat(rat(7) / rat(3)),
            zeta(12, 1).sub(&Cyc::from_int(2)),
        ];
        for a in &vals {
            assert_eq!(a.conj().conj(), *a);
            for b in &vals {
                assert_eq!(a.mul(b).conj(), a.conj().mul(&b.conj()));
            }
        }
    }

    #[test]
    fn rationals_live_at_conductor_one() {
        let half = Cyc::from_rat(rat(1) / rat(2));
        assert_eq!(half.conductor(), 1);
        assert_eq!(half.add(&half), Cyc::one());
        // zeta3 + zeta3^2 = -1 collapses to a rational
        let s = zeta(3, 1).add(&zeta(3, 2));
        assert_eq!(s, Cyc::from_int(-1));
    }

    #[test]
    fn multiplicity_assembly_matches_direct_sum() {
        // 2 + 3*zeta8 + zeta8^5
        let v = Cyc::from_multiplicities(8, &[2, 3, 0, 0, 0, 1, 0, 0]);
        let direct = Cyc::from_int(2)
            .add(&zeta(8, 1).scale(&rat(3)))
            .add(&zeta(8, 5));
        assert_eq!(v, direct);
    }

    #[test]
    fn root_of_unity_order_detection() {
        assert_eq!(Cyc::one().root_of_unity_order(), Some(1));
        assert_eq!(Cyc::from_int(-1).root_of_unity_order(), Some(2));
        assert_eq!(zeta(8, 1).root_of_unity_order(), Some(8));
        assert_eq!(zeta(8, 2).root_of_unity_order(), Some(4));
        assert_eq!(zeta(6, 1).root_of_unity_order(), Some(6));
        assert_eq!(Cyc::from_int(2).root_of_unity_order(), None);
        assert_eq!(zeta(5, 1).add(&zeta(5, 4)).root_of_unity_order(), None);
    }

    #[test]
    fn galois_permutes_roots() {
        let z = zeta(7, 1);
        assert_eq!(z.galois(3), zeta(7, 3));
        assert_eq!(z.galois(3).galois(3), zeta(7, 2));
    }
}
