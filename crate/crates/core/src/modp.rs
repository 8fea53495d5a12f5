//! Arithmetic and small linear algebra over a prime field `F_q`, as needed
//! by the eigenspace-splitting stage of the character table algorithm:
//! modular scalars, dense matrices, minimal polynomials by Krylov closure,
//! and root extraction for polynomials that split into distinct linear
//! factors over `F_q`.

/// The prime field `F_q` for a fixed odd prime (or 2 for trivial cases).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fq {
    pub q: u64,
}

impl Fq {
    pub fn new(q: u64) -> Fq {
        Fq { q }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.q {
            s - self.q
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.q - b
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.q as u128) as u64
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.q;
        base %= self.q;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a % self.q != 0, "inverse of zero");
        self.pow(a, self.q - 2)
    }

    /// An element of exact multiplicative order `n`, with `n | q - 1`:
    /// a power of the smallest primitive root.
    pub fn element_of_order(&self, n: u64) -> u64 {
        assert_eq!((self.q - 1) % n, 0);
        let g = self.primitive_root();
        self.pow(g, (self.q - 1) / n)
    }

    pub fn primitive_root(&self) -> u64 {
        if self.q == 2 {
            return 1;
        }
        let factors = crate::arith::prime_divisors(self.q - 1);
        'cand: for g in 2..self.q {
            for &p in &factors {
                if self.pow(g, (self.q - 1) / p) == 1 {
                    continue 'cand;
                }
            }
            return g;
        }
        unreachable!("every prime field has a primitive root")
    }
}

/// Dense polynomial over `F_q`, low degree first, no trailing zeros.
pub type Poly = Vec<u64>;

pub fn poly_trim(p: &mut Poly) {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
}

pub fn poly_deg(p: &Poly) -> usize {
    p.len() - 1
}

pub fn poly_is_zero(p: &Poly) -> bool {
    p.len() == 1 && p[0] == 0
}

pub fn poly_mul(f: &Fq, a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ca) in a.iter().enumerate() {
        if ca == 0 {
            continue;
        }
        for (j, &cb) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(ca, cb));
        }
    }
    poly_trim(&mut out);
    out
}

/// Remainder of `a` modulo `b` (b nonzero).
pub fn poly_rem(f: &Fq, a: &Poly, b: &Poly) -> Poly {
    let mut rem = a.clone();
    poly_trim(&mut rem);
    let db = poly_deg(b);
    let lead_inv = f.inv(b[db]);
    while !poly_is_zero(&rem) && poly_deg(&rem) >= db {
        let dr = poly_deg(&rem);
        let c = f.mul(rem[dr], lead_inv);
        for j in 0..=db {
            let t = f.mul(c, b[j]);
            rem[dr - db + j] = f.sub(rem[dr - db + j], t);
        }
        poly_trim(&mut rem);
    }
    rem
}

pub fn poly_divexact(f: &Fq, a: &Poly, b: &Poly) -> Poly {
    let mut rem = a.clone();
    poly_trim(&mut rem);
    let db = poly_deg(b);
    let lead_inv = f.inv(b[db]);
    let mut quot = vec![0u64; rem.len().saturating_sub(db)];
    while !poly_is_zero(&rem) && poly_deg(&rem) >= db {
        let dr = poly_deg(&rem);
        let c = f.mul(rem[dr], lead_inv);
        quot[dr - db] = c;
        for j in 0..=db {
            let t = f.mul(c, b[j]);
            rem[dr - db + j] = f.sub(rem[dr - db + j], t);
        }
        poly_trim(&mut rem);
    }
    debug_assert!(poly_is_zero(&rem), "non-exact polynomial division");
    poly_trim(&mut quot);
    quot
}

pub fn poly_gcd(f: &Fq, a: &Poly, b: &Poly) -> Poly {
    let mut a = a.clone();
    let mut b = b.clone();
    poly_trim(&mut a);
    poly_trim(&mut b);
    while !poly_is_zero(&b) {
        let r = poly_rem(f, &a, &b);
        a = b;
        b = r;
    }
    // monic normalization
    let lead = *a.last().unwrap();
    if lead != 0 && lead != 1 {
        let inv = f.inv(lead);
        for c in &mut a {
            *c = f.mul(*c, inv);
        }
    }
    a
}

/// `base^exp mod m` in the polynomial ring.
pub fn poly_powmod(f: &Fq, base: &Poly, mut exp: u64, m: &Poly) -> Poly {
    let mut acc = vec![1u64];
    let mut base = poly_rem(f, base, m);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = poly_rem(f, &poly_mul(f, &acc, &base), m);
        }
        base = poly_rem(f, &poly_mul(f, &base, &base), m);
        exp >>= 1;
    }
    acc
}

/// All roots of a polynomial that is known to split into distinct linear
/// factors over `F_q` (after stripping multiplicities via the gcd with
/// `x^q - x` is unnecessary here because our minimal polynomials are
/// square-free by construction). Deterministic: the splitting sweep tries
/// shifts a = 0, 1, 2, .. in order, and the result is sorted.
pub fn split_roots(f: &Fq, p: &Poly) -> Vec<u64> {
    let mut roots = Vec::new();
    let mut work = vec![p.clone()];
    while let Some(mut g) = work.pop() {
        poly_trim(&mut g);
        if poly_deg(&g) == 0 {
            continue;
        }
        if poly_deg(&g) == 1 {
            // g = c1 x + c0, root = -c0 / c1
            roots.push(f.mul(f.neg(g[0]), f.inv(g[1])));
            continue;
        }
        // strip a root at zero first
        if g[0] == 0 {
            roots.push(0);
            g.remove(0);
            work.push(g);
            continue;
        }
        let half = (f.q - 1) / 2;
        let mut split = None;
        for a in 0..f.q {
            // gcd(g, (x+a)^((q-1)/2) - 1) separates roots by the quadratic
            // character of (root + a)
            let shifted = vec![a, 1];
            let mut s = poly_powmod(f, &shifted, half, &g);
            s[0] = f.sub(s[0], 1);
            poly_trim(&mut s);
            if poly_is_zero(&s) {
                continue;
            }
            let d = poly_gcd(f, &g, &s);
            if poly_deg(&d) > 0 && poly_deg(&d) < poly_deg(&g) {
                let rest = poly_divexact(f, &g, &d);
                split = Some((d, rest));
                break;
            }
        }
        let (d, rest) = split.expect("a separating shift exists for distinct roots");
        work.push(d);
        work.push(rest);
    }
    roots.sort_unstable();
    roots
}

/// Dense row-major matrix over `F_q`.
#[derive(Clone)]
pub struct Mat {
    pub n_rows: usize,
    pub n_cols: usize,
    pub data: Vec<u64>,
}

impl Mat {
    pub fn zero(n_rows: usize, n_cols: usize) -> Mat {
        Mat {
            n_rows,
            n_cols,
            data: vec![0; n_rows * n_cols],
        }
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.n_cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.n_cols + c] = v;
    }

    pub fn mul_vec(&self, f: &Fq, v: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.n_rows];
        for r in 0..self.n_rows {
            let mut acc: u128 = 0;
            let row = &self.data[r * self.n_cols..(r + 1) * self.n_cols];
            for (c, &m) in row.iter().enumerate() {
                acc += m as u128 * v[c] as u128;
            }
            out[r] = (acc % f.q as u128) as u64;
        }
        out
    }
}

/// Reduced row echelon form; returns pivot column indices.
pub fn rref(f: &Fq, mat: &mut Vec<Vec<u64>>) -> Vec<usize> {
    let n_rows = mat.len();
    if n_rows == 0 {
        return Vec::new();
    }
    let n_cols = mat[0].len();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n_cols {
        let Some(r) = (row..n_rows).find(|&r| mat[r][col] != 0) else {
            continue;
        };
        mat.swap(row, r);
        let inv = f.inv(mat[row][col]);
        for c in col..n_cols {
            mat[row][c] = f.mul(mat[row][c], inv);
        }
        for r2 in 0..n_rows {
            if r2 != row && mat[r2][col] != 0 {
                let factor = mat[r2][col];
                for c in col..n_cols {
                    let t = f.mul(factor, mat[row][c]);
                    mat[r2][c] = f.sub(mat[r2][c], t);
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == n_rows {
            break;
        }
    }
    pivots
}

/// Basis of the null space of `mat` (n_rows x n_cols), as column vectors.
pub fn null_space(f: &Fq, mat: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let mut work: Vec<Vec<u64>> = mat.to_vec();
    let n_cols = if work.is_empty() { 0 } else { work[0].len() };
    let pivots = rref(f, &mut work);
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..n_cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; n_cols];
        v[free] = 1;
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = f.neg(work[i][free]);
        }
        basis.push(v);
    }
    basis
}

/// Minimal polynomial of a diagonalizable square matrix, monic, via Krylov
/// closure over the standard basis vectors. Diagonalizability makes the
/// result square-free, so its roots are exactly the eigenvalues.
pub fn minimal_polynomial(f: &Fq, mat: &Mat) -> Poly {
    let n = mat.n_rows;
    let mut minpoly: Poly = vec![1u64];
    for start in 0..n {
        if poly_deg(&minpoly) == n {
            break;
        }
        let mut v = vec![0u64; n];
        v[start] = 1;
        // image = minpoly(A) v; if zero this vector is already annihilated.
        // Otherwise the annihilator of the image has roots disjoint from the
        // roots of minpoly (A diagonalizable), so the product is the lcm.
        let mut seed = v.clone();
        let mut image = vec![0u64; n];
        for (k, &c) in minpoly.iter().enumerate() {
            if c != 0 {
                for i in 0..n {
                    image[i] = f.add(image[i], f.mul(c, seed[i]));
                }
            }
            if k + 1 < minpoly.len() {
                seed = mat.mul_vec(f, &seed);
            }
        }
        if image.iter().all(|&x| x == 0) {
            continue;
        }
        let ann = krylov_annihilator(f, mat, &image);
        minpoly = poly_mul(f, &minpoly, &ann);
    }
    minpoly
}

fn krylov_annihilator(f: &Fq, mat: &Mat, v0: &[u64]) -> Poly {
    let n = mat.n_rows;
    // vectors: v0, A v0, A^2 v0, ..; stop at the first linear dependence
    let mut vectors: Vec<Vec<u64>> = Vec::new();
    let mut v = v0.to_vec();
    loop {
        vectors.push(v.clone());
        let next = mat.mul_vec(f, &v);
        let k = vectors.len();
        let mut aug: Vec<Vec<u64>> = (0..n)
            .map(|r| {
                let mut row: Vec<u64> = vectors.iter().map(|vec| vec[r]).collect();
                row.push(next[r]);
                row
            })
            .collect();
        let pivots = rref(f, &mut aug);
        if pivots.len() == k {
            // previous vectors independent, next dependent:
            // next = sum c_i vectors[i], annihilator x^k - sum c_i x^i
            let mut coeffs = vec![0u64; k + 1];
            for (i, &p) in pivots.iter().enumerate() {
                debug_assert_eq!(p, i);
                coeffs[i] = f.neg(aug[i][k]);
            }
            coeffs[k] = 1;
            return coeffs;
        }
        assert!(vectors.len() <= n, "krylov sequence exceeded dimension");
        v = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_ops() {
        let f = Fq::new(73);
        assert_eq!(f.mul(f.inv(17), 17), 1);
        assert_eq!(f.pow(5, 72), 1);
        let z = f.element_of_order(24);
        assert_eq!(f.pow(z, 24), 1);
        for d in [2, 3, 4, 6, 8, 12] {
            assert_ne!(f.pow(z, 24 / d), 1, "order divides 24/{d}");
        }
    }

    #[test]
    fn split_roots_finds_all_roots() {
        let f = Fq::new(61);
        // (x - 3)(x - 10)(x - 59) x
        let mut p = vec![1u64];
        for r in [3u64, 10, 59, 0] {
            p = poly_mul(&f, &p, &vec![f.neg(r), 1]);
        }
        assert_eq!(split_roots(&f, &p), vec![0, 3, 10, 59]);
    }

    #[test]
    fn minimal_polynomial_of_diagonal_matrix() {
        let f = Fq::new(13);
        let mut m = Mat::zero(4, 4);
        for (i, d) in [2u64, 2, 5, 7].iter().enumerate() {
            m.set(i, i, *d);
        }
        let p = minimal_polynomial(&f, &m);
        // (x-2)(x-5)(x-7), all distinct roots
        assert_eq!(poly_deg(&p), 3);
        assert_eq!(split_roots(&f, &p), vec![2, 5, 7]);
    }

    #[test]
    fn null_space_dimensions() {
        let f = Fq::new(7);
        // rank 2: third row independent of the first two
        let mat = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 0, 1]];
        let ns = null_space(&f, &mat);
        assert_eq!(ns.len(), 1);
        let m = Mat {
            n_rows: 3,
            n_cols: 3,
            data: mat.concat(),
        };
        for v in ns {
            assert!(m.mul_vec(&f, &v).iter().all(|&x| x == 0));
        }
    }
}
