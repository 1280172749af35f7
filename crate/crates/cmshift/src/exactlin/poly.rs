//! Dense univariate polynomials over the working field, plus the
//! factor-splitting routines the idempotent machinery needs.

use rand::Rng;

use crate::exactlin::mat::Mat;
use crate::exactlin::scalar::{FieldSpec, Scalar};

/// Coefficients in ascending degree, no trailing zeros (zero poly = empty).
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    pub field: FieldSpec,
    pub coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(field: FieldSpec, mut coeffs: Vec<Scalar>) -> Poly {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: FieldSpec) -> Poly {
        Poly { field, coeffs: vec![] }
    }

    pub fn one(field: FieldSpec) -> Poly {
        Poly { field, coeffs: vec![field.one()] }
    }

    pub fn x(field: FieldSpec) -> Poly {
        Poly { field, coeffs: vec![field.zero(), field.one()] }
    }

    pub fn constant(field: FieldSpec, c: Scalar) -> Poly {
        Poly::new(field, vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0 here, guard with is_zero.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lead(&self) -> &Scalar {
        self.coeffs.last().expect("zero polynomial has no leading coefficient")
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lead().inv();
        Poly::new(self.field, self.coeffs.iter().map(|c| c.mul(&inv)).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![self.field.zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] = out[i].add(c);
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] = out[i].add(c);
        }
        Poly::new(self.field, out)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&self.field.from_i64(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        Poly::new(self.field, self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].fma(a, b);
            }
        }
        Poly::new(self.field, out)
    }

    pub fn divrem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let mut rem = self.coeffs.clone();
        let dd = divisor.degree();
        if self.is_zero() || self.degree() < dd {
            return (Poly::zero(self.field), self.clone());
        }
        let mut quot = vec![self.field.zero(); self.degree() - dd + 1];
        let lead_inv = divisor.lead().inv();
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].mul(&lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[k] = c.clone();
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = rem[k + i].fma(&c.neg(), dc);
            }
        }
        (Poly::new(self.field, quot), Poly::new(self.field, rem))
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.divrem(divisor).1
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: returns (g, u, v) with u*self + v*other = g, g monic.
    pub fn extended_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let field = self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut u0, mut u1) = (Poly::one(field), Poly::zero(field));
        let (mut v0, mut v1) = (Poly::zero(field), Poly::one(field));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let nu = u0.sub(&q.mul(&u1));
            let nv = v0.sub(&q.mul(&v1));
            r0 = r1;
            r1 = r;
            u0 = u1;
            u1 = nu;
            v0 = v1;
            v1 = nv;
        }
        if r0.is_zero() {
            return (r0, u0, v0);
        }
        let c = r0.lead().inv();
        (r0.scale(&c), u0.scale(&c), v0.scale(&c))
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero(self.field);
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&self.field.from_i64(i as i64)))
            .collect();
        Poly::new(self.field, out)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// self^e mod m by square-and-multiply.
    pub fn powmod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut acc = Poly::one(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// Evaluate at a square matrix.
    pub fn eval_mat(&self, m: &Mat) -> Mat {
        let n = m.rows;
        let mut acc = Mat::zeros(n, n, m.field);
        for c in self.coeffs.iter().rev() {
            acc = acc.matmul(m);
            for i in 0..n {
                let v = acc.at(i, i).add(c);
                acc.set(i, i, v);
            }
        }
        acc
    }
}

/// Characteristic polynomial via Hessenberg reduction; works over any field.
pub fn char_poly(m: &Mat) -> Poly {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    let field = m.field;
    if n == 0 {
        return Poly::one(field);
    }
    // similarity-reduce to upper Hessenberg with exact pivoting
    let mut h = m.clone();
    for c in 0..n.saturating_sub(2) {
        let Some(pr) = (c + 1..n).find(|&i| !h.at(i, c).is_zero()) else {
            continue;
        };
        if pr != c + 1 {
            // swap rows and matching columns
            for j in 0..n {
                let a = h.at(pr, j).clone();
                let b = h.at(c + 1, j).clone();
                h.set(pr, j, b);
                h.set(c + 1, j, a);
            }
            for i in 0..n {
                let a = h.at(i, pr).clone();
                let b = h.at(i, c + 1).clone();
                h.set(i, pr, b);
                h.set(i, c + 1, a);
            }
        }
        let pivot_inv = h.at(c + 1, c).inv();
        for i in c + 2..n {
            if h.at(i, c).is_zero() {
                continue;
            }
            let f = h.at(i, c).mul(&pivot_inv);
            let nf = f.neg();
            for j in 0..n {
                let v = h.at(i, j).fma(&nf, h.at(c + 1, j));
                h.set(i, j, v);
            }
            for r in 0..n {
                let v = h.at(r, c + 1).fma(&f, h.at(r, i));
                h.set(r, c + 1, v);
            }
        }
    }
    // char polys of leading principal minors of a Hessenberg matrix
    let mut p: Vec<Poly> = vec![Poly::one(field)];
    let x = Poly::x(field);
    for k in 0..n {
        // p_{k+1} = (x - h[k][k]) p_k - sum_{i<k} h[i][k] (prod_{j=i+1..=k-1} h[j][j-1]... ) p_i
        let mut next = x
            .sub(&Poly::constant(field, h.at(k, k).clone()))
            .mul(&p[k]);
        let mut subprod = field.one();
        for i in (0..k).rev() {
            subprod = subprod.mul(h.at(i + 1, i));
            if !h.at(i, k).is_zero() {
                let term = p[i].scale(&h.at(i, k).mul(&subprod));
                next = next.sub(&term);
            }
        }
        p.push(next);
    }
    p.pop().unwrap()
}

/// Minimal polynomial of a square matrix: lcm of the Krylov dependencies of
/// the standard basis vectors.
pub fn min_poly(m: &Mat) -> Poly {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    let field = m.field;
    if n == 0 {
        return Poly::one(field);
    }
    let mut acc = Poly::one(field);
    for s in 0..n {
        // local minimal polynomial of e_s
        let mut v = Mat::zeros(1, n, field);
        v.set(0, s, field.one());
        let mut krylov: Vec<Vec<Scalar>> = vec![v.row_vec(0)];
        let local = loop {
            v = v.matmul(m);
            let stacked = Mat::from_rows(krylov.clone(), n, field);
            let solver = crate::exactlin::mat::CoordSolver::new(stacked.row_basis());
            if solver.dim() < krylov.len() {
                unreachable!("krylov rows stay independent until the dependency");
            }
            if let Some(coords) = solver.coords(&v.row_vec(0)) {
                // v = sum coords_i * basis_i, basis may differ from krylov rows;
                // redo against the raw krylov rows for the actual recurrence
                let raw = Mat::from_rows(krylov.clone(), n, field);
                let sol = raw.solve_left(&v).unwrap().unwrap();
                let mut coeffs: Vec<Scalar> =
                    (0..krylov.len()).map(|i| sol.at(0, i).neg()).collect();
                let _ = coords;
                coeffs.push(field.one());
                break Poly::new(field, coeffs);
            }
            krylov.push(v.row_vec(0));
        };
        // acc = lcm(acc, local)
        let g = acc.gcd(&local);
        acc = acc.mul(&local.divrem(&g).0).monic();
        if acc.degree() == n {
            break;
        }
    }
    acc
}

/// A nontrivial coprime factorization m = f * g (both nonconstant), if one
/// can be found.  Over F_p this uses distinct/equal-degree splitting; over Q
/// it is limited to squarefree splits and rational roots, which covers the
/// split algebras this toolkit targets.
pub fn coprime_split(m: &Poly, rng: &mut impl Rng) -> Option<(Poly, Poly)> {
    let field = m.field;
    let m = m.monic();
    if m.degree() < 2 {
        return None;
    }
    // repeated factors: m and its squarefree part separate
    let d = m.gcd(&m.derivative());
    if !d.is_zero() && d.degree() > 0 && d.degree() < m.degree() {
        let w = m.divrem(&d).0; // squarefree part (char 0) / partial (char p)
        if let Some((u, v)) = split_squarefree(&w, rng) {
            return Some(primary_parts(&m, &u, &v));
        }
        // w itself may be irreducible; try separating d from m/d when coprime
        let q = m.divrem(&d).0;
        if q.gcd(&d).degree() == 0 {
            return Some((q, d));
        }
        return None;
    }
    let _ = field;
    split_squarefree(&m, rng).map(|(u, v)| primary_parts(&m, &u, &v))
}

/// Given coprime u*v = squarefree part of m, lift to the u-primary and
/// v-primary parts of m itself.
fn primary_parts(m: &Poly, u: &Poly, v: &Poly) -> (Poly, Poly) {
    let mut f = u.clone();
    loop {
        let g = m.divrem(&f).0.gcd(&f);
        if g.degree() == 0 {
            break;
        }
        f = f.mul(&g);
    }
    let g = m.divrem(&f).0.monic();
    let _ = v;
    (f.monic(), g)
}

/// Split a squarefree monic polynomial into two nonconstant coprime factors.
fn split_squarefree(w: &Poly, rng: &mut impl Rng) -> Option<(Poly, Poly)> {
    let field = w.field;
    if w.degree() < 2 {
        return None;
    }
    match field {
        FieldSpec::Prime(p) => split_squarefree_fp(w, p, rng),
        FieldSpec::Rationals => split_squarefree_q(w),
    }
}

fn split_squarefree_fp(w: &Poly, p: u64, rng: &mut impl Rng) -> Option<(Poly, Poly)> {
    let field = w.field;
    let x = Poly::x(field);
    // distinct-degree sieve
    let mut xq = x.clone();
    let rest = w.monic();
    for deg in 1..=w.degree() {
        if rest.degree() < 2 * deg {
            break;
        }
        xq = xq.powmod(p, &rest);
        let g = rest.gcd(&xq.sub(&x).rem(&rest).monic());
        if g.degree() > 0 && g.degree() < rest.degree() {
            return Some((g.clone(), rest.divrem(&g).0.monic()));
        }
        if g.degree() == rest.degree() && g.degree() > deg {
            // all factors have degree `deg`: equal-degree splitting
            return equal_degree_split(&rest, p, deg, rng);
        }
    }
    None
}

fn equal_degree_split(w: &Poly, p: u64, deg: usize, rng: &mut impl Rng) -> Option<(Poly, Poly)> {
    let field = w.field;
    if p == 2 {
        // trace-map splitting for characteristic 2
        for _ in 0..64 {
            let a = random_poly(field, w.degree() - 1, rng);
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..(deg as u64) {
                t = t.powmod(2, w);
                acc = acc.add(&t).rem(w);
            }
            let g = w.gcd(&acc);
            if g.degree() > 0 && g.degree() < w.degree() {
                return Some((g.clone(), w.divrem(&g).0.monic()));
            }
        }
        return None;
    }
    // Cantor-Zassenhaus
    let e = {
        // (p^deg - 1) / 2, exact in u128 for our parameter range
        let mut q: u128 = 1;
        for _ in 0..deg {
            q *= p as u128;
        }
        (q - 1) / 2
    };
    for _ in 0..64 {
        let a = random_poly(field, w.degree() - 1, rng);
        if a.degree() == 0 || a.is_zero() {
            continue;
        }
        let mut b = Poly::one(field);
        // powmod with u128 exponent
        let mut base = a.rem(w);
        let mut ee = e;
        while ee > 0 {
            if ee & 1 == 1 {
                b = b.mul(&base).rem(w);
            }
            base = base.mul(&base).rem(w);
            ee >>= 1;
        }
        let g = w.gcd(&b.sub(&Poly::one(field)));
        if g.degree() > 0 && g.degree() < w.degree() {
            return Some((g.clone(), w.divrem(&g).0.monic()));
        }
    }
    None
}

fn random_poly(field: FieldSpec, max_deg: usize, rng: &mut impl Rng) -> Poly {
    let coeffs = (0..=max_deg)
        .map(|_| field.from_i64(rng.gen_range(0..101) as i64))
        .collect();
    Poly::new(field, coeffs)
}

/// Over Q: pull out a rational root if one exists with small numerator and
/// denominator.  Squarefree input.
fn split_squarefree_q(w: &Poly) -> Option<(Poly, Poly)> {
    let field = w.field;
    const RANGE: i64 = 1024;
    for num in -RANGE..=RANGE {
        for den in 1..=4i64 {
            let c = field.from_i64(num).div(&field.from_i64(den));
            if w.eval(&c).is_zero() {
                let lin = Poly::new(field, vec![c.neg(), field.one()]);
                let q = w.divrem(&lin).0.monic();
                if q.degree() > 0 {
                    return Some((lin, q));
                }
            }
        }
    }
    None
}
