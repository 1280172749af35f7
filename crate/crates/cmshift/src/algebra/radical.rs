//! Jacobson radical of a structure-constant algebra.
//!
//! Over Q the radical is the kernel of the trace form of the regular
//! representation.  In characteristic p the trace form alone is not enough;
//! we use the iterated chain of characteristic-polynomial coefficient
//! functionals (Cohen–Ivanyos–Wales), which over the prime field are
//! honest linear functionals on each term of the chain.

use crate::exactlin::poly::char_poly;
use crate::exactlin::{FieldSpec, Mat, Scalar};

use super::MultTable;

#[derive(Debug, Clone)]
pub struct RadicalData {
    /// Canonical (echelonized) basis of J, one row per basis vector.
    pub basis: Mat,
    /// Least N with J^N = 0 (1 for semisimple algebras).
    pub loewy_length: usize,
}

pub fn radical_series(t: &MultTable) -> RadicalData {
    let basis = match t.field {
        FieldSpec::Rationals => radical_char_zero(t),
        FieldSpec::Prime(p) => radical_char_p(t, p),
    };
    let loewy_length = loewy_length(t, &basis);
    RadicalData { basis, loewy_length }
}

fn lmul_mats(t: &MultTable) -> Vec<Mat> {
    (0..t.dim)
        .map(|i| {
            let mut e = vec![t.field.zero(); t.dim];
            e[i] = t.field.one();
            t.lmul_of(&e)
        })
        .collect()
}

fn radical_char_zero(t: &MultTable) -> Mat {
    let lm = lmul_mats(t);
    // gram[i][j] = Tr(L_i L_j)
    let gram = Mat::from_fn(t.dim, t.dim, t.field, |i, j| {
        let mut s = t.field.zero();
        for r in 0..t.dim {
            for c in 0..t.dim {
                s = s.fma(lm[i].at(r, c), lm[j].at(c, r));
            }
        }
        s
    });
    gram.left_kernel().row_basis()
}

fn radical_char_p(t: &MultTable, p: u64) -> Mat {
    let n = t.dim;
    // current term of the chain, rows = basis; step at q = 1, p, p^2, ... <= n
    let mut current = Mat::identity(n, t.field);
    let mut q: u64 = 1;
    while q <= n as u64 && current.rows > 0 {
        current = chain_step(t, &current, q);
        q = q.saturating_mul(p);
    }
    current.row_basis()
}

/// One chain step: {a in span(rows) : coeff_{q}(charpoly(L_{ab})) = 0 for all
/// b in span(rows)}.  For q = 1 the functional is the trace, computed via the
/// Gram matrix; for larger q we evaluate characteristic polynomials.
fn chain_step(t: &MultTable, rows: &Mat, q: u64) -> Mat {
    let n = t.dim;
    let k = rows.rows;
    let mut system = Mat::zeros(k, k, t.field);
    if q == 1 {
        let lmuls: Vec<Mat> = (0..k).map(|s| t.lmul_of(&rows.row_vec(s))).collect();
        for s in 0..k {
            for b in 0..k {
                let mut tr = t.field.zero();
                for r in 0..n {
                    for c in 0..n {
                        tr = tr.fma(lmuls[s].at(r, c), lmuls[b].at(c, r));
                    }
                }
                system.set(s, b, tr);
            }
        }
    } else {
        for s in 0..k {
            for b in 0..k {
                let ab = t.mul_elems(rows.row(s), rows.row(b));
                let l = t.lmul_of(&ab);
                let cp = char_poly(&l);
                // charpoly = x^n + c_1 x^{n-1} + ... ; we want c_q
                let coeff: Scalar = if (q as usize) <= n {
                    cp.coeffs
                        .get(n - q as usize)
                        .cloned()
                        .unwrap_or_else(|| t.field.zero())
                } else {
                    t.field.zero()
                };
                system.set(s, b, coeff);
            }
        }
    }
    // kernel in coordinates of `rows`, mapped back to algebra coordinates
    let coeffs = system.left_kernel();
    coeffs.matmul(rows).row_basis()
}

fn loewy_length(t: &MultTable, radical: &Mat) -> usize {
    if radical.rows == 0 {
        return 1;
    }
    let mut power = radical.clone();
    let mut n = 1;
    loop {
        // power * J
        let mut rows = Vec::new();
        for r in 0..power.rows {
            let prod = radical.matmul(&t.rmul_of(&power.row_vec(r)));
            for s in 0..prod.rows {
                rows.push(prod.row_vec(s));
            }
        }
        let next = Mat::from_rows(rows, t.dim, t.field).row_basis();
        n += 1;
        if next.rows == 0 {
            return n;
        }
        assert!(next.rows < power.rows, "radical is not nilpotent");
        power = next;
    }
}
