//! Hom spaces, exact factorizations and endomorphism algebras.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{BasedAlgebra, MultTable, Provenance};
use crate::error::Error;
use crate::exactlin::{CoordSolver, Mat, Scalar};

use super::{quotient, submodule, ModuleRep, MorphismRep};

/// Canonical basis of Hom(M, N).
///
/// A matrix F intertwines the whole algebra iff it intertwines the
/// idempotents and a set of corner generators of the radical.  The
/// idempotent constraints are absorbed into the weight-block shape of F, so
/// the linear system only ranges over matching-weight unknowns and corner
/// generators.
pub fn hom_basis(m: &ModuleRep, n: &ModuleRep) -> Result<Vec<MorphismRep>, Error> {
    if !Arc::ptr_eq(&m.alg, &n.alg) {
        return Err(Error::AlgebraMismatch);
    }
    let alg = &m.alg;
    let field = alg.field();
    // unknowns: entries (a, b) with weight(a) = weight(b), a-major order
    let mut unknowns: Vec<(usize, usize)> = Vec::new();
    for a in 0..m.dim {
        for b in 0..n.dim {
            if m.weights[a] == n.weights[b] {
                unknowns.push((a, b));
            }
        }
    }
    let pos: std::collections::HashMap<(usize, usize), usize> = unknowns
        .iter()
        .enumerate()
        .map(|(i, &u)| (u, i))
        .collect();
    let gens = alg.corner_generators();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for g in gens {
        let am = m.act_of(&g.elem);
        let an = n.act_of(&g.elem);
        // constraint (ρ_M(g) F − F ρ_N(g))[a][b] = 0 for a of weight src(g),
        // b of weight tgt(g)
        for a in 0..m.dim {
            if m.weights[a] != g.src {
                continue;
            }
            for b in 0..n.dim {
                if n.weights[b] != g.tgt {
                    continue;
                }
                let mut row = vec![field.zero(); unknowns.len()];
                for ap in 0..m.dim {
                    if m.weights[ap] == g.tgt && !am.at(a, ap).is_zero() {
                        if let Some(&u) = pos.get(&(ap, b)) {
                            row[u] = row[u].add(am.at(a, ap));
                        }
                    }
                }
                for bp in 0..n.dim {
                    if n.weights[bp] == g.src && !an.at(bp, b).is_zero() {
                        if let Some(&u) = pos.get(&(a, bp)) {
                            row[u] = row[u].sub(an.at(bp, b));
                        }
                    }
                }
                if row.iter().any(|s| !s.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let system = Mat::from_rows(rows, unknowns.len(), field);
    let kernel = system.right_kernel_rows();
    let mut out = Vec::with_capacity(kernel.rows);
    for r in 0..kernel.rows {
        let mut f = Mat::zeros(m.dim, n.dim, field);
        for (u, &(a, b)) in unknowns.iter().enumerate() {
            f.set(a, b, kernel.at(r, u).clone());
        }
        out.push(MorphismRep::new(m.clone(), n.clone(), f)?);
    }
    Ok(out)
}

/// Exact factorization 0 → ker → M → N → coker → 0 of a morphism.
pub struct Factorization {
    pub kernel: ModuleRep,
    pub kernel_mono: MorphismRep,
    pub image: ModuleRep,
    /// M ↠ image and image ↪ N, composing to f
    pub image_epi: MorphismRep,
    pub image_mono: MorphismRep,
    pub cokernel: ModuleRep,
    pub cokernel_epi: MorphismRep,
}

pub fn morphism_factor(f: &MorphismRep) -> Result<Factorization, Error> {
    let m = &f.source;
    let n = &f.target;
    let ker_rows = f.matrix.left_kernel();
    let (kernel, kernel_mono) = submodule(m, &ker_rows)?;
    let im_rows = f.matrix.row_basis();
    let (image, image_mono) = submodule(n, &im_rows)?;
    // express f through the image: epi · mono = f
    let epi_matrix = image_mono
        .matrix
        .solve_left(&f.matrix)?
        .expect("image rows span the image of f");
    let image_epi = MorphismRep::new(m.clone(), image.clone(), epi_matrix)?;
    let (cokernel, cokernel_epi) = quotient(n, &im_rows)?;
    Ok(Factorization {
        kernel,
        kernel_mono,
        image,
        image_epi,
        image_mono,
        cokernel,
        cokernel_epi,
    })
}

/// Multiplication table of End(M) over a Hom basis.  The product f·g is the
/// function composition f∘g (g applied first), matrix G·F on row vectors;
/// with this convention Hom(M, X) is a right End(M)-module via φ·f = φ∘f.
pub(crate) fn end_table(m: &ModuleRep) -> Result<(MultTable, Vec<MorphismRep>), Error> {
    let homs = hom_basis(m, m)?;
    let field = m.alg.field();
    if homs.is_empty() {
        return Err(Error::BadAlgebra(
            "endomorphism algebra of the zero module has no unit".into(),
        ));
    }
    let k = homs.len();
    let flat: Vec<Vec<Scalar>> = homs.iter().map(|h| h.matrix.flatten_row()).collect();
    let solver = CoordSolver::new(Mat::from_rows(flat, m.dim * m.dim, field));
    let coords_of = |mat: &Mat| -> Result<Vec<Scalar>, Error> {
        solver
            .coords(&mat.flatten_row())
            .ok_or_else(|| Error::BadAlgebra("composite escapes the Hom space".into()))
    };
    let mut rmul = Vec::with_capacity(k);
    for j in 0..k {
        let mut rows = Vec::with_capacity(k);
        for hi in &homs {
            rows.push(coords_of(&homs[j].matrix.matmul(&hi.matrix))?);
        }
        rmul.push(Mat::from_rows(rows, k, field));
    }
    let unit = coords_of(&Mat::identity(m.dim, field))?;
    Ok((MultTable { field, dim: k, rmul, unit }, homs))
}

/// The endomorphism algebra of M as a BasedAlgebra, together with the Hom
/// basis realizing its elements; multiplication is composition (f then g).
pub fn end_algebra(
    m: &ModuleRep,
    seed: u64,
) -> Result<(Arc<BasedAlgebra>, Vec<MorphismRep>), Error> {
    let (table, homs) = end_table(m)?;
    let rad = crate::algebra::radical::radical_series(&table);
    let idems = crate::algebra::idempotents::primitive_idempotents(&table, &rad.basis, seed)?;
    let names = (0..table.dim).map(|i| format!("f{i}")).collect();
    let alg = BasedAlgebra::new(table, idems, Provenance::EndomorphismBuilt, names)?;
    Ok((alg, homs))
}

/// Isomorphism test: dimension-vector filter, then a search for an
/// invertible element of Hom(M, N) — basis sweep first, then seeded random
/// combinations, then exhaustion over tiny fields.
pub fn modules_isomorphic(m: &ModuleRep, n: &ModuleRep, seed: u64) -> Result<bool, Error> {
    if m.dim_vector() != n.dim_vector() {
        return Ok(false);
    }
    if m.is_zero() {
        return Ok(true);
    }
    let homs = hom_basis(m, n)?;
    if homs.is_empty() {
        return Ok(false);
    }
    for h in &homs {
        if h.matrix.is_invertible() {
            return Ok(true);
        }
    }
    let field = m.alg.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..64 {
        let mut cand = Mat::zeros(m.dim, n.dim, field);
        for h in &homs {
            let c = field.from_i64(rng.gen_range(0..101));
            cand = cand.add(&h.matrix.scale(&c));
        }
        if cand.is_invertible() {
            return Ok(true);
        }
    }
    // tiny prime fields: exhaust all coefficient tuples
    if let crate::exactlin::FieldSpec::Prime(p) = field {
        if (p as u128).pow(homs.len().min(16) as u32) <= 100_000 && homs.len() <= 16 {
            let total = (p as usize).pow(homs.len() as u32);
            for mask in 1..total {
                let mut x = mask;
                let mut cand = Mat::zeros(m.dim, n.dim, field);
                for h in &homs {
                    let c = field.from_i64((x % p as usize) as i64);
                    x /= p as usize;
                    cand = cand.add(&h.matrix.scale(&c));
                }
                if cand.is_invertible() {
                    return Ok(true);
                }
            }
            return Ok(false);
        }
    }
    Ok(false)
}
