//! Projective covers, injective envelopes and decomposition into
//! indecomposables.

use crate::algebra::{idempotents, radical};
use crate::error::Error;
use crate::exactlin::{Mat, Scalar};

use super::{catalog, direct_sum, submodule, ModuleRep, MorphismRep};

/// Projective cover: P(M) = ⊕ P_i^{t_i} with t_i the top multiplicities,
/// plus the covering epimorphism and the multiplicity vector.
pub fn cover(m: &ModuleRep) -> Result<(ModuleRep, MorphismRep, Vec<usize>), Error> {
    let alg = &m.alg;
    let field = alg.field();
    if m.is_zero() {
        let z = ModuleRep::zero(alg.clone());
        let epi = MorphismRep::zero(z.clone(), m.clone());
        return Ok((z, epi, vec![0; alg.vertex_count()]));
    }
    let cat = catalog(alg)?;
    // generators: unit vectors not yet inside M·J plus the span of earlier
    // generators.  Each chosen generator contributes its whole cyclic
    // submodule to the span: over a non-basic algebra one projective copy
    // covers a simple of dimension equal to its multiplicity, so extending
    // by single vectors would overcount.
    let mj = m.radical_rows();
    let mut span = mj.clone();
    let mut gens: Vec<usize> = Vec::new();
    for a in 0..m.dim {
        let unit = Mat::from_fn(1, m.dim, field, |_, j| {
            if j == a {
                field.one()
            } else {
                field.zero()
            }
        });
        let cand = Mat::vstack(&[&span, &unit], m.dim, field).row_basis();
        if cand.rows == span.rows {
            continue;
        }
        gens.push(a);
        let emb = &cat.projective_rows[m.weights[a]];
        let mut cyc: Vec<Vec<Scalar>> = Vec::with_capacity(emb.rows);
        for r in 0..emb.rows {
            cyc.push(m.act_of(emb.row(r)).row_vec(a));
        }
        let cyc = Mat::from_rows(cyc, m.dim, field);
        span = Mat::vstack(&[&span, &cyc], m.dim, field).row_basis();
    }
    debug_assert_eq!(span.rows, m.dim, "generators plus radical span the module");
    let mut mults = vec![0usize; alg.vertex_count()];
    for &a in &gens {
        mults[m.weights[a]] += 1;
    }
    let parts: Vec<&ModuleRep> = gens.iter().map(|&a| &cat.projectives[m.weights[a]]).collect();
    let (p, _) = direct_sum(&parts);
    // epi: the basis element x of P_i in the copy for generator m_a maps to
    // m_a · ρ(x), where x is read off from the embedding P_i ⊆ Λ
    let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(p.dim);
    for &a in &gens {
        let i = m.weights[a];
        let emb = &cat.projective_rows[i];
        for r in 0..emb.rows {
            let act = m.act_of(emb.row(r));
            rows.push(act.row_vec(a));
        }
    }
    let epi = MorphismRep::new(p.clone(), m.clone(), Mat::from_rows(rows, m.dim, field))?;
    if epi.matrix.rank() != m.dim {
        return Err(Error::BadAlgebra("projective cover is not surjective".into()));
    }
    Ok((p, epi, mults))
}

/// Injective envelope via duality: E(M) = D(P(D(M))), a block-diagonal sum
/// of indecomposable injectives, plus the embedding and multiplicities.
pub fn envelope(m: &ModuleRep) -> Result<(ModuleRep, MorphismRep, Vec<usize>), Error> {
    let d = m.dualize();
    let (_, epi, mults) = cover(&d)?;
    let mono = epi.dualize();
    debug_assert_eq!(mono.source.action, m.action);
    let mono = MorphismRep::new(m.clone(), mono.target, mono.matrix)?;
    Ok((mono.target.clone(), mono, mults))
}

/// A complete direct-sum decomposition with verified section/retraction
/// pairs.
pub struct DecompositionCert {
    /// (summand, inclusion, projection) with projection ∘ inclusion = id
    pub summands: Vec<(ModuleRep, MorphismRep, MorphismRep)>,
}

impl DecompositionCert {
    /// Σ inclusion ∘ projection must be the identity on the ambient module.
    pub fn verify_partition(&self, m: &ModuleRep) -> bool {
        let field = m.alg.field();
        let mut total = Mat::zeros(m.dim, m.dim, field);
        for (_, inc, proj) in &self.summands {
            total = total.add(&proj.matrix.matmul(&inc.matrix));
            let back = inc.matrix.matmul(&proj.matrix);
            if back != Mat::identity(inc.source.dim, field) {
                return false;
            }
        }
        total == Mat::identity(m.dim, field)
    }

    pub fn dim_vectors(&self) -> Vec<Vec<usize>> {
        self.summands.iter().map(|(s, _, _)| s.dim_vector()).collect()
    }
}

/// Decompose into indecomposables by splitting the identity of End(M) into
/// primitive idempotents.
pub fn decompose(m: &ModuleRep, seed: u64) -> Result<DecompositionCert, Error> {
    if m.is_zero() {
        return Ok(DecompositionCert { summands: vec![] });
    }
    let field = m.alg.field();
    let (table, homs) = super::homs::end_table(m)?;
    let rad = radical::radical_series(&table);
    let idems = idempotents::primitive_idempotents(&table, &rad.basis, seed)
        .map_err(|_| Error::DecompositionFailed { seed })?;
    let mut summands = Vec::with_capacity(idems.len());
    for coords in &idems {
        let mut e = Mat::zeros(m.dim, m.dim, field);
        for (j, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                e = e.add(&homs[j].matrix.scale(c));
            }
        }
        let rows = e.row_basis();
        let (sub, mono) = submodule(m, &rows)?;
        let proj_matrix = mono
            .matrix
            .solve_left(&e)?
            .expect("idempotent image lies in the summand");
        let proj = MorphismRep::new(m.clone(), sub.clone(), proj_matrix)?;
        debug_assert_eq!(
            mono.matrix.matmul(&proj.matrix).rank(),
            sub.dim,
        );
        summands.push((sub, mono, proj));
    }
    // canonical order: by dimension vector, then by inclusion coordinates
    summands.sort_by(|a, b| {
        (a.0.dim, a.0.dim_vector())
            .cmp(&(b.0.dim, b.0.dim_vector()))
            .then_with(|| {
                for (x, y) in a.1.matrix.flatten_row().iter().zip(b.1.matrix.flatten_row()) {
                    let c = x.cmp_canonical(&y);
                    if c != std::cmp::Ordering::Equal {
                        return c;
                    }
                }
                std::cmp::Ordering::Equal
            })
    });
    Ok(DecompositionCert { summands })
}

/// Multiplicity-free add-class representatives of a module: one summand per
/// isomorphism class, in canonical order.
pub fn add_class_representatives(
    m: &ModuleRep,
    seed: u64,
) -> Result<Vec<ModuleRep>, Error> {
    let cert = decompose(m, seed)?;
    let mut reps: Vec<ModuleRep> = Vec::new();
    for (s, _, _) in &cert.summands {
        let mut known = false;
        for r in reps.iter() {
            if super::modules_isomorphic(s, r, seed)? {
                known = true;
                break;
            }
        }
        if !known {
            reps.push(s.clone());
        }
    }
    Ok(reps)
}

/// Helper used by the decomposition certificate invariant: End(M) is local
/// iff its semisimple quotient is one-dimensional.
pub fn is_indecomposable(m: &ModuleRep) -> Result<bool, Error> {
    if m.is_zero() {
        return Ok(false);
    }
    let (table, _) = super::homs::end_table(m)?;
    let rad = radical::radical_series(&table);
    Ok(table.dim - rad.basis.rows == 1)
}
