//! The shifted tilting pipeline: the projective-injective generator Π, the
//! shifted module T = K_k ⊕ Π, the tilting certificate, the endomorphism
//! algebra Γ = End(T), and the complex-minimization mechanism check.
//!
//! T is kept multiplicity-free: its summand list carries one representative
//! per isomorphism class, cosyzygy classes first, then the remaining classes
//! of Π.  Γ is based on the Hom basis of End(T) with the summand projections
//! as primitive idempotents, so the j-th vertex of Γ is the j-th summand of
//! T by construction.

use std::sync::Arc;

use crate::algebra::{BasedAlgebra, Provenance};
use crate::error::Error;
use crate::exactlin::{CoordSolver, Mat, Scalar};
use crate::homology::{ext_dims, is_injective, is_projective, profile, Bound, Resolution};
use crate::modcat::{
    catalog, decomp::add_class_representatives, direct_sum, end_algebra, hom_basis, homs,
    modules_isomorphic, ModuleRep, MorphismRep,
};

/// The multiplicity-free projective-injective generator: one representative
/// per isomorphism class of indecomposable projective-injective modules.
/// Empty when the algebra has no projective-injectives.
pub struct ProjInjGenerator {
    pub classes: Vec<ModuleRep>,
    /// vertex index of the representing projective e_iΛ
    pub vertices: Vec<usize>,
}

pub fn proj_inj_generator(
    alg: &Arc<BasedAlgebra>,
    seed: u64,
) -> Result<ProjInjGenerator, Error> {
    let cat = catalog(alg)?;
    let mut classes: Vec<ModuleRep> = Vec::new();
    let mut vertices = Vec::new();
    for (i, p) in cat.projectives.iter().enumerate() {
        if !is_injective(p)? {
            continue;
        }
        let mut known = false;
        for c in &classes {
            if modules_isomorphic(p, c, seed)? {
                known = true;
                break;
            }
        }
        if !known {
            classes.push(p.clone());
            vertices.push(i);
        }
    }
    Ok(ProjInjGenerator { classes, vertices })
}

/// The level-k shift: the cosyzygy K_k of the minimal injective coresolution
/// 0 → Λ → I⁰ → … → I^{k−1} → K_k → 0, the multiplicity-free module
/// T = K_k ⊕ Π, and the witness exact sequence.  K₀ = Λ.
pub struct ShiftData {
    pub level: usize,
    pub cosyzygy: ModuleRep,
    /// I⁰, …, I^{k−1}, each projective-injective
    pub witness_terms: Vec<ModuleRep>,
    /// Λ → I⁰, the connecting maps, and I^{k−1} ↠ K_k (k + 1 maps; for
    /// k = 0 the single map Λ → K₀ is the identity)
    pub witness_maps: Vec<MorphismRep>,
    /// indecomposable summand classes of T, cosyzygy classes first
    pub summands: Vec<ModuleRep>,
    pub t: ModuleRep,
    pub inclusions: Vec<MorphismRep>,
    pub projections: Vec<MorphismRep>,
}

pub fn shifted_module(
    alg: &Arc<BasedAlgebra>,
    k: usize,
    cap: usize,
    seed: u64,
) -> Result<ShiftData, Error> {
    let regular = ModuleRep::regular(alg);
    let (cosyzygy, witness_terms, witness_maps) = if k == 0 {
        (regular.clone(), vec![], vec![MorphismRep::identity(&regular)])
    } else {
        let cores = Resolution::injective(&regular, cap.max(k))?;
        let have = cores.terms.len();
        for i in 0..k.min(have) {
            if !is_projective(&cores.terms[i])? {
                if i == 0 {
                    return Err(Error::NotQf3 { k });
                }
                return Err(Error::LevelExceedsDomdim { k, domdim: i.to_string() });
            }
        }
        // a coresolution shorter than k means K_k = 0
        let terms: Vec<ModuleRep> = cores.terms.iter().take(k).cloned().collect();
        let cosyzygy = if k <= cores.syzygies.len() {
            cores.syzygies[k - 1].clone()
        } else {
            ModuleRep::zero(alg.clone())
        };
        let mut maps = vec![cores.augmentation.clone()];
        for i in 0..terms.len().saturating_sub(1) {
            maps.push(cores.differentials[i].clone());
        }
        if k <= cores.links.len() {
            maps.push(cores.links[k - 1].clone());
        } else if let Some(last) = terms.last() {
            maps.push(MorphismRep::zero(last.clone(), cosyzygy.clone()));
        }
        (cosyzygy, terms, maps)
    };
    let mut summands = add_class_representatives(&cosyzygy, seed)?;
    let pig = proj_inj_generator(alg, seed)?;
    for p in pig.classes {
        let mut known = false;
        for s in &summands {
            if modules_isomorphic(&p, s, seed)? {
                known = true;
                break;
            }
        }
        if !known {
            summands.push(p);
        }
    }
    if summands.is_empty() {
        return Err(Error::BadAlgebra("shifted module is zero".into()));
    }
    let refs: Vec<&ModuleRep> = summands.iter().collect();
    let (t, maps) = direct_sum(&refs);
    let (inclusions, projections) = maps.into_iter().unzip();
    Ok(ShiftData {
        level: k,
        cosyzygy,
        witness_terms,
        witness_maps,
        summands,
        t,
        inclusions,
        projections,
    })
}

/// Witness data for the three tilting conditions on T at level k:
/// pd T ≤ k, self-orthogonality, and the coresolution of Λ in add T.
pub struct TiltingCertificate {
    pub level: usize,
    pub pd_t: Bound,
    /// dim Ext^i(T, T) for 1 ≤ i ≤ the checked range (all must vanish)
    pub ext_self: Vec<usize>,
    pub witness_exact: bool,
    /// Hom(T, −) keeps the witness left-exact through Hom(T, I⁰)
    pub hom_witness_exact: bool,
}

pub fn verify_tilting(sd: &ShiftData, cap: usize) -> Result<TiltingCertificate, Error> {
    let k = sd.level;
    let pd_t = Resolution::projective(&sd.t, cap)?.dim_bound(cap);
    match pd_t.exact() {
        Some(v) if v <= k => {}
        _ => {
            return Err(Error::TiltingFailed(format!(
                "pd T = {pd_t} exceeds the level {k}"
            )))
        }
    }
    let max_i = pd_t.lower().max(1);
    let ext = ext_dims(&sd.t, &sd.t, max_i)?;
    let ext_self: Vec<usize> = ext[1..].to_vec();
    if let Some((i, d)) = ext_self.iter().enumerate().find(|(_, d)| **d != 0) {
        return Err(Error::TiltingFailed(format!(
            "Ext^{}(T, T) has dimension {d}",
            i + 1
        )));
    }
    let witness_exact = witness_is_exact(sd);
    if !witness_exact {
        return Err(Error::TiltingFailed(
            "the coresolution of the regular module in add T is not exact".into(),
        ));
    }
    let hom_witness_exact = hom_witness_is_exact(sd)?;
    if !hom_witness_exact {
        return Err(Error::TiltingFailed(
            "Hom(T, −) does not keep the witness sequence exact".into(),
        ));
    }
    Ok(TiltingCertificate {
        level: k,
        pd_t,
        ext_self,
        witness_exact,
        hom_witness_exact,
    })
}

/// 0 → Λ → I⁰ → … → I^{k−1} → K_k → 0 composed to zero with matching ranks.
fn witness_is_exact(sd: &ShiftData) -> bool {
    let maps = &sd.witness_maps;
    if maps.is_empty() {
        return false;
    }
    let first = &maps[0];
    if first.matrix.rank() != first.source.dim {
        return false;
    }
    let last = maps.last().unwrap();
    if last.matrix.rank() != last.target.dim {
        return false;
    }
    for w in 0..maps.len() - 1 {
        let comp = maps[w].matrix.matmul(&maps[w + 1].matrix);
        if !comp.is_zero() {
            return false;
        }
        if maps[w].matrix.rank() + maps[w + 1].matrix.rank() != maps[w].target.dim {
            return false;
        }
    }
    true
}

/// Rank bookkeeping for the induced sequence of Hom(T, −) spaces.
fn hom_witness_is_exact(sd: &ShiftData) -> Result<bool, Error> {
    let maps = &sd.witness_maps;
    let mut dims = Vec::with_capacity(maps.len() + 1);
    let mut bases = Vec::with_capacity(maps.len() + 1);
    let mut modules = vec![maps[0].source.clone()];
    for m in maps {
        modules.push(m.target.clone());
    }
    for x in &modules {
        let b = hom_basis(&sd.t, x)?;
        dims.push(b.len());
        bases.push(b);
    }
    let field = sd.t.alg.field();
    let mut ranks = Vec::with_capacity(maps.len());
    for (w, g) in maps.iter().enumerate() {
        if dims[w] == 0 || dims[w + 1] == 0 {
            ranks.push(0);
            continue;
        }
        let flat: Vec<Vec<Scalar>> = bases[w + 1].iter().map(|h| h.matrix.flatten_row()).collect();
        let solver = CoordSolver::new(Mat::from_rows(flat, sd.t.dim * g.target.dim, field));
        let rows: Vec<Vec<Scalar>> = bases[w]
            .iter()
            .map(|f| {
                solver
                    .coords(&f.matrix.matmul(&g.matrix).flatten_row())
                    .expect("post-composition stays in the Hom space")
            })
            .collect();
        ranks.push(Mat::from_rows(rows, dims[w + 1], field).rank());
    }
    // what left exactness provides: the induced map out of Hom(T, Λ) is
    // injective and the sequence is exact at Hom(T, I⁰).  Exactness at later
    // spots is obstructed by Ext¹(T, K_j) and can genuinely fail.
    if ranks[0] != dims[0] {
        return Ok(false);
    }
    if maps.len() >= 2 && ranks[0] + ranks[1] != dims[1] {
        return Ok(false);
    }
    Ok(true)
}

/// Γ = End(T) based on a Hom basis, with the projection onto the j-th
/// summand of T as the j-th primitive idempotent.
pub struct ShiftedAlgebra {
    pub gamma: Arc<BasedAlgebra>,
    /// Hom basis of End(T) realizing Γ's elements as matrices on T
    pub homs: Vec<MorphismRep>,
}

pub fn endomorphism_algebra(sd: &ShiftData) -> Result<ShiftedAlgebra, Error> {
    let (table, homs) = homs::end_table(&sd.t)?;
    let field = table.field;
    let flat: Vec<Vec<Scalar>> = homs.iter().map(|h| h.matrix.flatten_row()).collect();
    let solver = CoordSolver::new(Mat::from_rows(flat, sd.t.dim * sd.t.dim, field));
    let mut idems = Vec::with_capacity(sd.summands.len());
    for (proj, inc) in sd.projections.iter().zip(&sd.inclusions) {
        let e = proj.matrix.matmul(&inc.matrix);
        let coords = solver
            .coords(&e.flatten_row())
            .ok_or_else(|| Error::BadAlgebra("summand projection escapes End(T)".into()))?;
        idems.push(coords);
    }
    let names = (0..table.dim).map(|i| format!("f{i}")).collect();
    let gamma = BasedAlgebra::new(table, idems, Provenance::EndomorphismBuilt, names)?;
    Ok(ShiftedAlgebra { gamma, homs })
}

/// gldim End(T_k) against gldim Λ.  `holds` is None when gldim Λ is only a
/// lower bound, making the comparison vacuous.
pub struct ShiftGldimReport {
    pub level: usize,
    pub gldim_lambda: Bound,
    pub gldim_gamma: Bound,
    pub simple_counts_match: bool,
    pub holds: Option<bool>,
}

pub fn shift_gldim_report(
    alg: &Arc<BasedAlgebra>,
    k: usize,
    cap: usize,
    seed: u64,
) -> Result<ShiftGldimReport, Error> {
    let sd = shifted_module(alg, k, cap, seed)?;
    verify_tilting(&sd, cap)?;
    let sa = endomorphism_algebra(&sd)?;
    let gldim_lambda = profile(alg, cap)?.gldim;
    let gldim_gamma = profile(&sa.gamma, cap)?.gldim;
    let simple_counts_match = sa.gamma.vertex_count() == alg.vertex_count();
    let holds = match gldim_lambda {
        Bound::Exact(l) => Some(gldim_gamma.exact().is_some_and(|g| g <= l)),
        Bound::AtLeast(_) => None,
    };
    Ok(ShiftGldimReport {
        level: k,
        gldim_lambda,
        gldim_gamma,
        simple_counts_match,
        holds,
    })
}

/// injdim T against n − k, where n is the projective dimension of the dual
/// of the regular module.  Only meaningful for 1 ≤ k and exact n.
pub struct ShiftInjdimReport {
    pub level: usize,
    pub canonical_degree: Bound,
    pub injdim_t: Bound,
    pub matches: Option<bool>,
}

pub fn shifted_injdim_check(
    alg: &Arc<BasedAlgebra>,
    k: usize,
    cap: usize,
    seed: u64,
) -> Result<ShiftInjdimReport, Error> {
    let sd = shifted_module(alg, k, cap, seed)?;
    let canonical_degree = profile(alg, cap)?.canonical_degree;
    let injdim_t = Resolution::projective(&sd.t.dualize(), cap)?.dim_bound(cap);
    let matches = match (canonical_degree, injdim_t, k) {
        (Bound::Exact(n), Bound::Exact(d), k) if k >= 1 && k <= n => Some(d == n - k),
        _ => None,
    };
    Ok(ShiftInjdimReport {
        level: k,
        canonical_degree,
        injdim_t,
        matches,
    })
}

/// Verifies that M contains every indecomposable projective and injective
/// as a summand, then reports domdim End(M), which must be at least 2.
pub struct GenCogenReport {
    pub summand_classes: usize,
    pub end_dim: usize,
    pub domdim_end: Bound,
    pub passed: bool,
}

pub fn generator_cogenerator_check(
    m: &ModuleRep,
    cap: usize,
    seed: u64,
) -> Result<GenCogenReport, Error> {
    let cat = catalog(&m.alg)?;
    let reps = add_class_representatives(m, seed)?;
    for (i, p) in cat.projectives.iter().enumerate() {
        let mut found = false;
        for r in &reps {
            if modules_isomorphic(p, r, seed)? {
                found = true;
                break;
            }
        }
        if !found {
            return Err(Error::NotGeneratorCogenerator(format!(
                "the projective at vertex {i} is not a summand"
            )));
        }
    }
    for (i, inj) in cat.injectives.iter().enumerate() {
        let mut found = false;
        for r in &reps {
            if modules_isomorphic(inj, r, seed)? {
                found = true;
                break;
            }
        }
        if !found {
            return Err(Error::NotGeneratorCogenerator(format!(
                "the injective at vertex {i} is not a summand"
            )));
        }
    }
    let (end, _) = end_algebra(m, seed)?;
    let domdim_end = profile(&end, cap)?.domdim;
    Ok(GenCogenReport {
        summand_classes: reps.len(),
        end_dim: end.dim(),
        domdim_end,
        passed: domdim_end.lower() >= 2,
    })
}

pub mod mechanism;

pub use mechanism::{mechanism_check, ComplexOfModules, MechanismReport, MechanismVerdict};
