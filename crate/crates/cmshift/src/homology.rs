//! Minimal resolutions, Ext groups, and the homological profile: global
//! dimension, injective dimension, dominant dimension, and the projective
//! dimension n of the dual of the regular module.
//!
//! Infinite values are never asserted: anything that reaches the cap is
//! reported as a lower bound.

use std::sync::Arc;

use crate::algebra::BasedAlgebra;
use crate::error::Error;
use crate::exactlin::{CoordSolver, Mat};
use crate::modcat::{cover, hom_basis, morphism_factor, ModuleRep, MorphismRep};

pub const DEFAULT_CAP: usize = 24;

/// An exact invariant value, or a lower bound when the cap truncated the
/// computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    Exact(usize),
    AtLeast(usize),
}

impl Bound {
    pub fn exact(&self) -> Option<usize> {
        match self {
            Bound::Exact(v) => Some(*v),
            Bound::AtLeast(_) => None,
        }
    }

    pub fn lower(&self) -> usize {
        match self {
            Bound::Exact(v) | Bound::AtLeast(v) => *v,
        }
    }

    /// Join for maxima over families: any truncated member truncates the
    /// maximum unless an exact member already exceeds it.
    pub fn max(self, other: Bound) -> Bound {
        match (self, other) {
            (Bound::Exact(a), Bound::Exact(b)) => Bound::Exact(a.max(b)),
            (Bound::AtLeast(a), Bound::Exact(b)) | (Bound::Exact(b), Bound::AtLeast(a)) => {
                if b > a {
                    Bound::Exact(b)
                } else {
                    Bound::AtLeast(a)
                }
            }
            (Bound::AtLeast(a), Bound::AtLeast(b)) => Bound::AtLeast(a.max(b)),
        }
    }
}

impl std::fmt::Display for Bound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Bound::Exact(v) => write!(f, "{v}"),
            Bound::AtLeast(v) => write!(f, "≥ {v}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Projective,
    Injective,
}

/// A minimal resolution (projective) or coresolution (injective), built up
/// to a cap.
pub struct Resolution {
    pub direction: Direction,
    pub module: ModuleRep,
    pub terms: Vec<ModuleRep>,
    /// projective: d_i: terms[i+1] → terms[i]; injective: d_i: terms[i] → terms[i+1]
    pub differentials: Vec<MorphismRep>,
    /// projective: terms[0] → M; injective: M → terms[0]
    pub augmentation: MorphismRep,
    /// projective: syzygies Ω^{i+1}; injective: cosyzygies K_{i+1}
    pub syzygies: Vec<ModuleRep>,
    /// projective: monos Ω^{i+1} ↪ terms[i]; injective: epis terms[i] ↠ K_{i+1}
    pub links: Vec<MorphismRep>,
    pub capped: bool,
}

impl Resolution {
    /// Minimal projective resolution via iterated covers.
    pub fn projective(m: &ModuleRep, cap: usize) -> Result<Resolution, Error> {
        let mut terms = Vec::new();
        let mut differentials: Vec<MorphismRep> = Vec::new();
        let mut syzygies = Vec::new();
        let mut links: Vec<MorphismRep> = Vec::new();
        let mut augmentation = None;
        let mut current = m.clone();
        let mut capped = false;
        while !current.is_zero() {
            if terms.len() >= cap {
                capped = true;
                break;
            }
            let (p, epi, _) = cover(&current)?;
            let fact = morphism_factor(&epi)?;
            if let Some(prev_link) = links.last() {
                // d: P_{i} → Ω^{i} → P_{i−1}
                differentials.push(epi.compose(prev_link));
            }
            if augmentation.is_none() {
                augmentation = Some(epi.clone());
            }
            links.push(fact.kernel_mono.clone());
            syzygies.push(fact.kernel.clone());
            terms.push(p);
            current = fact.kernel;
        }
        let augmentation = match augmentation {
            Some(a) => a,
            None => MorphismRep::zero(ModuleRep::zero(m.alg.clone()), m.clone()),
        };
        Ok(Resolution {
            direction: Direction::Projective,
            module: m.clone(),
            terms,
            differentials,
            augmentation,
            syzygies,
            links,
            capped,
        })
    }

    /// Minimal injective coresolution: dual of a minimal projective
    /// resolution of D(M) over the opposite algebra.
    pub fn injective(m: &ModuleRep, cap: usize) -> Result<Resolution, Error> {
        let r = Resolution::projective(&m.dualize(), cap)?;
        let terms: Vec<ModuleRep> = r.terms.iter().map(|t| t.dualize()).collect();
        let differentials = r.differentials.iter().map(|d| d.dualize()).collect();
        let augmentation = {
            let d = r.augmentation.dualize();
            // source of the dualized map is DD(M), identical to M
            MorphismRep::new(m.clone(), d.target, d.matrix)?
        };
        let syzygies = r.syzygies.iter().map(|s| s.dualize()).collect();
        let links = r.links.iter().map(|l| l.dualize()).collect();
        Ok(Resolution {
            direction: Direction::Injective,
            module: m.clone(),
            terms,
            differentials,
            augmentation,
            syzygies,
            links,
            capped: r.capped,
        })
    }

    /// Projective (or injective) dimension witnessed by this resolution.
    pub fn dim_bound(&self, cap: usize) -> Bound {
        if self.capped {
            Bound::AtLeast(cap)
        } else if self.terms.is_empty() {
            Bound::Exact(0)
        } else {
            Bound::Exact(self.terms.len() - 1)
        }
    }

    /// Minimality: every differential maps into the radical of its target
    /// (no contractible summand).
    pub fn is_minimal(&self) -> bool {
        let in_radical = |f: &MorphismRep| -> bool {
            let rad = match self.direction {
                Direction::Projective => f.target.radical_rows(),
                // dually: factors through the radical quotient side, i.e.
                // the socle is killed
                Direction::Injective => {
                    return f
                        .source
                        .socle_rows()
                        .matmul(&f.matrix)
                        .is_zero();
                }
            };
            let stacked = Mat::vstack(&[&rad, &f.matrix], f.target.dim, f.matrix.field);
            stacked.rank() == rad.rows
        };
        self.differentials.iter().all(in_radical)
    }

    /// d ∘ d = 0 and exactness at interior terms by rank bookkeeping.
    pub fn verify_exactness(&self) -> bool {
        for w in 0..self.differentials.len().saturating_sub(1) {
            let (first, second) = match self.direction {
                Direction::Projective => (&self.differentials[w + 1], &self.differentials[w]),
                Direction::Injective => (&self.differentials[w], &self.differentials[w + 1]),
            };
            let comp = first.matrix.matmul(&second.matrix);
            if !comp.is_zero() {
                return false;
            }
            // exactness: rank(incoming) + rank(outgoing) = dim of the middle
            if first.matrix.rank() + second.matrix.rank() != self.terms[w + 1].dim {
                return false;
            }
        }
        true
    }
}

/// Projectivity test: the kernel of the minimal cover vanishes.
pub fn is_projective(m: &ModuleRep) -> Result<bool, Error> {
    if m.is_zero() {
        return Ok(true);
    }
    let (_, epi, _) = cover(m)?;
    Ok(epi.is_iso())
}

pub fn is_injective(m: &ModuleRep) -> Result<bool, Error> {
    is_projective(&m.dualize())
}

/// dim Ext^i(M, N) for 0 ≤ i ≤ max_i, from a minimal projective resolution
/// of M.
pub fn ext_dims(m: &ModuleRep, n: &ModuleRep, max_i: usize) -> Result<Vec<usize>, Error> {
    if !Arc::ptr_eq(&m.alg, &n.alg) {
        return Err(Error::AlgebraMismatch);
    }
    let r = Resolution::projective(m, max_i + 2)?;
    let field = m.alg.field();
    // Hom complex 0 → Hom(P_0, N) → Hom(P_1, N) → ... with precomposition
    let hom_bases: Vec<Vec<MorphismRep>> = r
        .terms
        .iter()
        .map(|p| hom_basis(p, n))
        .collect::<Result<_, _>>()?;
    let mut delta_ranks = vec![0usize; max_i + 1];
    for i in 0..=max_i {
        if i + 1 >= r.terms.len() {
            break;
        }
        let d = &r.differentials[i]; // P_{i+1} → P_i
        let target_basis = &hom_bases[i + 1];
        if target_basis.is_empty() || hom_bases[i].is_empty() {
            continue;
        }
        let flat: Vec<Vec<_>> = target_basis
            .iter()
            .map(|h| h.matrix.flatten_row())
            .collect();
        let solver = CoordSolver::new(Mat::from_rows(
            flat,
            r.terms[i + 1].dim * n.dim,
            field,
        ));
        let rows: Vec<Vec<_>> = hom_bases[i]
            .iter()
            .map(|f| {
                solver
                    .coords(&d.matrix.matmul(&f.matrix).flatten_row())
                    .expect("precomposition stays in the Hom space")
            })
            .collect();
        delta_ranks[i] = Mat::from_rows(rows, target_basis.len(), field).rank();
    }
    let mut out = Vec::with_capacity(max_i + 1);
    for i in 0..=max_i {
        let dim_hom_i = hom_bases.get(i).map_or(0, |b| b.len());
        let rank_in = if i == 0 { 0 } else { delta_ranks[i - 1] };
        out.push(dim_hom_i - delta_ranks[i] - rank_in);
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct HomologicalProfile {
    pub gldim: Bound,
    pub injdim: Bound,
    pub domdim: Bound,
    /// projective dimension of the dual of the regular module
    pub canonical_degree: Bound,
    pub pd_simples: Vec<Bound>,
}

/// The four headline invariants of an algebra.
pub fn profile(alg: &Arc<BasedAlgebra>, cap: usize) -> Result<HomologicalProfile, Error> {
    let cat = crate::modcat::catalog(alg)?;
    let mut pd_simples = Vec::new();
    let mut gldim = Bound::Exact(0);
    for s in &cat.simples {
        let r = Resolution::projective(s, cap)?;
        let b = r.dim_bound(cap);
        gldim = gldim.max(b);
        pd_simples.push(b);
    }
    let regular = ModuleRep::regular(alg);
    // injdim Λ = pd of D(Λ) over the opposite
    let injdim = Resolution::projective(&regular.dualize(), cap)?.dim_bound(cap);
    // canonical degree: pd over Λ of the dual of the left regular module
    let op = alg.opposite();
    let omega = ModuleRep::regular(&op).dualize();
    let canonical_degree = Resolution::projective(&omega, cap)?.dim_bound(cap);
    // dominant dimension: first non-projective term of the minimal injective
    // coresolution of Λ
    let cores = Resolution::injective(&regular, cap)?;
    // if every inspected term is projective the coresolution never leaves
    // add Λ up to the cap (or at all, when it terminates)
    let mut domdim = Bound::AtLeast(cap);
    for (i, t) in cores.terms.iter().enumerate() {
        if !is_projective(t)? {
            domdim = Bound::Exact(i);
            break;
        }
    }
    Ok(HomologicalProfile {
        gldim,
        injdim,
        domdim,
        canonical_degree,
        pd_simples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::FieldSpec;
    use crate::modcat::catalog;
    use crate::quiver::{build_based_algebra, Arrow, Quiver, RelationCombo, DEFAULT_NILPOTENCY_CAP};

    fn f101() -> FieldSpec {
        FieldSpec::Prime(101)
    }

    fn a2() -> Arc<BasedAlgebra> {
        let q = Quiver {
            vertex_count: 2,
            arrows: vec![Arrow { name: "a".into(), source: 0, target: 1 }],
        };
        build_based_algebra(&q, &[], f101(), DEFAULT_NILPOTENCY_CAP).unwrap()
    }

    fn dual_numbers() -> Arc<BasedAlgebra> {
        let q = Quiver {
            vertex_count: 1,
            arrows: vec![Arrow { name: "x".into(), source: 0, target: 0 }],
        };
        let rel = RelationCombo { terms: vec![(f101().one(), vec![0, 0])] };
        build_based_algebra(&q, &[rel], f101(), DEFAULT_NILPOTENCY_CAP).unwrap()
    }

    fn auslander_kx2() -> Arc<BasedAlgebra> {
        let q = Quiver {
            vertex_count: 2,
            arrows: vec![
                Arrow { name: "a".into(), source: 0, target: 1 },
                Arrow { name: "b".into(), source: 1, target: 0 },
            ],
        };
        let rel = RelationCombo { terms: vec![(f101().one(), vec![0, 1])] };
        build_based_algebra(&q, &[rel], f101(), DEFAULT_NILPOTENCY_CAP).unwrap()
    }

    #[test]
    fn projective_input_has_length_zero() {
        let alg = a2();
        let cat = catalog(&alg).unwrap();
        let r = Resolution::projective(&cat.projectives[0], 24).unwrap();
        assert_eq!(r.terms.len(), 1);
        assert!(!r.capped);
        assert_eq!(r.dim_bound(24), Bound::Exact(0));
        assert!(is_projective(&cat.projectives[0]).unwrap());
    }

    #[test]
    fn periodic_resolution_over_dual_numbers() {
        let alg = dual_numbers();
        let cat = catalog(&alg).unwrap();
        let r = Resolution::projective(&cat.simples[0], 6).unwrap();
        assert!(r.capped);
        assert_eq!(r.terms.len(), 6);
        assert!(r.terms.iter().all(|t| t.dim == 2));
        assert!(r.is_minimal());
        assert!(r.verify_exactness());
    }

    #[test]
    fn injective_coresolution_of_regular_a2() {
        let alg = a2();
        let reg = ModuleRep::regular(&alg);
        let r = Resolution::injective(&reg, 24).unwrap();
        assert!(!r.capped);
        // 0 → Λ → I₂² → I₁ → 0
        assert_eq!(r.terms.len(), 2);
        assert_eq!(r.terms[0].dim, 4);
        assert_eq!(r.terms[1].dim, 1);
        assert!(r.is_minimal());
        assert!(r.verify_exactness());
    }

    #[test]
    fn ext_basics() {
        let alg = a2();
        let cat = catalog(&alg).unwrap();
        // Ext⁰ = Hom
        let e = ext_dims(&cat.simples[0], &cat.simples[1], 3).unwrap();
        assert_eq!(e[0], hom_basis(&cat.simples[0], &cat.simples[1]).unwrap().len());
        // Ext¹(S₁, S₂) = 1 for the arrow 1 → 2
        assert_eq!(e[1], 1);
        assert_eq!(&e[2..], &[0, 0]);
        // Ext^{>0}(P, −) = 0
        let ep = ext_dims(&cat.projectives[0], &cat.simples[1], 3).unwrap();
        assert_eq!(&ep[1..], &[0, 0, 0]);
    }

    #[test]
    fn resolution_multiplicities_match_ext_against_simples() {
        let alg = auslander_kx2();
        let cat = catalog(&alg).unwrap();
        for s in &cat.simples {
            let r = Resolution::projective(s, 8).unwrap();
            assert!(!r.capped);
            for (i, term) in r.terms.iter().enumerate() {
                // multiplicity of P_j in term i = dim of the top of term i at j
                let (_, _, mults) = cover(term).unwrap();
                for (j, sj) in cat.simples.iter().enumerate() {
                    let e = ext_dims(s, sj, i).unwrap();
                    assert_eq!(e[i], mults[j], "term {i}, simple {j}");
                }
            }
        }
    }

    #[test]
    fn ext_duality_symmetry() {
        let alg = auslander_kx2();
        let cat = catalog(&alg).unwrap();
        let reg = ModuleRep::regular(&alg);
        let mods = [&reg, &cat.simples[0], &cat.simples[1], &cat.injectives[0]];
        for m in mods {
            for n in mods {
                let lhs = ext_dims(m, n, 4).unwrap();
                let rhs = ext_dims(&n.dualize(), &m.dualize(), 4).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn profile_semisimple() {
        let q = Quiver { vertex_count: 2, arrows: vec![] };
        let alg = build_based_algebra(&q, &[], f101(), DEFAULT_NILPOTENCY_CAP).unwrap();
        let p = profile(&alg, 24).unwrap();
        assert_eq!(p.gldim, Bound::Exact(0));
        assert_eq!(p.canonical_degree, Bound::Exact(0));
        assert_eq!(p.domdim, Bound::AtLeast(24));
    }

    #[test]
    fn profile_dual_numbers() {
        let alg = dual_numbers();
        let p = profile(&alg, 8).unwrap();
        assert_eq!(p.gldim, Bound::AtLeast(8));
        assert_eq!(p.domdim, Bound::AtLeast(8));
        assert_eq!(p.canonical_degree, Bound::Exact(0));
        assert_eq!(p.injdim, Bound::Exact(0));
    }

    #[test]
    fn profile_auslander_kx2() {
        let alg = auslander_kx2();
        let p = profile(&alg, 24).unwrap();
        assert_eq!(p.gldim, Bound::Exact(2));
        assert_eq!(p.injdim, Bound::Exact(2));
        assert_eq!(p.domdim, Bound::Exact(2));
        assert_eq!(p.canonical_degree, Bound::Exact(2));
    }

    #[test]
    fn profile_a2_and_qf3_agreement() {
        let alg = a2();
        let p = profile(&alg, 24).unwrap();
        assert_eq!(p.gldim, Bound::Exact(1));
        assert_eq!(p.injdim, Bound::Exact(1));
        assert_eq!(p.canonical_degree, Bound::Exact(1));
        assert_eq!(p.domdim, Bound::Exact(1));
        // QF-3: domdim ≥ 1 iff the envelope of the regular module is projective
        let reg = ModuleRep::regular(&alg);
        let (env, _, _) = crate::modcat::envelope(&reg).unwrap();
        assert_eq!(p.domdim.lower() >= 1, is_projective(&env).unwrap());
    }
}
