//! Acceptance suite: one pass/fail line per criterion, everything an exact
//! integer assertion.  The bundled corpus lives at the workspace root.

use std::path::PathBuf;
use std::sync::Arc;

use cmshift::algebra::BasedAlgebra;
use cmshift::cli::file::{build, parse_algebra_file};
use cmshift::exactlin::FieldSpec;
use cmshift::homology::{ext_dims, profile, Bound};
use cmshift::modcat::{
    catalog, cover, decomp::add_class_representatives, direct_sum, morphism_factor, ModuleRep,
};
use cmshift::order_layer::{theorem_report, OrderVerdict, TensorOrderSpec};
use cmshift::tilting::{
    endomorphism_algebra, generator_cogenerator_check, mechanism_check, shift_gldim_report,
    shifted_module, verify_tilting, MechanismVerdict,
};

const CAP: usize = 24;
const SEED: u64 = 0;

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn corpus() -> Vec<(String, Arc<BasedAlgebra>)> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .expect("corpus directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "alg"))
        .collect();
    files.sort();
    assert!(files.len() >= 10, "bundled corpus has at least 10 entries");
    files
        .iter()
        .map(|p| {
            let af = parse_algebra_file(p).expect("corpus file parses");
            let alg = build(&af, FieldSpec::Prime(101)).expect("corpus file builds");
            (af.name, alg)
        })
        .collect()
}

fn criterion(n: usize, what: &str, body: impl FnOnce() -> Result<(), String>) {
    match body() {
        Ok(()) => println!("criterion {n} ({what}): pass"),
        Err(e) => {
            println!("criterion {n} ({what}): fail: {e}");
            panic!("criterion {n} failed: {e}");
        }
    }
}

#[test]
fn criterion_1_shifted_gldim_never_grows() {
    criterion(1, "gldim End(T_k) <= gldim for all k <= domdim", || {
        let started = std::time::Instant::now();
        for (name, alg) in corpus() {
            let p = profile(&alg, CAP).map_err(|e| format!("{name}: {e}"))?;
            if p.gldim.exact().is_none() {
                continue;
            }
            for k in 0..=p.domdim.lower() {
                let r = shift_gldim_report(&alg, k, CAP, SEED)
                    .map_err(|e| format!("{name} k={k}: {e}"))?;
                if r.holds != Some(true) {
                    return Err(format!(
                        "{name} k={k}: gldim Γ {} vs gldim Λ {}",
                        r.gldim_gamma, r.gldim_lambda
                    ));
                }
            }
        }
        let secs = started.elapsed().as_secs();
        if secs >= 300 {
            return Err(format!("corpus sweep took {secs} s, budget is 300"));
        }
        Ok(())
    });
}

#[test]
fn criterion_2_auslander_of_dual_numbers_instance() {
    criterion(2, "Auslander algebra of k[x]/(x^2) oracle", || {
        let (_, alg) = corpus()
            .into_iter()
            .find(|(n, _)| n == "ausl_kx2")
            .ok_or("ausl_kx2 missing from corpus")?;
        let p = profile(&alg, CAP).map_err(|e| e.to_string())?;
        if p.gldim != Bound::Exact(2) || p.domdim != Bound::Exact(2) {
            return Err(format!("profile gldim {} domdim {}", p.gldim, p.domdim));
        }
        if p.canonical_degree != Bound::Exact(2) {
            return Err(format!("canonical degree {}", p.canonical_degree));
        }
        let sd = shifted_module(&alg, 1, CAP, SEED).map_err(|e| e.to_string())?;
        verify_tilting(&sd, CAP).map_err(|e| format!("certificate: {e}"))?;
        let sa = endomorphism_algebra(&sd).map_err(|e| e.to_string())?;
        if sa.gamma.vertex_count() != 2 {
            return Err(format!("{} simples in End(T_1)", sa.gamma.vertex_count()));
        }
        let gg = profile(&sa.gamma, CAP).map_err(|e| e.to_string())?.gldim;
        if gg != Bound::Exact(2) {
            return Err(format!("gldim End(T_1) = {gg}, oracle says 2"));
        }
        Ok(())
    });
}

#[test]
fn criterion_3_transferred_bound_harness() {
    criterion(3, "order-layer verdicts for d in 0..n, k = 1", || {
        let mut rows = 0usize;
        for (name, alg) in corpus() {
            let p = profile(&alg, CAP).map_err(|e| format!("{name}: {e}"))?;
            let Some(n) = p.canonical_degree.exact() else { continue };
            if p.gldim.exact().is_none() || p.domdim.lower() < 1 {
                continue;
            }
            for d in 0..n {
                let spec = TensorOrderSpec {
                    base: alg.clone(),
                    krull_dim: d,
                };
                let tr = theorem_report(&spec, 1, CAP, SEED)
                    .map_err(|e| format!("{name} d={d}: must not crash: {e}"))?;
                rows += 1;
                match (&tr.verdict, d) {
                    (OrderVerdict::Pass, _) => {}
                    (OrderVerdict::ExperimentalFail, d) if d >= 1 => {}
                    (v, _) => return Err(format!("{name} d={d}: verdict {v:?}")),
                }
            }
        }
        if rows == 0 {
            return Err("no order rows emitted".into());
        }
        Ok(())
    });
}

#[test]
fn criterion_4_end_of_generator_cogenerator_has_domdim_two() {
    criterion(4, "domdim End(Λ ⊕ DΛ) >= 2, plus the k[x]/(x^2) reconstruction", || {
        for (name, alg) in corpus() {
            let reg = ModuleRep::regular(&alg);
            let dual = ModuleRep::regular(&alg.opposite()).dualize();
            let (m, _) = direct_sum(&[&reg, &dual]);
            let r = generator_cogenerator_check(&m, CAP, SEED)
                .map_err(|e| format!("{name}: {e}"))?;
            if !r.passed || r.domdim_end.lower() < 2 {
                return Err(format!("{name}: domdim End = {}", r.domdim_end));
            }
        }
        // End(k[x]/(x^2) ⊕ k) is the Auslander algebra of k[x]/(x^2)
        let (_, dn) = corpus()
            .into_iter()
            .find(|(n, _)| n == "loop_sq")
            .ok_or("loop_sq missing from corpus")?;
        let cat = catalog(&dn).map_err(|e| e.to_string())?;
        let reg = ModuleRep::regular(&dn);
        let (m, _) = direct_sum(&[&reg, &cat.simples[0]]);
        let r = generator_cogenerator_check(&m, CAP, SEED).map_err(|e| e.to_string())?;
        if r.end_dim != 5 || r.domdim_end != Bound::Exact(2) {
            return Err(format!(
                "End(k[x]/x² ⊕ k): dim {}, domdim {}",
                r.end_dim, r.domdim_end
            ));
        }
        Ok(())
    });
}

#[test]
fn criterion_5_transported_complexes_stay_narrow() {
    criterion(5, "cohomology vanishing below -k and width <= n + 1", || {
        for (name, alg) in corpus() {
            let p = profile(&alg, CAP).map_err(|e| format!("{name}: {e}"))?;
            if p.gldim.exact().is_none() {
                continue;
            }
            let n = p
                .canonical_degree
                .exact()
                .ok_or_else(|| format!("{name}: inexact canonical degree"))?;
            for k in 0..=p.domdim.lower() {
                let sd = shifted_module(&alg, k, CAP, SEED)
                    .map_err(|e| format!("{name} k={k}: {e}"))?;
                let simples = endomorphism_algebra(&sd)
                    .map_err(|e| format!("{name} k={k}: {e}"))?
                    .gamma
                    .vertex_count();
                for s in 0..simples {
                    let r = mechanism_check(&alg, k, s, CAP, SEED)
                        .map_err(|e| format!("{name} k={k} s={s}: {e}"))?;
                    if !matches!(r.verdict, MechanismVerdict::Pass) {
                        return Err(format!("{name} k={k} s={s}: {:?}", r.verdict));
                    }
                    for (i, h) in r.cohomology.iter().enumerate() {
                        if i > k && *h != 0 {
                            return Err(format!("{name} k={k} s={s}: H_{i} = {h}"));
                        }
                    }
                    if r.width > n + 1 {
                        return Err(format!("{name} k={k} s={s}: width {}", r.width));
                    }
                }
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_6_structural_invariants() {
    criterion(6, "duality, rank-nullity, dimension agreement, determinism", || {
        for (name, alg) in corpus() {
            let cat = catalog(&alg).map_err(|e| format!("{name}: {e}"))?;
            // Hom/Ext dimension symmetry under duality, degrees <= 4
            let reg = ModuleRep::regular(&alg);
            let mut mods: Vec<ModuleRep> = cat.simples.clone();
            mods.push(reg.clone());
            for m in &mods {
                for w in &mods {
                    let lhs = ext_dims(m, w, 4).map_err(|e| format!("{name}: {e}"))?;
                    let rhs = ext_dims(&w.dualize(), &m.dualize(), 4)
                        .map_err(|e| format!("{name}: {e}"))?;
                    if lhs != rhs {
                        return Err(format!("{name}: ext duality {lhs:?} vs {rhs:?}"));
                    }
                }
            }
            // rank + nullity = dim of the source on cover factorizations
            for s in &cat.simples {
                let (_, epi, _) = cover(s).map_err(|e| format!("{name}: {e}"))?;
                let f = morphism_factor(&epi).map_err(|e| format!("{name}: {e}"))?;
                if f.kernel.dim + f.image.dim != epi.source.dim {
                    return Err(format!(
                        "{name}: rank-nullity {} + {} != {}",
                        f.kernel.dim, f.image.dim, epi.source.dim
                    ));
                }
                if f.cokernel.dim != epi.target.dim - f.image.dim {
                    return Err(format!("{name}: cokernel dimension off"));
                }
            }
            // finite gldim forces gldim = injdim = canonical degree
            let p = profile(&alg, CAP).map_err(|e| format!("{name}: {e}"))?;
            if let Some(g) = p.gldim.exact() {
                if p.injdim != Bound::Exact(g) || p.canonical_degree != Bound::Exact(g) {
                    return Err(format!(
                        "{name}: gldim {g}, injdim {}, n {}",
                        p.injdim, p.canonical_degree
                    ));
                }
            }
            // decomposition determinism across seeds
            let dual = ModuleRep::regular(&alg.opposite()).dualize();
            let (m, _) = direct_sum(&[&reg, &dual]);
            let dims = |seed: u64| -> Result<Vec<usize>, String> {
                let reps = add_class_representatives(&m, seed)
                    .map_err(|e| format!("{name}: {e}"))?;
                let mut d: Vec<usize> = reps.iter().map(|r| r.dim).collect();
                d.sort_unstable();
                Ok(d)
            };
            if dims(0)? != dims(1)? {
                return Err(format!("{name}: decomposition depends on the seed"));
            }
        }
        Ok(())
    });
}
