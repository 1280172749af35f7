//! Bound quiver algebras: kQ/I from a quiver and admissible relations.
//!
//! Paths compose left to right (p then q is written pq).  The basis is
//! computed degreewise: paths are enumerated by length, the two-sided ideal
//! spanned by all p·r·q is row-reduced with longer paths eliminated first,
//! and construction stops at the first length where every path of that
//! length reduces to zero.

use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::{BasedAlgebra, MultTable, Provenance};
use crate::error::Error;
use crate::exactlin::{FieldSpec, Mat, Scalar};

pub const DEFAULT_NILPOTENCY_CAP: usize = 30;

/// Hard limit on enumerated paths; exceeding it means the quotient cannot
/// be certified finite-dimensional at desk scale.
const PATH_LIMIT: usize = 200_000;

#[derive(Debug, Clone)]
pub struct Arrow {
    pub name: String,
    /// 0-indexed vertices
    pub source: usize,
    pub target: usize,
}

#[derive(Debug, Clone)]
pub struct Quiver {
    pub vertex_count: usize,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn validate(&self) -> Result<(), Error> {
        if self.vertex_count == 0 {
            return Err(Error::BadQuiver("quiver needs at least one vertex".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for a in &self.arrows {
            if a.name.is_empty() || !seen.insert(a.name.as_str()) {
                return Err(Error::BadQuiver(format!(
                    "arrow name {:?} is empty or repeated",
                    a.name
                )));
            }
            if a.source >= self.vertex_count || a.target >= self.vertex_count {
                return Err(Error::BadQuiver(format!(
                    "arrow {:?} endpoints out of range",
                    a.name
                )));
            }
        }
        Ok(())
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }
}

/// A linear combination of parallel paths (all sharing source and target),
/// each of length at least 2.  Paths are sequences of arrow indices.
#[derive(Debug, Clone)]
pub struct RelationCombo {
    pub terms: Vec<(Scalar, Vec<usize>)>,
}

impl RelationCombo {
    /// Build a relation from arrow names and validate composability.
    pub fn from_names(
        q: &Quiver,
        terms: &[(Scalar, Vec<String>)],
        field: FieldSpec,
    ) -> Result<RelationCombo, Error> {
        let mut out = Vec::with_capacity(terms.len());
        for (c, names) in terms {
            if c.field() != field {
                return Err(Error::InconsistentRelation(
                    "coefficient field mismatch".into(),
                ));
            }
            let mut path = Vec::with_capacity(names.len());
            for n in names {
                path.push(q.arrow_index(n).ok_or_else(|| {
                    Error::InconsistentRelation(format!("unknown arrow {n:?}"))
                })?);
            }
            out.push((c.clone(), path));
        }
        let combo = RelationCombo { terms: out };
        combo.validate(q)?;
        Ok(combo)
    }

    pub fn validate(&self, q: &Quiver) -> Result<(), Error> {
        if self.terms.is_empty() {
            return Err(Error::InconsistentRelation("empty relation".into()));
        }
        let mut st: Option<(usize, usize)> = None;
        for (c, path) in &self.terms {
            if c.is_zero() {
                return Err(Error::InconsistentRelation("zero coefficient".into()));
            }
            if path.len() < 2 {
                return Err(Error::InconsistentRelation(
                    "relation path shorter than 2".into(),
                ));
            }
            for w in path.windows(2) {
                if q.arrows[w[0]].target != q.arrows[w[1]].source {
                    return Err(Error::InconsistentRelation(
                        "non-composable arrows in relation path".into(),
                    ));
                }
            }
            let here = (q.arrows[path[0]].source, q.arrows[*path.last().unwrap()].target);
            match st {
                None => st = Some(here),
                Some(s) if s != here => {
                    return Err(Error::InconsistentRelation(
                        "relation terms do not share source and target".into(),
                    ))
                }
                _ => {}
            }
        }
        Ok(())
    }

    fn source(&self, q: &Quiver) -> usize {
        q.arrows[self.terms[0].1[0]].source
    }

    fn target(&self, q: &Quiver) -> usize {
        q.arrows[*self.terms[0].1.last().unwrap()].target
    }

    fn max_len(&self) -> usize {
        self.terms.iter().map(|(_, p)| p.len()).max().unwrap_or(0)
    }
}

/// All nontrivial paths up to a working length, with lookup.
struct PathSpace {
    /// by_length[l - 1] = paths of length l, each a sequence of arrow indices
    by_length: Vec<Vec<Vec<usize>>>,
    index: HashMap<Vec<usize>, usize>,
    /// flat order: (length desc, lex asc) so row reduction eliminates the
    /// longest paths first
    ordered: Vec<Vec<usize>>,
}

impl PathSpace {
    fn new(q: &Quiver) -> PathSpace {
        let mut arrows: Vec<Vec<usize>> = (0..q.arrows.len()).map(|i| vec![i]).collect();
        arrows.sort();
        let mut ps = PathSpace {
            by_length: vec![arrows],
            index: HashMap::new(),
            ordered: Vec::new(),
        };
        ps.reindex();
        ps
    }

    fn extend(&mut self, q: &Quiver) -> Result<(), Error> {
        let last = self.by_length.last().unwrap();
        let mut next = Vec::new();
        for p in last {
            let end = q.arrows[*p.last().unwrap()].target;
            for (i, a) in q.arrows.iter().enumerate() {
                if a.source == end {
                    let mut np = p.clone();
                    np.push(i);
                    next.push(np);
                }
            }
        }
        next.sort();
        self.by_length.push(next);
        if self.total() > PATH_LIMIT {
            return Err(Error::BadQuiver(
                "path space exceeds the working limit; add relations or lower the cap".into(),
            ));
        }
        self.reindex();
        Ok(())
    }

    fn total(&self) -> usize {
        self.by_length.iter().map(|v| v.len()).sum()
    }

    fn reindex(&mut self) {
        self.ordered.clear();
        for lv in self.by_length.iter().rev() {
            self.ordered.extend(lv.iter().cloned());
        }
        self.index = self
            .ordered
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
    }
}

/// Reduce a coordinate row modulo an RREF row space.
fn reduce_row(rref: &Mat, pivots: &[usize], v: &mut [Scalar]) {
    for (r, &pc) in pivots.iter().enumerate() {
        let c = v[pc].clone();
        if c.is_zero() {
            continue;
        }
        let nc = c.neg();
        for j in pc..v.len() {
            v[j] = v[j].fma(&nc, rref.at(r, j));
        }
    }
}

pub fn build_based_algebra(
    q: &Quiver,
    relations: &[RelationCombo],
    field: FieldSpec,
    nilpotency_cap: usize,
) -> Result<Arc<BasedAlgebra>, Error> {
    q.validate()?;
    for r in relations {
        r.validate(q)?;
    }
    let cap = nilpotency_cap.max(2);

    let mut space = PathSpace::new(q);
    let mut found: Option<(usize, Mat, Vec<usize>)> = None;
    for working_len in 2..=cap {
        space.extend(q)?;
        let dim = space.ordered.len();
        // two-sided ideal span within the working length: p · r · q for all
        // composable path pairs keeping every term inside the bound
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for rel in relations {
            let (rs, rt, rmax) = (rel.source(q), rel.target(q), rel.max_len());
            if rmax > working_len {
                continue;
            }
            let lefts = multipliers(q, &space, EndFilter::Target(rs), working_len - rmax);
            for lp in lefts {
                let rem = working_len - rmax - lp.len();
                let rights = multipliers(q, &space, EndFilter::Source(rt), rem);
                for rp in rights {
                    let mut row = vec![field.zero(); dim];
                    for (c, term) in &rel.terms {
                        let mut full = lp.clone();
                        full.extend_from_slice(term);
                        full.extend_from_slice(&rp);
                        let col = space.index[&full];
                        row[col] = row[col].add(c);
                    }
                    if row.iter().any(|s| !s.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
        let ideal = Mat::from_rows(rows, dim, field);
        let (rref, pivots) = ideal.rref();
        // stop when every path of the working length dies in the quotient
        let all_dead = space.by_length[working_len - 1].iter().all(|p| {
            let mut v = vec![field.zero(); dim];
            v[space.index[p]] = field.one();
            reduce_row(&rref, &pivots, &mut v);
            v.iter().all(|s| s.is_zero())
        });
        if all_dead {
            found = Some((working_len, rref, pivots));
            break;
        }
    }
    let Some((bound, rref, pivots)) = found else {
        return Err(Error::NotAdmissible { cap });
    };

    // surviving basis: trivial paths, then non-pivot path classes sorted by
    // (length asc, lex)
    let mut surviving: Vec<Vec<usize>> = (0..space.ordered.len())
        .filter(|c| !pivots.contains(c))
        .map(|c| space.ordered[c].clone())
        .collect();
    surviving.sort_by_key(|p| (p.len(), p.clone()));
    debug_assert!(surviving.iter().all(|p| p.len() < bound));

    let nv = q.vertex_count;
    let dim = nv + surviving.len();
    let basis_pos: HashMap<Vec<usize>, usize> = surviving
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), nv + i))
        .collect();

    // normal form of an arbitrary enumerated path in basis coordinates
    let nf = |path: &[usize]| -> Vec<Scalar> {
        let mut v = vec![field.zero(); space.ordered.len()];
        v[space.index[path]] = field.one();
        reduce_row(&rref, &pivots, &mut v);
        let mut out = vec![field.zero(); dim];
        for (c, s) in v.into_iter().enumerate() {
            if !s.is_zero() {
                out[basis_pos[&space.ordered[c]]] = s;
            }
        }
        out
    };

    // append_mat[a]: right multiplication by the arrow a on basis coordinates
    let append_mat: Vec<Mat> = (0..q.arrows.len())
        .map(|a| {
            let mut m = Mat::zeros(dim, dim, field);
            for i in 0..dim {
                let composes = if i < nv {
                    q.arrows[a].source == i
                } else {
                    let p = &surviving[i - nv];
                    q.arrows[*p.last().unwrap()].target == q.arrows[a].source
                };
                if !composes {
                    continue;
                }
                let mut path: Vec<usize> =
                    if i < nv { Vec::new() } else { surviving[i - nv].clone() };
                path.push(a);
                for (k, s) in nf(&path).into_iter().enumerate() {
                    m.set(i, k, s);
                }
            }
            m
        })
        .collect();

    // projection onto paths ending at a given vertex = right mult by e_v
    let proj = |v: usize| -> Mat {
        Mat::from_fn(dim, dim, field, |i, k| {
            let tgt = if i < nv {
                i
            } else {
                q.arrows[*surviving[i - nv].last().unwrap()].target
            };
            if i == k && tgt == v {
                field.one()
            } else {
                field.zero()
            }
        })
    };

    let mut rmul = Vec::with_capacity(dim);
    for v in 0..nv {
        rmul.push(proj(v));
    }
    for p in &surviving {
        let mut m = proj(q.arrows[p[0]].source);
        for &a in p {
            m = m.matmul(&append_mat[a]);
        }
        rmul.push(m);
    }

    let mut unit = vec![field.zero(); dim];
    for v in unit.iter_mut().take(nv) {
        *v = field.one();
    }
    let idempotents: Vec<Vec<Scalar>> = (0..nv)
        .map(|v| {
            let mut e = vec![field.zero(); dim];
            e[v] = field.one();
            e
        })
        .collect();

    let mut names: Vec<String> = (1..=nv).map(|v| format!("e{v}")).collect();
    for p in &surviving {
        let s: Vec<&str> = p.iter().map(|&a| q.arrows[a].name.as_str()).collect();
        names.push(s.join("*"));
    }

    let table = MultTable { field, dim, rmul, unit };
    BasedAlgebra::new(table, idempotents, Provenance::QuiverBuilt, names)
}

enum EndFilter {
    Target(usize),
    Source(usize),
}

/// Paths (including the empty path) usable as a one-sided multiplier of a
/// relation: filtered by the matching endpoint, length at most `max_len`.
fn multipliers(
    q: &Quiver,
    space: &PathSpace,
    filter: EndFilter,
    max_len: usize,
) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for lv in space.by_length.iter().take(max_len) {
        for p in lv {
            let ok = match filter {
                EndFilter::Target(v) => q.arrows[*p.last().unwrap()].target == v,
                EndFilter::Source(v) => q.arrows[p[0]].source == v,
            };
            if ok {
                out.push(p.clone());
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f101() -> FieldSpec {
        FieldSpec::Prime(101)
    }

    fn a2(field: FieldSpec) -> Arc<BasedAlgebra> {
        let q = Quiver {
            vertex_count: 2,
            arrows: vec![Arrow { name: "a".into(), source: 0, target: 1 }],
        };
        build_based_algebra(&q, &[], field, DEFAULT_NILPOTENCY_CAP).unwrap()
    }

    #[test]
    fn a2_has_dimension_three() {
        let alg = a2(f101());
        assert_eq!(alg.dim(), 3);
        assert_eq!(alg.basis_names, vec!["e1", "e2", "a"]);
        assert_eq!(alg.radical().basis.rows, 1);
        assert_eq!(alg.radical().loewy_length, 2);
        assert_eq!(alg.cartan_matrix(), vec![vec![1, 1], vec![0, 1]]);
    }

    #[test]
    fn dual_numbers_from_loop() {
        let q = Quiver {
            vertex_count: 1,
            arrows: vec![Arrow { name: "x".into(), source: 0, target: 0 }],
        };
        let rel = RelationCombo {
            terms: vec![(f101().one(), vec![0, 0])],
        };
        let alg = build_based_algebra(&q, &[rel], f101(), DEFAULT_NILPOTENCY_CAP).unwrap();
        assert_eq!(alg.dim(), 2);
        assert_eq!(alg.radical().loewy_length, 2);
    }

    #[test]
    fn loop_without_relation_is_rejected() {
        let q = Quiver {
            vertex_count: 1,
            arrows: vec![Arrow { name: "x".into(), source: 0, target: 0 }],
        };
        let err = build_based_algebra(&q, &[], f101(), 8).unwrap_err();
        assert!(matches!(err, Error::NotAdmissible { cap: 8 }));
    }

    #[test]
    fn auslander_algebra_of_dual_numbers() {
        // 1 ⇄ 2 with the composite through vertex 1 set to zero
        let q = Quiver {
            vertex_count: 2,
            arrows: vec![
                Arrow { name: "a".into(), source: 0, target: 1 },
                Arrow { name: "b".into(), source: 1, target: 0 },
            ],
        };
        let rel = RelationCombo {
            terms: vec![(f101().one(), vec![0, 1])], // a then b: 1 → 1
        };
        let alg = build_based_algebra(&q, &[rel], f101(), DEFAULT_NILPOTENCY_CAP).unwrap();
        assert_eq!(alg.dim(), 5);
        assert_eq!(alg.radical().basis.rows, 3);
        assert_eq!(alg.radical().loewy_length, 3);
        assert_eq!(alg.cartan_matrix(), vec![vec![1, 1], vec![1, 2]]);
    }

    #[test]
    fn commutative_square_identifies_diagonals() {
        // 1 → 2 → 4 and 1 → 3 → 4, with the two composites equal
        let q = Quiver {
            vertex_count: 4,
            arrows: vec![
                Arrow { name: "a".into(), source: 0, target: 1 },
                Arrow { name: "b".into(), source: 0, target: 2 },
                Arrow { name: "c".into(), source: 1, target: 3 },
                Arrow { name: "d".into(), source: 2, target: 3 },
            ],
        };
        let rel = RelationCombo {
            terms: vec![
                (f101().one(), vec![0, 2]),               // ac
                (f101().from_i64(-1), vec![1, 3]),        // -bd
            ],
        };
        let alg = build_based_algebra(&q, &[rel], f101(), DEFAULT_NILPOTENCY_CAP).unwrap();
        // 4 trivial + 4 arrows + 1 shared diagonal class
        assert_eq!(alg.dim(), 9);
    }

    #[test]
    fn relation_validation() {
        let q = Quiver {
            vertex_count: 2,
            arrows: vec![Arrow { name: "a".into(), source: 0, target: 1 }],
        };
        // a followed by a is not composable
        let bad = RelationCombo {
            terms: vec![(f101().one(), vec![0, 0])],
        };
        assert!(bad.validate(&q).is_err());
        let short = RelationCombo {
            terms: vec![(f101().one(), vec![0])],
        };
        assert!(short.validate(&q).is_err());
    }

    #[test]
    fn opposite_involution() {
        let alg = a2(f101());
        let op = alg.opposite();
        assert_eq!(op.dim(), 3);
        let transposed: Vec<Vec<usize>> = {
            let c = alg.cartan_matrix();
            (0..2).map(|i| (0..2).map(|j| c[j][i]).collect()).collect()
        };
        assert_eq!(op.cartan_matrix(), transposed);
        assert!(Arc::ptr_eq(&op.opposite(), &alg));
    }

    #[test]
    fn commutative_algebra_equals_its_opposite() {
        let q = Quiver {
            vertex_count: 1,
            arrows: vec![Arrow { name: "x".into(), source: 0, target: 0 }],
        };
        let rel = RelationCombo {
            terms: vec![(f101().one(), vec![0, 0, 0])],
        };
        let alg = build_based_algebra(&q, &[rel], f101(), DEFAULT_NILPOTENCY_CAP).unwrap();
        assert_eq!(alg.dim(), 3);
        let op = alg.opposite();
        assert_eq!(op.table.rmul, alg.table.rmul);
    }

    /// Count paths avoiding every monomial generator as a factor, by direct
    /// enumeration; must agree with the quotient dimension for monomial
    /// ideals.
    fn monomial_path_count(q: &Quiver, forbidden: &[Vec<usize>], max_len: usize) -> usize {
        let mut count = q.vertex_count;
        let mut frontier: Vec<Vec<usize>> = (0..q.arrows.len()).map(|i| vec![i]).collect();
        for _ in 0..max_len {
            count += frontier.len();
            let mut next = Vec::new();
            for p in &frontier {
                let end = q.arrows[*p.last().unwrap()].target;
                for (i, a) in q.arrows.iter().enumerate() {
                    if a.source != end {
                        continue;
                    }
                    let mut np = p.clone();
                    np.push(i);
                    let blocked = forbidden
                        .iter()
                        .any(|f| np.windows(f.len()).any(|w| w == f.as_slice()));
                    if !blocked {
                        next.push(np);
                    }
                }
            }
            frontier = next;
        }
        assert!(frontier.is_empty(), "paths survive past the test bound");
        count
    }

    #[test]
    fn monomial_dimensions_match_path_automaton() {
        // Nakayama on linear A4 with all length-2 composites zero
        let q = Quiver {
            vertex_count: 4,
            arrows: vec![
                Arrow { name: "a".into(), source: 0, target: 1 },
                Arrow { name: "b".into(), source: 1, target: 2 },
                Arrow { name: "c".into(), source: 2, target: 3 },
            ],
        };
        let forbidden = vec![vec![0, 1], vec![1, 2]];
        let rels: Vec<RelationCombo> = forbidden
            .iter()
            .map(|f| RelationCombo { terms: vec![(f101().one(), f.clone())] })
            .collect();
        let alg = build_based_algebra(&q, &rels, f101(), DEFAULT_NILPOTENCY_CAP).unwrap();
        assert_eq!(alg.dim(), monomial_path_count(&q, &forbidden, 8));

        // 1 ⇄ 2 with both composites of length 2 zero
        let q2 = Quiver {
            vertex_count: 2,
            arrows: vec![
                Arrow { name: "a".into(), source: 0, target: 1 },
                Arrow { name: "b".into(), source: 1, target: 0 },
            ],
        };
        let forbidden2 = vec![vec![0, 1], vec![1, 0]];
        let rels2: Vec<RelationCombo> = forbidden2
            .iter()
            .map(|f| RelationCombo { terms: vec![(f101().one(), f.clone())] })
            .collect();
        let alg2 = build_based_algebra(&q2, &rels2, f101(), DEFAULT_NILPOTENCY_CAP).unwrap();
        assert_eq!(alg2.dim(), monomial_path_count(&q2, &forbidden2, 8));
    }
}
