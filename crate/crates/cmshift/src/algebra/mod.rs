//! Finite-dimensional algebras presented by structure constants.
//!
//! Elements are coordinate row vectors over a fixed basis.  Right
//! multiplication by basis element j is the matrix `rmul[j]`, so `x * y`
//! is `x · rmul_of(y)` on row vectors; the same convention carries over to
//! right modules.

pub mod idempotents;
pub mod radical;

use std::sync::{Arc, OnceLock, Weak};

use crate::error::Error;
use crate::exactlin::{FieldSpec, Mat, Scalar};

pub use radical::RadicalData;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    QuiverBuilt,
    EndomorphismBuilt,
    Opposite,
}

/// Bare multiplication table: enough structure to do element arithmetic.
#[derive(Debug, Clone)]
pub struct MultTable {
    pub field: FieldSpec,
    pub dim: usize,
    /// rmul[j] = matrix of right multiplication by basis element j
    pub rmul: Vec<Mat>,
    pub unit: Vec<Scalar>,
}

impl MultTable {
    pub fn zero_elem(&self) -> Vec<Scalar> {
        vec![self.field.zero(); self.dim]
    }

    pub fn rmul_of(&self, y: &[Scalar]) -> Mat {
        let mut m = Mat::zeros(self.dim, self.dim, self.field);
        for (j, c) in y.iter().enumerate() {
            if !c.is_zero() {
                m = m.add(&self.rmul[j].scale(c));
            }
        }
        m
    }

    /// Matrix of left multiplication by x acting on row vectors
    /// (row j = coordinates of x * b_j).
    pub fn lmul_of(&self, x: &[Scalar]) -> Mat {
        let rows = (0..self.dim)
            .map(|j| {
                let xr = Mat::from_rows(vec![x.to_vec()], self.dim, self.field);
                xr.matmul(&self.rmul[j]).row_vec(0)
            })
            .collect();
        Mat::from_rows(rows, self.dim, self.field)
    }

    pub fn mul_elems(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let xr = Mat::from_rows(vec![x.to_vec()], self.dim, self.field);
        xr.matmul(&self.rmul_of(y)).row_vec(0)
    }

    fn verify(&self) -> Result<(), Error> {
        for m in &self.rmul {
            if m.rows != self.dim || m.cols != self.dim {
                return Err(Error::BadAlgebra("structure constant shape".into()));
            }
        }
        // associativity on all basis triples: R_{b_j b_k} = R_j R_k
        for j in 0..self.dim {
            for k in 0..self.dim {
                let prod = self.rmul[j].matmul(&self.rmul[k]);
                let mut expected = Mat::zeros(self.dim, self.dim, self.field);
                let jk = self.rmul[k].row(j); // b_j * b_k
                for (m, c) in jk.iter().enumerate() {
                    if !c.is_zero() {
                        expected = expected.add(&self.rmul[m].scale(c));
                    }
                }
                if prod != expected {
                    return Err(Error::BadAlgebra(format!(
                        "associativity fails on basis triple involving ({j}, {k})"
                    )));
                }
            }
        }
        // unit is a two-sided identity
        let ru = self.rmul_of(&self.unit);
        let lu = self.lmul_of(&self.unit);
        let id = Mat::identity(self.dim, self.field);
        if ru != id || lu != id {
            return Err(Error::BadAlgebra("unit is not a two-sided identity".into()));
        }
        Ok(())
    }
}

/// Corner generator of the radical: an element supported in e_a · J · e_b.
#[derive(Debug, Clone)]
pub struct CornerGen {
    pub src: usize,
    pub tgt: usize,
    pub elem: Vec<Scalar>,
}

/// A finite-dimensional algebra with basis, structure constants, unit and a
/// complete set of primitive orthogonal idempotents.
pub struct BasedAlgebra {
    pub table: MultTable,
    pub idempotents: Vec<Vec<Scalar>>,
    pub provenance: Provenance,
    pub basis_names: Vec<String>,
    radical_cache: OnceLock<RadicalData>,
    gens_cache: OnceLock<Vec<CornerGen>>,
    op_cache: OnceLock<Arc<BasedAlgebra>>,
    op_back: Option<Weak<BasedAlgebra>>,
}

impl std::fmt::Debug for BasedAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BasedAlgebra")
            .field("dim", &self.table.dim)
            .field("field", &self.table.field)
            .field("vertices", &self.idempotents.len())
            .field("provenance", &self.provenance)
            .finish()
    }
}

impl BasedAlgebra {
    /// Full construction with all invariants checked: associativity on every
    /// basis triple, two-sided unit, orthogonal primitive idempotents
    /// summing to the unit.
    pub fn new(
        table: MultTable,
        idempotents: Vec<Vec<Scalar>>,
        provenance: Provenance,
        basis_names: Vec<String>,
    ) -> Result<Arc<BasedAlgebra>, Error> {
        table.verify()?;
        let a = Self::new_prechecked(table, idempotents, provenance, basis_names)?;
        Ok(a)
    }

    /// Construction for algebras whose multiplication is associative by
    /// construction (opposites, verified quotients).  Idempotent axioms are
    /// still checked.
    pub(crate) fn new_prechecked(
        table: MultTable,
        idempotents: Vec<Vec<Scalar>>,
        provenance: Provenance,
        basis_names: Vec<String>,
    ) -> Result<Arc<BasedAlgebra>, Error> {
        let names = if basis_names.len() == table.dim {
            basis_names
        } else {
            (0..table.dim).map(|i| format!("b{i}")).collect()
        };
        let alg = BasedAlgebra {
            table,
            idempotents,
            provenance,
            basis_names: names,
            radical_cache: OnceLock::new(),
            gens_cache: OnceLock::new(),
            op_cache: OnceLock::new(),
            op_back: None,
        };
        alg.verify_idempotents()?;
        let arc = Arc::new(alg);
        arc.verify_primitivity()?;
        Ok(arc)
    }

    fn verify_idempotents(&self) -> Result<(), Error> {
        let t = &self.table;
        let mut sum = t.zero_elem();
        for (i, e) in self.idempotents.iter().enumerate() {
            for (k, v) in e.iter().enumerate() {
                sum[k] = sum[k].add(v);
            }
            if t.mul_elems(e, e) != *e {
                return Err(Error::BadAlgebra(format!("idempotent {i} is not idempotent")));
            }
            for (j, f) in self.idempotents.iter().enumerate() {
                if i != j {
                    let ef = t.mul_elems(e, f);
                    if ef.iter().any(|s| !s.is_zero()) {
                        return Err(Error::BadAlgebra(format!(
                            "idempotents {i} and {j} are not orthogonal"
                        )));
                    }
                }
            }
        }
        if sum != t.unit {
            return Err(Error::BadAlgebra("idempotents do not sum to the unit".into()));
        }
        Ok(())
    }

    /// Each corner e A e must be local; for split algebras its semisimple
    /// quotient is one-dimensional.
    fn verify_primitivity(&self) -> Result<(), Error> {
        let rad = self.radical();
        let t = &self.table;
        for e in &self.idempotents {
            // dim of e (A/J) e = dim eAe - dim eJe
            let le = t.lmul_of(e);
            let re = t.rmul_of(e);
            let corner_map = le.matmul(&re);
            let corner_dim = corner_map.rank();
            let eje = rad.basis.matmul(&corner_map);
            let top_dim = corner_dim - eje.rank();
            if top_dim != 1 {
                return Err(Error::NonSplit { dim: top_dim });
            }
        }
        Ok(())
    }

    pub fn field(&self) -> FieldSpec {
        self.table.field
    }

    pub fn dim(&self) -> usize {
        self.table.dim
    }

    pub fn vertex_count(&self) -> usize {
        self.idempotents.len()
    }

    pub fn rmul(&self, j: usize) -> &Mat {
        &self.table.rmul[j]
    }

    /// Radical basis and Loewy length, cached.
    pub fn radical(&self) -> &RadicalData {
        self.radical_cache
            .get_or_init(|| radical::radical_series(&self.table))
    }

    /// Corner components of a lift of a basis of J/J²: together with the
    /// idempotents, these generate the algebra.
    pub fn corner_generators(&self) -> &Vec<CornerGen> {
        self.gens_cache.get_or_init(|| {
            let t = &self.table;
            let rad = self.radical();
            let j1 = &rad.basis;
            if j1.rows == 0 {
                return Vec::new();
            }
            // J^2 row space
            let mut sq_rows = Vec::new();
            for r in 0..j1.rows {
                let prod = j1.matmul(&t.rmul_of(&j1.row_vec(r)));
                for s in 0..prod.rows {
                    sq_rows.push(prod.row_vec(s));
                }
            }
            let j2 = Mat::from_rows(sq_rows, t.dim, t.field).row_basis();
            // lift a basis of J/J2: J rows that extend the J2 row space
            let mut lifted = Vec::new();
            let mut span = j2.clone();
            for r in 0..j1.rows {
                let cand = Mat::vstack(&[&span, &Mat::from_rows(vec![j1.row_vec(r)], t.dim, t.field)], t.dim, t.field);
                let basis = cand.row_basis();
                if basis.rows > span.rows {
                    lifted.push(j1.row_vec(r));
                    span = basis;
                }
            }
            let mut gens = Vec::new();
            for g in lifted {
                let grow = Mat::from_rows(vec![g], t.dim, t.field);
                for (a, ea) in self.idempotents.iter().enumerate() {
                    let left = grow.matmul(&t.lmul_of(ea));
                    for (b, eb) in self.idempotents.iter().enumerate() {
                        let comp = left.matmul(&t.rmul_of(eb));
                        if !comp.is_zero() {
                            gens.push(CornerGen { src: a, tgt: b, elem: comp.row_vec(0) });
                        }
                    }
                }
            }
            gens
        })
    }

    /// The opposite algebra: same basis, structure constants transposed.
    pub fn opposite(self: &Arc<Self>) -> Arc<BasedAlgebra> {
        if let Some(back) = &self.op_back {
            if let Some(orig) = back.upgrade() {
                return orig;
            }
        }
        self.op_cache
            .get_or_init(|| {
                let t = &self.table;
                // rmul in the opposite = lmul here: (R^op_j)[i][k] = c_{ji}^k
                let rmul_op: Vec<Mat> = (0..t.dim)
                    .map(|j| {
                        Mat::from_fn(t.dim, t.dim, t.field, |i, k| t.rmul[i].at(j, k).clone())
                    })
                    .collect();
                let table = MultTable {
                    field: t.field,
                    dim: t.dim,
                    rmul: rmul_op,
                    unit: t.unit.clone(),
                };
                let alg = BasedAlgebra {
                    table,
                    idempotents: self.idempotents.clone(),
                    provenance: Provenance::Opposite,
                    basis_names: self.basis_names.clone(),
                    radical_cache: OnceLock::new(),
                    gens_cache: OnceLock::new(),
                    op_cache: OnceLock::new(),
                    op_back: Some(Arc::downgrade(self)),
                };
                // orthogonality and primitivity transfer: e A^op e = (e A e)^op
                alg.verify_idempotents().expect("opposite preserves idempotents");
                Arc::new(alg)
            })
            .clone()
    }

    /// Cartan matrix: entry (i, j) = multiplicity of the simple S_j as a
    /// composition factor of the projective P_i = e_i A, i.e. the dimension
    /// of the weight space e_i A e_j.
    pub fn cartan_matrix(&self) -> Vec<Vec<usize>> {
        let t = &self.table;
        let n = self.idempotents.len();
        let mut c = vec![vec![0usize; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            let le = t.lmul_of(&self.idempotents[i]);
            for (j, entry) in row.iter_mut().enumerate() {
                let re = t.rmul_of(&self.idempotents[j]);
                *entry = le.matmul(&re).rank();
            }
        }
        c
    }

    /// Total dimension check: dim A = sum of corner dimensions.
    pub fn corner_dimension_sum(&self) -> usize {
        let t = &self.table;
        let mut total = 0;
        for ei in &self.idempotents {
            let le = t.lmul_of(ei);
            for ej in &self.idempotents {
                total += le.matmul(&t.rmul_of(ej)).rank();
            }
        }
        total
    }
}
