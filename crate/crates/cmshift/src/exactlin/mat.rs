//! Dense exact matrices with reduced row echelon form, kernels and solvers.

use crate::error::Error;
use crate::exactlin::scalar::{primitive_part, FieldSpec, Scalar};

/// A dense row-major matrix over Q or F_p.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub field: FieldSpec,
    entries: Vec<Scalar>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize, field: FieldSpec) -> Mat {
        Mat { rows, cols, field, entries: vec![field.zero(); rows * cols] }
    }

    pub fn identity(n: usize, field: FieldSpec) -> Mat {
        let mut m = Mat::zeros(n, n, field);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>, cols: usize, field: FieldSpec) -> Mat {
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            entries.extend(r);
        }
        Mat { rows: nrows, cols, field, entries }
    }

    pub fn from_fn(rows: usize, cols: usize, field: FieldSpec, f: impl Fn(usize, usize) -> Scalar) -> Mat {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Mat { rows, cols, field, entries }
    }

    /// Convenience constructor from integer literals.
    pub fn from_i64(rows: usize, cols: usize, field: FieldSpec, data: &[i64]) -> Mat {
        assert_eq!(data.len(), rows * cols);
        Mat {
            rows,
            cols,
            field,
            entries: data.iter().map(|n| field.from_i64(*n)).collect(),
        }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<Scalar> {
        self.row(i).to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, self.field, |i, j| self.at(j, i).clone())
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.add(b))
            .collect();
        Mat { rows: self.rows, cols: self.cols, field: self.field, entries }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.sub(b))
            .collect();
        Mat { rows: self.rows, cols: self.cols, field: self.field, entries }
    }

    pub fn scale(&self, c: &Scalar) -> Mat {
        let entries = self.entries.iter().map(|a| a.mul(c)).collect();
        Mat { rows: self.rows, cols: self.cols, field: self.field, entries }
    }

    pub fn matmul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matmul");
        let mut out = Mat::zeros(self.rows, other.cols, self.field);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.at(i, j).fma(a, other.at(k, j));
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    /// Stack vertically.
    pub fn vstack(blocks: &[&Mat], cols: usize, field: FieldSpec) -> Mat {
        let mut entries = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols);
            rows += b.rows;
            entries.extend(b.entries.iter().cloned());
        }
        Mat { rows, cols, field, entries }
    }

    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Mat {
        Mat::from_fn(r1 - r0, c1 - c0, self.field, |i, j| self.at(r0 + i, c0 + j).clone())
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.at(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = m.at(r, c).inv();
            for j in c..m.cols {
                let v = m.at(r, j).mul(&inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && !m.at(i, c).is_zero() {
                    let f = m.at(i, c).neg();
                    for j in c..m.cols {
                        let v = m.at(i, j).fma(&f, m.at(r, j));
                        m.set(i, j, v);
                    }
                    // keep rationals integral between eliminations
                    if matches!(m.field, FieldSpec::Rationals) {
                        let row = &mut m.entries[i * m.cols..(i + 1) * m.cols];
                        primitive_part(row);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        // rows were primitive-normalized; rescale pivot rows to leading 1
        for (r, &c) in pivots.iter().enumerate() {
            if !m.at(r, c).is_one() {
                let inv = m.at(r, c).inv();
                for j in 0..m.cols {
                    let v = m.at(r, j).mul(&inv);
                    m.set(r, j, v);
                }
            }
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical basis of the row space: nonzero rows of the RREF.
    pub fn row_basis(&self) -> Mat {
        let (r, piv) = self.rref();
        r.submatrix(0, piv.len(), 0, self.cols)
    }

    /// Canonical basis of {x : x * self = 0}, one row per basis vector.
    pub fn left_kernel(&self) -> Mat {
        self.transpose().right_kernel_rows()
    }

    /// Canonical basis of {v : self * v^T = 0}, returned as rows.
    pub fn right_kernel_rows(&self) -> Mat {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Mat::zeros(free.len(), self.cols, self.field);
        for (k, &fc) in free.iter().enumerate() {
            out.set(k, fc, self.field.one());
            for (pr, &pc) in pivots.iter().enumerate() {
                out.set(k, pc, r.at(pr, fc).neg());
            }
        }
        out
    }

    /// Kernel (as columns) and image (as columns) of the matrix, per the
    /// column-vector convention: self * kernel_col = 0.
    pub fn kernel_image(&self) -> (Mat, Mat) {
        let kernel = self.right_kernel_rows().transpose();
        // image = column space: echelonize the transpose, return as columns
        let image = self.transpose().row_basis().transpose();
        (kernel, image)
    }

    /// Solve self * x = b for x (canonical solution: free variables zero).
    pub fn linear_solve(&self, b: &Mat) -> Result<Option<Mat>, Error> {
        if self.rows != b.rows {
            return Err(Error::Dimension(format!(
                "linear_solve: {} rows vs {} rows",
                self.rows, b.rows
            )));
        }
        // augment and reduce
        let aug = Mat::from_fn(self.rows, self.cols + b.cols, self.field, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                b.at(i, j - self.cols).clone()
            }
        });
        let (r, pivots) = aug.rref();
        // inconsistent iff a pivot lands in the augmented block
        if pivots.iter().any(|&c| c >= self.cols) {
            return Ok(None);
        }
        let mut x = Mat::zeros(self.cols, b.cols, self.field);
        for (pr, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, r.at(pr, self.cols + j).clone());
            }
        }
        Ok(Some(x))
    }

    /// Solve x * self = b (row-vector systems).
    pub fn solve_left(&self, b: &Mat) -> Result<Option<Mat>, Error> {
        Ok(self
            .transpose()
            .linear_solve(&b.transpose())?
            .map(|x| x.transpose()))
    }

    /// Inverse of a square matrix, if invertible.
    pub fn inverse(&self) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let x = self.linear_solve(&Mat::identity(self.rows, self.field)).unwrap()?;
        if self.matmul(&x) == Mat::identity(self.rows, self.field) {
            Some(x)
        } else {
            None
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Flatten to a single row (used to coordinatize spaces of matrices).
    pub fn flatten_row(&self) -> Vec<Scalar> {
        self.entries.clone()
    }

    pub fn from_flat(rows: usize, cols: usize, field: FieldSpec, entries: Vec<Scalar>) -> Mat {
        assert_eq!(entries.len(), rows * cols);
        Mat { rows, cols, field, entries }
    }

    pub fn trace(&self) -> Scalar {
        assert_eq!(self.rows, self.cols);
        let mut t = self.field.zero();
        for i in 0..self.rows {
            t = t.add(self.at(i, i));
        }
        t
    }
}

impl std::fmt::Display for Mat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Solve-for-coordinates helper: fixes a basis (rows) of a subspace and
/// expresses vectors in it.  Used for hom spaces and subalgebra bases.
#[derive(Debug, Clone)]
pub struct CoordSolver {
    basis: Mat,
    rref: Mat,
    pivots: Vec<usize>,
    /// transform[i] = coordinates of rref row i in the original basis
    transform: Mat,
}

impl CoordSolver {
    /// `basis` rows must be linearly independent.
    pub fn new(basis: Mat) -> CoordSolver {
        let n = basis.rows;
        let field = basis.field;
        // reduce [basis | I] so the right block tracks row operations
        let aug = Mat::from_fn(n, basis.cols + n, field, |i, j| {
            if j < basis.cols {
                basis.at(i, j).clone()
            } else if j - basis.cols == i {
                field.one()
            } else {
                field.zero()
            }
        });
        let (r, piv) = aug.rref();
        let pivots: Vec<usize> = piv.into_iter().filter(|&c| c < basis.cols).collect();
        assert_eq!(pivots.len(), n, "basis rows are dependent");
        let rref = r.submatrix(0, n, 0, basis.cols);
        let transform = r.submatrix(0, n, basis.cols, basis.cols + n);
        CoordSolver { basis, rref, pivots, transform }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    /// Coordinates of `v` in the basis, or None if v is outside the span.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let field = self.basis.field;
        let mut residual = v.to_vec();
        let mut coords = vec![field.zero(); self.basis.rows];
        for (r, &c) in self.pivots.iter().enumerate() {
            let coeff = residual[c].clone();
            if coeff.is_zero() {
                continue;
            }
            for j in 0..residual.len() {
                let adj = residual[j].fma(&coeff.neg(), self.rref.at(r, j));
                residual[j] = adj;
            }
            for k in 0..self.basis.rows {
                coords[k] = coords[k].fma(&coeff, self.transform.at(r, k));
            }
        }
        if residual.iter().all(|s| s.is_zero()) {
            Some(coords)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f101() -> FieldSpec {
        FieldSpec::Prime(101)
    }

    #[test]
    fn rref_identity() {
        let m = Mat::identity(3, FieldSpec::Rationals);
        let (r, piv) = m.rref();
        assert_eq!(r, m);
        assert_eq!(piv, vec![0, 1, 2]);
    }

    #[test]
    fn rref_rank_one_f2() {
        let f2 = FieldSpec::Prime(2);
        let m = Mat::from_i64(2, 2, f2, &[1, 1, 1, 1]);
        let (r, piv) = m.rref();
        assert_eq!(r, Mat::from_i64(2, 2, f2, &[1, 1, 0, 0]));
        assert_eq!(piv, vec![0]);
    }

    #[test]
    fn rref_proportional_rows_q() {
        let m = Mat::from_i64(2, 2, FieldSpec::Rationals, &[2, 4, 1, 2]);
        let (r, piv) = m.rref();
        assert_eq!(r, Mat::from_i64(2, 2, FieldSpec::Rationals, &[1, 2, 0, 0]));
        assert_eq!(piv, vec![0]);
    }

    #[test]
    fn kernel_image_zero_and_identity() {
        let z = Mat::zeros(2, 2, f101());
        let (k, im) = z.kernel_image();
        assert_eq!(k.cols, 2);
        assert_eq!(im.cols, 0);
        let id = Mat::identity(4, f101());
        let (k, im) = id.kernel_image();
        assert_eq!(k.cols, 0);
        assert_eq!(im.cols, 4);
    }

    #[test]
    fn kernel_of_ones_q() {
        let m = Mat::from_i64(2, 2, FieldSpec::Rationals, &[1, 1, 1, 1]);
        let (k, im) = m.kernel_image();
        assert_eq!(k.cols, 1);
        assert_eq!(im.cols, 1);
        assert!(m.matmul(&k).is_zero());
        // kernel spanned by (1,-1) up to normalization
        assert_eq!(k.at(0, 0).add(k.at(1, 0)), FieldSpec::Rationals.zero());
    }

    #[test]
    fn solve_canonical_free_variable() {
        let a = Mat::from_i64(1, 2, FieldSpec::Rationals, &[1, 1]);
        let b = Mat::from_i64(1, 1, FieldSpec::Rationals, &[2]);
        let x = a.linear_solve(&b).unwrap().unwrap();
        assert_eq!(x, Mat::from_i64(2, 1, FieldSpec::Rationals, &[2, 0]));
    }

    #[test]
    fn solve_inconsistent() {
        let a = Mat::from_i64(2, 1, f101(), &[1, 1]);
        let b = Mat::from_i64(2, 1, f101(), &[1, 2]);
        assert!(a.linear_solve(&b).unwrap().is_none());
    }

    #[test]
    fn solve_dimension_mismatch() {
        let a = Mat::identity(2, f101());
        let b = Mat::zeros(3, 1, f101());
        assert!(a.linear_solve(&b).is_err());
    }

    #[test]
    fn coord_solver_roundtrip() {
        let basis = Mat::from_i64(2, 3, f101(), &[1, 2, 0, 0, 1, 5]);
        let cs = CoordSolver::new(basis.clone());
        let v: Vec<Scalar> = (0..3)
            .map(|j| basis.at(0, j).add(&basis.at(1, j).mul(&f101().from_i64(7))))
            .collect();
        let c = cs.coords(&v).unwrap();
        assert_eq!(c[0], f101().one());
        assert_eq!(c[1], f101().from_i64(7));
        assert!(cs.coords(&[f101().one(), f101().zero(), f101().zero()]).is_none());
    }
}
