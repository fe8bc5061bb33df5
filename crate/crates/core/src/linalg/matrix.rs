use std::fmt;
use std::ops::{Index, Mul};

use rand::Rng;

use super::field::{Field, Scalar};
use super::LinalgError;

/// Dense row-major matrix over an exact [`Field`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Result of [`Matrix::rref`]: `transform * original == reduced`.
#[derive(Clone, Debug)]
pub struct Rref {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
    pub transform: Matrix,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    /// Builds a matrix from row-major integer data, reducing into the field.
    pub fn from_i64(field: Field, rows: usize, cols: usize, values: &[i64]) -> Self {
        assert_eq!(values.len(), rows * cols, "entry count must equal rows*cols");
        Matrix { field, rows, cols, data: values.iter().map(|v| field.from_i64(*v)).collect() }
    }

    pub fn from_rows(field: Field, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let flat: Vec<i64> = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged rows");
                r.iter().copied()
            })
            .collect();
        Self::from_i64(field, rows.len(), cols, &flat)
    }

    pub fn from_scalars(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::Shape(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        if let Some(bad) = data.iter().find(|s| !field.contains(s)) {
            return Err(LinalgError::Parse(format!("entry {bad} is not an element of {field}")));
        }
        Ok(Matrix { field, rows, cols, data })
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { field, rows, cols, data }
    }

    pub fn random<R: Rng + ?Sized>(field: Field, rows: usize, cols: usize, rng: &mut R) -> Self {
        Self::from_fn(field, rows, cols, |_, _| field.random(rng))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        debug_assert!(self.field.contains(&v));
        self.data[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        Self::from_fn(self.field, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let f = self.field;
        Matrix { data: self.data.iter().map(|x| f.mul(x, s)).collect(), ..self.clone() }
    }

    pub fn neg(&self) -> Matrix {
        let f = self.field;
        Matrix { data: self.data.iter().map(|x| f.neg(x)).collect(), ..self.clone() }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in add");
        let f = self.field;
        Matrix {
            data: self.data.iter().zip(&other.data).map(|(a, b)| f.add(a, b)).collect(),
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in sub");
        let f = self.field;
        Matrix {
            data: self.data.iter().zip(&other.data).map(|(a, b)| f.sub(a, b)).collect(),
            ..self.clone()
        }
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in matmul: {:?} * {:?}", self.shape(), other.shape());
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = r * out.cols + c;
                    out.data[idx] = f.add(&out.data[idx], &f.mul(a, b));
                }
            }
        }
        out
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        assert!(rows.end <= self.rows && cols.end <= self.cols);
        Self::from_fn(self.field, rows.len(), cols.len(), |r, c| self.get(rows.start + r, cols.start + c).clone())
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        Self::from_fn(self.field, self.rows, idx.len(), |r, c| self.get(r, idx[c]).clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        Self::from_fn(self.field, idx.len(), self.cols, |r, c| self.get(idx[r], c).clone())
    }

    pub fn column(&self, c: usize) -> Matrix {
        self.select_columns(&[c])
    }

    /// Writes `block` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols, "block out of range");
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c).clone());
            }
        }
    }

    pub fn hstack(field: Field, rows: usize, blocks: &[&Matrix]) -> Matrix {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut c0 = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row mismatch");
            out.set_block(0, c0, b);
            c0 += b.cols;
        }
        out
    }

    pub fn vstack(field: Field, cols: usize, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut r0 = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            out.set_block(r0, 0, b);
            r0 += b.rows;
        }
        out
    }

    pub fn block_diag(field: Field, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Gauss-Jordan elimination, tracking the invertible transform `T` with `T * self = R`.
    pub fn rref(&self) -> Rref {
        let mut reduced = self.clone();
        let mut transform = Matrix::identity(self.field, self.rows);
        let pivots = reduced.eliminate(Some(&mut transform));
        Rref { reduced, pivots, transform }
    }

    /// Reduced row echelon form without the transform.
    pub fn rref_only(&self) -> (Matrix, Vec<usize>) {
        let mut reduced = self.clone();
        let pivots = reduced.eliminate(None);
        (reduced, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref_only().1.len()
    }

    fn eliminate(&mut self, mut transform: Option<&mut Matrix>) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            // smallest-height pivot keeps rational entries short
            let Some(p) = (row..self.rows)
                .filter(|&r| !self.get(r, col).is_zero())
                .min_by_key(|&r| self.get(r, col).abs_height())
            else {
                continue;
            };
            if p != row {
                self.swap_rows(p, row);
                if let Some(t) = transform.as_deref_mut() {
                    t.swap_rows(p, row);
                }
            }
            let inv = f.inv(self.get(row, col)).expect("pivot is nonzero");
            self.scale_row(row, &inv);
            if let Some(t) = transform.as_deref_mut() {
                t.scale_row(row, &inv);
            }
            for r in 0..self.rows {
                if r == row || self.get(r, col).is_zero() {
                    continue;
                }
                let factor = f.neg(self.get(r, col));
                self.add_row_multiple(r, row, &factor);
                if let Some(t) = transform.as_deref_mut() {
                    t.add_row_multiple(r, row, &factor);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, s: &Scalar) {
        let f = self.field;
        for c in 0..self.cols {
            let idx = r * self.cols + c;
            if !self.data[idx].is_zero() {
                self.data[idx] = f.mul(&self.data[idx], s);
            }
        }
    }

    /// `row[target] += factor * row[source]`
    fn add_row_multiple(&mut self, target: usize, source: usize, factor: &Scalar) {
        let f = self.field;
        for c in 0..self.cols {
            let s = &self.data[source * self.cols + c];
            if s.is_zero() {
                continue;
            }
            let delta = f.mul(factor, s);
            let idx = target * self.cols + c;
            self.data[idx] = f.add(&self.data[idx], &delta);
        }
    }

    /// Columns form a basis of the right kernel; one column per free variable of the RREF.
    pub fn kernel_basis(&self) -> Matrix {
        let f = self.field;
        let (r, pivots) = self.rref_only();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut k = Matrix::zeros(f, self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            k.set(fc, j, f.one());
            for (i, &pc) in pivots.iter().enumerate() {
                let v = r.get(i, fc);
                if !v.is_zero() {
                    k.set(pc, j, f.neg(v));
                }
            }
        }
        k
    }

    /// Some `X` with `self * X == rhs`, re-verified by multiplication.
    pub fn solve(&self, rhs: &Matrix) -> Result<Matrix, LinalgError> {
        if rhs.rows != self.rows {
            return Err(LinalgError::Shape(format!(
                "solve: lhs is {:?}, rhs is {:?}",
                self.shape(),
                rhs.shape()
            )));
        }
        let f = self.field;
        let aug = Matrix::hstack(f, self.rows, &[self, rhs]);
        let (r, pivots) = aug.rref_only();
        if pivots.iter().any(|&p| p >= self.cols) {
            return Err(LinalgError::NoSolution);
        }
        let mut x = Matrix::zeros(f, self.cols, rhs.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for c in 0..rhs.cols {
                x.set(p, c, r.get(i, self.cols + c).clone());
            }
        }
        if self.matmul(&x) != *rhs {
            return Err(LinalgError::Verification("solve: A*X != B".into()));
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let rr = self.rref();
        (rr.rank() == self.rows).then_some(rr.transform)
    }

    /// Canonical basis of the column space: the reduced column echelon form, one column per rank.
    pub fn column_space_basis(&self) -> Matrix {
        let (r, pivots) = self.transpose().rref_only();
        r.submatrix(0..pivots.len(), 0..self.rows).transpose()
    }

    /// The unique full-row-rank RREF matrix whose kernel is the column space of `self`.
    pub fn quotient_map(&self) -> Matrix {
        let left = self.transpose().kernel_basis().transpose();
        let (r, pivots) = left.rref_only();
        r.submatrix(0..pivots.len(), 0..self.rows)
    }

    pub fn is_rref(&self) -> bool {
        let mut last_pivot: Option<usize> = None;
        let mut seen_zero_row = false;
        for r in 0..self.rows {
            let lead = (0..self.cols).find(|&c| !self.get(r, c).is_zero());
            match lead {
                None => seen_zero_row = true,
                Some(c) => {
                    if seen_zero_row || last_pivot.is_some_and(|p| c <= p) || !self.get(r, c).is_one() {
                        return false;
                    }
                    if (0..self.rows).any(|o| o != r && !self.get(o, c).is_zero()) {
                        return false;
                    }
                    last_pivot = Some(c);
                }
            }
        }
        true
    }

    /// Integer view of every entry; `None` if some rational entry is not an integer.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c).to_i64()).collect())
            .collect()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;

    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        self.get(r, c)
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        self.matmul(rhs)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    #[test]
    fn rref_identity_and_zero() {
        let rr = Matrix::identity(Q, 3).rref();
        assert_eq!(rr.reduced, Matrix::identity(Q, 3));
        assert_eq!(rr.pivots, vec![0, 1, 2]);
        let rr = Matrix::zeros(Q, 2, 4).rref();
        assert!(rr.reduced.is_zero());
        assert!(rr.pivots.is_empty());
    }

    #[test]
    fn rref_rank_one() {
        let m = Matrix::from_rows(Q, &[&[1, 2], &[2, 4]]);
        let rr = m.rref();
        assert_eq!(rr.pivots, vec![0]);
        // by hand: R2 -= 2 R1 leaves [[1,2],[0,0]]
        assert_eq!(rr.reduced, Matrix::from_rows(Q, &[&[1, 2], &[0, 0]]));
        assert_eq!(&rr.transform * &m, rr.reduced);
        assert!(rr.reduced.is_rref());
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::identity(Q, 3).kernel_basis().cols(), 0);
        assert_eq!(Matrix::zeros(Q, 3, 3).kernel_basis(), Matrix::identity(Q, 3));
        let f5 = Field::prime(5).unwrap();
        let m = Matrix::from_rows(f5, &[&[0, 1], &[0, 0]]);
        let k = m.kernel_basis();
        // enumerating F_5^2: m*v = 0 iff v_1 = 0, so the kernel is the line through (1,0)
        let mut kernel_points = Vec::new();
        for a in 0..5 {
            for b in 0..5 {
                let v = Matrix::from_i64(f5, 2, 1, &[a, b]);
                if (&m * &v).is_zero() {
                    kernel_points.push((a, b));
                }
            }
        }
        assert_eq!(kernel_points.len(), 5);
        assert!(kernel_points.iter().all(|&(_, b)| b == 0));
        assert_eq!(k, Matrix::from_i64(f5, 2, 1, &[1, 0]));
    }

    #[test]
    fn solve_examples() {
        let b = Matrix::from_rows(Q, &[&[3, 1], &[4, 1]]);
        assert_eq!(Matrix::identity(Q, 2).solve(&b).unwrap(), b);
        let zero = Matrix::zeros(Q, 2, 2);
        assert!(matches!(zero.solve(&b), Err(LinalgError::NoSolution)));
        let a = Matrix::from_rows(Q, &[&[1, 1], &[0, 1]]);
        let rhs = Matrix::from_rows(Q, &[&[2], &[1]]);
        // back substitution: x2 = 1, x1 = 2 - x2 = 1
        assert_eq!(a.solve(&rhs).unwrap(), Matrix::from_rows(Q, &[&[1], &[1]]));
    }

    #[test]
    fn canonical_subspace_forms() {
        let s = Matrix::from_rows(Q, &[&[2, 4], &[0, 0], &[2, 6]]);
        let basis = s.column_space_basis();
        assert_eq!(basis.cols(), 2);
        assert!(basis.transpose().is_rref());
        let q = s.quotient_map();
        assert_eq!(q.rows(), 1);
        assert!(q.is_rref());
        assert!((&q * &s).is_zero());
    }

    #[test]
    fn inverse_round_trip() {
        let a = Matrix::from_rows(Q, &[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, Matrix::identity(Q, 2));
        assert!(Matrix::from_rows(Q, &[&[1, 2], &[2, 4]]).inverse().is_none());
    }
}
