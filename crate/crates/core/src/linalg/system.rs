use super::field::Field;
use super::matrix::Matrix;
use super::LinalgError;

/// One summand `left * X[unknown] * right` of a matrix equation; `None` means identity.
#[derive(Clone, Debug)]
pub struct Term {
    pub left: Option<Matrix>,
    pub unknown: usize,
    pub right: Option<Matrix>,
}

impl Term {
    pub fn left(left: Matrix, unknown: usize) -> Self {
        Term { left: Some(left), unknown, right: None }
    }

    pub fn right(unknown: usize, right: Matrix) -> Self {
        Term { left: None, unknown, right: Some(right) }
    }

    pub fn plain(unknown: usize) -> Self {
        Term { left: None, unknown, right: None }
    }
}

struct Equation {
    rows: usize,
    cols: usize,
    terms: Vec<Term>,
    rhs: Option<Matrix>,
}

/// Linear equations whose unknowns are matrices of fixed shapes, e.g. the
/// commuting-square system of a Hom space or a homotopy equation.
pub struct BlockSystem {
    field: Field,
    shapes: Vec<(usize, usize)>,
    offsets: Vec<usize>,
    equations: Vec<Equation>,
}

impl BlockSystem {
    pub fn new(field: Field) -> Self {
        BlockSystem { field, shapes: Vec::new(), offsets: vec![0], equations: Vec::new() }
    }

    /// Registers an unknown `rows x cols` matrix and returns its index.
    pub fn unknown(&mut self, rows: usize, cols: usize) -> usize {
        self.shapes.push((rows, cols));
        let last = *self.offsets.last().unwrap();
        self.offsets.push(last + rows * cols);
        self.shapes.len() - 1
    }

    pub fn unknown_count(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    /// Adds `sum(terms) = rhs` (or `= 0` when `rhs` is `None`) with the given result shape.
    pub fn equation(&mut self, rows: usize, cols: usize, terms: Vec<Term>, rhs: Option<Matrix>) {
        if let Some(r) = &rhs {
            assert_eq!(r.shape(), (rows, cols), "rhs shape");
        }
        for t in &terms {
            let (ur, uc) = self.shapes[t.unknown];
            let lr = t.left.as_ref().map_or(ur, |l| {
                assert_eq!(l.cols(), ur, "left factor shape");
                l.rows()
            });
            let rc = t.right.as_ref().map_or(uc, |r| {
                assert_eq!(r.rows(), uc, "right factor shape");
                r.cols()
            });
            assert_eq!((lr, rc), (rows, cols), "term shape");
        }
        self.equations.push(Equation { rows, cols, terms, rhs });
    }

    fn assemble(&self) -> (Matrix, Matrix) {
        let f = self.field;
        let n_rows: usize = self.equations.iter().map(|e| e.rows * e.cols).sum();
        let mut a = Matrix::zeros(f, n_rows, self.unknown_count());
        let mut b = Matrix::zeros(f, n_rows, 1);
        let mut row0 = 0;
        for eq in &self.equations {
            for t in &eq.terms {
                let (ur, uc) = self.shapes[t.unknown];
                let off = self.offsets[t.unknown];
                for i in 0..eq.rows {
                    for j in 0..eq.cols {
                        let row = row0 + i * eq.cols + j;
                        // coefficient of X[p, q] in entry (i, j) is left[i, p] * right[q, j]
                        let ps: Vec<usize> = match &t.left {
                            None => vec![i],
                            Some(l) => (0..ur).filter(|&p| !l.get(i, p).is_zero()).collect(),
                        };
                        let qs: Vec<usize> = match &t.right {
                            None => vec![j],
                            Some(r) => (0..uc).filter(|&q| !r.get(q, j).is_zero()).collect(),
                        };
                        for &p in &ps {
                            let lv = t.left.as_ref().map_or_else(|| f.one(), |l| l.get(i, p).clone());
                            for &q in &qs {
                                let coeff = match &t.right {
                                    None => lv.clone(),
                                    Some(r) => f.mul(&lv, r.get(q, j)),
                                };
                                let col = off + p * uc + q;
                                let cur = a.get(row, col).clone();
                                a.set(row, col, f.add(&cur, &coeff));
                            }
                        }
                    }
                }
            }
            if let Some(rhs) = &eq.rhs {
                for i in 0..eq.rows {
                    for j in 0..eq.cols {
                        b.set(row0 + i * eq.cols + j, 0, rhs.get(i, j).clone());
                    }
                }
            }
            row0 += eq.rows * eq.cols;
        }
        (a, b)
    }

    pub fn coefficient_matrix(&self) -> Matrix {
        self.assemble().0
    }

    fn unflatten(&self, v: &Matrix, col: usize) -> Vec<Matrix> {
        let f = self.field;
        self.shapes
            .iter()
            .zip(&self.offsets)
            .map(|(&(r, c), &off)| Matrix::from_fn(f, r, c, |i, j| v.get(off + i * c + j, col).clone()))
            .collect()
    }

    /// Flattens values for every unknown into one column vector.
    pub fn flatten(&self, values: &[Matrix]) -> Matrix {
        let f = self.field;
        let mut v = Matrix::zeros(f, self.unknown_count(), 1);
        for ((x, &(r, c)), &off) in values.iter().zip(&self.shapes).zip(&self.offsets) {
            assert_eq!(x.shape(), (r, c));
            for i in 0..r {
                for j in 0..c {
                    v.set(off + i * c + j, 0, x.get(i, j).clone());
                }
            }
        }
        v
    }

    /// Basis of the solutions of the homogeneous system (right-hand sides ignored).
    pub fn solution_space(&self) -> Vec<Vec<Matrix>> {
        let k = self.coefficient_matrix().kernel_basis();
        (0..k.cols()).map(|c| self.unflatten(&k, c)).collect()
    }

    /// Some solution of the inhomogeneous system.
    pub fn solve(&self) -> Result<Vec<Matrix>, LinalgError> {
        let (a, b) = self.assemble();
        let x = a.solve(&b)?;
        Ok(self.unflatten(&x, 0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commuting_matrices() {
        // X commuting with [[0,1],[0,0]] is a polynomial in it: a 2-dimensional space
        let f = Field::Rationals;
        let n = Matrix::from_rows(f, &[&[0, 1], &[0, 0]]);
        let mut sys = BlockSystem::new(f);
        let x = sys.unknown(2, 2);
        sys.equation(2, 2, vec![Term::left(n.clone(), x), Term::right(x, n.neg())], None);
        let basis = sys.solution_space();
        assert_eq!(basis.len(), 2);
        for b in &basis {
            assert_eq!(&n * &b[0], &b[0] * &n);
        }
    }

    #[test]
    fn inhomogeneous() {
        let f = Field::prime(3).unwrap();
        let mut sys = BlockSystem::new(f);
        let x = sys.unknown(1, 2);
        let y = sys.unknown(1, 1);
        let m = Matrix::from_rows(f, &[&[1], &[1]]);
        sys.equation(1, 1, vec![Term::right(x, m), Term::plain(y)], Some(Matrix::from_i64(f, 1, 1, &[2])));
        let sol = sys.solve().unwrap();
        let lhs = f.add(&f.add(sol[0].get(0, 0), sol[0].get(0, 1)), sol[1].get(0, 0));
        assert_eq!(lhs, f.from_i64(2));
    }
}
