use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::LinalgError;

/// Dense matrix of arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

/// `u * a * v == d` with `u`, `v` unimodular and `d` diagonal, `d_1 | d_2 | ...`.
/// `u_inv` is carried along so callers can map cokernel generators back.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Diagonal entries, length `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d.get(i, i).clone()).collect()
    }
}

/// `Z^free_rank + Z/t_1 + ... + Z/t_k` with `t_1 | t_2 | ... | t_k`, every `t_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupInvariants {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl GroupInvariants {
    pub fn free(rank: usize) -> Self {
        GroupInvariants { free_rank: rank, torsion: Vec::new() }
    }

    pub fn elementary_two(n: usize) -> Self {
        GroupInvariants { free_rank: 0, torsion: vec![2; n] }
    }

    pub fn is_valid(&self) -> bool {
        self.torsion.iter().all(|&t| t >= 2) && self.torsion.windows(2).all(|w| w[1] % w[0] == 0)
    }
}

impl fmt::Display for GroupInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, values: &[i64]) -> Self {
        assert_eq!(values.len(), rows * cols, "entry count must equal rows*cols");
        IntMatrix { rows, cols, data: values.iter().map(|&v| BigInt::from(v)).collect() }
    }

    pub fn from_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let flat: Vec<i64> = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Self::from_i64(rows.len(), cols, &flat)
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &e) in entries.iter().enumerate() {
            m.data[i * n + i] = BigInt::from(e);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn matmul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in integer matmul");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        out.data[r * other.cols + c] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn select_columns(&self, idx: &[usize]) -> IntMatrix {
        let mut out = Self::zeros(self.rows, idx.len());
        for r in 0..self.rows {
            for (j, &c) in idx.iter().enumerate() {
                out.set(r, j, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> IntMatrix {
        let mut out = Self::zeros(idx.len(), self.cols);
        for (i, &r) in idx.iter().enumerate() {
            for c in 0..self.cols {
                out.set(i, c, self.get(r, c).clone());
            }
        }
        out
    }

    /// Appends `n` zero columns.
    pub fn with_zero_columns(&self, n: usize) -> IntMatrix {
        let mut out = Self::zeros(self.rows, self.cols + n);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Option<BigInt> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a.get(k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !a.get(r, k).is_zero()) else {
                    return Some(BigInt::zero());
                };
                a.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        Some(sign * a.get(n - 1, n - 1))
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().is_some_and(|d| d.abs().is_one())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// `row[target] += k * row[source]`
    fn add_row(&mut self, target: usize, source: usize, k: &BigInt) {
        for c in 0..self.cols {
            let s = self.get(source, c);
            if !s.is_zero() {
                let v = k * s;
                self.data[target * self.cols + c] += v;
            }
        }
    }

    /// `col[target] += k * col[source]`
    fn add_col(&mut self, target: usize, source: usize, k: &BigInt) {
        for r in 0..self.rows {
            let s = self.get(r, source);
            if !s.is_zero() {
                let v = k * s;
                self.data[r * self.cols + target] += v;
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let idx = r * self.cols + c;
            self.data[idx] = -std::mem::take(&mut self.data[idx]);
        }
    }

    fn negate_col(&mut self, c: usize) {
        for r in 0..self.rows {
            let idx = r * self.cols + c;
            self.data[idx] = -std::mem::take(&mut self.data[idx]);
        }
    }

    /// Smith normal form by minimal-absolute-value pivoting.
    pub fn smith_normal_form(&self) -> SmithForm {
        let mut ops = SnfState {
            d: self.clone(),
            u: IntMatrix::identity(self.rows),
            u_inv: IntMatrix::identity(self.rows),
            v: IntMatrix::identity(self.cols),
        };
        let limit = self.rows.min(self.cols);
        for t in 0..limit {
            if !ops.reduce_corner(t) {
                break;
            }
        }
        // SNF over Z: make diagonal non-negative
        for t in 0..limit {
            if ops.d.get(t, t).is_negative() {
                ops.negate_row(t);
            }
        }
        SmithForm { u: ops.u, u_inv: ops.u_inv, d: ops.d, v: ops.v }
    }

    /// Invariants of `Z^rows / (column span)`.
    pub fn cokernel_invariants(&self) -> GroupInvariants {
        let snf = self.smith_normal_form();
        invariants_from_diagonal(self.rows, &snf.diagonal())
    }
}

pub(crate) fn invariants_from_diagonal(rows: usize, diag: &[BigInt]) -> GroupInvariants {
    let nonzero = diag.iter().filter(|d| !d.is_zero()).count();
    let torsion = diag
        .iter()
        .filter(|d| d.abs() > BigInt::one())
        .map(|d| d.abs().to_u64().expect("torsion coefficient fits in u64"))
        .collect();
    GroupInvariants { free_rank: rows - nonzero, torsion }
}

struct SnfState {
    d: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
}

impl SnfState {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
    }

    fn add_row(&mut self, target: usize, source: usize, k: &BigInt) {
        self.d.add_row(target, source, k);
        self.u.add_row(target, source, k);
        // (I + k e_t e_s^T)^{-1} = I - k e_t e_s^T acts on the right of u_inv
        self.u_inv.add_col(source, target, &-k);
    }

    fn add_col(&mut self, target: usize, source: usize, k: &BigInt) {
        self.d.add_col(target, source, k);
        self.v.add_col(target, source, k);
    }

    fn negate_row(&mut self, r: usize) {
        self.d.negate_row(r);
        self.u.negate_row(r);
        self.u_inv.negate_col(r);
    }

    fn min_nonzero(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), BigInt)> = None;
        for r in t..self.d.rows {
            for c in t..self.d.cols {
                let v = self.d.get(r, c);
                if v.is_zero() {
                    continue;
                }
                let a = v.abs();
                if best.as_ref().is_none_or(|(_, b)| a < *b) {
                    let unit = a.is_one();
                    best = Some(((r, c), a));
                    if unit {
                        return best.map(|(pos, _)| pos);
                    }
                }
            }
        }
        best.map(|(pos, _)| pos)
    }

    /// Clears row and column `t` around a pivot dividing the rest of the submatrix.
    /// Returns false when the remaining submatrix is zero.
    fn reduce_corner(&mut self, t: usize) -> bool {
        loop {
            let Some((pr, pc)) = self.min_nonzero(t) else {
                return false;
            };
            self.swap_rows(t, pr);
            self.swap_cols(t, pc);
            let mut dirty = false;
            for r in t + 1..self.d.rows {
                if self.d.get(r, t).is_zero() {
                    continue;
                }
                let q = self.d.get(r, t).div_floor(self.d.get(t, t));
                self.add_row(r, t, &-q);
                dirty |= !self.d.get(r, t).is_zero();
            }
            for c in t + 1..self.d.cols {
                if self.d.get(t, c).is_zero() {
                    continue;
                }
                let q = self.d.get(t, c).div_floor(self.d.get(t, t));
                self.add_col(c, t, &-q);
                dirty |= !self.d.get(t, c).is_zero();
            }
            if dirty {
                continue;
            }
            let pivot = self.d.get(t, t).clone();
            let offender = (t + 1..self.d.rows)
                .find(|&r| (t + 1..self.d.cols).any(|c| !self.d.get(r, c).is_multiple_of(&pivot)));
            match offender {
                Some(r) => self.add_row(t, r, &BigInt::one()),
                None => return true,
            }
        }
    }
}

impl LinalgError {
    pub(crate) fn not_unimodular(which: &str) -> Self {
        LinalgError::Verification(format!("{which} is not unimodular"))
    }
}

/// Re-multiplies and checks every contract of a Smith form of `a`.
pub fn verify_smith(a: &IntMatrix, snf: &SmithForm) -> Result<(), LinalgError> {
    if snf.u.matmul(a).matmul(&snf.v) != snf.d {
        return Err(LinalgError::Verification("U*A*V != D".into()));
    }
    if snf.u.matmul(&snf.u_inv) != IntMatrix::identity(a.rows) {
        return Err(LinalgError::Verification("U * U^-1 != I".into()));
    }
    if !snf.u.is_unimodular() {
        return Err(LinalgError::not_unimodular("U"));
    }
    if !snf.v.is_unimodular() {
        return Err(LinalgError::not_unimodular("V"));
    }
    for r in 0..snf.d.rows {
        for c in 0..snf.d.cols {
            if r != c && !snf.d.get(r, c).is_zero() {
                return Err(LinalgError::Verification(format!("D has off-diagonal entry at ({r},{c})")));
            }
        }
    }
    let diag = snf.diagonal();
    for w in diag.windows(2) {
        let ok = if w[0].is_zero() { w[1].is_zero() } else { w[1].is_multiple_of(&w[0]) };
        if !ok || w[0].is_negative() {
            return Err(LinalgError::Verification(format!("divisibility chain broken: {} , {}", w[0], w[1])));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag_i64(snf: &SmithForm) -> Vec<i64> {
        snf.diagonal().iter().map(|d| d.to_i64().unwrap()).collect()
    }

    #[test]
    fn snf_of_diag_2_3() {
        let a = IntMatrix::diagonal(&[2, 3]);
        let snf = a.smith_normal_form();
        verify_smith(&a, &snf).unwrap();
        assert_eq!(diag_i64(&snf), vec![1, 6]);
    }

    #[test]
    fn snf_trivial_cases() {
        let id = IntMatrix::identity(3);
        let snf = id.smith_normal_form();
        verify_smith(&id, &snf).unwrap();
        assert_eq!(snf.d, id);
        let z = IntMatrix::zeros(2, 3);
        let snf = z.smith_normal_form();
        verify_smith(&z, &snf).unwrap();
        assert!(snf.d.is_zero());
    }

    #[test]
    fn cokernels() {
        assert_eq!(IntMatrix::zeros(3, 2).cokernel_invariants(), GroupInvariants::free(3));
        assert_eq!(IntMatrix::diagonal(&[2, 2, 2]).cokernel_invariants(), GroupInvariants::elementary_two(3));
        assert_eq!(
            IntMatrix::diagonal(&[1, 2, 0]).cokernel_invariants(),
            GroupInvariants { free_rank: 1, torsion: vec![2] }
        );
    }

    #[test]
    fn determinant_small() {
        let a = IntMatrix::from_rows(&[&[2, 1], &[7, 4]]);
        assert_eq!(a.determinant().unwrap(), BigInt::from(1));
        let b = IntMatrix::from_rows(&[&[0, 2, 1], &[1, 0, 0], &[3, 1, 5]]);
        // cofactor expansion along the first row: -2*(5-0) + 1*(1-0) = -9
        assert_eq!(b.determinant().unwrap(), BigInt::from(-9));
    }

    #[test]
    fn display_group() {
        assert_eq!(GroupInvariants::elementary_two(2).to_string(), "Z/2 + Z/2");
        assert_eq!(GroupInvariants::free(0).to_string(), "0");
    }
}
