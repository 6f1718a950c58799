//! Dense matrices over a commutative ring: minors, determinants, Pfaffians
//! and hafnians, all exact.

use thiserror::Error;

use crate::ring::{Domain, Ring};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not skew-symmetric at ({row},{col})")]
    NotSkew { row: usize, col: usize },
    #[error("matrix is not symmetric at ({row},{col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("hafnian requires even dimension, got {0}")]
    OddDimension(usize),
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("dimension mismatch: {0}")]
    ShapeMismatch(String),
    #[error("exact division failed during fraction-free elimination")]
    InexactDivision,
}

/// How an index set passed to [`Matrix::minor`] is interpreted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinorMode {
    /// Drop the listed rows and columns.
    Remove,
    /// Retain exactly the listed rows and columns, in original order.
    Keep,
}

/// Dense row-major matrix over a commutative ring.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![R::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = R::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        Matrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut R {
        &mut self.data[i * self.cols + j]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        Self::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = R::zero();
            for k in 0..self.cols {
                acc = acc.add(&self.at(i, k).mul(other.at(k, j)));
            }
            acc
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| self.at(i, j).add(other.at(i, j)))
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| self.at(i, j).sub(other.at(i, j)))
    }

    pub fn neg(&self) -> Self {
        self.map(|x| x.neg())
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|x| x.mul(c))
    }

    /// Columns of `self` followed by the columns of `other`.
    pub fn hconcat(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hconcat row mismatch");
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                other.at(i, j - self.cols).clone()
            }
        })
    }

    /// Submatrix by removing or keeping the given row/column index sets
    /// (0-based, duplicates ignored for `Remove`, order-preserving for `Keep`).
    pub fn minor(
        &self,
        row_idx: &[usize],
        col_idx: &[usize],
        mode: MinorMode,
    ) -> Result<Self, LinalgError> {
        for &i in row_idx {
            if i >= self.rows {
                return Err(LinalgError::IndexOutOfRange {
                    index: i,
                    dim: self.rows,
                });
            }
        }
        for &j in col_idx {
            if j >= self.cols {
                return Err(LinalgError::IndexOutOfRange {
                    index: j,
                    dim: self.cols,
                });
            }
        }
        let (keep_rows, keep_cols): (Vec<usize>, Vec<usize>) = match mode {
            MinorMode::Remove => (
                (0..self.rows).filter(|i| !row_idx.contains(i)).collect(),
                (0..self.cols).filter(|j| !col_idx.contains(j)).collect(),
            ),
            MinorMode::Keep => (row_idx.to_vec(), col_idx.to_vec()),
        };
        Ok(Self::from_fn(keep_rows.len(), keep_cols.len(), |i, j| {
            self.at(keep_rows[i], keep_cols[j]).clone()
        }))
    }

    /// Keep exactly the given rows, all columns.
    pub fn keep_rows(&self, rows: &[usize]) -> Self {
        self.minor(rows, &(0..self.cols).collect::<Vec<_>>(), MinorMode::Keep)
            .expect("row index in range")
    }

    /// Remove the given rows, keep all columns.
    pub fn remove_rows(&self, rows: &[usize]) -> Self {
        self.minor(rows, &[], MinorMode::Remove).expect("row index in range")
    }

    pub fn is_skew_symmetric(&self) -> Result<(), LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        for i in 0..self.rows {
            for j in i..self.cols {
                if *self.at(i, j) != self.at(j, i).neg() {
                    return Err(LinalgError::NotSkew { row: i, col: j });
                }
            }
        }
        Ok(())
    }

    pub fn is_symmetric(&self) -> Result<(), LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        for i in 0..self.rows {
            for j in i + 1..self.cols {
                if self.at(i, j) != self.at(j, i) {
                    return Err(LinalgError::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(())
    }

    /// Cofactor-expansion determinant. Works over any commutative ring; cost
    /// grows factorially, so this doubles as the independent test oracle and
    /// as the fallback for rings without exact division.
    pub fn determinant_cofactor(&self) -> Result<R, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let all: Vec<usize> = (0..self.rows).collect();
        Ok(self.det_cofactor_on(&all, &all))
    }

    fn det_cofactor_on(&self, rows: &[usize], cols: &[usize]) -> R {
        let n = rows.len();
        if n == 0 {
            return R::one();
        }
        let mut acc = R::zero();
        for (pos, &col) in cols.iter().enumerate() {
            let entry = self.at(rows[0], col);
            if entry.is_zero() {
                continue;
            }
            let sub_cols: Vec<usize> = cols
                .iter()
                .enumerate()
                .filter(|&(p, _)| p != pos)
                .map(|(_, &c)| c)
                .collect();
            let sub = self.det_cofactor_on(&rows[1..], &sub_cols);
            let term = entry.mul(&sub);
            if pos % 2 == 0 {
                acc = acc.add(&term);
            } else {
                acc = acc.sub(&term);
            }
        }
        acc
    }

    /// Pfaffian of a skew-symmetric matrix by the perfect-matching recursion
    /// ((2n-1)!! terms). Odd dimension yields zero by convention.
    pub fn pfaffian(&self) -> Result<R, LinalgError> {
        self.is_skew_symmetric()?;
        if self.rows % 2 == 1 {
            return Ok(R::zero());
        }
        Ok(self.pf_rec(&(0..self.rows).collect::<Vec<_>>()))
    }

    fn pf_rec(&self, live: &[usize]) -> R {
        let n = live.len();
        if n == 0 {
            return R::one();
        }
        let mut acc = R::zero();
        for j in 1..n {
            let entry = self.at(live[0], live[j]);
            if entry.is_zero() {
                continue;
            }
            let rest: Vec<usize> = live[1..]
                .iter()
                .copied()
                .filter(|&k| k != live[j])
                .collect();
            let term = entry.mul(&self.pf_rec(&rest));
            if j % 2 == 1 {
                acc = acc.add(&term);
            } else {
                acc = acc.sub(&term);
            }
        }
        acc
    }

    /// Hafnian of a symmetric matrix of even dimension: the unsigned
    /// perfect-matching sum.
    pub fn hafnian(&self) -> Result<R, LinalgError> {
        self.is_symmetric()?;
        if self.rows % 2 == 1 {
            return Err(LinalgError::OddDimension(self.rows));
        }
        Ok(self.haf_rec(&(0..self.rows).collect::<Vec<_>>()))
    }

    fn haf_rec(&self, live: &[usize]) -> R {
        let n = live.len();
        if n == 0 {
            return R::one();
        }
        let mut acc = R::zero();
        for j in 1..n {
            let entry = self.at(live[0], live[j]);
            if entry.is_zero() {
                continue;
            }
            let rest: Vec<usize> = live[1..]
                .iter()
                .copied()
                .filter(|&k| k != live[j])
                .collect();
            acc = acc.add(&entry.mul(&self.haf_rec(&rest)));
        }
        acc
    }
}

impl<R: Domain> Matrix<R> {
    /// Fraction-free Bareiss determinant with full pivoting. Every division
    /// is by a previous pivot and is exact over an integral domain. Pivots
    /// are chosen smallest-first (by `size_hint`, ties row-major), which
    /// keeps intermediate minors small when constant and polynomial columns
    /// are mixed.
    pub fn determinant(&self) -> Result<R, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(R::one());
        }
        let mut a = self.data.clone();
        let idx = |i: usize, j: usize| i * n + j;
        let mut sign_flip = false;
        let mut prev = R::one();
        for k in 0..n - 1 {
            let mut pivot: Option<(usize, usize, usize)> = None;
            for i in k..n {
                for j in k..n {
                    if a[idx(i, j)].is_zero() {
                        continue;
                    }
                    let size = a[idx(i, j)].size_hint();
                    if pivot.as_ref().is_none_or(|&(_, _, best)| size < best) {
                        pivot = Some((i, j, size));
                    }
                }
            }
            let Some((r, c, _)) = pivot else {
                return Ok(R::zero());
            };
            if r != k {
                for j in 0..n {
                    a.swap(idx(k, j), idx(r, j));
                }
                sign_flip = !sign_flip;
            }
            if c != k {
                for i in 0..n {
                    a.swap(idx(i, k), idx(i, c));
                }
                sign_flip = !sign_flip;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[idx(k, k)]
                        .mul(&a[idx(i, j)])
                        .sub(&a[idx(i, k)].mul(&a[idx(k, j)]));
                    a[idx(i, j)] = num.exact_div(&prev).ok_or(LinalgError::InexactDivision)?;
                }
                a[idx(i, k)] = R::zero();
            }
            prev = a[idx(k, k)].clone();
        }
        let det = a[idx(n - 1, n - 1)].clone();
        Ok(if sign_flip { det.neg() } else { det })
    }

    /// Adjugate matrix: `adj(M)[i][j] = (-1)^{i+j} det(M with row j, col i removed)`,
    /// so that `M * adj(M) = det(M) * 1`.
    pub fn adjugate(&self) -> Result<Self, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Self::zero(0, 0));
        }
        let mut adj = Self::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                let sub = self.minor(&[j], &[i], MinorMode::Remove)?;
                let mut c = sub.determinant()?;
                if (i + j) % 2 == 1 {
                    c = c.neg();
                }
                *adj.at_mut(i, j) = c;
            }
        }
        Ok(adj)
    }
}

impl<R: Ring + std::fmt::Display> std::fmt::Display for Matrix<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.rows {
            write!(f, "[ ")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            writeln!(f, " ]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use num_bigint::BigInt;

    fn int_matrix(rows: &[&[i64]]) -> Matrix<BigInt> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn determinant_identity_is_one() {
        let m: Matrix<BigInt> = Matrix::identity(4);
        assert_eq!(m.determinant().unwrap(), BigInt::from(1));
    }

    #[test]
    fn determinant_matches_cofactor_oracle() {
        // fixed 4x4 with a zero pivot on the diagonal to exercise pivoting
        let m = int_matrix(&[
            &[0, 2, -1, 3],
            &[1, 0, 4, -2],
            &[5, -3, 0, 1],
            &[2, 1, 1, 0],
        ]);
        let bareiss = m.determinant().unwrap();
        let cofactor = m.determinant_cofactor().unwrap();
        assert_eq!(bareiss, cofactor);
    }

    #[test]
    fn determinant_singular() {
        let m = int_matrix(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(m.determinant().unwrap(), BigInt::from(0));
    }

    #[test]
    fn minor_remove_empty_is_identity_op() {
        let m = int_matrix(&[&[1, 2], &[3, 4]]);
        assert_eq!(m.minor(&[], &[], MinorMode::Remove).unwrap(), m);
    }

    #[test]
    fn minor_remove_and_keep_complement_agree() {
        let m = int_matrix(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        let removed = m.minor(&[1], &[0], MinorMode::Remove).unwrap();
        let kept = m.minor(&[0, 2], &[1, 2], MinorMode::Keep).unwrap();
        assert_eq!(removed, kept);
    }

    #[test]
    fn minor_out_of_range() {
        let m = int_matrix(&[&[1, 2], &[3, 4]]);
        assert!(matches!(
            m.minor(&[5], &[], MinorMode::Remove),
            Err(LinalgError::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn pfaffian_2x2() {
        let m = int_matrix(&[&[0, 7], &[-7, 0]]);
        assert_eq!(m.pfaffian().unwrap(), BigInt::from(7));
    }

    #[test]
    fn pfaffian_odd_dimension_is_zero() {
        let m = int_matrix(&[&[0, 1, 2], &[-1, 0, 3], &[-2, -3, 0]]);
        assert_eq!(m.pfaffian().unwrap(), BigInt::from(0));
    }

    #[test]
    fn pfaffian_4x4_generic() {
        // Pf = m12*m34 - m13*m24 + m14*m23
        let m = int_matrix(&[
            &[0, 2, 3, 5],
            &[-2, 0, 7, 11],
            &[-3, -7, 0, 13],
            &[-5, -11, -13, 0],
        ]);
        assert_eq!(m.pfaffian().unwrap(), BigInt::from(2 * 13 - 3 * 11 + 5 * 7));
    }

    #[test]
    fn pfaffian_rejects_non_skew() {
        let m = int_matrix(&[&[0, 1], &[1, 0]]);
        assert!(matches!(m.pfaffian(), Err(LinalgError::NotSkew { .. })));
    }

    #[test]
    fn pfaffian_matches_permutation_sum_oracle() {
        let m = int_matrix(&[
            &[0, 2, -3, 5],
            &[-2, 0, 1, -4],
            &[3, -1, 0, 6],
            &[-5, 4, -6, 0],
        ]);
        assert_eq!(m.pfaffian().unwrap(), oracle::pfaffian_permutation_sum(&m));
    }

    #[test]
    fn hafnian_2x2() {
        let m = int_matrix(&[&[4, 9], &[9, 2]]);
        assert_eq!(m.hafnian().unwrap(), BigInt::from(9));
    }

    #[test]
    fn hafnian_4x4() {
        // haf = m12*m34 + m13*m24 + m14*m23
        let m = int_matrix(&[
            &[1, 2, 3, 5],
            &[2, 1, 7, 11],
            &[3, 7, 1, 13],
            &[5, 11, 13, 1],
        ]);
        assert_eq!(
            m.hafnian().unwrap(),
            BigInt::from(2 * 13 + 3 * 11 + 5 * 7)
        );
        assert_eq!(m.hafnian().unwrap(), oracle::hafnian_permutation_sum(&m));
    }

    #[test]
    fn hafnian_odd_dimension_rejected() {
        let m = int_matrix(&[&[1, 2, 3], &[2, 1, 4], &[3, 4, 1]]);
        assert!(matches!(m.hafnian(), Err(LinalgError::OddDimension(3))));
    }

    #[test]
    fn adjugate_times_matrix_is_det() {
        let m = int_matrix(&[&[2, 0, 1], &[1, 3, -1], &[0, 4, 2]]);
        let det = m.determinant().unwrap();
        let prod = m.mul(&m.adjugate().unwrap());
        let expected = Matrix::identity(3).scale(&det);
        assert_eq!(prod, expected);
    }
}
