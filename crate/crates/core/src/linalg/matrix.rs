use super::elimination;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dense exact matrix stored by rows.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: Vec<Vec<T>>,
    cols: usize,
}

/// Reduced row-echelon form together with its pivot columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Echelon<T> {
    pub matrix: Matrix<T>,
    pub pivots: Vec<usize>,
}

impl<T: Scalar> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::InvalidInput(format!(
                "row of length {} in a matrix with {cols} columns",
                bad.len()
            )));
        }
        Ok(Matrix { rows, cols })
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Matrix {
            rows: vec![vec![T::zero(); ncols]; nrows],
            cols: ncols,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i][i] = T::one();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.rows[i][j] = value;
    }

    pub fn into_rows(self) -> Vec<Vec<T>> {
        self.rows
    }

    pub fn push_row(&mut self, row: Vec<T>) {
        assert_eq!(row.len(), self.cols, "row length");
        self.rows.push(row);
    }

    pub fn transpose(&self) -> Self {
        let rows = (0..self.cols)
            .map(|j| self.rows.iter().map(|r| r[j].clone()).collect())
            .collect();
        Matrix {
            rows,
            cols: self.rows.len(),
        }
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols, "vector length");
        self.rows.iter().map(|r| dot(r, v)).collect()
    }

    pub fn mul(&self, other: &Matrix<T>) -> Result<Matrix<T>> {
        if self.cols != other.nrows() {
            return Err(Error::InvalidInput(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows(),
                self.cols,
                other.nrows(),
                other.cols
            )));
        }
        let t = other.transpose();
        let rows = self
            .rows
            .iter()
            .map(|r| t.rows.iter().map(|c| dot(r, c)).collect())
            .collect();
        Ok(Matrix {
            rows,
            cols: other.cols,
        })
    }

    pub fn echelon(&self) -> Echelon<T> {
        let mut rows = self.rows.clone();
        let pivots = T::row_reduce(&mut rows, self.cols);
        Echelon {
            matrix: Matrix {
                rows,
                cols: self.cols,
            },
            pivots,
        }
    }

    /// Reduced row-echelon form with zero rows removed.
    pub fn rref(&self) -> Matrix<T> {
        self.echelon().matrix
    }

    pub fn rank(&self) -> usize {
        let bound = self.rows.len().min(self.cols);
        if elimination::modular_rank(&self.rows, self.cols) == Some(bound) {
            return bound;
        }
        self.echelon().pivots.len()
    }

    /// Basis (as rows) of the right null space `{x : M x = 0}`.
    pub fn kernel(&self) -> Matrix<T> {
        if elimination::modular_rank(&self.rows, self.cols) == Some(self.cols) {
            return Matrix::zeros(0, self.cols);
        }
        let ech = self.echelon();
        let free = non_pivots(&ech.pivots, self.cols);
        let rows = free
            .iter()
            .map(|&f| {
                let mut v = vec![T::zero(); self.cols];
                v[f] = T::one();
                for (row, &p) in ech.matrix.rows.iter().zip(&ech.pivots) {
                    if !row[f].is_zero() {
                        v[p] = -row[f].clone();
                    }
                }
                v
            })
            .collect();
        Matrix {
            rows,
            cols: self.cols,
        }
    }

    /// Solves `M x = b` for every right-hand side at once. Entry `j` is
    /// `None` when `rhs[j]` is not in the column space. Free variables are
    /// set to zero.
    pub fn solve_many(&self, rhs: &[Vec<T>]) -> Vec<Option<Vec<T>>> {
        let n = self.cols;
        let mut rows: Vec<Vec<T>> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut aug = r.clone();
                aug.extend(rhs.iter().map(|b| b[i].clone()));
                aug
            })
            .collect();
        let pivots = T::row_reduce(&mut rows, n + rhs.len());
        (0..rhs.len())
            .map(|j| {
                let col = n + j;
                let inconsistent = rows
                    .iter()
                    .zip(&pivots)
                    .any(|(row, &p)| p >= n && !row[col].is_zero());
                if inconsistent {
                    return None;
                }
                let mut x = vec![T::zero(); n];
                for (row, &p) in rows.iter().zip(&pivots) {
                    if p < n {
                        x[p] = row[col].clone();
                    }
                }
                Some(x)
            })
            .collect()
    }

    pub fn solve(&self, b: &[T]) -> Option<Vec<T>> {
        self.solve_many(std::slice::from_ref(&b.to_vec()))
            .pop()
            .flatten()
    }
}

pub(crate) fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub(crate) fn non_pivots(pivots: &[usize], cols: usize) -> Vec<usize> {
    let mut next = pivots.iter().peekable();
    (0..cols)
        .filter(|c| {
            if next.peek() == Some(&c) {
                next.next();
                false
            } else {
                true
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::Zero;

    type Q = BigRational;

    fn m(rows: &[&[i64]]) -> Matrix<Q> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Q::from_i64(x)).collect())
                .collect(),
            cols,
        )
        .unwrap()
    }

    #[test]
    fn rref_of_identity_is_identity() {
        let id = Matrix::<Q>::identity(4);
        assert_eq!(id.rref(), id);
    }

    #[test]
    fn rank_one_matrix_collapses_to_one_row() {
        assert_eq!(m(&[&[2, 4], &[1, 2]]).rref(), m(&[&[1, 2]]));
    }

    #[test]
    fn kernel_plus_rank_is_column_count() {
        let a = m(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 0, 1]]);
        let k = a.kernel();
        assert_eq!(k.nrows() + a.rank(), 4);
        for v in k.rows() {
            assert!(a.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn solve_many_flags_inconsistent_systems() {
        let a = m(&[&[1, 0], &[0, 0]]);
        let one = Q::from_i64(1);
        let zero = Q::from_i64(0);
        let sols = a.solve_many(&[vec![one.clone(), zero.clone()], vec![zero, one.clone()]]);
        assert_eq!(sols[0], Some(vec![one, Q::from_i64(0)]));
        assert_eq!(sols[1], None);
    }

    #[test]
    fn non_pivots_complement_pivots() {
        assert_eq!(non_pivots(&[0, 2, 3], 6), vec![1, 4, 5]);
        assert_eq!(non_pivots(&[], 2), vec![0, 1]);
    }
}
