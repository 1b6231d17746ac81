//! Minimal dense square matrix storage for the eigensolver and the search
//! Hamiltonian. Row-major, sized for the experiment range (n up to ~2000).

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(n: usize) -> Self {
        Matrix {
            n,
            data: vec![T::zero(); n * n],
        }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        for r in &rows {
            if r.len() != n {
                return Err(Error::NotSquare {
                    rows: n,
                    cols: r.len(),
                });
            }
        }
        Ok(Matrix {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.n + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    /// Largest elementwise asymmetry |a_ij - a_ji|.
    pub fn symmetry_deviation(&self) -> T {
        let mut worst = T::zero();
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                let dev = (self.get(i, j) - self.get(j, i)).abs();
                if dev > worst {
                    worst = dev;
                }
            }
        }
        worst
    }

    /// Errors unless the matrix is symmetric within `tol` elementwise.
    pub fn require_symmetric(&self, tol: T) -> Result<()> {
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                let dev = (self.get(i, j) - self.get(j, i)).abs();
                if dev > tol {
                    return Err(Error::NotSymmetric {
                        i,
                        j,
                        deviation: dev.to_f64().unwrap_or(f64::NAN),
                    });
                }
            }
        }
        Ok(())
    }
}
