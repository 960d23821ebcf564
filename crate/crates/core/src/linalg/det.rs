use super::matrix::Matrix;
use super::scalar::IntScalar;
use crate::error::{Error, Result};

impl<T: IntScalar> Matrix<T> {
    /// Exact determinant by Bareiss fraction-free elimination.
    pub fn determinant(&self) -> Result<T> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows(), cols: self.cols() });
        }
        let n = self.rows();
        if n == 0 {
            return Ok(T::one());
        }
        let mut a = self.clone();
        let mut negate = false;
        let mut prev = T::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        negate = !negate;
                    }
                    None => return Ok(T::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = a[(i, j)].clone() * a[(k, k)].clone() - a[(i, k)].clone() * a[(k, j)].clone();
                    a[(i, j)] = v / prev.clone();
                }
            }
            prev = a[(k, k)].clone();
        }
        let d = a[(n - 1, n - 1)].clone();
        Ok(if negate { -d } else { d })
    }
}
