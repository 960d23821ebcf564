//! Elementary matrices `I + k·E_ij` and factorization of special linear
//! integer matrices into unit transvections.

use std::fmt;

use serde::Serialize;

use super::matrix::Matrix;
use super::scalar::IntScalar;
use crate::error::{Error, Result};

/// The elementary matrix with ones on the diagonal and `k` at `(i, j)`.
/// Indices are 1-based, as in `R12`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Transvection {
    pub i: usize,
    pub j: usize,
    pub k: i64,
}

impl Transvection {
    pub fn new(i: usize, j: usize, k: i64) -> Result<Self> {
        if i == j || i == 0 || j == 0 {
            return Err(Error::DimensionMismatch(format!("transvection indices ({i},{j})")));
        }
        Ok(Transvection { i, j, k })
    }

    /// `R12`: a one above the diagonal in the first row.
    pub fn r12() -> Self {
        Transvection { i: 1, j: 2, k: 1 }
    }

    /// `R21`: a one below the diagonal in the second row.
    pub fn r21() -> Self {
        Transvection { i: 2, j: 1, k: 1 }
    }

    pub fn inverse(self) -> Self {
        Transvection { k: -self.k, ..self }
    }

    pub fn matrix<T: IntScalar>(&self, n: usize) -> Matrix<T> {
        assert!(self.i <= n && self.j <= n, "transvection {self} does not fit {n}x{n}");
        let mut m = Matrix::identity(n);
        m[(self.i - 1, self.j - 1)] = <T as IntScalar>::from_i64(self.k);
        m
    }
}

impl fmt::Display for Transvection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.k {
            1 => write!(f, "R{}{}", self.i, self.j),
            -1 => write!(f, "R{}{}^-1", self.i, self.j),
            k => write!(f, "R{}{}^{}", self.i, self.j, k),
        }
    }
}

/// Row operations `row[i] += k * row[j]` that reduce `m` to the identity.
fn reduce_to_identity<T: IntScalar>(m: &Matrix<T>) -> Vec<Transvection> {
    let n = m.rows();
    let mut a = m.clone();
    let mut ops: Vec<Transvection> = Vec::new();
    let mut apply = |a: &mut Matrix<T>, i: usize, j: usize, k: T| {
        if k.is_zero() {
            return;
        }
        a.add_row_multiple(i, j, &k);
        let k = k.to_i64().expect("elimination multiplier exceeds i64");
        ops.push(Transvection { i: i + 1, j: j + 1, k });
    };

    for c in 0..n {
        // Euclid down column c using only row additions.
        loop {
            let mut pivot: Option<usize> = None;
            for i in c..n {
                let v = a[(i, c)].abs();
                if !v.is_zero() && pivot.is_none_or(|p| v < a[(p, c)].abs()) {
                    pivot = Some(i);
                }
            }
            let p = pivot.expect("determinant +1 rules out a zero column");
            let mut done = true;
            for i in c..n {
                if i != p && !a[(i, c)].is_zero() {
                    let q = a[(i, c)].clone() / a[(p, c)].clone();
                    apply(&mut a, i, p, -q);
                    done &= a[(i, c)].is_zero();
                }
            }
            if done {
                if p != c {
                    // row c is zero in column c: move the pivot up without a swap
                    apply(&mut a, c, p, T::one());
                    apply(&mut a, p, c, -T::one());
                }
                break;
            }
        }
    }

    // Upper triangular with unit diagonal entries; clear above the diagonal.
    for c in (0..n).rev() {
        let s = a[(c, c)].clone();
        for i in 0..c {
            if !a[(i, c)].is_zero() {
                let q = a[(i, c)].clone() * s.clone();
                apply(&mut a, i, c, -q);
            }
        }
    }

    // Pair up -1 diagonal entries; det = +1 makes their number even.
    let negatives: Vec<usize> = (0..n).filter(|&i| a[(i, i)].is_negative()).collect();
    for pair in negatives.chunks(2) {
        let (i, j) = (pair[0], pair[1]);
        // rows (-e_i, -e_j) -> (e_j, -e_i) -> (e_i, e_j)
        for _ in 0..2 {
            apply(&mut a, j, i, T::one());
            apply(&mut a, i, j, -T::one());
            apply(&mut a, j, i, T::one());
        }
    }
    debug_assert!(a.is_identity());
    ops
}

/// Factors a determinant-one matrix as `T_1 · T_2 ⋯ T_r` (left to right)
/// with every `T_s` a unit transvection (`k = ±1`).
///
/// The elimination `E_s ⋯ E_1 · m = I` gives `m = E_1⁻¹ ⋯ E_s⁻¹`; adjacent
/// factors on the same position are merged before expanding each into `|k|`
/// unit factors.
pub fn factor_transvections<T: IntScalar>(m: &Matrix<T>) -> Result<Vec<Transvection>> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let det = m.determinant()?;
    if !det.is_one() {
        return Err(Error::NotSpecialLinear(det.to_string()));
    }
    let mut merged: Vec<Transvection> = Vec::new();
    for t in reduce_to_identity(m).into_iter().map(Transvection::inverse) {
        match merged.last_mut() {
            Some(last) if last.i == t.i && last.j == t.j => {
                last.k += t.k;
                if last.k == 0 {
                    merged.pop();
                }
            }
            _ => merged.push(t),
        }
    }
    Ok(merged
        .into_iter()
        .flat_map(|t| {
            let unit = Transvection { k: t.k.signum(), ..t };
            std::iter::repeat_n(unit, t.k.unsigned_abs() as usize)
        })
        .collect())
}

/// Left-to-right product of the factors as an `n×n` matrix.
pub fn product<T: IntScalar>(factors: &[Transvection], n: usize) -> Matrix<T> {
    factors.iter().fold(Matrix::identity(n), |acc, t| &acc * &t.matrix(n))
}
