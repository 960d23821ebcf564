use std::fmt;
use std::ops::{Index, IndexMut, Mul, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::ser::{Serialize, SerializeSeq, Serializer};

use super::scalar::IntScalar;
use crate::error::{Error, ParseError, Result};

/// Dense row-major matrix over an exact integer scalar.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: IntScalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Ragged);
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Convenience constructor for literals in tests and tables.
    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let converted =
            rows.iter().map(|row| row.as_ref().iter().map(|&v| <T as IntScalar>::from_i64(v)).collect()).collect();
        Self::from_rows(converted).expect("literal rows must have equal length")
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

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[target] += k * row[source]`
    pub fn add_row_multiple(&mut self, target: usize, source: usize, k: &T) {
        for j in 0..self.cols {
            let v = self[(source, j)].clone() * k.clone();
            self[(target, j)] = self[(target, j)].clone() + v;
        }
    }

    /// `col[target] += k * col[source]`
    pub fn add_col_multiple(&mut self, target: usize, source: usize, k: &T) {
        for i in 0..self.rows {
            let v = self[(i, source)].clone() * k.clone();
            self[(i, target)] = self[(i, target)].clone() + v;
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            self[(i, j)] = -self[(i, j)].clone();
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            self[(i, j)] = -self[(i, j)].clone();
        }
    }

    /// Deletes the listed rows and the same-numbered columns.
    pub fn without_indices(&self, drop: &[usize]) -> Self {
        let keep_r: Vec<usize> = (0..self.rows).filter(|i| !drop.contains(i)).collect();
        let keep_c: Vec<usize> = (0..self.cols).filter(|j| !drop.contains(j)).collect();
        let mut data = Vec::with_capacity(keep_r.len() * keep_c.len());
        for &i in &keep_r {
            for &j in &keep_c {
                data.push(self[(i, j)].clone());
            }
        }
        Matrix { rows: keep_r.len(), cols: keep_c.len(), data }
    }

    pub fn checked_mul(&self, rhs: &Matrix<T>) -> Result<Matrix<T>> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = a.clone() * rhs[(k, j)].clone();
                    out[(i, j)] = out[(i, j)].clone() + v;
                }
            }
        }
        Ok(out)
    }

    /// Converts entries to another scalar; `None` if some entry does not fit.
    pub fn cast<U: IntScalar>(&self) -> Option<Matrix<U>> {
        let data = self
            .data
            .iter()
            .map(|v| {
                let b: BigInt = v.to_bigint()?;
                match b.to_i128() {
                    Some(x) => U::from_i128(x),
                    None => b.to_string().parse::<U>().ok(),
                }
            })
            .collect::<Option<Vec<U>>>()?;
        Some(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn to_bigint(&self) -> Matrix<BigInt> {
        self.cast().expect("BigInt holds every IntScalar")
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = &self[(i, j)];
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl<T: IntScalar> Mul for &Matrix<T> {
    type Output = Matrix<T>;

    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        self.checked_mul(rhs).expect("matrix dimensions must agree")
    }
}

impl<T: IntScalar> Sub for &Matrix<T> {
    type Output = Matrix<T>;

    fn sub(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix dimensions must agree");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() - b.clone()).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }
}

/// Row-major text: rows separated by `;`, entries by `,`.
impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(";")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
        }
        Ok(())
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[{self}]")
    }
}

impl<T: IntScalar> FromStr for Matrix<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Matrix { rows: 0, cols: 0, data: Vec::new() });
        }
        let rows = s
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|e| {
                        e.trim().parse::<T>().map_err(|_| ParseError::new(format!("bad matrix entry {:?}", e.trim())))
                    })
                    .collect::<Result<Vec<T>, ParseError>>()
            })
            .collect::<Result<Vec<_>, ParseError>>()?;
        Matrix::from_rows(rows)
    }
}

/// Serializes one integer as a JSON number when it fits in `i64`, else as a
/// decimal string.
pub(crate) fn serialize_int<T: IntScalar, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    match v.to_i64() {
        Some(x) => s.serialize_i64(x),
        None => s.serialize_str(&v.to_string()),
    }
}

pub(crate) struct IntRef<'a, T>(pub &'a T);

impl<T: IntScalar> Serialize for IntRef<'_, T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serialize_int(self.0, s)
    }
}

pub(crate) fn serialize_int_seq<T: IntScalar, S: Serializer>(v: &[T], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&IntRef(x))?;
    }
    seq.end()
}

struct RowRef<'a, T>(&'a [T]);

impl<T: IntScalar> Serialize for RowRef<'_, T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serialize_int_seq(self.0, s)
    }
}

/// Serialized as an array of rows.
impl<T: IntScalar> Serialize for Matrix<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            seq.serialize_element(&RowRef(self.row(i)))?;
        }
        seq.end()
    }
}
