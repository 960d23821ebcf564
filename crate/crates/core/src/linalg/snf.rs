//! Smith normal form with unimodular transforms.

use super::matrix::Matrix;
use super::scalar::IntScalar;

/// `u * m * v == diag(d)` with `d[0] | d[1] | ...`, all `d[i] >= 0`, and
/// `u`, `v` unimodular. `d` has `min(rows, cols)` entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult<T: std::fmt::Display> {
    pub d: Vec<T>,
    pub u: Matrix<T>,
    pub v: Matrix<T>,
}

impl<T: IntScalar> SnfResult<T> {
    /// The diagonal matrix `u * m * v` should equal.
    pub fn diagonal(&self) -> Matrix<T> {
        let mut out = Matrix::zeros(self.u.rows(), self.v.cols());
        for (i, d) in self.d.iter().enumerate() {
            out[(i, i)] = d.clone();
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.d.iter().filter(|d| !d.is_zero()).count()
    }
}

struct Reducer<T> {
    a: Matrix<T>,
    u: Matrix<T>,
    v: Matrix<T>,
}

impl<T: IntScalar> Reducer<T> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
    }

    fn add_row(&mut self, target: usize, source: usize, k: &T) {
        self.a.add_row_multiple(target, source, k);
        self.u.add_row_multiple(target, source, k);
    }

    fn add_col(&mut self, target: usize, source: usize, k: &T) {
        self.a.add_col_multiple(target, source, k);
        self.v.add_col_multiple(target, source, k);
    }

    /// Smallest nonzero |entry| in the lower-right block from `t`; ties go to
    /// the first position in row-major order.
    fn block_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), T)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let v = self.a[(i, j)].abs();
                if !v.is_zero() && best.as_ref().is_none_or(|(_, b)| v < *b) {
                    best = Some(((i, j), v));
                }
            }
        }
        best.map(|(p, _)| p)
    }

    /// Same, restricted to row `t` and column `t`.
    fn cross_pivot(&self, t: usize) -> (usize, usize) {
        let mut best = ((t, t), self.a[(t, t)].abs());
        let better = |v: &T, b: &T| !v.is_zero() && (b.is_zero() || v < b);
        for i in t + 1..self.a.rows() {
            let v = self.a[(i, t)].abs();
            if better(&v, &best.1) {
                best = ((i, t), v);
            }
        }
        for j in t + 1..self.a.cols() {
            let v = self.a[(t, j)].abs();
            if better(&v, &best.1) {
                best = ((t, j), v);
            }
        }
        best.0
    }

    fn bring_to(&mut self, t: usize, (i, j): (usize, usize)) {
        self.swap_rows(t, i);
        self.swap_cols(t, j);
    }

    /// Clears row and column `t` by division with remainder; true when both
    /// are clear.
    fn clear_cross(&mut self, t: usize) -> bool {
        let p = self.a[(t, t)].clone();
        let mut clear = true;
        for i in t + 1..self.a.rows() {
            if !self.a[(i, t)].is_zero() {
                let q = self.a[(i, t)].clone() / p.clone();
                self.add_row(i, t, &-q);
                clear &= self.a[(i, t)].is_zero();
            }
        }
        for j in t + 1..self.a.cols() {
            if !self.a[(t, j)].is_zero() {
                let q = self.a[(t, j)].clone() / p.clone();
                self.add_col(j, t, &-q);
                clear &= self.a[(t, j)].is_zero();
            }
        }
        clear
    }

    fn first_non_multiple(&self, t: usize) -> Option<usize> {
        let p = &self.a[(t, t)];
        (t + 1..self.a.rows())
            .find(|&i| (t + 1..self.a.cols()).any(|j| !(self.a[(i, j)].clone() % p.clone()).is_zero()))
    }
}

pub fn smith_normal_form<T: IntScalar>(m: &Matrix<T>) -> SnfResult<T> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut r = Reducer { a: m.clone(), u: Matrix::identity(rows), v: Matrix::identity(cols) };
    let steps = rows.min(cols);
    for t in 0..steps {
        let Some(pivot) = r.block_pivot(t) else { break };
        r.bring_to(t, pivot);
        loop {
            if !r.clear_cross(t) {
                let p = r.cross_pivot(t);
                r.bring_to(t, p);
                continue;
            }
            match r.first_non_multiple(t) {
                Some(i) => r.add_row(t, i, &T::one()),
                None => break,
            }
        }
        if r.a[(t, t)].is_negative() {
            r.a.negate_row(t);
            r.u.negate_row(t);
        }
    }
    let d = (0..steps).map(|i| r.a[(i, i)].clone()).collect();
    SnfResult { d, u: r.u, v: r.v }
}
