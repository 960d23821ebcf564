//! Framed links in S³ at the level of linking matrices.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::abelian::AbelianInvariants;
use crate::error::{CancelFailure, Error, Result};
use crate::IntMatrix;

/// Framings on the diagonal, linking numbers off it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FramedLink {
    labels: Vec<String>,
    lk: IntMatrix,
}

impl FramedLink {
    pub fn new(lk: IntMatrix, labels: Vec<String>) -> Result<Self> {
        if !lk.is_square() {
            return Err(Error::NotSquare { rows: lk.rows(), cols: lk.cols() });
        }
        if !lk.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        if labels.len() != lk.rows() {
            return Err(Error::DimensionMismatch(format!("{} labels for {} components", labels.len(), lk.rows())));
        }
        let mut seen = HashSet::new();
        if let Some(dup) = labels.iter().find(|l| !seen.insert(*l)) {
            return Err(Error::DuplicateLabel(dup.clone()));
        }
        Ok(FramedLink { labels, lk })
    }

    /// Components labelled `K1, K2, …`.
    pub fn unlabelled(lk: IntMatrix) -> Result<Self> {
        let labels = (1..=lk.rows()).map(|i| format!("K{i}")).collect();
        Self::new(lk, labels)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn lk(&self) -> &IntMatrix {
        &self.lk
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

/// The 0-framed Borromean rings `B1, B2, B3` with a meridian `mu_a` of `B1`
/// framed `m` and a meridian `mu_b` of `B2` framed `n`.
#[allow(non_snake_case)]
pub fn build_Y(m: i64, n: i64) -> FramedLink {
    let mut lk = IntMatrix::zeros(5, 5);
    lk[(3, 3)] = BigInt::from(m);
    lk[(4, 4)] = BigInt::from(n);
    for (i, j) in [(0, 3), (1, 4)] {
        lk[(i, j)] = BigInt::from(1);
        lk[(j, i)] = BigInt::from(1);
    }
    let labels = ["B1", "B2", "B3", "mu_a", "mu_b"].map(String::from).to_vec();
    FramedLink::new(lk, labels).expect("symmetric with distinct labels")
}

/// H₁ of the surgered manifold: the cokernel of the linking matrix.
pub fn link_h1(l: &FramedLink) -> AbelianInvariants {
    AbelianInvariants::cokernel(&l.lk)
}

/// Slides component `i` over component `j` (0-based). The linking matrix
/// changes by the congruence `Eᵀ·lk·E`, `E = I + sign·E_ji`.
pub fn handle_slide(l: &FramedLink, i: usize, j: usize, sign: i64) -> Result<FramedLink> {
    if i == j || i >= l.len() || j >= l.len() {
        return Err(Error::BadSlide(i, j));
    }
    if sign.abs() != 1 {
        return Err(Error::SlideSign(sign));
    }
    let s = BigInt::from(sign);
    let mut lk = l.lk.clone();
    lk.add_col_multiple(i, j, &s);
    lk.add_row_multiple(i, j, &s);
    Ok(FramedLink { labels: l.labels.clone(), lk })
}

/// Removes a 0-framed component `i` and a component `j` linking it once,
/// provided neither links anything else.
pub fn cancel_pair(l: &FramedLink, i: usize, j: usize) -> Result<FramedLink> {
    let n = l.len();
    for idx in [i, j] {
        if idx >= n {
            return Err(CancelFailure::OutOfRange(idx).into());
        }
    }
    if i == j {
        return Err(CancelFailure::SameComponent(i, j).into());
    }
    if !l.lk[(i, i)].is_zero() {
        return Err(CancelFailure::NonzeroFraming(i, l.lk[(i, i)].to_string()).into());
    }
    if l.lk[(i, j)].abs() != BigInt::from(1) {
        return Err(CancelFailure::NonUnitLinking(i, j, l.lk[(i, j)].to_string()).into());
    }
    for c in [i, j] {
        if let Some(other) = (0..n).find(|&k| k != i && k != j && !l.lk[(c, k)].is_zero()) {
            return Err(CancelFailure::ExternalLinking(c, other).into());
        }
    }
    let labels = l.labels.iter().enumerate().filter(|&(k, _)| k != i && k != j).map(|(_, s)| s.clone()).collect();
    Ok(FramedLink { labels, lk: l.lk.without_indices(&[i, j]) })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "move", rename_all = "lowercase")]
pub enum LinkMove {
    Slide { i: usize, j: usize, sign: i64 },
    Cancel { i: usize, j: usize },
}

pub fn apply_move(l: &FramedLink, mv: LinkMove) -> Result<FramedLink> {
    match mv {
        LinkMove::Slide { i, j, sign } => handle_slide(l, i, j, sign),
        LinkMove::Cancel { i, j } => cancel_pair(l, i, j),
    }
}

fn reduce_meridian(framing: i64, meridian: usize, over: usize) -> impl Iterator<Item = LinkMove> {
    // each slide over the 0-framed component it links once shifts the framing by 2·sign
    let excess = framing - framing.rem_euclid(2);
    let slide = LinkMove::Slide { i: meridian, j: over, sign: -excess.signum() };
    std::iter::repeat_n(slide, (excess.abs() / 2) as usize)
}

/// Moves taking `build_Y(m, n)` to the single 0-framed component `B3`.
///
/// The meridians are first slid over their Borromean partner until their
/// framings are `m mod 2` and `n mod 2`; a pair becomes `[[0,1],[1,0]]`
/// exactly when the framing is even, since congruence preserves parity.
/// Either way the pair is unimodular and cancels.
pub fn y_simplification(m: i64, n: i64) -> Vec<LinkMove> {
    let mut moves: Vec<LinkMove> = reduce_meridian(m, 3, 0).chain(reduce_meridian(n, 4, 1)).collect();
    // cancel B1 with mu_a; the remaining order is B2, B3, mu_b
    moves.push(LinkMove::Cancel { i: 0, j: 3 });
    moves.push(LinkMove::Cancel { i: 0, j: 2 });
    moves
}

pub fn replay_moves(l: &FramedLink, moves: &[LinkMove]) -> Result<FramedLink> {
    moves.iter().try_fold(l.clone(), |acc, &mv| apply_move(&acc, mv))
}
