//! T³-bundles over the circle.
//!
//! Column `g` of the monodromy is the image of the `g`-th fiber loop. A
//! surgery on a product torus in the fiber multiplies the monodromy on the
//! left by a transvection.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use crate::abelian::AbelianInvariants;
use crate::error::{Error, Result};
use crate::fpgroup::Presentation;
use crate::linalg::{factor_transvections, Transvection};
use crate::word::{Generator, Word};
use crate::{IntMatrix, SmallMatrix};

/// Largest entry bound `cs_search` accepts.
pub const MAX_SEARCH_BOUND: i64 = 3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MappingTorus {
    monodromy: IntMatrix,
    label: Option<String>,
}

fn check_3x3<T: crate::IntScalar>(m: &crate::Matrix<T>) -> Result<()> {
    if m.rows() != 3 || m.cols() != 3 {
        return Err(Error::WrongSize { rows: m.rows(), cols: m.cols(), expected: 3 });
    }
    Ok(())
}

impl MappingTorus {
    pub fn new(monodromy: IntMatrix, label: Option<String>) -> Result<Self> {
        check_3x3(&monodromy)?;
        let det = monodromy.determinant()?;
        if !det.is_one() {
            return Err(Error::NotSpecialLinear(det.to_string()));
        }
        Ok(MappingTorus { monodromy, label })
    }

    /// The trivial bundle T⁴.
    pub fn identity() -> Self {
        MappingTorus { monodromy: IntMatrix::identity(3), label: Some("T4".into()) }
    }

    pub fn monodromy(&self) -> &IntMatrix {
        &self.monodromy
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }
}

/// `⟨x,y,z,t | [x,y], [x,z], [y,z], t g t⁻¹ = φ(g)⟩`.
///
/// # Panics
/// If a monodromy entry does not fit in `i64`.
pub fn torus_presentation(mt: &MappingTorus) -> Presentation {
    let fiber = ["x", "y", "z"].map(Word::named);
    let t = Word::named("t");
    let mut relators = vec![
        Word::commutator(&fiber[0], &fiber[1]),
        Word::commutator(&fiber[0], &fiber[2]),
        Word::commutator(&fiber[1], &fiber[2]),
    ];
    for (g, loop_g) in fiber.iter().enumerate() {
        let image = (0..3).fold(Word::identity(), |acc, i| {
            let e = mt.monodromy[(i, g)].to_i64().expect("monodromy entry fits in i64");
            acc.concat(&fiber[i].power(e))
        });
        relators.push(t.concat(loop_g).concat(&t.inverse()).concat(&image.inverse()));
    }
    Presentation::new(["x", "y", "z", "t"].map(Generator::new).to_vec(), relators)
        .expect("relators use only x, y, z, t")
}

/// `det(φ − I)`; Cappell-Shaneson monodromies give `±1`.
pub fn cs_condition(phi: &IntMatrix) -> Result<BigInt> {
    check_3x3(phi)?;
    (phi - &IntMatrix::identity(3)).determinant()
}

pub fn surgery_multiply(mt: &MappingTorus, t: Transvection) -> MappingTorus {
    MappingTorus { monodromy: &t.matrix::<BigInt>(3) * &mt.monodromy, label: None }
}

/// Transvections whose left-to-right product is `phi`.
pub fn realize_by_surgeries(phi: &IntMatrix) -> Result<Vec<Transvection>> {
    check_3x3(phi)?;
    factor_transvections(phi)
}

/// Applies the factors to `M_I` by successive left multiplication, last
/// factor first, so the result's monodromy is the left-to-right product.
pub fn replay(factors: &[Transvection]) -> MappingTorus {
    factors.iter().rev().fold(MappingTorus::identity(), |mt, &t| surgery_multiply(&mt, t))
}

/// `ℤ³ / (φ − I)ℤ³`: what remains of H₁ after surgery on the section circle.
pub fn circle_surgery_group(mt: &MappingTorus) -> AbelianInvariants {
    AbelianInvariants::cokernel(&(&mt.monodromy - &IntMatrix::identity(3)))
}

fn det3(m: &[i64; 9]) -> i64 {
    m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) + m[2] * (m[3] * m[7] - m[4] * m[6])
}

/// Every 3×3 integer matrix with entries in `[-bound, bound]`, determinant
/// `+1` and `det(φ − I) = ±1`, in lexicographic order of row-major entries.
pub fn cs_search(bound: i64) -> Result<Vec<IntMatrix>> {
    if !(0..=MAX_SEARCH_BOUND).contains(&bound) {
        return Err(Error::SearchBound(bound));
    }
    let side = (2 * bound + 1) as usize;
    let cells = side.pow(9);
    // one work unit per choice of the first row
    let rows = side.pow(3);
    let found: Vec<Vec<[i64; 9]>> = (0..rows)
        .into_par_iter()
        .map(|head| {
            let mut out = Vec::new();
            for tail in 0..cells / rows {
                let mut code = head * (cells / rows) + tail;
                let mut m = [0i64; 9];
                for slot in m.iter_mut().rev() {
                    *slot = (code % side) as i64 - bound;
                    code /= side;
                }
                if det3(&m) != 1 {
                    continue;
                }
                let mut shifted = m;
                for d in [0, 4, 8] {
                    shifted[d] -= 1;
                }
                if det3(&shifted).abs() == 1 {
                    out.push(m);
                }
            }
            out
        })
        .collect();
    Ok(found
        .into_iter()
        .flatten()
        .map(|m| {
            let small = SmallMatrix::new(3, 3, m.to_vec()).expect("nine entries");
            small.to_bigint()
        })
        .collect())
}
