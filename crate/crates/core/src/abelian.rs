//! Finitely generated abelian groups in invariant-factor form.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::linalg::matrix::serialize_int_seq;
use crate::linalg::{smith_normal_form, IntScalar, Matrix};

/// `Z/d_1 ⊕ Z/d_2 ⊕ ...` with `d_1 | d_2 | ...`; a factor of 0 is a copy
/// of `Z`, and factors equal to 1 are dropped. The empty list is the
/// trivial group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct AbelianInvariants {
    invariant_factors: Vec<BigInt>,
}

impl AbelianInvariants {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        AbelianInvariants { invariant_factors: vec![BigInt::zero(); rank] }
    }

    /// Builds the group from an already valid divisibility chain, dropping units.
    pub fn from_chain<T: IntScalar>(chain: &[T]) -> Self {
        let invariant_factors = chain
            .iter()
            .map(|d| d.to_bigint().expect("integer").magnitude().clone().into())
            .filter(|d: &BigInt| !d.is_one())
            .collect();
        AbelianInvariants { invariant_factors }
    }

    /// `Z^cols / (row space of m)`: each row is one relation among the
    /// column generators.
    pub fn from_relation_matrix<T: IntScalar>(m: &Matrix<T>) -> Self {
        let snf = smith_normal_form(m);
        let mut chain = snf.d;
        chain.extend(std::iter::repeat_n(T::zero(), m.cols() - chain.len()));
        Self::from_chain(&chain)
    }

    /// `Z^rows / (column space of m)`.
    pub fn cokernel<T: IntScalar>(m: &Matrix<T>) -> Self {
        Self::from_relation_matrix(&m.transpose())
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn free_rank(&self) -> usize {
        self.invariant_factors.iter().filter(|d| d.is_zero()).count()
    }

    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors.iter().filter(|d| !d.is_zero()).cloned().collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Group order, or `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank() > 0 {
            None
        } else {
            Some(self.invariant_factors.iter().product())
        }
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.invariant_factors.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|d| if d.is_zero() { "Z".to_string() } else { format!("Z/{d}") })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

struct Factors<'a>(&'a [BigInt]);

impl Serialize for Factors<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serialize_int_seq(self.0, s)
    }
}

impl Serialize for AbelianInvariants {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("AbelianInvariants", 3)?;
        st.serialize_field("invariant_factors", &Factors(&self.invariant_factors))?;
        st.serialize_field("free_rank", &self.free_rank())?;
        st.serialize_field("text", &self.to_string())?;
        st.end()
    }
}
