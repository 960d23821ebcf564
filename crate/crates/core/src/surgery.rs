//! Torus surgeries on two copies of T²ₒ×T²ₒ and the glued four-manifolds.
//!
//! Each copy `i` has generators `ai, bi, ci, di`. A surgery adds one relator
//! `μᵖ · direction⁻¹`; gluing identifies `a1~c2, b1~d2, a2~c1, b2~d1`.

use std::fmt;

use serde::Serialize;

use crate::abelian::AbelianInvariants;
use crate::error::{Error, Result};
use crate::fpgroup::{coset_enumerate, EnumerationOutcome, Presentation};
use crate::word::{Generator, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TorusId {
    #[serde(rename = "T_ac")]
    Tac,
    #[serde(rename = "T_bc")]
    Tbc,
}

impl fmt::Display for TorusId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TorusId::Tac => "T_ac",
            TorusId::Tbc => "T_bc",
        })
    }
}

fn copy_generator(letter: char, copy: u8) -> Generator {
    Generator::new(&format!("{letter}{copy}"))
}

fn check_copy(copy: u8) -> Result<()> {
    if copy == 1 || copy == 2 {
        Ok(())
    } else {
        Err(Error::CopyIndex(copy))
    }
}

/// Push-off loops `a`, `b` and meridian `mu` of a torus boundary, as words
/// in the complement group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusBoundaryBasis {
    pub a: Word,
    pub b: Word,
    pub mu: Word,
}

impl TorusBoundaryBasis {
    pub fn new(torus: TorusId, copy: u8) -> Result<Self> {
        check_copy(copy)?;
        let g = |c| Word::generator(&copy_generator(c, copy));
        Ok(match torus {
            TorusId::Tac => {
                TorusBoundaryBasis { a: g('a'), b: g('c'), mu: Word::commutator(&g('b').inverse(), &g('d').inverse()) }
            }
            TorusId::Tbc => {
                TorusBoundaryBasis { a: g('b'), b: g('c'), mu: Word::commutator(&g('a').inverse(), &g('d')) }
            }
        })
    }
}

/// A degree-`p` surgery in direction `q·a + r·b` on one torus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurgerySpec {
    pub torus_id: TorusId,
    pub copy_index: u8,
    pub p: i64,
    pub q: i64,
    pub r: i64,
    #[serde(serialize_with = "serialize_display")]
    pub direction_word: Word,
    #[serde(serialize_with = "serialize_display")]
    pub meridian_word: Word,
}

fn serialize_display<S: serde::Serializer, T: fmt::Display>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

impl SurgerySpec {
    pub fn new(torus_id: TorusId, copy_index: u8, p: i64, q: i64, r: i64) -> Result<Self> {
        let basis = TorusBoundaryBasis::new(torus_id, copy_index)?;
        let spec = SurgerySpec {
            torus_id,
            copy_index,
            p,
            q,
            r,
            direction_word: basis.a.power(q).concat(&basis.b.power(r)),
            meridian_word: basis.mu,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// The `(p/1)` surgery along the first push-off direction.
    pub fn along_a(torus_id: TorusId, copy_index: u8, p: i64) -> Result<Self> {
        Self::new(torus_id, copy_index, p, 1, 0)
    }

    pub fn validate(&self) -> Result<()> {
        let basis = TorusBoundaryBasis::new(self.torus_id, self.copy_index)?;
        if (self.p, self.q, self.r) == (0, 0, 0) {
            return Err(Error::InvalidSurgery("(p,q,r) is zero".into()));
        }
        let unit_direction = matches!((self.q.abs(), self.r.abs()), (1, 0) | (0, 1));
        if !unit_direction {
            return Err(Error::InvalidSurgery(format!(
                "direction ({},{}) must have one entry +-1 and the other 0",
                self.q, self.r
            )));
        }
        if self.meridian_word != basis.mu {
            return Err(Error::InvalidSurgery(format!(
                "meridian {} does not belong to {} in copy {}",
                self.meridian_word, self.torus_id, self.copy_index
            )));
        }
        if self.direction_word != basis.a.power(self.q).concat(&basis.b.power(self.r)) {
            return Err(Error::InvalidSurgery(format!("direction word {} does not match (q,r)", self.direction_word)));
        }
        Ok(())
    }

    /// `μᵖ · direction⁻¹`.
    pub fn relator(&self) -> Word {
        self.meridian_word.power(self.p).concat(&self.direction_word.inverse())
    }
}

/// One copy of T²ₒ×T²ₒ minus its two tori, possibly with surgeries applied.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PieceModel {
    pub copy_index: u8,
    pub presentation: Presentation,
    pub chi: i64,
    pub surgeries: Vec<SurgerySpec>,
}

pub fn build_piece(copy_index: u8) -> Result<PieceModel> {
    check_copy(copy_index)?;
    let g = |c| Word::generator(&copy_generator(c, copy_index));
    let generators = ['a', 'b', 'c', 'd'].map(|c| copy_generator(c, copy_index)).to_vec();
    let relators = vec![Word::commutator(&g('a'), &g('c')), Word::commutator(&g('b'), &g('c'))];
    Ok(PieceModel { copy_index, presentation: Presentation::new(generators, relators)?, chi: 1, surgeries: Vec::new() })
}

pub fn apply_surgery(piece: &PieceModel, spec: &SurgerySpec) -> Result<PieceModel> {
    spec.validate()?;
    if spec.copy_index != piece.copy_index {
        return Err(Error::CopyMismatch { spec: spec.copy_index, piece: piece.copy_index });
    }
    let mut out = piece.clone();
    out.presentation = piece.presentation.with_relator(spec.relator())?;
    out.surgeries.push(spec.clone());
    Ok(out)
}

fn build_copy(copy: u8, m: i64, n: i64) -> Result<PieceModel> {
    let piece = build_piece(copy)?;
    let piece = apply_surgery(&piece, &SurgerySpec::along_a(TorusId::Tac, copy, m)?)?;
    apply_surgery(&piece, &SurgerySpec::along_a(TorusId::Tbc, copy, n)?)
}

/// `m/1` surgery on `T_ac` and `n/1` surgery on `T_bc` in copy 1.
#[allow(non_snake_case)]
pub fn build_X(m: i64, n: i64) -> PieceModel {
    build_copy(1, m, n).expect("copy 1 surgeries are well formed")
}

/// The same construction on copy 2, used as the second half of a gluing.
#[allow(non_snake_case)]
pub fn build_X_bar(m: i64, n: i64) -> PieceModel {
    build_copy(2, m, n).expect("copy 2 surgeries are well formed")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SphereModel {
    pub params: Option<[i64; 4]>,
    pub presentation: Presentation,
    pub chi: i64,
}

/// Glues a copy-1 piece to a copy-2 piece along their boundaries.
pub fn glue(x: &PieceModel, x_bar: &PieceModel) -> Result<SphereModel> {
    if x.copy_index != 1 {
        return Err(Error::CopyMismatch { spec: 1, piece: x.copy_index });
    }
    if x_bar.copy_index != 2 {
        return Err(Error::CopyMismatch { spec: 2, piece: x_bar.copy_index });
    }
    let shared: Vec<String> = x
        .presentation
        .generators()
        .iter()
        .filter(|g| x_bar.presentation.generators().contains(g))
        .map(ToString::to_string)
        .collect();
    if !shared.is_empty() {
        return Err(Error::OverlappingGenerators(shared.join(",")));
    }
    let mut p = x.presentation.free_product(&x_bar.presentation)?;
    for (u, v) in [("a1", "c2"), ("b1", "d2"), ("a2", "c1"), ("b2", "d1")] {
        p = p.with_relator(Word::named(u).concat(&Word::named(v).inverse()))?;
    }
    // χ of the boundary T³ is 0
    Ok(SphereModel { params: None, presentation: p, chi: x.chi + x_bar.chi })
}

pub fn build_sphere(m: i64, n: i64, mp: i64, np: i64) -> SphereModel {
    let mut s = glue(&build_X(m, n), &build_X_bar(mp, np)).expect("the two copies are disjoint");
    s.params = Some([m, n, mp, np]);
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Certified,
    Inconclusive,
    Failed,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Certified => "certified",
            Verdict::Inconclusive => "inconclusive",
            Verdict::Failed => "failed",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub params: [i64; 4],
    pub chi: i64,
    pub h1: AbelianInvariants,
    pub enumeration: EnumerationOutcome,
    pub presentation: Presentation,
    pub verdict: Verdict,
}

/// Checks χ = 2, trivial H₁ and a one-coset enumeration of π₁.
pub fn verify_sphere(m: i64, n: i64, mp: i64, np: i64, budget: usize) -> Result<VerificationReport> {
    let sphere = build_sphere(m, n, mp, np);
    let h1 = sphere.presentation.abelianization();
    let enumeration = coset_enumerate(&sphere.presentation, budget)?;
    let verdict = if sphere.chi != 2 || !h1.is_trivial() {
        Verdict::Failed
    } else {
        match enumeration.index() {
            Some(1) => Verdict::Certified,
            Some(_) => Verdict::Failed,
            None => Verdict::Inconclusive,
        }
    };
    Ok(VerificationReport {
        params: [m, n, mp, np],
        chi: sphere.chi,
        h1,
        enumeration,
        presentation: sphere.presentation,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpgroup::DEFAULT_BUDGET;

    fn words(p: &Presentation) -> Vec<String> {
        p.relators().iter().map(ToString::to_string).collect()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn pieces() {
        let p1 = build_piece(1).unwrap();
        assert_eq!(p1.presentation, "gens: a1,b1,c1,d1\nrels: [a1,c1]; [b1,c1]".parse().unwrap());
        assert_eq!(p1.chi, 1);
        assert_eq!(p1.presentation.abelianization().free_rank(), 4);
        let p2 = build_piece(2).unwrap();
        assert_eq!(p2.presentation, "gens: a2,b2,c2,d2\nrels: [a2,c2]; [b2,c2]".parse().unwrap());
        assert_eq!(build_piece(3), Err(Error::CopyIndex(3)));
    }

    #[test]
    fn surgery_relators() {
        let piece = build_piece(1).unwrap();
        let tac = SurgerySpec::along_a(TorusId::Tac, 1, 3).unwrap();
        let after = apply_surgery(&piece, &tac).unwrap();
        assert_eq!(after.presentation.relators().last().unwrap(), &w("[b1^-1,d1^-1]^3 a1^-1"));
        assert_eq!(after.chi, 1);

        let kill = SurgerySpec::along_a(TorusId::Tbc, 1, 0).unwrap();
        assert_eq!(kill.relator(), w("b1^-1"));

        let two = SurgerySpec::along_a(TorusId::Tbc, 1, 2).unwrap();
        let mu = Word::commutator(&w("a1^-1"), &w("d1"));
        assert_eq!(two.relator(), mu.concat(&mu).concat(&w("b1^-1")));
    }

    #[test]
    fn rejects_malformed_specs() {
        assert!(matches!(SurgerySpec::new(TorusId::Tac, 1, 0, 0, 0), Err(Error::InvalidSurgery(_))));
        assert!(matches!(SurgerySpec::new(TorusId::Tac, 1, 1, 2, 0), Err(Error::InvalidSurgery(_))));
        assert!(matches!(SurgerySpec::new(TorusId::Tac, 1, 1, 1, 1), Err(Error::InvalidSurgery(_))));
        assert_eq!(SurgerySpec::new(TorusId::Tac, 0, 1, 1, 0), Err(Error::CopyIndex(0)));

        let mut bad = SurgerySpec::along_a(TorusId::Tac, 1, 1).unwrap();
        bad.meridian_word = TorusBoundaryBasis::new(TorusId::Tbc, 1).unwrap().mu;
        assert!(matches!(apply_surgery(&build_piece(1).unwrap(), &bad), Err(Error::InvalidSurgery(_))));

        let other_copy = SurgerySpec::along_a(TorusId::Tac, 2, 1).unwrap();
        assert_eq!(
            apply_surgery(&build_piece(1).unwrap(), &other_copy),
            Err(Error::CopyMismatch { spec: 2, piece: 1 })
        );
        assert!(SurgerySpec::new(TorusId::Tbc, 2, -4, 0, -1).is_ok());
    }

    #[test]
    fn x_one_one() {
        let x = build_X(1, 1);
        assert_eq!(
            words(&x.presentation),
            ["[a1,c1]", "[b1,c1]", "[b1^-1,d1^-1] a1^-1", "[a1^-1,d1] b1^-1"].map(|s| w(s).to_string())
        );
        assert_eq!(x.presentation.abelianization().free_rank(), 2);
    }

    #[test]
    fn glued_model_shape() {
        let s = build_sphere(1, 1, 1, 1);
        assert_eq!(s.presentation.generators().len(), 8);
        assert_eq!(s.presentation.relators().len(), 12);
        assert_eq!(s.chi, 2);
        assert_eq!(glue(&build_X(1, 1), &build_X(1, 1)), Err(Error::CopyMismatch { spec: 2, piece: 1 }));
    }

    #[test]
    fn overlapping_pieces_rejected() {
        let mut x_bar = build_X_bar(1, 1);
        x_bar.presentation = x_bar.presentation.free_product(&"gens: a1".parse().unwrap()).unwrap();
        assert_eq!(glue(&build_X(1, 1), &x_bar), Err(Error::OverlappingGenerators("a1".into())));
    }

    #[test]
    fn gluing_relators_identify_summands() {
        let p = glue(&build_piece(1).unwrap(), &build_piece(2).unwrap()).unwrap().presentation;
        let only_gluing = Presentation::new(p.generators().to_vec(), p.relators()[4..].to_vec()).unwrap();
        assert_eq!(only_gluing.abelianization().free_rank(), 4);
    }

    #[test]
    fn certified_examples() {
        for params in [[1, 1, 1, 1], [0, 0, 0, 0], [2, 3, -1, 5]] {
            let [m, n, mp, np] = params;
            let r = verify_sphere(m, n, mp, np, DEFAULT_BUDGET).unwrap();
            assert_eq!(r.verdict, Verdict::Certified, "{params:?}");
            assert_eq!(r.chi, 2);
            assert!(r.h1.is_trivial());
            assert_eq!(r.enumeration.index(), Some(1));
        }
    }

    #[test]
    fn tiny_budget_is_inconclusive() {
        let r = verify_sphere(1, 1, 1, 1, 1).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert_eq!(verify_sphere(1, 1, 1, 1, 0), Err(Error::ZeroBudget));
    }

    #[test]
    fn report_json_fields() {
        let r = verify_sphere(0, 0, 0, 0, 1000).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        for k in ["params", "chi", "h1", "enumeration", "presentation", "verdict"] {
            assert!(keys.contains(&k), "{k}");
        }
        assert_eq!(v["verdict"], "certified");
    }
}
