//! Finitely presented groups.

pub mod census;
pub mod coset;
pub mod tietze;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::abelian::AbelianInvariants;
use crate::error::{Error, ParseError, Result};
use crate::word::{Generator, Word};
use crate::IntMatrix;

pub use census::{quotient_census, CensusEntry};
pub use coset::{coset_enumerate, CosetTable, EnumerationOutcome, EnumerationStatus, Strategy, DEFAULT_BUDGET};
pub use tietze::tietze_simplify;

/// Generators and relators. Relators are freely reduced and never empty;
/// every generator a relator mentions is declared.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Presentation {
    generators: Vec<Generator>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generators: Vec<Generator>, relators: Vec<Word>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for g in &generators {
            if !seen.insert(g.clone()) {
                return Err(Error::DuplicateGenerator(g.to_string()));
            }
        }
        for r in &relators {
            if let Some(g) = r.generators().into_iter().find(|g| !seen.contains(g)) {
                return Err(Error::UndeclaredGenerator(g.to_string()));
            }
        }
        let relators = relators.into_iter().filter(|r| !r.is_identity()).collect();
        Ok(Presentation { generators, relators })
    }

    /// Builds from generator names and relator text, e.g. `(["a","b"], ["a^2", "[a,b]"])`.
    pub fn from_text<G: AsRef<str>, R: AsRef<str>>(generators: &[G], relators: &[R]) -> Result<Self> {
        let generators = generators.iter().map(|g| Generator::new(g.as_ref().trim())).collect();
        let relators = relators.iter().map(|r| r.as_ref().parse::<Word>()).collect::<Result<Vec<_>, _>>()?;
        Self::new(generators, relators)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_index(&self, g: &Generator) -> Option<usize> {
        self.generators.iter().position(|h| h == g)
    }

    /// A copy with one more relator.
    pub fn with_relator(&self, r: Word) -> Result<Self> {
        let mut relators = self.relators.clone();
        relators.push(r);
        Self::new(self.generators.clone(), relators)
    }

    /// Disjoint union of generators and relators (free product).
    pub fn free_product(&self, other: &Presentation) -> Result<Self> {
        let mut generators = self.generators.clone();
        generators.extend(other.generators.iter().cloned());
        let mut relators = self.relators.clone();
        relators.extend(other.relators.iter().cloned());
        Self::new(generators, relators)
    }

    /// Exponent-sum matrix: one row per relator, one column per generator.
    pub fn relation_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.relators.len(), self.generators.len());
        for (i, r) in self.relators.iter().enumerate() {
            for (j, g) in self.generators.iter().enumerate() {
                m[(i, j)] = BigInt::from(r.exponent_sum(g));
            }
        }
        m
    }

    pub fn abelianization(&self) -> AbelianInvariants {
        AbelianInvariants::from_relation_matrix(&self.relation_matrix())
    }

    pub fn total_length(&self) -> usize {
        self.relators.iter().map(Word::len).sum()
    }
}

/// Two lines, `gens: a,b` and `rels: r1; r2`. A `/` may stand in for the
/// line break.
impl FromStr for Presentation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut generators: Option<Vec<Generator>> = None;
        let mut relators: Vec<Word> = Vec::new();
        for line in s.split(['\n', '/']).map(str::trim).filter(|l| !l.is_empty()) {
            if let Some(rest) = line.strip_prefix("gens:") {
                generators =
                    Some(rest.split(',').map(str::trim).filter(|g| !g.is_empty()).map(Generator::new).collect());
            } else if let Some(rest) = line.strip_prefix("rels:") {
                for r in rest.split(';').map(str::trim).filter(|r| !r.is_empty()) {
                    relators.push(r.parse()?);
                }
            } else {
                return Err(ParseError::new(format!("expected 'gens:' or 'rels:' line, got {line:?}")).into());
            }
        }
        let generators = generators.ok_or_else(|| ParseError::new("missing 'gens:' line"))?;
        Presentation::new(generators, relators)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<&str> = self.generators.iter().map(Generator::name).collect();
        let rels: Vec<String> = self.relators.iter().map(Word::to_string).collect();
        write!(f, "gens: {}\nrels: {}", gens.join(","), rels.join("; "))
    }
}

impl Serialize for Presentation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let gens: Vec<&str> = self.generators.iter().map(Generator::name).collect();
        let rels: Vec<String> = self.relators.iter().map(Word::to_string).collect();
        let mut st = s.serialize_struct("Presentation", 2)?;
        st.serialize_field("generators", &gens)?;
        st.serialize_field("relators", &rels)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_text_format() {
        let p: Presentation = "gens: a1,b1,c1,d1\nrels: [a1,c1]; [b1,c1]".parse().unwrap();
        assert_eq!(p.generators().len(), 4);
        assert_eq!(p.relators().len(), 2);
        let q: Presentation = "gens: a1,b1,c1,d1 / rels: [a1,c1]; [b1,c1]".parse().unwrap();
        assert_eq!(p, q);
        assert_eq!(p.to_string().parse::<Presentation>().unwrap(), p);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!("gens: a\nrels: b".parse::<Presentation>(), Err(Error::UndeclaredGenerator(g)) if g == "b"));
        assert!(matches!("gens: a,a".parse::<Presentation>(), Err(Error::DuplicateGenerator(_))));
        assert!("rels: a".parse::<Presentation>().is_err());
        assert!("gens: a\nfoo".parse::<Presentation>().is_err());
    }

    #[test]
    fn drops_trivial_relators() {
        let p = Presentation::from_text(&["a"], &["a a^-1", "[a,a]", "a^3"]).unwrap();
        assert_eq!(p.relators().len(), 1);
    }

    #[test]
    fn abelianization_examples() {
        let z2 = Presentation::from_text(&["a", "b"], &["[a,b]"]).unwrap().abelianization();
        assert_eq!(z2.free_rank(), 2);
        assert!(z2.torsion().is_empty());
        let c6 = Presentation::from_text(&["a", "b"], &["a^2", "b^3", "[a,b]"]).unwrap().abelianization();
        assert_eq!(c6.invariant_factors(), &[BigInt::from(6)]);
    }

    #[test]
    fn json_shape() {
        let p = Presentation::from_text(&["a", "b"], &["a^2", "[a,b]"]).unwrap();
        assert_eq!(
            serde_json::to_string(&p).unwrap(),
            r#"{"generators":["a","b"],"relators":["a a","a b a^-1 b^-1"]}"#
        );
    }
}
