//! Freely reduced words in a free group on named generators.
//!
//! Every [`Word`] is kept in freely reduced form, so structural equality is
//! equality in the free group. Letters carry a sign of `+1` or `-1` only;
//! powers are expanded.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::ParseError;

/// A named free generator such as `a1`, `d2` or `t`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator(Arc<str>);

impl Generator {
    pub fn new(name: &str) -> Self {
        Generator(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Generator {
    fn from(name: &str) -> Self {
        Generator::new(name)
    }
}

/// A generator or its inverse.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Letter {
    pub generator: Generator,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: Generator, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn inverted(&self) -> Letter {
        Letter { generator: self.generator.clone(), inverse: !self.inverse }
    }

    /// `+1` or `-1`.
    pub fn exponent(&self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    fn cancels(&self, other: &Letter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }
}

/// Free reduction by a single left-to-right stack pass.
pub fn reduce<I: IntoIterator<Item = Letter>>(letters: I) -> Word {
    let mut stack: Vec<Letter> = Vec::new();
    for letter in letters {
        match stack.last() {
            Some(top) if top.cancels(&letter) => {
                stack.pop();
            }
            _ => stack.push(letter),
        }
    }
    Word { letters: stack }
}

/// An element of a free group, stored freely reduced.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word { letters: Vec::new() }
    }

    pub fn generator(g: &Generator) -> Self {
        Word { letters: vec![Letter::new(g.clone(), false)] }
    }

    /// Shorthand for the single-letter word on a generator name.
    pub fn named(name: &str) -> Self {
        Word::generator(&Generator::new(name))
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        reduce(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(Letter::inverted).collect() }
    }

    pub fn concat(&self, other: &Word) -> Word {
        reduce(self.letters.iter().chain(other.letters.iter()).cloned())
    }

    /// `u v u⁻¹ v⁻¹`, reduced.
    pub fn commutator(u: &Word, v: &Word) -> Word {
        let letters = u
            .letters
            .iter()
            .cloned()
            .chain(v.letters.iter().cloned())
            .chain(u.inverse().letters)
            .chain(v.inverse().letters);
        reduce(letters)
    }

    /// `k`-fold product; negative `k` takes powers of the inverse.
    pub fn power(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let times = k.unsigned_abs() as usize;
        reduce(std::iter::repeat_n(base.letters.iter().cloned(), times).flatten())
    }

    pub fn exponent_sum(&self, g: &Generator) -> i64 {
        self.letters.iter().filter(|l| &l.generator == g).map(Letter::exponent).sum()
    }

    /// Number of letters (of either sign) on `g`.
    pub fn occurrences(&self, g: &Generator) -> usize {
        self.letters.iter().filter(|l| &l.generator == g).count()
    }

    pub fn generators(&self) -> BTreeSet<Generator> {
        self.letters.iter().map(|l| l.generator.clone()).collect()
    }

    /// Replaces every occurrence of `g` by `image` (and `g⁻¹` by its inverse).
    pub fn substitute(&self, g: &Generator, image: &Word) -> Word {
        let inv = image.inverse();
        let letters = self.letters.iter().flat_map(|l| {
            if &l.generator == g {
                if l.inverse {
                    inv.letters.clone()
                } else {
                    image.letters.clone()
                }
            } else {
                vec![l.clone()]
            }
        });
        reduce(letters)
    }

    /// Conjugates away matching first/last letters; the result is conjugate
    /// to `self` and cyclically reduced.
    pub fn cyclically_reduced(&self) -> Word {
        let mut start = 0;
        let mut end = self.letters.len();
        while end - start >= 2 && self.letters[start].cancels(&self.letters[end - 1]) {
            start += 1;
            end -= 1;
        }
        Word { letters: self.letters[start..end].to_vec() }
    }

    pub fn parse(text: &str) -> Result<Word, ParseError> {
        text.parse()
    }
}

impl Mul for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        self.concat(rhs)
    }
}

impl Mul for Word {
    type Output = Word;

    fn mul(self, rhs: Word) -> Word {
        self.concat(&rhs)
    }
}

impl fmt::Display for Word {
    /// Space-separated letters with `^-1` on inverses, `1` for the identity.
    /// The output parses back to the same word.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", l.generator)?;
            if l.inverse {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut parser = WordParser { src: s.as_bytes(), pos: 0 };
        let w = parser.word()?;
        parser.skip_separators();
        if parser.pos != parser.src.len() {
            return Err(parser.error("unexpected character"));
        }
        Ok(w)
    }
}

// word   := factor*
// factor := atom ('^' int)*
// atom   := ident | '1' | '(' word ')' | '[' word ',' word ']'
// ident  := ASCII letter followed by digits, '_' or '\''
struct WordParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl WordParser<'_> {
    fn error(&self, message: &str) -> ParseError {
        ParseError::new(format!("{message} at offset {}", self.pos))
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_separators(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_ascii_whitespace() || c == b'*' || c == b'.' {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn word(&mut self) -> Result<Word, ParseError> {
        let mut acc = Word::identity();
        loop {
            self.skip_separators();
            match self.peek() {
                Some(c) if c.is_ascii_alphabetic() || c == b'(' || c == b'[' || c == b'1' => {
                    let f = self.factor()?;
                    acc = acc.concat(&f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Word, ParseError> {
        let mut w = self.atom()?;
        while self.peek() == Some(b'^') {
            self.pos += 1;
            let k = self.integer()?;
            w = w.power(k);
        }
        Ok(w)
    }

    fn atom(&mut self) -> Result<Word, ParseError> {
        match self.peek() {
            Some(b'1') => {
                self.pos += 1;
                Ok(Word::identity())
            }
            Some(b'(') => {
                self.pos += 1;
                let w = self.word()?;
                self.skip_separators();
                self.expect(b')')?;
                Ok(w)
            }
            Some(b'[') => {
                self.pos += 1;
                let u = self.word()?;
                self.skip_separators();
                self.expect(b',')?;
                let v = self.word()?;
                self.skip_separators();
                self.expect(b']')?;
                Ok(Word::commutator(&u, &v))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                self.pos += 1;
                while let Some(c) = self.peek() {
                    if c.is_ascii_digit() || c == b'_' || c == b'\'' {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                Ok(Word::named(name))
            }
            _ => Err(self.error("expected generator, '1', '(' or '['")),
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        let start = self.pos;
        if matches!(self.peek(), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        text.parse::<i64>().map_err(|_| self.error("expected integer exponent"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn l(name: &str, inverse: bool) -> Letter {
        Letter::new(Generator::new(name), inverse)
    }

    // Independent of the stack pass: delete the first cancelling pair until none remain.
    fn naive_reduce(mut letters: Vec<Letter>) -> Vec<Letter> {
        loop {
            let hit = letters.windows(2).position(|p| p[0].cancels(&p[1]));
            match hit {
                Some(i) => {
                    letters.drain(i..i + 2);
                }
                None => return letters,
            }
        }
    }

    #[test]
    fn reduce_examples() {
        assert!(reduce(vec![l("a", false), l("a", true)]).is_identity());
        assert!(reduce(Vec::new()).is_identity());
        let raw = vec![l("a", false), l("b", false), l("b", true), l("b", false), l("c", false)];
        let expected = naive_reduce(raw.clone());
        assert_eq!(expected, vec![l("a", false), l("b", false), l("c", false)]);
        assert_eq!(reduce(raw).letters(), expected.as_slice());
    }

    #[test]
    fn commutator_examples() {
        let a = Word::named("a");
        let b = Word::named("b");
        assert!(Word::commutator(&a, &a).is_identity());
        assert_eq!(Word::commutator(&a, &b), w("a b a^-1 b^-1"));
        let bi = Word::named("b").inverse();
        let di = Word::named("d").inverse();
        assert_eq!(Word::commutator(&bi, &di), w("b^-1 d^-1 b d"));
    }

    #[test]
    fn power_examples() {
        assert!(Word::named("a").power(0).is_identity());
        assert_eq!(w("a b").power(2), w("a b a b"));
        let c = w("[a^-1,d]");
        assert_eq!(c, w("a^-1 d a d^-1"));
        // invert-and-reverse by hand: (a^-1 d a d^-1)^-1 = d a^-1 d^-1 a
        assert_eq!(c.power(-1), w("d a^-1 d^-1 a"));
    }

    #[test]
    fn parses_cli_syntax() {
        let parsed = w("[b1^-1,d1^-1]^2 a1^-1");
        let comm = w("b1^-1 d1^-1 b1 d1");
        assert_eq!(parsed, comm.power(2).concat(&w("a1^-1")));
        assert_eq!(w("a1b1"), w("a1 b1"));
        assert_eq!(w("(ab)^3"), w("a b a b a b"));
        assert_eq!(w("1"), Word::identity());
        assert!(Word::parse("a^").is_err());
        assert!(Word::parse("[a,b").is_err());
        assert!(Word::parse("a)").is_err());
    }

    #[test]
    fn display_round_trips() {
        let x = w("[b1^-1,d1^-1]^-3 a1 c2^-1");
        assert_eq!(w(&x.to_string()), x);
        assert_eq!(Word::identity().to_string(), "1");
    }

    #[test]
    fn substitution_and_cyclic_reduction() {
        let r = w("a b a^-1 c");
        assert_eq!(r.substitute(&Generator::new("a"), &w("x y")), w("x y b y^-1 x^-1 c"));
        assert_eq!(w("a b c a^-1").cyclically_reduced(), w("b c"));
        assert_eq!(w("a b a^-1 b^-1").cyclically_reduced(), w("a b a^-1 b^-1"));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn word_strategy() -> impl Strategy<Value = Vec<Letter>> {
            prop::collection::vec((0u8..3, any::<bool>()), 0..24).prop_map(|v| {
                v.into_iter().map(|(g, inv)| Letter::new(Generator::new(["a", "b", "c"][g as usize]), inv)).collect()
            })
        }

        proptest! {
            #[test]
            fn reduction_matches_naive_and_is_idempotent(raw in word_strategy()) {
                let r = reduce(raw.clone());
                let naive = naive_reduce(raw);
                prop_assert_eq!(r.letters(), naive.as_slice());
                prop_assert_eq!(reduce(r.letters().to_vec()), r);
            }

            #[test]
            fn right_cancellation(u in word_strategy(), v in word_strategy()) {
                let (u, v) = (reduce(u), reduce(v));
                prop_assert_eq!(u.concat(&v).concat(&v.inverse()), u);
            }

            #[test]
            fn commutator_inverse_swaps(u in word_strategy(), v in word_strategy()) {
                let (u, v) = (reduce(u), reduce(v));
                prop_assert_eq!(Word::commutator(&u, &v).inverse(), Word::commutator(&v, &u));
            }

            #[test]
            fn powers_add(u in word_strategy(), j in -5i64..=5, k in -5i64..=5) {
                let u = reduce(u);
                prop_assert_eq!(u.power(j).concat(&u.power(k)), u.power(j + k));
            }
        }
    }
}
