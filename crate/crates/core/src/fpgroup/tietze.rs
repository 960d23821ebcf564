//! Isomorphism-preserving simplification of presentations.
//!
//! Moves used: cyclic reduction of relators (replaces a relator by a
//! conjugate), dropping trivial and duplicate relators (duplicates up to
//! cyclic rotation and inversion), and eliminating a generator that occurs
//! exactly once in some relator.

use std::collections::HashSet;

use super::Presentation;
use crate::word::{Generator, Letter, Word};

/// Canonical representative of a relator's cyclic rotations and their inverses.
fn cyclic_key(w: &Word) -> Vec<Letter> {
    let mut best: Option<Vec<Letter>> = None;
    for v in [w.clone(), w.inverse()] {
        let l = v.letters();
        for shift in 0..l.len().max(1) {
            let rotated: Vec<Letter> = l[shift..].iter().chain(&l[..shift]).cloned().collect();
            if best.as_ref().is_none_or(|b| &rotated < b) {
                best = Some(rotated);
            }
        }
    }
    best.unwrap_or_default()
}

fn tidy(relators: Vec<Word>) -> Vec<Word> {
    let mut seen = HashSet::new();
    relators
        .into_iter()
        .map(|r| r.cyclically_reduced())
        .filter(|r| !r.is_identity())
        .filter(|r| seen.insert(cyclic_key(r)))
        .collect()
}

/// `r = u g^e v` with a single occurrence of `g` gives `g = (u⁻¹ v⁻¹)^e`.
fn solve_for(r: &Word, g: &Generator) -> Word {
    let pos = r.letters().iter().position(|l| &l.generator == g).expect("generator occurs");
    let u = Word::from_letters(r.letters()[..pos].iter().cloned());
    let v = Word::from_letters(r.letters()[pos + 1..].iter().cloned());
    let image = u.inverse().concat(&v.inverse());
    if r.letters()[pos].inverse {
        image.inverse()
    } else {
        image
    }
}

/// Returns a presentation of an isomorphic group with no more generators.
/// Eliminations pick the shortest defining relator first, then the earliest
/// generator, so the output is deterministic.
pub fn tietze_simplify(p: &Presentation) -> Presentation {
    let mut generators = p.generators().to_vec();
    let mut relators = tidy(p.relators().to_vec());
    loop {
        let mut choice: Option<(usize, usize, usize)> = None; // (len, gen idx, relator idx)
        for (ri, r) in relators.iter().enumerate() {
            for (gi, g) in generators.iter().enumerate() {
                if r.occurrences(g) == 1 {
                    let key = (r.len(), gi, ri);
                    if choice.is_none_or(|c| key < c) {
                        choice = Some(key);
                    }
                }
            }
        }
        let Some((_, gi, ri)) = choice else { break };
        let g = generators.remove(gi);
        let defining = relators.remove(ri);
        let image = solve_for(&defining, &g);
        relators = tidy(relators.iter().map(|r| r.substitute(&g, &image)).collect());
    }
    Presentation::new(generators, relators).expect("elimination keeps relators within the generator set")
}
