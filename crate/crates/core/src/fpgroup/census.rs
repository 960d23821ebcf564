//! Counting homomorphisms into small finite groups.

use serde::Serialize;

use super::Presentation;
use crate::error::{Error, Result};

/// Largest target order the census accepts.
pub const MAX_TARGET_ORDER: u64 = 120;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    pub target: String,
    pub order: u64,
    /// Homomorphisms from the presented group, the trivial one included.
    pub count: u128,
}

/// A finite group as a Cayley table on `0..order`, with 0 the identity.
struct Target {
    name: String,
    order: usize,
    mul: Vec<u16>,
    inv: Vec<u16>,
}

type Perm = Vec<u8>;

fn compose(p: &Perm, q: &Perm) -> Perm {
    // apply p, then q
    p.iter().map(|&i| q[i as usize]).collect()
}

impl Target {
    fn from_perms(name: String, mut elements: Vec<Perm>) -> Self {
        elements.sort();
        // identity sorts first
        debug_assert!(elements[0].iter().enumerate().all(|(i, &v)| i == v as usize));
        let order = elements.len();
        let index = |p: &Perm| elements.binary_search(p).expect("closed under composition") as u16;
        let mut mul = vec![0u16; order * order];
        let mut inv = vec![0u16; order];
        for (i, p) in elements.iter().enumerate() {
            for (j, q) in elements.iter().enumerate() {
                let r = index(&compose(p, q));
                mul[i * order + j] = r;
                if r == 0 {
                    inv[i] = j as u16;
                }
            }
        }
        Target { name, order, mul, inv }
    }

    fn cyclic(n: usize) -> Self {
        let shift: Perm = (0..n).map(|i| ((i + 1) % n) as u8).collect();
        let mut elements = vec![(0..n as u8).collect::<Perm>()];
        for _ in 1..n {
            let next = compose(elements.last().unwrap(), &shift);
            elements.push(next);
        }
        Target::from_perms(format!("C{n}"), elements)
    }

    fn symmetric(n: usize) -> Self {
        fn permutations(items: &[u8]) -> Vec<Perm> {
            if items.is_empty() {
                return vec![Vec::new()];
            }
            let mut out = Vec::new();
            for (i, &x) in items.iter().enumerate() {
                let mut rest = items.to_vec();
                rest.remove(i);
                for mut tail in permutations(&rest) {
                    tail.insert(0, x);
                    out.push(tail);
                }
            }
            out
        }
        let items: Vec<u8> = (0..n as u8).collect();
        Target::from_perms(format!("S{n}"), permutations(&items))
    }

    #[inline]
    fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.order + b as usize]
    }
}

/// The fixed target list: cyclic groups of order 2 through 12, then S3, S4, S5.
fn targets(bound: u64) -> Vec<Target> {
    let mut out: Vec<Target> = (2..=12).filter(|&n| n as u64 <= bound).map(Target::cyclic).collect();
    for (n, order) in [(3, 6), (4, 24), (5, 120)] {
        if order <= bound {
            out.push(Target::symmetric(n));
        }
    }
    out
}

struct Search<'a> {
    target: &'a Target,
    /// Generator order for the backtrack.
    order: Vec<usize>,
    /// `checks[depth]`: relators (as `(generator, inverse)` letters) fully
    /// assigned once `order[..=depth]` is fixed.
    checks: Vec<Vec<Vec<(usize, bool)>>>,
    assignment: Vec<u16>,
}

impl Search<'_> {
    fn evaluate(&self, relator: &[(usize, bool)]) -> u16 {
        relator.iter().fold(0u16, |acc, &(g, inverse)| {
            let v = self.assignment[g];
            self.target.mul(acc, if inverse { self.target.inv[v as usize] } else { v })
        })
    }

    fn count(&mut self, depth: usize) -> u128 {
        if depth == self.order.len() {
            return 1;
        }
        let g = self.order[depth];
        let mut total = 0u128;
        for v in 0..self.target.order as u16 {
            self.assignment[g] = v;
            if self.checks[depth].iter().all(|r| self.evaluate(r) == 0) {
                total += self.count(depth + 1);
            }
        }
        total
    }
}

fn count_homomorphisms(p: &Presentation, target: &Target) -> u128 {
    let n = p.generators().len();
    let relators: Vec<Vec<(usize, bool)>> = p
        .relators()
        .iter()
        .map(|r| {
            r.letters()
                .iter()
                .map(|l| (p.generator_index(&l.generator).expect("declared generator"), l.inverse))
                .collect()
        })
        .collect();
    let mentioned: Vec<bool> = (0..n).map(|g| relators.iter().any(|r| r.iter().any(|&(h, _)| h == g))).collect();

    // Greedy order: next pick the generator that completes the most relators.
    let mut order: Vec<usize> = Vec::new();
    let mut placed = vec![false; n];
    let mut checks: Vec<Vec<Vec<(usize, bool)>>> = Vec::new();
    let mut pending: Vec<&Vec<(usize, bool)>> = relators.iter().collect();
    while order.len() < mentioned.iter().filter(|&&m| m).count() {
        let completes =
            |g: usize, placed: &[bool]| pending.iter().filter(|r| r.iter().all(|&(h, _)| h == g || placed[h])).count();
        let g = (0..n)
            .filter(|&g| mentioned[g] && !placed[g])
            .max_by_key(|&g| (completes(g, &placed), std::cmp::Reverse(g)))
            .expect("an unplaced generator remains");
        placed[g] = true;
        order.push(g);
        let (done, rest): (Vec<_>, Vec<_>) = pending.into_iter().partition(|r| r.iter().all(|&(h, _)| placed[h]));
        checks.push(done.into_iter().cloned().collect());
        pending = rest;
    }

    let free = mentioned.iter().filter(|&&m| !m).count() as u32;
    let mut search = Search { target, order, checks, assignment: vec![0; n] };
    search.count(0) * (target.order as u128).pow(free)
}

/// Exact homomorphism counts into every census target of order at most
/// `target_order_bound`.
pub fn quotient_census(p: &Presentation, target_order_bound: u64) -> Result<Vec<CensusEntry>> {
    if target_order_bound > MAX_TARGET_ORDER {
        return Err(Error::CensusBound(target_order_bound));
    }
    Ok(targets(target_order_bound)
        .iter()
        .map(|t| CensusEntry { target: t.name.clone(), order: t.order as u64, count: count_homomorphisms(p, t) })
        .collect())
}
