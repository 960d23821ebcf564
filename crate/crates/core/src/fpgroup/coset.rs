//! Todd–Coxeter enumeration of the cosets of the trivial subgroup.
//!
//! Two strategies share one table: HLT (relator tracing from each coset in
//! turn, with a lookahead pass and compaction when the table fills) and
//! Felsch (define the first open entry, then close every deduction). The
//! budget is the number of table rows that may exist at once; coincidences
//! free rows, which compaction hands back.

use serde::ser::{Serialize, SerializeStruct, Serializer};

use super::Presentation;
use crate::error::{Error, Result};

pub const DEFAULT_BUDGET: usize = 100_000;

const UNDEF: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    #[default]
    Hlt,
    Felsch,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumerationStatus {
    /// The table closed with this many cosets: the group has this order.
    Completed { index: usize },
    /// Ran out of rows. Certifies nothing.
    BudgetExceeded,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationOutcome {
    pub status: EnumerationStatus,
    /// Every coset ever defined, including ones later merged away.
    pub cosets_defined: usize,
    pub budget: usize,
}

impl EnumerationOutcome {
    pub fn index(&self) -> Option<usize> {
        match self.status {
            EnumerationStatus::Completed { index } => Some(index),
            EnumerationStatus::BudgetExceeded => None,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.index() == Some(1)
    }
}

impl Serialize for EnumerationOutcome {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("EnumerationOutcome", 4)?;
        let status = match self.status {
            EnumerationStatus::Completed { .. } => "completed",
            EnumerationStatus::BudgetExceeded => "budget_exceeded",
        };
        st.serialize_field("status", status)?;
        st.serialize_field("index", &self.index())?;
        st.serialize_field("cosets_defined", &self.cosets_defined)?;
        st.serialize_field("budget", &self.budget)?;
        st.end()
    }
}

/// A closed coset table. Column `2g` is generator `g`, column `2g + 1` its
/// inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    columns: usize,
    entries: Vec<u32>,
}

impl CosetTable {
    pub fn len(&self) -> usize {
        self.entries.len().checked_div(self.columns).unwrap_or(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn image(&self, coset: usize, column: usize) -> usize {
        self.entries[coset * self.columns + column] as usize
    }

    /// Where `coset` goes under the word given as column indices.
    pub fn trace(&self, coset: usize, word: &[usize]) -> usize {
        word.iter().fold(coset, |c, &x| self.image(c, x))
    }
}

/// Column sequence of each relator.
fn relator_columns(p: &Presentation) -> Vec<Vec<u32>> {
    p.relators()
        .iter()
        .map(|r| {
            r.letters()
                .iter()
                .map(|l| {
                    let g = p.generator_index(&l.generator).expect("declared generator") as u32;
                    2 * g + l.inverse as u32
                })
                .collect()
        })
        .collect()
}

/// Column sequence of a word over `p`'s generators, for tracing.
pub fn word_columns(p: &Presentation, w: &crate::word::Word) -> Vec<usize> {
    w.letters()
        .iter()
        .map(|l| 2 * p.generator_index(&l.generator).expect("declared generator") + l.inverse as usize)
        .collect()
}

struct Full;

struct Enumerator {
    columns: usize,
    relators: Vec<Vec<u32>>,
    /// `rotations[x]`: cyclic conjugates of relators that begin with column `x`.
    rotations: Vec<Vec<Vec<u32>>>,
    table: Vec<u32>,
    parent: Vec<u32>,
    capacity: usize,
    live: usize,
    defined: usize,
    queue: Vec<u32>,
    deductions: Vec<(u32, u32)>,
    track_deductions: bool,
}

#[inline]
fn inv(x: u32) -> u32 {
    x ^ 1
}

impl Enumerator {
    fn new(p: &Presentation, capacity: usize, strategy: Strategy) -> Self {
        let columns = 2 * p.generators().len();
        let mut relators = relator_columns(p);
        // shorter relators first: they close cosets soonest
        relators.sort_by_key(Vec::len);
        let mut rotations = vec![Vec::new(); columns];
        if strategy == Strategy::Felsch {
            for r in &relators {
                for w in [r.clone(), r.iter().rev().map(|&x| inv(x)).collect::<Vec<_>>()] {
                    for s in 0..w.len() {
                        let rot: Vec<u32> = w[s..].iter().chain(&w[..s]).copied().collect();
                        if !rotations[rot[0] as usize].contains(&rot) {
                            rotations[rot[0] as usize].push(rot);
                        }
                    }
                }
            }
        }
        let mut e = Enumerator {
            columns,
            relators,
            rotations,
            table: Vec::new(),
            parent: Vec::new(),
            capacity,
            live: 0,
            defined: 0,
            queue: Vec::new(),
            deductions: Vec::new(),
            track_deductions: strategy == Strategy::Felsch,
        };
        e.new_row();
        e
    }

    fn rows(&self) -> usize {
        self.parent.len()
    }

    fn new_row(&mut self) -> u32 {
        let c = self.parent.len() as u32;
        self.table.extend(std::iter::repeat_n(UNDEF, self.columns));
        self.parent.push(c);
        self.live += 1;
        self.defined += 1;
        c
    }

    #[inline]
    fn get(&self, c: u32, x: u32) -> u32 {
        self.table[c as usize * self.columns + x as usize]
    }

    #[inline]
    fn set(&mut self, c: u32, x: u32, v: u32) {
        self.table[c as usize * self.columns + x as usize] = v;
    }

    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn link(&mut self, c: u32, x: u32, d: u32) {
        self.set(c, x, d);
        self.set(d, inv(x), c);
        if self.track_deductions {
            self.deductions.push((c, x));
        }
    }

    fn define(&mut self, c: u32, x: u32) -> std::result::Result<u32, Full> {
        if self.rows() >= self.capacity {
            return Err(Full);
        }
        let d = self.new_row();
        self.link(c, x, d);
        Ok(d)
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut root = c;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut c = c;
        while self.parent[c as usize] != root {
            let next = self.parent[c as usize];
            self.parent[c as usize] = root;
            c = next;
        }
        root
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.rep(a), self.rep(b));
        if ra != rb {
            let (keep, drop) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[drop as usize] = keep;
            self.queue.push(drop);
            self.live -= 1;
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let dead = self.queue[i];
            i += 1;
            for x in 0..self.columns as u32 {
                let d = self.get(dead, x);
                if d == UNDEF {
                    continue;
                }
                self.set(d, inv(x), UNDEF);
                let mu = self.rep(dead);
                let nu = self.rep(d);
                let mu_x = self.get(mu, x);
                if mu_x != UNDEF {
                    self.merge(nu, mu_x);
                } else {
                    let nu_inv = self.get(nu, inv(x));
                    if nu_inv != UNDEF {
                        self.merge(mu, nu_inv);
                    } else {
                        self.link(mu, x, nu);
                    }
                }
            }
        }
    }

    /// Traces `w` from `c` in both directions. Closes a single-entry gap with
    /// a deduction, resolves a mismatch as a coincidence, and with `fill`
    /// defines new cosets across larger gaps.
    fn scan(&mut self, c: u32, w: &[u32], fill: bool) -> std::result::Result<(), Full> {
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, w.len());
        loop {
            while i < j {
                let next = self.get(f, w[i]);
                if next == UNDEF {
                    break;
                }
                f = next;
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j > i {
                let next = self.get(b, inv(w[j - 1]));
                if next == UNDEF {
                    break;
                }
                b = next;
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i + 1 {
                self.link(f, w[i], b);
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }

    /// Renumbers live cosets to `0..live` in order. Returns the new index of
    /// the first live coset at or after `cursor`.
    fn compact(&mut self, cursor: usize) -> usize {
        let mut map = vec![UNDEF; self.rows()];
        let mut n = 0u32;
        for (c, slot) in map.iter_mut().enumerate() {
            if self.parent[c] == c as u32 {
                *slot = n;
                n += 1;
            }
        }
        let new_cursor = map[..cursor.min(self.rows())].iter().filter(|&&m| m != UNDEF).count();
        let mut table = Vec::with_capacity(n as usize * self.columns);
        for c in 0..self.rows() {
            if map[c] != UNDEF {
                for x in 0..self.columns {
                    let v = self.table[c * self.columns + x];
                    table.push(if v == UNDEF { UNDEF } else { map[v as usize] });
                }
            }
        }
        self.table = table;
        self.parent = (0..n).collect();
        self.deductions.clear();
        new_cursor
    }

    /// Lookahead: scan every relator at every coset without defining, then
    /// compact. True when rows were freed.
    fn make_room(&mut self, cursor: &mut usize) -> bool {
        for c in 0..self.rows() as u32 {
            for r in 0..self.relators.len() {
                if !self.is_live(c) {
                    break;
                }
                let w = std::mem::take(&mut self.relators[r]);
                let _ = self.scan(c, &w, false);
                self.relators[r] = w;
            }
        }
        let before = self.rows();
        *cursor = self.compact(*cursor);
        self.rows() < before
    }

    fn run_hlt(&mut self) -> bool {
        let mut cursor = 0usize;
        'cosets: while cursor < self.rows() {
            let c = cursor as u32;
            if !self.is_live(c) {
                cursor += 1;
                continue;
            }
            for r in 0..self.relators.len() {
                let w = std::mem::take(&mut self.relators[r]);
                let res = self.scan(c, &w, true);
                self.relators[r] = w;
                if res.is_err() {
                    if !self.make_room(&mut cursor) {
                        return false;
                    }
                    continue 'cosets;
                }
                if !self.is_live(c) {
                    cursor += 1;
                    continue 'cosets;
                }
            }
            for x in 0..self.columns as u32 {
                if self.get(c, x) == UNDEF && self.define(c, x).is_err() {
                    if !self.make_room(&mut cursor) {
                        return false;
                    }
                    continue 'cosets;
                }
            }
            cursor += 1;
        }
        true
    }

    fn process_deductions(&mut self) {
        while let Some((c, x)) = self.deductions.pop() {
            if !self.is_live(c) {
                continue;
            }
            let d = self.get(c, x);
            for k in 0..self.rotations[x as usize].len() {
                if !self.is_live(c) {
                    break;
                }
                let w = std::mem::take(&mut self.rotations[x as usize][k]);
                let _ = self.scan(c, &w, false);
                self.rotations[x as usize][k] = w;
            }
            if d == UNDEF || !self.is_live(d) {
                continue;
            }
            let y = inv(x) as usize;
            for k in 0..self.rotations[y].len() {
                if !self.is_live(d) {
                    break;
                }
                let w = std::mem::take(&mut self.rotations[y][k]);
                let _ = self.scan(d, &w, false);
                self.rotations[y][k] = w;
            }
        }
    }

    /// Compacts after a failed definition; false when nothing was freed.
    fn reclaim(&mut self, cursor: &mut usize) -> bool {
        self.process_deductions();
        let before = self.rows();
        *cursor = self.compact(*cursor);
        self.rows() < before
    }

    fn run_felsch(&mut self) -> bool {
        // relators at the base coset first, so short relations apply at once
        for r in 0..self.relators.len() {
            let w = self.relators[r].clone();
            while self.scan(0, &w, true).is_err() {
                if !self.reclaim(&mut 0) {
                    return false;
                }
            }
            self.process_deductions();
        }
        let mut cursor = 0usize;
        'cosets: while cursor < self.rows() {
            let c = cursor as u32;
            for x in 0..self.columns as u32 {
                if !self.is_live(c) {
                    break;
                }
                if self.get(c, x) == UNDEF {
                    if self.define(c, x).is_err() {
                        if !self.reclaim(&mut cursor) {
                            return false;
                        }
                        continue 'cosets;
                    }
                    self.process_deductions();
                }
            }
            cursor += 1;
        }
        true
    }

    fn finish(mut self) -> CosetTable {
        self.compact(0);
        CosetTable { columns: self.columns, entries: self.table }
    }
}

/// Enumerates with the default strategy.
pub fn coset_enumerate(p: &Presentation, budget: usize) -> Result<EnumerationOutcome> {
    enumerate_with(p, budget, Strategy::default()).map(|(o, _)| o)
}

/// Enumerates and, on completion, also returns the closed table.
pub fn enumerate_with(
    p: &Presentation,
    budget: usize,
    strategy: Strategy,
) -> Result<(EnumerationOutcome, Option<CosetTable>)> {
    if budget == 0 {
        return Err(Error::ZeroBudget);
    }
    let mut e = Enumerator::new(p, budget, strategy);
    let closed = match strategy {
        Strategy::Hlt => e.run_hlt(),
        Strategy::Felsch => e.run_felsch(),
    };
    let defined = e.defined;
    if closed {
        let index = e.live;
        let table = e.finish();
        debug_assert_eq!(table.len(), index);
        let outcome =
            EnumerationOutcome { status: EnumerationStatus::Completed { index }, cosets_defined: defined, budget };
        Ok((outcome, Some(table)))
    } else {
        let outcome = EnumerationOutcome { status: EnumerationStatus::BudgetExceeded, cosets_defined: defined, budget };
        Ok((outcome, None))
    }
}
