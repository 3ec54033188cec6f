//! Todd–Coxeter coset enumeration, HLT style.
//!
//! Cosets are defined in scan order while every relator is traced from each
//! live coset in turn; coincidences are merged at once through a union-find
//! queue. When the bound is reached a lookahead pass (scanning without new
//! definitions) is tried before giving up. The closed table is renumbered in
//! breadth-first order, so the result does not depend on the bound.

use serde::Serialize;
use thiserror::Error;

use crate::permgroup::Permutation;
use crate::presentation::{GroupPresentation, Letter, Word};

pub const DEFAULT_MAX_COSETS: usize = 1_000_000;

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("coset bound of {max_cosets} reached before the table closed")]
    Overflow { max_cosets: usize },
    #[error("maxCosets must be at least 1")]
    InvalidBound,
    #[error("subgroup word mentions generator index {0} outside the presentation")]
    GeneratorOutOfRange(usize),
    #[error("table is not over the trivial subgroup")]
    NotTrivialSubgroup,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct EnumerationStats {
    /// Cosets ever defined.
    pub defined: usize,
    /// Largest number of simultaneously live cosets.
    pub max_live: usize,
    pub lookahead_passes: usize,
}

/// A closed coset table. Column `2g` is generator `g`, column `2g+1` its
/// inverse; coset 0 is the subgroup itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    generator_count: usize,
    coset_count: usize,
    rows: Vec<u32>,
    trivial_subgroup: bool,
    stats: EnumerationStats,
}

impl CosetTable {
    /// Builds a table from the action of each generator on `0..coset_count`,
    /// then renumbers it breadth-first from coset 0.
    pub fn from_action(actions: &[Permutation], trivial_subgroup: bool) -> CosetTable {
        let n = actions.first().map_or(1, Permutation::degree);
        let cols = 2 * actions.len();
        let mut rows = vec![NONE; n * cols];
        for (g, p) in actions.iter().enumerate() {
            let inv = p.inverse();
            for c in 0..n {
                rows[c * cols + 2 * g] = p.apply(c) as u32;
                rows[c * cols + 2 * g + 1] = inv.apply(c) as u32;
            }
        }
        let mut t = CosetTable {
            generator_count: actions.len(),
            coset_count: n,
            rows,
            trivial_subgroup,
            stats: EnumerationStats::default(),
        };
        t.standardize();
        t
    }

    fn standardize(&mut self) {
        let cols = 2 * self.generator_count;
        let n = self.coset_count;
        let mut new = vec![NONE; n];
        let mut order = Vec::with_capacity(n);
        if n > 0 {
            new[0] = 0;
            order.push(0usize);
        }
        let mut k = 0;
        while k < order.len() {
            let c = order[k];
            k += 1;
            for x in 0..cols {
                let d = self.rows[c * cols + x] as usize;
                if new[d] == NONE {
                    new[d] = order.len() as u32;
                    order.push(d);
                }
            }
        }
        assert_eq!(order.len(), n, "coset table is not connected");
        let mut rows = vec![NONE; n * cols];
        for (nc, &c) in order.iter().enumerate() {
            for x in 0..cols {
                rows[nc * cols + x] = new[self.rows[c * cols + x] as usize];
            }
        }
        self.rows = rows;
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn coset_count(&self) -> usize {
        self.coset_count
    }

    pub fn stats(&self) -> EnumerationStats {
        self.stats
    }

    pub fn is_over_trivial_subgroup(&self) -> bool {
        self.trivial_subgroup
    }

    /// The coset `c · l`.
    pub fn act(&self, c: usize, l: Letter) -> usize {
        self.rows[c * 2 * self.generator_count + 2 * l.gen + usize::from(l.inverse)] as usize
    }

    /// The coset `c · w`.
    pub fn trace(&self, c: usize, w: &Word) -> usize {
        w.letters().iter().fold(c, |c, &l| self.act(c, l))
    }

    /// Whether every relator traces from every coset back to it.
    pub fn verify(&self, relators: &[Word]) -> bool {
        (0..self.coset_count).all(|c| relators.iter().all(|r| self.trace(c, r) == c))
    }

    /// Whether `w` is trivial in the group, for a table over the trivial
    /// subgroup.
    pub fn is_identity(&self, w: &Word) -> Result<bool, EnumerationError> {
        if !self.trivial_subgroup {
            return Err(EnumerationError::NotTrivialSubgroup);
        }
        Ok(self.trace(0, w) == 0)
    }

    /// Order of the group, for a table over the trivial subgroup.
    pub fn group_order(&self) -> Result<usize, EnumerationError> {
        if self.trivial_subgroup {
            Ok(self.coset_count)
        } else {
            Err(EnumerationError::NotTrivialSubgroup)
        }
    }

    /// The action of each generator on the cosets.
    pub fn generator_permutations(&self) -> Vec<Permutation> {
        (0..self.generator_count)
            .map(|g| {
                let images = (0..self.coset_count)
                    .map(|c| self.act(c, Letter::new(g)))
                    .collect();
                Permutation::from_images(images).expect("closed table acts by permutations")
            })
            .collect()
    }
}

/// Order of a group from its presentation, by enumeration over the trivial
/// subgroup.
pub fn group_order(p: &GroupPresentation, max_cosets: usize) -> Result<usize, EnumerationError> {
    enumerate(p, &[], max_cosets)?.group_order()
}

struct Enumerator {
    cols: usize,
    inv: Vec<usize>,
    table: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
    max: usize,
    queue: Vec<u32>,
    stats: EnumerationStats,
}

impl Enumerator {
    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.cols + x]
    }

    fn set(&mut self, c: u32, x: usize, d: u32) {
        self.table[c as usize * self.cols + x] = d;
    }

    fn alive(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn rows(&self) -> usize {
        self.parent.len()
    }

    fn define(&mut self, c: u32, x: usize) -> Result<(), EnumerationError> {
        if self.live >= self.max {
            return Err(EnumerationError::Overflow {
                max_cosets: self.max,
            });
        }
        let d = self.rows() as u32;
        self.table.extend(std::iter::repeat_n(NONE, self.cols));
        self.parent.push(d);
        self.live += 1;
        self.stats.defined += 1;
        self.stats.max_live = self.stats.max_live.max(self.live);
        self.set(c, x, d);
        self.set(d, self.inv[x], c);
        Ok(())
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut c = c;
        while self.parent[c as usize] != r {
            let next = self.parent[c as usize];
            self.parent[c as usize] = r;
            c = next;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, drop) = (a.min(b), a.max(b));
        self.parent[drop as usize] = keep;
        self.live -= 1;
        self.queue.push(drop);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let e = self.queue[i];
            i += 1;
            for x in 0..self.cols {
                let f = self.get(e, x);
                if f == NONE {
                    continue;
                }
                let ix = self.inv[x];
                if self.get(f, ix) == e {
                    self.set(f, ix, NONE);
                }
                let (e1, f1) = (self.rep(e), self.rep(f));
                let ex = self.get(e1, x);
                if ex != NONE {
                    self.merge(f1, ex);
                } else {
                    let fx = self.get(f1, ix);
                    if fx != NONE {
                        self.merge(e1, fx);
                    } else {
                        self.set(e1, x, f1);
                        self.set(f1, ix, e1);
                    }
                }
            }
        }
        self.queue.clear();
    }

    /// Traces `rel` from `c` forwards and backwards, filling the gap with new
    /// cosets when `fill` is set; records deductions and coincidences.
    fn scan(&mut self, c: u32, rel: &[usize], fill: bool) -> Result<(), EnumerationError> {
        if rel.is_empty() {
            return Ok(());
        }
        let (mut f, mut b) = (c, c);
        let mut i = 0usize;
        let mut j = rel.len() as isize - 1;
        loop {
            while i as isize <= j {
                let n = self.get(f, rel[i]);
                if n == NONE {
                    break;
                }
                f = n;
                i += 1;
            }
            if i as isize > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize {
                let n = self.get(b, self.inv[rel[j as usize]]);
                if n == NONE {
                    break;
                }
                b = n;
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                let x = rel[i];
                self.set(f, x, b);
                self.set(b, self.inv[x], f);
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f, rel[i])?;
        }
    }

    /// Scans every relator from every live coset without defining new ones.
    fn lookahead(&mut self, rels: &[Vec<usize>]) {
        self.stats.lookahead_passes += 1;
        let mut c = 0;
        while c < self.rows() {
            for r in rels {
                if !self.alive(c as u32) {
                    break;
                }
                self.scan(c as u32, r, false).expect("no definitions in lookahead");
            }
            c += 1;
        }
    }

    /// Drops dead rows; returns the new index of row `at`, or of the next live
    /// row after it.
    fn compact(&mut self, at: usize) -> usize {
        let n = self.rows();
        let mut new = vec![NONE; n];
        let mut count = 0u32;
        let mut at_new = None;
        for c in 0..n {
            if c == at {
                at_new = Some(count as usize);
            }
            if self.alive(c as u32) {
                new[c] = count;
                count += 1;
            }
        }
        let mut table = Vec::with_capacity(count as usize * self.cols);
        for c in 0..n {
            if new[c] == NONE {
                continue;
            }
            for x in 0..self.cols {
                let d = self.table[c * self.cols + x];
                table.push(if d == NONE { NONE } else { new[d as usize] });
            }
        }
        self.table = table;
        self.parent = (0..count).collect();
        at_new.unwrap_or(count as usize)
    }
}

/// Enumerates the cosets of the subgroup generated by `subgroup` in the group
/// presented by `p`.
pub fn enumerate(
    p: &GroupPresentation,
    subgroup: &[Word],
    max_cosets: usize,
) -> Result<CosetTable, EnumerationError> {
    if max_cosets == 0 {
        return Err(EnumerationError::InvalidBound);
    }
    let gens = p.generator_count();
    for w in subgroup {
        if let Some(g) = w.max_gen().filter(|&g| g >= gens) {
            return Err(EnumerationError::GeneratorOutOfRange(g));
        }
    }

    // involutions get one column serving as its own inverse
    let mut col_of = vec![[0usize; 2]; gens];
    let mut inv = Vec::new();
    for (g, slot) in col_of.iter_mut().enumerate() {
        let c = inv.len();
        if p.is_involution(g) {
            inv.push(c);
            *slot = [c, c];
        } else {
            inv.push(c + 1);
            inv.push(c);
            *slot = [c, c + 1];
        }
    }
    let cols = inv.len();
    let to_cols = |w: &Word| -> Vec<usize> {
        w.letters()
            .iter()
            .map(|l| col_of[l.gen][usize::from(l.inverse)])
            .collect()
    };
    let rels: Vec<Vec<usize>> = p
        .relators()
        .iter()
        .filter(|r| !(r.len() == 2 && r.letters()[0] == r.letters()[1] && p.is_involution(r.letters()[0].gen)))
        .map(|r| to_cols(&r.cyclic_reduce()))
        .collect();

    let mut e = Enumerator {
        cols,
        inv,
        table: vec![NONE; cols],
        parent: vec![0],
        live: 1,
        max: max_cosets,
        queue: Vec::new(),
        stats: EnumerationStats {
            defined: 1,
            max_live: 1,
            lookahead_passes: 0,
        },
    };

    let run = |e: &mut Enumerator| -> Result<(), EnumerationError> {
        for w in subgroup {
            e.scan(0, &to_cols(&w.free_reduce()), true)?;
        }
        let mut c = 0usize;
        while c < e.rows() {
            if e.rows() > 1 << 16 && e.rows() > 2 * e.live {
                c = e.compact(c);
                if c >= e.rows() {
                    break;
                }
            }
            let cu = c as u32;
            for r in &rels {
                if !e.alive(cu) {
                    break;
                }
                e.scan(cu, r, true)?;
            }
            for x in 0..cols {
                if !e.alive(cu) {
                    break;
                }
                if e.get(cu, x) == NONE {
                    e.define(cu, x)?;
                }
            }
            c += 1;
        }
        Ok(())
    };

    loop {
        match run(&mut e) {
            Ok(()) => break,
            Err(EnumerationError::Overflow { .. }) => {
                let before = e.live;
                e.lookahead(&rels);
                if e.live == before {
                    return Err(EnumerationError::Overflow { max_cosets });
                }
                // restart the scan from the top; definitions already made stay
            }
            Err(err) => return Err(err),
        }
    }

    let n = e.compact(0);
    debug_assert_eq!(n, 0);
    let count = e.rows();
    let mut rows = vec![NONE; count * 2 * gens];
    for c in 0..count {
        for g in 0..gens {
            let [a, b] = col_of[g];
            rows[c * 2 * gens + 2 * g] = e.table[c * cols + a];
            rows[c * 2 * gens + 2 * g + 1] = e.table[c * cols + b];
        }
    }
    debug_assert!(rows.iter().all(|&x| x != NONE));
    let mut t = CosetTable {
        generator_count: gens,
        coset_count: count,
        rows,
        trivial_subgroup: subgroup.iter().all(|w| w.free_reduce().is_empty()),
        stats: e.stats,
    };
    t.standardize();
    Ok(t)
}
