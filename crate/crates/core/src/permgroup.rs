//! Permutations and the canonical map `G̃ → Sₙ`.
//!
//! Products are read left to right: `(p·q)(x) = q(p(x))`, i.e. the left
//! factor acts first. Points are 0-based internally and 1-based in cycle
//! notation.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::complex::DegenerationComplex;
use crate::presentation::{GroupPresentation, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("image list is not a bijection of 0..{0}")]
    NotABijection(usize),
    #[error("point {point} outside 1..={degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    /// `images[i]` is the image of point `i` (0-based).
    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(PermError::NotABijection(n));
            }
        }
        Ok(Self { images })
    }

    /// Builds a permutation of `1..=n` from 1-based cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..n).collect();
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                for p in [a, b] {
                    if p == 0 || p > n {
                        return Err(PermError::PointOutOfRange { point: p, degree: n });
                    }
                }
                images[a - 1] = b - 1;
            }
        }
        Self::from_images(images)
    }

    /// The transposition of the 1-based points `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        Self::from_cycles(n, &[&[a, b]]).expect("points in range")
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Image of a 0-based point.
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// `self · other`: apply `self`, then `other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            images: self.images.iter().map(|&x| other.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn is_involution(&self) -> bool {
        self.compose(self).is_identity()
    }

    pub fn first_moved_point(&self) -> Option<usize> {
        self.images.iter().enumerate().position(|(i, &x)| i != x)
    }

    /// 1-based cycles of length ≥ 2, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }
}

impl std::ops::Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        self.compose(rhs)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{self}")
    }
}

/// Images of the generators of a presentation in `S_degree`, by generator index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricAssignment {
    pub degree: usize,
    pub images: Vec<Permutation>,
}

impl SymmetricAssignment {
    pub fn new(degree: usize, images: Vec<Permutation>) -> Result<Self, PermError> {
        if let Some(p) = images.iter().find(|p| p.degree() != degree) {
            return Err(PermError::DegreeMismatch(p.degree(), degree));
        }
        Ok(Self { degree, images })
    }

    pub fn eval(&self, w: &Word) -> Permutation {
        eval_word(&self.images, self.degree, w)
    }
}

/// Left-to-right product of the images of the letters of `w`.
pub fn eval_word(images: &[Permutation], degree: usize, w: &Word) -> Permutation {
    w.letters()
        .iter()
        .fold(Permutation::identity(degree), |acc, l| {
            let p = &images[l.gen];
            if l.inverse {
                acc.compose(&p.inverse())
            } else {
                acc.compose(p)
            }
        })
}

/// Sends the generator of line `l` to the transposition of the two planes
/// meeting along it. Generators are ordered by edge id, as in
/// [`crate::presentation::build_tilde_presentation`].
pub fn plane_transposition_map(c: &DegenerationComplex) -> SymmetricAssignment {
    let mut edges: Vec<_> = c.edges().iter().collect();
    edges.sort_by_key(|e| e.id);
    let n = c.plane_count();
    SymmetricAssignment {
        degree: n,
        images: edges
            .iter()
            .map(|e| Permutation::transposition(n, e.planes[0], e.planes[1]))
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomomorphismReport {
    pub holds: bool,
    /// Indices of relators whose image is not the identity.
    pub failures: Vec<usize>,
}

pub fn verify_homomorphism(p: &GroupPresentation, a: &SymmetricAssignment) -> HomomorphismReport {
    assert!(
        a.images.len() >= p.generator_count(),
        "assignment must cover every generator"
    );
    let failures: Vec<usize> = p
        .relators()
        .iter()
        .enumerate()
        .filter(|(_, r)| !a.eval(r).is_identity())
        .map(|(k, _)| k)
        .collect();
    HomomorphismReport {
        holds: failures.is_empty(),
        failures,
    }
}

struct Level {
    base: usize,
    gens: Vec<Permutation>,
    /// orbit point → element mapping the base point to it
    transversal: HashMap<usize, Permutation>,
}

impl Level {
    fn new(base: usize) -> Self {
        Self {
            base,
            gens: Vec::new(),
            transversal: HashMap::new(),
        }
    }

    fn rebuild_orbit(&mut self, degree: usize) {
        self.transversal.clear();
        self.transversal.insert(self.base, Permutation::identity(degree));
        let mut queue = vec![self.base];
        let mut k = 0;
        while k < queue.len() {
            let b = queue[k];
            k += 1;
            let ub = self.transversal[&b].clone();
            for g in &self.gens {
                let c = g.apply(b);
                if !self.transversal.contains_key(&c) {
                    self.transversal.insert(c, ub.compose(g));
                    queue.push(c);
                }
            }
        }
    }

    /// Orbit points in increasing order, for deterministic iteration.
    fn orbit(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.transversal.keys().copied().collect();
        v.sort_unstable();
        v
    }
}

/// Base and strong generating set built by the deterministic Schreier–Sims
/// algorithm.
pub struct StabilizerChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabilizerChain {
    pub fn new(degree: usize, gens: &[Permutation]) -> Self {
        let strong: Vec<Permutation> = gens
            .iter()
            .inspect(|g| assert_eq!(g.degree(), degree, "degree mismatch"))
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();
        let mut chain = Self {
            degree,
            levels: Vec::new(),
        };
        let Some(first) = strong.first() else {
            return chain;
        };
        let mut level = Level::new(first.first_moved_point().expect("non-identity"));
        level.gens = strong;
        level.rebuild_orbit(degree);
        chain.levels.push(level);

        // level i is complete once every Schreier generator of it sifts
        // through the levels below
        let mut i = 0isize;
        'levels: while i >= 0 {
            let li = i as usize;
            let level = &chain.levels[li];
            for beta in level.orbit() {
                let ub = &level.transversal[&beta];
                for s in &level.gens {
                    let img = s.apply(beta);
                    let y = ub.compose(s).compose(&level.transversal[&img].inverse());
                    if y.is_identity() {
                        continue;
                    }
                    let (h, j) = chain.strip(&y, li + 1);
                    if h.is_identity() {
                        continue;
                    }
                    if j == chain.levels.len() {
                        let base = h.first_moved_point().expect("non-identity");
                        chain.levels.push(Level::new(base));
                    }
                    for l in li + 1..=j {
                        chain.levels[l].gens.push(h.clone());
                        chain.levels[l].rebuild_orbit(degree);
                    }
                    i = j as isize;
                    continue 'levels;
                }
            }
            i -= 1;
        }
        chain
    }

    fn strip(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let beta = h.apply(level.base);
            match level.transversal.get(&beta) {
                Some(u) => h = h.compose(&u.inverse()),
                None => return (h, i),
            }
        }
        (h, self.levels.len())
    }

    pub fn order(&self) -> u128 {
        self.levels
            .iter()
            .map(|l| l.transversal.len() as u128)
            .product()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        let (h, _) = self.strip(g, 0);
        h.is_identity()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }
}

/// Order of the subgroup of `S_degree` generated by `gens`.
pub fn permutation_group_order(degree: usize, gens: &[Permutation]) -> u128 {
    StabilizerChain::new(degree, gens).order()
}
