use std::fmt;

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize) -> Self {
        Self {
            gen,
            inverse: false,
        }
    }

    pub fn inv(gen: usize) -> Self {
        Self { gen, inverse: true }
    }

    pub fn inverted(self) -> Self {
        Self {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    pub fn exponent(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// A word in the generators of a free group. Words are not reduced
/// implicitly; call [`Word::free_reduce`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Self(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Self(letters)
    }

    /// Builds a word from signed generator numbers: `+k` is generator `k-1`,
    /// `-k` its inverse.
    pub fn from_signed(signed: &[i64]) -> Self {
        Self(
            signed
                .iter()
                .map(|&s| {
                    assert!(s != 0, "generator numbers are 1-based");
                    Letter {
                        gen: s.unsigned_abs() as usize - 1,
                        inverse: s < 0,
                    }
                })
                .collect(),
        )
    }

    /// Product of the given generators, all with exponent +1.
    pub fn gens(gens: &[usize]) -> Self {
        Self(gens.iter().map(|&g| Letter::new(g)).collect())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Self(self.0.iter().rev().map(|l| l.inverted()).collect())
    }

    pub fn concat(&self, other: &Word) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Self(v)
    }

    /// `a b a⁻¹ b⁻¹`
    pub fn commutator(a: &Word, b: &Word) -> Self {
        a.concat(b).concat(&a.inverse()).concat(&b.inverse())
    }

    pub fn mentions(&self, gen: usize) -> bool {
        self.0.iter().any(|l| l.gen == gen)
    }

    pub fn max_gen(&self) -> Option<usize> {
        self.0.iter().map(|l| l.gen).max()
    }

    /// Cancels adjacent `x x⁻¹` pairs until none remain.
    pub fn free_reduce(&self) -> Self {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inverted()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Self(out)
    }

    pub fn is_free_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1].inverted())
    }

    /// Free reduction followed by cancellation across the ends (a conjugate).
    pub fn cyclic_reduce(&self) -> Self {
        let w = self.free_reduce().0;
        let (mut i, mut j) = (0, w.len());
        while j - i >= 2 && w[i] == w[j - 1].inverted() {
            i += 1;
            j -= 1;
        }
        Self(w[i..j].to_vec())
    }

    /// Reduction in a group where each generator flagged by `involution` has
    /// order two: inverses of such generators are dropped and adjacent equal
    /// letters cancel.
    pub fn reduce_involutory(&self, involution: impl Fn(usize) -> bool) -> Self {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            let l = if involution(l.gen) { Letter::new(l.gen) } else { l };
            match out.last() {
                Some(&last) if last == l.inverted() => {
                    out.pop();
                }
                Some(&last) if last == l && involution(l.gen) => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        Self(out)
    }

    /// Representative of the class of this relator under cyclic rotation and
    /// inversion. Two relators with the same key have the same normal closure.
    pub fn relator_key(&self) -> Self {
        let w = self.cyclic_reduce();
        if w.is_empty() {
            return w;
        }
        let inv = w.inverse();
        let mut best: Option<Vec<Letter>> = None;
        for base in [&w.0, &inv.0] {
            let n = base.len();
            for r in 0..n {
                let rotated: Vec<Letter> = base[r..].iter().chain(&base[..r]).copied().collect();
                if best.as_ref().is_none_or(|b| rotated < *b) {
                    best = Some(rotated);
                }
            }
        }
        Self(best.unwrap_or_default())
    }

    /// Replaces every occurrence of `gen` by `by` (and `gen⁻¹` by `by⁻¹`).
    pub fn substitute(&self, gen: usize, by: &Word) -> Self {
        let inv = by.inverse();
        let mut out = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if l.gen == gen {
                out.extend_from_slice(if l.inverse { &inv.0 } else { &by.0 });
            } else {
                out.push(l);
            }
        }
        Self(out)
    }

    /// Applies `f` to every generator index.
    pub fn map_gens(&self, f: impl Fn(usize) -> usize) -> Self {
        Self(
            self.0
                .iter()
                .map(|l| Letter {
                    gen: f(l.gen),
                    inverse: l.inverse,
                })
                .collect(),
        )
    }

    /// Exponent sum of each generator among `gens` generators.
    pub fn exponent_sums(&self, gens: usize) -> Vec<i64> {
        let mut v = vec![0; gens];
        for l in &self.0 {
            v[l.gen] += l.exponent();
        }
        v
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }
}

impl std::ops::Mul for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        self.concat(rhs)
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "e");
        }
        for (k, l) in self.word.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            match self.names.get(l.gen) {
                Some(n) => write!(f, "{n}")?,
                None => write!(f, "x{}", l.gen + 1)?,
            }
            if l.inverse {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}
