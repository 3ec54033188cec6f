use std::collections::VecDeque;

use crate::enumeration::CosetTable;
use crate::presentation::{GroupPresentation, Letter, Word};

use super::KernelError;

/// Presentation of a finite-index subgroup on its Schreier generators.
#[derive(Debug, Clone)]
pub struct SchreierPresentation {
    pub presentation: GroupPresentation,
    /// Coset representative of each coset, a word in the parent generators.
    pub transversal: Vec<Word>,
    /// `(coset, generator)` of each Schreier generator `s = rep(c)·g·rep(c·g)⁻¹`.
    pub pairs: Vec<(usize, usize)>,
    /// Rewritten relators before deduplication, `index × relators` of them.
    pub rewritten_count: usize,
}

impl SchreierPresentation {
    pub fn index(&self) -> usize {
        self.transversal.len()
    }

    /// The Schreier generator `k` as a word in the parent generators.
    pub fn generator_word(&self, k: usize, table: &CosetTable) -> Word {
        let (c, g) = self.pairs[k];
        let d = table.act(c, Letter::new(g));
        self.transversal[c]
            .concat(&Word::gens(&[g]))
            .concat(&self.transversal[d].inverse())
            .free_reduce()
    }
}

struct Transversal {
    reps: Vec<Word>,
    /// `tree[c * gens + g]` when the pair `(c, g)` is a tree edge
    tree: Vec<bool>,
}

fn schreier_transversal(t: &CosetTable) -> Transversal {
    let (n, gens) = (t.coset_count(), t.generator_count());
    let mut reps: Vec<Option<Word>> = vec![None; n];
    let mut tree = vec![false; n * gens];
    reps[0] = Some(Word::identity());
    let mut queue = VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        let rc = reps[c].clone().expect("queued cosets have representatives");
        for g in 0..gens {
            for inverse in [false, true] {
                let l = Letter { gen: g, inverse };
                let d = t.act(c, l);
                if reps[d].is_some() {
                    continue;
                }
                reps[d] = Some(rc.concat(&Word::from_letters(vec![l])));
                if inverse {
                    tree[d * gens + g] = true;
                } else {
                    tree[c * gens + g] = true;
                }
                queue.push_back(d);
            }
        }
    }
    Transversal {
        reps: reps
            .into_iter()
            .map(|r| r.expect("coset table is connected"))
            .collect(),
        tree,
    }
}

/// Reidemeister–Schreier rewriting of `p` over the subgroup whose cosets form
/// `t`. Schreier generators are the non-tree pairs of a breadth-first
/// transversal, named `s{coset}_{generator}` with cosets numbered from 1.
pub fn reidemeister_schreier(
    p: &GroupPresentation,
    t: &CosetTable,
) -> Result<SchreierPresentation, KernelError> {
    let gens = p.generator_count();
    if t.generator_count() != gens {
        return Err(KernelError::GeneratorMismatch {
            table: t.generator_count(),
            presentation: gens,
        });
    }
    let n = t.coset_count();
    let tr = schreier_transversal(t);
    let mut index = vec![usize::MAX; n * gens];
    let mut pairs = Vec::new();
    let mut names = Vec::new();
    for c in 0..n {
        for g in 0..gens {
            if !tr.tree[c * gens + g] {
                index[c * gens + g] = pairs.len();
                pairs.push((c, g));
                names.push(format!("s{}_{}", c + 1, p.generator_names()[g]));
            }
        }
    }

    let rewrite = |start: usize, w: &Word| -> Word {
        let mut out = Vec::new();
        let mut c = start;
        for &l in w.letters() {
            let d = t.act(c, l);
            let (from, inverse) = if l.inverse { (d, true) } else { (c, false) };
            let k = index[from * gens + l.gen];
            if k != usize::MAX {
                out.push(Letter { gen: k, inverse });
            }
            c = d;
        }
        Word::from_letters(out)
    };

    let mut relators = Vec::with_capacity(n * p.relators().len());
    for c in 0..n {
        for r in p.relators() {
            relators.push(rewrite(c, r));
        }
    }
    let rewritten_count = relators.len();
    let presentation = GroupPresentation::new(names, relators)?;
    Ok(SchreierPresentation {
        presentation,
        transversal: tr.reps,
        pairs,
        rewritten_count,
    })
}
