use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::word::{Letter, Word};
use super::{GroupPresentation, PresentationError};

/// Removes generator `gen` using the relation `gen = w`, which must already
/// be a relator (up to rotation and inversion). Every occurrence of `gen` is
/// replaced by `w`; the result presents the same group.
pub fn eliminate_generator(
    p: &GroupPresentation,
    gen: usize,
    w: &Word,
) -> Result<GroupPresentation, PresentationError> {
    let names = p.generator_names();
    let name = names
        .get(gen)
        .cloned()
        .ok_or_else(|| PresentationError::UnknownGenerator(format!("#{gen}")))?;
    if w.mentions(gen) {
        return Err(PresentationError::SelfReferentialElimination(name));
    }
    let defining = Word::gens(&[gen]).concat(&w.inverse());
    if !p.contains_relator(&defining) {
        return Err(PresentationError::RelationNotPresent(name));
    }
    let shift = |g: usize| if g > gen { g - 1 } else { g };
    let relators = p
        .relators()
        .iter()
        .map(|r| r.substitute(gen, w).map_gens(shift))
        .collect();
    let mut names = names.to_vec();
    names.remove(gen);
    GroupPresentation::new(names, relators)
}

/// Limits for [`simplify`].
#[derive(Debug, Clone, Copy)]
pub struct SimplifyOptions {
    /// Longest relator used to eliminate a generator.
    pub max_eliminator_length: usize,
    /// Stop eliminating once the total relator length exceeds this.
    pub max_total_length: usize,
}

impl Default for SimplifyOptions {
    fn default() -> Self {
        Self {
            max_eliminator_length: 16,
            max_total_length: 4_000_000,
        }
    }
}

fn encode(l: Letter) -> i32 {
    let g = l.gen as i32 + 1;
    if l.inverse {
        -g
    } else {
        g
    }
}

fn decode(x: i32) -> Letter {
    Letter {
        gen: x.unsigned_abs() as usize - 1,
        inverse: x < 0,
    }
}

/// Free and cyclic reduction in place.
fn reduce(w: &mut Vec<i32>) {
    let mut out: Vec<i32> = Vec::with_capacity(w.len());
    for &x in w.iter() {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    let (mut i, mut j) = (0, out.len());
    while j - i >= 2 && out[i] == -out[j - 1] {
        i += 1;
        j -= 1;
    }
    out.truncate(j);
    out.drain(..i);
    *w = out;
}

/// Greedy Tietze simplification: repeatedly takes the shortest relator in
/// which some generator occurs exactly once, solves it for that generator and
/// substitutes. Deterministic for a given input.
pub fn simplify(p: &GroupPresentation, opts: SimplifyOptions) -> GroupPresentation {
    let gens = p.generator_count();
    let mut rels: Vec<Option<Vec<i32>>> = p
        .relators()
        .iter()
        .map(|r| {
            let mut v: Vec<i32> = r.letters().iter().copied().map(encode).collect();
            reduce(&mut v);
            (!v.is_empty()).then_some(v)
        })
        .collect();
    let mut version = vec![0u32; rels.len()];
    let mut occ: Vec<Vec<u32>> = vec![Vec::new(); gens];
    let mut total = 0usize;
    let mut heap = BinaryHeap::new();
    for (id, r) in rels.iter().enumerate() {
        if let Some(r) = r {
            total += r.len();
            for &x in r {
                occ[x.unsigned_abs() as usize - 1].push(id as u32);
            }
            heap.push(Reverse((r.len(), id, 0u32)));
        }
    }
    let mut alive = vec![true; gens];
    let mut counts = vec![0u32; gens];

    while let Some(Reverse((len, id, ver))) = heap.pop() {
        if version[id] != ver || rels[id].is_none() {
            continue;
        }
        if len > opts.max_eliminator_length || total > opts.max_total_length {
            break;
        }
        let r = rels[id].as_ref().expect("checked");
        for &x in r {
            counts[x.unsigned_abs() as usize - 1] += 1;
        }
        let mut best: Option<(usize, usize)> = None;
        for (pos, &x) in r.iter().enumerate() {
            let g = x.unsigned_abs() as usize - 1;
            if counts[g] == 1 {
                let cost = occ[g].len();
                if best.is_none_or(|(_, bp)| {
                    let bg = r[bp].unsigned_abs() as usize - 1;
                    (cost, g) < (occ[bg].len(), bg)
                }) {
                    best = Some((g, pos));
                }
            }
        }
        for &x in r {
            counts[x.unsigned_abs() as usize - 1] = 0;
        }
        let Some((g, pos)) = best else { continue };

        // rotate so the relator reads g^e · rest, then g = rest^{-e}
        let r = rels[id].take().expect("checked");
        total -= r.len();
        version[id] += 1;
        let e = r[pos];
        let rest: Vec<i32> = r[pos + 1..].iter().chain(&r[..pos]).copied().collect();
        let replacement: Vec<i32> = if e > 0 {
            rest.iter().rev().map(|&x| -x).collect()
        } else {
            rest
        };
        let inverse: Vec<i32> = replacement.iter().rev().map(|&x| -x).collect();
        alive[g] = false;

        let mut targets = std::mem::take(&mut occ[g]);
        targets.sort_unstable();
        targets.dedup();
        for rid in targets {
            let rid = rid as usize;
            let Some(old) = rels[rid].take() else { continue };
            if !old.iter().any(|&x| x.unsigned_abs() as usize - 1 == g) {
                rels[rid] = Some(old);
                continue;
            }
            total -= old.len();
            let mut new = Vec::with_capacity(old.len() + replacement.len());
            for &x in &old {
                if x.unsigned_abs() as usize - 1 == g {
                    new.extend_from_slice(if x > 0 { &replacement } else { &inverse });
                } else {
                    new.push(x);
                }
            }
            reduce(&mut new);
            version[rid] += 1;
            if new.is_empty() {
                continue;
            }
            total += new.len();
            for &x in &replacement {
                occ[x.unsigned_abs() as usize - 1].push(rid as u32);
            }
            heap.push(Reverse((new.len(), rid, version[rid])));
            rels[rid] = Some(new);
        }
    }

    let mut index = vec![usize::MAX; gens];
    let mut names = Vec::new();
    for g in 0..gens {
        if alive[g] {
            index[g] = names.len();
            names.push(p.generator_names()[g].clone());
        }
    }
    let relators = rels
        .into_iter()
        .flatten()
        .map(|r| {
            Word::from_letters(
                r.into_iter()
                    .map(|x| {
                        let l = decode(x);
                        Letter {
                            gen: index[l.gen],
                            inverse: l.inverse,
                        }
                    })
                    .collect(),
            )
        })
        .collect();
    GroupPresentation::new(names, relators).expect("generators renumbered consistently")
}
