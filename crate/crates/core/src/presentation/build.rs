use std::collections::BTreeSet;

use crate::complex::{DegenerationComplex, VertexClass};

use super::grammar::parse_relation;
use super::word::{Letter, Word};
use super::{GroupPresentation, PresentationError};

fn triple(i: usize, j: usize) -> Word {
    Word::from_letters(vec![
        Letter::new(i),
        Letter::new(j),
        Letter::new(i),
        Letter::inv(j),
        Letter::inv(i),
        Letter::inv(j),
    ])
}

/// Presentation of `G̃` on one generator `g_l` per line, after the primed
/// generators have been identified with the unprimed ones.
///
/// Relators, in order: squares; a triple relation for every pair of lines
/// meeting at a vertex inside a common plane; a commutator for every other
/// vertex-sharing pair (inner 4-point diagonals) and every parasitic pair;
/// `g_k = g_i g_j g_i` for every inner 3-point `i < j < k`; then the
/// supplied extra relators and projective relator.
pub fn build_tilde_presentation(c: &DegenerationComplex) -> Result<GroupPresentation, PresentationError> {
    let classes = c.classify_all()?;
    let has_four = classes
        .iter()
        .any(|(_, k)| matches!(k, VertexClass::Inner4 { .. }));
    let overrides = c.overrides();
    if has_four && overrides.is_none_or(|o| o.is_empty()) {
        return Err(PresentationError::MissingFourPointData);
    }

    let mut ids: Vec<usize> = c.edges().iter().map(|e| e.id).collect();
    ids.sort_unstable();
    let names: Vec<String> = ids.iter().map(|id| format!("g{id}")).collect();
    let gen = |id: usize| ids.binary_search(&id).expect("edge id exists");

    let mut relators = Vec::new();
    for &id in &ids {
        relators.push(Word::gens(&[gen(id), gen(id)]));
    }

    let sharing = c.vertex_sharing_pairs();
    let mut commuting: BTreeSet<(usize, usize)> = c.parasitic_pairs().into_iter().collect();
    for &(a, b) in &sharing {
        let (ea, eb) = (c.edge(a).expect("edge"), c.edge(b).expect("edge"));
        if ea.shared_planes(eb) == 1 {
            relators.push(triple(gen(a), gen(b)));
        } else {
            commuting.insert((a, b));
        }
    }
    for (a, b) in commuting {
        relators.push(Word::commutator(
            &Word::gens(&[gen(a)]),
            &Word::gens(&[gen(b)]),
        ));
    }

    for (_, class) in &classes {
        if let VertexClass::Inner3 { edges: [i, j, k] } = *class {
            let rhs = Word::gens(&[gen(i), gen(j), gen(i)]);
            relators.push(Word::gens(&[gen(k)]).concat(&rhs.inverse()));
        }
    }

    if let Some(o) = overrides {
        for line in &o.extra_relators {
            relators.push(parse_relation(line, &names)?);
        }
        if let Some(line) = &o.projective_relator {
            relators.push(parse_relation(line, &names)?);
        }
    }

    GroupPresentation::new(names, relators)
}
