use serde::{Deserialize, Serialize};

use super::word::{Letter, Word};

/// The braid types attached to singularities of the regenerated branch curve.
/// Lines are numbered from 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum BraidDescriptor {
    /// Half-twist `Z_{j j'}` at a branch point.
    Branch { j: usize },
    /// Full twist `Z²_{i j}` at a node.
    Node { i: usize, j: usize },
    /// `Z³_{i j}` at a cusp.
    Cusp { i: usize, j: usize },
}

/// Generator index of `Γ_j` (or `Γ_{j'}`) in the alphabet
/// `Γ₁, Γ₁', Γ₂, Γ₂', …` used by [`vk_relation`].
pub fn primed_alphabet(j: usize, primed: bool) -> usize {
    assert!(j >= 1, "lines are numbered from 1");
    2 * (j - 1) + usize::from(primed)
}

/// The van Kampen relator of a braid, over the alphabet of [`primed_alphabet`].
pub fn vk_relation(b: BraidDescriptor) -> Word {
    let g = |j: usize| Letter::new(primed_alphabet(j, false));
    match b {
        BraidDescriptor::Branch { j } => Word::from_letters(vec![
            g(j),
            Letter::inv(primed_alphabet(j, true)),
        ]),
        BraidDescriptor::Node { i, j } => {
            assert_ne!(i, j);
            Word::from_letters(vec![g(i), g(j), g(i).inverted(), g(j).inverted()])
        }
        BraidDescriptor::Cusp { i, j } => {
            assert_ne!(i, j);
            Word::from_letters(vec![
                g(i),
                g(j),
                g(i),
                g(j).inverted(),
                g(i).inverted(),
                g(j).inverted(),
            ])
        }
    }
}
