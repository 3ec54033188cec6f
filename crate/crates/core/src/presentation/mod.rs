//! Finitely presented groups.
//!
//! Words, presentations, the van Kampen relation templates, the relation
//! grammar used by degeneration files, generation of the presentation of
//! `G̃ = G/⟨Γⱼ², Γⱼ'²⟩` from a complex, and Tietze moves.

mod build;
mod grammar;
mod tietze;
mod vk;
mod word;

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::ComplexError;
use crate::coxquot::CoxeterRouteData;

pub use build::build_tilde_presentation;
pub use grammar::{format_relation, parse_definition, parse_relation};
pub use tietze::{eliminate_generator, simplify, SimplifyOptions};
pub use vk::{primed_alphabet, vk_relation, BraidDescriptor};
pub use word::{Letter, Word, WordDisplay};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("relator {relator} mentions generator index {gen} but there are only {count} generators")]
    GeneratorOutOfRange {
        relator: usize,
        gen: usize,
        count: usize,
    },
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("complex has inner 4-points but no four-point relations were supplied")]
    MissingFourPointData,
    #[error("substituted word mentions the eliminated generator {0}")]
    SelfReferentialElimination(String),
    #[error("no relator {0} = w is present")]
    RelationNotPresent(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// Relations a complex cannot generate on its own: the four-point relations,
/// the projective relation after identification of primed generators, and
/// optional data for the Coxeter-quotient route.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PresentationOverrides {
    #[serde(default)]
    pub extra_relators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub projective_relator: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coxeter: Option<CoxeterRouteData>,
}

impl PresentationOverrides {
    pub fn is_empty(&self) -> bool {
        self.extra_relators.is_empty() && self.projective_relator.is_none()
    }
}

/// Generators and relators. Relators are kept free-reduced, non-empty and
/// pairwise distinct up to cyclic rotation and inversion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    names: Vec<String>,
    relators: Vec<Word>,
    keys: HashSet<Word>,
}

impl GroupPresentation {
    pub fn new(names: Vec<String>, relators: Vec<Word>) -> Result<Self, PresentationError> {
        let count = names.len();
        for (k, r) in relators.iter().enumerate() {
            if let Some(g) = r.max_gen().filter(|&g| g >= count) {
                return Err(PresentationError::GeneratorOutOfRange {
                    relator: k,
                    gen: g,
                    count,
                });
            }
        }
        let mut p = Self {
            names,
            relators: Vec::new(),
            keys: HashSet::new(),
        };
        for r in relators {
            p.push_relator_unchecked(r);
        }
        Ok(p)
    }

    /// Generators named `g1 … gN`.
    pub fn numbered(count: usize, relators: Vec<Word>) -> Result<Self, PresentationError> {
        Self::new((1..=count).map(|k| format!("g{k}")).collect(), relators)
    }

    /// Adds a relator; returns false if it is trivial or already present.
    pub fn add_relator(&mut self, w: Word) -> Result<bool, PresentationError> {
        if let Some(g) = w.max_gen().filter(|&g| g >= self.names.len()) {
            return Err(PresentationError::GeneratorOutOfRange {
                relator: self.relators.len(),
                gen: g,
                count: self.names.len(),
            });
        }
        Ok(self.push_relator_unchecked(w))
    }

    fn push_relator_unchecked(&mut self, w: Word) -> bool {
        let w = w.free_reduce();
        let key = w.relator_key();
        if key.is_empty() || !self.keys.insert(key) {
            return false;
        }
        self.relators.push(w);
        true
    }

    /// Whether a relator equal to `w` up to rotation and inversion is present.
    pub fn contains_relator(&self, w: &Word) -> bool {
        self.keys.contains(&w.relator_key())
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Total number of letters over all relators.
    pub fn total_length(&self) -> usize {
        self.relators.iter().map(Word::len).sum()
    }

    /// True when `gen²` is a relator.
    pub fn is_involution(&self, gen: usize) -> bool {
        self.keys.contains(&Word::gens(&[gen, gen]))
    }

    /// The relators in the relation grammar, one per line.
    pub fn emit(&self) -> String {
        let mut out = String::new();
        for r in &self.relators {
            out.push_str(&format_relation(r, &self.names));
            out.push('\n');
        }
        out
    }
}
