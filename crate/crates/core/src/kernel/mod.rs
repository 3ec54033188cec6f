//! The kernel of `G̃ → Sₙ`: its coset table, a Reidemeister–Schreier
//! presentation, abelian invariants and a structure verdict.

mod rewrite;
mod snf;

use std::collections::{HashMap, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::enumeration::{enumerate, CosetTable, EnumerationError};
use crate::permgroup::{verify_homomorphism, Permutation, SymmetricAssignment};
use crate::presentation::{simplify, GroupPresentation, Letter, PresentationError, SimplifyOptions};

pub use rewrite::{reidemeister_schreier, SchreierPresentation};
pub use snf::{smith_normal_form, IntegerMatrix};

/// Largest degree for which the `n!` cosets of the kernel are listed.
pub const MAX_KERNEL_DEGREE: usize = 9;

/// Presentations with more generators than this skip the integer Smith form.
pub const MAX_INTEGER_SNF_GENERATORS: usize = 400;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("assignment is not a homomorphism: relators {0:?} map to non-identity permutations")]
    NotAHomomorphism(Vec<usize>),
    #[error("assignment is not surjective: image has order {image}, expected {expected}")]
    NotSurjective { image: u128, expected: u128 },
    #[error("degree {0} is too large to list the symmetric group")]
    DegreeTooLarge(usize),
    #[error("table has {table} generators but the presentation has {presentation}")]
    GeneratorMismatch { table: usize, presentation: usize },
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}

/// Coset table of the kernel of a surjection onto `Sₙ`, together with the
/// permutation attached to each coset.
#[derive(Debug, Clone)]
pub struct KernelTable {
    pub table: CosetTable,
    pub elements: Vec<Permutation>,
}

/// Lists `Sₙ` by breadth-first search from the identity under
/// `σ ↦ σ·a(g)`; the cosets of the kernel correspond to these elements.
pub fn kernel_coset_table(
    p: &GroupPresentation,
    a: &SymmetricAssignment,
) -> Result<KernelTable, KernelError> {
    let report = verify_homomorphism(p, a);
    if !report.holds {
        return Err(KernelError::NotAHomomorphism(report.failures));
    }
    let n = a.degree;
    if n > MAX_KERNEL_DEGREE {
        return Err(KernelError::DegreeTooLarge(n));
    }
    let expected: u128 = (1..=n as u128).product();
    let gens = &a.images[..p.generator_count()];

    let mut index: HashMap<Permutation, usize> = HashMap::new();
    let mut elements = vec![Permutation::identity(n)];
    index.insert(elements[0].clone(), 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(k) = queue.pop_front() {
        for g in gens {
            let next = elements[k].compose(g);
            if !index.contains_key(&next) {
                index.insert(next.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(next);
            }
        }
    }
    if elements.len() as u128 != expected {
        return Err(KernelError::NotSurjective {
            image: elements.len() as u128,
            expected,
        });
    }

    let actions: Vec<Permutation> = gens
        .iter()
        .map(|g| {
            let images = elements.iter().map(|s| index[&s.compose(g)]).collect();
            Permutation::from_images(images).expect("right multiplication is a bijection")
        })
        .collect();
    let table = CosetTable::from_action(&actions, false);
    // the table was renumbered; recover the element of each coset by walking
    // the table and Sₙ in lockstep
    let mut ordered = vec![Permutation::identity(n); elements.len()];
    let mut assigned = vec![false; elements.len()];
    ordered[0] = Permutation::identity(n);
    assigned[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        for (g, img) in gens.iter().enumerate() {
            let d = table.act(c, Letter::new(g));
            if !assigned[d] {
                assigned[d] = true;
                ordered[d] = ordered[c].compose(img);
                queue.push_back(d);
            }
        }
    }
    Ok(KernelTable {
        table,
        elements: ordered,
    })
}

/// Exponent-sum matrix of a presentation, one row per relator.
pub fn relation_matrix(p: &GroupPresentation) -> IntegerMatrix {
    let rows: Vec<Vec<i64>> = p
        .relators()
        .iter()
        .map(|r| r.exponent_sums(p.generator_count()))
        .collect();
    if rows.is_empty() {
        IntegerMatrix::zeros(0, p.generator_count())
    } else {
        IntegerMatrix::from_rows(&rows)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AbelianizationMode {
    Integers,
    Mod2,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Abelianization {
    /// Non-unit invariant factors; `0` stands for a copy of `Z`.
    Factors(Vec<u64>),
    /// Dimension of `H₁ ⊗ F₂`.
    Mod2Dimension(usize),
}

pub fn abelianization(p: &GroupPresentation, mode: AbelianizationMode) -> Abelianization {
    match mode {
        AbelianizationMode::Integers => Abelianization::Factors(invariant_factors(p)),
        AbelianizationMode::Mod2 => Abelianization::Mod2Dimension(mod2_dimension(p)),
    }
}

/// Non-unit invariant factors of the abelianization, zeros (free part) last.
pub fn invariant_factors(p: &GroupPresentation) -> Vec<u64> {
    let gens = p.generator_count();
    let mut d = smith_normal_form(&relation_matrix(p));
    d.resize(gens, 0);
    d.retain(|&x| x != 1);
    d
}

/// `gens − rank` of the exponent-sum matrix over the field with two elements.
pub fn mod2_dimension(p: &GroupPresentation) -> usize {
    let gens = p.generator_count();
    let words = gens.div_ceil(64);
    let mut pivots: Vec<Option<Vec<u64>>> = vec![None; gens];
    let mut rank = 0;
    for r in p.relators() {
        let mut row = vec![0u64; words];
        for l in r.letters() {
            row[l.gen / 64] ^= 1 << (l.gen % 64);
        }
        loop {
            let Some(lead) = row
                .iter()
                .enumerate()
                .find(|(_, w)| **w != 0)
                .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
            else {
                break;
            };
            match &pivots[lead] {
                Some(pr) => {
                    for (x, y) in row.iter_mut().zip(pr) {
                        *x ^= y;
                    }
                }
                None => {
                    pivots[lead] = Some(row);
                    rank += 1;
                    break;
                }
            }
        }
    }
    gens - rank
}

/// What is known about the kernel's abelianization.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AbelianData {
    pub mod2_dimension: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariant_factors: Option<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum StructureVerdict {
    Trivial,
    ElementaryAbelian2 {
        rank: usize,
    },
    AbelianInvariantFactors {
        factors: Vec<u64>,
    },
    #[serde(rename_all = "camelCase")]
    Undetermined {
        order: u64,
        mod2_rank: usize,
        #[serde(skip_serializing_if = "Option::is_none")]
        invariant_factors: Option<Vec<u64>>,
        diagnostics: Vec<String>,
    },
}

impl StructureVerdict {
    pub fn is_definite(&self) -> bool {
        !matches!(self, StructureVerdict::Undetermined { .. })
    }

    /// Order of the group when the verdict fixes it.
    pub fn order(&self) -> Option<u64> {
        match self {
            StructureVerdict::Trivial => Some(1),
            StructureVerdict::ElementaryAbelian2 { rank } => 1u64.checked_shl(*rank as u32),
            StructureVerdict::AbelianInvariantFactors { factors } => {
                factors.iter().try_fold(1u64, |acc, &f| (f != 0).then(|| acc * f))
            }
            StructureVerdict::Undetermined { order, .. } => Some(*order),
        }
    }

    /// Canonical invariant factors of an abelian verdict.
    pub fn abelian_factors(&self) -> Option<Vec<u64>> {
        match self {
            StructureVerdict::Trivial => Some(Vec::new()),
            StructureVerdict::ElementaryAbelian2 { rank } => Some(vec![2; *rank]),
            StructureVerdict::AbelianInvariantFactors { factors } => Some(factors.clone()),
            StructureVerdict::Undetermined { .. } => None,
        }
    }
}

impl std::fmt::Display for StructureVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StructureVerdict::Trivial => write!(f, "trivial"),
            StructureVerdict::ElementaryAbelian2 { rank: 1 } => write!(f, "Z2"),
            StructureVerdict::ElementaryAbelian2 { rank } => write!(f, "Z2^{rank}"),
            StructureVerdict::AbelianInvariantFactors { factors } => {
                let parts: Vec<String> = factors
                    .iter()
                    .map(|&x| if x == 0 { "Z".to_string() } else { format!("Z{x}") })
                    .collect();
                write!(f, "{}", parts.join(" x "))
            }
            StructureVerdict::Undetermined { order, mod2_rank, .. } => {
                write!(f, "undetermined (order {order}, mod-2 rank {mod2_rank})")
            }
        }
    }
}

/// Decides the structure of a finite group of known order from its abelian
/// invariants. An order-`2^k` group with `k`-dimensional mod-2 abelianization
/// has trivial Frattini subgroup, hence is elementary abelian.
pub fn identify_structure(order: u64, ab: &AbelianData) -> StructureVerdict {
    let mut diagnostics = Vec::new();
    if order == 1 {
        return StructureVerdict::Trivial;
    }
    let two_power = order.is_power_of_two().then(|| order.trailing_zeros() as usize);
    if two_power == Some(ab.mod2_dimension) {
        return StructureVerdict::ElementaryAbelian2 {
            rank: ab.mod2_dimension,
        };
    }
    if ab.mod2_dimension as u32 >= u64::BITS || (1u64 << ab.mod2_dimension) > order {
        diagnostics.push(format!(
            "mod-2 dimension {} exceeds what a group of order {order} allows",
            ab.mod2_dimension
        ));
    }
    if let Some(factors) = &ab.invariant_factors {
        let product = factors
            .iter()
            .try_fold(1u64, |acc, &f| if f == 0 { None } else { acc.checked_mul(f) });
        match product {
            Some(p) if p == order => {
                if diagnostics.is_empty() {
                    return StructureVerdict::AbelianInvariantFactors {
                        factors: factors.clone(),
                    };
                }
            }
            Some(p) if p > order => diagnostics.push(format!(
                "abelianization of order {p} exceeds group order {order}"
            )),
            None => diagnostics.push("abelianization is infinite for a finite group".into()),
            _ => {}
        }
    }
    StructureVerdict::Undetermined {
        order,
        mod2_rank: ab.mod2_dimension,
        invariant_factors: ab.invariant_factors.clone(),
        diagnostics,
    }
}

/// Everything computed about the kernel along the enumeration route.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct KernelAnalysis {
    pub index: usize,
    pub schreier_generators: usize,
    pub rewritten_relators: usize,
    pub simplified_generators: usize,
    pub simplified_relators: usize,
    /// Order enumerated from the simplified subgroup presentation.
    pub enumerated_order: u64,
    pub abelian: AbelianData,
    pub verdict: StructureVerdict,
}

/// Kernel table, rewriting, simplification, enumeration of the result and
/// the structure verdict.
pub fn analyze_kernel(
    p: &GroupPresentation,
    a: &SymmetricAssignment,
    max_cosets: usize,
) -> Result<KernelAnalysis, KernelError> {
    let kt = kernel_coset_table(p, a)?;
    let rs = reidemeister_schreier(p, &kt.table)?;
    let simple = simplify(&rs.presentation, SimplifyOptions::default());
    let order = enumerate(&simple, &[], max_cosets)?.group_order()? as u64;
    let abelian = AbelianData {
        mod2_dimension: mod2_dimension(&simple),
        invariant_factors: (simple.generator_count() <= MAX_INTEGER_SNF_GENERATORS)
            .then(|| invariant_factors(&simple)),
    };
    let verdict = identify_structure(order, &abelian);
    Ok(KernelAnalysis {
        index: rs.index(),
        schreier_generators: rs.presentation.generator_count(),
        rewritten_relators: rs.rewritten_count,
        simplified_generators: simple.generator_count(),
        simplified_relators: simple.relators().len(),
        enumerated_order: order,
        abelian,
        verdict,
    })
}
