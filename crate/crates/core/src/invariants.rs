//! Singularity counts of the branch curve and the Chern numbers and signature
//! of the Galois cover.

use num_rational::Ratio;
use serde::Serialize;

use crate::complex::{ComplexError, DegenerationComplex, VertexClass};

/// Largest degree accepted by [`chern_numbers`]; `n!` must fit comfortably.
pub const MAX_DEGREE: usize = 20;

pub const COUNTING_RULE_NOTE: &str =
    "singularity counting rules are validated for inner 3-points and inner 4-points only";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InvariantCounts {
    /// Degree of the projection (number of planes).
    pub n: u64,
    /// Degree of the branch curve.
    pub m: u64,
    /// Branch points.
    pub mu: u64,
    /// Nodes.
    pub d: u64,
    /// Cusps.
    pub rho: u64,
}

/// Counts from the vertex classes: each line contributes two branch points
/// and two to the degree; an inner 3-point adds one branch point and six
/// cusps; an inner 4-point adds four nodes and twelve cusps; every parasitic
/// pair adds four nodes.
pub fn singularity_counts(c: &DegenerationComplex) -> Result<InvariantCounts, ComplexError> {
    let classes = c.classify_all()?;
    let three = classes
        .iter()
        .filter(|(_, k)| matches!(k, VertexClass::Inner3 { .. }))
        .count() as u64;
    let four = classes.len() as u64 - three;
    let e = c.edges().len() as u64;
    let parasitic = c.parasitic_pairs().len() as u64;
    Ok(InvariantCounts {
        n: c.plane_count() as u64,
        m: 2 * e,
        mu: 2 * e + three,
        d: 4 * parasitic + 4 * four,
        rho: 6 * three + 12 * four,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChernSignature {
    pub c1sq: Ratio<i128>,
    pub c2: Ratio<i128>,
    pub chi: Ratio<i128>,
}

impl ChernSignature {
    /// True when all three values are integers.
    pub fn is_integral(&self) -> bool {
        self.c1sq.is_integer() && self.c2.is_integer() && self.chi.is_integer()
    }
}

fn factorial(n: u64) -> i128 {
    (1..=n as i128).product()
}

/// `c₁² = n!/4·(m−6)²` and `c₂ = n!·(3 − m + d/4 + μ/2 + ρ/6)`, exactly.
pub fn chern_numbers(k: &InvariantCounts) -> (Ratio<i128>, Ratio<i128>) {
    assert!(k.n as usize <= MAX_DEGREE, "degree {} too large", k.n);
    let nf = Ratio::from_integer(factorial(k.n));
    let m = k.m as i128;
    let c1sq = nf / 4 * Ratio::from_integer((m - 6) * (m - 6));
    let r = |x: u64, q: i128| Ratio::new(x as i128, q);
    let c2 = nf * (Ratio::from_integer(3 - m) + r(k.d, 4) + r(k.mu, 2) + r(k.rho, 6));
    (c1sq, c2)
}

/// `χ = (c₁² − 2c₂)/3`.
pub fn signature(c1sq: Ratio<i128>, c2: Ratio<i128>) -> Ratio<i128> {
    (c1sq - c2 * 2) / 3
}

pub fn chern_signature(k: &InvariantCounts) -> ChernSignature {
    let (c1sq, c2) = chern_numbers(k);
    ChernSignature {
        c1sq,
        c2,
        chi: signature(c1sq, c2),
    }
}
