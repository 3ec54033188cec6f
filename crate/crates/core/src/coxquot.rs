//! The Coxeter-quotient route: `Sₙ ⋉ A` with `A` the root lattice
//! `{v ∈ Zⁿ : Σv = 0}`, `u_{i,j} = e_i − e_j`.
//!
//! An element `(σ, v)` stands for `σ·u_v`. Products are read left to right
//! like permutations, and moving a lattice element past a permutation
//! relabels it: `σ⁻¹·u_{i,j}·σ = u_{σ(i),σ(j)}`. Hence
//! `(σ, v)(τ, w) = (στ, τ·v + w)` where `(τ·v)_{τ(i)} = v_i`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kernel::{identify_structure, smith_normal_form, AbelianData, IntegerMatrix, StructureVerdict};
use crate::permgroup::Permutation;
use crate::presentation::{parse_definition, GroupPresentation, PresentationError, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoxeterError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph has {0} independent cycles; only one is supported")]
    UnsupportedBetti(usize),
    #[error("edge {generator} has endpoint outside 1..={vertices}")]
    BadEndpoint { generator: String, vertices: usize },
    #[error("edge {0} is a loop")]
    Loop(String),
    #[error("`{0}` is not an edge lying on the cycle")]
    BadNonTreeEdge(String),
    #[error("generator `{0}` has no image")]
    Unassigned(String),
    #[error("projective relator has non-identity permutation part {0}")]
    NonIdentityPermutation(String),
    #[error("vector has {got} coordinates, expected {expected}")]
    BadVector { got: usize, expected: usize },
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SemidirectElement {
    pub perm: Permutation,
    /// Coordinates in the `e_i` basis; they sum to zero.
    pub vec: Vec<i64>,
}

impl SemidirectElement {
    pub fn identity(n: usize) -> Self {
        Self {
            perm: Permutation::identity(n),
            vec: vec![0; n],
        }
    }

    pub fn from_perm(perm: Permutation) -> Self {
        let n = perm.degree();
        Self { perm, vec: vec![0; n] }
    }

    /// `u_{i,j}` for 1-based `i`, `j`.
    pub fn u(n: usize, i: usize, j: usize) -> Self {
        Self {
            perm: Permutation::identity(n),
            vec: u_vector(n, i, j),
        }
    }

    pub fn degree(&self) -> usize {
        self.perm.degree()
    }

    pub fn multiply(&self, other: &Self) -> Result<Self, CoxeterError> {
        if self.degree() != other.degree() {
            return Err(CoxeterError::DegreeMismatch(self.degree(), other.degree()));
        }
        let mut vec = other.vec.clone();
        for (i, &x) in self.vec.iter().enumerate() {
            vec[other.perm.apply(i)] += x;
        }
        Ok(Self {
            perm: self.perm.compose(&other.perm),
            vec,
        })
    }

    pub fn inverse(&self) -> Self {
        let inv = self.perm.inverse();
        let mut vec = vec![0; self.degree()];
        for (i, &x) in self.vec.iter().enumerate() {
            vec[inv.apply(i)] = -x;
        }
        Self { perm: inv, vec }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.is_identity() && self.vec.iter().all(|&x| x == 0)
    }

    /// The lattice part in the basis `u_{1,2}, u_{2,3}, …, u_{n−1,n}`.
    pub fn u_coordinates(&self) -> Vec<i64> {
        to_u_basis(&self.vec)
    }
}

impl fmt::Display for SemidirectElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lattice = format_lattice(&self.vec);
        match (self.perm.is_identity(), lattice.is_empty()) {
            (true, true) => write!(f, "()"),
            (true, false) => write!(f, "{lattice}"),
            (false, true) => write!(f, "{}", self.perm),
            (false, false) => write!(f, "{}·{lattice}", self.perm),
        }
    }
}

impl fmt::Debug for SemidirectElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SemidirectElement({self}, {:?})", self.vec)
    }
}

pub fn sd_multiply(x: &SemidirectElement, y: &SemidirectElement) -> Result<SemidirectElement, CoxeterError> {
    x.multiply(y)
}

pub fn sd_inverse(x: &SemidirectElement) -> SemidirectElement {
    x.inverse()
}

/// `e_i − e_j` for 1-based `i`, `j`.
pub fn u_vector(n: usize, i: usize, j: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i - 1] += 1;
    v[j - 1] -= 1;
    v
}

/// Sum-zero `e`-coordinates to `u_{k,k+1}` coordinates: `c_k = v_1 + … + v_k`.
pub fn to_u_basis(v: &[i64]) -> Vec<i64> {
    let mut acc = 0;
    v.iter()
        .take(v.len().saturating_sub(1))
        .map(|&x| {
            acc += x;
            acc
        })
        .collect()
}

/// Inverse of [`to_u_basis`].
pub fn from_u_basis(c: &[i64]) -> Vec<i64> {
    let n = c.len() + 1;
    (0..n)
        .map(|k| {
            let here = c.get(k).copied().unwrap_or(0);
            let before = if k == 0 { 0 } else { c[k - 1] };
            here - before
        })
        .collect()
}

/// A single root `e_i − e_j` prints as `u{i},{j}` (or its inverse), anything
/// else as a combination of `u_{k,k+1}`.
fn format_lattice(v: &[i64]) -> String {
    let plus = v.iter().position(|&x| x == 1);
    let minus = v.iter().position(|&x| x == -1);
    let others = v.iter().filter(|&&x| x != 0).count();
    if let (Some(i), Some(j), 2) = (plus, minus, others) {
        return if i < j {
            format!("u{},{}", i + 1, j + 1)
        } else {
            format!("u{},{}^-1", j + 1, i + 1)
        };
    }
    format_u_basis(&to_u_basis(v))
}

fn format_u_basis(c: &[i64]) -> String {
    let mut out = String::new();
    for (k, &x) in c.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let sign = if x < 0 { "-" } else if out.is_empty() { "" } else { "+" };
        let mag = x.unsigned_abs();
        let coeff = if mag == 1 { String::new() } else { mag.to_string() };
        out.push_str(&format!("{sign}{coeff}u{},{}", k + 1, k + 2));
    }
    out
}

/// One edge of the Coxeter graph in a data file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoxeterEdgeData {
    pub generator: String,
    pub ends: [usize; 2],
}

/// Coxeter-route data attached to a complex: the graph, its non-tree edge, and
/// definitions of the generators that are not graph edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CoxeterRouteData {
    #[serde(default)]
    pub eliminations: Vec<String>,
    pub vertices: usize,
    pub edges: Vec<CoxeterEdgeData>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub non_tree: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterGraph {
    vertices: usize,
    edges: Vec<CoxeterEdgeData>,
    non_tree: Option<usize>,
}

impl CoxeterGraph {
    /// Checks connectivity and endpoints. When `non_tree` is given it must
    /// name an edge whose removal keeps the graph connected.
    pub fn new(vertices: usize, edges: Vec<CoxeterEdgeData>, non_tree: Option<&str>) -> Result<Self, CoxeterError> {
        for e in &edges {
            if e.ends.iter().any(|&v| v == 0 || v > vertices) {
                return Err(CoxeterError::BadEndpoint {
                    generator: e.generator.clone(),
                    vertices,
                });
            }
            if e.ends[0] == e.ends[1] {
                return Err(CoxeterError::Loop(e.generator.clone()));
            }
        }
        if components(vertices, &edges, None) != 1 {
            return Err(CoxeterError::Disconnected);
        }
        let non_tree = match non_tree {
            None => None,
            Some(name) => {
                let k = edges
                    .iter()
                    .position(|e| e.generator == name)
                    .ok_or_else(|| CoxeterError::BadNonTreeEdge(name.to_string()))?;
                if components(vertices, &edges, Some(k)) != 1 {
                    return Err(CoxeterError::BadNonTreeEdge(name.to_string()));
                }
                Some(k)
            }
        };
        Ok(Self {
            vertices,
            edges,
            non_tree,
        })
    }

    pub fn from_data(d: &CoxeterRouteData) -> Result<Self, CoxeterError> {
        Self::new(d.vertices, d.edges.clone(), d.non_tree.as_deref())
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[CoxeterEdgeData] {
        &self.edges
    }

    /// First Betti number `E − V + 1` of the connected graph.
    pub fn betti(&self) -> usize {
        self.edges.len() + 1 - self.vertices
    }

    /// Tree edges map to the transposition of their ends, the non-tree edge
    /// `(i, j)` to `(i j)·u_{i,j}`. Without an explicit choice the last edge
    /// lying on the cycle is taken.
    pub fn standard_assignment(&self) -> Result<Vec<(String, SemidirectElement)>, CoxeterError> {
        let t = self.betti();
        if t != 1 {
            return Err(CoxeterError::UnsupportedBetti(t));
        }
        let n = self.vertices;
        let non_tree = match self.non_tree {
            Some(k) => k,
            None => (0..self.edges.len())
                .rev()
                .find(|&k| components(n, &self.edges, Some(k)) == 1)
                .expect("a graph with one cycle has a cycle edge"),
        };
        Ok(self
            .edges
            .iter()
            .enumerate()
            .map(|(k, e)| {
                let [i, j] = e.ends;
                let perm = Permutation::transposition(n, i, j);
                let vec = if k == non_tree { u_vector(n, i, j) } else { vec![0; n] };
                (e.generator.clone(), SemidirectElement { perm, vec })
            })
            .collect())
    }
}

fn components(n: usize, edges: &[CoxeterEdgeData], skip: Option<usize>) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let mut count = n;
    for (k, e) in edges.iter().enumerate() {
        if Some(k) == skip {
            continue;
        }
        let (a, b) = (find(&mut parent, e.ends[0] - 1), find(&mut parent, e.ends[1] - 1));
        if a != b {
            parent[a] = b;
            count -= 1;
        }
    }
    count
}

/// Images of generators, by generator index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterAssignment {
    pub degree: usize,
    pub images: Vec<Option<SemidirectElement>>,
}

impl CoxeterAssignment {
    pub fn get(&self, gen: usize) -> Option<&SemidirectElement> {
        self.images.get(gen).and_then(Option::as_ref)
    }
}

/// Left-to-right product of the images of the letters of `w`.
pub fn eval_word(a: &CoxeterAssignment, w: &Word, names: &[String]) -> Result<SemidirectElement, CoxeterError> {
    let mut acc = SemidirectElement::identity(a.degree);
    for l in w.letters() {
        let x = a.get(l.gen).ok_or_else(|| {
            CoxeterError::Unassigned(names.get(l.gen).cloned().unwrap_or_else(|| format!("#{}", l.gen)))
        })?;
        acc = if l.inverse {
            acc.multiply(&x.inverse())?
        } else {
            acc.multiply(x)?
        };
    }
    Ok(acc)
}

/// The standard assignment on the graph edges, extended through the
/// definitions `gK = W`, in order.
pub fn extend_assignment(
    p: &GroupPresentation,
    data: &CoxeterRouteData,
) -> Result<CoxeterAssignment, CoxeterError> {
    let graph = CoxeterGraph::from_data(data)?;
    let names = p.generator_names();
    let mut a = CoxeterAssignment {
        degree: graph.vertices(),
        images: vec![None; names.len()],
    };
    for (name, x) in graph.standard_assignment()? {
        let g = p
            .generator_index(&name)
            .ok_or_else(|| PresentationError::UnknownGenerator(name.clone()))?;
        a.images[g] = Some(x);
    }
    for line in &data.eliminations {
        let (g, w) = parse_definition(line, names)?;
        a.images[g] = Some(eval_word(&a, &w, names)?);
    }
    if let Some(g) = a.images.iter().position(Option::is_none) {
        return Err(CoxeterError::Unassigned(names[g].clone()));
    }
    Ok(a)
}

/// `Z^{n−1}/L` for the lattice `L` spanned by the `Sₙ`-orbit of a vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LatticeQuotient {
    /// Smith invariants, `n − 1` of them, zeros for free directions.
    pub invariants: Vec<u64>,
    pub orbit_size: usize,
    /// `None` when the quotient is infinite.
    pub order: Option<u64>,
    pub verdict: Option<StructureVerdict>,
}

/// Quotient of the root lattice by the orbit of `proj` (given in the
/// `u_{k,k+1}` basis) under all coordinate permutations.
pub fn lattice_quotient(proj: &[i64], n: usize) -> Result<LatticeQuotient, CoxeterError> {
    if proj.len() + 1 != n {
        return Err(CoxeterError::BadVector {
            got: proj.len(),
            expected: n.saturating_sub(1),
        });
    }
    let start = from_u_basis(proj);
    let mut seen: HashSet<Vec<i64>> = HashSet::from([start.clone()]);
    let mut orbit = vec![start.clone()];
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for k in 0..n.saturating_sub(1) {
            let mut w = v.clone();
            w.swap(k, k + 1);
            if seen.insert(w.clone()) {
                orbit.push(w.clone());
                queue.push_back(w);
            }
        }
    }
    let rows: Vec<Vec<i64>> = orbit.iter().map(|v| to_u_basis(v)).collect();
    let mut invariants = smith_normal_form(&IntegerMatrix::from_rows(&rows));
    invariants.resize(n - 1, 0);
    let order = invariants
        .iter()
        .try_fold(1u64, |acc, &d| if d == 0 { None } else { acc.checked_mul(d) });
    let verdict = order.map(|o| {
        let factors: Vec<u64> = invariants.iter().copied().filter(|&d| d != 1).collect();
        identify_structure(
            o,
            &AbelianData {
                mod2_dimension: factors.iter().filter(|&&d| d % 2 == 0).count(),
                invariant_factors: Some(factors),
            },
        )
    });
    Ok(LatticeQuotient {
        invariants,
        orbit_size: orbit.len(),
        order,
        verdict,
    })
}

/// Quotient by the normal closure of a lattice element; the element must
/// have trivial permutation part.
pub fn lattice_quotient_of(x: &SemidirectElement) -> Result<LatticeQuotient, CoxeterError> {
    if !x.perm.is_identity() {
        return Err(CoxeterError::NonIdentityPermutation(x.perm.to_string()));
    }
    lattice_quotient(&x.u_coordinates(), x.degree())
}

/// Result of the Coxeter-quotient route on one presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterRoute {
    pub assignment: CoxeterAssignment,
    /// Names and images of every generator.
    pub images: Vec<(String, SemidirectElement)>,
    /// Indices of relators (other than the projective one) not mapped to the identity.
    pub failed_relators: Vec<usize>,
    pub projective: SemidirectElement,
    pub quotient: LatticeQuotient,
}

/// Evaluates every relator of `p` under the extended standard assignment and
/// quotients the lattice by the image of `projective`.
pub fn coxeter_route(
    p: &GroupPresentation,
    projective: &Word,
    data: &CoxeterRouteData,
) -> Result<CoxeterRoute, CoxeterError> {
    let names = p.generator_names();
    let assignment = extend_assignment(p, data)?;
    let proj_key = projective.relator_key();
    let mut failed = Vec::new();
    for (k, r) in p.relators().iter().enumerate() {
        if r.relator_key() == proj_key {
            continue;
        }
        if !eval_word(&assignment, r, names)?.is_identity() {
            failed.push(k);
        }
    }
    let projective = eval_word(&assignment, projective, names)?;
    let quotient = lattice_quotient_of(&projective)?;
    let images = names
        .iter()
        .cloned()
        .zip(assignment.images.iter().map(|x| x.clone().expect("all assigned")))
        .collect();
    Ok(CoxeterRoute {
        assignment,
        images,
        failed_relators: failed,
        projective,
        quotient,
    })
}

/// Named images keyed by generator name.
pub fn images_by_name(route: &CoxeterRoute) -> HashMap<String, SemidirectElement> {
    route.images.iter().cloned().collect()
}
