//! Independent oracles and seeded generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use galois_core::complex::{DegenerationComplex, Edge, Vertex};
use galois_core::coxquot::SemidirectElement;
use galois_core::datasets;
use galois_core::kernel::IntegerMatrix;
use galois_core::permgroup::Permutation;
use galois_core::presentation::{parse_relation, GroupPresentation, Word};
use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn pres(n: usize, lines: &[&str]) -> GroupPresentation {
    let names: Vec<String> = (1..=n).map(|k| format!("g{k}")).collect();
    let rels = lines
        .iter()
        .map(|l| parse_relation(l, &names).unwrap())
        .collect();
    GroupPresentation::new(names, rels).unwrap()
}

/// Point images of the permutation, by plain array arithmetic.
fn apply_word(images: &[Vec<usize>], w: &Word, x: usize) -> usize {
    let mut x = x;
    for l in w.letters() {
        let p = &images[l.gen];
        x = if l.inverse {
            p.iter().position(|&y| y == x).unwrap()
        } else {
            p[x]
        };
    }
    x
}

/// Elements of the group generated by `gens`, listed by closing the Cayley
/// graph under right multiplication.
pub fn cayley_elements(gens: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = gens[0].len();
    let id: Vec<usize> = (0..n).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([id.clone()]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q: Vec<usize> = p.iter().map(|&x| g[x]).collect();
            if seen.insert(q.clone()) {
                out.push(q.clone());
                queue.push_back(q);
            }
        }
    }
    out
}

/// Order of a group given both as a presentation and as a faithful
/// permutation representation; panics if the representation breaks a relator.
pub fn cayley_order(p: &GroupPresentation, images: &[Vec<usize>]) -> usize {
    let n = images[0].len();
    for r in p.relators() {
        for x in 0..n {
            assert_eq!(apply_word(images, r, x), x, "representation breaks a relator");
        }
    }
    cayley_elements(images).len()
}

/// Small presentations with faithful permutation representations: cyclic,
/// dihedral and symmetric groups up to S₄.
pub fn cayley_corpus() -> Vec<(String, GroupPresentation, Vec<Vec<usize>>)> {
    let mut out = Vec::new();
    for n in 1..=7usize {
        let power = vec!["g1"; n].join(" ");
        let cycle: Vec<usize> = (0..n).map(|x| (x + 1) % n).collect();
        out.push((
            format!("C{n}"),
            pres(1, &[&format!("word: {power}")]),
            vec![cycle],
        ));
    }
    for n in 3..=6usize {
        // reflections s, t with (st)ⁿ on the n-gon's vertices
        let s: Vec<usize> = (0..n).map(|x| (n - x) % n).collect();
        let t: Vec<usize> = (0..n).map(|x| (n + 1 - x) % n).collect();
        let st = vec!["g1 g2"; n].join(" ");
        out.push((
            format!("D{n}"),
            pres(2, &["sq 1", "sq 2", &format!("word: {st}")]),
            vec![s, t],
        ));
        // rotation r and reflection f: rⁿ, f², (rf)²
        let r: Vec<usize> = (0..n).map(|x| (x + 1) % n).collect();
        let rn = vec!["g1"; n].join(" ");
        out.push((
            format!("D{n}'"),
            pres(2, &[&format!("word: {rn}"), "sq 2", "word: g1 g2 g1 g2"]),
            vec![r, s_ref(n)],
        ));
    }
    out.push((
        "S3".into(),
        pres(2, &["sq 1", "sq 2", "word: g1 g2 g1 g2 g1 g2"]),
        vec![vec![1, 0, 2], vec![0, 2, 1]],
    ));
    out.push((
        "S4".into(),
        pres(
            3,
            &["sq 1", "sq 2", "sq 3", "triple 1 2", "triple 2 3", "comm 1 3"],
        ),
        vec![vec![1, 0, 2, 3], vec![0, 2, 1, 3], vec![0, 1, 3, 2]],
    ));
    out.push((
        "S4 (4-cycle, transposition)".into(),
        pres(
            2,
            &[
                "word: g1 g1 g1 g1",
                "sq 2",
                "word: g1 g2 g1 g2 g1 g2",
            ],
        ),
        vec![vec![1, 2, 3, 0], vec![1, 0, 2, 3]],
    ));
    out
}

fn s_ref(n: usize) -> Vec<usize> {
    (0..n).map(|x| (n - x) % n).collect()
}

fn det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0];
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i128>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, &x)| x).collect())
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * det(&minor)
        })
        .sum()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Smith invariants from determinantal divisors: `d_k` is the gcd of all
/// `k × k` minors and the `k`-th invariant is `d_k / d_{k−1}`.
pub fn snf_by_minors(m: &IntegerMatrix) -> Vec<u64> {
    let (r, c) = (m.rows(), m.cols());
    let size = r.min(c);
    let mut out = Vec::with_capacity(size);
    let mut prev: i128 = 1;
    for k in 1..=size {
        let mut g: i128 = 0;
        for rows in subsets(r, k) {
            for cols in subsets(c, k) {
                let minor: Vec<Vec<i128>> = rows
                    .iter()
                    .map(|&i| cols.iter().map(|&j| m.get(i, j) as i128).collect())
                    .collect();
                g = g.gcd(&det(&minor));
            }
        }
        if g == 0 {
            out.resize(size, 0);
            return out;
        }
        out.push((g / prev) as u64);
        prev = g;
    }
    out
}

pub fn random_matrix(rng: &mut ChaCha8Rng, max_dim: usize, bound: i64) -> IntegerMatrix {
    let r = rng.gen_range(1..=max_dim);
    let c = rng.gen_range(1..=max_dim);
    let rows: Vec<Vec<i64>> = (0..r)
        .map(|_| (0..c).map(|_| rng.gen_range(-bound..=bound)).collect())
        .collect();
    IntegerMatrix::from_rows(&rows)
}

/// A random product of elementary integer row operations.
pub fn random_unimodular(rng: &mut ChaCha8Rng, n: usize, steps: usize) -> IntegerMatrix {
    let mut u = IntegerMatrix::identity(n);
    if n < 2 {
        return u;
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        while j == i {
            j = rng.gen_range(0..n);
        }
        match rng.gen_range(0..3) {
            0 => {
                let q = rng.gen_range(-2..=2);
                for k in 0..n {
                    let v = u.get(i, k) + q * u.get(j, k);
                    u.set(i, k, v);
                }
            }
            1 => {
                for k in 0..n {
                    let (a, b) = (u.get(i, k), u.get(j, k));
                    u.set(i, k, b);
                    u.set(j, k, a);
                }
            }
            _ => {
                for k in 0..n {
                    let v = -u.get(i, k);
                    u.set(i, k, v);
                }
            }
        }
    }
    u
}

pub fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Permutation {
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    Permutation::from_images(v).unwrap()
}

pub fn random_sd(rng: &mut ChaCha8Rng, n: usize) -> SemidirectElement {
    let mut vec: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
    let s: i64 = vec.iter().sum();
    vec[n - 1] -= s;
    SemidirectElement {
        perm: random_perm(rng, n),
        vec,
    }
}

/// Degeneration of the octahedron: one plane per face, every vertex an
/// inner 4-point.
pub fn octahedron() -> DegenerationComplex {
    // vertices ±x, ±y, ±z as (axis, sign); faces as sign triples
    let face = |s: [usize; 3]| 1 + s[0] + 2 * s[1] + 4 * s[2];
    let mut edges = Vec::new();
    let mut id = 0;
    let mut edge_of = std::collections::BTreeMap::new();
    for a in 0..3 {
        for b in a + 1..3 {
            let c = 3 - a - b;
            for sa in 0..2 {
                for sb in 0..2 {
                    let planes: Vec<usize> = (0..2)
                        .map(|sc| {
                            let mut s = [0; 3];
                            s[a] = sa;
                            s[b] = sb;
                            s[c] = sc;
                            face(s)
                        })
                        .collect();
                    id += 1;
                    edges.push(Edge {
                        id,
                        planes: [planes[0], planes[1]],
                    });
                    edge_of.insert(((a, sa), (b, sb)), id);
                }
            }
        }
    }
    let mut vertices = Vec::new();
    for axis in 0..3 {
        for sign in 0..2 {
            let ids: Vec<usize> = edge_of
                .iter()
                .filter(|(&(u, v), _)| u == (axis, sign) || v == (axis, sign))
                .map(|(_, &e)| e)
                .collect();
            vertices.push(Vertex {
                id: vertices.len() + 1,
                edges: ids,
            });
        }
    }
    DegenerationComplex::new("octahedron", 8, edges, vertices, None).unwrap()
}

pub fn corpus() -> Vec<DegenerationComplex> {
    vec![datasets::t4(), datasets::dt4().with_overrides(None), octahedron()]
}

/// Renames planes, edges and vertices at random and shuffles every list.
pub fn relabel(rng: &mut ChaCha8Rng, c: &DegenerationComplex) -> DegenerationComplex {
    let planes = random_perm(rng, c.plane_count());
    let mut edge_ids: Vec<usize> = (1..=c.edges().len()).collect();
    edge_ids.shuffle(rng);
    let mut vertex_ids: Vec<usize> = (1..=4 * c.vertices().len()).collect();
    vertex_ids.shuffle(rng);
    let new_edge = |id: usize| {
        let k = c.edges().iter().position(|e| e.id == id).unwrap();
        edge_ids[k]
    };
    let mut edges: Vec<Edge> = c
        .edges()
        .iter()
        .map(|e| {
            let mut p = [planes.apply(e.planes[0] - 1) + 1, planes.apply(e.planes[1] - 1) + 1];
            if rng.gen_bool(0.5) {
                p.swap(0, 1);
            }
            Edge {
                id: new_edge(e.id),
                planes: p,
            }
        })
        .collect();
    edges.shuffle(rng);
    let mut vertices: Vec<Vertex> = c
        .vertices()
        .iter()
        .enumerate()
        .map(|(k, v)| {
            let mut ids: Vec<usize> = v.edges.iter().map(|&e| new_edge(e)).collect();
            ids.shuffle(rng);
            Vertex {
                id: vertex_ids[k],
                edges: ids,
            }
        })
        .collect();
    vertices.shuffle(rng);
    DegenerationComplex::new(c.name(), c.plane_count(), edges, vertices, None).unwrap()
}

/// Edge pairs whose sets of incident vertices are disjoint, computed from the
/// incidence lists directly.
pub fn disjoint_pairs_oracle(c: &DegenerationComplex) -> BTreeSet<(usize, usize)> {
    let incident = |id: usize| -> BTreeSet<usize> {
        c.vertices()
            .iter()
            .filter(|v| v.edges.contains(&id))
            .map(|v| v.id)
            .collect()
    };
    let mut out = BTreeSet::new();
    for a in c.edges() {
        for b in c.edges() {
            if a.id < b.id && incident(a.id).is_disjoint(&incident(b.id)) {
                out.insert((a.id, b.id));
            }
        }
    }
    out
}
