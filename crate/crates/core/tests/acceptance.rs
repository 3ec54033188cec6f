//! End-to-end checks on the two bundled complexes plus the seeded oracle
//! suites. Every test prints one `PASS`/`FAIL` line before asserting.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use galois_core::complex::DegenerationComplex;
use galois_core::coxquot::{coxeter_route, eval_word, CoxeterRoute, SemidirectElement};
use galois_core::datasets;
use galois_core::enumeration::{enumerate, group_order, DEFAULT_MAX_COSETS};
use galois_core::invariants::{chern_signature, singularity_counts, InvariantCounts};
use galois_core::kernel::{
    analyze_kernel, kernel_coset_table, reidemeister_schreier, smith_normal_form, KernelAnalysis,
};
use galois_core::permgroup::{permutation_group_order, plane_transposition_map, verify_homomorphism, Permutation};
use galois_core::presentation::{
    build_tilde_presentation, eliminate_generator, parse_definition, parse_relation, GroupPresentation,
};
use galois_core::{analyze_complex, AnalysisOptions, Route, StructureVerdict};
use num_rational::Ratio;
use rand::Rng;

fn report(criterion: u32, label: &str, outcome: Result<(), String>) {
    match &outcome {
        Ok(()) => println!("criterion {criterion} PASS  {label}"),
        Err(why) => println!("criterion {criterion} FAIL  {label}: {why}"),
    }
    if let Err(why) = outcome {
        panic!("criterion {criterion} failed: {why}");
    }
}

fn check(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    check(elapsed < limit, || format!("took {elapsed:?}, limit {limit:?}"))
}

fn exact(n: i128) -> Ratio<i128> {
    Ratio::from_integer(n)
}

fn kernel_of(c: &DegenerationComplex) -> Result<(GroupPresentation, usize, KernelAnalysis), String> {
    let p = build_tilde_presentation(c).map_err(|e| e.to_string())?;
    let order = group_order(&p, DEFAULT_MAX_COSETS).map_err(|e| e.to_string())?;
    let a = plane_transposition_map(c);
    let k = analyze_kernel(&p, &a, DEFAULT_MAX_COSETS).map_err(|e| e.to_string())?;
    Ok((p, order, k))
}

fn dt4_coxeter() -> Result<CoxeterRoute, String> {
    let c = datasets::dt4();
    let p = build_tilde_presentation(&c).map_err(|e| e.to_string())?;
    let o = c.overrides().ok_or("no overrides")?;
    let proj = parse_relation(o.projective_relator.as_deref().ok_or("no projective relator")?, p.generator_names())
        .map_err(|e| e.to_string())?;
    let data = o.coxeter.as_ref().ok_or("no coxeter data")?;
    coxeter_route(&p, &proj, data).map_err(|e| e.to_string())
}

fn perm(n: usize, cycles: &[&[usize]]) -> Permutation {
    Permutation::from_cycles(n, cycles).unwrap()
}

/// `σ · u_{i,j}^{±1}` on six points.
fn sd(cycles: &[&[usize]], u: Option<(usize, usize, bool)>) -> SemidirectElement {
    let p = SemidirectElement::from_perm(perm(6, cycles));
    match u {
        None => p,
        Some((i, j, inverse)) => {
            let v = SemidirectElement::u(6, i, j);
            let v = if inverse { v.inverse() } else { v };
            p.multiply(&v).unwrap()
        }
    }
}

#[test]
fn criterion_1_tetrahedron_group() {
    let run = || -> Result<(), String> {
        let start = Instant::now();
        let c = datasets::t4();
        let (p, order, k) = kernel_of(&c)?;
        let a = plane_transposition_map(&c);
        let hom = verify_homomorphism(&p, &a);
        let image = permutation_group_order(a.degree, &a.images);
        let elapsed = start.elapsed();
        check(order == 24, || format!("|G| = {order}"))?;
        check(hom.holds, || format!("relators {:?} fail under the map", hom.failures))?;
        check(image == 24, || format!("image order {image}"))?;
        check(k.enumerated_order == 1, || format!("kernel order {}", k.enumerated_order))?;
        check(k.verdict == StructureVerdict::Trivial, || format!("verdict {}", k.verdict))?;
        within(elapsed, Duration::from_secs(1))
    };
    report(1, "tetrahedron: |G| = 24, onto S4, trivial kernel", run());
}

#[test]
fn criterion_2_tetrahedron_invariants() {
    let run = || -> Result<(), String> {
        let k = singularity_counts(&datasets::t4()).map_err(|e| e.to_string())?;
        let want = InvariantCounts { n: 4, m: 12, mu: 16, d: 12, rho: 24 };
        check(k == want, || format!("counts {k:?}"))?;
        let s = chern_signature(&k);
        check(
            (s.c1sq, s.c2, s.chi) == (exact(216), exact(144), exact(-24)),
            || format!("c1^2 = {}, c2 = {}, chi = {}", s.c1sq, s.c2, s.chi),
        )
    };
    report(2, "tetrahedron: counts (4,12,16,12,24), c1^2 = 216, c2 = 144, chi = -24", run());
}

#[test]
fn criterion_3_double_tetrahedron_enumeration() {
    let run = || -> Result<(), String> {
        let start = Instant::now();
        let (p, order, k) = kernel_of(&datasets::dt4())?;
        let elapsed = start.elapsed();
        check(p.generator_count() == 9, || format!("{} generators", p.generator_count()))?;
        check(order == 11520, || format!("|G| = {order}"))?;
        check(k.enumerated_order == 16, || format!("kernel order {}", k.enumerated_order))?;
        check(k.abelian.mod2_dimension == 4, || format!("mod-2 rank {}", k.abelian.mod2_dimension))?;
        check(
            k.verdict == StructureVerdict::ElementaryAbelian2 { rank: 4 },
            || format!("verdict {}", k.verdict),
        )?;
        within(elapsed, Duration::from_secs(60))
    };
    report(3, "double tetrahedron: |G| = 11520, kernel Z2^4", run());
}

#[test]
fn criterion_4_tietze_cross_check() {
    let run = || -> Result<(), String> {
        let c = datasets::dt4();
        let mut p = build_tilde_presentation(&c).map_err(|e| e.to_string())?;
        let original = p.generator_names().to_vec();
        let table = enumerate(&p, &[], DEFAULT_MAX_COSETS).map_err(|e| e.to_string())?;
        let defining = |g: usize, w: &galois_core::Word| galois_core::Word::gens(&[g]).concat(&w.inverse());
        for line in ["eq: g7 = g1 g4 g1", "eq: g3 = g5 g9 g5", "eq: g6 = g9 g8 g1 g8 g9"] {
            // the full table is indexed by the original generators
            let (g0, w0) = parse_definition(line, &original).map_err(|e| e.to_string())?;
            let holds = table.is_identity(&defining(g0, &w0)).map_err(|e| e.to_string())?;
            check(holds, || format!("`{line}` does not hold in the group"))?;
            let (g, w) = parse_definition(line, p.generator_names()).map_err(|e| e.to_string())?;
            p.add_relator(defining(g, &w)).map_err(|e| e.to_string())?;
            p = eliminate_generator(&p, g, &w).map_err(|e| e.to_string())?;
        }
        let names: Vec<&str> = p.generator_names().iter().map(String::as_str).collect();
        check(names == ["g1", "g2", "g4", "g5", "g8", "g9"], || format!("generators {names:?}"))?;
        let order = group_order(&p, DEFAULT_MAX_COSETS).map_err(|e| e.to_string())?;
        check(order == 11520, || format!("|G| = {order} after elimination"))
    };
    report(4, "eliminating g7, g3, g6 keeps |G| = 11520", run());
}

#[test]
fn criterion_5_double_tetrahedron_invariants() {
    let run = || -> Result<(), String> {
        let k = singularity_counts(&datasets::dt4()).map_err(|e| e.to_string())?;
        let want = InvariantCounts { n: 6, m: 18, mu: 20, d: 60, rho: 48 };
        check(k == want, || format!("counts {k:?}"))?;
        let s = chern_signature(&k);
        check(
            (s.c1sq, s.c2, s.chi) == (exact(25920), exact(12960), exact(0)),
            || format!("c1^2 = {}, c2 = {}, chi = {}", s.c1sq, s.c2, s.chi),
        )
    };
    report(5, "double tetrahedron: counts (6,18,20,60,48), c1^2 = 25920, c2 = 12960, chi = 0", run());
}

#[test]
fn criterion_6_coxeter_route() {
    let run = || -> Result<(), String> {
        let start = Instant::now();
        let route = dt4_coxeter()?;
        let p = build_tilde_presentation(&datasets::dt4()).map_err(|e| e.to_string())?;
        let names = p.generator_names();
        let image = |line: &str| -> Result<SemidirectElement, String> {
            let w = parse_relation(line, names).map_err(|e| e.to_string())?;
            eval_word(&route.assignment, &w, names).map_err(|e| e.to_string())
        };
        let expected = [
            ("word: g1", sd(&[&[3, 4]], None)),
            ("word: g2", sd(&[&[5, 6]], None)),
            ("word: g4", sd(&[&[4, 5]], None)),
            ("word: g5", sd(&[&[1, 6]], Some((1, 6, false)))),
            ("word: g8", sd(&[&[2, 3]], None)),
            ("word: g9", sd(&[&[1, 2]], None)),
            ("word: g3", sd(&[&[2, 6]], Some((2, 6, false)))),
            ("word: g6", sd(&[&[1, 4]], None)),
            ("word: g7", sd(&[&[3, 5]], None)),
            ("word: g3 g8 g7 g8 g3", sd(&[&[5, 6]], Some((5, 6, false)))),
            ("word: g6 g5 g2 g4 g2 g5 g6", sd(&[&[1, 4]], Some((1, 4, true)))),
            ("word: g8 g7 g2 g3 g2 g7 g8", sd(&[&[2, 3]], Some((2, 3, true)))),
        ];
        for (line, want) in &expected {
            let got = image(line)?;
            check(&got == want, || format!("{line} evaluates to {got}, expected {want}"))?;
        }
        check(route.failed_relators.is_empty(), || {
            format!("relators {:?} fail under the assignment", route.failed_relators)
        })?;
        let proj = &route.projective;
        check(proj.perm.is_identity(), || format!("projective permutation {}", proj.perm))?;
        check(proj.u_coordinates() == [1, 2, 1, 0, -1], || format!("projective vector {proj}"))?;
        let q = &route.quotient;
        check(q.invariants == [1, 2, 2, 2, 2], || format!("invariants {:?}", q.invariants))?;
        check(q.order == Some(16), || format!("quotient order {:?}", q.order))?;
        check(
            q.verdict == Some(StructureVerdict::ElementaryAbelian2 { rank: 4 }),
            || format!("verdict {:?}", q.verdict),
        )?;
        within(start.elapsed(), Duration::from_secs(1))
    };
    report(6, "Coxeter route: images, projective vector, lattice quotient Z2^4", run());
}

#[test]
fn criterion_7_route_agreement() {
    let run = || -> Result<(), String> {
        let (_, _, k) = kernel_of(&datasets::dt4())?;
        let route = dt4_coxeter()?;
        check(Some(k.enumerated_order) == route.quotient.order, || {
            format!("kernel order {} vs quotient order {:?}", k.enumerated_order, route.quotient.order)
        })?;
        check(Some(&k.verdict) == route.quotient.verdict.as_ref(), || {
            format!("kernel {} vs quotient {:?}", k.verdict, route.quotient.verdict)
        })?;
        let opts = AnalysisOptions {
            route: Route::Both,
            ..Default::default()
        };
        let r = analyze_complex(&datasets::dt4(), &opts).map_err(|e| e.to_string())?;
        check(r.routes_agree == Some(true), || format!("report says routes agree = {:?}", r.routes_agree))
    };
    report(7, "enumeration kernel and Coxeter quotient agree on the double tetrahedron", run());
}

fn cayley_suite() -> Result<(), String> {
    for (name, p, images) in common::cayley_corpus() {
        let want = common::cayley_order(&p, &images);
        let table = enumerate(&p, &[], 10_000).map_err(|e| format!("{name}: {e}"))?;
        check(table.coset_count() == want, || format!("{name}: {} cosets, Cayley graph has {want}", table.coset_count()))?;
        check(table.verify(p.relators()), || format!("{name}: table breaks a relator"))?;
        // the regular action found by enumeration generates a group of the same size
        let regular: Vec<Vec<usize>> = table
            .generator_permutations()
            .iter()
            .map(|g| g.images().to_vec())
            .collect();
        let closure = common::cayley_elements(&regular).len();
        check(closure == want, || format!("{name}: regular action closes to {closure}"))?;
    }
    Ok(())
}

fn snf_suite() -> Result<(), String> {
    let mut rng = common::rng(0x5EED_0001);
    for k in 0..200 {
        let m = common::random_matrix(&mut rng, 5, 3);
        let got = smith_normal_form(&m);
        let want = common::snf_by_minors(&m);
        check(got == want, || format!("matrix {k}: {got:?} vs minors {want:?}"))?;
    }
    Ok(())
}

fn schreier_count_suite() -> Result<(), String> {
    let mut cases: Vec<(String, GroupPresentation, Vec<galois_core::Word>)> = Vec::new();
    for (name, p, _) in common::cayley_corpus() {
        for g in 0..p.generator_count() {
            cases.push((format!("{name} over <g{}>", g + 1), p.clone(), vec![galois_core::Word::gens(&[g])]));
        }
        cases.push((format!("{name} over 1"), p, vec![]));
    }
    for (name, p, sub) in cases {
        let t = enumerate(&p, &sub, 10_000).map_err(|e| format!("{name}: {e}"))?;
        let rs = reidemeister_schreier(&p, &t).map_err(|e| format!("{name}: {e}"))?;
        let (index, gens) = (t.coset_count(), p.generator_count());
        let want = index * gens - (index - 1);
        let got = rs.presentation.generator_count();
        check(got == want, || format!("{name}: {got} Schreier generators, expected {want}"))?;
    }
    let c = datasets::t4();
    let p = build_tilde_presentation(&c).map_err(|e| e.to_string())?;
    let kt = kernel_coset_table(&p, &plane_transposition_map(&c)).map_err(|e| e.to_string())?;
    let rs = reidemeister_schreier(&p, &kt.table).map_err(|e| e.to_string())?;
    let want = 24 * p.generator_count() - 23;
    check(rs.presentation.generator_count() == want, || {
        format!("tetrahedron kernel: {} Schreier generators", rs.presentation.generator_count())
    })
}

fn complement_suite() -> Result<(), String> {
    let mut rng = common::rng(0x5EED_0002);
    let corpus = common::corpus();
    for k in 0..100 {
        let base = &corpus[rng.gen_range(0..corpus.len())];
        let c = common::relabel(&mut rng, base);
        check(c.validate().is_valid(), || format!("complex {k} ({}) is not valid", c.name()))?;
        let sharing: BTreeSet<_> = c.vertex_sharing_pairs().into_iter().collect();
        let parasitic: BTreeSet<_> = c.parasitic_pairs().into_iter().collect();
        let ids: Vec<usize> = c.edges().iter().map(|e| e.id).collect();
        let all: BTreeSet<(usize, usize)> = ids
            .iter()
            .flat_map(|&a| ids.iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
            .collect();
        check(sharing.is_disjoint(&parasitic), || format!("complex {k}: overlapping pair sets"))?;
        check(sharing.union(&parasitic).cloned().collect::<BTreeSet<_>>() == all, || {
            format!("complex {k}: pairs do not cover every edge pair")
        })?;
        check(parasitic == common::disjoint_pairs_oracle(&c), || {
            format!("complex {k}: parasitic pairs differ from the incidence oracle")
        })?;
    }
    Ok(())
}

fn semidirect_suite() -> Result<(), String> {
    let mut rng = common::rng(0x5EED_0003);
    for k in 0..1000 {
        let n = rng.gen_range(2..=7);
        let (x, y, z) = (
            common::random_sd(&mut rng, n),
            common::random_sd(&mut rng, n),
            common::random_sd(&mut rng, n),
        );
        let mul = |a: &SemidirectElement, b: &SemidirectElement| a.multiply(b).unwrap();
        check(mul(&mul(&x, &y), &z) == mul(&x, &mul(&y, &z)), || format!("triple {k}: not associative"))?;
        check(mul(&x, &x.inverse()).is_identity() && mul(&x.inverse(), &x).is_identity(), || {
            format!("triple {k}: bad inverse of {x}")
        })?;
        // conjugating a pure translation by x moves coordinate i to x(i)
        let t = SemidirectElement {
            perm: Permutation::identity(n),
            vec: y.vec.clone(),
        };
        let conj = mul(&mul(&x.inverse(), &t), &x);
        let mut moved = vec![0; n];
        for (i, &v) in y.vec.iter().enumerate() {
            moved[x.perm.apply(i)] = v;
        }
        check(conj.perm.is_identity() && conj.vec == moved, || {
            format!("triple {k}: {x} conjugates {t} to {conj}")
        })?;
        let i = rng.gen_range(1..=n);
        let mut j = rng.gen_range(1..=n);
        while j == i {
            j = rng.gen_range(1..=n);
        }
        let root = SemidirectElement::u(n, i, j);
        let sigma = SemidirectElement::from_perm(x.perm.clone());
        let want = SemidirectElement::u(n, x.perm.apply(i - 1) + 1, x.perm.apply(j - 1) + 1);
        check(mul(&mul(&sigma.inverse(), &root), &sigma) == want, || {
            format!("triple {k}: u{i},{j} conjugated by {} is wrong", x.perm)
        })?;
    }
    Ok(())
}

#[test]
fn criterion_8_property_suites() {
    let suites: [(&str, fn() -> Result<(), String>); 5] = [
        ("coset enumeration vs Cayley closure", cayley_suite),
        ("SNF vs determinantal divisors", snf_suite),
        ("Schreier generator count", schreier_count_suite),
        ("sharing/parasitic complement", complement_suite),
        ("semidirect product laws", semidirect_suite),
    ];
    let failures: Vec<String> = suites
        .iter()
        .filter_map(|(name, f)| f().err().map(|e| format!("{name}: {e}")))
        .collect();
    let outcome = if failures.is_empty() {
        Ok(())
    } else {
        Err(failures.join("; "))
    };
    report(8, "seeded property suites (Cayley, SNF, Schreier count, complement, semidirect)", outcome);
}

