//! End-to-end driver: complex → invariants → presentation → enumeration →
//! kernel verdict, optionally cross-checked by the Coxeter-quotient route.

use std::fmt::Write as _;
use std::time::Instant;

use num_rational::Ratio;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::complex::{DegenerationComplex, VertexClass};
use crate::coxquot::{coxeter_route, CoxeterError};
use crate::datasets;
use crate::enumeration::{enumerate, EnumerationError, DEFAULT_MAX_COSETS};
use crate::invariants::{chern_signature, singularity_counts, InvariantCounts, COUNTING_RULE_NOTE};
use crate::kernel::{analyze_kernel, KernelAnalysis, KernelError, StructureVerdict};
use crate::permgroup::{permutation_group_order, plane_transposition_map, verify_homomorphism};
use crate::presentation::{build_tilde_presentation, format_relation, parse_relation};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Stage {
    Parse,
    Validate,
    Classify,
    Invariants,
    Presentation,
    Enumeration,
    Kernel,
    Coxeter,
}

impl std::fmt::Display for Stage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = serde_json::to_value(self).expect("unit variant");
        write!(f, "{}", s.as_str().expect("string"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{stage} stage: {message}")]
pub struct AnalysisError {
    pub stage: Stage,
    pub message: String,
}

impl AnalysisError {
    fn at(stage: Stage, e: impl std::fmt::Display) -> Self {
        Self {
            stage,
            message: e.to_string(),
        }
    }

    /// Problems with the input itself, as opposed to the computation.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self.stage,
            Stage::Parse | Stage::Validate | Stage::Classify | Stage::Presentation
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Route {
    #[default]
    Enumerate,
    Coxeter,
    Both,
}

impl Route {
    fn enumerates(self) -> bool {
        matches!(self, Route::Enumerate | Route::Both)
    }

    fn coxeter(self) -> bool {
        matches!(self, Route::Coxeter | Route::Both)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnalysisOptions {
    pub route: Route,
    pub max_cosets: usize,
    pub emit_presentation: bool,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self {
            route: Route::Enumerate,
            max_cosets: DEFAULT_MAX_COSETS,
            emit_presentation: false,
        }
    }
}

/// An exact rational, serialized as a JSON integer when integral and as
/// `"p/q"` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Exact(pub Ratio<i128>);

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_integer() {
            s.serialize_i128(self.0.to_integer())
        } else {
            s.serialize_str(&self.0.to_string())
        }
    }
}

impl std::fmt::Display for Exact {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ComplexSummary {
    pub name: String,
    pub planes: usize,
    pub edges: usize,
    pub vertices: usize,
    pub inner3: usize,
    pub inner4: usize,
    pub parasitic_pairs: usize,
    pub dual_betti: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SymmetricMapSummary {
    pub homomorphism: bool,
    pub image_order: u128,
    pub surjective: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CoxeterSummary {
    /// `(generator, image)` pairs.
    pub images: Vec<(String, String)>,
    pub failed_relators: Vec<usize>,
    pub projective: String,
    /// Projective image in the `u_{k,k+1}` basis.
    pub projective_vector: Vec<i64>,
    pub invariants: Vec<u64>,
    pub quotient_order: Option<u64>,
    pub verdict: Option<StructureVerdict>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Undecided {
    pub stage: Stage,
    pub max_cosets: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Timings {
    pub enumeration_ms: u64,
    pub kernel_ms: u64,
    pub coxeter_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AnalysisReport {
    pub schema: u32,
    pub complex: ComplexSummary,
    pub counts: InvariantCounts,
    pub c1sq: Exact,
    pub c2: Exact,
    pub chi: Exact,
    pub generators: usize,
    pub relators: usize,
    pub tilde_order: Option<u64>,
    pub kernel_order: Option<u64>,
    pub symmetric_map: Option<SymmetricMapSummary>,
    pub kernel: Option<KernelAnalysis>,
    pub pi1: Option<StructureVerdict>,
    pub undecided: Option<Undecided>,
    pub coxeter: Option<CoxeterSummary>,
    pub routes_agree: Option<bool>,
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub presentation: Option<Vec<String>>,
    pub timings: Timings,
}

impl AnalysisReport {
    /// A definite verdict was reached.
    pub fn is_definite(&self) -> bool {
        self.pi1.as_ref().is_some_and(StructureVerdict::is_definite)
    }
}

/// Loads a bundled dataset by name, or a complex from a JSON file.
pub fn load_source(source: &str) -> Result<DegenerationComplex, AnalysisError> {
    if let Some(c) = datasets::builtin(source) {
        return Ok(c);
    }
    let text = std::fs::read_to_string(source)
        .map_err(|e| AnalysisError::at(Stage::Parse, format!("{source}: {e}")))?;
    DegenerationComplex::parse(&text).map_err(|e| AnalysisError::at(Stage::Parse, e))
}

/// Runs the pipeline on a builtin name or file path.
pub fn analyze(source: &str, options: &AnalysisOptions) -> Result<AnalysisReport, AnalysisError> {
    analyze_complex(&load_source(source)?, options)
}

fn millis(t: Instant) -> u64 {
    t.elapsed().as_millis() as u64
}

pub fn analyze_complex(
    c: &DegenerationComplex,
    options: &AnalysisOptions,
) -> Result<AnalysisReport, AnalysisError> {
    let validation = c.validate();
    if !validation.is_valid() {
        let msgs: Vec<String> = validation.violations.iter().map(|v| v.to_string()).collect();
        return Err(AnalysisError::at(Stage::Validate, msgs.join("; ")));
    }
    let classes = c
        .classify_all()
        .map_err(|e| AnalysisError::at(Stage::Classify, e))?;
    let inner3 = classes
        .iter()
        .filter(|(_, k)| matches!(k, VertexClass::Inner3 { .. }))
        .count();
    let mut warnings = vec![
        COUNTING_RULE_NOTE.to_string(),
        format!(
            "surface homeomorphism of the complex: {}",
            validation.surface_homeomorphism()
        ),
    ];

    let counts = singularity_counts(c).map_err(|e| AnalysisError::at(Stage::Invariants, e))?;
    let chern = chern_signature(&counts);
    if !chern.is_integral() {
        warnings.push("Chern numbers are not integral; the counting rules do not apply".into());
    }
    let dual = c.dual_graph();
    let complex = ComplexSummary {
        name: c.name().to_string(),
        planes: c.plane_count(),
        edges: c.edges().len(),
        vertices: c.vertices().len(),
        inner3,
        inner4: classes.len() - inner3,
        parasitic_pairs: c.parasitic_pairs().len(),
        dual_betti: dual.betti(),
    };

    let p = build_tilde_presentation(c).map_err(|e| AnalysisError::at(Stage::Presentation, e))?;
    let mut report = AnalysisReport {
        schema: SCHEMA_VERSION,
        complex,
        counts,
        c1sq: Exact(chern.c1sq),
        c2: Exact(chern.c2),
        chi: Exact(chern.chi),
        generators: p.generator_count(),
        relators: p.relators().len(),
        tilde_order: None,
        kernel_order: None,
        symmetric_map: None,
        kernel: None,
        pi1: None,
        undecided: None,
        coxeter: None,
        routes_agree: None,
        warnings,
        presentation: options.emit_presentation.then(|| {
            p.relators()
                .iter()
                .map(|r| format_relation(r, p.generator_names()))
                .collect()
        }),
        timings: Timings {
            enumeration_ms: 0,
            kernel_ms: 0,
            coxeter_ms: 0,
        },
    };
    let n = c.plane_count();
    let n_factorial: u64 = (1..=n as u64).product();

    if options.route.enumerates() {
        let clock = Instant::now();
        let tilde = match enumerate(&p, &[], options.max_cosets) {
            Ok(t) => Some(t.group_order().expect("trivial subgroup") as u64),
            Err(EnumerationError::Overflow { max_cosets }) => {
                report.undecided = Some(Undecided {
                    stage: Stage::Enumeration,
                    max_cosets,
                    message: format!("undecided at bound {max_cosets}"),
                });
                None
            }
            Err(e) => return Err(AnalysisError::at(Stage::Enumeration, e)),
        };
        report.timings.enumeration_ms = millis(clock);
        report.tilde_order = tilde;

        let a = plane_transposition_map(c);
        let hom = verify_homomorphism(&p, &a);
        let image_order = permutation_group_order(n, &a.images);
        let surjective = image_order == n_factorial as u128;
        report.symmetric_map = Some(SymmetricMapSummary {
            homomorphism: hom.holds,
            image_order,
            surjective,
        });
        if let Some(t) = tilde.filter(|_| hom.holds && surjective) {
            if t % n_factorial == 0 {
                report.kernel_order = Some(t / n_factorial);
            } else {
                report
                    .warnings
                    .push(format!("|G̃| = {t} is not divisible by {n}! = {n_factorial}"));
            }
        }

        if let Some(order) = report.kernel_order {
            let clock = Instant::now();
            match analyze_kernel(&p, &a, options.max_cosets) {
                Ok(mut k) => {
                    if k.enumerated_order != order {
                        report.warnings.push(format!(
                            "kernel order {order} from |G̃|/n! disagrees with {} from its own presentation",
                            k.enumerated_order
                        ));
                        k.verdict = StructureVerdict::Undetermined {
                            order,
                            mod2_rank: k.abelian.mod2_dimension,
                            invariant_factors: k.abelian.invariant_factors.clone(),
                            diagnostics: vec!["kernel orders disagree".into()],
                        };
                    }
                    report.pi1 = Some(k.verdict.clone());
                    report.kernel = Some(k);
                }
                Err(KernelError::Enumeration(EnumerationError::Overflow { max_cosets })) => {
                    report.undecided = Some(Undecided {
                        stage: Stage::Kernel,
                        max_cosets,
                        message: format!("undecided at bound {max_cosets}"),
                    });
                }
                Err(e) => return Err(AnalysisError::at(Stage::Kernel, e)),
            }
            report.timings.kernel_ms = millis(clock);
        }
    }

    if options.route.coxeter() {
        let clock = Instant::now();
        let data = c.overrides().and_then(|o| o.coxeter.as_ref());
        let projective = c.overrides().and_then(|o| o.projective_relator.as_ref());
        match (data, projective) {
            (Some(data), Some(line)) => {
                let proj = parse_relation(line, p.generator_names())
                    .map_err(|e| AnalysisError::at(Stage::Coxeter, e))?;
                let route = coxeter_route(&p, &proj, data).map_err(|e| match e {
                    CoxeterError::Presentation(_) => AnalysisError::at(Stage::Presentation, e),
                    _ => AnalysisError::at(Stage::Coxeter, e),
                })?;
                if !route.failed_relators.is_empty() {
                    report.warnings.push(format!(
                        "Coxeter assignment fails relators {:?}",
                        route.failed_relators
                    ));
                }
                let q = &route.quotient;
                report.coxeter = Some(CoxeterSummary {
                    images: route
                        .images
                        .iter()
                        .map(|(g, x)| (g.clone(), x.to_string()))
                        .collect(),
                    failed_relators: route.failed_relators.clone(),
                    projective: route.projective.to_string(),
                    projective_vector: route.projective.u_coordinates(),
                    invariants: q.invariants.clone(),
                    quotient_order: q.order,
                    verdict: q.verdict.clone(),
                });
                if route.failed_relators.is_empty() && report.pi1.is_none() && !options.route.enumerates() {
                    report.pi1 = q.verdict.clone();
                }
            }
            _ => report.warnings.push(format!(
                "Coxeter route not applicable: no Coxeter graph data for this complex (dual graph has {} independent cycles)",
                report.complex.dual_betti
            )),
        }
        report.timings.coxeter_ms = millis(clock);
    }

    if options.route == Route::Both {
        if let (Some(cox), Some(k)) = (&report.coxeter, &report.kernel) {
            let agree = cox.failed_relators.is_empty()
                && cox.quotient_order == Some(k.enumerated_order)
                && cox.verdict.as_ref() == Some(&k.verdict);
            report.routes_agree = Some(agree);
            if !agree {
                report.warnings.push("enumeration and Coxeter routes disagree".into());
            }
        }
    }
    Ok(report)
}

/// Deterministic serialization of a report.
pub fn emit_report(r: &AnalysisReport, format: ReportFormat) -> Vec<u8> {
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(r).expect("report serializes");
            s.push('\n');
            s.into_bytes()
        }
        ReportFormat::Text => text_report(r).into_bytes(),
    }
}

fn opt<T: std::fmt::Display>(x: &Option<T>) -> String {
    x.as_ref().map_or("-".to_string(), |v| v.to_string())
}

fn text_report(r: &AnalysisReport) -> String {
    let mut s = String::new();
    let c = &r.complex;
    let k = &r.counts;
    let _ = writeln!(
        s,
        "complex      {}: {} planes, {} lines, {} vertices ({} inner 3-points, {} inner 4-points), {} parasitic pairs",
        c.name, c.planes, c.edges, c.vertices, c.inner3, c.inner4, c.parasitic_pairs
    );
    let _ = writeln!(s, "counts       n={} m={} mu={} d={} rho={}", k.n, k.m, k.mu, k.d, k.rho);
    let _ = writeln!(s, "chern        c1^2={} c2={} chi={}", r.c1sq, r.c2, r.chi);
    let _ = writeln!(s, "presentation {} generators, {} relators", r.generators, r.relators);
    let _ = writeln!(s, "|G~|         {}", opt(&r.tilde_order));
    if let Some(m) = &r.symmetric_map {
        let _ = writeln!(
            s,
            "map to S_n   homomorphism={} image order={} surjective={}",
            m.homomorphism, m.image_order, m.surjective
        );
    }
    let _ = writeln!(s, "kernel order {}", opt(&r.kernel_order));
    if let Some(kn) = &r.kernel {
        let _ = writeln!(
            s,
            "kernel       {} Schreier generators, simplified to {} generators / {} relators, mod-2 rank {}",
            kn.schreier_generators, kn.simplified_generators, kn.simplified_relators, kn.abelian.mod2_dimension
        );
    }
    if let Some(cx) = &r.coxeter {
        let imgs: Vec<String> = cx.images.iter().map(|(g, x)| format!("{g}={x}")).collect();
        let _ = writeln!(s, "coxeter      {}", imgs.join(", "));
        let _ = writeln!(s, "projective   {}", cx.projective);
        let inv: Vec<String> = cx.invariants.iter().map(u64::to_string).collect();
        let _ = writeln!(
            s,
            "lattice      invariants ({}), quotient {}",
            inv.join(","),
            opt(&cx.verdict)
        );
    }
    if let Some(a) = r.routes_agree {
        let _ = writeln!(s, "routes agree {a}");
    }
    match (&r.pi1, &r.undecided) {
        (Some(v), _) => {
            let _ = writeln!(s, "pi1          {v}");
        }
        (None, Some(u)) => {
            let _ = writeln!(s, "pi1          {} ({} stage)", u.message, u.stage);
        }
        (None, None) => {
            let _ = writeln!(s, "pi1          not computed");
        }
    }
    for w in &r.warnings {
        let _ = writeln!(s, "warning: {w}");
    }
    if let Some(lines) = &r.presentation {
        s.push_str("relators:\n");
        for l in lines {
            let _ = writeln!(s, "  {l}");
        }
    }
    s
}
