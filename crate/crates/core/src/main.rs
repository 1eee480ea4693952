//! Command-line surface: cover validation, liftable-generator tabulation,
//! liftability verdicts with certificates, automorphism decompositions,
//! identity-lift (fiber-distortion) reports, and a voltage-cover census.
//!
//! Exit codes: 0 success / liftable; 1 I/O or parse error; 2 invalid cover;
//! 3 not liftable (or not fiber-distorting); 4 undecided; 5 internal
//! verification failure.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use raaglift::autos::{
    self, is_conjugating, is_identity, laurence_decompose, AutDoc, AutError, AutWord,
};
use raaglift::covering::{derived_cover, CoverDoc, CoveringMap, VoltageDoc};
use raaglift::graph::{Graph, GraphDoc, GraphError, Perm};
use raaglift::homology::{
    abelianization_matrix, deck_basis, fd_torelli_witness, ia_check, HomologyError,
};
use raaglift::liftability::{
    decide_liftable, lift_inversion, lift_partial_conj, lift_symmetry_aut, lift_transvection,
    verify_lift, LiftError, LiftResult,
};

const EXIT_PARSE: u8 = 1;
const EXIT_COVER: u8 = 2;
const EXIT_NO: u8 = 3;
const EXIT_UNKNOWN: u8 = 4;
const EXIT_INTERNAL: u8 = 5;

/// Ceiling on census rows after pruning; guards against runaway enumeration.
const CENSUS_CEILING: usize = 20_000;

#[derive(Parser)]
#[command(name = "raaglift", version, about = "Liftability of graph-group automorphisms along regular covers")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate a cover file and print fibers, degree, and deck group order.
    Validate { cover: PathBuf },
    /// Tabulate liftability of every elementary generator of the base group.
    Analyze { cover: PathBuf },
    /// Decide liftability of a base automorphism and emit a certificate.
    Lift { cover: PathBuf, automorphism: PathBuf },
    /// Decompose an automorphism into partial conjugations, or into a
    /// conjugating part and a cyclically-reduced part.
    Decompose { graph: PathBuf, automorphism: PathBuf },
    /// Check whether a total-graph automorphism lifts the identity, and
    /// report its homology action and Torelli-correcting deck element.
    IdentityLifts { cover: PathBuf, automorphism: PathBuf },
    /// Enumerate cyclic voltage covers of a base graph and analyze each.
    Census {
        base: PathBuf,
        /// Largest cyclic group order to enumerate.
        #[arg(long, default_value_t = 2)]
        max_degree: u32,
        /// Worker threads for the census (default: rayon's choice).
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

fn lift_failure(e: LiftError) -> Failure {
    let code = match &e {
        LiftError::Cover(_) => EXIT_COVER,
        LiftError::Internal(_) | LiftError::NoEssentialLift(_) => EXIT_INTERNAL,
        _ => EXIT_PARSE,
    };
    Failure::new(code, e.to_string())
}

fn homology_failure(e: HomologyError) -> Failure {
    let code = match &e {
        HomologyError::Internal(_) | HomologyError::NotFiberDistortion => EXIT_INTERNAL,
        HomologyError::Cover(_) => EXIT_COVER,
        HomologyError::Undecidable => EXIT_UNKNOWN,
        _ => EXIT_PARSE,
    };
    Failure::new(code, e.to_string())
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn load_cover(path: &Path) -> Result<CoveringMap, Failure> {
    let text = read_file(path)?;
    let doc: CoverDoc = serde_json::from_str(&text)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))?;
    CoveringMap::from_doc(&doc)
        .map_err(|e| Failure::new(EXIT_COVER, format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    let text = read_file(path)?;
    let doc: GraphDoc = serde_json::from_str(&text)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))?;
    Graph::from_doc(&doc).map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn load_aut(g: &Graph, path: &Path) -> Result<AutWord, Failure> {
    let text = read_file(path)?;
    let doc: AutDoc = serde_json::from_str(&text)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))?;
    autos::from_doc(g, &doc).map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn render<T: Serialize>(format: Format, report: &T, human: String) -> String {
    match format {
        Format::Human => human,
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
    }
}

fn perm_doc(g: &Graph, p: &Perm) -> BTreeMap<String, String> {
    g.vertex_ids()
        .map(|v| (g.name(v).to_owned(), g.name(p.apply(v)).to_owned()))
        .collect()
}

// ---------------------------------------------------------------------------
// Shared verdict serialization.

#[derive(Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
enum VerdictDoc {
    Liftable {
        verified: bool,
        #[serde(skip_serializing_if = "Option::is_none")]
        lift: Option<AutDoc>,
    },
    NotLiftable {
        witness: String,
    },
    Unknown {
        diagnostic: String,
    },
}

impl VerdictDoc {
    fn of(total: &Graph, r: &LiftResult, include_lift: bool) -> VerdictDoc {
        match r {
            LiftResult::Liftable { lift, verified } => VerdictDoc::Liftable {
                verified: *verified,
                lift: include_lift.then(|| autos::to_doc(total, lift)),
            },
            LiftResult::NotLiftable { witness } => VerdictDoc::NotLiftable {
                witness: witness.clone(),
            },
            LiftResult::Unknown { diagnostic } => VerdictDoc::Unknown {
                diagnostic: diagnostic.clone(),
            },
        }
    }

    fn is_liftable(&self) -> bool {
        matches!(self, VerdictDoc::Liftable { .. })
    }

    fn human(&self) -> String {
        match self {
            VerdictDoc::Liftable { verified: true, .. } => "liftable (verified)".to_owned(),
            VerdictDoc::Liftable { verified: false, .. } => "liftable".to_owned(),
            VerdictDoc::NotLiftable { witness } => format!("not liftable — {witness}"),
            VerdictDoc::Unknown { diagnostic } => format!("unknown — {diagnostic}"),
        }
    }
}

// ---------------------------------------------------------------------------
// validate

#[derive(Serialize)]
struct ValidateReport {
    input: String,
    degree: usize,
    regular: bool,
    deck_order: usize,
    fibers: BTreeMap<String, Vec<String>>,
}

fn cmd_validate(path: &Path) -> Result<(String, u8), Failure> {
    let c = load_cover(path)?;
    let report = ValidateReport {
        input: path.display().to_string(),
        degree: c.degree(),
        regular: c.is_regular(),
        deck_order: c.deck_group().len(),
        fibers: c
            .base
            .vertex_ids()
            .map(|v| {
                (
                    c.base.name(v).to_owned(),
                    c.total.names(c.fiber(v).unwrap()),
                )
            })
            .collect(),
    };
    let mut human = format!(
        "cover {}: degree {}, {}, deck order {}\nfibers:\n",
        report.input,
        report.degree,
        if report.regular { "regular" } else { "irregular" },
        report.deck_order
    );
    for (base, fiber) in &report.fibers {
        human.push_str(&format!("  {base}: {}\n", fiber.join(" ")));
    }
    Ok((render_with(&report, human), 0))
}

// ---------------------------------------------------------------------------
// analyze

#[derive(Serialize)]
struct InversionRow {
    vertex: String,
    #[serde(flatten)]
    verdict: VerdictDoc,
}

#[derive(Serialize)]
struct TransvectionRow {
    target: String,
    multiplier: String,
    #[serde(flatten)]
    verdict: VerdictDoc,
}

#[derive(Serialize)]
struct PartialConjRow {
    vertex: String,
    component: Vec<String>,
    bar: Vec<String>,
    component_verdict: VerdictDoc,
    closure_verdict: VerdictDoc,
}

#[derive(Serialize)]
struct SymmetryRow {
    map: BTreeMap<String, String>,
    #[serde(flatten)]
    verdict: VerdictDoc,
}

#[derive(Serialize, Clone, Copy, Default)]
struct Counts {
    liftable: usize,
    total: usize,
}

impl Counts {
    fn add(&mut self, liftable: bool) {
        self.total += 1;
        if liftable {
            self.liftable += 1;
        }
    }
}

#[derive(Serialize, Default)]
struct Summary {
    inversions: Counts,
    transvections: Counts,
    components: Counts,
    closures: Counts,
    #[serde(skip_serializing_if = "Option::is_none")]
    symmetries: Option<Counts>,
}

#[derive(Serialize)]
struct AnalyzeReport {
    input: String,
    degree: usize,
    deck_order: usize,
    inversions: Vec<InversionRow>,
    transvections: Vec<TransvectionRow>,
    partial_conjugations: Vec<PartialConjRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    symmetries: Option<Vec<SymmetryRow>>,
    summary: Summary,
}

fn analyze_cover(input: String, c: &CoveringMap) -> Result<AnalyzeReport, Failure> {
    let g = &c.base;
    let mut summary = Summary::default();

    let mut inversions = Vec::new();
    for v in g.vertex_ids() {
        let r = lift_inversion(c, v).map_err(lift_failure)?;
        let verdict = VerdictDoc::of(&c.total, &r, false);
        summary.inversions.add(verdict.is_liftable());
        inversions.push(InversionRow {
            vertex: g.name(v).to_owned(),
            verdict,
        });
    }

    let mut transvections = Vec::new();
    for t in g.vertex_ids() {
        for m in g.vertex_ids() {
            if t == m || !g.leq_linkstar(t, m).map_err(|e| lift_failure(e.into()))? {
                continue;
            }
            let r = lift_transvection(c, t, m).map_err(lift_failure)?;
            let verdict = VerdictDoc::of(&c.total, &r, false);
            summary.transvections.add(verdict.is_liftable());
            transvections.push(TransvectionRow {
                target: g.name(t).to_owned(),
                multiplier: g.name(m).to_owned(),
                verdict,
            });
        }
    }

    let mut partial_conjugations = Vec::new();
    for v in g.vertex_ids() {
        for comp in g.conj_components(v).map_err(|e| lift_failure(e.into()))? {
            let bar = c.bar(v, &comp).map_err(|e| lift_failure(e.into()))?;
            let comp_res = lift_partial_conj(c, v, &comp).map_err(lift_failure)?;
            let closure_res = lift_partial_conj(c, v, &bar).map_err(lift_failure)?;
            let component_verdict = VerdictDoc::of(&c.total, &comp_res, false);
            let closure_verdict = VerdictDoc::of(&c.total, &closure_res, false);
            summary.components.add(component_verdict.is_liftable());
            summary.closures.add(closure_verdict.is_liftable());
            partial_conjugations.push(PartialConjRow {
                vertex: g.name(v).to_owned(),
                component: g.names(&comp),
                bar: g.names(&bar),
                component_verdict,
                closure_verdict,
            });
        }
    }

    let symmetries = match g.graph_symmetries() {
        Ok(perms) => {
            let mut counts = Counts::default();
            let mut rows = Vec::new();
            for p in perms {
                let r = lift_symmetry_aut(c, &p).map_err(lift_failure)?;
                let verdict = VerdictDoc::of(&c.total, &r, false);
                counts.add(verdict.is_liftable());
                rows.push(SymmetryRow {
                    map: perm_doc(g, &p),
                    verdict,
                });
            }
            summary.symmetries = Some(counts);
            Some(rows)
        }
        Err(GraphError::SymmetryCeiling(..)) => None,
        Err(e) => return Err(lift_failure(e.into())),
    };

    Ok(AnalyzeReport {
        input,
        degree: c.degree(),
        deck_order: c.deck_group().len(),
        inversions,
        transvections,
        partial_conjugations,
        symmetries,
        summary,
    })
}

fn set_text(names: &[String]) -> String {
    format!("{{{}}}", names.join(" "))
}

fn analyze_human(r: &AnalyzeReport) -> String {
    let mut s = format!(
        "cover {}: degree {}, deck order {}\n",
        r.input, r.degree, r.deck_order
    );
    s.push_str(&format!(
        "inversions: {}/{} liftable\n",
        r.summary.inversions.liftable, r.summary.inversions.total
    ));
    s.push_str("transvections:\n");
    for row in &r.transvections {
        s.push_str(&format!(
            "  T[{} <- {}]: {}\n",
            row.target,
            row.multiplier,
            row.verdict.human()
        ));
    }
    s.push_str("partial conjugations:\n");
    for row in &r.partial_conjugations {
        s.push_str(&format!(
            "  P[{}, {}]: bar = {}; component {}; closure {}\n",
            row.vertex,
            set_text(&row.component),
            set_text(&row.bar),
            row.component_verdict.human(),
            row.closure_verdict.human()
        ));
    }
    match (&r.symmetries, &r.summary.symmetries) {
        (Some(_), Some(counts)) => s.push_str(&format!(
            "symmetries: {}/{} liftable\n",
            counts.liftable, counts.total
        )),
        _ => s.push_str("symmetries: skipped (above enumeration ceiling)\n"),
    }
    s
}

fn cmd_analyze(path: &Path) -> Result<(String, u8), Failure> {
    let c = load_cover(path)?;
    let report = analyze_cover(path.display().to_string(), &c)?;
    let human = analyze_human(&report);
    Ok((render_with(&report, human), 0))
}

// ---------------------------------------------------------------------------
// lift

#[derive(Serialize)]
struct VerdictReport {
    input: String,
    verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    diagnostic: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lift: Option<AutDoc>,
    verified: bool,
}

fn cmd_lift(cover: &Path, aut: &Path) -> Result<(String, u8), Failure> {
    let c = load_cover(cover)?;
    let f = load_aut(&c.base, aut)?;
    let result = decide_liftable(&c, &f).map_err(lift_failure)?;
    let input = aut.display().to_string();
    let (report, code) = match result {
        LiftResult::Liftable { lift, verified } => (
            VerdictReport {
                input,
                verdict: "liftable".into(),
                witness: None,
                diagnostic: None,
                lift: Some(autos::to_doc(&c.total, &lift)),
                verified,
            },
            0,
        ),
        LiftResult::NotLiftable { witness } => (
            VerdictReport {
                input,
                verdict: "not_liftable".into(),
                witness: Some(witness),
                diagnostic: None,
                lift: None,
                verified: false,
            },
            EXIT_NO,
        ),
        LiftResult::Unknown { diagnostic } => (
            VerdictReport {
                input,
                verdict: "unknown".into(),
                witness: Some(diagnostic.clone()),
                diagnostic: Some(diagnostic),
                lift: None,
                verified: false,
            },
            EXIT_UNKNOWN,
        ),
    };
    let human = match report.verdict.as_str() {
        "liftable" => format!(
            "{}: liftable ({}), certificate with {} generators\n",
            report.input,
            if report.verified { "verified" } else { "unverified" },
            report.lift.as_ref().map_or(0, Vec::len)
        ),
        "not_liftable" => format!(
            "{}: not liftable — {}\n",
            report.input,
            report.witness.as_deref().unwrap_or("")
        ),
        _ => format!(
            "{}: unknown — {}\n",
            report.input,
            report.diagnostic.as_deref().unwrap_or("")
        ),
    };
    Ok((render_with(&report, human), code))
}

// ---------------------------------------------------------------------------
// decompose

#[derive(Serialize)]
struct ConjStepDoc {
    vertex: String,
    component: Vec<String>,
    power: i8,
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum DecomposeReport {
    PartialConjugations { steps: Vec<ConjStepDoc> },
    ConjugatingTimesReduced { conjugating_part: AutDoc, reduced_part: AutDoc },
}

fn aut_failure(e: AutError) -> Failure {
    let code = match &e {
        AutError::Internal(_) => EXIT_INTERNAL,
        AutError::Stuck { .. } | AutError::ExponentSum { .. } => EXIT_UNKNOWN,
        _ => EXIT_PARSE,
    };
    Failure::new(code, e.to_string())
}

fn cmd_decompose(graph: &Path, aut: &Path) -> Result<(String, u8), Failure> {
    let g = load_graph(graph)?;
    let a = load_aut(&g, aut)?;
    let report = if is_conjugating(&g, &a) {
        let steps = if is_identity(&g, &a) {
            Vec::new()
        } else {
            laurence_decompose(&g, &a, true).map_err(aut_failure)?
        };
        DecomposeReport::PartialConjugations {
            steps: steps
                .into_iter()
                .map(|(v, comp, power)| ConjStepDoc {
                    vertex: g.name(v).to_owned(),
                    component: g.names(&comp),
                    power,
                })
                .collect(),
        }
    } else {
        let (conj, reduced) = autos::decompose_gh(&g, &a).map_err(aut_failure)?;
        DecomposeReport::ConjugatingTimesReduced {
            conjugating_part: autos::to_doc(&g, &conj),
            reduced_part: autos::to_doc(&g, &reduced),
        }
    };
    let human = match &report {
        DecomposeReport::PartialConjugations { steps } => {
            let mut s = format!("partial-conjugation decomposition, {} steps:\n", steps.len());
            for st in steps {
                s.push_str(&format!(
                    "  P[{}, {}]^{}\n",
                    st.vertex,
                    set_text(&st.component),
                    st.power
                ));
            }
            s
        }
        DecomposeReport::ConjugatingTimesReduced {
            conjugating_part,
            reduced_part,
        } => format!(
            "conjugating part: {} generators; cyclically-reduced part: {} generators\n",
            conjugating_part.len(),
            reduced_part.len()
        ),
    };
    Ok((render_with(&report, human), 0))
}

// ---------------------------------------------------------------------------
// identity-lifts

#[derive(Serialize)]
struct MatrixDoc {
    basis: Vec<String>,
    rows: Vec<Vec<i64>>,
}

#[derive(Serialize)]
struct IdentityLiftReport {
    input: String,
    member: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    torelli: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mu: Option<BTreeMap<String, String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    matrix: Option<MatrixDoc>,
}

fn cmd_identity_lifts(cover: &Path, aut: &Path) -> Result<(String, u8), Failure> {
    let c = load_cover(cover)?;
    let cap_f = load_aut(&c.total, aut)?;
    let input = aut.display().to_string();
    let member = verify_lift(&c, &cap_f, &AutWord::empty()).map_err(lift_failure)?;
    if !member {
        let report = IdentityLiftReport {
            input,
            member: false,
            torelli: None,
            mu: None,
            matrix: None,
        };
        let human = format!("{}: does not lift the identity\n", report.input);
        return Ok((render_with(&report, human), EXIT_NO));
    }
    let mu = fd_torelli_witness(&c, &cap_f, true).map_err(homology_failure)?;
    let Some(mu) = mu else {
        let report = IdentityLiftReport {
            input,
            member: true,
            torelli: None,
            mu: None,
            matrix: None,
        };
        let human = format!(
            "{}: lifts the identity; Torelli-correcting deck element undecided (isolated vertices)\n",
            report.input
        );
        return Ok((render_with(&report, human), EXIT_UNKNOWN));
    };
    let torelli = ia_check(&c.total, &cap_f).map_err(homology_failure)?;
    let db = deck_basis(&c, None).map_err(homology_failure)?;
    let m = abelianization_matrix(&c.total, &cap_f, &db.order).map_err(homology_failure)?;
    let n = m.n();
    let matrix = MatrixDoc {
        basis: m.basis.iter().map(|&v| c.total.name(v).to_owned()).collect(),
        rows: (0..n)
            .map(|i| (0..n).map(|j| m.get(i, j)).collect())
            .collect(),
    };
    let report = IdentityLiftReport {
        input,
        member: true,
        torelli: Some(torelli),
        mu: Some(perm_doc(&c.total, &mu)),
        matrix: Some(matrix),
    };
    let mut human = format!(
        "{}: lifts the identity; acts trivially on homology: {}\n",
        report.input, torelli
    );
    human.push_str("Torelli-correcting deck element:\n");
    for (from, to) in report.mu.as_ref().unwrap() {
        human.push_str(&format!("  {from} -> {to}\n"));
    }
    let md = report.matrix.as_ref().unwrap();
    human.push_str(&format!("homology matrix (basis: {}):\n", md.basis.join(" ")));
    for row in &md.rows {
        let cells: Vec<String> = row.iter().map(i64::to_string).collect();
        human.push_str(&format!("  [{}]\n", cells.join(" ")));
    }
    Ok((render_with(&report, human), 0))
}

// ---------------------------------------------------------------------------
// census

#[derive(Serialize)]
struct CensusRow {
    n: u32,
    voltages: Vec<(String, String, u32)>,
    degree: usize,
    deck_order: usize,
    summary: Summary,
}

#[derive(Serialize)]
struct CensusReport {
    input: String,
    max_degree: u32,
    rows: Vec<CensusRow>,
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Keeps one voltage vector per orbit of the unit-multiplication action of
/// (Z/n)^*: multiplying every voltage by a unit yields an isomorphic cover.
fn is_canonical(volts: &[u32], n: u32) -> bool {
    (2..n)
        .filter(|&u| gcd(u, n) == 1)
        .all(|u| volts.iter().map(|&t| (t * u) % n).collect::<Vec<_>>() >= volts.to_vec())
}

fn cmd_census(
    base_path: &Path,
    max_degree: u32,
    jobs: Option<usize>,
) -> Result<(String, u8), Failure> {
    let base = load_graph(base_path)?;
    let doc = base.to_doc();
    let edges = doc.edges.clone();

    let mut assignments: Vec<(u32, Vec<u32>)> = Vec::new();
    for n in 1..=max_degree.max(1) {
        let mut volts = vec![0u32; edges.len()];
        loop {
            if is_canonical(&volts, n) {
                assignments.push((n, volts.clone()));
                if assignments.len() > CENSUS_CEILING {
                    return Err(Failure::new(
                        EXIT_PARSE,
                        format!(
                            "census exceeds {CENSUS_CEILING} covers; lower --max-degree"
                        ),
                    ));
                }
            }
            // Odometer increment over (Z/n)^edges.
            let mut i = 0;
            loop {
                if i == volts.len() {
                    break;
                }
                volts[i] += 1;
                if volts[i] < n {
                    break;
                }
                volts[i] = 0;
                i += 1;
            }
            if i == volts.len() {
                break;
            }
        }
    }

    let run = || -> Result<Vec<CensusRow>, Failure> {
        assignments
            .par_iter()
            .map(|(n, volts)| {
                let voltages: Vec<(String, String, u32)> = edges
                    .iter()
                    .zip(volts)
                    .map(|([a, b], &t)| (a.clone(), b.clone(), t))
                    .collect();
                let c = derived_cover(&VoltageDoc {
                    base: base.to_doc(),
                    n: *n,
                    voltages: voltages.clone(),
                })
                .map_err(|e| Failure::new(EXIT_COVER, e.to_string()))?;
                let label = format!("n={n} [{}]", volts.iter().map(u32::to_string).collect::<Vec<_>>().join(","));
                let report = analyze_cover(label, &c)?;
                Ok(CensusRow {
                    n: *n,
                    voltages,
                    degree: c.degree(),
                    deck_order: c.deck_group().len(),
                    summary: report.summary,
                })
            })
            .collect()
    };
    let rows = match jobs {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| Failure::new(EXIT_PARSE, e.to_string()))?
            .install(run),
        None => run(),
    }?;

    let report = CensusReport {
        input: base_path.display().to_string(),
        max_degree,
        rows,
    };
    let mut human = format!(
        "census of {}: {} covers, orders 1..={}\n",
        report.input,
        report.rows.len(),
        report.max_degree
    );
    for row in &report.rows {
        let volts: Vec<String> = row
            .voltages
            .iter()
            .map(|(a, b, t)| format!("{a}-{b}:{t}"))
            .collect();
        human.push_str(&format!(
            "  n={} [{}] degree {} deck {} | inv {}/{} trans {}/{} comp {}/{} clos {}/{}\n",
            row.n,
            volts.join(" "),
            row.degree,
            row.deck_order,
            row.summary.inversions.liftable,
            row.summary.inversions.total,
            row.summary.transvections.liftable,
            row.summary.transvections.total,
            row.summary.components.liftable,
            row.summary.components.total,
            row.summary.closures.liftable,
            row.summary.closures.total,
        ));
    }
    Ok((render_with(&report, human), 0))
}

// ---------------------------------------------------------------------------

thread_local! {
    static FORMAT: std::cell::Cell<Format> = const { std::cell::Cell::new(Format::Human) };
}

fn render_with<T: Serialize>(report: &T, human: String) -> String {
    render(FORMAT.with(|f| f.get()), report, human)
}

fn run(cli: &Cli) -> Result<(String, u8), Failure> {
    match &cli.cmd {
        Cmd::Validate { cover } => cmd_validate(cover),
        Cmd::Analyze { cover } => cmd_analyze(cover),
        Cmd::Lift { cover, automorphism } => cmd_lift(cover, automorphism),
        Cmd::Decompose { graph, automorphism } => cmd_decompose(graph, automorphism),
        Cmd::IdentityLifts { cover, automorphism } => cmd_identity_lifts(cover, automorphism),
        Cmd::Census {
            base,
            max_degree,
            jobs,
        } => cmd_census(base, *max_degree, *jobs),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    FORMAT.with(|f| f.set(cli.format));
    match run(&cli) {
        Ok((out, code)) => {
            if let Some(path) = &cli.output {
                if let Err(e) = fs::write(path, &out) {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(EXIT_PARSE);
                }
            } else {
                print!("{out}");
            }
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
