//! `toric-gkm`: analyses of characteristic pairs from the command line.
//!
//! Exit status: 0 pass, 1 checked and false, 2 input or usage error,
//! 3 search budget exhausted.

mod document;
mod report;

use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use toric_gkm::gkm::{
    check_piecewise, check_section, coprimality_check, piecewise_from_section, section_from_piecewise, CoefficientRing,
    Coprimality, GkmError, GkmGraph, GradedPolynomial, LaurentPolynomial,
};
use toric_gkm::retraction::{
    enumerate_retractions, first_retraction, is_divisive, step_groups, Divisiveness, NotDivisiveReason,
    RetractionSequence, DEFAULT_BUDGET,
};
use toric_gkm::CharacteristicPair;

use document::{load_element, load_pair, load_section, load_sequence, FromTerms};
use report::{group_json, poly_json, sequence_json, Format, HasTerms, Report};

const BUDGET_VAR: &str = "TORIC_GKM_BUDGET";

#[derive(Parser)]
#[command(
    name = "toric-gkm",
    version,
    about = "Local groups, retraction sequences and GKM checks for characteristic pairs"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum TheoryArg {
    #[value(name = "K", alias = "k")]
    K,
    #[value(name = "H", alias = "h")]
    H,
}

#[derive(Subcommand)]
enum Command {
    /// Check that λ is a characteristic function.
    Validate { input: PathBuf },
    /// Local groups G_F(v) and face groups G_F.
    LocalGroups {
        input: PathBuf,
        /// Restrict to one face: `Q`, a vertex name, or facets joined by `∩`, `^`, `&` or `,`.
        #[arg(long)]
        face: Option<String>,
    },
    /// Retraction sequences.
    Retract {
        input: PathBuf,
        /// Enumerate every sequence instead of the first one.
        #[arg(long)]
        all: bool,
        /// Stop after this many sequences.
        #[arg(long, requires = "all")]
        cap: Option<usize>,
    },
    /// Search for a retraction sequence with trivial local groups.
    Divisive {
        input: PathBuf,
        /// Node budget; overrides TORIC_GKM_BUDGET.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// The GKM graph of a retraction sequence.
    Gkm {
        input: PathBuf,
        /// Sequence document; defaults to a divisive certificate, or the first sequence.
        #[arg(long)]
        seq_from: Option<PathBuf>,
    },
    /// Edge conditions for a vertex section.
    CheckSection {
        input: PathBuf,
        #[arg(long, value_enum)]
        theory: TheoryArg,
        #[arg(long)]
        section: PathBuf,
    },
    /// Compatibility conditions for a piecewise element.
    CheckPiecewise {
        input: PathBuf,
        #[arg(long, value_enum)]
        theory: TheoryArg,
        #[arg(long)]
        element: PathBuf,
    },
    /// Passes a section to the face description and back.
    EquivRoundtrip {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = TheoryArg::K)]
        theory: TheoryArg,
        #[arg(long)]
        section: PathBuf,
    },
}

#[derive(Debug)]
pub enum CliError {
    Input(String),
}

impl CliError {
    pub fn input(path: &Path, detail: impl Display) -> Self {
        CliError::Input(format!("{}: {detail}", path.display()))
    }
}

/// Outcome of a command: its report and exit status.
struct Outcome {
    report: Report,
    status: u8,
}

impl Outcome {
    fn verdict(report: Report, pass: bool) -> Self {
        Outcome {
            report,
            status: if pass { 0 } else { 1 },
        }
    }
}

fn valid_pair(path: &Path) -> Result<CharacteristicPair, CliError> {
    let pair = load_pair(path)?;
    let report = pair.validate();
    if !report.is_valid() {
        return Err(CliError::input(
            path,
            format!("not a characteristic function: {report}"),
        ));
    }
    Ok(pair)
}

fn budget(flag: Option<u64>) -> Result<u64, CliError> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(BUDGET_VAR) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| CliError::Input(format!("{BUDGET_VAR}: \"{s}\" is not a nonnegative integer"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn validate(path: &Path) -> Result<Outcome, CliError> {
    let pair = load_pair(path)?;
    let p = &pair.polytope;
    let v = pair.validate();
    let names = |ids: &[usize], all: &[String]| -> Vec<String> { ids.iter().map(|&i| all[i].clone()).collect() };
    let json = json!({
        "command": "validate",
        "valid": v.is_valid(),
        "dim": pair.dim(),
        "facets": p.facet_count(),
        "vertices": p.vertex_count(),
        "f_vector": p.f_vector(),
        "h_vector": p.h_vector(),
        "dependent_vertices": names(&v.dependent_vertices, p.vertex_names()),
        "non_primitive_facets": names(&v.non_primitive_facets, p.facet_names()),
    });
    let mut table = vec![
        vec!["valid".to_string(), v.is_valid().to_string()],
        vec!["f-vector".into(), format!("{:?}", p.f_vector())],
        vec!["h-vector".into(), format!("{:?}", p.h_vector())],
    ];
    if !v.is_valid() {
        table.push(vec!["problems".into(), v.to_string()]);
    }
    Ok(Outcome::verdict(
        Report::new(json, &["property", "value"], table),
        v.is_valid(),
    ))
}

fn local_groups(path: &Path, face: Option<&str>) -> Result<Outcome, CliError> {
    let pair = valid_pair(path)?;
    let p = &pair.polytope;
    let faces: Vec<usize> = match face {
        Some(name) => vec![p
            .find_face(name)
            .ok_or_else(|| CliError::Input(format!("--face: unknown face \"{name}\"")))?],
        None => (0..p.faces().len()).collect(),
    };
    let mut entries = Vec::new();
    let mut rows = Vec::new();
    let mut all_trivial = true;
    for f in faces {
        let name = p.face_name(f);
        let face_group = if f == p.top() {
            Value::Null
        } else {
            let g = pair.face_group(f).map_err(|e| CliError::Input(e.to_string()))?;
            group_json(&g)
        };
        let mut vertices = Vec::new();
        for &v in &p.face(f).vertices {
            let g = pair.local_group(f, v).map_err(|e| CliError::Input(e.to_string()))?;
            all_trivial &= g.is_trivial();
            rows.push(vec![
                name.clone(),
                p.vertex_names()[v].clone(),
                g.to_string(),
                g.order().to_string(),
            ]);
            let mut entry = group_json(&g);
            entry["vertex"] = json!(p.vertex_names()[v]);
            vertices.push(entry);
        }
        entries.push(json!({ "face": name, "dim": p.face_dim(f), "face_group": face_group, "vertices": vertices }));
    }
    let json = json!({ "command": "local-groups", "all_trivial": all_trivial, "faces": entries });
    Ok(Outcome::verdict(
        Report::new(json, &["face", "vertex", "group", "order"], rows),
        true,
    ))
}

fn retract(path: &Path, all: bool, cap: Option<usize>) -> Result<Outcome, CliError> {
    let pair = load_pair(path)?;
    let p = &pair.polytope;
    let seqs = if all {
        enumerate_retractions(p, cap)
    } else {
        vec![first_retraction(p)]
    };
    let cap_reached = all && cap.is_some_and(|c| seqs.len() >= c);
    let mut rows = Vec::new();
    for (i, seq) in seqs.iter().enumerate() {
        for (l, s) in seq.steps().iter().enumerate() {
            rows.push(vec![
                (i + 1).to_string(),
                (l + 1).to_string(),
                p.face_name(s.face),
                p.vertex_names()[s.vertex].clone(),
                p.face_dim(s.face).to_string(),
            ]);
        }
    }
    let json = json!({
        "command": "retract",
        "count": seqs.len(),
        "cap_reached": cap_reached,
        "h_vector": p.h_vector(),
        "sequences": seqs.iter().map(|s| sequence_json(p, s, None)).collect::<Vec<_>>(),
    });
    Ok(Outcome::verdict(
        Report::new(json, &["sequence", "step", "face", "vertex", "dim"], rows),
        true,
    ))
}

fn divisive(path: &Path, budget_flag: Option<u64>) -> Result<Outcome, CliError> {
    let pair = valid_pair(path)?;
    let p = &pair.polytope;
    let budget = budget(budget_flag)?;
    let verdict = is_divisive(&pair, Some(budget)).map_err(|e| CliError::Input(e.to_string()))?;
    let (json, rows, status) = match verdict {
        Divisiveness::Divisive(seq) => {
            let groups = step_groups(&pair, &seq).map_err(|e| CliError::Input(e.to_string()))?;
            let rows = seq
                .steps()
                .iter()
                .zip(&groups)
                .enumerate()
                .map(|(l, (s, g))| {
                    vec![
                        (l + 1).to_string(),
                        p.face_name(s.face),
                        p.vertex_names()[s.vertex].clone(),
                        g.to_string(),
                    ]
                })
                .collect();
            let json = json!({
                "command": "divisive",
                "result": "DIVISIVE",
                "budget": budget,
                "certificate": sequence_json(p, &seq, Some(&groups)),
            });
            (json, rows, 0)
        }
        Divisiveness::NotDivisive(reason) => {
            let reason = match reason {
                NotDivisiveReason::NoAdmissibleStart => "no admissible starting vertex",
                NotDivisiveReason::NoCertificate => "every retraction sequence meets a nontrivial local group",
            };
            let json = json!({ "command": "divisive", "result": "NONE", "budget": budget, "reason": reason });
            (json, vec![vec!["NONE".into(), reason.into()]], 1)
        }
        Divisiveness::Undecided { nodes } => {
            let note = format!("search stopped after {nodes} nodes (budget {budget}); raise --budget or {BUDGET_VAR}");
            let json =
                json!({ "command": "divisive", "result": "UNDECIDED", "budget": budget, "nodes": nodes, "note": note });
            (json, vec![vec!["UNDECIDED".into(), note]], 3)
        }
    };
    let header: &[&str] = if status == 0 {
        &["step", "face", "vertex", "group"]
    } else {
        &["result", "detail"]
    };
    Ok(Outcome {
        report: Report::new(json, header, rows),
        status,
    })
}

/// The sequence given, else a divisive certificate, else the first sequence.
fn choose_sequence(
    pair: &CharacteristicPair,
    seq_from: Option<&Path>,
) -> Result<(RetractionSequence, &'static str), CliError> {
    if let Some(path) = seq_from {
        return Ok((load_sequence(path, pair)?, "file"));
    }
    match is_divisive(pair, Some(budget(None)?)) {
        Ok(Divisiveness::Divisive(seq)) => Ok((seq, "divisive certificate")),
        _ => Ok((first_retraction(&pair.polytope), "first retraction sequence")),
    }
}

fn gkm(path: &Path, seq_from: Option<&Path>) -> Result<Outcome, CliError> {
    let pair = valid_pair(path)?;
    let p = &pair.polytope;
    let (seq, source) = choose_sequence(&pair, seq_from)?;
    let graph = GkmGraph::build(&pair, &seq).map_err(|e| CliError::Input(e.to_string()))?;
    let names = p.vertex_names();
    let order: Vec<&String> = graph.order().iter().map(|&v| &names[v]).collect();
    let edges: Vec<Value> = graph
        .edges()
        .iter()
        .map(|e| {
            json!({
                "endpoints": [names[e.endpoints.0], names[e.endpoints.1]],
                "face": e.face.map(|f| p.face_name(f)),
                "character": e.character,
            })
        })
        .collect();
    let in_neighbors: serde_json::Map<String, Value> = graph
        .order()
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let ns: Vec<&String> = graph
                .in_neighbors(i)
                .iter()
                .map(|&k| &names[graph.order()[k]])
                .collect();
            (names[v].clone(), json!(ns))
        })
        .collect();
    let coprimality = match coprimality_check(&graph) {
        Coprimality::Pass => json!({ "pass": true }),
        Coprimality::Fail { vertex, edges: (i, j) } => {
            let endpoints = |k: usize| {
                let (a, b) = graph.edges()[k].endpoints;
                json!([names[a], names[b]])
            };
            json!({ "pass": false, "vertex": names[vertex], "edges": [endpoints(i), endpoints(j)] })
        }
    };
    let cells = seq.cell_dimensions(p);
    let counts: Vec<i64> = cells.counts.iter().map(|&c| c as i64).collect();
    let h = p.h_vector();
    let pass = coprimality["pass"] == json!(true) && counts == h;
    let rows = graph
        .edges()
        .iter()
        .map(|e| {
            vec![
                format!("{} - {}", names[e.endpoints.0], names[e.endpoints.1]),
                e.face.map(|f| p.face_name(f)).unwrap_or_default(),
                format!("{:?}", e.character),
            ]
        })
        .collect();
    let json = json!({
        "command": "gkm",
        "sequence_source": source,
        "order": order,
        "edges": edges,
        "in_neighbors": in_neighbors,
        "coprimality": coprimality,
        "cell_dimensions": cells.dims,
        "cell_counts": counts,
        "h_vector": h,
        "h_vector_matches": counts == h,
    });
    Ok(Outcome::verdict(
        Report::new(json, &["edge", "face", "character"], rows),
        pass,
    ))
}

fn graph_for(pair: &CharacteristicPair) -> Result<GkmGraph, CliError> {
    GkmGraph::build(pair, &first_retraction(&pair.polytope)).map_err(|e| CliError::Input(e.to_string()))
}

fn check_section_typed<R: CoefficientRing + FromTerms + HasTerms>(
    path: &Path,
    section: &Path,
) -> Result<Outcome, CliError> {
    let pair = valid_pair(path)?;
    let p = &pair.polytope;
    let graph = graph_for(&pair)?;
    let s = load_section::<R>(section, &pair)?;
    let verdict = check_section(&graph, &s).map_err(|e| CliError::input(section, e))?;
    let names = p.vertex_names();
    let edge_json = |i: usize, divisible: bool| {
        let e = &graph.edges()[i];
        json!({
            "endpoints": [names[e.endpoints.0], names[e.endpoints.1]],
            "character": e.character,
            "divisible": divisible,
        })
    };
    let edges: Vec<Value> = verdict.edges.iter().map(|e| edge_json(e.edge, e.divisible)).collect();
    let rows = verdict
        .edges
        .iter()
        .map(|e| {
            let (a, b) = e.endpoints;
            vec![
                format!("{} - {}", names[a], names[b]),
                format!("{:?}", graph.edges()[e.edge].character),
                e.divisible.to_string(),
            ]
        })
        .collect();
    let json = json!({
        "command": "check-section",
        "theory": R::THEORY.to_string(),
        "passes": verdict.passes(),
        "edges": edges,
        "first_failure": verdict.first_failure().map(|e| edge_json(e.edge, false)),
    });
    Ok(Outcome::verdict(
        Report::new(json, &["edge", "character", "divisible"], rows),
        verdict.passes(),
    ))
}

fn check_piecewise_typed<R: CoefficientRing + FromTerms + HasTerms>(
    path: &Path,
    element: &Path,
) -> Result<Outcome, CliError> {
    let pair = valid_pair(path)?;
    let p = &pair.polytope;
    let e = load_element::<R>(element, &pair)?;
    let verdict = check_piecewise(&pair, &e).map_err(|err| CliError::input(element, err))?;
    let failure = verdict
        .first_failure
        .map(|(f, g)| json!({ "face": p.face_name(f), "coface": p.face_name(g) }));
    let detail = match verdict.first_failure {
        Some((f, g)) => format!("{} and {} disagree", p.face_name(f), p.face_name(g)),
        None => "all covering pairs agree".into(),
    };
    let json = json!({
        "command": "check-piecewise",
        "theory": R::THEORY.to_string(),
        "passes": verdict.passes(),
        "covering_pairs": verdict.checked,
        "first_failure": failure,
    });
    let rows = vec![vec![verdict.passes().to_string(), verdict.checked.to_string(), detail]];
    Ok(Outcome::verdict(
        Report::new(json, &["passes", "covering pairs", "detail"], rows),
        verdict.passes(),
    ))
}

fn equiv_roundtrip_typed<R: CoefficientRing + FromTerms + HasTerms>(
    path: &Path,
    section: &Path,
) -> Result<Outcome, CliError> {
    let pair = valid_pair(path)?;
    let p = &pair.polytope;
    let graph = graph_for(&pair)?;
    let s = load_section::<R>(section, &pair)?;
    let in_gamma = check_section(&graph, &s)
        .map_err(|e| CliError::input(section, e))?
        .passes();
    let (piecewise, piecewise_passes, round_trip, witness) = match piecewise_from_section(&pair, &graph, &s) {
        Ok(element) => {
            let passes = check_piecewise(&pair, &element)
                .map_err(|e| CliError::Input(e.to_string()))?
                .passes();
            let back = section_from_piecewise(&pair, &element);
            let faces: serde_json::Map<String, Value> = (0..p.faces().len())
                .map(|f| (p.face_name(f), poly_json(element.representative(f))))
                .collect();
            (Value::Object(faces), passes, back == s, Value::Null)
        }
        Err(GkmError::NotInGamma { from, to, .. }) => {
            let names = p.vertex_names();
            let w = json!({ "kind": "edge condition fails", "edge": [names[from], names[to]] });
            (Value::Null, false, false, w)
        }
        Err(GkmError::Incongruent { face, first, other }) => {
            let names = p.vertex_names();
            let w = json!({
                "kind": "values not congruent on a face",
                "face": p.face_name(face),
                "vertices": [names[first], names[other]],
            });
            (Value::Null, false, false, w)
        }
        Err(e) => return Err(CliError::input(section, e)),
    };
    let face_side = piecewise_passes && round_trip;
    let consistent = in_gamma == face_side;
    let json = json!({
        "command": "equiv-roundtrip",
        "theory": R::THEORY.to_string(),
        "in_gamma": in_gamma,
        "piecewise": piecewise,
        "piecewise_passes": piecewise_passes,
        "round_trip_identity": round_trip,
        "witness": witness,
        "consistent": consistent,
    });
    let rows = vec![
        vec!["section satisfies edge conditions".into(), in_gamma.to_string()],
        vec!["piecewise element compatible".into(), piecewise_passes.to_string()],
        vec!["round trip is the identity".into(), round_trip.to_string()],
        vec!["descriptions agree".into(), consistent.to_string()],
    ];
    Ok(Outcome::verdict(
        Report::new(json, &["check", "result"], rows),
        in_gamma && consistent,
    ))
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Validate { input } => validate(input),
        Command::LocalGroups { input, face } => local_groups(input, face.as_deref()),
        Command::Retract { input, all, cap } => retract(input, *all, *cap),
        Command::Divisive { input, budget } => divisive(input, *budget),
        Command::Gkm { input, seq_from } => gkm(input, seq_from.as_deref()),
        Command::CheckSection { input, theory, section } => match theory {
            TheoryArg::K => check_section_typed::<LaurentPolynomial>(input, section),
            TheoryArg::H => check_section_typed::<GradedPolynomial>(input, section),
        },
        Command::CheckPiecewise { input, theory, element } => match theory {
            TheoryArg::K => check_piecewise_typed::<LaurentPolynomial>(input, element),
            TheoryArg::H => check_piecewise_typed::<GradedPolynomial>(input, element),
        },
        Command::EquivRoundtrip { input, theory, section } => match theory {
            TheoryArg::K => equiv_roundtrip_typed::<LaurentPolynomial>(input, section),
            TheoryArg::H => equiv_roundtrip_typed::<GradedPolynomial>(input, section),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            print!("{}", outcome.report.render(cli.format));
            ExitCode::from(outcome.status)
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
