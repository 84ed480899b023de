//! `fuscat`: fusion in free products, polygon coherence audits and
//! Fuss-Catalan reports.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage or parse error,
//! 3 ring or data error.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::builder::TypedValueParser;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use fuscat_core::diagram::{enumerate_basis, DEFAULT_GUARD_POINTS};
use fuscat_core::fuss_catalan::{
    all_middle_patterns, bijectivity_check, branching_check, enumerate_module_basis, hecke_check,
    hom_module_match, partition_identity_check,
};
use fuscat_core::polygon::{
    coherence_check, enumerate_triangulations, fan_triangulation, is_valid_shortcut, length, polygon_dim,
    shortcut, MAX_ENUMERATION_EDGES,
};
use fuscat_core::{
    boundary_word, dim_formula, is_generic, AlgebraElement, FcError, FreeProductError, FreeProductRing,
    FusionRing, Genericity, LabeledPolygon, MiddlePattern, ParamSpec, Polygon, PolygonError, Triangulation,
    Var, Word,
};

#[derive(Parser)]
#[command(name = "fuscat", version, about = "Free products of fusion rules and Fuss-Catalan diagram algebras")]
struct Cli {
    /// Fusion ring factor: `su2` or a JSON file. Repeat for each factor;
    /// defaults to two su2 factors.
    #[arg(long = "ring", global = true)]
    rings: Vec<String>,

    #[arg(long, value_enum, default_value_t = Output::Json, global = true)]
    output: Output,

    /// Largest number of boundary points in diagram enumerations.
    #[arg(long, default_value_t = DEFAULT_GUARD_POINTS,
          value_parser = clap::value_parser!(u64).range(2..=DEFAULT_GUARD_POINTS as u64)
              .map(|v| v as usize),
          global = true)]
    guard_points: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose x ⊗ y into simple words.
    Fuse { x: String, y: String },
    /// Dimension of Hom(x ⊗ y, z).
    Triangle { x: String, y: String, z: String },
    /// Polygon space dimensions for every triangulation (or one).
    Polygon {
        /// Label of the bottom edge.
        #[arg(long)]
        bottom: String,
        /// Labels of the upper edges, left to right.
        #[arg(required = true)]
        edges: Vec<String>,
        /// Only this triangulation, as `i-j,k-l`.
        #[arg(long)]
        triangulation: Option<String>,
    },
    /// Short-cut path from the fan at vertex v to a triangulation.
    Shortcut {
        /// Number of polygon edges.
        n: usize,
        v: usize,
        /// Target triangulation as `i-j,k-l`.
        #[arg(default_value = "", allow_hyphen_values = true)]
        triangulation: String,
    },
    /// Check that the polygon dimension is independent of the triangulation.
    Coherence {
        #[arg(long)]
        bottom: String,
        #[arg(required = true)]
        edges: Vec<String>,
        /// Distinguished vertex for short-cuts.
        #[arg(long, default_value_t = 0)]
        vertex: usize,
    },
    /// Fuss-Catalan algebra reports.
    Fc {
        #[arg(value_enum)]
        mode: FcMode,
        /// Number of colors.
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Middle pattern such as `x1x1x2`; all patterns when omitted.
        #[arg(long)]
        sigma: Option<String>,
        /// Branching color; defaults to the color of letter n+1 of w.
        #[arg(long)]
        y: Option<u16>,
        /// Branching exponent; all k when omitted.
        #[arg(long)]
        k: Option<usize>,
        /// Loop values in traces: the variables a_j or t_j + t_j^-1.
        #[arg(long, value_enum, default_value_t = LoopValues::A)]
        loop_values: LoopValues,
    },
    /// Semisimplicity verdict for loop parameters.
    Semisimple {
        /// `angle:p/q` for a = 2cos(πp/q), or `value:<a>[@<tolerance>]`.
        #[arg(long = "params", required = true, num_args = 1..)]
        params: Vec<String>,
        /// Largest n tested for numeric parameters.
        #[arg(long, default_value_t = 64,
              value_parser = clap::value_parser!(u64).range(1..))]
        horizon: u64,
    },
    /// Load and validate fusion ring files.
    RingValidate {
        #[arg(required = true)]
        sources: Vec<String>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FcMode {
    Dims,
    Basis,
    Trace,
    Branch,
    Identity,
    Modules,
    Match,
    Bijectivity,
    Hecke,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LoopValues {
    A,
    T,
}

enum CliError {
    Usage(String),
    Data(String),
}

impl From<FreeProductError> for CliError {
    fn from(e: FreeProductError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<PolygonError> for CliError {
    fn from(e: PolygonError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<FcError> for CliError {
    fn from(e: FcError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<fuscat_core::DiagramError> for CliError {
    fn from(e: fuscat_core::DiagramError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<fuscat_core::LaurentError> for CliError {
    fn from(e: fuscat_core::LaurentError) -> Self {
        CliError::Usage(e.to_string())
    }
}

/// A command's result: JSON body, text rendering, and whether its checks passed.
struct Report {
    json: Value,
    text: String,
    passed: bool,
}

impl Report {
    fn ok(json: Value, text: String) -> Self {
        Report {
            json,
            text,
            passed: true,
        }
    }
}

fn load_ring(source: &str) -> Result<FusionRing, CliError> {
    if source == "su2" {
        return Ok(FusionRing::su2());
    }
    let text = std::fs::read_to_string(source).map_err(|e| CliError::Data(format!("cannot read {source}: {e}")))?;
    FusionRing::from_json(&text).map_err(|e| CliError::Data(format!("{source}: {e}")))
}

fn load_rings(sources: &[String]) -> Result<FreeProductRing, CliError> {
    let factors = if sources.is_empty() {
        vec![FusionRing::su2(), FusionRing::su2()]
    } else {
        sources.iter().map(|s| load_ring(s)).collect::<Result<_, _>>()?
    };
    FreeProductRing::new(factors).map_err(|e| CliError::Data(e.to_string()))
}

fn word(fp: &FreeProductRing, text: &str) -> Result<Word, CliError> {
    fp.parse_word(text)
        .map_err(|e| CliError::Usage(format!("cannot parse word `{text}`: {e}")))
}

fn sum_json(fp: &FreeProductRing, sum: &fuscat_core::FormalSum) -> Value {
    Value::Array(
        sum.iter()
            .map(|(w, k)| json!({"word": fp.format_word(w), "multiplicity": k}))
            .collect(),
    )
}

fn labeled_polygon(fp: &FreeProductRing, bottom: &str, edges: &[String]) -> Result<LabeledPolygon, CliError> {
    let edges = edges.iter().map(|e| word(fp, e)).collect::<Result<Vec<_>, _>>()?;
    Ok(LabeledPolygon::new(word(fp, bottom)?, edges)?)
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let guard = cli.guard_points;
    match &cli.command {
        Command::Fuse { x, y } => {
            let fp = load_rings(&cli.rings)?;
            let (x, y) = (word(&fp, x)?, word(&fp, y)?);
            let sum = fp.fuse_words(&x, &y);
            let result = fp.format_sum(&sum);
            Ok(Report::ok(
                json!({
                    "command": "fuse",
                    "x": fp.format_word(&x),
                    "y": fp.format_word(&y),
                    "result": result,
                    "terms": sum_json(&fp, &sum),
                }),
                result,
            ))
        }
        Command::Triangle { x, y, z } => {
            let fp = load_rings(&cli.rings)?;
            let (x, y, z) = (word(&fp, x)?, word(&fp, y)?, word(&fp, z)?);
            let dim = fp.triangle_dim(&x, &y, &z);
            let candidates: Vec<String> = fp.squeeze_candidates(&x, &y).iter().map(|w| fp.format_word(w)).collect();
            Ok(Report::ok(
                json!({
                    "command": "triangle",
                    "x": fp.format_word(&x),
                    "y": fp.format_word(&y),
                    "z": fp.format_word(&z),
                    "dim": dim,
                    "squeeze_candidates": candidates,
                }),
                dim.to_string(),
            ))
        }
        Command::Polygon {
            bottom,
            edges,
            triangulation,
        } => {
            let fp = load_rings(&cli.rings)?;
            let labeled = labeled_polygon(&fp, bottom, edges)?;
            let polygon = labeled.polygon();
            let ts = match triangulation {
                Some(t) => vec![Triangulation::parse(polygon, t)?],
                None => {
                    if polygon.n_edges() > MAX_ENUMERATION_EDGES {
                        return Err(PolygonError::TooLarge {
                            what: "triangulation enumeration",
                            n: polygon.n_edges(),
                            max: MAX_ENUMERATION_EDGES,
                        }
                        .into());
                    }
                    eprintln!("enumerating triangulations of a {}-gon", polygon.n_edges());
                    enumerate_triangulations(polygon.n_edges())?
                }
            };
            let mut dims = Vec::new();
            let mut text = String::new();
            for t in &ts {
                let d = polygon_dim(&fp, &labeled, t)?;
                dims.push(json!({"triangulation": t.to_string(), "dim": d}));
                let _ = writeln!(text, "{}\t{}", if t.diagonals().is_empty() { "-".into() } else { t.to_string() }, d);
            }
            Ok(Report::ok(
                json!({"command": "polygon", "n_edges": polygon.n_edges(), "dims": dims}),
                text.trim_end().to_string(),
            ))
        }
        Command::Shortcut { n, v, triangulation } => {
            if *n > MAX_ENUMERATION_EDGES {
                return Err(PolygonError::TooLarge {
                    what: "shortcut",
                    n: *n,
                    max: MAX_ENUMERATION_EDGES,
                }
                .into());
            }
            let polygon = Polygon::new(*n)?;
            let target = Triangulation::parse(polygon, triangulation)?;
            let path = shortcut(polygon, *v, &target)?;
            let valid = is_valid_shortcut(&path, *v, &target);
            let strings: Vec<String> = path.iter().map(|t| t.to_string()).collect();
            let lengths: Vec<usize> = path.iter().map(|t| length(t, *v)).collect();
            let text = strings
                .iter()
                .zip(&lengths)
                .map(|(s, l)| format!("{s}\t{l}"))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Report {
                json: json!({
                    "command": "shortcut",
                    "n_edges": n,
                    "vertex": v,
                    "fan": fan_triangulation(polygon, *v)?.to_string(),
                    "target": target.to_string(),
                    "path": strings,
                    "lengths": lengths,
                    "steps": path.len() - 1,
                    "valid": valid,
                }),
                text,
                passed: valid,
            })
        }
        Command::Coherence { bottom, edges, vertex } => {
            let fp = load_rings(&cli.rings)?;
            let labeled = labeled_polygon(&fp, bottom, edges)?;
            eprintln!("checking all triangulations of a {}-gon", labeled.polygon().n_edges());
            let report = coherence_check(&fp, &labeled, *vertex)?;
            let mut json = serde_json::to_value(&report).expect("report serializes");
            json["command"] = json!("coherence");
            let text = format!(
                "{} triangulations, dims {}, flip graph {}, shortcuts {}: {}",
                report.dims.len(),
                match report.common_dim {
                    Some(d) => format!("all {d}"),
                    None => "DISAGREE".into(),
                },
                if report.flip_graph_connected { "connected" } else { "DISCONNECTED" },
                if report.shortcuts_valid { "valid" } else { "INVALID" },
                if report.passed { "pass" } else { "FAIL" },
            );
            Ok(Report {
                json,
                text,
                passed: report.passed,
            })
        }
        Command::Fc {
            mode,
            m,
            n,
            sigma,
            y,
            k,
            loop_values,
        } => fc(*mode, *m, *n, sigma.as_deref(), *y, *k, *loop_values, guard),
        Command::Semisimple { params, horizon } => {
            let mut verdicts = Vec::new();
            let mut text = String::new();
            let mut all_generic = true;
            for p in params {
                let spec = ParamSpec::parse(p)?;
                let g = is_generic(&spec, *horizon)?;
                if !matches!(g, Genericity::Generic { .. }) {
                    all_generic = false;
                }
                let mut v = serde_json::to_value(&g).expect("verdict serializes");
                v["param"] = json!(spec.to_string());
                v["value"] = json!(spec.value());
                verdicts.push(v);
                let line = match &g {
                    Genericity::Generic { horizon: None } => "Generic".to_string(),
                    Genericity::Generic { horizon: Some(h) } => format!("Generic (checked n ≤ {h})"),
                    Genericity::NonGeneric { witness } => format!("NonGeneric witness {witness}"),
                    Genericity::Unknown { reason } => format!("Unknown ({reason})"),
                };
                let _ = writeln!(text, "{spec}\t{line}");
            }
            Ok(Report::ok(
                json!({"command": "semisimple", "horizon": horizon, "verdicts": verdicts, "all_generic": all_generic}),
                text.trim_end().to_string(),
            ))
        }
        Command::RingValidate { sources } => {
            let mut rings = Vec::new();
            let mut text = String::new();
            for s in sources {
                let ring = load_ring(s)?;
                let simples = ring.simples().map(|ls| ls.iter().map(|&l| ring.label_name(l)).collect::<Vec<_>>());
                let associative = ring.is_associative();
                rings.push(json!({
                    "source": s,
                    "name": ring.name(),
                    "valid": true,
                    "simples": simples,
                    "associative": associative,
                }));
                let _ = writeln!(
                    text,
                    "{s}: {} valid{}",
                    ring.name(),
                    if associative { "" } else { ", NOT associative" }
                );
            }
            Ok(Report::ok(
                json!({"command": "ring-validate", "rings": rings}),
                text.trim_end().to_string(),
            ))
        }
    }
}

fn sigma_list(sigma: Option<&str>, m: usize, max_len: usize) -> Result<Vec<MiddlePattern>, CliError> {
    Ok(match sigma {
        Some(s) => vec![MiddlePattern::parse(s, m)?],
        None => all_middle_patterns(m, max_len),
    })
}

#[allow(clippy::too_many_arguments)]
fn fc(
    mode: FcMode,
    m: usize,
    n: usize,
    sigma: Option<&str>,
    y: Option<u16>,
    k: Option<usize>,
    loop_values: LoopValues,
    guard: usize,
) -> Result<Report, CliError> {
    if m == 0 {
        return Err(CliError::Usage("--m must be at least 1".into()));
    }
    let header = |mode: &str| json!({"command": "fc", "mode": mode, "m": m, "n": n});
    match mode {
        FcMode::Dims => {
            let formula = dim_formula(m, n);
            eprintln!("enumerating A_{n} for m = {m}");
            let enumerated = enumerate_basis(m, n, guard)?.len() as u128;
            let mut json = header("dims");
            json["dim_formula"] = json!(formula);
            json["enumerated"] = json!(enumerated);
            json["boundary"] = json!(boundary_word(m, n).to_string());
            Ok(Report {
                json,
                text: formula.to_string(),
                passed: formula == enumerated,
            })
        }
        FcMode::Basis => {
            let basis: Vec<String> = enumerate_basis(m, n, guard)?.iter().map(|d| d.to_string()).collect();
            let text = basis.join("\n");
            let mut json = header("basis");
            json["basis"] = json!(basis);
            Ok(Report::ok(json, text))
        }
        FcMode::Trace => {
            let var = match loop_values {
                LoopValues::A => Var::A,
                LoopValues::T => Var::T,
            };
            let mut traces = Vec::new();
            let mut text = String::new();
            for d in enumerate_basis(m, n, guard)? {
                let tr = AlgebraElement::diagram(d.clone(), var).markov_trace()?;
                traces.push(json!({"diagram": d.to_string(), "trace": tr.to_string()}));
                let _ = writeln!(text, "{d}\t{tr}");
            }
            let mut json = header("trace");
            json["traces"] = json!(traces);
            Ok(Report::ok(json, text.trim_end().to_string()))
        }
        FcMode::Branch => {
            let y_default = boundary_word(m, n + 1).colors()[n].index;
            let y = y.unwrap_or(y_default);
            let mut reports = Vec::new();
            let mut text = String::new();
            for s in sigma_list(sigma, m, n)? {
                let ks: Vec<usize> = match k {
                    Some(k) => vec![k],
                    None => (1..=(n + 1).saturating_sub(s.len()).max(1)).collect(),
                };
                for k in ks {
                    let r = branching_check(&s, y, k, m, n, guard)?;
                    let _ = writeln!(
                        text,
                        "σ={} y=x{} k={}: {} = {} + {} {}",
                        r.sigma, r.y, r.k, r.upper, r.lower_minus, r.lower_plus,
                        if r.holds { "ok" } else { "FAIL" }
                    );
                    reports.push(r);
                }
            }
            let passed = reports.iter().all(|r| r.holds);
            let mut json = header("branch");
            json["checks"] = serde_json::to_value(&reports).expect("reports serialize");
            json["passed"] = json!(passed);
            Ok(Report {
                json,
                text: text.trim_end().to_string(),
                passed,
            })
        }
        FcMode::Identity => {
            let r = partition_identity_check(m, n, guard)?;
            let text = format!("{} = {}: {}", r.lhs, r.rhs, if r.holds { "pass" } else { "FAIL" });
            let mut json = serde_json::to_value(&r).expect("report serializes");
            json["command"] = json!("fc");
            json["mode"] = json!("identity");
            Ok(Report {
                json,
                text,
                passed: r.holds,
            })
        }
        FcMode::Modules => {
            let mut modules = Vec::new();
            let mut text = String::new();
            for s in sigma_list(sigma, m, n)? {
                let basis = enumerate_module_basis(&s, m, n, guard)?;
                if basis.is_empty() && sigma.is_none() {
                    continue;
                }
                let strings: Vec<String> = basis.iter().map(|d| d.to_string()).collect();
                let _ = writeln!(text, "{}\t{}", if s.is_empty() { "∅".into() } else { s.to_string() }, basis.len());
                modules.push(json!({"sigma": s.to_string(), "dim": basis.len(), "basis": strings}));
            }
            let mut json = header("modules");
            json["modules"] = json!(modules);
            Ok(Report::ok(json, text.trim_end().to_string()))
        }
        FcMode::Match => {
            let mut reports = Vec::new();
            let mut text = String::new();
            for s in sigma_list(sigma, m, n)? {
                let r = hom_module_match(&s, m, n, guard)?;
                if sigma.is_none() && r.module_dim == 0 && r.hom_dim == 0 {
                    continue;
                }
                let _ = writeln!(
                    text,
                    "σ={} s={}: {} = {} {}",
                    r.sigma, r.simple, r.module_dim, r.hom_dim,
                    if r.holds { "ok" } else { "FAIL" }
                );
                reports.push(r);
            }
            let passed = reports.iter().all(|r| r.holds);
            let mut json = header("match");
            json["checks"] = serde_json::to_value(&reports).expect("reports serialize");
            json["passed"] = json!(passed);
            Ok(Report {
                json,
                text: text.trim_end().to_string(),
                passed,
            })
        }
        FcMode::Bijectivity => {
            let r = bijectivity_check(m, n, guard)?;
            let text = format!(
                "dim A_{n} = {}; enumerated {}; Σ hom² = {}; Σ (dim V_σ)² = {}: {}",
                r.dim_formula, r.basis_count, r.hom_square_sum, r.module_square_sum,
                if r.holds { "pass" } else { "FAIL" }
            );
            let mut json = serde_json::to_value(&r).expect("report serializes");
            json["command"] = json!("fc");
            json["mode"] = json!("bijectivity");
            Ok(Report {
                json,
                text,
                passed: r.holds,
            })
        }
        FcMode::Hecke => {
            if m != 1 {
                return Err(CliError::Usage("hecke mode needs --m 1".into()));
            }
            let r = hecke_check(n, guard)?;
            let text = r
                .checks
                .iter()
                .map(|c| format!("{}: {}", c.name, if c.holds { "ok" } else { "FAIL" }))
                .collect::<Vec<_>>()
                .join("\n");
            let mut json = serde_json::to_value(&r).expect("report serializes");
            json["command"] = json!("fc");
            json["mode"] = json!("hecke");
            Ok(Report {
                json,
                text,
                passed: r.holds,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            match cli.output {
                Output::Json => {
                    let mut json = report.json;
                    json["schema"] = json!("1");
                    println!("{}", serde_json::to_string_pretty(&json).expect("json output"));
                }
                Output::Text => {
                    if !report.text.is_empty() {
                        println!("{}", report.text);
                    }
                }
            }
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Data(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
