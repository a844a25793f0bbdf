//! Command-line front end for the exact spectra toolkit.

#![forbid(unsafe_code)]

use std::collections::BTreeMap;
use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use acyclic_spectra::auditor::{
    self, claim_ids, example36_builtin_steps, example36_certificate, run_claim, AuditConfig,
    AuditError, AuditReport, SpectrumData,
};
use acyclic_spectra::exactpoly::{PolyError, Rational};
use acyclic_spectra::graphs::{
    self, figure14_graph, path_cover_number, Graph, GraphError, Tree, Whirl,
};
use acyclic_spectra::polymatrix::{MatError, PolyMatrix};
use acyclic_spectra::spectra::{
    eigen_structure, minimal_polynomial, EigenStructure, RatSymMatrix, RootLocator, SpectraError,
};
use acyclic_spectra::Poly;

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_DISCONNECTED: u8 = 3;
const EXIT_SIZE_CAP: u8 = 4;
const EXIT_FAMILY: u8 = 5;
const EXIT_IO: u8 = 6;

#[derive(Parser)]
#[command(
    name = "acyclic-spectra",
    about = "Exact Smith Normal Forms, eigenvalue multiplicity structure and tree spectral bounds",
    after_help = "Exit codes:\n  0  success / all checks passed\n  1  a requested check failed\n  2  input parse error (also clap usage errors)\n  3  graph disconnected or precondition violated\n  4  brute-force size cap exceeded (override with ACYCLIC_SPECTRA_MAX_N)\n  5  family/parameter mismatch\n  6  io error\n\nFile formats:\n  graph:      line `n`, then `u v` per edge, `#` comments allowed\n  matrix:     line `n`, then n rows of n rationals `p/q`\n  polymatrix: line `rows cols`, then one polynomial entry per line\n  polynomial: `3/2*x^2 - x + 1/3` (whitespace-insensitive)\n\nUse `-` as a file argument to read from stdin."
)]
struct Cli {
    /// Machine-readable JSON output
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Graph parameters (diameter, path cover) and derived spectral bounds
    Analyze {
        /// Graph file
        file: String,
    },
    /// Smith Normal Form of a polynomial matrix with unimodular witnesses
    Snf {
        /// Polynomial matrix file
        file: String,
    },
    /// Exact eigenvalue structure of a symmetric rational matrix (JSON)
    Eig {
        /// Rational symmetric matrix file
        file: String,
    },
    /// Generate a named graph family
    Gen(GenArgs),
    /// Run theorem audit batches over seeded samples
    Audit {
        /// Claim id (see --list) or `all`
        claim: String,
        /// Samples per claim
        #[arg(long, default_value_t = 200)]
        seeds: u64,
        /// Base seed for all sampling
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Brute-force size cap (defaults to ACYCLIC_SPECTRA_MAX_N or 14)
        #[arg(long)]
        max_n: Option<usize>,
        /// List available claim ids and exit
        #[arg(long)]
        list: bool,
    },
    /// Screen a multiplicity list against the necessary conditions on a tree
    Screen {
        /// Graph file (must be a tree)
        file: String,
        /// Comma-separated multiplicities, e.g. 1,2,4,2,1
        mults: String,
    },
    /// Check spectra against the 10-vertex counterexample certificate
    Certify {
        /// Spectrum: 10 comma-separated rationals, or `mult:poly;mult:poly;...`
        /// for grouped symmetric-function data
        sigma: String,
    },
}

#[derive(Args)]
struct GenArgs {
    /// Family: whirl K L | figure2 | figure6 | path N | star N | cycle N |
    /// random N SEED | figure14 (with --host/--anchors/--ell)
    family: String,
    /// Numeric family parameters
    params: Vec<String>,
    /// Emit the 0/1 adjacency matrix instead of the graph file
    #[arg(long)]
    adjacency: bool,
    /// Host graph file for figure14
    #[arg(long)]
    host: Option<String>,
    /// Three anchor vertices for figure14, e.g. 1,3,5
    #[arg(long)]
    anchors: Option<String>,
    /// Leg length for figure14
    #[arg(long)]
    ell: Option<usize>,
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

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        let code = match &e {
            GraphError::Parse(_) => EXIT_PARSE,
            GraphError::Disconnected => EXIT_DISCONNECTED,
            GraphError::SizeCapExceeded { .. } => EXIT_SIZE_CAP,
            _ => EXIT_FAMILY,
        };
        Failure::new(code, format!("{e}"))
    }
}

impl From<MatError> for Failure {
    fn from(e: MatError) -> Self {
        let code = match &e {
            MatError::Parse(_) => EXIT_PARSE,
            MatError::SizeCapExceeded { .. } => EXIT_SIZE_CAP,
            _ => EXIT_FAMILY,
        };
        Failure::new(code, format!("{e}"))
    }
}

impl From<SpectraError> for Failure {
    fn from(e: SpectraError) -> Self {
        let code = match &e {
            SpectraError::NotSymmetric | SpectraError::NotSquare => EXIT_PARSE,
            SpectraError::Graph(GraphError::Parse(_)) => EXIT_PARSE,
            SpectraError::Mat(MatError::Parse(_)) => EXIT_PARSE,
            _ => EXIT_FAMILY,
        };
        Failure::new(code, format!("{e}"))
    }
}

impl From<PolyError> for Failure {
    fn from(e: PolyError) -> Self {
        let code = match &e {
            PolyError::Parse(_) => EXIT_PARSE,
            _ => EXIT_FAMILY,
        };
        Failure::new(code, format!("{e}"))
    }
}

impl From<AuditError> for Failure {
    fn from(e: AuditError) -> Self {
        let code = match &e {
            AuditError::Graph(g) => return Failure::from(g.clone()),
            AuditError::Mat(m) => return Failure::from(m.clone()),
            AuditError::Spectra(s) => return Failure::from(s.clone()),
            AuditError::Poly(p) => return Failure::from(p.clone()),
            AuditError::SigmaShape(_) | AuditError::MalformedStep(_) => EXIT_PARSE,
            _ => EXIT_FAMILY,
        };
        Failure::new(code, format!("{e}"))
    }
}

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::new(EXIT_IO, format!("stdin: {e}")))?;
        return Ok(buf);
    }
    std::fs::read_to_string(path).map_err(|e| Failure::new(EXIT_IO, format!("{path}: {e}")))
}

fn brute_cap() -> usize {
    std::env::var("ACYCLIC_SPECTRA_MAX_N")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(graphs::DEFAULT_EXHAUSTIVE_CAP)
}

/// Ceiling of a/b for positive b.
fn ceil_div(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    (a + b - 1).div_euclid(b)
}

fn locator_json(root: &RootLocator) -> Value {
    match root {
        RootLocator::Exact(r) => json!(format!("{r}")),
        RootLocator::Range(iv) => json!({
            "lo": format!("{}", iv.lo()),
            "hi": format!("{}", iv.hi()),
        }),
    }
}

fn eigen_json(s: &EigenStructure, minpoly: &Poly) -> Value {
    let groups: Vec<Value> = s
        .groups
        .iter()
        .map(|g| json!({"root": locator_json(&g.root), "mult": g.multiplicity}))
        .collect();
    json!({
        "charpoly": format!("{}", s.charpoly),
        "minpoly": format!("{minpoly}"),
        "groups": groups,
        "q": s.q,
    })
}

fn report_json(r: &AuditReport) -> Value {
    let violations: Vec<Value> = r
        .violations
        .iter()
        .map(|v| {
            json!({
                "instance": v.instance,
                "expected": v.expected,
                "observed": v.observed,
            })
        })
        .collect();
    json!({
        "claim": r.claim,
        "checked": r.checked,
        "violations": violations,
        "passed": r.passed(),
    })
}

fn cmd_analyze(file: &str, as_json: bool) -> Result<u8, Failure> {
    let text = read_input(file)?;
    let g = Graph::from_text(&text)?;
    if !g.is_connected() {
        return Err(Failure::new(EXIT_DISCONNECTED, "graph is disconnected"));
    }
    let d = g.diameter()?;
    let is_tree = g.is_tree();
    let mut q_lower = d as i64 + 1;
    let mut whirl_info: Option<(usize, usize)> = None;
    let mut p_info: Option<(usize, Vec<Vec<u32>>)> = None;
    if is_tree {
        let tree = Tree::new(g.clone()).expect("checked");
        let (p, family) = path_cover_number(&tree);
        p_info = Some((p, family.paths().to_vec()));
        if let Some(w) = Whirl::detect(&g) {
            whirl_info = Some((w.k, w.ell));
            if w.k == 3 && w.ell >= 2 {
                // q >= 9d/8 + 1/2
                q_lower = q_lower.max(ceil_div(9 * d as i64 + 4, 8));
            }
            if w.k >= 3 && w.ell >= 2 {
                // q >= d + 1 + (k-2)(l-1)/(k-1)^2
                let k = w.k as i64;
                let l = w.ell as i64;
                let den = (k - 1) * (k - 1);
                q_lower = q_lower.max(d as i64 + 1 + ceil_div((k - 2) * (l - 1), den));
            }
        }
    }
    if as_json {
        let mut obj = json!({
            "n": g.n(),
            "tree": is_tree,
            "d": d,
        });
        let map = obj.as_object_mut().unwrap();
        if let Some((p, witness)) = &p_info {
            map.insert("p".into(), json!(p));
            map.insert("M_upper".into(), json!(p));
            map.insert("q_lower".into(), json!(q_lower));
            map.insert("witness".into(), json!(witness));
        }
        if let Some((k, l)) = whirl_info {
            map.insert("whirl".into(), json!({"k": k, "l": l}));
        }
        println!("{obj}");
    } else {
        let mut line = format!("n={} tree={} d={}", g.n(), is_tree, d);
        if let Some((p, _)) = &p_info {
            line.push_str(&format!(" p={p} M_upper={p} q_lower={q_lower}"));
        }
        if let Some((k, l)) = whirl_info {
            line.push_str(&format!(" whirl=({k},{l})"));
        }
        println!("{line}");
        if let Some((_, witness)) = &p_info {
            let parts: Vec<String> = witness
                .iter()
                .map(|p| {
                    p.iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join("-")
                })
                .collect();
            println!("cover: {}", parts.join(" | "));
        }
    }
    Ok(0)
}

fn cmd_snf(file: &str, as_json: bool) -> Result<u8, Failure> {
    let text = read_input(file)?;
    let m = PolyMatrix::from_text(&text)?;
    let snf = m.smith_normal_form()?;
    if as_json {
        let matrix_rows = |mat: &PolyMatrix| -> Vec<Vec<String>> {
            (0..mat.rows())
                .map(|i| (0..mat.cols()).map(|j| format!("{}", mat.get(i, j))).collect())
                .collect()
        };
        let obj = json!({
            "invariant_factors": snf
                .invariant_factors
                .iter()
                .map(|e| format!("{e}"))
                .collect::<Vec<_>>(),
            "rank": snf.rank(),
            "s": matrix_rows(&snf.s),
            "p": matrix_rows(&snf.p),
            "q": matrix_rows(&snf.q),
            "det_p": format!("{}", snf.det_p),
            "det_q": format!("{}", snf.det_q),
            "verified": true,
        });
        println!("{obj}");
    } else {
        println!(
            "invariant factors: {}",
            snf.invariant_factors
                .iter()
                .map(|e| format!("{e}"))
                .collect::<Vec<_>>()
                .join(", ")
        );
        println!("rank: {}", snf.rank());
        println!("det P = {}, det Q = {} (constants)", snf.det_p, snf.det_q);
        println!("S:\n{}", snf.s.to_text());
        println!("P:\n{}", snf.p.to_text());
        println!("Q:\n{}", snf.q.to_text());
        println!("verified: P*M*Q = S");
    }
    Ok(0)
}

fn cmd_eig(file: &str) -> Result<u8, Failure> {
    let text = read_input(file)?;
    let a = RatSymMatrix::from_text(&text)?;
    let s = eigen_structure(&a);
    let minpoly = minimal_polynomial(&a)?;
    println!("{}", eigen_json(&s, &minpoly));
    Ok(0)
}

fn graph_output(g: &Graph, adjacency: bool) -> String {
    if adjacency {
        RatSymMatrix::adjacency(g).to_text()
    } else {
        g.to_text()
    }
}

fn cmd_gen(args: &GenArgs) -> Result<u8, Failure> {
    let need = |idx: usize| -> Result<usize, Failure> {
        args.params
            .get(idx)
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| Failure::new(EXIT_FAMILY, "missing or invalid numeric parameter"))
    };
    let graph: Graph = match args.family.as_str() {
        "whirl" => graphs::whirl(need(0)?, need(1)?)?.tree.into_graph(),
        "figure2" => graphs::figure2_tree().into_graph(),
        "figure6" => graphs::figure6_tree().into_graph(),
        "path" => graphs::path_graph(need(0)?)?.into_graph(),
        "star" => graphs::star_graph(need(0)?)?.into_graph(),
        "cycle" => graphs::cycle_graph(need(0)?)?,
        "random" => {
            use rand_core::SeedableRng;
            let n = need(0)?;
            let seed = need(1)? as u64;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            graphs::random_tree(n, &mut rng).into_graph()
        }
        "figure14" => {
            let host_path = args
                .host
                .as_ref()
                .ok_or_else(|| Failure::new(EXIT_FAMILY, "figure14 requires --host"))?;
            let anchors_raw = args
                .anchors
                .as_ref()
                .ok_or_else(|| Failure::new(EXIT_FAMILY, "figure14 requires --anchors a,b,c"))?;
            let ell = args
                .ell
                .ok_or_else(|| Failure::new(EXIT_FAMILY, "figure14 requires --ell"))?;
            let host = Graph::from_text(&read_input(host_path)?)?;
            let parts: Vec<u32> = anchors_raw
                .split(',')
                .map(|t| t.trim().parse())
                .collect::<Result<_, _>>()
                .map_err(|_| Failure::new(EXIT_FAMILY, "anchors must be three vertices a,b,c"))?;
            if parts.len() != 3 {
                return Err(Failure::new(EXIT_FAMILY, "anchors must be three vertices a,b,c"));
            }
            figure14_graph(&host, (parts[0], parts[1], parts[2]), ell)?.graph
        }
        other => {
            return Err(Failure::new(
                EXIT_FAMILY,
                format!("unknown family `{other}` (whirl, figure2, figure6, path, star, cycle, random, figure14)"),
            ))
        }
    };
    print!("{}", graph_output(&graph, args.adjacency));
    Ok(0)
}

fn cmd_audit(
    claim: &str,
    seeds: u64,
    seed: u64,
    max_n: Option<usize>,
    list: bool,
    as_json: bool,
) -> Result<u8, Failure> {
    if list {
        for id in claim_ids() {
            println!("{id}");
        }
        return Ok(0);
    }
    let cfg = AuditConfig {
        seeds,
        base_seed: seed,
        exhaustive_cap: max_n.unwrap_or_else(brute_cap),
        ..AuditConfig::default()
    };
    let ids: Vec<&str> = if claim == "all" {
        claim_ids().to_vec()
    } else {
        if !claim_ids().contains(&claim) {
            return Err(Failure::new(EXIT_FAMILY, format!("unknown claim id `{claim}`")));
        }
        vec![claim]
    };
    let mut all_passed = true;
    let mut reports = Vec::new();
    for id in ids {
        let report = run_claim(id, &cfg)?;
        all_passed &= report.passed();
        if as_json {
            reports.push(report_json(&report));
        } else {
            let status = if report.passed() { "pass" } else { "FAIL" };
            println!("{id}: {status} (checked {})", report.checked);
            for v in &report.violations {
                println!("  violation [{}]: expected {}, observed {}", v.instance, v.expected, v.observed);
            }
        }
    }
    if as_json {
        println!("{}", Value::Array(reports));
    }
    Ok(if all_passed { 0 } else { EXIT_CHECK_FAILED })
}

fn cmd_screen(file: &str, mults: &str, as_json: bool) -> Result<u8, Failure> {
    let text = read_input(file)?;
    let g = Graph::from_text(&text)?;
    let tree = Tree::new(g).map_err(|e| Failure::new(EXIT_FAMILY, format!("{e}")))?;
    let parsed: Result<Vec<usize>, _> = mults.split(',').map(|t| t.trim().parse()).collect();
    let parsed = parsed.map_err(|_| Failure::new(EXIT_PARSE, "multiplicities must be integers"))?;
    let report = auditor::screen_multiplicity_list(&tree, &parsed, brute_cap())?;
    if as_json {
        println!("{}", report_json(&report));
    } else if report.passed() {
        println!("pass: {mults} satisfies the necessary conditions");
    } else {
        let v = &report.violations[0];
        println!("fail [{}]: expected {}, observed {}", v.instance, v.expected, v.observed);
    }
    Ok(if report.passed() { 0 } else { EXIT_CHECK_FAILED })
}

/// Parses `a,b,...` as ten rationals or `mult:poly;mult:poly;...` as grouped
/// symmetric-function data.
fn parse_sigma(text: &str) -> Result<SpectrumData, Failure> {
    if text.contains(':') {
        let mut map = BTreeMap::new();
        for part in text.split(';') {
            let (m, poly) = part
                .split_once(':')
                .ok_or_else(|| Failure::new(EXIT_PARSE, "expected mult:poly groups"))?;
            let mult: usize = m
                .trim()
                .parse()
                .map_err(|_| Failure::new(EXIT_PARSE, "multiplicity must be an integer"))?;
            let poly: Poly = poly.parse()?;
            map.insert(mult, poly);
        }
        Ok(SpectrumData::Grouped(map))
    } else {
        let values: Result<Vec<Rational>, _> = text.split(',').map(|t| t.trim().parse()).collect();
        let values = values.map_err(|e| Failure::new(EXIT_PARSE, format!("{e}")))?;
        Ok(SpectrumData::Explicit(values))
    }
}

fn cmd_certify(sigma: &str, as_json: bool) -> Result<u8, Failure> {
    let data = parse_sigma(sigma)?;
    let steps = example36_builtin_steps();
    let report = example36_certificate(&steps, &data)?;
    if as_json {
        println!("{}", report_json(&report));
    } else if report.passed() {
        println!("pass: sigma satisfies the derived trace constraint");
    } else {
        let v = &report.violations[0];
        println!("fail: expected {}, observed {}", v.expected, v.observed);
    }
    Ok(if report.passed() { 0 } else { EXIT_CHECK_FAILED })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analyze { file } => cmd_analyze(file, cli.json),
        Command::Snf { file } => cmd_snf(file, cli.json),
        Command::Eig { file } => cmd_eig(file),
        Command::Gen(args) => cmd_gen(args),
        Command::Audit {
            claim,
            seeds,
            seed,
            max_n,
            list,
        } => cmd_audit(claim, *seeds, *seed, *max_n, *list, cli.json),
        Command::Screen { file, mults } => cmd_screen(file, mults, cli.json),
        Command::Certify { sigma } => cmd_certify(sigma, cli.json),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
