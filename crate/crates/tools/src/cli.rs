//! The `itp` command: argument definitions and command implementations.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use itp_core::eqc::{solve_eqc_with, EqcConfig, EqcInstance};
use itp_core::fpt::{
    coloring_with, dominating_set_with, multicoloring_with, vertex_cover_with, FptConfig, MulticolorWeights,
};
use itp_core::gadgets::{
    build_reduction_graph, chain, coloring_from_packing, expand, flower, normalize_exact, reduce_binpacking_to_eqc,
    BinPackingInstance, Multiplicity,
};
use itp_core::graph::{
    equitable_violation, generate, is_dominating_set, is_proper_coloring, is_vertex_cover, Family,
};
use itp_core::ilp::SolverConfig;
use itp_core::oracles::{
    bf_binpacking, bf_chromatic_with, bf_dominating_set, bf_equitable_with, bf_multicolor_with, bf_vertex_cover,
    OracleBudget,
};
use itp_core::{type_sequence, ColoringAssignment, Graph, NodeSet};
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::formats::{parse_graph, write_graph, Format, ParseError};
use crate::report::{
    Certificate, EqcReport, InstanceFile, OracleReport, RolesFile, RunReport, SequenceReport, SolveReport,
    VerifyReport,
};

#[derive(Debug, thiserror::Error)]
pub enum ToolError {
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] itp_core::Error),
}

impl ToolError {
    /// 2 for bad input, 3 for a cap or budget refusal, 4 for a failed internal check.
    pub fn exit_code(&self) -> i32 {
        match self {
            ToolError::Core(e) if e.is_refusal() => 3,
            ToolError::Core(itp_core::Error::InvariantViolated(_)) => 4,
            _ => 2,
        }
    }
}

type Result<T> = std::result::Result<T, ToolError>;

#[derive(Debug, Parser)]
#[command(name = "itp", version, about = "Type partitions, iterated type graphs and the solvers built on them")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Problem {
    /// Minimum dominating set.
    Ds,
    /// Minimum vertex cover.
    Vc,
    /// Minimum coloring.
    Color,
    /// Minimum multicoloring; needs --weights.
    Mcolor,
    /// Equitable k-coloring; needs --k.
    Eqc,
}

impl Problem {
    fn name(self) -> &'static str {
        match self {
            Problem::Ds => "ds",
            Problem::Vc => "vc",
            Problem::Color => "color",
            Problem::Mcolor => "mcolor",
            Problem::Eqc => "eqc",
        }
    }
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    /// Graph file.
    pub graph: PathBuf,
    /// Input format; guessed from the extension when omitted.
    #[arg(long)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct ProblemArgs {
    /// Number of colors for eqc.
    #[arg(long)]
    pub k: Option<usize>,
    /// Node weights for mcolor: one integer per node, whitespace or comma separated.
    #[arg(long)]
    pub weights: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OutArgs {
    /// Write the graph here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Output format; guessed from --out when omitted.
    #[arg(long)]
    pub format: Option<Format>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Type partition parameters and the type graph sequence.
    Analyze {
        #[command(flatten)]
        input: GraphArgs,
        /// Include class members and quotient edges for every level.
        #[arg(long)]
        levels: bool,
    },
    /// Run a solver and validate its certificate.
    Solve {
        problem: Problem,
        #[command(flatten)]
        input: GraphArgs,
        #[command(flatten)]
        params: ProblemArgs,
        /// Refuse eqc when the neighborhood diversity exceeds this.
        #[arg(long)]
        cap_nd: Option<usize>,
        /// Branch-and-bound node budget for the integer programs.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Run the brute-force reference solver.
    Oracle {
        problem: Problem,
        #[command(flatten)]
        input: GraphArgs,
        #[command(flatten)]
        params: ProblemArgs,
        /// Backtracking step budget.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Check a certificate against a graph.
    Verify {
        problem: Problem,
        #[command(flatten)]
        input: GraphArgs,
        /// `{"nodes": [..]}`, `{"colors": [[..], ..]}` or a solve report.
        certificate: PathBuf,
        #[command(flatten)]
        params: ProblemArgs,
    },
    /// Generate graphs.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NamedFamily {
    Complete,
    Cycle,
    Path,
    Bipartite,
}

#[derive(Debug, Subcommand)]
pub enum GenKind {
    /// A center joined to a+1 disjoint k-cliques.
    Flower {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Two chains of independent layers.
    Chain {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long = "B")]
        b: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Equitable coloring instance built from a bin packing instance.
    Reduce {
        /// Item sizes, comma separated.
        #[arg(long, value_delimiter = ',', required_unless_present = "instance")]
        items: Vec<usize>,
        #[arg(long, required_unless_present = "instance")]
        k: Option<usize>,
        #[arg(long = "B", required_unless_present = "instance")]
        b: Option<usize>,
        /// Read `{"items": [..], "k": .., "B": ..}` instead of the flags above.
        #[arg(long, conflicts_with_all = ["items", "k", "b"])]
        instance: Option<PathBuf>,
        /// Pad with unit items so the total equals k·B.
        #[arg(long)]
        pad: bool,
        /// Skip the exactness check.
        #[arg(long)]
        raw: bool,
        /// Write the node role map here.
        #[arg(long)]
        roles: Option<PathBuf>,
        /// Pack the items by brute force and write the matching coloring here.
        #[arg(long)]
        certificate: Option<PathBuf>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Blow a connected base graph up by alternating independent and clique steps.
    Expand {
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        base_format: Option<Format>,
        #[arg(long)]
        d: usize,
        /// Copies per node: `m` or a range `lo..hi`.
        #[arg(long, default_value = "2")]
        mult: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// G(n, p).
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Complete graphs, cycles, paths and complete bipartite graphs.
    Named {
        family: NamedFamily,
        #[arg(long)]
        n: usize,
        /// Second side for bipartite.
        #[arg(long)]
        m: Option<usize>,
        #[command(flatten)]
        out: OutArgs,
    },
}

/// What to print: a JSON report, or raw text such as a generated graph.
#[derive(Debug)]
pub struct Output {
    pub stdout: String,
    pub warnings: Vec<String>,
}

struct Loaded {
    graph: Graph,
    digest: String,
    warnings: Vec<String>,
}

fn read(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|source| ToolError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| ToolError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn load(path: &Path, format: Option<Format>) -> Result<Loaded> {
    let bytes = read(path)?;
    let text = String::from_utf8_lossy(&bytes);
    let parsed = parse_graph(&text, format.unwrap_or_else(|| Format::from_path(path))).map_err(|source| {
        ToolError::Parse {
            path: path.display().to_string(),
            source,
        }
    })?;
    Ok(Loaded {
        graph: parsed.graph,
        digest: hex::encode(Sha256::digest(&bytes)),
        warnings: parsed.warnings,
    })
}

fn read_weights(path: &Path, n: usize) -> Result<Vec<u64>> {
    let text = String::from_utf8_lossy(&read(path)?).into_owned();
    let mut w = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let content = line.split('#').next().unwrap_or("");
        for tok in content.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
            let v = tok.parse().map_err(|_| ToolError::Parse {
                path: path.display().to_string(),
                source: ParseError {
                    line: i + 1,
                    message: format!("weight {tok:?} is not a non-negative integer"),
                },
            })?;
            w.push(v);
        }
    }
    if w.len() != n {
        return Err(ToolError::Usage(format!(
            "{}: {} weights for a graph with {n} nodes",
            path.display(),
            w.len()
        )));
    }
    Ok(w)
}

fn need_k(params: &ProblemArgs) -> Result<usize> {
    params.k.ok_or_else(|| ToolError::Usage("eqc needs --k".into()))
}

fn need_weights(params: &ProblemArgs, n: usize) -> Result<Vec<u64>> {
    match &params.weights {
        Some(p) => read_weights(p, n),
        None => Err(ToolError::Usage("mcolor needs --weights".into())),
    }
}

fn json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report serializes")
}

fn elapsed_ms(t: Instant) -> u64 {
    t.elapsed().as_millis() as u64
}

fn envelope(argv: &[String], digest: Option<String>, warnings: Vec<String>, results: Value, t: Instant) -> Output {
    let report = RunReport {
        command: argv.to_vec(),
        input_digest: digest,
        version: env!("CARGO_PKG_VERSION").into(),
        warnings: warnings.clone(),
        results,
        elapsed_ms: elapsed_ms(t),
    };
    Output {
        stdout: serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
        warnings,
    }
}

/// Checks a certificate; `Err` carries the reason it fails.
pub fn check_certificate(
    problem: Problem,
    g: &Graph,
    cert: &Certificate,
    k: Option<usize>,
    weights: Option<&[u64]>,
) -> std::result::Result<(), String> {
    let n = g.n();
    let as_set = |nodes: &[usize]| -> std::result::Result<NodeSet, String> {
        if let Some(&v) = nodes.iter().find(|&&v| v >= n) {
            return Err(format!("node {v} out of range for {n} nodes"));
        }
        Ok(NodeSet::from_ids(n, nodes.iter().copied()))
    };
    let as_coloring = |colors: &[Vec<usize>]| -> std::result::Result<ColoringAssignment, String> {
        if colors.len() != n {
            return Err(format!("{} color lists for {n} nodes", colors.len()));
        }
        let a = ColoringAssignment::new(colors.to_vec());
        if !is_proper_coloring(g, &a) {
            return Err("adjacent nodes share a color".into());
        }
        Ok(a)
    };
    match (problem, cert) {
        (Problem::Ds, Certificate::Nodes { nodes }) => {
            is_dominating_set(g, &as_set(nodes)?).then_some(()).ok_or("some node is not dominated".into())
        }
        (Problem::Vc, Certificate::Nodes { nodes }) => {
            is_vertex_cover(g, &as_set(nodes)?).then_some(()).ok_or("some edge is not covered".into())
        }
        (Problem::Color, Certificate::Colors { colors }) => {
            let a = as_coloring(colors)?;
            match (0..n).find(|&v| a.single(v).is_none()) {
                Some(v) => Err(format!("node {v} needs exactly one color")),
                None => Ok(()),
            }
        }
        (Problem::Mcolor, Certificate::Colors { colors }) => {
            let a = as_coloring(colors)?;
            let w = weights.ok_or("mcolor verification needs --weights")?;
            match (0..n).find(|&v| a.colors_of(v).len() as u64 != w[v]) {
                Some(v) => Err(format!("node {v} has {} colors, weight {}", a.colors_of(v).len(), w[v])),
                None => Ok(()),
            }
        }
        (Problem::Eqc, Certificate::Colors { colors }) => {
            let k = k.ok_or("eqc verification needs --k")?;
            if colors.len() != n {
                return Err(format!("{} color lists for {n} nodes", colors.len()));
            }
            match equitable_violation(g, &ColoringAssignment::new(colors.clone()), k) {
                Some(why) => Err(why),
                None => Ok(()),
            }
        }
        (p, _) => Err(format!("wrong certificate shape for {}", p.name())),
    }
}

fn assert_valid(problem: Problem, g: &Graph, cert: &Certificate, k: Option<usize>, w: Option<&[u64]>) -> Result<()> {
    check_certificate(problem, g, cert, k, w).map_err(|why| {
        ToolError::Core(itp_core::Error::InvariantViolated(format!(
            "{} certificate failed validation: {why}",
            problem.name()
        )))
    })
}

fn cmd_analyze(argv: &[String], input: &GraphArgs, full: bool) -> Result<Output> {
    let t = Instant::now();
    let l = load(&input.graph, input.format)?;
    let seq = type_sequence(&l.graph);
    let report = SequenceReport::new(&seq, full);
    Ok(envelope(argv, Some(l.digest), l.warnings, json(&report), t))
}

fn cmd_solve(
    argv: &[String],
    problem: Problem,
    input: &GraphArgs,
    params: &ProblemArgs,
    cap_nd: Option<usize>,
    budget: Option<u64>,
) -> Result<Output> {
    let t = Instant::now();
    let l = load(&input.graph, input.format)?;
    let g = &l.graph;
    let mut ilp = SolverConfig::default();
    if let Some(b) = budget {
        ilp.node_budget = b;
    }
    let cfg = FptConfig {
        ilp,
        ..FptConfig::default()
    };
    let results = if problem == Problem::Eqc {
        let k = need_k(params)?;
        let mut ecfg = EqcConfig { ilp, ..EqcConfig::default() };
        if let Some(c) = cap_nd {
            ecfg.nd_cap = c;
        }
        let out = solve_eqc_with(&EqcInstance { graph: g.clone(), k }, &ecfg)?;
        let certificate = out.coloring.as_ref().map(Certificate::from_coloring);
        if let Some(c) = &certificate {
            assert_valid(problem, g, c, Some(k), None)?;
        }
        json(&EqcReport {
            problem: problem.name().into(),
            k,
            feasible: certificate.is_some(),
            valid: certificate.as_ref().map(|_| true),
            certificate,
            nd: out.nd,
            independent_set_count: out.independent_set_count,
            ilp_vars: out.ilp_vars,
            ilp_nodes_explored: out.nodes_explored,
            elapsed_ms: elapsed_ms(t),
        })
    } else {
        let mut weights = None;
        let (value, certificate, depth, base_size) = match problem {
            Problem::Ds => {
                let s = dominating_set_with(g, &cfg)?;
                (s.value.len(), Certificate::from_set(&s.value), s.depth, s.base_size)
            }
            Problem::Vc => {
                let s = vertex_cover_with(g, &cfg)?;
                (s.value.len(), Certificate::from_set(&s.value), s.depth, s.base_size)
            }
            Problem::Color => {
                let s = coloring_with(g, &cfg)?;
                (s.value.color_count(), Certificate::from_coloring(&s.value), s.depth, s.base_size)
            }
            Problem::Mcolor => {
                let w = need_weights(params, g.n())?;
                let s = multicoloring_with(g, &MulticolorWeights { w: w.clone() }, &cfg)?;
                weights = Some(w);
                (s.value.color_count(), Certificate::from_coloring(&s.value), s.depth, s.base_size)
            }
            Problem::Eqc => unreachable!(),
        };
        assert_valid(problem, g, &certificate, None, weights.as_deref())?;
        let seq = type_sequence(g);
        json(&SolveReport {
            problem: problem.name().into(),
            value,
            certificate,
            valid: true,
            itp: seq.itp(),
            nd: seq.nd(),
            levels: depth,
            base_size,
            elapsed_ms: elapsed_ms(t),
        })
    };
    Ok(envelope(argv, Some(l.digest), l.warnings, results, t))
}

fn cmd_oracle(
    argv: &[String],
    problem: Problem,
    input: &GraphArgs,
    params: &ProblemArgs,
    budget: Option<u64>,
) -> Result<Output> {
    let t = Instant::now();
    let l = load(&input.graph, input.format)?;
    let g = &l.graph;
    let mut ob = OracleBudget::default();
    if let Some(b) = budget {
        ob.max_nodes_explored = b;
    }
    let mut k = None;
    let mut weights = None;
    let (value, certificate) = match problem {
        Problem::Ds => {
            let d = bf_dominating_set(g)?;
            (d.len(), Some(Certificate::from_set(&d)))
        }
        Problem::Vc => {
            let c = bf_vertex_cover(g)?;
            (c.len(), Some(Certificate::from_set(&c)))
        }
        Problem::Color => {
            let (chi, a) = bf_chromatic_with(g, &ob)?;
            (chi, Some(Certificate::from_coloring(&a)))
        }
        Problem::Mcolor => {
            let w = need_weights(params, g.n())?;
            let (m, a) = bf_multicolor_with(g, &w, &ob)?;
            weights = Some(w);
            (m, Some(Certificate::from_coloring(&a)))
        }
        Problem::Eqc => {
            let kk = need_k(params)?;
            k = Some(kk);
            let a = bf_equitable_with(g, kk, &ob)?;
            (usize::from(a.is_some()), a.as_ref().map(Certificate::from_coloring))
        }
    };
    if let Some(c) = &certificate {
        assert_valid(problem, g, c, k, weights.as_deref())?;
    }
    let report = OracleReport {
        problem: problem.name().into(),
        value,
        valid: certificate.as_ref().map(|_| true),
        certificate,
        elapsed_ms: elapsed_ms(t),
    };
    Ok(envelope(argv, Some(l.digest), l.warnings, json(&report), t))
}

fn cmd_verify(
    argv: &[String],
    problem: Problem,
    input: &GraphArgs,
    cert_path: &Path,
    params: &ProblemArgs,
) -> Result<Output> {
    let t = Instant::now();
    let l = load(&input.graph, input.format)?;
    let bad = |message: String| ToolError::Parse {
        path: cert_path.display().to_string(),
        source: ParseError { line: 0, message },
    };
    let doc: Value = serde_json::from_slice(&read(cert_path)?).map_err(|e| ToolError::Parse {
        path: cert_path.display().to_string(),
        source: ParseError {
            line: e.line(),
            message: e.to_string(),
        },
    })?;
    // Accept a bare certificate, a solve report, or a full run report.
    let mut inner = &doc;
    if let Some(r) = inner.get("results") {
        inner = r;
    }
    let file_k = inner.get("k").and_then(Value::as_u64).map(|k| k as usize);
    let cert_value = inner.get("certificate").unwrap_or(inner);
    let cert: Certificate =
        serde_json::from_value(cert_value.clone()).map_err(|e| bad(format!("not a certificate: {e}")))?;
    let weights = match (&params.weights, problem) {
        (Some(p), _) => Some(read_weights(p, l.graph.n())?),
        (None, Problem::Mcolor) => return Err(ToolError::Usage("mcolor verification needs --weights".into())),
        _ => None,
    };
    let k = params.k.or(file_k);
    if problem == Problem::Eqc && k.is_none() {
        return Err(ToolError::Usage("eqc verification needs --k".into()));
    }
    let verdict = check_certificate(problem, &l.graph, &cert, k, weights.as_deref());
    let report = VerifyReport {
        problem: problem.name().into(),
        valid: verdict.is_ok(),
        reason: verdict.err(),
    };
    Ok(envelope(argv, Some(l.digest), l.warnings, json(&report), t))
}

fn parse_mult(s: &str) -> Result<Multiplicity> {
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| ToolError::Usage(format!("bad multiplicity {s:?}; expected `m` or `lo..hi`")))
    };
    match s.split_once("..") {
        Some((lo, hi)) => Ok(Multiplicity::Uniform {
            lo: num(lo)?,
            hi: num(hi.trim_start_matches('='))?,
        }),
        None => Ok(Multiplicity::Fixed(num(s)?)),
    }
}

/// Writes `g` to `--out` and returns a summary report, or returns the graph text itself.
fn emit_graph(argv: &[String], g: &Graph, out: &OutArgs, mut extra: serde_json::Map<String, Value>, t: Instant) -> Result<Output> {
    let format = out
        .format
        .or_else(|| out.out.as_deref().map(Format::from_path))
        .unwrap_or(Format::EdgeList);
    let text = write_graph(g, format);
    match &out.out {
        None => Ok(Output {
            stdout: text,
            warnings: Vec::new(),
        }),
        Some(path) => {
            write(path, &text)?;
            let seq = type_sequence(g);
            let mut results = serde_json::Map::new();
            results.insert("out".into(), path.display().to_string().into());
            results.insert("format".into(), format.to_string().into());
            results.insert("n".into(), g.n().into());
            results.insert("edges".into(), g.edge_count().into());
            results.insert("nd".into(), seq.nd().into());
            results.insert("itp".into(), seq.itp().into());
            results.insert("depth".into(), seq.depth().into());
            results.append(&mut extra);
            Ok(envelope(argv, None, Vec::new(), Value::Object(results), t))
        }
    }
}

fn cmd_gen(argv: &[String], kind: &GenKind) -> Result<Output> {
    let t = Instant::now();
    let none = serde_json::Map::new;
    match kind {
        GenKind::Flower { a, k, out } => emit_graph(argv, &flower(*a, *k)?, out, none(), t),
        GenKind::Chain { k, l, b, out } => emit_graph(argv, &chain(*k, *l, *b)?, out, none(), t),
        GenKind::Random { n, p, seed, out } => {
            let g = generate(Family::Random { n: *n, p: *p, seed: *seed })?;
            emit_graph(argv, &g, out, none(), t)
        }
        GenKind::Named { family, n, m, out } => {
            let fam = match family {
                NamedFamily::Complete => Family::Complete(*n),
                NamedFamily::Cycle => Family::Cycle(*n),
                NamedFamily::Path => Family::Path(*n),
                NamedFamily::Bipartite => {
                    let m = m.ok_or_else(|| ToolError::Usage("bipartite needs --m".into()))?;
                    Family::CompleteBipartite(m, *n)
                }
            };
            emit_graph(argv, &generate(fam)?, out, none(), t)
        }
        GenKind::Expand {
            base,
            base_format,
            d,
            mult,
            seed,
            out,
        } => {
            let b = load(base, *base_format)?;
            let g = expand(&b.graph, *d, parse_mult(mult)?, *seed)?;
            emit_graph(argv, &g, out, none(), t)
        }
        GenKind::Reduce {
            items,
            k,
            b,
            instance,
            pad,
            raw,
            roles,
            certificate,
            out,
        } => {
            let inst: BinPackingInstance = match instance {
                Some(p) => {
                    let f: InstanceFile = serde_json::from_slice(&read(p)?).map_err(|e| ToolError::Parse {
                        path: p.display().to_string(),
                        source: ParseError {
                            line: e.line(),
                            message: e.to_string(),
                        },
                    })?;
                    f.into()
                }
                None => BinPackingInstance {
                    items: items.clone(),
                    k: k.expect("required by clap"),
                    capacity: b.expect("required by clap"),
                },
            };
            let inst = if *pad {
                normalize_exact(&inst.items, inst.k, inst.capacity)?
            } else {
                inst
            };
            let r = if *raw {
                build_reduction_graph(&inst)?
            } else {
                reduce_binpacking_to_eqc(&inst)?
            };
            let mut extra = serde_json::Map::new();
            extra.insert("instance".into(), json(&InstanceFile::from(&inst)));
            extra.insert("colors".into(), (inst.k + 3).into());
            if let Some(p) = roles {
                write(p, &(serde_json::to_string_pretty(&RolesFile::new(&r)).expect("roles serialize") + "\n"))?;
                extra.insert("roles".into(), p.display().to_string().into());
            }
            if let Some(p) = certificate {
                let Some(bins) = bf_binpacking(&inst)? else {
                    return Err(ToolError::Usage("the items admit no packing, so there is no certificate".into()));
                };
                let a = coloring_from_packing(&r, &bins)?;
                let cert = serde_json::json!({
                    "k": inst.k + 3,
                    "certificate": Certificate::from_coloring(&a),
                    "packing": bins,
                });
                write(p, &(serde_json::to_string_pretty(&cert).expect("certificate serializes") + "\n"))?;
                extra.insert("certificate".into(), p.display().to_string().into());
            }
            emit_graph(argv, &r.graph, out, extra, t)
        }
    }
}

/// Runs one parsed command. `argv` is echoed into the report.
pub fn run(cli: &Cli, argv: &[String]) -> Result<Output> {
    match &cli.command {
        Command::Analyze { input, levels } => cmd_analyze(argv, input, *levels),
        Command::Solve {
            problem,
            input,
            params,
            cap_nd,
            budget,
        } => cmd_solve(argv, *problem, input, params, *cap_nd, *budget),
        Command::Oracle {
            problem,
            input,
            params,
            budget,
        } => cmd_oracle(argv, *problem, input, params, *budget),
        Command::Verify {
            problem,
            input,
            certificate,
            params,
        } => cmd_verify(argv, *problem, input, certificate, params),
        Command::Gen { kind } => cmd_gen(argv, kind),
    }
}

/// Parses the process arguments, runs, prints, and returns the exit code.
pub fn main_with_args(argv: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cli, &argv) {
        Ok(out) => {
            for w in &out.warnings {
                eprintln!("warning: {w}");
            }
            print!("{}", out.stdout);
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            if let ToolError::Core(itp_core::Error::CapExceeded { .. }) = &e {
                if matches!(cli.command, Command::Solve { problem: Problem::Eqc, .. }) {
                    eprintln!("hint: raise --cap-nd, or use `itp oracle eqc` for graphs with at most 12 nodes");
                }
            }
            e.exit_code()
        }
    }
}
