//! Command dispatch for the `chainmail` binary.
//!
//! [`run`] takes the full argument vector and returns the exit code together
//! with everything destined for stdout and stderr, so the binary is a thin
//! shell around it and tests can drive it directly.
//!
//! Exit codes: 0 when the command succeeds and any checked property holds,
//! 1 when a property fails or the input misses a hypothesis, 2 for malformed
//! input, unknown commands and bad flags.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use chainmail::diagram::{build_chainmail_pd, diagram_invariants, medial_link_pd, render_svg, PdCode, RenderOptions};
use chainmail::generate::{random_graph, GeneratorParams, Profile};
use chainmail::graph::{MinorKind, DEFAULT_ORIENTATION_CAP};
use chainmail::io::{parse_graph_file, write_chainmail, write_graph_file, GraphInput};
use chainmail::linalg::{cokernel, determinant};
use chainmail::lspace::{
    certificate_from_json, certificate_to_json, certify, certify_generalized, generalized_from_json,
    generalized_to_json, orderability_obstruction, verify_certificate, verify_generalized, CertKind, GenKind,
    Verification, CERTIFICATE_FORMAT, GENERALIZED_FORMAT,
};
use chainmail::surgery::{
    augmented_matrix, crossing_loop_transform, dc_check, first_homology, linking_matrix, rational_surgery_matrix,
    sign_check, surgery_components, CrossingLoopAction, TransformResult,
};
use chainmail::{AugmentedGraph, EdgeId, Error, IntMatrix};
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "chainmail",
    version,
    about = "Surgery invariants and L-space certificates for chainmail graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Write output here instead of stdout; a directory when there are
    /// several inputs.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Number of input files processed concurrently.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: u16,
}

#[derive(Debug, Args)]
struct Inputs {
    /// Graph files (`.cmg.json`).
    #[arg(required = true)]
    files: Vec<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MinorArg {
    Delete,
    Contract,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ActionArg {
    Rolfsen,
    BlowDown,
    Erase,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse a graph file and check its rotation system is a sphere embedding.
    Validate(Inputs),
    /// Linking matrix (augmented files: the full surgery matrix).
    Matrix(Inputs),
    /// Determinant of the surgery matrix.
    Det(Inputs),
    /// First homology of the surgered manifold.
    H1(Inputs),
    /// Apply simplifying moves until none is left.
    Simplify(Inputs),
    /// Delete or contract an edge.
    Minor {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        edge: EdgeId,
        #[arg(long, value_enum)]
        kind: MinorArg,
    },
    /// Check det Λ(G) = det Λ(G−e) + det Λ(G/e) at a −1 edge.
    DcCheck {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        edge: EdgeId,
    },
    /// Build an L-space certificate (text: summary, json: the certificate).
    Certify(Inputs),
    /// Check a certificate file of either kind.
    Verify {
        /// Certificate files.
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Build a generalized certificate for an augmented graph.
    CertifyGen(Inputs),
    /// Sink/source data of every acyclic orientation.
    Obstruct {
        #[command(flatten)]
        inputs: Inputs,
        /// Largest edge count to enumerate.
        #[arg(long, default_value_t = DEFAULT_ORIENTATION_CAP)]
        cap: usize,
    },
    /// Check the sign of the augmented determinant.
    SignCheck(Inputs),
    /// Perform surgery on one crossing loop of an augmented graph.
    Twist {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        edge: EdgeId,
        #[arg(long, value_enum, default_value = "rolfsen")]
        action: ActionArg,
    },
    /// Triangle-free, minimum degree and bridge checks.
    Asym(Inputs),
    /// Invariants of the chainmail link diagram (also accepts `.pd` files).
    Diagram(Inputs),
    /// Invariants of the medial link diagram.
    Medial(Inputs),
    /// PD code of the chainmail (or medial) diagram.
    Pd {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        medial: bool,
    },
    /// SVG drawing of the chainmail (or medial) diagram.
    Svg {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        medial: bool,
    },
    /// Seeded random graph files.
    Random {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "theorem-alternating")]
        profile: Profile,
        /// Number of graphs, using seeds seed, seed+1, ...; more than one
        /// needs `--out DIR`.
        #[arg(long, default_value_t = 1)]
        count: u64,
        /// Vertex range `lo..hi` (inclusive).
        #[arg(long)]
        vertices: Option<String>,
        /// Edge range `lo..hi` (inclusive).
        #[arg(long)]
        edges: Option<String>,
    },
}

/// Output of one command on one input.
struct Report {
    code: i32,
    body: String,
    /// File extension used when writing into an `--out` directory.
    ext: &'static str,
}

impl Report {
    fn new(code: i32, body: String, ext: &'static str) -> Self {
        Report { code, body, ext }
    }
}

fn code_for(e: &Error) -> i32 {
    if e.is_input_error() {
        2
    } else {
        1
    }
}

fn json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("results serialize");
    s.push('\n');
    s
}

fn holds(b: bool) -> i32 {
    if b {
        0
    } else {
        1
    }
}

/// Text and JSON renderings, picked by format.
fn pick(format: Format, text: impl FnOnce() -> String, js: impl FnOnce() -> String) -> String {
    match format {
        Format::Text => text(),
        Format::Json => js(),
    }
}

fn plain(input: GraphInput, what: &str) -> Result<chainmail::ChainmailGraph, Error> {
    match input {
        GraphInput::Chainmail(g) => Ok(g),
        GraphInput::Augmented(_) => Err(Error::Invalid(format!("{what} takes a graph without crossing loops"))),
    }
}

fn augmented(input: GraphInput) -> Result<AugmentedGraph, Error> {
    match input {
        GraphInput::Augmented(ag) => Ok(ag),
        GraphInput::Chainmail(g) => AugmentedGraph::new(g, Default::default()),
    }
}

/// The surgery matrix of a file: `Λ(G)`, the augmented block matrix for
/// integer coefficients, or the rational surgery matrix otherwise.
fn surgery_matrix(input: &GraphInput) -> Result<IntMatrix, Error> {
    match input {
        GraphInput::Chainmail(g) => Ok(linking_matrix(g).matrix),
        GraphInput::Augmented(ag) if ag.is_integral() => Ok(augmented_matrix(ag)?.matrix),
        GraphInput::Augmented(ag) => rational_surgery_matrix(&surgery_components(ag)?),
    }
}

fn graph_command(cmd: &Command, input: GraphInput, format: Format) -> Result<Report, Error> {
    Ok(match cmd {
        Command::Validate(_) => {
            let report = input.graph().validate();
            let body = pick(
                format,
                || {
                    let mut s = String::new();
                    for c in &report.components {
                        let _ = writeln!(s, "component V={} E={} F={} chi={}", c.v, c.e, c.f, c.euler);
                    }
                    let _ = writeln!(s, "sphere embedding: {}", if report.valid { "yes" } else { "no" });
                    s
                },
                || json(&report),
            );
            Report::new(holds(report.valid), body, "txt")
        }
        Command::Matrix(_) => {
            let m = match &input {
                GraphInput::Chainmail(g) => {
                    let lm = linking_matrix(g);
                    return Ok(Report::new(
                        0,
                        pick(format, || lm.matrix.to_string(), || json(&lm)),
                        "txt",
                    ));
                }
                GraphInput::Augmented(ag) if ag.is_integral() => {
                    let am = augmented_matrix(ag)?;
                    return Ok(Report::new(
                        0,
                        pick(format, || am.matrix.to_string(), || json(&am)),
                        "txt",
                    ));
                }
                _ => surgery_matrix(&input)?,
            };
            Report::new(0, pick(format, || m.to_string(), || json(&m)), "txt")
        }
        Command::Det(_) => {
            let d = determinant(&surgery_matrix(&input)?)?;
            Report::new(0, pick(format, || format!("{d}\n"), || json(&d.to_string())), "txt")
        }
        Command::H1(_) => {
            let h = match &input {
                GraphInput::Chainmail(g) => first_homology(g),
                _ => cokernel(&surgery_matrix(&input)?)?,
            };
            Report::new(0, pick(format, || format!("{h}\n"), || json(&h)), "txt")
        }
        Command::Simplify(_) => {
            let g = plain(input, "simplify")?.simplify();
            Report::new(0, write_chainmail(&g), "cmg.json")
        }
        Command::Minor { edge, kind, .. } => {
            let kind = match kind {
                MinorArg::Delete => MinorKind::Delete,
                MinorArg::Contract => MinorKind::Contract,
            };
            let g = plain(input, "minor")?.minor(*edge, kind)?;
            Report::new(0, write_chainmail(&g), "cmg.json")
        }
        Command::DcCheck { edge, .. } => {
            let r = dc_check(&plain(input, "dc-check")?, *edge)?;
            Report::new(holds(r.holds), pick(format, || format!("{r}\n"), || json(&r)), "txt")
        }
        Command::Certify(_) => {
            let c = certify(&plain(input, "certify")?)?;
            let v = verify_certificate(&c);
            if let Some((i, why)) = v.failure {
                return Err(Error::Internal(format!("certificate fails at node {i}: {why}")));
            }
            let body = pick(
                format,
                || {
                    let leaves = c
                        .nodes
                        .iter()
                        .filter(|n| matches!(n.kind, CertKind::LensBase { .. }))
                        .count();
                    format!(
                        "certified: det {} ({} nodes, {} lens leaves, depth {})\n",
                        c.det(),
                        c.nodes.len(),
                        leaves,
                        c.depth()
                    )
                },
                || certificate_to_json(&c),
            );
            Report::new(0, body, "cert.json")
        }
        Command::CertifyGen(_) => {
            let c = certify_generalized(&augmented(input)?)?;
            let v = verify_generalized(&c);
            if let Some((i, why)) = v.failure {
                return Err(Error::Internal(format!("certificate fails at node {i}: {why}")));
            }
            let body = pick(
                format,
                || {
                    let count = |f: fn(&GenKind) -> bool| c.nodes.iter().filter(|n| f(&n.kind)).count();
                    format!(
                        "certified: det {} ({} nodes: {} coefficient triangles, {} blow-downs, {} chainmail bases)\n",
                        c.root().det,
                        c.nodes.len(),
                        count(|k| matches!(k, GenKind::CoefficientTriangle { .. })),
                        count(|k| matches!(k, GenKind::UnitBlowDown { .. })),
                        count(|k| matches!(k, GenKind::ChainmailBase(_))),
                    )
                },
                || generalized_to_json(&c),
            );
            Report::new(0, body, "cert.json")
        }
        Command::Obstruct { cap, .. } => {
            let r = orderability_obstruction(&plain(input, "obstruct")?, *cap)?;
            let body = pick(
                format,
                || {
                    let mut s = format!("{} acyclic orientations\n", r.orientation_count);
                    for (i, o) in r.orientations.iter().enumerate() {
                        let ids = |vs: &[chainmail::VertexId]| {
                            vs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
                        };
                        let _ = writeln!(
                            s,
                            "{i}: sinks {} sources {} witness {}",
                            ids(&o.sinks),
                            ids(&o.sources),
                            o.witness.map_or("none".to_string(), |v| v.to_string())
                        );
                    }
                    let _ = writeln!(s, "verdict: {}", if r.verdict { "OK" } else { "FAIL" });
                    s
                },
                || json(&r),
            );
            Report::new(holds(r.verdict), body, "txt")
        }
        Command::SignCheck(_) => {
            let r = sign_check(&augmented(input)?)?;
            Report::new(holds(r.holds), pick(format, || format!("{r}\n"), || json(&r)), "txt")
        }
        Command::Twist { edge, action, .. } => {
            let action = match action {
                ActionArg::Rolfsen => CrossingLoopAction::RolfsenTwist,
                ActionArg::BlowDown => CrossingLoopAction::BlowDownUnit,
                ActionArg::Erase => CrossingLoopAction::Erase,
            };
            let out = match crossing_loop_transform(&augmented(input)?, *edge, action)? {
                TransformResult::Chainmail(g) => GraphInput::Chainmail(g),
                TransformResult::Augmented(ag) => GraphInput::Augmented(ag),
            };
            Report::new(0, write_graph_file(&out), "cmg.json")
        }
        Command::Asym(_) => {
            let r = input.graph().graph_properties();
            let body = pick(
                format,
                || {
                    let mut s = String::new();
                    let yn = |b: bool| if b { "yes" } else { "no" };
                    let _ = writeln!(s, "triangle-free: {}", yn(r.triangle_free));
                    let _ = writeln!(s, "minimum degree >= 3: {}", yn(r.min_degree_at_least_3));
                    let _ = writeln!(s, "no separating edge: {}", yn(r.bridge_free));
                    let _ = writeln!(s, "sphere embedding: {}", yn(r.sphere_embedding));
                    for v in &r.violations {
                        let _ = writeln!(s, "violation: {v}");
                    }
                    let _ = writeln!(s, "candidate: {}", yn(r.asymmetry_candidate));
                    s
                },
                || json(&r),
            );
            Report::new(holds(r.asymmetry_candidate), body, "txt")
        }
        Command::Diagram(_) | Command::Medial(_) => {
            let pd = match cmd {
                Command::Medial(_) => medial_link_pd(input.graph())?,
                _ => build_chainmail_pd(input.graph())?,
            };
            invariants_report(&pd, format)?
        }
        Command::Pd { medial, .. } => {
            let pd = if *medial {
                medial_link_pd(input.graph())?
            } else {
                build_chainmail_pd(input.graph())?
            };
            Report::new(0, pick(format, || pd.to_text(), || json(&pd)), "pd")
        }
        Command::Svg { medial, .. } => {
            let pd = if *medial {
                medial_link_pd(input.graph())?
            } else {
                build_chainmail_pd(input.graph())?
            };
            let mut options = RenderOptions::default();
            if let (GraphInput::Augmented(ag), false) = (&input, medial) {
                options.annotations = ag.coefficients().iter().map(|(&e, c)| (e, c.to_string())).collect();
            }
            Report::new(0, render_svg(&pd, &options)?, "svg")
        }
        Command::Verify { .. } | Command::Random { .. } => unreachable!("handled before parsing graphs"),
    })
}

fn invariants_report(pd: &PdCode, format: Format) -> Result<Report, Error> {
    let inv = diagram_invariants(pd)?;
    let body = pick(
        format,
        || {
            let mut s = String::new();
            let _ = writeln!(s, "components: {}", pd.components.len());
            let _ = writeln!(s, "crossings: {}", inv.crossing_count);
            let _ = writeln!(s, "writhe: {}", inv.writhe);
            let _ = writeln!(s, "alternating: {}", if inv.alternating { "yes" } else { "no" });
            let _ = writeln!(s, "seifert circles: {}", inv.seifert_circles);
            let _ = writeln!(s, "seifert euler characteristic: {}", inv.seifert_euler);
            let _ = writeln!(
                s,
                "goeritz determinant: {}",
                inv.goeritz_det.as_ref().map_or("n/a".to_string(), ToString::to_string)
            );
            s.push_str("lk:\n");
            let width = inv.lk.iter().flatten().map(|x| x.to_string().len()).max().unwrap_or(1);
            for row in &inv.lk {
                let cells: Vec<String> = row.iter().map(|x| format!("{x:>width$}")).collect();
                let _ = writeln!(s, "  {}", cells.join(" "));
            }
            s
        },
        || json(&inv),
    );
    Ok(Report::new(0, body, "txt"))
}

fn verify_report(text: &str, format: Format) -> Result<Report, Error> {
    #[derive(serde::Deserialize)]
    struct Header {
        format: String,
    }
    let header: Header = serde_json::from_str(text).map_err(|e| Error::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let v: Verification = match header.format.as_str() {
        CERTIFICATE_FORMAT => verify_certificate(&certificate_from_json(text)?),
        GENERALIZED_FORMAT => verify_generalized(&generalized_from_json(text)?),
        other => return Err(Error::Invalid(format!("unknown certificate format {other:?}"))),
    };
    let body = pick(
        format,
        || match &v.failure {
            None => "valid\n".to_string(),
            Some((i, why)) => format!("invalid at node {i}: {why}\n"),
        },
        || {
            #[derive(serde::Serialize)]
            struct Failure<'a> {
                node: usize,
                reason: &'a str,
            }
            #[derive(serde::Serialize)]
            struct Doc<'a> {
                valid: bool,
                failure: Option<Failure<'a>>,
            }
            json(&Doc {
                valid: v.is_valid(),
                failure: v.failure.as_ref().map(|(node, reason)| Failure { node: *node, reason }),
            })
        },
    );
    Ok(Report::new(holds(v.is_valid()), body, "txt"))
}

fn process(cmd: &Command, path: &Path, format: Format) -> Result<Report, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
    match cmd {
        Command::Verify { .. } => verify_report(&text, format),
        Command::Diagram(_) if path.extension().is_some_and(|x| x == "pd") => {
            invariants_report(&PdCode::parse(&text)?, format)
        }
        _ => graph_command(cmd, parse_graph_file(&text)?, format),
    }
}

fn parse_range(s: &str) -> Result<(usize, usize), Error> {
    let bad = || Error::Invalid(format!("bad range {s:?}; expected lo..hi"));
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    let lo = lo.trim().parse().map_err(|_| bad())?;
    let hi = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn random_command(cmd: &Command, out: Option<&Path>) -> Result<Outcome, Error> {
    let Command::Random {
        seed,
        profile,
        count,
        vertices,
        edges,
    } = cmd
    else {
        unreachable!()
    };
    if *count > 1 && out.is_none() {
        return Err(Error::Invalid("--count above 1 needs --out DIR".into()));
    }
    let mut stdout = String::new();
    for i in 0..*count {
        let s = seed.wrapping_add(i);
        let mut params = GeneratorParams::new(s, *profile);
        if let Some(v) = vertices {
            params.vertices = parse_range(v)?;
        }
        if let Some(e) = edges {
            params.edges = parse_range(e)?;
        }
        let doc = write_graph_file(&random_graph(&params)?);
        match out {
            Some(dir) if *count > 1 => {
                fs::create_dir_all(dir).map_err(|e| Error::Invalid(format!("cannot create {}: {e}", dir.display())))?;
                let path = dir.join(format!("{profile}-{s}.cmg.json"));
                fs::write(&path, doc).map_err(|e| Error::Invalid(format!("cannot write {}: {e}", path.display())))?;
            }
            _ => stdout.push_str(&doc),
        }
    }
    Ok(Outcome {
        code: 0,
        stdout,
        stderr: String::new(),
    })
}

fn files(cmd: &Command) -> &[PathBuf] {
    match cmd {
        Command::Validate(i)
        | Command::Matrix(i)
        | Command::Det(i)
        | Command::H1(i)
        | Command::Simplify(i)
        | Command::Certify(i)
        | Command::CertifyGen(i)
        | Command::SignCheck(i)
        | Command::Asym(i)
        | Command::Diagram(i)
        | Command::Medial(i) => &i.files,
        Command::Minor { inputs, .. }
        | Command::DcCheck { inputs, .. }
        | Command::Obstruct { inputs, .. }
        | Command::Twist { inputs, .. }
        | Command::Pd { inputs, .. }
        | Command::Svg { inputs, .. } => &inputs.files,
        Command::Verify { files } => files,
        Command::Random { .. } => &[],
    }
}

struct FileResult {
    code: i32,
    body: String,
    ext: &'static str,
    error: Option<String>,
}

/// Run every input, at most `jobs` at a time. Results come back in input
/// order, each buffered whole.
fn run_files(cmd: &Command, paths: &[PathBuf], format: Format, jobs: usize) -> Vec<FileResult> {
    let one = |path: &PathBuf| match process(cmd, path, format) {
        Ok(r) => FileResult {
            code: r.code,
            body: r.body,
            ext: r.ext,
            error: None,
        },
        Err(e) => FileResult {
            code: code_for(&e),
            body: String::new(),
            ext: "txt",
            error: Some(format!("error: {}: {e}\n", path.display())),
        },
    };
    if jobs <= 1 || paths.len() <= 1 {
        return paths.iter().map(one).collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<FileResult>>> = Mutex::new((0..paths.len()).map(|_| None).collect());
    std::thread::scope(|scope| {
        for _ in 0..jobs.min(paths.len()) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= paths.len() {
                    break;
                }
                let r = one(&paths[i]);
                slots.lock().unwrap()[i] = Some(r);
            });
        }
    });
    slots
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|r| r.expect("every input processed"))
        .collect()
}

fn stem(path: &Path) -> String {
    let name = path
        .file_name()
        .map_or_else(|| "out".into(), |n| n.to_string_lossy().into_owned());
    for suffix in [".cmg.json", ".cert.json", ".json", ".pd"] {
        if let Some(s) = name.strip_suffix(suffix) {
            return s.to_string();
        }
    }
    name
}

/// Run the command line `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    if let Command::Random { .. } = cli.command {
        return random_command(&cli.command, cli.out.as_deref()).unwrap_or_else(|e| Outcome {
            code: code_for(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        });
    }
    let paths = files(&cli.command);
    let results = run_files(&cli.command, paths, cli.format, cli.jobs as usize);
    let code = results.iter().map(|r| r.code).max().unwrap_or(0);
    let mut stdout = String::new();
    let mut stderr = String::new();
    for r in &results {
        if let Some(e) = &r.error {
            stderr.push_str(e);
        }
    }
    let write_err = |path: &Path, e: std::io::Error| Outcome {
        code: 2,
        stdout: String::new(),
        stderr: format!("error: cannot write {}: {e}\n", path.display()),
    };
    match (&cli.out, paths.len()) {
        (Some(dir), n) if n > 1 => {
            if let Err(e) = fs::create_dir_all(dir) {
                return write_err(dir, e);
            }
            for (path, r) in paths.iter().zip(&results) {
                if r.error.is_none() {
                    let target = dir.join(format!("{}.{}", stem(path), r.ext));
                    if let Err(e) = fs::write(&target, &r.body) {
                        return write_err(&target, e);
                    }
                }
            }
        }
        (out, n) => {
            for (path, r) in paths.iter().zip(&results) {
                if n > 1 && r.error.is_none() {
                    let _ = writeln!(stdout, "== {} ==", path.display());
                }
                stdout.push_str(&r.body);
            }
            if let Some(file) = out {
                if let Err(e) = fs::write(file, &stdout) {
                    return write_err(file, e);
                }
                stdout.clear();
            }
        }
    }
    Outcome { code, stdout, stderr }
}
