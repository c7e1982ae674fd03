//! Command-line front end for `graphsep`.
//!
//! Exit codes: 0 success, 1 input or parameter error, 2 internal failure,
//! 3 a verification suite reported failures.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use graphsep::exact::format_rational;
use graphsep::generate::{generate, Family};
use graphsep::harness::{cross_consistency, run_suite, Execution, SuiteReport, Theorem};
use graphsep::io::{parse_graph, write_graph};
use graphsep::linalg::{eigenvalues_sym, partial_transpose, purity, JACOBI_TOL};
use graphsep::separability::{
    all_separable_certificate, block_lss_certificate, check_verdict, classify_edge, degree_criterion,
    pe_matching_certificate, ppt_test, verdict, DegreeResult, PptResult,
};
use graphsep::{Certificate, Dims, Edge, EdgeClass, Error, Graph, Verdict, Witness};
use serde::Serialize;
use serde_json::Value;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INTERNAL: i32 = 2;
pub const EXIT_SUITE_FAILED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "graphsep", version, about = "Separability of graph density matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Analyze a graph file and print a report.
    Analyze {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Include floating-point spectra of σ and σ^{T_B}.
        #[arg(long)]
        spectrum: bool,
    },
    /// Write a graph file for a named or random family.
    Generate(GenerateArgs),
    /// Re-verify a theorem on seeded random instances.
    Verify(VerifyArgs),
    /// Print the spectra of σ and σ^{T_B}.
    Spectrum {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[command(subcommand)]
    pub family: FamilyArg,
    /// Output path; stdout when omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DimsArgs {
    #[arg(long)]
    pub p: usize,
    #[arg(long)]
    pub q: usize,
}

#[derive(Debug, Subcommand)]
pub enum FamilyArg {
    Complete {
        #[command(flatten)]
        dims: DimsArgs,
        /// Must equal p·q when given.
        #[arg(long)]
        n: Option<usize>,
    },
    Star {
        #[command(flatten)]
        dims: DimsArgs,
        #[arg(long)]
        n: Option<usize>,
    },
    SingleEdge {
        #[command(flatten)]
        dims: DimsArgs,
        /// Edge endpoints as I J S T.
        #[arg(long, num_args = 4, value_names = ["I", "J", "S", "T"])]
        edge: Vec<usize>,
    },
    PeMatching {
        #[arg(long)]
        q: usize,
        /// Derangement images, e.g. `2,3,1`.
        #[arg(long, value_delimiter = ',')]
        perm: Vec<usize>,
    },
    Random {
        #[command(flatten)]
        dims: DimsArgs,
        #[arg(long)]
        separable: usize,
        #[arg(long)]
        entangled: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Theorem id: 1, 2, 4, 5 or 7.
    #[arg(long, required_unless_present = "cross_consistency")]
    pub theorem: Option<u8>,
    /// Run the invariant suite over fully random graphs instead.
    #[arg(long, conflicts_with = "theorem")]
    pub cross_consistency: bool,
    #[arg(long)]
    pub p: usize,
    #[arg(long)]
    pub q: usize,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Run trials one after another instead of in parallel.
    #[arg(long)]
    pub sequential: bool,
    /// Directory for failing instances in graph file format.
    #[arg(long)]
    pub dump_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EdgeClassCounts {
    pub separable_same_row: usize,
    pub separable_same_column: usize,
    pub entangled: usize,
    #[serde(rename = "loop")]
    pub loops: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    #[serde(serialize_with = "graphsep::exact::float12_vec::serialize")]
    pub sigma: Vec<f64>,
    #[serde(serialize_with = "graphsep::exact::float12_vec::serialize")]
    pub sigma_tb: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub dims: [usize; 2],
    pub n: usize,
    pub edge_count: usize,
    pub loop_count: usize,
    pub d_g: usize,
    pub edge_classes: EdgeClassCounts,
    #[serde(serialize_with = "graphsep::exact::rational::serialize")]
    pub purity: num_rational::BigRational,
    pub ppt: PptResult,
    pub degree_criterion: DegreeResult,
    pub certificates: Vec<Certificate>,
    #[serde(skip)]
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<Spectrum>,
}

impl AnalysisReport {
    pub fn to_json(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        let verdict = self.verdict.to_json();
        let obj = v.as_object_mut().expect("object");
        for key in ["verdict", "certificate", "witness"] {
            obj.insert(key.to_string(), verdict[key].clone());
        }
        v
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut line = |s: String| {
            out.push_str(&s);
            out.push('\n');
        };
        line(format!("verdict: {}", self.verdict.label()));
        match &self.verdict {
            Verdict::Separable(c) => line(format!("certificate: {}", describe_certificate(c))),
            Verdict::Entangled(w) => line(format!("witness: {}", describe_witness(w))),
            Verdict::Unknown => line("note: PPT holds; no criterion decided".into()),
        }
        line(format!("dims: {}x{} (n = {})", self.dims[0], self.dims[1], self.n));
        line(format!("edges: {} (loops: {}), d_G = {}", self.edge_count, self.loop_count, self.d_g));
        let c = &self.edge_classes;
        line(format!(
            "edge classes: same-row {}, same-column {}, entangled {}, loop {}",
            c.separable_same_row, c.separable_same_column, c.entangled, c.loops
        ));
        line(format!("purity: {}", format_rational(&self.purity)));
        line(format!(
            "ppt: {}{}",
            if self.ppt.holds { "holds" } else { "violated" },
            self.ppt
                .min_eig_estimate
                .map(|e| format!(" (min eigenvalue of sigma^TB ≈ {})", graphsep::exact::round_sig12(e)))
                .unwrap_or_default()
        ));
        let d = &self.degree_criterion;
        if d.holds {
            line("degree criterion: holds".into());
        } else {
            let rows: Vec<String> = d.violations.iter().map(|v| format!("row {} sum {}", v.row, v.sum)).collect();
            line(format!("degree criterion: violated ({})", rows.join(", ")));
        }
        let kinds: Vec<&str> = self.certificates.iter().map(Certificate::kind).collect();
        line(format!(
            "certificates: {}",
            if kinds.is_empty() { "none".to_string() } else { kinds.join(", ") }
        ));
        if let Some(s) = &self.spectrum {
            line(format!("spectrum(sigma): {}", fmt_floats(&s.sigma)));
            line(format!("spectrum(sigma^TB): {}", fmt_floats(&s.sigma_tb)));
        }
        out
    }
}

fn fmt_floats(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| graphsep::exact::round_sig12(*x).to_string()).collect();
    format!("[{}]", parts.join(", "))
}

fn describe_certificate(c: &Certificate) -> String {
    match c {
        Certificate::AllEdgesSeparable(terms) => format!("all-edges-separable ({} product terms)", terms.len()),
        Certificate::PeMatching { permutation, separable_edges, .. } => format!(
            "pe-matching, permutation {:?}, {} separable edges split off",
            permutation, separable_edges
        ),
        other => other.kind().to_string(),
    }
}

fn describe_witness(w: &Witness) -> String {
    match w {
        Witness::DegreeCriterion { row, row_sum } => format!("degree-criterion, row {row} sums to {row_sum}"),
        Witness::QuadraticWitness { value, total_degree, .. } => format!(
            "quadratic-witness, X^T L^TB X = {} (d_G = {total_degree})",
            format_rational(value)
        ),
        Witness::NegativeEigenvalue { min_eigenvalue_estimate } => format!(
            "negative-eigenvalue{}",
            min_eigenvalue_estimate.map(|e| format!(" ≈ {e}")).unwrap_or_default()
        ),
    }
}

pub fn spectrum(g: &Graph) -> graphsep::Result<Spectrum> {
    let sigma = g.density_matrix();
    let st = partial_transpose(&sigma, g.dims())?;
    Ok(Spectrum { sigma: eigenvalues_sym(&sigma, JACOBI_TOL)?, sigma_tb: eigenvalues_sym(&st, JACOBI_TOL)? })
}

pub fn analyze(g: &Graph, with_spectrum: bool) -> graphsep::Result<AnalysisReport> {
    let mut classes = EdgeClassCounts { separable_same_row: 0, separable_same_column: 0, entangled: 0, loops: 0 };
    for e in g.edges() {
        match classify_edge(e) {
            EdgeClass::SeparableSameRow => classes.separable_same_row += 1,
            EdgeClass::SeparableSameColumn => classes.separable_same_column += 1,
            EdgeClass::Entangled => classes.entangled += 1,
            EdgeClass::Loop => classes.loops += 1,
        }
    }
    let mut certificates = Vec::new();
    certificates.extend(all_separable_certificate(g));
    certificates.extend(block_lss_certificate(g));
    if g.dims().p() == 2 {
        if let Some(c @ Certificate::PeMatching { spanning: true, .. }) = pe_matching_certificate(g)? {
            certificates.push(c);
        }
    }
    let v = verdict(g);
    let d = g.dims();
    Ok(AnalysisReport {
        dims: [d.p(), d.q()],
        n: d.n(),
        edge_count: g.edge_count(),
        loop_count: g.loop_count(),
        d_g: g.total_degree(),
        edge_classes: classes,
        purity: purity(&g.density_matrix())?,
        ppt: ppt_test(g),
        degree_criterion: degree_criterion(g),
        certificates,
        verdict: v,
        spectrum: if with_spectrum { Some(spectrum(g)?) } else { None },
    })
}

/// Reads and parses a graph file.
pub fn parse_graph_file(path: &Path) -> graphsep::Result<Graph> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::BadParams(format!("cannot read {}: {e}", path.display())))?;
    parse_graph(&text)
}

fn dims_of(d: &DimsArgs) -> graphsep::Result<Dims> {
    Dims::new(d.p, d.q)
}

fn check_n(n: Option<usize>, dims: Dims) -> graphsep::Result<()> {
    match n {
        Some(n) if n != dims.n() => Err(Error::BadParams(format!("n = {n} but p·q = {}", dims.n()))),
        _ => Ok(()),
    }
}

pub fn generate_graph(family: &FamilyArg) -> graphsep::Result<Graph> {
    match family {
        FamilyArg::Complete { dims, n } => {
            let d = dims_of(dims)?;
            check_n(*n, d)?;
            generate(&Family::Complete, d)
        }
        FamilyArg::Star { dims, n } => {
            let d = dims_of(dims)?;
            check_n(*n, d)?;
            generate(&Family::Star, d)
        }
        FamilyArg::SingleEdge { dims, edge } => {
            let d = dims_of(dims)?;
            let e = Edge::from_coords(edge[0], edge[1], edge[2], edge[3]);
            generate(&Family::SingleEntangledEdge(e), d)
        }
        FamilyArg::PeMatching { q, perm } => generate(&Family::PeMatching(perm.clone()), Dims::new(2, *q)?),
        FamilyArg::Random { dims, separable, entangled, seed } => generate(
            &Family::Random { separable: *separable, entangled: *entangled, seed: *seed },
            dims_of(dims)?,
        ),
    }
}

pub fn verify(args: &VerifyArgs) -> graphsep::Result<SuiteReport> {
    let dims = Dims::new(args.p, args.q)?;
    let exec = if args.sequential { Execution::Sequential } else { Execution::Parallel };
    if args.cross_consistency {
        return cross_consistency(dims, args.trials, args.seed, exec);
    }
    let id = args.theorem.unwrap_or_default();
    let theorem = Theorem::from_id(id)
        .ok_or_else(|| Error::BadParams(format!("unknown theorem {id}; expected 1, 2, 4, 5 or 7")))?;
    run_suite(theorem, dims, args.trials, args.seed, exec)
}

fn write_out(out: &mut dyn Write, text: &str) -> i32 {
    match out.write_all(text.as_bytes()) {
        Ok(()) => EXIT_OK,
        Err(_) => EXIT_INTERNAL,
    }
}

fn input_error(err: &mut dyn Write, e: impl std::fmt::Display) -> i32 {
    let _ = writeln!(err, "error: {e}");
    EXIT_INPUT
}

/// Runs the CLI with `args` (including the program name) and returns the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let _ = write!(err, "{e}");
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INPUT,
            };
        }
    };
    match cli.command {
        Command::Analyze { path, format, spectrum } => {
            let g = match parse_graph_file(&path) {
                Ok(g) => g,
                Err(e) => return input_error(err, e),
            };
            let report = match analyze(&g, spectrum) {
                Ok(r) => r,
                Err(e) => {
                    let _ = writeln!(err, "internal error: {e}");
                    return EXIT_INTERNAL;
                }
            };
            if let Err(e) = check_verdict(&g, &report.verdict) {
                let _ = writeln!(err, "internal error: verdict does not re-validate: {e}");
                return EXIT_INTERNAL;
            }
            let text = match format {
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&report.to_json()).expect("json")),
                Format::Text => report.to_text(),
            };
            write_out(out, &text)
        }
        Command::Spectrum { path, format } => {
            let g = match parse_graph_file(&path) {
                Ok(g) => g,
                Err(e) => return input_error(err, e),
            };
            let s = match spectrum(&g) {
                Ok(s) => s,
                Err(e) => {
                    let _ = writeln!(err, "internal error: {e}");
                    return EXIT_INTERNAL;
                }
            };
            let text = match format {
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&s).expect("json")),
                Format::Text => format!("sigma: {}\nsigma^TB: {}\n", fmt_floats(&s.sigma), fmt_floats(&s.sigma_tb)),
            };
            write_out(out, &text)
        }
        Command::Generate(args) => {
            let g = match generate_graph(&args.family) {
                Ok(g) => g,
                Err(e) => return input_error(err, e),
            };
            let text = write_graph(&g);
            match args.out {
                Some(path) => match fs::write(&path, text) {
                    Ok(()) => EXIT_OK,
                    Err(e) => input_error(err, format!("cannot write {}: {e}", path.display())),
                },
                None => write_out(out, &text),
            }
        }
        Command::Verify(args) => {
            let report = match verify(&args) {
                Ok(r) => r,
                Err(e) => return input_error(err, e),
            };
            if let Some(dir) = &args.dump_dir {
                if let Err(e) = dump_failures(dir, &report) {
                    let _ = writeln!(err, "internal error: cannot dump failures: {e}");
                    return EXIT_INTERNAL;
                }
            }
            let code = write_out(out, &format!("{}\n", serde_json::to_string(&report).expect("json")));
            if code != EXIT_OK {
                code
            } else if report.ok() {
                EXIT_OK
            } else {
                EXIT_SUITE_FAILED
            }
        }
    }
}

fn dump_failures(dir: &Path, report: &SuiteReport) -> std::io::Result<()> {
    if report.failures.is_empty() {
        return Ok(());
    }
    fs::create_dir_all(dir)?;
    for f in &report.failures {
        let name = format!("theorem{}-{}x{}-trial{}-{:016x}.graph", report.theorem, report.dims[0], report.dims[1], f.trial, f.instance_seed);
        fs::write(dir.join(name), format!("# {}\n{}", f.reason, f.graph))?;
    }
    Ok(())
}
