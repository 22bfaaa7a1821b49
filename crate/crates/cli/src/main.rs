use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use coxlim::coxsys::{build_form, irreducible_components, signature, CoxeterMatrix};
use coxlim::exec::configure_threads;
use coxlim::limits::{classify_action, limit_set_sample, write_csv, SampleMode, SampleOptions};
use coxlim::render::{render_svg, RenderOptions};
use coxlim::suites::{run_suite, Suite};
use coxlim::words::parse_word;
use coxlim::{Error, Execution, RunConfig, System, Tolerances};

#[derive(Parser, Debug)]
#[command(
    name = "coxlim",
    version,
    about = "Limit sets and Hilbert geometry of Lorentzian Coxeter groups"
)]
struct Cli {
    #[command(flatten)]
    global: Global,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Relative eigenvalue threshold for counting a direction as null.
    #[arg(long, global = true, default_value_t = 1e-8)]
    zero_tol: f64,
    /// |q| threshold for classifying a chart point as boundary.
    #[arg(long, global = true, default_value_t = 1e-10)]
    boundary_tol: f64,
    /// Relative threshold for the sign of a root coordinate.
    #[arg(long, global = true, default_value_t = 1e-9)]
    descent_tol: f64,
    /// Stop enumerating once a ball would hold more elements than this.
    #[arg(long, global = true, default_value_t = 5_000_000)]
    max_elements: usize,
    /// Run every loop on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print signature, Perron vector, classification and cusps.
    Analyze { file: PathBuf },
    /// Sample the limit set and write CSV (and SVG for `.svg` outputs).
    Limitset(LimitsetArgs),
    /// Run an invariant suite and report each check.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct LimitsetArgs {
    file: PathBuf,
    #[arg(long, default_value_t = 8)]
    depth: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Orbit)]
    mode: ModeArg,
    /// Output path; `.svg` also writes the CSV next to it.
    #[arg(long)]
    out: PathBuf,
    /// Number of word lengths sampled, ending at the depth.
    #[arg(long, default_value_t = 3)]
    window: usize,
    /// Keep points with |q| at most this.
    #[arg(long, default_value_t = 0.05)]
    near: f64,
    /// Restrict to a special subgroup, e.g. "1 2".
    #[arg(long)]
    subgroup: Option<String>,
    /// Viewing direction for rank-4 pictures, e.g. "1,2,3,4".
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    view: Option<Vec<f64>>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    file: PathBuf,
    #[arg(long, value_enum)]
    suite: SuiteArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Depth of the Cayley balls used by the suite.
    #[arg(long, default_value_t = 8)]
    depth: usize,
    /// Depth of the horoball orbit.
    #[arg(long, default_value_t = 6)]
    horoball_depth: usize,
    /// Random rays in the ct suite.
    #[arg(long, default_value_t = 20)]
    trials: usize,
    /// Word length of each random ray in the ct suite.
    #[arg(long, default_value_t = 40)]
    length: usize,
    /// Fixed horoball level instead of the search.
    #[arg(long, allow_hyphen_values = true)]
    horoball_level: Option<f64>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Orbit,
    Roots,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteArg {
    Geometry,
    Words,
    Cusps,
    Ct,
}

impl From<ModeArg> for SampleMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Orbit => SampleMode::Orbit,
            ModeArg::Roots => SampleMode::Roots,
        }
    }
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Geometry => Suite::Geometry,
            SuiteArg::Words => Suite::Words,
            SuiteArg::Cusps => Suite::Cusps,
            SuiteArg::Ct => Suite::Ct,
        }
    }
}

/// A failed run and its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. }
            | Error::InvalidInput(_)
            | Error::UnsupportedSignature { .. }
            | Error::Reducible { .. }
            | Error::Unsupported(_) => 2,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure {
        code: 2,
        message: format!("{}: {e}", path.display()),
    }
}

/// 17 significant digits.
fn sig(x: f64) -> String {
    format!("{x:.16e}")
}

fn vector(v: impl IntoIterator<Item = f64>) -> String {
    let parts: Vec<String> = v.into_iter().map(sig).collect();
    format!("({})", parts.join(", "))
}

impl Global {
    fn config(&self) -> RunConfig {
        RunConfig {
            tolerances: Tolerances {
                zero: self.zero_tol,
                boundary: self.boundary_tol,
                descent: self.descent_tol,
                ..Tolerances::default()
            },
            max_elements: self.max_elements,
            execution: if self.sequential {
                Execution::Sequential
            } else {
                Execution::default()
            },
            ..RunConfig::default()
        }
    }
}

fn read_matrix(path: &Path) -> Result<CoxeterMatrix, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    CoxeterMatrix::parse(&text).map_err(|e| Failure {
        code: 2,
        message: format!("{}: {e}", path.display()),
    })
}

fn load(path: &Path, config: &RunConfig) -> Result<System, Failure> {
    Ok(System::new(read_matrix(path)?, config.tolerances)?)
}

fn analyze(path: &Path, config: &RunConfig, out: &mut impl Write) -> Result<(), Failure> {
    let matrix = read_matrix(path)?;
    let form = build_form(&matrix)?;
    let sig_report = signature(&form, config.tolerances.zero);
    let comps = irreducible_components(&matrix);
    let w = |out: &mut dyn Write, s: String| {
        writeln!(out, "{s}").map_err(|e| io_failure(Path::new("stdout"), e))
    };
    w(out, format!("rank: {}", matrix.rank()))?;
    w(out, format!("signature: {sig_report}"))?;
    w(
        out,
        format!(
            "eigenvalues: {}",
            vector(sig_report.eigenvalues.iter().copied())
        ),
    )?;
    if comps.len() > 1 {
        let blocks: Vec<String> = comps
            .iter()
            .map(|c| {
                format!(
                    "{{{}}}",
                    c.iter()
                        .map(|i| (i + 1).to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                )
            })
            .collect();
        w(
            out,
            format!("irreducible: no, components {}", blocks.join(" ")),
        )?;
    } else {
        w(out, "irreducible: yes".into())?;
    }
    let system = System::new(matrix, config.tolerances)?;
    let chart = system.chart();
    w(
        out,
        format!("perron vector o: {}", vector(chart.o().iter().copied())),
    )?;
    w(out, format!("perron eigenvalue: {}", sig(chart.lambda())))?;
    let class = classify_action(&system)?;
    w(
        out,
        format!("classification: {} ({})", class.case, class.case.numeral()),
    )?;
    for f in &class.facets {
        let subset: Vec<String> = f.subset.iter().map(|i| (i + 1).to_string()).collect();
        w(out, format!("  facet {{{}}}: {}", subset.join(","), f.kind))?;
    }
    if let Some(p) = &class.protrusion {
        w(
            out,
            format!("protrusion witness: {}", vector(p.coords().iter().copied())),
        )?;
    }
    let cusp_summary = if class.cusps.is_empty() {
        "cusps: none".to_string()
    } else {
        let mut ranks: Vec<usize> = class.cusps.iter().map(|c| c.rank).collect();
        ranks.sort_unstable();
        ranks.dedup();
        let ranks: Vec<String> = ranks.iter().map(|r| r.to_string()).collect();
        format!("{} cusps (rank {})", class.cusps.len(), ranks.join(", "))
    };
    w(out, format!("cusps: {}", class.cusps.len()))?;
    for c in &class.cusps {
        let subset: Vec<String> = c.delta_prime.iter().map(|i| (i + 1).to_string()).collect();
        w(
            out,
            format!(
                "  cusp {{{}}} rank {}: {}",
                subset.join(","),
                c.rank,
                vector(c.point.coords().iter().copied())
            ),
        )?;
    }
    w(
        out,
        format!(
            "summary: signature {sig_report}; {}; {cusp_summary}",
            class.case
        ),
    )?;
    Ok(())
}

fn limitset(args: &LimitsetArgs, config: &RunConfig, out: &mut impl Write) -> Result<(), Failure> {
    let system = load(&args.file, config)?;
    let subgroup = args
        .subgroup
        .as_deref()
        .map(|s| parse_word(s, system.rank()))
        .transpose()?;
    let opts = SampleOptions {
        depth: args.depth,
        mode: args.mode.into(),
        window: args.window,
        near: args.near,
        subgroup,
        max_elements: config.max_elements,
        execution: config.execution,
    };
    let sample = limit_set_sample(&system, &opts)?;
    let svg = args.out.extension().is_some_and(|e| e == "svg");
    let csv_path = if svg {
        args.out.with_extension("csv")
    } else {
        args.out.clone()
    };
    let mut buf = Vec::new();
    write_csv(&sample, &mut buf).expect("write to memory");
    fs::write(&csv_path, buf).map_err(|e| io_failure(&csv_path, e))?;
    writeln!(
        out,
        "wrote {} points to {}",
        sample.points.len(),
        csv_path.display()
    )
    .map_err(|e| io_failure(Path::new("stdout"), e))?;
    if svg {
        let mut ro = RenderOptions::default();
        if let Some(v) = &args.view {
            ro.view = v.clone();
        }
        let picture = render_svg(&system, &sample, &ro)?;
        fs::write(&args.out, picture).map_err(|e| io_failure(&args.out, e))?;
        writeln!(out, "wrote {}", args.out.display())
            .map_err(|e| io_failure(Path::new("stdout"), e))?;
    }
    Ok(())
}

fn verify(args: &VerifyArgs, config: &RunConfig, out: &mut impl Write) -> Result<(), Failure> {
    let config = RunConfig {
        seed: args.seed,
        depth: args.depth,
        horoball_depth: args.horoball_depth,
        horoball_level: args.horoball_level,
        ct_trials: args.trials,
        ct_word_length: args.length,
        ..config.clone()
    };
    let system = load(&args.file, &config)?;
    let report = run_suite(&system, args.suite.into(), &config)?;
    let io = |e| io_failure(Path::new("stdout"), e);
    writeln!(out, "suite {} seed {}", report.suite, args.seed).map_err(io)?;
    for c in &report.checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        let mut line = format!("{status} {} {}", c.name, sig(c.value));
        if c.relation() != "finite" {
            line.push_str(&format!(" {} {}", c.relation(), sig(c.threshold)));
        } else {
            line.push_str(" finite");
        }
        if !c.detail.is_empty() {
            line.push_str(&format!("  # {}", c.detail));
        }
        writeln!(out, "{line}").map_err(io)?;
    }
    let failures: Vec<_> = report.failures().collect();
    if failures.is_empty() {
        writeln!(out, "result: pass ({} checks)", report.checks.len()).map_err(io)?;
        Ok(())
    } else {
        writeln!(
            out,
            "result: fail ({} of {} checks)",
            failures.len(),
            report.checks.len()
        )
        .map_err(io)?;
        for c in &failures {
            writeln!(
                out,
                "failure\tsuite={}\tcheck={}\tvalue={}\tthreshold={}",
                report.suite,
                c.name,
                sig(c.value),
                sig(c.threshold)
            )
            .map_err(io)?;
        }
        Err(Failure {
            code: 1,
            message: format!("{} check(s) failed", failures.len()),
        })
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("COXLIM_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        configure_threads(n);
    }
    let config = cli.global.config();
    if let Err(e) = config.tolerances.validate() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let result = match &cli.command {
        Command::Analyze { file } => analyze(file, &config, &mut out),
        Command::Limitset(args) => limitset(args, &config, &mut out),
        Command::Verify(args) => verify(args, &config, &mut out),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
