//! Command-line front end: `simulate`, `check` and `convert`.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser, Subcommand};
use thiserror::Error;

use crate::checks::{run_suite, Property, DEFAULT_SEED, SUITES};
use crate::config::{ConfigError, Format, RunConfig};
use crate::dynamics::autoparallel_rhs;
use crate::integrator::{diagnostics_summary, integrate, Summary};
use crate::minkowski::{
    norm_abs, spin_tensor_to_vector, spin_vector_to_tensor, CoVector, FourVector, Signature, SkewTensor,
    DEFAULT_TOLERANCE,
};
use crate::output::{write_csv, write_json};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;
pub const EXIT_CHECK: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "mathisson-top",
    version,
    about = "Free relativistic spinning top: simulate, verify, convert"
)]
pub struct Cli {
    /// Seed for the property suites.
    #[arg(long, global = true, env = "MATHISSON_TOP_SEED")]
    pub seed: Option<u64>,
    /// Output format; overrides the configuration file.
    #[arg(long, global = true, value_parser = parse_format)]
    pub format: Option<Format>,
    /// Output path; overrides the configuration file. Standard output if absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integrate the autoparallel equation from a configuration file.
    Simulate { config: PathBuf },
    /// Run a verification suite.
    Check {
        #[arg(value_parser = suite_names())]
        suite: String,
    },
    /// Convert between the spin tensor and the spin vector.
    #[command(group(ArgGroup::new("input").required(true).args(["tensor", "vector"])))]
    Convert {
        /// File with a 4x4 skew matrix S^{ab}.
        #[arg(long)]
        tensor: Option<PathBuf>,
        /// File with the covariant components s_a.
        #[arg(long)]
        vector: Option<PathBuf>,
        /// Four-velocity, four reals separated by commas or spaces.
        #[arg(long, num_args = 1..=4, value_delimiter = ',', allow_negative_numbers = true, required = true)]
        u: Vec<f64>,
    },
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse()
}

fn suite_names() -> Vec<&'static str> {
    let mut v = SUITES.to_vec();
    v.push("all");
    v
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{0}")]
    Config(#[from] ConfigError),
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Numerical(crate::Error),
    #[error("{count} propert{suffix} failed", suffix = if *.0 == 1 { "y" } else { "ies" }, count = .0)]
    CheckFailed(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Config(_) | CliError::Parse(_) => EXIT_INPUT,
            CliError::Numerical(_) => EXIT_NUMERICAL,
            CliError::CheckFailed(_) => EXIT_CHECK,
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn io_err(path: &str) -> impl Fn(io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_string(),
        source,
    }
}

/// Writes through `emit` into `path`, or to standard output.
fn emit_to(path: Option<&Path>, emit: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> Result<(), CliError> {
    match path {
        Some(p) => {
            let name = p.display().to_string();
            let mut f = io::BufWriter::new(fs::File::create(p).map_err(io_err(&name))?);
            emit(&mut f).map_err(io_err(&name))?;
            f.flush().map_err(io_err(&name))
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            emit(&mut lock).map_err(io_err("<stdout>"))
        }
    }
}

pub fn simulate(cli: &Cli, config: &Path) -> Result<Summary, CliError> {
    let mut cfg = RunConfig::parse(&read(config)?)?;
    if let Some(f) = cli.format {
        cfg.format = f;
    }
    for line in cfg.prepare()? {
        eprintln!("{line}");
    }
    let out = match (&cli.out, &cfg.output) {
        (Some(p), _) => Some(p.clone()),
        (None, Some(p)) => Some(config.parent().unwrap_or(Path::new(".")).join(p)),
        (None, None) => None,
    };
    let params = cfg.params()?;
    let tr =
        integrate(autoparallel_rhs, &cfg.initial_state(), &params, &cfg.integrator()?).map_err(CliError::Numerical)?;
    let summary = diagnostics_summary(&tr).map_err(CliError::Numerical)?;
    emit_to(out.as_deref(), |w| match cfg.format {
        Format::Csv => write_csv(w, &tr),
        Format::Json => write_json(w, &tr, &cfg, &summary),
    })?;
    eprintln!(
        "samples={} max_first_integral_drift={:e} max_pirani_drift={:e} max_residual_norm={:e}",
        summary.samples, summary.max_first_integral_drift, summary.max_pirani_drift, summary.max_residual_norm
    );
    Ok(summary)
}

pub fn check(cli: &Cli, suite: &str) -> Result<Vec<Property>, CliError> {
    let seed = cli.seed.unwrap_or(DEFAULT_SEED);
    let props = run_suite(suite, seed).map_err(CliError::Numerical)?;
    emit_to(cli.out.as_deref(), |w| match cli.format.unwrap_or(Format::Csv) {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *w, &props)?;
            writeln!(w)
        }
        Format::Csv => {
            writeln!(w, "suite {suite} seed {seed}")?;
            for p in &props {
                writeln!(w, "{p}")?;
            }
            Ok(())
        }
    })?;
    let failed = props.iter().filter(|p| !p.passed()).count();
    if failed > 0 {
        return Err(CliError::CheckFailed(failed));
    }
    Ok(props)
}

/// Reals in a text file, separated by commas or whitespace, with `#` comments.
pub fn parse_reals(text: &str) -> Result<Vec<f64>, CliError> {
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("");
        for tok in body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
        {
            let v: f64 = tok
                .parse()
                .map_err(|_| CliError::Parse(format!("line {}: not a real number: {tok:?}", idx + 1)))?;
            if !v.is_finite() {
                return Err(CliError::Parse(format!(
                    "line {}: value must be finite: {tok:?}",
                    idx + 1
                )));
            }
            out.push(v);
        }
    }
    Ok(out)
}

fn numerical_or_input(e: crate::Error) -> CliError {
    match e {
        crate::Error::PiraniViolated(_) => CliError::Numerical(e),
        other => CliError::Parse(other.to_string()),
    }
}

/// Relative Pirani defect of a tensor: `|S u♭|∞ / (|S|∞ |u|∞)`.
pub fn tensor_pirani_defect(s: &SkewTensor, u: &FourVector, g: &Signature) -> f64 {
    let m = s.max_abs();
    if m == 0.0 {
        return 0.0;
    }
    s.contract(&u.lower(g)).max_abs() / (m * u.max_abs())
}

/// Formats the converted counterpart of the input file.
pub fn convert_text(tensor: Option<&str>, vector: Option<&str>, u: &[f64]) -> Result<String, CliError> {
    if u.len() != 4 {
        return Err(CliError::Parse(format!("--u needs 4 reals, got {}", u.len())));
    }
    let g = Signature::LORENTZIAN;
    let u = FourVector([u[0], u[1], u[2], u[3]]);
    if norm_abs(&u, &g) == 0.0 || !u.is_finite() {
        return Err(CliError::Parse("--u must have nonzero finite norm".into()));
    }
    let row = |v: &[f64]| {
        v.iter()
            .map(|c| format!("{:.16e}", c + 0.0))
            .collect::<Vec<_>>()
            .join(" ")
    };
    if let Some(text) = tensor {
        let vals = parse_reals(text)?;
        if vals.len() != 16 {
            return Err(CliError::Parse(format!(
                "tensor file needs 16 reals, got {}",
                vals.len()
            )));
        }
        let m: [[f64; 4]; 4] = std::array::from_fn(|i| std::array::from_fn(|j| vals[4 * i + j]));
        let s = SkewTensor::from_matrix(m, DEFAULT_TOLERANCE).map_err(|e| CliError::Parse(e.to_string()))?;
        let defect = tensor_pirani_defect(&s, &u, &g);
        if defect > DEFAULT_TOLERANCE {
            return Err(CliError::Numerical(crate::Error::PiraniViolated(defect)));
        }
        let v = spin_tensor_to_vector(&s, &u, &g).map_err(numerical_or_input)?;
        return Ok(format!("{}\n", row(&v.0)));
    }
    let text = vector.ok_or_else(|| CliError::Parse("one of --tensor or --vector is required".into()))?;
    let vals = parse_reals(text)?;
    if vals.len() != 4 {
        return Err(CliError::Parse(format!(
            "vector file needs 4 reals, got {}",
            vals.len()
        )));
    }
    let s = CoVector([vals[0], vals[1], vals[2], vals[3]]).raise(&g);
    let t = spin_vector_to_tensor(&s, &u, &g).map_err(numerical_or_input)?;
    let m = t.matrix();
    Ok(m.iter().map(|r| row(r)).collect::<Vec<_>>().join("\n") + "\n")
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Simulate { config } => simulate(cli, config).map(|_| ()),
        Command::Check { suite } => check(cli, suite).map(|_| ()),
        Command::Convert { tensor, vector, u } => {
            let tensor = tensor.as_deref().map(read).transpose()?;
            let vector = vector.as_deref().map(read).transpose()?;
            let text = convert_text(tensor.as_deref(), vector.as_deref(), u)?;
            emit_to(cli.out.as_deref(), |w| w.write_all(text.as_bytes()))
        }
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match run(&cli) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
