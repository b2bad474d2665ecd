//! Command-line front end for the `njordan` verifiers.
//!
//! Exit codes: `0` expected outcome, `1` check failed, `2` usage error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use njordan::concrete::{self, StructureAlgebra};
use njordan::jordan::{self, Certificate};
use njordan::{Error, Format, JordanConfig, Mode, Modes, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Above this degree the run needs `--force`.
pub const FORCE_THRESHOLD: usize = 7;

#[derive(Debug, Parser)]
#[command(name = "njordan", version, about = "Exact verification of polarization identities for n-Jordan homomorphisms")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,

    /// Also write the report to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads for the engine (defaults to all cores).
    #[arg(long, global = true, env = "NJORDAN_THREADS")]
    threads: Option<usize>,

    /// Include wall-clock time in the report (makes output nondeterministic).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Com,
    Noncom,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Com => Mode::Commutative,
            ModeArg::Noncom => Mode::Noncommutative,
        }
    }
}

#[derive(Debug, Args)]
struct DegreeArgs {
    /// Degree n of the Jordan condition.
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..=64))]
    n: u32,

    /// Domain algebra mode.
    #[arg(long, value_enum, default_value_t = ModeArg::Com)]
    a_mode: ModeArg,

    /// Codomain algebra mode.
    #[arg(long, value_enum, default_value_t = ModeArg::Com)]
    b_mode: ModeArg,

    /// Allow n above the size guard.
    #[arg(long)]
    force: bool,

    /// Generator cap (at most 64).
    #[arg(long, default_value_t = njordan::DEFAULT_GENERATOR_CAP)]
    cap: usize,
}

impl DegreeArgs {
    fn modes(&self) -> Modes {
        Modes::new(self.a_mode.into(), self.b_mode.into())
    }

    fn config(&self) -> Result<JordanConfig, Failure> {
        let n = self.n as usize;
        if n > FORCE_THRESHOLD && !self.force {
            return Err(Failure::Usage(format!(
                "n = {n} exceeds {FORCE_THRESHOLD}; expansion grows like n^n, pass --force to run anyway"
            )));
        }
        let cap = if self.force { self.cap.max(n) } else { self.cap };
        JordanConfig::with_cap(n, self.modes(), cap).map_err(Failure::from)
    }

    fn echo(&self, name: &str) -> String {
        format!(
            "{name} --n {} --a-mode {} --b-mode {}",
            self.n,
            Mode::from(self.a_mode),
            Mode::from(self.b_mode)
        )
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check that the top component of the polarized defect equals the symmetrized defect.
    Verify(DegreeArgs),
    /// Check that the polarized defect is the sum of its components.
    Decompose(DegreeArgs),
    /// Show that the intermediate-phi decomposition is wrong (n >= 4).
    Refute(DegreeArgs),
    /// Emit (or check) the signed phi certificate for the symmetrized defect.
    Certificate {
        #[command(flatten)]
        degree: DegreeArgs,
        /// Check this certificate file instead of emitting a new one.
        #[arg(long)]
        check: Option<PathBuf>,
        /// Write the raw certificate file here.
        #[arg(long)]
        write: Option<PathBuf>,
    },
    /// Check the commutative collapse to n! times the plain defect.
    Collapse(DegreeArgs),
    /// Transpose on M2: Jordan but not a homomorphism.
    Concrete {
        #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Evaluate the symbolic identities at random points in concrete algebras.
    CrossValidate {
        #[command(flatten)]
        degree: DegreeArgs,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Domain algebra: builtin name (diag1-4, trunc1-5, m2) or a file path.
        #[arg(long)]
        algebra_a: Option<String>,
        /// Codomain algebra: builtin name or a file path.
        #[arg(long)]
        algebra_b: Option<String>,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Engine(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CertificateMismatch(_) => Failure::Engine(e),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn load_algebra(spec: Option<&str>, mode: Mode) -> Result<StructureAlgebra, Failure> {
    let Some(spec) = spec else {
        return Ok(concrete::default_algebra(mode));
    };
    if concrete::BUILTIN_NAMES.contains(&spec) {
        return Ok(concrete::builtin(spec)?);
    }
    let text = fs::read_to_string(spec).map_err(|e| Failure::Usage(format!("cannot read algebra `{spec}`: {e}")))?;
    Ok(StructureAlgebra::parse(spec, &text)?)
}

fn execute(command: &Command) -> Result<Report, Failure> {
    match command {
        Command::Verify(d) => {
            let cfg = d.config()?;
            let check = jordan::verify_theorem(&cfg)?;
            Ok(Report::identity(&d.echo("verify"), cfg.n(), cfg.modes(), "theorem", &check))
        }
        Command::Decompose(d) => {
            let cfg = d.config()?;
            let check = jordan::verify_decomposition(&cfg)?;
            Ok(Report::identity(&d.echo("decompose"), cfg.n(), cfg.modes(), "decomposition", &check))
        }
        Command::Refute(d) => {
            let cfg = d.config()?;
            let r = jordan::refute_cheshmavar(&cfg)?;
            Ok(Report::refutation(&d.echo("refute"), cfg.modes(), &r))
        }
        Command::Certificate { degree, check, write } => {
            let cfg = degree.config()?;
            let mut echo = degree.echo("certificate");
            let cert = match check {
                Some(path) => {
                    echo.push_str(&format!(" --check {}", path.display()));
                    let text = fs::read_to_string(path)
                        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
                    Certificate::parse(&text)?
                }
                None => jordan::emit_certificate(&cfg)?,
            };
            if let Some(path) = write {
                fs::write(path, cert.to_text()).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            }
            let result = cert.check(&cfg)?;
            Ok(Report::certificate(&echo, cfg.n(), cfg.modes(), &cert, &result))
        }
        Command::Collapse(d) => {
            let cfg = d.config()?;
            let check = jordan::verify_collapse(&cfg)?;
            Ok(Report::collapse(&d.echo("collapse"), cfg.n(), cfg.modes(), &check))
        }
        Command::Concrete { samples, seed } => {
            let ce = concrete::transpose_counterexample(*samples, *seed)?;
            Ok(Report::concrete(&format!("concrete --samples {samples} --seed {seed}"), &ce))
        }
        Command::CrossValidate {
            degree,
            trials,
            seed,
            algebra_a,
            algebra_b,
        } => {
            let cfg = degree.config()?;
            let alg_a = load_algebra(algebra_a.as_deref(), cfg.modes().a)?;
            let alg_b = load_algebra(algebra_b.as_deref(), cfg.modes().b)?;
            let cv = concrete::cross_validate(&cfg, *trials, *seed, &alg_a, &alg_b)?;
            let echo = format!(
                "{} --trials {trials} --seed {seed} --algebra-a {} --algebra-b {}",
                degree.echo("cross-validate"),
                alg_a.name(),
                alg_b.name()
            );
            Ok(Report::cross_validation(&echo, cfg.n(), cfg.modes(), *seed, &cv))
        }
    }
}

/// Parses `argv` (including the program name), runs the subcommand, and
/// writes the report to `stdout`. Returns the process exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = stderr.write_all(rendered.as_bytes());
            } else {
                let _ = stdout.write_all(rendered.as_bytes());
            }
            return code;
        }
    };

    if let Some(threads) = cli.threads {
        // Only the first configuration in a process takes effect.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }

    let started = Instant::now();
    let report = match execute(&cli.command) {
        Ok(report) => report,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_USAGE;
        }
        Err(Failure::Engine(e)) => {
            let _ = writeln!(stderr, "engine error: {e}");
            return EXIT_CHECK_FAILED;
        }
        Err(Failure::Io(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_CHECK_FAILED;
        }
    };
    let report = if cli.timing {
        report.with_elapsed(started.elapsed().as_millis() as u64)
    } else {
        report
    };

    let format = match cli.format {
        FormatArg::Text => Format::Text,
        FormatArg::Json => Format::Json,
    };
    let rendered = report.render(format);
    if let Some(path) = &cli.out {
        if let Err(e) = fs::write(path, &rendered) {
            let _ = writeln!(stderr, "error: {}: {e}", path.display());
            return EXIT_CHECK_FAILED;
        }
    }
    let _ = stdout.write_all(rendered.as_bytes());
    if report.passed() {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}
