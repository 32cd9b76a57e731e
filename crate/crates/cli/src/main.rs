use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use khtwist::format::{jones_text, scan_csv, scan_text, table_csv, table_text};
use khtwist::input::{load, twist_base, InputError};
use khtwist::suite::{self, SuiteOptions};
use khtwist_core::complex::{ComplexError, DEFAULT_BUDGET};
use khtwist_core::experiments::{torus_scan, twist_scan, ScanOptions, ScanReport};
use khtwist_core::homology::{compute_unnormalized, jones_from_kh, ComputeOptions, HomologyError};
use khtwist_core::jones_polynomial;

/// Rational Khovanov homology, Jones polynomials and twist-family scans.
#[derive(Parser)]
#[command(name = "kh", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Subcommand)]
enum Command {
    /// Normalized Khovanov homology table of a diagram.
    Compute,
    /// Jones polynomial by the bracket and from Khovanov homology.
    Jones,
    /// Scan the half-twist family of a marked diagram.
    TwistScan,
    /// Scan the torus links T(K, n) for n up to --max-n.
    TorusScan,
    /// Run the built-in fixture suite.
    Verify,
}

#[derive(Args)]
struct Common {
    /// PD code file.
    #[arg(long, global = true, value_name = "FILE")]
    pd: Option<PathBuf>,
    /// Braid word such as `1,-2,1`; its closure is the diagram.
    #[arg(long, global = true, value_name = "WORD", allow_hyphen_values = true)]
    braid: Option<String>,
    #[arg(long, global = true, value_name = "K")]
    strands: Option<usize>,
    /// Last twist count of a scan [default: 12, torus 10].
    #[arg(long = "max-n", global = true, value_name = "N")]
    max_n: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Out::Text)]
    out: Out,
    /// Worker threads [default: all cores].
    #[arg(long, global = true, value_name = "T")]
    threads: Option<usize>,
    /// Crossing limit for homology.
    #[arg(long, global = true, value_name = "C", default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    /// Compute scan rows concurrently.
    #[arg(long = "parallel-rows", global = true)]
    parallel_rows: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Out {
    Text,
    Csv,
}

enum Failure {
    Input(String),
    Verdict(Option<String>),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e.to_string())
    }
}

fn homology_failure(e: HomologyError) -> Failure {
    match e {
        HomologyError::Complex(ComplexError::BudgetExceeded { .. }) => Failure::Input(e.to_string()),
        other => Failure::Verdict(Some(other.to_string())),
    }
}

impl Common {
    fn compute(&self) -> ComputeOptions {
        ComputeOptions { budget: self.budget, ..ComputeOptions::default() }
    }

    fn scan(&self) -> ScanOptions {
        ScanOptions { compute: self.compute(), parallel_rows: self.parallel_rows }
    }

    fn diagram(&self) -> Result<khtwist_core::LinkDiagram, InputError> {
        load(self.pd.as_deref(), self.braid.as_deref(), self.strands)
    }
}

fn emit_scan(r: &ScanReport, out: Out) -> Result<String, Failure> {
    let text = match out {
        Out::Csv => scan_csv(r),
        Out::Text => scan_text(r),
    };
    if r.passed() {
        Ok(text)
    } else {
        print!("{text}");
        let failed: Vec<&str> = r.verdicts.iter().filter(|v| v.gating && !v.passed).map(|v| v.name).collect();
        Err(Failure::Verdict(Some(format!("failed: {} ({} row errors)", failed.join(", "), r.failures.len()))))
    }
}

fn run(cmd: &Command, c: &Common) -> Result<String, Failure> {
    match cmd {
        Command::Compute => {
            let d = c.diagram()?;
            let t = compute_unnormalized(&d, &c.compute()).and_then(|t| t.normalize()).map_err(homology_failure)?;
            Ok(match c.out {
                Out::Text => table_text(&t),
                Out::Csv => table_csv(&t),
            })
        }
        Command::Jones => {
            let d = c.diagram()?;
            let bracket = jones_polynomial(&d).map_err(|e| Failure::Input(e.to_string()))?;
            let t = compute_unnormalized(&d, &c.compute()).and_then(|t| t.normalize()).map_err(homology_failure)?;
            let via_kh = jones_from_kh(&t).map_err(homology_failure)?;
            let text = jones_text(&bracket, &via_kh);
            if bracket == via_kh {
                Ok(text)
            } else {
                print!("{text}");
                Err(Failure::Verdict(Some("the two Jones polynomials differ".into())))
            }
        }
        Command::TwistScan => {
            let base = twist_base(c.diagram()?)?;
            let r = twist_scan(&base, c.max_n.unwrap_or(12), &c.scan()).map_err(|e| Failure::Input(e.to_string()))?;
            emit_scan(&r, c.out)
        }
        Command::TorusScan => {
            let p = c.strands.unwrap_or(2);
            let r = torus_scan(p, c.max_n.unwrap_or(10), &c.scan()).map_err(|e| Failure::Input(e.to_string()))?;
            emit_scan(&r, c.out)
        }
        Command::Verify => {
            let opts = SuiteOptions { max_n: c.max_n.unwrap_or(12), scan: c.scan(), ..SuiteOptions::default() };
            let r = suite::run(&opts);
            let text = r.render();
            if r.passed() {
                Ok(text)
            } else {
                print!("{text}");
                Err(Failure::Verdict(None))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.common.threads {
        if t == 0 {
            eprintln!("kh: error: --threads must be positive");
            return ExitCode::from(2);
        }
        pool = pool.num_threads(t);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("kh: error: {e}");
            return ExitCode::from(2);
        }
    };
    match pool.install(|| run(&cli.command, &cli.common)) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("kh: error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verdict(msg)) => {
            eprintln!("kh: verdict failure{}", msg.map(|m| format!(": {m}")).unwrap_or_default());
            ExitCode::from(1)
        }
    }
}
