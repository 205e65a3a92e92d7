mod commands;
mod parse;
mod report;
mod suite;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::Value;

use dmrb::ncseries::check_trunc;
use dmrb::RingSpec;

use commands::{CmdResult, Ctx, SolveOptions, UsageError};
use report::Report;
use suite::{SuiteName, SuiteOptions};

#[derive(Parser, Debug)]
#[command(name = "dmrb", version, about = "Exact checks for the Betti double shuffle group and its Lie algebra")]
struct Cli {
    /// Coefficient ring: q, dual or padic:<p>:<K>.
    #[arg(long, global = true, default_value = "q")]
    ring: String,
    /// Truncation degree N.
    #[arg(long, global = true, default_value_t = 6)]
    deg: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the JSON report here and print a text summary instead.
    #[arg(long, global = true)]
    json: Option<String>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Membership tests for a twisted Magnus element or a Lie element.
    Check {
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        mu: String,
        /// Group word (`X0 X1^-1`) or series literal.
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        g: String,
        /// Lie element `nu; x`; replaces --mu/--g.
        #[arg(long, conflicts_with_all = ["mu", "g"], allow_hyphen_values = true)]
        lie: Option<String>,
        /// Comma-separated test names; all by default.
        #[arg(long)]
        tests: Option<String>,
    },
    /// Tests for a pro-p element over Z/p^K.
    CheckPadic {
        #[arg(long)]
        p: Option<u64>,
        #[arg(long = "K")]
        k: Option<u32>,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        lambda: i64,
        #[arg(long, default_value = "1")]
        f: String,
        #[arg(long)]
        tests: Option<String>,
    },
    /// Solution spaces of the Lie conditions, degree by degree.
    SolveLie {
        #[arg(long)]
        deg_max: Option<usize>,
        #[arg(long, default_value = "quad,stabM")]
        conditions: String,
        #[arg(long)]
        compare: Option<String>,
        #[arg(long)]
        check_inclusion: Option<String>,
    },
    /// Exhaustive classification of short group words.
    EnumerateDiscrete {
        #[arg(long, default_value_t = 8)]
        max_len: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Gamma series, cocycle value and the reflection identity.
    Gamma {
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        mu: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        g: String,
    },
    /// Runs a named invariant suite.
    Suite {
        #[arg(value_enum)]
        name: SuiteName,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
        #[arg(long)]
        deg_max: Option<usize>,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

fn run(cli: &Cli) -> CmdResult<Report> {
    let ring = RingSpec::parse(&cli.ring)?;
    check_trunc(cli.deg)?;
    let ctx = Ctx { ring, deg: cli.deg, seed: cli.seed };
    let mut config = ctx.config();
    let (command, input, checks) = match &cli.cmd {
        Cmd::Check { mu, g, lie, tests } => {
            let (input, checks) = match lie {
                Some(l) => commands::check_lie(&ctx, l, tests.as_deref())?,
                None => commands::check_group(&ctx, mu, g, tests.as_deref())?,
            };
            ("check", input, checks)
        }
        Cmd::CheckPadic { p, k, lambda, f, tests } => {
            let r = commands::padic_ring(&ctx, *p, *k)?;
            config = Ctx { ring: r, ..ctx }.config();
            let (input, checks) = commands::check_padic(r, ctx.deg, *lambda, f, tests.as_deref())?;
            ("check-padic", input, checks)
        }
        Cmd::SolveLie { deg_max, conditions, compare, check_inclusion } => {
            if ring != RingSpec::Rational {
                return Err(UsageError("solve-lie runs over q only".into()));
            }
            let inclusion = match check_inclusion {
                Some(c) => Some(dmrb::liealg::LieCondition::parse(c)?),
                None => None,
            };
            let opts = SolveOptions {
                deg_max: deg_max.unwrap_or(ctx.deg.saturating_sub(1)),
                conditions: commands::parse_conditions(conditions)?,
                compare: compare.as_deref().map(commands::parse_conditions).transpose()?,
                inclusion,
            };
            ("solve-lie", Value::Null, commands::solve_lie(ctx.deg, &opts)?)
        }
        Cmd::EnumerateDiscrete { max_len, samples } => {
            if ring != RingSpec::Rational {
                return Err(UsageError("enumerate-discrete runs over q only".into()));
            }
            ("enumerate-discrete", Value::Null, commands::enumerate_discrete(*max_len, ctx.deg, *samples, ctx.seed)?)
        }
        Cmd::Gamma { mu, g } => {
            let (input, checks) = commands::gamma(&ctx, mu, g)?;
            ("gamma", input, checks)
        }
        Cmd::Suite { name, max_len, deg_max, samples } => {
            let o = SuiteOptions { max_len: *max_len, deg_max: *deg_max, samples: *samples };
            let checks = suite::run_suite(*name, &ctx, &o)?;
            ("suite", serde_json::json!({ "suite": name.id() }), checks)
        }
    };
    Ok(Report::new(command, config, input, checks))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    match &cli.json {
        Some(path) => {
            if let Err(e) = std::fs::write(path, report.to_json()) {
                eprintln!("error: cannot write {path}: {e}");
                return ExitCode::from(2);
            }
            print!("{}", report.to_text());
        }
        None => print!("{}", report.to_json()),
    }
    if report.failed() {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
