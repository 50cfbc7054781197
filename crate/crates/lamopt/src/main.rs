//! Command-line front end: normalize λ-terms, run interaction-system
//! programs, and self-test against the reference reducer.
//!
//! Exit codes: 0 success, 1 error, 2 fuel exhausted, 3 oracle mismatch.

use clap::{Args, Parser, Subcommand, ValueEnum};
use lamopt::inet::{reduce, reduce_traced, EngineError, Strategy, TraceEvent};
use lamopt::optimal::NormalizeError;
use lamopt::term::{alpha_eq, normal_order_nf, parse_term, print_term, print_term_ascii};
use lamopt::{build_system, dsl, Stats};
use std::io::Read;
use std::process::ExitCode;

/// Reference interaction counts for the bundled `3^3 - (2+2)!` benchmark.
const REFERENCE_TOTAL: u64 = 2_652_687;
const REFERENCE_ORACLE: u64 = 2_621_262;
const REFERENCE_WAITING: u64 = 1_182_981;
const REFERENCE_WAITING_VS_ORACLE: u64 = 1_159_057;

#[derive(Parser)]
#[command(name = "lamopt", version, about = "λK-normalization on interaction nets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Fifo,
    Lifo,
    Random,
}

#[derive(Args)]
struct Common {
    /// Input file, or '-' for stdin.
    #[arg(default_value = "-")]
    input: String,
    /// Equation scheduling strategy.
    #[arg(long, value_enum, default_value_t = StrategyArg::Fifo)]
    strategy: StrategyArg,
    /// Seed for --strategy random.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Interaction budget.
    #[arg(long, default_value_t = 100_000_000)]
    fuel: u64,
    /// Emit one line per interaction/indirection to stderr.
    #[arg(long)]
    trace: bool,
    /// Use `\` instead of `λ` (and ASCII configuration brackets).
    #[arg(long)]
    ascii: bool,
}

impl Common {
    fn strategy(&self) -> Strategy {
        match self.strategy {
            StrategyArg::Fifo => Strategy::Fifo,
            StrategyArg::Lifo => Strategy::Lifo,
            StrategyArg::Random => Strategy::Random(self.seed),
        }
    }

    fn read_input(&self) -> std::io::Result<String> {
        if self.input == "-" {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf)?;
            Ok(buf)
        } else {
            std::fs::read_to_string(&self.input)
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Normalize a λ-term from a `.lam` file.
    Normalize {
        #[command(flatten)]
        common: Common,
        /// Print the interaction statistics document after the result.
        #[arg(long)]
        stats: bool,
        /// Machine-readable JSON output on stdout.
        #[arg(long)]
        json: bool,
        /// Also reduce with the reference normal-order reducer and compare.
        #[arg(long)]
        oracle_check: bool,
        /// β-step budget for the reference reducer.
        #[arg(long, default_value_t = 1_000_000)]
        oracle_fuel: u64,
        /// Count fans as oracle nodes in the comparison block.
        #[arg(long)]
        count_delta_as_oracle: bool,
    },
    /// Run an interaction-system program from a `.inet` file.
    Run {
        #[command(flatten)]
        common: Common,
    },
    /// Normalize the bundled corpus under every strategy, checking each
    /// result against the reference reducer.
    Selftest {
        #[command(flatten)]
        common: Common,
        /// Restrict to a single strategy instead of all three.
        #[arg(long, value_enum)]
        only: Option<StrategyArg>,
        /// β-step budget for the reference reducer.
        #[arg(long, default_value_t = 1_000_000)]
        oracle_fuel: u64,
    },
}

fn trace_sink() -> impl FnMut(TraceEvent) {
    let mut last = 0u64;
    move |ev: TraceEvent| {
        let idx = if ev.label == "indirection" {
            last
        } else {
            last = ev.interactions;
            ev.interactions
        };
        eprintln!("#{idx} {} {}", ev.label, ev.detail);
    }
}

fn print_stats_comparison(stats: &Stats, count_delta_as_oracle: bool) {
    let oracle = if count_delta_as_oracle {
        stats.oracle_related_with_fan
    } else {
        stats.oracle_related
    };
    let pct = |n: u64| {
        if stats.total == 0 {
            0.0
        } else {
            100.0 * n as f64 / stats.total as f64
        }
    };
    eprintln!(
        "this run:  total {} | oracle-related {} ({:.1}%) | waiting {} ({:.1}%) | waiting vs oracle {}",
        stats.total,
        oracle,
        pct(oracle),
        stats.waiting,
        pct(stats.waiting),
        stats.waiting_vs_oracle
    );
    eprintln!(
        "reference: total {REFERENCE_TOTAL} | oracle-related {REFERENCE_ORACLE} (98.8%) | waiting {REFERENCE_WAITING} (44.6%) | waiting vs oracle {REFERENCE_WAITING_VS_ORACLE}  (3^3 - (2+2)! benchmark)"
    );
}

fn cmd_normalize(
    common: Common,
    stats_flag: bool,
    json: bool,
    oracle_check: bool,
    oracle_fuel: u64,
    count_delta_as_oracle: bool,
) -> ExitCode {
    let text = match common.read_input() {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", common.input);
            return ExitCode::from(1);
        }
    };
    let term = match parse_term(&text) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let sys = build_system();
    let outcome = if common.trace {
        let mut sink = trace_sink();
        sys.normalize_traced(&term, common.strategy(), common.fuel, &mut sink)
    } else {
        sys.normalize(&term, common.strategy(), common.fuel)
    };
    let (nf, stats) = match outcome {
        Ok(ok) => ok,
        Err(err) => {
            let stats = err.stats();
            eprintln!("error: {err}");
            if stats_flag {
                eprintln!("partial stats: {}", stats.to_json());
            }
            let code = match &err {
                NormalizeError::Engine(f)
                    if matches!(f.error, EngineError::FuelExhausted { .. }) =>
                {
                    2
                }
                _ => 1,
            };
            return ExitCode::from(code);
        }
    };

    let oracle_verdict = if oracle_check {
        match normal_order_nf(&term, oracle_fuel) {
            Ok(reference) => Some(alpha_eq(&nf, &reference)),
            Err(e) => {
                eprintln!("oracle inconclusive: {e}");
                None
            }
        }
    } else {
        None
    };

    let rendered = if common.ascii {
        print_term_ascii(&nf)
    } else {
        print_term(&nf)
    };
    if json {
        let doc = serde_json::json!({
            "term": rendered,
            "stats": stats,
            "oracle": oracle_verdict.map(|ok| if ok { "match" } else { "mismatch" }),
        });
        println!("{doc}");
    } else {
        println!("{rendered}");
        if stats_flag {
            println!("{}", stats.to_json());
        }
        if let Some(ok) = oracle_verdict {
            println!("oracle: {}", if ok { "MATCH" } else { "MISMATCH" });
        }
    }
    if stats_flag {
        print_stats_comparison(&stats, count_delta_as_oracle);
    }
    match oracle_verdict {
        Some(false) => ExitCode::from(3),
        _ => ExitCode::SUCCESS,
    }
}

fn cmd_run(common: Common) -> ExitCode {
    let text = match common.read_input() {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", common.input);
            return ExitCode::from(1);
        }
    };
    let program = match dsl::parse_system(&text) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    for w in program.warnings() {
        eprintln!("warning: {w}");
    }
    let (table, config) = match dsl::load(&program) {
        Ok(ok) => ok,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let result = if common.trace {
        let mut sink = trace_sink();
        reduce_traced(config, &table, common.strategy(), common.fuel, &mut sink)
    } else {
        reduce(config, &table, common.strategy(), common.fuel)
    };
    match result {
        Ok((out, stats)) => {
            println!("{}", out.display(common.ascii));
            eprintln!("{} interactions, {} indirections", stats.total, stats.indirections);
            ExitCode::SUCCESS
        }
        Err(failure) => {
            eprintln!("error: {failure}");
            eprintln!("after: {}", failure.config.display(common.ascii));
            if matches!(failure.error, EngineError::FuelExhausted { .. }) {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn cmd_selftest(common: Common, only: Option<StrategyArg>, oracle_fuel: u64) -> ExitCode {
    let sys = build_system();
    // --only (or a non-default --strategy) restricts the run; the default is
    // all three strategies.
    let restriction = only.or(match common.strategy {
        StrategyArg::Fifo => None,
        other => Some(other),
    });
    let strategies: Vec<(String, Strategy)> = match restriction {
        None => vec![
            ("fifo".into(), Strategy::Fifo),
            ("lifo".into(), Strategy::Lifo),
            (format!("random({})", common.seed), Strategy::Random(common.seed)),
        ],
        Some(StrategyArg::Fifo) => vec![("fifo".into(), Strategy::Fifo)],
        Some(StrategyArg::Lifo) => vec![("lifo".into(), Strategy::Lifo)],
        Some(StrategyArg::Random) => {
            vec![(format!("random({})", common.seed), Strategy::Random(common.seed))]
        }
    };
    let mut failures = 0usize;
    println!("{:<22} {:<12} {:>12}  result", "term", "strategy", "interactions");
    for (name, src) in lamopt::corpus::CORPUS {
        let term = match parse_term(src) {
            Ok(t) => t,
            Err(e) => {
                println!("{name:<22} {:<12} {:>12}  PARSE ERROR: {e}", "-", "-");
                failures += 1;
                continue;
            }
        };
        let reference = normal_order_nf(&term, oracle_fuel);
        for (sname, strategy) in &strategies {
            match sys.normalize(&term, *strategy, common.fuel) {
                Ok((nf, stats)) => {
                    let verdict = match &reference {
                        Ok(r) if alpha_eq(&nf, r) => "MATCH",
                        Ok(_) => {
                            failures += 1;
                            "MISMATCH"
                        }
                        Err(_) => {
                            failures += 1;
                            "ORACLE DIVERGED"
                        }
                    };
                    println!("{name:<22} {sname:<12} {:>12}  {verdict}", stats.total);
                }
                Err(err) => {
                    failures += 1;
                    println!("{name:<22} {sname:<12} {:>12}  FAIL: {err}", err.stats().total);
                }
            }
        }
    }
    if failures == 0 {
        println!("all corpus entries match");
        ExitCode::SUCCESS
    } else {
        println!("{failures} failure(s)");
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Normalize {
            common,
            stats,
            json,
            oracle_check,
            oracle_fuel,
            count_delta_as_oracle,
        } => cmd_normalize(common, stats, json, oracle_check, oracle_fuel, count_delta_as_oracle),
        Command::Run { common } => cmd_run(common),
        Command::Selftest {
            common,
            only,
            oracle_fuel,
        } => cmd_selftest(common, only, oracle_fuel),
    }
}
