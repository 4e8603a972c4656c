//! Command line front end for the ducci_periods library.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;

use ducci_periods::partitions::{
    best_coset, bound_report, coset_set, partition_enumerate, partition_count, BoundReport,
    CosetMember, PartitionVector,
};
use ducci_periods::period::{order_of_two, period_any, validate_theorems, PeriodRecord, TheoremCheck};
use ducci_periods::report::{
    compute_table, render_table_csv, render_table_text, run_verify, VerifyOptions, VerifyReport,
};
use ducci_periods::serde_util::biguint_dec;
use ducci_periods::{ducci, Error};

#[derive(Parser)]
#[command(name = "ducci", version, about = "Periods of Ducci sequences: exact values, tables, bounds")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Seed for the finite field model; results never depend on it
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Worker threads for table and verify runs
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=1024))]
    threads: u64,
    /// Evaluation budget for cycle detection
    #[arg(long, global = true, default_value_t = 10_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    max_steps: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Exact maximal period P(n) for a tuple length
    Period {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
    /// Period and partition count table for odd lengths 3..=max
    Table {
        #[arg(long, default_value_t = 101, value_parser = clap::value_parser!(u64).range(3..))]
        max: u64,
    },
    /// Cosets of the doubling map and their subset counts
    Partitions {
        #[arg(value_parser = clap::value_parser!(u64).range(3..))]
        n: u64,
        /// Coset representative (defaults to 1)
        #[arg(long, conflicts_with = "best")]
        coset: Option<u64>,
        /// Use the coset with the largest count
        #[arg(long)]
        best: bool,
        /// List every counted subset
        #[arg(long)]
        enumerate: bool,
    },
    /// Divisor bounds, structural checks, and analytic estimates
    Bounds {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
    /// Run the Ducci map directly and report preperiod and period
    Simulate {
        /// Tuple entries, e.g. `ducci simulate 0 0 1`
        #[arg(required_unless_present = "binary")]
        entries: Vec<String>,
        /// Use the binary tuple (0, ..., 0, 1) of this length instead
        #[arg(long, conflicts_with = "entries", value_parser = clap::value_parser!(u64).range(1..))]
        binary: Option<u64>,
    },
    /// Recompute the reference data and the internal cross checks
    Verify {
        #[arg(long, default_value_t = 101, value_parser = clap::value_parser!(u64).range(1..))]
        max: u64,
        /// Compare against this table instead of the shipped one
        #[arg(long, value_name = "FILE")]
        golden: Option<PathBuf>,
        /// Also compare periods against an OEIS b-file
        #[arg(long, value_name = "FILE")]
        oeis: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads as usize)
        .build()
    {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: cannot build a thread pool: {e}");
            return ExitCode::from(2);
        }
    };
    match pool.install(|| run(&cli)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::StepBudgetExceeded(_) | Error::TooMany(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    match &cli.command {
        Command::Period { n } => {
            let rec = period_any(*n, cli.seed)?;
            match cli.format {
                Format::Text => print_record_text(&rec),
                Format::Json => print_json(&rec),
                Format::Csv => return Err(csv_unsupported("period")),
            }
        }
        Command::Table { max } => {
            let rows = compute_table(*max, cli.seed)?;
            match cli.format {
                Format::Text => print!("{}", render_table_text(&rows)),
                Format::Json => print_json(&rows),
                Format::Csv => print!("{}", render_table_csv(&rows)),
            }
        }
        Command::Partitions {
            n,
            coset,
            best,
            enumerate,
        } => {
            let a = if *best {
                best_coset(*n)?.0
            } else {
                coset.unwrap_or(1)
            };
            let set = coset_set(a, *n)?;
            let count = partition_count(a, *n)?;
            let vectors = if *enumerate {
                Some(partition_enumerate(a, *n, 100_000)?)
            } else {
                None
            };
            let out = PartitionsOutput {
                n: *n,
                a,
                t: order_of_two(*n)?,
                count,
                members: set.members,
                vectors,
            };
            match cli.format {
                Format::Text => print_partitions_text(&out),
                Format::Json => print_json(&out),
                Format::Csv => return Err(csv_unsupported("partitions")),
            }
        }
        Command::Bounds { n } => {
            let rec = period_any(*n, cli.seed)?;
            let checks = validate_theorems(&rec);
            let report = bound_report(&rec)?;
            let out = BoundsOutput {
                record: rec,
                checks,
                report,
            };
            match cli.format {
                Format::Text => print_bounds_text(&out),
                Format::Json => print_json(&out),
                Format::Csv => return Err(csv_unsupported("bounds")),
            }
        }
        Command::Simulate { entries, binary } => {
            let (label, cycle) = match binary {
                Some(n) => (
                    format!("binary tuple of length {n}"),
                    ducci::simulate_binary_period(*n, cli.max_steps)?,
                ),
                None => {
                    let tuple: Vec<BigUint> = entries
                        .iter()
                        .map(|e| {
                            e.parse().map_err(|_| {
                                Error::Parse(format!("entry '{e}' is not a natural number"))
                            })
                        })
                        .collect::<Result<_, _>>()?;
                    (
                        format!("tuple of length {}", tuple.len()),
                        ducci::simulate_period(&tuple, cli.max_steps)?,
                    )
                }
            };
            match cli.format {
                Format::Text => {
                    println!("{label}");
                    println!("preperiod  {}", cycle.preperiod);
                    println!("period     {}", cycle.period);
                }
                Format::Json => print_json(&cycle),
                Format::Csv => return Err(csv_unsupported("simulate")),
            }
        }
        Command::Verify { max, golden, oeis } => {
            let opts = VerifyOptions {
                max_n: *max,
                seed: cli.seed,
                max_steps: cli.max_steps,
                golden_csv: golden.as_deref().map(read_input).transpose()?,
                oeis_bfile: oeis.as_deref().map(read_input).transpose()?,
            };
            let report = run_verify(&opts)?;
            match cli.format {
                Format::Text => print_verify_text(&report),
                Format::Json => print_json(&report),
                Format::Csv => return Err(csv_unsupported("verify")),
            }
            if !report.passed {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn read_input(path: &std::path::Path) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
}

fn csv_unsupported(what: &str) -> Error {
    Error::NotApplicable(format!("{what} has no csv rendering, use table"))
}

fn print_json<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("output structs serialize")
    );
}

#[derive(Serialize)]
struct PartitionsOutput {
    n: u64,
    a: u64,
    t: u64,
    #[serde(with = "biguint_dec")]
    count: BigUint,
    members: Vec<CosetMember>,
    #[serde(skip_serializing_if = "Option::is_none")]
    vectors: Option<Vec<PartitionVector>>,
}

#[derive(Serialize)]
struct BoundsOutput {
    record: PeriodRecord,
    checks: Vec<TheoremCheck>,
    report: BoundReport,
}

fn yes_no(v: bool) -> &'static str {
    if v {
        "yes"
    } else {
        "no"
    }
}

fn print_record_text(rec: &PeriodRecord) {
    println!("n             {}", rec.n);
    println!("period        {}", rec.period);
    println!("t             {}", rec.t);
    println!("b1            {}", rec.b1);
    if let Some(b2) = &rec.b2 {
        println!("b2            {b2}");
    }
    println!("with -1       {}", yes_no(rec.with_minus_one));
    if let Some(flag) = rec.pell_no_odd {
        println!("pell no odd   {}", yes_no(flag));
    }
}

fn print_partitions_text(out: &PartitionsOutput) {
    println!("n      {}", out.n);
    println!("a      {}", out.a);
    println!("t      {}", out.t);
    let members: Vec<String> = out
        .members
        .iter()
        .map(|m| format!("{}@{}", m.residue, m.dlog))
        .collect();
    println!("coset  {}", members.join(" "));
    println!("count  {}", out.count);
    if let Some(vectors) = &out.vectors {
        for v in vectors {
            let parts: Vec<String> = v.parts.iter().map(u64::to_string).collect();
            let parts = if parts.is_empty() {
                "(empty)".to_string()
            } else {
                parts.join("+")
            };
            println!("q={:<12} sum={:<4} {}", v.q, v.sum, parts);
        }
    }
}

fn print_bounds_text(out: &BoundsOutput) {
    print_record_text(&out.record);
    println!();
    for c in &out.checks {
        println!(
            "{:<36} {}",
            c.clause,
            if c.passed { "ok" } else { "FAIL" }
        );
    }
    println!();
    let r = &out.report;
    println!("prime, 2 primitive root      {}", yes_no(r.prime_with_primitive_root));
    if let Some(b) = r.popovych_lower_bound {
        println!("explicit lower bound         {b:.6e}");
        println!("bound holds                  {}", yes_no(r.popovych_holds == Some(true)));
    }
    if let Some(m) = r.distinct_parts_main_term {
        println!("distinct parts main term     {m:.6e}");
    }
    if let Some(m) = r.prime_power_main_term {
        println!("prime power main term        {m:.6e}");
    }
    println!("order ratio main term        {:.6e}", r.order_ratio_main_term);
    println!("t exceeds sqrt(2n)           {}", yes_no(r.threshold_t_exceeds_sqrt_2n));
    println!("window floor(sqrt(2n))       {}", r.window);
    println!("best coset                   a = {}, count {}", r.best_a, r.best_partition_count);
    println!("best coset members in window {}", r.best_coset_in_window);
    println!("period (float)               {:.6e}", r.period_as_f64);
}

fn print_verify_text(report: &VerifyReport) {
    for c in &report.checks {
        println!(
            "{} {:<24} {}",
            if c.passed { "ok  " } else { "FAIL" },
            c.name,
            c.detail
        );
    }
    let failed = report.checks.iter().filter(|c| !c.passed).count();
    if failed == 0 {
        println!("all {} checks passed", report.checks.len());
    } else {
        println!("{failed} of {} checks failed", report.checks.len());
    }
}
