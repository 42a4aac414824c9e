//! Command-line front end: solution-set tables, sequence samples, band
//! verification sweeps, and interval witnesses.
//!
//! Exit codes: 0 on success, 1 when a verification run fails its check,
//! 2 for invalid input or usage errors.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context as _;
use clap::{Parser, Subcommand, ValueEnum};
use num::rational::Ratio;

use modbands::sampler::{IntervalWitness, SamplePoint, VerificationReport};
use modbands::zsets::{Method, ModContext, SolutionSets};
use modbands::{decompose, dichotomy, figure_series, find_in_interval, verify_derived_set};

#[derive(Parser)]
#[command(
    name = "modbands",
    version,
    about = "Solution sets and limit-point bands of b^n mod n over two-prime products"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    /// Build each set from the unit-group splitting
    Structural,
    /// Scan every unit residue against the defining congruence
    Bruteforce,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Structural => Method::Structural,
            MethodArg::Bruteforce => Method::BruteForce,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Table,
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesFormat {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print the solution sets Z_k of b^x = k*x + b (mod q) for k = 0..q-1
    Zsets {
        /// Base of the exponential (at least 2, not divisible by q)
        #[arg(long)]
        b: u64,
        /// Odd prime modulus
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value_t = MethodArg::Structural)]
        method: MethodArg,
        #[arg(long, value_enum, default_value_t = TableFormat::Table)]
        format: TableFormat,
        /// Write the output here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample b^(q*p) mod (q*p) / (q*p) over the first COUNT primes p
    Figure {
        #[arg(long)]
        b: u64,
        #[arg(long)]
        q: u64,
        /// How many primes to sample, starting from p = 2
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
        #[arg(long, value_enum, default_value_t = SeriesFormat::Csv)]
        format: SeriesFormat,
        /// Write the output here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep all primes up to a horizon and check every predicted band is hit
    Verify {
        #[arg(long)]
        b: u64,
        #[arg(long)]
        q: u64,
        /// Largest prime p to include in the sweep
        #[arg(long)]
        horizon: u64,
        /// How close a sample must come to its band to count as attained
        #[arg(long)]
        tol: f64,
        /// Also write the full report as JSON to this file
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Find which slope k the unit residue x solves: b^x = k*x + b (mod q)
    Classify {
        #[arg(long)]
        b: u64,
        #[arg(long)]
        q: u64,
        /// Unit residue modulo q(q-1)
        #[arg(long)]
        x: u64,
    },
    /// Split a unit x modulo n(n-1) into its (alpha, beta) component pair
    Decompose {
        /// Unit residue modulo n(n-1)
        #[arg(long)]
        x: u64,
        #[arg(long)]
        n: u64,
    },
    /// Print |Z_0| and the common size of Z_k for k >= 1
    Counts {
        #[arg(long)]
        b: u64,
        #[arg(long)]
        q: u64,
    },
    /// Report whether every prime lands on band 0 or all q bands fill up
    Dichotomy {
        #[arg(long)]
        b: u64,
        #[arg(long)]
        q: u64,
    },
    /// Find a prime p whose sequence value lies strictly inside (lo, hi)
    FindInInterval {
        #[arg(long)]
        b: u64,
        /// Lower endpoint: a decimal like 0.4 or a fraction like 2/5
        #[arg(long, value_parser = parse_ratio)]
        lo: Ratio<u64>,
        /// Upper endpoint: a decimal like 0.5 or a fraction like 1/2
        #[arg(long, value_parser = parse_ratio)]
        hi: Ratio<u64>,
    },
}

/// Parses "0.4", "2/5", or "1" into an exact nonnegative rational.
fn parse_ratio(s: &str) -> Result<Ratio<u64>, String> {
    let s = s.trim();
    let digits = |part: &str| -> Result<u64, String> {
        if part.is_empty() || !part.bytes().all(|c| c.is_ascii_digit()) {
            return Err(format!(
                "'{s}' is not a decimal or a fraction of nonnegative integers"
            ));
        }
        part.parse()
            .map_err(|_| format!("'{part}' does not fit in 64 bits"))
    };
    if let Some((num, den)) = s.split_once('/') {
        let num = digits(num)?;
        let den = digits(den)?;
        if den == 0 {
            return Err("the denominator must be nonzero".into());
        }
        return Ok(Ratio::new(num, den));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let int = if int.is_empty() { 0 } else { digits(int)? };
        if frac.is_empty() {
            return Ok(Ratio::from_integer(int));
        }
        if frac.len() > 18 {
            return Err("at most 18 fractional digits are supported".into());
        }
        let frac_value = digits(frac)?;
        let scale = 10u64.pow(frac.len() as u32);
        let num = int
            .checked_mul(scale)
            .and_then(|v| v.checked_add(frac_value))
            .ok_or("the value is too large")?;
        return Ok(Ratio::new(num, scale));
    }
    Ok(Ratio::from_integer(digits(s)?))
}

fn join_u64(values: &[u64], sep: &str) -> String {
    values
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

fn render_zsets_table(sets: &SolutionSets) -> String {
    let mut out = String::from("k | x\n");
    for (k, xs) in sets.sets().iter().enumerate() {
        let row = format!("{k} | {}", join_u64(xs, ", "));
        out.push_str(row.trim_end());
        out.push('\n');
    }
    out
}

fn render_zsets_csv(sets: &SolutionSets) -> String {
    let mut out = String::from("k,x_list\n");
    for (k, xs) in sets.sets().iter().enumerate() {
        out.push_str(&format!("{k},{}\n", join_u64(xs, " ")));
    }
    out
}

fn render_zsets_json(sets: &SolutionSets) -> String {
    let ctx = sets.context();
    let body = sets
        .sets()
        .iter()
        .enumerate()
        .map(|(k, xs)| format!("{{\"k\":{k},\"x\":[{}]}}", join_u64(xs, ",")))
        .collect::<Vec<_>>()
        .join(",");
    format!(
        "{{\"b\":{},\"q\":{},\"modulus\":{},\"delta\":{},\"dichotomy\":\"{}\",\"sets\":[{body}]}}\n",
        ctx.b(),
        ctx.q(),
        ctx.exponent_modulus(),
        ctx.delta(),
        ctx.dichotomy(),
    )
}

fn render_figure_csv(points: &[SamplePoint]) -> String {
    let mut out = String::from("index,p,n,residue,value,predicted_k,exact_regime\n");
    for (i, pt) in points.iter().enumerate() {
        let k = pt.predicted_k.map_or(String::new(), |k| k.to_string());
        out.push_str(&format!(
            "{},{},{},{},{:.17},{},{}\n",
            i + 1,
            pt.p,
            pt.n,
            pt.residue,
            pt.value_f64(),
            k,
            pt.exact_regime,
        ));
    }
    out
}

fn render_figure_json(ctx: &ModContext, points: &[SamplePoint]) -> String {
    let body = points
        .iter()
        .enumerate()
        .map(|(i, pt)| {
            let k = pt.predicted_k.map_or("null".to_string(), |k| k.to_string());
            format!(
                "{{\"index\":{},\"p\":{},\"n\":{},\"residue\":{},\"value\":{:.17},\"predicted_k\":{},\"exact_regime\":{}}}",
                i + 1,
                pt.p,
                pt.n,
                pt.residue,
                pt.value_f64(),
                k,
                pt.exact_regime,
            )
        })
        .collect::<Vec<_>>()
        .join(",");
    format!(
        "{{\"b\":{},\"q\":{},\"points\":[{body}]}}\n",
        ctx.b(),
        ctx.q(),
    )
}

fn render_verify_human(ctx: &ModContext, tol: f64, report: &VerificationReport) -> String {
    let mut out = format!(
        "b = {}, q = {}, dichotomy = {}\nhorizon = {}, tolerance = {}\n",
        ctx.b(),
        ctx.q(),
        ctx.dichotomy(),
        report.horizon,
        tol,
    );
    for band in &report.bands {
        let min = band
            .min_distance
            .map_or("-".to_string(), |d| format!("{d:.3e}"));
        out.push_str(&format!(
            "band {}/{}: samples {}, min distance {}, attained {}\n",
            band.k,
            ctx.q(),
            band.samples_seen,
            min,
            if band.attained { "yes" } else { "no" },
        ));
    }
    out.push_str(&format!(
        "strays past the pinned threshold: {}\nresult: {}\n",
        report.strays,
        if report.overall_pass { "PASS" } else { "FAIL" },
    ));
    out
}

fn render_verify_json(ctx: &ModContext, tol: f64, report: &VerificationReport) -> String {
    let bands = report
        .bands
        .iter()
        .map(|band| {
            let min = band
                .min_distance
                .map_or("null".to_string(), |d| d.to_string());
            format!(
                "{{\"k\":{},\"target\":{{\"num\":{},\"den\":{}}},\"samples_seen\":{},\"min_distance\":{},\"attained\":{}}}",
                band.k,
                band.target.numer(),
                band.target.denom(),
                band.samples_seen,
                min,
                band.attained,
            )
        })
        .collect::<Vec<_>>()
        .join(",");
    format!(
        "{{\"b\":{},\"q\":{},\"horizon\":{},\"tol\":{},\"dichotomy\":\"{}\",\"overall_pass\":{},\"strays\":{},\"bands\":[{bands}]}}\n",
        ctx.b(),
        ctx.q(),
        report.horizon,
        tol,
        ctx.dichotomy(),
        report.overall_pass,
        report.strays,
    )
}

fn render_witness_json(b: u64, w: &IntervalWitness) -> String {
    format!(
        "{{\"b\":{},\"q\":{},\"k\":{},\"p\":{},\"n\":{},\"residue\":{},\"value\":{{\"num\":{},\"den\":{}}}}}\n",
        b,
        w.q,
        w.k,
        w.p,
        w.n,
        w.residue,
        w.value.numer(),
        w.value.denom(),
    )
}

/// Sends rendered output to the file when given, otherwise to stdout.
fn deliver(out: Option<&PathBuf>, rendered: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(path, rendered)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{rendered}"),
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Zsets {
            b,
            q,
            method,
            format,
            out,
        } => {
            let ctx = ModContext::new(b, q)?;
            let sets = ctx.all_sets(method.into());
            let rendered = match format {
                TableFormat::Table => render_zsets_table(&sets),
                TableFormat::Csv => render_zsets_csv(&sets),
                TableFormat::Json => render_zsets_json(&sets),
            };
            deliver(out.as_ref(), &rendered)?;
        }
        Command::Figure {
            b,
            q,
            count,
            format,
            out,
        } => {
            let ctx = ModContext::new(b, q)?;
            let points = figure_series(&ctx, count as usize)?;
            let rendered = match format {
                SeriesFormat::Csv => render_figure_csv(&points),
                SeriesFormat::Json => render_figure_json(&ctx, &points),
            };
            deliver(out.as_ref(), &rendered)?;
        }
        Command::Verify {
            b,
            q,
            horizon,
            tol,
            out,
        } => {
            let ctx = ModContext::new(b, q)?;
            let report = verify_derived_set(&ctx, horizon, tol)?;
            print!("{}", render_verify_human(&ctx, tol, &report));
            if let Some(path) = out {
                let json = render_verify_json(&ctx, tol, &report);
                std::fs::write(&path, json)
                    .with_context(|| format!("cannot write {}", path.display()))?;
            }
            if !report.overall_pass {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Classify { b, q, x } => {
            let ctx = ModContext::new(b, q)?;
            println!("{{\"k\":{}}}", ctx.classify(x)?);
        }
        Command::Decompose { x, n } => {
            let d = decompose(x, n)?;
            println!("{{\"alpha\":{},\"beta\":{}}}", d.alpha(), d.beta());
        }
        Command::Counts { b, q } => {
            let ctx = ModContext::new(b, q)?;
            let (z0, zk) = ctx.counts();
            println!("{{\"z0\":{z0},\"zk\":{zk}}}");
        }
        Command::Dichotomy { b, q } => {
            println!("{{\"dichotomy\":\"{}\"}}", dichotomy(b, q)?);
        }
        Command::FindInInterval { b, lo, hi } => {
            let witness = find_in_interval(b, lo, hi)?;
            print!("{}", render_witness_json(b, &witness));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
