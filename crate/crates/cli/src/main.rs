//! Batch entry point: enumerate ladders, inspect one shape, or run the
//! verification suites over a sweep.
//!
//! Exit codes are a stable contract: 0 success, 1 verification failure,
//! 2 usage or parse error.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ladder_lie::verify::{run_single_with, run_suite_streaming, Status, Suite, Verdict};
use ladder_lie::{
    count_dut, enumerate_dut, parse_ladder, show_report, Error, FieldTag, Gf, Rationals,
};

#[derive(Parser)]
#[command(name = "ladderlie", version, about = "Ladder matrix Lie algebras: enumeration, structure, and derivation checks")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// List the canonical DUT ladders of size n and cross-check the count
    /// against the Fibonacci prediction
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the matrix form, partition, block index set, class flags and
    /// dimensions of one ladder
    Show {
        /// Ladder literal, e.g. "n=7: (1,1) (4,3) (5,5)"
        ladder: String,
        #[arg(long, default_value = "gf:101")]
        field: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run a verification suite over all DUT ladders of size n (or a range
    /// a..b), or over one explicit ladder
    Verify {
        /// enumerate | classify | structure | derivations | core | all
        #[arg(long, default_value = "all")]
        suite: String,
        /// Size or inclusive range: `4` or `2..5`
        #[arg(long, default_value = "4")]
        n: String,
        /// Check a single ladder literal instead of sweeping
        #[arg(long)]
        ladder: Option<String>,
        /// `q` or `gf:<p>`
        #[arg(long, default_value = "gf:101")]
        field: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Worker pool size (default: LADDERLIE_JOBS or all cores)
        #[arg(long)]
        jobs: Option<usize>,
    },
}

const MAX_N: usize = 8;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.cmd {
        Cmd::Enumerate { n, format } => cmd_enumerate(n, format),
        Cmd::Show { ladder, field, format } => cmd_show(&ladder, &field, format),
        Cmd::Verify { suite, n, ladder, field, format, jobs } => {
            cmd_verify(&suite, &n, ladder.as_deref(), &field, format, jobs)
        }
    }
}

fn check_n(n: usize) -> Result<(), Error> {
    if !(1..=MAX_N).contains(&n) {
        return Err(Error::Parse(format!("n must be in [1, {MAX_N}], got {n}")));
    }
    Ok(())
}

fn cmd_enumerate(n: usize, format: Format) -> Result<ExitCode, Error> {
    check_n(n)?;
    let ladders = enumerate_dut(n);
    let expected = count_dut(n);
    let pass = ladders.len() as u128 == expected;
    match format {
        Format::Text => {
            for l in &ladders {
                println!("{l}");
            }
            println!(
                "count={} fibonacci={} {}",
                ladders.len(),
                expected,
                if pass { "PASS" } else { "FAIL" }
            );
        }
        Format::Json => {
            for l in &ladders {
                println!("{}", serde_json::json!({ "ladder": l }));
            }
            println!(
                "{}",
                serde_json::json!({ "count": ladders.len(), "expected": expected.to_string(), "pass": pass })
            );
        }
    }
    Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_show(ladder: &str, field: &str, format: Format) -> Result<ExitCode, Error> {
    let l = parse_ladder(ladder)?;
    check_n(l.n())?;
    let tag = FieldTag::parse(field)?;
    let report = show_report(tag, &l)?;
    match format {
        Format::Json => println!("{}", serde_json::to_string(&report).expect("serializable")),
        Format::Text => {
            println!("{l}");
            let set = l.index_set();
            for i in 1..=l.n() {
                let row: Vec<&str> = (1..=l.n())
                    .map(|j| if set.contains(&(i, j)) { "*" } else { "0" })
                    .collect();
                println!("  {}", row.join(" "));
            }
            if let (Some(cuts), Some(sizes)) = (&report.cuts, &report.sizes) {
                println!("cuts: {cuts:?}  sizes: {sizes:?}  t={}", sizes.len());
            }
            if let Some(blocks) = &report.block_index_set {
                let items: Vec<String> =
                    blocks.iter().map(|(i, j)| format!("({i},{j})")).collect();
                println!("block index set: {}", items.join(" "));
            }
            let c = report.class;
            let mut flags = Vec::new();
            if c.upper_triangular {
                flags.push("UT");
            }
            if c.strictly_upper_triangular {
                flags.push("strictly-UT");
            }
            if c.dut {
                flags.push("DUT");
            }
            if c.sdut {
                flags.push("SDUT");
            }
            if c.block_form_equal {
                flags.push("block-form");
            }
            let flags = if flags.is_empty() { "-".into() } else { flags.join(" ") };
            println!("flags: {flags}");
            println!("dim M_L = {}", report.dim);
            if let Some(nd) = report.normalizer_dim {
                println!("dim normalizer = {nd} (field {})", report.field);
            }
            if let Some(cd) = report.centralizer_dim {
                println!("dim centralizer = {cd}");
            }
            if let Some(ds) = &report.derived_series_dims {
                println!("derived series dims: {ds:?}");
            }
            if let Some(t) = &report.terminal_ladder {
                println!("sdut core: {t}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_n_range(spec: &str) -> Result<(usize, usize), Error> {
    let bad = || Error::Parse(format!("bad n spec `{spec}` (expected `4` or `2..5`)"));
    if let Some((a, b)) = spec.split_once("..") {
        let lo: usize = a.trim().parse().map_err(|_| bad())?;
        let hi: usize = b.trim().parse().map_err(|_| bad())?;
        if lo > hi {
            return Err(bad());
        }
        check_n(lo)?;
        check_n(hi)?;
        Ok((lo, hi))
    } else {
        let n: usize = spec.trim().parse().map_err(|_| bad())?;
        check_n(n)?;
        Ok((n, n))
    }
}

fn configure_pool(jobs: Option<usize>) {
    let jobs = jobs.or_else(|| {
        std::env::var("LADDERLIE_JOBS").ok().and_then(|v| v.parse().ok())
    });
    if let Some(j) = jobs {
        if j >= 1 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(j).build_global();
        }
    }
}

fn emit(v: &Verdict, format: Format) {
    match format {
        Format::Json => println!("{}", serde_json::to_string(v).expect("serializable")),
        Format::Text => {
            let status = match v.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Divergence => "DIVERGENCE",
            };
            let what = v
                .ladder
                .as_ref()
                .map(|l| l.to_string())
                .unwrap_or_else(|| "-".into());
            let mut dims = Vec::new();
            let mut push = |name: &str, v: Option<usize>| {
                if let Some(d) = v {
                    dims.push(format!("{name}={d}"));
                }
            };
            push("dim", v.dims.algebra);
            push("nrm", v.dims.normalizer);
            push("ctr", v.dims.centralizer);
            push("der", v.dims.der_bruteforce);
            push("pred", v.dims.der_predicted);
            push("inner", v.dims.inner);
            push("dee", v.dims.dee);
            push("core_der", v.dims.core_der);
            let mut line = format!("{status} {} [{}] {what}", v.suite, v.field);
            if !dims.is_empty() {
                line.push_str(&format!("  {}", dims.join(" ")));
            }
            if let Some(tag) = &v.case_tag {
                line.push_str(&format!("  case={tag}"));
            }
            if let Some(d) = &v.detail {
                line.push_str(&format!("  ({d})"));
            }
            println!("{line}");
        }
    }
}

fn cmd_verify(
    suite: &str,
    n_spec: &str,
    ladder: Option<&str>,
    field: &str,
    format: Format,
    jobs: Option<usize>,
) -> Result<ExitCode, Error> {
    let suite: Suite = suite.parse()?;
    let tag = FieldTag::parse(field)?;
    configure_pool(jobs);

    let ok = if let Some(text) = ladder {
        let l = parse_ladder(text)?;
        check_n(l.n())?;
        let verdicts = match tag {
            FieldTag::Rational => run_single_with(&Rationals, suite, &l),
            FieldTag::Prime(p) => run_single_with(&Gf::new(p)?, suite, &l),
        };
        for v in &verdicts {
            emit(v, format);
        }
        verdicts.iter().all(|v| v.status != Status::Fail)
    } else {
        let (lo, hi) = parse_n_range(n_spec)?;
        let mut ok = true;
        for n in lo..=hi {
            ok &= match tag {
                FieldTag::Rational => {
                    run_suite_streaming(&Rationals, suite, n, &mut |v| emit(v, format))
                }
                FieldTag::Prime(p) => {
                    run_suite_streaming(&Gf::new(p)?, suite, n, &mut |v| emit(v, format))
                }
            };
        }
        ok
    };
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
