//! `heisloc verify <subset>`: run the verification suite and print a report.
//!
//! Exit status: 0 when no check fails, 1 on a verification failure, 2 on bad
//! usage or configuration.

mod config;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use heisloc_core::estimate::nesting::{growth_audit, nesting_schedule};
use heisloc_core::report::{render, Format};
use heisloc_core::suite::{all_passed, run_suite, Subset};
use heisloc_core::VerificationReport;

use config::FileConfig;

#[derive(Parser)]
#[command(name = "heisloc", version, about = "Verify localized powers of T and related estimates on the Heisenberg group")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a group of checks.
    Verify {
        #[arg(value_enum)]
        subset: SubsetArg,
        #[command(flatten)]
        opts: VerifyOpts,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SubsetArg {
    Algebra,
    Localization,
    Constants,
    Cutoff,
    Nesting,
    All,
}

impl From<SubsetArg> for Subset {
    fn from(s: SubsetArg) -> Self {
        match s {
            SubsetArg::Algebra => Subset::Algebra,
            SubsetArg::Localization => Subset::Localization,
            SubsetArg::Constants => Subset::Constants,
            SubsetArg::Cutoff => Subset::Cutoff,
            SubsetArg::Nesting => Subset::Nesting,
            SubsetArg::All => Subset::All,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Markdown,
}

#[derive(Args)]
struct VerifyOpts {
    /// Highest power p of T to localize.
    #[arg(long)]
    p_max: Option<u32>,
    /// Number of complex directions (n - 1).
    #[arg(long = "n")]
    n_minus1: Option<usize>,
    /// Cutoffs are checked for N = 1..=cutoff-n-max.
    #[arg(long)]
    cutoff_n_max: Option<u32>,
    /// Collar width d (rational, e.g. 1/2).
    #[arg(long)]
    d: Option<String>,
    /// Inner radius r (rational).
    #[arg(long)]
    r: Option<String>,
    /// Coercivity parameter, repeatable (e.g. --c=-1+i --c 2).
    #[arg(long = "c", allow_hyphen_values = true)]
    c: Vec<String>,
    /// Budget for the fitted cutoff constant.
    #[arg(long)]
    c_budget: Option<f64>,
    /// Seed for the randomized algebra checks.
    #[arg(long)]
    seed: Option<u64>,
    /// Random associativity / Jacobi instances per sign of sigma.
    #[arg(long)]
    instances: Option<usize>,
    /// Sup-norm certification: roots | dyadic.
    #[arg(long)]
    sup_method: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
    /// TOML config file; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Directory for CSV tables (cutoff sups, growth rates).
    #[arg(long)]
    csv: Option<PathBuf>,
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Command::Verify { subset, opts } = cli.command;

    let file = match &opts.config {
        Some(p) => match FileConfig::load(p) {
            Ok(f) => f,
            Err(e) => return usage_error(&e),
        },
        None => FileConfig::default(),
    };
    let flags = FileConfig {
        p_max: opts.p_max,
        n_minus1: opts.n_minus1,
        cutoff_n_max: opts.cutoff_n_max,
        d: opts.d.clone(),
        r: opts.r.clone(),
        c_budget: opts.c_budget,
        c_list: if opts.c.is_empty() { None } else { Some(opts.c.clone()) },
        seed: opts.seed,
        property_instances: opts.instances,
        sup_method: opts.sup_method.clone(),
        ..FileConfig::default()
    };
    let cfg = match file.overlay(flags).resolve() {
        Ok(c) => c,
        Err(e) => return usage_error(&e),
    };
    eprintln!("seed: {}", cfg.seed);

    let reports = match run_suite(&cfg, subset.into()) {
        Ok(r) => r,
        Err(e) => return usage_error(&e.to_string()),
    };
    let format = match opts.format {
        FormatArg::Json => Format::Json,
        FormatArg::Markdown => Format::Markdown,
    };
    let mut text = render(&reports, format);
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &opts.out {
        Some(path) => {
            if let Err(e) = fs::write(path, &text) {
                return usage_error(&format!("cannot write {}: {e}", path.display()));
            }
        }
        None => print!("{text}"),
    }
    if let Some(dir) = &opts.csv {
        if let Err(e) = write_csv(dir, &reports) {
            return usage_error(&format!("cannot write CSV to {}: {e}", dir.display()));
        }
    }
    if all_passed(&reports) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn write_csv(dir: &Path, reports: &[VerificationReport]) -> Result<(), Box<dyn std::error::Error>> {
    fs::create_dir_all(dir)?;
    let cutoffs: Vec<&VerificationReport> = reports.iter().filter(|r| r.check_id == "cutoff.bounds").collect();
    if !cutoffs.is_empty() {
        let mut w = csv::Writer::from_path(dir.join("cutoff_sups.csv"))?;
        w.write_record(["N", "k", "sup_upper", "ceiling"])?;
        for r in cutoffs {
            let n = r.params["N"].as_u64().unwrap_or(0);
            let d: f64 = r.params["d"].as_str().and_then(heisloc_core::scalar::parse).map_or(f64::NAN, |q| heisloc_core::scalar::to_f64(&q));
            let mut k = 0;
            while let Some(sup) = r.metrics.get(&format!("sup_D{k}")) {
                let ceiling = (12.0 * n as f64 / d).powi(k);
                w.write_record([n.to_string(), k.to_string(), sup.to_string(), ceiling.to_string()])?;
                k += 1;
            }
        }
        w.flush()?;
    }
    if let Some(r) = reports.iter().find(|r| r.check_id == "nesting.growth_audit") {
        let mut w = csv::Writer::from_path(dir.join("growth_rates.csv"))?;
        w.write_record(["p", "minimal_c", "rate"])?;
        for p in r.params["p"].as_array().into_iter().flatten().filter_map(|v| v.as_u64()) {
            let s = nesting_schedule(p)?;
            let g = growth_audit(p, 1.0, &s)?;
            w.write_record([p.to_string(), s.minimal_c.to_string(), g.rate.to_string()])?;
        }
        w.flush()?;
    }
    Ok(())
}
