use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use binuc_core::binuclear::build_ni_order;
use binuc_core::generate::{generate, Family};
use binuc_core::lattice::Poset;
use binuc_core::suite::{run_on_algebra, run_on_poset, Check, Suite, SuiteOptions, Verdict};
use binuc_core::torsion::{
    cone_data, enumerate_presilting, enumerate_tors_with_limit, gen_type_a, AlgebraJson,
    AlgebraSpec, DEFAULT_MAX_INDEC,
};
use binuc_core::LatticeJson;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

#[derive(Parser)]
#[command(
    name = "binuc",
    version,
    about = "Binuclear interval orders and torsion-class lattices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a lattice or algebra file.
    Gen {
        /// fig1, fig2, chain, boolean, weak_order, diamond_M3 or an
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: Option<usize>,
        /// Arrow directions for `an`, one of `<`/`>` per arrow; default all `<`.
        #[arg(long)]
        orientation: Option<String>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Run a check suite and print a report.
    Check {
        input: PathBuf,
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Seed for stability vector sampling.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        samples: usize,
    },
    /// Write the binuclear interval order as DOT.
    Order {
        input: PathBuf,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

enum Input {
    Lattice(LatticeJson),
    Algebra(AlgebraSpec),
}

#[derive(Serialize)]
struct CheckReport {
    target: String,
    suite: String,
    checks: Vec<Check>,
    summary: std::collections::BTreeMap<String, Value>,
    elapsed_ms: u128,
}

fn max_indec() -> Result<usize> {
    match std::env::var("BINUC_MAX_INDEC") {
        Ok(v) => v
            .parse()
            .map_err(|_| anyhow!("BINUC_MAX_INDEC must be a nonnegative integer, got `{v}`")),
        Err(_) => Ok(DEFAULT_MAX_INDEC),
    }
}

fn read_input(path: &Path) -> Result<Input> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let value: Value =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    if value.get("indecomposables").is_some() {
        let json: AlgebraJson = serde_json::from_value(value)?;
        Ok(Input::Algebra(json.to_spec()?))
    } else if value.get("elements").is_some() {
        Ok(Input::Lattice(serde_json::from_value(value)?))
    } else {
        bail!(
            "{} is neither a lattice nor an algebra file",
            path.display()
        )
    }
}

fn write_out(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_gen(
    family: &str,
    n: Option<usize>,
    orientation: Option<&str>,
    out: Option<&Path>,
) -> Result<()> {
    let json = if family.eq_ignore_ascii_case("an") {
        let n = n.ok_or_else(|| anyhow!("family `an` needs --n"))?;
        let word = orientation.map_or_else(|| "<".repeat(n.saturating_sub(1)), str::to_string);
        serde_json::to_string_pretty(&gen_type_a(n, &word)?.to_json())?
    } else {
        if orientation.is_some() {
            bail!("--orientation only applies to family `an`");
        }
        let fam: Family = family.parse()?;
        serde_json::to_string_pretty(&generate(fam, n)?.to_json())?
    };
    write_out(out, &(json + "\n"))
}

fn render_text(report: &CheckReport) -> String {
    let mut s = format!("{} [{}]\n", report.target, report.suite);
    for c in &report.checks {
        let tag = match c.verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Skipped => "SKIP",
        };
        s.push_str(&format!("  {tag} {}", c.name));
        if let Some(w) = &c.witness {
            s.push_str(&format!("  {w}"));
        }
        s.push('\n');
    }
    for (k, v) in &report.summary {
        s.push_str(&format!("  {k}: {v}\n"));
    }
    s.push_str(&format!("  {} ms\n", report.elapsed_ms));
    s
}

fn cmd_check(input: &Path, suite: &str, format: Format, opts: &SuiteOptions) -> Result<bool> {
    let suite: Suite = suite.parse().map_err(|e: String| anyhow!(e))?;
    let start = Instant::now();
    let (target, output) = match read_input(input)? {
        Input::Lattice(json) => {
            let poset = json.to_poset()?;
            (json.name.clone(), run_on_poset(&json.name, poset, suite))
        }
        Input::Algebra(spec) => (spec.name().to_string(), run_on_algebra(&spec, suite, opts)?),
    };
    let passed = output.passed();
    let report = CheckReport {
        target,
        suite: suite.to_string(),
        checks: output.checks,
        summary: output.summary,
        elapsed_ms: start.elapsed().as_millis(),
    };
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report)?),
        Format::Text => print!("{}", render_text(&report)),
    }
    Ok(passed)
}

fn cmd_order(input: &Path, dot: Option<&Path>) -> Result<()> {
    let text = match read_input(input)? {
        Input::Lattice(json) => {
            let l = json.to_lattice()?;
            build_ni_order(&l).to_dot()
        }
        Input::Algebra(spec) => {
            let td = enumerate_tors_with_limit(&spec, max_indec()?)?;
            let entries = enumerate_presilting(&td)?;
            let bp = td.binuc();
            let mut labels = Vec::with_capacity(bp.len());
            for &iv in bp.intervals() {
                let d = cone_data(&td, &entries, iv)?.dim;
                labels.push(format!("{} dim {d}", td.interval_label(iv)));
            }
            let pairs: Vec<(usize, usize)> = bp
                .poset()
                .covers()
                .iter()
                .map(|&(a, b)| (a.index(), b.index()))
                .collect();
            Poset::from_pairs(labels, &pairs)?.to_dot(&format!("binuc(tors({}))", spec.name()))
        }
    };
    write_out(dot, &text)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Gen {
            family,
            n,
            orientation,
            out,
        } => cmd_gen(&family, n, orientation.as_deref(), out.as_deref()).map(|()| true),
        Command::Check {
            input,
            suite,
            format,
            seed,
            samples,
        } => {
            let opts = SuiteOptions {
                seed,
                theta_samples: samples,
                max_indec: max_indec()?,
            };
            cmd_check(&input, &suite, format, &opts)
        }
        Command::Order { input, dot } => cmd_order(&input, dot.as_deref()).map(|()| true),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
