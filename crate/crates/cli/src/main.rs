use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use hopfcheck::document::{self, Structure};
use hopfcheck::ghobadi::families::{build, Biparallel, Which};
use hopfcheck::report::Report;
use hopfcheck::suites::{self, Params, Suite};

#[derive(Parser)]
#[command(name = "hopfcheck", version, about = "Exact checks for bialgebroids, Hopf algebroids and their star structures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one or more suites on input documents.
    Check {
        /// Suite names, comma separated, or `all` for every suite accepting the input.
        suites: String,
        /// Input documents.
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long, default_value_t = 6)]
        degree_bound: usize,
        /// Treat inconclusive verdicts as failures.
        #[arg(long)]
        strict: bool,
        /// Write the reports as JSON.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Worker threads for membership solves.
        #[arg(long, default_value_t = 1)]
        parallel: usize,
    },
    /// Write the document of a named example.
    Generate {
        /// One of pair-example, weyl-example, cyclic-galois, cyclic-graph, fuzzy-sphere, group-hopf.
        example: String,
        /// Example parameters, e.g. `Z2`, `4 2`, `3` or `1/2`.
        params: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Dump the presentations built from a calculus document.
    Dump {
        input: PathBuf,
        /// Largest word degree in the normal-word counts.
        #[arg(long, default_value_t = 6)]
        degree_bound: usize,
    },
}

fn load(path: &PathBuf) -> Result<Structure> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    document::parse(&text).with_context(|| format!("in {}", path.display()))
}

fn select(spec: &str, s: &Structure) -> Result<Vec<Suite>> {
    if spec == "all" {
        return Ok(Suite::ALL.iter().copied().filter(|x| x.accepts().contains(&s.kind())).collect());
    }
    spec.split(',').map(|n| n.trim().parse::<Suite>().map_err(anyhow::Error::from)).collect()
}

fn check(suites_arg: &str, inputs: &[PathBuf], params: &Params, strict: bool, out: Option<&PathBuf>) -> Result<bool> {
    let mut reports: Vec<Report> = vec![];
    for path in inputs {
        let s = load(path)?;
        for suite in select(suites_arg, &s)? {
            let t = Instant::now();
            let r = suites::run(suite, &s, params).with_context(|| format!("{suite} on {}", path.display()))?;
            eprintln!("{suite} on {}: {:.2?}", path.display(), t.elapsed());
            print!("{r}");
            reports.push(r);
        }
    }
    let fails: usize = reports.iter().map(|r| r.failures().len()).sum();
    let inconclusive: usize = reports.iter().map(|r| r.inconclusive_count()).sum();
    println!("{} reports, {fails} failures, {inconclusive} inconclusive", reports.len());
    if let Some(path) = out {
        let json = serde_json::to_string_pretty(&reports)?;
        std::fs::write(path, json + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(fails == 0 && !(strict && inconclusive > 0))
}

fn dump(input: &PathBuf, degree_bound: usize) -> Result<()> {
    let Structure::Calculus(p) = load(input)? else {
        bail!("dump expects a calculus document");
    };
    let bp = Biparallel::new(&p)?;
    let mut out = vec![];
    for w in Which::ALL {
        match build(&bp, w) {
            Ok(pres) => out.push(serde_json::to_value(pres.summary(degree_bound))?),
            Err(e) => out.push(serde_json::json!({ "name": w.name(), "error": e.to_string() })),
        }
    }
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Check { suites, inputs, degree_bound, strict, report, parallel } => {
            let params = Params { degree_bound, threads: parallel };
            let ok = check(&suites, &inputs, &params, strict, report.as_ref())?;
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Generate { example, params, output } => {
            let s = document::generate(&example, &params)?;
            let json = s.to_json() + "\n";
            match output {
                Some(path) => std::fs::write(&path, json).with_context(|| format!("writing {}", path.display()))?,
                None => print!("{json}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Dump { input, degree_bound } => {
            dump(&input, degree_bound)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}
