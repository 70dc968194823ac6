use clap::{Parser, Subcommand};
use hb_core::exemplars::CatalogName;
use hb_lab::config::{field_names, TASK_KINDS};
use hb_lab::{emit_report, run_experiment, ExperimentConfig, Format};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "hb-lab", version, about = "Run boundary-behaviour experiments from a TOML config")]
struct Cli {
    /// Print the catalog of fields, operators and task kinds.
    #[arg(long)]
    list: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment config.
    Run {
        config: PathBuf,
        /// Output directory; defaults to the config's `output.dir`, then `hb-lab-out/<id>`.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<Format>,
        /// Override the config seed.
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn print_catalog() {
    println!("fields:");
    for name in field_names() {
        println!("  {name}");
    }
    println!("catalog entries (audit_edge_of_wedge):");
    for c in CatalogName::ALL {
        println!("  {}", c.as_str());
    }
    println!("operators: rule {{ rule, n, mode }}, diagonal {{ values, mode }}, matrix {{ rows, mode }}");
    println!("  modes: continuous_generator, discrete_operator");
    println!("  rule examples: \"-1/k + ik\", \"ik\", \"(1 - 1/(k+1)) * i\"");
    println!("vectors: basis {{ index }}, power {{ exponent }}, values {{ values }}, random");
    println!("task kinds:");
    for k in TASK_KINDS {
        println!("  {k}");
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("HB_LAB_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().map_err(|_| format!("HB_LAB_THREADS must be a positive integer, got '{v}'"))?;
    if n == 0 {
        return Err("HB_LAB_THREADS must be a positive integer, got 0".into());
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if cli.list {
        print_catalog();
        return ExitCode::SUCCESS;
    }
    let Some(Command::Run { config, out, format, seed }) = cli.command else {
        eprintln!("error: nothing to do; use `hb-lab run <config>` or `hb-lab --list`");
        return ExitCode::from(2);
    };
    let mut cfg = match ExperimentConfig::load(&config) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Some(s) = seed {
        cfg.seed = s;
    }
    let envelope = match run_experiment(&cfg) {
        Ok(env) => env,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    for r in &envelope.records {
        println!("[{}] {} {}: {}", r.index, r.kind, r.label, r.status);
        if let hb_lab::TaskOutput::Error { message } = &r.output {
            eprintln!("  {message}");
        }
    }
    let dir = out.or_else(|| cfg.output.dir.clone()).unwrap_or_else(|| PathBuf::from("hb-lab-out").join(&cfg.id));
    let format = format.unwrap_or(cfg.output.format);
    match emit_report(&envelope, format, &dir) {
        Ok(paths) => {
            for p in paths {
                println!("wrote {}", p.display());
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    println!("status: {:?} in {:.2}s", envelope.status, envelope.duration_seconds);
    ExitCode::from(envelope.status.exit_code() as u8)
}
