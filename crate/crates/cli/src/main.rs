use std::process::ExitCode;

use clap::Parser;
use superyangian_cli::config::{parse_suites, ConfigError, SuiteConfig};
use superyangian_cli::{emit_report, registry, run_suite};

/// Exact verification of the super Yangian double DY(gl(1|1)).
#[derive(Parser, Debug)]
#[command(name = "dygl", version)]
struct Args {
    /// Suites to run: ybe, rtt, gauss, drinfeld, hopf, eval or all (repeatable, comma separated).
    #[arg(long, value_delimiter = ',')]
    suite: Vec<String>,
    /// Mode window W.
    #[arg(long)]
    window: Option<u32>,
    /// Truncation order N; must be at least 2W+2 when the symbolic layer runs.
    #[arg(long)]
    order: Option<u32>,
    /// eval, symbolic or both.
    #[arg(long)]
    layer: Option<String>,
    /// Seed for randomized checks.
    #[arg(long)]
    seed: Option<u64>,
    /// text or json.
    #[arg(long)]
    format: Option<String>,
    /// Mode window of the evaluation-layer mode checks.
    #[arg(long)]
    eval_window: Option<u32>,
    /// Config file of key=value lines; flags take precedence.
    #[arg(long)]
    config: Option<std::path::PathBuf>,
    /// List the check groups and exit.
    #[arg(long)]
    list: bool,
    #[arg(long, hide = true)]
    negative_control_as_check: bool,
}

fn build_config(a: &Args) -> Result<SuiteConfig, ConfigError> {
    let mut c = SuiteConfig::default();
    if let Some(p) = &a.config {
        let text = std::fs::read_to_string(p)
            .map_err(|e| ConfigError(format!("cannot read {}: {e}", p.display())))?;
        c.apply_file(&text)?;
    }
    if !a.suite.is_empty() {
        c.suites = parse_suites(&a.suite)?;
    }
    if let Some(w) = a.window {
        c.window = w;
    }
    if let Some(n) = a.order {
        c.order = n;
    }
    if let Some(l) = &a.layer {
        c.layer = l.parse()?;
    }
    if let Some(s) = a.seed {
        c.seed = s;
    }
    if let Some(f) = &a.format {
        c.output = f.parse()?;
    }
    if let Some(w) = a.eval_window {
        c.eval_window = w;
    }
    c.negative_controls_as_checks |= a.negative_control_as_check;
    c.validate()?;
    Ok(c)
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if args.list {
        for g in registry() {
            println!("{:<32} {:<9} {:<9} {}", g.id, g.suite, g.layer, g.description);
        }
        return ExitCode::SUCCESS;
    }
    let cfg = match build_config(&args) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("dygl: {e}");
            return ExitCode::from(2);
        }
    };
    let report = run_suite(&cfg);
    print!("{}", emit_report(&report, cfg.output));
    ExitCode::from(report.exit_code() as u8)
}
