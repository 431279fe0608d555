//! Command-line workbench for the exact verification engine.

pub mod checks;
pub mod config;
pub mod report;

use rayon::prelude::*;

pub use checks::{registry, CheckGroup, Ctx};
pub use config::{ConfigError, Format, Layer, Suite, SuiteConfig};
pub use report::{emit_report, CheckRecord, CheckReport, Status};

/// Groups selected by the configuration, in registry order.
pub fn selected_groups(cfg: &SuiteConfig) -> Vec<CheckGroup> {
    registry()
        .into_iter()
        .filter(|g| cfg.suites.contains(&g.suite) && cfg.layer.includes(g.layer))
        .collect()
}

/// Runs every selected check; the report is independent of scheduling.
pub fn run_suite(cfg: &SuiteConfig) -> CheckReport {
    let groups = selected_groups(cfg);
    match Ctx::new(cfg) {
        Ok(ctx) => {
            let checks: Vec<CheckRecord> = groups.par_iter().flat_map_iter(|g| g.execute(&ctx)).collect();
            CheckReport::new(cfg.clone(), checks::conventions(&ctx), checks)
        }
        Err(e) => {
            let checks = vec![CheckRecord::new(
                "setup",
                config::Suite::Rtt,
                config::CheckLayer::Exact,
                Status::Fail,
            )
            .witness(format!("error: {e}"))];
            CheckReport::new(cfg.clone(), Default::default(), checks)
        }
    }
}
