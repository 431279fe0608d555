//! Acceptance criteria: one line per criterion.
//!
//! Criteria whose identity does not hold as stated are listed in
//! `EXPECTED_NOT_PASSING`; the target fails only when an outcome changes.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use superyangian_cli::{registry, CheckRecord, Ctx, Status, SuiteConfig};

const EXPECTED_NOT_PASSING: [u32; 4] = [5, 6, 7, 9];

struct Run {
    records: BTreeMap<String, CheckRecord>,
    times: BTreeMap<&'static str, Duration>,
    rules_time: Duration,
}

impl Run {
    fn matching(&self, pred: impl Fn(&str) -> bool) -> Vec<&CheckRecord> {
        self.records.values().filter(|r| pred(&r.id)).collect()
    }

    fn time(&self, groups: &[&str]) -> Duration {
        groups.iter().map(|g| self.times[g]).sum()
    }
}

fn run_all() -> Run {
    let cfg = SuiteConfig::default();
    let t = Instant::now();
    let ctx = Ctx::new(&cfg).expect("context");
    let rules_time = t.elapsed();
    let mut records = BTreeMap::new();
    let mut times = BTreeMap::new();
    for g in registry() {
        let t = Instant::now();
        for r in g.execute(&ctx) {
            records.insert(r.id.clone(), r);
        }
        times.insert(g.id, t.elapsed());
    }
    Run { records, times, rules_time }
}

#[derive(PartialEq)]
enum Outcome {
    Pass,
    Fail(String),
    Inconclusive(String),
}

fn all_pass(rs: &[&CheckRecord]) -> Outcome {
    if rs.is_empty() {
        return Outcome::Fail("no checks".into());
    }
    if let Some(r) = rs.iter().find(|r| r.status == Status::Fail) {
        let n = rs.iter().filter(|r| r.status == Status::Fail).count();
        return Outcome::Fail(format!("{n} failing, e.g. {}: {}", r.id, r.witness.clone().unwrap_or_default()));
    }
    if let Some(r) = rs.iter().find(|r| r.status != Status::Pass) {
        return Outcome::Inconclusive(format!("{} is {}", r.id, r.status.name()));
    }
    Outcome::Pass
}

fn within(o: Outcome, took: Duration, budget: Duration) -> Outcome {
    match o {
        Outcome::Pass if took > budget => Outcome::Fail(format!("took {took:.2?}, budget {budget:?}")),
        o => o,
    }
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn readings_pass(r: &CheckRecord, names: &[&str]) -> bool {
    names
        .iter()
        .all(|n| r.readings.iter().any(|x| x.reading == *n && x.status == Status::Pass))
}

fn criterion_11() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_dygl");
    let run = |args: &[&str]| Command::new(bin).args(args).output().expect("run dygl");
    let a = run(&["--suite", "all", "--format", "json", "--seed", "3"]);
    let b = run(&["--suite", "all", "--format", "json", "--seed", "3"]);
    if a.stdout != b.stdout || a.stdout.is_empty() {
        return Outcome::Fail("reports differ between identical runs".into());
    }
    if !matches!(a.status.code(), Some(0) | Some(1)) {
        return Outcome::Fail(format!("full run exited with {:?}", a.status.code()));
    }
    let pass = run(&["--suite", "ybe"]);
    let control = run(&["--suite", "ybe", "--negative-control-as-check"]);
    let usage = run(&["--window", "2", "--order", "5"]);
    let codes = (pass.status.code(), control.status.code(), usage.status.code());
    if codes != (Some(0), Some(1), Some(2)) {
        return Outcome::Fail(format!("exit codes (pass, control, usage) = {codes:?}"));
    }
    let text = String::from_utf8_lossy(&control.stdout);
    if !text.contains("FAIL") || !text.contains("witness:") {
        return Outcome::Fail("negative control run has no failing witness".into());
    }
    Outcome::Pass
}

fn main() {
    let run = run_all();
    let pfx = |p: &'static str| move |id: &str| id.starts_with(p);
    let mut results: Vec<(u32, &str, Outcome)> = Vec::new();

    results.push((
        1,
        "super Yang-Baxter equation",
        within(all_pass(&run.matching(|i| i == "ybe.super")), run.time(&["ybe.super"]), secs(1)),
    ));
    results.push((
        2,
        "component Yang-Baxter equations and negative control",
        within(
            all_pass(&run.matching(pfx("ybe.component"))),
            run.time(&["ybe.component", "ybe.component.negative-control"]),
            secs(1),
        ),
    ));
    results.push((
        3,
        "R-matrix properties",
        within(
            all_pass(&run.matching(|i| {
                ["ybe.r-at-zero", "ybe.weight-conservation", "ybe.unitarity"].contains(&i)
            })),
            run.time(&["ybe.r-properties"]),
            secs(1),
        ),
    ));
    results.push((
        4,
        "evaluation module: twist search and RTT",
        within(
            all_pass(&run.matching(|i| i == "eval.twist-search" || i.starts_with("rtt.eval."))),
            run.time(&["eval.convention", "rtt.eval"]),
            secs(5),
        ),
    ));
    results.push((
        5,
        "Gauss reconstruction",
        within(
            all_pass(&run.matching(pfx("gauss.reconstruct"))),
            run.time(&["gauss.reconstruct", "gauss.reconstruct.symbolic"]),
            secs(10),
        ),
    ));
    {
        let mut rs = run.matching(|i| {
            i.starts_with("drinfeld.eq12.")
                && !i.starts_with("drinfeld.eq12.line1")
                && !i.starts_with("drinfeld.eq12.EF")
        });
        let ef = run.matching(|i| i.starts_with("drinfeld.eq15.ef.eval"));
        rs.extend(ef);
        let line1 = run.matching(pfx("drinfeld.eq12.line1."));
        let both = line1.len() == 4 && line1.iter().all(|r| readings_pass(r, &["[H,H]=0", "[H,K]=0"]));
        let o = match all_pass(&rs) {
            Outcome::Pass if !both => Outcome::Fail("a line-1 reading is nonzero".into()),
            o => o,
        };
        results.push((
            6,
            "current relations, sign-resolved",
            within(o, run.time(&["drinfeld.eq12", "drinfeld.eq12.line1", "drinfeld.eq12.ef"]), secs(10)),
        ));
    }
    results.push((
        7,
        "mode relations on both layers",
        within(
            all_pass(&run.matching(|i| {
                i.starts_with("drinfeld.eq15.") && !i.starts_with("drinfeld.eq15.ef-unit-normalization")
            })),
            run.time(&["drinfeld.eq15.eval", "drinfeld.eq15.symbolic"]),
            secs(60),
        ),
    ));
    results.push((
        8,
        "Hopf axioms, homomorphism, antipode, sign control",
        within(
            all_pass(&run.matching(|i| {
                i.starts_with("hopf.") && !i.starts_with("hopf.eq13") && i != "hopf.pairing"
            })),
            run.time(&[
                "hopf.counit",
                "hopf.coassociativity",
                "hopf.antipode.eval",
                "hopf.antipode.symbolic",
                "hopf.homomorphism.eval",
                "hopf.homomorphism.symbolic",
            ]) + run.rules_time,
            secs(30),
        ),
    ));
    {
        let exact = run.matching(|i| ["hopf.eq13.E", "hopf.eq13.H"].contains(&i));
        let f = &run.records["hopf.eq13.F"];
        let k = &run.records["hopf.eq13.K"];
        let f_ok = readings_pass(f, &["k(u)=K"]);
        let k_reported = !k.readings.is_empty() && k.status == Status::AmbiguousReading;
        let o = match all_pass(&exact) {
            Outcome::Pass if !f_ok => Outcome::Fail("ΔF fails under the K reading".into()),
            Outcome::Pass if !k_reported => Outcome::Fail("ΔK readings not reported".into()),
            o => o,
        };
        results.push((9, "current coproducts", within(o, run.time(&["hopf.eq13"]), secs(30))));
    }
    results.push((
        10,
        "rewrite rules: re-derivation and coverage",
        within(
            all_pass(&run.matching(pfx("rtt.rules."))),
            run.time(&["rtt.rules"]) + run.rules_time,
            secs(30),
        ),
    ));
    results.push((11, "determinism and exit codes", criterion_11()));

    let mut unexpected = Vec::new();
    for (n, name, o) in &results {
        let (tag, detail) = match o {
            Outcome::Pass => ("PASS", String::new()),
            Outcome::Fail(d) => ("FAIL", format!(": {d}")),
            Outcome::Inconclusive(d) => ("INCONCLUSIVE", format!(": {d}")),
        };
        println!("criterion {n:>2} {tag:<12} {name}{detail}");
        let passed = *o == Outcome::Pass;
        if passed == EXPECTED_NOT_PASSING.contains(n) {
            unexpected.push(*n);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("criteria with an unexpected outcome: {unexpected:?}");
        std::process::exit(1);
    }
}
