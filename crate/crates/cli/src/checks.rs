//! The registry of checks run by the workbench.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use superyangian::error::Result;
use superyangian::evalrep::{
    classical_limit, expand_qmat, make_eval_rep, represent, rtt_residual_eval, EvalRep,
};
use superyangian::exactfield::{sym, RatFunc, Symbol};
use superyangian::gauss::{
    clear_denominators, drinfeld_residual_eval, drinfeld_residual_scaled, ef_mode_series_consistency, ef_normalized,
    eq15_eval, eq15_symbolic, eval_currents, eval_mode_table, eval_symbolic_agreement, gauss_decompose,
    parity_violations, reconstruct, symbolic_currents, symbolic_mode_table, DrinfeldRelation, Eq15Family, Family,
};
use superyangian::gradedlinalg::{graded_permutation, GradedMatrix, QMat};
use superyangian::hopf::{
    antipode_defect_series, antipode_eval, coassociativity_failures, coproduct_homomorphism_residual,
    counit_axiom_failures, counit_of_currents, counit_series, current_coproduct_residual, e_line_with_h,
    homomorphism_residual_eval, CoproductLine, CoproductSign, PairingConstant, Reading,
};
use superyangian::modealgebra::{
    normal_form_checked, AlgElem, GeneratorId, Half, NormalStatus, RuleSet, SignPair, Word, DEFAULT_MAX_PASSES,
};
use superyangian::rmatrix::{
    all_component_indices, build_r, r_at, unitarity_residual, weight_violations, ybe_component_residual,
    ybe_component_residual_with, ybe_residual, Permutation,
};
use superyangian::ring::Ring;
use superyangian::rtt::{
    build_generating_matrix, check_eq6_all, check_rtt, check_series2, eq6_series, eq7_indices, eq7_line,
    relation_via_series, ReductionSummary,
};
use superyangian::series::Direction;

use crate::config::{CheckLayer, Suite, SuiteConfig};
use crate::report::{CheckRecord, ReadingStatus, Status};

/// Shared, read-only inputs of all checks.
pub struct Ctx<'a> {
    pub cfg: &'a SuiteConfig,
    pub rep: EvalRep,
    pub rules: Option<RuleSet>,
}

impl<'a> Ctx<'a> {
    pub fn new(cfg: &'a SuiteConfig) -> Result<Self> {
        let rep = make_eval_rep(Symbol::A)?;
        let needs_rules = cfg.suites.iter().any(|s| *s != Suite::Ybe);
        let rules = if cfg.layer.has_symbolic() && needs_rules {
            Some(RuleSet::for_window(cfg.window as i64)?)
        } else {
            None
        };
        Ok(Ctx { cfg, rep, rules })
    }

    fn rules(&self) -> Result<&RuleSet> {
        self.rules.as_ref().ok_or_else(|| {
            superyangian::error::AlgebraError::Unsupported("symbolic layer not selected".into())
        })
    }

    fn w(&self) -> i64 {
        self.cfg.window as i64
    }

    fn n(&self) -> usize {
        self.cfg.order as usize
    }
}

type Runner = fn(&Ctx, &CheckGroup) -> Result<Vec<CheckRecord>>;

/// A named family of checks.
pub struct CheckGroup {
    pub id: &'static str,
    pub suite: Suite,
    pub layer: CheckLayer,
    pub description: &'static str,
    run: Runner,
}

impl CheckGroup {
    fn rec(&self, id: impl Into<String>, status: Status) -> CheckRecord {
        CheckRecord::new(id, self.suite, self.layer, status)
    }

    /// Runs the group; an error becomes a failing record.
    pub fn execute(&self, ctx: &Ctx) -> Vec<CheckRecord> {
        match (self.run)(ctx, self) {
            Ok(v) => v,
            Err(e) => vec![self.rec(self.id, Status::Fail).witness(format!("error: {e}"))],
        }
    }
}

macro_rules! group {
    ($id:expr, $suite:ident, $layer:ident, $desc:expr, $f:expr) => {
        CheckGroup {
            id: $id,
            suite: Suite::$suite,
            layer: CheckLayer::$layer,
            description: $desc,
            run: $f,
        }
    };
}

pub fn registry() -> Vec<CheckGroup> {
    vec![
        group!("ybe.super", Ybe, Exact, "graded Yang-Baxter equation on V⊗V⊗V", ybe_super),
        group!("ybe.component", Ybe, Exact, "all 64 component equations", ybe_components),
        group!("ybe.component.negative-control", Ybe, Exact, "ungraded permutation breaks the component equations", ybe_control),
        group!("ybe.r-properties", Ybe, Exact, "R(0), weight conservation, unitarity", ybe_properties),
        group!("rtt.eval", Rtt, Eval, "RTT relation on V(a) for each sign pair", rtt_eval),
        group!("rtt.symbolic", Rtt, Symbolic, "RTT relation in the truncated free algebra", rtt_symbolic),
        group!("rtt.unified", Rtt, Symbolic, "unified generating-function relation for all index tuples", rtt_unified),
        group!("rtt.special-cases", Rtt, Symbolic, "three worked special cases against the unified relation", rtt_special),
        group!("rtt.rules", Rtt, Symbolic, "rewrite rules: certificates, re-derivation, coverage", rtt_rules),
        group!("rtt.negative-control", Rtt, Symbolic, "rules without ħ corrections break RTT", rtt_control),
        group!("gauss.reconstruct", Gauss, Eval, "triple product reproduces T on V(a)", gauss_reconstruct_eval),
        group!("gauss.reconstruct.symbolic", Gauss, Symbolic, "triple product reproduces T up to truncation", gauss_reconstruct_symbolic),
        group!("gauss.currents.symbolic", Gauss, Symbolic, "parity and leading terms of the currents", gauss_currents_symbolic),
        group!("gauss.currents.eval", Gauss, Eval, "H and K are diagonal on V(a)", gauss_currents_eval),
        group!("gauss.counit", Gauss, Exact, "counit of the currents", gauss_counit),
        group!("gauss.modes.agreement", Gauss, Mixed, "symbolic modes pushed through V(a) equal eval modes", gauss_agreement),
        group!("drinfeld.eq12", Drinfeld, Eval, "current relations, sign-resolved", drinfeld_eq12),
        group!("drinfeld.eq12.line1", Drinfeld, Eval, "first line under each reading", drinfeld_line1),
        group!("drinfeld.eq12.ef", Drinfeld, Eval, "EF relation through modes", drinfeld_ef),
        group!("drinfeld.scaling", Drinfeld, Eval, "homogeneity under ħ,u,v,a → λ·", drinfeld_scaling),
        group!("drinfeld.eq15.eval", Drinfeld, Eval, "mode relations on V(a)", drinfeld_eq15_eval),
        group!("drinfeld.eq15.symbolic", Drinfeld, Symbolic, "mode relations in normal form", drinfeld_eq15_symbolic),
        group!("hopf.counit", Hopf, Symbolic, "counit values and axioms", hopf_counit),
        group!("hopf.coassociativity", Hopf, Symbolic, "coassociativity on window generators", hopf_coassoc),
        group!("hopf.antipode.eval", Hopf, Eval, "antipode defining identity on V(a)", hopf_antipode_eval),
        group!("hopf.antipode.symbolic", Hopf, Symbolic, "antipode defining identity on truncated series", hopf_antipode_symbolic),
        group!("hopf.homomorphism.eval", Hopf, Eval, "ΔT satisfies RTT on V(a)⊗V(b)", hopf_hom_eval),
        group!("hopf.homomorphism.symbolic", Hopf, Symbolic, "ΔT satisfies RTT in the tensor square", hopf_hom_symbolic),
        group!("hopf.eq13", Hopf, Eval, "current coproducts on V(a)⊗V(b)", hopf_eq13),
        group!("hopf.pairing", Hopf, Exact, "pairing constant equals R(u-v)", hopf_pairing),
        group!("eval.convention", Eval, Eval, "twist search, normalization, classical limit", eval_convention),
        group!("eval.modes", Eval, Eval, "current modes against closed forms", eval_modes),
        group!("eval.rules", Eval, Mixed, "every rewrite rule vanishes on V(a)", eval_rules),
        group!("eval.random-words", Eval, Mixed, "seeded words: normal form preserves the V(a) image", eval_random),
    ]
}

fn q_witness<const N: usize>(m: &QMat<N>) -> String {
    match m.matrix().nonzero().first() {
        Some((r, c, x)) => format!("entry ({},{}) = {x}", r + 1, c + 1),
        None => "0".into(),
    }
}

fn block_witness<const N: usize>(m: &GradedMatrix<QMat<N>>) -> String {
    match m.nonzero().first() {
        Some((r, c, x)) => format!("block ({},{}): {}", r + 1, c + 1, q_witness(x)),
        None => "0".into(),
    }
}

fn summary_record(g: &CheckGroup, id: String, s: &ReductionSummary) -> CheckRecord {
    let status = if s.all_zero() {
        Status::Pass
    } else if s.nonzero > 0 || s.parity_violations > 0 || s.checked == 0 {
        Status::Fail
    } else {
        Status::Inconclusive
    };
    let w = if s.checked == 0 {
        "no coefficient inside the rule window".to_string()
    } else if s.parity_violations > 0 {
        format!("{} coefficients of the wrong parity", s.parity_violations)
    } else {
        s.witnesses.first().cloned().unwrap_or_else(|| format!("{} inconclusive", s.inconclusive))
    };
    g.rec(id, status)
        .param("checked", s.checked)
        .param("skipped", s.skipped)
        .witness(w)
}

/// A negative control passes when it detects a nonzero residual, unless
/// controls are run as ordinary checks.
fn control(ctx: &Ctx, g: &CheckGroup, id: &str, detected: bool, witness: String) -> CheckRecord {
    if ctx.cfg.negative_controls_as_checks {
        g.rec(id, Status::of(!detected)).witness(witness)
    } else {
        g.rec(id, Status::of(detected))
            .note("negative control: a nonzero residual is expected")
            .witness("residual vanished")
    }
}

fn ybe_super(_: &Ctx, g: &CheckGroup) -> Result<Vec<CheckRecord>> {
    let r = ybe_residual();
    let w = r.nonzero().first().map(|(a, b, x)| format!("entry ({},{}) = {x}", a + 1, b + 1));
    Ok(vec![g.rec(g.id, Status::of(r.is_zero())).witness(w.unwrap_or_default())])
}

fn ybe_components(_: &Ctx, g: &CheckGroup) -> Result<Vec<CheckRecord>> {
    let mut bad = Vec::new();
    for idx in all_component_indices() {
        let x = ybe_component_residual(idx)?;
        if !x.is_zero() {
            bad.push(format!("{idx:?}: {x}"));
        }
    }
    Ok(vec![g
        .rec(g.id, Status::of(bad.is_empty()))
        .param("components", all_component_indices().len())
        .witness(bad.first().cloned().unwrap_or_default())])
}

fn ybe_control(ctx: &Ctx, g: &CheckGroup) -> Result<Vec<CheckRecord>> {
    let mut first = None;
    for idx in all_component_indices() {
        let x = ybe_component_residual_with(idx, Permutation::Ungraded)?;
        if !x.is_zero() {
            first = Some(format!("{idx:?}: {x}"));
            break;
        }
    }
    Ok(vec![control(ctx, g, g.id, first.is_some(), first.unwrap_or_default())])
}

fn ybe_properties(_: &Ctx, g: &CheckGroup) -> Result<Vec<CheckRecord>> {
    let r0 = r_at(&RatFunc::zero(), Permutation::Graded);
    let expect = graded_permutation().scale(&sym::hbar());
    let wv = weight_violations(&build_r(Symbol::U).matrix);
    let un = unitarity_residual();
    Ok(vec![
        g.rec("ybe.r-at-zero", Status::of(r0 == expect)).witness("R(0) differs from ħ𝒫"),
        g.rec("ybe.weight-conservation", Status::of(wv.is_empty()))
            .witness(format!("{:?}", wv.first())),
        g.rec("ybe.unitarity", Status::of(un.is_zero()))
            .witness(format!("{:?}", un.nonzero().first().map(|(r, c, x)| (r, c, x.to_string())))),
    ])
}

fn rtt_eval(ctx: &Ctx, g: &CheckGroup) -> Result<Vec<CheckRecord>> {
    // t⁺ and t⁻ are the same rational matrix, so one residual serves all pairs
    let res = rtt_residual_eval(&ctx.rep.t)?;
    Ok(SignPair::ALL
        .iter()
        .map(|p| {
            g.rec(format!("rtt.eval.{p}"), Status::of(res.is_zero()))
                .param("pair", p)
                .witness(block_witness(&res))
        })
        .collect())
}

fn rtt_symbolic(ctx: &Ctx, g: &CheckGroup) -> Result<Vec<CheckRecord>> {
    let rules = ctx.rules()?;
    let mut out = Vec::new();
    for p in SignPair::ALL {
        let s = check_rtt(p, ctx.n(), rules)?;
        out.push(summary_record(g, format!("rtt.symbolic.{p}"), &s).param("pair", p).param("order", ctx.n()));
    }
    Ok(out)
}

fn rtt_unified(ctx: &Ctx, g: &CheckGroup) -> Result<Vec<CheckRecord>> {
    let rules = ctx.rules()?;
    let mut out = Vec::new();
    for p in SignPair::ALL {
        let s = check_eq6_all(p, ctx.n(), rules)?;
        out.push(summary_record(g, format!("rtt.unified.{p}"), &s).param("pair", p).param("order", ctx.n()));
    }
    Ok(out)
}

fn rtt_special(ctx: &Ctx, g: &CheckGroup) -> Result<Vec<CheckRecord>> {
    let rules = ctx.rules()?;
    let mut out = Vec::new();
    for line in 1..=3 {
        let (i, j, k, l) = eq7_indices(line).expect("three special cases");
        for p in SignPair::ALL {
            let x = eq7_line(line, p, ctx.n())?;
            let y = eq6_series(i, j, k, l, p, ctx.n())?;
            let id = format!("rtt.special-case.{line}.{p}");
            if x != y {
                out.push(g.rec(id, Status::Fail).witness(format!("differs from the unified relation for ({i}{j}{k}{l})")));
                continue;
            }
            let s = check_series2(&x, rules, &format!("case {line}"));
            out.push(summary_record(g, id, &s).param("indices", format!("{i}{j}{k}{l}")));
        }
    }
    Ok(out)
}

fn rtt_rules(ctx: &Ctx, g: &CheckGroup) -> Result<Vec<CheckRecord>> {
    let rules = ctx.rules()?;
    let cert = rules.validate(|id| id.derive())?;
    let series = rules.validate(relation_via_series)?;
    let cov = rules.coverage(ctx.w());
    let fmt_bad = |v: &[(GeneratorId, GeneratorId)]| v.first().map(|(a, b)| format!("{a}*{b}")).unwrap_or_default();
    let mut out = vec![
        g.rec("rtt.rules.certificates", Status::of(cert.is_empty()))
            .param("rules", rules.len())
            .witness(fmt_bad(&cert)),
        g.rec("rtt.rules.series-rederivation", Status::of(series.is_empty()))
            .param("rules", rules.len())
            .witness(fmt_bad(&series)),
        g.rec("rtt.rules.degenerate", Status::of(rules.degenerate.is_empty()))
            .witness(rules.degenerate.first().map(|x| x.to_string()).unwrap_or_default()),
    ];
    for (class, (hit, total)) in &cov.covered {
        let prefix = format!("{class}:");
        let miss = cov.uncovered.iter().find(|s| s.starts_with(&prefix)).cloned();
        out.push(
            g.rec(format!("rtt.rules.coverage.{class}"), Status::of(hit == total))
                .param("covered", format!("{hit}/{total}"))
                .param("window", ctx.w())
                .witness(miss.unwrap_or_default()),
        );
    }
    Ok(out)
}

fn rtt_control(ctx: &Ctx, g: &CheckGroup) -> Result<Vec<CheckRecord>> {
    let bad = ctx.rules()?.without_hbar_corrections()?;
    let s = check_rtt(SignPair::PlusPlus, ctx.n(), &bad)?;
    let w = s.witnesses.first().cloned().unwrap_or_default();
    Ok(vec![control(ctx, g, g.id, s.nonzero > 0, w).param("pair", SignPair::PlusPlus)])
}

fn gauss_reconstruct_eval(ctx: &Ctx, g: &CheckGroup) -> Result<Vec<CheckRecord>> {
    let t = ctx.rep.t.entries.clone();
    let r = reconstruct(&gauss_decompose(&t)?)?;
    Ok(vec![g.rec("gauss.reconstruct.eval", Status::of(r == t)).witness("entrywise mismatch")])
}

fn gauss_reconstruct_symbolic(ctx: &Ctx, g: &CheckGroup) -> Result<Vec<CheckRecord>> {
    let n = ctx.n();
    let t = build_generating_matrix(Half::Plus, n).entries;
    let r = reconstruct(&gauss_decompose(&t)?)?;
    let mut bad = None;
    let mut compared = 0;
    for i in 0..2 {
        for j in 0..2 {
            for e in (0..=n as i64 + 1).map(|k| -k) {
                if r[i][j].knows(e) && t[i][j].knows(e) {
                    compared += 1;
                    if r[i][j].coeff(e)? != t[i][j].coeff(e)? && bad.is_none() {
                        bad = Some(format!("entry ({},{}) at u^{e}", i + 1, j + 1));
                    }
                }
            }
        }
    }
    Ok(vec![
        g.rec("gauss.reconstruct.symbolic.+", Status::of(bad.is_none()))
            .param("order", n)
            .param("coefficients", compared)
            .witness(bad.unwrap_or_default()),
        g.rec("gauss.reconstruct.symbolic.-", Status::Inconclusive)
            .param("order", n)
            .note("t₁₁⁻(u) has constant term 1+ħ·t[1,1;-1], which has no inverse in the truncated free algebra; the − half is covered on the eval layer"),
    ])
}

fn gauss_currents_symbolic(ctx: &Ctx, g: &CheckGroup) -> Result<Vec<CheckRecord>> {
    let cs = symbolic_currents(ctx.n())?;
    let bad = parity_violations(&cs.plus);
    let c = &cs.plus;
    let lead_ok = c.h.coeff(0)? == AlgElem::one()
        && c.k.coeff(0)? == AlgElem::one()
        && c.e.coeff(0)?.is_zero()
        && c.f.coeff(0)?.is_zero();
    Ok(vec![
        g.rec("gauss.currents.parity", Status::of(bad.is_empty()))
            .param("order", ctx.n())
            .witness(bad.first().cloned().unwrap_or_default()),
        g.rec("gauss.currents.leading-terms", Status::of(lead_ok)).witness("leading terms of H⁺, K⁺, E⁺, F⁺"),
    ])
}

fn is_diagonal(m: &QMat<2>) -> bool {
    m.get(0, 1).is_zero() && m.get(1, 0).is_zero()
}

fn gauss_currents_eval(ctx: &Ctx, g: &CheckGroup) -> Result<Vec<CheckRecord>> {
    let cs = eval_currents(&ctx.rep)?;
    let ok = is_diagonal(&cs.plus.h) && is_diagonal(&cs.plus.k);
    Ok(vec![g.rec("gauss.currents.eval-diagonal", Status::of(ok)).witness(format!("H = {}", cs.plus.h))])
}

fn gauss_counit(_: &Ctx, g: &CheckGroup) -> Result<Vec<CheckRecord>> {
    let [e, f, h, k] = counit_of_currents()?;
    let ok = e.is_zero() && f.is_zero() && h.is_one() && k.is_one();
    Ok(vec![g.rec(g.id, Status::of(ok)).witness(format!("ε(E,F,H,K) = ({e}, {f}, {h}, {k})"))])
}

fn gauss_agreement(ctx: &Ctx, g: &CheckGroup) -> Result<Vec<CheckRecord>> {
    let w = ctx.w();
    let sym_t = symbolic_mode_table(w, ctx.n())?;
    let ev = eval_mode_table(&ctx.rep, w)?;
    let reach = (2 * w).max(w + 1);
    let bad = eval_symbolic_agreement(&ctx.rep, &sym_t, &ev, 0..=reach)?;
    Ok(vec![g
        .rec(g.id, Status::of(bad.is_empty()))
        .param("modes", format!("0..={reach}"))
        .witness(bad.first().map(|(f, i)| format!("{f}{i}")).unwrap_or_default())])
}

fn pair_name(s: Half, r: Half) -> String {
    format!("{}{}", s.symbol(), r.symbol())
}

const HALVES: [Half; 2] = [Half::Plus, Half::Minus];

fn drinfeld_eq12(ctx: &Ctx, g: &CheckGroup) -> Result<Vec<CheckRecord>> {
    use DrinfeldRelation::*;
    let mut out = Vec::new();
    for rel in [KK, HE, HF, EK, FK, EE, FF] {
        for s in HALVES {
            for r in HALVES {
                let x = drinfeld_residual_eval(rel, s, r, &ctx.rep)?;
                out.push(
                    g.rec(format!("drinfeld.eq12.{rel}.{}", pair_name(s, r)), Status::of(x.is_zero()))
                        .param("sigma", s.symbol())
                        .param("rho", r.symbol())
                        .witness(q_witness(&clear_denominators(&x))),
                );
            }
        }
    }
    Ok(out)
}

fn drinfeld_line1(ctx: &Ctx, g: &CheckGroup) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for s in HALVES {
        for r in HALVES {
            let hh = drinfeld_residual_eval(DrinfeldRelation::HH, s, r, &ctx.rep)?;
            let hk = drinfeld_residual_eval(DrinfeldRelation::HK, s, r, &ctx.rep)?;
            let diff = hh.minus(&hk);
            let rd = |name: &str, x: &QMat<2>| ReadingStatus {
                reading: name.to_string(),
                status: Status::of(x.is_zero()),
                witness: (!x.is_zero()).then(|| q_witness(x)),
            };
            out.push(
                g.rec(format!("drinfeld.eq12.line1.{}", pair_name(s, r)), Status::AmbiguousReading)
                    .param("sigma", s.symbol())
                    .param("rho", r.symbol())
                    .readings(vec![rd("[H,H]=0", &hh), rd("[H,K]=0", &hk), rd("[H,H]=[H,K]", &diff)]),
            );
        }
    }
    Ok(out)
}

fn drinfeld_ef(ctx: &Ctx, g: &CheckGroup) -> Result<Vec<CheckRecord>> {
    let w = ctx.cfg.eval_window as i64;
    let cons = ef_mode_series_consistency(&ctx.rep, w)?;
    let bad = cons.iter().find(|(_, x)| !x.is_zero());
    let table = eval_mode_table(&ctx.rep, w)?;
    let mut first_fail = None;
    for k in -w..=w {
        for l in -w..=w {
            let x = superyangian::gauss::eq15_terms(Eq15Family::EfAnticommutator, k, l, &table.lookup())?;
            if first_fail.is_none() && !x[0].1.is_zero() {
                first_fail = Some(format!("{} = {}", x[0].0, q_witness(&x[0].1)));
            }
        }
    }
    Ok(vec![
        g.rec("drinfeld.eq12.EF", Status::of(first_fail.is_none()))
            .param("window", w)
            .note("the δ(u−v) term is checked at mode level as {e_k,f_l} = −2h_{k+l}")
            .witness(first_fail.unwrap_or_default()),
        g.rec("drinfeld.eq12.EF.mode-series", Status::of(bad.is_none()))
            .param("window", w)
            .param("pairs", cons.len())
            .witness(bad.map(|((k, l), x)| format!("(k,l)=({k},{l}): {}", q_witness(x))).unwrap_or_default()),
    ])
}

/// Scaling degree of each residual: `E, F` have degree −1, `H, K` degree 0.
fn scaling_degree(rel: DrinfeldRelation) -> i32 {
    use DrinfeldRelation::*;
    match rel {
        HH | HK | KK | EK | FK => 0,
        HE | HF => -1,
        EE | FF | EF => -2,
    }
}

fn drinfeld_scaling(ctx: &Ctx, g: &CheckGroup) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for rel in DrinfeldRelation::ALL {
        let d = scaling_degree(rel);
        let mut bad = None;
        for s in HALVES {
            for r in HALVES {
                let x = drinfeld_residual_eval(rel, s, r, &ctx.rep)?;
                let y = drinfeld_residual_scaled(rel, s, r, &ctx.rep)?;
                if y != x.scale(&sym::lambda().pow(d)?) && bad.is_none() {
                    bad = Some(pair_name(s, r));
                }
            }
        }
        out.push(
            g.rec(format!("drinfeld.scaling.{rel}"), Status::of(bad.is_none()))
                .param("degree", d)
                .witness(bad.map(|p| format!("variant {p} is not homogeneous")).unwrap_or_default()),
        );
    }
    Ok(out)
}

fn drinfeld_eq15_eval(ctx: &Ctx, g: &CheckGroup) -> Result<Vec<CheckRecord>> {
    let w = ctx.cfg.eval_window as i64;
    let res = eq15_eval(&ctx.rep, w)?;
    let mut out = Vec::new();
    for fam in Eq15Family::ALL {
        let rows: Vec<_> = res.iter().filter(|r| r.family == fam).collect();
        let bad: Vec<_> = rows.iter().filter(|r| !r.value.is_zero()).collect();
        out.push(
            g.rec(format!("drinfeld.eq15.{fam}.eval"), Status::of(bad.is_empty()))
                .param("window", w)
                .param("instances", rows.len())
                .param("failing", bad.len())
                .witness(bad.first().map(|r| format!("{} = {}", r.label, q_witness(&r.value))).unwrap_or_default()),
        );
    }
    let table = eval_mode_table(&ctx.rep, w)?;
    let mut first = None;
    for k in -w..=w {
        for l in -w..=w {
            let x = ef_normalized(k, l, &table.lookup())?;
            if first.is_none() && !x.is_zero() {
                first = Some(format!("({k},{l}): {}", q_witness(&x)));
            }
        }
    }
    out.push(
        g.rec("drinfeld.eq15.ef-unit-normalization.eval", Status::of(first.is_none()))
            .param("window", w)
            .note("diagnostic: {e_k,f_l} = −h_{k+l}")
            .witness(first.unwrap_or_default()),
    );
    Ok(out)
}

fn drinfeld_eq15_symbolic(ctx: &Ctx, g: &CheckGroup) -> Result<Vec<CheckRecord>> {
    let rules = ctx.rules()?;
    let (w, n) = (ctx.w(), ctx.n());
    let res = eq15_symbolic(w, n, rules)?;
    let mut out = Vec::new();
    for fam in Eq15Family::ALL {
        let rows: Vec<_> = res.iter().filter(|(r, _)| r.family == fam).collect();
        let inconclusive = rows.iter().filter(|(_, s)| *s == NormalStatus::Inconclusive).count();
        let bad: Vec<_> = rows
            .iter()
            .filter(|(r, s)| *s == NormalStatus::Normal && !r.value.is_zero())
            .collect();
        let status = if !bad.is_empty() {
            Status::Fail
        } else if inconclusive > 0 {
            Status::Inconclusive
        } else {
            Status::Pass
        };
        out.push(
            g.rec(format!("drinfeld.eq15.{fam}.symbolic"), status)
                .param("window", w)
                .param("order", n)
                .param("instances", rows.len())
                .param("failing", bad.len())
                .witness(bad.first().map(|(r, _)| format!("{} = {}", r.label, r.value)).unwrap_or_default()),
        );
    }
    let table = symbolic_mode_table(w, n)?;
    let mut first = None;
    let mut inconclusive = false;
    for k in 0..=w {
        for l in 0..=w {
            let x = ef_normalized(k, l, &table.lookup())?;
            let (y, s) = superyangian::modealgebra::normal_form(&x, rules, DEFAULT_MAX_PASSES);
            inconclusive |= s == NormalStatus::Inconclusive;
            if first.is_none() && s == NormalStatus::Normal && !y.is_zero() {
                first = Some(format!("({k},{l}): {y}"));
            }
        }
    }
    let status = match (first.is_some(), inconclusive) {
        (true, _) => Status::Fail,
        (false, true) => Status::Inconclusive,
        _ => Status::Pass,
    };
    out.push(
        g.rec("drinfeld.eq15.ef-unit-normalization.symbolic", status)
            .param("window", w)
            .param("order", n)
            .note("diagnostic: {e_k,f_l} = −h_{k+l}")
            .witness(first.unwrap_or_default()),
    );
    Ok(out)
}

fn hopf_counit(ctx: &Ctx, g: &CheckGroup) -> Result<Vec<CheckRecord>> {
    let n = ctx.n();
    let mut bad = None;
    for half in HALVES {
        let t = build_generating_matrix(half, n);
        for i in 0..2 {
            for j in 0..2 {
                let e = counit_series(&t.entries[i][j]);
                let expect = if i == j { RatFunc::one() } else { RatFunc::zero() };
                let ok = e.coeffs().all(|(x, c)| if x == 0 { *c == expect } else { c.is_zero() })
                    && (i != j || e.coeff(0)? == expect);
                if !ok && bad.is_none() {
                    bad = Some(format!("ε(t{}{}{}(u))", i + 1, j + 1, half.symbol()));
                }
            }
        }
    }
    let axioms = counit_axiom_failures(ctx.w())?;
    Ok(vec![
        g.rec("hopf.counit.values", Status::of(bad.is_none())).witness(bad.unwrap_or_default()),
        g.rec("hopf.counit.axioms", Status::of(axioms.is_empty()))
            .param("window", ctx.w())
            .witness(axioms.first().cloned().unwrap_or_default()),
    ])
}

fn hopf_coassoc(ctx: &Ctx, g: &CheckGroup) -> Result<Vec<CheckRecord>> {
    let bad = coassociativity_failures(ctx.w())?;
    Ok(vec![g
        .rec(g.id, Status::of(bad.is_empty()))
        .param("window", ctx.w())
        .witness(bad.first().cloned().unwrap_or_default())])
}

fn hopf_antipode_eval(ctx: &Ctx, g: &CheckGroup) -> Result<Vec<CheckRecord>> {
    let (st, s) = antipode_eval(&ctx.rep)?;
    let id = GradedMatrix::<QMat<2>>::identity(st.space().clone());
    let ok = s.mul(&st) == id && st.mul(&s) == id;
    Ok(vec![g.rec(g.id, Status::of(ok)).witness("S(stT)·stT ≠ 1")])
}

fn hopf_antipode_symbolic(ctx: &Ctx, g: &CheckGroup) -> Result<Vec<CheckRecord>> {
    let bad = antipode_defect_series(ctx.n())?;
    Ok(vec![g
        .rec(g.id, Status::of(bad.is_empty()))
        .param("order", ctx.n())
        .witness(bad.first().cloned().unwrap_or_default())])
}

fn hopf_hom_eval(ctx: &Ctx, g: &CheckGroup) -> Result<Vec<CheckRecord>> {
    let r = homomorphism_residual_eval(CoproductSign::Printed)?;
    let c = homomorphism_residual_eval(CoproductSign::Dropped)?;
    Ok(vec![
        g.rec("hopf.homomorphism.eval", Status::of(r.is_zero())).witness(block_witness(&r)),
        control(ctx, g, "hopf.homomorphism.eval.negative-control", !c.is_zero(), block_witness(&c)),
    ])
}

fn hopf_hom_symbolic(ctx: &Ctx, g: &CheckGroup) -> Result<Vec<CheckRecord>> {
    let rules = ctx.rules()?;
    let mut out = Vec::new();
    for p in SignPair::ALL {
        let s = coproduct_homomorphism_residual(p, ctx.n(), rules, CoproductSign::Printed)?;
        out.push(summary_record(g, format!("hopf.homomorphism.symbolic.{p}"), &s).param("pair", p));
    }
    let c = coproduct_homomorphism_residual(SignPair::PlusPlus, ctx.n(), rules, CoproductSign::Dropped)?;
    let w = c.witnesses.first().cloned().unwrap_or_default();
    out.push(control(ctx, g, "hopf.homomorphism.symbolic.negative-control", c.nonzero > 0, w).param("pair", SignPair::PlusPlus));
    Ok(out)
}

fn hopf_eq13(_: &Ctx, g: &CheckGroup) -> Result<Vec<CheckRecord>> {
    let (a, b) = (Symbol::A, Symbol::B);
    let mut out = Vec::new();
    for line in CoproductLine::ALL {
        let id = format!("hopf.eq13.{line}");
        if line.readings().is_empty() {
            let x = current_coproduct_residual(line, None, a, b)?;
            out.push(g.rec(id, Status::of(x.is_zero())).witness(q_witness(&x)));
        } else {
            let mut rs = Vec::new();
            for r in line.readings() {
                let x = current_coproduct_residual(line, Some(*r), a, b)?;
                rs.push(ReadingStatus {
                    reading: reading_label(line, *r),
                    status: Status::of(x.is_zero()),
                    witness: (!x.is_zero()).then(|| q_witness(&x)),
                });
            }
            out.push(g.rec(id, Status::AmbiguousReading).readings(rs));
        }
    }
    let x = e_line_with_h(a, b)?;
    out.push(
        g.rec("hopf.eq13.E.h-variant", Status::of(x.is_zero()))
            .note("diagnostic: ΔE = E⊗1 + H⊗E")
            .witness(q_witness(&x)),
    );
    Ok(out)
}

fn reading_label(line: CoproductLine, r: Reading) -> String {
    let sym = match line {
        CoproductLine::F => "k(u)",
        _ => "K(u)",
    };
    format!("{sym}={}", r.name())
}

fn hopf_pairing(_: &Ctx, g: &CheckGroup) -> Result<Vec<CheckRecord>> {
    let p = PairingConstant::new();
    let direct = build_r(Symbol::U).matrix.try_map(|x| x.substitute(Symbol::U, &(&sym::u() - &sym::v())))?;
    Ok(vec![g.rec(g.id, Status::of(p.matrix == direct)).witness("pairing constant differs from R(u−v)")])
}

fn eval_convention(ctx: &Ctx, g: &CheckGroup) -> Result<Vec<CheckRecord>> {
    let rep = &ctx.rep;
    let unique = rep.working_twists.len() == 1;
    let s11 = expand_qmat(rep.t.get(1, 1), Direction::AtInfinity, 1)?;
    let s12 = expand_qmat(rep.t.get(1, 2), Direction::AtInfinity, 1)?;
    let norm = s11.coeff(0)? == QMat::identity() && s12.coeff(0)?.is_zero();
    let cl = classical_limit(rep)?;
    let cl_ok = (1..=2).all(|i| (1..=2).all(|j| *cl.get(i, j) == if i == j { QMat::identity() } else { QMat::zero() }));
    let names: Vec<&str> = rep.working_twists.iter().map(|t| t.name()).collect();
    Ok(vec![
        g.rec("eval.twist-search", Status::of(unique))
            .param("twist", rep.twist.name())
            .param("working", names.join(","))
            .witness(format!("{} working candidates", names.len())),
        g.rec("eval.normalization", Status::of(norm)).witness("leading term of ρ(T(u)) is not the identity"),
        g.rec("eval.classical-limit", Status::of(cl_ok)).witness("ρ(t_ij) at ħ=0 differs from δ_ij"),
    ])
}

fn eval_modes(ctx: &Ctx, g: &CheckGroup) -> Result<Vec<CheckRecord>> {
    let w = ctx.cfg.eval_window as i64;
    let table = eval_mode_table(&ctx.rep, w)?;
    let ap = &sym::a() - &sym::half_hbar();
    let mut bad = None;
    for k in -w..=w {
        let p = ap.pow(k as i32)?;
        let expect = [
            (Family::E, QMat::unit(2, 1).scale(&p)),
            (Family::F, QMat::unit(1, 2).scale(&p)),
            (Family::H, QMat::identity().scale(&-&p)),
            (Family::K, QMat::diag(&[p.clone(), -&p])),
        ];
        for (f, m) in expect {
            if table.get(f, k)? != m && bad.is_none() {
                bad = Some(format!("{f}{k}"));
            }
        }
    }
    Ok(vec![g
        .rec("eval.modes.closed-form", Status::of(bad.is_none()))
        .param("window", w)
        .witness(bad.unwrap_or_default())])
}

fn eval_rules(ctx: &Ctx, g: &CheckGroup) -> Result<Vec<CheckRecord>> {
    let rules = ctx.rules()?;
    let mut bad = None;
    for r in rules.rules() {
        if !represent(&ctx.rep, &r.relation())?.is_zero() {
            bad = Some(format!("{}*{}", r.lhs.0, r.lhs.1));
            break;
        }
    }
    Ok(vec![g
        .rec(g.id, Status::of(bad.is_none()))
        .param("rules", rules.len())
        .witness(bad.unwrap_or_default())])
}

fn eval_random(ctx: &Ctx, g: &CheckGroup) -> Result<Vec<CheckRecord>> {
    const SAMPLES: usize = 24;
    let rules = ctx.rules()?;
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.cfg.seed);
    let w = ctx.w();
    let mut words = Vec::new();
    while words.len() < SAMPLES {
        let len = rng.gen_range(2..=3);
        let gens: Vec<GeneratorId> = (0..len)
            .map(|_| GeneratorId::new(rng.gen_range(1..=2), rng.gen_range(1..=2), rng.gen_range(-w - 1..=w)))
            .collect();
        let word = Word(gens);
        if word.weight() <= rules.wmax {
            words.push(word);
        }
    }
    // every rewrite applies a valid relation, so the image is preserved even
    // when the reduction leaves the rule window
    let mut bad = None;
    let mut partial = 0;
    for word in &words {
        let x = AlgElem::word(word.clone(), RatFunc::one());
        let (y, s) = normal_form_checked(&x, rules, DEFAULT_MAX_PASSES);
        if s == NormalStatus::Inconclusive {
            partial += 1;
        }
        if represent(&ctx.rep, &x)? != represent(&ctx.rep, &y)? && bad.is_none() {
            bad = Some(word.to_string());
        }
    }
    Ok(vec![g
        .rec(g.id, Status::of(bad.is_none()))
        .param("seed", ctx.cfg.seed)
        .param("samples", SAMPLES)
        .param("partially-reduced", partial)
        .witness(bad.unwrap_or_default())])
}

/// Conventions frozen into every report.
pub fn conventions(ctx: &Ctx) -> BTreeMap<String, String> {
    let mut m = BTreeMap::new();
    let mut put = |k: &str, v: String| {
        m.insert(k.to_string(), v);
    };
    put("basis-order", "11,12,21,22".into());
    put("index-parity", "p(1)=0, p(2)=1".into());
    put("generator-parity", "p(t[i,j;k]) = i+j mod 2".into());
    put("r-matrix", "R(u) = u·I + ħ·P (graded permutation)".into());
    put("expansion", "t⁺ at u=∞ with modes k≥0, t⁻ at u=0 with modes k<0".into());
    put("truncation", "order N keeps u^-1 .. u^-(N+1)".into());
    put(
        "word-order",
        "pairs ordered by (mode, slot 11<12<21<22); odd squares rewritten; t⁻t⁻ pairs eliminated lowest weight first".into(),
    );
    put("eval-twist", ctx.rep.twist.name().into());
    put("eval-point", "a (b for the second tensor factor)".into());
    if let Some(r) = &ctx.rules {
        put("rules", format!("{} rules for pair weight ≤ {}", r.len(), r.wmax));
    }
    m
}
