//! Generating matrices `T±(u)` over the free algebra and the RTT residuals.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::exactfield::{sym, RatFunc, Symbol};
use crate::gradedlinalg::{eta_twist, graded_permutation, index_parity, GradedMatrix, GradedSpace};
use crate::modealgebra::{
    generator_parity, normal_form, sign_exponent, AlgElem, Half, NormalStatus, RelationId, RuleSet, SignPair,
    DEFAULT_MAX_PASSES,
};
use crate::ring::{sign, Ring};
use crate::series::{Direction, TruncSeries};

pub type Series = TruncSeries<AlgElem>;
/// Series in `u` whose coefficients are series in `v`.
pub type Series2 = TruncSeries<Series>;

pub fn direction_of(h: Half) -> Direction {
    match h {
        Half::Plus => Direction::AtInfinity,
        Half::Minus => Direction::AtZero,
    }
}

/// `t^±_ij(var)` truncated at `order`.
pub fn generating_series(half: Half, i: usize, j: usize, var: Symbol, order: usize) -> Series {
    let delta = if i == j { AlgElem::one() } else { AlgElem::zero() };
    let n = order as i64;
    match half {
        Half::Plus => {
            let mut terms = vec![(0, delta)];
            for k in 0..=n {
                terms.push((-k - 1, AlgElem::t(i, j, k).scale(&-&sym::hbar())));
            }
            TruncSeries::truncated(Direction::AtInfinity, var, order, terms)
        }
        Half::Minus => {
            let mut terms = vec![(0, delta)];
            for m in 0..=n {
                terms.push((m, AlgElem::t(i, j, -m - 1).scale(&sym::hbar())));
            }
            TruncSeries::truncated(Direction::AtZero, var, order, terms)
        }
    }
}

#[derive(Clone, Debug)]
pub struct GenMatrix {
    pub half: Half,
    pub order: usize,
    pub entries: [[Series; 2]; 2],
}

impl GenMatrix {
    /// Entry with 1-based indices.
    pub fn entry(&self, i: usize, j: usize) -> &Series {
        &self.entries[i - 1][j - 1]
    }
}

pub fn build_generating_matrix(half: Half, order: usize) -> GenMatrix {
    build_generating_matrix_in(half, Symbol::U, order)
}

pub fn build_generating_matrix_in(half: Half, var: Symbol, order: usize) -> GenMatrix {
    let e = |i, j| generating_series(half, i, j, var, order);
    GenMatrix {
        half,
        order,
        entries: [[e(1, 1), e(1, 2)], [e(2, 1), e(2, 2)]],
    }
}

/// A `u`-series seen as a two-variable series.
pub fn lift_outer(s: &Series) -> Series2 {
    s.map(|c| TruncSeries::constant(c.clone()))
}

/// A `v`-series seen as a two-variable series.
pub fn lift_inner(s: &Series) -> Series2 {
    TruncSeries::constant(s.clone())
}

fn scalar2(c: &RatFunc) -> Series2 {
    Series2::from_scalar(c)
}

/// `u - v` with `u` expanded in `du` and `v` in `dv`.
pub fn u_minus_v(du: Direction, dv: Direction) -> Series2 {
    let minus_v = TruncSeries::exact(dv, Symbol::V, [(1, AlgElem::scalar(RatFunc::int(-1)))]);
    TruncSeries::exact(du, Symbol::U, [(1, Series::one()), (0, minus_v)])
}

/// `R(u - v)` as a 4×4 matrix of two-variable series.
pub fn r_matrix_series(du: Direction, dv: Direction) -> GradedMatrix<Series2> {
    let p = graded_permutation();
    let x = u_minus_v(du, dv);
    GradedMatrix::from_fn(GradedSpace::v_power(2), |r, c| {
        let mut e = scalar2(&(p.get(r, c) * &sym::hbar()));
        if r == c {
            e = e.plus(&x);
        }
        e
    })
}

fn check_pair(pair: SignPair) -> (Half, Half) {
    pair.halves()
}

/// `R(u−v) T₁(u) η T₂(v) η − η T₂(v) η T₁(u) R(u−v)`.
pub fn rtt_residual(pair: SignPair, order: usize) -> Result<GradedMatrix<Series2>> {
    let (hs, hr) = check_pair(pair);
    let tu = build_generating_matrix_in(hs, Symbol::U, order);
    let tv = build_generating_matrix_in(hr, Symbol::V, order);
    Ok(rtt_residual_series(&tu.entries, &tv.entries, direction_of(hs), direction_of(hr)))
}

/// `u - v` over any coefficient ring.
pub fn u_minus_v_in<R: Ring>(du: Direction, dv: Direction) -> TruncSeries<TruncSeries<R>> {
    let minus_v = TruncSeries::exact(dv, Symbol::V, [(1, R::from_scalar(&RatFunc::int(-1)))]);
    TruncSeries::exact(du, Symbol::U, [(1, TruncSeries::one()), (0, minus_v)])
}

/// The RTT residual for generating matrices with entries in any ring, `tu`
/// a series in `u` and `tv` a series in `v`.
pub fn rtt_residual_series<R: Ring>(
    tu: &[[TruncSeries<R>; 2]; 2],
    tv: &[[TruncSeries<R>; 2]; 2],
    du: Direction,
    dv: Direction,
) -> GradedMatrix<TruncSeries<TruncSeries<R>>> {
    let space = GradedSpace::v_power(2);
    let outer = |s: &TruncSeries<R>| s.map(|c| TruncSeries::constant(c.clone()));
    let t1 = GradedMatrix::from_fn(space.clone(), |r, c| {
        let (i, k, j, l) = (r / 2, r % 2, c / 2, c % 2);
        if k == l {
            outer(&tu[i][j])
        } else {
            TruncSeries::zero()
        }
    });
    let eta = eta_twist();
    let t2 = GradedMatrix::from_fn(space.clone(), |r, c| {
        let (i, k, j, l) = (r / 2, r % 2, c / 2, c % 2);
        if i == j {
            let s = eta.get(r, r) * eta.get(c, c);
            TruncSeries::constant(tv[k][l].clone()).scale(&s)
        } else {
            TruncSeries::zero()
        }
    });
    let p = graded_permutation();
    let x = u_minus_v_in::<R>(du, dv);
    let rm = GradedMatrix::from_fn(space, |r, c| {
        let mut e = TruncSeries::from_scalar(&(p.get(r, c) * &sym::hbar()));
        if r == c {
            e = e.plus(&x);
        }
        e
    });
    let lhs = rm.mul(&t1).mul(&t2);
    let rhs = t2.mul(&t1).mul(&rm);
    lhs.sub(&rhs)
}

/// Coefficient of `u^eu v^ev` in a two-variable series.
pub fn coefficient2(x: &Series2, eu: i64, ev: i64) -> Result<AlgElem> {
    let inner = x.coeff(eu)?;
    if inner.is_zero() {
        return Ok(AlgElem::zero());
    }
    inner.coeff(ev)
}

/// All stored `(eu, ev, coefficient)` triples.
pub fn coefficients2(x: &Series2) -> Vec<(i64, i64, AlgElem)> {
    let mut out = Vec::new();
    for (eu, inner) in x.coeffs() {
        for (ev, c) in inner.coeffs() {
            out.push((eu, ev, c.clone()));
        }
    }
    out
}

/// Outcome of reducing a family of coefficients.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ReductionSummary {
    pub checked: usize,
    /// Coefficients with a word whose pairs leave the rule window.
    pub skipped: usize,
    pub inconclusive: usize,
    /// First few nonzero normal forms.
    pub witnesses: Vec<String>,
    pub nonzero: usize,
    /// Coefficients that are not parity homogeneous with the expected parity.
    pub parity_violations: usize,
}

impl ReductionSummary {
    pub fn all_zero(&self) -> bool {
        self.nonzero == 0 && self.inconclusive == 0 && self.parity_violations == 0 && self.checked > 0
    }

    pub fn merge(&mut self, other: ReductionSummary) {
        self.checked += other.checked;
        self.skipped += other.skipped;
        self.inconclusive += other.inconclusive;
        self.nonzero += other.nonzero;
        self.parity_violations += other.parity_violations;
        for w in other.witnesses {
            if self.witnesses.len() < 3 {
                self.witnesses.push(w);
            }
        }
    }
}

fn within_window(x: &AlgElem, wmax: i64) -> bool {
    x.terms().all(|(w, _)| w.weight() <= wmax)
}

/// Reduces one coefficient and records the outcome under `label`.
pub fn reduce_into(
    summary: &mut ReductionSummary,
    label: &str,
    x: &AlgElem,
    rules: &RuleSet,
    parity: Option<u8>,
) {
    if !within_window(x, rules.wmax) {
        summary.skipped += 1;
        return;
    }
    summary.checked += 1;
    if let Some(p) = parity {
        if !x.is_zero() && Ring::parity(x) != Some(p) {
            summary.parity_violations += 1;
        }
    }
    let (y, status) = normal_form(x, rules, DEFAULT_MAX_PASSES);
    if status == NormalStatus::Inconclusive {
        summary.inconclusive += 1;
    } else if !y.is_zero() {
        summary.nonzero += 1;
        if summary.witnesses.len() < 3 {
            summary.witnesses.push(format!("{label}: {y}"));
        }
    }
}

/// Reduces every coefficient of every entry of the RTT residual.
pub fn check_rtt(pair: SignPair, order: usize, rules: &RuleSet) -> Result<ReductionSummary> {
    let res = rtt_residual(pair, order)?;
    let cells: Vec<(usize, usize)> = (0..4).flat_map(|r| (0..4).map(move |c| (r, c))).collect();
    let parts: Vec<ReductionSummary> = cells
        .par_iter()
        .map(|&(r, c)| {
            let mut s = ReductionSummary::default();
            let (i, k, j, l) = (r / 2 + 1, r % 2 + 1, c / 2 + 1, c % 2 + 1);
            let p = (generator_parity(i, j) + generator_parity(k, l)) % 2;
            for (eu, ev, x) in coefficients2(res.get(r, c)) {
                let label = format!("entry ({i}{k},{j}{l}) u^{eu} v^{ev}");
                reduce_into(&mut s, &label, &x, rules, Some(p));
            }
            s
        })
        .collect();
    let mut total = ReductionSummary::default();
    for p in parts {
        total.merge(p);
    }
    Ok(total)
}

fn super_bracket2(x: &Series2, px: u8, y: &Series2, py: u8) -> Series2 {
    let xy = x.times(y);
    let yx = y.times(x);
    if px * py == 1 {
        xy.plus(&yx)
    } else {
        xy.minus(&yx)
    }
}

/// Left side of the unified relation as a two-variable series.
pub fn eq6_series(i: usize, j: usize, k: usize, l: usize, pair: SignPair, order: usize) -> Result<Series2> {
    for x in [i, j, k, l] {
        if !(1..=2).contains(&x) {
            return Err(AlgebraError::IndexOutOfRange(format!("({i},{j},{k},{l})")));
        }
    }
    let (hs, hr) = pair.halves();
    let tu = |a, b| lift_outer(&generating_series(hs, a, b, Symbol::U, order));
    let tv = |a, b| lift_inner(&generating_series(hr, a, b, Symbol::V, order));
    let br = super_bracket2(&tu(i, j), generator_parity(i, j), &tv(k, l), generator_parity(k, l));
    let first = u_minus_v(direction_of(hs), direction_of(hr)).times(&br);
    let diff = tu(k, j).times(&tv(i, l)).minus(&tv(k, j).times(&tu(i, l)));
    let c = &sym::hbar() * &sign(sign_exponent(i, j, k, l) as i64);
    Ok(first.plus(&diff.scale(&c)))
}

/// The mode relation re-derived by expanding the generating functions.
pub fn relation_via_series(id: &RelationId) -> Result<AlgElem> {
    let order = (id.r.abs().max(id.s.abs()) + 2) as usize;
    let x = eq6_series(id.i, id.j, id.k, id.l, id.pair, order)?;
    let c = coefficient2(&x, -id.r - 1, -id.s - 1)?;
    let h2 = &sym::hbar() * &sym::hbar();
    Ok(c.scale(&h2.inv()?))
}

/// Normal form of the `(r,s)` coefficient of the unified relation.
#[allow(clippy::too_many_arguments)]
pub fn eq6_residual(
    i: usize,
    j: usize,
    k: usize,
    l: usize,
    pair: SignPair,
    r: i64,
    s: i64,
    rules: &RuleSet,
) -> Result<(AlgElem, NormalStatus)> {
    let id = RelationId { i, j, k, l, pair, r, s };
    let x = relation_via_series(&id)?;
    Ok(normal_form(&x, rules, DEFAULT_MAX_PASSES))
}

/// The three worked special cases, transcribed term by term.
pub fn eq7_line(line: usize, pair: SignPair, order: usize) -> Result<Series2> {
    let (hs, hr) = pair.halves();
    let tu = |a, b| lift_outer(&generating_series(hs, a, b, Symbol::U, order));
    let tv = |a, b| lift_inner(&generating_series(hr, a, b, Symbol::V, order));
    let uv = u_minus_v(direction_of(hs), direction_of(hr));
    let h = sym::hbar();
    let comm = |x: &Series2, y: &Series2| x.times(y).minus(&y.times(x));
    let anti = |x: &Series2, y: &Series2| x.times(y).plus(&y.times(x));
    let out = match line {
        1 => uv
            .times(&comm(&tu(1, 1), &tv(1, 2)))
            .plus(&tu(1, 1).times(&tv(1, 2)).minus(&tv(1, 1).times(&tu(1, 2))).scale(&h)),
        2 => uv
            .times(&comm(&tu(2, 2), &tv(1, 2)))
            .minus(&tu(1, 2).times(&tv(2, 2)).minus(&tv(1, 2).times(&tu(2, 2))).scale(&h)),
        3 => uv
            .times(&anti(&tu(1, 2), &tv(2, 1)))
            .minus(&tu(2, 2).times(&tv(1, 1)).minus(&tv(2, 2).times(&tu(1, 1))).scale(&h)),
        _ => return Err(AlgebraError::UnknownRelation(format!("special case {line}"))),
    };
    Ok(out)
}

/// Index tuple of each special case.
pub fn eq7_indices(line: usize) -> Option<(usize, usize, usize, usize)> {
    match line {
        1 => Some((1, 1, 1, 2)),
        2 => Some((2, 2, 1, 2)),
        3 => Some((1, 2, 2, 1)),
        _ => None,
    }
}

/// Reduces every coefficient of a two-variable series.
pub fn check_series2(x: &Series2, rules: &RuleSet, label: &str) -> ReductionSummary {
    let mut s = ReductionSummary::default();
    for (eu, ev, c) in coefficients2(x) {
        reduce_into(&mut s, &format!("{label} u^{eu} v^{ev}"), &c, rules, None);
    }
    s
}

/// Reduces the unified relation for every index tuple.
pub fn check_eq6_all(pair: SignPair, order: usize, rules: &RuleSet) -> Result<ReductionSummary> {
    let tuples: Vec<[usize; 4]> = (0..16)
        .map(|n| [(n >> 3) & 1, (n >> 2) & 1, (n >> 1) & 1, n & 1].map(|b| b + 1))
        .collect();
    let parts: Result<Vec<ReductionSummary>> = tuples
        .par_iter()
        .map(|t| {
            let x = eq6_series(t[0], t[1], t[2], t[3], pair, order)?;
            Ok(check_series2(&x, rules, &format!("{}{}{}{}", t[0], t[1], t[2], t[3])))
        })
        .collect();
    let mut total = ReductionSummary::default();
    for p in parts? {
        total.merge(p);
    }
    Ok(total)
}

pub fn parity_of_index(i: usize) -> u8 {
    index_parity(i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modealgebra::enumerate_relations;
    use std::sync::OnceLock;

    fn rules() -> &'static RuleSet {
        static R: OnceLock<RuleSet> = OnceLock::new();
        R.get_or_init(|| RuleSet::for_window(1).unwrap())
    }

    #[test]
    fn generating_matrix_entries() {
        let tp = build_generating_matrix(Half::Plus, 3);
        assert_eq!(tp.entry(1, 2).extract_mode(0).unwrap(), AlgElem::t(1, 2, 0).scale(&-&sym::hbar()));
        let tm = build_generating_matrix(Half::Minus, 3);
        assert_eq!(tm.entry(1, 1).coeff(0).unwrap(), AlgElem::one().plus(&AlgElem::t(1, 1, -1).scale(&sym::hbar())));
        assert_eq!(tm.entry(2, 1).coeff(0).unwrap(), AlgElem::t(2, 1, -1).scale(&sym::hbar()));
        assert_eq!(tm.entry(2, 1).coeff(1).unwrap(), AlgElem::t(2, 1, -2).scale(&sym::hbar()));
    }

    #[test]
    fn series_route_matches_oracle() {
        for (id, x) in enumerate_relations(3) {
            assert_eq!(relation_via_series(&id).unwrap(), x, "{id}");
        }
    }

    #[test]
    fn rtt_reduces_to_zero() {
        for pair in SignPair::ALL {
            let s = check_rtt(pair, 4, rules()).unwrap();
            assert!(s.all_zero(), "{pair}: {s:?}");
        }
    }

    #[test]
    fn dropping_corrections_breaks_rtt() {
        let bad = rules().without_hbar_corrections().unwrap();
        let s = check_rtt(SignPair::PlusPlus, 4, &bad).unwrap();
        assert!(s.nonzero > 0);
    }

    #[test]
    fn special_cases_match_unified_relation() {
        for line in 1..=3 {
            let (i, j, k, l) = eq7_indices(line).unwrap();
            for pair in SignPair::ALL {
                let a = eq7_line(line, pair, 4).unwrap();
                let b = eq6_series(i, j, k, l, pair, 4).unwrap();
                assert_eq!(a, b, "line {line} {pair}");
                assert!(check_series2(&a, rules(), "eq7").all_zero());
            }
        }
    }

    #[test]
    fn diagonal_case_short_words() {
        for pair in SignPair::ALL {
            let (r, s) = match pair {
                SignPair::PlusPlus => (0, 1),
                SignPair::MinusMinus => (-1, -2),
                SignPair::PlusMinus => (0, -1),
            };
            let (x, st) = eq6_residual(1, 1, 1, 1, pair, r, s, rules()).unwrap();
            assert_eq!(st, NormalStatus::Normal);
            assert!(x.is_zero());
        }
        let x = relation_via_series(&RelationId { i: 1, j: 1, k: 1, l: 1, pair: SignPair::PlusPlus, r: 1, s: 2 }).unwrap();
        assert!(x.max_len() <= 2);
    }
}
