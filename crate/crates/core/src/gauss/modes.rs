use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{build_currents, gauss_decompose, CurrentSeries, Family, HalfCurrents};
use crate::error::{AlgebraError, Result};
use crate::evalrep::{expand_qmat, half_direction, EvalRep};
use crate::exactfield::{sym, RatFunc};
use crate::gradedlinalg::QMat;
use crate::modealgebra::{normal_form, AlgElem, Half, NormalStatus, RuleSet, DEFAULT_MAX_PASSES};
use crate::ring::Ring;
use crate::rtt::build_generating_matrix;
use crate::series::TruncSeries;

/// A single extracted mode.
#[derive(Clone, Debug, PartialEq)]
pub struct CurrentMode<R> {
    pub family: Family,
    pub index: i64,
    pub value: R,
}

/// Mode `index` of a current with the normalization of the mode expansion removed.
///
/// `e_k, f_k` come from `E⁺` for `k ≥ 0` and from `−E⁻` for `k < 0`;
/// `h_k, k_k` are the coefficients of `H⁺` divided by `ħ`, or of `1 − H⁻`
/// divided by `ħ`.
pub fn current_mode<R: Ring>(cs: &CurrentSeries<TruncSeries<R>>, family: Family, index: i64) -> Result<CurrentMode<R>> {
    let half = Half::of_mode(index);
    let series = cs.half(half)?.get(family);
    let c = series.extract_mode(index)?;
    let value = match (family, half) {
        (Family::E | Family::F, Half::Plus) => c,
        (Family::E | Family::F, Half::Minus) => c.negated(),
        (Family::H | Family::K, Half::Plus) => c.scale(&sym::hbar().inv()?),
        (Family::H | Family::K, Half::Minus) => {
            let unit = if index == -1 { R::one() } else { R::zero() };
            unit.minus(&c).scale(&sym::hbar().inv()?)
        }
    };
    Ok(CurrentMode { family, index, value })
}

/// Currents of `V(a)`: both halves are the same rational operators.
pub fn eval_currents(rep: &EvalRep) -> Result<CurrentSeries<QMat<2>>> {
    let g = gauss_decompose(&rep.t.entries)?;
    build_currents(&g, Some(&g))
}

/// Expands rational currents, `+` at infinity and `−` at zero.
pub fn expand_currents<const N: usize>(
    cs: &CurrentSeries<QMat<N>>,
    order: usize,
) -> Result<CurrentSeries<TruncSeries<QMat<N>>>> {
    let ex = |c: &HalfCurrents<QMat<N>>, h: Half| -> Result<HalfCurrents<TruncSeries<QMat<N>>>> {
        let d = half_direction(h);
        Ok(HalfCurrents {
            e: expand_qmat(&c.e, d, order)?,
            f: expand_qmat(&c.f, d, order)?,
            h: expand_qmat(&c.h, d, order)?,
            k: expand_qmat(&c.k, d, order)?,
        })
    };
    Ok(CurrentSeries {
        plus: ex(&cs.plus, Half::Plus)?,
        minus: cs.minus.as_ref().map(|m| ex(m, Half::Minus)).transpose()?,
    })
}

/// Symbolic currents of the `+` half, truncated at `order`.
pub fn symbolic_currents(order: usize) -> Result<CurrentSeries<TruncSeries<AlgElem>>> {
    let t = build_generating_matrix(Half::Plus, order);
    let g = gauss_decompose(&t.entries)?;
    build_currents(&g, None)
}

/// The seven relation families of the mode realization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Eq15Family {
    Commuting,
    HAction,
    K0Action,
    KeRecursion,
    KfRecursion,
    EfAnticommutator,
    EeFf,
}

impl Eq15Family {
    pub const ALL: [Eq15Family; 7] = [
        Eq15Family::Commuting,
        Eq15Family::HAction,
        Eq15Family::K0Action,
        Eq15Family::KeRecursion,
        Eq15Family::KfRecursion,
        Eq15Family::EfAnticommutator,
        Eq15Family::EeFf,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Eq15Family::Commuting => "hk-commute",
            Eq15Family::HAction => "h-action",
            Eq15Family::K0Action => "k0-action",
            Eq15Family::KeRecursion => "ke-recursion",
            Eq15Family::KfRecursion => "kf-recursion",
            Eq15Family::EfAnticommutator => "ef",
            Eq15Family::EeFf => "ee-ff",
        }
    }

    /// Whether the relation only depends on `l`.
    pub fn single_index(self) -> bool {
        self == Eq15Family::K0Action
    }
}

impl fmt::Display for Eq15Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Eq15Family {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Self> {
        Eq15Family::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| AlgebraError::UnknownRelation(s.to_string()))
    }
}

fn comm<R: Ring>(x: &R, y: &R) -> R {
    x.times(y).minus(&y.times(x))
}

fn anti<R: Ring>(x: &R, y: &R) -> R {
    x.times(y).plus(&y.times(x))
}

/// Left-hand sides (moved to one side) of a family at `(k, l)`.
pub fn eq15_terms<R: Ring>(
    family: Eq15Family,
    k: i64,
    l: i64,
    m: &impl Fn(Family, i64) -> Result<R>,
) -> Result<Vec<(String, R)>> {
    use Family::*;
    let h = sym::hbar();
    let two = RatFunc::int(2);
    let out = match family {
        Eq15Family::Commuting => vec![
            (format!("[h{k},h{l}]"), comm(&m(H, k)?, &m(H, l)?)),
            (format!("[k{k},k{l}]"), comm(&m(K, k)?, &m(K, l)?)),
            (format!("[h{k},k{l}]"), comm(&m(H, k)?, &m(K, l)?)),
        ],
        Eq15Family::HAction => vec![
            (format!("[h{k},e{l}]"), comm(&m(H, k)?, &m(E, l)?)),
            (format!("[h{k},f{l}]"), comm(&m(H, k)?, &m(F, l)?)),
        ],
        Eq15Family::K0Action => {
            let k0 = m(K, 0)?;
            let (e, f) = (m(E, l)?, m(F, l)?);
            vec![
                (format!("[k0,e{l}]+2e{l}"), comm(&k0, &e).plus(&e.scale(&two))),
                (format!("[k0,f{l}]-2f{l}"), comm(&k0, &f).minus(&f.scale(&two))),
            ]
        }
        Eq15Family::KeRecursion => {
            let (kk, e) = (m(K, k)?, m(E, l)?);
            let x = comm(&m(K, k + 1)?, &e)
                .minus(&comm(&kk, &m(E, l + 1)?))
                .plus(&anti(&kk, &e).scale(&h));
            vec![(format!("ke({k},{l})"), x)]
        }
        Eq15Family::KfRecursion => {
            let (kk, f) = (m(K, k)?, m(F, l)?);
            let x = comm(&m(K, k + 1)?, &f)
                .minus(&comm(&kk, &m(F, l + 1)?))
                .minus(&anti(&kk, &f).scale(&h));
            vec![(format!("kf({k},{l})"), x)]
        }
        Eq15Family::EfAnticommutator => vec![(
            format!("{{e{k},f{l}}}+2h{}", k + l),
            anti(&m(E, k)?, &m(F, l)?).plus(&m(H, k + l)?.scale(&two)),
        )],
        Eq15Family::EeFf => vec![
            (format!("{{e{k},e{l}}}"), anti(&m(E, k)?, &m(E, l)?)),
            (format!("{{f{k},f{l}}}"), anti(&m(F, k)?, &m(F, l)?)),
        ],
    };
    Ok(out)
}

/// `{e_k, f_l} + h_{k+l}`: the anticommutator with unit normalization.
pub fn ef_normalized<R: Ring>(k: i64, l: i64, m: &impl Fn(Family, i64) -> Result<R>) -> Result<R> {
    Ok(anti(&m(Family::E, k)?, &m(Family::F, l)?).plus(&m(Family::H, k + l)?))
}

/// Mode lookup with memoization over an expanded current series.
pub struct ModeTable<R> {
    cache: std::collections::HashMap<(Family, i64), R>,
}

impl<R: Ring> ModeTable<R> {
    /// Extracts all modes of every family for `indices`.
    pub fn build(cs: &CurrentSeries<TruncSeries<R>>, indices: impl IntoIterator<Item = i64> + Clone) -> Result<Self> {
        let mut cache = std::collections::HashMap::new();
        for fam in [Family::E, Family::F, Family::H, Family::K] {
            for i in indices.clone() {
                cache.insert((fam, i), current_mode(cs, fam, i)?.value);
            }
        }
        Ok(ModeTable { cache })
    }

    pub fn get(&self, fam: Family, i: i64) -> Result<R> {
        self.cache
            .get(&(fam, i))
            .cloned()
            .ok_or_else(|| AlgebraError::WindowExceeded(format!("{fam}{i}")))
    }

    pub fn lookup(&self) -> impl Fn(Family, i64) -> Result<R> + '_ {
        move |f, i| self.get(f, i)
    }
}

/// Evaluation-layer mode table for `|k| ≤ window` (with the extra room the
/// recursions and `h_{k+l}` need).
pub fn eval_mode_table(rep: &EvalRep, window: i64) -> Result<ModeTable<QMat<2>>> {
    let cs = eval_currents(rep)?;
    let reach = 2 * window + 2;
    let ex = expand_currents(&cs, reach as usize + 1)?;
    ModeTable::build(&ex, -reach..=reach)
}

/// Symbolic `+` half mode table for `0 ≤ k ≤ 2·window + 1`.
pub fn symbolic_mode_table(window: i64, order: usize) -> Result<ModeTable<AlgElem>> {
    let cs = symbolic_currents(order)?;
    let reach = (2 * window).max(window + 1);
    if reach > order as i64 {
        return Err(AlgebraError::WindowExceeded(format!("modes up to {reach} need order {reach}")));
    }
    ModeTable::build(&cs, 0..=reach)
}

/// Index pairs of a family inside a window.
pub fn eq15_index_pairs(family: Eq15Family, lo: i64, hi: i64) -> Vec<(i64, i64)> {
    if family.single_index() {
        return (lo..=hi).map(|l| (0, l)).collect();
    }
    let mut v = Vec::new();
    for k in lo..=hi {
        for l in lo..=hi {
            v.push((k, l));
        }
    }
    v
}

/// One evaluated residual of a mode relation.
#[derive(Clone, Debug)]
pub struct Eq15Residual<R> {
    pub family: Eq15Family,
    pub k: i64,
    pub l: i64,
    pub label: String,
    pub value: R,
}

/// Every family on `V(a)` for `|k|, |l| ≤ window`.
pub fn eq15_eval(rep: &EvalRep, window: i64) -> Result<Vec<Eq15Residual<QMat<2>>>> {
    let table = eval_mode_table(rep, window)?;
    let mut out = Vec::new();
    for family in Eq15Family::ALL {
        for (k, l) in eq15_index_pairs(family, -window, window) {
            for (label, value) in eq15_terms(family, k, l, &table.lookup())? {
                out.push(Eq15Residual { family, k, l, label, value });
            }
        }
    }
    Ok(out)
}

/// Every family on the `+` half for `0 ≤ k, l ≤ window`, reduced to normal form.
pub fn eq15_symbolic(
    window: i64,
    order: usize,
    rules: &RuleSet,
) -> Result<Vec<(Eq15Residual<AlgElem>, NormalStatus)>> {
    use rayon::prelude::*;
    let table = symbolic_mode_table(window, order)?;
    let mut raw = Vec::new();
    for family in Eq15Family::ALL {
        for (k, l) in eq15_index_pairs(family, 0, window) {
            for (label, value) in eq15_terms(family, k, l, &table.lookup())? {
                raw.push(Eq15Residual { family, k, l, label, value });
            }
        }
    }
    Ok(raw
        .into_par_iter()
        .map(|mut r| {
            let (nf, st) = normal_form(&r.value, rules, DEFAULT_MAX_PASSES);
            r.value = nf;
            (r, st)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evalrep::make_eval_rep;
    use crate::exactfield::Symbol;

    #[test]
    fn eval_modes_closed_form() {
        let rep = make_eval_rep(Symbol::A).unwrap();
        let t = eval_mode_table(&rep, 2).unwrap();
        let ap = &sym::a() - &sym::half_hbar();
        for k in -3..=3 {
            let p = ap.pow(k as i32).unwrap();
            assert_eq!(t.get(Family::E, k).unwrap(), QMat::unit(2, 1).scale(&p));
            assert_eq!(t.get(Family::F, k).unwrap(), QMat::unit(1, 2).scale(&p));
            assert_eq!(t.get(Family::H, k).unwrap(), QMat::identity().scale(&-&p));
            assert_eq!(t.get(Family::K, k).unwrap(), QMat::diag(&[p.clone(), -&p]));
        }
    }

    #[test]
    fn k0_action_eval() {
        let rep = make_eval_rep(Symbol::A).unwrap();
        let t = eval_mode_table(&rep, 2).unwrap();
        for l in -2..=2 {
            for (_, x) in eq15_terms(Eq15Family::K0Action, 0, l, &t.lookup()).unwrap() {
                assert!(x.is_zero());
            }
        }
    }

    #[test]
    fn ef_factor_differs() {
        let rep = make_eval_rep(Symbol::A).unwrap();
        let t = eval_mode_table(&rep, 1).unwrap();
        let x = eq15_terms(Eq15Family::EfAnticommutator, 0, 1, &t.lookup()).unwrap();
        assert!(!x[0].1.is_zero());
        assert!(ef_normalized(0, 1, &t.lookup()).unwrap().is_zero());
    }

    #[test]
    fn eq15_symbolic_window1() {
        let rules = RuleSet::for_window(1).unwrap();
        for (r, st) in eq15_symbolic(1, 4, &rules).unwrap() {
            assert_eq!(st, NormalStatus::Normal, "{}", r.label);
            if r.family != Eq15Family::EfAnticommutator {
                assert!(r.value.is_zero(), "{} = {}", r.label, r.value);
            }
        }
    }

    #[test]
    fn symbolic_low_modes() {
        let t = symbolic_mode_table(1, 4).unwrap();
        assert_eq!(t.get(Family::E, 0).unwrap(), AlgElem::t(1, 2, 0).negated());
        assert_eq!(t.get(Family::F, 0).unwrap(), AlgElem::t(2, 1, 0).negated());
        assert_eq!(t.get(Family::K, 0).unwrap(), AlgElem::t(1, 1, 0).plus(&AlgElem::t(2, 2, 0)).negated());
    }
}
