use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::modes::{eval_currents, eval_mode_table, expand_currents, Eq15Family, ModeTable};
use super::{Family, HalfCurrents};
use crate::error::{AlgebraError, Result};
use crate::evalrep::{expand_qmat, half_direction, EvalRep};
use crate::exactfield::{sym, RatFunc, Symbol};
use crate::gradedlinalg::QMat;
use crate::modealgebra::Half;
use crate::ring::Ring;

/// Relations between currents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum DrinfeldRelation {
    HH,
    HK,
    KK,
    HE,
    HF,
    EK,
    FK,
    EE,
    FF,
    EF,
}

impl DrinfeldRelation {
    pub const ALL: [DrinfeldRelation; 10] = [
        DrinfeldRelation::HH,
        DrinfeldRelation::HK,
        DrinfeldRelation::KK,
        DrinfeldRelation::HE,
        DrinfeldRelation::HF,
        DrinfeldRelation::EK,
        DrinfeldRelation::FK,
        DrinfeldRelation::EE,
        DrinfeldRelation::FF,
        DrinfeldRelation::EF,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DrinfeldRelation::HH => "HH",
            DrinfeldRelation::HK => "HK",
            DrinfeldRelation::KK => "KK",
            DrinfeldRelation::HE => "HE",
            DrinfeldRelation::HF => "HF",
            DrinfeldRelation::EK => "EK",
            DrinfeldRelation::FK => "FK",
            DrinfeldRelation::EE => "EE",
            DrinfeldRelation::FF => "FF",
            DrinfeldRelation::EF => "EF",
        }
    }

    /// Mode families that carry the relation at mode level.
    pub fn mode_families(self) -> &'static [Eq15Family] {
        use DrinfeldRelation::*;
        match self {
            HH | HK | KK => &[Eq15Family::Commuting],
            HE | HF => &[Eq15Family::HAction],
            EK => &[Eq15Family::K0Action, Eq15Family::KeRecursion],
            FK => &[Eq15Family::K0Action, Eq15Family::KfRecursion],
            EE | FF => &[Eq15Family::EeFf],
            EF => &[Eq15Family::EfAnticommutator],
        }
    }
}

impl fmt::Display for DrinfeldRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DrinfeldRelation {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Self> {
        DrinfeldRelation::ALL
            .into_iter()
            .find(|x| x.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| AlgebraError::UnknownRelation(s.to_string()))
    }
}

fn comm(x: &QMat<2>, y: &QMat<2>) -> QMat<2> {
    x.times(y).minus(&y.times(x))
}

fn anti(x: &QMat<2>, y: &QMat<2>) -> QMat<2> {
    x.times(y).plus(&y.times(x))
}

/// Residual of one relation with currents `cu` at `u` and `cv` at `v`.
///
/// For `EF` this is the bare anticommutator `{E(u), F(v)}`; its right-hand
/// side is supported on `u = v` and is only compared at mode level.
pub fn relation_residual(
    rel: DrinfeldRelation,
    cu: &HalfCurrents<QMat<2>>,
    cv: &HalfCurrents<QMat<2>>,
    hbar: &RatFunc,
    u: &RatFunc,
    v: &RatFunc,
) -> QMat<2> {
    use DrinfeldRelation::*;
    let d = u - v;
    match rel {
        HH => comm(&cu.h, &cv.h),
        HK => comm(&cu.h, &cv.k),
        KK => comm(&cu.k, &cv.k),
        HE => comm(&cu.h, &cv.e),
        HF => comm(&cu.h, &cv.f),
        EK => cv.e.times(&cu.k).scale(&(&d - hbar)).minus(&cu.k.times(&cv.e).scale(&(&d + hbar))),
        FK => cv.f.times(&cu.k).scale(&(&d + hbar)).minus(&cu.k.times(&cv.f).scale(&(&d - hbar))),
        EE => anti(&cu.e, &cv.e),
        FF => anti(&cu.f, &cv.f),
        EF => anti(&cu.e, &cv.f),
    }
}

fn currents_at(c: &HalfCurrents<QMat<2>>, x: &RatFunc) -> Result<HalfCurrents<QMat<2>>> {
    Ok(HalfCurrents {
        e: c.e.substitute(Symbol::U, x)?,
        f: c.f.substitute(Symbol::U, x)?,
        h: c.h.substitute(Symbol::U, x)?,
        k: c.k.substitute(Symbol::U, x)?,
    })
}

/// Sign-resolved residual on `V(a)`: the `σ` half at `u`, the `ρ` half at `v`.
pub fn drinfeld_residual_eval(rel: DrinfeldRelation, sigma: Half, rho: Half, rep: &EvalRep) -> Result<QMat<2>> {
    let cs = eval_currents(rep)?;
    let cu = cs.half(sigma)?.clone();
    let cv = currents_at(cs.half(rho)?, &sym::v())?;
    Ok(relation_residual(rel, &cu, &cv, &sym::hbar(), &sym::u(), &sym::v()))
}

/// The same residual after `ħ, u, v, a → λħ, λu, λv, λa`.
pub fn drinfeld_residual_scaled(rel: DrinfeldRelation, sigma: Half, rho: Half, rep: &EvalRep) -> Result<QMat<2>> {
    let cs = eval_currents(rep)?;
    let l = sym::lambda();
    let subs = [
        (Symbol::Hbar, &l * &sym::hbar()),
        (Symbol::U, &l * &sym::u()),
        (rep.point, &l * &RatFunc::var(rep.point)),
    ];
    let cu = scale_currents(cs.half(sigma)?, &subs)?;
    let cv = currents_at(&scale_currents(cs.half(rho)?, &subs)?, &sym::v())?;
    // `cv` was scaled in `u` before renaming, so its argument is already `λv`
    Ok(relation_residual(
        rel,
        &cu,
        &cv,
        &(&l * &sym::hbar()),
        &(&l * &sym::u()),
        &(&l * &sym::v()),
    ))
}

fn scale_currents(c: &HalfCurrents<QMat<2>>, subs: &[(Symbol, RatFunc)]) -> Result<HalfCurrents<QMat<2>>> {
    Ok(HalfCurrents {
        e: c.e.substitute_many(subs)?,
        f: c.f.substitute_many(subs)?,
        h: c.h.substitute_many(subs)?,
        k: c.k.substitute_many(subs)?,
    })
}

/// Multiplies a rational matrix by the product of its distinct denominators.
pub fn clear_denominators(m: &QMat<2>) -> QMat<2> {
    let mut dens: Vec<RatFunc> = Vec::new();
    for x in m.entries() {
        let d = RatFunc::from_poly(x.den().clone());
        if !d.is_one() && !dens.contains(&d) {
            dens.push(d);
        }
    }
    let f = dens.iter().fold(RatFunc::one(), |acc, d| &acc * d);
    m.scale(&f)
}

/// `{e_k, f_l}` read off the double expansion of `{E^σ(u), F^ρ(v)}` minus
/// the same anticommutator built from extracted modes, for every `(k, l)`
/// in the window whose halves match `(σ, ρ)`.
pub fn ef_mode_series_consistency(rep: &EvalRep, window: i64) -> Result<Vec<((i64, i64), QMat<2>)>> {
    let table = eval_mode_table(rep, window)?;
    let mut out = Vec::new();
    for sigma in [Half::Plus, Half::Minus] {
        for rho in [Half::Plus, Half::Minus] {
            let x = drinfeld_residual_eval(DrinfeldRelation::EF, sigma, rho, rep)?;
            let order = window as usize + 1;
            let su = expand_qmat(&x, half_direction(sigma), order)?;
            let ks: Vec<i64> = (-window..=window).filter(|k| Half::of_mode(*k) == sigma).collect();
            let ls: Vec<i64> = (-window..=window).filter(|l| Half::of_mode(*l) == rho).collect();
            let sign = |h: Half| if h == Half::Plus { RatFunc::one() } else { RatFunc::int(-1) };
            let s = &sign(sigma) * &sign(rho);
            for &k in &ks {
                let cu = su.extract_mode(k)?.substitute(Symbol::V, &sym::u())?;
                let sv = expand_qmat(&cu, half_direction(rho), order)?;
                for &l in &ls {
                    let from_series = sv.extract_mode(l)?.scale(&s);
                    let from_modes = anti(&table.get(Family::E, k)?, &table.get(Family::F, l)?);
                    out.push(((k, l), from_series.minus(&from_modes)));
                }
            }
        }
    }
    Ok(out)
}

/// Agreement between symbolic `+` modes pushed through `V(a)` and the
/// eval-layer modes; returns the mismatching `(family, index)`.
pub fn eval_symbolic_agreement(
    rep: &EvalRep,
    symbolic: &ModeTable<crate::modealgebra::AlgElem>,
    eval: &ModeTable<QMat<2>>,
    indices: impl IntoIterator<Item = i64> + Clone,
) -> Result<Vec<(Family, i64)>> {
    let mut bad = Vec::new();
    for fam in [Family::E, Family::F, Family::H, Family::K] {
        for i in indices.clone() {
            let img = crate::evalrep::represent(rep, &symbolic.get(fam, i)?)?;
            if img != eval.get(fam, i)? {
                bad.push((fam, i));
            }
        }
    }
    Ok(bad)
}

/// Expanded eval currents, exposed for diagnostics.
pub fn eval_current_series(rep: &EvalRep, order: usize) -> Result<super::CurrentSeries<crate::series::TruncSeries<QMat<2>>>> {
    expand_currents(&eval_currents(rep)?, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evalrep::make_eval_rep;

    fn rep() -> EvalRep {
        make_eval_rep(Symbol::A).unwrap()
    }

    #[test]
    fn commuting_and_odd_relations_vanish() {
        let rep = rep();
        use DrinfeldRelation::*;
        for rel in [HH, HK, KK, HE, HF, EE, FF] {
            for s in [Half::Plus, Half::Minus] {
                for r in [Half::Plus, Half::Minus] {
                    assert!(drinfeld_residual_eval(rel, s, r, &rep).unwrap().is_zero(), "{rel}");
                    assert!(drinfeld_residual_scaled(rel, s, r, &rep).unwrap().is_zero(), "{rel}");
                }
            }
        }
    }

    #[test]
    fn ek_residual_is_nonzero() {
        let x = drinfeld_residual_eval(DrinfeldRelation::EK, Half::Plus, Half::Plus, &rep()).unwrap();
        assert!(!x.is_zero());
        let c = clear_denominators(&x);
        assert!(c.entries().iter().all(|e| e.is_polynomial()));
    }

    #[test]
    fn ef_routes_agree() {
        let bad: Vec<_> = ef_mode_series_consistency(&rep(), 2)
            .unwrap()
            .into_iter()
            .filter(|(_, x)| !x.is_zero())
            .collect();
        assert!(bad.is_empty(), "{:?}", bad.iter().map(|(kl, _)| *kl).collect::<Vec<_>>());
    }

    #[test]
    fn parse_names() {
        assert_eq!("ek".parse::<DrinfeldRelation>().unwrap(), DrinfeldRelation::EK);
        assert!("XY".parse::<DrinfeldRelation>().is_err());
    }
}
