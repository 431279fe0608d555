//! Gauss decomposition of `T±(u)`, the Drinfeld currents and their modes.

use std::fmt;

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::exactfield::{sym, RatFunc, Symbol};
use crate::gradedlinalg::QMat;
use crate::modealgebra::{AlgElem, Half};
use crate::ring::Ring;
use crate::series::TruncSeries;

mod drinfeld;
mod modes;

pub use drinfeld::*;
pub use modes::*;

/// Entry type of a generating matrix that supports argument shifts and inverses.
pub trait Spectral: Ring {
    /// `f(u + c)`.
    fn shifted(&self, c: &RatFunc) -> Result<Self>;
    /// Two-sided inverse.
    fn inverse_of(&self) -> Result<Self>;
}

impl Spectral for TruncSeries<AlgElem> {
    fn shifted(&self, c: &RatFunc) -> Result<Self> {
        self.shift(c)
    }
    fn inverse_of(&self) -> Result<Self> {
        self.invert()
    }
}

impl<const N: usize> Spectral for QMat<N> {
    fn shifted(&self, c: &RatFunc) -> Result<Self> {
        self.substitute(Symbol::U, &(&sym::u() + c))
    }
    fn inverse_of(&self) -> Result<Self> {
        self.inverse()
    }
}

pub type Mat2<S> = [[S; 2]; 2];

/// Factors `E, F, k₁, k₂` of one half.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussFactors<S> {
    pub e: S,
    pub f: S,
    pub k1: S,
    pub k2: S,
}

fn half_hbar() -> RatFunc {
    sym::half_hbar()
}

/// `E = ħ⁻¹ t₁₁(u+ħ/2)⁻¹ t₁₂(u+ħ/2)`, `F = ħ⁻¹ t₂₁(u+ħ/2) t₁₁(u+ħ/2)⁻¹`,
/// `k₁ = t₁₁`, `k₂ = t₂₂ − t₂₁ t₁₁⁻¹ t₁₂`.
pub fn gauss_decompose<S: Spectral>(t: &Mat2<S>) -> Result<GaussFactors<S>> {
    let hi = sym::hbar().inv()?;
    let c = half_hbar();
    let t11s = t[0][0].shifted(&c)?;
    let inv11s = t11s.inverse_of()?;
    let e = inv11s.times(&t[0][1].shifted(&c)?).scale(&hi);
    let f = t[1][0].shifted(&c)?.times(&inv11s).scale(&hi);
    let inv11 = t[0][0].inverse_of()?;
    let k2 = t[1][1].minus(&t[1][0].times(&inv11).times(&t[0][1]));
    Ok(GaussFactors {
        e,
        f,
        k1: t[0][0].clone(),
        k2,
    })
}

/// The product of the lower, diagonal and upper factors.
pub fn reconstruct<S: Spectral>(g: &GaussFactors<S>) -> Result<Mat2<S>> {
    let h = sym::hbar();
    let c = -&half_hbar();
    let em = g.e.shifted(&c)?;
    let fm = g.f.shifted(&c)?;
    let t12 = g.k1.times(&em).scale(&h);
    let t21 = fm.times(&g.k1).scale(&h);
    let t22 = g.k2.plus(&fm.times(&g.k1).times(&em).scale(&(&h * &h)));
    Ok([[g.k1.clone(), t12], [t21, t22]])
}

/// Currents `E±, F±, H±, K±` of one half.
#[derive(Clone, Debug, PartialEq)]
pub struct HalfCurrents<S> {
    pub e: S,
    pub f: S,
    pub h: S,
    pub k: S,
}

/// `H = k₂(u+ħ/2) k₁(u+ħ/2)⁻¹`, `K = k₂(u+ħ/2) k₁(u−ħ/2)`.
pub fn half_currents<S: Spectral>(g: &GaussFactors<S>) -> Result<HalfCurrents<S>> {
    let c = half_hbar();
    let k2p = g.k2.shifted(&c)?;
    let k1p = g.k1.shifted(&c)?;
    let k1m = g.k1.shifted(&-&c)?;
    Ok(HalfCurrents {
        e: g.e.clone(),
        f: g.f.clone(),
        h: k2p.times(&k1p.inverse_of()?),
        k: k2p.times(&k1m),
    })
}

/// Currents of both halves; the `−` half may be unavailable.
#[derive(Clone, Debug, PartialEq)]
pub struct CurrentSeries<S> {
    pub plus: HalfCurrents<S>,
    pub minus: Option<HalfCurrents<S>>,
}

impl<S> CurrentSeries<S> {
    pub fn half(&self, h: Half) -> Result<&HalfCurrents<S>> {
        match h {
            Half::Plus => Ok(&self.plus),
            Half::Minus => self
                .minus
                .as_ref()
                .ok_or_else(|| AlgebraError::Unsupported("currents of the − half are not available".into())),
        }
    }
}

pub fn build_currents<S: Spectral>(
    plus: &GaussFactors<S>,
    minus: Option<&GaussFactors<S>>,
) -> Result<CurrentSeries<S>> {
    Ok(CurrentSeries {
        plus: half_currents(plus)?,
        minus: minus.map(half_currents).transpose()?,
    })
}

/// Current families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    E,
    F,
    H,
    K,
}

impl Family {
    pub fn parity(self) -> u8 {
        match self {
            Family::E | Family::F => 1,
            Family::H | Family::K => 0,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::E => "e",
            Family::F => "f",
            Family::H => "h",
            Family::K => "k",
        })
    }
}

impl<S> HalfCurrents<S> {
    pub fn get(&self, fam: Family) -> &S {
        match fam {
            Family::E => &self.e,
            Family::F => &self.f,
            Family::H => &self.h,
            Family::K => &self.k,
        }
    }
}

/// Parity check on every coefficient of symbolic currents; returns the offenders.
pub fn parity_violations(c: &HalfCurrents<TruncSeries<AlgElem>>) -> Vec<String> {
    let mut bad = Vec::new();
    for fam in [Family::E, Family::F, Family::H, Family::K] {
        for (e, x) in c.get(fam).coeffs() {
            if x.is_zero() {
                continue;
            }
            if Ring::parity(x) != Some(fam.parity()) {
                bad.push(format!("{fam} at u^{e}"));
            }
        }
    }
    bad
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evalrep::make_eval_rep;
    use crate::modealgebra::Half;
    use crate::rtt::build_generating_matrix;

    fn sym_t(order: usize) -> Mat2<TruncSeries<AlgElem>> {
        let g = build_generating_matrix(Half::Plus, order);
        g.entries
    }

    #[test]
    fn identity_input() {
        let one = TruncSeries::<AlgElem>::truncated(crate::series::Direction::AtInfinity, Symbol::U, 4, [(0, AlgElem::one())]);
        let zero = TruncSeries::<AlgElem>::truncated(crate::series::Direction::AtInfinity, Symbol::U, 4, []);
        let t = [[one.clone(), zero.clone()], [zero.clone(), one.clone()]];
        let g = gauss_decompose(&t).unwrap();
        assert!(g.e.is_zero() && g.f.is_zero());
        assert_eq!(g.k1.coeff(0).unwrap(), AlgElem::one());
        let c = half_currents(&g).unwrap();
        assert_eq!(c.h.coeff(0).unwrap(), AlgElem::one());
        assert_eq!(c.h.coeff(-1).unwrap(), AlgElem::zero());
    }

    #[test]
    fn eval_reconstruction_exact() {
        let rep = make_eval_rep(Symbol::A).unwrap();
        let t = rep.t.entries.clone();
        let g = gauss_decompose(&t).unwrap();
        assert_eq!(reconstruct(&g).unwrap(), t);
        let c = half_currents(&g).unwrap();
        let ap = &sym::a() - &sym::half_hbar();
        let d = (&sym::u() - &ap).inv().unwrap();
        assert_eq!(c.e, QMat::unit(2, 1).scale(&d));
        assert_eq!(c.f, QMat::unit(1, 2).scale(&d));
        assert_eq!(c.h, QMat::identity().scale(&(&(&sym::u() - &ap) - &sym::hbar())).scale(&d));
    }

    #[test]
    fn symbolic_reconstruction_to_order() {
        let t = sym_t(4);
        let g = gauss_decompose(&t).unwrap();
        let r = reconstruct(&g).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..=4 {
                    let e = -k - 1;
                    if r[i][j].knows(e) {
                        assert_eq!(r[i][j].coeff(e).unwrap(), t[i][j].coeff(e).unwrap());
                    }
                }
                assert!(r[i][j].knows(-5));
            }
        }
        let c = half_currents(&g).unwrap();
        assert!(parity_violations(&c).is_empty());
        assert_eq!(c.k.coeff(0).unwrap(), AlgElem::one());
    }
}
