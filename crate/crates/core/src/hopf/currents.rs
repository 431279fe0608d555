use std::fmt;

use serde::Serialize;

use super::{delta_image, eval_pair, CoproductSign};
use crate::error::{AlgebraError, Result};
use crate::evalrep::EvalRep;
use crate::exactfield::{sym, Symbol};
use crate::gauss::{gauss_decompose, half_currents, GaussFactors, HalfCurrents, Spectral};
use crate::gradedlinalg::{graded_kron_q, QMat};
use crate::ring::Ring;

/// Lines of the current coproduct table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CoproductLine {
    E,
    F,
    H,
    K,
}

impl CoproductLine {
    pub const ALL: [CoproductLine; 4] = [CoproductLine::E, CoproductLine::F, CoproductLine::H, CoproductLine::K];

    /// Readings of the unmarked diagonal symbol in the line, if it has one.
    pub fn readings(self) -> &'static [Reading] {
        match self {
            CoproductLine::F | CoproductLine::K => &Reading::ALL,
            _ => &[],
        }
    }
}

impl fmt::Display for CoproductLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl std::str::FromStr for CoproductLine {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Self> {
        CoproductLine::ALL
            .into_iter()
            .find(|l| l.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| AlgebraError::UnknownRelation(s.to_string()))
    }
}

/// Interpretations of a diagonal current symbol printed without sign or case.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Reading {
    K,
    K1,
    K2,
    H,
}

impl Reading {
    pub const ALL: [Reading; 4] = [Reading::K, Reading::K1, Reading::K2, Reading::H];

    pub fn name(self) -> &'static str {
        match self {
            Reading::K => "K",
            Reading::K1 => "k1",
            Reading::K2 => "k2",
            Reading::H => "H",
        }
    }
}

impl fmt::Display for Reading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Gauss factors and currents of one evaluation module.
struct Site<const N: usize> {
    g: GaussFactors<QMat<N>>,
    c: HalfCurrents<QMat<N>>,
}

impl<const N: usize> Site<N> {
    fn new(t: &[[QMat<N>; 2]; 2]) -> Result<Self> {
        let g = gauss_decompose(t)?;
        let c = half_currents(&g)?;
        Ok(Site { g, c })
    }

    fn diag(&self, r: Reading) -> &QMat<N> {
        match r {
            Reading::K => &self.c.k,
            Reading::K1 => &self.g.k1,
            Reading::K2 => &self.g.k2,
            Reading::H => &self.c.h,
        }
    }
}

fn sites(rep_a: &EvalRep, rep_b: &EvalRep) -> Result<(Site<4>, Site<2>, Site<2>)> {
    let d = delta_image(rep_a, rep_b, CoproductSign::Printed);
    Ok((Site::new(&d.entries)?, Site::new(&rep_a.t.entries)?, Site::new(&rep_b.t.entries)?))
}

fn kron(x: &QMat<2>, y: &QMat<2>) -> QMat<4> {
    graded_kron_q(x, y)
}

/// `ΔX − RHS` on `V(a)⊗V(b)` for one line and, where the line has an
/// ambiguous symbol, one reading of it.
pub fn current_coproduct_residual(line: CoproductLine, reading: Option<Reading>, a: Symbol, b: Symbol) -> Result<QMat<4>> {
    let (ra, rb) = eval_pair(a, b)?;
    let (d, sa, sb) = sites(&ra, &rb)?;
    let one = QMat::<2>::identity();
    let need = || reading.ok_or_else(|| AlgebraError::Unsupported(format!("line {line} needs a reading")));
    Ok(match line {
        CoproductLine::E => d.c.e.minus(&kron(&sa.c.e, &one).plus(&kron(&sa.c.k, &sb.c.e))),
        CoproductLine::F => {
            let y = sb.diag(need()?);
            d.c.f.minus(&kron(&one, &sb.c.f).plus(&kron(&sa.c.f, y)))
        }
        CoproductLine::H => d.c.h.minus(&kron(&sa.c.h, &sb.c.h)),
        CoproductLine::K => {
            let y = sb.diag(need()?);
            let f_shift = sa.c.f.shifted(&-&sym::hbar())?;
            let left = f_shift.times(&sa.c.k);
            let right = sb.c.e.times(y).plus(&y.times(&sb.c.e));
            d.c.k.minus(&kron(&sa.c.k, &sb.c.k).minus(&kron(&left, &right)))
        }
    })
}

/// The E line with `H` in place of `K` in the second term.
pub fn e_line_with_h(a: Symbol, b: Symbol) -> Result<QMat<4>> {
    let (ra, rb) = eval_pair(a, b)?;
    let (d, sa, sb) = sites(&ra, &rb)?;
    let one = QMat::<2>::identity();
    Ok(d.c.e.minus(&kron(&sa.c.e, &one).plus(&kron(&sa.c.h, &sb.c.e))))
}

/// `ε` of the currents, computed from `ε(T) = 1`: `(E, F, H, K)`.
pub fn counit_of_currents() -> Result<[crate::exactfield::RatFunc; 4]> {
    use crate::exactfield::RatFunc;
    let one = RatFunc::one();
    let zero = RatFunc::zero();
    let t = [[one.clone(), zero.clone()], [zero, one]];
    let g = gauss_decompose(&t.map(|row| row.map(Counit)))?;
    let c = half_currents(&g)?;
    Ok([c.e.0, c.f.0, c.h.0, c.k.0])
}

/// A scalar seen as a constant function of `u`; the image of `T` under `ε`.
#[derive(Clone, Debug, PartialEq)]
struct Counit(crate::exactfield::RatFunc);

impl Ring for Counit {
    fn zero() -> Self {
        Counit(crate::exactfield::RatFunc::zero())
    }
    fn one() -> Self {
        Counit(crate::exactfield::RatFunc::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        Counit(&self.0 + &o.0)
    }
    fn negated(&self) -> Self {
        Counit(-&self.0)
    }
    fn times(&self, o: &Self) -> Self {
        Counit(&self.0 * &o.0)
    }
    fn scale(&self, c: &crate::exactfield::RatFunc) -> Self {
        Counit(&self.0 * c)
    }
}

impl Spectral for Counit {
    fn shifted(&self, _c: &crate::exactfield::RatFunc) -> Result<Self> {
        Ok(self.clone())
    }
    fn inverse_of(&self) -> Result<Self> {
        Ok(Counit(self.0.inv()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h_line_holds() {
        assert!(current_coproduct_residual(CoproductLine::H, None, Symbol::A, Symbol::B)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn e_line_needs_h() {
        assert!(!current_coproduct_residual(CoproductLine::E, None, Symbol::A, Symbol::B)
            .unwrap()
            .is_zero());
        assert!(e_line_with_h(Symbol::A, Symbol::B).unwrap().is_zero());
    }

    #[test]
    fn f_line_readings() {
        let ok: Vec<Reading> = Reading::ALL
            .into_iter()
            .filter(|r| {
                current_coproduct_residual(CoproductLine::F, Some(*r), Symbol::A, Symbol::B)
                    .unwrap()
                    .is_zero()
            })
            .collect();
        assert_eq!(ok, vec![Reading::H]);
    }

    #[test]
    fn counit_of_currents_values() {
        let [e, f, h, k] = counit_of_currents().unwrap();
        assert!(e.is_zero() && f.is_zero());
        assert!(h.is_one() && k.is_one());
    }

    #[test]
    fn equal_points_rejected() {
        assert!(current_coproduct_residual(CoproductLine::H, None, Symbol::B, Symbol::B).is_err());
    }
}
