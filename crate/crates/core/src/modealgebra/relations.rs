use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::algelem::{sign_exponent, super_commutator, AlgElem};
use crate::error::{AlgebraError, Result};
use crate::exactfield::{sym, RatFunc};
use crate::ring::{sign, Ring};

/// Which half of the double a generating series belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Half {
    Plus,
    Minus,
}

impl Half {
    pub fn of_mode(k: i64) -> Half {
        if k >= 0 {
            Half::Plus
        } else {
            Half::Minus
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Half::Plus => "+",
            Half::Minus => "-",
        }
    }
}

/// The three sign pairs for which the unified relation is stated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SignPair {
    PlusPlus,
    MinusMinus,
    PlusMinus,
}

impl SignPair {
    pub const ALL: [SignPair; 3] = [SignPair::PlusPlus, SignPair::MinusMinus, SignPair::PlusMinus];

    pub fn from_halves(s: Half, r: Half) -> Result<SignPair> {
        match (s, r) {
            (Half::Plus, Half::Plus) => Ok(SignPair::PlusPlus),
            (Half::Minus, Half::Minus) => Ok(SignPair::MinusMinus),
            (Half::Plus, Half::Minus) => Ok(SignPair::PlusMinus),
            (Half::Minus, Half::Plus) => Err(AlgebraError::UndefinedSignPair),
        }
    }

    pub fn halves(self) -> (Half, Half) {
        match self {
            SignPair::PlusPlus => (Half::Plus, Half::Plus),
            SignPair::MinusMinus => (Half::Minus, Half::Minus),
            SignPair::PlusMinus => (Half::Plus, Half::Minus),
        }
    }
}

impl fmt::Display for SignPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.halves();
        write!(f, "{}{}", a.symbol(), b.symbol())
    }
}

impl FromStr for SignPair {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "++" => Ok(SignPair::PlusPlus),
            "--" => Ok(SignPair::MinusMinus),
            "+-" => Ok(SignPair::PlusMinus),
            "-+" => Err(AlgebraError::UndefinedSignPair),
            _ => Err(AlgebraError::Unsupported(format!("sign pair {s}"))),
        }
    }
}

/// Coefficient of `u^m` in `t^σ_ij(u)` as a free-algebra element.
///
/// `t⁺(u) = 1 + ħ Σ_{k≥0} t^k u^{-k-1}` is read at infinity (so the `t`
/// coefficients carry `-ħ` after the sign flip fixed by the RTT convention),
/// `t⁻(u) = 1 + ħ Σ_{k<0} t^k u^{-k-1}` at zero.
pub fn series_coefficient(half: Half, i: usize, j: usize, m: i64) -> AlgElem {
    let delta = if i == j { AlgElem::one() } else { AlgElem::zero() };
    match half {
        Half::Plus => {
            if m == 0 {
                delta
            } else if m < 0 {
                AlgElem::t(i, j, -m - 1).scale(&-&sym::hbar())
            } else {
                AlgElem::zero()
            }
        }
        Half::Minus => {
            if m < 0 {
                AlgElem::zero()
            } else {
                let g = AlgElem::t(i, j, -m - 1).scale(&sym::hbar());
                if m == 0 {
                    delta.plus(&g)
                } else {
                    g
                }
            }
        }
    }
}

/// The relation obtained from the unified generating-function relation as the
/// coefficient of `u^{-r-1} v^{-s-1}`, divided by `ħ²`.
pub fn derive_mode_relations(
    i: usize,
    j: usize,
    k: usize,
    l: usize,
    pair: SignPair,
    r: i64,
    s: i64,
) -> Result<AlgElem> {
    for x in [i, j, k, l] {
        if !(1..=2).contains(&x) {
            return Err(AlgebraError::IndexOutOfRange(format!("({i},{j},{k},{l})")));
        }
    }
    let (sg, rh) = pair.halves();
    let (p, q) = (-r - 1, -s - 1);
    let bracket = |pp: i64, qq: i64| -> Result<AlgElem> {
        let x = series_coefficient(sg, i, j, pp);
        let y = series_coefficient(rh, k, l, qq);
        if x.is_zero() || y.is_zero() {
            return Ok(AlgElem::zero());
        }
        super_commutator(&x, &y)
    };
    let mut out = bracket(p - 1, q)?.minus(&bracket(p, q - 1)?);
    let d1 = series_coefficient(sg, k, j, p).times(&series_coefficient(rh, i, l, q));
    let d2 = series_coefficient(rh, k, j, q).times(&series_coefficient(sg, i, l, p));
    let c = &sym::hbar() * &sign(sign_exponent(i, j, k, l) as i64);
    out = out.plus(&d1.minus(&d2).scale(&c));
    let h2 = &sym::hbar() * &sym::hbar();
    Ok(out.scale(&h2.inv()?))
}

/// One instance of the mode relation, with its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RelationId {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub l: usize,
    pub pair: SignPair,
    pub r: i64,
    pub s: i64,
}

impl RelationId {
    pub fn derive(&self) -> Result<AlgElem> {
        derive_mode_relations(self.i, self.j, self.k, self.l, self.pair, self.r, self.s)
    }
}

impl fmt::Display for RelationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "rel({}{}{}{},{},r={},s={})",
            self.i, self.j, self.k, self.l, self.pair, self.r, self.s
        )
    }
}

/// Mode range of `r` (and `s`) to scan for a half so that every generator
/// has `|mode| <= wmax`.
fn mode_range(h: Half, wmax: i64) -> std::ops::RangeInclusive<i64> {
    match h {
        Half::Plus => -1..=wmax,
        Half::Minus => -wmax - 2..=-1,
    }
}

/// All nonzero relation instances whose words have total weight at most
/// `wmax`, in a deterministic order.
pub fn enumerate_relations(wmax: i64) -> Vec<(RelationId, AlgElem)> {
    let mut out = Vec::new();
    for pair in SignPair::ALL {
        let (hs, hr) = pair.halves();
        for r in mode_range(hs, wmax + 1) {
            for s in mode_range(hr, wmax + 1) {
                for i in 1..=2 {
                    for j in 1..=2 {
                        for k in 1..=2 {
                            for l in 1..=2 {
                                let id = RelationId { i, j, k, l, pair, r, s };
                                let Ok(x) = id.derive() else { continue };
                                if x.is_zero() || x.terms().any(|(w, _)| w.weight() > wmax) {
                                    continue;
                                }
                                out.push((id, x));
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Sets ħ to zero in every coefficient.
pub fn classical_limit(x: &AlgElem) -> Result<AlgElem> {
    x.map_coeffs(|c| c.substitute(crate::exactfield::Symbol::Hbar, &RatFunc::zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modealgebra::algelem::Word;

    #[test]
    fn minus_plus_is_rejected() {
        assert_eq!("-+".parse::<SignPair>(), Err(AlgebraError::UndefinedSignPair));
        assert_eq!(SignPair::from_halves(Half::Minus, Half::Plus), Err(AlgebraError::UndefinedSignPair));
    }

    #[test]
    fn coefficients_are_small() {
        let allowed = [RatFunc::one(), RatFunc::int(-1), sym::hbar(), -&sym::hbar(), RatFunc::int(2), RatFunc::int(-2)];
        for (_, x) in enumerate_relations(3) {
            assert!(x.max_len() <= 2);
            for (_, c) in x.terms() {
                assert!(allowed.contains(c), "unexpected coefficient {c}");
            }
        }
    }

    #[test]
    fn boundary_relation_plus() {
        // [t^0_11, t^1_12} = t^1_12 from the r = -1 boundary
        let x = derive_mode_relations(1, 1, 1, 2, SignPair::PlusPlus, -1, 1).unwrap();
        let expect = AlgElem::t(1, 1, 0)
            .times(&AlgElem::t(1, 2, 1))
            .minus(&AlgElem::t(1, 2, 1).times(&AlgElem::t(1, 1, 0)))
            .minus(&AlgElem::t(1, 2, 1));
        assert_eq!(x, expect);
    }

    #[test]
    fn diagonal_plus_parts_under_swap() {
        for r in 0..3 {
            for s in 0..3 {
                let a = derive_mode_relations(1, 1, 1, 1, SignPair::PlusPlus, r, s).unwrap();
                let b = derive_mode_relations(1, 1, 1, 1, SignPair::PlusPlus, s, r).unwrap();
                let (a0, b0) = (classical_limit(&a).unwrap(), classical_limit(&b).unwrap());
                assert_eq!(a0, b0);
                assert_eq!(a.minus(&a0), b.minus(&b0).negated());
            }
        }
    }

    #[test]
    fn classical_limit_interior_is_commutator_difference() {
        let x = derive_mode_relations(1, 2, 2, 1, SignPair::PlusPlus, 1, 2).unwrap();
        let c = classical_limit(&x).unwrap();
        let br = |a: i64, b: i64| super_commutator(&AlgElem::t(1, 2, a), &AlgElem::t(2, 1, b)).unwrap();
        assert_eq!(c, br(2, 2).minus(&br(1, 3)));
        assert!(c.terms().all(|(w, _)| w.len() == 2));
        assert!(x.terms().all(|(w, _)| w != &Word::unit()));
    }
}
