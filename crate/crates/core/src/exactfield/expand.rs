use serde::Serialize;

use super::{RatFunc, Symbol};
use crate::error::{AlgebraError, Result};
use crate::series::{Direction, TruncSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExpansionPoint {
    Zero,
    Infinity,
}

impl ExpansionPoint {
    pub fn direction(self) -> Direction {
        match self {
            ExpansionPoint::Zero => Direction::AtZero,
            ExpansionPoint::Infinity => Direction::AtInfinity,
        }
    }
}

/// Expands `f` in `var` around zero or infinity, keeping `order + 1` terms past
/// the polynomial part (`var^-1 .. var^-order-1` at infinity, `var^0 .. var^order`
/// at zero). Coefficients are rational functions of the remaining symbols.
pub fn series_expand(f: &RatFunc, var: Symbol, point: ExpansionPoint, order: usize) -> Result<TruncSeries<RatFunc>> {
    let dir = point.direction();
    let lift = |c: &RatFunc| c.clone();
    let num = TruncSeries::from_poly(&RatFunc::from_poly(f.num().clone()), var, dir, lift)?;
    let den = TruncSeries::from_poly(&RatFunc::from_poly(f.den().clone()), var, dir, lift)?;
    if point == ExpansionPoint::Zero && den.coeff(0)?.is_zero() {
        return Err(AlgebraError::NonExpandable);
    }
    if den.coeffs().count() == 1 && den.coeffs().next().is_some_and(|(e, _)| e == 0) {
        let c = den.coeff(0)?.inv()?;
        return Ok(num.truncate(order).map(|x| x * &c).truncate(order));
    }
    // the numerator's leading power raises every term of the inverse
    let lead = num
        .coeffs()
        .map(|(e, _)| match dir {
            Direction::AtInfinity => e,
            Direction::AtZero => -e,
        })
        .max()
        .unwrap_or(0);
    let inv_order = (order as i64 + lead.max(0)) as usize;
    let inv = den.invert_order(inv_order)?;
    Ok(num.checked_mul(&inv)?.truncate(order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::sym::*;

    #[test]
    fn simple_pole_at_infinity() {
        let f = RatFunc::one().div(&(&u() - &a())).unwrap();
        let s = series_expand(&f, Symbol::U, ExpansionPoint::Infinity, 3).unwrap();
        assert_eq!(s.coeff(-1).unwrap(), int(1));
        assert_eq!(s.coeff(-2).unwrap(), a());
        assert_eq!(s.coeff(-3).unwrap(), &a() * &a());
        assert_eq!(s.coeff(-4).unwrap(), a().pow(3).unwrap());
        assert!(s.coeff(-5).is_err());
        assert_eq!(s.coeff(0).unwrap(), int(0));
    }

    #[test]
    fn simple_pole_at_zero() {
        let f = RatFunc::one().div(&(&u() - &a())).unwrap();
        let s = series_expand(&f, Symbol::U, ExpansionPoint::Zero, 2).unwrap();
        assert_eq!(s.coeff(0).unwrap(), -&a().pow(-1).unwrap());
        assert_eq!(s.coeff(1).unwrap(), -&a().pow(-2).unwrap());
        assert_eq!(s.coeff(2).unwrap(), -&a().pow(-3).unwrap());
        assert!(s.coeff(3).is_err());
    }

    #[test]
    fn polynomial_part_retained() {
        let f = (&u() + &hbar()).div(&u()).unwrap();
        let s = series_expand(&f, Symbol::U, ExpansionPoint::Infinity, 1).unwrap();
        assert_eq!(s.coeff(0).unwrap(), int(1));
        assert_eq!(s.coeff(-1).unwrap(), hbar());
        assert_eq!(s.coeff(-2).unwrap(), int(0));
        let g = &(&u() * &u()) + &a();
        let t = series_expand(&g.div(&(&u() - &hbar())).unwrap(), Symbol::U, ExpansionPoint::Infinity, 2).unwrap();
        // (u^2 + a)/(u - hbar) = u + hbar + (a + hbar^2)/u + hbar (a + hbar^2)/u^2 + ...
        assert_eq!(t.coeff(1).unwrap(), int(1));
        assert_eq!(t.coeff(0).unwrap(), hbar());
        assert_eq!(t.coeff(-1).unwrap(), &a() + &(&hbar() * &hbar()));
    }

    #[test]
    fn pole_at_zero_is_not_expandable() {
        let f = RatFunc::one().div(&u()).unwrap();
        assert_eq!(
            series_expand(&f, Symbol::U, ExpansionPoint::Zero, 2),
            Err(AlgebraError::NonExpandable)
        );
    }
}
