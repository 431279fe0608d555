use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gcd::gcd;
use super::mpoly::{MPoly, Rat};
use super::symbol::Symbol;
use crate::error::{AlgebraError, Result};

/// Rational function in canonical form: `gcd(num, den) = 1` and `den` monic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: MPoly,
    den: MPoly,
}

/// Canonical reduced form of `num/den`.
pub fn ratfunc_normalize(num: MPoly, den: MPoly) -> Result<RatFunc> {
    RatFunc::new(num, den)
}

impl RatFunc {
    pub fn new(num: MPoly, den: MPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc::zero());
        }
        if let Some(c) = den.constant_value() {
            return Ok(RatFunc {
                num: num.scale(&c.recip()),
                den: MPoly::one(),
            });
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        Ok(RatFunc::from_coprime(num, den))
    }

    /// Builds from a coprime pair, only fixing the denominator's leading coefficient.
    fn from_coprime(num: MPoly, den: MPoly) -> Self {
        let lc = den.leading_coeff();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.recip();
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn zero() -> Self {
        RatFunc {
            num: MPoly::zero(),
            den: MPoly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc::from_poly(MPoly::one())
    }

    pub fn from_poly(p: MPoly) -> Self {
        RatFunc {
            num: p,
            den: MPoly::one(),
        }
    }

    pub fn int(n: i64) -> Self {
        RatFunc::from_poly(MPoly::int(n))
    }

    pub fn rat(c: Rat) -> Self {
        RatFunc::from_poly(MPoly::constant(c))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        RatFunc::rat(Rat::new(n.into(), d.into()))
    }

    pub fn var(s: Symbol) -> Self {
        RatFunc::from_poly(MPoly::var(s))
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn constant_value(&self) -> Option<Rat> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn var_mask(&self) -> u8 {
        self.num.var_mask() | self.den.var_mask()
    }

    pub fn contains(&self, s: Symbol) -> bool {
        self.var_mask() & (1 << s.index()) != 0
    }

    /// True if the only symbol present (if any) is `s`.
    pub fn only_in(&self, s: Symbol) -> bool {
        self.var_mask() & !(1u8 << s.index()) == 0
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.num.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(RatFunc::from_coprime(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, n: i32) -> Result<RatFunc> {
        if n >= 0 {
            Ok(RatFunc {
                num: self.num.pow(n as u32),
                den: self.den.pow(n as u32),
            })
            .map(|r| RatFunc::from_coprime(r.num, r.den))
        } else {
            self.inv()?.pow(-n)
        }
    }

    pub fn scale(&self, c: &Rat) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Exact value at a point; errors on a pole or an unbound symbol.
    pub fn eval(&self, assignment: &HashMap<Symbol, Rat>) -> Result<Rat> {
        let d = self.den.eval(assignment)?;
        let n = self.num.eval(assignment)?;
        if d.is_zero() {
            return Err(AlgebraError::Pole);
        }
        Ok(n / d)
    }

    /// Substitutes some symbols by rationals, keeping the others symbolic.
    pub fn eval_partial(&self, assignment: &HashMap<Symbol, Rat>) -> Result<RatFunc> {
        let d = self.den.eval_partial(assignment);
        if d.is_zero() {
            return Err(AlgebraError::Pole);
        }
        RatFunc::new(self.num.eval_partial(assignment), d)
    }

    /// Replaces `s` by a rational function.
    pub fn substitute(&self, s: Symbol, value: &RatFunc) -> Result<RatFunc> {
        self.substitute_many(&[(s, value.clone())])
    }

    /// Simultaneous substitution of several symbols.
    pub fn substitute_many(&self, subs: &[(Symbol, RatFunc)]) -> Result<RatFunc> {
        let relevant: Vec<&(Symbol, RatFunc)> = subs.iter().filter(|(s, _)| self.contains(*s)).collect();
        if relevant.is_empty() {
            return Ok(self.clone());
        }
        if relevant.iter().all(|(_, v)| v.is_polynomial()) {
            let ps: Vec<(Symbol, MPoly)> = relevant.iter().map(|(s, v)| (*s, v.num.clone())).collect();
            return RatFunc::new(self.num.substitute_many(&ps), self.den.substitute_many(&ps));
        }
        // general case: evaluate each polynomial as a rational function
        let n = poly_substitute_rational(&self.num, &relevant)?;
        let d = poly_substitute_rational(&self.den, &relevant)?;
        n.div(&d)
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc> {
        Ok(self * &other.inv()?)
    }

    /// Degree of numerator minus degree of denominator in `s`.
    pub fn degree_in(&self, s: Symbol) -> i64 {
        self.num.degree_in(s) as i64 - self.den.degree_in(s) as i64
    }
}

fn poly_substitute_rational(p: &MPoly, subs: &[&(Symbol, RatFunc)]) -> Result<RatFunc> {
    let mut acc = RatFunc::zero();
    for (m, c) in p.terms() {
        let mut rest = *m;
        let mut t = RatFunc::rat(c.clone());
        for (s, v) in subs {
            let e = m.exp(*s);
            if e > 0 {
                rest.0[s.index()] = 0;
                t = &t * &v.pow(e as i32)?;
            }
        }
        let mono = RatFunc::from_poly(MPoly::monomial(rest, Rat::one()));
        acc = &acc + &(&t * &mono);
    }
    Ok(acc)
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if self.den.is_one() {
                return RatFunc::from_poly(num);
            }
            return RatFunc::new(num, self.den.clone()).expect("nonzero denominator");
        }
        let g = gcd(&self.den, &rhs.den);
        let d1 = self.den.div_exact(&g).expect("gcd divides");
        let d2 = rhs.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &d2) + &(&rhs.num * &d1);
        let den = &self.den * &d2;
        if g.is_one() {
            // only factors of g can cancel; with g = 1 the result is already coprime
            return RatFunc::from_coprime(num, den);
        }
        RatFunc::new(num, den).expect("nonzero denominator")
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_poly(&self.num * &rhs.num);
        }
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = rhs.den.div_exact(&g1).expect("gcd divides");
        let n2 = rhs.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        RatFunc::from_coprime(&n1 * &n2, &d1 * &d2)
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        &self + &rhs
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        &self - &rhs
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        &self * &rhs
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    /// Panics on division by zero; use [`RatFunc::div`] for a checked version.
    fn div(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::div(self, rhs).expect("division by zero")
    }
}

impl fmt::Display for RatFunc {
    /// Canonical textual form: `(num)` or `(num)/(den)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "({})", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}

/// Shorthand constructors used throughout the crate.
pub mod sym {
    use super::*;

    pub fn hbar() -> RatFunc {
        RatFunc::var(Symbol::Hbar)
    }
    pub fn u() -> RatFunc {
        RatFunc::var(Symbol::U)
    }
    pub fn v() -> RatFunc {
        RatFunc::var(Symbol::V)
    }
    pub fn a() -> RatFunc {
        RatFunc::var(Symbol::A)
    }
    pub fn b() -> RatFunc {
        RatFunc::var(Symbol::B)
    }
    pub fn lambda() -> RatFunc {
        RatFunc::var(Symbol::Lambda)
    }
    pub fn int(n: i64) -> RatFunc {
        RatFunc::int(n)
    }
    pub fn half_hbar() -> RatFunc {
        hbar().scale(&Rat::new(1.into(), 2.into()))
    }
}

#[cfg(test)]
mod tests {
    use super::sym::*;
    use super::*;

    fn r(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    #[test]
    fn normalize_cancels_common_factor() {
        // (u^2 - hbar^2)/(u - hbar) = u + hbar
        let num = &(&u() * &u()) - &(&hbar() * &hbar());
        let den = &u() - &hbar();
        let f = ratfunc_normalize(num.num().clone(), den.num().clone()).unwrap();
        assert_eq!(f, &u() + &hbar());
        assert!(f.den().is_one());
    }

    #[test]
    fn normalize_zero_and_errors() {
        let f = ratfunc_normalize(MPoly::zero(), MPoly::var(Symbol::U)).unwrap();
        assert_eq!(f.num(), &MPoly::zero());
        assert!(f.den().is_one());
        assert_eq!(
            ratfunc_normalize(MPoly::one(), MPoly::zero()),
            Err(AlgebraError::DivisionByZero)
        );
    }

    #[test]
    fn normalize_product_form() {
        // ((u-v+h)(u-v-h))/(u-v-h) -> u-v+h
        let p = &(&u() - &v()) + &hbar();
        let q = &(&u() - &v()) - &hbar();
        let f = ratfunc_normalize((&p * &q).num().clone(), q.num().clone()).unwrap();
        assert_eq!(f.num(), p.num());
        assert!(f.den().is_one());
    }

    #[test]
    fn eval_examples() {
        let f = &(&u() + &hbar()) / &(&u() - &hbar());
        let mut asg = HashMap::new();
        asg.insert(Symbol::U, r(2));
        asg.insert(Symbol::Hbar, r(1));
        assert_eq!(f.eval(&asg).unwrap(), r(3));

        let g = &u() - &v();
        let mut asg2 = HashMap::new();
        asg2.insert(Symbol::U, r(3));
        asg2.insert(Symbol::V, r(3));
        assert_eq!(g.eval(&asg2).unwrap(), r(0));

        let pole = RatFunc::one().div(&(&u() - &hbar())).unwrap();
        let mut asg3 = HashMap::new();
        asg3.insert(Symbol::U, r(1));
        asg3.insert(Symbol::Hbar, r(1));
        assert_eq!(pole.eval(&asg3), Err(AlgebraError::Pole));
        assert!(matches!(pole.eval(&HashMap::new()), Err(AlgebraError::UnboundSymbol(_))));
    }

    #[test]
    fn denominator_is_monic() {
        let f = RatFunc::one().div(&(&int(-2) * &u())).unwrap();
        assert_eq!(f.den().leading_coeff(), Rat::one());
        assert_eq!(f.num().constant_value().unwrap(), Rat::new((-1).into(), 2.into()));
    }

    #[test]
    fn substitution_with_rational_value() {
        // 1/(u - a) with u -> 1/a  gives a/(1 - a^2)
        let f = RatFunc::one().div(&(&u() - &a())).unwrap();
        let g = f.substitute(Symbol::U, &RatFunc::one().div(&a()).unwrap()).unwrap();
        let expect = a().div(&(&int(1) - &(&a() * &a()))).unwrap();
        assert_eq!(g, expect);
    }

    #[test]
    fn display_canonical() {
        let f = (&u() + &hbar()).div(&(&u() - &hbar())).unwrap();
        assert_eq!(f.to_string(), "(-hbar - u)/(hbar - u)");
    }
}
