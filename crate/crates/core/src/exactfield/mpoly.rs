use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::symbol::{Symbol, NVARS};
use crate::error::{AlgebraError, Result};

pub type Rat = BigRational;

/// Exponent vector over the fixed symbol list.
///
/// Ordered graded-lexicographically: total degree first, then exponents
/// compared in symbol order (`hbar` most significant).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u16; NVARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; NVARS])
    }

    pub fn var(s: Symbol) -> Self {
        let mut e = [0; NVARS];
        e[s.index()] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn exp(&self, s: Symbol) -> u16 {
        self.0[s.index()]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (x, y) in e.iter_mut().zip(other.0.iter()) {
            *x += *y;
        }
        Monomial(e)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut e = other.0;
        for (x, y) in e.iter_mut().zip(self.0.iter()) {
            *x -= *y;
        }
        Monomial(e)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (x, y) in e.iter_mut().zip(other.0.iter()) {
            *x = (*x).min(*y);
        }
        Monomial(e)
    }

    pub fn var_mask(&self) -> u8 {
        let mut m = 0u8;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                m |= 1 << i;
            }
        }
        m
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    terms: BTreeMap<Monomial, Rat>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn one() -> Self {
        MPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = MPoly::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn int(n: i64) -> Self {
        MPoly::constant(Rat::from_integer(BigInt::from(n)))
    }

    pub fn var(s: Symbol) -> Self {
        MPoly::monomial(Monomial::var(s), Rat::one())
    }

    pub fn monomial(m: Monomial, c: Rat) -> Self {
        let mut p = MPoly::zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rat)>) -> Self {
        let mut p = MPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial::one())
                .is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.contains_key(&Monomial::one()))
    }

    pub fn constant_value(&self) -> Option<Rat> {
        if self.is_zero() {
            Some(Rat::zero())
        } else if self.is_constant() {
            self.terms.get(&Monomial::one()).cloned()
        } else {
            None
        }
    }

    pub fn constant_term(&self) -> Rat {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Rat {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(Rat::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, s: Symbol) -> u32 {
        self.terms.keys().map(|m| m.exp(s) as u32).max().unwrap_or(0)
    }

    pub fn var_mask(&self) -> u8 {
        self.terms.keys().fold(0, |acc, m| acc | m.var_mask())
    }

    pub fn contains(&self, s: Symbol) -> bool {
        self.var_mask() & (1 << s.index()) != 0
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(k, x)| (k.mul(m), x * c)).collect(),
        }
    }

    /// Scales so that the leading coefficient is 1. Zero stays zero.
    pub fn monic(&self) -> MPoly {
        match self.leading() {
            None => MPoly::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    pub fn pow(&self, n: u32) -> MPoly {
        let mut acc = MPoly::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Coefficients with respect to `s`: index `d` holds the coefficient of `s^d`.
    pub fn to_univariate(&self, s: Symbol) -> Vec<MPoly> {
        let deg = self.degree_in(s) as usize;
        let mut out = vec![MPoly::zero(); deg + 1];
        for (m, c) in &self.terms {
            let d = m.exp(s) as usize;
            let mut rest = *m;
            rest.0[s.index()] = 0;
            out[d].terms.insert(rest, c.clone());
        }
        out
    }

    pub fn from_univariate(s: Symbol, coeffs: &[MPoly]) -> MPoly {
        let mut p = MPoly::zero();
        for (d, c) in coeffs.iter().enumerate() {
            for (m, x) in &c.terms {
                let mut e = *m;
                e.0[s.index()] += d as u16;
                p.add_term(e, x.clone());
            }
        }
        p
    }

    /// Multivariate division by `g` under the graded-lex order.
    pub fn div_rem(&self, g: &MPoly) -> Result<(MPoly, MPoly)> {
        let (lm, lc) = match g.leading() {
            None => return Err(AlgebraError::DivisionByZero),
            Some((m, c)) => (*m, c.clone()),
        };
        let mut q = MPoly::zero();
        let mut r = MPoly::zero();
        let mut p = self.clone();
        while let Some((pm, pc)) = p.leading().map(|(m, c)| (*m, c.clone())) {
            if lm.divides(&pm) {
                let tm = lm.quotient_of(&pm);
                let tc = &pc / &lc;
                q.add_term(tm, tc.clone());
                let sub = g.mul_monomial(&tm, &tc);
                p = &p - &sub;
            } else {
                p.terms.remove(&pm);
                r.add_term(pm, pc);
            }
        }
        Ok((q, r))
    }

    /// Exact quotient, or `None` when `g` does not divide `self`.
    pub fn div_exact(&self, g: &MPoly) -> Option<MPoly> {
        if let Some(c) = g.constant_value() {
            if c.is_zero() {
                return None;
            }
            return Some(self.scale(&c.recip()));
        }
        let (q, r) = self.div_rem(g).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn eval(&self, assignment: &HashMap<Symbol, Rat>) -> Result<Rat> {
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for s in Symbol::ALL {
                let e = m.exp(s);
                if e > 0 {
                    let x = assignment.get(&s).ok_or(AlgebraError::UnboundSymbol(s))?;
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Partial evaluation: substitutes the given symbols, keeps the rest.
    pub fn eval_partial(&self, assignment: &HashMap<Symbol, Rat>) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            let mut rest = *m;
            for (s, x) in assignment {
                let e = m.exp(*s);
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                    rest.0[s.index()] = 0;
                }
            }
            out.add_term(rest, t);
        }
        out
    }

    /// Replaces `s` by the polynomial `value`.
    pub fn substitute(&self, s: Symbol, value: &MPoly) -> MPoly {
        if !self.contains(s) {
            return self.clone();
        }
        let coeffs = self.to_univariate(s);
        let mut acc = MPoly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * value) + c;
        }
        acc
    }

    /// Simultaneous substitution of several symbols.
    pub fn substitute_many(&self, subs: &[(Symbol, MPoly)]) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let mut rest = *m;
            let mut t = MPoly::constant(c.clone());
            for (s, val) in subs {
                let e = m.exp(*s);
                if e > 0 {
                    rest.0[s.index()] = 0;
                    t = &t * &val.pow(e as u32);
                }
            }
            out = &out + &t.mul_monomial(&rest, &Rat::one());
        }
        out
    }

    /// Integer content normalisation helper: true if every coefficient is an integer.
    pub fn has_integer_coeffs(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn is_negative_leading(&self) -> bool {
        self.leading().is_some_and(|(_, c)| c.is_negative())
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let (big, small) = if self.terms.len() >= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        if self.is_zero() || rhs.is_zero() {
            return MPoly::zero();
        }
        let mut acc: BTreeMap<Monomial, Rat> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let m = m1.mul(m2);
                let c = c1 * c2;
                match acc.get_mut(&m) {
                    Some(x) => *x += c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        MPoly { terms: acc }
    }
}

fn fmt_rat(c: &Rat) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for MPoly {
    /// Canonical rendering: terms in descending graded-lex order, `c*x^e` factors.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mut factors: Vec<String> = Vec::new();
            let is_unit_monomial = *m == Monomial::one();
            if !abs.is_one() || is_unit_monomial {
                factors.push(fmt_rat(&abs));
            }
            for s in Symbol::ALL {
                match m.exp(s) {
                    0 => {}
                    1 => factors.push(s.name().to_string()),
                    e => factors.push(format!("{}^{}", s.name(), e)),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: Symbol) -> MPoly {
        MPoly::var(s)
    }

    #[test]
    fn grlex_leading_term() {
        // u^2 + hbar*u + v^3: v^3 has the largest total degree
        let f = &(&p(Symbol::U).pow(2) + &(&p(Symbol::Hbar) * &p(Symbol::U))) + &p(Symbol::V).pow(3);
        assert_eq!(*f.leading().unwrap().0, Monomial::var(Symbol::V).mul(&Monomial::var(Symbol::V)).mul(&Monomial::var(Symbol::V)));
        // among degree-2 monomials hbar*u beats u^2 (hbar most significant)
        let g = &p(Symbol::U).pow(2) + &(&p(Symbol::Hbar) * &p(Symbol::U));
        assert_eq!(*g.leading().unwrap().0, Monomial::var(Symbol::Hbar).mul(&Monomial::var(Symbol::U)));
    }

    #[test]
    fn exact_division() {
        let u = p(Symbol::U);
        let h = p(Symbol::Hbar);
        let f = &u.pow(2) - &h.pow(2);
        let g = &u - &h;
        assert_eq!(f.div_exact(&g).unwrap(), &u + &h);
        assert!(u.div_exact(&g).is_none());
    }

    #[test]
    fn substitution_and_eval() {
        let u = p(Symbol::U);
        let h = p(Symbol::Hbar);
        let f = &u.pow(2) + &h;
        let g = f.substitute(Symbol::U, &(&u + &h));
        let mut asg = HashMap::new();
        asg.insert(Symbol::U, Rat::from_integer(2.into()));
        asg.insert(Symbol::Hbar, Rat::from_integer(1.into()));
        assert_eq!(g.eval(&asg).unwrap(), Rat::from_integer(10.into()));
        asg.remove(&Symbol::Hbar);
        assert_eq!(g.eval(&asg), Err(AlgebraError::UnboundSymbol(Symbol::Hbar)));
    }

    #[test]
    fn display_is_canonical() {
        let u = p(Symbol::U);
        let h = p(Symbol::Hbar);
        let f = &(&u.pow(2) - &h.scale(&Rat::new(1.into(), 2.into()))) + &MPoly::int(3);
        assert_eq!(f.to_string(), "u^2 - 1/2*hbar + 3");
    }
}
