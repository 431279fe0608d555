//! Truncated generating functions in one spectral symbol.
//!
//! A series expanded at infinity is a sum of powers `u^e` that is exact for
//! every `e >= floor`; one expanded at zero is exact for every `e <= -floor`.
//! Internally both are handled through the "key" of an exponent (`e` at
//! infinity, `-e` at zero), so that larger keys are always the dominant
//! terms and truncation always cuts keys below the floor. A series without a
//! floor is exact (a Laurent polynomial).

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::exactfield::{Rat, RatFunc, Symbol};
use crate::ring::Ring;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    AtInfinity,
    AtZero,
}

impl Direction {
    fn key(self, e: i64) -> i64 {
        match self {
            Direction::AtInfinity => e,
            Direction::AtZero => -e,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Direction::AtInfinity => "at_infinity",
            Direction::AtZero => "at_zero",
        }
    }
}

#[derive(Clone, Debug)]
pub struct TruncSeries<R> {
    dir: Direction,
    var: Symbol,
    floor: Option<i64>,
    coeffs: BTreeMap<i64, R>,
}

/// Floor (in key space) of a series truncated at `order`.
fn order_floor(dir: Direction, order: usize) -> i64 {
    match dir {
        Direction::AtInfinity => -(order as i64) - 1,
        Direction::AtZero => -(order as i64),
    }
}

impl<R: Ring> TruncSeries<R> {
    /// An exact series from `(exponent, coefficient)` pairs.
    pub fn exact(dir: Direction, var: Symbol, terms: impl IntoIterator<Item = (i64, R)>) -> Self {
        let mut s = TruncSeries {
            dir,
            var,
            floor: None,
            coeffs: BTreeMap::new(),
        };
        for (e, c) in terms {
            s.add_coeff(e, c);
        }
        s
    }

    /// A series truncated at `order` (see [`TruncSeries::order`]).
    pub fn truncated(
        dir: Direction,
        var: Symbol,
        order: usize,
        terms: impl IntoIterator<Item = (i64, R)>,
    ) -> Self {
        let mut s = Self::exact(dir, var, terms);
        s.set_floor(Some(order_floor(dir, order)));
        s
    }

    pub fn constant(c: R) -> Self {
        Self::exact(Direction::AtInfinity, Symbol::U, [(0, c)])
    }

    /// Exact series of a polynomial in `var`; coefficients are lifted by `lift`.
    pub fn from_poly(
        p: &RatFunc,
        var: Symbol,
        dir: Direction,
        lift: impl Fn(&RatFunc) -> R,
    ) -> Result<Self> {
        if !p.is_polynomial() {
            return Err(AlgebraError::Unsupported(format!("{p} is not a polynomial in {var}")));
        }
        let parts = p.num().to_univariate(var);
        Ok(Self::exact(
            dir,
            var,
            parts
                .iter()
                .enumerate()
                .map(|(e, c)| (e as i64, lift(&RatFunc::from_poly(c.clone())))),
        ))
    }

    pub fn direction(&self) -> Direction {
        self.dir
    }

    pub fn var(&self) -> Symbol {
        self.var
    }

    pub fn is_exact(&self) -> bool {
        self.floor.is_none()
    }

    /// Truncation order: the number `N` such that `u^{-1} .. u^{-N-1}` (at
    /// infinity) or `u^0 .. u^N` (at zero) are exact.
    pub fn order(&self) -> Option<i64> {
        self.floor.map(|f| match self.dir {
            Direction::AtInfinity => -f - 1,
            Direction::AtZero => -f,
        })
    }

    /// Lowest exact exponent at infinity, highest at zero.
    pub fn precision_exponent(&self) -> Option<i64> {
        self.floor.map(|f| self.dir.key(f))
    }

    pub fn coeffs(&self) -> impl DoubleEndedIterator<Item = (i64, &R)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i64) -> Result<R> {
        if !self.knows(e) {
            return Err(AlgebraError::BeyondTruncation(-e - 1));
        }
        Ok(self.coeffs.get(&e).cloned().unwrap_or_else(R::zero))
    }

    pub fn knows(&self, e: i64) -> bool {
        self.floor.is_none_or(|f| self.dir.key(e) >= f)
    }

    fn is_constant(&self) -> bool {
        self.floor.is_none() && self.coeffs.keys().all(|&e| e == 0)
    }

    fn add_coeff(&mut self, e: i64, c: R) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&e) {
            Some(x) => {
                let y = x.plus(&c);
                if y.is_zero() {
                    self.coeffs.remove(&e);
                } else {
                    *x = y;
                }
            }
            None => {
                self.coeffs.insert(e, c);
            }
        }
    }

    fn set_floor(&mut self, floor: Option<i64>) {
        self.floor = floor;
        if let Some(f) = floor {
            let dir = self.dir;
            self.coeffs.retain(|e, _| dir.key(*e) >= f);
        }
    }

    /// Keeps only the terms that are exact at `order`, dropping the rest.
    pub fn truncate(&self, order: usize) -> Self {
        let f = order_floor(self.dir, order);
        let mut s = self.clone();
        s.set_floor(Some(self.floor.map_or(f, |g| g.max(f))));
        s
    }

    fn top_key(&self) -> Option<i64> {
        self.coeffs.keys().map(|&e| self.dir.key(e)).max()
    }

    /// Largest key a term of the true series may have.
    fn effective_top(&self) -> Option<i64> {
        match (self.top_key(), self.floor) {
            (t, None) => t,
            (Some(t), Some(f)) => Some(t.max(f - 1)),
            (None, Some(f)) => Some(f - 1),
        }
    }

    /// Resolves the variable and direction of a binary operation.
    fn frame(&self, other: &Self) -> Result<(Direction, Symbol)> {
        if self.is_constant() {
            return Ok((other.dir, other.var));
        }
        if other.is_constant() {
            return Ok((self.dir, self.var));
        }
        if self.dir != other.dir || self.var != other.var {
            return Err(AlgebraError::DirectionMismatch);
        }
        Ok((self.dir, self.var))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let (dir, var) = self.frame(other)?;
        let floor = match (self.floor, other.floor) {
            (None, None) => None,
            (Some(a), None) | (None, Some(a)) => Some(a),
            (Some(a), Some(b)) => Some(a.max(b)),
        };
        let mut out = TruncSeries {
            dir,
            var,
            floor: None,
            coeffs: self.coeffs.clone(),
        };
        for (e, c) in &other.coeffs {
            out.add_coeff(*e, c.clone());
        }
        out.set_floor(floor);
        Ok(out)
    }

    /// Noncommutative-safe product: every coefficient product keeps the
    /// left factor on the left.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let (dir, var) = self.frame(other)?;
        if (self.is_exact() && self.coeffs.is_empty()) || (other.is_exact() && other.coeffs.is_empty()) {
            return Ok(TruncSeries::exact(dir, var, []));
        }
        let mut floor: Option<i64> = None;
        if let Some(fa) = self.floor {
            if let Some(tb) = other.effective_top() {
                floor = Some(fa + tb);
            }
        }
        if let Some(fb) = other.floor {
            if let Some(ta) = self.effective_top() {
                let c = fb + ta;
                floor = Some(floor.map_or(c, |f| f.max(c)));
            }
        }
        let mut out = TruncSeries {
            dir,
            var,
            floor: None,
            coeffs: BTreeMap::new(),
        };
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &other.coeffs {
                let e = ea + eb;
                if floor.is_some_and(|f| dir.key(e) < f) {
                    continue;
                }
                out.add_coeff(e, ca.times(cb));
            }
        }
        out.set_floor(floor);
        Ok(out)
    }

    /// Multiplies by `var^n`.
    pub fn mul_var_power(&self, n: i64) -> Self {
        TruncSeries {
            dir: self.dir,
            var: self.var,
            floor: self.floor.map(|f| f + self.dir.key(n)),
            coeffs: self.coeffs.iter().map(|(e, c)| (e + n, c.clone())).collect(),
        }
    }

    /// Applies `f` to every coefficient.
    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> TruncSeries<S> {
        let mut out = TruncSeries {
            dir: self.dir,
            var: self.var,
            floor: self.floor,
            coeffs: BTreeMap::new(),
        };
        for (e, c) in &self.coeffs {
            out.add_coeff(*e, f(c));
        }
        out
    }

    /// Fallible variant of [`TruncSeries::map`].
    pub fn try_map<S: Ring>(&self, f: impl Fn(&R) -> Result<S>) -> Result<TruncSeries<S>> {
        let mut out = TruncSeries {
            dir: self.dir,
            var: self.var,
            floor: self.floor,
            coeffs: BTreeMap::new(),
        };
        for (e, c) in &self.coeffs {
            out.add_coeff(*e, f(c)?);
        }
        Ok(out)
    }

    /// Inverse whose terms are exact down to key `floor` (or the natural
    /// precision of the input, whichever is coarser).
    fn invert_to(&self, target: Option<i64>) -> Result<Self> {
        let top = self.top_key().ok_or(AlgebraError::NotInvertible)?;
        let dir = self.dir;
        let lead_e = dir.key(top);
        let lead = self.coeffs[&lead_e].try_inverse().ok_or(AlgebraError::NotInvertible)?;
        // a = sum_m A_m (key top - m), b = sum_n B_n (key -top - n)
        let depth_input = self.floor.map(|f| top - f);
        let depth_target = target.map(|f| -top - f);
        let depth = match (depth_input, depth_target) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => {
                if self.coeffs.len() == 1 {
                    0
                } else {
                    return Err(AlgebraError::Unsupported(
                        "inverse of an exact non-monomial series needs a truncation order".into(),
                    ));
                }
            }
        };
        let a = |m: i64| -> R {
            self.coeffs
                .get(&dir.key(top - m))
                .cloned()
                .unwrap_or_else(R::zero)
        };
        let mut b: Vec<R> = vec![lead.clone()];
        for n in 1..=depth.max(0) {
            let mut acc = R::zero();
            for i in 1..=n {
                let ai = a(i);
                if ai.is_zero() {
                    continue;
                }
                acc = acc.plus(&ai.times(&b[(n - i) as usize]));
            }
            b.push(lead.times(&acc).negated());
        }
        let mut out = TruncSeries::exact(
            dir,
            self.var,
            b.into_iter()
                .enumerate()
                .map(|(n, c)| (dir.key(-top - n as i64), c)),
        );
        let exact_inverse = self.is_exact() && self.coeffs.len() == 1;
        if !exact_inverse {
            out.set_floor(Some(-top - depth));
        }
        Ok(out)
    }

    /// Two-sided inverse at the precision of the input.
    pub fn invert(&self) -> Result<Self> {
        self.invert_to(None)
    }

    /// Two-sided inverse truncated at `order`.
    pub fn invert_order(&self, order: usize) -> Result<Self> {
        self.invert_to(Some(order_floor(self.dir, order)))
    }

    /// The series of `f(var + c)` for a scalar `c` free of `var`.
    pub fn shift(&self, c: &RatFunc) -> Result<Self> {
        if c.is_zero() {
            return Ok(self.clone());
        }
        if c.contains(self.var) {
            return Err(AlgebraError::Unsupported(format!("shift by {c} involves {}", self.var)));
        }
        match self.dir {
            Direction::AtInfinity => {
                let mut out = TruncSeries {
                    dir: self.dir,
                    var: self.var,
                    floor: None,
                    coeffs: BTreeMap::new(),
                };
                let floor = match self.floor {
                    Some(f) => f,
                    None => {
                        if self.coeffs.keys().any(|&e| e < 0) {
                            return Err(AlgebraError::Unsupported(
                                "shift of an exact series with negative powers needs a truncation order".into(),
                            ));
                        }
                        i64::MIN
                    }
                };
                for (&e, x) in &self.coeffs {
                    // (u + c)^e = sum_n binom(e, n) c^n u^(e - n)
                    let mut binom = Rat::one();
                    let mut cpow = RatFunc::one();
                    let mut n: i64 = 0;
                    while e - n >= floor {
                        if e >= 0 && n > e {
                            break;
                        }
                        out.add_coeff(e - n, x.scale(&cpow.scale(&binom)));
                        binom = binom * Rat::from_integer((e - n).into()) / Rat::from_integer((n + 1).into());
                        cpow = &cpow * c;
                        n += 1;
                        if binom.is_zero() {
                            break;
                        }
                    }
                }
                out.set_floor(self.floor);
                Ok(out)
            }
            Direction::AtZero => {
                if !self.is_exact() {
                    return Err(AlgebraError::Unsupported(
                        "shift of a truncated series at zero is not determined by its stored terms".into(),
                    ));
                }
                let mut out = TruncSeries::exact(self.dir, self.var, []);
                for (&e, x) in &self.coeffs {
                    if e < 0 {
                        return Err(AlgebraError::Unsupported("shift of a pole at zero".into()));
                    }
                    let mut binom = Rat::one();
                    for n in 0..=e {
                        // (u + c)^e = sum_n binom(e, n) c^(e - n) u^n
                        out.add_coeff(n, x.scale(&c.pow((e - n) as i32)?.scale(&binom)));
                        binom = binom * Rat::from_integer((e - n).into()) / Rat::from_integer((n + 1).into());
                    }
                }
                Ok(out)
            }
        }
    }

    /// Coefficient of `var^(-k-1)`, the k-th mode.
    pub fn extract_mode(&self, k: i64) -> Result<R> {
        let e = -k - 1;
        if !self.knows(e) {
            return Err(AlgebraError::BeyondTruncation(k));
        }
        Ok(self.coeffs.get(&e).cloned().unwrap_or_else(R::zero))
    }

    /// Same exponents and coefficients, ignoring truncation information.
    pub fn same_terms(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

pub fn series_multiply<R: Ring>(a: &TruncSeries<R>, b: &TruncSeries<R>) -> Result<TruncSeries<R>> {
    a.checked_mul(b)
}

pub fn series_invert<R: Ring>(a: &TruncSeries<R>) -> Result<TruncSeries<R>> {
    a.invert()
}

pub fn series_shift<R: Ring>(a: &TruncSeries<R>, c: &RatFunc) -> Result<TruncSeries<R>> {
    a.shift(c)
}

pub fn extract_mode<R: Ring>(a: &TruncSeries<R>, k: i64) -> Result<R> {
    a.extract_mode(k)
}

impl<R: Ring> PartialEq for TruncSeries<R> {
    fn eq(&self, other: &Self) -> bool {
        let frame_ok = self.is_constant() || other.is_constant() || (self.dir == other.dir && self.var == other.var);
        frame_ok && self.floor == other.floor && self.coeffs == other.coeffs
    }
}

impl<R: Ring> Ring for TruncSeries<R> {
    fn zero() -> Self {
        TruncSeries::exact(Direction::AtInfinity, Symbol::U, [])
    }
    fn one() -> Self {
        TruncSeries::constant(R::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn plus(&self, other: &Self) -> Self {
        self.checked_add(other).expect("series frames agree")
    }
    fn negated(&self) -> Self {
        self.map(|c| c.negated())
    }
    fn times(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("series frames agree")
    }
    fn scale(&self, c: &RatFunc) -> Self {
        self.map(|x| x.scale(c))
    }
    fn from_scalar(c: &RatFunc) -> Self {
        TruncSeries::constant(R::from_scalar(c))
    }
    fn parity(&self) -> Option<u8> {
        let mut p = None;
        for c in self.coeffs.values() {
            let q = c.parity()?;
            if p.is_some_and(|x| x != q) {
                return None;
            }
            p = Some(q);
        }
        Some(p.unwrap_or(0))
    }
}

impl<R: Ring + fmt::Display> fmt::Display for TruncSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        let mut keyed: Vec<(i64, &R)> = self.coeffs.iter().map(|(e, c)| (*e, c)).collect();
        keyed.sort_by_key(|(e, _)| std::cmp::Reverse(self.dir.key(*e)));
        for (e, c) in keyed {
            parts.push(match e {
                0 => format!("({c})"),
                _ => format!("({c})*{}^{}", self.var, e),
            });
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        if let Some(p) = self.precision_exponent() {
            let next = match self.dir {
                Direction::AtInfinity => p - 1,
                Direction::AtZero => p + 1,
            };
            parts.push(format!("O({}^{})", self.var, next));
        }
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::sym::*;

    fn s(terms: &[(i64, RatFunc)], order: usize) -> TruncSeries<RatFunc> {
        TruncSeries::truncated(Direction::AtInfinity, Symbol::U, order, terms.iter().cloned())
    }

    #[test]
    fn commuting_product_cancels_first_order() {
        let x = a();
        let p = s(&[(0, int(1)), (-1, x.clone())], 4);
        let m = s(&[(0, int(1)), (-1, -&x)], 4);
        let prod = series_multiply(&p, &m).unwrap();
        let expect = s(&[(0, int(1)), (-2, -&(&x * &x))], 4);
        assert_eq!(prod, expect);
    }

    #[test]
    fn unit_is_neutral() {
        let p = s(&[(0, int(1)), (-1, hbar()), (-3, a())], 5);
        assert_eq!(p.times(&TruncSeries::one()), p);
        assert_eq!(TruncSeries::one().times(&p), p);
    }

    #[test]
    fn geometric_inverse() {
        // 1 - hbar*g/u with g a commuting symbol
        let p = s(&[(0, int(1)), (-1, -&(&hbar() * &a()))], 3);
        let inv = series_invert(&p).unwrap();
        let g = &hbar() * &a();
        let expect = s(&[(0, int(1)), (-1, g.clone()), (-2, g.pow(2).unwrap()), (-3, g.pow(3).unwrap()), (-4, g.pow(4).unwrap())], 3);
        assert_eq!(inv, expect);
        assert!(series_invert(&s(&[(-1, int(1)), (-2, int(3))], 3)).is_ok());
        let zero_lead = TruncSeries::<RatFunc>::truncated(Direction::AtInfinity, Symbol::U, 3, []);
        assert_eq!(series_invert(&zero_lead), Err(AlgebraError::NotInvertible));
    }

    #[test]
    fn shift_of_simple_pole() {
        // g/u shifted by hbar/2: g/u - (hbar/2) g/u^2 + (hbar^2/4) g/u^3 - ...
        let p = s(&[(-1, a())], 3);
        let sh = series_shift(&p, &half_hbar()).unwrap();
        let h2 = half_hbar();
        let expect = s(
            &[
                (-1, a()),
                (-2, -&(&a() * &h2)),
                (-3, &(&a() * &h2) * &h2),
                (-4, -&(&(&(&a() * &h2) * &h2) * &h2)),
            ],
            3,
        );
        assert_eq!(sh, expect);
        let back = series_shift(&sh, &-&half_hbar()).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn mode_extraction() {
        let p = s(&[(0, int(1)), (-3, hbar())], 4);
        assert_eq!(extract_mode(&p, 2).unwrap(), hbar());
        assert_eq!(extract_mode(&p, 0).unwrap(), int(0));
        assert_eq!(extract_mode(&p, 5), Err(AlgebraError::BeyondTruncation(5)));
        let z = TruncSeries::<RatFunc>::truncated(Direction::AtZero, Symbol::U, 2, [(0, int(1)), (1, a())]);
        // u^1 at zero is mode k = -2
        assert_eq!(extract_mode(&z, -2).unwrap(), a());
        assert_eq!(extract_mode(&z, -4), Err(AlgebraError::BeyondTruncation(-4)));
    }

    #[test]
    fn polynomial_part_keeps_precision() {
        // u * (1 + a/u + O(u^-4)) = u + a + O(u^-3)
        let p = s(&[(0, int(1)), (-1, a())], 3);
        let uu = TruncSeries::exact(Direction::AtInfinity, Symbol::U, [(1, int(1))]);
        let prod = uu.times(&p);
        assert_eq!(prod.precision_exponent(), Some(-3));
        assert_eq!(prod.coeff(1).unwrap(), int(1));
        assert_eq!(prod.coeff(0).unwrap(), a());
    }

    #[test]
    fn mismatched_directions_error() {
        let p = s(&[(-1, int(1))], 2);
        let z = TruncSeries::<RatFunc>::truncated(Direction::AtZero, Symbol::U, 2, [(1, int(1))]);
        assert_eq!(series_multiply(&p, &z), Err(AlgebraError::DirectionMismatch));
    }
}
