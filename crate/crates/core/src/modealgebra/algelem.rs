use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{AlgebraError, Result};
use crate::exactfield::RatFunc;
use crate::ring::Ring;

/// Mode generator `t[i,j;k]`; `k >= 0` belongs to `t⁺`, `k < 0` to `t⁻`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorId {
    pub i: u8,
    pub j: u8,
    pub k: i32,
}

/// Parity of `t_ij`: diagonal generators are even, off-diagonal ones odd.
pub fn generator_parity(i: usize, j: usize) -> u8 {
    ((i + j) % 2) as u8
}

/// Exponent of the sign `(-1)^{ij+jk+ki+1}` in the unified relation.
pub fn sign_exponent(i: usize, j: usize, k: usize, l: usize) -> u8 {
    let _ = l;
    ((i * j + j * k + k * i + 1) % 2) as u8
}

impl GeneratorId {
    pub fn new(i: usize, j: usize, k: i64) -> Self {
        assert!((1..=2).contains(&i) && (1..=2).contains(&j), "index out of range");
        GeneratorId {
            i: i as u8,
            j: j as u8,
            k: k as i32,
        }
    }

    pub fn parity(&self) -> u8 {
        generator_parity(self.i as usize, self.j as usize)
    }

    pub fn mode(&self) -> i64 {
        self.k as i64
    }

    /// Position of `(i,j)` in the order (1,1),(1,2),(2,1),(2,2).
    pub fn slot(&self) -> u8 {
        2 * (self.i - 1) + (self.j - 1)
    }

    /// Total order used for straightening: mode first, then `(i,j)`.
    pub fn sort_key(&self) -> (i32, u8) {
        (self.k, self.slot())
    }
}

impl Ord for GeneratorId {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for GeneratorId {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t[{},{};{}]", self.i, self.j, self.k)
    }
}

/// Monomial of the free algebra; the empty word is the unit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<GeneratorId>);

impl Word {
    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn gen(g: GeneratorId) -> Self {
        Word(vec![g])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn parity(&self) -> u8 {
        self.0.iter().map(|g| g.parity()).sum::<u8>() % 2
    }

    /// Sum of the absolute mode indices.
    pub fn weight(&self) -> i64 {
        self.0.iter().map(|g| (g.k as i64).abs()).sum()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Number of pairs standing in the wrong order for the straightening order.
    pub fn inversions(&self) -> usize {
        let mut n = 0;
        for a in 0..self.0.len() {
            for b in a + 1..self.0.len() {
                if self.0[a] > self.0[b] {
                    n += 1;
                }
            }
        }
        n
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.0.iter().map(|g| g.to_string()).collect();
        f.write_str(&parts.join("*"))
    }
}

/// Element of the free Z2-graded algebra with scalar coefficients in ħ.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AlgElem {
    terms: BTreeMap<Word, RatFunc>,
}

impl AlgElem {
    pub fn zero() -> Self {
        AlgElem::default()
    }

    pub fn scalar(c: RatFunc) -> Self {
        let mut x = AlgElem::zero();
        x.add_term(Word::unit(), c);
        x
    }

    pub fn gen(g: GeneratorId) -> Self {
        Self::word(Word::gen(g), RatFunc::one())
    }

    /// Shorthand for the generator `t[i,j;k]`.
    pub fn t(i: usize, j: usize, k: i64) -> Self {
        Self::gen(GeneratorId::new(i, j, k))
    }

    pub fn word(w: Word, c: RatFunc) -> Self {
        let mut x = AlgElem::zero();
        x.add_term(w, c);
        x
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &RatFunc)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Word, RatFunc> {
        self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &Word) -> RatFunc {
        self.terms.get(w).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn add_term(&mut self, w: Word, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(x) => {
                let y = &*x + &c;
                if y.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *x = y;
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &AlgElem, c: &RatFunc) {
        for (w, x) in &other.terms {
            self.add_term(w.clone(), x * c);
        }
    }

    pub fn max_len(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }

    /// Scalar part (coefficient of the empty word).
    pub fn scalar_part(&self) -> RatFunc {
        self.coeff(&Word::unit())
    }

    pub fn is_scalar(&self) -> bool {
        self.terms.keys().all(|w| w.is_empty())
    }

    /// Substitutes every coefficient through `f` (used for ħ → 0 and similar).
    pub fn map_coeffs(&self, f: impl Fn(&RatFunc) -> Result<RatFunc>) -> Result<AlgElem> {
        let mut out = AlgElem::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Parity of a homogeneous element; error otherwise.
    pub fn homogeneous_parity(&self) -> Result<u8> {
        Ring::parity(self).ok_or(AlgebraError::Inhomogeneous)
    }

    /// Algebra morphism defined on generators.
    pub fn substitute<R: Ring>(&self, image: &impl Fn(GeneratorId) -> R) -> R {
        let mut acc = R::zero();
        for (w, c) in &self.terms {
            let mut t = R::from_scalar(c);
            for g in &w.0 {
                t = t.times(&image(*g));
            }
            acc = acc.plus(&t);
        }
        acc
    }
}

/// `x y - (-1)^{p(x)p(y)} y x` for homogeneous `x`, `y`.
pub fn super_commutator(x: &AlgElem, y: &AlgElem) -> Result<AlgElem> {
    let px = x.homogeneous_parity()?;
    let py = y.homogeneous_parity()?;
    let xy = x.times(y);
    let yx = y.times(x);
    Ok(if px * py == 1 { xy.plus(&yx) } else { xy.minus(&yx) })
}

impl Ring for AlgElem {
    fn zero() -> Self {
        AlgElem::zero()
    }
    fn one() -> Self {
        AlgElem::scalar(RatFunc::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, other: &Self) -> Self {
        let (big, small) = if self.terms.len() >= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = big.clone();
        for (w, c) in &small.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
    fn negated(&self) -> Self {
        AlgElem {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
    fn times(&self, other: &Self) -> Self {
        let mut out = AlgElem::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(w1.concat(w2), c1 * c2);
            }
        }
        out
    }
    fn scale(&self, c: &RatFunc) -> Self {
        if c.is_zero() {
            return AlgElem::zero();
        }
        AlgElem {
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect(),
        }
    }
    fn from_scalar(c: &RatFunc) -> Self {
        AlgElem::scalar(c.clone())
    }
    fn try_inverse(&self) -> Option<Self> {
        if self.is_scalar() && !self.is_zero() {
            Some(AlgElem::scalar(self.scalar_part().inv().ok()?))
        } else {
            None
        }
    }
    fn parity(&self) -> Option<u8> {
        let mut p = None;
        for w in self.terms.keys() {
            let q = w.parity();
            if p.is_some_and(|x| x != q) {
                return None;
            }
            p = Some(q);
        }
        Some(p.unwrap_or(0))
    }
}

impl fmt::Display for AlgElem {
    /// Fully parenthesized canonical form: `(c)*word + ...` in word order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| if w.is_empty() { format!("{c}") } else { format!("{c}*({w})") })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_examples() {
        assert_eq!(generator_parity(1, 1), 0);
        assert_eq!(generator_parity(1, 2), 1);
        assert_eq!(generator_parity(2, 2), 0);
    }

    #[test]
    fn sign_exponent_examples() {
        assert_eq!(sign_exponent(1, 1, 1, 2), 0);
        assert_eq!(sign_exponent(2, 2, 1, 2), 1);
        assert_eq!(sign_exponent(1, 2, 2, 1), 1);
    }

    #[test]
    fn supercommutator_examples() {
        let t110 = AlgElem::t(1, 1, 0);
        let t120 = AlgElem::t(1, 2, 0);
        assert!(super_commutator(&t110, &t110).unwrap().is_zero());
        let sq = super_commutator(&t120, &t120).unwrap();
        assert_eq!(sq, t120.times(&t120).scale(&RatFunc::int(2)));
        let c = super_commutator(&t110, &t120).unwrap();
        assert_eq!(c.homogeneous_parity().unwrap(), 1);
        let mixed = t110.plus(&t120);
        assert_eq!(super_commutator(&mixed, &t110), Err(AlgebraError::Inhomogeneous));
    }

    #[test]
    fn display_is_parenthesized() {
        let x = AlgElem::t(1, 2, 0).times(&AlgElem::t(2, 1, -1)).scale(&RatFunc::int(-2));
        assert_eq!(x.to_string(), "(-2)*(t[1,2;0]*t[2,1;-1])");
    }
}
