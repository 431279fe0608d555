use std::collections::BTreeMap;
use std::fmt;

use crate::exactfield::RatFunc;
use crate::modealgebra::{normal_form, AlgElem, NormalStatus, RuleSet, Word, DEFAULT_MAX_PASSES};
use crate::ring::Ring;

/// Element of the `N`-fold graded tensor power of the free mode algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor<const N: usize> {
    terms: BTreeMap<[Word; N], RatFunc>,
}

pub type TensorElem = Tensor<2>;

fn unit_key<const N: usize>() -> [Word; N] {
    std::array::from_fn(|_| Word::unit())
}

impl<const N: usize> Tensor<N> {
    pub fn terms(&self) -> impl Iterator<Item = (&[Word; N], &RatFunc)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, key: &[Word; N]) -> RatFunc {
        self.terms.get(key).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn add_term(&mut self, key: [Word; N], c: RatFunc) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(key.clone()).or_insert_with(RatFunc::zero);
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// `x₁ ⊗ … ⊗ x_N`.
    pub fn pure(factors: [&AlgElem; N]) -> Self {
        let mut out = Tensor {
            terms: BTreeMap::from([(unit_key::<N>(), RatFunc::one())]),
        };
        for (slot, x) in factors.iter().enumerate() {
            let mut next = Tensor { terms: BTreeMap::new() };
            for (key, c) in &out.terms {
                for (w, d) in x.terms() {
                    let mut k = key.clone();
                    k[slot] = w.clone();
                    next.add_term(k, c * d);
                }
            }
            out = next;
        }
        out
    }

    /// Largest word weight over all factors.
    pub fn max_weight(&self) -> i64 {
        self.terms
            .keys()
            .flat_map(|k| k.iter().map(|w| w.weight()))
            .max()
            .unwrap_or(0)
    }

    /// Factor-wise normal form; the status is the worst one met.
    pub fn normal_form(&self, rules: &RuleSet) -> (Self, NormalStatus) {
        let mut cur = self.clone();
        let mut status = NormalStatus::Normal;
        for slot in 0..N {
            let mut groups: BTreeMap<[Word; N], AlgElem> = BTreeMap::new();
            for (k, c) in &cur.terms {
                let mut rest = k.clone();
                let w = std::mem::take(&mut rest[slot]);
                groups.entry(rest).or_insert_with(AlgElem::zero).add_term(w, c.clone());
            }
            let mut next = Tensor { terms: BTreeMap::new() };
            for (rest, x) in groups {
                let (y, st) = normal_form(&x, rules, DEFAULT_MAX_PASSES);
                if st == NormalStatus::Inconclusive {
                    status = st;
                }
                for (w, c) in y.terms() {
                    let mut k = rest.clone();
                    k[slot] = w.clone();
                    next.add_term(k, c.clone());
                }
            }
            cur = next;
        }
        (cur, status)
    }

    /// Applies a linear map to one factor.
    pub fn map_slot(&self, slot: usize, f: impl Fn(&Word) -> AlgElem) -> Self {
        let mut out = Tensor { terms: BTreeMap::new() };
        for (k, c) in &self.terms {
            for (w, d) in f(&k[slot]).terms() {
                let mut key = k.clone();
                key[slot] = w.clone();
                out.add_term(key, c * d);
            }
        }
        out
    }
}

impl Tensor<2> {
    /// Contracts the first factor with `ε`.
    pub fn counit_left(&self) -> AlgElem {
        let mut out = AlgElem::zero();
        for ([l, r], c) in &self.terms {
            if l.is_empty() {
                out.add_term(r.clone(), c.clone());
            }
        }
        out
    }

    /// Contracts the second factor with `ε`.
    pub fn counit_right(&self) -> AlgElem {
        let mut out = AlgElem::zero();
        for ([l, r], c) in &self.terms {
            if r.is_empty() {
                out.add_term(l.clone(), c.clone());
            }
        }
        out
    }

    /// `(f ⊗ id)` with `f` valued in two-fold tensors, giving a three-fold tensor.
    pub fn expand_left(&self, mut f: impl FnMut(&Word) -> Tensor<2>) -> Tensor<3> {
        let mut out = Tensor { terms: BTreeMap::new() };
        for ([l, r], c) in &self.terms {
            for ([x, y], d) in f(l).terms() {
                out.add_term([x.clone(), y.clone(), r.clone()], c * d);
            }
        }
        out
    }

    /// `(id ⊗ f)` with `f` valued in two-fold tensors.
    pub fn expand_right(&self, mut f: impl FnMut(&Word) -> Tensor<2>) -> Tensor<3> {
        let mut out = Tensor { terms: BTreeMap::new() };
        for ([l, r], c) in &self.terms {
            for ([x, y], d) in f(r).terms() {
                out.add_term([l.clone(), x.clone(), y.clone()], c * d);
            }
        }
        out
    }
}

impl<const N: usize> Ring for Tensor<N> {
    fn zero() -> Self {
        Tensor { terms: BTreeMap::new() }
    }

    fn one() -> Self {
        Tensor {
            terms: BTreeMap::from([(unit_key::<N>(), RatFunc::one())]),
        }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    fn negated(&self) -> Self {
        Tensor {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }

    /// `(a₁⊗…⊗a_N)(b₁⊗…⊗b_N) = (−1)^{Σ_{i>j} p(a_i)p(b_j)} a₁b₁⊗…⊗a_Nb_N`.
    fn times(&self, other: &Self) -> Self {
        let mut out = Tensor { terms: BTreeMap::new() };
        for (a, ca) in &self.terms {
            let pa: Vec<u8> = a.iter().map(|w| w.parity()).collect();
            for (b, cb) in &other.terms {
                let mut e = 0u8;
                for (j, w) in b.iter().enumerate() {
                    let pb = w.parity();
                    if pb == 1 {
                        e += pa[j + 1..].iter().sum::<u8>();
                    }
                }
                let key: [Word; N] = std::array::from_fn(|i| a[i].concat(&b[i]));
                let c = ca * cb;
                out.add_term(key, if e % 2 == 1 { -&c } else { c });
            }
        }
        out
    }

    fn scale(&self, c: &RatFunc) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Tensor {
            terms: self.terms.iter().map(|(k, x)| (k.clone(), x * c)).collect(),
        }
    }

    fn parity(&self) -> Option<u8> {
        let mut ps = self.terms.keys().map(|k| k.iter().map(|w| w.parity()).sum::<u8>() % 2);
        let first = ps.next().unwrap_or(0);
        ps.all(|p| p == first).then_some(first)
    }
}

impl<const N: usize> fmt::Display for Tensor<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let fs: Vec<String> = k
                    .iter()
                    .map(|w| if w.is_empty() { "1".to_string() } else { w.to_string() })
                    .collect();
                format!("{c}*({})", fs.join(" ⊗ "))
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn koszul_sign() {
        let e = AlgElem::t(1, 2, 0);
        let f = AlgElem::t(2, 1, 0);
        let one = AlgElem::one();
        // (1⊗e)(f⊗1) = -(f⊗e)
        let x = Tensor::pure([&one, &e]).times(&Tensor::pure([&f, &one]));
        assert_eq!(x, Tensor::pure([&f, &e]).negated());
        // (f⊗1)(1⊗e) = f⊗e
        let y = Tensor::pure([&f, &one]).times(&Tensor::pure([&one, &e]));
        assert_eq!(y, Tensor::pure([&f, &e]));
    }

    #[test]
    fn counit_contraction() {
        let e = AlgElem::t(1, 2, 3);
        let one = AlgElem::one();
        let x = Tensor::pure([&e, &one]).plus(&Tensor::pure([&e, &e]));
        assert_eq!(x.counit_right(), e);
        assert_eq!(x.counit_left(), AlgElem::zero());
    }
}
