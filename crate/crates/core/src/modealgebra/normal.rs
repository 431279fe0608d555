use std::collections::BTreeMap;

use serde::Serialize;

use super::algelem::{AlgElem, Word};
use super::rules::{pair_is_ordered, RuleSet};
use crate::exactfield::RatFunc;
use crate::ring::Ring;

pub const DEFAULT_MAX_PASSES: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NormalStatus {
    Normal,
    Inconclusive,
}

/// Which adjacent out-of-order pair is rewritten first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

type Key = (usize, i64, usize, Word);

fn key(w: Word) -> Key {
    (w.len(), w.weight(), w.inversions(), w)
}

fn add(pending: &mut BTreeMap<Key, RatFunc>, w: Word, c: RatFunc) {
    if c.is_zero() {
        return;
    }
    let k = key(w);
    match pending.get_mut(&k) {
        Some(x) => {
            let y = &*x + &c;
            if y.is_zero() {
                pending.remove(&k);
            } else {
                *x = y;
            }
        }
        None => {
            pending.insert(k, c);
        }
    }
}

/// Rewrites with the leftmost applicable rule until nothing applies.
pub fn normal_form(x: &AlgElem, rules: &RuleSet, max_passes: usize) -> (AlgElem, NormalStatus) {
    normal_form_with(x, rules, max_passes, Strategy::Leftmost)
}

pub fn normal_form_with(x: &AlgElem, rules: &RuleSet, max_passes: usize, strategy: Strategy) -> (AlgElem, NormalStatus) {
    let mut pending: BTreeMap<Key, RatFunc> = BTreeMap::new();
    for (w, c) in x.terms() {
        add(&mut pending, w.clone(), c.clone());
    }
    let mut out = AlgElem::zero();
    let mut passes = 0usize;
    let mut status = NormalStatus::Normal;
    while let Some(((_, _, _, w), c)) = pending.pop_last() {
        let positions: Box<dyn Iterator<Item = usize>> = match strategy {
            Strategy::Leftmost => Box::new(0..w.len().saturating_sub(1)),
            Strategy::Rightmost => Box::new((0..w.len().saturating_sub(1)).rev()),
        };
        let mut applied = false;
        for pos in positions {
            let Some(rule) = rules.get(&(w.0[pos], w.0[pos + 1])) else { continue };
            passes += 1;
            if passes > max_passes {
                status = NormalStatus::Inconclusive;
                break;
            }
            let prefix = Word(w.0[..pos].to_vec());
            let suffix = Word(w.0[pos + 2..].to_vec());
            for (rw, rc) in rule.rhs.terms() {
                add(&mut pending, prefix.concat(rw).concat(&suffix), rc * &c);
            }
            applied = true;
            break;
        }
        if status == NormalStatus::Inconclusive {
            out.add_term(w, c);
            for ((_, _, _, w), c) in pending {
                out.add_term(w, c);
            }
            return (out, status);
        }
        if !applied {
            let beyond = w.0.windows(2).any(|p| {
                (p[0].k as i64).abs() + (p[1].k as i64).abs() > rules.wmax && !pair_is_ordered(p[0], p[1])
            });
            if beyond {
                status = NormalStatus::Inconclusive;
            }
            out.add_term(w, c);
        }
    }
    (out, status)
}

/// Reduces with both strategies; inconclusive when they disagree.
pub fn normal_form_checked(x: &AlgElem, rules: &RuleSet, max_passes: usize) -> (AlgElem, NormalStatus) {
    let (a, sa) = normal_form_with(x, rules, max_passes, Strategy::Leftmost);
    let (b, sb) = normal_form_with(x, rules, max_passes, Strategy::Rightmost);
    if sa == NormalStatus::Normal && sb == NormalStatus::Normal && a == b {
        (a, NormalStatus::Normal)
    } else {
        (a, NormalStatus::Inconclusive)
    }
}

/// True when `x` reduces to zero with a normal status.
pub fn reduces_to_zero(x: &AlgElem, rules: &RuleSet) -> bool {
    let (y, s) = normal_form(x, rules, DEFAULT_MAX_PASSES);
    s == NormalStatus::Normal && y.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modealgebra::relations::{derive_mode_relations, enumerate_relations, SignPair};
    use crate::modealgebra::rules::{MinusOrientation, RuleSet};
    use std::sync::OnceLock;

    fn rules() -> &'static RuleSet {
        static R: OnceLock<RuleSet> = OnceLock::new();
        R.get_or_init(|| RuleSet::for_window(1).unwrap())
    }

    #[test]
    fn zero_is_normal() {
        assert_eq!(normal_form(&AlgElem::zero(), rules(), 10), (AlgElem::zero(), NormalStatus::Normal));
    }

    #[test]
    fn odd_square_vanishes() {
        let t = AlgElem::t(1, 2, 0);
        assert_eq!(normal_form(&t.times(&t), rules(), DEFAULT_MAX_PASSES), (AlgElem::zero(), NormalStatus::Normal));
    }

    #[test]
    fn relations_reduce_to_zero() {
        let rs = rules();
        for (id, x) in enumerate_relations(rs.wmax) {
            let (y, s) = normal_form(&x, rs, DEFAULT_MAX_PASSES);
            assert_eq!(s, NormalStatus::Normal, "{id}");
            assert!(y.is_zero(), "{id} -> {y}");
        }
        let x = derive_mode_relations(1, 2, 2, 1, SignPair::PlusMinus, 1, -2).unwrap();
        assert!(reduces_to_zero(&x, rs));
    }

    #[test]
    fn idempotent() {
        let rs = rules();
        let x = AlgElem::t(2, 1, 1).times(&AlgElem::t(1, 2, 0)).times(&AlgElem::t(1, 1, 0));
        let (y, s) = normal_form(&x, rs, DEFAULT_MAX_PASSES);
        assert_eq!(s, NormalStatus::Normal);
        assert_eq!(normal_form(&y, rs, DEFAULT_MAX_PASSES).0, y);
    }

    #[test]
    fn pass_limit_is_inconclusive() {
        let rs = RuleSet::synthesize(3, MinusOrientation::HigherFirst).unwrap();
        let x = AlgElem::t(2, 1, 1).times(&AlgElem::t(1, 2, 0)).times(&AlgElem::t(1, 1, 0));
        assert_eq!(normal_form(&x, &rs, 0).1, NormalStatus::Inconclusive);
    }
}
