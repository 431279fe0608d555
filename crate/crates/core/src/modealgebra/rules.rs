use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::algelem::{AlgElem, GeneratorId, Word};
use super::relations::{enumerate_relations, Half, RelationId};
use crate::error::{AlgebraError, Result};
use crate::exactfield::{RatFunc, Symbol};
use crate::ring::Ring;

pub type Pair = (GeneratorId, GeneratorId);

/// Straightening rule `lhs → rhs` together with the combination of mode
/// relations that proves `lhs − rhs` lies in the relation ideal.
#[derive(Clone, Debug, PartialEq)]
pub struct RewriteRule {
    pub lhs: Pair,
    pub rhs: AlgElem,
    pub certificate: Vec<(RelationId, RatFunc)>,
}

impl RewriteRule {
    pub fn lhs_word(&self) -> Word {
        Word(vec![self.lhs.0, self.lhs.1])
    }

    /// `lhs − rhs`.
    pub fn relation(&self) -> AlgElem {
        AlgElem::word(self.lhs_word(), RatFunc::one()).minus(&self.rhs)
    }

    /// Recombines the certificate through `derive` and compares with `lhs − rhs`.
    pub fn check_certificate(&self, derive: impl Fn(&RelationId) -> Result<AlgElem>) -> Result<bool> {
        let mut acc = AlgElem::zero();
        for (id, c) in &self.certificate {
            acc.add_scaled(&derive(id)?, c);
        }
        Ok(acc == self.relation())
    }
}

/// Orientation of elimination among pairs of `t⁻` modes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MinusOrientation {
    /// Higher total weight is eliminated first, as for the other classes.
    HigherFirst,
    /// Lower total weight is eliminated first.
    LowerFirst,
}

/// A pair is already in straightened order.
pub fn pair_is_ordered(x: GeneratorId, y: GeneratorId) -> bool {
    x < y || (x == y && x.parity() == 0)
}

fn inversion_class(x: GeneratorId, y: GeneratorId) -> u8 {
    if x.k > y.k {
        3
    } else if x.k == y.k && x.slot() > y.slot() {
        2
    } else if x == y && x.parity() == 1 {
        1
    } else {
        0
    }
}

type ColKey = (i64, u8, (i32, u8), (i32, u8));

fn column_key(x: GeneratorId, y: GeneratorId, orient: MinusOrientation) -> ColKey {
    let w = (x.k as i64).abs() + (y.k as i64).abs();
    let both_minus = x.k < 0 && y.k < 0;
    let wk = if both_minus && orient == MinusOrientation::LowerFirst { -w } else { w };
    (wk, inversion_class(x, y), x.sort_key(), y.sort_key())
}

fn as_pair(w: &Word) -> Option<Pair> {
    (w.len() == 2).then(|| (w.0[0], w.0[1]))
}

struct Row {
    elem: AlgElem,
    cert: BTreeMap<usize, RatFunc>,
}

impl Row {
    fn sub_scaled(&mut self, other: &Row, c: &RatFunc) {
        let neg = -c;
        self.elem.add_scaled(&other.elem, &neg);
        for (k, v) in &other.cert {
            let entry = self.cert.entry(*k).or_insert_with(RatFunc::zero);
            *entry = &*entry - &(v * c);
            if entry.is_zero() {
                self.cert.remove(k);
            }
        }
    }

    fn scale(&mut self, c: &RatFunc) {
        self.elem = self.elem.scale(c);
        for v in self.cert.values_mut() {
            *v = &*v * c;
        }
    }
}

/// Coverage of a mode window: for each unordered pair of generators, whether
/// one of its orderings (or the square of an odd generator) has a rule.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Coverage {
    pub covered: BTreeMap<String, (usize, usize)>,
    pub uncovered: Vec<String>,
}

impl Coverage {
    pub fn is_complete(&self) -> bool {
        self.uncovered.is_empty()
    }
}

/// Frozen set of straightening rules valid for words of pair weight up to `wmax`.
#[derive(Clone, Debug)]
pub struct RuleSet {
    pub wmax: i64,
    pub orientation: MinusOrientation,
    rules: HashMap<Pair, RewriteRule>,
    /// Relations whose reduction left only linear or scalar terms.
    pub degenerate: Vec<AlgElem>,
}

impl RuleSet {
    /// Row-reduces all mode relations with pair weight at most `wmax`.
    pub fn synthesize(wmax: i64, orientation: MinusOrientation) -> Result<RuleSet> {
        let relations = enumerate_relations(wmax);
        let key = |p: &Pair| column_key(p.0, p.1, orientation);
        let mut rows: Vec<Row> = Vec::new();
        let mut pivot_of: HashMap<Pair, usize> = HashMap::new();
        let mut degenerate = Vec::new();

        for (idx, (_, elem)) in relations.iter().enumerate() {
            let mut row = Row {
                elem: elem.clone(),
                cert: BTreeMap::from([(idx, RatFunc::one())]),
            };
            loop {
                let hit = row
                    .elem
                    .terms()
                    .filter_map(|(w, _)| as_pair(w))
                    .filter(|p| pivot_of.contains_key(p))
                    .max_by_key(key);
                let Some(p) = hit else { break };
                let c = row.elem.coeff(&Word(vec![p.0, p.1]));
                let other = &rows[pivot_of[&p]];
                // pivot rows are normalized, so one subtraction clears `p`
                let other = Row {
                    elem: other.elem.clone(),
                    cert: other.cert.clone(),
                };
                row.sub_scaled(&other, &c);
            }
            if row.elem.is_zero() {
                continue;
            }
            let lead = row.elem.terms().filter_map(|(w, _)| as_pair(w)).max_by_key(key);
            match lead {
                Some(p) => {
                    let c = row.elem.coeff(&Word(vec![p.0, p.1]));
                    row.scale(&c.inv()?);
                    pivot_of.insert(p, rows.len());
                    rows.push(row);
                }
                None => degenerate.push(row.elem),
            }
        }

        // back substitution in increasing pivot priority
        let mut order: Vec<(Pair, usize)> = pivot_of.iter().map(|(p, i)| (*p, *i)).collect();
        order.sort_by_key(|(p, _)| key(p));
        for (own, ri) in &order {
            loop {
                let hit = rows[*ri]
                    .elem
                    .terms()
                    .filter_map(|(w, _)| as_pair(w))
                    .filter(|p| p != own && pivot_of.contains_key(p))
                    .max_by_key(key);
                let Some(p) = hit else { break };
                let c = rows[*ri].elem.coeff(&Word(vec![p.0, p.1]));
                let src = &rows[pivot_of[&p]];
                let other = Row {
                    elem: src.elem.clone(),
                    cert: src.cert.clone(),
                };
                rows[*ri].sub_scaled(&other, &c);
            }
        }

        let mut rules = HashMap::new();
        for (p, ri) in order {
            let row = &rows[ri];
            let lhs = Word(vec![p.0, p.1]);
            let mut rhs = row.elem.negated();
            rhs.add_term(lhs, RatFunc::one());
            let certificate = row
                .cert
                .iter()
                .map(|(i, c)| (relations[*i].0.clone(), c.clone()))
                .collect();
            rules.insert(p, RewriteRule { lhs: p, rhs, certificate });
        }
        Ok(RuleSet {
            wmax,
            orientation,
            rules,
            degenerate,
        })
    }

    /// Same left-hand sides with every ħ-dependent term dropped from the
    /// right-hand sides. Unsound on purpose; used as a negative control.
    pub fn without_hbar_corrections(&self) -> Result<RuleSet> {
        let mut rules = HashMap::new();
        for (p, r) in &self.rules {
            let mut rhs = AlgElem::zero();
            for (w, c) in r.rhs.terms() {
                let c0 = c.substitute(Symbol::Hbar, &RatFunc::zero())?;
                if &c0 == c {
                    rhs.add_term(w.clone(), c0);
                }
            }
            rules.insert(
                *p,
                RewriteRule {
                    lhs: *p,
                    rhs,
                    certificate: Vec::new(),
                },
            );
        }
        Ok(RuleSet {
            wmax: self.wmax,
            orientation: self.orientation,
            rules,
            degenerate: Vec::new(),
        })
    }

    pub fn get(&self, p: &Pair) -> Option<&RewriteRule> {
        self.rules.get(p)
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Rules sorted by left-hand side.
    pub fn rules(&self) -> Vec<&RewriteRule> {
        let mut v: Vec<&RewriteRule> = self.rules.values().collect();
        v.sort_by_key(|r| (r.lhs.0.sort_key(), r.lhs.1.sort_key()));
        v
    }

    /// Checks every certificate against `derive`; returns the failing lhs.
    pub fn validate(&self, derive: impl Fn(&RelationId) -> Result<AlgElem> + Sync) -> Result<Vec<Pair>> {
        use rayon::prelude::*;
        let rules = self.rules();
        let bad: Result<Vec<Option<Pair>>> = rules
            .par_iter()
            .map(|r| Ok((!r.check_certificate(&derive)?).then_some(r.lhs)))
            .collect();
        Ok(bad?.into_iter().flatten().collect())
    }

    /// Pair coverage of modes `0..=window` for `t⁺` and `-window-1..=-1` for `t⁻`.
    pub fn coverage(&self, window: i64) -> Coverage {
        let gens = |modes: Vec<i64>| -> Vec<GeneratorId> {
            let mut v = Vec::new();
            for k in modes {
                for i in 1..=2 {
                    for j in 1..=2 {
                        v.push(GeneratorId::new(i, j, k));
                    }
                }
            }
            v
        };
        let plus = gens((0..=window).collect());
        let minus = gens((-window - 1..=-1).collect());
        let mut cov = Coverage::default();
        let mut scan = |name: &str, xs: &[GeneratorId], ys: &[GeneratorId], same: bool| {
            let (mut hit, mut total) = (0, 0);
            for (a, x) in xs.iter().enumerate() {
                for (b, y) in ys.iter().enumerate() {
                    if same && b < a {
                        continue;
                    }
                    if x == y && x.parity() == 0 {
                        continue;
                    }
                    total += 1;
                    let ok = if x == y {
                        self.rules.contains_key(&(*x, *y))
                    } else {
                        self.rules.contains_key(&(*x, *y)) || self.rules.contains_key(&(*y, *x))
                    };
                    if ok {
                        hit += 1;
                    } else {
                        cov.uncovered.push(format!("{name}:{x}*{y}"));
                    }
                }
            }
            cov.covered.insert(name.to_string(), (hit, total));
        };
        scan("++", &plus, &plus, true);
        scan("--", &minus, &minus, true);
        scan("+-", &plus, &minus, false);
        cov
    }

    /// Largest pair weight a rule set built for `window` must handle.
    pub fn wmax_for_window(window: i64) -> i64 {
        2 * window + 3
    }

    /// Rules used for a given mode window.
    pub fn for_window(window: i64) -> Result<RuleSet> {
        if window < 0 {
            return Err(AlgebraError::Unsupported(format!("window {window}")));
        }
        RuleSet::synthesize(Self::wmax_for_window(window), MinusOrientation::LowerFirst)
    }

    pub fn halves_of(p: &Pair) -> (Half, Half) {
        (Half::of_mode(p.0.mode()), Half::of_mode(p.1.mode()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn certificates_recombine() {
        let rs = RuleSet::synthesize(3, MinusOrientation::HigherFirst).unwrap();
        assert!(!rs.is_empty());
        assert!(rs.degenerate.is_empty());
        assert!(rs.validate(|id| id.derive()).unwrap().is_empty());
    }

    #[test]
    fn plus_window_fully_covered() {
        let rs = RuleSet::for_window(1).unwrap();
        let cov = rs.coverage(1);
        assert_eq!(cov.covered["++"].0, cov.covered["++"].1, "{:?}", cov.uncovered);
        assert!(cov.is_complete(), "{:?}", cov.uncovered);
    }
}
