//! Coproduct, counit and antipode of the generating matrices, the Hopf
//! axioms, and the coproducts of the Drinfeld currents.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::evalrep::{EvalRep, OpT};
use crate::exactfield::{sym, RatFunc, Symbol};
use crate::gradedlinalg::{graded_kron_q, invert_2x2, supertranspose, GradedMatrix, GradedSpace, QMat};
use crate::modealgebra::{generator_parity, AlgElem, GeneratorId, Half, NormalStatus, RuleSet, SignPair};
use crate::rmatrix::{r_at, Permutation};
use crate::ring::{sign, Ring};
use crate::rtt::{direction_of, generating_series, rtt_residual_series, ReductionSummary};
use crate::series::TruncSeries;

mod currents;
mod tensor;

pub use currents::*;
pub use tensor::*;

/// Whether the coproduct carries the grading sign `(−1)^{(k+i)(k+j)}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CoproductSign {
    Printed,
    /// Negative control.
    Dropped,
}

impl CoproductSign {
    pub fn factor(self, i: usize, j: usize, k: usize) -> RatFunc {
        match self {
            CoproductSign::Printed => sign(((k + i) * (k + j)) as i64),
            CoproductSign::Dropped => RatFunc::one(),
        }
    }
}

/// `Δt_ij(u) = Σ_k (−1)^{(k+i)(k+j)} t_kj(u) ⊗ t_ik(u)` as a series in `u`.
pub fn coproduct(i: usize, j: usize, half: Half, order: usize, sgn: CoproductSign) -> TruncSeries<TensorElem> {
    let one = AlgElem::one();
    let mut acc = TruncSeries::<TensorElem>::zero();
    for k in 1..=2 {
        let left = generating_series(half, k, j, Symbol::U, order).map(|c| Tensor::pure([c, &one]));
        let right = generating_series(half, i, k, Symbol::U, order).map(|c| Tensor::pure([&one, c]));
        acc = acc.plus(&left.times(&right).scale(&sgn.factor(i, j, k)));
    }
    acc
}

/// `Δ` of a single mode generator, read off the series coproduct.
pub fn coproduct_gen(g: GeneratorId, sgn: CoproductSign) -> Result<TensorElem> {
    let (i, j) = (g.i as usize, g.j as usize);
    let k = g.mode();
    let half = Half::of_mode(k);
    let s = coproduct(i, j, half, k.unsigned_abs() as usize + 1, sgn);
    let mut c = s.extract_mode(k)?;
    if k == -1 && i == j {
        c = c.minus(&TensorElem::one());
    }
    let f = match half {
        Half::Plus => -&sym::hbar(),
        Half::Minus => sym::hbar(),
    };
    Ok(c.scale(&f.inv()?))
}

/// Memoized coproduct extended multiplicatively to words.
pub struct Coproduct {
    sgn: CoproductSign,
    cache: HashMap<GeneratorId, TensorElem>,
}

impl Coproduct {
    pub fn new(sgn: CoproductSign) -> Self {
        Coproduct {
            sgn,
            cache: HashMap::new(),
        }
    }

    fn gen(&mut self, g: GeneratorId) -> Result<TensorElem> {
        if let Some(x) = self.cache.get(&g) {
            return Ok(x.clone());
        }
        let x = coproduct_gen(g, self.sgn)?;
        self.cache.insert(g, x.clone());
        Ok(x)
    }

    pub fn of_word(&mut self, w: &crate::modealgebra::Word) -> Result<TensorElem> {
        let mut acc = TensorElem::one();
        for g in &w.0 {
            acc = acc.times(&self.gen(*g)?);
        }
        Ok(acc)
    }

    pub fn apply(&mut self, x: &AlgElem) -> Result<TensorElem> {
        let mut acc = TensorElem::zero();
        for (w, c) in x.terms() {
            acc = acc.plus(&self.of_word(w)?.scale(c));
        }
        Ok(acc)
    }
}

/// `ε` on the free mode algebra: every generator goes to zero.
pub fn counit(x: &AlgElem) -> RatFunc {
    x.scalar_part()
}

/// `ε(t_ij(u)) = δ_ij` on a generating series.
pub fn counit_series(s: &TruncSeries<AlgElem>) -> TruncSeries<RatFunc> {
    s.map(counit)
}

/// Generators `t[i,j;k]` with `−window−1 ≤ k ≤ window`.
pub fn window_generators(window: i64) -> Vec<GeneratorId> {
    let mut v = Vec::new();
    for k in -window - 1..=window {
        for i in 1..=2 {
            for j in 1..=2 {
                v.push(GeneratorId::new(i, j, k));
            }
        }
    }
    v
}

/// Counit axioms on every generator of the window; returns the offenders.
pub fn counit_axiom_failures(window: i64) -> Result<Vec<String>> {
    let mut bad = Vec::new();
    for g in window_generators(window) {
        let d = coproduct_gen(g, CoproductSign::Printed)?;
        let x = AlgElem::gen(g);
        if d.counit_left() != x {
            bad.push(format!("(ε⊗id)Δ{g}"));
        }
        if d.counit_right() != x {
            bad.push(format!("(id⊗ε)Δ{g}"));
        }
    }
    Ok(bad)
}

/// Coassociativity on every generator of the window; returns the offenders.
pub fn coassociativity_failures(window: i64) -> Result<Vec<String>> {
    let gens = window_generators(window);
    let res: Result<Vec<Option<String>>> = gens
        .par_iter()
        .map(|g| {
            let mut cp = Coproduct::new(CoproductSign::Printed);
            let d = cp.gen(*g)?;
            let mut err = None;
            let mut f = |w: &crate::modealgebra::Word| match cp.of_word(w) {
                Ok(x) => x,
                Err(e) => {
                    err = Some(e);
                    TensorElem::zero()
                }
            };
            let left = d.expand_left(&mut f);
            let right = d.expand_right(&mut f);
            if let Some(e) = err {
                return Err(e);
            }
            Ok((left != right).then(|| g.to_string()))
        })
        .collect();
    Ok(res?.into_iter().flatten().collect())
}

fn mat_of<R: Ring>(m: [[R; 2]; 2]) -> GradedMatrix<R> {
    GradedMatrix::from_fn(GradedSpace::v(), |r, c| m[r][c].clone())
}

/// `S(stT) = (stT)⁻¹` on `V(a)`; returns `(stT, S(stT))`.
pub fn antipode_eval(rep: &EvalRep) -> Result<(GradedMatrix<QMat<2>>, GradedMatrix<QMat<2>>)> {
    let st = supertranspose(&mat_of(rep.t.entries.clone()));
    let s = invert_2x2(&st, |x| x.inverse())?;
    Ok((st, s))
}

pub type AntipodePair = (GradedMatrix<TruncSeries<AlgElem>>, GradedMatrix<TruncSeries<AlgElem>>);

/// Antipode of the `+` half at `order`: `(stT, S(stT))`.
pub fn antipode_series(order: usize) -> Result<AntipodePair> {
    let t = crate::rtt::build_generating_matrix(Half::Plus, order);
    let st = supertranspose(&mat_of(t.entries));
    let s = invert_2x2(&st, |x| x.invert())?;
    Ok((st, s))
}

/// Entries of `S·stT − 1` and `stT·S − 1` that are nonzero at a known order.
pub fn antipode_defect_series(order: usize) -> Result<Vec<String>> {
    let (st, s) = antipode_series(order)?;
    let id = GradedMatrix::<TruncSeries<AlgElem>>::identity(GradedSpace::v());
    let mut bad = Vec::new();
    for (name, p) in [("S·stT", s.mul(&st)), ("stT·S", st.mul(&s))] {
        let d = p.sub(&id);
        for r in 0..2 {
            for c in 0..2 {
                for (e, x) in d.get(r, c).coeffs() {
                    if !x.is_zero() {
                        bad.push(format!("{name} ({},{}) u^{e}", r + 1, c + 1));
                    }
                }
            }
        }
    }
    Ok(bad)
}

/// The `Δ`-image of `T` on `V(a)⊗V(b)`.
pub fn delta_image(rep_a: &EvalRep, rep_b: &EvalRep, sgn: CoproductSign) -> OpT<4> {
    OpT::from_fn(|i, j| {
        let mut acc = QMat::<4>::zero();
        for k in 1..=2 {
            let x = graded_kron_q(rep_a.t.get(k, j), rep_b.t.get(i, k));
            acc = acc.plus(&x.scale(&sgn.factor(i, j, k)));
        }
        acc
    })
}

/// Two evaluation modules at distinct points.
pub fn eval_pair(a: Symbol, b: Symbol) -> Result<(EvalRep, EvalRep)> {
    if a == b {
        return Err(AlgebraError::NonGeneric(format!("both points are {a}")));
    }
    Ok((crate::evalrep::make_eval_rep(a)?, crate::evalrep::make_eval_rep(b)?))
}

/// RTT residual of the `Δ`-image on `V(a)⊗V(b)`.
pub fn homomorphism_residual_eval(sgn: CoproductSign) -> Result<GradedMatrix<QMat<4>>> {
    let (ra, rb) = eval_pair(Symbol::A, Symbol::B)?;
    let d = delta_image(&ra, &rb, sgn);
    crate::evalrep::rtt_residual_eval(&d)
}

/// RTT relation for `ΔT` in the tensor square, every coefficient reduced
/// factorwise to normal form.
pub fn coproduct_homomorphism_residual(
    pair: SignPair,
    order: usize,
    rules: &RuleSet,
    sgn: CoproductSign,
) -> Result<ReductionSummary> {
    let (hs, hr) = pair.halves();
    let build = |half: Half, var: Symbol| -> [[TruncSeries<TensorElem>; 2]; 2] {
        let e = |i, j| {
            let s = coproduct(i, j, half, order, sgn);
            if var == Symbol::U {
                s
            } else {
                rename_var(&s, var)
            }
        };
        [[e(1, 1), e(1, 2)], [e(2, 1), e(2, 2)]]
    };
    let tu = build(hs, Symbol::U);
    let tv = build(hr, Symbol::V);
    let res = rtt_residual_series(&tu, &tv, direction_of(hs), direction_of(hr));
    let cells: Vec<(usize, usize)> = (0..4).flat_map(|r| (0..4).map(move |c| (r, c))).collect();
    let parts: Vec<ReductionSummary> = cells
        .par_iter()
        .map(|&(r, c)| {
            let (i, k, j, l) = (r / 2 + 1, r % 2 + 1, c / 2 + 1, c % 2 + 1);
            let p = (generator_parity(i, j) + generator_parity(k, l)) % 2;
            let mut s = ReductionSummary::default();
            for (eu, inner) in res.get(r, c).coeffs() {
                for (ev, x) in inner.coeffs() {
                    if x.max_weight() > rules.wmax {
                        s.skipped += 1;
                        continue;
                    }
                    s.checked += 1;
                    if !x.is_zero() && Ring::parity(x) != Some(p) {
                        s.parity_violations += 1;
                    }
                    let (y, st) = x.normal_form(rules);
                    if st == NormalStatus::Inconclusive {
                        s.inconclusive += 1;
                    } else if !y.is_zero() {
                        s.nonzero += 1;
                        if s.witnesses.len() < 3 {
                            s.witnesses.push(format!("entry ({i}{k},{j}{l}) u^{eu} v^{ev}: {y}"));
                        }
                    }
                }
            }
            s
        })
        .collect();
    let mut total = ReductionSummary::default();
    for p in parts {
        total.merge(p);
    }
    Ok(total)
}

fn rename_var<R: Ring>(s: &TruncSeries<R>, var: Symbol) -> TruncSeries<R> {
    let terms: Vec<(i64, R)> = s.coeffs().map(|(e, c)| (e, c.clone())).collect();
    match s.order() {
        Some(n) => TruncSeries::truncated(s.direction(), var, n as usize, terms),
        None => TruncSeries::exact(s.direction(), var, terms),
    }
}

/// The pairing `⟨T⁺₁(u), T⁻₂(v)⟩ = R(u−v)`, stored as a constant.
#[derive(Clone, Debug, PartialEq)]
pub struct PairingConstant {
    pub matrix: GradedMatrix<RatFunc>,
}

impl PairingConstant {
    pub fn new() -> Self {
        PairingConstant {
            matrix: r_at(&(&sym::u() - &sym::v()), Permutation::Graded),
        }
    }
}

impl Default for PairingConstant {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_t11_low_mode() {
        let d = coproduct_gen(GeneratorId::new(1, 1, 0), CoproductSign::Printed).unwrap();
        let one = AlgElem::one();
        let g = AlgElem::t(1, 1, 0);
        assert_eq!(d, Tensor::pure([&g, &one]).plus(&Tensor::pure([&one, &g])));
        let d1 = coproduct_gen(GeneratorId::new(1, 1, 1), CoproductSign::Printed).unwrap();
        // the t21 ⊗ t12 term enters with a minus sign
        let x = Tensor::pure([&AlgElem::t(2, 1, 0), &AlgElem::t(1, 2, 0)]);
        let key = x.terms().next().unwrap().0.clone();
        assert_eq!(d1.coeff(&key), sym::hbar());
        let key11 = Tensor::pure([&g, &g]).terms().next().unwrap().0.clone();
        assert_eq!(d1.coeff(&key11), -&sym::hbar());
    }

    #[test]
    fn counit_values() {
        let t = crate::rtt::build_generating_matrix(Half::Plus, 3);
        assert_eq!(counit_series(&t.entries[0][0]).coeff(0).unwrap(), RatFunc::one());
        assert!(counit_series(&t.entries[0][1]).is_zero());
        assert!(counit(&AlgElem::t(1, 1, 0).times(&AlgElem::t(2, 2, 1))).is_zero());
    }

    #[test]
    fn hopf_axioms_window_1() {
        assert!(counit_axiom_failures(1).unwrap().is_empty());
        assert!(coassociativity_failures(1).unwrap().is_empty());
        assert!(antipode_defect_series(3).unwrap().is_empty());
    }

    #[test]
    fn antipode_eval_inverse() {
        let rep = crate::evalrep::make_eval_rep(Symbol::A).unwrap();
        let (st, s) = antipode_eval(&rep).unwrap();
        let id = GradedMatrix::<QMat<2>>::identity(GradedSpace::v());
        assert_eq!(s.mul(&st), id);
        assert_eq!(st.mul(&s), id);
    }

    #[test]
    fn eval_homomorphism_and_control() {
        assert!(homomorphism_residual_eval(CoproductSign::Printed).unwrap().is_zero());
        assert!(!homomorphism_residual_eval(CoproductSign::Dropped).unwrap().is_zero());
    }

    #[test]
    fn symbolic_homomorphism_window_1() {
        let rules = RuleSet::for_window(1).unwrap();
        let s = coproduct_homomorphism_residual(SignPair::PlusPlus, 4, &rules, CoproductSign::Printed).unwrap();
        assert!(s.all_zero(), "{s:?}");
    }

    #[test]
    fn non_generic_points() {
        assert!(matches!(eval_pair(Symbol::A, Symbol::A), Err(AlgebraError::NonGeneric(_))));
    }
}
