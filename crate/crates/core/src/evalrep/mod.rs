//! The evaluation module `V(a)`: every `t_ij(u)` becomes an exact 2×2
//! rational matrix built from the normalized R-matrix.

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::exactfield::{series_expand, sym, ExpansionPoint, RatFunc, Symbol};
use crate::gradedlinalg::{eta_twist, graded_permutation, index_parity, GradedMatrix, GradedSpace, QMat};
use crate::modealgebra::{AlgElem, GeneratorId, Half};
use crate::rmatrix::r_entry;
use crate::ring::{sign, Ring};
use crate::series::{Direction, TruncSeries};

/// Extra sign applied to the slice of `ħ𝒫/(u−a)` feeding `t_ij`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Twist {
    Plain,
    ParityProduct,
    RowParity,
    ColumnParity,
}

impl Twist {
    pub const CANDIDATES: [Twist; 4] = [Twist::Plain, Twist::ParityProduct, Twist::RowParity, Twist::ColumnParity];

    pub fn exponent(self, i: usize, j: usize) -> i64 {
        let (pi, pj) = (index_parity(i) as i64, index_parity(j) as i64);
        match self {
            Twist::Plain => 0,
            Twist::ParityProduct => pi * pj,
            Twist::RowParity => pi,
            Twist::ColumnParity => pj,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Twist::Plain => "plain",
            Twist::ParityProduct => "parity-product",
            Twist::RowParity => "row-parity",
            Twist::ColumnParity => "column-parity",
        }
    }
}

/// `T(u)` with operator entries on an `N`-dimensional quantum space.
#[derive(Clone, Debug, PartialEq)]
pub struct OpT<const N: usize> {
    pub entries: [[QMat<N>; 2]; 2],
}

impl<const N: usize> OpT<N> {
    /// Entry with 1-based indices.
    pub fn get(&self, i: usize, j: usize) -> &QMat<N> {
        &self.entries[i - 1][j - 1]
    }

    pub fn from_fn(f: impl Fn(usize, usize) -> QMat<N>) -> Self {
        OpT {
            entries: [[f(1, 1), f(1, 2)], [f(2, 1), f(2, 2)]],
        }
    }

    /// Replaces the spectral parameter `u` by `x`.
    pub fn at(&self, x: &RatFunc) -> Result<Self> {
        let mut out = self.clone();
        for row in out.entries.iter_mut() {
            for e in row.iter_mut() {
                *e = e.substitute(Symbol::U, x)?;
            }
        }
        Ok(out)
    }

    pub fn map(&self, f: impl Fn(&QMat<N>) -> Result<QMat<N>>) -> Result<Self> {
        let mut out = self.clone();
        for row in out.entries.iter_mut() {
            for e in row.iter_mut() {
                *e = f(e)?;
            }
        }
        Ok(out)
    }
}

/// The frozen evaluation representation at a point symbol.
#[derive(Clone, Debug)]
pub struct EvalRep {
    pub point: Symbol,
    pub twist: Twist,
    /// Candidates whose RTT residual vanished.
    pub working_twists: Vec<Twist>,
    pub t: OpT<2>,
}

/// `δ_ij I + ħ/(u−a) · (±) · slice_ij(𝒫)` for one twist.
pub fn eval_t(point: Symbol, twist: Twist) -> OpT<2> {
    let p = graded_permutation();
    let c = &sym::hbar() * &(&sym::u() - &RatFunc::var(point)).inv().expect("u - a is nonzero");
    OpT::from_fn(|i, j| {
        let s = sign(twist.exponent(i, j));
        QMat::from_fn(|k, l| {
            let mut x = r_entry(&p, i, k + 1, j, l + 1) * &c;
            x = &x * &s;
            if i == j && k == l {
                x = &x + &RatFunc::one();
            }
            x
        })
    })
}

/// `R(x) T₁(u) η T₂(v) η − η T₂(v) η T₁(u) R(x)` with operator entries.
pub fn rtt_residual_op<const N: usize>(tu: &OpT<N>, tv: &OpT<N>, x: &RatFunc) -> GradedMatrix<QMat<N>> {
    let space = GradedSpace::v_power(2);
    let t1 = GradedMatrix::from_fn(space.clone(), |r, c| {
        let (i, k, j, l) = (r / 2 + 1, r % 2, c / 2 + 1, c % 2);
        if k == l {
            tu.get(i, j).clone()
        } else {
            QMat::zero()
        }
    });
    let eta = eta_twist();
    let t2 = GradedMatrix::from_fn(space.clone(), |r, c| {
        let (i, k, j, l) = (r / 2, r % 2 + 1, c / 2, c % 2 + 1);
        if i == j {
            tv.get(k, l).scale(&(eta.get(r, r) * eta.get(c, c)))
        } else {
            QMat::zero()
        }
    });
    let p = graded_permutation();
    let rm = GradedMatrix::from_fn(space, |r, c| {
        let mut e = p.get(r, c) * &sym::hbar();
        if r == c {
            e = &e + x;
        }
        QMat::from_scalar(&e)
    });
    let lhs = rm.mul(&t1).mul(&t2);
    let rhs = t2.mul(&t1).mul(&rm);
    lhs.sub(&rhs)
}

/// The RTT residual of `T` against itself at `u` and `v`.
pub fn rtt_residual_eval<const N: usize>(t: &OpT<N>) -> Result<GradedMatrix<QMat<N>>> {
    let tv = t.at(&sym::v())?;
    Ok(rtt_residual_op(t, &tv, &(&sym::u() - &sym::v())))
}

/// Searches the candidate twists and freezes the one with vanishing RTT residual.
pub fn make_eval_rep(point: Symbol) -> Result<EvalRep> {
    if !matches!(point, Symbol::A | Symbol::B) {
        return Err(AlgebraError::Unsupported(format!("evaluation point {point}")));
    }
    let mut working = Vec::new();
    for tw in Twist::CANDIDATES {
        let t = eval_t(point, tw);
        if rtt_residual_eval(&t)?.is_zero() {
            working.push(tw);
        }
    }
    let twist = *working.first().ok_or(AlgebraError::ConventionSearchFailed)?;
    Ok(EvalRep {
        point,
        twist,
        t: eval_t(point, twist),
        working_twists: working,
    })
}

pub fn expansion_point(dir: Direction) -> ExpansionPoint {
    match dir {
        Direction::AtInfinity => ExpansionPoint::Infinity,
        Direction::AtZero => ExpansionPoint::Zero,
    }
}

pub fn half_direction(h: Half) -> Direction {
    match h {
        Half::Plus => Direction::AtInfinity,
        Half::Minus => Direction::AtZero,
    }
}

/// Entrywise expansion of a rational operator in `u`.
pub fn expand_qmat<const N: usize>(m: &QMat<N>, dir: Direction, order: usize) -> Result<TruncSeries<QMat<N>>> {
    let mut cols: Vec<TruncSeries<RatFunc>> = Vec::with_capacity(N * N);
    for x in m.entries() {
        cols.push(series_expand(x, Symbol::U, expansion_point(dir), order)?);
    }
    let mut exps: Vec<i64> = cols.iter().flat_map(|s| s.coeffs().map(|(e, _)| e).collect::<Vec<_>>()).collect();
    exps.sort();
    exps.dedup();
    let mut terms = Vec::new();
    for e in exps {
        // every entry shares the same precision, so unknown means beyond all of them
        let c = QMat::from_fn(|r, c| cols[r * N + c].coeff(e).unwrap_or_else(|_| RatFunc::zero()));
        terms.push((e, c));
    }
    Ok(TruncSeries::truncated(dir, Symbol::U, order, terms))
}

/// Image of a mode generator, read off from the expansion of `ρ(t_ij(u))`.
pub fn generator_image(rep: &EvalRep, g: GeneratorId) -> Result<QMat<2>> {
    let (i, j) = (g.i as usize, g.j as usize);
    let k = g.mode();
    let half = Half::of_mode(k);
    let order = k.unsigned_abs() as usize + 1;
    let s = expand_qmat(rep.t.get(i, j), half_direction(half), order)?;
    let mut c = s.extract_mode(k)?;
    if k == -1 && i == j {
        c = c.minus(&QMat::identity());
    }
    let f = match half {
        Half::Plus => -&sym::hbar(),
        Half::Minus => sym::hbar(),
    };
    Ok(c.scale(&f.inv()?))
}

/// Maps a free-algebra element through the representation.
pub fn represent(rep: &EvalRep, x: &AlgElem) -> Result<QMat<2>> {
    let mut cache = std::collections::HashMap::new();
    for (w, _) in x.terms() {
        for g in &w.0 {
            if !cache.contains_key(g) {
                cache.insert(*g, generator_image(rep, *g)?);
            }
        }
    }
    Ok(x.substitute(&|g| cache[&g].clone()))
}

/// `ρ(t)` at `ħ = 0`, which must be `δ_ij I`.
pub fn classical_limit(rep: &EvalRep) -> Result<OpT<2>> {
    rep.t.map(|m| m.substitute(Symbol::Hbar, &RatFunc::zero()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn search_finds_unique_twist() {
        let rep = make_eval_rep(Symbol::A).unwrap();
        assert_eq!(rep.twist, Twist::Plain);
        assert_eq!(rep.working_twists, vec![Twist::Plain]);
    }

    #[test]
    fn normalization_and_classical_limit() {
        let rep = make_eval_rep(Symbol::A).unwrap();
        let s = expand_qmat(rep.t.get(1, 1), Direction::AtInfinity, 2).unwrap();
        assert_eq!(s.coeff(0).unwrap(), QMat::identity());
        let cl = classical_limit(&rep).unwrap();
        assert_eq!(*cl.get(1, 1), QMat::identity());
        assert!(cl.get(1, 2).is_zero());
    }

    #[test]
    fn generator_images_are_uniform() {
        let rep = make_eval_rep(Symbol::A).unwrap();
        for k in -3..=3 {
            let x = generator_image(&rep, GeneratorId::new(1, 2, k)).unwrap();
            let expect = QMat::unit(2, 1).scale(&-&sym::a().pow(k as i32).unwrap());
            assert_eq!(x, expect, "k = {k}");
        }
        let x = generator_image(&rep, GeneratorId::new(1, 1, -1)).unwrap();
        assert_eq!(x, QMat::unit(1, 1).scale(&-&sym::a().inv().unwrap()));
        let x = generator_image(&rep, GeneratorId::new(2, 2, 1)).unwrap();
        assert_eq!(x, QMat::unit(2, 2).scale(&sym::a()));
    }

    #[test]
    fn bad_point_rejected() {
        assert!(make_eval_rep(Symbol::U).is_err());
    }
}
