//! The rational R-matrix `R(u) = uI + ħ𝒫` and the graded Yang-Baxter equation.

use std::collections::HashMap;

use crate::error::{AlgebraError, Result};
use crate::exactfield::{sym, Rat, RatFunc, Symbol};
use crate::gradedlinalg::{eta_twist, graded_permutation, ungraded_permutation, GradedMatrix, GradedSpace};

/// Which permutation operator the R-matrix is built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Permutation {
    Graded,
    /// The plain flip; used only as a negative control.
    Ungraded,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RMatrix {
    pub matrix: GradedMatrix<RatFunc>,
    pub symbol: Symbol,
}

/// `x I + ħ 𝒫` for an arbitrary spectral argument `x`.
pub fn r_at(x: &RatFunc, perm: Permutation) -> GradedMatrix<RatFunc> {
    let p = match perm {
        Permutation::Graded => graded_permutation(),
        Permutation::Ungraded => ungraded_permutation(),
    };
    GradedMatrix::identity(GradedSpace::v_power(2))
        .scale(x)
        .add(&p.scale(&sym::hbar()))
}

pub fn build_r(var: Symbol) -> RMatrix {
    RMatrix {
        matrix: r_at(&RatFunc::var(var), Permutation::Graded),
        symbol: var,
    }
}

/// Entry `R_{ab,cd}` with 1-based indices.
pub fn r_entry(m: &GradedMatrix<RatFunc>, a: usize, b: usize, c: usize, d: usize) -> &RatFunc {
    m.get((a - 1) * 2 + (b - 1), (c - 1) * 2 + (d - 1))
}

/// Embeds an operator on V⊗V into V⊗V⊗V acting on factors `s < t`, without signs.
pub fn embed(m: &GradedMatrix<RatFunc>, s: usize, t: usize) -> GradedMatrix<RatFunc> {
    let o = (0..3).find(|x| *x != s && *x != t).expect("three factors");
    let digits = |i: usize| [(i >> 2) & 1, (i >> 1) & 1, i & 1];
    GradedMatrix::from_fn(GradedSpace::v_power(3), |r, c| {
        let (a, b) = (digits(r), digits(c));
        if a[o] != b[o] {
            return RatFunc::zero();
        }
        m.get(a[s] * 2 + a[t], b[s] * 2 + b[t]).clone()
    })
}

/// `diag((-1)^{p(a_s) p(a_t)})` on V⊗V⊗V.
pub fn eta_embedded(s: usize, t: usize) -> GradedMatrix<RatFunc> {
    let eta = eta_twist();
    embed(&eta, s, t)
}

fn ybe_sides(perm: Permutation) -> (GradedMatrix<RatFunc>, GradedMatrix<RatFunc>) {
    let (u, v) = (sym::u(), sym::v());
    let r12 = eta_embedded(0, 1).mul(&embed(&r_at(&u, perm), 0, 1));
    let r13 = eta_embedded(0, 2).mul(&embed(&r_at(&(&u + &v), perm), 0, 2));
    let r23 = eta_embedded(1, 2).mul(&embed(&r_at(&v, perm), 1, 2));
    let lhs = r12.mul(&r13).mul(&r23);
    let rhs = r23.mul(&r13).mul(&r12);
    (lhs, rhs)
}

/// LHS − RHS of the matrix-form super Yang-Baxter equation (8×8).
pub fn ybe_residual() -> GradedMatrix<RatFunc> {
    ybe_residual_with(Permutation::Graded)
}

pub fn ybe_residual_with(perm: Permutation) -> GradedMatrix<RatFunc> {
    let (l, r) = ybe_sides(perm);
    l.sub(&r)
}

fn sgn(e: usize) -> RatFunc {
    if e.is_multiple_of(2) {
        RatFunc::one()
    } else {
        RatFunc::int(-1)
    }
}

/// Component form for free indices `(i,b,a,j,d,c)`, summing `p,r,s` on the
/// left and `e,f,k` on the right.
pub fn ybe_component_residual(idx: [usize; 6]) -> Result<RatFunc> {
    ybe_component_residual_with(idx, Permutation::Graded)
}

pub fn ybe_component_residual_with(idx: [usize; 6], perm: Permutation) -> Result<RatFunc> {
    if idx.iter().any(|&x| !(1..=2).contains(&x)) {
        return Err(AlgebraError::IndexOutOfRange(format!("{idx:?}")));
    }
    let [i, b, a, j, d, c] = idx;
    let (u, v) = (sym::u(), sym::v());
    let ru = r_at(&u, perm);
    let ruv = r_at(&(&u + &v), perm);
    let rv = r_at(&v, perm);
    let mut lhs = RatFunc::zero();
    let mut rhs = RatFunc::zero();
    for x in 1..=2 {
        for y in 1..=2 {
            for z in 1..=2 {
                // left: p = x, r = y, s = z
                let t = &(&(r_entry(&ru, i, b, x, y) * r_entry(&ruv, x, a, j, z)) * r_entry(&rv, y, z, d, c))
                    * &sgn((y - 1) * (z + a));
                lhs = &lhs + &t;
                // right: e = x, f = y, k = z
                let t = &(&(r_entry(&rv, b, a, x, y) * r_entry(&ruv, i, y, z, c)) * r_entry(&ru, z, x, j, d))
                    * &sgn((x - 1) * (y + c));
                rhs = &rhs + &t;
            }
        }
    }
    Ok(&lhs - &rhs)
}

/// All 64 index tuples in lexicographic order.
pub fn all_component_indices() -> Vec<[usize; 6]> {
    (0..64)
        .map(|n| {
            let mut t = [0usize; 6];
            for (pos, x) in t.iter_mut().enumerate() {
                *x = ((n >> (5 - pos)) & 1) + 1;
            }
            t
        })
        .collect()
}

/// Sum of absolute values of all component residuals at a rational point.
pub fn component_abs_sum_at(point: &HashMap<Symbol, Rat>, perm: Permutation) -> Result<Rat> {
    let mut total = Rat::from_integer(0.into());
    for idx in all_component_indices() {
        let r = ybe_component_residual_with(idx, perm)?.eval(point)?;
        total += if r < Rat::from_integer(0.into()) { -r } else { r };
    }
    Ok(total)
}

/// `i + j != k + l` entries of `R` (1-based `(i,j),(k,l)`) that are nonzero.
pub fn weight_violations(m: &GradedMatrix<RatFunc>) -> Vec<(usize, usize, usize, usize)> {
    let mut out = Vec::new();
    for i in 1..=2 {
        for j in 1..=2 {
            for k in 1..=2 {
                for l in 1..=2 {
                    if i + j != k + l && !r_entry(m, i, j, k, l).is_zero() {
                        out.push((i, j, k, l));
                    }
                }
            }
        }
    }
    out
}

/// `R(u) R(-u) - (ħ² - u²) I`.
pub fn unitarity_residual() -> GradedMatrix<RatFunc> {
    let u = sym::u();
    let prod = r_at(&u, Permutation::Graded).mul(&r_at(&-&u, Permutation::Graded));
    let c = &(&sym::hbar() * &sym::hbar()) - &(&u * &u);
    prod.sub(&GradedMatrix::identity(GradedSpace::v_power(2)).scale(&c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::assignment;

    #[test]
    fn entries_of_r() {
        let r = build_r(Symbol::U).matrix;
        assert_eq!(*r_entry(&r, 1, 1, 1, 1), &sym::u() + &sym::hbar());
        assert_eq!(*r_entry(&r, 2, 2, 2, 2), &sym::u() - &sym::hbar());
        assert_eq!(*r_entry(&r, 1, 2, 1, 2), sym::u());
        assert_eq!(*r_entry(&r, 1, 2, 2, 1), sym::hbar());
        assert_eq!(*r_entry(&r, 2, 1, 1, 2), sym::hbar());
    }

    #[test]
    fn r_at_zero_is_hbar_p() {
        let r0 = r_at(&RatFunc::zero(), Permutation::Graded);
        assert_eq!(r0, graded_permutation().scale(&sym::hbar()));
    }

    #[test]
    fn matrix_ybe_vanishes() {
        assert!(ybe_residual().is_zero());
    }

    #[test]
    fn ungraded_control_breaks_ybe() {
        assert!(!ybe_residual_with(Permutation::Ungraded).is_zero());
    }

    #[test]
    fn component_examples() {
        assert!(ybe_component_residual([1; 6]).unwrap().is_zero());
        assert!(ybe_component_residual([1, 2, 2, 1, 2, 2]).unwrap().is_zero());
        assert!(ybe_component_residual([1, 3, 1, 1, 1, 1]).is_err());
        let pt = assignment(&[(Symbol::U, 2), (Symbol::V, 3), (Symbol::Hbar, 1)]);
        assert_eq!(component_abs_sum_at(&pt, Permutation::Graded).unwrap(), Rat::from_integer(0.into()));
        assert!(component_abs_sum_at(&pt, Permutation::Ungraded).unwrap() > Rat::from_integer(0.into()));
    }

    #[test]
    fn weight_unitarity_difference() {
        assert!(weight_violations(&build_r(Symbol::U).matrix).is_empty());
        assert!(unitarity_residual().is_zero());
        let diff = build_r(Symbol::U).matrix.sub(&build_r(Symbol::V).matrix);
        let expect = GradedMatrix::identity(GradedSpace::v_power(2)).scale(&(&sym::u() - &sym::v()));
        assert_eq!(diff, expect);
    }
}
