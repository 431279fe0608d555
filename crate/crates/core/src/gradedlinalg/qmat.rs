use std::fmt;

use super::{GradedMatrix, GradedSpace};
use crate::error::{AlgebraError, Result};
use crate::exactfield::{RatFunc, Symbol};
use crate::ring::Ring;

/// Operator on the quantum space V (`N = 2`) or V⊗V (`N = 4`) with
/// rational-function entries. Used as the coefficient ring of the
/// evaluation representations.
#[derive(Clone, Debug, PartialEq)]
pub struct QMat<const N: usize>(GradedMatrix<RatFunc>);

fn space_of(n: usize) -> GradedSpace {
    match n {
        2 => GradedSpace::v(),
        4 => GradedSpace::v_power(2),
        8 => GradedSpace::v_power(3),
        _ => GradedSpace::new((0..n).map(|i| (i % 2) as u8).collect()),
    }
}

impl<const N: usize> QMat<N> {
    pub fn from_fn(f: impl Fn(usize, usize) -> RatFunc) -> Self {
        QMat(GradedMatrix::from_fn(space_of(N), f))
    }

    pub fn from_matrix(m: GradedMatrix<RatFunc>) -> Self {
        assert_eq!(m.dim(), N);
        QMat(m)
    }

    pub fn matrix(&self) -> &GradedMatrix<RatFunc> {
        &self.0
    }

    pub fn identity() -> Self {
        QMat(GradedMatrix::identity(space_of(N)))
    }

    /// Matrix unit with 1-based indices.
    pub fn unit(i: usize, j: usize) -> Self {
        Self::from_fn(|r, c| {
            if r + 1 == i && c + 1 == j {
                RatFunc::one()
            } else {
                RatFunc::zero()
            }
        })
    }

    pub fn diag(d: &[RatFunc]) -> Self {
        Self::from_fn(|r, c| if r == c { d[r].clone() } else { RatFunc::zero() })
    }

    pub fn get(&self, r: usize, c: usize) -> &RatFunc {
        self.0.get(r, c)
    }

    /// Part linking basis vectors whose parities differ by `p`.
    pub fn graded_part(&self, p: u8) -> Self {
        let s = self.0.space();
        Self::from_fn(|r, c| {
            if (s.parity(r) + s.parity(c)) % 2 == p {
                self.get(r, c).clone()
            } else {
                RatFunc::zero()
            }
        })
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Self> {
        let mut a: Vec<Vec<RatFunc>> = (0..N).map(|r| (0..N).map(|c| self.get(r, c).clone()).collect()).collect();
        let mut inv: Vec<Vec<RatFunc>> = (0..N)
            .map(|r| (0..N).map(|c| if r == c { RatFunc::one() } else { RatFunc::zero() }).collect())
            .collect();
        for col in 0..N {
            let piv = (col..N).find(|&r| !a[r][col].is_zero()).ok_or(AlgebraError::NotInvertible)?;
            a.swap(col, piv);
            inv.swap(col, piv);
            let p = a[col][col].inv()?;
            for c in 0..N {
                a[col][c] = &a[col][c] * &p;
                inv[col][c] = &inv[col][c] * &p;
            }
            for r in 0..N {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for c in 0..N {
                    let x = &a[col][c] * &f;
                    a[r][c] = &a[r][c] - &x;
                    let y = &inv[col][c] * &f;
                    inv[r][c] = &inv[r][c] - &y;
                }
            }
        }
        Ok(Self::from_fn(|r, c| inv[r][c].clone()))
    }

    pub fn substitute(&self, s: Symbol, value: &RatFunc) -> Result<Self> {
        Ok(QMat(self.0.try_map(|x| x.substitute(s, value))?))
    }

    pub fn substitute_many(&self, subs: &[(Symbol, RatFunc)]) -> Result<Self> {
        Ok(QMat(self.0.try_map(|x| x.substitute_many(subs))?))
    }

    pub fn entries(&self) -> &[RatFunc] {
        self.0.entries()
    }

    /// Multiplies every entry by the common denominator-free scalar `c`.
    pub fn map_entries(&self, f: impl Fn(&RatFunc) -> RatFunc) -> Self {
        QMat(self.0.map(f))
    }
}

impl<const N: usize> Ring for QMat<N> {
    fn zero() -> Self {
        QMat(GradedMatrix::zero(space_of(N)))
    }
    fn one() -> Self {
        Self::identity()
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        QMat(self.0.add(&other.0))
    }
    fn negated(&self) -> Self {
        QMat(self.0.map(|x| -x))
    }
    fn times(&self, other: &Self) -> Self {
        QMat(self.0.mul(&other.0))
    }
    fn scale(&self, c: &RatFunc) -> Self {
        QMat(self.0.scale(c))
    }
    fn minus(&self, other: &Self) -> Self {
        QMat(self.0.sub(&other.0))
    }
    fn try_inverse(&self) -> Option<Self> {
        self.inverse().ok()
    }
    fn parity(&self) -> Option<u8> {
        self.0.block_parity().ok()
    }
}

/// Koszul tensor of operators on V: `(A⊗B)(x⊗y) = (-1)^{p(B)p(x)} Ax⊗By`,
/// extended linearly over the even and odd parts of `B`.
pub fn graded_kron_q(a: &QMat<2>, b: &QMat<2>) -> QMat<4> {
    let parity = |i: usize| (i % 2) as u8;
    let b_odd = b.graded_part(1);
    QMat::from_fn(|r, c| {
        let (i, k) = (r / 2, r % 2);
        let (j, l) = (c / 2, c % 2);
        let x = a.get(i, j);
        if x.is_zero() {
            return RatFunc::zero();
        }
        let y = b.get(k, l);
        let v = x * y;
        if parity(j) == 1 && !b_odd.get(k, l).is_zero() {
            -v
        } else {
            v
        }
    })
}

impl<const N: usize> fmt::Display for QMat<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::sym::*;

    #[test]
    fn inverse_roundtrip() {
        let m = QMat::<2>::from_fn(|r, c| match (r, c) {
            (0, 0) => &u() + &hbar(),
            (0, 1) => hbar(),
            (1, 0) => a(),
            _ => u(),
        });
        let inv = m.inverse().unwrap();
        assert_eq!(m.times(&inv), QMat::identity());
        assert_eq!(inv.times(&m), QMat::identity());
        assert!(QMat::<2>::unit(1, 2).inverse().is_err());
    }

    #[test]
    fn koszul_product_rule() {
        // (A⊗B)(C⊗D) = (-1)^{p(B)p(C)} AC⊗BD on homogeneous operators
        let ops = [QMat::<2>::unit(1, 1), QMat::unit(1, 2), QMat::unit(2, 1), QMat::unit(2, 2)];
        for x in &ops {
            for y in &ops {
                for z in &ops {
                    for w in &ops {
                        let lhs = graded_kron_q(x, y).times(&graded_kron_q(z, w));
                        let s = (y.parity().unwrap() * z.parity().unwrap()) as i64;
                        let rhs = graded_kron_q(&x.times(z), &y.times(w)).scale(&crate::ring::sign(s));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }
}
