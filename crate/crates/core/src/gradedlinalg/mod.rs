//! Z2-graded spaces and matrices, the sign twist and the graded permutation.

mod qmat;

pub use qmat::{graded_kron_q, QMat};

use std::fmt;

use crate::error::{AlgebraError, Result};
use crate::exactfield::RatFunc;
use crate::ring::Ring;

/// Parity of a basis index of V (1-based): the second basis vector is odd.
pub fn index_parity(i: usize) -> u8 {
    ((i + 1) % 2) as u8
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSpace {
    parity: Vec<u8>,
}

impl GradedSpace {
    pub fn new(parity: Vec<u8>) -> Self {
        GradedSpace { parity }
    }

    /// The two-dimensional space with parities (even, odd).
    pub fn v() -> Self {
        GradedSpace::new(vec![0, 1])
    }

    /// `n`-fold tensor power of V in lexicographic basis order.
    pub fn v_power(n: usize) -> Self {
        let mut s = GradedSpace::new(vec![0]);
        for _ in 0..n {
            s = s.tensor(&GradedSpace::v());
        }
        s
    }

    pub fn tensor(&self, other: &GradedSpace) -> GradedSpace {
        let mut p = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.parity {
            for b in &other.parity {
                p.push((a + b) % 2);
            }
        }
        GradedSpace::new(p)
    }

    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    pub fn parity(&self, i: usize) -> u8 {
        self.parity[i]
    }
}

/// Square matrix over a graded space with entries in a ring.
///
/// Products multiply entries with the ring product only; every grading sign
/// is carried explicitly by the caller.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedMatrix<R> {
    space: GradedSpace,
    entries: Vec<R>,
}

impl<R: Ring> GradedMatrix<R> {
    pub fn from_fn(space: GradedSpace, f: impl Fn(usize, usize) -> R) -> Self {
        let n = space.dim();
        let mut entries = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                entries.push(f(r, c));
            }
        }
        GradedMatrix { space, entries }
    }

    pub fn zero(space: GradedSpace) -> Self {
        Self::from_fn(space, |_, _| R::zero())
    }

    pub fn identity(space: GradedSpace) -> Self {
        Self::from_fn(space, |r, c| if r == c { R::one() } else { R::zero() })
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Entry at 0-based row `r`, column `c`.
    pub fn get(&self, r: usize, c: usize) -> &R {
        &self.entries[r * self.dim() + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: R) {
        let n = self.dim();
        self.entries[r * n + c] = x;
    }

    pub fn entries(&self) -> &[R] {
        &self.entries
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> GradedMatrix<S> {
        GradedMatrix {
            space: self.space.clone(),
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn try_map<S: Ring>(&self, f: impl Fn(&R) -> Result<S>) -> Result<GradedMatrix<S>> {
        Ok(GradedMatrix {
            space: self.space.clone(),
            entries: self.entries.iter().map(f).collect::<Result<_>>()?,
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        GradedMatrix {
            space: self.space.clone(),
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a.plus(b)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        GradedMatrix {
            space: self.space.clone(),
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a.minus(b)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.dim();
        assert_eq!(n, other.dim(), "matrix sizes differ");
        Self::from_fn(self.space.clone(), |r, c| {
            let mut acc = R::zero();
            for k in 0..n {
                let a = self.get(r, k);
                let b = other.get(k, c);
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                acc = acc.plus(&a.times(b));
            }
            acc
        })
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        self.map(|x| x.scale(c))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    /// Nonzero entries as `(row, col, value)` with 0-based indices.
    pub fn nonzero(&self) -> Vec<(usize, usize, &R)> {
        let n = self.dim();
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (i / n, i % n, x))
            .collect()
    }

    /// Parity of a scalar matrix: 0 if it only links equal parities, 1 if it
    /// only links opposite ones.
    pub fn block_parity(&self) -> Result<u8> {
        let mut p: Option<u8> = None;
        for (r, c, _) in self.nonzero() {
            let q = (self.space.parity(r) + self.space.parity(c)) % 2;
            if p.is_some_and(|x| x != q) {
                return Err(AlgebraError::InhomogeneousEntry);
            }
            p = Some(q);
        }
        Ok(p.unwrap_or(0))
    }
}

impl GradedMatrix<RatFunc> {
    /// Conjugation-free permutation of tensor factors: returns the matrix of
    /// the same operator with the basis of the product of `dims` reordered by
    /// `perm` (factor `perm[t]` of the new basis is factor `t` of the old).
    pub fn permute_factors(&self, dims: &[usize], perm: &[usize]) -> Self {
        let n = self.dim();
        let idx_map: Vec<usize> = (0..n).map(|i| permute_index(i, dims, perm)).collect();
        let mut parity = vec![0u8; n];
        for i in 0..n {
            parity[idx_map[i]] = self.space.parity(i);
        }
        let mut out = GradedMatrix::zero(GradedSpace::new(parity));
        for r in 0..n {
            for c in 0..n {
                out.set(idx_map[r], idx_map[c], self.get(r, c).clone());
            }
        }
        out
    }
}

/// Position of basis vector `i` of `dims[0] x dims[1] x ...` after permuting factors.
fn permute_index(i: usize, dims: &[usize], perm: &[usize]) -> usize {
    let mut digits = vec![0usize; dims.len()];
    let mut rest = i;
    for t in (0..dims.len()).rev() {
        digits[t] = rest % dims[t];
        rest /= dims[t];
    }
    let mut new_digits = vec![0usize; dims.len()];
    let mut new_dims = vec![0usize; dims.len()];
    for t in 0..dims.len() {
        new_digits[perm[t]] = digits[t];
        new_dims[perm[t]] = dims[t];
    }
    new_digits.iter().zip(&new_dims).fold(0, |acc, (d, n)| acc * n + d)
}

/// The sign twist on V⊗V: diag((-1)^{(i-1)(k-1)}) in basis (11,12,21,22).
pub fn eta_twist() -> GradedMatrix<RatFunc> {
    let space = GradedSpace::v_power(2);
    GradedMatrix::from_fn(space, |r, c| {
        if r != c {
            return RatFunc::zero();
        }
        let (i, k) = (r / 2, r % 2);
        if i * k == 1 {
            RatFunc::int(-1)
        } else {
            RatFunc::one()
        }
    })
}

/// Ungraded flip of the two factors of V⊗V.
pub fn ungraded_permutation() -> GradedMatrix<RatFunc> {
    GradedMatrix::from_fn(GradedSpace::v_power(2), |r, c| {
        let (i, k) = (r / 2, r % 2);
        let (j, l) = (c / 2, c % 2);
        if i == l && k == j {
            RatFunc::one()
        } else {
            RatFunc::zero()
        }
    })
}

/// Graded permutation with entries `(-1)^{(i-1)(k-1)} δ_il δ_jk`.
pub fn graded_permutation() -> GradedMatrix<RatFunc> {
    ungraded_permutation().mul(&eta_twist())
}

/// Ungraded Kronecker product of scalar matrices.
pub fn kron(a: &GradedMatrix<RatFunc>, b: &GradedMatrix<RatFunc>) -> GradedMatrix<RatFunc> {
    let (n, m) = (a.dim(), b.dim());
    let space = a.space().tensor(b.space());
    GradedMatrix::from_fn(space, |r, c| {
        let (i, k) = (r / m, r % m);
        let (j, l) = (c / m, c % m);
        let x = a.get(i, j);
        if x.is_zero() {
            return RatFunc::zero();
        }
        x * b.get(k, l)
    })
    .check_dim(n * m)
}

/// Koszul tensor product: `(A⊗B)(x⊗y) = (-1)^{p(B)p(x)} Ax ⊗ By`, so that
/// `(A⊗B)(C⊗D) = (-1)^{p(B)p(C)} AC⊗BD`. `B` must be homogeneous.
pub fn graded_kron(a: &GradedMatrix<RatFunc>, b: &GradedMatrix<RatFunc>) -> Result<GradedMatrix<RatFunc>> {
    let pb = b.block_parity()?;
    let m = b.dim();
    let space = a.space().tensor(b.space());
    Ok(GradedMatrix::from_fn(space, |r, c| {
        let (i, k) = (r / m, r % m);
        let (j, l) = (c / m, c % m);
        let x = a.get(i, j);
        if x.is_zero() {
            return RatFunc::zero();
        }
        let v = x * b.get(k, l);
        if pb == 1 && a.space().parity(j) == 1 {
            -v
        } else {
            v
        }
    }))
}

/// `[st M]_{ij} = (-1)^{i+j} M_{ji}` on a 2×2 matrix over any ring.
pub fn supertranspose<R: Ring>(m: &GradedMatrix<R>) -> GradedMatrix<R> {
    GradedMatrix::from_fn(m.space().clone(), |r, c| {
        let x = m.get(c, r);
        if (r + c) % 2 == 1 {
            x.negated()
        } else {
            x.clone()
        }
    })
}

/// Matrix unit `E_{ij}` (1-based) on V.
pub fn matrix_unit(i: usize, j: usize) -> GradedMatrix<RatFunc> {
    GradedMatrix::from_fn(GradedSpace::v(), |r, c| {
        if r + 1 == i && c + 1 == j {
            RatFunc::one()
        } else {
            RatFunc::zero()
        }
    })
}

impl<R> GradedMatrix<R> {
    fn check_dim(self, n: usize) -> Self {
        debug_assert_eq!(self.entries.len(), n * n);
        self
    }
}

/// 2×2 matrix over a noncommutative ring, inverted through its Schur complement.
pub fn invert_2x2<R: Ring>(m: &GradedMatrix<R>, inv: impl Fn(&R) -> Result<R>) -> Result<GradedMatrix<R>> {
    if m.dim() != 2 {
        return Err(AlgebraError::Unsupported("block inverse needs a 2x2 matrix".into()));
    }
    let (a, b, c, d) = (m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1));
    let ai = inv(a)?;
    let s = d.minus(&c.times(&ai).times(b));
    let si = inv(&s)?;
    let ai_b = ai.times(b);
    let c_ai = c.times(&ai);
    let e00 = ai.plus(&ai_b.times(&si).times(&c_ai));
    let e01 = ai_b.times(&si).negated();
    let e10 = si.times(&c_ai).negated();
    let mut out = GradedMatrix::zero(m.space().clone());
    out.set(0, 0, e00);
    out.set(0, 1, e01);
    out.set(1, 0, e10);
    out.set(1, 1, si);
    Ok(out)
}

impl<R: Ring + fmt::Display> fmt::Display for GradedMatrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.dim();
        let rows: Vec<String> = (0..n)
            .map(|r| {
                let cells: Vec<String> = (0..n).map(|c| self.get(r, c).to_string()).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one() -> RatFunc {
        RatFunc::one()
    }

    #[test]
    fn eta_entries_and_square() {
        let eta = eta_twist();
        assert_eq!(*eta.get(0, 0), one());
        assert_eq!(*eta.get(3, 3), RatFunc::int(-1));
        assert_eq!(eta.mul(&eta), GradedMatrix::identity(GradedSpace::v_power(2)));
    }

    #[test]
    fn graded_permutation_entries() {
        let p = graded_permutation();
        // (12,21) is row 1, column 2
        assert_eq!(*p.get(1, 2), one());
        assert_eq!(*p.get(3, 3), RatFunc::int(-1));
        assert_eq!(p.mul(&p), GradedMatrix::identity(GradedSpace::v_power(2)));
    }

    #[test]
    fn graded_permutation_on_basis_vectors() {
        // P(x⊗y) = (-1)^{p(x)p(y)} y⊗x
        let p = graded_permutation();
        for x in 0..2 {
            for y in 0..2 {
                let col = x * 2 + y;
                let row = y * 2 + x;
                let s = if x * y == 1 { RatFunc::int(-1) } else { one() };
                assert_eq!(*p.get(row, col), s);
            }
        }
    }

    #[test]
    fn kron_identities() {
        let i2 = GradedMatrix::<RatFunc>::identity(GradedSpace::v());
        assert_eq!(graded_kron(&i2, &i2).unwrap(), GradedMatrix::identity(GradedSpace::v_power(2)));
        let a = matrix_unit(1, 1).add(&matrix_unit(2, 2).scale(&RatFunc::int(3)));
        let b = matrix_unit(2, 2);
        let lhs = graded_kron(&a, &i2).unwrap().mul(&graded_kron(&i2, &b).unwrap());
        assert_eq!(lhs, graded_kron(&a, &b).unwrap());
    }

    #[test]
    fn product_rule_flips_sign_for_odd_pair() {
        let i2 = GradedMatrix::<RatFunc>::identity(GradedSpace::v());
        let b = matrix_unit(1, 2);
        let c = matrix_unit(2, 1);
        let lhs = graded_kron(&i2, &b).unwrap().mul(&graded_kron(&c, &i2).unwrap());
        let rhs = graded_kron(&c, &b).unwrap().scale(&RatFunc::int(-1));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn inhomogeneous_kron_is_rejected() {
        let i2 = GradedMatrix::<RatFunc>::identity(GradedSpace::v());
        let b = matrix_unit(1, 2).add(&matrix_unit(1, 1));
        assert_eq!(graded_kron(&i2, &b), Err(AlgebraError::InhomogeneousEntry));
    }

    #[test]
    fn supertranspose_examples() {
        let i2 = GradedMatrix::<RatFunc>::identity(GradedSpace::v());
        assert_eq!(supertranspose(&i2), i2);
        assert_eq!(supertranspose(&matrix_unit(1, 2)), matrix_unit(2, 1).scale(&RatFunc::int(-1)));
        let m = matrix_unit(1, 2).add(&matrix_unit(2, 1).scale(&RatFunc::int(5)));
        assert_eq!(supertranspose(&supertranspose(&m)), m);
    }

    #[test]
    fn permutation_is_p_times_eta() {
        assert_eq!(graded_permutation(), ungraded_permutation().mul(&eta_twist()));
        let swapped = kron(&matrix_unit(1, 2), &matrix_unit(2, 2)).permute_factors(&[2, 2], &[1, 0]);
        assert_eq!(swapped, kron(&matrix_unit(2, 2), &matrix_unit(1, 2)));
    }
}
