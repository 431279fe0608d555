//! Multivariate polynomial GCD over the rationals.
//!
//! Recursive primitive polynomial remainder sequences: the polynomials are
//! viewed as univariate in one shared variable with coefficients in the
//! remaining variables, contents are split off recursively and the primitive
//! parts are reduced by pseudo-division. Results are monic under the
//! graded-lex order, so the GCD is canonical.

use num_traits::{One, Zero};

use super::mpoly::{MPoly, Rat};
use super::symbol::Symbol;

pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::one();
    }
    if a == b {
        return a.monic();
    }
    if a.num_terms() == 1 {
        return monomial_gcd(a, b);
    }
    if b.num_terms() == 1 {
        return monomial_gcd(b, a);
    }
    let common = a.var_mask() & b.var_mask();
    if common == 0 {
        return MPoly::one();
    }
    if (a.var_mask() | b.var_mask()).count_ones() == 1 {
        let s = Symbol::ALL[common.trailing_zeros() as usize];
        return univariate_gcd(a, b, s);
    }
    // pick the shared variable of smallest combined degree
    let x = Symbol::ALL
        .into_iter()
        .filter(|s| common & (1 << s.index()) != 0)
        .min_by_key(|s| a.degree_in(*s).max(b.degree_in(*s)))
        .expect("common variable");

    let au = a.to_univariate(x);
    let bu = b.to_univariate(x);
    let ca = content(&au);
    let cb = content(&bu);
    let pa = divide_coeffs(&au, &ca);
    let pb = divide_coeffs(&bu, &cb);
    let g_cont = gcd(&ca, &cb);
    let g_pp = primitive_prs(pa, pb);
    let g = &g_cont * &MPoly::from_univariate(x, &g_pp);
    g.monic()
}

/// gcd(m, f) where `m` is a single term.
fn monomial_gcd(m: &MPoly, f: &MPoly) -> MPoly {
    let (mm, _) = m.leading().expect("nonzero");
    let mut g = *mm;
    for (k, _) in f.terms() {
        g = g.gcd(k);
    }
    MPoly::monomial(g, Rat::one())
}

fn univariate_gcd(a: &MPoly, b: &MPoly, s: Symbol) -> MPoly {
    let mut f = a.monic();
    let mut g = b.monic();
    if f.degree_in(s) < g.degree_in(s) {
        std::mem::swap(&mut f, &mut g);
    }
    while !g.is_zero() {
        let (_, r) = f.div_rem(&g).expect("nonzero divisor");
        f = g;
        g = r.monic();
    }
    f.monic()
}

fn content(coeffs: &[MPoly]) -> MPoly {
    let mut g = MPoly::zero();
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn divide_coeffs(coeffs: &[MPoly], d: &MPoly) -> Vec<MPoly> {
    if d.is_one() {
        return coeffs.to_vec();
    }
    coeffs
        .iter()
        .map(|c| c.div_exact(d).expect("content divides every coefficient"))
        .collect()
}

fn trim(v: &mut Vec<MPoly>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn deg(v: &[MPoly]) -> usize {
    v.len().saturating_sub(1)
}

/// Pseudo-remainder of `f` by `g` as univariate polynomials over a polynomial ring.
fn prem(f: &[MPoly], g: &[MPoly]) -> Vec<MPoly> {
    let mut r = f.to_vec();
    trim(&mut r);
    let dg = deg(g);
    let lcg = g.last().expect("nonzero").clone();
    while !r.is_empty() && deg(&r) >= dg {
        let lr = r.last().expect("nonempty").clone();
        let shift = deg(&r) - dg;
        let mut next: Vec<MPoly> = r.iter().map(|c| c * &lcg).collect();
        for (i, gc) in g.iter().enumerate() {
            let t = gc * &lr;
            next[i + shift] = &next[i + shift] - &t;
        }
        trim(&mut next);
        r = next;
    }
    r
}

fn primitive_part(v: &[MPoly]) -> Vec<MPoly> {
    let c = content(v);
    let mut out = divide_coeffs(v, &c);
    // fix the sign/scale through the leading coefficient's leading term
    if let Some(lc) = out.last() {
        let s = lc.leading_coeff();
        if !s.is_one() && !s.is_zero() {
            let inv = s.recip();
            out = out.iter().map(|x| x.scale(&inv)).collect();
        }
    }
    out
}

fn primitive_prs(a: Vec<MPoly>, b: Vec<MPoly>) -> Vec<MPoly> {
    let (mut f, mut g) = if deg(&a) >= deg(&b) { (a, b) } else { (b, a) };
    trim(&mut f);
    trim(&mut g);
    while !g.is_empty() {
        if deg(&g) == 0 {
            return vec![MPoly::one()];
        }
        let r = prem(&f, &g);
        f = g;
        g = if r.is_empty() { r } else { primitive_part(&r) };
    }
    if deg(&f) == 0 {
        return vec![MPoly::one()];
    }
    primitive_part(&f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: Symbol) -> MPoly {
        MPoly::var(s)
    }

    #[test]
    fn univariate_common_factor() {
        let u = v(Symbol::U);
        let one = MPoly::one();
        let f = &(&u - &one) * &(&u + &MPoly::int(2));
        let g = &(&u - &one) * &(&u + &MPoly::int(3));
        assert_eq!(gcd(&f, &g), &u - &one);
    }

    #[test]
    fn multivariate_common_factor() {
        let (u, w, h) = (v(Symbol::U), v(Symbol::V), v(Symbol::Hbar));
        let common = &(&u - &w) + &h;
        let f = &common * &(&u + &h);
        let g = &common * &(&(&w * &w) - &h);
        assert_eq!(gcd(&f, &g), common.monic());
        assert!(gcd(&(&u + &h), &(&u - &h)).is_one());
    }

    #[test]
    fn monomial_and_constant_cases() {
        let (u, h) = (v(Symbol::U), v(Symbol::Hbar));
        let f = &(&u * &u) * &h;
        let g = &(&u * &h) + &(&u * &u);
        assert_eq!(gcd(&f, &g), u.clone());
        assert!(gcd(&MPoly::int(6), &g).is_one());
        assert_eq!(gcd(&MPoly::zero(), &g.scale(&Rat::from_integer(3.into()))), g.monic());
    }
}
