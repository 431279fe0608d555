use std::sync::OnceLock;

use proptest::prelude::*;
use superyangian::evalrep::{make_eval_rep, represent, EvalRep};
use superyangian::exactfield::{sym, RatFunc, Symbol};
use superyangian::hopf::TensorElem;
use superyangian::modealgebra::{
    normal_form, super_commutator, AlgElem, GeneratorId, NormalStatus, RuleSet, Word, DEFAULT_MAX_PASSES,
};
use superyangian::ring::Ring;
use superyangian::series::{Direction, TruncSeries};

fn rules() -> &'static RuleSet {
    static R: OnceLock<RuleSet> = OnceLock::new();
    R.get_or_init(|| RuleSet::for_window(1).unwrap())
}

fn rep() -> &'static EvalRep {
    static R: OnceLock<EvalRep> = OnceLock::new();
    R.get_or_init(|| make_eval_rep(Symbol::A).unwrap())
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (-3i64..=3, -3i64..=3, -2i64..=2, 1i64..=3).prop_map(|(c0, c1, c2, d)| {
        let num = &(&RatFunc::int(c0) + &(&RatFunc::int(c1) * &sym::hbar())) + &(&RatFunc::int(c2) * &sym::u());
        let den = &sym::a() + &RatFunc::int(d);
        num.div(&den).unwrap()
    })
}

fn generator(lo: i64, hi: i64) -> impl Strategy<Value = GeneratorId> {
    (1usize..=2, 1usize..=2, lo..=hi).prop_map(|(i, j, k)| GeneratorId::new(i, j, k))
}

fn word(len: usize, lo: i64, hi: i64) -> impl Strategy<Value = Word> {
    prop::collection::vec(generator(lo, hi), 0..=len).prop_map(Word)
}

fn elem(lo: i64, hi: i64) -> impl Strategy<Value = AlgElem> {
    prop::collection::vec((word(2, lo, hi), -2i64..=2), 1..=3).prop_map(|ts| {
        let mut x = AlgElem::zero();
        for (w, c) in ts {
            x.add_term(w, RatFunc::int(c));
        }
        x
    })
}

fn series() -> impl Strategy<Value = TruncSeries<RatFunc>> {
    prop::collection::vec(-2i64..=2, 6).prop_map(|cs| {
        let terms = cs
            .into_iter()
            .enumerate()
            .map(|(n, c)| (-(n as i64), if n == 0 { RatFunc::one() } else { &RatFunc::int(c) * &sym::hbar() }));
        TruncSeries::truncated(Direction::AtInfinity, Symbol::U, 5, terms)
    })
}

fn agree_where_known(x: &TruncSeries<RatFunc>, y: &TruncSeries<RatFunc>) -> bool {
    (-8..=0).all(|e| !(x.knows(e) && y.knows(e)) || x.coeff(e).unwrap() == y.coeff(e).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ratfunc_field_axioms(x in ratfunc(), y in ratfunc(), z in ratfunc()) {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        if !x.is_zero() {
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn algebra_ring_axioms(x in elem(-1, 1), y in elem(-1, 1), z in elem(-1, 1)) {
        prop_assert_eq!(x.times(&y).times(&z), x.times(&y.times(&z)));
        prop_assert_eq!(x.times(&y.plus(&z)), x.times(&y).plus(&x.times(&z)));
    }

    #[test]
    fn normal_form_idempotent(w in word(3, -2, 1)) {
        let x = AlgElem::word(w, RatFunc::one());
        let (y, s) = normal_form(&x, rules(), DEFAULT_MAX_PASSES);
        if s == NormalStatus::Normal {
            let (z, s2) = normal_form(&y, rules(), DEFAULT_MAX_PASSES);
            prop_assert_eq!(s2, NormalStatus::Normal);
            prop_assert_eq!(z, y);
        }
    }

    #[test]
    fn normal_form_preserves_eval_image(w in word(3, -2, 1)) {
        let x = AlgElem::word(w, RatFunc::one());
        let (y, _) = normal_form(&x, rules(), DEFAULT_MAX_PASSES);
        prop_assert_eq!(represent(rep(), &x).unwrap(), represent(rep(), &y).unwrap());
    }

    #[test]
    fn eval_is_multiplicative(x in elem(-2, 2), y in elem(-2, 2)) {
        let lhs = represent(rep(), &x.times(&y)).unwrap();
        let rhs = represent(rep(), &x).unwrap().times(&represent(rep(), &y).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn series_associative(a in series(), b in series(), c in series()) {
        let l = a.checked_mul(&b).unwrap().checked_mul(&c).unwrap();
        let r = a.checked_mul(&b.checked_mul(&c).unwrap()).unwrap();
        prop_assert!(agree_where_known(&l, &r));
    }

    #[test]
    fn series_inverse(a in series()) {
        let p = a.checked_mul(&a.invert().unwrap()).unwrap();
        prop_assert!(agree_where_known(&p, &TruncSeries::constant(RatFunc::one())));
    }

    #[test]
    fn series_shift_composes(a in series(), p in -2i64..=2, q in -2i64..=2) {
        let c1 = &RatFunc::int(p) * &sym::hbar();
        let c2 = &RatFunc::int(q) * &sym::a();
        let two = a.shift(&c1).unwrap().shift(&c2).unwrap();
        let one = a.shift(&(&c1 + &c2)).unwrap();
        prop_assert!(agree_where_known(&two, &one));
    }

    #[test]
    fn koszul_rule(a in generator(-1, 1), b in generator(-1, 1), c in generator(-1, 1), d in generator(-1, 1)) {
        let (a, b, c, d) = (AlgElem::gen(a), AlgElem::gen(b), AlgElem::gen(c), AlgElem::gen(d));
        let lhs = TensorElem::pure([&a, &b]).times(&TensorElem::pure([&c, &d]));
        let sign = b.parity().unwrap() * c.parity().unwrap();
        let mut rhs = TensorElem::pure([&a.times(&c), &b.times(&d)]);
        if sign == 1 {
            rhs = rhs.negated();
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn supercommutator_antisymmetry_and_jacobi(x in generator(-1, 1), y in generator(-1, 1), z in generator(-1, 1)) {
        let (px, py, pz) = (x.parity(), y.parity(), z.parity());
        let (x, y, z) = (AlgElem::gen(x), AlgElem::gen(y), AlgElem::gen(z));
        let xy = super_commutator(&x, &y).unwrap();
        let yx = super_commutator(&y, &x).unwrap();
        let sign = if px * py == 1 { RatFunc::one() } else { -&RatFunc::one() };
        prop_assert_eq!(xy.clone(), yx.scale(&sign));
        // (-1)^{p(x)p(z)}[x,[y,z]] + cyclic = 0
        let sgn = |a: u8, b: u8| if a * b == 1 { -&RatFunc::one() } else { RatFunc::one() };
        let j = super_commutator(&x, &super_commutator(&y, &z).unwrap()).unwrap().scale(&sgn(px, pz))
            .plus(&super_commutator(&y, &super_commutator(&z, &x).unwrap()).unwrap().scale(&sgn(py, px)))
            .plus(&super_commutator(&z, &super_commutator(&x, &y).unwrap()).unwrap().scale(&sgn(pz, py)));
        prop_assert!(j.is_zero());
    }
}
