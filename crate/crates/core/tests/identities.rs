use superyangian::evalrep::{make_eval_rep, rtt_residual_eval};
use superyangian::exactfield::{sym, RatFunc, Symbol};
use superyangian::gauss::{drinfeld_residual_eval, eq15_eval, gauss_decompose, reconstruct, DrinfeldRelation, Eq15Family};
use superyangian::gradedlinalg::{graded_permutation, GradedMatrix, QMat};
use superyangian::hopf::{antipode_eval, homomorphism_residual_eval, CoproductSign};
use superyangian::modealgebra::{Half, RuleSet, SignPair};
use superyangian::rmatrix::{r_at, unitarity_residual, ybe_residual, ybe_residual_with, Permutation};
use superyangian::ring::Ring;
use superyangian::rtt::check_rtt;

#[test]
fn r_matrix_identities() {
    assert!(ybe_residual().is_zero());
    assert!(!ybe_residual_with(Permutation::Ungraded).is_zero());
    assert!(unitarity_residual().is_zero());
    assert_eq!(r_at(&RatFunc::zero(), Permutation::Graded), graded_permutation().scale(&sym::hbar()));
}

#[test]
fn evaluation_module_satisfies_rtt_and_gauss() {
    let rep = make_eval_rep(Symbol::A).unwrap();
    assert!(rtt_residual_eval(&rep.t).unwrap().is_zero());
    let t = rep.t.entries.clone();
    assert_eq!(reconstruct(&gauss_decompose(&t).unwrap()).unwrap(), t);
}

#[test]
fn current_relations_on_evaluation_module() {
    let rep = make_eval_rep(Symbol::A).unwrap();
    for rel in [DrinfeldRelation::KK, DrinfeldRelation::HE, DrinfeldRelation::EE] {
        assert!(drinfeld_residual_eval(rel, Half::Plus, Half::Minus, &rep).unwrap().is_zero(), "{rel}");
    }
    let res = eq15_eval(&rep, 2).unwrap();
    assert!(res.iter().filter(|r| r.family == Eq15Family::K0Action).all(|r| r.value.is_zero()));
}

#[test]
fn truncated_rtt_window_one() {
    let rules = RuleSet::for_window(1).unwrap();
    for p in SignPair::ALL {
        assert!(check_rtt(p, 4, &rules).unwrap().all_zero(), "{p}");
    }
}

#[test]
fn coproduct_and_antipode_on_evaluation_modules() {
    assert!(homomorphism_residual_eval(CoproductSign::Printed).unwrap().is_zero());
    assert!(!homomorphism_residual_eval(CoproductSign::Dropped).unwrap().is_zero());
    let rep = make_eval_rep(Symbol::A).unwrap();
    let (st, s) = antipode_eval(&rep).unwrap();
    assert_eq!(s.mul(&st), GradedMatrix::<QMat<2>>::identity(st.space().clone()));
}
