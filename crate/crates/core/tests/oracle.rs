use algebrad_core::corpus::{self, ENTRIES};
use algebrad_core::document::Structure;
use algebrad_core::oracle::*;
use algebrad_core::qa::{comm_alg_check, FiniteMonoid, eval_qa, representable as qa_h, terminal};
use algebrad_core::qc::{eval, formula_monad, monad_check, module_check, Formula, FormulaFunctor, FinFunctor};
use algebrad_core::qo::operad_monoid_check;
use algebrad_core::report::Mode;

fn verdicts_agree(s: &Structure) {
    let (checker, oracle) = match s {
        Structure::Operad(o) => (operad_monoid_check(o), operad_oracle(o, Mode::AllLaws)),
        Structure::Monad(m) => (monad_check(m), monad_oracle(m, Mode::AllLaws)),
        Structure::Module(m) => (module_check(m), module_oracle(m, Mode::AllLaws)),
        Structure::CommAlg(a) => (comm_alg_check(a), comm_alg_oracle(a, Mode::AllLaws)),
        Structure::Algebrad(a) => (algebrad_core::qa::algebrad_check(a), algebrad_oracle(a, Mode::AllLaws)),
        _ => return,
    };
    assert!(checker.is_ok(), "{checker}");
    assert!(oracle.is_ok(), "{oracle}");
}

#[test]
fn corpus_passes_the_oracle() {
    for e in ENTRIES {
        let n = if e.id == "qo/com-pos" { 4 } else { 3 };
        verdicts_agree(&corpus::build(e.id, n).unwrap());
    }
}

#[test]
fn naive_evaluation() {
    let id = FinFunctor::tabulate(&FormulaFunctor::new(Formula::Identity, 3), 3).unwrap();
    let q = naive_eval_qc(&id, 2, 3);
    assert_eq!(q.classes, 2);
    assert!(q.stabilized);
    let h2 = FinFunctor::tabulate(&FormulaFunctor::new(Formula::Hom(2), 3), 3).unwrap();
    assert_eq!(naive_eval_qc_stable(&h2, 2).classes, 4);
    for f in [Formula::Identity, Formula::Pointed, Formula::Powerset, Formula::Hom(2)] {
        let t = FinFunctor::tabulate(&FormulaFunctor::new(f, 4), 4).unwrap();
        for k in 0..=3 {
            let q = naive_eval_qc_stable(&t, k);
            assert_eq!(q.classes, eval(&t, k).unwrap().len(), "{f:?} on {k}");
        }
    }
}

#[test]
fn naive_qa_evaluation() {
    let a = FiniteMonoid::add(2).unwrap();
    for p in [qa_h(2, 3).unwrap(), terminal(3).unwrap()] {
        let q = naive_eval_qa(&p, &a, 3);
        assert_eq!(q.classes, eval_qa(&p, &a).unwrap().len());
    }
}

#[test]
fn mutation_sweeps_small() {
    let m = formula_monad(Formula::Pointed, 2).unwrap();
    let s = sweep_monad(&m);
    assert!(s.is_clean(), "{s}");
    let o = corpus::ass(2).unwrap();
    let s = sweep_operad(&o);
    assert!(s.is_clean(), "{s}");
}
