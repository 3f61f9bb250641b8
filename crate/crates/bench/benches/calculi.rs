use std::hint::black_box;

use algebrad_core::corpus;
use algebrad_core::finset::gset_iso;
use algebrad_core::qa::{compose_qa, day_tensor, eval_qa, functions_algebra, functions_algebrad, algebrad_check, representable as qa_h, FiniteMonoid};
use algebrad_core::qc::{compose, formula_monad, monad_check, FinFunctor, Formula, FormulaFunctor};
use algebrad_core::qo::{self, operad_monoid_check, representable, tensor};
use criterion::{criterion_group, criterion_main, Criterion};

fn qo_benches(c: &mut Criterion) {
    let h1 = representable(1, 4).unwrap();
    let h2 = representable(2, 4).unwrap();
    c.bench_function("qo/tensor h1 h2", |b| b.iter(|| tensor(black_box(&h1), black_box(&h2)).unwrap()));
    let t = tensor(&h1, &h2).unwrap();
    let h3 = representable(3, 4).unwrap();
    c.bench_function("qo/gset_iso arity 3", |b| b.iter(|| gset_iso(t.carrier(3), h3.carrier(3)).unwrap()));
    let com = corpus::com_pos(4).unwrap();
    c.bench_function("qo/compose com-pos com-pos", |b| {
        b.iter(|| qo::compose(com.carrier(), com.carrier()).unwrap())
    });
    let ass = corpus::ass(3).unwrap();
    c.bench_function("qo/operad check ass N=3", |b| b.iter(|| operad_monoid_check(black_box(&ass))));
}

fn qc_benches(c: &mut Criterion) {
    let pow = FinFunctor::tabulate(&FormulaFunctor::new(Formula::Powerset, 4), 4).unwrap();
    let id = FinFunctor::tabulate(&FormulaFunctor::new(Formula::Pointed, 2), 2).unwrap();
    c.bench_function("qc/compose powerset pointed", |b| b.iter(|| compose(&pow, &id).unwrap()));
    let m = formula_monad(Formula::Powerset, 3).unwrap();
    c.bench_function("qc/monad check powerset N=3", |b| b.iter(|| monad_check(black_box(&m))));
}

fn qa_benches(c: &mut Criterion) {
    let h1 = qa_h(1, 3).unwrap();
    let h2 = qa_h(2, 3).unwrap();
    c.bench_function("qa/day_tensor h1 h2", |b| b.iter(|| day_tensor(&h1, &h2).unwrap()));
    let y = functions_algebra(2, 3).unwrap();
    c.bench_function("qa/compose h2 functions(2)", |b| b.iter(|| compose_qa(&h2, &y).unwrap()));
    let a = FiniteMonoid::add(3).unwrap();
    c.bench_function("qa/eval h2 add3", |b| b.iter(|| eval_qa(&h2, &a).unwrap()));
    let ad = functions_algebrad(&FiniteMonoid::add(2).unwrap(), 3).unwrap();
    c.bench_function("qa/algebrad check add2 N=3", |b| b.iter(|| algebrad_check(black_box(&ad))));
}

criterion_group!(benches, qo_benches, qc_benches, qa_benches);
criterion_main!(benches);
