use std::fmt::Write as _;
use std::path::Path;

use algebrad_core::corpus::{self, ENTRIES};
use algebrad_core::document::{from_json, to_json, Calculus, Structure};
use algebrad_core::finset::gset_iso;
use algebrad_core::oracle;
use algebrad_core::qa::{self, CommAlgObject, FinPresheaf, FiniteMonoid};
use algebrad_core::qc::{self, FinFunctor};
use algebrad_core::qo::{self, SymSeq};
use algebrad_core::report::{Mode, Report};
use algebrad_core::{Error, Result};
use serde_json::{json, Value};

use crate::{Checked, Cli, Command, CorpusAction, OracleAction, Outcome, Status};

fn load(src: &str, max_arity: usize) -> Result<Structure> {
    match src.strip_prefix("corpus:") {
        Some(id) => corpus::build(id, max_arity),
        None => {
            let text = std::fs::read_to_string(src).map_err(|e| Error::Format(format!("cannot read {src}: {e}")))?;
            from_json(&text)
        }
    }
}

fn symseq(s: Structure) -> Result<SymSeq> {
    match s {
        Structure::Symseq(x) => Ok(x),
        Structure::Operad(o) => Ok(o.carrier().clone()),
        s => Err(Error::Domain(format!("expected a symmetric sequence, got a {}", s.kind()))),
    }
}

fn functor(s: Structure) -> Result<FinFunctor> {
    match s {
        Structure::Functor(f) => Ok(f),
        Structure::Monad(m) => Ok(m.functor().clone()),
        s => Err(Error::Domain(format!("expected a functor, got a {}", s.kind()))),
    }
}

fn presheaf(s: Structure) -> Result<FinPresheaf> {
    match s {
        Structure::Presheaf(p) => Ok(p),
        Structure::CommAlg(a) => Ok(a.carrier().clone()),
        Structure::Algebrad(a) => Ok(a.algebra().carrier().clone()),
        s => Err(Error::Domain(format!("expected a presheaf, got a {}", s.kind()))),
    }
}

fn comm_alg(s: Structure) -> Result<CommAlgObject> {
    match s {
        Structure::CommAlg(a) => Ok(a),
        Structure::Algebrad(a) => Ok(a.algebra().clone()),
        s => Err(Error::Domain(format!("expected a commutative algebra, got a {}", s.kind()))),
    }
}

/// Carrier validation; operations refuse inputs that fail it.
fn validate(s: &Structure) -> Report {
    match s {
        Structure::Symseq(x) => qo::validate_symseq(x),
        Structure::Operad(o) => qo::validate_symseq(o.carrier()),
        Structure::Algebra(a) => qo::validate_symseq(a.operad().carrier()),
        Structure::Functor(f) => qc::validate_functor(f),
        Structure::Monad(m) => qc::validate_functor(m.functor()),
        Structure::Module(m) => qc::validate_functor(m.monad().functor()),
        Structure::Presheaf(p) => qa::validate_presheaf(p),
        Structure::CommAlg(a) => qa::validate_presheaf(a.carrier()),
        Structure::Algebrad(a) => qa::validate_presheaf(a.algebra().carrier()),
    }
}

fn load_valid(src: &str, max_arity: usize) -> Result<Structure> {
    let s = load(src, max_arity)?;
    let r = validate(&s);
    match r.violations.first() {
        None => Ok(s),
        Some(v) => Err(Error::Precondition(format!(
            "{src} is not a valid {}: {} fails at {} with witness {:?}",
            s.kind(),
            v.law,
            v.location,
            v.witness
        ))),
    }
}

fn report_outcome(r: Report) -> Outcome {
    let status = if r.is_ok() { Status::Ok } else { Status::Fail };
    Outcome {
        status,
        text: r.to_string(),
        fields: json!({ "report": r }),
    }
}

fn emit(s: &Structure, output: Option<&Path>) -> Result<Outcome> {
    let doc = to_json(s);
    let cards = s.cards();
    match output {
        Some(path) => {
            std::fs::write(path, &doc).map_err(|e| Error::Format(format!("cannot write {}: {e}", path.display())))?;
            Ok(Outcome {
                status: Status::Ok,
                text: format!("wrote {} {} with cardinalities {cards:?} to {}", s.calculus(), s.kind(), path.display()),
                fields: json!({ "result": { "kind": s.kind(), "cards": cards, "output": path.display().to_string() } }),
            })
        }
        None => Ok(Outcome {
            status: Status::Ok,
            text: doc.clone(),
            fields: json!({
                "result": {
                    "kind": s.kind(),
                    "cards": cards,
                    "document": serde_json::from_str::<Value>(&doc).expect("valid JSON"),
                }
            }),
        }),
    }
}

fn same_calculus(a: &Structure, b: &Structure) -> Result<Calculus> {
    if a.calculus() != b.calculus() {
        return Err(Error::Domain(format!(
            "operands belong to different calculi: {} and {}",
            a.calculus(),
            b.calculus()
        )));
    }
    Ok(a.calculus())
}

fn elements_outcome(labels: Vec<String>, extra: Value) -> Outcome {
    let mut text = format!("{} elements", labels.len());
    for l in &labels {
        let _ = write!(text, "\n  {l}");
    }
    let mut result = json!({ "size": labels.len(), "elements": labels });
    if let (Some(r), Value::Object(e)) = (result.as_object_mut(), extra) {
        r.extend(e);
    }
    Outcome {
        status: Status::Ok,
        text,
        fields: json!({ "result": result }),
    }
}

fn one_based(xs: &[usize]) -> String {
    let v: Vec<String> = xs.iter().map(|x| (x + 1).to_string()).collect();
    format!("({})", v.join(", "))
}

fn set_size(set: Option<usize>) -> Result<usize> {
    set.ok_or_else(|| Error::Precondition("--set K is required".into()))
}

fn monoid(m: Option<&str>) -> Result<FiniteMonoid> {
    FiniteMonoid::parse(m.ok_or_else(|| Error::Precondition("qa evaluation needs --monoid".into()))?)
}

fn eval(s: Structure, set: Option<usize>, m: Option<&str>) -> Result<Outcome> {
    match s.calculus() {
        Calculus::Qo => {
            let x = symseq(s)?;
            let e = qo::eval(&x, set_size(set)?)?;
            let labels = e
                .classes
                .iter()
                .map(|c| format!("[{}] {} {}", c.arity, c.operation + 1, one_based(&c.inputs)))
                .collect();
            Ok(elements_outcome(labels, json!({ "by_arity": e.sizes_by_arity(x.max_arity()) })))
        }
        Calculus::Qc => {
            let f = functor(s)?;
            Ok(elements_outcome(qc::eval(&f, set_size(set)?)?, json!({})))
        }
        Calculus::Qa => {
            let p = presheaf(s)?;
            let a = monoid(m)?;
            let e = qa::eval_qa(&p, &a)?;
            let labels = e
                .classes
                .iter()
                .map(|c| format!("[{}] {} {}", c.degree, p.label(c.degree, c.element), one_based(&c.inputs)))
                .collect();
            Ok(elements_outcome(labels, json!({ "monoid": a.name() })))
        }
    }
}

fn check(what: Checked, s: &Structure, mode: Mode) -> Result<Report> {
    Ok(match (what, s) {
        (Checked::Operad, Structure::Operad(o)) => qo::operad_check_with(o, mode),
        (Checked::Algebra, Structure::Algebra(a)) => qo::algebra_check_with(a, mode),
        (Checked::Monad, Structure::Monad(m)) => qc::monad_check_with(m, mode),
        (Checked::Module, Structure::Module(m)) => qc::module_check_with(m, mode),
        (Checked::CommAlg, Structure::CommAlg(a)) => qa::comm_alg_check_with(a, mode),
        (Checked::CommAlg, Structure::Algebrad(a)) => qa::comm_alg_check_with(a.algebra(), mode),
        (Checked::Algebrad, Structure::Algebrad(a)) => qa::algebrad_check_with(a, mode),
        (w, s) => {
            let name = clap::ValueEnum::to_possible_value(&w).expect("named");
            return Err(Error::Domain(format!("`check {}` does not apply to a {}", name.get_name(), s.kind())));
        }
    })
}

fn iso_outcome(per_arity: Vec<bool>, witnesses: Option<Vec<Option<Vec<usize>>>>) -> Outcome {
    let iso = per_arity.iter().all(|&b| b);
    let mut text = if iso { "isomorphic".to_string() } else { "not isomorphic".to_string() };
    for (n, b) in per_arity.iter().enumerate() {
        let _ = write!(text, "\n  arity {n}: {}", if *b { "≅" } else { "≇" });
    }
    let mut result = json!({ "isomorphic": iso, "arities": per_arity });
    if let Some(w) = witnesses {
        let w: Vec<Value> = w
            .into_iter()
            .map(|m| m.map_or(Value::Null, |m| json!(m.iter().map(|x| x + 1).collect::<Vec<_>>())))
            .collect();
        result["bijections"] = json!(w);
    }
    Outcome {
        status: if iso { Status::Ok } else { Status::Fail },
        text,
        fields: json!({ "result": result }),
    }
}

fn iso_pair(a: &str, b: &str, n: usize) -> Result<(SymSeq, SymSeq)> {
    let (x, y) = (symseq(load_valid(a, n)?)?, symseq(load_valid(b, n)?)?);
    if x.max_arity() != y.max_arity() {
        return Err(Error::Domain(format!(
            "max arities differ: {} and {}",
            x.max_arity(),
            y.max_arity()
        )));
    }
    Ok((x, y))
}

fn oracle(action: &OracleAction, n: usize) -> Result<Outcome> {
    match action {
        OracleAction::Check { file } => {
            let s = load_valid(file, n)?;
            let r = match &s {
                Structure::Operad(o) => oracle::operad_oracle(o, Mode::AllLaws),
                Structure::Monad(m) => oracle::monad_oracle(m, Mode::AllLaws),
                Structure::Module(m) => oracle::module_oracle(m, Mode::AllLaws),
                Structure::CommAlg(a) => oracle::comm_alg_oracle(a, Mode::AllLaws),
                Structure::Algebrad(a) => oracle::algebrad_oracle(a, Mode::AllLaws),
                s => return Err(Error::Domain(format!("no law oracle for a {}", s.kind()))),
            };
            Ok(report_outcome(r))
        }
        OracleAction::Eval { file, set, monoid: m, cutoff } => {
            let s = load_valid(file, n)?;
            let q = match s.calculus() {
                Calculus::Qo => {
                    let sizes = oracle::naive_eval_qo(&symseq(s)?, set_size(*set)?);
                    let total: usize = sizes.iter().sum();
                    return Ok(Outcome {
                        status: Status::Ok,
                        text: format!("{total} classes, by arity {sizes:?}"),
                        fields: json!({ "result": { "classes": total, "by_arity": sizes } }),
                    });
                }
                Calculus::Qc => {
                    let f = functor(s)?;
                    let k = set_size(*set)?;
                    match cutoff {
                        Some(c) => oracle::naive_eval_qc(&f, k, (*c).min(qc::Finitary::max_arity(&f))),
                        None => oracle::naive_eval_qc_stable(&f, k),
                    }
                }
                Calculus::Qa => {
                    let p = presheaf(s)?;
                    oracle::naive_eval_qa(&p, &monoid(m.as_deref())?, cutoff.unwrap_or(p.max_arity()).min(p.max_arity()))
                }
            };
            Ok(Outcome {
                status: Status::Ok,
                text: format!(
                    "{} classes at cutoff {}{}",
                    q.classes,
                    q.cutoff,
                    if q.stabilized { ", stabilized" } else { ", not stabilized" }
                ),
                fields: json!({ "result": { "classes": q.classes, "cutoff": q.cutoff, "stabilized": q.stabilized } }),
            })
        }
        OracleAction::Iso { a, b } => {
            let (x, y) = iso_pair(a, b, n)?;
            let found: Vec<Option<Vec<usize>>> = x
                .carriers()
                .iter()
                .zip(y.carriers())
                .map(|(p, q)| oracle::bijection_search(p, q))
                .collect();
            Ok(iso_outcome(found.iter().map(Option::is_some).collect(), Some(found)))
        }
        OracleAction::Mutate { file } => {
            let s = load_valid(file, n)?;
            let summary = match &s {
                Structure::Operad(o) => oracle::sweep_operad(o),
                Structure::Monad(m) => oracle::sweep_monad(m),
                Structure::Module(m) => oracle::sweep_module(m),
                Structure::CommAlg(a) => oracle::sweep_comm_alg(a),
                Structure::Algebrad(a) => oracle::sweep_algebrad(a),
                s => return Err(Error::Domain(format!("no mutation harness for a {}", s.kind()))),
            };
            Ok(Outcome {
                status: if summary.is_clean() { Status::Ok } else { Status::Fail },
                text: summary.to_string(),
                fields: json!({
                    "result": {
                        "cells": summary.cells,
                        "checker_caught": summary.checker_caught,
                        "oracle_caught": summary.oracle_caught,
                        "mismatches": summary.mismatches,
                        "survivors": summary.survivors,
                    }
                }),
            })
        }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let n = cli.max_arity;
    match &cli.command {
        Command::Validate { file } => Ok(report_outcome(validate(&load(file, n)?))),
        Command::Tensor { a, b, output } => {
            let (x, y) = (load_valid(a, n)?, load_valid(b, n)?);
            let out = match same_calculus(&x, &y)? {
                Calculus::Qo => Structure::Symseq(qo::tensor(&symseq(x)?, &symseq(y)?)?),
                Calculus::Qc => Structure::Functor(qc::product(&functor(x)?, &functor(y)?)?),
                Calculus::Qa => Structure::Presheaf(qa::day_tensor(&presheaf(x)?, &presheaf(y)?)?),
            };
            emit(&out, output.as_deref())
        }
        Command::Compose { a, b, output } => {
            let (x, y) = (load_valid(a, n)?, load_valid(b, n)?);
            let out = match same_calculus(&x, &y)? {
                Calculus::Qo => Structure::Symseq(qo::compose(&symseq(x)?, &symseq(y)?)?.seq),
                Calculus::Qc => Structure::Functor(qc::compose(&functor(x)?, &functor(y)?)?),
                Calculus::Qa => Structure::Presheaf(qa::compose_qa(&presheaf(x)?, &comm_alg(y)?)?.presheaf),
            };
            emit(&out, output.as_deref())
        }
        Command::Eval { file, set, monoid } => eval(load_valid(file, n)?, *set, monoid.as_deref()),
        Command::Check { what, file } => {
            let s = load_valid(file, n)?;
            Ok(report_outcome(check(*what, &s, Mode::AllLaws)?))
        }
        Command::Iso { a, b } => {
            let (x, y) = iso_pair(a, b, n)?;
            let per_arity = x
                .carriers()
                .iter()
                .zip(y.carriers())
                .map(|(p, q)| gset_iso(p, q))
                .collect::<Result<_>>()?;
            Ok(iso_outcome(per_arity, None))
        }
        Command::Corpus { action: CorpusAction::List } => {
            let mut text = String::new();
            for e in ENTRIES {
                let _ = writeln!(text, "{:<28} {:<9} {}", e.id, e.kind.to_string(), e.summary);
            }
            let list: Vec<Value> = ENTRIES
                .iter()
                .map(|e| json!({ "id": e.id, "calculus": e.kind.calculus(), "kind": e.kind, "summary": e.summary }))
                .collect();
            Ok(Outcome {
                status: Status::Ok,
                text,
                fields: json!({ "result": { "entries": list } }),
            })
        }
        Command::Corpus { action: CorpusAction::Export { id, output } } => emit(&corpus::build(id, n)?, output.as_deref()),
        Command::Oracle { action } => oracle(action, n),
    }
}
