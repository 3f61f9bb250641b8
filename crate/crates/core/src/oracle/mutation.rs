use std::fmt;

use crate::finset::{FinMap, Perm};
use crate::oracle::laws::{algebrad_oracle, comm_alg_oracle, module_oracle, monad_oracle, operad_oracle};
use crate::qa::{algebrad_check_with, comm_alg_check_with, CommAlgObject, QaAlgebrad};
use crate::qc::{module_check_with, monad_check_with, AlgebraicMonad, SigmaModule};
use crate::qo::{operad_check_with, Operad};
use crate::report::{Law, Mode, Report};

/// Outcome of mutating every cell of a structure once.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct MutationSummary {
    pub subject: String,
    /// Cells with at least two admissible values; each was mutated once.
    pub cells: usize,
    pub checker_caught: usize,
    pub oracle_caught: usize,
    /// Mutations whose first failed law differs between checker and oracle.
    pub mismatches: Vec<String>,
    /// Mutations not detected by the checker or the oracle.
    pub survivors: Vec<String>,
}

impl MutationSummary {
    /// Every mutation was caught by both, with the same first failed law.
    pub fn is_clean(&self) -> bool {
        self.checker_caught == self.cells && self.oracle_caught == self.cells && self.mismatches.is_empty()
    }
}

impl fmt::Display for MutationSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} cells, checker caught {}, oracle caught {}, {} law mismatches",
            self.subject,
            self.cells,
            self.checker_caught,
            self.oracle_caught,
            self.mismatches.len()
        )?;
        for s in self.survivors.iter().chain(&self.mismatches).take(5) {
            write!(f, "\n  {s}")?;
        }
        Ok(())
    }
}

/// A single-entry change: a description and how to apply it.
type Cell<T> = (String, Box<dyn Fn(&mut T)>);

fn sweep<T: Clone>(
    subject: &str,
    base: &T,
    cells: Vec<Cell<T>>,
    checker: impl Fn(&T) -> Report,
    oracle: impl Fn(&T) -> Report,
) -> MutationSummary {
    let mut out = MutationSummary {
        subject: subject.to_string(),
        cells: cells.len(),
        ..Default::default()
    };
    for (what, apply) in cells {
        let mut s = base.clone();
        apply(&mut s);
        let (c, o): (Option<Law>, Option<Law>) = (checker(&s).first_failed_law(), oracle(&s).first_failed_law());
        out.checker_caught += usize::from(c.is_some());
        out.oracle_caught += usize::from(o.is_some());
        if c.is_none() || o.is_none() {
            out.survivors.push(format!("{what}: checker {c:?}, oracle {o:?}"));
        } else if c != o {
            out.mismatches.push(format!("{what}: checker {c:?}, oracle {o:?}"));
        }
    }
    out
}

/// The cyclic successor of `value` among `card` values, if there is another.
fn bump(value: usize, card: usize) -> Option<usize> {
    (card >= 2).then(|| (value + 1) % card)
}

pub fn sweep_operad(o: &Operad) -> MutationSummary {
    let mut cells: Vec<Cell<Operad>> = Vec::new();
    for (n, c) in o.carrier().carriers().iter().enumerate() {
        let order = c.group().order();
        for x in 0..c.size() {
            for s in 0..order {
                if let Some(v) = bump(c.act(x, s), c.size()) {
                    let what = format!("x·σ at arity {n}, x = {}, σ = {}", x + 1, Perm::unrank(n, s));
                    cells.push((what, Box::new(move |o: &mut Operad| o.carrier_mut().carrier_mut(n).set_entry(x, s, v))));
                }
            }
        }
    }
    if let Some(v) = bump(o.unit(), o.carrier().carrier(1).size()) {
        cells.push(("unit".into(), Box::new(move |o: &mut Operad| o.set_unit(v))));
    }
    for (parts, table) in o.subs() {
        let card = o.carrier().carrier(parts.total()).size();
        for (i, &v) in table.iter().enumerate() {
            if let Some(v) = bump(v as usize, card) {
                let p = parts.clone();
                cells.push((format!("μ_{parts}[{}]", i + 1), Box::new(move |o: &mut Operad| o.set_entry(&p, i, v))));
            }
        }
    }
    sweep(
        "operad",
        o,
        cells,
        |s| operad_check_with(s, Mode::FirstFailure),
        |s| operad_oracle(s, Mode::FirstFailure),
    )
}

pub fn sweep_monad(m: &AlgebraicMonad) -> MutationSummary {
    let mut cells: Vec<Cell<AlgebraicMonad>> = Vec::new();
    let n_max = m.max_arity();
    for a in 0..=n_max {
        for b in 0..=n_max {
            for f in FinMap::all(a, b) {
                for x in 0..m.card(a) {
                    if let Some(v) = bump(m.map(&f, x), m.card(b)) {
                        let g = f.clone();
                        cells.push((
                            format!("Σ({f})({})", x + 1),
                            Box::new(move |m: &mut AlgebraicMonad| m.functor_mut().set_transition(&g, x, v)),
                        ));
                    }
                }
            }
        }
    }
    if let Some(v) = bump(m.unit(), m.card(1)) {
        cells.push(("unit".into(), Box::new(move |m: &mut AlgebraicMonad| m.set_unit(v))));
    }
    for (p, row) in m.subs().iter().enumerate() {
        for (n, table) in row.iter().enumerate() {
            for (i, &v) in table.iter().enumerate() {
                if let Some(v) = bump(v as usize, m.card(n)) {
                    cells.push((
                        format!("μ_{{{p},{n}}}[{}]", i + 1),
                        Box::new(move |m: &mut AlgebraicMonad| m.set_entry(p, n, i, v)),
                    ));
                }
            }
        }
    }
    sweep(
        "algebraic monad",
        m,
        cells,
        |s| monad_check_with(s, Mode::FirstFailure),
        |s| monad_oracle(s, Mode::FirstFailure),
    )
}

pub fn sweep_module(md: &SigmaModule) -> MutationSummary {
    let cells: Vec<Cell<SigmaModule>> = md
        .action()
        .iter()
        .enumerate()
        .filter_map(|(w, &v)| {
            let v = bump(v as usize, md.size())?;
            let cell: Cell<SigmaModule> = (format!("α[{}]", w + 1), Box::new(move |m: &mut SigmaModule| m.set_entry(w, v)));
            Some(cell)
        })
        .collect();
    sweep(
        "Σ-module",
        md,
        cells,
        |s| module_check_with(s, Mode::FirstFailure),
        |s| module_oracle(s, Mode::FirstFailure),
    )
}

/// Cells of a commutative algebra, lifted into a containing structure.
fn comm_alg_cells<T: 'static>(
    a: &CommAlgObject,
    lens: fn(&mut T) -> &mut CommAlgObject,
) -> Vec<Cell<T>> {
    let mut cells: Vec<Cell<T>> = Vec::new();
    let s = a.carrier();
    let n_max = a.max_arity();
    for m in 0..=n_max {
        for n in 0..=n_max {
            for f in FinMap::all(m, n) {
                for x in 0..s.card(n) {
                    if let Some(v) = bump(s.restrict(&f, x), s.card(m)) {
                        let g = f.clone();
                        cells.push((
                            format!("P({f})({})", x + 1),
                            Box::new(move |t: &mut T| lens(t).carrier_mut().set_restriction(&g, x, v)),
                        ));
                    }
                }
            }
        }
    }
    if let Some(v) = bump(a.unit(), a.card(0)) {
        cells.push(("E_0".into(), Box::new(move |t: &mut T| lens(t).set_unit(v))));
    }
    for (p, row) in a.mult_tables().iter().enumerate() {
        for (q, table) in row.iter().enumerate() {
            for (i, &v) in table.iter().enumerate() {
                if let Some(v) = bump(v as usize, a.card(p + q)) {
                    cells.push((
                        format!("M_{{{p},{q}}}[{}]", i + 1),
                        Box::new(move |t: &mut T| lens(t).set_entry(p, q, i, v)),
                    ));
                }
            }
        }
    }
    cells
}

pub fn sweep_comm_alg(a: &CommAlgObject) -> MutationSummary {
    sweep(
        "commutative algebra",
        a,
        comm_alg_cells(a, |t| t),
        |s| comm_alg_check_with(s, Mode::FirstFailure),
        |s| comm_alg_oracle(s, Mode::FirstFailure),
    )
}

pub fn sweep_algebrad(a: &QaAlgebrad) -> MutationSummary {
    let mut cells = comm_alg_cells(a.algebra(), QaAlgebrad::algebra_mut);
    if let Some(v) = bump(a.unit(), a.card(1)) {
        cells.push(("ε".into(), Box::new(move |t: &mut QaAlgebrad| t.set_unit(v))));
    }
    for (parts, table) in a.subs() {
        for (i, &v) in table.iter().enumerate() {
            if let Some(v) = bump(v as usize, a.card(parts.total())) {
                let p = parts.clone();
                cells.push((
                    format!("μ_{parts}[{}]", i + 1),
                    Box::new(move |t: &mut QaAlgebrad| t.set_entry(&p, i, v)),
                ));
            }
        }
    }
    sweep(
        "algebrad",
        a,
        cells,
        |s| algebrad_check_with(s, Mode::FirstFailure),
        |s| algebrad_oracle(s, Mode::FirstFailure),
    )
}
