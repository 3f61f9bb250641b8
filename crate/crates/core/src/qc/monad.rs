use crate::error::{capacity, Error, Result};
use crate::finset::{tuple_at, tuple_index, FinMap};
use crate::qc::functor::{functor_laws, FinFunctor, Finitary, Formula, FormulaFunctor, TABLE_CAP};
use crate::report::{cell_indices, visit, Law, LawRunner, Mode, Report};

/// An algebraic monad: a functor `Σ`, a unit `ε ∈ Σ(1)` and substitutions
/// `μ_{p,n}: Σ(p) × Σ(n)^p → Σ(n)` for `p, n ≤ N`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraicMonad {
    functor: FinFunctor,
    unit: usize,
    /// `subs[p][n]` indexed by the mixed-radix index of `(t, y_1, …, y_p)`.
    subs: Vec<Vec<Vec<u32>>>,
}

impl AlgebraicMonad {
    pub fn new(functor: FinFunctor, unit: usize, subs: Vec<Vec<Vec<u32>>>) -> Result<Self> {
        let n_max = functor.max_arity();
        if n_max == 0 || unit >= functor.card(1) {
            return Err(Error::Domain("the unit must be an element of Σ(1)".into()));
        }
        if subs.len() != n_max + 1 || subs.iter().any(|row| row.len() != n_max + 1) {
            return Err(Error::Format("substitution tables do not match max arity".into()));
        }
        for (p, row) in subs.iter().enumerate() {
            for (n, table) in row.iter().enumerate() {
                let expected: usize = radices(&functor, p, n).iter().product();
                if table.len() != expected {
                    return Err(Error::Format(format!(
                        "μ_{{{p},{n}}} has {} entries, expected {expected}",
                        table.len()
                    )));
                }
                if let Some(v) = table.iter().find(|&&v| v as usize >= functor.card(n)) {
                    return Err(Error::Format(format!(
                        "μ_{{{p},{n}}}: value {} out of range 1..={}",
                        v + 1,
                        functor.card(n)
                    )));
                }
            }
        }
        Ok(AlgebraicMonad {
            functor,
            unit,
            subs,
        })
    }

    /// Tabulates `μ` from a closure `(p, n, t, y⃗) ↦ μ_{p,n}(t; y⃗)`.
    pub fn from_fn(
        functor: FinFunctor,
        unit: usize,
        mu: impl Fn(usize, usize, usize, &[usize]) -> usize,
    ) -> Result<Self> {
        let n_max = functor.max_arity();
        let entries: usize = (0..=n_max)
            .flat_map(|p| (0..=n_max).map(move |n| (p, n)))
            .map(|(p, n)| radices(&functor, p, n).iter().fold(1usize, |a, &r| a.saturating_mul(r)))
            .fold(0usize, usize::saturating_add);
        if entries > TABLE_CAP {
            return Err(capacity("substitution table entries", entries, TABLE_CAP));
        }
        let subs = (0..=n_max)
            .map(|p| {
                (0..=n_max)
                    .map(|n| {
                        let r = radices(&functor, p, n);
                        let total: usize = r.iter().product();
                        (0..total)
                            .map(|i| {
                                let t = tuple_at(i, &r);
                                mu(p, n, t[0], &t[1..]) as u32
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Self::new(functor, unit, subs)
    }

    pub fn functor(&self) -> &FinFunctor {
        &self.functor
    }

    pub fn max_arity(&self) -> usize {
        self.functor.max_arity()
    }

    pub fn card(&self, n: usize) -> usize {
        self.functor.card(n)
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn subs(&self) -> &[Vec<Vec<u32>>] {
        &self.subs
    }

    pub fn radices(&self, p: usize, n: usize) -> Vec<usize> {
        radices(&self.functor, p, n)
    }

    /// `μ_{p,n}(t; y⃗)` with `p = |y⃗|`.
    pub fn substitute(&self, n: usize, t: usize, ys: &[usize]) -> usize {
        let p = ys.len();
        let cn = self.functor.card(n);
        let idx = ys.iter().fold(t, |acc, &y| acc * cn + y);
        self.subs[p][n][idx] as usize
    }

    /// `Σ(f)(x)`.
    pub fn map(&self, f: &FinMap, x: usize) -> usize {
        self.functor.map(f, x)
    }

    /// The generic elements `e_i = Σ(ι_i)(ε) ∈ Σ(p)`, `ι_i: 1 → p` picking `i`.
    pub fn generators(&self, p: usize) -> Vec<usize> {
        (0..p)
            .map(|i| self.map(&FinMap::constant(1, p, i).expect("in range"), self.unit))
            .collect()
    }

    pub fn set_entry(&mut self, p: usize, n: usize, index: usize, value: usize) {
        self.subs[p][n][index] = value as u32;
    }

    pub fn set_unit(&mut self, unit: usize) {
        self.unit = unit;
    }

    pub fn functor_mut(&mut self) -> &mut FinFunctor {
        &mut self.functor
    }
}

fn radices(f: &FinFunctor, p: usize, n: usize) -> Vec<usize> {
    let mut r = vec![f.card(p)];
    r.extend(std::iter::repeat_n(f.card(n), p));
    r
}

pub fn monad_check(m: &AlgebraicMonad) -> Report {
    monad_check_with(m, Mode::AllLaws)
}

/// Checks functoriality, both unit laws, naturality of `μ` in `n`, its
/// compatibility with maps of the bound variable `p`, and associativity.
pub fn monad_check_with(m: &AlgebraicMonad, mode: Mode) -> Report {
    let mut run = LawRunner::new("algebraic monad", mode);
    functor_laws(m.functor(), &mut run);
    let n_max = m.max_arity();
    let mut sampled = false;

    run.law(Law::LeftUnit, |visit| {
        for n in 0..=n_max {
            for t in 0..m.card(n) {
                let got = m.substitute(n, m.unit(), &[t]);
                visit!(visit, got == t, format!("μ_{{1,{n}}}(ε; t)"), vec![t]);
            }
        }
    });
    run.law(Law::RightUnit, |visit| {
        for p in 0..=n_max {
            let e = m.generators(p);
            for t in 0..m.card(p) {
                let got = m.substitute(p, t, &e);
                visit!(visit, got == t, format!("μ_{{{p},{p}}}(t; e_1, …, e_{p})"), vec![t]);
            }
        }
    });
    run.law(Law::Naturality, |visit| {
        for p in 0..=n_max {
            for a in 0..=n_max {
                for b in 0..=n_max {
                    for f in FinMap::all(a, b) {
                        let sf = m.functor().map_table(&f);
                        let r = m.radices(p, a);
                        let (indices, s) = cell_indices(r.iter().product());
                        sampled |= s;
                        for i in indices {
                            let t = tuple_at(i, &r);
                            let lhs = sf.apply(m.substitute(a, t[0], &t[1..]));
                            let moved: Vec<usize> = t[1..].iter().map(|&y| sf.apply(y)).collect();
                            let rhs = m.substitute(b, t[0], &moved);
                            visit!(visit, lhs == rhs, format!("μ_{{{p},·}} along f = {f}"), t);
                        }
                    }
                }
            }
        }
    });
    run.law(Law::CoendCompatibility, |visit| {
        for p in 0..=n_max {
            for q in 0..=n_max {
                for phi in FinMap::all(p, q) {
                    let sphi = m.functor().map_table(&phi);
                    for n in 0..=n_max {
                        let r = m.radices(q, n);
                        let r = [&[m.card(p)], &r[1..]].concat();
                        let (indices, s) = cell_indices(r.iter().product());
                        sampled |= s;
                        for i in indices {
                            let t = tuple_at(i, &r);
                            let ys = &t[1..];
                            let lhs = m.substitute(n, sphi.apply(t[0]), ys);
                            let pulled: Vec<usize> = phi.images().iter().map(|&j| ys[j]).collect();
                            let rhs = m.substitute(n, t[0], &pulled);
                            visit!(visit, lhs == rhs, format!("φ = {phi}, n = {n}"), t);
                        }
                    }
                }
            }
        }
    });
    run.law(Law::Associativity, |visit| {
        for q in 0..=n_max {
            for p in 0..=n_max {
                for n in 0..=n_max {
                    let mut r = vec![m.card(q)];
                    r.extend(std::iter::repeat_n(m.card(p), q));
                    r.extend(std::iter::repeat_n(m.card(n), p));
                    let (indices, s) = cell_indices(r.iter().product());
                    sampled |= s;
                    for i in indices {
                        let t = tuple_at(i, &r);
                        let (us, ys) = t[1..].split_at(q);
                        let lhs = m.substitute(n, m.substitute(p, t[0], us), ys);
                        let inner: Vec<usize> = us.iter().map(|&u| m.substitute(n, u, ys)).collect();
                        let rhs = m.substitute(n, t[0], &inner);
                        visit!(visit, lhs == rhs, format!("(q, p, n) = ({q}, {p}, {n})"), t);
                    }
                }
            }
        }
    });
    if sampled {
        run.notice("some cells exceeded the instance budget and were sampled");
    }
    run.finish()
}

/// The corpus monads on their closed-form functors.
pub fn formula_monad(formula: Formula, n_max: usize) -> Result<AlgebraicMonad> {
    let functor = FinFunctor::tabulate(&FormulaFunctor::new(formula, n_max), n_max)?;
    let unit = match formula {
        Formula::Powerset => 1,
        _ => 0,
    };
    AlgebraicMonad::from_fn(functor, unit, |p, n, t, ys| match formula {
        Formula::Identity => ys[t],
        Formula::Pointed if t == p => n,
        Formula::Pointed => ys[t],
        Formula::Powerset => (0..p).filter(|i| t >> i & 1 == 1).fold(0, |acc, i| acc | ys[i]),
        Formula::Hom(k) => {
            let tt = tuple_at(t, &vec![p; k]);
            let out: Vec<usize> = tt
                .iter()
                .enumerate()
                .map(|(j, &i)| tuple_at(ys[i], &vec![n; k])[j])
                .collect();
            tuple_index(&out, &vec![n; k])
        }
    })
}
