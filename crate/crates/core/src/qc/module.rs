use crate::error::{capacity, Error, Result};
use crate::finset::{tuple_at, FinMap};
use crate::qc::monad::AlgebraicMonad;
use crate::report::{cell_indices, visit, Law, LawRunner, Mode, Report};

/// A `Σ`-module on `M = {0, …, k-1}`: an action `α: Σ(M) → M`, given on
/// `Σ(k)` through the order bijection `M ≅ k̄`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SigmaModule {
    monad: AlgebraicMonad,
    size: usize,
    action: Vec<u32>,
}

impl SigmaModule {
    pub fn new(monad: AlgebraicMonad, size: usize, action: Vec<u32>) -> Result<Self> {
        if size > monad.max_arity() {
            return Err(capacity("module carrier size", size, monad.max_arity()));
        }
        if action.len() != monad.card(size) {
            return Err(Error::Format(format!(
                "action has {} entries, expected |Σ({size})| = {}",
                action.len(),
                monad.card(size)
            )));
        }
        if let Some(v) = action.iter().find(|&&v| v as usize >= size) {
            return Err(Error::Format(format!("action value {} out of range 1..={size}", v + 1)));
        }
        Ok(SigmaModule {
            monad,
            size,
            action,
        })
    }

    /// The one-point module.
    pub fn terminal(monad: AlgebraicMonad) -> Result<Self> {
        let n = monad.card(1);
        Self::new(monad, 1, vec![0; n])
    }

    pub fn monad(&self) -> &AlgebraicMonad {
        &self.monad
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn action(&self) -> &[u32] {
        &self.action
    }

    pub fn act(&self, w: usize) -> usize {
        self.action[w] as usize
    }

    pub fn set_entry(&mut self, w: usize, value: usize) {
        self.action[w] = value as u32;
    }
}

pub fn module_check(m: &SigmaModule) -> Report {
    module_check_with(m, Mode::AllLaws)
}

/// Checks `α(ε_m) = m` and `α(μ(t; u⃗)) = α(Σ(α∘u⃗)(t))` for every `t ∈ Σ(p)`,
/// `p ≤ N`. This covers all of `Σ(Σ(M))` when `|Σ(M)| ≤ N`; otherwise the
/// report carries a notice that the check was partial.
pub fn module_check_with(m: &SigmaModule, mode: Mode) -> Report {
    let mut run = LawRunner::new("Σ-module", mode);
    let sigma = m.monad();
    let k = m.size();
    let n_max = sigma.max_arity();
    run.law(Law::ModuleUnit, |visit| {
        for (x, &e) in sigma.generators(k).iter().enumerate() {
            visit!(visit, m.act(e) == x, format!("α(ε_{})", x + 1), vec![x]);
        }
    });
    let mut sampled = false;
    run.law(Law::ModuleAssociativity, |visit| {
        for p in 0..=n_max {
            let r = sigma.radices(p, k);
            let (indices, s) = cell_indices(r.iter().product());
            sampled |= s;
            for i in indices {
                let t = tuple_at(i, &r);
                let us = &t[1..];
                let lhs = m.act(sigma.substitute(k, t[0], us));
                let a = FinMap::new(k, us.iter().map(|&u| m.act(u)).collect()).expect("in range");
                let rhs = m.act(sigma.map(&a, t[0]));
                visit!(visit, lhs == rhs, format!("α∘μ_{{{p},{k}}}"), t);
            }
        }
    });
    if sigma.card(k) > n_max {
        run.notice(format!(
            "|Σ({k})| = {} exceeds max arity {n_max}; associativity was checked on Σ(p), p ≤ {n_max}",
            sigma.card(k)
        ));
    }
    if sampled {
        run.notice("some cells exceeded the instance budget and were sampled");
    }
    run.finish()
}

/// The free module `(Σ(S), μ_S)` on `S = {0, …, k-1}`.
pub fn free_module(sigma: &AlgebraicMonad, set_size: usize) -> Result<SigmaModule> {
    let n_max = sigma.max_arity();
    if set_size > n_max {
        return Err(capacity("generating set size", set_size, n_max));
    }
    let carrier = sigma.card(set_size);
    if carrier > n_max {
        return Err(capacity(format!("|Σ({set_size})|"), carrier, n_max));
    }
    let all: Vec<usize> = (0..carrier).collect();
    let action = (0..sigma.card(carrier))
        .map(|w| sigma.substitute(set_size, w, &all) as u32)
        .collect();
    SigmaModule::new(sigma.clone(), carrier, action)
}

/// All module morphisms `A → B`, as image tables.
pub fn module_morphisms(a: &SigmaModule, b: &SigmaModule) -> Result<Vec<Vec<usize>>> {
    if a.monad() != b.monad() {
        return Err(Error::Domain("modules over different monads".into()));
    }
    let sigma = a.monad();
    let (ka, kb) = (a.size(), b.size());
    let mut out = Vec::new();
    for f in FinMap::all(ka, kb) {
        let ok = (0..sigma.card(ka)).all(|w| f.apply(a.act(w)) == b.act(sigma.map(&f, w)));
        if ok {
            out.push(f.images().to_vec());
        }
    }
    Ok(out)
}
