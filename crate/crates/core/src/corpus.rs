//! Builtin example structures, addressed by id.
//!
//! | id | structure |
//! |----|-----------|
//! | `qo/com-pos` | `Com≥1`: one operation in each positive arity |
//! | `qo/ass` | associative operations, `Σ_n` the regular `S_n`-set, `Σ_0 = ∅` |
//! | `qo/unit` | the unit of the composition product |
//! | `qo/h<k>` | the representable symmetric sequence `h_k` |
//! | `qo/<operad>/free/<k>` | the free algebra on `k` generators, truncated |
//! | `qc/identity`, `qc/pointed`, `qc/powerset`, `qc/h<k>` | algebraic monads `n`, `n+1`, `2ⁿ`, `nᵏ` |
//! | `qc/<monad>/free/<k>` | the free module on `k` generators |
//! | `qa/terminal` | the one-point algebrad |
//! | `qa/monoid-functions[/<monoid>]` | `C^{(−)}` for a commutative monoid `C`, `add2` by default |
//! | `qa/functions/<c>` | `C^{(−)}` as a commutative algebra object, `|C| = c` |
//! | `qa/unit`, `qa/h<k>` | the unit presheaf `h_0` and representables |
//!
//! Every entry satisfies its laws at every supported bound. `Com` is shipped
//! without a nullary operation so that composing with it stays bounded.

use crate::document::{Kind, Structure};
use crate::error::{Error, Result};
use crate::finset::{symmetric_group, GSet, Perm};
use crate::qa::{functions_algebra, functions_algebrad, representable as qa_h, terminal_algebrad, unit_qa, FiniteMonoid};
use crate::qc::{formula_monad, free_module, Formula};
use crate::qo::{free_algebra, representable as qo_h, unit_comp, Operad, SymSeq};

/// A listed corpus entry and its expected carrier cardinalities.
#[derive(Clone, Copy, Debug)]
pub struct CorpusEntry {
    pub id: &'static str,
    pub kind: Kind,
    pub summary: &'static str,
    /// `|X(n)|` for carriers graded by arity; for algebras and modules, the
    /// size of the underlying set at max arity `n`.
    pub card: fn(usize) -> usize,
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

pub const ENTRIES: &[CorpusEntry] = &[
    CorpusEntry {
        id: "qo/com-pos",
        kind: Kind::Operad,
        summary: "commutative operations of positive arity",
        card: |n| usize::from(n > 0),
    },
    CorpusEntry {
        id: "qo/ass",
        kind: Kind::Operad,
        summary: "associative operations; the regular S_n-set in arity n > 0",
        card: |n| if n == 0 { 0 } else { factorial(n) },
    },
    CorpusEntry {
        id: "qo/unit",
        kind: Kind::Symseq,
        summary: "unit of the composition product",
        card: |n| usize::from(n == 1),
    },
    CorpusEntry {
        id: "qo/h2",
        kind: Kind::Symseq,
        summary: "representable symmetric sequence h_2",
        card: |n| if n == 2 { 2 } else { 0 },
    },
    CorpusEntry {
        id: "qo/com-pos/free/2",
        kind: Kind::Algebra,
        summary: "free Com≥1-algebra on two generators: nonempty multisets",
        card: |n| n * (n + 3) / 2,
    },
    CorpusEntry {
        id: "qo/ass/free/2",
        kind: Kind::Algebra,
        summary: "free Ass-algebra on two generators: nonempty words",
        card: |n| (1 << (n + 1)) - 2,
    },
    CorpusEntry {
        id: "qc/identity",
        kind: Kind::Monad,
        summary: "identity monad, Σ(n) = n",
        card: |n| n,
    },
    CorpusEntry {
        id: "qc/pointed",
        kind: Kind::Monad,
        summary: "pointed sets, Σ(n) = n ⊔ {*}",
        card: |n| n + 1,
    },
    CorpusEntry {
        id: "qc/powerset",
        kind: Kind::Monad,
        summary: "finite powerset (join-semilattices with zero), Σ(n) = 2^n",
        card: |n| 1 << n,
    },
    CorpusEntry {
        id: "qc/h2",
        kind: Kind::Monad,
        summary: "reader monad n ↦ n^2",
        card: |n| n * n,
    },
    CorpusEntry {
        id: "qc/identity/free/2",
        kind: Kind::Module,
        summary: "free module over the identity monad on two generators",
        card: |_| 2,
    },
    CorpusEntry {
        id: "qc/pointed/free/1",
        kind: Kind::Module,
        summary: "free pointed set on one generator",
        card: |_| 2,
    },
    CorpusEntry {
        id: "qc/powerset/free/1",
        kind: Kind::Module,
        summary: "free semilattice on one generator",
        card: |_| 2,
    },
    CorpusEntry {
        id: "qa/terminal",
        kind: Kind::Algebrad,
        summary: "the one-point algebrad",
        card: |_| 1,
    },
    CorpusEntry {
        id: "qa/monoid-functions",
        kind: Kind::Algebrad,
        summary: "functions into Z/2 under addition",
        card: |n| 1 << n,
    },
    CorpusEntry {
        id: "qa/monoid-functions/max3",
        kind: Kind::Algebrad,
        summary: "functions into ({0,1,2}, max)",
        card: |n| 3usize.pow(n as u32),
    },
    CorpusEntry {
        id: "qa/functions/2",
        kind: Kind::CommAlg,
        summary: "functions into a two-element set, multiplied by concatenation",
        card: |n| 1 << n,
    },
    CorpusEntry {
        id: "qa/unit",
        kind: Kind::Presheaf,
        summary: "unit presheaf h_0",
        card: |n| usize::from(n == 0),
    },
    CorpusEntry {
        id: "qa/h2",
        kind: Kind::Presheaf,
        summary: "representable presheaf h_2 = Hom(-, 2)",
        card: |n| 1 << n,
    },
];

pub fn entry(id: &str) -> Option<&'static CorpusEntry> {
    ENTRIES.iter().find(|e| e.id == id)
}

/// `Com≥1`.
pub fn com_pos(max_arity: usize) -> Result<Operad> {
    let carriers = (0..=max_arity)
        .map(|k| GSet::trivial(k, usize::from(k > 0)))
        .collect::<Result<_>>()?;
    Operad::from_fn(SymSeq::new(carriers, None)?, 0, |_, _, _| 0)
}

/// `Ass` without nullary operations: `Σ_n = S_n`, with `σ ∈ S_n` read as
/// the word `σ⁻¹(0)…σ⁻¹(n-1)` and substitution by concatenating the blocks
/// in that order.
pub fn ass(max_arity: usize) -> Result<Operad> {
    let carriers = (0..=max_arity)
        .map(|k| if k == 0 { GSet::empty(0) } else { GSet::regular(k) })
        .collect::<Result<_>>()?;
    Operad::from_fn(SymSeq::new(carriers, None)?, 0, |parts, x, ys| {
        let s = parts.len();
        let x = symmetric_group(s).expect("within cap").element(x);
        let offsets = parts.offsets();
        let mut images = vec![0; parts.total()];
        for k in 0..s {
            let before: usize = (0..s)
                .filter(|&j| x.apply(j) < x.apply(k))
                .map(|j| parts.parts()[j])
                .sum();
            let y = symmetric_group(parts.parts()[k]).expect("within cap").element(ys[k]);
            for j in 0..parts.parts()[k] {
                images[offsets[k] + j] = before + y.apply(j);
            }
        }
        Perm::from_images(images).expect("a permutation").rank()
    })
}

fn unknown(id: &str) -> Error {
    Error::UnknownId(id.to_string())
}

fn index(s: &str, prefix: &str) -> Option<usize> {
    s.strip_prefix(prefix)?.parse().ok()
}

fn operad(name: &str, id: &str, n: usize) -> Result<Operad> {
    match name {
        "com-pos" => com_pos(n),
        "ass" => ass(n),
        _ => Err(unknown(id)),
    }
}

fn monad_formula(name: &str, id: &str) -> Result<Formula> {
    Ok(match name {
        "identity" => Formula::Identity,
        "pointed" => Formula::Pointed,
        "powerset" => Formula::Powerset,
        _ => Formula::Hom(index(name, "h").ok_or_else(|| unknown(id))?),
    })
}

/// Builds the entry `id` truncated at `max_arity`.
pub fn build(id: &str, max_arity: usize) -> Result<Structure> {
    let n = max_arity;
    let path: Vec<&str> = id.split('/').collect();
    Ok(match path.as_slice() {
        ["qo", "unit"] => Structure::Symseq(unit_comp(n)?),
        ["qo", name] if name.starts_with('h') => {
            Structure::Symseq(qo_h(index(name, "h").ok_or_else(|| unknown(id))?, n)?)
        }
        ["qo", name] => Structure::Operad(operad(name, id, n)?),
        ["qo", name, "free", k] => {
            let k = k.parse().map_err(|_| unknown(id))?;
            Structure::Algebra(free_algebra(&operad(name, id, n)?, k)?.0)
        }
        ["qc", name] => Structure::Monad(formula_monad(monad_formula(name, id)?, n)?),
        ["qc", name, "free", k] => {
            let k = k.parse().map_err(|_| unknown(id))?;
            Structure::Module(free_module(&formula_monad(monad_formula(name, id)?, n)?, k)?)
        }
        ["qa", "terminal"] => Structure::Algebrad(terminal_algebrad(n)?),
        ["qa", "monoid-functions"] => Structure::Algebrad(functions_algebrad(&FiniteMonoid::add(2)?, n)?),
        ["qa", "monoid-functions", m] => Structure::Algebrad(functions_algebrad(&FiniteMonoid::parse(m)?, n)?),
        ["qa", "functions", c] => Structure::CommAlg(functions_algebra(c.parse().map_err(|_| unknown(id))?, n)?),
        ["qa", "unit"] => Structure::Presheaf(unit_qa(n)?),
        ["qa", name] => Structure::Presheaf(qa_h(index(name, "h").ok_or_else(|| unknown(id))?, n)?),
        _ => return Err(unknown(id)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn listed_cardinalities_match() {
        for e in ENTRIES {
            let s = build(e.id, 3).unwrap_or_else(|err| panic!("{}: {err}", e.id));
            assert_eq!(s.kind(), e.kind, "{}", e.id);
            let cards = s.cards();
            if cards.len() == 1 {
                assert_eq!(cards[0], (e.card)(3), "{}", e.id);
            } else {
                let expected: Vec<usize> = (0..=3).map(e.card).collect();
                assert_eq!(cards, expected, "{}", e.id);
            }
        }
    }

    #[test]
    fn unknown_ids() {
        for id in ["qo/lie", "qc/h", "qx/unit", "qa/monoid-functions/min2", "qc/pointed/free/x"] {
            assert!(build(id, 2).is_err(), "{id}");
        }
        assert!(matches!(build("qo/lie", 2), Err(Error::UnknownId(_))));
    }
}
