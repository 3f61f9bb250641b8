use std::collections::BTreeMap;

use crate::error::{capacity, Error, Result};
use crate::finset::{tuple_at, tuple_index, Composition, FinMap};
use crate::qa::algebra::{block_standardizer, comm_alg_laws, functions_algebra, CommAlgObject};
use crate::qa::compose::{pull_back, push_forward};
use crate::qa::eval::FiniteMonoid;
use crate::qa::presheaf::{presheaf_laws, terminal};
use crate::qc::TABLE_CAP;
use crate::qo::substitution_shapes;
use crate::report::{cell_indices, visit, Law, LawRunner, Mode, Report};

/// A monoid for the composition product on presheaves: a commutative
/// algebra `Σ`, a unit `ε ∈ Σ(1)` and substitutions
/// `μ_{p⃗}: Σ(n) × Σ(p_1) × … × Σ(p_n) → Σ(p_1 + … + p_n)`, the inputs of
/// `y_i` occupying the `i`-th block.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QaAlgebrad {
    algebra: CommAlgObject,
    unit: usize,
    /// Indexed by the mixed-radix index of `(ξ, y_1, …, y_n)`.
    subs: BTreeMap<Composition, Vec<u32>>,
}

impl QaAlgebrad {
    pub fn new(algebra: CommAlgObject, unit: usize, subs: BTreeMap<Composition, Vec<u32>>) -> Result<Self> {
        let n_max = algebra.max_arity();
        if n_max == 0 || unit >= algebra.card(1) {
            return Err(Error::Domain("the unit must be an element of Σ(1)".into()));
        }
        let shapes = substitution_shapes(n_max);
        if subs.len() != shapes.len() {
            return Err(Error::Format(format!(
                "{} substitution tables, expected {}",
                subs.len(),
                shapes.len()
            )));
        }
        for parts in shapes {
            let table = subs
                .get(&parts)
                .ok_or_else(|| Error::Format(format!("missing substitution table for {parts}")))?;
            let expected: usize = radices(&algebra, &parts).iter().product();
            if table.len() != expected {
                return Err(Error::Format(format!(
                    "μ_{parts} has {} entries, expected {expected}",
                    table.len()
                )));
            }
            if let Some(v) = table.iter().find(|&&v| v as usize >= algebra.card(parts.total())) {
                return Err(Error::Format(format!("μ_{parts}: value {} out of range", v + 1)));
            }
        }
        Ok(QaAlgebrad { algebra, unit, subs })
    }

    /// Tabulates `(p⃗, ξ, y⃗) ↦ μ_{p⃗}(ξ; y⃗)`.
    pub fn from_fn(
        algebra: CommAlgObject,
        unit: usize,
        mu: impl Fn(&Composition, usize, &[usize]) -> usize,
    ) -> Result<Self> {
        let shapes = substitution_shapes(algebra.max_arity());
        let entries: usize = shapes
            .iter()
            .map(|p| radices(&algebra, p).iter().fold(1usize, |a, &r| a.saturating_mul(r)))
            .fold(0usize, usize::saturating_add);
        if entries > TABLE_CAP {
            return Err(capacity("substitution table entries", entries, TABLE_CAP));
        }
        let subs = shapes
            .into_iter()
            .map(|parts| {
                let r = radices(&algebra, &parts);
                let table = (0..r.iter().product())
                    .map(|i| {
                        let t = tuple_at(i, &r);
                        mu(&parts, t[0], &t[1..]) as u32
                    })
                    .collect();
                (parts, table)
            })
            .collect();
        Self::new(algebra, unit, subs)
    }

    pub fn algebra(&self) -> &CommAlgObject {
        &self.algebra
    }

    pub fn max_arity(&self) -> usize {
        self.algebra.max_arity()
    }

    pub fn card(&self, n: usize) -> usize {
        self.algebra.card(n)
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn subs(&self) -> &BTreeMap<Composition, Vec<u32>> {
        &self.subs
    }

    pub fn radices(&self, parts: &Composition) -> Vec<usize> {
        radices(&self.algebra, parts)
    }

    /// `μ_{p⃗}(ξ; y⃗)`.
    pub fn substitute(&self, parts: &Composition, x: usize, ys: &[usize]) -> usize {
        let idx = ys
            .iter()
            .zip(parts.parts())
            .fold(x, |acc, (&y, &p)| acc * self.card(p) + y);
        self.subs[parts][idx] as usize
    }

    /// `μ(ξ; b, y⃗)` for an arbitrary decomposition `b: v̄ → n̄`, transported
    /// from the block-standard form.
    pub fn substitute_along(&self, x: usize, b: &FinMap, ys: &[usize]) -> usize {
        Along::new(self, b, ys).apply(x)
    }

    pub fn set_entry(&mut self, parts: &Composition, index: usize, value: usize) {
        self.subs.get_mut(parts).expect("known shape")[index] = value as u32;
    }

    pub fn set_unit(&mut self, unit: usize) {
        self.unit = unit;
    }

    pub fn algebra_mut(&mut self) -> &mut CommAlgObject {
        &mut self.algebra
    }
}

/// `ξ ↦ μ(ξ; b, y⃗)` for fixed `b` and `y⃗`.
struct Along<'a> {
    table: &'a [u32],
    offset: usize,
    stride: usize,
    transport: Vec<usize>,
}

impl<'a> Along<'a> {
    fn new(a: &'a QaAlgebrad, b: &FinMap, ys: &[usize]) -> Self {
        let parts = Composition::new((0..b.cod()).map(|i| b.fibre(i).len()).collect());
        let r: Vec<usize> = parts.parts().iter().map(|&p| a.card(p)).collect();
        Along {
            table: &a.subs[&parts],
            offset: tuple_index(ys, &r),
            stride: r.iter().product(),
            transport: a.algebra.carrier().restriction_table(&block_standardizer(b)),
        }
    }

    fn apply(&self, x: usize) -> usize {
        self.transport[self.table[x * self.stride + self.offset] as usize]
    }
}

fn radices(a: &CommAlgObject, parts: &Composition) -> Vec<usize> {
    let mut r = vec![a.card(parts.len())];
    r.extend(parts.parts().iter().map(|&p| a.card(p)));
    r
}

pub fn algebrad_check(a: &QaAlgebrad) -> Report {
    algebrad_check_with(a, Mode::AllLaws)
}

/// Checks the underlying commutative algebra, then the monoid laws of `μ`
/// for the composition product: compatibility with the coend relation,
/// naturality in the free variable, compatibility with `M` and `E_0`, both
/// unit laws and associativity on two-level trees.
pub fn algebrad_check_with(a: &QaAlgebrad, mode: Mode) -> Report {
    let mut run = LawRunner::new("algebrad", mode);
    let alg = a.algebra();
    let sigma = alg.carrier();
    presheaf_laws(sigma, &mut run);
    comm_alg_laws(alg, &mut run);
    let n_max = a.max_arity();
    let shapes = substitution_shapes(n_max);
    let mut sampled = false;

    run.law(Law::LeftUnit, |visit| {
        for p in 0..=n_max {
            let parts = Composition::new(vec![p]);
            for y in 0..a.card(p) {
                let ok = a.substitute(&parts, a.unit(), &[y]) == y;
                visit!(visit, ok, format!("μ_({p})(ε; y)"), vec![y]);
            }
        }
    });
    run.law(Law::RightUnit, |visit| {
        for n in 0..=n_max {
            let parts = Composition::new(vec![1; n]);
            let units = vec![a.unit(); n];
            for x in 0..a.card(n) {
                let ok = a.substitute(&parts, x, &units) == x;
                visit!(visit, ok, format!("μ_{parts}(ξ; ε, …, ε)"), vec![x]);
            }
        }
    });
    // Both laws below compare a table lookup against a transported
    // substitution; everything but ξ is fixed in the inner loop.
    run.law(Law::CoendCompatibility, |visit| {
        for parts in &shapes {
            let b = parts.block_map();
            let table = &a.subs[parts];
            let r = &a.radices(parts)[1..];
            let stride: usize = r.iter().product();
            for n in 0..=n_max {
                for phi in FinMap::all(parts.len(), n) {
                    let sphi = sigma.restriction_table(&phi);
                    let (indices, s) = cell_indices(stride);
                    sampled |= s;
                    for i in indices {
                        let ys = tuple_at(i, r);
                        let (b2, zs) = push_forward(alg, &phi, &b, &ys);
                        let along = Along::new(a, &b2, &zs);
                        for x in 0..a.card(n) {
                            let ok = table[sphi[x] * stride + i] as usize == along.apply(x);
                            visit!(visit, ok, format!("μ_{parts} along φ = {phi}"), [&[x], ys.as_slice()].concat());
                        }
                    }
                }
            }
        }
    });
    run.law(Law::Naturality, |visit| {
        for parts in &shapes {
            let b = parts.block_map();
            let table = &a.subs[parts];
            let r = &a.radices(parts)[1..];
            let stride: usize = r.iter().product();
            for w in 0..=n_max {
                for f in FinMap::all(w, parts.total()) {
                    let sf = sigma.restriction_table(&f);
                    let (indices, s) = cell_indices(stride);
                    sampled |= s;
                    for i in indices {
                        let ys = tuple_at(i, r);
                        let (b2, zs) = pull_back(sigma, &f, &b, &ys);
                        let along = Along::new(a, &b2, &zs);
                        for x in 0..a.card(parts.len()) {
                            let ok = sf[table[x * stride + i] as usize] == along.apply(x);
                            visit!(visit, ok, format!("μ_{parts} restricted along {f}"), [&[x], ys.as_slice()].concat());
                        }
                    }
                }
            }
        }
    });
    run.law(Law::AlgebraMorphism, |visit| {
        let empty = Composition::new(vec![]);
        let ok = a.substitute(&empty, alg.unit(), &[]) == alg.unit();
        visit!(visit, ok, "μ_()(E_0)".to_string(), vec![alg.unit()]);
        for p in &shapes {
            for q in &shapes {
                let (n, n2) = (p.len(), q.len());
                if n + n2 > n_max || p.total() + q.total() > n_max {
                    continue;
                }
                let joined = Composition::new([p.parts(), q.parts()].concat());
                let (rp, rq) = (a.radices(p), a.radices(q));
                let r = [rp.as_slice(), rq.as_slice()].concat();
                let (indices, s) = cell_indices(r.iter().product());
                sampled |= s;
                for i in indices {
                    let t = tuple_at(i, &r);
                    let (tp, tq) = t.split_at(rp.len());
                    let ys = [&tp[1..], &tq[1..]].concat();
                    let lhs = a.substitute(&joined, alg.mul(n, n2, tp[0], tq[0]), &ys);
                    let rhs = alg.mul(
                        p.total(),
                        q.total(),
                        a.substitute(p, tp[0], &tp[1..]),
                        a.substitute(q, tq[0], &tq[1..]),
                    );
                    visit!(visit, lhs == rhs, format!("μ against M for {p} and {q}"), t);
                }
            }
        }
    });
    run.law(Law::Associativity, |visit| {
        // μ_{p⃗}(ξ; y⃗) as a raw lookup in a prefetched table.
        let lookup = |table: &[u32], parts: &Composition, x: usize, ys: &[usize]| {
            let idx = ys.iter().zip(parts.parts()).fold(x, |acc, (&y, &p)| acc * a.card(p) + y);
            table[idx] as usize
        };
        for p in &shapes {
            let tp = &a.subs[p];
            for q in (0..=n_max).flat_map(|t| Composition::enumerate(t, p.total(), 0)) {
                let tq = &a.subs[&q];
                let blocks = split_blocks(&q, p);
                let tblocks: Vec<&[u32]> = blocks.iter().map(|blk| a.subs[blk].as_slice()).collect();
                let outer = Composition::new(blocks.iter().map(Composition::total).collect());
                let touter = &a.subs[&outer];
                let mut r = a.radices(p);
                r.extend(q.parts().iter().map(|&k| a.card(k)));
                let (indices, s) = cell_indices(r.iter().product());
                sampled |= s;
                let mut inner = vec![0; p.len()];
                for i in indices {
                    let t = tuple_at(i, &r);
                    let (head, zs) = t.split_at(p.len() + 1);
                    let lhs = lookup(tq, &q, lookup(tp, p, head[0], &head[1..]), zs);
                    let mut start = 0;
                    for (k, blk) in blocks.iter().enumerate() {
                        inner[k] = lookup(tblocks[k], blk, head[1 + k], &zs[start..start + blk.len()]);
                        start += blk.len();
                    }
                    let rhs = lookup(touter, &outer, head[0], &inner);
                    visit!(visit, lhs == rhs, format!("μ_{q} ∘ μ_{p}"), t);
                }
            }
        }
    });
    if sampled {
        run.notice("some cells exceeded the instance budget and were sampled");
    }
    run.finish()
}

/// Splits `q` (of length `p.total()`) into consecutive runs of lengths `p_i`.
fn split_blocks(q: &Composition, p: &Composition) -> Vec<Composition> {
    let mut start = 0;
    p.parts()
        .iter()
        .map(|&k| {
            let c = Composition::new(q.parts()[start..start + k].to_vec());
            start += k;
            c
        })
        .collect()
}

/// The terminal algebrad: every carrier a point.
pub fn terminal_algebrad(max_arity: usize) -> Result<QaAlgebrad> {
    let algebra = CommAlgObject::from_fn(terminal(max_arity)?, 0, |_, _, _, _| 0)?;
    QaAlgebrad::from_fn(algebra, 0, |_, _, _| 0)
}

/// The algebrad of `C`-valued functions for a commutative monoid `C`:
/// `Σ(n) = C^n`, `ε = (1)`, and `μ(c⃗; d⃗_1, …, d⃗_n)` scales block `i` by `c_i`.
pub fn functions_algebrad(monoid: &FiniteMonoid, max_arity: usize) -> Result<QaAlgebrad> {
    let k = monoid.size();
    let algebra = functions_algebra(k, max_arity)?;
    QaAlgebrad::from_fn(algebra, monoid.unit(), |parts, x, ys| {
        let c = tuple_at(x, &vec![k; parts.len()]);
        let mut out = Vec::with_capacity(parts.total());
        for ((&ci, &y), &p) in c.iter().zip(ys).zip(parts.parts()) {
            out.extend(tuple_at(y, &vec![k; p]).into_iter().map(|d| monoid.op(ci, d)));
        }
        crate::finset::tuple_index(&out, &vec![k; parts.total()])
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_algebrads_pass() {
        let r = algebrad_check(&terminal_algebrad(3).unwrap());
        assert!(r.is_ok(), "{r}");
        for m in [FiniteMonoid::add(2), FiniteMonoid::mul(2), FiniteMonoid::max(3)] {
            let r = algebrad_check(&functions_algebrad(&m.unwrap(), 3).unwrap());
            assert!(r.is_ok(), "{r}");
            assert!(r.notices.is_empty());
        }
    }

    #[test]
    fn mutation_fails() {
        let mut a = functions_algebrad(&FiniteMonoid::mul(2).unwrap(), 2).unwrap();
        let parts = Composition::new(vec![1, 1]);
        let i = a.subs()[&parts].len() - 1;
        let v = a.subs()[&parts][i] as usize;
        a.set_entry(&parts, i, (v + 1) % a.card(2));
        assert!(!algebrad_check(&a).is_ok());
    }

    #[test]
    fn transported_substitution() {
        let a = functions_algebrad(&FiniteMonoid::mul(2).unwrap(), 3).unwrap();
        // ξ = (1, 0): block 1 kept, block 2 zeroed; b interleaves the blocks.
        let b = FinMap::new(2, vec![1, 0, 1]).unwrap();
        let x = crate::finset::tuple_index(&[1, 0], &[2, 2]);
        let out = a.substitute_along(x, &b, &[1, 3]);
        assert_eq!(tuple_at(out, &[2, 2, 2]), vec![0, 1, 0]);
    }
}
