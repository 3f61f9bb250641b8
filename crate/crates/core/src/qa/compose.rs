use std::collections::HashMap;

use crate::error::{capacity, Error, Result};
use crate::finset::{compose_maps, tuple_at, FinMap, Merger};
use crate::qa::algebra::{block_standardizer, CommAlgObject};
use crate::qa::presheaf::{generating_maps, restrict_to, FinPresheaf};
use crate::qc::TABLE_CAP;

/// An element of `(X∘Y)(v̄)` before the coend identification: `ξ ∈ X(n)`, a
/// decomposition `b: v̄ → n̄` and `y_i ∈ Y(|b⁻¹(i)|)`, each fibre standardized
/// in increasing order.
///
/// Derived ordering compares `n`, `ξ`, `b`, then `y⃗`; class representatives
/// are least in this order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct QaElement {
    pub outer_degree: usize,
    pub outer: usize,
    pub decomposition: FinMap,
    pub inner: Vec<usize>,
}

/// `X∘Y` with the canonical representative of every class.
#[derive(Clone, Debug)]
pub struct QaComposite {
    pub presheaf: FinPresheaf,
    /// Per degree, class representatives in increasing order.
    pub elements: Vec<Vec<QaElement>>,
    members: Vec<HashMap<QaElement, usize>>,
}

impl QaComposite {
    /// Class of an arbitrary element.
    pub fn class_of(&self, e: &QaElement) -> Option<usize> {
        self.members.get(e.decomposition.dom())?.get(e).copied()
    }
}

fn fibre_mask(b: &FinMap, i: usize) -> usize {
    b.fibre(i).iter().map(|j| 1 << j).sum()
}

/// The covariant action of `φ: m̄ → n̄` on `Y^{⊗m}(v̄)`: blocks with the same
/// image are multiplied in increasing order and transported onto the merged
/// fibre; empty fibres receive the unit.
pub(crate) fn push_forward(y: &CommAlgObject, phi: &FinMap, b: &FinMap, ys: &[usize]) -> (FinMap, Vec<usize>) {
    let b2 = compose_maps(b, phi).expect("composable");
    let zs = (0..phi.cod())
        .map(|i| {
            let sources = phi.fibre(i);
            let parts: Vec<(usize, usize)> = sources.iter().map(|&j| (b.fibre(j).len(), ys[j])).collect();
            let (_, w) = y.mul_many(&parts);
            let local: Vec<usize> = b2
                .fibre(i)
                .iter()
                .map(|&v| sources.binary_search(&b.apply(v)).expect("in fibre"))
                .collect();
            let lb = FinMap::new(sources.len(), local).expect("local decomposition");
            y.carrier().restrict(&block_standardizer(&lb), w)
        })
        .collect();
    (b2, zs)
}

/// Restriction of `(b, y⃗) ∈ Y^{⊗n}(v̄)` along `f: w̄ → v̄`.
pub(crate) fn pull_back(y: &FinPresheaf, f: &FinMap, b: &FinMap, ys: &[usize]) -> (FinMap, Vec<usize>) {
    let bf = compose_maps(f, b).expect("composable");
    let zs = ys
        .iter()
        .enumerate()
        .map(|(i, &yi)| y.restrict(&restrict_to(f, fibre_mask(b, i)), yi))
        .collect();
    (bf, zs)
}

/// Flat indexing of the pre-quotient `⊔_{n≤s} X(n) × Y^{⊗n}(v̄)`.
struct Layout<'a> {
    y: &'a FinPresheaf,
    v: usize,
    /// `base[n][ξ·|Hom(v,n)| + rank(b)]`, with a running total.
    base: Vec<Vec<usize>>,
    total: usize,
}

impl<'a> Layout<'a> {
    fn new(x: &FinPresheaf, y: &'a FinPresheaf, v: usize, s: usize) -> Result<Self> {
        let mut base = Vec::new();
        let mut total = 0usize;
        for n in 0..=s {
            let mut row = Vec::new();
            for _ in 0..x.card(n) {
                for b in FinMap::all(v, n) {
                    row.push(total);
                    total += Self::radices_of(y, &b).iter().product::<usize>();
                    if total > TABLE_CAP {
                        return Err(capacity("composite pre-quotient size", total, TABLE_CAP));
                    }
                }
            }
            base.push(row);
        }
        Ok(Layout { y, v, base, total })
    }

    fn radices_of(y: &FinPresheaf, b: &FinMap) -> Vec<usize> {
        (0..b.cod()).map(|i| y.card(b.fibre(i).len())).collect()
    }

    fn index(&self, n: usize, xi: usize, b: &FinMap, ys: &[usize]) -> usize {
        let r = Self::radices_of(self.y, b);
        self.base[n][xi * FinMap::count(self.v, n) + b.rank()] + crate::finset::tuple_index(ys, &r)
    }

    fn elements(&self) -> Vec<QaElement> {
        let mut out = Vec::with_capacity(self.total);
        for (n, row) in self.base.iter().enumerate() {
            for (j, _) in row.iter().enumerate() {
                let per = FinMap::count(self.v, n);
                let (xi, b) = (j / per, FinMap::unrank(self.v, n, j % per));
                let r = Self::radices_of(self.y, &b);
                for t in 0..r.iter().product::<usize>() {
                    out.push(QaElement {
                        outer_degree: n,
                        outer: xi,
                        decomposition: b.clone(),
                        inner: tuple_at(t, &r),
                    });
                }
            }
        }
        debug_assert_eq!(out.len(), self.total);
        out
    }
}

/// `(X∘Y)(V) = ∫^{n} X(n) × Y^{⊗n}(V)`, where `Y^{⊗n}` is covariant in `n̄`
/// through the multiplication of `Y`.
///
/// `X` must declare a generation bound `s ≤ N`; the coend is then taken over
/// `n ≤ s`, which is exact. Relations are imposed along generating maps.
pub fn compose_qa(x: &FinPresheaf, y: &CommAlgObject) -> Result<QaComposite> {
    let n_max = x.max_arity();
    if y.max_arity() != n_max {
        return Err(Error::Domain(format!(
            "max arities differ: {n_max} and {}",
            y.max_arity()
        )));
    }
    let s = x.bounded_degree("composition").map_err(|e| match e {
        Error::Precondition(m) => Error::UnboundedComposition(m),
        e => e,
    })?;
    let yp = y.carrier();
    let gens = generating_maps(s);

    let mut elements = Vec::with_capacity(n_max + 1);
    let mut members = Vec::with_capacity(n_max + 1);
    let mut projections = Vec::with_capacity(n_max + 1);
    let mut layouts = Vec::with_capacity(n_max + 1);
    for v in 0..=n_max {
        let layout = Layout::new(x, yp, v, s)?;
        let mut merger = Merger::new(layout.total);
        for phi in &gens {
            let (m, n) = (phi.dom(), phi.cod());
            let xphi = x.restriction_table(phi);
            for b in FinMap::all(v, m) {
                let r = Layout::radices_of(yp, &b);
                for t in 0..r.iter().product::<usize>() {
                    let ys = tuple_at(t, &r);
                    let (b2, zs) = push_forward(y, phi, &b, &ys);
                    for (xi, &pxi) in xphi.iter().enumerate() {
                        merger.merge(layout.index(m, pxi, &b, &ys), layout.index(n, xi, &b2, &zs));
                    }
                }
            }
        }
        let q = merger.finish();
        let raw = layout.elements();
        // Classes are ordered by least member, and raw elements are listed in
        // increasing order, so representatives come out sorted.
        let reps: Vec<QaElement> = q.classes.iter().map(|c| raw[c[0]].clone()).collect();
        let member: HashMap<QaElement, usize> = raw.into_iter().zip(q.projection.iter().copied()).collect();
        elements.push(reps);
        members.push(member);
        projections.push(q.projection);
        layouts.push(layout);
    }

    let cards: Vec<usize> = elements.iter().map(Vec::len).collect();
    let bound = y.carrier().generation_bound().map(|t| s * t);
    let presheaf = FinPresheaf::from_fn(cards, bound, |f, c| {
        let e = &elements[f.cod()][c];
        let (b2, zs) = pull_back(yp, f, &e.decomposition, &e.inner);
        let flat = layouts[f.dom()].index(e.outer_degree, e.outer, &b2, &zs);
        projections[f.dom()][flat]
    })?;
    let labels = elements
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| {
                    let ys: Vec<String> = e
                        .inner
                        .iter()
                        .enumerate()
                        .map(|(i, &yi)| yp.label(e.decomposition.fibre(i).len(), yi))
                        .collect();
                    format!("{}; {}; ({})", x.label(e.outer_degree, e.outer), e.decomposition, ys.join(", "))
                })
                .collect()
        })
        .collect();
    Ok(QaComposite {
        presheaf: presheaf.with_labels(labels),
        elements,
        members,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qa::algebra::functions_algebra;
    use crate::qa::presheaf::{representable, terminal, unit_qa, validate_presheaf};

    #[test]
    fn point_is_left_unit() {
        let y = functions_algebra(2, 3).unwrap();
        let c = compose_qa(&terminal(3).unwrap(), &y).unwrap();
        assert_eq!(c.presheaf.cards(), y.carrier().cards());
        assert!(validate_presheaf(&c.presheaf).is_ok());
    }

    #[test]
    fn outer_unit_collapses_to_a_point_in_degree_zero() {
        let y = functions_algebra(2, 3).unwrap();
        let c = compose_qa(&unit_qa(3).unwrap(), &y).unwrap();
        assert_eq!(c.presheaf.cards(), &[1, 0, 0, 0]);
    }

    #[test]
    fn h2_after_functions() {
        // Y^{⊗2} for Y = C^{(−)} is (C×C)^{(−)}: pairs of functions.
        let y = functions_algebra(2, 3).unwrap();
        let c = compose_qa(&representable(2, 3).unwrap(), &y).unwrap();
        assert_eq!(c.presheaf.cards(), &[1, 4, 16, 64]);
        assert!(validate_presheaf(&c.presheaf).is_ok());
    }

    #[test]
    fn unbounded_outer_is_refused() {
        let y = functions_algebra(2, 2).unwrap();
        let mut x = terminal(2).unwrap();
        x = FinPresheaf::new(x.cards().to_vec(), x.restrictions().to_vec(), None).unwrap();
        assert!(matches!(compose_qa(&x, &y), Err(Error::UnboundedComposition(_))));
    }
}
