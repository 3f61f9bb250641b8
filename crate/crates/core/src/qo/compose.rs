use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::finset::{induce, symmetric_group, Composition, GSet, Induced, Merger, Perm};
use crate::qo::symseq::{shared_arity, SymSeq};

/// An element of `(X∘Y)_n` before the `S_s` identification: an outer
/// operation `x ∈ X_s`, inner operations `y_k ∈ Y_{p_k}`, and a canonical
/// right coset representative of `S_{p_1}×…×S_{p_s}` in `S_n` placing the
/// inputs.
///
/// Derived ordering compares `s` first, then `x`, the parts, the coset and
/// the inner operations; class representatives are least in this order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct QoElement {
    pub outer_arity: usize,
    pub outer: usize,
    pub parts: Composition,
    pub coset: Perm,
    pub inner: Vec<usize>,
}

impl QoElement {
    pub fn arity(&self) -> usize {
        self.parts.total()
    }
}

/// `X∘Y` with the canonical representative of every class.
#[derive(Clone, Debug)]
pub struct Composite {
    pub seq: SymSeq,
    /// Per arity, class representatives in increasing order.
    pub elements: Vec<Vec<QoElement>>,
    members: Vec<HashMap<QoElement, usize>>,
}

impl Composite {
    /// Class of an arbitrary (not necessarily canonical) triple.
    pub fn class_of(&self, e: &QoElement) -> Option<usize> {
        self.members.get(e.arity())?.get(e).copied()
    }
}

/// One summand `X_s × Ind(Y_{p_1}×…×Y_{p_s})` of the pre-quotient.
struct Block {
    parts: Composition,
    ind: Induced,
    offset: usize,
}

impl Block {
    fn element(&self, x: usize, e: usize) -> QoElement {
        let label = &self.ind.labels[e];
        QoElement {
            outer_arity: self.parts.len(),
            outer: x,
            parts: self.parts.clone(),
            coset: self.ind.subgroup.cosets()[label.coset].clone(),
            inner: label.factors.clone(),
        }
    }
}

/// `(X∘Y)_n = (⊔_{p_1+…+p_s=n} X_s × Ind^{S_n}(Y_{p_1}×…×Y_{p_s}))/S_s`.
///
/// `S_s` relabels the inner operations: `σ` sends `(x, y⃗, r)` to
/// `(x·σ, y⃗∘σ, β_σ∘r)`, where `β_σ` moves each block of inputs to its new
/// place. When `Y_0 ≠ ∅` every `s` contributes to every arity, so `X` must
/// declare a support bound within the truncation.
pub fn compose(x: &SymSeq, y: &SymSeq) -> Result<Composite> {
    let n_max = shared_arity(&[x, y])?;
    let nullary = !y.carrier(0).is_empty();
    let s_cap = if nullary {
        match x.support_bound() {
            Some(b) if b <= n_max => Some(b),
            Some(b) => {
                return Err(Error::UnboundedComposition(format!(
                    "Y_0 is inhabited and the outer support bound {b} exceeds max arity {n_max}"
                )))
            }
            None => {
                return Err(Error::UnboundedComposition(
                    "Y_0 is inhabited and the outer sequence declares no support bound".into(),
                ))
            }
        }
    } else {
        None
    };
    let min_part = usize::from(!nullary);

    let mut carriers = Vec::with_capacity(n_max + 1);
    let mut elements = Vec::with_capacity(n_max + 1);
    let mut members = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let (gset, reps, member) = compose_arity(x, y, n, s_cap.unwrap_or(n), min_part)?;
        carriers.push(gset);
        elements.push(reps);
        members.push(member);
    }
    let support = match (x.support_bound(), y.support_bound()) {
        (Some(a), Some(b)) => Some(a * b),
        (Some(0), None) => Some(0),
        _ => None,
    };
    Ok(Composite {
        seq: SymSeq::new(carriers, support)?,
        elements,
        members,
    })
}

type ArityResult = (GSet, Vec<QoElement>, HashMap<QoElement, usize>);

fn compose_arity(x: &SymSeq, y: &SymSeq, n: usize, s_max: usize, min_part: usize) -> Result<ArityResult> {
    let mut blocks = Vec::new();
    let mut index: BTreeMap<Composition, usize> = BTreeMap::new();
    let mut total = 0;
    for s in 0..=s_max.min(x.max_arity()) {
        let outer = x.carrier(s);
        if outer.is_empty() {
            continue;
        }
        for parts in Composition::enumerate(n, s, min_part) {
            let factors: Vec<&GSet> = parts.parts().iter().map(|&p| y.carrier(p)).collect();
            if factors.iter().any(|f| f.is_empty()) {
                continue;
            }
            let ind = induce(&factors)?;
            index.insert(parts.clone(), blocks.len());
            let size = outer.size() * ind.gset.size();
            blocks.push(Block {
                parts,
                ind,
                offset: total,
            });
            total += size;
        }
    }

    let locate = |flat: usize| -> (usize, usize, usize) {
        let b = blocks.partition_point(|blk| blk.offset <= flat) - 1;
        let inner = blocks[b].ind.gset.size();
        let local = flat - blocks[b].offset;
        (b, local / inner, local % inner)
    };

    let mut merger = Merger::new(total);
    for blk in &blocks {
        let s = blk.parts.len();
        let outer = x.carrier(s);
        let sg = symmetric_group(s)?;
        let offsets = blk.parts.offsets();
        for (k, &sigma) in sg.generators().iter().enumerate() {
            let swap = sg.element(sigma);
            let new_parts = Composition::new(swap.permute(blk.parts.parts()));
            let target = &blocks[index[&new_parts]];
            let new_offsets = new_parts.offsets();
            // β_σ: block `j` of the old layout becomes block `σ(j)`.
            let mut beta = vec![0; n];
            for (j, (&p, &o)) in blk.parts.parts().iter().zip(&offsets).enumerate() {
                let o_new = new_offsets[swap.apply(j)];
                for i in 0..p {
                    beta[o + i] = o_new + i;
                }
            }
            let beta = Perm::from_images(beta).expect("block relabeling");
            debug_assert_eq!(swap.apply(k), k + 1);
            for (e, label) in blk.ind.labels.iter().enumerate() {
                let r = &blk.ind.subgroup.cosets()[label.coset];
                let moved = beta.mul(r);
                let (c, _) = target.ind.subgroup.decompose(moved.rank());
                let ys = swap.permute(&label.factors);
                let e2 = target.ind.index_of(&ys, c);
                for xo in 0..outer.size() {
                    let x2 = outer.act(xo, sigma);
                    merger.merge(
                        blk.offset + xo * blk.ind.gset.size() + e,
                        target.offset + x2 * target.ind.gset.size() + e2,
                    );
                }
            }
        }
    }
    let q = merger.finish();

    let element_at = |flat: usize| {
        let (b, xo, e) = locate(flat);
        blocks[b].element(xo, e)
    };
    let mut reps: Vec<(QoElement, usize)> = q
        .classes
        .iter()
        .enumerate()
        .map(|(ci, members)| {
            let rep = members.iter().map(|&m| element_at(m)).min().expect("nonempty class");
            (rep, ci)
        })
        .collect();
    reps.sort();
    let mut renumber = vec![0; reps.len()];
    for (new, (_, old)) in reps.iter().enumerate() {
        renumber[*old] = new;
    }
    let class_of = |flat: usize| renumber[q.projection[flat]];

    let mut member = HashMap::with_capacity(total);
    for flat in 0..total {
        member.insert(element_at(flat), class_of(flat));
    }
    // Any member of a class works as a base point for the action; use the
    // least flat index.
    let base: Vec<usize> = {
        let mut base = vec![0; reps.len()];
        for (ci, members) in q.classes.iter().enumerate() {
            base[renumber[ci]] = members[0];
        }
        base
    };
    let gset = GSet::from_fn(n, reps.len(), |c, tau| {
        let (b, xo, e) = locate(base[c]);
        let blk = &blocks[b];
        class_of(blk.offset + xo * blk.ind.gset.size() + blk.ind.gset.act(e, tau))
    })?;
    Ok((gset, reps.into_iter().map(|(e, _)| e).collect(), member))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::gset_iso;
    use crate::qo::symseq::{representable, unit_comp, unit_tensor};

    fn com_pos(n: usize) -> SymSeq {
        let carriers = (0..=n)
            .map(|k| GSet::trivial(k, usize::from(k > 0)))
            .collect::<Result<_>>()
            .unwrap();
        SymSeq::new(carriers, None).unwrap()
    }

    fn iso(a: &SymSeq, b: &SymSeq) -> bool {
        (0..=a.max_arity()).all(|n| gset_iso(a.carrier(n), b.carrier(n)).unwrap())
    }

    #[test]
    fn com_pos_squared() {
        let c = com_pos(4);
        let cc = compose(&c, &c).unwrap();
        assert_eq!(cc.seq.carrier(2).size(), 2);
        assert!(cc.seq.carrier(2).is_valid());
        // Classes are set partitions of the inputs: Bell numbers.
        assert_eq!(cc.seq.sizes(), vec![0, 1, 2, 5, 15]);
    }

    #[test]
    fn units() {
        let c = com_pos(3);
        let u = unit_comp(3).unwrap();
        assert!(iso(&compose(&c, &u).unwrap().seq, &c));
        assert!(iso(&compose(&u, &c).unwrap().seq, &c));
        let r = representable(2, 3).unwrap();
        assert!(iso(&compose(&representable(1, 3).unwrap(), &r).unwrap().seq, &r));
    }

    #[test]
    fn nullary_needs_support() {
        let e = unit_tensor(3).unwrap();
        let c = com_pos(3);
        assert!(matches!(compose(&c, &e), Err(Error::UnboundedComposition(_))));
        // h_2 ∘ (point in arity 0) collapses to a point in arity 0.
        let h2 = representable(2, 3).unwrap();
        let out = compose(&h2, &e).unwrap();
        assert_eq!(out.seq.sizes(), vec![1, 0, 0, 0]);
    }

    #[test]
    fn relabeled_triples_share_a_class() {
        let h2 = representable(2, 2).unwrap();
        let u = unit_comp(2).unwrap();
        let out = compose(&h2, &u).unwrap();
        let a = QoElement {
            outer_arity: 2,
            outer: 0,
            parts: Composition::new(vec![1, 1]),
            coset: Perm::identity(2),
            inner: vec![0, 0],
        };
        let b = QoElement {
            outer: 1,
            coset: Perm::from_images(vec![1, 0]).unwrap(),
            ..a.clone()
        };
        assert_eq!(out.class_of(&a), out.class_of(&b));
        assert_eq!(out.elements[2].len(), 2);
    }
}
