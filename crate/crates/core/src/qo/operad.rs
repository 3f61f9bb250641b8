use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::finset::{symmetric_group, tuple_index, tuples, Composition, Perm};
use crate::qo::symseq::{validate_symseq, SymSeq};
use crate::report::{visit, Law, LawRunner, Mode, Report};

/// A symmetric operad given by its substitution family
/// `μ_{p_1,…,p_s}: Σ_s × Σ_{p_1} × … × Σ_{p_s} → Σ_{p_1+…+p_s}` and unit
/// `ε ∈ Σ_1`.
///
/// One table is stored per composition with `s ≤ N` and total `≤ N`; the
/// entry for `(x, y_1, …, y_s)` sits at the mixed-radix index of that tuple.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Operad {
    carrier: SymSeq,
    unit: usize,
    subs: BTreeMap<Composition, Vec<u32>>,
}

/// Every composition indexing a substitution table at truncation `n_max`.
pub fn substitution_shapes(n_max: usize) -> Vec<Composition> {
    let mut out = Vec::new();
    for s in 0..=n_max {
        for total in 0..=n_max {
            out.extend(Composition::enumerate(total, s, 0));
        }
    }
    out
}

impl Operad {
    pub fn new(carrier: SymSeq, unit: usize, subs: BTreeMap<Composition, Vec<u32>>) -> Result<Self> {
        let n_max = carrier.max_arity();
        if n_max == 0 || unit >= carrier.carrier(1).size() {
            return Err(Error::Domain("the unit must be an element of Σ_1".into()));
        }
        for parts in substitution_shapes(n_max) {
            let table = subs
                .get(&parts)
                .ok_or_else(|| Error::Format(format!("missing substitution table for {parts}")))?;
            let radices = Self::radices_for(&carrier, &parts);
            let expected: usize = radices.iter().product();
            if table.len() != expected {
                return Err(Error::Format(format!(
                    "substitution table for {parts} has {} entries, expected {expected}",
                    table.len()
                )));
            }
            let out = carrier.carrier(parts.total()).size();
            if let Some(v) = table.iter().find(|&&v| v as usize >= out) {
                return Err(Error::Format(format!(
                    "substitution table for {parts}: entry {} out of range 1..={out}",
                    v + 1
                )));
            }
        }
        if let Some(extra) = subs.keys().find(|p| p.len() > n_max || p.total() > n_max) {
            return Err(Error::Format(format!("substitution table for {extra} exceeds max arity")));
        }
        Ok(Operad {
            carrier,
            unit,
            subs,
        })
    }

    /// Tabulates `μ` from a closure `(parts, x, y⃗) ↦ μ_parts(x; y⃗)`.
    pub fn from_fn(
        carrier: SymSeq,
        unit: usize,
        mu: impl Fn(&Composition, usize, &[usize]) -> usize,
    ) -> Result<Self> {
        let mut subs = BTreeMap::new();
        for parts in substitution_shapes(carrier.max_arity()) {
            let radices = Self::radices_for(&carrier, &parts);
            let table = tuples(&radices)
                .iter()
                .map(|t| mu(&parts, t[0], &t[1..]) as u32)
                .collect();
            subs.insert(parts, table);
        }
        Self::new(carrier, unit, subs)
    }

    fn radices_for(carrier: &SymSeq, parts: &Composition) -> Vec<usize> {
        std::iter::once(carrier.carrier(parts.len()).size())
            .chain(parts.parts().iter().map(|&p| carrier.carrier(p).size()))
            .collect()
    }

    pub fn carrier(&self) -> &SymSeq {
        &self.carrier
    }

    pub fn max_arity(&self) -> usize {
        self.carrier.max_arity()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn subs(&self) -> &BTreeMap<Composition, Vec<u32>> {
        &self.subs
    }

    pub fn radices(&self, parts: &Composition) -> Vec<usize> {
        Self::radices_for(&self.carrier, parts)
    }

    /// `μ_parts(x; y⃗)`; panics outside the truncation.
    pub fn substitute(&self, parts: &Composition, x: usize, ys: &[usize]) -> usize {
        let radices = self.radices(parts);
        let mut t = Vec::with_capacity(ys.len() + 1);
        t.push(x);
        t.extend_from_slice(ys);
        self.subs[parts][tuple_index(&t, &radices)] as usize
    }

    pub fn set_entry(&mut self, parts: &Composition, index: usize, value: usize) {
        if let Some(t) = self.subs.get_mut(parts) {
            t[index] = value as u32;
        }
    }

    pub fn set_unit(&mut self, unit: usize) {
        self.unit = unit;
    }

    /// Mutable action tables of the carrier, for mutation testing.
    pub fn carrier_mut(&mut self) -> &mut SymSeq {
        &mut self.carrier
    }
}

/// The block relabeling of an adjacent transposition `σ ∈ S_s`: the new
/// parts `p∘σ` and the permutation `β_σ` of inputs moving block `j` to the
/// place of block `σ(j)`.
pub(crate) fn relabeling(parts: &Composition, sigma: &Perm) -> (Composition, Perm) {
    let new_parts = Composition::new(sigma.permute(parts.parts()));
    let new_offsets = new_parts.offsets();
    let mut beta = vec![0; parts.total()];
    for (j, (&p, o)) in parts.parts().iter().zip(parts.offsets()).enumerate() {
        let o_new = new_offsets[sigma.inverse().apply(j)];
        for i in 0..p {
            beta[o + i] = o_new + i;
        }
    }
    (new_parts, Perm::from_images(beta).expect("block relabeling"))
}

/// Rank of the permutation acting as `h` on block `k` and fixing the rest.
fn block_generator(parts: &Composition, k: usize, h: &Perm) -> usize {
    let o = parts.offsets()[k];
    let mut images: Vec<usize> = (0..parts.total()).collect();
    for j in 0..parts.parts()[k] {
        images[o + j] = o + h.apply(j);
    }
    Perm::from_images(images).expect("block generator").rank()
}

pub fn operad_monoid_check(o: &Operad) -> Report {
    operad_check_with(o, Mode::AllLaws)
}

/// Checks the carrier's actions, the unit laws, equivariance under the
/// block subgroup, invariance under relabeling of the outer inputs, and
/// associativity on every two-level tree within the truncation.
pub fn operad_check_with(o: &Operad, mode: Mode) -> Report {
    let mut run = LawRunner::new("operad", mode);
    let carrier_report = validate_symseq(o.carrier());
    let action_failures = carrier_report.violations.clone();
    for law in [Law::ActionIdentity, Law::ActionCompatibility] {
        run.law(law, |visit| {
            if let Some(v) = action_failures.iter().find(|v| v.law == law) {
                let witness = v.witness.iter().map(|w| w - 1).collect();
                visit(Some((v.location.clone(), witness)));
            }
        });
    }
    let n_max = o.max_arity();
    let sigma = |n: usize| o.carrier().carrier(n);
    let shapes = substitution_shapes(n_max);

    run.law(Law::LeftUnit, |visit| {
        for n in 0..=n_max {
            let parts = Composition::new(vec![n]);
            for y in 0..sigma(n).size() {
                let got = o.substitute(&parts, o.unit(), &[y]);
                visit!(visit, got == y, format!("μ_{parts}(ε; y)"), vec![y]);
            }
        }
    });
    run.law(Law::RightUnit, |visit| {
        for s in 0..=n_max {
            let parts = Composition::new(vec![1; s]);
            let units = vec![o.unit(); s];
            for x in 0..sigma(s).size() {
                let got = o.substitute(&parts, x, &units);
                visit!(visit, got == x, format!("μ_{parts}(x; ε, …, ε)"), vec![x]);
            }
        }
    });
    run.law(Law::Equivariance, |visit| {
        for parts in &shapes {
            let out = sigma(parts.total());
            let radices = o.radices(parts);
            for t in tuples(&radices) {
                let base = o.substitute(parts, t[0], &t[1..]);
                for (k, &p) in parts.parts().iter().enumerate() {
                    let g = symmetric_group(p).expect("within cap");
                    for h in g.generators() {
                        let mut moved = t.clone();
                        moved[k + 1] = sigma(p).act(t[k + 1], h);
                        let lhs = o.substitute(parts, moved[0], &moved[1..]);
                        let rhs = out.act(base, block_generator(parts, k, g.element(h)));
                        visit!(
                            visit,
                            lhs == rhs,
                            format!("μ_{parts} with block {} acted on by {}", k + 1, g.element(h)),
                            t.clone()
                        );
                    }
                }
            }
        }
    });
    run.law(Law::Relabeling, |visit| {
        for parts in &shapes {
            let s = parts.len();
            let gs = symmetric_group(s).expect("within cap");
            let out = sigma(parts.total());
            let radices = o.radices(parts);
            for sg in gs.generators() {
                let swap = gs.element(sg);
                let (new_parts, beta) = relabeling(parts, swap);
                for t in tuples(&radices) {
                    let base = o.substitute(parts, t[0], &t[1..]);
                    let ys = swap.permute(&t[1..]);
                    let moved = o.substitute(&new_parts, sigma(s).act(t[0], sg), &ys);
                    let lhs = out.act_perm(moved, &beta);
                    visit!(
                        visit,
                        lhs == base,
                        format!("μ_{parts} relabeled by {swap}"),
                        t.clone()
                    );
                }
            }
        }
    });
    run.law(Law::Associativity, |visit| {
        for outer in &shapes {
            let p_total = outer.total();
            for q_total in 0..=n_max {
                for inner in Composition::enumerate(q_total, p_total, 0) {
                    // Group the inner parts by outer block.
                    let offsets = outer.offsets();
                    let grouped: Vec<Composition> = outer
                        .parts()
                        .iter()
                        .zip(&offsets)
                        .map(|(&p, &off)| Composition::new(inner.parts()[off..off + p].to_vec()))
                        .collect();
                    let merged = Composition::new(grouped.iter().map(Composition::total).collect());
                    let mut radices = o.radices(outer);
                    radices.extend(inner.parts().iter().map(|&q| sigma(q).size()));
                    let s = outer.len();
                    for t in tuples(&radices) {
                        let (x, rest) = (t[0], &t[1..]);
                        let (ys, zs) = rest.split_at(s);
                        let lhs = o.substitute(&inner, o.substitute(outer, x, ys), zs);
                        let inner_results: Vec<usize> = grouped
                            .iter()
                            .zip(ys)
                            .zip(&offsets)
                            .map(|((g, &y), &off)| o.substitute(g, y, &zs[off..off + g.len()]))
                            .collect();
                        let rhs = o.substitute(&merged, x, &inner_results);
                        visit!(
                            visit,
                            lhs == rhs,
                            format!("outer {outer}, inner {inner}"),
                            t.clone()
                        );
                    }
                }
            }
        }
    });
    run.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::GSet;

    fn com_pos(n: usize) -> Operad {
        let carriers = (0..=n)
            .map(|k| GSet::trivial(k, usize::from(k > 0)))
            .collect::<Result<_>>()
            .unwrap();
        Operad::from_fn(SymSeq::new(carriers, None).unwrap(), 0, |_, _, _| 0).unwrap()
    }

    #[test]
    fn com_pos_passes() {
        let r = operad_monoid_check(&com_pos(3));
        assert!(r.is_ok(), "{r}");
        assert!(r.checked > 0);
    }

    fn ass(n: usize) -> Operad {
        let carriers = (0..=n)
            .map(|k| if k == 0 { GSet::empty(0) } else { GSet::regular(k) })
            .collect::<Result<_>>()
            .unwrap();
        Operad::from_fn(SymSeq::new(carriers, None).unwrap(), 0, |parts, x, ys| {
            let s = parts.len();
            let x = symmetric_group(s).unwrap().element(x);
            let offsets = parts.offsets();
            let mut images = vec![0; parts.total()];
            for k in 0..s {
                let before: usize = (0..s).filter(|&j| x.apply(j) < x.apply(k)).map(|j| parts.parts()[j]).sum();
                let y = symmetric_group(parts.parts()[k]).unwrap().element(ys[k]);
                for j in 0..parts.parts()[k] {
                    images[offsets[k] + j] = before + y.apply(j);
                }
            }
            Perm::from_images(images).unwrap().rank()
        })
        .unwrap()
    }

    #[test]
    fn ass_passes_and_mutation_fails() {
        let mut o = ass(3);
        let r = operad_monoid_check(&o);
        assert!(r.is_ok(), "{r}");
        let p = Composition::new(vec![1, 2]);
        let v = o.substitute(&p, 0, &[0, 0]);
        o.set_entry(&p, 0, (v + 1) % 6);
        assert!(!operad_monoid_check(&o).is_ok());
    }

    #[test]
    fn relabeling_moves_blocks() {
        let parts = Composition::new(vec![2, 1]);
        let swap = Perm::from_images(vec![1, 0]).unwrap();
        let (p, beta) = relabeling(&parts, &swap);
        assert_eq!(p.parts(), &[1, 2]);
        assert_eq!(beta.images(), &[1, 2, 0]);
    }

    #[test]
    fn bad_unit_is_rejected() {
        let o = com_pos(2);
        assert!(Operad::new(o.carrier().clone(), 1, o.subs().clone()).is_err());
    }
}
