use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::finset::perm::{symmetric_group, Perm, SymmetricGroup};

/// A finite set with a right action of `S_n`.
///
/// Elements are `0..size`. The action is stored as a full table indexed by
/// element and by the lexicographic rank of the permutation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GSet {
    arity: usize,
    size: usize,
    table: Vec<u32>,
}

/// A cell of an action table that breaks a right-action axiom.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub enum ActionViolation {
    /// `x·id ≠ x`.
    Identity { element: usize, image: usize },
    /// `(x·σ)·τ ≠ x·(σ·τ)`; permutations are given by rank.
    Compatibility {
        element: usize,
        sigma: usize,
        tau: usize,
    },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Orbit {
    /// Least element of the orbit.
    pub representative: usize,
    /// Members in increasing order.
    pub elements: Vec<usize>,
}

impl GSet {
    /// Wraps a raw table; entries must be in range and the length must be
    /// `size · n!`. The action axioms are checked by [`GSet::validate`].
    pub fn from_table(arity: usize, size: usize, table: Vec<u32>) -> Result<Self> {
        let group = symmetric_group(arity)?;
        if table.len() != size * group.order() {
            return Err(Error::Format(format!(
                "action table for arity {arity} has {} entries, expected {}",
                table.len(),
                size * group.order()
            )));
        }
        if let Some(bad) = table.iter().find(|&&v| v as usize >= size) {
            return Err(Error::Format(format!(
                "action table entry {} out of range 1..={size}",
                bad + 1
            )));
        }
        Ok(GSet { arity, size, table })
    }

    /// Tabulates `x·σ` from a closure taking permutation ranks.
    pub fn from_fn(arity: usize, size: usize, act: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let order = symmetric_group(arity)?.order();
        let mut table = Vec::with_capacity(size * order);
        for x in 0..size {
            for g in 0..order {
                table.push(act(x, g) as u32);
            }
        }
        Self::from_table(arity, size, table)
    }

    pub fn empty(arity: usize) -> Result<Self> {
        Self::from_table(arity, 0, Vec::new())
    }

    pub fn trivial(arity: usize, size: usize) -> Result<Self> {
        Self::from_fn(arity, size, |x, _| x)
    }

    /// `S_n` acting on itself by right multiplication.
    pub fn regular(arity: usize) -> Result<Self> {
        let group = symmetric_group(arity)?;
        Self::from_fn(arity, group.order(), |x, g| group.mul(x, g))
    }

    /// The right cosets `H\S_n` of a subgroup given by ranks, ordered by
    /// their least member.
    pub fn coset_space(arity: usize, subgroup: &[usize]) -> Result<Self> {
        let group = symmetric_group(arity)?;
        let mut coset_of = vec![u32::MAX; group.order()];
        let mut reps = Vec::new();
        for g in 0..group.order() {
            if coset_of[g] == u32::MAX {
                for &h in subgroup {
                    coset_of[group.mul(h, g)] = reps.len() as u32;
                }
                reps.push(g);
            }
        }
        Self::from_fn(arity, reps.len(), |c, t| {
            coset_of[group.mul(reps[c], t)] as usize
        })
    }

    /// Disjoint union; elements of later summands are shifted past earlier ones.
    pub fn disjoint_union(arity: usize, parts: &[&GSet]) -> Result<Self> {
        let order = symmetric_group(arity)?.order();
        let mut table = Vec::new();
        let mut offset = 0u32;
        for p in parts {
            if p.arity != arity {
                return Err(Error::Domain(format!(
                    "disjoint union of arity {} and {arity} sets",
                    p.arity
                )));
            }
            table.extend(p.table.iter().map(|v| v + offset));
            offset += p.size as u32;
        }
        debug_assert_eq!(table.len(), offset as usize * order);
        Self::from_table(arity, offset as usize, table)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn group(&self) -> &'static SymmetricGroup {
        symmetric_group(self.arity).expect("arity checked at construction")
    }

    /// `x·σ` with `σ` given by rank.
    pub fn act(&self, x: usize, sigma: usize) -> usize {
        self.table[x * self.group().order() + sigma] as usize
    }

    pub fn act_perm(&self, x: usize, sigma: &Perm) -> usize {
        self.act(x, sigma.rank())
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    /// Row of the table for `x`, indexed by permutation rank.
    pub fn row(&self, x: usize) -> &[u32] {
        let order = self.group().order();
        &self.table[x * order..(x + 1) * order]
    }

    pub fn set_entry(&mut self, x: usize, sigma: usize, value: usize) {
        let order = self.group().order();
        self.table[x * order + sigma] = value as u32;
    }

    /// Lists every cell breaking the identity or compatibility axiom.
    pub fn validate(&self) -> Vec<ActionViolation> {
        let group = self.group();
        let order = group.order();
        let mut out = Vec::new();
        for x in 0..self.size {
            let image = self.act(x, group.identity());
            if image != x {
                out.push(ActionViolation::Identity { element: x, image });
            }
            for s in 0..order {
                let xs = self.act(x, s);
                for t in 0..order {
                    if self.act(xs, t) != self.act(x, group.mul(s, t)) {
                        out.push(ActionViolation::Compatibility {
                            element: x,
                            sigma: s,
                            tau: t,
                        });
                    }
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Orbits in order of their least element.
    pub fn orbits(&self) -> Vec<Orbit> {
        let mut seen = vec![false; self.size];
        let mut out = Vec::new();
        for x in 0..self.size {
            if seen[x] {
                continue;
            }
            let mut elements: Vec<usize> = self.row(x).iter().map(|&v| v as usize).collect();
            elements.sort_unstable();
            elements.dedup();
            for &e in &elements {
                seen[e] = true;
            }
            out.push(Orbit {
                representative: x,
                elements,
            });
        }
        out
    }

    /// Ranks of the permutations fixing `x`.
    pub fn stabilizer(&self, x: usize) -> Vec<usize> {
        self.row(x)
            .iter()
            .enumerate()
            .filter(|(_, &v)| v as usize == x)
            .map(|(g, _)| g)
            .collect()
    }
}

/// Orbits of a right `S_n`-set with canonical (least) representatives.
pub fn orbit_quotient(x: &GSet) -> Vec<Orbit> {
    x.orbits()
}

/// A label for the conjugacy class of a subgroup: the lexicographically
/// least sorted rank list over all conjugates `g⁻¹Hg`.
pub fn conjugacy_key(group: &SymmetricGroup, subgroup: &[usize]) -> Vec<usize> {
    let mut best: Option<Vec<usize>> = None;
    for g in 0..group.order() {
        let gi = group.inv(g);
        let mut conj: Vec<usize> = subgroup
            .iter()
            .map(|&h| group.mul(group.mul(gi, h), g))
            .collect();
        conj.sort_unstable();
        if best.as_ref().is_none_or(|b| conj < *b) {
            best = Some(conj);
        }
    }
    best.unwrap_or_default()
}

/// Decides `X ≅ Y` as right `S_n`-sets by comparing the multisets of
/// stabilizer conjugacy classes of their orbits.
pub fn gset_iso(x: &GSet, y: &GSet) -> Result<bool> {
    if x.arity != y.arity {
        return Err(Error::Domain(format!(
            "iso between S_{} and S_{} sets",
            x.arity, y.arity
        )));
    }
    if x.size != y.size {
        return Ok(false);
    }
    let group = x.group();
    let profile = |s: &GSet| -> BTreeMap<Vec<usize>, usize> {
        let mut m = BTreeMap::new();
        for o in s.orbits() {
            *m.entry(conjugacy_key(group, &s.stabilizer(o.representative)))
                .or_insert(0) += 1;
        }
        m
    };
    Ok(profile(x) == profile(y))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `n̄²` with `S_2` permuting coordinates, elements listed as (a,b) ↦ 2a+b.
    fn square_of_two() -> GSet {
        let g = symmetric_group(2).unwrap();
        GSet::from_fn(2, 4, |x, s| {
            let t = [x / 2, x % 2];
            let u = g.element(s).permute(&t);
            u[0] * 2 + u[1]
        })
        .unwrap()
    }

    #[test]
    fn regular_and_trivial_are_valid() {
        for n in 0..=4 {
            assert!(GSet::regular(n).unwrap().is_valid());
            assert!(GSet::trivial(n, 3).unwrap().is_valid());
        }
    }

    #[test]
    fn corrupted_table_is_located() {
        let mut r = GSet::regular(3).unwrap();
        r.set_entry(2, 3, 5);
        let v = r.validate();
        assert!(!v.is_empty());
        assert!(v.iter().any(|e| matches!(e, ActionViolation::Compatibility { element: 2, .. })
            || matches!(e, ActionViolation::Compatibility { .. })));
    }

    #[test]
    fn orbit_examples() {
        let t = GSet::trivial(2, 3).unwrap();
        assert_eq!(orbit_quotient(&t).len(), 3);
        assert_eq!(orbit_quotient(&GSet::regular(2).unwrap()).len(), 1);
        let sq = square_of_two();
        let orbits = orbit_quotient(&sq);
        let members: Vec<Vec<usize>> = orbits.iter().map(|o| o.elements.clone()).collect();
        assert_eq!(members, vec![vec![0], vec![1, 2], vec![3]]);
        for o in &orbits {
            assert_eq!(2 % o.elements.len(), 0);
        }
    }

    #[test]
    fn iso_examples() {
        let reg = GSet::regular(2).unwrap();
        let triv = GSet::trivial(2, 2).unwrap();
        assert!(gset_iso(&reg, &reg).unwrap());
        assert!(!gset_iso(&triv, &reg).unwrap());
        assert!(matches!(
            gset_iso(&reg, &GSet::regular(3).unwrap()),
            Err(Error::Domain(_))
        ));
        // Cosets of the two conjugate transposition subgroups of S_3.
        let g = symmetric_group(3).unwrap();
        let t12 = Perm::from_one_based(&[2, 1, 3]).unwrap().rank();
        let t23 = Perm::from_one_based(&[1, 3, 2]).unwrap().rank();
        let a = GSet::coset_space(3, &[g.identity(), t12]).unwrap();
        let b = GSet::coset_space(3, &[g.identity(), t23]).unwrap();
        assert!(a.is_valid() && b.is_valid());
        assert_eq!(a.size(), 3);
        assert!(gset_iso(&a, &b).unwrap());
        assert!(!gset_iso(&a, &GSet::trivial(3, 3).unwrap()).unwrap());
    }

    #[test]
    fn disjoint_union_shifts() {
        let u = GSet::disjoint_union(2, &[&GSet::trivial(2, 1).unwrap(), &GSet::regular(2).unwrap()]).unwrap();
        assert!(u.is_valid());
        assert_eq!(u.act(1, 1), 2);
    }
}
