//! Young subgroups `S_{p_1} × … × S_{p_s} ⊂ S_n`, their right cosets, and
//! induction of product actions.

use crate::error::Result;
use crate::finset::gset::GSet;
use crate::finset::map::Composition;
use crate::finset::perm::{symmetric_group, Perm, SymmetricGroup};

/// The Young subgroup of a composition together with the decomposition
/// `g = h·r` of every `g ∈ S_n` into `h ∈ H` and a canonical coset
/// representative `r`.
///
/// `H` permutes values inside consecutive blocks, so the right coset `Hg` is
/// determined by which block each `g(i)` lies in. The lexicographically least
/// member assigns each block's values to its positions in increasing order.
#[derive(Clone, Debug)]
pub struct YoungSubgroup {
    parts: Composition,
    offsets: Vec<usize>,
    cosets: Vec<Perm>,
    /// For each `g` by rank: index of its coset and the ranks of the block
    /// components `h_k ∈ S_{p_k}` with `g = h·r`.
    decomposition: Vec<(u32, Vec<u32>)>,
}

impl YoungSubgroup {
    pub fn new(parts: &Composition) -> Result<Self> {
        let n = parts.total();
        let group = symmetric_group(n)?;
        for &p in parts.parts() {
            symmetric_group(p)?;
        }
        let offsets = parts.offsets();
        let block_of: Vec<usize> = parts.block_map().images().to_vec();

        let canonical = |g: &Perm| -> Perm {
            let mut next = offsets.clone();
            let images = g
                .images()
                .iter()
                .map(|&v| {
                    let b = block_of[v];
                    next[b] += 1;
                    next[b] - 1
                })
                .collect();
            Perm::from_images(images).expect("canonical coset representative")
        };

        let mut coset_of_rank = vec![u32::MAX; group.order()];
        let mut cosets = Vec::new();
        for g in group.elements() {
            let r = canonical(g);
            let rr = r.rank();
            if coset_of_rank[rr] == u32::MAX {
                coset_of_rank[rr] = cosets.len() as u32;
                cosets.push(r);
            }
        }
        // Ranks are lexicographic and every representative is the least
        // member of its coset, so sorting by rank sorts lexicographically.
        let mut order: Vec<usize> = (0..cosets.len()).collect();
        order.sort_by_key(|&c| cosets[c].rank());
        let mut relabel = vec![0u32; cosets.len()];
        for (new, &old) in order.iter().enumerate() {
            relabel[old] = new as u32;
        }
        let cosets: Vec<Perm> = order.iter().map(|&c| cosets[c].clone()).collect();
        for c in coset_of_rank.iter_mut().filter(|c| **c != u32::MAX) {
            *c = relabel[*c as usize];
        }

        let decomposition = group
            .elements()
            .iter()
            .map(|g| {
                let r = canonical(g);
                let h = g.mul(&r.inverse());
                let comps = parts
                    .parts()
                    .iter()
                    .zip(&offsets)
                    .map(|(&p, &o)| {
                        let images = (0..p).map(|j| h.apply(o + j) - o).collect();
                        Perm::from_images(images).expect("block component").rank() as u32
                    })
                    .collect();
                (coset_of_rank[r.rank()], comps)
            })
            .collect();

        Ok(YoungSubgroup {
            parts: parts.clone(),
            offsets,
            cosets,
            decomposition,
        })
    }

    pub fn parts(&self) -> &Composition {
        &self.parts
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn degree(&self) -> usize {
        self.parts.total()
    }

    pub fn group(&self) -> &'static SymmetricGroup {
        symmetric_group(self.degree()).expect("checked in new")
    }

    /// Canonical representatives, sorted lexicographically.
    pub fn cosets(&self) -> &[Perm] {
        &self.cosets
    }

    /// Coset index and `H`-components of `g` (by rank).
    pub fn decompose(&self, g: usize) -> (usize, &[u32]) {
        let (c, h) = &self.decomposition[g];
        (*c as usize, h)
    }

    /// Rank in `S_n` of the block sum of components given by rank.
    pub fn embed(&self, comps: &[usize]) -> usize {
        let blocks: Vec<Perm> = self
            .parts
            .parts()
            .iter()
            .zip(comps)
            .map(|(&p, &c)| symmetric_group(p).expect("checked").element(c).clone())
            .collect();
        Perm::block_sum(&blocks).rank()
    }
}

/// Canonical representatives of the right cosets `H\S_n` for the Young
/// subgroup `H` of `parts`.
pub fn young_cosets(parts: &Composition) -> Result<Vec<Perm>> {
    Ok(YoungSubgroup::new(parts)?.cosets)
}

/// Label of an element of an induced set: one element per factor and the
/// index of a canonical coset representative.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct InducedElement {
    pub factors: Vec<usize>,
    pub coset: usize,
}

/// `Ind_H^{S_n}(M_1 × … × M_s)` with its element labels.
#[derive(Clone, Debug)]
pub struct Induced {
    pub gset: GSet,
    pub subgroup: YoungSubgroup,
    pub labels: Vec<InducedElement>,
    factor_sizes: Vec<usize>,
}

impl Induced {
    /// Index of the element `(m⃗, coset)`.
    pub fn index_of(&self, factors: &[usize], coset: usize) -> usize {
        tuple_index(factors, &self.factor_sizes) * self.subgroup.cosets.len() + coset
    }
}

/// Mixed-radix index of a tuple, first coordinate most significant.
pub fn tuple_index(tuple: &[usize], radices: &[usize]) -> usize {
    tuple.iter().zip(radices).fold(0, |acc, (&t, &r)| acc * r + t)
}

/// Inverse of [`tuple_index`].
pub fn tuple_at(mut index: usize, radices: &[usize]) -> Vec<usize> {
    let mut out = vec![0; radices.len()];
    for (slot, &r) in out.iter_mut().zip(radices).rev() {
        *slot = index % r;
        index /= r;
    }
    out
}

/// All tuples with `t_k < radices[k]`, in lexicographic order.
pub fn tuples(radices: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &r in radices {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..r).map(move |v| {
                    let mut t = t.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    out
}

/// Induces the product of right `S_{p_k}`-sets up to `S_{p_1+…+p_s}`.
///
/// Elements are pairs `(m⃗, r)` with `r` a canonical coset representative,
/// listed lexicographically. `(m⃗, r)·τ`: write `r·τ = h·r'` with `h ∈ H`,
/// giving `(m⃗·h, r')`.
pub fn induce(factors: &[&GSet]) -> Result<Induced> {
    let parts = Composition::new(factors.iter().map(|f| f.arity()).collect());
    let subgroup = YoungSubgroup::new(&parts)?;
    let group = subgroup.group();
    let sizes: Vec<usize> = factors.iter().map(|f| f.size()).collect();
    let ncosets = subgroup.cosets.len();
    let coset_ranks: Vec<usize> = subgroup.cosets.iter().map(Perm::rank).collect();

    let mut labels = Vec::new();
    for t in tuples(&sizes) {
        for c in 0..ncosets {
            labels.push(InducedElement {
                factors: t.clone(),
                coset: c,
            });
        }
    }
    let gset = GSet::from_fn(parts.total(), labels.len(), |x, tau| {
        let lab = &labels[x];
        let g = group.mul(coset_ranks[lab.coset], tau);
        let (c, hs) = subgroup.decompose(g);
        let moved: Vec<usize> = lab
            .factors
            .iter()
            .zip(factors)
            .zip(hs)
            .map(|((&m, f), &h)| f.act(m, h as usize))
            .collect();
        tuple_index(&moved, &sizes) * ncosets + c
    })?;
    Ok(Induced {
        gset,
        subgroup,
        labels,
        factor_sizes: sizes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::gset::gset_iso;
    use crate::error::Error;
    use crate::finset::perm::{factorial, multinomial};

    #[test]
    fn coset_counts() {
        assert_eq!(young_cosets(&Composition::new(vec![3])).unwrap(), vec![Perm::identity(3)]);
        assert_eq!(young_cosets(&Composition::new(vec![1, 1])).unwrap().len(), 2);
        assert_eq!(young_cosets(&Composition::new(vec![2, 1])).unwrap().len(), 3);
        for n in 0..=5 {
            for s in 0..=n.max(1) {
                for c in Composition::enumerate(n, s, 0) {
                    assert_eq!(young_cosets(&c).unwrap().len(), multinomial(c.parts()));
                }
            }
        }
    }

    #[test]
    fn cosets_by_brute_force_grouping() {
        // Group S_3 by H = S_2 × S_1 and take the least member of each class.
        let parts = Composition::new(vec![2, 1]);
        let h: Vec<Perm> = Perm::all(3)
            .filter(|p| p.apply(2) == 2)
            .collect();
        let mut reps: Vec<Perm> = Perm::all(3)
            .map(|g| h.iter().map(|x| x.mul(&g)).min().unwrap())
            .collect();
        reps.sort();
        reps.dedup();
        assert_eq!(young_cosets(&parts).unwrap(), reps);
    }

    #[test]
    fn over_cap() {
        assert!(matches!(
            young_cosets(&Composition::new(vec![4, 3])),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn decomposition_recomposes() {
        let y = YoungSubgroup::new(&Composition::new(vec![2, 0, 2])).unwrap();
        let g = y.group();
        for x in 0..g.order() {
            let (c, hs) = y.decompose(x);
            let h = y.embed(&hs.iter().map(|&v| v as usize).collect::<Vec<_>>());
            assert_eq!(g.mul(h, y.cosets()[c].rank()), x);
        }
    }

    #[test]
    fn induce_examples() {
        let r3 = GSet::regular(3).unwrap();
        let single = induce(&[&r3]).unwrap();
        assert!(gset_iso(&single.gset, &r3).unwrap());

        let one = GSet::trivial(1, 1).unwrap();
        let free = induce(&[&one, &one]).unwrap();
        assert!(free.gset.is_valid());
        assert!(gset_iso(&free.gset, &GSet::regular(2).unwrap()).unwrap());

        let m1 = GSet::trivial(1, 2).unwrap();
        let m2 = GSet::disjoint_union(2, &[&GSet::trivial(2, 1).unwrap(), &GSet::regular(2).unwrap()]).unwrap();
        let ind = induce(&[&m1, &m2]).unwrap();
        assert_eq!(ind.gset.size(), 2 * 3 * factorial(3) / (factorial(1) * factorial(2)));
        assert_eq!(ind.gset.size(), 18);
        assert!(ind.gset.is_valid());
        assert_eq!(ind.index_of(&[1, 2], 2), 17);
    }
}
