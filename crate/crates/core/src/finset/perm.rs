use std::fmt;
use std::sync::OnceLock;

use crate::error::{capacity, Error, Result};
use crate::finset::map::FinMap;

/// Largest `n` for which `S_n` is ever enumerated.
pub const HARD_ARITY_CAP: usize = 6;
/// Default truncation arity for newly built structures.
pub const DEFAULT_ARITY_BOUND: usize = 5;

/// A permutation of `n̄`, stored 0-based.
///
/// The product is function composition, `(σ·τ)(i) = σ(τ(i))`. With this
/// product, `y ↦ y∘σ` is a right action on tuples, and all group actions in
/// the crate are right actions.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm {
            images: (0..n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::Domain(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Perm { images })
    }

    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::Domain("0 is not an element of a standard set".into()));
        }
        Self::from_images(images.iter().map(|i| i - 1).collect())
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.images.iter().map(|i| i + 1).collect()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &i)| k == i)
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.len()];
        for (k, &i) in self.images.iter().enumerate() {
            inv[i] = k;
        }
        Perm { images: inv }
    }

    /// The product `self · other = self ∘ other`.
    pub fn mul(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.len(), other.len());
        Perm {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn to_map(&self) -> FinMap {
        FinMap::new(self.len(), self.images.clone()).expect("permutation images in range")
    }

    /// Lexicographic rank among all permutations of the same length.
    pub fn rank(&self) -> usize {
        let n = self.len();
        let mut rank = 0;
        for i in 0..n {
            let smaller = self.images[i + 1..]
                .iter()
                .filter(|&&j| j < self.images[i])
                .count();
            rank = rank * (n - i) + smaller;
        }
        rank
    }

    pub fn unrank(n: usize, mut rank: usize) -> Perm {
        let mut digits = vec![0; n];
        for i in (0..n).rev() {
            let radix = n - i;
            digits[i] = rank % radix;
            rank /= radix;
        }
        let mut pool: Vec<usize> = (0..n).collect();
        Perm {
            images: digits.into_iter().map(|d| pool.remove(d)).collect(),
        }
    }

    /// All permutations of `n̄` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Perm> {
        (0..factorial(n)).map(move |r| Perm::unrank(n, r))
    }

    /// The block sum `σ_1 × … × σ_s`, acting on consecutive blocks.
    pub fn block_sum(blocks: &[Perm]) -> Perm {
        let mut images = Vec::new();
        for b in blocks {
            let off = images.len();
            images.extend(b.images.iter().map(|i| i + off));
        }
        Perm { images }
    }

    /// Applies `self` to positions of a tuple: `(y∘σ)_i = y_{σ(i)}`.
    pub fn permute<T: Clone>(&self, tuple: &[T]) -> Vec<T> {
        self.images.iter().map(|&i| tuple[i].clone()).collect()
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, i) in self.images.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "]")
    }
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub fn multinomial(parts: &[usize]) -> usize {
    factorial(parts.iter().sum()) / parts.iter().map(|&p| factorial(p)).product::<usize>()
}

/// `S_n` with its elements listed in rank order and a full multiplication
/// table on ranks.
#[derive(Debug)]
pub struct SymmetricGroup {
    n: usize,
    elements: Vec<Perm>,
    mul: Vec<u32>,
    inv: Vec<u32>,
}

impl SymmetricGroup {
    fn build(n: usize) -> Self {
        let elements: Vec<Perm> = Perm::all(n).collect();
        let order = elements.len();
        let mut mul = Vec::with_capacity(order * order);
        for a in &elements {
            for b in &elements {
                mul.push(a.mul(b).rank() as u32);
            }
        }
        let inv = elements.iter().map(|p| p.inverse().rank() as u32).collect();
        SymmetricGroup {
            n,
            elements,
            mul,
            inv,
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, rank: usize) -> &Perm {
        &self.elements[rank]
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order() + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// Ranks of the adjacent transpositions `(i i+1)`, which generate `S_n`.
    pub fn generators(&self) -> Vec<usize> {
        (0..self.n.saturating_sub(1))
            .map(|i| {
                let mut images: Vec<usize> = (0..self.n).collect();
                images.swap(i, i + 1);
                Perm { images }.rank()
            })
            .collect()
    }
}

/// The shared table for `S_n`, built on first use.
pub fn symmetric_group(n: usize) -> Result<&'static SymmetricGroup> {
    static GROUPS: [OnceLock<SymmetricGroup>; HARD_ARITY_CAP + 1] =
        [const { OnceLock::new() }; HARD_ARITY_CAP + 1];
    if n > HARD_ARITY_CAP {
        return Err(capacity("symmetric group degree", n, HARD_ARITY_CAP));
    }
    Ok(GROUPS[n].get_or_init(|| SymmetricGroup::build(n)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_unrank() {
        for n in 0..=5 {
            for (r, p) in Perm::all(n).enumerate() {
                assert_eq!(p.rank(), r);
            }
        }
        assert_eq!(Perm::all(0).count(), 1);
    }

    #[test]
    fn product_is_composition_and_right_action_on_tuples() {
        let s = Perm::from_one_based(&[2, 3, 1]).unwrap();
        let t = Perm::from_one_based(&[2, 1, 3]).unwrap();
        let y = vec!['a', 'b', 'c'];
        assert_eq!(t.permute(&s.permute(&y)), s.mul(&t).permute(&y));
        assert!(s.mul(&s.inverse()).is_identity());
    }

    #[test]
    fn group_table_matches_direct_product() {
        let g = symmetric_group(4).unwrap();
        for a in 0..g.order() {
            for b in 0..g.order() {
                assert_eq!(g.element(g.mul(a, b)), &g.element(a).mul(g.element(b)));
            }
            assert_eq!(g.mul(a, g.inv(a)), g.identity());
        }
        assert_eq!(g.generators().len(), 3);
    }

    #[test]
    fn over_cap_is_capacity_error() {
        assert!(matches!(symmetric_group(7), Err(Error::Capacity { .. })));
    }

    #[test]
    fn counting_helpers() {
        assert_eq!(multinomial(&[2, 1]), 3);
        assert_eq!(multinomial(&[]), 1);
        assert_eq!(binomial(4, 2), 6);
    }
}
