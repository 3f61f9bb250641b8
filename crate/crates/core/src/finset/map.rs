use std::fmt;

use crate::error::{Error, Result};
use crate::finset::perm::Perm;

/// A map `m̄ → n̄` between standard finite sets.
///
/// Images are stored 0-based; `Display` and the interchange format use the
/// 1-based names of the elements of `n̄ = {1, …, n}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FinMap {
    cod: usize,
    images: Vec<usize>,
}

impl FinMap {
    pub fn new(cod: usize, images: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = images.iter().find(|&&i| i >= cod) {
            return Err(Error::Domain(format!(
                "image {} out of range for codomain of size {cod}",
                bad + 1
            )));
        }
        Ok(FinMap { cod, images })
    }

    /// Builds a map from 1-based images.
    pub fn from_one_based(cod: usize, images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::Domain("image 0 is not an element of a standard set".into()));
        }
        Self::new(cod, images.iter().map(|i| i - 1).collect())
    }

    pub fn identity(n: usize) -> Self {
        FinMap {
            cod: n,
            images: (0..n).collect(),
        }
    }

    pub fn constant(dom: usize, cod: usize, value: usize) -> Result<Self> {
        Self::new(cod, vec![value; dom])
    }

    pub fn dom(&self) -> usize {
        self.images.len()
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_monotone(&self) -> bool {
        self.images.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn is_bijective(&self) -> bool {
        self.dom() == self.cod && {
            let mut seen = vec![false; self.cod];
            self.images.iter().all(|&i| !std::mem::replace(&mut seen[i], true))
        }
    }

    /// `self` followed by `g`, i.e. `g ∘ self`.
    pub fn then(&self, g: &FinMap) -> Result<FinMap> {
        compose_maps(self, g)
    }

    /// Position of this map in the lexicographic enumeration of all maps
    /// `dom → cod` (first image most significant).
    pub fn rank(&self) -> usize {
        self.images.iter().fold(0, |acc, &i| acc * self.cod + i)
    }

    pub fn unrank(dom: usize, cod: usize, mut rank: usize) -> FinMap {
        let mut images = vec![0; dom];
        for slot in images.iter_mut().rev() {
            *slot = rank % cod.max(1);
            rank /= cod.max(1);
        }
        FinMap { cod, images }
    }

    /// Number of maps `dom → cod`, with `0^0 = 1`.
    pub fn count(dom: usize, cod: usize) -> usize {
        cod.pow(dom as u32)
    }

    /// All maps `dom → cod` in rank order.
    pub fn all(dom: usize, cod: usize) -> impl Iterator<Item = FinMap> {
        (0..Self::count(dom, cod)).map(move |r| Self::unrank(dom, cod, r))
    }

    /// The preimage `f⁻¹(i)` in increasing order.
    pub fn fibre(&self, i: usize) -> Vec<usize> {
        (0..self.dom()).filter(|&j| self.images[j] == i).collect()
    }

    pub fn as_perm(&self) -> Option<Perm> {
        self.is_bijective()
            .then(|| Perm::from_images(self.images.clone()).expect("bijective"))
    }
}

impl fmt::Display for FinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}→{} (", self.dom(), self.cod)?;
        for (k, i) in self.images.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, ")")
    }
}

/// Returns `g ∘ f`.
pub fn compose_maps(f: &FinMap, g: &FinMap) -> Result<FinMap> {
    if f.cod != g.dom() {
        return Err(Error::Domain(format!(
            "cannot compose {f} with {g}: codomain {} ≠ domain {}",
            f.cod,
            g.dom()
        )));
    }
    Ok(FinMap {
        cod: g.cod,
        images: f.images.iter().map(|&i| g.images[i]).collect(),
    })
}

/// Factors `f = φ ∘ σ` with `φ` non-decreasing and `σ` the permutation that
/// stably sorts the positions of `dom` by their image under `f`.
pub fn monotone_perm_factor(f: &FinMap) -> (FinMap, Perm) {
    let mut order: Vec<usize> = (0..f.dom()).collect();
    order.sort_by_key(|&i| f.images[i]);
    let mut sigma = vec![0; f.dom()];
    for (pos, &i) in order.iter().enumerate() {
        sigma[i] = pos;
    }
    let phi = FinMap {
        cod: f.cod,
        images: order.iter().map(|&i| f.images[i]).collect(),
    };
    (phi, Perm::from_images(sigma).expect("sorting permutation"))
}

/// An ordered sequence of non-negative parts `(p_1, …, p_s)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Self {
        Composition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Start of each block in the concatenation `p_1 + … + p_s`.
    pub fn offsets(&self) -> Vec<usize> {
        self.parts
            .iter()
            .scan(0, |acc, &p| {
                let o = *acc;
                *acc += p;
                Some(o)
            })
            .collect()
    }

    /// The non-decreasing map `total → s` sending block `k` to `k`.
    pub fn block_map(&self) -> FinMap {
        let images = self
            .parts
            .iter()
            .enumerate()
            .flat_map(|(k, &p)| std::iter::repeat_n(k, p))
            .collect();
        FinMap {
            cod: self.parts.len(),
            images,
        }
    }

    /// All compositions of `total` into exactly `len` parts, each part at
    /// least `min_part`, in lexicographic order.
    pub fn enumerate(total: usize, len: usize, min_part: usize) -> Vec<Composition> {
        fn go(total: usize, len: usize, min: usize, prefix: &mut Vec<usize>, out: &mut Vec<Composition>) {
            if len == 0 {
                if total == 0 {
                    out.push(Composition::new(prefix.clone()));
                }
                return;
            }
            if total < min * len {
                return;
            }
            for p in min..=total - min * (len - 1) {
                prefix.push(p);
                go(total - p, len - 1, min, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        go(total, len, min_part, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// The fibre sizes `p_i = |φ⁻¹(i)|` of a non-decreasing map.
pub fn fibre_composition(phi: &FinMap) -> Result<Composition> {
    if !phi.is_monotone() {
        return Err(Error::Precondition(format!("{phi} is not non-decreasing")));
    }
    let mut parts = vec![0; phi.cod];
    for &i in &phi.images {
        parts[i] += 1;
    }
    Ok(Composition::new(parts))
}

/// The block sum `f ⊔ g : (m + m') → (n + n')`.
pub fn block_sum(f: &FinMap, g: &FinMap) -> FinMap {
    let mut images = f.images.clone();
    images.extend(g.images.iter().map(|&i| i + f.cod));
    FinMap {
        cod: f.cod + g.cod,
        images,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(cod: usize, imgs: &[usize]) -> FinMap {
        FinMap::from_one_based(cod, imgs).unwrap()
    }

    #[test]
    fn compose_identity_and_swaps() {
        let g = m(2, &[2, 1, 1]);
        assert_eq!(compose_maps(&FinMap::identity(3), &g).unwrap(), g);
        let swap = m(2, &[2, 1]);
        assert_eq!(compose_maps(&swap, &swap).unwrap(), FinMap::identity(2));
    }

    #[test]
    fn compose_by_hand() {
        let f = m(3, &[1, 3]);
        let g = m(1, &[1, 1, 1]);
        assert_eq!(compose_maps(&f, &g).unwrap(), m(1, &[1, 1]));
    }

    #[test]
    fn compose_rejects_mismatch() {
        let f = m(3, &[1, 3]);
        assert!(matches!(compose_maps(&f, &f), Err(Error::Domain(_))));
    }

    #[test]
    fn factor_examples() {
        let mono = m(3, &[1, 1, 3]);
        let (phi, sigma) = monotone_perm_factor(&mono);
        assert_eq!(phi, mono);
        assert!(sigma.is_identity());

        let swap = m(2, &[2, 1]);
        let (phi, sigma) = monotone_perm_factor(&swap);
        assert_eq!(phi, FinMap::identity(2));
        assert_eq!(sigma.images(), &[1, 0]);
    }

    #[test]
    fn factor_is_the_stable_one_among_all_factorizations() {
        let f = m(2, &[2, 1, 2]);
        let (phi, sigma) = monotone_perm_factor(&f);
        assert_eq!(phi, m(2, &[1, 2, 2]));
        assert_eq!(sigma.one_based(), vec![2, 1, 3]);
        // Enumerate every factorization: φ is forced, σ ranges over
        // permutations with φ∘σ = f; the canonical one preserves order
        // inside each fibre.
        let all: Vec<Perm> = Perm::all(3)
            .filter(|s| compose_maps(&s.to_map(), &phi).unwrap() == f)
            .collect();
        assert_eq!(all.len(), 2);
        let stable: Vec<&Perm> = all
            .iter()
            .filter(|s| (0..3).all(|i| (0..3).all(|j| {
                !(i < j && f.apply(i) == f.apply(j)) || s.apply(i) < s.apply(j)
            })))
            .collect();
        assert_eq!(stable, vec![&sigma]);
    }

    #[test]
    fn factor_reassembles_exhaustively() {
        for dom in 0..=4 {
            for cod in 0..=4 {
                for f in FinMap::all(dom, cod) {
                    let (phi, sigma) = monotone_perm_factor(&f);
                    assert!(phi.is_monotone());
                    assert_eq!(compose_maps(&sigma.to_map(), &phi).unwrap(), f);
                }
            }
        }
    }

    #[test]
    fn fibre_composition_examples() {
        assert_eq!(fibre_composition(&FinMap::identity(3)).unwrap().parts(), &[1, 1, 1]);
        assert_eq!(fibre_composition(&FinMap::new(2, vec![]).unwrap()).unwrap().parts(), &[0, 0]);
        assert_eq!(fibre_composition(&m(2, &[1, 1, 2, 2])).unwrap().parts(), &[2, 2]);
        assert!(matches!(
            fibre_composition(&m(2, &[2, 1])),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn rank_roundtrip_and_count() {
        assert_eq!(FinMap::count(0, 0), 1);
        assert_eq!(FinMap::count(2, 0), 0);
        for (r, f) in FinMap::all(3, 2).enumerate() {
            assert_eq!(f.rank(), r);
        }
        assert_eq!(FinMap::all(0, 3).count(), 1);
    }

    #[test]
    fn compositions_enumerate() {
        assert_eq!(Composition::enumerate(3, 2, 1).len(), 2);
        assert_eq!(Composition::enumerate(3, 2, 0).len(), 4);
        assert_eq!(Composition::enumerate(0, 0, 1).len(), 1);
        assert_eq!(Composition::new(vec![2, 0, 1]).offsets(), vec![0, 2, 2]);
    }
}
