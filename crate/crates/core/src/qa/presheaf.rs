use crate::error::{capacity, Error, Result};
use crate::finset::{compose_maps, tuple_at, tuple_index, FinMap, Merger, HARD_ARITY_CAP};
use crate::qc::TABLE_CAP;
use crate::report::{cell_indices, visit, Law, LawRunner, Mode, Report};

/// A presheaf on finite sets, stored on `0̄, …, N̄` with a restriction map
/// `P(f): P(n) → P(m)` for every `f: m̄ → n̄`.
///
/// `generation_bound = Some(s)` declares that `P` is generated in degrees
/// `≤ s`: every `P(n)` is the coend `∫^{k≤s} P(k) × Hom(n̄, k̄)`. This is
/// what makes composition and evaluation finite; it is checked for
/// `n ≤ N` and assumed beyond.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FinPresheaf {
    cards: Vec<usize>,
    /// `restrictions[m][n][rank(f)·card(n) + ξ] = P(f)(ξ)` for `f: m̄ → n̄`.
    restrictions: Vec<Vec<Vec<u32>>>,
    generation_bound: Option<usize>,
    labels: Option<Vec<Vec<String>>>,
}

impl FinPresheaf {
    pub fn new(
        cards: Vec<usize>,
        restrictions: Vec<Vec<Vec<u32>>>,
        generation_bound: Option<usize>,
    ) -> Result<Self> {
        let n_max = cards
            .len()
            .checked_sub(1)
            .ok_or_else(|| Error::Domain("a presheaf needs a value at 0".into()))?;
        if n_max > HARD_ARITY_CAP {
            return Err(capacity("max arity", n_max, HARD_ARITY_CAP));
        }
        if restrictions.len() != n_max + 1 || restrictions.iter().any(|r| r.len() != n_max + 1) {
            return Err(Error::Format("restriction rows do not match carriers".into()));
        }
        for (m, row) in restrictions.iter().enumerate() {
            for (n, table) in row.iter().enumerate() {
                let expected = FinMap::count(m, n) * cards[n];
                if table.len() != expected {
                    return Err(Error::Format(format!(
                        "restrictions along maps {m} → {n} have {} entries, expected {expected}",
                        table.len()
                    )));
                }
                if let Some(v) = table.iter().find(|&&v| v as usize >= cards[m]) {
                    return Err(Error::Format(format!(
                        "restriction along {m} → {n}: value {} out of range 1..={}",
                        v + 1,
                        cards[m]
                    )));
                }
            }
        }
        Ok(FinPresheaf {
            cards,
            restrictions,
            generation_bound,
            labels: None,
        })
    }

    /// Tabulates `(f, ξ) ↦ P(f)(ξ)`.
    pub fn from_fn(
        cards: Vec<usize>,
        generation_bound: Option<usize>,
        restrict: impl Fn(&FinMap, usize) -> usize,
    ) -> Result<Self> {
        let n_max = cards.len().saturating_sub(1);
        let entries: usize = (0..=n_max)
            .flat_map(|m| (0..=n_max).map(move |n| (m, n)))
            .map(|(m, n)| FinMap::count(m, n).saturating_mul(cards[n]))
            .sum();
        if entries > TABLE_CAP {
            return Err(capacity("restriction table entries", entries, TABLE_CAP));
        }
        let restrictions = (0..=n_max)
            .map(|m| {
                (0..=n_max)
                    .map(|n| {
                        FinMap::all(m, n)
                            .flat_map(|f| (0..cards[n]).map(move |x| (f.clone(), x)))
                            .map(|(f, x)| restrict(&f, x) as u32)
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Self::new(cards, restrictions, generation_bound)
    }

    pub fn with_labels(mut self, labels: Vec<Vec<String>>) -> Self {
        self.labels = Some(labels);
        self
    }

    pub fn max_arity(&self) -> usize {
        self.cards.len() - 1
    }

    pub fn card(&self, n: usize) -> usize {
        self.cards[n]
    }

    pub fn cards(&self) -> &[usize] {
        &self.cards
    }

    pub fn generation_bound(&self) -> Option<usize> {
        self.generation_bound
    }

    pub fn restrictions(&self) -> &[Vec<Vec<u32>>] {
        &self.restrictions
    }

    pub fn labels(&self) -> Option<&[Vec<String>]> {
        self.labels.as_deref()
    }

    pub fn label(&self, n: usize, x: usize) -> String {
        match &self.labels {
            Some(l) => l[n][x].clone(),
            None => format!("{}", x + 1),
        }
    }

    /// `P(f)(ξ)` for `f: m̄ → n̄`, `ξ ∈ P(n)`.
    pub fn restrict(&self, f: &FinMap, x: usize) -> usize {
        let cn = self.cards[f.cod()];
        self.restrictions[f.dom()][f.cod()][f.rank() * cn + x] as usize
    }

    /// `P(f)` as a map `P(n) → P(m)`.
    pub fn restriction_table(&self, f: &FinMap) -> Vec<usize> {
        let cn = self.cards[f.cod()];
        let base = f.rank() * cn;
        self.restrictions[f.dom()][f.cod()][base..base + cn]
            .iter()
            .map(|&v| v as usize)
            .collect()
    }

    pub fn set_restriction(&mut self, f: &FinMap, x: usize, value: usize) {
        let cn = self.cards[f.cod()];
        self.restrictions[f.dom()][f.cod()][f.rank() * cn + x] = value as u32;
    }

    /// The declared generation bound, if it lies within the truncation.
    pub(crate) fn bounded_degree(&self, what: &str) -> Result<usize> {
        match self.generation_bound {
            Some(s) if s <= self.max_arity() => Ok(s),
            Some(s) => Err(Error::Precondition(format!(
                "{what}: generation bound {s} exceeds max arity {}",
                self.max_arity()
            ))),
            None => Err(Error::Precondition(format!(
                "{what}: the presheaf declares no generation bound"
            ))),
        }
    }
}

/// Checks contravariant functoriality and the declared generation bound.
pub fn validate_presheaf(p: &FinPresheaf) -> Report {
    let mut run = LawRunner::new("presheaf", Mode::AllLaws);
    presheaf_laws(p, &mut run);
    run.finish()
}

pub(crate) fn presheaf_laws(p: &FinPresheaf, run: &mut LawRunner) {
    let n_max = p.max_arity();
    run.law(Law::FunctorIdentity, |visit| {
        for n in 0..=n_max {
            let id = FinMap::identity(n);
            for x in 0..p.card(n) {
                visit!(visit, p.restrict(&id, x) == x, format!("P(id_{n})"), vec![x]);
            }
        }
    });
    let mut sampled = false;
    run.law(Law::FunctorComposition, |visit| {
        for l in 0..=n_max {
            for m in 0..=n_max {
                for n in 0..=n_max {
                    let (nf, ng) = (FinMap::count(l, m), FinMap::count(m, n));
                    let radices = [nf, ng, p.card(n)];
                    let (indices, s) = cell_indices(nf * ng * p.card(n));
                    sampled |= s;
                    for i in indices {
                        let t = tuple_at(i, &radices);
                        let (f, g, x) = (FinMap::unrank(l, m, t[0]), FinMap::unrank(m, n, t[1]), t[2]);
                        let gf = compose_maps(&f, &g).expect("composable");
                        let ok = p.restrict(&gf, x) == p.restrict(&f, p.restrict(&g, x));
                        visit!(visit, ok, format!("f = {f}, g = {g}"), vec![x]);
                    }
                }
            }
        }
    });
    run.law(Law::GenerationBound, |visit| {
        let Some(s) = p.generation_bound() else { return };
        if s > n_max {
            return;
        }
        for n in 0..=n_max {
            let ok = generated_in_degree(p, s, n);
            visit!(visit, ok, format!("P({n}) against degrees ≤ {s}"), vec![]);
        }
    });
    if sampled {
        run.notice("functor composition was sampled in cells exceeding the instance budget");
    }
}

/// Whether `∫^{k≤s} P(k) × Hom(n̄, k̄) → P(n)`, `(ξ, g) ↦ P(g)ξ`, is bijective.
fn generated_in_degree(p: &FinPresheaf, s: usize, n: usize) -> bool {
    let mut offsets = Vec::with_capacity(s + 1);
    let mut total = 0;
    for k in 0..=s {
        offsets.push(total);
        total += p.card(k) * FinMap::count(n, k);
    }
    let index = |k: usize, x: usize, g: &FinMap| offsets[k] + x * FinMap::count(n, k) + g.rank();
    let mut merger = Merger::new(total);
    for psi in generating_maps(s) {
        let (k, k2) = (psi.dom(), psi.cod());
        let table = p.restriction_table(&psi);
        for g in FinMap::all(n, k) {
            let pg = compose_maps(&g, &psi).expect("composable");
            for (x, &px) in table.iter().enumerate() {
                merger.merge(index(k, px, &g), index(k2, x, &pg));
            }
        }
    }
    let q = merger.finish();
    let mut hit = vec![false; p.card(n)];
    for class in &q.classes {
        let flat = class[0];
        let k = offsets.partition_point(|&o| o <= flat) - 1;
        let local = flat - offsets[k];
        let (x, g) = (local / FinMap::count(n, k), FinMap::unrank(n, k, local % FinMap::count(n, k)));
        let image = p.restrict(&g, x);
        if std::mem::replace(&mut hit[image], true) {
            return false;
        }
    }
    hit.into_iter().all(|h| h)
}

/// Maps between sets of size `≤ s` that generate all of them under
/// composition: adjacent transpositions, the merge `n+1 → n` of the last two
/// points, and the inclusion `n → n+1`. Coend relations only need to be
/// imposed along these.
pub(crate) fn generating_maps(s: usize) -> Vec<FinMap> {
    let mut out = Vec::new();
    for n in 0..=s {
        for i in 0..n.saturating_sub(1) {
            let mut images: Vec<usize> = (0..n).collect();
            images.swap(i, i + 1);
            out.push(FinMap::new(n, images).expect("transposition"));
        }
        if n < s {
            out.push(FinMap::new(n + 1, (0..n).collect()).expect("inclusion"));
            if n > 0 {
                out.push(FinMap::new(n, (0..=n).map(|i| i.min(n - 1)).collect()).expect("merge"));
            }
        }
    }
    out
}

/// `h_k = Hom(−, k̄)`: elements of `h_k(n)` are maps `n̄ → k̄` in mixed radix,
/// restricted by precomposition. Generated in degree `k`.
pub fn representable(k: usize, max_arity: usize) -> Result<FinPresheaf> {
    let cards = (0..=max_arity).map(|n| k.pow(n as u32)).collect();
    let labels = (0..=max_arity)
        .map(|n| {
            (0..k.pow(n as u32))
                .map(|x| format!("{}", FinMap::unrank(n, k, x)))
                .collect()
        })
        .collect();
    let p = FinPresheaf::from_fn(cards, Some(k), |f, x| {
        let g = tuple_at(x, &vec![k; f.cod()]);
        let gf: Vec<usize> = f.images().iter().map(|&i| g[i]).collect();
        tuple_index(&gf, &vec![k; f.dom()])
    })?;
    Ok(p.with_labels(labels))
}

/// `Unit_⊗ = h_0`: one point at `0`, empty elsewhere.
pub fn unit_qa(max_arity: usize) -> Result<FinPresheaf> {
    representable(0, max_arity)
}

/// The terminal presheaf, which is `h_1`.
pub fn terminal(max_arity: usize) -> Result<FinPresheaf> {
    let cards = vec![1; max_arity + 1];
    FinPresheaf::from_fn(cards, Some(1), |_, _| 0)
}

/// Rank of each element of `subset` (a bit mask) among the members.
fn positions(subset: usize, n: usize) -> Vec<usize> {
    (0..n).filter(|i| subset >> i & 1 == 1).collect()
}

/// The restriction of `f: m̄ → n̄` to `f⁻¹(U) → U`, both sides transported to
/// standard sets along their order bijections.
pub(crate) fn restrict_to(f: &FinMap, subset: usize) -> FinMap {
    let members = positions(subset, f.cod());
    let mut rank = vec![usize::MAX; f.cod()];
    for (r, &u) in members.iter().enumerate() {
        rank[u] = r;
    }
    let images = f
        .images()
        .iter()
        .filter(|&&i| subset >> i & 1 == 1)
        .map(|&i| rank[i])
        .collect();
    FinMap::new(members.len(), images).expect("restricted map")
}

/// `(P⊗Q)(W) = ⊔_{U⊔V=W} P(U) × Q(V)`.
///
/// Elements of `(P⊗Q)(n)` are `(U, ξ, η)` with `U ⊆ n̄` a bit mask, listed by
/// `U`, then `ξ ∈ P(|U|)`, then `η ∈ Q(n-|U|)`. Restriction along `f`
/// pulls the decomposition back and restricts both factors.
pub fn day_tensor(p: &FinPresheaf, q: &FinPresheaf) -> Result<FinPresheaf> {
    let n_max = p.max_arity();
    if q.max_arity() != n_max {
        return Err(Error::Domain(format!(
            "max arities differ: {n_max} and {}",
            q.max_arity()
        )));
    }
    let layout = DayLayout::new(p, q, n_max);
    let cards = layout.offsets.iter().map(|o| *o.last().expect("2^n + 1 offsets")).collect();
    let bound = p.generation_bound().zip(q.generation_bound()).map(|(a, b)| a + b);
    let labels = (0..=n_max)
        .map(|n| {
            (0..layout.card(n))
                .map(|x| {
                    let (u, a, b) = layout.decode(n, x);
                    let set: Vec<String> = positions(u, n).iter().map(|i| (i + 1).to_string()).collect();
                    let k = u.count_ones() as usize;
                    format!("{{{}}}: {} ⊗ {}", set.join(","), p.label(k, a), q.label(n - k, b))
                })
                .collect()
        })
        .collect();
    let out = FinPresheaf::from_fn(cards, bound, |f, x| {
        let (u, a, b) = layout.decode(f.cod(), x);
        let v = !u & ((1 << f.cod()) - 1);
        let pulled: usize = (0..f.dom()).filter(|&i| u >> f.apply(i) & 1 == 1).map(|i| 1 << i).sum();
        let a2 = p.restrict(&restrict_to(f, u), a);
        let b2 = q.restrict(&restrict_to(f, v), b);
        layout.encode(f.dom(), pulled, a2, b2)
    })?;
    Ok(out.with_labels(labels))
}

/// Index arithmetic for `(P⊗Q)(n)`.
pub(crate) struct DayLayout {
    /// `offsets[n][U]`, with a final entry holding the total.
    offsets: Vec<Vec<usize>>,
    /// `|Q(n-|U|)|` per `n` and `U`.
    inner: Vec<Vec<usize>>,
}

impl DayLayout {
    pub(crate) fn new(p: &FinPresheaf, q: &FinPresheaf, n_max: usize) -> Self {
        let mut offsets = Vec::new();
        let mut inner = Vec::new();
        for n in 0..=n_max {
            let mut o = vec![0];
            let mut inn = Vec::new();
            for u in 0..1usize << n {
                let k = u.count_ones() as usize;
                inn.push(q.card(n - k));
                o.push(o.last().unwrap() + p.card(k) * q.card(n - k));
            }
            offsets.push(o);
            inner.push(inn);
        }
        DayLayout { offsets, inner }
    }

    pub(crate) fn card(&self, n: usize) -> usize {
        *self.offsets[n].last().unwrap()
    }

    pub(crate) fn decode(&self, n: usize, x: usize) -> (usize, usize, usize) {
        let u = self.offsets[n].partition_point(|&o| o <= x) - 1;
        let local = x - self.offsets[n][u];
        (u, local / self.inner[n][u], local % self.inner[n][u])
    }

    pub(crate) fn encode(&self, n: usize, u: usize, a: usize, b: usize) -> usize {
        self.offsets[n][u] + a * self.inner[n][u] + b
    }
}

/// Whether the given bijections `P(n) → Q(n)` commute with all restrictions.
pub fn is_natural_bijection(p: &FinPresheaf, q: &FinPresheaf, maps: &[Vec<usize>]) -> bool {
    let n_max = p.max_arity();
    if q.max_arity() != n_max || maps.len() != n_max + 1 {
        return false;
    }
    for (n, m) in maps.iter().enumerate() {
        let mut seen = vec![false; q.card(n)];
        if m.len() != p.card(n) || m.iter().any(|&y| y >= q.card(n) || std::mem::replace(&mut seen[y], true)) {
            return false;
        }
    }
    (0..=n_max).all(|a| {
        (0..=n_max).all(|b| {
            FinMap::all(a, b).all(|f| (0..p.card(b)).all(|x| maps[a][p.restrict(&f, x)] == q.restrict(&f, maps[b][x])))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_presheaves_are_valid() {
        for p in [unit_qa(3).unwrap(), terminal(3).unwrap(), representable(2, 3).unwrap()] {
            let r = validate_presheaf(&p);
            assert!(r.is_ok(), "{r}");
        }
        assert_eq!(unit_qa(3).unwrap().cards(), &[1, 0, 0, 0]);
        assert_eq!(terminal(3).unwrap(), FinPresheaf { labels: None, ..representable(1, 3).unwrap() });
    }

    #[test]
    fn wrong_generation_bound_is_reported() {
        let mut p = representable(2, 3).unwrap();
        p.generation_bound = Some(1);
        let r = validate_presheaf(&p);
        assert_eq!(r.failed_laws().into_iter().collect::<Vec<_>>(), vec![Law::GenerationBound]);
    }

    #[test]
    fn mutated_restriction_is_caught() {
        let mut p = representable(2, 2).unwrap();
        let swap = FinMap::new(2, vec![1, 0]).unwrap();
        p.set_restriction(&swap, 1, 1);
        assert!(!validate_presheaf(&p).is_ok());
    }

    #[test]
    fn day_tensor_of_points_is_h2() {
        let h1 = representable(1, 3).unwrap();
        let t = day_tensor(&h1, &h1).unwrap();
        assert_eq!(t.cards(), &[1, 2, 4, 8]);
        assert!(validate_presheaf(&t).is_ok());
        // (U, *, *) ↦ the map sending U to 1 and its complement to 2.
        let maps: Vec<Vec<usize>> = (0..=3)
            .map(|n| {
                (0..t.card(n))
                    .map(|x| {
                        let images: Vec<usize> = (0..n).map(|i| usize::from(x >> i & 1 == 0)).collect();
                        FinMap::new(2, images).unwrap().rank()
                    })
                    .collect()
            })
            .collect();
        assert!(is_natural_bijection(&t, &representable(2, 3).unwrap(), &maps));
    }

    #[test]
    fn day_tensor_unit() {
        let h2 = representable(2, 3).unwrap();
        let t = day_tensor(&unit_qa(3).unwrap(), &h2).unwrap();
        let maps: Vec<Vec<usize>> = (0..=3).map(|n| (0..h2.card(n)).collect()).collect();
        assert!(is_natural_bijection(&t, &h2, &maps));
    }
}
