use crate::finset::{symmetric_group, tuple_at, tuple_index, FinMap, Merger, Quotient};
use crate::qa::{CommAlgObject, FinPresheaf, FiniteMonoid};
use crate::qc::Finitary;
use crate::qo::SymSeq;

/// A coequalizer computed over all degrees up to a cutoff.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StabilizedQuotient {
    pub cutoff: usize,
    /// Number of classes at `cutoff`.
    pub classes: usize,
    /// Least member of each class as `(degree, element, inputs)`.
    pub representatives: Vec<(usize, usize, Vec<usize>)>,
    /// Whether passing from `cutoff - 1` to `cutoff` neither merged nor
    /// added classes.
    pub stabilized: bool,
}

/// Elements `(n, ξ, inputs)` of a graded pre-quotient, `n ≤ cutoff`, each
/// degree contributing `card(n) × radix^n` entries.
struct Graded {
    offsets: Vec<usize>,
    radix: usize,
    total: usize,
}

impl Graded {
    fn new(card: impl Fn(usize) -> usize, radix: usize, cutoff: usize) -> Self {
        let mut offsets = Vec::new();
        let mut total = 0;
        for n in 0..=cutoff {
            offsets.push(total);
            total += card(n) * radix.pow(n as u32);
        }
        Graded { offsets, radix, total }
    }

    fn index(&self, n: usize, x: usize, inputs: &[usize]) -> usize {
        self.offsets[n] + x * self.radix.pow(n as u32) + tuple_index(inputs, &vec![self.radix; n])
    }

    fn decode(&self, flat: usize) -> (usize, usize, Vec<usize>) {
        let n = self.offsets.iter().rposition(|&o| o <= flat).expect("in range");
        let per = self.radix.pow(n as u32);
        let local = flat - self.offsets[n];
        (n, local / per, tuple_at(local % per, &vec![self.radix; n]))
    }
}

type Rep = (usize, usize, Vec<usize>);

/// Runs `build` at `cutoff - 1` and `cutoff` and compares the quotients.
/// `build(k)` returns the quotient and the representative of each class;
/// the pre-quotient at `k - 1` must be a prefix of the one at `k`.
fn stabilize(cutoff: usize, build: impl Fn(usize) -> (Quotient, Vec<Rep>)) -> StabilizedQuotient {
    let (q, representatives) = build(cutoff);
    let stabilized = cutoff > 0 && {
        let (q0, _) = build(cutoff - 1);
        let mut image = vec![usize::MAX; q.len()];
        let mut ok = true;
        for (c, members) in q0.classes.iter().enumerate() {
            let target = q.projection[members[0]];
            if image[target] != usize::MAX {
                ok = false;
            }
            image[target] = c;
        }
        ok && image.iter().all(|&c| c != usize::MAX)
    };
    StabilizedQuotient {
        cutoff,
        classes: q.len(),
        representatives,
        stabilized,
    }
}

fn finish(g: &Graded, merger: Merger) -> (Quotient, Vec<Rep>) {
    let q = merger.finish();
    let reps = q.classes.iter().map(|c| g.decode(c[0])).collect();
    (q, reps)
}

/// `F(X)` as `⊔_{n≤cutoff} F(n) × Xⁿ` modulo `(F(φ)ξ, x⃗) ~ (ξ, x⃗∘φ)` for
/// every `φ: m̄ → n̄`, `m, n ≤ cutoff`.
pub fn naive_eval_qc(f: &impl Finitary, set_size: usize, cutoff: usize) -> StabilizedQuotient {
    assert!(cutoff <= f.max_arity(), "cutoff beyond the functor's bound");
    stabilize(cutoff, |k| {
        let g = Graded::new(|n| f.card(n), set_size, k);
        let mut merger = Merger::new(g.total);
        for m in 0..=k {
            for n in 0..=k {
                for phi in FinMap::all(m, n) {
                    for xi in 0..f.card(m) {
                        let image = f.map(&phi, xi);
                        for t in 0..set_size.pow(n as u32) {
                            let xs = tuple_at(t, &vec![set_size; n]);
                            let pulled: Vec<usize> = phi.images().iter().map(|&j| xs[j]).collect();
                            merger.merge(g.index(n, image, &xs), g.index(m, xi, &pulled));
                        }
                    }
                }
            }
        }
        finish(&g, merger)
    })
}

/// Raises the cutoff until the quotient stabilizes or the bound is reached.
pub fn naive_eval_qc_stable(f: &impl Finitary, set_size: usize) -> StabilizedQuotient {
    let mut last = naive_eval_qc(f, set_size, 0);
    for k in 1..=f.max_arity() {
        last = naive_eval_qc(f, set_size, k);
        if last.stabilized {
            break;
        }
    }
    last
}

/// `|⊔_n X_n ×_{S_n} Sⁿ|` per arity, by orbit counting over all of `S_n`.
pub fn naive_eval_qo(x: &SymSeq, set_size: usize) -> Vec<usize> {
    (0..=x.max_arity())
        .map(|n| {
            let carrier = x.carrier(n);
            let radices = vec![set_size; n];
            let per = set_size.pow(n as u32);
            let mut merger = Merger::new(carrier.size() * per);
            let group = symmetric_group(n).expect("within cap");
            for (r, sigma) in group.elements().iter().enumerate() {
                for xi in 0..carrier.size() {
                    for t in 0..per {
                        let ys = tuple_at(t, &radices);
                        let moved: Vec<usize> = (0..n).map(|i| ys[sigma.apply(i)]).collect();
                        merger.merge(xi * per + t, carrier.act(xi, r) * per + tuple_index(&moved, &radices));
                    }
                }
            }
            merger.finish().len()
        })
        .collect()
}

/// `Φ̄_A(P)`: `⊔_{n≤cutoff} P(n) × Aⁿ` modulo `(P(φ)ξ, a⃗) ~ (ξ, φ_*a⃗)` for
/// every `φ: m̄ → n̄`, with `φ_*` multiplying along fibres.
pub fn naive_eval_qa(p: &FinPresheaf, a: &FiniteMonoid, cutoff: usize) -> StabilizedQuotient {
    assert!(cutoff <= p.max_arity(), "cutoff beyond the presheaf's bound");
    let k = a.size();
    stabilize(cutoff, |c| {
        let g = Graded::new(|n| p.card(n), k, c);
        let mut merger = Merger::new(g.total);
        for m in 0..=c {
            for n in 0..=c {
                for phi in FinMap::all(m, n) {
                    for t in 0..k.pow(m as u32) {
                        let xs = tuple_at(t, &vec![k; m]);
                        let mut pushed = vec![a.unit(); n];
                        for (j, &i) in phi.images().iter().enumerate() {
                            pushed[i] = a.op(pushed[i], xs[j]);
                        }
                        for xi in 0..p.card(n) {
                            merger.merge(g.index(m, p.restrict(&phi, xi), &xs), g.index(n, xi, &pushed));
                        }
                    }
                }
            }
        }
        finish(&g, merger)
    })
}

/// The element of `Y(|W|)` obtained by multiplying `y_j ∈ Y(U_j)` over the
/// disjoint subsets `U_j` of `W = ∪ U_j` (bit masks), read in the order of `W`.
fn product_over(y: &CommAlgObject, blocks: &[(usize, usize)]) -> usize {
    let (mut size, mut acc) = (0, y.unit());
    let mut concat_pos = Vec::new();
    for &(mask, el) in blocks {
        let k = mask.count_ones() as usize;
        acc = y.mul(size, k, acc, el);
        size += k;
        concat_pos.extend(members(mask));
    }
    // concat_pos[i] is the point of W sitting at concatenated position i.
    let mut sorted = concat_pos.clone();
    sorted.sort_unstable();
    let images = sorted
        .iter()
        .map(|w| concat_pos.iter().position(|c| c == w).expect("present"))
        .collect();
    y.carrier().restrict(&FinMap::new(size, images).expect("transport"), acc)
}

fn members(mask: usize) -> Vec<usize> {
    (0..usize::BITS as usize).filter(|i| mask >> i & 1 == 1).collect()
}

/// Ordered covers `(U_1, …, U_n)` of `v̄` by disjoint subsets, as bit masks.
fn ordered_covers(v: usize, n: usize) -> Vec<Vec<usize>> {
    FinMap::all(v, n)
        .map(|b| (0..n).map(|i| b.fibre(i).iter().map(|j| 1 << j).sum()).collect())
        .collect()
}

/// `(X∘Y)(v̄)` by direct transcription of the coequalizer: elements
/// `(ξ ∈ X(n), U_1 ⊔ … ⊔ U_n = v̄, y_i ∈ Y(U_i))` for `n ≤ cutoff`, related
/// along every `φ: m̄ → n̄` by merging blocks with `Y`'s product.
pub fn naive_compose_qa(x: &FinPresheaf, y: &CommAlgObject, v: usize, cutoff: usize) -> StabilizedQuotient {
    stabilize(cutoff, |c| {
        // Flat list of (n, ξ, cover, ys); indices via a hash map.
        let mut elements = Vec::new();
        for n in 0..=c {
            for xi in 0..x.card(n) {
                for cover in ordered_covers(v, n) {
                    let radices: Vec<usize> = cover.iter().map(|u| y.card(u.count_ones() as usize)).collect();
                    for t in 0..radices.iter().product() {
                        elements.push((n, xi, cover.clone(), tuple_at(t, &radices)));
                    }
                }
            }
        }
        let index: std::collections::HashMap<_, _> =
            elements.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let mut merger = Merger::new(elements.len());
        for (i, (m, xi, cover, ys)) in elements.iter().enumerate() {
            let m = *m;
            for n in 0..=c {
                for phi in FinMap::all(m, n) {
                    let merged: Vec<usize> = (0..n)
                        .map(|t| phi.fibre(t).iter().map(|&j| cover[j]).fold(0, |a, u| a | u))
                        .collect();
                    let zs: Vec<usize> = (0..n)
                        .map(|t| {
                            let blocks: Vec<(usize, usize)> = phi.fibre(t).iter().map(|&j| (cover[j], ys[j])).collect();
                            product_over(y, &blocks)
                        })
                        .collect();
                    for xi2 in 0..x.card(n) {
                        if x.restrict(&phi, xi2) == *xi {
                            let j = index[&(n, xi2, merged.clone(), zs.clone())];
                            merger.merge(i, j);
                        }
                    }
                }
            }
        }
        let q = merger.finish();
        // Representatives list the cover's masks, then the inner elements.
        let reps = q
            .classes
            .iter()
            .map(|cl| {
                let (n, xi, cover, ys) = &elements[cl[0]];
                (*n, *xi, [cover.as_slice(), ys.as_slice()].concat())
            })
            .collect();
        (q, reps)
    })
}
