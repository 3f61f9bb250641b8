use crate::error::{capacity, Error, Result};
use crate::finset::{
    induce, symmetric_group, tuple_index, tuples, Composition, GSet, Merger, HARD_ARITY_CAP,
};
use crate::report::{visit, Law, LawRunner, Mode, Report};

/// A symmetric sequence `(A_0, …, A_N)` of right `S_n`-sets, truncated at
/// `N = max_arity`.
///
/// `support_bound = Some(b)` records that `A_n = ∅` for every `n > b`,
/// including arities beyond the truncation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymSeq {
    max_arity: usize,
    carriers: Vec<GSet>,
    support_bound: Option<usize>,
}

impl SymSeq {
    pub fn new(carriers: Vec<GSet>, support_bound: Option<usize>) -> Result<Self> {
        let max_arity = carriers
            .len()
            .checked_sub(1)
            .ok_or_else(|| Error::Domain("a symmetric sequence needs arity 0".into()))?;
        if max_arity > HARD_ARITY_CAP {
            return Err(capacity("max arity", max_arity, HARD_ARITY_CAP));
        }
        for (n, c) in carriers.iter().enumerate() {
            if c.arity() != n {
                return Err(Error::Domain(format!(
                    "carrier in slot {n} has arity {}",
                    c.arity()
                )));
            }
        }
        let seq = SymSeq {
            max_arity,
            carriers,
            support_bound,
        };
        if let Some(b) = support_bound {
            if let Some(n) = (b + 1..=max_arity).find(|&n| !seq.carriers[n].is_empty()) {
                return Err(Error::Domain(format!(
                    "support bound {b} but arity {n} is inhabited"
                )));
            }
        }
        Ok(seq)
    }

    /// All carriers empty; finitely supported.
    pub fn empty(max_arity: usize) -> Result<Self> {
        let carriers = (0..=max_arity).map(GSet::empty).collect::<Result<_>>()?;
        Self::new(carriers, Some(0))
    }

    pub fn max_arity(&self) -> usize {
        self.max_arity
    }

    pub fn carrier(&self, n: usize) -> &GSet {
        &self.carriers[n]
    }

    pub fn carriers(&self) -> &[GSet] {
        &self.carriers
    }

    pub fn support_bound(&self) -> Option<usize> {
        self.support_bound
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.carriers.iter().map(GSet::size).collect()
    }

    /// Least arity above which every stored carrier is empty.
    pub fn observed_support(&self) -> usize {
        (0..=self.max_arity)
            .rev()
            .find(|&n| !self.carriers[n].is_empty())
            .unwrap_or(0)
    }

    pub fn carrier_mut(&mut self, n: usize) -> &mut GSet {
        &mut self.carriers[n]
    }
}

/// Checks the action axioms in every arity and the declared support bound.
pub fn validate_symseq(a: &SymSeq) -> Report {
    let mut run = LawRunner::new("symmetric sequence", Mode::AllLaws);
    for law in [Law::ActionIdentity, Law::ActionCompatibility] {
        run.law(law, |visit| {
            for (n, c) in a.carriers.iter().enumerate() {
                let g = c.group();
                for x in 0..c.size() {
                    if law == Law::ActionIdentity {
                        let ok = c.act(x, g.identity()) == x;
                        visit!(visit, ok, format!("arity {n}, x·id"), vec![x]);
                        continue;
                    }
                    for s in 0..g.order() {
                        for t in 0..g.order() {
                            let ok = c.act(c.act(x, s), t) == c.act(x, g.mul(s, t));
                            visit!(
                                visit,
                                ok,
                                format!(
                                    "arity {n}, (x·σ)·τ with σ = {}, τ = {}",
                                    g.element(s),
                                    g.element(t)
                                ),
                                vec![x]
                            );
                        }
                    }
                }
            }
        });
    }
    run.law(Law::SupportBound, |visit| {
        if let Some(b) = a.support_bound {
            for n in b + 1..=a.max_arity {
                visit!(visit, a.carriers[n].is_empty(), format!("arity {n} above bound {b}"), vec![]);
            }
        }
    });
    run.finish()
}

/// `Unit_⊗ = (1, ∅, ∅, …)`.
pub fn unit_tensor(max_arity: usize) -> Result<SymSeq> {
    representable(0, max_arity)
}

/// `Unit_∘ = X_o = (∅, 1, ∅, …)`.
pub fn unit_comp(max_arity: usize) -> Result<SymSeq> {
    representable(1, max_arity)
}

/// `h_n = (∅, …, ∅, S_n, ∅, …)` with the regular right action in slot `n`.
pub fn representable(n: usize, max_arity: usize) -> Result<SymSeq> {
    if n > max_arity {
        return Err(capacity("representable arity", n, max_arity));
    }
    let carriers = (0..=max_arity)
        .map(|k| if k == n { GSet::regular(k) } else { GSet::empty(k) })
        .collect::<Result<_>>()?;
    SymSeq::new(carriers, Some(n))
}

/// `(A⊗B)_n = ⊔_{p+q=n} Ind^{S_n}_{S_p×S_q} A_p × B_q`, summands ordered by `p`.
pub fn tensor(a: &SymSeq, b: &SymSeq) -> Result<SymSeq> {
    tensor_many(&[a, b])
}

/// `(A¹⊗…⊗Aˢ)_n = ⊔_{p_1+…+p_s=n} Ind(A¹_{p_1} × … × Aˢ_{p_s})`.
pub fn tensor_many(factors: &[&SymSeq]) -> Result<SymSeq> {
    let n_max = shared_arity(factors)?;
    let mut carriers = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut summands = Vec::new();
        for parts in Composition::enumerate(n, factors.len(), 0) {
            let pieces: Vec<&GSet> = factors
                .iter()
                .zip(parts.parts())
                .map(|(f, &p)| f.carrier(p))
                .collect();
            if pieces.iter().any(|p| p.is_empty()) {
                continue;
            }
            summands.push(induce(&pieces)?.gset);
        }
        carriers.push(GSet::disjoint_union(n, &summands.iter().collect::<Vec<_>>())?);
    }
    let support = factors
        .iter()
        .map(|f| f.support_bound())
        .sum::<Option<usize>>();
    SymSeq::new(carriers, support)
}

pub(crate) fn shared_arity(seqs: &[&SymSeq]) -> Result<usize> {
    let n = seqs.first().map(|s| s.max_arity()).unwrap_or(0);
    if let Some(s) = seqs.iter().find(|s| s.max_arity() != n) {
        return Err(Error::Domain(format!(
            "max arities differ: {n} and {}",
            s.max_arity()
        )));
    }
    Ok(n)
}

/// A class of `(A_n × Xⁿ)/S_n`, represented by its least pair.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct EvalClass {
    pub arity: usize,
    pub operation: usize,
    pub inputs: Vec<usize>,
}

/// `Φ̄_X(A) = ⊔_n (A_n × Xⁿ)/S_n` for `X = {0, …, k-1}`, truncated at `N`.
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub set_size: usize,
    pub classes: Vec<EvalClass>,
    /// Per arity: class index of pair `(x, y)` at `x·kⁿ + index(y)`.
    class_of: Vec<Vec<usize>>,
}

impl Evaluation {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_of(&self, arity: usize, operation: usize, inputs: &[usize]) -> Option<usize> {
        let k = self.set_size;
        let idx = operation * k.pow(arity as u32) + tuple_index(inputs, &vec![k; arity]);
        self.class_of.get(arity)?.get(idx).copied()
    }

    /// Number of classes in each arity.
    pub fn sizes_by_arity(&self, max_arity: usize) -> Vec<usize> {
        let mut out = vec![0; max_arity + 1];
        for c in &self.classes {
            out[c.arity] += 1;
        }
        out
    }
}

/// Orbit quotient of `A_n × Xⁿ` under `(x, y)·σ = (x·σ, y∘σ)`.
pub fn eval(a: &SymSeq, set_size: usize) -> Result<Evaluation> {
    let k = set_size;
    let mut classes = Vec::new();
    let mut class_of = Vec::new();
    for (n, carrier) in a.carriers.iter().enumerate() {
        let g = symmetric_group(n)?;
        let ys = tuples(&vec![k; n]);
        let radices = vec![k; n];
        let per = ys.len();
        let mut m = Merger::new(carrier.size() * per);
        for x in 0..carrier.size() {
            for (yi, y) in ys.iter().enumerate() {
                for s in g.generators() {
                    let moved = g.element(s).permute(y);
                    m.merge(x * per + yi, carrier.act(x, s) * per + tuple_index(&moved, &radices));
                }
            }
        }
        let q = m.finish();
        let base = classes.len();
        for cls in &q.classes {
            let rep = cls[0];
            classes.push(EvalClass {
                arity: n,
                operation: rep / per,
                inputs: ys[rep % per].clone(),
            });
        }
        class_of.push(q.projection.iter().map(|c| c + base).collect());
    }
    Ok(Evaluation {
        set_size,
        classes,
        class_of,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::gset_iso;

    fn com_pos(n: usize) -> SymSeq {
        let carriers = (0..=n)
            .map(|k| GSet::trivial(k, usize::from(k > 0)))
            .collect::<Result<_>>()
            .unwrap();
        SymSeq::new(carriers, None).unwrap()
    }

    #[test]
    fn units_and_representables() {
        assert_eq!(unit_tensor(4).unwrap().sizes(), vec![1, 0, 0, 0, 0]);
        assert_eq!(unit_comp(4).unwrap().sizes(), vec![0, 1, 0, 0, 0]);
        assert_eq!(representable(1, 4).unwrap(), unit_comp(4).unwrap());
        assert_eq!(representable(0, 4).unwrap(), unit_tensor(4).unwrap());
        assert_eq!(representable(3, 4).unwrap().carrier(3).size(), 6);
        assert!(gset_iso(unit_comp(3).unwrap().carrier(1), &GSet::trivial(1, 1).unwrap()).unwrap());
        assert!(matches!(representable(5, 4), Err(Error::Capacity { .. })));
    }

    #[test]
    fn validation() {
        assert!(validate_symseq(&SymSeq::empty(3).unwrap()).is_ok());
        assert!(validate_symseq(&unit_comp(3).unwrap()).is_ok());
        let mut bad = representable(3, 3).unwrap();
        bad.carrier_mut(3).set_entry(0, 1, 4);
        let r = validate_symseq(&bad);
        assert!(!r.is_ok());
        assert_eq!(r.violations[0].witness, vec![1]);
    }

    #[test]
    fn tensor_small_cases() {
        let a = representable(1, 3).unwrap();
        let t = tensor(&a, &a).unwrap();
        assert_eq!(t.sizes(), vec![0, 0, 2, 0]);
        assert!(gset_iso(t.carrier(2), representable(2, 3).unwrap().carrier(2)).unwrap());
        let c = com_pos(3);
        let u = tensor(&unit_tensor(3).unwrap(), &c).unwrap();
        for n in 0..=3 {
            assert!(gset_iso(u.carrier(n), c.carrier(n)).unwrap());
        }
    }

    #[test]
    fn eval_examples() {
        assert_eq!(eval(&representable(3, 3).unwrap(), 2).unwrap().len(), 8);
        assert_eq!(eval(&unit_tensor(3).unwrap(), 5).unwrap().len(), 1);
        let e = eval(&com_pos(2), 2).unwrap();
        assert_eq!(e.sizes_by_arity(2), vec![0, 2, 3]);
        assert_eq!(e.class_of(2, 0, &[1, 0]), e.class_of(2, 0, &[0, 1]));
    }
}
