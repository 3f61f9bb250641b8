use crate::error::{Error, Result};
use crate::finset::{block_sum, tuple_at, tuple_index, FinMap, Perm};
use crate::qa::presheaf::{presheaf_laws, representable, FinPresheaf};
use crate::report::{cell_indices, visit, Law, LawRunner, Mode, Report};

/// A commutative algebra for the Day tensor: a presheaf `Σ` with
/// `M_{p,q}: Σ(p) × Σ(q) → Σ(p+q)` (first factor on the first `p` points)
/// and a unit `E_0 ∈ Σ(0)`. On a general decomposition `W = U ⊔ V` the
/// product is transported along the order bijections.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CommAlgObject {
    carrier: FinPresheaf,
    /// `mult[p][q][a·|Σ(q)| + b]` for `p + q ≤ N`; empty otherwise.
    mult: Vec<Vec<Vec<u32>>>,
    unit: usize,
}

impl CommAlgObject {
    pub fn new(carrier: FinPresheaf, mult: Vec<Vec<Vec<u32>>>, unit: usize) -> Result<Self> {
        let n_max = carrier.max_arity();
        if unit >= carrier.card(0) {
            return Err(Error::Domain("the unit must be an element of Σ(0)".into()));
        }
        if mult.len() != n_max + 1 || mult.iter().any(|r| r.len() != n_max + 1) {
            return Err(Error::Format("multiplication rows do not match max arity".into()));
        }
        for (p, row) in mult.iter().enumerate() {
            for (q, table) in row.iter().enumerate() {
                let expected = if p + q <= n_max { carrier.card(p) * carrier.card(q) } else { 0 };
                if table.len() != expected {
                    return Err(Error::Format(format!(
                        "M_{{{p},{q}}} has {} entries, expected {expected}",
                        table.len()
                    )));
                }
                if let Some(v) = table.iter().find(|&&v| v as usize >= carrier.card(p + q)) {
                    return Err(Error::Format(format!("M_{{{p},{q}}}: value {} out of range", v + 1)));
                }
            }
        }
        Ok(CommAlgObject { carrier, mult, unit })
    }

    pub fn from_fn(
        carrier: FinPresheaf,
        unit: usize,
        mult: impl Fn(usize, usize, usize, usize) -> usize,
    ) -> Result<Self> {
        let n_max = carrier.max_arity();
        let tables = (0..=n_max)
            .map(|p| {
                (0..=n_max)
                    .map(|q| {
                        if p + q > n_max {
                            return Vec::new();
                        }
                        let cq = carrier.card(q);
                        (0..carrier.card(p) * cq).map(|i| mult(p, q, i / cq, i % cq) as u32).collect()
                    })
                    .collect()
            })
            .collect();
        Self::new(carrier, tables, unit)
    }

    pub fn carrier(&self) -> &FinPresheaf {
        &self.carrier
    }

    pub fn max_arity(&self) -> usize {
        self.carrier.max_arity()
    }

    pub fn card(&self, n: usize) -> usize {
        self.carrier.card(n)
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn mult_tables(&self) -> &[Vec<Vec<u32>>] {
        &self.mult
    }

    /// `M_{p,q}(a, b)`.
    pub fn mul(&self, p: usize, q: usize, a: usize, b: usize) -> usize {
        self.mult[p][q][a * self.carrier.card(q) + b] as usize
    }

    /// The product of `ys[i] ∈ Σ(sizes[i])`, blocks in order.
    pub fn mul_many(&self, parts: &[(usize, usize)]) -> (usize, usize) {
        parts
            .iter()
            .fold((0, self.unit), |(n, acc), &(k, y)| (n + k, self.mul(n, k, acc, y)))
    }

    pub fn set_entry(&mut self, p: usize, q: usize, index: usize, value: usize) {
        self.mult[p][q][index] = value as u32;
    }

    pub fn set_unit(&mut self, unit: usize) {
        self.unit = unit;
    }

    pub fn carrier_mut(&mut self) -> &mut FinPresheaf {
        &mut self.carrier
    }
}

/// The block swap `p+q → q+p` used to compare `M_{q,p}(b, a)` with `M_{p,q}(a, b)`.
pub(crate) fn block_swap(p: usize, q: usize) -> FinMap {
    let images = (0..p).map(|i| q + i).chain(0..q).collect();
    FinMap::new(p + q, images).expect("block swap")
}

pub fn comm_alg_check(a: &CommAlgObject) -> Report {
    comm_alg_check_with(a, Mode::AllLaws)
}

/// Checks the presheaf laws, naturality of `M` along `f ⊔ g`,
/// commutativity, both unit laws and associativity.
pub fn comm_alg_check_with(a: &CommAlgObject, mode: Mode) -> Report {
    let mut run = LawRunner::new("commutative algebra", mode);
    presheaf_laws(a.carrier(), &mut run);
    comm_alg_laws(a, &mut run);
    run.finish()
}

pub(crate) fn comm_alg_laws(a: &CommAlgObject, run: &mut LawRunner) {
    let n_max = a.max_arity();
    let s = a.carrier();
    let mut sampled = false;
    run.law(Law::Naturality, |visit| {
        for p in 0..=n_max {
            for q in 0..=n_max - p {
                for p2 in 0..=n_max {
                    for q2 in 0..=n_max - p2 {
                        let (nf, ng) = (FinMap::count(p2, p), FinMap::count(q2, q));
                        let r = [nf, ng, a.card(p), a.card(q)];
                        let (indices, smp) = cell_indices(r.iter().product());
                        sampled |= smp;
                        for i in indices {
                            let t = tuple_at(i, &r);
                            let (f, g) = (FinMap::unrank(p2, p, t[0]), FinMap::unrank(q2, q, t[1]));
                            let lhs = s.restrict(&block_sum(&f, &g), a.mul(p, q, t[2], t[3]));
                            let rhs = a.mul(p2, q2, s.restrict(&f, t[2]), s.restrict(&g, t[3]));
                            visit!(visit, lhs == rhs, format!("M along {f} ⊔ {g}"), vec![t[2], t[3]]);
                        }
                    }
                }
            }
        }
    });
    run.law(Law::Commutativity, |visit| {
        for p in 0..=n_max {
            for q in 0..=n_max - p {
                let swap = block_swap(p, q);
                for x in 0..a.card(p) {
                    for y in 0..a.card(q) {
                        let ok = s.restrict(&swap, a.mul(q, p, y, x)) == a.mul(p, q, x, y);
                        visit!(visit, ok, format!("M_{{{p},{q}}}"), vec![x, y]);
                    }
                }
            }
        }
    });
    run.law(Law::MultiplicationUnit, |visit| {
        for p in 0..=n_max {
            for x in 0..a.card(p) {
                let ok = a.mul(0, p, a.unit(), x) == x && a.mul(p, 0, x, a.unit()) == x;
                visit!(visit, ok, format!("E_0 · x in degree {p}"), vec![x]);
            }
        }
    });
    run.law(Law::Associativity, |visit| {
        for p in 0..=n_max {
            for q in 0..=n_max - p {
                for r in 0..=n_max - p - q {
                    let radices = [a.card(p), a.card(q), a.card(r)];
                    let (indices, smp) = cell_indices(radices.iter().product());
                    sampled |= smp;
                    for i in indices {
                        let t = tuple_at(i, &radices);
                        let lhs = a.mul(p + q, r, a.mul(p, q, t[0], t[1]), t[2]);
                        let rhs = a.mul(p, q + r, t[0], a.mul(q, r, t[1], t[2]));
                        visit!(visit, lhs == rhs, format!("(p, q, r) = ({p}, {q}, {r})"), t);
                    }
                }
            }
        }
    });
    if sampled {
        run.notice("some cells exceeded the instance budget and were sampled");
    }
}

/// The functions algebra `C^{(−)} = h_{|C|}` on a set with `c` elements:
/// restriction by precomposition, product by juxtaposition, unit the
/// empty tuple.
pub fn functions_algebra(c: usize, max_arity: usize) -> Result<CommAlgObject> {
    let carrier = representable(c, max_arity)?;
    CommAlgObject::from_fn(carrier, 0, |p, q, x, y| {
        let mut t = tuple_at(x, &vec![c; p]);
        t.extend(tuple_at(y, &vec![c; q]));
        tuple_index(&t, &vec![c; p + q])
    })
}

/// `Σ(π)` for the transport `π` of a decomposition `b: v̄ → n̄` onto its
/// block-standard form: a point in fibre `i` goes to its offset within the
/// concatenated fibres.
pub(crate) fn block_standardizer(b: &FinMap) -> FinMap {
    let (_, sigma): (_, Perm) = crate::finset::monotone_perm_factor(b);
    FinMap::new(b.dom(), sigma.images().to_vec()).expect("permutation")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn functions_algebras_pass() {
        for c in 0..=3 {
            let a = functions_algebra(c, 3).unwrap();
            let r = comm_alg_check(&a);
            assert!(r.is_ok(), "C = {c}: {r}");
        }
    }

    #[test]
    fn noncommutative_product_fails() {
        let carrier = representable(2, 2).unwrap();
        // Keep only the first factor's shape: a constant product that is not commutative.
        let a = CommAlgObject::from_fn(carrier, 0, |p, q, x, _| {
            let t = tuple_at(x, &vec![2; p]);
            let mut out = t.clone();
            out.extend(std::iter::repeat_n(0, q));
            tuple_index(&out, &vec![2; p + q])
        })
        .unwrap();
        let r = comm_alg_check(&a);
        assert!(r.failed_laws().contains(&Law::Commutativity), "{r}");
    }

    #[test]
    fn block_standardizer_sorts_stably() {
        let b = FinMap::new(2, vec![1, 0, 1, 0]).unwrap();
        assert_eq!(block_standardizer(&b).images(), &[2, 0, 3, 1]);
    }
}
