use crate::error::{Error, Result};
use crate::finset::{symmetric_group, tuple_index, tuples, Composition};
use crate::qo::operad::{substitution_shapes, Operad};
use crate::qo::symseq::{eval, Evaluation};
use crate::report::{visit, Law, LawRunner, Mode, Report};

/// An algebra over an operad: a finite set `X = {0, …, k-1}` with actions
/// `a_n: Σ_n × Xⁿ → X`.
///
/// An entry may be absent (`None`) when the value lies outside the
/// truncation, as happens for free algebras; checks skip such instances.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OperadAlgebra {
    operad: Operad,
    size: usize,
    /// `actions[n][x·kⁿ + index(y⃗)]`.
    actions: Vec<Vec<Option<u32>>>,
}

impl OperadAlgebra {
    pub fn new(operad: Operad, size: usize, actions: Vec<Vec<Option<u32>>>) -> Result<Self> {
        let n_max = operad.max_arity();
        if actions.len() != n_max + 1 {
            return Err(Error::Format(format!(
                "expected action tables for arities 0..={n_max}, got {}",
                actions.len()
            )));
        }
        for (n, table) in actions.iter().enumerate() {
            let expected = operad.carrier().carrier(n).size() * size.pow(n as u32);
            if table.len() != expected {
                return Err(Error::Format(format!(
                    "action table for arity {n} has {} entries, expected {expected}",
                    table.len()
                )));
            }
            if let Some(v) = table.iter().flatten().find(|&&v| v as usize >= size) {
                return Err(Error::Format(format!(
                    "action value {} out of range 1..={size}",
                    v + 1
                )));
            }
        }
        Ok(OperadAlgebra {
            operad,
            size,
            actions,
        })
    }

    pub fn from_fn(
        operad: Operad,
        size: usize,
        act: impl Fn(usize, usize, &[usize]) -> Option<usize>,
    ) -> Result<Self> {
        let actions = (0..=operad.max_arity())
            .map(|n| {
                let mut radices = vec![operad.carrier().carrier(n).size()];
                radices.extend(std::iter::repeat_n(size, n));
                tuples(&radices)
                    .iter()
                    .map(|t| act(n, t[0], &t[1..]).map(|v| v as u32))
                    .collect()
            })
            .collect();
        Self::new(operad, size, actions)
    }

    /// The one-point algebra.
    pub fn terminal(operad: Operad) -> Result<Self> {
        Self::from_fn(operad, 1, |_, _, _| Some(0))
    }

    pub fn operad(&self) -> &Operad {
        &self.operad
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn actions(&self) -> &[Vec<Option<u32>>] {
        &self.actions
    }

    pub fn act(&self, x: usize, inputs: &[usize]) -> Option<usize> {
        let n = inputs.len();
        let idx = x * self.size.pow(n as u32) + tuple_index(inputs, &vec![self.size; n]);
        self.actions[n][idx].map(|v| v as usize)
    }

    pub fn set_entry(&mut self, arity: usize, index: usize, value: Option<usize>) {
        self.actions[arity][index] = value.map(|v| v as u32);
    }

    pub fn is_partial(&self) -> bool {
        self.actions.iter().flatten().any(Option::is_none)
    }
}

pub fn algebra_check(a: &OperadAlgebra) -> Report {
    algebra_check_with(a, Mode::AllLaws)
}

/// Checks invariance under the diagonal action, the unit law and
/// associativity of the action, skipping instances outside the truncation.
pub fn algebra_check_with(a: &OperadAlgebra, mode: Mode) -> Report {
    let mut run = LawRunner::new("operad algebra", mode);
    let o = a.operad();
    let n_max = o.max_arity();
    let k = a.size();
    let sigma = |n: usize| o.carrier().carrier(n);

    run.law(Law::Equivariance, |visit| {
        for n in 0..=n_max {
            let g = symmetric_group(n).expect("within cap");
            for x in 0..sigma(n).size() {
                for y in tuples(&vec![k; n]) {
                    for s in g.generators() {
                        let lhs = a.act(sigma(n).act(x, s), &g.element(s).permute(&y));
                        let rhs = a.act(x, &y);
                        if lhs.is_none() || rhs.is_none() {
                            continue;
                        }
                        let mut w = vec![x];
                        w.extend(&y);
                        visit!(visit, lhs == rhs, format!("a_{n}(x·σ, y∘σ) with σ = {}", g.element(s)), w);
                    }
                }
            }
        }
    });
    run.law(Law::ModuleUnit, |visit| {
        for z in 0..k {
            let got = a.act(o.unit(), &[z]);
            if got.is_none() {
                continue;
            }
            visit!(visit, got == Some(z), "a_1(ε, z)".to_string(), vec![z]);
        }
    });
    let mut partial = false;
    run.law(Law::ModuleAssociativity, |visit| {
        for parts in substitution_shapes(n_max) {
            let total = parts.total();
            let offsets = parts.offsets();
            let mut radices = o.radices(&parts);
            radices.extend(std::iter::repeat_n(k, total));
            let s = parts.len();
            for t in tuples(&radices) {
                let (x, rest) = (t[0], &t[1..]);
                let (ys, zs) = rest.split_at(s);
                let lhs = a.act(o.substitute(&parts, x, ys), zs);
                let inner: Option<Vec<usize>> = ys
                    .iter()
                    .zip(parts.parts().iter().zip(&offsets))
                    .map(|(&y, (&p, &off))| a.act(y, &zs[off..off + p]))
                    .collect();
                let rhs = inner.and_then(|v| a.act(x, &v));
                if lhs.is_none() || rhs.is_none() {
                    partial = true;
                    continue;
                }
                visit!(visit, lhs == rhs, format!("a(μ_{parts}(x; y⃗), z⃗)"), t.clone());
            }
        }
    });
    if partial || a.is_partial() {
        run.notice("the action is partial at the truncation; instances leaving it were skipped");
    }
    run.finish()
}

/// The free algebra `Φ̄_S(Σ) = ⊔_n (Σ_n × Sⁿ)/S_n`, acting by substitution.
///
/// Substituting classes of arities `p_1, …, p_n` lands in arity `Σp_i`;
/// beyond the truncation the action is left undefined.
pub fn free_algebra(o: &Operad, set_size: usize) -> Result<(OperadAlgebra, Evaluation)> {
    let ev = eval(o.carrier(), set_size)?;
    let n_max = o.max_arity();
    let classes = ev.classes.clone();
    let alg = OperadAlgebra::from_fn(o.clone(), ev.len(), |n, x, inputs| {
        let parts = Composition::new(inputs.iter().map(|&c| classes[c].arity).collect());
        if parts.total() > n_max {
            return None;
        }
        let ys: Vec<usize> = inputs.iter().map(|&c| classes[c].operation).collect();
        let zs: Vec<usize> = inputs
            .iter()
            .flat_map(|&c| classes[c].inputs.iter().copied())
            .collect();
        debug_assert_eq!(parts.len(), n);
        let op = o.substitute(&parts, x, &ys);
        ev.class_of(parts.total(), op, &zs)
    })?;
    Ok((alg, ev))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::GSet;
    use crate::qo::symseq::SymSeq;

    fn com_pos(n: usize) -> Operad {
        let carriers = (0..=n)
            .map(|k| GSet::trivial(k, usize::from(k > 0)))
            .collect::<Result<_>>()
            .unwrap();
        Operad::from_fn(SymSeq::new(carriers, None).unwrap(), 0, |_, _, _| 0).unwrap()
    }

    #[test]
    fn terminal_algebra_passes() {
        let a = OperadAlgebra::terminal(com_pos(3)).unwrap();
        assert!(algebra_check(&a).is_ok());
    }

    #[test]
    fn free_com_pos_on_a_point() {
        let (a, ev) = free_algebra(&com_pos(3), 1).unwrap();
        assert_eq!(ev.len(), 3);
        let r = algebra_check(&a);
        assert!(r.is_ok(), "{r}");
        assert!(!r.notices.is_empty());
    }

    #[test]
    fn mutated_action_fails() {
        let (mut a, _) = free_algebra(&com_pos(2), 2).unwrap();
        // a_1(ε, z_0) := z_1
        a.set_entry(1, 0, Some(1));
        assert!(!algebra_check(&a).is_ok());
    }
}
