use std::collections::HashMap;
use std::fmt;

use crate::error::{capacity, Error, Result};
use crate::finset::{tuple_at, tuple_index, FinMap, Merger};
use crate::qa::presheaf::{generating_maps, FinPresheaf};
use crate::qc::TABLE_CAP;

/// A finite commutative monoid on `{0, …, size-1}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteMonoid {
    name: String,
    size: usize,
    table: Vec<usize>,
    unit: usize,
}

impl FiniteMonoid {
    /// Validates associativity, commutativity and the unit.
    pub fn new(name: impl Into<String>, size: usize, table: Vec<usize>, unit: usize) -> Result<Self> {
        if table.len() != size * size || unit >= size.max(1) || table.iter().any(|&v| v >= size) {
            return Err(Error::Domain("monoid table does not fit its carrier".into()));
        }
        let m = FiniteMonoid {
            name: name.into(),
            size,
            table,
            unit,
        };
        let els = 0..size;
        for a in els.clone() {
            if m.op(a, unit) != a {
                return Err(Error::Precondition(format!("{} is not a unit", unit + 1)));
            }
            for b in els.clone() {
                if m.op(a, b) != m.op(b, a) {
                    return Err(Error::Precondition(format!("not commutative at ({}, {})", a + 1, b + 1)));
                }
                for c in els.clone() {
                    if m.op(m.op(a, b), c) != m.op(a, m.op(b, c)) {
                        return Err(Error::Precondition(format!(
                            "not associative at ({}, {}, {})",
                            a + 1,
                            b + 1,
                            c + 1
                        )));
                    }
                }
            }
        }
        Ok(m)
    }

    fn from_op(name: String, size: usize, unit: usize, op: impl Fn(usize, usize) -> usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::Domain("a monoid needs at least one element".into()));
        }
        let table = (0..size * size).map(|i| op(i / size, i % size)).collect();
        Self::new(name, size, table, unit)
    }

    /// `ℤ/k` under addition.
    pub fn add(k: usize) -> Result<Self> {
        Self::from_op(format!("add{k}"), k, 0, |a, b| (a + b) % k)
    }

    /// `ℤ/k` under multiplication.
    pub fn mul(k: usize) -> Result<Self> {
        Self::from_op(format!("mul{k}"), k, 1 % k.max(1), |a, b| a * b % k)
    }

    /// `{0, …, k-1}` under `max`.
    pub fn max(k: usize) -> Result<Self> {
        Self::from_op(format!("max{k}"), k, 0, usize::max)
    }

    /// The product monoid, elements `(a, b)` numbered `a·|B| + b`.
    pub fn product(a: &FiniteMonoid, b: &FiniteMonoid) -> Result<Self> {
        let nb = b.size;
        Self::from_op(
            format!("{}x{}", a.name, b.name),
            a.size * nb,
            a.unit * nb + b.unit,
            |x, y| a.op(x / nb, y / nb) * nb + b.op(x % nb, y % nb),
        )
    }

    /// Parses `add<k>`, `mul<k>` or `max<k>`.
    pub fn parse(name: &str) -> Result<Self> {
        let split = name.find(|c: char| c.is_ascii_digit()).unwrap_or(name.len());
        let (kind, k) = name.split_at(split);
        let k: usize = k
            .parse()
            .map_err(|_| Error::Domain(format!("monoid `{name}`: expected add<k>, mul<k> or max<k>")))?;
        match kind {
            "add" => Self::add(k),
            "mul" => Self::mul(k),
            "max" => Self::max(k),
            _ => Err(Error::Domain(format!("unknown monoid `{name}`"))),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size + b]
    }

    /// Product of a finite family, `1` if empty.
    pub fn fold(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.unit, |acc, x| self.op(acc, x))
    }

    /// `φ_*: A^m → A^n`, multiplying along the fibres of `φ`.
    pub fn push_forward(&self, phi: &FinMap, a: &[usize]) -> Vec<usize> {
        (0..phi.cod()).map(|i| self.fold(phi.fibre(i).into_iter().map(|j| a[j]))).collect()
    }
}

impl fmt::Display for FiniteMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// A class of `Φ̄_A(P)`, represented by its least `(n, ξ, a⃗)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct QaEvalClass {
    pub degree: usize,
    pub element: usize,
    pub inputs: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct QaEvaluation {
    pub classes: Vec<QaEvalClass>,
    class_of: HashMap<QaEvalClass, usize>,
}

impl QaEvaluation {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_of(&self, degree: usize, element: usize, inputs: &[usize]) -> Option<usize> {
        self.class_of
            .get(&QaEvalClass {
                degree,
                element,
                inputs: inputs.to_vec(),
            })
            .copied()
    }
}

/// `Φ̄_A(P) = ∫^n P(n) × A^n`: pairs `(ξ, a⃗)` with
/// `(P(φ)ξ, a⃗) ~ (ξ, φ_* a⃗)`.
///
/// `P` must declare a generation bound `s ≤ N`; degrees `n ≤ s` suffice.
pub fn eval_qa(p: &FinPresheaf, a: &FiniteMonoid) -> Result<QaEvaluation> {
    let s = p.bounded_degree("evaluation").map_err(|e| match e {
        Error::Precondition(m) => Error::UnboundedEvaluation(m),
        e => e,
    })?;
    let k = a.size();
    let mut offsets = Vec::with_capacity(s + 1);
    let mut total = 0usize;
    for n in 0..=s {
        offsets.push(total);
        total = total.saturating_add(p.card(n).saturating_mul(k.saturating_pow(n as u32)));
        if total > TABLE_CAP {
            return Err(capacity("evaluation pre-quotient size", total, TABLE_CAP));
        }
    }
    let index = |n: usize, x: usize, inputs: &[usize]| offsets[n] + x * k.pow(n as u32) + tuple_index(inputs, &vec![k; n]);
    let mut merger = Merger::new(total);
    for phi in generating_maps(s) {
        let (m, n) = (phi.dom(), phi.cod());
        let table = p.restriction_table(&phi);
        for t in 0..k.pow(m as u32) {
            let inputs = tuple_at(t, &vec![k; m]);
            let pushed = a.push_forward(&phi, &inputs);
            for (x, &px) in table.iter().enumerate() {
                merger.merge(index(m, px, &inputs), index(n, x, &pushed));
            }
        }
    }
    let q = merger.finish();
    let decode = |flat: usize| {
        let n = offsets.partition_point(|&o| o <= flat) - 1;
        let local = flat - offsets[n];
        let per = k.pow(n as u32);
        QaEvalClass {
            degree: n,
            element: local / per,
            inputs: tuple_at(local % per, &vec![k; n]),
        }
    };
    let classes = q.classes.iter().map(|c| decode(c[0])).collect();
    let class_of = (0..total).map(|f| (decode(f), q.projection[f])).collect();
    Ok(QaEvaluation { classes, class_of })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qa::presheaf::{representable, terminal, unit_qa};

    #[test]
    fn monoids() {
        assert!(FiniteMonoid::new("bad", 2, vec![0, 1, 0, 0], 0).is_err());
        assert_eq!(FiniteMonoid::parse("max3").unwrap(), FiniteMonoid::max(3).unwrap());
        assert!(FiniteMonoid::parse("min3").is_err());
        let p = FiniteMonoid::product(&FiniteMonoid::add(2).unwrap(), &FiniteMonoid::mul(3).unwrap()).unwrap();
        assert_eq!((p.size(), p.unit()), (6, 1));
    }

    #[test]
    fn point_evaluates_to_the_monoid() {
        for a in [FiniteMonoid::add(3), FiniteMonoid::mul(2), FiniteMonoid::max(4)] {
            let a = a.unwrap();
            let e = eval_qa(&terminal(3).unwrap(), &a).unwrap();
            assert_eq!(e.len(), a.size());
            // The empty tuple is identified with the unit.
            assert_eq!(e.class_of(0, 0, &[]), e.class_of(1, 0, &[a.unit()]));
        }
    }

    #[test]
    fn small_cases() {
        let a = FiniteMonoid::add(2).unwrap();
        assert_eq!(eval_qa(&unit_qa(3).unwrap(), &a).unwrap().len(), 1);
        let trivial = FiniteMonoid::add(1).unwrap();
        assert_eq!(eval_qa(&representable(2, 3).unwrap(), &trivial).unwrap().len(), 1);
        // h_2 evaluates to A × A.
        assert_eq!(eval_qa(&representable(2, 3).unwrap(), &a).unwrap().len(), 4);
    }

    #[test]
    fn unbounded_is_refused() {
        let p = terminal(2).unwrap();
        let p = FinPresheaf::new(p.cards().to_vec(), p.restrictions().to_vec(), None).unwrap();
        let a = FiniteMonoid::add(2).unwrap();
        assert!(matches!(eval_qa(&p, &a), Err(Error::UnboundedEvaluation(_))));
    }
}
