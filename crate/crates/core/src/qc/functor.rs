use crate::error::{capacity, Error, Result};
use crate::finset::{compose_maps, tuple_at, tuple_index, FinMap, HARD_ARITY_CAP};
use crate::report::{cell_indices, visit, Law, LawRunner, Mode, Report};

/// A functor on finite sets determined by its values on `0̄, …, N̄`.
///
/// Elements of `F(n)` are `0..card(n)`; `map(f, x)` is `F(f)(x)`.
pub trait Finitary {
    fn max_arity(&self) -> usize;
    fn card(&self, n: usize) -> usize;
    fn map(&self, f: &FinMap, x: usize) -> usize;

    /// Human-readable name of an element.
    fn label(&self, _n: usize, x: usize) -> String {
        format!("{}", x + 1)
    }

    /// `F(f)` as a map `F(m) → F(n)`.
    fn map_table(&self, f: &FinMap) -> FinMap {
        let images = (0..self.card(f.dom())).map(|x| self.map(f, x)).collect();
        FinMap::new(self.card(f.cod()), images).expect("functor values in range")
    }
}

/// A functor stored as carrier sizes and a transition table for every map
/// `m̄ → n̄` with `m, n ≤ N`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FinFunctor {
    cards: Vec<usize>,
    /// `transitions[m][n][rank(f)·card(m) + x] = F(f)(x)`.
    transitions: Vec<Vec<Vec<u32>>>,
    labels: Option<Vec<Vec<String>>>,
}

/// Largest stored table, in entries, before a construction is refused.
pub const TABLE_CAP: usize = 1 << 26;

impl FinFunctor {
    pub fn new(cards: Vec<usize>, transitions: Vec<Vec<Vec<u32>>>) -> Result<Self> {
        let n_max = cards
            .len()
            .checked_sub(1)
            .ok_or_else(|| Error::Domain("a functor needs a value at 0".into()))?;
        if n_max > HARD_ARITY_CAP {
            return Err(capacity("max arity", n_max, HARD_ARITY_CAP));
        }
        if transitions.len() != n_max + 1 {
            return Err(Error::Format("transition rows do not match carriers".into()));
        }
        for (m, row) in transitions.iter().enumerate() {
            if row.len() != n_max + 1 {
                return Err(Error::Format("transition rows do not match carriers".into()));
            }
            for (n, table) in row.iter().enumerate() {
                let expected = FinMap::count(m, n) * cards[m];
                if table.len() != expected {
                    return Err(Error::Format(format!(
                        "transitions {m} → {n} have {} entries, expected {expected}",
                        table.len()
                    )));
                }
                if let Some(v) = table.iter().find(|&&v| v as usize >= cards[n]) {
                    return Err(Error::Format(format!(
                        "transition {m} → {n}: value {} out of range 1..={}",
                        v + 1,
                        cards[n]
                    )));
                }
            }
        }
        Ok(FinFunctor {
            cards,
            transitions,
            labels: None,
        })
    }

    /// Tabulates any finitary functor up to arity `n_max`.
    pub fn tabulate(f: &impl Finitary, n_max: usize) -> Result<Self> {
        if n_max > f.max_arity() {
            return Err(capacity("max arity", n_max, f.max_arity()));
        }
        let cards: Vec<usize> = (0..=n_max).map(|n| f.card(n)).collect();
        let entries: usize = (0..=n_max)
            .flat_map(|m| (0..=n_max).map(move |n| (m, n)))
            .map(|(m, n)| FinMap::count(m, n).saturating_mul(cards[m]))
            .sum();
        if entries > TABLE_CAP {
            return Err(capacity("transition table entries", entries, TABLE_CAP));
        }
        let transitions = (0..=n_max)
            .map(|m| {
                (0..=n_max)
                    .map(|n| {
                        FinMap::all(m, n)
                            .flat_map(|g| f.map_table(&g).images().to_vec())
                            .map(|v| v as u32)
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let labels = (0..=n_max)
            .map(|n| (0..cards[n]).map(|x| f.label(n, x)).collect())
            .collect();
        let mut out = Self::new(cards, transitions)?;
        out.labels = Some(labels);
        Ok(out)
    }

    pub fn cards(&self) -> &[usize] {
        &self.cards
    }

    pub fn transitions(&self) -> &[Vec<Vec<u32>>] {
        &self.transitions
    }

    pub fn set_transition(&mut self, f: &FinMap, x: usize, value: usize) {
        let cm = self.cards[f.dom()];
        self.transitions[f.dom()][f.cod()][f.rank() * cm + x] = value as u32;
    }

    pub fn labels(&self) -> Option<&[Vec<String>]> {
        self.labels.as_deref()
    }

    pub fn with_labels(mut self, labels: Vec<Vec<String>>) -> Self {
        self.labels = Some(labels);
        self
    }
}

impl Finitary for FinFunctor {
    fn max_arity(&self) -> usize {
        self.cards.len() - 1
    }

    fn card(&self, n: usize) -> usize {
        self.cards[n]
    }

    fn map(&self, f: &FinMap, x: usize) -> usize {
        let cm = self.cards[f.dom()];
        self.transitions[f.dom()][f.cod()][f.rank() * cm + x] as usize
    }

    fn label(&self, n: usize, x: usize) -> String {
        match &self.labels {
            Some(l) => l[n][x].clone(),
            None => format!("{}", x + 1),
        }
    }
}

/// Checks `F(id) = id` and `F(g∘f) = F(g)∘F(f)` over all maps within bound.
pub fn validate_functor(f: &impl Finitary) -> Report {
    let mut run = LawRunner::new("functor", Mode::AllLaws);
    functor_laws(f, &mut run);
    run.finish()
}

pub(crate) fn functor_laws(f: &impl Finitary, run: &mut LawRunner) {
    let n_max = f.max_arity();
    run.law(Law::FunctorIdentity, |visit| {
        for n in 0..=n_max {
            let id = FinMap::identity(n);
            for x in 0..f.card(n) {
                visit!(visit, f.map(&id, x) == x, format!("F(id_{n})"), vec![x]);
            }
        }
    });
    let mut sampled = false;
    run.law(Law::FunctorComposition, |visit| {
        for l in 0..=n_max {
            for m in 0..=n_max {
                for n in 0..=n_max {
                    let (nf, ng) = (FinMap::count(l, m), FinMap::count(m, n));
                    let radices = [nf, ng, f.card(l)];
                    let (indices, s) = cell_indices(nf * ng * f.card(l));
                    sampled |= s;
                    for i in indices {
                        let t = tuple_at(i, &radices);
                        let (a, b, x) = (FinMap::unrank(l, m, t[0]), FinMap::unrank(m, n, t[1]), t[2]);
                        let gf = compose_maps(&a, &b).expect("composable");
                        let ok = f.map(&gf, x) == f.map(&b, f.map(&a, x));
                        visit!(visit, ok, format!("f = {a}, g = {b}"), vec![x]);
                    }
                }
            }
        }
    });
    if sampled {
        run.notice("functor composition was sampled in cells exceeding the instance budget");
    }
}

/// `F(X)` for `X = {0, …, k-1}`: the carrier `F(k)` transported along the
/// order bijection `X ≅ k̄`, with element names.
pub fn eval(f: &impl Finitary, set_size: usize) -> Result<Vec<String>> {
    if set_size > f.max_arity() {
        return Err(capacity("evaluation set size", set_size, f.max_arity()));
    }
    Ok((0..f.card(set_size)).map(|x| f.label(set_size, x)).collect())
}

/// `(F∘G)(n) = F(G(n))` with transitions `F(G(f))`, tabulated up to `G`'s
/// bound.
pub fn compose(f: &impl Finitary, g: &impl Finitary) -> Result<FinFunctor> {
    let n_max = g.max_arity();
    for n in 0..=n_max {
        if g.card(n) > f.max_arity() {
            return Err(capacity(
                format!("|G({n})| for the outer functor"),
                g.card(n),
                f.max_arity(),
            ));
        }
    }
    FinFunctor::tabulate(&Composed { f, g }, n_max)
}

struct Composed<'a, F, G> {
    f: &'a F,
    g: &'a G,
}

impl<F: Finitary, G: Finitary> Finitary for Composed<'_, F, G> {
    fn max_arity(&self) -> usize {
        self.g.max_arity()
    }

    fn card(&self, n: usize) -> usize {
        self.f.card(self.g.card(n))
    }

    fn map(&self, h: &FinMap, x: usize) -> usize {
        self.f.map(&self.g.map_table(h), x)
    }

    fn map_table(&self, h: &FinMap) -> FinMap {
        self.f.map_table(&self.g.map_table(h))
    }

    fn label(&self, n: usize, x: usize) -> String {
        self.f.label(self.g.card(n), x)
    }
}

/// The tensor product of `q_c`, computed pointwise: `(F×G)(n) = F(n)×G(n)`.
pub fn product(f: &impl Finitary, g: &impl Finitary) -> Result<FinFunctor> {
    let n_max = f.max_arity().min(g.max_arity());
    FinFunctor::tabulate(&Product { f, g }, n_max)
}

struct Product<'a, F, G> {
    f: &'a F,
    g: &'a G,
}

impl<F: Finitary, G: Finitary> Finitary for Product<'_, F, G> {
    fn max_arity(&self) -> usize {
        self.f.max_arity().min(self.g.max_arity())
    }

    fn card(&self, n: usize) -> usize {
        self.f.card(n) * self.g.card(n)
    }

    fn map(&self, h: &FinMap, x: usize) -> usize {
        let (gm, gn) = (self.g.card(h.dom()), self.g.card(h.cod()));
        self.f.map(h, x / gm) * gn + self.g.map(h, x % gm)
    }

    fn label(&self, n: usize, x: usize) -> String {
        let gn = self.g.card(n);
        format!("({}, {})", self.f.label(n, x / gn), self.g.label(n, x % gn))
    }
}

/// The closed-form functors of the corpus, at any bound.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Formula {
    /// `n ↦ n̄`.
    Identity,
    /// `n ↦ n̄ ⊔ {*}`, with `*` last.
    Pointed,
    /// `n ↦ 2^n̄` as bit masks.
    Powerset,
    /// `n ↦ n̄^k`, tuples in mixed radix.
    Hom(usize),
}

/// A [`Formula`] functor together with the bound it is defined up to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct FormulaFunctor {
    pub formula: Formula,
    pub bound: usize,
}

impl FormulaFunctor {
    pub fn new(formula: Formula, bound: usize) -> Self {
        FormulaFunctor { formula, bound }
    }
}

impl Finitary for FormulaFunctor {
    fn max_arity(&self) -> usize {
        self.bound
    }

    fn card(&self, n: usize) -> usize {
        match self.formula {
            Formula::Identity => n,
            Formula::Pointed => n + 1,
            Formula::Powerset => 1 << n,
            Formula::Hom(k) => n.pow(k as u32),
        }
    }

    fn map(&self, f: &FinMap, x: usize) -> usize {
        match self.formula {
            Formula::Identity => f.apply(x),
            Formula::Pointed if x == f.dom() => f.cod(),
            Formula::Pointed => f.apply(x),
            Formula::Powerset => (0..f.dom())
                .filter(|i| x >> i & 1 == 1)
                .fold(0, |acc, i| acc | 1 << f.apply(i)),
            Formula::Hom(k) => {
                let t = tuple_at(x, &vec![f.dom(); k]);
                let u: Vec<usize> = t.iter().map(|&i| f.apply(i)).collect();
                tuple_index(&u, &vec![f.cod(); k])
            }
        }
    }

    fn label(&self, n: usize, x: usize) -> String {
        match self.formula {
            Formula::Identity => format!("{}", x + 1),
            Formula::Pointed if x == n => "*".into(),
            Formula::Pointed => format!("{}", x + 1),
            Formula::Powerset => {
                let items: Vec<String> =
                    (0..n).filter(|i| x >> i & 1 == 1).map(|i| (i + 1).to_string()).collect();
                format!("{{{}}}", items.join(","))
            }
            Formula::Hom(k) => {
                let t = tuple_at(x, &vec![n; k]);
                let items: Vec<String> = t.iter().map(|i| (i + 1).to_string()).collect();
                format!("({})", items.join(","))
            }
        }
    }
}
