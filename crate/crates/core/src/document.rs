//! The JSON interchange format.
//!
//! A document carries `format_version`, `calculus`, `kind` and `max_arity`,
//! followed by the table sections of its kind. Every element index is
//! 1-based; table layouts are those of the in-memory structures (permutations
//! by lexicographic rank, maps `m̄ → n̄` by rank, tuples in mixed radix with
//! the first entry most significant). Output is compact JSON with sorted keys
//! and a trailing newline, which makes it canonical: printing a parsed
//! canonical document reproduces it byte for byte.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finset::{Composition, GSet};
use crate::qa::{CommAlgObject, FinPresheaf, QaAlgebrad};
use crate::qc::{AlgebraicMonad, FinFunctor, SigmaModule};
use crate::qo::{Operad, OperadAlgebra, SymSeq};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Calculus {
    Qo,
    Qc,
    Qa,
}

impl fmt::Display for Calculus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Calculus::Qo => "qo",
            Calculus::Qc => "qc",
            Calculus::Qa => "qa",
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Symseq,
    Operad,
    Algebra,
    Functor,
    Monad,
    Module,
    Presheaf,
    CommAlg,
    Algebrad,
}

impl Kind {
    pub fn calculus(self) -> Calculus {
        match self {
            Kind::Symseq | Kind::Operad | Kind::Algebra => Calculus::Qo,
            Kind::Functor | Kind::Monad | Kind::Module => Calculus::Qc,
            Kind::Presheaf | Kind::CommAlg | Kind::Algebrad => Calculus::Qa,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = serde_json::to_value(self).expect("kind serializes");
        f.write_str(v.as_str().unwrap_or("?"))
    }
}

/// Any structure the format can carry.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Structure {
    Symseq(SymSeq),
    Operad(Operad),
    Algebra(OperadAlgebra),
    Functor(FinFunctor),
    Monad(AlgebraicMonad),
    Module(SigmaModule),
    Presheaf(FinPresheaf),
    CommAlg(CommAlgObject),
    Algebrad(QaAlgebrad),
}

impl Structure {
    pub fn kind(&self) -> Kind {
        match self {
            Structure::Symseq(_) => Kind::Symseq,
            Structure::Operad(_) => Kind::Operad,
            Structure::Algebra(_) => Kind::Algebra,
            Structure::Functor(_) => Kind::Functor,
            Structure::Monad(_) => Kind::Monad,
            Structure::Module(_) => Kind::Module,
            Structure::Presheaf(_) => Kind::Presheaf,
            Structure::CommAlg(_) => Kind::CommAlg,
            Structure::Algebrad(_) => Kind::Algebrad,
        }
    }

    pub fn calculus(&self) -> Calculus {
        self.kind().calculus()
    }

    pub fn max_arity(&self) -> usize {
        use crate::qc::Finitary;
        match self {
            Structure::Symseq(s) => s.max_arity(),
            Structure::Operad(o) => o.max_arity(),
            Structure::Algebra(a) => a.operad().max_arity(),
            Structure::Functor(f) => f.max_arity(),
            Structure::Monad(m) => m.max_arity(),
            Structure::Module(m) => m.monad().max_arity(),
            Structure::Presheaf(p) => p.max_arity(),
            Structure::CommAlg(a) => a.max_arity(),
            Structure::Algebrad(a) => a.max_arity(),
        }
    }

    /// Carrier cardinalities by arity (for modules and algebras, the
    /// cardinality of the underlying set, once).
    pub fn cards(&self) -> Vec<usize> {
        match self {
            Structure::Symseq(s) => s.sizes(),
            Structure::Operad(o) => o.carrier().sizes(),
            Structure::Algebra(a) => vec![a.size()],
            Structure::Functor(f) => f.cards().to_vec(),
            Structure::Monad(m) => m.functor().cards().to_vec(),
            Structure::Module(m) => vec![m.size()],
            Structure::Presheaf(p) => p.cards().to_vec(),
            Structure::CommAlg(a) => a.carrier().cards().to_vec(),
            Structure::Algebrad(a) => a.algebra().carrier().cards().to_vec(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Carrier {
    size: usize,
    /// `action[x][rank(σ)] = x·σ`.
    action: Vec<Vec<u32>>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ShapedTable {
    parts: Vec<usize>,
    table: Vec<u32>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum Substitutions {
    /// One table per substitution shape (operads and algebrads).
    Shaped(Vec<ShapedTable>),
    /// `[p][n]` tables (algebraic monads).
    Graded(Vec<Vec<Vec<u32>>>),
}

/// The serialized form. Sections absent from a kind are omitted.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    format_version: u32,
    calculus: Option<Calculus>,
    kind: Option<Kind>,
    max_arity: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    carriers: Option<Vec<Carrier>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    support_bound: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cards: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    transitions: Option<Vec<Vec<Vec<u32>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    restrictions: Option<Vec<Vec<Vec<u32>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    generation_bound: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    multiplication: Option<Vec<Vec<Vec<u32>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    multiplication_unit: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    unit: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    substitutions: Option<Substitutions>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    operad: Option<Box<Document>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    monad: Option<Box<Document>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    action: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    actions: Option<Vec<Vec<Option<u32>>>>,
}

fn up(t: &[u32]) -> Vec<u32> {
    t.iter().map(|v| v + 1).collect()
}

fn up3(t: &[Vec<Vec<u32>>]) -> Vec<Vec<Vec<u32>>> {
    t.iter().map(|r| r.iter().map(|x| up(x)).collect()).collect()
}

fn down(t: Vec<u32>, what: &str) -> Result<Vec<u32>> {
    t.into_iter()
        .map(|v| v.checked_sub(1).ok_or_else(|| Error::Format(format!("{what}: index 0, indices are 1-based"))))
        .collect()
}

fn down3(t: Vec<Vec<Vec<u32>>>, what: &str) -> Result<Vec<Vec<Vec<u32>>>> {
    t.into_iter()
        .map(|r| r.into_iter().map(|x| down(x, what)).collect())
        .collect()
}

fn down1(v: usize, what: &str) -> Result<usize> {
    v.checked_sub(1)
        .ok_or_else(|| Error::Format(format!("{what}: index 0, indices are 1-based")))
}

fn shaped(subs: &BTreeMap<Composition, Vec<u32>>) -> Substitutions {
    Substitutions::Shaped(
        subs.iter()
            .map(|(p, t)| ShapedTable {
                parts: p.parts().to_vec(),
                table: up(t),
            })
            .collect(),
    )
}

fn header(kind: Kind, max_arity: usize) -> Document {
    Document {
        format_version: FORMAT_VERSION,
        calculus: Some(kind.calculus()),
        kind: Some(kind),
        max_arity,
        ..Default::default()
    }
}

fn symseq_doc(d: &mut Document, s: &SymSeq) {
    d.carriers = Some(
        s.carriers()
            .iter()
            .map(|c| Carrier {
                size: c.size(),
                action: (0..c.size()).map(|x| up(c.row(x))).collect(),
            })
            .collect(),
    );
    d.support_bound = s.support_bound();
}

fn functor_doc(d: &mut Document, f: &FinFunctor) {
    d.cards = Some(f.cards().to_vec());
    d.transitions = Some(up3(f.transitions()));
    d.labels = f.labels().map(<[_]>::to_vec);
}

fn presheaf_doc(d: &mut Document, p: &FinPresheaf) {
    d.cards = Some(p.cards().to_vec());
    d.restrictions = Some(up3(p.restrictions()));
    d.generation_bound = p.generation_bound();
    d.labels = p.labels().map(<[_]>::to_vec);
}

fn comm_alg_doc(d: &mut Document, a: &CommAlgObject) {
    presheaf_doc(d, a.carrier());
    d.multiplication = Some(up3(a.mult_tables()));
    d.multiplication_unit = Some(a.unit() + 1);
}

fn to_document(s: &Structure) -> Document {
    let mut d = header(s.kind(), s.max_arity());
    match s {
        Structure::Symseq(x) => symseq_doc(&mut d, x),
        Structure::Operad(o) => {
            symseq_doc(&mut d, o.carrier());
            d.unit = Some(o.unit() + 1);
            d.substitutions = Some(shaped(o.subs()));
        }
        Structure::Algebra(a) => {
            d.operad = Some(Box::new(to_document(&Structure::Operad(a.operad().clone()))));
            d.size = Some(a.size());
            d.actions = Some(
                a.actions()
                    .iter()
                    .map(|t| t.iter().map(|v| v.map(|v| v + 1)).collect())
                    .collect(),
            );
        }
        Structure::Functor(f) => functor_doc(&mut d, f),
        Structure::Monad(m) => {
            functor_doc(&mut d, m.functor());
            d.unit = Some(m.unit() + 1);
            d.substitutions = Some(Substitutions::Graded(up3(m.subs())));
        }
        Structure::Module(m) => {
            d.monad = Some(Box::new(to_document(&Structure::Monad(m.monad().clone()))));
            d.size = Some(m.size());
            d.action = Some(up(m.action()));
        }
        Structure::Presheaf(p) => presheaf_doc(&mut d, p),
        Structure::CommAlg(a) => comm_alg_doc(&mut d, a),
        Structure::Algebrad(a) => {
            comm_alg_doc(&mut d, a.algebra());
            d.unit = Some(a.unit() + 1);
            d.substitutions = Some(shaped(a.subs()));
        }
    }
    d
}

/// Canonical serialization: sorted keys, compact, newline-terminated.
pub fn to_json(s: &Structure) -> String {
    // `Value` maps are ordered by key, which canonicalizes the field order.
    let v = serde_json::to_value(to_document(s)).expect("documents serialize");
    let mut out = v.to_string();
    out.push('\n');
    out
}

fn need<T>(v: Option<T>, kind: Kind, section: &str) -> Result<T> {
    v.ok_or_else(|| Error::Format(format!("a {kind} document needs a `{section}` section")))
}

fn read_symseq(d: &mut Document, kind: Kind) -> Result<SymSeq> {
    let carriers = need(d.carriers.take(), kind, "carriers")?;
    let gsets = carriers
        .into_iter()
        .enumerate()
        .map(|(n, c)| {
            if c.action.len() != c.size {
                return Err(Error::Format(format!(
                    "carrier of arity {n}: {} action rows for {} elements",
                    c.action.len(),
                    c.size
                )));
            }
            let table = down(c.action.concat(), "action")?;
            GSet::from_table(n, c.size, table)
        })
        .collect::<Result<_>>()?;
    SymSeq::new(gsets, d.support_bound.take())
}

fn read_shaped(d: &mut Document, kind: Kind) -> Result<BTreeMap<Composition, Vec<u32>>> {
    match need(d.substitutions.take(), kind, "substitutions")? {
        Substitutions::Shaped(ts) => {
            let mut out = BTreeMap::new();
            for t in ts {
                let p = Composition::new(t.parts);
                let table = down(t.table, "substitution table")?;
                if out.insert(p.clone(), table).is_some() {
                    return Err(Error::Format(format!("duplicate substitution table for {p}")));
                }
            }
            Ok(out)
        }
        Substitutions::Graded(_) => Err(Error::Format(format!(
            "a {kind} document lists substitutions by shape, as {{parts, table}} objects"
        ))),
    }
}

fn read_functor(d: &mut Document, kind: Kind) -> Result<FinFunctor> {
    let cards = need(d.cards.take(), kind, "cards")?;
    let transitions = down3(need(d.transitions.take(), kind, "transitions")?, "transition")?;
    let f = FinFunctor::new(cards, transitions)?;
    Ok(match d.labels.take() {
        Some(l) => f.with_labels(l),
        None => f,
    })
}

fn read_presheaf(d: &mut Document, kind: Kind) -> Result<FinPresheaf> {
    let cards = need(d.cards.take(), kind, "cards")?;
    let restrictions = down3(need(d.restrictions.take(), kind, "restrictions")?, "restriction")?;
    let p = FinPresheaf::new(cards, restrictions, d.generation_bound.take())?;
    Ok(match d.labels.take() {
        Some(l) => p.with_labels(l),
        None => p,
    })
}

fn read_comm_alg(d: &mut Document, kind: Kind) -> Result<CommAlgObject> {
    let p = read_presheaf(d, kind)?;
    let mult = down3(need(d.multiplication.take(), kind, "multiplication")?, "multiplication")?;
    let unit = down1(need(d.multiplication_unit.take(), kind, "multiplication_unit")?, "multiplication_unit")?;
    CommAlgObject::new(p, mult, unit)
}

fn from_document(mut d: Document) -> Result<Structure> {
    if d.format_version != FORMAT_VERSION {
        return Err(Error::Format(format!(
            "format version {} is not supported (expected {FORMAT_VERSION})",
            d.format_version
        )));
    }
    let kind = d.kind.take().ok_or_else(|| Error::Format("missing `kind`".into()))?;
    if let Some(c) = d.calculus.take() {
        if c != kind.calculus() {
            return Err(Error::Format(format!("a {kind} belongs to {}, not {c}", kind.calculus())));
        }
    }
    let max_arity = d.max_arity;
    let s = match kind {
        Kind::Symseq => Structure::Symseq(read_symseq(&mut d, kind)?),
        Kind::Operad => {
            let carrier = read_symseq(&mut d, kind)?;
            let unit = down1(need(d.unit.take(), kind, "unit")?, "unit")?;
            Structure::Operad(Operad::new(carrier, unit, read_shaped(&mut d, kind)?)?)
        }
        Kind::Algebra => {
            let Structure::Operad(o) = from_document(*need(d.operad.take(), kind, "operad")?)? else {
                return Err(Error::Format("the `operad` section must be an operad".into()));
            };
            let size = need(d.size.take(), kind, "size")?;
            let actions = need(d.actions.take(), kind, "actions")?
                .into_iter()
                .map(|t| {
                    t.into_iter()
                        .map(|v| v.map(|v| down1(v as usize, "action").map(|v| v as u32)).transpose())
                        .collect()
                })
                .collect::<Result<_>>()?;
            Structure::Algebra(OperadAlgebra::new(o, size, actions)?)
        }
        Kind::Functor => Structure::Functor(read_functor(&mut d, kind)?),
        Kind::Monad => {
            let f = read_functor(&mut d, kind)?;
            let unit = down1(need(d.unit.take(), kind, "unit")?, "unit")?;
            let subs = match need(d.substitutions.take(), kind, "substitutions")? {
                Substitutions::Graded(t) => down3(t, "substitution table")?,
                Substitutions::Shaped(_) => {
                    return Err(Error::Format("a monad document lists substitutions as [p][n] tables".into()))
                }
            };
            Structure::Monad(AlgebraicMonad::new(f, unit, subs)?)
        }
        Kind::Module => {
            let Structure::Monad(m) = from_document(*need(d.monad.take(), kind, "monad")?)? else {
                return Err(Error::Format("the `monad` section must be a monad".into()));
            };
            let size = need(d.size.take(), kind, "size")?;
            let action = down(need(d.action.take(), kind, "action")?, "action")?;
            Structure::Module(SigmaModule::new(m, size, action)?)
        }
        Kind::Presheaf => Structure::Presheaf(read_presheaf(&mut d, kind)?),
        Kind::CommAlg => Structure::CommAlg(read_comm_alg(&mut d, kind)?),
        Kind::Algebrad => {
            let a = read_comm_alg(&mut d, kind)?;
            let unit = down1(need(d.unit.take(), kind, "unit")?, "unit")?;
            Structure::Algebrad(QaAlgebrad::new(a, unit, read_shaped(&mut d, kind)?)?)
        }
    };
    // Anything left over belongs to another kind.
    let rest = Document {
        format_version: d.format_version,
        max_arity: d.max_arity,
        ..Default::default()
    };
    if d != rest {
        let v = serde_json::to_value(&d).expect("documents serialize");
        let extra: Vec<&str> = v
            .as_object()
            .into_iter()
            .flat_map(|m| m.iter())
            .filter(|(k, v)| !v.is_null() && *k != "format_version" && *k != "max_arity")
            .map(|(k, _)| k.as_str())
            .collect();
        return Err(Error::Format(format!("sections {extra:?} do not belong to a {kind}")));
    }
    if s.max_arity() != max_arity {
        return Err(Error::Format(format!(
            "max_arity says {max_arity} but the tables reach arity {}",
            s.max_arity()
        )));
    }
    Ok(s)
}

/// Parses a document and rebuilds its structure. Shapes and index ranges
/// are checked here; law checks are left to the caller.
pub fn from_json(text: &str) -> Result<Structure> {
    let d: Document = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    from_document(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qa::{functions_algebrad, FiniteMonoid};
    use crate::qc::{formula_monad, free_module, Formula};

    #[test]
    fn round_trips() {
        let m = formula_monad(Formula::Pointed, 2).unwrap();
        let samples = [
            Structure::Monad(m.clone()),
            Structure::Module(free_module(&m, 1).unwrap()),
            Structure::Algebrad(functions_algebrad(&FiniteMonoid::add(2).unwrap(), 2).unwrap()),
            Structure::Symseq(crate::qo::representable(2, 3).unwrap()),
        ];
        for s in samples {
            let text = to_json(&s);
            assert!(text.ends_with("}\n"));
            let back = from_json(&text).unwrap();
            assert_eq!(back, s);
            assert_eq!(to_json(&back), text);
        }
    }

    #[test]
    fn indices_are_one_based() {
        let text = to_json(&Structure::Symseq(crate::qo::unit_comp(1).unwrap()));
        assert_eq!(
            text,
            "{\"calculus\":\"qo\",\"carriers\":[{\"action\":[],\"size\":0},{\"action\":[[1]],\"size\":1}],\
             \"format_version\":1,\"kind\":\"symseq\",\"max_arity\":1,\"support_bound\":1}\n"
        );
        assert!(from_json(&text.replace("[[1]]", "[[0]]")).is_err());
    }

    #[test]
    fn foreign_sections_are_rejected() {
        let text = to_json(&Structure::Symseq(crate::qo::unit_comp(1).unwrap()));
        let bad = text.replacen('{', "{\"unit\":1,", 1);
        assert!(matches!(from_json(&bad), Err(Error::Format(_))));
    }
}
