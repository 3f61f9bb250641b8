//! Exhaustive re-derivations of every checker's verdict by raw enumeration.
//!
//! Laws are visited in the same order as the corresponding checker, so the
//! first failed law of a broken structure can be compared directly. Nothing
//! is sampled and symmetric-group laws range over whole groups rather than
//! generators.

use crate::finset::{symmetric_group, tuple_at, Composition, FinMap, Merger, Perm};
use crate::qa::{CommAlgObject, FinPresheaf, QaAlgebrad};
use crate::qc::{AlgebraicMonad, Finitary, SigmaModule};
use crate::qo::{Operad, SymSeq};
use crate::report::{visit, Law, LawRunner, Mode, Report};

/// Visits every tuple of a mixed-radix space.
fn each_tuple(radices: &[usize], mut f: impl FnMut(Vec<usize>) -> bool) {
    let total: usize = radices.iter().product();
    for i in 0..total {
        if !f(tuple_at(i, radices)) {
            return;
        }
    }
}

/// Compositions of any total `≤ n_max` into exactly `len` parts.
fn compositions(len: usize, n_max: usize) -> Vec<Composition> {
    (0..=n_max).flat_map(|t| Composition::enumerate(t, len, 0)).collect()
}

fn action_laws(seq: &SymSeq, run: &mut LawRunner) {
    run.law(Law::ActionIdentity, |visit| {
        for (n, c) in seq.carriers().iter().enumerate() {
            let id = Perm::identity(n).rank();
            for x in 0..c.size() {
                visit!(visit, c.act(x, id) == x, format!("arity {n}"), vec![x]);
            }
        }
    });
    run.law(Law::ActionCompatibility, |visit| {
        for (n, c) in seq.carriers().iter().enumerate() {
            let perms: Vec<Perm> = Perm::all(n).collect();
            for x in 0..c.size() {
                for s in &perms {
                    for t in &perms {
                        let ok = c.act(c.act(x, s.rank()), t.rank()) == c.act(x, s.mul(t).rank());
                        visit!(visit, ok, format!("arity {n}, σ = {s}, τ = {t}"), vec![x]);
                    }
                }
            }
        }
    });
}

/// Oracle for [`crate::qo::operad_check_with`].
pub fn operad_oracle(o: &Operad, mode: Mode) -> Report {
    let mut run = LawRunner::new("operad (oracle)", mode);
    action_laws(o.carrier(), &mut run);
    let n_max = o.max_arity();
    let c = |n: usize| o.carrier().carrier(n);
    let shapes: Vec<Composition> = (0..=n_max).flat_map(|s| compositions(s, n_max)).collect();

    run.law(Law::LeftUnit, |visit| {
        for n in 0..=n_max {
            let parts = Composition::new(vec![n]);
            for y in 0..c(n).size() {
                visit!(visit, o.substitute(&parts, o.unit(), &[y]) == y, format!("arity {n}"), vec![y]);
            }
        }
    });
    run.law(Law::RightUnit, |visit| {
        for s in 0..=n_max {
            let parts = Composition::new(vec![1; s]);
            for x in 0..c(s).size() {
                let ok = o.substitute(&parts, x, &vec![o.unit(); s]) == x;
                visit!(visit, ok, format!("arity {s}"), vec![x]);
            }
        }
    });
    run.law(Law::Equivariance, |visit| {
        for parts in &shapes {
            let radices = o.radices(parts);
            let blocks: Vec<Vec<Perm>> = parts.parts().iter().map(|&p| Perm::all(p).collect()).collect();
            let choice: Vec<usize> = blocks.iter().map(Vec::len).collect();
            let mut go = true;
            each_tuple(&radices, |t| {
                let base = o.substitute(parts, t[0], &t[1..]);
                each_tuple(&choice, |h| {
                    let hs: Vec<Perm> = h.iter().zip(&blocks).map(|(&i, b)| b[i].clone()).collect();
                    let moved: Vec<usize> = t[1..]
                        .iter()
                        .zip(&hs)
                        .zip(parts.parts())
                        .map(|((&y, hk), &p)| c(p).act(y, hk.rank()))
                        .collect();
                    let lhs = o.substitute(parts, t[0], &moved);
                    let rhs = c(parts.total()).act(base, Perm::block_sum(&hs).rank());
                    if lhs != rhs {
                        go = visit(Some((format!("μ_{parts} under the block subgroup"), t.clone())));
                        return false;
                    }
                    go = visit(None);
                    go
                });
                go
            });
            if !go {
                return;
            }
        }
    });
    run.law(Law::Relabeling, |visit| {
        for parts in &shapes {
            let s = parts.len();
            let radices = o.radices(parts);
            let offsets = parts.offsets();
            for sigma in Perm::all(s) {
                let new_parts = Composition::new((0..s).map(|i| parts.parts()[sigma.apply(i)]).collect());
                let new_offsets = new_parts.offsets();
                let inv = sigma.inverse();
                let mut beta = vec![0; parts.total()];
                for j in 0..s {
                    for i in 0..parts.parts()[j] {
                        beta[offsets[j] + i] = new_offsets[inv.apply(j)] + i;
                    }
                }
                let beta = Perm::from_images(beta).expect("block permutation").rank();
                let mut go = true;
                each_tuple(&radices, |t| {
                    let ys: Vec<usize> = (0..s).map(|i| t[1 + sigma.apply(i)]).collect();
                    let moved = o.substitute(&new_parts, c(s).act(t[0], sigma.rank()), &ys);
                    let ok = c(parts.total()).act(moved, beta) == o.substitute(parts, t[0], &t[1..]);
                    go = if ok { visit(None) } else { visit(Some((format!("μ_{parts}, σ = {sigma}"), t))) };
                    go
                });
                if !go {
                    return;
                }
            }
        }
    });
    run.law(Law::Associativity, |visit| {
        for outer in &shapes {
            for inner in compositions(outer.total(), n_max) {
                let mut radices = o.radices(outer);
                radices.extend(inner.parts().iter().map(|&q| c(q).size()));
                let s = outer.len();
                let mut go = true;
                each_tuple(&radices, |t| {
                    let (ys, zs) = t[1..].split_at(s);
                    let lhs = o.substitute(&inner, o.substitute(outer, t[0], ys), zs);
                    let mut start = 0;
                    let mut totals = Vec::new();
                    let mut results = Vec::new();
                    for (k, &p) in outer.parts().iter().enumerate() {
                        let g = Composition::new(inner.parts()[start..start + p].to_vec());
                        results.push(o.substitute(&g, ys[k], &zs[start..start + p]));
                        totals.push(g.total());
                        start += p;
                    }
                    let rhs = o.substitute(&Composition::new(totals), t[0], &results);
                    go = if lhs == rhs { visit(None) } else { visit(Some((format!("{outer} then {inner}"), t))) };
                    go
                });
                if !go {
                    return;
                }
            }
        }
    });
    run.finish()
}

fn functor_oracle(f: &impl Finitary, run: &mut LawRunner) {
    let n_max = f.max_arity();
    run.law(Law::FunctorIdentity, |visit| {
        for n in 0..=n_max {
            for x in 0..f.card(n) {
                visit!(visit, f.map(&FinMap::identity(n), x) == x, format!("F(id_{n})"), vec![x]);
            }
        }
    });
    run.law(Law::FunctorComposition, |visit| {
        for l in 0..=n_max {
            for m in 0..=n_max {
                for n in 0..=n_max {
                    for a in FinMap::all(l, m) {
                        for b in FinMap::all(m, n) {
                            let ba: Vec<usize> = a.images().iter().map(|&i| b.apply(i)).collect();
                            let ba = FinMap::new(n, ba).expect("composite");
                            for x in 0..f.card(l) {
                                let ok = f.map(&ba, x) == f.map(&b, f.map(&a, x));
                                visit!(visit, ok, format!("f = {a}, g = {b}"), vec![x]);
                            }
                        }
                    }
                }
            }
        }
    });
}

/// Oracle for [`crate::qc::monad_check_with`].
pub fn monad_oracle(m: &AlgebraicMonad, mode: Mode) -> Report {
    let mut run = LawRunner::new("algebraic monad (oracle)", mode);
    functor_oracle(m.functor(), &mut run);
    let n_max = m.max_arity();
    run.law(Law::LeftUnit, |visit| {
        for n in 0..=n_max {
            for t in 0..m.card(n) {
                visit!(visit, m.substitute(n, m.unit(), &[t]) == t, format!("n = {n}"), vec![t]);
            }
        }
    });
    run.law(Law::RightUnit, |visit| {
        for p in 0..=n_max {
            let e: Vec<usize> = (0..p)
                .map(|i| m.map(&FinMap::new(p, vec![i]).expect("point"), m.unit()))
                .collect();
            for t in 0..m.card(p) {
                visit!(visit, m.substitute(p, t, &e) == t, format!("p = {p}"), vec![t]);
            }
        }
    });
    run.law(Law::Naturality, |visit| {
        for p in 0..=n_max {
            for a in 0..=n_max {
                for b in 0..=n_max {
                    for f in FinMap::all(a, b) {
                        let mut radices = vec![m.card(p)];
                        radices.extend(std::iter::repeat_n(m.card(a), p));
                        let mut go = true;
                        each_tuple(&radices, |t| {
                            let lhs = m.map(&f, m.substitute(a, t[0], &t[1..]));
                            let moved: Vec<usize> = t[1..].iter().map(|&y| m.map(&f, y)).collect();
                            let ok = lhs == m.substitute(b, t[0], &moved);
                            go = if ok { visit(None) } else { visit(Some((format!("p = {p}, f = {f}"), t))) };
                            go
                        });
                        if !go {
                            return;
                        }
                    }
                }
            }
        }
    });
    run.law(Law::CoendCompatibility, |visit| {
        for p in 0..=n_max {
            for q in 0..=n_max {
                for phi in FinMap::all(p, q) {
                    for n in 0..=n_max {
                        let mut radices = vec![m.card(p)];
                        radices.extend(std::iter::repeat_n(m.card(n), q));
                        let mut go = true;
                        each_tuple(&radices, |t| {
                            let lhs = m.substitute(n, m.map(&phi, t[0]), &t[1..]);
                            let pulled: Vec<usize> = (0..p).map(|i| t[1 + phi.apply(i)]).collect();
                            let ok = lhs == m.substitute(n, t[0], &pulled);
                            go = if ok { visit(None) } else { visit(Some((format!("φ = {phi}, n = {n}"), t))) };
                            go
                        });
                        if !go {
                            return;
                        }
                    }
                }
            }
        }
    });
    run.law(Law::Associativity, |visit| {
        for q in 0..=n_max {
            for p in 0..=n_max {
                for n in 0..=n_max {
                    let mut radices = vec![m.card(q)];
                    radices.extend(std::iter::repeat_n(m.card(p), q));
                    radices.extend(std::iter::repeat_n(m.card(n), p));
                    let mut go = true;
                    each_tuple(&radices, |t| {
                        let (us, ys) = t[1..].split_at(q);
                        let lhs = m.substitute(n, m.substitute(p, t[0], us), ys);
                        let inner: Vec<usize> = us.iter().map(|&u| m.substitute(n, u, ys)).collect();
                        let ok = lhs == m.substitute(n, t[0], &inner);
                        go = if ok { visit(None) } else { visit(Some((format!("({q}, {p}, {n})"), t))) };
                        go
                    });
                    if !go {
                        return;
                    }
                }
            }
        }
    });
    run.finish()
}

/// Oracle for [`crate::qc::module_check_with`].
pub fn module_oracle(md: &SigmaModule, mode: Mode) -> Report {
    let mut run = LawRunner::new("Σ-module (oracle)", mode);
    let m = md.monad();
    let k = md.size();
    run.law(Law::ModuleUnit, |visit| {
        for x in 0..k {
            let e = m.map(&FinMap::new(k, vec![x]).expect("point"), m.unit());
            visit!(visit, md.act(e) == x, format!("x = {}", x + 1), vec![x]);
        }
    });
    run.law(Law::ModuleAssociativity, |visit| {
        for p in 0..=m.max_arity() {
            let mut radices = vec![m.card(p)];
            radices.extend(std::iter::repeat_n(m.card(k), p));
            let mut go = true;
            each_tuple(&radices, |t| {
                let lhs = md.act(m.substitute(k, t[0], &t[1..]));
                let images: Vec<usize> = t[1..].iter().map(|&u| md.act(u)).collect();
                let rhs = md.act(m.map(&FinMap::new(k, images).expect("in range"), t[0]));
                go = if lhs == rhs { visit(None) } else { visit(Some((format!("p = {p}"), t))) };
                go
            });
            if !go {
                return;
            }
        }
    });
    run.finish()
}

fn mask_members(mask: usize) -> Vec<usize> {
    (0..usize::BITS as usize).filter(|i| mask >> i & 1 == 1).collect()
}

/// `f` restricted to `f⁻¹(U) → U`, both sides renumbered in order.
fn restrict_standard(f: &FinMap, target: usize) -> FinMap {
    let cod = mask_members(target);
    let images = f
        .images()
        .iter()
        .filter(|&&i| target >> i & 1 == 1)
        .map(|i| cod.binary_search(i).expect("member"))
        .collect();
    FinMap::new(cod.len(), images).expect("restriction")
}

/// The map `W → p_1 + … + p_n` placing the point of `W` that is the `r`-th
/// member of `masks[i]` at `offset_i + r`.
fn placement(width: usize, masks: &[usize]) -> FinMap {
    let mut images = vec![0; width];
    let mut offset = 0;
    for &mask in masks {
        for (r, w) in mask_members(mask).into_iter().enumerate() {
            images[w] = offset + r;
        }
        offset += mask.count_ones() as usize;
    }
    FinMap::new(offset, images).expect("placement")
}

fn product_along(y: &CommAlgObject, blocks: &[(usize, usize)]) -> usize {
    let (mut size, mut acc) = (0, y.unit());
    for &(mask, el) in blocks {
        let k = mask.count_ones() as usize;
        acc = y.mul(size, k, acc, el);
        size += k;
    }
    let union = blocks.iter().fold(0, |a, &(m, _)| a | m);
    // Renumber the union in order, then place each block's points.
    let members = mask_members(union);
    let local: Vec<usize> = blocks
        .iter()
        .map(|&(m, _)| mask_members(m).iter().map(|w| 1 << members.binary_search(w).expect("member")).sum())
        .collect();
    y.carrier().restrict(&placement(members.len(), &local), acc)
}

fn presheaf_oracle(p: &FinPresheaf, run: &mut LawRunner) {
    let n_max = p.max_arity();
    run.law(Law::FunctorIdentity, |visit| {
        for n in 0..=n_max {
            for x in 0..p.card(n) {
                visit!(visit, p.restrict(&FinMap::identity(n), x) == x, format!("P(id_{n})"), vec![x]);
            }
        }
    });
    run.law(Law::FunctorComposition, |visit| {
        for l in 0..=n_max {
            for m in 0..=n_max {
                for n in 0..=n_max {
                    for f in FinMap::all(l, m) {
                        for g in FinMap::all(m, n) {
                            let gf = FinMap::new(n, f.images().iter().map(|&i| g.apply(i)).collect()).expect("composite");
                            for x in 0..p.card(n) {
                                let ok = p.restrict(&gf, x) == p.restrict(&f, p.restrict(&g, x));
                                visit!(visit, ok, format!("f = {f}, g = {g}"), vec![x]);
                            }
                        }
                    }
                }
            }
        }
    });
    run.law(Law::GenerationBound, |visit| {
        let Some(s) = p.generation_bound().filter(|&s| s <= n_max) else { return };
        for n in 0..=n_max {
            // ⊔_{k≤s} P(k) × Hom(n, k) modulo every map k → k'.
            let mut index = std::collections::HashMap::new();
            let mut elems = Vec::new();
            for k in 0..=s {
                for x in 0..p.card(k) {
                    for g in FinMap::all(n, k) {
                        index.insert((k, x, g.clone()), elems.len());
                        elems.push((k, x, g));
                    }
                }
            }
            let mut merger = Merger::new(elems.len());
            for (i, (k, x, g)) in elems.iter().enumerate() {
                for k2 in 0..=s {
                    for psi in FinMap::all(*k, k2) {
                        let pg = FinMap::new(k2, g.images().iter().map(|&j| psi.apply(j)).collect()).expect("composite");
                        for x2 in 0..p.card(k2) {
                            if p.restrict(&psi, x2) == *x {
                                merger.merge(i, index[&(k2, x2, pg.clone())]);
                            }
                        }
                    }
                }
            }
            let q = merger.finish();
            let mut images: Vec<usize> = q
                .classes
                .iter()
                .map(|c| {
                    let (_, x, g) = &elems[c[0]];
                    p.restrict(g, *x)
                })
                .collect();
            images.sort_unstable();
            let ok = images == (0..p.card(n)).collect::<Vec<_>>();
            visit!(visit, ok, format!("degree {n} against generators in degrees ≤ {s}"), vec![]);
        }
    });
}

fn comm_alg_oracle_laws(a: &CommAlgObject, run: &mut LawRunner) {
    let n_max = a.max_arity();
    let s = a.carrier();
    run.law(Law::Naturality, |visit| {
        for p in 0..=n_max {
            for q in 0..=n_max - p {
                for p2 in 0..=n_max {
                    for q2 in 0..=n_max - p2 {
                        for f in FinMap::all(p2, p) {
                            for g in FinMap::all(q2, q) {
                                let mut fg: Vec<usize> = f.images().to_vec();
                                fg.extend(g.images().iter().map(|&i| p + i));
                                let fg = FinMap::new(p + q, fg).expect("block sum");
                                for x in 0..a.card(p) {
                                    for y in 0..a.card(q) {
                                        let ok = s.restrict(&fg, a.mul(p, q, x, y))
                                            == a.mul(p2, q2, s.restrict(&f, x), s.restrict(&g, y));
                                        visit!(visit, ok, format!("M along {f} ⊔ {g}"), vec![x, y]);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    });
    run.law(Law::Commutativity, |visit| {
        for p in 0..=n_max {
            for q in 0..=n_max - p {
                // M_{q,p}(y, x) lives on q + p with x in the last p points.
                let swap = placement(p + q, &[((1 << q) - 1) << p, (1 << p) - 1]);
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
                visit!(visit, ok, format!("degree {p}"), vec![x]);
            }
        }
    });
    run.law(Law::Associativity, |visit| {
        for p in 0..=n_max {
            for q in 0..=n_max - p {
                for r in 0..=n_max - p - q {
                    let mut go = true;
                    each_tuple(&[a.card(p), a.card(q), a.card(r)], |t| {
                        let lhs = a.mul(p + q, r, a.mul(p, q, t[0], t[1]), t[2]);
                        let rhs = a.mul(p, q + r, t[0], a.mul(q, r, t[1], t[2]));
                        go = if lhs == rhs { visit(None) } else { visit(Some((format!("({p}, {q}, {r})"), t))) };
                        go
                    });
                    if !go {
                        return;
                    }
                }
            }
        }
    });
}

/// Oracle for [`crate::qa::comm_alg_check_with`].
pub fn comm_alg_oracle(a: &CommAlgObject, mode: Mode) -> Report {
    let mut run = LawRunner::new("commutative algebra (oracle)", mode);
    presheaf_oracle(a.carrier(), &mut run);
    comm_alg_oracle_laws(a, &mut run);
    run.finish()
}

/// `ξ ↦ μ(ξ; U⃗, z⃗)` for disjoint masks `U_i` covering `width` points.
struct MuOnMasks<'a> {
    a: &'a QaAlgebrad,
    parts: Composition,
    zs: Vec<usize>,
    place: FinMap,
}

impl<'a> MuOnMasks<'a> {
    fn new(a: &'a QaAlgebrad, masks: &[usize], zs: &[usize], width: usize) -> Self {
        MuOnMasks {
            a,
            parts: Composition::new(masks.iter().map(|m| m.count_ones() as usize).collect()),
            zs: zs.to_vec(),
            place: placement(width, masks),
        }
    }

    fn at(&self, x: usize) -> usize {
        self.a.algebra().carrier().restrict(&self.place, self.a.substitute(&self.parts, x, &self.zs))
    }
}

fn standard_masks(parts: &Composition) -> Vec<usize> {
    parts
        .parts()
        .iter()
        .zip(parts.offsets())
        .map(|(&p, o)| ((1usize << p) - 1) << o)
        .collect()
}

/// Oracle for [`crate::qa::algebrad_check_with`].
pub fn algebrad_oracle(a: &QaAlgebrad, mode: Mode) -> Report {
    let mut run = LawRunner::new("algebrad (oracle)", mode);
    let alg = a.algebra();
    let sigma = alg.carrier();
    presheaf_oracle(sigma, &mut run);
    comm_alg_oracle_laws(alg, &mut run);
    let n_max = a.max_arity();
    let shapes: Vec<Composition> = (0..=n_max).flat_map(|s| compositions(s, n_max)).collect();

    run.law(Law::LeftUnit, |visit| {
        for p in 0..=n_max {
            for y in 0..a.card(p) {
                let ok = a.substitute(&Composition::new(vec![p]), a.unit(), &[y]) == y;
                visit!(visit, ok, format!("degree {p}"), vec![y]);
            }
        }
    });
    run.law(Law::RightUnit, |visit| {
        for n in 0..=n_max {
            for x in 0..a.card(n) {
                let ok = a.substitute(&Composition::new(vec![1; n]), x, &vec![a.unit(); n]) == x;
                visit!(visit, ok, format!("degree {n}"), vec![x]);
            }
        }
    });
    // ξ varies fastest so that the transported side is built once per y⃗.
    run.law(Law::CoendCompatibility, |visit| {
        for parts in &shapes {
            let masks = standard_masks(parts);
            let width = parts.total();
            let radices: Vec<usize> = parts.parts().iter().map(|&p| a.card(p)).collect();
            for n in 0..=n_max {
                for phi in FinMap::all(parts.len(), n) {
                    let merged: Vec<usize> =
                        (0..n).map(|i| phi.fibre(i).iter().fold(0, |acc, &j| acc | masks[j])).collect();
                    let mut go = true;
                    each_tuple(&radices, |ys| {
                        let zs: Vec<usize> = (0..n)
                            .map(|i| {
                                let blocks: Vec<(usize, usize)> =
                                    phi.fibre(i).iter().map(|&j| (masks[j], ys[j])).collect();
                                product_along(alg, &blocks)
                            })
                            .collect();
                        let mu = MuOnMasks::new(a, &merged, &zs, width);
                        for x in 0..a.card(n) {
                            let lhs = a.substitute(parts, sigma.restrict(&phi, x), &ys);
                            go = if lhs == mu.at(x) {
                                visit(None)
                            } else {
                                visit(Some((format!("{parts}, φ = {phi}"), [&[x], ys.as_slice()].concat())))
                            };
                            if !go {
                                break;
                            }
                        }
                        go
                    });
                    if !go {
                        return;
                    }
                }
            }
        }
    });
    run.law(Law::Naturality, |visit| {
        for parts in &shapes {
            let masks = standard_masks(parts);
            let radices: Vec<usize> = parts.parts().iter().map(|&p| a.card(p)).collect();
            for w in 0..=n_max {
                for f in FinMap::all(w, parts.total()) {
                    let pulled: Vec<usize> = masks
                        .iter()
                        .map(|&m| (0..w).filter(|&i| m >> f.apply(i) & 1 == 1).map(|i| 1 << i).sum())
                        .collect();
                    let pieces: Vec<FinMap> = masks.iter().map(|&m| restrict_standard(&f, m)).collect();
                    let mut go = true;
                    each_tuple(&radices, |ys| {
                        let zs: Vec<usize> = pieces.iter().zip(&ys).map(|(g, &y)| sigma.restrict(g, y)).collect();
                        let mu = MuOnMasks::new(a, &pulled, &zs, w);
                        for x in 0..a.card(parts.len()) {
                            let lhs = sigma.restrict(&f, a.substitute(parts, x, &ys));
                            go = if lhs == mu.at(x) {
                                visit(None)
                            } else {
                                visit(Some((format!("{parts} along {f}"), [&[x], ys.as_slice()].concat())))
                            };
                            if !go {
                                break;
                            }
                        }
                        go
                    });
                    if !go {
                        return;
                    }
                }
            }
        }
    });
    run.law(Law::AlgebraMorphism, |visit| {
        let ok = a.substitute(&Composition::new(vec![]), alg.unit(), &[]) == alg.unit();
        visit!(visit, ok, "E_0".to_string(), vec![alg.unit()]);
        for p in &shapes {
            for q in &shapes {
                if p.len() + q.len() > n_max || p.total() + q.total() > n_max {
                    continue;
                }
                let joined = Composition::new([p.parts(), q.parts()].concat());
                let mut radices = vec![a.card(p.len())];
                radices.extend(p.parts().iter().map(|&k| a.card(k)));
                radices.push(a.card(q.len()));
                radices.extend(q.parts().iter().map(|&k| a.card(k)));
                let split = p.len() + 1;
                let mut go = true;
                each_tuple(&radices, |t| {
                    let (tp, tq) = t.split_at(split);
                    let ys = [&tp[1..], &tq[1..]].concat();
                    let lhs = a.substitute(&joined, alg.mul(p.len(), q.len(), tp[0], tq[0]), &ys);
                    let rhs = alg.mul(
                        p.total(),
                        q.total(),
                        a.substitute(p, tp[0], &tp[1..]),
                        a.substitute(q, tq[0], &tq[1..]),
                    );
                    go = if lhs == rhs { visit(None) } else { visit(Some((format!("{p} and {q}"), t))) };
                    go
                });
                if !go {
                    return;
                }
            }
        }
    });
    run.law(Law::Associativity, |visit| {
        for outer in &shapes {
            for inner in compositions(outer.total(), n_max) {
                let mut radices = vec![a.card(outer.len())];
                radices.extend(outer.parts().iter().map(|&k| a.card(k)));
                radices.extend(inner.parts().iter().map(|&k| a.card(k)));
                let s = outer.len();
                // The inner groups depend only on the two shapes.
                let mut groups = Vec::new();
                let mut start = 0;
                for &p in outer.parts() {
                    groups.push((start, Composition::new(inner.parts()[start..start + p].to_vec())));
                    start += p;
                }
                let totals = Composition::new(groups.iter().map(|(_, g)| g.total()).collect());
                let mut results = vec![0; s];
                let mut go = true;
                each_tuple(&radices, |t| {
                    let (ys, zs) = t[1..].split_at(s);
                    let lhs = a.substitute(&inner, a.substitute(outer, t[0], ys), zs);
                    for (k, (start, g)) in groups.iter().enumerate() {
                        results[k] = a.substitute(g, ys[k], &zs[*start..start + g.len()]);
                    }
                    let rhs = a.substitute(&totals, t[0], &results);
                    go = if lhs == rhs { visit(None) } else { visit(Some((format!("{outer} then {inner}"), t))) };
                    go
                });
                if !go {
                    return;
                }
            }
        }
    });
    run.finish()
}

/// Whether `symmetric_group` agrees with raw permutation products; used to
/// certify the group tables the checkers rely on.
pub fn group_tables_agree(n: usize) -> bool {
    let g = symmetric_group(n).expect("within cap");
    let perms: Vec<Perm> = Perm::all(n).collect();
    perms.iter().all(|s| {
        perms
            .iter()
            .all(|t| g.element(g.mul(s.rank(), t.rank())) == &s.mul(t))
    })
}
