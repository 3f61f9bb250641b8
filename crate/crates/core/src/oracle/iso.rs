use crate::finset::GSet;

/// Searches for an equivariant bijection `X → Y` by backtracking over the
/// image of one representative per orbit; `None` means none exists.
pub fn bijection_search(x: &GSet, y: &GSet) -> Option<Vec<usize>> {
    if x.arity() != y.arity() || x.size() != y.size() {
        return None;
    }
    let order = x.group().order();
    // Orbit representatives of X, each with its orbit listed by group element.
    let mut reps = Vec::new();
    let mut seen = vec![false; x.size()];
    for a in 0..x.size() {
        if !seen[a] {
            for s in 0..order {
                seen[x.act(a, s)] = true;
            }
            reps.push(a);
        }
    }
    let mut map = vec![usize::MAX; x.size()];
    let mut used = vec![false; y.size()];
    extend(x, y, &reps, 0, &mut map, &mut used).then_some(map)
}

fn extend(x: &GSet, y: &GSet, reps: &[usize], k: usize, map: &mut [usize], used: &mut [bool]) -> bool {
    let Some(&a) = reps.get(k) else { return true };
    let order = x.group().order();
    for b in 0..y.size() {
        if used[b] {
            continue;
        }
        // a ↦ b forces a·σ ↦ b·σ for every σ.
        let mut assigned = Vec::new();
        let mut ok = true;
        for s in 0..order {
            let (xs, ys) = (x.act(a, s), y.act(b, s));
            if map[xs] == usize::MAX {
                if used[ys] {
                    ok = false;
                    break;
                }
                map[xs] = ys;
                used[ys] = true;
                assigned.push(xs);
            } else if map[xs] != ys {
                ok = false;
                break;
            }
        }
        if ok && extend(x, y, reps, k + 1, map, used) {
            return true;
        }
        for xs in assigned {
            used[map[xs]] = false;
            map[xs] = usize::MAX;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::gset_iso;

    #[test]
    fn agrees_with_gset_iso() {
        let triv = GSet::trivial(2, 2).unwrap();
        let reg = GSet::regular(2).unwrap();
        assert_eq!(bijection_search(&reg, &reg), Some(vec![0, 1]));
        assert_eq!(bijection_search(&triv, &reg), None);
        assert!(!gset_iso(&triv, &reg).unwrap());
        let r3 = GSet::regular(3).unwrap();
        let u = GSet::disjoint_union(3, &[&r3, &GSet::trivial(3, 1).unwrap()]).unwrap();
        let v = GSet::disjoint_union(3, &[&GSet::trivial(3, 1).unwrap(), &r3]).unwrap();
        let f = bijection_search(&u, &v).unwrap();
        assert_eq!(f[6], 0);
    }
}
