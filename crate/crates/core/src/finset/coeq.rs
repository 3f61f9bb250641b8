use petgraph::unionfind::UnionFind;

/// The quotient of `0..size` by an equivalence relation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Quotient {
    /// Classes ordered by least member; each class sorted.
    pub classes: Vec<Vec<usize>>,
    /// Class index of every element.
    pub projection: Vec<usize>,
}

impl Quotient {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.classes.len() == self.projection.len()
    }

    /// Least member of each class.
    pub fn representatives(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c[0]).collect()
    }
}

/// Incremental builder: union pairs, then read off the quotient.
pub struct Merger {
    uf: UnionFind<usize>,
    size: usize,
}

impl Merger {
    pub fn new(size: usize) -> Self {
        Merger {
            uf: UnionFind::new(size),
            size,
        }
    }

    pub fn merge(&mut self, a: usize, b: usize) {
        self.uf.union(a, b);
    }

    pub fn finish(self) -> Quotient {
        let mut class_of_root = vec![usize::MAX; self.size];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut projection = vec![0; self.size];
        for (x, slot) in projection.iter_mut().enumerate() {
            let r = self.uf.find(x);
            if class_of_root[r] == usize::MAX {
                class_of_root[r] = classes.len();
                classes.push(Vec::new());
            }
            *slot = class_of_root[r];
            classes[class_of_root[r]].push(x);
        }
        Quotient {
            classes,
            projection,
        }
    }
}

/// Coequalizer of `u, v : A → B` given as image tables over `A`: the
/// smallest equivalence on `B` with `u(a) ~ v(a)`.
pub fn coequalizer(b_size: usize, u: &[usize], v: &[usize]) -> Quotient {
    assert_eq!(u.len(), v.len(), "parallel pair must share a domain");
    let mut m = Merger::new(b_size);
    for (&x, &y) in u.iter().zip(v) {
        m.merge(x, y);
    }
    m.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert!(coequalizer(3, &[], &[]).is_identity());
        assert!(coequalizer(3, &[0, 2], &[0, 2]).is_identity());
        let q = coequalizer(3, &[0, 1], &[1, 2]);
        assert_eq!(q.classes, vec![vec![0, 1, 2]]);
        assert_eq!(q.projection, vec![0, 0, 0]);
    }

    #[test]
    fn idempotent_on_projection_pair() {
        let q = coequalizer(5, &[0, 3], &[4, 1]);
        assert_eq!(q.len(), 3);
        // Coequalizing the kernel pair of the projection, read as a relation
        // on the classes, changes nothing.
        let u: Vec<usize> = (0..5).map(|x| q.projection[x]).collect();
        let again = coequalizer(q.len(), &u, &u);
        assert!(again.is_identity());
        assert_eq!(q.representatives(), vec![0, 1, 2]);
    }
}
