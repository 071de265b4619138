//! Heavy path decomposition with isomorphism-consistent tie breaking.
//!
//! For two trees sharing canonical ids, the heavy child of a node is a function of
//! its id: among the children of maximum subtree size we take the smallest id, and
//! among the children carrying that id the smallest label. Nodes with isomorphic
//! subtrees therefore have heavy children with isomorphic subtrees, in both trees.

use crate::error::{Error, Result};
use crate::forest::LabeledForest;
use crate::iso::{canonical_ids, CanonicalIds};

#[derive(Clone, Debug)]
pub struct HeavyPathDecomposition {
    parent: Vec<usize>,
    level: Vec<usize>,
    heavy: Vec<usize>,
    path_of: Vec<usize>,
    pos: Vec<usize>,
    paths: Vec<Vec<usize>>,
}

impl HeavyPathDecomposition {
    /// Decomposes a single tree, using its own canonical ids for tie breaking.
    pub fn new(tree: &LabeledForest) -> Result<Self> {
        let ids = canonical_ids(tree, tree)?;
        Ok(Self::build(tree, ids.table1(), &ids))
    }

    fn build(tree: &LabeledForest, id: &[u32], ids: &CanonicalIds) -> Self {
        let n = tree.len();
        let parent = tree.table().to_vec();
        let level = tree.level_table();
        let children = tree.children();

        let mut heavy = vec![0; n + 1];
        for u in 1..=n {
            let best = children[u]
                .iter()
                .map(|&c| (std::cmp::Reverse(ids.subtree_size(id[c])), id[c]))
                .min();
            if let Some((_, best_id)) = best {
                // children are sorted ascending, so the first hit has the smallest label
                heavy[u] = *children[u].iter().find(|&&c| id[c] == best_id).unwrap();
            }
        }

        let mut path_of = vec![usize::MAX; n + 1];
        let mut pos = vec![0; n + 1];
        let mut paths = Vec::new();
        let mut heads: Vec<usize> = (1..=n).filter(|&u| parent[u] == 0 || heavy[parent[u]] != u).collect();
        heads.sort_unstable_by_key(|&u| (level[u], u));
        for h in heads {
            let idx = paths.len();
            let mut path = Vec::new();
            let mut x = h;
            while x != 0 {
                path_of[x] = idx;
                pos[x] = path.len();
                path.push(x);
                x = heavy[x];
            }
            paths.push(path);
        }
        HeavyPathDecomposition {
            parent,
            level,
            heavy,
            path_of,
            pos,
            paths,
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn parent(&self, u: usize) -> Option<usize> {
        match self.parent[u] {
            0 => None,
            p => Some(p),
        }
    }

    pub fn level(&self, u: usize) -> usize {
        self.level[u]
    }

    pub fn heavy_child(&self, u: usize) -> Option<usize> {
        match self.heavy[u] {
            0 => None,
            c => Some(c),
        }
    }

    pub fn head(&self, u: usize) -> usize {
        self.paths[self.path_of[u]][0]
    }

    pub fn is_head(&self, u: usize) -> bool {
        self.pos[u] == 0
    }

    /// Index of `u` within its heavy path (the head is at 0).
    pub fn pos(&self, u: usize) -> usize {
        self.pos[u]
    }

    /// The heavy path containing `u`, ordered by level.
    pub fn path(&self, u: usize) -> &[usize] {
        &self.paths[self.path_of[u]]
    }

    pub fn paths(&self) -> &[Vec<usize>] {
        &self.paths
    }

    /// Node on `u`'s heavy path at level `level`, or `None` past the end of the path.
    pub fn access(&self, u: usize, level: usize) -> Result<Option<usize>> {
        let head = self.head(u);
        let top = self.level[head];
        if level < top {
            return Err(Error::InvalidArgument(format!(
                "level {level} lies above the head {head} (level {top}) of node {u}"
            )));
        }
        Ok(self.path(u).get(level - top).copied())
    }

    /// Unchecked access for callers that already know `level` is on the path.
    pub(crate) fn access_on_path(&self, u: usize, level: usize) -> usize {
        let path = self.path(u);
        path[level - self.level[path[0]]]
    }
}

/// Heavy path decompositions of both trees whose heavy children agree on canonical ids.
pub fn decompose_consistent(
    t1: &LabeledForest,
    t2: &LabeledForest,
    ids: &CanonicalIds,
) -> (HeavyPathDecomposition, HeavyPathDecomposition) {
    (
        HeavyPathDecomposition::build(t1, ids.table1(), ids),
        HeavyPathDecomposition::build(t2, ids.table2(), ids),
    )
}

/// Iterates, bottom-up, over the same-level ancestor pairs `(z, w)` of `(u, v)` in
/// which `z` or `w` heads its heavy path. Each step jumps a whole heavy path, so
/// a call yields O(log n) pairs.
#[derive(Clone, Debug)]
pub struct AncestorPairs<'a> {
    h1: &'a HeavyPathDecomposition,
    h2: &'a HeavyPathDecomposition,
    u: usize,
    v: usize,
}

pub fn ancestor_pairs<'a>(
    h1: &'a HeavyPathDecomposition,
    h2: &'a HeavyPathDecomposition,
    u: usize,
    v: usize,
) -> Result<AncestorPairs<'a>> {
    if h1.level(u) != h2.level(v) {
        return Err(Error::InvalidArgument(format!(
            "nodes {u} and {v} are on different levels ({} vs {})",
            h1.level(u),
            h2.level(v)
        )));
    }
    Ok(AncestorPairs { h1, h2, u, v })
}

impl Iterator for AncestorPairs<'_> {
    type Item = (usize, usize);

    fn next(&mut self) -> Option<(usize, usize)> {
        if self.u == 0 || self.v == 0 {
            return None;
        }
        let (h1, h2) = (self.h1, self.h2);
        let head1 = h1.head(self.u);
        let head2 = h2.head(self.v);
        let (l1, l2) = (h1.level(head1), h2.level(head2));
        let pair = if l1 < l2 {
            let z = h1.access_on_path(self.u, l2);
            self.v = h2.parent[head2];
            (z, head2)
        } else if l1 > l2 {
            let w = h2.access_on_path(self.v, l1);
            self.u = h1.parent[head1];
            (head1, w)
        } else {
            self.u = h1.parent[head1];
            self.v = h2.parent[head2];
            (head1, head2)
        };
        Some(pair)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn forest(p: &[usize]) -> LabeledForest {
        LabeledForest::new(p.to_vec()).unwrap()
    }

    fn pair(p1: &[usize], p2: &[usize]) -> (HeavyPathDecomposition, HeavyPathDecomposition) {
        let (t1, t2) = (forest(p1), forest(p2));
        let ids = canonical_ids(&t1, &t2).unwrap();
        decompose_consistent(&t1, &t2, &ids)
    }

    /// Every same-level ancestor pair with a head on either side, ordered bottom-up.
    fn brute_pairs(
        h1: &HeavyPathDecomposition,
        h2: &HeavyPathDecomposition,
        u: usize,
        v: usize,
    ) -> Vec<(usize, usize)> {
        let chain = |h: &HeavyPathDecomposition, mut x: usize| {
            let mut out = Vec::new();
            while x != 0 {
                out.push(x);
                x = h.parent[x];
            }
            out
        };
        chain(h1, u)
            .into_iter()
            .zip(chain(h2, v))
            .filter(|&(z, w)| h1.is_head(z) || h2.is_head(w))
            .collect()
    }

    #[test]
    fn heavy_child_examples() {
        let h = HeavyPathDecomposition::new(&forest(&[0, 1, 1])).unwrap();
        assert_eq!(h.heavy_child(1), Some(2));
        let h = HeavyPathDecomposition::new(&forest(&[0, 1, 1, 3])).unwrap();
        assert_eq!(h.heavy_child(1), Some(3));
        assert_eq!(h.path(4), &[1, 3, 4]);
        assert_eq!(h.head(4), 1);
        assert_eq!(h.heavy_child(4), None);
    }

    #[test]
    fn access_examples() {
        let h = HeavyPathDecomposition::new(&forest(&[0, 1, 1, 3])).unwrap();
        assert_eq!(h.access(4, 0).unwrap(), Some(1));
        assert_eq!(h.access(4, 2).unwrap(), Some(4));
        assert_eq!(h.access(3, 5).unwrap(), None);
        // node 2 heads its own path at level 1
        assert!(h.access(2, 0).is_err());
    }

    #[test]
    fn ancestor_pair_examples() {
        let (h1, h2) = pair(&[0, 1], &[0, 1]);
        assert_eq!(
            ancestor_pairs(&h1, &h2, 1, 1).unwrap().collect::<Vec<_>>(),
            vec![(1, 1)]
        );

        // a single heavy path on both sides only yields the root pair
        let (h1, h2) = pair(&[0, 1, 2], &[0, 1, 2]);
        assert_eq!(
            ancestor_pairs(&h1, &h2, 3, 3).unwrap().collect::<Vec<_>>(),
            vec![(1, 1)]
        );

        let (h1, h2) = pair(&[0, 1, 2, 1], &[0, 1, 1, 3]);
        // T1 heavy path 1-2-3, node 4 alone; T2 heavy path 1-3-4, node 2 alone
        assert_eq!(h1.path(3), &[1, 2, 3]);
        assert_eq!(h2.path(4), &[1, 3, 4]);
        let got: Vec<_> = ancestor_pairs(&h1, &h2, 2, 2).unwrap().collect();
        assert_eq!(got, vec![(2, 2), (1, 1)]);
        assert_eq!(got, brute_pairs(&h1, &h2, 2, 2));
        assert!(ancestor_pairs(&h1, &h2, 3, 2).is_err());
    }

    #[test]
    fn ancestor_pairs_match_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let n: usize = rng.gen_range(1..=50);
            let gen = |rng: &mut rand_chacha::ChaCha8Rng| {
                let mut p = vec![0];
                for i in 1..n {
                    let lo = i.saturating_sub(rng.gen_range(1..=6)).max(1);
                    p.push(rng.gen_range(lo..=i));
                }
                forest(&p)
            };
            let (t1, t2) = (gen(&mut rng), gen(&mut rng));
            let ids = canonical_ids(&t1, &t2).unwrap();
            let (h1, h2) = decompose_consistent(&t1, &t2, &ids);
            let bound = (n as f64).log2().ceil() as usize + 1;
            for u in 1..=n {
                for v in 1..=n {
                    if h1.level(u) != h2.level(v) {
                        continue;
                    }
                    let got: Vec<_> = ancestor_pairs(&h1, &h2, u, v).unwrap().collect();
                    assert_eq!(got, brute_pairs(&h1, &h2, u, v));
                    assert!(got.len() <= 2 * bound);
                }
            }
        }
    }

    #[test]
    fn structure_invariants() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let n = rng.gen_range(1..=300);
            let mut p = vec![0];
            for i in 1..n {
                p.push(rng.gen_range(1..=i));
            }
            let t = forest(&p);
            let h = HeavyPathDecomposition::new(&t).unwrap();
            let mut covered = vec![false; n + 1];
            for path in h.paths() {
                assert!(h.heavy_child(*path.last().unwrap()).is_none());
                for (i, &x) in path.iter().enumerate() {
                    assert!(!std::mem::replace(&mut covered[x], true));
                    assert_eq!(h.level(x), h.level(path[0]) + i);
                    assert_eq!(h.path(h.head(x))[h.pos(x)], x);
                }
            }
            assert!(covered[1..].iter().all(|&c| c));
            let bound = (n as f64).log2().ceil() as usize + 1;
            for leaf in (1..=n).filter(|&x| h.heavy_child(x).is_none()) {
                let mut heads = 0;
                let mut x = leaf;
                while x != 0 {
                    heads += usize::from(h.is_head(x));
                    x = h.parent[x];
                }
                assert!(heads <= bound, "{heads} heads above leaf {leaf} with n = {n}");
            }
        }
    }

    #[test]
    fn consistency_on_isomorphic_pairs() {
        use rand::seq::SliceRandom;
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let n: usize = rng.gen_range(1..=60);
            let mut p = vec![0];
            for i in 1..n {
                let lo = i.saturating_sub(3).max(1);
                p.push(rng.gen_range(lo..=i));
            }
            let t1 = forest(&p);
            let mut labels: Vec<usize> = (1..=n).collect();
            labels.shuffle(&mut rng);
            let mut q = vec![0; n];
            for u in 1..=n {
                q[labels[u - 1] - 1] = if p[u - 1] == 0 { 0 } else { labels[p[u - 1] - 1] };
            }
            let t2 = forest(&q);
            let ids = canonical_ids(&t1, &t2).unwrap();
            let (h1, h2) = decompose_consistent(&t1, &t2, &ids);
            for u in 1..=n {
                for v in 1..=n {
                    if ids.id1(u) != ids.id2(v) {
                        continue;
                    }
                    match (h1.heavy_child(u), h2.heavy_child(v)) {
                        (Some(a), Some(b)) => assert_eq!(ids.id1(a), ids.id2(b)),
                        (None, None) => {}
                        _ => panic!("isomorphic nodes disagree on being leaves"),
                    }
                }
            }
        }
    }
}
