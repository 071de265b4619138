//! Shared canonical numbering of rooted subtrees (AHU).
//!
//! Two subtrees, in either input tree, receive the same id exactly when they are
//! isomorphic as unlabelled rooted trees.

use std::collections::HashMap;

use crate::error::Result;
use crate::forest::LabeledForest;

/// Canonical subtree ids for two trees, drawn from one shared id space starting at 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalIds {
    ids1: Vec<u32>,
    ids2: Vec<u32>,
    sizes: Vec<usize>,
}

impl CanonicalIds {
    /// Id of node `u` of the first tree.
    pub fn id1(&self, u: usize) -> u32 {
        self.ids1[u]
    }

    /// Id of node `v` of the second tree.
    pub fn id2(&self, v: usize) -> u32 {
        self.ids2[v]
    }

    /// Ids of the first tree, indexed by `label - 1`.
    pub fn ids1(&self) -> &[u32] {
        &self.ids1[1..]
    }

    pub fn ids2(&self) -> &[u32] {
        &self.ids2[1..]
    }

    pub(crate) fn table1(&self) -> &[u32] {
        &self.ids1
    }

    pub(crate) fn table2(&self) -> &[u32] {
        &self.ids2
    }

    /// Number of nodes of any subtree with the given id.
    pub fn subtree_size(&self, id: u32) -> usize {
        self.sizes[id as usize]
    }

    /// Number of distinct ids handed out.
    pub fn distinct(&self) -> usize {
        self.sizes.len() - 1
    }
}

/// Heights indexed by label: leaves are 0, a parent is one more than its tallest child.
fn heights(tree: &LabeledForest, children: &[Vec<usize>]) -> Vec<usize> {
    let levels = tree.level_table();
    let mut order: Vec<usize> = (1..=tree.len()).collect();
    order.sort_unstable_by(|a, b| levels[*b].cmp(&levels[*a]));
    let mut height = vec![0; tree.len() + 1];
    for u in order {
        height[u] = children[u].iter().map(|&c| height[c] + 1).max().unwrap_or(0);
    }
    height
}

/// Assigns shared canonical ids to every node of `t1` and `t2`.
pub fn canonical_ids(t1: &LabeledForest, t2: &LabeledForest) -> Result<CanonicalIds> {
    t1.root()?;
    t2.root()?;
    let ch1 = t1.children();
    let ch2 = t2.children();
    let h1 = heights(t1, &ch1);
    let h2 = heights(t2, &ch2);

    let max_height = h1.iter().chain(h2.iter()).copied().max().unwrap_or(0);
    // buckets[h] holds (tree index, node) pairs of height h
    let mut buckets: Vec<Vec<(u8, usize)>> = vec![Vec::new(); max_height + 1];
    for u in 1..=t1.len() {
        buckets[h1[u]].push((0, u));
    }
    for v in 1..=t2.len() {
        buckets[h2[v]].push((1, v));
    }

    let mut ids = [vec![0u32; t1.len() + 1], vec![0u32; t2.len() + 1]];
    let children = [&ch1, &ch2];
    let mut dictionary: HashMap<Vec<u32>, u32> = HashMap::new();
    let mut sizes = vec![0usize];
    let mut signature = Vec::new();
    for bucket in &buckets {
        for &(t, u) in bucket {
            let t = t as usize;
            signature.clear();
            signature.extend(children[t][u].iter().map(|&c| ids[t][c]));
            signature.sort_unstable();
            let id = match dictionary.get(&signature) {
                Some(&id) => id,
                None => {
                    let id = sizes.len() as u32;
                    let size = 1 + signature.iter().map(|&c| sizes[c as usize]).sum::<usize>();
                    sizes.push(size);
                    dictionary.insert(signature.clone(), id);
                    id
                }
            };
            ids[t][u] = id;
        }
    }
    let [ids1, ids2] = ids;
    Ok(CanonicalIds { ids1, ids2, sizes })
}

/// True when the two trees are isomorphic as unlabelled rooted trees.
pub fn isomorphic(t1: &LabeledForest, t2: &LabeledForest) -> bool {
    let (Ok(r1), Ok(r2)) = (t1.root(), t2.root()) else {
        return false;
    };
    if t1.len() != t2.len() {
        return false;
    }
    match canonical_ids(t1, t2) {
        Ok(ids) => ids.id1(r1) == ids.id2(r2),
        Err(_) => false,
    }
}
