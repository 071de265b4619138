//! Brute-force oracles, random generators and the reduction from bipartite
//! matching to permutation distance.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::forest::{apply_op, EditOp, LabeledForest, Permutation};
use crate::matching::BipartiteGraph;

/// Largest forest the rearrangement oracle accepts (it scans all `n!` permutations).
pub const ORACLE_REARRANGEMENT_MAX_N: usize = 7;
/// Largest tree the link-and-cut oracle accepts (it explores every tree state).
pub const ORACLE_TREE_MAX_N: usize = 5;
/// Largest number of non-leaf children the isomorphism oracle pairs up exhaustively.
pub const ORACLE_PERM_MAX_BRANCHING: usize = 16;

/// Splits vertices of degree at least 4 until every degree is at most 3.
///
/// A vertex `x` with neighbours `y1..yk` keeps `y1..y(k-2)`, hands `y(k-1), yk` to
/// a new vertex `x''` on its side, and both are joined to a new vertex on the
/// other side. Each split raises the maximum matching by exactly one. Returns the
/// new graph and the number of splits.
pub fn degree_reduce(g: &BipartiteGraph) -> (BipartiteGraph, usize) {
    // adjacency per side; side 0 is left
    let mut adj: [Vec<Vec<usize>>; 2] = [vec![Vec::new(); g.left()], vec![Vec::new(); g.right()]];
    for &(l, r) in g.edges() {
        adj[0][l].push(r);
        adj[1][r].push(l);
    }
    let mut splits = 0;
    for side in 0..2 {
        let other = 1 - side;
        let mut x = 0;
        while x < adj[side].len() {
            if adj[side][x].len() < 4 {
                x += 1;
                continue;
            }
            let k = adj[side][x].len();
            let moved = adj[side][x].split_off(k - 2);
            let twin = adj[side].len();
            let hub = adj[other].len();
            for &y in &moved {
                for z in adj[other][y].iter_mut() {
                    if *z == x {
                        *z = twin;
                    }
                }
            }
            adj[side][x].push(hub);
            adj[side].push(moved);
            adj[side][twin].push(hub);
            adj[other].push(vec![x, twin]);
            splits += 1;
        }
    }
    let mut edges: Vec<(usize, usize)> = adj[0]
        .iter()
        .enumerate()
        .flat_map(|(l, rs)| rs.iter().map(move |&r| (l, r)))
        .collect();
    edges.sort_unstable();
    let reduced = BipartiteGraph::new(adj[0].len(), adj[1].len(), edges).expect("splitting keeps the graph simple");
    (reduced, splits)
}

/// What a label stands for in the trees built by [`matching_to_trees`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LabelRole {
    /// Root of the first tree; an extra leaf of the second.
    Root1,
    /// Root of the second tree; an extra leaf of the first.
    Root2,
    /// Left vertex `i`: child of the first root, extra leaf of the second tree.
    Left(usize),
    /// Right vertex `j`: child of the second root, extra leaf of the first tree.
    Right(usize),
    /// Edge `(i, j)`: a leaf under `Left(i)` and under `Right(j)`.
    Edge(usize, usize),
    /// Padding leaf under `Left(i)`; an extra leaf of the second tree.
    PadLeft(usize),
    /// Padding leaf under `Right(j)`; an extra leaf of the first tree.
    PadRight(usize),
}

/// Two isomorphic trees whose conserved labels correspond to matched edges.
#[derive(Clone, Debug)]
pub struct ReductionOutput {
    pub t1: LabeledForest,
    pub t2: LabeledForest,
    /// The degree-reduced graph with isolated vertices dropped; its vertices are
    /// the `Left`/`Right` indices of [`LabelRole`].
    pub graph: BipartiteGraph,
    /// Number of edges `m`; both sides are padded to `m` vertices.
    pub m: usize,
    /// Splits performed by [`degree_reduce`].
    pub split_count: usize,
    /// Role of every label, indexed by `label - 1`.
    pub roles: Vec<LabelRole>,
}

impl ReductionOutput {
    /// Number of nodes of each tree, `7m + 2`.
    pub fn len(&self) -> usize {
        self.t1.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t1.is_empty()
    }

    /// Extra leaves attached to each root.
    pub fn extra_leaves(&self) -> usize {
        3 * self.m + 1
    }
}

/// Builds two trees on `7m + 2` labels from a bipartite graph of maximum degree 3
/// with `m` edges, so that an isomorphism conserves exactly the edge labels of a
/// matching.
pub fn matching_to_trees(g: &BipartiteGraph) -> Result<ReductionOutput> {
    if g.max_degree() > 3 {
        return Err(Error::InvalidGraph(format!(
            "maximum degree {} exceeds 3",
            g.max_degree()
        )));
    }
    build_trees(g, 0)
}

/// [`degree_reduce`] followed by [`matching_to_trees`].
pub fn reduce_matching(g: &BipartiteGraph) -> Result<ReductionOutput> {
    let (reduced, splits) = degree_reduce(g);
    build_trees(&reduced, splits)
}

fn build_trees(g: &BipartiteGraph, split_count: usize) -> Result<ReductionOutput> {
    // renumber the non-isolated vertices of each side in ascending order
    let mut left_id = vec![usize::MAX; g.left()];
    let mut right_id = vec![usize::MAX; g.right()];
    let (mut nl, mut nr) = (0, 0);
    let mut edges: Vec<(usize, usize)> = g.edges().to_vec();
    edges.sort_unstable();
    for &(l, _) in &edges {
        if left_id[l] == usize::MAX {
            left_id[l] = nl;
            nl += 1;
        }
    }
    let mut rights: Vec<usize> = edges.iter().map(|e| e.1).collect();
    rights.sort_unstable();
    rights.dedup();
    for r in rights {
        right_id[r] = nr;
        nr += 1;
    }
    let edges: Vec<(usize, usize)> = edges.iter().map(|&(l, r)| (left_id[l], right_id[r])).collect();
    let m = edges.len();
    let compact = BipartiteGraph::new(m, m, edges.clone())?;

    let mut deg_l = vec![0; m];
    let mut deg_r = vec![0; m];
    for &(l, r) in &edges {
        deg_l[l] += 1;
        deg_r[r] += 1;
    }
    let mut roles = vec![LabelRole::Root1, LabelRole::Root2];
    roles.extend((0..m).map(LabelRole::Left));
    roles.extend((0..m).map(LabelRole::Right));
    roles.extend(edges.iter().map(|&(l, r)| LabelRole::Edge(l, r)));
    for i in 0..m {
        roles.extend(std::iter::repeat_n(LabelRole::PadLeft(i), 3 - deg_l[i]));
    }
    for j in 0..m {
        roles.extend(std::iter::repeat_n(LabelRole::PadRight(j), 3 - deg_r[j]));
    }
    debug_assert_eq!(roles.len(), 7 * m + 2);

    let left_label = |i: usize| 3 + i;
    let right_label = |j: usize| 3 + m + j;
    let (root1, root2) = (1, 2);
    let mut p1 = vec![0; roles.len()];
    let mut p2 = vec![0; roles.len()];
    for (idx, role) in roles.iter().enumerate() {
        let (a, b) = match *role {
            LabelRole::Root1 => (0, root2),
            LabelRole::Root2 => (root1, 0),
            LabelRole::Left(_) => (root1, root2),
            LabelRole::Right(_) => (root1, root2),
            LabelRole::Edge(i, j) => (left_label(i), right_label(j)),
            LabelRole::PadLeft(i) => (left_label(i), root2),
            LabelRole::PadRight(j) => (root1, right_label(j)),
        };
        p1[idx] = a;
        p2[idx] = b;
    }
    Ok(ReductionOutput {
        t1: LabeledForest::new(p1)?,
        t2: LabeledForest::new(p2)?,
        graph: compact,
        m,
        split_count,
        roles,
    })
}

/// Permutation distance by exhaustive search over isomorphisms: every bijection
/// between the non-leaf children of paired nodes is tried (through a subset
/// recursion), and leaves, which only pair with leaves, conserve exactly the labels
/// both sides share.
pub fn oracle_perm_distance(t1: &LabeledForest, t2: &LabeledForest) -> Result<usize> {
    if t1.len() != t2.len() {
        return Err(Error::SizeMismatch {
            left: t1.len(),
            right: t2.len(),
        });
    }
    let (r1, r2) = (t1.root()?, t2.root()?);
    let mut search = IsoSearch {
        c1: t1.children(),
        c2: t2.children(),
        memo: HashMap::new(),
    };
    match search.best(r1, r2)? {
        Some(conserved) => Ok(t1.len() - conserved),
        None => Err(Error::NotIsomorphic),
    }
}

struct IsoSearch {
    c1: Vec<Vec<usize>>,
    c2: Vec<Vec<usize>>,
    memo: HashMap<(usize, usize), Option<usize>>,
}

impl IsoSearch {
    /// Most labels conserved by an isomorphism of the two subtrees, or `None`.
    fn best(&mut self, u: usize, v: usize) -> Result<Option<usize>> {
        if let Some(&hit) = self.memo.get(&(u, v)) {
            return Ok(hit);
        }
        let result = self.compute(u, v)?;
        self.memo.insert((u, v), result);
        Ok(result)
    }

    fn compute(&mut self, u: usize, v: usize) -> Result<Option<usize>> {
        let own = usize::from(u == v);
        if self.c1[u].len() != self.c2[v].len() {
            return Ok(None);
        }
        let (leaves1, inner1): (Vec<usize>, Vec<usize>) = self.c1[u].iter().partition(|&&c| self.c1[c].is_empty());
        let (leaves2, inner2): (Vec<usize>, Vec<usize>) = self.c2[v].iter().partition(|&&c| self.c2[c].is_empty());
        if leaves1.len() != leaves2.len() {
            return Ok(None);
        }
        let k = inner1.len();
        if k > ORACLE_PERM_MAX_BRANCHING {
            return Err(Error::InvalidArgument(format!(
                "node {u} has {k} non-leaf children, more than the oracle handles ({ORACLE_PERM_MAX_BRANCHING})"
            )));
        }
        let shared = leaves1.iter().filter(|x| leaves2.contains(x)).count();
        let mut weight = vec![vec![None; k]; k];
        for (i, &a) in inner1.iter().enumerate() {
            for (j, &b) in inner2.iter().enumerate() {
                weight[i][j] = self.best(a, b)?;
            }
        }
        // dp[mask]: best total after pairing the first popcount(mask) children of u
        // with the children of v in `mask`
        let mut dp: Vec<Option<usize>> = vec![None; 1 << k];
        dp[0] = Some(0);
        for mask in 0usize..(1 << k) {
            let Some(base) = dp[mask] else { continue };
            let i = mask.count_ones() as usize;
            if i == k {
                continue;
            }
            for j in 0..k {
                if mask & (1 << j) == 0 {
                    if let Some(w) = weight[i][j] {
                        let next = &mut dp[mask | (1 << j)];
                        *next = Some(next.map_or(base + w, |x: usize| x.max(base + w)));
                    }
                }
            }
        }
        Ok(dp[(1 << k) - 1].map(|inner| inner + shared + own))
    }
}

/// Conflicting parents after applying `pi` to `f1`.
fn conflicts(f1: &LabeledForest, f2: &LabeledForest, pi: &Permutation) -> usize {
    let moved = apply_op(f1, &EditOp::Permute(pi.clone())).expect("sizes agree");
    (1..=f1.len())
        .filter(|&u| {
            let (a, b) = (moved.parent(u), f2.parent(u));
            a.is_some() && b.is_some() && a != b
        })
        .count()
}

/// Exact rearrangement distance of two forests: the minimum over all permutations
/// of the permutation size plus the parent conflicts that remain to be cut.
pub fn oracle_rearrangement(f1: &LabeledForest, f2: &LabeledForest) -> Result<usize> {
    let n = f1.len();
    if n != f2.len() {
        return Err(Error::SizeMismatch {
            left: n,
            right: f2.len(),
        });
    }
    if n > ORACLE_REARRANGEMENT_MAX_N {
        return Err(Error::InvalidArgument(format!(
            "oracle accepts at most {ORACLE_REARRANGEMENT_MAX_N} nodes, got {n}"
        )));
    }
    let mut best = usize::MAX;
    for images in (1..=n).permutations(n) {
        let pi = Permutation::from_images(images)?;
        let size = pi.size();
        if size >= best {
            continue;
        }
        best = best.min(size + conflicts(f1, f2, &pi));
    }
    Ok(if n == 0 { 0 } else { best })
}

/// Exact link-and-cut distance between two trees with the same root, which no
/// permutation may move: a shortest path search where the start states are the
/// root-fixing relabelings of `t1` (cost = permutation size) and every
/// link-and-cut costs one.
pub fn oracle_tree_distance(t1: &LabeledForest, t2: &LabeledForest) -> Result<usize> {
    let n = t1.len();
    if n != t2.len() {
        return Err(Error::SizeMismatch {
            left: n,
            right: t2.len(),
        });
    }
    let (r1, r2) = (t1.root()?, t2.root()?);
    if r1 != r2 {
        return Err(Error::RootMismatch { left: r1, right: r2 });
    }
    if n > ORACLE_TREE_MAX_N {
        return Err(Error::InvalidArgument(format!(
            "oracle accepts at most {ORACLE_TREE_MAX_N} nodes, got {n}"
        )));
    }
    let target = t2.parents().to_vec();
    let mut dist: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut heap = BinaryHeap::new();
    for images in (1..=n).permutations(n) {
        if images[r1 - 1] != r1 {
            continue;
        }
        let pi = Permutation::from_images(images)?;
        let start = apply_op(t1, &EditOp::Permute(pi.clone()))?.parents().to_vec();
        let cost = pi.size();
        if dist.get(&start).is_none_or(|&d| cost < d) {
            dist.insert(start.clone(), cost);
            heap.push(Reverse((cost, start)));
        }
    }
    while let Some(Reverse((d, state))) = heap.pop() {
        if dist.get(&state).is_some_and(|&best| best < d) {
            continue;
        }
        if state == target {
            return Ok(d);
        }
        let forest = LabeledForest::new(state.clone())?;
        for v in 1..=n {
            let Some(u) = forest.parent(v) else { continue };
            for w in 1..=n {
                if w == u || forest.is_descendant(w, v) {
                    continue;
                }
                let mut next = state.clone();
                next[v - 1] = w;
                if dist.get(&next).is_none_or(|&best| d + 1 < best) {
                    dist.insert(next.clone(), d + 1);
                    heap.push(Reverse((d + 1, next)));
                }
            }
        }
    }
    Err(Error::Invariant("target tree unreachable".into()))
}

/// Random recursive tree: node `i` of a hidden order picks a uniformly random
/// earlier node as parent, then labels are shuffled.
pub fn random_tree(n: usize, seed: u64) -> Result<LabeledForest> {
    random_tree_windowed(n, n, seed)
}

/// Like [`random_tree`], but node `i` picks its parent among the `window` nodes
/// just before it. Small windows give deep, path-like trees.
pub fn random_tree_windowed(n: usize, window: usize, seed: u64) -> Result<LabeledForest> {
    if n == 0 {
        return Err(Error::InvalidArgument("a tree needs at least one node".into()));
    }
    if window == 0 {
        return Err(Error::InvalidArgument("window must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut shape = vec![usize::MAX; n];
    for i in 1..n {
        shape[i] = rng.gen_range(i.saturating_sub(window)..i);
    }
    shuffled_labels(&shape, &mut rng)
}

/// Random forest with `roots` trees.
pub fn random_forest(n: usize, roots: usize, seed: u64) -> Result<LabeledForest> {
    if roots == 0 || roots > n {
        return Err(Error::InvalidArgument(format!(
            "cannot build {roots} roots on {n} nodes"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut shape = vec![usize::MAX; n];
    for (i, slot) in shape.iter_mut().enumerate().skip(roots) {
        *slot = rng.gen_range(0..i);
    }
    shuffled_labels(&shape, &mut rng)
}

/// Turns a shape (parent position, or `usize::MAX` for roots) into a labelled forest.
fn shuffled_labels(shape: &[usize], rng: &mut ChaCha8Rng) -> Result<LabeledForest> {
    let n = shape.len();
    let mut label: Vec<usize> = (1..=n).collect();
    label.shuffle(rng);
    let mut parent = vec![0; n];
    for (i, &p) in shape.iter().enumerate() {
        parent[label[i] - 1] = if p == usize::MAX { 0 } else { label[p] };
    }
    LabeledForest::new(parent)
}

/// Applies a random permutation of `k` randomly chosen labels.
pub fn random_relabel(tree: &LabeledForest, k: usize, seed: u64) -> Result<LabeledForest> {
    let n = tree.len();
    if k > n {
        return Err(Error::InvalidArgument(format!("cannot move {k} of {n} labels")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let chosen: Vec<usize> = rand::seq::index::sample(&mut rng, n, k)
        .into_iter()
        .map(|i| i + 1)
        .collect();
    let mut targets = chosen.clone();
    targets.shuffle(&mut rng);
    let mut image: Vec<usize> = (1..=n).collect();
    for (&x, &y) in chosen.iter().zip(&targets) {
        image[x - 1] = y;
    }
    apply_op(tree, &EditOp::Permute(Permutation::from_images(image)?))
}
