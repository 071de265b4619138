//! Exact permutation distance between two isomorphic trees.
//!
//! `γ(u, v)` is the largest number of labels conserved by an isomorphism of
//! `T1|u` onto `T2|v`, and the distance is `n - γ(root1, root2)`. It satisfies
//! `γ(u, v) = M(G(u, v)) + [u = v]`, where the distance graph `G(u, v)` joins
//! isomorphic children of `u` and `v` with weight `γ` and `M` is a maximum weight
//! matching.
//!
//! [`gamma_baseline`] evaluates every distance graph. [`gamma_fast`] only builds
//! the graphs that contain an edge off the heavy paths (type 1) or sit on the
//! diagonal (type 2); every other pair inherits `γ` from its heavy children, which
//! is answered from per path-pair level lists.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::forest::{LabeledForest, Permutation};
use crate::hpd::{ancestor_pairs, decompose_consistent, HeavyPathDecomposition};
use crate::iso::{canonical_ids, CanonicalIds};
use crate::matching::{max_weight_matching, max_weight_matching_oracle, WeightedBipartiteGraph};

/// Canonical ids and consistent decompositions of two isomorphic trees.
struct Prepared {
    ids: CanonicalIds,
    h1: HeavyPathDecomposition,
    h2: HeavyPathDecomposition,
    r1: usize,
    r2: usize,
}

fn prepare(t1: &LabeledForest, t2: &LabeledForest) -> Result<Prepared> {
    if t1.len() != t2.len() {
        return Err(Error::SizeMismatch {
            left: t1.len(),
            right: t2.len(),
        });
    }
    let r1 = t1.root()?;
    let r2 = t2.root()?;
    let ids = canonical_ids(t1, t2)?;
    if ids.id1(r1) != ids.id2(r2) {
        return Err(Error::NotIsomorphic);
    }
    let (h1, h2) = decompose_consistent(t1, t2, &ids);
    Ok(Prepared { ids, h1, h2, r1, r2 })
}

/// γ for every same-level pair with isomorphic subtrees, computed directly.
#[derive(Clone, Debug)]
pub struct BaselineGamma {
    root: (usize, usize),
    values: HashMap<(usize, usize), u64>,
}

impl BaselineGamma {
    /// `γ(u, v)`; 0 for pairs that are not isomorphic or not on the same level.
    pub fn gamma(&self, u: usize, v: usize) -> u64 {
        self.values.get(&(u, v)).copied().unwrap_or(0)
    }

    pub fn root_gamma(&self) -> u64 {
        self.gamma(self.root.0, self.root.1)
    }
}

/// Bottom-up evaluation of every distance graph with the reference matcher.
pub fn gamma_baseline(t1: &LabeledForest, t2: &LabeledForest) -> Result<BaselineGamma> {
    let p = prepare(t1, t2)?;
    let (ch1, ch2) = (t1.children(), t2.children());
    let (lv1, lv2) = (t1.level_table(), t2.level_table());
    let depth = lv1[1..].iter().chain(&lv2[1..]).copied().max().unwrap_or(0);
    let mut by_level1 = vec![Vec::new(); depth + 1];
    let mut by_level2: Vec<HashMap<u32, Vec<usize>>> = vec![HashMap::new(); depth + 1];
    for u in 1..=t1.len() {
        by_level1[lv1[u]].push(u);
        by_level2[lv2[u]].entry(p.ids.id2(u)).or_default().push(u);
    }
    let mut values = HashMap::new();
    for level in (0..=depth).rev() {
        for &u in &by_level1[level] {
            let Some(partners) = by_level2[level].get(&p.ids.id1(u)) else {
                continue;
            };
            for &v in partners {
                let mut edges = Vec::new();
                for (i, &a) in ch1[u].iter().enumerate() {
                    for (j, &b) in ch2[v].iter().enumerate() {
                        if p.ids.id1(a) == p.ids.id2(b) {
                            if let Some(&g) = values.get(&(a, b)) {
                                edges.push((i, j, g));
                            }
                        }
                    }
                }
                let graph = WeightedBipartiteGraph::new(ch1[u].len(), ch2[v].len(), edges)?;
                let gamma = max_weight_matching_oracle(&graph).weight + u64::from(u == v);
                if gamma > 0 {
                    values.insert((u, v), gamma);
                }
            }
        }
    }
    Ok(BaselineGamma {
        root: (p.r1, p.r2),
        values,
    })
}

/// Keys of the distance graphs that are built explicitly.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Classification {
    /// Graphs with at least one non-special edge.
    pub type1: BTreeSet<(usize, usize)>,
    /// Diagonal graphs `(u, u)` without non-special edges.
    pub type2: BTreeSet<(usize, usize)>,
}

impl Classification {
    pub fn contains(&self, key: (usize, usize)) -> bool {
        self.type1.contains(&key) || self.type2.contains(&key)
    }

    pub fn len(&self) -> usize {
        self.type1.len() + self.type2.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Walks the heavy-path ancestor pairs of `(u, u)` and reports every non-special
/// edge `(z, w)` that label `u` can be conserved through, as `(parent key, edge)`.
///
/// A pair jumped over by the walk consists of two heavy children whose parents
/// pair up isomorphically, so it is isomorphic itself; checking the reported pairs
/// and their parents therefore checks the whole chain from `u` upward.
fn for_each_nonspecial(p: &Prepared, mut emit: impl FnMut((usize, usize), (usize, usize))) {
    let ids = &p.ids;
    for u in 1..=p.h1.len() {
        if p.h1.level(u) != p.h2.level(u) || ids.id1(u) != ids.id2(u) {
            continue;
        }
        let walk = ancestor_pairs(&p.h1, &p.h2, u, u).expect("levels checked above");
        for (z, w) in walk {
            if ids.id1(z) != ids.id2(w) {
                break;
            }
            let (Some(pz), Some(pw)) = (p.h1.parent(z), p.h2.parent(w)) else {
                break;
            };
            if ids.id1(pz) != ids.id2(pw) {
                break;
            }
            emit((pz, pw), (z, w));
        }
    }
}

fn classify(p: &Prepared) -> Classification {
    let mut class = Classification::default();
    for_each_nonspecial(p, |key, _| {
        class.type1.insert(key);
    });
    for u in 1..=p.h1.len() {
        if p.h1.level(u) == p.h2.level(u) && p.ids.id1(u) == p.ids.id2(u) && !class.type1.contains(&(u, u)) {
            class.type2.insert((u, u));
        }
    }
    class
}

/// Identifies the type 1 and type 2 distance graphs of two isomorphic trees.
pub fn classify_graphs(t1: &LabeledForest, t2: &LabeledForest) -> Result<Classification> {
    Ok(classify(&prepare(t1, t2)?))
}

/// A type 1 or type 2 distance graph without weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceGraph {
    pub key: (usize, usize),
    pub level: usize,
    /// The edge between the two heavy children, when both exist.
    pub special: Option<(usize, usize)>,
    /// Non-special edges sorted ascending.
    pub edges: Vec<(usize, usize)>,
    /// `Γ(u, v)`: 1 on the diagonal.
    pub bonus: u64,
}

fn populate(p: &Prepared, class: &Classification) -> BTreeMap<(usize, usize), DistanceGraph> {
    let mut graphs: BTreeMap<(usize, usize), DistanceGraph> = class
        .type1
        .iter()
        .chain(&class.type2)
        .map(|&(u, v)| {
            let special = match (p.h1.heavy_child(u), p.h2.heavy_child(v)) {
                (Some(a), Some(b)) => Some((a, b)),
                _ => None,
            };
            let g = DistanceGraph {
                key: (u, v),
                level: p.h1.level(u),
                special,
                edges: Vec::new(),
                bonus: u64::from(u == v),
            };
            ((u, v), g)
        })
        .collect();
    for_each_nonspecial(p, |key, edge| {
        graphs
            .get_mut(&key)
            .expect("classified in the first sweep")
            .edges
            .push(edge);
    });
    for g in graphs.values_mut() {
        g.edges.sort_unstable();
        g.edges.dedup();
    }
    graphs
}

/// Builds the type 1 and type 2 distance graphs with their special and non-special edges.
pub fn populate_edges(
    t1: &LabeledForest,
    t2: &LabeledForest,
    class: &Classification,
) -> Result<BTreeMap<(usize, usize), DistanceGraph>> {
    Ok(populate(&prepare(t1, t2)?, class))
}

/// Computed `γ` values of the explicit graphs, plus one level list per pair of
/// heavy paths, ordered by decreasing level.
#[derive(Clone, Debug, Default)]
pub struct GammaIndex {
    values: BTreeMap<(usize, usize), u64>,
    lists: HashMap<(usize, usize), Vec<(usize, u64)>>,
}

impl GammaIndex {
    /// Records `γ(u, v)`. Calls must come in non-increasing level order.
    pub fn record(&mut self, h1: &HeavyPathDecomposition, h2: &HeavyPathDecomposition, u: usize, v: usize, gamma: u64) {
        let level = h1.level(u);
        self.values.insert((u, v), gamma);
        let list = self.lists.entry((h1.head(u), h2.head(v))).or_default();
        debug_assert!(list.last().is_none_or(|&(l, _)| l > level));
        list.push((level, gamma));
    }

    pub fn get(&self, u: usize, v: usize) -> Option<u64> {
        self.values.get(&(u, v)).copied()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn lookup(&self, h1: &HeavyPathDecomposition, h2: &HeavyPathDecomposition, u: usize, v: usize) -> u64 {
        if let Some(g) = self.get(u, v) {
            return g;
        }
        let level = h1.level(u);
        let Some(list) = self.lists.get(&(h1.head(u), h2.head(v))) else {
            return 0;
        };
        // entries at level >= `level` form a prefix; the deepest-first list puts the
        // shallowest of them last
        match list.partition_point(|&(l, _)| l >= level) {
            0 => 0,
            i => list[i - 1].1,
        }
    }
}

/// `γ(u, v)` for a same-level pair whose deeper levels are all in `index`.
pub fn gamma_lookup(
    index: &GammaIndex,
    h1: &HeavyPathDecomposition,
    h2: &HeavyPathDecomposition,
    u: usize,
    v: usize,
) -> Result<u64> {
    if u == 0 || u > h1.len() || v == 0 || v > h2.len() {
        return Err(Error::InvalidArgument(format!("pair ({u}, {v}) is out of range")));
    }
    if h1.level(u) != h2.level(v) {
        return Err(Error::InvalidArgument(format!(
            "nodes {u} and {v} are on different levels"
        )));
    }
    Ok(index.lookup(h1, h2, u, v))
}

/// Counters gathered by [`gamma_fast_detailed`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GammaStats {
    pub type1: usize,
    pub type2: usize,
    pub nonspecial_edges: usize,
    /// Total `γ` weight of the non-special edges.
    pub nonspecial_weight: u64,
    /// Unweighted matching instances solved, and their total edge count.
    pub matching_instances: usize,
    pub instance_edges: u64,
}

/// A processed explicit graph with its weights, kept on request for checking.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeighedGraph {
    pub key: (usize, usize),
    pub special: Option<(usize, usize, u64)>,
    pub edges: Vec<(usize, usize, u64)>,
    /// `M(G')`, without the special edge.
    pub without_special: u64,
    /// `M(G'')`, without any edge at the heavy children.
    pub without_heavy: u64,
    pub gamma: u64,
}

/// Output of the fast algorithm.
#[derive(Clone, Debug)]
pub struct FastGamma {
    pub gamma: u64,
    pub stats: GammaStats,
    /// Filled only when recording was requested.
    pub graphs: Vec<WeighedGraph>,
    index: GammaIndex,
    chosen: BTreeMap<(usize, usize), Vec<(usize, usize)>>,
    h1: HeavyPathDecomposition,
    h2: HeavyPathDecomposition,
    ids: CanonicalIds,
    roots: (usize, usize),
}

impl FastGamma {
    pub fn index(&self) -> &GammaIndex {
        &self.index
    }

    /// `γ(u, v)` for any pair of nodes; 0 unless they are on the same level with
    /// isomorphic subtrees.
    pub fn gamma_of(&self, u: usize, v: usize) -> Result<u64> {
        if u == 0 || u > self.h1.len() || v == 0 || v > self.h2.len() {
            return Err(Error::InvalidArgument(format!("pair ({u}, {v}) is out of range")));
        }
        if self.h1.level(u) != self.h2.level(v) || self.ids.id1(u) != self.ids.id2(v) {
            return Ok(0);
        }
        gamma_lookup(&self.index, &self.h1, &self.h2, u, v)
    }
}

/// Maximum weight matching of local edges `(left, right, w)` given in global labels.
fn matching_of(edges: &[(usize, usize, u64)], stats: &mut GammaStats) -> (u64, Vec<(usize, usize)>) {
    if edges.is_empty() {
        return (0, Vec::new());
    }
    let mut left: Vec<usize> = edges.iter().map(|e| e.0).collect();
    let mut right: Vec<usize> = edges.iter().map(|e| e.1).collect();
    left.sort_unstable();
    left.dedup();
    right.sort_unstable();
    right.dedup();
    let local: Vec<(usize, usize, u64)> = edges
        .iter()
        .map(|&(a, b, w)| (left.binary_search(&a).unwrap(), right.binary_search(&b).unwrap(), w))
        .collect();
    let graph = WeightedBipartiteGraph::new(left.len(), right.len(), local).expect("distance graph edges are distinct");
    let result = max_weight_matching(&graph);
    stats.matching_instances += result.instances;
    stats.instance_edges += result.instance_edges;
    (
        result.weight,
        result
            .matching
            .pairs
            .iter()
            .map(|&(i, j)| (left[i], right[j]))
            .collect(),
    )
}

/// `γ(root1, root2)` by the heavy-path algorithm.
pub fn gamma_fast(t1: &LabeledForest, t2: &LabeledForest) -> Result<u64> {
    Ok(gamma_fast_detailed(t1, t2, false)?.gamma)
}

/// The heavy-path algorithm, returning its index, statistics and optionally
/// every weighted graph it processed.
pub fn gamma_fast_detailed(t1: &LabeledForest, t2: &LabeledForest, record: bool) -> Result<FastGamma> {
    let p = prepare(t1, t2)?;
    let class = classify(&p);
    let graphs = populate(&p, &class);
    let mut stats = GammaStats {
        type1: class.type1.len(),
        type2: class.type2.len(),
        ..GammaStats::default()
    };

    let mut order: Vec<&DistanceGraph> = graphs.values().collect();
    order.sort_by_key(|g| (std::cmp::Reverse(g.level), g.key));

    let mut index = GammaIndex::default();
    let mut chosen = BTreeMap::new();
    let mut recorded = Vec::new();
    let mut weighted = Vec::new();
    for g in order {
        let (u, v) = g.key;
        weighted.clear();
        for &(z, w) in &g.edges {
            let weight = index.lookup(&p.h1, &p.h2, z, w);
            stats.nonspecial_edges += 1;
            stats.nonspecial_weight += weight;
            if weight > 0 {
                weighted.push((z, w, weight));
            }
        }
        let special = g.special.map(|(a, b)| (a, b, index.lookup(&p.h1, &p.h2, a, b)));

        let (without_special, pairs_a) = matching_of(&weighted, &mut stats);
        let (mut best, mut pairs) = (without_special, pairs_a);
        let mut without_heavy = without_special;
        if let Some((a, b, ws)) = special {
            let rest: Vec<_> = weighted.iter().copied().filter(|e| e.0 != a && e.1 != b).collect();
            let (m, mut pairs_b) = matching_of(&rest, &mut stats);
            without_heavy = m;
            if ws > 0 && m + ws > best {
                best = m + ws;
                pairs_b.push((a, b));
                pairs = pairs_b;
            }
        }
        let gamma = best + g.bonus;
        index.record(&p.h1, &p.h2, u, v, gamma);
        chosen.insert((u, v), pairs);
        if record {
            recorded.push(WeighedGraph {
                key: (u, v),
                special,
                edges: weighted.clone(),
                without_special,
                without_heavy,
                gamma,
            });
        }
    }
    let gamma = index.lookup(&p.h1, &p.h2, p.r1, p.r2);
    Ok(FastGamma {
        gamma,
        stats,
        graphs: recorded,
        index,
        chosen,
        h1: p.h1,
        h2: p.h2,
        ids: p.ids,
        roots: (p.r1, p.r2),
    })
}

/// Minimum size of a permutation turning `t1` into `t2`.
pub fn permutation_distance(t1: &LabeledForest, t2: &LabeledForest) -> Result<usize> {
    let gamma = gamma_fast(t1, t2)?;
    Ok(t1.len() - gamma as usize)
}

/// A permutation of minimum size transforming `t1` into `t2`.
pub fn recover_permutation(t1: &LabeledForest, t2: &LabeledForest) -> Result<Permutation> {
    let fast = gamma_fast_detailed(t1, t2, false)?;
    permutation_from(&fast, t1, t2)
}

/// Descends from the roots through the matchings chosen by the fast algorithm,
/// pairing the remaining children by canonical id.
pub fn permutation_from(fast: &FastGamma, t1: &LabeledForest, t2: &LabeledForest) -> Result<Permutation> {
    let n = t1.len();
    let (ch1, ch2) = (t1.children(), t2.children());
    let ids = &fast.ids;
    let mut image = vec![0usize; n + 1];
    let mut stack = vec![fast.roots];
    let mut forced = Vec::new();
    let mut taken1 = vec![false; n + 1];
    let mut taken2 = vec![false; n + 1];
    let mut pending: HashMap<u32, Vec<usize>> = HashMap::new();
    while let Some((u, v)) = stack.pop() {
        image[u] = v;
        forced.clear();
        if let Some(pairs) = fast.chosen.get(&(u, v)) {
            forced.extend_from_slice(pairs);
        } else if let (Some(a), Some(b)) = (fast.h1.heavy_child(u), fast.h2.heavy_child(v)) {
            forced.push((a, b));
        }
        for &(a, b) in &forced {
            taken1[a] = true;
            taken2[b] = true;
            stack.push((a, b));
        }
        pending.clear();
        for &b in ch2[v].iter().rev() {
            if !taken2[b] {
                pending.entry(ids.id2(b)).or_default().push(b);
            }
        }
        for &a in &ch1[u] {
            if taken1[a] {
                continue;
            }
            let b = pending
                .get_mut(&ids.id1(a))
                .and_then(Vec::pop)
                .ok_or(Error::NotIsomorphic)?;
            stack.push((a, b));
        }
    }
    let pi = Permutation::from_images(image[1..].to_vec())?;
    let fixed = (1..=n).filter(|&u| pi.apply(u) == u).count() as u64;
    if fixed != fast.gamma {
        return Err(Error::Invariant(format!(
            "recovered mapping conserves {fixed} labels, expected {}",
            fast.gamma
        )));
    }
    Ok(pi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::{apply_op, EditOp};
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn forest(p: &[usize]) -> LabeledForest {
        LabeledForest::new(p.to_vec()).unwrap()
    }

    fn random_shape(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
        let window = rng.gen_range(1..=n.max(1));
        let mut p = vec![0];
        for i in 1..n {
            let lo = i.saturating_sub(window).max(1);
            p.push(rng.gen_range(lo..=i));
        }
        p
    }

    /// Relabels `shape` with a random permutation that moves about `k` labels.
    fn relabel(rng: &mut ChaCha8Rng, shape: &[usize], k: usize) -> LabeledForest {
        let n = shape.len();
        let mut image: Vec<usize> = (0..=n).collect();
        let mut moved: Vec<usize> = (1..=n).collect();
        moved.shuffle(rng);
        moved.truncate(k.min(n));
        let mut targets = moved.clone();
        targets.shuffle(rng);
        for (&a, &b) in moved.iter().zip(&targets) {
            image[a] = b;
        }
        let mut parent = vec![0; n];
        for u in 1..=n {
            let p = shape[u - 1];
            parent[image[u] - 1] = if p == 0 { 0 } else { image[p] };
        }
        forest(&parent)
    }

    fn random_pair(rng: &mut ChaCha8Rng, max_n: usize) -> (LabeledForest, LabeledForest) {
        let n = rng.gen_range(1..=max_n);
        let shape = random_shape(rng, n);
        let k1 = rng.gen_range(0..=n);
        let k2 = rng.gen_range(0..=n);
        (relabel(rng, &shape, k1), relabel(rng, &shape, k2))
    }

    /// Types by the definitions, from fully built distance graphs.
    fn brute_classify(t1: &LabeledForest, t2: &LabeledForest) -> Classification {
        let base = gamma_baseline(t1, t2).unwrap();
        let ids = canonical_ids(t1, t2).unwrap();
        let (h1, h2) = decompose_consistent(t1, t2, &ids);
        let (ch1, ch2) = (t1.children(), t2.children());
        let mut class = Classification::default();
        for u in 1..=t1.len() {
            for v in 1..=t2.len() {
                if h1.level(u) != h2.level(v) || ids.id1(u) != ids.id2(v) {
                    continue;
                }
                let special = (h1.heavy_child(u), h2.heavy_child(v));
                let nonspecial = ch1[u].iter().any(|&a| {
                    ch2[v]
                        .iter()
                        .any(|&b| base.gamma(a, b) > 0 && (Some(a), Some(b)) != special)
                });
                if nonspecial {
                    class.type1.insert((u, v));
                } else if u == v {
                    class.type2.insert((u, v));
                }
            }
        }
        class
    }

    #[test]
    fn baseline_examples() {
        let t = forest(&[0, 1, 1]);
        assert_eq!(gamma_baseline(&t, &t).unwrap().root_gamma(), 3);
        assert_eq!(gamma_baseline(&t, &forest(&[2, 0, 2])).unwrap().root_gamma(), 1);
        assert_eq!(gamma_baseline(&forest(&[0]), &forest(&[0])).unwrap().root_gamma(), 1);
        assert_eq!(
            gamma_baseline(&t, &forest(&[0, 1, 2])).unwrap_err(),
            Error::NotIsomorphic
        );
    }

    #[test]
    fn fast_examples() {
        let t = forest(&[0, 1, 1]);
        assert_eq!(gamma_fast(&t, &t).unwrap(), 3);
        assert_eq!(gamma_fast(&t, &forest(&[2, 0, 2])).unwrap(), 1);
        assert_eq!(permutation_distance(&t, &forest(&[2, 0, 2])).unwrap(), 2);
        let big = forest(&[0, 1, 1, 2, 2, 3, 6, 6, 1, 9]);
        assert_eq!(gamma_fast(&big, &big).unwrap(), 10);
        assert_eq!(permutation_distance(&big, &big).unwrap(), 0);
        assert_eq!(gamma_fast(&t, &forest(&[0, 1, 2])).unwrap_err(), Error::NotIsomorphic);
        assert!(matches!(
            gamma_fast(&t, &forest(&[0, 1])),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn classification_examples() {
        let single = forest(&[0]);
        let c = classify_graphs(&single, &single).unwrap();
        assert!(c.type1.is_empty());
        assert_eq!(c.type2, BTreeSet::from([(1, 1)]));

        let t = forest(&[0, 1, 1]);
        let c = classify_graphs(&t, &t).unwrap();
        assert!(c.len() <= 3);
        let graphs = populate_edges(&t, &t, &c).unwrap();
        let g = &graphs[&(1, 1)];
        assert_eq!(g.special, Some((2, 2)));
        assert_eq!(g.edges, vec![(3, 3)]);
        assert!(graphs[&(2, 2)].edges.is_empty() && graphs[&(2, 2)].special.is_none());

        // a derangement on every non-root level leaves no diagonal pair
        let t1 = forest(&[0, 1, 1, 2, 3]);
        let t2 = forest(&[0, 1, 1, 3, 2]);
        let c = classify_graphs(&t1, &t2).unwrap();
        assert_eq!(c, brute_classify(&t1, &t2));
    }

    #[test]
    fn classification_matches_definitions() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..300 {
            let (t1, t2) = random_pair(&mut rng, 30);
            assert_eq!(classify_graphs(&t1, &t2).unwrap(), brute_classify(&t1, &t2));
        }
        for _ in 0..50 {
            let n = rng.gen_range(1..=40);
            let t = forest(&random_shape(&mut rng, n));
            assert!(classify_graphs(&t, &t).unwrap().len() <= n);
        }
    }

    #[test]
    fn fast_matches_baseline_everywhere() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..500 {
            let (t1, t2) = random_pair(&mut rng, 200);
            let base = gamma_baseline(&t1, &t2).unwrap();
            let fast = gamma_fast_detailed(&t1, &t2, true).unwrap();
            assert_eq!(fast.gamma, base.root_gamma());
            let n = t1.len() as u64;
            let log = (n as f64).log2().ceil() as u64;
            assert!(fast.stats.nonspecial_weight <= 2 * n * log);
            // G' and G'' are both solved, each within the non-special weight
            assert!(fast.stats.instance_edges <= 2 * fast.stats.nonspecial_weight);
            for u in 1..=t1.len() {
                for v in 1..=t2.len() {
                    assert_eq!(fast.gamma_of(u, v).unwrap(), base.gamma(u, v), "pair ({u}, {v})");
                }
            }
        }
    }

    #[test]
    fn split_at_the_special_edge_is_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let (t1, t2) = random_pair(&mut rng, 60);
            let fast = gamma_fast_detailed(&t1, &t2, true).unwrap();
            for g in &fast.graphs {
                let mut edges = g.edges.clone();
                let mut special_weight = 0;
                if let Some(s) = g.special {
                    special_weight = s.2;
                    if s.2 > 0 {
                        edges.push(s);
                    }
                }
                let mut left: Vec<usize> = edges.iter().map(|e| e.0).collect();
                let mut right: Vec<usize> = edges.iter().map(|e| e.1).collect();
                left.sort_unstable();
                left.dedup();
                right.sort_unstable();
                right.dedup();
                let local = edges
                    .iter()
                    .map(|&(a, b, w)| (left.binary_search(&a).unwrap(), right.binary_search(&b).unwrap(), w))
                    .collect();
                let whole = WeightedBipartiteGraph::new(left.len(), right.len(), local).unwrap();
                let direct = max_weight_matching_oracle(&whole).weight;
                let split = g.without_special.max(if special_weight > 0 {
                    g.without_heavy + special_weight
                } else {
                    0
                });
                assert_eq!(split, direct);
                assert_eq!(g.gamma, direct + u64::from(g.key.0 == g.key.1));
            }
        }
    }

    #[test]
    fn lookup_cases() {
        // a path pair carrying one diagonal entry
        let t1 = forest(&[0, 1, 2]);
        let t2 = forest(&[0, 1, 2]);
        let fast = gamma_fast_detailed(&t1, &t2, false).unwrap();
        assert_eq!(fast.index().get(3, 3), Some(1));
        assert_eq!(fast.gamma_of(1, 1).unwrap(), 3);

        // two leaves swapped: the type-3 chain (2, 3) bottoms out at leaves
        let t1 = forest(&[0, 1, 1]);
        let t2 = forest(&[0, 1, 1]);
        let fast = gamma_fast_detailed(&t1, &t2, false).unwrap();
        assert_eq!(fast.index().get(2, 3), None);
        assert_eq!(fast.gamma_of(2, 3).unwrap(), 0);
        assert!(gamma_lookup(fast.index(), &fast.h1, &fast.h2, 1, 2).is_err());
    }

    #[test]
    fn recovered_permutation_is_optimal() {
        let t = forest(&[0, 1, 1, 2]);
        assert!(recover_permutation(&t, &t).unwrap().is_identity());
        let (a, b) = (forest(&[0, 1, 1]), forest(&[2, 0, 2]));
        let pi = recover_permutation(&a, &b).unwrap();
        assert_eq!(pi.size(), 2);
        assert_eq!(apply_op(&a, &EditOp::Permute(pi)).unwrap(), b);

        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..300 {
            let (t1, t2) = random_pair(&mut rng, 120);
            let pi = recover_permutation(&t1, &t2).unwrap();
            assert_eq!(pi.size(), permutation_distance(&t1, &t2).unwrap());
            assert_eq!(apply_op(&t1, &EditOp::Permute(pi)).unwrap(), t2);
        }
    }

    #[test]
    fn gamma_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..100 {
            let (t1, t2) = random_pair(&mut rng, 50);
            let base = gamma_baseline(&t1, &t2).unwrap();
            let ids = canonical_ids(&t1, &t2).unwrap();
            for u in 1..=t1.len() {
                for v in 1..=t2.len() {
                    let g = base.gamma(u, v);
                    if g > 0 {
                        assert!(g as usize <= ids.subtree_size(ids.id1(u)));
                    }
                    if u == v && ids.id1(u) == ids.id2(v) && t1.level_table()[u] == t2.level_table()[v] {
                        assert!(g >= 1);
                    }
                }
            }
        }
    }
}
