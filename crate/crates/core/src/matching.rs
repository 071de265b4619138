//! Bipartite matching.
//!
//! * [`max_matching`]: Hopcroft–Karp for maximum cardinality.
//! * [`max_weight_matching`]: exact maximum weight matching for positive integer
//!   weights, computed as a sequence of unweighted maximum matchings (Kao, Lam,
//!   Sung and Ting). Each round matches the heaviest edges, takes a minimum vertex
//!   cover of them and lowers every covered edge by one per covered endpoint. Every
//!   edge of a round loses weight, so the rounds touch at most `N` edges in total,
//!   where `N` is the total weight.
//! * [`max_weight_matching_oracle`]: Hungarian method, used as a reference.
//!
//! Vertices are 0-based on each side; the graph file format is 1-based.

use std::collections::VecDeque;

use crate::error::{Error, Result};

const NONE: usize = usize::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    left: usize,
    right: usize,
    edges: Vec<(usize, usize)>,
}

impl BipartiteGraph {
    pub fn new(left: usize, right: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        check_edges(left, right, edges.iter().map(|&(l, r)| (l, r)))?;
        Ok(BipartiteGraph { left, right, edges })
    }

    pub fn left(&self) -> usize {
        self.left
    }

    pub fn right(&self) -> usize {
        self.right
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Adjacency of the left side, each list sorted ascending.
    pub fn left_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.left];
        for &(l, r) in &self.edges {
            adj[l].push(r);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn max_degree(&self) -> usize {
        let mut deg_l = vec![0; self.left];
        let mut deg_r = vec![0; self.right];
        for &(l, r) in &self.edges {
            deg_l[l] += 1;
            deg_r[r] += 1;
        }
        deg_l.into_iter().chain(deg_r).max().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedBipartiteGraph {
    left: usize,
    right: usize,
    edges: Vec<(usize, usize, u64)>,
}

impl WeightedBipartiteGraph {
    pub fn new(left: usize, right: usize, edges: Vec<(usize, usize, u64)>) -> Result<Self> {
        check_edges(left, right, edges.iter().map(|&(l, r, _)| (l, r)))?;
        if let Some(&(l, r, _)) = edges.iter().find(|e| e.2 == 0) {
            return Err(Error::InvalidGraph(format!("edge ({l}, {r}) has weight 0")));
        }
        Ok(WeightedBipartiteGraph { left, right, edges })
    }

    pub fn left(&self) -> usize {
        self.left
    }

    pub fn right(&self) -> usize {
        self.right
    }

    pub fn edges(&self) -> &[(usize, usize, u64)] {
        &self.edges
    }

    pub fn total_weight(&self) -> u64 {
        self.edges.iter().map(|e| e.2).sum()
    }

    /// Drops the weights.
    pub fn unweighted(&self) -> BipartiteGraph {
        BipartiteGraph {
            left: self.left,
            right: self.right,
            edges: self.edges.iter().map(|&(l, r, _)| (l, r)).collect(),
        }
    }

    /// Parses `nL nR m` followed by `m` lines `i j [w]` (1-based, weight defaults to 1).
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let ints = |line: usize, l: &str| -> Result<Vec<u64>> {
            l.split_whitespace()
                .map(|t| {
                    t.parse::<u64>().map_err(|_| Error::Parse {
                        line,
                        msg: format!("bad integer {t:?}"),
                    })
                })
                .collect()
        };
        let (line, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing header".into(),
        })?;
        let header = ints(line, header)?;
        let &[nl, nr, m] = header.as_slice() else {
            return Err(Error::Parse {
                line,
                msg: "header must be `nL nR m`".into(),
            });
        };
        let mut edges = Vec::with_capacity(m as usize);
        for (line, l) in lines.by_ref().take(m as usize) {
            let e = ints(line, l)?;
            let (i, j, w) = match *e.as_slice() {
                [i, j] => (i, j, 1),
                [i, j, w] => (i, j, w),
                _ => {
                    return Err(Error::Parse {
                        line,
                        msg: "edge must be `i j [w]`".into(),
                    })
                }
            };
            if i == 0 || j == 0 {
                return Err(Error::Parse {
                    line,
                    msg: "vertices are 1-based".into(),
                });
            }
            edges.push((i as usize - 1, j as usize - 1, w));
        }
        if edges.len() != m as usize {
            return Err(Error::Parse {
                line,
                msg: format!("expected {m} edges, found {}", edges.len()),
            });
        }
        if let Some((line, _)) = lines.next() {
            return Err(Error::Parse {
                line,
                msg: "trailing content after the edge list".into(),
            });
        }
        WeightedBipartiteGraph::new(nl as usize, nr as usize, edges)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.left, self.right, self.edges.len());
        for &(l, r, w) in &self.edges {
            out.push_str(&format!("{} {} {}\n", l + 1, r + 1, w));
        }
        out
    }
}

impl From<&BipartiteGraph> for WeightedBipartiteGraph {
    fn from(g: &BipartiteGraph) -> Self {
        WeightedBipartiteGraph {
            left: g.left,
            right: g.right,
            edges: g.edges.iter().map(|&(l, r)| (l, r, 1)).collect(),
        }
    }
}

fn check_edges(left: usize, right: usize, edges: impl Iterator<Item = (usize, usize)>) -> Result<()> {
    let mut seen = std::collections::HashSet::new();
    for (l, r) in edges {
        if l >= left || r >= right {
            return Err(Error::InvalidGraph(format!("edge ({l}, {r}) outside {left}x{right}")));
        }
        if !seen.insert((l, r)) {
            return Err(Error::InvalidGraph(format!("parallel edge ({l}, {r})")));
        }
    }
    Ok(())
}

/// A set of vertex-disjoint edges, sorted by left endpoint.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Matching {
    pub pairs: Vec<(usize, usize)>,
}

impl Matching {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Result of a weighted matching computation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightedMatching {
    pub weight: u64,
    pub matching: Matching,
    /// Number of unweighted matching instances solved.
    pub instances: usize,
    /// Total number of edges over those instances.
    pub instance_edges: u64,
}

/// Hopcroft–Karp on a left adjacency list; returns the mates of both sides.
fn hopcroft_karp(right: usize, adj: &[Vec<usize>]) -> (Vec<usize>, Vec<usize>) {
    let left = adj.len();
    let mut mate_l = vec![NONE; left];
    let mut mate_r = vec![NONE; right];
    let mut dist = vec![NONE; left];
    let mut next = vec![0usize; left];
    let mut queue = VecDeque::new();
    let mut stack: Vec<usize> = Vec::new();
    let mut via: Vec<usize> = Vec::new();
    loop {
        queue.clear();
        for l in 0..left {
            if mate_l[l] == NONE {
                dist[l] = 0;
                queue.push_back(l);
            } else {
                dist[l] = NONE;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in &adj[l] {
                let m = mate_r[r];
                if m == NONE {
                    found = true;
                } else if dist[m] == NONE {
                    dist[m] = dist[l] + 1;
                    queue.push_back(m);
                }
            }
        }
        if !found {
            break;
        }
        next.iter_mut().for_each(|x| *x = 0);
        for start in 0..left {
            if mate_l[start] != NONE {
                continue;
            }
            stack.clear();
            via.clear();
            stack.push(start);
            while let Some(&l) = stack.last() {
                if next[l] == adj[l].len() {
                    dist[l] = NONE;
                    stack.pop();
                    via.pop();
                    continue;
                }
                let r = adj[l][next[l]];
                next[l] += 1;
                let m = mate_r[r];
                if m == NONE {
                    via.push(r);
                    for (&x, &y) in stack.iter().zip(via.iter()) {
                        mate_l[x] = y;
                        mate_r[y] = x;
                    }
                    break;
                } else if dist[m] != NONE && dist[m] == dist[l] + 1 {
                    via.push(r);
                    stack.push(m);
                }
            }
        }
    }
    (mate_l, mate_r)
}

/// Maximum cardinality matching (Hopcroft–Karp). Vertices are scanned in
/// ascending order, so the result is deterministic.
pub fn max_matching(g: &BipartiteGraph) -> Matching {
    let (mate_l, _) = hopcroft_karp(g.right, &g.left_adjacency());
    collect_pairs(&mate_l)
}

fn collect_pairs(mate_l: &[usize]) -> Matching {
    Matching {
        pairs: mate_l
            .iter()
            .enumerate()
            .filter(|(_, &r)| r != NONE)
            .map(|(l, &r)| (l, r))
            .collect(),
    }
}

/// König: a minimum vertex cover from a maximum matching, as membership flags.
fn konig_cover(adj: &[Vec<usize>], right: usize, mate_l: &[usize], mate_r: &[usize]) -> (Vec<bool>, Vec<bool>) {
    let left = adj.len();
    let mut seen_l = vec![false; left];
    let mut seen_r = vec![false; right];
    let mut queue: VecDeque<usize> = (0..left).filter(|&l| mate_l[l] == NONE).collect();
    for &l in &queue {
        seen_l[l] = true;
    }
    while let Some(l) = queue.pop_front() {
        for &r in &adj[l] {
            if !seen_r[r] {
                seen_r[r] = true;
                let m = mate_r[r];
                if m != NONE && !seen_l[m] {
                    seen_l[m] = true;
                    queue.push_back(m);
                }
            }
        }
    }
    (seen_l.iter().map(|&s| !s).collect(), seen_r)
}

/// Minimum vertex cover of an unweighted bipartite graph.
pub fn min_vertex_cover(g: &BipartiteGraph) -> (Vec<bool>, Vec<bool>) {
    let adj = g.left_adjacency();
    let (mate_l, mate_r) = hopcroft_karp(g.right, &adj);
    konig_cover(&adj, g.right, &mate_l, &mate_r)
}

/// Exact maximum weight matching through unweighted matchings of the heaviest edges.
pub fn max_weight_matching(g: &WeightedBipartiteGraph) -> WeightedMatching {
    let m = g.edges.len();
    if m == 0 {
        return WeightedMatching::default();
    }
    let mut weight: Vec<u64> = g.edges.iter().map(|e| e.2).collect();
    let max_w = *weight.iter().max().unwrap() as usize;
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); max_w + 1];
    let mut adj_l = vec![Vec::new(); g.left];
    let mut adj_r = vec![Vec::new(); g.right];
    // iterate edges in (left, right) order so every round sees a sorted instance
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_unstable_by_key(|&e| (g.edges[e].0, g.edges[e].1));
    for &e in &order {
        let (l, r, w) = g.edges[e];
        buckets[w as usize].push(e);
        adj_l[l].push(e);
        adj_r[r].push(e);
    }
    let mut y_l = vec![0u64; g.left];
    let mut y_r = vec![0u64; g.right];

    // local vertex numbering, reused across rounds
    let mut local_l = vec![NONE; g.left];
    let mut local_r = vec![NONE; g.right];
    let mut touched_l = Vec::new();
    let mut touched_r = Vec::new();

    let mut result = WeightedMatching::default();
    let mut top = max_w;
    while top > 0 {
        let round: Vec<usize> = std::mem::take(&mut buckets[top])
            .into_iter()
            .filter(|&e| weight[e] == top as u64)
            .collect();
        if round.is_empty() {
            top -= 1;
            continue;
        }
        let mut adj: Vec<Vec<usize>> = Vec::new();
        for &e in &round {
            let (l, r, _) = g.edges[e];
            if local_l[l] == NONE {
                local_l[l] = touched_l.len();
                touched_l.push(l);
                adj.push(Vec::new());
            }
            if local_r[r] == NONE {
                local_r[r] = touched_r.len();
                touched_r.push(r);
            }
            adj[local_l[l]].push(local_r[r]);
        }
        let (mate_l, mate_r) = hopcroft_karp(touched_r.len(), &adj);
        let (cover_l, cover_r) = konig_cover(&adj, touched_r.len(), &mate_l, &mate_r);
        result.weight += mate_l.iter().filter(|&&r| r != NONE).count() as u64;
        result.instances += 1;
        result.instance_edges += round.len() as u64;

        for (i, &l) in touched_l.iter().enumerate() {
            if cover_l[i] {
                y_l[l] += 1;
                lower(&mut adj_l[l], &mut weight, &mut buckets);
            }
        }
        for (i, &r) in touched_r.iter().enumerate() {
            if cover_r[i] {
                y_r[r] += 1;
                lower(&mut adj_r[r], &mut weight, &mut buckets);
            }
        }
        for l in touched_l.drain(..) {
            local_l[l] = NONE;
        }
        for r in touched_r.drain(..) {
            local_r[r] = NONE;
        }
    }
    debug_assert!(result.instance_edges <= g.total_weight());
    result.matching = matching_from_cover(g, &y_l, &y_r);
    debug_assert_eq!(
        result.matching.pairs.iter().map(|p| edge_weight(g, *p)).sum::<u64>(),
        result.weight
    );
    result
}

/// Lowers every live edge in `list` by one, dropping edges that reach zero.
fn lower(list: &mut Vec<usize>, weight: &mut [u64], buckets: &mut [Vec<usize>]) {
    list.retain(|&e| {
        if weight[e] == 0 {
            return false;
        }
        weight[e] -= 1;
        if weight[e] == 0 {
            false
        } else {
            buckets[weight[e] as usize].push(e);
            true
        }
    });
}

fn edge_weight(g: &WeightedBipartiteGraph, (l, r): (usize, usize)) -> u64 {
    g.edges.iter().find(|e| e.0 == l && e.1 == r).map_or(0, |e| e.2)
}

/// Recovers a maximum weight matching from an optimal cover `y`: a matching of
/// tight edges that saturates every vertex with positive cover weight.
fn matching_from_cover(g: &WeightedBipartiteGraph, y_l: &[u64], y_r: &[u64]) -> Matching {
    let mut tight_l = vec![Vec::new(); g.left];
    let mut tight_r = vec![Vec::new(); g.right];
    for &(l, r, w) in &g.edges {
        if y_l[l] + y_r[r] == w {
            tight_l[l].push(r);
            tight_r[r].push(l);
        }
    }
    for list in tight_l.iter_mut().chain(tight_r.iter_mut()) {
        list.sort_unstable();
    }
    // saturate the positive left vertices first
    let restricted: Vec<Vec<usize>> = (0..g.left)
        .map(|l| if y_l[l] > 0 { tight_l[l].clone() } else { Vec::new() })
        .collect();
    let (mut mate_l, mut mate_r) = hopcroft_karp(g.right, &restricted);
    debug_assert!((0..g.left).all(|l| y_l[l] == 0 || mate_l[l] != NONE));

    // then pull in each unsaturated positive right vertex along an alternating path
    // that keeps every matched left vertex matched
    let mut from_r = vec![NONE; g.left];
    let mut seen_l = vec![usize::MAX; g.left];
    let mut seen_r = vec![usize::MAX; g.right];
    let mut queue = VecDeque::new();
    for r0 in 0..g.right {
        if y_r[r0] == 0 || mate_r[r0] != NONE {
            continue;
        }
        queue.clear();
        queue.push_back(r0);
        seen_r[r0] = r0;
        let mut end = None;
        'bfs: while let Some(r) = queue.pop_front() {
            for &l in &tight_r[r] {
                if seen_l[l] == r0 {
                    continue;
                }
                seen_l[l] = r0;
                from_r[l] = r;
                let r2 = mate_l[l];
                if r2 == NONE || y_r[r2] == 0 {
                    end = Some(l);
                    break 'bfs;
                }
                if seen_r[r2] != r0 {
                    seen_r[r2] = r0;
                    queue.push_back(r2);
                }
            }
        }
        let mut l = end.expect("an optimal cover admits a saturating matching");
        if mate_l[l] != NONE {
            mate_r[mate_l[l]] = NONE;
        }
        loop {
            let r = from_r[l];
            let previous = mate_r[r];
            mate_l[l] = r;
            mate_r[r] = l;
            if r == r0 {
                break;
            }
            l = previous;
        }
    }
    collect_pairs(&mate_l)
}

/// Reference maximum weight matching by the Hungarian method on the dense
/// profit matrix (missing edges have profit 0).
pub fn max_weight_matching_oracle(g: &WeightedBipartiteGraph) -> WeightedMatching {
    let transpose = g.left > g.right;
    let (rows, cols) = if transpose {
        (g.right, g.left)
    } else {
        (g.left, g.right)
    };
    if rows == 0 || g.edges.is_empty() {
        return WeightedMatching::default();
    }
    let mut cost = vec![vec![0i64; cols + 1]; rows + 1];
    for &(l, r, w) in &g.edges {
        let (i, j) = if transpose { (r, l) } else { (l, r) };
        cost[i + 1][j + 1] = -(w as i64);
    }
    // e-maxx formulation, 1-based, rows <= cols
    let inf = i64::MAX / 4;
    let mut u = vec![0i64; rows + 1];
    let mut v = vec![0i64; cols + 1];
    let mut p = vec![0usize; cols + 1];
    let mut way = vec![0usize; cols + 1];
    for i in 1..=rows {
        p[0] = i;
        let mut j0 = 0;
        let mut minv = vec![inf; cols + 1];
        let mut used = vec![false; cols + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = inf;
            let mut j1 = 0;
            for j in 1..=cols {
                if !used[j] {
                    let cur = cost[i0][j] - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=cols {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut pairs = Vec::new();
    let mut weight = 0u64;
    for j in 1..=cols {
        let i = p[j];
        if i != 0 && cost[i][j] < 0 {
            weight += (-cost[i][j]) as u64;
            pairs.push(if transpose { (j - 1, i - 1) } else { (i - 1, j - 1) });
        }
    }
    pairs.sort_unstable();
    WeightedMatching {
        weight,
        matching: Matching { pairs },
        instances: 0,
        instance_edges: 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn wg(l: usize, r: usize, e: &[(usize, usize, u64)]) -> WeightedBipartiteGraph {
        WeightedBipartiteGraph::new(l, r, e.to_vec()).unwrap()
    }

    /// Best matching weight by trying every subset of edges.
    fn enumerate_best(g: &WeightedBipartiteGraph) -> u64 {
        fn go(edges: &[(usize, usize, u64)], i: usize, ul: &mut Vec<bool>, ur: &mut Vec<bool>) -> u64 {
            if i == edges.len() {
                return 0;
            }
            let mut best = go(edges, i + 1, ul, ur);
            let (l, r, w) = edges[i];
            if !ul[l] && !ur[r] {
                ul[l] = true;
                ur[r] = true;
                best = best.max(w + go(edges, i + 1, ul, ur));
                ul[l] = false;
                ur[r] = false;
            }
            best
        }
        go(&g.edges, 0, &mut vec![false; g.left], &mut vec![false; g.right])
    }

    /// Berge: a matching is maximum iff no augmenting path exists.
    fn has_augmenting_path(g: &BipartiteGraph, m: &Matching) -> bool {
        let adj = g.left_adjacency();
        let mut mate_l = vec![NONE; g.left];
        let mut mate_r = vec![NONE; g.right];
        for &(l, r) in &m.pairs {
            mate_l[l] = r;
            mate_r[r] = l;
        }
        let mut seen = vec![false; g.left];
        let mut queue: VecDeque<usize> = (0..g.left).filter(|&l| mate_l[l] == NONE).collect();
        while let Some(l) = queue.pop_front() {
            if std::mem::replace(&mut seen[l], true) {
                continue;
            }
            for &r in &adj[l] {
                if mate_r[r] == NONE {
                    return true;
                }
                queue.push_back(mate_r[r]);
            }
        }
        false
    }

    fn check_matching(edges: &[(usize, usize)], m: &Matching) {
        let mut ls: Vec<usize> = m.pairs.iter().map(|p| p.0).collect();
        let mut rs: Vec<usize> = m.pairs.iter().map(|p| p.1).collect();
        ls.sort_unstable();
        rs.sort_unstable();
        ls.dedup();
        rs.dedup();
        assert_eq!(ls.len(), m.len());
        assert_eq!(rs.len(), m.len());
        assert!(m.pairs.iter().all(|p| edges.contains(p)));
    }

    fn random_graph(rng: &mut impl Rng, max_side: usize, max_w: u64) -> WeightedBipartiteGraph {
        let l = rng.gen_range(0..=max_side);
        let r = rng.gen_range(0..=max_side);
        let p: f64 = rng.gen_range(0.1..0.9);
        let mut edges = Vec::new();
        for i in 0..l {
            for j in 0..r {
                if rng.gen_bool(p) {
                    edges.push((i, j, rng.gen_range(1..=max_w)));
                }
            }
        }
        wg(l, r, &edges)
    }

    #[test]
    fn max_matching_examples() {
        let empty = BipartiteGraph::new(0, 0, vec![]).unwrap();
        assert_eq!(max_matching(&empty).len(), 0);
        let g = BipartiteGraph::new(2, 2, vec![(0, 0), (0, 1), (1, 1)]).unwrap();
        let m = max_matching(&g);
        assert_eq!(m.len(), 2);
        assert_eq!(m.pairs, vec![(0, 0), (1, 1)]);
        let star = BipartiteGraph::new(1, 4, vec![(0, 0), (0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(max_matching(&star).len(), 1);
    }

    #[test]
    fn graph_validation() {
        assert!(BipartiteGraph::new(1, 1, vec![(0, 0), (0, 0)]).is_err());
        assert!(BipartiteGraph::new(1, 1, vec![(1, 0)]).is_err());
        assert!(WeightedBipartiteGraph::new(1, 1, vec![(0, 0, 0)]).is_err());
    }

    #[test]
    fn graph_file_format() {
        let g = WeightedBipartiteGraph::parse("# demo\n2 3 3\n1 1 4\n1 2\n2 3 2\n").unwrap();
        assert_eq!(g.edges(), &[(0, 0, 4), (0, 1, 1), (1, 2, 2)]);
        assert_eq!(WeightedBipartiteGraph::parse(&g.to_text()).unwrap(), g);
        assert!(WeightedBipartiteGraph::parse("1 1 2\n1 1\n").is_err());
        assert!(WeightedBipartiteGraph::parse("1 1 1\n0 1\n").is_err());
        assert!(WeightedBipartiteGraph::parse("1 1 1\n1 1 0\n").is_err());
    }

    #[test]
    fn hopcroft_karp_is_maximum() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..500 {
            let g = random_graph(&mut rng, 12, 1).unweighted();
            let m = max_matching(&g);
            check_matching(g.edges(), &m);
            assert!(!has_augmenting_path(&g, &m));
            let (cl, cr) = min_vertex_cover(&g);
            assert_eq!(cl.iter().chain(cr.iter()).filter(|&&c| c).count(), m.len());
            assert!(g.edges().iter().all(|&(l, r)| cl[l] || cr[r]));
        }
    }

    #[test]
    fn hopcroft_karp_long_paths() {
        // a ladder forcing long augmenting paths
        let n = 2000;
        let mut edges = Vec::new();
        for i in 0..n {
            edges.push((i, i));
            if i + 1 < n {
                edges.push((i + 1, i));
            }
        }
        let g = BipartiteGraph::new(n, n, edges).unwrap();
        assert_eq!(max_matching(&g).len(), n);
    }

    #[test]
    fn weighted_examples() {
        let single = wg(1, 1, &[(0, 0, 5)]);
        assert_eq!(max_weight_matching(&single).weight, 5);
        assert_eq!(max_weight_matching_oracle(&single).weight, 5);

        let g = wg(2, 2, &[(0, 0, 2), (0, 1, 1), (1, 0, 1)]);
        assert_eq!(enumerate_best(&g), 2);
        assert_eq!(max_weight_matching(&g).weight, 2);
        assert_eq!(max_weight_matching_oracle(&g).weight, 2);

        let unit = wg(3, 3, &[(0, 0, 1), (0, 1, 1), (1, 1, 1), (2, 1, 1)]);
        let card = max_matching(&unit.unweighted()).len() as u64;
        assert_eq!(max_weight_matching(&unit).weight, card);
        assert_eq!(max_weight_matching_oracle(&unit).weight, card);
    }

    #[test]
    fn weighted_matches_enumeration() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        for _ in 0..500 {
            let g = random_graph(&mut rng, 5, 6);
            let best = enumerate_best(&g);
            let fast = max_weight_matching(&g);
            let oracle = max_weight_matching_oracle(&g);
            assert_eq!(fast.weight, best);
            assert_eq!(oracle.weight, best);
            let unweighted: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.0, e.1)).collect();
            check_matching(&unweighted, &fast.matching);
            check_matching(&unweighted, &oracle.matching);
            let w: u64 = fast.matching.pairs.iter().map(|&p| edge_weight(&g, p)).sum();
            assert_eq!(w, best);
            assert!(fast.instance_edges <= g.total_weight());
        }
    }

    #[test]
    fn weighted_larger_instances() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let g = random_graph(&mut rng, 40, 30);
            let fast = max_weight_matching(&g);
            assert_eq!(fast.weight, max_weight_matching_oracle(&g).weight);
            assert!(fast.instance_edges <= g.total_weight());
        }
    }
}
