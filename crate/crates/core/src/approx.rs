//! Constant-factor approximation of the rearrangement distance between forests.
//!
//! Four steps turn `F1` into a forest similar to `F2`:
//!
//! 1. cut both disagreeing parents of every node out of their own parents,
//! 2. under each node keep only the children whose `F2` parent is the most common one,
//! 3. the same from the side of `F2`,
//! 4. one permutation of roots that moves each `F1` parent onto the `F2` parent.
//!
//! Each step costs a constant times the distance of its input, so the total is
//! within [`APPROXIMATION_FACTOR`] of the optimum.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::forest::{anchor, apply_op, apply_script, similar, EditOp, EditScript, LabeledForest, Permutation};

/// Worst-case ratio between the script size and the optimum: steps 1 to 4 cost at
/// most 4, 10, 30 and 180 times the distance.
pub const APPROXIMATION_FACTOR: usize = 224;

fn check_sizes(f1: &LabeledForest, f2: &LabeledForest) -> Result<()> {
    if f1.len() != f2.len() {
        return Err(Error::SizeMismatch {
            left: f1.len(),
            right: f2.len(),
        });
    }
    Ok(())
}

/// The set of disagreeing `(F1 parent, F2 parent)` pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FamilyPartition {
    pub pairs: BTreeSet<(usize, usize)>,
}

impl FamilyPartition {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

pub fn family_partition(f1: &LabeledForest, f2: &LabeledForest) -> Result<FamilyPartition> {
    check_sizes(f1, f2)?;
    let (a, b) = (f1.table(), f2.table());
    let pairs = (1..=f1.len())
        .filter(|&i| a[i] != 0 && b[i] != 0 && a[i] != b[i])
        .map(|i| (a[i], b[i]))
        .collect();
    Ok(FamilyPartition { pairs })
}

/// Siblings in `F1` whose parents in `F2` differ.
///
/// Nodes sharing an `F1` parent form a family; inside a family every two nodes
/// with different `F2` parents are adjacent, so each family is a complete
/// multipartite graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MigrationsGraph {
    /// Per family, the `(node, F2 parent)` members in ascending node order.
    families: Vec<Vec<(usize, usize)>>,
}

pub fn migrations_graph(f1: &LabeledForest, f2: &LabeledForest) -> Result<MigrationsGraph> {
    check_sizes(f1, f2)?;
    let (a, b) = (f1.table(), f2.table());
    let mut families: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for i in 1..=f1.len() {
        if a[i] != 0 && b[i] != 0 {
            families.entry(a[i]).or_default().push((i, b[i]));
        }
    }
    Ok(MigrationsGraph {
        families: families.into_values().collect(),
    })
}

impl MigrationsGraph {
    /// All edges `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for family in &self.families {
            for (x, &(i, bi)) in family.iter().enumerate() {
                for &(j, bj) in &family[x + 1..] {
                    if bi != bj {
                        edges.push((i, j));
                    }
                }
            }
        }
        edges.sort_unstable();
        edges
    }

    /// A maximum matching: in a complete multipartite family the mode-first pairing
    /// is optimal, and families are disconnected from each other.
    pub fn max_matching(&self) -> Vec<(usize, usize)> {
        let mut matching = Vec::new();
        for family in &self.families {
            let (pairs, _) = pair_partition_by_key(family, |m| m.1);
            matching.extend(pairs.into_iter().map(|(x, y)| (x.0.min(y.0), x.0.max(y.0))));
        }
        matching.sort_unstable();
        matching
    }
}

/// Most frequent key and its multiplicity; ties go to the smallest key.
fn mode_of<K: Ord + Copy>(keys: impl IntoIterator<Item = K>) -> Option<(K, usize)> {
    let mut counts: BTreeMap<K, usize> = BTreeMap::new();
    for k in keys {
        *counts.entry(k).or_default() += 1;
    }
    // max_by_key keeps the last maximum, so scan in reverse key order
    counts.into_iter().rev().max_by_key(|&(_, c)| c)
}

/// Splits `items` into the largest possible number of pairs with different keys,
/// plus the leftover elements.
pub fn pair_partition_by_key<T: Copy, K: Ord + Copy>(items: &[T], key: impl Fn(&T) -> K) -> (Vec<(T, T)>, Vec<T>) {
    let Some((mode, freq)) = mode_of(items.iter().map(&key)) else {
        return (Vec::new(), Vec::new());
    };
    let mut ordered: Vec<T> = items.iter().copied().filter(|x| key(x) == mode).collect();
    let mut rest: Vec<T> = items.iter().copied().filter(|x| key(x) != mode).collect();
    rest.sort_by_key(|x| key(x));
    ordered.extend(rest);

    let size = ordered.len();
    let half = size / 2;
    let f = (size - freq).min(half);
    let mut pairs = Vec::with_capacity(f);
    let mut used = vec![false; size];
    if f == size - freq {
        for i in 0..f {
            pairs.push((ordered[i], ordered[size - 1 - i]));
            used[i] = true;
            used[size - 1 - i] = true;
        }
    } else {
        for i in 0..half {
            pairs.push((ordered[i], ordered[half + i]));
            used[i] = true;
            used[half + i] = true;
        }
    }
    let leftover = ordered
        .iter()
        .zip(&used)
        .filter(|(_, &u)| !u)
        .map(|(&x, _)| x)
        .collect();
    (pairs, leftover)
}

/// [`pair_partition_by_key`] on plain values.
pub fn pair_partition<T: Ord + Copy>(items: &[T]) -> (Vec<(T, T)>, Vec<T>) {
    pair_partition_by_key(items, |&x| x)
}

fn forest_from(parent: Vec<usize>) -> LabeledForest {
    LabeledForest::from_table(parent).expect("cuts and root permutations keep a forest valid")
}

/// Step 1: makes roots of both parents of every node whose parents disagree.
/// Returns `F1^1` and the cuts `(v, u)`.
pub fn step1(f1: &LabeledForest, f2: &LabeledForest) -> Result<(LabeledForest, Vec<(usize, usize)>)> {
    check_sizes(f1, f2)?;
    let (a, b) = (f1.table(), f2.table());
    let mut targets = BTreeSet::new();
    for i in 1..=f1.len() {
        if a[i] != 0 && b[i] != 0 && a[i] != b[i] {
            targets.insert(a[i]);
            targets.insert(b[i]);
        }
    }
    let mut parent = a.to_vec();
    let mut cuts = Vec::new();
    for x in targets {
        if parent[x] != 0 {
            cuts.push((x, parent[x]));
            parent[x] = 0;
        }
    }
    Ok((forest_from(parent), cuts))
}

/// Groups nodes by their parent in `grouping` and cuts from `current` every node
/// whose parent in `looked_up` is not the most common one in its group. Returns
/// the new parent table, the cuts and the representatives.
fn keep_majority(
    current: &[usize],
    grouping: &[usize],
    looked_up: &[usize],
    n: usize,
) -> (Vec<usize>, Vec<(usize, usize)>, Vec<usize>) {
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for v in 1..=n {
        if grouping[v] != 0 && looked_up[v] != 0 {
            groups[grouping[v]].push(v);
        }
    }
    let mut parent = current.to_vec();
    let mut cuts = Vec::new();
    let mut rep: Vec<usize> = (0..=n).collect();
    for u in 1..=n {
        if let Some((mode, _)) = mode_of(groups[u].iter().map(|&v| looked_up[v])) {
            rep[u] = mode;
            for &v in &groups[u] {
                if looked_up[v] != mode {
                    cuts.push((v, parent[v]));
                    parent[v] = 0;
                }
            }
        }
    }
    (parent, cuts, rep)
}

/// Resulting forest, cuts `(v, u)` and representatives indexed by label.
pub type MajorityStep = (LabeledForest, Vec<(usize, usize)>, Vec<usize>);

/// Step 2: under every node keep only children heading to the same `F2` parent.
/// Returns `F1^2`, the cuts and `rep` indexed by label (`rep[u] = u` when no
/// child of `u` has an `F2` parent).
pub fn step2(f1: &LabeledForest, f2: &LabeledForest) -> Result<MajorityStep> {
    check_sizes(f1, f2)?;
    let a = f1.table();
    let (parent, cuts, rep) = keep_majority(a, a, f2.table(), f1.len());
    Ok((forest_from(parent), cuts, rep))
}

/// Step 3: under every node of `F2` keep only children coming from the same `F1`
/// parent. Returns `F1^3`, the cuts and `rep'`.
pub fn step3(f1: &LabeledForest, f2: &LabeledForest) -> Result<MajorityStep> {
    check_sizes(f1, f2)?;
    let a = f1.table();
    let (parent, cuts, rep) = keep_majority(a, f2.table(), a, f1.len());
    Ok((forest_from(parent), cuts, rep))
}

/// Step 4: the permutation sending every disagreeing `F1` parent to the `F2`
/// parent. Returns `F1^4` and the permutation.
pub fn step4(f1: &LabeledForest, f2: &LabeledForest) -> Result<(LabeledForest, Permutation)> {
    check_sizes(f1, f2)?;
    let n = f1.len();
    let (a, b) = (f1.table(), f2.table());
    let mut out = vec![0usize; n + 1];
    let mut inn = vec![0usize; n + 1];
    for u in 1..=n {
        let (x, y) = (a[u], b[u]);
        if x == 0 || y == 0 || x == y {
            continue;
        }
        if out[x] != 0 && out[x] != y {
            return Err(Error::Invariant(format!("{x} must map to both {} and {y}", out[x])));
        }
        if inn[y] != 0 && inn[y] != x {
            return Err(Error::Invariant(format!("both {} and {x} must map to {y}", inn[y])));
        }
        if a[x] != 0 || a[y] != 0 {
            return Err(Error::Invariant(format!("requirement {x} -> {y} touches a non-root")));
        }
        out[x] = y;
        inn[y] = x;
    }
    let mut image: Vec<usize> = (0..=n).collect();
    for x in 1..=n {
        if out[x] != 0 {
            image[x] = out[x];
        }
    }
    // close every maximal path end -> start
    for start in 1..=n {
        if out[start] != 0 && inn[start] == 0 {
            let mut end = start;
            while out[end] != 0 {
                end = out[end];
            }
            image[end] = start;
        }
    }
    let pi = Permutation::from_table(image)?;
    let f4 = apply_op(f1, &EditOp::Permute(pi.clone()))?;
    if !similar(&f4, f2)? {
        return Err(Error::Invariant("step 4 did not reach a similar forest".into()));
    }
    Ok((f4, pi))
}

/// Everything the four steps did.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepTrace {
    /// Cuts `(v, u)` of steps 1 to 3.
    pub cuts: [Vec<(usize, usize)>; 3],
    pub permutation: Permutation,
    /// Operation cost of each step.
    pub alg: [usize; 4],
    /// `F1^1` to `F1^4`.
    pub forests: [LabeledForest; 4],
    pub rep: Vec<usize>,
    pub rep_prime: Vec<usize>,
}

impl StepTrace {
    pub fn total(&self) -> usize {
        self.alg.iter().sum()
    }
}

impl fmt::Display for StepTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, cuts) in self.cuts.iter().enumerate() {
            writeln!(f, "step {}: {} cuts", j + 1, self.alg[j])?;
            for &(v, u) in cuts {
                writeln!(f, "  cut {v} {u}")?;
            }
        }
        writeln!(f, "step 4: permutation of size {}", self.alg[3])?;
        if !self.permutation.is_identity() {
            writeln!(f, "  {:?}", self.permutation)?;
        }
        writeln!(f, "total: {}", self.total())
    }
}

/// Runs the four steps. The script lists every cut and then the permutation; its
/// result is checked to be similar to `f2`.
pub fn approximate_rearrangement(f1: &LabeledForest, f2: &LabeledForest) -> Result<(EditScript, StepTrace)> {
    let (g1, c1) = step1(f1, f2)?;
    let (g2, c2, rep) = step2(&g1, f2)?;
    let (g3, c3, rep_prime) = step3(&g2, f2)?;
    let (g4, pi) = step4(&g3, f2)?;

    let mut script = EditScript::new();
    for &(v, u) in c1.iter().chain(&c2).chain(&c3) {
        script.push(EditOp::Cut { v, u });
    }
    if !pi.is_identity() {
        script.push(EditOp::Permute(pi.clone()));
    }
    let result = apply_script(f1, &script)?;
    if result != g4 || !similar(&result, f2)? {
        return Err(Error::Invariant(
            "approximation script does not reach a similar forest".into(),
        ));
    }
    let trace = StepTrace {
        alg: [c1.len(), c2.len(), c3.len(), pi.size()],
        cuts: [c1, c2, c3],
        permutation: pi,
        forests: [g1, g2, g3, g4],
        rep,
        rep_prime,
    };
    debug_assert_eq!(trace.total(), script.size());
    Ok((script, trace))
}

/// Approximation of the link-and-cut distance between two trees with the same root.
#[derive(Clone, Debug)]
pub struct TreeApprox {
    /// Size of the script, an upper bound on the distance.
    pub size: usize,
    /// Cut-and-permute script on the anchored trees.
    pub script: EditScript,
    pub trace: StepTrace,
    /// The anchored trees, on `2n` nodes.
    pub anchored: (LabeledForest, LabeledForest),
    /// An equivalent permute-then-link script turning the anchored `T1` exactly
    /// into the anchored `T2`, when the permutation keeps the root in place.
    pub link_script: Option<EditScript>,
}

pub fn approximate_tree_distance(t1: &LabeledForest, t2: &LabeledForest) -> Result<TreeApprox> {
    check_sizes(t1, t2)?;
    let (r1, r2) = (t1.root()?, t2.root()?);
    if r1 != r2 {
        return Err(Error::RootMismatch { left: r1, right: r2 });
    }
    let a1 = anchor(t1)?;
    let a2 = anchor(t2)?;
    let (script, trace) = approximate_rearrangement(&a1, &a2)?;
    let link_script = if trace.permutation.apply(r1) == r1 {
        link_and_cut_script(&a1, &a2, &trace)
    } else {
        None
    };
    Ok(TreeApprox {
        size: script.size(),
        script,
        trace,
        anchored: (a1, a2),
        link_script,
    })
}

/// Permutes first, then turns every cut into a link to the target parent, deepest
/// targets first. Returns `None` if the result is not exactly `t2`.
fn link_and_cut_script(t1: &LabeledForest, t2: &LabeledForest, trace: &StepTrace) -> Option<EditScript> {
    let pi = &trace.permutation;
    let levels = t2.level_table();
    let b = t2.table();
    let mut links: Vec<(usize, usize, usize)> = trace
        .cuts
        .iter()
        .flatten()
        .map(|&(v, u)| {
            let v2 = pi.apply(v);
            (v2, pi.apply(u), b[v2])
        })
        .collect();
    if links.iter().any(|l| l.2 == 0) {
        return None;
    }
    links.sort_by_key(|&(v, _, _)| (std::cmp::Reverse(levels[v]), v));
    let mut script = EditScript::new();
    if !pi.is_identity() {
        script.push(EditOp::Permute(pi.clone()));
    }
    for (v, u, w) in links {
        script.push(EditOp::LinkAndCut { v, u, w });
    }
    match apply_script(t1, &script) {
        Ok(result) if &result == t2 => Some(script),
        _ => None,
    }
}
