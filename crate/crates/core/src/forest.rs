//! Labelled forests stored as parent vectors, the cut / link-and-cut / permutation
//! operations, edit scripts and the `~` similarity relation.
//!
//! Nodes are identified with their labels `1..=n`. Internally a forest keeps a
//! parent vector of length `n + 1` whose slot 0 is unused, so that `parent[u] == 0`
//! reads directly as "u is a root".

use std::fmt;

use crate::error::{Error, Result};

/// A forest on the labels `1..=n`, given by its parent vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LabeledForest {
    parent: Vec<usize>,
}

impl LabeledForest {
    /// Builds a forest from `parents[i - 1]` = parent of node `i` (0 for a root).
    pub fn new(parents: Vec<usize>) -> Result<Self> {
        let mut parent = Vec::with_capacity(parents.len() + 1);
        parent.push(0);
        parent.extend(parents);
        let forest = LabeledForest { parent };
        forest.validate()?;
        Ok(forest)
    }

    /// Builds a forest from a 1-based parent table (slot 0 ignored) without copying.
    pub(crate) fn from_table(mut parent: Vec<usize>) -> Result<Self> {
        if parent.is_empty() {
            parent.push(0);
        }
        parent[0] = 0;
        let forest = LabeledForest { parent };
        forest.validate()?;
        Ok(forest)
    }

    fn validate(&self) -> Result<()> {
        let n = self.len();
        for u in 1..=n {
            let p = self.parent[u];
            if p == u {
                return Err(Error::SelfParent { node: u });
            }
            if p > n {
                return Err(Error::ParentOutOfRange { node: u, parent: p, n });
            }
        }
        // 0 = unvisited, 1 = on the current walk, 2 = known to reach a root
        let mut state = vec![0u8; n + 1];
        let mut walk = Vec::new();
        for start in 1..=n {
            let mut u = start;
            while u != 0 && state[u] == 0 {
                state[u] = 1;
                walk.push(u);
                u = self.parent[u];
            }
            if u != 0 && state[u] == 1 {
                return Err(Error::Cycle { node: u });
            }
            for &w in &walk {
                state[w] = 2;
            }
            walk.clear();
        }
        if n > 0 && self.roots().is_empty() {
            return Err(Error::NoRoot);
        }
        Ok(())
    }

    /// Parses the plain-text forest format: a node count, then the parent list.
    /// Lines starting with `#` are comments.
    pub fn parse(text: &str) -> Result<Self> {
        let mut tokens = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            for tok in line.split_whitespace() {
                let value = tok.parse::<usize>().map_err(|_| Error::Parse {
                    line: idx + 1,
                    msg: format!("expected a non-negative integer, found {tok:?}"),
                })?;
                tokens.push((idx + 1, value));
            }
        }
        let Some(&(_, n)) = tokens.first() else {
            return Err(Error::Parse {
                line: 1,
                msg: "missing node count".into(),
            });
        };
        let parents: Vec<usize> = tokens[1..].iter().map(|&(_, v)| v).collect();
        if parents.len() != n {
            let line = tokens.last().map_or(1, |&(l, _)| l);
            return Err(Error::Parse {
                line,
                msg: format!("expected {n} parent entries, found {}", parents.len()),
            });
        }
        LabeledForest::new(parents)
    }

    /// Serialises to the plain-text forest format.
    pub fn to_text(&self) -> String {
        let body: Vec<String> = self.parents().iter().map(|p| p.to_string()).collect();
        format!("{}\n{}\n", self.len(), body.join(" "))
    }

    pub fn len(&self) -> usize {
        self.parent.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Parent of `u`, or `None` when `u` is a root.
    pub fn parent(&self, u: usize) -> Option<usize> {
        match self.parent[u] {
            0 => None,
            p => Some(p),
        }
    }

    /// Parent list indexed by `label - 1`, 0 meaning root.
    pub fn parents(&self) -> &[usize] {
        &self.parent[1..]
    }

    /// Parent table indexed by label; slot 0 is always 0.
    pub(crate) fn table(&self) -> &[usize] {
        &self.parent
    }

    pub fn is_root(&self, u: usize) -> bool {
        self.parent[u] == 0
    }

    pub fn roots(&self) -> Vec<usize> {
        (1..=self.len()).filter(|&u| self.parent[u] == 0).collect()
    }

    pub fn is_tree(&self) -> bool {
        !self.is_empty() && self.roots().len() == 1
    }

    /// The unique root, or an error when this forest is not a single tree.
    pub fn root(&self) -> Result<usize> {
        let roots = self.roots();
        if roots.len() == 1 {
            Ok(roots[0])
        } else {
            Err(Error::NotATree { roots: roots.len() })
        }
    }

    /// Children lists indexed by label (slot 0 lists the roots), each sorted ascending.
    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut children = vec![Vec::new(); self.len() + 1];
        for u in 1..=self.len() {
            children[self.parent[u]].push(u);
        }
        children
    }

    /// Levels indexed by `label - 1`; roots are on level 0.
    pub fn levels(&self) -> Vec<usize> {
        self.level_table()[1..].to_vec()
    }

    /// Levels indexed by label, slot 0 unused.
    pub(crate) fn level_table(&self) -> Vec<usize> {
        let n = self.len();
        let mut level = vec![usize::MAX; n + 1];
        level[0] = 0;
        let mut stack = Vec::new();
        for start in 1..=n {
            let mut u = start;
            while u != 0 && level[u] == usize::MAX {
                stack.push(u);
                u = self.parent[u];
            }
            let mut depth = if u == 0 { 0 } else { level[u] + 1 };
            while let Some(w) = stack.pop() {
                level[w] = depth;
                depth += 1;
            }
        }
        level
    }

    /// True when `w` lies in the subtree of `v` (including `w == v`).
    pub fn is_descendant(&self, w: usize, v: usize) -> bool {
        let mut x = w;
        while x != 0 {
            if x == v {
                return true;
            }
            x = self.parent[x];
        }
        false
    }

    fn check_label(&self, label: usize) -> Result<()> {
        if label == 0 || label > self.len() {
            Err(Error::LabelOutOfRange { label, n: self.len() })
        } else {
            Ok(())
        }
    }
}

impl fmt::Debug for LabeledForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LabeledForest{:?}", self.parents())
    }
}

/// A bijection on `1..=n`, stored as its image vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (0..=n).collect(),
        }
    }

    /// `images[i - 1]` is the image of `i`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut image = Vec::with_capacity(images.len() + 1);
        image.push(0);
        image.extend(images);
        Self::from_table(image)
    }

    pub(crate) fn from_table(mut image: Vec<usize>) -> Result<Self> {
        if image.is_empty() {
            image.push(0);
        }
        image[0] = 0;
        let n = image.len() - 1;
        let mut seen = vec![false; n + 1];
        for x in 1..=n {
            let y = image[x];
            if y == 0 || y > n {
                return Err(Error::InvalidPermutation(format!(
                    "image {y} of {x} is outside 1..={n}"
                )));
            }
            if std::mem::replace(&mut seen[y], true) {
                return Err(Error::InvalidPermutation(format!("{y} is hit twice")));
            }
        }
        Ok(Permutation { image })
    }

    /// Permutation on `1..=n` moving exactly the listed `x -> y` pairs.
    /// The listed sources and targets must be the same set.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut image: Vec<usize> = (0..=n).collect();
        let mut assigned = vec![false; n + 1];
        for &(x, y) in pairs {
            if x == 0 || x > n || y == 0 || y > n {
                return Err(Error::InvalidPermutation(format!("pair {x}:{y} is outside 1..={n}")));
            }
            if std::mem::replace(&mut assigned[x], true) {
                return Err(Error::InvalidPermutation(format!("{x} is listed twice")));
            }
            image[x] = y;
        }
        let mut sources: Vec<usize> = pairs.iter().map(|p| p.0).collect();
        let mut targets: Vec<usize> = pairs.iter().map(|p| p.1).collect();
        sources.sort_unstable();
        targets.sort_unstable();
        if sources != targets {
            return Err(Error::InvalidPermutation(
                "listed pairs do not form a bijection on the listed labels".into(),
            ));
        }
        Ok(Permutation { image })
    }

    pub fn len(&self) -> usize {
        self.image.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    /// Image list indexed by `label - 1`.
    pub fn images(&self) -> &[usize] {
        &self.image[1..]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.image.len()];
        for x in 1..=self.len() {
            inv[self.image[x]] = x;
        }
        Permutation { image: inv }
    }

    /// `self` after `first`: x -> self(first(x)).
    pub fn after(&self, first: &Permutation) -> Self {
        let image = (0..=self.len())
            .map(|x| if x == 0 { 0 } else { self.image[first.image[x]] })
            .collect();
        Permutation { image }
    }

    /// Number of labels moved.
    pub fn size(&self) -> usize {
        (1..=self.len()).filter(|&x| self.image[x] != x).count()
    }

    pub fn is_identity(&self) -> bool {
        self.size() == 0
    }

    /// Moved labels as `(x, π(x))`, ascending in `x`.
    pub fn moved(&self) -> Vec<(usize, usize)> {
        (1..=self.len())
            .filter(|&x| self.image[x] != x)
            .map(|x| (x, self.image[x]))
            .collect()
    }

    /// Non-trivial cycles, each starting at its smallest label.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.image.len()];
        let mut out = Vec::new();
        for start in 1..=self.len() {
            if seen[start] || self.image[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.image[x];
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "()");
        }
        for cycle in self.cycles() {
            let parts: Vec<String> = cycle.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

/// A single edit operation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EditOp {
    /// `(v † u)`: detach `v` from its parent `u`.
    Cut {
        v: usize,
        u: usize,
    },
    /// `v | u -> w`: move `v` from parent `u` to parent `w`.
    LinkAndCut {
        v: usize,
        u: usize,
        w: usize,
    },
    Permute(Permutation),
}

impl EditOp {
    pub fn size(&self) -> usize {
        match self {
            EditOp::Cut { .. } | EditOp::LinkAndCut { .. } => 1,
            EditOp::Permute(pi) => pi.size(),
        }
    }
}

impl fmt::Display for EditOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EditOp::Cut { v, u } => write!(f, "cut {v} {u}"),
            EditOp::LinkAndCut { v, u, w } => write!(f, "link {v} {u} {w}"),
            EditOp::Permute(pi) => {
                write!(f, "perm")?;
                for (x, y) in pi.moved() {
                    write!(f, " {x}:{y}")?;
                }
                Ok(())
            }
        }
    }
}

/// An ordered sequence of edit operations.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EditScript {
    pub ops: Vec<EditOp>,
}

impl EditScript {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, op: EditOp) {
        self.ops.push(op);
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// Number of cut and link-and-cut operations plus the sizes of all permutations.
    pub fn size(&self) -> usize {
        self.ops.iter().map(EditOp::size).sum()
    }

    /// Parses the line-oriented script format. Permutations are completed to
    /// bijections on `1..=n`.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let mut script = EditScript::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let perr = |msg: String| Error::Parse { line: line_no, msg };
            let mut parts = line.split_whitespace();
            let kind = parts.next().unwrap_or_default();
            let rest: Vec<&str> = parts.collect();
            let ints = |rest: &[&str]| -> Result<Vec<usize>> {
                rest.iter()
                    .map(|t| t.parse::<usize>().map_err(|_| perr(format!("bad integer {t:?}"))))
                    .collect()
            };
            let op = match kind {
                "cut" => match ints(&rest)?.as_slice() {
                    &[v, u] => EditOp::Cut { v, u },
                    _ => return Err(perr("cut takes two labels".into())),
                },
                "link" => match ints(&rest)?.as_slice() {
                    &[v, u, w] => EditOp::LinkAndCut { v, u, w },
                    _ => return Err(perr("link takes three labels".into())),
                },
                "perm" => {
                    let mut pairs = Vec::with_capacity(rest.len());
                    for tok in &rest {
                        let (x, y) = tok
                            .split_once(':')
                            .ok_or_else(|| perr(format!("expected x:y, found {tok:?}")))?;
                        let x = x.parse::<usize>().map_err(|_| perr(format!("bad integer {x:?}")))?;
                        let y = y.parse::<usize>().map_err(|_| perr(format!("bad integer {y:?}")))?;
                        pairs.push((x, y));
                    }
                    EditOp::Permute(Permutation::from_pairs(n, &pairs).map_err(|e| perr(e.to_string()))?)
                }
                other => return Err(perr(format!("unknown operation {other:?}"))),
            };
            script.push(op);
        }
        Ok(script)
    }

    pub fn to_text(&self) -> String {
        self.ops.iter().map(|op| format!("{op}\n")).collect()
    }
}

/// Applies one edit operation, checking its preconditions against `forest`.
pub fn apply_op(forest: &LabeledForest, op: &EditOp) -> Result<LabeledForest> {
    match *op {
        EditOp::Cut { v, u } => {
            forest.check_label(v)?;
            if forest.parent[v] != u || u == 0 {
                return Err(Error::NotParent { v, u });
            }
            let mut parent = forest.parent.clone();
            parent[v] = 0;
            Ok(LabeledForest { parent })
        }
        EditOp::LinkAndCut { v, u, w } => {
            forest.check_label(v)?;
            forest.check_label(w)?;
            if forest.parent[v] != u || u == 0 {
                return Err(Error::NotParent { v, u });
            }
            if forest.is_descendant(w, v) {
                return Err(Error::DescendantTarget { v, w });
            }
            let mut parent = forest.parent.clone();
            parent[v] = w;
            Ok(LabeledForest { parent })
        }
        EditOp::Permute(ref pi) => {
            if pi.len() != forest.len() {
                return Err(Error::SizeMismatch {
                    left: forest.len(),
                    right: pi.len(),
                });
            }
            let mut parent = vec![0; forest.parent.len()];
            for u in 1..=forest.len() {
                let p = forest.parent[u];
                parent[pi.apply(u)] = if p == 0 { 0 } else { pi.apply(p) };
            }
            Ok(LabeledForest { parent })
        }
    }
}

/// Left-to-right fold of [`apply_op`]; the first failure is reported with its index.
pub fn apply_script(forest: &LabeledForest, script: &EditScript) -> Result<LabeledForest> {
    let mut current = forest.clone();
    for (index, op) in script.ops.iter().enumerate() {
        current = apply_op(&current, op).map_err(|e| Error::Script {
            index,
            source: Box::new(e),
        })?;
    }
    Ok(current)
}

/// `F1 ~ F2`: every node has equal parents in both, or is a root in at least one.
pub fn similar(f1: &LabeledForest, f2: &LabeledForest) -> Result<bool> {
    if f1.len() != f2.len() {
        return Err(Error::SizeMismatch {
            left: f1.len(),
            right: f2.len(),
        });
    }
    Ok((1..=f1.len()).all(|u| {
        let (a, b) = (f1.parent[u], f2.parent[u]);
        a == b || a == 0 || b == 0
    }))
}

/// Attaches `n` new leaves `n+1..=2n` to the root of a tree on `n` nodes.
pub fn anchor(tree: &LabeledForest) -> Result<LabeledForest> {
    let root = tree.root()?;
    let n = tree.len();
    let mut parent = tree.parent.clone();
    parent.extend(std::iter::repeat_n(root, n));
    Ok(LabeledForest { parent })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn forest(p: &[usize]) -> LabeledForest {
        LabeledForest::new(p.to_vec()).unwrap()
    }

    #[test]
    fn parse_examples() {
        let f = LabeledForest::parse("3\n0 1 1").unwrap();
        assert_eq!(f.parents(), &[0, 1, 1]);
        assert_eq!(f.root().unwrap(), 1);
        assert_eq!(LabeledForest::parse("1\n0").unwrap().len(), 1);
        assert!(matches!(LabeledForest::parse("2\n2 1"), Err(Error::Cycle { .. })));
    }

    #[test]
    fn parse_comments_and_errors() {
        let f = LabeledForest::parse("# a tree\n3   \n# parents\n0 1 1  \n").unwrap();
        assert_eq!(f.parents(), &[0, 1, 1]);
        assert!(matches!(LabeledForest::parse("3\n0 1"), Err(Error::Parse { .. })));
        assert!(matches!(LabeledForest::parse("2\n0 x"), Err(Error::Parse { .. })));
        assert!(matches!(LabeledForest::parse(""), Err(Error::Parse { .. })));
        assert!(matches!(
            LabeledForest::parse("2\n0 2"),
            Err(Error::SelfParent { node: 2 })
        ));
        assert!(matches!(
            LabeledForest::parse("2\n0 3"),
            Err(Error::ParentOutOfRange { .. })
        ));
        assert_eq!(LabeledForest::parse("0\n").unwrap().len(), 0);
    }

    #[test]
    fn text_round_trip() {
        let f = forest(&[0, 1, 1, 0, 4]);
        assert_eq!(LabeledForest::parse(&f.to_text()).unwrap(), f);
    }

    #[test]
    fn level_examples() {
        assert_eq!(forest(&[0, 1, 1]).levels(), vec![0, 1, 1]);
        assert_eq!(forest(&[0, 1, 2]).levels(), vec![0, 1, 2]);
        assert_eq!(forest(&[0, 0, 2]).levels(), vec![0, 0, 1]);
        assert_eq!(forest(&[3, 0, 2]).levels(), vec![2, 0, 1]);
    }

    #[test]
    fn apply_op_examples() {
        let f = forest(&[0, 1, 1]);
        assert_eq!(apply_op(&f, &EditOp::Cut { v: 2, u: 1 }).unwrap().parents(), &[0, 0, 1]);
        let id = EditOp::Permute(Permutation::identity(3));
        assert_eq!(apply_op(&f, &id).unwrap(), f);
        let swap = EditOp::Permute(Permutation::from_pairs(3, &[(1, 2), (2, 1)]).unwrap());
        assert_eq!(apply_op(&f, &swap).unwrap().parents(), &[2, 0, 2]);
    }

    #[test]
    fn apply_op_preconditions() {
        let f = forest(&[0, 1, 2]);
        assert_eq!(
            apply_op(&f, &EditOp::Cut { v: 3, u: 1 }),
            Err(Error::NotParent { v: 3, u: 1 })
        );
        assert_eq!(
            apply_op(&f, &EditOp::Cut { v: 1, u: 0 }),
            Err(Error::NotParent { v: 1, u: 0 })
        );
        assert_eq!(
            apply_op(&f, &EditOp::LinkAndCut { v: 2, u: 1, w: 3 }),
            Err(Error::DescendantTarget { v: 2, w: 3 })
        );
        assert_eq!(
            apply_op(&f, &EditOp::LinkAndCut { v: 3, u: 2, w: 1 })
                .unwrap()
                .parents(),
            &[0, 1, 1]
        );
        let short = EditOp::Permute(Permutation::identity(2));
        assert!(matches!(apply_op(&f, &short), Err(Error::SizeMismatch { .. })));
    }

    #[test]
    fn apply_script_examples() {
        let f = forest(&[0, 1, 1]);
        assert_eq!(apply_script(&f, &EditScript::new()).unwrap(), f);
        let s = EditScript {
            ops: vec![EditOp::Cut { v: 2, u: 1 }, EditOp::Cut { v: 3, u: 1 }],
        };
        assert_eq!(apply_script(&f, &s).unwrap().parents(), &[0, 0, 0]);
        let swap = Permutation::from_pairs(3, &[(1, 2), (2, 1)]).unwrap();
        let s = EditScript {
            ops: vec![EditOp::Permute(swap), EditOp::Cut { v: 1, u: 2 }],
        };
        assert_eq!(s.size(), 3);
        assert_eq!(apply_script(&f, &s).unwrap().parents(), &[0, 0, 2]);
        let bad = EditScript {
            ops: vec![EditOp::Cut { v: 2, u: 1 }, EditOp::Cut { v: 2, u: 1 }],
        };
        assert!(matches!(apply_script(&f, &bad), Err(Error::Script { index: 1, .. })));
    }

    #[test]
    fn similar_examples() {
        assert!(similar(&forest(&[0, 1]), &forest(&[2, 0])).unwrap());
        assert!(!similar(&forest(&[0, 1, 1]), &forest(&[0, 3, 1])).unwrap());
        let f = forest(&[0, 1, 2, 2]);
        assert!(similar(&f, &f).unwrap());
        assert!(similar(&forest(&[0]), &forest(&[0, 1])).is_err());
    }

    #[test]
    fn similar_is_not_transitive() {
        // exhaustive search over all forests on 3 nodes for a counterexample
        let mut all = Vec::new();
        for a in 0..=3 {
            for b in 0..=3 {
                for c in 0..=3 {
                    if let Ok(f) = LabeledForest::new(vec![a, b, c]) {
                        all.push(f);
                    }
                }
            }
        }
        let witness = all.iter().find_map(|fa| {
            all.iter().find_map(|fb| {
                all.iter()
                    .find(|fc| similar(fa, fb).unwrap() && similar(fb, fc).unwrap() && !similar(fa, fc).unwrap())
                    .map(|fc| (fa.clone(), fb.clone(), fc.clone()))
            })
        });
        assert!(witness.is_some());
        // the all-roots forest is similar to everything
        let (fa, fb, fc) = (forest(&[0, 0, 1]), forest(&[0, 0, 0]), forest(&[0, 0, 2]));
        assert!(similar(&fa, &fb).unwrap() && similar(&fb, &fc).unwrap());
        assert!(!similar(&fa, &fc).unwrap());
        // reflexive and symmetric over the same family
        for x in &all {
            assert!(similar(x, x).unwrap());
            for y in &all {
                assert_eq!(similar(x, y).unwrap(), similar(y, x).unwrap());
            }
        }
    }

    #[test]
    fn anchor_examples() {
        assert_eq!(anchor(&forest(&[0])).unwrap().parents(), &[0, 1]);
        let t = forest(&[0, 1, 1]);
        let a = anchor(&t).unwrap();
        assert_eq!(a.parents(), &[0, 1, 1, 1, 1, 1]);
        assert_eq!(&a.levels()[..3], t.levels().as_slice());
        assert!(matches!(anchor(&forest(&[0, 0])), Err(Error::NotATree { roots: 2 })));
    }

    #[test]
    fn permutation_basics() {
        let pi = Permutation::from_pairs(5, &[(1, 2), (2, 3), (3, 1)]).unwrap();
        assert_eq!(pi.size(), 3);
        assert_eq!(pi.cycles(), vec![vec![1, 2, 3]]);
        assert!(pi.after(&pi.inverse()).is_identity());
        assert!(Permutation::from_pairs(3, &[(1, 2)]).is_err());
        assert!(Permutation::from_images(vec![1, 1, 3]).is_err());
        assert_eq!(format!("{pi:?}"), "(1 2 3)");
    }

    #[test]
    fn script_text_round_trip() {
        let pi = Permutation::from_pairs(4, &[(3, 4), (4, 3)]).unwrap();
        let s = EditScript {
            ops: vec![
                EditOp::Cut { v: 2, u: 1 },
                EditOp::LinkAndCut { v: 3, u: 1, w: 2 },
                EditOp::Permute(pi),
            ],
        };
        let text = s.to_text();
        assert_eq!(text, "cut 2 1\nlink 3 1 2\nperm 3:4 4:3\n");
        assert_eq!(EditScript::parse(&text, 4).unwrap(), s);
        assert!(EditScript::parse("perm 1:2", 4).is_err());
        assert!(EditScript::parse("hop 1 2", 4).is_err());
    }
}
