use thiserror::Error;

/// Errors produced by parsing, validation, edit operations and distance computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("node {node} is its own parent")]
    SelfParent { node: usize },

    #[error("parent {parent} of node {node} is outside 1..={n}")]
    ParentOutOfRange { node: usize, parent: usize, n: usize },

    #[error("parent pointers form a cycle through node {node}")]
    Cycle { node: usize },

    #[error("forest has no root")]
    NoRoot,

    #[error("expected a tree, found {roots} roots")]
    NotATree { roots: usize },

    #[error("size mismatch: {left} vs {right} nodes")]
    SizeMismatch { left: usize, right: usize },

    #[error("label {label} is outside 1..={n}")]
    LabelOutOfRange { label: usize, n: usize },

    #[error("{u} is not the parent of {v}")]
    NotParent { v: usize, u: usize },

    #[error("{w} is a descendant of {v}")]
    DescendantTarget { v: usize, w: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("operation {index} failed: {source}")]
    Script {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("trees are not isomorphic")]
    NotIsomorphic,

    #[error("root labels differ: {left} vs {right}")]
    RootMismatch { left: usize, right: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
