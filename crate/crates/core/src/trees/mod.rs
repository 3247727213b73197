//! Min-max trees, the HR operators acting on them, and the André and
//! Simsun permutations they classify.

mod andre;
mod checks;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::perm::Permutation;

pub use andre::{andre_tables, classify, factorize, AndreTable, ClassKind, Factorization};
pub use checks::{verify_tree, TreeCheck, TREE_CHECKS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeKind {
    Leaf,
    Min,
    Max,
}

/// The min-max tree of a word of distinct letters.
///
/// Nodes are indexed by their inorder position, which is also their index
/// in the source word, so every subtree covers a contiguous interval.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MinMaxTree {
    labels: Vec<u32>,
    left: Vec<Option<usize>>,
    right: Vec<Option<usize>>,
    span: Vec<(usize, usize)>,
    root: usize,
}

impl MinMaxTree {
    pub fn build(word: &[u32]) -> Result<Self> {
        if word.is_empty() {
            return invalid("a min-max tree needs at least one letter");
        }
        Permutation::from_word(word.to_vec())?;
        let n = word.len();
        let mut tree = MinMaxTree {
            labels: word.to_vec(),
            left: vec![None; n],
            right: vec![None; n],
            span: vec![(0, 0); n],
            root: 0,
        };
        tree.root = tree.attach(0, n - 1);
        Ok(tree)
    }

    /// Builds the subtree on `lo..=hi` and returns its root.
    fn attach(&mut self, lo: usize, hi: usize) -> usize {
        let slice = &self.labels[lo..=hi];
        let (lo_v, hi_v) = (*slice.iter().min().unwrap(), *slice.iter().max().unwrap());
        let i = lo + slice.iter().position(|&v| v == lo_v || v == hi_v).unwrap();
        self.span[i] = (lo, hi);
        self.left[i] = (i > lo).then(|| self.attach(lo, i - 1));
        self.right[i] = (i < hi).then(|| self.attach(i + 1, hi));
        i
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Inorder readout.
    pub fn word(&self) -> &[u32] {
        &self.labels
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn label(&self, node: usize) -> u32 {
        self.labels[node]
    }

    pub fn left(&self, node: usize) -> Option<usize> {
        self.left[node]
    }

    pub fn right(&self, node: usize) -> Option<usize> {
        self.right[node]
    }

    fn subtree(&self, node: usize) -> &[u32] {
        let (lo, hi) = self.span[node];
        &self.labels[lo..=hi]
    }

    pub fn kind(&self, node: usize) -> NodeKind {
        if self.left[node].is_none() && self.right[node].is_none() {
            NodeKind::Leaf
        } else if self.labels[node] == *self.subtree(node).iter().min().unwrap() {
            NodeKind::Min
        } else {
            NodeKind::Max
        }
    }

    /// Whether every node with a child is a min node.
    pub fn all_interior_min(&self) -> bool {
        (0..self.len()).all(|i| self.kind(i) != NodeKind::Max)
    }

    /// `ψ_i` for the node at 1-based inorder position `i`.
    pub fn psi(&self, i: usize) -> Result<MinMaxTree> {
        let mut out = self.clone();
        out.psi_in_place(i)?;
        Ok(out)
    }

    fn psi_in_place(&mut self, i: usize) -> Result<()> {
        if i == 0 || i > self.len() {
            return invalid(format!("HR index {i} outside 1..={}", self.len()));
        }
        let node = i - 1;
        if self.right[node].is_none() {
            return Ok(());
        }
        let hi = self.span[node].1;
        let pivot = self.labels[node];
        let range = node + 1..=hi;
        let right = &self.labels[range.clone()];
        let new_pivot = match self.kind(node) {
            NodeKind::Min => *right.iter().max().unwrap(),
            _ => *right.iter().min().unwrap(),
        };
        let mut pool: Vec<u32> = right.iter().copied().filter(|&v| v != new_pivot).chain([pivot]).collect();
        pool.sort_unstable();
        let mut order: Vec<usize> = range.collect();
        order.sort_by_key(|&k| self.labels[k]);
        for (k, v) in order.into_iter().zip(pool) {
            self.labels[k] = v;
        }
        self.labels[node] = new_pivot;
        Ok(())
    }

    /// `ψ_S`: applies `ψ_i` once for each distinct index in `indices`.
    pub fn hr_apply(&self, indices: &[usize]) -> Result<MinMaxTree> {
        let mut out = self.clone();
        for &i in indices.iter().collect::<BTreeSet<_>>() {
            out.psi_in_place(i)?;
        }
        Ok(out)
    }

    /// Indented rendering, one node per line, with the side (`L`/`R`) of
    /// each child and a `[min]`/`[max]` tag on interior nodes.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_node(self.root, 0, "", &mut out);
        out
    }

    fn render_node(&self, node: usize, depth: usize, side: &str, out: &mut String) {
        let tag = match self.kind(node) {
            NodeKind::Leaf => "",
            NodeKind::Min => " [min]",
            NodeKind::Max => " [max]",
        };
        out.push_str(&format!("{}{side}{}{tag}\n", "  ".repeat(depth), self.labels[node]));
        if let Some(l) = self.left[node] {
            self.render_node(l, depth + 1, "L ", out);
        }
        if let Some(r) = self.right[node] {
            self.render_node(r, depth + 1, "R ", out);
        }
    }
}

impl fmt::Display for MinMaxTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
