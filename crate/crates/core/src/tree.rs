//! Rooted labelled trees and record detection.
//!
//! A [`RootedTree`] carries the labels `1..=n`. It is either rooted at one of
//! those labels (a rooted Cayley tree) or at the auxiliary node [`AUX_ROOT`],
//! whose children are the roots of a rooted forest. The auxiliary node is
//! never a record.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Label reserved for the auxiliary root of a forest.
pub const AUX_ROOT: usize = 0;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "TreeJson", into = "TreeJson")]
pub struct RootedTree {
    root: usize,
    /// `parents[v]` for `v` in `0..=n`. `None` at the root, and at slot 0
    /// when the tree is rooted inside `1..=n`.
    parents: Vec<Option<usize>>,
}

/// Wire format: `{"n": 3, "root": 0, "parent": {"1": 0, "2": 1, "3": 1}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeJson {
    pub n: usize,
    pub root: usize,
    pub parent: BTreeMap<usize, usize>,
}

impl RootedTree {
    /// Builds a tree from `parents`, indexed by label over `0..=n`.
    pub fn new(root: usize, parents: Vec<Option<usize>>) -> Result<Self> {
        if parents.is_empty() {
            return Err(Error::MalformedTree("parent table must include slot 0".into()));
        }
        let tree = RootedTree { root, parents };
        tree.validate()?;
        Ok(tree)
    }

    /// Builds a tree on `1..=n` from a map `label -> parent`; the root must be
    /// absent from the map.
    pub fn from_parent_map(n: usize, root: usize, parent: &BTreeMap<usize, usize>) -> Result<Self> {
        let mut parents = vec![None; n + 1];
        for (&label, &p) in parent {
            if label == 0 || label > n {
                return Err(Error::MalformedTree(format!("label {label} outside 1..={n}")));
            }
            parents[label] = Some(p);
        }
        Self::new(root, parents)
    }

    pub(crate) fn from_parents_unchecked(root: usize, parents: Vec<Option<usize>>) -> Self {
        debug_assert!(RootedTree { root, parents: parents.clone() }.validate().is_ok());
        RootedTree { root, parents }
    }

    /// The forest with no nodes: only the auxiliary root.
    pub fn empty_forest() -> Self {
        RootedTree {
            root: AUX_ROOT,
            parents: vec![None],
        }
    }

    fn validate(&self) -> Result<()> {
        let n = self.n();
        let aux = self.root == AUX_ROOT;
        if self.root > n {
            return Err(Error::MalformedTree(format!("root {} outside 0..={n}", self.root)));
        }
        if self.parents[0].is_some() {
            return Err(Error::MalformedTree("label 0 cannot have a parent".into()));
        }
        for v in 1..=n {
            match self.parents[v] {
                None if v == self.root => {}
                None => return Err(Error::MalformedTree(format!("label {v} has no parent"))),
                Some(_) if v == self.root => {
                    return Err(Error::MalformedTree(format!("root {v} has a parent")))
                }
                Some(p) if p > n || p == v || (p == AUX_ROOT && !aux) => {
                    return Err(Error::MalformedTree(format!("label {v} has invalid parent {p}")))
                }
                Some(_) => {}
            }
        }
        // Every label must reach the root without revisiting a node.
        const UNSEEN: u8 = 0;
        const ACTIVE: u8 = 1;
        const DONE: u8 = 2;
        let mut state = vec![UNSEEN; n + 1];
        state[self.root] = DONE;
        let mut path = Vec::new();
        for start in 1..=n {
            let mut v = start;
            while state[v] == UNSEEN {
                state[v] = ACTIVE;
                path.push(v);
                v = self.parents[v].expect("checked above");
            }
            if state[v] == ACTIVE {
                return Err(Error::MalformedTree(format!("cycle through label {v}")));
            }
            for u in path.drain(..) {
                state[u] = DONE;
            }
        }
        Ok(())
    }

    /// Hangs a tree rooted inside `1..=n` from the auxiliary root; trees
    /// already rooted there are returned unchanged.
    pub fn plant(&self) -> RootedTree {
        let mut parents = self.parents.clone();
        if self.root != AUX_ROOT {
            parents[self.root] = Some(AUX_ROOT);
        }
        RootedTree {
            root: AUX_ROOT,
            parents,
        }
    }

    /// Number of labelled nodes, excluding the auxiliary root.
    pub fn n(&self) -> usize {
        self.parents.len() - 1
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn is_aux_rooted(&self) -> bool {
        self.root == AUX_ROOT
    }

    /// Rooted at the auxiliary node, which has exactly one child.
    pub fn is_planted(&self) -> bool {
        self.is_aux_rooted() && self.parents[1..].iter().filter(|p| **p == Some(AUX_ROOT)).count() == 1
    }

    pub fn contains(&self, label: usize) -> bool {
        label <= self.n() && (label != AUX_ROOT || self.is_aux_rooted())
    }

    pub fn parent(&self, label: usize) -> Result<Option<usize>> {
        if !self.contains(label) {
            return Err(Error::UnknownLabel(label));
        }
        Ok(self.parents[label])
    }

    pub(crate) fn parents(&self) -> &[Option<usize>] {
        &self.parents
    }

    /// Children lists indexed by label over `0..=n`, each sorted increasingly.
    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut children = vec![Vec::new(); self.n() + 1];
        for (v, p) in self.parents.iter().enumerate() {
            if let Some(p) = p {
                children[*p].push(v);
            }
        }
        children
    }

    /// For each label, the largest label on its path to the root (itself
    /// included). The auxiliary root maps to 0.
    pub(crate) fn path_maxima(&self) -> Vec<usize> {
        const UNKNOWN: usize = usize::MAX;
        let mut best = vec![UNKNOWN; self.n() + 1];
        best[self.root] = self.root;
        let mut path = Vec::new();
        for start in 0..=self.n() {
            if best[start] != UNKNOWN || !self.contains(start) {
                continue;
            }
            let mut v = start;
            while best[v] == UNKNOWN {
                path.push(v);
                v = self.parents[v].expect("validated tree");
            }
            let mut m = best[v];
            while let Some(u) = path.pop() {
                m = m.max(u);
                best[u] = m;
            }
        }
        best
    }

    pub(crate) fn record_mask(&self) -> Vec<bool> {
        self.path_maxima()
            .iter()
            .enumerate()
            .map(|(v, &m)| v != AUX_ROOT && m == v)
            .collect()
    }

    /// Labels that are the largest on their path from the root, ascending.
    pub fn records(&self) -> Vec<usize> {
        self.record_mask()
            .iter()
            .enumerate()
            .filter_map(|(v, &is)| is.then_some(v))
            .collect()
    }

    pub fn record_count(&self) -> usize {
        self.record_mask().iter().filter(|&&r| r).count()
    }

    /// Number of edges between `label` and the root. For forests the
    /// auxiliary root is depth 0, so component roots sit at depth 1.
    pub fn depth(&self, label: usize) -> Result<usize> {
        if !self.contains(label) {
            return Err(Error::UnknownLabel(label));
        }
        let mut depth = 0;
        let mut v = label;
        while let Some(p) = self.parents[v] {
            depth += 1;
            v = p;
        }
        Ok(depth)
    }

    /// Depth of every label (slot 0 is meaningful only for forests).
    pub fn depths(&self) -> Vec<usize> {
        let mut depth = vec![usize::MAX; self.n() + 1];
        depth[self.root] = 0;
        let mut path = Vec::new();
        for start in 1..=self.n() {
            let mut v = start;
            while depth[v] == usize::MAX {
                path.push(v);
                v = self.parents[v].expect("validated tree");
            }
            let mut d = depth[v];
            while let Some(u) = path.pop() {
                d += 1;
                depth[u] = d;
            }
        }
        depth
    }

    pub fn to_json(&self) -> TreeJson {
        self.clone().into()
    }
}

impl From<RootedTree> for TreeJson {
    fn from(tree: RootedTree) -> Self {
        let parent = tree
            .parents
            .iter()
            .enumerate()
            .filter_map(|(v, p)| p.map(|p| (v, p)))
            .collect();
        TreeJson {
            n: tree.n(),
            root: tree.root,
            parent,
        }
    }
}

impl TryFrom<TreeJson> for RootedTree {
    type Error = Error;

    fn try_from(json: TreeJson) -> Result<Self> {
        RootedTree::from_parent_map(json.n, json.root, &json.parent)
    }
}
