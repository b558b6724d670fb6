//! Prüfer codes and exhaustive enumeration of rooted trees and forests.
//!
//! Rooted trees on `1..=n` are streamed as (code over `1..=n`, root) pairs in
//! lexicographic order; rooted forests on `1..=n` are streamed as codes over
//! `0..=n`, each decoded tree being rooted at the auxiliary node `0`. Both
//! streams can be cut into rank ranges that partition the full enumeration.

use std::ops::Range;

use crate::tree::{RootedTree, AUX_ROOT};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PruferCode {
    pub entries: Vec<usize>,
}

/// A labelled tree without a root, with edges stored as `(smaller, larger)`
/// pairs in increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnrootedTree {
    vertices: Vec<usize>,
    edges: Vec<(usize, usize)>,
}

impl UnrootedTree {
    pub fn new(vertices: Vec<usize>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let vertices = sorted_vertex_set(&vertices)?;
        if vertices.len() < 2 || edges.len() != vertices.len() - 1 {
            return Err(Error::MalformedTree(format!(
                "{} edges cannot span {} vertices",
                edges.len(),
                vertices.len()
            )));
        }
        let mut edges: Vec<_> = edges.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        edges.sort_unstable();
        // connectivity via a small union-find
        let mut link: Vec<usize> = (0..vertices.len()).collect();
        fn find(link: &mut [usize], mut x: usize) -> usize {
            while link[x] != x {
                link[x] = link[link[x]];
                x = link[x];
            }
            x
        }
        for &(a, b) in &edges {
            let ia = index_of(&vertices, a)?;
            let ib = index_of(&vertices, b)?;
            let (ra, rb) = (find(&mut link, ia), find(&mut link, ib));
            if ra == rb {
                return Err(Error::MalformedTree(format!("edge {{{a}, {b}}} closes a cycle")));
            }
            link[ra] = rb;
        }
        Ok(UnrootedTree { vertices, edges })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Orients the tree towards `root`. The vertex set must be `1..=n`
    /// (then `root` is in `1..=n`) or `0..=n` (then `root` must be 0).
    pub fn root_at(&self, root: usize) -> Result<RootedTree> {
        let max = *self.vertices.last().expect("at least two vertices");
        let offset = self.vertices[0];
        if offset > 1 || self.vertices.len() != max + 1 - offset {
            return Err(Error::MalformedTree("vertex set must be 1..=n or 0..=n".into()));
        }
        if offset == 0 && root != AUX_ROOT {
            return Err(Error::MalformedTree("trees on 0..=n must be rooted at 0".into()));
        }
        index_of(&self.vertices, root)?;
        let mut adjacency = vec![Vec::new(); max + 1];
        for &(a, b) in &self.edges {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        let mut parents = vec![None; max + 1];
        let mut seen = vec![false; max + 1];
        let mut stack = vec![root];
        seen[root] = true;
        while let Some(v) = stack.pop() {
            for &w in &adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    parents[w] = Some(v);
                    stack.push(w);
                }
            }
        }
        RootedTree::new(root, parents)
    }
}

impl RootedTree {
    /// Forgets the orientation. Needs at least two vertices, counting the
    /// auxiliary root when present.
    pub fn to_unrooted(&self) -> Result<UnrootedTree> {
        let first = if self.is_aux_rooted() { 0 } else { 1 };
        let vertices: Vec<usize> = (first..=self.n()).collect();
        let edges = self
            .parents()
            .iter()
            .enumerate()
            .filter_map(|(v, p)| p.map(|p| (v, p)))
            .collect();
        UnrootedTree::new(vertices, edges)
    }
}

fn sorted_vertex_set(vertices: &[usize]) -> Result<Vec<usize>> {
    let mut sorted = vertices.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidCode("duplicate vertex label".into()));
    }
    Ok(sorted)
}

fn index_of(vertices: &[usize], label: usize) -> Result<usize> {
    vertices
        .binary_search(&label)
        .map_err(|_| Error::InvalidCode(format!("label {label} is not in the vertex set")))
}

/// Linear-time decoding over vertex indices `0..m`. Returns the parent of
/// every index in the tree rooted at `m - 1`, whose own entry is `usize::MAX`.
fn decode_indices(code: &[usize], m: usize, degree: &mut Vec<usize>, parents: &mut Vec<usize>) {
    debug_assert_eq!(code.len() + 2, m);
    degree.clear();
    degree.resize(m, 1);
    for &x in code {
        degree[x] += 1;
    }
    parents.clear();
    parents.resize(m, usize::MAX);
    let mut ptr = 0;
    while degree[ptr] != 1 {
        ptr += 1;
    }
    let mut leaf = ptr;
    for &x in code {
        parents[leaf] = x;
        degree[x] -= 1;
        if degree[x] == 1 && x < ptr {
            leaf = x;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    parents[leaf] = m - 1;
}

/// Decodes `code` into the unique tree on `vertices` it represents.
pub fn decode(code: &PruferCode, vertices: &[usize]) -> Result<UnrootedTree> {
    let vertices = sorted_vertex_set(vertices)?;
    let m = vertices.len();
    if m < 2 || code.entries.len() + 2 != m {
        return Err(Error::InvalidCode(format!(
            "a code of length {} does not fit {} vertices",
            code.entries.len(),
            m
        )));
    }
    let indices = code
        .entries
        .iter()
        .map(|&label| index_of(&vertices, label))
        .collect::<Result<Vec<_>>>()?;
    let (mut degree, mut parents) = (Vec::new(), Vec::new());
    decode_indices(&indices, m, &mut degree, &mut parents);
    let edges = (0..m - 1).map(|i| (vertices[i], vertices[parents[i]])).collect();
    UnrootedTree::new(vertices, edges)
}

/// Inverse of [`decode`].
pub fn encode(tree: &UnrootedTree) -> Result<PruferCode> {
    let vertices = tree.vertices();
    let m = vertices.len();
    let mut adjacency = vec![Vec::new(); m];
    for &(a, b) in tree.edges() {
        let (ia, ib) = (index_of(vertices, a)?, index_of(vertices, b)?);
        adjacency[ia].push(ib);
        adjacency[ib].push(ia);
    }
    // orient towards the largest vertex
    let mut parent = vec![usize::MAX; m];
    let mut seen = vec![false; m];
    let mut stack = vec![m - 1];
    seen[m - 1] = true;
    while let Some(v) = stack.pop() {
        for &w in &adjacency[v] {
            if !seen[w] {
                seen[w] = true;
                parent[w] = v;
                stack.push(w);
            }
        }
    }
    let mut degree: Vec<usize> = adjacency.iter().map(Vec::len).collect();
    let mut entries = Vec::with_capacity(m.saturating_sub(2));
    let mut ptr = 0;
    while degree[ptr] != 1 {
        ptr += 1;
    }
    let mut leaf = ptr;
    for _ in 0..m.saturating_sub(2) {
        let next = parent[leaf];
        entries.push(vertices[next]);
        degree[next] -= 1;
        if degree[next] == 1 && next < ptr {
            leaf = next;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    Ok(PruferCode { entries })
}

/// Codes of a fixed length over `0..base`, in lexicographic order, starting
/// from a given rank.
#[derive(Clone, Debug)]
struct Odometer {
    base: usize,
    digits: Vec<usize>,
}

impl Odometer {
    fn at_rank(base: usize, len: usize, mut rank: u64) -> Self {
        let mut digits = vec![0; len];
        for d in digits.iter_mut().rev() {
            *d = (rank % base as u64) as usize;
            rank /= base as u64;
        }
        Odometer { base, digits }
    }

    fn advance(&mut self) {
        for d in self.digits.iter_mut().rev() {
            *d += 1;
            if *d < self.base {
                return;
            }
            *d = 0;
        }
    }
}

/// Reverses the parent pointers on the path from `new_root` to the current
/// root.
fn reroot(parents: &mut [usize], new_root: usize) {
    let mut prev = usize::MAX;
    let mut v = new_root;
    while v != usize::MAX {
        let next = parents[v];
        parents[v] = prev;
        prev = v;
        v = next;
    }
}

fn checked_count(base: usize, exp: usize) -> u64 {
    (base as u64)
        .checked_pow(exp as u32)
        .expect("enumeration size exceeds u64")
}

/// Number of rooted trees on `1..=n`, `n^(n-1)`.
pub fn rooted_tree_count(n: usize) -> u64 {
    match n {
        0 => 0,
        _ => checked_count(n, n - 1),
    }
}

/// Number of rooted forests on `1..=n`, `(n+1)^(n-1)`, with one empty forest.
pub fn rooted_forest_count(n: usize) -> u64 {
    match n {
        0 => 1,
        _ => checked_count(n + 1, n - 1),
    }
}

/// Stream of every rooted tree on `1..=n`, ordered by (code, root).
pub struct RootedTrees {
    n: usize,
    codes: Odometer,
    root: usize,
    remaining: u64,
    degree: Vec<usize>,
    scratch: Vec<usize>,
}

pub fn iter_rooted_trees(n: usize) -> RootedTrees {
    RootedTrees::range(n, 0..rooted_tree_count(n))
}

impl RootedTrees {
    /// The trees with ranks in `ranks`, where rank = code rank · n + (root − 1).
    pub fn range(n: usize, ranks: Range<u64>) -> Self {
        let end = ranks.end.min(rooted_tree_count(n));
        let start = ranks.start.min(end);
        let nn = n.max(1) as u64;
        RootedTrees {
            n,
            codes: Odometer::at_rank(n.max(1), n.saturating_sub(2), start / nn),
            root: (start % nn) as usize + 1,
            remaining: end - start,
            degree: Vec::new(),
            scratch: Vec::new(),
        }
    }
}

impl Iterator for RootedTrees {
    type Item = RootedTree;

    fn next(&mut self) -> Option<RootedTree> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let n = self.n;
        let tree = if n == 1 {
            RootedTree::from_parents_unchecked(1, vec![None, None])
        } else {
            decode_indices(&self.codes.digits, n, &mut self.degree, &mut self.scratch);
            reroot(&mut self.scratch, self.root - 1);
            let mut parents = Vec::with_capacity(n + 1);
            parents.push(None);
            parents.extend(
                self.scratch
                    .iter()
                    .map(|&p| (p != usize::MAX).then(|| p + 1)),
            );
            RootedTree::from_parents_unchecked(self.root, parents)
        };
        self.root += 1;
        if self.root > n {
            self.root = 1;
            self.codes.advance();
        }
        Some(tree)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = self.remaining as usize;
        (r, Some(r))
    }
}

/// Stream of every rooted forest on `1..=n`, as trees rooted at label 0,
/// ordered by code over `0..=n`.
pub struct RootedForests {
    n: usize,
    codes: Odometer,
    remaining: u64,
    degree: Vec<usize>,
    scratch: Vec<usize>,
}

pub fn iter_rooted_forests(n: usize) -> RootedForests {
    RootedForests::range(n, 0..rooted_forest_count(n))
}

impl RootedForests {
    pub fn range(n: usize, ranks: Range<u64>) -> Self {
        let end = ranks.end.min(rooted_forest_count(n));
        let start = ranks.start.min(end);
        RootedForests {
            n,
            codes: Odometer::at_rank(n + 1, n.saturating_sub(1), start),
            remaining: end - start,
            degree: Vec::new(),
            scratch: Vec::new(),
        }
    }
}

impl Iterator for RootedForests {
    type Item = RootedTree;

    fn next(&mut self) -> Option<RootedTree> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        if self.n == 0 {
            return Some(RootedTree::empty_forest());
        }
        let m = self.n + 1;
        decode_indices(&self.codes.digits, m, &mut self.degree, &mut self.scratch);
        reroot(&mut self.scratch, AUX_ROOT);
        let parents = self
            .scratch
            .iter()
            .map(|&p| (p != usize::MAX).then_some(p))
            .collect();
        self.codes.advance();
        Some(RootedTree::from_parents_unchecked(AUX_ROOT, parents))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = self.remaining as usize;
        (r, Some(r))
    }
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;

    fn all_codes(m: usize) -> Vec<PruferCode> {
        let len = m - 2;
        let count = (m as u64).pow(len as u32);
        let mut odo = Odometer::at_rank(m, len, 0);
        (0..count)
            .map(|_| {
                let code = PruferCode {
                    entries: odo.digits.iter().map(|d| d + 1).collect(),
                };
                odo.advance();
                code
            })
            .collect()
    }

    #[test]
    fn empty_code_is_a_single_edge() {
        let t = decode(&PruferCode { entries: vec![] }, &[1, 2]).unwrap();
        assert_eq!(t.edges(), &[(1, 2)]);
    }

    #[test]
    fn code_one_is_a_star() {
        let t = decode(&PruferCode { entries: vec![1] }, &[1, 2, 3]).unwrap();
        assert_eq!(t.edges(), &[(1, 2), (1, 3)]);
    }

    #[test]
    fn known_decoding() {
        // textbook example: code (4, 4, 4, 5) on 1..=6
        let t = decode(&PruferCode { entries: vec![4, 4, 4, 5] }, &[1, 2, 3, 4, 5, 6]).unwrap();
        assert_eq!(t.edges(), &[(1, 4), (2, 4), (3, 4), (4, 5), (5, 6)]);
    }

    #[test]
    fn exhaustive_round_trips() {
        for m in 2..=6 {
            let vertices: Vec<usize> = (1..=m).collect();
            let mut trees = HashSet::new();
            for code in all_codes(m) {
                let tree = decode(&code, &vertices).unwrap();
                assert_eq!(encode(&tree).unwrap(), code);
                trees.insert(tree);
            }
            assert_eq!(trees.len() as u64, (m as u64).pow(m as u32 - 2));
        }
    }

    #[test]
    fn arbitrary_vertex_sets() {
        let vertices = [0, 5, 9, 12];
        let code = PruferCode { entries: vec![9, 0] };
        let t = decode(&code, &vertices).unwrap();
        assert_eq!(encode(&t).unwrap(), code);
    }

    #[test]
    fn decode_errors() {
        assert!(decode(&PruferCode { entries: vec![1] }, &[1, 2]).is_err());
        assert!(decode(&PruferCode { entries: vec![4] }, &[1, 2, 3]).is_err());
        assert!(decode(&PruferCode { entries: vec![] }, &[1]).is_err());
    }

    #[test]
    fn stream_sizes() {
        assert_eq!(iter_rooted_trees(0).count(), 0);
        assert_eq!(iter_rooted_trees(1).count(), 1);
        assert_eq!(iter_rooted_trees(2).count(), 2);
        assert_eq!(iter_rooted_trees(3).count(), 9);
        assert_eq!(iter_rooted_forests(0).count(), 1);
        assert_eq!(iter_rooted_forests(2).count(), 3);
        assert_eq!(iter_rooted_forests(3).count(), 16);
    }

    #[test]
    fn streams_are_distinct_and_exhaustive() {
        for n in 1..=6 {
            let trees: HashSet<_> = iter_rooted_trees(n).collect();
            assert_eq!(trees.len() as u64, rooted_tree_count(n));
            assert!(trees.iter().all(|t| !t.is_aux_rooted()));
            let forests: HashSet<_> = iter_rooted_forests(n).collect();
            assert_eq!(forests.len() as u64, rooted_forest_count(n));
            assert!(forests.iter().all(|t| t.is_aux_rooted()));
        }
    }

    #[test]
    fn ranges_partition_the_streams() {
        let n = 5;
        let whole: Vec<_> = iter_rooted_trees(n).collect();
        let cuts = [0, 7, 100, 311, rooted_tree_count(n)];
        let pieces: Vec<_> = cuts
            .windows(2)
            .flat_map(|w| RootedTrees::range(n, w[0]..w[1]))
            .collect();
        assert_eq!(pieces, whole);

        let whole: Vec<_> = iter_rooted_forests(n).collect();
        let cuts = [0, 1, 13, 600, rooted_forest_count(n)];
        let pieces: Vec<_> = cuts
            .windows(2)
            .flat_map(|w| RootedForests::range(n, w[0]..w[1]))
            .collect();
        assert_eq!(pieces, whole);
    }

    #[test]
    fn tree_order_is_code_then_root() {
        let trees: Vec<_> = iter_rooted_trees(3).collect();
        let roots: Vec<_> = trees.iter().map(RootedTree::root).collect();
        assert_eq!(roots, vec![1, 2, 3, 1, 2, 3, 1, 2, 3]);
        for t in &trees {
            let code = encode(&t.to_unrooted().unwrap()).unwrap();
            assert_eq!(code.entries.len(), 1);
        }
    }

    #[test]
    fn streamed_trees_agree_with_decode() {
        for (rank, t) in iter_rooted_forests(4).enumerate() {
            let code = encode(&t.to_unrooted().unwrap()).unwrap();
            let expected = Odometer::at_rank(5, 3, rank as u64).digits;
            assert_eq!(code.entries, expected);
            assert_eq!(decode(&code, &[0, 1, 2, 3, 4]).unwrap().root_at(0).unwrap(), t);
        }
    }
}
