//! Record decomposition of trees rooted at the auxiliary node.
//!
//! Cutting every edge between a record and its parent splits a tree into
//! bonsais (trees whose root is their only record, i.e. their largest label).
//! Sorted by root label, the bonsais together with the parent of each bonsai
//! root after the first (the attachment sequence) determine the tree.
//!
//! This module also holds the type-indexed counts: how many restricted flags,
//! bonsai fillings and attachment sequences realise a given bonsai type, and
//! how many rooted trees and forests have that type.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arith::{expect_natural, multinomial, pow, to_rational};
use crate::composition::Composition;
use crate::tree::{RootedTree, TreeJson, AUX_ROOT};
use crate::{Error, Result};

/// A rooted tree on an arbitrary label set whose root is its largest label.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "TreeJson", into = "TreeJson")]
pub struct Bonsai {
    root: usize,
    parent: BTreeMap<usize, usize>,
}

impl Bonsai {
    pub fn new(root: usize, parent: BTreeMap<usize, usize>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidDecomposition(msg));
        if root == AUX_ROOT {
            return bad("a bonsai cannot contain label 0".into());
        }
        if parent.contains_key(&root) {
            return bad(format!("bonsai root {root} has a parent"));
        }
        if let Some((&label, _)) = parent.iter().next_back().filter(|(&l, _)| l > root) {
            return bad(format!("bonsai rooted at {root} contains the larger label {label}"));
        }
        for (&label, &p) in &parent {
            if label == AUX_ROOT || (p != root && !parent.contains_key(&p)) {
                return bad(format!("label {label} hangs from {p}, outside its bonsai"));
            }
        }
        // every label must reach the root
        let mut reached: BTreeSet<usize> = BTreeSet::from([root]);
        for &start in parent.keys() {
            let mut path = Vec::new();
            let mut v = start;
            while !reached.contains(&v) {
                if path.len() > parent.len() {
                    return bad(format!("cycle in the bonsai rooted at {root}"));
                }
                path.push(v);
                v = parent[&v];
            }
            reached.extend(path);
        }
        Ok(Bonsai { root, parent })
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn size(&self) -> usize {
        self.parent.len() + 1
    }

    /// Labels in increasing order (the root is the last one).
    pub fn labels(&self) -> impl Iterator<Item = usize> + '_ {
        self.parent.keys().copied().chain(std::iter::once(self.root))
    }

    pub fn parent_map(&self) -> &BTreeMap<usize, usize> {
        &self.parent
    }
}

impl From<Bonsai> for TreeJson {
    fn from(b: Bonsai) -> Self {
        TreeJson {
            n: b.size(),
            root: b.root,
            parent: b.parent,
        }
    }
}

impl TryFrom<TreeJson> for Bonsai {
    type Error = Error;

    fn try_from(json: TreeJson) -> Result<Self> {
        let b = Bonsai::new(json.root, json.parent)?;
        if b.size() != json.n {
            return Err(Error::InvalidDecomposition(format!(
                "bonsai declares {} nodes but has {}",
                json.n,
                b.size()
            )));
        }
        Ok(b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "DecompositionJson", into = "DecompositionJson")]
pub struct RecordDecomposition {
    bonsais: Vec<Bonsai>,
    attachments: Vec<usize>,
}

/// Wire format: `{"bonsais": [tree, ...], "attachments": [label, ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub bonsais: Vec<Bonsai>,
    pub attachments: Vec<usize>,
}

impl From<RecordDecomposition> for DecompositionJson {
    fn from(d: RecordDecomposition) -> Self {
        DecompositionJson {
            bonsais: d.bonsais,
            attachments: d.attachments,
        }
    }
}

impl TryFrom<DecompositionJson> for RecordDecomposition {
    type Error = Error;

    fn try_from(json: DecompositionJson) -> Result<Self> {
        RecordDecomposition::new(json.bonsais, json.attachments)
    }
}

impl RecordDecomposition {
    pub fn new(bonsais: Vec<Bonsai>, attachments: Vec<usize>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidDecomposition(msg));
        if bonsais.is_empty() {
            return bad("no bonsais".into());
        }
        if attachments.len() + 1 != bonsais.len() {
            return bad(format!(
                "{} bonsais need {} attachments, got {}",
                bonsais.len(),
                bonsais.len() - 1,
                attachments.len()
            ));
        }
        if bonsais.windows(2).any(|w| w[0].root >= w[1].root) {
            return bad("bonsai roots must increase".into());
        }
        let n: usize = bonsais.iter().map(Bonsai::size).sum();
        let mut seen = vec![false; n + 1];
        for b in &bonsais {
            for label in b.labels() {
                if label > n || std::mem::replace(&mut seen[label], true) {
                    return bad(format!("labels are not a partition of 1..={n} (label {label})"));
                }
            }
        }
        // attachments[i] must already be placed when bonsai i + 1 is grafted
        let mut placed = BTreeSet::from([AUX_ROOT]);
        for (i, &a) in attachments.iter().enumerate() {
            placed.extend(bonsais[i].labels());
            if !placed.contains(&a) {
                return bad(format!(
                    "bonsai rooted at {} attaches to {a}, which is not available yet",
                    bonsais[i + 1].root
                ));
            }
        }
        Ok(RecordDecomposition {
            bonsais,
            attachments,
        })
    }

    pub fn bonsais(&self) -> &[Bonsai] {
        &self.bonsais
    }

    pub fn attachments(&self) -> &[usize] {
        &self.attachments
    }

    pub fn n(&self) -> usize {
        self.bonsais.iter().map(Bonsai::size).sum()
    }

    pub fn bonsai_type(&self) -> Composition {
        Composition::new(self.bonsais.iter().map(Bonsai::size).collect()).expect("bonsais are nonempty")
    }

    /// Source tree was planted, i.e. no bonsai after the first hangs from 0.
    pub fn is_planted(&self) -> bool {
        !self.attachments.contains(&AUX_ROOT)
    }
}

/// Splits a tree rooted at the auxiliary node into its record decomposition.
pub fn decompose(tree: &RootedTree) -> Result<RecordDecomposition> {
    if !tree.is_aux_rooted() {
        return Err(Error::NotAuxRooted(tree.root()));
    }
    if tree.n() == 0 {
        return Err(Error::InvalidDecomposition("the empty forest has no bonsais".into()));
    }
    let records = tree.record_mask();
    let parents = tree.parents();
    // owner[v]: the record heading the bonsai containing v
    let mut owner = vec![usize::MAX; tree.n() + 1];
    let mut path = Vec::new();
    for start in 1..=tree.n() {
        let mut v = start;
        while owner[v] == usize::MAX && !records[v] {
            path.push(v);
            v = parents[v].expect("non-records have parents");
        }
        let head = if records[v] { v } else { owner[v] };
        owner[v] = head;
        for u in path.drain(..) {
            owner[u] = head;
        }
    }
    let mut groups: BTreeMap<usize, BTreeMap<usize, usize>> = BTreeMap::new();
    for v in 1..=tree.n() {
        let entry = groups.entry(owner[v]).or_default();
        if !records[v] {
            entry.insert(v, parents[v].expect("non-records have parents"));
        }
    }
    let bonsais = groups
        .into_iter()
        .map(|(root, parent)| Bonsai { root, parent })
        .collect::<Vec<_>>();
    let attachments = bonsais[1..]
        .iter()
        .map(|b| parents[b.root].expect("records have parents"))
        .collect();
    Ok(RecordDecomposition {
        bonsais,
        attachments,
    })
}

/// Regrafts the bonsais: the first to the auxiliary root, every other one to
/// its attachment label.
pub fn reconstruct(d: &RecordDecomposition) -> RootedTree {
    let n = d.n();
    let mut parents = vec![None; n + 1];
    for b in &d.bonsais {
        for (&label, &p) in &b.parent {
            parents[label] = Some(p);
        }
    }
    parents[d.bonsais[0].root] = Some(AUX_ROOT);
    for (b, &a) in d.bonsais[1..].iter().zip(&d.attachments) {
        parents[b.root] = Some(a);
    }
    RootedTree::new(AUX_ROOT, parents).expect("a valid decomposition reconstructs a tree")
}

/// Nested sets `S_1 ⊆ ... ⊆ S_k = {1..n}` where the largest element of each
/// set is missing from the previous one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RestrictedFlag {
    sets: Vec<BTreeSet<usize>>,
}

impl RestrictedFlag {
    pub fn new(sets: Vec<BTreeSet<usize>>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        let Some(last) = sets.last() else {
            return bad("a flag needs at least one set".into());
        };
        let n = last.len();
        if last.iter().copied().ne(1..=n) {
            return bad("the last set of a flag must be 1..=n".into());
        }
        for (i, w) in sets.windows(2).enumerate() {
            if w[0].len() >= w[1].len() || !w[0].is_subset(&w[1]) {
                return bad(format!("set {} is not strictly contained in set {}", i + 1, i + 2));
            }
            if w[0].contains(w[1].last().expect("nonempty")) {
                return bad(format!("set {} contains the maximum of set {}", i + 1, i + 2));
            }
        }
        if sets[0].is_empty() {
            return bad("the first set is empty".into());
        }
        Ok(RestrictedFlag { sets })
    }

    pub fn sets(&self) -> &[BTreeSet<usize>] {
        &self.sets
    }

    /// Sizes of the successive differences.
    pub fn flag_type(&self) -> Composition {
        let mut previous = 0;
        let parts = self
            .sets
            .iter()
            .map(|s| std::mem::replace(&mut previous, s.len()))
            .zip(&self.sets)
            .map(|(prev, s)| s.len() - prev)
            .collect();
        Composition::new(parts).expect("strictly increasing sets")
    }
}

pub fn restricted_flag_of(d: &RecordDecomposition) -> RestrictedFlag {
    let mut acc = BTreeSet::new();
    let sets = d
        .bonsais
        .iter()
        .map(|b| {
            acc.extend(b.labels());
            acc.clone()
        })
        .collect();
    RestrictedFlag { sets }
}

/// `multinomial(n; t) * t_1 ... t_k / [t]_k!`.
pub fn count_restricted_flags(t: &Composition) -> Result<BigUint> {
    let product: BigUint = t.parts().iter().map(|&p| BigUint::from(p)).product();
    let value = to_rational(&(multinomial(t.parts()) * product))
        / to_rational(&t.prefix_sum_factorial(t.len()));
    expect_natural(&value, format!("restricted flags of type {t}"))
}

/// `prod t_i^(t_i - 2)`: bonsai sequences compatible with one flag of type `t`.
pub fn count_bonsai_fillings(t: &Composition) -> BigUint {
    t.parts().iter().map(|&p| crate::arith::cayley_unrooted(p)).product()
}

/// `prod_{i<k} ([t]_i + 1)`: attachment sequences of a forest.
pub fn count_attachments_forest(t: &Composition) -> BigUint {
    (1..t.len()).map(|i| BigUint::from(t.prefix_sum(i) + 1)).product()
}

/// `[t]_{k-1}!`: attachment sequences of a planted tree.
pub fn count_attachments_tree(t: &Composition) -> BigUint {
    t.prefix_sum_factorial(t.len() - 1)
}

fn type_weight(t: &Composition) -> BigRational {
    let powers: BigUint = t.parts().iter().map(|&p| pow(p, p - 1)).product();
    to_rational(&(multinomial(t.parts()) * powers)) / to_rational(&BigUint::from(t.total()))
}

/// Rooted trees on `1..=n` of bonsai type `t`:
/// `(1/n) multinomial(n; t) prod t_i^(t_i - 1)`.
pub fn count_trees_of_type(t: &Composition) -> Result<BigUint> {
    expect_natural(&type_weight(t), format!("trees of type {t}"))
}

/// Rooted forests on `1..=n` of bonsai type `t`: the tree count times
/// `prod_{i<k} (1 + 1/[t]_i)`.
pub fn count_forests_of_type(t: &Composition) -> Result<BigUint> {
    let correction: BigRational = (1..t.len())
        .map(|i| {
            let s = to_rational(&BigUint::from(t.prefix_sum(i)));
            BigRational::one() + s.recip()
        })
        .product();
    expect_natural(&(type_weight(t) * correction), format!("forests of type {t}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::composition::{all_compositions, compositions};
    use crate::prufer::iter_rooted_forests;
    use crate::tree::fixtures::running_example;

    fn comp(parts: &[usize]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn running_example_decomposition() {
        let d = decompose(&running_example()).unwrap();
        assert_eq!(d.bonsai_type(), comp(&[4, 1, 1, 2, 5, 1]));
        assert_eq!(d.attachments(), &[0, 1, 4, 0, 11]);
        let roots: Vec<_> = d.bonsais().iter().map(Bonsai::root).collect();
        assert_eq!(roots, vec![4, 5, 7, 10, 13, 14]);
        assert_eq!(d.bonsais()[0].labels().collect::<Vec<_>>(), vec![1, 2, 3, 4]);
        assert_eq!(reconstruct(&d), running_example());
    }

    #[test]
    fn running_example_flag() {
        let flag = restricted_flag_of(&decompose(&running_example()).unwrap());
        let expected: Vec<Vec<usize>> = vec![
            vec![1, 2, 3, 4],
            vec![1, 2, 3, 4, 5],
            vec![1, 2, 3, 4, 5, 7],
            vec![1, 2, 3, 4, 5, 7, 9, 10],
            (1..=13).collect(),
            (1..=14).collect(),
        ];
        let got: Vec<Vec<usize>> = flag.sets().iter().map(|s| s.iter().copied().collect()).collect();
        assert_eq!(got, expected);
        assert_eq!(flag.flag_type(), comp(&[4, 1, 1, 2, 5, 1]));
        assert!(RestrictedFlag::new(flag.sets().to_vec()).is_ok());
    }

    #[test]
    fn single_bonsai() {
        let edges = BTreeMap::from([(4, 0), (1, 4), (2, 1), (3, 4)]);
        let tree = RootedTree::from_parent_map(4, 0, &edges).unwrap();
        let d = decompose(&tree).unwrap();
        assert_eq!(d.bonsais().len(), 1);
        assert!(d.attachments().is_empty());
        let flag = restricted_flag_of(&d);
        assert_eq!(flag.sets().len(), 1);
    }

    #[test]
    fn increasing_path() {
        let edges = BTreeMap::from([(1, 0), (2, 1), (3, 2)]);
        let tree = RootedTree::from_parent_map(3, 0, &edges).unwrap();
        let d = decompose(&tree).unwrap();
        assert_eq!(d.bonsai_type(), comp(&[1, 1, 1]));
        assert_eq!(d.attachments(), &[1, 2]);
        assert!(d.is_planted());
        let sets: Vec<Vec<usize>> = restricted_flag_of(&d)
            .sets()
            .iter()
            .map(|s| s.iter().copied().collect())
            .collect();
        assert_eq!(sets, vec![vec![1], vec![1, 2], vec![1, 2, 3]]);
    }

    #[test]
    fn singleton_reconstruction() {
        let d = RecordDecomposition::new(vec![Bonsai::new(1, BTreeMap::new()).unwrap()], vec![]).unwrap();
        let t = reconstruct(&d);
        assert_eq!(t.n(), 1);
        assert_eq!(t.parent(1).unwrap(), Some(0));
    }

    #[test]
    fn non_aux_rooted_input_is_rejected() {
        let tree = RootedTree::from_parent_map(2, 2, &BTreeMap::from([(1, 2)])).unwrap();
        assert!(matches!(decompose(&tree), Err(Error::NotAuxRooted(2))));
    }

    #[test]
    fn invalid_decompositions_are_rejected() {
        let b = |root, edges: &[(usize, usize)]| Bonsai::new(root, edges.iter().copied().collect());
        // root not maximal
        assert!(b(1, &[(2, 1)]).is_err());
        // attachment to a label that is not yet placed
        let d = RecordDecomposition::new(vec![b(1, &[]).unwrap(), b(2, &[]).unwrap(), b(3, &[]).unwrap()], vec![2, 0]);
        assert!(d.is_err());
        // roots out of order
        let d = RecordDecomposition::new(vec![b(2, &[]).unwrap(), b(1, &[]).unwrap()], vec![0]);
        assert!(d.is_err());
        // labels not covering 1..=n
        let d = RecordDecomposition::new(vec![b(1, &[]).unwrap(), b(3, &[]).unwrap()], vec![1]);
        assert!(d.is_err());
        // wrong number of attachments
        let d = RecordDecomposition::new(vec![b(1, &[]).unwrap(), b(2, &[]).unwrap()], vec![]);
        assert!(d.is_err());
    }

    #[test]
    fn exhaustive_bijection_small() {
        for n in 1..=5 {
            for tree in iter_rooted_forests(n) {
                let d = decompose(&tree).unwrap();
                assert_eq!(d.bonsais().len(), tree.record_count());
                assert_eq!(d.is_planted(), tree.is_planted());
                assert_eq!(reconstruct(&d), tree);
                let again = RecordDecomposition::new(d.bonsais().to_vec(), d.attachments().to_vec()).unwrap();
                assert_eq!(decompose(&reconstruct(&again)).unwrap(), d);
            }
        }
    }

    #[test]
    fn json_shape() {
        let d = decompose(&running_example()).unwrap();
        let text = serde_json::to_string(&d).unwrap();
        assert!(text.starts_with(r#"{"bonsais":[{"n":4,"root":4,"parent":{"1":4,"2":4,"3":1}}"#));
        assert!(text.ends_with(r#""attachments":[0,1,4,0,11]}"#));
        let back: RecordDecomposition = serde_json::from_str(&text).unwrap();
        assert_eq!(back, d);
    }

    /// Brute-force count of restricted flags of type `t` by enumerating
    /// nested chains of subsets of {1..n}.
    fn brute_force_flags(t: &Composition) -> u64 {
        fn extend(top: u32, remaining: &[usize]) -> u64 {
            // `top` is a bitmask for S_{i+1}; choose S_i inside it
            let Some((&size, rest)) = remaining.split_last() else { return 1 };
            let max_bit = 31 - top.leading_zeros();
            let target = top.count_ones() as usize - size;
            let mut total = 0;
            let mut sub = top;
            loop {
                if sub.count_ones() as usize == target && sub & (1 << max_bit) == 0 && (target == 0) == rest.is_empty() {
                    total += if rest.is_empty() { 1 } else { extend(sub, rest) };
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & top;
            }
            total
        }
        let n = t.total();
        extend((1u32 << n) - 1, t.parts())
    }

    #[test]
    fn restricted_flag_counts() {
        assert_eq!(count_restricted_flags(&comp(&[2, 1])).unwrap(), big(1));
        assert_eq!(count_restricted_flags(&comp(&[1, 2])).unwrap(), big(2));
        assert_eq!(count_restricted_flags(&comp(&[1, 1])).unwrap(), big(1));
        assert_eq!(count_restricted_flags(&comp(&[6])).unwrap(), big(1));
        assert_ne!(
            count_restricted_flags(&comp(&[1, 2])).unwrap(),
            count_restricted_flags(&comp(&[2, 1])).unwrap()
        );
        for n in 1..=8 {
            for t in all_compositions(n) {
                assert_eq!(count_restricted_flags(&t).unwrap(), big(brute_force_flags(&t)), "type {t}");
            }
        }
    }

    #[test]
    fn filling_and_attachment_counts() {
        assert_eq!(count_bonsai_fillings(&comp(&[4, 1, 1, 2, 5, 1])), big(2000));
        assert_eq!(count_bonsai_fillings(&comp(&[1, 1, 1, 1])), big(1));
        assert_eq!(count_bonsai_fillings(&comp(&[3])), big(3));
        assert_eq!(count_attachments_forest(&comp(&[2, 3])), big(3));
        assert_eq!(count_attachments_forest(&comp(&[5])), big(1));
        assert_eq!(count_attachments_forest(&comp(&[1, 1, 1])), big(6));
        assert_eq!(count_attachments_tree(&comp(&[2, 3])), big(2));
        assert_eq!(count_attachments_tree(&comp(&[5])), big(1));
        assert_eq!(count_attachments_tree(&comp(&[1, 1, 1])), big(2));
    }

    #[test]
    fn type_counts() {
        assert_eq!(count_trees_of_type(&comp(&[2, 1])).unwrap(), big(2));
        assert_eq!(count_trees_of_type(&comp(&[1, 2])).unwrap(), big(2));
        for n in 1..=7 {
            assert_eq!(count_trees_of_type(&comp(&[n])).unwrap(), crate::arith::cayley_unrooted(n));
            assert_eq!(count_forests_of_type(&comp(&[n])).unwrap(), crate::arith::cayley_unrooted(n));
        }
        assert_eq!(count_forests_of_type(&comp(&[1, 1])).unwrap(), big(2));
        let r32: BigUint = compositions(3, 2).map(|t| count_forests_of_type(&t).unwrap()).sum();
        assert_eq!(r32, big(7));
    }

    #[test]
    fn tree_counts_ignore_part_order() {
        let a = count_trees_of_type(&comp(&[3, 1, 2])).unwrap();
        for p in [[1, 2, 3], [2, 3, 1], [3, 2, 1], [1, 3, 2], [2, 1, 3]] {
            assert_eq!(count_trees_of_type(&comp(&p)).unwrap(), a);
        }
    }
}
