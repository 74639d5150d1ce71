//! Finite k-labeled forests with the homomorphism preorder.
//!
//! A forest is a finite poset in which every lower cone is a chain; trees
//! grow upward from their roots. `leq_h` decides existence of a monotone
//! label-preserving map, `minimize` rewrites a forest to the unique minimal
//! representative of its degree, and `canonical_form` turns "unique up to
//! isomorphism" into byte equality.

use std::collections::BTreeSet;
use thiserror::Error;

pub type Label = usize;
pub type NodeId = usize;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum ForestError {
    #[error("forest must contain at least one node")]
    EmptyForest,
    #[error("node {node} has more than one parent")]
    MultipleParents { node: NodeId },
    #[error("parent relation has a cycle through node {node}")]
    CycleDetected { node: NodeId },
    #[error("label {label} out of range for k = {k}")]
    LabelOutOfRange { label: Label, k: usize },
    #[error("node id {node} out of range for {len} nodes")]
    NodeOutOfRange { node: NodeId, len: usize },
    #[error("label counts differ: {left} vs {right}")]
    LabelCountMismatch { left: usize, right: usize },
    #[error("not a permutation of 0..{k}")]
    NotAPermutation { k: usize },
    #[error("map is not a monotone label-preserving morphism")]
    InvalidMorphism,
}

/// A finite k-labeled forest. Nodes are `0..len()`; each node has at most
/// one parent and a label in `[0, k)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabeledForest {
    k: usize,
    parent: Vec<Option<NodeId>>,
    label: Vec<Label>,
    children: Vec<Vec<NodeId>>,
    roots: Vec<NodeId>,
}

impl LabeledForest {
    /// Validates a parent-pointer description. The parent map already rules
    /// out multiple parents; cycles, label range and emptiness are checked.
    pub fn new(
        k: usize,
        parent: Vec<Option<NodeId>>,
        label: Vec<Label>,
    ) -> Result<Self, ForestError> {
        let n = parent.len();
        assert_eq!(n, label.len(), "parent and label vectors must have equal length");
        if n == 0 {
            return Err(ForestError::EmptyForest);
        }
        for (v, &l) in label.iter().enumerate() {
            if l >= k {
                return Err(ForestError::LabelOutOfRange { label: l, k });
            }
            if let Some(p) = parent[v] {
                if p >= n {
                    return Err(ForestError::NodeOutOfRange { node: p, len: n });
                }
            }
        }
        // walk parent chains; a chain longer than n nodes means a cycle
        for start in 0..n {
            let mut v = start;
            let mut steps = 0;
            while let Some(p) = parent[v] {
                v = p;
                steps += 1;
                if steps > n {
                    return Err(ForestError::CycleDetected { node: start });
                }
            }
        }
        let mut children = vec![Vec::new(); n];
        let mut roots = Vec::new();
        for v in 0..n {
            match parent[v] {
                Some(p) => children[p].push(v),
                None => roots.push(v),
            }
        }
        Ok(LabeledForest { k, parent, label, children, roots })
    }

    /// Validates a raw edge-list description (`(parent, child)` pairs); this
    /// is the entry point that can observe a `MultipleParents` violation.
    pub fn from_edges(
        k: usize,
        label: Vec<Label>,
        edges: &[(NodeId, NodeId)],
    ) -> Result<Self, ForestError> {
        let n = label.len();
        if n == 0 {
            return Err(ForestError::EmptyForest);
        }
        let mut parent: Vec<Option<NodeId>> = vec![None; n];
        for &(p, c) in edges {
            if p >= n {
                return Err(ForestError::NodeOutOfRange { node: p, len: n });
            }
            if c >= n {
                return Err(ForestError::NodeOutOfRange { node: c, len: n });
            }
            if parent[c].is_some() {
                return Err(ForestError::MultipleParents { node: c });
            }
            parent[c] = Some(p);
        }
        Self::new(k, parent, label)
    }

    pub fn singleton(k: usize, label: Label) -> Result<Self, ForestError> {
        Self::new(k, vec![None], vec![label])
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.label.len()
    }

    pub fn is_empty(&self) -> bool {
        false // non-empty by construction
    }

    pub fn label(&self, v: NodeId) -> Label {
        self.label[v]
    }

    pub fn parent(&self, v: NodeId) -> Option<NodeId> {
        self.parent[v]
    }

    pub fn children(&self, v: NodeId) -> &[NodeId] {
        &self.children[v]
    }

    pub fn roots(&self) -> &[NodeId] {
        &self.roots
    }

    pub fn is_tree(&self) -> bool {
        self.roots.len() == 1
    }

    /// rk(↓v): number of nodes on the chain from a root down to `v`.
    pub fn level(&self, v: NodeId) -> usize {
        let mut d = 1;
        let mut x = v;
        while let Some(p) = self.parent[x] {
            d += 1;
            x = p;
        }
        d
    }

    /// rk(F): length of the longest chain.
    pub fn rank(&self) -> usize {
        (0..self.len()).map(|v| self.level(v)).max().unwrap()
    }

    /// F(i) for i in 1..=rank: the partition of nodes into levels.
    pub fn level_sets(&self) -> Vec<Vec<NodeId>> {
        let rk = self.rank();
        let mut levels = vec![Vec::new(); rk];
        for v in 0..self.len() {
            levels[self.level(v) - 1].push(v);
        }
        levels
    }

    /// True iff `a` lies on the chain below `b` (or equals it).
    pub fn node_leq(&self, a: NodeId, b: NodeId) -> bool {
        let mut x = b;
        loop {
            if x == a {
                return true;
            }
            match self.parent[x] {
                Some(p) => x = p,
                None => return false,
            }
        }
    }

    /// The upper cone ↑v, i.e. `v` and its descendants, in preorder.
    pub fn subtree(&self, v: NodeId) -> Vec<NodeId> {
        let mut out = Vec::new();
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            out.push(x);
            for &c in &self.children[x] {
                stack.push(c);
            }
        }
        out
    }

    /// The labels occurring in ↑v.
    pub fn cone_labels(&self, v: NodeId) -> BTreeSet<Label> {
        self.subtree(v).into_iter().map(|x| self.label[x]).collect()
    }

    /// Disjoint union; trees of both arguments are preserved.
    pub fn join(&self, other: &LabeledForest) -> Result<LabeledForest, ForestError> {
        if self.k != other.k {
            return Err(ForestError::LabelCountMismatch { left: self.k, right: other.k });
        }
        let off = self.len();
        let mut parent = self.parent.clone();
        let mut label = self.label.clone();
        parent.extend(other.parent.iter().map(|p| p.map(|x| x + off)));
        label.extend_from_slice(&other.label);
        LabeledForest::new(self.k, parent, label)
    }

    /// p_i(F): a fresh root labeled `i` below every root of `F`.
    pub fn push(&self, root_label: Label) -> Result<LabeledForest, ForestError> {
        if root_label >= self.k {
            return Err(ForestError::LabelOutOfRange { label: root_label, k: self.k });
        }
        let n = self.len();
        let mut parent: Vec<Option<NodeId>> = self
            .parent
            .iter()
            .enumerate()
            .map(|(v, p)| Some(p.unwrap_or_else(|| {
                debug_assert!(self.roots.contains(&v));
                n
            })))
            .collect();
        parent.push(None);
        let mut label = self.label.clone();
        label.push(root_label);
        LabeledForest::new(self.k, parent, label)
    }

    /// Composes the labeling with a permutation of `[0, k)`.
    pub fn relabel(&self, perm: &[Label]) -> Result<LabeledForest, ForestError> {
        if perm.len() != self.k {
            return Err(ForestError::NotAPermutation { k: self.k });
        }
        let mut seen = vec![false; self.k];
        for &p in perm {
            if p >= self.k || seen[p] {
                return Err(ForestError::NotAPermutation { k: self.k });
            }
            seen[p] = true;
        }
        let label = self.label.iter().map(|&l| perm[l]).collect();
        LabeledForest::new(self.k, self.parent.clone(), label)
    }

    /// Splits the forest into its trees, in root order.
    pub fn tree_components(&self) -> Vec<LabeledForest> {
        self.roots.iter().map(|&r| self.extract(&self.subtree(r))).collect()
    }

    /// The sub-forest induced by `nodes` (which must be upward closed),
    /// renumbered contiguously.
    fn extract(&self, nodes: &[NodeId]) -> LabeledForest {
        let mut index = vec![usize::MAX; self.len()];
        for (i, &v) in nodes.iter().enumerate() {
            index[v] = i;
        }
        let parent = nodes
            .iter()
            .map(|&v| self.parent[v].and_then(|p| {
                if index[p] == usize::MAX { None } else { Some(index[p]) }
            }))
            .collect();
        let label = nodes.iter().map(|&v| self.label[v]).collect();
        LabeledForest::new(self.k, parent, label).expect("induced sub-forest is valid")
    }

    /// For a tree, the forest left after deleting the root.
    pub fn without_root(&self) -> Option<LabeledForest> {
        if !self.is_tree() || self.len() == 1 {
            return None;
        }
        let root = self.roots[0];
        let rest: Vec<NodeId> = (0..self.len()).filter(|&v| v != root).collect();
        Some(self.extract(&rest))
    }
}

/// A monotone label-preserving map between forests of the same k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    map: Vec<NodeId>,
}

impl Morphism {
    pub fn new(
        map: Vec<NodeId>,
        source: &LabeledForest,
        target: &LabeledForest,
    ) -> Result<Self, ForestError> {
        if source.k() != target.k() {
            return Err(ForestError::LabelCountMismatch { left: source.k(), right: target.k() });
        }
        if map.len() != source.len() {
            return Err(ForestError::InvalidMorphism);
        }
        for (x, &v) in map.iter().enumerate() {
            if v >= target.len() || source.label(x) != target.label(v) {
                return Err(ForestError::InvalidMorphism);
            }
            // monotone on covering pairs suffices
            if let Some(p) = source.parent(x) {
                if !target.node_leq(map[p], v) {
                    return Err(ForestError::InvalidMorphism);
                }
            }
        }
        Ok(Morphism { map })
    }

    pub fn apply(&self, x: NodeId) -> NodeId {
        self.map[x]
    }

    pub fn map(&self) -> &[NodeId] {
        &self.map
    }
}

struct HomSearch<'a> {
    g: &'a LabeledForest,
    f: &'a LabeledForest,
    subtrees: Vec<Vec<NodeId>>,
    memo: Vec<Vec<Option<bool>>>,
}

impl<'a> HomSearch<'a> {
    fn new(g: &'a LabeledForest, f: &'a LabeledForest) -> Self {
        let subtrees = (0..f.len()).map(|v| f.subtree(v)).collect();
        let memo = vec![vec![None; f.len()]; g.len()];
        HomSearch { g, f, subtrees, memo }
    }

    /// True iff the subtree of `g` rooted at `x` admits a morphism sending
    /// `x` to `v`. Children may land anywhere in ↑v, including `v` itself.
    fn maps_at(&mut self, x: NodeId, v: NodeId) -> bool {
        if let Some(b) = self.memo[x][v] {
            return b;
        }
        let mut ans = self.g.label(x) == self.f.label(v);
        if ans {
            for ci in 0..self.g.children(x).len() {
                let c = self.g.children(x)[ci];
                let mut found = false;
                for wi in 0..self.subtrees[v].len() {
                    let w = self.subtrees[v][wi];
                    if self.maps_at(c, w) {
                        found = true;
                        break;
                    }
                }
                if !found {
                    ans = false;
                    break;
                }
            }
        }
        self.memo[x][v] = Some(ans);
        ans
    }

    fn assign(&mut self, x: NodeId, v: NodeId, out: &mut Vec<NodeId>) {
        out[x] = v;
        let children: Vec<NodeId> = self.g.children(x).to_vec();
        for c in children {
            let w = self.subtrees[v]
                .clone()
                .into_iter()
                .find(|&w| self.maps_at(c, w))
                .expect("witness exists for a positive decision");
            self.assign(c, w, out);
        }
    }
}

/// Decides G ≤_h F.
pub fn leq_h(g: &LabeledForest, f: &LabeledForest) -> Result<bool, ForestError> {
    if g.k() != f.k() {
        return Err(ForestError::LabelCountMismatch { left: g.k(), right: f.k() });
    }
    let mut s = HomSearch::new(g, f);
    Ok(g.roots().iter().all(|&r| (0..f.len()).any(|v| s.maps_at(r, v))))
}

/// Decides G ≤_h F and, when true, returns a witnessing morphism.
pub fn leq_h_witness(
    g: &LabeledForest,
    f: &LabeledForest,
) -> Result<Option<Morphism>, ForestError> {
    if g.k() != f.k() {
        return Err(ForestError::LabelCountMismatch { left: g.k(), right: f.k() });
    }
    let mut s = HomSearch::new(g, f);
    let mut map = vec![usize::MAX; g.len()];
    for ri in 0..g.roots().len() {
        let r = g.roots()[ri];
        match (0..f.len()).find(|&v| s.maps_at(r, v)) {
            Some(v) => s.assign(r, v, &mut map),
            None => return Ok(None),
        }
    }
    Ok(Some(Morphism::new(map, g, f).expect("constructed map is a morphism")))
}

/// G ≡_h F.
pub fn equiv_h(g: &LabeledForest, f: &LabeledForest) -> Result<bool, ForestError> {
    Ok(leq_h(g, f)? && leq_h(f, g)?)
}

/// The inductive minimality criterion: singletons are minimal; a tree is
/// minimal iff no level-2 label repeats the root label and the root-deleted
/// forest is minimal; a proper forest is minimal iff its trees are minimal
/// and pairwise ≤_h-incomparable.
pub fn is_minimal(f: &LabeledForest) -> bool {
    if f.len() == 1 {
        return true;
    }
    if f.is_tree() {
        let root = f.roots()[0];
        let rl = f.label(root);
        if f.children(root).iter().any(|&c| f.label(c) == rl) {
            return false;
        }
        let rest = f.without_root().expect("non-singleton tree");
        return is_minimal(&rest);
    }
    let trees = f.tree_components();
    for t in &trees {
        if !is_minimal(t) {
            return false;
        }
    }
    for i in 0..trees.len() {
        for j in 0..trees.len() {
            if i != j && leq_h(&trees[i], &trees[j]).expect("same k") {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Debug)]
struct CTree {
    label: Label,
    children: Vec<CTree>,
}

fn ctree_of(f: &LabeledForest, v: NodeId) -> CTree {
    CTree {
        label: f.label(v),
        children: f.children(v).iter().map(|&c| ctree_of(f, c)).collect(),
    }
}

fn forest_of_ctrees(k: usize, trees: &[CTree]) -> LabeledForest {
    fn emit(t: &CTree, parent: Option<NodeId>, p: &mut Vec<Option<NodeId>>, l: &mut Vec<Label>) {
        let id = p.len();
        p.push(parent);
        l.push(t.label);
        for c in &t.children {
            emit(c, Some(id), p, l);
        }
    }
    let mut parent = Vec::new();
    let mut label = Vec::new();
    for t in trees {
        emit(t, None, &mut parent, &mut label);
    }
    LabeledForest::new(k, parent, label).expect("rebuilt forest is valid")
}

fn ctree_leq(k: usize, a: &CTree, b: &CTree) -> bool {
    let fa = forest_of_ctrees(k, std::slice::from_ref(a));
    let fb = forest_of_ctrees(k, std::slice::from_ref(b));
    leq_h(&fa, &fb).expect("same k")
}

/// Removes every tree that is ≤_h a surviving sibling; of an h-equivalent
/// pair the one with the smaller index survives.
fn prune_dominated(k: usize, trees: &mut Vec<CTree>) -> bool {
    let n = trees.len();
    if n < 2 {
        return false;
    }
    let mut keep = vec![true; n];
    for i in 0..n {
        if !keep[i] {
            continue;
        }
        for j in 0..n {
            if i == j || !keep[j] {
                continue;
            }
            let ij = ctree_leq(k, &trees[i], &trees[j]);
            if ij {
                let ji = ctree_leq(k, &trees[j], &trees[i]);
                if !ji || j < i {
                    keep[i] = false;
                    break;
                }
            }
        }
    }
    if keep.iter().all(|&b| b) {
        return false;
    }
    let mut idx = 0;
    trees.retain(|_| {
        let b = keep[idx];
        idx += 1;
        b
    });
    true
}

fn reduce_ctree(k: usize, mut t: CTree) -> CTree {
    t.children = t.children.into_iter().map(|c| reduce_ctree(k, c)).collect();
    loop {
        let mut changed = false;
        // splice children carrying the root's own label
        let mut i = 0;
        while i < t.children.len() {
            if t.children[i].label == t.label {
                let spliced = t.children.remove(i);
                t.children.extend(spliced.children);
                changed = true;
            } else {
                i += 1;
            }
        }
        if prune_dominated(k, &mut t.children) {
            changed = true;
        }
        if !changed {
            return t;
        }
    }
}

/// Rewrites `F` to an h-equivalent minimal forest (unique up to isomorphism).
pub fn minimize(f: &LabeledForest) -> LabeledForest {
    let mut trees: Vec<CTree> = f.roots().iter().map(|&r| ctree_of(f, r)).collect();
    trees = trees.into_iter().map(|t| reduce_ctree(f.k(), t)).collect();
    prune_dominated(f.k(), &mut trees);
    forest_of_ctrees(f.k(), &trees)
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Enc {
    label: Label,
    children: Vec<Enc>,
}

fn encode(f: &LabeledForest, v: NodeId) -> Enc {
    let mut children: Vec<Enc> = f.children(v).iter().map(|&c| encode(f, c)).collect();
    children.sort();
    Enc { label: f.label(v), children }
}

fn render(e: &Enc, out: &mut String) {
    out.push('(');
    out.push_str(&e.label.to_string());
    for c in &e.children {
        out.push(' ');
        render(c, out);
    }
    out.push(')');
}

/// A deterministic encoding invariant under node renumbering and sibling
/// reordering. The output is in the textual forest format, so it doubles
/// as the canonical printed form.
pub fn canonical_form(f: &LabeledForest) -> String {
    let mut encs: Vec<Enc> = f.roots().iter().map(|&r| encode(f, r)).collect();
    encs.sort();
    let mut out = String::new();
    for (i, e) in encs.iter().enumerate() {
        if i > 0 {
            out.push_str(" | ");
        }
        render(e, &mut out);
    }
    out
}

/// Canonical key of the minimal form; byte equality of these keys is
/// degree equality.
pub fn degree_key(f: &LabeledForest) -> String {
    canonical_form(&minimize(f))
}

/// Rebuilds the forest with nodes renumbered into canonical order.
pub fn canonicalize(f: &LabeledForest) -> LabeledForest {
    fn ctree(e: &Enc) -> CTree {
        CTree { label: e.label, children: e.children.iter().map(ctree).collect() }
    }
    let mut encs: Vec<Enc> = f.roots().iter().map(|&r| encode(f, r)).collect();
    encs.sort();
    let trees: Vec<CTree> = encs.iter().map(ctree).collect();
    forest_of_ctrees(f.k(), &trees)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fo(text: &str, k: usize) -> LabeledForest {
        crate::fmt::parse_forest(text, Some(k)).unwrap()
    }

    #[test]
    fn validate_singleton() {
        let f = LabeledForest::singleton(2, 0).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f.rank(), 1);
        assert_eq!(f.level_sets().len(), 1);
    }

    #[test]
    fn validate_rejects_multiple_parents() {
        let err = LabeledForest::from_edges(2, vec![0, 1, 0], &[(0, 1), (2, 1)]).unwrap_err();
        assert_eq!(err, ForestError::MultipleParents { node: 1 });
    }

    #[test]
    fn validate_rejects_label_out_of_range() {
        let err = LabeledForest::singleton(2, 3).unwrap_err();
        assert_eq!(err, ForestError::LabelOutOfRange { label: 3, k: 2 });
    }

    #[test]
    fn validate_rejects_empty_and_cycles() {
        assert_eq!(
            LabeledForest::new(2, vec![], vec![]).unwrap_err(),
            ForestError::EmptyForest
        );
        let err = LabeledForest::new(2, vec![Some(1), Some(0)], vec![0, 1]).unwrap_err();
        assert!(matches!(err, ForestError::CycleDetected { .. }));
    }

    #[test]
    fn join_and_push() {
        let a = fo("(0)", 3);
        let b = fo("(1)", 3);
        let j = a.join(&b).unwrap();
        assert_eq!(j.len(), 2);
        assert_eq!(j.roots().len(), 2);

        let jj = a.join(&a).unwrap();
        assert_eq!(canonical_form(&jj), "(0) | (0)");

        let p = fo("(0 (1))", 3);
        let f = p.join(&fo("(2)", 3)).unwrap();
        assert_eq!(f.len(), 3);
        let ranks: Vec<usize> = f.tree_components().iter().map(|t| t.rank()).collect();
        assert_eq!(ranks, vec![2, 1]);

        let t = fo("(0) | (1)", 3).push(2).unwrap();
        assert!(t.is_tree());
        assert_eq!(t.len(), 3);
        assert_eq!(canonical_form(&t), "(2 (0) (1))");

        assert_eq!(
            LabeledForest::singleton(3, 0).unwrap().push(5).unwrap_err(),
            ForestError::LabelOutOfRange { label: 5, k: 3 }
        );
    }

    #[test]
    fn push_builds_two_chain() {
        let p = LabeledForest::singleton(2, 1).unwrap().push(0).unwrap();
        assert_eq!(canonical_form(&p), "(0 (1))");
    }

    #[test]
    fn relabel_swap_and_involution() {
        let p = fo("(0 (1))", 2);
        let swapped = p.relabel(&[1, 0]).unwrap();
        assert_eq!(canonical_form(&swapped), "(1 (0))");
        let back = swapped.relabel(&[1, 0]).unwrap();
        assert_eq!(canonical_form(&back), canonical_form(&p));
        let id = p.relabel(&[0, 1]).unwrap();
        assert_eq!(canonical_form(&id), canonical_form(&p));
        assert_eq!(p.relabel(&[0, 0]).unwrap_err(), ForestError::NotAPermutation { k: 2 });
    }

    #[test]
    fn leq_reflexive_with_identity_witness() {
        let f = fo("(0 (1) (2)) | (1)", 3);
        let w = leq_h_witness(&f, &f).unwrap().unwrap();
        // some morphism exists; identity is one, but any witness must be valid
        assert_eq!(w.map().len(), f.len());
    }

    #[test]
    fn leq_examples() {
        // frozen from the brute-force map enumeration oracle
        let anti = fo("(0) | (1)", 2);
        let chain = fo("(0 (1))", 2);
        assert!(leq_h(&anti, &chain).unwrap());
        assert!(!leq_h(&chain, &anti).unwrap());

        let doubled = fo("(0 (0 (1)))", 2);
        assert!(leq_h(&doubled, &chain).unwrap());
        assert!(leq_h(&chain, &doubled).unwrap());
    }

    #[test]
    fn leq_requires_same_k() {
        let a = fo("(0)", 2);
        let b = fo("(0)", 3);
        assert_eq!(
            leq_h(&a, &b).unwrap_err(),
            ForestError::LabelCountMismatch { left: 2, right: 3 }
        );
    }

    #[test]
    fn minimality_criterion() {
        assert!(is_minimal(&fo("(2)", 3)));
        assert!(!is_minimal(&fo("(0 (0 (1)))", 2)));
        assert!(!is_minimal(&fo("(0) | (0)", 2)));
        assert!(is_minimal(&fo("(0 (1))", 2)));
        assert!(is_minimal(&fo("(0) | (1)", 2)));
    }

    #[test]
    fn minimize_examples() {
        assert_eq!(canonical_form(&minimize(&fo("(2)", 3))), "(2)");
        assert_eq!(canonical_form(&minimize(&fo("(0 (0 (1)))", 2))), "(0 (1))");
        assert_eq!(canonical_form(&minimize(&fo("(0) | (0)", 2))), "(0)");
    }

    #[test]
    fn minimize_preserves_degree() {
        let cases = ["(0 (0 (1)))", "(0 (1) (1 (0)))", "(1 (0 (1))) | (0)", "(0) | (0) | (1)"];
        for c in cases {
            let f = fo(c, 2);
            let m = minimize(&f);
            assert!(leq_h(&f, &m).unwrap(), "{c}: F ≤ min(F)");
            assert!(leq_h(&m, &f).unwrap(), "{c}: min(F) ≤ F");
            assert!(is_minimal(&m), "{c}: minimal output");
        }
    }

    #[test]
    fn canonical_ignores_sibling_order_and_numbering() {
        let a = fo("(0 (1) (2))", 3);
        let b = fo("(0 (2) (1))", 3);
        assert_eq!(canonical_form(&a), canonical_form(&b));

        // same shape, different node numbering
        let c = LabeledForest::new(3, vec![None, Some(0), Some(0)], vec![0, 1, 2]).unwrap();
        let d = LabeledForest::new(3, vec![Some(2), Some(2), None], vec![2, 1, 0]).unwrap();
        assert_eq!(canonical_form(&c), canonical_form(&d));

        assert_ne!(
            canonical_form(&fo("(0)", 2)),
            canonical_form(&fo("(1)", 2))
        );
    }

    #[test]
    fn canonicalize_roundtrip() {
        let f = fo("(1 (0 (2)) (0)) | (0)", 3);
        let c = canonicalize(&f);
        assert_eq!(canonical_form(&f), canonical_form(&c));
        assert_eq!(f.len(), c.len());
    }

    #[test]
    fn morphism_validation_rejects_label_break() {
        let g = fo("(0)", 2);
        let f = fo("(1)", 2);
        assert_eq!(
            Morphism::new(vec![0], &g, &f).unwrap_err(),
            ForestError::InvalidMorphism
        );
    }
}
