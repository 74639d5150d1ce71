//! Explicit finite degree structures: principal ideals of the forest-degree
//! quotient, the lattices L*(A) and L(A) of a finite family of open sets,
//! isomorphism and automorphy decisions, and the equivalence-relation
//! reducibility on forest-generated partitions.

use crate::forest::{
    canonical_form, canonicalize, degree_key, leq_h, minimize, ForestError, Label, LabeledForest,
};
use crate::poset::{leq_matrix_of_poset, order_iso, poset_iso, unfold, LabeledPoset};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum LatticeError {
    #[error(transparent)]
    Forest(#[from] ForestError),
    #[error("labeling is not a bijection onto 0..{k}")]
    LabelingNotBijective { k: usize },
    #[error("join of elements {x} and {y} escapes the element set")]
    NotJoinClosed { x: usize, y: usize },
    #[error("order between elements {x} and {y} is not antisymmetric")]
    NotAntisymmetric { x: usize, y: usize },
    #[error("join table entry ({x},{y}) is not a least upper bound")]
    JoinNotLub { x: usize, y: usize },
    #[error("theorem check failed: {details}")]
    TheoremViolation { details: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeNode {
    Bottom,
    Degree(LabeledForest),
}

/// An explicit finite join-semilattice of h-degrees. Elements are canonical
/// minimal forests (plus an optional adjoined bottom); the order matrix and
/// join table are computed and checked at construction.
#[derive(Debug, Clone)]
pub struct DegreeLattice {
    k: usize,
    nodes: Vec<LatticeNode>,
    canon: Vec<String>,
    order: Vec<Vec<bool>>,
    join: Vec<Vec<usize>>,
    minimal: Vec<bool>,
    join_irreducible: Vec<bool>,
    has_bottom: bool,
}

impl DegreeLattice {
    /// Builds the lattice over the given degrees. Inputs are minimized,
    /// canonicalized and deduplicated; the set must be closed under
    /// join-then-minimize.
    pub fn from_degrees(
        k: usize,
        degrees: Vec<LabeledForest>,
    ) -> Result<DegreeLattice, LatticeError> {
        let mut by_key: BTreeMap<String, LabeledForest> = BTreeMap::new();
        for d in degrees {
            let m = canonicalize(&minimize(&d));
            by_key.entry(canonical_form(&m)).or_insert(m);
        }
        let canon: Vec<String> = by_key.keys().cloned().collect();
        let elems: Vec<LabeledForest> = by_key.into_values().collect();
        let n = elems.len();

        let mut order = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                order[i][j] = leq_h(&elems[i], &elems[j])?;
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && order[i][j] && order[j][i] {
                    return Err(LatticeError::NotAntisymmetric { x: i, y: j });
                }
            }
        }

        let mut join = vec![vec![0usize; n]; n];
        for i in 0..n {
            for j in 0..n {
                let key = degree_key(&elems[i].join(&elems[j])?);
                let idx = canon
                    .binary_search(&key)
                    .map_err(|_| LatticeError::NotJoinClosed { x: i, y: j })?;
                join[i][j] = idx;
            }
        }
        let lattice = DegreeLattice {
            k,
            nodes: elems.into_iter().map(LatticeNode::Degree).collect(),
            canon,
            order,
            join,
            minimal: Vec::new(),
            join_irreducible: Vec::new(),
            has_bottom: false,
        };
        lattice.finish()
    }

    fn finish(mut self) -> Result<DegreeLattice, LatticeError> {
        let n = self.len();
        // join really is the least upper bound
        for x in 0..n {
            for y in 0..n {
                let j = self.join[x][y];
                if !self.order[x][j] || !self.order[y][j] {
                    return Err(LatticeError::JoinNotLub { x, y });
                }
                for z in 0..n {
                    if self.order[x][z] && self.order[y][z] && !self.order[j][z] {
                        return Err(LatticeError::JoinNotLub { x, y });
                    }
                }
            }
        }
        self.minimal = (0..n)
            .map(|x| (0..n).all(|o| o == x || !self.order[o][x]))
            .collect();
        self.join_irreducible = (0..n)
            .map(|x| {
                let proper: Vec<usize> =
                    (0..n).filter(|&o| o != x && self.order[o][x]).collect();
                if self.has_bottom && matches!(self.nodes[x], LatticeNode::Bottom) {
                    return false;
                }
                !proper
                    .iter()
                    .any(|&a| proper.iter().any(|&b| self.join[a][b] == x))
            })
            .collect();
        Ok(self)
    }

    /// The same structure with a fresh bottom element adjoined at index 0.
    pub fn adjoin_bottom(&self) -> DegreeLattice {
        if self.has_bottom {
            return self.clone();
        }
        let n = self.len();
        let mut nodes = vec![LatticeNode::Bottom];
        nodes.extend(self.nodes.iter().cloned());
        let mut canon = vec![String::new()];
        canon.extend(self.canon.iter().cloned());
        let mut order = vec![vec![false; n + 1]; n + 1];
        let mut join = vec![vec![0usize; n + 1]; n + 1];
        order[0][0] = true;
        for i in 0..n {
            order[0][i + 1] = true;
            join[0][i + 1] = i + 1;
            join[i + 1][0] = i + 1;
            for j in 0..n {
                order[i + 1][j + 1] = self.order[i][j];
                join[i + 1][j + 1] = self.join[i][j] + 1;
            }
        }
        let lattice = DegreeLattice {
            k: self.k,
            nodes,
            canon,
            order,
            join,
            minimal: Vec::new(),
            join_irreducible: Vec::new(),
            has_bottom: true,
        };
        lattice.finish().expect("bottom adjunction preserves validity")
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn has_bottom(&self) -> bool {
        self.has_bottom
    }

    pub fn node(&self, i: usize) -> &LatticeNode {
        &self.nodes[i]
    }

    pub fn forest(&self, i: usize) -> Option<&LabeledForest> {
        match &self.nodes[i] {
            LatticeNode::Bottom => None,
            LatticeNode::Degree(f) => Some(f),
        }
    }

    /// Canonical caption: the canonical forest term, or ⊥.
    pub fn caption(&self, i: usize) -> &str {
        match &self.nodes[i] {
            LatticeNode::Bottom => "⊥",
            LatticeNode::Degree(_) => &self.canon[i],
        }
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.order[i][j]
    }

    pub fn join_index(&self, i: usize, j: usize) -> usize {
        self.join[i][j]
    }

    pub fn minimal_flags(&self) -> &[bool] {
        &self.minimal
    }

    pub fn join_irreducible_flags(&self) -> &[bool] {
        &self.join_irreducible
    }

    pub fn order_matrix(&self) -> &[Vec<bool>] {
        &self.order
    }

    /// Index of the degree with the given canonical key, if present.
    pub fn index_of_key(&self, key: &str) -> Option<usize> {
        (0..self.len()).find(|&i| self.canon[i] == key && self.forest(i).is_some())
    }

    /// Distributivity in the Prop-sem sense: x ≤ y⊔z implies x = y'⊔z' for
    /// some y' ≤ y, z' ≤ z. Meaningful on structures with a bottom (adjoin
    /// one for plain ideals before checking).
    pub fn is_distributive(&self) -> bool {
        let n = self.len();
        // pairs_to[x] = all (a, b) with a⊔b = x, pairs with a == x first
        let mut pairs_to: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for a in 0..n {
            for b in 0..n {
                let x = self.join[a][b];
                if a == x {
                    pairs_to[x].insert(0, (a, b));
                } else {
                    pairs_to[x].push((a, b));
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if !self.order[x][self.join[y][z]] {
                        continue;
                    }
                    let ok = pairs_to[x]
                        .iter()
                        .any(|&(a, b)| self.order[a][y] && self.order[b][z]);
                    if !ok {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Every pair with some upper bound has a least one; on structures with a
    /// bottom, every pair.
    pub fn has_all_joins(&self) -> bool {
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                let ub: Vec<usize> =
                    (0..n).filter(|&z| self.order[x][z] && self.order[y][z]).collect();
                if ub.is_empty() {
                    if self.has_bottom {
                        return false;
                    }
                    continue;
                }
                let j = self.join[x][y];
                if !ub.contains(&j) || !ub.iter().all(|&z| self.order[j][z]) {
                    return false;
                }
            }
        }
        true
    }

    /// Hasse diagram in DOT, nodes captioned by canonical forest terms.
    pub fn to_dot(&self) -> String {
        let n = self.len();
        let mut out = String::from("digraph lattice {\n  rankdir=BT;\n");
        for i in 0..n {
            let _ = writeln!(out, "  n{} [label=\"{}\"];", i, self.caption(i));
        }
        for i in 0..n {
            for j in 0..n {
                if i == j || !self.order[i][j] {
                    continue;
                }
                let covered = (0..n)
                    .any(|m| m != i && m != j && self.order[i][m] && self.order[m][j]);
                if !covered {
                    let _ = writeln!(out, "  n{} -> n{};", i, j);
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// All h-degrees below `a`, computed by closing the singleton seeds under
/// binary join and the pushes p_0..p_{k-1}, minimizing and filtering by ≤_h a
/// until fixpoint.
pub fn principal_ideal(a: &LabeledForest) -> Result<DegreeLattice, LatticeError> {
    let k = a.k();
    let mut set: BTreeMap<String, LabeledForest> = BTreeMap::new();
    for s in 0..k {
        let single = LabeledForest::singleton(k, s)?;
        if leq_h(&single, a)? {
            set.insert(canonical_form(&single), single);
        }
    }
    loop {
        let current: Vec<LabeledForest> = set.values().cloned().collect();
        let mut grew = false;
        let consider = |cand: LabeledForest,
                            set: &mut BTreeMap<String, LabeledForest>|
         -> Result<bool, LatticeError> {
            let m = canonicalize(&minimize(&cand));
            let key = canonical_form(&m);
            if set.contains_key(&key) {
                return Ok(false);
            }
            if leq_h(&m, a)? {
                set.insert(key, m);
                return Ok(true);
            }
            Ok(false)
        };
        for x in &current {
            for s in 0..k {
                grew |= consider(x.push(s)?, &mut set)?;
            }
        }
        for (i, x) in current.iter().enumerate() {
            for y in current.iter().skip(i + 1) {
                grew |= consider(x.join(y)?, &mut set)?;
            }
        }
        if !grew {
            break;
        }
    }
    DegreeLattice::from_degrees(k, set.into_values().collect())
}

fn require_bijective(a: &LabeledPoset) -> Result<(), LatticeError> {
    if a.labeling_bijective() {
        Ok(())
    } else {
        Err(LatticeError::LabelingNotBijective { k: a.k() })
    }
}

/// L*(A): degrees of total representations into subsets of the family,
/// realized as the principal ideal of the unfolded labeled forest.
pub fn lattice_lstar(a: &LabeledPoset) -> Result<DegreeLattice, LatticeError> {
    require_bijective(a)?;
    let (forest, _) = unfold(a);
    principal_ideal(&forest)
}

/// L(A): degrees of total representations onto the family, the segment
/// [e, a] with e the join of all k singleton degrees.
pub fn lattice_l(a: &LabeledPoset) -> Result<DegreeLattice, LatticeError> {
    require_bijective(a)?;
    let (forest, _) = unfold(a);
    let k = forest.k();
    let mut e = LabeledForest::singleton(k, 0)?;
    for s in 1..k {
        e = e.join(&LabeledForest::singleton(k, s)?)?;
    }
    let ideal = principal_ideal(&forest)?;
    let mut segment = Vec::new();
    for i in 0..ideal.len() {
        let f = ideal.forest(i).expect("no bottom in a fresh ideal");
        if leq_h(&e, f)? {
            segment.push(f.clone());
        }
    }
    DegreeLattice::from_degrees(k, segment)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeIso {
    map: Vec<usize>,
}

impl LatticeIso {
    pub fn map(&self) -> &[usize] {
        &self.map
    }
}

/// Order isomorphism between two degree lattices, if one exists.
pub fn lattice_iso(l1: &DegreeLattice, l2: &DegreeLattice) -> Option<LatticeIso> {
    let ka = vec![0u64; l1.len()];
    let kb = vec![0u64; l2.len()];
    order_iso(&l1.order, &l2.order, &ka, &kb).map(|map| LatticeIso { map })
}

fn permutations(k: usize) -> Vec<Vec<Label>> {
    let mut out = Vec::new();
    let mut cur: Vec<Label> = Vec::with_capacity(k);
    let mut used = vec![false; k];
    fn go(k: usize, cur: &mut Vec<Label>, used: &mut [bool], out: &mut Vec<Vec<Label>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in 0..k {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                go(k, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    go(k, &mut cur, &mut used, &mut out);
    out
}

/// A label permutation φ with relabel(x, φ) ≡_h y, if any.
pub fn automorphic(
    x: &LabeledForest,
    y: &LabeledForest,
) -> Result<Option<Vec<Label>>, ForestError> {
    if x.k() != y.k() {
        return Err(ForestError::LabelCountMismatch { left: x.k(), right: y.k() });
    }
    let target = degree_key(y);
    for phi in permutations(x.k()) {
        if degree_key(&x.relabel(&phi)?) == target {
            return Ok(Some(phi));
        }
    }
    Ok(None)
}

/// E_μ ≤_c E_ν for the forest-generated partitions: a permutation φ with
/// mu ≤_h relabel(nu, φ) exists.
pub fn er_reduce(mu: &LabeledForest, nu: &LabeledForest) -> Result<bool, ForestError> {
    if mu.k() != nu.k() {
        return Err(ForestError::LabelCountMismatch { left: mu.k(), right: nu.k() });
    }
    for phi in permutations(mu.k()) {
        if leq_h(mu, &nu.relabel(&phi)?)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Both sides of the invariant theorem for one pair of families, with
/// witnesses. Constructed only when the two decisions agree.
#[derive(Debug, Clone)]
pub struct SmainReport {
    pub poset_a_size: usize,
    pub poset_b_size: usize,
    pub poset_iso: Option<Vec<usize>>,
    pub lstar_a_size: usize,
    pub lstar_b_size: usize,
    pub lattice_iso: Option<LatticeIso>,
}

impl SmainReport {
    pub fn agree(&self) -> bool {
        self.poset_iso.is_some() == self.lattice_iso.is_some()
    }

    /// Key: value lines, machine-readable.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "poset_a_size: {}", self.poset_a_size);
        let _ = writeln!(out, "poset_b_size: {}", self.poset_b_size);
        let _ = writeln!(out, "poset_iso: {}", if self.poset_iso.is_some() { "yes" } else { "no" });
        if let Some(w) = &self.poset_iso {
            let _ = writeln!(out, "poset_witness: {}", render_map(w));
        }
        let _ = writeln!(out, "lstar_a_size: {}", self.lstar_a_size);
        let _ = writeln!(out, "lstar_b_size: {}", self.lstar_b_size);
        let _ = writeln!(
            out,
            "lattice_iso: {}",
            if self.lattice_iso.is_some() { "yes" } else { "no" }
        );
        if let Some(w) = &self.lattice_iso {
            let _ = writeln!(out, "lattice_witness: {}", render_map(w.map()));
        }
        let _ = writeln!(out, "agreement: ok");
        out
    }
}

fn render_map(map: &[usize]) -> String {
    map.iter()
        .enumerate()
        .map(|(i, j)| format!("{i}->{j}"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Computes poset_iso(A, B) and lattice_iso(L*(A), L*(B)) and checks they
/// agree; disagreement signals an implementation bug and is an error.
pub fn smain_check(a: &LabeledPoset, b: &LabeledPoset) -> Result<SmainReport, LatticeError> {
    require_bijective(a)?;
    require_bijective(b)?;
    let pw = poset_iso(a, b, false);
    let la = lattice_lstar(a)?;
    let lb = lattice_lstar(b)?;
    let lw = lattice_iso(&la, &lb);
    let report = SmainReport {
        poset_a_size: a.len(),
        poset_b_size: b.len(),
        poset_iso: pw,
        lstar_a_size: la.len(),
        lstar_b_size: lb.len(),
        lattice_iso: lw,
    };
    if !report.agree() {
        return Err(LatticeError::TheoremViolation {
            details: format!(
                "poset_iso = {}, lattice_iso = {} (sizes {} vs {})",
                report.poset_iso.is_some(),
                report.lattice_iso.is_some(),
                report.lstar_a_size,
                report.lstar_b_size
            ),
        });
    }
    Ok(report)
}

/// The poset order matrix, exposed for generic order tooling.
pub fn poset_order_matrix(p: &LabeledPoset) -> Vec<Vec<bool>> {
    leq_matrix_of_poset(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fmt::{parse_forest, parse_poset};

    fn fo(text: &str, k: usize) -> LabeledForest {
        parse_forest(text, Some(k)).unwrap()
    }

    #[test]
    fn ideal_of_singleton() {
        let l = principal_ideal(&fo("(0)", 1)).unwrap();
        assert_eq!(l.len(), 1);
        assert!(l.minimal_flags()[0]);
    }

    #[test]
    fn ideal_of_two_antichain() {
        let l = principal_ideal(&fo("(0) | (1)", 2)).unwrap();
        assert_eq!(l.len(), 3);
        let keys: Vec<&str> = (0..3).map(|i| l.caption(i)).collect();
        assert_eq!(keys, vec!["(0)", "(0) | (1)", "(1)"]);
    }

    #[test]
    fn ideal_of_two_chain() {
        let l = principal_ideal(&fo("(0 (1))", 2)).unwrap();
        assert_eq!(l.len(), 4);
        let keys: Vec<&str> = (0..4).map(|i| l.caption(i)).collect();
        assert_eq!(keys, vec!["(0 (1))", "(0)", "(0) | (1)", "(1)"]);
    }

    #[test]
    fn lstar_and_l_sizes() {
        let chain = parse_poset("k=2\nelem 0 label 0\nelem 1 label 1\norder 0 < 1\n").unwrap();
        let anti = parse_poset("k=2\nelem 0 label 0\nelem 1 label 1\n").unwrap();
        let single = parse_poset("k=1\nelem 0 label 0\n").unwrap();
        assert_eq!(lattice_lstar(&single).unwrap().len(), 1);
        assert_eq!(lattice_lstar(&chain).unwrap().len(), 4);
        assert_eq!(lattice_lstar(&anti).unwrap().len(), 3);
        assert_eq!(lattice_l(&single).unwrap().len(), 1);
        assert_eq!(lattice_l(&chain).unwrap().len(), 2);
        assert_eq!(lattice_l(&anti).unwrap().len(), 1);
    }

    #[test]
    fn lstar_requires_bijective_labels() {
        let bad = parse_poset("k=2\nelem 0 label 0\nelem 1 label 0\n").unwrap();
        assert!(matches!(
            lattice_lstar(&bad),
            Err(LatticeError::LabelingNotBijective { .. })
        ));
    }

    #[test]
    fn lattice_iso_examples() {
        let p01 = principal_ideal(&fo("(0 (1))", 2)).unwrap();
        assert!(lattice_iso(&p01, &p01).is_some());
        let anti = principal_ideal(&fo("(0) | (1)", 2)).unwrap();
        assert!(lattice_iso(&p01, &anti).is_none());
        let p10 = principal_ideal(&fo("(1 (0))", 2)).unwrap();
        assert!(lattice_iso(&p01, &p10).is_some());
    }

    #[test]
    fn automorphic_examples() {
        let a = fo("(0 (1))", 2);
        let b = fo("(1 (0))", 2);
        assert_eq!(automorphic(&a, &b).unwrap(), Some(vec![1, 0]));
        assert_eq!(automorphic(&a, &a).unwrap(), Some(vec![0, 1]));
        let anti = fo("(0) | (1)", 2);
        assert_eq!(automorphic(&a, &anti).unwrap(), None);
    }

    #[test]
    fn er_reduce_examples() {
        let a = fo("(0 (1))", 2);
        let b = fo("(1 (0))", 2);
        let anti = fo("(0) | (1)", 2);
        assert!(er_reduce(&a, &a).unwrap());
        assert!(er_reduce(&a, &b).unwrap());
        assert!(!er_reduce(&a, &anti).unwrap());
    }

    #[test]
    fn smain_chain_vs_antichain() {
        let chain = parse_poset("k=2\nelem 0 label 0\nelem 1 label 1\norder 0 < 1\n").unwrap();
        let anti = parse_poset("k=2\nelem 0 label 0\nelem 1 label 1\n").unwrap();
        let same = smain_check(&chain, &chain).unwrap();
        assert!(same.poset_iso.is_some() && same.lattice_iso.is_some());
        let diff = smain_check(&chain, &anti).unwrap();
        assert!(diff.poset_iso.is_none() && diff.lattice_iso.is_none());
        assert_eq!(diff.lstar_a_size, 4);
        assert_eq!(diff.lstar_b_size, 3);
        assert!(diff.render().contains("agreement: ok"));
    }

    #[test]
    fn distributivity_and_joins() {
        let l = principal_ideal(&fo("(0 (1))", 2)).unwrap();
        assert!(l.has_all_joins());
        assert!(l.adjoin_bottom().is_distributive());
        let seg = {
            let chain =
                parse_poset("k=2\nelem 0 label 0\nelem 1 label 1\norder 0 < 1\n").unwrap();
            lattice_l(&chain).unwrap()
        };
        assert!(seg.is_distributive());
        assert!(seg.has_all_joins());
    }

    #[test]
    fn dot_export_shape() {
        let l = principal_ideal(&fo("(0) | (1)", 2)).unwrap();
        let dot = l.to_dot();
        assert_eq!(dot.matches("->").count(), 2);
        assert!(dot.contains("n0 [label=\"(0)\"]"));
        assert_eq!(dot, l.to_dot());
    }

    #[test]
    fn bottom_adjunction() {
        let l = principal_ideal(&fo("(0) | (1)", 2)).unwrap().adjoin_bottom();
        assert_eq!(l.len(), 4);
        assert!(l.has_bottom());
        assert_eq!(l.caption(0), "⊥");
        assert!((1..4).all(|i| l.leq(0, i)));
        assert!(l.has_all_joins());
    }
}
