//! Finite labeled posets, their bottom-up unfolding into forests, and
//! order-isomorphism search.

use crate::forest::{ForestError, Label, LabeledForest, NodeId};
use std::collections::VecDeque;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum PosetError {
    #[error("poset must contain at least one element")]
    Empty,
    #[error("order relation has a cycle through element {elem}")]
    CycleDetected { elem: usize },
    #[error("label {label} out of range for k = {k}")]
    LabelOutOfRange { label: Label, k: usize },
    #[error("element id {elem} out of range for {len} elements")]
    ElemOutOfRange { elem: usize, len: usize },
    #[error("labeling is not a bijection onto 0..{k}")]
    LabelingNotBijective { k: usize },
}

/// A finite k-labeled poset. The strict order is stored as its transitive
/// reduction (`covers`) alongside the reflexive-transitive closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledPoset {
    k: usize,
    label: Vec<Label>,
    leq: Vec<Vec<bool>>,
    covers: Vec<Vec<usize>>,
}

impl LabeledPoset {
    /// Builds a poset from strict-order pairs `a < b`; the input may contain
    /// any generating set, closure and reduction are computed here.
    pub fn new(
        k: usize,
        label: Vec<Label>,
        strict_pairs: &[(usize, usize)],
    ) -> Result<Self, PosetError> {
        let n = label.len();
        if n == 0 {
            return Err(PosetError::Empty);
        }
        for &l in &label {
            if l >= k {
                return Err(PosetError::LabelOutOfRange { label: l, k });
            }
        }
        let mut lt = vec![vec![false; n]; n];
        for &(a, b) in strict_pairs {
            if a >= n {
                return Err(PosetError::ElemOutOfRange { elem: a, len: n });
            }
            if b >= n {
                return Err(PosetError::ElemOutOfRange { elem: b, len: n });
            }
            if a == b {
                return Err(PosetError::CycleDetected { elem: a });
            }
            lt[a][b] = true;
        }
        // transitive closure
        for m in 0..n {
            for a in 0..n {
                if lt[a][m] {
                    for b in 0..n {
                        if lt[m][b] {
                            lt[a][b] = true;
                        }
                    }
                }
            }
        }
        for a in 0..n {
            if lt[a][a] {
                return Err(PosetError::CycleDetected { elem: a });
            }
        }
        let mut leq = lt.clone();
        for (a, row) in leq.iter_mut().enumerate() {
            row[a] = true;
        }
        // transitive reduction: b covers a iff a < b with nothing in between
        let mut covers = vec![Vec::new(); n];
        for a in 0..n {
            for b in 0..n {
                if lt[a][b] && !(0..n).any(|m| lt[a][m] && lt[m][b]) {
                    covers[a].push(b);
                }
            }
        }
        Ok(LabeledPoset { k, label, leq, covers })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.label.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn label(&self, e: usize) -> Label {
        self.label[e]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq[a][b]
    }

    /// Immediate successors of `e`.
    pub fn suc(&self, e: usize) -> &[usize] {
        &self.covers[e]
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&e| (0..self.len()).all(|o| !self.lt(o, e)))
            .collect()
    }

    /// rk(↓e): longest chain ending at `e`.
    pub fn level(&self, e: usize) -> usize {
        1 + (0..self.len())
            .filter(|&o| self.lt(o, e))
            .map(|o| self.level(o))
            .max()
            .unwrap_or(0)
    }

    pub fn rank(&self) -> usize {
        (0..self.len()).map(|e| self.level(e)).max().unwrap()
    }

    /// True iff the labels form a bijection onto `[0, k)` (requires `k == len`).
    pub fn labeling_bijective(&self) -> bool {
        if self.k != self.len() {
            return false;
        }
        let mut seen = vec![false; self.k];
        for &l in &self.label {
            if seen[l] {
                return false;
            }
            seen[l] = true;
        }
        true
    }
}

/// Bottom-up unfolding: one tree per minimal element, one fresh child per
/// immediate successor, recursively. Returns the forest and the monotone
/// onto map f from forest nodes to poset elements; forest labels are the
/// poset labels composed with f. Fresh identifiers are assigned in
/// breadth-first order from the minimal elements.
pub fn unfold(p: &LabeledPoset) -> (LabeledForest, Vec<usize>) {
    let mut parent: Vec<Option<NodeId>> = Vec::new();
    let mut label: Vec<Label> = Vec::new();
    let mut map: Vec<usize> = Vec::new();
    let mut queue: VecDeque<(usize, Option<NodeId>)> =
        p.minimal_elements().into_iter().map(|e| (e, None)).collect();
    while let Some((e, par)) = queue.pop_front() {
        let id = parent.len();
        parent.push(par);
        label.push(p.label(e));
        map.push(e);
        for &s in p.suc(e) {
            queue.push_back((s, Some(id)));
        }
    }
    let forest = LabeledForest::new(p.k(), parent, label).expect("unfolding is a valid forest");
    (forest, map)
}

/// Backtracking search for a bijection preserving `leq` in both directions.
/// `key(a_elem)` / `key(b_elem)` values must match on paired elements; pass a
/// constant closure to ignore labels.
pub(crate) fn order_iso(
    leq_a: &[Vec<bool>],
    leq_b: &[Vec<bool>],
    key_a: &[u64],
    key_b: &[u64],
) -> Option<Vec<usize>> {
    let n = leq_a.len();
    if leq_b.len() != n {
        return None;
    }
    // invariant signature: (key, |down|, |up|)
    let sig = |leq: &[Vec<bool>], key: &[u64], x: usize| {
        let down = (0..n).filter(|&o| leq[o][x]).count();
        let up = (0..n).filter(|&o| leq[x][o]).count();
        (key[x], down, up)
    };
    let sigs_a: Vec<_> = (0..n).map(|x| sig(leq_a, key_a, x)).collect();
    let sigs_b: Vec<_> = (0..n).map(|x| sig(leq_b, key_b, x)).collect();
    {
        let mut sa = sigs_a.clone();
        let mut sb = sigs_b.clone();
        sa.sort_unstable();
        sb.sort_unstable();
        if sa != sb {
            return None;
        }
    }
    let mut cand: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| sigs_a[i] == sigs_b[j]).collect())
        .collect();
    // assign scarcest elements first
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| cand[i].len());
    for c in cand.iter_mut() {
        c.sort_unstable();
    }

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        pos: usize,
        order: &[usize],
        cand: &[Vec<usize>],
        leq_a: &[Vec<bool>],
        leq_b: &[Vec<bool>],
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let i = order[pos];
        for &j in &cand[i] {
            if used[j] {
                continue;
            }
            let ok = order[..pos].iter().all(|&i2| {
                let j2 = map[i2];
                leq_a[i][i2] == leq_b[j][j2] && leq_a[i2][i] == leq_b[j2][j]
            });
            if ok {
                map[i] = j;
                used[j] = true;
                if go(pos + 1, order, cand, leq_a, leq_b, map, used) {
                    return true;
                }
                used[j] = false;
                map[i] = usize::MAX;
            }
        }
        false
    }
    if go(0, &order, &cand, leq_a, leq_b, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

/// Order isomorphism between posets. Labels are ignored unless
/// `respect_labels` is set.
pub fn poset_iso(
    a: &LabeledPoset,
    b: &LabeledPoset,
    respect_labels: bool,
) -> Option<Vec<usize>> {
    let key = |p: &LabeledPoset, e: usize| {
        if respect_labels {
            p.label(e) as u64
        } else {
            0
        }
    };
    let ka: Vec<u64> = (0..a.len()).map(|e| key(a, e)).collect();
    let kb: Vec<u64> = (0..b.len()).map(|e| key(b, e)).collect();
    order_iso(&a.leq, &b.leq, &ka, &kb)
}

pub(crate) fn leq_matrix_of_poset(p: &LabeledPoset) -> Vec<Vec<bool>> {
    p.leq.clone()
}

/// Panics never; used by tests and `smain_check` to validate the unfolding
/// contract mechanically.
pub fn unfold_contract_holds(p: &LabeledPoset, f: &LabeledForest, map: &[usize]) -> bool {
    if f.rank() != p.rank() {
        return false;
    }
    // monotone
    for v in 0..f.len() {
        if let Some(pa) = f.parent(v) {
            if !p.lt(map[pa], map[v]) {
                return false;
            }
        }
    }
    // onto
    let mut hit = vec![false; p.len()];
    for &e in map {
        hit[e] = true;
    }
    if !hit.iter().all(|&b| b) {
        return false;
    }
    // level-1 bijection
    let mins = p.minimal_elements();
    let roots: Vec<usize> = f.roots().iter().map(|&r| map[r]).collect();
    {
        let mut rs = roots.clone();
        rs.sort_unstable();
        rs.dedup();
        if rs != mins || roots.len() != mins.len() {
            return false;
        }
    }
    // successor bijections
    for v in 0..f.len() {
        let mut img: Vec<usize> = f.children(v).iter().map(|&c| map[c]).collect();
        img.sort_unstable();
        let mut want = p.suc(map[v]).to_vec();
        want.sort_unstable();
        if img != want || img.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
    }
    true
}

/// Forest labels must match the poset labels through the map.
pub fn unfold_labels_consistent(p: &LabeledPoset, f: &LabeledForest, map: &[usize]) -> bool {
    (0..f.len()).all(|v| f.label(v) == p.label(map[v]))
}

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum EitherOrderError {
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Forest(#[from] ForestError),
}
