//! Shared test oracles: exhaustive enumeration of small forests and posets,
//! brute-force morphism search, and seeded random generators. Everything
//! here is independent of the library's decision procedures — morphisms are
//! found by enumerating raw maps, minimality by comparing against all
//! smaller forests.

#![allow(dead_code)]

use hforest::forest::{canonical_form, LabeledForest, NodeId};
use hforest::poset::LabeledPoset;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

/// All k-labeled trees and forests up to isomorphism, by exact node count.
pub struct Enumerator {
    pub k: usize,
    trees_by_size: Vec<Vec<LabeledForest>>, // index = size, [0] unused
}

impl Enumerator {
    pub fn new(k: usize, max_size: usize) -> Enumerator {
        let mut e = Enumerator { k, trees_by_size: vec![Vec::new(); max_size + 1] };
        for size in 1..=max_size {
            let mut trees = Vec::new();
            if size == 1 {
                for l in 0..k {
                    trees.push(LabeledForest::singleton(k, l).unwrap());
                }
            } else {
                for child_forest in e.forests_exact(size - 1) {
                    for l in 0..k {
                        trees.push(child_forest.push(l).unwrap());
                    }
                }
            }
            // dedupe up to isomorphism
            let mut seen = BTreeSet::new();
            trees.retain(|t| seen.insert(canonical_form(t)));
            e.trees_by_size[size] = trees;
        }
        e
    }

    pub fn trees(&self, size: usize) -> &[LabeledForest] {
        &self.trees_by_size[size]
    }

    /// Forests with exactly `total` nodes: multisets of trees.
    pub fn forests_exact(&self, total: usize) -> Vec<LabeledForest> {
        let flat: Vec<&LabeledForest> = (1..=total)
            .flat_map(|s| self.trees_by_size[s].iter())
            .collect();
        let mut out = Vec::new();
        let mut picked: Vec<usize> = Vec::new();
        fn go(
            flat: &[&LabeledForest],
            start: usize,
            remaining: usize,
            picked: &mut Vec<usize>,
            out: &mut Vec<LabeledForest>,
        ) {
            if remaining == 0 {
                let mut it = picked.iter();
                let first = *it.next().unwrap();
                let mut f = flat[first].clone();
                for &i in it {
                    f = f.join(flat[i]).unwrap();
                }
                out.push(f);
                return;
            }
            for i in start..flat.len() {
                let size = flat[i].len();
                if size <= remaining {
                    picked.push(i);
                    go(flat, i, remaining - size, picked, out);
                    picked.pop();
                }
            }
        }
        go(&flat, 0, total, &mut picked, &mut out);
        out
    }

    /// Forests of every size from 1 to `max`.
    pub fn forests_up_to(&self, max: usize) -> Vec<LabeledForest> {
        (1..=max).flat_map(|s| self.forests_exact(s)).collect()
    }
}

/// Exhaustive search over all label-preserving monotone maps.
pub fn brute_force_leq(g: &LabeledForest, f: &LabeledForest) -> bool {
    let n = g.len();
    let m = f.len();
    let mut map = vec![0usize; n];
    loop {
        if map_is_morphism(g, f, &map) {
            return true;
        }
        // next assignment in base m
        let mut i = 0;
        loop {
            if i == n {
                return false;
            }
            map[i] += 1;
            if map[i] < m {
                break;
            }
            map[i] = 0;
            i += 1;
        }
    }
}

fn map_is_morphism(g: &LabeledForest, f: &LabeledForest, map: &[NodeId]) -> bool {
    for x in 0..g.len() {
        if g.label(x) != f.label(map[x]) {
            return false;
        }
        if let Some(p) = g.parent(x) {
            if !f.node_leq(map[p], map[x]) {
                return false;
            }
        }
    }
    true
}

pub fn brute_force_equiv(g: &LabeledForest, f: &LabeledForest) -> bool {
    brute_force_leq(g, f) && brute_force_leq(f, g)
}

/// Literal minimality: no h-equivalent forest of lesser cardinality exists.
pub fn brute_force_minimal(f: &LabeledForest, e: &Enumerator) -> bool {
    for smaller in e.forests_up_to(f.len() - 1) {
        if brute_force_equiv(f, &smaller) {
            return false;
        }
    }
    true
}

/// All posets on exactly `n` elements up to isomorphism, labeled by the
/// identity (bijective labeling, k = n).
pub fn all_posets_up_to_iso(n: usize) -> Vec<LabeledPoset> {
    let ordered_pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1 << ordered_pairs.len()) {
        let pairs: Vec<(usize, usize)> = ordered_pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| (mask >> i) & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        let mut lt = vec![vec![false; n]; n];
        for &(a, b) in &pairs {
            lt[a][b] = true;
        }
        // require transitive closedness so each poset appears once per relation
        let mut transitive = true;
        'outer: for a in 0..n {
            for b in 0..n {
                if lt[a][b] {
                    for c in 0..n {
                        if lt[b][c] && !lt[a][c] {
                            transitive = false;
                            break 'outer;
                        }
                    }
                }
            }
        }
        if !transitive || (0..n).any(|a| lt[a][a]) {
            continue;
        }
        if (0..n).any(|a| (0..n).any(|b| lt[a][b] && lt[b][a])) {
            continue;
        }
        if seen.insert(poset_signature(n, &lt)) {
            out.push(LabeledPoset::new(n, (0..n).collect(), &pairs).unwrap());
        }
    }
    out
}

/// Minimal adjacency signature over all permutations: an iso invariant that
/// is also complete for these tiny sizes.
fn poset_signature(n: usize, lt: &[Vec<bool>]) -> Vec<bool> {
    let mut best: Option<Vec<bool>> = None;
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let mut sig = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                sig.push(lt[perm[a]][perm[b]]);
            }
        }
        if best.as_ref().map_or(true, |b| sig < *b) {
            best = Some(sig);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.unwrap()
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// A random forest with `size` nodes: each later node picks an earlier
/// parent or stays a root.
pub fn random_forest(rng: &mut ChaCha8Rng, size: usize, k: usize) -> LabeledForest {
    let mut parent: Vec<Option<NodeId>> = Vec::with_capacity(size);
    for i in 0..size {
        if i == 0 || rng.gen_bool(0.3) {
            parent.push(None);
        } else {
            parent.push(Some(rng.gen_range(0..i)));
        }
    }
    let label = (0..size).map(|_| rng.gen_range(0..k)).collect();
    LabeledForest::new(k, parent, label).unwrap()
}

/// A random poset on `size` elements with arbitrary labels below k.
pub fn random_poset(rng: &mut ChaCha8Rng, size: usize, k: usize) -> LabeledPoset {
    let mut pairs = Vec::new();
    for a in 0..size {
        for b in (a + 1)..size {
            if rng.gen_bool(0.3) {
                pairs.push((a, b));
            }
        }
    }
    let labels = (0..size).map(|_| rng.gen_range(0..k)).collect();
    LabeledPoset::new(k, labels, &pairs).unwrap()
}

/// Morphism-witnessed pairs G ≤_h F for realizer testing.
pub fn witnessed_pairs(
    rng: &mut ChaCha8Rng,
    count: usize,
) -> Vec<(LabeledForest, LabeledForest, hforest::forest::Morphism)> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let k = rng.gen_range(1..=3);
        let f = random_forest(rng, rng.gen_range(2..=8), k);
        let g = if rng.gen_bool(0.2) {
            f.clone()
        } else {
            random_forest(rng, rng.gen_range(1..=5), k)
        };
        if let Some(w) = hforest::forest::leq_h_witness(&g, &f).unwrap() {
            out.push((g, f, w));
        }
    }
    out
}

/// A random eventually-zero input prefix: zero-biased symbols.
pub fn random_word(rng: &mut ChaCha8Rng, max_len: usize, max_sym: u64) -> Vec<u64> {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| {
            if rng.gen_bool(0.4) {
                0
            } else {
                rng.gen_range(0..=max_sym)
            }
        })
        .collect()
}
