//! Executable prefix semantics of k-partitions of Baire space.
//!
//! A `PrefixPartition` answers, for a finite input prefix, either the final
//! value (which no extension can change) or an over-approximating set of
//! still-attainable values. `Xi` is the canonical partition generated by a
//! labeled forest: inside a tree the symbol 0 stays put, the first 1 after
//! zeros descends into the child forest, anything else freezes the walk; at
//! a forest of m trees the next symbol j selects tree j mod m.

use crate::forest::{Label, LabeledForest, NodeId};
use std::collections::BTreeSet;
use thiserror::Error;

pub type Sym = u64;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum PartitionError {
    #[error("label counts differ: {left} vs {right}")]
    LabelCountMismatch { left: usize, right: usize },
    #[error("label {label} out of range for k = {k}")]
    LabelOutOfRange { label: Label, k: usize },
    #[error("supremum of an empty list")]
    EmptyList,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Determination {
    Determined(Label),
    Possible(BTreeSet<Label>),
}

impl Determination {
    /// Collapses singleton possible-sets; the set must be non-empty.
    pub fn from_labels(labels: BTreeSet<Label>) -> Determination {
        assert!(!labels.is_empty(), "attainable-value set cannot be empty");
        if labels.len() == 1 {
            Determination::Determined(*labels.iter().next().unwrap())
        } else {
            Determination::Possible(labels)
        }
    }

    pub fn labels(&self) -> BTreeSet<Label> {
        match self {
            Determination::Determined(l) => [*l].into_iter().collect(),
            Determination::Possible(s) => s.clone(),
        }
    }

    pub fn is_determined(&self) -> bool {
        matches!(self, Determination::Determined(_))
    }
}

impl std::fmt::Display for Determination {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Determination::Determined(l) => write!(f, "Determined({l})"),
            Determination::Possible(s) => {
                let items: Vec<String> = s.iter().map(|l| l.to_string()).collect();
                write!(f, "Possible({{{}}})", items.join(","))
            }
        }
    }
}

/// Position of the evaluation walk inside a forest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Walk {
    Selecting(Vec<NodeId>),
    At(NodeId),
    Frozen(NodeId),
}

pub(crate) fn walk_start(f: &LabeledForest) -> Walk {
    if f.roots().len() == 1 {
        Walk::At(f.roots()[0])
    } else {
        Walk::Selecting(f.roots().to_vec())
    }
}

pub(crate) fn walk_step(f: &LabeledForest, w: &Walk, sym: Sym) -> Walk {
    match w {
        Walk::Selecting(trees) => Walk::At(trees[(sym as usize) % trees.len()]),
        Walk::At(v) => {
            let ch = f.children(*v);
            if sym == 0 {
                Walk::At(*v)
            } else if ch.is_empty() || sym != 1 {
                Walk::Frozen(*v)
            } else if ch.len() == 1 {
                Walk::At(ch[0])
            } else {
                Walk::Selecting(ch.to_vec())
            }
        }
        Walk::Frozen(v) => Walk::Frozen(*v),
    }
}

fn walk_determination(f: &LabeledForest, w: &Walk) -> Determination {
    match w {
        Walk::Frozen(v) => Determination::Determined(f.label(*v)),
        Walk::At(v) => Determination::from_labels(f.cone_labels(*v)),
        Walk::Selecting(trees) => {
            let mut labels = BTreeSet::new();
            for &t in trees {
                labels.extend(f.cone_labels(t));
            }
            Determination::from_labels(labels)
        }
    }
}

/// Evaluates ξ_F (composed with the labeling) on a finite prefix.
pub fn xi_eval(f: &LabeledForest, word: &[Sym]) -> Determination {
    let mut w = walk_start(f);
    for &s in word {
        w = walk_step(f, &w, s);
    }
    walk_determination(f, &w)
}

/// The exact value of ξ_F (composed with the labeling) on the
/// eventually-zero input word·0^ω.
pub fn exact_value(f: &LabeledForest, word: &[Sym]) -> Label {
    let mut w = walk_start(f);
    for &s in word {
        w = walk_step(f, &w, s);
    }
    match w {
        Walk::At(v) | Walk::Frozen(v) => f.label(v),
        Walk::Selecting(trees) => f.label(trees[0]),
    }
}

/// A lazily evaluable k-partition of Baire space, queried on finite
/// prefixes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrefixPartition {
    Constant { k: usize, value: Label },
    Xi(LabeledForest),
    OPlus(Box<PrefixPartition>, Box<PrefixPartition>),
    Push { label: Label, inner: Box<PrefixPartition> },
    Sup(Vec<PrefixPartition>),
}

impl PrefixPartition {
    pub fn constant(k: usize, value: Label) -> Result<Self, PartitionError> {
        if value >= k {
            return Err(PartitionError::LabelOutOfRange { label: value, k });
        }
        Ok(PrefixPartition::Constant { k, value })
    }

    pub fn xi(f: LabeledForest) -> Self {
        PrefixPartition::Xi(f)
    }

    /// (μ⊕ν): an even first symbol routes to μ, an odd one to ν.
    pub fn oplus(mu: PrefixPartition, nu: PrefixPartition) -> Result<Self, PartitionError> {
        if mu.k() != nu.k() {
            return Err(PartitionError::LabelCountMismatch { left: mu.k(), right: nu.k() });
        }
        Ok(PrefixPartition::OPlus(Box::new(mu), Box::new(nu)))
    }

    /// p_s(ν): value s unless the input enters ν through 0^n 1.
    pub fn push(label: Label, inner: PrefixPartition) -> Result<Self, PartitionError> {
        if label >= inner.k() {
            return Err(PartitionError::LabelOutOfRange { label, k: inner.k() });
        }
        Ok(PrefixPartition::Push { label, inner: Box::new(inner) })
    }

    /// Finitary ⨆: the first symbol j selects component j mod m.
    pub fn sup(components: Vec<PrefixPartition>) -> Result<Self, PartitionError> {
        let k = match components.first() {
            None => return Err(PartitionError::EmptyList),
            Some(c) => c.k(),
        };
        for c in &components {
            if c.k() != k {
                return Err(PartitionError::LabelCountMismatch { left: k, right: c.k() });
            }
        }
        Ok(PrefixPartition::Sup(components))
    }

    pub fn k(&self) -> usize {
        match self {
            PrefixPartition::Constant { k, .. } => *k,
            PrefixPartition::Xi(f) => f.k(),
            PrefixPartition::OPlus(a, _) => a.k(),
            PrefixPartition::Push { inner, .. } => inner.k(),
            PrefixPartition::Sup(cs) => cs[0].k(),
        }
    }

    pub fn eval(&self, word: &[Sym]) -> Determination {
        match self {
            PrefixPartition::Constant { value, .. } => Determination::Determined(*value),
            PrefixPartition::Xi(f) => xi_eval(f, word),
            PrefixPartition::OPlus(a, b) => match word.first() {
                None => {
                    let mut labels = a.eval(&[]).labels();
                    labels.extend(b.eval(&[]).labels());
                    Determination::from_labels(labels)
                }
                Some(&s) if s % 2 == 0 => a.eval(&word[1..]),
                Some(_) => b.eval(&word[1..]),
            },
            PrefixPartition::Push { label, inner } => {
                match word.iter().position(|&s| s != 0) {
                    None => {
                        let mut labels = inner.eval(&[]).labels();
                        labels.insert(*label);
                        Determination::from_labels(labels)
                    }
                    Some(i) if word[i] == 1 => inner.eval(&word[i + 1..]),
                    Some(_) => Determination::Determined(*label),
                }
            }
            PrefixPartition::Sup(cs) => match word.first() {
                None => {
                    let mut labels = BTreeSet::new();
                    for c in cs {
                        labels.extend(c.eval(&[]).labels());
                    }
                    Determination::from_labels(labels)
                }
                Some(&s) => cs[(s as usize) % cs.len()].eval(&word[1..]),
            },
        }
    }
}
