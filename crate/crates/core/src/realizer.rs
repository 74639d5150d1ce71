//! Synthesis of continuous realizers from forest morphisms: given a
//! monotone label-preserving map m : G → F, builds a transducer t with
//! ξ_G = ξ_F ∘ t after composing labels. The transducer simulates the
//! input's walk through G and emits the navigation word that drags the
//! ξ_F walk from m(current) up the unique chain to m(next).

use crate::forest::{ForestError, LabeledForest, Morphism, NodeId};
use crate::transducer::{Arm, StateRule, Sym, Transducer};
use std::collections::BTreeMap;

fn chain_up(f: &LabeledForest, from: NodeId, to: NodeId) -> Vec<NodeId> {
    let mut chain = vec![to];
    let mut x = to;
    while x != from {
        let p = f
            .parent(x)
            .expect("navigation target must lie above the source");
        x = p;
        chain.push(x);
    }
    chain.reverse();
    chain
}

/// Symbols that move the ξ_F walk along consecutive covering steps:
/// a 1 to descend, then the child index when there is a choice.
fn emit_steps(f: &LabeledForest, chain: &[NodeId], out: &mut Vec<Sym>) {
    for w in chain.windows(2) {
        let (u, next) = (w[0], w[1]);
        out.push(1);
        let ch = f.children(u);
        if ch.len() > 1 {
            let idx = ch.iter().position(|&c| c == next).expect("child of u");
            out.push(idx as Sym);
        }
    }
}

fn nav_between(f: &LabeledForest, from: NodeId, to: NodeId) -> Vec<Sym> {
    let mut out = Vec::new();
    emit_steps(f, &chain_up(f, from, to), &mut out);
    out
}

fn nav_initial(f: &LabeledForest, to: NodeId) -> Vec<Sym> {
    let mut root = to;
    while let Some(p) = f.parent(root) {
        root = p;
    }
    let mut out = Vec::new();
    if f.roots().len() > 1 {
        let idx = f.roots().iter().position(|&r| r == root).expect("root of to");
        out.push(idx as Sym);
    }
    emit_steps(f, &chain_up(f, root, to), &mut out);
    out
}

/// Builds the realizer for a morphism witnessing G ≤_h F.
pub fn synthesize_realizer(
    g: &LabeledForest,
    f: &LabeledForest,
    m: &Morphism,
) -> Result<Transducer, ForestError> {
    // re-validate against these particular forests
    let m = Morphism::new(m.map().to_vec(), g, f)?;

    let n = g.len();
    let frozen = n;
    let mut next_id = n + 1;
    let mut sel_child: BTreeMap<NodeId, usize> = BTreeMap::new();
    for v in 0..n {
        if g.children(v).len() > 1 {
            sel_child.insert(v, next_id);
            next_id += 1;
        }
    }
    let select_g = if g.roots().len() > 1 {
        let id = next_id;
        next_id += 1;
        Some(id)
    } else {
        None
    };

    let mut states = vec![StateRule::Always(Arm::new(vec![0], frozen)); next_id];
    for v in 0..n {
        let ch = g.children(v);
        let one = if ch.is_empty() {
            Arm::new(vec![0], frozen)
        } else if ch.len() == 1 {
            Arm::new(nav_between(f, m.apply(v), m.apply(ch[0])), ch[0])
        } else {
            Arm::new(vec![], sel_child[&v])
        };
        states[v] = StateRule::Classes {
            zero: Arm::new(vec![0], v),
            one,
            other: Arm::new(vec![0], frozen),
        };
    }
    for (&v, &id) in &sel_child {
        let arms = g
            .children(v)
            .iter()
            .map(|&c| Arm::new(nav_between(f, m.apply(v), m.apply(c)), c))
            .collect();
        states[id] = StateRule::Residue(arms);
    }
    if let Some(id) = select_g {
        let arms = g
            .roots()
            .iter()
            .map(|&r| Arm::new(nav_initial(f, m.apply(r)), r))
            .collect();
        states[id] = StateRule::Residue(arms);
    }

    let (initial, initial_output) = match select_g {
        Some(id) => (id, Vec::new()),
        None => {
            let root = g.roots()[0];
            (root, nav_initial(f, m.apply(root)))
        }
    };
    let t = Transducer { initial, initial_output, states };
    t.validate().expect("synthesized table is well formed");
    Ok(t)
}
