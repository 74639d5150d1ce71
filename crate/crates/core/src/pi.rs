//! The principal open-set representation π over a fixed enumerated base.
//!
//! π(a) = ⋃_n B_{a(n)} with B_0 = ∅ and B_{n+1} = σ_n·𝒩, where σ_0, σ_1, …
//! enumerates ω* without repetition. The enumeration is graded: strings are
//! ordered by weight (length plus symbol sum), then by length, then
//! lexicographically. It is part of the π-name format and must never change.
//!
//! Open sets are confirmable but not refutable, so membership queries on
//! finite data answer Yes or Unknown.

pub type Sym = u64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PiMembership {
    Yes,
    Unknown,
}

fn weight(s: &[Sym]) -> u64 {
    s.len() as u64 + s.iter().sum::<u64>()
}

/// All strings of the given weight, by length then lexicographic order.
/// There are 2^(w-1) of them for w ≥ 1 and just the empty string for w = 0.
fn strings_of_weight(w: u64) -> Vec<Vec<Sym>> {
    if w == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for len in 1..=w {
        let mut cur = Vec::with_capacity(len as usize);
        gen_fixed(len, w - len, &mut cur, &mut out);
    }
    out
}

fn gen_fixed(len: u64, sum: u64, cur: &mut Vec<Sym>, out: &mut Vec<Vec<Sym>>) {
    if len == 0 {
        if sum == 0 {
            out.push(cur.clone());
        }
        return;
    }
    if len == 1 {
        cur.push(sum);
        out.push(cur.clone());
        cur.pop();
        return;
    }
    for first in 0..=sum {
        cur.push(first);
        gen_fixed(len - 1, sum - first, cur, out);
        cur.pop();
    }
}

/// σ_index. Indices [2^(w-1), 2^w) hold the strings of weight w.
pub fn sigma(index: u64) -> Vec<Sym> {
    if index == 0 {
        return Vec::new();
    }
    let w = 64 - index.leading_zeros() as u64; // floor(log2) + 1
    let start = 1u64 << (w - 1);
    strings_of_weight(w)[(index - start) as usize].clone()
}

/// The inverse of `sigma`.
pub fn sigma_index(s: &[Sym]) -> u64 {
    let w = weight(s);
    if w == 0 {
        return 0;
    }
    let start = 1u64 << (w - 1);
    let pos = strings_of_weight(w)
        .iter()
        .position(|t| t == s)
        .expect("every string appears in its weight block");
    start + pos as u64
}

/// Base index naming the cylinder σ·𝒩 (so that B_{index} = σ·𝒩).
pub fn cylinder_index(s: &[Sym]) -> u64 {
    sigma_index(s) + 1
}

/// Does the finite π-name prefix already confirm τ·𝒩 ⊆ π(a)? Yes iff some
/// listed index j > 0 has σ_{j−1} a prefix of τ. A string of weight greater
/// than τ's cannot be a prefix of τ, which bounds the work.
pub fn pi_eval(a_prefix: &[Sym], tau: &[Sym]) -> PiMembership {
    let w_tau = weight(tau);
    let limit = 1u64 << w_tau.min(62);
    for &j in a_prefix {
        if j == 0 {
            continue;
        }
        let n = j - 1;
        if n >= limit {
            continue;
        }
        let s = sigma(n);
        if s.len() <= tau.len() && s == tau[..s.len()] {
            return PiMembership::Yes;
        }
    }
    PiMembership::Unknown
}
