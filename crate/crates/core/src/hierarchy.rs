//! Exact finite-universe oracles for the set-theoretic operations behind
//! the hierarchies: ω-Boolean combinations, the finite difference operator,
//! and the constructive ω-uniformization / ω-reduction at level 2.
//!
//! Universes here are plain finite sets, so "open" is trivial. This module
//! is an algebraic oracle for the formula identities, not a topological
//! model.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum HierarchyError {
    #[error("universe of size {size} exceeds the supported width 128")]
    UniverseTooLarge { size: usize },
    #[error("index {index} out of range for {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("shape mismatch: {msg}")]
    ShapeMismatch { msg: String },
    #[error("family file syntax error on line {line}: {msg}")]
    Syntax { line: usize, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FiniteUniverse {
    size: usize,
}

impl FiniteUniverse {
    pub fn new(size: usize) -> Result<Self, HierarchyError> {
        if size > 128 {
            return Err(HierarchyError::UniverseTooLarge { size });
        }
        Ok(FiniteUniverse { size })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    fn mask(&self) -> u128 {
        if self.size == 128 {
            u128::MAX
        } else {
            (1u128 << self.size) - 1
        }
    }

    pub fn empty(&self) -> USet {
        USet { size: self.size, bits: 0 }
    }

    pub fn full(&self) -> USet {
        USet { size: self.size, bits: self.mask() }
    }

    pub fn set_from<I: IntoIterator<Item = usize>>(&self, items: I) -> Result<USet, HierarchyError> {
        let mut bits = 0u128;
        for i in items {
            if i >= self.size {
                return Err(HierarchyError::IndexOutOfRange { index: i, len: self.size });
            }
            bits |= 1 << i;
        }
        Ok(USet { size: self.size, bits })
    }
}

/// A subset of a finite universe, as a bit vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct USet {
    size: usize,
    bits: u128,
}

impl USet {
    pub fn universe_size(&self) -> usize {
        self.size
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.size && (self.bits >> i) & 1 == 1
    }

    pub fn union(&self, o: &USet) -> USet {
        debug_assert_eq!(self.size, o.size);
        USet { size: self.size, bits: self.bits | o.bits }
    }

    pub fn inter(&self, o: &USet) -> USet {
        debug_assert_eq!(self.size, o.size);
        USet { size: self.size, bits: self.bits & o.bits }
    }

    pub fn diff(&self, o: &USet) -> USet {
        debug_assert_eq!(self.size, o.size);
        USet { size: self.size, bits: self.bits & !o.bits }
    }

    pub fn complement(&self) -> USet {
        let mask = FiniteUniverse { size: self.size }.mask();
        USet { size: self.size, bits: !self.bits & mask }
    }

    pub fn is_subset(&self, o: &USet) -> bool {
        self.bits & !o.bits == 0
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.size).filter(move |&i| self.contains(i))
    }
}

impl fmt::Display for USet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

/// r(n): 0 for even, 1 for odd.
pub fn parity(n: usize) -> u8 {
    (n % 2) as u8
}

/// The Cantor pairing ⟨m,n⟩ = (m+n)(m+n+1)/2 + n, frozen globally.
pub fn cantor_pair(m: usize, n: usize) -> usize {
    (m + n) * (m + n + 1) / 2 + n
}

/// ⋃_{A∈𝒜} ((⋂_{n∈A} C_n) ∩ (⋂_{n∉A} C̄_n)) with n ranging over the family
/// length.
pub fn omega_boolean(
    universe: FiniteUniverse,
    alphas: &[BTreeSet<usize>],
    family: &[USet],
) -> Result<USet, HierarchyError> {
    let m = family.len();
    for c in family {
        if c.universe_size() != universe.size() {
            return Err(HierarchyError::ShapeMismatch {
                msg: "family set over a different universe".into(),
            });
        }
    }
    let mut result = universe.empty();
    for a in alphas {
        if let Some(&bad) = a.iter().find(|&&n| n >= m) {
            return Err(HierarchyError::IndexOutOfRange { index: bad, len: m });
        }
        let mut piece = universe.full();
        for n in 0..m {
            if a.contains(&n) {
                piece = piece.inter(&family[n]);
            } else {
                piece = piece.inter(&family[n].complement());
            }
        }
        result = result.union(&piece);
    }
    Ok(result)
}

/// D_α for α = family length: ⋃ { A_β ∖ ⋃_{γ<β} A_γ | β < α, r(β) ≠ r(α) }.
pub fn diff_op(universe: FiniteUniverse, family: &[USet]) -> Result<USet, HierarchyError> {
    let alpha = family.len();
    for c in family {
        if c.universe_size() != universe.size() {
            return Err(HierarchyError::ShapeMismatch {
                msg: "family set over a different universe".into(),
            });
        }
    }
    let mut result = universe.empty();
    let mut earlier = universe.empty();
    for (beta, a) in family.iter().enumerate() {
        if parity(beta) != parity(alpha) {
            result = result.union(&a.diff(&earlier));
        }
        earlier = earlier.union(a);
    }
    Ok(result)
}

/// A product universe [0, rows) × X with (n, x) encoded as n·|X| + x.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProductUniverse {
    rows: usize,
    cols: usize,
}

impl ProductUniverse {
    pub fn new(rows: usize, cols: usize) -> Result<Self, HierarchyError> {
        FiniteUniverse::new(rows * cols)?;
        Ok(ProductUniverse { rows, cols })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn universe(&self) -> FiniteUniverse {
        FiniteUniverse { size: self.rows * self.cols }
    }

    pub fn col_universe(&self) -> FiniteUniverse {
        FiniteUniverse { size: self.cols }
    }

    pub fn index(&self, n: usize, x: usize) -> usize {
        debug_assert!(n < self.rows && x < self.cols);
        n * self.cols + x
    }

    /// The slice {x | (n,x) ∈ s}.
    pub fn row(&self, s: &USet, n: usize) -> USet {
        let mask = self.col_universe().mask();
        USet { size: self.cols, bits: (s.bits >> (n * self.cols)) & mask }
    }

    /// {(n, x) | x ∈ s}.
    pub fn embed_row(&self, s: &USet, n: usize) -> USet {
        debug_assert_eq!(s.size, self.cols);
        USet { size: self.rows * self.cols, bits: s.bits << (n * self.cols) }
    }

    /// pr_X: the union of all row slices.
    pub fn project(&self, s: &USet) -> USet {
        let mut out = self.col_universe().empty();
        for n in 0..self.rows {
            out = out.union(&self.row(s, n));
        }
        out
    }
}

fn check_product_family(
    pu: ProductUniverse,
    b: &[USet],
    c: &[USet],
) -> Result<(), HierarchyError> {
    if b.len() != c.len() {
        return Err(HierarchyError::ShapeMismatch {
            msg: format!("{} B-sets vs {} C-sets", b.len(), c.len()),
        });
    }
    let size = pu.universe().size();
    for s in b.iter().chain(c.iter()) {
        if s.universe_size() != size {
            return Err(HierarchyError::ShapeMismatch {
                msg: "presentation set over a different product universe".into(),
            });
        }
    }
    Ok(())
}

/// Uniformizes A = ⋃_m (B_m ∖ C_m) over [0, rows) × X: the sets
/// E_{m,n} = (B_m(n) ∖ C_m(n)) minus everything claimed by a smaller ⟨m,n⟩
/// are pairwise disjoint, and D = {(n,x) | x ∈ ⋃_m E_{m,n}} keeps the
/// projection of A while holding at most one row per point.
pub fn uniformize_sigma02(
    pu: ProductUniverse,
    b: &[USet],
    c: &[USet],
) -> Result<USet, HierarchyError> {
    check_product_family(pu, b, c)?;
    let mut pairs: Vec<(usize, usize)> = (0..b.len())
        .flat_map(|m| (0..pu.rows()).map(move |n| (m, n)))
        .collect();
    pairs.sort_by_key(|&(m, n)| cantor_pair(m, n));

    let mut covered = pu.col_universe().empty();
    let mut d = pu.universe().empty();
    for (m, n) in pairs {
        let slice = pu.row(&b[m], n).diff(&pu.row(&c[m], n));
        let fresh = slice.diff(&covered);
        covered = covered.union(&slice);
        d = d.union(&pu.embed_row(&fresh, n));
    }
    Ok(d)
}

/// The amalgamated set ⋃_m (B_m ∖ C_m) itself (for checking D against A).
pub fn sigma02_union(
    pu: ProductUniverse,
    b: &[USet],
    c: &[USet],
) -> Result<USet, HierarchyError> {
    check_product_family(pu, b, c)?;
    let mut a = pu.universe().empty();
    for (bm, cm) in b.iter().zip(c) {
        a = a.union(&bm.diff(cm));
    }
    Ok(a)
}

/// A Σ⁰₂ presentation of a subset of X: finitely many (B, C) pairs over X
/// presenting ⋃_m (B_m ∖ C_m).
#[derive(Debug, Clone)]
pub struct Presentation {
    pub pairs: Vec<(USet, USet)>,
}

impl Presentation {
    pub fn denoted(&self, x: FiniteUniverse) -> USet {
        let mut a = x.empty();
        for (b, c) in &self.pairs {
            a = a.union(&b.diff(c));
        }
        a
    }
}

/// ω-reduction obtained from ω-uniformization of the amalgamated family:
/// returns pairwise disjoint D_i ⊆ A_i with ⋃ D_i = ⋃ A_i.
pub fn reduce_family(
    x: FiniteUniverse,
    presentations: &[Presentation],
) -> Result<Vec<USet>, HierarchyError> {
    for p in presentations {
        for (b, c) in &p.pairs {
            if b.universe_size() != x.size() || c.universe_size() != x.size() {
                return Err(HierarchyError::ShapeMismatch {
                    msg: "presentation set over a different universe".into(),
                });
            }
        }
    }
    let rows = presentations.len();
    if rows == 0 {
        return Ok(Vec::new());
    }
    let pu = ProductUniverse::new(rows, x.size())?;
    let mut b_flat = Vec::new();
    let mut c_flat = Vec::new();
    for (i, p) in presentations.iter().enumerate() {
        for (b, c) in &p.pairs {
            b_flat.push(pu.embed_row(b, i));
            c_flat.push(pu.embed_row(c, i));
        }
    }
    let d = uniformize_sigma02(pu, &b_flat, &c_flat)?;
    Ok((0..rows).map(|i| pu.row(&d, i)).collect())
}

/// Parsed family file: `universe <u>`, then `set <name> = {i,j,…}` and
/// `family <name> = [set,set,…]` lines.
#[derive(Debug, Clone)]
pub struct FamilyFile {
    pub universe: FiniteUniverse,
    pub sets: BTreeMap<String, USet>,
    pub families: BTreeMap<String, Vec<String>>,
}

impl FamilyFile {
    pub fn family_sets(&self, name: &str) -> Result<Vec<USet>, HierarchyError> {
        let members = self.families.get(name).ok_or_else(|| HierarchyError::Syntax {
            line: 0,
            msg: format!("no family named {name:?}"),
        })?;
        members
            .iter()
            .map(|m| {
                self.sets.get(m).copied().ok_or_else(|| HierarchyError::Syntax {
                    line: 0,
                    msg: format!("family references undefined set {m:?}"),
                })
            })
            .collect()
    }
}

pub fn parse_family_file(text: &str) -> Result<FamilyFile, HierarchyError> {
    let err = |line: usize, msg: String| HierarchyError::Syntax { line, msg };
    let mut universe: Option<FiniteUniverse> = None;
    let mut sets = BTreeMap::new();
    let mut families = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let s = raw.trim();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        if let Some(rest) = s.strip_prefix("universe ") {
            let size: usize = rest
                .trim()
                .parse()
                .map_err(|_| err(line, "bad universe size".into()))?;
            universe = Some(FiniteUniverse::new(size)?);
            continue;
        }
        let u = universe.ok_or_else(|| err(line, "expected 'universe <u>' first".into()))?;
        if let Some(rest) = s.strip_prefix("set ") {
            let (name, body) = rest
                .split_once('=')
                .ok_or_else(|| err(line, "expected: set <name> = {i,j,…}".into()))?;
            let body = body.trim();
            if !body.starts_with('{') || !body.ends_with('}') {
                return Err(err(line, "set body must be {i,j,…}".into()));
            }
            let inner = &body[1..body.len() - 1];
            let mut items = Vec::new();
            for piece in inner.split(',') {
                let piece = piece.trim();
                if piece.is_empty() {
                    continue;
                }
                items.push(
                    piece
                        .parse::<usize>()
                        .map_err(|_| err(line, format!("bad element {piece:?}")))?,
                );
            }
            sets.insert(name.trim().to_string(), u.set_from(items)?);
        } else if let Some(rest) = s.strip_prefix("family ") {
            let (name, body) = rest
                .split_once('=')
                .ok_or_else(|| err(line, "expected: family <name> = [a,b,…]".into()))?;
            let body = body.trim();
            if !body.starts_with('[') || !body.ends_with(']') {
                return Err(err(line, "family body must be [a,b,…]".into()));
            }
            let inner = &body[1..body.len() - 1];
            let members: Vec<String> = inner
                .split(',')
                .map(|p| p.trim().to_string())
                .filter(|p| !p.is_empty())
                .collect();
            families.insert(name.trim().to_string(), members);
        } else {
            return Err(err(line, format!("unrecognized line {s:?}")));
        }
    }
    let universe = universe.ok_or_else(|| err(0, "missing 'universe <u>' line".into()))?;
    Ok(FamilyFile { universe, sets, families })
}
