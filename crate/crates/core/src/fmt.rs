//! Text formats: s-expression forests and the poset file format.
//!
//! Forest grammar: a tree is `(L child child ...)`, a leaf `(L)`, and a
//! forest is trees separated by `|`, e.g. `(0 (1) (2)) | (1)`.
//!
//! Poset files: a header `k=<n>`, then lines `elem <id> label <l>` and
//! `order <a> < <b>`.

use crate::forest::{ForestError, Label, LabeledForest, NodeId};
use crate::poset::{LabeledPoset, PosetError};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum FormatError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("syntax error on line {line}: {msg}")]
    SyntaxLine { line: usize, msg: String },
    #[error(transparent)]
    Forest(#[from] ForestError),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

#[derive(Debug, PartialEq, Eq, Clone, Copy)]
enum Tok {
    Open,
    Close,
    Bar,
    Num(usize),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, FormatError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'(' => {
                out.push((i, Tok::Open));
                i += 1;
            }
            b')' => {
                out.push((i, Tok::Close));
                i += 1;
            }
            b'|' => {
                out.push((i, Tok::Bar));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: usize = text[start..i]
                    .parse()
                    .map_err(|_| FormatError::Syntax { pos: start, msg: "number too large".into() })?;
                out.push((start, Tok::Num(n)));
            }
            _ => {
                return Err(FormatError::Syntax {
                    pos: i,
                    msg: format!("unexpected character {:?}", b as char),
                })
            }
        }
    }
    Ok(out)
}

struct TreeSpec {
    label: Label,
    children: Vec<TreeSpec>,
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<(usize, Tok)> {
        self.toks.get(self.pos).copied()
    }

    fn err_here(&self, msg: &str) -> FormatError {
        let pos = self.peek().map(|(p, _)| p).unwrap_or(self.end);
        FormatError::Syntax { pos, msg: msg.to_string() }
    }

    fn tree(&mut self) -> Result<TreeSpec, FormatError> {
        match self.peek() {
            Some((_, Tok::Open)) => self.pos += 1,
            _ => return Err(self.err_here("expected '('")),
        }
        let label = match self.peek() {
            Some((_, Tok::Num(n))) => {
                self.pos += 1;
                n
            }
            _ => return Err(self.err_here("expected a label")),
        };
        let mut children = Vec::new();
        loop {
            match self.peek() {
                Some((_, Tok::Close)) => {
                    self.pos += 1;
                    return Ok(TreeSpec { label, children });
                }
                Some((_, Tok::Open)) => children.push(self.tree()?),
                _ => return Err(self.err_here("expected '(' or ')'")),
            }
        }
    }
}

/// Parses the s-expression forest format. When `k` is `None` it is inferred
/// as one past the largest label.
pub fn parse_forest(text: &str, k: Option<usize>) -> Result<LabeledForest, FormatError> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks: &toks, pos: 0, end: text.len() };
    let mut trees = vec![p.tree()?];
    while let Some((_, t)) = p.peek() {
        if t != Tok::Bar {
            return Err(p.err_here("expected '|' between trees"));
        }
        p.pos += 1;
        trees.push(p.tree()?);
    }

    fn max_label(t: &TreeSpec) -> Label {
        t.children.iter().map(max_label).max().map_or(t.label, |m| m.max(t.label))
    }
    let k = k.unwrap_or_else(|| 1 + trees.iter().map(max_label).max().unwrap());

    fn emit(
        t: &TreeSpec,
        parent: Option<NodeId>,
        par: &mut Vec<Option<NodeId>>,
        lab: &mut Vec<Label>,
    ) {
        let id = par.len();
        par.push(parent);
        lab.push(t.label);
        for c in &t.children {
            emit(c, Some(id), par, lab);
        }
    }
    let mut parent = Vec::new();
    let mut label = Vec::new();
    for t in &trees {
        emit(t, None, &mut parent, &mut label);
    }
    Ok(LabeledForest::new(k, parent, label)?)
}

/// Parses the poset file format. Element ids must be contiguous from 0.
pub fn parse_poset(text: &str) -> Result<LabeledPoset, FormatError> {
    let mut k: Option<usize> = None;
    let mut labels: Vec<Option<Label>> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let s = raw.trim();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = s.split_whitespace().collect();
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(rest) = compact.strip_prefix("k=") {
            if k.is_some() {
                return Err(FormatError::SyntaxLine { line, msg: "duplicate k header".into() });
            }
            let n: usize = rest
                .parse()
                .map_err(|_| FormatError::SyntaxLine { line, msg: "bad k value".into() })?;
            k = Some(n);
            continue;
        }
        if k.is_none() {
            return Err(FormatError::SyntaxLine { line, msg: "expected k=<n> header first".into() });
        }
        match fields.first().copied() {
            Some("elem") => {
                if fields.len() != 4 || fields[2] != "label" {
                    return Err(FormatError::SyntaxLine {
                        line,
                        msg: "expected: elem <id> label <l>".into(),
                    });
                }
                let id: usize = fields[1].parse().map_err(|_| FormatError::SyntaxLine {
                    line,
                    msg: "bad element id".into(),
                })?;
                let l: Label = fields[3].parse().map_err(|_| FormatError::SyntaxLine {
                    line,
                    msg: "bad label".into(),
                })?;
                if labels.len() <= id {
                    labels.resize(id + 1, None);
                }
                if labels[id].is_some() {
                    return Err(FormatError::SyntaxLine {
                        line,
                        msg: format!("element {id} declared twice"),
                    });
                }
                labels[id] = Some(l);
            }
            Some("order") => {
                if fields.len() != 4 || fields[2] != "<" {
                    return Err(FormatError::SyntaxLine {
                        line,
                        msg: "expected: order <a> < <b>".into(),
                    });
                }
                let a: usize = fields[1].parse().map_err(|_| FormatError::SyntaxLine {
                    line,
                    msg: "bad element id".into(),
                })?;
                let b: usize = fields[3].parse().map_err(|_| FormatError::SyntaxLine {
                    line,
                    msg: "bad element id".into(),
                })?;
                pairs.push((a, b));
            }
            _ => {
                return Err(FormatError::SyntaxLine {
                    line,
                    msg: format!("unrecognized line {s:?}"),
                })
            }
        }
    }
    let k = k.ok_or(FormatError::SyntaxLine { line: 1, msg: "missing k=<n> header".into() })?;
    let mut flat = Vec::with_capacity(labels.len());
    for (id, l) in labels.iter().enumerate() {
        match l {
            Some(l) => flat.push(*l),
            None => {
                return Err(FormatError::SyntaxLine {
                    line: 0,
                    msg: format!("element {id} has no label line"),
                })
            }
        }
    }
    for &(a, b) in &pairs {
        for e in [a, b] {
            if e >= flat.len() {
                return Err(FormatError::SyntaxLine {
                    line: 0,
                    msg: format!("order line references undeclared element {e}"),
                });
            }
        }
    }
    Ok(LabeledPoset::new(k, flat, &pairs)?)
}
