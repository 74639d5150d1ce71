//! Prefix-monotone word functions on finite sequences over ω, given as
//! deterministic state-machine tables. Input symbols are dispatched either
//! by the class {0, 1, ≥2}, by residue modulo a small m, echoed, or handled
//! uniformly; each transition appends a finite output burst. Outputs only
//! ever grow, so every table denotes a continuous function on Baire space.

use std::fmt::Write as _;
use thiserror::Error;

pub type Sym = u64;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum TransducerError {
    #[error("state id {state} out of range for {len} states")]
    StateOutOfRange { state: usize, len: usize },
    #[error("residue state must have at least one arm")]
    EmptyResidue,
    #[error("table syntax error on line {line}: {msg}")]
    Syntax { line: usize, msg: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arm {
    pub out: Vec<Sym>,
    pub next: usize,
}

impl Arm {
    pub fn new(out: Vec<Sym>, next: usize) -> Arm {
        Arm { out, next }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StateRule {
    /// Dispatch on the symbol class 0 / 1 / ≥2.
    Classes { zero: Arm, one: Arm, other: Arm },
    /// Dispatch on symbol % arms.len().
    Residue(Vec<Arm>),
    /// Copy the input symbol to the output.
    Echo { next: usize },
    /// The same transition for every symbol.
    Always(Arm),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transducer {
    pub initial: usize,
    pub initial_output: Vec<Sym>,
    pub states: Vec<StateRule>,
}

impl Transducer {
    pub fn validate(&self) -> Result<(), TransducerError> {
        let len = self.states.len();
        let check = |s: usize| {
            if s < len {
                Ok(())
            } else {
                Err(TransducerError::StateOutOfRange { state: s, len })
            }
        };
        check(self.initial)?;
        for st in &self.states {
            match st {
                StateRule::Classes { zero, one, other } => {
                    check(zero.next)?;
                    check(one.next)?;
                    check(other.next)?;
                }
                StateRule::Residue(arms) => {
                    if arms.is_empty() {
                        return Err(TransducerError::EmptyResidue);
                    }
                    for a in arms {
                        check(a.next)?;
                    }
                }
                StateRule::Echo { next } => check(*next)?,
                StateRule::Always(a) => check(a.next)?,
            }
        }
        Ok(())
    }

    /// The echoing transducer (the identity function on Baire space).
    pub fn identity() -> Transducer {
        Transducer {
            initial: 0,
            initial_output: Vec::new(),
            states: vec![StateRule::Echo { next: 0 }],
        }
    }

    pub fn runner(&self) -> Runner<'_> {
        Runner { t: self, state: self.initial, primed: false }
    }

    /// The full output on a finite input word (prefix-monotone in the word).
    pub fn run(&self, input: &[Sym]) -> Vec<Sym> {
        let mut out = self.initial_output.clone();
        let mut r = self.runner();
        r.primed = true;
        for &s in input {
            r.step(s, &mut out);
        }
        out
    }

    /// A total variant: every transition that would emit nothing emits a
    /// single 0 instead. Interpreted as π-names (where index 0 names the
    /// empty set) this preserves the non-zero output symbols exactly while
    /// guaranteeing unbounded output on every infinite input.
    pub fn totalize(&self) -> Transducer {
        let pad = |a: &Arm| {
            if a.out.is_empty() {
                Arm { out: vec![0], next: a.next }
            } else {
                a.clone()
            }
        };
        let states = self
            .states
            .iter()
            .map(|st| match st {
                StateRule::Classes { zero, one, other } => StateRule::Classes {
                    zero: pad(zero),
                    one: pad(one),
                    other: pad(other),
                },
                StateRule::Residue(arms) => StateRule::Residue(arms.iter().map(pad).collect()),
                StateRule::Echo { next } => StateRule::Echo { next: *next },
                StateRule::Always(a) => StateRule::Always(pad(a)),
            })
            .collect();
        Transducer { initial: self.initial, initial_output: self.initial_output.clone(), states }
    }

    /// Serializes as a deterministic state-machine table.
    pub fn to_table(&self) -> String {
        let mut out = String::from("transducer\n");
        let _ = writeln!(out, "initial {}", self.initial);
        let mut line = String::from("output");
        for s in &self.initial_output {
            let _ = write!(line, " {s}");
        }
        out.push_str(&line);
        out.push('\n');
        let fmt_arm = |sel: &str, a: &Arm| {
            let mut l = format!("  {sel} -> {}", a.next);
            if !a.out.is_empty() {
                l.push_str(" :");
                for s in &a.out {
                    let _ = write!(l, " {s}");
                }
            }
            l
        };
        for (i, st) in self.states.iter().enumerate() {
            match st {
                StateRule::Classes { zero, one, other } => {
                    let _ = writeln!(out, "state {i} classes");
                    let _ = writeln!(out, "{}", fmt_arm("zero", zero));
                    let _ = writeln!(out, "{}", fmt_arm("one", one));
                    let _ = writeln!(out, "{}", fmt_arm("other", other));
                }
                StateRule::Residue(arms) => {
                    let _ = writeln!(out, "state {i} residue {}", arms.len());
                    for (j, a) in arms.iter().enumerate() {
                        let _ = writeln!(out, "{}", fmt_arm(&j.to_string(), a));
                    }
                }
                StateRule::Echo { next } => {
                    let _ = writeln!(out, "state {i} echo {next}");
                }
                StateRule::Always(a) => {
                    let _ = writeln!(out, "state {i} always");
                    let _ = writeln!(out, "{}", fmt_arm("any", a));
                }
            }
        }
        out
    }

    pub fn parse_table(text: &str) -> Result<Transducer, TransducerError> {
        let err = |line: usize, msg: &str| TransducerError::Syntax { line, msg: msg.to_string() };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (ln, head) = lines.next().ok_or_else(|| err(1, "empty table"))?;
        if head != "transducer" {
            return Err(err(ln, "expected header line 'transducer'"));
        }
        let (ln, init) = lines.next().ok_or_else(|| err(ln, "missing 'initial' line"))?;
        let initial: usize = init
            .strip_prefix("initial ")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| err(ln, "expected: initial <id>"))?;
        let (ln, outl) = lines.next().ok_or_else(|| err(ln, "missing 'output' line"))?;
        if outl != "output" && !outl.starts_with("output ") {
            return Err(err(ln, "expected: output [symbols...]"));
        }
        let initial_output = parse_syms(outl.trim_start_matches("output").trim())
            .map_err(|m| err(ln, &m))?;

        let parse_arm = |line: usize, s: &str, want_sel: Option<&str>| -> Result<Arm, TransducerError> {
            let (sel, rest) = s
                .split_once("->")
                .ok_or_else(|| err(line, "expected: <sel> -> <next> [: symbols]"))?;
            if let Some(w) = want_sel {
                if sel.trim() != w {
                    return Err(err(line, &format!("expected arm selector {w:?}")));
                }
            }
            let (next_s, out_s) = match rest.split_once(':') {
                Some((n, o)) => (n, o),
                None => (rest, ""),
            };
            let next: usize =
                next_s.trim().parse().map_err(|_| err(line, "bad next-state id"))?;
            let out = parse_syms(out_s.trim()).map_err(|m| err(line, &m))?;
            Ok(Arm { out, next })
        };

        let mut rules: Vec<(usize, StateRule)> = Vec::new();
        let mut rest: Vec<(usize, &str)> = lines.collect();
        rest.reverse();
        while let Some((ln, l)) = rest.pop() {
            let fields: Vec<&str> = l.split_whitespace().collect();
            if fields.first() != Some(&"state") || fields.len() < 3 {
                return Err(err(ln, "expected: state <id> <kind>"));
            }
            let id: usize = fields[1].parse().map_err(|_| err(ln, "bad state id"))?;
            match fields[2] {
                "classes" => {
                    let mut arms = Vec::new();
                    for sel in ["zero", "one", "other"] {
                        let (aln, al) =
                            rest.pop().ok_or_else(|| err(ln, "truncated classes state"))?;
                        arms.push(parse_arm(aln, al, Some(sel))?);
                    }
                    let other = arms.pop().unwrap();
                    let one = arms.pop().unwrap();
                    let zero = arms.pop().unwrap();
                    rules.push((id, StateRule::Classes { zero, one, other }));
                }
                "residue" => {
                    let m: usize = fields
                        .get(3)
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| err(ln, "expected: state <id> residue <m>"))?;
                    let mut arms = Vec::new();
                    for j in 0..m {
                        let (aln, al) =
                            rest.pop().ok_or_else(|| err(ln, "truncated residue state"))?;
                        arms.push(parse_arm(aln, al, Some(&j.to_string()))?);
                    }
                    rules.push((id, StateRule::Residue(arms)));
                }
                "echo" => {
                    let next: usize = fields
                        .get(3)
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| err(ln, "expected: state <id> echo <next>"))?;
                    rules.push((id, StateRule::Echo { next }));
                }
                "always" => {
                    let (aln, al) = rest.pop().ok_or_else(|| err(ln, "truncated always state"))?;
                    rules.push((id, StateRule::Always(parse_arm(aln, al, Some("any"))?)));
                }
                kind => return Err(err(ln, &format!("unknown state kind {kind:?}"))),
            }
        }
        rules.sort_by_key(|(id, _)| *id);
        for (want, (got, _)) in rules.iter().enumerate() {
            if *got != want {
                return Err(err(0, &format!("state ids must be contiguous; missing {want}")));
            }
        }
        let t = Transducer {
            initial,
            initial_output,
            states: rules.into_iter().map(|(_, r)| r).collect(),
        };
        t.validate()?;
        Ok(t)
    }
}

fn parse_syms(s: &str) -> Result<Vec<Sym>, String> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split_whitespace()
        .map(|w| w.parse::<Sym>().map_err(|_| format!("bad symbol {w:?}")))
        .collect()
}

/// Streaming execution state of a transducer.
pub struct Runner<'a> {
    t: &'a Transducer,
    state: usize,
    primed: bool,
}

impl<'a> Runner<'a> {
    /// Appends to `out` everything newly emitted by consuming `sym`
    /// (including the initial burst before the first symbol).
    pub fn step(&mut self, sym: Sym, out: &mut Vec<Sym>) {
        if !self.primed {
            out.extend_from_slice(&self.t.initial_output);
            self.primed = true;
        }
        match &self.t.states[self.state] {
            StateRule::Classes { zero, one, other } => {
                let arm = match sym {
                    0 => zero,
                    1 => one,
                    _ => other,
                };
                out.extend_from_slice(&arm.out);
                self.state = arm.next;
            }
            StateRule::Residue(arms) => {
                let arm = &arms[(sym as usize) % arms.len()];
                out.extend_from_slice(&arm.out);
                self.state = arm.next;
            }
            StateRule::Echo { next } => {
                out.push(sym);
                self.state = *next;
            }
            StateRule::Always(arm) => {
                out.extend_from_slice(&arm.out);
                self.state = arm.next;
            }
        }
    }
}

/// Runs the transducer on a finite word.
pub fn run_transducer(t: &Transducer, input: &[Sym]) -> Vec<Sym> {
    t.run(input)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn stall_then_emit() -> Transducer {
        // emits 5 then 7 on the first two symbols, then nothing ever again
        Transducer {
            initial: 0,
            initial_output: vec![],
            states: vec![
                StateRule::Always(Arm::new(vec![5], 1)),
                StateRule::Always(Arm::new(vec![7], 2)),
                StateRule::Always(Arm::new(vec![], 2)),
            ],
        }
    }

    #[test]
    fn identity_echoes() {
        let t = Transducer::identity();
        assert_eq!(t.run(&[3, 1, 4, 1, 5]), vec![3, 1, 4, 1, 5]);
        assert_eq!(t.run(&[]), Vec::<Sym>::new());
    }

    #[test]
    fn empty_input_gives_initial_burst() {
        let mut t = Transducer::identity();
        t.initial_output = vec![9, 9];
        assert_eq!(t.run(&[]), vec![9, 9]);
    }

    #[test]
    fn prefix_monotone() {
        let t = stall_then_emit();
        let long = t.run(&[0, 0, 0, 0]);
        let short = t.run(&[0, 0]);
        assert_eq!(&long[..short.len()], &short[..]);
    }

    #[test]
    fn totalize_pads_with_zeros() {
        let t = stall_then_emit();
        let g = t.totalize();
        let out = g.run(&[1, 1, 1, 1, 1, 1]);
        assert_eq!(out.len(), 6);
        let nz: Vec<Sym> = out.iter().copied().filter(|&s| s != 0).collect();
        assert_eq!(nz, vec![5, 7]);
    }

    #[test]
    fn totalize_preserves_nonzero_sets() {
        let t = stall_then_emit();
        let g = t.totalize();
        let input = [4, 0, 9, 9];
        let nz = |v: Vec<Sym>| v.into_iter().filter(|&s| s != 0).collect::<BTreeSet<_>>();
        assert_eq!(nz(t.run(&input)), nz(g.run(&input)));
    }

    #[test]
    fn totalize_of_silent_is_zeros() {
        let t = Transducer {
            initial: 0,
            initial_output: vec![],
            states: vec![StateRule::Always(Arm::new(vec![], 0))],
        };
        let g = t.totalize();
        assert_eq!(g.run(&[7, 7, 7]), vec![0, 0, 0]);
    }

    #[test]
    fn table_roundtrip() {
        let t = Transducer {
            initial: 1,
            initial_output: vec![2, 0],
            states: vec![
                StateRule::Classes {
                    zero: Arm::new(vec![0], 0),
                    one: Arm::new(vec![], 1),
                    other: Arm::new(vec![1, 2], 2),
                },
                StateRule::Residue(vec![Arm::new(vec![3], 0), Arm::new(vec![], 2)]),
                StateRule::Echo { next: 1 },
            ],
        };
        let table = t.to_table();
        let back = Transducer::parse_table(&table).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.to_table(), table);
    }

    #[test]
    fn table_rejects_bad_state_ref() {
        let t = Transducer {
            initial: 0,
            initial_output: vec![],
            states: vec![StateRule::Echo { next: 3 }],
        };
        assert_eq!(
            t.validate().unwrap_err(),
            TransducerError::StateOutOfRange { state: 3, len: 1 }
        );
    }
}
