//! Command-line front end: parsing, dispatch, and report/diagram output.
//!
//! Exit-code contract: decision verbs exit 0 for "yes", 1 for "no", and 2
//! on usage or parse errors; every output ends with a newline. Identical
//! invocations produce byte-identical output.

use crate::fmt::{parse_forest, parse_poset};
use crate::forest::{canonical_form, leq_h_witness, minimize, LabeledForest};
use crate::hierarchy::{diff_op, parse_family_file, uniformize_sigma02, ProductUniverse};
use crate::lattice::{
    automorphic, er_reduce, lattice_l, lattice_lstar, principal_ideal, smain_check, DegreeLattice,
};
use crate::partition::{exact_value, xi_eval, Determination};
use crate::realizer::synthesize_realizer;
use crate::transducer::{Sym, Transducer};
use clap::{Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use std::path::{Path, PathBuf};

#[derive(Parser, Debug)]
#[command(name = "hforest", version, about = "Forest degrees of k-partitions of Baire space")]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Cmd,
    /// Emit structured JSON mirroring the textual report
    #[arg(long, global = true)]
    pub json: bool,
    /// Label count; inferred as 1 + max label when omitted
    #[arg(long, global = true)]
    pub k: Option<usize>,
    /// Seed for randomized spot checks
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Canonical form of a forest
    Canon { forest: String },
    /// Minimal h-equivalent forest
    Min { forest: String },
    /// Decide G ≤_h F
    Leq { g: String, f: String },
    /// All degrees below a forest's degree
    Ideal { forest: String },
    /// L*(A) of a poset file (or L(A) with --onto)
    Lattice {
        poset: PathBuf,
        /// The segment of representations onto the whole family
        #[arg(long)]
        onto: bool,
    },
    /// Poset isomorphism vs. lattice isomorphism report for two poset files
    Iso { a: PathBuf, b: PathBuf },
    /// Label permutation making two forests h-equivalent
    Automorphic { x: String, y: String },
    /// Reducibility of the induced equivalence relations
    ErReduce { mu: String, nu: String },
    /// Evaluate a forest partition on a finite prefix
    Eval { forest: String, word: Vec<Sym> },
    /// Exact value on the eventually-zero extension of a prefix
    Exact { forest: String, word: Vec<Sym> },
    /// Synthesize a realizer witnessing G ≤_h F and spot-check it
    Realize {
        g: String,
        f: String,
        /// Number of random inputs checked
        #[arg(long, default_value_t = 100)]
        checks: usize,
    },
    /// Totalize a transducer table
    Totalize { table: PathBuf },
    /// Difference operator applied to a named family
    Dh { file: PathBuf, family: String },
    /// Uniformize a Σ⁰₂ presentation over a product universe
    Uniformize {
        file: PathBuf,
        /// Family of B-sets over the product universe
        #[arg(long)]
        b: String,
        /// Family of C-sets over the product universe
        #[arg(long)]
        c: String,
        /// Number of rows N of the product [0,N) × X
        #[arg(long)]
        rows: usize,
    },
    /// DOT Hasse diagram of a degree lattice
    Dot {
        #[command(subcommand)]
        src: DotSrc,
    },
}

#[derive(Subcommand, Debug)]
pub enum DotSrc {
    /// Principal ideal of a forest
    Ideal { forest: String },
    /// L*(A) (or L(A) with --onto) of a poset file
    Lattice {
        poset: PathBuf,
        #[arg(long)]
        onto: bool,
    },
}

const EXIT_YES: i32 = 0;
const EXIT_NO: i32 = 1;
const EXIT_ERR: i32 = 2;

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Out = Result<(i32, String), Failure>;

/// Executes a parsed command; returns the exit status and the full output.
pub fn dispatch(cli: &Cli) -> (i32, String) {
    match run(cli) {
        Ok(pair) => pair,
        Err(Failure(msg)) => (EXIT_ERR, format!("error: {msg}\n")),
    }
}

fn run(cli: &Cli) -> Out {
    match &cli.cmd {
        Cmd::Canon { forest } => {
            let f = parse_forest(forest, cli.k)?;
            let c = canonical_form(&f);
            if cli.json {
                Ok((EXIT_YES, format!("{}\n", json!({ "canonical": c }))))
            } else {
                Ok((EXIT_YES, format!("{c}\n")))
            }
        }
        Cmd::Min { forest } => {
            let f = parse_forest(forest, cli.k)?;
            let m = canonical_form(&minimize(&f));
            if cli.json {
                Ok((EXIT_YES, format!("{}\n", json!({ "minimal": m }))))
            } else {
                Ok((EXIT_YES, format!("{m}\n")))
            }
        }
        Cmd::Leq { g, f } => {
            let (g, f) = parse_pair(g, f, cli.k)?;
            let witness = leq_h_witness(&g, &f)?;
            if cli.json {
                let j = json!({
                    "leq": witness.is_some(),
                    "witness": witness.as_ref().map(|w| w.map().to_vec()),
                });
                Ok((exit_of(witness.is_some()), format!("{j}\n")))
            } else {
                match witness {
                    Some(w) => Ok((EXIT_YES, format!("yes\nwitness: {}\n", render_map(w.map())))),
                    None => Ok((EXIT_NO, "no\n".to_string())),
                }
            }
        }
        Cmd::Ideal { forest } => {
            let f = parse_forest(forest, cli.k)?;
            let l = principal_ideal(&f)?;
            Ok((EXIT_YES, render_lattice(&l, "ideal", cli.json)))
        }
        Cmd::Lattice { poset, onto } => {
            let p = parse_poset(&read(poset)?)?;
            let (l, kind) = if *onto {
                (lattice_l(&p)?, "L")
            } else {
                (lattice_lstar(&p)?, "L*")
            };
            Ok((EXIT_YES, render_lattice(&l, kind, cli.json)))
        }
        Cmd::Iso { a, b } => {
            let pa = parse_poset(&read(a)?)?;
            let pb = parse_poset(&read(b)?)?;
            let report = smain_check(&pa, &pb)?;
            let yes = report.poset_iso.is_some();
            if cli.json {
                let j = json!({
                    "poset_a_size": report.poset_a_size,
                    "poset_b_size": report.poset_b_size,
                    "poset_iso": report.poset_iso.is_some(),
                    "poset_witness": report.poset_iso,
                    "lstar_a_size": report.lstar_a_size,
                    "lstar_b_size": report.lstar_b_size,
                    "lattice_iso": report.lattice_iso.is_some(),
                    "lattice_witness": report.lattice_iso.as_ref().map(|w| w.map().to_vec()),
                    "agreement": "ok",
                });
                Ok((exit_of(yes), format!("{j}\n")))
            } else {
                Ok((exit_of(yes), report.render()))
            }
        }
        Cmd::Automorphic { x, y } => {
            let (x, y) = parse_pair(x, y, cli.k)?;
            let perm = automorphic(&x, &y)?;
            if cli.json {
                let j = json!({ "automorphic": perm.is_some(), "permutation": perm });
                Ok((exit_of(perm.is_some()), format!("{j}\n")))
            } else {
                match perm {
                    Some(p) => {
                        let ps: Vec<String> = p.iter().map(|v| v.to_string()).collect();
                        Ok((EXIT_YES, format!("yes\npermutation: {}\n", ps.join(" "))))
                    }
                    None => Ok((EXIT_NO, "no\n".to_string())),
                }
            }
        }
        Cmd::ErReduce { mu, nu } => {
            let (mu, nu) = parse_pair(mu, nu, cli.k)?;
            let yes = er_reduce(&mu, &nu)?;
            if cli.json {
                Ok((exit_of(yes), format!("{}\n", json!({ "reducible": yes }))))
            } else {
                Ok((exit_of(yes), format!("{}\n", if yes { "yes" } else { "no" })))
            }
        }
        Cmd::Eval { forest, word } => {
            let f = parse_forest(forest, cli.k)?;
            let d = xi_eval(&f, word);
            if cli.json {
                let j = match &d {
                    Determination::Determined(l) => json!({ "determined": l }),
                    Determination::Possible(s) => {
                        json!({ "possible": s.iter().collect::<Vec<_>>() })
                    }
                };
                Ok((EXIT_YES, format!("{j}\n")))
            } else {
                Ok((EXIT_YES, format!("{d}\n")))
            }
        }
        Cmd::Exact { forest, word } => {
            let f = parse_forest(forest, cli.k)?;
            let v = exact_value(&f, word);
            if cli.json {
                Ok((EXIT_YES, format!("{}\n", json!({ "value": v }))))
            } else {
                Ok((EXIT_YES, format!("{v}\n")))
            }
        }
        Cmd::Realize { g, f, checks } => {
            let (g, f) = parse_pair(g, f, cli.k)?;
            let witness = match leq_h_witness(&g, &f)? {
                Some(w) => w,
                None => return Ok((EXIT_NO, "no\n".to_string())),
            };
            let t = synthesize_realizer(&g, &f, &witness)?;
            spot_check(&g, &f, &t, *checks, cli.seed)?;
            if cli.json {
                let j = json!({
                    "leq": true,
                    "table": t.to_table(),
                    "checks": checks,
                    "seed": cli.seed,
                });
                Ok((EXIT_YES, format!("{j}\n")))
            } else {
                Ok((
                    EXIT_YES,
                    format!("{}# spot-check: ok ({} inputs, seed {})\n", t.to_table(), checks, cli.seed),
                ))
            }
        }
        Cmd::Totalize { table } => {
            let t = Transducer::parse_table(&read(table)?)?;
            let g = t.totalize();
            if cli.json {
                Ok((EXIT_YES, format!("{}\n", json!({ "table": g.to_table() }))))
            } else {
                Ok((EXIT_YES, g.to_table()))
            }
        }
        Cmd::Dh { file, family } => {
            let ff = parse_family_file(&read(file)?)?;
            let sets = ff.family_sets(family)?;
            let d = diff_op(ff.universe, &sets)?;
            if cli.json {
                let j = json!({ "set": d.iter().collect::<Vec<_>>() });
                Ok((EXIT_YES, format!("{j}\n")))
            } else {
                Ok((EXIT_YES, format!("{d}\n")))
            }
        }
        Cmd::Uniformize { file, b, c, rows } => {
            let ff = parse_family_file(&read(file)?)?;
            let b_sets = ff.family_sets(b)?;
            let c_sets = ff.family_sets(c)?;
            let size = ff.universe.size();
            if *rows == 0 || size % rows != 0 {
                return Err(Failure(format!(
                    "universe size {size} is not divisible into {rows} rows"
                )));
            }
            let pu = ProductUniverse::new(*rows, size / rows)?;
            let d = uniformize_sigma02(pu, &b_sets, &c_sets)?;
            let pairs: Vec<(usize, usize)> =
                d.iter().map(|i| (i / pu.cols(), i % pu.cols())).collect();
            if cli.json {
                Ok((EXIT_YES, format!("{}\n", json!({ "pairs": pairs }))))
            } else {
                let items: Vec<String> =
                    pairs.iter().map(|(n, x)| format!("({n},{x})")).collect();
                Ok((EXIT_YES, format!("{{{}}}\n", items.join(","))))
            }
        }
        Cmd::Dot { src } => {
            let l = match src {
                DotSrc::Ideal { forest } => principal_ideal(&parse_forest(forest, cli.k)?)?,
                DotSrc::Lattice { poset, onto } => {
                    let p = parse_poset(&read(poset)?)?;
                    if *onto {
                        lattice_l(&p)?
                    } else {
                        lattice_lstar(&p)?
                    }
                }
            };
            Ok((EXIT_YES, l.to_dot()))
        }
    }
}

fn exit_of(yes: bool) -> i32 {
    if yes {
        EXIT_YES
    } else {
        EXIT_NO
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn parse_pair(
    a: &str,
    b: &str,
    k: Option<usize>,
) -> Result<(LabeledForest, LabeledForest), Failure> {
    // without an explicit --k, infer one shared count so the pair is comparable
    match k {
        Some(_) => Ok((parse_forest(a, k)?, parse_forest(b, k)?)),
        None => {
            let fa = parse_forest(a, None)?;
            let fb = parse_forest(b, None)?;
            let k = fa.k().max(fb.k());
            Ok((parse_forest(a, Some(k))?, parse_forest(b, Some(k))?))
        }
    }
}

fn render_map(map: &[usize]) -> String {
    map.iter()
        .enumerate()
        .map(|(i, j)| format!("{i}->{j}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn render_lattice(l: &DegreeLattice, kind: &str, as_json: bool) -> String {
    let elements: Vec<String> = (0..l.len()).map(|i| l.caption(i).to_string()).collect();
    if as_json {
        format!("{}\n", json!({ "kind": kind, "size": l.len(), "elements": elements }))
    } else {
        let mut out = format!("kind: {kind}\nsize: {}\n", l.len());
        for e in &elements {
            out.push_str(e);
            out.push('\n');
        }
        out
    }
}

fn spot_check(
    g: &LabeledForest,
    f: &LabeledForest,
    t: &Transducer,
    checks: usize,
    seed: u64,
) -> Result<(), Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..checks {
        let len = rng.gen_range(0..12);
        let mut input: Vec<Sym> = (0..len)
            .map(|_| if rng.gen_bool(0.5) { 0 } else { rng.gen_range(0..6) })
            .collect();
        input.extend_from_slice(&[0, 0, 0]);
        let got = exact_value(f, &t.run(&input));
        let want = exact_value(g, &input);
        if got != want {
            return Err(Failure(format!(
                "realizer disagrees on input {input:?}: {got} vs {want}"
            )));
        }
    }
    Ok(())
}
