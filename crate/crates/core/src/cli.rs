//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 usage or input error.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::diagram::{diagram_from_format, Arm, DiagramType, Format, Vertex};
use crate::error::{Error, Result};
use crate::grading::{
    betti_multidegrees, betti_tally, coarse_resolution_string, dual_shift, BettiTable,
};
use crate::liealg::{build_irrep, graded_dims, weyl_dimension};
use crate::linkage::{link, rank_invariants, structure_maps};
use crate::resolution::{
    be_multipliers, build_resolution, check_complex, exchanged_sigma, plucker_coordinates,
    verify_minor_identities, ComplexJson, GradedComplex,
};
use crate::weight::Weight;
use crate::weyl::{enumerate_double_cosets, WeylWord};

#[derive(Parser, Debug)]
#[command(
    name = "schubres",
    version,
    about = "Resolutions attached to Weyl group double cosets of T-shaped diagrams"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct SigmaArgs {
    /// Format `f0,f1,f2,f3`.
    #[arg(long)]
    pub format: Format,
    /// Reduced word, e.g. "z1 u x1", or Bourbaki indices with --labels.
    #[arg(long, default_value = "e")]
    pub sigma: String,
    /// Index aliases for --sigma, e.g. `bourbaki:z2,x1,z1,u,y1,y2`.
    #[arg(long)]
    pub labels: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    #[arg(long, conflicts_with = "text")]
    pub json: bool,
    #[arg(long)]
    pub text: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify the diagram of a format.
    Diagram {
        #[arg(long)]
        format: Format,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Minimal double coset representatives.
    Cosets {
        #[arg(long)]
        format: Format,
        #[arg(long, default_value_t = 64)]
        max_length: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Multigraded Betti numbers.
    Betti {
        #[command(flatten)]
        sigma: SigmaArgs,
        /// Dual of the construction for σ⁻¹ on the x/z exchanged diagram,
        /// expressed in the original labels.
        #[arg(long)]
        exchange: bool,
        /// Vertex for the coarse grading.
        #[arg(long, default_value = "x1")]
        coarse: Vertex,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Build the complex and write it as JSON.
    Resolve {
        #[command(flatten)]
        sigma: SigmaArgs,
        #[arg(long)]
        exchange: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify a complex: d² = 0, homogeneity, ranks at random points.
    Check {
        complex: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Plücker coordinates, optionally with the witness minor identities.
    Pluecker {
        #[command(flatten)]
        sigma: SigmaArgs,
        #[arg(long)]
        witness: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Buchsbaum–Eisenbud multipliers.
    Bemult {
        complex: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// First-order structure maps w31, w21.
    Hsm {
        complex: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Link by three entries of d1.
    Link {
        complex: PathBuf,
        #[arg(long, value_delimiter = ',', default_values_t = [0usize, 1, 2])]
        cols: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rank invariants of the structure maps at the origin.
    Invariants {
        complex: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Graded dimensions of the Lie algebra and fundamental representations.
    Dims {
        #[arg(long)]
        format: Format,
        /// Grading vertex.
        #[arg(long, default_value = "z1")]
        by: Vertex,
        /// Also build L(ω_v) for these vertices.
        #[arg(long, value_delimiter = ',')]
        fundamental: Vec<Vertex>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

/// Verification outcome of a command that ran to completion.
enum Outcome {
    Pass,
    Fail,
}

/// Resolve `--sigma` with an optional `bourbaki:<v1>,<v2>,...` alias map.
pub fn parse_sigma(sigma: &str, labels: Option<&str>) -> Result<WeylWord> {
    let Some(labels) = labels else {
        return sigma.parse();
    };
    let map = labels
        .strip_prefix("bourbaki:")
        .ok_or_else(|| Error::Parse(format!("labels `{labels}`")))?;
    let names: Vec<Vertex> = map
        .split(',')
        .map(|s| s.trim().parse())
        .collect::<Result<_>>()?;
    let t = sigma.trim();
    if t.is_empty() || t == "e" {
        return Ok(WeylWord::identity());
    }
    let letters = t
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .map(|tok| {
            let n: usize = tok
                .trim_start_matches('s')
                .parse()
                .map_err(|_| Error::Parse(format!("index `{tok}`")))?;
            n.checked_sub(1)
                .and_then(|k| names.get(k).copied())
                .ok_or_else(|| Error::Parse(format!("index `{tok}`")))
        })
        .collect::<Result<_>>()?;
    Ok(WeylWord::new(letters))
}

fn sigma_of(a: &SigmaArgs) -> Result<WeylWord> {
    parse_sigma(&a.sigma, a.labels.as_deref())
}

fn read_complex(p: &Path) -> Result<(GradedComplex, String)> {
    let s = std::fs::read_to_string(p)?;
    let j: ComplexJson = serde_json::from_str(&s)?;
    Ok((GradedComplex::from_json(&j)?, s))
}

fn complex_string(c: &GradedComplex) -> Result<String> {
    Ok(serde_json::to_string_pretty(&c.to_json())? + "\n")
}

fn emit(out: &mut dyn Write, path: Option<&Path>, s: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, s)?,
        None => out.write_all(s.as_bytes())?,
    }
    Ok(())
}

fn exchanged_table(format: Format, sigma: &WeylWord) -> Result<BettiTable> {
    let t = dual_shift(&betti_multidegrees(
        format.exchanged(),
        &exchanged_sigma(sigma),
    )?);
    let coords: Vec<Vertex> = t.coords.iter().map(|v| v.exchange_xz()).collect();
    let order = diagram_from_format(format).vertices().to_vec();
    let relabelled = BettiTable {
        coords,
        modules: t.modules,
    };
    Ok(BettiTable {
        modules: relabelled.reorder(&order)?,
        coords: order,
    })
}

fn show_table(t: &BettiTable, coarse: Vertex, order: Option<&[Vertex]>) -> Result<String> {
    let t = match order {
        Some(o) => BettiTable {
            modules: t.reorder(o)?,
            coords: o.to_vec(),
        },
        None => t.clone(),
    };
    let mut s = String::new();
    let names: Vec<String> = t.coords.iter().map(Vertex::to_string).collect();
    writeln!(s, "coordinates ({})", names.join(",")).unwrap();
    for (i, m) in t.modules.iter().enumerate().rev() {
        let gens: Vec<String> = m
            .iter()
            .map(|d| {
                format!(
                    "R(({}))",
                    d.iter()
                        .map(|x| (-x).to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                )
            })
            .collect();
        writeln!(s, "F{i}: {}", gens.join(" ")).unwrap();
    }
    writeln!(s, "{}", coarse_resolution_string(&t, coarse)?).unwrap();
    s.push_str(&betti_tally(&t, coarse)?);
    Ok(s)
}

fn bourbaki_order(labels: Option<&str>) -> Result<Option<Vec<Vertex>>> {
    labels
        .map(|l| {
            let map = l
                .strip_prefix("bourbaki:")
                .ok_or_else(|| Error::Parse(format!("labels `{l}`")))?;
            map.split(',')
                .map(|s| s.trim().parse())
                .collect::<Result<Vec<Vertex>>>()
        })
        .transpose()
}

fn json_line(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json value") + "\n"
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<Outcome> {
    match cmd {
        Command::Diagram { format, output } => {
            let d = diagram_from_format(format);
            let kind = d.classify();
            let (p, q, r) = d.params();
            let hint = match kind {
                DiagramType::Finite => None,
                _ => Some(format!(
                    "not of finite type; enlarge an arm (e.g. {}) to work in a nondegenerate Cartan matrix",
                    d.enlarge(Arm::Y, 1)
                )),
            };
            if output.json {
                let v = json!({ "format": format, "diagram": d, "type": kind.to_string(),
                    "name": d.type_name(), "determinant": d.cartan_determinant(), "hint": hint });
                emit(out, None, &json_line(&v))?;
            } else {
                writeln!(out, "T_{{{p},{q},{r}}}, {kind}")?;
                writeln!(out, "{}", d.type_name())?;
                let vs: Vec<String> = d.vertices().iter().map(Vertex::to_string).collect();
                writeln!(out, "vertices: {}", vs.join(" "))?;
                if let Some(h) = hint {
                    writeln!(out, "{h}")?;
                }
            }
        }
        Command::Cosets {
            format,
            max_length,
            output,
        } => {
            let d = diagram_from_format(format);
            let reps = enumerate_double_cosets(&d, max_length)?;
            if output.json {
                let v: Vec<_> = reps
                    .iter()
                    .map(|w| json!({ "sigma": w, "length": w.letters().len() }))
                    .collect();
                emit(out, None, &json_line(&json!(v)))?;
            } else {
                writeln!(out, "{} representatives", reps.len())?;
                for w in &reps {
                    writeln!(out, "{:>3}  {w}", w.letters().len())?;
                }
            }
        }
        Command::Betti {
            sigma,
            exchange,
            coarse,
            output,
        } => {
            let w = sigma_of(&sigma)?;
            let t = if exchange {
                exchanged_table(sigma.format, &w)?
            } else {
                betti_multidegrees(sigma.format, &w)?
            };
            let order = bourbaki_order(sigma.labels.as_deref())?;
            if output.json {
                let t = match &order {
                    Some(o) => BettiTable {
                        modules: t.reorder(o)?,
                        coords: o.clone(),
                    },
                    None => t,
                };
                emit(out, None, &json_line(&t.to_json(Some(coarse))?))?;
            } else if output.text {
                writeln!(out, "{}", coarse_resolution_string(&t, coarse)?)?;
            } else {
                out.write_all(show_table(&t, coarse, order.as_deref())?.as_bytes())?;
            }
        }
        Command::Resolve {
            sigma,
            exchange,
            out: path,
        } => {
            let w = sigma_of(&sigma)?;
            let c = if exchange {
                build_resolution(sigma.format.exchanged(), &exchanged_sigma(&w))?
            } else {
                build_resolution(sigma.format, &w)?
            };
            emit(out, path.as_deref(), &complex_string(&c)?)?;
        }
        Command::Check {
            complex,
            seed,
            output,
        } => {
            let (c, raw) = read_complex(&complex)?;
            let report = check_complex(&c, seed);
            let roundtrip = complex_string(&c)? == raw;
            if output.json {
                let mut v = serde_json::to_value(&report)?;
                v["roundtrip"] = json!(roundtrip);
                v["passed"] = json!(report.passed());
                emit(out, None, &json_line(&v))?;
            } else {
                writeln!(out, "d1·d2 = 0: {}", report.d1d2_zero)?;
                writeln!(out, "d2·d3 = 0: {}", report.d2d3_zero)?;
                writeln!(out, "inhomogeneous entries: {}", report.inhomogeneous.len())?;
                writeln!(
                    out,
                    "expected ranks {:?}, sampled {:?}",
                    report.expected_ranks, report.sampled_ranks
                )?;
                writeln!(out, "re-serialization identical: {roundtrip}")?;
                writeln!(out, "{}", if report.passed() { "PASS" } else { "FAIL" })?;
            }
            return Ok(if report.passed() {
                Outcome::Pass
            } else {
                Outcome::Fail
            });
        }
        Command::Pluecker {
            sigma,
            witness,
            output,
        } => {
            let w = sigma_of(&sigma)?;
            let d = diagram_from_format(sigma.format);
            let coords = plucker_coordinates(sigma.format, &w)?;
            let ring = crate::resolution::GenericY::new(&d, &w)?.ring(&d);
            let names = ring.names();
            let report = if witness {
                Some(verify_minor_identities(sigma.format, &w)?)
            } else {
                None
            };
            if output.json {
                let ps: Vec<_> = coords
                    .iter()
                    .map(|p| json!({ "weight": p.weight, "value": p.value.fmt_with(&names) }))
                    .collect();
                let mut v = json!({ "pluecker": ps });
                if let Some(r) = &report {
                    let row = |x: &crate::resolution::WitnessResult| json!({ "weight": x.weight, "exponent": x.exponent, "unit": x.unit.as_ref().map(|u| u.to_string()) });
                    v["witness_d2"] = json!(r.d2.iter().map(row).collect::<Vec<_>>());
                    v["witness_d3"] = json!(r.d3.iter().map(row).collect::<Vec<_>>());
                    v["passed"] = json!(r.passed());
                }
                emit(out, None, &json_line(&v))?;
            } else {
                for p in &coords {
                    writeln!(out, "{:?}  {}", p.weight, p.value.fmt_with(&names))?;
                }
                if let Some(r) = &report {
                    for (label, rows) in [("d2", &r.d2), ("d3", &r.d3)] {
                        for x in rows {
                            let u = x
                                .unit
                                .as_ref()
                                .map_or("FAIL".to_string(), |u| format!("unit {u}"));
                            writeln!(
                                out,
                                "witness {label} {:?}: minor = p^{} · {u}",
                                x.weight, x.exponent
                            )?;
                        }
                    }
                }
            }
            if let Some(r) = report {
                return Ok(if r.passed() {
                    Outcome::Pass
                } else {
                    Outcome::Fail
                });
            }
        }
        Command::Bemult { complex, output } => {
            let (c, _) = read_complex(&complex)?;
            let be = be_multipliers(&c)?;
            let names = c.ring.names();
            let unique = be.nullities.iter().all(|&n| n == 0);
            if output.json {
                let list = |v: &[(Vec<usize>, crate::poly::MultiPoly)]| {
                    v.iter()
                        .map(|(k, p)| json!({ "index": k, "value": p.fmt_with(&names) }))
                        .collect::<Vec<_>>()
                };
                let v = json!({ "a3": list(&be.a3), "a2": list(&be.a2), "a1": be.a1.fmt_with(&names), "unique": unique });
                emit(out, None, &json_line(&v))?;
            } else {
                writeln!(out, "a1 = {}", be.a1.fmt_with(&names))?;
                for (k, p) in &be.a2 {
                    writeln!(out, "a2{k:?} = {}", p.fmt_with(&names))?;
                }
                for (k, p) in &be.a3 {
                    writeln!(out, "a3{k:?} = {}", p.fmt_with(&names))?;
                }
                writeln!(out, "unique: {unique}")?;
            }
            return Ok(if unique { Outcome::Pass } else { Outcome::Fail });
        }
        Command::Hsm { complex, output } => {
            let (c, _) = read_complex(&complex)?;
            let m = structure_maps(&c)?;
            if output.json {
                let v = json!({ "pairs": m.pairs, "w31": m.w31.to_json(&c.ring), "w21": m.w21.to_json(&c.ring), "nullity": m.nullity });
                emit(out, None, &json_line(&v))?;
            } else {
                let names = c.ring.names();
                writeln!(out, "w31 (columns e_a∧e_b):")?;
                for (k, &(a, b)) in m.pairs.iter().enumerate() {
                    let col: Vec<String> =
                        m.w31.column(k).iter().map(|p| p.fmt_with(&names)).collect();
                    writeln!(out, "  ({a},{b}) -> [{}]", col.join(", "))?;
                }
                writeln!(out, "w21 (columns e_a⊗f_j):")?;
                let f2 = c.ranks[2];
                for k in 0..m.w21.cols {
                    let col: Vec<String> =
                        m.w21.column(k).iter().map(|p| p.fmt_with(&names)).collect();
                    writeln!(
                        out,
                        "  ({},{}) -> [{}]",
                        k / f2.max(1),
                        k % f2.max(1),
                        col.join(", ")
                    )?;
                }
                writeln!(
                    out,
                    "defining equations replayed; solution nullity {}",
                    m.nullity
                )?;
            }
        }
        Command::Link {
            complex,
            cols,
            seed,
            out: path,
        } => {
            let (c, _) = read_complex(&complex)?;
            let cols: [usize; 3] = cols
                .try_into()
                .map_err(|_| Error::Parse("--cols needs three indices".into()))?;
            let l = link(&c, cols, seed)?;
            eprintln!(
                "linked format {:?}; evidence {:?}",
                l.complex.ranks, l.evidence
            );
            emit(out, path.as_deref(), &complex_string(&l.complex)?)?;
        }
        Command::Invariants { complex, output } => {
            let (c, _) = read_complex(&complex)?;
            let m = structure_maps(&c)?;
            let r = rank_invariants(&c, &m);
            if output.json {
                emit(out, None, &json_line(&serde_json::to_value(&r)?))?;
            } else {
                writeln!(out, "f3 - rank(w3 ⊗ k) = {}", r.type_deficit)?;
                writeln!(out, "f1 - 3 - rank(w2 ⊗ k) = {}", r.deviation_deficit)?;
                writeln!(
                    out,
                    "(ranks {} and {} from the degree 0 and 1 components only)",
                    r.rank_w3, r.rank_w2
                )?;
            }
        }
        Command::Dims {
            format,
            by,
            fundamental,
            output,
        } => {
            let d = diagram_from_format(format);
            let dims = graded_dims(&d, by)?;
            let mut reps = Vec::new();
            for v in fundamental {
                let w = Weight::unit(v);
                let rep = build_irrep(&d, &w)?;
                reps.push((v, rep.dim(), weyl_dimension(&d, &w)?));
            }
            if output.json {
                let rs: Vec<_> = reps
                    .iter()
                    .map(|(v, n, w)| json!({ "vertex": v, "dim": n, "weyl": w.to_string() }))
                    .collect();
                emit(
                    out,
                    None,
                    &json_line(
                        &json!({ "graded": dims, "total": dims.iter().map(|x| x.1).sum::<usize>(), "fundamental": rs }),
                    ),
                )?;
            } else {
                let parts: Vec<String> = dims.iter().map(|(k, n)| format!("{k}:{n}")).collect();
                writeln!(
                    out,
                    "graded by {by}: {} (total {})",
                    parts.join(" "),
                    dims.iter().map(|x| x.1).sum::<usize>()
                )?;
                for (v, n, w) in &reps {
                    writeln!(out, "dim L(ω_{v}) = {n} (Weyl formula {w})")?;
                }
            }
            let bad = reps
                .iter()
                .any(|(_, n, w)| num_bigint::BigInt::from(*n) != *w);
            return Ok(if bad { Outcome::Fail } else { Outcome::Pass });
        }
    }
    Ok(Outcome::Pass)
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::IdentityFailure(_) | Error::NoSolution | Error::RegularSequenceSuspect(_) => 1,
        _ => 2,
    }
}

fn init_threads() {
    if let Some(n) = std::env::var("THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
    {
        // Ignore the error when a pool already exists (repeated calls in tests).
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}

/// Parse `args` (including the program name) and run, writing to `out`.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    init_threads();
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(Outcome::Pass) => 0,
        Ok(Outcome::Fail) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn main_exit() -> i32 {
    run(std::env::args_os(), &mut std::io::stdout().lock())
}
