use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use posmon_core::classifier::{classify_known, ClassifyOptions, PropertyReport, Status};
use posmon_core::factor::{atoms, atoms_in_box, factorizations, lengths_of, probe_property, ProbeBound, ProbeResult, Property, DEFAULT_MAX_COUNT};
use posmon_core::gallery::{self, GalleryRun};
use posmon_core::instance::parse_instance;
use posmon_core::models::{bare_text, MonoidDescriptor, DEFAULT_DEPTH};
use posmon_core::witness::{self, CertificateFile};
use posmon_core::Error;

const OK: u8 = 0;
const REFUTED: u8 = 1;
const INCONSISTENT: u8 = 2;
const USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "posmon", version, about = "Atoms, factorizations and atomicity classes of positive monoids")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List the atoms inside the window.
    Atoms {
        instance: String,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
        /// Box radii for lex groups, e.g. `3,10`.
        #[arg(long = "box", value_delimiter = ',')]
        radii: Option<Vec<i64>>,
    },
    /// Enumerate the factorizations Z(b).
    Factorize {
        instance: String,
        element: String,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_COUNT)]
        max: usize,
    },
    /// The length set L(b).
    Lengths {
        instance: String,
        element: String,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
    },
    /// Theorem verdicts merged with bounded probes.
    Classify {
        /// Instance text or gallery id.
        instance: String,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
        /// Scalar probe bound.
        #[arg(long)]
        bound: Option<i64>,
        #[arg(long)]
        no_probes: bool,
    },
    /// Search for a counterexample to one property below a bound.
    Probe {
        instance: String,
        property: String,
        /// An integer, or comma-separated box radii for lex groups.
        #[arg(long)]
        bound: Option<String>,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
    },
    /// Ascending chain of principal ideals of M_q.
    Chain {
        instance: String,
        #[arg(long, default_value_t = 10)]
        depth: usize,
    },
    /// Hereditary break construction for M_q.
    Break {
        instance: String,
        #[arg(long, default_value_t = 5)]
        steps: usize,
        /// Candidate indices tried per step.
        #[arg(long, default_value_t = 10)]
        depth: usize,
    },
    /// Replay a certificate file.
    Verify { certificate: String },
    /// List the example gallery or run its recipes.
    Gallery {
        #[arg(long)]
        run_all: bool,
        /// Run a single entry.
        #[arg(long)]
        id: Option<String>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::SearchExhausted { .. } => INCONSISTENT,
                _ => USAGE,
            }
        }
    };
    ExitCode::from(code)
}

fn emit<T: Serialize>(json: bool, value: &T, text: impl FnOnce() -> String) {
    if json {
        println!("{}", serde_json::to_string_pretty(value).expect("serializable output"));
    } else {
        println!("{}", text());
    }
}

/// Instance text, or the descriptor of a gallery entry.
fn resolve(s: &str) -> posmon_core::Result<MonoidDescriptor> {
    match gallery::find_entry(s) {
        Some(e) => Ok(e.descriptor),
        None => parse_instance(s),
    }
}

fn names(xs: &[posmon_core::ordered::GroupElement]) -> String {
    xs.iter().map(bare_text).collect::<Vec<_>>().join(", ")
}

fn run(cli: &Cli) -> posmon_core::Result<u8> {
    let json = cli.json;
    match &cli.cmd {
        Cmd::Atoms { instance, depth, radii } => {
            let m = resolve(instance)?;
            let set = match radii {
                Some(r) => atoms_in_box(&m, *depth, r),
                None => atoms(&m, *depth),
            };
            emit(json, &set, || {
                let tag = if set.complete { "complete" } else { "window" };
                format!("Atoms({m}) [{tag}, depth {depth}] = {{{}}}", names(&set.atoms))
            });
            Ok(OK)
        }
        Cmd::Factorize { instance, element, depth, max } => {
            let m = resolve(instance)?;
            let b = m.parse_element(element)?;
            let fs = factorizations(&m, &b, *depth, *max)?;
            emit(json, &fs, || {
                let mut s = format!("Z({}) : {} factorizations{}", bare_text(&b), fs.factorizations.len(), if fs.complete { "" } else { " (window)" });
                for f in &fs.factorizations {
                    s.push_str(&format!("\n  {f}"));
                }
                s
            });
            Ok(OK)
        }
        Cmd::Lengths { instance, element, depth } => {
            let m = resolve(instance)?;
            let b = m.parse_element(element)?;
            let ls = lengths_of(&factorizations(&m, &b, *depth, DEFAULT_MAX_COUNT)?);
            emit(json, &ls, || {
                let l: Vec<String> = ls.lengths.iter().map(u64::to_string).collect();
                format!("L({}) = {{{}}}{}", bare_text(&b), l.join(", "), if ls.complete { "" } else { " (window)" })
            });
            Ok(OK)
        }
        Cmd::Classify { instance, depth, bound, no_probes } => {
            let m = resolve(instance)?;
            let opts = ClassifyOptions { depth: *depth, scalar_bound: *bound, lex_box: None, probes: !no_probes };
            let r = classify_known(&m, &opts)?;
            emit(json, &r, || report_text(&r));
            Ok(if r.is_sound() { OK } else { INCONSISTENT })
        }
        Cmd::Probe { instance, property, bound, depth } => {
            let m = resolve(instance)?;
            let p: Property = property.parse()?;
            let bound = match bound {
                None => posmon_core::factor::default_bound(&m, 30),
                Some(b) if b.contains(',') => ProbeBound::LexBox(
                    b.split(',').map(|x| x.trim().parse().map_err(|_| Error::Parse(format!("bound `{b}`")))).collect::<Result<_, _>>()?,
                ),
                Some(b) => ProbeBound::Scalar(b.trim().parse().map_err(|_| Error::Parse(format!("bound `{b}`")))?),
            };
            let res = probe_property(&m, p, &bound, *depth)?;
            emit(json, &res, || match &res {
                ProbeResult::Consistent { members_checked, .. } => format!("{p}: consistent over {members_checked} members"),
                ProbeResult::Refuted { element, factorizations } => {
                    let fs: Vec<String> = factorizations.iter().map(|f| f.to_string()).collect();
                    format!("{p}: refuted at {}\n  {}", bare_text(element), fs.join("\n  "))
                }
                ProbeResult::Inconclusive { element, reason } => format!("{p}: inconclusive at {}: {reason}", bare_text(element)),
            });
            if !res.is_refuted() {
                return Ok(OK);
            }
            // a refutation is expected unless a theorem proves the property
            let known = classify_known(&m, &ClassifyOptions { probes: false, ..Default::default() })?;
            Ok(if known.status(p) == Status::Proved { INCONSISTENT } else { REFUTED })
        }
        Cmd::Chain { instance, depth } => {
            let MonoidDescriptor::GeometricPuiseux { q } = resolve(instance)? else {
                return Err(Error::Unsupported("chains are built for mq:<q> instances".into()));
            };
            let c = witness::mq_chain(&q, *depth)?;
            c.verify()?;
            let file = CertificateFile::Chain(c.clone());
            emit(json, &file, || {
                let qs: Vec<String> = c.elements.iter().map(|x| x.to_string()).collect();
                format!("ascending chain in {}: q_n = q_(n+1) + a_(n+1)\n  {}\nreplay: ok", c.descriptor, qs.join(", "))
            });
            Ok(OK)
        }
        Cmd::Break { instance, steps, depth } => {
            let MonoidDescriptor::GeometricPuiseux { q } = resolve(instance)? else {
                return Err(Error::Unsupported("the break construction needs an mq:<q> instance".into()));
            };
            let c = witness::synthesize_break(&q, *steps, *depth)?;
            let file = CertificateFile::Break(c.clone());
            emit(json, &file, || {
                let mut s = format!("hereditary break for {} from q_0 = {}", c.descriptor, c.q0);
                for (i, st) in c.steps.iter().enumerate() {
                    s.push_str(&format!(
                        "\n  a'_{} = a_{} + a_{} = {}  ({} residues, divides s_{})",
                        i + 1,
                        st.left,
                        st.right,
                        st.a_prime,
                        st.exclusion.residues.len(),
                        st.divisibility.m
                    ));
                }
                s
            });
            Ok(OK)
        }
        Cmd::Verify { certificate } => {
            let text = fs::read_to_string(certificate).map_err(|e| Error::Parse(format!("{certificate}: {e}")))?;
            let file = CertificateFile::from_json(&text)?;
            let res = file.verify();
            let ok = res.is_ok();
            let out = serde_json::json!({ "kind": file.kind(), "valid": ok, "error": res.as_ref().err().map(|e| e.to_string()) });
            emit(json, &out, || match &res {
                Ok(()) => format!("{} certificate: valid", file.kind()),
                Err(e) => format!("{} certificate: INVALID ({e})", file.kind()),
            });
            Ok(if ok { OK } else { INCONSISTENT })
        }
        Cmd::Gallery { run_all, id, jobs } => {
            if let Some(id) = id {
                let e = gallery::find_entry(id).ok_or_else(|| Error::Parse(format!("no gallery entry `{id}`")))?;
                let run = GalleryRun { passed: false, entries: vec![gallery::run_entry(&e)] };
                let run = GalleryRun { passed: run.entries[0].passed, ..run };
                return Ok(gallery_out(json, &run));
            }
            if *run_all {
                return Ok(gallery_out(json, &gallery::run_all(*jobs)));
            }
            let list = gallery::gallery_list();
            emit(json, &list, || {
                list.iter().map(|e| format!("{:<24} {:<40} {}", e.id, e.instance, e.citation)).collect::<Vec<_>>().join("\n")
            });
            Ok(OK)
        }
    }
}

fn gallery_out(json: bool, run: &GalleryRun) -> u8 {
    emit(json, run, || {
        let mut lines = Vec::new();
        for e in &run.entries {
            lines.push(format!("{} {}  [{}]", if e.passed { "PASS" } else { "FAIL" }, e.id, e.instance));
            for c in e.checks.iter().filter(|c| !c.ok) {
                lines.push(format!("    failed {}: {}", c.name, c.detail));
            }
        }
        let n = run.entries.iter().filter(|e| e.passed).count();
        lines.push(format!("{n}/{} entries passed", run.entries.len()));
        lines.join("\n")
    });
    if run.passed {
        OK
    } else {
        INCONSISTENT
    }
}

fn report_text(r: &PropertyReport) -> String {
    let mut s = format!("{} ({})", r.instance, r.family);
    for (p, v) in &r.verdicts {
        let status = match v.status {
            Status::Proved => "proved",
            Status::Refuted => "refuted",
            Status::ProbeConsistent => "probe-consistent",
            Status::Unknown => "unknown",
        };
        s.push_str(&format!("\n  {:<5} {:<17} {}", p.name(), status, v.source));
        if let Some(b) = &v.bound {
            s.push_str(&format!(" [{b}]"));
        }
    }
    if let Some(a) = &r.atoms {
        s.push_str(&format!("\n  Atoms (window) = {{{}}}", names(a)));
    }
    for c in &r.conflicts {
        s.push_str(&format!("\n  CONFLICT {c}"));
    }
    s.push_str(&format!("\n  chain consistent: {}", r.chain_ok));
    s
}
