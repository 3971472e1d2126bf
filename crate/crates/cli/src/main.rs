//! `arrfree`: invariants and freeness certificates for multiarrangements.

mod sweep;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use arrfree_core::arrangement::Multiarrangement;
use arrfree_core::betti::{b2_away_from, b2_away_local_sum, b2_multi};
use arrfree_core::certify::{certify, reverify, Certificate, CertifyOptions, ProofNode, Step, DISPATCH_ORDER};
use arrfree_core::error::Error;
use arrfree_core::logder::derivation_space;
use arrfree_core::oracle::{default_degree_cap, graded_dimensions, hilbert_freeness_test, HilbertOutcome, MAX_DEGREE_CAP};

#[derive(Parser)]
#[command(name = "arrfree", version, about = "Freeness certificates for hyperplane multiarrangements")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the flats of the intersection lattice.
    Lattice {
        file: PathBuf,
        #[arg(long)]
        max_codim: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Second Betti number with its per-flat breakdown.
    B2 {
        file: PathBuf,
        /// Also report b2 away from this hyperplane (0-based index).
        #[arg(long)]
        away: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Decide freeness and emit a certificate.
    Certify {
        file: PathBuf,
        #[command(flatten)]
        opts: CertifyArgs,
        /// Write the certificate JSON to this path.
        #[arg(long)]
        cert_out: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Certify every parameter row of a template.
    Sweep {
        template: PathBuf,
        /// `name=lo..hi`, `name=v1,v2,...` or `name=expr`; bounds may use earlier parameters.
        #[arg(long = "param", required = true)]
        params: Vec<String>,
        #[command(flatten)]
        opts: CertifyArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Brute-force graded dimensions of D(A,m) and the Hilbert freeness test.
    Oracle {
        file: PathBuf,
        /// Print dim D(A,m)_d and a basis of that graded piece.
        #[arg(long, conflicts_with = "hilbert")]
        degree: Option<u32>,
        #[arg(long)]
        hilbert: bool,
        #[arg(long, alias = "max-degree")]
        cap: Option<u32>,
        #[arg(long, env = "ARRFREE_SEED", default_value_t = 0)]
        seed: u64,
        /// Drop the non-essential directions first.
        #[arg(long)]
        essentialize: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Re-derive a certificate file and compare.
    Verify {
        cert: PathBuf,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args, Clone, Copy)]
struct Output {
    #[arg(long)]
    json: bool,
    /// Include wall-clock time (makes output non-reproducible).
    #[arg(long)]
    timing: bool,
}

#[derive(Args, Clone)]
struct CertifyArgs {
    /// Fall back to the brute-force oracle.
    #[arg(long)]
    oracle: bool,
    #[arg(long, env = "ARRFREE_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    max_degree: Option<u32>,
    /// Run a single dispatcher step.
    #[arg(long, value_parser = parse_step)]
    only_rule: Option<Step>,
}

impl CertifyArgs {
    fn options(&self) -> CertifyOptions {
        CertifyOptions {
            oracle: self.oracle,
            seed: self.seed,
            max_degree: self.max_degree,
            only: self.only_rule,
        }
    }
}

fn parse_step(s: &str) -> Result<Step, String> {
    Step::from_name(s).ok_or_else(|| {
        let names: Vec<_> = DISPATCH_ORDER.iter().map(|s| s.name()).collect();
        format!("unknown rule {s:?}; expected one of {}", names.join(", "))
    })
}

fn digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

fn load(path: &Path) -> anyhow::Result<(Multiarrangement, String)> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let a = Multiarrangement::parse(&text)?;
    Ok((a, digest(text.as_bytes())))
}

/// Assembles the JSON report shared by all commands.
fn report(command: &str, input_digest: &str, result: Value, out: Output, started: Instant) -> Value {
    let mut r = json!({
        "command": command,
        "input_digest": input_digest,
        "result": result,
    });
    if out.timing {
        r["timing_ms"] = json!(started.elapsed().as_secs_f64() * 1e3);
    }
    r
}

/// Writes to stdout, ignoring a closed pipe (`arrfree ... | head`).
pub(crate) fn put(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn emit(out: Output, report: &Value, mut text: String, started: Instant) {
    if out.json {
        put(&(serde_json::to_string_pretty(report).expect("json values serialize") + "\n"));
    } else {
        if out.timing {
            let _ = writeln!(text, "time: {:.1} ms", started.elapsed().as_secs_f64() * 1e3);
        }
        put(&text);
    }
}

fn members(a: &Multiarrangement, m: &[usize]) -> String {
    let names: Vec<_> = m.iter().map(|&i| a.label(i)).collect();
    format!("{{{}}}", names.join(", "))
}

fn cmd_lattice(file: &Path, max_codim: Option<usize>, out: Output) -> anyhow::Result<ExitCode> {
    let started = Instant::now();
    let (a, dig) = load(file)?;
    let lattice = a.intersection_lattice(max_codim.unwrap_or(a.dim()));
    let mut text = String::new();
    let mut levels = Vec::new();
    for r in 1..=lattice.max_codim() {
        let flats = lattice.flats(r);
        writeln!(text, "codim {r}: {} flats", flats.len())?;
        for f in flats {
            writeln!(text, "  {}", members(&a, f.members()))?;
        }
        levels.push(json!({
            "codim": r,
            "count": flats.len(),
            "flats": flats.iter().map(|f| f.members().to_vec()).collect::<Vec<_>>(),
        }));
    }
    let r = report("lattice", &dig, json!({ "levels": levels }), out, started);
    emit(out, &r, text, started);
    Ok(ExitCode::SUCCESS)
}

fn cmd_b2(file: &Path, away: Option<usize>, out: Output) -> anyhow::Result<ExitCode> {
    let started = Instant::now();
    let (a, dig) = load(file)?;
    let rep = b2_multi(&a);
    let mut text = String::new();
    writeln!(text, "b2 = {}", rep.total)?;
    for f in &rep.flats {
        writeln!(
            text,
            "  {:<24} exp ({}, {})  {}",
            members(&a, &f.members),
            f.exponents.d1,
            f.exponents.d2,
            f.value
        )?;
    }
    let mut result = serde_json::to_value(&rep)?;
    if let Some(h) = away {
        a.check_index(h)?;
        let value = b2_away_from(&a, &rep, h);
        let local = b2_away_local_sum(&a, h)?;
        writeln!(text, "b2 away from {} = {value} (local sum {local})", a.label(h))?;
        result["away"] = json!({ "hyperplane": h, "value": value, "local_sum": local });
    }
    let r = report("b2", &dig, result, out, started);
    emit(out, &r, text, started);
    Ok(ExitCode::SUCCESS)
}

fn verdict_code(c: &Certificate) -> ExitCode {
    if c.verdict.is_free() {
        ExitCode::SUCCESS
    } else if c.verdict.is_nonfree() {
        ExitCode::from(10)
    } else {
        ExitCode::from(20)
    }
}

fn write_tree(text: &mut String, node: &ProofNode, depth: usize) {
    let nums: Vec<_> = node.numbers.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let _ = writeln!(
        text,
        "{:indent$}{} => {}  [{}]",
        "",
        node.rule,
        node.conclusion,
        nums.join(" "),
        indent = 2 * depth + 2
    );
    for c in &node.children {
        write_tree(text, c, depth + 1);
    }
}

fn certificate_text(c: &Certificate) -> String {
    let mut text = String::new();
    let _ = writeln!(text, "verdict: {}", c.verdict);
    let _ = writeln!(text, "dispatch: {}", c.dispatch_order.join(" > "));
    for at in &c.attempts {
        let _ = writeln!(text, "  {}: {} ({})", at.step, at.outcome, at.detail);
    }
    if let Some(p) = &c.proof {
        let _ = writeln!(text, "proof:");
        write_tree(&mut text, p, 0);
    }
    text
}

fn cmd_certify(file: &Path, args: &CertifyArgs, cert_out: Option<&Path>, out: Output) -> anyhow::Result<ExitCode> {
    let started = Instant::now();
    let (a, dig) = load(file)?;
    let cert = certify(&a, &args.options())?;
    let mut result = json!({ "verdict": cert.verdict, "certificate": cert });
    if let Some(path) = cert_out {
        std::fs::write(path, serde_json::to_string_pretty(&cert)? + "\n")
            .with_context(|| format!("writing {}", path.display()))?;
        result["certificate_file"] = json!(path.display().to_string());
    }
    let r = report("certify", &dig, result, out, started);
    emit(out, &r, certificate_text(&cert), started);
    Ok(verdict_code(&cert))
}

fn cmd_verify(path: &Path, out: Output) -> anyhow::Result<ExitCode> {
    let started = Instant::now();
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let cert: Certificate = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
    let ok = reverify(&cert)?;
    let r = report(
        "verify",
        &digest(text.as_bytes()),
        json!({ "verified": ok, "verdict": cert.verdict }),
        out,
        started,
    );
    let msg = if ok {
        format!("verified: {}\n", cert.verdict)
    } else {
        "MISMATCH: re-derivation differs from the certificate\n".to_string()
    };
    emit(out, &r, msg, started);
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

#[allow(clippy::too_many_arguments)]
fn cmd_oracle(
    file: &Path,
    degree: Option<u32>,
    hilbert: bool,
    cap: Option<u32>,
    seed: u64,
    essentialize: bool,
    out: Output,
) -> anyhow::Result<ExitCode> {
    let started = Instant::now();
    let (input, dig) = load(file)?;
    let (a, dropped) = if input.is_essential() {
        (input, 0)
    } else if essentialize {
        input.essentialize()
    } else {
        bail!(Error::NotEssential {
            rank: input.rank(),
            dim: input.dim(),
        });
    };
    for c in [degree, cap].into_iter().flatten() {
        if c > MAX_DEGREE_CAP {
            eprintln!("warning: degree {c} needs very large linear systems");
            bail!(Error::CapTooLarge {
                cap: c,
                limit: MAX_DEGREE_CAP,
            });
        }
    }
    let mut text = String::new();
    if dropped > 0 {
        writeln!(text, "essentialized: {dropped} degree-0 derivations split off")?;
    }
    let result = if let Some(d) = degree {
        let basis = derivation_space(&a, d);
        writeln!(text, "dim D(A,m)_{d} = {}", basis.len())?;
        for t in &basis {
            writeln!(text, "  {t}")?;
        }
        json!({
            "degree": d,
            "dimension": basis.len(),
            "basis": basis.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            "nonessential_dim": dropped,
        })
    } else if hilbert {
        let rep = hilbert_freeness_test(&a, cap, seed)?;
        writeln!(text, "cap {} seed {}", rep.cap, rep.seed)?;
        writeln!(text, "dimensions: {:?}", rep.dimensions)?;
        writeln!(text, "matching tuples: {:?}", rep.survivors)?;
        match &rep.outcome {
            HilbertOutcome::FreeProven { exponents, trial } => {
                writeln!(text, "FreeProven {exponents:?} (trial {trial})")?;
                for t in rep.basis.iter().flatten() {
                    writeln!(text, "  {t}")?;
                }
            }
            HilbertOutcome::NonFreeProven => writeln!(text, "NonFreeProven")?,
            HilbertOutcome::Undetermined { reason } => writeln!(text, "Undetermined: {reason}")?,
        }
        let mut v = serde_json::to_value(&rep)?;
        if let Some(b) = &rep.basis {
            v["basis"] = json!(b.iter().map(|t| t.to_string()).collect::<Vec<_>>());
        }
        v["nonessential_dim"] = json!(dropped);
        v
    } else {
        let cap = cap.unwrap_or_else(|| default_degree_cap(&a).min(MAX_DEGREE_CAP));
        let dims = graded_dimensions(&a, cap);
        for (d, n) in dims.iter().enumerate() {
            writeln!(text, "dim D(A,m)_{d} = {n}")?;
        }
        json!({ "cap": cap, "dimensions": dims, "nonessential_dim": dropped })
    };
    let r = report("oracle", &dig, result, out, started);
    emit(out, &r, text, started);
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Lattice { file, max_codim, out } => cmd_lattice(&file, max_codim, out),
        Command::B2 { file, away, out } => cmd_b2(&file, away, out),
        Command::Certify {
            file,
            opts,
            cert_out,
            out,
        } => cmd_certify(&file, &opts, cert_out.as_deref(), out),
        Command::Sweep {
            template,
            params,
            opts,
            out,
        } => sweep::cmd_sweep(&template, &params, &opts.options(), out.json),
        Command::Oracle {
            file,
            degree,
            hilbert,
            cap,
            seed,
            essentialize,
            out,
        } => cmd_oracle(&file, degree, hilbert, cap, seed, essentialize, out),
        Command::Verify { cert, out } => cmd_verify(&cert, out),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if let Some(Error::NotEssential { .. }) = e.downcast_ref::<Error>() {
                eprintln!("hint: pass --essentialize to project onto the span of the normals");
            }
            match e.downcast_ref::<Error>() {
                Some(Error::CapTooLarge { .. }) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}
