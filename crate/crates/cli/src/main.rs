//! `ckirby`: invariants, move application and proof-script checking for
//! contact surgery diagrams.
//!
//! Exit status is 0 on success, 1 when a verification fails and 2 on usage
//! or input errors.

use clap::{Parser, Subcommand, ValueEnum};
use kirby_core::front::{classical_invariants, linking_number, trace_components};
use kirby_core::invariants::{d3_surg, delta};
use kirby_core::linalg::fmt_rat;
use kirby_core::mcg;
use kirby_core::moves::{
    self, apply_template_move, assert_diagram_move, independence_rank, invariance_trials, parse_descriptor,
    standard_change_vectors, verify_schur_conditions, MoveTag,
};
use kirby_core::script::{parse_window_spec, verify_script};
use kirby_core::surgery::{linking_data, parse_surg, serialize_surg, Decoration, SurgeryDiagram};
use serde_json::{json, Value};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "ckirby", version, about = "Exact contact Kirby calculus on front diagrams")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Seed for randomized subcommands.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// tb/rot/lk table, Q, r, n, q, d3 and delta of a .surg file.
    Invariants { file: PathBuf },
    /// Check a .kirby proof script step by step.
    Verify { file: PathBuf },
    /// Apply one move to a diagram and write the result.
    Apply {
        #[arg(long = "move")]
        descriptor: String,
        /// Column range `a..b`, 0-based and half-open.
        #[arg(long)]
        window: String,
        /// Strand interval `lo+width`, 1-based.
        #[arg(long)]
        strands: Option<String>,
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check the Schur identities for a move's published blocks.
    Schur {
        /// Tag, optionally followed by key=value parameters.
        #[arg(long = "move")]
        descriptor: String,
        #[arg(long)]
        ell: Option<String>,
        #[arg(long)]
        ell1: Option<String>,
        #[arg(long)]
        ell2: Option<String>,
        #[arg(long)]
        ell3: Option<String>,
        #[arg(long)]
        w2l: Option<String>,
        #[arg(long)]
        w2r: Option<String>,
        #[arg(long)]
        w3l: Option<String>,
        #[arg(long)]
        w3r: Option<String>,
        #[arg(long)]
        t: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        rho: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        sign: Option<i64>,
        #[arg(long = "ell-rider")]
        ell_rider: Option<String>,
        #[arg(long = "ell-over")]
        ell_over: Option<String>,
    },
    /// Rank of the change vectors P, L, C.
    Indep,
    /// Word rewriting in the mapping class group.
    Mcg {
        #[command(subcommand)]
        cmd: McgCmd,
    },
    /// Shipped move templates.
    Templates {
        #[command(subcommand)]
        cmd: TemplatesCmd,
    },
    /// Seeded d3/delta invariance and Schur checks on random instances.
    Random {
        #[arg(long = "move")]
        tag: String,
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
}

#[derive(Subcommand)]
enum McgCmd {
    /// Replay a shipped derivation certificate.
    Replay {
        name: String,
        #[arg(long)]
        inverse: bool,
    },
    /// Names of the shipped certificates.
    List,
}

#[derive(Subcommand)]
enum TemplatesCmd {
    /// Re-validate every shipped template.
    Check,
}

/// What a subcommand produced: text lines, the JSON value and whether it passed.
struct Output {
    text: String,
    json: Value,
    ok: bool,
}

struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, UsageError> {
    std::fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn load_surg(path: &Path) -> Result<SurgeryDiagram, UsageError> {
    parse_surg(&read(path)?).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn invariants(file: &Path) -> Result<Output, UsageError> {
    let d = load_surg(file)?;
    let map = trace_components(&d.front);
    let o = d.orientation()?;
    let n = map.count();
    let mut text = String::from("component  coeff  tb  rot\n");
    let mut comps = Vec::new();
    for c in 0..n {
        let ci = classical_invariants(&map, c, &o);
        let coeff = match d.coeffs[c] {
            Some(Decoration::Framed(s)) => format!("{s}1"),
            _ => "unframed".into(),
        };
        text.push_str(&format!("c{:<9} {:<6} {:<3} {}\n", c + 1, coeff, ci.tb, ci.rot));
        comps.push(json!({"component": c + 1, "coeff": coeff, "tb": ci.tb, "rot": ci.rot}));
    }
    let lk: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| if i == j { 0 } else { linking_number(&map, i, j, &o) }).collect()).collect();
    for i in 0..n {
        for j in i + 1..n {
            text.push_str(&format!("lk(c{}, c{}) = {}\n", i + 1, j + 1, lk[i][j]));
        }
    }
    let data = linking_data(&d)?;
    let d3 = d3_surg(&data).ok().map(|x| fmt_rat(&x));
    let dl = delta(&data).ok().map(|x| fmt_rat(&x));
    text.push_str(&format!("{data}\n"));
    match (&d3, &dl) {
        (Some(a), Some(b)) => text.push_str(&format!("d3 = {a}\ndelta = {b} (mod 8)")),
        _ => text.push_str("d3 = undefined (c1 is not torsion)\ndelta = undefined"),
    }
    Ok(Output {
        text,
        json: json!({
            "components": comps, "lk": lk, "Q": data.q, "r": data.r,
            "n": data.n(), "q": data.plus, "d3": d3, "delta": dl,
        }),
        ok: true,
    })
}

fn verify(file: &Path) -> Result<Output, UsageError> {
    let text = read(file)?;
    let report = verify_script(&text, file.parent());
    Ok(Output { text: report.to_string(), json: serde_json::to_value(&report)?, ok: report.ok() })
}

fn apply(descriptor: &str, window: &str, input: &Path, out: &Path) -> Result<Output, UsageError> {
    let m = parse_descriptor(descriptor)?;
    let w = parse_window_spec(window).map_err(UsageError)?;
    let d = load_surg(input)?;
    let result = match apply_template_move(&d, &m, w) {
        Ok(r) => r,
        Err(e) => {
            return Ok(Output { text: format!("move failed: {e}"), json: json!({"ok": false, "error": e.to_string()}), ok: false })
        }
    };
    std::fs::write(out, serialize_surg(&result.diagram)).map_err(|e| UsageError(format!("{}: {e}", out.display())))?;
    // the written file must re-verify against the input
    let written = load_surg(out)?;
    let check = assert_diagram_move(&d, &written, Some(&m), w);
    let mut text = String::new();
    let mut checks = Vec::new();
    for (name, ok, detail) in &check.checks {
        text.push_str(&format!("{name}: {}{}\n", if *ok { "ok" } else { "FAILED" }, if detail.is_empty() { String::new() } else { format!(" ({detail})") }));
        checks.push(json!({"check": name, "ok": ok, "detail": detail}));
    }
    text.push_str(&format!("wrote {}", out.display()));
    Ok(Output { text, json: json!({"ok": check.ok(), "checks": checks, "out": out.display().to_string()}), ok: check.ok() })
}

#[allow(clippy::too_many_arguments)]
fn schur(descriptor: &str, extra: &[(&str, Option<String>)]) -> Result<Output, UsageError> {
    let mut text = descriptor.trim().to_string();
    for (k, v) in extra {
        if let Some(v) = v {
            text.push_str(&format!(" {k}={v}"));
        }
    }
    let m = parse_descriptor(&text)?;
    let report = verify_schur_conditions(&m);
    let mut out = format!("{m}\n");
    let mut checks = Vec::new();
    for c in &report.checks {
        out.push_str(&format!("{}: {} = {} {}\n", c.name, c.lhs, c.rhs, if c.holds { "ok" } else { "FAILED" }));
        checks.push(json!({"identity": c.name, "lhs": c.lhs, "rhs": c.rhs, "holds": c.holds}));
    }
    out.push_str(if report.passed() { "all identities hold" } else { "some identities fail" });
    Ok(Output { text: out, json: json!({"move": m.to_string(), "checks": checks, "ok": report.passed()}), ok: report.passed() })
}

fn indep() -> Output {
    let vs = standard_change_vectors();
    let mut text = String::new();
    let mut obj = serde_json::Map::new();
    for (name, v) in &vs {
        text.push_str(&format!("{name}: change = {v}\n"));
        obj.insert(name.to_string(), json!(v.0.iter().map(fmt_rat).collect::<Vec<_>>()));
    }
    let rank = independence_rank(&vs.iter().map(|x| x.1.clone()).collect::<Vec<_>>());
    text.push_str(&format!("rank = {rank}"));
    obj.insert("rank".into(), json!(rank));
    Output { text, json: Value::Object(obj), ok: rank == 3 }
}

fn mcg_replay(name: &str, inverse: bool) -> Result<Output, UsageError> {
    let mut cert = mcg::certificate(name)?;
    if inverse {
        cert = cert.inverse();
    }
    let mut text = format!("{}: {} => {}\n", cert.name, cert.start, cert.target);
    let mut steps = Vec::new();
    let (words, ok, err) = match cert.replay() {
        Ok(w) => (w, true, None),
        Err(e) => (vec![cert.start.clone()], false, Some(e.to_string())),
    };
    text.push_str(&format!("  {}\n", words[0]));
    for (s, w) in cert.steps.iter().zip(words.iter().skip(1)) {
        text.push_str(&format!("  = {w}    [{s}]\n"));
        steps.push(json!({"rule": s.rule.to_string(), "at": s.at, "direction": if s.dir == mcg::Dir::Forward { "forward" } else { "backward" }, "word": w.to_string()}));
    }
    match &err {
        None => text.push_str(&format!("replayed {} steps", cert.steps.len())),
        Some(e) => text.push_str(&format!("replay failed: {e}")),
    }
    Ok(Output {
        text,
        json: json!({"name": cert.name, "start": cert.start.to_string(), "target": cert.target.to_string(), "steps": steps, "ok": ok, "error": err}),
        ok,
    })
}

fn templates_check() -> Output {
    let checks = moves::templates::check_templates();
    let text = checks
        .iter()
        .map(|c| format!("{}: {} {}", c.name, if c.ok { "ok" } else { "FAILED" }, c.detail))
        .collect::<Vec<_>>()
        .join("\n");
    let ok = checks.iter().all(|c| c.ok);
    let json = json!(checks.iter().map(|c| json!({"template": c.name, "ok": c.ok, "detail": c.detail})).collect::<Vec<_>>());
    Output { text, json, ok }
}

fn random(tag: &str, count: usize, seed: u64) -> Result<Output, UsageError> {
    let tag = MoveTag::from_name(tag).ok_or_else(|| UsageError(format!("unknown move '{tag}'")))?;
    let trials = invariance_trials(tag, count, seed);
    let failed: Vec<&moves::Trial> = trials.iter().filter(|t| !t.passed()).collect();
    let mut text = format!("{tag}: {} instances, seed {seed}, {} failed", trials.len(), failed.len());
    for t in &failed {
        text.push_str(&format!("\n  {}: d3 {} -> {}, delta {} -> {}, schur {}", t.descriptor, t.d3.0, t.d3.1, t.delta.0, t.delta.1, t.schur));
    }
    let json = json!({
        "move": tag.name(), "seed": seed, "count": trials.len(), "failed": failed.len(),
        "instances": trials.iter().map(|t| json!({
            "descriptor": t.descriptor.to_string(), "d3_before": t.d3.0, "d3_after": t.d3.1,
            "delta_before": t.delta.0, "delta_after": t.delta.1, "schur": t.schur,
        })).collect::<Vec<_>>(),
    });
    Ok(Output { text, json, ok: failed.is_empty() })
}

fn run(cli: Cli) -> Result<Output, UsageError> {
    match cli.cmd {
        Cmd::Invariants { file } => invariants(&file),
        Cmd::Verify { file } => verify(&file),
        Cmd::Apply { descriptor, window, strands, input, out } => {
            let spec = match strands {
                Some(s) => format!("{window} strands {s}"),
                None => window,
            };
            apply(&descriptor, &spec, &input, &out)
        }
        Cmd::Schur { descriptor, ell, ell1, ell2, ell3, w2l, w2r, w3l, w3r, t, rho, sign, ell_rider, ell_over } => schur(
            &descriptor,
            &[
                ("ell", ell),
                ("ell1", ell1),
                ("ell2", ell2),
                ("ell3", ell3),
                ("w2l", w2l),
                ("w2r", w2r),
                ("w3l", w3l),
                ("w3r", w3r),
                ("t", t.map(|x| x.to_string())),
                ("rho", rho.map(|x| x.to_string())),
                ("sign", sign.map(|x| x.to_string())),
                ("ell-rider", ell_rider),
                ("ell-over", ell_over),
            ],
        ),
        Cmd::Indep => Ok(indep()),
        Cmd::Mcg { cmd: McgCmd::Replay { name, inverse } } => mcg_replay(&name, inverse),
        Cmd::Mcg { cmd: McgCmd::List } => {
            let names = mcg::certificate_names();
            Ok(Output { text: names.join("\n"), json: json!(names), ok: true })
        }
        Cmd::Templates { cmd: TemplatesCmd::Check } => Ok(templates_check()),
        Cmd::Random { tag, count } => random(&tag, count, cli.seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(out) => {
            let body = match format {
                Format::Text => out.text,
                Format::Json => serde_json::to_string_pretty(&out.json).expect("json output"),
            };
            // a closed pipe is not our failure
            let _ = writeln!(std::io::stdout(), "{body}");
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(UsageError(msg)) => {
            eprintln!("ckirby: {msg}");
            ExitCode::from(2)
        }
    }
}
