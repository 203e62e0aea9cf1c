//! `.kirby` proof scripts and their step-by-step verifier.
//!
//! One statement per line:
//!
//! ```text
//! diagram NAME = empty
//! diagram NAME = file path/to.surg
//! diagram NAME            # inline .surg body up to `end`
//!   L 1
//!   R 1
//!   coeffs: c1=-1
//! end
//! start NAME
//! reidemeister II.1 forward at 3 level 2
//! normalize
//! move handle-slide forward rider=1 over=2 sign=-1 window 4..4
//! slide-unframed rider=2 over=1 sign=-1 band=6
//! expect d3 = 1/4
//! save NAME
//! assert-move BEFORE AFTER cancel-insert forward window 0..0 strands 1+0
//! ```
//!
//! Columns are counted from 0 and a window `a..b` is the half-open range
//! `[a, b)`. Component indices in descriptors are 1-based.

use crate::front::{apply_reidemeister, normalize_with_perm, Direction, FrontDiagram, ReidemeisterMove, Window};
use crate::invariants::{d3_surg, delta};
use crate::linalg::fmt_rat;
use crate::moves::{apply_template_move, assert_diagram_move, parse_descriptor, slide_unframed, MoveDescriptor};
use crate::surgery::{carry_decorations, linking_data, parse_surg, SurgeryDiagram};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepReport {
    pub step: usize,
    pub kind: String,
    pub status: String,
    pub d3_before: Option<String>,
    pub d3_after: Option<String>,
    pub delta_before: Option<String>,
    pub delta_after: Option<String>,
    pub detail: String,
}

impl StepReport {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScriptReport {
    pub steps: Vec<StepReport>,
}

impl ScriptReport {
    pub fn ok(&self) -> bool {
        self.steps.iter().all(|s| s.passed())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for ScriptReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: &Option<String>| v.clone().unwrap_or_else(|| "-".into());
        for s in &self.steps {
            write!(f, "step {} {} {}", s.step, s.kind, s.status)?;
            if s.d3_before.is_some() || s.d3_after.is_some() {
                write!(
                    f,
                    "  d3 {} -> {}  delta {} -> {}",
                    show(&s.d3_before),
                    show(&s.d3_after),
                    show(&s.delta_before),
                    show(&s.delta_after)
                )?;
            }
            if !s.detail.is_empty() {
                write!(f, "  {}", s.detail)?;
            }
            writeln!(f)?;
        }
        let failed = self.steps.iter().filter(|s| !s.passed()).count();
        write!(f, "{} steps, {} failed", self.steps.len(), failed)
    }
}

/// d3 and delta of a diagram as "p/q" strings; `None` when c² is undefined.
fn invariants_of(d: &SurgeryDiagram) -> Result<(Option<String>, Option<String>, String), String> {
    let data = linking_data(d).map_err(|e| e.to_string())?;
    let d3 = d3_surg(&data).ok().map(|x| fmt_rat(&x));
    let dl = delta(&data).ok().map(|x| fmt_rat(&x));
    Ok((d3, dl, data.to_string()))
}

enum Stmt {
    Bind(String, Result<SurgeryDiagram, String>),
    Start(String),
    Reidemeister(ReidemeisterMove, Direction, usize, usize),
    Normalize,
    Move(MoveDescriptor, Window),
    SlideUnframed { rider: usize, over: usize, sign: i64, band: usize },
    Expect(String, String),
    Save(String),
    AssertMove(String, String, MoveDescriptor, Window),
}

impl Stmt {
    fn kind(&self) -> &'static str {
        match self {
            Stmt::Bind(..) => "diagram",
            Stmt::Start(_) => "start",
            Stmt::Reidemeister(..) => "reidemeister",
            Stmt::Normalize => "normalize",
            Stmt::Move(..) => "move",
            Stmt::SlideUnframed { .. } => "slide-unframed",
            Stmt::Expect(..) => "expect",
            Stmt::Save(_) => "save",
            Stmt::AssertMove(..) => "assert-move",
        }
    }
}

fn parse_window(toks: &[&str]) -> Result<Window, String> {
    let range = toks.first().ok_or("window needs a range a..b")?;
    let (a, b) = range.split_once("..").ok_or_else(|| format!("bad window range '{range}'"))?;
    let num = |s: &str| s.parse::<usize>().map_err(|_| format!("bad window bound '{s}'"));
    let (start, end) = (num(a)?, num(b)?);
    if end < start {
        return Err(format!("window {start}..{end} is reversed"));
    }
    let mut w = Window::columns(start, end);
    match toks.get(1..) {
        Some([]) | None => {}
        Some(["strands", s]) => {
            let (lo, width) = s.split_once('+').ok_or_else(|| format!("bad strand interval '{s}'"))?;
            w.lo = num(lo)?;
            w.width = num(width)?;
            if w.lo == 0 {
                return Err("strand positions start at 1".into());
            }
        }
        Some(rest) => return Err(format!("unexpected '{}' after window", rest.join(" "))),
    }
    Ok(w)
}

/// Parses `a..b` or `a..b strands lo+w`.
pub fn parse_window_spec(text: &str) -> Result<Window, String> {
    parse_window(&text.split_whitespace().collect::<Vec<_>>())
}

/// Splits `<descriptor> window <range> [strands lo+w]`.
fn descriptor_and_window(toks: &[&str]) -> Result<(MoveDescriptor, Window), String> {
    let at = toks.iter().position(|t| *t == "window").ok_or("move needs 'window a..b'")?;
    let m = parse_descriptor(&toks[..at].join(" ")).map_err(|e| e.to_string())?;
    Ok((m, parse_window(&toks[at + 1..])?))
}

fn key_values<'a>(toks: &[&'a str]) -> Result<BTreeMap<&'a str, &'a str>, String> {
    toks.iter().map(|t| t.split_once('=').ok_or_else(|| format!("expected key=value, got '{t}'"))).collect()
}

fn parse_stmt(toks: &[&str], base: Option<&Path>) -> Result<Stmt, String> {
    let int = |s: &str| s.parse::<usize>().map_err(|_| format!("expected a number, got '{s}'"));
    match toks {
        ["diagram", name, "=", "empty"] => Ok(Stmt::Bind(name.to_string(), Ok(SurgeryDiagram::empty().with_name(name)))),
        ["diagram", name, "=", "file", path] => {
            let p = base.map_or_else(|| Path::new(path).to_path_buf(), |b| b.join(path));
            let loaded = std::fs::read_to_string(&p)
                .map_err(|e| format!("{}: {e}", p.display()))
                .and_then(|t| parse_surg(&t).map_err(|e| format!("{}: {e}", p.display())));
            Ok(Stmt::Bind(name.to_string(), loaded))
        }
        ["start", name] => Ok(Stmt::Start(name.to_string())),
        ["save", name] => Ok(Stmt::Save(name.to_string())),
        ["normalize"] => Ok(Stmt::Normalize),
        ["reidemeister", variant, dir, "at", col, "level", k] => Ok(Stmt::Reidemeister(
            variant.parse()?,
            dir.parse()?,
            int(col)?,
            int(k)?,
        )),
        ["move", rest @ ..] => {
            let (m, w) = descriptor_and_window(rest)?;
            Ok(Stmt::Move(m, w))
        }
        ["slide-unframed", rest @ ..] => {
            let kv = key_values(rest)?;
            let get = |k: &str| kv.get(k).copied().ok_or_else(|| format!("slide-unframed needs {k}="));
            let idx = |k: &str| -> Result<usize, String> {
                int(get(k)?)?.checked_sub(1).ok_or_else(|| format!("{k} is 1-based"))
            };
            let sign = match get("sign")? {
                "1" | "+1" | "+" => 1,
                "-1" | "-" => -1,
                s => return Err(format!("sign must be +1 or -1, got '{s}'")),
            };
            Ok(Stmt::SlideUnframed { rider: idx("rider")?, over: idx("over")?, sign, band: int(get("band")?)? })
        }
        ["expect", what, "=", value] => Ok(Stmt::Expect(what.to_string(), value.to_string())),
        ["assert-move", before, after, rest @ ..] => {
            let (m, w) = descriptor_and_window(rest)?;
            Ok(Stmt::AssertMove(before.to_string(), after.to_string(), m, w))
        }
        _ => Err(format!("cannot read '{}'", toks.join(" "))),
    }
}

/// Statements with their source line, or the parse error for that line.
fn parse_script(text: &str, base: Option<&Path>) -> Vec<(usize, Result<Stmt, String>)> {
    let mut out = Vec::new();
    let mut lines = text.lines().enumerate();
    while let Some((idx, raw)) = lines.next() {
        let line = idx + 1;
        let t = raw.split('#').next().unwrap().trim();
        if t.is_empty() {
            continue;
        }
        let toks: Vec<&str> = t.split_whitespace().collect();
        if let ["diagram", name] = toks.as_slice() {
            let mut body = format!("front {name}\n");
            let mut closed = false;
            for (_, raw) in lines.by_ref() {
                if raw.trim() == "end" {
                    closed = true;
                    break;
                }
                body.push_str(raw.trim());
                body.push('\n');
            }
            let d = if closed { parse_surg(&body).map_err(|e| e.to_string()) } else { Err("inline diagram has no 'end'".into()) };
            out.push((line, Ok(Stmt::Bind(name.to_string(), d))));
            continue;
        }
        out.push((line, parse_stmt(&toks, base)));
    }
    out
}

struct Runner {
    bindings: BTreeMap<String, SurgeryDiagram>,
    current: Option<SurgeryDiagram>,
}

type Outcome = Result<String, String>;

impl Runner {
    fn current(&self) -> Result<&SurgeryDiagram, String> {
        self.current.as_ref().ok_or_else(|| "no current diagram; use 'start NAME' first".into())
    }

    fn binding(&self, name: &str) -> Result<&SurgeryDiagram, String> {
        self.bindings.get(name).ok_or_else(|| format!("diagram '{name}' is not defined"))
    }

    /// Replaces the current diagram, requiring d3 and delta to be unchanged.
    fn advance(&mut self, next: SurgeryDiagram, report: &mut StepReport, note: String) -> Outcome {
        let (d3, dl, data) = invariants_of(&next)?;
        report.d3_after = d3.clone();
        report.delta_after = dl.clone();
        self.current = Some(next);
        if d3 != report.d3_before || dl != report.delta_before {
            return Err(format!("{note}; invariants changed, data now {data}"));
        }
        Ok(note)
    }

    fn run(&mut self, stmt: Stmt, report: &mut StepReport) -> Outcome {
        if !matches!(stmt, Stmt::Bind(..) | Stmt::Start(_) | Stmt::AssertMove(..)) {
            if let Some(cur) = &self.current {
                let (d3, dl, _) = invariants_of(cur)?;
                report.d3_before = d3;
                report.delta_before = dl;
            }
        }
        match stmt {
            Stmt::Bind(name, d) => {
                let d = d?;
                self.bindings.insert(name.clone(), d.with_name(&name));
                Ok(format!("bound {name}"))
            }
            Stmt::Start(name) => {
                let d = self.binding(&name)?.clone();
                let (d3, dl, data) = invariants_of(&d)?;
                report.d3_after = d3;
                report.delta_after = dl;
                self.current = Some(d);
                Ok(data)
            }
            Stmt::Save(name) => {
                let d = self.current()?.clone();
                report.d3_after = report.d3_before.clone();
                report.delta_after = report.delta_before.clone();
                self.bindings.insert(name.clone(), d.with_name(&name));
                Ok(format!("saved as {name}"))
            }
            Stmt::Normalize => {
                let cur = self.current()?.clone();
                let (word, perm) = normalize_with_perm(&cur.front.as_word());
                let front = FrontDiagram::new(word.events).map_err(|e| e.to_string())?;
                let next = carry_decorations(&cur, front, |j| Some(perm[j])).map_err(|e| e.to_string())?;
                self.advance(next, report, String::new())
            }
            Stmt::Reidemeister(mv, dir, col, k) => {
                let cur = self.current()?.clone();
                let front = apply_reidemeister(&cur.front, mv, col, k, dir).map_err(|e| e.to_string())?;
                let (src, tgt) = mv.sides(k);
                let (from, to) = if dir == Direction::Forward { (src.len(), tgt.len()) } else { (tgt.len(), src.len()) };
                let old_col = |j: usize| match j {
                    j if j < col => Some(j),
                    j if j >= col + to => Some(j + from - to),
                    _ => None,
                };
                let next = carry_decorations(&cur, front, old_col).map_err(|e| e.to_string())?;
                self.advance(next, report, format!("{mv} {dir} at {col}"))
            }
            Stmt::Move(m, w) => {
                let cur = self.current()?.clone();
                let before_data = linking_data(&cur).map_err(|e| e.to_string())?;
                let out = apply_template_move(&cur, &m, w).map_err(|e| e.to_string())?;
                let check = assert_diagram_move(&cur, &out.diagram, Some(&m), w);
                let after_data = linking_data(&out.diagram).map_err(|e| e.to_string())?;
                let note = format!("{m}: {before_data} -> {after_data}");
                let res = self.advance(out.diagram, report, note)?;
                if !check.ok() {
                    let bad: Vec<String> = check.checks.iter().filter(|c| !c.1).map(|c| format!("{}: {}", c.0, c.2)).collect();
                    return Err(format!("{res}; {}", bad.join("; ")));
                }
                Ok(res)
            }
            Stmt::SlideUnframed { rider, over, sign, band } => {
                let cur = self.current()?.clone();
                let next = slide_unframed(&cur, rider, over, sign, band).map_err(|e| e.to_string())?;
                self.advance(next, report, format!("c{} over c{}", rider + 1, over + 1))
            }
            Stmt::Expect(what, want) => {
                let cur = self.current()?;
                report.d3_after = report.d3_before.clone();
                report.delta_after = report.delta_before.clone();
                let data = linking_data(cur).map_err(|e| e.to_string())?;
                let got = match what.as_str() {
                    "d3" => report.d3_before.clone().unwrap_or_else(|| "undefined".into()),
                    "delta" => report.delta_before.clone().unwrap_or_else(|| "undefined".into()),
                    "n" => data.n().to_string(),
                    "q" => data.plus.to_string(),
                    "components" => cur.component_count().to_string(),
                    "events" => cur.front.len().to_string(),
                    other => return Err(format!("cannot expect '{other}'")),
                };
                if got == want {
                    Ok(format!("{what} = {got}"))
                } else {
                    Err(format!("{what} = {got}, expected {want}"))
                }
            }
            Stmt::AssertMove(before, after, m, w) => {
                let (b, a) = (self.binding(&before)?, self.binding(&after)?);
                let (d3b, dlb, _) = invariants_of(b)?;
                let (d3a, dla, _) = invariants_of(a)?;
                report.d3_before = d3b;
                report.delta_before = dlb;
                report.d3_after = d3a;
                report.delta_after = dla;
                let check = assert_diagram_move(b, a, Some(&m), w);
                let lines: Vec<String> =
                    check.checks.iter().map(|c| format!("{} {}", c.0, if c.1 { "ok" } else { c.2.as_str() })).collect();
                if check.ok() {
                    Ok(lines.join("; "))
                } else {
                    Err(lines.join("; "))
                }
            }
        }
    }
}

/// Runs every statement in order. Failures are recorded and the run goes on.
/// `base` resolves `file` bindings.
pub fn verify_script(text: &str, base: Option<&Path>) -> ScriptReport {
    let mut runner = Runner { bindings: BTreeMap::new(), current: None };
    let mut steps = Vec::new();
    for (i, (line, stmt)) in parse_script(text, base).into_iter().enumerate() {
        let mut report = StepReport {
            step: i + 1,
            kind: String::new(),
            status: String::new(),
            d3_before: None,
            d3_after: None,
            delta_before: None,
            delta_after: None,
            detail: String::new(),
        };
        let outcome = match stmt {
            Ok(s) => {
                report.kind = s.kind().into();
                runner.run(s, &mut report)
            }
            Err(e) => {
                report.kind = "parse".into();
                Err(e)
            }
        };
        match outcome {
            Ok(d) => {
                report.status = "pass".into();
                report.detail = d;
            }
            Err(d) => {
                report.status = "fail".into();
                report.detail = format!("line {line}: {d}");
            }
        }
        steps.push(report);
    }
    ScriptReport { steps }
}
