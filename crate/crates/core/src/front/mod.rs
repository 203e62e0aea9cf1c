//! Front projections as one-event-per-column Morse words.
//!
//! Strand positions are counted bottom-up starting at 1. An event at level `k`
//! touches positions `k` and `k + 1`: a left cusp creates them, a right cusp
//! joins and removes them, a crossing exchanges them.

mod commute;
mod reidemeister;
mod trace;

pub mod random;

pub use commute::{extract_window, normalize, normalize_with_perm, same_gap_cusps, swap_adjacent, Extraction, Window};
pub use reidemeister::{apply_reidemeister, Direction, ReidemeisterMove};
pub use trace::{
    classical_invariants, linking_number, trace_components, ClassicalInvariants, ComponentMap, CuspRec,
    CrossingRec, Orientation, SegEnd, Sign, Trace,
};

use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FrontError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("invalid front: {0}")]
    Validation(String),
    #[error("pattern mismatch: {0}")]
    PatternMismatch(String),
    #[error("support violation: {0}")]
    SupportViolation(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EventKind {
    LeftCusp,
    RightCusp,
    Crossing,
}

impl EventKind {
    fn letter(self) -> char {
        match self {
            EventKind::LeftCusp => 'L',
            EventKind::RightCusp => 'R',
            EventKind::Crossing => 'X',
        }
    }

    /// Change in strand count.
    pub fn delta(self) -> isize {
        match self {
            EventKind::LeftCusp => 2,
            EventKind::RightCusp => -2,
            EventKind::Crossing => 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Event {
    pub kind: EventKind,
    pub level: usize,
}

#[allow(non_snake_case)]
pub fn L(level: usize) -> Event {
    Event { kind: EventKind::LeftCusp, level }
}

#[allow(non_snake_case)]
pub fn R(level: usize) -> Event {
    Event { kind: EventKind::RightCusp, level }
}

#[allow(non_snake_case)]
pub fn X(level: usize) -> Event {
    Event { kind: EventKind::Crossing, level }
}

impl Event {
    pub fn valid_at(&self, strands: usize) -> bool {
        self.level >= 1
            && match self.kind {
                EventKind::LeftCusp => self.level <= strands + 1,
                _ => self.level + 1 <= strands,
            }
    }

    pub fn shifted(self, by: isize) -> Event {
        Event { kind: self.kind, level: (self.level as isize + by) as usize }
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.kind.letter(), self.level)
    }
}

impl FromStr for Event {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        // accept both "L 3" and "L3"
        let spaced;
        let s = match s.char_indices().nth(1) {
            Some((i, c)) if c.is_ascii_digit() => {
                spaced = format!("{} {}", &s[..i], &s[i..]);
                spaced.as_str()
            }
            _ => s,
        };
        let mut parts = s.split_whitespace();
        let kind = match parts.next() {
            Some("L") => EventKind::LeftCusp,
            Some("R") => EventKind::RightCusp,
            Some("X") => EventKind::Crossing,
            Some(other) => return Err(format!("unknown event '{other}'")),
            None => return Err("empty event".into()),
        };
        let level: usize = parts
            .next()
            .ok_or("missing level")?
            .parse()
            .map_err(|_| "level is not a positive integer".to_string())?;
        if parts.next().is_some() {
            return Err("trailing tokens after event".into());
        }
        if level == 0 {
            return Err("level must be at least 1".into());
        }
        Ok(Event { kind, level })
    }
}

/// Strand count before each column, plus the count after the last one.
/// Fails on the first event that is invalid for its column.
pub fn strand_profile(inputs: usize, events: &[Event]) -> Result<Vec<usize>, FrontError> {
    let mut counts = Vec::with_capacity(events.len() + 1);
    let mut s = inputs;
    counts.push(s);
    for (col, e) in events.iter().enumerate() {
        if !e.valid_at(s) {
            return Err(FrontError::Validation(format!("column {col}: {e} is out of range for {s} strands")));
        }
        s = (s as isize + e.kind.delta()) as usize;
        counts.push(s);
    }
    Ok(counts)
}

/// An open event word: `inputs` strands enter on the left.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    pub inputs: usize,
    pub events: Vec<Event>,
}

impl Word {
    pub fn new(inputs: usize, events: Vec<Event>) -> Result<Self, FrontError> {
        strand_profile(inputs, &events)?;
        Ok(Word { inputs, events })
    }

    pub fn outputs(&self) -> usize {
        *strand_profile(self.inputs, &self.events).expect("validated").last().unwrap()
    }

    pub fn shifted(&self, by: isize) -> Vec<Event> {
        self.events.iter().map(|e| e.shifted(by)).collect()
    }
}

/// A closed front: the word starts and ends with zero strands.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FrontDiagram {
    events: Vec<Event>,
}

impl FrontDiagram {
    pub fn new(events: Vec<Event>) -> Result<Self, FrontError> {
        let counts = strand_profile(0, &events)?;
        let last = *counts.last().unwrap();
        if last != 0 {
            return Err(FrontError::Validation(format!("word ends with {last} open strands")));
        }
        Ok(FrontDiagram { events })
    }

    pub fn empty() -> Self {
        FrontDiagram::default()
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn counts(&self) -> Vec<usize> {
        strand_profile(0, &self.events).expect("validated")
    }

    pub fn as_word(&self) -> Word {
        Word { inputs: 0, events: self.events.clone() }
    }
}

impl fmt::Display for FrontDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.events.iter().map(|e| e.to_string()).collect();
        write!(f, "{}", parts.join(" / "))
    }
}

/// Parses a compact word such as `"L 1 / X 1 / R 1"` or `"L1 L3 X2 R3 R1"`.
pub fn parse_events(s: &str) -> Result<Vec<Event>, FrontError> {
    let mut out = Vec::new();
    let tokens: Vec<&str> = s.split(|c: char| c == '/' || c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()).collect();
    let mut i = 0;
    while i < tokens.len() {
        let t = tokens[i];
        let (kind, rest) = t.split_at(1);
        let text = if rest.is_empty() {
            i += 1;
            format!("{kind} {}", tokens.get(i).copied().unwrap_or(""))
        } else {
            format!("{kind} {rest}")
        };
        out.push(text.parse().map_err(|msg| FrontError::Syntax { line: 1, msg })?);
        i += 1;
    }
    Ok(out)
}

/// Parsed `.front` content: name, word and optional orientation tokens.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrontFile {
    pub name: String,
    pub diagram: FrontDiagram,
    pub orient: Option<Vec<Sign>>,
}

/// Splits `key=value` tokens of a trailing block like `orient: c1=+ c2=-`.
pub(crate) fn keyed_tokens<'a>(rest: &'a str, line: usize) -> Result<Vec<(usize, &'a str)>, FrontError> {
    rest.split_whitespace()
        .map(|tok| {
            let (k, v) = tok.split_once('=').ok_or(FrontError::Syntax { line, msg: format!("expected cN=value, got '{tok}'") })?;
            Ok((component_token(k, line)?, v))
        })
        .collect()
}

pub(crate) fn component_token(tok: &str, line: usize) -> Result<usize, FrontError> {
    tok.strip_prefix('c')
        .and_then(|n| n.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .map(|n| n - 1)
        .ok_or(FrontError::Syntax { line, msg: format!("bad component token '{tok}'") })
}

/// Reads the shared part of `.front`/`.surg`/`.frag`: header, events, and any
/// `key:` blocks, which are handed back untouched for the caller to interpret.
pub(crate) fn split_front_text(text: &str) -> Result<(String, Vec<Event>, Vec<(usize, String, String)>), FrontError> {
    let mut name = None;
    let mut events = Vec::new();
    let mut blocks = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        if let Some(rest) = t.strip_prefix("front") {
            if rest.is_empty() || rest.starts_with(char::is_whitespace) {
                if name.is_some() || !events.is_empty() {
                    return Err(FrontError::Syntax { line, msg: "header must come first".into() });
                }
                name = Some(rest.trim().to_string());
                continue;
            }
        }
        if let Some((key, rest)) = t.split_once(':') {
            blocks.push((line, key.trim().to_string(), rest.trim().to_string()));
            continue;
        }
        if !blocks.is_empty() {
            return Err(FrontError::Syntax { line, msg: "event after trailing block".into() });
        }
        events.push(t.parse::<Event>().map_err(|msg| FrontError::Syntax { line, msg })?);
    }
    Ok((name.unwrap_or_default(), events, blocks))
}

pub(crate) fn parse_orient_block(rest: &str, line: usize, n: usize) -> Result<Vec<Option<Sign>>, FrontError> {
    let mut out = vec![None; n];
    for (c, v) in keyed_tokens(rest, line)? {
        let s = match v {
            "+" => Sign::Plus,
            "-" => Sign::Minus,
            _ => return Err(FrontError::Syntax { line, msg: format!("orientation must be + or -, got '{v}'") }),
        };
        if c >= n {
            return Err(FrontError::Validation(format!("orientation for c{} but only {n} components", c + 1)));
        }
        out[c] = Some(s);
    }
    Ok(out)
}

pub fn parse_front(text: &str) -> Result<FrontFile, FrontError> {
    let (name, events, blocks) = split_front_text(text)?;
    let diagram = FrontDiagram::new(events)?;
    let n = trace_components(&diagram).count();
    let mut orient = None;
    for (line, key, rest) in blocks {
        match key.as_str() {
            "orient" => {
                let signs = parse_orient_block(&rest, line, n)?;
                let full: Option<Vec<Sign>> = signs.into_iter().collect();
                orient = Some(full.ok_or(FrontError::Validation("orient block must cover every component".into()))?);
            }
            other => return Err(FrontError::Syntax { line, msg: format!("unknown block '{other}'") }),
        }
    }
    Ok(FrontFile { name, diagram, orient })
}

pub(crate) fn write_events(out: &mut String, events: &[Event]) {
    for e in events {
        out.push_str(&e.to_string());
        out.push('\n');
    }
}

pub(crate) fn orient_line(signs: &[Sign]) -> String {
    let toks: Vec<String> = signs.iter().enumerate().map(|(i, s)| format!("c{}={}", i + 1, s)).collect();
    format!("orient: {}", toks.join(" "))
}

pub fn serialize_front(f: &FrontFile) -> String {
    let mut out = format!("front {}\n", f.name);
    write_events(&mut out, f.diagram.events());
    if let Some(o) = &f.orient {
        if !o.is_empty() {
            out.push_str(&orient_line(o));
            out.push('\n');
        }
    }
    out
}
