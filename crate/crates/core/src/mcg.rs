//! Dehn twist words in the Gervais presentation, their rewrites, and
//! replayable certificates for the derived moves.
//!
//! Curve systems are fact registries. Nothing here knows where a curve sits
//! on a surface; a rewrite applies exactly when the facts it needs were
//! declared.

use crate::front::Sign;
use crate::surgery::SurgeryDiagram;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum McgError {
    #[error("rule mismatch: {0}")]
    RuleMismatch(String),
    #[error("undeclared fact: {0}")]
    UndeclaredFact(String),
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("invalid curve system: {0}")]
    Invalid(String),
    #[error("unknown certificate '{0}'")]
    UnknownCertificate(String),
    #[error("{0}")]
    Replay(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub curve: String,
    pub sign: Sign,
}

impl Letter {
    pub fn new(curve: &str, sign: Sign) -> Self {
        Letter { curve: curve.to_string(), sign }
    }

    pub fn inverse(&self) -> Self {
        Letter { curve: self.curve.clone(), sign: self.sign.flip() }
    }
}

fn pos(c: &str) -> Letter {
    Letter::new(c, Sign::Plus)
}

fn neg(c: &str) -> Letter {
    Letter::new(c, Sign::Minus)
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.curve, self.sign)
    }
}

impl FromStr for Letter {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let (sign, name) = match (s.strip_suffix('+'), s.strip_suffix('-')) {
            (Some(n), _) => (Sign::Plus, n),
            (_, Some(n)) => (Sign::Minus, n),
            _ => return Err(format!("letter '{s}' needs a trailing + or -")),
        };
        if name.is_empty() {
            return Err(format!("letter '{s}' has no curve name"));
        }
        Ok(Letter::new(name, sign))
    }
}

/// A product of twists, written left to right.
#[derive(Clone, Debug, PartialEq, Eq, Default, Hash)]
pub struct TwistWord(pub Vec<Letter>);

impl TwistWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for TwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for TwistWord {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s.trim() == "1" {
            return Ok(TwistWord::default());
        }
        s.split_whitespace().map(|t| t.parse()).collect::<Result<_, _>>().map(TwistWord)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LanternConfig {
    pub a: String,
    pub b: String,
    pub ab: String,
    pub d: [String; 4],
}

impl LanternConfig {
    fn source(&self) -> Vec<Letter> {
        vec![pos(&self.a), pos(&self.b), pos(&self.ab)]
    }

    fn target(&self) -> Vec<Letter> {
        self.d.iter().rev().map(|c| pos(c)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainConfig {
    pub a: String,
    pub b: String,
    pub c: String,
    pub d: [String; 2],
}

impl ChainConfig {
    fn source(&self) -> Vec<Letter> {
        (0..4).flat_map(|_| [pos(&self.a), pos(&self.b), pos(&self.c)]).collect()
    }

    fn target(&self) -> Vec<Letter> {
        vec![pos(&self.d[1]), pos(&self.d[0])]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CurveSystem {
    pub curves: Vec<String>,
    disjoint: BTreeSet<(String, String)>,
    /// `(a, b, ab)` with `ab` the twist of `b` along `a`.
    pub intersect: Vec<(String, String, String)>,
    pub lanterns: Vec<LanternConfig>,
    pub chains: Vec<ChainConfig>,
    /// Curves whose positive twist a destabilization may drop.
    pub stabilizing: Vec<String>,
}

impl CurveSystem {
    pub fn new(curves: &[&str]) -> Self {
        CurveSystem { curves: curves.iter().map(|s| s.to_string()).collect(), ..Default::default() }
    }

    fn known(&self, c: &str) -> Result<(), McgError> {
        if self.curves.iter().any(|x| x == c) {
            Ok(())
        } else {
            Err(McgError::Invalid(format!("curve '{c}' was not declared")))
        }
    }

    pub fn declare_disjoint(&mut self, a: &str, b: &str) -> Result<(), McgError> {
        self.known(a)?;
        self.known(b)?;
        if a == b {
            return Err(McgError::Invalid(format!("'{a}' cannot be disjoint from itself")));
        }
        let key = if a < b { (a, b) } else { (b, a) };
        self.disjoint.insert((key.0.to_string(), key.1.to_string()));
        Ok(())
    }

    pub fn declare_intersect(&mut self, a: &str, b: &str, ab: &str) -> Result<(), McgError> {
        for c in [a, b, ab] {
            self.known(c)?;
        }
        if ab == a || ab == b || a == b {
            return Err(McgError::Invalid(format!("intersect {a} {b} -> {ab} repeats a curve")));
        }
        if let Some((_, _, old)) = self.intersect.iter().find(|(x, y, _)| x == a && y == b) {
            if old != ab {
                return Err(McgError::Invalid(format!("{a}, {b} already have product {old}")));
            }
            return Ok(());
        }
        self.intersect.push((a.into(), b.into(), ab.into()));
        Ok(())
    }

    /// Boundary curves of a lantern or chain are disjoint from everything in
    /// their configuration; those facts come with the config.
    pub fn declare_lantern(&mut self, names: [&str; 7]) -> Result<(), McgError> {
        for c in names {
            self.known(c)?;
        }
        let [a, b, ab, d1, d2, d3, d4] = names;
        let d = [d1, d2, d3, d4];
        for (i, x) in d.iter().enumerate() {
            for y in [a, b, ab].iter().chain(&d[i + 1..]) {
                self.declare_disjoint(x, y)?;
            }
        }
        self.lanterns.push(LanternConfig { a: a.into(), b: b.into(), ab: ab.into(), d: d.map(String::from) });
        Ok(())
    }

    pub fn declare_chain(&mut self, names: [&str; 5]) -> Result<(), McgError> {
        for c in names {
            self.known(c)?;
        }
        let [a, b, c, d1, d2] = names;
        for x in [d1, d2] {
            for y in [a, b, c] {
                self.declare_disjoint(x, y)?;
            }
        }
        self.declare_disjoint(d1, d2)?;
        self.declare_disjoint(a, c)?;
        self.chains.push(ChainConfig { a: a.into(), b: b.into(), c: c.into(), d: [d1.into(), d2.into()] });
        Ok(())
    }

    pub fn declare_stabilizing(&mut self, s: &str) -> Result<(), McgError> {
        self.known(s)?;
        if !self.stabilizing.iter().any(|x| x == s) {
            self.stabilizing.push(s.into());
        }
        Ok(())
    }

    pub fn disjoint(&self, a: &str, b: &str) -> bool {
        let key = if a < b { (a, b) } else { (b, a) };
        self.disjoint.contains(&(key.0.to_string(), key.1.to_string()))
    }

    fn check_word(&self, w: &TwistWord) -> Result<(), McgError> {
        for l in &w.0 {
            self.known(&l.curve)?;
        }
        Ok(())
    }
}

/// Parsed `.mcg` content.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct McgFile {
    pub system: CurveSystem,
    pub words: Vec<(String, TwistWord)>,
}

pub fn parse_mcg(text: &str) -> Result<McgFile, McgError> {
    let mut system = CurveSystem::default();
    let mut words = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let syn = |msg: String| McgError::Syntax { line, msg };
        let at = |e: McgError| match e {
            McgError::Invalid(m) => McgError::Syntax { line, msg: m },
            other => other,
        };
        let toks: Vec<&str> = t.split_whitespace().collect();
        match toks[0] {
            "curves:" => {
                for c in &toks[1..] {
                    if system.curves.iter().any(|x| x == c) {
                        return Err(syn(format!("curve '{c}' declared twice")));
                    }
                    system.curves.push(c.to_string());
                }
            }
            "disjoint" if toks.len() == 3 => system.declare_disjoint(toks[1], toks[2]).map_err(at)?,
            "intersect" if toks.len() == 5 && toks[3] == "->" => {
                system.declare_intersect(toks[1], toks[2], toks[4]).map_err(at)?
            }
            "lantern" if toks.len() == 8 => {
                let n: [&str; 7] = toks[1..].try_into().unwrap();
                system.declare_lantern(n).map_err(at)?
            }
            "chain" if toks.len() == 6 => {
                let n: [&str; 5] = toks[1..].try_into().unwrap();
                system.declare_chain(n).map_err(at)?
            }
            "stabilizing" if toks.len() >= 2 => {
                for s in &toks[1..] {
                    system.declare_stabilizing(s).map_err(at)?;
                }
            }
            "word" => {
                let rest = t["word".len()..].trim();
                let (name, body) = rest.split_once(':').ok_or_else(|| syn("expected 'word <name>: <letters>'".into()))?;
                let w: TwistWord = body.parse().map_err(syn)?;
                system.check_word(&w).map_err(at)?;
                words.push((name.trim().to_string(), w));
            }
            other => return Err(syn(format!("cannot read '{other}' line"))),
        }
    }
    Ok(McgFile { system, words })
}

/// τ_L = τ_{L_n}^{−δ_n} ⋯ τ_{L_1}^{−δ_1}; `labels[c]` names component `c`.
pub fn word_of_surgery_link(d: &SurgeryDiagram, labels: &[&str]) -> Result<TwistWord, McgError> {
    let mut out = Vec::new();
    for c in d.framed().into_iter().rev() {
        let name = labels.get(c).ok_or_else(|| McgError::Invalid(format!("component c{} has no curve label", c + 1)))?;
        let coeff = d.coefficient(c).expect("framed component");
        out.push(Letter::new(name, coeff.flip()));
    }
    Ok(TwistWord(out))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rule {
    /// Deletes `first · first⁻¹`; backward inserts it.
    Cancel(Letter),
    Commute,
    Braid,
    Lantern,
    Chain,
    /// Drops a positive twist along a stabilizing curve.
    Destabilize(String),
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::Cancel(l) => write!(f, "cancel({} {})", l, l.inverse()),
            Rule::Commute => write!(f, "commute"),
            Rule::Braid => write!(f, "braid"),
            Rule::Lantern => write!(f, "lantern"),
            Rule::Chain => write!(f, "chain"),
            Rule::Destabilize(s) => write!(f, "destabilize({s})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dir {
    Forward,
    Backward,
}

impl Dir {
    pub fn flip(self) -> Dir {
        match self {
            Dir::Forward => Dir::Backward,
            Dir::Backward => Dir::Forward,
        }
    }
}

fn splice(w: &TwistWord, at: usize, len: usize, with: Vec<Letter>) -> TwistWord {
    let mut out = w.0[..at].to_vec();
    out.extend(with);
    out.extend_from_slice(&w.0[at + len..]);
    TwistWord(out)
}

fn window<'a>(w: &'a TwistWord, at: usize, len: usize, rule: &Rule) -> Result<&'a [Letter], McgError> {
    w.0.get(at..at + len)
        .ok_or_else(|| McgError::RuleMismatch(format!("{rule} needs {len} letters at position {at}, word has {}", w.len())))
}

/// Applies one Gervais relation at letter `at` (0-based).
pub fn rewrite(sys: &CurveSystem, w: &TwistWord, rule: &Rule, at: usize, dir: Dir) -> Result<TwistWord, McgError> {
    sys.check_word(w)?;
    let mismatch = |what: &[Letter]| {
        McgError::RuleMismatch(format!("{rule} {dir:?} does not match '{}' at {at}", TwistWord(what.to_vec())))
    };
    match (rule, dir) {
        (Rule::Cancel(first), Dir::Forward) => {
            let sub = window(w, at, 2, rule)?;
            if sub != [first.clone(), first.inverse()] {
                return Err(mismatch(sub));
            }
            Ok(splice(w, at, 2, vec![]))
        }
        (Rule::Cancel(first), Dir::Backward) => {
            sys.known(&first.curve)?;
            if at > w.len() {
                return Err(McgError::RuleMismatch(format!("cannot insert at {at} in a word of length {}", w.len())));
            }
            Ok(splice(w, at, 0, vec![first.clone(), first.inverse()]))
        }
        (Rule::Commute, _) => {
            let sub = window(w, at, 2, rule)?;
            if !sys.disjoint(&sub[0].curve, &sub[1].curve) {
                return Err(McgError::UndeclaredFact(format!("disjoint {} {}", sub[0].curve, sub[1].curve)));
            }
            Ok(splice(w, at, 2, vec![sub[1].clone(), sub[0].clone()]))
        }
        (Rule::Braid, _) => {
            let sub = window(w, at, 2, rule)?;
            if sub.iter().any(|l| l.sign != Sign::Plus) {
                return Err(mismatch(sub));
            }
            let (x, y) = (&sub[0].curve, &sub[1].curve);
            // forward: a b -> ab a; backward: ab a -> a b
            let fact = match dir {
                Dir::Forward => sys.intersect.iter().find(|(a, b, _)| a == x && b == y),
                Dir::Backward => sys.intersect.iter().find(|(a, _, ab)| a == y && ab == x),
            };
            let (a, b, ab) = fact.ok_or_else(|| match dir {
                Dir::Forward => McgError::UndeclaredFact(format!("intersect {x} {y} -> ?")),
                Dir::Backward => McgError::UndeclaredFact(format!("intersect {y} ? -> {x}")),
            })?;
            let out = match dir {
                Dir::Forward => vec![pos(ab), pos(a)],
                Dir::Backward => vec![pos(a), pos(b)],
            };
            Ok(splice(w, at, 2, out))
        }
        (Rule::Lantern, _) => config_rewrite(w, at, dir, rule, sys.lanterns.iter().map(|c| (c.source(), c.target()))),
        (Rule::Chain, _) => config_rewrite(w, at, dir, rule, sys.chains.iter().map(|c| (c.source(), c.target()))),
        (Rule::Destabilize(s), _) => {
            if !sys.stabilizing.contains(s) {
                return Err(McgError::UndeclaredFact(format!("stabilizing {s}")));
            }
            match dir {
                Dir::Forward => {
                    let sub = window(w, at, 1, rule)?;
                    if sub[0] != pos(s) {
                        return Err(mismatch(sub));
                    }
                    Ok(splice(w, at, 1, vec![]))
                }
                Dir::Backward => {
                    if at > w.len() {
                        return Err(McgError::RuleMismatch(format!("cannot insert at {at} in a word of length {}", w.len())));
                    }
                    Ok(splice(w, at, 0, vec![pos(s)]))
                }
            }
        }
    }
}

fn config_rewrite(
    w: &TwistWord,
    at: usize,
    dir: Dir,
    rule: &Rule,
    configs: impl Iterator<Item = (Vec<Letter>, Vec<Letter>)>,
) -> Result<TwistWord, McgError> {
    let mut any = false;
    for (src, tgt) in configs {
        any = true;
        let (from, to) = if dir == Dir::Forward { (src, tgt) } else { (tgt, src) };
        if w.0.get(at..at + from.len()) == Some(from.as_slice()) {
            return Ok(splice(w, at, from.len(), to));
        }
    }
    if !any {
        return Err(McgError::UndeclaredFact(format!("no {rule} configuration declared")));
    }
    Err(McgError::RuleMismatch(format!("no declared {rule} configuration matches at {at} in '{w}'")))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub rule: Rule,
    pub at: usize,
    pub dir: Dir,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = if self.dir == Dir::Forward { "forward" } else { "backward" };
        write!(f, "{} {} at {}", self.rule, d, self.at)
    }
}

fn step(rule: Rule, at: usize, dir: Dir) -> Step {
    Step { rule, at, dir }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub name: String,
    pub system: CurveSystem,
    pub start: TwistWord,
    pub target: TwistWord,
    pub steps: Vec<Step>,
}

impl Certificate {
    /// The same derivation read from target to start.
    pub fn inverse(&self) -> Certificate {
        Certificate {
            name: format!("{} (inverse)", self.name),
            system: self.system.clone(),
            start: self.target.clone(),
            target: self.start.clone(),
            steps: self.steps.iter().rev().map(|s| step(s.rule.clone(), s.at, s.dir.flip())).collect(),
        }
    }

    /// Re-applies every step; returns the intermediate words, start included.
    pub fn replay(&self) -> Result<Vec<TwistWord>, McgError> {
        let mut words = vec![self.start.clone()];
        for (i, s) in self.steps.iter().enumerate() {
            let next = rewrite(&self.system, words.last().unwrap(), &s.rule, s.at, s.dir)
                .map_err(|e| McgError::Replay(format!("{}: step {} ({s}): {e}", self.name, i + 1)))?;
            words.push(next);
        }
        if words.last() != Some(&self.target) {
            return Err(McgError::Replay(format!(
                "{}: ends at '{}', expected '{}'",
                self.name,
                words.last().unwrap(),
                self.target
            )));
        }
        Ok(words)
    }

    pub fn rules_used(&self) -> BTreeSet<&'static str> {
        self.steps
            .iter()
            .map(|s| match s.rule {
                Rule::Cancel(_) => "cancel",
                Rule::Commute => "commute",
                Rule::Braid => "braid",
                Rule::Lantern => "lantern",
                Rule::Chain => "chain",
                Rule::Destabilize(_) => "destabilize",
            })
            .collect()
    }
}

fn word(letters: &[Letter]) -> TwistWord {
    TwistWord(letters.to_vec())
}

/// Slide variant `side` with twist signs (ε, δ).
///
/// Left: τ_a^ε τ_b^δ = τ_e^δ τ_a^ε with e = τ_a^ε(b).
/// Right: τ_a^δ τ_b^ε = τ_b^ε τ_e^δ with e = τ_b^{−ε}(a).
/// `ab` names τ_a^+(b) = τ_b^−(a) and `ba` names τ_b^+(a) = τ_a^−(b).
pub fn handleslide_variant(eps: Sign, delta: Sign, right: bool) -> Certificate {
    use Dir::*;
    use Sign::*;
    let mut sys = CurveSystem::new(&["a", "b", "ab", "ba"]);
    let (start, target, steps) = match (right, eps, delta) {
        (false, Plus, Plus) => {
            sys.declare_intersect("a", "b", "ab").unwrap();
            (word(&[pos("a"), pos("b")]), word(&[pos("ab"), pos("a")]), vec![step(Rule::Braid, 0, Forward)])
        }
        (false, Plus, Minus) => {
            sys.declare_intersect("a", "b", "ab").unwrap();
            (
                word(&[pos("a"), neg("b")]),
                word(&[neg("ab"), pos("a")]),
                vec![step(Rule::Cancel(neg("ab")), 0, Backward), step(Rule::Braid, 1, Backward), step(Rule::Cancel(pos("b")), 2, Forward)],
            )
        }
        (false, Minus, Plus) => {
            // a · ba = b · a
            sys.declare_intersect("a", "ba", "b").unwrap();
            (
                word(&[neg("a"), pos("b")]),
                word(&[pos("ba"), neg("a")]),
                vec![step(Rule::Cancel(pos("a")), 2, Backward), step(Rule::Braid, 1, Backward), step(Rule::Cancel(neg("a")), 0, Forward)],
            )
        }
        (false, Minus, Minus) => {
            sys.declare_intersect("a", "ba", "b").unwrap();
            (
                word(&[neg("a"), neg("b")]),
                word(&[neg("ba"), neg("a")]),
                vec![
                    step(Rule::Cancel(neg("ba")), 0, Backward),
                    step(Rule::Cancel(neg("a")), 1, Backward),
                    step(Rule::Braid, 2, Forward),
                    step(Rule::Cancel(pos("a")), 3, Forward),
                    step(Rule::Cancel(pos("b")), 2, Forward),
                ],
            )
        }
        (true, Plus, d) => {
            // b · ab = a · b
            sys.declare_intersect("b", "ab", "a").unwrap();
            if d == Plus {
                (word(&[pos("a"), pos("b")]), word(&[pos("b"), pos("ab")]), vec![step(Rule::Braid, 0, Backward)])
            } else {
                (
                    word(&[neg("a"), pos("b")]),
                    word(&[pos("b"), neg("ab")]),
                    vec![step(Rule::Cancel(pos("ab")), 2, Backward), step(Rule::Braid, 1, Forward), step(Rule::Cancel(neg("a")), 0, Forward)],
                )
            }
        }
        (true, Minus, d) => {
            // b · a = ba · b
            sys.declare_intersect("b", "a", "ba").unwrap();
            if d == Plus {
                (
                    word(&[pos("a"), neg("b")]),
                    word(&[neg("b"), pos("ba")]),
                    vec![step(Rule::Cancel(neg("b")), 0, Backward), step(Rule::Braid, 1, Forward), step(Rule::Cancel(pos("b")), 2, Forward)],
                )
            } else {
                (
                    word(&[neg("a"), neg("b")]),
                    word(&[neg("b"), neg("ba")]),
                    vec![
                        step(Rule::Cancel(neg("b")), 0, Backward),
                        step(Rule::Cancel(neg("ba")), 1, Backward),
                        step(Rule::Braid, 2, Backward),
                        step(Rule::Cancel(pos("a")), 3, Forward),
                        step(Rule::Cancel(pos("b")), 2, Forward),
                    ],
                )
            }
        }
    };
    let side = if right { "right" } else { "left" };
    Certificate { name: format!("handleslide_variant({eps},{delta},{side})"), system: sys, start, target, steps }
}

/// The k = 0 lantern destabilization. The lantern used here has d1, d2, d4
/// as its interior curves and ab, d3 among its boundary curves; s1 and s2
/// are the two stabilizing curves.
pub fn lantern_destabilization() -> Certificate {
    use Dir::*;
    let mut sys = CurveSystem::new(&["d1", "d2", "d3", "d4", "ab", "s1", "s2"]);
    sys.declare_lantern(["d1", "d2", "d4", "ab", "d3", "s2", "s1"]).unwrap();
    sys.declare_stabilizing("s1").unwrap();
    sys.declare_stabilizing("s2").unwrap();
    Certificate {
        name: "lantern_destabilization(0)".into(),
        system: sys,
        start: word(&[pos("d1"), pos("d2"), pos("d4"), neg("ab")]),
        target: word(&[pos("d3")]),
        steps: vec![
            step(Rule::Lantern, 0, Forward),
            step(Rule::Cancel(pos("ab")), 3, Forward),
            step(Rule::Destabilize("s1".into()), 0, Forward),
            step(Rule::Destabilize("s2".into()), 0, Forward),
        ],
    }
}

/// Names accepted by [`certificate`].
pub fn certificate_names() -> Vec<String> {
    let mut out = Vec::new();
    for side in ["left", "right"] {
        for e in ["+", "-"] {
            for d in ["+", "-"] {
                out.push(format!("handleslide_variant({e},{d},{side})"));
            }
        }
    }
    out.push("lantern_destabilization(0)".into());
    out
}

/// Looks up a shipped certificate. `handleslide_variant(e,d)` means the left side.
pub fn certificate(name: &str) -> Result<Certificate, McgError> {
    let compact: String = name.chars().filter(|c| !c.is_whitespace()).collect();
    if compact == "lantern_destabilization(0)" || compact == "lantern_destabilization" {
        return Ok(lantern_destabilization());
    }
    let unknown = || McgError::UnknownCertificate(name.to_string());
    let args = compact
        .strip_prefix("handleslide_variant(")
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(unknown)?;
    let parts: Vec<&str> = args.split(',').collect();
    let sign = |s: &str| match s {
        "+" => Ok(Sign::Plus),
        "-" => Ok(Sign::Minus),
        _ => Err(unknown()),
    };
    let right = match parts.get(2).copied() {
        None | Some("left") => false,
        Some("right") => true,
        _ => return Err(unknown()),
    };
    if !(2..=3).contains(&parts.len()) {
        return Err(unknown());
    }
    Ok(handleslide_variant(sign(parts[0])?, sign(parts[1])?, right))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> TwistWord {
        s.parse().unwrap()
    }

    #[test]
    fn cancel_and_braid_examples() {
        let mut sys = CurveSystem::new(&["a", "b", "ab"]);
        assert_eq!(rewrite(&sys, &w("a+ a-"), &Rule::Cancel(pos("a")), 0, Dir::Forward).unwrap(), w("1"));
        assert_eq!(rewrite(&sys, &w("a- a+"), &Rule::Cancel(neg("a")), 0, Dir::Forward).unwrap(), w("1"));
        assert!(matches!(rewrite(&sys, &w("a+ b+"), &Rule::Braid, 0, Dir::Forward), Err(McgError::UndeclaredFact(_))));
        sys.declare_intersect("a", "b", "ab").unwrap();
        assert_eq!(rewrite(&sys, &w("a+ b+"), &Rule::Braid, 0, Dir::Forward).unwrap(), w("ab+ a+"));
        assert_eq!(rewrite(&sys, &w("ab+ a+"), &Rule::Braid, 0, Dir::Backward).unwrap(), w("a+ b+"));
        assert!(matches!(rewrite(&sys, &w("a+ b-"), &Rule::Braid, 0, Dir::Forward), Err(McgError::RuleMismatch(_))));
        assert!(matches!(rewrite(&sys, &w("a+ b+"), &Rule::Commute, 0, Dir::Forward), Err(McgError::UndeclaredFact(_))));
    }

    #[test]
    fn lantern_and_chain_rules() {
        let f = parse_mcg("curves: a b ab d1 d2 d3 d4\nlantern a b ab d1 d2 d3 d4\n").unwrap();
        let out = rewrite(&f.system, &w("a+ b+ ab+"), &Rule::Lantern, 0, Dir::Forward).unwrap();
        assert_eq!(out, w("d4+ d3+ d2+ d1+"));
        assert_eq!(rewrite(&f.system, &out, &Rule::Lantern, 0, Dir::Backward).unwrap(), w("a+ b+ ab+"));
        assert!(f.system.disjoint("d1", "ab"));

        let f = parse_mcg("curves: a b c d1 d2\nchain a b c d1 d2\n").unwrap();
        let src = w(&["a+ b+ c+"; 4].join(" "));
        let out = rewrite(&f.system, &src, &Rule::Chain, 0, Dir::Forward).unwrap();
        assert_eq!(out, w("d2+ d1+"));
        assert_eq!(src.len() as isize - out.len() as isize, 10);
    }

    #[test]
    fn surgery_words() {
        use crate::surgery::parse_surg;
        assert!(word_of_surgery_link(&SurgeryDiagram::empty(), &[]).unwrap().is_empty());
        let d = parse_surg("front u\nL 1\nR 1\norient: c1=+\ncoeffs: c1=-1\n").unwrap();
        assert_eq!(word_of_surgery_link(&d, &["a"]).unwrap(), w("a+"));
        let d = parse_surg("front u\nL 1\nR 1\nL 1\nR 1\norient: c1=+ c2=+\ncoeffs: c1=-1 c2=+1\n").unwrap();
        assert_eq!(word_of_surgery_link(&d, &["b", "a"]).unwrap(), w("a- b+"));
    }

    #[test]
    fn mcg_file_round_trip() {
        let f = parse_mcg("curves: a b ab c\nintersect a b -> ab\ndisjoint a c\nword w1: a+ b+ ab-\n").unwrap();
        assert_eq!(f.words, vec![("w1".to_string(), w("a+ b+ ab-"))]);
        assert!(f.system.disjoint("c", "a"));
        assert!(matches!(parse_mcg("curves: a\nintersect a a -> a\n"), Err(McgError::Syntax { line: 2, .. })));
        assert!(matches!(parse_mcg("curves: a\nword w: z+\n"), Err(McgError::Syntax { line: 2, .. })));
    }

    #[test]
    fn shipped_certificates_replay_both_ways() {
        for name in certificate_names() {
            let c = certificate(&name).unwrap();
            c.replay().unwrap();
            c.inverse().replay().unwrap();
        }
    }
}
