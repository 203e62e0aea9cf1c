//! Shipped move templates and their `.frag` format.
//!
//! A template file has a `front <name>` header and two sections opened by
//! `side left` and `side right`. Each side lists optional `pass <slot>`
//! lines, its events, then `orient:`, `coeffs:` and `roles:` blocks keyed by
//! the closed components of that side. `roles:` lists the components in role
//! order. A final `map:` block pairs the pass slots of the two sides.

use super::diagram::coherent_data;
use super::{apply_template_move, model_for, MoveDescriptor, MoveError, MoveParams};
use crate::front::{
    keyed_tokens, parse_orient_block, split_front_text, ComponentMap, FrontDiagram, Sign, Window, Word,
};
use crate::surgery::{linking_data, Decoration, LinkingData, SurgeryDiagram};
use std::sync::OnceLock;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TemplateSide {
    pub label: String,
    pub passes: Vec<String>,
    pub word: Word,
    /// Number of closed components; they come first in canonical order.
    pub closed: usize,
    pub orient: Vec<Sign>,
    pub coeffs: Vec<Sign>,
    pub roles: Vec<String>,
    rank: Vec<usize>,
    /// Extra `key: value` blocks, e.g. the band column of a slide.
    pub extra: Vec<(String, String)>,
}

impl TemplateSide {
    /// Position of closed component `c` in role order.
    pub fn role_rank(&self, c: usize) -> usize {
        self.rank[c]
    }

    /// Closed components listed in role order.
    pub fn by_role(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.closed).collect();
        v.sort_by_key(|&c| self.rank[c]);
        v
    }

    pub fn extra(&self, key: &str) -> Option<&str> {
        self.extra.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    /// The side as a closed surgery diagram (no pass slots).
    pub fn diagram(&self) -> Result<SurgeryDiagram, MoveError> {
        if self.word.inputs != 0 {
            return Err(MoveError::Template(format!("{} side has pass-through strands", self.label)));
        }
        Ok(SurgeryDiagram::new(
            FrontDiagram::new(self.word.events.clone())?,
            self.coeffs.iter().map(|&s| Decoration::Framed(s)).collect(),
            self.orient.clone(),
        )?)
    }

    /// Linking data with rows in role order.
    pub fn role_data(&self) -> Result<LinkingData, MoveError> {
        Ok(linking_data(&self.diagram()?)?.permuted(&self.by_role()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveTemplate {
    pub name: String,
    pub left: TemplateSide,
    pub right: TemplateSide,
    pub map: Vec<(String, String)>,
}

fn bad(line: usize, msg: impl Into<String>) -> MoveError {
    MoveError::Template(format!("line {line}: {}", msg.into()))
}

fn parse_side(label: &str, lines: &[(usize, &str)]) -> Result<TemplateSide, MoveError> {
    let mut passes = Vec::new();
    let mut rest = String::new();
    let mut first_line = lines.first().map_or(0, |l| l.0);
    for &(line, t) in lines {
        if let Some(slot) = t.strip_prefix("pass ") {
            if !rest.is_empty() {
                return Err(bad(line, "pass lines must precede the events"));
            }
            passes.push(slot.trim().to_string());
            first_line = line + 1;
        } else {
            rest.push_str(t);
            rest.push('\n');
        }
    }
    let (_, events, blocks) = split_front_text(&rest).map_err(|e| bad(first_line, e.to_string()))?;
    let word = Word::new(passes.len(), events).map_err(|e| bad(first_line, e.to_string()))?;
    if word.outputs() != passes.len() {
        return Err(bad(first_line, format!("{label} side ends with {} strands, expected {}", word.outputs(), passes.len())));
    }
    let map = ComponentMap::of_word(&word);
    let closed = (0..map.count()).filter(|&c| map.anchor(c).is_some()).count();
    let mut orient = vec![None; closed];
    let mut coeffs = vec![None; closed];
    let mut roles = vec![String::new(); closed];
    let mut rank = vec![usize::MAX; closed];
    let mut extra = Vec::new();
    for (off, key, val) in blocks {
        let line = first_line + off - 1;
        match key.as_str() {
            "orient" => orient = parse_orient_block(&val, line, closed)?,
            "coeffs" => {
                for (c, v) in keyed_tokens(&val, line)? {
                    let s = match v {
                        "+1" | "1" => Sign::Plus,
                        "-1" => Sign::Minus,
                        _ => return Err(bad(line, format!("coefficient must be +1 or -1, got '{v}'"))),
                    };
                    *coeffs.get_mut(c).ok_or_else(|| bad(line, format!("no closed component c{}", c + 1)))? = Some(s);
                }
            }
            "roles" => {
                for (r, (c, v)) in keyed_tokens(&val, line)?.into_iter().enumerate() {
                    if c >= closed {
                        return Err(bad(line, format!("no closed component c{}", c + 1)));
                    }
                    roles[c] = v.to_string();
                    rank[c] = r;
                }
            }
            _ => extra.push((key, val)),
        }
    }
    let missing = |what: &str| MoveError::Template(format!("{label} side: every closed component needs {what}"));
    let orient = orient.into_iter().collect::<Option<Vec<_>>>().ok_or_else(|| missing("an orientation"))?;
    let coeffs = coeffs.into_iter().collect::<Option<Vec<_>>>().ok_or_else(|| missing("a coefficient"))?;
    if rank.contains(&usize::MAX) {
        return Err(missing("a role"));
    }
    Ok(TemplateSide { label: label.to_string(), passes, word, closed, orient, coeffs, roles, rank, extra })
}

pub fn parse_template(text: &str) -> Result<MoveTemplate, MoveError> {
    let mut name = None;
    let mut sides: Vec<(String, Vec<(usize, &str)>)> = Vec::new();
    let mut map = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        if let Some(n) = t.strip_prefix("front") {
            if name.is_some() || !sides.is_empty() {
                return Err(bad(line, "header must come first"));
            }
            name = Some(n.trim().to_string());
        } else if let Some(s) = t.strip_prefix("side ") {
            sides.push((s.trim().to_string(), Vec::new()));
        } else if let Some(m) = t.strip_prefix("map:") {
            for tok in m.split_whitespace() {
                let (a, b) = tok.split_once('=').ok_or_else(|| bad(line, format!("expected slot=slot, got '{tok}'")))?;
                map.push((a.to_string(), b.to_string()));
            }
        } else {
            let (_, body) = sides.last_mut().ok_or_else(|| bad(line, "content before the first side"))?;
            body.push((line, t));
        }
    }
    let find = |label: &str| -> Result<TemplateSide, MoveError> {
        let (_, body) = sides
            .iter()
            .find(|(l, _)| l == label)
            .ok_or_else(|| MoveError::Template(format!("missing side {label}")))?;
        parse_side(label, body)
    };
    let (left, right) = (find("left")?, find("right")?);
    let mut seen_l: Vec<&String> = map.iter().map(|(a, _)| a).collect();
    let mut seen_r: Vec<&String> = map.iter().map(|(_, b)| b).collect();
    seen_l.sort();
    seen_r.sort();
    let mut pl: Vec<&String> = left.passes.iter().collect();
    let mut pr: Vec<&String> = right.passes.iter().collect();
    pl.sort();
    pr.sort();
    if seen_l != pl || seen_r != pr {
        return Err(MoveError::Template("map: must pair every pass slot of one side with one of the other".into()));
    }
    // splicing keeps boundary strands in place, so the pairing must keep order
    for (a, b) in &map {
        let i = left.passes.iter().position(|x| x == a);
        let j = right.passes.iter().position(|x| x == b);
        if i != j {
            return Err(MoveError::Template(format!("slot {a} -> {b} reorders the boundary")));
        }
    }
    Ok(MoveTemplate { name: name.unwrap_or_default(), left, right, map })
}

pub fn serialize_side(side: &TemplateSide) -> String {
    let mut out = format!("side {}\n", side.label);
    for p in &side.passes {
        out.push_str(&format!("pass {p}\n"));
    }
    for e in &side.word.events {
        out.push_str(&format!("{e}\n"));
    }
    let keyed = |f: &dyn Fn(usize) -> String| (0..side.closed).map(|c| format!("c{}={}", c + 1, f(c))).collect::<Vec<_>>().join(" ");
    out.push_str(&format!("orient: {}\n", keyed(&|c| side.orient[c].to_string())));
    out.push_str(&format!("coeffs: {}\n", keyed(&|c| format!("{}1", side.coeffs[c]))));
    let roles: Vec<String> = side.by_role().iter().map(|&c| format!("c{}={}", c + 1, side.roles[c])).collect();
    out.push_str(&format!("roles: {}\n", roles.join(" ")));
    for (k, v) in &side.extra {
        out.push_str(&format!("{k}: {v}\n"));
    }
    out
}

pub const SHIPPED: [(&str, &str); 5] = [
    ("cancel", include_str!("../../templates/cancel.frag")),
    ("slide_a", include_str!("../../templates/slide_a.frag")),
    ("slide_b", include_str!("../../templates/slide_b.frag")),
    ("lantern", include_str!("../../templates/lantern.frag")),
    ("chain", include_str!("../../templates/chain.frag")),
];

/// A parsed shipped template, by file stem.
pub fn shipped(name: &str) -> Result<MoveTemplate, MoveError> {
    static CACHE: OnceLock<Vec<(&'static str, Result<MoveTemplate, MoveError>)>> = OnceLock::new();
    let all = CACHE.get_or_init(|| SHIPPED.iter().map(|(n, t)| (*n, parse_template(t))).collect());
    all.iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| t.clone())
        .unwrap_or_else(|| Err(MoveError::Template(format!("no shipped template '{name}'"))))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TemplateCheck {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

fn local_matches(side: &TemplateSide, a: &[Vec<i64>], rot: &[i64], what: &str) -> Result<(), String> {
    let data = side.role_data().map_err(|e| e.to_string())?;
    if data.q != a || data.r != rot {
        return Err(format!("{what}: template gives Q = {:?}, r = {:?}; expected {a:?}, {rot:?}", data.q, data.r));
    }
    Ok(())
}

fn check_one(name: &str) -> Result<String, String> {
    let tpl = shipped(name).map_err(|e| e.to_string())?;
    let role_idx = |s: &TemplateSide| -> Vec<usize> { (0..s.closed).collect() };
    match name {
        "cancel" => {
            let m = MoveDescriptor::cancel_insert(-1, 0, vec![]);
            let model = model_for(&m).map_err(|e| e.to_string())?;
            if tpl.left.closed != 0 {
                return Err("left side must be empty".into());
            }
            local_matches(&tpl.right, &model.after.a, &model.after.rot, "pair")?;
            let coeffs: Vec<Sign> = tpl.right.by_role().iter().map(|&c| tpl.right.coeffs[c]).collect();
            if coeffs != [Sign::Plus, Sign::Minus] {
                return Err("pair must carry (+1, -1) in role order".into());
            }
            let out = apply_template_move(&SurgeryDiagram::empty(), &m, Window::columns(0, 0)).map_err(|e| e.to_string())?;
            let (a, e) = coherent_data(&SurgeryDiagram::empty(), &out.diagram, &out.map, &m).map_err(|e| e.to_string())?;
            if a != e {
                return Err(format!("insertion gives {a}, matrix move gives {e}"));
            }
            Ok(format!("pair {}", tpl.right.role_data().unwrap()))
        }
        "slide_a" | "slide_b" => {
            let below = name == "slide_b";
            let d = tpl.left.diagram().map_err(|e| e.to_string())?;
            let roles = tpl.left.by_role();
            let (rider, over) = (roles[0], roles[1]);
            let band: usize = tpl
                .left
                .extra("band")
                .and_then(|v| v.parse::<usize>().ok())
                .filter(|&b| b >= 1)
                .ok_or("left side needs a 'band: <column>' line")?;
            let data = tpl.left.role_data().map_err(|e| e.to_string())?;
            let sign = data.q[0][1];
            let mut m = MoveDescriptor::handle_slide(d.framed().iter().position(|&c| c == rider).unwrap(), d.framed().iter().position(|&c| c == over).unwrap(), sign);
            if let MoveParams::Slide { below: b, .. } = &mut m.params {
                *b = below;
            }
            let model = model_for(&MoveDescriptor::handle_slide(0, 1, sign)).map_err(|e| e.to_string())?;
            local_matches(&tpl.left, &model.before.a, &model.before.rot, "left side")?;
            let out = apply_template_move(&d, &m, Window::columns(band - 1, band - 1)).map_err(|e| e.to_string())?;
            if out.diagram.front.events() != tpl.right.word.events.as_slice() {
                return Err(format!("slide construction gives {}, template right side differs", out.diagram.front));
            }
            let want: Vec<Option<Sign>> = tpl.right.orient.iter().map(|&s| Some(s)).collect();
            if out.diagram.orient != want {
                return Err(format!("slide construction orients the result as {:?}", out.diagram.orient));
            }
            local_matches(&tpl.right, &model.after.a, &model.after.rot, "right side")?;
            let (a, e) = coherent_data(&d, &out.diagram, &out.map, &m).map_err(|e| e.to_string())?;
            if a != e {
                return Err(format!("slide gives {a}, matrix move gives {e}"));
            }
            Ok(format!("band sign {sign:+}"))
        }
        "lantern" | "chain" => {
            let (m, model) = if name == "lantern" {
                let m = MoveDescriptor::lantern(role_idx(&tpl.left), Default::default());
                (m.clone(), model_for(&m).map_err(|e| e.to_string())?)
            } else {
                let m = MoveDescriptor::chain(role_idx(&tpl.left), Default::default());
                (m.clone(), model_for(&m).map_err(|e| e.to_string())?)
            };
            local_matches(&tpl.left, &model.before.a, &model.before.rot, "left side")?;
            local_matches(&tpl.right, &model.after.a, &model.after.rot, "right side")?;
            if tpl.left.coeffs.iter().chain(&tpl.right.coeffs).any(|&s| s != Sign::Minus) {
                return Err("every component must carry -1".into());
            }
            // the descriptor names the window's components in role order
            let d = tpl.left.diagram().map_err(|e| e.to_string())?;
            let fr = d.framed();
            let idx: Vec<usize> = tpl.left.by_role().iter().map(|c| fr.iter().position(|x| x == c).unwrap()).collect();
            let m = match m.params {
                MoveParams::Lantern { w2l, w2r, w3l, w3r, .. } => MoveDescriptor::lantern(idx, [w2l, w2r, w3l, w3r]),
                MoveParams::Chain { ell1, ell2, ell3, .. } => MoveDescriptor::chain(idx, [ell1, ell2, ell3]),
                _ => unreachable!(),
            };
            let window = Window::columns(0, d.front.len());
            let out = apply_template_move(&d, &m, window).map_err(|e| e.to_string())?;
            let (a, e) = coherent_data(&d, &out.diagram, &out.map, &m).map_err(|e| e.to_string())?;
            if a != e {
                return Err(format!("diagram gives {a}, matrix move gives {e}"));
            }
            Ok(format!("{} -> {} components", tpl.left.closed, tpl.right.closed))
        }
        _ => Err(format!("unknown template {name}")),
    }
}

/// Re-validates every shipped template: parsing, local matrices against the
/// published blocks, and agreement of the diagram and matrix levels.
pub fn check_templates() -> Vec<TemplateCheck> {
    SHIPPED
        .iter()
        .map(|(name, _)| match check_one(name) {
            Ok(detail) => TemplateCheck { name: name.to_string(), ok: true, detail },
            Err(detail) => TemplateCheck { name: name.to_string(), ok: false, detail },
        })
        .collect()
}
