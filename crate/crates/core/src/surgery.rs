//! Surgery decorations on a front and the linking data they determine.

use crate::front::{
    self, classical_invariants, linking_number, parse_orient_block, split_front_text, trace_components, FrontDiagram,
    FrontError, Orientation, Sign,
};
use crate::linalg::{rat, Rational, SymMatrix};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurgeryError {
    #[error(transparent)]
    Front(#[from] FrontError),
    #[error("component c{} has no orientation", .0 + 1)]
    MissingOrientation(usize),
    #[error("component c{} has no surgery coefficient", .0 + 1)]
    MissingCoefficient(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("linking data: {0}")]
    Invalid(String),
}

/// Contact surgery decoration of one component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Decoration {
    Framed(Sign),
    Unframed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurgeryDiagram {
    pub name: String,
    pub front: FrontDiagram,
    pub coeffs: Vec<Option<Decoration>>,
    pub orient: Vec<Option<Sign>>,
}

impl SurgeryDiagram {
    /// Decorates every component; lengths must match the component count.
    pub fn new(front: FrontDiagram, coeffs: Vec<Decoration>, orient: Vec<Sign>) -> Result<Self, SurgeryError> {
        let n = trace_components(&front).count();
        for len in [coeffs.len(), orient.len()] {
            if len != n {
                return Err(SurgeryError::DimensionMismatch { expected: n, got: len });
            }
        }
        Ok(SurgeryDiagram {
            name: String::new(),
            front,
            coeffs: coeffs.into_iter().map(Some).collect(),
            orient: orient.into_iter().map(Some).collect(),
        })
    }

    pub fn empty() -> Self {
        SurgeryDiagram { name: String::new(), front: FrontDiagram::empty(), coeffs: vec![], orient: vec![] }
    }

    pub fn component_count(&self) -> usize {
        self.coeffs.len()
    }

    /// Indices of components that carry a coefficient, in canonical order.
    pub fn framed(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&c| self.coeffs[c] != Some(Decoration::Unframed)).collect()
    }

    pub fn orientation(&self) -> Result<Orientation, SurgeryError> {
        self.orient
            .iter()
            .enumerate()
            .map(|(c, s)| s.ok_or(SurgeryError::MissingOrientation(c)))
            .collect::<Result<Vec<_>, _>>()
            .map(Orientation)
    }

    pub fn coefficient(&self, c: usize) -> Option<Sign> {
        match self.coeffs.get(c).copied().flatten() {
            Some(Decoration::Framed(s)) => Some(s),
            _ => None,
        }
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }
}

/// The tuple (Q, r, n, q).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinkingData {
    pub q: Vec<Vec<i64>>,
    pub r: Vec<i64>,
    /// Number of (+1)-components.
    pub plus: usize,
}

impl LinkingData {
    pub fn new(q: Vec<Vec<i64>>, r: Vec<i64>, plus: usize) -> Result<Self, SurgeryError> {
        let n = r.len();
        if q.len() != n {
            return Err(SurgeryError::DimensionMismatch { expected: n, got: q.len() });
        }
        for (i, row) in q.iter().enumerate() {
            if row.len() != n {
                return Err(SurgeryError::DimensionMismatch { expected: n, got: row.len() });
            }
            for j in 0..n {
                if q[i][j] != q[j][i] {
                    return Err(SurgeryError::Invalid(format!("Q is not symmetric at ({i}, {j})")));
                }
            }
            // rot and tb have opposite parity and Q(i,i) = tb ± 1
            if (q[i][i] - r[i]).rem_euclid(2) != 0 {
                return Err(SurgeryError::Invalid(format!("Q({i},{i}) = {} and r({i}) = {} differ in parity", q[i][i], r[i])));
            }
        }
        if plus > n {
            return Err(SurgeryError::Invalid(format!("q = {plus} exceeds n = {n}")));
        }
        Ok(LinkingData { q, r, plus })
    }

    pub fn empty() -> Self {
        LinkingData { q: vec![], r: vec![], plus: 0 }
    }

    pub fn n(&self) -> usize {
        self.r.len()
    }

    pub fn q_matrix(&self) -> SymMatrix {
        SymMatrix::from_int_rows(&self.q).expect("symmetric by construction")
    }

    pub fn r_vector(&self) -> Vec<Rational> {
        self.r.iter().map(|&x| rat(x)).collect()
    }

    /// Reorders rows and columns: entry `i` of the result is entry `order[i]` here.
    pub fn permuted(&self, order: &[usize]) -> LinkingData {
        LinkingData {
            q: order.iter().map(|&i| order.iter().map(|&j| self.q[i][j]).collect()).collect(),
            r: order.iter().map(|&i| self.r[i]).collect(),
            plus: self.plus,
        }
    }
}

impl fmt::Display for LinkingData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> =
            self.q.iter().map(|r| format!("({})", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))).collect();
        let r: Vec<String> = self.r.iter().map(|x| x.to_string()).collect();
        write!(f, "Q = ({}), r = ({}), n = {}, q = {}", rows.join(", "), r.join(", "), self.n(), self.plus)
    }
}

/// For each component of `front`, a local rewrite of `old_front`, the old
/// component it continues and its orientation sign. `old_col(j)` is the column
/// of `old_front` that event `j` of `front` came from, if it survived.
/// Components are matched through surviving events and keep their strand
/// directions; a single leftover pair is matched by elimination.
pub fn match_components(
    old_front: &FrontDiagram,
    old_orient: &[Option<Sign>],
    front: &FrontDiagram,
    old_col: impl Fn(usize) -> Option<usize>,
) -> Result<Vec<(usize, Option<Sign>)>, SurgeryError> {
    let omap = trace_components(old_front);
    let nmap = trace_components(front);
    let oo = Orientation(old_orient.iter().map(|s| s.unwrap_or(Sign::Plus)).collect());
    let base = Orientation::all_plus(nmap.count());
    let mut assign: Vec<Option<(usize, Option<Sign>)>> = vec![None; nmap.count()];
    for j in 0..front.len() {
        let Some(i) = old_col(j) else { continue };
        for slot in 0..2 {
            let (ns, os) = (nmap.trace.touched[j][slot], omap.trace.touched[i][slot]);
            let (nc, oc) = (nmap.component_of_segment(ns), omap.component_of_segment(os));
            if assign[nc].is_some() {
                continue;
            }
            let sign = match (old_orient[oc], omap.direction(os, &oo), nmap.direction(ns, &base)) {
                (Some(_), Some(want), Some(b)) => Some(Sign::of((want * b) as i64)),
                (o, _, _) => o,
            };
            assign[nc] = Some((oc, sign));
        }
    }
    let used: Vec<usize> = assign.iter().flatten().map(|a| a.0).collect();
    let spare_old: Vec<usize> = (0..omap.count()).filter(|c| !used.contains(c)).collect();
    let spare_new: Vec<usize> = (0..nmap.count()).filter(|&c| assign[c].is_none()).collect();
    match (spare_old.as_slice(), spare_new.as_slice()) {
        ([], []) => {}
        ([o], [n]) => assign[*n] = Some((*o, old_orient[*o])),
        _ => {
            return Err(FrontError::Validation(format!(
                "cannot match components through the rewrite ({} old, {} new unmatched)",
                spare_old.len(),
                spare_new.len()
            ))
            .into())
        }
    }
    let mut seen = vec![false; omap.count()];
    for a in assign.iter().flatten() {
        if std::mem::replace(&mut seen[a.0], true) {
            return Err(FrontError::Validation("rewrite merged two components".into()).into());
        }
    }
    Ok(assign.into_iter().map(|a| a.unwrap()).collect())
}

/// Moves the decorations of `old` onto `front`, a local rewrite of its word.
/// See [`match_components`].
pub fn carry_decorations(
    old: &SurgeryDiagram,
    front: FrontDiagram,
    old_col: impl Fn(usize) -> Option<usize>,
) -> Result<SurgeryDiagram, SurgeryError> {
    let assign = match_components(&old.front, &old.orient, &front, old_col)?;
    Ok(SurgeryDiagram {
        name: old.name.clone(),
        front,
        coeffs: assign.iter().map(|a| old.coeffs[a.0]).collect(),
        orient: assign.iter().map(|a| a.1).collect(),
    })
}

/// Linking data of the framed components. Unframed components are skipped.
pub fn linking_data(d: &SurgeryDiagram) -> Result<LinkingData, SurgeryError> {
    let map = trace_components(&d.front);
    if map.count() != d.coeffs.len() || map.count() != d.orient.len() {
        return Err(SurgeryError::DimensionMismatch { expected: map.count(), got: d.coeffs.len().min(d.orient.len()) });
    }
    let mut framed = Vec::new();
    let mut coeff = Vec::new();
    for c in 0..map.count() {
        match d.coeffs[c] {
            None => return Err(SurgeryError::MissingCoefficient(c)),
            Some(Decoration::Unframed) => {}
            Some(Decoration::Framed(s)) => {
                if d.orient[c].is_none() {
                    return Err(SurgeryError::MissingOrientation(c));
                }
                framed.push(c);
                coeff.push(s.value() as i64);
            }
        }
    }
    // unframed components may be unoriented; they never enter the data
    let o = Orientation(d.orient.iter().map(|s| s.unwrap_or(Sign::Plus)).collect());
    let n = framed.len();
    let mut q = vec![vec![0; n]; n];
    let mut r = vec![0; n];
    for (a, &c) in framed.iter().enumerate() {
        let ci = classical_invariants(&map, c, &o);
        q[a][a] = ci.tb + coeff[a];
        r[a] = ci.rot;
        for (b, &c2) in framed.iter().enumerate().skip(a + 1) {
            let lk = linking_number(&map, c, c2, &o);
            q[a][b] = lk;
            q[b][a] = lk;
        }
    }
    let plus = coeff.iter().filter(|&&x| x == 1).count();
    LinkingData::new(q, r, plus)
}

/// `Pᵀ Q P`, `Pᵀ r` with `P = diag(signs)`.
pub fn reorient(data: &LinkingData, signs: &[i64]) -> Result<LinkingData, SurgeryError> {
    if signs.len() != data.n() {
        return Err(SurgeryError::DimensionMismatch { expected: data.n(), got: signs.len() });
    }
    let n = data.n();
    let q = (0..n).map(|i| (0..n).map(|j| signs[i] * signs[j] * data.q[i][j]).collect()).collect();
    let r = (0..n).map(|i| signs[i] * data.r[i]).collect();
    Ok(LinkingData { q, r, plus: data.plus })
}

pub fn parse_surg(text: &str) -> Result<SurgeryDiagram, SurgeryError> {
    let (name, events, blocks) = split_front_text(text)?;
    let front = FrontDiagram::new(events)?;
    let n = trace_components(&front).count();
    let mut coeffs: Vec<Option<Decoration>> = vec![None; n];
    let mut orient = vec![None; n];
    for (line, key, rest) in blocks {
        match key.as_str() {
            "orient" => orient = parse_orient_block(&rest, line, n)?,
            "coeffs" => {
                for (c, v) in front::keyed_tokens(&rest, line)? {
                    let s = match v {
                        "+1" | "1" => Sign::Plus,
                        "-1" => Sign::Minus,
                        _ => {
                            return Err(FrontError::Syntax { line, msg: format!("coefficient must be +1 or -1, got '{v}'") }.into())
                        }
                    };
                    if c >= n {
                        return Err(FrontError::Validation(format!("coefficient for c{} but only {n} components", c + 1)).into());
                    }
                    coeffs[c] = Some(Decoration::Framed(s));
                }
            }
            "unframed" => {
                for tok in rest.split_whitespace() {
                    let c = front::component_token(tok, line)?;
                    if c >= n {
                        return Err(FrontError::Validation(format!("unframed c{} but only {n} components", c + 1)).into());
                    }
                    coeffs[c] = Some(Decoration::Unframed);
                }
            }
            other => return Err(FrontError::Syntax { line, msg: format!("unknown block '{other}'") }.into()),
        }
    }
    Ok(SurgeryDiagram { name, front, coeffs, orient })
}

pub fn serialize_surg(d: &SurgeryDiagram) -> String {
    let mut out = format!("front {}\n", d.name);
    front::write_events(&mut out, d.front.events());
    if let Some(o) = d.orient.iter().copied().collect::<Option<Vec<Sign>>>() {
        if !o.is_empty() {
            out.push_str(&front::orient_line(&o));
            out.push('\n');
        }
    } else {
        let toks: Vec<String> =
            d.orient.iter().enumerate().filter_map(|(c, s)| s.map(|s| format!("c{}={}", c + 1, s))).collect();
        if !toks.is_empty() {
            out.push_str(&format!("orient: {}\n", toks.join(" ")));
        }
    }
    let framed: Vec<String> = d
        .coeffs
        .iter()
        .enumerate()
        .filter_map(|(c, x)| match x {
            Some(Decoration::Framed(s)) => Some(format!("c{}={}1", c + 1, s)),
            _ => None,
        })
        .collect();
    if !framed.is_empty() {
        out.push_str(&format!("coeffs: {}\n", framed.join(" ")));
    }
    let unframed: Vec<String> = d
        .coeffs
        .iter()
        .enumerate()
        .filter(|(_, x)| **x == Some(Decoration::Unframed))
        .map(|(c, _)| format!("c{}", c + 1))
        .collect();
    if !unframed.is_empty() {
        out.push_str(&format!("unframed: {}\n", unframed.join(" ")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_diagram_data() {
        let d = parse_surg("front empty\n").unwrap();
        assert_eq!(linking_data(&d).unwrap(), LinkingData::empty());
    }

    #[test]
    fn unknot_data() {
        let plus = parse_surg("front u\nL 1\nR 1\norient: c1=+\ncoeffs: c1=+1\n").unwrap();
        let data = linking_data(&plus).unwrap();
        assert_eq!((data.q.clone(), data.r.clone(), data.n(), data.plus), (vec![vec![0]], vec![0], 1, 1));
        let minus = parse_surg("front u\nL 1\nR 1\norient: c1=+\ncoeffs: c1=-1\n").unwrap();
        let data = linking_data(&minus).unwrap();
        assert_eq!((data.q, data.plus), (vec![vec![-2]], 0));
    }

    #[test]
    fn missing_decorations() {
        let d = parse_surg("L 1\nR 1\ncoeffs: c1=-1\n").unwrap();
        assert_eq!(linking_data(&d), Err(SurgeryError::MissingOrientation(0)));
        let d = parse_surg("L 1\nR 1\norient: c1=+\n").unwrap();
        assert_eq!(linking_data(&d), Err(SurgeryError::MissingCoefficient(0)));
    }

    #[test]
    fn reorient_flips() {
        let data = LinkingData::new(vec![vec![0, 3], vec![3, -2]], vec![2, 0], 0).unwrap();
        let flipped = reorient(&data, &[-1, 1]).unwrap();
        assert_eq!(flipped.q[0][1], -3);
        assert_eq!(flipped.r, vec![-2, 0]);
        assert_eq!(reorient(&data, &[1, 1]).unwrap(), data);
        let u = LinkingData::new(vec![vec![-2]], vec![0], 0).unwrap();
        assert_eq!(reorient(&u, &[-1]).unwrap(), u);
        assert!(reorient(&u, &[1, 1]).is_err());
    }

    #[test]
    fn unframed_components_are_invisible() {
        let with = parse_surg("L1\nR1\nL1\nR1\norient: c1=+ c2=+\ncoeffs: c1=-1\nunframed: c2\n").unwrap();
        let without = parse_surg("L1\nR1\norient: c1=+\ncoeffs: c1=-1\n").unwrap();
        assert_eq!(linking_data(&with).unwrap(), linking_data(&without).unwrap());
    }

    #[test]
    fn surg_round_trip() {
        let text = "front hopf\nL 1\nL 3\nX 2\nX 2\nR 3\nR 1\norient: c1=+ c2=-\ncoeffs: c1=+1 c2=-1\n";
        let d = parse_surg(text).unwrap();
        assert_eq!(serialize_surg(&d), text);
        let text = "front r\nL 1\nR 1\nL 1\nR 1\norient: c1=+ c2=+\ncoeffs: c1=-1\nunframed: c2\n";
        assert_eq!(serialize_surg(&parse_surg(text).unwrap()), text);
    }

    #[test]
    fn parity_is_enforced() {
        assert!(LinkingData::new(vec![vec![-1]], vec![0], 0).is_err());
        assert!(LinkingData::new(vec![vec![-5]], vec![-1], 0).is_ok());
    }
}
