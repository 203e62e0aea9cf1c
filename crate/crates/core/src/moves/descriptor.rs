use super::MoveError;
use crate::front::Direction;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MoveTag {
    CancelInsert,
    CancelRemove,
    HandleSlide,
    Lantern,
    Chain,
    UnframedSlide,
}

impl MoveTag {
    pub const ALL: [MoveTag; 6] = [
        MoveTag::CancelInsert,
        MoveTag::CancelRemove,
        MoveTag::HandleSlide,
        MoveTag::Lantern,
        MoveTag::Chain,
        MoveTag::UnframedSlide,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MoveTag::CancelInsert => "cancel-insert",
            MoveTag::CancelRemove => "cancel-remove",
            MoveTag::HandleSlide => "handle-slide",
            MoveTag::Lantern => "lantern",
            MoveTag::Chain => "chain",
            MoveTag::UnframedSlide => "unframed-slide",
        }
    }

    pub fn from_name(s: &str) -> Option<MoveTag> {
        let s = s.to_ascii_lowercase().replace('_', "-");
        match s.as_str() {
            "cancel" => Some(MoveTag::CancelInsert),
            "slide" => Some(MoveTag::HandleSlide),
            _ => MoveTag::ALL.into_iter().find(|t| t.name() == s),
        }
    }
}

impl fmt::Display for MoveTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which member of a cancelling pair carries +1: the first (lower index)
/// or the second.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PairOrder {
    PlusMinus,
    MinusPlus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MoveParams {
    /// `indices` name the pair (LinkingData indices) when it is removed.
    Cancel { t: i64, rho: i64, ell: Vec<i64>, order: PairOrder, indices: Vec<usize> },
    /// Handle slides use LinkingData indices; unframed slides use component
    /// indices since the rider has no row. The two `ell` vectors only feed the
    /// Schur model. `below` picks the copy-below variant.
    Slide { rider: usize, over: usize, sign: i64, below: bool, ell_rider: Vec<i64>, ell_over: Vec<i64> },
    Lantern { indices: Vec<usize>, w2l: Vec<i64>, w2r: Vec<i64>, w3l: Vec<i64>, w3r: Vec<i64> },
    Chain { indices: Vec<usize>, ell1: Vec<i64>, ell2: Vec<i64>, ell3: Vec<i64> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveDescriptor {
    pub tag: MoveTag,
    pub direction: Direction,
    pub params: MoveParams,
}

impl MoveDescriptor {
    pub fn cancel_insert(t: i64, rho: i64, ell: Vec<i64>) -> Self {
        MoveDescriptor {
            tag: MoveTag::CancelInsert,
            direction: Direction::Forward,
            params: MoveParams::Cancel { t, rho, ell, order: PairOrder::PlusMinus, indices: vec![] },
        }
    }

    pub fn cancel_remove(indices: (usize, usize), t: i64, rho: i64, ell: Vec<i64>) -> Self {
        MoveDescriptor {
            tag: MoveTag::CancelRemove,
            direction: Direction::Forward,
            params: MoveParams::Cancel { t, rho, ell, order: PairOrder::PlusMinus, indices: vec![indices.0, indices.1] },
        }
    }

    pub fn handle_slide(rider: usize, over: usize, sign: i64) -> Self {
        MoveDescriptor {
            tag: MoveTag::HandleSlide,
            direction: Direction::Forward,
            params: MoveParams::Slide { rider, over, sign, below: false, ell_rider: vec![], ell_over: vec![] },
        }
    }

    pub fn unframed_slide(rider: usize, over: usize, sign: i64) -> Self {
        MoveDescriptor {
            tag: MoveTag::UnframedSlide,
            direction: Direction::Forward,
            params: MoveParams::Slide { rider, over, sign, below: false, ell_rider: vec![], ell_over: vec![] },
        }
    }

    pub fn lantern(indices: Vec<usize>, w: [Vec<i64>; 4]) -> Self {
        let [w2l, w2r, w3l, w3r] = w;
        MoveDescriptor {
            tag: MoveTag::Lantern,
            direction: Direction::Forward,
            params: MoveParams::Lantern { indices, w2l, w2r, w3l, w3r },
        }
    }

    pub fn chain(indices: Vec<usize>, ell: [Vec<i64>; 3]) -> Self {
        let [ell1, ell2, ell3] = ell;
        MoveDescriptor { tag: MoveTag::Chain, direction: Direction::Forward, params: MoveParams::Chain { indices, ell1, ell2, ell3 } }
    }

    pub fn backward(mut self) -> Self {
        self.direction = self.direction.reverse();
        self
    }

    /// Cancel moves reduce to "insert" or "remove" once direction is folded in.
    pub fn inserts_pair(&self) -> bool {
        matches!(
            (self.tag, self.direction),
            (MoveTag::CancelInsert, Direction::Forward) | (MoveTag::CancelRemove, Direction::Backward)
        )
    }

    /// The descriptor undoing this one. Removal needs to know where the pair
    /// landed, so `created` fills in the indices for an insertion.
    pub fn inverse(&self, created: &[usize]) -> MoveDescriptor {
        let mut m = self.clone().backward();
        if let MoveParams::Cancel { indices, .. } = &mut m.params {
            if self.inserts_pair() {
                *indices = created.to_vec();
            } else {
                indices.clear();
            }
        }
        m
    }
}

fn join(v: &[i64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn join_idx(v: &[usize]) -> String {
    v.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for MoveDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.tag, self.direction)?;
        match &self.params {
            MoveParams::Cancel { t, rho, ell, order, indices } => {
                if !indices.is_empty() {
                    write!(f, " idx={}", join_idx(indices))?;
                }
                let o = if *order == PairOrder::PlusMinus { "+-" } else { "-+" };
                write!(f, " t={t} rho={rho} ell={} order={o}", join(ell))
            }
            MoveParams::Slide { rider, over, sign, below, ell_rider, ell_over } => {
                write!(f, " rider={} over={} sign={sign} copy={}", rider + 1, over + 1, if *below { "below" } else { "above" })?;
                if !ell_rider.is_empty() || !ell_over.is_empty() {
                    write!(f, " ell-rider={} ell-over={}", join(ell_rider), join(ell_over))?;
                }
                Ok(())
            }
            MoveParams::Lantern { indices, w2l, w2r, w3l, w3r } => write!(
                f,
                " idx={} w2l={} w2r={} w3l={} w3r={}",
                join_idx(indices),
                join(w2l),
                join(w2r),
                join(w3l),
                join(w3r)
            ),
            MoveParams::Chain { indices, ell1, ell2, ell3 } => {
                write!(f, " idx={} ell1={} ell2={} ell3={}", join_idx(indices), join(ell1), join(ell2), join(ell3))
            }
        }
    }
}

fn ints(v: &str) -> Result<Vec<i64>, MoveError> {
    if v.is_empty() {
        return Ok(vec![]);
    }
    v.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| MoveError::IndexError(format!("'{x}' is not an integer"))))
        .collect()
}

fn indices(v: &str) -> Result<Vec<usize>, MoveError> {
    ints(v)?
        .into_iter()
        .map(|x| if x >= 1 { Ok(x as usize - 1) } else { Err(MoveError::IndexError(format!("indices are 1-based, got {x}"))) })
        .collect()
}

fn one_index(v: &str) -> Result<usize, MoveError> {
    let v = v.trim_start_matches('c');
    match indices(v)?.as_slice() {
        [i] => Ok(*i),
        _ => Err(MoveError::IndexError(format!("expected one index, got '{v}'"))),
    }
}

/// Parses `<tag> [forward|backward] key=value ...`. Indices are 1-based and
/// vectors are comma separated (`ell=` is the empty vector).
pub fn parse_descriptor(text: &str) -> Result<MoveDescriptor, MoveError> {
    let mut toks = text.split_whitespace();
    let tag_tok = toks.next().ok_or_else(|| MoveError::PatternMismatch("empty move descriptor".into()))?;
    let tag = MoveTag::from_name(tag_tok).ok_or_else(|| MoveError::PatternMismatch(format!("unknown move '{tag_tok}'")))?;
    let mut direction = Direction::Forward;
    let mut kv = std::collections::BTreeMap::new();
    for tok in toks {
        if let Ok(d) = tok.parse::<Direction>() {
            direction = d;
            continue;
        }
        let (k, v) = tok.split_once('=').ok_or_else(|| MoveError::PatternMismatch(format!("expected key=value, got '{tok}'")))?;
        kv.insert(k.to_string(), v.to_string());
    }
    let mut take = |k: &str| kv.remove(k);
    let vec_of = |v: Option<String>| ints(v.as_deref().unwrap_or(""));
    let params = match tag {
        MoveTag::CancelInsert | MoveTag::CancelRemove => {
            let order = match take("order").as_deref() {
                None | Some("+-") => PairOrder::PlusMinus,
                Some("-+") => PairOrder::MinusPlus,
                Some(o) => return Err(MoveError::PatternMismatch(format!("order must be +- or -+, got '{o}'"))),
            };
            let int = |v: Option<String>, d: i64| -> Result<i64, MoveError> {
                v.map_or(Ok(d), |s| s.parse().map_err(|_| MoveError::IndexError(format!("'{s}' is not an integer"))))
            };
            MoveParams::Cancel {
                t: int(take("t"), -1)?,
                rho: int(take("rho"), 0)?,
                ell: vec_of(take("ell"))?,
                order,
                indices: indices(take("idx").as_deref().unwrap_or(""))?,
            }
        }
        MoveTag::HandleSlide | MoveTag::UnframedSlide => {
            let need = |v: Option<String>, k: &str| v.ok_or_else(|| MoveError::IndexError(format!("missing {k}=")));
            let rider = one_index(&need(take("rider"), "rider")?)?;
            let over = one_index(&need(take("over"), "over")?)?;
            let sign: i64 = need(take("sign"), "sign")?
                .trim_start_matches('+')
                .parse()
                .map_err(|_| MoveError::IndexError("sign must be +1 or -1".into()))?;
            if sign.abs() != 1 {
                return Err(MoveError::IndexError("sign must be +1 or -1".into()));
            }
            let below = match take("copy").as_deref() {
                None | Some("above") => false,
                Some("below") => true,
                Some(o) => return Err(MoveError::PatternMismatch(format!("copy must be above or below, got '{o}'"))),
            };
            MoveParams::Slide {
                rider,
                over,
                sign,
                below,
                ell_rider: vec_of(take("ell-rider"))?,
                ell_over: vec_of(take("ell-over"))?,
            }
        }
        MoveTag::Lantern => MoveParams::Lantern {
            indices: indices(take("idx").as_deref().unwrap_or(""))?,
            w2l: vec_of(take("w2l"))?,
            w2r: vec_of(take("w2r"))?,
            w3l: vec_of(take("w3l"))?,
            w3r: vec_of(take("w3r"))?,
        },
        MoveTag::Chain => MoveParams::Chain {
            indices: indices(take("idx").as_deref().unwrap_or(""))?,
            ell1: vec_of(take("ell1"))?,
            ell2: vec_of(take("ell2"))?,
            ell3: vec_of(take("ell3"))?,
        },
    };
    if let Some(k) = kv.keys().next() {
        return Err(MoveError::PatternMismatch(format!("unknown key '{k}' for {tag}")));
    }
    Ok(MoveDescriptor { tag, direction, params })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptors_round_trip_through_text() {
        for text in [
            "cancel-insert forward t=-1 rho=0 ell=1,2 order=+-",
            "cancel-remove forward idx=1,2 t=3 rho=0 ell= order=-+",
            "handle-slide backward rider=2 over=1 sign=-1 copy=below",
            "lantern forward idx=1,2,3 w2l=1 w2r=1 w3l=3 w3r=-1",
            "chain backward idx=1,2 ell1= ell2= ell3=",
        ] {
            let d = parse_descriptor(text).unwrap();
            assert_eq!(d.to_string(), text);
        }
        assert!(parse_descriptor("lantern idx=1 bogus=2").is_err());
        assert!(parse_descriptor("shuffle").is_err());
    }
}
