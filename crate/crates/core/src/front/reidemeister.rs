//! Legendrian Reidemeister moves as local word rewrites.
//!
//! Each variant is a pair of fragments parametrised by an anchor level `k`.
//! Orientation is not part of the word, so the mirror images of the first
//! move that differ only in orientation collapse to two variants.
//!
//! | variant | source            | target              | needs strands |
//! |---------|-------------------|---------------------|---------------|
//! | I.1     | (empty)           | L k+1, X k, R k+1   | k             |
//! | I.2     | (empty)           | L k, X k+1, R k     | k             |
//! | II.1    | L k+1             | L k, X k+1, X k     | k             |
//! | II.2    | L k               | L k+1, X k, X k+1   | k             |
//! | II.3    | R k+1             | X k, X k+1, R k     | k+2           |
//! | II.4    | R k               | X k+1, X k, R k+1   | k+2           |
//! | III     | X k, X k+1, X k   | X k+1, X k, X k+1   | k+2           |

use super::{strand_profile, Event, FrontDiagram, FrontError, L, R, X};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReidemeisterMove {
    I1,
    I2,
    II1,
    II2,
    II3,
    II4,
    III,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn reverse(self) -> Direction {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Forward => "forward",
            Direction::Backward => "backward",
        })
    }
}

impl FromStr for Direction {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "forward" | "fwd" => Ok(Direction::Forward),
            "backward" | "back" => Ok(Direction::Backward),
            _ => Err(format!("unknown direction '{s}'")),
        }
    }
}

impl ReidemeisterMove {
    pub const ALL: [ReidemeisterMove; 7] = [
        ReidemeisterMove::I1,
        ReidemeisterMove::I2,
        ReidemeisterMove::II1,
        ReidemeisterMove::II2,
        ReidemeisterMove::II3,
        ReidemeisterMove::II4,
        ReidemeisterMove::III,
    ];

    /// Source and target fragments at anchor level `k`.
    pub fn sides(self, k: usize) -> (Vec<Event>, Vec<Event>) {
        use ReidemeisterMove::*;
        match self {
            I1 => (vec![], vec![L(k + 1), X(k), R(k + 1)]),
            I2 => (vec![], vec![L(k), X(k + 1), R(k)]),
            II1 => (vec![L(k + 1)], vec![L(k), X(k + 1), X(k)]),
            II2 => (vec![L(k)], vec![L(k + 1), X(k), X(k + 1)]),
            II3 => (vec![R(k + 1)], vec![X(k), X(k + 1), R(k)]),
            II4 => (vec![R(k)], vec![X(k + 1), X(k), R(k + 1)]),
            III => (vec![X(k), X(k + 1), X(k)], vec![X(k + 1), X(k), X(k + 1)]),
        }
    }

    /// Strands needed at the column where the source side starts.
    pub fn min_strands(self, k: usize) -> usize {
        use ReidemeisterMove::*;
        match self {
            I1 | I2 | II1 | II2 => k,
            II3 | II4 | III => k + 2,
        }
    }

    pub fn name(self) -> &'static str {
        use ReidemeisterMove::*;
        match self {
            I1 => "I.1",
            I2 => "I.2",
            II1 => "II.1",
            II2 => "II.2",
            II3 => "II.3",
            II4 => "II.4",
            III => "III",
        }
    }
}

impl fmt::Display for ReidemeisterMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ReidemeisterMove {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        ReidemeisterMove::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown Reidemeister variant '{s}'"))
    }
}

/// Rewrites the fragment starting at column `col` with anchor level `k`.
pub fn apply_reidemeister(
    d: &FrontDiagram,
    mv: ReidemeisterMove,
    col: usize,
    k: usize,
    dir: Direction,
) -> Result<FrontDiagram, FrontError> {
    if k == 0 {
        return Err(FrontError::PatternMismatch("anchor level must be at least 1".into()));
    }
    let (src, tgt) = match dir {
        Direction::Forward => mv.sides(k),
        Direction::Backward => {
            let (s, t) = mv.sides(k);
            (t, s)
        }
    };
    let events = d.events();
    let counts = strand_profile(0, events)?;
    if col > events.len() || col + src.len() > events.len() {
        return Err(FrontError::PatternMismatch(format!("{mv} {dir} at column {col}: past the end of the word")));
    }
    if counts[col] < mv.min_strands(k) {
        return Err(FrontError::PatternMismatch(format!(
            "{mv} at column {col}: needs {} strands, found {}",
            mv.min_strands(k),
            counts[col]
        )));
    }
    if events[col..col + src.len()] != src[..] {
        return Err(FrontError::PatternMismatch(format!("{mv} {dir} at column {col}, level {k}: source side not found")));
    }
    let mut out = events[..col].to_vec();
    out.extend_from_slice(&tgt);
    out.extend_from_slice(&events[col + src.len()..]);
    FrontDiagram::new(out)
}
