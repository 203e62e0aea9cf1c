//! d3 and delta from linking data, plus the change vector between two presentations.

use crate::linalg::{fmt_rat, frac, quadratic_value, rat, signature, LinalgError, Rational};
use crate::surgery::LinkingData;
use num_integer::Integer;
use num_traits::Zero;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error("first Chern class is not torsion: Q x = r has no rational solution")]
    NotTorsion,
    #[error("epsilon is only defined here for presentations with every coefficient -1 (q = {0})")]
    RequiresAllMinus(usize),
}

/// `c² = xᵀ r` for `Q x = r`.
pub fn c_squared(data: &LinkingData) -> Result<Rational, InvariantError> {
    quadratic_value(&data.q_matrix(), &data.r_vector()).map_err(|e| match e {
        LinalgError::NotSolvable => InvariantError::NotTorsion,
        other => unreachable!("linking data has matching dimensions: {other}"),
    })
}

/// `(c² - 3σ - 2n)/4 + q`.
pub fn d3_surg(data: &LinkingData) -> Result<Rational, InvariantError> {
    let c2 = c_squared(data)?;
    let sigma = signature(&data.q_matrix());
    Ok((c2 - rat(3 * sigma) - rat(2 * data.n() as i64)) * frac(1, 4) + rat(data.plus as i64))
}

/// `c² - σ` before reduction mod 8.
pub fn delta_raw(data: &LinkingData) -> Result<Rational, InvariantError> {
    Ok(c_squared(data)? - rat(signature(&data.q_matrix())))
}

/// Representative of `c² - σ` in `[0, 8)`.
pub fn delta(data: &LinkingData) -> Result<Rational, InvariantError> {
    Ok(mod8(&delta_raw(data)?))
}

pub fn mod8(x: &Rational) -> Rational {
    let eight = rat(8);
    let k = (x / &eight).floor();
    x - k * eight
}

/// `(Δn, Δσ, Δq, Δc²)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChangeVector(pub [Rational; 4]);

impl ChangeVector {
    pub fn from_ints(v: [i64; 4]) -> Self {
        ChangeVector(v.map(rat))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for ChangeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(fmt_rat).collect();
        write!(f, "({})", parts.join(", "))
    }
}

pub fn change_vector(before: &LinkingData, after: &LinkingData) -> Result<ChangeVector, InvariantError> {
    let dn = after.n() as i64 - before.n() as i64;
    let ds = signature(&after.q_matrix()) - signature(&before.q_matrix());
    let dq = after.plus as i64 - before.plus as i64;
    let dc = c_squared(after)? - c_squared(before)?;
    Ok(ChangeVector([rat(dn), rat(ds), rat(dq), dc]))
}

/// `-(σ + n)/2` for an all-(-1) presentation, with its parity when integral.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Epsilon {
    pub value: Rational,
    pub parity: Option<u8>,
}

pub fn epsilon(data: &LinkingData) -> Result<Epsilon, InvariantError> {
    if data.plus > 0 {
        return Err(InvariantError::RequiresAllMinus(data.plus));
    }
    let value = -frac(signature(&data.q_matrix()) + data.n() as i64, 2);
    let parity = value.is_integer().then(|| u8::from(value.to_integer().is_odd()));
    Ok(Epsilon { value, parity })
}
