//! The standard contact Kirby moves, at the level of linking data and of
//! event words, and the independence check on their change vectors.

mod descriptor;
mod diagram;
mod matrix;
mod random;
pub mod templates;

pub use descriptor::{parse_descriptor, MoveDescriptor, MoveParams, MoveTag, PairOrder};
pub use diagram::{
    apply_template_move, assert_diagram_move, delete_component, double_component, insert_cancelling_pair,
    slide_unframed, AssertReport, Origin, TemplateOutcome,
};
pub use random::{invariance_trials, random_instance, Trial};
pub use matrix::{
    chain_blocks, independence_rank, lantern_blocks, matrix_transform, model_for, verify_schur_conditions,
    standard_change_vectors, MoveMatrixModel, SchurCheck, SchurReport,
};

use crate::front::FrontError;
use crate::surgery::SurgeryError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoveError {
    #[error("block mismatch: {0}")]
    BlockMismatch(String),
    #[error("half-integral linking: {0}")]
    HalfIntegerLinking(String),
    #[error("index error: {0}")]
    IndexError(String),
    #[error("pattern mismatch: {0}")]
    PatternMismatch(String),
    #[error("support violation: {0}")]
    SupportViolation(String),
    #[error("coefficient mismatch: {0}")]
    CoefficientMismatch(String),
    #[error("bad template: {0}")]
    Template(String),
    #[error(transparent)]
    Front(FrontError),
    #[error(transparent)]
    Surgery(SurgeryError),
}

impl From<FrontError> for MoveError {
    fn from(e: FrontError) -> Self {
        match e {
            FrontError::PatternMismatch(m) => MoveError::PatternMismatch(m),
            FrontError::SupportViolation(m) => MoveError::SupportViolation(m),
            other => MoveError::Front(other),
        }
    }
}

impl From<SurgeryError> for MoveError {
    fn from(e: SurgeryError) -> Self {
        match e {
            SurgeryError::Front(f) => f.into(),
            other => MoveError::Surgery(other),
        }
    }
}

/// How component indices change under a move.
///
/// `survivors[i]` is the new index of old index `i`, or `None` when it was
/// deleted. Created components are listed in role order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IndexMap {
    pub survivors: Vec<Option<usize>>,
    pub created: Vec<usize>,
    pub deleted: Vec<usize>,
}

impl IndexMap {
    pub fn identity(n: usize) -> Self {
        IndexMap { survivors: (0..n).map(Some).collect(), created: vec![], deleted: vec![] }
    }

    pub fn new_count(&self) -> usize {
        self.survivors.iter().flatten().count() + self.created.len()
    }
}
