use thiserror::Error;

use crate::semilattice::Kind;

/// Everything constructive in this crate is exhaustive at small scale, so the
/// error surface is mostly precondition violations plus the enumeration guard.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("antisymmetry violation: `{a}` and `{b}` lie on a cycle")]
    AntisymmetryViolation { a: String, b: String },
    #[error("not T0: points `{a}` and `{b}` have identical open neighborhoods")]
    NotT0 { a: String, b: String },
    #[error("not a topology: {0}")]
    NotATopology(String),
    #[error("empty subset where a nonempty one is required")]
    EmptySubset,
    #[error("empty poset")]
    EmptyPoset,
    #[error("elements drawn from different base carriers")]
    BaseMismatch,
    #[error("kind mismatch: expected {expected}, found {found}")]
    KindMismatch { expected: Kind, found: Kind },
    #[error("family is not directed: elements {i} and {j} have no upper bound in it")]
    NotDirected { i: usize, j: usize },
    #[error("map is not monotone at pair ({i}, {j})")]
    NotMonotone { i: usize, j: usize },
    #[error("binary meet of `{x}` and `{y}` does not exist")]
    MeetMissing { x: String, y: String },
    #[error("binary join of `{x}` and `{y}` does not exist")]
    JoinMissing { x: String, y: String },
    #[error("size limit exceeded: {candidates} candidates (limit {limit})")]
    SizeLimitExceeded { candidates: u128, limit: u128 },
    #[error("internal isomorphism failure (this is a bug): {0}")]
    IsoFailure(String),
    #[error("unknown operator `{0}` for this abstract domain")]
    UnknownOp(String),
    #[error("syntax error at byte {pos}: {msg}")]
    SyntaxError { pos: usize, msg: String },
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// Enumeration guard: antichain and table enumerations are exponential and
/// must fail loudly rather than hang.
pub const CANDIDATE_LIMIT: u128 = 1 << 20;

pub(crate) fn guard(candidates: u128) -> Result<(), Error> {
    if candidates > CANDIDATE_LIMIT {
        Err(Error::SizeLimitExceeded {
            candidates,
            limit: CANDIDATE_LIMIT,
        })
    } else {
        Ok(())
    }
}
