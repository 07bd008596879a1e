use std::fmt;

use thiserror::Error;

/// A precondition of a construction that the request does not meet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Condition {
    /// Spine degree must not exceed `n - h`.
    DegreeAtMostNMinusH { delta: usize, n: usize, h: usize },
    /// `n >= 2h + (delta - 1) * (sigma mod 2)`.
    EnoughVertices { n: usize, required: usize },
    /// Sum of spine degrees must not exceed `n - 1`.
    DegreeSum { sum: usize, n: usize },
    /// Total offset span must stay below `(n - (delta_1 - 1)) / 2`.
    OffsetSpan { span: usize, n: usize, delta_max: usize },
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::DegreeAtMostNMinusH { delta, n, h } => {
                write!(f, "(i) delta <= n - h fails: {delta} > {n} - {h}")
            }
            Condition::EnoughVertices { n, required } => {
                write!(f, "(ii) n >= {required} fails: n = {n}")
            }
            Condition::DegreeSum { sum, n } => {
                write!(f, "sum of spine degrees {sum} exceeds n - 1 = {}", n - 1)
            }
            Condition::OffsetSpan { span, n, delta_max } => write!(
                f,
                "offset span {span} is not below (n - (delta_1 - 1)) / 2 = ({n} - {}) / 2",
                delta_max - 1
            ),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("infeasible: {}", join(.0))]
    Infeasible(Vec<Condition>),
    #[error("drawing structure: {0}")]
    Structure(String),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("layout has {0} duplicated edges")]
    MultiEdges(usize),
    #[error("geometric degeneracy: {0}")]
    Degenerate(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn join(conds: &[Condition]) -> String {
    conds.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn param<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parameter(msg.into()))
}
