use thiserror::Error;

use crate::model::Violation;
use crate::numerics::NumericsError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

fn list(violations: &[Violation]) -> String {
    violations.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

fn subject(agent: &Option<usize>, resource: &Option<String>) -> String {
    match (agent, resource) {
        (Some(i), Some(r)) => format!("agent {}, resource {r}: ", i + 1),
        (Some(i), None) => format!("agent {}: ", i + 1),
        _ => String::new(),
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{}{}", subject(.agent, .resource), list(.violations))]
    InvalidModel {
        agent: Option<usize>,
        resource: Option<String>,
        violations: Vec<Violation>,
    },
    #[error("economy has no agents")]
    EmptyEconomy,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("{what} is {got}, above the supported limit of {limit}")]
    ScaleLimit { what: &'static str, limit: usize, got: usize },
    #[error("{0}")]
    Domain(String),
    #[error("index {index} out of range 1..={len}")]
    Index { index: usize, len: usize },
    #[error("records do not cover the same profiles")]
    MismatchedProfiles,
    #[error("no market-clearing assignment at the computed penalties")]
    NoMarketClearing,
    #[error("profile file: {0}")]
    Profile(String),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}
