use thiserror::Error;

use crate::netlist::{NodeId, Violation};
use crate::spec::Method;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("decibel value {0} is positive; gain is not a valid element transmission")]
    PositiveDecibel(f64),
    #[error("linear transmission {0} is outside (0, 1]")]
    TransmissionOutOfRange(f64),
    #[error("{name} must be at least {min}, got {value}")]
    CountTooSmall {
        name: &'static str,
        min: u32,
        value: u32,
    },
    #[error("index {name}={value} is outside 1..={max}")]
    IndexOutOfRange {
        name: &'static str,
        value: u32,
        max: u32,
    },
    #[error("operation needs a {expected} circuit, got {found}")]
    MethodMismatch { expected: Method, found: Method },
    #[error("illegal swap at position {position}: both letters are wavelength {wavelength}")]
    IllegalSwap { position: usize, wavelength: u32 },
    #[error("letter position {position} is past the end of a {len}-letter sequence")]
    PositionOutOfRange { position: usize, len: usize },
    #[error("netlist is invalid ({} violation(s)); first: {}", .0.len(), .0[0])]
    InvalidNetlist(Vec<Violation>),
    #[error("splitter {0} has no branching ratio assigned")]
    UnassignedRatio(NodeId),
    #[error("splitter {0} feeds a subtree with no outputs")]
    DegenerateSubtree(NodeId),
    #[error("expected {expected} source powers, got {found}")]
    InputCount { expected: usize, found: usize },
    #[error("roster is empty")]
    EmptyRoster,
    #[error(
        "power budget must be positive (required {required_mw} mW, available {available_mw} mW)"
    )]
    NonPositiveBudget { required_mw: f64, available_mw: f64 },
    #[error("invalid range: {0}")]
    InvalidRange(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
