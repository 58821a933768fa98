use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// 1-based wavelength (letter) index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Wavelength(pub u32);

/// 1-based zone (block) index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Zone(pub u32);

impl fmt::Display for Wavelength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "λ{}", self.0)
    }
}

impl fmt::Display for Zone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z{}", self.0)
    }
}

/// Split-and-rearrange strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    #[serde(alias = "bubble")]
    BubbleSort,
    #[serde(alias = "blockwise")]
    BlockwiseDuplication,
    #[serde(alias = "bus")]
    CrossingFreeBus,
}

impl Method {
    pub const ALL: [Method; 3] = [
        Method::BubbleSort,
        Method::BlockwiseDuplication,
        Method::CrossingFreeBus,
    ];

    pub fn short_name(self) -> &'static str {
        match self {
            Method::BubbleSort => "bubble",
            Method::BlockwiseDuplication => "blockwise",
            Method::CrossingFreeBus => "bus",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "bubble" | "bubble_sort" | "bubblesort" => Ok(Method::BubbleSort),
            "blockwise" | "block" | "blockwise_duplication" => Ok(Method::BlockwiseDuplication),
            "bus" | "crossing_free_bus" | "crossingfree" => Ok(Method::CrossingFreeBus),
            other => Err(format!(
                "unknown method `{other}` (expected bubble, blockwise or bus)"
            )),
        }
    }
}

/// `m` wavelengths delivered to `n` zones with a given strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CircuitSpec {
    m: u32,
    n: u32,
    method: Method,
}

impl CircuitSpec {
    pub fn new(m: u32, n: u32, method: Method) -> Result<Self> {
        check_at_least("m", m, 1)?;
        check_at_least("n", n, 1)?;
        Ok(Self { m, n, method })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn with_method(self, method: Method) -> Self {
        Self { method, ..self }
    }
}

pub(crate) fn check_at_least(name: &'static str, value: u32, min: u32) -> Result<()> {
    if value < min {
        Err(Error::CountTooSmall { name, min, value })
    } else {
        Ok(())
    }
}

pub(crate) fn check_index(name: &'static str, value: u32, max: u32) -> Result<()> {
    if value == 0 || value > max {
        Err(Error::IndexOutOfRange { name, value, max })
    } else {
        Ok(())
    }
}
