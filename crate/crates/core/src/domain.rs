use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2n::FieldSpec;

/// Which of the two settings a function lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Setting {
    /// `F_2^n`, coordinates `x_1..x_n` with `x_1` the least significant bit.
    #[serde(rename = "mv")]
    Multivariate,
    /// `F_{2^n}` in the polynomial-basis encoding of [`crate::gf2n`].
    #[serde(rename = "uv")]
    Univariate,
}

impl Setting {
    pub fn as_str(self) -> &'static str {
        match self {
            Setting::Multivariate => "mv",
            Setting::Univariate => "uv",
        }
    }
}

impl std::str::FromStr for Setting {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mv" => Ok(Setting::Multivariate),
            "uv" => Ok(Setting::Univariate),
            other => Err(Error::Parse(format!(
                "unknown mode {other:?}, expected mv or uv"
            ))),
        }
    }
}

/// The ambient space of a function: `F_2^n`, or `F_{2^n}` with its field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Domain {
    Multivariate { n: u32 },
    Univariate(FieldSpec),
}

impl Domain {
    pub fn n(&self) -> u32 {
        match self {
            Domain::Multivariate { n } => *n,
            Domain::Univariate(f) => f.n(),
        }
    }

    pub fn size(&self) -> usize {
        1 << self.n()
    }

    pub fn setting(&self) -> Setting {
        match self {
            Domain::Multivariate { .. } => Setting::Multivariate,
            Domain::Univariate(_) => Setting::Univariate,
        }
    }

    pub fn field(&self) -> Option<&FieldSpec> {
        match self {
            Domain::Univariate(f) => Some(f),
            Domain::Multivariate { .. } => None,
        }
    }

    pub fn check_point(&self, v: u64) -> Result<u32> {
        if v < self.size() as u64 {
            Ok(v as u32)
        } else {
            Err(Error::ElementOutOfRange {
                n: self.n(),
                value: v,
            })
        }
    }

    pub fn points(&self) -> impl Iterator<Item = u32> {
        0..(1u32 << self.n())
    }
}
