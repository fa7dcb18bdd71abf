//! Size limits for carriers and for the brute-force search.

use crate::error::{Error, Result};

pub const DEFAULT_LATTICE_CAP: usize = 64;
pub const DEFAULT_ORACLE_CAP: u64 = 10_000_000;

/// Environment variable holding `lattice_cap,oracle_cap`.
pub const CAPS_ENV: &str = "LATTICE_CUTS_CAPS";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub lattice: usize,
    pub oracle: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            lattice: DEFAULT_LATTICE_CAP,
            oracle: DEFAULT_ORACLE_CAP,
        }
    }
}

impl Caps {
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::InvalidCaps(text.to_owned());
        let (lattice, oracle) = text.split_once(',').ok_or_else(bad)?;
        Ok(Caps {
            lattice: lattice.trim().parse().map_err(|_| bad())?,
            oracle: oracle.trim().parse().map_err(|_| bad())?,
        })
    }

    /// Defaults, overridden by [`CAPS_ENV`] when it is set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(CAPS_ENV) {
            Ok(v) => Caps::parse(&v),
            Err(_) => Ok(Caps::default()),
        }
    }
}
