//! Search defaults from a `key=value` file named by `IFPS_CONFIG`.

use std::path::Path;

use ifps_core::exactmat::{is_prime, DEFAULT_PRIME};
use ifps_core::SearchConfig;

use crate::CliError;

/// Name of the environment variable holding the config file path.
pub const CONFIG_ENV: &str = "IFPS_CONFIG";

/// Smallest admissible pre-screen modulus.
pub const MIN_PRIME: u64 = 1 << 60;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Defaults {
    pub trials: u32,
    pub bound: u32,
    pub prime: u64,
}

impl Default for Defaults {
    fn default() -> Self {
        let s = SearchConfig::default();
        Self {
            trials: s.trials,
            bound: s.coeff_bound,
            prime: DEFAULT_PRIME,
        }
    }
}

impl Defaults {
    /// Built-in defaults overlaid with the file at `path`, if any.
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let mut d = Self::default();
        let Some(path) = path else { return Ok(d) };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |msg: &str| CliError::Config(format!("{}:{}: {msg}", path.display(), lineno + 1));
            let (key, value) = line.split_once('=').ok_or_else(|| bad("expected key=value"))?;
            let value = value.trim();
            match key.trim() {
                "trials" => d.trials = value.parse().map_err(|_| bad("trials must be a count"))?,
                "bound" => d.bound = value.parse().map_err(|_| bad("bound must be a count"))?,
                "prime" => d.prime = value.parse().map_err(|_| bad("prime must be an integer"))?,
                other => return Err(bad(&format!("unknown key '{other}'"))),
            }
        }
        check_prime(d.prime)?;
        Ok(d)
    }
}

pub fn check_prime(p: u64) -> Result<u64, CliError> {
    if p < MIN_PRIME || !is_prime(p) {
        return Err(CliError::Usage(format!("prime must be a prime ≥ 2^60, got {p}")));
    }
    Ok(p)
}
