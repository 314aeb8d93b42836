//! Versioned JSON reports. Field order is fixed by declaration order.

use serde::Serialize;

/// Bumped on any incompatible change to report fields.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Debug)]
pub struct Report<R: Serialize> {
    pub schema_version: u32,
    pub tool_version: &'static str,
    pub command: &'static str,
    /// Canonical DSL text of the input.
    pub input: String,
    pub seed: Option<u64>,
    pub result: R,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

impl<R: Serialize> Report<R> {
    pub fn new(command: &'static str, input: String, seed: Option<u64>, result: R) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION"),
            command,
            input,
            seed,
            result,
            timings: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report types serialize");
        s.push('\n');
        s
    }
}

#[derive(Serialize, Debug)]
pub struct Timings {
    pub elapsed_ms: f64,
}

#[derive(Serialize, Debug)]
pub struct ResidualResult {
    pub residual: String,
    pub is_solution: bool,
}

#[derive(Serialize, Debug)]
pub struct EnumerateResult {
    pub a: u64,
    pub max_part: u64,
    pub max_k: usize,
    pub essential_only: bool,
    pub exclude_repetition: bool,
    pub count: usize,
    pub all_residuals_zero: bool,
    pub solutions: Vec<String>,
}

#[derive(Serialize, Debug)]
#[serde(rename_all = "snake_case")]
pub enum StepReport {
    DropOnes { count: usize },
    Transform { position: usize, landed: usize },
}

#[derive(Serialize, Debug)]
pub struct DescendResult {
    pub reduced: String,
    pub path: Vec<usize>,
    pub steps: Vec<StepReport>,
    pub chain: Vec<String>,
}

#[derive(Serialize, Debug)]
pub struct SearchReport {
    pub trials: u32,
    pub bound: u32,
    pub prime: String,
    pub trials_used: u32,
}

#[derive(Serialize, Debug)]
pub struct VerifyResult {
    pub triplet: String,
    pub algebra_dim: usize,
    pub space_dim: usize,
    pub has_gl1: bool,
    pub dimension_match: bool,
    pub verdict: &'static str,
    pub orbit_rank: usize,
    pub isotropy_dim: usize,
    pub witness: Vec<String>,
    pub search: SearchReport,
    pub type_ifps: bool,
}

#[derive(Serialize, Debug)]
pub struct SideReport {
    pub algebra_dim: usize,
    pub space_dim: usize,
    pub generic: bool,
    pub isotropy_dim: usize,
    pub h_isotropy_dim: usize,
    pub point: Vec<String>,
}

#[derive(Serialize, Debug)]
pub struct CastleResult {
    pub m: usize,
    pub n: usize,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub side1: Option<SideReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub side2: Option<SideReport>,
    pub isotropy_equal: Option<bool>,
    pub h_isotropy_equal: Option<bool>,
    pub search: SearchReport,
}
