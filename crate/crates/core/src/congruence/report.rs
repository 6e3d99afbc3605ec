use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Outcome of a finite-range check of a for-all-n claim.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    VerifiedToHorizon,
    Counterexample,
    Inconclusive,
}

impl Status {
    /// Worst status wins: counterexample, then inconclusive.
    pub fn merge(self, other: Status) -> Status {
        use Status::*;
        match (self, other) {
            (Counterexample, _) | (_, Counterexample) => Counterexample,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => VerifiedToHorizon,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::VerifiedToHorizon => "verified-to-horizon",
            Status::Counterexample => "counterexample",
            Status::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Param {
    Int(i64),
    Text(String),
}

impl From<u64> for Param {
    fn from(x: u64) -> Self {
        Param::Int(x as i64)
    }
}

impl From<usize> for Param {
    fn from(x: usize) -> Self {
        Param::Int(x as i64)
    }
}

impl From<u32> for Param {
    fn from(x: u32) -> Self {
        Param::Int(x.into())
    }
}

impl From<i64> for Param {
    fn from(x: i64) -> Self {
        Param::Int(x)
    }
}

impl From<&str> for Param {
    fn from(x: &str) -> Self {
        Param::Text(x.to_owned())
    }
}

impl From<String> for Param {
    fn from(x: String) -> Self {
        Param::Text(x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Extent {
    pub start: Option<u64>,
    pub period: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub index: u64,
    pub detail: String,
}

/// Machine-readable verdict of one check, as emitted by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check_id: String,
    pub params: BTreeMap<String, Param>,
    pub status: Status,
    pub claimed: Extent,
    pub observed: Extent,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub elapsed_ms: u64,
}

impl CheckReport {
    pub fn new(check_id: impl Into<String>) -> Self {
        CheckReport {
            check_id: check_id.into(),
            params: BTreeMap::new(),
            status: Status::VerifiedToHorizon,
            claimed: Extent::default(),
            observed: Extent::default(),
            witness: None,
            elapsed_ms: 0,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Param>) -> Self {
        self.params.insert(key.to_owned(), value.into());
        self
    }

    pub fn status(mut self, status: Status) -> Self {
        self.status = status;
        self
    }

    pub fn claimed(mut self, start: Option<u64>, period: Option<u64>) -> Self {
        self.claimed = Extent { start, period };
        self
    }

    pub fn observed(mut self, start: Option<u64>, period: Option<u64>) -> Self {
        self.observed = Extent { start, period };
        self
    }

    pub fn witness(mut self, index: u64, detail: impl Into<String>) -> Self {
        self.witness = Some(Witness { index, detail: detail.into() });
        self
    }

    /// Key for the canonical ordering of a report stream.
    pub fn sort_key(&self) -> (String, Vec<(String, Param)>) {
        (self.check_id.clone(), self.params.iter().map(|(k, v)| (k.clone(), v.clone())).collect())
    }
}

/// Verdict on whether residues vanish from some index on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VanishReport {
    pub p: u64,
    pub e: u32,
    pub claimed_start: usize,
    /// Smallest index from which every computed residue is zero
    /// (`horizon + 1` when the last residue is nonzero).
    pub observed_start: usize,
    pub status: Status,
    pub horizon: usize,
    /// First nonzero residue at or after `claimed_start`.
    pub witness: Option<usize>,
}

impl VanishReport {
    pub fn to_check(&self, check_id: &str) -> CheckReport {
        let mut r = CheckReport::new(check_id)
            .param("p", self.p)
            .param("e", self.e)
            .param("horizon", self.horizon)
            .status(self.status)
            .claimed(Some(self.claimed_start as u64), None)
            .observed(Some(self.observed_start as u64), None);
        if let Some(w) = self.witness {
            r = r.witness(w as u64, format!("nonzero residue modulo {}^{}", self.p, self.e));
        }
        r
    }
}

/// Verdict on (eventual) periodicity of a residue sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodReport {
    pub modulus: num_bigint::BigInt,
    pub start: usize,
    pub period: usize,
    pub status: Status,
    pub horizon: usize,
    /// First index `n` with `r[n + period] != r[n]`.
    pub witness: Option<usize>,
    /// Minimal `(start, period)` seen in the data, if the evidence rule allows one.
    pub observed: Option<(usize, usize)>,
}

impl PeriodReport {
    pub fn to_check(&self, check_id: &str) -> CheckReport {
        let mut r = CheckReport::new(check_id)
            .param("modulus", self.modulus.to_string())
            .param("horizon", self.horizon)
            .status(self.status)
            .claimed(Some(self.start as u64), Some(self.period as u64))
            .observed(self.observed.map(|(s, _)| s as u64), self.observed.map(|(_, p)| p as u64));
        if let Some(w) = self.witness {
            r = r.witness(w as u64, format!("residue at {w} differs from residue at {}", w + self.period));
        }
        r
    }
}
