//! The sequence `d(n)` of normalized Taylor coefficients of `theta_3` at
//! `tau = i`, by three independent pipelines.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::recur;
use crate::rmatrix::{r_table, rinv_table};
use crate::seqcore::{taylor_polys, v_upto};
use crate::{Error, ExactInt, Integers, Result};

/// Default ceiling on exact `d(n)` requests.
pub const DEFAULT_MAX_N: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pipeline {
    /// `d(n) = v(n) - sum_{k<n} r(n,k) d(k)`
    Recursive,
    /// `d(n) = sum_k R^{-1}(2n,2k) v(k)`
    Inverse,
    /// `d(n) = 2^{-n} p_{2n}(0)`
    Poly,
}

impl fmt::Display for Pipeline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pipeline::Recursive => "recursive",
            Pipeline::Inverse => "inverse",
            Pipeline::Poly => "poly",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DOptions {
    pub pipelines: Vec<Pipeline>,
    /// Requests above this index fail with [`Error::Guard`].
    pub max_n: usize,
}

impl Default for DOptions {
    fn default() -> Self {
        DOptions { pipelines: vec![Pipeline::Recursive, Pipeline::Inverse], max_n: DEFAULT_MAX_N }
    }
}

/// A value of `d(n)` on which every listed pipeline agreed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DConsensus {
    pub n: usize,
    #[serde(serialize_with = "as_decimal")]
    pub value: ExactInt,
    pub pipelines_agreed: Vec<Pipeline>,
}

fn as_decimal<S: serde::Serializer>(x: &ExactInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// `d(0..=n)` by the recursion over the `r`-table.
pub fn d_recursive_upto(n: usize) -> Result<Vec<ExactInt>> {
    let v = v_upto(n)?;
    let r = r_table(2 * n);
    Ok(recur::d_recursive_values(&Integers, &v, &r, n))
}

pub fn d_recursive(n: usize) -> Result<ExactInt> {
    Ok(d_recursive_upto(n)?.pop().expect("nonempty"))
}

/// `d(0..=n)` from the block inverse of `R` applied to `v`.
pub fn d_via_inverse_upto(n: usize) -> Result<Vec<ExactInt>> {
    let v = v_upto(n)?;
    let rinv = rinv_table(2 * n);
    Ok(recur::d_inverse_values(&Integers, &v, &rinv, n))
}

pub fn d_via_inverse(n: usize) -> Result<ExactInt> {
    Ok(d_via_inverse_upto(n)?.pop().expect("nonempty"))
}

/// `d(0..=n)` as `2^{-m} p_{2m}(0)`.
pub fn d_via_poly_upto(n: usize) -> Result<Vec<ExactInt>> {
    let polys = taylor_polys(2 * n);
    (0..=n)
        .map(|m| {
            let at_zero = polys[2 * m].coeff(0);
            let scaled = at_zero / num_rational::BigRational::from_integer(BigInt::from(1) << m);
            if scaled.is_integer() {
                Ok(scaled.to_integer())
            } else {
                Err(Error::Inconsistency(format!("2^-{m} p_{}(0) = {scaled} is not an integer", 2 * m)))
            }
        })
        .collect()
}

pub fn d_via_poly(n: usize) -> Result<ExactInt> {
    Ok(d_via_poly_upto(n)?.pop().expect("nonempty"))
}

fn run(p: Pipeline, n: usize) -> Result<Vec<ExactInt>> {
    match p {
        Pipeline::Recursive => d_recursive_upto(n),
        Pipeline::Inverse => d_via_inverse_upto(n),
        Pipeline::Poly => d_via_poly_upto(n),
    }
}

/// `d(0..=n)` with every configured pipeline agreeing on every index.
pub fn d_consensus_upto(n: usize, opts: &DOptions) -> Result<Vec<DConsensus>> {
    if n > opts.max_n {
        return Err(Error::Guard { requested: n, limit: opts.max_n });
    }
    let mut pipelines = opts.pipelines.clone();
    pipelines.sort();
    pipelines.dedup();
    if pipelines.is_empty() {
        return Err(Error::Usage("no d(n) pipeline selected".into()));
    }
    let runs: Vec<Vec<ExactInt>> = pipelines.iter().map(|&p| run(p, n)).collect::<Result<_>>()?;
    (0..=n)
        .map(|m| {
            let value = &runs[0][m];
            if runs.iter().any(|r| &r[m] != value) {
                let values =
                    pipelines.iter().zip(&runs).map(|(p, r)| format!("{p}={}", r[m])).collect::<Vec<_>>().join(", ");
                return Err(Error::Disagreement { n: m, values });
            }
            Ok(DConsensus { n: m, value: value.clone(), pipelines_agreed: pipelines.clone() })
        })
        .collect()
}

pub fn d_with(n: usize, opts: &DOptions) -> Result<DConsensus> {
    Ok(d_consensus_upto(n, opts)?.pop().expect("nonempty"))
}

/// `d(n)` by the default pipelines and guard.
pub fn d(n: usize) -> Result<DConsensus> {
    d_with(n, &DOptions::default())
}

/// Whether `x` is odd; `d(n)` always is.
pub fn is_odd(x: &ExactInt) -> bool {
    x.is_odd()
}

/// `d(n) mod m` in `[0, m)` from an exact value.
pub fn residue(x: &ExactInt, m: &ExactInt) -> ExactInt {
    debug_assert!(!m.is_zero());
    x.mod_floor(m)
}
