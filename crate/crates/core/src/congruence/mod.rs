//! Residues of `u`, `v`, `d` modulo prime powers, periodicity and vanishing
//! detection, and finite-range checkers for the congruence theorems.
//!
//! Moduli below `2^63` are handled by rerunning the recurrences over
//! [`Zmod`]; larger moduli fall back to reducing exact values.

mod conjectures;
pub mod report;
mod theorems;

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::dseq::{d_recursive_upto, DEFAULT_MAX_N};
use crate::padic::require_prime;
use crate::recur;
use crate::seqcore::{u_upto, v_upto};
use crate::{Error, ExactInt, IntRing, Result, Zmod};

pub use conjectures::{scan_conjecture, ConjectureId, ScanParams};
pub use report::{CheckReport, Extent, Param, PeriodReport, Status, VanishReport, Witness};
pub use theorems::{
    shift_multiplier, verify_prop2a, verify_rinv_row_periodicity, verify_shift_congruence, verify_thm9,
    verify_twisted_rinv, verify_u_quadratic_residue, verify_vx_periodicity,
};

/// Default ceiling on modular horizons.
pub const DEFAULT_MODULAR_GUARD: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeqId {
    U,
    V,
    D,
}

impl fmt::Display for SeqId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SeqId::U => "u",
            SeqId::V => "v",
            SeqId::D => "d",
        })
    }
}

impl FromStr for SeqId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "u" => Ok(SeqId::U),
            "v" => Ok(SeqId::V),
            "d" => Ok(SeqId::D),
            _ => Err(Error::Usage(format!("unknown sequence {s:?}"))),
        }
    }
}

/// Largest indices the engine computes without an explicit override.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Guards {
    /// For exact big-integer values.
    pub exact: usize,
    /// For residue recurrences.
    pub modular: usize,
}

impl Default for Guards {
    fn default() -> Self {
        Guards { exact: DEFAULT_MAX_N, modular: DEFAULT_MODULAR_GUARD }
    }
}

impl Guards {
    pub fn unlimited() -> Self {
        Guards { exact: usize::MAX, modular: usize::MAX }
    }
}

/// `d(0..=n_max)` in the ring, by the recursion over the (banded) `r`-table.
pub fn d_values<R: IntRing>(ring: &R, n_max: usize) -> Vec<R::Elem> {
    let y_len = recur::band_width(ring).map_or(n_max, |b| (b / 2 + 1).min(n_max));
    let u = recur::u_values(ring, y_len);
    let pi3 = recur::pi3_values(ring, n_max);
    let v = recur::vx_values(ring, &pi3, n_max);
    let r = recur::r_table(ring, &u, 2 * n_max, 2 * n_max);
    recur::d_recursive_values(ring, &v, &r, n_max)
}

/// Residues of `seq(0..=n_max)` modulo a machine-size modulus.
pub fn residues_u64(seq: SeqId, modulus: u64, n_max: usize) -> Result<Vec<u64>> {
    let z = Zmod::new(modulus).ok_or_else(|| Error::Domain(format!("modulus {modulus} out of range")))?;
    Ok(match seq {
        SeqId::U => recur::u_values(&z, n_max),
        SeqId::V => {
            let pi3 = recur::pi3_values(&z, n_max);
            recur::vx_values(&z, &pi3, n_max)
        }
        SeqId::D => d_values(&z, n_max),
    })
}

/// Exact `seq(0..=n_max)`.
pub fn exact_values(seq: SeqId, n_max: usize) -> Result<Vec<ExactInt>> {
    match seq {
        SeqId::U => Ok(u_upto(n_max)),
        SeqId::V => v_upto(n_max),
        SeqId::D => d_recursive_upto(n_max),
    }
}

/// Canonical residues in `[0, modulus)` of `seq(n)` for `n` in `range`.
pub fn reduce_mod(seq: SeqId, modulus: &BigInt, range: RangeInclusive<usize>, guards: &Guards) -> Result<Vec<BigInt>> {
    if *modulus < BigInt::from(2) {
        return Err(Error::Domain(format!("modulus {modulus} must be at least 2")));
    }
    let (lo, hi) = (*range.start(), *range.end());
    if lo > hi {
        return Ok(Vec::new());
    }
    let all: Vec<BigInt> = match Zmod::from_big(modulus) {
        Some(z) => {
            if hi > guards.modular {
                return Err(Error::Guard { requested: hi, limit: guards.modular });
            }
            residues_u64(seq, z.modulus(), hi)?.into_iter().map(BigInt::from).collect()
        }
        None => {
            if hi > guards.exact {
                return Err(Error::Guard { requested: hi, limit: guards.exact });
            }
            exact_values(seq, hi)?.iter().map(|x| x.mod_floor(modulus)).collect()
        }
    };
    Ok(all[lo..].to_vec())
}

/// `p^e` as a big integer, after checking that `p` is prime.
pub fn prime_power(p: u64, e: u32) -> Result<BigInt> {
    require_prime(p)?;
    Ok(num_traits::pow(BigInt::from(p), e as usize))
}

/// Minimal `(start, period)` with `start >= min_start` and
/// `r[n + period] = r[n]` for all `start <= n <= horizon - period`, where at
/// least three full periods follow `start`; the period is minimized first.
pub fn minimal_period<T: PartialEq>(residues: &[T], min_start: usize) -> Option<(usize, usize)> {
    let len = residues.len();
    if len == 0 {
        return None;
    }
    let horizon = len - 1;
    let mut period = 1;
    while min_start + 3 * period <= horizon {
        // last n with a mismatch, scanning down from the end
        let last_bad = (min_start..=horizon - period).rev().find(|&n| residues[n + period] != residues[n]);
        let start = last_bad.map_or(min_start, |n| n + 1);
        if start + 3 * period <= horizon {
            return Some((start, period));
        }
        period += 1;
    }
    None
}

/// Minimal period and start of a residue list under the three-copies rule.
pub fn detect_period<T: PartialEq>(residues: &[T], min_start: usize, modulus: &BigInt) -> PeriodReport {
    let horizon = residues.len().saturating_sub(1);
    match minimal_period(residues, min_start) {
        Some((start, period)) => PeriodReport {
            modulus: modulus.clone(),
            start,
            period,
            status: Status::VerifiedToHorizon,
            horizon,
            witness: None,
            observed: Some((start, period)),
        },
        None => PeriodReport {
            modulus: modulus.clone(),
            start: min_start,
            period: 0,
            status: Status::Inconclusive,
            horizon,
            witness: None,
            observed: None,
        },
    }
}

/// Check a claimed `(start, period)` against residues `r[0..=horizon]`.
pub fn check_period<T: PartialEq>(residues: &[T], modulus: &BigInt, start: usize, period: usize) -> PeriodReport {
    assert!(period >= 1, "period must be positive");
    let horizon = residues.len().saturating_sub(1);
    let witness = if start + period <= horizon {
        (start..=horizon - period).find(|&n| residues[n + period] != residues[n])
    } else {
        None
    };
    let status = if witness.is_some() {
        Status::Counterexample
    } else if horizon < start + 3 * period {
        Status::Inconclusive
    } else {
        Status::VerifiedToHorizon
    };
    PeriodReport {
        modulus: modulus.clone(),
        start,
        period,
        status,
        horizon,
        witness,
        observed: minimal_period(residues, 0),
    }
}

/// Period claim for `d` modulo `p^e`: `(start, period)`.
pub fn d_period_claim(p: u64, e: u32) -> Result<(usize, usize)> {
    require_prime(p)?;
    if e == 0 {
        return Err(Error::Usage("exponent must be at least 1".into()));
    }
    if p == 2 {
        return Ok(match e {
            1 => (0, 1),
            2 => (0, 4),
            _ => (0, 1 << (e - 1)),
        });
    }
    if p % 4 != 1 {
        return Err(Error::Usage(format!("d is eventually zero, not periodic, modulo powers of {p}")));
    }
    let q = (p as usize).pow(e - 1);
    Ok((e as usize + 1, q * (p as usize - 1).pow(2) / 4))
}

/// Periodicity of `d` modulo `modulus` with the given claim.
pub fn verify_d_periodicity(
    modulus: &BigInt,
    start: usize,
    period: usize,
    horizon: usize,
    guards: &Guards,
) -> Result<PeriodReport> {
    if period == 0 {
        return Err(Error::Usage("period must be positive".into()));
    }
    let residues = reduce_mod(SeqId::D, modulus, 0..=horizon, guards)?;
    Ok(check_period(&residues, modulus, start, period))
}

/// Vanishing bound for `seq` modulo `p^e`: check id and claimed start.
pub fn vanishing_claim(seq: SeqId, p: u64, e: u32) -> Result<(&'static str, usize)> {
    require_prime(p)?;
    if p == 2 {
        return Err(Error::Usage("vanishing claims concern odd primes".into()));
    }
    if e == 0 {
        return Err(Error::Usage("exponent must be at least 1".into()));
    }
    let (p, e) = (p as usize, e as usize);
    let one_mod_four = p % 4 == 1;
    let need_e2 = || Err(Error::Usage(format!("the bound for p = {p} needs e >= 2")));
    match seq {
        SeqId::U if one_mod_four => Ok(("thm1A", (e * p).div_ceil(2))),
        SeqId::U if e >= 2 => Ok(("thm1", (e - 1) * p * p / 2)),
        SeqId::V if one_mod_four => Ok(("thm2A", (e * p).div_ceil(2))),
        SeqId::V if e >= 2 => Ok(("thm2", ((e - 1) * p * p).div_ceil(2))),
        SeqId::D if one_mod_four => Err(Error::Usage(format!("d is periodic, not vanishing, modulo powers of {p}"))),
        SeqId::D if e >= 2 => Ok(("thm-main-1", ((e - 1) * p * p).div_ceil(2))),
        _ => need_e2(),
    }
}

/// Verdict on `r[n] = 0` for `claimed_start <= n <= horizon`.
pub fn check_vanishing(residues: &[BigInt], p: u64, e: u32, claimed_start: usize) -> VanishReport {
    let horizon = residues.len().saturating_sub(1);
    let observed_start = residues.iter().rposition(|x| !x.is_zero()).map_or(0, |i| i + 1);
    let witness = residues.iter().skip(claimed_start).position(|x| !x.is_zero()).map(|i| i + claimed_start);
    let status = if witness.is_some() {
        Status::Counterexample
    } else if horizon < claimed_start {
        Status::Inconclusive
    } else {
        Status::VerifiedToHorizon
    };
    VanishReport { p, e, claimed_start, observed_start, status, horizon, witness }
}

/// Vanishing of `seq` modulo `p^e` from the theorem bound through `horizon`.
pub fn verify_vanishing(seq: SeqId, p: u64, e: u32, horizon: usize, guards: &Guards) -> Result<VanishReport> {
    let (_, claimed) = vanishing_claim(seq, p, e)?;
    let residues = reduce_mod(seq, &prime_power(p, e)?, 0..=horizon, guards)?;
    Ok(check_vanishing(&residues, p, e, claimed))
}

/// `a` is a nonzero square modulo the odd prime `p` (Euler's criterion).
pub fn is_quadratic_residue(a: &BigInt, p: u64) -> bool {
    let p_big = BigInt::from(p);
    let a = a.mod_floor(&p_big);
    !a.is_zero() && a.modpow(&BigInt::from((p - 1) / 2), &p_big).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn d_mod_13_and_mod_4() {
        let g = Guards::default();
        let r13 = reduce_mod(SeqId::D, &BigInt::from(13), 0..=20, &g).unwrap();
        assert_eq!(r13, big(&[1, 1, 12, 12, 4, 9, 9, 3, 10, 10, 12, 1, 1, 9, 4, 4, 10, 3, 3, 1, 12]));
        let r4 = reduce_mod(SeqId::D, &BigInt::from(4), 0..=4, &g).unwrap();
        assert_eq!(r4, big(&[1, 1, 3, 3, 1]));
        let r2 = reduce_mod(SeqId::V, &BigInt::from(2), 3..=30, &g).unwrap();
        assert!(r2.iter().all(|x| x.is_one()));
    }

    #[test]
    fn modular_matches_exact_reduction() {
        let g = Guards::default();
        for m in [2u64, 4, 8, 9, 13, 25, 27, 49, 64, 125, 343, 1024] {
            let mb = BigInt::from(m);
            for seq in [SeqId::U, SeqId::V, SeqId::D] {
                let fast = reduce_mod(seq, &mb, 0..=50, &g).unwrap();
                let slow: Vec<BigInt> = exact_values(seq, 50).unwrap().iter().map(|x| x.mod_floor(&mb)).collect();
                assert_eq!(fast, slow, "{seq} mod {m}");
            }
        }
    }

    #[test]
    fn large_moduli_use_exact_values() {
        let m = num_traits::pow(BigInt::from(7), 30);
        let r = reduce_mod(SeqId::D, &m, 0..=12, &Guards::default()).unwrap();
        let d12: BigInt = "-923351332174412751".parse().unwrap();
        assert_eq!(r[12], d12.mod_floor(&m));
        let tight = Guards { exact: 10, modular: 10 };
        assert!(matches!(reduce_mod(SeqId::D, &m, 0..=12, &tight), Err(Error::Guard { .. })));
        assert!(reduce_mod(SeqId::D, &BigInt::from(1), 0..=3, &tight).is_err());
    }

    #[test]
    fn period_detection_examples() {
        let block: Vec<u32> = [1, 1, 3, 3].repeat(3);
        assert_eq!(minimal_period(&block, 0), None, "three copies leave the horizon one short");
        let block: Vec<u32> = [1, 1, 3, 3].repeat(4);
        assert_eq!(minimal_period(&block, 0), Some((0, 4)));
        let tail = [5u32, 7, 2, 0, 0, 0, 0, 0];
        assert_eq!(minimal_period(&tail, 0), Some((3, 1)));
        let m = BigInt::from(13);
        let r13 = reduce_mod(SeqId::D, &m, 0..=60, &Guards::default()).unwrap();
        let rep = detect_period(&r13, 0, &m);
        assert_eq!((rep.start, rep.period), (1, 18));
    }

    #[test]
    fn vanishing_examples() {
        let g = Guards::default();
        let rep = verify_vanishing(SeqId::D, 3, 2, 100, &g).unwrap();
        assert_eq!(rep.claimed_start, 5);
        assert_eq!(rep.status, Status::VerifiedToHorizon);
        let rep = verify_vanishing(SeqId::U, 3, 2, 60, &g).unwrap();
        assert_eq!((rep.claimed_start, rep.status), (4, Status::VerifiedToHorizon));
        let rep = verify_vanishing(SeqId::V, 5, 1, 60, &g).unwrap();
        assert_eq!((rep.claimed_start, rep.status), (3, Status::VerifiedToHorizon));
        assert!(rep.observed_start <= rep.claimed_start);
        assert!(matches!(verify_vanishing(SeqId::D, 5, 2, 60, &g), Err(Error::Usage(_))));
        assert!(matches!(verify_vanishing(SeqId::U, 3, 1, 60, &g), Err(Error::Usage(_))));
        assert!(matches!(verify_vanishing(SeqId::U, 9, 2, 60, &g), Err(Error::NotPrime(9))));
    }

    #[test]
    fn vanishing_counterexample_and_short_horizon() {
        let r = big(&[1, 0, 2, 0, 0]);
        let rep = check_vanishing(&r, 3, 1, 1);
        assert_eq!((rep.status, rep.witness, rep.observed_start), (Status::Counterexample, Some(2), 3));
        let rep = check_vanishing(&r, 3, 1, 9);
        assert_eq!(rep.status, Status::Inconclusive);
    }

    #[test]
    fn period_checks() {
        let g = Guards::default();
        let m = BigInt::from(5);
        let rep = verify_d_periodicity(&m, 2, 4, 60, &g).unwrap();
        assert_eq!(rep.status, Status::VerifiedToHorizon);
        assert_eq!(rep.observed, Some((1, 2)));
        let rep = verify_d_periodicity(&BigInt::from(13), 2, 36, 150, &g).unwrap();
        assert_eq!(rep.status, Status::VerifiedToHorizon);
        assert_eq!(rep.observed.map(|o| o.1), Some(18));
        let rep = verify_d_periodicity(&BigInt::from(13), 2, 5, 150, &g).unwrap();
        assert_eq!(rep.status, Status::Counterexample);
        let rep = verify_d_periodicity(&BigInt::from(13), 2, 36, 100, &g).unwrap();
        assert_eq!(rep.status, Status::Inconclusive);
    }

    #[test]
    fn claims() {
        assert_eq!(d_period_claim(13, 1).unwrap(), (2, 36));
        assert_eq!(d_period_claim(5, 2).unwrap(), (3, 20));
        assert_eq!(d_period_claim(2, 4).unwrap(), (0, 8));
        assert!(d_period_claim(7, 1).is_err());
        assert_eq!(vanishing_claim(SeqId::D, 7, 2).unwrap(), ("thm-main-1", 25));
    }

    #[test]
    fn quadratic_residues() {
        assert!(is_quadratic_residue(&BigInt::from(4), 7));
        assert!(!is_quadratic_residue(&BigInt::from(3), 7));
        assert!(!is_quadratic_residue(&BigInt::from(14), 7));
    }
}
