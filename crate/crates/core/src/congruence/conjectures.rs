//! Exploratory scanners for conjectured strengthenings. A counterexample
//! here is a finding, not a failure.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::theorems::rinv_row_residues;
use super::{check_period, check_vanishing, minimal_period, prime_power, reduce_mod, Guards, SeqId};
use crate::congruence::report::{CheckReport, Status};
use crate::padic::{require_prime, vp};
use crate::recur;
use crate::seqcore::{factorial, two_adic_quotient_check, u_upto};
use crate::{Error, IntRing, Result, Zmod};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConjectureId {
    C1,
    C2,
    C3,
    C4,
    C5,
    H2adic,
}

impl fmt::Display for ConjectureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConjectureId::C1 => "c1",
            ConjectureId::C2 => "c2",
            ConjectureId::C3 => "c3",
            ConjectureId::C4 => "c4",
            ConjectureId::C5 => "c5",
            ConjectureId::H2adic => "h2adic",
        })
    }
}

impl FromStr for ConjectureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "c1" => ConjectureId::C1,
            "c2" => ConjectureId::C2,
            "c3" => ConjectureId::C3,
            "c4" => ConjectureId::C4,
            "c5" => ConjectureId::C5,
            "h2adic" => ConjectureId::H2adic,
            _ => return Err(Error::Usage(format!("unknown conjecture {s:?}"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanParams {
    pub p: Option<u64>,
    pub e: Option<u32>,
    /// Column for the `R(2n+k,k)` scan, or row offset `n` for `R^{-1}(2n+k,k)`.
    pub k: Option<usize>,
    pub horizon: usize,
    /// `(a,b,c,d,e,f)` of the hypergeometric quotient; all zero means `U(t)/t`.
    pub shifts: [u32; 6],
}

impl ScanParams {
    pub fn new(horizon: usize) -> Self {
        ScanParams { p: None, e: None, k: None, horizon, shifts: [0; 6] }
    }

    pub fn with_prime(mut self, p: u64, e: u32) -> Self {
        self.p = Some(p);
        self.e = Some(e);
        self
    }

    pub fn with_k(mut self, k: usize) -> Self {
        self.k = Some(k);
        self
    }

    fn prime(&self) -> Result<(u64, u32)> {
        let p = self.p.ok_or_else(|| Error::Usage("this scan needs --prime".into()))?;
        require_prime(p)?;
        let e = self.e.unwrap_or(1);
        if e == 0 {
            return Err(Error::Usage("exponent must be at least 1".into()));
        }
        Ok((p, e))
    }
}

/// Starts that computations up to index 1500 found to exceed the
/// even-exponent bound for `v`: `(p, e, start)`.
pub const V_EXCEPTIONS: [(u64, u32, usize); 4] = [(7, 8, 102), (7, 24, 298), (7, 40, 494), (11, 36, 1095)];

fn need_three_mod_four(p: u64) -> Result<()> {
    if p % 4 == 3 {
        Ok(())
    } else {
        Err(Error::Usage(format!("this scan needs p = 3 (mod 4), got {p}")))
    }
}

#[allow(clippy::too_many_arguments)]
fn vanishing_scan(
    id: &str,
    seq: SeqId,
    p: u64,
    e: u32,
    modulus_exp: u32,
    start: usize,
    horizon: usize,
    guards: &Guards,
) -> Result<CheckReport> {
    let residues = reduce_mod(seq, &prime_power(p, modulus_exp)?, 0..=horizon, guards)?;
    let mut rep = check_vanishing(&residues, p, modulus_exp, start).to_check(id);
    rep.params.insert("e".into(), e.into());
    rep.params.insert("modulus_exponent".into(), modulus_exp.into());
    Ok(rep)
}

fn scan_c1(p: u64, e: u32, horizon: usize, guards: &Guards) -> Result<Vec<CheckReport>> {
    need_three_mod_four(p)?;
    let (pu, eu) = (p as usize, e as usize);
    let mut out =
        vec![vanishing_scan("c1-1", SeqId::U, p, e, 2 * e - 1, (eu * pu * pu - 1).div_ceil(2), horizon, guards)?];
    if e >= 2 {
        let start = (eu * pu * pu + (eu - 2) * pu).div_ceil(2);
        out.push(vanishing_scan("c1-2", SeqId::U, p, e, 2 * e, start, horizon, guards)?);
    }
    out.push(vanishing_scan("c1-2a", SeqId::U, p, e, 2, (pu * pu - 1) / 2, horizon, guards)?);
    Ok(out)
}

fn scan_c2(p: u64, e: u32, horizon: usize, guards: &Guards) -> Result<CheckReport> {
    need_three_mod_four(p)?;
    let (pu, eu) = (p as usize, e as usize);
    let start = if e % 2 == 1 { ((eu * pu + 2) * (pu + 1)).div_ceil(4) } else { (eu * pu * pu).div_ceil(4) };
    let mut rep = vanishing_scan("c2", SeqId::V, p, e, e, start, horizon, guards)?;
    if let Some(&(_, _, listed)) = V_EXCEPTIONS.iter().find(|&&(q, f, _)| q == p && f == e) {
        rep.params.insert("listed_exception_start".into(), listed.into());
    }
    Ok(rep)
}

fn scan_c3(p: u64, e: u32, horizon: usize, guards: &Guards) -> Result<CheckReport> {
    need_three_mod_four(p)?;
    let start = (e as usize * (p * p) as usize).div_ceil(4);
    vanishing_scan("c3", SeqId::D, p, e, e, start, horizon, guards)
}

fn scan_c4(p: u64, e: u32, horizon: usize, guards: &Guards) -> Result<Vec<CheckReport>> {
    if p % 4 != 1 {
        return Err(Error::Usage(format!("this scan needs p = 1 (mod 4), got {p}")));
    }
    let m = prime_power(p, e)?;
    let q = (p as usize).pow(e - 1);
    let period = q * (p as usize - 1).pow(2) / 8;
    let d = reduce_mod(SeqId::D, &m, 0..=horizon, guards)?;
    let mut first = check_period(&d, &m, 1, period).to_check("c4-1");
    first.params.insert("p".into(), p.into());
    first.params.insert("e".into(), e.into());

    let shift = q * (p as usize - 1) / 4;
    let base = CheckReport::new("c4-2")
        .param("p", p)
        .param("e", e)
        .param("horizon", horizon)
        .param("shift", shift)
        .claimed(Some(1), Some(shift as u64));
    let p_big = BigInt::from(p);
    let anchor = (1..=horizon.saturating_sub(shift)).find(|&n| !d[n].is_multiple_of(&p_big));
    let second = match anchor {
        None => base.status(Status::Inconclusive),
        Some(n0) => {
            let inv = d[n0].modinv(&m).expect("unit modulo p^e");
            let c = (&d[n0 + shift] * inv).mod_floor(&m);
            let power_ok = c.modpow(&BigInt::from((p - 1) / 2), &m).is_one();
            let base = base.param("constant", c.to_string());
            let bad = (1..=horizon - shift).find(|&n| d[n + shift] != (&c * &d[n]).mod_floor(&m));
            match (bad, power_ok) {
                (Some(n), _) => {
                    base.status(Status::Counterexample).witness(n as u64, format!("d({}) != C d({n})", n + shift))
                }
                (None, false) => {
                    base.status(Status::Counterexample).witness(0, format!("C^((p-1)/2) != 1 for C = {c}"))
                }
                (None, true) if horizon < 1 + 3 * shift => base.status(Status::Inconclusive),
                (None, true) => base.observed(Some(1), Some(shift as u64)),
            }
        }
    };
    Ok(vec![first, second])
}

fn scan_c5(p: u64, e: u32, k: Option<usize>, horizon: usize, guards: &Guards) -> Result<CheckReport> {
    if p == 2 {
        if e < 3 {
            return Err(Error::Usage("the 2-power scan needs e >= 3".into()));
        }
        let row = k.unwrap_or(1);
        if 2 * row + horizon > guards.modular {
            return Err(Error::Guard { requested: 2 * row + horizon, limit: guards.modular });
        }
        let uu = u_upto(row + horizon / 2 + 1);
        let residues = rinv_row_residues(row, e, &|j| uu[j].clone(), horizon)?;
        let mut rep = check_period(&residues, &prime_power(2, e)?, 0, 1 << (e - 3)).to_check("c5-3");
        rep.params.insert("n".into(), row.into());
        rep.params.insert("e".into(), e.into());
        return Ok(rep);
    }
    let col = k.unwrap_or(1);
    if col == 0 {
        return Err(Error::Usage("column k must be positive".into()));
    }
    let m = prime_power(p, e)?;
    let z = Zmod::from_big(&m).ok_or_else(|| Error::Usage(format!("modulus {m} exceeds the residue engine")))?;
    let size = 2 * horizon + col;
    if size > guards.modular {
        return Err(Error::Guard { requested: size, limit: guards.modular });
    }
    let u = recur::u_values(&z, size / 2);
    let r = recur::r_table(&z, &u, size, col);
    let residues: Vec<u64> = (0..=horizon).map(|n| *r.get(2 * n + col, col)).collect();
    let base = CheckReport::new(if p % 4 == 1 { "c5-1" } else { "c5-2" })
        .param("p", p)
        .param("e", e)
        .param("k", col)
        .param("horizon", horizon);
    if p % 4 == 1 {
        let rep = base.claimed(Some(0), None);
        return Ok(match minimal_period(&residues, 0) {
            None => rep.status(Status::Inconclusive),
            Some((0, per)) => rep.observed(Some(0), Some(per as u64)),
            Some((s, per)) => rep
                .status(Status::Counterexample)
                .observed(Some(s as u64), Some(per as u64))
                .witness(s as u64 - 1, "periodic only from a later index"),
        });
    }
    // Eventually zero: the zero tail must cover at least the second half.
    let zero_from = residues.iter().rposition(|&x| !z.is_zero(&x)).map_or(0, |i| i + 1);
    let rep = base.observed(Some(zero_from as u64), Some(1));
    Ok(if 2 * zero_from <= horizon { rep } else { rep.status(Status::Inconclusive) })
}

fn ceil_log2(n: usize) -> u64 {
    if n <= 1 {
        0
    } else {
        u64::from(usize::BITS - (n - 1).leading_zeros())
    }
}

/// Valuation bound `v_2(u(n)) >= 2n - ceil(log2 n)` (checked from `n = 2`;
/// `u(1) = 6` misses it) and odd denominators of `u(n)/(2n+1)!`.
fn scan_h2adic(horizon: usize, shifts: [u32; 6], guards: &Guards) -> Result<Vec<CheckReport>> {
    if horizon > guards.exact {
        return Err(Error::Guard { requested: horizon, limit: guards.exact });
    }
    let u = u_upto(horizon);
    let from = 2;
    let base = CheckReport::new("h2adic-valuation")
        .param("horizon", horizon)
        .param("from_n", from)
        .claimed(Some(from as u64), None);
    let mut bad = None;
    for (n, x) in u.iter().enumerate().skip(from) {
        let have = vp(x, 2)?.0;
        let need = 2 * n as u64 - ceil_log2(n);
        if have < need {
            bad = Some((n, have, need));
            break;
        }
    }
    let valuation = match bad {
        None => base.observed(Some(from as u64), None),
        Some((n, have, need)) => {
            base.status(Status::Counterexample).witness(n as u64, format!("v_2(u({n})) = {have} < {need}"))
        }
    };
    let denominators = CheckReport::new("h2adic-denominator").param("horizon", horizon).claimed(Some(0), None);
    let odd_den = |n: usize| {
        let f = factorial(2 * n + 1);
        let g = u[n].gcd(&f);
        (f / g).is_odd()
    };
    let denominators = match (0..=horizon).find(|&n| !odd_den(n)) {
        None => denominators.observed(Some(0), None),
        Some(n) => denominators.status(Status::Counterexample).witness(n as u64, "even denominator"),
    };
    Ok(vec![valuation, denominators, two_adic_quotient_check(shifts, horizon)])
}

/// Run one conjecture scanner. Reports come back in canonical order.
pub fn scan_conjecture(id: ConjectureId, params: &ScanParams, guards: &Guards) -> Result<Vec<CheckReport>> {
    let h = params.horizon;
    let mut out = match id {
        ConjectureId::C1 => {
            let (p, e) = params.prime()?;
            scan_c1(p, e, h, guards)?
        }
        ConjectureId::C2 => {
            let (p, e) = params.prime()?;
            vec![scan_c2(p, e, h, guards)?]
        }
        ConjectureId::C3 => {
            let (p, e) = params.prime()?;
            vec![scan_c3(p, e, h, guards)?]
        }
        ConjectureId::C4 => {
            let (p, e) = params.prime()?;
            scan_c4(p, e, h, guards)?
        }
        ConjectureId::C5 => {
            let (p, e) = params.prime()?;
            vec![scan_c5(p, e, params.k, h, guards)?]
        }
        ConjectureId::H2adic => scan_h2adic(h, params.shifts, guards)?,
    };
    out.sort_by_key(|r| r.sort_key());
    Ok(out)
}
