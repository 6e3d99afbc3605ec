//! Checkers for the twisted periodicity of `d` and `R^{-1}_y`, the
//! divisibility of `R^{-1}`, and the 2-adic behaviour of `v_x` and `R^{-1}_y`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{check_period, prime_power, reduce_mod, Guards, PeriodReport, SeqId};
use crate::congruence::is_quadratic_residue;
use crate::congruence::report::{CheckReport, Status};
use crate::padic::require_prime;
use crate::recur;
use crate::seqcore::u;
use crate::{Error, ExactInt, IntRing, Result, Zmod};

fn need_one_mod_four(p: u64) -> Result<()> {
    require_prime(p)?;
    if p % 4 == 1 {
        Ok(())
    } else {
        Err(Error::Usage(format!("this check needs p = 1 (mod 4), got {p}")))
    }
}

fn need_exponent(e: u32) -> Result<()> {
    if e == 0 {
        Err(Error::Usage("exponent must be at least 1".into()))
    } else {
        Ok(())
    }
}

fn zmod(m: &BigInt) -> Result<Zmod> {
    Zmod::from_big(m).ok_or_else(|| Error::Usage(format!("modulus {m} exceeds the residue engine")))
}

fn modular_guard(n: usize, guards: &Guards) -> Result<()> {
    if n > guards.modular {
        Err(Error::Guard { requested: n, limit: guards.modular })
    } else {
        Ok(())
    }
}

/// `(-1)^{(p-5)/4} (3 * 7 * 11 * ... * (2p-3))^{2p^{e-1}} mod p^e`, for `p = 1 (mod 4)`.
pub fn shift_multiplier(p: u64, e: u32) -> Result<BigInt> {
    need_one_mod_four(p)?;
    need_exponent(e)?;
    let m = prime_power(p, e)?;
    let product: BigInt = (1..=(p - 1) / 2).map(|j| BigInt::from(4 * j - 1)).product();
    let exp = BigInt::from(2) * num_traits::pow(BigInt::from(p), e as usize - 1);
    let mut c = product.modpow(&exp, &m);
    if p % 8 == 1 {
        // (p-5)/4 is odd exactly when p = 1 (mod 8)
        c = (-c).mod_floor(&m);
    }
    Ok(c)
}

/// `d(n + s) = C d(n) (mod p^e)` for `e+1 <= n <= horizon - s`, where
/// `s = p^{e-1}(p-1)/2` and `C` is [`shift_multiplier`].
pub fn verify_shift_congruence(p: u64, e: u32, horizon: usize, guards: &Guards) -> Result<CheckReport> {
    let c = shift_multiplier(p, e)?;
    let m = prime_power(p, e)?;
    let shift = (p as usize).pow(e - 1) * (p as usize - 1) / 2;
    let start = e as usize + 1;
    let d = reduce_mod(SeqId::D, &m, 0..=horizon, guards)?;
    let base = CheckReport::new("d-u-p")
        .param("p", p)
        .param("e", e)
        .param("horizon", horizon)
        .param("shift", shift)
        .param("multiplier", c.to_string())
        .claimed(Some(start as u64), Some(shift as u64));
    if horizon < start + shift {
        return Ok(base.status(Status::Inconclusive));
    }
    let bad = (start..=horizon - shift).find(|&n| d[n + shift] != (&c * &d[n]).mod_floor(&m));
    Ok(match bad {
        None => base.observed(Some(start as u64), Some(shift as u64)),
        Some(n) => base.status(Status::Counterexample).witness(
            n as u64,
            format!("d({}) = {} but C d({n}) = {} (mod {m})", n + shift, d[n + shift], (&c * &d[n]).mod_floor(&m)),
        ),
    })
}

/// `R^{-1}_y` over the ring for rows `0..=n_max`, with `y` reduced into it.
fn rinv_mod<R: IntRing>(ring: &R, y: &[ExactInt], n_max: usize) -> recur::TriTable<R::Elem> {
    let ys: Vec<R::Elem> = y.iter().map(|x| ring.from_int(x)).collect();
    let r = recur::r_table(ring, &ys, n_max, n_max);
    recur::lower_inverse(ring, &r)
}

fn y_prefix(y: &dyn Fn(usize) -> ExactInt, len: usize) -> Result<Vec<ExactInt>> {
    let ys: Vec<ExactInt> = (0..len).map(y).collect();
    if !ys[0].is_one() {
        return Err(Error::Usage("y(0) must be 1".into()));
    }
    Ok(ys)
}

/// The twisted congruence
/// `p^a R^{-1}_y(2n + s, 2k) = y((p-1)/2)^{p^{e-1}} (-1)^{(p-5)/4} p^a R^{-1}_y(2n, 2k) (mod p^e)`
/// with `a = floor(2k/p)` and `s = p^{e-1}(p-1)`, for `e+1 <= n <= horizon`.
///
/// The hypothesis `v_p(y(j)) >= e` for `j >= ceil(ep/2)` is checked on
/// every `y(j)` the computation touches.
pub fn verify_twisted_rinv(
    p: u64,
    e: u32,
    k: usize,
    horizon: usize,
    y: &dyn Fn(usize) -> ExactInt,
    guards: &Guards,
) -> Result<CheckReport> {
    need_one_mod_four(p)?;
    need_exponent(e)?;
    if k == 0 {
        return Err(Error::Usage("k must be positive".into()));
    }
    let m = prime_power(p, e)?;
    let z = zmod(&m)?;
    let s = (p as usize).pow(e - 1) * (p as usize - 1);
    let n_max = 2 * horizon + s;
    modular_guard(n_max, guards)?;
    let ys = y_prefix(y, n_max / 2 + 1)?;
    let from = (e as usize * p as usize).div_ceil(2);
    if let Some(j) = (from..ys.len()).find(|&j| !ys[j].is_multiple_of(&m)) {
        return Err(Error::Usage(format!("y({j}) = {} is not divisible by {m}", ys[j])));
    }
    let x = rinv_mod(&z, &ys, n_max);
    let sign = if p % 8 == 1 { z.neg(&z.one()) } else { z.one() };
    let c = z.mul(&z.pow(&z.from_int(&ys[(p as usize - 1) / 2]), p.pow(e - 1)), &sign);
    let a = (2 * k / p as usize) as u32;
    let start = e as usize + 1;
    let mut base = CheckReport::new("thm12")
        .param("p", p)
        .param("e", e)
        .param("k", k)
        .param("horizon", horizon)
        .param("multiplier", c)
        .claimed(Some(start as u64), Some(s as u64 / 2));
    if horizon < start {
        return Ok(base.status(Status::Inconclusive));
    }
    let reduced = if a >= e { None } else { Some(p.pow(e - a)) };
    let bad = reduced.and_then(|q| {
        (start..=horizon).find(|&n| {
            let lhs = *x.get(2 * n + s, 2 * k);
            let rhs = z.mul(&c, x.get(2 * n, 2 * k));
            (lhs + z.modulus() - rhs) % q != 0
        })
    });
    if let Some(n) = bad {
        base = base.status(Status::Counterexample).witness(
            n as u64,
            format!(
                "R^-1_y({}, {}) = {} vs multiplier times R^-1_y({}, {}) = {}",
                2 * n + s,
                2 * k,
                x.get(2 * n + s, 2 * k),
                2 * n,
                2 * k,
                x.get(2 * n, 2 * k)
            ),
        );
    } else {
        base = base.observed(Some(start as u64), Some(s as u64 / 2));
    }
    Ok(base)
}

/// `p^{e-f+1} | R^{-1}(2n,2k)` for `ceil(ep^2/2) <= n <= n_max` and
/// `k < ceil(fp^2/2)`, and for `f = 1` also `p^{e+1} | R^{-1}(2n,2k) v(k)`.
pub fn verify_thm9(p: u64, e: u32, f: u32, n_max: usize, guards: &Guards) -> Result<CheckReport> {
    require_prime(p)?;
    if p % 4 != 3 {
        return Err(Error::Usage(format!("this check needs p = 3 (mod 4), got {p}")));
    }
    if f == 0 || f > e {
        return Err(Error::Usage(format!("need 1 <= f <= e, got e={e}, f={f}")));
    }
    let m = prime_power(p, e + 1)?;
    let z = zmod(&m)?;
    modular_guard(2 * n_max, guards)?;
    let u = recur::u_values(&z, n_max);
    let x = recur::lower_inverse(&z, &recur::r_table(&z, &u, 2 * n_max, 2 * n_max));
    let pi3 = recur::pi3_values(&z, n_max);
    let v = recur::vx_values(&z, &pi3, n_max);
    let (p_us, e_us, f_us) = (p as usize, e as usize, f as usize);
    let n_from = (e_us * p_us * p_us).div_ceil(2);
    let k_below = (f_us * p_us * p_us).div_ceil(2);
    let entry_mod = p.pow(e - f + 1);
    let mut base = CheckReport::new("thm9")
        .param("p", p)
        .param("e", e)
        .param("f", f)
        .param("horizon", n_max)
        .claimed(Some(n_from as u64), None);
    if n_max < n_from {
        return Ok(base.status(Status::Inconclusive));
    }
    for n in n_from..=n_max {
        for (k, vk) in v.iter().enumerate().take(k_below.min(n + 1)) {
            let entry = *x.get(2 * n, 2 * k);
            if entry % entry_mod != 0 {
                return Ok(base
                    .status(Status::Counterexample)
                    .witness(n as u64, format!("R^-1({}, {}) is not divisible by {p}^{}", 2 * n, 2 * k, e - f + 1)));
            }
            if f == 1 && z.mul(&entry, vk) != 0 {
                return Ok(base
                    .status(Status::Counterexample)
                    .witness(n as u64, format!("R^-1({}, {}) v({k}) is not divisible by {m}", 2 * n, 2 * k)));
            }
        }
    }
    base = base.observed(Some(n_from as u64), None);
    Ok(base)
}

/// Residues of `k -> R^{-1}_y(2n + k, k)` modulo `2^e` for `0 <= k <= k_max`.
pub(crate) fn rinv_row_residues(n: usize, e: u32, y: &dyn Fn(usize) -> ExactInt, k_max: usize) -> Result<Vec<u64>> {
    need_exponent(e)?;
    let m = prime_power(2, e)?;
    let z = zmod(&m)?;
    let size = 2 * n + k_max;
    let ys = y_prefix(y, size / 2 + 1)?;
    let x = rinv_mod(&z, &ys, size);
    Ok((0..=k_max).map(|k| *x.get(2 * n + k, k)).collect())
}

/// `k -> R^{-1}_y(2n + k, k)` is periodic modulo `2^e` with period `2^e`,
/// checked for `0 <= k <= k_max`.
pub fn verify_rinv_row_periodicity(
    n: usize,
    e: u32,
    y: &dyn Fn(usize) -> ExactInt,
    k_max: usize,
    guards: &Guards,
) -> Result<PeriodReport> {
    modular_guard(2 * n + k_max, guards)?;
    let residues = rinv_row_residues(n, e, y, k_max)?;
    Ok(check_period(&residues, &prime_power(2, e)?, 0, 1 << e))
}

fn vx_residues(e: u32, x: &dyn Fn(usize) -> ExactInt, horizon: usize) -> Result<Vec<u64>> {
    let z = zmod(&prime_power(2, e)?)?;
    let xs: Vec<u64> = (0..=horizon).map(|j| z.from_int(&x(j))).collect();
    Ok(recur::vx_values(&z, &xs, horizon))
}

/// `v_x` is purely periodic modulo `2^e`: period `2^{e-1}` for `e >= 3`,
/// 4 for `e = 2` and 1 for `e = 1`.
pub fn verify_vx_periodicity(
    e: u32,
    x: &dyn Fn(usize) -> ExactInt,
    horizon: usize,
    guards: &Guards,
) -> Result<PeriodReport> {
    need_exponent(e)?;
    modular_guard(horizon, guards)?;
    if !x(0).is_one() {
        return Err(Error::Usage("x(0) must be 1".into()));
    }
    if x(1).is_even() || (e >= 3 && x(2).is_even()) {
        return Err(Error::Usage("x(1) and, for e >= 3, x(2) must be odd".into()));
    }
    let period = match e {
        1 => 1,
        2 => 4,
        _ => 1 << (e - 1),
    };
    let residues = vx_residues(e, x, horizon)?;
    Ok(check_period(&residues, &prime_power(2, e)?, 0, period))
}

/// `v_x mod 4` runs through `1, x(1), 3, x(1) + 2` repeatedly.
///
/// Only `x(1)` odd is checked up front. Since `v_x(2) = 2x(2) - 3x(1)^2`, the
/// third entry is 3 only for odd `x(2)`; an even `x(2)` is reported as a
/// counterexample at index 2.
pub fn verify_prop2a(x: &dyn Fn(usize) -> ExactInt, horizon: usize, guards: &Guards) -> Result<CheckReport> {
    modular_guard(horizon, guards)?;
    let x1 = x(1);
    if x1.is_even() {
        return Err(Error::Usage("x(1) must be odd".into()));
    }
    if !x(0).is_one() {
        return Err(Error::Usage("x(0) must be 1".into()));
    }
    let x1 = x1.mod_floor(&BigInt::from(4)).to_u64().expect("residue mod 4");
    let block = [1, x1, 3, (x1 + 2) % 4];
    let residues = vx_residues(2, x, horizon)?;
    let base = CheckReport::new("prop2a").param("x1", x1).param("horizon", horizon).claimed(Some(0), Some(4));
    let bad = residues.iter().enumerate().find(|&(n, &r)| r != block[n % 4]);
    Ok(match bad {
        None if horizon >= 12 => base.observed(Some(0), Some(4)),
        None => base.status(Status::Inconclusive),
        Some((n, r)) => base
            .status(Status::Counterexample)
            .witness(n as u64, format!("v_x({n}) = {r} (mod 4), expected {}", block[n % 4])),
    })
}

/// `u((p-1)/2)` is a nonzero quadratic residue modulo `p = 1 (mod 4)`.
pub fn verify_u_quadratic_residue(p: u64) -> Result<CheckReport> {
    need_one_mod_four(p)?;
    let n = (p as usize - 1) / 2;
    let value = u(n);
    let r = value.mod_floor(&BigInt::from(p));
    let base = CheckReport::new("thm1A-residue").param("p", p).param("n", n).param("residue", r.to_string());
    Ok(if is_quadratic_residue(&value, p) {
        base
    } else {
        let why = if r.is_zero() { "divisible by p" } else { "a non-residue" };
        base.status(Status::Counterexample).witness(n as u64, format!("u({n}) is {why}"))
    })
}
