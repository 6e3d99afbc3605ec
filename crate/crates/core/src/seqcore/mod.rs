//! The integer sequences `u(n)`, `v(n)`, the products `Pi_1`, `Pi_3`, the
//! generalised `v_x(n)`, and the polynomial scheme `p_n(t)`.
//!
//! Exact values live in process-wide fill-once caches. Reads take a shared
//! lock; extending a cache takes the write lock, so fills are serialised.

mod poly;

use std::sync::{LazyLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::congruence::report::{CheckReport, Status};
use crate::series::{hyp2f1, TruncSeries};
use crate::{Error, ExactInt, ExactRat, RatSeries, Result};

pub use poly::{taylor_poly, taylor_polys, Poly};

/// Memoised table of one integer sequence with a monotone fill frontier.
#[derive(Debug, Clone)]
pub struct SeqCache {
    name: &'static str,
    values: Vec<ExactInt>,
}

impl SeqCache {
    pub fn new(name: &'static str, seed: Vec<ExactInt>) -> Self {
        SeqCache { name, values: seed }
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    /// Largest filled index.
    pub fn frontier(&self) -> Option<usize> {
        self.values.len().checked_sub(1)
    }

    pub fn get(&self, n: usize) -> Option<&ExactInt> {
        self.values.get(n)
    }

    pub fn values(&self) -> &[ExactInt] {
        &self.values
    }

    /// Extend through index `n`; `next` sees every filled value so far.
    pub fn fill_to<F>(&mut self, n: usize, mut next: F) -> Result<()>
    where
        F: FnMut(&[ExactInt]) -> Result<ExactInt>,
    {
        while self.values.len() <= n {
            let x = next(&self.values)?;
            self.values.push(x);
        }
        Ok(())
    }
}

pub(crate) struct SharedCache {
    inner: RwLock<SeqCache>,
    step: fn(&[ExactInt]) -> Result<ExactInt>,
}

impl SharedCache {
    pub(crate) fn new(name: &'static str, seed: Vec<ExactInt>, step: fn(&[ExactInt]) -> Result<ExactInt>) -> Self {
        SharedCache { inner: RwLock::new(SeqCache::new(name, seed)), step }
    }

    /// Values `0..=n`, filling the cache first if needed.
    pub(crate) fn prefix(&self, n: usize) -> Result<Vec<ExactInt>> {
        {
            let cache = self.inner.read().expect("cache lock poisoned");
            if cache.values.len() > n {
                return Ok(cache.values[..=n].to_vec());
            }
        }
        let mut cache = self.inner.write().expect("cache lock poisoned");
        cache.fill_to(n, self.step)?;
        Ok(cache.values[..=n].to_vec())
    }

    pub(crate) fn get(&self, n: usize) -> Result<ExactInt> {
        {
            let cache = self.inner.read().expect("cache lock poisoned");
            if let Some(x) = cache.get(n) {
                return Ok(x.clone());
            }
        }
        let mut cache = self.inner.write().expect("cache lock poisoned");
        cache.fill_to(n, self.step)?;
        Ok(cache.values[n].clone())
    }
}

static U_CACHE: LazyLock<SharedCache> = LazyLock::new(|| SharedCache::new("u", vec![BigInt::one()], u_step));
static V_CACHE: LazyLock<SharedCache> = LazyLock::new(|| SharedCache::new("v", vec![BigInt::one()], v_step));

fn odd_square_product(n: usize, first: u64) -> ExactInt {
    (1..=n as u64).fold(BigInt::one(), |acc, j| {
        let f = BigInt::from(4 * j - first);
        acc * &f * &f
    })
}

/// `Pi_1(N) = prod_{j=1}^N (4j-1)^2`.
pub fn pi1(n: usize) -> ExactInt {
    odd_square_product(n, 1)
}

/// `Pi_3(N) = prod_{j=1}^N (4j-3)^2`.
pub fn pi3(n: usize) -> ExactInt {
    odd_square_product(n, 3)
}

fn prefix_products(n: usize, first: u64) -> Vec<ExactInt> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(BigInt::one());
    for j in 1..=n as u64 {
        let f = BigInt::from(4 * j - first);
        let next = out.last().unwrap() * &f * &f;
        out.push(next);
    }
    out
}

/// Row `n` of Pascal's triangle.
pub(crate) fn binomial_row(n: usize) -> Vec<ExactInt> {
    let mut row = Vec::with_capacity(n + 1);
    let mut c = BigInt::one();
    row.push(c.clone());
    for j in 0..n {
        c = c * (n - j) / (j + 1);
        row.push(c.clone());
    }
    row
}

pub(crate) fn factorial(n: usize) -> ExactInt {
    (1..=n).fold(BigInt::one(), |acc, j| acc * j)
}

fn u_step(prev: &[ExactInt]) -> Result<ExactInt> {
    let n = prev.len();
    let pi3s = prefix_products(n, 3);
    let binom = binomial_row(2 * n + 1);
    let mut acc = pi1(n);
    for (m, um) in prev.iter().enumerate() {
        acc -= &binom[2 * m + 1] * &pi3s[n - m] * um;
    }
    Ok(acc)
}

/// One step of `v(n) = 2^{n-1} x(n) - 1/2 sum_{m=1}^{n-1} C(2n,2m) v(m) v(n-m)`.
///
/// The symmetric sum is folded so only the middle term `C(2n,n) v(n/2)^2`
/// is halved, and that halving is checked.
pub(crate) fn vx_step(prev: &[ExactInt], x_n: &ExactInt) -> Result<ExactInt> {
    let n = prev.len();
    let binom = binomial_row(2 * n);
    let mut acc = x_n << (n - 1);
    for m in 1..n.div_ceil(2) {
        acc -= &binom[2 * m] * &prev[m] * &prev[n - m];
    }
    if n.is_multiple_of(2) {
        let half = &prev[n / 2];
        let middle = &binom[n] * half * half;
        let (q, r) = middle.div_rem(&BigInt::from(2));
        if !r.is_zero() {
            return Err(Error::Inconsistency(format!("odd middle term in v({n}) recurrence")));
        }
        acc -= q;
    }
    Ok(acc)
}

fn v_step(prev: &[ExactInt]) -> Result<ExactInt> {
    vx_step(prev, &pi3(prev.len()))
}

/// `u(n)` via `u(n) = Pi_1(n) - sum_{m<n} C(2n+1,2m+1) Pi_3(n-m) u(m)`.
pub fn u(n: usize) -> ExactInt {
    U_CACHE.get(n).expect("u recurrence is infallible")
}

/// `u(0..=n)`.
pub fn u_upto(n: usize) -> Vec<ExactInt> {
    U_CACHE.prefix(n).expect("u recurrence is infallible")
}

/// `v(n)` via the recurrence with `x = Pi_3`.
pub fn v(n: usize) -> Result<ExactInt> {
    V_CACHE.get(n)
}

pub fn v_upto(n: usize) -> Result<Vec<ExactInt>> {
    V_CACHE.prefix(n)
}

fn rat(n: i64, d: i64) -> ExactRat {
    ExactRat::new(BigInt::from(n), BigInt::from(d))
}

fn to_integer(x: ExactRat, what: &str, index: usize) -> Result<ExactInt> {
    if x.is_integer() {
        Ok(x.to_integer())
    } else {
        Err(Error::Integrality { what: what.to_owned(), index })
    }
}

/// `U(t)/t` as a series in `s = t^2`: the hypergeometric quotient
/// `2F1[3/4,3/4;3/2;4s] / 2F1[1/4,1/4;1/2;4s]` through `s^order`.
pub fn u_over_t_hypergeometric(order: usize) -> RatSeries {
    hypergeometric_quotient([0, 0, 0, 0, 0, 0], order).expect("no poles for these parameters")
}

/// `2F1[3/4+a,3/4+b;3/2+c;4s] / 2F1[1/4+d,1/4+e;1/2+f;4s]` through `s^order`.
pub fn hypergeometric_quotient(shifts: [u32; 6], order: usize) -> Result<RatSeries> {
    let [a, b, c, d, e, f] = shifts.map(|x| rat(x as i64, 1));
    let four = rat(4, 1);
    let num = hyp2f1(&(rat(3, 4) + a), &(rat(3, 4) + b), &(rat(3, 2) + c), &four, order)?;
    let den = hyp2f1(&(rat(1, 4) + d), &(rat(1, 4) + e), &(rat(1, 2) + f), &four, order)?;
    Ok(num.mul(&den.inverse()?))
}

/// `u(0..=n)` from the hypergeometric generating function, independent of
/// the recurrence.
pub fn u_oracle_upto(n: usize) -> Result<Vec<ExactInt>> {
    let w = u_over_t_hypergeometric(n);
    w.coeffs()
        .iter()
        .enumerate()
        .map(|(j, c)| {
            to_integer(c * ExactRat::from_integer(factorial(2 * j + 1)), "u_oracle", j)
                .map_err(|_| Error::Inconsistency(format!("hypergeometric u({j}) is not an integer")))
        })
        .collect()
}

pub fn u_oracle(n: usize) -> Result<ExactInt> {
    Ok(u_oracle_upto(n)?.pop().expect("nonempty"))
}

/// `v_x(0..=n)` from `2^n (2n)! [s^n] (1 + sum_j x(j) s^j / (2j)!)^{1/2}`.
///
/// `x(0)` is taken to be 1 regardless of what the callback returns.
pub fn v_x_upto(n: usize, x: &dyn Fn(usize) -> ExactInt) -> Result<Vec<ExactInt>> {
    let mut coeffs = Vec::with_capacity(n + 1);
    coeffs.push(ExactRat::one());
    for j in 1..=n {
        coeffs.push(ExactRat::new(x(j), factorial(2 * j)));
    }
    let root = TruncSeries::new(coeffs, n).sqrt()?;
    root.coeffs()
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let scale = ExactRat::from_integer(factorial(2 * j) << j);
            to_integer(c * scale, "v_x", j)
        })
        .collect()
}

pub fn v_x(n: usize, x: &dyn Fn(usize) -> ExactInt) -> Result<ExactInt> {
    Ok(v_x_upto(n, x)?.pop().expect("nonempty"))
}

/// `v_x(0..=n)` by the integer recurrence rather than the square root.
pub fn v_x_recursive_upto(n: usize, x: &dyn Fn(usize) -> ExactInt) -> Result<Vec<ExactInt>> {
    let mut cache = SeqCache::new("v_x", vec![BigInt::one()]);
    cache.fill_to(n, |prev| vx_step(prev, &x(prev.len())))?;
    Ok(cache.values)
}

/// `sum_j y(j) t^{2j+1} / (2j+1)!` through `t^max_exponent` (offset 1).
pub fn odd_egf(y: &[ExactInt], max_exponent: usize) -> RatSeries {
    assert!(max_exponent >= 1);
    let order = max_exponent - 1;
    let mut coeffs = vec![ExactRat::zero(); order + 1];
    for (j, yj) in y.iter().enumerate() {
        if 2 * j > order {
            break;
        }
        coeffs[2 * j] = ExactRat::new(yj.clone(), factorial(2 * j + 1));
    }
    TruncSeries::laurent(1, coeffs, order)
}

/// `U(t)` through `t^max_exponent`, from the cached `u` values.
pub fn u_series(max_exponent: usize) -> RatSeries {
    odd_egf(&u_upto(max_exponent / 2), max_exponent)
}

/// Whether every coefficient of the hypergeometric quotient through `order`
/// has odd denominator.
pub fn two_adic_quotient_check(shifts: [u32; 6], order: usize) -> CheckReport {
    let [a, b, c, d, e, f] = shifts;
    let base = CheckReport::new("h2adic-quotient")
        .param("a", a)
        .param("b", b)
        .param("c", c)
        .param("d", d)
        .param("e", e)
        .param("f", f)
        .param("order", order)
        .claimed(Some(0), None);
    match hypergeometric_quotient(shifts, order) {
        Ok(q) => {
            let bad = q.coeffs().iter().position(|c| c.denom().is_even());
            match bad {
                None => base.observed(Some(0), None),
                Some(j) => base
                    .status(Status::Counterexample)
                    .witness(j as u64, format!("coefficient {} has even denominator", q.coeffs()[j])),
            }
        }
        Err(err) => base.status(Status::Inconclusive).witness(0, err.to_string()),
    }
}
