//! The matrices `R(n,k) = 2^{(n-k)/2} n!/k! [t^n] U(t)^k`, `r(n,k) = R(2n,2k)`
//! and several independent constructions of `R^{-1}`.
//!
//! Bulk tables come from the integer Bell recurrence in [`crate::recur`];
//! single entries from the series definitions serve as oracles.

mod partitions;

use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::recur::{self, TriTable};
use crate::seqcore::{factorial, odd_egf, u_upto};
use crate::{Error, ExactInt, ExactRat, Integers, Result};

pub use partitions::{enumerate_odd_tuples, set_partition_fraction, OddTuple};

/// Lower triangle of an `N x N` unit lower triangular integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriBlock {
    rows: Vec<Vec<ExactInt>>,
    parity_checkerboard: bool,
}

impl TriBlock {
    /// Rows must have lengths `1, 2, ..., N`.
    pub fn from_rows(rows: Vec<Vec<ExactInt>>, parity_checkerboard: bool) -> Self {
        for (n, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n + 1, "row {n} has the wrong length");
        }
        TriBlock { rows, parity_checkerboard }
    }

    fn from_table(t: &TriTable<ExactInt>, size: usize, parity_checkerboard: bool) -> Self {
        let rows = (0..size).map(|n| (0..=n).map(|k| t.get(n, k).clone()).collect()).collect();
        TriBlock { rows, parity_checkerboard }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn parity_checkerboard(&self) -> bool {
        self.parity_checkerboard
    }

    pub fn rows(&self) -> &[Vec<ExactInt>] {
        &self.rows
    }

    /// Entry `(n,k)`; zero above the diagonal.
    pub fn get(&self, n: usize, k: usize) -> ExactInt {
        if k > n {
            BigInt::zero()
        } else {
            self.rows[n][k].clone()
        }
    }

    /// Panics when sizes differ.
    pub fn mul(&self, other: &TriBlock) -> TriBlock {
        assert_eq!(self.size(), other.size());
        let rows = (0..self.size())
            .map(|n| (0..=n).map(|k| (k..=n).map(|j| &self.rows[n][j] * &other.rows[j][k]).sum()).collect())
            .collect();
        TriBlock { rows, parity_checkerboard: self.parity_checkerboard && other.parity_checkerboard }
    }

    pub fn is_identity(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(n, row)| row.iter().enumerate().all(|(k, x)| if k == n { x.is_one() } else { x.is_zero() }))
    }

    pub fn has_unit_diagonal(&self) -> bool {
        self.rows.iter().enumerate().all(|(n, row)| row[n].is_one())
    }

    /// Whether every entry with `n + k` odd is zero.
    pub fn is_checkerboard(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(n, row)| row.iter().enumerate().all(|(k, x)| (n + k) % 2 == 0 || x.is_zero()))
    }
}

struct TableCache {
    r: RwLock<Option<Arc<TriTable<ExactInt>>>>,
    rinv: RwLock<Option<Arc<TriTable<ExactInt>>>>,
}

static TABLES: TableCache = TableCache { r: RwLock::new(None), rinv: RwLock::new(None) };

fn cached(
    slot: &RwLock<Option<Arc<TriTable<ExactInt>>>>,
    n_max: usize,
    build: impl FnOnce(usize) -> TriTable<ExactInt>,
) -> Arc<TriTable<ExactInt>> {
    if let Some(t) = slot.read().expect("table lock").as_ref() {
        if t.n_max() >= n_max {
            return Arc::clone(t);
        }
    }
    let mut guard = slot.write().expect("table lock");
    if let Some(t) = guard.as_ref() {
        if t.n_max() >= n_max {
            return Arc::clone(t);
        }
    }
    // Grow geometrically so repeated small extensions stay cheap.
    let target = guard.as_ref().map_or(n_max, |t| n_max.max(t.n_max() * 3 / 2));
    let t = Arc::new(build(target));
    *guard = Some(Arc::clone(&t));
    t
}

/// Exact `R(n,k)` for `0 <= k <= n <= n_max`, shared across callers.
pub(crate) fn r_table(n_max: usize) -> Arc<TriTable<ExactInt>> {
    cached(&TABLES.r, n_max, |n| {
        let u = u_upto(n / 2);
        recur::r_table(&Integers, &u, n, n)
    })
}

/// Exact `R^{-1}(n,k)` for `0 <= k <= n <= n_max`, shared across callers.
pub(crate) fn rinv_table(n_max: usize) -> Arc<TriTable<ExactInt>> {
    cached(&TABLES.rinv, n_max, |n| recur::lower_inverse(&Integers, &r_table(n)))
}

/// The `N x N` block of `R`, from the Bell recurrence.
pub fn r_block(size: usize) -> TriBlock {
    assert!(size >= 1);
    TriBlock::from_table(&r_table(size - 1), size, true)
}

/// The `N x N` block of `R^{-1}`, by forward substitution on [`r_block`].
pub fn rinv_block(size: usize) -> TriBlock {
    assert!(size >= 1);
    TriBlock::from_table(&rinv_table(size - 1), size, true)
}

fn check_indices(n: usize, k: usize) -> Result<()> {
    if k > n {
        Err(Error::Domain(format!("column {k} exceeds row {n}")))
    } else {
        Ok(())
    }
}

fn integral(x: ExactRat, what: &str) -> Result<ExactInt> {
    if x.is_integer() {
        Ok(x.to_integer())
    } else {
        Err(Error::Inconsistency(format!("{what} = {x} is not an integer")))
    }
}

/// `R(n,k)` straight from the series definition.
pub fn big_r_entry(n: usize, k: usize) -> Result<ExactInt> {
    check_indices(n, k)?;
    if (n - k) % 2 == 1 || (k == 0 && n > 0) {
        return Ok(BigInt::zero());
    }
    if n == k {
        return Ok(BigInt::one());
    }
    let u = odd_egf(&u_upto(n / 2), n);
    let c = u.pow(k as i64)?.coeff(n as i64)?.clone();
    let scale = (factorial(n) / factorial(k)) << ((n - k) / 2);
    integral(c * ExactRat::from_integer(scale), &format!("R({n},{k})"))
}

/// `r(n,k) = R(2n,2k)`.
pub fn r_entry(n: usize, k: usize) -> Result<ExactInt> {
    big_r_entry(2 * n, 2 * k)
}

/// `R^{-1}_y(n,k) = 2^{(n-k)/2} (n-1)!/(k-1)! [t^{-k}] U_y(t)^{-n}`
/// with `U_y = sum_j y(j) t^{2j+1}/(2j+1)!`; `R^{-1}_y(n,0) = [n = 0]`.
pub fn rinv_y(n: usize, k: usize, y: &dyn Fn(usize) -> ExactInt) -> Result<ExactInt> {
    check_indices(n, k)?;
    if !y(0).is_one() {
        return Err(Error::Domain("y(0) must be 1".into()));
    }
    if k == 0 {
        return Ok(if n == 0 { BigInt::one() } else { BigInt::zero() });
    }
    if (n - k) % 2 == 1 {
        return Ok(BigInt::zero());
    }
    let ys: Vec<ExactInt> = (0..=(n - k) / 2).map(y).collect();
    // U_y through t^{n-k+1}, so U_y^{-n} is known through t^{-k}.
    let series = odd_egf(&ys, n - k + 1);
    let c = series.pow(-(n as i64))?.coeff(-(k as i64))?.clone();
    let scale = (factorial(n - 1) / factorial(k - 1)) << ((n - k) / 2);
    let x = c * ExactRat::from_integer(scale);
    if x.is_integer() {
        Ok(x.to_integer())
    } else {
        Err(Error::Integrality { what: format!("R^-1_y({n},{k})"), index: n })
    }
}

/// `R^{-1}(n,k)` from the Lagrange inversion formula.
pub fn rinv_lagrange(n: usize, k: usize) -> Result<ExactInt> {
    let u = u_upto(n / 2 + 1);
    rinv_y(n, k, &|j| u[j].clone()).map_err(|e| match e {
        Error::Integrality { what, .. } => Error::Inconsistency(format!("{what} is not an integer")),
        other => other,
    })
}

/// `R^{-1}(2n,2k)` as an explicit signed sum over odd-part tuples
/// without parts of size 1:
/// `sum_m (-1)^m 2^{n-k} sum_c (2n+m-1)! / ((2k-1)! prod i!^{c_i} c_i!) prod u((i-1)/2)^{c_i}`
/// where `c` has `m` parts of total size `2n-2k+m`.
pub fn rinv_partition_sum(n: usize, k: usize) -> Result<ExactInt> {
    if k < 1 || k > n {
        return Err(Error::Domain(format!("need 1 <= k <= n, got n={n}, k={k}")));
    }
    let u = u_upto(n - k + 1);
    let mut total = BigInt::zero();
    for m in 0..=(n - k) {
        let big_n = 2 * (n - k) + m;
        // (2n+m-1)!/(2k-1)! = C(big_n + 2k - 1, big_n) * big_n!
        let binom = factorial(big_n + 2 * k - 1) / (factorial(big_n) * factorial(2 * k - 1));
        let mut inner = BigInt::zero();
        for tuple in enumerate_odd_tuples(big_n, m, true) {
            let mut term = set_partition_fraction(big_n, tuple.parts())?;
            for &(i, c) in tuple.parts() {
                term *= num_traits::pow(u[(i - 1) / 2].clone(), c);
            }
            inner += term;
        }
        let signed = if m % 2 == 1 { -inner } else { inner };
        total += signed * binom;
    }
    Ok(total << (n - k))
}
