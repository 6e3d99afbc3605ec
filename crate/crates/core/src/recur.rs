//! Ring-generic batch recurrences for `u`, `v_x`, `R`, `R^{-1}` and `d`.
//!
//! Everything here uses only ring operations (no division), so it runs
//! unchanged over [`Integers`](crate::Integers) and over residues
//! [`Zmod`](crate::Zmod). Over `Z/2^e` the matrices are computed only inside
//! the band `n - k < 2e`, since `R(n,k)` and `R^{-1}(n,k)` carry the factor
//! `2^{(n-k)/2}`.

use crate::IntRing;

/// Row-by-row Pascal triangle with an optional column cap.
struct Pascal<E> {
    n: usize,
    row: Vec<E>,
    cap: usize,
}

impl<E: Clone> Pascal<E> {
    fn new<R: IntRing<Elem = E>>(ring: &R, cap: usize) -> Self {
        Pascal { n: 0, row: vec![ring.one()], cap }
    }

    fn advance<R: IntRing<Elem = E>>(&mut self, ring: &R) {
        self.n += 1;
        let len = (self.n + 1).min(self.cap.saturating_add(1));
        let mut next = Vec::with_capacity(len);
        next.push(ring.one());
        for j in 1..len {
            let left = &self.row[j - 1];
            next.push(match self.row.get(j) {
                Some(right) => ring.add(left, right),
                None => left.clone(),
            });
        }
        self.row = next;
    }

    fn advance_to<R: IntRing<Elem = E>>(&mut self, ring: &R, n: usize) {
        while self.n < n {
            self.advance(ring);
        }
    }

    fn get(&self, j: usize) -> &E {
        &self.row[j]
    }
}

/// Band width in `R`-indices: entries with `n - k >= width` vanish in the ring.
pub fn band_width<R: IntRing>(ring: &R) -> Option<usize> {
    ring.two_power_exponent().map(|e| 2 * e as usize)
}

fn products<R: IntRing>(ring: &R, n_max: usize, first: u64) -> Vec<R::Elem> {
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(ring.one());
    for j in 1..=n_max as u64 {
        let f = ring.from_u64(4 * j - first);
        let next = ring.mul(&ring.mul(out.last().unwrap(), &f), &f);
        out.push(next);
    }
    out
}

/// `Pi_1(0..=n_max)` in the ring.
pub fn pi1_values<R: IntRing>(ring: &R, n_max: usize) -> Vec<R::Elem> {
    products(ring, n_max, 1)
}

/// `Pi_3(0..=n_max)` in the ring.
pub fn pi3_values<R: IntRing>(ring: &R, n_max: usize) -> Vec<R::Elem> {
    products(ring, n_max, 3)
}

/// `u(0..=n_max)` in the ring.
pub fn u_values<R: IntRing>(ring: &R, n_max: usize) -> Vec<R::Elem> {
    let pi1 = pi1_values(ring, n_max);
    let pi3 = pi3_values(ring, n_max);
    let mut pascal = Pascal::new(ring, usize::MAX);
    let mut u = Vec::with_capacity(n_max + 1);
    u.push(ring.one());
    for n in 1..=n_max {
        pascal.advance_to(ring, 2 * n + 1);
        let mut acc = pi1[n].clone();
        for m in 0..n {
            let term = ring.mul(&ring.mul(pascal.get(2 * m + 1), &pi3[n - m]), &u[m]);
            acc = ring.sub(&acc, &term);
        }
        u.push(acc);
    }
    u
}

/// `v_x(0..=n_max)` in the ring; `x[0]` is ignored and taken as 1.
///
/// The halved symmetric sum is folded so the middle term uses
/// `C(2n,n)/2 = C(2n-1,n-1)`; no division is needed.
pub fn vx_values<R: IntRing>(ring: &R, x: &[R::Elem], n_max: usize) -> Vec<R::Elem> {
    assert!(x.len() > n_max, "x must be given through index n_max");
    let two = ring.from_u64(2);
    let mut pascal = Pascal::new(ring, usize::MAX);
    let mut v = Vec::with_capacity(n_max + 1);
    v.push(ring.one());
    let mut pow2 = ring.one();
    for n in 1..=n_max {
        if n > 1 {
            pow2 = ring.mul(&pow2, &two);
        }
        let mut acc = ring.mul(&pow2, &x[n]);
        pascal.advance_to(ring, 2 * n - 1);
        if n % 2 == 0 {
            let h = &v[n / 2];
            let middle = ring.mul(pascal.get(n - 1), &ring.mul(h, h));
            acc = ring.sub(&acc, &middle);
        }
        pascal.advance_to(ring, 2 * n);
        for m in 1..n.div_ceil(2) {
            let term = ring.mul(pascal.get(2 * m), &ring.mul(&v[m], &v[n - m]));
            acc = ring.sub(&acc, &term);
        }
        v.push(acc);
    }
    v
}

/// Lower triangular table with entries kept for `k <= k_max` and
/// `n - k < band`; everything else reads as zero.
#[derive(Debug, Clone)]
pub struct TriTable<E> {
    rows: Vec<(usize, Vec<E>)>,
    zero: E,
    band: Option<usize>,
}

impl<E: Clone> TriTable<E> {
    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn band(&self) -> Option<usize> {
        self.band
    }

    pub fn get(&self, n: usize, k: usize) -> &E {
        match self.rows.get(n) {
            Some((lo, row)) if k >= *lo && k - lo < row.len() => &row[k - lo],
            _ => &self.zero,
        }
    }

    fn window(n: usize, k_max: usize, band: Option<usize>) -> (usize, usize) {
        let lo = band.map_or(0, |b| (n + 1).saturating_sub(b));
        (lo, n.min(k_max))
    }
}

/// `R_y(n,k) = 2^{(n-k)/2} n!/k! [t^n] U_y(t)^k` for `n <= n_max`, `k <= k_max`,
/// with `U_y = sum_j y(j) t^{2j+1}/(2j+1)!`.
///
/// Uses the partial Bell polynomial recurrence
/// `R(n,k) = sum_{i odd} C(n-1,i-1) 2^{(i-1)/2} y((i-1)/2) R(n-i,k-1)`.
/// `y` must cover index `(n_max - 1) / 2`, or `band / 2` when banded.
pub fn r_table<R: IntRing>(ring: &R, y: &[R::Elem], n_max: usize, k_max: usize) -> TriTable<R::Elem> {
    let band = band_width(ring);
    let cap = band.unwrap_or(usize::MAX);
    let mut pascal = Pascal::new(ring, cap);
    let two = ring.from_u64(2);
    let mut rows: Vec<(usize, Vec<R::Elem>)> = Vec::with_capacity(n_max + 1);
    rows.push((0, vec![ring.one()]));
    let mut table = TriTable { rows: Vec::new(), zero: ring.zero(), band };
    for n in 1..=n_max {
        pascal.advance_to(ring, n - 1);
        // Weights w_i for odd i <= min(n, band).
        let i_max = n.min(cap);
        let mut weights = Vec::with_capacity(i_max.div_ceil(2));
        let mut pow2 = ring.one();
        for i in (1..=i_max).step_by(2) {
            if i > 1 {
                pow2 = ring.mul(&pow2, &two);
            }
            let yi = &y[(i - 1) / 2];
            weights.push(ring.mul(&ring.mul(pascal.get(i - 1), &pow2), yi));
        }
        let (lo, hi) = TriTable::<R::Elem>::window(n, k_max, band);
        let mut row = Vec::with_capacity(hi + 1 - lo.min(hi + 1));
        for k in lo..=hi {
            if k == 0 || (n - k) % 2 == 1 {
                row.push(ring.zero());
                continue;
            }
            let mut acc = ring.zero();
            for (idx, w) in weights.iter().enumerate() {
                let i = 2 * idx + 1;
                if i > n - k + 1 {
                    break;
                }
                let prev = get_row(&rows, n - i, k - 1, &table.zero);
                if !ring.is_zero(prev) {
                    acc = ring.add(&acc, &ring.mul(w, prev));
                }
            }
            row.push(acc);
        }
        rows.push((lo, row));
    }
    table.rows = rows;
    table
}

fn get_row<'a, E>(rows: &'a [(usize, Vec<E>)], n: usize, k: usize, zero: &'a E) -> &'a E {
    let (lo, row) = &rows[n];
    if k >= *lo && k - lo < row.len() {
        &row[k - lo]
    } else {
        zero
    }
}

/// Inverse of a unit lower triangular table, by forward substitution:
/// `X(n,k) = -sum_{j=k}^{n-1} T(n,j) X(j,k)`.
///
/// `t` must hold every column (`k_max >= n_max`).
pub fn lower_inverse<R: IntRing>(ring: &R, t: &TriTable<R::Elem>) -> TriTable<R::Elem> {
    let n_max = t.n_max();
    let band = t.band;
    let width = band.unwrap_or(usize::MAX);
    let mut rows: Vec<(usize, Vec<R::Elem>)> = Vec::with_capacity(n_max + 1);
    let zero = ring.zero();
    for n in 0..=n_max {
        let (lo, _) = TriTable::<R::Elem>::window(n, n, band);
        let mut row = vec![ring.zero(); n + 1 - lo];
        row[n - lo] = ring.one();
        for k in (lo..n).rev() {
            let j_hi = (n - 1).min(k.saturating_add(width - 1));
            let mut acc = ring.zero();
            for j in k..=j_hi {
                let tn = t.get(n, j);
                if ring.is_zero(tn) {
                    continue;
                }
                let xj = get_row(&rows, j, k, &zero);
                if !ring.is_zero(xj) {
                    acc = ring.add(&acc, &ring.mul(tn, xj));
                }
            }
            row[k - lo] = ring.neg(&acc);
        }
        rows.push((lo, row));
    }
    TriTable { rows, zero, band }
}

/// `d(0..=n_max)` from `d(n) = v(n) - sum_{k<n} R(2n,2k) d(k)`.
pub fn d_recursive_values<R: IntRing>(ring: &R, v: &[R::Elem], r: &TriTable<R::Elem>, n_max: usize) -> Vec<R::Elem> {
    let mut d = Vec::with_capacity(n_max + 1);
    for (n, vn) in v.iter().enumerate().take(n_max + 1) {
        let mut acc = vn.clone();
        let k_lo = r.band().map_or(0, |b| n.saturating_sub(b / 2));
        for (k, dk) in d.iter().enumerate().skip(k_lo) {
            let rk = r.get(2 * n, 2 * k);
            if !ring.is_zero(rk) {
                acc = ring.sub(&acc, &ring.mul(rk, dk));
            }
        }
        d.push(acc);
    }
    d
}

/// `d(0..=n_max)` from `d(n) = sum_k R^{-1}(2n,2k) v(k)`.
pub fn d_inverse_values<R: IntRing>(ring: &R, v: &[R::Elem], rinv: &TriTable<R::Elem>, n_max: usize) -> Vec<R::Elem> {
    (0..=n_max)
        .map(|n| {
            (0..=n).fold(ring.zero(), |acc, k| {
                let x = rinv.get(2 * n, 2 * k);
                if ring.is_zero(x) {
                    acc
                } else {
                    ring.add(&acc, &ring.mul(x, &v[k]))
                }
            })
        })
        .collect()
}
