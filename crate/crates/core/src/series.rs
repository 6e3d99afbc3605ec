//! Truncated power series with an explicit truncation order.
//!
//! A [`TruncSeries`] stores the coefficients of `t^offset, ..., t^(offset+order)`.
//! Coefficients above `offset + order` are unknown and never read or
//! invented. Binary operations keep the smaller of the known windows.
//! A negative `offset` gives the Laurent series needed for `U^{-n}`.

use std::fmt;

use num_traits::Num;

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct TruncSeries<T> {
    coeffs: Vec<T>,
    offset: i64,
}

impl<T: Clone + Num> TruncSeries<T> {
    /// Power series known through `t^order`; `coeffs` is zero-padded or cut.
    pub fn new(mut coeffs: Vec<T>, order: usize) -> Self {
        coeffs.resize(order + 1, T::zero());
        TruncSeries { coeffs, offset: 0 }
    }

    /// `t^offset * (c_0 + c_1 t + ...)` known through relative order `order`.
    pub fn laurent(offset: i64, coeffs: Vec<T>, order: usize) -> Self {
        TruncSeries { offset, ..Self::new(coeffs, order) }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(T::one(), order)
    }

    pub fn constant(c: T, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    /// Relative truncation order.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    /// Largest exponent whose coefficient is known.
    pub fn max_exponent(&self) -> i64 {
        self.offset + self.order() as i64
    }

    /// Coefficients of `t^offset ..= t^(offset+order)`.
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `t^exponent`; exponents outside the window are an error.
    pub fn coeff(&self, exponent: i64) -> Result<&T> {
        if exponent < self.offset || exponent > self.max_exponent() {
            return Err(Error::OutOfRange { exponent, low: self.offset, high: self.max_exponent() });
        }
        Ok(&self.coeffs[(exponent - self.offset) as usize])
    }

    /// Drop knowledge above relative order `order`.
    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        TruncSeries { coeffs: self.coeffs[..=order].to_vec(), offset: self.offset }
    }

    pub fn shift(mut self, by: i64) -> Self {
        self.offset += by;
        self
    }

    /// Substitute `t -> t^k` for `k >= 1`.
    pub fn stretch(&self, k: usize) -> Self {
        assert!(k >= 1, "stretch factor must be positive");
        let mut coeffs = vec![T::zero(); self.order() * k + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            coeffs[j * k] = c.clone();
        }
        TruncSeries { coeffs, offset: self.offset * k as i64 }
    }

    /// Move leading zero coefficients into the offset (losing that much order).
    ///
    /// Returns `None` when every known coefficient is zero.
    pub fn normalized(&self) -> Option<Self> {
        let lead = self.coeffs.iter().position(|c| !c.is_zero())?;
        Some(TruncSeries { coeffs: self.coeffs[lead..].to_vec(), offset: self.offset + lead as i64 })
    }

    pub fn scale(&self, c: &T) -> Self {
        TruncSeries { coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect(), offset: self.offset }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a - b)
    }

    fn combine(&self, other: &Self, op: impl Fn(T, T) -> T) -> Self {
        let offset = self.offset.min(other.offset);
        let top = self.max_exponent().min(other.max_exponent());
        let len = (top - offset + 1).max(1) as usize;
        let at = |s: &Self, e: i64| {
            let i = e - s.offset;
            if i < 0 {
                T::zero()
            } else {
                s.coeffs[i as usize].clone()
            }
        };
        let coeffs = (0..len as i64).map(|i| op(at(self, offset + i), at(other, offset + i))).collect();
        TruncSeries { coeffs, offset }
    }

    /// Cauchy product; the result keeps the smaller relative order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut coeffs = vec![T::zero(); order + 1];
        for (i, a) in self.coeffs.iter().take(order + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(order + 1 - i).enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
                }
            }
        }
        TruncSeries { coeffs, offset: self.offset + other.offset }
    }

    /// Multiplicative inverse; the stored leading coefficient must be nonzero.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let inv0 = T::one() / c0.clone();
        let n = self.order();
        let mut g: Vec<T> = Vec::with_capacity(n + 1);
        g.push(inv0.clone());
        for k in 1..=n {
            let mut acc = T::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc = acc + self.coeffs[j].clone() * g[k - j].clone();
                }
            }
            g.push(T::zero() - acc * inv0.clone());
        }
        Ok(TruncSeries { coeffs: g, offset: -self.offset })
    }

    /// Square root with constant term 1 by Newton iteration
    /// `g <- (g + f/g) / 2`, doubling the correct order each round.
    pub fn sqrt(&self) -> Result<Self> {
        if self.offset != 0 || !self.coeffs[0].is_one() {
            return Err(Error::Domain("square root needs a power series with constant term 1".into()));
        }
        let two = T::one() + T::one();
        let half = T::one() / two;
        let target = self.order();
        let mut g = Self::one(0);
        let mut prec = 0;
        while prec < target {
            prec = (2 * prec + 1).min(target);
            let g_ext = Self::new(g.coeffs.clone(), prec);
            let f = self.truncate(prec);
            g = g_ext.add(&f.mul(&g_ext.inverse()?)).scale(&half);
        }
        Ok(g)
    }

    /// Integer power; negative powers first move leading zeros into the offset.
    pub fn pow(&self, k: i64) -> Result<Self> {
        if k < 0 {
            let base = self.normalized().ok_or(Error::NotInvertible)?;
            return base.inverse()?.pow(-k);
        }
        let mut acc = Self::one(self.order());
        let mut base = self.clone();
        let mut e = k as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }
}

/// Gauss hypergeometric series `2F1[a, b; c; scale * s]` through `s^order`.
///
/// Terms follow the ratio `(a+j)(b+j) / ((c+j)(1+j)) * scale`. A vanishing
/// `c + j` inside the requested window is reported as a pole.
pub fn hyp2f1<T: Clone + Num>(a: &T, b: &T, c: &T, scale: &T, order: usize) -> Result<TruncSeries<T>> {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut term = T::one();
    let mut j = T::zero();
    coeffs.push(term.clone());
    for step in 0..order {
        let denom = (c.clone() + j.clone()) * (T::one() + j.clone());
        if denom.is_zero() {
            return Err(Error::Pole { term: step + 1 });
        }
        term = term * (a.clone() + j.clone()) * (b.clone() + j.clone()) * scale.clone() / denom;
        coeffs.push(term.clone());
        j = j + T::one();
    }
    Ok(TruncSeries::new(coeffs, order))
}

impl<T: fmt::Display + Num + Clone> fmt::Display for TruncSeries<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})*t^{}", self.offset + i as i64)?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.max_exponent() + 1)
    }
}
