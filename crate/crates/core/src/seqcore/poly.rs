use std::fmt;

use num_bigint::BigInt;
use num_traits::Num;

use crate::{ExactRat, RatPoly};

/// Dense polynomial, ascending degree, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Clone + Num> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        let mut k = T::zero();
        let mut out = Vec::with_capacity(self.coeffs.len().saturating_sub(1));
        for c in self.coeffs.iter().skip(1) {
            k = k + T::one();
            out.push(c.clone() * k.clone());
        }
        Poly::new(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, c: &T) -> Self {
        Poly::new(self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }
}

impl<T: fmt::Display + Clone + Num> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("({c})*t"),
                _ => format!("({c})*t^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

fn q(n: i64, d: i64) -> ExactRat {
    ExactRat::new(BigInt::from(n), BigInt::from(d))
}

/// `p_0, ..., p_{n_max}` from `p_{-1} = 0`, `p_0 = 1` and
/// `p_{n+1} = (1/6 - 96t^2) p_n' + 16(4n+1) t p_n - n(n-1/2)(256t^2 + 4/3) p_{n-1}`.
pub fn taylor_polys(n_max: usize) -> Vec<RatPoly> {
    let a = Poly::new(vec![q(1, 6), q(0, 1), q(-96, 1)]);
    let b = Poly::new(vec![q(4, 3), q(0, 1), q(256, 1)]);
    let mut out: Vec<RatPoly> = vec![Poly::new(vec![q(1, 1)])];
    let mut prev = Poly::zero();
    for n in 0..n_max {
        let cur = out.last().unwrap();
        let ni = n as i64;
        let lin = Poly::new(vec![q(0, 1), q(16 * (4 * ni + 1), 1)]);
        // n(n - 1/2) = n(2n - 1)/2
        let c = q(ni * (2 * ni - 1), 2);
        let next = a.mul(&cur.derivative()).add(&lin.mul(cur)).add(&b.mul(&prev).scale(&(q(0, 1) - c)));
        prev = cur.clone();
        out.push(next);
    }
    out
}

pub fn taylor_poly(n: usize) -> RatPoly {
    taylor_polys(n).pop().expect("nonempty")
}
