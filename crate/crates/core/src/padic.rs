//! p-adic valuations, base-p digit sums and carry counts.

use std::fmt;
use std::ops::Add;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::{Error, Result};

/// Exponent `e` with `p^e` exactly dividing a nonzero integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Valuation(pub u64);

impl Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        Valuation(self.0 + rhs.0)
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// `v_p(x)` by repeated division.
pub fn vp(x: &BigInt, p: u64) -> Result<Valuation> {
    require_prime(p)?;
    if x.is_zero() {
        return Err(Error::UndefinedValuation);
    }
    Ok(Valuation(strip(x.magnitude().clone(), p).1))
}

/// `v_p` of a nonzero rational, which may be negative.
///
/// `BigRational` keeps its fractions reduced, so this is simply
/// `v_p(numerator) - v_p(denominator)`.
pub fn vp_rational(x: &BigRational, p: u64) -> Result<i64> {
    let num = vp(x.numer(), p)?;
    let den = vp(x.denom(), p)?;
    Ok(num.0 as i64 - den.0 as i64)
}

/// `v_p(x)` with `x = 0` mapped to `None` (infinite valuation).
pub fn vp_or_inf(x: &BigInt, p: u64) -> Result<Option<Valuation>> {
    match vp(x, p) {
        Ok(v) => Ok(Some(v)),
        Err(Error::UndefinedValuation) => Ok(None),
        Err(e) => Err(e),
    }
}

fn strip(mut x: BigUint, p: u64) -> (BigUint, u64) {
    let p = BigUint::from(p);
    let mut count = 0;
    loop {
        let (q, r) = x.div_rem(&p);
        if !r.is_zero() {
            return (x, count);
        }
        x = q;
        count += 1;
    }
}

fn digits(n: &BigUint, p: u64) -> Vec<u64> {
    if p == 2 {
        return (0..n.bits()).map(|i| n.bit(i) as u64).collect();
    }
    let mut out = Vec::new();
    let mut n = n.clone();
    let base = BigUint::from(p);
    while !n.is_zero() {
        let (q, r) = n.div_rem(&base);
        out.push(r.to_u64().expect("digit < p"));
        n = q;
    }
    out
}

/// Sum of the base-`p` digits of `n`.
pub fn digit_sum(n: &BigUint, p: u64) -> u64 {
    digits(n, p).into_iter().sum()
}

/// Legendre: `v_p(N!) = (N - s_p(N)) / (p - 1)`.
pub fn vp_factorial(n: &BigUint, p: u64) -> Result<Valuation> {
    require_prime(p)?;
    let s = BigUint::from(digit_sum(n, p));
    let v = (n - s) / BigUint::from(p - 1);
    Ok(Valuation(v.to_u64().expect("valuation fits in u64")))
}

/// Number of carries when adding `a` and `b` in base `p`.
pub fn carries_add(a: &BigUint, b: &BigUint, p: u64) -> Result<u64> {
    require_prime(p)?;
    let da = digits(a, p);
    let db = digits(b, p);
    let mut carry = 0u64;
    let mut count = 0u64;
    for i in 0..da.len().max(db.len()) {
        let s = da.get(i).copied().unwrap_or(0) + db.get(i).copied().unwrap_or(0) + carry;
        carry = u64::from(s >= p);
        count += carry;
    }
    Ok(count)
}

/// Kummer: `v_p(C(N, K))` is the number of carries in `K + (N - K)`.
pub fn vp_binomial(n: &BigInt, k: &BigInt, p: u64) -> Result<Valuation> {
    if k.sign() == num_bigint::Sign::Minus || k > n {
        return Err(Error::Domain(format!("binomial C({n}, {k}) needs 0 <= K <= N")));
    }
    let k_mag = k.magnitude();
    let rest = (n - k).magnitude().clone();
    Ok(Valuation(carries_add(k_mag, &rest, p)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::ToBigUint;
    use num_traits::One;
    use proptest::prelude::*;

    fn big(n: u64) -> BigUint {
        n.to_biguint().unwrap()
    }

    fn factorial(n: u64) -> BigInt {
        (1..=n).fold(BigInt::one(), |acc, j| acc * j)
    }

    fn binomial(n: u64, k: u64) -> BigInt {
        factorial(n) / (factorial(k) * factorial(n - k))
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(vp(&BigInt::from(24), 2).unwrap(), Valuation(3));
        assert_eq!(vp(&BigInt::from(7), 5).unwrap(), Valuation(0));
        assert_eq!(vp(&BigInt::from(-26199), 3).unwrap(), Valuation(2));
    }

    #[test]
    fn d5_factorization_by_trial_division() {
        // -26199 = -(3^2 * 41 * 71)
        let mut n = 26199u64;
        let mut threes = 0;
        while n.is_multiple_of(3) {
            n /= 3;
            threes += 1;
        }
        assert_eq!(threes, 2);
        assert_eq!(n, 41 * 71);
    }

    #[test]
    fn valuation_errors() {
        assert_eq!(vp(&BigInt::zero(), 3), Err(Error::UndefinedValuation));
        assert_eq!(vp(&BigInt::from(12), 4), Err(Error::NotPrime(4)));
        assert_eq!(vp(&BigInt::from(12), 1), Err(Error::NotPrime(1)));
        assert_eq!(vp_or_inf(&BigInt::zero(), 3), Ok(None));
    }

    #[test]
    fn rational_valuation_can_be_negative() {
        let x = BigRational::new(BigInt::from(9), BigInt::from(40));
        assert_eq!(vp_rational(&x, 2).unwrap(), -3);
        assert_eq!(vp_rational(&x, 3).unwrap(), 2);
        assert_eq!(vp_rational(&x, 7).unwrap(), 0);
    }

    #[test]
    fn digit_sum_examples() {
        assert_eq!(digit_sum(&big(10), 3), 2);
        assert_eq!(digit_sum(&big(0), 7), 0);
        for p in [2u64, 3, 5, 7, 13] {
            for k in 0..=10u32 {
                assert_eq!(digit_sum(&big(p.pow(k)), p), 1, "p={p} k={k}");
            }
        }
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(vp_factorial(&big(4), 2).unwrap(), Valuation(3));
        assert_eq!(vp_factorial(&big(10), 3).unwrap(), Valuation(4));
        assert_eq!(vp_factorial(&big(0), 5).unwrap(), Valuation(0));
        assert_eq!(vp(&factorial(10), 3).unwrap(), Valuation(4));
    }

    #[test]
    fn carries_examples() {
        assert_eq!(carries_add(&big(2), &big(2), 2).unwrap(), 1);
        assert_eq!(carries_add(&big(3), &big(3), 3).unwrap(), 0);
        assert_eq!(carries_add(&big(987654), &big(0), 7).unwrap(), 0);
    }

    #[test]
    fn kummer_examples() {
        let b = |n: i64| BigInt::from(n);
        assert_eq!(vp_binomial(&b(4), &b(2), 2).unwrap(), Valuation(1));
        assert_eq!(vp_binomial(&b(91), &b(0), 13).unwrap(), Valuation(0));
        assert_eq!(vp_binomial(&b(13), &b(6), 13).unwrap(), Valuation(1));
        assert_eq!(binomial(13, 6), BigInt::from(1716));
        assert!(matches!(vp_binomial(&b(3), &b(4), 2), Err(Error::Domain(_))));
        assert!(matches!(vp_binomial(&b(3), &b(-1), 2), Err(Error::Domain(_))));
    }

    #[test]
    fn legendre_matches_factorization_small() {
        for p in [2u64, 3, 5, 7, 13] {
            let mut fact = BigInt::one();
            for n in 0..=200u64 {
                if n > 0 {
                    fact *= n;
                }
                assert_eq!(vp_factorial(&big(n), p).unwrap(), vp(&fact, p).unwrap());
            }
        }
    }

    proptest! {
        #[test]
        fn carries_match_digit_sums(a in 0u64..1_000_000_000, b in 0u64..1_000_000_000, pi in 0usize..5) {
            let p = [2u64, 3, 5, 7, 13][pi];
            let lhs = digit_sum(&big(a), p) + digit_sum(&big(b), p) - digit_sum(&big(a + b), p);
            prop_assert_eq!(lhs % (p - 1), 0);
            prop_assert_eq!(lhs / (p - 1), carries_add(&big(a), &big(b), p).unwrap());
        }

        #[test]
        fn valuation_is_additive(a in 1i64..1_000_000, b in 1i64..1_000_000, pi in 0usize..5) {
            let p = [2u64, 3, 5, 7, 13][pi];
            let (a, b) = (BigInt::from(a), BigInt::from(b));
            prop_assert_eq!(vp(&(&a * &b), p).unwrap(), vp(&a, p).unwrap() + vp(&b, p).unwrap());
        }
    }
}
