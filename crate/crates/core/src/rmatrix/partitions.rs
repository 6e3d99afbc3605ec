use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::seqcore::factorial;
use crate::{Error, ExactInt, Result};

/// Multiplicities `c_i` of odd block sizes `i`; even sizes never occur.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OddTuple {
    /// `(i, c_i)` with `i` odd, `c_i > 0`, sorted by descending `i`.
    parts: Vec<(usize, usize)>,
}

impl OddTuple {
    /// Panics on an even part size.
    pub fn new(mut parts: Vec<(usize, usize)>) -> Self {
        parts.retain(|&(_, c)| c > 0);
        assert!(parts.iter().all(|&(i, _)| i % 2 == 1), "odd tuples have odd part sizes only");
        parts.sort_unstable_by_key(|&(i, _)| std::cmp::Reverse(i));
        OddTuple { parts }
    }

    pub fn parts(&self) -> &[(usize, usize)] {
        &self.parts
    }

    /// `c_i`, zero for absent sizes.
    pub fn count(&self, i: usize) -> usize {
        self.parts.iter().find(|&&(j, _)| j == i).map_or(0, |&(_, c)| c)
    }

    /// `sum c_i`
    pub fn len(&self) -> usize {
        self.parts.iter().map(|&(_, c)| c).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `sum i c_i`
    pub fn weight(&self) -> usize {
        self.parts.iter().map(|&(i, c)| i * c).sum()
    }
}

impl fmt::Display for OddTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.parts.iter().map(|(i, c)| format!("c{i}={c}")).collect();
        write!(f, "{{{}}}", body.join(","))
    }
}

/// All tuples with odd part sizes, `K` parts and total weight `N`;
/// part size 1 is excluded when `c1_zero` is set.
///
/// Enumerated by descending largest part.
pub fn enumerate_odd_tuples(n: usize, k: usize, c1_zero: bool) -> Vec<OddTuple> {
    let min_part = if c1_zero { 3 } else { 1 };
    let mut out = Vec::new();
    if n % 2 != k % 2 {
        return out;
    }
    let largest = if n % 2 == 1 { n } else { n.saturating_sub(1) };
    let mut stack = Vec::new();
    descend(n, k, largest, min_part, &mut stack, &mut out);
    out
}

fn descend(
    n: usize,
    k: usize,
    max_part: usize,
    min_part: usize,
    stack: &mut Vec<(usize, usize)>,
    out: &mut Vec<OddTuple>,
) {
    if k == 0 {
        if n == 0 {
            out.push(OddTuple { parts: stack.clone() });
        }
        return;
    }
    if max_part < min_part || n < k * min_part || n > k * max_part {
        return;
    }
    let mut i = max_part;
    loop {
        let c_max = (n / i).min(k);
        for c in (1..=c_max).rev() {
            stack.push((i, c));
            let next = if i >= min_part + 2 { i - 2 } else { 0 };
            descend(n - i * c, k - c, next, min_part, stack, out);
            stack.pop();
        }
        if i < min_part + 2 {
            break;
        }
        i -= 2;
    }
}

/// `N! / prod_i (i!^{c_i} c_i!)`, the number of partitions of an `N`-set
/// with `c_i` blocks of size `i`. Parts are `(i, c_i)` of any size `i >= 1`.
pub fn set_partition_fraction(n: usize, parts: &[(usize, usize)]) -> Result<ExactInt> {
    let weight: usize = parts.iter().map(|&(i, c)| i * c).sum();
    if weight != n || parts.iter().any(|&(i, c)| i == 0 && c > 0) {
        return Err(Error::Domain(format!("block sizes sum to {weight}, expected {n}")));
    }
    let mut den = BigInt::one();
    for &(i, c) in parts {
        den *= num_traits::pow(factorial(i), c) * factorial(c);
    }
    let (q, r) = factorial(n).div_rem(&den);
    debug_assert!(r.is_zero());
    Ok(q)
}
