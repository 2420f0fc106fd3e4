//! Exact counting of rooted trees and related closed-form counts.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Incremental cache of the number of unlabeled unordered rooted trees with
/// `n` nodes (OEIS A000081), computed by the Euler-transform recurrence
///
/// ```text
/// a(1) = 1,   a(n+1) = (1/n) * sum_{k=1..n} ( sum_{d|k} d*a(d) ) * a(n-k+1)
/// ```
#[derive(Default)]
pub struct TreeCounts {
    a: Vec<BigUint>, // a[i] = count for i nodes; a[0] unused
    b: Vec<BigUint>, // b[k] = sum_{d|k} d*a(d); b[0] unused
}

impl TreeCounts {
    pub fn new() -> Self {
        TreeCounts {
            a: vec![BigUint::zero(), BigUint::one()],
            b: vec![BigUint::zero()],
        }
    }

    pub fn count(&mut self, n: usize) -> Result<&BigUint> {
        if n == 0 {
            return Err(Error::ZeroNodeCount);
        }
        self.ensure(n);
        Ok(&self.a[n])
    }

    /// `log2 a(n)`, the entropy in bits of the uniform source over all
    /// rooted trees with `n` nodes.
    pub fn log2_count(&mut self, n: usize) -> Result<f64> {
        Ok(log2_biguint(self.count(n)?))
    }

    fn ensure(&mut self, n: usize) {
        while self.a.len() <= n {
            let m = self.a.len(); // computing a(m)
            let mut divisor_sum = BigUint::zero();
            let k = m - 1;
            for d in 1..=k {
                if k % d == 0 {
                    divisor_sum += BigUint::from(d) * &self.a[d];
                }
            }
            self.b.push(divisor_sum);
            let mut total = BigUint::zero();
            for j in 1..=k {
                total += &self.b[j] * &self.a[m - j];
            }
            let (value, rem) = num_integer::div_rem(total, BigUint::from(k));
            debug_assert!(rem.is_zero(), "recurrence sum must divide evenly");
            self.a.push(value);
        }
    }
}

/// Number of unlabeled unordered rooted trees with `n` nodes.
pub fn count_trees(n: usize) -> Result<BigUint> {
    Ok(TreeCounts::new().count(n)?.clone())
}

/// Number of unlabeled ordered rooted trees with `n` nodes: Catalan(n-1).
pub fn ordered_rooted_count(n: usize) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::ZeroNodeCount);
    }
    let m = BigUint::from(n - 1);
    let binom = num_integer::binomial(&m * 2u32, m);
    Ok(binom / BigUint::from(n))
}

/// Number of labeled unrooted trees: n^(n-2), with 1 for one or two nodes.
pub fn labeled_tree_count(n: usize) -> Result<BigUint> {
    match n {
        0 => Err(Error::ZeroNodeCount),
        1 | 2 => Ok(BigUint::one()),
        _ => Ok(BigUint::from(n).pow(n as u32 - 2)),
    }
}

/// Base-2 logarithm of a positive big integer, to double precision.
pub(crate) fn log2_biguint(x: &BigUint) -> f64 {
    debug_assert!(!x.is_zero());
    let bits = x.bits();
    if bits <= 53 {
        return x.to_f64().unwrap().log2();
    }
    let shift = bits - 53;
    let top = (x >> shift).to_f64().unwrap();
    top.log2() + shift as f64
}

/// `ceil(log2 n)`; 0 for n <= 1. The label field width used throughout is
/// `max(1, ceil_log2(n))`.
pub(crate) fn ceil_log2(n: usize) -> u32 {
    if n <= 1 {
        0
    } else {
        (n - 1).ilog2() + 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_prefix_of_the_sequence() {
        let mut counts = TreeCounts::new();
        let expect: [u64; 14] = [1, 1, 2, 4, 9, 20, 48, 115, 286, 719, 1842, 4766, 12486, 32973];
        for (i, &want) in expect.iter().enumerate() {
            assert_eq!(counts.count(i + 1).unwrap(), &BigUint::from(want), "a({})", i + 1);
        }
        assert!(matches!(counts.count(0), Err(Error::ZeroNodeCount)));
    }

    #[test]
    fn catalan_and_cayley() {
        assert_eq!(ordered_rooted_count(1).unwrap(), BigUint::one());
        assert_eq!(ordered_rooted_count(4).unwrap(), BigUint::from(5u32));
        assert_eq!(ordered_rooted_count(10).unwrap(), BigUint::from(4862u32));
        assert_eq!(labeled_tree_count(2).unwrap(), BigUint::one());
        assert_eq!(labeled_tree_count(3).unwrap(), BigUint::from(3u32));
        assert_eq!(labeled_tree_count(5).unwrap(), BigUint::from(125u32));
    }

    #[test]
    fn log2_matches_f64_for_small_values() {
        assert_eq!(log2_biguint(&BigUint::from(1u32)), 0.0);
        let x = BigUint::from(719u32);
        assert!((log2_biguint(&x) - 719f64.log2()).abs() < 1e-12);
        // wide value: 2^100 exactly
        let y = BigUint::from(1u32) << 100;
        assert!((log2_biguint(&y) - 100.0).abs() < 1e-9);
    }

    #[test]
    fn ceil_log2_table() {
        for (n, want) in [(1, 0), (2, 1), (3, 2), (4, 2), (5, 3), (50, 6), (65535, 16)] {
            assert_eq!(ceil_log2(n), want, "n={n}");
        }
    }
}
