use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::arith::{prime_set, product_big};
use crate::{Error, Result};

/// Invariant factors `d1 | d2 | … | dk` (each at least 2) of a finite abelian
/// group `Z_{d1} × … × Z_{dk}`.
///
/// Ordering is lexicographic on the factor list.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupSignature {
    factors: Vec<u64>,
}

impl GroupSignature {
    /// Validates the divisibility chain. Input is never reordered.
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidSignature("no invariant factors".into()));
        }
        if let Some(&d) = factors.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidSignature(format!(
                "invariant factor {d} is below 2"
            )));
        }
        if let Some(w) = factors.windows(2).find(|w| w[1] % w[0] != 0) {
            return Err(Error::InvalidSignature(format!(
                "{} does not divide {}",
                w[0], w[1]
            )));
        }
        Ok(Self { factors })
    }

    pub fn k(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    /// The top invariant factor `dk`.
    pub fn top(&self) -> u64 {
        *self.factors.last().expect("signatures are nonempty")
    }

    /// `d1, …, d(k-1)`.
    pub fn prefix(&self) -> &[u64] {
        &self.factors[..self.factors.len() - 1]
    }

    pub fn order(&self) -> BigInt {
        product_big(self.factors.iter().copied())
    }

    /// Group order, or `None` if it does not fit in a `u64`.
    pub fn order_u64(&self) -> Option<u64> {
        self.factors
            .iter()
            .try_fold(1u64, |acc, &d| acc.checked_mul(d))
    }

    /// Primes dividing `d1 ⋯ d(k-1)`, ascending; empty when `k = 1`.
    pub fn prefix_primes(&self) -> Vec<u64> {
        let mut out: Vec<u64> = self
            .prefix()
            .iter()
            .flat_map(|&d| prime_set(d).expect("factors are >= 2"))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Every signature with group order at most `max_order`, in
    /// lexicographic order of the factor lists.
    pub fn catalog(max_order: u64) -> Vec<GroupSignature> {
        fn extend(prefix: &mut Vec<u64>, budget: u64, out: &mut Vec<GroupSignature>) {
            let step = prefix.last().copied().unwrap_or(1);
            let start = if prefix.is_empty() { 2 } else { step };
            let mut d = start;
            while d <= budget {
                prefix.push(d);
                out.push(GroupSignature {
                    factors: prefix.clone(),
                });
                extend(prefix, budget / d, out);
                prefix.pop();
                d += step;
            }
        }
        let mut out = Vec::new();
        extend(&mut Vec::new(), max_order, &mut out);
        out
    }
}

impl fmt::Display for GroupSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn sig(d: &[u64]) -> GroupSignature {
        GroupSignature::new(d.to_vec()).unwrap()
    }

    #[test]
    fn rejects_malformed_chains() {
        assert!(GroupSignature::new(vec![]).is_err());
        assert!(GroupSignature::new(vec![1, 2]).is_err());
        assert!(GroupSignature::new(vec![4, 2]).is_err());
        assert!(GroupSignature::new(vec![2, 3]).is_err());
        assert!(GroupSignature::new(vec![2, 6, 12]).is_ok());
    }

    #[test]
    fn catalog_small() {
        let c = GroupSignature::catalog(8);
        let expected = vec![
            sig(&[2]),
            sig(&[2, 2]),
            sig(&[2, 2, 2]),
            sig(&[2, 4]),
            sig(&[3]),
            sig(&[4]),
            sig(&[5]),
            sig(&[6]),
            sig(&[7]),
            sig(&[8]),
        ];
        assert_eq!(c, expected);
        assert!(GroupSignature::catalog(1).is_empty());
        assert!(GroupSignature::catalog(0).is_empty());
    }

    #[test]
    fn catalog_is_sorted_and_bounded() {
        let c = GroupSignature::catalog(100);
        assert!(c.windows(2).all(|w| w[0] < w[1]));
        assert!(c.iter().all(|s| s.order_u64().unwrap() <= 100));
        // number of abelian groups of each order n in 2..=100, summed
        let per_order: u64 = (2..=100u64)
            .map(|n| {
                crate::arith::factorize(n)
                    .unwrap()
                    .factors()
                    .iter()
                    .map(|&(_, e)| partitions(e))
                    .product::<u64>()
            })
            .sum();
        assert_eq!(c.len() as u64, per_order);
    }

    fn partitions(n: u32) -> u64 {
        fn count(n: u32, max: u32) -> u64 {
            if n == 0 {
                return 1;
            }
            (1..=max.min(n)).map(|p| count(n - p, p)).sum()
        }
        count(n, n)
    }

    #[test]
    fn prefix_primes() {
        assert!(sig(&[6]).prefix_primes().is_empty());
        assert_eq!(sig(&[2, 6, 30]).prefix_primes(), vec![2, 3]);
        assert_eq!(sig(&[2, 4]).top(), 4);
        assert_eq!(alloc::string::ToString::to_string(&sig(&[3, 6])), "3,6");
    }
}
