//! Exact integer utilities: gcds, trial-division factorization, divisor
//! lists and fraction-free determinants.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// Prime factorization of a positive integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    value: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn value(&self) -> u64 {
        self.value
    }

    /// `(prime, exponent)` pairs with strictly increasing primes.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// The set of primes dividing the value, ascending. Empty for 1.
    pub fn primes(&self) -> Vec<u64> {
        self.factors.iter().map(|&(p, _)| p).collect()
    }

    /// Exponent of `p` in the value (0 if `p` does not divide it).
    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }

    /// Multiplies the factors back out.
    pub fn product(&self) -> u64 {
        self.factors.iter().map(|&(p, e)| p.pow(e)).product()
    }
}

/// Greatest common divisor of a nonempty list; the gcd of all zeros is 0.
pub fn gcd_many(xs: &[i64]) -> Result<u64> {
    if xs.is_empty() {
        return Err(Error::Empty("gcd of an empty list"));
    }
    Ok(xs.iter().fold(0u64, |g, &x| g.gcd(&x.unsigned_abs())))
}

pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::NonPositive(0));
    }
    let mut factors = Vec::new();
    let mut rest = n;
    let mut p = 2u64;
    while p.saturating_mul(p) <= rest {
        if rest.is_multiple_of(p) {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(Factorization { value: n, factors })
}

/// The set of primes dividing `n` (empty for `n = 1`).
pub fn prime_set(n: u64) -> Result<Vec<u64>> {
    factorize(n).map(|f| f.primes())
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    let f = factorize(n)?;
    let mut out = alloc::vec![1u64];
    for &(p, e) in f.factors() {
        let len = out.len();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Exact determinant of a square integer matrix.
///
/// Runs fraction-free elimination in `i128` and redoes the computation with
/// big integers if any intermediate overflows.
pub fn det_exact(m: &[Vec<i64>]) -> Result<BigInt> {
    if m.is_empty() {
        return Err(Error::Empty("determinant of a 0x0 matrix"));
    }
    for (row, r) in m.iter().enumerate() {
        if r.len() != m.len() {
            return Err(Error::NotSquare {
                rows: m.len(),
                row,
                cols: r.len(),
            });
        }
    }
    let n = m.len();
    let mut small: Vec<i128> = m.iter().flatten().map(|&v| v as i128).collect();
    if let Some(d) = bareiss(&mut small, n) {
        return Ok(BigInt::from(d));
    }
    let mut big: Vec<BigInt> = m.iter().flatten().map(|&v| BigInt::from(v)).collect();
    Ok(bareiss(&mut big, n).expect("big integer arithmetic does not overflow"))
}

/// Integer arithmetic that may refuse to produce a result on overflow.
///
/// Implemented for `i128` (checked) and `BigInt` (never fails) so the same
/// exact algorithms can run on a fast path and an unbounded fallback.
pub(crate) trait Exact: Clone + PartialEq {
    fn from_i64(v: i64) -> Self;
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, rhs: &Self) -> Option<Self>;
    fn sub(&self, rhs: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    /// Quotient if `rhs` divides `self` exactly, `Err(())` otherwise.
    fn div_exact(&self, rhs: &Self) -> Option<core::result::Result<Self, ()>>;
    /// Whether `self` divides `rhs`; `self` is nonzero.
    fn divides(&self, rhs: &Self) -> bool;
}

impl Exact for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn mul(&self, rhs: &Self) -> Option<Self> {
        self.checked_mul(*rhs)
    }
    fn sub(&self, rhs: &Self) -> Option<Self> {
        self.checked_sub(*rhs)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn div_exact(&self, rhs: &Self) -> Option<core::result::Result<Self, ()>> {
        let r = self.checked_rem(*rhs)?;
        Some(if r == 0 {
            Ok(self.checked_div(*rhs)?)
        } else {
            Err(())
        })
    }
    fn divides(&self, rhs: &Self) -> bool {
        rhs.checked_rem(*self).is_some_and(|r| r == 0)
    }
}

impl Exact for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, rhs: &Self) -> Option<Self> {
        Some(self * rhs)
    }
    fn sub(&self, rhs: &Self) -> Option<Self> {
        Some(self - rhs)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn div_exact(&self, rhs: &Self) -> Option<core::result::Result<Self, ()>> {
        let (q, r) = self.div_rem(rhs);
        Some(if Zero::is_zero(&r) { Ok(q) } else { Err(()) })
    }
    fn divides(&self, rhs: &Self) -> bool {
        Zero::is_zero(&(rhs % self))
    }
}

/// Bareiss fraction-free elimination on a row-major `n×n` buffer, which is
/// clobbered. `None` means the arithmetic overflowed.
pub(crate) fn bareiss<T: Exact>(m: &mut [T], n: usize) -> Option<T> {
    debug_assert_eq!(m.len(), n * n);
    let mut negate = false;
    let mut prev = T::from_i64(1);
    for k in 0..n.saturating_sub(1) {
        if m[k * n + k].is_zero() {
            match (k + 1..n).find(|&r| !m[r * n + k].is_zero()) {
                Some(r) => {
                    for c in 0..n {
                        m.swap(k * n + c, r * n + c);
                    }
                    negate = !negate;
                }
                None => return Some(T::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i * n + j]
                    .mul(&m[k * n + k])?
                    .sub(&m[i * n + k].mul(&m[k * n + j])?)?;
                // exact by Sylvester's identity
                m[i * n + j] = num.div_exact(&prev)?.ok()?;
            }
        }
        prev = m[k * n + k].clone();
    }
    let det = m[n * n - 1].clone();
    if negate {
        det.neg()
    } else {
        Some(det)
    }
}

/// Product of a list as a big integer.
pub fn product_big(xs: impl IntoIterator<Item = u64>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc * BigInt::from(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd_many(&[12, 18]).unwrap(), 6);
        assert_eq!(gcd_many(&[0, 0]).unwrap(), 0);
        assert_eq!(gcd_many(&[6, 10, 15]).unwrap(), 1);
        assert_eq!(gcd_many(&[-4]).unwrap(), 4);
        assert!(matches!(gcd_many(&[]), Err(Error::Empty(_))));
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(12).unwrap().factors(), &[(2, 2), (3, 1)]);
        assert!(factorize(1).unwrap().factors().is_empty());
        assert_eq!(factorize(98).unwrap().factors(), &[(2, 1), (7, 2)]);
        assert_eq!(factorize(97).unwrap().factors(), &[(97, 1)]);
        assert_eq!(factorize(0), Err(Error::NonPositive(0)));
        assert_eq!(factorize(98).unwrap().exponent_of(7), 2);
        assert_eq!(factorize(98).unwrap().exponent_of(3), 0);
    }

    #[test]
    fn divisor_examples() {
        assert_eq!(divisors(6).unwrap(), vec![1, 2, 3, 6]);
        assert_eq!(divisors(1).unwrap(), vec![1]);
        assert_eq!(divisors(12).unwrap(), vec![1, 2, 3, 4, 6, 12]);
        assert!(divisors(0).is_err());
    }

    #[test]
    fn det_examples() {
        assert_eq!(det_exact(&[vec![5]]).unwrap(), BigInt::from(5));
        assert_eq!(
            det_exact(&[vec![1, 0], vec![0, 1]]).unwrap(),
            BigInt::from(1)
        );
        assert_eq!(
            det_exact(&[vec![2, 3], vec![4, 5]]).unwrap(),
            BigInt::from(-2)
        );
        assert!(matches!(
            det_exact(&[vec![1, 2], vec![3]]),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn det_needs_pivoting() {
        assert_eq!(
            det_exact(&[vec![0, 1], vec![1, 0]]).unwrap(),
            BigInt::from(-1)
        );
        assert_eq!(
            det_exact(&[vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]).unwrap(),
            BigInt::from(-1)
        );
        assert_eq!(
            det_exact(&[vec![0, 1], vec![0, 2]]).unwrap(),
            BigInt::from(0)
        );
    }

    #[test]
    fn det_overflow_falls_back_to_bigint() {
        let big = i64::MAX;
        let m = vec![vec![big, 1, 0], vec![0, big, 1], vec![1, 0, big]];
        let b = BigInt::from(big);
        let expected = &b * &b * &b + BigInt::from(1);
        assert_eq!(det_exact(&m).unwrap(), expected);
    }
}
