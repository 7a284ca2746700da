//! When do two finite abelian groups have isomorphic subgroup lattices?
//!
//! `(d1, …, dk) ~ (d'1, …, d'k')` holds when `k = k'`, `di = d'i` for
//! `i < k`, and the top factors agree except on their *new* primes (those
//! not dividing `d1 ⋯ d(k-1)`): both sides have the same number `r` of new
//! primes, the same part on the old primes, and the new primes can be
//! paired so that paired primes carry the same exponent. A new prime's
//! Sylow subgroup is cyclic, so its subgroup lattice is a chain that only
//! depends on the exponent; that is why the pairing may relabel primes.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::arith::factorize;
use crate::{Error, GroupSignature, Result};

/// One matched pair of new primes with their common exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimePair {
    pub left: u64,
    pub right: u64,
    pub exponent: u32,
}

/// Verdict of [`tuples_equivalent`] with the data behind it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub verdict: bool,
    pub k_equal: bool,
    /// `di = d'i` for every `i < k` (false when `k ≠ k'`).
    pub prefix_equal: bool,
    /// Number of new primes on the left.
    pub r: usize,
    pub new_primes_left: Vec<u64>,
    pub new_primes_right: Vec<u64>,
    /// Part of the top factor supported on old primes.
    pub cofactor_left: u64,
    pub cofactor_right: u64,
    /// Present when `r ≥ 1` and an exponent-preserving pairing exists.
    pub pairing: Option<Vec<PrimePair>>,
}

/// New primes of the top factor with their exponents, and the old-prime
/// cofactor.
fn split_top(sig: &GroupSignature) -> (Vec<(u64, u32)>, u64) {
    let old = sig.prefix_primes();
    let top = factorize(sig.top()).expect("factors are >= 2");
    let mut new = Vec::new();
    let mut cofactor = 1u64;
    for &(p, e) in top.factors() {
        if old.binary_search(&p).is_ok() {
            cofactor *= p.pow(e);
        } else {
            new.push((p, e));
        }
    }
    (new, cofactor)
}

/// Pairs new primes by sorting both sides on `(exponent, prime)`.
fn pair_sorted(left: &[(u64, u32)], right: &[(u64, u32)]) -> Option<Vec<PrimePair>> {
    if left.len() != right.len() {
        return None;
    }
    let key = |v: &[(u64, u32)]| {
        let mut v = v.to_vec();
        v.sort_by_key(|&(p, e)| (e, p));
        v
    };
    let (l, r) = (key(left), key(right));
    if l.iter().zip(&r).any(|(a, b)| a.1 != b.1) {
        return None;
    }
    let mut pairs: Vec<PrimePair> = l
        .iter()
        .zip(&r)
        .map(|(&(p, e), &(q, _))| PrimePair {
            left: p,
            right: q,
            exponent: e,
        })
        .collect();
    pairs.sort_by_key(|pp| pp.left);
    Some(pairs)
}

/// Exhaustive search for an exponent-preserving bijection; `sigma[j]` is the
/// right index paired with left index `j`.
pub(crate) fn pair_by_search(left: &[(u64, u32)], right: &[(u64, u32)]) -> Option<Vec<usize>> {
    fn go(
        left: &[(u64, u32)],
        right: &[(u64, u32)],
        used: &mut [bool],
        sigma: &mut Vec<usize>,
    ) -> bool {
        let j = sigma.len();
        if j == left.len() {
            return true;
        }
        for t in 0..right.len() {
            if !used[t] && right[t].1 == left[j].1 {
                used[t] = true;
                sigma.push(t);
                if go(left, right, used, sigma) {
                    return true;
                }
                sigma.pop();
                used[t] = false;
            }
        }
        false
    }
    if left.len() != right.len() {
        return None;
    }
    let mut sigma = Vec::new();
    go(left, right, &mut vec![false; right.len()], &mut sigma).then_some(sigma)
}

/// Decides `sig_g ~ sig_h`.
pub fn tuples_equivalent(sig_g: &GroupSignature, sig_h: &GroupSignature) -> EquivalenceReport {
    let k_equal = sig_g.k() == sig_h.k();
    let prefix_equal = k_equal && sig_g.prefix() == sig_h.prefix();
    let (new_g, cofactor_left) = split_top(sig_g);
    let (new_h, cofactor_right) = split_top(sig_h);
    let r = new_g.len();
    let pairing = if r >= 1 {
        pair_sorted(&new_g, &new_h)
    } else {
        None
    };
    if (1..=8).contains(&r) {
        debug_assert_eq!(pairing.is_some(), pair_by_search(&new_g, &new_h).is_some());
    }
    let top_condition = if new_h.len() != r {
        false
    } else if r == 0 {
        sig_g.top() == sig_h.top()
    } else {
        cofactor_left == cofactor_right && pairing.is_some()
    };
    EquivalenceReport {
        verdict: k_equal && prefix_equal && top_condition,
        k_equal,
        prefix_equal,
        r,
        new_primes_left: new_g.iter().map(|&(p, _)| p).collect(),
        new_primes_right: new_h.iter().map(|&(q, _)| q).collect(),
        cofactor_left,
        cofactor_right,
        pairing,
    }
}

/// The lattice isomorphism decision: `L(G) ≅ L(H)`.
pub fn lattices_isomorphic(sig_g: &GroupSignature, sig_h: &GroupSignature) -> bool {
    tuples_equivalent(sig_g, sig_h).verdict
}

/// A literal reading of the top-factor condition: some bijection `σ` of the
/// new primes and exponents `s_j ≥ 1` with
/// `d_k / d'_k = ∏ (p_j / q_σ(j))^{s_j}` as rational numbers.
///
/// When new primes are shared between the two sides this accepts pairs
/// whose lattices differ (e.g. `(24)` and `(36)`), so it is not the
/// decision procedure; it exists to compare against [`tuples_equivalent`].
pub fn literal_ratio_equivalent(sig_g: &GroupSignature, sig_h: &GroupSignature) -> bool {
    if sig_g.k() != sig_h.k() || sig_g.prefix() != sig_h.prefix() {
        return false;
    }
    let (new_g, _) = split_top(sig_g);
    let (new_h, _) = split_top(sig_h);
    let r = new_g.len();
    if new_h.len() != r {
        return false;
    }
    if r == 0 {
        return sig_g.top() == sig_h.top();
    }
    let (dk, dk2) = (
        factorize(sig_g.top()).unwrap(),
        factorize(sig_h.top()).unwrap(),
    );
    // any solution has s_j ≤ 1 + r · max |v_x(dk) - v_x(d'k)|
    let max_gap = dk
        .factors()
        .iter()
        .chain(dk2.factors())
        .map(|&(x, _)| dk.exponent_of(x).abs_diff(dk2.exponent_of(x)))
        .max()
        .unwrap_or(0);
    let bound = 1 + r as u32 * max_gap;
    let lhs_num = BigInt::from(sig_g.top());
    let lhs_den = BigInt::from(sig_h.top());
    let p: Vec<u64> = new_g.iter().map(|&(p, _)| p).collect();
    let q: Vec<u64> = new_h.iter().map(|&(q, _)| q).collect();
    let mut sigma: Vec<usize> = (0..r).collect();
    loop {
        let mut s = vec![1u32; r];
        loop {
            // dk · ∏ q^s == d'k · ∏ p^s
            let mut left = lhs_num.clone();
            let mut right = lhs_den.clone();
            for j in 0..r {
                left *= BigInt::from(q[sigma[j]]).pow(s[j]);
                right *= BigInt::from(p[j]).pow(s[j]);
            }
            if left == right {
                return true;
            }
            let Some(j) = (0..r).find(|&j| s[j] < bound) else {
                break;
            };
            s[j] += 1;
            for t in s.iter_mut().take(j) {
                *t = 1;
            }
        }
        if !next_permutation(&mut sigma) {
            return false;
        }
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len())
        .rev()
        .find(|&j| v[j] > v[i - 1])
        .expect("pivot exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Signature of `G^n`: every factor repeated `n` times, in order.
pub fn power_signature(sig: &GroupSignature, n: u64) -> Result<GroupSignature> {
    if n == 0 {
        return Err(Error::NonPositive(0));
    }
    let factors = sig
        .factors()
        .iter()
        .flat_map(|&d| core::iter::repeat_n(d, n as usize))
        .collect();
    GroupSignature::new(factors)
}

/// Whether the primes of `dk` are exactly those of `d1 ⋯ d(k-1)`. Never true
/// for cyclic groups.
pub fn is_lattice_determined(sig: &GroupSignature) -> bool {
    sig.k() > 1 && factorize(sig.top()).expect("factors are >= 2").primes() == sig.prefix_primes()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(d: &[u64]) -> GroupSignature {
        GroupSignature::new(d.to_vec()).unwrap()
    }

    fn pair(left: u64, right: u64, exponent: u32) -> PrimePair {
        PrimePair {
            left,
            right,
            exponent,
        }
    }

    #[test]
    fn cyclic_six_and_ten() {
        let rep = tuples_equivalent(&sig(&[6]), &sig(&[10]));
        assert!(rep.verdict);
        assert_eq!(rep.r, 2);
        assert_eq!(rep.pairing, Some(vec![pair(2, 2, 1), pair(3, 5, 1)]));
        assert_eq!((rep.cofactor_left, rep.cofactor_right), (1, 1));
    }

    #[test]
    fn non_cyclic_example() {
        let rep = tuples_equivalent(&sig(&[2, 6]), &sig(&[2, 10]));
        assert!(rep.verdict);
        assert_eq!(rep.r, 1);
        assert_eq!(rep.new_primes_left, vec![3]);
        assert_eq!(rep.new_primes_right, vec![5]);
        assert_eq!(rep.pairing, Some(vec![pair(3, 5, 1)]));
        assert_eq!(rep.cofactor_left, 2);
    }

    #[test]
    fn more_examples() {
        assert!(!lattices_isomorphic(&sig(&[4]), &sig(&[8])));
        let rep = tuples_equivalent(&sig(&[12]), &sig(&[18]));
        assert!(rep.verdict);
        assert_eq!(rep.pairing, Some(vec![pair(2, 3, 2), pair(3, 2, 1)]));
        let rep = tuples_equivalent(&sig(&[6, 6]), &sig(&[10, 10]));
        assert!(!rep.verdict);
        assert!(rep.k_equal && !rep.prefix_equal);
        assert!(!lattices_isomorphic(&sig(&[24]), &sig(&[36])));
        assert!(!lattices_isomorphic(&sig(&[2, 2]), &sig(&[4])));
        // r = 0: top factors must agree exactly
        assert!(!lattices_isomorphic(&sig(&[2, 4]), &sig(&[2, 8])));
        assert!(lattices_isomorphic(&sig(&[2, 4]), &sig(&[2, 4])));
        // old-prime cofactors must agree
        assert!(!lattices_isomorphic(&sig(&[2, 12]), &sig(&[2, 6])));
        assert!(lattices_isomorphic(&sig(&[2, 12]), &sig(&[2, 20])));
    }

    #[test]
    fn literal_ratio_reading_is_too_permissive() {
        assert!(literal_ratio_equivalent(&sig(&[24]), &sig(&[36])));
        assert!(!tuples_equivalent(&sig(&[24]), &sig(&[36])).verdict);
        assert!(literal_ratio_equivalent(&sig(&[6]), &sig(&[10])));
        assert!(literal_ratio_equivalent(&sig(&[2, 6]), &sig(&[2, 10])));
        assert!(!literal_ratio_equivalent(&sig(&[4]), &sig(&[8])));
    }

    #[test]
    fn power_signature_examples() {
        assert_eq!(power_signature(&sig(&[6]), 2).unwrap(), sig(&[6, 6]));
        assert_eq!(
            power_signature(&sig(&[2, 4]), 3).unwrap(),
            sig(&[2, 2, 2, 4, 4, 4])
        );
        assert_eq!(power_signature(&sig(&[3, 9]), 1).unwrap(), sig(&[3, 9]));
        assert_eq!(power_signature(&sig(&[3]), 0), Err(Error::NonPositive(0)));
    }

    #[test]
    fn lattice_determined_examples() {
        assert!(is_lattice_determined(&sig(&[2, 4])));
        assert!(!is_lattice_determined(&sig(&[6])));
        assert!(!is_lattice_determined(&sig(&[2, 6])));
        assert!(is_lattice_determined(&sig(&[6, 12])));
    }

    #[test]
    fn sorted_pairing_agrees_with_search() {
        for a in GroupSignature::catalog(200) {
            for b in GroupSignature::catalog(200) {
                let (l, _) = split_top(&a);
                let (r, _) = split_top(&b);
                assert_eq!(
                    pair_sorted(&l, &r).is_some(),
                    pair_by_search(&l, &r).is_some(),
                    "{a} vs {b}"
                );
            }
        }
    }

    #[test]
    fn permutations() {
        let mut v = vec![0, 1, 2];
        let mut count = 1;
        while next_permutation(&mut v) {
            count += 1;
        }
        assert_eq!(count, 6);
    }
}
