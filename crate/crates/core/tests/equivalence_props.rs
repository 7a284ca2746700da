use fglattice::arith::prime_set;
use fglattice::equivalence::{literal_ratio_equivalent, power_signature, tuples_equivalent};
use fglattice::fundamental::enumerate;
use fglattice::GroupSignature;
use proptest::prelude::*;

fn new_primes(s: &GroupSignature) -> Vec<u64> {
    let old = s.prefix_primes();
    prime_set(s.top())
        .unwrap()
        .into_iter()
        .filter(|p| !old.contains(p))
        .collect()
}

#[test]
fn equivalence_relation_on_catalog() {
    let catalog = GroupSignature::catalog(60);
    let n = catalog.len();
    let rel: Vec<Vec<bool>> = catalog
        .iter()
        .map(|g| {
            catalog
                .iter()
                .map(|h| tuples_equivalent(g, h).verdict)
                .collect()
        })
        .collect();
    for a in 0..n {
        assert!(rel[a][a], "({})", catalog[a]);
        for b in 0..n {
            assert_eq!(rel[a][b], rel[b][a], "({}) ({})", catalog[a], catalog[b]);
            for c in 0..n {
                if rel[a][b] && rel[b][c] {
                    assert!(
                        rel[a][c],
                        "({}) ({}) ({})",
                        catalog[a], catalog[b], catalog[c]
                    );
                }
            }
        }
    }
}

#[test]
fn equivalent_tuples_have_equal_lattice_sizes() {
    let catalog = GroupSignature::catalog(100);
    let sizes: Vec<usize> = catalog
        .iter()
        .map(|s| enumerate(s).unwrap().len())
        .collect();
    for i in 0..catalog.len() {
        for j in i..catalog.len() {
            if tuples_equivalent(&catalog[i], &catalog[j]).verdict {
                assert_eq!(sizes[i], sizes[j], "({}) ({})", catalog[i], catalog[j]);
            }
        }
    }
}

#[test]
fn literal_reading_agrees_on_disjoint_new_primes() {
    let catalog = GroupSignature::catalog(100);
    let mut compared = 0;
    for g in &catalog {
        for h in &catalog {
            let (p, q) = (new_primes(g), new_primes(h));
            if p.is_empty() || p.iter().any(|x| q.contains(x)) {
                continue;
            }
            compared += 1;
            assert_eq!(
                tuples_equivalent(g, h).verdict,
                literal_ratio_equivalent(g, h),
                "({g}) ({h})"
            );
        }
    }
    assert!(compared > 1000);
}

#[test]
fn report_fields_are_consistent() {
    for g in GroupSignature::catalog(60) {
        for h in GroupSignature::catalog(60) {
            let r = tuples_equivalent(&g, &h);
            if !r.verdict {
                continue;
            }
            assert_eq!(r.new_primes_left.len(), r.r);
            assert_eq!(r.new_primes_right.len(), r.r);
            if r.r >= 1 {
                assert_eq!(r.cofactor_left, r.cofactor_right);
                let pairing = r.pairing.as_ref().unwrap();
                let lhs: u128 = pairing
                    .iter()
                    .map(|p| (p.left as u128).pow(p.exponent))
                    .product();
                let rhs: u128 = pairing
                    .iter()
                    .map(|p| (p.right as u128).pow(p.exponent))
                    .product();
                assert_eq!(lhs * r.cofactor_left as u128, g.top() as u128);
                assert_eq!(rhs * r.cofactor_right as u128, h.top() as u128);
                assert!(pairing.iter().all(|p| p.exponent >= 1));
            }
        }
    }
}

proptest! {
    #[test]
    fn power_signature_composes(
        s in prop::sample::select(GroupSignature::catalog(200)),
        m in 1u64..=4,
        n in 1u64..=4,
    ) {
        let direct = power_signature(&s, m * n).unwrap();
        let nested = power_signature(&power_signature(&s, m).unwrap(), n).unwrap();
        prop_assert_eq!(direct.k(), s.k() * (m * n) as usize);
        prop_assert_eq!(direct, nested);
        prop_assert_eq!(power_signature(&s, 1).unwrap(), s);
    }
}

#[test]
fn power_zero_is_rejected() {
    let s = GroupSignature::new(vec![6]).unwrap();
    assert!(power_signature(&s, 0).is_err());
}
