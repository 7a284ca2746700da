#![allow(clippy::needless_range_loop)]

use fglattice::fundamental::{build_lattice, enumerate, is_member, leq, SubgroupMatrix};
use fglattice::oracle::{
    all_subgroups, correspondence_mismatch, inclusion_lattice, meets_and_joins_are_set_operations,
    Convention, DEFAULT_ORDER_BOUND,
};
use fglattice::poset::{
    are_isomorphic, find_isomorphism, is_order_isomorphism, FiniteLattice, FinitePoset,
};
use fglattice::GroupSignature;
use proptest::prelude::*;

fn sig(d: &[u64]) -> GroupSignature {
    GroupSignature::new(d.to_vec()).unwrap()
}

/// Solves `x · A = d_i e_i` by forward substitution and reports whether
/// every solution is integral.
fn rows_contain_diagonal(d: &[u64], a: &[Vec<i64>]) -> bool {
    let k = d.len();
    for i in 0..k {
        let mut x = vec![0i128; k];
        let target = |j: usize| if j == i { d[i] as i128 } else { 0 };
        for j in 0..k {
            let partial: i128 = (0..j).map(|t| x[t] * a[t][j] as i128).sum();
            let num = target(j) - partial;
            let ajj = a[j][j] as i128;
            if num % ajj != 0 {
                return false;
            }
            x[j] = num / ajj;
        }
    }
    true
}

fn reduced_matrix(d: Vec<u64>) -> impl Strategy<Value = (Vec<u64>, Vec<Vec<i64>>)> {
    let k = d.len();
    let diag = d.iter().map(|&dj| 1i64..=2 * dj as i64).collect::<Vec<_>>();
    (Just(d), diag).prop_flat_map(move |(d, diag)| {
        let rows = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| match i.cmp(&j) {
                        std::cmp::Ordering::Greater => Just(0i64).boxed(),
                        std::cmp::Ordering::Equal => Just(diag[i]).boxed(),
                        std::cmp::Ordering::Less => (0..diag[j]).boxed(),
                    })
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>();
        (Just(d), rows)
    })
}

fn small_signature() -> impl Strategy<Value = Vec<u64>> {
    prop::sample::select(GroupSignature::catalog(100)).prop_map(|s| s.factors().to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn membership_matches_lattice_containment((d, a) in small_signature().prop_flat_map(reduced_matrix)) {
        let s = GroupSignature::new(d.clone()).unwrap();
        let expected = d.iter().enumerate().all(|(j, &dj)| dj as i64 % a[j][j] == 0)
            && rows_contain_diagonal(&d, &a);
        prop_assert_eq!(is_member(&s, &a).unwrap(), expected);
    }

    #[test]
    fn leq_is_a_partial_order(d in small_signature(), picks in prop::collection::vec(any::<prop::sample::Index>(), 3)) {
        let s = GroupSignature::new(d).unwrap();
        let els = enumerate(&s).unwrap();
        let [a, b, c] = [0, 1, 2].map(|i| &els[picks[i].index(els.len())].matrix);
        prop_assert!(leq(&s, a, a).unwrap());
        if leq(&s, a, b).unwrap() && leq(&s, b, a).unwrap() {
            prop_assert_eq!(a, b);
        }
        if leq(&s, a, b).unwrap() && leq(&s, b, c).unwrap() {
            prop_assert!(leq(&s, a, c).unwrap());
        }
    }
}

#[test]
fn leq_axioms_exhaustive_small() {
    for s in GroupSignature::catalog(24) {
        let els = enumerate(&s).unwrap();
        for a in &els {
            assert!(leq(&s, &a.matrix, &a.matrix).unwrap());
            for b in &els {
                let ab = leq(&s, &a.matrix, &b.matrix).unwrap();
                if ab && leq(&s, &b.matrix, &a.matrix).unwrap() {
                    assert_eq!(a.id, b.id, "({s})");
                }
                for c in &els {
                    if ab && leq(&s, &b.matrix, &c.matrix).unwrap() {
                        assert!(leq(&s, &a.matrix, &c.matrix).unwrap(), "({s})");
                    }
                }
            }
        }
    }
}

#[test]
fn extremes_are_identity_and_diagonal() {
    for s in GroupSignature::catalog(100) {
        let fl = build_lattice(&s).unwrap();
        let l = &fl.lattice;
        assert_eq!(fl.elements[l.top()].matrix, SubgroupMatrix::identity(s.k()));
        assert_eq!(fl.elements[l.bottom()].matrix, SubgroupMatrix::diagonal(&s));
        assert!((0..l.len()).all(|x| l.leq(l.bottom(), x) && l.leq(x, l.top())));
        let maxima = (0..l.len())
            .filter(|&x| (0..l.len()).all(|y| !l.leq(x, y) || x == y))
            .count();
        assert_eq!(maxima, 1);
    }
}

#[test]
fn cyclic_sizes_are_divisor_counts() {
    for d in 2..=1000u64 {
        let tau = (1..=d).filter(|t| d % t == 0).count();
        assert_eq!(enumerate(&sig(&[d])).unwrap().len(), tau, "({d})");
    }
}

#[test]
fn rows_convention_matches_the_oracle() {
    for s in GroupSignature::catalog(100) {
        let fl = build_lattice(&s).unwrap();
        let subs = all_subgroups(&s, DEFAULT_ORDER_BOUND).unwrap();
        assert_eq!(
            correspondence_mismatch(&fl, &subs, Convention::Rows).unwrap(),
            None,
            "({s})"
        );
    }
}

#[test]
fn oracle_meets_and_joins_are_set_operations() {
    for s in GroupSignature::catalog(48) {
        let subs = all_subgroups(&s, DEFAULT_ORDER_BOUND).unwrap();
        let l = inclusion_lattice(&subs).unwrap();
        assert!(
            meets_and_joins_are_set_operations(&s, &subs, &l).unwrap(),
            "({s})"
        );
    }
}

#[test]
fn oracle_refuses_large_groups() {
    let err = all_subgroups(&sig(&[2, 2, 2, 2, 2, 2, 2, 2, 2]), DEFAULT_ORDER_BOUND).unwrap_err();
    assert_eq!(err.kind(), fglattice::ErrorKind::ResourceLimit);
}

#[test]
fn isomorphism_is_reflexive_and_symmetric() {
    let lattices: Vec<FiniteLattice> = GroupSignature::catalog(60)
        .iter()
        .map(|s| build_lattice(s).unwrap().lattice)
        .collect();
    for a in &lattices {
        assert!(are_isomorphic(a, a));
        for b in &lattices {
            let ab = find_isomorphism(a, b);
            assert_eq!(ab.is_some(), are_isomorphic(b, a));
            if let Some(map) = ab {
                assert!(is_order_isomorphism(a.poset(), b.poset(), &map));
                let mut inverse = vec![0; map.len()];
                for (x, &y) in map.iter().enumerate() {
                    inverse[y] = x;
                }
                assert!(is_order_isomorphism(b.poset(), a.poset(), &inverse));
            }
        }
    }
}

#[test]
fn hasse_closure_reproduces_the_order() {
    for s in GroupSignature::catalog(64) {
        let l = build_lattice(&s).unwrap().lattice;
        let n = l.len();
        let mut rel = vec![vec![false; n]; n];
        for (x, row) in rel.iter_mut().enumerate() {
            row[x] = true;
        }
        for &(lo, hi) in l.hasse_edges() {
            rel[lo][hi] = true;
        }
        for m in 0..n {
            for a in 0..n {
                if rel[a][m] {
                    for b in 0..n {
                        if rel[m][b] {
                            rel[a][b] = true;
                        }
                    }
                }
            }
        }
        let p = FinitePoset::from_relation(&rel).unwrap();
        assert!(
            (0..n).all(|a| (0..n).all(|b| p.leq(a, b) == l.leq(a, b))),
            "({s})"
        );
    }
}
