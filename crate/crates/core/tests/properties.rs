//! Property tests over random weight vectors.

use orbimirror::frobenius::{check_dubrovin_preconditions, verify_algebra_axioms, verify_classical, verify_quantum};
use orbimirror::rational::{format_rational, parse_rational, ratio};
use orbimirror::spectral::build_spectrum;
use orbimirror::wdvv::reconstruct;
use orbimirror::{verify_spectral_identities, Weights};
use proptest::prelude::*;

/// Unsorted weight vectors with `sum <= max_mu`.
fn weight_vectors(max_len: usize, max_w: u64, max_mu: u64) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(1..=max_w, 1..=max_len).prop_filter("mu bound", move |v| v.iter().sum::<u64>() <= max_mu)
}

fn w(v: &[u64]) -> Weights {
    Weights::new(v.to_vec()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn spectral_identities_hold(v in weight_vectors(8, 12, 60)) {
        let table = build_spectrum(&w(&v)).unwrap();
        let report = verify_spectral_identities(&table);
        prop_assert!(report.passed(), "{}", report);
    }

    #[test]
    fn spectrum_is_permutation_invariant(v in weight_vectors(8, 12, 60)) {
        let mut sorted = v.clone();
        sorted.sort_unstable();
        let a = build_spectrum(&w(&v)).unwrap();
        let b = build_spectrum(&w(&sorted)).unwrap();
        prop_assert_eq!(a.spectrum(), b.spectrum());
        prop_assert_eq!(a.sectors().len(), b.sectors().len());
        let mut expected: Vec<_> = v
            .iter()
            .flat_map(|&x| (0..x).map(move |j| ratio(j as i64, x as i64)))
            .collect();
        expected.sort();
        let got: Vec<_> = (0..a.mu()).map(|k| a.gamma(k).clone()).collect();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn rationals_round_trip(p in -10_000i64..10_000, q in 1i64..10_000) {
        let r = ratio(p, q);
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn classical_correspondence(v in weight_vectors(7, 9, 30)) {
        let report = verify_classical(&w(&v)).unwrap();
        prop_assert!(report.passed(), "{}", report);
    }

    #[test]
    fn algebra_axioms(v in weight_vectors(6, 8, 20)) {
        let report = verify_algebra_axioms(&w(&v)).unwrap();
        prop_assert!(report.passed(), "{}", report);
    }

    #[test]
    fn quantum_correspondence(v in weight_vectors(7, 9, 30)) {
        let weights = w(&v);
        let report = verify_quantum(&weights).unwrap();
        prop_assert!(report.passed(), "{}", report);
        prop_assert!(!weights.is_coprime() || report.skipped.is_empty());
    }

    #[test]
    fn dubrovin_preconditions(v in weight_vectors(7, 9, 30)) {
        let report = check_dubrovin_preconditions(&w(&v)).unwrap();
        prop_assert!(report.passed(), "{}", report);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn reconstruction_is_consistent(v in weight_vectors(4, 3, 6)) {
        prop_assume!(v.iter().sum::<u64>() >= 2);
        let pc = reconstruct(&w(&v), 5).unwrap();
        prop_assert!(pc.audit().unwrap() > 0);
    }
}
