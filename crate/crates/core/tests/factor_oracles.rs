mod common;

use common::{brute_force_has_k_factor, gnp, rng};
use kfs_core::factor::{factor_by_matching, search_certificate};
use kfs_core::has_k_factor;
use rand::Rng;

#[test]
fn gadget_agrees_with_subset_enumeration() {
    let mut rng = rng(41);
    let mut with_factor = 0;
    for _ in 0..600 {
        let n = rng.random_range(2..=7);
        let p = rng.random_range(0.3..1.0);
        let g = gnp(&mut rng, n, p);
        for k in 1..=3 {
            let expected = brute_force_has_k_factor(&g, k);
            assert_eq!(
                has_k_factor(&g, k).unwrap().has_factor(),
                expected,
                "{g:?} k={k}"
            );
            with_factor += usize::from(expected);
        }
    }
    assert!(
        with_factor > 200,
        "too few positive instances: {with_factor}"
    );
}

#[test]
fn search_and_matching_agree_on_larger_graphs() {
    let mut rng = rng(42);
    for _ in 0..300 {
        let n = rng.random_range(8..=13);
        let p = rng.random_range(0.3..0.9);
        let g = gnp(&mut rng, n, p);
        for k in 2..=3 {
            let w = search_certificate(&g, k).unwrap();
            let f = factor_by_matching(&g, k).unwrap();
            assert_eq!(w.is_none(), f.is_some(), "{g:?} k={k}");
        }
    }
}
