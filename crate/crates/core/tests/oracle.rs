//! The Jacobson radical and H-regularity against enumeration oracles.

mod common;

use common::{f2_catalog_sample, h_regular_mismatches, jacobson_mismatches};

#[test]
fn sample_is_unital_and_small() {
    let sample = f2_catalog_sample();
    assert_eq!(sample.len(), 100);
    for alg in &sample {
        alg.validate().unwrap();
        assert!(alg.dim() <= 3);
    }
}

#[test]
fn jacobson_matches_enumeration_on_f2_sample() {
    let (bad, n) = jacobson_mismatches();
    assert_eq!(n, 100);
    assert!(bad.is_empty(), "{bad:#?}");
}

#[test]
fn h_regular_element_matches_expanded_definition() {
    let (bad, n) = h_regular_mismatches();
    assert!(n > 100);
    assert!(bad.is_empty(), "{bad:#?}");
}
