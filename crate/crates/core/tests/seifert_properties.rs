mod common;

use num_traits::Signed;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;
use slicegate_core::seifert::{self, SeifertMatrix};

fn valid_matrix(max_half: usize) -> impl Strategy<Value = SeifertMatrix> {
    (1..=max_half, any::<u64>()).prop_map(|(h, seed)| {
        let mut rng = StdRng::seed_from_u64(seed);
        common::random_valid_matrix(&mut rng, 2 * h)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn signature_matches_eigenvalue_count(v in valid_matrix(3)) {
        prop_assert_eq!(seifert::signature(&v), common::float_signature(v.entries()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn congruence_preserves_invariants(v in valid_matrix(3), seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let p = common::random_unimodular(&mut rng, v.dim());
        let w = v.change_basis(&p).unwrap();
        prop_assert_eq!(seifert::signature(&w), seifert::signature(&v));
        prop_assert_eq!(seifert::arf(&w).unwrap(), seifert::arf(&v).unwrap());
        prop_assert!(seifert::alexander(&w).equals_up_to_unit(&seifert::alexander(&v)));
    }

    #[test]
    fn arf_matches_murasugi_up_to_dimension_ten(v in valid_matrix(5)) {
        let delta = seifert::alexander(&v);
        prop_assert_eq!(seifert::arf(&v).unwrap(), seifert::arf_murasugi(&delta).unwrap());
    }

    #[test]
    fn arf_matches_majority_oracle(v in valid_matrix(4)) {
        prop_assert_eq!(seifert::arf(&v).unwrap(), common::arf_by_majority(v.entries()));
    }

    #[test]
    fn alexander_is_symmetric_and_normalised(v in valid_matrix(3)) {
        let d = seifert::alexander(&v);
        prop_assert_eq!(d.involute(), d.clone());
        prop_assert_eq!(d.value_at_one(), 1.into());
        prop_assert_eq!(seifert::determinant(&v), d.value_at_minus_one().abs());
    }
}
