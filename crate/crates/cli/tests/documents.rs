#[path = "../../core/tests/common/mod.rs"]
mod common;
mod support;

use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn documents_round_trip_byte_for_byte(seed in any::<u64>(), kind in 0usize..9) {
        let mut rng = common::rng(seed);
        let r = support::random_round_trip(&mut rng, kind);
        prop_assert!(r.is_ok(), "{}", r.unwrap_err());
    }
}
