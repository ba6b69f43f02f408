mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(config(500))]

    #[test]
    fn jacobian_is_alternating(seed in any::<u64>(), f in fields()) {
        common::jacobian_is_alternating(seed, f)?;
    }

    #[test]
    fn subspace_dimension_law(seed in any::<u64>(), f in fields()) {
        common::subspace_dimension_law(seed, f)?;
    }
}

proptest! {
    #![proptest_config(config(300))]

    #[test]
    fn linearized_agrees_with_direct(seed in any::<u64>()) {
        common::linearized_agrees_with_direct(seed)?;
    }

    #[test]
    fn identity_hierarchy(seed in any::<u64>(), f in fields()) {
        common::identity_hierarchy(seed, f)?;
    }

    #[test]
    fn coboundaries_are_invariant_under_automorphisms(seed in any::<u64>(), f in fields()) {
        common::coboundaries_are_invariant_under_automorphisms(seed, f)?;
    }

    #[test]
    fn delta_covariance(seed in any::<u64>(), f in fields()) {
        common::delta_covariance(seed, f)?;
    }

    #[test]
    fn annihilator_of_extension(seed in any::<u64>(), f in fields()) {
        common::annihilator_of_extension(seed, f)?;
    }

    #[test]
    fn extension_is_binary_lie_iff_cocycle(seed in any::<u64>(), f in fields()) {
        common::extension_is_binary_lie_iff_cocycle(seed, f)?;
    }

    #[test]
    fn parametrized_evaluation_and_composition(seed in any::<u64>()) {
        common::parametrized_evaluation_and_composition(seed)?;
    }
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn fingerprint_is_transport_invariant(seed in any::<u64>(), f in fields()) {
        common::fingerprint_is_transport_invariant(seed, f)?;
    }
}
