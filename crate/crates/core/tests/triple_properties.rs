//! Triples over random triangular contexts: flattening, the syzygy formula
//! on the cases where it is exact, and the lifted construction in general.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use trilit::exactlin::{Fp, Matrix};
use trilit::modules::{is_isomorphic, is_isomorphic_plus_projective, stably_isomorphic};
use trilit::tritriple::{
    flat_to_triple, random_context, random_triple, triple_syzygy_formula, triple_syzygy_lifted,
    triple_syzygy_oracle, triple_to_flat, TripleModule,
};

fn field(odd: bool) -> Fp {
    if odd {
        Fp::new(3).unwrap()
    } else {
        Fp::two()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn flattening_round_trips(seed in any::<u64>(), odd in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ctx = random_context(field(odd), 8, &mut rng);
        let tm = random_triple(&ctx, 4, &mut rng);
        let flat = triple_to_flat(&ctx, &tm);
        let (back, change) = flat_to_triple(&ctx, &flat);
        prop_assert!(back.validate(&ctx).is_ok());
        prop_assert!(is_isomorphic(&triple_to_flat(&ctx, &back), &flat, &mut rng).unwrap());
        prop_assert_eq!(change.rows(), flat.dim());
    }

    #[test]
    fn formula_is_exact_for_split_triples(seed in any::<u64>(), odd in any::<bool>(), n in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ctx = random_context(field(odd), 8, &mut rng);
        let tm = random_triple(&ctx, 4, &mut rng);
        let split = TripleModule { f: Matrix::zeros(tm.f.field(), tm.f.rows(), tm.f.cols()), ..tm };
        let formula = triple_to_flat(&ctx, &triple_syzygy_formula(&ctx, &split, n).unwrap());
        let oracle = triple_syzygy_oracle(&ctx, &split, n);
        prop_assert!(is_isomorphic_plus_projective(&formula, &oracle, &mut rng).unwrap());
    }

    #[test]
    fn lifted_syzygy_matches_oracle(seed in any::<u64>(), odd in any::<bool>(), n in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ctx = random_context(field(odd), 8, &mut rng);
        let tm = random_triple(&ctx, 4, &mut rng);
        let lifted = triple_syzygy_lifted(&ctx, &tm, n).unwrap();
        prop_assert!(lifted.validate(&ctx).is_ok());
        let oracle = triple_syzygy_oracle(&ctx, &tm, n);
        prop_assert!(is_isomorphic_plus_projective(&triple_to_flat(&ctx, &lifted), &oracle, &mut rng).unwrap());
        prop_assert!(stably_isomorphic(&triple_to_flat(&ctx, &lifted), &oracle, &mut rng).unwrap());
    }
}
