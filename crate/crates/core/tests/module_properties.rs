//! Invariants of modules and syzygies over the sample algebras, driven by
//! random seeds.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use trilit::exactlin::{Fp, Matrix};
use trilit::itfun::{phi, IsoClassTable};
use trilit::modules::{
    decompose, direct_sum, hom_matrices, is_isomorphic, is_projective, projective_cover,
    random_module, syzygy, Module, RandomModuleSpec,
};
use trilit::tritriple::sample_pool;

fn setup(seed: u64, which: usize) -> (ChaCha8Rng, std::sync::Arc<trilit::algebra::Algebra>) {
    let pool = sample_pool(Fp::two());
    (
        ChaCha8Rng::seed_from_u64(seed),
        pool[which % pool.len()].clone(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn summands_add_up(seed in any::<u64>(), which in 0usize..6) {
        let (mut rng, alg) = setup(seed, which);
        let m = random_module(&alg, RandomModuleSpec::new(6), &mut rng);
        let n = random_module(&alg, RandomModuleSpec::new(6), &mut rng);
        let mn = direct_sum(&alg, &[m.clone(), n.clone()]).unwrap();
        let total = decompose(&m, &mut rng).summand_count() + decompose(&n, &mut rng).summand_count();
        prop_assert_eq!(decompose(&mn, &mut rng).summand_count(), total);
    }

    #[test]
    fn hom_is_additive(seed in any::<u64>(), which in 0usize..6) {
        let (mut rng, alg) = setup(seed, which);
        let m = random_module(&alg, RandomModuleSpec::new(5), &mut rng);
        let n = random_module(&alg, RandomModuleSpec::new(5), &mut rng);
        let mm = direct_sum(&alg, &[m.clone(), m.clone()]).unwrap();
        prop_assert_eq!(hom_matrices(&mm, &n).unwrap().len(), 2 * hom_matrices(&m, &n).unwrap().len());
    }

    #[test]
    fn covers_are_exact(seed in any::<u64>(), which in 0usize..6) {
        let (mut rng, alg) = setup(seed, which);
        let m = random_module(&alg, RandomModuleSpec::new(8), &mut rng);
        let c = projective_cover(&m);
        prop_assert!(is_projective(&c.cover));
        prop_assert_eq!(c.cover.dim(), m.dim() + c.syzygy.dim());
        prop_assert!(c.epi.mul(&c.syzygy_inclusion).is_zero());
        prop_assert_eq!(c.epi.rank(), m.dim());
    }

    #[test]
    fn syzygies_ignore_basis(seed in any::<u64>(), which in 0usize..6) {
        let (mut rng, alg) = setup(seed, which);
        let m = random_module(&alg, RandomModuleSpec::new(6), &mut rng);
        let g = Matrix::random_invertible(alg.field(), m.dim(), &mut rng);
        let moved = m.change_basis(&g).unwrap();
        prop_assert!(is_isomorphic(&syzygy(&m, 2), &syzygy(&moved, 2), &mut rng).unwrap());
    }

    #[test]
    fn phi_ignores_projectives_and_repeats(seed in any::<u64>(), which in 0usize..6) {
        let (mut rng, alg) = setup(seed, which);
        let m = random_module(&alg, RandomModuleSpec::new(5), &mut rng);
        let p = Module::projective(&alg, 0).unwrap();
        let mut table = IsoClassTable::new(&alg);
        let base = phi(&m, &mut table, &mut rng);
        let with_p = direct_sum(&alg, &[m.clone(), p]).unwrap();
        let twice = direct_sum(&alg, &[m.clone(), m.clone()]).unwrap();
        prop_assert_eq!(phi(&with_p, &mut table, &mut rng), base);
        prop_assert_eq!(phi(&twice, &mut table, &mut rng), base);
    }

    #[test]
    fn phi_is_monotone(seed in any::<u64>(), which in 0usize..6) {
        let (mut rng, alg) = setup(seed, which);
        let m = random_module(&alg, RandomModuleSpec::new(4), &mut rng);
        let n = random_module(&alg, RandomModuleSpec::new(4), &mut rng);
        let mut table = IsoClassTable::new(&alg);
        let mn = direct_sum(&alg, &[m.clone(), n]).unwrap();
        prop_assert!(phi(&m, &mut table, &mut rng) <= phi(&mn, &mut table, &mut rng));
    }
}
