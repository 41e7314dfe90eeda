use std::sync::Arc;

use rand::Rng;

use super::{direct_sum, Module};
use crate::algebra::Algebra;
use crate::exactlin::Matrix;

#[derive(Clone, Copy, Debug)]
pub struct RandomModuleSpec {
    /// Upper bound on the dimension (at least 1).
    pub max_dim: usize,
    /// Most indecomposable projectives in the presentation.
    pub max_summands: usize,
    /// Apply a random change of basis to the result.
    pub scramble: bool,
}

impl RandomModuleSpec {
    pub fn new(max_dim: usize) -> Self {
        RandomModuleSpec {
            max_dim,
            max_summands: 3,
            scramble: true,
        }
    }
}

/// `P / U` where `P` is the sum of the given indecomposable projectives and
/// `U` the submodule generated by `relations` random elements.
pub fn random_quotient_of_projective<R: Rng + ?Sized>(
    algebra: &Arc<Algebra>,
    summands: &[usize],
    relations: usize,
    rng: &mut R,
) -> Module {
    let parts: Vec<Module> = summands
        .iter()
        .map(|&i| Module::projective(algebra, i).expect("valid vertex"))
        .collect();
    let p = direct_sum(algebra, &parts).expect("same algebra");
    let vs = Matrix::random(algebra.field(), p.dim(), relations, rng);
    let u = p.spin(&vs);
    p.quotient(&u).0
}

/// A random nonzero module of dimension at most `spec.max_dim`, presented
/// as a quotient of a random projective.
pub fn random_module<R: Rng + ?Sized>(
    algebra: &Arc<Algebra>,
    spec: RandomModuleSpec,
    rng: &mut R,
) -> Module {
    assert!(spec.max_dim >= 1);
    let f = algebra.field();
    let r = algebra.vertex_count();
    loop {
        let k = rng.gen_range(1..=spec.max_summands.max(1));
        let summands: Vec<usize> = (0..k).map(|_| rng.gen_range(0..r)).collect();
        let parts: Vec<Module> = summands
            .iter()
            .map(|&i| Module::projective(algebra, i).expect("valid vertex"))
            .collect();
        let p = direct_sum(algebra, &parts).expect("same algebra");
        let mut gens = Matrix::random(f, p.dim(), rng.gen_range(0..=2), rng);
        let mut m = p.quotient(&p.spin(&gens)).0;
        while m.dim() > spec.max_dim {
            gens = gens.hstack(&Matrix::random(f, p.dim(), 1, rng));
            m = p.quotient(&p.spin(&gens)).0;
        }
        if m.is_zero() {
            continue;
        }
        if spec.scramble {
            let b = Matrix::random_invertible(f, m.dim(), rng);
            m = m.change_basis(&b).expect("invertible");
        }
        return m;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modules::tests::a2;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_modules_are_valid() {
        let a = a2();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let m = random_module(&a, RandomModuleSpec::new(4), &mut rng);
            assert!(m.dim() >= 1 && m.dim() <= 4);
            assert!(a.check_representation(m.gens()).is_ok());
        }
    }
}
