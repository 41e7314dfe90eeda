//! The lower and upper towers, their column tensors and the type-A tensor
//! algebras, over the dual numbers and over F2 A_2.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use trilit::algebra::samples::{dual_numbers, linear_path};
use trilit::algebra::{Direction, QuiverAnSpec};
use trilit::exactlin::Fp;
use trilit::modules::{decompose, direct_sum, Module};
use trilit::par::Parallelism;
use trilit::towers::*;

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(11)
}

fn indecomposables_a2() -> Vec<Module> {
    let a = linear_path(Fp::two(), 2).unwrap();
    vec![
        Module::simple(&a, 0).unwrap(),
        Module::simple(&a, 1).unwrap(),
        Module::projective(&a, 0).unwrap(),
    ]
}

#[test]
fn column_tensors_stay_indecomposable() {
    let mut g = rng();
    let d = dual_numbers(Fp::two());
    let mut xs = vec![Module::simple(&d, 0).unwrap(), Module::regular(&d)];
    xs.extend(indecomposables_a2());
    for x in &xs {
        let t = x.algebra().clone();
        for n in 1..=4 {
            for tri in [Triangle::Lower, Triangle::Upper] {
                let c = mn_tensor_over(&t, n, x, tri).unwrap();
                assert_eq!(decompose(&c, &mut g).summand_count(), 1, "n = {n}, {tri:?}");
                assert_eq!(c.dim(), n * x.dim());
            }
        }
    }
}

#[test]
fn doubled_column_tensor_splits_in_two() {
    let mut g = rng();
    let d = dual_numbers(Fp::two());
    let s = Module::simple(&d, 0).unwrap();
    let ss = direct_sum(&d, &[s.clone(), s]).unwrap();
    let parts = decompose(&mn_tensor(&d, 3, &ss).unwrap(), &mut g);
    assert_eq!(parts.parts.len(), 1);
    assert_eq!(parts.parts[0].multiplicity, 2);
}

#[test]
fn towers_are_tensor_algebras() {
    let mut g = rng();
    for t in [dual_numbers(Fp::two()), linear_path(Fp::two(), 2).unwrap()] {
        let cert = base_certificate(&t, &mut g).unwrap();
        for n in 1..=4 {
            let lower = bn(&t, &cert, n, &mut g).unwrap();
            let upper = bn_prime(&t, &cert, n, &mut g).unwrap();
            assert_eq!(lower.algebra().dim(), n * (n + 1) / 2 * t.dim());
            assert_eq!(upper.algebra().dim(), lower.algebra().dim());
            assert!(matches_tensor(&t, &lower.block, &QuiverAnSpec::equioriented(n)).unwrap());
            let left = QuiverAnSpec {
                n,
                change_vertices: vec![],
                initial_direction: Direction::Leftward,
            };
            assert!(matches_tensor(&t, &upper.block, &left).unwrap());
            assert_eq!(lower.certificate.level, cert.level + n - 1);
            assert_eq!(upper.certificate.level, cert.level + n - 1);
            assert!(lower.plan.steps.iter().all(|s| s.hypotheses.projective()));
        }
    }
}

#[test]
fn zigzag_with_two_changes() {
    let mut g = rng();
    let t = dual_numbers(Fp::two());
    let cert = base_certificate(&t, &mut g).unwrap();
    let spec = QuiverAnSpec {
        n: 4,
        change_vertices: vec![2, 3],
        initial_direction: Direction::Rightward,
    };
    let tw = tensor_an(&t, &cert, &spec, &mut g).unwrap();
    // 1 -> 2 <- 3 -> 4: four trivial paths and three arrows.
    assert_eq!(tw.algebra().dim(), 7 * t.dim());
    assert!(tw.plan.all_hypotheses_hold());
    let kinds: Vec<StepKind> = tw.plan.steps.iter().map(|s| s.kind).collect();
    assert_eq!(kinds, [StepKind::Lower, StepKind::CaseI, StepKind::CaseII]);
    assert!(reverify(&tw.certificate, 15, 3, Parallelism::Sequential, &mut g).passed());
}

#[test]
fn upper_tower_of_two_verifies() {
    let mut g = rng();
    let t = dual_numbers(Fp::two());
    let cert = base_certificate(&t, &mut g).unwrap();
    let tw = bn_prime(&t, &cert, 2, &mut g).unwrap();
    let check = reverify(&tw.certificate, 20, 1, Parallelism::Auto, &mut g);
    assert!(check.passed(), "{:?}", check.suite.outcomes);
}

#[test]
fn one_point_extension_of_dual_numbers() {
    let mut g = rng();
    let u = dual_numbers(Fp::two());
    let cert_u = base_certificate(&u, &mut g).unwrap();
    let (ctx, cert) = one_point_extension(&u, &cert_u, &Module::regular(&u), &mut g).unwrap();
    assert_eq!(ctx.lambda().dim(), 5);
    assert!(reverify(&cert, 15, 2, Parallelism::Sequential, &mut g).passed());
    let s = Module::simple(&u, 0).unwrap();
    assert!(one_point_extension(&u, &cert_u, &s, &mut g).is_err());
}
