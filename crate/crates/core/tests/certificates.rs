//! LIT certificates end to end: construction, condition (a), and witnesses
//! for condition (b) that survive independent re-verification.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use trilit::algebra::samples::{dual_numbers, linear_path};
use trilit::algebra::Bimodule;
use trilit::exactlin::Fp;
use trilit::litcore::*;
use trilit::modules::{random_module, Module, RandomModuleSpec};
use trilit::par::Parallelism;
use trilit::towers::{base_certificate, ttt};
use trilit::tritriple::TriangularContext;

#[test]
fn parallel_and_sequential_suites_agree() {
    let mut g = ChaCha8Rng::seed_from_u64(4);
    let t = dual_numbers(Fp::two());
    let cert_t = base_certificate(&t, &mut g).unwrap();
    let (ctx, cert) = ttt(&t, &cert_t, &mut g).unwrap();
    let targets = standard_suite(ctx.lambda(), 2, 6, 6, 20, &mut g);
    let a = verify_suite(&cert, &targets, 4, 9, Parallelism::Sequential);
    let b = verify_suite(&cert, &targets, 4, 9, Parallelism::Threads(3));
    let key = |r: &SuiteReport| {
        r.outcomes
            .iter()
            .map(|o| (o.index, o.found, o.verified))
            .collect::<Vec<_>>()
    };
    assert_eq!(key(&a), key(&b));
    assert!(a.all_passed());
}

#[test]
fn witnesses_for_random_modules_reverify() {
    let mut g = ChaCha8Rng::seed_from_u64(8);
    let t = dual_numbers(Fp::two());
    let cert_t = base_certificate(&t, &mut g).unwrap();
    let (ctx, cert) = ttt(&t, &cert_t, &mut g).unwrap();
    for _ in 0..10 {
        let m = random_module(ctx.lambda(), RandomModuleSpec::new(6), &mut g);
        let w = search_condition_b(&cert, &m, 64, &mut g).expect("witness");
        assert!(verify_condition_b_witness(&cert, &w, &mut g).is_ok());
    }
}

#[test]
fn tampered_witness_is_rejected() {
    let mut g = ChaCha8Rng::seed_from_u64(6);
    let t = dual_numbers(Fp::two());
    let cert_t = base_certificate(&t, &mut g).unwrap();
    let (ctx, cert) = ttt(&t, &cert_t, &mut g).unwrap();
    let s = Module::simple(ctx.lambda(), 0).unwrap();
    let mut w = search_condition_b(&cert, &s, 16, &mut g).unwrap();
    w.target = Module::projective(ctx.lambda(), 0).unwrap();
    assert!(verify_condition_b_witness(&cert, &w, &mut g).is_err());
}

#[test]
fn constructive_witnesses_for_hereditary_blocks() {
    let mut g = ChaCha8Rng::seed_from_u64(1);
    let a = linear_path(Fp::two(), 2).unwrap();
    let cert_a = base_certificate(&a, &mut g).unwrap();
    let ctx = TriangularContext::new(&a, &a, Bimodule::regular(&a)).unwrap();
    let cert = lit_construct_triangular(&ctx, &cert_a, &cert_a, &mut g).unwrap();
    assert_eq!(cert.level, 2);
    assert!(verify_condition_a(&cert, ctx.lambda(), &mut g).passed());
    for i in 0..ctx.lambda().vertex_count() {
        let s = Module::simple(ctx.lambda(), i).unwrap();
        let w = constructive_witness(&ctx, &cert_a, &cert_a, &cert, &s, &mut g).unwrap();
        assert!(verify_condition_b_witness(&cert, &w, &mut g).is_ok());
    }
}
