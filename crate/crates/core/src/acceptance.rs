//! The acceptance suite: nine end-to-end checks, each returning a report
//! with a pass flag, a one-line summary and its running time. Shared by the
//! `acceptance` test target and `trilit selftest`.

use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::samples::{dual_numbers, linear_path, truncated_polynomial};
use crate::algebra::{algebras_isomorphic_as_presented, Algebra, QuiverAnSpec};
use crate::exactlin::{Fp, Matrix};
use crate::itfun::{phi, IsoClassTable};
use crate::litcore::{standard_suite, verify_condition_a, verify_suite};
use crate::modules::{
    check_exact, decompose, direct_sum, horseshoe, is_isomorphic, is_isomorphic_indecomposable,
    is_isomorphic_plus_projective, pd_bounded, random_module, same_decomposition,
    stably_isomorphic, syzygy, Module, PdBound, RandomModuleSpec, ShortExactSequence,
};
use crate::par::{map_indexed, Parallelism};
use crate::towers::{
    base_certificate, block_to_tensor, bn, mn_tensor_over, reverify, tensor_an, ttt, Triangle,
};
use crate::tritriple::{
    random_context, random_f, random_triple, sample_pool, triple_syzygy_formula,
    triple_syzygy_lifted, triple_syzygy_oracle, triple_to_flat, TripleModule,
};

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub summary: String,
    pub seconds: f64,
    /// Target running time, if the criterion has one.
    pub budget_seconds: Option<f64>,
}

impl CriterionReport {
    pub fn within_budget(&self) -> bool {
        self.budget_seconds.is_none_or(|b| self.seconds < b)
    }

    pub fn line(&self) -> String {
        let verdict = if self.passed && self.within_budget() {
            "PASS"
        } else {
            "FAIL"
        };
        let budget = self
            .budget_seconds
            .map_or(String::new(), |b| format!(" (budget {b:.0}s)"));
        format!(
            "criterion {} [{}] {}: {} in {:.2}s{}",
            self.id, self.name, verdict, self.summary, self.seconds, budget
        )
    }
}

#[derive(Clone, Copy, Debug)]
pub struct AcceptanceConfig {
    pub seed: u64,
    pub mode: Parallelism,
}

impl Default for AcceptanceConfig {
    fn default() -> Self {
        AcceptanceConfig {
            seed: 0,
            mode: Parallelism::Auto,
        }
    }
}

fn case_rng(seed: u64, salt: u64, i: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ salt ^ (i as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn timed(
    id: usize,
    name: &'static str,
    budget: Option<f64>,
    body: impl FnOnce() -> (bool, String),
) -> CriterionReport {
    let start = Instant::now();
    let (passed, summary) = body();
    CriterionReport {
        id,
        name,
        passed,
        summary,
        seconds: start.elapsed().as_secs_f64(),
        budget_seconds: budget,
    }
}

fn count(ok: &[bool]) -> usize {
    ok.iter().filter(|&&b| b).count()
}

/// Syzygies of triples: the formula agrees with the syzygy of the flattened
/// module up to a projective summand, for 50 random contexts over F2 and F3
/// and n = 1, 2, 3. The lifted construction, which keeps the component the
/// formula drops, is counted alongside.
pub fn criterion_1(cfg: &AcceptanceConfig) -> CriterionReport {
    timed(1, "triangular syzygy formula", Some(60.0), || {
        let cases: Vec<usize> = (0..50).collect();
        let results = map_indexed(&cases, cfg.mode, |i, _| {
            let mut rng = case_rng(cfg.seed, 0x01, i);
            let f = if i % 2 == 0 {
                Fp::two()
            } else {
                Fp::new(3).expect("prime")
            };
            let ctx = random_context(f, 8, &mut rng);
            let tm = random_triple(&ctx, 4, &mut rng);
            let agree = |x: crate::Result<TripleModule>, n: usize, rng: &mut ChaCha8Rng| {
                let oracle = triple_syzygy_oracle(&ctx, &tm, n);
                x.and_then(|x| {
                    is_isomorphic_plus_projective(&triple_to_flat(&ctx, &x), &oracle, rng)
                })
                .unwrap_or(false)
            };
            let literal = (1..=3).all(|n| agree(triple_syzygy_formula(&ctx, &tm, n), n, &mut rng));
            let lifted = (1..=3).all(|n| agree(triple_syzygy_lifted(&ctx, &tm, n), n, &mut rng));
            (literal, lifted)
        });
        let literal = results.iter().filter(|r| r.0).count();
        let lifted = results.iter().filter(|r| r.1).count();
        (
            literal == cases.len(),
            format!(
                "formula {literal}/{n}, lifted {lifted}/{n} contexts agree for n = 1, 2, 3",
                n = cases.len()
            ),
        )
    })
}

fn random_projective<R: Rng + ?Sized>(alg: &Arc<Algebra>, rng: &mut R) -> Module {
    let k = rng.gen_range(1..=3);
    let parts: Vec<Module> = (0..k)
        .map(|_| Module::projective(alg, rng.gen_range(0..alg.vertex_count())).expect("vertex"))
        .collect();
    direct_sum(alg, &parts).expect("same algebra")
}

/// Phi vanishes on projectives and over self-injective algebras, and equals
/// the projective dimension over the hereditary algebras `F2 A_n`.
pub fn criterion_2(cfg: &AcceptanceConfig) -> CriterionReport {
    timed(2, "phi correctness", None, || {
        let f = Fp::two();
        let pool = sample_pool(f);
        let cases: Vec<usize> = (0..20).collect();
        let projective = map_indexed(&cases, cfg.mode, |i, _| {
            let mut rng = case_rng(cfg.seed, 0x02, i);
            let alg = &pool[i % pool.len()];
            let m = random_projective(alg, &mut rng);
            phi(&m, &mut IsoClassTable::new(alg), &mut rng) == 0
        });
        let hereditary = map_indexed(&cases, cfg.mode, |i, _| {
            let mut rng = case_rng(cfg.seed, 0x12, i);
            let alg = linear_path(f, 2 + i % 3).expect("admissible");
            let m = random_module(&alg, RandomModuleSpec::new(8), &mut rng);
            match pd_bounded(&m, alg.dim()) {
                PdBound::Finite(pd) => phi(&m, &mut IsoClassTable::new(&alg), &mut rng) == pd,
                PdBound::AtLeast(_) => false,
            }
        });
        let self_injective = map_indexed(&cases, cfg.mode, |i, _| {
            let mut rng = case_rng(cfg.seed, 0x22, i);
            let alg = truncated_polynomial(f, 2 + i % 2).expect("admissible");
            let m = random_module(&alg, RandomModuleSpec::new(6), &mut rng);
            phi(&m, &mut IsoClassTable::new(&alg), &mut rng) == 0
        });
        let (a, b, c) = (
            count(&projective),
            count(&hereditary),
            count(&self_injective),
        );
        (
            a == 20 && b == 20 && c == 20,
            format!("projective {a}/20, finite pd {b}/20, self-injective {c}/20"),
        )
    })
}

/// Krull-Schmidt: doubling a module doubles its multiplicities, and the
/// decomposition is unchanged by changes of basis.
pub fn criterion_3(cfg: &AcceptanceConfig) -> CriterionReport {
    timed(3, "krull-schmidt soundness", None, || {
        let f = Fp::two();
        let pool = sample_pool(f);
        let cases: Vec<usize> = (0..30).collect();
        let results = map_indexed(&cases, cfg.mode, |i, _| {
            let mut rng = case_rng(cfg.seed, 0x03, i);
            let alg = &pool[i % pool.len()];
            let m = random_module(alg, RandomModuleSpec::new(10), &mut rng);
            let dm = decompose(&m, &mut rng);
            let mm = direct_sum(alg, &[m.clone(), m.clone()]).expect("same algebra");
            let dmm = decompose(&mm, &mut rng);
            let doubled = dmm.parts.len() == dm.parts.len()
                && dmm.parts.iter().all(|p| {
                    dm.parts.iter().any(|q| {
                        p.multiplicity == 2 * q.multiplicity
                            && is_isomorphic_indecomposable(&p.module, &q.module, &mut rng)
                    })
                });
            let stable = (0..5).all(|_| {
                let g = Matrix::random_invertible(f, m.dim(), &mut rng);
                let moved = m.change_basis(&g).expect("invertible");
                same_decomposition(&dm, &decompose(&moved, &mut rng), &mut rng)
            });
            doubled && stable
        });
        let k = count(&results);
        (k == cases.len(), format!("{k}/{} modules", cases.len()))
    })
}

/// `(T 0; T T)` over the dual numbers: a level-1 certificate that passes
/// condition (a) and condition (b) on at least 25 targets.
pub fn criterion_4(cfg: &AcceptanceConfig) -> CriterionReport {
    timed(4, "(T 0; T T) end to end", Some(120.0), || {
        let mut rng = case_rng(cfg.seed, 0x04, 0);
        let t = dual_numbers(Fp::two());
        let cert_t = match base_certificate(&t, &mut rng) {
            Ok(c) => c,
            Err(e) => return (false, format!("base certificate: {e}")),
        };
        let (ctx, cert) = match ttt(&t, &cert_t, &mut rng) {
            Ok(x) => x,
            Err(e) => return (false, format!("construction: {e}")),
        };
        let a = verify_condition_a(&cert, ctx.lambda(), &mut rng);
        let targets = standard_suite(ctx.lambda(), 3, 10, 6, 25, &mut rng);
        let suite = verify_suite(&cert, &targets, 4, cfg.seed, cfg.mode);
        let ok = cert.level == 1 && a.passed() && targets.len() >= 25 && suite.all_passed();
        (
            ok,
            format!(
                "level {}, condition (a) {}, witnesses {}/{}",
                cert.level,
                if a.passed() { "passed" } else { "failed" },
                suite.passed(),
                targets.len()
            ),
        )
    })
}

/// `M_n (x)_T X` is indecomposable for every indecomposable `X` over the
/// dual numbers, `n <= 4`, over both towers.
pub fn criterion_5(cfg: &AcceptanceConfig) -> CriterionReport {
    timed(5, "column tensors indecomposable", None, || {
        let mut rng = case_rng(cfg.seed, 0x05, 0);
        let t = dual_numbers(Fp::two());
        let xs = [Module::simple(&t, 0).expect("vertex"), Module::regular(&t)];
        let mut checked = 0;
        let mut good = 0;
        for x in &xs {
            for n in 1..=4 {
                for tri in [Triangle::Lower, Triangle::Upper] {
                    checked += 1;
                    if let Ok(c) = mn_tensor_over(&t, n, x, tri) {
                        if decompose(&c, &mut rng).summand_count() == 1 {
                            good += 1;
                        }
                    }
                }
            }
        }
        (good == checked, format!("{good}/{checked} indecomposable"))
    })
}

/// The lower tower `B_n` and `T (x) k(1 -> ... -> n)` agree as presented
/// algebras through the path basis, with equal certificate levels.
pub fn criterion_6(cfg: &AcceptanceConfig) -> CriterionReport {
    timed(6, "tower cross-check", None, || {
        let mut rng = case_rng(cfg.seed, 0x06, 0);
        let t = dual_numbers(Fp::two());
        let cert_t = match base_certificate(&t, &mut rng) {
            Ok(c) => c,
            Err(e) => return (false, format!("base certificate: {e}")),
        };
        let mut good = 0;
        for n in 1..=4 {
            let spec = QuiverAnSpec::equioriented(n);
            let mut check = || -> crate::Result<bool> {
                let lower = bn(&t, &cert_t, n, &mut rng)?;
                let other = tensor_an(&t, &cert_t, &spec, &mut rng)?;
                let (big, into_big) = block_to_tensor(&t, &lower.block, &spec)?;
                let (_, other_into_big) = block_to_tensor(&t, &other.block, &spec)?;
                let back = other_into_big.inverse().expect("permutation");
                Ok(
                    algebras_isomorphic_as_presented(lower.algebra(), &big, &into_big)?
                        && algebras_isomorphic_as_presented(
                            lower.algebra(),
                            other.algebra(),
                            &back.mul(&into_big),
                        )?
                        && lower.certificate.level == other.certificate.level
                        && lower.certificate.level == cert_t.level + n - 1,
                )
            };
            if check().unwrap_or(false) {
                good += 1;
            }
        }
        (good == 4, format!("{good}/4 sizes agree"))
    })
}

/// `T (x) kQ` for the two quivers on three vertices with one orientation
/// change: every step's hypotheses hold and the certificate verifies on at
/// least 15 targets.
pub fn criterion_7(cfg: &AcceptanceConfig) -> CriterionReport {
    timed(7, "one orientation change", Some(180.0), || {
        let t = dual_numbers(Fp::two());
        let mut lines = Vec::new();
        let mut ok = true;
        for (k, dir) in [
            crate::algebra::Direction::Rightward,
            crate::algebra::Direction::Leftward,
        ]
        .into_iter()
        .enumerate()
        {
            let mut rng = case_rng(cfg.seed, 0x07, k);
            let spec = QuiverAnSpec {
                n: 3,
                change_vertices: vec![2],
                initial_direction: dir,
            };
            let case = if k == 0 { "I" } else { "II" };
            let result =
                base_certificate(&t, &mut rng).and_then(|c| tensor_an(&t, &c, &spec, &mut rng));
            match result {
                Ok(tw) => {
                    let check = reverify(&tw.certificate, 15, cfg.seed, cfg.mode, &mut rng);
                    let good = tw.plan.all_hypotheses_hold()
                        && check.passed()
                        && check.suite.outcomes.len() >= 15;
                    ok &= good;
                    lines.push(format!(
                        "case {case}: dim {}, {} steps, level {}, witnesses {}/{}",
                        tw.algebra().dim(),
                        tw.plan.steps.len(),
                        tw.certificate.level,
                        check.suite.passed(),
                        check.suite.outcomes.len()
                    ));
                }
                Err(e) => {
                    ok = false;
                    lines.push(format!("case {case}: {e}"));
                }
            }
        }
        (ok, lines.join("; "))
    })
}

fn random_sequence<R: Rng + ?Sized>(alg: &Arc<Algebra>, rng: &mut R) -> ShortExactSequence {
    let m = random_module(alg, RandomModuleSpec::new(8), rng);
    match rng.gen_range(0..3) {
        0 => {
            let c = crate::modules::projective_cover(&m);
            ShortExactSequence::new(c.syzygy, c.cover, m, c.syzygy_inclusion, c.epi)
        }
        1 => {
            let n = random_module(alg, RandomModuleSpec::new(4), rng);
            ShortExactSequence::split(&n, &m)
        }
        _ => {
            let vs = Matrix::random(m.field(), m.dim(), 1, rng);
            let span = m.spin(&vs);
            let (sub, inc) = m.submodule(&span);
            let (quot, proj) = m.quotient(&inc);
            ShortExactSequence::new(sub, m, quot, inc, proj)
        }
    }
}

fn corrupt<R: Rng + ?Sized>(seq: &ShortExactSequence, rng: &mut R) -> Option<ShortExactSequence> {
    let mut bad = seq.clone();
    let f = seq.middle.field();
    if seq.left.dim() > 0 && rng.gen_bool(0.5) {
        let c = rng.gen_range(0..seq.left.dim());
        for r in 0..seq.middle.dim() {
            bad.inject.set(r, c, 0);
        }
        return Some(bad);
    }
    if seq.left.dim() > 0 && seq.right.dim() > 0 {
        // A row perturbation `w` with `w * inject != 0` breaks the composite.
        loop {
            let w = Matrix::random(f, 1, seq.middle.dim(), rng);
            if !w.mul(&seq.inject).is_zero() {
                let r = rng.gen_range(0..seq.right.dim());
                let mut shift = Matrix::zeros(f, seq.right.dim(), seq.middle.dim());
                shift.set_block(r, 0, &w);
                bad.surject = seq.surject.add(&shift);
                return Some(bad);
            }
        }
    }
    if seq.right.dim() > 0 {
        let r = rng.gen_range(0..seq.right.dim());
        for c in 0..seq.middle.dim() {
            bad.surject.set(r, c, 0);
        }
        return Some(bad);
    }
    None
}

/// Exact sequences built by construction pass the exactness check, corrupted
/// ones fail, and the horseshoe construction ends in the syzygies of the
/// ends.
pub fn criterion_8(cfg: &AcceptanceConfig) -> CriterionReport {
    timed(8, "exactness and horseshoe", None, || {
        let pool = sample_pool(Fp::two());
        let cases: Vec<usize> = (0..100).collect();
        let results = map_indexed(&cases, cfg.mode, |i, _| {
            let mut rng = case_rng(cfg.seed, 0x08, i);
            let alg = &pool[i % pool.len()];
            let mut seq = random_sequence(alg, &mut rng);
            while seq.left.dim() + seq.right.dim() == 0 {
                seq = random_sequence(alg, &mut rng);
            }
            let exact = check_exact(&seq);
            let rejected = corrupt(&seq, &mut rng).is_none_or(|b| !check_exact(&b));
            let shoe = horseshoe(&seq).is_ok_and(|h| {
                check_exact(&h)
                    && is_isomorphic(&h.left, &syzygy(&seq.left, 1), &mut rng).unwrap_or(false)
                    && is_isomorphic(&h.right, &syzygy(&seq.right, 1), &mut rng).unwrap_or(false)
            });
            (exact, rejected, shoe)
        });
        let a = results.iter().filter(|r| r.0).count();
        let b = results.iter().filter(|r| r.1).count();
        let c = results.iter().filter(|r| r.2).count();
        (
            a == 100 && b == 100 && c == 100,
            format!("exact {a}/100, corrupted rejected {b}/100, horseshoe {c}/100"),
        )
    })
}

/// With `B` projective, the syzygies of `(A, B, f)` and `(A, 0, 0)` agree
/// stably for n = 1, 2, 3.
pub fn criterion_9(cfg: &AcceptanceConfig) -> CriterionReport {
    timed(9, "projective lower component", None, || {
        let cases: Vec<usize> = (0..30).collect();
        let results = map_indexed(&cases, cfg.mode, |i, _| {
            let mut rng = case_rng(cfg.seed, 0x09, i);
            let f = if i % 2 == 0 {
                Fp::two()
            } else {
                Fp::new(3).expect("prime")
            };
            let ctx = random_context(f, 8, &mut rng);
            let a = random_module(ctx.t(), RandomModuleSpec::new(4), &mut rng);
            let b = random_projective(ctx.u(), &mut rng);
            let fmap = random_f(&ctx, &a, &b, &mut rng);
            let full = TripleModule {
                a: a.clone(),
                b,
                f: fmap,
            };
            let top = TripleModule {
                f: Matrix::zeros(f, 0, ctx.m().dim() * a.dim()),
                a,
                b: Module::zero(ctx.u()),
            };
            (1..=3).all(|n| {
                stably_isomorphic(
                    &triple_syzygy_oracle(&ctx, &full, n),
                    &triple_syzygy_oracle(&ctx, &top, n),
                    &mut rng,
                )
                .unwrap_or(false)
            })
        });
        let k = count(&results);
        (k == cases.len(), format!("{k}/{} triples", cases.len()))
    })
}

pub fn run(id: usize, cfg: &AcceptanceConfig) -> Option<CriterionReport> {
    Some(match id {
        1 => criterion_1(cfg),
        2 => criterion_2(cfg),
        3 => criterion_3(cfg),
        4 => criterion_4(cfg),
        5 => criterion_5(cfg),
        6 => criterion_6(cfg),
        7 => criterion_7(cfg),
        8 => criterion_8(cfg),
        9 => criterion_9(cfg),
        _ => return None,
    })
}

pub fn run_all(cfg: &AcceptanceConfig) -> Vec<CriterionReport> {
    (1..=9).filter_map(|i| run(i, cfg)).collect()
}
