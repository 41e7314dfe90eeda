//! Small algebras used throughout the tests, benches and command line.

use std::sync::Arc;

use super::{build_bound_quiver_algebra, Algebra, Quiver};
use crate::error::Result;
use crate::exactlin::Fp;

/// The base field as a one-vertex path algebra.
pub fn base_field(f: Fp) -> Arc<Algebra> {
    let q = Quiver::from_triples(1, &[]).expect("point quiver");
    build_bound_quiver_algebra::<&str>(&q, &[], f).expect("admissible")
}

/// `k[x]/(x^k)` for `k >= 2`.
pub fn truncated_polynomial(f: Fp, k: usize) -> Result<Arc<Algebra>> {
    let q = Quiver::from_triples(1, &[(1, 1, "x")])?;
    let rel = vec!["x"; k].join("*");
    build_bound_quiver_algebra(&q, &[rel], f)
}

pub fn dual_numbers(f: Fp) -> Arc<Algebra> {
    truncated_polynomial(f, 2).expect("admissible")
}

/// The path algebra of `1 -> 2 -> ... -> n`, arrows `a1, a2, ...`.
pub fn linear_path(f: Fp, n: usize) -> Result<Arc<Algebra>> {
    linear_with_zero_relations(f, n, usize::MAX)
}

/// `1 -> 2 -> ... -> n` modulo all paths of length `len`.
pub fn linear_with_zero_relations(f: Fp, n: usize, len: usize) -> Result<Arc<Algebra>> {
    let labels: Vec<String> = (1..n).map(|k| format!("a{k}")).collect();
    let arrows: Vec<(usize, usize, &str)> =
        (1..n).map(|k| (k, k + 1, labels[k - 1].as_str())).collect();
    let q = Quiver::from_triples(n, &arrows)?;
    let rels: Vec<String> = if len >= n {
        Vec::new()
    } else {
        (1..=n - len)
            .map(|s| {
                (s..s + len)
                    .rev()
                    .map(|k| format!("a{k}"))
                    .collect::<Vec<_>>()
                    .join("*")
            })
            .collect()
    };
    build_bound_quiver_algebra(&q, &rels, f)
}
