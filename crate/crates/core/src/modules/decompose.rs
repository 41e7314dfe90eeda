//! Krull-Schmidt decomposition by Fitting splitting of endomorphisms.
//!
//! An endomorphism `phi` of `M` gives `M = ker phi^N (+) im phi^N` for `N >=
//! dim M`. `M` is indecomposable exactly when its endomorphism ring is local,
//! i.e. when every endomorphism is nilpotent or invertible. We look for a
//! witness of non-locality among basis elements, then among seeded random
//! elements, then (for small rings) among all elements.

use rand::Rng;

use super::{direct_sum, hom_matrices, is_projective, Module};
use crate::error::{Error, Result};
use crate::exactlin::Matrix;

/// Random endomorphisms tried before giving up or enumerating.
const RANDOM_SAMPLES: usize = 64;
/// Endomorphism rings with at most `p^6` elements are enumerated outright.
const EXHAUSTIVE_DIM: usize = 6;
const EXHAUSTIVE_MAX_ELEMENTS: u64 = 1 << 16;

#[derive(Clone, Debug)]
pub struct Part {
    pub module: Module,
    pub multiplicity: usize,
    pub projective: bool,
}

#[derive(Clone, Debug, Default)]
pub struct DecompositionResult {
    pub parts: Vec<Part>,
}

impl DecompositionResult {
    /// Number of indecomposable summands counted with multiplicity.
    pub fn summand_count(&self) -> usize {
        self.parts.iter().map(|p| p.multiplicity).sum()
    }

    pub fn multiplicities(&self) -> Vec<usize> {
        self.parts.iter().map(|p| p.multiplicity).collect()
    }

    /// The parts with multiplicity, as a flat list.
    pub fn summands(&self) -> Vec<Module> {
        self.parts
            .iter()
            .flat_map(|p| std::iter::repeat(p.module.clone()).take(p.multiplicity))
            .collect()
    }
}

fn combination(basis: &[Matrix], coeffs: &[u32]) -> Matrix {
    let mut acc = Matrix::zeros(basis[0].field(), basis[0].rows(), basis[0].cols());
    for (b, &c) in basis.iter().zip(coeffs) {
        acc.add_scaled(b, c);
    }
    acc
}

/// Calls `visit` on each element of the span of `basis` (up to a cap) until
/// it returns `Some`.
fn enumerate_span<T>(basis: &[Matrix], mut visit: impl FnMut(&Matrix) -> Option<T>) -> Option<T> {
    let p = basis[0].field().characteristic() as u64;
    let k = basis.len();
    let total = p.checked_pow(k as u32)?;
    if k > EXHAUSTIVE_DIM || total > EXHAUSTIVE_MAX_ELEMENTS {
        return None;
    }
    let mut coeffs = vec![0u32; k];
    for _ in 0..total {
        if let Some(t) = visit(&combination(basis, &coeffs)) {
            return Some(t);
        }
        for c in coeffs.iter_mut() {
            *c += 1;
            if (*c as u64) < p {
                break;
            }
            *c = 0;
        }
    }
    None
}

fn random_combination<R: Rng + ?Sized>(basis: &[Matrix], rng: &mut R) -> Matrix {
    let p = basis[0].field().characteristic();
    let coeffs: Vec<u32> = (0..basis.len()).map(|_| rng.gen_range(0..p)).collect();
    combination(basis, &coeffs)
}

/// A power of an endomorphism whose kernel and image are both nonzero.
fn nontrivial_fitting(phi: &Matrix) -> Option<Matrix> {
    let f = phi.stable_power();
    let r = f.rank();
    (r > 0 && r < phi.rows()).then_some(f)
}

/// Splits `m` into two nonzero summands when possible.
fn find_split<R: Rng + ?Sized>(m: &Module, rng: &mut R) -> Option<(Module, Module)> {
    if m.dim() <= 1 {
        return None;
    }
    let end = hom_matrices(m, m).expect("same module");
    if end.len() <= 1 {
        return None;
    }
    let power = end
        .iter()
        .find_map(nontrivial_fitting)
        .or_else(|| {
            (0..RANDOM_SAMPLES).find_map(|_| nontrivial_fitting(&random_combination(&end, rng)))
        })
        .or_else(|| enumerate_span(&end, nontrivial_fitting))?;
    let image = power.column_basis();
    let kernel = power.kernel_basis();
    Some((m.restrict(&image), m.restrict(&kernel)))
}

/// Indecomposable summands of `m`, not grouped.
pub fn split_indecomposables<R: Rng + ?Sized>(m: &Module, rng: &mut R) -> Vec<Module> {
    let mut out = Vec::new();
    let mut stack = vec![m.clone()];
    while let Some(x) = stack.pop() {
        if x.is_zero() {
            continue;
        }
        match find_split(&x, rng) {
            Some((a, b)) => {
                stack.push(b);
                stack.push(a);
            }
            None => out.push(x),
        }
    }
    out
}

pub fn is_indecomposable<R: Rng + ?Sized>(m: &Module, rng: &mut R) -> bool {
    !m.is_zero() && find_split(m, rng).is_none()
}

/// Isomorphism test for indecomposable modules.
///
/// With `End(a)` local, `a` and `b` are isomorphic iff some `psi phi` is not
/// nilpotent; by bilinearity it suffices to test pairs of Hom basis
/// elements, which makes the final answer exact.
pub fn is_isomorphic_indecomposable<R: Rng + ?Sized>(a: &Module, b: &Module, rng: &mut R) -> bool {
    if a.dim() != b.dim() || !a.same_algebra(b) {
        return false;
    }
    if a.dim() == 0 {
        return true;
    }
    if a.dimension_vector() != b.dimension_vector() {
        return false;
    }
    let (Ok(ab), Ok(ba)) = (hom_matrices(a, b), hom_matrices(b, a)) else {
        return false;
    };
    if ab.is_empty() || ba.is_empty() {
        return false;
    }
    for _ in 0..4 {
        let phi = random_combination(&ab, rng);
        if phi.rank() == a.dim() {
            let psi = random_combination(&ba, rng);
            if psi.rank() == a.dim() {
                return true;
            }
        }
    }
    ab.iter()
        .any(|phi| ba.iter().any(|psi| !psi.mul(phi).is_nilpotent()))
}

/// Krull-Schmidt decomposition, grouped by isomorphism class. Parts are
/// ordered by dimension, then dimension vector, then first appearance.
pub fn decompose<R: Rng + ?Sized>(m: &Module, rng: &mut R) -> DecompositionResult {
    let pieces = split_indecomposables(m, rng);
    let mut parts: Vec<Part> = Vec::new();
    for piece in pieces {
        if let Some(part) = parts
            .iter_mut()
            .find(|p| is_isomorphic_indecomposable(&p.module, &piece, rng))
        {
            part.multiplicity += 1;
        } else {
            let projective = is_projective(&piece);
            parts.push(Part {
                module: piece,
                multiplicity: 1,
                projective,
            });
        }
    }
    parts.sort_by_cached_key(|p| (p.module.dim(), p.module.dimension_vector()));
    DecompositionResult { parts }
}

/// Whether two decompositions agree class by class.
pub fn same_decomposition<R: Rng + ?Sized>(
    a: &DecompositionResult,
    b: &DecompositionResult,
    rng: &mut R,
) -> bool {
    if a.parts.len() != b.parts.len() {
        return false;
    }
    let mut used = vec![false; b.parts.len()];
    'outer: for pa in &a.parts {
        for (k, pb) in b.parts.iter().enumerate() {
            if !used[k]
                && pa.multiplicity == pb.multiplicity
                && is_isomorphic_indecomposable(&pa.module, &pb.module, rng)
            {
                used[k] = true;
                continue 'outer;
            }
        }
        return false;
    }
    true
}

pub fn is_isomorphic<R: Rng + ?Sized>(m: &Module, n: &Module, rng: &mut R) -> Result<bool> {
    if !m.same_algebra(n) {
        return Err(Error::AlgebraMismatch("algebras"));
    }
    if m.dim() != n.dim() || m.dimension_vector() != n.dimension_vector() {
        return Ok(false);
    }
    let dm = decompose(m, rng);
    let dn = decompose(n, rng);
    Ok(same_decomposition(&dm, &dn, rng))
}

/// Isomorphism after discarding projective summands on both sides.
pub fn stably_isomorphic<R: Rng + ?Sized>(m: &Module, n: &Module, rng: &mut R) -> Result<bool> {
    if !m.same_algebra(n) {
        return Err(Error::AlgebraMismatch("algebras"));
    }
    let a = decompose(m, rng);
    let b = decompose(n, rng);
    let keep = |d: DecompositionResult| DecompositionResult {
        parts: d.parts.into_iter().filter(|p| !p.projective).collect(),
    };
    Ok(same_decomposition(&keep(a), &keep(b), rng))
}

/// Whether `big` is isomorphic to `small (+) Q` for some projective `Q`.
pub fn is_isomorphic_plus_projective<R: Rng + ?Sized>(
    big: &Module,
    small: &Module,
    rng: &mut R,
) -> Result<bool> {
    if !big.same_algebra(small) {
        return Err(Error::AlgebraMismatch("algebras"));
    }
    if big.dim() < small.dim() {
        return Ok(false);
    }
    let a = decompose(big, rng);
    let b = decompose(small, rng);
    let mut left: Vec<Part> = a.parts;
    for pb in &b.parts {
        let Some(pa) = left
            .iter_mut()
            .find(|pa| is_isomorphic_indecomposable(&pa.module, &pb.module, rng))
        else {
            return Ok(false);
        };
        if pa.multiplicity < pb.multiplicity {
            return Ok(false);
        }
        pa.multiplicity -= pb.multiplicity;
    }
    Ok(left.iter().all(|p| p.multiplicity == 0 || p.projective))
}

/// The direct sum of the non-projective parts of `m`.
pub fn strip_projectives<R: Rng + ?Sized>(m: &Module, rng: &mut R) -> Module {
    let d = decompose(m, rng);
    let kept: Vec<Module> = d
        .parts
        .iter()
        .filter(|p| !p.projective)
        .flat_map(|p| std::iter::repeat(p.module.clone()).take(p.multiplicity))
        .collect();
    direct_sum(m.algebra(), &kept).expect("parts share the algebra")
}
