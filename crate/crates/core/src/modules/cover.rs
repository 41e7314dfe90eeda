use std::fmt;

use serde::{Deserialize, Serialize};

use super::{direct_sum, Module};
use crate::exactlin::Matrix;

pub struct RadicalTop {
    pub radical: Module,
    /// Basis of `rad M` inside `M`.
    pub radical_inclusion: Matrix,
    pub top: Module,
    /// The quotient map `M -> M / rad M`.
    pub top_projection: Matrix,
}

/// `rad M` is spanned by the images of the arrows; the top is the quotient.
pub fn radical_and_top(m: &Module) -> RadicalTop {
    let f = m.field();
    let r = m.algebra().vertex_count();
    let mut span = Matrix::zeros(f, m.dim(), 0);
    for g in &m.gens()[r..] {
        span = span.hstack(g);
    }
    let (radical, radical_inclusion) = m.submodule(&span);
    let (top, top_projection) = m.quotient(&radical_inclusion);
    RadicalTop {
        radical,
        radical_inclusion,
        top,
        top_projection,
    }
}

/// Elements of `e_j M` whose classes form a basis of the top, grouped by
/// vertex. Chosen deterministically among graded basis vectors.
pub(crate) fn top_generators(m: &Module) -> Vec<(usize, Vec<u32>)> {
    let f = m.field();
    let alg = m.algebra();
    let g = m.grading();
    let mut out = Vec::new();
    for j in 0..alg.vertex_count() {
        let dj = g.dims[j];
        if dj == 0 {
            continue;
        }
        let mut incoming = Matrix::zeros(f, dj, 0);
        for (a, arrow) in alg.arrows().iter().enumerate() {
            if arrow.target == j {
                incoming = incoming.hstack(&g.arrow_blocks[a]);
            }
        }
        let section = if incoming.cols() == 0 {
            Matrix::identity(f, dj)
        } else {
            incoming.quotient().section
        };
        for c in 0..section.cols() {
            let mut v = vec![0u32; m.dim()];
            v[g.offsets[j]..g.offsets[j] + dj].copy_from_slice(&section.column(c));
            out.push((j, g.change.mul_vec(&v)));
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct ProjectiveCoverData {
    pub cover: Module,
    /// Vertex of each indecomposable summand of the cover, in order.
    pub summands: Vec<usize>,
    /// The epimorphism `cover -> M`, `dim M x dim cover`.
    pub epi: Matrix,
    pub syzygy: Module,
    /// Basis of the kernel of `epi` inside the cover.
    pub syzygy_inclusion: Matrix,
    /// The images in `M` of the generators `e_j` of the cover's summands.
    pub generators: Vec<(usize, Vec<u32>)>,
}

/// The map `A e_j -> M` sending `e_j` to `x` (for `x` in `e_j M`), as a
/// matrix on the basis of `A e_j`.
pub(crate) fn map_from_projective(m: &Module, j: usize, x: &[u32]) -> Matrix {
    let f = m.field();
    let data = &m.algebra().projective_data()[j];
    let cols: Vec<Vec<u32>> = data
        .basis
        .columns()
        .iter()
        .map(|s| m.action_of(s).mul_vec(x))
        .collect();
    Matrix::from_columns(f, m.dim(), &cols)
}

/// `P -> M` with `P = (+) P(j)^{t_j}`, `t_j` the multiplicity of the simple
/// at `j` in the top of `M`.
pub fn projective_cover(m: &Module) -> ProjectiveCoverData {
    let f = m.field();
    let alg = m.algebra();
    let gens = top_generators(m);
    let mut parts = Vec::with_capacity(gens.len());
    let mut epi = Matrix::zeros(f, m.dim(), 0);
    let mut summands = Vec::with_capacity(gens.len());
    for (j, x) in gens.iter() {
        parts.push(Module::projective(alg, *j).expect("valid vertex"));
        epi = epi.hstack(&map_from_projective(m, *j, x));
        summands.push(*j);
    }
    let cover = direct_sum(alg, &parts).expect("same algebra");
    let syzygy_inclusion = epi.kernel_basis();
    let syzygy = cover.restrict(&syzygy_inclusion);
    ProjectiveCoverData {
        cover,
        summands,
        epi,
        syzygy,
        syzygy_inclusion,
        generators: gens,
    }
}

/// `Omega^n(m)`, the iterated kernel of projective covers.
pub fn syzygy(m: &Module, n: usize) -> Module {
    let mut x = m.clone();
    for _ in 0..n {
        if x.is_zero() {
            break;
        }
        x = projective_cover(&x).syzygy;
    }
    x
}

/// Exact: `m` is projective iff its projective cover has the same dimension.
pub fn is_projective(m: &Module) -> bool {
    let alg = m.algebra();
    let data = alg.projective_data();
    let cover_dim: usize = top_generators(m)
        .iter()
        .map(|(j, _)| data[*j].basis.cols())
        .sum();
    cover_dim == m.dim()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PdBound {
    Finite(usize),
    /// No syzygy up to the bound was projective.
    AtLeast(usize),
}

impl fmt::Display for PdBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PdBound::Finite(n) => write!(f, "{n}"),
            PdBound::AtLeast(n) => write!(f, ">= {n}"),
        }
    }
}

/// Smallest `n <= bound` with `Omega^n(m)` projective.
pub fn pd_bounded(m: &Module, bound: usize) -> PdBound {
    let mut x = m.clone();
    for n in 0..=bound {
        if is_projective(&x) {
            return PdBound::Finite(n);
        }
        x = projective_cover(&x).syzygy;
    }
    PdBound::AtLeast(bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modules::tests::{a2, dual};
    use crate::modules::{direct_sum, hom_matrices};

    #[test]
    fn tops() {
        let d = dual();
        let t = Module::regular(&d);
        let rt = radical_and_top(&t);
        assert_eq!(rt.top.dim(), 1);
        assert_eq!(rt.radical.dim(), 1);
        let s = Module::simple(&d, 0).unwrap();
        let ss = direct_sum(&d, &[s.clone(), s]).unwrap();
        assert_eq!(radical_and_top(&ss).radical.dim(), 0);
    }

    #[test]
    fn covers_and_syzygies() {
        let d = dual();
        let s = Module::simple(&d, 0).unwrap();
        let pc = projective_cover(&s);
        assert_eq!(pc.cover.dim(), 2);
        assert_eq!(pc.syzygy.dim(), 1);
        // The syzygy of S is S again: x acts as zero.
        assert!(pc.syzygy.gens()[1].is_zero());
        let t = Module::regular(&d);
        assert_eq!(syzygy(&t, 1).dim(), 0);
        assert_eq!(projective_cover(&Module::zero(&d)).cover.dim(), 0);

        let a = a2();
        let s1 = Module::simple(&a, 0).unwrap();
        let om = syzygy(&s1, 1);
        assert_eq!(om.dimension_vector(), vec![0, 1]);
        assert!(is_projective(&om));
        assert_eq!(syzygy(&s1, 0).dim(), 1);
    }

    #[test]
    fn epi_is_a_surjective_homomorphism() {
        let a = a2();
        let m = Module::regular(&a);
        let pc = projective_cover(&m);
        assert!(pc.cover.intertwines(&m, &pc.epi));
        assert_eq!(pc.epi.rank(), m.dim());
        assert_eq!(pc.cover.dim(), m.dim());
        let _ = hom_matrices(&pc.cover, &m).unwrap();
    }

    #[test]
    fn projectivity_and_pd() {
        let d = dual();
        let s = Module::simple(&d, 0).unwrap();
        assert!(is_projective(&Module::regular(&d)));
        assert!(!is_projective(&s));
        assert!(is_projective(&Module::zero(&d)));
        assert_eq!(pd_bounded(&s, 10), PdBound::AtLeast(10));
        let a = a2();
        assert_eq!(
            pd_bounded(&Module::simple(&a, 0).unwrap(), 6),
            PdBound::Finite(1)
        );
        assert_eq!(pd_bounded(&Module::regular(&a), 6), PdBound::Finite(0));
    }
}
