use super::cover::{map_from_projective, projective_cover};
use super::{direct_sum, Module, Morphism};
use crate::error::{Error, Result};
use crate::exactlin::Matrix;

/// `0 -> left -> middle -> right -> 0`.
#[derive(Clone, Debug)]
pub struct ShortExactSequence {
    pub left: Module,
    pub middle: Module,
    pub right: Module,
    /// `dim middle x dim left`.
    pub inject: Matrix,
    /// `dim right x dim middle`.
    pub surject: Matrix,
}

impl ShortExactSequence {
    pub fn new(
        left: Module,
        middle: Module,
        right: Module,
        inject: Matrix,
        surject: Matrix,
    ) -> ShortExactSequence {
        ShortExactSequence {
            left,
            middle,
            right,
            inject,
            surject,
        }
    }

    /// `0 -> x -> x (+) z -> z -> 0`.
    pub fn split(x: &Module, z: &Module) -> ShortExactSequence {
        let f = x.field();
        let (a, c) = (x.dim(), z.dim());
        let middle = direct_sum(x.algebra(), &[x.clone(), z.clone()]).expect("same algebra");
        let inject = Matrix::identity(f, a).vstack(&Matrix::zeros(f, c, a));
        let surject = Matrix::zeros(f, c, a).hstack(&Matrix::identity(f, c));
        ShortExactSequence::new(x.clone(), middle, z.clone(), inject, surject)
    }

    pub fn inject_morphism(&self) -> Morphism {
        Morphism {
            source: self.left.clone(),
            target: self.middle.clone(),
            matrix: self.inject.clone(),
        }
    }

    pub fn surject_morphism(&self) -> Morphism {
        Morphism {
            source: self.middle.clone(),
            target: self.right.clone(),
            matrix: self.surject.clone(),
        }
    }
}

/// Rank test of exactness: both maps are module homomorphisms, `inject` has
/// full column rank, `surject` full row rank, their composite vanishes and
/// the dimensions add up, so the image of one is the kernel of the other.
pub fn check_exact(seq: &ShortExactSequence) -> bool {
    let (a, b, c) = (seq.left.dim(), seq.middle.dim(), seq.right.dim());
    if seq.inject.rows() != b
        || seq.inject.cols() != a
        || seq.surject.rows() != c
        || seq.surject.cols() != b
    {
        return false;
    }
    if !seq.left.same_algebra(&seq.middle) || !seq.middle.same_algebra(&seq.right) {
        return false;
    }
    b == a + c
        && seq.left.intertwines(&seq.middle, &seq.inject)
        && seq.middle.intertwines(&seq.right, &seq.surject)
        && seq.inject.rank() == a
        && seq.surject.rank() == c
        && seq.surject.mul(&seq.inject).is_zero()
}

/// The horseshoe construction: from `0 -> X -> Y -> Z -> 0` build
/// `0 -> Omega X -> K -> Omega Z -> 0`, where `K` is the kernel of
/// `P_X (+) P_Z -> Y` and is isomorphic to `Omega Y (+) Q` with `Q`
/// projective.
pub fn horseshoe(seq: &ShortExactSequence) -> Result<ShortExactSequence> {
    if !check_exact(seq) {
        return Err(Error::NotExact("horseshoe needs an exact input".into()));
    }
    let f = seq.left.field();
    let alg = seq.left.algebra();
    let cx = projective_cover(&seq.left);
    let cz = projective_cover(&seq.right);
    let y = &seq.middle;
    // Lift each generator of P_Z through the surjection.
    let mut lift = Matrix::zeros(f, y.dim(), 0);
    for (j, x) in &cz.generators {
        let rhs = Matrix::from_columns(f, seq.right.dim(), &[x.clone()]);
        let pre = seq
            .surject
            .solve(&rhs)?
            .expect("surjective map has a preimage")
            .column(0);
        let pre = y.gens()[*j].mul_vec(&pre);
        lift = lift.hstack(&map_from_projective(y, *j, &pre));
    }
    let eps_y = seq.inject.mul(&cx.epi).hstack(&lift);
    let py = direct_sum(alg, &[cx.cover.clone(), cz.cover.clone()])?;
    let k = eps_y.kernel_basis();
    let middle = py.restrict(&k);
    let (nx, nz) = (cx.cover.dim(), cz.cover.dim());
    let k_inv = k
        .left_inverse()
        .unwrap_or_else(|| Matrix::zeros(f, 0, nx + nz));
    let top = cx
        .syzygy_inclusion
        .vstack(&Matrix::zeros(f, nz, cx.syzygy.dim()));
    let inject = k_inv.mul(&top);
    let kz_inv = cz
        .syzygy_inclusion
        .left_inverse()
        .unwrap_or_else(|| Matrix::zeros(f, 0, nz));
    let surject = kz_inv.mul(&k.block(nx, nz, 0, k.cols()));
    Ok(ShortExactSequence::new(
        cx.syzygy, middle, cz.syzygy, inject, surject,
    ))
}
