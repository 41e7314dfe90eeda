use std::sync::Arc;

use super::Algebra;
use crate::error::{Error, Result};
use crate::exactlin::{unit_vector, Matrix};

/// A `U`-`T`-bimodule: left `U`-action, right `T`-action, commuting.
///
/// Actions are stored for every basis element of the acting algebra:
/// `left_action[i]` is `m -> u_i m` and `right_action[j]` is `m -> m t_j`.
#[derive(Clone, Debug)]
pub struct Bimodule {
    left: Arc<Algebra>,
    right: Arc<Algebra>,
    dim: usize,
    left_action: Vec<Matrix>,
    right_action: Vec<Matrix>,
}

impl Bimodule {
    /// Build from one matrix per generator of `U` and of `T`.
    pub fn new(
        left: Arc<Algebra>,
        right: Arc<Algebra>,
        left_gens: &[Matrix],
        right_gens: &[Matrix],
    ) -> Result<Bimodule> {
        if left_gens.len() != left.generator_count() || right_gens.len() != right.generator_count()
        {
            return Err(Error::InvalidBimodule(
                "need one matrix per generator on each side".into(),
            ));
        }
        let la = left.basis_actions(left_gens);
        let ra = right.basis_actions_right(right_gens);
        let b = Bimodule::from_basis_actions_unchecked(left, right, la, ra);
        // The rebuilt actions must reproduce the given generator matrices.
        if b.left_generator_matrices() != left_gens || b.right_generator_matrices() != right_gens {
            return Err(Error::InvalidBimodule(
                "generator matrices violate the defining relations".into(),
            ));
        }
        b.check_axioms().map_err(Error::InvalidBimodule)?;
        Ok(b)
    }

    pub fn from_basis_actions(
        left: Arc<Algebra>,
        right: Arc<Algebra>,
        left_action: Vec<Matrix>,
        right_action: Vec<Matrix>,
    ) -> Result<Bimodule> {
        let b = Bimodule::from_basis_actions_unchecked(left, right, left_action, right_action);
        b.check_axioms().map_err(Error::InvalidBimodule)?;
        Ok(b)
    }

    /// No validation; [`Bimodule::check_axioms`] can be called later.
    pub fn from_basis_actions_unchecked(
        left: Arc<Algebra>,
        right: Arc<Algebra>,
        left_action: Vec<Matrix>,
        right_action: Vec<Matrix>,
    ) -> Bimodule {
        let dim = left_action
            .first()
            .or(right_action.first())
            .map_or(0, Matrix::rows);
        Bimodule {
            left,
            right,
            dim,
            left_action,
            right_action,
        }
    }

    /// `T` as a `T`-`T`-bimodule.
    pub fn regular(t: &Arc<Algebra>) -> Bimodule {
        let d = t.dim();
        let left = (0..d)
            .map(|i| t.left_mult_matrix(&unit_vector(d, i)))
            .collect();
        let right = (0..d)
            .map(|j| t.right_mult_matrix(&unit_vector(d, j)))
            .collect();
        Bimodule::from_basis_actions_unchecked(t.clone(), t.clone(), left, right)
    }

    /// `U` as a `U`-`T`-bimodule, with `T` acting on the right through the
    /// algebra map whose columns `phi` gives (the images of the `T` basis).
    pub fn along_map(u: &Arc<Algebra>, t: &Arc<Algebra>, phi: &Matrix) -> Result<Bimodule> {
        if phi.rows() != u.dim() || phi.cols() != t.dim() {
            return Err(Error::DimensionMismatch("algebra map shape".into()));
        }
        let d = u.dim();
        let left = (0..d)
            .map(|i| u.left_mult_matrix(&unit_vector(d, i)))
            .collect();
        let right = (0..t.dim())
            .map(|j| u.right_mult_matrix(&phi.column(j)))
            .collect();
        Bimodule::from_basis_actions(u.clone(), t.clone(), left, right)
    }

    /// `U e_i (x) e_j T` over the base field: projective on both sides.
    pub fn free(u: &Arc<Algebra>, i: usize, t: &Arc<Algebra>, j: usize) -> Result<Bimodule> {
        if i >= u.vertex_count() || j >= t.vertex_count() {
            return Err(Error::InvalidArgument("vertex out of range".into()));
        }
        let pu = &u.projective_data()[i].basis;
        let lu = pu.left_inverse().expect("basis");
        let tj = t.left_mult_matrix(&t.idempotents()[j]).column_basis();
        let lt = tj.left_inverse().expect("basis");
        let (du, dt) = (pu.cols(), tj.cols());
        let left = (0..u.dim())
            .map(|a| {
                let x = u.left_mult_matrix(&unit_vector(u.dim(), a));
                lu.mul(&x).mul(pu).kron(&Matrix::identity(u.field(), dt))
            })
            .collect();
        let right = (0..t.dim())
            .map(|b| {
                let x = t.right_mult_matrix(&unit_vector(t.dim(), b));
                Matrix::identity(t.field(), du).kron(&lt.mul(&x).mul(&tj))
            })
            .collect();
        Bimodule::from_basis_actions(u.clone(), t.clone(), left, right)
    }

    /// Direct sum of bimodules over the same pair of algebras.
    pub fn direct_sum(parts: &[Bimodule]) -> Result<Bimodule> {
        let first = parts
            .first()
            .ok_or_else(|| Error::InvalidArgument("empty direct sum".into()))?;
        if parts
            .iter()
            .any(|p| *p.left != *first.left || *p.right != *first.right)
        {
            return Err(Error::AlgebraMismatch("algebras"));
        }
        let f = first.left.field();
        let sum = |pick: &dyn Fn(&Bimodule) -> &[Matrix], n: usize| -> Vec<Matrix> {
            (0..n)
                .map(|k| {
                    let blocks: Vec<&Matrix> = parts.iter().map(|p| &pick(p)[k]).collect();
                    Matrix::block_diag(f, &blocks)
                })
                .collect()
        };
        let left = sum(&|p| &p.left_action, first.left.dim());
        let right = sum(&|p| &p.right_action, first.right.dim());
        Ok(Bimodule::from_basis_actions_unchecked(
            first.left.clone(),
            first.right.clone(),
            left,
            right,
        ))
    }

    pub fn left_algebra(&self) -> &Arc<Algebra> {
        &self.left
    }

    pub fn right_algebra(&self) -> &Arc<Algebra> {
        &self.right
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn left_action(&self) -> &[Matrix] {
        &self.left_action
    }

    pub fn right_action(&self) -> &[Matrix] {
        &self.right_action
    }

    pub fn left_generator_matrices(&self) -> Vec<Matrix> {
        let n = self.dim;
        (0..self.left.generator_count())
            .map(|g| {
                self.left
                    .element_action(&self.left_action, self.left.generator(g), n)
            })
            .collect()
    }

    pub fn right_generator_matrices(&self) -> Vec<Matrix> {
        let n = self.dim;
        (0..self.right.generator_count())
            .map(|g| {
                self.right
                    .element_action(&self.right_action, self.right.generator(g), n)
            })
            .collect()
    }

    /// Checks both actions are unital and associative and that they commute.
    pub fn check_axioms(&self) -> std::result::Result<(), String> {
        let (u, t, n) = (&self.left, &self.right, self.dim);
        if self.left_action.len() != u.dim() || self.right_action.len() != t.dim() {
            return Err("one action matrix per basis element is required".into());
        }
        if self
            .left_action
            .iter()
            .chain(&self.right_action)
            .any(|m| m.rows() != n || m.cols() != n)
        {
            return Err(format!("action matrices must be {n}x{n}"));
        }
        if u.field() != t.field() {
            return Err("the two algebras live over different fields".into());
        }
        if n == 0 {
            return Ok(());
        }
        let lg = self.left_generator_matrices();
        u.check_representation(&lg)
            .map_err(|e| format!("left action: {e}"))?;
        if u.basis_actions(&lg) != self.left_action {
            return Err("left action is not determined by its generators".into());
        }
        let rg = self.right_generator_matrices();
        if !t
            .element_action(&self.right_action, t.unit(), n)
            .is_identity()
        {
            return Err("right action: the unit does not act as the identity".into());
        }
        if t.basis_actions_right(&rg) != self.right_action {
            return Err("right action is not determined by its generators".into());
        }
        let d = t.dim();
        for g in 0..t.generator_count() {
            for b in 0..d {
                // m (b g) = (m b) g
                let prod = t.mul(&unit_vector(d, b), t.generator(g));
                let lhs = t.element_action(&self.right_action, &prod, n);
                if lhs != rg[g].mul(&self.right_action[b]) {
                    return Err(format!(
                        "right action is not associative at {} * {}",
                        t.labels()[b],
                        t.generator_labels()[g]
                    ));
                }
            }
        }
        for (i, l) in lg.iter().enumerate() {
            for (j, r) in rg.iter().enumerate() {
                if l.mul(r) != r.mul(l) {
                    return Err(format!(
                        "left action of {} does not commute with right action of {}",
                        u.generator_labels()[i],
                        t.generator_labels()[j]
                    ));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_bound_quiver_algebra, Quiver};
    use crate::exactlin::Fp;

    #[test]
    fn regular_bimodule_is_valid() {
        let q = Quiver::from_triples(2, &[(1, 2, "a")]).unwrap();
        let a = build_bound_quiver_algebra::<&str>(&q, &[], Fp::two()).unwrap();
        let m = Bimodule::regular(&a);
        assert_eq!(m.dim(), 3);
        assert!(m.check_axioms().is_ok());
        let again = Bimodule::new(
            a.clone(),
            a.clone(),
            &m.left_generator_matrices(),
            &m.right_generator_matrices(),
        )
        .unwrap();
        assert_eq!(again.right_action(), m.right_action());
    }
}
