//! Finite-dimensional left modules over an [`Algebra`].
//!
//! A module is given by one matrix per generator of the algebra (vertex
//! idempotents, then arrows). Its basis is arbitrary; a graded basis adapted
//! to the vertex idempotents is computed on demand and used for Hom spaces
//! and tops.

mod cover;
mod decompose;
mod exact;
mod random;

use std::fmt;
use std::sync::{Arc, OnceLock};

pub use cover::{
    is_projective, pd_bounded, projective_cover, radical_and_top, syzygy, PdBound,
    ProjectiveCoverData, RadicalTop,
};
pub use decompose::{
    decompose, is_indecomposable, is_isomorphic, is_isomorphic_indecomposable,
    is_isomorphic_plus_projective, same_decomposition, split_indecomposables, stably_isomorphic,
    strip_projectives, DecompositionResult, Part,
};
pub use exact::{check_exact, horseshoe, ShortExactSequence};
pub use random::{random_module, random_quotient_of_projective, RandomModuleSpec};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactlin::{Fp, Matrix};

#[derive(Clone)]
pub struct Module(Arc<ModuleData>);

struct ModuleData {
    algebra: Arc<Algebra>,
    dim: usize,
    gens: Vec<Matrix>,
    basis_actions: OnceLock<Vec<Matrix>>,
    grading: OnceLock<Grading>,
}

/// A basis adapted to the vertex idempotents.
#[derive(Clone, Debug)]
pub struct Grading {
    /// `dims[i] = dim e_i M`.
    pub dims: Vec<usize>,
    pub offsets: Vec<usize>,
    /// Columns: graded basis vectors in the module's own basis.
    pub change: Matrix,
    pub inverse: Matrix,
    /// For each arrow `i -> j`, its action as a `dims[j] x dims[i]` block.
    pub arrow_blocks: Vec<Matrix>,
}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Module")
            .field("dim", &self.dim())
            .field("dimension_vector", &self.dimension_vector())
            .finish()
    }
}

impl Module {
    /// A module from one matrix per generator, checked against the algebra.
    pub fn new(algebra: Arc<Algebra>, gens: Vec<Matrix>) -> Result<Module> {
        algebra
            .check_representation(&gens)
            .map_err(Error::InvalidModule)?;
        Ok(Module::from_trusted(algebra, gens))
    }

    /// No validation: for modules produced by constructions that preserve
    /// the module axioms.
    pub fn from_trusted(algebra: Arc<Algebra>, gens: Vec<Matrix>) -> Module {
        let dim = gens.first().map_or(0, Matrix::rows);
        debug_assert_eq!(gens.len(), algebra.generator_count());
        Module(Arc::new(ModuleData {
            algebra,
            dim,
            gens,
            basis_actions: OnceLock::new(),
            grading: OnceLock::new(),
        }))
    }

    /// A module from the action of every basis element of the algebra.
    pub fn from_basis_actions(algebra: Arc<Algebra>, actions: Vec<Matrix>) -> Module {
        let n = actions.first().map_or(0, Matrix::rows);
        let gens = (0..algebra.generator_count())
            .map(|g| algebra.element_action(&actions, algebra.generator(g), n))
            .collect();
        let m = Module::from_trusted(algebra, gens);
        let _ = m.0.basis_actions.set(actions);
        m
    }

    pub fn zero(algebra: &Arc<Algebra>) -> Module {
        let f = algebra.field();
        let gens = vec![Matrix::zeros(f, 0, 0); algebra.generator_count()];
        Module::from_trusted(algebra.clone(), gens)
    }

    /// The simple module at vertex `i`.
    pub fn simple(algebra: &Arc<Algebra>, i: usize) -> Result<Module> {
        if i >= algebra.vertex_count() {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: algebra.vertex_count(),
            });
        }
        let f = algebra.field();
        let gens = (0..algebra.generator_count())
            .map(|g| {
                let mut m = Matrix::zeros(f, 1, 1);
                if g == i {
                    m.set(0, 0, 1);
                }
                m
            })
            .collect();
        Ok(Module::from_trusted(algebra.clone(), gens))
    }

    /// The indecomposable projective `A e_i`.
    pub fn projective(algebra: &Arc<Algebra>, i: usize) -> Result<Module> {
        let data = algebra.projective_data();
        let p = data.get(i).ok_or(Error::IndexOutOfRange {
            index: i,
            len: data.len(),
        })?;
        Ok(Module::from_trusted(algebra.clone(), p.gens.clone()))
    }

    /// The left regular module `A`.
    pub fn regular(algebra: &Arc<Algebra>) -> Module {
        let gens = (0..algebra.generator_count())
            .map(|g| algebra.left_mult_matrix(algebra.generator(g)))
            .collect();
        Module::from_trusted(algebra.clone(), gens)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.0.algebra
    }

    pub fn field(&self) -> Fp {
        self.0.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn is_zero(&self) -> bool {
        self.0.dim == 0
    }

    /// One matrix per generator.
    pub fn gens(&self) -> &[Matrix] {
        &self.0.gens
    }

    /// One matrix per basis element of the algebra.
    pub fn basis_actions(&self) -> &[Matrix] {
        self.0
            .basis_actions
            .get_or_init(|| self.0.algebra.basis_actions(&self.0.gens))
    }

    /// Matrix of an arbitrary algebra element.
    pub fn action_of(&self, x: &[u32]) -> Matrix {
        self.0
            .algebra
            .element_action(self.basis_actions(), x, self.dim())
    }

    pub fn same_algebra(&self, other: &Module) -> bool {
        Arc::ptr_eq(&self.0.algebra, &other.0.algebra) || *self.0.algebra == *other.0.algebra
    }

    pub fn grading(&self) -> &Grading {
        self.0.grading.get_or_init(|| self.compute_grading())
    }

    pub fn dimension_vector(&self) -> Vec<usize> {
        self.grading().dims.clone()
    }

    fn compute_grading(&self) -> Grading {
        let alg = &self.0.algebra;
        let f = self.field();
        let n = self.dim();
        let r = alg.vertex_count();
        let mut blocks = Vec::with_capacity(r);
        let mut dims = Vec::with_capacity(r);
        let mut offsets = Vec::with_capacity(r);
        let mut off = 0;
        for i in 0..r {
            let b = self.0.gens[i].column_basis();
            offsets.push(off);
            dims.push(b.cols());
            off += b.cols();
            blocks.push(b);
        }
        let mut change = Matrix::zeros(f, n, n);
        for (i, b) in blocks.iter().enumerate() {
            change.set_block(0, offsets[i], b);
        }
        let inverse = change.inverse().expect("idempotents sum to the identity");
        let arrow_blocks = alg
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arrow)| {
                let full = inverse.mul(&self.0.gens[r + a]).mul(&change);
                full.block(
                    offsets[arrow.target],
                    dims[arrow.target],
                    offsets[arrow.source],
                    dims[arrow.source],
                )
            })
            .collect();
        Grading {
            dims,
            offsets,
            change,
            inverse,
            arrow_blocks,
        }
    }

    /// The same module in the basis given by the columns of `p`.
    pub fn change_basis(&self, p: &Matrix) -> Result<Module> {
        let inv = p
            .inverse()
            .ok_or_else(|| Error::InvalidArgument("basis change is not invertible".into()))?;
        if p.rows() != self.dim() {
            return Err(Error::DimensionMismatch("basis change size".into()));
        }
        let gens = self.0.gens.iter().map(|g| inv.mul(g).mul(p)).collect();
        Ok(Module::from_trusted(self.0.algebra.clone(), gens))
    }

    /// Submodule spanned by the columns of `span`, which must be invariant.
    /// Returns the submodule and its inclusion matrix (a basis of the span).
    pub fn submodule(&self, span: &Matrix) -> (Module, Matrix) {
        let basis = span.column_basis();
        let sub = self.restrict(&basis);
        (sub, basis)
    }

    /// Restriction to an invariant subspace with the given basis columns.
    pub(crate) fn restrict(&self, basis: &Matrix) -> Module {
        if basis.cols() == 0 {
            return Module::zero(&self.0.algebra);
        }
        let inv = basis.left_inverse().expect("basis has full column rank");
        let gens = self.0.gens.iter().map(|g| inv.mul(&g.mul(basis))).collect();
        Module::from_trusted(self.0.algebra.clone(), gens)
    }

    /// Quotient by the invariant subspace spanned by the columns of `span`,
    /// with the projection matrix.
    pub fn quotient(&self, span: &Matrix) -> (Module, Matrix) {
        let q = span.quotient();
        let gens = self
            .0
            .gens
            .iter()
            .map(|g| q.proj.mul(g).mul(&q.section))
            .collect();
        (Module::from_trusted(self.0.algebra.clone(), gens), q.proj)
    }

    /// Smallest submodule containing the columns of `vs`.
    pub fn spin(&self, vs: &Matrix) -> Matrix {
        let f = self.field();
        let n = self.dim();
        let mut space = crate::exactlin::Subspace::new(f, n);
        let mut basis: Vec<Vec<u32>> = Vec::new();
        let mut queue: Vec<Vec<u32>> = vs.columns();
        while let Some(v) = queue.pop() {
            if !space.insert(&v) {
                continue;
            }
            for g in &self.0.gens {
                queue.push(g.mul_vec(&v));
            }
            basis.push(v);
        }
        Matrix::from_columns(f, n, &basis)
    }

    /// Whether `x` is a module homomorphism from `self` to `target`.
    pub fn intertwines(&self, target: &Module, x: &Matrix) -> bool {
        x.rows() == target.dim()
            && x.cols() == self.dim()
            && self
                .0
                .gens
                .iter()
                .zip(&target.0.gens)
                .all(|(gm, gn)| x.mul(gm) == gn.mul(x))
    }
}

/// Direct sum with block-diagonal actions.
pub fn direct_sum(algebra: &Arc<Algebra>, parts: &[Module]) -> Result<Module> {
    if parts.iter().any(|m| **m.algebra() != **algebra) {
        return Err(Error::AlgebraMismatch("algebras"));
    }
    let f = algebra.field();
    let gens = (0..algebra.generator_count())
        .map(|g| {
            let blocks: Vec<&Matrix> = parts.iter().map(|m| &m.gens()[g]).collect();
            Matrix::block_diag(f, &blocks)
        })
        .collect();
    Ok(Module::from_trusted(algebra.clone(), gens))
}

/// A module homomorphism.
#[derive(Clone, Debug)]
pub struct Morphism {
    pub source: Module,
    pub target: Module,
    pub matrix: Matrix,
}

impl Morphism {
    pub fn new(source: Module, target: Module, matrix: Matrix) -> Result<Morphism> {
        if !source.same_algebra(&target) {
            return Err(Error::AlgebraMismatch("algebras"));
        }
        if !source.intertwines(&target, &matrix) {
            return Err(Error::InvalidMorphism(
                "matrix does not intertwine the actions".into(),
            ));
        }
        Ok(Morphism {
            source,
            target,
            matrix,
        })
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim()
    }

    /// The kernel as a module, with its inclusion into the source.
    pub fn kernel(&self) -> (Module, Matrix) {
        let k = self.matrix.kernel_basis();
        (self.source.restrict(&k), k)
    }
}

/// Basis of `Hom(m, n)` as matrices `dim n x dim m`.
///
/// Unknowns live only in the vertex blocks of graded bases, so the linear
/// system is as small as the dimension vectors allow.
pub fn hom_matrices(m: &Module, n: &Module) -> Result<Vec<Matrix>> {
    if !m.same_algebra(n) {
        return Err(Error::AlgebraMismatch("algebras"));
    }
    let f = m.field();
    if m.dim() == 0 || n.dim() == 0 {
        return Ok(Vec::new());
    }
    let alg = m.algebra();
    let (gm, gn) = (m.grading(), n.grading());
    let r = alg.vertex_count();
    // Variable offsets for X_i (dims n_i x m_i, row-major).
    let mut var = vec![0usize; r + 1];
    for i in 0..r {
        var[i + 1] = var[i] + gn.dims[i] * gm.dims[i];
    }
    let unknowns = var[r];
    if unknowns == 0 {
        return Ok(Vec::new());
    }
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for (a, arrow) in alg.arrows().iter().enumerate() {
        let (i, j) = (arrow.source, arrow.target);
        let am = &gm.arrow_blocks[a];
        let bn = &gn.arrow_blocks[a];
        let (mi, mj, ni, nj) = (gm.dims[i], gm.dims[j], gn.dims[i], gn.dims[j]);
        // X_j A - B X_i = 0, entry (r, c) with r < n_j, c < m_i.
        for row in 0..nj {
            for c in 0..mi {
                let mut eq = vec![0u32; unknowns];
                for s in 0..mj {
                    let x = am.get(s, c);
                    if x != 0 {
                        let v = var[j] + row * mj + s;
                        eq[v] = f.add(eq[v], x);
                    }
                }
                for s in 0..ni {
                    let x = bn.get(row, s);
                    if x != 0 {
                        let v = var[i] + s * mi + c;
                        eq[v] = f.sub(eq[v], x);
                    }
                }
                if eq.iter().any(|&x| x != 0) {
                    rows.push(eq);
                }
            }
        }
    }
    let kernel = if rows.is_empty() {
        Matrix::identity(f, unknowns)
    } else {
        let mut data = Vec::with_capacity(rows.len() * unknowns);
        for row in &rows {
            data.extend_from_slice(row);
        }
        Matrix::from_vec(f, rows.len(), unknowns, data)?.kernel_basis()
    };
    let mut out = Vec::with_capacity(kernel.cols());
    for k in 0..kernel.cols() {
        let mut x = Matrix::zeros(f, n.dim(), m.dim());
        for i in 0..r {
            for row in 0..gn.dims[i] {
                for c in 0..gm.dims[i] {
                    x.set(
                        gn.offsets[i] + row,
                        gm.offsets[i] + c,
                        kernel.get(var[i] + row * gm.dims[i] + c, k),
                    );
                }
            }
        }
        out.push(gn.change.mul(&x).mul(&gm.inverse));
    }
    Ok(out)
}

/// Basis of `Hom(m, n)` as morphisms.
pub fn hom_basis(m: &Module, n: &Module) -> Result<Vec<Morphism>> {
    Ok(hom_matrices(m, n)?
        .into_iter()
        .map(|matrix| Morphism {
            source: m.clone(),
            target: n.clone(),
            matrix,
        })
        .collect())
}

/// The indecomposable projective `A e_i`.
pub fn projective_indecomposable(algebra: &Arc<Algebra>, i: usize) -> Result<Module> {
    Module::projective(algebra, i)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::algebra::{build_bound_quiver_algebra, Quiver};

    pub(crate) fn dual() -> Arc<Algebra> {
        let q = Quiver::from_triples(1, &[(1, 1, "x")]).unwrap();
        build_bound_quiver_algebra(&q, &["x*x"], Fp::two()).unwrap()
    }

    pub(crate) fn a2() -> Arc<Algebra> {
        let q = Quiver::from_triples(2, &[(1, 2, "a")]).unwrap();
        build_bound_quiver_algebra::<&str>(&q, &[], Fp::two()).unwrap()
    }

    #[test]
    fn projectives() {
        let d = dual();
        assert_eq!(Module::projective(&d, 0).unwrap().dim(), 2);
        let a = a2();
        let p1 = Module::projective(&a, 0).unwrap();
        let p2 = Module::projective(&a, 1).unwrap();
        assert_eq!(p1.dim(), 2);
        assert_eq!(p1.dimension_vector(), vec![1, 1]);
        assert_eq!(p2.dim(), 1);
        assert!(Module::projective(&a, 2).is_err());
    }

    #[test]
    fn hom_dimensions() {
        let d = dual();
        let t = Module::regular(&d);
        let s = Module::simple(&d, 0).unwrap();
        assert_eq!(hom_matrices(&t, &s).unwrap().len(), 1);
        assert_eq!(hom_matrices(&s, &s).unwrap().len(), 1);
        assert_eq!(hom_matrices(&s, &t).unwrap().len(), 1);
        assert_eq!(hom_matrices(&t, &t).unwrap().len(), 2);
        let a = a2();
        let s1 = Module::simple(&a, 0).unwrap();
        let s2 = Module::simple(&a, 1).unwrap();
        assert!(hom_matrices(&s1, &s2).unwrap().is_empty());
        let p1 = Module::projective(&a, 0).unwrap();
        assert_eq!(hom_matrices(&s2, &p1).unwrap().len(), 1);
        assert_eq!(hom_matrices(&p1, &s2).unwrap().len(), 0);
    }

    #[test]
    fn hom_matches_brute_force() {
        // Every intertwiner found by exhaustive search over F_2 lies in the span.
        let d = dual();
        let t = Module::regular(&d);
        let m = direct_sum(&d, &[t.clone(), Module::simple(&d, 0).unwrap()]).unwrap();
        let f = d.field();
        let basis = hom_matrices(&m, &t).unwrap();
        let mut count = 0;
        for bits in 0u32..(1 << 6) {
            let data = (0..6).map(|k| (bits >> k) & 1).collect();
            let x = Matrix::from_vec(f, 2, 3, data).unwrap();
            if m.intertwines(&t, &x) {
                count += 1;
            }
        }
        assert_eq!(count, 1 << basis.len());
        assert!(basis.iter().all(|x| m.intertwines(&t, x)));
    }

    #[test]
    fn direct_sums() {
        let d = dual();
        let s = Module::simple(&d, 0).unwrap();
        assert_eq!(direct_sum(&d, &[]).unwrap().dim(), 0);
        assert_eq!(direct_sum(&d, &[s.clone(), s]).unwrap().dim(), 2);
    }

    #[test]
    fn invalid_action_is_rejected() {
        let d = dual();
        let f = d.field();
        let gens = vec![
            Matrix::identity(f, 1),
            Matrix::identity(f, 1), // x acting invertibly violates x*x = 0
        ];
        assert!(Module::new(d, gens).is_err());
    }
}
