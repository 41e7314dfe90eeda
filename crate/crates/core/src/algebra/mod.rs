//! Finite-dimensional basic algebras over prime fields.
//!
//! An [`Algebra`] is stored by structure constants on an explicit basis,
//! together with a complete set of primitive orthogonal idempotents and an
//! explicit radical basis. Every constructor in this module maintains these,
//! so the Jacobson radical is never recomputed from scratch.
//!
//! From the radical we derive a set of homogeneous generators ("arrows"),
//! one for each dimension of `e_j (rad / rad^2) e_i`. Modules are given by
//! one matrix per idempotent and per arrow; every basis element is recorded
//! as a combination of words in these generators so that full actions can be
//! rebuilt.

mod bimodule;
mod bound;
mod construct;
pub mod quiver;
pub mod samples;

use std::fmt;
use std::sync::{Arc, OnceLock};

pub use bimodule::Bimodule;
pub use bound::build_bound_quiver_algebra;
pub use construct::{
    algebras_isomorphic_as_presented, opposite, permutation_matrix, tensor_product,
    tensor_with_path_algebra, triangular,
};
pub use quiver::{build_quiver_an, Direction, Path, Quiver, QuiverAnSpec, QuiverArrow, Relation};

use crate::error::{Error, Result};
use crate::exactlin::{is_zero_vec, unit_vector, Fp, Matrix, Subspace, Vector};

/// A homogeneous radical generator `g = e_target g e_source`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub label: String,
    pub vector: Vector,
    /// 0-based idempotent index.
    pub source: usize,
    /// 0-based idempotent index.
    pub target: usize,
}

/// Quiver presentation data attached to bound quiver algebras.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
    /// The path represented by each basis element.
    pub paths: Vec<Path>,
}

pub struct Algebra {
    field: Fp,
    labels: Vec<String>,
    table: Vec<u32>,
    unit: Vector,
    idempotents: Vec<Vector>,
    idempotent_labels: Vec<String>,
    radical: Vec<Vector>,
    arrows: Vec<Arrow>,
    /// Generator indices, applied right to left: `words[w][0]` is an
    /// idempotent and each later entry is an arrow multiplied on the left.
    words: Vec<Vec<usize>>,
    /// Column `k` expresses basis element `k` in the word basis.
    word_coords: Matrix,
    /// `Some((j, i))` when `e_j b e_i = b` for the basis element `b`.
    homogeneous: Vec<Option<(usize, usize)>>,
    loewy_length: usize,
    presentation: Option<Presentation>,
    projectives: OnceLock<Vec<ProjectiveData>>,
}

/// The indecomposable projective `A e_i` as a subspace of `A`.
#[derive(Clone, Debug)]
pub struct ProjectiveData {
    /// Columns are elements of `A e_i` in the basis of `A`.
    pub basis: Matrix,
    /// Action of each generator on that basis.
    pub gens: Vec<Matrix>,
}

/// The raw data an algebra is built from.
pub struct AlgebraParts {
    pub field: Fp,
    pub labels: Vec<String>,
    pub table: Vec<u32>,
    pub unit: Vector,
    pub idempotents: Vec<Vector>,
    pub idempotent_labels: Vec<String>,
    pub radical: Vec<Vector>,
    pub presentation: Option<Presentation>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra")
            .field("field", &self.field.characteristic())
            .field("dim", &self.dim())
            .field("labels", &self.labels)
            .field("idempotents", &self.idempotent_labels)
            .field(
                "arrows",
                &self.arrows.iter().map(|a| &a.label).collect::<Vec<_>>(),
            )
            .finish()
    }
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other)
            || (self.field == other.field
                && self.table == other.table
                && self.unit == other.unit
                && self.idempotents == other.idempotents
                && self.radical == other.radical)
    }
}

impl Eq for Algebra {}

impl Algebra {
    /// Validate the parts and derive generators. Checks unit, orthogonality
    /// and completeness of the idempotents, that the radical is a nilpotent
    /// two-sided ideal complementary to the span of the idempotents.
    pub fn from_parts(parts: AlgebraParts) -> Result<Arc<Algebra>> {
        let AlgebraParts {
            field,
            labels,
            table,
            unit,
            idempotents,
            idempotent_labels,
            radical,
            presentation,
        } = parts;
        let dim = labels.len();
        let bad = |s: String| Err(Error::InvalidAlgebra(s));
        if dim == 0 {
            return bad("the zero algebra is not supported".into());
        }
        if table.len() != dim * dim * dim || unit.len() != dim {
            return bad("structure table size does not match the basis".into());
        }
        if idempotents.is_empty() || idempotent_labels.len() != idempotents.len() {
            return bad("need a labelled, nonempty list of idempotents".into());
        }
        let p = field.characteristic();
        if table.iter().chain(&unit).any(|&x| x >= p) {
            return bad("entries must be reduced residues".into());
        }
        let mut alg = Algebra {
            field,
            labels,
            table,
            unit,
            idempotents,
            idempotent_labels,
            radical,
            arrows: Vec::new(),
            words: Vec::new(),
            word_coords: Matrix::zeros(field, 0, 0),
            homogeneous: Vec::new(),
            loewy_length: 0,
            presentation,
            projectives: OnceLock::new(),
        };
        alg.check_unit()?;
        alg.check_idempotents()?;
        alg.check_radical()?;
        alg.homogeneous = (0..dim).map(|b| alg.find_homogeneous(b)).collect();
        alg.derive_arrows();
        alg.derive_words()?;
        Ok(Arc::new(alg))
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn idempotents(&self) -> &[Vector] {
        &self.idempotents
    }

    pub fn idempotent_labels(&self) -> &[String] {
        &self.idempotent_labels
    }

    pub fn vertex_count(&self) -> usize {
        self.idempotents.len()
    }

    pub fn radical_basis(&self) -> &[Vector] {
        &self.radical
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn presentation(&self) -> Option<&Presentation> {
        self.presentation.as_ref()
    }

    /// Data of the indecomposable projectives `A e_i`, computed once.
    pub fn projective_data(&self) -> &[ProjectiveData] {
        self.projectives.get_or_init(|| {
            (0..self.vertex_count())
                .map(|i| {
                    let basis = self.right_mult_matrix(&self.idempotents[i]).column_basis();
                    let inv = basis.left_inverse().expect("column basis");
                    let gens = (0..self.generator_count())
                        .map(|g| {
                            inv.mul(&self.left_mult_matrix(self.generator(g)))
                                .mul(&basis)
                        })
                        .collect();
                    ProjectiveData { basis, gens }
                })
                .collect()
        })
    }

    /// Smallest `k` with `rad^k = 0`.
    pub fn loewy_length(&self) -> usize {
        self.loewy_length
    }

    /// Idempotents first, then arrows.
    pub fn generator_count(&self) -> usize {
        self.idempotents.len() + self.arrows.len()
    }

    pub fn generator(&self, g: usize) -> &Vector {
        let r = self.idempotents.len();
        if g < r {
            &self.idempotents[g]
        } else {
            &self.arrows[g - r].vector
        }
    }

    pub fn generator_labels(&self) -> Vec<String> {
        self.idempotent_labels
            .iter()
            .cloned()
            .chain(self.arrows.iter().map(|a| a.label.clone()))
            .collect()
    }

    pub fn generator_index(&self, label: &str) -> Option<usize> {
        self.generator_labels().iter().position(|l| l == label)
    }

    pub fn words(&self) -> &[Vec<usize>] {
        &self.words
    }

    pub fn word_coords(&self) -> &Matrix {
        &self.word_coords
    }

    pub fn homogeneous_component(&self, b: usize) -> Option<(usize, usize)> {
        self.homogeneous[b]
    }

    /// Structure constant: coefficient of `b_k` in `b_i * b_j`.
    #[inline]
    pub fn coeff(&self, i: usize, j: usize, k: usize) -> u32 {
        let d = self.dim();
        self.table[(i * d + j) * d + k]
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    /// `b_i * b_j` as a coordinate vector.
    pub fn basis_product(&self, i: usize, j: usize) -> &[u32] {
        let d = self.dim();
        &self.table[(i * d + j) * d..(i * d + j + 1) * d]
    }

    pub fn mul(&self, x: &[u32], y: &[u32]) -> Vector {
        let d = self.dim();
        let f = self.field;
        let mut out = vec![0u32; d];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                let c = f.mul(xi, yj);
                for (o, &t) in out.iter_mut().zip(self.basis_product(i, j)) {
                    if t != 0 {
                        *o = f.add(*o, f.mul(c, t));
                    }
                }
            }
        }
        out
    }

    /// Matrix of `y -> x y` on the basis.
    pub fn left_mult_matrix(&self, x: &[u32]) -> Matrix {
        let d = self.dim();
        let cols: Vec<Vector> = (0..d).map(|j| self.mul(x, &unit_vector(d, j))).collect();
        Matrix::from_columns(self.field, d, &cols)
    }

    /// Matrix of `y -> y x` on the basis.
    pub fn right_mult_matrix(&self, x: &[u32]) -> Matrix {
        let d = self.dim();
        let cols: Vec<Vector> = (0..d).map(|j| self.mul(&unit_vector(d, j), x)).collect();
        Matrix::from_columns(self.field, d, &cols)
    }

    /// Whether structure constants are associative. Quartic in the
    /// dimension, so only used by tests and input validation.
    pub fn is_associative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| {
            (0..d).all(|j| {
                let ij = self.basis_product(i, j).to_vec();
                (0..d).all(|k| {
                    let left = self.mul(&ij, &unit_vector(d, k));
                    let jk = self.basis_product(j, k).to_vec();
                    left == self.mul(&unit_vector(d, i), &jk)
                })
            })
        })
    }

    fn check_unit(&self) -> Result<()> {
        let d = self.dim();
        for b in 0..d {
            let e = unit_vector(d, b);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return Err(Error::InvalidAlgebra(format!(
                    "unit is not a two-sided identity on {}",
                    self.labels[b]
                )));
            }
        }
        Ok(())
    }

    fn check_idempotents(&self) -> Result<()> {
        let f = self.field;
        let d = self.dim();
        let mut sum = vec![0u32; d];
        for (i, ei) in self.idempotents.iter().enumerate() {
            if ei.len() != d {
                return Err(Error::InvalidAlgebra("idempotent of wrong length".into()));
            }
            for (j, ej) in self.idempotents.iter().enumerate() {
                let prod = self.mul(ei, ej);
                let ok = if i == j {
                    prod == *ei
                } else {
                    is_zero_vec(&prod)
                };
                if !ok {
                    return Err(Error::InvalidAlgebra(format!(
                        "idempotents {} and {} are not orthogonal idempotents",
                        self.idempotent_labels[i], self.idempotent_labels[j]
                    )));
                }
            }
            if is_zero_vec(ei) {
                return Err(Error::InvalidAlgebra("zero idempotent".into()));
            }
            sum = crate::exactlin::add_vec(f, &sum, ei);
        }
        if sum != self.unit {
            return Err(Error::InvalidAlgebra(
                "idempotents do not sum to the unit".into(),
            ));
        }
        Ok(())
    }

    fn check_radical(&mut self) -> Result<()> {
        let f = self.field;
        let d = self.dim();
        let r = self.radical.len();
        if self.radical.iter().any(|v| v.len() != d) {
            return Err(Error::InvalidAlgebra(
                "radical vector of wrong length".into(),
            ));
        }
        if Subspace::spanned_by(f, d, &self.radical).dim() != r {
            return Err(Error::InvalidAlgebra("radical basis is dependent".into()));
        }
        let mut all = self.radical.clone();
        all.extend(self.idempotents.iter().cloned());
        if r + self.idempotents.len() != d || Matrix::from_columns(f, d, &all).rank() != d {
            return Err(Error::InvalidAlgebra(
                "radical and idempotents do not span the algebra as a direct sum".into(),
            ));
        }
        // Two-sided ideal.
        let rad_space = Subspace::spanned_by(f, d, &self.radical);
        for b in 0..d {
            let e = unit_vector(d, b);
            for v in &self.radical {
                if !rad_space.contains(&self.mul(&e, v)) || !rad_space.contains(&self.mul(v, &e)) {
                    return Err(Error::InvalidAlgebra(
                        "radical is not a two-sided ideal".into(),
                    ));
                }
            }
        }
        // Nilpotency: rad^k = 0 for some k <= dim + 1.
        let mut power = self.radical.clone();
        let mut k = 1;
        while !power.is_empty() {
            if k > d + 1 {
                return Err(Error::InvalidAlgebra("radical is not nilpotent".into()));
            }
            let mut next = Subspace::new(f, d);
            let mut basis = Vec::new();
            for x in &power {
                for y in &self.radical {
                    let z = self.mul(x, y);
                    if next.insert(&z) {
                        basis.push(z);
                    }
                }
            }
            power = basis;
            k += 1;
        }
        // Algebra/rad is spanned by orthogonal idempotents, hence split
        // semisimple: the quotient has no radical of its own.
        self.loewy_length = k;
        Ok(())
    }

    fn find_homogeneous(&self, b: usize) -> Option<(usize, usize)> {
        let d = self.dim();
        let e = unit_vector(d, b);
        for (j, ej) in self.idempotents.iter().enumerate() {
            let left = self.mul(ej, &e);
            if left != e {
                continue;
            }
            for (i, ei) in self.idempotents.iter().enumerate() {
                if self.mul(&e, ei) == e {
                    return Some((j, i));
                }
            }
        }
        None
    }

    /// `e_j x e_i`.
    pub fn corner(&self, j: usize, x: &[u32], i: usize) -> Vector {
        self.mul(&self.mul(&self.idempotents[j], x), &self.idempotents[i])
    }

    fn derive_arrows(&mut self) {
        let n = self.idempotents.len();
        let mut rad2 = Vec::new();
        for x in &self.radical {
            for y in &self.radical {
                rad2.push(self.mul(x, y));
            }
        }
        let mut arrows = Vec::new();
        for j in 0..n {
            for i in 0..n {
                let mut span = Subspace::new(self.field, self.dim());
                for x in &rad2 {
                    span.insert(&self.corner(j, x, i));
                }
                let mut count = 0;
                for r in &self.radical {
                    let c = self.corner(j, r, i);
                    if !span.insert(&c) {
                        continue;
                    }
                    let nonzero: Vec<usize> = (0..c.len()).filter(|&k| c[k] != 0).collect();
                    let label = match nonzero.as_slice() {
                        [k] if c[*k] == 1 => self.labels[*k].clone(),
                        _ => format!("g{}_{}_{}", j + 1, i + 1, count),
                    };
                    count += 1;
                    arrows.push(Arrow {
                        label,
                        vector: c,
                        source: i,
                        target: j,
                    });
                }
            }
        }
        self.arrows = arrows;
    }

    fn derive_words(&mut self) -> Result<()> {
        let f = self.field;
        let d = self.dim();
        let r = self.idempotents.len();
        let mut words: Vec<Vec<usize>> = Vec::new();
        let mut vecs: Vec<Vector> = Vec::new();
        let mut span = Subspace::new(f, d);
        for i in 0..r {
            if span.insert(&self.idempotents[i]) {
                words.push(vec![i]);
                vecs.push(self.idempotents[i].clone());
            }
        }
        let mut next = 0;
        while next < words.len() && words.len() < d {
            for a in 0..self.arrows.len() {
                let prod = self.mul(&self.arrows[a].vector, &vecs[next]);
                if span.insert(&prod) {
                    let mut nw = words[next].clone();
                    nw.push(r + a);
                    words.push(nw);
                    vecs.push(prod);
                }
            }
            next += 1;
        }
        if words.len() != d {
            return Err(Error::InvalidAlgebra(
                "idempotents and radical generators do not generate the algebra".into(),
            ));
        }
        let w = Matrix::from_columns(f, d, &vecs);
        self.word_coords = w.inverse().expect("independent words");
        self.words = words;
        Ok(())
    }

    /// Rebuild the action of every basis element from generator matrices.
    pub fn basis_actions(&self, gens: &[Matrix]) -> Vec<Matrix> {
        self.combine_words(gens, false)
    }

    /// Like [`Algebra::basis_actions`] for a right action: `gens[g]` is the
    /// matrix of `m -> m g`, so products are reversed.
    pub fn basis_actions_right(&self, gens: &[Matrix]) -> Vec<Matrix> {
        self.combine_words(gens, true)
    }

    fn combine_words(&self, gens: &[Matrix], right: bool) -> Vec<Matrix> {
        let f = self.field;
        let n = gens.first().map_or(0, Matrix::rows);
        let word_mats = self.word_matrices(gens, n, right);
        (0..self.dim())
            .map(|k| {
                let mut acc = Matrix::zeros(f, n, n);
                for (w, wm) in word_mats.iter().enumerate() {
                    acc.add_scaled(wm, self.word_coords.get(w, k));
                }
                acc
            })
            .collect()
    }

    fn word_matrices(&self, gens: &[Matrix], n: usize, right: bool) -> Vec<Matrix> {
        let mut mats: Vec<Matrix> = Vec::with_capacity(self.words.len());
        for w in &self.words {
            if w.len() == 1 {
                mats.push(gens[w[0]].clone());
            } else {
                let parent = self.words[..mats.len()]
                    .iter()
                    .position(|p| p.as_slice() == &w[..w.len() - 1])
                    .expect("words are prefix closed");
                let g = &gens[*w.last().unwrap()];
                mats.push(if right {
                    mats[parent].mul(g)
                } else {
                    g.mul(&mats[parent])
                });
            }
        }
        debug_assert!(mats.iter().all(|m| m.rows() == n));
        mats
    }

    /// Action of an arbitrary element, given the basis actions.
    pub fn element_action(&self, basis_actions: &[Matrix], x: &[u32], n: usize) -> Matrix {
        let mut acc = Matrix::zeros(self.field, n, n);
        for (k, &c) in x.iter().enumerate() {
            acc.add_scaled(&basis_actions[k], c);
        }
        acc
    }

    /// Whether `gens` (one matrix per generator) define a representation.
    /// Returns a description of the first violated identity otherwise.
    pub fn check_representation(&self, gens: &[Matrix]) -> std::result::Result<(), String> {
        if gens.len() != self.generator_count() {
            return Err(format!(
                "expected {} generator matrices, got {}",
                self.generator_count(),
                gens.len()
            ));
        }
        let n = gens[0].rows();
        if gens.iter().any(|g| g.rows() != n || g.cols() != n) {
            return Err("generator matrices must all be square of the same size".into());
        }
        let labels = self.generator_labels();
        let basis = self.basis_actions(gens);
        let ident = self.element_action(&basis, &self.unit, n);
        if !ident.is_identity() && n > 0 {
            return Err("the unit does not act as the identity".into());
        }
        for g in 0..gens.len() {
            let rebuilt = self.element_action(&basis, self.generator(g), n);
            if rebuilt != gens[g] {
                return Err(format!(
                    "action of {} is inconsistent with the defining relations",
                    labels[g]
                ));
            }
        }
        let d = self.dim();
        for g in 0..gens.len() {
            for b in 0..d {
                let prod = self.mul(self.generator(g), &unit_vector(d, b));
                let lhs = gens[g].mul(&basis[b]);
                if lhs != self.element_action(&basis, &prod, n) {
                    let rel = describe_relation(self, g, b, &labels);
                    return Err(format!("relation {rel} is violated"));
                }
            }
        }
        Ok(())
    }
}

fn describe_relation(alg: &Algebra, g: usize, b: usize, labels: &[String]) -> String {
    if let Some(p) = &alg.presentation {
        if let Some(rel) = p.relations.first() {
            if alg.arrows.len() == p.quiver.arrows().len() {
                return format!("{:?} (at {}*{})", rel.text, labels[g], alg.labels[b]);
            }
        }
    }
    format!("{} * {}", labels[g], alg.labels[b])
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn dual_numbers() -> Arc<Algebra> {
        let q = Quiver::from_triples(1, &[(1, 1, "x")]).unwrap();
        build_bound_quiver_algebra(&q, &["x*x"], Fp::two()).unwrap()
    }

    #[test]
    fn arrows_of_dual_numbers() {
        let a = dual_numbers();
        assert_eq!(a.arrows().len(), 1);
        assert_eq!(a.arrows()[0].label, "x");
        assert_eq!(a.loewy_length(), 2);
        assert_eq!(a.generator_labels(), vec!["e1", "x"]);
    }

    #[test]
    fn representation_check_catches_bad_action() {
        let a = dual_numbers();
        let f = a.field();
        let good = vec![
            Matrix::identity(f, 2),
            Matrix::from_rows(f, &[vec![0, 0], vec![1, 0]]).unwrap(),
        ];
        assert!(a.check_representation(&good).is_ok());
        let bad = vec![
            Matrix::identity(f, 2),
            Matrix::from_rows(f, &[vec![1, 0], vec![0, 0]]).unwrap(),
        ];
        let err = a.check_representation(&bad).unwrap_err();
        assert!(err.contains("x*x"), "{err}");
    }
}
