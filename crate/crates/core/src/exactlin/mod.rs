//! Exact dense linear algebra over prime fields.
//!
//! Everything above this layer (algebras, modules, tensor products) reduces
//! to rank, kernel and solve computations on [`Matrix`]. Pivoting is
//! deterministic: leftmost nonzero column, topmost available row.

mod field;
mod matrix;
pub mod rational;

pub use field::{Fp, MAX_CHARACTERISTIC};
pub use matrix::{Matrix, Quotient, Rref};

/// Dense vector of residues.
pub type Vector = Vec<u32>;

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

pub fn add_vec(f: Fp, a: &[u32], b: &[u32]) -> Vector {
    a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()
}

pub fn sub_vec(f: Fp, a: &[u32], b: &[u32]) -> Vector {
    a.iter().zip(b).map(|(&x, &y)| f.sub(x, y)).collect()
}

pub fn scale_vec(f: Fp, a: &[u32], c: u32) -> Vector {
    a.iter().map(|&x| f.mul(x, c)).collect()
}

pub fn is_zero_vec(a: &[u32]) -> bool {
    a.iter().all(|&x| x == 0)
}

/// Rank of a set of vectors.
pub fn span_rank(f: Fp, n: usize, vs: &[Vector]) -> usize {
    Matrix::from_columns(f, n, vs).rank()
}

/// A subspace of `F^n` kept in echelon form, for incremental membership tests.
#[derive(Clone, Debug)]
pub struct Subspace {
    field: Fp,
    n: usize,
    rows: Vec<(usize, Vector)>,
}

impl Subspace {
    pub fn new(field: Fp, n: usize) -> Self {
        Subspace {
            field,
            n,
            rows: Vec::new(),
        }
    }

    pub fn spanned_by<'a>(field: Fp, n: usize, vs: impl IntoIterator<Item = &'a Vector>) -> Self {
        let mut s = Subspace::new(field, n);
        for v in vs {
            s.insert(v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    /// Residue of `v` after eliminating all pivot coordinates.
    pub fn reduce(&self, v: &[u32]) -> Vector {
        let f = self.field;
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            let c = v[*p];
            if c != 0 {
                let k = f.neg(c);
                for (x, &y) in v.iter_mut().zip(row) {
                    if y != 0 {
                        *x = f.add(*x, f.mul(k, y));
                    }
                }
            }
        }
        v
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.iter().any(|(p, _)| *p == col)
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.n);
        let r = self.reduce(v);
        let Some(p) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = self.field.inv(r[p]);
        let r = scale_vec(self.field, &r, inv);
        self.rows.push((p, r));
        true
    }
}
