use std::fmt;

use rand::Rng;

use super::Fp;
use crate::error::{Error, Result};

/// Dense matrix over a prime field, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Fp,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

/// A complement to a subspace `W` of `F^n`, with the projection onto `F^n / W`.
///
/// `section` has the complement basis as columns (standard basis vectors), and
/// `proj * w == 0` for every `w` in `W` while `proj * section == I`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub proj: Matrix,
    pub section: Matrix,
}

impl Matrix {
    pub fn zeros(field: Fp, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Fp, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_vec(field: Fp, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        let p = field.characteristic();
        if let Some(bad) = data.iter().find(|&&x| x >= p) {
            return Err(Error::DimensionMismatch(format!(
                "entry {bad} is not a residue mod {p}"
            )));
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    /// Build from signed rows, reducing every entry mod p.
    pub fn from_rows(field: Fp, rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let data = rows
            .iter()
            .flat_map(|row| row.iter().map(|&x| field.reduce(x)))
            .collect();
        Ok(Matrix {
            field,
            rows: r,
            cols: c,
            data,
        })
    }

    /// Build an `n x k` matrix whose columns are the given vectors.
    pub fn from_columns(field: Fp, n: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Matrix::zeros(field, n, columns.len());
        for (j, col) in columns.iter().enumerate() {
            debug_assert_eq!(col.len(), n);
            for (i, &x) in col.iter().enumerate() {
                m.data[i * m.cols + j] = x;
            }
        }
        m
    }

    pub fn random<R: Rng + ?Sized>(field: Fp, rows: usize, cols: usize, rng: &mut R) -> Self {
        let p = field.characteristic();
        let data = (0..rows * cols).map(|_| rng.gen_range(0..p)).collect();
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn random_invertible<R: Rng + ?Sized>(field: Fp, n: usize, rng: &mut R) -> Self {
        loop {
            let m = Matrix::random(field, n, n, rng);
            if m.rank() == n {
                return m;
            }
        }
    }

    #[inline]
    pub fn field(&self) -> Fp {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        debug_assert!(v < self.field.characteristic());
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == u32::from(i == j)))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(
            self.cols, other.rows,
            "product of {}x{} and {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let f = self.field;
        let p = f.characteristic() as u64;
        let n = other.cols;
        let mut out = Matrix::zeros(f, self.rows, n);
        // Accumulate in u64 and reduce once per row; entries are < 2^16 so
        // a few thousand products fit comfortably.
        let mut acc = vec![0u64; n];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            let mut pending = 0usize;
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let row = &other.data[k * n..(k + 1) * n];
                for (x, &b) in acc.iter_mut().zip(row) {
                    *x += a * b as u64;
                }
                pending += 1;
                if pending == 4096 {
                    acc.iter_mut().for_each(|x| *x %= p);
                    pending = 0;
                }
            }
            for (j, x) in acc.iter().enumerate() {
                out.data[i * n + j] = (x % p) as u32;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len());
        let p = self.field.characteristic() as u64;
        (0..self.rows)
            .map(|i| {
                let s: u64 = self
                    .row(i)
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| a as u64 * b as u64)
                    .sum();
                (s % p) as u32
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Matrix { data, ..*self }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        Matrix { data, ..*self }
    }

    pub fn scale(&self, c: u32) -> Matrix {
        let f = self.field;
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        Matrix { data, ..*self }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, other: &Matrix, c: u32) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if c == 0 {
            return;
        }
        let f = self.field;
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = f.add(*a, f.mul(b, c));
        }
    }

    pub fn pow(&self, mut e: usize) -> Matrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut r = Matrix::identity(self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        r
    }

    /// `self^k` for some `k >= rows`, computed by repeated squaring.
    /// Its kernel and image give the Fitting decomposition of `self`.
    pub fn stable_power(&self) -> Matrix {
        assert!(self.is_square());
        let mut m = self.clone();
        let mut k = 1usize;
        while k < self.rows {
            m = m.mul(&m);
            k *= 2;
        }
        m
    }

    pub fn is_nilpotent(&self) -> bool {
        self.rows == 0 || self.stable_power().is_zero()
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut m = Matrix::zeros(self.field, self.rows, cols);
        for i in 0..self.rows {
            m.data[i * cols..i * cols + self.cols].copy_from_slice(self.row(i));
            m.data[i * cols + self.cols..(i + 1) * cols].copy_from_slice(other.row(i));
        }
        m
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn block_diag(field: Fp, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Matrix::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            m.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    /// Overwrite the block starting at `(r0, c0)` with `b`.
    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        assert!(r0 + b.rows <= self.rows && c0 + b.cols <= self.cols);
        for i in 0..b.rows {
            let start = (r0 + i) * self.cols + c0;
            self.data[start..start + b.cols].copy_from_slice(b.row(i));
        }
    }

    pub fn block(&self, r0: usize, rows: usize, c0: usize, cols: usize) -> Matrix {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols);
        let mut m = Matrix::zeros(self.field, rows, cols);
        for i in 0..rows {
            let start = (r0 + i) * self.cols + c0;
            m.data[i * cols..(i + 1) * cols].copy_from_slice(&self.data[start..start + cols]);
        }
        m
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.rows, idx.len());
        for i in 0..self.rows {
            for (jj, &j) in idx.iter().enumerate() {
                m.data[i * idx.len() + jj] = self.get(i, j);
            }
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Matrix {
            field: self.field,
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    /// Kronecker product.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let f = self.field;
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut m = Matrix::zeros(f, rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        m.data[(i * other.rows + k) * cols + j * other.cols + l] =
                            f.mul(a, other.get(k, l));
                    }
                }
            }
        }
        m
    }

    /// Reduced row echelon form. Pivots are the leftmost nonzero entry of each
    /// row, taken from the topmost available row.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = m.rref_in_place(self.cols);
        Rref { matrix: m, pivots }
    }

    /// Row reduce in place, only choosing pivots among the first `pivot_cols`
    /// columns. Returns the pivot columns.
    fn rref_in_place(&mut self, pivot_cols: usize) -> Vec<usize> {
        let f = self.field;
        let p = f.characteristic();
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..pivot_cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.data[r * cols + c]);
            if inv != 1 {
                for j in c..cols {
                    self.data[r * cols + j] = f.mul(self.data[r * cols + j], inv);
                }
            }
            let (before, rest) = self.data.split_at_mut(r * cols);
            let (pivot_row, after) = rest.split_at_mut(cols);
            let eliminate = |row: &mut [u32]| {
                let a = row[c];
                if a == 0 {
                    return;
                }
                if p == 2 {
                    for (x, &y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                        *x ^= y;
                    }
                } else {
                    let k = p - a;
                    for (x, &y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                        *x = (*x + k * y) % p;
                    }
                }
            };
            before.chunks_mut(cols).for_each(eliminate);
            after.chunks_mut(cols).for_each(eliminate);
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        if self.rows <= self.cols {
            self.rref().pivots.len()
        } else {
            self.transpose().rref().pivots.len()
        }
    }

    /// Columns form a basis of the right null space, one basis vector per free
    /// column, in increasing order of that column.
    pub fn kernel_basis(&self) -> Matrix {
        let Rref { matrix, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zeros(self.field, self.cols, free.len());
        let f = self.field;
        for (j, &fc) in free.iter().enumerate() {
            k.set(fc, j, 1);
            for (r, &pc) in pivots.iter().enumerate() {
                k.set(pc, j, f.neg(matrix.get(r, fc)));
            }
        }
        k
    }

    /// One solution of `self * X = b`, or `None` when inconsistent. Free
    /// variables are set to zero.
    pub fn solve(&self, b: &Matrix) -> Result<Option<Matrix>> {
        if self.rows != b.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve: {} rows against {} rows",
                self.rows, b.rows
            )));
        }
        let mut aug = self.hstack(b);
        let pivots = aug.rref_in_place(self.cols);
        let rank = pivots.len();
        for r in rank..aug.rows {
            if (self.cols..aug.cols).any(|c| aug.get(r, c) != 0) {
                return Ok(None);
            }
        }
        let mut x = Matrix::zeros(self.field, self.cols, b.cols);
        for (r, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, aug.get(r, self.cols + j));
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = self.hstack(&Matrix::identity(self.field, n));
        let pivots = aug.rref_in_place(n);
        if pivots.len() < n {
            return None;
        }
        Some(aug.block(0, n, n, n))
    }

    /// Indices of a maximal independent set of columns (the pivot columns).
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.rref().pivots
    }

    /// A basis of the column space, chosen among the columns of `self`.
    pub fn column_basis(&self) -> Matrix {
        self.select_columns(&self.pivot_columns())
    }

    /// A left inverse `L` with `L * self = I`, for a matrix of full column rank.
    pub fn left_inverse(&self) -> Option<Matrix> {
        let rows = self.transpose().pivot_columns();
        if rows.len() != self.cols {
            return None;
        }
        let inv = self.select_rows(&rows).inverse()?;
        let mut l = Matrix::zeros(self.field, self.cols, self.rows);
        for (jj, &j) in rows.iter().enumerate() {
            for i in 0..self.cols {
                l.set(i, j, inv.get(i, jj));
            }
        }
        Some(l)
    }

    /// Complement of the column space of `self` spanned by standard basis
    /// vectors, with the projection onto the quotient.
    pub fn quotient(&self) -> Quotient {
        let f = self.field;
        let n = self.rows;
        let basis = self.column_basis();
        let dep_rows = basis.transpose().pivot_columns();
        let free: Vec<usize> = (0..n).filter(|i| !dep_rows.contains(i)).collect();
        let mut section = Matrix::zeros(f, n, free.len());
        for (j, &i) in free.iter().enumerate() {
            section.set(i, j, 1);
        }
        // v = W x + sum y_c e_c with x = W_R^{-1} v_R, so y = v_F - W_F W_R^{-1} v_R.
        let mut proj = Matrix::zeros(f, free.len(), n);
        for (j, &i) in free.iter().enumerate() {
            proj.set(j, i, 1);
        }
        if basis.cols > 0 {
            let wr_inv = basis
                .select_rows(&dep_rows)
                .inverse()
                .expect("pivot rows of a basis are independent");
            let corr = basis.select_rows(&free).mul(&wr_inv);
            for j in 0..free.len() {
                for (jj, &i) in dep_rows.iter().enumerate() {
                    proj.set(j, i, f.neg(corr.get(j, jj)));
                }
            }
        }
        Quotient { proj, section }
    }

    /// Whether the column spaces of `self` and `other` coincide.
    pub fn same_column_space(&self, other: &Matrix) -> bool {
        let r = self.rank();
        r == other.rank() && self.hstack(other).rank() == r
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "Matrix {}x{} over F_{}",
            self.rows,
            self.cols,
            self.field.characteristic()
        )?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f2() -> Fp {
        Fp::two()
    }

    #[test]
    fn rank_trivial_cases() {
        assert_eq!(Matrix::identity(f2(), 2).rank(), 2);
        assert_eq!(Matrix::from_rows(f2(), &[vec![1, 1]]).unwrap().rank(), 1);
        assert_eq!(Matrix::zeros(f2(), 3, 3).rank(), 0);
    }

    #[test]
    fn kernel_trivial_cases() {
        let k = Matrix::from_rows(f2(), &[vec![1, 1]])
            .unwrap()
            .kernel_basis();
        assert_eq!(k.cols(), 1);
        assert_eq!(k.column(0), vec![1, 1]);
        assert_eq!(Matrix::identity(f2(), 3).kernel_basis().cols(), 0);
        let z = Matrix::zeros(f2(), 2, 2).kernel_basis();
        assert_eq!(z, Matrix::identity(f2(), 2));
    }

    #[test]
    fn solve_trivial_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let b = Matrix::random(f2(), 3, 2, &mut rng);
        assert_eq!(Matrix::identity(f2(), 3).solve(&b).unwrap(), Some(b));

        let nz = Matrix::from_rows(f2(), &[vec![1], vec![0]]).unwrap();
        assert_eq!(Matrix::zeros(f2(), 2, 2).solve(&nz).unwrap(), None);

        let a = Matrix::from_rows(f2(), &[vec![1, 1]]).unwrap();
        let x = a.solve(&Matrix::zeros(f2(), 1, 1)).unwrap().unwrap();
        assert_eq!(x.column(0), vec![0, 0]);
    }

    #[test]
    fn solve_dimension_mismatch() {
        let a = Matrix::identity(f2(), 2);
        assert!(a.solve(&Matrix::zeros(f2(), 3, 1)).is_err());
    }

    #[test]
    fn quotient_projection_kills_subspace() {
        let f = Fp::new(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let w = Matrix::random(f, 6, 3, &mut rng);
            let q = w.quotient();
            assert!(q.proj.mul(&w).is_zero());
            assert!(q.proj.mul(&q.section).is_identity());
            assert_eq!(q.section.cols() + w.rank(), 6);
        }
    }

    #[test]
    fn left_inverse_works() {
        let f = Fp::new(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let w = loop {
            let w = Matrix::random(f, 5, 3, &mut rng);
            if w.rank() == 3 {
                break w;
            }
        };
        assert!(w.left_inverse().unwrap().mul(&w).is_identity());
    }

    fn arb_matrix() -> impl Strategy<Value = Matrix> {
        (
            prop::sample::select(vec![2u32, 3, 5, 7]),
            0usize..7,
            0usize..7,
            any::<u64>(),
        )
            .prop_map(|(p, r, c, seed)| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                Matrix::random(Fp::new(p).unwrap(), r, c, &mut rng)
            })
    }

    proptest! {
        #[test]
        fn rank_of_transpose(m in arb_matrix()) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn rank_nullity(m in arb_matrix()) {
            let k = m.kernel_basis();
            prop_assert_eq!(m.cols(), m.rank() + k.cols());
            prop_assert!(m.mul(&k).is_zero());
        }

        #[test]
        fn solve_is_exact(m in arb_matrix(), seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x0 = Matrix::random(m.field(), m.cols(), 2, &mut rng);
            let b = m.mul(&x0);
            let x = m.solve(&b).unwrap().expect("consistent by construction");
            prop_assert_eq!(m.mul(&x), b);
        }
    }
}
