//! Derived algebras: opposite, triangular matrix algebras, tensor products.

use std::sync::Arc;

use super::quiver::{Path, Relation};
use super::{build_bound_quiver_algebra, Algebra, AlgebraParts, Bimodule, Presentation, Quiver};
use crate::error::{Error, Result};
use crate::exactlin::{add_vec, unit_vector, Fp, Matrix, Vector};

fn embed(v: &[u32], offset: usize, total: usize) -> Vector {
    let mut out = vec![0u32; total];
    out[offset..offset + v.len()].copy_from_slice(v);
    out
}

fn kron_vec(f: Fp, a: &[u32], b: &[u32]) -> Vector {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for &x in a {
        for &y in b {
            out.push(f.mul(x, y));
        }
    }
    out
}

/// The opposite algebra: `x . y = y x`.
pub fn opposite(a: &Algebra) -> Arc<Algebra> {
    let d = a.dim();
    let mut table = vec![0u32; d * d * d];
    for i in 0..d {
        for j in 0..d {
            table[(i * d + j) * d..(i * d + j + 1) * d].copy_from_slice(a.basis_product(j, i));
        }
    }
    let presentation = a.presentation().map(|p| {
        let quiver = p.quiver.opposite();
        let reverse = |path: &Path| match path {
            Path::Trivial(v) => Path::Trivial(*v),
            Path::Arrows(v) => Path::Arrows(v.iter().rev().copied().collect()),
        };
        let relations = p
            .relations
            .iter()
            .map(|r| {
                let terms: Vec<(i64, Path)> =
                    r.terms.iter().map(|(c, t)| (*c, reverse(t))).collect();
                Relation {
                    text: relation_text(&terms, &quiver),
                    terms,
                }
            })
            .collect();
        Presentation {
            paths: p.paths.iter().map(reverse).collect(),
            quiver,
            relations,
        }
    });
    Algebra::from_parts(AlgebraParts {
        field: a.field(),
        labels: a.labels().to_vec(),
        table,
        unit: a.unit().clone(),
        idempotents: a.idempotents().to_vec(),
        idempotent_labels: a.idempotent_labels().to_vec(),
        radical: a.radical_basis().to_vec(),
        presentation,
    })
    .expect("the opposite of a valid algebra is valid")
}

fn relation_text(terms: &[(i64, Path)], q: &Quiver) -> String {
    let mut s = String::new();
    for (k, (c, p)) in terms.iter().enumerate() {
        let (sign, mag) = if *c < 0 { ("-", -c) } else { ("+", *c) };
        if k == 0 {
            if sign == "-" {
                s.push('-');
            }
        } else {
            s.push_str(&format!(" {sign} "));
        }
        if mag != 1 {
            s.push_str(&format!("{mag}*"));
        }
        s.push_str(&p.label(q));
    }
    s
}

/// The triangular matrix algebra `(T 0; M U)` for a `U`-`T`-bimodule `M`.
///
/// Basis: that of `T`, then `U`, then `M`. Idempotents are those of `T`
/// followed by those of `U`; the radical is `rad T + rad U + M`.
pub fn triangular(t: &Arc<Algebra>, u: &Arc<Algebra>, m: &Bimodule) -> Result<Arc<Algebra>> {
    if **m.left_algebra() != **u || **m.right_algebra() != **t {
        return Err(Error::AlgebraMismatch(
            "algebras: the bimodule must be a U-T-bimodule",
        ));
    }
    m.check_axioms().map_err(Error::InvalidBimodule)?;
    let f = t.field();
    let (dt, du, dm) = (t.dim(), u.dim(), m.dim());
    let d = dt + du + dm;
    let mut table = vec![0u32; d * d * d];
    let mut put = |i: usize, j: usize, v: &[u32], offset: usize| {
        let base = (i * d + j) * d + offset;
        table[base..base + v.len()].copy_from_slice(v);
    };
    for i in 0..dt {
        for j in 0..dt {
            put(i, j, t.basis_product(i, j), 0);
        }
    }
    for i in 0..du {
        for j in 0..du {
            put(dt + i, dt + j, u.basis_product(i, j), dt);
        }
    }
    for k in 0..dm {
        for j in 0..dt {
            // m_k * t_j
            put(dt + du + k, j, &m.right_action()[j].column(k), dt + du);
        }
        for i in 0..du {
            // u_i * m_k
            put(dt + i, dt + du + k, &m.left_action()[i].column(k), dt + du);
        }
    }
    let unit = add_vec(f, &embed(t.unit(), 0, d), &embed(u.unit(), dt, d));
    let mut idempotents: Vec<Vector> = t.idempotents().iter().map(|e| embed(e, 0, d)).collect();
    idempotents.extend(u.idempotents().iter().map(|e| embed(e, dt, d)));
    let mut radical: Vec<Vector> = t.radical_basis().iter().map(|r| embed(r, 0, d)).collect();
    radical.extend(u.radical_basis().iter().map(|r| embed(r, dt, d)));
    radical.extend((0..dm).map(|k| unit_vector(d, dt + du + k)));
    let mut labels: Vec<String> = t.labels().iter().map(|l| format!("t:{l}")).collect();
    labels.extend(u.labels().iter().map(|l| format!("u:{l}")));
    labels.extend((0..dm).map(|k| format!("m:{}", k + 1)));
    let mut idempotent_labels: Vec<String> = t
        .idempotent_labels()
        .iter()
        .map(|l| format!("t:{l}"))
        .collect();
    idempotent_labels.extend(u.idempotent_labels().iter().map(|l| format!("u:{l}")));
    Algebra::from_parts(AlgebraParts {
        field: f,
        labels,
        table,
        unit,
        idempotents,
        idempotent_labels,
        radical,
        presentation: None,
    })
}

/// `A (x) B` over the base field, basis `a_i (x) b_j` at index `i * dim B + j`.
pub fn tensor_product(a: &Algebra, b: &Algebra) -> Result<Arc<Algebra>> {
    if a.field() != b.field() {
        return Err(Error::AlgebraMismatch("fields"));
    }
    let f = a.field();
    let (da, db) = (a.dim(), b.dim());
    let d = da * db;
    let mut table = vec![0u32; d * d * d];
    for i in 0..da {
        for k in 0..da {
            let ak = a.basis_product(i, k);
            if ak.iter().all(|&x| x == 0) {
                continue;
            }
            for j in 0..db {
                for l in 0..db {
                    let bl = b.basis_product(j, l);
                    let v = kron_vec(f, ak, bl);
                    let base = ((i * db + j) * d + (k * db + l)) * d;
                    table[base..base + d].copy_from_slice(&v);
                }
            }
        }
    }
    let mut idempotents = Vec::new();
    let mut idempotent_labels = Vec::new();
    for (ea, la) in a.idempotents().iter().zip(a.idempotent_labels()) {
        for (eb, lb) in b.idempotents().iter().zip(b.idempotent_labels()) {
            idempotents.push(kron_vec(f, ea, eb));
            idempotent_labels.push(format!("{la}.{lb}"));
        }
    }
    let mut radical = Vec::new();
    for r in a.radical_basis() {
        for j in 0..db {
            radical.push(kron_vec(f, r, &unit_vector(db, j)));
        }
    }
    for e in a.idempotents() {
        for r in b.radical_basis() {
            radical.push(kron_vec(f, e, r));
        }
    }
    let mut labels = Vec::with_capacity(d);
    for la in a.labels() {
        for lb in b.labels() {
            labels.push(format!("{la}.{lb}"));
        }
    }
    Algebra::from_parts(AlgebraParts {
        field: f,
        labels,
        table,
        unit: kron_vec(f, a.unit(), b.unit()),
        idempotents,
        idempotent_labels,
        radical,
        presentation: None,
    })
}

/// `T (x) kQ` for a quiver whose underlying graph is of type A.
pub fn tensor_with_path_algebra(t: &Algebra, q: &Quiver) -> Result<Arc<Algebra>> {
    if !q.is_linear_type_a() {
        return Err(Error::InvalidQuiver(
            "tensoring is only supported with linear quivers of type A".into(),
        ));
    }
    let kq = build_bound_quiver_algebra::<&str>(q, &[], t.field())?;
    tensor_product(t, &kq)
}

/// Matrix whose column `i` is the unit vector `e_{perm[i]}`.
pub fn permutation_matrix(f: Fp, perm: &[usize]) -> Matrix {
    let n = perm.len();
    let mut m = Matrix::zeros(f, n, n);
    for (i, &p) in perm.iter().enumerate() {
        m.set(p, i, 1);
    }
    m
}

/// Whether the linear map `map` (column `i` = image of `a`'s basis element
/// `i` in `b`'s basis) is a unital algebra isomorphism. A certificate check,
/// not a search.
pub fn algebras_isomorphic_as_presented(a: &Algebra, b: &Algebra, map: &Matrix) -> Result<bool> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(format!(
            "algebras of dimension {} and {}",
            a.dim(),
            b.dim()
        )));
    }
    if map.rows() != b.dim() || map.cols() != a.dim() {
        return Err(Error::DimensionMismatch(format!(
            "basis map is {}x{}, expected {}x{}",
            map.rows(),
            map.cols(),
            b.dim(),
            a.dim()
        )));
    }
    if a.field() != b.field() || map.rank() != a.dim() {
        return Ok(false);
    }
    if map.mul_vec(a.unit()) != *b.unit() {
        return Ok(false);
    }
    let d = a.dim();
    let images = map.columns();
    for i in 0..d {
        for j in 0..d {
            let lhs = map.mul_vec(a.basis_product(i, j));
            if lhs != b.mul(&images[i], &images[j]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Fp {
        Fp::two()
    }

    fn dual() -> Arc<Algebra> {
        let q = Quiver::from_triples(1, &[(1, 1, "x")]).unwrap();
        build_bound_quiver_algebra(&q, &["x*x"], f2()).unwrap()
    }

    fn a2(src: usize, tgt: usize) -> Arc<Algebra> {
        let q = Quiver::from_triples(2, &[(src, tgt, "a")]).unwrap();
        build_bound_quiver_algebra::<&str>(&q, &[], f2()).unwrap()
    }

    #[test]
    fn opposite_of_a2_is_reversed_quiver() {
        let op = opposite(&a2(1, 2));
        let rev = a2(2, 1);
        assert_eq!(op.dim(), 3);
        let id = Matrix::identity(f2(), 3);
        assert!(algebras_isomorphic_as_presented(&op, &rev, &id).unwrap());
        assert_eq!(op.presentation().unwrap().quiver.arrows()[0].source, 2);
    }

    #[test]
    fn opposite_is_an_involution() {
        let a = a2(1, 2);
        assert_eq!(opposite(&opposite(&a)).table(), a.table());
        let d = dual();
        assert_eq!(opposite(&d).table(), d.table());
    }

    #[test]
    fn identity_and_non_unital_maps() {
        let a = a2(1, 2);
        let id = Matrix::identity(f2(), 3);
        assert!(algebras_isomorphic_as_presented(&a, &a, &id).unwrap());
        // Swapping e1 and e2 sends the unit to itself but breaks products.
        let swap = permutation_matrix(f2(), &[1, 0, 2]);
        assert!(!algebras_isomorphic_as_presented(&a, &a, &swap).unwrap());
        // Sending e1 to a: the unit goes to a non-unit.
        let bad = permutation_matrix(f2(), &[2, 1, 0]);
        assert!(!algebras_isomorphic_as_presented(&a, &a, &bad).unwrap());
        assert!(algebras_isomorphic_as_presented(&a, &dual(), &id).is_err());
    }

    #[test]
    fn triangular_dimensions_and_subalgebras() {
        let t = dual();
        let m = Bimodule::regular(&t);
        let l = triangular(&t, &t, &m).unwrap();
        assert_eq!(l.dim(), 6);
        assert_eq!(l.vertex_count(), 2);
        assert!(l.is_associative());
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(&l.basis_product(i, j)[..2], t.basis_product(i, j));
                assert_eq!(&l.basis_product(2 + i, 2 + j)[2..4], t.basis_product(i, j));
            }
        }
    }

    #[test]
    fn triangular_rejects_corrupted_bimodule() {
        let t = dual();
        let m = Bimodule::regular(&t);
        let mut right = m.right_action().to_vec();
        right[1] = Matrix::identity(f2(), 2);
        let bad = Bimodule::from_basis_actions_unchecked(
            t.clone(),
            t.clone(),
            m.left_action().to_vec(),
            right,
        );
        assert!(matches!(
            triangular(&t, &t, &bad),
            Err(Error::InvalidBimodule(_))
        ));
    }

    #[test]
    fn tensor_with_a2_is_triangular() {
        let t = dual();
        let q = Quiver::from_triples(2, &[(1, 2, "a")]).unwrap();
        let ta = tensor_with_path_algebra(&t, &q).unwrap();
        assert_eq!(ta.dim(), 6);
        let tri = triangular(&t, &t, &Bimodule::regular(&t)).unwrap();
        // t (x) e1 -> T block, t (x) e2 -> U block, t (x) a -> M block.
        let mut perm = vec![0; 6];
        for i in 0..2 {
            perm[i * 3] = i;
            perm[i * 3 + 1] = 2 + i;
            perm[i * 3 + 2] = 4 + i;
        }
        let map = permutation_matrix(f2(), &perm);
        assert!(algebras_isomorphic_as_presented(&ta, &tri, &map).unwrap());
    }

    #[test]
    fn tensor_with_point_is_identity() {
        let t = dual();
        let q = Quiver::new(1, vec![]).unwrap();
        let tp = tensor_with_path_algebra(&t, &q).unwrap();
        let id = Matrix::identity(f2(), 2);
        assert!(algebras_isomorphic_as_presented(&tp, &t, &id).unwrap());
    }

    #[test]
    fn tensor_rejects_non_linear_quivers() {
        let t = dual();
        let q = Quiver::from_triples(3, &[(1, 2, "a"), (1, 3, "b")]).unwrap();
        assert!(tensor_with_path_algebra(&t, &q).is_err());
    }
}
