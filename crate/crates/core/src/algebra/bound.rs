//! Quotients of path algebras by admissible ideals.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::quiver::{paths_of_length, Path, Quiver, Relation};
use super::{Algebra, AlgebraParts, Presentation};
use crate::error::{Error, Result};
use crate::exactlin::{unit_vector, Fp, Subspace, Vector};

/// Longest path length considered when proving admissibility.
const MAX_PATH_LENGTH: usize = 24;
/// Largest number of paths enumerated while proving admissibility.
const MAX_PATHS: usize = 6000;

type Uniform = Vec<(u32, Path)>;

/// Paths of length `< limit`, sorted ascending, with an index.
struct PathSpace {
    paths: Vec<Path>,
    index: HashMap<Path, usize>,
}

impl PathSpace {
    fn new(q: &Quiver, limit: usize) -> Result<PathSpace> {
        let mut paths = Vec::new();
        for len in 0..limit {
            paths.extend(paths_of_length(q, len));
            if paths.len() > MAX_PATHS {
                return Err(Error::InvalidPresentation(format!(
                    "more than {MAX_PATHS} paths of length below {limit}; \
                     relations do not cut the algebra down quickly enough"
                )));
            }
        }
        paths.sort_by_cached_key(|p| p.sort_key(q));
        let index = paths
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        Ok(PathSpace { paths, index })
    }

    fn len(&self) -> usize {
        self.paths.len()
    }

    /// Coordinates with larger paths first, so elimination pivots on them.
    fn column(&self, p: &Path) -> Option<usize> {
        self.index.get(p).map(|&i| self.paths.len() - 1 - i)
    }

    fn path_at_column(&self, c: usize) -> &Path {
        &self.paths[self.paths.len() - 1 - c]
    }
}

/// Split relations into components with a fixed source and target; reject
/// components that are not in the square of the arrow ideal.
fn uniform_components(q: &Quiver, relations: &[Relation], f: Fp) -> Result<Vec<Uniform>> {
    let mut out = Vec::new();
    for rel in relations {
        let mut combined: BTreeMap<(usize, usize), BTreeMap<Path, u32>> = BTreeMap::new();
        for (c, p) in &rel.terms {
            let slot = combined
                .entry((p.source(q), p.target(q)))
                .or_default()
                .entry(p.clone())
                .or_insert(0);
            *slot = f.add(*slot, f.reduce(*c));
        }
        for terms in combined.into_values() {
            let terms: Uniform = terms
                .into_iter()
                .filter(|(_, c)| *c != 0)
                .map(|(p, c)| (c, p))
                .collect();
            if let Some((_, low)) = terms.iter().find(|(_, p)| p.len() <= 1) {
                return Err(Error::InvalidPresentation(format!(
                    "relation {:?} has a component of degree {}",
                    rel.text,
                    low.len()
                )));
            }
            if !terms.is_empty() {
                out.push(terms);
            }
        }
    }
    Ok(out)
}

/// All products `p * rho * q` whose terms stay below the length `limit`
/// (or are truncated to it when `truncate` is set), as coordinate vectors.
fn ideal_elements(
    q: &Quiver,
    f: Fp,
    rels: &[Uniform],
    space: &PathSpace,
    limit: usize,
    truncate: bool,
) -> Vec<Vector> {
    let by_len: Vec<Vec<Path>> = (0..limit).map(|l| paths_of_length(q, l)).collect();
    let mut out = Vec::new();
    for rho in rels {
        let min = rho.iter().map(|(_, p)| p.len()).min().unwrap();
        let max = rho.iter().map(|(_, p)| p.len()).max().unwrap();
        let needed = if truncate { min } else { max };
        if needed >= limit {
            continue;
        }
        let src = rho[0].1.source(q);
        let tgt = rho[0].1.target(q);
        for lq in 0..limit - needed {
            for lp in 0..limit - needed - lq {
                for right in by_len[lq].iter().filter(|r| r.target(q) == src) {
                    for left in by_len[lp].iter().filter(|l| l.source(q) == tgt) {
                        let mut v = vec![0u32; space.len()];
                        for (c, path) in rho {
                            let full = path
                                .compose_after(right, q)
                                .and_then(|x| left.compose_after(&x, q))
                                .expect("endpoints match");
                            if let Some(col) = space.column(&full) {
                                v[col] = f.add(v[col], *c);
                            }
                        }
                        out.push(v);
                    }
                }
            }
        }
    }
    out
}

/// Smallest `m` such that every path of length `m` lies in the ideal,
/// proved by exhibiting it in the span of products `p rho q`.
fn nilpotency_index(q: &Quiver, f: Fp, rels: &[Uniform]) -> Result<usize> {
    for limit in 3..=MAX_PATH_LENGTH + 1 {
        let space = PathSpace::new(q, limit)?;
        let span = Subspace::spanned_by(
            f,
            space.len(),
            &ideal_elements(q, f, rels, &space, limit, false),
        );
        for m in 1..limit {
            let all_in = paths_of_length(q, m).iter().all(|p| {
                let col = space.column(p).expect("path in range");
                span.contains(&unit_vector(space.len(), col))
            });
            if all_in {
                return Ok(m);
            }
        }
    }
    Err(Error::InvalidPresentation(format!(
        "arrow ideal is not nilpotent modulo the relations (checked paths up to length {MAX_PATH_LENGTH})"
    )))
}

/// The algebra `kQ / I` with `I` generated by the given relations.
///
/// Relations are written in product notation (`b*a` traverses `a` first,
/// `e1` is a trivial path). The basis consists of the paths that are not
/// leading terms of the ideal, with paths ordered by length and then by arrow
/// labels; larger paths are eliminated first.
pub fn build_bound_quiver_algebra<S: AsRef<str>>(
    q: &Quiver,
    relations: &[S],
    field: Fp,
) -> Result<Arc<Algebra>> {
    let parsed = relations
        .iter()
        .map(|r| Relation::parse(r.as_ref(), q))
        .collect::<Result<Vec<_>>>()?;
    let rels = uniform_components(q, &parsed, field)?;
    let m = nilpotency_index(q, field, &rels)?;

    // Everything of length >= m is in the ideal; work modulo it.
    let space = PathSpace::new(q, m)?;
    let ideal = Subspace::spanned_by(
        field,
        space.len(),
        &ideal_elements(q, field, &rels, &space, m, true),
    );
    let basis_cols: Vec<usize> = (0..space.len())
        .rev()
        .filter(|&c| !ideal.is_pivot(c))
        .collect();
    let basis_paths: Vec<Path> = basis_cols
        .iter()
        .map(|&c| space.path_at_column(c).clone())
        .collect();
    let dim = basis_paths.len();
    let coord: HashMap<usize, usize> = basis_cols
        .iter()
        .enumerate()
        .map(|(i, &c)| (c, i))
        .collect();

    let reduce_to_basis = |p: &Path| -> Vector {
        let mut out = vec![0u32; dim];
        let Some(col) = space.column(p) else {
            return out;
        };
        let r = ideal.reduce(&unit_vector(space.len(), col));
        for (c, &x) in r.iter().enumerate() {
            if x != 0 {
                out[*coord.get(&c).expect("reduced vectors live on normal paths")] = x;
            }
        }
        out
    };

    let mut table = vec![0u32; dim * dim * dim];
    for (i, pi) in basis_paths.iter().enumerate() {
        for (j, pj) in basis_paths.iter().enumerate() {
            if let Some(prod) = pi.compose_after(pj, q) {
                let v = reduce_to_basis(&prod);
                table[(i * dim + j) * dim..(i * dim + j + 1) * dim].copy_from_slice(&v);
            }
        }
    }
    let n = q.vertex_count();
    let idempotents: Vec<Vector> = (1..=n)
        .map(|v| {
            let i = basis_paths
                .iter()
                .position(|p| *p == Path::Trivial(v))
                .expect("trivial paths survive");
            unit_vector(dim, i)
        })
        .collect();
    let mut unit = vec![0u32; dim];
    for e in &idempotents {
        unit = crate::exactlin::add_vec(field, &unit, e);
    }
    let radical = (0..dim)
        .filter(|&i| !basis_paths[i].is_empty())
        .map(|i| unit_vector(dim, i))
        .collect();
    Algebra::from_parts(AlgebraParts {
        field,
        labels: basis_paths.iter().map(|p| p.label(q)).collect(),
        table,
        unit,
        idempotents,
        idempotent_labels: (1..=n).map(|v| format!("e{v}")).collect(),
        radical,
        presentation: Some(Presentation {
            quiver: q.clone(),
            relations: parsed,
            paths: basis_paths,
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Fp {
        Fp::two()
    }

    #[test]
    fn dual_numbers() {
        let q = Quiver::from_triples(1, &[(1, 1, "x")]).unwrap();
        let a = build_bound_quiver_algebra(&q, &["x*x"], f2()).unwrap();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.labels(), &["e1", "x"]);
    }

    #[test]
    fn a2_path_algebra() {
        let q = Quiver::from_triples(2, &[(1, 2, "a")]).unwrap();
        let a = build_bound_quiver_algebra::<&str>(&q, &[], f2()).unwrap();
        assert_eq!(a.dim(), 3);
        assert_eq!(a.labels(), &["e1", "e2", "a"]);
        // a * e1 = a, e1 * a = 0.
        assert_eq!(a.basis_product(2, 0), &[0, 0, 1]);
        assert_eq!(a.basis_product(0, 2), &[0, 0, 0]);
    }

    #[test]
    fn degree_zero_component_rejected() {
        let q = Quiver::from_triples(1, &[(1, 1, "x")]).unwrap();
        let err = build_bound_quiver_algebra(&q, &["x - e1"], f2()).unwrap_err();
        assert!(matches!(err, Error::InvalidPresentation(ref s) if s.contains("x - e1")));
    }

    #[test]
    fn non_nilpotent_rejected() {
        let q = Quiver::from_triples(1, &[(1, 1, "x")]).unwrap();
        assert!(build_bound_quiver_algebra::<&str>(&q, &[], f2()).is_err());
        // x^2 = x^3 makes x^2 idempotent: not admissible although the
        // truncated ideal contains every long path.
        assert!(build_bound_quiver_algebra(&q, &["x*x - x*x*x"], f2()).is_err());
    }

    #[test]
    fn truncated_polynomials() {
        let q = Quiver::from_triples(1, &[(1, 1, "x")]).unwrap();
        let a = build_bound_quiver_algebra(&q, &["x*x*x"], Fp::new(3).unwrap()).unwrap();
        assert_eq!(a.dim(), 3);
        assert_eq!(a.loewy_length(), 3);
    }

    #[test]
    fn commutative_square() {
        let q =
            Quiver::from_triples(4, &[(1, 2, "a"), (2, 4, "b"), (1, 3, "c"), (3, 4, "d")]).unwrap();
        let a = build_bound_quiver_algebra(&q, &["b*a - d*c"], f2()).unwrap();
        assert_eq!(a.dim(), 9);
        assert!(a.is_associative());
        let zero = build_bound_quiver_algebra(&q, &["b*a", "d*c"], f2()).unwrap();
        assert_eq!(zero.dim(), 8);
    }

    #[test]
    fn non_homogeneous_but_admissible() {
        // x^2 = y^3 style relation on two loops, plus enough monomials.
        let q = Quiver::from_triples(1, &[(1, 1, "x"), (1, 1, "y")]).unwrap();
        let a = build_bound_quiver_algebra(&q, &["x*x - y*y*y", "x*y", "y*x", "y*y*y*y"], f2())
            .unwrap();
        // Basis e, x, y, x^2, y^2; y^3 is rewritten to x^2.
        assert_eq!(a.dim(), 5);
        assert!(a.is_associative());
    }
}
