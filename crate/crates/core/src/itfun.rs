//! The Igusa-Todorov function.
//!
//! `K` is the free abelian group on isoclasses of indecomposable
//! non-projective modules and `L[X] = [Omega X]`. For a module `X`,
//! `<X>` is the subgroup spanned by the classes of its summands, and
//!
//! ```text
//! Phi(X) = min { n : rk L^k <X> = rk L^(k+1) <X> for all k >= n }.
//! ```
//!
//! `rk` is the rank of a subgroup, computed over Q from multiplicity vectors.
//! When the set of classes reachable from `X` under `Omega` is finite (found
//! within a budget), `L` is a square integer matrix on it and the ranks are
//! constant from `|C|` on, so `Phi` is computed exactly.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;
use serde::Serialize;

use crate::algebra::Algebra;
use crate::exactlin::rational::rational_rank;
use crate::modules::{
    decompose, direct_sum, is_isomorphic_indecomposable, is_projective, projective_cover, Module,
};

/// Classes explored before `phi` falls back to the first-repeat rule.
pub const CLOSURE_BUDGET: usize = 48;

/// Registry of indecomposable representatives.
pub struct IsoClassTable {
    algebra: Arc<Algebra>,
    reps: Vec<Module>,
    projective: Vec<bool>,
    omega: Vec<Option<Vec<(usize, usize)>>>,
}

/// Identifiers of non-projective classes.
pub type StableClassSet = BTreeSet<usize>;

impl IsoClassTable {
    pub fn new(algebra: &Arc<Algebra>) -> Self {
        IsoClassTable {
            algebra: algebra.clone(),
            reps: Vec::new(),
            projective: Vec::new(),
            omega: Vec::new(),
        }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn representative(&self, id: usize) -> &Module {
        &self.reps[id]
    }

    pub fn is_projective(&self, id: usize) -> bool {
        self.projective[id]
    }

    /// Identifier of an indecomposable module, if registered.
    pub fn lookup<R: Rng + ?Sized>(&self, m: &Module, rng: &mut R) -> Option<usize> {
        self.reps
            .iter()
            .position(|r| is_isomorphic_indecomposable(r, m, rng))
    }

    /// Identifier of an indecomposable module, registering it if new.
    pub fn register<R: Rng + ?Sized>(&mut self, m: &Module, rng: &mut R) -> usize {
        if let Some(id) = self.lookup(m, rng) {
            return id;
        }
        self.reps.push(m.clone());
        self.projective.push(is_projective(m));
        self.omega.push(None);
        self.reps.len() - 1
    }

    /// Decompose and register; returns `(id, multiplicity)` pairs.
    pub fn classify<R: Rng + ?Sized>(&mut self, m: &Module, rng: &mut R) -> Vec<(usize, usize)> {
        let d = decompose(m, rng);
        let mut out: BTreeMap<usize, usize> = BTreeMap::new();
        for p in &d.parts {
            *out.entry(self.register(&p.module, rng)).or_insert(0) += p.multiplicity;
        }
        out.into_iter().collect()
    }

    /// Non-projective classes of `Omega` of a registered class, with
    /// multiplicities. Cached.
    pub fn omega<R: Rng + ?Sized>(&mut self, id: usize, rng: &mut R) -> Vec<(usize, usize)> {
        if let Some(v) = &self.omega[id] {
            return v.clone();
        }
        let v = if self.projective[id] {
            Vec::new()
        } else {
            let om = projective_cover(&self.reps[id].clone()).syzygy;
            self.classify(&om, rng)
                .into_iter()
                .filter(|(c, _)| !self.projective[*c])
                .collect()
        };
        self.omega[id] = Some(v.clone());
        v
    }
}

/// `<m>`: the non-projective classes among the summands of `m`.
pub fn bracket<R: Rng + ?Sized>(
    m: &Module,
    table: &mut IsoClassTable,
    rng: &mut R,
) -> StableClassSet {
    table
        .classify(m, rng)
        .into_iter()
        .map(|(id, _)| id)
        .filter(|&id| !table.is_projective(id))
        .collect()
}

/// Classes occurring in `L` applied to the given classes.
pub fn apply_l<R: Rng + ?Sized>(
    s: &StableClassSet,
    table: &mut IsoClassTable,
    rng: &mut R,
) -> StableClassSet {
    let mut out = StableClassSet::new();
    for &id in s {
        out.extend(table.omega(id, rng).into_iter().map(|(c, _)| c));
    }
    out
}

type Vector = BTreeMap<usize, BigInt>;

fn apply_l_vec<R: Rng + ?Sized>(v: &Vector, table: &mut IsoClassTable, rng: &mut R) -> Vector {
    let mut out = Vector::new();
    for (&id, c) in v {
        for (t, mult) in table.omega(id, rng) {
            *out.entry(t).or_insert_with(BigInt::zero) += c * BigInt::from(mult);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn rank_of(vs: &[Vector]) -> usize {
    let cols: BTreeSet<usize> = vs.iter().flat_map(|v| v.keys().copied()).collect();
    let cols: Vec<usize> = cols.into_iter().collect();
    let rows: Vec<Vec<BigInt>> = vs
        .iter()
        .map(|v| {
            cols.iter()
                .map(|c| v.get(c).cloned().unwrap_or_else(BigInt::zero))
                .collect()
        })
        .collect();
    if cols.is_empty() {
        0
    } else {
        rational_rank(&rows)
    }
}

fn initial_vectors<R: Rng + ?Sized>(
    m: &Module,
    table: &mut IsoClassTable,
    rng: &mut R,
) -> Vec<Vector> {
    bracket(m, table, rng)
        .into_iter()
        .map(|id| Vector::from([(id, BigInt::from(1))]))
        .collect()
}

/// `[rk <m>, rk L<m>, ..., rk L^kmax <m>]`.
pub fn rank_sequence<R: Rng + ?Sized>(
    m: &Module,
    kmax: usize,
    table: &mut IsoClassTable,
    rng: &mut R,
) -> Vec<usize> {
    let mut vs = initial_vectors(m, table, rng);
    let mut out = Vec::with_capacity(kmax + 1);
    for k in 0..=kmax {
        out.push(rank_of(&vs));
        if k < kmax {
            vs = vs.iter().map(|v| apply_l_vec(v, table, rng)).collect();
        }
    }
    out
}

/// Classes reachable from `start` under `Omega`, or `None` past the budget.
fn omega_closure<R: Rng + ?Sized>(
    start: &StableClassSet,
    table: &mut IsoClassTable,
    budget: usize,
    rng: &mut R,
) -> Option<StableClassSet> {
    let mut seen = start.clone();
    let mut queue: Vec<usize> = start.iter().copied().collect();
    while let Some(id) = queue.pop() {
        for (c, _) in table.omega(id, rng) {
            if seen.insert(c) {
                if seen.len() > budget {
                    return None;
                }
                queue.push(c);
            }
        }
    }
    Some(seen)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiReport {
    pub value: usize,
    /// Ranks `rk L^k <m>` for `k = 0, 1, ...` up to where they are known to
    /// be constant.
    pub ranks: Vec<usize>,
    /// Whether the Omega-closure was finite within the budget, making the
    /// value exact. Otherwise it comes from the first repeat of the ranks,
    /// confirmed over two further steps.
    pub exact: bool,
}

/// The Igusa-Todorov function of `m`.
pub fn phi_report<R: Rng + ?Sized>(
    m: &Module,
    table: &mut IsoClassTable,
    rng: &mut R,
) -> PhiReport {
    let start = bracket(m, table, rng);
    match omega_closure(&start, table, CLOSURE_BUDGET, rng) {
        Some(closure) => {
            let horizon = closure.len() + 1;
            let ranks = rank_sequence(m, horizon, table, rng);
            let value = (0..horizon)
                .rev()
                .find(|&k| ranks[k] != ranks[k + 1])
                .map_or(0, |k| k + 1);
            let keep = (value + 2).min(ranks.len());
            PhiReport {
                value,
                ranks: ranks[..keep].to_vec(),
                exact: true,
            }
        }
        None => {
            let mut vs = initial_vectors(m, table, rng);
            let mut ranks = vec![rank_of(&vs)];
            loop {
                vs = vs.iter().map(|v| apply_l_vec(v, table, rng)).collect();
                ranks.push(rank_of(&vs));
                let k = ranks.len() - 2;
                if ranks[k] == ranks[k + 1] {
                    // Guard: two more steps must agree.
                    for _ in 0..2 {
                        vs = vs.iter().map(|v| apply_l_vec(v, table, rng)).collect();
                        ranks.push(rank_of(&vs));
                    }
                    if ranks[k..].iter().all(|&r| r == ranks[k]) {
                        return PhiReport {
                            value: k,
                            ranks,
                            exact: false,
                        };
                    }
                }
            }
        }
    }
}

pub fn phi<R: Rng + ?Sized>(m: &Module, table: &mut IsoClassTable, rng: &mut R) -> usize {
    phi_report(m, table, rng).value
}

/// `Phi` of the direct sum of the generators, which bounds `Phi` on their
/// additive closure.
pub fn phi_dim<R: Rng + ?Sized>(
    algebra: &Arc<Algebra>,
    gens: &[Module],
    table: &mut IsoClassTable,
    rng: &mut R,
) -> usize {
    let sum = direct_sum(algebra, gens).expect("generators over the algebra");
    phi(&sum, table, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_bound_quiver_algebra, Quiver};
    use crate::exactlin::Fp;
    use crate::modules::tests::{a2, dual};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(11)
    }

    #[test]
    fn brackets() {
        let d = dual();
        let mut t = IsoClassTable::new(&d);
        let mut g = rng();
        let s = Module::simple(&d, 0).unwrap();
        let reg = Module::regular(&d);
        let st = direct_sum(&d, &[s.clone(), reg.clone()]).unwrap();
        assert_eq!(bracket(&st, &mut t, &mut g).len(), 1);
        assert!(bracket(&reg, &mut t, &mut g).is_empty());
        let ss = direct_sum(&d, &[s.clone(), s.clone()]).unwrap();
        assert_eq!(bracket(&ss, &mut t, &mut g).len(), 1);
        let b = bracket(&s, &mut t, &mut g);
        assert_eq!(apply_l(&b, &mut t, &mut g), b);
        assert!(apply_l(&StableClassSet::new(), &mut t, &mut g).is_empty());
    }

    #[test]
    fn rank_sequences_and_phi() {
        let a = a2();
        let mut t = IsoClassTable::new(&a);
        let mut g = rng();
        let s1 = Module::simple(&a, 0).unwrap();
        assert_eq!(rank_sequence(&s1, 2, &mut t, &mut g), vec![1, 0, 0]);
        assert_eq!(phi(&s1, &mut t, &mut g), 1);
        assert!(apply_l(&bracket(&s1, &mut t, &mut g), &mut t, &mut g).is_empty());
        let reg = Module::regular(&a);
        assert_eq!(rank_sequence(&reg, 3, &mut t, &mut g), vec![0; 4]);
        assert_eq!(phi(&reg, &mut t, &mut g), 0);

        let d = dual();
        let mut t = IsoClassTable::new(&d);
        let s = Module::simple(&d, 0).unwrap();
        assert_eq!(rank_sequence(&s, 3, &mut t, &mut g), vec![1; 4]);
        let rep = phi_report(&s, &mut t, &mut g);
        assert_eq!(rep.value, 0);
        assert!(rep.exact);
        let reg = Module::regular(&d);
        assert_eq!(phi_dim(&d, &[s, reg], &mut t, &mut g), 0);
        assert_eq!(phi_dim(&d, &[], &mut t, &mut g), 0);
    }

    #[test]
    fn ranks_can_stall_before_dropping() {
        // Over 1 -> 2 -> 3 with the zero relation, S1 has pd 2: ranks 1, 1, 0.
        let q = Quiver::from_triples(3, &[(1, 2, "a"), (2, 3, "b")]).unwrap();
        let a = build_bound_quiver_algebra(&q, &["b*a"], Fp::two()).unwrap();
        let mut t = IsoClassTable::new(&a);
        let mut g = rng();
        let s1 = Module::simple(&a, 0).unwrap();
        assert_eq!(rank_sequence(&s1, 3, &mut t, &mut g), vec![1, 1, 0, 0]);
        let rep = phi_report(&s1, &mut t, &mut g);
        assert_eq!(rep.value, 2);
        assert!(rep.exact);
    }
}
