//! Modules over a triangular matrix algebra `L = (T 0; M U)` as triples
//! `(A, B, f)`: a `T`-module `A`, a `U`-module `B` and a `U`-map
//! `f: M (x)_T A -> B`.
//!
//! The map `f` is stored on the plain tensor space `M (x)_k A`, with the
//! basis vector `m_k (x) a_x` at index `k * dim A + x`. A valid `f` vanishes
//! on the balancing relations, which keeps it independent of any choice of
//! basis for the quotient `M (x)_T A`.

use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use crate::algebra::{opposite, samples, triangular, Algebra, Bimodule};
use crate::error::{Error, Result};
use crate::exactlin::{add_vec, Fp, Matrix, Vector};
use crate::modules::{
    decompose, direct_sum, hom_matrices, is_projective, projective_cover, random_module, syzygy,
    Module, RandomModuleSpec,
};

#[derive(Clone, Debug)]
pub struct TriangularContext {
    t: Arc<Algebra>,
    u: Arc<Algebra>,
    m: Bimodule,
    lambda: Arc<Algebra>,
    e_t: Vector,
    e_u: Vector,
}

impl TriangularContext {
    pub fn new(t: &Arc<Algebra>, u: &Arc<Algebra>, m: Bimodule) -> Result<TriangularContext> {
        let lambda = triangular(t, u, &m)?;
        let d = lambda.dim();
        let mut e_t = vec![0u32; d];
        let mut e_u = vec![0u32; d];
        let nt = t.vertex_count();
        for (i, e) in lambda.idempotents().iter().enumerate() {
            let dst = if i < nt { &mut e_t } else { &mut e_u };
            *dst = add_vec(t.field(), dst, e);
        }
        Ok(TriangularContext {
            t: t.clone(),
            u: u.clone(),
            m,
            lambda,
            e_t,
            e_u,
        })
    }

    pub fn t(&self) -> &Arc<Algebra> {
        &self.t
    }

    pub fn u(&self) -> &Arc<Algebra> {
        &self.u
    }

    pub fn m(&self) -> &Bimodule {
        &self.m
    }

    pub fn lambda(&self) -> &Arc<Algebra> {
        &self.lambda
    }

    /// The idempotent `e_T`, the sum of the vertices coming from `T`.
    pub fn e_t(&self) -> &[u32] {
        &self.e_t
    }

    pub fn e_u(&self) -> &[u32] {
        &self.e_u
    }
}

/// `M (x)_T A` with its projection from, and a section into, the plain
/// tensor space.
#[derive(Clone, Debug)]
pub struct Tensor {
    pub module: Module,
    pub proj: Matrix,
    pub section: Matrix,
}

/// The balancing relations `m t (x) a - m (x) t a`, one block per generator
/// of `T`. Generators suffice: the relation for `t t'` is a sum of those
/// for `t` and `t'`.
fn balancing_relations(m: &Bimodule, a: &Module) -> Matrix {
    let f = a.field();
    let ia = Matrix::identity(f, a.dim());
    let im = Matrix::identity(f, m.dim());
    let mut rel = Matrix::zeros(f, m.dim() * a.dim(), 0);
    for (r, g) in m.right_generator_matrices().iter().zip(a.gens()) {
        rel = rel.hstack(&r.kron(&ia).sub(&im.kron(g)));
    }
    rel
}

pub fn tensor_over_t(m: &Bimodule, a: &Module) -> Result<Tensor> {
    if **a.algebra() != **m.right_algebra() {
        return Err(Error::AlgebraMismatch(
            "algebras: the module must be over the right algebra of the bimodule",
        ));
    }
    let f = a.field();
    let u = m.left_algebra();
    let q = balancing_relations(m, a).quotient();
    let ia = Matrix::identity(f, a.dim());
    let gens = m
        .left_generator_matrices()
        .iter()
        .map(|l| q.proj.mul(&l.kron(&ia)).mul(&q.section))
        .collect();
    Ok(Tensor {
        module: Module::from_trusted(u.clone(), gens),
        proj: q.proj,
        section: q.section,
    })
}

/// `1 (x) alpha: M (x)_T A -> M (x)_T A'` in the coordinates of the two
/// quotients.
pub fn tensor_map(m: &Bimodule, src: &Tensor, dst: &Tensor, alpha: &Matrix) -> Matrix {
    let im = Matrix::identity(alpha.field(), m.dim());
    dst.proj.mul(&im.kron(alpha)).mul(&src.section)
}

#[derive(Clone, Debug)]
pub struct TripleModule {
    pub a: Module,
    pub b: Module,
    /// `dim B x (dim M * dim A)`, on the plain tensor space.
    pub f: Matrix,
}

impl TripleModule {
    /// Checks that `f` is balanced and `U`-linear.
    pub fn new(ctx: &TriangularContext, a: Module, b: Module, f: Matrix) -> Result<TripleModule> {
        if **a.algebra() != *ctx.t || **b.algebra() != *ctx.u {
            return Err(Error::AlgebraMismatch("algebras of the triple components"));
        }
        let tm = TripleModule { a, b, f };
        tm.validate(ctx).map_err(Error::InvalidModule)?;
        Ok(tm)
    }

    /// From `f` given on the quotient `M (x)_T A`, in the coordinates of
    /// [`tensor_over_t`].
    pub fn from_reduced(
        ctx: &TriangularContext,
        a: Module,
        b: Module,
        f: &Matrix,
    ) -> Result<TripleModule> {
        let t = tensor_over_t(&ctx.m, &a)?;
        TripleModule::new(ctx, a, b, f.mul(&t.proj))
    }

    pub fn zero(ctx: &TriangularContext) -> TripleModule {
        TripleModule {
            a: Module::zero(&ctx.t),
            b: Module::zero(&ctx.u),
            f: Matrix::zeros(ctx.t.field(), 0, 0),
        }
    }

    pub fn dim(&self) -> usize {
        self.a.dim() + self.b.dim()
    }

    pub fn validate(&self, ctx: &TriangularContext) -> std::result::Result<(), String> {
        let (da, db) = (self.a.dim(), self.b.dim());
        if self.f.rows() != db || self.f.cols() != ctx.m.dim() * da {
            return Err(format!(
                "f must be {db}x{}, got {}x{}",
                ctx.m.dim() * da,
                self.f.rows(),
                self.f.cols()
            ));
        }
        if !self.f.mul(&balancing_relations(&ctx.m, &self.a)).is_zero() {
            return Err("f does not vanish on the balancing relations".into());
        }
        let ia = Matrix::identity(self.a.field(), da);
        for (l, g) in ctx.m.left_generator_matrices().iter().zip(self.b.gens()) {
            if self.f.mul(&l.kron(&ia)) != g.mul(&self.f) {
                return Err("f is not a map of U-modules".into());
            }
        }
        Ok(())
    }
}

/// Componentwise direct sum.
pub fn triple_direct_sum(ctx: &TriangularContext, parts: &[TripleModule]) -> TripleModule {
    let f = ctx.t.field();
    let a = direct_sum(
        &ctx.t,
        &parts.iter().map(|p| p.a.clone()).collect::<Vec<_>>(),
    )
    .expect("components over T");
    let b = direct_sum(
        &ctx.u,
        &parts.iter().map(|p| p.b.clone()).collect::<Vec<_>>(),
    )
    .expect("components over U");
    let (da, dm) = (a.dim(), ctx.m.dim());
    let mut fm = Matrix::zeros(f, b.dim(), dm * da);
    let (mut oa, mut ob) = (0, 0);
    for p in parts {
        let (pa, pb) = (p.a.dim(), p.b.dim());
        for k in 0..dm {
            fm.set_block(ob, k * da + oa, &p.f.block(0, pb, k * pa, pa));
        }
        oa += pa;
        ob += pb;
    }
    TripleModule { a, b, f: fm }
}

/// The `L`-module on `A (+) B`: `T` acts on `A`, `U` on `B`, and `m_k`
/// sends `x` in `A` to `f(m_k (x) x)` in `B`.
pub fn triple_to_flat(ctx: &TriangularContext, tm: &TripleModule) -> Module {
    let f = ctx.t.field();
    let (da, db) = (tm.a.dim(), tm.b.dim());
    let n = da + db;
    let za = Matrix::zeros(f, da, da);
    let zb = Matrix::zeros(f, db, db);
    let mut actions = Vec::with_capacity(ctx.lambda.dim());
    for x in tm.a.basis_actions() {
        actions.push(Matrix::block_diag(f, &[x, &zb]));
    }
    for y in tm.b.basis_actions() {
        actions.push(Matrix::block_diag(f, &[&za, y]));
    }
    for k in 0..ctx.m.dim() {
        let mut x = Matrix::zeros(f, n, n);
        x.set_block(da, 0, &tm.f.block(0, db, k * da, da));
        actions.push(x);
    }
    Module::from_basis_actions(ctx.lambda.clone(), actions)
}

fn block_module(alg: &Arc<Algebra>, actions: &[Matrix], basis: &Matrix) -> Module {
    if basis.cols() == 0 {
        return Module::zero(alg);
    }
    let inv = basis.left_inverse().expect("basis");
    let acts = actions.iter().map(|x| inv.mul(x).mul(basis)).collect();
    Module::from_basis_actions(alg.clone(), acts)
}

/// Splits an `L`-module into its triple. Also returns the basis change
/// `[basis of e_T x | basis of e_U x]` under which `x` becomes exactly the
/// flattening of the triple.
pub fn flat_to_triple(ctx: &TriangularContext, x: &Module) -> (TripleModule, Matrix) {
    let f = x.field();
    let (dt, du, dm) = (ctx.t.dim(), ctx.u.dim(), ctx.m.dim());
    let acts = x.basis_actions();
    let a_basis = x.action_of(&ctx.e_t).column_basis();
    let b_basis = x.action_of(&ctx.e_u).column_basis();
    let a = block_module(&ctx.t, &acts[..dt], &a_basis);
    let b = block_module(&ctx.u, &acts[dt..dt + du], &b_basis);
    let (da, db) = (a.dim(), b.dim());
    let mut fm = Matrix::zeros(f, db, dm * da);
    if da > 0 && db > 0 {
        let b_inv = b_basis.left_inverse().expect("basis");
        for k in 0..dm {
            fm.set_block(0, k * da, &b_inv.mul(&acts[dt + du + k]).mul(&a_basis));
        }
    }
    let change = a_basis.hstack(&b_basis);
    (TripleModule { a, b, f: fm }, change)
}

/// The indecomposable projectives: `(P, M (x)_T P, 1)` for each vertex of
/// `T`, then `(0, Q, 0)` for each vertex of `U`.
pub fn triple_projectives(ctx: &TriangularContext) -> Vec<TripleModule> {
    let f = ctx.t.field();
    let mut out = Vec::new();
    for i in 0..ctx.t.vertex_count() {
        let p = Module::projective(&ctx.t, i).expect("vertex");
        let t = tensor_over_t(&ctx.m, &p).expect("same algebra");
        out.push(TripleModule {
            a: p,
            b: t.module,
            f: t.proj,
        });
    }
    for j in 0..ctx.u.vertex_count() {
        let q = Module::projective(&ctx.u, j).expect("vertex");
        out.push(TripleModule {
            a: Module::zero(&ctx.t),
            f: Matrix::zeros(f, q.dim(), 0),
            b: q,
        });
    }
    out
}

/// A morphism of triples as a pair of component maps.
#[derive(Clone, Debug)]
pub struct TripleMorphism {
    pub on_a: Matrix,
    pub on_b: Matrix,
}

/// `0 -> X -> Y -> Z -> 0` in triple form.
#[derive(Clone, Debug)]
pub struct TripleSequence {
    pub left: TripleModule,
    pub middle: TripleModule,
    pub right: TripleModule,
    pub inject: TripleMorphism,
    pub surject: TripleMorphism,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TripleExactness {
    /// Both squares `beta f = f' (1 (x) alpha)` commute.
    pub commutes: bool,
    /// `0 -> A -> A' -> A'' -> 0` is exact in `mod T`.
    pub a_row: bool,
    /// `M (x) A -> M (x) A' -> M (x) A'' -> 0` is exact.
    pub tensor_row: bool,
    /// `0 -> B -> B' -> B'' -> 0` is exact in `mod U`.
    pub b_row: bool,
}

impl TripleExactness {
    pub fn is_exact(&self) -> bool {
        self.commutes && self.a_row && self.tensor_row && self.b_row
    }

    /// The first failing clause.
    pub fn failure(&self) -> Option<&'static str> {
        if !self.commutes {
            Some("a square does not commute")
        } else if !self.a_row {
            Some("the T-row is not exact")
        } else if !self.tensor_row {
            Some("the tensor row is not exact")
        } else if !self.b_row {
            Some("the U-row is not exact")
        } else {
            None
        }
    }
}

fn row_exact(x: &Module, y: &Module, z: &Module, i: &Matrix, s: &Matrix) -> bool {
    let (a, b, c) = (x.dim(), y.dim(), z.dim());
    i.rows() == b
        && i.cols() == a
        && s.rows() == c
        && s.cols() == b
        && b == a + c
        && x.intertwines(y, i)
        && y.intertwines(z, s)
        && i.rank() == a
        && s.rank() == c
        && s.mul(i).is_zero()
}

fn square_commutes(
    m_dim: usize,
    src: &TripleModule,
    dst: &TripleModule,
    h: &TripleMorphism,
) -> bool {
    let f = src.a.field();
    if h.on_a.rows() != dst.a.dim()
        || h.on_a.cols() != src.a.dim()
        || h.on_b.rows() != dst.b.dim()
        || h.on_b.cols() != src.b.dim()
    {
        return false;
    }
    let lifted = Matrix::identity(f, m_dim).kron(&h.on_a);
    h.on_b.mul(&src.f) == dst.f.mul(&lifted)
}

pub fn triple_exact(ctx: &TriangularContext, seq: &TripleSequence) -> TripleExactness {
    let dm = ctx.m.dim();
    let commutes = square_commutes(dm, &seq.left, &seq.middle, &seq.inject)
        && square_commutes(dm, &seq.middle, &seq.right, &seq.surject);
    let a_row = row_exact(
        &seq.left.a,
        &seq.middle.a,
        &seq.right.a,
        &seq.inject.on_a,
        &seq.surject.on_a,
    );
    let b_row = row_exact(
        &seq.left.b,
        &seq.middle.b,
        &seq.right.b,
        &seq.inject.on_b,
        &seq.surject.on_b,
    );
    let tensor_row = a_row && {
        let t: Vec<Tensor> = [&seq.left, &seq.middle, &seq.right]
            .iter()
            .map(|x| tensor_over_t(&ctx.m, &x.a).expect("T-modules"))
            .collect();
        let i = tensor_map(&ctx.m, &t[0], &t[1], &seq.inject.on_a);
        let s = tensor_map(&ctx.m, &t[1], &t[2], &seq.surject.on_a);
        let (b, c) = (t[1].module.dim(), t[2].module.dim());
        s.mul(&i).is_zero() && s.rank() == c && i.rank() + c == b
    };
    TripleExactness {
        commutes,
        a_row,
        tensor_row,
        b_row,
    }
}

/// `Omega^n (A, B, f) = (Omega^n A, M (x) P_{n-1}, 1 (x) i_n) (+) (0, Omega^n B, 0)`
/// where `P_{n-1} -> Omega^{n-1} A` is a projective cover with kernel
/// inclusion `i_n`. Valid when `M` is projective on both sides.
///
/// The right-hand side is the kernel of a projective cover of `(A, B, f)`
/// that need not be minimal, so it is `Omega^n` up to projective summands.
pub fn triple_syzygy_formula(
    ctx: &TriangularContext,
    tm: &TripleModule,
    n: usize,
) -> Result<TripleModule> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "the syzygy formula needs n >= 1".into(),
        ));
    }
    let f = ctx.t.field();
    let prev = syzygy(&tm.a, n - 1);
    let cover = projective_cover(&prev);
    let t = tensor_over_t(&ctx.m, &cover.cover)?;
    let im = Matrix::identity(f, ctx.m.dim());
    let first = TripleModule {
        f: t.proj.mul(&im.kron(&cover.syzygy_inclusion)),
        a: cover.syzygy,
        b: t.module,
    };
    let ob = syzygy(&tm.b, n);
    let second = TripleModule {
        a: Module::zero(&ctx.t),
        f: Matrix::zeros(f, ob.dim(), 0),
        b: ob,
    };
    Ok(triple_direct_sum(ctx, &[first, second]))
}

/// One syzygy step read off the kernel of the cover
/// `(P_A, M (x) P_A, 1) (+) (0, P_B, 0) -> (A, B, f)`:
/// `(Omega A, M (x) P_A (+) Omega B, (1 (x) i, h (1 (x) i)))`, where `h` lifts
/// `f (1 (x) pi_A)` through the cover of `B`. The literal formula drops the
/// `h` component, which is not always removable by a change of basis.
pub fn triple_syzygy_step(ctx: &TriangularContext, tm: &TripleModule) -> Result<TripleModule> {
    let f = ctx.t.field();
    let ca = projective_cover(&tm.a);
    let cb = projective_cover(&tm.b);
    let t = tensor_over_t(&ctx.m, &ca.cover)?;
    let im = Matrix::identity(f, ctx.m.dim());
    // g = f (1 (x) pi_A) on the reduced tensor M (x)_T P_A.
    let g = tm.f.mul(&im.kron(&ca.epi)).mul(&t.section);
    let homs = hom_matrices(&t.module, &cb.cover)?;
    let h = lift_through(&homs, &cb.epi, &g)
        .ok_or_else(|| Error::HypothesisFailed("M (x)_T P_A is not projective".into()))?;
    let into_tensor = t.proj.mul(&im.kron(&ca.syzygy_inclusion));
    let into_omega_b = cb
        .syzygy_inclusion
        .left_inverse()
        .map(|l| l.mul(&h).mul(&into_tensor))
        .unwrap_or_else(|| Matrix::zeros(f, 0, into_tensor.cols()));
    let b = direct_sum(&ctx.u, &[t.module, cb.syzygy])?;
    Ok(TripleModule {
        f: into_tensor.vstack(&into_omega_b),
        a: ca.syzygy,
        b,
    })
}

/// A combination `h` of `homs` with `epi h = g`, if one exists.
fn lift_through(homs: &[Matrix], epi: &Matrix, g: &Matrix) -> Option<Matrix> {
    let f = g.field();
    if g.is_zero() {
        return Some(Matrix::zeros(f, epi.cols(), g.cols()));
    }
    let columns: Vec<Vec<u32>> = homs.iter().map(|h| epi.mul(h).data().to_vec()).collect();
    let n = g.rows() * g.cols();
    let system = Matrix::from_columns(f, n, &columns);
    let rhs = Matrix::from_vec(f, n, 1, g.data().to_vec()).ok()?;
    let c = system.solve(&rhs).ok()??;
    let mut h = Matrix::zeros(f, epi.cols(), g.cols());
    for (k, hk) in homs.iter().enumerate() {
        h.add_scaled(hk, c.get(k, 0));
    }
    Some(h)
}

/// `Omega^n (A, B, f)` as a triple, by iterating [`triple_syzygy_step`].
/// Agrees with the syzygy of the flattened module up to projective summands.
pub fn triple_syzygy_lifted(
    ctx: &TriangularContext,
    tm: &TripleModule,
    n: usize,
) -> Result<TripleModule> {
    let mut x = tm.clone();
    for _ in 0..n {
        x = triple_syzygy_step(ctx, &x)?;
    }
    Ok(x)
}

/// `Omega^n` of the flattened module, computed directly.
pub fn triple_syzygy_oracle(ctx: &TriangularContext, tm: &TripleModule, n: usize) -> Module {
    syzygy(&triple_to_flat(ctx, tm), n)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MHypotheses {
    pub left_projective: bool,
    pub right_projective: bool,
    /// `M (x)_T P` is indecomposable or zero for each indecomposable
    /// projective `P` of `T`.
    pub tensor_indecomposable: bool,
}

impl MHypotheses {
    /// The two projectivity clauses, which the syzygy formula needs.
    pub fn projective(&self) -> bool {
        self.left_projective && self.right_projective
    }

    pub fn all(&self) -> bool {
        self.projective() && self.tensor_indecomposable
    }

    pub fn failure(&self) -> Option<&'static str> {
        if !self.left_projective {
            Some("M is not projective as a left U-module")
        } else if !self.right_projective {
            Some("M is not projective as a right T-module")
        } else if !self.tensor_indecomposable {
            Some("M (x)_T P is decomposable for some indecomposable projective P")
        } else {
            None
        }
    }
}

/// `M` as a left `U`-module.
pub fn m_as_left_module(m: &Bimodule) -> Module {
    Module::from_basis_actions(m.left_algebra().clone(), m.left_action().to_vec())
}

/// `M` as a left module over the opposite of `T`.
pub fn m_as_right_module(m: &Bimodule) -> Module {
    let op = opposite(m.right_algebra());
    Module::from_basis_actions(op, m.right_action().to_vec())
}

pub fn check_m_hypotheses<R: Rng + ?Sized>(ctx: &TriangularContext, rng: &mut R) -> MHypotheses {
    let tensor_indecomposable = (0..ctx.t.vertex_count()).all(|i| {
        let p = Module::projective(&ctx.t, i).expect("vertex");
        let t = tensor_over_t(&ctx.m, &p).expect("same algebra");
        decompose(&t.module, rng).summand_count() <= 1
    });
    MHypotheses {
        left_projective: is_projective(&m_as_left_module(&ctx.m)),
        right_projective: is_projective(&m_as_right_module(&ctx.m)),
        tensor_indecomposable,
    }
}

/// A random `U`-map `M (x)_T a -> b`, on the plain tensor space.
pub fn random_f<R: Rng + ?Sized>(
    ctx: &TriangularContext,
    a: &Module,
    b: &Module,
    rng: &mut R,
) -> Matrix {
    let f = a.field();
    let t = tensor_over_t(&ctx.m, a).expect("T-module");
    let homs = hom_matrices(&t.module, b).expect("U-modules");
    let p = f.characteristic();
    let mut red = Matrix::zeros(f, b.dim(), t.module.dim());
    for h in &homs {
        red.add_scaled(h, rng.gen_range(0..p));
    }
    red.mul(&t.proj)
}

/// A random triple with nonzero components of dimension at most `max_dim`.
pub fn random_triple<R: Rng + ?Sized>(
    ctx: &TriangularContext,
    max_dim: usize,
    rng: &mut R,
) -> TripleModule {
    let a = random_module(&ctx.t, RandomModuleSpec::new(max_dim), rng);
    let b = random_module(&ctx.u, RandomModuleSpec::new(max_dim), rng);
    let f = random_f(ctx, &a, &b, rng);
    TripleModule { a, b, f }
}

/// The sample algebras random contexts are drawn from.
pub fn sample_pool(f: Fp) -> Vec<Arc<Algebra>> {
    vec![
        samples::base_field(f),
        samples::dual_numbers(f),
        samples::truncated_polynomial(f, 3).expect("admissible"),
        samples::linear_path(f, 2).expect("admissible"),
        samples::linear_path(f, 3).expect("admissible"),
        samples::linear_with_zero_relations(f, 3, 2).expect("admissible"),
    ]
}

/// A random context `(T 0; M U)` with `T`, `U` from [`sample_pool`] and `M`
/// a sum of one or two free bimodules `U e_i (x) e_j T` (or `T` itself when
/// `T = U`), so that `M` is projective on both sides. Every component has
/// dimension at most `max_dim`.
pub fn random_context<R: Rng + ?Sized>(f: Fp, max_dim: usize, rng: &mut R) -> TriangularContext {
    let pool: Vec<Arc<Algebra>> = sample_pool(f)
        .into_iter()
        .filter(|a| a.dim() <= max_dim)
        .collect();
    assert!(!pool.is_empty(), "no sample algebra fits the bound");
    loop {
        let t = pool[rng.gen_range(0..pool.len())].clone();
        let u = pool[rng.gen_range(0..pool.len())].clone();
        let m = if Arc::ptr_eq(&t, &u) && rng.gen_bool(0.3) {
            Bimodule::regular(&t)
        } else {
            let k = rng.gen_range(1..=2);
            let parts: Vec<Bimodule> = (0..k)
                .map(|_| {
                    let i = rng.gen_range(0..u.vertex_count());
                    let j = rng.gen_range(0..t.vertex_count());
                    Bimodule::free(&u, i, &t, j).expect("vertices in range")
                })
                .collect();
            Bimodule::direct_sum(&parts).expect("same algebras")
        };
        if m.dim() <= max_dim {
            return TriangularContext::new(&t, &u, m).expect("valid bimodule");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modules::tests::{a2, dual};
    use crate::modules::{is_indecomposable, is_isomorphic, is_isomorphic_plus_projective};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(5)
    }

    fn ttt() -> TriangularContext {
        let t = dual();
        TriangularContext::new(&t, &t, Bimodule::regular(&t)).unwrap()
    }

    /// `(S2, S2, 1)` over `(T 0; T T)` with `T = k(1 -> 2 -> 3)/(a2 a1)`:
    /// its syzygy `(S3, S3, 1)` is projective, but the literal formula gives
    /// `(S3, P2, i) (+) (0, S3, 0)`, which is not.
    #[test]
    fn literal_formula_counterexample() {
        let mut g = rng();
        let t = crate::algebra::samples::linear_with_zero_relations(Fp::two(), 3, 2).unwrap();
        let ctx = TriangularContext::new(&t, &t, Bimodule::regular(&t)).unwrap();
        let s2 = Module::simple(&t, 1).unwrap();
        let tensor = tensor_over_t(ctx.m(), &s2).unwrap();
        let f = tensor.proj.clone();
        assert_eq!(f.rows(), 1);
        let tm = TripleModule::new(&ctx, s2.clone(), s2, f).unwrap();
        let oracle = triple_syzygy_oracle(&ctx, &tm, 1);
        assert!(is_projective(&oracle));
        let literal = triple_to_flat(&ctx, &triple_syzygy_formula(&ctx, &tm, 1).unwrap());
        assert!(!is_isomorphic_plus_projective(&literal, &oracle, &mut g).unwrap());
        let lifted = triple_to_flat(&ctx, &triple_syzygy_lifted(&ctx, &tm, 1).unwrap());
        assert!(is_isomorphic_plus_projective(&lifted, &oracle, &mut g).unwrap());
    }

    #[test]
    fn tensors() {
        let t = dual();
        let m = Bimodule::regular(&t);
        let s = Module::simple(&t, 0).unwrap();
        let mut g = rng();
        let ts = tensor_over_t(&m, &s).unwrap();
        assert!(is_isomorphic(&ts.module, &s, &mut g).unwrap());
        let reg = Module::regular(&t);
        assert!(is_isomorphic(&tensor_over_t(&m, &reg).unwrap().module, &reg, &mut g).unwrap());
        assert_eq!(
            tensor_over_t(&m, &Module::zero(&t)).unwrap().module.dim(),
            0
        );
        let m2 = Bimodule::direct_sum(&[m.clone(), m]).unwrap();
        assert_eq!(tensor_over_t(&m2, &s).unwrap().module.dim(), 2);
        assert!(tensor_over_t(&Bimodule::regular(&a2()), &s).is_err());
    }

    #[test]
    fn flattening_round_trip() {
        let ctx = ttt();
        let mut g = rng();
        for _ in 0..10 {
            let tm = random_triple(&ctx, 4, &mut g);
            tm.validate(&ctx).unwrap();
            let flat = triple_to_flat(&ctx, &tm);
            assert!(ctx.lambda().check_representation(flat.gens()).is_ok());
            assert_eq!(flat.dim(), tm.dim());
            let (back, change) = flat_to_triple(&ctx, &flat);
            let again = triple_to_flat(&ctx, &back);
            assert_eq!(flat.change_basis(&change).unwrap().gens(), again.gens());
            assert!(is_isomorphic(&back.a, &tm.a, &mut g).unwrap());
            assert!(is_isomorphic(&back.b, &tm.b, &mut g).unwrap());
        }
        let zero = TripleModule::zero(&ctx);
        assert_eq!(triple_to_flat(&ctx, &zero).dim(), 0);
    }

    #[test]
    fn projectives() {
        let ctx = ttt();
        let mut g = rng();
        let ps = triple_projectives(&ctx);
        assert_eq!(ps.len(), 2);
        let flats: Vec<Module> = ps.iter().map(|p| triple_to_flat(&ctx, p)).collect();
        assert!(flats.iter().all(is_projective));
        let sum = direct_sum(ctx.lambda(), &flats).unwrap();
        assert!(is_isomorphic(&sum, &Module::regular(ctx.lambda()), &mut g).unwrap());
    }

    #[test]
    fn syzygy_of_simple_triple() {
        let ctx = ttt();
        let f = ctx.t().field();
        let mut g = rng();
        let s = Module::simple(ctx.t(), 0).unwrap();
        let tm = TripleModule::new(
            &ctx,
            s.clone(),
            Module::zero(ctx.u()),
            Matrix::zeros(f, 0, 2),
        )
        .unwrap();
        let formula = triple_syzygy_formula(&ctx, &tm, 1).unwrap();
        assert_eq!((formula.a.dim(), formula.b.dim()), (1, 2));
        assert!(is_indecomposable(&triple_to_flat(&ctx, &formula), &mut g));
        for n in 1..=3 {
            let lhs = triple_to_flat(&ctx, &triple_syzygy_formula(&ctx, &tm, n).unwrap());
            let rhs = triple_syzygy_oracle(&ctx, &tm, n);
            assert!(
                is_isomorphic_plus_projective(&lhs, &rhs, &mut g).unwrap(),
                "n = {n}"
            );
        }
        assert!(triple_syzygy_formula(&ctx, &tm, 0).is_err());
        assert_eq!(triple_syzygy_oracle(&ctx, &tm, 0).dim(), 1);
        for p in triple_projectives(&ctx) {
            let om = triple_syzygy_formula(&ctx, &p, 1).unwrap();
            assert!(is_projective(&triple_to_flat(&ctx, &om)));
        }
    }

    #[test]
    fn exactness_of_triples() {
        let ctx = ttt();
        let f = ctx.t().field();
        let mut g = rng();
        let x = random_triple(&ctx, 3, &mut g);
        let z = random_triple(&ctx, 3, &mut g);
        let y = triple_direct_sum(&ctx, &[x.clone(), z.clone()]);
        let inc = |p: usize, q: usize| Matrix::identity(f, p).vstack(&Matrix::zeros(f, q, p));
        let pr = |p: usize, q: usize| Matrix::zeros(f, q, p).hstack(&Matrix::identity(f, q));
        let seq = TripleSequence {
            inject: TripleMorphism {
                on_a: inc(x.a.dim(), z.a.dim()),
                on_b: inc(x.b.dim(), z.b.dim()),
            },
            surject: TripleMorphism {
                on_a: pr(x.a.dim(), z.a.dim()),
                on_b: pr(x.b.dim(), z.b.dim()),
            },
            left: x,
            middle: y,
            right: z,
        };
        assert!(triple_exact(&ctx, &seq).is_exact());
        // Keep the rows, break the square: zero out the inclusion on B.
        let mut bad = seq.clone();
        bad.left.f = Matrix::zeros(f, bad.left.b.dim(), bad.left.f.cols());
        bad.middle = triple_direct_sum(&ctx, &[seq.left.clone(), seq.right.clone()]);
        let mut g2 = rng();
        loop {
            let fx = random_f(&ctx, &seq.left.a, &seq.left.b, &mut g2);
            if !fx.is_zero() {
                bad.middle = triple_direct_sum(
                    &ctx,
                    &[
                        TripleModule {
                            f: fx,
                            ..seq.left.clone()
                        },
                        seq.right.clone(),
                    ],
                );
                break;
            }
        }
        let r = triple_exact(&ctx, &bad);
        assert!(r.b_row && !r.commutes);
        assert_eq!(r.failure(), Some("a square does not commute"));
    }

    #[test]
    fn hypotheses() {
        let ctx = ttt();
        let mut g = rng();
        assert!(check_m_hypotheses(&ctx, &mut g).all());
        // M = S as a T-T-bimodule through T -> k.
        let t = dual();
        let f = t.field();
        let z = Matrix::zeros(f, 1, 1);
        let id = Matrix::identity(f, 1);
        let s = Bimodule::new(t.clone(), t.clone(), &[id.clone(), z.clone()], &[id, z]).unwrap();
        let c = TriangularContext::new(&t, &t, s).unwrap();
        let h = check_m_hypotheses(&c, &mut g);
        assert!(!h.right_projective && !h.left_projective);
        // One-point extension of the dual numbers by itself.
        let k = crate::algebra::tensor_product(&t, &t).ok();
        assert!(k.is_some());
    }
}
