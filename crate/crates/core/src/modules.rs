//! Finite-dimensional modules over an [`FpAlgebra`], given by action matrices.
//!
//! Index conventions (fixed so serialized objects are reproducible):
//! - free modules `R^k` are copy-major: coordinates of copy 0, then copy 1, ...
//! - `M ⊗_{F_p} N` is `M`-major: index `(i, j) -> i * dim N + j`, as in [`FpMatrix::kron`];
//! - a hom `f : M -> N` is a `dim N x dim M` matrix, vectorised row-major.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{same_ring, FpAlgebra, Ideal, Ring};
use crate::error::{Error, Result};
use crate::fplinalg::{neg, FpMatrix, Subspace};
use crate::par::{checked_pow_within, Limits};

/// A module over a finite commutative F_p-algebra.
#[derive(Clone)]
pub struct FinModule {
    ring: Ring,
    dim: usize,
    action: Vec<FpMatrix>,
}

impl PartialEq for FinModule {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.dim == other.dim && self.action == other.action
    }
}

impl Eq for FinModule {}

impl fmt::Debug for FinModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinModule(dim {} over a {}-dim F_{}-algebra)", self.dim, self.ring.dim(), self.ring.p())
    }
}

impl FinModule {
    /// Validated constructor: one `dim x dim` matrix per ring basis element.
    pub fn new(ring: &Ring, action: Vec<FpMatrix>) -> Result<FinModule> {
        if action.len() != ring.dim() {
            return Err(Error::InvalidModule(format!(
                "{} action matrices for a {}-dimensional ring",
                action.len(),
                ring.dim()
            )));
        }
        let dim = action.first().map_or(0, |m| m.rows());
        for m in &action {
            if m.rows() != dim || m.cols() != dim || m.p() != ring.p() {
                return Err(Error::InvalidModule("action matrices must be square of equal size over F_p".into()));
            }
        }
        let m = FinModule {
            ring: ring.clone(),
            dim,
            action,
        };
        m.check_axioms()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(ring: &Ring, dim: usize, action: Vec<FpMatrix>) -> FinModule {
        debug_assert_eq!(action.len(), ring.dim());
        FinModule {
            ring: ring.clone(),
            dim,
            action,
        }
    }

    fn check_axioms(&self) -> Result<()> {
        let id = FpMatrix::identity(self.ring.p(), self.dim);
        if self.act(self.ring.one()) != id {
            return Err(Error::InvalidModule("unit does not act as the identity".into()));
        }
        let d = self.ring.dim();
        for i in 0..d {
            for j in i..d {
                let lhs = self.action[i].mul(&self.action[j]);
                let rhs = self.act(self.ring.product_coeffs(i, j));
                if lhs != rhs {
                    return Err(Error::InvalidModule(format!("action not multiplicative on e{i}*e{j}")));
                }
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn p(&self) -> u32 {
        self.ring.p()
    }

    pub fn action(&self) -> &[FpMatrix] {
        &self.action
    }

    /// Matrix of the action of a ring element.
    pub fn act(&self, x: &[u32]) -> FpMatrix {
        let mut m = FpMatrix::zeros(self.ring.p(), self.dim, self.dim);
        for (i, &c) in x.iter().enumerate() {
            m.add_scaled(c, &self.action[i]);
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    /// Image of the standard basis vectors of `v` under the whole ring: the cyclic submodule span.
    pub fn span_of(&self, vs: &[Vec<u32>]) -> Subspace {
        let mut all = Vec::new();
        for v in vs {
            for a in &self.action {
                all.push(a.mul_vec(v));
            }
        }
        Subspace::from_vectors(self.p(), self.dim, &all)
    }
}

/// An equivariant F_p-linear map between modules over the same ring.
#[derive(Clone, PartialEq, Eq)]
pub struct FinModuleMap {
    source: FinModule,
    target: FinModule,
    matrix: FpMatrix,
}

impl fmt::Debug for FinModuleMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinModuleMap({} -> {}) {:?}", self.source.dim, self.target.dim, self.matrix)
    }
}

impl FinModuleMap {
    /// Validated constructor; `matrix` is `target.dim x source.dim`.
    pub fn new(source: &FinModule, target: &FinModule, matrix: FpMatrix) -> Result<FinModuleMap> {
        if !same_ring(&source.ring, &target.ring) {
            return Err(Error::RingMismatch);
        }
        if matrix.rows() != target.dim || matrix.cols() != source.dim {
            return Err(Error::InvalidMap(format!(
                "{}x{} matrix for a map {} -> {}",
                matrix.rows(),
                matrix.cols(),
                source.dim,
                target.dim
            )));
        }
        for &g in source.ring.generators() {
            if matrix.mul(&source.action[g]) != target.action[g].mul(&matrix) {
                return Err(Error::InvalidMap(format!("not equivariant for e{g}")));
            }
        }
        Ok(FinModuleMap {
            source: source.clone(),
            target: target.clone(),
            matrix,
        })
    }

    pub(crate) fn new_unchecked(source: &FinModule, target: &FinModule, matrix: FpMatrix) -> FinModuleMap {
        debug_assert_eq!((matrix.rows(), matrix.cols()), (target.dim, source.dim));
        FinModuleMap {
            source: source.clone(),
            target: target.clone(),
            matrix,
        }
    }

    pub fn identity(m: &FinModule) -> FinModuleMap {
        Self::new_unchecked(m, m, FpMatrix::identity(m.p(), m.dim))
    }

    pub fn zero(source: &FinModule, target: &FinModule) -> FinModuleMap {
        Self::new_unchecked(source, target, FpMatrix::zeros(source.p(), target.dim, source.dim))
    }

    pub fn source(&self) -> &FinModule {
        &self.source
    }

    pub fn target(&self) -> &FinModule {
        &self.target
    }

    pub fn matrix(&self) -> &FpMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.dim == self.target.dim && self.is_injective()
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &FinModuleMap) -> Result<FinModuleMap> {
        if first.target != self.source {
            return Err(Error::NotComposable(0));
        }
        Ok(Self::new_unchecked(&first.source, &self.target, self.matrix.mul(&first.matrix)))
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        self.matrix.mul_vec(v)
    }
}

pub fn zero_module(ring: &Ring) -> FinModule {
    FinModule::new_unchecked(ring, 0, vec![FpMatrix::zeros(ring.p(), 0, 0); ring.dim()])
}

pub fn regular_module(ring: &Ring) -> FinModule {
    free_module(ring, 1)
}

/// `R^k`, copy-major.
pub fn free_module(ring: &Ring, k: usize) -> FinModule {
    let id = FpMatrix::identity(ring.p(), k);
    let action = (0..ring.dim())
        .map(|i| id.kron(ring.basis_mul_matrix(i)))
        .collect();
    FinModule::new_unchecked(ring, k * ring.dim(), action)
}

/// Element `x` placed in copy `copy` of `R^k`.
pub fn free_generator(ring: &FpAlgebra, k: usize, copy: usize, x: &[u32]) -> Vec<u32> {
    let d = ring.dim();
    let mut v = vec![0; k * d];
    v[copy * d..(copy + 1) * d].copy_from_slice(x);
    v
}

/// Submodule on an invariant subspace, with its inclusion.
pub fn submodule(m: &FinModule, space: &Subspace) -> Result<(FinModule, FinModuleMap)> {
    let k = space.dim();
    let basis = space.basis_vectors();
    let mut action = Vec::with_capacity(m.action.len());
    for a in &m.action {
        let mut cols = Vec::with_capacity(k);
        for b in &basis {
            let img = a.mul_vec(b);
            cols.push(
                space
                    .coords(&img)
                    .ok_or_else(|| Error::InvalidModule("subspace is not a submodule".into()))?,
            );
        }
        action.push(FpMatrix::from_col_vecs(m.p(), k, &cols));
    }
    let sub = FinModule::new_unchecked(&m.ring, k, action);
    let incl = FinModuleMap::new_unchecked(&sub, m, space.basis().transpose());
    Ok((sub, incl))
}

/// Quotient by an invariant subspace, with its projection.
pub fn quotient(m: &FinModule, space: &Subspace) -> Result<(FinModule, FinModuleMap)> {
    let proj = space.quotient_projection();
    let lift = lift_matrix(space);
    let q = proj.rows();
    let mut action = Vec::with_capacity(m.action.len());
    for a in &m.action {
        // invariance: a maps the subspace into itself
        for b in space.basis_vectors() {
            if !space.contains(&a.mul_vec(&b)) {
                return Err(Error::InvalidModule("subspace is not a submodule".into()));
            }
        }
        action.push(proj.mul(a).mul(&lift));
    }
    let qm = FinModule::new_unchecked(&m.ring, q, action);
    let pm = FinModuleMap::new_unchecked(m, &qm, proj);
    Ok((qm, pm))
}

/// Unit vectors at the complement columns of `space`: a section of its quotient projection.
fn lift_matrix(space: &Subspace) -> FpMatrix {
    let comp = space.complement_columns();
    let mut l = FpMatrix::zeros(space.p(), space.ambient_dim(), comp.len());
    for (j, &c) in comp.iter().enumerate() {
        l.set(c, j, 1);
    }
    l
}

/// `R^n / (relations)`, each relation an element of `R^n` in copy-major coordinates.
pub fn quotient_free(ring: &Ring, n: usize, relations: &[Vec<u32>]) -> Result<FinModule> {
    let f = free_module(ring, n);
    for r in relations {
        if r.len() != f.dim {
            return Err(Error::dims(format!(
                "relation of length {} in a free module of dimension {}",
                r.len(),
                f.dim
            )));
        }
    }
    let rels: Vec<Vec<u32>> = relations
        .iter()
        .map(|r| r.iter().map(|x| x % ring.p()).collect())
        .collect();
    Ok(quotient(&f, &f.span_of(&rels))?.0)
}

/// `R / (elems)`.
pub fn quotient_by_elements(ring: &Ring, elems: &[Vec<u32>]) -> Result<FinModule> {
    quotient_free(ring, 1, elems)
}

/// The residue module `R / J` with `J` the nilradical.
pub fn residue_module(ring: &Ring) -> FinModule {
    Ideal::from_subspace(ring, ring.nilradical().clone())
        .expect("nilradical is an ideal")
        .quotient_module()
}

pub fn kernel(f: &FinModuleMap) -> (FinModule, FinModuleMap) {
    submodule(&f.source, &Subspace::kernel_of(&f.matrix)).expect("kernel is a submodule")
}

/// Image with its inclusion into the target and the corestriction `source -> image`.
pub fn image(f: &FinModuleMap) -> (FinModule, FinModuleMap, FinModuleMap) {
    let space = Subspace::col_span(&f.matrix);
    let (im, incl) = submodule(&f.target, &space).expect("image is a submodule");
    let cols: Vec<Vec<u32>> = (0..f.source.dim)
        .map(|j| space.coords(&f.matrix.col(j)).expect("column in image"))
        .collect();
    let cores = FinModuleMap::new_unchecked(&f.source, &im, FpMatrix::from_col_vecs(f.p(), im.dim, &cols));
    (im, incl, cores)
}

pub fn cokernel(f: &FinModuleMap) -> (FinModule, FinModuleMap) {
    quotient(&f.target, &Subspace::col_span(&f.matrix)).expect("image is a submodule")
}

impl FinModuleMap {
    fn p(&self) -> u32 {
        self.source.p()
    }
}

/// The map `h : C -> N` with `h ∘ q = g`, for a surjection `q : X -> C` whose kernel `g` kills.
pub fn factor_through(q: &FinModuleMap, g: &FinModuleMap) -> Option<FinModuleMap> {
    if q.source != g.source || !q.is_surjective() {
        return None;
    }
    let ht = q.matrix.transpose().solve_matrix(&g.matrix.transpose()).ok()??;
    Some(FinModuleMap::new_unchecked(&q.target, &g.target, ht.transpose()))
}

pub fn direct_sum(m: &FinModule, n: &FinModule) -> Result<FinModule> {
    if !same_ring(&m.ring, &n.ring) {
        return Err(Error::RingMismatch);
    }
    let action = m
        .action
        .iter()
        .zip(&n.action)
        .map(|(a, b)| a.block_diag(b))
        .collect();
    Ok(FinModule::new_unchecked(&m.ring, m.dim + n.dim, action))
}

/// Canonical injections and projections of `M ⊕ N`.
pub struct DirectSum {
    pub module: FinModule,
    pub inj_left: FinModuleMap,
    pub inj_right: FinModuleMap,
    pub proj_left: FinModuleMap,
    pub proj_right: FinModuleMap,
}

pub fn direct_sum_maps(m: &FinModule, n: &FinModule) -> Result<DirectSum> {
    let s = direct_sum(m, n)?;
    let p = m.p();
    let (a, b) = (m.dim, n.dim);
    let mut il = FpMatrix::zeros(p, a + b, a);
    il.paste(0, 0, &FpMatrix::identity(p, a));
    let mut ir = FpMatrix::zeros(p, a + b, b);
    ir.paste(a, 0, &FpMatrix::identity(p, b));
    Ok(DirectSum {
        inj_left: FinModuleMap::new_unchecked(m, &s, il.clone()),
        inj_right: FinModuleMap::new_unchecked(n, &s, ir.clone()),
        proj_left: FinModuleMap::new_unchecked(&s, m, il.transpose()),
        proj_right: FinModuleMap::new_unchecked(&s, n, ir.transpose()),
        module: s,
    })
}

/// F_p-linear functionals with `(a f)(x) = f(a x)`.
pub fn dual(m: &FinModule) -> FinModule {
    let action = m.action.iter().map(|a| a.transpose()).collect();
    FinModule::new_unchecked(&m.ring, m.dim, action)
}

/// Space of equivariant maps between F_p-spaces with the given generator actions.
fn equivariant_space(p: u32, src_dim: usize, tgt_dim: usize, pairs: &[(&FpMatrix, &FpMatrix)]) -> Subspace {
    let n = src_dim * tgt_dim;
    if pairs.is_empty() {
        return Subspace::full(p, n);
    }
    let id_s = FpMatrix::identity(p, src_dim);
    let id_t = FpMatrix::identity(p, tgt_dim);
    let mut sys = FpMatrix::zeros(p, 0, n);
    for (s, t) in pairs {
        // vec(T X) - vec(X S) with row-major vec
        let block = t.kron(&id_s).sub(&id_t.kron(&s.transpose()));
        sys = sys.vstack(&block);
    }
    Subspace::kernel_of(&sys)
}

fn hom_space(m: &FinModule, n: &FinModule) -> Subspace {
    let pairs: Vec<(&FpMatrix, &FpMatrix)> = m
        .ring
        .generators()
        .iter()
        .map(|&g| (&m.action[g], &n.action[g]))
        .collect();
    equivariant_space(m.p(), m.dim, n.dim, &pairs)
}

pub fn hom_dim(m: &FinModule, n: &FinModule) -> Result<usize> {
    if !same_ring(&m.ring, &n.ring) {
        return Err(Error::RingMismatch);
    }
    Ok(hom_space(m, n).dim())
}

/// `Hom_R(M, N)` as a module, with the coordinates needed to evaluate its elements.
#[derive(Clone, Debug)]
pub struct HomModule {
    pub module: FinModule,
    space: Subspace,
    src_dim: usize,
    tgt_dim: usize,
}

impl HomModule {
    /// The `dim N x dim M` matrix of the hom with the given coordinates.
    pub fn evaluate(&self, coords: &[u32]) -> FpMatrix {
        let p = self.space.p();
        let mut v = vec![0u32; self.src_dim * self.tgt_dim];
        for (c, row) in coords.iter().zip(self.space.basis_vectors()) {
            for (x, r) in v.iter_mut().zip(row) {
                *x = crate::fplinalg::add(*x, crate::fplinalg::mul(*c, r, p), p);
            }
        }
        FpMatrix::from_vec(p, self.tgt_dim, self.src_dim, v).expect("shape")
    }

    pub fn coords_of(&self, f: &FpMatrix) -> Option<Vec<u32>> {
        self.space.coords(f.entries())
    }

    pub fn basis(&self) -> Vec<FpMatrix> {
        (0..self.space.dim())
            .map(|i| {
                FpMatrix::from_vec(self.space.p(), self.tgt_dim, self.src_dim, self.space.basis().row(i).to_vec())
                    .expect("shape")
            })
            .collect()
    }

    /// Applies the hom with coordinates `coords` to a vector of `M`.
    pub fn apply(&self, coords: &[u32], x: &[u32]) -> Vec<u32> {
        self.evaluate(coords).mul_vec(x)
    }
}

/// `Hom` space where the output module is acted on through `f -> f ∘ ops[i]`.
fn hom_with_source_ops(ring: &Ring, space: Subspace, src_dim: usize, tgt_dim: usize, ops: &[FpMatrix]) -> HomModule {
    let p = ring.p();
    let h = space.dim();
    let basis: Vec<FpMatrix> = (0..h)
        .map(|i| FpMatrix::from_vec(p, tgt_dim, src_dim, space.basis().row(i).to_vec()).expect("shape"))
        .collect();
    let action = ops
        .iter()
        .map(|op| {
            let cols: Vec<Vec<u32>> = basis
                .iter()
                .map(|f| space.coords(f.mul(op).entries()).expect("hom space is a module"))
                .collect();
            FpMatrix::from_col_vecs(p, h, &cols)
        })
        .collect();
    HomModule {
        module: FinModule::new_unchecked(ring, h, action),
        space,
        src_dim,
        tgt_dim,
    }
}

pub fn hom_module(m: &FinModule, n: &FinModule) -> Result<HomModule> {
    if !same_ring(&m.ring, &n.ring) {
        return Err(Error::RingMismatch);
    }
    Ok(hom_with_source_ops(&m.ring, hom_space(m, n), m.dim, n.dim, &m.action))
}

/// Quotient of `M ⊗_{F_p} N` by `(g m) ⊗ n - m ⊗ (g n)` for the ring generators,
/// with operators on `M ⊗ N` descended to the quotient.
fn balanced_tensor(
    p: u32,
    m_dim: usize,
    n_dim: usize,
    balance: &[(&FpMatrix, &FpMatrix)],
    ops: &[FpMatrix],
) -> (usize, Vec<FpMatrix>, FpMatrix) {
    let id_m = FpMatrix::identity(p, m_dim);
    let id_n = FpMatrix::identity(p, n_dim);
    let mut rel_cols = FpMatrix::zeros(p, m_dim * n_dim, 0);
    for (a, b) in balance {
        rel_cols = rel_cols.hstack(&a.kron(&id_n).sub(&id_m.kron(b)));
    }
    let rels = Subspace::col_span(&rel_cols);
    let proj = rels.quotient_projection();
    let lift = lift_matrix(&rels);
    let action = ops.iter().map(|op| proj.mul(op).mul(&lift)).collect();
    (proj.rows(), action, proj)
}

/// `M ⊗_R N`, acted on through the first factor.
pub fn tensor_module(m: &FinModule, n: &FinModule) -> Result<FinModule> {
    Ok(tensor_with_projection(m, n)?.0)
}

/// `M ⊗_R N` together with the projection from `M ⊗_{F_p} N`.
pub fn tensor_with_projection(m: &FinModule, n: &FinModule) -> Result<(FinModule, FpMatrix)> {
    if !same_ring(&m.ring, &n.ring) {
        return Err(Error::RingMismatch);
    }
    let p = m.p();
    let balance: Vec<(&FpMatrix, &FpMatrix)> = m
        .ring
        .generators()
        .iter()
        .map(|&g| (&m.action[g], &n.action[g]))
        .collect();
    let id_n = FpMatrix::identity(p, n.dim);
    let ops: Vec<FpMatrix> = m.action.iter().map(|a| a.kron(&id_n)).collect();
    let (dim, action, proj) = balanced_tensor(p, m.dim, n.dim, &balance, &ops);
    Ok((FinModule::new_unchecked(&m.ring, dim, action), proj))
}

/// Direction of a change of rings between `A` and `R = A ⋉ E`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScalarChange {
    /// Along `A -> R`, `a -> (a, 0)`: an `R`-module becomes an `A`-module.
    Embedding,
    /// Along `R -> A`, `(a, e) -> a`: an `A`-module becomes an `R`-module killed by `0 ⋉ E`.
    Projection,
}

fn base_of(ext: &Ring) -> Result<&Ring> {
    ext.origin().map(|o| &o.base).ok_or(Error::NotTrivialExtension)
}

/// Restriction of scalars between `A` and the trivial extension `ext = A ⋉ E`.
pub fn restrict_scalars(m: &FinModule, ext: &Ring, along: ScalarChange) -> Result<FinModule> {
    let base = base_of(ext)?;
    match along {
        ScalarChange::Embedding => {
            if !same_ring(&m.ring, ext) {
                return Err(Error::RingMismatch);
            }
            let action = m.action[..base.dim()].to_vec();
            Ok(FinModule::new_unchecked(base, m.dim, action))
        }
        ScalarChange::Projection => {
            if !same_ring(&m.ring, base) {
                return Err(Error::RingMismatch);
            }
            let mut action = m.action.clone();
            action.resize(ext.dim(), FpMatrix::zeros(m.p(), m.dim, m.dim));
            Ok(FinModule::new_unchecked(ext, m.dim, action))
        }
    }
}

/// `R` viewed as an `A`-module, `R = A ⋉ E`.
pub fn ring_over_base(ext: &Ring) -> Result<FinModule> {
    restrict_scalars(&regular_module(ext), ext, ScalarChange::Embedding)
}

/// `M ⊗_A R` with `R` acting on the right factor.
pub fn base_change(m: &FinModule, ext: &Ring) -> Result<FinModule> {
    let base = base_of(ext)?;
    if !same_ring(&m.ring, base) {
        return Err(Error::NotTrivialExtension);
    }
    let r_a = ring_over_base(ext)?;
    let p = m.p();
    let balance: Vec<(&FpMatrix, &FpMatrix)> = base
        .generators()
        .iter()
        .map(|&g| (&m.action[g], &r_a.action[g]))
        .collect();
    let id_m = FpMatrix::identity(p, m.dim);
    let ops: Vec<FpMatrix> = (0..ext.dim())
        .map(|i| id_m.kron(ext.basis_mul_matrix(i)))
        .collect();
    let (dim, action, _) = balanced_tensor(p, m.dim, ext.dim(), &balance, &ops);
    Ok(FinModule::new_unchecked(ext, dim, action))
}

/// `Hom_A(R, M)` with `(r f)(x) = f(r x)`.
pub fn coinduced(m: &FinModule, ext: &Ring) -> Result<FinModule> {
    Ok(coinduced_hom(m, ext)?.module)
}

pub fn coinduced_hom(m: &FinModule, ext: &Ring) -> Result<HomModule> {
    let base = base_of(ext)?;
    if !same_ring(&m.ring, base) {
        return Err(Error::NotTrivialExtension);
    }
    let r_a = ring_over_base(ext)?;
    let space = hom_space(&r_a, m);
    let ops: Vec<FpMatrix> = (0..ext.dim()).map(|i| ext.basis_mul_matrix(i).clone()).collect();
    Ok(hom_with_source_ops(ext, space, ext.dim(), m.dim, &ops))
}

/// `J M` for `J` the nilradical (the Jacobson radical of a finite commutative ring).
pub fn radical_submodule(m: &FinModule, sub: &Subspace) -> Subspace {
    let ring = &m.ring;
    let mut vs = Vec::new();
    for j in ring.nilradical().basis_vectors() {
        let a = m.act(&j);
        for v in sub.basis_vectors() {
            vs.push(a.mul_vec(&v));
        }
    }
    Subspace::from_vectors(m.p(), m.dim, &vs)
}

/// `dim_F_p` of the residue field of the local factor `eR`.
fn residue_degree(ring: &Ring, e: &[u32]) -> usize {
    let er = Subspace::col_span(&ring.mul_matrix(e).expect("ring element"));
    let ej: Vec<Vec<u32>> = ring
        .nilradical()
        .basis_vectors()
        .iter()
        .map(|j| ring.mul_elements(e, j))
        .collect();
    er.dim() - Subspace::from_vectors(ring.p(), ring.dim(), &ej).dim()
}

/// A minimal generating set.
///
/// On each local component `eM` a basis of `eM / J eM` is lifted greedily, then
/// generators of different components are added together, so the count is the
/// largest number needed by any component.
pub fn minimal_generators(m: &FinModule) -> Vec<Vec<u32>> {
    let p = m.p();
    let mut per_component: Vec<Vec<Vec<u32>>> = Vec::new();
    let ring = &m.ring;
    for e in ring.primitive_idempotents() {
        let comp = Subspace::col_span(&m.act(e));
        let mut span = radical_submodule(m, &comp);
        let candidates = comp.basis_vectors();
        let chosen = if residue_degree(ring, e) == 1 {
            // every vector outside J M spans a single line of the top
            span.independent_modulo(&candidates)
                .into_iter()
                .map(|i| candidates[i].clone())
                .collect()
        } else {
            let mut chosen = Vec::new();
            for v in candidates {
                if span.contains(&v) {
                    continue;
                }
                span = span.sum(&m.span_of(std::slice::from_ref(&v)));
                chosen.push(v);
            }
            chosen
        };
        per_component.push(chosen);
    }
    let count = per_component.iter().map(Vec::len).max().unwrap_or(0);
    (0..count)
        .map(|j| {
            let mut g = vec![0; m.dim];
            for v in per_component.iter().filter_map(|c| c.get(j)) {
                for (a, &b) in g.iter_mut().zip(v) {
                    *a = crate::fplinalg::add(*a, b, p);
                }
            }
            g
        })
        .collect()
}

pub fn min_generators(m: &FinModule) -> usize {
    minimal_generators(m).len()
}

/// Surjection `R^g -> M` sending the free generators to `gens`.
pub fn cover_from_generators(m: &FinModule, gens: &[Vec<u32>]) -> FinModuleMap {
    let ring = &m.ring;
    let f = free_module(ring, gens.len());
    let mut cols = Vec::with_capacity(f.dim);
    for g in gens {
        for i in 0..ring.dim() {
            cols.push(m.action[i].mul_vec(g));
        }
    }
    FinModuleMap::new_unchecked(&f, m, FpMatrix::from_col_vecs(m.p(), m.dim, &cols))
}

/// Minimal free cover `R^g -> M`.
pub fn free_cover(m: &FinModule) -> FinModuleMap {
    cover_from_generators(m, &minimal_generators(m))
}

/// True iff the free cover splits equivariantly.
pub fn is_projective(m: &FinModule) -> bool {
    if m.dim == 0 {
        return true;
    }
    let cover = free_cover(m);
    if m.ring.local_factor_count() == 1 {
        // projective = free over a local ring; a minimal cover of a free module is an isomorphism
        return cover.source.dim == m.dim;
    }
    splits(&cover)
}

/// Whether a surjection `π : F -> M` has an equivariant section.
fn splits(cover: &FinModuleMap) -> bool {
    let (f, m) = (&cover.source, &cover.target);
    let homs = hom_space(m, f);
    let p = m.p();
    let cols: Vec<Vec<u32>> = homs
        .basis_vectors()
        .into_iter()
        .map(|v| {
            let s = FpMatrix::from_vec(p, f.dim, m.dim, v).expect("shape");
            cover.matrix.mul(&s).entries().to_vec()
        })
        .collect();
    let id = FpMatrix::identity(p, m.dim);
    let a = FpMatrix::from_col_vecs(p, m.dim * m.dim, &cols);
    matches!(a.solve(id.entries()), Ok(Some(_)))
}

pub fn is_injective(m: &FinModule) -> bool {
    is_projective(&dual(m))
}

/// Baer criterion: every hom from every ideal into `M` extends to `R`.
///
/// Restriction `Hom(R, M) ≅ M -> Hom(I, M)` has image of dimension
/// `dim M - dim {x : I x = 0}`.
pub fn is_injective_baer(m: &FinModule, limits: &Limits) -> Result<bool> {
    let ideals = crate::algebra::enumerate_ideals(&m.ring, limits)?;
    let ok = limits.exec.map(&ideals, |ideal| {
        let mut stacked = FpMatrix::zeros(m.p(), 0, m.dim);
        for x in ideal.space().basis_vectors() {
            stacked = stacked.vstack(&m.act(&x));
        }
        let killed = Subspace::kernel_of(&stacked).dim();
        hom_dim(&ideal.as_module(), m).expect("same ring") == m.dim - killed
    });
    Ok(ok.into_iter().all(|b| b))
}

/// Iterated minimal free covers `... -> F_1 -> F_0 -> M -> 0`.
#[derive(Clone, Debug)]
pub struct Resolution {
    module: FinModule,
    /// `covers[k] : F_k -> Ω^k M` (with `Ω^0 M = M`).
    covers: Vec<FinModuleMap>,
    /// `syzygies[k] = Ω^{k+1} M = ker covers[k]`.
    syzygies: Vec<FinModule>,
    inclusions: Vec<FinModuleMap>,
    betti: Vec<usize>,
    complete: bool,
    /// Memoised `boundary_entries`, indexed by degree.
    entries: Vec<Option<BoundaryEntries>>,
}

/// Ring-element coefficients of a boundary map, indexed `[target generator][source generator]`.
type BoundaryEntries = std::sync::Arc<Vec<Vec<Vec<u32>>>>;

impl Resolution {
    pub fn new(m: &FinModule) -> Resolution {
        Resolution {
            module: m.clone(),
            covers: Vec::new(),
            syzygies: Vec::new(),
            inclusions: Vec::new(),
            betti: Vec::new(),
            complete: false,
            entries: Vec::new(),
        }
    }

    /// Builds `F_0 .. F_length`, stopping early once a syzygy vanishes.
    pub fn compute(m: &FinModule, length: usize) -> Resolution {
        let mut r = Resolution::new(m);
        r.extend_to(length);
        r
    }

    pub fn extend_to(&mut self, length: usize) {
        while !self.complete && self.covers.len() <= length {
            self.step();
        }
    }

    fn step(&mut self) {
        let target = self.syzygies.last().unwrap_or(&self.module).clone();
        let cover = free_cover(&target);
        let (ker, incl) = kernel(&cover);
        self.betti.push(cover.source.dim / self.module.ring.dim());
        self.complete = ker.dim == 0;
        self.covers.push(cover);
        self.syzygies.push(ker);
        self.inclusions.push(incl);
    }

    pub fn module(&self) -> &FinModule {
        &self.module
    }

    pub fn betti(&self) -> &[usize] {
        &self.betti
    }

    pub fn covers(&self) -> &[FinModuleMap] {
        &self.covers
    }

    pub fn syzygies(&self) -> &[FinModule] {
        &self.syzygies
    }

    pub fn inclusions(&self) -> &[FinModuleMap] {
        &self.inclusions
    }

    /// True once some syzygy is zero (the resolution is finite).
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Number of free modules computed.
    pub fn len(&self) -> usize {
        self.covers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.covers.is_empty()
    }

    /// Free rank of `F_k`; zero past a complete resolution.
    pub fn rank(&mut self, k: usize) -> usize {
        self.extend_to(k);
        self.betti.get(k).copied().unwrap_or(0)
    }

    /// `d_k : F_k -> F_{k-1}` for `k >= 1`.
    pub fn boundary(&mut self, k: usize) -> Option<FinModuleMap> {
        assert!(k >= 1);
        self.extend_to(k);
        let cover = self.covers.get(k)?;
        Some(self.inclusions[k - 1].compose(cover).expect("composable"))
    }

    /// Ring-element matrix of `d_k`: entry `(j, c)` is the coefficient of generator `j`
    /// of `F_{k-1}` in the image of generator `c` of `F_k`.
    fn boundary_entries(&mut self, k: usize) -> BoundaryEntries {
        if let Some(Some(e)) = self.entries.get(k) {
            return e.clone();
        }
        let ring = self.module.ring.clone();
        let d = ring.dim();
        let (bk, bk1) = (self.rank(k), self.rank(k - 1));
        let computed = match self.boundary(k) {
            None => Vec::new(),
            Some(map) => {
                let images: Vec<Vec<u32>> = (0..bk)
                    .map(|c| map.apply(&free_generator(&ring, bk, c, ring.one())))
                    .collect();
                (0..bk1)
                    .map(|j| images.iter().map(|img| img[j * d..(j + 1) * d].to_vec()).collect())
                    .collect()
            }
        };
        let e = std::sync::Arc::new(computed);
        if self.entries.len() <= k {
            self.entries.resize(k + 1, None);
        }
        self.entries[k] = Some(e.clone());
        e
    }

    /// Matrix of `Hom(d_{i+1}, N) : N^{b_i} -> N^{b_{i+1}}`.
    fn hom_differential(&mut self, n: &FinModule, i: usize) -> FpMatrix {
        let (bi, bi1) = (self.rank(i), self.rank(i + 1));
        let mut m = FpMatrix::zeros(n.p(), bi1 * n.dim, bi * n.dim);
        if bi1 == 0 || bi == 0 {
            return m;
        }
        let entries = self.boundary_entries(i + 1);
        for (j, row) in entries.iter().enumerate() {
            for (c, r) in row.iter().enumerate() {
                m.paste(c * n.dim, j * n.dim, &n.act(r));
            }
        }
        m
    }

    /// Matrix of `d_i ⊗ N : N^{b_i} -> N^{b_{i-1}}`.
    fn tensor_differential(&mut self, n: &FinModule, i: usize) -> FpMatrix {
        let (bi, bi1) = (self.rank(i), if i == 0 { 0 } else { self.rank(i - 1) });
        let mut m = FpMatrix::zeros(n.p(), bi1 * n.dim, bi * n.dim);
        if i == 0 || bi == 0 || bi1 == 0 {
            return m;
        }
        let entries = self.boundary_entries(i);
        for (j, row) in entries.iter().enumerate() {
            for (c, r) in row.iter().enumerate() {
                m.paste(j * n.dim, c * n.dim, &n.act(r));
            }
        }
        m
    }

    /// `dim Ext^i(M, N)`.
    pub fn ext_dim(&mut self, n: &FinModule, i: usize) -> usize {
        let bi = self.rank(i);
        let out = self.hom_differential(n, i).rank();
        let inc = if i == 0 { 0 } else { self.hom_differential(n, i - 1).rank() };
        bi * n.dim - out - inc
    }

    /// `dim Tor_i(M, N)`.
    pub fn tor_dim(&mut self, n: &FinModule, i: usize) -> usize {
        let bi = self.rank(i);
        let out = self.tensor_differential(n, i).rank();
        let inc = self.tensor_differential(n, i + 1).rank();
        bi * n.dim - out - inc
    }
}

/// `dim Ext^i_R(M, N)` from a minimal resolution of `M`.
pub fn ext_dim(m: &FinModule, n: &FinModule, i: usize) -> Result<usize> {
    if !same_ring(&m.ring, &n.ring) {
        return Err(Error::RingMismatch);
    }
    Ok(Resolution::compute(m, i + 1).ext_dim(n, i))
}

/// `dim Tor_i^R(M, N)` from a minimal resolution of `M`.
pub fn tor_dim(m: &FinModule, n: &FinModule, i: usize) -> Result<usize> {
    if !same_ring(&m.ring, &n.ring) {
        return Err(Error::RingMismatch);
    }
    Ok(Resolution::compute(m, i + 1).tor_dim(n, i))
}

/// A homological dimension known up to a search bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DimBound {
    Finite(usize),
    ExceedsBound,
}

impl DimBound {
    pub fn is_finite(self) -> bool {
        matches!(self, DimBound::Finite(_))
    }
}

impl fmt::Display for DimBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DimBound::Finite(d) => write!(f, "{d}"),
            DimBound::ExceedsBound => write!(f, "> bound"),
        }
    }
}

/// Least `k <= bound` with `Ω^k M` projective.
pub fn pd_bounded(m: &FinModule, bound: usize) -> DimBound {
    let mut res = Resolution::new(m);
    for k in 0..=bound {
        let syz = if k == 0 {
            m.clone()
        } else {
            res.extend_to(k - 1);
            match res.syzygies().get(k - 1) {
                Some(s) => s.clone(),
                None => return DimBound::Finite(k - 1),
            }
        };
        if is_projective(&syz) {
            return DimBound::Finite(k);
        }
    }
    DimBound::ExceedsBound
}

/// Injective dimension through base-field duality.
pub fn id_bounded(m: &FinModule, bound: usize) -> DimBound {
    pd_bounded(&dual(m), bound)
}

/// Flat dimension; finite rings are perfect, so it equals the projective dimension.
pub fn fd_bounded(m: &FinModule, bound: usize) -> DimBound {
    pd_bounded(m, bound)
}

/// Screening invariants preserved by isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleInvariants {
    pub dim: usize,
    pub radical_series: Vec<usize>,
    pub socle_series: Vec<usize>,
    pub betti_prefix: Vec<usize>,
    pub endo_dim: usize,
}

pub fn radical_series(m: &FinModule) -> Vec<usize> {
    let mut out = Vec::new();
    let mut cur = Subspace::full(m.p(), m.dim);
    while cur.dim() > 0 {
        cur = radical_submodule(m, &cur);
        out.push(cur.dim());
        if out.len() > m.dim + 1 {
            break;
        }
    }
    out
}

/// Dimensions of `{v : J^k v = 0}` for `k = 1, 2, ..` until the whole module.
pub fn socle_series(m: &FinModule) -> Vec<usize> {
    let p = m.p();
    let rad: Vec<FpMatrix> = m
        .ring
        .nilradical()
        .basis_vectors()
        .iter()
        .map(|j| m.act(j))
        .collect();
    let mut out = Vec::new();
    let mut cur = Subspace::zero(p, m.dim);
    while cur.dim() < m.dim {
        let proj = cur.quotient_projection();
        let mut stacked = FpMatrix::zeros(p, 0, m.dim);
        for a in &rad {
            stacked = stacked.vstack(&proj.mul(a));
        }
        let next = if rad.is_empty() {
            Subspace::full(p, m.dim)
        } else {
            Subspace::kernel_of(&stacked)
        };
        if next.dim() == cur.dim() {
            break;
        }
        cur = next;
        out.push(cur.dim());
    }
    out
}

pub fn invariants(m: &FinModule) -> ModuleInvariants {
    let mut res = Resolution::compute(m, 1);
    ModuleInvariants {
        dim: m.dim,
        radical_series: radical_series(m),
        socle_series: socle_series(m),
        betti_prefix: vec![res.rank(0), res.rank(1)],
        endo_dim: hom_space(m, m).dim(),
    }
}

/// Three-valued isomorphism verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoVerdict {
    Isomorphic(FinModuleMap),
    NotIsomorphic,
    Undecided(String),
}

impl IsoVerdict {
    pub fn is_iso(&self) -> bool {
        matches!(self, IsoVerdict::Isomorphic(_))
    }
}

/// Invariant screen, then an exhaustive scan of `Hom(M, N)` for an invertible element.
pub fn is_isomorphic(m: &FinModule, n: &FinModule, limits: &Limits) -> Result<IsoVerdict> {
    if !same_ring(&m.ring, &n.ring) {
        return Err(Error::RingMismatch);
    }
    if m.dim != n.dim {
        return Ok(IsoVerdict::NotIsomorphic);
    }
    if m == n {
        return Ok(IsoVerdict::Isomorphic(FinModuleMap::identity(m)));
    }
    if invariants(m) != invariants(n) {
        return Ok(IsoVerdict::NotIsomorphic);
    }
    let homs = hom_space(m, n);
    if homs.dim() != hom_space(n, m).dim() || homs.dim() != hom_space(m, m).dim() {
        return Ok(IsoVerdict::NotIsomorphic);
    }
    let p = m.p();
    let basis = homs.basis_vectors();
    let build = |coords: &[u32]| {
        let mut v = vec![0u32; m.dim * n.dim];
        for (c, row) in coords.iter().zip(&basis) {
            if *c == 0 {
                continue;
            }
            for (x, r) in v.iter_mut().zip(row) {
                *x = crate::fplinalg::add(*x, crate::fplinalg::mul(*c, *r, p), p);
            }
        }
        FpMatrix::from_vec(p, n.dim, m.dim, v).expect("shape")
    };
    let Some(count) = checked_pow_within(p as u64, homs.dim(), limits.search_cap) else {
        // cheap probes before giving up: basis elements and their running sums
        let mut acc = vec![0u32; basis.len()];
        for i in 0..basis.len() {
            let mut e = vec![0u32; basis.len()];
            e[i] = 1;
            acc[i] = 1;
            for probe in [&e, &acc] {
                let f = build(probe);
                if f.is_invertible() {
                    return Ok(IsoVerdict::Isomorphic(FinModuleMap::new_unchecked(m, n, f)));
                }
            }
        }
        return Ok(IsoVerdict::Undecided(format!(
            "hom space of dimension {} exceeds search cap {}",
            homs.dim(),
            limits.search_cap
        )));
    };
    let found = limits.exec.find_first(count, |t| {
        let coords = digits(t, p, basis.len());
        let f = build(&coords);
        f.is_invertible().then_some(f)
    });
    Ok(match found {
        Some((_, f)) => IsoVerdict::Isomorphic(FinModuleMap::new_unchecked(m, n, f)),
        None => IsoVerdict::NotIsomorphic,
    })
}

/// Base-`p` digits of `t`, least significant first.
pub(crate) fn digits(mut t: u64, p: u32, len: usize) -> Vec<u32> {
    (0..len)
        .map(|_| {
            let c = (t % p as u64) as u32;
            t /= p as u64;
            c
        })
        .collect()
}

/// Pushout of `f : X -> Y` and `g : X -> Z`.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub module: FinModule,
    pub from_left: FinModuleMap,
    pub from_right: FinModuleMap,
}

/// Cokernel of `(f, -g) : X -> Y ⊕ Z` with its two canonical maps.
pub fn pushout(f: &FinModuleMap, g: &FinModuleMap) -> Result<Pushout> {
    if f.source != g.source {
        return Err(Error::InvalidMap("pushout legs must share a source".into()));
    }
    let p = f.p();
    let ds = direct_sum_maps(&f.target, &g.target)?;
    let h = f.matrix.vstack(&g.matrix.scale(neg(1, p)));
    let hmap = FinModuleMap::new_unchecked(&f.source, &ds.module, h);
    let (po, proj) = cokernel(&hmap);
    Ok(Pushout {
        from_left: proj.compose(&ds.inj_left)?,
        from_right: proj.compose(&ds.inj_right)?,
        module: po,
    })
}

fn check_composable(maps: &[FinModuleMap]) -> Result<()> {
    for (k, w) in maps.windows(2).enumerate() {
        if w[0].target != w[1].source {
            return Err(Error::NotComposable(k));
        }
    }
    Ok(())
}

/// Exactness at every interior node: `im f_k = ker f_{k+1}`.
pub fn is_exact(maps: &[FinModuleMap]) -> Result<bool> {
    check_composable(maps)?;
    Ok(maps.windows(2).all(|w| {
        w[1].matrix.mul(&w[0].matrix).is_zero() && w[0].rank() + w[1].rank() == w[0].target.dim
    }))
}

/// Exactness of `0 -> .. -> 0`: interior exactness, first map injective, last surjective.
pub fn is_exact_flanked(maps: &[FinModuleMap]) -> Result<bool> {
    if !is_exact(maps)? {
        return Ok(false);
    }
    Ok(match (maps.first(), maps.last()) {
        (Some(a), Some(b)) => a.is_injective() && b.is_surjective(),
        _ => true,
    })
}
