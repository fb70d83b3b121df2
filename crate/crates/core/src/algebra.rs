//! Finite commutative unital F_p-algebras given by structure constants.
//!
//! An algebra of dimension `d` has basis `e_0 .. e_{d-1}` and a tensor `c` with
//! `e_i * e_j = sum_k c[i][j][k] e_k`. Elements are coordinate vectors.
//! Trivial extensions list the base basis first and the module basis second;
//! products list the left factor first.

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fplinalg::{self, add, check_prime, mul, FpMatrix, Subspace};
use crate::modules::{self, FinModule};
use crate::par::{checked_pow_within, Limits};
use crate::poly;

pub type Ring = Arc<FpAlgebra>;

/// Records how a trivial extension `A ⋉ E` was built.
#[derive(Clone, Debug)]
pub struct TrivialExtensionOrigin {
    pub base: Ring,
    pub module: FinModule,
}

#[derive(Clone, Default)]
struct Cache {
    basis_mul: OnceLock<Vec<FpMatrix>>,
    generators: OnceLock<Vec<usize>>,
    nilradical: OnceLock<Subspace>,
    local_factors: OnceLock<usize>,
    idempotents: OnceLock<Vec<Vec<u32>>>,
}

/// Finite commutative unital algebra over F_p.
#[derive(Clone)]
pub struct FpAlgebra {
    p: u32,
    dim: usize,
    names: Vec<String>,
    one: Vec<u32>,
    mul: Vec<u32>,
    origin: Option<TrivialExtensionOrigin>,
    cache: Cache,
}

impl PartialEq for FpAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.dim == other.dim
            && self.one == other.one
            && self.mul == other.mul
            && self.names == other.names
    }
}

impl Eq for FpAlgebra {}

impl fmt::Debug for FpAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FpAlgebra")
            .field("p", &self.p)
            .field("dim", &self.dim)
            .field("names", &self.names)
            .field("trivial_extension", &self.origin.is_some())
            .finish()
    }
}

/// A failed algebra axiom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    Shape(String),
    EntryOutOfRange { index: usize, value: u32 },
    Commutativity { i: usize, j: usize },
    Associativity { i: usize, j: usize, k: usize },
    Unit { i: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Shape(s) => write!(f, "shape: {s}"),
            Violation::EntryOutOfRange { index, value } => {
                write!(f, "entry {index} = {value} not reduced")
            }
            Violation::Commutativity { i, j } => write!(f, "commutativity fails: e{i}*e{j} != e{j}*e{i}"),
            Violation::Associativity { i, j, k } => {
                write!(f, "associativity fails: (e{i}*e{j})*e{k} != e{i}*(e{j}*e{k})")
            }
            Violation::Unit { i } => write!(f, "unit law fails on e{i}"),
        }
    }
}

pub fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl FpAlgebra {
    /// Validated constructor. `mul` is indexed `(i * dim + j) * dim + k`.
    pub fn new(p: u64, names: Vec<String>, one: Vec<u32>, mul: Vec<u32>) -> Result<FpAlgebra> {
        let p = check_prime(p)?;
        let a = Self::new_unchecked(p, names, one, mul);
        let v = a.validate();
        if v.is_empty() {
            Ok(a)
        } else {
            Err(Error::InvalidAlgebra(v.iter().map(|x| x.to_string()).collect()))
        }
    }

    /// Builds without checking the axioms; call [`FpAlgebra::validate`] afterwards.
    pub fn new_unchecked(p: u32, names: Vec<String>, one: Vec<u32>, mul: Vec<u32>) -> FpAlgebra {
        FpAlgebra {
            p,
            dim: names.len(),
            names,
            one,
            mul,
            origin: None,
            cache: Cache::default(),
        }
    }

    /// Checks shape, commutativity, associativity and the unit law.
    pub fn validate(&self) -> Vec<Violation> {
        let d = self.dim;
        let p = self.p;
        let mut out = Vec::new();
        if d == 0 {
            out.push(Violation::Shape("dimension 0".into()));
            return out;
        }
        if self.one.len() != d || self.mul.len() != d * d * d {
            out.push(Violation::Shape(format!(
                "dim {d} needs one of length {d} and {} structure constants",
                d * d * d
            )));
            return out;
        }
        for (index, &value) in self.one.iter().chain(&self.mul).enumerate() {
            if value >= p {
                out.push(Violation::EntryOutOfRange { index, value });
            }
        }
        if !out.is_empty() {
            return out;
        }
        for i in 0..d {
            for j in i + 1..d {
                if self.product_coeffs(i, j) != self.product_coeffs(j, i) {
                    out.push(Violation::Commutativity { i, j });
                }
            }
        }
        for i in 0..d {
            for j in 0..d {
                let ij = self.product_coeffs(i, j).to_vec();
                for k in 0..d {
                    let left = self.mul_basis_right(&ij, k);
                    let jk = self.product_coeffs(j, k).to_vec();
                    let right = self.mul_basis_left(i, &jk);
                    if left != right {
                        out.push(Violation::Associativity { i, j, k });
                    }
                }
            }
        }
        for i in 0..d {
            let mut e = vec![0; d];
            e[i] = 1;
            let prod = self.mul_elements_raw(&self.one, &e);
            if prod != e {
                out.push(Violation::Unit { i });
            }
        }
        out
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn one(&self) -> &[u32] {
        &self.one
    }

    pub fn structure_constants(&self) -> &[u32] {
        &self.mul
    }

    pub fn origin(&self) -> Option<&TrivialExtensionOrigin> {
        self.origin.as_ref()
    }

    /// Number of elements, if it fits in `u64`.
    pub fn cardinality(&self) -> Option<u64> {
        (self.p as u64).checked_pow(self.dim as u32)
    }

    /// Coefficients of `e_i * e_j`.
    pub fn product_coeffs(&self, i: usize, j: usize) -> &[u32] {
        let d = self.dim;
        &self.mul[(i * d + j) * d..(i * d + j + 1) * d]
    }

    fn mul_basis_right(&self, x: &[u32], k: usize) -> Vec<u32> {
        let mut out = vec![0; self.dim];
        for (i, &xi) in x.iter().enumerate() {
            if xi != 0 {
                for (o, &c) in out.iter_mut().zip(self.product_coeffs(i, k)) {
                    *o = add(*o, mul(xi, c, self.p), self.p);
                }
            }
        }
        out
    }

    fn mul_basis_left(&self, i: usize, x: &[u32]) -> Vec<u32> {
        let mut out = vec![0; self.dim];
        for (k, &xk) in x.iter().enumerate() {
            if xk != 0 {
                for (o, &c) in out.iter_mut().zip(self.product_coeffs(i, k)) {
                    *o = add(*o, mul(xk, c, self.p), self.p);
                }
            }
        }
        out
    }

    fn mul_elements_raw(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let p = self.p;
        let mut out = vec![0u32; self.dim];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                let s = mul(xi, yj, p);
                for (o, &c) in out.iter_mut().zip(self.product_coeffs(i, j)) {
                    if c != 0 {
                        *o = add(*o, mul(s, c, p), p);
                    }
                }
            }
        }
        out
    }

    pub fn basis_element(&self, i: usize) -> Vec<u32> {
        let mut e = vec![0; self.dim];
        e[i] = 1;
        e
    }

    pub fn zero(&self) -> Vec<u32> {
        vec![0; self.dim]
    }

    pub fn mul_elements(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        assert_eq!((x.len(), y.len()), (self.dim, self.dim), "element length");
        self.mul_elements_raw(x, y)
    }

    pub fn pow_element(&self, x: &[u32], mut e: u64) -> Vec<u32> {
        let mut acc = self.one.clone();
        let mut b = x.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_elements_raw(&acc, &b);
            }
            b = self.mul_elements_raw(&b, &b);
            e >>= 1;
        }
        acc
    }

    /// Matrix of multiplication by `e_i`.
    pub fn basis_mul_matrix(&self, i: usize) -> &FpMatrix {
        &self.cache.basis_mul.get_or_init(|| {
            (0..self.dim)
                .map(|i| {
                    let cols: Vec<Vec<u32>> =
                        (0..self.dim).map(|j| self.product_coeffs(i, j).to_vec()).collect();
                    FpMatrix::from_col_vecs(self.p, self.dim, &cols)
                })
                .collect()
        })[i]
    }

    /// The `d x d` matrix of `y -> x * y`.
    pub fn mul_matrix(&self, x: &[u32]) -> Result<FpMatrix> {
        if x.len() != self.dim {
            return Err(Error::dims(format!(
                "element of length {} in a {}-dimensional algebra",
                x.len(),
                self.dim
            )));
        }
        let mut m = FpMatrix::zeros(self.p, self.dim, self.dim);
        for (i, &xi) in x.iter().enumerate() {
            m.add_scaled(xi, self.basis_mul_matrix(i));
        }
        Ok(m)
    }

    pub fn is_unit(&self, x: &[u32]) -> bool {
        self.mul_matrix(x).map(|m| m.is_invertible()).unwrap_or(false)
    }

    /// Indices of basis elements generating the algebra together with 1.
    pub fn generators(&self) -> &[usize] {
        self.cache.generators.get_or_init(|| {
            let mut gens: Vec<usize> = Vec::new();
            let mut sub = Subspace::from_vectors(self.p, self.dim, std::slice::from_ref(&self.one));
            for i in 0..self.dim {
                let e = self.basis_element(i);
                if sub.contains(&e) {
                    continue;
                }
                gens.push(i);
                sub = sub.sum(&Subspace::from_vectors(self.p, self.dim, &[e]));
                loop {
                    let mut vs = sub.basis_vectors();
                    for b in sub.basis_vectors() {
                        for &g in &gens {
                            vs.push(self.basis_mul_matrix(g).mul_vec(&b));
                        }
                    }
                    let next = Subspace::from_vectors(self.p, self.dim, &vs);
                    if next.dim() == sub.dim() {
                        break;
                    }
                    sub = next;
                }
            }
            gens
        })
    }

    /// Element with base-`p` digits of `index` as coordinates (coordinate 0 least significant).
    pub fn element_from_index(&self, mut index: u64) -> Vec<u32> {
        let p = self.p as u64;
        (0..self.dim)
            .map(|_| {
                let c = (index % p) as u32;
                index /= p;
                c
            })
            .collect()
    }

    fn enumeration_count(&self, limits: &Limits) -> Option<u64> {
        checked_pow_within(self.p as u64, self.dim, limits.max_elements)
    }

    /// All elements, when the ring has at most `limits.max_elements` of them.
    pub fn elements(&self, limits: &Limits) -> Result<Vec<Vec<u32>>> {
        let n = self
            .enumeration_count(limits)
            .ok_or_else(|| Error::cap("element enumeration", format!("{}^{}", self.p, self.dim), limits.max_elements))?;
        Ok((0..n).map(|i| self.element_from_index(i)).collect())
    }

    pub fn unit_count(&self, limits: &Limits) -> Result<u64> {
        let n = self
            .enumeration_count(limits)
            .ok_or_else(|| Error::cap("unit count", format!("{}^{}", self.p, self.dim), limits.max_elements))?;
        Ok(limits
            .exec
            .filter_map_range(n, |i| self.is_unit(&self.element_from_index(i)).then_some(()))
            .len() as u64)
    }

    /// Kernel of `x -> x^(p^m)` with `p^m >= dim`: the nilradical.
    pub fn nilradical(&self) -> &Subspace {
        self.cache.nilradical.get_or_init(|| {
            let mut q: u64 = 1;
            while q < self.dim as u64 {
                q *= self.p as u64;
            }
            let cols: Vec<Vec<u32>> = (0..self.dim)
                .map(|j| self.pow_element(&self.basis_element(j), q))
                .collect();
            Subspace::kernel_of(&FpMatrix::from_col_vecs(self.p, self.dim, &cols))
        })
    }

    pub fn nilradical_ideal(self: &Ring) -> Ideal {
        Ideal {
            ring: self.clone(),
            space: self.nilradical().clone(),
        }
    }

    /// `{x : x^p = x}`, a subalgebra isomorphic to `F_p^t` spanned by the primitive idempotents.
    fn frobenius_fixed_space(&self) -> Subspace {
        let p = self.p;
        let cols: Vec<Vec<u32>> = (0..self.dim)
            .map(|j| {
                let e = self.basis_element(j);
                let mut f = self.pow_element(&e, p as u64);
                f[j] = fplinalg::sub(f[j], 1, p);
                f
            })
            .collect();
        Subspace::kernel_of(&FpMatrix::from_col_vecs(p, self.dim, &cols))
    }

    /// Number of local factors: the F_p-dimension of `{x : x^p = x}`.
    pub fn local_factor_count(&self) -> usize {
        *self
            .cache
            .local_factors
            .get_or_init(|| self.frobenius_fixed_space().dim())
    }

    /// The primitive idempotents, one per local factor.
    ///
    /// Splits `1` along each basis vector `b` of the Frobenius fixed space: since
    /// `b^p = b`, `1 - (b - c)^(p-1)` is the idempotent on which `b` equals `c`.
    pub fn primitive_idempotents(&self) -> &[Vec<u32>] {
        self.cache.idempotents.get_or_init(|| {
            let p = self.p;
            let mut parts = vec![self.one.clone()];
            for b in self.frobenius_fixed_space().basis_vectors() {
                let mut next = Vec::new();
                for e in &parts {
                    for c in 0..p {
                        let shifted: Vec<u32> = b
                            .iter()
                            .zip(&self.one)
                            .map(|(&x, &u)| fplinalg::sub(x, fplinalg::mul(c, u, p), p))
                            .collect();
                        let off = self.pow_element(&shifted, (p - 1) as u64);
                        let on: Vec<u32> = self.one.iter().zip(&off).map(|(&u, &o)| fplinalg::sub(u, o, p)).collect();
                        let f = self.mul_elements(e, &on);
                        if f.iter().any(|&x| x != 0) {
                            next.push(f);
                        }
                    }
                }
                parts = next;
            }
            parts.sort();
            parts
        })
    }

    /// True iff 0 and 1 are the only idempotents.
    ///
    /// Enumerates elements when the ring is within `limits.max_elements`;
    /// otherwise counts local factors through the fixed space of Frobenius.
    pub fn is_local(&self, limits: &Limits) -> bool {
        match self.enumeration_count(limits) {
            Some(n) => {
                let nontrivial = limits.exec.find_first(n, |i| {
                    let x = self.element_from_index(i);
                    let nontrivial = x != self.one && x.iter().any(|&c| c != 0);
                    (nontrivial && self.mul_elements_raw(&x, &x) == x).then_some(())
                });
                nontrivial.is_none()
            }
            None => self.local_factor_count() == 1,
        }
    }

    /// Checks that `map` (columns = images of basis elements) is an algebra isomorphism onto `other`.
    pub fn is_isomorphic_via(&self, other: &FpAlgebra, map: &FpMatrix) -> bool {
        if self.p != other.p || self.dim != other.dim || !map.is_invertible() {
            return false;
        }
        if map.mul_vec(&self.one) != other.one {
            return false;
        }
        let img: Vec<Vec<u32>> = (0..self.dim).map(|i| map.col(i)).collect();
        (0..self.dim).all(|i| {
            (0..self.dim).all(|j| {
                map.mul_vec(self.product_coeffs(i, j)) == other.mul_elements_raw(&img[i], &img[j])
            })
        })
    }
}

/// The prime field F_p.
pub fn gf(p: u64) -> Result<Ring> {
    let p32 = check_prime(p)?;
    let _ = p32;
    Ok(Arc::new(FpAlgebra::new(p, vec!["1".into()], vec![1], vec![1])?))
}

/// `F_p[x]/(f)` with basis `1, x, .., x^(n-1)`; `f` monic, low degree first.
pub fn poly_quotient(p: u64, f: &[u32]) -> Result<Ring> {
    let pp = check_prime(p)?;
    let f = poly::normalize(f, pp);
    if !poly::is_monic(&f, pp) {
        return Err(Error::NotMonic);
    }
    let n = f.len() - 1;
    // x^k mod f for k < 2n - 1
    let powers: Vec<Vec<u32>> = (0..2 * n)
        .map(|k| {
            let mut mono = vec![0u32; k + 1];
            mono[k] = 1;
            let mut r = poly::rem(&mono, &f, pp);
            r.resize(n, 0);
            r
        })
        .collect();
    let mut mul = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            mul.extend_from_slice(&powers[i + j]);
        }
    }
    let names = (0..n)
        .map(|k| match k {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{k}"),
        })
        .collect();
    let mut one = vec![0; n];
    one[0] = 1;
    Ok(Arc::new(FpAlgebra::new(p, names, one, mul)?))
}

/// The field with `p^deg f` elements, `f` monic irreducible.
pub fn gf_ext(p: u64, f: &[u32]) -> Result<Ring> {
    let pp = check_prime(p)?;
    if !poly::is_irreducible(f, pp)? {
        return Err(Error::NotIrreducible(pp));
    }
    poly_quotient(p, f)
}

/// `A ⋉ E`: `(a, e)(a', e') = (a a', a e' + a' e)`.
pub fn trivial_extension(a: &Ring, e: &FinModule) -> Result<Ring> {
    if !same_ring(a, e.ring()) {
        return Err(Error::RingMismatch);
    }
    let (da, de) = (a.dim, e.dim());
    let d = da + de;
    let mut mul = vec![0u32; d * d * d];
    let idx = |i: usize, j: usize, k: usize| (i * d + j) * d + k;
    for i in 0..da {
        for j in 0..da {
            for (k, &c) in a.product_coeffs(i, j).iter().enumerate() {
                mul[idx(i, j, k)] = c;
            }
        }
        let act = &e.action()[i];
        for t in 0..de {
            for s in 0..de {
                let c = act.get(s, t);
                mul[idx(i, da + t, da + s)] = c;
                mul[idx(da + t, i, da + s)] = c;
            }
        }
    }
    let mut names: Vec<String> = a.names.iter().map(|n| format!("({n},0)")).collect();
    names.extend((0..de).map(|t| format!("(0,e{t})")));
    let mut one = a.one.clone();
    one.resize(d, 0);
    let mut r = FpAlgebra::new(a.p as u64, names, one, mul)?;
    r.origin = Some(TrivialExtensionOrigin {
        base: a.clone(),
        module: e.clone(),
    });
    Ok(Arc::new(r))
}

/// Componentwise product `A x B`.
pub fn product(a: &Ring, b: &Ring) -> Result<Ring> {
    if a.p != b.p {
        return Err(Error::ModulusMismatch(a.p, b.p));
    }
    let (da, db) = (a.dim, b.dim);
    let d = da + db;
    let mut mul = vec![0u32; d * d * d];
    let idx = |i: usize, j: usize, k: usize| (i * d + j) * d + k;
    for i in 0..da {
        for j in 0..da {
            for (k, &c) in a.product_coeffs(i, j).iter().enumerate() {
                mul[idx(i, j, k)] = c;
            }
        }
    }
    for i in 0..db {
        for j in 0..db {
            for (k, &c) in b.product_coeffs(i, j).iter().enumerate() {
                mul[idx(da + i, da + j, da + k)] = c;
            }
        }
    }
    let mut names: Vec<String> = a.names.iter().map(|n| format!("({n},0)")).collect();
    names.extend(b.names.iter().map(|n| format!("(0,{n})")));
    let mut one = a.one.clone();
    one.extend_from_slice(&b.one);
    Ok(Arc::new(FpAlgebra::new(a.p as u64, names, one, mul)?))
}

/// An ideal, held as an F_p-subspace of its ring.
#[derive(Clone, Debug)]
pub struct Ideal {
    ring: Ring,
    space: Subspace,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.space == other.space
    }
}

impl Eq for Ideal {}

impl Ideal {
    /// Ideal generated by the given elements.
    pub fn generated_by(ring: &Ring, elems: &[Vec<u32>]) -> Ideal {
        let mut vs = Vec::new();
        for x in elems {
            for i in 0..ring.dim {
                vs.push(ring.basis_mul_matrix(i).mul_vec(x));
            }
        }
        Ideal {
            ring: ring.clone(),
            space: Subspace::from_vectors(ring.p, ring.dim, &vs),
        }
    }

    /// Wraps a subspace, checking closure under multiplication.
    pub fn from_subspace(ring: &Ring, space: Subspace) -> Result<Ideal> {
        if space.ambient_dim() != ring.dim {
            return Err(Error::dims("subspace ambient dimension differs from ring dimension"));
        }
        if !is_ideal(ring, &space) {
            return Err(Error::InvalidModule("subspace is not an ideal".into()));
        }
        Ok(Ideal {
            ring: ring.clone(),
            space,
        })
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Ideal {
            ring: ring.clone(),
            space: Subspace::zero(ring.p, ring.dim),
        }
    }

    pub fn whole(ring: &Ring) -> Ideal {
        Ideal {
            ring: ring.clone(),
            space: Subspace::full(ring.p, ring.dim),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn contains(&self, x: &[u32]) -> bool {
        self.space.contains(x)
    }

    /// The ideal as a module over its ring.
    pub fn as_module(&self) -> FinModule {
        modules::submodule(&modules::regular_module(&self.ring), &self.space)
            .expect("ideal is a submodule")
            .0
    }

    /// The cyclic module `R / I`.
    pub fn quotient_module(&self) -> FinModule {
        modules::quotient(&modules::regular_module(&self.ring), &self.space)
            .expect("ideal is a submodule")
            .0
    }
}

fn is_ideal(ring: &FpAlgebra, space: &Subspace) -> bool {
    let gens = ring.generators();
    (0..space.dim()).all(|r| {
        let b = space.basis().row(r);
        gens.iter()
            .all(|&g| space.contains(&ring.basis_mul_matrix(g).mul_vec(b)))
    })
}

/// Number of subspaces of F_p^n (sum of Gaussian binomials), saturating.
pub fn subspace_count(p: u64, n: usize) -> u64 {
    // Galois numbers via G(n+1) = 2 G(n) + (p^n - 1) G(n-1)
    let mut prev: u64 = 1; // G(0)
    if n == 0 {
        return 1;
    }
    let mut cur: u64 = 2; // G(1)
    let mut pn: u64 = p; // p^1
    for _ in 1..n {
        let next = cur
            .saturating_mul(2)
            .saturating_add(pn.saturating_sub(1).saturating_mul(prev));
        prev = cur;
        cur = next;
        pn = pn.saturating_mul(p);
    }
    cur
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Every ideal of the ring, each once, ordered by dimension then pivot pattern.
pub fn enumerate_ideals(ring: &Ring, limits: &Limits) -> Result<Vec<Ideal>> {
    let (p, d) = (ring.p, ring.dim);
    let total = subspace_count(p as u64, d);
    if total > limits.subspace_cap {
        return Err(Error::cap("ideal enumeration", total, limits.subspace_cap));
    }
    let mut out = Vec::new();
    for k in 0..=d {
        for pivots in combinations(d, k) {
            // free positions: (row, col) with col > pivot[row] and col not a pivot
            let free: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(r, &pc)| {
                    let pivots = &pivots;
                    (pc + 1..d)
                        .filter(move |c| !pivots.contains(c))
                        .map(move |c| (r, c))
                })
                .collect();
            let count = (p as u64).pow(free.len() as u32);
            let found = limits.exec.filter_map_range(count, |t| {
                let mut m = FpMatrix::zeros(p, k, d);
                for (r, &pc) in pivots.iter().enumerate() {
                    m.set(r, pc, 1);
                }
                let mut x = t;
                for &(r, c) in &free {
                    m.set(r, c, (x % p as u64) as u32);
                    x /= p as u64;
                }
                let space = Subspace::from_rref_unchecked(m, pivots.clone());
                is_ideal(ring, &space).then_some(space)
            });
            out.extend(found.into_iter().map(|space| Ideal {
                ring: ring.clone(),
                space,
            }));
        }
    }
    Ok(out)
}

/// `{x : x * s = 0 for all s in S}`.
pub fn annihilator(ring: &Ring, s: &Subspace) -> Ideal {
    let mut stacked = FpMatrix::zeros(ring.p, 0, ring.dim);
    for g in s.basis_vectors() {
        stacked = stacked.vstack(&ring.mul_matrix(&g).expect("element length"));
    }
    Ideal {
        ring: ring.clone(),
        space: Subspace::kernel_of(&stacked),
    }
}

/// Baer test on every ideal: each `f : I -> A` is multiplication by an element.
///
/// Restriction `A -> Hom_A(I, A)` has image of dimension `dim A - dim Ann(I)`,
/// so every map extends iff that equals `dim Hom_A(I, A)`.
pub fn is_self_injective(ring: &Ring, limits: &Limits) -> Result<bool> {
    let ideals = enumerate_ideals(ring, limits)?;
    Ok(baer_failure(ring, &ideals, limits).is_none())
}

pub(crate) fn baer_failure(ring: &Ring, ideals: &[Ideal], limits: &Limits) -> Option<usize> {
    let regular = modules::regular_module(ring);
    let ok = limits.exec.map(ideals, |ideal| {
        let hom = modules::hom_dim(&ideal.as_module(), &regular).expect("same ring");
        hom == ring.dim - annihilator(ring, ideal.space()).dim()
    });
    ok.iter().position(|&b| !b)
}

/// Outcome of the double-annihilator test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QfVerdict {
    pub is_qf: bool,
    /// First ideal with `Ann(Ann(I)) != I`.
    pub witness: Option<Ideal>,
    pub ideals_checked: usize,
}

pub fn is_qf(ring: &Ring, limits: &Limits) -> Result<QfVerdict> {
    let ideals = enumerate_ideals(ring, limits)?;
    Ok(qf_from_ideals(ring, &ideals, limits))
}

pub(crate) fn qf_from_ideals(ring: &Ring, ideals: &[Ideal], limits: &Limits) -> QfVerdict {
    let ok = limits.exec.map(ideals, |i| double_annihilator_holds(ring, i));
    let witness = ok.iter().position(|&b| !b).map(|i| ideals[i].clone());
    QfVerdict {
        is_qf: witness.is_none(),
        witness,
        ideals_checked: ideals.len(),
    }
}

pub fn double_annihilator_holds(ring: &Ring, ideal: &Ideal) -> bool {
    let ann = annihilator(ring, ideal.space());
    annihilator(ring, ann.space()).space() == ideal.space()
}

/// Aggregated ring predicates; cap-limited fields are `None` when unavailable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RingReport {
    pub p: u32,
    pub dim: usize,
    pub is_local: bool,
    pub unit_count: Option<u64>,
    pub nilradical_dim: usize,
    pub ideal_count: Option<usize>,
    pub is_self_injective: Option<bool>,
    pub is_qf: Option<bool>,
    /// Basis of an ideal violating double annihilation, when not QF.
    pub qf_witness: Option<Vec<Vec<u32>>>,
    pub unavailable: Vec<String>,
}

pub fn ring_report(ring: &Ring, limits: &Limits) -> RingReport {
    let mut unavailable = Vec::new();
    let unit_count = ring
        .unit_count(limits)
        .map_err(|e| unavailable.push(format!("unit_count: {e}")))
        .ok();
    let ideals = enumerate_ideals(ring, limits)
        .map_err(|e| unavailable.push(format!("ideals: {e}")))
        .ok();
    let (ideal_count, is_self_injective, is_qf, qf_witness) = match &ideals {
        Some(ideals) => {
            let qf = qf_from_ideals(ring, ideals, limits);
            let si = baer_failure(ring, ideals, limits).is_none();
            (
                Some(ideals.len()),
                Some(si),
                Some(qf.is_qf),
                qf.witness.map(|w| w.space().basis_vectors()),
            )
        }
        None => (None, None, None, None),
    };
    RingReport {
        p: ring.p,
        dim: ring.dim,
        is_local: ring.is_local(limits),
        unit_count,
        nilradical_dim: ring.nilradical().dim(),
        ideal_count,
        is_self_injective,
        is_qf,
        qf_witness,
        unavailable,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modules::{free_module, quotient_by_elements, regular_module};

    fn lim() -> Limits {
        Limits::default()
    }

    fn kxk(p: u64, n: usize) -> Ring {
        let k = gf(p).unwrap();
        trivial_extension(&k, &free_module(&k, n)).unwrap()
    }

    /// Brute-force nilpotent set: x with x^dim = 0.
    fn brute_nilpotents(r: &FpAlgebra) -> Vec<Vec<u32>> {
        let n = r.cardinality().unwrap();
        (0..n)
            .map(|i| r.element_from_index(i))
            .filter(|x| r.pow_element(x, r.dim() as u64).iter().all(|&c| c == 0))
            .collect()
    }

    #[test]
    fn idempotents_split_the_unit() {
        let k = gf(3).unwrap();
        let r = product(&product(&k, &k).unwrap(), &kxk(3, 1)).unwrap();
        let es = r.primitive_idempotents();
        assert_eq!(es.len(), 3);
        let mut total = r.zero();
        for (i, e) in es.iter().enumerate() {
            assert_eq!(&r.mul_elements(e, e), e);
            for f in &es[i + 1..] {
                assert_eq!(r.mul_elements(e, f), r.zero());
            }
            total = total.iter().zip(e).map(|(&a, &b)| add(a, b, 3)).collect();
        }
        assert_eq!(total, r.one());
        let f4 = gf_ext(2, &[1, 1, 1]).unwrap();
        assert_eq!(f4.primitive_idempotents(), [f4.one().to_vec()]);
    }

    #[test]
    fn prime_fields() {
        let f2 = gf(2).unwrap();
        assert_eq!(f2.dim(), 1);
        assert_eq!(f2.cardinality(), Some(2));
        assert_eq!(gf(3).unwrap().cardinality(), Some(3));
        assert_eq!(gf(4).unwrap_err(), Error::NotPrime(4));
        assert!(f2.validate().is_empty());
    }

    #[test]
    fn validate_reports_violations() {
        // F_2[x]/(x^2) with e0*e1 != e1*e0
        let mut mul = poly_quotient(2, &[0, 0, 1]).unwrap().structure_constants().to_vec();
        // c[0][1] = (0,1) -> (1,1)
        mul[2] = 1;
        let bad = FpAlgebra::new_unchecked(2, vec!["1".into(), "x".into()], vec![1, 0], mul);
        assert!(bad.validate().contains(&Violation::Commutativity { i: 0, j: 1 }));

        // perturb x*x in F_3[x]/(x^2): x^2 = 1 + 0x would be fine (F_3[x]/(x^2-1)); instead
        // perturb in the 3-dim algebra F_2[x]/(x^3): set x*x = x^2 + 1 only on one side of the
        // associativity triple and restore commutativity.
        let a = poly_quotient(2, &[0, 0, 0, 1]).unwrap();
        let d = 3;
        let mut mul = a.structure_constants().to_vec();
        // x^2 * x^2 = x^4 = 0 ; set it to x instead (symmetric, single entry)
        mul[(2 * d + 2) * d + 1] = 1;
        let bad = FpAlgebra::new_unchecked(2, a.names().to_vec(), a.one().to_vec(), mul);
        let v = bad.validate();
        assert!(v.iter().all(|x| matches!(x, Violation::Associativity { .. })));
        assert!(v.contains(&Violation::Associativity { i: 1, j: 1, k: 2 }));
        assert!(matches!(
            FpAlgebra::new(2, bad.names().to_vec(), bad.one().to_vec(), bad.structure_constants().to_vec()),
            Err(Error::InvalidAlgebra(_))
        ));
    }

    #[test]
    fn polynomial_quotients() {
        let a = poly_quotient(2, &[0, 0, 1]).unwrap();
        assert_eq!(a.product_coeffs(1, 1), &[0, 0]);
        let f4 = poly_quotient(2, &[1, 1, 1]).unwrap();
        for i in 1..4 {
            assert!(f4.is_unit(&f4.element_from_index(i)));
        }
        let b = poly_quotient(3, &[0, 0, 1]).unwrap();
        assert_eq!(b.unit_count(&lim()).unwrap(), 6);
        assert_eq!(poly_quotient(2, &[0, 0, 2]).unwrap_err(), Error::NotMonic);
        assert_eq!(gf_ext(2, &[0, 0, 1]).unwrap_err(), Error::NotIrreducible(2));
    }

    #[test]
    fn trivial_extension_products() {
        let r = kxk(2, 1);
        // (1,1)(1,1) = (1, 1+1) = (1, 0)
        assert_eq!(r.mul_elements(&[1, 1], &[1, 1]), vec![1, 0]);
        assert_eq!(r.mul_elements(&[0, 1], &[0, 1]), vec![0, 0]);
        let q = poly_quotient(2, &[0, 0, 1]).unwrap();
        assert!(r.is_isomorphic_via(&q, &FpMatrix::identity(2, 2)));
        for p in [2, 3, 5] {
            let r = kxk(p, 1);
            let q = poly_quotient(p, &[0, 0, 1]).unwrap();
            assert!(r.is_isomorphic_via(&q, &FpMatrix::identity(p as u32, 2)));
        }
    }

    #[test]
    fn products_of_algebras() {
        let f2 = gf(2).unwrap();
        let pr = product(&f2, &f2).unwrap();
        let idem: Vec<_> = pr
            .elements(&lim())
            .unwrap()
            .into_iter()
            .filter(|x| pr.mul_elements(x, x) == *x && *x != pr.zero() && x != pr.one())
            .collect();
        assert_eq!(idem, vec![vec![1, 0], vec![0, 1]]);
        assert!(!pr.is_local(&lim()));
        assert_eq!(pr.local_factor_count(), 2);
        assert!(pr.validate().is_empty());
        assert_eq!(product(&f2, &gf(3).unwrap()).unwrap_err(), Error::ModulusMismatch(2, 3));
    }

    #[test]
    fn multiplication_matrices() {
        let r = kxk(2, 1);
        assert_eq!(r.mul_matrix(r.one()).unwrap(), FpMatrix::identity(2, 2));
        let t = r.mul_matrix(&[0, 1]).unwrap();
        assert!(!t.is_zero() && t.mul(&t).is_zero());
        let x = [1, 1];
        let y = [0, 1];
        let sum = r.mul_matrix(&[1, 0]).unwrap();
        assert_eq!(r.mul_matrix(&x).unwrap(), sum.add(&r.mul_matrix(&y).unwrap()));
        assert!(r.mul_matrix(&[1]).is_err());
    }

    #[test]
    fn units() {
        let r = kxk(2, 1);
        assert!(r.is_unit(r.one()));
        assert!(!r.is_unit(&[0, 1]));
        assert_eq!(r.unit_count(&lim()).unwrap(), 2);
    }

    #[test]
    fn nilradicals() {
        assert_eq!(gf(2).unwrap().nilradical().dim(), 0);
        let r = kxk(2, 1);
        assert_eq!(r.nilradical().basis_vectors(), vec![vec![0, 1]]);
        let a = poly_quotient(2, &[0, 0, 1]).unwrap();
        let k = quotient_by_elements(&a, &[vec![0, 1]]).unwrap();
        let r = trivial_extension(&a, &k).unwrap();
        assert_eq!(r.nilradical().dim(), 2);
        for ring in [kxk(2, 2), kxk(3, 1), product(&a, &gf(2).unwrap()).unwrap(), r] {
            let brute = brute_nilpotents(&ring);
            assert_eq!(brute.len() as u64, 2u64.pow(0).max((ring.p() as u64).pow(ring.nilradical().dim() as u32)));
            assert!(brute.iter().all(|x| ring.nilradical().contains(x)));
        }
    }

    #[test]
    fn locality() {
        assert!(gf(5).unwrap().is_local(&lim()));
        assert!(kxk(2, 1).is_local(&lim()));
        let tiny = Limits { max_elements: 1, ..lim() };
        assert!(kxk(2, 1).is_local(&tiny));
        let f2 = gf(2).unwrap();
        let pr = product(&f2, &f2).unwrap();
        assert!(!pr.is_local(&lim()));
        assert!(!pr.is_local(&tiny));
        let f4 = gf_ext(2, &[1, 1, 1]).unwrap();
        assert!(f4.is_local(&tiny));
    }

    #[test]
    fn subspace_counts() {
        assert_eq!(subspace_count(2, 1), 2);
        assert_eq!(subspace_count(2, 2), 5);
        assert_eq!(subspace_count(2, 3), 16);
        assert_eq!(subspace_count(2, 4), 67);
        assert_eq!(subspace_count(3, 2), 6);
    }

    /// Filters the subspaces of F_2^n listed as explicit vector sets.
    fn brute_ideal_count(r: &Ring) -> usize {
        let elems = r.elements(&lim()).unwrap();
        let n = elems.len();
        // a subset is a subspace+ideal iff closed under + and under multiplication
        let mut count = 0;
        for mask in 0u64..(1u64 << n) {
            if mask & 1 == 0 {
                continue; // must contain 0 (index 0)
            }
            let members: Vec<&Vec<u32>> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| &elems[i]).collect();
            let inside = |v: &Vec<u32>| members.contains(&v);
            let closed = members.iter().all(|x| {
                members.iter().all(|y| {
                    let s: Vec<u32> = x.iter().zip(y.iter()).map(|(a, b)| (a + b) % 2).collect();
                    inside(&s)
                }) && elems.iter().all(|r0| inside(&r.mul_elements(r0, x)))
            });
            if closed {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn ideal_enumeration() {
        assert_eq!(enumerate_ideals(&gf(2).unwrap(), &lim()).unwrap().len(), 2);
        let r = kxk(2, 1);
        assert_eq!(enumerate_ideals(&r, &lim()).unwrap().len(), 3);
        let r2 = kxk(2, 2);
        let n = enumerate_ideals(&r2, &lim()).unwrap().len();
        assert_eq!(n, brute_ideal_count(&r2));
        assert_eq!(n, 6); // 0, three lines in 0⋉E, 0⋉E, R
        let capped = Limits { subspace_cap: 10, ..lim() };
        assert!(matches!(enumerate_ideals(&r2, &capped), Err(Error::CapExceeded { .. })));
        let seq = enumerate_ideals(&r2, &Limits::sequential()).unwrap();
        assert_eq!(seq, enumerate_ideals(&r2, &lim()).unwrap());
    }

    #[test]
    fn annihilators() {
        let r = kxk(2, 1);
        assert_eq!(annihilator(&r, &Subspace::full(2, 2)).dim(), 0);
        let e = Subspace::from_vectors(2, 2, &[vec![0, 1]]);
        assert_eq!(annihilator(&r, &e).space(), &e);

        let r2 = kxk(2, 2);
        let line = Subspace::from_vectors(2, 3, &[vec![0, 1, 0]]);
        let ann = annihilator(&r2, &line);
        let annann = annihilator(&r2, ann.space());
        assert_eq!(annann.space(), &Subspace::from_vectors(2, 3, &[vec![0, 1, 0], vec![0, 0, 1]]));
    }

    #[test]
    fn self_injectivity_and_qf() {
        let l = lim();
        assert!(is_self_injective(&gf(3).unwrap(), &l).unwrap());
        assert!(is_self_injective(&kxk(2, 1), &l).unwrap());
        assert!(!is_self_injective(&kxk(2, 2), &l).unwrap());

        assert!(is_qf(&kxk(2, 1), &l).unwrap().is_qf);
        let v = is_qf(&kxk(2, 2), &l).unwrap();
        assert!(!v.is_qf);
        let w = v.witness.unwrap();
        assert_eq!(w.dim(), 1);
        assert!(w.space().basis_vectors()[0][0] == 0);
        assert!(is_qf(&poly_quotient(2, &[0, 0, 1]).unwrap(), &l).unwrap().is_qf);
    }

    #[test]
    fn reports() {
        let rep = ring_report(&gf(2).unwrap(), &lim());
        assert_eq!(
            (rep.is_local, rep.unit_count, rep.nilradical_dim, rep.ideal_count, rep.is_self_injective, rep.is_qf),
            (true, Some(1), 0, Some(2), Some(true), Some(true))
        );
        let rep = ring_report(&kxk(2, 1), &lim());
        assert_eq!(
            (rep.is_local, rep.unit_count, rep.nilradical_dim, rep.ideal_count, rep.is_self_injective, rep.is_qf),
            (true, Some(2), 1, Some(3), Some(true), Some(true))
        );
        let rep = ring_report(&kxk(2, 2), &lim());
        assert!(rep.is_local && rep.is_qf == Some(false) && rep.qf_witness.is_some());
        let rep = ring_report(&kxk(2, 2), &Limits { subspace_cap: 3, max_elements: 2, ..lim() });
        assert_eq!(rep.is_qf, None);
        assert_eq!(rep.unavailable.len(), 2);
    }

    #[test]
    fn every_nonzero_ideal_meets_the_square_zero_part() {
        // holds for faithful E; k over F_2[x]/(x^2) is not faithful and (x, 0) misses 0 ⋉ k
        let a = poly_quotient(2, &[0, 0, 1]).unwrap();
        let k = quotient_by_elements(&a, &[vec![0, 1]]).unwrap();
        let unfaithful = trivial_extension(&a, &k).unwrap();
        let x0 = Ideal::generated_by(&unfaithful, &[vec![0, 1, 0]]);
        assert_eq!(x0.dim(), 1);
        for r in [kxk(2, 1), kxk(2, 2), kxk(3, 1), trivial_extension(&a, &regular_module(&a)).unwrap()] {
            let da = r.origin().unwrap().base.dim();
            let e_part = Subspace::from_vectors(
                r.p(),
                r.dim(),
                &(da..r.dim()).map(|i| r.basis_element(i)).collect::<Vec<_>>(),
            );
            for ideal in enumerate_ideals(&r, &lim()).unwrap() {
                if ideal.dim() > 0 {
                    assert!(ideal.space().intersect(&e_part).dim() > 0);
                }
            }
        }
    }
}
