//! Dense exact linear algebra over a prime field F_p.
//!
//! Matrices are row-major. Vectors are plain `Vec<u32>` of residues in `[0, p)`.
//! All arithmetic is exact; intermediate products are carried in `u64`.

use std::fmt;

use crate::error::{Error, Result};

/// Largest modulus accepted. Keeps `a * b` for residues inside `u64`.
pub const MAX_PRIME: u64 = u32::MAX as u64;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn check_prime(p: u64) -> Result<u32> {
    if p > MAX_PRIME || !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(p as u32)
}

#[inline]
pub fn add(a: u32, b: u32, p: u32) -> u32 {
    let s = a as u64 + b as u64;
    (if s >= p as u64 { s - p as u64 } else { s }) as u32
}

#[inline]
pub fn sub(a: u32, b: u32, p: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        (a as u64 + p as u64 - b as u64) as u32
    }
}

#[inline]
pub fn neg(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

#[inline]
pub fn mul(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub fn pow(mut base: u32, mut exp: u64, p: u32) -> u32 {
    let mut acc = 1 % p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul(acc, base, p);
        }
        base = mul(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue (Fermat).
pub fn inv(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p), "inverse of zero");
    pow(a, p as u64 - 2, p)
}

/// A residue together with its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FpScalar {
    value: u32,
    p: u32,
}

impl FpScalar {
    pub fn new(value: i64, p: u32) -> Self {
        let v = value.rem_euclid(p as i64) as u32;
        FpScalar { value: v, p }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.p
    }

    pub fn inverse(self) -> Option<Self> {
        (self.value != 0).then(|| FpScalar {
            value: inv(self.value, self.p),
            p: self.p,
        })
    }
}

impl std::ops::Add for FpScalar {
    type Output = FpScalar;
    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        FpScalar {
            value: add(self.value, rhs.value, self.p),
            p: self.p,
        }
    }
}

impl std::ops::Sub for FpScalar {
    type Output = FpScalar;
    fn sub(self, rhs: Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        FpScalar {
            value: sub(self.value, rhs.value, self.p),
            p: self.p,
        }
    }
}

impl std::ops::Mul for FpScalar {
    type Output = FpScalar;
    fn mul(self, rhs: Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        FpScalar {
            value: mul(self.value, rhs.value, self.p),
            p: self.p,
        }
    }
}

/// Dense matrix over F_p.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix(p={}, {}x{})", self.p, self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// Result of row reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: FpMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl FpMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        FpMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    /// Builds from row-major data, reducing every entry mod `p`.
    pub fn from_vec(p: u32, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::dims(format!(
                "{} entries for a {}x{} matrix",
                data.len(),
                rows,
                cols
            )));
        }
        let data = data.into_iter().map(|x| x % p).collect();
        Ok(FpMatrix { p, rows, cols, data })
    }

    /// Builds from signed integer rows; all rows must share a length.
    pub fn from_rows<R: AsRef<[i64]>>(p: u32, rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(p, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, &x) in r.iter().enumerate() {
                m.data[i * cols + j] = x.rem_euclid(p as i64) as u32;
            }
        }
        m
    }

    /// Matrix whose rows are the given vectors (each of length `cols`).
    pub fn from_row_vecs(p: u32, cols: usize, rows: &[Vec<u32>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend_from_slice(r);
        }
        FpMatrix {
            p,
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_col_vecs(p: u32, rows: usize, cols: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(p, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged columns");
            for (i, &x) in c.iter().enumerate() {
                m.data[i * cols.len() + j] = x;
            }
        }
        m
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.p;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn col(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = Self::zeros(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    fn same_modulus(&self, other: &FpMatrix) -> Result<()> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p, other.p));
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.same_modulus(other)?;
        if self.cols != other.rows {
            return Err(Error::dims(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let p = self.p as u64;
        let mut out = Self::zeros(self.p, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|x| *x = 0);
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let orow = other.row(k);
                for (slot, &b) in acc.iter_mut().zip(orow) {
                    *slot = (*slot + a * b as u64) % p;
                }
            }
            for (j, &x) in acc.iter().enumerate() {
                out.data[i * other.cols + j] = x as u32;
            }
        }
        Ok(out)
    }

    /// Matrix product; panics on shape or modulus mismatch.
    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        self.try_mul(other).expect("matrix product")
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols, "vector length");
        let p = self.p as u64;
        (0..self.rows)
            .map(|r| {
                let s = self
                    .row(r)
                    .iter()
                    .zip(v)
                    .fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % p);
                s as u32
            })
            .collect()
    }

    pub fn add(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols, self.p), (other.rows, other.cols, other.p));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| add(a, b, self.p))
            .collect();
        FpMatrix { data, ..*self }
    }

    pub fn sub(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols, self.p), (other.rows, other.cols, other.p));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| sub(a, b, self.p))
            .collect();
        FpMatrix { data, ..*self }
    }

    pub fn scale(&self, s: u32) -> FpMatrix {
        let data = self.data.iter().map(|&a| mul(a, s, self.p)).collect();
        FpMatrix { data, ..*self }
    }

    /// `self += s * other`.
    pub fn add_scaled(&mut self, s: u32, other: &FpMatrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if s == 0 {
            return;
        }
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = add(*a, mul(s, b, self.p), self.p);
        }
    }

    pub fn vstack(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        FpMatrix {
            p: self.p,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn hstack(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        FpMatrix {
            p: self.p,
            rows: self.rows,
            cols,
            data,
        }
    }

    /// Block-diagonal matrix `diag(self, other)`.
    pub fn block_diag(&self, other: &FpMatrix) -> FpMatrix {
        let mut m = Self::zeros(self.p, self.rows + other.rows, self.cols + other.cols);
        m.paste(0, 0, self);
        m.paste(self.rows, self.cols, other);
        m
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &FpMatrix) {
        for r in 0..block.rows {
            let dst = (r0 + r) * self.cols + c0;
            self.data[dst..dst + block.cols].copy_from_slice(block.row(r));
        }
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> FpMatrix {
        let mut m = Self::zeros(self.p, rows, cols);
        for r in 0..rows {
            let src = (r0 + r) * self.cols + c0;
            m.data[r * cols..(r + 1) * cols].copy_from_slice(&self.data[src..src + cols]);
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> FpMatrix {
        let rows: Vec<Vec<u32>> = idx.iter().map(|&i| self.row(i).to_vec()).collect();
        Self::from_row_vecs(self.p, self.cols, &rows)
    }

    /// Reduced row echelon form.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let rank = pivots.len();
        Rref {
            reduced: m,
            pivots,
            rank,
        }
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let p = self.p;
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut row = 0;
        for c in 0..cols {
            if row == self.rows {
                break;
            }
            let Some(piv) = (row..self.rows).find(|&r| self.data[r * cols + c] != 0) else {
                continue;
            };
            if piv != row {
                for j in 0..cols {
                    self.data.swap(piv * cols + j, row * cols + j);
                }
            }
            let s = inv(self.data[row * cols + c], p);
            if s != 1 {
                for j in c..cols {
                    let x = &mut self.data[row * cols + j];
                    *x = mul(*x, s, p);
                }
            }
            let pivot_row: Vec<u32> = self.data[row * cols + c..(row + 1) * cols].to_vec();
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let f = self.data[r * cols + c];
                if f == 0 {
                    continue;
                }
                let nf = neg(f, p) as u64;
                let base = r * cols + c;
                for (k, &pv) in pivot_row.iter().enumerate() {
                    if pv != 0 {
                        let x = &mut self.data[base + k];
                        *x = ((*x as u64 + nf * pv as u64) % p as u64) as u32;
                    }
                }
            }
            pivots.push(c);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Rows form a basis of the right null space `{x : self * x = 0}`.
    ///
    /// The basis is the standard one: row `t` has a 1 in the `t`-th free column
    /// and zeros in every other free column.
    pub fn kernel_basis(&self) -> FpMatrix {
        let Rref {
            reduced, pivots, ..
        } = self.rref();
        let p = self.p;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut out = Self::zeros(p, free.len(), self.cols);
        for (t, &f) in free.iter().enumerate() {
            out.data[t * self.cols + f] = 1 % p;
            for (i, &pc) in pivots.iter().enumerate() {
                out.data[t * self.cols + pc] = neg(reduced.get(i, f), p);
            }
        }
        out
    }

    /// One solution of `self * x = b`, free variables set to zero.
    pub fn solve(&self, b: &[u32]) -> Result<Option<Vec<u32>>> {
        if b.len() != self.rows {
            return Err(Error::dims(format!(
                "right-hand side of length {} for {} equations",
                b.len(),
                self.rows
            )));
        }
        let bcol = FpMatrix::from_col_vecs(self.p, self.rows, &[b.iter().map(|x| x % self.p).collect()]);
        let aug = self.hstack(&bcol);
        let Rref {
            reduced, pivots, ..
        } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0u32; self.cols];
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = reduced.get(i, self.cols);
        }
        Ok(Some(x))
    }

    /// Solves `self * X = B` column by column; `None` if any column fails.
    pub fn solve_matrix(&self, b: &FpMatrix) -> Result<Option<FpMatrix>> {
        if b.rows != self.rows {
            return Err(Error::dims("solve_matrix row mismatch"));
        }
        let aug = self.hstack(b);
        let Rref {
            reduced, pivots, ..
        } = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return Ok(None);
        }
        let mut x = FpMatrix::zeros(self.p, self.cols, b.cols);
        for (i, &c) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.data[c * b.cols + j] = reduced.get(i, self.cols + j);
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<FpMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        self.solve_matrix(&FpMatrix::identity(self.p, n))
            .ok()
            .flatten()
            .filter(|_| self.rank() == n)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn try_kron(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.same_modulus(other)?;
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Self::zeros(self.p, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.data[(i * other.rows + k) * c + j * other.cols + l] =
                            mul(a, other.get(k, l), self.p);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product, `self`-major: entry `((i,k),(j,l)) = self[i][j] * other[k][l]`.
    pub fn kron(&self, other: &FpMatrix) -> FpMatrix {
        self.try_kron(other).expect("kron modulus")
    }

    pub fn pow(&self, mut e: u64) -> FpMatrix {
        assert!(self.is_square());
        let mut acc = FpMatrix::identity(self.p, self.rows);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        acc
    }
}

/// A linear subspace of F_p^n held as an RREF basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: FpMatrix,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in F_{}^{}; {:?})", self.dim(), self.basis.p, self.basis.cols, self.basis.row_vecs())
    }
}

impl Subspace {
    /// Span of the rows of `m`.
    pub fn row_span(m: &FpMatrix) -> Subspace {
        let Rref {
            reduced,
            pivots,
            rank,
        } = m.rref();
        let basis = reduced.submatrix(0, 0, rank, m.cols);
        Subspace { basis, pivots }
    }

    /// Span of the columns of `m`.
    pub fn col_span(m: &FpMatrix) -> Subspace {
        Self::row_span(&m.transpose())
    }

    pub fn from_vectors(p: u32, n: usize, vs: &[Vec<u32>]) -> Subspace {
        Self::row_span(&FpMatrix::from_row_vecs(p, n, vs))
    }

    pub fn zero(p: u32, n: usize) -> Subspace {
        Subspace {
            basis: FpMatrix::zeros(p, 0, n),
            pivots: Vec::new(),
        }
    }

    pub fn full(p: u32, n: usize) -> Subspace {
        Subspace {
            basis: FpMatrix::identity(p, n),
            pivots: (0..n).collect(),
        }
    }

    /// Null space of `m` as a subspace of F_p^{cols}.
    pub fn kernel_of(m: &FpMatrix) -> Subspace {
        Self::row_span(&m.kernel_basis())
    }

    /// Trusted constructor: `basis` must already be in RREF with these pivots.
    pub(crate) fn from_rref_unchecked(basis: FpMatrix, pivots: Vec<usize>) -> Subspace {
        debug_assert_eq!(basis.rows, pivots.len());
        Subspace { basis, pivots }
    }

    pub fn p(&self) -> u32 {
        self.basis.p
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn basis(&self) -> &FpMatrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_vectors(&self) -> Vec<Vec<u32>> {
        self.basis.row_vecs()
    }

    /// `v` minus its projection along the basis onto the pivot coordinates.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let p = self.p();
        let mut w = v.to_vec();
        for (i, &c) in self.pivots.iter().enumerate() {
            let f = w[c];
            if f == 0 {
                continue;
            }
            for (x, &b) in w.iter_mut().zip(self.basis.row(i)) {
                *x = sub(*x, mul(f, b, p), p);
            }
        }
        w
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Coordinates of `v` in the RREF basis, if `v` lies in the subspace.
    pub fn coords(&self, v: &[u32]) -> Option<Vec<u32>> {
        self.contains(v)
            .then(|| self.pivots.iter().map(|&c| v[c]).collect())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|i| self.contains(other.basis.row(i)))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Self::row_span(&self.basis.vstack(&other.basis))
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        // x = sum a_i s_i = sum b_j o_j  <=>  (a, -b) in ker [S^T | O^T]
        let n = self.ambient_dim();
        let st = self.basis.transpose();
        let ot = other.basis.transpose().scale(neg(1, self.p()));
        let ker = st.hstack(&ot).kernel_basis();
        let a = ker.submatrix(0, 0, ker.rows, self.dim());
        let vs = a.mul(&self.basis);
        let _ = n;
        Self::row_span(&vs)
    }

    /// Indices of a greedy choice of `candidates` that are linearly independent
    /// modulo this subspace, in order.
    pub fn independent_modulo(&self, candidates: &[Vec<u32>]) -> Vec<usize> {
        let b = self.dim();
        let cols: Vec<Vec<u32>> = self.basis_vectors().into_iter().chain(candidates.iter().cloned()).collect();
        let m = FpMatrix::from_col_vecs(self.p(), self.ambient_dim(), &cols);
        m.rref().pivots.into_iter().filter(|&c| c >= b).map(|c| c - b).collect()
    }

    /// Standard unit vectors at the non-pivot columns: a complement basis.
    pub fn complement_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient_dim()];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ambient_dim()).filter(|&c| !is_pivot[c]).collect()
    }

    /// Matrix of the projection F_p^n -> F_p^n / self in complement coordinates.
    pub fn quotient_projection(&self) -> FpMatrix {
        let n = self.ambient_dim();
        let comp = self.complement_columns();
        let p = self.p();
        let mut m = FpMatrix::zeros(p, comp.len(), n);
        let mut e = vec![0u32; n];
        for c in 0..n {
            e[c] = 1;
            let r = self.reduce(&e);
            for (i, &cc) in comp.iter().enumerate() {
                m.data[i * n + c] = r[cc];
            }
            e[c] = 0;
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_det2(m: &FpMatrix) -> u32 {
        let p = m.p();
        sub(mul(m.get(0, 0), m.get(1, 1), p), mul(m.get(0, 1), m.get(1, 0), p), p)
    }

    #[test]
    fn primes() {
        assert!(is_prime(2) && is_prime(3) && is_prime(5) && is_prime(65521));
        assert!(!is_prime(0) && !is_prime(1) && !is_prime(4) && !is_prime(91));
        assert_eq!(check_prime(4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn scalar_ops() {
        let a = FpScalar::new(-1, 5);
        assert_eq!(a.value(), 4);
        assert_eq!((a * a).value(), 1);
        assert_eq!(a.inverse().unwrap().value(), 4);
        assert_eq!(FpScalar::new(0, 5).inverse(), None);
    }

    #[test]
    fn rref_identity() {
        let r = FpMatrix::identity(2, 3).rref();
        assert_eq!(r.reduced, FpMatrix::identity(2, 3));
        assert_eq!(r.pivots, vec![0, 1, 2]);
        assert_eq!(r.rank, 3);
    }

    #[test]
    fn rref_duplicate_rows() {
        let r = FpMatrix::from_rows(2, &[[1, 1], [1, 1]]).rref();
        assert_eq!(r.reduced, FpMatrix::from_rows(2, &[[1, 1], [0, 0]]));
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn rref_rank_matches_determinant_oracle() {
        // 2*2 - 1*1 = 3 = 0 mod 3
        let m = FpMatrix::from_rows(3, &[[2, 1], [1, 2]]);
        assert_eq!(brute_det2(&m), 0);
        assert_eq!(m.rank(), 1);
        let m = FpMatrix::from_rows(5, &[[2, 1], [1, 2]]);
        assert_ne!(brute_det2(&m), 0);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn kernel_examples() {
        let k = FpMatrix::from_rows(2, &[[1, 1]]).kernel_basis();
        assert_eq!(k, FpMatrix::from_rows(2, &[[1, 1]]));
        assert_eq!(FpMatrix::identity(3, 4).kernel_basis().rows(), 0);

        // enumerate all 9 pairs of F_3^2 against x + 2y = 0
        let m = FpMatrix::from_rows(3, &[[1, 2]]);
        let sols: Vec<(u32, u32)> = (0..3)
            .flat_map(|x| (0..3).map(move |y| (x, y)))
            .filter(|&(x, y)| (x + 2 * y) % 3 == 0)
            .collect();
        assert_eq!(sols, vec![(0, 0), (1, 1), (2, 2)]);
        assert_eq!(m.kernel_basis(), FpMatrix::from_rows(3, &[[1, 1]]));
    }

    #[test]
    fn solve_examples() {
        let id = FpMatrix::identity(5, 3);
        assert_eq!(id.solve(&[1, 4, 2]).unwrap(), Some(vec![1, 4, 2]));
        let a = FpMatrix::from_rows(2, &[[1, 1]]);
        assert_eq!(a.solve(&[1]).unwrap(), Some(vec![1, 0]));
        let z = FpMatrix::zeros(3, 2, 2);
        assert_eq!(z.solve(&[0, 1]).unwrap(), None);
        assert!(matches!(z.solve(&[1]), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn kron_examples() {
        let i2 = FpMatrix::identity(2, 2);
        assert_eq!(i2.kron(&i2), FpMatrix::identity(2, 4));
        let b = FpMatrix::from_rows(3, &[[1, 2, 0], [0, 1, 1]]);
        assert_eq!(FpMatrix::identity(3, 1).kron(&b), b);

        let a = FpMatrix::from_rows(2, &[[1, 1], [0, 1]]);
        let b = FpMatrix::from_rows(2, &[[0, 1], [1, 1]]);
        let mut direct = FpMatrix::zeros(2, 4, 4);
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        direct.set(2 * i + k, 2 * j + l, a.get(i, j) * b.get(k, l));
                    }
                }
            }
        }
        assert_eq!(a.kron(&b), direct);
        assert!(matches!(
            a.try_kron(&FpMatrix::identity(3, 1)),
            Err(Error::ModulusMismatch(2, 3))
        ));
    }

    #[test]
    fn inverse_and_subspaces() {
        let m = FpMatrix::from_rows(5, &[[1, 2], [3, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), FpMatrix::identity(5, 2));
        assert!(FpMatrix::from_rows(2, &[[1, 1], [1, 1]]).inverse().is_none());

        let s = Subspace::from_vectors(2, 3, &[vec![1, 1, 0], vec![0, 1, 1]]);
        let t = Subspace::from_vectors(2, 3, &[vec![1, 0, 0], vec![0, 1, 1]]);
        assert_eq!(s.intersect(&t).dim(), 1);
        assert!(s.intersect(&t).contains(&[0, 1, 1]));
        assert_eq!(s.sum(&t).dim(), 3);
        assert_eq!(s.coords(&[1, 0, 1]), Some(vec![1, 0]));
        let q = s.quotient_projection();
        assert_eq!(q.rows(), 1);
        assert!(q.mul(&s.basis().transpose()).is_zero());
    }
}
