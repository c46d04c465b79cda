//! Exact dense linear algebra over prime fields GF(p).
//!
//! Matrices are row-major `u32` buffers holding canonical representatives in
//! `[0, p)`. Products accumulate in `u64` and reduce lazily. Row reduction
//! always picks the leftmost pivot column and the first nonzero row below the
//! current position, so every basis derived from [`FpMatrix::rref`] is
//! reproducible.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};

/// A prime modulus `2 <= p <= 2^31 - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u32);

impl Prime {
    pub const MAX: u32 = (1 << 31) - 1;

    pub fn new(p: u64) -> Result<Self> {
        if p < 2 || p > Self::MAX as u64 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Prime(p as u32))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn reduce(self, v: u64) -> u32 {
        (v % self.0 as u64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        if s >= self.0 as u64 {
            (s - self.0 as u64) as u32
        } else {
            s as u32
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (a as u64 + self.0 as u64 - b as u64) as u32
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(self, a: u32) -> u32 {
        debug_assert!(a != 0 && a < self.0);
        let (mut r0, mut r1) = (self.0 as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        t0.rem_euclid(self.0 as i64) as u32
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Maps a signed integer to its canonical representative.
    pub fn from_i64(self, v: i64) -> u32 {
        v.rem_euclid(self.0 as i64) as u32
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A single element of GF(p).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u32,
    p: Prime,
}

impl Fp {
    pub fn new(value: u64, p: Prime) -> Self {
        Fp { value: p.reduce(value), p }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn prime(self) -> Prime {
        self.p
    }

    pub fn inverse(self) -> Option<Fp> {
        (self.value != 0).then(|| Fp { value: self.p.inv(self.value), p: self.p })
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        assert_eq!(self.p, rhs.p, "mixed moduli");
        Fp { value: self.p.add(self.value, rhs.value), p: self.p }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        assert_eq!(self.p, rhs.p, "mixed moduli");
        Fp { value: self.p.sub(self.value, rhs.value), p: self.p }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        assert_eq!(self.p, rhs.p, "mixed moduli");
        Fp { value: self.p.mul(self.value, rhs.value), p: self.p }
    }
}

/// Dense matrix over GF(p).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpMatrix {
    p: Prime,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix {}x{} over GF({})", self.rows, self.cols, self.p)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// Result of [`FpMatrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: FpMatrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl FpMatrix {
    pub fn zeros(p: Prime, rows: usize, cols: usize) -> Self {
        FpMatrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: Prime, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p.get();
        }
        m
    }

    /// Scalar multiple of the identity.
    pub fn scalar(p: Prime, n: usize, c: u32) -> Self {
        let mut m = Self::zeros(p, n, n);
        let c = c % p.get();
        for i in 0..n {
            m.data[i * n + i] = c;
        }
        m
    }

    /// Builds a matrix from rows whose entries must already lie in `[0, p)`.
    pub fn from_rows(p: Prime, rows: &[Vec<u64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            for &v in row {
                if v >= p.get() as u64 {
                    return Err(Error::EntryOutOfRange { value: v, p: p.get() });
                }
                data.push(v as u32);
            }
        }
        Ok(FpMatrix { p, rows: r, cols: c, data })
    }

    /// Builds a `rows x cols` matrix from a flat row-major buffer, reducing mod p.
    pub fn from_flat(p: Prime, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch("buffer length != rows*cols".into()));
        }
        let data = data.into_iter().map(|v| v % p.get()).collect();
        Ok(FpMatrix { p, rows, cols, data })
    }

    pub fn from_fn(p: Prime, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u32) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j) % p.get());
            }
        }
        FpMatrix { p, rows, cols, data }
    }

    /// Column vector from a slice.
    pub fn column(p: Prime, v: &[u32]) -> Self {
        FpMatrix { p, rows: v.len(), cols: 1, data: v.iter().map(|&x| x % p.get()).collect() }
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(p: Prime, rows: usize, cols: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(p, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            debug_assert_eq!(c.len(), rows);
            for i in 0..rows {
                m.data[i * m.cols + j] = c[i];
            }
        }
        m
    }

    #[inline]
    pub fn prime(&self) -> Prime {
        self.p
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
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.p.get();
    }
    #[inline]
    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn col(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }
    pub fn as_slice(&self) -> &[u32] {
        &self.data
    }
    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }
    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == u32::from(i == j)))
    }

    fn same_field(&self, other: &FpMatrix) -> Result<()> {
        if self.p != other.p {
            Err(Error::ModulusMismatch(self.p.get(), other.p.get()))
        } else {
            Ok(())
        }
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare(self.rows, self.cols))
        }
    }

    pub fn checked_mul(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(alloc::format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.mul_raw(other))
    }

    fn mul_raw(&self, other: &FpMatrix) -> FpMatrix {
        let p = self.p.get() as u64;
        let (n, m) = (self.rows, other.cols);
        let mut out = vec![0u32; n * m];
        let pm1 = p - 1;
        // number of products that can be summed before a u64 could overflow
        let budget = if pm1 == 0 { u64::MAX } else { u64::MAX / (pm1 * pm1) - 1 };
        let mut acc = vec![0u64; m];
        for i in 0..n {
            acc.iter_mut().for_each(|a| *a = 0);
            let mut used = 0u64;
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                if used == budget {
                    acc.iter_mut().for_each(|x| *x %= p);
                    used = 1;
                }
                used += 1;
                let row = &other.data[k * m..(k + 1) * m];
                for (x, &b) in acc.iter_mut().zip(row) {
                    *x += a * b as u64;
                }
            }
            for (o, &x) in out[i * m..(i + 1) * m].iter_mut().zip(&acc) {
                *o = (x % p) as u32;
            }
        }
        FpMatrix { p: self.p, rows: n, cols: m, data: out }
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len(), "mul_vec dimension mismatch");
        let p = self.p.get() as u64;
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u64;
                for (k, &a) in self.row(i).iter().enumerate() {
                    if a != 0 && v[k] != 0 {
                        acc = (acc + a as u64 * v[k] as u64) % p;
                    }
                }
                acc as u32
            })
            .collect()
    }

    pub fn checked_add(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.same_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch("add".into()));
        }
        let p = self.p;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| p.add(a, b)).collect();
        Ok(FpMatrix { p, rows: self.rows, cols: self.cols, data })
    }

    pub fn checked_sub(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.same_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch("sub".into()));
        }
        let p = self.p;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| p.sub(a, b)).collect();
        Ok(FpMatrix { p, rows: self.rows, cols: self.cols, data })
    }

    pub fn scalar_mul(&self, c: u32) -> FpMatrix {
        let p = self.p;
        let c = c % p.get();
        FpMatrix { p, rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| p.mul(a, c)).collect() }
    }

    /// `self += c * other`, in place.
    pub fn add_scaled(&mut self, c: u32, other: &FpMatrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let p = self.p;
        let c = c % p.get();
        if c == 0 {
            return;
        }
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = p.add(*a, p.mul(b, c));
        }
    }

    pub fn transpose(&self) -> FpMatrix {
        Self::from_fn(self.p, self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// Kronecker product; entry `((i1,i2),(j1,j2))` is `a[i1][j1] * b[i2][j2]`.
    pub fn kron(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.same_field(other)?;
        let p = self.p;
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Self::zeros(p, r, c);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self.get(i1, j1);
                if a == 0 {
                    continue;
                }
                for i2 in 0..other.rows {
                    for j2 in 0..other.cols {
                        let b = other.get(i2, j2);
                        if b != 0 {
                            out.data[(i1 * other.rows + i2) * c + j1 * other.cols + j2] = p.mul(a, b);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Block-diagonal `diag(self, other)`.
    pub fn direct_sum(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.same_field(other)?;
        let mut out = Self::zeros(self.p, self.rows + other.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, self.cols, other);
        Ok(out)
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &FpMatrix) {
        for i in 0..block.rows {
            let dst = (r0 + i) * self.cols + c0;
            self.data[dst..dst + block.cols].copy_from_slice(block.row(i));
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> FpMatrix {
        Self::from_fn(self.p, rows, cols, |i, j| self.get(r0 + i, c0 + j))
    }

    /// `[self | other]`
    pub fn hstack(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.same_field(other)?;
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack".into()));
        }
        let mut out = Self::zeros(self.p, self.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(0, self.cols, other);
        Ok(out)
    }

    /// `[self ; other]`
    pub fn vstack(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.same_field(other)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch("vstack".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(FpMatrix { p: self.p, rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn select_columns(&self, cols: &[usize]) -> FpMatrix {
        Self::from_fn(self.p, self.rows, cols.len(), |i, j| self.get(i, cols[j]))
    }

    pub fn select_rows(&self, rows: &[usize]) -> FpMatrix {
        Self::from_fn(self.p, rows.len(), self.cols, |i, j| self.get(rows[i], j))
    }

    pub fn trace(&self) -> Result<u32> {
        self.require_square()?;
        Ok((0..self.rows).fold(0, |acc, i| self.p.add(acc, self.get(i, i))))
    }

    /// `self^n` by repeated squaring.
    pub fn pow(&self, mut n: u64) -> Result<FpMatrix> {
        self.require_square()?;
        let mut acc = Self::identity(self.p, self.rows);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul_raw(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul_raw(&base);
            }
        }
        Ok(acc)
    }

    /// Reduced row echelon form with leftmost pivots.
    pub fn rref(&self) -> Rref {
        let p = self.p;
        let mut m = self.clone();
        let (rows, cols) = (m.rows, m.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(piv) = (r..rows).find(|&i| m.data[i * cols + c] != 0) else {
                continue;
            };
            if piv != r {
                for j in c..cols {
                    m.data.swap(piv * cols + j, r * cols + j);
                }
            }
            let inv = p.inv(m.data[r * cols + c]);
            if inv != 1 {
                for j in c..cols {
                    m.data[r * cols + j] = p.mul(m.data[r * cols + j], inv);
                }
            }
            let pivot_row = m.data[r * cols..(r + 1) * cols].to_vec();
            let pp = p.get() as u64;
            for (i, row) in m.data.chunks_mut(cols).enumerate() {
                let f = row[c];
                if i == r || f == 0 {
                    continue;
                }
                let nf = (p.get() - f) as u64;
                for j in c..cols {
                    let b = pivot_row[j];
                    if b != 0 {
                        row[j] = ((row[j] as u64 + nf * b as u64) % pp) as u32;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { reduced: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Basis of the right kernel as the columns of the returned matrix.
    pub fn nullspace(&self) -> FpMatrix {
        let rr = self.rref();
        let p = self.p;
        let free: Vec<usize> = (0..self.cols).filter(|c| !rr.pivots.contains(c)).collect();
        let mut out = Self::zeros(p, self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            out.data[f * free.len() + k] = 1;
            for (i, &pc) in rr.pivots.iter().enumerate() {
                let v = rr.reduced.get(i, f);
                if v != 0 {
                    out.data[pc * free.len() + k] = p.neg(v);
                }
            }
        }
        out
    }

    /// Some `x` with `self * x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[u32]) -> Result<Option<Vec<u32>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(alloc::format!(
                "solve: {} rows but rhs of length {}",
                self.rows,
                b.len()
            )));
        }
        let aug = self.hstack(&FpMatrix::column(self.p, b))?;
        let rr = aug.rref();
        if rr.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0u32; self.cols];
        for (i, &pc) in rr.pivots.iter().enumerate() {
            x[pc] = rr.reduced.get(i, self.cols);
        }
        Ok(Some(x))
    }

    /// Solves `self * X = B` column by column; `None` if any column fails.
    pub fn solve_matrix(&self, b: &FpMatrix) -> Result<Option<FpMatrix>> {
        let aug = self.hstack(b)?;
        let rr = aug.rref();
        if rr.pivots.iter().any(|&c| c >= self.cols) {
            return Ok(None);
        }
        let mut x = Self::zeros(self.p, self.cols, b.cols);
        for (i, &pc) in rr.pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, rr.reduced.get(i, self.cols + j));
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<FpMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let rr = self.hstack(&Self::identity(self.p, n)).ok()?.rref();
        if rr.pivots.len() < n || rr.pivots[n - 1] != n - 1 {
            return None;
        }
        Some(rr.reduced.block(0, n, n, n))
    }

    pub fn is_invertible(&self) -> Result<bool> {
        self.require_square()?;
        Ok(self.rank() == self.rows)
    }

    /// True iff `self^n = 0` where `n` is the size.
    pub fn is_nilpotent(&self) -> Result<bool> {
        self.require_square()?;
        Ok(self.stable_power()?.is_zero())
    }

    /// `self^m` for some `m >= n`; its kernel and image are the Fitting
    /// components of `self`.
    pub fn stable_power(&self) -> Result<FpMatrix> {
        self.require_square()?;
        let mut m = self.clone();
        let mut e = 1usize;
        while e < self.rows {
            m = m.mul_raw(&m);
            e *= 2;
        }
        Ok(m)
    }

    /// Row-major flattening, used to treat matrices as vectors.
    pub fn vectorize(&self) -> Vec<u32> {
        self.data.clone()
    }
}

impl Mul for &FpMatrix {
    type Output = FpMatrix;
    fn mul(self, rhs: &FpMatrix) -> FpMatrix {
        self.checked_mul(rhs).expect("matrix product")
    }
}

impl Add for &FpMatrix {
    type Output = FpMatrix;
    fn add(self, rhs: &FpMatrix) -> FpMatrix {
        self.checked_add(rhs).expect("matrix sum")
    }
}

impl Sub for &FpMatrix {
    type Output = FpMatrix;
    fn sub(self, rhs: &FpMatrix) -> FpMatrix {
        self.checked_sub(rhs).expect("matrix difference")
    }
}

/// Incrementally built echelon basis of a subspace of GF(p)^n.
///
/// Rows are kept reduced against all earlier pivots, so reducing a vector
/// in insertion order is enough to test membership.
#[derive(Clone, Debug)]
pub struct Echelon {
    p: Prime,
    len: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(p: Prime, len: usize) -> Self {
        Echelon { p, len, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.len
    }

    /// Reduces `v` in place; returns the first nonzero position left, if any.
    pub fn reduce(&self, v: &mut [u32]) -> Option<usize> {
        let p = self.p;
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let f = v[pc];
            if f != 0 {
                let nf = p.neg(f);
                for j in pc..self.len {
                    if row[j] != 0 {
                        v[j] = p.add(v[j], p.mul(nf, row[j]));
                    }
                }
            }
        }
        v.iter().position(|&x| x != 0)
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w).is_none()
    }

    /// The stored basis as the rows of a matrix.
    pub fn to_matrix(&self) -> FpMatrix {
        let mut m = FpMatrix::zeros(self.p, self.rows.len(), self.len);
        for (i, r) in self.rows.iter().enumerate() {
            m.data[i * self.len..(i + 1) * self.len].copy_from_slice(r);
        }
        m
    }

    /// Adds `v` if it is independent; returns whether it was added.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        let Some(pc) = self.reduce(&mut w) else {
            return false;
        };
        let inv = self.p.inv(w[pc]);
        for x in w.iter_mut() {
            *x = self.p.mul(*x, inv);
        }
        self.rows.push(w);
        self.pivots.push(pc);
        true
    }
}

/// Row-space basis of the given vectors (rref rows, zero rows dropped).
pub fn span_basis(p: Prime, len: usize, vectors: &[Vec<u32>]) -> FpMatrix {
    let mut m = FpMatrix::zeros(p, vectors.len(), len);
    for (i, v) in vectors.iter().enumerate() {
        m.data[i * len..(i + 1) * len].copy_from_slice(v);
    }
    let rr = m.rref();
    let k = rr.rank();
    rr.reduced.block(0, 0, k, len)
}

/// Dimension of the span of the given vectors.
pub fn span_dim(p: Prime, len: usize, vectors: &[Vec<u32>]) -> usize {
    let mut e = Echelon::new(p, len);
    vectors.iter().filter(|v| e.insert(v)).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn gf(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    fn mat(p: u64, rows: &[&[u64]]) -> FpMatrix {
        FpMatrix::from_rows(gf(p), &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn prime_validation() {
        assert!(Prime::new(2).is_ok());
        assert!(Prime::new(13).is_ok());
        assert!(Prime::new(2147483647).is_ok());
        assert_eq!(Prime::new(1), Err(Error::NotPrime(1)));
        assert_eq!(Prime::new(9), Err(Error::NotPrime(9)));
        assert!(Prime::new(1 << 31).is_err());
    }

    #[test]
    fn field_inverse() {
        let p = gf(13);
        for a in 1..13 {
            assert_eq!(p.mul(a, p.inv(a)), 1);
        }
        let big = gf(2147483647);
        assert_eq!(big.mul(123456789, big.inv(123456789)), 1);
    }

    #[test]
    fn rref_identity_and_zero() {
        let i3 = FpMatrix::identity(gf(2), 3);
        let rr = i3.rref();
        assert_eq!(rr.reduced, i3);
        assert_eq!(rr.pivots, vec![0, 1, 2]);
        assert_eq!(rr.rank(), 3);

        let z = FpMatrix::zeros(gf(3), 2, 4);
        let rr = z.rref();
        assert_eq!(rr.reduced, z);
        assert!(rr.pivots.is_empty());
    }

    #[test]
    fn rref_all_ones_gf2() {
        let rr = mat(2, &[&[1, 1], &[1, 1]]).rref();
        assert_eq!(rr.reduced, mat(2, &[&[1, 1], &[0, 0]]));
        assert_eq!(rr.rank(), 1);
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(FpMatrix::identity(gf(5), 4).nullspace().cols(), 0);
        assert_eq!(FpMatrix::zeros(gf(5), 2, 3).nullspace().cols(), 3);
        let n = mat(2, &[&[1, 1]]).nullspace();
        assert_eq!(n, mat(2, &[&[1], &[1]]));
    }

    #[test]
    fn solve_examples() {
        let id = FpMatrix::identity(gf(7), 3);
        assert_eq!(id.solve(&[3, 5, 6]).unwrap(), Some(vec![3, 5, 6]));
        let z = FpMatrix::zeros(gf(7), 2, 2);
        assert_eq!(z.solve(&[1, 0]).unwrap(), None);
        let a = mat(2, &[&[1, 1], &[0, 1]]);
        assert_eq!(a.solve(&[0, 1]).unwrap(), Some(vec![1, 1]));
        assert!(matches!(a.solve(&[1]), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn products_and_powers() {
        let p = gf(2);
        let k = FpMatrix::identity(p, 2).kron(&FpMatrix::identity(p, 3)).unwrap();
        assert_eq!(k, FpMatrix::identity(p, 6));
        let j = mat(2, &[&[1, 1], &[0, 1]]);
        assert!(j.pow(2).unwrap().is_identity());
        let a = mat(3, &[&[1, 2], &[2, 1]]);
        let b = mat(3, &[&[1, 0, 0], &[0, 0, 0]]);
        assert_eq!(a.direct_sum(&b).unwrap().rank(), a.rank() + b.rank());
    }

    #[test]
    fn mismatches_rejected() {
        let a = FpMatrix::identity(gf(2), 2);
        let b = FpMatrix::identity(gf(3), 2);
        assert!(matches!(a.checked_mul(&b), Err(Error::ModulusMismatch(2, 3))));
        let c = FpMatrix::zeros(gf(2), 3, 1);
        assert!(matches!(a.checked_mul(&c), Err(Error::DimensionMismatch(_))));
        assert!(matches!(c.is_nilpotent(), Err(Error::NotSquare(3, 1))));
        assert!(matches!(
            FpMatrix::from_rows(gf(3), &[vec![3]]),
            Err(Error::EntryOutOfRange { value: 3, p: 3 })
        ));
    }

    #[test]
    fn nilpotent_and_invertible() {
        let strict = mat(5, &[&[0, 1, 4], &[0, 0, 2], &[0, 0, 0]]);
        assert!(strict.is_nilpotent().unwrap());
        assert!(!strict.is_invertible().unwrap());
        let id = FpMatrix::identity(gf(5), 3);
        assert!(id.is_invertible().unwrap());
        assert!(!id.is_nilpotent().unwrap());
        let d = mat(5, &[&[1, 0], &[0, 0]]);
        assert!(!d.is_nilpotent().unwrap());
        assert!(!d.is_invertible().unwrap());
    }

    #[test]
    fn inverse_roundtrip() {
        let a = mat(7, &[&[2, 3, 1], &[0, 1, 4], &[5, 0, 6]]);
        let inv = a.inverse().expect("invertible");
        assert!((&a * &inv).is_identity());
        assert!(mat(7, &[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn large_modulus_products_do_not_overflow() {
        let p = gf(2147483647);
        let n = 40;
        let a = FpMatrix::from_fn(p, n, n, |_, _| 2147483646);
        let sq = &a * &a;
        // (-1)(-1) summed n times
        assert!(sq.as_slice().iter().all(|&v| v == n as u32));
    }

    #[test]
    fn echelon_membership() {
        let p = gf(3);
        let mut e = Echelon::new(p, 3);
        assert!(e.insert(&[1, 2, 0]));
        assert!(e.insert(&[0, 1, 1]));
        assert!(!e.insert(&[1, 0, 1])); // (1,2,0) + (0,1,1) = (1,0,1)
        assert!(e.contains(&[2, 1, 0]));
        assert!(!e.contains(&[0, 0, 1]));
        assert_eq!(e.dim(), 2);
    }
}
