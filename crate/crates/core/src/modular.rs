//! Residue arithmetic and dense linear algebra modulo a word-sized prime.
//!
//! Elimination keeps its working rows as `u64` and defers reduction: each
//! row update adds at most `(p-1)²`, so a row only needs reducing when it is
//! about to be used as a pivot row or a multiplier, or when the accumulated
//! headroom runs out. For the primes used by the engine (`p < 2^16`) that
//! headroom is billions of updates, which leaves the inner loop a plain
//! multiply-add.

use crate::error::{Error, Result};

/// Trial division; moduli here are at most 32 bits.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// A prime modulus below `2^32` with a precomputed Barrett constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Modulus {
    p: u32,
    barrett: u64,
}

impl Modulus {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        Ok(Modulus {
            p,
            barrett: u64::MAX / p as u64,
        })
    }

    #[inline]
    pub fn value(self) -> u32 {
        self.p
    }

    /// `x mod p` for any `x < 2^64`.
    #[inline]
    pub fn reduce(self, x: u64) -> u32 {
        let q = ((x as u128 * self.barrett as u128) >> 64) as u64;
        let p = self.p as u64;
        let mut r = x - q * p;
        while r >= p {
            r -= p;
        }
        r as u32
    }

    pub fn from_i64(self, x: i64) -> u32 {
        let r = x.rem_euclid(self.p as i64);
        r as u32
    }

    /// Representative in `(-p/2, p/2]`.
    pub fn to_signed(self, x: u32) -> i64 {
        let p = self.p as i64;
        let x = x as i64;
        if x > p / 2 {
            x - p
        } else {
            x
        }
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        if s >= self.p as u64 {
            (s - self.p as u64) as u32
        } else {
            s as u32
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (a as u64 + self.p as u64 - b as u64) as u32
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        self.reduce(a as u64 * b as u64)
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse by Fermat; `None` for zero.
    pub fn inv(self, a: u32) -> Option<u32> {
        if a.is_multiple_of(self.p) {
            None
        } else {
            Some(self.pow(a, self.p as u64 - 2))
        }
    }

    /// How many `(p-1)²` increments a reduced entry can absorb before a
    /// `u64` overflows.
    fn headroom(self) -> u64 {
        let p = self.p as u64;
        (u64::MAX - p)
            .checked_div((p - 1) * (p - 1))
            .unwrap_or(u64::MAX)
    }
}

/// Square matrix of residues modulo a prime, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ResidueMatrix {
    modulus: Modulus,
    dim: usize,
    entries: Vec<u32>,
}

impl ResidueMatrix {
    /// Checks primality of `p`, the entry count and that every entry is
    /// reduced.
    pub fn new(p: u32, dim: usize, entries: Vec<u32>) -> Result<Self> {
        let modulus = Modulus::new(p)?;
        if entries.len() != dim * dim {
            return Err(Error::LengthMismatch {
                expected: dim * dim,
                actual: entries.len(),
            });
        }
        if let Some(&e) = entries.iter().find(|&&e| e >= p) {
            return Err(Error::ResidueOutOfRange {
                residue: e as u64,
                prime: p as u64,
            });
        }
        Ok(ResidueMatrix {
            modulus,
            dim,
            entries,
        })
    }

    /// Builds from signed rows, reducing each entry.
    pub fn from_signed_rows(p: u32, rows: &[Vec<i64>]) -> Result<Self> {
        let modulus = Modulus::new(p)?;
        let dim = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::LengthMismatch {
                expected: dim,
                actual: r.len(),
            });
        }
        Ok(Self::from_fn(modulus, dim, |i, j| {
            modulus.from_i64(rows[i][j])
        }))
    }

    /// `f` must return reduced residues.
    pub fn from_fn(modulus: Modulus, dim: usize, mut f: impl FnMut(usize, usize) -> u32) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let e = f(i, j);
                debug_assert!(e < modulus.value());
                entries.push(e);
            }
        }
        ResidueMatrix {
            modulus,
            dim,
            entries,
        }
    }

    pub fn identity(modulus: Modulus, dim: usize) -> Self {
        Self::from_fn(modulus, dim, |i, j| u32::from(i == j))
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn prime(&self) -> u32 {
        self.modulus.value()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: u32) {
        debug_assert!(value < self.prime());
        self.entries[i * self.dim + j] = value;
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn diagonal(&self) -> Vec<u32> {
        (0..self.dim).map(|i| self.get(i, i)).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Entries in ascending order.
    pub fn sorted_entries(&self) -> Vec<u32> {
        let mut e = self.entries.clone();
        e.sort_unstable();
        e
    }

    /// `out[p(i)][p(j)] = self[i][j]`, i.e. `PᵀAP` for the permutation matrix
    /// of `p`.
    pub fn permuted(&self, p: &crate::graph::Permutation) -> Self {
        let n = self.dim;
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[p.apply(i) * n + p.apply(j)] = self.get(i, j);
            }
        }
        ResidueMatrix {
            modulus: self.modulus,
            dim: n,
            entries,
        }
    }

    /// Principal submatrix with the listed rows and columns removed.
    pub fn without(&self, removed: &[usize]) -> Self {
        let keep: Vec<usize> = (0..self.dim).filter(|i| !removed.contains(i)).collect();
        Self::from_fn(self.modulus, keep.len(), |a, b| self.get(keep[a], keep[b]))
    }

    /// Copy with the listed diagonal entries replaced by `value`.
    pub fn with_diagonal(&self, positions: &[usize], value: u32) -> Self {
        let mut out = self.clone();
        for &i in positions {
            out.set(i, i, value);
        }
        out
    }

    /// `self + t·I`.
    pub fn shifted(&self, t: u32) -> Self {
        let m = self.modulus;
        let mut out = self.clone();
        for i in 0..self.dim {
            out.set(i, i, m.add(self.get(i, i), t));
        }
        out
    }

    pub fn mul(&self, other: &ResidueMatrix) -> Result<Self> {
        if self.dim != other.dim || self.modulus != other.modulus {
            return Err(Error::LengthMismatch {
                expected: self.dim,
                actual: other.dim,
            });
        }
        let n = self.dim;
        let m = self.modulus;
        let mut acc = vec![0u64; n * n];
        let other_rows: Vec<u64> = other.entries.iter().map(|&x| x as u64).collect();
        let headroom = m.headroom();
        let mut pending = 0;
        for k in 0..n {
            for i in 0..n {
                let a = self.get(i, k) as u64;
                if a != 0 {
                    axpy(
                        &mut acc[i * n..(i + 1) * n],
                        &other_rows[k * n..(k + 1) * n],
                        a,
                    );
                }
            }
            pending += 1;
            if pending >= headroom {
                acc.iter_mut().for_each(|x| *x = m.reduce(*x) as u64);
                pending = 0;
            }
        }
        Ok(ResidueMatrix {
            modulus: m,
            dim: n,
            entries: acc.into_iter().map(|x| m.reduce(x)).collect(),
        })
    }

    /// Determinant by Gaussian elimination. The empty matrix has
    /// determinant 1.
    pub fn det(&self) -> u32 {
        let n = self.dim;
        let m = self.modulus;
        if n == 0 {
            return 1 % m.value();
        }
        let mut rows = Lazy::new(self);
        let mut det = 1u32;
        for k in 0..n {
            let Some(pivot) = rows.find_pivot(k, k..n) else {
                return 0;
            };
            if pivot != k {
                rows.swap(pivot, k);
                det = m.neg(det);
            }
            rows.reduce_row(k, k..n);
            let pv = rows.get(k, k) as u32;
            det = m.mul(det, pv);
            let inv = m.inv(pv).expect("pivot is nonzero");
            for r in (k + 1)..n {
                let e = rows.get(r, k) as u32;
                if e != 0 {
                    let f = m.neg(m.mul(e, inv));
                    rows.eliminate(r, k, f, (k + 1)..n);
                }
            }
            rows.tick();
        }
        det
    }

    /// Inverse and determinant by Gauss-Jordan elimination.
    pub fn inverse_with_det(&self) -> Result<(ResidueMatrix, u32)> {
        let n = self.dim;
        let m = self.modulus;
        let width = 2 * n;
        let mut aug = vec![0u64; n * width];
        for i in 0..n {
            for j in 0..n {
                aug[i * width + j] = self.get(i, j) as u64;
            }
            aug[i * width + n + i] = 1;
        }
        let mut rows = Lazy {
            modulus: m,
            width,
            data: aug,
            pending: 0,
            headroom: m.headroom(),
        };
        let mut det = 1 % m.value();
        for k in 0..n {
            let Some(pivot) = rows.find_pivot(k, k..n) else {
                return Err(Error::Singular(m.value()));
            };
            if pivot != k {
                rows.swap(pivot, k);
                det = m.neg(det);
            }
            rows.reduce_row(k, k..width);
            let pv = rows.get(k, k) as u32;
            det = m.mul(det, pv);
            let inv = m.inv(pv).expect("pivot is nonzero");
            rows.scale_row(k, inv, k..width);
            for r in 0..n {
                if r == k {
                    continue;
                }
                let e = m.reduce(rows.get(r, k));
                if e != 0 {
                    rows.eliminate(r, k, m.neg(e), (k + 1)..width);
                }
                rows.set(r, k, 0);
            }
            rows.tick();
        }
        let entries = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| m.reduce(rows.get(i, n + j)))
            .collect();
        Ok((
            ResidueMatrix {
                modulus: m,
                dim: n,
                entries,
            },
            det,
        ))
    }

    pub fn inverse(&self) -> Result<ResidueMatrix> {
        self.inverse_with_det().map(|(inv, _)| inv)
    }
}

#[inline]
fn axpy(dst: &mut [u64], src: &[u64], f: u64) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d += f * *s;
    }
}

/// Row-major `u64` working copy with deferred reduction.
struct Lazy {
    modulus: Modulus,
    width: usize,
    data: Vec<u64>,
    pending: u64,
    headroom: u64,
}

impl Lazy {
    fn new(a: &ResidueMatrix) -> Self {
        Lazy {
            modulus: a.modulus,
            width: a.dim,
            data: a.entries.iter().map(|&x| x as u64).collect(),
            pending: 0,
            headroom: a.modulus.headroom(),
        }
    }

    #[inline]
    fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.width + c]
    }

    #[inline]
    fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.width + c] = v;
    }

    fn swap(&mut self, a: usize, b: usize) {
        let w = self.width;
        for c in 0..w {
            self.data.swap(a * w + c, b * w + c);
        }
    }

    /// Reduces column `col` over `rows` and returns the first nonzero row.
    fn find_pivot(&mut self, col: usize, rows: std::ops::Range<usize>) -> Option<usize> {
        let mut found = None;
        for r in rows {
            let v = self.modulus.reduce(self.get(r, col)) as u64;
            self.set(r, col, v);
            if v != 0 && found.is_none() {
                found = Some(r);
            }
        }
        found
    }

    fn reduce_row(&mut self, r: usize, cols: std::ops::Range<usize>) {
        let m = self.modulus;
        let base = r * self.width;
        for x in &mut self.data[base + cols.start..base + cols.end] {
            *x = m.reduce(*x) as u64;
        }
    }

    /// Row must already be reduced over `cols`.
    fn scale_row(&mut self, r: usize, f: u32, cols: std::ops::Range<usize>) {
        let m = self.modulus;
        let base = r * self.width;
        for x in &mut self.data[base + cols.start..base + cols.end] {
            *x = m.mul(*x as u32, f) as u64;
        }
    }

    /// `row[target] += f · row[pivot]` over `cols`; the pivot row must be
    /// reduced there.
    fn eliminate(&mut self, target: usize, pivot: usize, f: u32, cols: std::ops::Range<usize>) {
        let w = self.width;
        let (t, p) = if target < pivot {
            let (lo, hi) = self.data.split_at_mut(pivot * w);
            (&mut lo[target * w..(target + 1) * w], &hi[..w])
        } else {
            let (lo, hi) = self.data.split_at_mut(target * w);
            (&mut hi[..w], &lo[pivot * w..(pivot + 1) * w])
        };
        axpy(&mut t[cols.clone()], &p[cols], f as u64);
    }

    /// Call once per elimination step; reduces everything when the
    /// accumulated headroom is exhausted.
    fn tick(&mut self) {
        self.pending += 1;
        if self.pending >= self.headroom {
            let m = self.modulus;
            self.data.iter_mut().for_each(|x| *x = m.reduce(*x) as u64);
            self.pending = 0;
        }
    }
}
