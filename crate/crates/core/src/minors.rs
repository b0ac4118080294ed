//! Matrices of pair minors `|A^{i,j}|` and diagonal-zeroed determinants
//! `|C^{i,j}|` modulo a prime.
//!
//! Conventions, for a square `A` over `Z/pZ`:
//! - `Amat[i][j]`, `i ≠ j`: determinant of `A` with rows and columns `i`
//!   and `j` removed. `Amat[i][i]`: `A` with row and column `i` removed.
//! - `Cmat[i][j]`, `i ≠ j`: determinant of `A` with `A[i][i]` and `A[j][j]`
//!   set to zero. `Cmat[i][i]`: only `A[i][i]` zeroed.
//! - A 0×0 determinant is 1.
//!
//! Three routes compute the same pair:
//! - [`MinorPath::Inverse`]: one inversion, then Jacobi's complementary
//!   minor identity for `Amat` and the matrix determinant lemma for `Cmat`.
//! - [`MinorPath::Interpolated`]: for singular `A`, every entry is a
//!   polynomial of degree `< n` in a diagonal shift `t`. It is evaluated
//!   through the inverse route at `n` shifts where `A + tI` is invertible
//!   and interpolated back to `t = 0`.
//! - [`MinorPath::Direct`]: one elimination per entry.

use crate::error::{Error, Result};
use crate::modular::{Modulus, ResidueMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MinorPath {
    Inverse,
    Interpolated,
    Direct,
}

impl MinorPath {
    pub fn as_str(self) -> &'static str {
        match self {
            MinorPath::Inverse => "inverse",
            MinorPath::Interpolated => "interpolated",
            MinorPath::Direct => "direct",
        }
    }
}

/// `Amat`, `Cmat` and `det(A)` for one prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorPair {
    pub amat: ResidueMatrix,
    pub cmat: ResidueMatrix,
    pub det_a: u32,
    pub path: MinorPath,
}

impl MinorPair {
    pub fn prime(&self) -> u32 {
        self.amat.prime()
    }

    pub fn fast_path_used(&self) -> bool {
        self.path == MinorPath::Inverse
    }

    /// Same matrices, ignoring which route produced them.
    pub fn same_values(&self, other: &MinorPair) -> bool {
        self.amat == other.amat && self.cmat == other.cmat && self.det_a == other.det_a
    }
}

fn check_index(inv: &ResidueMatrix, i: usize) -> Result<()> {
    if i >= inv.dim() {
        return Err(Error::IndexOutOfRange {
            index: i,
            dim: inv.dim(),
        });
    }
    Ok(())
}

/// `|A^{i,j}| = det(A)·(B_ii·B_jj − B_ij·B_ji)` for `B = A⁻¹`.
pub fn pair_minor_fast(inv: &ResidueMatrix, det_a: u32, i: usize, j: usize) -> Result<u32> {
    check_index(inv, i)?;
    check_index(inv, j)?;
    if i == j {
        return Err(Error::SameIndex(i));
    }
    let m = inv.modulus();
    let block = m.sub(
        m.mul(inv.get(i, i), inv.get(j, j)),
        m.mul(inv.get(i, j), inv.get(j, i)),
    );
    Ok(m.mul(det_a, block))
}

/// `|A^{i,i}| = det(A)·B_ii`.
pub fn single_minor_fast(inv: &ResidueMatrix, det_a: u32, i: usize) -> Result<u32> {
    check_index(inv, i)?;
    Ok(inv.modulus().mul(det_a, inv.get(i, i)))
}

/// Determinant of `A` with diagonal entries `i` (and `j`, if given) set to
/// zero, via the matrix determinant lemma. `diagonal` is the original
/// diagonal of `A`.
pub fn diag_zero_det(
    inv: &ResidueMatrix,
    det_a: u32,
    diagonal: &[u32],
    i: usize,
    j: Option<usize>,
) -> Result<u32> {
    check_index(inv, i)?;
    if diagonal.len() != inv.dim() {
        return Err(Error::LengthMismatch {
            expected: inv.dim(),
            actual: diagonal.len(),
        });
    }
    let m = inv.modulus();
    match j {
        None => Ok(single_zeroed(m, inv, det_a, diagonal[i], i)),
        Some(j) => {
            check_index(inv, j)?;
            if i == j {
                return Err(Error::SameIndex(i));
            }
            Ok(pair_zeroed(m, inv, det_a, diagonal[i], diagonal[j], i, j))
        }
    }
}

#[inline]
fn single_zeroed(m: Modulus, inv: &ResidueMatrix, det_a: u32, d: u32, i: usize) -> u32 {
    m.mul(det_a, m.sub(1, m.mul(d, inv.get(i, i))))
}

/// `det(A)·det(I₂ − D·S)` with `S` the `{i,j}` block of the inverse.
#[inline]
fn pair_zeroed(
    m: Modulus,
    inv: &ResidueMatrix,
    det_a: u32,
    di: u32,
    dj: u32,
    i: usize,
    j: usize,
) -> u32 {
    let a = m.sub(1, m.mul(di, inv.get(i, i)));
    let d = m.sub(1, m.mul(dj, inv.get(j, j)));
    let off = m.mul(m.mul(di, dj), m.mul(inv.get(i, j), inv.get(j, i)));
    m.mul(det_a, m.sub(m.mul(a, d), off))
}

/// Both matrices from an inverse of `a`, `O(n²)` after inversion.
fn from_inverse(
    a: &ResidueMatrix,
    inv: &ResidueMatrix,
    det_a: u32,
) -> (ResidueMatrix, ResidueMatrix) {
    let n = a.dim();
    let m = a.modulus();
    let diag = a.diagonal();
    let mut amat = ResidueMatrix::identity(m, n);
    let mut cmat = ResidueMatrix::identity(m, n);
    for i in 0..n {
        amat.set(i, i, m.mul(det_a, inv.get(i, i)));
        cmat.set(i, i, single_zeroed(m, inv, det_a, diag[i], i));
        for j in (i + 1)..n {
            let block = m.sub(
                m.mul(inv.get(i, i), inv.get(j, j)),
                m.mul(inv.get(i, j), inv.get(j, i)),
            );
            let av = m.mul(det_a, block);
            let cv = pair_zeroed(m, inv, det_a, diag[i], diag[j], i, j);
            amat.set(i, j, av);
            amat.set(j, i, av);
            cmat.set(i, j, cv);
            cmat.set(j, i, cv);
        }
    }
    (amat, cmat)
}

/// One determinant per entry, `O(n⁵)` overall. Works for any `a`.
pub fn minor_matrices_naive(a: &ResidueMatrix) -> MinorPair {
    let n = a.dim();
    let m = a.modulus();
    let mut amat = ResidueMatrix::identity(m, n);
    let mut cmat = ResidueMatrix::identity(m, n);
    for i in 0..n {
        amat.set(i, i, a.without(&[i]).det());
        cmat.set(i, i, a.with_diagonal(&[i], 0).det());
        for j in (i + 1)..n {
            let av = a.without(&[i, j]).det();
            let cv = a.with_diagonal(&[i, j], 0).det();
            amat.set(i, j, av);
            amat.set(j, i, av);
            cmat.set(i, j, cv);
            cmat.set(j, i, cv);
        }
    }
    MinorPair {
        amat,
        cmat,
        det_a: a.det(),
        path: MinorPath::Direct,
    }
}

/// Interpolation over diagonal shifts: every entry is a polynomial of
/// degree below `n` in the shift `t` of `A + tI`, so `n` invertible shifts
/// through the inverse route determine its value at `t = 0`. Valid for any
/// `a`, meant for singular ones. `None` when the field is too small to be
/// sure of `n` invertible shifts (`p ≤ 2n + 1`).
pub fn minor_matrices_interpolated(a: &ResidueMatrix) -> Option<MinorPair> {
    let n = a.dim();
    let m = a.modulus();
    let p = m.value() as u64;
    if p <= 2 * n as u64 + 1 {
        return None;
    }
    // det(A + tI) has at most n roots, so n of the first 2n nonzero shifts
    // are usable.
    let shifts: Vec<u32> = (1..p as u32)
        .filter(|&t| a.shifted(t).det() != 0)
        .take(n)
        .collect();
    debug_assert_eq!(shifts.len(), n);
    let weights = lagrange_weights_at_zero(m, &shifts);

    // Entries of degree < n in t: Amat off-diagonal has degree n-2, its
    // diagonal n-1, Cmat likewise. Zeroed positions carry no t.
    let mut amat_acc = vec![0u64; n * n];
    let mut cmat_acc = vec![0u64; n * n];
    for (&t, &w) in shifts.iter().zip(&weights) {
        let shifted = a.shifted(t);
        let (inv, det_t) = shifted
            .inverse_with_det()
            .expect("shift was checked to be invertible");
        let (amat_t, cmat_t) = from_inverse(&shifted, &inv, det_t);
        for (acc, &v) in amat_acc.iter_mut().zip(amat_t.entries()) {
            *acc = m.reduce(*acc + m.mul(w, v) as u64) as u64;
        }
        for (acc, &v) in cmat_acc.iter_mut().zip(cmat_t.entries()) {
            *acc = m.reduce(*acc + m.mul(w, v) as u64) as u64;
        }
    }
    let collect = |acc: Vec<u64>| ResidueMatrix::from_fn(m, n, |i, j| acc[i * n + j] as u32);
    Some(MinorPair {
        amat: collect(amat_acc),
        cmat: collect(cmat_acc),
        det_a: a.det(),
        path: MinorPath::Interpolated,
    })
}

/// `w_k = Π_{l≠k} t_l / (t_l − t_k)`, so that `f(0) = Σ w_k f(t_k)`.
fn lagrange_weights_at_zero(m: Modulus, points: &[u32]) -> Vec<u32> {
    points
        .iter()
        .enumerate()
        .map(|(k, &tk)| {
            let mut num = 1u32;
            let mut den = 1u32;
            for (l, &tl) in points.iter().enumerate() {
                if l != k {
                    num = m.mul(num, tl);
                    den = m.mul(den, m.sub(tl, tk));
                }
            }
            m.mul(num, m.inv(den).expect("interpolation points are distinct"))
        })
        .collect()
}

/// The minor pair of `a`, choosing the cheapest applicable route. All
/// routes return identical matrices.
pub fn minor_pair(a: &ResidueMatrix) -> MinorPair {
    match a.inverse_with_det() {
        Ok((inv, det_a)) => {
            let (amat, cmat) = from_inverse(a, &inv, det_a);
            MinorPair {
                amat,
                cmat,
                det_a,
                path: MinorPath::Inverse,
            }
        }
        Err(_) => minor_matrices_interpolated(a).unwrap_or_else(|| minor_matrices_naive(a)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 43969;

    fn p3() -> ResidueMatrix {
        ResidueMatrix::from_signed_rows(P, &[vec![1, 1, 0], vec![1, 1, 1], vec![0, 1, 1]]).unwrap()
    }

    fn k3() -> ResidueMatrix {
        ResidueMatrix::from_signed_rows(P, &[vec![1; 3], vec![1; 3], vec![1; 3]]).unwrap()
    }

    fn rows(p: u32, r: &[Vec<i64>]) -> ResidueMatrix {
        ResidueMatrix::from_signed_rows(p, r).unwrap()
    }

    #[test]
    fn pair_minor_examples() {
        let (inv, det) = p3().inverse_with_det().unwrap();
        assert_eq!(pair_minor_fast(&inv, det, 0, 1).unwrap(), 1);
        assert_eq!(pair_minor_fast(&inv, det, 0, 0), Err(Error::SameIndex(0)));
        assert!(pair_minor_fast(&inv, det, 0, 3).is_err());

        // K_3 is singular, so only the direct route applies: the remainder
        // after deleting two rows and columns is [1].
        assert!(k3().inverse().is_err());
        assert_eq!(minor_matrices_naive(&k3()).amat.get(0, 1), 1);

        let two = rows(P, &[vec![2, 1], vec![1, 3]]);
        let (inv, det) = two.inverse_with_det().unwrap();
        assert_eq!(pair_minor_fast(&inv, det, 0, 1).unwrap(), 1);
    }

    #[test]
    fn single_minor_examples() {
        let (inv, det) = p3().inverse_with_det().unwrap();
        assert_eq!(single_minor_fast(&inv, det, 0).unwrap(), 0);
        assert_eq!(single_minor_fast(&inv, det, 1).unwrap(), 1);
        let id = ResidueMatrix::identity(Modulus::new(P).unwrap(), 3);
        assert_eq!(single_minor_fast(&id, 1, 2).unwrap(), 1);
    }

    #[test]
    fn diag_zero_examples() {
        let a = p3();
        let (inv, det) = a.inverse_with_det().unwrap();
        let diag = a.diagonal();
        assert_eq!(diag_zero_det(&inv, det, &diag, 0, Some(1)).unwrap(), P - 1);
        assert_eq!(a.with_diagonal(&[0, 1], 0).det(), P - 1);
        assert_eq!(diag_zero_det(&inv, det, &diag, 0, None).unwrap(), P - 1);
        assert_eq!(a.with_diagonal(&[0], 0).det(), P - 1);
        let id = ResidueMatrix::identity(a.modulus(), 3);
        assert_eq!(diag_zero_det(&id, 1, &[1, 1, 1], 0, Some(1)).unwrap(), 0);
        assert!(diag_zero_det(&id, 1, &[1, 1, 1], 1, Some(1)).is_err());
    }

    #[test]
    fn naive_examples() {
        let pair = minor_matrices_naive(&p3());
        assert_eq!(
            pair.amat,
            rows(P, &[vec![0, 1, 1], vec![1, 1, 1], vec![1, 1, 0]])
        );
        assert_eq!(
            pair.cmat,
            rows(P, &[vec![-1, -1, 0], vec![-1, -2, -1], vec![0, -1, -1]])
        );
        let k = minor_matrices_naive(&k3());
        assert_eq!(
            k.amat,
            rows(P, &[vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]])
        );
        for c in [0, 5] {
            let one = minor_matrices_naive(&rows(P, &[vec![c]]));
            assert_eq!(one.amat.entries(), &[1]);
            assert_eq!(one.cmat.entries(), &[0]);
        }
    }

    #[test]
    fn routes_agree_on_examples() {
        let fast = minor_pair(&p3());
        assert_eq!(fast.path, MinorPath::Inverse);
        assert!(fast.same_values(&minor_matrices_naive(&p3())));
        assert_eq!(fast.det_a, P - 1);

        let singular = minor_pair(&k3());
        assert_eq!(singular.path, MinorPath::Interpolated);
        assert!(singular.same_values(&minor_matrices_naive(&k3())));

        let one = minor_pair(&rows(P, &[vec![7]]));
        assert_eq!(
            (one.amat.entries(), one.cmat.entries()),
            (&[1][..], &[0][..])
        );
        let zero = minor_pair(&rows(P, &[vec![0]]));
        assert_eq!(
            (zero.amat.entries(), zero.cmat.entries()),
            (&[1][..], &[0][..])
        );
        let empty = minor_pair(&ResidueMatrix::identity(Modulus::new(P).unwrap(), 0));
        assert_eq!(empty.amat.dim(), 0);
        assert_eq!(empty.det_a, 1);
    }

    #[test]
    fn small_field_falls_back_to_direct() {
        // Over Z/5 a 3×3 singular matrix cannot guarantee 3 invertible shifts.
        let a = rows(5, &[vec![1, 1, 1], vec![1, 1, 1], vec![1, 1, 1]]);
        assert!(minor_matrices_interpolated(&a).is_none());
        let pair = minor_pair(&a);
        assert_eq!(pair.path, MinorPath::Direct);
    }

    #[test]
    fn rank_deficient_by_two() {
        // Rank 1: every 2×2 minor and hence every pair minor of size ≥ 2 vanishes,
        // but the diagonal-zeroed determinants do not.
        let a = rows(
            P,
            &[
                vec![1, 2, 3, 4],
                vec![2, 4, 6, 8],
                vec![3, 6, 9, 12],
                vec![4, 8, 12, 16],
            ],
        );
        let pair = minor_pair(&a);
        assert_eq!(pair.path, MinorPath::Interpolated);
        assert!(pair.same_values(&minor_matrices_naive(&a)));
    }
}
