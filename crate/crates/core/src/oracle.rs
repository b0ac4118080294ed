//! Slow, independent ground truth: exact determinants over the integers,
//! exhaustive isomorphism search, and the quadratic identity linking the
//! minors of a connection matrix.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{connection_matrix, Graph, IntMatrix, Permutation};
use crate::modular::{Modulus, ResidueMatrix};

/// Largest graph [`is_isomorphic_bruteforce`] accepts.
pub const BRUTE_FORCE_CAP: usize = 16;

/// Square matrix of arbitrary-precision integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    dim: usize,
    entries: Vec<BigInt>,
}

impl ExactMatrix {
    pub fn from_int(m: &IntMatrix) -> Self {
        let dim = m.dim();
        ExactMatrix {
            dim,
            entries: (0..dim * dim)
                .map(|k| BigInt::from(m.get(k / dim, k % dim)))
                .collect(),
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        IntMatrix::from_rows(rows).map(|m| Self::from_int(&m))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.dim + j]
    }

    /// Residues modulo `modulus`.
    pub fn reduce(&self, modulus: Modulus) -> ResidueMatrix {
        let p = BigInt::from(modulus.value());
        ResidueMatrix::from_fn(modulus, self.dim, |i, j| {
            let r = self.get(i, j).mod_floor(&p);
            r.to_u32_digits().1.first().copied().unwrap_or(0)
        })
    }
}

/// Fraction-free (Bareiss) elimination. The empty matrix has determinant 1.
pub fn det_exact(a: &ExactMatrix) -> BigInt {
    let n = a.dim;
    let mut m: Vec<Vec<BigInt>> = (0..n)
        .map(|i| a.entries[i * n..(i + 1) * n].to_vec())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(pivot) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return BigInt::zero();
        };
        if pivot != k {
            m.swap(pivot, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    if n == 0 {
        BigInt::one()
    } else {
        sign * &m[n - 1][n - 1]
    }
}

/// An adjacency-preserving bijection `g → h`, found by backtracking with
/// degree and already-mapped-neighbour pruning, or `None` after exhausting
/// the search. Edge weights and vertex weights must match as well.
pub fn is_isomorphic_bruteforce(g: &Graph, h: &Graph) -> Result<Option<Permutation>> {
    let n = g.n();
    if n > BRUTE_FORCE_CAP || h.n() > BRUTE_FORCE_CAP {
        return Err(Error::SizeCap {
            n: n.max(h.n()),
            cap: BRUTE_FORCE_CAP,
        });
    }
    if n != h.n() || g.edge_count() != h.edge_count() || g.degree_sequence() != h.degree_sequence()
    {
        return Ok(None);
    }
    let vw = |x: &Graph, v: usize| x.vertex_weights().map(|w| w[v]);
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if search(g, h, 0, &mut map, &mut used, &vw) {
        return Permutation::new(map).map(Some);
    }
    Ok(None)
}

fn search(
    g: &Graph,
    h: &Graph,
    v: usize,
    map: &mut [usize],
    used: &mut [bool],
    vw: &dyn Fn(&Graph, usize) -> Option<i64>,
) -> bool {
    if v == g.n() {
        return true;
    }
    for c in 0..h.n() {
        if used[c] || g.degree(v) != h.degree(c) || vw(g, v) != vw(h, c) {
            continue;
        }
        let consistent = (0..v).all(|u| g.edge_weight(u, v) == h.edge_weight(map[u], c));
        if !consistent {
            continue;
        }
        map[v] = c;
        used[c] = true;
        if search(g, h, v + 1, map, used, vw) {
            return true;
        }
        used[c] = false;
        map[v] = usize::MAX;
    }
    false
}

/// Checks edge by edge that `p` maps `g` onto `h`.
pub fn is_isomorphism(g: &Graph, h: &Graph, p: &Permutation) -> bool {
    g.n() == h.n()
        && p.len() == g.n()
        && g.edge_count() == h.edge_count()
        && g.edges()
            .all(|(u, v)| h.edge_weight(p.apply(u), p.apply(v)) == g.edge_weight(u, v))
}

/// `det` of `a` with row and column `i` deleted and entry `(j, j)` zeroed,
/// `j` indexing the original matrix.
pub fn b_minor(a: &ResidueMatrix, i: usize, j: usize) -> Result<u32> {
    check_pair(a.dim(), i, j)?;
    let j_reduced = if j > i { j - 1 } else { j };
    Ok(a.without(&[i]).with_diagonal(&[j_reduced], 0).det())
}

/// [`b_minor`] of the connection matrix of `g` with diagonal 1, modulo `p`.
pub fn b_matrix_det(g: &Graph, i: usize, j: usize, p: u32) -> Result<u32> {
    let m = Modulus::new(p)?;
    b_minor(&connection_matrix(g, 1).reduce(m), i, j)
}

fn check_pair(dim: usize, i: usize, j: usize) -> Result<()> {
    for x in [i, j] {
        if x >= dim {
            return Err(Error::IndexOutOfRange { index: x, dim });
        }
    }
    if i == j {
        return Err(Error::SameIndex(i));
    }
    Ok(())
}

/// Coefficients of `det(A with X at (i,i) and (j,j))` as a polynomial in `X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadraticMinor {
    /// `|A^{i,j}|`, the coefficient of `X²`.
    pub square: u32,
    /// `|B^{i,j}| + |B^{j,i}|`.
    pub linear: u32,
    /// `|C^{i,j}|`, the constant term.
    pub constant: u32,
}

impl QuadraticMinor {
    pub fn eval(&self, m: Modulus, x: u32) -> u32 {
        m.add(
            m.mul(m.add(m.mul(self.square, x), self.linear), x),
            self.constant,
        )
    }
}

pub fn quadratic_minor(a: &ResidueMatrix, i: usize, j: usize) -> Result<QuadraticMinor> {
    check_pair(a.dim(), i, j)?;
    let m = a.modulus();
    Ok(QuadraticMinor {
        square: a.without(&[i, j]).det(),
        linear: m.add(b_minor(a, i, j)?, b_minor(a, j, i)?),
        constant: a.with_diagonal(&[i, j], 0).det(),
    })
}

/// For the diagonal-1 connection matrix `A` of `g` modulo `p`, checks
/// `|A| − |C^{i,j}| − |A^{i,j}| = |B^{i,j}| + |B^{j,i}|` and that the
/// determinant with `x` substituted at `(i,i)` and `(j,j)` matches the
/// quadratic for `x ∈ {0, 1, 2}`.
pub fn quadratic_identity_check(g: &Graph, i: usize, j: usize, p: u32) -> Result<bool> {
    let m = Modulus::new(p)?;
    quadratic_identity_holds(&connection_matrix(g, 1).reduce(m), i, j)
}

/// The identity on an arbitrary symmetric residue matrix, using its own
/// diagonal entries: `|A| = a_ii·a_jj·|A^{i,j}| + …` generalizes the linear
/// form, which is the case `a_ii = a_jj = 1`.
pub fn quadratic_identity_holds(a: &ResidueMatrix, i: usize, j: usize) -> Result<bool> {
    let m = a.modulus();
    let quad = quadratic_minor(a, i, j)?;
    let det = a.det();
    let (di, dj) = (a.get(i, i), a.get(j, j));
    let linear_ok = if di == 1 && dj == 1 {
        m.sub(m.sub(det, quad.constant), quad.square) == quad.linear
    } else {
        // |B^{i,j}| is the coefficient of a_ii once a_jj is zeroed.
        let expected = m.add(
            m.add(m.mul(m.mul(di, dj), quad.square), quad.constant),
            m.add(m.mul(di, b_minor(a, i, j)?), m.mul(dj, b_minor(a, j, i)?)),
        );
        expected == det
    };
    let sampled_ok = (0..3).all(|x| {
        let mut s = a.clone();
        s.set(i, i, x);
        s.set(j, j, x);
        s.det() == quad.eval(m, x)
    });
    Ok(linear_ok && sampled_ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{apply_permutation, parse_graph, GraphFormat};

    const P: u32 = 43969;

    fn g(text: &str) -> Graph {
        parse_graph(text, GraphFormat::EdgeList).unwrap()
    }

    #[test]
    fn exact_determinants() {
        let p3 = ExactMatrix::from_int(&connection_matrix(&g("3\n0 1\n1 2"), 1));
        assert_eq!(det_exact(&p3), BigInt::from(-1));
        let id = ExactMatrix::from_rows(
            &(0..5)
                .map(|i| (0..5).map(|j| (i == j) as i64).collect())
                .collect::<Vec<_>>(),
        )
        .unwrap();
        assert_eq!(det_exact(&id), BigInt::one());
        assert_eq!(
            det_exact(&ExactMatrix::from_rows(&[]).unwrap()),
            BigInt::one()
        );
        // Needs a row swap at the first step.
        let m = ExactMatrix::from_rows(&[vec![0, 2], vec![3, 1]]).unwrap();
        assert_eq!(det_exact(&m), BigInt::from(-6));
    }

    #[test]
    fn bruteforce_examples() {
        let p3 = g("3\n0 1\n1 2");
        let relabeled = apply_permutation(&p3, &Permutation::new(vec![1, 0, 2]).unwrap()).unwrap();
        let map = is_isomorphic_bruteforce(&p3, &relabeled).unwrap().unwrap();
        assert!(is_isomorphism(&p3, &relabeled, &map));
        let path = g("4\n0 1\n1 2\n2 3");
        let star = g("4\n0 1\n0 2\n0 3");
        assert_eq!(is_isomorphic_bruteforce(&path, &star).unwrap(), None);
        assert!(matches!(
            is_isomorphic_bruteforce(&Graph::empty(17), &Graph::empty(17)),
            Err(Error::SizeCap { n: 17, cap: 16 })
        ));
    }

    #[test]
    fn b_matrix_examples() {
        let p3 = g("3\n0 1\n1 2");
        assert_eq!(b_matrix_det(&p3, 0, 1, P).unwrap(), P - 1);
        assert_eq!(b_matrix_det(&p3, 1, 0, P).unwrap(), 0);
        assert_eq!(b_matrix_det(&p3, 1, 1, P), Err(Error::SameIndex(1)));
        let m = Modulus::new(P).unwrap();
        let id = ResidueMatrix::identity(m, 3);
        for (i, j) in [(0, 1), (2, 0), (1, 2)] {
            assert_eq!(b_minor(&id, i, j).unwrap(), 0);
        }
    }

    #[test]
    fn quadratic_examples() {
        let m = Modulus::new(P).unwrap();
        let p3 = connection_matrix(&g("3\n0 1\n1 2"), 1).reduce(m);
        let q = quadratic_minor(&p3, 0, 1).unwrap();
        assert_eq!((q.square, q.linear, q.constant), (1, P - 1, P - 1));
        assert_eq!(q.eval(m, 1), P - 1);
        assert!(quadratic_identity_check(&g("3\n0 1\n1 2"), 0, 1, P).unwrap());
        let k3 = g("3\n0 1\n0 2\n1 2");
        for (i, j) in [(0, 1), (0, 2), (2, 1)] {
            assert!(quadratic_identity_check(&k3, i, j, P).unwrap());
        }
        let d3 = connection_matrix(&k3, 3).reduce(m);
        assert!(quadratic_identity_holds(&d3, 0, 2).unwrap());
    }
}
