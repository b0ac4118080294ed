//! Cai–Fürer–Immerman graphs over Möbius ladders.
//!
//! The base graph with `k` rungs has vertices `v_0..v_{2k-1}`, rim edges
//! `(v_i, v_{i+1 mod 2k})` and rungs `(v_i, v_{i+k})` for `i < k`. It is
//! 3-regular (for `k = 1` a triple edge, for `k = 2` the graph `K_4`). Base
//! edges are numbered rim first, then rungs; a vertex numbers its ports
//! 0, 1, 2 in the order its edges appear in that list.
//!
//! Each base vertex becomes a gadget of four middle vertices, one per even
//! subset `S` of the ports, listed `∅, {0,1}, {0,2}, {1,2}`:
//!
//! ```text
//!   port 0: a0⁰ ── m∅, m12      a0¹ ── m01, m02
//!   port 1: a1⁰ ── m∅, m02      a1¹ ── m01, m12
//!   port 2: a2⁰ ── m∅, m01      a2¹ ── m02, m12
//! ```
//!
//! so `m_S` meets `a_i¹` exactly when `i ∈ S`.
//!
//! In [`CfiMode::Joined`] every port `i` has its own end pair `a_i⁰, a_i¹`,
//! and a base edge between ports `(u, i)` and `(w, j)` adds the edges
//! `a_{u,i}^b — a_{w,j}^b` for `b ∈ {0, 1}`; a twisted edge uses
//! `a_{u,i}^b — a_{w,j}^{1-b}` instead. A gadget then has 10 vertices, the
//! graph `20k` vertices and `30k` edges, and every vertex has degree 3.
//! Vertex `10v + s` is middle vertex `s` of gadget `v`, and `10v + 4 + 2i + b`
//! is its end `a_i^b`.
//!
//! [`CfiMode::Contracted`] merges the two end pairs of each base edge into a
//! single pair shared by both gadgets (the twist flips the bit seen from the
//! second endpoint). This gives `8k + 6k` vertices, 14 for one rung, small
//! enough for exhaustive isomorphism search.
//!
//! Twisting an odd number of base edges gives a graph not isomorphic to the
//! untwisted one; an even number gives an isomorphic one.

use crate::error::{Error, Result};
use crate::graph::Graph;

const MIDDLE: [[bool; 3]; 4] = [
    [false, false, false],
    [true, true, false],
    [true, false, true],
    [false, true, true],
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CfiMode {
    Joined,
    Contracted,
}

/// Base edges of the Möbius ladder with `k` rungs; rung `r` has index `2k + r`.
fn ladder_edges(k: usize) -> Vec<(usize, usize)> {
    let m = 2 * k;
    let mut edges: Vec<(usize, usize)> = (0..m).map(|i| (i, (i + 1) % m)).collect();
    edges.extend((0..k).map(|i| (i, i + k)));
    edges
}

/// Port numbers `(port at first endpoint, port at second endpoint)` per edge.
fn ports(k: usize, edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut used = vec![0usize; 2 * k];
    edges
        .iter()
        .map(|&(u, w)| {
            let pu = used[u];
            used[u] += 1;
            let pw = used[w];
            used[w] += 1;
            (pu, pw)
        })
        .collect()
}

/// CFI graph over the `k`-rung Möbius ladder with the listed base edges
/// twisted (indices into the rim-then-rung edge list, each at most once).
pub fn cfi_ladder(k: usize, twisted_edges: &[usize], mode: CfiMode) -> Result<Graph> {
    if k == 0 {
        return Err(Error::InvalidParameter(
            "ladder needs at least one rung".into(),
        ));
    }
    let edges = ladder_edges(k);
    let mut twisted = vec![false; edges.len()];
    for &e in twisted_edges {
        if e >= edges.len() || twisted[e] {
            return Err(Error::InvalidParameter(format!(
                "bad twisted edge index {e}"
            )));
        }
        twisted[e] = true;
    }
    let port_of = ports(k, &edges);
    let mut out = Vec::new();
    let n = match mode {
        CfiMode::Joined => {
            let end = |v: usize, port: usize, bit: usize| 10 * v + 4 + 2 * port + bit;
            for v in 0..2 * k {
                for (s, subset) in MIDDLE.iter().enumerate() {
                    for (port, &inside) in subset.iter().enumerate() {
                        out.push((10 * v + s, end(v, port, inside as usize)));
                    }
                }
            }
            for (e, (&(u, w), &(pu, pw))) in edges.iter().zip(&port_of).enumerate() {
                for b in 0..2 {
                    out.push((end(u, pu, b), end(w, pw, b ^ twisted[e] as usize)));
                }
            }
            20 * k
        }
        CfiMode::Contracted => {
            let middles = 8 * k;
            for (e, (&(u, w), &(pu, pw))) in edges.iter().zip(&port_of).enumerate() {
                for (s, subset) in MIDDLE.iter().enumerate() {
                    let bu = subset[pu] as usize;
                    out.push((4 * u + s, middles + 2 * e + bu));
                    let bw = subset[pw] as usize ^ twisted[e] as usize;
                    out.push((4 * w + s, middles + 2 * e + bw));
                }
            }
            middles + 6 * k
        }
    };
    Graph::from_edges(n, out)
}

/// The untwisted ladder with `k` rungs: `20k` vertices, 3-regular.
pub fn miyazaki(k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(Error::InvalidParameter("miyazaki(k) needs k >= 1".into()));
    }
    cfi_ladder(k, &[], CfiMode::Joined)
}

/// [`miyazaki`] with the two connections of rung `t` (1-based) crossed.
pub fn twisted_miyazaki(k: usize, t: usize) -> Result<Graph> {
    if k == 0 || t == 0 || t > k {
        return Err(Error::InvalidParameter(format!(
            "twist position {t} outside 1..={k}"
        )));
    }
    cfi_ladder(k, &[2 * k + t - 1], CfiMode::Joined)
}
