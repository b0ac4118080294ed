//! Desarguesian projective planes and plane duality.

use super::field::FieldTable;
use crate::error::Result;
use crate::graph::IncidenceStructure;

/// Normalized homogeneous triples over GF(q): first nonzero coordinate 1,
/// in lexicographic order of the element codes.
fn normalized_triples(f: &FieldTable) -> Vec<[usize; 3]> {
    let q = f.order();
    let mut out = vec![[0, 0, 1]];
    out.extend((0..q).map(|z| [0, 1, z]));
    for y in 0..q {
        out.extend((0..q).map(|z| [1, y, z]));
    }
    out
}

/// PG(2,q) from homogeneous coordinates over GF(q), `q` a prime power up to
/// 32. Points and lines are both indexed by the normalized triples; point
/// `x` lies on line `u` when `u·x = 0`.
pub fn desarguesian_plane(q: usize) -> Result<IncidenceStructure> {
    let f = FieldTable::new(q)?;
    let triples = normalized_triples(&f);
    let dot =
        |u: &[usize; 3], x: &[usize; 3]| (0..3).fold(0, |acc, k| f.add(acc, f.mul(u[k], x[k])));
    let lines = triples
        .iter()
        .map(|u| {
            triples
                .iter()
                .enumerate()
                .filter(|(_, x)| dot(u, x) == 0)
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    IncidenceStructure::new(q, lines)
}

/// Exchanges points and lines: line `p` of the dual holds the indices of the
/// original lines through point `p`.
pub fn dual_plane(s: &IncidenceStructure) -> Result<IncidenceStructure> {
    IncidenceStructure::new(s.order(), s.point_lines())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::incidence_graph;

    #[test]
    fn fano() {
        let s = desarguesian_plane(2).unwrap();
        assert_eq!(s.points(), 7);
        assert_eq!(s.lines().len(), 7);
        assert!(s.lines().iter().all(|l| l.len() == 3));
    }

    #[test]
    fn sizes() {
        for (q, points) in [(3, 13), (4, 21), (9, 91), (16, 273)] {
            let s = desarguesian_plane(q).unwrap();
            assert_eq!(s.points(), points);
            assert!(s.lines().iter().all(|l| l.len() == q + 1));
            let g = incidence_graph(&s).unwrap();
            assert_eq!(g.n(), 2 * points);
            assert!(g.degrees().iter().all(|&d| d == q + 1));
            assert!(g.bipartition().is_some());
        }
        assert!(desarguesian_plane(6).is_err());
    }

    #[test]
    fn duality_is_an_involution() {
        let s = desarguesian_plane(3).unwrap();
        let d = dual_plane(&s).unwrap();
        d.validate().unwrap();
        let dd = dual_plane(&d).unwrap();
        assert_eq!(incidence_graph(&dd).unwrap(), incidence_graph(&s).unwrap());
    }
}
