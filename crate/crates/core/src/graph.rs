//! Graphs, vertex permutations, connection matrices and the text formats
//! they are read from and written to.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::modular::{Modulus, ResidueMatrix};

/// Unordered vertex pair stored as `(min, max)`.
pub type Edge = (usize, usize);

fn normalize(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// A simple undirected graph on vertices `0..n`.
///
/// Equality is label-sensitive: two graphs are equal when they have the same
/// vertex count, the same edge set and the same weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<Edge>,
    edge_weights: Option<BTreeMap<Edge, i64>>,
    vertex_weights: Option<Vec<i64>>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: BTreeSet::new(),
            edge_weights: None,
            vertex_weights: None,
            adjacency: vec![Vec::new(); n],
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            check_pair(n, u, v)?;
            if !set.insert(normalize(u, v)) {
                let (a, b) = normalize(u, v);
                return Err(Error::DuplicateEdge(a, b));
            }
        }
        Ok(Self::from_edge_set(n, set))
    }

    fn from_edge_set(n: usize, edges: BTreeSet<Edge>) -> Self {
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Graph {
            n,
            edges,
            edge_weights: None,
            vertex_weights: None,
            adjacency,
        }
    }

    /// Attaches integer edge weights. Every edge must receive exactly one
    /// weight; a map of all ones is stored as "unweighted".
    pub fn with_edge_weights(mut self, weights: BTreeMap<Edge, i64>) -> Result<Self> {
        let mut normalized = BTreeMap::new();
        for ((u, v), w) in weights {
            check_pair(self.n, u, v)?;
            let e = normalize(u, v);
            if !self.edges.contains(&e) {
                return Err(Error::InvalidParameter(format!(
                    "weight given for non-edge {}-{}",
                    e.0, e.1
                )));
            }
            if normalized.insert(e, w).is_some() {
                return Err(Error::DuplicateEdge(e.0, e.1));
            }
        }
        if normalized.len() != self.edges.len() {
            return Err(Error::LengthMismatch {
                expected: self.edges.len(),
                actual: normalized.len(),
            });
        }
        self.edge_weights = if normalized.values().all(|&w| w == 1) {
            None
        } else {
            Some(normalized)
        };
        Ok(self)
    }

    /// Attaches per-vertex diagonal values, overriding the engine's diagonal.
    pub fn with_vertex_weights(mut self, weights: Vec<i64>) -> Result<Self> {
        if weights.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                actual: weights.len(),
            });
        }
        self.vertex_weights = Some(weights);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&normalize(u, v))
    }

    /// Weight of edge `u-v`, `None` if absent. Unweighted edges weigh 1.
    pub fn edge_weight(&self, u: usize, v: usize) -> Option<i64> {
        let e = normalize(u, v);
        if !self.edges.contains(&e) {
            return None;
        }
        Some(self.edge_weights.as_ref().map_or(1, |w| w[&e]))
    }

    pub fn edge_weights(&self) -> Option<&BTreeMap<Edge, i64>> {
        self.edge_weights.as_ref()
    }

    pub fn vertex_weights(&self) -> Option<&[i64]> {
        self.vertex_weights.as_deref()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Degrees sorted ascending.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d = self.degrees();
        d.sort_unstable();
        d
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.n
    }

    /// Two-colouring if the graph is bipartite.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut side: Vec<Option<bool>> = vec![None; self.n];
        for start in 0..self.n {
            if side[start].is_some() {
                continue;
            }
            side[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                let s = side[v].unwrap();
                for &w in &self.adjacency[v] {
                    match side[w] {
                        None => {
                            side[w] = Some(!s);
                            queue.push_back(w);
                        }
                        Some(t) if t == s => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(|s| s.unwrap()).collect())
    }

    /// Edge-list text (see [`parse_graph`]). Weights are not representable in
    /// this format; use [`Graph::to_adjacency_text`] for weighted graphs.
    pub fn to_edge_list_text(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    pub fn to_adjacency_text(&self) -> String {
        let m = connection_matrix(self, 0);
        let mut out = format!("{}\n", self.n);
        for i in 0..self.n {
            let row: Vec<String> = m.row(i).iter().map(|x| x.to_string()).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        out
    }
}

fn check_pair(n: usize, u: usize, v: usize) -> Result<()> {
    for x in [u, v] {
        if x >= n {
            return Err(Error::VertexOutOfRange { vertex: x, n });
        }
    }
    if u == v {
        return Err(Error::SelfLoop(u));
    }
    Ok(())
}

/// A bijection on `0..n`, `v ↦ mapping[v]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    mapping: Vec<usize>,
}

impl Permutation {
    pub fn new(mapping: Vec<usize>) -> Result<Self> {
        let n = mapping.len();
        let mut seen = vec![false; n];
        for &x in &mapping {
            if x >= n {
                return Err(Error::InvalidPermutation(format!(
                    "{x} out of range 0..{n}"
                )));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidPermutation(format!("{x} appears twice")));
            }
        }
        Ok(Permutation { mapping })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            mapping: (0..n).collect(),
        }
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut mapping: Vec<usize> = (0..n).collect();
        mapping.shuffle(rng);
        Permutation { mapping }
    }

    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }

    pub fn apply(&self, v: usize) -> usize {
        self.mapping[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.mapping
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (v, &image) in self.mapping.iter().enumerate() {
            inv[image] = v;
        }
        Permutation { mapping: inv }
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                actual: other.len(),
            });
        }
        Ok(Permutation {
            mapping: other.mapping.iter().map(|&v| self.mapping[v]).collect(),
        })
    }
}

/// Relabels `g` so that vertex `v` becomes `p(v)`; weights travel with their
/// vertices and edges.
pub fn apply_permutation(g: &Graph, p: &Permutation) -> Result<Graph> {
    if p.len() != g.n {
        return Err(Error::LengthMismatch {
            expected: g.n,
            actual: p.len(),
        });
    }
    let edges: BTreeSet<Edge> = g
        .edges()
        .map(|(u, v)| normalize(p.apply(u), p.apply(v)))
        .collect();
    let mut out = Graph::from_edge_set(g.n, edges);
    out.edge_weights = g.edge_weights.as_ref().map(|w| {
        w.iter()
            .map(|(&(u, v), &x)| (normalize(p.apply(u), p.apply(v)), x))
            .collect()
    });
    out.vertex_weights = g.vertex_weights.as_ref().map(|w| {
        let mut moved = vec![0; g.n];
        for (v, &x) in w.iter().enumerate() {
            moved[p.apply(v)] = x;
        }
        moved
    });
    Ok(out)
}

/// Dense square integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    dim: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn new(dim: usize, data: Vec<i64>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::LengthMismatch {
                expected: dim * dim,
                actual: data.len(),
            });
        }
        Ok(IntMatrix { dim, data })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::LengthMismatch {
                    expected: dim,
                    actual: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(IntMatrix { dim, data })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.dim + j]
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.dim).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// `out[p(i)][p(j)] = self[i][j]`.
    pub fn permuted(&self, p: &Permutation) -> IntMatrix {
        let n = self.dim;
        let mut data = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                data[p.apply(i) * n + p.apply(j)] = self.get(i, j);
            }
        }
        IntMatrix { dim: n, data }
    }

    pub fn reduce(&self, modulus: Modulus) -> ResidueMatrix {
        ResidueMatrix::from_fn(modulus, self.dim, |i, j| modulus.from_i64(self.get(i, j)))
    }
}

/// Adjacency matrix with edge weights off the diagonal and either the vertex
/// weights or `diagonal` on it.
pub fn connection_matrix(g: &Graph, diagonal: i64) -> IntMatrix {
    let n = g.n;
    let mut data = vec![0; n * n];
    for (u, v) in g.edges() {
        let w = g.edge_weight(u, v).unwrap_or(1);
        data[u * n + v] = w;
        data[v * n + u] = w;
    }
    for i in 0..n {
        data[i * n + i] = g.vertex_weights.as_ref().map_or(diagonal, |w| w[i]);
    }
    IntMatrix { dim: n, data }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    AdjacencyMatrix,
}

/// Non-empty, non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_int<T: std::str::FromStr>(line: usize, token: &str) -> Result<T> {
    token
        .parse()
        .map_err(|_| parse_err(line, format!("expected an integer, found {token:?}")))
}

/// Parses a graph.
///
/// Edge-list: a first line `n`, then one `u v` pair per line. Adjacency
/// matrix: a first line `n`, then `n` rows of `n` integers; the matrix must
/// be symmetric, off-diagonal values other than 0/1 become edge weights and
/// a diagonal that is not identically zero becomes vertex weights. Blank
/// lines and lines starting with `#` are ignored in both formats.
pub fn parse_graph(text: &str, format: GraphFormat) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (first_line, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let mut header_tokens = header.split_whitespace();
    let n: usize = parse_int(first_line, header_tokens.next().unwrap_or(""))?;
    if header_tokens.next().is_some() {
        return Err(parse_err(
            first_line,
            "header must contain only the vertex count",
        ));
    }
    match format {
        GraphFormat::EdgeList => {
            let mut edges = BTreeSet::new();
            for (line, content) in lines {
                let tokens: Vec<&str> = content.split_whitespace().collect();
                if tokens.len() != 2 {
                    return Err(parse_err(line, "expected two vertex indices"));
                }
                let u: usize = parse_int(line, tokens[0])?;
                let v: usize = parse_int(line, tokens[1])?;
                check_pair(n, u, v).map_err(|e| parse_err(line, e.to_string()))?;
                if !edges.insert(normalize(u, v)) {
                    let (a, b) = normalize(u, v);
                    return Err(parse_err(line, Error::DuplicateEdge(a, b).to_string()));
                }
            }
            Ok(Graph::from_edge_set(n, edges))
        }
        GraphFormat::AdjacencyMatrix => {
            let mut rows = Vec::with_capacity(n);
            let mut last_line = first_line;
            for (line, content) in lines {
                if rows.len() == n {
                    return Err(parse_err(line, "more rows than the declared size"));
                }
                let row = content
                    .split_whitespace()
                    .map(|t| parse_int::<i64>(line, t))
                    .collect::<Result<Vec<_>>>()?;
                if row.len() != n {
                    return Err(parse_err(
                        line,
                        format!("expected {n} entries, found {}", row.len()),
                    ));
                }
                rows.push(row);
                last_line = line;
            }
            if rows.len() != n {
                return Err(parse_err(
                    last_line,
                    format!("expected {n} rows, found {}", rows.len()),
                ));
            }
            let m = IntMatrix::from_rows(&rows)?;
            graph_from_matrix(&m)
        }
    }
}

/// Reads a symmetric integer matrix as a graph; see [`parse_graph`].
pub fn graph_from_matrix(m: &IntMatrix) -> Result<Graph> {
    let n = m.dim();
    let mut edges = BTreeSet::new();
    let mut weights = BTreeMap::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if m.get(i, j) != m.get(j, i) {
                return Err(Error::NotSymmetric(i, j));
            }
            let w = m.get(i, j);
            if w != 0 {
                edges.insert((i, j));
                weights.insert((i, j), w);
            }
        }
    }
    let mut g = Graph::from_edge_set(n, edges).with_edge_weights(weights)?;
    let diag: Vec<i64> = (0..n).map(|i| m.get(i, i)).collect();
    if diag.iter().any(|&d| d != 0) {
        g = g.with_vertex_weights(diag)?;
    }
    Ok(g)
}

/// Point-line incidence structure of a projective plane of order `order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceStructure {
    order: usize,
    points: usize,
    lines: Vec<Vec<usize>>,
}

impl IncidenceStructure {
    /// Builds and validates a plane. Each line's point list is sorted.
    pub fn new(order: usize, mut lines: Vec<Vec<usize>>) -> Result<Self> {
        for line in &mut lines {
            line.sort_unstable();
        }
        let s = IncidenceStructure {
            order,
            points: plane_size(order),
            lines,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn lines(&self) -> &[Vec<usize>] {
        &self.lines
    }

    /// For each point, the sorted indices of the lines through it.
    pub fn point_lines(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.points];
        for (l, line) in self.lines.iter().enumerate() {
            for &p in line {
                out[p].push(l);
            }
        }
        out
    }

    /// Checks the counting conditions, that two points span exactly one line,
    /// that two lines meet in exactly one point, and that a quadrangle exists.
    pub fn validate(&self) -> Result<()> {
        let n = self.order;
        let size = self.points;
        let bad = |m: String| Err(Error::InvalidPlane(m));
        if n < 2 {
            return bad(format!("order must be at least 2, got {n}"));
        }
        if self.lines.len() != size {
            return bad(format!("expected {size} lines, found {}", self.lines.len()));
        }
        for (l, line) in self.lines.iter().enumerate() {
            if line.len() != n + 1 {
                return bad(format!(
                    "line {l} has {} points, expected {}",
                    line.len(),
                    n + 1
                ));
            }
            if let Some(&p) = line.iter().find(|&&p| p >= size) {
                return bad(format!("line {l} names point {p}, beyond {size} points"));
            }
            if line.windows(2).any(|w| w[0] == w[1]) {
                return bad(format!("line {l} repeats a point"));
            }
        }
        let point_lines = self.point_lines();
        if let Some((p, ls)) = point_lines
            .iter()
            .enumerate()
            .find(|(_, ls)| ls.len() != n + 1)
        {
            return bad(format!(
                "point {p} lies on {} lines, expected {}",
                ls.len(),
                n + 1
            ));
        }
        // Each pair of points is covered by the lines through it; with the
        // counts above, "at most once" for every pair forces "exactly once".
        let mut covered = vec![false; size * size];
        for (l, line) in self.lines.iter().enumerate() {
            for (a, &p) in line.iter().enumerate() {
                for &q in &line[a + 1..] {
                    if std::mem::replace(&mut covered[p * size + q], true) {
                        return bad(format!(
                            "points {p} and {q} share more than one line (again on {l})"
                        ));
                    }
                }
            }
        }
        if let Some(idx) = (0..size * size).find(|&k| k / size < k % size && !covered[k]) {
            return bad(format!(
                "points {} and {} share no line",
                idx / size,
                idx % size
            ));
        }
        let mut met = vec![false; size * size];
        for (p, ls) in point_lines.iter().enumerate() {
            for (a, &l) in ls.iter().enumerate() {
                for &m in &ls[a + 1..] {
                    if std::mem::replace(&mut met[l * size + m], true) {
                        return bad(format!(
                            "lines {l} and {m} meet in more than one point (again at {p})"
                        ));
                    }
                }
            }
        }
        if let Some(idx) = (0..size * size).find(|&k| k / size < k % size && !met[k]) {
            return bad(format!(
                "lines {} and {} do not meet",
                idx / size,
                idx % size
            ));
        }
        if self.quadrangle().is_none() {
            return bad("no four points with no three collinear".to_string());
        }
        Ok(())
    }

    /// Four points no three of which are collinear, if any.
    pub fn quadrangle(&self) -> Option<[usize; 4]> {
        let point_lines = self.point_lines();
        let line_of = |p: usize, q: usize| -> Option<usize> {
            let (a, b) = (&point_lines[p], &point_lines[q]);
            a.iter().copied().find(|l| b.binary_search(l).is_ok())
        };
        let on = |l: usize, p: usize| self.lines[l].binary_search(&p).is_ok();
        let size = self.points;
        for p0 in 0..size {
            for p1 in (p0 + 1)..size {
                let l01 = line_of(p0, p1)?;
                for p2 in (p1 + 1)..size {
                    if on(l01, p2) {
                        continue;
                    }
                    let l02 = line_of(p0, p2)?;
                    let l12 = line_of(p1, p2)?;
                    if let Some(p3) =
                        ((p2 + 1)..size).find(|&p3| !on(l01, p3) && !on(l02, p3) && !on(l12, p3))
                    {
                        return Some([p0, p1, p2, p3]);
                    }
                }
            }
        }
        None
    }

    /// Incidence file text: `order n`, then one line of point indices per
    /// line of the plane.
    pub fn to_text(&self) -> String {
        let mut out = format!("order {}\n", self.order);
        for line in &self.lines {
            let pts: Vec<String> = line.iter().map(|p| p.to_string()).collect();
            let _ = writeln!(out, "{}", pts.join(" "));
        }
        out
    }
}

/// `n² + n + 1`.
pub fn plane_size(order: usize) -> usize {
    order * order + order + 1
}

/// Parses the incidence format written by [`IncidenceStructure::to_text`].
pub fn parse_incidence(text: &str) -> Result<IncidenceStructure> {
    let mut lines = content_lines(text);
    let (first_line, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() != 2 || tokens[0] != "order" {
        return Err(parse_err(first_line, "expected header \"order <n>\""));
    }
    let order: usize = parse_int(first_line, tokens[1])?;
    let size = plane_size(order);
    let mut plane_lines = Vec::with_capacity(size);
    let mut last_line = first_line;
    for (line, content) in lines {
        if plane_lines.len() == size {
            return Err(parse_err(line, format!("more than {size} lines")));
        }
        let pts = content
            .split_whitespace()
            .map(|t| parse_int::<usize>(line, t))
            .collect::<Result<Vec<_>>>()?;
        if pts.len() != order + 1 {
            return Err(parse_err(
                line,
                format!("expected {} points, found {}", order + 1, pts.len()),
            ));
        }
        if let Some(&p) = pts.iter().find(|&&p| p >= size) {
            return Err(parse_err(line, format!("point {p} out of range 0..{size}")));
        }
        plane_lines.push(pts);
        last_line = line;
    }
    if plane_lines.len() != size {
        return Err(parse_err(
            last_line,
            format!("expected {size} lines, found {}", plane_lines.len()),
        ));
    }
    IncidenceStructure::new(order, plane_lines)
}

/// Bipartite point-line graph: points are vertices `0..P`, lines `P..2P`.
pub fn incidence_graph(s: &IncidenceStructure) -> Result<Graph> {
    s.validate()?;
    let size = s.points();
    let edges = s
        .lines()
        .iter()
        .enumerate()
        .flat_map(|(l, line)| line.iter().map(move |&p| (p, size + l)));
    Graph::from_edges(2 * size, edges)
}
