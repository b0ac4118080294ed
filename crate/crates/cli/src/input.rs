//! Reading graphs from files in any of the supported text formats.

use std::path::Path;

use anyhow::{Context, Result};
use clap::ValueEnum;
use giv_core::{incidence_graph, parse_graph, parse_incidence, Graph, GraphFormat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    /// Decide from the content.
    Auto,
    /// `n`, then one `u v` pair per line.
    Edges,
    /// `n`, then `n` rows of `n` integers.
    Adjacency,
    /// `order q`, then one line of points per plane line; read as the
    /// point-line incidence graph.
    Incidence,
}

/// Picks the format of `text`: a header `order q` means incidence, `n`
/// header lines followed by exactly `n` rows of `n` integers means an
/// adjacency matrix, anything else an edge list.
pub fn detect(text: &str) -> InputFormat {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let Some(header) = lines.next() else {
        return InputFormat::Edges;
    };
    if header.starts_with("order") {
        return InputFormat::Incidence;
    }
    let Ok(n) = header.parse::<usize>() else {
        return InputFormat::Edges;
    };
    let rows: Vec<usize> = lines.map(|l| l.split_whitespace().count()).collect();
    if n > 0 && rows.len() == n && rows.iter().all(|&c| c == n) && (n != 2 || rows.len() == 2) {
        InputFormat::Adjacency
    } else {
        InputFormat::Edges
    }
}

pub fn parse(text: &str, format: InputFormat) -> giv_core::Result<Graph> {
    match format {
        InputFormat::Auto => parse(text, detect(text)),
        InputFormat::Edges => parse_graph(text, GraphFormat::EdgeList),
        InputFormat::Adjacency => parse_graph(text, GraphFormat::AdjacencyMatrix),
        InputFormat::Incidence => incidence_graph(&parse_incidence(text)?),
    }
}

pub fn read_graph(path: &Path, format: InputFormat) -> Result<Graph> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse(&text, format).with_context(|| format!("{}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn detection() {
        assert_eq!(detect("3\n0 1\n1 2\n"), InputFormat::Edges);
        assert_eq!(detect("3\n0 1 0\n1 0 1\n0 1 0\n"), InputFormat::Adjacency);
        assert_eq!(detect("# fano\norder 2\n0 1 2\n"), InputFormat::Incidence);
        assert_eq!(detect("2\n0 1\n1 0\n"), InputFormat::Adjacency);
        assert_eq!(detect("2\n0 1\n"), InputFormat::Edges);
        assert_eq!(detect(""), InputFormat::Edges);
    }

    #[test]
    fn formats_agree() {
        let edges = parse("3\n0 1\n1 2\n", InputFormat::Auto).unwrap();
        let adj = parse("3\n0 1 0\n1 0 1\n0 1 0\n", InputFormat::Auto).unwrap();
        assert_eq!(edges, adj);
    }
}
