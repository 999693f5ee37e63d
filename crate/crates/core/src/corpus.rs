//! Named test graphs and the bundled connected-graph list.

use crate::graph::{io, Multigraph};
use crate::matching::is_matching_covered;

const BUNDLED: &str = include_str!("../corpus/connected.g6");

/// Small graphs with fixed, documented vertex numbering.
pub mod named {
    use crate::graph::Multigraph;

    fn build(n: usize, edges: Vec<(usize, usize)>) -> Multigraph {
        Multigraph::new(n, edges).expect("named graphs are valid")
    }

    /// `C_n` with edges `12, 23, …, (n-1)n, n1` in that order.
    pub fn cycle(n: usize) -> Multigraph {
        assert!(n >= 3);
        let mut edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        edges.push((n, 1));
        build(n, edges)
    }

    /// Path `1–2–…–n`.
    pub fn path(n: usize) -> Multigraph {
        build(n, (1..n).map(|i| (i, i + 1)).collect())
    }

    /// `K_n`, edges in lexicographic order.
    pub fn complete(n: usize) -> Multigraph {
        let mut edges = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                edges.push((i, j));
            }
        }
        build(n, edges)
    }

    /// `K_{a,b}` with sides `1..=a` and `a+1..=a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Multigraph {
        let mut edges = Vec::new();
        for i in 1..=a {
            for j in a + 1..=a + b {
                edges.push((i, j));
            }
        }
        build(a + b, edges)
    }

    /// The 3-cube `Q_3`: vertex `k+1` is the bit string `k`.
    pub fn cube() -> Multigraph {
        let mut edges = Vec::new();
        for a in 0..8usize {
            for bit in [1, 2, 4] {
                let b = a ^ bit;
                if a < b {
                    edges.push((a + 1, b + 1));
                }
            }
        }
        edges.sort_unstable();
        build(8, edges)
    }

    /// Triangular prism: triangles `123`, `456` and rungs `14, 25, 36`.
    pub fn prism() -> Multigraph {
        build(
            6,
            vec![
                (1, 2),
                (2, 3),
                (1, 3),
                (4, 5),
                (5, 6),
                (4, 6),
                (1, 4),
                (2, 5),
                (3, 6),
            ],
        )
    }

    /// Petersen graph: outer cycle `1..5`, inner pentagram `6..10`,
    /// spokes `i – i+5`.
    pub fn petersen() -> Multigraph {
        let mut edges = vec![(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)];
        edges.extend([(6, 8), (8, 10), (10, 7), (7, 9), (9, 6)]);
        edges.extend((1..=5).map(|i| (i, i + 5)));
        build(10, edges)
    }

    /// The named graphs used across the test suites.
    pub fn all() -> Vec<(&'static str, Multigraph)> {
        vec![
            ("C4", cycle(4)),
            ("C6", cycle(6)),
            ("C8", cycle(8)),
            ("C10", cycle(10)),
            ("K4", complete(4)),
            ("K3,3", complete_bipartite(3, 3)),
            ("Q3", cube()),
            ("prism", prism()),
            ("petersen", petersen()),
        ]
    }
}

/// A graph with a stable human-readable id.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub id: String,
    pub graph: Multigraph,
}

/// Every graph in the bundled graph6 list, in file order.
pub fn bundled_connected_graphs() -> Vec<CorpusEntry> {
    BUNDLED
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .enumerate()
        .map(|(i, line)| CorpusEntry {
            id: format!("g6:{i}:{line}"),
            graph: io::parse_graph6(line).expect("bundled corpus is valid graph6"),
        })
        .collect()
}

/// Keeps the connected, matching covered graphs with at most `max_n`
/// vertices.
pub fn filter_matching_covered(entries: Vec<CorpusEntry>, max_n: usize) -> Vec<CorpusEntry> {
    entries
        .into_iter()
        .filter(|e| e.graph.vertex_count() <= max_n && e.graph.is_connected())
        .filter(|e| is_matching_covered(&e.graph))
        .collect()
}

/// Named graphs followed by the matching covered members of the bundled
/// list, all with at most `max_n` vertices.
pub fn matching_covered_corpus(max_n: usize) -> Vec<CorpusEntry> {
    let named = named::all().into_iter().map(|(name, graph)| CorpusEntry {
        id: name.to_string(),
        graph,
    });
    let mut out = filter_matching_covered(named.collect(), max_n);
    out.extend(filter_matching_covered(bundled_connected_graphs(), max_n));
    out
}
