//! Loop-free undirected multigraphs and the set/cut algebra built on them.
//!
//! Vertices are numbered `1..=n`. Edges are numbered `0..m` in insertion
//! order; parallel edges keep distinct ids, so cuts and matchings are sets
//! of edge ids rather than sets of endpoint pairs.

mod canon;
mod contraction;
mod cut;
pub mod io;
mod vertex_set;

use std::collections::VecDeque;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use canon::{canonical_form, CanonicalForm};
pub use contraction::{contract, Contraction};
pub(crate) use cut::shores_cross;
pub use cut::{boundary, laminar, Cut, CutRecord};
pub use vertex_set::VertexSet;

pub type Vertex = usize;
pub type EdgeId = usize;

/// A finite, loop-free, undirected multigraph.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphRecord", into = "GraphRecord")]
pub struct Multigraph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    // adj[v] = (neighbor, edge id), sorted; index 0 unused
    adj: Vec<Vec<(Vertex, EdgeId)>>,
    fingerprint: u64,
}

/// Serialized shape of a [`Multigraph`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphRecord {
    pub vertex_count: usize,
    pub edges: Vec<(Vertex, Vertex)>,
}

impl TryFrom<GraphRecord> for Multigraph {
    type Error = Error;

    fn try_from(r: GraphRecord) -> Result<Self> {
        Multigraph::new(r.vertex_count, r.edges)
    }
}

impl From<Multigraph> for GraphRecord {
    fn from(g: Multigraph) -> Self {
        GraphRecord {
            vertex_count: g.n,
            edges: g.edges,
        }
    }
}

impl Multigraph {
    /// Builds a multigraph on `1..=n`. Edge ids follow the order of `edges`.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let edges: Vec<(Vertex, Vertex)> = edges.into_iter().collect();
        let mut adj = vec![Vec::new(); n + 1];
        for (id, &(u, v)) in edges.iter().enumerate() {
            for w in [u, v] {
                if !(1..=n).contains(&w) {
                    return Err(Error::VertexOutOfRange {
                        vertex: w,
                        order: n,
                    });
                }
            }
            if u == v {
                return Err(Error::LoopEdge(u));
            }
            adj[u].push((v, id));
            adj[v].push((u, id));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let mut hasher = std::collections::hash_map::DefaultHasher::new();
        n.hash(&mut hasher);
        edges.hash(&mut hasher);
        Ok(Multigraph {
            n,
            edges,
            adj,
            fingerprint: hasher.finish(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl DoubleEndedIterator<Item = Vertex> {
        1..=self.n
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> (Vertex, Vertex) {
        self.edges[e]
    }

    /// Identity of the underlying edge list; used to detect mixing cuts of
    /// different graphs.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    /// Incident `(neighbor, edge id)` pairs of `v`, ascending.
    pub fn incident(&self, v: Vertex) -> &[(Vertex, EdgeId)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    /// Distinct neighbors of `v`, ascending.
    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        let list = &self.adj[v];
        list.iter()
            .enumerate()
            .filter(move |&(i, &(w, _))| i == 0 || list[i - 1].0 != w)
            .map(|(_, &(w, _))| w)
    }

    pub fn are_adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search_by(|&(w, _)| w.cmp(&v)).is_ok()
    }

    /// Smallest edge id joining `u` and `v`.
    pub fn edge_between(&self, u: Vertex, v: Vertex) -> Option<EdgeId> {
        let list = &self.adj[u];
        let i = list.partition_point(|&(w, _)| w < v);
        list.get(i).filter(|&&(w, _)| w == v).map(|&(_, e)| e)
    }

    /// Number of distinct vertices of `set` adjacent to `v`.
    pub fn neighbors_in(&self, v: Vertex, set: &VertexSet) -> usize {
        self.neighbors(v).filter(|&w| set.contains(w)).count()
    }

    pub fn has_parallel_edges(&self) -> bool {
        self.vertices()
            .any(|v| self.neighbors(v).count() != self.degree(v))
    }

    /// Connected components of `G - removed`, each as a vertex set, ordered
    /// by smallest member.
    pub fn components_without(&self, removed: &VertexSet) -> Vec<VertexSet> {
        let gone = removed.mask(self.n);
        let mut seen = gone.clone();
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            queue.push_back(s);
            let mut comp = VertexSet::new();
            while let Some(v) = queue.pop_front() {
                comp.insert(v);
                for &(w, _) in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components_without(&VertexSet::new()).len() <= 1
    }

    /// Whether the subgraph induced by `set` is connected (empty sets count
    /// as disconnected).
    pub fn induces_connected(&self, set: &VertexSet) -> bool {
        !set.is_empty() && self.components_without(&set.complement(self.n)).len() == 1
    }

    /// True when the graph stays connected after deleting any single vertex.
    pub fn is_two_connected(&self) -> bool {
        if self.n < 3 {
            return self.is_connected() && self.n == 2 && self.edge_count() > 0;
        }
        self.is_connected()
            && self
                .vertices()
                .all(|v| self.components_without(&VertexSet::singleton(v)).len() == 1)
    }

    /// A proper 2-colouring (`colour[v]` in {0,1}, index 0 unused), if any.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let mut colour = vec![u8::MAX; self.n + 1];
        let mut queue = VecDeque::new();
        for s in self.vertices() {
            if colour[s] != u8::MAX {
                continue;
            }
            colour[s] = 0;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                for &(w, _) in &self.adj[v] {
                    if colour[w] == u8::MAX {
                        colour[w] = 1 - colour[v];
                        queue.push_back(w);
                    } else if colour[w] == colour[v] {
                        return None;
                    }
                }
            }
        }
        Some(colour)
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// No edge has both ends in `set`.
    pub fn is_independent(&self, set: &VertexSet) -> bool {
        set.iter()
            .all(|v| self.neighbors(v).all(|w| !set.contains(w)))
    }

    /// The underlying simple graph: one edge per adjacent pair, in order of
    /// first appearance.
    pub fn simple_support(&self) -> Multigraph {
        let mut seen = std::collections::BTreeSet::new();
        let edges: Vec<_> = self
            .edges
            .iter()
            .filter(|&&(u, v)| seen.insert((u.min(v), u.max(v))))
            .copied()
            .collect();
        Multigraph::new(self.n, edges).expect("support of a valid graph is valid")
    }

    /// Renames every vertex `v` to `map[v]` (index 0 ignored). Edge ids are
    /// preserved.
    pub fn relabeled(&self, map: &[Vertex]) -> Multigraph {
        Multigraph::new(self.n, self.edges.iter().map(|&(u, v)| (map[u], map[v])))
            .expect("relabelling by a permutation keeps the graph valid")
    }
}

impl std::fmt::Debug for Multigraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Multigraph(n={}, edges={:?})", self.n, self.edges)
    }
}

/// `(components of G - removed, number of odd components)`.
pub fn components(g: &Multigraph, removed: &VertexSet) -> (Vec<VertexSet>, usize) {
    let comps = g.components_without(removed);
    let odd = comps.iter().filter(|c| c.is_odd()).count();
    (comps, odd)
}

/// `o(G - removed)`.
pub fn odd_components(g: &Multigraph, removed: &VertexSet) -> usize {
    components(g, removed).1
}
