use serde::Serialize;

use super::{EdgeId, Multigraph, Vertex, VertexSet};
use crate::error::{Error, Result};

/// The graph `G/(S→s)` together with the correspondence back to `G`.
///
/// Vertices outside `S` are renumbered densely in ascending order; the
/// contracted vertex receives the largest id. Edges with both ends in `S`
/// are dropped, all others survive (parallel edges included) in their
/// original order.
#[derive(Clone, Debug, Serialize)]
pub struct Contraction {
    pub result: Multigraph,
    pub contracted_label: Vertex,
    /// `origin_of[h]` for each result vertex `h` (index 0 unused).
    pub origin_of: Vec<VertexSet>,
    /// `image_of[v]` for each original vertex `v` (index 0 unused).
    pub image_of: Vec<Vertex>,
    /// Original edge id of every result edge.
    pub retained_edge_map: Vec<EdgeId>,
}

pub fn contract(g: &Multigraph, s: &VertexSet) -> Result<Contraction> {
    let n = g.vertex_count();
    if s.is_empty() || s.len() >= n || !s.in_range(n) {
        return Err(Error::ImproperShore);
    }
    let new_n = n - s.len() + 1;
    let label = new_n;
    let mut image_of = vec![0; n + 1];
    let mut origin_of = vec![VertexSet::new(); new_n + 1];
    let mut next = 1;
    for v in g.vertices() {
        if s.contains(v) {
            image_of[v] = label;
        } else {
            image_of[v] = next;
            origin_of[next] = VertexSet::singleton(v);
            next += 1;
        }
    }
    origin_of[label] = s.clone();

    let mut edges = Vec::new();
    let mut retained = Vec::new();
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let (a, b) = (image_of[u], image_of[v]);
        if a != b {
            edges.push((a, b));
            retained.push(e);
        }
    }
    Ok(Contraction {
        result: Multigraph::new(new_n, edges)?,
        contracted_label: label,
        origin_of,
        image_of,
        retained_edge_map: retained,
    })
}

impl Contraction {
    /// Maps a set of result vertices back to original vertices; the
    /// contracted vertex expands to the whole contracted set.
    pub fn expand(&self, set: &VertexSet) -> VertexSet {
        set.iter()
            .flat_map(|h| self.origin_of[h].iter().collect::<Vec<_>>())
            .collect()
    }

    /// Original vertex of a result vertex that is not the contracted one.
    pub fn origin(&self, h: Vertex) -> Vertex {
        debug_assert_ne!(h, self.contracted_label);
        self.origin_of[h]
            .first()
            .expect("non-contracted vertices map to singletons")
    }

    /// Image of a set of original vertices in the result graph.
    pub fn image(&self, set: &VertexSet) -> VertexSet {
        set.iter().map(|v| self.image_of[v]).collect()
    }

    /// Contracted vertex set.
    pub fn contracted(&self) -> &VertexSet {
        &self.origin_of[self.contracted_label]
    }
}
