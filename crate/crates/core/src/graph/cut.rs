use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use super::{EdgeId, Multigraph, Vertex, VertexSet};
use crate::error::{Error, Result};

/// A cut `∂(X)` of a specific graph.
///
/// The stored shore is canonical: whichever of `X`, `V - X` contains the
/// smallest vertex id. Two cuts of the same graph are equal iff their
/// canonical shores are equal.
#[derive(Clone)]
pub struct Cut {
    shore: VertexSet,
    order: usize,
    edge_ids: BTreeSet<EdgeId>,
    endpoints: Vec<(Vertex, Vertex)>,
    graph: u64,
}

/// Serialized shape of a [`Cut`]: canonical shore, cut edge endpoints and
/// the matching edge ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutRecord {
    pub shore: Vec<Vertex>,
    pub edges: Vec<(Vertex, Vertex)>,
    pub edge_ids: Vec<EdgeId>,
}

/// `∂(s)`: every edge with exactly one end in `s`.
pub fn boundary(g: &Multigraph, s: &VertexSet) -> Result<Cut> {
    let n = g.vertex_count();
    if s.is_empty() || s.len() >= n || !s.in_range(n) {
        return Err(Error::ImproperShore);
    }
    let inside = s.mask(n);
    let edge_ids: BTreeSet<EdgeId> = g
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, &(u, v))| inside[u] != inside[v])
        .map(|(e, _)| e)
        .collect();
    let endpoints = edge_ids.iter().map(|&e| g.endpoints(e)).collect();
    let shore = if s.contains(1) {
        s.clone()
    } else {
        s.complement(n)
    };
    Ok(Cut {
        shore,
        order: n,
        edge_ids,
        endpoints,
        graph: g.fingerprint(),
    })
}

/// Whether two cuts of the same graph are laminar (do not cross).
pub fn laminar(c: &Cut, d: &Cut) -> Result<bool> {
    if c.graph != d.graph || c.order != d.order {
        return Err(Error::MismatchedGraphs);
    }
    Ok(!shores_cross(&c.shore, &d.shore, c.order))
}

/// True when all four quadrants `X∩Y, X∩Ȳ, X̄∩Y, X̄∩Ȳ` are nonempty.
pub(crate) fn shores_cross(x: &VertexSet, y: &VertexSet, n: usize) -> bool {
    let xy = x.intersection(y).len();
    let x_only = x.len() - xy;
    let y_only = y.len() - xy;
    let neither = n - x.len() - y_only;
    xy > 0 && x_only > 0 && y_only > 0 && neither > 0
}

impl Cut {
    /// The canonical shore (contains vertex 1).
    pub fn shore(&self) -> &VertexSet {
        &self.shore
    }

    pub fn complement(&self) -> VertexSet {
        self.shore.complement(self.order)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn edge_ids(&self) -> &BTreeSet<EdgeId> {
        &self.edge_ids
    }

    pub fn len(&self) -> usize {
        self.edge_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edge_ids.is_empty()
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.edge_ids.contains(&e)
    }

    pub fn is_trivial(&self) -> bool {
        self.shore.len() == 1 || self.shore.len() + 1 == self.order
    }

    /// Whether `s` lies inside one of the two shores.
    pub fn shelters(&self, s: &VertexSet) -> bool {
        s.is_subset(&self.shore) || s.is_disjoint(&self.shore)
    }

    pub fn belongs_to(&self, g: &Multigraph) -> bool {
        self.graph == g.fingerprint() && self.order == g.vertex_count()
    }

    pub fn record(&self) -> CutRecord {
        CutRecord {
            shore: self.shore.to_vec(),
            edges: self.endpoints.clone(),
            edge_ids: self.edge_ids.iter().copied().collect(),
        }
    }

    /// Rebuilds a cut of `g` from its record, checking the stored edges.
    pub fn from_record(g: &Multigraph, r: &CutRecord) -> Result<Cut> {
        let cut = boundary(g, &VertexSet::from(r.shore.as_slice()))?;
        if cut.record() != *r {
            return Err(Error::precondition("cut record does not match graph"));
        }
        Ok(cut)
    }
}

impl PartialEq for Cut {
    fn eq(&self, other: &Self) -> bool {
        self.graph == other.graph && self.order == other.order && self.shore == other.shore
    }
}

impl Eq for Cut {}

impl Hash for Cut {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.graph.hash(state);
        self.shore.hash(state);
    }
}

impl PartialOrd for Cut {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cut {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.graph, self.order, &self.shore).cmp(&(other.graph, other.order, &other.shore))
    }
}

impl fmt::Debug for Cut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "∂({})", self.shore)
    }
}

impl Serialize for Cut {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.record().serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::named;

    #[test]
    fn boundary_of_c6_half() {
        let c6 = named::cycle(6);
        let cut = boundary(&c6, &VertexSet::from([1, 2, 3])).unwrap();
        let ends: Vec<_> = cut.record().edges;
        assert_eq!(ends, vec![(3, 4), (6, 1)]);
        assert_eq!(cut.record().edge_ids, vec![2, 5]);
        assert!(!cut.is_trivial());
    }

    #[test]
    fn boundary_of_k4_star() {
        let k4 = named::complete(4);
        let cut = boundary(&k4, &VertexSet::from([1])).unwrap();
        assert_eq!(cut.len(), 3);
        assert!(cut.is_trivial());
        for &e in cut.edge_ids() {
            let (u, v) = k4.endpoints(e);
            assert!(u == 1 || v == 1);
        }
    }

    #[test]
    fn improper_shores_rejected() {
        let c6 = named::cycle(6);
        assert_eq!(
            boundary(&c6, &VertexSet::full(6)).unwrap_err(),
            Error::ImproperShore
        );
        assert_eq!(
            boundary(&c6, &VertexSet::new()).unwrap_err(),
            Error::ImproperShore
        );
        assert_eq!(
            boundary(&c6, &VertexSet::from([7])).unwrap_err(),
            Error::ImproperShore
        );
    }

    #[test]
    fn canonical_shore_equality() {
        let c6 = named::cycle(6);
        let a = boundary(&c6, &VertexSet::from([1, 2, 3])).unwrap();
        let b = boundary(&c6, &VertexSet::from([4, 5, 6])).unwrap();
        assert_eq!(a, b);
        assert_eq!(b.shore(), &VertexSet::from([1, 2, 3]));
    }

    #[test]
    fn laminar_examples() {
        let c6 = named::cycle(6);
        let c = boundary(&c6, &VertexSet::from([1, 2, 3])).unwrap();
        let d = boundary(&c6, &VertexSet::from([2, 3, 4])).unwrap();
        let e = boundary(&c6, &VertexSet::from([1])).unwrap();
        assert!(!laminar(&c, &d).unwrap());
        assert!(laminar(&c, &c).unwrap());
        assert!(laminar(&c, &e).unwrap());

        let other = boundary(&named::complete(6), &VertexSet::from([1])).unwrap();
        assert_eq!(laminar(&c, &other), Err(Error::MismatchedGraphs));
    }

    #[test]
    fn record_round_trip() {
        let g = named::petersen();
        let cut = boundary(&g, &VertexSet::from([2, 5, 7])).unwrap();
        let json = serde_json::to_string(&cut).unwrap();
        let rec: CutRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(Cut::from_record(&g, &rec).unwrap(), cut);
    }
}
