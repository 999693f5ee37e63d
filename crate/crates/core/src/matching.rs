//! Matching engine: maximum matchings in general graphs (Edmonds' blossom
//! shrinking), perfect-matching queries with forced edges, matching
//! covered / bicritical tests, Tutte deficiency witnesses and bounded
//! enumeration of perfect matchings.
//!
//! All searches scan vertices and edges in ascending id order, so every
//! result is deterministic for a fixed input.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{odd_components, EdgeId, Multigraph, Vertex, VertexSet};

/// Default enumeration cap.
pub const DEFAULT_ENUMERATION_CAP: usize = 1_000_000;

/// A set of pairwise disjoint edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Matching {
    edge_ids: Vec<EdgeId>,
    pairs: Vec<(Vertex, Vertex)>,
    #[serde(skip)]
    covered: VertexSet,
}

impl Matching {
    /// Builds a matching from edge ids, rejecting edges that share an end.
    pub fn from_edges(g: &Multigraph, ids: impl IntoIterator<Item = EdgeId>) -> Result<Matching> {
        let ids: BTreeSet<EdgeId> = ids.into_iter().collect();
        let mut owner: Vec<Option<EdgeId>> = vec![None; g.vertex_count() + 1];
        for &e in &ids {
            if e >= g.edge_count() {
                return Err(Error::UnknownEdge(e));
            }
            let (u, v) = g.endpoints(e);
            for w in [u, v] {
                if let Some(f) = owner[w] {
                    return Err(Error::SharedEndpoint(f, e));
                }
                owner[w] = Some(e);
            }
        }
        let edge_ids: Vec<EdgeId> = ids.into_iter().collect();
        let pairs = edge_ids.iter().map(|&e| g.endpoints(e)).collect();
        let covered = edge_ids
            .iter()
            .flat_map(|&e| {
                let (u, v) = g.endpoints(e);
                [u, v]
            })
            .collect();
        Ok(Matching {
            edge_ids,
            pairs,
            covered,
        })
    }

    pub fn edge_ids(&self) -> &[EdgeId] {
        &self.edge_ids
    }

    pub fn pairs(&self) -> &[(Vertex, Vertex)] {
        &self.pairs
    }

    pub fn covered(&self) -> &VertexSet {
        &self.covered
    }

    pub fn len(&self) -> usize {
        self.edge_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edge_ids.is_empty()
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.edge_ids.binary_search(&e).is_ok()
    }
}

/// Edmonds' blossom algorithm on the live vertices of `g`. Returns the mate
/// array (1-based, 0 = unmatched).
struct Blossom {
    n: usize,
    adj: Vec<Vec<Vertex>>,
    mate: Vec<Vertex>,
    parent: Vec<Vertex>,
    base: Vec<Vertex>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
}

impl Blossom {
    fn new(g: &Multigraph, alive: &[bool]) -> Self {
        let n = g.vertex_count();
        let adj = (0..=n)
            .map(|v| {
                if v == 0 || !alive[v] {
                    Vec::new()
                } else {
                    g.neighbors(v).filter(|&w| alive[w]).collect()
                }
            })
            .collect();
        Blossom {
            n,
            adj,
            mate: vec![0; n + 1],
            parent: vec![0; n + 1],
            base: (0..=n).collect(),
            used: vec![false; n + 1],
            in_blossom: vec![false; n + 1],
        }
    }

    fn lca(&self, mut a: Vertex, mut b: Vertex) -> Vertex {
        let mut seen = vec![false; self.n + 1];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == 0 {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: Vertex, b: Vertex, mut child: Vertex) {
        while self.base[v] != b {
            let m = self.mate[v];
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[m]] = true;
            self.parent[v] = child;
            child = m;
            v = self.parent[m];
        }
    }

    fn find_path(&mut self, root: Vertex) -> Option<Vertex> {
        self.used.fill(false);
        self.parent.fill(0);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for i in 0..self.adj[v].len() {
                let to = self.adj[v][i];
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != 0 && self.parent[self.mate[to]] != 0) {
                    let cur = self.lca(v, to);
                    self.in_blossom.fill(false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for w in 1..=self.n {
                        if self.in_blossom[self.base[w]] {
                            self.base[w] = cur;
                            if !self.used[w] {
                                self.used[w] = true;
                                queue.push_back(w);
                            }
                        }
                    }
                } else if self.parent[to] == 0 {
                    self.parent[to] = v;
                    if self.mate[to] == 0 {
                        return Some(to);
                    }
                    self.used[self.mate[to]] = true;
                    queue.push_back(self.mate[to]);
                }
            }
        }
        None
    }

    fn run(mut self) -> Vec<Vertex> {
        for v in 1..=self.n {
            if self.mate[v] == 0 {
                if let Some(&w) = self.adj[v].iter().find(|&&w| self.mate[w] == 0) {
                    self.mate[v] = w;
                    self.mate[w] = v;
                }
            }
        }
        for root in 1..=self.n {
            if self.mate[root] != 0 || self.adj[root].is_empty() {
                continue;
            }
            if let Some(mut v) = self.find_path(root) {
                while v != 0 {
                    let pv = self.parent[v];
                    let next = self.mate[pv];
                    self.mate[v] = pv;
                    self.mate[pv] = v;
                    v = next;
                }
            }
        }
        self.mate
    }
}

fn alive_mask(g: &Multigraph, removed: &VertexSet) -> Vec<bool> {
    let gone = removed.mask(g.vertex_count());
    gone.iter().enumerate().map(|(i, &r)| i > 0 && !r).collect()
}

fn mates_to_matching(g: &Multigraph, mate: &[Vertex]) -> Matching {
    let ids = (1..mate.len())
        .filter(|&v| mate[v] > v)
        .map(|v| g.edge_between(v, mate[v]).expect("mates are adjacent"));
    Matching::from_edges(g, ids).expect("blossom output is a matching")
}

/// Size of a maximum matching of `G - removed`.
pub fn matching_number_without(g: &Multigraph, removed: &VertexSet) -> usize {
    let mate = Blossom::new(g, &alive_mask(g, removed)).run();
    mate.iter().filter(|&&m| m != 0).count() / 2
}

pub fn maximum_matching(g: &Multigraph) -> Matching {
    maximum_matching_without(g, &VertexSet::new())
}

/// A maximum matching of `G - removed`, with edge ids of `g`.
pub fn maximum_matching_without(g: &Multigraph, removed: &VertexSet) -> Matching {
    let mate = Blossom::new(g, &alive_mask(g, removed)).run();
    mates_to_matching(g, &mate)
}

pub fn has_perfect_matching(g: &Multigraph) -> bool {
    has_perfect_matching_without(g, &VertexSet::new())
}

/// Whether `G - removed` has a perfect matching.
pub fn has_perfect_matching_without(g: &Multigraph, removed: &VertexSet) -> bool {
    let live = g.vertex_count() - removed.iter().filter(|&v| v <= g.vertex_count()).count();
    live.is_multiple_of(2) && 2 * matching_number_without(g, removed) == live
}

/// A perfect matching containing every `forced` edge, if one exists.
pub fn perfect_matching_with(g: &Multigraph, forced: &[EdgeId]) -> Result<Option<Matching>> {
    let base = Matching::from_edges(g, forced.iter().copied())?;
    let removed = base.covered().clone();
    let live = g.vertex_count() - removed.len();
    if live % 2 == 1 {
        return Ok(None);
    }
    let rest = maximum_matching_without(g, &removed);
    if 2 * rest.len() != live {
        return Ok(None);
    }
    let all = base.edge_ids.iter().chain(rest.edge_ids.iter()).copied();
    Matching::from_edges(g, all).map(Some)
}

/// Connected, at least one edge, every edge in some perfect matching.
///
/// Parallel edges are covered together: one representative per adjacent
/// pair is tested.
pub fn is_matching_covered(g: &Multigraph) -> bool {
    if g.edge_count() == 0 || g.vertex_count() % 2 == 1 || !g.is_connected() {
        return false;
    }
    let mut tested = BTreeSet::new();
    g.edges().iter().all(|&(u, v)| {
        let key = (u.min(v), u.max(v));
        !tested.insert(key) || has_perfect_matching_without(g, &VertexSet::from([u, v]))
    })
}

/// `G - {u, v}` has a perfect matching for every pair of vertices.
pub fn is_bicritical(g: &Multigraph) -> bool {
    let n = g.vertex_count();
    if n % 2 == 1 {
        return false;
    }
    (1..=n).all(|u| (u + 1..=n).all(|v| has_perfect_matching_without(g, &VertexSet::from([u, v]))))
}

/// Tutte/Gallai–Edmonds certificate for the size of a maximum matching.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeficiencyWitness {
    /// Vertices missed by some maximum matching.
    pub d_set: VertexSet,
    /// Neighbours of `d_set` outside it.
    pub a_set: VertexSet,
    /// `o(G - a_set) - |a_set|`, equal to the number of vertices left
    /// uncovered by a maximum matching.
    pub deficiency: usize,
}

pub fn deficiency_witness(g: &Multigraph) -> Result<DeficiencyWitness> {
    deficiency_witness_without(g, &VertexSet::new())
}

/// Deficiency witness of `G - removed`, reported with the labels of `g`.
pub fn deficiency_witness_without(
    g: &Multigraph,
    removed: &VertexSet,
) -> Result<DeficiencyWitness> {
    let nu = matching_number_without(g, removed);
    let live: Vec<Vertex> = g.vertices().filter(|&v| !removed.contains(v)).collect();
    let d_set: VertexSet = live
        .iter()
        .copied()
        .filter(|&v| matching_number_without(g, &removed.with(v)) == nu)
        .collect();
    let a_set: VertexSet = d_set
        .iter()
        .flat_map(|v| g.neighbors(v).collect::<Vec<_>>())
        .filter(|&w| !removed.contains(w) && !d_set.contains(w))
        .collect();
    let odd = odd_components(g, &removed.union(&a_set));
    let expected = live.len() - 2 * nu;
    if odd < a_set.len() || odd - a_set.len() != expected {
        return Err(Error::internal(format!(
            "Gallai–Edmonds witness gives deficiency {}-{} but the maximum matching leaves {expected} uncovered",
            odd,
            a_set.len()
        )));
    }
    Ok(DeficiencyWitness {
        d_set,
        a_set,
        deficiency: expected,
    })
}

/// Depth-first enumeration of perfect matchings: the smallest uncovered
/// vertex is matched along its incident edges in ascending id order.
pub struct PerfectMatchingIter<'a> {
    g: &'a Multigraph,
    mate_edge: Vec<Option<EdgeId>>,
    // (vertex being matched, next position in its incidence list)
    stack: Vec<(Vertex, usize)>,
    done: bool,
}

impl<'a> PerfectMatchingIter<'a> {
    pub fn new(g: &'a Multigraph) -> Self {
        let n = g.vertex_count();
        let mut it = PerfectMatchingIter {
            g,
            mate_edge: vec![None; n + 1],
            stack: Vec::new(),
            done: n % 2 == 1,
        };
        if !it.done {
            if let Some(v) = it.first_free() {
                it.stack.push((v, 0));
            }
        }
        it
    }

    fn first_free(&self) -> Option<Vertex> {
        (1..=self.g.vertex_count()).find(|&v| self.mate_edge[v].is_none())
    }

    fn release(&mut self, v: Vertex) {
        if let Some(e) = self.mate_edge[v] {
            let (a, b) = self.g.endpoints(e);
            self.mate_edge[a] = None;
            self.mate_edge[b] = None;
        }
    }
}

impl Iterator for PerfectMatchingIter<'_> {
    type Item = Matching;

    fn next(&mut self) -> Option<Matching> {
        if self.done {
            return None;
        }
        if self.g.vertex_count() == 0 {
            self.done = true;
            return Some(Matching::from_edges(self.g, []).expect("empty matching"));
        }
        let g = self.g;
        while let Some(&(v, start)) = self.stack.last() {
            // undo the previous choice at this level
            if self.mate_edge[v].is_some() {
                self.release(v);
            }
            let incident = g.incident(v);
            let mut pos = start;
            let mut chosen = None;
            while pos < incident.len() {
                let (w, e) = incident[pos];
                pos += 1;
                if self.mate_edge[w].is_none() {
                    chosen = Some((w, e));
                    break;
                }
            }
            let top = self.stack.len() - 1;
            self.stack[top].1 = pos;
            let Some((w, e)) = chosen else {
                self.stack.pop();
                continue;
            };
            self.mate_edge[v] = Some(e);
            self.mate_edge[w] = Some(e);
            match self.first_free() {
                Some(next) => self.stack.push((next, 0)),
                None => {
                    let ids: BTreeSet<EdgeId> = self.mate_edge.iter().flatten().copied().collect();
                    return Some(
                        Matching::from_edges(g, ids).expect("enumerated edges are disjoint"),
                    );
                }
            }
        }
        self.done = true;
        None
    }
}

/// Result of a capped enumeration.
#[derive(Clone, Debug)]
pub struct PerfectMatchings {
    pub matchings: Vec<Matching>,
    /// More than `cap` perfect matchings exist.
    pub overflow: bool,
}

pub fn enumerate_perfect_matchings(g: &Multigraph, cap: usize) -> PerfectMatchings {
    let mut it = PerfectMatchingIter::new(g);
    let matchings: Vec<Matching> = it.by_ref().take(cap.max(1)).collect();
    let overflow = it.next().is_some();
    PerfectMatchings {
        matchings,
        overflow,
    }
}
