//! Barriers, 2-separations and the ELP cuts they induce.
//!
//! A barrier `B` has `o(G-B) = |B|`; a 2-separation is a pair whose removal
//! leaves only even components (at least two). The cuts around barrier
//! components and the cuts `∂(side + u)`, `∂(side + v)` of a 2-separation
//! `{u, v}` are the ELP cuts; all of them are tight.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{boundary, components, laminar, Cut, Multigraph, Vertex, VertexSet};
use crate::matching::{
    deficiency_witness_without, has_perfect_matching_without, is_matching_covered,
    maximum_matching_without,
};
use crate::tightcuts::tightness_witness;

/// A verified barrier together with the components of `G - B`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Barrier {
    members: VertexSet,
    odd_components: Vec<VertexSet>,
}

impl Barrier {
    pub fn members(&self) -> &VertexSet {
        &self.members
    }

    /// Components of `G - B`, ordered by smallest vertex. All odd unless
    /// the barrier came from the raw count on a graph that is not matching
    /// covered (see `oracle::all_barriers`).
    pub fn odd_components(&self) -> &[VertexSet] {
        &self.odd_components
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_nontrivial(&self) -> bool {
        self.members.len() >= 2
    }

    pub(crate) fn from_parts(members: VertexSet, components: Vec<VertexSet>) -> Barrier {
        Barrier {
            members,
            odd_components: components,
        }
    }
}

/// A verified 2-separation `{u, v}` (`u < v`) with the even components of
/// `G - {u, v}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoSeparation {
    pair: (Vertex, Vertex),
    even_components: Vec<VertexSet>,
}

impl TwoSeparation {
    pub fn pair(&self) -> (Vertex, Vertex) {
        self.pair
    }

    pub fn pair_set(&self) -> VertexSet {
        VertexSet::from([self.pair.0, self.pair.1])
    }

    pub fn even_components(&self) -> &[VertexSet] {
        &self.even_components
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.pair.0 == v || self.pair.1 == v
    }

    /// The pair vertex other than `v`.
    pub fn other(&self, v: Vertex) -> Vertex {
        if self.pair.0 == v {
            self.pair.1
        } else {
            self.pair.0
        }
    }

    /// Whether `side` is a nonempty union of some, but not all, components.
    pub fn is_side(&self, side: &VertexSet) -> bool {
        if side.is_empty() {
            return false;
        }
        let mut used = 0;
        let mut covered = 0;
        for k in &self.even_components {
            if k.is_subset(side) {
                used += 1;
                covered += k.len();
            } else if !k.is_disjoint(side) {
                return false;
            }
        }
        covered == side.len() && used < self.even_components.len()
    }

    /// Every nonempty proper union of components, smallest masks first.
    pub fn sides(&self) -> Vec<VertexSet> {
        let k = self.even_components.len();
        (1u64..(1u64 << k) - 1)
            .map(|mask| {
                (0..k)
                    .filter(|i| mask >> i & 1 == 1)
                    .flat_map(|i| self.even_components[i].iter().collect::<Vec<_>>())
                    .collect()
            })
            .collect()
    }
}

/// Which kind of structure a vertex set is claimed to be.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StructureKind {
    Barrier,
    Separation,
}

/// An ELP cut with the structure that certifies it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ElpCut {
    BarrierCut {
        barrier: Barrier,
        component_index: usize,
        cut: Cut,
    },
    SeparationCut {
        sep: TwoSeparation,
        cut: Cut,
    },
}

impl ElpCut {
    pub fn cut(&self) -> &Cut {
        match self {
            ElpCut::BarrierCut { cut, .. } | ElpCut::SeparationCut { cut, .. } => cut,
        }
    }

    pub fn is_nontrivial(&self) -> bool {
        !self.cut().is_trivial()
    }
}

/// Relation between a barrier or 2-separation and a cut `C`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ShelterStatus {
    /// Inside one shore of `C`.
    Sheltered,
    /// Not inside a shore, but every associated ELP cut is laminar with `C`.
    AvoidingOnly,
    /// Some associated ELP cut crosses `C`.
    Crossing { witness: Cut },
}

/// `s` as a barrier of `g`, if `o(G - s) = |s|`.
///
/// Only sets that also satisfy the structural consequences (independent,
/// no even component) are accepted; in a matching covered graph these
/// follow from the count.
pub fn is_barrier(g: &Multigraph, s: &VertexSet) -> Result<Option<Barrier>> {
    if s.is_empty() {
        return Err(Error::precondition("barrier candidate is empty"));
    }
    check_in_range(g, s)?;
    if s.len() >= g.vertex_count() {
        return Ok(None);
    }
    let (comps, odd) = components(g, s);
    if odd != s.len() || odd != comps.len() || !g.is_independent(s) {
        return Ok(None);
    }
    Ok(Some(Barrier {
        members: s.clone(),
        odd_components: comps,
    }))
}

pub fn is_two_separation(g: &Multigraph, u: Vertex, v: Vertex) -> Result<Option<TwoSeparation>> {
    if u == v {
        return Err(Error::precondition(
            "2-separation needs two distinct vertices",
        ));
    }
    let pair = VertexSet::from([u, v]);
    check_in_range(g, &pair)?;
    let comps = g.components_without(&pair);
    if comps.len() < 2 || comps.iter().any(VertexSet::is_odd) {
        return Ok(None);
    }
    Ok(Some(TwoSeparation {
        pair: (u.min(v), u.max(v)),
        even_components: comps,
    }))
}

fn check_in_range(g: &Multigraph, s: &VertexSet) -> Result<()> {
    match s.iter().find(|&v| v == 0 || v > g.vertex_count()) {
        Some(v) => Err(Error::VertexOutOfRange {
            vertex: v,
            order: g.vertex_count(),
        }),
        None => Ok(()),
    }
}

/// All 2-separations, pairs in lexicographic order.
pub fn find_two_separations(g: &Multigraph) -> Vec<TwoSeparation> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            if let Some(sep) = is_two_separation(g, u, v).expect("distinct in-range pair") {
                out.push(sep);
            }
        }
    }
    out
}

/// Barrier grown from a pair `{u, v}` with no perfect matching in
/// `G - u - v`: the Tutte set of `G - u - v` plus the pair.
pub(crate) fn barrier_from_failing_pair(g: &Multigraph, u: Vertex, v: Vertex) -> Result<Barrier> {
    let pair = VertexSet::from([u, v]);
    let w = deficiency_witness_without(g, &pair)?;
    let b = w.a_set.union(&pair);
    is_barrier(g, &b)?.ok_or_else(|| {
        Error::internal(format!(
            "{b} grown from failing pair {{{u},{v}}} is not a barrier"
        ))
    })
}

/// Pairs `{u, v}` (lexicographic) such that `G - u - v` has no perfect
/// matching.
pub(crate) fn failing_pairs(g: &Multigraph) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
    let n = g.vertex_count();
    (1..=n)
        .flat_map(move |u| (u + 1..=n).map(move |v| (u, v)))
        .filter(move |&(u, v)| !has_perfect_matching_without(g, &VertexSet::from([u, v])))
}

/// A nontrivial barrier from the first failing pair, or `None` when the
/// graph is bicritical.
pub fn find_nontrivial_barrier(g: &Multigraph) -> Result<Option<Barrier>> {
    if !is_matching_covered(g) {
        return Err(Error::NotMatchingCovered);
    }
    find_nontrivial_barrier_unchecked(g)
}

pub(crate) fn find_nontrivial_barrier_unchecked(g: &Multigraph) -> Result<Option<Barrier>> {
    match failing_pairs(g).next() {
        Some((u, v)) => barrier_from_failing_pair(g, u, v).map(Some),
        None => Ok(None),
    }
}

fn verify_tight(g: &Multigraph, cut: &Cut, what: &str) -> Result<()> {
    match tightness_witness(g, cut) {
        None => Ok(()),
        Some(m) => Err(Error::internal(format!(
            "{what} {cut:?} is not tight: perfect matching {:?} meets it {} times",
            m.pairs(),
            m.edge_ids()
                .iter()
                .filter(|&&e| cut.contains_edge(e))
                .count()
        ))),
    }
}

/// `∂(K)` for every component `K` of `G - B`, each checked tight.
pub fn barrier_cuts(g: &Multigraph, b: &Barrier) -> Result<Vec<Cut>> {
    b.odd_components
        .iter()
        .map(|k| {
            let cut = boundary(g, k)?;
            verify_tight(g, &cut, "barrier cut")?;
            Ok(cut)
        })
        .collect()
}

/// `(∂(side + u), ∂(side + v))` for the pair `{u, v}`, both checked tight.
pub fn separation_cut_pair(
    g: &Multigraph,
    sep: &TwoSeparation,
    side: &VertexSet,
) -> Result<(Cut, Cut)> {
    if !sep.is_side(side) {
        return Err(Error::precondition(format!(
            "{side} is not a nonempty proper union of components of G - {{{},{}}}",
            sep.pair.0, sep.pair.1
        )));
    }
    let first = boundary(g, &side.with(sep.pair.0))?;
    let second = boundary(g, &side.with(sep.pair.1))?;
    verify_tight(g, &first, "2-separation cut")?;
    verify_tight(g, &second, "2-separation cut")?;
    Ok((first, second))
}

/// Every ELP cut associated with `s`: barrier cuts, or both cuts of every
/// side of a 2-separation.
pub(crate) fn associated_cuts(
    g: &Multigraph,
    s: &VertexSet,
    kind: StructureKind,
) -> Result<Vec<Cut>> {
    match kind {
        StructureKind::Barrier => {
            let b = is_barrier(g, s)?
                .ok_or_else(|| Error::precondition(format!("{s} is not a barrier")))?;
            b.odd_components.iter().map(|k| boundary(g, k)).collect()
        }
        StructureKind::Separation => {
            let sep = as_separation(g, s)?;
            let mut out = Vec::new();
            for side in sep.sides() {
                for p in [sep.pair.0, sep.pair.1] {
                    out.push(boundary(g, &side.with(p))?);
                }
            }
            Ok(out)
        }
    }
}

fn as_separation(g: &Multigraph, s: &VertexSet) -> Result<TwoSeparation> {
    let v = s.to_vec();
    if v.len() != 2 {
        return Err(Error::precondition(format!("{s} is not a vertex pair")));
    }
    is_two_separation(g, v[0], v[1])?
        .ok_or_else(|| Error::precondition(format!("{s} is not a 2-separation")))
}

pub fn shelter_status(
    g: &Multigraph,
    c: &Cut,
    s: &VertexSet,
    kind: StructureKind,
) -> Result<ShelterStatus> {
    if !c.belongs_to(g) {
        return Err(Error::MismatchedGraphs);
    }
    let cuts = associated_cuts(g, s, kind)?;
    if c.shelters(s) {
        return Ok(ShelterStatus::Sheltered);
    }
    for d in cuts {
        if !laminar(c, &d)? {
            return Ok(ShelterStatus::Crossing { witness: d });
        }
    }
    Ok(ShelterStatus::AvoidingOnly)
}

/// First nontrivial ELP cut in the fixed search order, or `None` if the
/// graph has none.
///
/// Order: the lexicographically first 2-separation with its first
/// component as side and the smaller pair vertex; then, for every pair
/// `{u, v}` with no perfect matching in `G - u - v`, the first nonsingleton
/// component of the barrier grown from it; finally, for bipartite graphs,
/// the barriers given by Hall sets (see [`hall_barriers`]).
pub fn find_nontrivial_elp_cut(g: &Multigraph) -> Result<Option<ElpCut>> {
    if !is_matching_covered(g) {
        return Err(Error::NotMatchingCovered);
    }
    find_nontrivial_elp_cut_unchecked(g)
}

pub(crate) fn find_nontrivial_elp_cut_unchecked(g: &Multigraph) -> Result<Option<ElpCut>> {
    if let Some(sep) = find_two_separations(g).into_iter().next() {
        let side = sep.even_components[0].clone();
        let cut = boundary(g, &side.with(sep.pair.0))?;
        return Ok(Some(ElpCut::SeparationCut { sep, cut }));
    }
    for (u, v) in failing_pairs(g) {
        let b = barrier_from_failing_pair(g, u, v)?;
        if let Some(e) = first_barrier_cut(g, b)? {
            return Ok(Some(e));
        }
    }
    for b in hall_barriers(g, true)? {
        if let Some(e) = first_barrier_cut(g, b)? {
            return Ok(Some(e));
        }
    }
    Ok(None)
}

fn first_barrier_cut(g: &Multigraph, b: Barrier) -> Result<Option<ElpCut>> {
    match b.odd_components.iter().position(|k| k.len() >= 3) {
        Some(i) => {
            let cut = boundary(g, &b.odd_components[i])?;
            Ok(Some(ElpCut::BarrierCut {
                barrier: b,
                component_index: i,
                cut,
            }))
        }
        None => Ok(None),
    }
}

/// Barriers of a bipartite matching covered graph found through Hall sets.
///
/// With colour classes `A`, `A'` of size `k`, a set `S ⊆ A` with
/// `|N(S)| = |S| + 1` and `|S| ≤ k - 2` makes `A - S` a barrier whose
/// component `S ∪ N(S)` has at least three vertices. Such sets are found
/// as alternating-reachability sets: for `w ≠ w'` in `A` and `b` in `A'`,
/// the vertices of `A` reachable from `w` along alternating paths of a
/// perfect matching of `G - w' - b`. Every minimal such `S` arises this
/// way, so an empty result means none exists. Returns an empty list for
/// nonbipartite graphs.
pub(crate) fn hall_barriers(g: &Multigraph, first_only: bool) -> Result<Vec<Barrier>> {
    let Some(colour) = g.bipartition() else {
        return Ok(Vec::new());
    };
    let n = g.vertex_count();
    let mut seen: BTreeSet<VertexSet> = BTreeSet::new();
    let mut out = Vec::new();
    for side in [colour[1], 1 - colour[1]] {
        let whites: VertexSet = g.vertices().filter(|&v| colour[v] == side).collect();
        let blacks: VertexSet = g.vertices().filter(|&v| colour[v] != side).collect();
        let k = whites.len();
        if k < 3 || blacks.len() != k {
            continue;
        }
        for w in whites.iter() {
            for w2 in whites.iter().filter(|&x| x != w) {
                for b in blacks.iter() {
                    let removed = VertexSet::from([w2, b]);
                    let m = maximum_matching_without(g, &removed);
                    if 2 * m.len() != n - 2 {
                        continue;
                    }
                    let mut mate = vec![0; n + 1];
                    for &(x, y) in m.pairs() {
                        mate[x] = y;
                        mate[y] = x;
                    }
                    let s = alternating_reach(g, w, b, &mate);
                    if s.len() > k - 2 || seen.contains(&s) {
                        continue;
                    }
                    seen.insert(s.clone());
                    let nbrs: VertexSet = s
                        .iter()
                        .flat_map(|x| g.neighbors(x).collect::<Vec<_>>())
                        .collect();
                    if nbrs.len() != s.len() + 1 {
                        return Err(Error::internal(format!(
                            "Hall set {s} has {} neighbours, expected {}",
                            nbrs.len(),
                            s.len() + 1
                        )));
                    }
                    let barrier = is_barrier(g, &whites.difference(&s))?.ok_or_else(|| {
                        Error::internal(format!("complement of Hall set {s} is not a barrier"))
                    })?;
                    out.push(barrier);
                    if first_only {
                        return Ok(out);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Vertices on `w`'s side reachable from `w` by alternating paths that
/// avoid `b`.
fn alternating_reach(g: &Multigraph, w: Vertex, b: Vertex, mate: &[Vertex]) -> VertexSet {
    let mut s = VertexSet::singleton(w);
    let mut visited = VertexSet::singleton(b);
    let mut stack = vec![w];
    while let Some(x) = stack.pop() {
        for y in g.neighbors(x) {
            if !visited.insert(y) {
                continue;
            }
            let z = mate[y];
            if z != 0 && s.insert(z) {
                stack.push(z);
            }
        }
    }
    s
}

/// Every nontrivial ELP cut this module can produce: 2-separation cuts of
/// each single component with each pair vertex, and the nonsingleton
/// components of barriers grown from failing pairs, of failing pairs that
/// are themselves barriers, and of Hall sets. Deduplicated by cut, in
/// discovery order.
pub fn elp_cut_candidates(g: &Multigraph) -> Result<Vec<ElpCut>> {
    if !is_matching_covered(g) {
        return Err(Error::NotMatchingCovered);
    }
    elp_cut_candidates_unchecked(g)
}

pub(crate) fn elp_cut_candidates_unchecked(g: &Multigraph) -> Result<Vec<ElpCut>> {
    let mut out: Vec<ElpCut> = Vec::new();
    let mut seen: BTreeSet<VertexSet> = BTreeSet::new();
    let mut push = |e: ElpCut, out: &mut Vec<ElpCut>| {
        if e.is_nontrivial() && seen.insert(e.cut().shore().clone()) {
            out.push(e);
        }
    };
    for sep in find_two_separations(g) {
        for side in &sep.even_components {
            for p in [sep.pair.0, sep.pair.1] {
                let cut = boundary(g, &side.with(p))?;
                push(
                    ElpCut::SeparationCut {
                        sep: sep.clone(),
                        cut,
                    },
                    &mut out,
                );
            }
        }
    }
    let mut barriers = Vec::new();
    for (u, v) in failing_pairs(g).collect::<Vec<_>>() {
        barriers.push(barrier_from_failing_pair(g, u, v)?);
        if let Some(b) = is_barrier(g, &VertexSet::from([u, v]))? {
            barriers.push(b);
        }
    }
    barriers.extend(hall_barriers(g, false)?);
    for b in barriers {
        for (i, k) in b.odd_components.iter().enumerate() {
            if k.len() >= 3 {
                let cut = boundary(g, k)?;
                push(
                    ElpCut::BarrierCut {
                        barrier: b.clone(),
                        component_index: i,
                        cut,
                    },
                    &mut out,
                );
            }
        }
    }
    Ok(out)
}
