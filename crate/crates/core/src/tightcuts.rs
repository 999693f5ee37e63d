//! Tight cuts: the pairwise tightness test, tight contractions, the
//! intersection/union of crossing tight cuts, and the tight cut
//! decomposition into bricks and braces.

use std::fmt;

use serde::Serialize;

use crate::elp::{elp_cut_candidates_unchecked, find_nontrivial_elp_cut_unchecked};
use crate::error::{Error, Result};
use crate::graph::{
    boundary, canonical_form, contract, CanonicalForm, Contraction, Cut, Multigraph, VertexSet,
};
use crate::matching::{is_matching_covered, perfect_matching_with, Matching};

/// A perfect matching with two or more edges in `c`, if one exists.
///
/// Assumes `c` has an odd shore, so every perfect matching meets it at
/// least once; tightness then fails exactly when some pair of disjoint cut
/// edges extends to a perfect matching.
pub fn tightness_witness(g: &Multigraph, c: &Cut) -> Option<Matching> {
    let ids: Vec<_> = c.edge_ids().iter().copied().collect();
    for (i, &e) in ids.iter().enumerate() {
        let (a, b) = g.endpoints(e);
        for &f in &ids[i + 1..] {
            let (x, y) = g.endpoints(f);
            if a == x || a == y || b == x || b == y {
                continue;
            }
            if let Ok(Some(m)) = perfect_matching_with(g, &[e, f]) {
                return Some(m);
            }
        }
    }
    None
}

fn check_cut_input(g: &Multigraph, c: &Cut) -> Result<()> {
    if !c.belongs_to(g) {
        return Err(Error::MismatchedGraphs);
    }
    if !c.shore().is_odd() {
        return Err(Error::EvenShore(c.shore().len()));
    }
    if !is_matching_covered(g) {
        return Err(Error::NotMatchingCovered);
    }
    Ok(())
}

/// Whether every perfect matching of `g` meets `c` exactly once.
pub fn is_tight(g: &Multigraph, c: &Cut) -> Result<bool> {
    check_cut_input(g, c)?;
    Ok(tightness_witness(g, c).is_none())
}

/// Like [`is_tight`], but reports a non-tight cut as
/// [`Error::NotTight`] carrying the offending perfect matching.
pub fn require_tight(g: &Multigraph, c: &Cut) -> Result<()> {
    check_cut_input(g, c)?;
    match tightness_witness(g, c) {
        None => Ok(()),
        Some(witness) => Err(Error::NotTight { witness }),
    }
}

/// Both `c`-contractions: first `G/(X̄→x̄)` (keeps the canonical shore `X`),
/// then `G/(X→x)`. Each is checked to be matching covered.
pub fn tight_contractions(g: &Multigraph, c: &Cut) -> Result<(Contraction, Contraction)> {
    require_tight(g, c)?;
    contractions_unchecked(g, c)
}

pub(crate) fn contractions_unchecked(
    g: &Multigraph,
    c: &Cut,
) -> Result<(Contraction, Contraction)> {
    let keep_shore = contract(g, &c.complement())?;
    let keep_complement = contract(g, c.shore())?;
    for h in [&keep_shore, &keep_complement] {
        if !is_matching_covered(&h.result) {
            return Err(Error::internal(format!(
                "contraction of tight cut {c:?} is not matching covered"
            )));
        }
    }
    Ok((keep_shore, keep_complement))
}

/// `(∂(X∩Y), ∂(X∪Y))` for tight cuts `∂(X)`, `∂(Y)` with `|X∩Y|` odd.
///
/// Both results are checked tight, and no edge may join `X∩Ȳ` to `X̄∩Y`.
pub fn cut_meet_join(g: &Multigraph, x: &VertexSet, y: &VertexSet) -> Result<(Cut, Cut)> {
    let c = boundary(g, x)?;
    let d = boundary(g, y)?;
    require_tight(g, &c)?;
    require_tight(g, &d)?;
    meet_join_unchecked(g, x, y)
}

pub(crate) fn meet_join_unchecked(
    g: &Multigraph,
    x: &VertexSet,
    y: &VertexSet,
) -> Result<(Cut, Cut)> {
    let meet = x.intersection(y);
    if !meet.is_odd() {
        return Err(Error::EvenIntersection(meet.len()));
    }
    let join = x.union(y);
    let i = boundary(g, &meet)?;
    let u = boundary(g, &join)?;
    for (cut, name) in [(&i, "intersection"), (&u, "union")] {
        if let Some(m) = tightness_witness(g, cut) {
            return Err(Error::internal(format!(
                "{name} cut {cut:?} of tight cuts is not tight (matching {:?})",
                m.pairs()
            )));
        }
    }
    let x_only = x.difference(y);
    let y_only = y.difference(x);
    if let Some(&(a, b)) = g.edges().iter().find(|&&(a, b)| {
        (x_only.contains(a) && y_only.contains(b)) || (x_only.contains(b) && y_only.contains(a))
    }) {
        return Err(Error::internal(format!(
            "edge {a}{b} joins {x_only} to {y_only}"
        )));
    }
    Ok((i, u))
}

/// How [`decompose`] picks the nontrivial tight cut at each node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Strategy {
    /// The first cut of [`crate::elp::find_nontrivial_elp_cut`].
    #[serde(rename = "a")]
    LexFirst,
    /// The candidate ELP cut whose smaller shore is largest; ties go to
    /// the lexicographically smallest canonical shore.
    #[serde(rename = "b")]
    Balanced,
    /// Strategy `a` applied to the graph with vertex order reversed.
    #[serde(rename = "c")]
    Reversed,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [Strategy::LexFirst, Strategy::Balanced, Strategy::Reversed];

    pub fn label(self) -> &'static str {
        match self {
            Strategy::LexFirst => "a",
            Strategy::Balanced => "b",
            Strategy::Reversed => "c",
        }
    }

    pub fn from_label(s: &str) -> Option<Strategy> {
        Strategy::ALL.into_iter().find(|st| st.label() == s)
    }

    fn choose(self, g: &Multigraph) -> Result<Option<Cut>> {
        match self {
            Strategy::LexFirst => {
                Ok(find_nontrivial_elp_cut_unchecked(g)?.map(|e| e.cut().clone()))
            }
            Strategy::Balanced => {
                let n = g.vertex_count();
                let best = elp_cut_candidates_unchecked(g)?
                    .into_iter()
                    .map(|e| e.cut().clone())
                    .min_by(|a, b| {
                        let small = |c: &Cut| c.shore().len().min(n - c.shore().len());
                        small(b)
                            .cmp(&small(a))
                            .then_with(|| a.shore().cmp(b.shore()))
                    });
                Ok(best)
            }
            Strategy::Reversed => {
                let n = g.vertex_count();
                let map: Vec<usize> = (0..=n)
                    .map(|v| if v == 0 { 0 } else { n + 1 - v })
                    .collect();
                let rev = g.relabeled(&map);
                match find_nontrivial_elp_cut_unchecked(&rev)? {
                    None => Ok(None),
                    Some(e) => {
                        let shore: VertexSet = e.cut().shore().iter().map(|v| map[v]).collect();
                        boundary(g, &shore).map(Some)
                    }
                }
            }
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LeafKind {
    Brick,
    Brace,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Brick,
    Brace,
    Decomposable,
}

/// What two decompositions must agree on for a leaf: its kind, order and
/// the canonical form of its underlying simple graph.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct LeafSignature {
    pub kind: LeafKind,
    pub order: usize,
    pub canonical: CanonicalForm,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "node", rename_all = "snake_case")]
pub enum DecompositionNode {
    Leaf {
        kind: LeafKind,
        graph: Multigraph,
        signature: LeafSignature,
    },
    Internal {
        graph: Multigraph,
        cut: Cut,
        /// `[G/(X̄→x̄), G/(X→x)]` for the canonical shore `X` of `cut`.
        children: Box<[DecompositionNode; 2]>,
    },
}

impl DecompositionNode {
    pub fn graph(&self) -> &Multigraph {
        match self {
            DecompositionNode::Leaf { graph, .. } | DecompositionNode::Internal { graph, .. } => {
                graph
            }
        }
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a DecompositionNode>) {
        match self {
            DecompositionNode::Leaf { .. } => out.push(self),
            DecompositionNode::Internal { children, .. } => {
                children[0].collect_leaves(out);
                children[1].collect_leaves(out);
            }
        }
    }

    fn collect_internal<'a>(&'a self, out: &mut Vec<(&'a Multigraph, &'a Cut)>) {
        if let DecompositionNode::Internal {
            graph,
            cut,
            children,
        } = self
        {
            out.push((graph, cut));
            children[0].collect_internal(out);
            children[1].collect_internal(out);
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionTree {
    pub strategy: Strategy,
    pub brick_number: usize,
    pub root: DecompositionNode,
}

impl DecompositionTree {
    pub fn leaves(&self) -> Vec<&DecompositionNode> {
        let mut out = Vec::new();
        self.root.collect_leaves(&mut out);
        out
    }

    /// Leaf signatures, sorted, so two trees can be compared as multisets.
    pub fn leaf_signatures(&self) -> Vec<LeafSignature> {
        let mut sigs: Vec<LeafSignature> = self
            .leaves()
            .into_iter()
            .filter_map(|n| match n {
                DecompositionNode::Leaf { signature, .. } => Some(signature.clone()),
                DecompositionNode::Internal { .. } => None,
            })
            .collect();
        sigs.sort();
        sigs
    }

    /// `(node graph, cut)` for every internal node, preorder.
    pub fn internal_cuts(&self) -> Vec<(&Multigraph, &Cut)> {
        let mut out = Vec::new();
        self.root.collect_internal(&mut out);
        out
    }
}

/// Tight cut decomposition of a matching covered graph.
pub fn decompose(g: &Multigraph, strategy: Strategy) -> Result<DecompositionTree> {
    if !is_matching_covered(g) {
        return Err(Error::NotMatchingCovered);
    }
    let root = decompose_node(g, strategy)?;
    let mut tree = DecompositionTree {
        strategy,
        brick_number: 0,
        root,
    };
    tree.brick_number = tree
        .leaves()
        .iter()
        .filter(|n| {
            matches!(
                n,
                DecompositionNode::Leaf {
                    kind: LeafKind::Brick,
                    ..
                }
            )
        })
        .count();
    Ok(tree)
}

fn decompose_node(g: &Multigraph, strategy: Strategy) -> Result<DecompositionNode> {
    match strategy.choose(g)? {
        None => {
            let kind = if g.is_bipartite() {
                LeafKind::Brace
            } else {
                LeafKind::Brick
            };
            Ok(DecompositionNode::Leaf {
                kind,
                graph: g.clone(),
                signature: LeafSignature {
                    kind,
                    order: g.vertex_count(),
                    canonical: canonical_form(g),
                },
            })
        }
        Some(cut) => {
            let (a, b) = contractions_unchecked(g, &cut)?;
            let left = decompose_node(&a.result, strategy)?;
            let right = decompose_node(&b.result, strategy)?;
            Ok(DecompositionNode::Internal {
                graph: g.clone(),
                cut,
                children: Box::new([left, right]),
            })
        }
    }
}

pub fn classify(g: &Multigraph) -> Result<Classification> {
    if !is_matching_covered(g) {
        return Err(Error::NotMatchingCovered);
    }
    Ok(match find_nontrivial_elp_cut_unchecked(g)? {
        Some(_) => Classification::Decomposable,
        None if g.is_bipartite() => Classification::Brace,
        None => Classification::Brick,
    })
}

/// Number of bricks in a tight cut decomposition.
pub fn brick_number(g: &Multigraph) -> Result<usize> {
    decompose(g, Strategy::LexFirst).map(|t| t.brick_number)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::named;
    use crate::matching::enumerate_perfect_matchings;

    fn set(v: &[usize]) -> VertexSet {
        VertexSet::from(v)
    }

    /// Tightness straight from the definition.
    fn tight_by_enumeration(g: &Multigraph, c: &Cut) -> bool {
        let all = enumerate_perfect_matchings(g, 1_000_000);
        assert!(!all.overflow);
        all.matchings
            .iter()
            .all(|m| m.edge_ids().iter().filter(|&&e| c.contains_edge(e)).count() == 1)
    }

    #[test]
    fn tight_examples() {
        let c6 = named::cycle(6);
        let c = boundary(&c6, &set(&[1, 2, 3])).unwrap();
        assert!(is_tight(&c6, &c).unwrap());
        let d = boundary(&c6, &set(&[1, 2, 4])).unwrap();
        assert!(!is_tight(&c6, &d).unwrap());
        match require_tight(&c6, &d) {
            Err(Error::NotTight { witness }) => {
                assert_eq!(witness.pairs(), &[(2, 3), (4, 5), (6, 1)]);
                assert_eq!(
                    witness
                        .edge_ids()
                        .iter()
                        .filter(|&&e| d.contains_edge(e))
                        .count(),
                    3
                );
            }
            other => panic!("unexpected {other:?}"),
        }
        for v in 1..=6 {
            assert!(is_tight(&c6, &boundary(&c6, &set(&[v])).unwrap()).unwrap());
        }
        assert_eq!(
            is_tight(&c6, &boundary(&c6, &set(&[1, 2])).unwrap()),
            Err(Error::EvenShore(2))
        );
        let p4 = named::path(4);
        assert_eq!(
            is_tight(&p4, &boundary(&p4, &set(&[1])).unwrap()),
            Err(Error::NotMatchingCovered)
        );
    }

    #[test]
    fn tightness_matches_enumeration_on_named_graphs() {
        for (name, g) in named::all() {
            let n = g.vertex_count();
            for mask in 1u32..(1 << n) - 1 {
                if mask & 1 == 0 || mask.count_ones() % 2 == 0 {
                    continue;
                }
                let shore: VertexSet = (1..=n).filter(|v| mask >> (v - 1) & 1 == 1).collect();
                let c = boundary(&g, &shore).unwrap();
                assert_eq!(
                    tightness_witness(&g, &c).is_none(),
                    tight_by_enumeration(&g, &c),
                    "{name} {shore}"
                );
            }
        }
    }

    #[test]
    fn contraction_examples() {
        let c6 = named::cycle(6);
        let c = boundary(&c6, &set(&[1, 2, 3])).unwrap();
        let (a, b) = tight_contractions(&c6, &c).unwrap();
        for h in [&a, &b] {
            assert_eq!(h.result.vertex_count(), 4);
            assert_eq!(h.result.edge_count(), 4);
            assert!(h.result.vertices().all(|v| h.result.degree(v) == 2));
        }
        let star = boundary(&c6, &set(&[4])).unwrap();
        // canonical shore is V - 4, so the first contraction only renames 4
        let (a, _) = tight_contractions(&c6, &star).unwrap();
        assert_eq!(canonical_form(&a.result), canonical_form(&c6));
        assert_eq!(a.result.edge_count(), 6);
        let bad = boundary(&c6, &set(&[1, 2, 4])).unwrap();
        assert!(matches!(
            tight_contractions(&c6, &bad),
            Err(Error::NotTight { .. })
        ));
    }

    #[test]
    fn meet_join_examples() {
        let c6 = named::cycle(6);
        let (i, u) = cut_meet_join(&c6, &set(&[1, 2, 3]), &set(&[3, 4, 5])).unwrap();
        assert_eq!(i, boundary(&c6, &set(&[3])).unwrap());
        assert_eq!(u, boundary(&c6, &set(&[1, 2, 3, 4, 5])).unwrap());
        let x = set(&[1, 2, 3]);
        let (i, u) = cut_meet_join(&c6, &x, &x).unwrap();
        let c = boundary(&c6, &x).unwrap();
        assert_eq!((i, u), (c.clone(), c));
        assert_eq!(
            cut_meet_join(&c6, &set(&[1, 2, 3]), &set(&[2, 3, 4])),
            Err(Error::EvenIntersection(2))
        );
    }

    #[test]
    fn decomposition_examples() {
        let k4 = decompose(&named::complete(4), Strategy::LexFirst).unwrap();
        assert_eq!(k4.brick_number, 1);
        assert!(matches!(
            k4.root,
            DecompositionNode::Leaf {
                kind: LeafKind::Brick,
                ..
            }
        ));

        let c6 = named::cycle(6);
        let t = decompose(&c6, Strategy::LexFirst).unwrap();
        assert_eq!(t.brick_number, 0);
        match &t.root {
            DecompositionNode::Internal { cut, .. } => {
                assert_eq!(cut, &boundary(&c6, &set(&[1, 2, 3])).unwrap())
            }
            other => panic!("unexpected {other:?}"),
        }
        let sigs = t.leaf_signatures();
        assert_eq!(sigs.len(), 2);
        let c4 = canonical_form(&named::cycle(4));
        assert!(sigs
            .iter()
            .all(|s| s.kind == LeafKind::Brace && s.order == 4 && s.canonical == c4));

        let q3 = decompose(&named::cube(), Strategy::LexFirst).unwrap();
        assert!(matches!(
            q3.root,
            DecompositionNode::Leaf {
                kind: LeafKind::Brace,
                ..
            }
        ));
        assert_eq!(q3.brick_number, 0);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify(&named::complete(4)).unwrap(),
            Classification::Brick
        );
        assert_eq!(classify(&named::cycle(4)).unwrap(), Classification::Brace);
        assert_eq!(
            classify(&named::cycle(6)).unwrap(),
            Classification::Decomposable
        );
        assert_eq!(classify(&named::petersen()).unwrap(), Classification::Brick);
        assert_eq!(classify(&named::path(4)), Err(Error::NotMatchingCovered));
    }

    #[test]
    fn strategies_agree_on_named_graphs() {
        for (name, g) in named::all() {
            let base = decompose(&g, Strategy::LexFirst).unwrap();
            for s in [Strategy::Balanced, Strategy::Reversed] {
                let t = decompose(&g, s).unwrap();
                assert_eq!(t.leaf_signatures(), base.leaf_signatures(), "{name} {s}");
                assert_eq!(t.brick_number, base.brick_number);
            }
            for (h, cut) in base.internal_cuts() {
                assert!(is_tight(h, cut).unwrap());
            }
        }
    }

    #[test]
    fn prism_is_a_brick() {
        // the rungs 14, 25, 36 form a perfect matching, so the triangle
        // cut is not tight
        let g = named::prism();
        assert!(!is_tight(&g, &boundary(&g, &set(&[1, 2, 3])).unwrap()).unwrap());
        assert_eq!(classify(&g).unwrap(), Classification::Brick);
        assert_eq!(brick_number(&g).unwrap(), 1);
    }
}
