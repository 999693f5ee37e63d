//! Given a nontrivial tight cut `C = ∂(X)` of a matching covered graph, find
//! a nontrivial barrier inside one shore of `C`, or a 2-separation with a
//! cut that does not cross `C`.
//!
//! The search recurses on tight contractions. Branches that theory rules
//! out are still checked, and reaching one is reported as
//! [`Error::InternalInvariant`] rather than papered over.

use serde::Serialize;

use crate::elp::{
    barrier_from_failing_pair, failing_pairs, find_nontrivial_barrier_unchecked,
    find_two_separations, is_barrier, is_two_separation, Barrier, ElpCut, StructureKind,
    TwoSeparation,
};
use crate::error::{Error, Result};
use crate::graph::{
    boundary, contract, laminar, shores_cross, Contraction, Cut, Multigraph, Vertex, VertexSet,
};
use crate::matching::is_matching_covered;
use crate::oracle;
use crate::tightcuts::{meet_join_unchecked, require_tight, tightness_witness};

/// Which shore of a cut, relative to its canonical shore `X` (the one
/// containing vertex 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    X,
    XBar,
}

impl Side {
    pub fn shore(self, c: &Cut) -> VertexSet {
        match self {
            Side::X => c.shore().clone(),
            Side::XBar => c.complement(),
        }
    }

    pub fn opposite(self) -> Side {
        match self {
            Side::X => Side::XBar,
            Side::XBar => Side::X,
        }
    }
}

/// A component of `G - {u, v}` seen from a cut `∂(X)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentProfile {
    pub component: VertexSet,
    /// `|X ∩ K|` is even.
    pub balanced: bool,
    /// Balanced, or both pair vertices have two or more neighbours in `K`.
    pub good: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoodEntry {
    pub sep: TwoSeparation,
    pub profile: ComponentProfile,
}

/// Good components over all 2-separations, smallest first (by size, then by
/// smallest vertex).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GoodCollection {
    pub entries: Vec<GoodEntry>,
}

impl GoodCollection {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn minimal(&self) -> Option<&GoodEntry> {
        self.entries.first()
    }
}

/// Barrier restricted to one shore. `hx` and `hx_bar` are the components
/// of `G - B` meeting `X` (resp. `X̄`) in an odd number of vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BarrierRestriction {
    pub hx: Vec<VertexSet>,
    pub hx_bar: Vec<VertexSet>,
    /// `B ∩ X̄`, verified to be a barrier.
    pub sheltered: Barrier,
    pub nontrivial: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftedStructure {
    pub set: VertexSet,
    pub kind: StructureKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum LaminarOutcome {
    ShelteredBarrier { barrier: Barrier, shore_side: Side },
    LaminarSeparation { sep: TwoSeparation, cut: Cut },
}

/// Recomputed from scratch after the search; all three must hold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    /// The barrier or 2-separation re-verifies (and the cut belongs to it).
    pub structure_valid: bool,
    /// Barrier of size at least 2, or a nontrivial cut.
    pub nontrivial: bool,
    /// Barrier inside the declared shore, or cut laminar with `C`.
    pub placement_valid: bool,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.structure_valid && self.nontrivial && self.placement_valid
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LaminarResult {
    pub outcome: LaminarOutcome,
    pub certificate: Certificate,
    /// Branches taken, outermost first.
    pub trace: Vec<String>,
    /// Set when the constructive search failed and the exhaustive fallback
    /// produced the outcome; holds the original error.
    pub divergence: Option<String>,
}

/// Outcome of the search that must avoid a vertex `t ∈ X̄`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum AvoidOutcome {
    /// A 2-separation not containing `t`.
    SepAvoidingT { sep: TwoSeparation },
    /// A 2-separation through `t` with a cut whose shore `shore` lies in `X̄`.
    SepThroughT {
        sep: TwoSeparation,
        cut: Cut,
        shore: VertexSet,
    },
    /// A nontrivial barrier inside one shore.
    ShelteredBarrier { barrier: Barrier },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Policy {
    /// 2-separations are examined before barriers.
    #[default]
    SeparationFirst,
    /// Scan barriers grown from failing pairs first and return any that is
    /// already inside a shore.
    BarrierFirst,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LaminarConfig {
    /// Check matching coverage and tightness of the input cut.
    pub verify_inputs: bool,
    /// On an internal error, search exhaustively and record the divergence.
    pub oracle_fallback: bool,
    /// Largest order for which the fallback runs.
    pub oracle_bound: usize,
    pub policy: Policy,
}

impl Default for LaminarConfig {
    fn default() -> Self {
        LaminarConfig {
            verify_inputs: true,
            oracle_fallback: true,
            oracle_bound: oracle::DEFAULT_BOUND,
            policy: Policy::SeparationFirst,
        }
    }
}

impl LaminarConfig {
    /// No fallback: internal errors surface as errors.
    pub fn strict() -> Self {
        LaminarConfig {
            oracle_fallback: false,
            ..LaminarConfig::default()
        }
    }
}

/// Internal result of the search, in the labels of the current graph.
#[derive(Clone, Debug)]
enum Found {
    Barrier(VertexSet),
    /// `shore` is a cut shore of the 2-separation inside `X` or `X̄`.
    Separation {
        pair: VertexSet,
        shore: VertexSet,
    },
}

#[derive(Clone, Debug)]
enum Avoid {
    Missing(VertexSet),
    Through { pair: VertexSet, shore: VertexSet },
    Barrier(VertexSet),
}

fn inside_one_shore(s: &VertexSet, x: &VertexSet) -> bool {
    s.is_subset(x) || s.is_disjoint(x)
}

/// `z` or its complement, whichever lies inside a shore of `∂(x)`.
fn contained_shore(z: &VertexSet, x: &VertexSet, n: usize) -> Option<VertexSet> {
    let zc = z.complement(n);
    [z.clone(), zc].into_iter().find(|s| inside_one_shore(s, x))
}

fn is_sep_shore(sep: &TwoSeparation, z: &VertexSet) -> bool {
    let (a, b) = sep.pair();
    [(a, b), (b, a)]
        .iter()
        .any(|&(p, q)| z.contains(p) && !z.contains(q) && sep.is_side(&z.without(p)))
}

fn pair_of(s: &VertexSet) -> Result<(Vertex, Vertex)> {
    match s.to_vec()[..] {
        [a, b] => Ok((a, b)),
        _ => Err(Error::internal(format!("{s} is not a vertex pair"))),
    }
}

fn verified_barrier(g: &Multigraph, s: &VertexSet, what: &str) -> Result<Barrier> {
    is_barrier(g, s)?.ok_or_else(|| Error::internal(format!("{what}: {s} is not a barrier")))
}

fn verified_separation(g: &Multigraph, s: &VertexSet, what: &str) -> Result<TwoSeparation> {
    let (a, b) = pair_of(s)?;
    is_two_separation(g, a, b)?
        .ok_or_else(|| Error::internal(format!("{what}: {s} is not a 2-separation")))
}

fn internalize(context: &'static str) -> impl FnOnce(Error) -> Error {
    move |e| match e {
        Error::Precondition(m) => Error::internal(format!("{context}: {m}")),
        other => other,
    }
}

fn sheltered_barrier(g: &Multigraph, s: &VertexSet, x: &VertexSet, what: &str) -> Result<Found> {
    let b = verified_barrier(g, s, what)?;
    if !b.is_nontrivial() || !inside_one_shore(s, x) {
        return Err(Error::internal(format!(
            "{what}: barrier {s} is trivial or not inside a shore of ∂({x})"
        )));
    }
    Ok(Found::Barrier(s.clone()))
}

fn separation_with_shore(
    sep: &TwoSeparation,
    z: &VertexSet,
    x: &VertexSet,
    what: &str,
) -> Result<Found> {
    if !is_sep_shore(sep, z) || !inside_one_shore(z, x) {
        return Err(Error::internal(format!(
            "{what}: {z} is not a cut shore of {:?} inside a shore of ∂({x})",
            sep.pair()
        )));
    }
    Ok(Found::Separation {
        pair: sep.pair_set(),
        shore: z.clone(),
    })
}

/// Laminar cut of a 2-separation whose pair lies inside one shore: some
/// component contains the opposite shore, any other component plus a pair
/// vertex is a cut shore inside the sheltering shore.
fn sheltered_separation(g: &Multigraph, sep: &TwoSeparation, x: &VertexSet) -> Result<Found> {
    let n = g.vertex_count();
    let home_shore = if sep.pair_set().is_subset(x) {
        x.clone()
    } else {
        x.complement(n)
    };
    let other = home_shore.complement(n);
    let comps = sep.even_components();
    let home = comps
        .iter()
        .position(|k| other.is_subset(k))
        .ok_or_else(|| {
            Error::internal(format!(
                "shore {other} is split by sheltered 2-separation {:?}",
                sep.pair()
            ))
        })?;
    let side = comps
        .iter()
        .enumerate()
        .find(|&(i, _)| i != home)
        .map(|(_, k)| k.clone())
        .ok_or_else(|| Error::internal("2-separation with a single component"))?;
    separation_with_shore(sep, &side.with(sep.pair().0), x, "sheltered 2-separation")
}

fn restrict_sets(
    g: &Multigraph,
    x: &VertexSet,
    b: &Barrier,
    k: &VertexSet,
) -> Result<BarrierRestriction> {
    let n = g.vertex_count();
    if !b.odd_components().contains(k) {
        return Err(Error::precondition(format!(
            "{k} is not a component of G - {}",
            b.members()
        )));
    }
    if !k.intersection(x).is_odd() {
        return Err(Error::precondition(format!(
            "{k} meets {x} in an even number of vertices"
        )));
    }
    let xbar = x.complement(n);
    let b_x = b.members().intersection(x);
    let b_xbar = b.members().intersection(&xbar);
    if !b_xbar.iter().any(|v| g.neighbors_in(v, k) > 0) {
        return Err(Error::precondition(format!(
            "{k} has no neighbour in {b_xbar}"
        )));
    }
    let hx: Vec<VertexSet> = b
        .odd_components()
        .iter()
        .filter(|c| c.intersection(x).is_odd())
        .cloned()
        .collect();
    let hx_bar: Vec<VertexSet> = b
        .odd_components()
        .iter()
        .filter(|c| c.intersection(&xbar).is_odd())
        .cloned()
        .collect();
    if b_x.len() + 1 != hx.len() || b_xbar.len() != hx_bar.len() + 1 {
        return Err(Error::internal(format!(
            "barrier {} against ∂({x}): |B∩X| = {}, |H_X| = {}, |B∩X̄| = {}, |H_X̄| = {}",
            b.members(),
            b_x.len(),
            hx.len(),
            b_xbar.len(),
            hx_bar.len()
        )));
    }
    let sheltered = verified_barrier(g, &b_xbar, "restriction to X̄")?;
    let nontrivial = sheltered.is_nontrivial();
    let avoiding = b.odd_components().iter().all(|c| !shores_cross(c, x, n));
    if !nontrivial && avoiding && b.is_nontrivial() && x.len() >= 3 && xbar.len() >= 3 {
        return Err(Error::internal(format!(
            "restriction of the avoiding nontrivial barrier {} to {xbar} is trivial",
            b.members()
        )));
    }
    Ok(BarrierRestriction {
        hx,
        hx_bar,
        sheltered,
        nontrivial,
    })
}

/// Restricts `b` to the shore opposite `side`. `k` must be a component of
/// `G - B` meeting the `side` shore `X` oddly, with a neighbour in `B ∩ X̄`.
pub fn restrict_barrier(
    g: &Multigraph,
    c: &Cut,
    side: Side,
    b: &Barrier,
    k: &VertexSet,
) -> Result<BarrierRestriction> {
    if !c.belongs_to(g) {
        return Err(Error::MismatchedGraphs);
    }
    match is_barrier(g, b.members())? {
        Some(fresh) if &fresh == b => {}
        _ => {
            return Err(Error::precondition(format!(
                "{} is not a barrier of the graph",
                b.members()
            )))
        }
    }
    restrict_sets(g, &side.shore(c), b, k)
}

fn lift_sets(
    g: &Multigraph,
    h: &Contraction,
    u1: Vertex,
    u2: Vertex,
    s_h: &VertexSet,
    kind: StructureKind,
) -> Result<VertexSet> {
    let label = h.contracted_label;
    let s: VertexSet = s_h
        .iter()
        .map(|v| if v == label { u2 } else { h.origin(v) })
        .collect();
    match kind {
        StructureKind::Barrier => {
            verified_barrier(g, &s, "lifted structure")?;
        }
        StructureKind::Separation => {
            verified_separation(g, &s, "lifted structure")?;
        }
    }
    let comps_g = g.components_without(&s);
    let u1_h = h.image_of[u1];
    let comps_h = h.result.components_without(s_h);
    let touching = comps_h
        .iter()
        .filter(|k| k.contains(u1_h) || k.contains(label))
        .count();
    if touching > 1 || (kind == StructureKind::Barrier && touching != 1) {
        return Err(Error::internal(format!(
            "{touching} components of the contraction minus {s_h} meet {{{u1_h},{label}}}"
        )));
    }
    for k in comps_h {
        if k.contains(u1_h) || k.contains(label) {
            continue;
        }
        let kg = h.expand(&k);
        if !comps_g.contains(&kg) {
            return Err(Error::internal(format!(
                "component {k} of the contraction does not survive as a component of G - {s}"
            )));
        }
    }
    Ok(s)
}

/// Lifts a barrier or 2-separation of `H = G/(X̄→x̄)` back to `G`, where
/// `∂(X)` is a cut of the 2-separation `{u1, u2}` with `u2 ∈ X̄`: the
/// contracted vertex is replaced by `u2`.
pub fn lift_structure(
    g: &Multigraph,
    contraction: &Contraction,
    u1: Vertex,
    u2: Vertex,
    s_h: &VertexSet,
    kind: StructureKind,
) -> Result<LiftedStructure> {
    let n = g.vertex_count();
    if contraction.image_of.len() != n + 1 {
        return Err(Error::MismatchedGraphs);
    }
    let xbar = contraction.contracted();
    if !xbar.contains(u2) || xbar.contains(u1) {
        return Err(Error::precondition(format!(
            "need {u2} contracted and {u1} kept"
        )));
    }
    let sep = is_two_separation(g, u1, u2)?
        .ok_or_else(|| Error::precondition(format!("{{{u1},{u2}}} is not a 2-separation")))?;
    if !sep.is_side(&xbar.complement(n).without(u1)) {
        return Err(Error::precondition(
            "contracted set is not a cut shore of the 2-separation",
        ));
    }
    let h = &contraction.result;
    let valid = match kind {
        StructureKind::Barrier => is_barrier(h, s_h)?.is_some(),
        StructureKind::Separation => match s_h.to_vec()[..] {
            [a, b] => is_two_separation(h, a, b)?.is_some(),
            _ => false,
        },
    };
    if !valid {
        return Err(Error::precondition(format!(
            "{s_h} is not a {kind:?} of the contraction"
        )));
    }
    let set = lift_sets(g, contraction, u1, u2, s_h, kind)?;
    Ok(LiftedStructure { set, kind })
}

fn classify_sets(
    g: &Multigraph,
    x: &VertexSet,
    sep: &TwoSeparation,
) -> Result<Vec<ComponentProfile>> {
    let (a, b) = sep.pair();
    if x.contains(a) == x.contains(b) {
        return Err(Error::precondition(format!(
            "2-separation {{{a},{b}}} lies in one shore"
        )));
    }
    let profiles: Vec<ComponentProfile> = sep
        .even_components()
        .iter()
        .map(|k| {
            let balanced = !k.intersection(x).is_odd();
            let good = balanced || (g.neighbors_in(a, k) >= 2 && g.neighbors_in(b, k) >= 2);
            ComponentProfile {
                component: k.clone(),
                balanced,
                good,
            }
        })
        .collect();
    if profiles.iter().any(|p| !p.balanced) {
        if profiles.len() != 2 || profiles.iter().any(|p| p.balanced) {
            return Err(Error::internal(format!(
                "2-separation {{{a},{b}}} has an unbalanced component but is not an unbalanced pair"
            )));
        }
        for &(p, q) in g.edges() {
            if x.contains(p) != x.contains(q)
                && !profiles
                    .iter()
                    .any(|k| k.component.contains(p) && k.component.contains(q))
            {
                return Err(Error::internal(format!(
                    "cut edge {p}{q} is not inside a component of G - {{{a},{b}}}"
                )));
            }
        }
    }
    Ok(profiles)
}

/// Profiles of the components of `G - sep` relative to `c`. The pair must
/// have one vertex in each shore.
pub fn classify_components(
    g: &Multigraph,
    c: &Cut,
    sep: &TwoSeparation,
) -> Result<Vec<ComponentProfile>> {
    if !c.belongs_to(g) {
        return Err(Error::MismatchedGraphs);
    }
    classify_sets(g, c.shore(), sep)
}

fn good_collection_sets(
    g: &Multigraph,
    x: &VertexSet,
    seps: &[TwoSeparation],
) -> Result<GoodCollection> {
    let mut entries = Vec::new();
    for sep in seps {
        for profile in classify_sets(g, x, sep)? {
            if profile.good {
                entries.push(GoodEntry {
                    sep: sep.clone(),
                    profile,
                });
            }
        }
    }
    entries.sort_by_key(|e| (e.profile.component.len(), e.profile.component.first()));
    Ok(GoodCollection { entries })
}

/// Good components over every 2-separation of `g`. Fails with a
/// precondition error if some 2-separation lies inside one shore.
pub fn build_good_collection(g: &Multigraph, c: &Cut) -> Result<GoodCollection> {
    if !c.belongs_to(g) {
        return Err(Error::MismatchedGraphs);
    }
    good_collection_sets(g, c.shore(), &find_two_separations(g))
}

struct Search<'a> {
    cfg: &'a LaminarConfig,
    trace: Vec<String>,
    depth: usize,
}

impl<'a> Search<'a> {
    fn new(cfg: &'a LaminarConfig) -> Self {
        Search {
            cfg,
            trace: Vec::new(),
            depth: 0,
        }
    }

    fn note(&mut self, g: &Multigraph, msg: impl AsRef<str>) {
        self.trace.push(format!(
            "{}n={}: {}",
            "  ".repeat(self.depth),
            g.vertex_count(),
            msg.as_ref()
        ));
    }

    /// Recursive calls re-check that the cut handed down is nontrivial and
    /// tight; a failure here is a bug in the reduction.
    fn check_cut(&self, g: &Multigraph, x: &VertexSet) -> Result<()> {
        if self.depth == 0 {
            return Ok(());
        }
        let n = g.vertex_count();
        if x.len() < 3 || n - x.len() < 3 || !x.is_odd() {
            return Err(Error::internal(format!(
                "reduced cut ∂({x}) of order {n} is trivial or even"
            )));
        }
        let c = boundary(g, x)?;
        if let Some(m) = tightness_witness(g, &c) {
            return Err(Error::internal(format!(
                "reduced cut ∂({x}) is not tight (matching {:?})",
                m.pairs()
            )));
        }
        Ok(())
    }

    fn descend<T>(&mut self, f: impl FnOnce(&mut Self) -> Result<T>) -> Result<T> {
        self.depth += 1;
        let out = f(self);
        self.depth -= 1;
        out
    }

    fn solve(&mut self, g: &Multigraph, x: &VertexSet) -> Result<Found> {
        self.check_cut(g, x)?;
        if self.cfg.policy == Policy::BarrierFirst {
            if let Some(found) = self.barrier_first(g, x)? {
                return Ok(found);
            }
        }
        let seps = find_two_separations(g);
        if let Some(sep) = seps.iter().find(|s| inside_one_shore(&s.pair_set(), x)) {
            self.note(g, format!("2-separation {:?} inside a shore", sep.pair()));
            return sheltered_separation(g, sep, x);
        }
        if seps.is_empty() {
            return self.no_separations(g, x);
        }
        let collection = good_collection_sets(g, x, &seps)?;
        match collection.entries.into_iter().next() {
            None => self.no_good_components(g, x, &seps[0]),
            Some(entry) => self.minimal_good(g, x, entry),
        }
    }

    fn barrier_first(&mut self, g: &Multigraph, x: &VertexSet) -> Result<Option<Found>> {
        for (u, v) in failing_pairs(g) {
            let pair = VertexSet::from([u, v]);
            let mut candidates = Vec::new();
            if let Some(b) = is_barrier(g, &pair)? {
                candidates.push(b);
            }
            candidates.push(barrier_from_failing_pair(g, u, v)?);
            if let Some(b) = candidates
                .into_iter()
                .find(|b| b.is_nontrivial() && inside_one_shore(b.members(), x))
            {
                self.note(
                    g,
                    format!("barrier {} from failing pair inside a shore", b.members()),
                );
                return sheltered_barrier(g, b.members(), x, "barrier-first scan").map(Some);
            }
        }
        Ok(None)
    }

    fn no_separations(&mut self, g: &Multigraph, x: &VertexSet) -> Result<Found> {
        let n = g.vertex_count();
        let b = find_nontrivial_barrier_unchecked(g)?.ok_or_else(|| {
            Error::internal(
                "no 2-separation and no nontrivial barrier, yet a nontrivial tight cut exists",
            )
        })?;
        if inside_one_shore(b.members(), x) {
            self.note(
                g,
                format!("no 2-separation; barrier {} inside a shore", b.members()),
            );
            return sheltered_barrier(g, b.members(), x, "barrier");
        }
        match b
            .odd_components()
            .iter()
            .find(|k| shores_cross(k, x, n))
            .cloned()
        {
            None => self.restrict_avoiding(g, x, &b),
            Some(y) => self.crossing_barrier(g, x, &b, y),
        }
    }

    fn restrict_avoiding(&mut self, g: &Multigraph, x: &VertexSet, b: &Barrier) -> Result<Found> {
        let n = g.vertex_count();
        for z in [x.clone(), x.complement(n)] {
            let b_zbar = b.members().difference(&z);
            let k = b.odd_components().iter().find(|k| {
                k.intersection(&z).is_odd() && b_zbar.iter().any(|v| g.neighbors_in(v, k) > 0)
            });
            if let Some(k) = k {
                let r = restrict_sets(g, &z, b, k)
                    .map_err(internalize("restricting an avoiding barrier"))?;
                if !r.nontrivial {
                    return Err(Error::internal(format!(
                        "restriction of avoiding barrier {} is trivial",
                        b.members()
                    )));
                }
                self.note(
                    g,
                    format!(
                        "no 2-separation; avoiding barrier {} restricted to {}",
                        b.members(),
                        r.sheltered.members()
                    ),
                );
                return sheltered_barrier(
                    g,
                    r.sheltered.members(),
                    x,
                    "restricted avoiding barrier",
                );
            }
        }
        Err(Error::internal(format!(
            "avoiding barrier {} has no component to restrict along",
            b.members()
        )))
    }

    fn crossing_barrier(
        &mut self,
        g: &Multigraph,
        x: &VertexSet,
        b: &Barrier,
        y: VertexSet,
    ) -> Result<Found> {
        let n = g.vertex_count();
        let xo = if x.intersection(&y).is_odd() {
            x.clone()
        } else {
            x.complement(n)
        };
        let r =
            restrict_sets(g, &xo, b, &y).map_err(internalize("restricting a crossing barrier"))?;
        if r.nontrivial {
            self.note(
                g,
                format!(
                    "no 2-separation; crossing barrier {} restricted to {}",
                    b.members(),
                    r.sheltered.members()
                ),
            );
            return sheltered_barrier(g, r.sheltered.members(), x, "restricted crossing barrier");
        }
        let u = r
            .sheltered
            .members()
            .first()
            .expect("restriction is nonempty");
        let meet = xo.intersection(&y);
        meet_join_unchecked(g, &xo, &y)?;
        if meet.len() == 1 {
            let v = meet.first().expect("nonempty");
            let confirmed = u != v && is_two_separation(g, u, v)?.is_some();
            return Err(Error::internal(format!(
                "∂({meet}) is trivial, so {{{u},{v}}} would be a 2-separation (confirmed: {confirmed}), but none exists"
            )));
        }
        let h = contract(g, &y.complement(n))?;
        let t = h.contracted_label;
        let x_h = h.image(&meet);
        self.note(
            g,
            format!(
                "no 2-separation; barrier {} crosses via {y}; contract to order {}",
                b.members(),
                h.result.vertex_count()
            ),
        );
        match self.descend(|s| s.avoid(&h.result, &x_h, t))? {
            Avoid::Missing(p) | Avoid::Through { pair: p, .. } => Err(Error::internal(format!(
                "contraction has 2-separation {p} although G has none"
            ))),
            Avoid::Barrier(bh) if !bh.contains(t) => {
                let s: VertexSet = bh.iter().map(|v| h.origin(v)).collect();
                sheltered_barrier(g, &s, x, "barrier of the contraction")
            }
            Avoid::Barrier(bh) => {
                let bg: VertexSet = bh
                    .without(t)
                    .iter()
                    .map(|v| h.origin(v))
                    .collect::<VertexSet>()
                    .union(b.members());
                let bg = verified_barrier(g, &bg, "(B_H - ȳ) ∪ B")?;
                let w = bg
                    .odd_components()
                    .iter()
                    .find(|k| meet.is_subset(k))
                    .cloned()
                    .ok_or_else(|| {
                        Error::internal(format!("{meet} is split by barrier {}", bg.members()))
                    })?;
                let r2 = restrict_sets(g, &xo, &bg, &w)
                    .map_err(internalize("restricting the combined barrier"))?;
                if !r2.nontrivial {
                    return Err(Error::internal(format!(
                        "restriction of combined barrier {} is trivial",
                        bg.members()
                    )));
                }
                sheltered_barrier(g, r2.sheltered.members(), x, "restricted combined barrier")
            }
        }
    }

    fn no_good_components(
        &mut self,
        g: &Multigraph,
        x: &VertexSet,
        sep: &TwoSeparation,
    ) -> Result<Found> {
        let comps = sep.even_components();
        if comps.len() != 2 {
            return Err(Error::internal(format!(
                "no good components but 2-separation {:?} has {} components",
                sep.pair(),
                comps.len()
            )));
        }
        let (a, b) = sep.pair();
        for p in [a, b] {
            if comps.iter().all(|k| g.neighbors_in(p, k) == 1) {
                let s: VertexSet = comps
                    .iter()
                    .map(|k| {
                        g.neighbors(p)
                            .find(|&w| k.contains(w))
                            .expect("one neighbour")
                    })
                    .collect();
                self.note(
                    g,
                    format!("no good components; {p} has one neighbour per side, barrier {s}"),
                );
                return sheltered_barrier(g, &s, x, "neighbours of a pair vertex");
            }
        }
        Err(Error::internal(format!(
            "no pair vertex of {:?} has exactly one neighbour in each component",
            sep.pair()
        )))
    }

    fn minimal_good(&mut self, g: &Multigraph, x: &VertexSet, entry: GoodEntry) -> Result<Found> {
        let n = g.vertex_count();
        let GoodEntry { sep, profile } = entry;
        let l1 = &profile.component;
        let (a, b) = sep.pair();
        let (u1, u2) = if x.intersection(&l1.with(a)).is_odd() {
            (a, b)
        } else {
            (b, a)
        };
        let y = l1.with(u1);
        for (z, what) in [(y.clone(), "D"), (l1.with(u2), "partner of D")] {
            if let Some(shore) = contained_shore(&z, x, n) {
                self.note(
                    g,
                    format!(
                        "minimal good component {l1} of {:?}; {what} is laminar",
                        sep.pair()
                    ),
                );
                return separation_with_shore(
                    &sep,
                    &shore,
                    x,
                    "laminar cut of minimal good component",
                );
            }
        }
        let meet = x.intersection(&y);
        meet_join_unchecked(g, x, &y)?;
        if meet.len() == 1 {
            if !profile.balanced {
                return Err(Error::internal(format!(
                    "∂({meet}) is trivial for unbalanced minimal component {l1}"
                )));
            }
            let z = y.difference(x).with(u2);
            self.note(
                g,
                format!("minimal good component {l1}; intersection trivial"),
            );
            return separation_with_shore(&sep, &z, x, "partner cut in X̄");
        }
        let h = contract(g, &y.complement(n))?;
        let label = h.contracted_label;
        let x_h = h.image(&meet);
        self.note(
            g,
            format!(
                "minimal good component {l1} of {:?} ({}); contract to order {}",
                sep.pair(),
                if profile.balanced {
                    "balanced"
                } else {
                    "unbalanced"
                },
                h.result.vertex_count()
            ),
        );
        match self.descend(|s| s.solve(&h.result, &x_h))? {
            Found::Barrier(sh) => {
                let s = lift_sets(g, &h, u1, u2, &sh, StructureKind::Barrier)?;
                if !sh.contains(label) || profile.balanced {
                    return sheltered_barrier(g, &s, x, "lifted barrier");
                }
                let k = h
                    .result
                    .components_without(&sh)
                    .into_iter()
                    .find(|k| x_h.is_subset(k))
                    .ok_or_else(|| {
                        Error::internal(format!(
                            "{x_h} is split by barrier {sh} of the contraction"
                        ))
                    })?;
                let w = h.expand(&k);
                let sb = verified_barrier(g, &s, "lifted barrier")?;
                let r = restrict_sets(g, x, &sb, &w)
                    .map_err(internalize("restricting a lifted barrier"))?;
                if r.nontrivial {
                    return sheltered_barrier(
                        g,
                        r.sheltered.members(),
                        x,
                        "restricted lifted barrier",
                    );
                }
                let v = r.sheltered.members().first().expect("nonempty");
                if v == u1 {
                    return Err(Error::internal(format!(
                        "restriction of {s} collapsed onto {u1}"
                    )));
                }
                let pair = VertexSet::from([u1, v]);
                if is_barrier(g, &pair)?.is_some() {
                    return sheltered_barrier(g, &pair, x, "pair from trivial restriction");
                }
                match is_two_separation(g, u1, v)? {
                    Some(sep2) if inside_one_shore(&pair, x) => sheltered_separation(g, &sep2, x),
                    _ => Err(Error::internal(format!(
                        "{pair} is neither a barrier nor a sheltered 2-separation"
                    ))),
                }
            }
            Found::Separation { pair, .. } => {
                let s = lift_sets(g, &h, u1, u2, &pair, StructureKind::Separation)?;
                let sep2 = verified_separation(g, &s, "lifted 2-separation")?;
                let (p, q) = sep2.pair();
                for side in sep2.sides() {
                    for r in [p, q] {
                        let z = side.with(r);
                        if inside_one_shore(&z, x) {
                            return separation_with_shore(&sep2, &z, x, "lifted 2-separation");
                        }
                    }
                }
                Err(Error::internal(format!(
                    "lifted 2-separation {s} has no cut laminar with ∂({x})"
                )))
            }
        }
    }

    fn avoid(&mut self, g: &Multigraph, x: &VertexSet, t: Vertex) -> Result<Avoid> {
        let n = g.vertex_count();
        let (pair, z) = match self.solve(g, x)? {
            Found::Barrier(b) => return Ok(Avoid::Barrier(b)),
            Found::Separation { pair, shore } => (pair, shore),
        };
        if !pair.contains(t) {
            return Ok(Avoid::Missing(pair));
        }
        let xbar = x.complement(n);
        if let Some(shore) = [z.clone(), z.complement(n)]
            .into_iter()
            .find(|s| s.is_subset(&xbar))
        {
            return Ok(Avoid::Through { pair, shore });
        }
        if !z.is_subset(x) {
            return Err(Error::internal(format!(
                "separation shore {z} is not inside a shore of ∂({x})"
            )));
        }
        let u = pair.without(t).first().expect("pair has two vertices");
        let zp = z.without(u).with(t);
        let h = contract(g, &zp)?;
        let label = h.contracted_label;
        let x_h = h.image(&x.difference(&z).with(u));
        self.note(
            g,
            format!(
                "2-separation {pair} through {t}; contract {zp} to order {}",
                h.result.vertex_count()
            ),
        );
        match self.descend(|s| s.avoid(&h.result, &x_h, label))? {
            Avoid::Missing(ph) => {
                let s = lift_sets(g, &h, u, t, &ph, StructureKind::Separation)?;
                if s.contains(t) {
                    return Err(Error::internal(format!(
                        "lifted separation {s} contains {t}"
                    )));
                }
                Ok(Avoid::Missing(s))
            }
            Avoid::Through {
                pair: ph,
                shore: yh,
            } => {
                if !ph.contains(label) {
                    return Err(Error::internal(format!(
                        "separation {ph} should contain the contracted vertex"
                    )));
                }
                let s = lift_sets(g, &h, u, t, &ph, StructureKind::Separation)?;
                let sep = verified_separation(g, &s, "lifted separation through t")?;
                let y: VertexSet = yh
                    .difference(&ph)
                    .iter()
                    .map(|v| h.origin(v))
                    .collect::<VertexSet>()
                    .with(t);
                if !y.is_subset(&xbar) || !is_sep_shore(&sep, &y) {
                    return Err(Error::internal(format!(
                        "lifted shore {y} is not a cut shore of {s} inside {xbar}"
                    )));
                }
                Ok(Avoid::Through { pair: s, shore: y })
            }
            Avoid::Barrier(bh) => {
                let s = lift_sets(g, &h, u, t, &bh, StructureKind::Barrier)?;
                sheltered_barrier(g, &s, x, "lifted barrier avoiding t")?;
                Ok(Avoid::Barrier(s))
            }
        }
    }
}

fn check_inputs(g: &Multigraph, c: &Cut, cfg: &LaminarConfig) -> Result<()> {
    if !c.belongs_to(g) {
        return Err(Error::MismatchedGraphs);
    }
    if c.is_trivial() {
        return Err(Error::TrivialCut);
    }
    if cfg.verify_inputs {
        if !is_matching_covered(g) {
            return Err(Error::NotMatchingCovered);
        }
        require_tight(g, c)?;
    }
    Ok(())
}

fn outcome_of(g: &Multigraph, c: &Cut, found: Found) -> Result<LaminarOutcome> {
    match found {
        Found::Barrier(s) => {
            let barrier = verified_barrier(g, &s, "result")?;
            let shore_side = if s.is_subset(c.shore()) {
                Side::X
            } else {
                Side::XBar
            };
            Ok(LaminarOutcome::ShelteredBarrier {
                barrier,
                shore_side,
            })
        }
        Found::Separation { pair, shore } => Ok(LaminarOutcome::LaminarSeparation {
            sep: verified_separation(g, &pair, "result")?,
            cut: boundary(g, &shore)?,
        }),
    }
}

/// Re-verifies an outcome against `g` and `c` without trusting the search.
pub fn certify(g: &Multigraph, c: &Cut, outcome: &LaminarOutcome) -> Result<Certificate> {
    Ok(match outcome {
        LaminarOutcome::ShelteredBarrier {
            barrier,
            shore_side,
        } => Certificate {
            structure_valid: is_barrier(g, barrier.members())?.as_ref() == Some(barrier),
            nontrivial: barrier.len() >= 2,
            placement_valid: barrier.members().is_subset(&shore_side.shore(c)),
        },
        LaminarOutcome::LaminarSeparation { sep, cut } => {
            let (a, b) = sep.pair();
            let fresh = is_two_separation(g, a, b)?;
            Certificate {
                structure_valid: fresh.as_ref() == Some(sep)
                    && cut.belongs_to(g)
                    && is_sep_shore(sep, cut.shore()),
                nontrivial: !cut.is_trivial(),
                placement_valid: cut.belongs_to(g) && laminar(cut, c)?,
            }
        }
    })
}

pub fn find_laminar_elp(g: &Multigraph, c: &Cut) -> Result<LaminarResult> {
    find_laminar_elp_with(g, c, &LaminarConfig::default())
}

pub fn find_laminar_elp_with(
    g: &Multigraph,
    c: &Cut,
    cfg: &LaminarConfig,
) -> Result<LaminarResult> {
    check_inputs(g, c, cfg)?;
    let mut search = Search::new(cfg);
    let (outcome, divergence) = match search.solve(g, c.shore()).and_then(|f| outcome_of(g, c, f)) {
        Ok(outcome) => (outcome, None),
        Err(e)
            if e.is_internal() && cfg.oracle_fallback && g.vertex_count() <= cfg.oracle_bound =>
        {
            let outcome = oracle::exhaustive_laminar(g, c)?.ok_or_else(|| {
                Error::internal(format!("{e}; exhaustive search found nothing either"))
            })?;
            (outcome, Some(e.to_string()))
        }
        Err(e) => return Err(e),
    };
    let certificate = certify(g, c, &outcome)?;
    if !certificate.passed() {
        return Err(Error::internal(format!(
            "result {outcome:?} fails its certificate {certificate:?}"
        )));
    }
    Ok(LaminarResult {
        outcome,
        certificate,
        trace: search.trace,
        divergence,
    })
}

/// The search with a vertex `t` to avoid. The shore of `c` not containing
/// `t` plays `X`.
pub fn find_structure_avoiding(g: &Multigraph, c: &Cut, t: Vertex) -> Result<AvoidOutcome> {
    find_structure_avoiding_with(g, c, t, &LaminarConfig::default())
}

pub fn find_structure_avoiding_with(
    g: &Multigraph,
    c: &Cut,
    t: Vertex,
    cfg: &LaminarConfig,
) -> Result<AvoidOutcome> {
    check_inputs(g, c, cfg)?;
    let n = g.vertex_count();
    if t == 0 || t > n {
        return Err(Error::VertexOutOfRange {
            vertex: t,
            order: n,
        });
    }
    let x = if c.shore().contains(t) {
        c.complement()
    } else {
        c.shore().clone()
    };
    let mut search = Search::new(cfg);
    let out = match search.avoid(g, &x, t)? {
        Avoid::Missing(pair) => AvoidOutcome::SepAvoidingT {
            sep: verified_separation(g, &pair, "avoiding result")?,
        },
        Avoid::Through { pair, shore } => {
            let sep = verified_separation(g, &pair, "avoiding result")?;
            if !sep.contains(t) || !shore.is_disjoint(&x) || !is_sep_shore(&sep, &shore) {
                return Err(Error::internal(format!(
                    "{shore} is not a cut shore of {pair} inside X̄"
                )));
            }
            AvoidOutcome::SepThroughT {
                cut: boundary(g, &shore)?,
                sep,
                shore,
            }
        }
        Avoid::Barrier(s) => {
            sheltered_barrier(g, &s, &x, "avoiding result")?;
            AvoidOutcome::ShelteredBarrier {
                barrier: verified_barrier(g, &s, "avoiding result")?,
            }
        }
    };
    if let AvoidOutcome::SepAvoidingT { sep } = &out {
        if sep.contains(t) {
            return Err(Error::internal(format!(
                "separation {:?} contains {t}",
                sep.pair()
            )));
        }
    }
    Ok(out)
}

/// A nontrivial ELP cut laminar with `c` read off a result: the cut itself
/// for a 2-separation, or for a barrier the cut of the component that
/// contains the opposite shore.
pub fn derived_elp_cut(g: &Multigraph, c: &Cut, result: &LaminarResult) -> Result<ElpCut> {
    match &result.outcome {
        LaminarOutcome::LaminarSeparation { sep, cut } => Ok(ElpCut::SeparationCut {
            sep: sep.clone(),
            cut: cut.clone(),
        }),
        LaminarOutcome::ShelteredBarrier {
            barrier,
            shore_side,
        } => {
            let opposite = shore_side.opposite().shore(c);
            let index = barrier
                .odd_components()
                .iter()
                .position(|k| opposite.is_subset(k))
                .ok_or_else(|| {
                    Error::internal(format!(
                        "shore {opposite} is split by barrier {}",
                        barrier.members()
                    ))
                })?;
            Ok(ElpCut::BarrierCut {
                barrier: barrier.clone(),
                component_index: index,
                cut: boundary(g, &barrier.odd_components()[index])?,
            })
        }
    }
}
