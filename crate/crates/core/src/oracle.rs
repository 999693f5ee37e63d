//! Exponential ground truth for small graphs: every tight cut, barrier and
//! 2-separation by exhaustive search, and a whole-graph verification that
//! cross-checks the polynomial routines against them.

use std::collections::BTreeSet;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::elp::{
    find_nontrivial_barrier, find_nontrivial_elp_cut, find_two_separations, is_barrier, Barrier,
    TwoSeparation,
};
use crate::error::{Error, Result};
use crate::graph::{boundary, components, laminar, Cut, Multigraph, VertexSet};
use crate::laminar::{
    derived_elp_cut, find_laminar_elp_with, LaminarConfig, LaminarOutcome, Policy, Side,
};
use crate::matching::{enumerate_perfect_matchings, is_matching_covered, DEFAULT_ENUMERATION_CAP};
use crate::tightcuts::{decompose, tightness_witness, Strategy};

pub const DEFAULT_BOUND: usize = 14;

/// Oracle size bound: `TIGHTCUT_MAX_N` if set to a number, else
/// [`DEFAULT_BOUND`].
pub fn max_order() -> usize {
    std::env::var("TIGHTCUT_MAX_N")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_BOUND)
}

fn check_bound(g: &Multigraph) -> Result<()> {
    let bound = max_order();
    if g.vertex_count() > bound {
        return Err(Error::SizeBound {
            order: g.vertex_count(),
            bound,
        });
    }
    Ok(())
}

fn canonical(s: &VertexSet, n: usize) -> VertexSet {
    if s.contains(1) {
        s.clone()
    } else {
        s.complement(n)
    }
}

/// Every tight cut, trivial ones included, sorted by canonical shore.
///
/// Walks the subsets of `{2..n}` in Gray-code order. Flipping one vertex
/// changes, in every perfect matching, whether exactly one matched pair
/// straddles the shore, so the count of matchings meeting the cut once is
/// maintained incrementally.
pub fn all_tight_cuts(g: &Multigraph) -> Result<Vec<Cut>> {
    check_bound(g)?;
    if !is_matching_covered(g) {
        return Err(Error::NotMatchingCovered);
    }
    let n = g.vertex_count();
    let pms = enumerate_perfect_matchings(g, DEFAULT_ENUMERATION_CAP);
    if pms.overflow {
        return Err(Error::precondition(
            "too many perfect matchings to enumerate",
        ));
    }
    let mates: Vec<Vec<usize>> = pms
        .matchings
        .iter()
        .map(|m| {
            let mut mate = vec![0; n + 1];
            for &(u, v) in m.pairs() {
                mate[u] = v;
                mate[v] = u;
            }
            mate
        })
        .collect();
    let total = mates.len();
    let mut inside = vec![false; n + 1];
    inside[1] = true;
    let mut size = 1;
    // the shore {1} meets every perfect matching once
    let mut crossings = vec![1usize; total];
    let mut ones = total;
    let mut shores = Vec::new();
    let steps: u64 = 1 << (n - 1);
    for i in 0..steps {
        if i > 0 {
            let v = i.trailing_zeros() as usize + 2;
            inside[v] = !inside[v];
            if inside[v] {
                size += 1;
            } else {
                size -= 1;
            }
            for (p, mate) in mates.iter().enumerate() {
                let w = mate[v];
                let before = crossings[p];
                let after = if inside[v] != inside[w] {
                    before + 1
                } else {
                    before - 1
                };
                crossings[p] = after;
                if before == 1 {
                    ones -= 1;
                }
                if after == 1 {
                    ones += 1;
                }
            }
        }
        if size % 2 == 1 && size < n && ones == total {
            shores.push((1..=n).filter(|&v| inside[v]).collect::<VertexSet>());
        }
    }
    shores.sort();
    shores.iter().map(|s| boundary(g, s)).collect()
}

/// Every nonempty `S` with `|S| <= max_size` and `o(G - S) = |S|`, by size
/// then lexicographically.
pub fn all_barriers(g: &Multigraph, max_size: usize) -> Result<Vec<Barrier>> {
    check_bound(g)?;
    let n = g.vertex_count();
    let mut out: Vec<Barrier> = subsets(&VertexSet::full(n), 1, max_size.min(n.saturating_sub(1)))
        .into_iter()
        .filter_map(|s| {
            let (comps, odd) = components(g, &s);
            (odd == s.len()).then(|| Barrier::from_parts(s, comps))
        })
        .collect();
    out.sort_by_key(|a| (a.len(), a.members().to_vec()));
    Ok(out)
}

/// Subsets of `of` with size in `lo..=hi`, by size then lexicographically.
fn subsets(of: &VertexSet, lo: usize, hi: usize) -> Vec<VertexSet> {
    let items = of.to_vec();
    let mut out: Vec<VertexSet> = (0u64..1 << items.len())
        .filter(|m| (lo..=hi).contains(&(m.count_ones() as usize)))
        .map(|m| {
            (0..items.len())
                .filter(|i| m >> i & 1 == 1)
                .map(|i| items[i])
                .collect()
        })
        .collect();
    out.sort_by_key(|a| (a.len(), a.to_vec()));
    out
}

/// Every pair whose removal leaves at least two components, all even.
pub fn all_two_separations(g: &Multigraph) -> Vec<TwoSeparation> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            let pair = VertexSet::from([u, v]);
            let (comps, odd) = components(g, &pair);
            if comps.len() >= 2 && odd == 0 {
                if let Ok(Some(sep)) = crate::elp::is_two_separation(g, u, v) {
                    out.push(sep);
                }
            }
        }
    }
    out
}

/// First sheltered nontrivial barrier (shore `X` before `X̄`, smallest
/// first), else the first laminar 2-separation cut.
pub fn exhaustive_laminar(g: &Multigraph, c: &Cut) -> Result<Option<LaminarOutcome>> {
    check_bound(g)?;
    for side in [Side::X, Side::XBar] {
        let shore = side.shore(c);
        for s in subsets(&shore, 2, shore.len()) {
            if let Some(barrier) = is_barrier(g, &s)? {
                return Ok(Some(LaminarOutcome::ShelteredBarrier {
                    barrier,
                    shore_side: side,
                }));
            }
        }
    }
    for sep in all_two_separations(g) {
        let (a, b) = sep.pair();
        for side in sep.sides() {
            for p in [a, b] {
                let cut = boundary(g, &side.with(p))?;
                if !cut.is_trivial() && laminar(&cut, c)? {
                    return Ok(Some(LaminarOutcome::LaminarSeparation { sep, cut }));
                }
            }
        }
    }
    Ok(None)
}

/// Every nontrivial ELP cut, from all barriers and all 2-separations.
pub fn all_elp_cuts(g: &Multigraph) -> Result<Vec<Cut>> {
    let mut cuts = BTreeSet::new();
    for b in all_barriers(g, g.vertex_count())? {
        for k in b.odd_components() {
            let cut = boundary(g, k)?;
            if !cut.is_trivial() {
                cuts.insert(cut);
            }
        }
    }
    for sep in all_two_separations(g) {
        let (a, b) = sep.pair();
        for side in sep.sides() {
            for p in [a, b] {
                cuts.insert(boundary(g, &side.with(p))?);
            }
        }
    }
    Ok(cuts.into_iter().filter(|c| !c.is_trivial()).collect())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub passed: bool,
    /// Counts of what was examined.
    pub detail: Value,
    /// First failure, when `passed` is false.
    pub witness: Option<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub graph_id: String,
    pub order: usize,
    pub matching_covered: bool,
    pub nontrivial_tight_cuts: usize,
    pub checks: Vec<CheckRecord>,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

pub struct Check {
    name: &'static str,
    examined: usize,
    witness: Option<Value>,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Check {
            name,
            examined: 0,
            witness: None,
        }
    }

    fn fail(&mut self, w: Value) {
        if self.witness.is_none() {
            self.witness = Some(w);
        }
    }

    pub fn record(self) -> CheckRecord {
        CheckRecord {
            name: self.name.to_string(),
            passed: self.witness.is_none(),
            detail: json!({ "examined": self.examined }),
            witness: self.witness,
        }
    }
}

fn shore_json(s: &VertexSet) -> Value {
    json!(s.to_vec())
}

/// Cross-checks every polynomial routine on `g` against the oracle. A graph
/// that is not matching covered yields a report with no checks.
pub fn verify_graph(g: &Multigraph, graph_id: &str) -> Result<VerificationReport> {
    check_bound(g)?;
    let start = Instant::now();
    let n = g.vertex_count();
    let mut report = VerificationReport {
        graph_id: graph_id.to_string(),
        order: n,
        matching_covered: is_matching_covered(g),
        nontrivial_tight_cuts: 0,
        checks: Vec::new(),
        elapsed_ms: 0,
    };
    if !report.matching_covered {
        return Ok(report);
    }
    let tight = all_tight_cuts(g)?;
    let tight_shores: BTreeSet<VertexSet> = tight.iter().map(|c| c.shore().clone()).collect();
    let nontrivial: Vec<&Cut> = tight.iter().filter(|c| !c.is_trivial()).collect();
    report.nontrivial_tight_cuts = nontrivial.len();

    report
        .checks
        .push(check_laminar(g, &nontrivial, &tight_shores)?.record());
    report
        .checks
        .push(check_elp_theorem(g, &nontrivial, &tight_shores)?.record());
    report.checks.push(check_decomposition(g)?.record());
    report.checks.push(check_barrier_structure(g).record());
    report
        .checks
        .push(check_uncrossing(g, &tight_shores).record());
    report
        .checks
        .push(check_connected_shores(g, &tight_shores).record());
    let mut p4 = Check::new("two_connected");
    p4.examined = 1;
    if n >= 4 && !g.is_two_connected() {
        p4.fail(json!({ "reason": "matching covered graph on 4+ vertices is not 2-connected" }));
    }
    report.checks.push(p4.record());
    report
        .checks
        .push(check_tightness_agreement(g, &tight_shores)?.record());

    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

pub fn check_laminar(
    g: &Multigraph,
    nontrivial: &[&Cut],
    tight: &BTreeSet<VertexSet>,
) -> Result<Check> {
    let mut check = Check::new("laminar_elp_cut");
    let elp_cuts = all_elp_cuts(g)?;
    for c in nontrivial {
        if !elp_cuts.iter().any(|d| laminar(d, c).unwrap_or(false)) {
            check.fail(json!({ "shore": shore_json(c.shore()), "reason": "no nontrivial ELP cut laminar with C exists" }));
        }
        for policy in [Policy::SeparationFirst, Policy::BarrierFirst] {
            check.examined += 1;
            let cfg = LaminarConfig {
                policy,
                ..LaminarConfig::strict()
            };
            let result = match find_laminar_elp_with(g, c, &cfg) {
                Ok(r) => r,
                Err(e) => {
                    check.fail(json!({ "shore": shore_json(c.shore()), "policy": policy, "error": e.to_string() }));
                    continue;
                }
            };
            if !result.certificate.passed() {
                check.fail(
                    json!({ "shore": shore_json(c.shore()), "policy": policy, "result": result }),
                );
                continue;
            }
            match derived_elp_cut(g, c, &result) {
                Ok(d) => {
                    let cut = d.cut();
                    let ok = !cut.is_trivial() && tight.contains(cut.shore()) && laminar(cut, c)?;
                    if !ok {
                        check.fail(json!({ "shore": shore_json(c.shore()), "policy": policy, "derived": cut }));
                    }
                }
                Err(e) => check.fail(json!({ "shore": shore_json(c.shore()), "policy": policy, "error": e.to_string() })),
            }
        }
    }
    Ok(check)
}

pub fn check_elp_theorem(
    g: &Multigraph,
    nontrivial: &[&Cut],
    tight: &BTreeSet<VertexSet>,
) -> Result<Check> {
    let mut check = Check::new("elp_theorem");
    check.examined = 1;
    let found = find_nontrivial_elp_cut(g)?;
    if nontrivial.is_empty() {
        if let Some(e) = found {
            check.fail(json!({ "reason": "ELP cut reported but no nontrivial tight cut exists", "cut": e.cut() }));
        }
        return Ok(check);
    }
    let barrier = find_nontrivial_barrier(g)?;
    if barrier.is_none() && find_two_separations(g).is_empty() {
        check.fail(
            json!({ "reason": "nontrivial tight cut but no nontrivial barrier or 2-separation" }),
        );
    }
    match found {
        None => check.fail(json!({ "reason": "nontrivial tight cut exists but no ELP cut found" })),
        Some(e) if e.cut().is_trivial() || !tight.contains(e.cut().shore()) => check
            .fail(json!({ "reason": "reported ELP cut is trivial or not tight", "cut": e.cut() })),
        Some(_) => {}
    }
    Ok(check)
}

pub fn check_decomposition(g: &Multigraph) -> Result<Check> {
    let mut check = Check::new("decomposition_invariance");
    let trees = Strategy::ALL
        .iter()
        .map(|&s| decompose(g, s))
        .collect::<Result<Vec<_>>>()?;
    let reference = (trees[0].brick_number, trees[0].leaf_signatures());
    for t in &trees {
        check.examined += 1;
        if (t.brick_number, t.leaf_signatures()) != reference {
            check.fail(json!({
                "strategy": t.strategy.label(),
                "brick_number": t.brick_number,
                "expected_brick_number": reference.0,
            }));
        }
        for (h, cut) in t.internal_cuts() {
            if cut.is_trivial() || tightness_witness(h, cut).is_some() {
                check.fail(json!({ "strategy": t.strategy.label(), "bad_cut": cut }));
            }
        }
    }
    Ok(check)
}

pub fn check_barrier_structure(g: &Multigraph) -> Check {
    let mut check = Check::new("barrier_structure");
    let n = g.vertex_count();
    for s in subsets(&VertexSet::full(n), 1, n - 1) {
        let (comps, odd) = components(g, &s);
        if odd != s.len() {
            continue;
        }
        check.examined += 1;
        if !g.is_independent(&s) || odd != comps.len() {
            check.fail(json!({ "barrier": shore_json(&s), "reason": "barrier not independent or leaves an even component" }));
        }
    }
    check
}

pub fn check_uncrossing(g: &Multigraph, tight: &BTreeSet<VertexSet>) -> Check {
    let mut check = Check::new("uncrossing");
    let n = g.vertex_count();
    let shores: Vec<&VertexSet> = tight.iter().collect();
    for (i, x) in shores.iter().enumerate() {
        for y in &shores[i + 1..] {
            let (xc, yc) = (x.complement(n), y.complement(n));
            for (a, b) in [(*x, *y), (*x, &yc), (&xc, *y), (&xc, &yc)] {
                let meet = a.intersection(b);
                let join = a.union(b);
                if !meet.is_odd() || join.len() == n {
                    continue;
                }
                check.examined += 1;
                if !tight.contains(&canonical(&meet, n)) || !tight.contains(&canonical(&join, n)) {
                    check.fail(json!({ "x": shore_json(a), "y": shore_json(b), "reason": "intersection or union not tight" }));
                }
                let (ao, bo) = (a.difference(b), b.difference(a));
                if let Some(&(p, q)) = g.edges().iter().find(|&&(p, q)| {
                    (ao.contains(p) && bo.contains(q)) || (ao.contains(q) && bo.contains(p))
                }) {
                    check.fail(json!({ "x": shore_json(a), "y": shore_json(b), "edge": [p, q] }));
                }
            }
        }
    }
    check
}

pub fn check_connected_shores(g: &Multigraph, tight: &BTreeSet<VertexSet>) -> Check {
    let mut check = Check::new("connected_shores");
    let n = g.vertex_count();
    for s in tight {
        check.examined += 1;
        if !g.induces_connected(s) || !g.induces_connected(&s.complement(n)) {
            check.fail(json!({ "shore": shore_json(s), "reason": "tight cut shore induces a disconnected subgraph" }));
        }
    }
    check
}

pub fn check_tightness_agreement(g: &Multigraph, tight: &BTreeSet<VertexSet>) -> Result<Check> {
    let mut check = Check::new("tightness_agreement");
    let n = g.vertex_count();
    for rest in subsets(&VertexSet::full(n).without(1), 0, n - 2) {
        if rest.len() % 2 == 1 {
            continue;
        }
        let shore = rest.with(1);
        check.examined += 1;
        let pairwise = tightness_witness(g, &boundary(g, &shore)?).is_none();
        if pairwise != tight.contains(&shore) {
            check.fail(json!({ "shore": shore_json(&shore), "pairwise": pairwise, "enumeration": !pairwise }));
        }
    }
    Ok(check)
}
