//! Random matching covered graphs for the property suites.
//!
//! Splicing two matching covered graphs at vertices of equal degree gives a
//! matching covered graph with a nontrivial tight cut (unless a piece is
//! K2 or the vertex has degree 1), so repeated splicing reaches orders well
//! beyond the bundled corpus while staying inside the class.

#![allow(dead_code)]

use std::sync::OnceLock;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use tightcut_core::corpus::matching_covered_corpus;
use tightcut_core::elp::StructureKind;
use tightcut_core::laminar::{lift_structure, restrict_barrier, Side};
use tightcut_core::matching::is_matching_covered;
use tightcut_core::oracle::{all_barriers, all_two_separations};
use tightcut_core::{contract, Cut, Multigraph, Vertex, VertexSet};

/// Matching covered graphs of order 4 to 8 used as splice pieces.
pub fn pieces() -> &'static [Multigraph] {
    static PIECES: OnceLock<Vec<Multigraph>> = OnceLock::new();
    PIECES.get_or_init(|| {
        matching_covered_corpus(8)
            .into_iter()
            .map(|e| e.graph)
            .filter(|g| g.vertex_count() >= 4)
            .collect()
    })
}

/// Deletes `u` from `g1` and `v` from `g2` and joins `N(u)` to `N(v)`
/// through `bijection` (the i-th neighbour of `u` goes to the
/// `bijection[i]`-th neighbour of `v`).
pub fn splice(
    g1: &Multigraph,
    u: Vertex,
    g2: &Multigraph,
    v: Vertex,
    bijection: &[usize],
) -> Multigraph {
    let (n1, n2) = (g1.vertex_count(), g2.vertex_count());
    let left = |x: Vertex| if x < u { x } else { x - 1 };
    let right = |y: Vertex| n1 - 1 + if y < v { y } else { y - 1 };
    let mut edges = Vec::new();
    for &(a, b) in g1.edges() {
        if a != u && b != u {
            edges.push((left(a), left(b)));
        }
    }
    for &(a, b) in g2.edges() {
        if a != v && b != v {
            edges.push((right(a), right(b)));
        }
    }
    let nu: Vec<Vertex> = g1.neighbors(u).collect();
    let nv: Vec<Vertex> = g2.neighbors(v).collect();
    for (i, &x) in nu.iter().enumerate() {
        edges.push((left(x), right(nv[bijection[i]])));
    }
    Multigraph::new(n1 + n2 - 2, edges).expect("splice of valid graphs")
}

fn random_splice(rng: &mut StdRng, g: &Multigraph, max_n: usize) -> Option<Multigraph> {
    let n = g.vertex_count();
    let fitting: Vec<&Multigraph> = pieces()
        .iter()
        .filter(|p| n + p.vertex_count() - 2 <= max_n)
        .collect();
    let piece = *fitting.choose(rng)?;
    let mut options = Vec::new();
    for u in g.vertices() {
        for v in piece.vertices() {
            let d = g.degree(u);
            if d >= 2 && d == piece.degree(v) && !g.has_parallel_edges() {
                options.push((u, v));
            }
        }
    }
    let &(u, v) = options.choose(rng)?;
    let mut bijection: Vec<usize> = (0..g.degree(u)).collect();
    bijection.shuffle(rng);
    Some(splice(g, u, piece, v, &bijection))
}

/// A matching covered graph on at most `max_n` vertices (`max_n >= 8`):
/// a chain of random splices, then a few extra edges kept only when the
/// result stays matching covered, then a random relabelling.
pub fn random_mc(seed: u64, max_n: usize) -> Multigraph {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut g = pieces().choose(&mut rng).unwrap().clone();
    for _ in 0..rng.gen_range(1..=4) {
        if let Some(h) = random_splice(&mut rng, &g, max_n) {
            g = h;
        }
    }
    let n = g.vertex_count();
    for _ in 0..rng.gen_range(0..=3) {
        let (a, b) = (rng.gen_range(1..=n), rng.gen_range(1..=n));
        if a == b || g.are_adjacent(a, b) {
            continue;
        }
        let mut edges = g.edges().to_vec();
        edges.push((a, b));
        let h = Multigraph::new(n, edges).unwrap();
        if is_matching_covered(&h) {
            g = h;
        }
    }
    let mut map: Vec<Vertex> = (0..=n).collect();
    map[1..].shuffle(&mut rng);
    let g = g.relabeled(&map);
    debug_assert!(is_matching_covered(&g));
    g
}

/// Lifts every barrier and 2-separation of every contraction `G/(X̄+u₁)`
/// taken along a 2-separation of `g`. Returns the number of lifts and a
/// message per failed lift.
pub fn check_inheritance(g: &Multigraph) -> (usize, Vec<String>) {
    let n = g.vertex_count();
    let mut lifted = 0;
    let mut failures = Vec::new();
    for sep in all_two_separations(g) {
        let (a, b) = sep.pair();
        for side in sep.sides() {
            for (u1, u2) in [(a, b), (b, a)] {
                let x = side.with(u1);
                let h = contract(g, &x.complement(n)).unwrap();
                let mut structures: Vec<(VertexSet, StructureKind)> =
                    all_barriers(&h.result, h.result.vertex_count())
                        .unwrap()
                        .into_iter()
                        .map(|b| (b.members().clone(), StructureKind::Barrier))
                        .collect();
                structures.extend(
                    all_two_separations(&h.result)
                        .into_iter()
                        .map(|s| (s.pair_set(), StructureKind::Separation)),
                );
                for (s_h, kind) in structures {
                    lifted += 1;
                    if let Err(e) = lift_structure(g, &h, u1, u2, &s_h, kind) {
                        failures.push(format!(
                            "lift of {s_h} through {{{u1},{u2}}} side {side}: {e}"
                        ));
                    }
                }
            }
        }
    }
    (lifted, failures)
}

/// Restricts every barrier along every eligible component across every
/// tight cut in `tight`, and checks that the odd components meeting `X̄`
/// oddly stay inside `X̄` with no neighbour in `B ∩ X`.
pub fn check_restriction(g: &Multigraph, tight: &[Cut]) -> (usize, Vec<String>) {
    let n = g.vertex_count();
    let barriers = all_barriers(g, n).unwrap();
    let mut applied = 0;
    let mut failures = Vec::new();
    for c in tight {
        for side in [Side::X, Side::XBar] {
            let x = side.shore(c);
            let xbar = x.complement(n);
            for b in &barriers {
                let b_xbar = b.members().intersection(&xbar);
                let b_x = b.members().intersection(&x);
                for k in b.odd_components() {
                    if !k.intersection(&x).is_odd()
                        || !b_xbar.iter().any(|v| g.neighbors_in(v, k) > 0)
                    {
                        continue;
                    }
                    applied += 1;
                    if let Err(e) = restrict_barrier(g, c, side, b, k) {
                        failures.push(format!("restrict {} along {k} on {x}: {e}", b.members()));
                    }
                    for h in b
                        .odd_components()
                        .iter()
                        .filter(|h| h.intersection(&xbar).is_odd())
                    {
                        if !h.is_subset(&xbar) || b_x.iter().any(|v| g.neighbors_in(v, h) > 0) {
                            failures.push(format!(
                                "component {h} of G - {} leaves {xbar}",
                                b.members()
                            ));
                        }
                    }
                }
            }
        }
    }
    (applied, failures)
}
