//! Canonical labelling of the simple support of a graph, by
//! individualisation/refinement with twin pruning. Adequate for the desk
//! sizes (n ≲ 16) this crate targets.

use std::fmt;

use serde::{Serialize, Serializer};

use super::Multigraph;

/// Isomorphism invariant of the underlying simple graph: two graphs have
/// equal forms iff their simple supports are isomorphic.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    order: usize,
    bits: Vec<u8>,
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.order)?;
        for b in &self.bits {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

impl Serialize for CanonicalForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

struct Searcher {
    n: usize,
    adj: Vec<Vec<bool>>,
    best: Option<Vec<bool>>,
}

pub fn canonical_form(g: &Multigraph) -> CanonicalForm {
    let n = g.vertex_count();
    let mut adj = vec![vec![false; n]; n];
    for &(u, v) in g.edges() {
        adj[u - 1][v - 1] = true;
        adj[v - 1][u - 1] = true;
    }
    let mut s = Searcher { n, adj, best: None };
    let start = s.refine(vec![(0..n).collect()]);
    s.search(start);
    let code = s.best.unwrap_or_default();
    let mut bits = vec![0u8; code.len().div_ceil(8)];
    for (i, &b) in code.iter().enumerate() {
        if b {
            bits[i / 8] |= 1 << (7 - i % 8);
        }
    }
    CanonicalForm { order: n, bits }
}

impl Searcher {
    fn refine(&self, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
        loop {
            let mut cell_of = vec![0; self.n];
            for (i, c) in cells.iter().enumerate() {
                for &v in c {
                    cell_of[v] = i;
                }
            }
            let k = cells.len();
            let mut next = Vec::with_capacity(k);
            for c in &cells {
                if c.len() == 1 {
                    next.push(c.clone());
                    continue;
                }
                let mut keyed: Vec<(Vec<usize>, usize)> = c
                    .iter()
                    .map(|&v| {
                        let mut counts = vec![0; k];
                        for w in 0..self.n {
                            if self.adj[v][w] {
                                counts[cell_of[w]] += 1;
                            }
                        }
                        (counts, v)
                    })
                    .collect();
                keyed.sort();
                let mut start = 0;
                for i in 1..=keyed.len() {
                    if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                        next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                        start = i;
                    }
                }
            }
            if next.len() == cells.len() {
                return next;
            }
            cells = next;
        }
    }

    fn twins(&self, u: usize, v: usize) -> bool {
        (0..self.n).all(|w| w == u || w == v || self.adj[u][w] == self.adj[v][w])
    }

    fn search(&mut self, cells: Vec<Vec<usize>>) {
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
            let mut code = Vec::with_capacity(self.n * (self.n.saturating_sub(1)) / 2);
            for j in 1..self.n {
                for i in 0..j {
                    code.push(self.adj[order[i]][order[j]]);
                }
            }
            if self.best.as_ref().is_none_or(|b| code < *b) {
                self.best = Some(code);
            }
            return;
        };
        let cell = cells[target].clone();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cell {
            if tried.iter().any(|&u| self.twins(u, v)) {
                continue;
            }
            tried.push(v);
            let mut split = cells[..target].to_vec();
            split.push(vec![v]);
            split.push(cell.iter().copied().filter(|&w| w != v).collect());
            split.extend_from_slice(&cells[target + 1..]);
            let refined = self.refine(split);
            self.search(refined);
        }
    }
}
