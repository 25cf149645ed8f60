//! Exact combinatorial invariants: independence number, maximum acyclic
//! induced subgraph, clique cover number.
//!
//! All three are exponential searches guarded by explicit vertex caps.

use super::coloring::chromatic_number;
use super::Graph;
use crate::error::{Error, Result};

/// Vertex caps for the exact searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub independence: usize,
    pub mais: usize,
    pub clique_cover: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            independence: 30,
            mais: 20,
            clique_cover: 20,
        }
    }
}

fn check_cap(what: &'static str, n: usize, cap: usize) -> Result<()> {
    // bitmask searches below use one u64 per vertex set
    let cap = cap.min(64);
    if n > cap {
        return Err(Error::CapExceeded { what, size: n, cap });
    }
    Ok(())
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(b)
        }
    })
}

struct MisSearch {
    /// neighbours in either direction
    nb: Vec<u64>,
    best: u64,
}

impl MisSearch {
    fn run(&mut self, chosen: u64, cand: u64) {
        if cand == 0 {
            if chosen.count_ones() > self.best.count_ones() {
                self.best = chosen;
            }
            return;
        }
        if chosen.count_ones() + cand.count_ones() <= self.best.count_ones() {
            return;
        }
        // isolated candidates can always be taken
        let free: u64 = bits(cand).filter(|&v| self.nb[v] & cand == 0).fold(0, |m, v| m | 1 << v);
        if free != 0 {
            self.run(chosen | free, cand & !free);
            return;
        }
        let v = bits(cand).max_by_key(|&v| (self.nb[v] & cand).count_ones()).unwrap();
        self.run(chosen | 1 << v, cand & !(1 << v) & !self.nb[v]);
        self.run(chosen, cand & !(1 << v));
    }
}

/// A maximum independent set (no edge in either direction), lowest-index
/// preferences broken deterministically.
pub fn max_independent_set(g: &Graph, cap: usize) -> Result<Vec<usize>> {
    check_cap("independence number input", g.n(), cap)?;
    let n = g.n();
    let nb: Vec<u64> = (0..n)
        .map(|u| (0..n).filter(|&v| g.adjacent(u, v)).fold(0u64, |m, v| m | 1 << v))
        .collect();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut s = MisSearch { nb, best: 0 };
    s.run(0, all);
    Ok(bits(s.best).collect())
}

/// `alpha(G)` under the default cap.
pub fn independence_number(g: &Graph) -> Result<usize> {
    Ok(max_independent_set(g, Caps::default().independence)?.len())
}

struct AcyclicSearch {
    out: Vec<u64>,
    n: usize,
    best: u64,
}

impl AcyclicSearch {
    /// Whether adding `v` to the acyclic set `s` closes a cycle through `v`.
    fn closes_cycle(&self, s: u64, v: usize) -> bool {
        let mut reach = self.out[v] & s;
        let mut frontier = reach;
        while frontier != 0 {
            let mut next = 0;
            for u in bits(frontier) {
                if self.out[u] >> v & 1 == 1 {
                    return true;
                }
                next |= self.out[u] & s;
            }
            frontier = next & !reach;
            reach |= next;
        }
        false
    }

    fn run(&mut self, chosen: u64, next: usize) {
        let remaining = (self.n - next) as u32;
        if chosen.count_ones() + remaining <= self.best.count_ones() {
            return;
        }
        if next == self.n {
            self.best = chosen;
            return;
        }
        if !self.closes_cycle(chosen, next) {
            self.run(chosen | 1 << next, next + 1);
        }
        self.run(chosen, next + 1);
    }
}

/// A maximum vertex set inducing an acyclic subgraph (2-cycles count).
pub fn max_acyclic_induced(g: &Graph, cap: usize) -> Result<Vec<usize>> {
    check_cap("MAIS input", g.n(), cap)?;
    let mut s = AcyclicSearch {
        out: (0..g.n()).map(|u| g.out_mask(u)).collect(),
        n: g.n(),
        best: 0,
    };
    s.run(0, 0);
    Ok(bits(s.best).collect())
}

/// Maximum acyclic induced subgraph size under the default cap.
pub fn mais(g: &Graph) -> Result<usize> {
    Ok(max_acyclic_induced(g, Caps::default().mais)?.len())
}

/// Minimum partition into bidirected cliques: an optimal colouring of the
/// graph joining every pair that is not mutually adjacent.
pub fn clique_cover_with_cap(g: &Graph, cap: usize) -> Result<Vec<Vec<usize>>> {
    check_cap("clique cover input", g.n(), cap)?;
    let n = g.n();
    let conflict: Vec<Vec<usize>> = (0..n)
        .map(|u| (0..n).filter(|&v| v != u && !(g.has_edge(u, v) && g.has_edge(v, u))).collect())
        .collect();
    let col = chromatic_number(&conflict, u64::MAX)?;
    let mut parts = vec![Vec::new(); col.colors];
    for (v, &c) in col.assignment.iter().enumerate() {
        parts[c].push(v);
    }
    parts.sort();
    Ok(parts)
}

pub fn clique_cover(g: &Graph) -> Result<Vec<Vec<usize>>> {
    clique_cover_with_cap(g, Caps::default().clique_cover)
}

/// `chi` of the complement of the bidirected core.
pub fn clique_cover_number(g: &Graph) -> Result<usize> {
    Ok(clique_cover(g)?.len())
}
