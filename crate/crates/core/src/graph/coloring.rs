//! Exact vertex colouring by DSATUR branch and bound.
//!
//! Works on symmetric adjacency lists so it serves both small side-information
//! graphs and the 2^n-word confusion graphs.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    /// Number of colours used.
    pub colors: usize,
    /// Colour of each vertex, in `0..colors`.
    pub assignment: Vec<usize>,
    /// Search nodes visited.
    pub nodes: u64,
}

pub fn is_proper(adj: &[Vec<usize>], assignment: &[usize]) -> bool {
    adj.iter()
        .enumerate()
        .all(|(u, nb)| nb.iter().all(|&v| assignment[u] != assignment[v]))
}

/// A maximal clique grown greedily from every start vertex; the largest found.
pub fn greedy_clique(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut is_nb = vec![vec![false; n]; n];
    for (u, nb) in adj.iter().enumerate() {
        for &v in nb {
            is_nb[u][v] = true;
        }
    }
    let mut best = Vec::new();
    for (start, nb) in adj.iter().enumerate() {
        let mut clique = vec![start];
        let mut cands: Vec<usize> = nb.clone();
        while !cands.is_empty() {
            // the candidate with most neighbours among the remaining candidates
            let &pick = cands
                .iter()
                .max_by_key(|&&c| (cands.iter().filter(|&&d| is_nb[c][d]).count(), std::cmp::Reverse(c)))
                .unwrap();
            clique.push(pick);
            cands.retain(|&c| c != pick && is_nb[pick][c]);
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best
}

struct Search<'a> {
    adj: &'a [Vec<usize>],
    degree: Vec<usize>,
    color: Vec<usize>,
    /// counts[v * width + c]: neighbours of v holding colour c
    counts: Vec<u32>,
    sat: Vec<usize>,
    width: usize,
    best: usize,
    best_assignment: Vec<usize>,
    lower: usize,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

const UNCOLORED: usize = usize::MAX;

impl Search<'_> {
    fn assign(&mut self, v: usize, c: usize) {
        self.color[v] = c;
        for &u in &self.adj[v] {
            let slot = &mut self.counts[u * self.width + c];
            if *slot == 0 {
                self.sat[u] += 1;
            }
            *slot += 1;
        }
    }

    fn unassign(&mut self, v: usize) {
        let c = self.color[v];
        self.color[v] = UNCOLORED;
        for &u in &self.adj[v] {
            let slot = &mut self.counts[u * self.width + c];
            *slot -= 1;
            if *slot == 0 {
                self.sat[u] -= 1;
            }
        }
    }

    fn pick(&self) -> Option<usize> {
        (0..self.adj.len())
            .filter(|&v| self.color[v] == UNCOLORED)
            .max_by_key(|&v| (self.sat[v], self.degree[v], std::cmp::Reverse(v)))
    }

    fn run(&mut self, used: usize) {
        if self.best <= self.lower || self.exhausted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        let Some(v) = self.pick() else {
            if used < self.best {
                self.best = used;
                self.best_assignment = self.color.clone();
            }
            return;
        };
        let limit = (used + 1).min(self.best - 1);
        for c in 0..limit {
            if self.counts[v * self.width + c] != 0 {
                continue;
            }
            self.assign(v, c);
            self.run(used.max(c + 1));
            self.unassign(v);
            if self.best <= self.lower || self.exhausted {
                return;
            }
        }
    }
}

fn dsatur_greedy(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut color = vec![UNCOLORED; n];
    let mut seen: Vec<Vec<bool>> = vec![Vec::new(); n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| color[v] == UNCOLORED)
            .max_by_key(|&v| (seen[v].iter().filter(|&&b| b).count(), adj[v].len(), std::cmp::Reverse(v)))
            .unwrap();
        let c = (0..).find(|&c| !seen[v].get(c).copied().unwrap_or(false)).unwrap();
        color[v] = c;
        for &u in &adj[v] {
            if seen[u].len() <= c {
                seen[u].resize(c + 1, false);
            }
            seen[u][c] = true;
        }
    }
    color
}

/// Exact chromatic number with an optimal colouring.
pub fn chromatic_number(adj: &[Vec<usize>], budget: u64) -> Result<Coloring> {
    let n = adj.len();
    if n == 0 {
        return Ok(Coloring {
            colors: 0,
            assignment: Vec::new(),
            nodes: 0,
        });
    }
    let greedy = dsatur_greedy(adj);
    let upper = greedy.iter().max().unwrap() + 1;
    let clique = greedy_clique(adj);
    if clique.len() == upper {
        return Ok(Coloring {
            colors: upper,
            assignment: greedy,
            nodes: 0,
        });
    }
    let width = upper;
    let mut s = Search {
        adj,
        degree: adj.iter().map(Vec::len).collect(),
        color: vec![UNCOLORED; n],
        counts: vec![0; n * width],
        sat: vec![0; n],
        width,
        best: upper,
        best_assignment: greedy,
        lower: clique.len(),
        nodes: 0,
        budget,
        exhausted: false,
    };
    // Clique vertices get distinct colours up front.
    for (c, &v) in clique.iter().enumerate() {
        s.assign(v, c);
    }
    s.run(clique.len());
    if s.exhausted {
        return Err(Error::BudgetExhausted(budget));
    }
    Ok(Coloring {
        colors: s.best,
        assignment: s.best_assignment,
        nodes: s.nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn undirected(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    // Smallest k admitting a proper k-colouring, by trying all k^n maps.
    fn brute_chromatic(adj: &[Vec<usize>]) -> usize {
        let n = adj.len();
        for k in 1..=n {
            let total = k.pow(n as u32);
            for code in 0..total {
                let a: Vec<usize> = (0..n).map(|i| code / k.pow(i as u32) % k).collect();
                if is_proper(adj, &a) {
                    return k;
                }
            }
        }
        0
    }

    #[test]
    fn small_graphs_against_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..150 {
            let n = rng.gen_range(1..=7);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.5) {
                        edges.push((u, v));
                    }
                }
            }
            let adj = undirected(n, &edges);
            let c = chromatic_number(&adj, u64::MAX).unwrap();
            assert!(is_proper(&adj, &c.assignment));
            assert_eq!(c.assignment.iter().max().unwrap() + 1, c.colors);
            assert_eq!(c.colors, brute_chromatic(&adj), "{edges:?}");
        }
    }

    #[test]
    fn known_values() {
        let c5 = undirected(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        assert_eq!(chromatic_number(&c5, u64::MAX).unwrap().colors, 3);
        // Petersen graph
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((5 + i, 5 + (i + 2) % 5));
        }
        assert_eq!(chromatic_number(&undirected(10, &e), u64::MAX).unwrap().colors, 3);
        let k6: Vec<(usize, usize)> = (0..6).flat_map(|u| (u + 1..6).map(move |v| (u, v))).collect();
        assert_eq!(chromatic_number(&undirected(6, &k6), u64::MAX).unwrap().colors, 6);
        assert_eq!(chromatic_number(&[], 10).unwrap().colors, 0);
    }

    #[test]
    fn budget_is_reported() {
        // Mycielski graph of C5 (Grötzsch): chi = 4, clique 2, needs search.
        let mut e = vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)];
        for i in 0..5 {
            e.push((5 + i, (i + 1) % 5));
            e.push((5 + i, (i + 4) % 5));
            e.push((5 + i, 10));
        }
        let adj = undirected(11, &e);
        assert_eq!(chromatic_number(&adj, u64::MAX).unwrap().colors, 4);
        assert_eq!(chromatic_number(&adj, 1), Err(Error::BudgetExhausted(1)));
    }
}
