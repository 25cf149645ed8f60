//! Directed side-information graphs and the operators on them.
//!
//! An undirected graph is a symmetric directed graph. Adjacency rows are
//! bitsets, so out-neighbourhoods and the combinatorial searches in
//! [`invariants`] work word-parallel.

pub mod catalog;
pub mod coloring;
pub mod invariants;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use invariants::{clique_cover, clique_cover_number, independence_number, mais, Caps};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
}

/// Wire format: `{"n": N, "edges": [[u, v], ...]}`, 0-based directed pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges().collect::<Vec<_>>())
    }
}

impl Graph {
    pub fn empty(n: usize) -> Graph {
        let words = n.div_ceil(64).max(1);
        Graph {
            n,
            words,
            adj: vec![0; n * words],
        }
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Undirected cycle `0 - 1 - ... - (n-1) - 0`.
    pub fn cycle(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        if n >= 2 {
            for i in 0..n {
                g.add_undirected(i, (i + 1) % n);
            }
        }
        g
    }

    pub fn path(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for i in 1..n {
            g.add_undirected(i - 1, i);
        }
        g
    }

    /// Edges `(i, j)` for every `i < j`.
    pub fn transitive_tournament(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for i in 0..n {
            for j in i + 1..n {
                g.add_edge(i, j);
            }
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidArgument(format!("edge ({u},{v}) out of range for n={n}")));
            }
            if u == v {
                return Err(Error::InvalidArgument(format!("self-loop at {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn undirected_from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let both: Vec<_> = edges.iter().flat_map(|&(u, v)| [(u, v), (v, u)]).collect();
        Graph::from_edges(n, &both)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// Adds `(u, v)`; self-loops are ignored.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u != v {
            self.adj[u * self.words + v / 64] |= 1 << (v % 64);
        }
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u * self.words + v / 64] &= !(1 << (v % 64));
    }

    pub fn add_undirected(&mut self, u: usize, v: usize) {
        self.add_edge(u, v);
        self.add_edge(v, u);
    }

    /// Adjacent in either direction.
    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.has_edge(u, v) || self.has_edge(v, u)
    }

    pub fn out_row(&self, u: usize) -> &[u64] {
        &self.adj[u * self.words..(u + 1) * self.words]
    }

    /// `N+(u)` in increasing order.
    pub fn out_neighbors(&self, u: usize) -> Vec<usize> {
        (0..self.n).filter(|&v| self.has_edge(u, v)).collect()
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.out_row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| (0..self.n).filter(move |&v| self.has_edge(u, v)).map(move |v| (u, v)))
    }

    pub fn is_undirected(&self) -> bool {
        self.edges().all(|(u, v)| self.has_edge(v, u))
    }

    /// Out-neighbourhood as a single word; requires `n <= 64`.
    pub(crate) fn out_mask(&self, u: usize) -> u64 {
        debug_assert!(self.n <= 64);
        self.adj[u * self.words]
    }

    pub fn reverse(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.add_edge(v, u);
        }
        g
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            for v in 0..self.n {
                if u != v && !self.has_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::empty(vertices.len());
        for (a, &u) in vertices.iter().enumerate() {
            for (b, &v) in vertices.iter().enumerate() {
                if self.has_edge(u, v) {
                    g.add_edge(a, b);
                }
            }
        }
        g
    }

    /// Graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    /// Strong product; vertex `(u1, u2)` is `u1 * g2.n() + u2`.
    pub fn strong_product(&self, other: &Graph) -> Graph {
        let (n1, n2) = (self.n, other.n);
        let mut g = Graph::empty(n1 * n2);
        let near1 = |a: usize, b: usize| a == b || self.has_edge(a, b);
        let near2 = |a: usize, b: usize| a == b || other.has_edge(a, b);
        for u1 in 0..n1 {
            for v1 in 0..n1 {
                if !near1(u1, v1) {
                    continue;
                }
                for u2 in 0..n2 {
                    for v2 in 0..n2 {
                        if near2(u2, v2) {
                            g.add_edge(u1 * n2 + u2, v1 * n2 + v2);
                        }
                    }
                }
            }
        }
        g
    }

    /// `t` independent copies of each vertex; `(u, i)` is `u * t + i`.
    pub fn blow_up(&self, t: usize) -> Result<Graph> {
        if t == 0 {
            return Err(Error::InvalidArgument("blow-up factor must be at least 1".into()));
        }
        let mut g = Graph::empty(self.n * t);
        for (u, v) in self.edges() {
            for i in 0..t {
                for j in 0..t {
                    g.add_edge(u * t + i, v * t + j);
                }
            }
        }
        Ok(g)
    }

    /// Round composition: `((i1, k1), (i2, k2))` is an edge iff `(i1, i2)` is
    /// an edge of `gs[k2]`; `(i, k)` is `i * t + k`.
    pub fn compose(gs: &[Graph]) -> Result<Graph> {
        let first = gs.first().ok_or(Error::Empty("graph list"))?;
        let (n, t) = (first.n, gs.len());
        if let Some(bad) = gs.iter().find(|g| g.n != n) {
            return Err(Error::Dimension(format!("compose needs equal sizes, got {n} and {}", bad.n)));
        }
        let mut g = Graph::empty(n * t);
        for (k2, gk) in gs.iter().enumerate() {
            for (i1, i2) in gk.edges() {
                for k1 in 0..t {
                    g.add_edge(i1 * t + k1, i2 * t + k2);
                }
            }
        }
        Ok(g)
    }

    pub fn disjoint_union(gs: &[Graph]) -> Result<Graph> {
        if gs.is_empty() {
            return Err(Error::Empty("graph list"));
        }
        let mut g = Graph::empty(gs.iter().map(|g| g.n).sum());
        let mut off = 0;
        for part in gs {
            for (u, v) in part.edges() {
                g.add_edge(off + u, off + v);
            }
            off += part.n;
        }
        Ok(g)
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            n: self.n,
            edges: self.edges().map(|(u, v)| [u, v]).collect(),
        }
    }

    pub fn from_json(j: &GraphJson) -> Result<Graph> {
        let edges: Vec<_> = j.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::from_edges(j.n, &edges)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
                let mut g = Graph::empty(n);
                for u in 0..n {
                    for v in 0..n {
                        if bits[u * n + v] {
                            g.add_edge(u, v);
                        }
                    }
                }
                g
            })
        })
    }

    #[test]
    fn complement_examples() {
        assert_eq!(Graph::complete(5).complement(), Graph::empty(5));
        let c5 = Graph::cycle(5);
        let cc = c5.complement();
        // i ~ i+2 in the complement; relabel along 0,2,4,1,3 to get the cycle back
        let order = [0, 2, 4, 1, 3];
        let mut perm = vec![0; 5];
        for (pos, &v) in order.iter().enumerate() {
            perm[v] = pos;
        }
        assert_eq!(cc.relabel(&perm), c5);
        assert_eq!(cc.edge_count(), 10);
    }

    #[test]
    fn strong_product_examples() {
        let k2 = Graph::complete(2);
        assert_eq!(k2.strong_product(&k2), Graph::complete(4));
        let g = Graph::from_edges(3, &[(0, 1), (2, 1)]).unwrap();
        assert_eq!(g.strong_product(&Graph::empty(1)), g);
        assert_eq!(Graph::empty(1).strong_product(&g), g);
    }

    #[test]
    fn blow_up_examples() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(g.blow_up(1).unwrap(), g);
        assert!(g.blow_up(0).is_err());
        let b = Graph::complete(2).blow_up(2).unwrap();
        assert!(!b.adjacent(0, 1) && !b.adjacent(2, 3));
        for u in 0..2 {
            for v in 2..4 {
                assert!(b.has_edge(u, v) && b.has_edge(v, u));
            }
        }
        assert_eq!(b.edge_count(), 8);
    }

    #[test]
    fn compose_examples() {
        let g = Graph::from_edges(3, &[(0, 1), (2, 0)]).unwrap();
        assert_eq!(Graph::compose(std::slice::from_ref(&g)).unwrap(), g);
        // n = 2: E(G1) = {(0,1)}, E(G2) = {(1,0)}
        let t1 = Graph::transitive_tournament(2);
        let c = Graph::compose(&[t1.clone(), t1.reverse()]).unwrap();
        let mut expected = Graph::empty(4);
        // (i, k) -> 2i + k
        for k1 in 0..2 {
            expected.add_edge(k1, 2); // (0,k1) -> (1,0)
            expected.add_edge(2 + k1, 1); // (1,k1) -> (0,1)
        }
        assert_eq!(c, expected);
        assert!(Graph::compose(&[Graph::empty(2), Graph::empty(3)]).is_err());
        assert!(Graph::compose(&[]).is_err());
    }

    #[test]
    fn compose_tournaments_edge_set() {
        for n in 1..7 {
            let t = Graph::transitive_tournament(n);
            let c = Graph::compose(&[t.clone(), t.reverse()]).unwrap();
            let v = |i: usize, k: usize| 2 * i + k;
            let mut expected = Graph::empty(2 * n);
            for i in 0..n {
                for j in 0..n {
                    if i < j {
                        expected.add_edge(v(i, 0), v(j, 0));
                    }
                    if i > j {
                        expected.add_edge(v(i, 1), v(j, 1));
                        expected.add_edge(v(i, 0), v(j, 1));
                    }
                    if j > i {
                        expected.add_edge(v(i, 1), v(j, 0));
                    }
                }
            }
            assert_eq!(c, expected, "n={n}");
        }
    }

    #[test]
    fn disjoint_union_examples() {
        assert_eq!(Graph::disjoint_union(&[Graph::empty(1), Graph::empty(1)]).unwrap(), Graph::empty(2));
        let c5 = Graph::cycle(5);
        let u = Graph::disjoint_union(&[c5.clone(), c5.complement()]).unwrap();
        assert_eq!(u.n(), 10);
        assert_eq!(u.edge_count(), 20);
        assert_eq!(u.induced(&[0, 1, 2, 3, 4]), c5);
        assert_eq!(u.induced(&[5, 6, 7, 8, 9]), c5.complement());
        assert!((0..5).all(|a| (5..10).all(|b| !u.adjacent(a, b))));
        assert!(Graph::disjoint_union(&[]).is_err());
    }

    #[test]
    fn multiword_rows() {
        let mut g = Graph::empty(130);
        g.add_edge(0, 129);
        g.add_edge(129, 64);
        assert!(g.has_edge(0, 129) && g.has_edge(129, 64) && !g.has_edge(64, 129));
        assert_eq!(g.out_neighbors(129), vec![64]);
        assert_eq!(g.complement().edge_count(), 130 * 129 - 2);
    }

    #[test]
    fn json_format() {
        let g = Graph::from_edges(3, &[(0, 1), (2, 1)]).unwrap();
        let s = serde_json::to_string(&g.to_json()).unwrap();
        assert_eq!(s, r#"{"n":3,"edges":[[0,1],[2,1]]}"#);
        assert_eq!(Graph::from_json(&serde_json::from_str(&s).unwrap()).unwrap(), g);
        let bad: GraphJson = serde_json::from_str(r#"{"n":2,"edges":[[1,1]]}"#).unwrap();
        assert!(Graph::from_json(&bad).is_err());
    }

    proptest! {
        #[test]
        fn complement_is_involution(g in arb_graph(9)) {
            prop_assert_eq!(g.complement().complement(), g.clone());
            for u in 0..g.n() {
                prop_assert!(!g.complement().has_edge(u, u));
            }
        }

        #[test]
        fn compose_of_equal_rounds_is_blow_up(g in arb_graph(6), t in 1usize..4) {
            let rounds = vec![g.clone(); t];
            prop_assert_eq!(Graph::compose(&rounds).unwrap(), g.blow_up(t).unwrap());
        }
    }
}
