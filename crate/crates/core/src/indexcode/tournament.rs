//! The `(n + 1)`-bit code for two rounds whose side information follows a
//! transitive tournament and then its reverse.
//!
//! Vertex `(i, 0)` (index `2i`) wants `x_i` and knows `x_j` for `j > i` and
//! `y_j` for `j < i`; vertex `(i, 1)` (index `2i + 1`) wants `y_i` with the
//! same knowledge. The code sends `x_i ^ y_i` for every `i` and the parity
//! of `x`.

use super::{check_decode_args, check_input, BitString, IndexCode};
use crate::error::Result;
use crate::graph::Graph;

#[derive(Clone, Debug)]
pub struct TournamentComposeCode {
    n: usize,
    graph: Graph,
    side: Vec<Vec<usize>>,
}

impl TournamentComposeCode {
    pub fn new(n: usize) -> Result<Self> {
        let t = Graph::transitive_tournament(n);
        let graph = Graph::compose(&[t.clone(), t.reverse()])?;
        let side = (0..2 * n).map(|v| graph.out_neighbors(v)).collect();
        Ok(TournamentComposeCode { n, graph, side })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn rounds(&self) -> usize {
        self.n
    }
}

impl IndexCode for TournamentComposeCode {
    fn n(&self) -> usize {
        2 * self.n
    }

    fn length_bits(&self) -> usize {
        self.n + 1
    }

    fn side_info(&self, v: usize) -> Vec<usize> {
        self.side[v].clone()
    }

    fn encode(&self, w: &[bool]) -> Result<BitString> {
        check_input(2 * self.n, w)?;
        let mut out: Vec<bool> = (0..self.n).map(|i| w[2 * i] ^ w[2 * i + 1]).collect();
        out.push((0..self.n).fold(false, |p, i| p ^ w[2 * i]));
        Ok(BitString(out))
    }

    fn decode(&self, v: usize, codeword: &BitString, side: &[bool]) -> Result<bool> {
        check_decode_args(self, v, codeword, side)?;
        let (i, round) = (v / 2, v % 2);
        let c = codeword.bits();
        let mut known = vec![None; 2 * self.n];
        for (&u, &b) in self.side[v].iter().zip(side) {
            known[u] = Some(b);
        }
        // x_j for j < i from y_j and x_j ^ y_j; x_j for j > i is known
        let mut parity = c[self.n];
        for j in (0..self.n).filter(|&j| j != i) {
            let xj = if j < i {
                c[j] ^ known[2 * j + 1].expect("y_j is side information")
            } else {
                known[2 * j].expect("x_j is side information")
            };
            parity ^= xj;
        }
        Ok(if round == 0 { parity } else { parity ^ c[i] })
    }
}
