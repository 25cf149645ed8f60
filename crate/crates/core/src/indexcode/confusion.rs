//! Brute-force optimum: an `l`-bit index code is exactly a proper colouring
//! of the confusion graph with at most `2^l` colours.

use crate::error::{Error, Result};
use crate::graph::coloring::chromatic_number;
use crate::graph::Graph;

/// Default largest `n` for `exact_ell`.
pub const ELL_CAP: usize = 6;
/// Largest `n` at all (2^8 words).
pub const CONFUSION_CAP: usize = 8;

/// Words `x, y` are confusable iff some receiver `i` sees `x_i != y_i` while
/// `x` and `y` agree on everything `i` knows.
#[derive(Clone, Debug)]
pub struct ConfusionGraph {
    pub n: usize,
    pub adj: Vec<Vec<usize>>,
}

impl ConfusionGraph {
    pub fn words(&self) -> usize {
        1 << self.n
    }

    pub fn confusable(&self, x: usize, y: usize) -> bool {
        self.adj[x].binary_search(&y).is_ok()
    }
}

/// Differences `x ^ y` that make a pair confusable, as a lookup over all
/// `2^n` masks.
pub fn confusable_differences(g: &Graph) -> Vec<bool> {
    let n = g.n();
    let know: Vec<u64> = (0..n).map(|i| g.out_mask(i)).collect();
    (0u64..1 << n)
        .map(|d| (0..n).any(|i| d >> i & 1 == 1 && d & know[i] == 0))
        .collect()
}

pub fn confusion_graph(g: &Graph) -> Result<ConfusionGraph> {
    confusion_graph_with_cap(g, CONFUSION_CAP)
}

pub fn confusion_graph_with_cap(g: &Graph, cap: usize) -> Result<ConfusionGraph> {
    let cap = cap.min(CONFUSION_CAP);
    if g.n() > cap {
        return Err(Error::CapExceeded {
            what: "confusion graph source length",
            size: g.n(),
            cap,
        });
    }
    let bad = confusable_differences(g);
    let words = 1usize << g.n();
    let adj = (0..words)
        .map(|x| (0..words).filter(|&y| bad[x ^ y]).collect())
        .collect();
    Ok(ConfusionGraph { n: g.n(), adj })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllResult {
    pub ell: usize,
    /// chromatic number of the confusion graph
    pub colors: usize,
    /// codeword index of every input word: an optimal encoder
    pub encoder: Vec<usize>,
    pub nodes: u64,
}

/// `ceil(log2 x)` for `x >= 1`.
fn ceil_log2(x: usize) -> usize {
    (usize::BITS - (x - 1).leading_zeros()) as usize
}

pub fn exact_ell(g: &Graph) -> Result<EllResult> {
    exact_ell_with(g, ELL_CAP, u64::MAX)
}

pub fn exact_ell_with(g: &Graph, cap: usize, budget: u64) -> Result<EllResult> {
    let cg = confusion_graph_with_cap(g, cap)?;
    let c = chromatic_number(&cg.adj, budget)?;
    Ok(EllResult {
        ell: ceil_log2(c.colors.max(1)),
        colors: c.colors,
        encoder: c.assignment,
        nodes: c.nodes,
    })
}

/// Whether the GF(2) encoder with the given columns (bit masks of length
/// `l`) separates every confusable pair.
pub fn linear_encoder_separates(bad: &[bool], columns: &[u32]) -> bool {
    (1..bad.len()).filter(|&d| bad[d]).all(|d| {
        let image = columns
            .iter()
            .enumerate()
            .filter(|&(j, _)| d >> j & 1 == 1)
            .fold(0u32, |acc, (_, &c)| acc ^ c);
        image != 0
    })
}

/// Smallest `l` such that some `l x n` matrix over GF(2) is a valid
/// encoder, searched exhaustively.
pub fn exact_linear_ell(g: &Graph, max_ell: usize) -> Result<usize> {
    if g.n() > 4 {
        return Err(Error::CapExceeded {
            what: "linear code search source length",
            size: g.n(),
            cap: 4,
        });
    }
    if max_ell > 4 {
        return Err(Error::CapExceeded {
            what: "linear code search length",
            size: max_ell,
            cap: 4,
        });
    }
    let n = g.n();
    let bad = confusable_differences(g);
    for ell in 0..=max_ell {
        let per = 1u64 << ell;
        let total = per.pow(n as u32);
        let found = (0..total).any(|code| {
            let columns: Vec<u32> = (0..n).map(|j| (code / per.pow(j as u32) % per) as u32).collect();
            linear_encoder_separates(&bad, &columns)
        });
        if found {
            return Ok(ell);
        }
    }
    Err(Error::InvalidArgument(format!("no linear code of length <= {max_ell}")))
}
