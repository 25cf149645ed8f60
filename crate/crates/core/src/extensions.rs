//! Problem variants: several rounds or blocks reduced to a single graph, and
//! receivers that may share a demanded bit.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldSpec};
use crate::graph::coloring::chromatic_number;
use crate::graph::Graph;
use crate::matrix::FFMatrix;
use crate::minrank::{rows_to_matrix, MinrankOutcome, Violation, ViolationKind};
use crate::search::{Budget, RankSearch, RowSearch, RowTemplate};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reduction {
    /// Every receiver wants a block of `t` bits.
    BlowUp { base: Graph, t: usize },
    /// Round `k` runs with side information `rounds[k]`.
    Compose { rounds: Vec<Graph> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduced {
    pub graph: Graph,
    /// `(bit, round)` demanded by each vertex
    pub demands: Vec<(usize, usize)>,
}

pub fn reduce_to_basic(r: &Reduction) -> Result<Reduced> {
    let (graph, t) = match r {
        Reduction::BlowUp { base, t } => (base.blow_up(*t)?, *t),
        Reduction::Compose { rounds } => (Graph::compose(rounds)?, rounds.len()),
    };
    let demands = (0..graph.n()).map(|v| (v / t, v % t)).collect();
    Ok(Reduced { graph, demands })
}

/// `m` receivers over `n` bits; receiver `i` wants bit `wants[i]` and knows
/// the bits marked in `knows[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "P4Json", into = "P4Json")]
pub struct P4Instance {
    m: usize,
    n: usize,
    wants: Vec<usize>,
    knows: Vec<Vec<bool>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct P4Json {
    m: usize,
    n: usize,
    wants: Vec<usize>,
    knows: Vec<Vec<bool>>,
}

impl TryFrom<P4Json> for P4Instance {
    type Error = Error;

    fn try_from(j: P4Json) -> Result<Self> {
        if j.m != j.wants.len() {
            return Err(Error::Dimension(format!("m = {} but {} demands", j.m, j.wants.len())));
        }
        P4Instance::new(j.n, j.wants, j.knows)
    }
}

impl From<P4Instance> for P4Json {
    fn from(p: P4Instance) -> Self {
        P4Json {
            m: p.m,
            n: p.n,
            wants: p.wants,
            knows: p.knows,
        }
    }
}

impl P4Instance {
    pub fn new(n: usize, wants: Vec<usize>, knows: Vec<Vec<bool>>) -> Result<Self> {
        let m = wants.len();
        if knows.len() != m || knows.iter().any(|row| row.len() != n) {
            return Err(Error::Dimension(format!("knowledge grid must be {m} x {n}")));
        }
        for (i, &w) in wants.iter().enumerate() {
            if w >= n {
                return Err(Error::InvalidArgument(format!("receiver {i} wants bit {w} of {n}")));
            }
            if knows[i][w] {
                return Err(Error::InvalidArgument(format!("receiver {i} already knows its bit {w}")));
            }
        }
        Ok(P4Instance { m, n, wants, knows })
    }

    /// The single-demand instance of a side-information graph.
    pub fn from_graph(g: &Graph) -> Self {
        let n = g.n();
        let knows = (0..n).map(|i| (0..n).map(|j| g.has_edge(i, j)).collect()).collect();
        P4Instance {
            m: n,
            n,
            wants: (0..n).collect(),
            knows,
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn wants(&self) -> &[usize] {
        &self.wants
    }

    pub fn knows(&self, i: usize, j: usize) -> bool {
        self.knows[i][j]
    }

    pub fn known_bits(&self, i: usize) -> Vec<usize> {
        (0..self.n).filter(|&j| self.knows[i][j]).collect()
    }

    /// The instance without receiver `i`.
    pub fn without_receiver(&self, i: usize) -> P4Instance {
        let mut p = self.clone();
        p.wants.remove(i);
        p.knows.remove(i);
        p.m -= 1;
        p
    }

    /// One clone receiver per demanded bit, each with the original knowledge.
    pub fn split_demands(n: usize, demands: &[Vec<usize>], knows: &[Vec<bool>]) -> Result<Self> {
        if demands.len() != knows.len() {
            return Err(Error::Dimension("one knowledge row per receiver".into()));
        }
        let mut wants = Vec::new();
        let mut rows = Vec::new();
        for (d, k) in demands.iter().zip(knows) {
            for &w in d {
                wants.push(w);
                rows.push(k.clone());
            }
        }
        P4Instance::new(n, wants, rows)
    }
}

/// Receiver graphs: same-demand groups become independent sets (`g_ind`) or
/// bidirected cliques (`g_cl`); otherwise `i -> j` iff `i` knows the bit `j`
/// wants.
pub fn build_gind_gcl(inst: &P4Instance) -> (Graph, Graph) {
    let m = inst.m;
    let mut g_ind = Graph::empty(m);
    let mut g_cl = Graph::empty(m);
    for i in 0..m {
        for j in 0..m {
            if i == j {
                continue;
            }
            if inst.wants[i] == inst.wants[j] {
                g_cl.add_edge(i, j);
            } else if inst.knows[i][inst.wants[j]] {
                g_ind.add_edge(i, j);
                g_cl.add_edge(i, j);
            }
        }
    }
    (g_ind, g_cl)
}

pub fn p4_represents_check(b: &FFMatrix, inst: &P4Instance) -> Result<Vec<Violation>> {
    if b.rows() != inst.m || b.cols() != inst.n {
        return Err(Error::Dimension(format!(
            "{}x{} matrix for a {}x{} instance",
            b.rows(),
            b.cols(),
            inst.m,
            inst.n
        )));
    }
    let mut out = Vec::new();
    for i in 0..inst.m {
        for j in 0..inst.n {
            let v = b.get(i, j);
            if j == inst.wants[i] {
                if v.is_zero() {
                    out.push(Violation {
                        row: i,
                        col: j,
                        value: 0,
                        kind: ViolationKind::ZeroDiagonal,
                    });
                }
            } else if !inst.knows[i][j] && !v.is_zero() {
                out.push(Violation {
                    row: i,
                    col: j,
                    value: v.0,
                    kind: ViolationKind::NonEdgeEntry,
                });
            }
        }
    }
    Ok(out)
}

/// Exact minimum rank over matrices passing `p4_represents_check`.
pub fn p4_minrank(inst: &P4Instance, f: &FieldSpec, budget: u64) -> Result<MinrankOutcome> {
    // one unit per distinct demanded column always works
    let mut fallback = FFMatrix::zeros(f, inst.m, inst.n);
    for (i, &w) in inst.wants.iter().enumerate() {
        fallback.set(i, w, FieldElement::ONE);
    }
    let upper = fallback.rank();
    if upper <= 1 {
        return Ok(MinrankOutcome {
            value: upper,
            optimal: true,
            lower: upper,
            witness: fallback,
            nodes: 0,
        });
    }
    let templates: Vec<RowTemplate> = (0..inst.m)
        .map(|i| RowTemplate {
            pivot: inst.wants[i],
            free: inst.known_bits(i),
        })
        .collect();
    let search = RowSearch::new(f, inst.n, &templates);
    let mut b = Budget::new(budget);
    match search.minimum_rank(1, upper - 1, &mut b) {
        RankSearch::Optimal { rank, rows } => Ok(MinrankOutcome {
            value: rank,
            optimal: true,
            lower: rank,
            witness: rows_to_matrix(f, rows, inst.n),
            nodes: b.used,
        }),
        RankSearch::Exhausted { proved_lower } => Ok(MinrankOutcome {
            value: upper,
            optimal: proved_lower >= upper,
            lower: proved_lower.min(upper),
            witness: fallback,
            nodes: b.used.min(budget),
        }),
    }
}

/// Brute-force optimal length for a shared-request instance: words are
/// confusable iff some receiver sees its bit differ while everything it
/// knows agrees.
pub fn p4_exact_ell(inst: &P4Instance, budget: u64) -> Result<usize> {
    if inst.n > 8 {
        return Err(Error::CapExceeded {
            what: "shared-request oracle bit count",
            size: inst.n,
            cap: 8,
        });
    }
    let masks: Vec<(usize, usize)> = (0..inst.m)
        .map(|i| (1 << inst.wants[i], inst.known_bits(i).iter().fold(0, |m, &j| m | 1 << j)))
        .collect();
    let words = 1usize << inst.n;
    let bad: Vec<bool> = (0..words)
        .map(|d| masks.iter().any(|&(w, k)| d & w != 0 && d & k == 0))
        .collect();
    let adj: Vec<Vec<usize>> = (0..words).map(|x| (0..words).filter(|&y| bad[x ^ y]).collect()).collect();
    let c = chromatic_number(&adj, budget)?.colors.max(1);
    Ok((usize::BITS - (c - 1).leading_zeros()) as usize)
}
