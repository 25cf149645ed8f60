//! Representing matrices and minimum rank over finite fields.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldSpec};
use crate::graph::invariants::{clique_cover_with_cap, max_acyclic_induced, max_independent_set, Caps};
use crate::graph::Graph;
use crate::matrix::FFMatrix;
use crate::search::{Budget, RankSearch, RowSearch, RowTemplate};

/// Default node budget for the exact search.
pub const DEFAULT_BUDGET: u64 = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    ZeroDiagonal,
    NonEdgeEntry,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub row: usize,
    pub col: usize,
    pub value: u32,
    pub kind: ViolationKind,
}

/// Every position where `m` fails to represent `g`; empty means it does.
pub fn represents_check(m: &FFMatrix, g: &Graph) -> Result<Vec<Violation>> {
    if !m.is_square() || m.rows() != g.n() {
        return Err(Error::Dimension(format!(
            "{}x{} matrix against a graph on {} vertices",
            m.rows(),
            m.cols(),
            g.n()
        )));
    }
    let mut out = Vec::new();
    for i in 0..g.n() {
        for j in 0..g.n() {
            let v = m.get(i, j);
            if i == j && v.is_zero() {
                out.push(Violation {
                    row: i,
                    col: j,
                    value: 0,
                    kind: ViolationKind::ZeroDiagonal,
                });
            } else if i != j && !v.is_zero() && !g.has_edge(i, j) {
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

/// A matrix known to represent a graph over its field.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation {
    graph: Graph,
    matrix: FFMatrix,
}

impl Representation {
    pub fn new(graph: Graph, matrix: FFMatrix) -> Result<Self> {
        let v = represents_check(&matrix, &graph)?;
        if let Some(first) = v.first() {
            return Err(Error::NotRepresenting(format!(
                "{} violation(s), first at ({}, {})",
                v.len(),
                first.row,
                first.col
            )));
        }
        Ok(Representation { graph, matrix })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn field(&self) -> &FieldSpec {
        self.matrix.field()
    }

    pub fn matrix(&self) -> &FFMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
}

/// Normalises every row to a unit diagonal and keeps the constant
/// coefficients, giving a representation over the prime subfield.
pub fn reduce_representation(rep: &Representation) -> Result<Representation> {
    let f = rep.field();
    let base = FieldSpec::prime(f.p() as u64)?;
    let n = rep.graph.n();
    let mut out = FFMatrix::zeros(&base, n, n);
    for i in 0..n {
        let mut row = rep.matrix.row(i).to_vec();
        let inv = f.inv_nonzero(row[i]);
        f.scale(&mut row, inv);
        for (j, &e) in row.iter().enumerate() {
            out.set(i, j, FieldElement(f.coefficient(e, 0)));
        }
    }
    Representation::new(rep.graph.clone(), out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinrankBounds {
    pub lower: usize,
    pub upper: usize,
}

/// Field-independent bounds: the larger of alpha and MAIS below, the clique
/// cover number above.
pub fn minrank_bounds(g: &Graph) -> Result<MinrankBounds> {
    minrank_bounds_with_caps(g, Caps::default())
}

pub fn minrank_bounds_with_caps(g: &Graph, caps: Caps) -> Result<MinrankBounds> {
    let alpha = max_independent_set(g, caps.independence)?.len();
    let lower = if g.is_undirected() {
        alpha
    } else {
        alpha.max(max_acyclic_induced(g, caps.mais)?.len())
    };
    let upper = clique_cover_with_cap(g, caps.clique_cover)?.len();
    Ok(MinrankBounds { lower, upper })
}

#[derive(Clone, Debug, PartialEq)]
pub struct MinrankOutcome {
    /// Rank of `witness`; the minimum when `optimal`.
    pub value: usize,
    pub optimal: bool,
    /// Largest rank proved infeasible plus one.
    pub lower: usize,
    pub witness: FFMatrix,
    pub nodes: u64,
}

/// All-ones blocks on the parts of a clique cover.
pub fn clique_cover_matrix(f: &FieldSpec, n: usize, parts: &[Vec<usize>]) -> FFMatrix {
    let mut m = FFMatrix::zeros(f, n, n);
    for part in parts {
        for &u in part {
            for &v in part {
                m.set(u, v, FieldElement::ONE);
            }
        }
    }
    m
}

pub(crate) fn rows_to_matrix(f: &FieldSpec, rows: Vec<Vec<FieldElement>>, cols: usize) -> FFMatrix {
    let r = rows.len();
    FFMatrix::new(f.clone(), r, cols, rows.into_iter().flatten().collect()).expect("search rows are valid")
}

/// Exact minrank by searching ranks upward from the combinatorial lower
/// bound. On budget exhaustion the clique-cover matrix is returned as a
/// non-optimal witness.
pub fn exact_minrank(g: &Graph, f: &FieldSpec, budget: u64) -> Result<MinrankOutcome> {
    let n = g.n();
    let caps = Caps::default();
    let lower = if n <= caps.independence {
        let a = max_independent_set(g, caps.independence)?.len();
        if n <= caps.mais {
            a.max(max_acyclic_induced(g, caps.mais)?.len())
        } else {
            a
        }
    } else {
        1.min(n)
    };
    let fallback = if n <= caps.clique_cover {
        clique_cover_matrix(f, n, &clique_cover_with_cap(g, caps.clique_cover)?)
    } else {
        FFMatrix::identity(f, n)
    };
    let upper = fallback.rank();
    if n == 0 || lower == upper {
        return Ok(MinrankOutcome {
            value: upper,
            optimal: true,
            lower: upper,
            witness: fallback,
            nodes: 0,
        });
    }
    let templates: Vec<RowTemplate> = (0..n)
        .map(|i| RowTemplate {
            pivot: i,
            free: g.out_neighbors(i),
        })
        .collect();
    let search = RowSearch::new(f, n, &templates);
    let mut b = Budget::new(budget);
    // ranks below `upper` are the open question; `upper` itself is known
    match search.minimum_rank(lower, upper - 1, &mut b) {
        RankSearch::Optimal { rank, rows } => Ok(MinrankOutcome {
            value: rank,
            optimal: true,
            lower: rank,
            witness: rows_to_matrix(f, rows, n),
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

/// Minrank of a disjoint union as the sum over components, with the
/// block-diagonal witness.
pub fn union_minrank(gs: &[Graph], f: &FieldSpec, budget: u64) -> Result<MinrankOutcome> {
    if gs.is_empty() {
        return Err(Error::Empty("graph list"));
    }
    let mut blocks = Vec::with_capacity(gs.len());
    let (mut value, mut lower, mut nodes, mut optimal) = (0, 0, 0, true);
    for g in gs {
        let o = exact_minrank(g, f, budget)?;
        if !o.optimal {
            return Err(Error::BudgetExhausted(budget));
        }
        value += o.value;
        lower += o.lower;
        nodes += o.nodes;
        optimal &= o.optimal;
        blocks.push(o.witness);
    }
    Ok(MinrankOutcome {
        value,
        optimal,
        lower,
        witness: FFMatrix::block_diag(&blocks)?,
        nodes,
    })
}
