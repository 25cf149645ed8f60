//! Minimum-rank search over matrices with a prescribed zero pattern.
//!
//! Row `i` of the matrix has a fixed nonzero entry at `pivot` (normalised to
//! 1, which row scaling allows without changing rank) and free entries at the
//! `free` columns; every other entry is zero. The search walks the rows in
//! order keeping the span of the rows chosen so far. Two partial choices
//! whose spans agree on everything the remaining rows can still touch are
//! interchangeable, so each level keeps one state per distinct
//! `(dimension, span restricted to the remaining columns)` pair. A candidate
//! rank `cap` is feasible iff some state survives the last row.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldSpec};
use crate::matrix::EchelonAccumulator;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowTemplate {
    pub pivot: usize,
    pub free: Vec<usize>,
}

/// Node budget shared across the rank levels of one search.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub limit: u64,
    pub used: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    fn spend(&mut self, n: u64) -> Result<()> {
        self.used += n;
        if self.used > self.limit {
            return Err(Error::BudgetExhausted(self.limit));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub enum RankSearch {
    /// Minimum rank with a witness (rows in template order).
    Optimal { rank: usize, rows: Vec<Vec<FieldElement>> },
    /// Every rank below `proved_lower` is infeasible; the budget ran out.
    Exhausted { proved_lower: usize },
}

struct StateRec {
    parent: usize,
    row: Vec<FieldElement>,
}

type Key = (usize, Vec<FieldElement>);

pub struct RowSearch<'a> {
    field: &'a FieldSpec,
    ncols: usize,
    templates: &'a [RowTemplate],
    /// live[i][c]: column c is touched by some template at index >= i
    live: Vec<Vec<bool>>,
    /// size of a set of rows from i onwards whose pivot submatrix is forced
    /// diagonal; such rows add that many dimensions beyond the live span
    suffix_forced: Vec<usize>,
}

impl<'a> RowSearch<'a> {
    pub fn new(field: &'a FieldSpec, ncols: usize, templates: &'a [RowTemplate]) -> Self {
        let m = templates.len();
        let mut live = vec![vec![false; ncols]; m + 1];
        for i in (0..m).rev() {
            live[i] = live[i + 1].clone();
            live[i][templates[i].pivot] = true;
            for &c in &templates[i].free {
                live[i][c] = true;
            }
        }
        // greedy, scanning from the back; any such set gives a valid bound
        let mut suffix_forced = vec![0; m + 1];
        let mut chosen: Vec<usize> = Vec::new();
        for i in (0..m).rev() {
            let t = &templates[i];
            let compatible = chosen.iter().all(|&j| {
                let u = &templates[j];
                u.pivot != t.pivot && !u.free.contains(&t.pivot) && !t.free.contains(&u.pivot)
            });
            if compatible {
                chosen.push(i);
            }
            suffix_forced[i] = chosen.len();
        }
        RowSearch {
            field,
            ncols,
            templates,
            live,
            suffix_forced,
        }
    }

    /// Canonical basis of `span(rows) ∩ F^{live columns}`.
    fn restrict(&self, rows: Vec<Vec<FieldElement>>, live: &[bool]) -> Vec<Vec<FieldElement>> {
        let f = self.field;
        let mut rest = rows;
        for c in (0..self.ncols).filter(|&c| !live[c]) {
            let Some(pos) = rest.iter().position(|r| !r[c].is_zero()) else {
                continue;
            };
            let piv = rest.swap_remove(pos);
            let inv = f.inv_nonzero(piv[c]);
            for r in rest.iter_mut() {
                let k = r[c];
                if !k.is_zero() {
                    f.axpy(r, f.neg(f.mul(k, inv)), &piv);
                }
            }
        }
        let mut acc = EchelonAccumulator::new(f, self.ncols);
        for r in rest {
            acc.push(r);
        }
        let mut out: Vec<(usize, Vec<FieldElement>)> =
            acc.pivots().iter().copied().zip(acc.basis().iter().cloned()).collect();
        out.sort_by_key(|(p, _)| *p);
        out.into_iter().map(|(_, r)| r).collect()
    }

    fn key(dim: usize, basis: &[Vec<FieldElement>]) -> Key {
        (dim, basis.iter().flatten().copied().collect())
    }

    fn reduce(&self, basis: &[Vec<FieldElement>], v: &mut [FieldElement]) {
        let f = self.field;
        for row in basis {
            let pc = row.iter().position(|x| !x.is_zero()).unwrap();
            let c = v[pc];
            if !c.is_zero() {
                f.axpy(v, f.neg(c), row);
            }
        }
    }

    /// A witness of rank at most `cap`, or `None` if none exists.
    pub fn feasible(&self, cap: usize, budget: &mut Budget) -> Result<Option<Vec<Vec<FieldElement>>>> {
        let f = self.field;
        let q = f.order() as u64;
        let m = self.templates.len();
        let mut history: Vec<Vec<StateRec>> = Vec::with_capacity(m + 1);
        let mut frontier: Vec<(usize, Vec<Vec<FieldElement>>)> = vec![(0, Vec::new())];
        history.push(vec![StateRec {
            parent: usize::MAX,
            row: Vec::new(),
        }]);

        for (i, t) in self.templates.iter().enumerate() {
            let live_next = &self.live[i + 1];
            let mut next: Vec<(usize, Vec<Vec<FieldElement>>)> = Vec::new();
            let mut recs: Vec<StateRec> = Vec::new();
            let mut index: HashMap<Key, usize> = HashMap::new();
            let bound_ok = |dim: usize, basis_len: usize| {
                dim + self.suffix_forced[i + 1].saturating_sub(basis_len) <= cap
            };
            let combos = q.checked_pow(t.free.len() as u32).unwrap_or(u64::MAX);

            for (sidx, (dim, basis)) in frontier.iter().enumerate() {
                budget.spend(combos)?;
                let mut in_span_done = false;
                let mut acc_base: Option<EchelonAccumulator> = None;
                for code in 0..combos {
                    let mut v = vec![FieldElement::ZERO; self.ncols];
                    v[t.pivot] = FieldElement::ONE;
                    let mut c = code;
                    for &col in &t.free {
                        v[col] = FieldElement((c % q) as u32);
                        c /= q;
                    }
                    let mut w = v.clone();
                    self.reduce(basis, &mut w);
                    let (child_dim, child_rows) = if w.iter().all(|x| x.is_zero()) {
                        if in_span_done {
                            continue;
                        }
                        in_span_done = true;
                        (*dim, basis.clone())
                    } else {
                        if dim + 1 > cap {
                            continue;
                        }
                        let acc = acc_base.get_or_insert_with(|| {
                            let mut a = EchelonAccumulator::new(f, self.ncols);
                            for r in basis {
                                a.push(r.clone());
                            }
                            a
                        });
                        let mut a = acc.clone();
                        a.push(w);
                        (dim + 1, a.basis().to_vec())
                    };
                    let child = self.restrict(child_rows, live_next);
                    if !bound_ok(child_dim, child.len()) {
                        continue;
                    }
                    let key = Self::key(child_dim, &child);
                    if let std::collections::hash_map::Entry::Vacant(e) = index.entry(key) {
                        e.insert(next.len());
                        next.push((child_dim, child));
                        recs.push(StateRec { parent: sidx, row: v });
                    }
                }
            }
            history.push(recs);
            frontier = next;
            if frontier.is_empty() {
                return Ok(None);
            }
        }

        // walk back from the first surviving state
        let mut rows = Vec::with_capacity(m);
        let mut idx = 0;
        for level in (1..=m).rev() {
            let rec = &history[level][idx];
            rows.push(rec.row.clone());
            idx = rec.parent;
        }
        rows.reverse();
        Ok(Some(rows))
    }

    /// Tries ranks `start, start + 1, ...` up to `upper` (which the caller
    /// knows to be feasible).
    pub fn minimum_rank(&self, start: usize, upper: usize, budget: &mut Budget) -> RankSearch {
        for cap in start..=upper {
            match self.feasible(cap, budget) {
                Ok(Some(rows)) => return RankSearch::Optimal { rank: cap, rows },
                Ok(None) => continue,
                Err(_) => return RankSearch::Exhausted { proved_lower: cap },
            }
        }
        RankSearch::Exhausted { proved_lower: upper + 1 }
    }
}
