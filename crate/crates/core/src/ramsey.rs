//! Set-system graphs whose complement pair has low rank over two different
//! fields.
//!
//! Vertices are the `s`-subsets of `[r]`, stored as `u128` bitmasks (so
//! `r <= 128`) and listed in colexicographic order, which for bitmasks is
//! plain numeric order.

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{binomial_mod_p, is_prime, FieldElement, FieldSpec};
use crate::graph::Graph;
use crate::matrix::{streaming_rank, FFMatrix};
use crate::minrank::represents_check;

/// Largest vertex list `build_ramsey_graph` will enumerate.
pub const VERTEX_CAP: usize = 1_000_000;
/// Largest vertex count for which a dense adjacency is materialised.
pub const ADJACENCY_CAP: usize = 20_000;
/// Largest `rows * cols` for a materialised inclusion matrix.
pub const INCLUSION_ENTRY_CAP: usize = 50_000_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RamseyParams {
    pub p: u32,
    pub q: u32,
    pub k: u32,
    pub l: u32,
    pub r: u64,
    pub s: u64,
    /// `p^k / q^l - 1`
    pub epsilon: f64,
}

fn pow(b: u32, e: u32) -> Option<u64> {
    (b as u64).checked_pow(e)
}

impl RamseyParams {
    /// Explicit parameters with the canonical ground set `r = p^(3k)`.
    pub fn new(p: u32, q: u32, k: u32, l: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if !is_prime(q as u64) {
            return Err(Error::NotPrime(q as u64));
        }
        if p == q {
            return Err(Error::InvalidArgument("p and q must be distinct".into()));
        }
        if k == 0 || l == 0 {
            return Err(Error::InvalidArgument("k and l must be at least 1".into()));
        }
        let too_big = || Error::InvalidArgument("parameters overflow".into());
        let pk = pow(p, k).ok_or_else(too_big)?;
        let ql = pow(q, l).ok_or_else(too_big)?;
        if ql >= pk {
            return Err(Error::InvalidArgument(format!("need q^l < p^k, got {ql} >= {pk}")));
        }
        let s = pk.checked_mul(ql).ok_or_else(too_big)? - 1;
        let r = pk.checked_pow(3).unwrap_or(u64::MAX);
        Ok(RamseyParams {
            p,
            q,
            k,
            l,
            r,
            s,
            epsilon: pk as f64 / ql as f64 - 1.0,
        })
    }

    pub fn pk(&self) -> u64 {
        pow(self.p, self.k).unwrap()
    }

    pub fn ql(&self) -> u64 {
        pow(self.q, self.l).unwrap()
    }
}

/// Smallest `k <= k_max` with `q^l < p^k < (1 + num/den) q^l`, where `l` is
/// the largest exponent with `q^l <= p^k`.
pub fn find_params(p: u32, q: u32, eps_num: u64, eps_den: u64, k_max: u32) -> Result<RamseyParams> {
    if eps_num == 0 || eps_den == 0 {
        return Err(Error::InvalidArgument("epsilon must be positive".into()));
    }
    if p == q {
        return Err(Error::InvalidArgument("p and q must be distinct".into()));
    }
    for (b, name) in [(p, "p"), (q, "q")] {
        if !is_prime(b as u64) {
            return Err(Error::InvalidArgument(format!("{name} = {b} is not prime")));
        }
    }
    let (p_big, q_big) = (BigUint::from(p), BigUint::from(q));
    for k in 1..=k_max {
        let pk = p_big.pow(k);
        let mut l = 0u32;
        while q_big.pow(l + 1) <= pk {
            l += 1;
        }
        if l == 0 {
            continue;
        }
        let ql = q_big.pow(l);
        if ql < pk && &pk * eps_den < (BigUint::from(eps_den) + eps_num) * &ql {
            return RamseyParams::new(p, q, k, l);
        }
    }
    Err(Error::NoParams { k_max })
}

/// Binomial coefficient as `u128` (exact for `n <= 128`).
pub fn binom(n: u64, r: u64) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Position of `set` in the colexicographic order of `|set|`-subsets.
pub fn colex_rank(set: u128) -> u128 {
    let mut m = set;
    let mut i = 1;
    let mut rank = 0;
    while m != 0 {
        let c = m.trailing_zeros() as u64;
        rank += binom(c, i);
        m &= m - 1;
        i += 1;
    }
    rank
}

/// Inverse of `colex_rank` for `s`-subsets.
pub fn colex_unrank(s: u32, mut rank: u128) -> u128 {
    let mut set = 0u128;
    for i in (1..=s as u64).rev() {
        let mut c = i - 1;
        while binom(c + 1, i) <= rank {
            c += 1;
        }
        rank -= binom(c, i);
        set |= 1 << c;
    }
    set
}

/// All `s`-subsets of `[r]` in colexicographic order.
pub fn subsets(r: u32, s: u32) -> impl Iterator<Item = u128> {
    let limit: u128 = if r == 128 { 0 } else { 1u128 << r };
    let first: Option<u128> = if s > r {
        None
    } else if s == 0 {
        Some(0)
    } else if s == 128 {
        Some(u128::MAX)
    } else {
        Some((1u128 << s) - 1)
    };
    std::iter::successors(first, move |&x| {
        if x == 0 {
            return None;
        }
        // Gosper's hack
        let c = x & x.wrapping_neg();
        let (rr, overflow) = x.overflowing_add(c);
        if overflow || rr == 0 {
            return None;
        }
        let next = (((rr ^ x) >> 2) / c) | rr;
        if limit != 0 && next >= limit {
            None
        } else {
            Some(next)
        }
    })
}

/// Ground-set and subset sizes as `u32`, checked against the bitmask width.
fn ground(params: &RamseyParams, r_override: Option<u32>) -> Result<(u32, u32)> {
    let r = r_override.map_or(params.r, u64::from);
    if r > 128 {
        return Err(Error::CapExceeded {
            what: "ground set",
            size: r.min(usize::MAX as u64) as usize,
            cap: 128,
        });
    }
    let s = params.s.min(u32::MAX as u64) as u32;
    check_ground(r as u32, s)?;
    Ok((r as u32, s))
}

fn check_ground(r: u32, s: u32) -> Result<()> {
    if r > 128 {
        return Err(Error::CapExceeded {
            what: "ground set",
            size: r as usize,
            cap: 128,
        });
    }
    if s > r {
        return Err(Error::InvalidArgument(format!("subset size {s} exceeds ground set {r}")));
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct RamseyInstance {
    pub params: RamseyParams,
    /// Ground-set size actually used.
    pub r: u32,
    pub vertices: Vec<u128>,
    pub graph: Graph,
}

impl RamseyInstance {
    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn intersection(&self, a: usize, b: usize) -> u32 {
        (self.vertices[a] & self.vertices[b]).count_ones()
    }
}

/// `|X ∩ Y| ≡ -1 (mod p^k)`, the edge predicate.
pub fn adjacent_sets(pk: u64, x: u128, y: u128) -> bool {
    x != y && ((x & y).count_ones() as u64 + 1).is_multiple_of(pk)
}

pub fn build_ramsey_graph(params: &RamseyParams, r_override: Option<u32>) -> Result<RamseyInstance> {
    let (r, s) = ground(params, r_override)?;
    let n = binom(r as u64, s as u64);
    let cap = VERTEX_CAP.min(ADJACENCY_CAP);
    if n > cap as u128 {
        return Err(Error::CapExceeded {
            what: "Ramsey vertex count",
            size: n.min(usize::MAX as u128) as usize,
            cap,
        });
    }
    let vertices: Vec<u128> = subsets(r, s).collect();
    let pk = params.pk();
    let rows: Vec<Vec<usize>> = vertices
        .par_iter()
        .map(|&x| (0..vertices.len()).filter(|&b| adjacent_sets(pk, x, vertices[b])).collect())
        .collect();
    let mut graph = Graph::empty(vertices.len());
    for (a, nb) in rows.iter().enumerate() {
        for &b in nb {
            graph.add_edge(a, b);
        }
    }
    Ok(RamseyInstance {
        params: params.clone(),
        r,
        vertices,
        graph,
    })
}

/// Row of the inclusion matrix for `a` against the listed `d`-subsets.
pub fn inclusion_row(a: u128, columns: &[u128]) -> Vec<FieldElement> {
    columns
        .iter()
        .map(|&b| if b & a == b { FieldElement::ONE } else { FieldElement::ZERO })
        .collect()
}

pub fn inclusion_matrix(r: u32, s: u32, d: u32, f: &FieldSpec) -> Result<FFMatrix> {
    check_ground(r, s)?;
    if d > s {
        return Err(Error::InvalidArgument(format!("d = {d} exceeds s = {s}")));
    }
    let rows = binom(r as u64, s as u64);
    let cols = binom(r as u64, d as u64);
    let size = rows.saturating_mul(cols);
    if size > INCLUSION_ENTRY_CAP as u128 {
        return Err(Error::CapExceeded {
            what: "inclusion matrix entries",
            size: size.min(usize::MAX as u128) as usize,
            cap: INCLUSION_ENTRY_CAP,
        });
    }
    let columns: Vec<u128> = subsets(r, d).collect();
    let entries: Vec<FieldElement> = subsets(r, s).flat_map(|a| inclusion_row(a, &columns)).collect();
    FFMatrix::new(f.clone(), rows as usize, cols as usize, entries)
}

/// Rank of the inclusion matrix computed row by row, never materialising it.
pub fn inclusion_rank_streaming(r: u32, s: u32, d: u32, f: &FieldSpec) -> Result<usize> {
    check_ground(r, s)?;
    if d > s {
        return Err(Error::InvalidArgument(format!("d = {d} exceeds s = {s}")));
    }
    let columns: Vec<u128> = subsets(r, d).collect();
    Ok(streaming_rank(f, columns.len(), subsets(r, s).map(|a| inclusion_row(a, &columns))))
}

/// Entries `C(x, top) mod p` for every intersection size `x <= s`.
fn gram_table(s: u32, top: u64, p: u32) -> Vec<u32> {
    (0..=s as u64)
        .map(|x| binomial_mod_p(x, top, p as u64).expect("p is prime") as u32)
        .collect()
}

fn gram_matrix(vertices: &[u128], table: &[u32], f: &FieldSpec) -> FFMatrix {
    let n = vertices.len();
    let entries: Vec<FieldElement> = vertices
        .par_iter()
        .flat_map_iter(|&x| vertices.iter().map(move |&y| FieldElement(table[(x & y).count_ones() as usize])))
        .collect();
    FFMatrix::new(f.clone(), n, n, entries).expect("entries reduced mod p")
}

/// `P` over GF(p) and `Q` over GF(q), entry `C(|A ∩ B|, p^k - 1)` and
/// `C(|A ∩ B|, q^l - 1)` respectively.
pub fn build_pq(inst: &RamseyInstance) -> Result<(FFMatrix, FFMatrix)> {
    let prm = &inst.params;
    let fp = FieldSpec::prime(prm.p as u64)?;
    let fq = FieldSpec::prime(prm.q as u64)?;
    let tp = gram_table(inst.vertices.first().map_or(0, |v| v.count_ones()), prm.pk() - 1, prm.p);
    let tq = gram_table(inst.vertices.first().map_or(0, |v| v.count_ones()), prm.ql() - 1, prm.q);
    Ok((gram_matrix(&inst.vertices, &tp, &fp), gram_matrix(&inst.vertices, &tq, &fq)))
}

/// `M_d M_d^T` by explicit multiplication.
pub fn literal_gram(r: u32, s: u32, d: u32, f: &FieldSpec) -> Result<FFMatrix> {
    let m = inclusion_matrix(r, s, d, f)?;
    m.mul(&m.transpose())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstructionReport {
    pub n: usize,
    pub violations_p: usize,
    pub violations_q: usize,
    #[serde(rename = "rank_p_P")]
    pub rank_p_p: usize,
    #[serde(rename = "rank_q_Q")]
    pub rank_q_q: usize,
    /// `ceil(n / rank_q(Q))`, a lower bound on `minrk_q(G)`.
    pub minrk_lower_q: usize,
    pub col_bound_p: u128,
    pub col_bound_q: u128,
    pub passed: bool,
}

/// Checks `P` against `g` and `Q` against its complement and collects ranks.
pub fn verify_matrices(params: &RamseyParams, r: u32, g: &Graph, p: &FFMatrix, q: &FFMatrix) -> Result<ConstructionReport> {
    let violations_p = represents_check(p, g)?.len();
    let violations_q = represents_check(q, &g.complement())?.len();
    let rank_p_p = p.rank();
    let rank_q_q = q.rank();
    let n = g.n();
    let col_bound_p = binom(r as u64, params.pk() - 1);
    let col_bound_q = binom(r as u64, params.ql() - 1);
    let passed = violations_p == 0
        && violations_q == 0
        && rank_p_p as u128 <= col_bound_p
        && rank_q_q as u128 <= col_bound_q;
    Ok(ConstructionReport {
        n,
        violations_p,
        violations_q,
        rank_p_p,
        rank_q_q,
        minrk_lower_q: if rank_q_q == 0 { 0 } else { n.div_ceil(rank_q_q) },
        col_bound_p,
        col_bound_q,
        passed,
    })
}

pub fn verify_construction(inst: &RamseyInstance) -> Result<ConstructionReport> {
    let (p, q) = build_pq(inst)?;
    let report = verify_matrices(&inst.params, inst.r, &inst.graph, &p, &q)?;
    if !report.passed {
        return Err(Error::Construction(format!(
            "{} violation(s) for P, {} for Q",
            report.violations_p, report.violations_q
        )));
    }
    Ok(report)
}

#[derive(Clone, Debug)]
pub struct UnionWitness {
    /// `G` on vertices `0..n`, its complement on `n..2n`.
    pub h: Graph,
    /// Vertices of `H ⊠ H` as coordinate pairs.
    pub witness: Vec<(usize, usize)>,
}

/// `H = G + complement(G)` and the `2n` pairs `(v_i, v'_i)`, `(v'_i, v_i)`.
pub fn build_union_h(g: &Graph) -> Result<UnionWitness> {
    let n = g.n();
    let h = Graph::disjoint_union(&[g.clone(), g.complement()])?;
    let witness = (0..n).map(|i| (i, n + i)).chain((0..n).map(|i| (n + i, i))).collect();
    Ok(UnionWitness { h, witness })
}

/// Whether the listed pairs are pairwise non-adjacent in `h ⊠ h`.
pub fn verify_product_independent(h: &Graph, set: &[(usize, usize)]) -> bool {
    let close = |a: usize, b: usize| a == b || h.adjacent(a, b);
    set.iter().enumerate().all(|(i, &(a, b))| {
        set[i + 1..]
            .iter()
            .all(|&(c, d)| (a, b) != (c, d) && !(close(a, c) && close(b, d)))
    })
}

/// `exp(sqrt(2 ln n ln ln n))`.
pub fn asymptotic_bound(n: f64) -> Result<f64> {
    if n.is_nan() || n < 3.0 {
        return Err(Error::InvalidArgument(format!("asymptotic bound needs n >= 3, got {n}")));
    }
    let ln = n.ln();
    Ok((2.0 * ln * ln.ln()).sqrt().exp())
}
