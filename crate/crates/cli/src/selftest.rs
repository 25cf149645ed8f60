use std::time::Instant;

use indexlab_core::extensions::{build_gind_gcl, p4_exact_ell, p4_minrank, p4_represents_check};
use indexlab_core::graph::catalog::{directed_classes, undirected_up_to};
use indexlab_core::graph::invariants::{clique_cover_number, independence_number, mais};
use indexlab_core::indexcode::{
    all_words, confusable_differences, exact_ell, exact_linear_ell, linear_encoder_separates, verify_code_on,
};
use indexlab_core::minrank::{exact_minrank, reduce_representation, represents_check};
use indexlab_core::ramsey::{build_pq, build_ramsey_graph, verify_matrices, RamseyParams};
use indexlab_core::{
    BitString, FFMatrix, FieldElement, FieldSpec, Graph, IndexCode, LinearIndexCode, P4Instance, Representation,
    Result, TournamentComposeCode,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::report::{CliError, Outcome, Status};
use crate::{Fault, SelftestArgs};

const CRITERIA: [u32; 9] = [1, 3, 4, 5, 6, 7, 8, 9, 11];
const UNBOUNDED: u64 = u64::MAX;

struct Check {
    passed: bool,
    detail: Value,
}

fn field(text: &str) -> FieldSpec {
    indexlab_core::parse_field_spec(text).expect("built-in field spec")
}

fn minrk(g: &Graph, f: &FieldSpec) -> Result<indexlab_core::MinrankOutcome> {
    exact_minrank(g, f, UNBOUNDED)
}

/// Wraps a code so that the first bit of every codeword is flipped.
struct FlipFirstBit<'a>(&'a dyn IndexCode);

impl IndexCode for FlipFirstBit<'_> {
    fn n(&self) -> usize {
        self.0.n()
    }

    fn length_bits(&self) -> usize {
        self.0.length_bits()
    }

    fn side_info(&self, i: usize) -> Vec<usize> {
        self.0.side_info(i)
    }

    fn encode(&self, x: &[bool]) -> Result<BitString> {
        let mut c = self.0.encode(x)?;
        if let Some(b) = c.0.first_mut() {
            *b = !*b;
        }
        Ok(c)
    }

    fn decode(&self, i: usize, codeword: &BitString, side: &[bool]) -> Result<bool> {
        self.0.decode(i, codeword, side)
    }
}

fn check_code(code: &dyn IndexCode, words: impl IntoIterator<Item = Vec<bool>>, fault: Option<Fault>) -> bool {
    if fault == Some(Fault::CodewordBit) {
        verify_code_on(&FlipFirstBit(code), words).is_ok()
    } else {
        verify_code_on(code, words).is_ok()
    }
}

/// The small Ramsey instance shared by criteria 1 and 6.
fn small_ramsey() -> Result<(Graph, FFMatrix, FFMatrix, RamseyParams, u32)> {
    let params = RamseyParams::new(3, 2, 1, 1)?;
    let inst = build_ramsey_graph(&params, Some(10))?;
    let (p, q) = build_pq(&inst)?;
    Ok((inst.graph, p, q, params, inst.r))
}

fn criterion_1(fault: Option<Fault>) -> Result<Check> {
    let start = Instant::now();
    let (g, mut p, q, params, r) = small_ramsey()?;
    if fault == Some(Fault::FlipEntry) {
        let (i, j) = (0..g.n())
            .flat_map(|i| (0..g.n()).map(move |j| (i, j)))
            .find(|&(i, j)| i != j && !g.has_edge(i, j))
            .expect("the graph has a non-edge");
        p.set(i, j, FieldElement(1));
    }
    let rep = verify_matrices(&params, r, &g, &p, &q)?;
    let secs = start.elapsed().as_secs_f64();
    let passed = rep.passed
        && rep.n == 252
        && rep.violations_p == 0
        && rep.violations_q == 0
        && rep.rank_p_p <= 45
        && rep.rank_q_q <= 10
        && rep.minrk_lower_q >= 26
        && secs < 10.0;
    Ok(Check {
        passed,
        detail: json!({ "construction": rep }),
    })
}

fn criterion_3() -> Result<Check> {
    let f = field("2");
    let graphs = undirected_up_to(6);
    let bad: Vec<usize> = graphs
        .par_iter()
        .enumerate()
        .map(|(idx, g)| -> Result<Option<usize>> {
            let o = minrk(g, &f)?;
            let alpha = independence_number(g)?;
            let cover = clique_cover_number(g)?;
            let ok = o.optimal
                && alpha <= o.value
                && o.value <= cover
                && o.witness.rank() == o.value
                && represents_check(&o.witness, g)?.is_empty();
            Ok((!ok).then_some(idx))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let on_six = graphs.iter().filter(|g| g.n() == 6).count();
    Ok(Check {
        passed: bad.is_empty() && on_six == 156,
        detail: json!({ "graphs": graphs.len(), "classes_on_6": on_six, "violations": bad.len() }),
    })
}

fn criterion_4() -> Result<Check> {
    let f = field("2");
    let graphs = undirected_up_to(6);
    let witnesses: Vec<FFMatrix> = graphs
        .par_iter()
        .map(|g| minrk(g, &f).map(|o| o.witness))
        .collect::<Result<_>>()?;
    let products: Vec<bool> = graphs
        .par_iter()
        .zip(&witnesses)
        .map(|(g, w)| minrk(&g.complement(), &f).map(|c| w.rank() * c.value >= g.n()))
        .collect::<Result<_>>()?;
    let product_violations = products.iter().filter(|ok| !**ok).count();

    let small: Vec<usize> = (0..graphs.len()).filter(|&i| graphs[i].n() <= 4).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut kron_violations = 0;
    for _ in 0..200 {
        let a = small[rng.gen_range(0..small.len())];
        let b = small[rng.gen_range(0..small.len())];
        let k = witnesses[a].kron(&witnesses[b])?;
        if !represents_check(&k, &graphs[a].strong_product(&graphs[b]))?.is_empty() {
            kron_violations += 1;
        }
    }
    Ok(Check {
        passed: product_violations == 0 && kron_violations == 0,
        detail: json!({
            "graphs": graphs.len(),
            "product_violations": product_violations,
            "kron_trials": 200,
            "kron_violations": kron_violations,
        }),
    })
}

fn directed_up_to(n: usize) -> Vec<Graph> {
    (1..=n).flat_map(directed_classes).collect()
}

fn criterion_5() -> Result<Check> {
    let (f2, f4) = (field("2"), field("2^2"));
    let graphs = directed_up_to(5);
    let bad = graphs
        .par_iter()
        .map(|g| -> Result<bool> {
            let two = minrk(g, &f2)?.value;
            let four = minrk(g, &f4)?;
            let red = reduce_representation(&Representation::new(g.clone(), four.witness.clone())?)?;
            Ok(two.div_ceil(2) <= four.value
                && four.value <= two
                && red.field() == &f2
                && represents_check(red.matrix(), g)?.is_empty()
                && red.rank() <= 2 * four.value)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|ok| !ok)
        .count();
    Ok(Check {
        passed: bad == 0,
        detail: json!({ "graphs": graphs.len(), "violations": bad }),
    })
}

fn criterion_6(fault: Option<Fault>) -> Result<Check> {
    let f = field("2");
    let graphs = directed_up_to(5);
    let small_failures = graphs
        .par_iter()
        .map(|g| -> Result<bool> {
            let code = LinearIndexCode::new(g, &minrk(g, &f)?.witness)?;
            Ok(check_code(&code, all_words(g.n()), fault))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|ok| !ok)
        .count();

    let (g, p, _, _, _) = small_ramsey()?;
    let code = LinearIndexCode::new(&g, &p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let words: Vec<Vec<bool>> = (0..1000).map(|_| (0..g.n()).map(|_| rng.gen()).collect()).collect();
    let ramsey_failures = words
        .par_chunks(50)
        .filter(|chunk| !check_code(&code, chunk.iter().cloned(), fault))
        .count();
    Ok(Check {
        passed: small_failures == 0 && ramsey_failures == 0,
        detail: json!({
            "graphs": graphs.len(),
            "graph_failures": small_failures,
            "ramsey_inputs": words.len(),
            "ramsey_failed_batches": ramsey_failures,
            "ramsey_length_bits": code.length_bits(),
        }),
    })
}

fn criterion_7() -> Result<Check> {
    let f = field("2");
    let complete = (1..=6).map(|n| exact_ell(&Graph::complete(n)).map(|r| r.ell)).collect::<Result<Vec<_>>>()?;
    let empty = (1..=6).map(|n| exact_ell(&Graph::empty(n)).map(|r| r.ell)).collect::<Result<Vec<_>>>()?;
    let c5 = Graph::cycle(5);
    let c5_ell = exact_ell(&c5)?.ell;
    let c5_minrank = minrk(&c5, &f)?.value;
    let graphs = directed_up_to(4);
    let linear_mismatch = graphs
        .par_iter()
        .map(|g| -> Result<bool> { Ok(exact_linear_ell(g, 4)? == minrk(g, &f)?.value) })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|ok| !ok)
        .count();
    let passed = complete.iter().all(|&l| l == 1)
        && empty.iter().enumerate().all(|(i, &l)| l == i + 1)
        && c5_ell == 3
        && c5_minrank == 3
        && linear_mismatch == 0;
    Ok(Check {
        passed,
        detail: json!({
            "complete": complete,
            "empty": empty,
            "c5_ell": c5_ell,
            "c5_minrank": c5_minrank,
            "linear_graphs": graphs.len(),
            "linear_mismatches": linear_mismatch,
        }),
    })
}

fn criterion_8(fault: Option<Fault>) -> Result<Check> {
    let rows = (1..=8usize)
        .into_par_iter()
        .map(|n| -> Result<Value> {
            let code = TournamentComposeCode::new(n)?;
            let t = Graph::transitive_tournament(n);
            let composed = Graph::compose(&[t.clone(), t.reverse()])?;
            let decodes = check_code(&code, all_words(2 * n), fault);
            let acyclic = mais(&composed)?;
            let ok = decodes && code.graph() == &composed && code.length_bits() == n + 1 && acyclic == n + 1;
            Ok(json!({ "n": n, "decodes": decodes, "mais": acyclic, "length_bits": code.length_bits(), "ok": ok }))
        })
        .collect::<Result<Vec<_>>>()?;

    // x1^y1, x2^y2, x1^y2 over (x1, y1, x2, y2)
    let two = TournamentComposeCode::new(2)?;
    let bad = confusable_differences(two.graph());
    let example_ok = two.length_bits() == 3 && linear_encoder_separates(&bad, &[0b101, 0b001, 0b010, 0b110]);
    let passed = example_ok && rows.iter().all(|r| r["ok"] == json!(true));
    Ok(Check {
        passed,
        detail: json!({ "sizes": rows, "three_bit_example": example_ok }),
    })
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(0.5) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

fn criterion_9() -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let pairs: Vec<(Graph, Graph)> = (0..50)
        .map(|_| {
            let (a, b) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
            (random_graph(&mut rng, a), random_graph(&mut rng, b))
        })
        .collect();
    let mut bad = 0;
    for spec in ["2", "3"] {
        let f = field(spec);
        bad += pairs
            .par_iter()
            .map(|(a, b)| -> Result<bool> {
                let u = minrk(&Graph::disjoint_union(&[a.clone(), b.clone()])?, &f)?.value;
                Ok(u == minrk(a, &f)?.value + minrk(b, &f)?.value)
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|ok| !ok)
            .count();
    }
    Ok(Check {
        passed: bad == 0,
        detail: json!({ "pairs": pairs.len(), "fields": ["2", "3"], "violations": bad }),
    })
}

/// Every instance with `m` receivers over `n` bits.
fn p4_instances(m: usize, n: usize) -> Result<Vec<P4Instance>> {
    let mut out = Vec::new();
    for wcode in 0..n.pow(m as u32) {
        let wants: Vec<usize> = (0..m).map(|i| wcode / n.pow(i as u32) % n).collect();
        let free: Vec<(usize, usize)> = (0..m)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| j != wants[i])
            .collect();
        for kcode in 0u32..1 << free.len() {
            let mut knows = vec![vec![false; n]; m];
            for (b, &(i, j)) in free.iter().enumerate() {
                knows[i][j] = kcode >> b & 1 == 1;
            }
            out.push(P4Instance::new(n, wants.clone(), knows)?);
        }
    }
    Ok(out)
}

fn criterion_11() -> Result<Check> {
    let f = field("2");
    let mut minrank_instances = Vec::new();
    for m in 1..=4 {
        for n in 1..=3 {
            minrank_instances.extend(p4_instances(m, n)?);
        }
    }
    let minrank_bad = minrank_instances
        .par_iter()
        .map(|inst| -> Result<bool> {
            let (ind, cl) = build_gind_gcl(inst);
            let o = p4_minrank(inst, &f, UNBOUNDED)?;
            Ok(o.optimal
                && p4_represents_check(&o.witness, inst)?.is_empty()
                && minrk(&cl, &f)?.value <= o.value
                && o.value <= minrk(&ind, &f)?.value)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|ok| !ok)
        .count();

    let mut oracle_instances = Vec::new();
    for m in 1..=3 {
        for n in 1..=2 {
            oracle_instances.extend(p4_instances(m, n)?);
        }
    }
    let oracle_bad = oracle_instances
        .par_iter()
        .map(|inst| -> Result<bool> {
            let (ind, cl) = build_gind_gcl(inst);
            let ell = p4_exact_ell(inst, UNBOUNDED)?;
            Ok(exact_ell(&cl)?.ell <= ell && ell <= exact_ell(&ind)?.ell)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|ok| !ok)
        .count();
    Ok(Check {
        passed: minrank_bad == 0 && oracle_bad == 0,
        detail: json!({
            "minrank_instances": minrank_instances.len(),
            "minrank_violations": minrank_bad,
            "oracle_instances": oracle_instances.len(),
            "oracle_violations": oracle_bad,
        }),
    })
}

fn name(id: u32) -> &'static str {
    match id {
        1 => "construction certificate",
        3 => "alpha <= minrank <= clique cover",
        4 => "complement product and Kronecker witnesses",
        5 => "GF(4) versus GF(2) minrank",
        6 => "linear code decoding",
        7 => "optimal length oracle",
        8 => "tournament composition code",
        9 => "disjoint union additivity",
        11 => "shared-request sandwich",
        _ => "unknown",
    }
}

pub fn run(a: &SelftestArgs) -> std::result::Result<Outcome, CliError> {
    if let Some(&bad) = a.only.iter().find(|id| !CRITERIA.contains(id)) {
        return Err(CliError::Usage(format!("criterion {bad} is not part of the suite {CRITERIA:?}")));
    }
    let fault = a.inject_fault;
    let mut entries = Vec::new();
    let mut timings = Vec::new();
    let mut all_passed = true;
    for id in CRITERIA {
        if !a.only.is_empty() && !a.only.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let result = match id {
            1 => criterion_1(fault),
            3 => criterion_3(),
            4 => criterion_4(),
            5 => criterion_5(),
            6 => criterion_6(fault),
            7 => criterion_7(),
            8 => criterion_8(fault),
            9 => criterion_9(),
            _ => criterion_11(),
        };
        let (passed, detail) = match result {
            Ok(c) => (c.passed, c.detail),
            Err(e) => (false, json!({ "error": e.to_string() })),
        };
        all_passed &= passed;
        timings.push((format!("criterion_{id}_seconds"), start.elapsed().as_secs_f64()));
        entries.push(json!({ "id": id, "name": name(id), "passed": passed, "detail": detail }));
    }
    let results = json!({
        "fault": fault.map(|f| format!("{f:?}")),
        "criteria": entries,
        "passed": all_passed,
    });
    let mut out = Outcome::new(results).status(if all_passed { Status::Ok } else { Status::VerificationFailed });
    out.timings.extend(timings);
    Ok(out)
}
