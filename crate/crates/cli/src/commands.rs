use indexlab_core::extensions::{build_gind_gcl, p4_minrank};
use indexlab_core::graph::invariants::{clique_cover_number, independence_number, mais};
use indexlab_core::indexcode::{exact_ell_with, exact_linear_ell, run_protocol, BitString, IndexCode};
use indexlab_core::minrank::{exact_minrank, minrank_bounds, represents_check, MinrankOutcome};
use indexlab_core::ramsey::{build_pq, build_ramsey_graph, find_params, verify_matrices, RamseyParams};
use indexlab_core::{parse_field_spec, FieldSpec, Graph, LinearIndexCode};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::io::{read_graph, read_matrix, read_p4, write_json};
use crate::report::{CliError, Outcome, Status};
use crate::{
    CodeArgs, EllArgs, EllMethod, Family, GraphCmd, GraphOp, MinrankArgs, MinrankMethod, P4Cmd, RamseyArgs, VerifyArgs,
};

/// `"0.51"` or `"51/100"` as a reduced-free numerator/denominator pair.
pub fn parse_ratio(text: &str) -> Result<(u64, u64), CliError> {
    let bad = || CliError::Usage(format!("`{text}` is not a positive rational"));
    let (num, den) = if let Some((a, b)) = text.split_once('/') {
        (a.trim().parse::<u64>().map_err(|_| bad())?, b.trim().parse::<u64>().map_err(|_| bad())?)
    } else if let Some((int, frac)) = text.split_once('.') {
        if frac.is_empty() || frac.len() > 18 || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let den = 10u64.pow(frac.len() as u32);
        let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
        let frac: u64 = frac.parse().map_err(|_| bad())?;
        (int.checked_mul(den).and_then(|v| v.checked_add(frac)).ok_or_else(bad)?, den)
    } else {
        (text.parse().map_err(|_| bad())?, 1)
    };
    if num == 0 || den == 0 {
        return Err(bad());
    }
    Ok((num, den))
}

fn field(text: &str) -> Result<FieldSpec, CliError> {
    Ok(parse_field_spec(text)?)
}

fn minrank_json(o: &MinrankOutcome) -> Value {
    json!({
        "value": o.value,
        "optimal": o.optimal,
        "lower": o.lower,
        "witness": o.witness.to_json(),
    })
}

pub fn construct_ramsey(a: &RamseyArgs) -> Result<Outcome, CliError> {
    let params = match (a.k, a.l, &a.epsilon) {
        (Some(k), Some(l), _) => RamseyParams::new(a.p, a.q, k, l)?,
        (None, None, Some(eps)) => {
            let (num, den) = parse_ratio(eps)?;
            find_params(a.p, a.q, num, den, a.k_max)?
        }
        _ => return Err(CliError::Usage("give either --k and --l, or --epsilon".into())),
    };
    let inst = build_ramsey_graph(&params, a.r)?;
    let (p, q) = build_pq(&inst)?;
    let rep = verify_matrices(&inst.params, inst.r, &inst.graph, &p, &q)?;
    if let Some(path) = &a.output {
        write_json(path, &inst.graph.to_json())?;
    }
    if let Some(dir) = &a.emit_matrices {
        std::fs::create_dir_all(dir)?;
        write_json(&dir.join("P.json"), &p.to_json())?;
        write_json(&dir.join("Q.json"), &q.to_json())?;
    }
    let status = if rep.passed { Status::Ok } else { Status::VerificationFailed };
    let mut results = serde_json::to_value(&rep)?;
    results["params"] = serde_json::to_value(&params)?;
    results["r"] = json!(inst.r);
    Ok(Outcome::new(results).status(status))
}

pub fn minrank(a: &MinrankArgs) -> Result<Outcome, CliError> {
    let mut inputs = Vec::new();
    let g = read_graph(&a.graph, &mut inputs)?;
    let f = field(&a.field)?;
    match a.method {
        MinrankMethod::Bounds => {
            let b = minrank_bounds(&g)?;
            Ok(Outcome::new(json!({ "lower": b.lower, "upper": b.upper })).inputs(inputs))
        }
        MinrankMethod::Exact => {
            let o = exact_minrank(&g, &f, a.budget)?;
            let status = if o.optimal { Status::Ok } else { Status::BudgetExhausted };
            Ok(Outcome::new(minrank_json(&o))
                .status(status)
                .inputs(inputs)
                .counter("nodes", o.nodes)
                .counter("budget", a.budget))
        }
    }
}

pub fn ell(a: &EllArgs) -> Result<Outcome, CliError> {
    let mut inputs = Vec::new();
    let g = read_graph(&a.graph, &mut inputs)?;
    let out = match a.method {
        EllMethod::Confusion => {
            let r = exact_ell_with(&g, a.max_n, a.budget)?;
            Outcome::new(json!({ "ell": r.ell, "confusion_chromatic_number": r.colors })).counter("nodes", r.nodes)
        }
        EllMethod::Linear => {
            let l = exact_linear_ell(&g, a.max_ell)?;
            Outcome::new(json!({ "ell": l, "field": "2" }))
        }
        EllMethod::Bounds => {
            let alpha = independence_number(&g)?;
            let acyclic = mais(&g)?;
            let cover = clique_cover_number(&g)?;
            Outcome::new(json!({
                "lower": alpha.max(acyclic),
                "upper": cover,
                "alpha": alpha,
                "mais": acyclic,
                "clique_cover": cover,
            }))
        }
    };
    Ok(out.inputs(inputs))
}

fn check_json(m: &indexlab_core::FFMatrix, g: &Graph) -> Result<(bool, Value), CliError> {
    let v = represents_check(m, g)?;
    let first: Vec<Value> = v.iter().take(10).map(|x| json!(x)).collect();
    Ok((
        v.is_empty(),
        json!({
            "field": m.field().to_string(),
            "violations": v.len(),
            "first_violations": first,
            "rank": m.rank(),
        }),
    ))
}

pub fn verify(a: &VerifyArgs) -> Result<Outcome, CliError> {
    let mut inputs = Vec::new();
    let g = read_graph(&a.graph, &mut inputs)?;
    let m = read_matrix(&a.matrix, &mut inputs)?;
    let (ok_p, jp) = check_json(&m, &g)?;
    let mut results = json!({ "n": g.n(), "matrix": jp });
    let mut passed = ok_p;
    if let Some(path) = &a.complement_matrix {
        let q = read_matrix(path, &mut inputs)?;
        let (ok_q, jq) = check_json(&q, &g.complement())?;
        passed &= ok_q;
        let rank_q = jq["rank"].as_u64().unwrap_or(0) as usize;
        results["complement_matrix"] = jq;
        if rank_q > 0 {
            results["minrk_lower"] = json!(g.n().div_ceil(rank_q));
        }
    }
    results["passed"] = json!(passed);
    let status = if passed { Status::Ok } else { Status::VerificationFailed };
    Ok(Outcome::new(results).status(status).inputs(inputs))
}

pub fn code(a: &CodeArgs) -> Result<Outcome, CliError> {
    let mut inputs = Vec::new();
    let g = read_graph(&a.graph, &mut inputs)?;
    let m = read_matrix(&a.matrix, &mut inputs)?;
    if let Some(f) = &a.field {
        let want = field(f)?;
        if &want != m.field() {
            return Err(CliError::Usage(format!("matrix is over GF({}), not GF({want})", m.field())));
        }
    }
    let code = LinearIndexCode::new(&g, &m)?;
    let base = json!({
        "n": g.n(),
        "field": m.field().to_string(),
        "rank": code.rank(),
        "length_bits": code.length_bits(),
    });
    if let Some(bits) = &a.encode {
        let x: BitString = bits.parse()?;
        let run = run_protocol(&code, &g, x.bits(), a.trace)?;
        let mut r = base;
        r["codeword"] = json!(code.encode(x.bits())?.to_string());
        if let Some(t) = run.transcript {
            r["transcript"] = serde_json::to_value(t)?;
        }
        return Ok(Outcome::new(r).inputs(inputs));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let mut hasher = Sha256::new();
    let mut failures = 0u64;
    let mut first_failure = Value::Null;
    let mut transcripts = Vec::new();
    for trial in 0..a.trials {
        let x: Vec<bool> = (0..g.n()).map(|_| rng.gen()).collect();
        match run_protocol(&code, &g, &x, a.trace) {
            Ok(run) => {
                hasher.update(code.encode(&x)?.to_string().as_bytes());
                hasher.update(b"\n");
                if let Some(t) = run.transcript {
                    transcripts.push(serde_json::to_value(t)?);
                }
            }
            Err(e) => {
                failures += 1;
                if first_failure.is_null() {
                    first_failure = json!({ "trial": trial, "error": e.to_string() });
                }
            }
        }
    }
    let mut r = base;
    r["trials"] = json!(a.trials);
    r["seed"] = json!(a.seed);
    r["failures"] = json!(failures);
    r["codewords_sha256"] = json!(hex::encode(hasher.finalize()));
    if !first_failure.is_null() {
        r["first_failure"] = first_failure;
    }
    if a.trace {
        r["transcripts"] = Value::Array(transcripts);
    }
    let status = if failures == 0 { Status::Ok } else { Status::VerificationFailed };
    Ok(Outcome::new(r).status(status).inputs(inputs).counter("trials", a.trials))
}

pub fn graph(cmd: &GraphCmd) -> Result<Outcome, CliError> {
    match cmd {
        GraphCmd::Op(a) => {
            let mut inputs = Vec::new();
            let gs = a
                .inputs
                .iter()
                .map(|p| read_graph(p, &mut inputs))
                .collect::<Result<Vec<_>, _>>()?;
            let one = |what: &str| -> Result<&Graph, CliError> {
                match gs.as_slice() {
                    [g] => Ok(g),
                    _ => Err(CliError::Usage(format!("{what} takes exactly one input"))),
                }
            };
            let g = match a.op {
                GraphOp::Complement => one("complement")?.complement(),
                GraphOp::Blowup => {
                    let t = a.t.ok_or_else(|| CliError::Usage("blowup needs --t".into()))?;
                    one("blowup")?.blow_up(t)?
                }
                GraphOp::Union => Graph::disjoint_union(&gs)?,
                GraphOp::Compose => Graph::compose(&gs)?,
                GraphOp::Product => {
                    let (first, rest) = gs.split_first().ok_or_else(|| CliError::Usage("no inputs".into()))?;
                    rest.iter().fold(first.clone(), |acc, h| acc.strong_product(h))
                }
            };
            finish_graph(g, a.output.as_deref(), inputs)
        }
        GraphCmd::Gen(a) => {
            let g = match a.family {
                Family::Complete => Graph::complete(a.n),
                Family::Empty => Graph::empty(a.n),
                Family::Cycle => Graph::cycle(a.n),
                Family::Path => Graph::path(a.n),
                Family::Tournament => Graph::transitive_tournament(a.n),
            };
            finish_graph(g, a.output.as_deref(), Vec::new())
        }
        GraphCmd::Info(a) => {
            let mut inputs = Vec::new();
            let g = read_graph(&a.input, &mut inputs)?;
            let mut r = json!({
                "n": g.n(),
                "edges": g.edge_count(),
                "undirected": g.is_undirected(),
            });
            if let Ok(v) = independence_number(&g) {
                r["alpha"] = json!(v);
            }
            if let Ok(v) = mais(&g) {
                r["mais"] = json!(v);
            }
            if let Ok(v) = clique_cover_number(&g) {
                r["clique_cover"] = json!(v);
            }
            let out = Outcome::new(r).inputs(inputs);
            if let Some(p) = &a.output {
                write_json(p, &out.results)?;
            }
            Ok(out)
        }
    }
}

fn finish_graph(
    g: Graph,
    output: Option<&std::path::Path>,
    inputs: Vec<crate::report::InputDigest>,
) -> Result<Outcome, CliError> {
    let j = g.to_json();
    let mut r = json!({ "n": g.n(), "edges": g.edge_count() });
    match output {
        Some(p) => write_json(p, &j)?,
        None => r["graph"] = serde_json::to_value(&j)?,
    }
    Ok(Outcome::new(r).inputs(inputs))
}

pub fn p4(cmd: &P4Cmd) -> Result<Outcome, CliError> {
    let (a, bounds) = match cmd {
        P4Cmd::Minrank(a) => (a, false),
        P4Cmd::Bounds(a) => (a, true),
    };
    let mut inputs = Vec::new();
    let inst = read_p4(&a.input, &mut inputs)?;
    let f = field(&a.field)?;
    let out = if bounds {
        let (g_ind, g_cl) = build_gind_gcl(&inst);
        let lo = exact_minrank(&g_cl, &f, a.budget)?;
        let hi = exact_minrank(&g_ind, &f, a.budget)?;
        let status = if lo.optimal && hi.optimal { Status::Ok } else { Status::BudgetExhausted };
        Outcome::new(json!({
            "g_cl_minrank": minrank_json(&lo),
            "g_ind_minrank": minrank_json(&hi),
            "g_cl": g_cl.to_json(),
            "g_ind": g_ind.to_json(),
        }))
        .status(status)
        .counter("nodes", lo.nodes + hi.nodes)
    } else {
        let o = p4_minrank(&inst, &f, a.budget)?;
        let status = if o.optimal { Status::Ok } else { Status::BudgetExhausted };
        Outcome::new(minrank_json(&o)).status(status).counter("nodes", o.nodes)
    };
    let out = out.inputs(inputs).counter("budget", a.budget);
    if let Some(p) = &a.output {
        write_json(p, &out.results)?;
    }
    Ok(out)
}
