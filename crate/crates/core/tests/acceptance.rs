//! Acceptance criteria 1-10, one PASS/FAIL line each.
//!
//! Runs as a plain binary so the lines reach the terminal under `cargo
//! test`. Exits nonzero when any criterion fails. Notes that are evidence
//! rather than requirements are printed as `note:` lines.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use omnitonal::amoeba::{amoeba_verdict, interpolation_chain, is_amoeba_at, AmoebaOptions, ChainOutcome};
use omnitonal::coloring::{bal_k4_extremal, in_ot_star_family, split_graph_coloring, Coloring};
use omnitonal::formulas::{
    bal_k4, bal_path, bal_star, kst_bound, ot_star, ot_tree_bound, rtz_m, rtz_phi, rtz_q, zarankiewicz_bound,
    zero_sum_pattern,
};
use omnitonal::named::parse_named;
use omnitonal::oracle::{brute_force_bal, brute_force_ex, brute_force_ot, verify_extremal, OracleOptions, VerifyMode};
use omnitonal::spectra::{is_balanceable, is_omnitonal, tonal_report};
use omnitonal::{canonical_form, complete_graph, enumerate_embeddings, named_graph, parse_graph6, EdgeSet, Family, Graph};

/// Relative tolerance on the growth-ratio check.
const GROWTH_TOLERANCE: f64 = 0.01;
/// Absolute tolerance when comparing real-valued formulas to pinned values.
const REAL_TOLERANCE: f64 = 1e-9;

const GRAPHS_LE7: &str = include_str!("data/graphs_le7.g6");
const TREES_LE9: &str = include_str!("data/trees_le9.g6");

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { ok: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { ok: false, detail: detail.into() }
}

fn graphs(text: &str) -> Vec<Graph> {
    text.lines().map(|l| parse_graph6(l).expect("census line parses")).collect()
}

fn code(g: &Graph) -> String {
    canonical_form(g).hex()
}

fn criterion_1() -> Outcome {
    let census = graphs(GRAPHS_LE7);
    let mut violations = 0;
    let mut omni = 0;
    for g in &census {
        let r = tonal_report(g);
        omni += r.omnitonal as usize;
        if (r.omnitonal && !r.bipartite) || (r.omnitonal && !r.balanceable) || !r.implications_hold() {
            violations += 1;
        }
    }
    let trees = graphs(TREES_LE9);
    let bad_trees = trees.iter().filter(|t| !tonal_report(t).omnitonal).count();
    let detail = format!(
        "{} graphs, {omni} omnitonal, {violations} violations; {} trees, {bad_trees} not omnitonal",
        census.len(),
        trees.len()
    );
    if violations == 0 && bad_trees == 0 && census.len() == 1252 && trees.len() == 94 {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn criterion_2() -> Outcome {
    let k = |m| complete_graph(m).unwrap();
    let k4 = is_balanceable(&k(4)).unwrap().holds;
    let others: Vec<usize> = [5, 8, 9].into_iter().filter(|&m| is_balanceable(&k(m)).unwrap().holds).collect();
    let omni: Vec<usize> = (3..=8).filter(|&m| is_omnitonal(&k(m)).unwrap().holds).collect();
    let detail = format!("K4 balanceable = {k4}; balanceable among K5,K8,K9: {others:?}; omnitonal among K3..K8: {omni:?}");
    if k4 && others.is_empty() && omni.is_empty() {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn criterion_3(opts: &OracleOptions) -> Outcome {
    let star = named_graph(Family::Star(4)).unwrap();
    let mut ok = true;
    let mut parts = Vec::new();
    for n in 6..=8 {
        let t = Instant::now();
        let res = brute_force_bal(n, &star, false, opts).unwrap();
        let split = split_graph_coloring(n, 1, false).unwrap();
        let expected = vec![code(&split.red().to_graph())];
        let got: Vec<String> = res.extremal.iter().map(|m| m.code.clone()).collect();
        let sound = res.extremal.iter().all(|m| verify_extremal(&m.coloring, &star, VerifyMode::Bal, n - 1).unwrap());
        let formula = bal_star(n as u64, 4).unwrap().integer();
        let here = res.value == Some(n - 1) && formula == Some(n as i64 - 1) && got == expected && sound;
        ok &= here;
        parts.push(format!("n={n}: value {:?}, {} extremal, {:.1}s", res.value, got.len(), t.elapsed().as_secs_f64()));
    }
    Outcome { ok, detail: parts.join("; ") }
}

fn criterion_4(opts: &OracleOptions) -> Outcome {
    let p4 = named_graph(Family::Path(4)).unwrap();
    let res = brute_force_bal(7, &p4, false, opts).unwrap();
    let construction = split_graph_coloring(7, 0, true).unwrap();
    let expected = vec![code(&construction.red().to_graph())];
    let got: Vec<String> = res.extremal.iter().map(|m| m.code.clone()).collect();
    let formula = bal_path(7, 4).unwrap().integer();
    let detail = format!("value {:?}, formula {formula:?}, extremal {} member(s)", res.value, got.len());
    if res.value == Some(1) && formula == Some(1) && got == expected {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn criterion_5(opts: &OracleOptions) -> Outcome {
    let cherry = named_graph(Family::Star(2)).unwrap();
    let res = brute_force_ot(8, &cherry, opts).unwrap();
    let matching = EdgeSet::from_pairs(8, &[(0, 1), (2, 3), (4, 5), (6, 7)]).unwrap().to_graph();
    let got: Vec<String> = res.extremal.iter().map(|m| m.code.clone()).collect();
    let formula = ot_star(8, 2).unwrap().integer();
    let sound = res.extremal.iter().all(|m| verify_extremal(&m.coloring, &cherry, VerifyMode::Ot, 4).unwrap());
    let detail = format!("value {:?}, formula {formula:?}, extremal {} member(s)", res.value, got.len());
    let family = res.extremal.iter().all(|m| in_ot_star_family(&m.coloring.red(), 2));
    if res.value == Some(4) && formula == Some(4) && got == vec![code(&matching)] && sound && family {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn criterion_6(opts: &OracleOptions) -> Outcome {
    let k4 = complete_graph(4).unwrap();
    let bad: Vec<usize> = (5..=12)
        .filter(|&n| {
            let claimed = bal_k4(n as u64).integer().unwrap() as usize;
            !verify_extremal(&bal_k4_extremal(n).unwrap(), &k4, VerifyMode::Bal, claimed).unwrap()
        })
        .collect();
    let oracle = brute_force_bal(5, &k4, false, opts).unwrap();
    let note = if oracle.value == Some(4) {
        "oracle bal(5,K4) = 4 agrees".to_string()
    } else {
        format!("note: oracle bal(5,K4) = {:?}, formula gives 4 (sub-threshold evidence)", oracle.value)
    };
    let detail = format!("constructions failing for n in {bad:?}; {note}");
    if bad.is_empty() {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn criterion_7() -> Outcome {
    let opts = AmoebaOptions::default();
    let mut wrong = Vec::new();
    for k in 1..=5 {
        let g = named_graph(Family::Path(k)).unwrap();
        if !amoeba_verdict(&g, k + 2, k + 4, &opts).unwrap().connected_on_range {
            wrong.push(format!("P{k}"));
        }
    }
    for k in 3..=6 {
        let g = named_graph(Family::Cycle(k)).unwrap();
        if (k + 1..=k + 3).any(|n| is_amoeba_at(&g, n, &opts).unwrap().connected) {
            wrong.push(format!("C{k}"));
        }
    }
    let paw = parse_named("K13+pendant").unwrap();
    if !amoeba_verdict(&paw, 5, 7, &opts).unwrap().connected_on_range {
        wrong.push("triangle+pendant".into());
    }
    let claw = named_graph(Family::Star(3)).unwrap();
    if amoeba_verdict(&claw, 5, 7, &opts).unwrap().connected_on_range {
        wrong.push("K13".into());
    }
    let detail = format!("unexpected verdicts: {wrong:?}");
    if wrong.is_empty() {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn criterion_8() -> Outcome {
    let p3 = named_graph(Family::Path(3)).unwrap();
    let copies = enumerate_embeddings(&p3, 7).unwrap();
    let opts = AmoebaOptions::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let (mut chains, mut bad) = (0, 0);
    for _ in 0..100 {
        let bits: u128 = rng.gen::<u128>() & EdgeSet::full_mask(7);
        let c = Coloring::new(EdgeSet::from_bits(7, bits).unwrap());
        let blue = copies.iter().find(|m| c.tone(m) == 0);
        let red = copies.iter().find(|m| c.tone(m) == 3);
        let (Some(from), Some(to)) = (blue, red) else { continue };
        chains += 1;
        match interpolation_chain(&c, &p3, from, to, &opts).unwrap() {
            ChainOutcome::Chain(chain) => {
                if !(chain.check(&c, &p3) && chain.covers_intermediate_tones()) {
                    bad += 1;
                }
            }
            ChainOutcome::NotConnected => bad += 1,
        }
    }
    let detail = format!("{chains} of 100 colourings had both endpoints; {bad} bad chains");
    if bad == 0 && chains > 0 {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn criterion_9(opts: &OracleOptions) -> Outcome {
    let p3 = named_graph(Family::Path(3)).unwrap();
    let ot = brute_force_ot(6, &p3, opts).unwrap();
    let ex = brute_force_ex(6, &p3, opts).unwrap();
    let detail = format!("ot(6,P3) = {:?}, ex(6,P3) = {:?}", ot.value, ex.value);
    if ex.value != Some(6) {
        return fail(detail);
    }
    if ot.value == ex.value {
        pass(detail)
    } else {
        pass(format!("{detail}; note: unequal, threshold evidence"))
    }
}

fn criterion_10() -> Outcome {
    let mut misses = Vec::new();
    let mut int = |name: &str, got: Option<i64>, want: i64| {
        if got != Some(want) {
            misses.push(format!("{name}: got {got:?}, want {want}"));
        }
    };
    int("bal_star(10,4)", bal_star(10, 4).unwrap().integer(), 9);
    int("bal_star(3,2)", bal_star(3, 2).unwrap().integer(), 0);
    int("bal_path(7,4)", bal_path(7, 4).unwrap().integer(), 1);
    int("bal_path(13,6)", bal_path(13, 6).unwrap().integer(), 12);
    int("bal_path(3,2)", bal_path(3, 2).unwrap().integer(), 0);
    int("bal_k4(8)", bal_k4(8).integer(), 8);
    int("bal_k4(7)", bal_k4(7).integer(), 6);
    int("bal_k4(12)", bal_k4(12).integer(), 12);
    int("ot_star(8,2)", ot_star(8, 2).unwrap().integer(), 4);
    int("ot_star(16,4)", ot_star(16, 4).unwrap().integer(), 29);
    int("ot_star(4,1)", ot_star(4, 1).unwrap().integer(), 0);
    int("ot_tree_bound(12,3)", ot_tree_bound(12, 3).unwrap().integer(), 24);
    int("ot_tree_bound(20,5)", ot_tree_bound(20, 5).unwrap().integer(), 80);
    int("rtz_q(1)", rtz_q(1).ok().map(|q| q as i64), 1);
    int("rtz_q(2)", rtz_q(2).ok().map(|q| q as i64), 4);
    let zs = |p, q, e| zero_sum_pattern(p, q, e).ok();
    if zs(1, 1, 6) != Some((3, 3)) || zs(1, 2, 6) != Some((2, 4)) {
        misses.push("zero_sum_pattern".into());
    }
    for n in [4u64, 10, 100, 1000] {
        for t in 1..=3 {
            let z = zarankiewicz_bound(n, t).unwrap().value.as_f64();
            let k = kst_bound(n, t).unwrap().value.as_f64();
            if (z - 2.0 * k).abs() > REAL_TOLERANCE * z.max(1.0) {
                misses.push(format!("z({n},{t}) != 2 kst({n},{t})"));
            }
        }
    }
    for n in [3u64, 10, 1000] {
        let phi = rtz_phi(n, 1).unwrap().value.as_f64();
        if (phi - (2 * n - 3) as f64).abs() > REAL_TOLERANCE {
            misses.push(format!("rtz_phi({n},1) = {phi}"));
        }
    }
    for t in 1..=2 {
        let m = rtz_m(t).unwrap().0 as f64;
        let cap = 2f64.powf(2.0 - 1.0 / m) * (1.0 + GROWTH_TOLERANCE);
        for e in 10..16 {
            let n = 1u64 << e;
            let ratio = rtz_phi(2 * n, t).unwrap().value.as_f64() / rtz_phi(n, t).unwrap().value.as_f64();
            if ratio > cap {
                misses.push(format!("phi growth t={t} n={n}: {ratio:.4} > {cap:.4}"));
            }
        }
    }
    let detail = format!("{} mismatches {misses:?}", misses.len());
    if misses.is_empty() {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn run(k: usize, limit: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = f();
    let took = start.elapsed();
    let in_time = took <= limit;
    let ok = out.ok && in_time;
    let timing = if in_time { String::new() } else { format!(" [over time limit {}s]", limit.as_secs()) };
    println!(
        "criterion {k:>2}: {} ({:.2}s) {}{timing}",
        if ok { "PASS" } else { "FAIL" },
        took.as_secs_f64(),
        out.detail
    );
    ok
}

fn main() -> ExitCode {
    // `cargo test -- --list` and similar probes pass arguments; only run
    // the suite when invoked plainly or with filters we ignore.
    if std::env::args().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let opts = OracleOptions::default();
    let secs = Duration::from_secs;
    let results = [
        run(1, secs(60), criterion_1),
        run(2, secs(1), criterion_2),
        run(3, secs(600), || criterion_3(&opts)),
        run(4, secs(60), || criterion_4(&opts)),
        run(5, secs(900), || criterion_5(&opts)),
        run(6, secs(5), || criterion_6(&opts)),
        run(7, secs(120), criterion_7),
        run(8, secs(60), criterion_8),
        run(9, secs(600), || criterion_9(&opts)),
        run(10, secs(1), criterion_10),
    ];
    let passed = results.iter().filter(|&&r| r).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
