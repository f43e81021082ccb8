//! End-to-end acceptance run. Prints one line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use gf2ramsey::colorings::ColorAssignment;
use gf2ramsey::forms::{make_bounded, make_symplectic};
use gf2ramsey::par::Parallelism;
use gf2ramsey::ramsey::{
    arrow_decide, check_coloring, flat_instance, pram_construct, pram_instance, Budget,
    CheckOutcome, FlatVariant, Hypergraph, Method, Verdict,
};
use gf2ramsey_cli::{run, ClaimStatus, CommandSpec, Report, RunConfig, Section3Check};

struct Outcome {
    ok: bool,
    note: String,
}

fn pass(note: impl Into<String>) -> Outcome {
    Outcome {
        ok: true,
        note: note.into(),
    }
}

fn fail(note: impl Into<String>) -> Outcome {
    Outcome {
        ok: false,
        note: note.into(),
    }
}

/// Every config run so far, for the determinism rerun.
struct Runner {
    runs: Vec<(RunConfig, Value)>,
}

impl Runner {
    fn run(&mut self, command: CommandSpec) -> Report {
        let config = RunConfig::new(command);
        let report = run(&config, None).expect("command runs");
        self.runs.push((config, report.without_timing()));
        report
    }
}

fn claim<'a>(r: &'a Report, name: &str) -> &'a gf2ramsey_cli::Claim {
    r.claims
        .iter()
        .find(|c| c.name == name)
        .unwrap_or_else(|| panic!("no claim {name}"))
}

fn q_binomial(n: u32, k: u32) -> u128 {
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num *= (1u128 << (n - i)) - 1;
        den *= (1u128 << (i + 1)) - 1;
    }
    num / den
}

/// Nondegenerate 2m-dimensional subspaces of the 2n-dimensional symplectic space.
fn nondegenerate_count(n: u32, m: u32) -> u128 {
    let mut num = 1u128 << (2 * m * (n - m));
    let mut den = 1u128;
    for i in (n - m + 1)..=n {
        num *= (1u128 << (2 * i)) - 1;
    }
    for i in 1..=m {
        den *= (1u128 << (2 * i)) - 1;
    }
    num / den
}

/// Symplectic form with hyperbolic pairs on adjacent coordinates.
fn sym_beta(x: u64, y: u64) -> bool {
    let swapped = ((y & 0x5555_5555_5555_5555) << 1) | ((y >> 1) & 0x5555_5555_5555_5555);
    (x & swapped).count_ones() % 2 == 1
}

/// Does every `r`-coloring of `n` vertices leave some edge monochromatic?
fn brute_arrow(n: usize, edges: &[Vec<usize>], r: u32) -> bool {
    let total = (r as u64).pow(n as u32);
    (0..total).all(|code| {
        let mut colors = vec![0u32; n];
        let mut c = code;
        for x in colors.iter_mut() {
            *x = (c % r as u64) as u32;
            c /= r as u64;
        }
        edges
            .iter()
            .any(|e| e.iter().all(|&v| colors[v] == colors[e[0]]))
    })
}

fn c1(rn: &mut Runner) -> Outcome {
    let report = rn.run(CommandSpec::VerifySection2 { k: 3 });
    let c = claim(&report, "structure");
    // independent radical computation
    let space = make_symplectic(3).unwrap();
    let u = space
        .span_named(&["e1", "e2", "e3", "e*1+e*2", "e*3"])
        .unwrap();
    let rad: Vec<u64> = u
        .elements()
        .filter(|&x| u.rows().iter().all(|&y| !sym_beta(x, y)))
        .filter(|&x| x != 0)
        .collect();
    let e12 = space.parse_named("e1+e2").unwrap();
    let w = space
        .span_named(&["e1", "e*1", "e2", "e*2", "e3", "e*3"])
        .unwrap();
    let rad_w = w
        .elements()
        .filter(|&x| x != 0 && w.rows().iter().all(|&y| !sym_beta(x, y)))
        .count();
    if c.status == ClaimStatus::Pass && rad == vec![e12] && rad_w == 0 {
        pass("Rad(U) = <e1+e2>, Rad(W) = 0, both maps extend")
    } else {
        fail(format!(
            "status {:?}, brute radical {rad:?}, |Rad(W)| {rad_w}",
            c.status
        ))
    }
}

fn c2(rn: &mut Runner) -> Outcome {
    let t = std::time::Instant::now();
    let report = rn.run(CommandSpec::VerifySection2 { k: 4 });
    let c = claim(&report, "lemma-not-monochromatic");
    let s = &c.detail["summary"];
    let want_cand = q_binomial(8, 6);
    let want_w = nondegenerate_count(4, 3);
    let ok = c.status == ClaimStatus::Pass
        && s["candidates"] == want_cand as u64
        && s["b_copies"] == want_w as u64
        && c.detail["red_and_blue"] == want_w as u64;
    let note = format!(
        "{} candidates, {} W-copies all with RED and BLUE, {:.1}s",
        s["candidates"],
        s["b_copies"],
        t.elapsed().as_secs_f64()
    );
    if ok {
        pass(note)
    } else {
        fail(format!("{note}; expected {want_cand} and {want_w}"))
    }
}

fn c3(rn: &mut Runner) -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for k in [3, 4] {
        let report = rn.run(CommandSpec::VerifySection2 { k });
        let c = claim(&report, "theorem-arrow-fails");
        ok &= c.status == ClaimStatus::Pass && c.detail["rwb_accepted"] == true;
        notes.push(format!("k={k} {:?}", c.status));
    }
    // stretch case under the default budget
    let report = rn.run(CommandSpec::VerifySection2 { k: 5 });
    let c = claim(&report, "theorem-arrow-fails");
    notes.push(format!("k=5 stretch {:?}", c.status));
    ok &= c.status != ClaimStatus::Fail;
    Outcome {
        ok,
        note: notes.join(", "),
    }
}

fn c4(rn: &mut Runner) -> Outcome {
    let lin = rn.run(CommandSpec::Vector {
        t: 1,
        k: 2,
        colors: 2,
        max_n: 4,
        variant: FlatVariant::Linear,
    });
    let aff = rn.run(CommandSpec::Vector {
        t: 0,
        k: 1,
        colors: 2,
        max_n: 4,
        variant: FlatVariant::AnyAffine,
    });
    let least_lin = &lin.claims[0].detail["least_n"];
    let least_aff = &aff.claims[0].detail["least_n"];
    // points and lines of the projective plane and line, by hand
    let lines = |n: usize| -> Vec<Vec<usize>> {
        let pts: Vec<u64> = (1..1u64 << n).collect();
        let mut out = BTreeSet::new();
        for &a in &pts {
            for &b in &pts {
                if a < b {
                    let mut l = vec![a - 1, b - 1, (a ^ b) - 1];
                    l.sort();
                    out.insert(l.into_iter().map(|x| x as usize).collect::<Vec<_>>());
                }
            }
        }
        out.into_iter().collect()
    };
    let n2 = brute_arrow(3, &lines(2), 2);
    let n3 = brute_arrow(7, &lines(3), 2);
    let ok = *least_lin == 3 && *least_aff == 2 && !n2 && n3;
    let note = format!("linear(1,2) = {least_lin}, any-affine(0,1) = {least_aff}; 128-coloring brute force n=2 {n2}, n=3 {n3}");
    Outcome { ok, note }
}

fn c5(rn: &mut Runner) -> Outcome {
    let report = rn.run(CommandSpec::VerifySection3 {
        which: Section3Check::Lemma,
        k: 1,
        m: 2,
        colors: 2,
        a0_dim: None,
        b0_dim: None,
    });
    let c = &report.claims[0];
    let pairs = c.detail["pairs"].as_array().unwrap();
    let mono: u64 = pairs
        .iter()
        .map(|p| p["summary"]["monochromatic"].as_u64().unwrap())
        .sum();
    let covered: u64 = pairs
        .iter()
        .map(|p| {
            p["summary"]["b_copies"].as_u64().unwrap()
                - p["summary"]["without_a_copies"].as_u64().unwrap()
        })
        .sum();
    let note = format!(
        "{} (A, B) pairs, {covered} B-copies checked, {mono} monochromatic",
        pairs.len()
    );
    Outcome {
        ok: c.status == ClaimStatus::Pass && mono == 0 && covered > 0,
        note,
    }
}

fn c6(rn: &mut Runner) -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for (k, m) in [(1, 3), (1, 4), (2, 4)] {
        let report = rn.run(CommandSpec::VerifySection3 {
            which: Section3Check::Independence,
            k,
            m,
            colors: 2,
            a0_dim: None,
            b0_dim: None,
        });
        let c = claim(&report, "independence-coloring");
        let checked: u64 = c.detail["cases"]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| {
                x["summary"]["b_copies"].as_u64().unwrap()
                    - x["summary"]["without_a_copies"].as_u64().unwrap()
            })
            .sum();
        ok &= c.status == ClaimStatus::Pass;
        notes.push(format!(
            "bounded({k},{m}) {checked} B-copies {:?}",
            c.status
        ));
    }
    Outcome {
        ok,
        note: notes.join(", "),
    }
}

fn c7(rn: &mut Runner) -> Outcome {
    let t = std::time::Instant::now();
    let report = rn.run(CommandSpec::VerifySection3 {
        which: Section3Check::Pram,
        k: 1,
        m: 3,
        colors: 2,
        a0_dim: Some(1),
        b0_dim: Some(2),
    });
    let cons = claim(&report, "pram-construction");
    let mono = claim(&report, "pram-monochromatic");
    let c0_dim = cons.detail["c0"]["basis"].as_array().map_or(0, Vec::len);
    // rebuild the instance and try all 2-colorings without the engine
    let space = make_bounded(1, 3).unwrap();
    let a1 = space.span_named(&["e1"]).unwrap();
    let a0 = space.span_named(&["e2"]).unwrap();
    let b = space.span_named(&["e1", "e2", "e3"]).unwrap();
    let mode = Parallelism::Sequential;
    let p = pram_construct(&space, &a0, &a1, &b, 2, 4, &Budget::default(), mode).unwrap();
    let g = pram_instance(&p, 2, mode).unwrap().graph;
    let edges: Vec<Vec<usize>> = g
        .edges()
        .map(|e| e.iter().map(|&v| v as usize).collect())
        .collect();
    let brute = brute_arrow(g.vertices(), &edges, 2);
    let ok = cons.status == ClaimStatus::Pass
        && c0_dim == 3
        && mono.status == ClaimStatus::Pass
        && brute;
    let note = format!(
        "dim C0 = {c0_dim}, {} colorings brute force, verdict {}, {:.2}s",
        1u64 << g.vertices(),
        mono.detail["verdict"],
        t.elapsed().as_secs_f64()
    );
    Outcome { ok, note }
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> Hypergraph {
    let m = rng.gen_range(1..=3 * n);
    let edges: Vec<Vec<u32>> = (0..m)
        .map(|_| {
            let size = rng.gen_range(2..=4.min(n));
            (0..size)
                .map(|_| rng.gen_range(0..n as u32))
                .collect::<Vec<u32>>()
        })
        .collect();
    Hypergraph::new(n, edges).unwrap()
}

/// (verdicts, disagreements, bad witnesses)
fn sat_vs_exhaustive(graphs: &[(Hypergraph, u32)]) -> (Vec<String>, usize, usize) {
    let b = Budget::default();
    let mut verdicts = Vec::new();
    let mut disagree = 0;
    let mut bad = 0;
    for (g, r) in graphs {
        let ex = arrow_decide(g, *r, Method::Exhaustive, &[], &b, Parallelism::Parallel).unwrap();
        let sat = arrow_decide(g, *r, Method::Sat, &[], &b, Parallelism::Parallel).unwrap();
        if ex.verdict != sat.verdict || matches!(ex.verdict, Verdict::Unknown(_)) {
            disagree += 1;
        }
        for w in [&ex.witness, &sat.witness].into_iter().flatten() {
            let w: &ColorAssignment = w;
            if check_coloring(g, w, Parallelism::Sequential).unwrap() != CheckOutcome::NoMonoCopy {
                bad += 1;
            }
        }
        verdicts.push(format!("{:?}", ex.verdict));
    }
    (verdicts, disagree, bad)
}

fn c8_instances() -> Vec<(Hypergraph, u32)> {
    let mut out = Vec::new();
    for n in 1..=4 {
        for k in 1..=n {
            for t in 0..k {
                for v in [
                    FlatVariant::Linear,
                    FlatVariant::ProperAffine,
                    FlatVariant::AnyAffine,
                ] {
                    let g = flat_instance(n, t, k, v, Parallelism::Parallel).unwrap();
                    if g.vertices() <= 20 && g.num_edges() > 0 {
                        out.push((g.clone(), 2));
                        if g.vertices() <= 12 {
                            out.push((g, 3));
                        }
                    }
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    while out.len() < 240 {
        let r = rng.gen_range(2..=3);
        let n = if r == 3 {
            rng.gen_range(2..=12)
        } else {
            rng.gen_range(2..=20)
        };
        out.push((random_graph(&mut rng, n), r));
    }
    out
}

fn c8(verdicts_out: &mut Vec<String>) -> Outcome {
    let inst = c8_instances();
    let (verdicts, disagree, bad) = sat_vs_exhaustive(&inst);
    let holds = verdicts.iter().filter(|v| v.as_str() == "Holds").count();
    *verdicts_out = verdicts;
    let note = format!(
        "{} instances ({holds} hold), {disagree} disagreements, {bad} bad witnesses",
        inst.len()
    );
    Outcome {
        ok: inst.len() >= 200 && disagree == 0 && bad == 0,
        note,
    }
}

fn c9(rn: &mut Runner) -> Outcome {
    let mut agree = 0;
    let mut total = 0;
    let mut failures = Vec::new();
    for m in 1..=4 {
        for k in 1..=m {
            for t in 0..k {
                for r in 1..=2 {
                    let report = rn.run(CommandSpec::Tuples {
                        m,
                        t,
                        k,
                        n: 1,
                        colors: r,
                    });
                    total += 1;
                    if claim(&report, "tuples-match-affine").status == ClaimStatus::Pass {
                        agree += 1;
                    } else {
                        failures.push(format!("(m={m},t={t},k={k},r={r})"));
                    }
                }
            }
        }
    }
    let mut explored = 0;
    for m in 2..=3 {
        for k in 1..=m {
            for t in 0..k {
                let report = rn.run(CommandSpec::Tuples {
                    m,
                    t,
                    k,
                    n: 2,
                    colors: 2,
                });
                if report.claims[0].status == ClaimStatus::Exploration {
                    explored += 1;
                }
            }
        }
    }
    let note =
        format!("{agree}/{total} n=1 cases agree, {explored} n=2 exploration reports {failures:?}");
    Outcome {
        ok: agree == total,
        note,
    }
}

fn c10(rn: &Runner, verdicts: &[String]) -> Outcome {
    let mut differ = 0;
    for (config, first) in &rn.runs {
        let again = run(config, None).expect("command runs");
        if again.without_timing() != *first || again.config_hash != config.hash() {
            differ += 1;
        }
    }
    let (second, _, _) = sat_vs_exhaustive(&c8_instances());
    if second != verdicts {
        differ += 1;
    }
    let note = format!(
        "{} reports plus the agreement batch rerun, {differ} differ",
        rn.runs.len()
    );
    Outcome {
        ok: differ == 0,
        note,
    }
}

fn main() {
    let mut rn = Runner { runs: Vec::new() };
    let mut verdicts = Vec::new();
    let mut results = vec![
        ("structure of U and W", c1(&mut rn)),
        ("lemma over make_symplectic(4)", c2(&mut rn)),
        ("arrow fails for k = 3, 4", c3(&mut rn)),
        ("vector Ramsey numbers", c4(&mut rn)),
        ("projection-family coloring", c5(&mut rn)),
        ("independence coloring", c6(&mut rn)),
        ("pram construction", c7(&mut rn)),
        ("SAT and exhaustive agree", c8(&mut verdicts)),
        ("tuples match proper affine", c9(&mut rn)),
    ];
    results.push(("determinism", c10(&rn, &verdicts)));
    let mut failed = 0;
    for (i, (name, o)) in results.iter().enumerate() {
        println!(
            "criterion {:>2}: {} {name}: {}",
            i + 1,
            if o.ok { "PASS" } else { "FAIL" },
            o.note
        );
        failed += usize::from(!o.ok);
    }
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}
