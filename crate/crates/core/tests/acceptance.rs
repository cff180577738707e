//! One PASS/FAIL line per acceptance criterion. Criterion 2 is a known,
//! recorded failure (the printed Q_l/Q_r element columns are not groups);
//! it is reported but does not fail the run. Anything else does.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use cayley_ci::aut::{automorphism_group, regular_subgroups_isomorphic_to, DEFAULT_AUT_CAP};
use cayley_ci::closure::{
    dci_scan, is_ci_graph_babai, is_ci_graph_definitional, two_closure, ScanMode,
};
use cayley_ci::graph::{cayley, relation_sim, SimVerdict};
use cayley_ci::suite::{build_delta, closure_properties, leaf_action, REFERENCE};
use cayley_ci::{ColoredDigraph, FiniteGroup, PermGroup, Permutation};

const EXPECTED_FAILURES: [u32; 1] = [2];

const BUDGET_1: Duration = Duration::from_secs(10);
const BUDGET_2: Duration = Duration::from_secs(1);
const BUDGET_3: Duration = Duration::from_secs(1);
const BUDGET_4: Duration = Duration::from_secs(30);
const BUDGET_5: Duration = Duration::from_secs(5);
const BUDGET_6: Duration = Duration::from_secs(600);
const BUDGET_7: Duration = Duration::from_secs(1800);
const BUDGET_8: Duration = Duration::from_secs(300);
const BUDGET_9: Duration = Duration::from_secs(120);

const SAMPLES: usize = 200;
const SAMPLE_SEED: u64 = 1;
const MAX_SKIP_RATE: f64 = 0.20;
const CLOSURE_SAMPLES: usize = 100;
const CLOSURE_SEED: u64 = 7;
const LITERAL_DEGREE: usize = 6;

type Outcome = Result<(bool, String), String>;
type Entry = (u32, fn() -> Outcome, Duration);

fn leaf(s: &str) -> Permutation {
    Permutation::from_cycles(s, 8).expect("table entry parses")
}

fn leaves(list: &[&str]) -> Vec<Permutation> {
    list.iter().map(|s| leaf(s)).collect()
}

fn span(gens: Vec<Permutation>) -> PermGroup {
    PermGroup::generate(8, gens, DEFAULT_AUT_CAP).expect("small group")
}

fn delta_leaves() -> PermGroup {
    leaf_action(&automorphism_group(&build_delta(), DEFAULT_AUT_CAP).unwrap()).unwrap()
}

fn group(spec: &str) -> FiniteGroup {
    FiniteGroup::build(&spec.parse().unwrap()).unwrap()
}

fn sorted(mut v: Vec<Permutation>) -> Vec<Permutation> {
    v.sort();
    v
}

fn criterion_1() -> Outcome {
    let p2 = delta_leaves();
    let q = regular_subgroups_isomorphic_to(&p2, &group("Q8")).map_err(|e| e.to_string())?;
    let e = regular_subgroups_isomorphic_to(&p2, &group("E8")).map_err(|e| e.to_string())?;
    Ok((
        q.len() == 2 && e.len() == 2,
        format!(
            "|P2| = {:?}, Q8 regular = {}, Z2^3 regular = {}",
            p2.order(),
            q.len(),
            e.len()
        ),
    ))
}

fn criterion_2() -> Outcome {
    let p2 = delta_leaves();
    let found = regular_subgroups_isomorphic_to(&p2, &group("Q8")).map_err(|e| e.to_string())?;
    let found: Vec<Vec<Permutation>> = found
        .iter()
        .map(|h| h.elements().unwrap().to_vec())
        .collect();
    let q_l = sorted(leaves(&REFERENCE.q_l));
    let q_r = sorted(leaves(&REFERENCE.q_r));
    let q8 = group("Q8");
    let left = q8.left_regular_rep().elements().unwrap().to_vec();
    let right = q8.right_regular_rep().elements().unwrap().to_vec();
    let verbatim = found.contains(&q_l) && found.contains(&q_r);
    let reps = q_l == left && q_r == right;
    let swapped = REFERENCE.with_j_rows_exchanged();
    let fixed = sorted(leaves(&swapped.q_l)) == left && sorted(leaves(&swapped.q_r)) == right;
    let missing = q_l
        .iter()
        .chain(&q_r)
        .filter(|p| !found.iter().any(|h| h.contains(p)))
        .count();
    Ok((
        verbatim && reps,
        format!(
            "printed columns match search: {verbatim}, match regular reps: {reps}; {missing}/16 printed entries in no found subgroup; with j/-j rows exchanged the columns are the left/right regular reps: {fixed}"
        ),
    ))
}

fn criterion_3() -> Outcome {
    let q_l = span(leaves(&[REFERENCE.i1, REFERENCE.j1]));
    let q_r = span(leaves(&[REFERENCE.i2, REFERENCE.j2]));
    let a1 = span(leaves(&REFERENCE.x));
    let a2 = span(leaves(&REFERENCE.y));
    let g1 = span(
        q_l.generators()
            .iter()
            .chain(q_r.generators())
            .cloned()
            .collect(),
    );
    let g2 = span(
        a1.generators()
            .iter()
            .chain(a2.generators())
            .cloned()
            .collect(),
    );
    let meet = |a: &PermGroup, b: &PermGroup| {
        a.elements()
            .unwrap()
            .iter()
            .filter(|p| b.contains(p).unwrap())
            .count()
    };
    let even = g1.elements().unwrap().iter().all(Permutation::is_even);
    let equal = g1.same_elements(&g2);
    let (mq, ma) = (meet(&q_l, &q_r), meet(&a1, &a2));
    Ok((
        equal && g1.order() == Some(32) && even && mq == 2 && ma == 2,
        format!(
            "G1 = G2: {equal}, |G1| = {:?}, all even: {even}, |Q_l∩Q_r| = {mq}, |A1∩A2| = {ma}",
            g1.order()
        ),
    ))
}

fn criterion_4() -> Outcome {
    let q_l = span(leaves(&[REFERENCE.i1, REFERENCE.j1]));
    let q_r = span(leaves(&[REFERENCE.i2, REFERENCE.j2]));
    let h = span(
        q_l.generators()
            .iter()
            .chain(q_r.generators())
            .cloned()
            .collect(),
    );
    let members = ["(12)(34)", "(12)(56)", "(12)(78)"]
        .iter()
        .all(|m| h.contains(&leaf(m)).unwrap());
    let closure = two_closure(&h, DEFAULT_AUT_CAP).map_err(|e| e.to_string())?;
    let t = leaf("(12)");
    let in_closure = closure.contains(&t).unwrap();
    let q_swap = q_l.conjugate_by(&t).unwrap().same_elements(&q_r);
    let a1 = span(leaves(&REFERENCE.x));
    let a2 = span(leaves(&REFERENCE.y));
    let a_swap = a1.conjugate_by(&t).unwrap().same_elements(&a2);
    let x = leaves(&REFERENCE.x);
    let y = leaves(&REFERENCE.y);
    let conj = |p: &Permutation| t.compose(p).unwrap().compose(&t).unwrap();
    let rel2 = conj(&x[1]) == y[1].compose(&y[0]).unwrap();
    let rel3 = conj(&x[2]) == y[0].compose(&y[2]).unwrap();
    Ok((
        members && in_closure && q_swap && a_swap && rel2 && rel3,
        format!(
            "products in H: {members}, (12) in H^(2) (order {:?}): {in_closure}, Q_l^(12) = Q_r: {q_swap}, A1^(12) = A2: {a_swap}, relations: {rel2}/{rel3}",
            closure.order()
        ),
    ))
}

fn criterion_5() -> Outcome {
    let aut = automorphism_group(&build_delta(), DEFAULT_AUT_CAP).map_err(|e| e.to_string())?;
    let mut f: u128 = (1..=8).product();
    let mut two = 1u128;
    while f.is_multiple_of(2) {
        f /= 2;
        two *= 2;
    }
    Ok((
        aut.order == Some(128) && two == 128,
        format!("|Aut(Δ)| = {:?}, 2-part of 8! = {two}", aut.order),
    ))
}

fn criterion_6() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for spec in ["Q8", "E8"] {
        let g = group(spec);
        let others: Vec<usize> = (0..g.order()).filter(|&x| x != g.identity()).collect();
        let (mut babai_ci, mut def_ci, mut agree) = (0, 0, 0);
        for mask in 0u32..1 << others.len() {
            let s: Vec<usize> = (0..others.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| others[i])
                .collect();
            let b = is_ci_graph_babai(&g, &s, DEFAULT_AUT_CAP).map_err(|e| e.to_string())?;
            let d = is_ci_graph_definitional(&g, &s).map_err(|e| e.to_string())?;
            let b_ci = !b.is_skipped() && b.is_ci;
            babai_ci += b_ci as usize;
            def_ci += d as usize;
            agree += (b_ci == d && !b.is_skipped()) as usize;
        }
        ok &= babai_ci == 128 && def_ci == 128 && agree == 128;
        parts.push(format!(
            "{spec}: babai {babai_ci}/128, definitional {def_ci}/128, agree {agree}"
        ));
    }
    Ok((ok, parts.join("; ")))
}

fn criterion_7() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for spec in ["Q8xZ5", "E8xZ5"] {
        let r = dci_scan(
            &group(spec),
            ScanMode::Sample {
                count: SAMPLES,
                seed: SAMPLE_SEED,
            },
            DEFAULT_AUT_CAP,
        )
        .map_err(|e| e.to_string())?;
        ok &= r.failures.is_empty() && r.skip_rate() < MAX_SKIP_RATE && r.total == SAMPLES;
        parts.push(format!(
            "{spec}: {} sets, {} CI, {} failures, skip rate {:.3}",
            r.total,
            r.ci,
            r.failures.len(),
            r.skip_rate()
        ));
    }
    Ok((ok, parts.join("; ")))
}

fn criterion_8() -> Outcome {
    let r = closure_properties(CLOSURE_SAMPLES, CLOSURE_SEED, LITERAL_DEGREE)
        .map_err(|e| e.to_string())?;
    Ok((
        r.violations() == 0 && r.literal_compared > 0,
        format!(
            "{} groups, {} compared literally, {} violations",
            r.samples,
            r.literal_compared,
            r.violations()
        ),
    ))
}

fn gadget(p: usize, inner: u32, x: u32, y: u32) -> ColoredDigraph {
    ColoredDigraph::from_fn(2 * p, |u, v| {
        let d = (v % p + p - u % p) % p;
        let bit = |set: u32| set >> d & 1;
        match (u / p, v / p) {
            _ if u == v => 0,
            (0, 1) => bit(x),
            (1, 0) => bit(y),
            _ => bit(inner),
        }
    })
}

fn criterion_9() -> Outcome {
    let g = group("Q8xZ5");
    let coset = |k: usize| -> Vec<usize> { (5 * k..5 * k + 5).collect() };
    // minimal blocks from two points of one coset, in the right-regular action
    let blocks = g
        .right_regular_rep()
        .minimal_block_system(0, 1)
        .map_err(|e| e.to_string())?;
    let mut cells: Vec<Vec<usize>> = blocks.blocks().to_vec();
    cells.iter_mut().for_each(|c| c.sort());
    cells.sort();
    let cosets_ok = cells == (0..8).map(coset).collect::<Vec<_>>();

    let matching = cayley(&g, &g.parse_subset("i@0,-i@0").unwrap()).unwrap();
    let bundle = cayley(&g, &g.parse_subset("i@0,i@1,i@2,i@3,i@4").unwrap()).unwrap();
    let (one, i, minus_i) = (coset(0), coset(2), coset(3));
    let sims = [
        relation_sim(&matching, &i, &one).unwrap() == SimVerdict::NotSim,
        relation_sim(&bundle, &i, &one).unwrap() == SimVerdict::OnlyForward,
        relation_sim(&bundle, &one, &i).unwrap() == SimVerdict::OnlyBackward,
        relation_sim(&bundle, &one, &minus_i).unwrap() == SimVerdict::OnlyForward,
        relation_sim(&ColoredDigraph::empty(40), &one, &i).unwrap() == SimVerdict::Empty,
    ];
    let sims_ok = sims.iter().all(|&s| s);

    // lifting: shifts on non-equivalent blocks agree; products lift when equivalent
    let p = 5;
    let a: Vec<usize> = (0..p).collect();
    let b: Vec<usize> = (p..2 * p).collect();
    let mut violations = 0;
    let mut cases = 0;
    for x in 0u32..32 {
        for y in 0u32..32 {
            let graph = gadget(p, 0b10, x, y);
            let verdict = relation_sim(&graph, &a, &b).unwrap();
            for s in 0..p {
                for t in 0..p {
                    let pi = Permutation::from_images(
                        (0..2 * p)
                            .map(|v| {
                                if v < p {
                                    (v + s) % p
                                } else {
                                    p + (v - p + t) % p
                                }
                            })
                            .collect(),
                    )
                    .unwrap();
                    cases += 1;
                    let preserved = graph.preserved_by(&pi);
                    if verdict == SimVerdict::NotSim && preserved && s != t {
                        violations += 1;
                    }
                    if verdict != SimVerdict::NotSim && !preserved {
                        violations += 1;
                    }
                }
            }
        }
    }
    Ok((
        cosets_ok && sims_ok && violations == 0,
        format!("coset blocks: {cosets_ok}, sim verdicts: {sims:?}, lifting cases {cases} with {violations} violations"),
    ))
}

fn main() -> ExitCode {
    let criteria: [Entry; 9] = [
        (1, criterion_1, BUDGET_1),
        (2, criterion_2, BUDGET_2),
        (3, criterion_3, BUDGET_3),
        (4, criterion_4, BUDGET_4),
        (5, criterion_5, BUDGET_5),
        (6, criterion_6, BUDGET_6),
        (7, criterion_7, BUDGET_7),
        (8, criterion_8, BUDGET_8),
        (9, criterion_9, BUDGET_9),
    ];
    let mut unexpected = 0;
    for (id, run, budget) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (passed, detail) = match outcome {
            Ok((ok, detail)) => (ok && elapsed <= budget, detail),
            Err(e) => (false, format!("error: {e}")),
        };
        let status = if passed {
            "PASS"
        } else if EXPECTED_FAILURES.contains(&id) {
            "FAIL (expected)"
        } else {
            unexpected += 1;
            "FAIL"
        };
        println!(
            "criterion {id}: {status} [{:.2}s / {}s] {detail}",
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
