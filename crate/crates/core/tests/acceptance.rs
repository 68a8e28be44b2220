//! Acceptance gate: one test per criterion, each printing a PASS line and
//! enforcing its runtime budget. Run with
//! `cargo test --test acceptance -- --nocapture` to see the report.

use std::process::Command;
use std::time::{Duration, Instant};

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use similog::distributions::{
    tightest_conditional_necessity, tightest_conditional_possibility, tightest_necessity,
    tightest_possibility,
};
use similog::gmp::{gmp_necessity, gmp_possibility, GmpMode, GmpProblem};
use similog::kb::{parse_kb, serialize_kb};
use similog::measures::{alpha_possible, degree_of_consistence, degree_of_implication};
use similog::similarity::{transitive_closure, SimilarityMatrix, SimilarityRelation};
use similog::world::{EvidentialSet, Partition, Proposition};
use similog::{TNorm, UnitValue, EPSILON};

use similog_oracle as oracle;

const GRID_TOLERANCE: f64 = 2e-3;

fn finish(criterion: usize, what: &str, start: Instant, budget: Duration) {
    let elapsed = start.elapsed();
    assert!(
        elapsed < budget,
        "criterion {criterion} exceeded its runtime budget: {elapsed:?} >= {budget:?}"
    );
    println!("PASS criterion {criterion}: {what} [{elapsed:?}]");
}

fn subsets(n: usize) -> impl Iterator<Item = Proposition> {
    (0u32..(1 << n))
        .map(move |mask| Proposition::from_indices(n, (0..n).filter(move |i| mask >> i & 1 == 1)))
}

fn unit(v: f64) -> UnitValue {
    UnitValue::new(v).unwrap()
}

/// All set partitions of {0, …, n−1}, as block lists.
fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn recurse(
        world: usize,
        n: usize,
        blocks: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if world == n {
            out.push(blocks.clone());
            return;
        }
        for index in 0..blocks.len() {
            blocks[index].push(world);
            recurse(world + 1, n, blocks, out);
            blocks[index].pop();
        }
        blocks.push(vec![world]);
        recurse(world + 1, n, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    recurse(0, n, &mut Vec::new(), &mut out);
    out
}

/// Direct two-valued modus ponens over a partition: OR over blocks of
/// (prior AND conditional), with the crisp table semantics.
fn boolean_modus_ponens(
    blocks: &[Proposition],
    evidence: &Proposition,
    q: &Proposition,
    mode: GmpMode,
) -> f64 {
    let fires = blocks.iter().any(|block| match mode {
        GmpMode::Necessity => {
            let prior = evidence.is_subset_of(block).unwrap();
            let conditional = evidence
                .indices()
                .all(|w| !block.contains(w) || q.contains(w));
            prior && conditional
        }
        GmpMode::Possibility => {
            let prior = !evidence.is_disjoint_from(block).unwrap();
            let conditional = evidence
                .indices()
                .any(|w| !block.contains(w) || q.contains(w));
            prior && conditional
        }
    });
    if fires {
        1.0
    } else {
        0.0
    }
}

#[test]
fn criterion_1_classical_limit() {
    let start = Instant::now();
    for n in 2..=4usize {
        let s = SimilarityRelation::identity(n, TNorm::Min);
        // I and C collapse to subset inclusion and non-disjointness, exactly.
        for p in subsets(n) {
            for q in subsets(n) {
                let i = degree_of_implication(&p, &q, &s).unwrap().get();
                let expected = if q.is_subset_of(&p).unwrap() {
                    1.0
                } else {
                    0.0
                };
                assert_eq!(i, expected, "I at n={n}");
                let c = degree_of_consistence(&p, &q, &s).unwrap().get();
                let expected = if p.is_disjoint_from(&q).unwrap() {
                    0.0
                } else {
                    1.0
                };
                assert_eq!(c, expected, "C at n={n}");
                // Chain bound stays two-valued and sound over all triples.
                for r in subsets(n) {
                    let chained = similog::gmp::simple_gmp_chain(&p, &r, &q, &s)
                        .unwrap()
                        .get();
                    assert!(chained == 0.0 || chained == 1.0);
                    assert!(chained <= i);
                }
            }
        }
        // Both GMP theorems reduce to the direct two-valued evaluator, for
        // every partition, evidence set, consequent, and norm.
        for blocks in set_partitions(n) {
            let blocks: Vec<Proposition> = blocks
                .into_iter()
                .map(|b| Proposition::from_indices(n, b))
                .collect();
            let partition = Partition::new(blocks.clone()).unwrap();
            for norm in TNorm::ALL {
                let s = SimilarityRelation::identity(n, norm);
                for e in subsets(n).filter(|e| !e.is_empty()) {
                    let evidence = EvidentialSet::new(e.clone()).unwrap();
                    for q in subsets(n) {
                        for mode in [GmpMode::Necessity, GmpMode::Possibility] {
                            let problem = GmpProblem::tightest(
                                partition.clone(),
                                q.clone(),
                                &evidence,
                                &s,
                                mode,
                            )
                            .unwrap();
                            let got = match mode {
                                GmpMode::Necessity => {
                                    gmp_necessity(&problem, &evidence, &s, EPSILON)
                                }
                                GmpMode::Possibility => {
                                    gmp_possibility(&problem, &evidence, &s, EPSILON)
                                }
                            }
                            .unwrap()
                            .value
                            .get();
                            let expected = boolean_modus_ponens(&blocks, &e, &q, mode);
                            assert_eq!(got, expected, "GMP {mode:?} at n={n} norm={norm}");
                        }
                    }
                }
            }
        }
    }
    finish(
        1,
        "classical limit: crisp I/C and two-valued modus ponens recovered exactly (n = 2..4)",
        start,
        Duration::from_secs(5),
    );
}

#[test]
fn criterion_2_algebraic_suite() {
    let start = Instant::now();
    let grid: Vec<UnitValue> = (0..=100).map(|k| unit(k as f64 / 100.0)).collect();
    for norm in TNorm::ALL {
        for &a in &grid {
            assert!((norm.apply(a, UnitValue::ONE).get() - a.get()).abs() <= EPSILON);
            for &b in &grid {
                let ab = norm.apply(a, b).get();
                assert!(
                    (ab - norm.apply(b, a).get()).abs() <= EPSILON,
                    "commutativity"
                );
            }
        }
        // Monotonicity along adjacent grid steps (extends by transitivity).
        for window in grid.windows(2) {
            for &b in &grid {
                assert!(
                    norm.apply(window[0], b).get() <= norm.apply(window[1], b).get() + EPSILON,
                    "monotonicity"
                );
            }
        }
        for &a in &grid {
            for &b in &grid {
                let ab = norm.apply(a, b);
                let residuum = norm.residuum(a, b).get();
                for &c in &grid {
                    let left = norm.apply(ab, c).get();
                    let right = norm.apply(a, norm.apply(b, c)).get();
                    assert!((left - right).abs() <= EPSILON, "associativity {norm}");
                    // Adjunction: apply(b, c) ≤ a + ε ⇔ c ≤ residuum(a, b) + ε.
                    let applies = norm.apply(b, c).get() <= a.get() + EPSILON;
                    let bounded = c.get() <= residuum + EPSILON;
                    assert_eq!(applies, bounded, "adjunction {norm}");
                }
            }
        }
    }
    finish(
        2,
        "t-norm axioms and residuum adjunction on the 101-point grid, tolerance 1e-9",
        start,
        Duration::from_secs(5),
    );
}

#[test]
fn criterion_3_metric_duality() {
    let start = Instant::now();
    for norm in TNorm::ALL {
        for seed in 0..1000u64 {
            let (_, s) = oracle::random_valid_model(seed, 8, norm);
            let d = s.distance_view();
            for x in 0..8 {
                for y in 0..8 {
                    for z in 0..8 {
                        match norm {
                            // Min-transitivity gives the ultrametric inequality.
                            TNorm::Min => assert!(
                                d[x][z] <= d[x][y].max(d[y][z]) + EPSILON,
                                "ultrametric seed={seed}"
                            ),
                            // Łukasiewicz (and the pointwise-larger product)
                            // give the ordinary triangle inequality.
                            TNorm::Lukasiewicz | TNorm::Product => assert!(
                                d[x][z] <= d[x][y] + d[y][z] + EPSILON,
                                "triangle seed={seed}"
                            ),
                        }
                    }
                }
            }
        }
    }
    finish(
        3,
        "distance duality: ultrametric under min, triangle under Lukasiewicz (1000 models/norm, n = 8)",
        start,
        Duration::from_secs(30),
    );
}

#[test]
fn criterion_4_implication_transitivity() {
    let start = Instant::now();
    // Exhaustive over all subset triples at n ≤ 5.
    for n in 1..=5usize {
        for norm in TNorm::ALL {
            for seed in [0u64, 1] {
                let (_, s) = oracle::random_valid_model(seed + 1000 * n as u64, n, norm);
                let all: Vec<Proposition> = subsets(n).collect();
                let implications: Vec<Vec<f64>> = all
                    .iter()
                    .map(|p| {
                        all.iter()
                            .map(|q| degree_of_implication(p, q, &s).unwrap().get())
                            .collect()
                    })
                    .collect();
                for (pi, _) in all.iter().enumerate() {
                    for (ri, _) in all.iter().enumerate() {
                        for (qi, _) in all.iter().enumerate() {
                            let chained = oracle::tnorm_apply(
                                norm,
                                implications[pi][ri],
                                implications[ri][qi],
                            );
                            assert!(
                                implications[pi][qi] >= chained - EPSILON,
                                "transitivity n={n} {norm}"
                            );
                        }
                    }
                }
            }
        }
    }
    // Randomized at n = 8: 1000 models per norm, sampled triples.
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for norm in TNorm::ALL {
        for seed in 0..1000u64 {
            let (_, s) = oracle::random_valid_model(seed ^ 0xdead, 8, norm);
            for _ in 0..8 {
                let p = oracle::random_proposition(&mut rng, 8);
                let r = oracle::random_proposition(&mut rng, 8);
                let q = oracle::random_proposition(&mut rng, 8);
                let direct = degree_of_implication(&p, &q, &s).unwrap().get();
                let chained = norm
                    .apply(
                        degree_of_implication(&p, &r, &s).unwrap(),
                        degree_of_implication(&r, &q, &s).unwrap(),
                    )
                    .get();
                assert!(direct >= chained - EPSILON, "transitivity n=8 {norm}");
            }
        }
    }
    finish(
        4,
        "I(p|q) >= I(p|r) (x) I(r|q) - 1e-9, exhaustive n <= 5 and 1000 random models at n = 8",
        start,
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_5_order_disjunction_modal_sup_nestedness() {
    let start = Instant::now();
    for n in 1..=5usize {
        for norm in TNorm::ALL {
            let (_, s) = oracle::random_valid_model(500 + n as u64, n, norm);
            let all: Vec<Proposition> = subsets(n).collect();
            // I ≤ C for non-empty conditioning sets.
            for p in &all {
                for q in all.iter().filter(|q| !q.is_empty()) {
                    let i = degree_of_implication(p, q, &s).unwrap().get();
                    let c = degree_of_consistence(p, q, &s).unwrap().get();
                    assert!(i <= c + EPSILON, "I<=C n={n} {norm}");
                    // Modal-sup characterization of I.
                    let modal = oracle::oracle_implication_via_modal(p, q, &s);
                    assert!((i - modal).abs() <= EPSILON, "modal sup n={n} {norm}");
                }
            }
            // Possibility disjunction law, exact max, for every evidence set.
            for e in all.iter().filter(|e| !e.is_empty()) {
                let evidence = EvidentialSet::new(e.clone()).unwrap();
                for p in &all {
                    for q in &all {
                        let joined = p.union(q).unwrap();
                        let lhs = tightest_possibility(&joined, &evidence, &s).unwrap().get();
                        let rhs = tightest_possibility(p, &evidence, &s)
                            .unwrap()
                            .max(tightest_possibility(q, &evidence, &s).unwrap())
                            .get();
                        assert_eq!(lhs, rhs, "disjunction n={n} {norm}");
                    }
                }
            }
            // Π_α nestedness over the degree grid.
            for p in &all {
                for lo in 0..=10usize {
                    for hi in lo..=10 {
                        let wide = alpha_possible(p, unit(lo as f64 / 10.0), &s, EPSILON).unwrap();
                        let tight = alpha_possible(p, unit(hi as f64 / 10.0), &s, EPSILON).unwrap();
                        assert!(tight.is_subset_of(&wide).unwrap(), "nestedness n={n}");
                    }
                }
            }
        }
    }
    finish(
        5,
        "I <= C, exact possibility disjunction, modal-sup characterization, and nestedness (n <= 5)",
        start,
        Duration::from_secs(30),
    );
}

#[test]
fn criterion_6_gmp_soundness() {
    let start = Instant::now();
    // Worked 3-world KB: the necessity bound equals I(q|E) = 0.6 exactly.
    let matrix = SimilarityMatrix::from_rows(vec![
        vec![1.0, 0.8, 0.6],
        vec![0.8, 1.0, 0.6],
        vec![0.6, 0.6, 1.0],
    ])
    .unwrap();
    let s = SimilarityRelation::validate(matrix, TNorm::Min, EPSILON).unwrap();
    let evidence = EvidentialSet::new(Proposition::from_indices(3, [0])).unwrap();
    let q = Proposition::from_indices(3, [2]);
    let partition =
        Partition::new((0..3).map(|i| Proposition::from_indices(3, [i])).collect()).unwrap();
    let problem =
        GmpProblem::tightest(partition, q.clone(), &evidence, &s, GmpMode::Necessity).unwrap();
    let bound = gmp_necessity(&problem, &evidence, &s, EPSILON)
        .unwrap()
        .value
        .get();
    assert_eq!(bound, 0.6);
    assert_eq!(
        oracle::oracle_implication(&q, evidence.as_proposition(), &s),
        0.6
    );

    // 1000 random models: tightest and randomly weakened tables stay sound.
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for trial in 0..1000u64 {
        let norm = TNorm::ALL[(trial % 3) as usize];
        let n = 2 + (trial % 7) as usize;
        let (_, s) = oracle::random_valid_model(trial.wrapping_mul(7919), n, norm);
        let partition = oracle::random_partition(&mut rng, n);
        let evidence =
            EvidentialSet::new(oracle::random_nonempty_proposition(&mut rng, n)).unwrap();
        let q = oracle::random_proposition(&mut rng, n);
        let i_q_e = oracle::oracle_implication(&q, evidence.as_proposition(), &s);
        let c_q_e = oracle::oracle_consistence(&q, evidence.as_proposition(), &s);

        let tightest_nec = GmpProblem::tightest(
            partition.clone(),
            q.clone(),
            &evidence,
            &s,
            GmpMode::Necessity,
        )
        .unwrap();
        let nec = gmp_necessity(&tightest_nec, &evidence, &s, EPSILON)
            .unwrap()
            .value
            .get();
        assert!(nec <= i_q_e + EPSILON, "nec soundness trial={trial}");

        let tightest_poss = GmpProblem::tightest(
            partition.clone(),
            q.clone(),
            &evidence,
            &s,
            GmpMode::Possibility,
        )
        .unwrap();
        let poss = gmp_possibility(&tightest_poss, &evidence, &s, EPSILON)
            .unwrap()
            .value
            .get();
        assert!(poss >= c_q_e - EPSILON, "poss soundness trial={trial}");

        // Random weakening keeps the hypotheses valid and the bounds sound.
        let blocks = partition.blocks().to_vec();
        let weak_prior: Vec<UnitValue> = blocks
            .iter()
            .map(|b| {
                let tight = tightest_necessity(b, &evidence, &s).unwrap().get();
                unit(tight * rng.gen_range(0.0..=1.0))
            })
            .collect();
        let weak_cond: Vec<UnitValue> = blocks
            .iter()
            .map(|b| {
                let tight = tightest_conditional_necessity(&q, b, &evidence, &s)
                    .unwrap()
                    .get();
                unit(tight * rng.gen_range(0.0..=1.0))
            })
            .collect();
        let weakened = GmpProblem::new(
            partition.clone(),
            q.clone(),
            weak_prior,
            weak_cond,
            GmpMode::Necessity,
        )
        .unwrap();
        let weak_nec = gmp_necessity(&weakened, &evidence, &s, EPSILON)
            .unwrap()
            .value
            .get();
        assert!(weak_nec <= i_q_e + EPSILON);
        assert!(weak_nec <= nec + EPSILON, "weakening lowers the bound");

        let loose_prior: Vec<UnitValue> = blocks
            .iter()
            .map(|b| {
                let tight = tightest_possibility(b, &evidence, &s).unwrap().get();
                unit(tight + (1.0 - tight) * rng.gen_range(0.0..=1.0))
            })
            .collect();
        let loose_cond: Vec<UnitValue> = blocks
            .iter()
            .map(|b| {
                let tight = tightest_conditional_possibility(&q, b, &evidence, &s)
                    .unwrap()
                    .get();
                unit(tight + (1.0 - tight) * rng.gen_range(0.0..=1.0))
            })
            .collect();
        let loosened = GmpProblem::new(
            partition.clone(),
            q.clone(),
            loose_prior,
            loose_cond,
            GmpMode::Possibility,
        )
        .unwrap();
        let loose_poss = gmp_possibility(&loosened, &evidence, &s, EPSILON)
            .unwrap()
            .value
            .get();
        assert!(loose_poss >= c_q_e - EPSILON);
        assert!(loose_poss >= poss - EPSILON, "loosening raises the bound");
    }
    finish(
        6,
        "GMP soundness on 1000 random models with tightest and weakened tables; worked KB bound attained at 0.6",
        start,
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_7_closure_correctness() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for trial in 0..1000u64 {
        let norm = TNorm::ALL[(trial % 3) as usize];
        let n = 2 + (trial % 7) as usize;
        let mut matrix = SimilarityMatrix::identity(n);
        for i in 0..n {
            for j in (i + 1)..n {
                matrix.set_symmetric(i, j, unit(rng.gen_range(0.0..=0.95)));
            }
        }
        let closure = transitive_closure(&matrix, norm, EPSILON).unwrap();
        // Output validates (reflexive, discernible, symmetric, transitive).
        assert!(
            SimilarityRelation::validate(closure.relation.matrix().clone(), norm, EPSILON).is_ok()
        );
        // Fixpoint within n − 1 compositions.
        assert!(
            closure.compositions <= (n - 1).max(1),
            "compositions {} at n={n}",
            closure.compositions
        );
        // Idempotent, bit for bit.
        let again = transitive_closure(closure.relation.matrix(), norm, EPSILON).unwrap();
        assert_eq!(again.relation.matrix(), closure.relation.matrix());
        assert_eq!(again.raised_entries, 0);
        // Strict discernibility preserved, and the input is never lowered.
        for i in 0..n {
            for j in 0..n {
                let value = closure.relation.similarity(i, j).get();
                assert!(value >= matrix.get(i, j).get());
                if i != j {
                    assert!(value <= 1.0 - EPSILON);
                }
            }
        }
    }
    finish(
        7,
        "closure validates, is idempotent, preserves discernibility, fixpoint within n-1 compositions (1000 trials)",
        start,
        Duration::from_secs(30),
    );
}

#[test]
fn criterion_8_oracle_equivalence_roundtrip_and_cli() {
    let start = Instant::now();

    // Engine/oracle equivalence: exhaustive at n ≤ 5.
    for n in 1..=5usize {
        for norm in TNorm::ALL {
            let (_, s) = oracle::random_valid_model(800 + n as u64, n, norm);
            for p in subsets(n) {
                for q in subsets(n) {
                    let i = degree_of_implication(&p, &q, &s).unwrap().get();
                    assert!((i - oracle::oracle_implication(&p, &q, &s)).abs() <= EPSILON);
                    let c = degree_of_consistence(&p, &q, &s).unwrap().get();
                    assert!((c - oracle::oracle_consistence(&p, &q, &s)).abs() <= EPSILON);
                }
            }
        }
    }
    // Randomized at n = 8, 1000 models.
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for trial in 0..1000u64 {
        let norm = TNorm::ALL[(trial % 3) as usize];
        let (_, s) = oracle::random_valid_model(trial ^ 0x8888, 8, norm);
        for _ in 0..4 {
            let p = oracle::random_proposition(&mut rng, 8);
            let q = oracle::random_proposition(&mut rng, 8);
            let i = degree_of_implication(&p, &q, &s).unwrap().get();
            assert!((i - oracle::oracle_implication(&p, &q, &s)).abs() <= EPSILON);
        }
    }
    // Grid-residuum-backed paths carry the 2e-3 grid tolerance.
    for trial in 0..200u64 {
        let norm = TNorm::ALL[(trial % 3) as usize];
        let n = 2 + (trial % 7) as usize;
        let (_, s) = oracle::random_valid_model(trial.wrapping_mul(37), n, norm);
        let partition = oracle::random_partition(&mut rng, n);
        let evidence =
            EvidentialSet::new(oracle::random_nonempty_proposition(&mut rng, n)).unwrap();
        let q = oracle::random_proposition(&mut rng, n);
        for mode in [GmpMode::Necessity, GmpMode::Possibility] {
            let expected = oracle::oracle_gmp_bound(&partition, &q, &evidence, &s, norm, mode);
            let problem =
                GmpProblem::tightest(partition.clone(), q.clone(), &evidence, &s, mode).unwrap();
            let got = match mode {
                GmpMode::Necessity => gmp_necessity(&problem, &evidence, &s, EPSILON),
                GmpMode::Possibility => gmp_possibility(&problem, &evidence, &s, EPSILON),
            }
            .unwrap()
            .value
            .get();
            assert!((got - expected).abs() <= GRID_TOLERANCE);
        }
    }

    // DSL round-trip on 500 generated knowledge bases.
    for seed in 0..500u64 {
        let text = generate_kb_text(seed);
        let first = parse_kb(&text).expect("generated KB parses");
        let canonical = serialize_kb(&first);
        let second = parse_kb(&canonical).expect("canonical KB parses");
        assert_eq!(first, second, "round trip at seed {seed}");
        assert_eq!(serialize_kb(&second), canonical);
    }

    // CLI golden outputs on the worked KB are byte-stable.
    let worked = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/worked.pkb");
    let run = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_similog"))
            .args(args)
            .output()
            .expect("binary runs")
    };
    let cases: Vec<(Vec<&str>, &str)> = vec![
        (vec!["query", worked, "I(p|q)"], "0.600000\n"),
        (vec!["query", worked, "nec(q|p)"], "0.600000\n"),
        (vec!["query", worked, "gmp_nec(P, q)"], "0.600000\n"),
        (vec!["query", worked, "pi(1, p)"], "{w0}\n"),
        (
            vec!["closure", worked, "--check-only"],
            "0 entries raised\n",
        ),
    ];
    for (args, expected) in &cases {
        let first = run(args);
        assert_eq!(String::from_utf8(first.stdout.clone()).unwrap(), *expected);
        let second = run(args);
        assert_eq!(first.stdout, second.stdout, "byte stability {args:?}");
    }
    let closure_output = run(&["closure", worked]);
    assert_eq!(
        String::from_utf8(closure_output.stdout).unwrap(),
        std::fs::read_to_string(worked).unwrap()
    );

    finish(
        8,
        "engine/oracle equivalence, 500-KB DSL round trip, byte-stable CLI goldens",
        start,
        Duration::from_secs(60),
    );
}

/// Deterministic random KB text for the round-trip sweep.
fn generate_kb_text(seed: u64) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=6usize);
    let mut text = String::new();
    if rng.gen_bool(0.7) {
        let norm = ["min", "lukasiewicz", "product"][rng.gen_range(0..3)];
        text.push_str(&format!("tnorm {norm}\n"));
    }
    let labels: Vec<String> = (0..n).map(|i| format!("w{i}")).collect();
    text.push_str(&format!("worlds {}\n", labels.join(" ")));
    let mut sim_lines = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(0.5) {
                let k: u32 = rng.gen_range(0..=999_999);
                sim_lines.push(format!("  w{i} w{j} 0.{k:06}"));
            }
        }
    }
    if !sim_lines.is_empty() {
        text.push_str(&format!("sim {{\n{}\n}}\n", sim_lines.join("\n")));
    }
    let prop_count = rng.gen_range(1..=4usize);
    for p in 0..prop_count {
        let members: Vec<String> = (0..n)
            .filter(|_| rng.gen_bool(0.5))
            .map(|w| format!("w{w}"))
            .collect();
        if members.is_empty() {
            text.push_str(&format!("prop p{p} = {{ }}\n"));
        } else {
            text.push_str(&format!("prop p{p} = {{ {} }}\n", members.join(", ")));
        }
    }
    let pivot = rng.gen_range(0..n);
    text.push_str(&format!("evidence = {{ w{pivot} }}\n"));
    if rng.gen_bool(0.5) {
        let blocks: Vec<String> = (0..rng.gen_range(1..=prop_count))
            .map(|p| format!("p{p}"))
            .collect();
        text.push_str(&format!("partition Q = [ {} ]\n", blocks.join(", ")));
    }
    if rng.gen_bool(0.5) {
        let k: u32 = rng.gen_range(0..=999_999);
        text.push_str(&format!("necessity t {{\n  p0 0.{k:06}\n}}\n"));
    }
    if rng.gen_bool(0.3) {
        let k: u32 = rng.gen_range(0..=999_999);
        text.push_str(&format!("cond_necessity t {{\n  p0 | p0 0.{k:06}\n}}\n"));
    }
    text
}
