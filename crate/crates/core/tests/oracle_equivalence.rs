//! Certifies the engine against the brute-force reference implementations:
//! exhaustive subset sweeps on small universes, randomized sweeps at n = 8．
//! Closed-form code paths must agree to 1e-9; paths compared against the
//! grid-search residuum carry the 2e-3 grid tolerance.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use similog::distributions::{
    tightest_conditional_necessity, tightest_conditional_possibility, tightest_necessity,
    tightest_possibility,
};
use similog::gmp::{gmp_necessity, gmp_possibility, GmpMode, GmpProblem};
use similog::measures::{degree_of_consistence, degree_of_implication, world_similarity_to_set};
use similog::world::{EvidentialSet, Proposition};
use similog::{TNorm, EPSILON};

use similog_oracle as oracle;

const GRID_TOLERANCE: f64 = 2e-3;

fn subsets(n: usize) -> impl Iterator<Item = Proposition> {
    (0u32..(1 << n))
        .map(move |mask| Proposition::from_indices(n, (0..n).filter(move |i| mask >> i & 1 == 1)))
}

#[test]
fn implication_and_consistence_match_oracle_exhaustively() {
    for n in 1..=5usize {
        for norm in TNorm::ALL {
            for seed in [0u64, 1] {
                let (_, s) = oracle::random_valid_model(seed ^ (n as u64) << 8, n, norm);
                for p in subsets(n) {
                    for q in subsets(n) {
                        let i = degree_of_implication(&p, &q, &s).unwrap().get();
                        assert!(
                            (i - oracle::oracle_implication(&p, &q, &s)).abs() <= EPSILON,
                            "I mismatch at n={n} {norm}"
                        );
                        let c = degree_of_consistence(&p, &q, &s).unwrap().get();
                        assert!(
                            (c - oracle::oracle_consistence(&p, &q, &s)).abs() <= EPSILON,
                            "C mismatch at n={n} {norm}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn implication_matches_modal_oracle() {
    for n in 1..=5usize {
        let (_, s) = oracle::random_valid_model(97 + n as u64, n, TNorm::Min);
        for p in subsets(n) {
            for q in subsets(n).filter(|q| !q.is_empty()) {
                let direct = degree_of_implication(&p, &q, &s).unwrap().get();
                let modal = oracle::oracle_implication_via_modal(&p, &q, &s);
                assert!(
                    (direct - modal).abs() <= EPSILON,
                    "modal-sup mismatch at n={n}: {direct} vs {modal}"
                );
                // The two independent oracles agree with each other too.
                let nested = oracle::oracle_implication(&p, &q, &s);
                assert!((nested - modal).abs() <= EPSILON);
            }
        }
    }
}

#[test]
fn singleton_collapse_matches_both_measures() {
    let (_, s) = oracle::random_valid_model(5, 5, TNorm::Product);
    for p in subsets(5) {
        for w in 0..5 {
            let collapsed = world_similarity_to_set(&p, w, &s).unwrap().get();
            let singleton = Proposition::from_indices(5, [w]);
            let via_i = degree_of_implication(&p, &singleton, &s).unwrap().get();
            let via_c = degree_of_consistence(&p, &singleton, &s).unwrap().get();
            assert_eq!(collapsed, via_i);
            assert_eq!(collapsed, via_c);
        }
    }
}

#[test]
fn randomized_measures_at_n8() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xfeed);
    for trial in 0..1000u64 {
        let norm = TNorm::ALL[(trial % 3) as usize];
        let (_, s) = oracle::random_valid_model(trial, 8, norm);
        for _ in 0..5 {
            let p = oracle::random_proposition(&mut rng, 8);
            let q = oracle::random_proposition(&mut rng, 8);
            let i = degree_of_implication(&p, &q, &s).unwrap().get();
            assert!((i - oracle::oracle_implication(&p, &q, &s)).abs() <= EPSILON);
            let c = degree_of_consistence(&p, &q, &s).unwrap().get();
            assert!((c - oracle::oracle_consistence(&p, &q, &s)).abs() <= EPSILON);
        }
    }
}

#[test]
fn conditional_tightest_values_match_grid_residua() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0ffee);
    for trial in 0..300u64 {
        let norm = TNorm::ALL[(trial % 3) as usize];
        let n = 2 + (trial % 6) as usize;
        let (_, s) = oracle::random_valid_model(trial.wrapping_mul(31), n, norm);
        let e = EvidentialSet::new(oracle::random_nonempty_proposition(&mut rng, n)).unwrap();
        let q = oracle::random_proposition(&mut rng, n);
        let p = oracle::random_proposition(&mut rng, n);

        let mut grid_nec = 1.0f64;
        let mut grid_poss = 0.0f64;
        for w in e.indices() {
            let e_world = Proposition::from_indices(n, [w]);
            let r = oracle::grid_residuum(
                norm,
                oracle::oracle_implication(&q, &e_world, &s),
                oracle::oracle_implication(&p, &e_world, &s),
            );
            grid_nec = grid_nec.min(r);
            grid_poss = grid_poss.max(r);
        }
        let nec = tightest_conditional_necessity(&q, &p, &e, &s)
            .unwrap()
            .get();
        assert!(
            (nec - grid_nec).abs() <= GRID_TOLERANCE,
            "cond nec {nec} vs grid {grid_nec} ({norm}, n={n})"
        );
        let poss = tightest_conditional_possibility(&q, &p, &e, &s)
            .unwrap()
            .get();
        assert!(
            (poss - grid_poss).abs() <= GRID_TOLERANCE,
            "cond poss {poss} vs grid {grid_poss} ({norm}, n={n})"
        );
    }
}

#[test]
fn gmp_bound_matches_oracle_on_200_models() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xabba);
    for trial in 0..200u64 {
        let norm = TNorm::ALL[(trial % 3) as usize];
        let n = 2 + (trial % 7) as usize;
        let (_, s) = oracle::random_valid_model(trial.wrapping_mul(101), n, norm);
        let partition = oracle::random_partition(&mut rng, n);
        let e = EvidentialSet::new(oracle::random_nonempty_proposition(&mut rng, n)).unwrap();
        let q = oracle::random_proposition(&mut rng, n);

        for mode in [GmpMode::Necessity, GmpMode::Possibility] {
            let expected = oracle::oracle_gmp_bound(&partition, &q, &e, &s, norm, mode);
            let problem = GmpProblem::tightest(partition.clone(), q.clone(), &e, &s, mode).unwrap();
            let got = match mode {
                GmpMode::Necessity => gmp_necessity(&problem, &e, &s, EPSILON),
                GmpMode::Possibility => gmp_possibility(&problem, &e, &s, EPSILON),
            }
            .unwrap()
            .value
            .get();
            assert!(
                (got - expected).abs() <= GRID_TOLERANCE,
                "gmp {mode:?} {got} vs oracle {expected} ({norm}, n={n})"
            );
        }
    }
}

#[test]
fn gmp_oracle_is_exact_in_the_classical_limit() {
    // Identity similarity: both routes land exactly on 0 or 1 and agree.
    use similog::similarity::SimilarityRelation;
    for n in 2..=4usize {
        let s = SimilarityRelation::identity(n, TNorm::Min);
        let partition =
            similog::world::Partition::new((0..n).map(|i| Proposition::from_indices(n, [i])).collect())
                .unwrap();
        for em in 1u32..(1 << n) {
            let e = EvidentialSet::new(Proposition::from_indices(
                n,
                (0..n).filter(|i| em >> i & 1 == 1),
            ))
            .unwrap();
            for q in subsets(n) {
                for mode in [GmpMode::Necessity, GmpMode::Possibility] {
                    let expected = oracle::oracle_gmp_bound(&partition, &q, &e, &s, TNorm::Min, mode);
                    assert!(expected == 0.0 || expected == 1.0);
                    let problem =
                        GmpProblem::tightest(partition.clone(), q.clone(), &e, &s, mode).unwrap();
                    let got = match mode {
                        GmpMode::Necessity => gmp_necessity(&problem, &e, &s, EPSILON),
                        GmpMode::Possibility => gmp_possibility(&problem, &e, &s, EPSILON),
                    }
                    .unwrap()
                    .value
                    .get();
                    assert_eq!(got, expected, "classical gmp {mode:?} n={n}");
                }
            }
        }
    }
}

#[test]
fn tightest_values_reduce_to_measures() {
    let (_, s) = oracle::random_valid_model(123, 6, TNorm::Lukasiewicz);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..200 {
        let e = EvidentialSet::new(oracle::random_nonempty_proposition(&mut rng, 6)).unwrap();
        let p = oracle::random_proposition(&mut rng, 6);
        assert_eq!(
            tightest_necessity(&p, &e, &s).unwrap().get(),
            oracle::oracle_implication(&p, e.as_proposition(), &s)
        );
        assert_eq!(
            tightest_possibility(&p, &e, &s).unwrap().get(),
            oracle::oracle_consistence(&p, e.as_proposition(), &s)
        );
    }
}
