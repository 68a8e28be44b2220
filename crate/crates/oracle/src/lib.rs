//! Brute-force reference implementations of every measure, used only by the
//! test suites to certify the main engine, plus deterministic generators for
//! random valid models.
//!
//! The checking functions here share only data types with the engine: every
//! quantity is recomputed from first principles with plain nested loops, the
//! t-norm is re-implemented locally, and residua are found by grid search
//! (step 1e-3, which is why grid-backed comparisons carry a 2e-3 tolerance).
//! The one place engine code is invoked is [`random_valid_model`], which uses
//! the engine's transitive closure as a *generator*; its output is then
//! independently checked by `validate` and by the tests themselves.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use similog::gmp::GmpMode;
use similog::similarity::{transitive_closure, SimilarityMatrix, SimilarityRelation};
use similog::tnorm::{TNorm, UnitValue};
use similog::world::{EvidentialSet, Partition, Proposition, Universe};
use similog::EPSILON;

/// Local re-implementation of the three t-norms.
pub fn tnorm_apply(norm: TNorm, a: f64, b: f64) -> f64 {
    match norm {
        TNorm::Min => a.min(b),
        TNorm::Lukasiewicz => (a + b - 1.0).max(0.0),
        TNorm::Product => a * b,
    }
}

/// Grid search of `sup{c : b ⊗ c ≤ a}` over `c ∈ {0, 0.001, …, 1}`.
pub fn grid_residuum(norm: TNorm, a: f64, b: f64) -> f64 {
    let mut best = 0.0f64;
    for k in 0..=1000 {
        let c = k as f64 / 1000.0;
        if tnorm_apply(norm, b, c) <= a + EPSILON {
            best = best.max(c);
        }
    }
    best
}

/// `I(p|q)` by direct nested min/max loops. Conventions: inf over the empty
/// set is 1, sup over the empty set is 0.
pub fn oracle_implication(p: &Proposition, q: &Proposition, s: &SimilarityRelation) -> f64 {
    let mut result = 1.0f64;
    for target in 0..s.size() {
        if !q.contains(target) {
            continue;
        }
        let mut reach = 0.0f64;
        for source in 0..s.size() {
            if p.contains(source) {
                reach = reach.max(s.similarity(source, target).get());
            }
        }
        result = result.min(reach);
    }
    result
}

/// `C(p|q)` by direct nested max/max loops.
pub fn oracle_consistence(p: &Proposition, q: &Proposition, s: &SimilarityRelation) -> f64 {
    let mut result = 0.0f64;
    for target in 0..s.size() {
        if !q.contains(target) {
            continue;
        }
        for source in 0..s.size() {
            if p.contains(source) {
                result = result.max(s.similarity(source, target).get());
            }
        }
    }
    result
}

/// A second, independently derived oracle for `I`: the largest candidate
/// degree `α` such that every `q`-world sees some `p`-world at similarity at
/// least `α`. Candidates are the matrix values plus 0 and 1 (the supremum is
/// always attained at one of them on a finite model). Requires non-empty `q`.
pub fn oracle_implication_via_modal(
    p: &Proposition,
    q: &Proposition,
    s: &SimilarityRelation,
) -> f64 {
    let n = s.size();
    let mut candidates = vec![0.0f64, 1.0];
    for i in 0..n {
        for j in 0..n {
            candidates.push(s.similarity(i, j).get());
        }
    }
    let necessarily_implies = |alpha: f64| {
        (0..n).filter(|&w| q.contains(w)).all(|target| {
            (0..n)
                .filter(|&w| p.contains(w))
                .any(|source| s.similarity(source, target).get() >= alpha)
        })
    };
    let mut best = 0.0f64;
    for alpha in candidates {
        if alpha > best && necessarily_implies(alpha) {
            best = alpha;
        }
    }
    best
}

/// Recomputes the GMP bound from first principles: tightest tables by
/// nested loops, residua by grid search, combined with the local t-norm.
pub fn oracle_gmp_bound(
    partition: &Partition,
    q: &Proposition,
    evidence: &EvidentialSet,
    s: &SimilarityRelation,
    norm: TNorm,
    mode: GmpMode,
) -> f64 {
    let singleton = |w: usize| Proposition::from_indices(s.size(), [w]);
    let mut combined = 0.0f64;
    for block in partition.blocks() {
        let mut prior = match mode {
            GmpMode::Necessity => 1.0f64,
            GmpMode::Possibility => 0.0f64,
        };
        let mut conditional = prior;
        for w in evidence.indices() {
            let e_world = singleton(w);
            let residuum_here = grid_residuum(
                norm,
                oracle_implication(q, &e_world, s),
                oracle_implication(block, &e_world, s),
            );
            match mode {
                GmpMode::Necessity => {
                    prior = prior.min(oracle_implication(block, &e_world, s));
                    conditional = conditional.min(residuum_here);
                }
                GmpMode::Possibility => {
                    prior = prior.max(oracle_consistence(block, &e_world, s));
                    conditional = conditional.max(residuum_here);
                }
            }
        }
        combined = combined.max(tnorm_apply(norm, conditional, prior));
    }
    combined
}

/// Generates a reflexive symmetric matrix with off-diagonal entries uniform
/// in `[0, 0.95]`, closes it with the engine's max-⊗ closure, and validates
/// the result. Fully determined by `seed`.
pub fn random_valid_model(seed: u64, n: usize, norm: TNorm) -> (Universe, SimilarityRelation) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let universe = Universe::from_labels((0..n).map(|i| format!("w{i}"))).unwrap();
    let mut matrix = SimilarityMatrix::identity(n);
    for i in 0..n {
        for j in (i + 1)..n {
            let value = rng.gen_range(0.0..=0.95);
            matrix.set_symmetric(i, j, UnitValue::new(value).unwrap());
        }
    }
    let closure = transitive_closure(&matrix, norm, EPSILON).expect("generated input is closable");
    let relation = SimilarityRelation::validate(closure.relation.matrix().clone(), norm, EPSILON)
        .expect("closure output validates");
    (universe, relation)
}

/// A uniformly random subset of `n` worlds (possibly empty).
pub fn random_proposition(rng: &mut ChaCha8Rng, n: usize) -> Proposition {
    Proposition::from_members((0..n).map(|_| rng.gen_bool(0.5)).collect())
}

/// A uniformly random non-empty subset of `n` worlds.
pub fn random_nonempty_proposition(rng: &mut ChaCha8Rng, n: usize) -> Proposition {
    loop {
        let p = random_proposition(rng, n);
        if !p.is_empty() {
            return p;
        }
    }
}

/// A random partition of `n` worlds: a shuffled world order split at random
/// cut points into 1..=n non-empty blocks.
pub fn random_partition(rng: &mut ChaCha8Rng, n: usize) -> Partition {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let block_count = rng.gen_range(1..=n);
    let mut cuts: Vec<usize> = (1..n).collect();
    cuts.shuffle(rng);
    let mut cuts: Vec<usize> = cuts.into_iter().take(block_count - 1).collect();
    cuts.sort_unstable();
    cuts.push(n);
    let mut blocks = Vec::with_capacity(block_count);
    let mut start = 0;
    for cut in cuts {
        blocks.push(Proposition::from_indices(
            n,
            order[start..cut].iter().copied(),
        ));
        start = cut;
    }
    Partition::new(blocks).expect("cut construction yields a partition")
}
