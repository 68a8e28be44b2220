//! Graded degrees of implication and consistence, and the graded possibility
//! operator Π_α with its induced necessary-implication judgement.
//!
//! For propositions `p`, `q` over a validated similarity relation `S`:
//!
//! - `I(p|q) = min over w′ ∈ q of max over w ∈ p of S(w, w′)` — the minimal
//!   stretching of `p` needed to cover `q`;
//! - `C(p|q) = max over w′ ∈ q, w ∈ p of S(w, w′)` — the minimal stretching
//!   of `p` needed to intersect `q`.
//!
//! Empty arguments follow the complete-lattice conventions: an infimum over
//! the empty set is 1 and a supremum over the empty set is 0. Consequently
//! `I(p|∅) = 1`, `I(∅|q) = 0` for non-empty `q`, and `C` is 0 whenever either
//! argument is empty.

use crate::similarity::SimilarityRelation;
use crate::tnorm::UnitValue;
use crate::world::{Proposition, WorldError};

fn check_on_relation(p: &Proposition, s: &SimilarityRelation) -> Result<(), WorldError> {
    if p.universe_size() != s.size() {
        return Err(WorldError::UniverseMismatch(p.universe_size(), s.size()));
    }
    Ok(())
}

/// `I(p|q)`: the degree to which `q` necessarily implies `p`.
pub fn degree_of_implication(
    p: &Proposition,
    q: &Proposition,
    s: &SimilarityRelation,
) -> Result<UnitValue, WorldError> {
    check_on_relation(p, s)?;
    check_on_relation(q, s)?;
    let mut result = UnitValue::ONE; // inf over empty q
    for target in q.indices() {
        let mut reach = UnitValue::ZERO; // sup over empty p
        for source in p.indices() {
            reach = reach.max(s.similarity(source, target));
        }
        result = result.min(reach);
    }
    Ok(result)
}

/// `C(p|q)`: the degree to which `p` and `q` are consistent.
pub fn degree_of_consistence(
    p: &Proposition,
    q: &Proposition,
    s: &SimilarityRelation,
) -> Result<UnitValue, WorldError> {
    check_on_relation(p, s)?;
    check_on_relation(q, s)?;
    let mut result = UnitValue::ZERO;
    for target in q.indices() {
        for source in p.indices() {
            result = result.max(s.similarity(source, target));
        }
    }
    Ok(result)
}

/// `I(p|{w})`: the similarity between a single world and the nearest
/// `p`-world. For a singleton conditioning set the infimum collapses, so this
/// value equals both `I(p|{w})` and `C(p|{w})`.
pub fn world_similarity_to_set(
    p: &Proposition,
    world: usize,
    s: &SimilarityRelation,
) -> Result<UnitValue, WorldError> {
    check_on_relation(p, s)?;
    if world >= s.size() {
        return Err(WorldError::WorldIndexOutOfRange(world, s.size()));
    }
    let mut reach = UnitValue::ZERO;
    for source in p.indices() {
        reach = reach.max(s.similarity(source, world));
    }
    Ok(reach)
}

/// The worlds in which `p` is possible to degree `alpha`:
/// `{w : ∃ w′ ∈ p, S(w, w′) ≥ α − ε}`.
pub fn alpha_possible(
    p: &Proposition,
    alpha: UnitValue,
    s: &SimilarityRelation,
    eps: f64,
) -> Result<Proposition, WorldError> {
    check_on_relation(p, s)?;
    let members = (0..s.size())
        .map(|w| {
            p.indices()
                .any(|source| s.similarity(w, source).get() >= alpha.get() - eps)
        })
        .collect();
    Ok(Proposition::from_members(members))
}

/// Whether `q` necessarily implies `p` to degree `alpha`, i.e. `q` is
/// contained in the α-neighborhood of `p`.
pub fn necessarily_implies(
    q: &Proposition,
    p: &Proposition,
    alpha: UnitValue,
    s: &SimilarityRelation,
    eps: f64,
) -> Result<bool, WorldError> {
    let neighborhood = alpha_possible(p, alpha, s, eps)?;
    q.is_subset_of(&neighborhood)
}
