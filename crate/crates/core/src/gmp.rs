//! The generalized modus ponens over a partition: combining unconditioned
//! and conditional distribution tables with the t-norm to bound the
//! necessity or possibility of a consequent.
//!
//! In necessity mode, tables satisfying the hypothesis bounds guarantee
//! `sup over blocks p of Nec(q|p) ⊗ Nec(p) ≤ I(q|E)`; in possibility mode,
//! `sup over blocks p of Poss(q|p) ⊗ Poss(p) ≥ C(q|E)`. Both generalize the
//! two-valued modus ponens, which they reduce to under the identity
//! similarity.

use thiserror::Error;

use crate::distributions::{
    tightest_conditional_necessity, tightest_conditional_possibility, tightest_necessity,
    tightest_possibility,
};
use crate::measures::degree_of_implication;
use crate::similarity::SimilarityRelation;
use crate::tnorm::UnitValue;
use crate::world::{EvidentialSet, Partition, Proposition, WorldError};

/// Whether the problem carries necessity (lower) or possibility (upper)
/// tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GmpMode {
    Necessity,
    Possibility,
}

/// A GMP instance: a partition, a consequent, and one prior plus one
/// conditional value per block.
#[derive(Debug, Clone, PartialEq)]
pub struct GmpProblem {
    partition: Partition,
    consequent: Proposition,
    prior: Vec<UnitValue>,
    conditional: Vec<UnitValue>,
    mode: GmpMode,
}

/// One table entry exceeding the hypothesis bound it must respect, with the
/// tight value it was checked against.
#[derive(Debug, Clone, PartialEq)]
pub struct HypothesisViolation {
    pub block: usize,
    /// True when the conditional table entry is at fault, false for the
    /// prior.
    pub conditional: bool,
    pub declared: f64,
    pub tight: f64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GmpError {
    #[error("expected a problem in {expected:?} mode, got {actual:?}")]
    WrongMode { expected: GmpMode, actual: GmpMode },
    #[error("tables define {given} values for {blocks} partition blocks")]
    IncompleteTable { blocks: usize, given: usize },
    #[error("{} hypothesis bound violation(s)", .0.len())]
    HypothesisViolations(Vec<HypothesisViolation>),
    #[error(transparent)]
    World(#[from] WorldError),
}

/// The combined bound plus the block set attaining it.
#[derive(Debug, Clone, PartialEq)]
pub struct GmpOutcome {
    pub value: UnitValue,
    /// Indices of every partition block attaining the supremum.
    pub argmax_blocks: Vec<usize>,
}

impl GmpProblem {
    /// Builds a problem from per-block tables. `prior` and `conditional`
    /// must each assign a value to every block, in block order.
    pub fn new(
        partition: Partition,
        consequent: Proposition,
        prior: Vec<UnitValue>,
        conditional: Vec<UnitValue>,
        mode: GmpMode,
    ) -> Result<Self, GmpError> {
        let blocks = partition.blocks().len();
        if prior.len() != blocks || conditional.len() != blocks {
            return Err(GmpError::IncompleteTable {
                blocks,
                given: prior.len().min(conditional.len()),
            });
        }
        if consequent.universe_size() != partition.universe_size() {
            return Err(WorldError::UniverseMismatch(
                consequent.universe_size(),
                partition.universe_size(),
            )
            .into());
        }
        Ok(GmpProblem {
            partition,
            consequent,
            prior,
            conditional,
            mode,
        })
    }

    /// Builds the problem whose tables are exactly the tightest values the
    /// hypotheses allow.
    pub fn tightest(
        partition: Partition,
        consequent: Proposition,
        evidence: &EvidentialSet,
        s: &SimilarityRelation,
        mode: GmpMode,
    ) -> Result<Self, GmpError> {
        let mut prior = Vec::with_capacity(partition.blocks().len());
        let mut conditional = Vec::with_capacity(partition.blocks().len());
        for block in partition.blocks() {
            let (unconditioned, cond) = match mode {
                GmpMode::Necessity => (
                    tightest_necessity(block, evidence, s)?,
                    tightest_conditional_necessity(&consequent, block, evidence, s)?,
                ),
                GmpMode::Possibility => (
                    tightest_possibility(block, evidence, s)?,
                    tightest_conditional_possibility(&consequent, block, evidence, s)?,
                ),
            };
            prior.push(unconditioned);
            conditional.push(cond);
        }
        GmpProblem::new(partition, consequent, prior, conditional, mode)
    }

    pub fn mode(&self) -> GmpMode {
        self.mode
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn consequent(&self) -> &Proposition {
        &self.consequent
    }

    fn check_hypotheses(
        &self,
        evidence: &EvidentialSet,
        s: &SimilarityRelation,
        eps: f64,
    ) -> Result<(), GmpError> {
        let mut violations = Vec::new();
        for (index, block) in self.partition.blocks().iter().enumerate() {
            let (tight_prior, tight_cond, upper) = match self.mode {
                GmpMode::Necessity => (
                    tightest_necessity(block, evidence, s)?,
                    tightest_conditional_necessity(&self.consequent, block, evidence, s)?,
                    true,
                ),
                GmpMode::Possibility => (
                    tightest_possibility(block, evidence, s)?,
                    tightest_conditional_possibility(&self.consequent, block, evidence, s)?,
                    false,
                ),
            };
            let check = |declared: f64, tight: f64| {
                if upper {
                    declared > tight + eps
                } else {
                    declared < tight - eps
                }
            };
            if check(self.prior[index].get(), tight_prior.get()) {
                violations.push(HypothesisViolation {
                    block: index,
                    conditional: false,
                    declared: self.prior[index].get(),
                    tight: tight_prior.get(),
                });
            }
            if check(self.conditional[index].get(), tight_cond.get()) {
                violations.push(HypothesisViolation {
                    block: index,
                    conditional: true,
                    declared: self.conditional[index].get(),
                    tight: tight_cond.get(),
                });
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(GmpError::HypothesisViolations(violations))
        }
    }

    fn combine(&self, s: &SimilarityRelation) -> GmpOutcome {
        let norm = s.norm();
        let terms: Vec<UnitValue> = self
            .prior
            .iter()
            .zip(&self.conditional)
            .map(|(&prior, &cond)| norm.apply(cond, prior))
            .collect();
        let value = terms.iter().copied().fold(UnitValue::ZERO, UnitValue::max);
        let argmax_blocks = terms
            .iter()
            .enumerate()
            .filter_map(|(i, t)| (t.get() == value.get()).then_some(i))
            .collect();
        GmpOutcome {
            value,
            argmax_blocks,
        }
    }
}

/// Necessity-mode GMP: validates the hypothesis bounds, then returns
/// `sup over blocks of conditional ⊗ prior`, a sound lower bound of
/// `I(q|E)`.
pub fn gmp_necessity(
    problem: &GmpProblem,
    evidence: &EvidentialSet,
    s: &SimilarityRelation,
    eps: f64,
) -> Result<GmpOutcome, GmpError> {
    if problem.mode != GmpMode::Necessity {
        return Err(GmpError::WrongMode {
            expected: GmpMode::Necessity,
            actual: problem.mode,
        });
    }
    problem.check_hypotheses(evidence, s, eps)?;
    Ok(problem.combine(s))
}

/// Possibility-mode GMP: validates the hypothesis bounds, then returns
/// `sup over blocks of conditional ⊗ prior`, a sound upper bound of
/// `C(q|E)`.
pub fn gmp_possibility(
    problem: &GmpProblem,
    evidence: &EvidentialSet,
    s: &SimilarityRelation,
    eps: f64,
) -> Result<GmpOutcome, GmpError> {
    if problem.mode != GmpMode::Possibility {
        return Err(GmpError::WrongMode {
            expected: GmpMode::Possibility,
            actual: problem.mode,
        });
    }
    problem.check_hypotheses(evidence, s, eps)?;
    Ok(problem.combine(s))
}

/// The simplest chained form: `I(p|r) ⊗ I(r|q)`, a certified lower bound of
/// `I(p|q)`.
pub fn simple_gmp_chain(
    p: &Proposition,
    r: &Proposition,
    q: &Proposition,
    s: &SimilarityRelation,
) -> Result<UnitValue, WorldError> {
    let first = degree_of_implication(p, r, s)?;
    let second = degree_of_implication(r, q, s)?;
    Ok(s.norm().apply(first, second))
}
