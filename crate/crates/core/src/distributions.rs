//! Tightest unconditioned and conditional necessity/possibility values, and
//! validation of user-declared distribution tables against them.
//!
//! A necessity distribution is any lower bound of `I(·|E)`; a possibility
//! distribution is any upper bound of `C(·|E)`. Their conditional forms are
//! bounded by residua of single-world implication degrees:
//!
//! - `Nec(q|p) ≤ inf over w ∈ E of I(q|w) ⊙ I(p|w)`
//! - `Poss(q|p) ≥ sup over w ∈ E of I(q|w) ⊙ I(p|w)`
//!
//! Since `w` ranges over single worlds, `I(·|w)` and `C(·|w)` coincide there
//! (the infimum collapses on singletons), so no further choice arises; see
//! [`crate::measures::world_similarity_to_set`].

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::measures::{degree_of_consistence, degree_of_implication, world_similarity_to_set};
use crate::similarity::SimilarityRelation;
use crate::tnorm::UnitValue;
use crate::world::{EvidentialSet, Proposition, WorldError};

/// `I(p|E)`: the greatest value a valid necessity distribution may assign to
/// `p`.
pub fn tightest_necessity(
    p: &Proposition,
    evidence: &EvidentialSet,
    s: &SimilarityRelation,
) -> Result<UnitValue, WorldError> {
    degree_of_implication(p, evidence.as_proposition(), s)
}

/// `C(p|E)`: the least value a valid possibility distribution may assign to
/// `p`.
pub fn tightest_possibility(
    p: &Proposition,
    evidence: &EvidentialSet,
    s: &SimilarityRelation,
) -> Result<UnitValue, WorldError> {
    degree_of_consistence(p, evidence.as_proposition(), s)
}

/// `inf over w ∈ E of I(q|w) ⊙ I(p|w)`: the greatest valid conditional
/// necessity of consequent `q` given antecedent `p`.
pub fn tightest_conditional_necessity(
    q: &Proposition,
    p: &Proposition,
    evidence: &EvidentialSet,
    s: &SimilarityRelation,
) -> Result<UnitValue, WorldError> {
    let norm = s.norm();
    let mut result = UnitValue::ONE;
    for w in evidence.indices() {
        let consequent = world_similarity_to_set(q, w, s)?;
        let antecedent = world_similarity_to_set(p, w, s)?;
        result = result.min(norm.residuum(consequent, antecedent));
    }
    Ok(result)
}

/// `sup over w ∈ E of I(q|w) ⊙ I(p|w)`: the least valid conditional
/// possibility of consequent `q` given antecedent `p`.
pub fn tightest_conditional_possibility(
    q: &Proposition,
    p: &Proposition,
    evidence: &EvidentialSet,
    s: &SimilarityRelation,
) -> Result<UnitValue, WorldError> {
    let norm = s.norm();
    let mut result = UnitValue::ZERO;
    for w in evidence.indices() {
        let consequent = world_similarity_to_set(q, w, s)?;
        let antecedent = world_similarity_to_set(p, w, s)?;
        result = result.max(norm.residuum(consequent, antecedent));
    }
    Ok(result)
}

/// The four table shapes a knowledge base may declare.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TableKind {
    Necessity,
    Possibility,
    ConditionalNecessity,
    ConditionalPossibility,
}

impl TableKind {
    pub fn is_conditional(self) -> bool {
        matches!(
            self,
            TableKind::ConditionalNecessity | TableKind::ConditionalPossibility
        )
    }

    pub fn keyword(self) -> &'static str {
        match self {
            TableKind::Necessity => "necessity",
            TableKind::Possibility => "possibility",
            TableKind::ConditionalNecessity => "cond_necessity",
            TableKind::ConditionalPossibility => "cond_possibility",
        }
    }
}

/// A table entry key: a proposition name, or a (consequent, antecedent) name
/// pair for conditional tables.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TableKey {
    pub consequent: String,
    pub antecedent: Option<String>,
}

impl TableKey {
    pub fn plain(name: impl Into<String>) -> Self {
        TableKey {
            consequent: name.into(),
            antecedent: None,
        }
    }

    pub fn conditional(consequent: impl Into<String>, antecedent: impl Into<String>) -> Self {
        TableKey {
            consequent: consequent.into(),
            antecedent: Some(antecedent.into()),
        }
    }
}

impl fmt::Display for TableKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.antecedent {
            Some(antecedent) => write!(f, "{} | {}", self.consequent, antecedent),
            None => f.write_str(&self.consequent),
        }
    }
}

/// A declared, possibly partial, distribution table over named propositions.
#[derive(Debug, Clone, PartialEq)]
pub struct DistributionTable {
    kind: TableKind,
    entries: BTreeMap<TableKey, UnitValue>,
}

impl DistributionTable {
    pub fn new(kind: TableKind) -> Self {
        DistributionTable {
            kind,
            entries: BTreeMap::new(),
        }
    }

    pub fn kind(&self) -> TableKind {
        self.kind
    }

    /// Inserts an entry; the key shape must match the table kind. Returns the
    /// previous value when the key was already present.
    pub fn insert(&mut self, key: TableKey, value: UnitValue) -> Option<UnitValue> {
        debug_assert_eq!(key.antecedent.is_some(), self.kind.is_conditional());
        self.entries.insert(key, value)
    }

    pub fn get(&self, key: &TableKey) -> Option<UnitValue> {
        self.entries.get(key).copied()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&TableKey, UnitValue)> {
        self.entries.iter().map(|(k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// One invalid table entry, carrying the tight value it must respect.
#[derive(Debug, Clone, PartialEq)]
pub enum TableProblem {
    UnresolvedName {
        key: TableKey,
        name: String,
    },
    BoundViolation {
        key: TableKey,
        declared: f64,
        tight: f64,
        upper: bool,
    },
}

impl fmt::Display for TableProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableProblem::UnresolvedName { key, name } => {
                write!(f, "entry {key}: unknown proposition {name:?}")
            }
            TableProblem::BoundViolation {
                key,
                declared,
                tight,
                upper,
            } => {
                let relation = if *upper {
                    "exceeds upper bound"
                } else {
                    "is below lower bound"
                };
                write!(f, "entry {key}: declared {declared} {relation} {tight}")
            }
        }
    }
}

/// Report of every violating entry in a table.
#[derive(Debug, Clone, PartialEq, Error)]
pub struct TableReport {
    pub problems: Vec<TableProblem>,
}

impl fmt::Display for TableReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} table bound violation(s)", self.problems.len())?;
        for p in &self.problems {
            write!(f, "\n  {p}")?;
        }
        Ok(())
    }
}

/// Checks every entry of `table` against its tightest counterpart with
/// tolerance `eps`: necessity-like entries must not exceed the tight value,
/// possibility-like entries must not fall below it.
pub fn validate_table(
    table: &DistributionTable,
    propositions: &BTreeMap<String, Proposition>,
    evidence: &EvidentialSet,
    s: &SimilarityRelation,
    eps: f64,
) -> Result<(), TableReport> {
    let mut problems = Vec::new();
    for (key, declared) in table.entries() {
        let mut resolve = |name: &str| -> Option<Proposition> {
            let found = propositions.get(name).cloned();
            if found.is_none() {
                problems.push(TableProblem::UnresolvedName {
                    key: key.clone(),
                    name: name.to_string(),
                });
            }
            found
        };
        let Some(consequent) = resolve(&key.consequent) else {
            continue;
        };
        let antecedent = match &key.antecedent {
            Some(name) => match resolve(name) {
                Some(p) => Some(p),
                None => continue,
            },
            None => None,
        };
        let (tight, upper) = match (table.kind(), antecedent) {
            (TableKind::Necessity, None) => (tightest_necessity(&consequent, evidence, s), true),
            (TableKind::Possibility, None) => {
                (tightest_possibility(&consequent, evidence, s), false)
            }
            (TableKind::ConditionalNecessity, Some(p)) => (
                tightest_conditional_necessity(&consequent, &p, evidence, s),
                true,
            ),
            (TableKind::ConditionalPossibility, Some(p)) => (
                tightest_conditional_possibility(&consequent, &p, evidence, s),
                false,
            ),
            _ => unreachable!("key shape enforced at insertion"),
        };
        let tight = tight
            .expect("table propositions live on the KB universe")
            .get();
        let declared = declared.get();
        let violated = if upper {
            declared > tight + eps
        } else {
            declared < tight - eps
        };
        if violated {
            problems.push(TableProblem::BoundViolation {
                key: key.clone(),
                declared,
                tight,
                upper,
            });
        }
    }
    if problems.is_empty() {
        Ok(())
    } else {
        Err(TableReport { problems })
    }
}
