//! Query evaluation over a validated knowledge base, with optional
//! witnesses, JSON records, and the JSON export document.

use std::collections::BTreeMap;

use serde_json::{json, Value};
use thiserror::Error;

use crate::distributions::{
    tightest_conditional_necessity, tightest_conditional_possibility, tightest_necessity,
    tightest_possibility, TableKey, TableKind,
};
use crate::gmp::{gmp_necessity, gmp_possibility, GmpError, GmpMode, GmpProblem};
use crate::kb::{KnowledgeBase, Query};
use crate::measures::{alpha_possible, world_similarity_to_set};
use crate::similarity::{
    transitive_closure, ClosureInputError, SimilarityRelation, ValidationReport,
};
use crate::tnorm::UnitValue;
use crate::world::{PartitionError, Proposition, Universe, WorldError};

/// Failure to obtain a validated similarity relation from a knowledge base.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SetupError {
    #[error("similarity relation failed validation: {0}")]
    Validation(#[from] ValidationReport),
    #[error(transparent)]
    Closure(#[from] ClosureInputError),
}

/// Evaluation failure for a single query.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("unknown proposition {0:?}")]
    UnknownProposition(String),
    #[error("unknown partition {0:?}")]
    UnknownPartition(String),
    #[error("partition {name:?} is invalid: {source}")]
    InvalidPartition {
        name: String,
        source: PartitionError,
    },
    #[error("no {kind} table named {name:?}")]
    MissingTable { kind: &'static str, name: String },
    #[error("table {table:?} has no entry for {key}")]
    MissingTableEntry { table: String, key: String },
    #[error(transparent)]
    Gmp(#[from] GmpError),
    #[error(transparent)]
    World(#[from] WorldError),
}

/// The value part of a query outcome.
#[derive(Debug, Clone, PartialEq)]
pub enum QueryResult {
    Degree(UnitValue),
    Worlds(Proposition),
    Truth(bool),
}

impl QueryResult {
    pub fn as_degree(&self) -> Option<UnitValue> {
        match self {
            QueryResult::Degree(v) => Some(*v),
            _ => None,
        }
    }

    /// Plain-text rendering: degrees as fixed 6-decimal numbers, world sets
    /// as `{w0, w1}`, truth values as `true`/`false`.
    pub fn render(&self, universe: &Universe) -> String {
        match self {
            QueryResult::Degree(v) => format_fixed(v.get()),
            QueryResult::Worlds(p) => p.render(universe),
            QueryResult::Truth(b) => b.to_string(),
        }
    }
}

/// Fixed 6-decimal rendering used for all numeric CLI output.
pub fn format_fixed(value: f64) -> String {
    format!("{value:.6}")
}

/// Explanation of where a query's value comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    /// The least-covered target world and its best source world.
    Implication {
        target: usize,
        source: usize,
        similarity: f64,
    },
    /// The closest pair across the two sets.
    Consistence {
        target: usize,
        source: usize,
        similarity: f64,
    },
    /// The evidence world attaining a conditional bound, with both
    /// single-world implication degrees and their residuum.
    Conditional {
        world: usize,
        consequent_similarity: f64,
        antecedent_similarity: f64,
        value: f64,
    },
    /// Partition blocks attaining the GMP supremum.
    GmpBlocks { blocks: Vec<String> },
    /// A world violating a necessary-implication judgement.
    Counterexample { world: usize },
}

impl Witness {
    pub fn render(&self, universe: &Universe) -> String {
        match self {
            Witness::Implication {
                target,
                source,
                similarity,
            } => format!(
                "witness: least-covered world {}; nearest source world {}; S = {}",
                universe.label(*target),
                universe.label(*source),
                format_fixed(*similarity)
            ),
            Witness::Consistence {
                target,
                source,
                similarity,
            } => format!(
                "witness: closest pair ({}, {}); S = {}",
                universe.label(*source),
                universe.label(*target),
                format_fixed(*similarity)
            ),
            Witness::Conditional {
                world,
                consequent_similarity,
                antecedent_similarity,
                value,
            } => format!(
                "witness: evidence world {}; I(consequent|w) = {}; I(antecedent|w) = {}; residuum = {}",
                universe.label(*world),
                format_fixed(*consequent_similarity),
                format_fixed(*antecedent_similarity),
                format_fixed(*value)
            ),
            Witness::GmpBlocks { blocks } => format!(
                "witness: supremum attained at block(s) {}",
                blocks.join(", ")
            ),
            Witness::Counterexample { world } => format!(
                "witness: world {} lies outside the alpha-neighborhood",
                universe.label(*world)
            ),
        }
    }

    fn to_json(&self, universe: &Universe) -> Value {
        match self {
            Witness::Implication {
                target,
                source,
                similarity,
            } => json!({
                "type": "implication",
                "target": universe.label(*target),
                "source": universe.label(*source),
                "similarity": similarity,
            }),
            Witness::Consistence {
                target,
                source,
                similarity,
            } => json!({
                "type": "consistence",
                "target": universe.label(*target),
                "source": universe.label(*source),
                "similarity": similarity,
            }),
            Witness::Conditional {
                world,
                consequent_similarity,
                antecedent_similarity,
                value,
            } => json!({
                "type": "conditional",
                "world": universe.label(*world),
                "consequent_similarity": consequent_similarity,
                "antecedent_similarity": antecedent_similarity,
                "residuum": value,
            }),
            Witness::GmpBlocks { blocks } => json!({
                "type": "gmp-blocks",
                "blocks": blocks,
            }),
            Witness::Counterexample { world } => json!({
                "type": "counterexample",
                "world": universe.label(*world),
            }),
        }
    }
}

/// Result of evaluating one query.
#[derive(Debug, Clone, PartialEq)]
pub struct QueryOutcome {
    pub result: QueryResult,
    pub witness: Option<Witness>,
}

/// A knowledge base paired with its validated similarity relation and the
/// comparison tolerance; the entry point for query evaluation.
pub struct Evaluator<'a> {
    kb: &'a KnowledgeBase,
    relation: SimilarityRelation,
    eps: f64,
}

impl<'a> Evaluator<'a> {
    /// Validates the knowledge base's similarity relation and builds an
    /// evaluator.
    pub fn new(kb: &'a KnowledgeBase, eps: f64) -> Result<Self, SetupError> {
        let relation =
            SimilarityRelation::validate(kb.similarity_matrix().clone(), kb.norm(), eps)?;
        Ok(Evaluator { kb, relation, eps })
    }

    /// Applies the transitive closure first, then validates. Returns the
    /// evaluator and the number of raised entries.
    pub fn with_auto_close(kb: &'a KnowledgeBase, eps: f64) -> Result<(Self, usize), SetupError> {
        let closure = transitive_closure(kb.similarity_matrix(), kb.norm(), eps)?;
        Ok((
            Evaluator {
                kb,
                relation: closure.relation,
                eps,
            },
            closure.raised_entries,
        ))
    }

    pub fn kb(&self) -> &KnowledgeBase {
        self.kb
    }

    pub fn relation(&self) -> &SimilarityRelation {
        &self.relation
    }

    pub fn epsilon(&self) -> f64 {
        self.eps
    }

    fn prop(&self, name: &str) -> Result<&Proposition, EvalError> {
        self.kb
            .proposition(name)
            .ok_or_else(|| EvalError::UnknownProposition(name.to_string()))
    }

    pub fn evaluate(&self, query: &Query) -> Result<QueryOutcome, EvalError> {
        match query {
            Query::Implication { p, q } => {
                let (value, witness) = self.implication_with_witness(self.prop(p)?, self.prop(q)?);
                Ok(QueryOutcome {
                    result: QueryResult::Degree(value),
                    witness,
                })
            }
            Query::Consistence { p, q } => {
                let (value, witness) = self.consistence_with_witness(self.prop(p)?, self.prop(q)?);
                Ok(QueryOutcome {
                    result: QueryResult::Degree(value),
                    witness,
                })
            }
            Query::AlphaPossible { alpha, p } => {
                let set = alpha_possible(self.prop(p)?, *alpha, &self.relation, self.eps)?;
                Ok(QueryOutcome {
                    result: QueryResult::Worlds(set),
                    witness: None,
                })
            }
            Query::NecessarilyImplies { q, p, alpha } => {
                let neighborhood = alpha_possible(self.prop(p)?, *alpha, &self.relation, self.eps)?;
                let q = self.prop(q)?;
                let counterexample = q.indices().find(|&w| !neighborhood.contains(w));
                Ok(QueryOutcome {
                    result: QueryResult::Truth(counterexample.is_none()),
                    witness: counterexample.map(|world| Witness::Counterexample { world }),
                })
            }
            Query::Necessity { p } => {
                let evidence = self.kb.evidence().as_proposition();
                let (value, witness) = self.implication_with_witness(self.prop(p)?, evidence);
                Ok(QueryOutcome {
                    result: QueryResult::Degree(value),
                    witness,
                })
            }
            Query::Possibility { p } => {
                let evidence = self.kb.evidence().as_proposition();
                let (value, witness) = self.consistence_with_witness(self.prop(p)?, evidence);
                Ok(QueryOutcome {
                    result: QueryResult::Degree(value),
                    witness,
                })
            }
            Query::ConditionalNecessity { q, p } => {
                self.conditional_with_witness(self.prop(q)?, self.prop(p)?, true)
            }
            Query::ConditionalPossibility { q, p } => {
                self.conditional_with_witness(self.prop(q)?, self.prop(p)?, false)
            }
            Query::GmpNecessity {
                partition,
                consequent,
                table,
            } => self.gmp(partition, consequent, table.as_deref(), GmpMode::Necessity),
            Query::GmpPossibility {
                partition,
                consequent,
                table,
            } => self.gmp(
                partition,
                consequent,
                table.as_deref(),
                GmpMode::Possibility,
            ),
        }
    }

    /// `I(p|q)` with the argmin/argmax pair. Ties resolve to the first world
    /// in universe order, so witnesses are deterministic.
    fn implication_with_witness(
        &self,
        p: &Proposition,
        q: &Proposition,
    ) -> (UnitValue, Option<Witness>) {
        let mut value = UnitValue::ONE;
        let mut witness = None;
        for target in q.indices() {
            let mut reach = UnitValue::ZERO;
            let mut best_source = None;
            for source in p.indices() {
                let s = self.relation.similarity(source, target);
                if best_source.is_none() || s.get() > reach.get() {
                    reach = s;
                    best_source = Some(source);
                }
            }
            if reach.get() < value.get() || witness.is_none() {
                value = value.min(reach);
                if let Some(source) = best_source {
                    witness = Some(Witness::Implication {
                        target,
                        source,
                        similarity: reach.get(),
                    });
                }
            }
        }
        if q.is_empty() || p.is_empty() {
            return (
                if q.is_empty() {
                    UnitValue::ONE
                } else {
                    UnitValue::ZERO
                },
                None,
            );
        }
        (value, witness)
    }

    fn consistence_with_witness(
        &self,
        p: &Proposition,
        q: &Proposition,
    ) -> (UnitValue, Option<Witness>) {
        let mut value = UnitValue::ZERO;
        let mut witness = None;
        for target in q.indices() {
            for source in p.indices() {
                let s = self.relation.similarity(source, target);
                if witness.is_none() || s.get() > value.get() {
                    value = value.max(s);
                    witness = Some(Witness::Consistence {
                        target,
                        source,
                        similarity: s.get(),
                    });
                }
            }
        }
        (value, witness)
    }

    fn conditional_with_witness(
        &self,
        q: &Proposition,
        p: &Proposition,
        necessity: bool,
    ) -> Result<QueryOutcome, EvalError> {
        let norm = self.relation.norm();
        let mut chosen: Option<Witness> = None;
        let mut value = if necessity {
            UnitValue::ONE
        } else {
            UnitValue::ZERO
        };
        for world in self.kb.evidence().indices() {
            let consequent = world_similarity_to_set(q, world, &self.relation)?;
            let antecedent = world_similarity_to_set(p, world, &self.relation)?;
            let residuum = norm.residuum(consequent, antecedent);
            let better = match (&chosen, necessity) {
                (None, _) => true,
                (Some(_), true) => residuum.get() < value.get(),
                (Some(_), false) => residuum.get() > value.get(),
            };
            if better {
                value = residuum;
                chosen = Some(Witness::Conditional {
                    world,
                    consequent_similarity: consequent.get(),
                    antecedent_similarity: antecedent.get(),
                    value: residuum.get(),
                });
            }
        }
        Ok(QueryOutcome {
            result: QueryResult::Degree(value),
            witness: chosen,
        })
    }

    fn gmp(
        &self,
        partition_name: &str,
        consequent_name: &str,
        table: Option<&str>,
        mode: GmpMode,
    ) -> Result<QueryOutcome, EvalError> {
        let block_names = self
            .kb
            .partitions()
            .get(partition_name)
            .ok_or_else(|| EvalError::UnknownPartition(partition_name.to_string()))?
            .clone();
        let partition = self
            .kb
            .partition(partition_name)
            .expect("name checked above")
            .map_err(|source| EvalError::InvalidPartition {
                name: partition_name.to_string(),
                source,
            })?;
        let consequent = self.prop(consequent_name)?.clone();
        let evidence = self.kb.evidence();
        let problem = match table {
            None => GmpProblem::tightest(partition, consequent, evidence, &self.relation, mode)?,
            Some(table_name) => {
                let (prior_kind, cond_kind) = match mode {
                    GmpMode::Necessity => (TableKind::Necessity, TableKind::ConditionalNecessity),
                    GmpMode::Possibility => {
                        (TableKind::Possibility, TableKind::ConditionalPossibility)
                    }
                };
                let prior_table = self.kb.table(prior_kind, table_name).ok_or_else(|| {
                    EvalError::MissingTable {
                        kind: prior_kind.keyword(),
                        name: table_name.to_string(),
                    }
                })?;
                let cond_table = self.kb.table(cond_kind, table_name).ok_or_else(|| {
                    EvalError::MissingTable {
                        kind: cond_kind.keyword(),
                        name: table_name.to_string(),
                    }
                })?;
                let mut prior = Vec::with_capacity(block_names.len());
                let mut conditional = Vec::with_capacity(block_names.len());
                for block in &block_names {
                    let key = TableKey::plain(block.clone());
                    prior.push(prior_table.get(&key).ok_or_else(|| {
                        EvalError::MissingTableEntry {
                            table: table_name.to_string(),
                            key: key.to_string(),
                        }
                    })?);
                    let key = TableKey::conditional(consequent_name, block.clone());
                    conditional.push(cond_table.get(&key).ok_or_else(|| {
                        EvalError::MissingTableEntry {
                            table: table_name.to_string(),
                            key: key.to_string(),
                        }
                    })?);
                }
                GmpProblem::new(partition, consequent, prior, conditional, mode)?
            }
        };
        let outcome = match mode {
            GmpMode::Necessity => gmp_necessity(&problem, evidence, &self.relation, self.eps)?,
            GmpMode::Possibility => gmp_possibility(&problem, evidence, &self.relation, self.eps)?,
        };
        let blocks = outcome
            .argmax_blocks
            .iter()
            .map(|&i| block_names[i].clone())
            .collect();
        Ok(QueryOutcome {
            result: QueryResult::Degree(outcome.value),
            witness: Some(Witness::GmpBlocks { blocks }),
        })
    }

    /// The JSON export document: world labels, the (validated) similarity
    /// matrix row-major, named propositions as label arrays, declared tables
    /// with tight counterparts, and tight Nec/Poss values for every named
    /// proposition.
    pub fn export_json(&self) -> Value {
        let universe = self.kb.universe();
        let labels = universe.labels();
        let prop_labels: BTreeMap<&String, Vec<&str>> = self
            .kb
            .propositions()
            .iter()
            .map(|(name, p)| (name, p.indices().map(|i| universe.label(i)).collect()))
            .collect();
        let evidence = self.kb.evidence();
        let tight: BTreeMap<&String, Value> = self
            .kb
            .propositions()
            .iter()
            .map(|(name, p)| {
                let nec = tightest_necessity(p, evidence, &self.relation)
                    .expect("KB propositions live on the KB universe");
                let poss = tightest_possibility(p, evidence, &self.relation)
                    .expect("KB propositions live on the KB universe");
                (
                    name,
                    json!({"necessity": nec.get(), "possibility": poss.get()}),
                )
            })
            .collect();
        let tables: Vec<Value> = self
            .kb
            .tables()
            .iter()
            .map(|((kind, name), table)| {
                let entries: Vec<Value> = table
                    .entries()
                    .map(|(key, value)| {
                        let consequent = self
                            .kb
                            .proposition(&key.consequent)
                            .expect("table names resolved at load");
                        let tight = match (kind, &key.antecedent) {
                            (TableKind::Necessity, None) => {
                                tightest_necessity(consequent, evidence, &self.relation)
                            }
                            (TableKind::Possibility, None) => {
                                tightest_possibility(consequent, evidence, &self.relation)
                            }
                            (kind, Some(antecedent)) => {
                                let antecedent = self
                                    .kb
                                    .proposition(antecedent)
                                    .expect("table names resolved at load");
                                if *kind == TableKind::ConditionalNecessity {
                                    tightest_conditional_necessity(
                                        consequent,
                                        antecedent,
                                        evidence,
                                        &self.relation,
                                    )
                                } else {
                                    tightest_conditional_possibility(
                                        consequent,
                                        antecedent,
                                        evidence,
                                        &self.relation,
                                    )
                                }
                            }
                            _ => unreachable!("key shape enforced at insertion"),
                        }
                        .expect("table propositions live on the KB universe");
                        json!({
                            "consequent": key.consequent,
                            "antecedent": key.antecedent,
                            "value": value.get(),
                            "tight": tight.get(),
                        })
                    })
                    .collect();
                json!({"kind": kind.keyword(), "name": name, "entries": entries})
            })
            .collect();
        json!({
            "tnorm": self.kb.norm().as_str(),
            "worlds": labels,
            "atoms": universe.atoms().map(|t| json!({
                "names": t.names(),
                "assignments": (0..universe.size()).map(|w| t.assignment(w).to_vec()).collect::<Vec<_>>(),
            })),
            "similarity": self.relation.matrix().row_major(),
            "propositions": prop_labels,
            "evidence": evidence.indices().map(|i| universe.label(i)).collect::<Vec<_>>(),
            "partitions": self.kb.partitions(),
            "tight": tight,
            "tables": tables,
        })
    }
}

/// The structured record emitted by `--json` query output.
pub fn outcome_json(
    query_text: &str,
    query: &Query,
    outcome: &QueryOutcome,
    universe: &Universe,
) -> Value {
    let mut record = serde_json::Map::new();
    record.insert("query".to_string(), json!(query_text));
    record.insert("kind".to_string(), json!(query.kind()));
    match &outcome.result {
        QueryResult::Degree(v) => {
            record.insert("value".to_string(), json!(v.get()));
        }
        QueryResult::Worlds(p) => {
            let labels: Vec<&str> = p.indices().map(|i| universe.label(i)).collect();
            record.insert("worlds".to_string(), json!(labels));
        }
        QueryResult::Truth(b) => {
            record.insert("truth".to_string(), json!(b));
        }
    }
    if let Some(witness) = &outcome.witness {
        record.insert("witness".to_string(), witness.to_json(universe));
    }
    Value::Object(record)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kb::{parse_kb, parse_query};
    use crate::EPSILON;

    const WORKED: &str = "\
tnorm min
worlds w0 w1 w2
sim {
  w0 w1 0.8
  w0 w2 0.6
  w1 w2 0.6
}
prop b0 = { w0 }
prop b1 = { w1 }
prop b2 = { w2 }
prop p = { w0 }
prop q = { w2 }
evidence = { w0 }
partition P = [ b0, b1, b2 ]
";

    fn eval_text(kb: &KnowledgeBase, query: &str) -> QueryOutcome {
        let evaluator = Evaluator::new(kb, EPSILON).unwrap();
        let query = parse_query(query, kb).unwrap();
        evaluator.evaluate(&query).unwrap()
    }

    #[test]
    fn evaluates_worked_queries() {
        let kb = parse_kb(WORKED).unwrap();
        assert_eq!(
            eval_text(&kb, "I(p|q)").result.as_degree().unwrap().get(),
            0.6
        );
        assert_eq!(
            eval_text(&kb, "nec(q|p)").result.as_degree().unwrap().get(),
            0.6
        );
        assert_eq!(
            eval_text(&kb, "gmp_nec(P, q)")
                .result
                .as_degree()
                .unwrap()
                .get(),
            0.6
        );
        assert_eq!(
            eval_text(&kb, "gmp_poss(P, q)")
                .result
                .as_degree()
                .unwrap()
                .get(),
            0.6
        );
        let pi = eval_text(&kb, "pi(1, p)");
        assert_eq!(pi.result.render(kb.universe()), "{w0}");
        let nimp = eval_text(&kb, "nimp(q, p, 0.6)");
        assert_eq!(nimp.result, QueryResult::Truth(true));
        let nimp = eval_text(&kb, "nimp(q, p, 0.7)");
        assert_eq!(nimp.result, QueryResult::Truth(false));
        assert!(matches!(
            nimp.witness,
            Some(Witness::Counterexample { world: 2 })
        ));
    }

    #[test]
    fn witnesses_are_deterministic_and_labeled() {
        let kb = parse_kb(WORKED).unwrap();
        let outcome = eval_text(&kb, "I(p|q)");
        match outcome.witness.unwrap() {
            Witness::Implication {
                target,
                source,
                similarity,
            } => {
                assert_eq!((target, source), (2, 0));
                assert_eq!(similarity, 0.6);
            }
            other => panic!("unexpected witness {other:?}"),
        }
        let outcome = eval_text(&kb, "gmp_nec(P, q)");
        match outcome.witness.unwrap() {
            Witness::GmpBlocks { blocks } => assert_eq!(blocks, vec!["b0", "b1", "b2"]),
            other => panic!("unexpected witness {other:?}"),
        }
    }

    #[test]
    fn validation_gate() {
        let text = "\
worlds w0 w1 w2
sim {
  w0 w1 0.9
  w1 w2 0.9
  w0 w2 0.2
}
prop p = { w0 }
evidence = { w0 }
";
        let kb = parse_kb(text).unwrap();
        assert!(matches!(
            Evaluator::new(&kb, EPSILON),
            Err(SetupError::Validation(_))
        ));
        let (evaluator, raised) = Evaluator::with_auto_close(&kb, EPSILON).unwrap();
        assert_eq!(raised, 1);
        assert_eq!(evaluator.relation().similarity(0, 2).get(), 0.9);
    }

    #[test]
    fn auto_close_cannot_repair_symmetry() {
        use crate::similarity::SimilarityMatrix;
        use crate::tnorm::UnitValue;
        let kb = parse_kb("worlds w0 w1\nprop p = { w0 }\nevidence = { w0 }\n").unwrap();
        let mut asymmetric = SimilarityMatrix::identity(2);
        asymmetric.set(0, 1, UnitValue::new(0.4).unwrap());
        let kb = kb.with_similarity(asymmetric);
        assert!(matches!(
            Evaluator::with_auto_close(&kb, EPSILON),
            Err(SetupError::Closure(_))
        ));
    }

    #[test]
    fn json_records() {
        let kb = parse_kb(WORKED).unwrap();
        let evaluator = Evaluator::new(&kb, EPSILON).unwrap();
        let query = parse_query("I(p|q)", &kb).unwrap();
        let outcome = evaluator.evaluate(&query).unwrap();
        let record = outcome_json("I(p|q)", &query, &outcome, kb.universe());
        assert_eq!(record["kind"], "implication");
        assert_eq!(record["value"], 0.6);
        assert_eq!(record["witness"]["target"], "w2");

        let doc = evaluator.export_json();
        assert_eq!(doc["tnorm"], "min");
        assert_eq!(doc["worlds"][2], "w2");
        assert_eq!(doc["similarity"][1], 0.8);
        assert_eq!(doc["tight"]["q"]["necessity"], 0.6);
        assert_eq!(doc["partitions"]["P"][0], "b0");
    }
}
