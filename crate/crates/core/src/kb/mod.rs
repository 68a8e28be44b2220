//! The knowledge-base text format (`.pkb`) and query language: parsing with
//! line/column diagnostics, canonical serialization, and the aggregate
//! [`KnowledgeBase`] value.
//!
//! A file declares, in any order (references resolve over the whole file):
//!
//! ```text
//! tnorm min
//! worlds w0 w1 w2
//! sim {
//!   w0 w1 0.8
//!   w0 w2 0.6
//!   w1 w2 0.6
//! }
//! prop p = { w0 }
//! prop q = { w2 }
//! evidence = { w0 }
//! partition P = [ b0, b1, b2 ]
//! necessity T {
//!   p 0.6
//! }
//! ```
//!
//! Worlds may instead be generated from atom assignments (`atoms a b` plus
//! one `world w { a: true, b: false }` block per world), in which case
//! propositions may also be boolean formulas over the atoms, e.g.
//! `prop p = a & !b`. Lines starting with `#` are comments. Missing
//! similarity pairs default to 0, the diagonal defaults to 1, and symmetry
//! is filled in from whichever triangle is given.

mod lexer;
mod parser;
mod query;
mod serialize;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::distributions::{DistributionTable, TableKind};
use crate::similarity::SimilarityMatrix;
use crate::tnorm::TNorm;
use crate::world::{EvidentialSet, Partition, PartitionError, Proposition, Universe};

pub use parser::parse_kb;
pub use query::{parse_query, Query};
pub use serialize::{format_degree, serialize_kb};

/// Machine-readable category of a [`Diagnostic`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagnosticCode {
    Lexical,
    Syntax,
    DuplicateDeclaration,
    UnresolvedReference,
    ValueOutOfRange,
    ConflictingSimilarity,
    EmptyEvidence,
    Arity,
}

impl DiagnosticCode {
    pub fn as_str(self) -> &'static str {
        match self {
            DiagnosticCode::Lexical => "lexical",
            DiagnosticCode::Syntax => "syntax",
            DiagnosticCode::DuplicateDeclaration => "duplicate-declaration",
            DiagnosticCode::UnresolvedReference => "unresolved-reference",
            DiagnosticCode::ValueOutOfRange => "value-out-of-range",
            DiagnosticCode::ConflictingSimilarity => "conflicting-similarity",
            DiagnosticCode::EmptyEvidence => "empty-evidence",
            DiagnosticCode::Arity => "arity",
        }
    }
}

/// One parse problem: position, category, offending token, and message.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostic {
    pub line: usize,
    pub col: usize,
    pub code: DiagnosticCode,
    pub token: String,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}: error[{}]: {}",
            self.line,
            self.col,
            self.code.as_str(),
            self.message
        )
    }
}

/// Parse failure carrying one or more diagnostics.
#[derive(Debug, Clone, PartialEq, Error)]
pub struct ParseError {
    pub diagnostics: Vec<Diagnostic>,
}

impl ParseError {
    pub(crate) fn single(diagnostic: Diagnostic) -> Self {
        ParseError {
            diagnostics: vec![diagnostic],
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.diagnostics.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// A fully resolved knowledge base: universe, raw similarity matrix, named
/// propositions, evidence, partitions (by block names), and declared tables.
///
/// The similarity matrix is stored as loaded; property validation is a
/// separate step (see [`crate::similarity::SimilarityRelation::validate`] and
/// [`crate::eval::Evaluator`]), so that a KB whose relation still needs the
/// transitive closure can be represented and repaired.
#[derive(Debug, Clone, PartialEq)]
pub struct KnowledgeBase {
    pub(crate) norm: TNorm,
    pub(crate) universe: Universe,
    pub(crate) similarity: SimilarityMatrix,
    pub(crate) propositions: BTreeMap<String, Proposition>,
    pub(crate) evidence: EvidentialSet,
    pub(crate) partitions: BTreeMap<String, Vec<String>>,
    pub(crate) tables: BTreeMap<(TableKind, String), DistributionTable>,
}

impl KnowledgeBase {
    pub fn norm(&self) -> TNorm {
        self.norm
    }

    /// Overrides the declared t-norm (the CLI `--tnorm` flag).
    pub fn set_norm(&mut self, norm: TNorm) {
        self.norm = norm;
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn similarity_matrix(&self) -> &SimilarityMatrix {
        &self.similarity
    }

    /// Replaces the similarity matrix, e.g. with its transitive closure.
    pub fn with_similarity(&self, matrix: SimilarityMatrix) -> KnowledgeBase {
        KnowledgeBase {
            similarity: matrix,
            ..self.clone()
        }
    }

    pub fn propositions(&self) -> &BTreeMap<String, Proposition> {
        &self.propositions
    }

    pub fn proposition(&self, name: &str) -> Option<&Proposition> {
        self.propositions.get(name)
    }

    pub fn evidence(&self) -> &EvidentialSet {
        &self.evidence
    }

    /// Declared partitions, as ordered lists of proposition names.
    pub fn partitions(&self) -> &BTreeMap<String, Vec<String>> {
        &self.partitions
    }

    /// Resolves a declared partition into a validated [`Partition`].
    pub fn partition(&self, name: &str) -> Option<Result<Partition, PartitionError>> {
        let block_names = self.partitions.get(name)?;
        let blocks = block_names
            .iter()
            .map(|n| {
                self.propositions
                    .get(n)
                    .cloned()
                    .expect("partition blocks resolved at load")
            })
            .collect();
        Some(Partition::new(blocks))
    }

    pub fn tables(&self) -> &BTreeMap<(TableKind, String), DistributionTable> {
        &self.tables
    }

    pub fn table(&self, kind: TableKind, name: &str) -> Option<&DistributionTable> {
        self.tables.get(&(kind, name.to_string()))
    }
}
