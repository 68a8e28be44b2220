//! Similarity-based possibilistic reasoning over finite universes of possible worlds.
//!
//! The model starts from a *similarity relation* `S`: a reflexive, symmetric,
//! strictly discernible, ⊗-transitive function assigning a degree in `[0, 1]`
//! to every pair of worlds, where ⊗ is one of three triangular norms. On top
//! of it the library computes:
//!
//! - graded degrees of implication `I(p|q)` and consistence `C(p|q)`,
//! - graded possibility operators and accessibility relations,
//! - tightest unconditioned and conditional necessity/possibility values,
//! - the generalized modus ponens over a partition, for both necessity and
//!   possibility bounds.
//!
//! Knowledge bases are written in a small line-oriented text format (`.pkb`)
//! parsed by [`kb::parse_kb`], and queried through [`eval::Evaluator`] or the
//! `similog` command-line tool.
//!
//! ```
//! use similog::{kb, eval::Evaluator, EPSILON};
//!
//! let text = "
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
//! ";
//! let kb = kb::parse_kb(text).unwrap();
//! let eval = Evaluator::new(&kb, EPSILON).unwrap();
//! let query = kb::parse_query("I(p|q)", &kb).unwrap();
//! let outcome = eval.evaluate(&query).unwrap();
//! assert_eq!(outcome.result.as_degree().unwrap().get(), 0.6);
//! ```

pub mod distributions;
pub mod eval;
pub mod gmp;
pub mod kb;
pub mod measures;
pub mod similarity;
pub mod tnorm;
pub mod world;

/// Default comparison tolerance for every ε-relaxed check in the library.
pub const EPSILON: f64 = 1e-9;

pub use kb::KnowledgeBase;
pub use similarity::{SimilarityMatrix, SimilarityRelation};
pub use tnorm::{TNorm, UnitValue};
pub use world::{EvidentialSet, Partition, Proposition, Universe};
