//! The similarity relation `S` over pairs of worlds: validation of its four
//! defining properties, the derived accessibility relations `R_α`, the dual
//! distance `δ = 1 − S`, and the max-⊗ transitive closure.

use std::fmt;

use thiserror::Error;

use crate::tnorm::{TNorm, UnitRangeError, UnitValue};
use crate::world::Proposition;

/// A raw square matrix of degrees, not yet validated as a similarity
/// relation. Row-major, indexed by world position.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityMatrix {
    size: usize,
    data: Vec<UnitValue>,
}

/// Errors raised while building a raw matrix.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MatrixError {
    #[error("row {row} has {given} entries, expected {expected}")]
    NotSquare {
        row: usize,
        given: usize,
        expected: usize,
    },
    #[error("entry ({row}, {col}): {source}")]
    OutOfRange {
        row: usize,
        col: usize,
        source: UnitRangeError,
    },
    #[error("expected {expected}·{expected} values, got {given}")]
    WrongLength { expected: usize, given: usize },
}

impl SimilarityMatrix {
    /// The identity matrix: 1 on the diagonal, 0 elsewhere. This is the
    /// classical (crisp) similarity and is ⊗-transitive for every norm.
    pub fn identity(size: usize) -> Self {
        let mut data = vec![UnitValue::ZERO; size * size];
        for i in 0..size {
            data[i * size + i] = UnitValue::ONE;
        }
        SimilarityMatrix { size, data }
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self, MatrixError> {
        let size = rows.len();
        let mut data = Vec::with_capacity(size * size);
        for (row, values) in rows.iter().enumerate() {
            if values.len() != size {
                return Err(MatrixError::NotSquare {
                    row,
                    given: values.len(),
                    expected: size,
                });
            }
            for (col, &value) in values.iter().enumerate() {
                data.push(
                    UnitValue::new(value).map_err(|source| MatrixError::OutOfRange {
                        row,
                        col,
                        source,
                    })?,
                );
            }
        }
        Ok(SimilarityMatrix { size, data })
    }

    pub fn from_row_major(size: usize, values: Vec<f64>) -> Result<Self, MatrixError> {
        if values.len() != size * size {
            return Err(MatrixError::WrongLength {
                expected: size,
                given: values.len(),
            });
        }
        let mut data = Vec::with_capacity(values.len());
        for (pos, &value) in values.iter().enumerate() {
            data.push(
                UnitValue::new(value).map_err(|source| MatrixError::OutOfRange {
                    row: pos / size,
                    col: pos % size,
                    source,
                })?,
            );
        }
        Ok(SimilarityMatrix { size, data })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> UnitValue {
        self.data[i * self.size + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: UnitValue) {
        self.data[i * self.size + j] = value;
    }

    /// Sets both `(i, j)` and `(j, i)`.
    pub fn set_symmetric(&mut self, i: usize, j: usize, value: UnitValue) {
        self.set(i, j, value);
        self.set(j, i, value);
    }

    pub fn row_major(&self) -> Vec<f64> {
        self.data.iter().map(|v| v.get()).collect()
    }
}

/// One violated similarity property, with witnesses.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    /// `S(w, w) ≠ 1`.
    Reflexivity { world: usize, value: f64 },
    /// `S(w, w′) > 1 − ε` for distinct worlds.
    Discernibility { a: usize, b: usize, value: f64 },
    /// `S(w, w′) ≠ S(w′, w)`.
    Symmetry {
        a: usize,
        b: usize,
        forward: f64,
        backward: f64,
    },
    /// `S(w, w″) < S(w, w′) ⊗ S(w′, w″) − ε` for the triple `(w, w′, w″)`.
    Transitivity {
        from: usize,
        via: usize,
        to: usize,
        actual: f64,
        required: f64,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Reflexivity { world, value } => {
                write!(f, "reflexivity: S({world}, {world}) = {value}, expected 1")
            }
            Violation::Discernibility { a, b, value } => {
                write!(f, "discernibility: S({a}, {b}) = {value} is not strictly below 1")
            }
            Violation::Symmetry {
                a,
                b,
                forward,
                backward,
            } => write!(
                f,
                "symmetry: S({a}, {b}) = {forward} but S({b}, {a}) = {backward}"
            ),
            Violation::Transitivity {
                from,
                via,
                to,
                actual,
                required,
            } => write!(
                f,
                "transitivity: S({from}, {to}) = {actual} < {required} = S({from}, {via}) ⊗ S({via}, {to})"
            ),
        }
    }
}

impl Violation {
    /// Which property this violation belongs to, for grouped reporting.
    pub fn property(&self) -> &'static str {
        match self {
            Violation::Reflexivity { .. } => "reflexivity",
            Violation::Discernibility { .. } => "discernibility",
            Violation::Symmetry { .. } => "symmetry",
            Violation::Transitivity { .. } => "transitivity",
        }
    }
}

/// Every property violation found by [`SimilarityRelation::validate`].
#[derive(Debug, Clone, PartialEq, Error)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} similarity property violation(s)",
            self.violations.len()
        )?;
        for v in &self.violations {
            write!(f, "\n  {v}")?;
        }
        Ok(())
    }
}

/// A validated similarity relation together with the norm it satisfies.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityRelation {
    matrix: SimilarityMatrix,
    norm: TNorm,
}

impl SimilarityRelation {
    /// Checks reflexivity, strict discernibility, symmetry, and
    /// ⊗-transitivity, collecting every violation with witnesses.
    pub fn validate(
        matrix: SimilarityMatrix,
        norm: TNorm,
        eps: f64,
    ) -> Result<Self, ValidationReport> {
        let violations = check_properties(&matrix, norm, eps);
        if violations.is_empty() {
            Ok(SimilarityRelation { matrix, norm })
        } else {
            Err(ValidationReport { violations })
        }
    }

    /// The crisp identity relation, valid for every norm.
    pub fn identity(size: usize, norm: TNorm) -> Self {
        SimilarityRelation {
            matrix: SimilarityMatrix::identity(size),
            norm,
        }
    }

    pub fn matrix(&self) -> &SimilarityMatrix {
        &self.matrix
    }

    pub fn norm(&self) -> TNorm {
        self.norm
    }

    pub fn size(&self) -> usize {
        self.matrix.size()
    }

    pub fn similarity(&self, i: usize, j: usize) -> UnitValue {
        self.matrix.get(i, j)
    }

    /// The accessibility set `{w′ : S(w, w′) ≥ α − ε}`.
    pub fn alpha_accessible(&self, world: usize, alpha: UnitValue, eps: f64) -> Proposition {
        assert!(
            world < self.size(),
            "world index {world} out of range for universe of size {}",
            self.size()
        );
        let members = (0..self.size())
            .map(|other| self.similarity(world, other).get() >= alpha.get() - eps)
            .collect();
        Proposition::from_members(members)
    }

    /// The dual distance `δ = 1 − S`, row-major.
    pub fn distance_view(&self) -> Vec<Vec<f64>> {
        (0..self.size())
            .map(|i| {
                (0..self.size())
                    .map(|j| 1.0 - self.similarity(i, j).get())
                    .collect()
            })
            .collect()
    }
}

fn check_properties(matrix: &SimilarityMatrix, norm: TNorm, eps: f64) -> Vec<Violation> {
    let n = matrix.size();
    let mut violations = Vec::new();
    for i in 0..n {
        let value = matrix.get(i, i).get();
        if (value - 1.0).abs() > eps {
            violations.push(Violation::Reflexivity { world: i, value });
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let value = matrix.get(i, j).get();
                if value > 1.0 - eps {
                    violations.push(Violation::Discernibility { a: i, b: j, value });
                }
            }
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let forward = matrix.get(i, j).get();
            let backward = matrix.get(j, i).get();
            if (forward - backward).abs() > eps {
                violations.push(Violation::Symmetry {
                    a: i,
                    b: j,
                    forward,
                    backward,
                });
            }
        }
    }
    for from in 0..n {
        for via in 0..n {
            for to in 0..n {
                let required = norm.apply(matrix.get(from, via), matrix.get(via, to)).get();
                let actual = matrix.get(from, to).get();
                if actual < required - eps {
                    violations.push(Violation::Transitivity {
                        from,
                        via,
                        to,
                        actual,
                        required,
                    });
                }
            }
        }
    }
    violations
}

/// Error rejecting closure input: the closure can only repair transitivity,
/// so reflexivity, symmetry, and discernibility must already hold.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("transitive closure input rejected: {0}")]
pub struct ClosureInputError(pub Violation);

/// Result of [`transitive_closure`].
#[derive(Debug, Clone)]
pub struct Closure {
    pub relation: SimilarityRelation,
    /// Max-⊗ self-compositions performed, including the one confirming the
    /// fixpoint.
    pub compositions: usize,
    /// Unordered world pairs whose similarity was raised.
    pub raised_entries: usize,
}

/// Computes the smallest pointwise-increase of `matrix` that is
/// ⊗-transitive, by iterating max-⊗ self-composition to a fixpoint.
///
/// Values only ever increase, user-asserted resemblances are preserved as
/// lower bounds, and an already-transitive input is returned unchanged. The
/// fixpoint is always reached within `n − 1` compositions.
///
/// Panics if `eps` is not a positive tolerance: fixpoint detection needs
/// headroom above floating-point rounding noise.
pub fn transitive_closure(
    matrix: &SimilarityMatrix,
    norm: TNorm,
    eps: f64,
) -> Result<Closure, ClosureInputError> {
    assert!(
        eps > 0.0 && eps.is_finite(),
        "transitive closure requires a positive tolerance, got {eps}"
    );
    let n = matrix.size();
    for violation in check_properties(matrix, norm, eps) {
        match violation {
            Violation::Transitivity { .. } => {}
            other => return Err(ClosureInputError(other)),
        }
    }

    let mut current = matrix.clone();
    let mut compositions = 0usize;
    loop {
        let mut next = current.clone();
        let mut max_increase = 0.0f64;
        for i in 0..n {
            for k in 0..n {
                let mut best = current.get(i, k);
                for j in 0..n {
                    best = best.max(norm.apply(current.get(i, j), current.get(j, k)));
                }
                if best.get() > next.get(i, k).get() {
                    max_increase = max_increase.max(best.get() - next.get(i, k).get());
                    next.set(i, k, best);
                }
            }
        }
        compositions += 1;
        if max_increase <= eps {
            break;
        }
        current = next;
        // The best ⊗-chain is always a simple path, so the fixpoint arrives
        // within n − 1 squarings; anything past that is a bug.
        assert!(
            compositions <= n.max(2),
            "transitive closure failed to converge within the composition cap"
        );
    }
    debug_assert!(compositions <= n.saturating_sub(1).max(1));

    let raised_entries = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .filter(|&(i, j)| current.get(i, j).get() > matrix.get(i, j).get())
        .count();
    let relation =
        SimilarityRelation::validate(current, norm, eps).expect("closure output is valid");
    Ok(Closure {
        relation,
        compositions,
        raised_entries,
    })
}
