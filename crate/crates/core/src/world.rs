//! Finite universes of possible worlds, crisp propositions over them,
//! evidential sets, and partitions.
//!
//! Worlds are abstract labels, optionally backed by a truth assignment over a
//! set of propositional atoms. Propositions are crisp subsets of worlds; all
//! fuzziness lives in the similarity relation.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// Errors raised by universe and proposition construction and set algebra.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum WorldError {
    #[error("universe must contain at least one world")]
    EmptyUniverse,
    #[error("duplicate world label {0:?}")]
    DuplicateWorld(String),
    #[error("duplicate atom name {0:?}")]
    DuplicateAtom(String),
    #[error("world {world:?} assigns {given} atoms, expected {expected}")]
    AssignmentArity {
        world: String,
        given: usize,
        expected: usize,
    },
    #[error("worlds {0:?} and {1:?} share the same atom assignment")]
    IndistinctWorlds(String, String),
    #[error("unknown atom {0:?}")]
    UnknownAtom(String),
    #[error("unknown world {0:?}")]
    UnknownWorld(String),
    #[error("operands live on universes of different sizes ({0} vs {1})")]
    UniverseMismatch(usize, usize),
    #[error("evidential set must contain at least one world")]
    EmptyEvidence,
    #[error("universe declares no atoms")]
    NoAtoms,
    #[error("world index {0} out of range for universe of size {1}")]
    WorldIndexOutOfRange(usize, usize),
}

/// Truth assignments backing atom-declared universes: one row of booleans per
/// world, aligned with `names`.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomTable {
    names: Vec<String>,
    assignments: Vec<Vec<bool>>,
}

impl AtomTable {
    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// The assignment row of one world, aligned with [`AtomTable::names`].
    pub fn assignment(&self, world: usize) -> &[bool] {
        &self.assignments[world]
    }

    pub fn index_of(&self, atom: &str) -> Option<usize> {
        self.names.iter().position(|n| n == atom)
    }
}

/// The finite ordered set of possible worlds.
#[derive(Debug, Clone, PartialEq)]
pub struct Universe {
    labels: Vec<String>,
    atoms: Option<AtomTable>,
}

impl Universe {
    /// Builds a universe from bare world labels.
    pub fn from_labels<I, S>(labels: I) -> Result<Self, WorldError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(WorldError::EmptyUniverse);
        }
        let mut seen = HashMap::new();
        for label in &labels {
            if seen.insert(label.clone(), ()).is_some() {
                return Err(WorldError::DuplicateWorld(label.clone()));
            }
        }
        Ok(Universe {
            labels,
            atoms: None,
        })
    }

    /// Builds a universe whose worlds are truth assignments over `atoms`.
    ///
    /// Every world must assign every atom, and no two worlds may share an
    /// assignment.
    pub fn from_atom_assignments(
        atoms: Vec<String>,
        worlds: Vec<(String, Vec<bool>)>,
    ) -> Result<Self, WorldError> {
        let mut seen_atoms = HashMap::new();
        for atom in &atoms {
            if seen_atoms.insert(atom.clone(), ()).is_some() {
                return Err(WorldError::DuplicateAtom(atom.clone()));
            }
        }
        if worlds.is_empty() {
            return Err(WorldError::EmptyUniverse);
        }
        let mut labels = Vec::with_capacity(worlds.len());
        let mut assignments = Vec::with_capacity(worlds.len());
        let mut seen_assignments: HashMap<Vec<bool>, String> = HashMap::new();
        let mut seen_labels = HashMap::new();
        for (label, row) in worlds {
            if seen_labels.insert(label.clone(), ()).is_some() {
                return Err(WorldError::DuplicateWorld(label));
            }
            if row.len() != atoms.len() {
                return Err(WorldError::AssignmentArity {
                    world: label,
                    given: row.len(),
                    expected: atoms.len(),
                });
            }
            if let Some(other) = seen_assignments.insert(row.clone(), label.clone()) {
                return Err(WorldError::IndistinctWorlds(other, label));
            }
            labels.push(label);
            assignments.push(row);
        }
        Ok(Universe {
            labels,
            atoms: Some(AtomTable {
                names: atoms,
                assignments,
            }),
        })
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn atoms(&self) -> Option<&AtomTable> {
        self.atoms.as_ref()
    }

    pub fn full_proposition(&self) -> Proposition {
        Proposition::full(self.size())
    }

    pub fn empty_proposition(&self) -> Proposition {
        Proposition::empty(self.size())
    }

    /// Resolves labels into a proposition on this universe.
    pub fn proposition_from_labels<'a, I>(&self, labels: I) -> Result<Proposition, WorldError>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut members = vec![false; self.size()];
        for label in labels {
            let idx = self
                .index_of(label)
                .ok_or_else(|| WorldError::UnknownWorld(label.to_string()))?;
            members[idx] = true;
        }
        Ok(Proposition::from_members(members))
    }
}

/// A crisp subset of worlds: the denotation of a statement.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Proposition {
    members: Vec<bool>,
}

impl Proposition {
    pub fn from_members(members: Vec<bool>) -> Self {
        Proposition { members }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(size: usize, indices: I) -> Self {
        let mut members = vec![false; size];
        for i in indices {
            members[i] = true;
        }
        Proposition { members }
    }

    pub fn empty(size: usize) -> Self {
        Proposition {
            members: vec![false; size],
        }
    }

    pub fn full(size: usize) -> Self {
        Proposition {
            members: vec![true; size],
        }
    }

    /// Size of the underlying universe (not the number of members).
    pub fn universe_size(&self) -> usize {
        self.members.len()
    }

    pub fn member_count(&self) -> usize {
        self.members.iter().filter(|&&m| m).count()
    }

    pub fn is_empty(&self) -> bool {
        self.members.iter().all(|&m| !m)
    }

    pub fn contains(&self, world: usize) -> bool {
        self.members.get(world).copied().unwrap_or(false)
    }

    /// Indices of member worlds in universe order.
    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.members
            .iter()
            .enumerate()
            .filter_map(|(i, &m)| m.then_some(i))
    }

    pub fn members(&self) -> &[bool] {
        &self.members
    }

    fn check_same_universe(&self, other: &Proposition) -> Result<(), WorldError> {
        if self.members.len() != other.members.len() {
            return Err(WorldError::UniverseMismatch(
                self.members.len(),
                other.members.len(),
            ));
        }
        Ok(())
    }

    pub fn union(&self, other: &Proposition) -> Result<Proposition, WorldError> {
        self.check_same_universe(other)?;
        Ok(Proposition {
            members: self
                .members
                .iter()
                .zip(&other.members)
                .map(|(&a, &b)| a || b)
                .collect(),
        })
    }

    pub fn intersection(&self, other: &Proposition) -> Result<Proposition, WorldError> {
        self.check_same_universe(other)?;
        Ok(Proposition {
            members: self
                .members
                .iter()
                .zip(&other.members)
                .map(|(&a, &b)| a && b)
                .collect(),
        })
    }

    pub fn complement(&self) -> Proposition {
        Proposition {
            members: self.members.iter().map(|&m| !m).collect(),
        }
    }

    pub fn is_subset_of(&self, other: &Proposition) -> Result<bool, WorldError> {
        self.check_same_universe(other)?;
        Ok(self
            .members
            .iter()
            .zip(&other.members)
            .all(|(&a, &b)| !a || b))
    }

    pub fn is_disjoint_from(&self, other: &Proposition) -> Result<bool, WorldError> {
        self.check_same_universe(other)?;
        Ok(self
            .members
            .iter()
            .zip(&other.members)
            .all(|(&a, &b)| !(a && b)))
    }

    /// Renders the member set with universe labels, e.g. `{w0, w1}`.
    pub fn render(&self, universe: &Universe) -> String {
        let names: Vec<&str> = self.indices().map(|i| universe.label(i)).collect();
        format!("{{{}}}", names.join(", "))
    }
}

/// The worlds logically consistent with the evidence. Never empty.
#[derive(Debug, Clone, PartialEq)]
pub struct EvidentialSet {
    worlds: Proposition,
}

impl EvidentialSet {
    pub fn new(worlds: Proposition) -> Result<Self, WorldError> {
        if worlds.is_empty() {
            return Err(WorldError::EmptyEvidence);
        }
        Ok(EvidentialSet { worlds })
    }

    pub fn as_proposition(&self) -> &Proposition {
        &self.worlds
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.worlds.indices()
    }
}

/// Errors raised when a block list fails to be a partition.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PartitionError {
    #[error("partition has no blocks")]
    NoBlocks,
    #[error("partition blocks disagree on universe size")]
    Mismatch,
    #[error("block {index} is empty")]
    EmptyBlock { index: usize },
    #[error("blocks {first} and {second} overlap at world index {witness}")]
    Overlap {
        first: usize,
        second: usize,
        witness: usize,
    },
    #[error("no block covers world index {witness}")]
    Coverage { witness: usize },
}

/// A family of mutually exclusive, jointly exhaustive propositions.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    blocks: Vec<Proposition>,
}

impl Partition {
    /// Validates that `blocks` are pairwise disjoint, non-empty, and cover
    /// the universe.
    pub fn new(blocks: Vec<Proposition>) -> Result<Self, PartitionError> {
        let Some(first) = blocks.first() else {
            return Err(PartitionError::NoBlocks);
        };
        let size = first.universe_size();
        if blocks.iter().any(|b| b.universe_size() != size) {
            return Err(PartitionError::Mismatch);
        }
        for (index, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(PartitionError::EmptyBlock { index });
            }
        }
        let mut owner: Vec<Option<usize>> = vec![None; size];
        for (index, block) in blocks.iter().enumerate() {
            for world in block.indices() {
                match owner[world] {
                    Some(first) => {
                        return Err(PartitionError::Overlap {
                            first,
                            second: index,
                            witness: world,
                        })
                    }
                    None => owner[world] = Some(index),
                }
            }
        }
        if let Some(witness) = owner.iter().position(|o| o.is_none()) {
            return Err(PartitionError::Coverage { witness });
        }
        Ok(Partition { blocks })
    }

    pub fn blocks(&self) -> &[Proposition] {
        &self.blocks
    }

    pub fn universe_size(&self) -> usize {
        self.blocks[0].universe_size()
    }

    /// The index of the unique block containing `world`.
    pub fn block_of(&self, world: usize) -> usize {
        self.blocks
            .iter()
            .position(|b| b.contains(world))
            .expect("validated partition covers every world")
    }
}

/// A boolean expression over declared atoms.
#[derive(Debug, Clone, PartialEq)]
pub enum Formula {
    Atom(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
}

/// Error from [`Formula::parse`], with a byte offset into the input.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("{message} (at offset {offset})")]
pub struct FormulaParseError {
    pub offset: usize,
    pub message: String,
}

impl Formula {
    /// Parses `a & !b | c` style expressions. Precedence: `!` over `&` over
    /// `|`. A `#` ends the input (line comment).
    pub fn parse(text: &str) -> Result<Formula, FormulaParseError> {
        let mut parser = FormulaParser::new(text);
        let formula = parser.expr()?;
        parser.skip_ws();
        if parser.pos < parser.input.len() {
            return Err(FormulaParseError {
                offset: parser.pos,
                message: format!(
                    "unexpected {:?} after formula",
                    parser.input[parser.pos] as char
                ),
            });
        }
        Ok(formula)
    }

    fn atoms<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Formula::Atom(name) => out.push(name),
            Formula::Not(inner) => inner.atoms(out),
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.atoms(out);
                b.atoms(out);
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(name) => f.write_str(name),
            Formula::Not(inner) => write!(f, "!{inner}"),
            Formula::And(a, b) => write!(f, "({a} & {b})"),
            Formula::Or(a, b) => write!(f, "({a} | {b})"),
        }
    }
}

struct FormulaParser<'a> {
    input: &'a [u8],
    pos: usize,
}

impl<'a> FormulaParser<'a> {
    fn new(text: &'a str) -> Self {
        // A '#' starts a comment that runs to the end of the input line.
        let end = text.find('#').unwrap_or(text.len());
        FormulaParser {
            input: &text.as_bytes()[..end],
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.input.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Formula, FormulaParseError> {
        let mut left = self.term()?;
        while self.peek() == Some(b'|') {
            self.pos += 1;
            let right = self.term()?;
            left = Formula::Or(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn term(&mut self) -> Result<Formula, FormulaParseError> {
        let mut left = self.factor()?;
        while self.peek() == Some(b'&') {
            self.pos += 1;
            let right = self.factor()?;
            left = Formula::And(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn factor(&mut self) -> Result<Formula, FormulaParseError> {
        match self.peek() {
            Some(b'!') => {
                self.pos += 1;
                Ok(Formula::Not(Box::new(self.factor()?)))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(FormulaParseError {
                        offset: self.pos,
                        message: "expected ')'".to_string(),
                    });
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.input.len()
                    && (self.input[self.pos].is_ascii_alphanumeric()
                        || self.input[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.input[start..self.pos])
                    .expect("ascii ident")
                    .to_string();
                Ok(Formula::Atom(name))
            }
            Some(c) => Err(FormulaParseError {
                offset: self.pos,
                message: format!("unexpected {:?} in formula", c as char),
            }),
            None => Err(FormulaParseError {
                offset: self.pos,
                message: "expected formula".to_string(),
            }),
        }
    }
}

/// Evaluates a formula against an atom-backed universe, returning the set of
/// worlds whose assignment satisfies it.
pub fn evaluate_formula(universe: &Universe, formula: &Formula) -> Result<Proposition, WorldError> {
    let table = universe.atoms().ok_or(WorldError::NoAtoms)?;
    let mut used = Vec::new();
    formula.atoms(&mut used);
    for atom in used {
        if table.index_of(atom).is_none() {
            return Err(WorldError::UnknownAtom(atom.to_string()));
        }
    }
    fn eval(formula: &Formula, table: &AtomTable, world: usize) -> bool {
        match formula {
            Formula::Atom(name) => {
                let idx = table.index_of(name).expect("atoms pre-checked");
                table.assignment(world)[idx]
            }
            Formula::Not(inner) => !eval(inner, table, world),
            Formula::And(a, b) => eval(a, table, world) && eval(b, table, world),
            Formula::Or(a, b) => eval(a, table, world) || eval(b, table, world),
        }
    }
    let members = (0..universe.size())
        .map(|w| eval(formula, table, w))
        .collect();
    Ok(Proposition::from_members(members))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_atom_universe() -> Universe {
        // All four assignments over atoms {a, b}.
        Universe::from_atom_assignments(
            vec!["a".into(), "b".into()],
            vec![
                ("w00".into(), vec![false, false]),
                ("w01".into(), vec![false, true]),
                ("w10".into(), vec![true, false]),
                ("w11".into(), vec![true, true]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn universe_rejects_duplicates_and_empty() {
        assert_eq!(
            Universe::from_labels(Vec::<String>::new()).unwrap_err(),
            WorldError::EmptyUniverse
        );
        assert_eq!(
            Universe::from_labels(["w0", "w0"]).unwrap_err(),
            WorldError::DuplicateWorld("w0".into())
        );
    }

    #[test]
    fn atom_universe_rejects_indistinct_worlds() {
        let err = Universe::from_atom_assignments(
            vec!["a".into()],
            vec![("x".into(), vec![true]), ("y".into(), vec![true])],
        )
        .unwrap_err();
        assert_eq!(err, WorldError::IndistinctWorlds("x".into(), "y".into()));
    }

    #[test]
    fn formula_selects_matching_worlds() {
        let u = two_atom_universe();
        let p = evaluate_formula(&u, &Formula::parse("a & !b").unwrap()).unwrap();
        assert_eq!(p.indices().collect::<Vec<_>>(), vec![2]); // w10
        let taut = evaluate_formula(&u, &Formula::parse("a | !a").unwrap()).unwrap();
        assert_eq!(taut, u.full_proposition());
        let contra = evaluate_formula(&u, &Formula::parse("a & !a").unwrap()).unwrap();
        assert!(contra.is_empty());
    }

    #[test]
    fn formula_reports_unknown_atom() {
        let u = two_atom_universe();
        let err = evaluate_formula(&u, &Formula::parse("a & c").unwrap()).unwrap_err();
        assert_eq!(err, WorldError::UnknownAtom("c".into()));
    }

    #[test]
    fn formula_parse_errors_carry_offset() {
        assert!(Formula::parse("").is_err());
        assert!(Formula::parse("a &").is_err());
        assert!(Formula::parse("(a | b").is_err());
        assert!(Formula::parse("a ? b").is_err());
    }

    #[test]
    fn set_ops_basics() {
        let u = Universe::from_labels(["w0", "w1", "w2"]).unwrap();
        let p = Proposition::from_indices(3, [0, 1]);
        let q = Proposition::from_indices(3, [1, 2]);
        assert_eq!(p.union(&p.complement()).unwrap(), u.full_proposition());
        assert_eq!(
            p.intersection(&q).unwrap(),
            Proposition::from_indices(3, [1])
        );
        assert!(u.full_proposition().complement().is_empty());
        let other = Proposition::empty(4);
        assert_eq!(
            p.union(&other).unwrap_err(),
            WorldError::UniverseMismatch(3, 4)
        );
    }

    #[test]
    fn set_ops_laws_exhaustive_small() {
        // Involution, idempotence, and De Morgan for every subset pair, n ≤ 4.
        for n in 1..=4usize {
            for pm in 0..(1u32 << n) {
                let p = Proposition::from_indices(n, (0..n).filter(|i| pm >> i & 1 == 1));
                assert_eq!(p.complement().complement(), p);
                assert_eq!(p.intersection(&p).unwrap(), p);
                for qm in 0..(1u32 << n) {
                    let q = Proposition::from_indices(n, (0..n).filter(|i| qm >> i & 1 == 1));
                    let lhs = p.union(&q).unwrap().complement();
                    let rhs = p.complement().intersection(&q.complement()).unwrap();
                    assert_eq!(lhs, rhs);
                    let lhs = p.intersection(&q).unwrap().complement();
                    let rhs = p.complement().union(&q.complement()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn evidence_must_be_non_empty() {
        assert_eq!(
            EvidentialSet::new(Proposition::empty(3)).unwrap_err(),
            WorldError::EmptyEvidence
        );
        assert!(EvidentialSet::new(Proposition::from_indices(3, [0])).is_ok());
    }

    #[test]
    fn partition_validation() {
        let singletons = vec![
            Proposition::from_indices(3, [0]),
            Proposition::from_indices(3, [1]),
            Proposition::from_indices(3, [2]),
        ];
        assert!(Partition::new(singletons).is_ok());

        let overlapping = vec![
            Proposition::from_indices(3, [0, 1]),
            Proposition::from_indices(3, [1, 2]),
        ];
        assert_eq!(
            Partition::new(overlapping).unwrap_err(),
            PartitionError::Overlap {
                first: 0,
                second: 1,
                witness: 1
            }
        );

        let undercovering = vec![Proposition::from_indices(3, [0])];
        assert_eq!(
            Partition::new(undercovering).unwrap_err(),
            PartitionError::Coverage { witness: 1 }
        );

        let with_empty = vec![Proposition::full(3), Proposition::empty(3)];
        assert_eq!(
            Partition::new(with_empty).unwrap_err(),
            PartitionError::EmptyBlock { index: 1 }
        );
    }

    #[test]
    fn atom_partition_covers_each_world_once() {
        let u = two_atom_universe();
        // Blocks induced by the value of atom `a`.
        let a_true = evaluate_formula(&u, &Formula::parse("a").unwrap()).unwrap();
        let a_false = evaluate_formula(&u, &Formula::parse("!a").unwrap()).unwrap();
        let partition = Partition::new(vec![a_true, a_false]).unwrap();
        for w in 0..u.size() {
            let containing = partition.blocks().iter().filter(|b| b.contains(w)).count();
            assert_eq!(containing, 1);
        }
    }
}
