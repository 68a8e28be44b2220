//! Recursive-descent parser for the knowledge-base format.
//!
//! Parsing is two-phase: a syntactic pass collects raw declarations, then a
//! resolution pass builds the [`KnowledgeBase`], so references may point at
//! declarations appearing later in the file. The first problem found is
//! reported as a [`Diagnostic`] with line, column, code, and offending token.

use std::collections::{BTreeMap, HashMap};

use super::lexer::{lex, Token, TokenKind};
use super::{Diagnostic, DiagnosticCode, KnowledgeBase, ParseError};
use crate::distributions::{DistributionTable, TableKey, TableKind};
use crate::similarity::SimilarityMatrix;
use crate::tnorm::{TNorm, UnitValue};
use crate::world::{evaluate_formula, EvidentialSet, Formula, Universe, WorldError};

/// Parses a knowledge-base file into a fully resolved [`KnowledgeBase`].
pub fn parse_kb(text: &str) -> Result<KnowledgeBase, ParseError> {
    let tokens = lex(text).map_err(ParseError::single)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        lines: text.lines().collect(),
    };
    let raw = parser.statements().map_err(ParseError::single)?;
    resolve(raw).map_err(ParseError::single)
}

struct Spanned<T> {
    value: T,
    line: usize,
    col: usize,
}

impl<T> Spanned<T> {
    fn diag(&self, code: DiagnosticCode, token: impl Into<String>, message: String) -> Diagnostic {
        Diagnostic {
            line: self.line,
            col: self.col,
            code,
            token: token.into(),
            message,
        }
    }
}

enum PropRhs {
    Worlds(Vec<Spanned<String>>),
    Formula(Spanned<Formula>),
}

enum EvidenceRhs {
    Worlds(Vec<Spanned<String>>),
    Named(Spanned<String>),
}

struct RawEntry {
    consequent: Spanned<String>,
    antecedent: Option<Spanned<String>>,
    value: f64,
}

type WorldBlock = (Spanned<String>, Vec<(Spanned<String>, bool)>);

#[derive(Default)]
struct RawKb {
    norm: Option<TNorm>,
    worlds: Option<Spanned<Vec<Spanned<String>>>>,
    atoms: Option<Spanned<Vec<Spanned<String>>>>,
    world_blocks: Vec<WorldBlock>,
    sim_entries: Vec<(Spanned<String>, Spanned<String>, f64)>,
    sim_seen: bool,
    props: Vec<(Spanned<String>, PropRhs)>,
    evidence: Option<EvidenceRhs>,
    partitions: Vec<(Spanned<String>, Vec<Spanned<String>>)>,
    tables: Vec<(TableKind, Spanned<String>, Vec<RawEntry>)>,
    end: (usize, usize),
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    lines: Vec<&'a str>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> Token {
        let token = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        token
    }

    fn diag_at(&self, token: &Token, code: DiagnosticCode, message: String) -> Diagnostic {
        Diagnostic {
            line: token.line,
            col: token.col,
            code,
            token: token.kind.raw_text(),
            message,
        }
    }

    fn syntax(&self, token: &Token, expected: &str) -> Diagnostic {
        self.diag_at(
            token,
            DiagnosticCode::Syntax,
            format!("expected {expected}, found {}", token.kind.describe()),
        )
    }

    fn skip_newlines(&mut self) {
        while matches!(self.peek().kind, TokenKind::Newline) {
            self.next();
        }
    }

    fn expect_ident(&mut self, expected: &str) -> Result<Spanned<String>, Diagnostic> {
        let token = self.peek().clone();
        match token.kind {
            TokenKind::Ident(ref name) => {
                let name = name.clone();
                self.next();
                Ok(Spanned {
                    value: name,
                    line: token.line,
                    col: token.col,
                })
            }
            _ => Err(self.syntax(&token, expected)),
        }
    }

    fn expect_number(&mut self, expected: &str) -> Result<Spanned<f64>, Diagnostic> {
        let token = self.peek().clone();
        match token.kind {
            TokenKind::Number { value, .. } => {
                self.next();
                Ok(Spanned {
                    value,
                    line: token.line,
                    col: token.col,
                })
            }
            _ => Err(self.syntax(&token, expected)),
        }
    }

    fn expect_kind(&mut self, kind: TokenKind, expected: &str) -> Result<Token, Diagnostic> {
        let token = self.peek().clone();
        if token.kind == kind {
            self.next();
            Ok(token)
        } else {
            Err(self.syntax(&token, expected))
        }
    }

    fn expect_line_end(&mut self) -> Result<(), Diagnostic> {
        let token = self.peek().clone();
        match token.kind {
            TokenKind::Newline => {
                self.next();
                Ok(())
            }
            TokenKind::Eof => Ok(()),
            _ => Err(self.syntax(&token, "end of line")),
        }
    }

    fn statements(&mut self) -> Result<RawKb, Diagnostic> {
        let mut raw = RawKb::default();
        loop {
            self.skip_newlines();
            let token = self.peek().clone();
            let keyword = match &token.kind {
                TokenKind::Eof => break,
                TokenKind::Ident(name) => name.clone(),
                _ => return Err(self.syntax(&token, "a declaration keyword")),
            };
            match keyword.as_str() {
                "version" => {
                    self.next();
                    let number = self.peek().clone();
                    match &number.kind {
                        TokenKind::Number { raw, .. } if raw == "1" => {
                            self.next();
                        }
                        _ => return Err(self.syntax(&number, "version 1")),
                    }
                    self.expect_line_end()?;
                }
                "tnorm" => {
                    self.next();
                    let name = self.expect_ident("a t-norm name (min, lukasiewicz, product)")?;
                    let norm = name.value.parse::<TNorm>().map_err(|_| {
                        name.diag(
                            DiagnosticCode::Syntax,
                            name.value.clone(),
                            format!(
                                "unknown t-norm {:?}; expected min, lukasiewicz, or product",
                                name.value
                            ),
                        )
                    })?;
                    if raw.norm.replace(norm).is_some() {
                        return Err(name.diag(
                            DiagnosticCode::DuplicateDeclaration,
                            name.value.clone(),
                            "t-norm declared more than once".to_string(),
                        ));
                    }
                    self.expect_line_end()?;
                }
                "worlds" => {
                    self.next();
                    let labels = self.ident_list_to_eol("a world label")?;
                    if raw
                        .worlds
                        .replace(Spanned {
                            value: labels,
                            line: token.line,
                            col: token.col,
                        })
                        .is_some()
                    {
                        return Err(self.diag_at(
                            &token,
                            DiagnosticCode::DuplicateDeclaration,
                            "worlds declared more than once".to_string(),
                        ));
                    }
                }
                "atoms" => {
                    self.next();
                    let names = self.ident_list_to_eol("an atom name")?;
                    if raw
                        .atoms
                        .replace(Spanned {
                            value: names,
                            line: token.line,
                            col: token.col,
                        })
                        .is_some()
                    {
                        return Err(self.diag_at(
                            &token,
                            DiagnosticCode::DuplicateDeclaration,
                            "atoms declared more than once".to_string(),
                        ));
                    }
                }
                "world" => {
                    self.next();
                    let name = self.expect_ident("a world label")?;
                    self.expect_kind(TokenKind::LBrace, "'{'")?;
                    let mut assigns = Vec::new();
                    loop {
                        self.skip_newlines();
                        if matches!(self.peek().kind, TokenKind::RBrace) {
                            self.next();
                            break;
                        }
                        let atom = self.expect_ident("an atom name or '}'")?;
                        self.expect_kind(TokenKind::Colon, "':'")?;
                        let value = self.expect_ident("true or false")?;
                        let truth = match value.value.as_str() {
                            "true" => true,
                            "false" => false,
                            other => {
                                return Err(value.diag(
                                    DiagnosticCode::Syntax,
                                    other,
                                    format!("expected true or false, found {other:?}"),
                                ))
                            }
                        };
                        assigns.push((atom, truth));
                        self.skip_newlines();
                        if matches!(self.peek().kind, TokenKind::Comma) {
                            self.next();
                        }
                    }
                    raw.world_blocks.push((name, assigns));
                    self.expect_line_end()?;
                }
                "sim" => {
                    self.next();
                    if raw.sim_seen {
                        return Err(self.diag_at(
                            &token,
                            DiagnosticCode::DuplicateDeclaration,
                            "sim block declared more than once".to_string(),
                        ));
                    }
                    raw.sim_seen = true;
                    self.expect_kind(TokenKind::LBrace, "'{'")?;
                    loop {
                        self.skip_newlines();
                        if matches!(self.peek().kind, TokenKind::RBrace) {
                            self.next();
                            break;
                        }
                        let a = self.expect_ident("a world label or '}'")?;
                        let b = self.expect_ident("a world label")?;
                        let value = self.expect_number("a similarity degree")?;
                        raw.sim_entries.push((a, b, value.value));
                    }
                    self.expect_line_end()?;
                }
                "prop" => {
                    self.next();
                    let name = self.expect_ident("a proposition name")?;
                    self.expect_kind(TokenKind::Equals, "'='")?;
                    let rhs = if matches!(self.peek().kind, TokenKind::LBrace) {
                        PropRhs::Worlds(self.world_set()?)
                    } else {
                        PropRhs::Formula(self.formula_to_eol()?)
                    };
                    raw.props.push((name, rhs));
                    self.expect_line_end()?;
                }
                "evidence" => {
                    self.next();
                    self.expect_kind(TokenKind::Equals, "'='")?;
                    let rhs = if matches!(self.peek().kind, TokenKind::LBrace) {
                        EvidenceRhs::Worlds(self.world_set()?)
                    } else {
                        EvidenceRhs::Named(self.expect_ident("a proposition name or '{'")?)
                    };
                    if raw.evidence.replace(rhs).is_some() {
                        return Err(self.diag_at(
                            &token,
                            DiagnosticCode::DuplicateDeclaration,
                            "evidence declared more than once".to_string(),
                        ));
                    }
                    self.expect_line_end()?;
                }
                "partition" => {
                    self.next();
                    let name = self.expect_ident("a partition name")?;
                    self.expect_kind(TokenKind::Equals, "'='")?;
                    self.expect_kind(TokenKind::LBracket, "'['")?;
                    let mut blocks = Vec::new();
                    loop {
                        self.skip_newlines();
                        blocks.push(self.expect_ident("a proposition name")?);
                        self.skip_newlines();
                        match self.peek().kind {
                            TokenKind::Comma => {
                                self.next();
                            }
                            TokenKind::RBracket => {
                                self.next();
                                break;
                            }
                            _ => {
                                let t = self.peek().clone();
                                return Err(self.syntax(&t, "',' or ']'"));
                            }
                        }
                    }
                    raw.partitions.push((name, blocks));
                    self.expect_line_end()?;
                }
                "necessity" | "possibility" | "cond_necessity" | "cond_possibility" => {
                    self.next();
                    let kind = match keyword.as_str() {
                        "necessity" => TableKind::Necessity,
                        "possibility" => TableKind::Possibility,
                        "cond_necessity" => TableKind::ConditionalNecessity,
                        _ => TableKind::ConditionalPossibility,
                    };
                    let name = self.expect_ident("a table name")?;
                    self.expect_kind(TokenKind::LBrace, "'{'")?;
                    let mut entries = Vec::new();
                    loop {
                        self.skip_newlines();
                        if matches!(self.peek().kind, TokenKind::RBrace) {
                            self.next();
                            break;
                        }
                        let consequent = self.expect_ident("a proposition name or '}'")?;
                        let antecedent = if kind.is_conditional() {
                            self.expect_kind(TokenKind::Pipe, "'|'")?;
                            Some(self.expect_ident("an antecedent proposition name")?)
                        } else {
                            None
                        };
                        let value = self.expect_number("a degree")?;
                        entries.push(RawEntry {
                            consequent,
                            antecedent,
                            value: value.value,
                        });
                    }
                    raw.tables.push((kind, name, entries));
                    self.expect_line_end()?;
                }
                other => {
                    return Err(self.diag_at(
                        &token,
                        DiagnosticCode::Syntax,
                        format!("unknown declaration {other:?}"),
                    ))
                }
            }
        }
        let eof = self.peek();
        raw.end = (eof.line, eof.col);
        Ok(raw)
    }

    /// `<id>+` up to end of line.
    fn ident_list_to_eol(&mut self, expected: &str) -> Result<Vec<Spanned<String>>, Diagnostic> {
        let mut names = vec![self.expect_ident(expected)?];
        loop {
            match self.peek().kind {
                TokenKind::Ident(_) => names.push(self.expect_ident(expected)?),
                TokenKind::Newline => {
                    self.next();
                    return Ok(names);
                }
                TokenKind::Eof => return Ok(names),
                _ => {
                    let t = self.peek().clone();
                    return Err(self.syntax(&t, &format!("{expected} or end of line")));
                }
            }
        }
    }

    /// `{ <id> (, <id>)* }` or `{ }`.
    fn world_set(&mut self) -> Result<Vec<Spanned<String>>, Diagnostic> {
        self.expect_kind(TokenKind::LBrace, "'{'")?;
        let mut names = Vec::new();
        loop {
            self.skip_newlines();
            if matches!(self.peek().kind, TokenKind::RBrace) {
                self.next();
                return Ok(names);
            }
            names.push(self.expect_ident("a world label or '}'")?);
            self.skip_newlines();
            if matches!(self.peek().kind, TokenKind::Comma) {
                self.next();
            }
        }
    }

    /// Captures the rest of the source line and parses it as a formula.
    fn formula_to_eol(&mut self) -> Result<Spanned<Formula>, Diagnostic> {
        let start = self.peek().clone();
        if matches!(start.kind, TokenKind::Newline | TokenKind::Eof) {
            return Err(self.syntax(&start, "a formula or '{'"));
        }
        let line_text = self.lines.get(start.line - 1).copied().unwrap_or("");
        let slice: String = line_text.chars().skip(start.col - 1).collect();
        // Skip the already-lexed tokens of the formula region.
        while !matches!(self.peek().kind, TokenKind::Newline | TokenKind::Eof) {
            self.next();
        }
        match Formula::parse(&slice) {
            Ok(formula) => Ok(Spanned {
                value: formula,
                line: start.line,
                col: start.col,
            }),
            Err(err) => Err(Diagnostic {
                line: start.line,
                col: start.col + err.offset,
                code: DiagnosticCode::Syntax,
                token: slice.chars().skip(err.offset).take(1).collect::<String>(),
                message: err.message,
            }),
        }
    }
}

fn world_error_code(err: &WorldError) -> DiagnosticCode {
    match err {
        WorldError::DuplicateWorld(_) | WorldError::DuplicateAtom(_) => {
            DiagnosticCode::DuplicateDeclaration
        }
        WorldError::UnknownAtom(_) | WorldError::UnknownWorld(_) => {
            DiagnosticCode::UnresolvedReference
        }
        WorldError::EmptyEvidence => DiagnosticCode::EmptyEvidence,
        _ => DiagnosticCode::Syntax,
    }
}

fn resolve(raw: RawKb) -> Result<KnowledgeBase, Diagnostic> {
    let end_diag = |code: DiagnosticCode, message: String| Diagnostic {
        line: raw.end.0,
        col: raw.end.1,
        code,
        token: String::new(),
        message,
    };

    // Universe: either a `worlds` line or atom assignments, not both.
    let universe = match (&raw.worlds, &raw.atoms, raw.world_blocks.is_empty()) {
        (Some(worlds), None, true) => {
            let labels: Vec<String> = worlds.value.iter().map(|s| s.value.clone()).collect();
            Universe::from_labels(labels).map_err(|e| {
                let span = match &e {
                    WorldError::DuplicateWorld(name) => worlds
                        .value
                        .iter()
                        .rev()
                        .find(|s| &s.value == name)
                        .unwrap_or(&worlds.value[0]),
                    _ => &worlds.value[0],
                };
                span.diag(world_error_code(&e), span.value.clone(), e.to_string())
            })?
        }
        (Some(_), _, _) => {
            let span = raw
                .atoms
                .as_ref()
                .map(|a| (a.line, a.col))
                .or_else(|| raw.world_blocks.first().map(|(n, _)| (n.line, n.col)))
                .expect("mixed declaration detected");
            return Err(Diagnostic {
                line: span.0,
                col: span.1,
                code: DiagnosticCode::Syntax,
                token: String::new(),
                message: "cannot mix a `worlds` line with atom declarations".to_string(),
            });
        }
        (None, Some(atoms), _) => {
            if raw.world_blocks.is_empty() {
                return Err(Diagnostic {
                    line: atoms.line,
                    col: atoms.col,
                    code: DiagnosticCode::Syntax,
                    token: String::new(),
                    message: "atoms declared but no `world` blocks follow".to_string(),
                });
            }
            let atom_names: Vec<String> = atoms.value.iter().map(|s| s.value.clone()).collect();
            let mut rows = Vec::new();
            for (name, assigns) in &raw.world_blocks {
                let mut row: Vec<Option<bool>> = vec![None; atom_names.len()];
                for (atom, truth) in assigns {
                    let Some(idx) = atom_names.iter().position(|a| a == &atom.value) else {
                        return Err(atom.diag(
                            DiagnosticCode::UnresolvedReference,
                            atom.value.clone(),
                            format!("unknown atom {:?}", atom.value),
                        ));
                    };
                    if row[idx].replace(*truth).is_some() {
                        return Err(atom.diag(
                            DiagnosticCode::DuplicateDeclaration,
                            atom.value.clone(),
                            format!(
                                "atom {:?} assigned twice in world {:?}",
                                atom.value, name.value
                            ),
                        ));
                    }
                }
                if let Some(missing) = row.iter().position(|v| v.is_none()) {
                    return Err(name.diag(
                        DiagnosticCode::Syntax,
                        name.value.clone(),
                        format!(
                            "world {:?} does not assign atom {:?}",
                            name.value, atom_names[missing]
                        ),
                    ));
                }
                rows.push((
                    name.value.clone(),
                    row.into_iter().map(|v| v.unwrap()).collect::<Vec<bool>>(),
                ));
            }
            Universe::from_atom_assignments(atom_names, rows).map_err(|e| {
                let span = &raw.world_blocks[0].0;
                span.diag(world_error_code(&e), span.value.clone(), e.to_string())
            })?
        }
        (None, None, false) => {
            let (name, _) = &raw.world_blocks[0];
            return Err(name.diag(
                DiagnosticCode::UnresolvedReference,
                name.value.clone(),
                "`world` blocks need a preceding or following `atoms` declaration".to_string(),
            ));
        }
        (None, None, true) => {
            return Err(end_diag(
                DiagnosticCode::Syntax,
                "knowledge base declares no worlds".to_string(),
            ))
        }
    };
    let n = universe.size();

    // Similarity matrix: identity by default, symmetric fill, duplicates
    // tolerated only when they agree.
    let mut matrix = SimilarityMatrix::identity(n);
    let mut declared: HashMap<(usize, usize), f64> = HashMap::new();
    for (a, b, value) in &raw.sim_entries {
        let resolve_world = |s: &Spanned<String>| {
            universe.index_of(&s.value).ok_or_else(|| {
                s.diag(
                    DiagnosticCode::UnresolvedReference,
                    s.value.clone(),
                    format!("unknown world {:?}", s.value),
                )
            })
        };
        let i = resolve_world(a)?;
        let j = resolve_world(b)?;
        let key = (i.min(j), i.max(j));
        if let Some(&previous) = declared.get(&key) {
            if previous != *value {
                return Err(a.diag(
                    DiagnosticCode::ConflictingSimilarity,
                    a.value.clone(),
                    format!(
                        "similarity for ({}, {}) declared as {} and {}",
                        a.value, b.value, previous, value
                    ),
                ));
            }
        } else {
            declared.insert(key, *value);
        }
        let value = UnitValue::new(*value).expect("lexer range-checks degrees");
        matrix.set_symmetric(i, j, value);
    }

    // Propositions, in declaration order.
    let mut propositions: BTreeMap<String, crate::world::Proposition> = BTreeMap::new();
    for (name, rhs) in &raw.props {
        if propositions.contains_key(&name.value) {
            return Err(name.diag(
                DiagnosticCode::DuplicateDeclaration,
                name.value.clone(),
                format!("proposition {:?} declared more than once", name.value),
            ));
        }
        let prop = match rhs {
            PropRhs::Worlds(labels) => {
                let mut members = vec![false; n];
                for label in labels {
                    let Some(idx) = universe.index_of(&label.value) else {
                        return Err(label.diag(
                            DiagnosticCode::UnresolvedReference,
                            label.value.clone(),
                            format!("unknown world {:?}", label.value),
                        ));
                    };
                    members[idx] = true;
                }
                crate::world::Proposition::from_members(members)
            }
            PropRhs::Formula(formula) => evaluate_formula(&universe, &formula.value)
                .map_err(|e| formula.diag(world_error_code(&e), String::new(), e.to_string()))?,
        };
        propositions.insert(name.value.clone(), prop);
    }

    // Evidence.
    let evidence = match &raw.evidence {
        None => {
            return Err(end_diag(
                DiagnosticCode::EmptyEvidence,
                "knowledge base declares no evidence".to_string(),
            ))
        }
        Some(EvidenceRhs::Worlds(labels)) => {
            let mut members = vec![false; n];
            let mut span = (raw.end.0, raw.end.1);
            for label in labels {
                span = (label.line, label.col);
                let Some(idx) = universe.index_of(&label.value) else {
                    return Err(label.diag(
                        DiagnosticCode::UnresolvedReference,
                        label.value.clone(),
                        format!("unknown world {:?}", label.value),
                    ));
                };
                members[idx] = true;
            }
            EvidentialSet::new(crate::world::Proposition::from_members(members)).map_err(|e| {
                Diagnostic {
                    line: span.0,
                    col: span.1,
                    code: DiagnosticCode::EmptyEvidence,
                    token: String::new(),
                    message: e.to_string(),
                }
            })?
        }
        Some(EvidenceRhs::Named(name)) => {
            let Some(prop) = propositions.get(&name.value) else {
                return Err(name.diag(
                    DiagnosticCode::UnresolvedReference,
                    name.value.clone(),
                    format!("unknown proposition {:?}", name.value),
                ));
            };
            EvidentialSet::new(prop.clone()).map_err(|e| {
                name.diag(
                    DiagnosticCode::EmptyEvidence,
                    name.value.clone(),
                    e.to_string(),
                )
            })?
        }
    };

    // Partitions, stored by block names; validity is checked on use.
    let mut partitions: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for (name, blocks) in &raw.partitions {
        if partitions.contains_key(&name.value) {
            return Err(name.diag(
                DiagnosticCode::DuplicateDeclaration,
                name.value.clone(),
                format!("partition {:?} declared more than once", name.value),
            ));
        }
        let mut block_names = Vec::with_capacity(blocks.len());
        for block in blocks {
            if !propositions.contains_key(&block.value) {
                return Err(block.diag(
                    DiagnosticCode::UnresolvedReference,
                    block.value.clone(),
                    format!("unknown proposition {:?}", block.value),
                ));
            }
            block_names.push(block.value.clone());
        }
        partitions.insert(name.value.clone(), block_names);
    }

    // Tables.
    let mut tables: BTreeMap<(TableKind, String), DistributionTable> = BTreeMap::new();
    for (kind, name, entries) in &raw.tables {
        let key = (*kind, name.value.clone());
        if tables.contains_key(&key) {
            return Err(name.diag(
                DiagnosticCode::DuplicateDeclaration,
                name.value.clone(),
                format!(
                    "{} table {:?} declared more than once",
                    kind.keyword(),
                    name.value
                ),
            ));
        }
        let mut table = DistributionTable::new(*kind);
        for entry in entries {
            for side in [Some(&entry.consequent), entry.antecedent.as_ref()]
                .into_iter()
                .flatten()
            {
                if !propositions.contains_key(&side.value) {
                    return Err(side.diag(
                        DiagnosticCode::UnresolvedReference,
                        side.value.clone(),
                        format!("unknown proposition {:?}", side.value),
                    ));
                }
            }
            let table_key = match &entry.antecedent {
                Some(antecedent) => {
                    TableKey::conditional(entry.consequent.value.clone(), antecedent.value.clone())
                }
                None => TableKey::plain(entry.consequent.value.clone()),
            };
            let value = UnitValue::new(entry.value).expect("lexer range-checks degrees");
            if table.insert(table_key, value).is_some() {
                return Err(entry.consequent.diag(
                    DiagnosticCode::DuplicateDeclaration,
                    entry.consequent.value.clone(),
                    "table entry declared more than once".to_string(),
                ));
            }
        }
        tables.insert(key, table);
    }

    Ok(KnowledgeBase {
        norm: raw.norm.unwrap_or(TNorm::Min),
        universe,
        similarity: matrix,
        propositions,
        evidence,
        partitions,
        tables,
    })
}
