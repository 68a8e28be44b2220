//! The query language: one measure applied to named knowledge-base objects.
//!
//! Supported forms: `I(p|q)`, `C(p|q)`, `pi(alpha, p)`, `nimp(q, p, alpha)`,
//! `nec(p)`, `poss(p)`, `nec(q|p)`, `poss(q|p)`, `gmp_nec(P, q)`,
//! `gmp_poss(P, q)`, with an optional trailing `with table <name>` on the
//! GMP forms selecting declared tables instead of the tightest ones.

use super::lexer::{lex, Token, TokenKind};
use super::{Diagnostic, DiagnosticCode, KnowledgeBase, ParseError};
use crate::distributions::TableKind;
use crate::tnorm::UnitValue;

/// A resolved query against a specific knowledge base.
#[derive(Debug, Clone, PartialEq)]
pub enum Query {
    Implication {
        p: String,
        q: String,
    },
    Consistence {
        p: String,
        q: String,
    },
    AlphaPossible {
        alpha: UnitValue,
        p: String,
    },
    NecessarilyImplies {
        q: String,
        p: String,
        alpha: UnitValue,
    },
    Necessity {
        p: String,
    },
    Possibility {
        p: String,
    },
    ConditionalNecessity {
        q: String,
        p: String,
    },
    ConditionalPossibility {
        q: String,
        p: String,
    },
    GmpNecessity {
        partition: String,
        consequent: String,
        table: Option<String>,
    },
    GmpPossibility {
        partition: String,
        consequent: String,
        table: Option<String>,
    },
}

impl Query {
    /// Stable name of the query form, used in JSON records.
    pub fn kind(&self) -> &'static str {
        match self {
            Query::Implication { .. } => "implication",
            Query::Consistence { .. } => "consistence",
            Query::AlphaPossible { .. } => "alpha-possible",
            Query::NecessarilyImplies { .. } => "necessarily-implies",
            Query::Necessity { .. } => "necessity",
            Query::Possibility { .. } => "possibility",
            Query::ConditionalNecessity { .. } => "conditional-necessity",
            Query::ConditionalPossibility { .. } => "conditional-possibility",
            Query::GmpNecessity { .. } => "gmp-necessity",
            Query::GmpPossibility { .. } => "gmp-possibility",
        }
    }
}

struct QueryParser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    kb: &'a KnowledgeBase,
}

/// Parses and resolves one query against `kb`.
pub fn parse_query(text: &str, kb: &KnowledgeBase) -> Result<Query, ParseError> {
    let tokens = lex(text).map_err(ParseError::single)?;
    let mut parser = QueryParser { tokens, pos: 0, kb };
    parser.query().map_err(ParseError::single)
}

impl<'a> QueryParser<'a> {
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

    fn skip_newlines(&mut self) {
        while matches!(self.peek().kind, TokenKind::Newline) {
            self.next();
        }
    }

    fn fail(&self, token: &Token, code: DiagnosticCode, message: String) -> Diagnostic {
        Diagnostic {
            line: token.line,
            col: token.col,
            code,
            token: token.kind.raw_text(),
            message,
        }
    }

    fn expect_kind(
        &mut self,
        kind: TokenKind,
        expected: &str,
        code: DiagnosticCode,
    ) -> Result<(), Diagnostic> {
        let token = self.peek().clone();
        if token.kind == kind {
            self.next();
            Ok(())
        } else {
            Err(self.fail(
                &token,
                code,
                format!("expected {expected}, found {}", token.kind.describe()),
            ))
        }
    }

    fn prop_name(&mut self) -> Result<String, Diagnostic> {
        let token = self.peek().clone();
        let TokenKind::Ident(name) = &token.kind else {
            return Err(self.fail(
                &token,
                DiagnosticCode::Arity,
                format!(
                    "expected a proposition name, found {}",
                    token.kind.describe()
                ),
            ));
        };
        let name = name.clone();
        self.next();
        if self.kb.proposition(&name).is_none() {
            return Err(self.fail(
                &token,
                DiagnosticCode::UnresolvedReference,
                format!("unknown proposition {name:?}"),
            ));
        }
        Ok(name)
    }

    fn alpha(&mut self) -> Result<UnitValue, Diagnostic> {
        let token = self.peek().clone();
        let TokenKind::Number { value, .. } = token.kind else {
            return Err(self.fail(
                &token,
                DiagnosticCode::Arity,
                format!(
                    "expected a degree in [0, 1], found {}",
                    token.kind.describe()
                ),
            ));
        };
        self.next();
        Ok(UnitValue::new(value).expect("lexer range-checks degrees"))
    }

    fn query(&mut self) -> Result<Query, Diagnostic> {
        self.skip_newlines();
        let head = self.peek().clone();
        let TokenKind::Ident(name) = &head.kind else {
            return Err(self.fail(
                &head,
                DiagnosticCode::Syntax,
                format!("expected a query form, found {}", head.kind.describe()),
            ));
        };
        let name = name.clone();
        self.next();
        self.expect_kind(TokenKind::LParen, "'('", DiagnosticCode::Syntax)?;
        let query = match name.as_str() {
            "I" | "C" => {
                let p = self.prop_name()?;
                self.expect_kind(TokenKind::Pipe, "'|'", DiagnosticCode::Arity)?;
                let q = self.prop_name()?;
                if name == "I" {
                    Query::Implication { p, q }
                } else {
                    Query::Consistence { p, q }
                }
            }
            "pi" => {
                let alpha = self.alpha()?;
                self.expect_kind(TokenKind::Comma, "','", DiagnosticCode::Arity)?;
                let p = self.prop_name()?;
                Query::AlphaPossible { alpha, p }
            }
            "nimp" => {
                let q = self.prop_name()?;
                self.expect_kind(TokenKind::Comma, "','", DiagnosticCode::Arity)?;
                let p = self.prop_name()?;
                self.expect_kind(TokenKind::Comma, "','", DiagnosticCode::Arity)?;
                let alpha = self.alpha()?;
                Query::NecessarilyImplies { q, p, alpha }
            }
            "nec" | "poss" => {
                let first = self.prop_name()?;
                if matches!(self.peek().kind, TokenKind::Pipe) {
                    self.next();
                    let p = self.prop_name()?;
                    if name == "nec" {
                        Query::ConditionalNecessity { q: first, p }
                    } else {
                        Query::ConditionalPossibility { q: first, p }
                    }
                } else if name == "nec" {
                    Query::Necessity { p: first }
                } else {
                    Query::Possibility { p: first }
                }
            }
            "gmp_nec" | "gmp_poss" => {
                let token = self.peek().clone();
                let TokenKind::Ident(partition) = &token.kind else {
                    return Err(self.fail(
                        &token,
                        DiagnosticCode::Arity,
                        format!("expected a partition name, found {}", token.kind.describe()),
                    ));
                };
                let partition = partition.clone();
                self.next();
                if !self.kb.partitions().contains_key(&partition) {
                    return Err(self.fail(
                        &token,
                        DiagnosticCode::UnresolvedReference,
                        format!("unknown partition {partition:?}"),
                    ));
                }
                self.expect_kind(TokenKind::Comma, "','", DiagnosticCode::Arity)?;
                let consequent = self.prop_name()?;
                self.expect_kind(TokenKind::RParen, "')'", DiagnosticCode::Arity)?;
                let table = self.with_table_clause(name == "gmp_nec")?;
                let query = if name == "gmp_nec" {
                    Query::GmpNecessity {
                        partition,
                        consequent,
                        table,
                    }
                } else {
                    Query::GmpPossibility {
                        partition,
                        consequent,
                        table,
                    }
                };
                self.end_of_query()?;
                return Ok(query);
            }
            other => {
                return Err(self.fail(
                    &head,
                    DiagnosticCode::Syntax,
                    format!("unknown query form {other:?}"),
                ))
            }
        };
        self.expect_kind(TokenKind::RParen, "')'", DiagnosticCode::Arity)?;
        self.end_of_query()?;
        Ok(query)
    }

    /// Optional `with table <name>`; the name must resolve to both the
    /// unconditioned and the conditional table of the matching kinds.
    fn with_table_clause(&mut self, necessity: bool) -> Result<Option<String>, Diagnostic> {
        if !matches!(&self.peek().kind, TokenKind::Ident(w) if w == "with") {
            return Ok(None);
        }
        self.next();
        let token = self.peek().clone();
        match &token.kind {
            TokenKind::Ident(w) if w == "table" => {
                self.next();
            }
            _ => {
                return Err(self.fail(
                    &token,
                    DiagnosticCode::Syntax,
                    format!("expected 'table', found {}", token.kind.describe()),
                ))
            }
        }
        let token = self.peek().clone();
        let TokenKind::Ident(name) = &token.kind else {
            return Err(self.fail(
                &token,
                DiagnosticCode::Syntax,
                format!("expected a table name, found {}", token.kind.describe()),
            ));
        };
        let name = name.clone();
        self.next();
        let (prior_kind, cond_kind) = if necessity {
            (TableKind::Necessity, TableKind::ConditionalNecessity)
        } else {
            (TableKind::Possibility, TableKind::ConditionalPossibility)
        };
        for kind in [prior_kind, cond_kind] {
            if self.kb.table(kind, &name).is_none() {
                return Err(self.fail(
                    &token,
                    DiagnosticCode::UnresolvedReference,
                    format!("no {} table named {name:?}", kind.keyword()),
                ));
            }
        }
        Ok(Some(name))
    }

    fn end_of_query(&mut self) -> Result<(), Diagnostic> {
        self.skip_newlines();
        let token = self.peek().clone();
        if matches!(token.kind, TokenKind::Eof) {
            Ok(())
        } else {
            Err(self.fail(
                &token,
                DiagnosticCode::Syntax,
                format!("unexpected {} after query", token.kind.describe()),
            ))
        }
    }
}
