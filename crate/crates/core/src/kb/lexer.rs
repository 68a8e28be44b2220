//! Shared lexer for the knowledge-base format and the query language.

use super::{Diagnostic, DiagnosticCode};

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum TokenKind {
    Ident(String),
    /// A decimal literal in [0, 1] with at most 9 fractional digits. The raw
    /// spelling is kept for exact duplicate detection.
    Number {
        raw: String,
        value: f64,
    },
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Comma,
    Colon,
    Pipe,
    Equals,
    Amp,
    Bang,
    Newline,
    Eof,
}

impl TokenKind {
    pub(crate) fn describe(&self) -> String {
        match self {
            TokenKind::Ident(name) => format!("identifier {name:?}"),
            TokenKind::Number { raw, .. } => format!("number {raw}"),
            TokenKind::LBrace => "'{'".to_string(),
            TokenKind::RBrace => "'}'".to_string(),
            TokenKind::LBracket => "'['".to_string(),
            TokenKind::RBracket => "']'".to_string(),
            TokenKind::LParen => "'('".to_string(),
            TokenKind::RParen => "')'".to_string(),
            TokenKind::Comma => "','".to_string(),
            TokenKind::Colon => "':'".to_string(),
            TokenKind::Pipe => "'|'".to_string(),
            TokenKind::Equals => "'='".to_string(),
            TokenKind::Amp => "'&'".to_string(),
            TokenKind::Bang => "'!'".to_string(),
            TokenKind::Newline => "end of line".to_string(),
            TokenKind::Eof => "end of input".to_string(),
        }
    }

    pub(crate) fn raw_text(&self) -> String {
        match self {
            TokenKind::Ident(name) => name.clone(),
            TokenKind::Number { raw, .. } => raw.clone(),
            TokenKind::LBrace => "{".to_string(),
            TokenKind::RBrace => "}".to_string(),
            TokenKind::LBracket => "[".to_string(),
            TokenKind::RBracket => "]".to_string(),
            TokenKind::LParen => "(".to_string(),
            TokenKind::RParen => ")".to_string(),
            TokenKind::Comma => ",".to_string(),
            TokenKind::Colon => ":".to_string(),
            TokenKind::Pipe => "|".to_string(),
            TokenKind::Equals => "=".to_string(),
            TokenKind::Amp => "&".to_string(),
            TokenKind::Bang => "!".to_string(),
            TokenKind::Newline | TokenKind::Eof => String::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Token {
    pub kind: TokenKind,
    pub line: usize,
    pub col: usize,
}

/// Tokenizes the input. `#` comments run to end of line; newlines are kept
/// as tokens since the grammar is line-oriented outside bracketed blocks.
///
/// The formula right-hand side of `prop <id> = <formula>` is re-parsed from
/// the raw source line by [`crate::world::Formula::parse`]; the tokens lexed
/// here for that region are only used to find the end of the line.
pub(crate) fn lex(text: &str) -> Result<Vec<Token>, Diagnostic> {
    let mut tokens = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tline, tcol) = (line, col);
        match c {
            '\n' => {
                chars.next();
                tokens.push(Token {
                    kind: TokenKind::Newline,
                    line: tline,
                    col: tcol,
                });
                line += 1;
                col = 1;
            }
            '#' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                    col += 1;
                }
            }
            c if c.is_whitespace() => {
                chars.next();
                col += 1;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        name.push(c);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                tokens.push(Token {
                    kind: TokenKind::Ident(name),
                    line: tline,
                    col: tcol,
                });
            }
            c if c.is_ascii_digit() => {
                let mut raw = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_digit() {
                        raw.push(c);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                if chars.peek() == Some(&'.') {
                    raw.push('.');
                    chars.next();
                    col += 1;
                    let mut fraction = 0usize;
                    while let Some(&c) = chars.peek() {
                        if c.is_ascii_digit() {
                            raw.push(c);
                            fraction += 1;
                            chars.next();
                            col += 1;
                        } else {
                            break;
                        }
                    }
                    if fraction == 0 {
                        return Err(Diagnostic {
                            line: tline,
                            col: tcol,
                            code: DiagnosticCode::Lexical,
                            token: raw,
                            message: "expected digits after decimal point".to_string(),
                        });
                    }
                    if fraction > 9 {
                        return Err(Diagnostic {
                            line: tline,
                            col: tcol,
                            code: DiagnosticCode::Lexical,
                            token: raw.clone(),
                            message: format!("number {raw} has more than 9 fractional digits"),
                        });
                    }
                }
                let value: f64 = raw.parse().expect("digit-only literal");
                if !(0.0..=1.0).contains(&value) {
                    return Err(Diagnostic {
                        line: tline,
                        col: tcol,
                        code: DiagnosticCode::ValueOutOfRange,
                        token: raw.clone(),
                        message: format!("value {raw} lies outside [0, 1]"),
                    });
                }
                tokens.push(Token {
                    kind: TokenKind::Number { raw, value },
                    line: tline,
                    col: tcol,
                });
            }
            _ => {
                let kind = match c {
                    '{' => Some(TokenKind::LBrace),
                    '}' => Some(TokenKind::RBrace),
                    '[' => Some(TokenKind::LBracket),
                    ']' => Some(TokenKind::RBracket),
                    '(' => Some(TokenKind::LParen),
                    ')' => Some(TokenKind::RParen),
                    ',' => Some(TokenKind::Comma),
                    ':' => Some(TokenKind::Colon),
                    '|' => Some(TokenKind::Pipe),
                    '=' => Some(TokenKind::Equals),
                    '&' => Some(TokenKind::Amp),
                    '!' => Some(TokenKind::Bang),
                    _ => None,
                };
                match kind {
                    Some(kind) => {
                        chars.next();
                        col += 1;
                        tokens.push(Token {
                            kind,
                            line: tline,
                            col: tcol,
                        });
                    }
                    None => {
                        return Err(Diagnostic {
                            line: tline,
                            col: tcol,
                            code: DiagnosticCode::Lexical,
                            token: c.to_string(),
                            message: format!("unexpected character {c:?}"),
                        });
                    }
                }
            }
        }
    }
    tokens.push(Token {
        kind: TokenKind::Eof,
        line,
        col,
    });
    Ok(tokens)
}
