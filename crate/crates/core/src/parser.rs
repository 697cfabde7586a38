//! DIMACS CNF reading and writing.
//!
//! Accepted input: comment lines starting with `c`, one `p cnf <vars> <clauses>`
//! header, then whitespace-separated signed integers where `0` ends a clause.
//! Strict mode (the default) requires the clause count to match the header
//! and the last clause to be `0`-terminated. Lenient mode also accepts a
//! missing final `0`, extra clauses, and a `%` end-of-data marker.

use std::fmt;

use thiserror::Error;

use crate::oracle::{Cnf, MAX_INPUTS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParseErrorKind {
    MissingHeader,
    BadHeader,
    TooManyVariables,
    InvalidToken,
    LiteralOutOfRange { variable: u64 },
    UnterminatedClause,
    ClauseCountMismatch { declared: u64, found: u64 },
}

/// Where and why parsing stopped. Line and column are 1-based; columns count bytes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseDiagnostic {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{diagnostic}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub diagnostic: ParseDiagnostic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ParseOptions {
    pub lenient: bool,
}

struct Header {
    num_vars: u64,
    num_clauses: u64,
    line: usize,
}

fn fail(kind: ParseErrorKind, line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        kind,
        diagnostic: ParseDiagnostic {
            line,
            column,
            message: message.into(),
        },
    }
}

/// Splits a line into `(1-based column, token)` pairs.
fn tokens(line: &[u8]) -> impl Iterator<Item = (usize, &[u8])> {
    let mut pos = 0;
    std::iter::from_fn(move || {
        while pos < line.len() && line[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if pos >= line.len() {
            return None;
        }
        let start = pos;
        while pos < line.len() && !line[pos].is_ascii_whitespace() {
            pos += 1;
        }
        Some((start + 1, &line[start..pos]))
    })
}

fn parse_int(token: &[u8]) -> Option<i64> {
    std::str::from_utf8(token).ok()?.parse().ok()
}

fn parse_header(line: &[u8], line_no: usize) -> Result<Header, ParseError> {
    let toks: Vec<(usize, &[u8])> = tokens(line).collect();
    let bad = |column: usize, msg: &str| fail(ParseErrorKind::BadHeader, line_no, column, msg);
    if toks.len() != 4 || toks[0].1 != b"p" || toks[1].1 != b"cnf" {
        return Err(bad(toks[0].0, "expected header `p cnf <variables> <clauses>`"));
    }
    let count = |(column, tok): (usize, &[u8])| -> Result<u64, ParseError> {
        parse_int(tok)
            .and_then(|v| u64::try_from(v).ok())
            .ok_or_else(|| bad(column, "header counts must be non-negative integers"))
    };
    let num_vars = count(toks[2])?;
    let num_clauses = count(toks[3])?;
    if num_vars > MAX_INPUTS as u64 {
        return Err(fail(
            ParseErrorKind::TooManyVariables,
            line_no,
            toks[2].0,
            format!("{num_vars} variables exceeds the limit of {MAX_INPUTS}"),
        ));
    }
    Ok(Header {
        num_vars,
        num_clauses,
        line: line_no,
    })
}

/// Strict DIMACS parse.
pub fn parse_dimacs(input: &[u8]) -> Result<Cnf, ParseError> {
    parse_dimacs_with(input, &ParseOptions::default())
}

pub fn parse_dimacs_with(input: &[u8], options: &ParseOptions) -> Result<Cnf, ParseError> {
    let mut header: Option<Header> = None;
    let mut clauses: Vec<Vec<i32>> = Vec::new();
    let mut current: Vec<i32> = Vec::new();
    // position of the most recent literal, for end-of-input diagnostics
    let mut last_pos = (1, 1);

    for (idx, raw) in input.split(|&b| b == b'\n').enumerate() {
        let line_no = idx + 1;
        let Some(first) = raw.iter().position(|b| !b.is_ascii_whitespace()) else {
            continue;
        };
        match raw[first] {
            b'c' => continue,
            b'%' => {
                if options.lenient {
                    break;
                }
                return Err(fail(
                    ParseErrorKind::InvalidToken,
                    line_no,
                    first + 1,
                    "`%` end marker is only accepted in lenient mode",
                ));
            }
            b'p' => {
                if header.is_some() {
                    return Err(fail(ParseErrorKind::BadHeader, line_no, first + 1, "duplicate header"));
                }
                header = Some(parse_header(raw, line_no)?);
                continue;
            }
            _ => {}
        }
        for (column, tok) in tokens(raw) {
            let Some(h) = &header else {
                return Err(fail(
                    ParseErrorKind::MissingHeader,
                    line_no,
                    column,
                    "clause data before the `p cnf` header",
                ));
            };
            let lit = parse_int(tok).ok_or_else(|| {
                fail(
                    ParseErrorKind::InvalidToken,
                    line_no,
                    column,
                    format!("expected an integer literal, found `{}`", String::from_utf8_lossy(tok)),
                )
            })?;
            last_pos = (line_no, column);
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
                continue;
            }
            let variable = lit.unsigned_abs();
            if variable > h.num_vars {
                return Err(fail(
                    ParseErrorKind::LiteralOutOfRange { variable },
                    line_no,
                    column,
                    format!("variable {variable} exceeds the declared {} variables", h.num_vars),
                ));
            }
            // bounded by MAX_INPUTS, so the cast is lossless
            current.push(lit as i32);
        }
    }

    let Some(h) = header else {
        return Err(fail(ParseErrorKind::MissingHeader, 1, 1, "no `p cnf` header found"));
    };
    if !current.is_empty() {
        if !options.lenient {
            return Err(fail(
                ParseErrorKind::UnterminatedClause,
                last_pos.0,
                last_pos.1,
                "last clause is not terminated by 0",
            ));
        }
        clauses.push(current);
    }
    let found = clauses.len() as u64;
    if found != h.num_clauses && !(options.lenient && found > h.num_clauses) {
        return Err(fail(
            ParseErrorKind::ClauseCountMismatch {
                declared: h.num_clauses,
                found,
            },
            h.line,
            1,
            format!("header declares {} clauses, found {found}", h.num_clauses),
        ));
    }
    Ok(Cnf::new(h.num_vars as usize, clauses).expect("literals validated during parsing"))
}

/// Canonical DIMACS text: header, then one `0`-terminated clause per line.
pub fn format_dimacs(cnf: &Cnf) -> String {
    let mut out = format!("p cnf {} {}\n", cnf.num_vars(), cnf.clauses().len());
    for clause in cnf.clauses() {
        for lit in clause {
            out.push_str(&lit.to_string());
            out.push(' ');
        }
        out.push_str("0\n");
    }
    out
}
