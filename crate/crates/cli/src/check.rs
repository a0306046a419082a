//! Operator expressions for `tsvf check`.
//!
//! One expression per line; blank lines and `#` comments are skipped.
//!
//! ```text
//! expr  := ['-'] term (('+' | '-') term)*
//! term  := [number ['*']] call
//! call  := identity | all_same ['(' i, j, … ')'] | pair_same(i, j) | pair_diff(i, j)
//!        | sd(i, j; k) | box(iX, jY, …)            X, Y ∈ {L, R}
//! ```
//! A number may carry an `i` suffix to make it imaginary, e.g. `0.5i`.

use std::fmt;

use serde::{Deserialize, Serialize};
use tsvf::{
    are_orthogonal_within, build_hamiltonian, is_resolution_of_identity_within, Operator, OperatorSpec,
    ProjectorDiagnostics, ProjectorKind, Side, TermSpec,
};

#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Imag(f64),
    Ident(String),
    Sym(char),
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
}

fn lex(src: &str) -> Result<Lexer, (usize, String)> {
    let chars: Vec<char> = src.chars().collect();
    let mut toks = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let ch = chars[k];
        let col = k + 1;
        if ch.is_whitespace() {
            k += 1;
        } else if ch.is_ascii_digit() || ch == '.' {
            let start = k;
            while k < chars.len() && (chars[k].is_ascii_digit() || chars[k] == '.') {
                k += 1;
            }
            if k < chars.len() && (chars[k] == 'e' || chars[k] == 'E') {
                let mut j = k + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    k = j;
                    while k < chars.len() && chars[k].is_ascii_digit() {
                        k += 1;
                    }
                }
            }
            let text: String = chars[start..k].iter().collect();
            let value: f64 = text.parse().map_err(|_| (col, format!("invalid number {text:?}")))?;
            let imaginary = k < chars.len()
                && chars[k] == 'i'
                && chars.get(k + 1).is_none_or(|c| !c.is_alphanumeric() && *c != '_');
            if imaginary {
                k += 1;
                toks.push((Tok::Imag(value), col));
            } else {
                toks.push((Tok::Num(value), col));
            }
        } else if ch.is_alphabetic() || ch == '_' {
            let start = k;
            while k < chars.len() && (chars[k].is_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            toks.push((Tok::Ident(chars[start..k].iter().collect()), col));
        } else if "()+-*,;".contains(ch) {
            toks.push((Tok::Sym(ch), col));
            k += 1;
        } else {
            return Err((col, format!("unexpected character {ch:?}")));
        }
    }
    Ok(Lexer { toks })
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_col: usize,
}

type PResult<T> = Result<T, (usize, String)>;

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn fail<T>(&self, msg: impl Into<String>) -> PResult<T> {
        Err((self.col(), msg.into()))
    }

    fn eat(&mut self, sym: char) -> bool {
        if self.peek() == Some(&Tok::Sym(sym)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, sym: char) -> PResult<()> {
        if self.eat(sym) {
            Ok(())
        } else {
            self.fail(format!("expected '{sym}'"))
        }
    }

    fn index(&mut self) -> PResult<usize> {
        match self.peek() {
            Some(Tok::Num(v)) if v.fract() == 0.0 && *v >= 0.0 => {
                let v = *v as usize;
                self.pos += 1;
                Ok(v)
            }
            _ => self.fail("expected particle index"),
        }
    }

    fn expr(&mut self) -> PResult<Vec<TermSpec>> {
        let mut terms = Vec::new();
        let mut sign = if self.eat('-') { -1.0 } else { 1.0 };
        loop {
            let mut term = self.term()?;
            term.coeff = [term.coeff[0] * sign, term.coeff[1] * sign];
            terms.push(term);
            if self.eat('+') {
                sign = 1.0;
            } else if self.eat('-') {
                sign = -1.0;
            } else if self.peek().is_none() {
                return Ok(terms);
            } else {
                return self.fail("expected '+', '-' or end of expression");
            }
        }
    }

    fn term(&mut self) -> PResult<TermSpec> {
        let coeff = match self.peek() {
            Some(Tok::Num(v)) => {
                let v = *v;
                self.pos += 1;
                self.eat('*');
                [v, 0.0]
            }
            Some(Tok::Imag(v)) => {
                let v = *v;
                self.pos += 1;
                self.eat('*');
                [0.0, v]
            }
            _ => [1.0, 0.0],
        };
        Ok(TermSpec {
            coeff,
            projector: self.call()?,
        })
    }

    fn pair(&mut self) -> PResult<[usize; 2]> {
        self.expect('(')?;
        let i = self.index()?;
        self.expect(',')?;
        let j = self.index()?;
        self.expect(')')?;
        Ok([i, j])
    }

    fn call(&mut self) -> PResult<ProjectorKind> {
        let col = self.col();
        let name = match self.next() {
            Some(Tok::Ident(name)) => name,
            _ => return Err((col, "expected projector name".into())),
        };
        match name.as_str() {
            "identity" => {
                if self.eat('(') {
                    self.expect(')')?;
                }
                Ok(ProjectorKind::Identity)
            }
            "all_same" => {
                if !self.eat('(') {
                    return Ok(ProjectorKind::all_same());
                }
                if self.eat(')') {
                    return Ok(ProjectorKind::all_same());
                }
                let mut ps = vec![self.index()?];
                while self.eat(',') {
                    ps.push(self.index()?);
                }
                self.expect(')')?;
                Ok(ProjectorKind::AllSame { particles: Some(ps) })
            }
            "pair_same" => Ok(ProjectorKind::PairSame { pair: self.pair()? }),
            "pair_diff" => Ok(ProjectorKind::PairDiff { pair: self.pair()? }),
            "sd" => {
                self.expect('(')?;
                let i = self.index()?;
                self.expect(',')?;
                let j = self.index()?;
                if !self.eat(';') {
                    self.expect(',')?;
                }
                let k = self.index()?;
                self.expect(')')?;
                Ok(ProjectorKind::sd(i, j, k))
            }
            "box" => {
                self.expect('(')?;
                let mut at = Vec::new();
                loop {
                    let p = self.index()?;
                    let side = match self.peek() {
                        Some(Tok::Ident(s)) if s == "L" => Side::L,
                        Some(Tok::Ident(s)) if s == "R" => Side::R,
                        _ => return self.fail("expected box letter L or R"),
                    };
                    self.pos += 1;
                    at.push((p, side));
                    if !self.eat(',') {
                        break;
                    }
                }
                self.expect(')')?;
                Ok(ProjectorKind::Box { at })
            }
            other => Err((col, format!("unknown projector {other:?}"))),
        }
    }
}

/// Parses one expression line into weighted projector terms.
pub fn parse_expression(src: &str) -> Result<Vec<TermSpec>, ParseError> {
    let at_line = |(column, message)| ParseError {
        line: 1,
        column,
        message,
    };
    let lexer = lex(src).map_err(at_line)?;
    let mut parser = Parser {
        toks: lexer.toks,
        pos: 0,
        end_col: src.chars().count() + 1,
    };
    if parser.peek().is_none() {
        return Err(ParseError {
            line: 1,
            column: 1,
            message: "empty expression".into(),
        });
    }
    parser.expr().map_err(at_line)
}

/// Parses a file of expressions, one per line.
pub fn parse_file(text: &str) -> Result<Vec<(String, Vec<TermSpec>)>, ParseError> {
    let mut out = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let terms = parse_expression(line).map_err(|e| ParseError { line: k + 1, ..e })?;
        out.push((line.trim().to_string(), terms));
    }
    if out.is_empty() {
        return Err(ParseError {
            line: 1,
            column: 1,
            message: "no expressions".into(),
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorCheck {
    pub expression: String,
    pub is_projector: bool,
    pub hermitian: bool,
    pub hermiticity_defect: f64,
    pub idempotency_defect: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairCheck {
    pub a: usize,
    pub b: usize,
    pub orthogonal: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub particles: usize,
    pub tolerance: f64,
    pub operators: Vec<OperatorCheck>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub pairwise_orthogonal: Vec<PairCheck>,
    pub resolution_of_identity: bool,
}

/// Runs the projector predicates on each parsed expression and, for lists,
/// the pairwise and completeness checks.
pub fn check_expressions(
    exprs: &[(String, Vec<TermSpec>)],
    particles: usize,
    tol: f64,
) -> Result<CheckReport, (usize, tsvf::Error)> {
    let mut ops: Vec<Operator> = Vec::with_capacity(exprs.len());
    for (k, (_, terms)) in exprs.iter().enumerate() {
        let spec = OperatorSpec::Sum(terms.clone())
            .hamiltonian(particles)
            .map_err(|e| (k, e))?;
        ops.push(build_hamiltonian(&spec).map_err(|e| (k, e))?);
    }
    let operators = exprs
        .iter()
        .zip(&ops)
        .map(|((expression, _), op)| {
            let diag = ProjectorDiagnostics::of(op);
            OperatorCheck {
                expression: expression.clone(),
                is_projector: diag.is_projector(tol),
                hermitian: diag.hermiticity_defect <= tol,
                hermiticity_defect: diag.hermiticity_defect,
                idempotency_defect: diag.idempotency_defect,
            }
        })
        .collect();
    let mut pairwise_orthogonal = Vec::new();
    if ops.len() > 1 {
        for a in 0..ops.len() {
            for b in (a + 1)..ops.len() {
                let orthogonal = are_orthogonal_within(&ops[a], &ops[b], tol).map_err(|e| (b, e))?;
                pairwise_orthogonal.push(PairCheck { a, b, orthogonal });
            }
        }
    }
    let resolution_of_identity = is_resolution_of_identity_within(&ops, tol).map_err(|e| (0, e))?;
    Ok(CheckReport {
        particles,
        tolerance: tol,
        operators,
        pairwise_orthogonal,
        resolution_of_identity,
    })
}

pub fn render_check(report: &CheckReport) -> String {
    use crate::format::sig;
    let mut out = format!(
        "particles: {}   tolerance: {}\n",
        report.particles,
        sig(report.tolerance, 6)
    );
    for (k, op) in report.operators.iter().enumerate() {
        out.push_str(&format!(
            "[{k}] {}\n    is_projector: {}   hermitian: {}   hermiticity_defect: {}   idempotency_defect: {}\n",
            op.expression,
            op.is_projector,
            op.hermitian,
            sig(op.hermiticity_defect, 6),
            sig(op.idempotency_defect, 6),
        ));
    }
    for p in &report.pairwise_orthogonal {
        out.push_str(&format!("orthogonal([{}], [{}]): {}\n", p.a, p.b, p.orthogonal));
    }
    out.push_str(&format!("resolution_of_identity: {}\n", report.resolution_of_identity));
    out
}
