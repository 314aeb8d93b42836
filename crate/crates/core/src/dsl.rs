//! Text forms for solutions and triplets.
//!
//! ```text
//! solution := "(" INT ";" INT ("," INT)* ")"
//! triplet  := algebra ":" replist
//! algebra  := factor ("+" factor)*
//! factor   := "gl(1)" | "sl(" INT ")"
//! replist  := rep ("#" rep)*
//! rep      := "L1" | "L1*" | "2L1" | "3L1" | "L2"
//! ```
//!
//! Whitespace is allowed between tokens. `+` is the direct sum, `#` the tensor product.

use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::castle::{CastleError, Solution};
use crate::liealg::FactorSpec;
use crate::reps::{RepKind, Triplet, DESK_SCALE_LIMIT};

/// Byte range `[start, end)` into the parsed text.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

impl SourceSpan {
    fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end);
        Self { start, end }
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("parse error at {span}: expected {expected}, found {found}")]
    Parse {
        span: SourceSpan,
        expected: String,
        found: String,
    },
    #[error("invalid value at {span}: {message}")]
    Value { span: SourceSpan, message: String },
    #[error("{factors} factors but {reps} representations")]
    ArityMismatch { factors: usize, reps: usize },
    #[error("representation {rep} is not available on {factor} (at {span})")]
    UnsupportedRep {
        span: SourceSpan,
        factor: FactorSpec,
        rep: RepKind,
    },
}

impl DslError {
    pub fn span(&self) -> Option<SourceSpan> {
        match self {
            DslError::Parse { span, .. } | DslError::Value { span, .. } | DslError::UnsupportedRep { span, .. } => {
                Some(*span)
            }
            DslError::ArityMismatch { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    LParen,
    RParen,
    Semi,
    Comma,
    Colon,
    Plus,
    Hash,
    Star,
    Int(BigUint),
    Ident(String),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::LParen => write!(f, "'('"),
            Tok::RParen => write!(f, "')'"),
            Tok::Semi => write!(f, "';'"),
            Tok::Comma => write!(f, "','"),
            Tok::Colon => write!(f, "':'"),
            Tok::Plus => write!(f, "'+'"),
            Tok::Hash => write!(f, "'#'"),
            Tok::Star => write!(f, "'*'"),
            Tok::Int(v) => write!(f, "integer {v}"),
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, SourceSpan)>, DslError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let single = match c {
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b';' => Some(Tok::Semi),
            b',' => Some(Tok::Comma),
            b':' => Some(Tok::Colon),
            b'+' => Some(Tok::Plus),
            b'#' => Some(Tok::Hash),
            b'*' => Some(Tok::Star),
            _ => None,
        };
        if let Some(tok) = single {
            out.push((tok, SourceSpan::new(start, start + 1)));
            i += 1;
        } else if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let v: BigUint = text[start..i].parse().expect("digits");
            out.push((Tok::Int(v), SourceSpan::new(start, i)));
        } else if c.is_ascii_alphabetic() {
            while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((Tok::Ident(text[start..i].to_string()), SourceSpan::new(start, i)));
        } else {
            let ch = text[start..].chars().next().expect("non-empty");
            return Err(DslError::Parse {
                span: SourceSpan::new(start, start + ch.len_utf8()),
                expected: "a token".into(),
                found: format!("'{ch}'"),
            });
        }
    }
    out.push((Tok::Eof, SourceSpan::new(text.len(), text.len())));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, SourceSpan)>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self, DslError> {
        Ok(Self { toks: lex(text)?, pos: 0 })
    }

    fn peek(&self) -> &(Tok, SourceSpan) {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> (Tok, SourceSpan) {
        let t = self.toks[self.pos].clone();
        if t.0 != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> DslError {
        let (tok, span) = self.peek();
        DslError::Parse {
            span: *span,
            expected: expected.to_string(),
            found: tok.to_string(),
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<SourceSpan, DslError> {
        if self.peek().0 == tok {
            Ok(self.bump().1)
        } else {
            Err(self.error(&tok.to_string()))
        }
    }

    fn int(&mut self) -> Result<(BigUint, SourceSpan), DslError> {
        match self.peek().clone() {
            (Tok::Int(v), span) => {
                self.bump();
                Ok((v, span))
            }
            _ => Err(self.error("an integer")),
        }
    }

    fn ident(&mut self, expected: &str) -> Result<(String, SourceSpan), DslError> {
        match self.peek().clone() {
            (Tok::Ident(s), span) => {
                self.bump();
                Ok((s, span))
            }
            _ => Err(self.error(expected)),
        }
    }

    fn end(&mut self) -> Result<(), DslError> {
        self.expect(Tok::Eof).map(|_| ())
    }

    fn solution(&mut self) -> Result<Solution, DslError> {
        self.expect(Tok::LParen)?;
        let (a, a_span) = self.int()?;
        self.expect(Tok::Semi)?;
        let mut parts = vec![self.int()?];
        while self.peek().0 == Tok::Comma {
            self.bump();
            parts.push(self.int()?);
        }
        self.expect(Tok::RParen)?;
        self.end()?;
        if a < BigUint::from(2u32) {
            return Err(DslError::Value {
                span: a_span,
                message: "a must be at least 2".into(),
            });
        }
        if let Some((_, span)) = parts.iter().find(|(m, _)| *m < BigUint::from(1u32)) {
            return Err(DslError::Value {
                span: *span,
                message: "parts must be positive".into(),
            });
        }
        Solution::new(a, parts.into_iter().map(|(m, _)| m).collect()).map_err(|e: CastleError| DslError::Value {
            span: a_span,
            message: e.to_string(),
        })
    }

    fn factor(&mut self) -> Result<(FactorSpec, SourceSpan), DslError> {
        let (name, start) = self.ident("'gl' or 'sl'")?;
        match name.as_str() {
            "gl" | "sl" => {}
            _ => {
                return Err(DslError::Parse {
                    span: start,
                    expected: "'gl' or 'sl'".into(),
                    found: format!("'{name}'"),
                })
            }
        }
        self.expect(Tok::LParen)?;
        let (n, n_span) = self.int()?;
        let end = self.expect(Tok::RParen)?;
        let span = SourceSpan::new(start.start, end.end);
        if name == "gl" {
            if n != BigUint::from(1u32) {
                return Err(DslError::Value {
                    span: n_span,
                    message: "only gl(1) is supported".into(),
                });
            }
            return Ok((FactorSpec::Gl1, span));
        }
        match n.to_usize() {
            Some(n) if (1..=DESK_SCALE_LIMIT).contains(&n) => Ok((FactorSpec::Sl(n), span)),
            _ => Err(DslError::Value {
                span: n_span,
                message: format!("sl(n) needs 1 ≤ n ≤ {DESK_SCALE_LIMIT}"),
            }),
        }
    }

    fn rep(&mut self) -> Result<(RepKind, SourceSpan), DslError> {
        let expected = "one of L1, L1*, 2L1, 3L1, L2";
        let start = self.peek().1;
        let power = match self.peek().clone() {
            (Tok::Int(v), span) => {
                self.bump();
                match v.to_u32() {
                    Some(d @ (2 | 3)) => Some(d),
                    _ => {
                        return Err(DslError::Parse {
                            span,
                            expected: expected.into(),
                            found: format!("integer {v}"),
                        })
                    }
                }
            }
            _ => None,
        };
        let (name, name_span) = self.ident(expected)?;
        let bad = |found: String| DslError::Parse {
            span: name_span,
            expected: expected.into(),
            found,
        };
        let mut end = name_span.end;
        let kind = match (power, name.as_str()) {
            (Some(d), "L1") => RepKind::Sym(d),
            (None, "L2") => RepKind::L2,
            (None, "L1") => {
                if self.peek().0 == Tok::Star {
                    end = self.bump().1.end;
                    RepKind::L1Dual
                } else {
                    RepKind::L1
                }
            }
            _ => return Err(bad(format!("'{name}'"))),
        };
        Ok((kind, SourceSpan::new(start.start, end)))
    }

    fn triplet(&mut self) -> Result<Triplet, DslError> {
        let mut factors = vec![self.factor()?];
        while self.peek().0 == Tok::Plus {
            self.bump();
            factors.push(self.factor()?);
        }
        self.expect(Tok::Colon)?;
        let mut reps = vec![self.rep()?];
        while self.peek().0 == Tok::Hash {
            self.bump();
            reps.push(self.rep()?);
        }
        self.end()?;
        if factors.len() != reps.len() {
            return Err(DslError::ArityMismatch {
                factors: factors.len(),
                reps: reps.len(),
            });
        }
        let mut space_dim: usize = 1;
        for (&(factor, _), &(rep, span)) in factors.iter().zip(&reps) {
            let degree = match factor_rep_degree(factor, rep) {
                Some(d) => d,
                None => return Err(DslError::UnsupportedRep { span, factor, rep }),
            };
            space_dim = space_dim.saturating_mul(degree);
            if space_dim > DESK_SCALE_LIMIT {
                return Err(DslError::Value {
                    span,
                    message: format!("space dimension exceeds the desk-scale limit {DESK_SCALE_LIMIT}"),
                });
            }
        }
        let signature = factors.iter().zip(&reps).map(|(&(f, _), &(r, _))| (f, r)).collect();
        // Every pair was checked by `factor_rep_degree` above.
        Ok(Triplet::from_signature(signature).expect("validated signature"))
    }
}

/// Degree of a named representation, or `None` when it is unavailable.
fn factor_rep_degree(factor: FactorSpec, rep: RepKind) -> Option<usize> {
    match (factor, rep) {
        (FactorSpec::Gl1, RepKind::L1 | RepKind::L1Dual) => Some(1),
        (FactorSpec::Gl1, _) => None,
        (FactorSpec::Sl(n), RepKind::L1 | RepKind::L1Dual) => Some(n),
        (FactorSpec::Sl(n), RepKind::Sym(d)) if n >= 2 => {
            // binom(n + d - 1, d)
            let d = d as usize;
            Some((1..=d).fold(1usize, |acc, i| acc * (n + i - 1) / i))
        }
        (FactorSpec::Sl(n), RepKind::L2) if n >= 2 => Some(n * (n - 1) / 2),
        _ => None,
    }
}

pub fn parse_solution(text: &str) -> Result<Solution, DslError> {
    Parser::new(text)?.solution()
}

pub fn parse_triplet(text: &str) -> Result<Triplet, DslError> {
    Parser::new(text)?.triplet()
}

/// Either form accepted on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Solution(Solution),
    Triplet(Triplet),
}

/// Dispatches on the first non-blank character: `(` starts a solution.
pub fn parse_expr(text: &str) -> Result<Expr, DslError> {
    if text.trim_start().starts_with('(') {
        parse_solution(text).map(Expr::Solution)
    } else {
        parse_triplet(text).map(Expr::Triplet)
    }
}

pub fn render_solution(s: &Solution) -> String {
    s.to_string()
}

/// Canonical text of a triplet built from named pieces. Derived triplets have
/// no text form and render as a bracketed summary that does not parse.
pub fn render_triplet(t: &Triplet) -> String {
    match t.signature() {
        Some(sig) => {
            let algebra: Vec<String> = sig.iter().map(|(f, _)| f.to_string()).collect();
            let reps: Vec<String> = sig.iter().map(|(_, r)| r.to_string()).collect();
            format!("{} : {}", algebra.join("+"), reps.join("#"))
        }
        None => format!("<{} on V({})>", t.algebra(), t.space_dim()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solutions_parse() {
        assert_eq!(parse_solution("(2; 3, 11)").unwrap(), Solution::of(2, &[3, 11]));
        assert_eq!(parse_solution("( 5 ; 4 )").unwrap(), Solution::of(5, &[4]));
        assert_eq!(parse_solution("(2;11,3)").unwrap(), Solution::of(2, &[3, 11]));
        let big = parse_solution("(2; 3, 11, 131, 99999999999999999999999999)").unwrap();
        assert_eq!(big.k(), 4);
    }

    #[test]
    fn solution_errors() {
        assert!(matches!(parse_solution("(2; 0)"), Err(DslError::Value { .. })));
        assert!(matches!(parse_solution("(1; 3)"), Err(DslError::Value { .. })));
        let err = parse_solution("(2;x)").unwrap_err();
        assert_eq!(err.span(), Some(SourceSpan { start: 3, end: 4 }));
        assert!(matches!(parse_solution("(2; 3"), Err(DslError::Parse { .. })));
        assert!(matches!(parse_solution("(2; 3) extra"), Err(DslError::Parse { .. })));
        assert!(matches!(parse_solution("(2; )"), Err(DslError::Parse { .. })));
        let err = parse_solution("(2; 3 ⊗)").unwrap_err();
        let span = err.span().unwrap();
        assert_eq!(&"(2; 3 ⊗)"[span.start..span.end], "⊗");
    }

    #[test]
    fn triplets_parse() {
        let t = parse_triplet("gl(1)+sl(2) : L1#3L1").unwrap();
        assert_eq!((t.algebra().dim(), t.space_dim()), (4, 4));
        let t = parse_triplet("gl(1)+sl(5)+sl(4) : L1#L2#L1").unwrap();
        assert_eq!(t.space_dim(), 40);
        let t = parse_triplet("sl(2) : L2").unwrap();
        assert_eq!(t.space_dim(), 1);
        let t = parse_triplet("sl(3)+gl(1) : L1*#L1*").unwrap();
        assert_eq!(t.space_dim(), 3);
    }

    #[test]
    fn triplet_errors() {
        assert!(matches!(parse_triplet("gl(1) : L2"), Err(DslError::UnsupportedRep { .. })));
        assert!(matches!(parse_triplet("sl(1) : 2L1"), Err(DslError::UnsupportedRep { .. })));
        assert_eq!(
            parse_triplet("gl(1)+sl(2) : L1"),
            Err(DslError::ArityMismatch { factors: 2, reps: 1 })
        );
        assert!(matches!(parse_triplet("gl(2) : L1"), Err(DslError::Value { .. })));
        assert!(matches!(parse_triplet("so(3) : L1"), Err(DslError::Parse { .. })));
        assert!(matches!(parse_triplet("sl(3) : 4L1"), Err(DslError::Parse { .. })));
        assert!(matches!(parse_triplet("sl(3) : L3"), Err(DslError::Parse { .. })));
        assert!(matches!(parse_triplet("sl(30)+sl(30) : L1#L1"), Err(DslError::Value { .. })));
    }

    #[test]
    fn rendering() {
        assert_eq!(render_solution(&Solution::of(2, &[11, 3])), "(2; 3, 11)");
        let t = crate::reps::tensor_triplet(&Solution::of(3, &[2])).unwrap();
        assert_eq!(render_triplet(&t), "gl(1)+sl(3)+sl(2) : L1#2L1#L1");
        assert_eq!(parse_triplet(&render_triplet(&t)).unwrap(), t);
    }

    mod props {
        use super::*;
        use crate::castle::{enumerate, SUPPORTED_A};
        use proptest::prelude::*;

        fn factor_and_rep() -> impl Strategy<Value = (FactorSpec, RepKind)> {
            prop_oneof![
                Just((FactorSpec::Gl1, RepKind::L1)),
                Just((FactorSpec::Gl1, RepKind::L1Dual)),
                (1usize..5).prop_map(|n| (FactorSpec::Sl(n), RepKind::L1)),
                (1usize..5).prop_map(|n| (FactorSpec::Sl(n), RepKind::L1Dual)),
                (2usize..4, 2u32..4).prop_map(|(n, d)| (FactorSpec::Sl(n), RepKind::Sym(d))),
                (2usize..6).prop_map(|n| (FactorSpec::Sl(n), RepKind::L2)),
            ]
        }

        proptest! {
            #[test]
            fn enumerated_solutions_round_trip(idx in any::<prop::sample::Index>()) {
                let all: Vec<Solution> = SUPPORTED_A
                    .iter()
                    .flat_map(|&a| enumerate(a, 1_000_000, 5).unwrap())
                    .collect();
                let s = &all[idx.index(all.len())];
                prop_assert_eq!(&parse_solution(&render_solution(s)).unwrap(), s);
            }

            #[test]
            fn triplets_round_trip(sig in proptest::collection::vec(factor_and_rep(), 1..4)) {
                let degree: usize = sig.iter().map(|&(f, r)| factor_rep_degree(f, r).unwrap()).product();
                prop_assume!(degree <= 64);
                let t = Triplet::from_signature(sig).unwrap();
                prop_assert_eq!(parse_triplet(&render_triplet(&t)).unwrap(), t);
            }

            #[test]
            fn error_spans_lie_within_input(text in "[ -~]{0,24}") {
                for err in [parse_solution(&text).err(), parse_triplet(&text).err()].into_iter().flatten() {
                    if let Some(span) = err.span() {
                        prop_assert!(span.start <= span.end && span.end <= text.len());
                    }
                }
            }
        }
    }
}
