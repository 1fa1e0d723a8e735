//! Recursive-descent parser for the q-series expression DSL.
//!
//! Grammar (whitespace between tokens is ignored):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-'? factor
//! factor := base ('^' signed-int)?
//! base   := unsigned-int
//!         | 'q'
//!         | 'f' unsigned-int            -- no space: f1, f12, ...
//!         | 'alpha(q' ('^' unsigned-int)? ')'
//!         | 'dissect(' expr ',' int ',' int ')'
//!         | '(' expr ')'
//! ```
//!
//! Unary minus folds into integer literals (`-3` is the constant -3) and
//! otherwise desugars to multiplication by -1; binary minus stays an
//! explicit [`Expr::Sub`] node so formulas print the way they read.

use std::fmt;

use thiserror::Error;

use crate::expr::Expr;

/// Parse failure with a byte position into the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at position {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError {
            position,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Num(u64),
    Q,
    F(usize),
    Alpha,
    Dissect,
    LParen,
    RParen,
    Comma,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Eof,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Num(v) => write!(f, "number {v}"),
            Token::Q => write!(f, "`q`"),
            Token::F(m) => write!(f, "`f{m}`"),
            Token::Alpha => write!(f, "`alpha`"),
            Token::Dissect => write!(f, "`dissect`"),
            Token::LParen => write!(f, "`(`"),
            Token::RParen => write!(f, "`)`"),
            Token::Comma => write!(f, "`,`"),
            Token::Plus => write!(f, "`+`"),
            Token::Minus => write!(f, "`-`"),
            Token::Star => write!(f, "`*`"),
            Token::Slash => write!(f, "`/`"),
            Token::Caret => write!(f, "`^`"),
            Token::Eof => write!(f, "end of input"),
        }
    }
}

fn lex(input: &str) -> Result<Vec<(Token, usize)>, ParseError> {
    let bytes = input.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
            }
            b'(' => {
                tokens.push((Token::LParen, start));
                i += 1;
            }
            b')' => {
                tokens.push((Token::RParen, start));
                i += 1;
            }
            b',' => {
                tokens.push((Token::Comma, start));
                i += 1;
            }
            b'+' => {
                tokens.push((Token::Plus, start));
                i += 1;
            }
            b'-' => {
                tokens.push((Token::Minus, start));
                i += 1;
            }
            b'*' => {
                tokens.push((Token::Star, start));
                i += 1;
            }
            b'/' => {
                tokens.push((Token::Slash, start));
                i += 1;
            }
            b'^' => {
                tokens.push((Token::Caret, start));
                i += 1;
            }
            b'0'..=b'9' => {
                let mut value: u64 = 0;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    value = value
                        .checked_mul(10)
                        .and_then(|v| v.checked_add((bytes[i] - b'0') as u64))
                        .ok_or_else(|| ParseError::new(start, "number too large"))?;
                    i += 1;
                }
                tokens.push((Token::Num(value), start));
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                let mut j = i;
                while j < bytes.len() && bytes[j].is_ascii_alphabetic() {
                    j += 1;
                }
                let word = &input[i..j];
                match word {
                    "q" => {
                        tokens.push((Token::Q, start));
                        i = j;
                    }
                    "alpha" => {
                        tokens.push((Token::Alpha, start));
                        i = j;
                    }
                    "dissect" => {
                        tokens.push((Token::Dissect, start));
                        i = j;
                    }
                    "f" => {
                        // digits must follow immediately: f1, f12, ...
                        if j < bytes.len() && bytes[j].is_ascii_digit() {
                            let mut value: u64 = 0;
                            while j < bytes.len() && bytes[j].is_ascii_digit() {
                                value = value
                                    .checked_mul(10)
                                    .and_then(|v| v.checked_add((bytes[j] - b'0') as u64))
                                    .ok_or_else(|| ParseError::new(start, "eta scale too large"))?;
                                j += 1;
                            }
                            if value == 0 {
                                return Err(ParseError::new(start, "eta scale must be at least 1"));
                            }
                            tokens.push((Token::F(value as usize), start));
                            i = j;
                        } else {
                            return Err(ParseError::new(i + 1, "expected digits after `f`"));
                        }
                    }
                    _ => {
                        return Err(ParseError::new(start, format!("unknown symbol `{word}`")));
                    }
                }
            }
            _ => {
                return Err(ParseError::new(
                    start,
                    format!("unexpected character `{}`", input[start..].chars().next().unwrap()),
                ));
            }
        }
    }
    tokens.push((Token::Eof, bytes.len()));
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    index: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.index].0
    }

    fn pos(&self) -> usize {
        self.tokens[self.index].1
    }

    fn advance(&mut self) -> Token {
        let token = self.tokens[self.index].0.clone();
        if self.index + 1 < self.tokens.len() {
            self.index += 1;
        }
        token
    }

    fn expect(&mut self, expected: Token) -> Result<(), ParseError> {
        if *self.peek() == expected {
            self.advance();
            Ok(())
        } else {
            Err(ParseError::new(
                self.pos(),
                format!("expected {expected}, found {}", self.peek()),
            ))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut node = self.term()?;
        loop {
            match self.peek() {
                Token::Plus => {
                    self.advance();
                    node = node + self.term()?;
                }
                Token::Minus => {
                    self.advance();
                    node = node - self.term()?;
                }
                _ => return Ok(node),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut node = self.unary()?;
        loop {
            match self.peek() {
                Token::Star => {
                    self.advance();
                    node = node * self.unary()?;
                }
                Token::Slash => {
                    self.advance();
                    node = node / self.unary()?;
                }
                _ => return Ok(node),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Token::Minus {
            self.advance();
            let inner = self.factor()?;
            return Ok(match inner {
                Expr::Int(v) => Expr::Int(-v),
                other => Expr::Int(-1) * other,
            });
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.base()?;
        if *self.peek() == Token::Caret {
            self.advance();
            let exponent = self.signed_int()?;
            return Ok(base.pow(exponent));
        }
        Ok(base)
    }

    fn signed_int(&mut self) -> Result<i64, ParseError> {
        let negative = if *self.peek() == Token::Minus {
            self.advance();
            true
        } else {
            false
        };
        let pos = self.pos();
        match self.advance() {
            Token::Num(v) => {
                let v = i64::try_from(v).map_err(|_| ParseError::new(pos, "number too large"))?;
                Ok(if negative { -v } else { v })
            }
            other => Err(ParseError::new(pos, format!("expected an integer, found {other}"))),
        }
    }

    fn unsigned_int(&mut self) -> Result<usize, ParseError> {
        let pos = self.pos();
        let value = self.signed_int()?;
        usize::try_from(value).map_err(|_| ParseError::new(pos, "expected a nonnegative integer"))
    }

    fn base(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.advance() {
            Token::Num(v) => {
                let v = i64::try_from(v).map_err(|_| ParseError::new(pos, "number too large"))?;
                Ok(Expr::Int(v))
            }
            Token::Q => Ok(Expr::Q),
            Token::F(m) => Ok(Expr::Eta(m)),
            Token::Alpha => {
                self.expect(Token::LParen)?;
                self.expect(Token::Q)?;
                let scale = if *self.peek() == Token::Caret {
                    self.advance();
                    let pos = self.pos();
                    let k = self.unsigned_int()?;
                    if k == 0 {
                        return Err(ParseError::new(pos, "alpha scale must be at least 1"));
                    }
                    k
                } else {
                    1
                };
                self.expect(Token::RParen)?;
                Ok(Expr::Alpha(scale))
            }
            Token::Dissect => {
                self.expect(Token::LParen)?;
                let inner = self.expr()?;
                self.expect(Token::Comma)?;
                let mod_pos = self.pos();
                let modulus = self.unsigned_int()?;
                if modulus == 0 {
                    return Err(ParseError::new(mod_pos, "dissect modulus must be at least 1"));
                }
                self.expect(Token::Comma)?;
                let res_pos = self.pos();
                let residue = self.unsigned_int()?;
                if residue >= modulus {
                    return Err(ParseError::new(
                        res_pos,
                        format!("residue {residue} must be smaller than modulus {modulus}"),
                    ));
                }
                self.expect(Token::RParen)?;
                Ok(inner.dissect(modulus, residue))
            }
            Token::LParen => {
                let inner = self.expr()?;
                self.expect(Token::RParen)?;
                Ok(inner)
            }
            other => Err(ParseError::new(
                pos,
                format!("expected a number, `q`, `f<m>`, `alpha(...)`, `dissect(...)` or `(`, found {other}"),
            )),
        }
    }
}

/// Parse a DSL expression; total on valid input, positioned error otherwise.
pub fn parse_expr(input: &str) -> Result<Expr, ParseError> {
    let tokens = lex(input)?;
    let mut parser = Parser { tokens, index: 0 };
    let expr = parser.expr()?;
    if *parser.peek() != Token::Eof {
        return Err(ParseError::new(
            parser.pos(),
            format!("unexpected {} after the expression", parser.peek()),
        ));
    }
    Ok(expr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Expr::*;

    fn b(e: crate::expr::Expr) -> Box<crate::expr::Expr> {
        Box::new(e)
    }

    #[test]
    fn parses_the_b_quotient() {
        let parsed = parse_expr("f2^2/(f1*f4^3)").unwrap();
        let expected = Div(
            b(Pow(b(Eta(2)), 2)),
            b(Mul(b(Eta(1)), b(Pow(b(Eta(4)), 3)))),
        );
        assert_eq!(parsed, expected);
    }

    #[test]
    fn parses_scalar_and_shift_chains() {
        let parsed = parse_expr("3*q*f2^6*f12^6/(f1^3*f4^11)").unwrap();
        // left-associated: ((((3*q)*f2^6)*f12^6) / (f1^3*f4^11))
        let expected = Div(
            b(Mul(
                b(Mul(b(Mul(b(Int(3)), b(Q))), b(Pow(b(Eta(2)), 6)))),
                b(Pow(b(Eta(12)), 6)),
            )),
            b(Mul(b(Pow(b(Eta(1)), 3)), b(Pow(b(Eta(4)), 11)))),
        );
        assert_eq!(parsed, expected);
    }

    #[test]
    fn parses_alpha_forms() {
        assert_eq!(parse_expr("alpha(q)").unwrap(), Alpha(1));
        assert_eq!(parse_expr("alpha(q^4)").unwrap(), Alpha(4));
        assert_eq!(parse_expr("alpha(q^12)^2").unwrap(), Pow(b(Alpha(12)), 2));
        assert!(parse_expr("alpha(q^0)").is_err());
        assert!(parse_expr("alpha(x)").is_err());
    }

    #[test]
    fn parses_dissect_with_validation() {
        assert_eq!(
            parse_expr("dissect(f1, 3, 2)").unwrap(),
            Dissect(b(Eta(1)), 3, 2)
        );
        let err = parse_expr("dissect(f1, 3, 3)").unwrap_err();
        assert!(err.message.contains("smaller than modulus"));
        assert!(parse_expr("dissect(f1, 0, 0)").is_err());
    }

    #[test]
    fn bare_f_is_a_positioned_error() {
        let err = parse_expr("f").unwrap_err();
        assert_eq!(err.position, 1);
        assert!(parse_expr("f0").is_err());
    }

    #[test]
    fn unary_minus_folds_into_literals() {
        assert_eq!(parse_expr("-3").unwrap(), Int(-3));
        assert_eq!(
            parse_expr("-f1").unwrap(),
            Mul(b(Int(-1)), b(Eta(1)))
        );
        assert_eq!(
            parse_expr("1 - 2 - 3").unwrap(),
            Sub(b(Sub(b(Int(1)), b(Int(2)))), b(Int(3)))
        );
    }

    #[test]
    fn negative_exponents_parse() {
        assert_eq!(parse_expr("f1^-1").unwrap(), Pow(b(Eta(1)), -1));
    }

    #[test]
    fn whitespace_is_ignored() {
        assert_eq!(
            parse_expr("  f2 ^ 2  /( f1 * f4 ^ 3 )").unwrap(),
            parse_expr("f2^2/(f1*f4^3)").unwrap()
        );
    }

    #[test]
    fn trailing_tokens_are_errors() {
        assert!(parse_expr("f1 f2").is_err());
        assert!(parse_expr("q2").is_err());
        assert!(parse_expr("").is_err());
        assert!(parse_expr("(f1").is_err());
    }
}
