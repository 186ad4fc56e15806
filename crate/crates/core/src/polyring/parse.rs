//! Recursive-descent parser for phase text such as `(y - x^2)^2 + 1/3*x^7`.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use super::{BivariatePolynomial, Rational};

const MAX_EXPONENT: u32 = 512;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("negative exponent at {pos}")]
    NegativeExponent { pos: usize },
    #[error("non-rational coefficient at {pos}: only integers and int/int are accepted")]
    NonRational { pos: usize },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::Syntax { pos, .. } | ParseError::NegativeExponent { pos } | ParseError::NonRational { pos } => {
                *pos
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    X,
    Y,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i];
        let tok = match ch {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && matches!(bytes[i], b'.' | b'e' | b'E') {
                    return Err(ParseError::NonRational { pos: start });
                }
                let n: BigInt = text[start..i].parse().expect("digits");
                out.push((start, Tok::Int(n)));
                continue;
            }
            b'.' => return Err(ParseError::NonRational { pos: i }),
            b'x' => Tok::X,
            b'y' => Tok::Y,
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            _ => {
                let c = text[i..].chars().next().unwrap_or('?');
                return Err(ParseError::Syntax {
                    pos: i,
                    msg: format!("unexpected character {c:?}"),
                });
            }
        };
        out.push((i, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn syntax<T>(&self, msg: &str) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.pos(),
            msg: msg.to_string(),
        })
    }

    fn expr(&mut self) -> Result<BivariatePolynomial, ParseError> {
        let mut negate = false;
        match self.peek() {
            Some(Tok::Minus) => {
                negate = true;
                self.at += 1;
            }
            Some(Tok::Plus) => self.at += 1,
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if negate { -&first } else { first };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.at += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.at += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<BivariatePolynomial, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.at += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(Tok::Int(_) | Tok::X | Tok::Y | Tok::LParen) => {
                    acc = &acc * &self.factor()?;
                }
                Some(Tok::Slash) => return self.syntax("division is only allowed inside a rational literal"),
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<BivariatePolynomial, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.at += 1;
        match self.peek().cloned() {
            Some(Tok::Minus) => Err(ParseError::NegativeExponent { pos: self.pos() }),
            Some(Tok::Int(k)) => {
                let pos = self.pos();
                self.at += 1;
                let k: u32 = match u32::try_from(&k) {
                    Ok(k) if k <= MAX_EXPONENT => k,
                    _ => {
                        return Err(ParseError::Syntax {
                            pos,
                            msg: format!("exponent larger than {MAX_EXPONENT}"),
                        })
                    }
                };
                Ok(base.pow(k))
            }
            _ => self.syntax("expected a nonnegative integer exponent"),
        }
    }

    fn atom(&mut self) -> Result<BivariatePolynomial, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.at += 1;
                let mut value = Rational::from_integer(n);
                if self.peek() == Some(&Tok::Slash) {
                    self.at += 1;
                    match self.peek().cloned() {
                        Some(Tok::Int(d)) if !d.is_zero() => {
                            self.at += 1;
                            value /= Rational::from_integer(d);
                        }
                        Some(Tok::Int(_)) => return self.syntax("zero denominator"),
                        _ => return Err(ParseError::NonRational { pos: self.pos() }),
                    }
                }
                Ok(BivariatePolynomial::constant(value))
            }
            Some(Tok::X) => {
                self.at += 1;
                Ok(BivariatePolynomial::x())
            }
            Some(Tok::Y) => {
                self.at += 1;
                Ok(BivariatePolynomial::y())
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.syntax("expected ')'");
                }
                self.at += 1;
                Ok(inner)
            }
            Some(_) => self.syntax("expected a number, x, y or '('"),
            None => self.syntax("unexpected end of input"),
        }
    }
}

/// Parses phase text into an exact polynomial.
///
/// Terms are joined by `+`/`-`; coefficients are integers or `int/int`;
/// `x` and `y` may carry `^k`; parenthesised sums and their integer powers
/// are expanded.
pub fn parse_polynomial(text: &str) -> Result<BivariatePolynomial, ParseError> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(ParseError::Syntax {
            pos: 0,
            msg: "empty input".into(),
        });
    }
    let mut parser = Parser {
        toks,
        at: 0,
        end: text.len(),
    };
    let p = parser.expr()?;
    if parser.at != parser.toks.len() {
        return parser.syntax("unexpected trailing input");
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{int, rat};

    fn terms(p: &BivariatePolynomial) -> Vec<((u32, u32), Rational)> {
        p.terms().map(|(e, c)| (e, c.clone())).collect()
    }

    #[test]
    fn spec_examples() {
        let p = parse_polynomial("x^2*y + y^3").unwrap();
        assert_eq!(terms(&p), vec![((0, 3), int(1)), ((2, 1), int(1))]);

        let p = parse_polynomial("(y - x^2)^2 + x^7").unwrap();
        assert_eq!(
            terms(&p),
            vec![((0, 2), int(1)), ((2, 1), int(-2)), ((4, 0), int(1)), ((7, 0), int(1))]
        );

        let p = parse_polynomial("-3/2*x^4").unwrap();
        assert_eq!(terms(&p), vec![((4, 0), rat(-3, 2))]);
    }

    #[test]
    fn implicit_products_and_parens() {
        let a = parse_polynomial("3x^2y + 1/3*x^7").unwrap();
        let b = parse_polynomial("3*x^2*y + (1/3)*x^7").unwrap();
        assert_eq!(a, b);
        let c = parse_polynomial("-(x + y)^2 + 2xy").unwrap();
        assert_eq!(c, parse_polynomial("-x^2 - y^2").unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse_polynomial("x^-2"), Err(ParseError::NegativeExponent { pos: 2 }));
        assert_eq!(parse_polynomial("1.5*x"), Err(ParseError::NonRational { pos: 0 }));
        assert_eq!(parse_polynomial("x/y").unwrap_err().position(), 1);
        assert!(matches!(
            parse_polynomial("x + "),
            Err(ParseError::Syntax { pos: 4, .. })
        ));
        assert!(matches!(parse_polynomial("(x + y"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_polynomial("z"), Err(ParseError::Syntax { pos: 0, .. })));
        assert!(matches!(parse_polynomial(""), Err(ParseError::Syntax { .. })));
    }
}
