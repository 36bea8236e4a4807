//! Recursive-descent parser.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | atom ('^' signed-int)?
//! atom   := integer | 'a' | identifier | '(' expr ')'
//! ```

use num_bigint::BigInt;

use super::ast::Term;
use crate::error::{Error, Result};

const MAX_DEPTH: usize = 256;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n = src[start..i].parse::<BigInt>().expect("digits");
                out.push((start, Tok::Int(n)));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(src[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = src[i..].chars().next().unwrap_or('?');
                return Err(Error::Syntax {
                    position: i,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        };
        out.push((start, tok));
        i += 1;
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    depth: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn at(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            position: self.at(),
            message: message.into(),
        })
    }

    fn enter(&mut self) -> Result<()> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return self.fail("expression nested too deeply");
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Term> {
        self.enter()?;
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Term::add(lhs, self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Term::sub(lhs, self.term()?);
                }
                _ => break,
            }
        }
        self.depth -= 1;
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Term> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = Term::mul(lhs, self.factor()?);
                }
                Tok::Slash => {
                    self.bump();
                    lhs = Term::div(lhs, self.factor()?);
                }
                _ => break,
            }
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Term> {
        if *self.peek() == Tok::Minus {
            self.enter()?;
            self.bump();
            let inner = self.factor()?;
            self.depth -= 1;
            return Ok(Term::neg(inner));
        }
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let negative = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        let Tok::Int(k) = self.peek().clone() else {
            return self.fail("expected an integer exponent");
        };
        let k: i64 = match i64::try_from(&k) {
            Ok(k) => k,
            Err(_) => return self.fail("exponent out of range"),
        };
        self.bump();
        Ok(Term::pow(base, if negative { -k } else { k }))
    }

    fn atom(&mut self) -> Result<Term> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Term::Numeral(n))
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(if name == "a" {
                    Term::ErrorConst
                } else {
                    Term::Var(name)
                })
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return self.fail("expected `)`");
                }
                self.bump();
                Ok(inner)
            }
            Tok::End => self.fail("unexpected end of input"),
            other => self.fail(format!("unexpected {}", describe(&other))),
        }
    }
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::Int(_) => "number",
        Tok::Ident(_) => "identifier",
        Tok::Plus => "`+`",
        Tok::Minus => "`-`",
        Tok::Star => "`*`",
        Tok::Slash => "`/`",
        Tok::Caret => "`^`",
        Tok::LParen => "`(`",
        Tok::RParen => "`)`",
        Tok::End => "end of input",
    }
}

/// Parses an expression. The identifier `a` always denotes the absorbing
/// element.
pub fn parse(text: &str) -> Result<Term> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        depth: 0,
    };
    let t = p.expr()?;
    if *p.peek() != Tok::End {
        let what = describe(p.peek());
        return p.fail(format!("unexpected {what} after expression"));
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        assert_eq!(parse("1/0").unwrap(), Term::div(Term::num(1), Term::num(0)));
        assert_eq!(
            parse("x^-1 * y^-1").unwrap(),
            Term::mul(Term::inv(Term::var("x")), Term::inv(Term::var("y")))
        );
        assert_eq!(
            parse("2 + -3 * 4").unwrap(),
            Term::add(
                Term::num(2),
                Term::mul(Term::neg(Term::num(3)), Term::num(4))
            )
        );
        assert_eq!(
            parse("x + a").unwrap(),
            Term::add(Term::var("x"), Term::ErrorConst)
        );
        assert_eq!(
            parse("-x^2").unwrap(),
            Term::neg(Term::Pow(Box::new(Term::var("x")), 2))
        );
        assert_eq!(parse("x^1").unwrap(), Term::var("x"));
        assert_eq!(
            parse("x^-3").unwrap(),
            Term::inv(Term::Pow(Box::new(Term::var("x")), 3))
        );
        assert_eq!(
            parse("1 - 2 - 3").unwrap(),
            Term::sub(Term::sub(Term::num(1), Term::num(2)), Term::num(3))
        );
    }

    #[test]
    fn errors_carry_positions() {
        match parse("1 + * 2") {
            Err(Error::Syntax { position, .. }) => assert_eq!(position, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse("(1 + 2"),
            Err(Error::Syntax { position: 6, .. })
        ));
        assert!(matches!(parse("x^y"), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse("1 $ 2"),
            Err(Error::Syntax { position: 2, .. })
        ));
        assert!(matches!(parse(""), Err(Error::Syntax { .. })));
        let deep = "(".repeat(1000) + "1" + &")".repeat(1000);
        assert!(matches!(parse(&deep), Err(Error::Syntax { .. })));
    }

    #[test]
    fn printing_round_trips() {
        for src in [
            "1/0",
            "x^-1 * y^-1",
            "2 + -3 * 4",
            "(1 + 0*x)^-1",
            "x^0 - a",
            "--x^-2",
        ] {
            let t = parse(src).unwrap();
            assert_eq!(parse(&t.to_string()).unwrap(), t, "{src} printed as {t}");
        }
    }
}
