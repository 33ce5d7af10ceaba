//! Parser for polynomial expressions in `x1..xn` with rational coefficients
//! and deformation symbols, e.g. `3/2*x1^2*x2 - (t12)*x2 + 1`.

use crate::error::{Error, Result};
use crate::ring::rational::parse_rational;
use crate::ring::{SymbolTable, ThetaScalar, XPolynomial};

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(String),
    Name(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Token::Num(chars[start..i].iter().collect()));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Name(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!(
                "unexpected character `{c}` in `{text}`"
            )));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    n: usize,
    table: &'a SymbolTable,
    text: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} in `{}`", self.text))
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<XPolynomial> {
        let mut acc = if self.eat('-') {
            self.term()?.neg()
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<XPolynomial> {
        let mut acc = self.power()?;
        while self.eat('*') {
            acc = acc.mul(&self.power()?);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<XPolynomial> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let e: u32 = match self.tokens.get(self.pos) {
            Some(Token::Num(s)) => s.parse().map_err(|_| self.err("bad exponent"))?,
            _ => return Err(self.err("expected an exponent")),
        };
        self.pos += 1;
        let mut out = XPolynomial::one(self.n);
        for _ in 0..e {
            out = out.mul(&base);
        }
        Ok(out)
    }

    fn atom(&mut self) -> Result<XPolynomial> {
        match self.tokens.get(self.pos).cloned() {
            Some(Token::Num(num)) => {
                self.pos += 1;
                let mut text = num;
                if self.peek() == Some(&Token::Op('/')) {
                    if let Some(Token::Num(den)) = self.tokens.get(self.pos + 1) {
                        text = format!("{text}/{den}");
                        self.pos += 2;
                    }
                }
                Ok(XPolynomial::constant(
                    self.n,
                    ThetaScalar::constant(parse_rational(&text)?),
                ))
            }
            Some(Token::Name(name)) => {
                self.pos += 1;
                if let Some(i) = name.strip_prefix('x').and_then(|d| d.parse::<usize>().ok()) {
                    if i == 0 || i > self.n {
                        return Err(Error::IndexOutOfRange {
                            index: i,
                            n: self.n,
                        });
                    }
                    return Ok(XPolynomial::var(self.n, i - 1));
                }
                match self.table.index_of(&name) {
                    Some(k) => Ok(XPolynomial::constant(self.n, ThetaScalar::symbol(k))),
                    None => Err(self.err(&format!("unknown name `{name}`"))),
                }
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("missing `)`"));
                }
                Ok(inner)
            }
            _ => Err(self.err("expected a number, variable or `(`")),
        }
    }
}

/// Parse a polynomial in `x1..xn`; other names must be deformation symbols.
pub fn parse_polynomial(text: &str, n: usize, table: &SymbolTable) -> Result<XPolynomial> {
    let mut p = Parser {
        tokens: tokenize(text)?,
        pos: 0,
        n,
        table,
        text,
    };
    if p.tokens.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let out = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rational::rat;
    use crate::ring::MultiIndex;

    #[test]
    fn parses_rendered_form() {
        let mut table = SymbolTable::new();
        table.intern("t12");
        let p = parse_polynomial("3/2*x1^2*x2 - (t12)*x2 + 1", 2, &table).unwrap();
        assert_eq!(
            p.coefficient(&MultiIndex::from_slice(&[2, 1])),
            ThetaScalar::constant(rat(3, 2))
        );
        assert_eq!(
            p.coefficient(&MultiIndex::from_slice(&[0, 1])),
            -ThetaScalar::symbol(0)
        );
        assert_eq!(parse_polynomial(&p.render(&table), 2, &table).unwrap(), p);
    }

    #[test]
    fn rejects_bad_input() {
        let table = SymbolTable::new();
        assert!(parse_polynomial("x3", 2, &table).is_err());
        assert!(parse_polynomial("x1 +", 2, &table).is_err());
        assert!(parse_polynomial("q", 2, &table).is_err());
        assert!(parse_polynomial("", 2, &table).is_err());
        assert_eq!(
            parse_polynomial("-(x1 - x2)", 2, &table).unwrap(),
            XPolynomial::var(2, 1).sub(&XPolynomial::var(2, 0))
        );
    }
}
