//! Tokenizer and recursive-descent parser shared by scalar and polynomial
//! expressions.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | '+' unary | power
//! power  := atom ('^' '-'? integer)?
//! atom   := integer | 'q' | label '[' integer ',' integer ']' | '(' expr ')'
//! ```

use super::ScalarError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Token {
    Int(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
}

pub(crate) fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ScalarError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Token::Plus,
            '-' => Token::Minus,
            '*' => Token::Star,
            '/' => Token::Slash,
            '^' => Token::Caret,
            '(' => Token::LParen,
            ')' => Token::RParen,
            '[' => Token::LBracket,
            ']' => Token::RBracket,
            ',' => Token::Comma,
            d if d.is_ascii_digit() => {
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                Token::Int(chars[start..=i].iter().collect())
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                while i + 1 < chars.len()
                    && (chars[i + 1].is_ascii_alphanumeric() || chars[i + 1] == '_' || chars[i + 1] == '.')
                {
                    i += 1;
                }
                Token::Ident(chars[start..=i].iter().collect())
            }
            other => {
                return Err(ScalarError::Syntax {
                    pos: start,
                    msg: format!("unexpected character '{other}'"),
                })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

/// Values an expression can evaluate to.
pub(crate) trait ExprValue: Sized {
    type Error: From<ScalarError>;
    /// Context needed to resolve generator symbols.
    type Ctx;

    fn from_integer(digits: &str) -> Result<Self, Self::Error>;
    fn parameter() -> Self;
    /// A matrix generator `label[row,col]`.
    fn generator(ctx: &Self::Ctx, label: &str, row: usize, col: usize) -> Result<Self, Self::Error>;
    fn add(self, rhs: Self) -> Self;
    fn sub(self, rhs: Self) -> Self;
    fn mul(self, rhs: Self) -> Self;
    fn div(self, rhs: Self) -> Result<Self, Self::Error>;
    fn neg(self) -> Self;
    fn pow(self, exp: i64) -> Result<Self, Self::Error>;
}

pub(crate) struct Parser<'a, V: ExprValue> {
    tokens: &'a [(usize, Token)],
    pos: usize,
    len: usize,
    ctx: &'a V::Ctx,
}

impl<'a, V: ExprValue> Parser<'a, V> {
    pub(crate) fn new(tokens: &'a [(usize, Token)], len: usize, ctx: &'a V::Ctx) -> Self {
        Parser {
            tokens,
            pos: 0,
            len,
            ctx,
        }
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map(|(p, _)| *p).unwrap_or(self.len)
    }

    fn err(&self, msg: impl Into<String>) -> ScalarError {
        ScalarError::Syntax {
            pos: self.offset(),
            msg: msg.into(),
        }
    }

    fn expect(&mut self, tok: Token) -> Result<(), ScalarError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected {tok:?}")))
        }
    }

    pub(crate) fn parse_all(mut self) -> Result<V, V::Error> {
        if self.tokens.is_empty() {
            return Err(self.err("empty expression").into());
        }
        let v = self.expr()?;
        if self.pos != self.tokens.len() {
            return Err(self.err("trailing input").into());
        }
        Ok(v)
    }

    fn expr(&mut self) -> Result<V, V::Error> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc = acc.add(self.term()?);
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<V, V::Error> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    acc = acc.mul(self.unary()?);
                }
                Some(Token::Slash) => {
                    self.pos += 1;
                    acc = acc.div(self.unary()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<V, V::Error> {
        match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(Token::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<V, V::Error> {
        let base = self.atom()?;
        if self.peek() != Some(&Token::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let neg = if self.peek() == Some(&Token::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let exp = match self.peek() {
            Some(Token::Int(d)) => d.parse::<i64>().map_err(|_| self.err("exponent out of range"))?,
            _ => return Err(self.err("expected integer exponent").into()),
        };
        self.pos += 1;
        base.pow(if neg { -exp } else { exp })
    }

    fn small_int(&mut self) -> Result<usize, ScalarError> {
        match self.peek() {
            Some(Token::Int(d)) => {
                let v = d.parse::<usize>().map_err(|_| self.err("index out of range"))?;
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.err("expected index")),
        }
    }

    fn atom(&mut self) -> Result<V, V::Error> {
        match self.peek().cloned() {
            Some(Token::Int(d)) => {
                self.pos += 1;
                V::from_integer(&d)
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(Token::RParen)?;
                Ok(v)
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                if self.peek() == Some(&Token::LBracket) {
                    self.pos += 1;
                    let row = self.small_int()?;
                    self.expect(Token::Comma)?;
                    let col = self.small_int()?;
                    self.expect(Token::RBracket)?;
                    V::generator(self.ctx, &name, row, col)
                } else if name == "q" {
                    Ok(V::parameter())
                } else {
                    Err(self.err(format!("unknown symbol '{name}'")).into())
                }
            }
            Some(t) => Err(self.err(format!("unexpected token {t:?}")).into()),
            None => Err(self.err("unexpected end of input").into()),
        }
    }
}
