use num_complex::Complex64;
use thiserror::Error;

use super::{Constants, Expr};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("unexpected character {ch:?} at position {pos}")]
    Lexical { pos: usize, ch: char },
    #[error("malformed number {text:?} at position {pos}")]
    BadNumber { pos: usize, text: String },
    #[error("expected {expected} at position {pos}, found {found}")]
    Syntax {
        pos: usize,
        expected: String,
        found: String,
    },
    #[error("unbound identifier {name:?} at position {pos}")]
    Unbound { pos: usize, name: String },
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
    End,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Number(x) => format!("number {x}"),
            Token::Ident(s) => format!("identifier {s:?}"),
            Token::Plus => "'+'".into(),
            Token::Minus => "'-'".into(),
            Token::Star => "'*'".into(),
            Token::Slash => "'/'".into(),
            Token::LParen => "'('".into(),
            Token::RParen => "')'".into(),
            Token::End => "end of input".into(),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Token)>, ParseError> {
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
            '+' => Token::Plus,
            '-' => Token::Minus,
            '*' => Token::Star,
            '/' => Token::Slash,
            '(' => Token::LParen,
            ')' => Token::RParen,
            '0'..='9' | '.' => {
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        while j < bytes.len() && bytes[j].is_ascii_digit() {
                            j += 1;
                        }
                        i = j;
                    }
                }
                let text = &src[start..i];
                let value = text.parse::<f64>().map_err(|_| ParseError::BadNumber {
                    pos: start,
                    text: text.to_string(),
                })?;
                out.push((start, Token::Number(value)));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Token::Ident(src[start..i].to_string())));
                continue;
            }
            _ => {
                // Report the full (possibly multi-byte) character.
                let ch = src[start..].chars().next().unwrap_or(c);
                return Err(ParseError::Lexical { pos: start, ch });
            }
        };
        out.push((start, tok));
        i += 1;
    }
    out.push((src.len(), Token::End));
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    cursor: usize,
    constants: &'a Constants,
}

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.tokens[self.cursor].1
    }

    fn pos(&self) -> usize {
        self.tokens[self.cursor].0
    }

    fn bump(&mut self) -> (usize, Token) {
        let t = self.tokens[self.cursor].clone();
        if self.cursor + 1 < self.tokens.len() {
            self.cursor += 1;
        }
        t
    }

    fn expect(&mut self, want: Token) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(ParseError::Syntax {
                pos: self.pos(),
                expected: want.describe(),
                found: self.peek().describe(),
            })
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Token::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Token::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Token::Star => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Token::Slash => {
                    self.bump();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Token::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let (pos, tok) = self.bump();
        match tok {
            Token::Number(x) => Ok(Expr::Const(Complex64::new(x, 0.0))),
            Token::LParen => {
                let e = self.expr()?;
                self.expect(Token::RParen)?;
                Ok(e)
            }
            Token::Ident(name) => match name.as_str() {
                "i" => Ok(Expr::Const(Complex64::new(0.0, 1.0))),
                "z1" => Ok(Expr::Var(0)),
                "z2" => Ok(Expr::Var(1)),
                "conj" => {
                    self.expect(Token::LParen)?;
                    let e = self.expr()?;
                    self.expect(Token::RParen)?;
                    Ok(Expr::Conj(Box::new(e)))
                }
                _ => self
                    .constants
                    .get(&name)
                    .map(|c| Expr::Const(*c))
                    .ok_or(ParseError::Unbound { pos, name }),
            },
            other => Err(ParseError::Syntax {
                pos,
                expected: "number, identifier or '('".into(),
                found: other.describe(),
            }),
        }
    }
}

/// Parse `src`, resolving named constants from `constants`.
pub fn parse(src: &str, constants: &Constants) -> Result<Expr, ParseError> {
    let mut p = Parser {
        tokens: lex(src)?,
        cursor: 0,
        constants,
    };
    let e = p.expr()?;
    if *p.peek() != Token::End {
        return Err(ParseError::Syntax {
            pos: p.pos(),
            expected: "operator or end of input".into(),
            found: p.peek().describe(),
        });
    }
    Ok(e)
}
