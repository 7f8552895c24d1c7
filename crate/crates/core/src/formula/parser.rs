//! Recursive-descent parser for card-game formulas.
//!
//! Grammar (no unary operators):
//!
//! ```text
//! formula := expr [ '=' integer ] EOF
//! expr    := term   { ('+' | '-') term }
//! term    := factor { ('*' | '/') factor }
//! factor  := integer | '(' expr ')'
//! ```
//!
//! `+`/`-` and `*`/`/` are left-associative with the usual precedence.
//! Whitespace is ignored. Leaf literals are restricted to 0..=99; the claimed
//! target after `=` may be any non-negative integer.

use super::{BinOp, Expr, Formula, ParseError};

const MAX_LEAF: i64 = 99;

struct Lexer<'a> {
    bytes: &'a [u8],
    pos: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Token {
    Num(i64),
    Op(BinOp),
    LParen,
    RParen,
    Eq,
    End,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer { bytes: text.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    /// Next token plus its starting byte offset.
    fn next(&mut self) -> Result<(Token, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let Some(&b) = self.bytes.get(self.pos) else {
            return Ok((Token::End, start));
        };
        let tok = match b {
            b'+' => Token::Op(BinOp::Add),
            b'-' => Token::Op(BinOp::Sub),
            b'*' => Token::Op(BinOp::Mul),
            b'/' => Token::Op(BinOp::Div),
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b'=' => Token::Eq,
            b'0'..=b'9' => {
                let mut end = self.pos;
                while end < self.bytes.len() && self.bytes[end].is_ascii_digit() {
                    end += 1;
                }
                let text = std::str::from_utf8(&self.bytes[self.pos..end]).unwrap();
                let value: i64 = text.parse().map_err(|_| ParseError {
                    position: start,
                    message: format!("integer literal '{text}' is out of range"),
                })?;
                self.pos = end;
                return Ok((Token::Num(value), start));
            }
            other => {
                return Err(ParseError {
                    position: start,
                    message: format!("unexpected character '{}'", other as char),
                })
            }
        };
        self.pos += 1;
        Ok((tok, start))
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    lookahead: (Token, usize),
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Result<Self, ParseError> {
        let mut lexer = Lexer::new(text);
        let lookahead = lexer.next()?;
        Ok(Parser { lexer, lookahead })
    }

    fn advance(&mut self) -> Result<(Token, usize), ParseError> {
        let current = self.lookahead;
        self.lookahead = self.lexer.next()?;
        Ok(current)
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        while let (Token::Op(op @ (BinOp::Add | BinOp::Sub)), _) = self.lookahead {
            self.advance()?;
            let rhs = self.term()?;
            lhs = Expr::bin(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        while let (Token::Op(op @ (BinOp::Mul | BinOp::Div)), _) = self.lookahead {
            self.advance()?;
            let rhs = self.factor()?;
            lhs = Expr::bin(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        match self.advance()? {
            (Token::Num(value), pos) => {
                if value > MAX_LEAF {
                    return Err(ParseError {
                        position: pos,
                        message: format!("literal {value} exceeds the maximum of {MAX_LEAF}"),
                    });
                }
                Ok(Expr::Num(value))
            }
            (Token::LParen, pos) => {
                let inner = self.expr()?;
                match self.advance()? {
                    (Token::RParen, _) => Ok(inner),
                    (_, p) => Err(ParseError {
                        position: p,
                        message: format!("expected ')' to close '(' at byte {pos}"),
                    }),
                }
            }
            (_, pos) => Err(ParseError { position: pos, message: "expected a number or '('".into() }),
        }
    }
}

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut parser = Parser::new(text)?;
    let expr = parser.expr()?;
    let claimed_target = match parser.advance()? {
        (Token::End, _) => None,
        (Token::Eq, _) => match parser.advance()? {
            (Token::Num(target), _) => match parser.advance()? {
                (Token::End, _) => Some(target),
                (_, pos) => {
                    return Err(ParseError {
                        position: pos,
                        message: "trailing input after claimed target".into(),
                    })
                }
            },
            (_, pos) => Err(ParseError {
                position: pos,
                message: "expected an integer after '='".into(),
            })?,
        },
        (_, pos) => {
            return Err(ParseError { position: pos, message: "unexpected trailing input".into() })
        }
    };
    Ok(Formula { expr, claimed_target })
}
