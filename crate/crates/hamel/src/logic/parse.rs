//! Formula parser.
//!
//! Grammar, loosest binding first: `->` (right associative), `|`, `&`,
//! then `!` and the quantifier prefixes `E x.` / `A x.`, whose bodies
//! extend as far right as possible. Atoms compare two terms with `=`,
//! `<i`, or `<=i` where `i` is an order index; `t1 <=i t2` is sugar for
//! `!(t2 <i t1)`. Terms are sums of optionally scaled carriers, where a
//! carrier is a variable name, `inf`, or `v(term)`; the only bare
//! rational allowed is `0`. Errors carry the byte offset they occurred
//! at. `E`, `A`, `v`, `inf`, `true`, and `false` are reserved words.

use super::{Formula, LogicError, Term};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    LParen,
    RParen,
    Bang,
    Amp,
    Pipe,
    Arrow,
    Dot,
    Equal,
    Less(usize),
    LessEq(usize),
    Plus,
    Minus,
    Star,
    Number(Scalar),
    Name(String),
    KwExists,
    KwForall,
    KwVal,
    KwInf,
    KwTrue,
    KwFalse,
    End,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::LParen => "`(`".into(),
            Token::RParen => "`)`".into(),
            Token::Bang => "`!`".into(),
            Token::Amp => "`&`".into(),
            Token::Pipe => "`|`".into(),
            Token::Arrow => "`->`".into(),
            Token::Dot => "`.`".into(),
            Token::Equal => "`=`".into(),
            Token::Less(i) => format!("`<{i}`"),
            Token::LessEq(i) => format!("`<={i}`"),
            Token::Plus => "`+`".into(),
            Token::Minus => "`-`".into(),
            Token::Star => "`*`".into(),
            Token::Number(_) => "a number".into(),
            Token::Name(n) => format!("`{n}`"),
            Token::KwExists => "`E`".into(),
            Token::KwForall => "`A`".into(),
            Token::KwVal => "`v`".into(),
            Token::KwInf => "`inf`".into(),
            Token::KwTrue => "`true`".into(),
            Token::KwFalse => "`false`".into(),
            Token::End => "end of input".into(),
        }
    }
}

struct Lexer<'a> {
    text: &'a [u8],
    pos: usize,
    token_start: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer { text: text.as_bytes(), pos: 0, token_start: 0 }
    }

    fn error(&self, msg: impl Into<String>) -> LogicError {
        LogicError::Parse { pos: self.token_start, msg: msg.into() }
    }

    fn next_token(&mut self) -> Result<Token, LogicError> {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.token_start = self.pos;
        let Some(&b) = self.text.get(self.pos) else {
            return Ok(Token::End);
        };
        self.pos += 1;
        match b {
            b'(' => Ok(Token::LParen),
            b')' => Ok(Token::RParen),
            b'!' => Ok(Token::Bang),
            b'&' => Ok(Token::Amp),
            b'|' => Ok(Token::Pipe),
            b'.' => Ok(Token::Dot),
            b'=' => Ok(Token::Equal),
            b'+' => Ok(Token::Plus),
            b'*' => Ok(Token::Star),
            b'-' => {
                if self.text.get(self.pos) == Some(&b'>') {
                    self.pos += 1;
                    Ok(Token::Arrow)
                } else {
                    Ok(Token::Minus)
                }
            }
            b'<' => {
                let weak = self.text.get(self.pos) == Some(&b'=');
                if weak {
                    self.pos += 1;
                }
                let start = self.pos;
                while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                if self.pos == start {
                    return Err(self.error("expected an order index after `<`"));
                }
                let digits = std::str::from_utf8(&self.text[start..self.pos]).unwrap();
                let order: usize = digits
                    .parse()
                    .map_err(|_| self.error("order index out of range"))?;
                Ok(if weak { Token::LessEq(order) } else { Token::Less(order) })
            }
            b'0'..=b'9' => {
                self.pos -= 1;
                let number = self.lex_number()?;
                Ok(Token::Number(number))
            }
            b if b.is_ascii_alphabetic() || b == b'_' => {
                while self.pos < self.text.len()
                    && (self.text[self.pos].is_ascii_alphanumeric() || self.text[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.text[self.token_start..self.pos]).unwrap();
                Ok(match name {
                    "E" => Token::KwExists,
                    "A" => Token::KwForall,
                    "v" => Token::KwVal,
                    "inf" => Token::KwInf,
                    "true" => Token::KwTrue,
                    "false" => Token::KwFalse,
                    _ => Token::Name(name.to_string()),
                })
            }
            _ => Err(self.error(format!("unexpected character `{}`", b as char))),
        }
    }

    fn lex_number(&mut self) -> Result<Scalar, LogicError> {
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let numer = std::str::from_utf8(&self.text[start..self.pos]).unwrap().to_string();
        let mut denom = String::new();
        if self.text.get(self.pos) == Some(&b'/') {
            self.pos += 1;
            let dstart = self.pos;
            while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if self.pos == dstart {
                return Err(self.error("expected digits after `/`"));
            }
            denom = std::str::from_utf8(&self.text[dstart..self.pos]).unwrap().to_string();
        }
        let text = if denom.is_empty() { numer } else { format!("{numer}/{denom}") };
        text.parse::<Scalar>().map_err(|e| self.error(e.to_string()))
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    lookahead: Token,
    lookahead_pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Result<Self, LogicError> {
        let mut lexer = Lexer::new(text);
        let lookahead = lexer.next_token()?;
        let lookahead_pos = lexer.token_start;
        Ok(Parser { lexer, lookahead, lookahead_pos })
    }

    fn error(&self, msg: impl Into<String>) -> LogicError {
        LogicError::Parse { pos: self.lookahead_pos, msg: msg.into() }
    }

    fn advance(&mut self) -> Result<Token, LogicError> {
        let token = self.lexer.next_token()?;
        let pos = self.lexer.token_start;
        self.lookahead_pos = pos;
        Ok(std::mem::replace(&mut self.lookahead, token))
    }

    fn expect(&mut self, token: Token) -> Result<(), LogicError> {
        if self.lookahead == token {
            self.advance()?;
            Ok(())
        } else {
            Err(self.error(format!(
                "expected {}, found {}",
                token.describe(),
                self.lookahead.describe()
            )))
        }
    }

    fn formula(&mut self) -> Result<Formula, LogicError> {
        let lhs = self.disjunction()?;
        if self.lookahead == Token::Arrow {
            self.advance()?;
            let rhs = self.formula()?;
            Ok(Formula::implies(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn disjunction(&mut self) -> Result<Formula, LogicError> {
        let mut lhs = self.conjunction()?;
        while self.lookahead == Token::Pipe {
            self.advance()?;
            let rhs = self.conjunction()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, LogicError> {
        let mut lhs = self.unary()?;
        while self.lookahead == Token::Amp {
            self.advance()?;
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, LogicError> {
        match self.lookahead {
            Token::Bang => {
                self.advance()?;
                Ok(Formula::not(self.unary()?))
            }
            Token::KwExists | Token::KwForall => {
                let existential = self.lookahead == Token::KwExists;
                self.advance()?;
                let pos = self.lookahead_pos;
                let name = match self.advance()? {
                    Token::Name(name) => name,
                    other => {
                        return Err(LogicError::Parse {
                            pos,
                            msg: format!("expected a variable name, found {}", other.describe()),
                        })
                    }
                };
                self.expect(Token::Dot)?;
                let body = self.formula()?;
                Ok(if existential {
                    Formula::exists(&name, body)
                } else {
                    Formula::forall(&name, body)
                })
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Formula, LogicError> {
        match self.lookahead {
            Token::LParen => {
                self.advance()?;
                let inner = self.formula()?;
                self.expect(Token::RParen)?;
                Ok(inner)
            }
            Token::KwTrue => {
                self.advance()?;
                Ok(Formula::True)
            }
            Token::KwFalse => {
                self.advance()?;
                Ok(Formula::False)
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula, LogicError> {
        let lhs = self.term()?;
        let pos = self.lookahead_pos;
        match self.advance()? {
            Token::Equal => {
                let rhs = self.term()?;
                Ok(Formula::Eq(lhs, rhs))
            }
            Token::Less(order) => {
                let rhs = self.term()?;
                Ok(Formula::Lt(order, lhs, rhs))
            }
            Token::LessEq(order) => {
                let rhs = self.term()?;
                Ok(Formula::not(Formula::Lt(order, rhs, lhs)))
            }
            other => Err(LogicError::Parse {
                pos,
                msg: format!("expected a comparison, found {}", other.describe()),
            }),
        }
    }

    fn term(&mut self) -> Result<Term, LogicError> {
        let mut sum = self.signed_ratom(false)?;
        loop {
            let negate = match self.lookahead {
                Token::Plus => false,
                Token::Minus => true,
                _ => return Ok(sum),
            };
            self.advance()?;
            let rhs = self.signed_ratom(negate)?;
            sum = Term::add(sum, rhs);
        }
    }

    fn signed_ratom(&mut self, mut negative: bool) -> Result<Term, LogicError> {
        while self.lookahead == Token::Minus {
            self.advance()?;
            negative = !negative;
        }
        let ratom = self.ratom()?;
        Ok(if negative {
            match ratom {
                Term::Zero => Term::Zero,
                Term::Scale(c, t) => Term::Scale(-c, t),
                other => Term::scale(Scalar::from_int(-1), other),
            }
        } else {
            ratom
        })
    }

    fn ratom(&mut self) -> Result<Term, LogicError> {
        if let Token::Number(_) = self.lookahead {
            let number_pos = self.lookahead_pos;
            let Token::Number(number) = self.advance()? else { unreachable!() };
            if self.lookahead == Token::Star {
                self.advance()?;
                let carrier = self.carrier()?;
                Ok(Term::scale(number, carrier))
            } else if number.is_zero() {
                Ok(Term::Zero)
            } else {
                Err(LogicError::Parse {
                    pos: number_pos,
                    msg: "a bare rational denotes no element; scale a name with `*`".into(),
                })
            }
        } else {
            self.carrier()
        }
    }

    fn carrier(&mut self) -> Result<Term, LogicError> {
        let pos = self.lookahead_pos;
        match self.advance()? {
            Token::Name(name) => Ok(Term::Var(name)),
            Token::KwInf => Ok(Term::Inf),
            Token::KwVal => {
                self.expect(Token::LParen)?;
                let inner = self.term()?;
                self.expect(Token::RParen)?;
                Ok(Term::val(inner))
            }
            other => Err(LogicError::Parse {
                pos,
                msg: format!("expected a term, found {}", other.describe()),
            }),
        }
    }
}

/// Parse a formula. Errors carry the byte offset of the offending token.
pub fn parse_formula(text: &str) -> Result<Formula, LogicError> {
    let mut parser = Parser::new(text)?;
    let formula = parser.formula()?;
    if parser.lookahead != Token::End {
        return Err(parser.error(format!(
            "expected end of input, found {}",
            parser.lookahead.describe()
        )));
    }
    Ok(formula)
}
