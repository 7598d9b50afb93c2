use std::collections::BTreeSet;

use thiserror::Error;

use super::{Action, Expression, RESERVED};

/// A syntax error. `position` is a byte offset into the input; it equals the
/// input length when the error is at end of input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at {}: {message}", describe_position(*.position, *.at_end))]
pub struct ParseError {
    pub position: usize,
    pub at_end: bool,
    pub message: String,
}

fn describe_position(position: usize, at_end: bool) -> String {
    if at_end {
        "end of input".to_string()
    } else {
        format!("offset {position}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Zero,
    One,
    Ident(String),
    Encap,
    Star,
    Dot,
    Bar2,
    Plus,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Zero => "`0`".into(),
            Token::One => "`1`".into(),
            Token::Ident(name) => format!("identifier `{name}`"),
            Token::Encap => "`encap`".into(),
            Token::Star => "`*`".into(),
            Token::Dot => "`.`".into(),
            Token::Bar2 => "`||`".into(),
            Token::Plus => "`+`".into(),
            Token::LParen => "`(`".into(),
            Token::RParen => "`)`".into(),
            Token::LBrace => "`{`".into(),
            Token::RBrace => "`}`".into(),
            Token::Comma => "`,`".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let single = match c {
            b'*' => Some(Token::Star),
            b'.' => Some(Token::Dot),
            b'+' => Some(Token::Plus),
            b'(' => Some(Token::LParen),
            b')' => Some(Token::RParen),
            b'{' => Some(Token::LBrace),
            b'}' => Some(Token::RBrace),
            b',' => Some(Token::Comma),
            _ => None,
        };
        if let Some(tok) = single {
            tokens.push((start, tok));
            i += 1;
            continue;
        }
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c == b'|' {
            if bytes.get(i + 1) == Some(&b'|') {
                tokens.push((start, Token::Bar2));
                i += 2;
            } else {
                return Err(err_at(text, start, "expected `||`"));
            }
        } else if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                i += 1;
            }
            match &text[start..i] {
                "0" => tokens.push((start, Token::Zero)),
                "1" => tokens.push((start, Token::One)),
                other => {
                    return Err(err_at(
                        text,
                        start,
                        &format!("unexpected `{other}`: only `0` and `1` are constants"),
                    ))
                }
            }
        } else if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            let word = &text[start..i];
            if word == "encap" {
                tokens.push((start, Token::Encap));
            } else {
                tokens.push((start, Token::Ident(word.to_string())));
            }
        } else {
            let ch = text[start..].chars().next().unwrap_or('?');
            return Err(err_at(text, start, &format!("unexpected character {ch:?}")));
        }
    }
    Ok(tokens)
}

fn err_at(text: &str, position: usize, message: &str) -> ParseError {
    ParseError {
        position,
        at_end: position >= text.len(),
        message: message.to_string(),
    }
}

struct Parser<'a> {
    text: &'a str,
    tokens: Vec<(usize, Token)>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(o, _)| *o)
            .unwrap_or(self.text.len())
    }

    fn error(&self, message: &str) -> ParseError {
        err_at(self.text, self.offset(), message)
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        match self.peek() {
            Some(tok) => self.error(&format!("expected {expected}, found {}", tok.describe())),
            None => self.error(&format!("expected {expected}")),
        }
    }

    fn eat(&mut self, tok: &Token) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Token) -> Result<(), ParseError> {
        if self.eat(&tok) {
            Ok(())
        } else {
            Err(self.unexpected(&tok.describe()))
        }
    }

    fn alt(&mut self) -> Result<Expression, ParseError> {
        let mut left = self.par()?;
        while self.eat(&Token::Plus) {
            let right = self.par()?;
            left = Expression::alt(left, right);
        }
        Ok(left)
    }

    fn par(&mut self) -> Result<Expression, ParseError> {
        let mut left = self.seq()?;
        while self.eat(&Token::Bar2) {
            let right = self.seq()?;
            left = Expression::par(left, right);
        }
        Ok(left)
    }

    fn seq(&mut self) -> Result<Expression, ParseError> {
        let mut left = self.postfix()?;
        while self.eat(&Token::Dot) {
            let right = self.postfix()?;
            left = Expression::seq(left, right);
        }
        Ok(left)
    }

    fn postfix(&mut self) -> Result<Expression, ParseError> {
        let mut e = self.atom()?;
        while self.eat(&Token::Star) {
            e = Expression::star(e);
        }
        Ok(e)
    }

    fn action(&mut self) -> Result<Action, ParseError> {
        match self.peek().cloned() {
            Some(Token::Ident(name)) => {
                let a = Action::new(&name).map_err(|e| self.error(&e.to_string()))?;
                self.pos += 1;
                Ok(a)
            }
            Some(Token::Encap) => Err(self.error(&format!(
                "`{}` is reserved and cannot be an action name",
                RESERVED[0]
            ))),
            Some(Token::Zero) | Some(Token::One) => {
                Err(self.error("constants `0` and `1` cannot be action names"))
            }
            _ => Err(self.unexpected("an action name")),
        }
    }

    fn atom(&mut self) -> Result<Expression, ParseError> {
        match self.peek() {
            Some(Token::Zero) => {
                self.pos += 1;
                Ok(Expression::Deadlock)
            }
            Some(Token::One) => {
                self.pos += 1;
                Ok(Expression::Empty)
            }
            Some(Token::Ident(_)) => Ok(Expression::Act(self.action()?)),
            Some(Token::LParen) => {
                self.pos += 1;
                let e = self.alt()?;
                self.expect(Token::RParen)?;
                Ok(e)
            }
            Some(Token::Encap) => {
                self.pos += 1;
                self.expect(Token::LBrace)?;
                let mut blocked = BTreeSet::new();
                if !self.eat(&Token::RBrace) {
                    loop {
                        blocked.insert(self.action()?);
                        if self.eat(&Token::RBrace) {
                            break;
                        }
                        if !self.eat(&Token::Comma) {
                            return Err(self.unexpected("`,` or `}`"));
                        }
                    }
                }
                self.expect(Token::LParen)?;
                let body = self.alt()?;
                self.expect(Token::RParen)?;
                Ok(Expression::encap(blocked, body))
            }
            _ => Err(self.unexpected("an expression")),
        }
    }
}

/// Parses the concrete syntax of process expressions.
///
/// ```text
/// alt   ::= par ('+' par)*
/// par   ::= seq ('||' seq)*
/// seq   ::= post ('.' post)*
/// post  ::= atom '*'*
/// atom  ::= '0' | '1' | IDENT | '(' alt ')' | 'encap' '{' [IDENT (',' IDENT)*] '}' '(' alt ')'
/// ```
///
/// Binary operators associate to the left. Whitespace is insignificant.
pub fn parse_expression(text: &str) -> Result<Expression, ParseError> {
    let tokens = lex(text)?;
    let mut parser = Parser {
        text,
        tokens,
        pos: 0,
    };
    let e = parser.alt()?;
    if parser.peek().is_some() {
        return Err(parser.unexpected("end of input"));
    }
    Ok(e)
}
