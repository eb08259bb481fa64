//! Recursive-descent parser for the ASCII formula grammar.
//!
//! ```text
//! imp  := or ("->" imp)?
//! or   := and ("|" and)*
//! and  := un ("&" un)*
//! un   := "~" un | "(" imp ")" | "T" | "F" | atom
//! atom := factor signature        e.g. h+  s0  hypm  e-!!  mpm+
//! ```

use thiserror::Error;

use super::formula::{Atom, Formula};
use crate::profile::{Factor, Signature};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("syntax error at column {column}: {message}")]
pub struct SyntaxError {
    /// 1-based character column.
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Atom(Atom),
    Top,
    Bottom,
    Not,
    And,
    Or,
    Arrow,
    LParen,
    RParen,
}

struct Lexer {
    chars: Vec<char>,
    pos: usize,
}

impl Lexer {
    fn new(src: &str) -> Self {
        Lexer {
            chars: src.chars().collect(),
            pos: 0,
        }
    }

    fn peek_at(&self, offset: usize) -> Option<char> {
        self.chars.get(self.pos + offset).copied()
    }

    fn error(&self, column: usize, message: impl Into<String>) -> SyntaxError {
        SyntaxError {
            column: column + 1,
            message: message.into(),
        }
    }

    fn tokens(mut self) -> Result<Vec<(usize, Token)>, SyntaxError> {
        let mut out = Vec::new();
        while let Some(c) = self.peek_at(0) {
            let start = self.pos;
            let tok = match c {
                c if c.is_whitespace() => {
                    self.pos += 1;
                    continue;
                }
                '~' => self.single(Token::Not),
                '&' => self.single(Token::And),
                '|' => self.single(Token::Or),
                '(' => self.single(Token::LParen),
                ')' => self.single(Token::RParen),
                'T' => self.single(Token::Top),
                'F' => self.single(Token::Bottom),
                '-' if self.peek_at(1) == Some('>') => {
                    self.pos += 2;
                    Token::Arrow
                }
                c if c.is_ascii_lowercase() => Token::Atom(self.atom()?),
                other => return Err(self.error(start, format!("unexpected character `{other}`"))),
            };
            out.push((start, tok));
        }
        Ok(out)
    }

    fn single(&mut self, t: Token) -> Token {
        self.pos += 1;
        t
    }

    fn atom(&mut self) -> Result<Atom, SyntaxError> {
        let start = self.pos;
        let factor = if self.peek_at(0) == Some('h') && self.peek_at(1) == Some('y') {
            self.pos += 2;
            Factor::Hy
        } else {
            let name: String = self.peek_at(0).into_iter().collect();
            let f = name
                .parse::<Factor>()
                .map_err(|_| self.error(start, format!("unknown factor `{name}`")))?;
            self.pos += 1;
            f
        };
        let sig_start = self.pos;
        let mut sig = String::new();
        match self.peek_at(0) {
            Some('0') => {
                sig.push('0');
                self.pos += 1;
            }
            Some(c @ ('+' | '-')) => {
                sig.push(c);
                self.pos += 1;
                while self.peek_at(0) == Some('!') && sig.len() < 4 {
                    sig.push('!');
                    self.pos += 1;
                }
            }
            Some('p') if self.peek_at(1) == Some('m') => {
                sig.push_str("pm");
                self.pos += 2;
                match (self.peek_at(0), self.peek_at(1)) {
                    (Some('+'), _) => {
                        sig.push('+');
                        self.pos += 1;
                    }
                    // `pm->` is `pm` followed by an arrow
                    (Some('-'), next) if next != Some('>') => {
                        sig.push('-');
                        self.pos += 1;
                    }
                    _ => {}
                }
            }
            _ => {
                return Err(self.error(
                    sig_start,
                    format!("expected a signature after factor `{factor}`"),
                ))
            }
        }
        let signature: Signature = sig
            .parse()
            .map_err(|_| self.error(sig_start, format!("unknown signature `{sig}`")))?;
        if matches!(self.peek_at(0), Some(c) if c.is_ascii_alphanumeric() || c == '!') {
            return Err(self.error(self.pos, "atom followed by stray characters"));
        }
        Ok(Atom::new(factor, signature))
    }
}

/// Maximum depth of a parsed formula tree.
pub const MAX_NESTING: usize = 256;

type Parsed = Result<(Formula, usize), SyntaxError>;

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
    /// Current recursion level, bounded alongside tree depth.
    level: usize,
}

impl Parser {
    fn descend(&mut self, f: impl FnOnce(&mut Self) -> Parsed) -> Parsed {
        if self.level >= MAX_NESTING {
            return Err(self.error("formula nested too deeply"));
        }
        self.level += 1;
        let out = f(self);
        self.level -= 1;
        out
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn column(&self) -> usize {
        self.tokens.get(self.pos).map(|(c, _)| *c).unwrap_or(self.end) + 1
    }

    fn error(&self, message: impl Into<String>) -> SyntaxError {
        SyntaxError {
            column: self.column(),
            message: message.into(),
        }
    }

    fn eat(&mut self, t: &Token) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    /// Depth of a node over children of depth `a` and `b`, bounded.
    fn node_depth(&self, a: usize, b: usize) -> Result<usize, SyntaxError> {
        let d = 1 + a.max(b);
        if d > MAX_NESTING {
            Err(self.error("formula nested too deeply"))
        } else {
            Ok(d)
        }
    }

    fn imp(&mut self) -> Parsed {
        let (lhs, dl) = self.or()?;
        if self.eat(&Token::Arrow) {
            let (rhs, dr) = self.descend(Self::imp)?;
            let d = self.node_depth(dl, dr)?;
            Ok((Formula::imp(lhs, rhs), d))
        } else {
            Ok((lhs, dl))
        }
    }

    fn or(&mut self) -> Parsed {
        let (mut lhs, mut d) = self.and()?;
        while self.eat(&Token::Or) {
            let (rhs, dr) = self.and()?;
            d = self.node_depth(d, dr)?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok((lhs, d))
    }

    fn and(&mut self) -> Parsed {
        let (mut lhs, mut d) = self.unary()?;
        while self.eat(&Token::And) {
            let (rhs, dr) = self.unary()?;
            d = self.node_depth(d, dr)?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok((lhs, d))
    }

    fn unary(&mut self) -> Parsed {
        let Some(tok) = self.peek().cloned() else {
            return Err(self.error("unexpected end of input"));
        };
        self.pos += 1;
        match tok {
            Token::Not => {
                let (inner, d) = self.descend(Self::unary)?;
                let d = self.node_depth(d, 0)?;
                Ok((Formula::not(inner), d))
            }
            Token::Atom(a) => Ok((Formula::Atom(a), 0)),
            Token::Top => Ok((Formula::top(), 3)),
            Token::Bottom => Ok((Formula::bottom(), 2)),
            Token::LParen => {
                let inner = self.descend(Self::imp)?;
                if !self.eat(&Token::RParen) {
                    return Err(self.error("expected `)`"));
                }
                Ok(inner)
            }
            _ => {
                self.pos -= 1;
                Err(self.error("expected a formula"))
            }
        }
    }
}

pub fn parse_formula(text: &str) -> Result<Formula, SyntaxError> {
    let tokens = Lexer::new(text).tokens()?;
    let mut p = Parser {
        tokens,
        pos: 0,
        end: text.chars().count(),
        level: 0,
    };
    let (f, _) = p.imp()?;
    if p.pos != p.tokens.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::Factor::*;
    use crate::profile::Signature as Sg;

    fn a(f: Factor, s: Sg) -> Formula {
        Formula::Atom(Atom::new(f, s))
    }

    #[test]
    fn implication_of_atoms() {
        let f = parse_formula("e+ -> kpm").unwrap();
        assert_eq!(f, Formula::imp(a(E, Sg::Plus), a(K, Sg::Pm)));
    }

    #[test]
    fn precedence() {
        let f = parse_formula("h+ & s0 | ~d-").unwrap();
        assert_eq!(
            f,
            Formula::or(
                Formula::and(a(H, Sg::Plus), a(S, Sg::Zero)),
                Formula::not(a(D, Sg::Minus))
            )
        );
        let g = parse_formula("h+ -> s0 -> e-").unwrap();
        assert_eq!(
            g,
            Formula::imp(a(H, Sg::Plus), Formula::imp(a(S, Sg::Zero), a(E, Sg::Minus)))
        );
    }

    #[test]
    fn signature_lexing() {
        assert_eq!(parse_formula("hypm").unwrap(), a(Hy, Sg::Pm));
        assert_eq!(parse_formula("mpm+").unwrap(), a(M, Sg::PmHigh));
        assert_eq!(parse_formula("mpm-").unwrap(), a(M, Sg::PmLow));
        assert_eq!(parse_formula("e-!!!").unwrap(), a(E, Sg::Minus3));
        assert_eq!(parse_formula("ppm").unwrap(), a(P, Sg::Pm));
        assert_eq!(
            parse_formula("hpm->k0").unwrap(),
            Formula::imp(a(H, Sg::Pm), a(K, Sg::Zero))
        );
        assert_eq!(
            parse_formula("h-->k0").unwrap(),
            Formula::imp(a(H, Sg::Minus), a(K, Sg::Zero))
        );
        assert_eq!(parse_formula("T").unwrap(), Formula::top());
        assert_eq!(parse_formula("F").unwrap(), Formula::bottom());
    }

    #[test]
    fn errors_report_columns() {
        let e = parse_formula("h*").unwrap_err();
        assert_eq!(e.column, 2);
        assert!(parse_formula("").is_err());
        assert!(parse_formula("(h+").is_err());
        assert!(parse_formula("h+ h+").is_err());
        assert!(parse_formula("x+").is_err());
        assert!(parse_formula("h+!!!!").is_err());
        assert!(parse_formula("h0x").is_err());
        assert_eq!(parse_formula("h+ &").unwrap_err().column, 5);
        let deep = format!("{}h+", "~".repeat(MAX_NESTING + 1));
        assert!(parse_formula(&deep).is_err());
        let ok = format!("{}h+", "~".repeat(MAX_NESTING));
        assert!(parse_formula(&ok).is_ok());
        let chain = vec!["h+"; 2 * MAX_NESTING].join(" & ");
        assert!(parse_formula(&chain).is_err());
        let arrows = vec!["h+"; 100_000].join(" -> ");
        assert!(parse_formula(&arrows).is_err());
        let parens = format!("{}h+{}", "(".repeat(100_000), ")".repeat(100_000));
        assert!(parse_formula(&parens).is_err());
    }
}
