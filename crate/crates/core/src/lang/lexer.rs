//! Hand-rolled lexer for the XRDDL dialect.
//!
//! Identifiers are `[A-Za-z_][A-Za-z0-9_]*`. The five hyphenated RDDL
//! keywords (`state-fluent`, `action-fluent`, `non-fluent`, `non-fluents`,
//! `init-state`) are recognized as single tokens when written without
//! whitespace around the hyphen; everywhere else `-` is the arithmetic
//! operator.

use super::Span;

#[derive(Debug, Clone, PartialEq)]
pub enum Tok {
    Ident(String),
    /// `@name` — enum value or object literal.
    AtIdent(String),
    /// `?name` — parameter variable.
    Var(String),
    Number(f64),
    // keywords
    Domain,
    Instance,
    Requirements,
    Types,
    Pvariables,
    Cpfs,
    Reward,
    Cstate,
    Objects,
    Horizon,
    Discount,
    Object,
    Bool,
    Real,
    Default,
    If,
    Then,
    Else,
    True,
    False,
    Bernoulli,
    Discrete,
    KronDelta,
    StateFluent,
    ActionFluent,
    NonFluent,
    NonFluents,
    InitState,
    // punctuation
    LBrace,
    RBrace,
    LParen,
    RParen,
    Semi,
    Colon,
    Comma,
    Assign,
    EqEq,
    NeEq,
    Lt,
    Le,
    Gt,
    Ge,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Pipe,
    Tilde,
    Implies,
    Prime,
    Eof,
}

impl Tok {
    /// Short printable form used in "expected/found" messages.
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::AtIdent(s) => format!("`@{s}`"),
            Tok::Var(s) => format!("`?{s}`"),
            Tok::Number(n) => format!("number `{n}`"),
            Tok::Domain => "`domain`".into(),
            Tok::Instance => "`instance`".into(),
            Tok::Requirements => "`requirements`".into(),
            Tok::Types => "`types`".into(),
            Tok::Pvariables => "`pvariables`".into(),
            Tok::Cpfs => "`cpfs`".into(),
            Tok::Reward => "`reward`".into(),
            Tok::Cstate => "`cstate`".into(),
            Tok::Objects => "`objects`".into(),
            Tok::Horizon => "`horizon`".into(),
            Tok::Discount => "`discount`".into(),
            Tok::Object => "`object`".into(),
            Tok::Bool => "`bool`".into(),
            Tok::Real => "`real`".into(),
            Tok::Default => "`default`".into(),
            Tok::If => "`if`".into(),
            Tok::Then => "`then`".into(),
            Tok::Else => "`else`".into(),
            Tok::True => "`true`".into(),
            Tok::False => "`false`".into(),
            Tok::Bernoulli => "`Bernoulli`".into(),
            Tok::Discrete => "`Discrete`".into(),
            Tok::KronDelta => "`KronDelta`".into(),
            Tok::StateFluent => "`state-fluent`".into(),
            Tok::ActionFluent => "`action-fluent`".into(),
            Tok::NonFluent => "`non-fluent`".into(),
            Tok::NonFluents => "`non-fluents`".into(),
            Tok::InitState => "`init-state`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Assign => "`=`".into(),
            Tok::EqEq => "`==`".into(),
            Tok::NeEq => "`~=`".into(),
            Tok::Lt => "`<`".into(),
            Tok::Le => "`<=`".into(),
            Tok::Gt => "`>`".into(),
            Tok::Ge => "`>=`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::Pipe => "`|`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::Implies => "`=>`".into(),
            Tok::Prime => "`'`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

#[derive(Debug)]
pub struct LexError {
    pub span: Span,
    pub message: String,
}

fn keyword(word: &str) -> Option<Tok> {
    Some(match word {
        "domain" => Tok::Domain,
        "instance" => Tok::Instance,
        "requirements" => Tok::Requirements,
        "types" => Tok::Types,
        "pvariables" => Tok::Pvariables,
        "cpfs" => Tok::Cpfs,
        "reward" => Tok::Reward,
        "cstate" => Tok::Cstate,
        "objects" => Tok::Objects,
        "horizon" => Tok::Horizon,
        "discount" => Tok::Discount,
        "object" => Tok::Object,
        "bool" => Tok::Bool,
        "real" => Tok::Real,
        "default" => Tok::Default,
        "if" => Tok::If,
        "then" => Tok::Then,
        "else" => Tok::Else,
        "true" => Tok::True,
        "false" => Tok::False,
        "Bernoulli" => Tok::Bernoulli,
        "Discrete" => Tok::Discrete,
        "KronDelta" => Tok::KronDelta,
        _ => return None,
    })
}

/// Hyphenated keywords joined from `ident - ident` with no whitespace.
fn compound_keyword(joined: &str) -> Option<Tok> {
    Some(match joined {
        "state-fluent" => Tok::StateFluent,
        "action-fluent" => Tok::ActionFluent,
        "non-fluent" => Tok::NonFluent,
        "non-fluents" => Tok::NonFluents,
        "init-state" => Tok::InitState,
        _ => return None,
    })
}

struct Cursor<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    line: u32,
    col: u32,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor {
            src,
            bytes: src.as_bytes(),
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn span(&self) -> Span {
        Span {
            line: self.line,
            col: self.col,
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn peek2(&self) -> Option<u8> {
        self.bytes.get(self.pos + 1).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek()?;
        self.pos += 1;
        if b == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            // column counting is byte-based; inputs are expected to be
            // ASCII outside of comments
            self.col += 1;
        }
        Some(b)
    }

    fn skip_trivia(&mut self) {
        loop {
            match self.peek() {
                Some(b' ') | Some(b'\t') | Some(b'\r') | Some(b'\n') => {
                    self.bump();
                }
                Some(b'/') if self.peek2() == Some(b'/') => {
                    while let Some(b) = self.peek() {
                        if b == b'\n' {
                            break;
                        }
                        self.bump();
                    }
                }
                _ => break,
            }
        }
    }

    fn take_ident(&mut self) -> String {
        let start = self.pos;
        while let Some(b) = self.peek() {
            if b.is_ascii_alphanumeric() || b == b'_' {
                self.bump();
            } else {
                break;
            }
        }
        self.src[start..self.pos].to_string()
    }

    fn take_number(&mut self, span: Span) -> Result<f64, LexError> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.bump();
        }
        if self.peek() == Some(b'.') && self.peek2().is_some_and(|b| b.is_ascii_digit()) {
            self.bump();
            while self.peek().is_some_and(|b| b.is_ascii_digit()) {
                self.bump();
            }
        }
        if matches!(self.peek(), Some(b'e') | Some(b'E')) {
            let mut look = self.pos + 1;
            if matches!(self.bytes.get(look), Some(b'+') | Some(b'-')) {
                look += 1;
            }
            if self.bytes.get(look).is_some_and(|b| b.is_ascii_digit()) {
                while self.pos < look {
                    self.bump();
                }
                while self.peek().is_some_and(|b| b.is_ascii_digit()) {
                    self.bump();
                }
            }
        }
        let text = &self.src[start..self.pos];
        text.parse::<f64>().map_err(|_| LexError {
            span,
            message: format!("malformed number literal `{text}`"),
        })
    }
}

/// Tokenizes the whole input. The returned stream always ends with [`Tok::Eof`].
pub fn tokenize(src: &str) -> Result<Vec<Token>, LexError> {
    let mut cur = Cursor::new(src);
    let mut out = Vec::new();
    loop {
        cur.skip_trivia();
        let span = cur.span();
        let Some(b) = cur.peek() else {
            out.push(Token { tok: Tok::Eof, span });
            return Ok(out);
        };
        let tok = match b {
            b'{' => {
                cur.bump();
                Tok::LBrace
            }
            b'}' => {
                cur.bump();
                Tok::RBrace
            }
            b'(' => {
                cur.bump();
                Tok::LParen
            }
            b')' => {
                cur.bump();
                Tok::RParen
            }
            b';' => {
                cur.bump();
                Tok::Semi
            }
            b':' => {
                cur.bump();
                Tok::Colon
            }
            b',' => {
                cur.bump();
                Tok::Comma
            }
            b'\'' => {
                cur.bump();
                Tok::Prime
            }
            b'+' => {
                cur.bump();
                Tok::Plus
            }
            b'-' => {
                cur.bump();
                Tok::Minus
            }
            b'*' => {
                cur.bump();
                Tok::Star
            }
            b'/' => {
                cur.bump();
                Tok::Slash
            }
            b'^' => {
                cur.bump();
                Tok::Caret
            }
            b'|' => {
                cur.bump();
                Tok::Pipe
            }
            b'=' => {
                cur.bump();
                match cur.peek() {
                    Some(b'=') => {
                        cur.bump();
                        Tok::EqEq
                    }
                    Some(b'>') => {
                        cur.bump();
                        Tok::Implies
                    }
                    _ => Tok::Assign,
                }
            }
            b'~' => {
                cur.bump();
                if cur.peek() == Some(b'=') {
                    cur.bump();
                    Tok::NeEq
                } else {
                    Tok::Tilde
                }
            }
            b'<' => {
                cur.bump();
                if cur.peek() == Some(b'=') {
                    cur.bump();
                    Tok::Le
                } else {
                    Tok::Lt
                }
            }
            b'>' => {
                cur.bump();
                if cur.peek() == Some(b'=') {
                    cur.bump();
                    Tok::Ge
                } else {
                    Tok::Gt
                }
            }
            b'@' => {
                cur.bump();
                if !cur.peek().is_some_and(|c| c.is_ascii_alphabetic() || c == b'_') {
                    return Err(LexError {
                        span,
                        message: "expected identifier after `@`".into(),
                    });
                }
                Tok::AtIdent(cur.take_ident())
            }
            b'?' => {
                cur.bump();
                if !cur.peek().is_some_and(|c| c.is_ascii_alphabetic() || c == b'_') {
                    return Err(LexError {
                        span,
                        message: "expected identifier after `?`".into(),
                    });
                }
                Tok::Var(cur.take_ident())
            }
            c if c.is_ascii_digit() => Tok::Number(cur.take_number(span)?),
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let word = cur.take_ident();
                // contextual join for hyphenated keywords, e.g. `init-state`
                if cur.peek() == Some(b'-')
                    && cur
                        .peek2()
                        .is_some_and(|c| c.is_ascii_alphabetic() || c == b'_')
                {
                    let save = (cur.pos, cur.line, cur.col);
                    cur.bump();
                    let tail = cur.take_ident();
                    let joined = format!("{word}-{tail}");
                    match compound_keyword(&joined) {
                        Some(tok) => tok,
                        None => {
                            (cur.pos, cur.line, cur.col) = save;
                            keyword(&word).unwrap_or(Tok::Ident(word))
                        }
                    }
                } else {
                    keyword(&word).unwrap_or(Tok::Ident(word))
                }
            }
            other => {
                return Err(LexError {
                    span,
                    message: format!("unexpected character `{}`", other as char),
                })
            }
        };
        out.push(Token { tok, span });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(src: &str) -> Vec<Tok> {
        tokenize(src).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn lexes_compound_keywords() {
        assert_eq!(
            kinds("init-state non-fluents state-fluent"),
            vec![Tok::InitState, Tok::NonFluents, Tok::StateFluent, Tok::Eof]
        );
    }

    #[test]
    fn hyphen_stays_minus_between_spaced_idents() {
        assert_eq!(
            kinds("a - b"),
            vec![
                Tok::Ident("a".into()),
                Tok::Minus,
                Tok::Ident("b".into()),
                Tok::Eof
            ]
        );
        // joined but not a keyword: falls back to ident, minus, ident
        assert_eq!(
            kinds("a-b"),
            vec![
                Tok::Ident("a".into()),
                Tok::Minus,
                Tok::Ident("b".into()),
                Tok::Eof
            ]
        );
    }

    #[test]
    fn lexes_numbers_and_operators() {
        assert_eq!(
            kinds("0.5 <= 1e-3 => ~="),
            vec![
                Tok::Number(0.5),
                Tok::Le,
                Tok::Number(1e-3),
                Tok::Implies,
                Tok::NeEq,
                Tok::Eof
            ]
        );
    }

    #[test]
    fn comments_and_positions() {
        let toks = tokenize("// header\n  foo").unwrap();
        assert_eq!(toks[0].tok, Tok::Ident("foo".into()));
        assert_eq!((toks[0].span.line, toks[0].span.col), (2, 3));
    }

    #[test]
    fn rejects_stray_bytes() {
        let err = tokenize("a $ b").unwrap_err();
        assert_eq!((err.span.line, err.span.col), (1, 3));
    }
}
