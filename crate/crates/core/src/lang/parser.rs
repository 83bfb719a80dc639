//! Recursive descent parser for XRDDL domain and instance files.

use super::diag::{codes, Diagnostic};
use super::lexer::{tokenize, LexError, Tok, Token};
use super::*;

#[derive(Debug)]
pub enum ParseError {
    Lex {
        span: Span,
        message: String,
    },
    Syntax {
        span: Span,
        expected: Vec<String>,
        found: String,
    },
    /// Duplicate declaration of a fluent, type, enum value, or CPF target.
    Duplicate {
        span: Span,
        what: String,
    },
    /// A required section is absent (e.g. `reward`, `horizon`).
    Missing {
        span: Span,
        what: String,
    },
}

impl ParseError {
    pub fn to_diagnostic(&self) -> Diagnostic {
        match self {
            ParseError::Lex { span, message } => Diagnostic::new(codes::PARSE, *span, message.clone()),
            ParseError::Syntax {
                span,
                expected,
                found,
            } => {
                let exp = expected.join(", ");
                Diagnostic::new(
                    codes::PARSE,
                    *span,
                    format!("expected {exp}; found {found}"),
                )
            }
            ParseError::Duplicate { span, what } => {
                Diagnostic::new(codes::DUP, *span, format!("duplicate declaration of {what}"))
            }
            ParseError::Missing { span, what } => {
                Diagnostic::new(codes::PARSE, *span, format!("missing {what}"))
            }
        }
    }
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_diagnostic())
    }
}

impl std::error::Error for ParseError {}

impl From<LexError> for ParseError {
    fn from(e: LexError) -> Self {
        ParseError::Lex {
            span: e.span,
            message: e.message,
        }
    }
}

type PResult<T> = Result<T, ParseError>;

/// Parses a domain file into a [`DomainModel`].
pub fn parse_domain(text: &str) -> PResult<DomainModel> {
    let tokens = tokenize(text)?;
    let mut p = Parser::new(tokens);
    let model = p.domain()?;
    p.expect_eof()?;
    Ok(model)
}

/// Parses an instance file into an [`InstanceModel`].
pub fn parse_instance(text: &str) -> PResult<InstanceModel> {
    let tokens = tokenize(text)?;
    let mut p = Parser::new(tokens);
    let model = p.instance()?;
    p.expect_eof()?;
    Ok(model)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn new(tokens: Vec<Token>) -> Self {
        Parser { tokens, pos: 0 }
    }

    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn span(&self) -> Span {
        self.tokens[self.pos].span
    }

    fn bump(&mut self) -> Tok {
        let t = self.tokens[self.pos].tok.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn err<T>(&self, expected: &[&str]) -> PResult<T> {
        Err(ParseError::Syntax {
            span: self.span(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().describe(),
        })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> PResult<Span> {
        if *self.peek() == tok {
            let span = self.span();
            self.bump();
            Ok(span)
        } else {
            self.err(&[what])
        }
    }

    fn expect_eof(&mut self) -> PResult<()> {
        if matches!(self.peek(), Tok::Eof) {
            Ok(())
        } else {
            self.err(&["end of input"])
        }
    }

    fn ident(&mut self, what: &str) -> PResult<String> {
        match self.peek() {
            Tok::Ident(name) => {
                let name = name.clone();
                self.bump();
                Ok(name)
            }
            _ => self.err(&[what]),
        }
    }

    /// An enum value or object name, with or without the `@` sigil.
    fn value_name(&mut self) -> PResult<String> {
        match self.peek() {
            Tok::Ident(name) | Tok::AtIdent(name) => {
                let name = name.clone();
                self.bump();
                Ok(name)
            }
            _ => self.err(&["value name"]),
        }
    }

    fn number(&mut self, what: &str) -> PResult<f64> {
        let neg = self.eat(&Tok::Minus);
        match self.peek() {
            Tok::Number(n) => {
                let v = *n;
                self.bump();
                Ok(if neg { -v } else { v })
            }
            _ => self.err(&[what]),
        }
    }

    // ------------------------------------------------------------------
    // domain
    // ------------------------------------------------------------------

    fn domain(&mut self) -> PResult<DomainModel> {
        let start = self.span();
        self.expect(Tok::Domain, "`domain`")?;
        let name = self.ident("domain name")?;
        self.expect(Tok::LBrace, "`{`")?;

        let mut model = DomainModel {
            name,
            requirements: Vec::new(),
            enums: Vec::new(),
            object_types: Vec::new(),
            fluents: Vec::new(),
            cpfs: Vec::new(),
            reward: Expr::num(0.0),
        };
        let mut reward: Option<Expr> = None;

        loop {
            match self.peek() {
                Tok::RBrace => {
                    self.bump();
                    break;
                }
                Tok::Requirements => self.requirements(&mut model)?,
                Tok::Types => self.types_block(&mut model)?,
                Tok::Cstate => self.cstate_block(&mut model)?,
                Tok::Pvariables => self.pvariables(&mut model)?,
                Tok::Cpfs => self.cpfs_block(&mut model)?,
                Tok::Reward => {
                    let span = self.span();
                    self.bump();
                    if reward.is_some() {
                        return Err(ParseError::Duplicate {
                            span,
                            what: "`reward`".into(),
                        });
                    }
                    self.expect(Tok::Assign, "`=`")?;
                    reward = Some(self.expr()?);
                    self.expect(Tok::Semi, "`;`")?;
                }
                _ => {
                    return self.err(&[
                        "`requirements`",
                        "`types`",
                        "`cstate`",
                        "`pvariables`",
                        "`cpfs`",
                        "`reward`",
                        "`}`",
                    ])
                }
            }
        }

        match reward {
            Some(r) => model.reward = r,
            None => {
                return Err(ParseError::Missing {
                    span: start,
                    what: "`reward` declaration".into(),
                })
            }
        }
        self.check_domain_duplicates(&model)?;
        Ok(model)
    }

    fn requirements(&mut self, model: &mut DomainModel) -> PResult<()> {
        self.bump();
        self.expect(Tok::Assign, "`=`")?;
        self.expect(Tok::LBrace, "`{`")?;
        if !self.eat(&Tok::RBrace) {
            loop {
                model.requirements.push(self.ident("requirement tag")?);
                if self.eat(&Tok::Comma) {
                    continue;
                }
                self.expect(Tok::RBrace, "`}`")?;
                break;
            }
        }
        self.expect(Tok::Semi, "`;`")?;
        Ok(())
    }

    fn enum_values(&mut self) -> PResult<Vec<String>> {
        self.expect(Tok::LBrace, "`{`")?;
        let mut values = Vec::new();
        loop {
            values.push(self.value_name()?);
            if self.eat(&Tok::Comma) {
                continue;
            }
            self.expect(Tok::RBrace, "`}`")?;
            break;
        }
        Ok(values)
    }

    fn types_block(&mut self, model: &mut DomainModel) -> PResult<()> {
        self.bump();
        self.expect(Tok::LBrace, "`{`")?;
        while !self.eat(&Tok::RBrace) {
            let span = self.span();
            let name = self.ident("type name")?;
            self.expect(Tok::Colon, "`:`")?;
            match self.peek() {
                Tok::Object => {
                    self.bump();
                    model.object_types.push(name);
                }
                Tok::LBrace => {
                    let values = self.enum_values()?;
                    check_values(&values, span)?;
                    model.enums.push(EnumDecl { name, values, span });
                }
                _ => return self.err(&["`object`", "`{`"]),
            }
            self.expect(Tok::Semi, "`;`")?;
        }
        self.expect(Tok::Semi, "`;`")?;
        Ok(())
    }

    /// `cstate NAME { E_r : {textual, visual}; ... };`
    ///
    /// Shorthand that declares, per entry, an enum type `<fluent>_t` plus an
    /// enum-typed state fluent defaulting to the first value. The block label
    /// is ignored.
    fn cstate_block(&mut self, model: &mut DomainModel) -> PResult<()> {
        self.bump();
        self.ident("block label")?;
        self.expect(Tok::LBrace, "`{`")?;
        while !self.eat(&Tok::RBrace) {
            let span = self.span();
            let name = self.ident("fluent name")?;
            self.expect(Tok::Colon, "`:`")?;
            let values = self.enum_values()?;
            check_values(&values, span)?;
            self.expect(Tok::Semi, "`;`")?;
            let enum_name = format!("{name}_t");
            let default = Literal::EnumValue(values[0].clone());
            model.enums.push(EnumDecl {
                name: enum_name.clone(),
                values,
                span,
            });
            model.fluents.push(FluentDecl {
                name,
                kind: FluentKind::State,
                value_type: ValueType::Enum(enum_name),
                params: Vec::new(),
                default,
                span,
            });
        }
        // the trailing semicolon after the block is optional, matching the
        // brace-terminated style of the other sections
        self.eat(&Tok::Semi);
        Ok(())
    }

    fn pvariables(&mut self, model: &mut DomainModel) -> PResult<()> {
        self.bump();
        self.expect(Tok::LBrace, "`{`")?;
        while !self.eat(&Tok::RBrace) {
            let span = self.span();
            let name = self.ident("fluent name")?;
            let mut params = Vec::new();
            if self.eat(&Tok::LParen) {
                loop {
                    params.push(self.ident("parameter type")?);
                    if self.eat(&Tok::Comma) {
                        continue;
                    }
                    self.expect(Tok::RParen, "`)`")?;
                    break;
                }
            }
            self.expect(Tok::Colon, "`:`")?;
            self.expect(Tok::LBrace, "`{`")?;
            let kind = match self.peek() {
                Tok::StateFluent => FluentKind::State,
                Tok::ActionFluent => FluentKind::Action,
                Tok::NonFluent => FluentKind::NonFluent,
                _ => return self.err(&["`state-fluent`", "`action-fluent`", "`non-fluent`"]),
            };
            self.bump();
            self.expect(Tok::Comma, "`,`")?;
            let value_type = match self.peek().clone() {
                Tok::Bool => {
                    self.bump();
                    ValueType::Bool
                }
                Tok::Real => {
                    self.bump();
                    ValueType::Real
                }
                Tok::Ident(n) => {
                    self.bump();
                    ValueType::Enum(n)
                }
                _ => return self.err(&["`bool`", "`real`", "enum type name"]),
            };
            self.expect(Tok::Comma, "`,`")?;
            self.expect(Tok::Default, "`default`")?;
            self.expect(Tok::Assign, "`=`")?;
            let default = self.literal()?;
            self.expect(Tok::RBrace, "`}`")?;
            self.expect(Tok::Semi, "`;`")?;
            model.fluents.push(FluentDecl {
                name,
                kind,
                value_type,
                params,
                default,
                span,
            });
        }
        self.expect(Tok::Semi, "`;`")?;
        Ok(())
    }

    fn cpfs_block(&mut self, model: &mut DomainModel) -> PResult<()> {
        self.bump();
        self.expect(Tok::LBrace, "`{`")?;
        while !self.eat(&Tok::RBrace) {
            let span = self.span();
            let target = self.ident("CPF target")?;
            self.expect(Tok::Prime, "`'`")?;
            let mut params = Vec::new();
            if self.eat(&Tok::LParen) {
                loop {
                    match self.peek() {
                        Tok::Var(v) => {
                            params.push(v.clone());
                            self.bump();
                        }
                        _ => return self.err(&["parameter variable `?x`"]),
                    }
                    if self.eat(&Tok::Comma) {
                        continue;
                    }
                    self.expect(Tok::RParen, "`)`")?;
                    break;
                }
            }
            self.expect(Tok::Assign, "`=`")?;
            let body = self.expr()?;
            self.expect(Tok::Semi, "`;`")?;
            model.cpfs.push(Cpf {
                target,
                params,
                body,
                span,
            });
        }
        self.expect(Tok::Semi, "`;`")?;
        Ok(())
    }

    fn check_domain_duplicates(&self, model: &DomainModel) -> PResult<()> {
        let mut seen = std::collections::HashSet::new();
        for e in &model.enums {
            if !seen.insert(e.name.clone()) {
                return Err(ParseError::Duplicate {
                    span: e.span,
                    what: format!("type `{}`", e.name),
                });
            }
        }
        for t in &model.object_types {
            if !seen.insert(t.clone()) {
                return Err(ParseError::Duplicate {
                    span: Span::default(),
                    what: format!("type `{t}`"),
                });
            }
        }
        let mut fl = std::collections::HashSet::new();
        for f in &model.fluents {
            if !fl.insert(f.name.clone()) {
                return Err(ParseError::Duplicate {
                    span: f.span,
                    what: format!("fluent `{}`", f.name),
                });
            }
        }
        let mut cp = std::collections::HashSet::new();
        for c in &model.cpfs {
            if !cp.insert(c.target.clone()) {
                return Err(ParseError::Duplicate {
                    span: c.span,
                    what: format!("CPF for `{}`", c.target),
                });
            }
        }
        Ok(())
    }

    // ------------------------------------------------------------------
    // instance
    // ------------------------------------------------------------------

    fn instance(&mut self) -> PResult<InstanceModel> {
        let start = self.span();
        self.expect(Tok::Instance, "`instance`")?;
        let name = self.ident("instance name")?;
        self.expect(Tok::LBrace, "`{`")?;

        let mut domain_name: Option<String> = None;
        let mut objects: Vec<(String, Vec<String>)> = Vec::new();
        let mut non_fluents: Vec<Assignment> = Vec::new();
        let mut init_state: Vec<Assignment> = Vec::new();
        let mut horizon: Option<f64> = None;
        let mut discount: Option<f64> = None;

        loop {
            match self.peek() {
                Tok::RBrace => {
                    self.bump();
                    break;
                }
                Tok::Domain => {
                    let span = self.span();
                    self.bump();
                    if domain_name.is_some() {
                        return Err(ParseError::Duplicate {
                            span,
                            what: "`domain`".into(),
                        });
                    }
                    self.expect(Tok::Assign, "`=`")?;
                    domain_name = Some(self.ident("domain name")?);
                    self.expect(Tok::Semi, "`;`")?;
                }
                Tok::Objects => {
                    self.bump();
                    self.expect(Tok::LBrace, "`{`")?;
                    while !self.eat(&Tok::RBrace) {
                        let name = self.ident("object type")?;
                        self.expect(Tok::Colon, "`:`")?;
                        self.expect(Tok::LBrace, "`{`")?;
                        let mut members = Vec::new();
                        loop {
                            members.push(self.ident("object name")?);
                            if self.eat(&Tok::Comma) {
                                continue;
                            }
                            self.expect(Tok::RBrace, "`}`")?;
                            break;
                        }
                        self.expect(Tok::Semi, "`;`")?;
                        objects.push((name, members));
                    }
                    self.expect(Tok::Semi, "`;`")?;
                }
                Tok::NonFluents => {
                    self.bump();
                    self.assignments(&mut non_fluents)?;
                }
                Tok::InitState => {
                    self.bump();
                    self.assignments(&mut init_state)?;
                }
                Tok::Horizon => {
                    let span = self.span();
                    self.bump();
                    if horizon.is_some() {
                        return Err(ParseError::Duplicate {
                            span,
                            what: "`horizon`".into(),
                        });
                    }
                    self.expect(Tok::Assign, "`=`")?;
                    horizon = Some(self.number("horizon value")?);
                    self.expect(Tok::Semi, "`;`")?;
                }
                Tok::Discount => {
                    let span = self.span();
                    self.bump();
                    if discount.is_some() {
                        return Err(ParseError::Duplicate {
                            span,
                            what: "`discount`".into(),
                        });
                    }
                    self.expect(Tok::Assign, "`=`")?;
                    discount = Some(self.number("discount value")?);
                    self.expect(Tok::Semi, "`;`")?;
                }
                _ => {
                    return self.err(&[
                        "`domain`",
                        "`objects`",
                        "`non-fluents`",
                        "`init-state`",
                        "`horizon`",
                        "`discount`",
                        "`}`",
                    ])
                }
            }
        }

        let domain_name = domain_name.ok_or_else(|| ParseError::Missing {
            span: start,
            what: "`domain = <name>;`".into(),
        })?;
        let horizon = horizon.ok_or_else(|| ParseError::Missing {
            span: start,
            what: "`horizon = <steps>;`".into(),
        })?;
        if horizon < 0.0 || horizon.fract() != 0.0 || horizon > u32::MAX as f64 {
            return Err(ParseError::Syntax {
                span: start,
                expected: vec!["non-negative integer horizon".into()],
                found: format!("`{horizon}`"),
            });
        }
        Ok(InstanceModel {
            name,
            domain_name,
            objects,
            non_fluents,
            init_state,
            horizon: horizon as u32,
            discount: discount.unwrap_or(1.0),
        })
    }

    fn assignments(&mut self, out: &mut Vec<Assignment>) -> PResult<()> {
        self.expect(Tok::LBrace, "`{`")?;
        while !self.eat(&Tok::RBrace) {
            let span = self.span();
            let fluent = self.ident("fluent name")?;
            let mut args = Vec::new();
            if self.eat(&Tok::LParen) {
                loop {
                    args.push(self.value_name()?);
                    if self.eat(&Tok::Comma) {
                        continue;
                    }
                    self.expect(Tok::RParen, "`)`")?;
                    break;
                }
            }
            self.expect(Tok::Assign, "`=`")?;
            let value = self.literal()?;
            self.expect(Tok::Semi, "`;`")?;
            out.push(Assignment {
                fluent,
                args,
                value,
                span,
            });
        }
        self.expect(Tok::Semi, "`;`")?;
        Ok(())
    }

    fn literal(&mut self) -> PResult<Literal> {
        match self.peek().clone() {
            Tok::True => {
                self.bump();
                Ok(Literal::Bool(true))
            }
            Tok::False => {
                self.bump();
                Ok(Literal::Bool(false))
            }
            Tok::Number(n) => {
                self.bump();
                Ok(Literal::Num(n))
            }
            Tok::Minus => {
                self.bump();
                match self.peek() {
                    Tok::Number(n) => {
                        let v = -*n;
                        self.bump();
                        Ok(Literal::Num(v))
                    }
                    _ => self.err(&["number"]),
                }
            }
            Tok::AtIdent(v) | Tok::Ident(v) => {
                self.bump();
                Ok(Literal::EnumValue(v))
            }
            _ => self.err(&["literal (true, false, number, or enum value)"]),
        }
    }

    // ------------------------------------------------------------------
    // expressions
    // ------------------------------------------------------------------

    fn expr(&mut self) -> PResult<Expr> {
        if matches!(self.peek(), Tok::If) {
            self.bump();
            self.expect(Tok::LParen, "`(`")?;
            let cond = self.expr()?;
            self.expect(Tok::RParen, "`)`")?;
            self.expect(Tok::Then, "`then`")?;
            let then = self.expr()?;
            self.expect(Tok::Else, "`else`")?;
            let els = self.expr()?;
            return Ok(Expr::ite(cond, then, els));
        }
        self.implies_expr()
    }

    /// `a => b` desugars to `~a | b` (right associative).
    fn implies_expr(&mut self) -> PResult<Expr> {
        let lhs = self.or_expr()?;
        if self.eat(&Tok::Implies) {
            let rhs = self.implies_expr()?;
            Ok(Expr::or(Expr::not(lhs), rhs))
        } else {
            Ok(lhs)
        }
    }

    fn or_expr(&mut self) -> PResult<Expr> {
        let mut lhs = self.and_expr()?;
        while self.eat(&Tok::Pipe) {
            let rhs = self.and_expr()?;
            lhs = Expr::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and_expr(&mut self) -> PResult<Expr> {
        let mut lhs = self.not_expr()?;
        while self.eat(&Tok::Caret) {
            let rhs = self.not_expr()?;
            lhs = Expr::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn not_expr(&mut self) -> PResult<Expr> {
        if self.eat(&Tok::Tilde) {
            Ok(Expr::not(self.not_expr()?))
        } else {
            self.cmp_expr()
        }
    }

    /// Comparisons are non-associative; `>` and `>=` normalize to flipped
    /// `<` / `<=`.
    fn cmp_expr(&mut self) -> PResult<Expr> {
        let lhs = self.add_expr()?;
        let (op, flip) = match self.peek() {
            Tok::EqEq => (CmpOp::Eq, false),
            Tok::NeEq => (CmpOp::Ne, false),
            Tok::Lt => (CmpOp::Lt, false),
            Tok::Le => (CmpOp::Le, false),
            Tok::Gt => (CmpOp::Lt, true),
            Tok::Ge => (CmpOp::Le, true),
            _ => return Ok(lhs),
        };
        self.bump();
        let rhs = self.add_expr()?;
        let (lhs, rhs) = if flip { (rhs, lhs) } else { (lhs, rhs) };
        Ok(Expr::Cmp {
            op,
            lhs: Box::new(lhs),
            rhs: Box::new(rhs),
        })
    }

    fn add_expr(&mut self) -> PResult<Expr> {
        let mut lhs = self.mul_expr()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => ArithOp::Add,
                Tok::Minus => ArithOp::Sub,
                _ => break,
            };
            self.bump();
            let rhs = self.mul_expr()?;
            lhs = Expr::Arith {
                op,
                lhs: Box::new(lhs),
                rhs: Box::new(rhs),
            };
        }
        Ok(lhs)
    }

    fn mul_expr(&mut self) -> PResult<Expr> {
        let mut lhs = self.unary_expr()?;
        loop {
            let op = match self.peek() {
                Tok::Star => ArithOp::Mul,
                Tok::Slash => ArithOp::Div,
                _ => break,
            };
            self.bump();
            let rhs = self.unary_expr()?;
            lhs = Expr::Arith {
                op,
                lhs: Box::new(lhs),
                rhs: Box::new(rhs),
            };
        }
        Ok(lhs)
    }

    fn unary_expr(&mut self) -> PResult<Expr> {
        if self.eat(&Tok::Minus) {
            let inner = self.unary_expr()?;
            return Ok(match inner {
                // fold negation into the literal so `-0.1` stays one node
                Expr::Literal(Literal::Num(n)) => Expr::num(-n),
                other => Expr::sub(Expr::num(0.0), other),
            });
        }
        self.primary()
    }

    fn primary(&mut self) -> PResult<Expr> {
        match self.peek().clone() {
            Tok::Number(n) => {
                self.bump();
                Ok(Expr::num(n))
            }
            Tok::True => {
                self.bump();
                Ok(Expr::bool(true))
            }
            Tok::False => {
                self.bump();
                Ok(Expr::bool(false))
            }
            Tok::AtIdent(v) => {
                self.bump();
                Ok(Expr::enum_val(&v))
            }
            Tok::Var(v) => {
                self.bump();
                Ok(Expr::Var(v))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::If => self.expr(),
            Tok::Bernoulli => {
                self.bump();
                self.expect(Tok::LParen, "`(`")?;
                let p = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Expr::Bernoulli(Box::new(p)))
            }
            Tok::KronDelta => {
                self.bump();
                self.expect(Tok::LParen, "`(`")?;
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Expr::KronDelta(Box::new(e)))
            }
            Tok::Discrete => {
                self.bump();
                self.expect(Tok::LParen, "`(`")?;
                let enum_name = self.ident("enum type name")?;
                let mut branches = Vec::new();
                while self.eat(&Tok::Comma) {
                    let value = self.value_name()?;
                    self.expect(Tok::Colon, "`:`")?;
                    let prob = self.expr()?;
                    branches.push((value, prob));
                }
                self.expect(Tok::RParen, "`)`")?;
                Ok(Expr::Discrete { enum_name, branches })
            }
            Tok::Ident(name) => {
                self.bump();
                let mut args = Vec::new();
                if self.eat(&Tok::LParen) {
                    loop {
                        match self.peek().clone() {
                            Tok::Var(v) => {
                                self.bump();
                                args.push(Arg::Var(v));
                            }
                            Tok::AtIdent(v) | Tok::Ident(v) => {
                                self.bump();
                                args.push(Arg::Value(v));
                            }
                            _ => return self.err(&["argument (`?x`, `@value`, or name)"]),
                        }
                        if self.eat(&Tok::Comma) {
                            continue;
                        }
                        self.expect(Tok::RParen, "`)`")?;
                        break;
                    }
                }
                Ok(Expr::Fluent { name, args })
            }
            _ => self.err(&["expression"]),
        }
    }
}

fn check_values(values: &[String], span: Span) -> PResult<()> {
    if values.len() < 2 {
        return Err(ParseError::Syntax {
            span,
            expected: vec!["at least two enum values".into()],
            found: format!("{}", values.len()),
        });
    }
    let mut seen = std::collections::HashSet::new();
    for v in values {
        if !seen.insert(v) {
            return Err(ParseError::Duplicate {
                span,
                what: format!("enum value `{v}`"),
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_cstate_shorthand() {
        let text = r#"
            domain prefs {
                cstate Fluent {
                    E_r : {textual, visual};
                    E_dl : {rich, poor};
                    E_d : {long, short};
                    E_s : {local, global};
                }
                cpfs {
                    E_r' = E_r;
                    E_dl' = E_dl;
                    E_d' = E_d;
                    E_s' = E_s;
                };
                reward = 0;
            }
        "#;
        let m = parse_domain(text).unwrap();
        assert_eq!(m.fluents.len(), 4);
        assert!(m
            .fluents
            .iter()
            .all(|f| f.kind == FluentKind::State && matches!(f.value_type, ValueType::Enum(_))));
        let sets: Vec<Vec<String>> = m.enums.iter().map(|e| e.values.clone()).collect();
        assert_eq!(
            sets,
            vec![
                vec!["textual".to_string(), "visual".to_string()],
                vec!["rich".to_string(), "poor".to_string()],
                vec!["long".to_string(), "short".to_string()],
                vec!["local".to_string(), "global".to_string()],
            ]
        );
    }

    #[test]
    fn parses_empty_domain_with_constant_reward() {
        let m = parse_domain("domain empty { reward = 0; }").unwrap();
        assert!(m.fluents.is_empty());
        assert_eq!(m.reward, Expr::num(0.0));
    }

    #[test]
    fn missing_reward_is_reported() {
        let err = parse_domain("domain d { }").unwrap_err();
        assert!(matches!(err, ParseError::Missing { .. }));
    }

    #[test]
    fn duplicate_fluent_is_reported() {
        let text = r#"
            domain d {
                pvariables {
                    x : { state-fluent, bool, default = false };
                    x : { state-fluent, bool, default = false };
                };
                cpfs { x' = x; };
                reward = 0;
            }
        "#;
        let err = parse_domain(text).unwrap_err();
        assert!(matches!(err, ParseError::Duplicate { .. }));
    }

    #[test]
    fn syntax_error_has_position_and_expectations() {
        let err = parse_domain("domain d { reward = ; }").unwrap_err();
        match err {
            ParseError::Syntax { span, expected, .. } => {
                assert_eq!(span.line, 1);
                assert!(!expected.is_empty());
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn parses_instance_with_assignments() {
        let text = r#"
            instance i {
                domain = prefs;
                non-fluents { p_r_textual = 0.7; };
                init-state { E_r = textual; };
                horizon = 8;
                discount = 1.0;
            }
        "#;
        let m = parse_instance(text).unwrap();
        assert_eq!(m.domain_name, "prefs");
        assert_eq!(m.non_fluents[0].fluent, "p_r_textual");
        assert_eq!(m.non_fluents[0].value, Literal::Num(0.7));
        assert_eq!(m.init_state[0].value, Literal::EnumValue("textual".into()));
        assert_eq!((m.horizon, m.discount), (8, 1.0));
    }

    #[test]
    fn defaults_only_instance() {
        let m = parse_instance("instance i { domain = d; horizon = 1; discount = 1.0; }").unwrap();
        assert!(m.non_fluents.is_empty() && m.init_state.is_empty());
        assert_eq!(m.horizon, 1);
    }

    #[test]
    fn discount_defaults_to_one() {
        let m = parse_instance("instance i { domain = d; horizon = 3; }").unwrap();
        assert_eq!(m.discount, 1.0);
    }

    #[test]
    fn implies_and_flipped_comparisons_desugar() {
        let m = parse_domain("domain d { reward = if (a => b) then 1 else 0; }").unwrap();
        let expected_cond = Expr::or(Expr::not(Expr::fluent("a")), Expr::fluent("b"));
        match &m.reward {
            Expr::If { cond, .. } => assert_eq!(**cond, expected_cond),
            other => panic!("unexpected {other:?}"),
        }
        let m = parse_domain("domain d { reward = if (x > y) then 1 else 0; }").unwrap();
        match &m.reward {
            Expr::If { cond, .. } => match &**cond {
                Expr::Cmp { op, lhs, rhs } => {
                    assert_eq!(*op, CmpOp::Lt);
                    assert_eq!(**lhs, Expr::fluent("y"));
                    assert_eq!(**rhs, Expr::fluent("x"));
                }
                other => panic!("unexpected {other:?}"),
            },
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn parses_stochastic_nodes() {
        let text = r#"
            domain d {
                types { t : {a, b}; };
                pvariables {
                    x : { state-fluent, t, default = @a };
                    p : { non-fluent, real, default = 0.5 };
                };
                cpfs {
                    x' = if (x == @a)
                         then Discrete(t, @a : p, @b : 1.0 - p)
                         else KronDelta(@b);
                };
                reward = 0;
            }
        "#;
        let m = parse_domain(text).unwrap();
        match &m.cpfs[0].body {
            Expr::If { then, els, .. } => {
                assert!(matches!(**then, Expr::Discrete { .. }));
                assert!(matches!(**els, Expr::KronDelta(_)));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn trailing_garbage_is_rejected() {
        assert!(parse_domain("domain d { reward = 0; } extra").is_err());
    }
}
