//! Abstract syntax and front end for the XRDDL dialect.
//!
//! XRDDL is a compact RDDL-style language for factored stochastic planning
//! problems. A *domain* file declares enumerated types, fluents (state,
//! action, non-fluent), one conditional probability function (CPF) per state
//! fluent, and a deterministic reward expression. An *instance* file names a
//! domain, lists objects, assigns non-fluents and the initial state, and sets
//! the horizon and discount.
//!
//! The concrete grammar is published in `docs/grammar.md`. Two entry points
//! matter to callers:
//!
//! - [`parse_domain`] / [`parse_instance`] turn text into models,
//! - [`validate`] cross-checks a domain/instance pair into a [`CheckedModel`]
//!   that the grounder accepts.
//!
//! All models pretty-print back to the dialect via [`DomainModel::to_text`]
//! and [`InstanceModel::to_text`]; parsing the printed text yields a
//! structurally equal model (spans are ignored by `PartialEq`).

mod lexer;
mod parser;
mod printer;
mod validate;

pub mod diag;

pub use diag::Diagnostic;
pub use parser::{parse_domain, parse_instance, ParseError};
pub use validate::{validate, CheckedModel, PROB_TOLERANCE};

/// Source position (1-based line and column) of a declaration.
///
/// Spans are carried for diagnostics only; they never participate in
/// structural equality.
#[derive(Debug, Clone, Copy, Default)]
pub struct Span {
    pub line: u32,
    pub col: u32,
}

impl std::fmt::Display for Span {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

/// An enumerated value type: `repr_t : {textual, visual};`
#[derive(Debug, Clone)]
pub struct EnumDecl {
    pub name: String,
    pub values: Vec<String>,
    pub span: Span,
}

impl PartialEq for EnumDecl {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.values == other.values
    }
}

/// Which table a fluent lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FluentKind {
    State,
    Action,
    NonFluent,
}

impl std::fmt::Display for FluentKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FluentKind::State => write!(f, "state-fluent"),
            FluentKind::Action => write!(f, "action-fluent"),
            FluentKind::NonFluent => write!(f, "non-fluent"),
        }
    }
}

/// The value type of a fluent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValueType {
    Bool,
    Real,
    /// Reference to an [`EnumDecl`] by name.
    Enum(String),
}

impl std::fmt::Display for ValueType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ValueType::Bool => write!(f, "bool"),
            ValueType::Real => write!(f, "real"),
            ValueType::Enum(n) => write!(f, "{n}"),
        }
    }
}

/// A literal value as written in source.
#[derive(Debug, Clone, PartialEq)]
pub enum Literal {
    Bool(bool),
    Num(f64),
    /// An enum value name (stored without the `@` sigil).
    EnumValue(String),
}

/// A fluent declaration from the `pvariables` block (or desugared from a
/// `cstate` block).
#[derive(Debug, Clone)]
pub struct FluentDecl {
    pub name: String,
    pub kind: FluentKind,
    pub value_type: ValueType,
    /// Parameter types (enum names or object types), by position.
    pub params: Vec<String>,
    pub default: Literal,
    pub span: Span,
}

impl PartialEq for FluentDecl {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.kind == other.kind
            && self.value_type == other.value_type
            && self.params == other.params
            && self.default == other.default
    }
}

/// Argument of a fluent reference inside an expression.
#[derive(Debug, Clone, PartialEq)]
pub enum Arg {
    /// A parameter variable `?x` bound by the enclosing CPF target.
    Var(String),
    /// A concrete enum value or object name.
    Value(String),
}

impl std::fmt::Display for Arg {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Arg::Var(v) => write!(f, "?{v}"),
            Arg::Value(v) => write!(f, "@{v}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CmpOp {
    Eq,
    Ne,
    Lt,
    Le,
}

impl std::fmt::Display for CmpOp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CmpOp::Eq => write!(f, "=="),
            CmpOp::Ne => write!(f, "~="),
            CmpOp::Lt => write!(f, "<"),
            CmpOp::Le => write!(f, "<="),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl std::fmt::Display for ArithOp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ArithOp::Add => write!(f, "+"),
            ArithOp::Sub => write!(f, "-"),
            ArithOp::Mul => write!(f, "*"),
            ArithOp::Div => write!(f, "/"),
        }
    }
}

/// Expression tree shared by CPF bodies and the reward.
///
/// Stochastic nodes (`Bernoulli`, `Discrete`, `KronDelta`) are only legal at
/// the top of a CPF body or directly under `if`/`else` arms reached from it;
/// [`validate`] enforces the placement rule so the grounder can enumerate
/// every transition distribution exactly.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Literal(Literal),
    /// Reference to a fluent, with arguments when parameterized.
    Fluent { name: String, args: Vec<Arg> },
    /// A bare parameter variable `?x` used as a value.
    Var(String),
    Arith {
        op: ArithOp,
        lhs: Box<Expr>,
        rhs: Box<Expr>,
    },
    Cmp {
        op: CmpOp,
        lhs: Box<Expr>,
        rhs: Box<Expr>,
    },
    Not(Box<Expr>),
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
    If {
        cond: Box<Expr>,
        then: Box<Expr>,
        els: Box<Expr>,
    },
    /// Boolean draw; the argument is a probability-valued expression.
    Bernoulli(Box<Expr>),
    /// Enum draw: one probability branch per enum value.
    Discrete {
        enum_name: String,
        branches: Vec<(String, Expr)>,
    },
    /// Point mass at a deterministic expression.
    KronDelta(Box<Expr>),
}

impl Expr {
    pub fn num(v: f64) -> Expr {
        Expr::Literal(Literal::Num(v))
    }

    pub fn bool(v: bool) -> Expr {
        Expr::Literal(Literal::Bool(v))
    }

    pub fn enum_val(name: &str) -> Expr {
        Expr::Literal(Literal::EnumValue(name.to_string()))
    }

    pub fn fluent(name: &str) -> Expr {
        Expr::Fluent {
            name: name.to_string(),
            args: Vec::new(),
        }
    }

    pub fn fluent_args(name: &str, args: Vec<Arg>) -> Expr {
        Expr::Fluent {
            name: name.to_string(),
            args,
        }
    }

    pub fn eq(lhs: Expr, rhs: Expr) -> Expr {
        Expr::Cmp {
            op: CmpOp::Eq,
            lhs: Box::new(lhs),
            rhs: Box::new(rhs),
        }
    }

    pub fn and(lhs: Expr, rhs: Expr) -> Expr {
        Expr::And(Box::new(lhs), Box::new(rhs))
    }

    pub fn or(lhs: Expr, rhs: Expr) -> Expr {
        Expr::Or(Box::new(lhs), Box::new(rhs))
    }

    pub fn not(e: Expr) -> Expr {
        Expr::Not(Box::new(e))
    }

    pub fn ite(cond: Expr, then: Expr, els: Expr) -> Expr {
        Expr::If {
            cond: Box::new(cond),
            then: Box::new(then),
            els: Box::new(els),
        }
    }

    pub fn add(lhs: Expr, rhs: Expr) -> Expr {
        Expr::Arith {
            op: ArithOp::Add,
            lhs: Box::new(lhs),
            rhs: Box::new(rhs),
        }
    }

    pub fn sub(lhs: Expr, rhs: Expr) -> Expr {
        Expr::Arith {
            op: ArithOp::Sub,
            lhs: Box::new(lhs),
            rhs: Box::new(rhs),
        }
    }

    pub fn mul(lhs: Expr, rhs: Expr) -> Expr {
        Expr::Arith {
            op: ArithOp::Mul,
            lhs: Box::new(lhs),
            rhs: Box::new(rhs),
        }
    }

    /// Folds a slice of expressions into a right-leaning `|` chain.
    /// Empty input folds to `false`.
    pub fn any(mut exprs: Vec<Expr>) -> Expr {
        match exprs.len() {
            0 => Expr::bool(false),
            1 => exprs.pop().unwrap(),
            _ => {
                let mut it = exprs.into_iter();
                let first = it.next().unwrap();
                it.fold(first, Expr::or)
            }
        }
    }

    /// True if any stochastic node occurs anywhere in the tree.
    pub fn has_stochastic(&self) -> bool {
        match self {
            Expr::Literal(_) | Expr::Var(_) | Expr::Fluent { .. } => false,
            Expr::Arith { lhs, rhs, .. } | Expr::Cmp { lhs, rhs, .. } => {
                lhs.has_stochastic() || rhs.has_stochastic()
            }
            Expr::And(a, b) | Expr::Or(a, b) => a.has_stochastic() || b.has_stochastic(),
            Expr::Not(e) => e.has_stochastic(),
            Expr::If { cond, then, els } => {
                cond.has_stochastic() || then.has_stochastic() || els.has_stochastic()
            }
            Expr::Bernoulli(_) | Expr::Discrete { .. } | Expr::KronDelta(_) => true,
        }
    }
}

/// A conditional probability function: `target'(?params) = body;`
#[derive(Debug, Clone)]
pub struct Cpf {
    pub target: String,
    /// Parameter variable names (without `?`), matching the target's arity.
    pub params: Vec<String>,
    pub body: Expr,
    pub span: Span,
}

impl PartialEq for Cpf {
    fn eq(&self, other: &Self) -> bool {
        self.target == other.target && self.params == other.params && self.body == other.body
    }
}

/// A parsed domain file.
#[derive(Debug, Clone, PartialEq)]
pub struct DomainModel {
    pub name: String,
    pub requirements: Vec<String>,
    pub enums: Vec<EnumDecl>,
    /// Object types declared as `name : object;`. Their members come from the
    /// instance file.
    pub object_types: Vec<String>,
    pub fluents: Vec<FluentDecl>,
    pub cpfs: Vec<Cpf>,
    pub reward: Expr,
}

impl DomainModel {
    pub fn to_text(&self) -> String {
        printer::print_domain(self)
    }

    pub fn fluent(&self, name: &str) -> Option<&FluentDecl> {
        self.fluents.iter().find(|f| f.name == name)
    }
}

/// One `name(args) = literal;` line from a `non-fluents` or `init-state`
/// block.
#[derive(Debug, Clone)]
pub struct Assignment {
    pub fluent: String,
    pub args: Vec<String>,
    pub value: Literal,
    pub span: Span,
}

impl PartialEq for Assignment {
    fn eq(&self, other: &Self) -> bool {
        self.fluent == other.fluent && self.args == other.args && self.value == other.value
    }
}

/// A parsed instance file.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceModel {
    pub name: String,
    pub domain_name: String,
    /// Objects per object type, in declaration order.
    pub objects: Vec<(String, Vec<String>)>,
    pub non_fluents: Vec<Assignment>,
    pub init_state: Vec<Assignment>,
    pub horizon: u32,
    pub discount: f64,
}

impl InstanceModel {
    pub fn to_text(&self) -> String {
        printer::print_instance(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn span_is_ignored_by_equality() {
        let a = EnumDecl {
            name: "t".into(),
            values: vec!["x".into(), "y".into()],
            span: Span { line: 1, col: 1 },
        };
        let b = EnumDecl {
            name: "t".into(),
            values: vec!["x".into(), "y".into()],
            span: Span { line: 9, col: 4 },
        };
        assert_eq!(a, b);
    }

    #[test]
    fn any_folds_disjunctions() {
        assert_eq!(Expr::any(vec![]), Expr::bool(false));
        let e = Expr::any(vec![Expr::fluent("a"), Expr::fluent("b"), Expr::fluent("c")]);
        assert_eq!(
            e,
            Expr::or(Expr::or(Expr::fluent("a"), Expr::fluent("b")), Expr::fluent("c"))
        );
    }
}
