//! Machine-parsable diagnostics.
//!
//! Every front-end error renders as one line of the form
//! `error[CODE]: line:col: message` so scripts can grep and split on the
//! stable prefix.

use super::Span;

/// Stable diagnostic codes. Text after the code may change; the code itself
/// is part of the tool contract.
pub mod codes {
    /// Lexical or syntactic error.
    pub const PARSE: &str = "E-PARSE";
    /// Duplicate declaration (fluent, type, enum value, CPF target, assignment).
    pub const DUP: &str = "E-DUP";
    /// Reference to an undeclared fluent, type, value, or object.
    pub const REF: &str = "E-REF";
    /// Type or arity mismatch.
    pub const TYPE: &str = "E-TYPE";
    /// State fluent without a CPF.
    pub const CPF: &str = "E-CPF";
    /// Discrete branch probabilities do not sum to 1.
    pub const NORM: &str = "E-NORM";
    /// Constant probability outside [0, 1].
    pub const PROB: &str = "E-PROB";
    /// Stochastic node in the reward or in an illegal CPF position.
    pub const REWARD: &str = "E-REWARD";
    /// Instance references the wrong domain.
    pub const DOMAIN: &str = "E-DOMAIN";
    /// Ill-typed init-state or non-fluents assignment.
    pub const INIT: &str = "E-INIT";
    /// Horizon or discount out of range.
    pub const RANGE: &str = "E-RANGE";
    /// Object type with no declared objects.
    pub const OBJ: &str = "E-OBJ";
    /// Unbound parameter variable.
    pub const VAR: &str = "E-VAR";
}

#[derive(Debug, Clone)]
pub struct Diagnostic {
    pub code: &'static str,
    pub span: Span,
    pub message: String,
}

impl Diagnostic {
    pub fn new(code: &'static str, span: Span, message: impl Into<String>) -> Self {
        Diagnostic {
            code,
            span,
            message: message.into(),
        }
    }
}

impl std::fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "error[{}]: {}: {}", self.code, self.span, self.message)
    }
}

impl std::error::Error for Diagnostic {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_stable_prefix() {
        let d = Diagnostic::new(codes::CPF, Span { line: 3, col: 7 }, "state fluent `x` has no CPF");
        assert_eq!(d.to_string(), "error[E-CPF]: 3:7: state fluent `x` has no CPF");
    }
}
