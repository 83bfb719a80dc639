//! Grounding: compiles a [`CheckedModel`](crate::lang::CheckedModel) into a
//! factored MDP with dense fluent indices, an enumerated action list, and
//! exactly evaluable per-fluent transition distributions.
//!
//! A [`GroundedModel`] is immutable after construction and freely shareable
//! across threads. Sampling takes a caller-owned generator; nothing here
//! touches global randomness.

mod compile;
mod dump;
mod eval;

pub use compile::{ground, GroundError, GroundingLimits};
pub use dump::dump_json;
pub use eval::{EvalError, Value};

use crate::attrs::ExplanationAttributes;
use serde::Serialize;

/// Classification of a ground fluent.
///
/// State fluents whose base name starts with `E_` are preference state (the
/// human side of the factorization); every other state fluent is robot
/// state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FluentTag {
    RobotState,
    PreferenceState,
    Action,
    NonFluent,
}

/// A fluent instantiated with concrete arguments. `index` is dense and
/// contiguous from 0 within each [`FluentTag`] kind.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroundFluent {
    pub name: String,
    pub args: Vec<String>,
    pub tag: FluentTag,
    pub index: usize,
}

impl std::fmt::Display for GroundFluent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.name)?;
        if !self.args.is_empty() {
            write!(f, "({})", self.args.join(", "))?;
        }
        Ok(())
    }
}

/// Value domain of a ground state fluent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FluentDomain {
    Bool,
    Enum { enum_name: String, values: Vec<String> },
}

impl FluentDomain {
    pub fn size(&self) -> u16 {
        match self {
            FluentDomain::Bool => 2,
            FluentDomain::Enum { values, .. } => values.len() as u16,
        }
    }

    pub fn value_name(&self, v: u16) -> &str {
        match self {
            FluentDomain::Bool => {
                if v == 0 {
                    "false"
                } else {
                    "true"
                }
            }
            FluentDomain::Enum { values, .. } => &values[v as usize],
        }
    }

    pub fn index_of(&self, name: &str) -> Option<u16> {
        match self {
            FluentDomain::Bool => match name {
                "false" => Some(0),
                "true" => Some(1),
                _ => None,
            },
            FluentDomain::Enum { values, .. } => {
                values.iter().position(|v| v == name).map(|i| i as u16)
            }
        }
    }
}

/// Dense state vector: one small integer per ground state fluent, in fluent
/// index order. Booleans are 0/1, enums are value indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct GroundState(pub Vec<u16>);

impl GroundState {
    pub fn get(&self, fluent: usize) -> u16 {
        self.0[fluent]
    }

    pub fn set(&mut self, fluent: usize, value: u16) {
        self.0[fluent] = value;
    }
}

/// One executable action: a bound action template, or the distinguished
/// no-op at index 0. Exactly one action executes per step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundAction {
    pub index: usize,
    pub name: String,
    pub args: Vec<String>,
    /// Ground action-fluent key; `None` for the no-op.
    pub fluent_key: Option<usize>,
    /// Present when the bound arguments form a full explanation attribute
    /// tuple (one value per attribute, any order).
    pub attrs: Option<ExplanationAttributes>,
}

impl std::fmt::Display for GroundAction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.name)?;
        if !self.args.is_empty() {
            write!(f, "({})", self.args.join(", "))?;
        }
        Ok(())
    }
}

/// Compiled expression with all references resolved to dense indices.
/// Non-fluents stay symbolic (an index into the value table) so diagnostics
/// can still name them.
#[derive(Debug, Clone, PartialEq)]
pub enum GroundExpr {
    Bool(bool),
    Num(f64),
    EnumVal(u16),
    State(usize),
    Action(usize),
    NonFluent(usize),
    Arith(crate::lang::ArithOp, Box<GroundExpr>, Box<GroundExpr>),
    Cmp(crate::lang::CmpOp, Box<GroundExpr>, Box<GroundExpr>),
    Not(Box<GroundExpr>),
    And(Box<GroundExpr>, Box<GroundExpr>),
    Or(Box<GroundExpr>, Box<GroundExpr>),
    If(Box<GroundExpr>, Box<GroundExpr>, Box<GroundExpr>),
    Bernoulli(Box<GroundExpr>),
    /// One probability expression per target-enum value, in value order.
    Discrete(Vec<GroundExpr>),
    KronDelta(Box<GroundExpr>),
}

/// The factored MDP produced by [`ground`].
#[derive(Debug, Clone)]
pub struct GroundedModel {
    pub domain_name: String,
    pub instance_name: String,
    pub state_fluents: Vec<GroundFluent>,
    pub domains: Vec<FluentDomain>,
    pub nonfluents: Vec<GroundFluent>,
    pub nonfluent_values: Vec<Value>,
    pub actions: Vec<GroundAction>,
    pub(crate) cpfs: Vec<GroundExpr>,
    pub(crate) reward: GroundExpr,
    pub horizon: u32,
    pub discount: f64,
    pub init: GroundState,
    /// Product of fluent domain sizes; `None` on u128 overflow.
    pub state_space_size: Option<u128>,
}

impl GroundedModel {
    pub fn fluent_id(&self, name: &str, args: &[&str]) -> Option<usize> {
        self.state_fluents
            .iter()
            .position(|f| f.name == name && f.args.iter().map(String::as_str).eq(args.iter().copied()))
    }

    pub fn find_action(&self, name: &str, args: &[&str]) -> Option<usize> {
        self.actions
            .iter()
            .position(|a| a.name == name && a.args.iter().map(String::as_str).eq(args.iter().copied()))
    }

    /// Sets a fluent by value name; panics on unknown names (test helper).
    pub fn set_value(&self, state: &mut GroundState, fluent: usize, value: &str) {
        let v = self.domains[fluent]
            .index_of(value)
            .unwrap_or_else(|| panic!("no value `{value}` for fluent {fluent}"));
        state.set(fluent, v);
    }

    pub fn value_name(&self, fluent: usize, v: u16) -> &str {
        self.domains[fluent].value_name(v)
    }

    /// Mixed-radix rank of a state (fluent 0 most significant); dense states
    /// enumerate in rank order, which equals lexicographic vector order.
    pub fn state_rank(&self, s: &GroundState) -> Option<u128> {
        let mut rank: u128 = 0;
        for (v, d) in s.0.iter().zip(&self.domains) {
            rank = rank.checked_mul(d.size() as u128)?;
            rank = rank.checked_add(*v as u128)?;
        }
        Some(rank)
    }

    /// Iterates every state in rank order. `None` when the space does not
    /// enumerate (size overflow).
    pub fn enumerate_states(&self) -> Option<impl Iterator<Item = GroundState> + '_> {
        self.state_space_size?;
        let mut current: Option<Vec<u16>> = Some(vec![0; self.domains.len()]);
        Some(std::iter::from_fn(move || {
            let state = current.clone()?;
            // odometer increment, last fluent fastest
            let mut next = state.clone();
            let mut pos = next.len();
            loop {
                if pos == 0 {
                    current = None;
                    break;
                }
                pos -= 1;
                next[pos] += 1;
                if next[pos] < self.domains[pos].size() {
                    current = Some(next);
                    break;
                }
                next[pos] = 0;
            }
            Some(GroundState(state))
        }))
    }

    pub fn preference_fluents(&self) -> impl Iterator<Item = &GroundFluent> {
        self.state_fluents
            .iter()
            .filter(|f| f.tag == FluentTag::PreferenceState)
    }

    /// Human-readable state rendering for traces and errors.
    pub fn render_state(&self, s: &GroundState) -> String {
        let parts: Vec<String> = self
            .state_fluents
            .iter()
            .map(|f| format!("{}={}", f, self.value_name(f.index, s.get(f.index))))
            .collect();
        parts.join(" ")
    }
}
