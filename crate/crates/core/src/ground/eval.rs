//! Evaluation of ground expressions: deterministic values, per-fluent
//! transition distributions, joint successor distributions, rewards, and
//! seeded sampling.

use super::*;
use crate::lang::PROB_TOLERANCE;
use crate::lang::{ArithOp, CmpOp};
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Value {
    Bool(bool),
    Num(f64),
    Enum(u16),
}

impl Value {
    fn as_bool(&self) -> bool {
        match self {
            Value::Bool(b) => *b,
            _ => unreachable!("typechecked bool"),
        }
    }

    fn as_num(&self) -> f64 {
        match self {
            Value::Num(n) => *n,
            _ => unreachable!("typechecked real"),
        }
    }

    /// Dense index of a bool/enum value within its fluent domain.
    fn as_index(&self) -> u16 {
        match self {
            Value::Bool(b) => *b as u16,
            Value::Enum(i) => *i,
            Value::Num(_) => unreachable!("typechecked non-real"),
        }
    }
}

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("division by zero evaluating `{subexpr}`")]
    DivisionByZero { subexpr: String },
    #[error("probability {value} outside [0, 1] evaluating `{subexpr}`")]
    BadProbability { value: f64, subexpr: String },
    #[error("distribution for `{fluent}` sums to {sum}, expected 1")]
    BadDistribution { fluent: String, sum: f64 },
}

impl GroundedModel {
    /// Evaluates a deterministic expression under `(s, a)`. The action is
    /// identified by its ground action-fluent key (`None` = no-op).
    fn eval(&self, e: &GroundExpr, s: &GroundState, a: Option<usize>) -> Result<Value, EvalError> {
        Ok(match e {
            GroundExpr::Bool(b) => Value::Bool(*b),
            GroundExpr::Num(n) => Value::Num(*n),
            GroundExpr::EnumVal(v) => Value::Enum(*v),
            GroundExpr::State(i) => match &self.domains[*i] {
                FluentDomain::Bool => Value::Bool(s.get(*i) != 0),
                FluentDomain::Enum { .. } => Value::Enum(s.get(*i)),
            },
            GroundExpr::Action(key) => Value::Bool(a == Some(*key)),
            GroundExpr::NonFluent(i) => self.nonfluent_values[*i],
            GroundExpr::Arith(op, lhs, rhs) => {
                let l = self.eval(lhs, s, a)?.as_num();
                let r = self.eval(rhs, s, a)?.as_num();
                Value::Num(match op {
                    ArithOp::Add => l + r,
                    ArithOp::Sub => l - r,
                    ArithOp::Mul => l * r,
                    ArithOp::Div => {
                        if r == 0.0 {
                            return Err(EvalError::DivisionByZero {
                                subexpr: self.render_expr(e),
                            });
                        }
                        l / r
                    }
                })
            }
            GroundExpr::Cmp(op, lhs, rhs) => {
                let l = self.eval(lhs, s, a)?;
                let r = self.eval(rhs, s, a)?;
                let res = match (op, l, r) {
                    (CmpOp::Eq, Value::Num(x), Value::Num(y)) => x == y,
                    (CmpOp::Ne, Value::Num(x), Value::Num(y)) => x != y,
                    (CmpOp::Lt, Value::Num(x), Value::Num(y)) => x < y,
                    (CmpOp::Le, Value::Num(x), Value::Num(y)) => x <= y,
                    (CmpOp::Eq, x, y) => x.as_index() == y.as_index(),
                    (CmpOp::Ne, x, y) => x.as_index() != y.as_index(),
                    (CmpOp::Lt, x, y) => x.as_index() < y.as_index(),
                    (CmpOp::Le, x, y) => x.as_index() <= y.as_index(),
                };
                Value::Bool(res)
            }
            GroundExpr::Not(inner) => Value::Bool(!self.eval(inner, s, a)?.as_bool()),
            GroundExpr::And(x, y) => {
                Value::Bool(self.eval(x, s, a)?.as_bool() && self.eval(y, s, a)?.as_bool())
            }
            GroundExpr::Or(x, y) => {
                Value::Bool(self.eval(x, s, a)?.as_bool() || self.eval(y, s, a)?.as_bool())
            }
            GroundExpr::If(c, t, f) => {
                if self.eval(c, s, a)?.as_bool() {
                    self.eval(t, s, a)?
                } else {
                    self.eval(f, s, a)?
                }
            }
            GroundExpr::KronDelta(inner) => self.eval(inner, s, a)?,
            GroundExpr::Bernoulli(_) | GroundExpr::Discrete(_) => {
                unreachable!("stochastic node in deterministic position survives validate")
            }
        })
    }

    fn check_prob(&self, p: f64, source: &GroundExpr) -> Result<f64, EvalError> {
        if !(-PROB_TOLERANCE..=1.0 + PROB_TOLERANCE).contains(&p) {
            return Err(EvalError::BadProbability {
                value: p,
                subexpr: self.render_expr(source),
            });
        }
        Ok(p.clamp(0.0, 1.0))
    }

    /// Distribution of one fluent's next value under `(s, a)`, as
    /// `(value, probability)` pairs in value order with exact zeros dropped.
    fn cpf_distribution(
        &self,
        fluent: usize,
        s: &GroundState,
        a: Option<usize>,
    ) -> Result<Vec<(u16, f64)>, EvalError> {
        self.dist_of(&self.cpfs[fluent], fluent, s, a)
    }

    fn dist_of(
        &self,
        e: &GroundExpr,
        fluent: usize,
        s: &GroundState,
        a: Option<usize>,
    ) -> Result<Vec<(u16, f64)>, EvalError> {
        match e {
            GroundExpr::Bernoulli(p) => {
                let p = self.check_prob(self.eval(p, s, a)?.as_num(), e)?;
                let mut out = Vec::with_capacity(2);
                if 1.0 - p != 0.0 {
                    out.push((0, 1.0 - p));
                }
                if p != 0.0 {
                    out.push((1, p));
                }
                Ok(out)
            }
            GroundExpr::Discrete(branches) => {
                let mut out = Vec::with_capacity(branches.len());
                let mut sum = 0.0;
                for (v, pe) in branches.iter().enumerate() {
                    let p = self.check_prob(self.eval(pe, s, a)?.as_num(), e)?;
                    sum += p;
                    if p != 0.0 {
                        out.push((v as u16, p));
                    }
                }
                if (sum - 1.0).abs() > PROB_TOLERANCE {
                    return Err(EvalError::BadDistribution {
                        fluent: self.state_fluents[fluent].to_string(),
                        sum,
                    });
                }
                Ok(out)
            }
            GroundExpr::If(c, t, f) => {
                if self.eval(c, s, a)?.as_bool() {
                    self.dist_of(t, fluent, s, a)
                } else {
                    self.dist_of(f, fluent, s, a)
                }
            }
            deterministic => {
                let v = self.eval(deterministic, s, a)?;
                Ok(vec![(v.as_index(), 1.0)])
            }
        }
    }

    /// Exact joint successor distribution: the product of the per-fluent CPF
    /// distributions, which are conditionally independent given `(s, a)`.
    /// Successors come out in state (lexicographic) order over the support;
    /// zero-probability successors are omitted.
    pub fn transition_distribution(
        &self,
        s: &GroundState,
        action: usize,
    ) -> Result<Vec<(GroundState, f64)>, EvalError> {
        let a = self.actions[action].fluent_key;
        let n = self.state_fluents.len();
        let mut acc: Vec<(Vec<u16>, f64)> = vec![(Vec::with_capacity(n), 1.0)];
        for fluent in 0..n {
            let dist = self.cpf_distribution(fluent, s, a)?;
            let mut next = Vec::with_capacity(acc.len() * dist.len());
            for (prefix, p) in &acc {
                for (v, q) in &dist {
                    let joint = p * q;
                    if joint != 0.0 {
                        let mut row = prefix.clone();
                        row.push(*v);
                        next.push((row, joint));
                    }
                }
            }
            acc = next;
        }
        Ok(acc.into_iter().map(|(v, p)| (GroundState(v), p)).collect())
    }

    /// Deterministic reward of executing `action` in `s`.
    pub fn reward_of(&self, s: &GroundState, action: usize) -> Result<f64, EvalError> {
        let a = self.actions[action].fluent_key;
        Ok(self.eval(&self.reward, s, a)?.as_num())
    }

    /// Samples a successor fluent-by-fluent (equivalent in law to sampling
    /// the joint product) and returns it with `reward_of(s, action)`.
    /// Identical generators yield identical samples.
    pub fn sample_next<R: Rng>(
        &self,
        s: &GroundState,
        action: usize,
        rng: &mut R,
    ) -> Result<(GroundState, f64), EvalError> {
        let reward = self.reward_of(s, action)?;
        let a = self.actions[action].fluent_key;
        let mut next = Vec::with_capacity(self.state_fluents.len());
        for fluent in 0..self.state_fluents.len() {
            let dist = self.cpf_distribution(fluent, s, a)?;
            if dist.len() == 1 {
                next.push(dist[0].0);
                continue;
            }
            let u: f64 = rng.random();
            let mut cum = 0.0;
            let mut chosen = dist[dist.len() - 1].0;
            for (v, p) in &dist {
                cum += p;
                if u < cum {
                    chosen = *v;
                    break;
                }
            }
            next.push(chosen);
        }
        Ok((GroundState(next), reward))
    }

    /// Readable rendering of a compiled expression, used in diagnostics and
    /// the debug dump.
    pub fn render_expr(&self, e: &GroundExpr) -> String {
        match e {
            GroundExpr::Bool(b) => b.to_string(),
            GroundExpr::Num(n) => n.to_string(),
            GroundExpr::EnumVal(v) => format!("@#{v}"),
            GroundExpr::State(i) => self.state_fluents[*i].to_string(),
            GroundExpr::Action(key) => {
                match self.actions.iter().find(|a| a.fluent_key == Some(*key)) {
                    Some(a) => a.to_string(),
                    None => format!("action#{key}"),
                }
            }
            GroundExpr::NonFluent(i) => self.nonfluents[*i].to_string(),
            GroundExpr::Arith(op, l, r) => {
                format!("({} {op} {})", self.render_expr(l), self.render_expr(r))
            }
            GroundExpr::Cmp(op, l, r) => {
                format!("({} {op} {})", self.render_expr(l), self.render_expr(r))
            }
            GroundExpr::Not(inner) => format!("~{}", self.render_expr(inner)),
            GroundExpr::And(a, b) => {
                format!("({} ^ {})", self.render_expr(a), self.render_expr(b))
            }
            GroundExpr::Or(a, b) => format!("({} | {})", self.render_expr(a), self.render_expr(b)),
            GroundExpr::If(c, t, f) => format!(
                "if ({}) then {} else {}",
                self.render_expr(c),
                self.render_expr(t),
                self.render_expr(f)
            ),
            GroundExpr::Bernoulli(p) => format!("Bernoulli({})", self.render_expr(p)),
            GroundExpr::Discrete(branches) => {
                let inner: Vec<String> = branches
                    .iter()
                    .enumerate()
                    .map(|(v, p)| format!("#{v} : {}", self.render_expr(p)))
                    .collect();
                format!("Discrete({})", inner.join(", "))
            }
            GroundExpr::KronDelta(inner) => format!("KronDelta({})", self.render_expr(inner)),
        }
    }
}
