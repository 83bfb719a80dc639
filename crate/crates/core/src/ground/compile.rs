//! Expansion of a checked model into the ground MDP.

use super::eval::Value;
use super::*;
use crate::lang::{Arg, CheckedModel, Expr, FluentKind, Literal, ValueType};
use std::collections::BTreeMap;
use thiserror::Error;

/// Default cap on the ground action count.
pub const DEFAULT_ACTION_CAP: usize = 100_000;

#[derive(Debug, Clone, Copy)]
pub struct GroundingLimits {
    pub max_actions: usize,
}

impl Default for GroundingLimits {
    fn default() -> Self {
        GroundingLimits {
            max_actions: DEFAULT_ACTION_CAP,
        }
    }
}

#[derive(Debug, Error)]
pub enum GroundError {
    #[error("ground action count {count} exceeds the cap {cap}")]
    ActionCap { count: usize, cap: usize },
}

/// Expands parameterized fluents and action templates over their member
/// universes. Actions are listed with the no-op first, then every binding of
/// every template in declaration/odometer order.
pub fn ground(checked: &CheckedModel, limits: &GroundingLimits) -> Result<GroundedModel, GroundError> {
    let domain = checked.domain();
    let instance = checked.instance();

    let mut state_fluents = Vec::new();
    let mut domains = Vec::new();
    let mut init = Vec::new();
    let mut state_index: BTreeMap<(String, Vec<String>), usize> = BTreeMap::new();

    let mut nonfluents = Vec::new();
    let mut nonfluent_values = Vec::new();
    let mut nonfluent_index: BTreeMap<(String, Vec<String>), usize> = BTreeMap::new();

    let mut actions = vec![GroundAction {
        index: 0,
        name: "noop".into(),
        args: Vec::new(),
        fluent_key: None,
        attrs: None,
    }];
    let mut action_fluent_key: BTreeMap<(String, Vec<String>), usize> = BTreeMap::new();

    for f in &domain.fluents {
        for args in bindings(checked, &f.params) {
            match f.kind {
                FluentKind::State => {
                    let index = state_fluents.len();
                    let tag = if f.name.starts_with("E_") {
                        FluentTag::PreferenceState
                    } else {
                        FluentTag::RobotState
                    };
                    let dom = domain_of(checked, &f.value_type);
                    let init_lit = checked.init_value(&f.name, &args);
                    init.push(literal_to_index(checked, init_lit, &dom));
                    state_index.insert((f.name.clone(), args.clone()), index);
                    state_fluents.push(GroundFluent {
                        name: f.name.clone(),
                        args,
                        tag,
                        index,
                    });
                    domains.push(dom);
                }
                FluentKind::NonFluent => {
                    let index = nonfluents.len();
                    let lit = checked.nonfluent_value(&f.name, &args);
                    nonfluent_values.push(literal_to_value(checked, lit));
                    nonfluent_index.insert((f.name.clone(), args.clone()), index);
                    nonfluents.push(GroundFluent {
                        name: f.name.clone(),
                        args,
                        tag: FluentTag::NonFluent,
                        index,
                    });
                }
                FluentKind::Action => {
                    let key = action_fluent_key.len();
                    action_fluent_key.insert((f.name.clone(), args.clone()), key);
                    let attrs = ExplanationAttributes::from_names(&args);
                    actions.push(GroundAction {
                        index: actions.len(),
                        name: f.name.clone(),
                        args,
                        fluent_key: Some(key),
                        attrs,
                    });
                }
            }
        }
    }

    if actions.len() > limits.max_actions {
        return Err(GroundError::ActionCap {
            count: actions.len(),
            cap: limits.max_actions,
        });
    }

    let ctx = Resolver {
        checked,
        state_index: &state_index,
        nonfluent_index: &nonfluent_index,
        action_fluent_key: &action_fluent_key,
    };

    let mut cpfs = Vec::with_capacity(state_fluents.len());
    for gf in &state_fluents {
        let cpf = checked.cpf(&gf.name);
        let env: BTreeMap<String, String> = cpf
            .params
            .iter()
            .cloned()
            .zip(gf.args.iter().cloned())
            .collect();
        cpfs.push(ctx.resolve(&cpf.body, &env));
    }
    let reward = ctx.resolve(&domain.reward, &BTreeMap::new());

    let state_space_size = domains
        .iter()
        .try_fold(1u128, |acc, d| acc.checked_mul(d.size() as u128));

    Ok(GroundedModel {
        domain_name: domain.name.clone(),
        instance_name: instance.name.clone(),
        state_fluents,
        domains,
        nonfluents,
        nonfluent_values,
        actions,
        cpfs,
        reward,
        horizon: checked.horizon(),
        discount: checked.discount(),
        init: GroundState(init),
        state_space_size,
    })
}

/// Argument tuples for a parameter list, odometer order (last varies
/// fastest). A single empty tuple for parameterless fluents.
fn bindings(checked: &CheckedModel, params: &[String]) -> Vec<Vec<String>> {
    let mut out = vec![Vec::new()];
    for p in params {
        let members = checked.universe(p);
        let mut next = Vec::with_capacity(out.len() * members.len());
        for prefixix in &out {
            for m in members {
                let mut row = prefixix.clone();
                row.push(m.clone());
                next.push(row);
            }
        }
        out = next;
    }
    out
}

fn domain_of(checked: &CheckedModel, vt: &ValueType) -> FluentDomain {
    match vt {
        ValueType::Bool => FluentDomain::Bool,
        ValueType::Enum(name) => FluentDomain::Enum {
            enum_name: name.clone(),
            values: checked.enum_values(name).to_vec(),
        },
        ValueType::Real => unreachable!("real state fluents are rejected by validate"),
    }
}

fn literal_to_index(checked: &CheckedModel, lit: &Literal, dom: &FluentDomain) -> u16 {
    match (lit, dom) {
        (Literal::Bool(b), FluentDomain::Bool) => *b as u16,
        (Literal::EnumValue(v), FluentDomain::Enum { .. }) => {
            checked.enum_of_value(v).expect("checked enum value").1
        }
        _ => unreachable!("literal/domain mismatch survives validate"),
    }
}

fn literal_to_value(checked: &CheckedModel, lit: &Literal) -> Value {
    match lit {
        Literal::Bool(b) => Value::Bool(*b),
        Literal::Num(n) => Value::Num(*n),
        Literal::EnumValue(v) => Value::Enum(checked.enum_of_value(v).expect("checked value").1),
    }
}

struct Resolver<'a> {
    checked: &'a CheckedModel,
    state_index: &'a BTreeMap<(String, Vec<String>), usize>,
    nonfluent_index: &'a BTreeMap<(String, Vec<String>), usize>,
    action_fluent_key: &'a BTreeMap<(String, Vec<String>), usize>,
}

impl Resolver<'_> {
    fn resolve(&self, e: &Expr, env: &BTreeMap<String, String>) -> GroundExpr {
        match e {
            Expr::Literal(Literal::Bool(b)) => GroundExpr::Bool(*b),
            Expr::Literal(Literal::Num(n)) => GroundExpr::Num(*n),
            Expr::Literal(Literal::EnumValue(v)) => {
                GroundExpr::EnumVal(self.member_index(v, None))
            }
            Expr::Var(v) => {
                let member = &env[v];
                GroundExpr::EnumVal(self.member_index(member, None))
            }
            Expr::Fluent { name, args } => {
                let bound: Vec<String> = args
                    .iter()
                    .map(|a| match a {
                        Arg::Var(v) => env[v].clone(),
                        Arg::Value(v) => v.clone(),
                    })
                    .collect();
                let key = (name.clone(), bound);
                match self.checked.fluent(name).kind {
                    FluentKind::State => GroundExpr::State(self.state_index[&key]),
                    FluentKind::NonFluent => GroundExpr::NonFluent(self.nonfluent_index[&key]),
                    FluentKind::Action => GroundExpr::Action(self.action_fluent_key[&key]),
                }
            }
            Expr::Arith { op, lhs, rhs } => GroundExpr::Arith(
                *op,
                Box::new(self.resolve(lhs, env)),
                Box::new(self.resolve(rhs, env)),
            ),
            Expr::Cmp { op, lhs, rhs } => GroundExpr::Cmp(
                *op,
                Box::new(self.resolve(lhs, env)),
                Box::new(self.resolve(rhs, env)),
            ),
            Expr::Not(inner) => GroundExpr::Not(Box::new(self.resolve(inner, env))),
            Expr::And(a, b) => GroundExpr::And(
                Box::new(self.resolve(a, env)),
                Box::new(self.resolve(b, env)),
            ),
            Expr::Or(a, b) => GroundExpr::Or(
                Box::new(self.resolve(a, env)),
                Box::new(self.resolve(b, env)),
            ),
            Expr::If { cond, then, els } => GroundExpr::If(
                Box::new(self.resolve(cond, env)),
                Box::new(self.resolve(then, env)),
                Box::new(self.resolve(els, env)),
            ),
            Expr::Bernoulli(p) => GroundExpr::Bernoulli(Box::new(self.resolve(p, env))),
            Expr::Discrete { enum_name, branches } => {
                // normalize branch order to enum value order; coverage is
                // guaranteed by validate
                let values = self.checked.enum_values(enum_name);
                let mut per_value = vec![GroundExpr::Num(0.0); values.len()];
                for (value, p) in branches {
                    let idx = values.iter().position(|v| v == value).expect("checked branch");
                    per_value[idx] = self.resolve(p, env);
                }
                GroundExpr::Discrete(per_value)
            }
            Expr::KronDelta(inner) => GroundExpr::KronDelta(Box::new(self.resolve(inner, env))),
        }
    }

    /// Index of an enum value within its enum, or of an object within its
    /// type universe (for object-typed parameter comparisons).
    fn member_index(&self, member: &str, _hint: Option<&str>) -> u16 {
        if let Some((_, idx)) = self.checked.enum_of_value(member) {
            return idx;
        }
        // object member: position within its declared type
        for (_ty, members) in self.checked.instance().objects.iter() {
            if let Some(pos) = members.iter().position(|m| m == member) {
                return pos as u16;
            }
        }
        unreachable!("member `{member}` survives validate")
    }
}
