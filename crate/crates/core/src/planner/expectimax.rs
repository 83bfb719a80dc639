//! Brute-force expectimax: exhaustive alternating max-over-actions /
//! expectation-over-successors evaluation. Kept deliberately separate from
//! the value-iteration code path so the two can cross-check each other.

use super::PlanError;
use crate::ground::{GroundState, GroundedModel};
use std::collections::HashMap;

pub const DEFAULT_NODE_CAP: u64 = 10_000_000;

/// Exact expected-return evaluator.
///
/// `memoize` collapses repeated `(state, remaining)` subtrees; the memoized
/// and plain variants agree exactly because both expand actions and
/// successors in the same order with the same arithmetic.
#[derive(Debug, Clone, Copy)]
pub struct Expectimax {
    pub node_cap: u64,
    pub memoize: bool,
}

impl Default for Expectimax {
    fn default() -> Self {
        Expectimax {
            node_cap: DEFAULT_NODE_CAP,
            memoize: true,
        }
    }
}

impl Expectimax {
    pub fn with_node_cap(node_cap: u64) -> Self {
        Expectimax {
            node_cap,
            ..Default::default()
        }
    }

    /// Optimal expected return from `s0` over `horizon` steps.
    pub fn value(
        &self,
        model: &GroundedModel,
        s0: &GroundState,
        horizon: u32,
    ) -> Result<f64, PlanError> {
        let mut search = Search {
            model,
            node_cap: self.node_cap,
            nodes: 0,
            memo: self.memoize.then(HashMap::new),
        };
        search.go(s0, horizon)
    }
}

struct Search<'a> {
    model: &'a GroundedModel,
    node_cap: u64,
    nodes: u64,
    memo: Option<HashMap<(GroundState, u32), f64>>,
}

impl Search<'_> {
    fn go(&mut self, s: &GroundState, remaining: u32) -> Result<f64, PlanError> {
        self.nodes += 1;
        if self.nodes > self.node_cap {
            return Err(PlanError::NodeCap { cap: self.node_cap });
        }
        if remaining == 0 {
            return Ok(0.0);
        }
        if let Some(memo) = &self.memo {
            if let Some(v) = memo.get(&(s.clone(), remaining)) {
                return Ok(*v);
            }
        }
        let mut best = f64::NEG_INFINITY;
        for action in 0..self.model.actions.len() {
            let reward = self.model.reward_of(s, action)?;
            let mut expect = 0.0;
            for (succ, p) in self.model.transition_distribution(s, action)? {
                expect += p * self.go(&succ, remaining - 1)?;
            }
            let q = reward + self.model.discount * expect;
            if q > best {
                best = q;
            }
        }
        if let Some(memo) = &mut self.memo {
            memo.insert((s.clone(), remaining), best);
        }
        Ok(best)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::{parse_domain, parse_instance, validate};

    fn model(domain: &str, instance: &str) -> GroundedModel {
        let d = parse_domain(domain).unwrap();
        let i = parse_instance(instance).unwrap();
        crate::ground::ground(&validate(&d, &i).unwrap(), &Default::default()).unwrap()
    }

    #[test]
    fn deterministic_reward_chain_sums() {
        // reward 1 per step for 4 steps под discount 1
        let m = model(
            r#"domain d {
                pvariables { a : { action-fluent, bool, default = false }; };
                reward = if (a) then 1.0 else 0.5;
            }"#,
            "instance i { domain = d; horizon = 4; }",
        );
        let v = Expectimax::default().value(&m, &m.init, 4).unwrap();
        assert_eq!(v, 4.0);
    }

    #[test]
    fn bernoulli_branch_into_rewards_averages() {
        // `gamble` flips x ~ Bernoulli(0.5); the next step's reward reads x
        // as 2 or 0, so the branching action is worth 1.0 in expectation
        let m = model(
            r#"domain d {
                pvariables {
                    x : { state-fluent, bool, default = false };
                    gamble : { action-fluent, bool, default = false };
                };
                cpfs { x' = if (gamble) then Bernoulli(0.5) else x; };
                reward = if (x) then 2.0 else 0.0;
            }"#,
            "instance i { domain = d; horizon = 2; }",
        );
        let v = Expectimax::default().value(&m, &m.init, 2).unwrap();
        assert_eq!(v, 1.0);
    }

    #[test]
    fn memoized_and_plain_agree_exactly() {
        let m = model(
            r#"domain d {
                pvariables {
                    x : { state-fluent, bool, default = false };
                    y : { state-fluent, bool, default = false };
                    flip : { action-fluent, bool, default = false };
                    swap : { action-fluent, bool, default = false };
                };
                cpfs {
                    x' = if (flip) then Bernoulli(0.25) else x;
                    y' = if (swap) then ~y else y;
                };
                reward = if (x ^ y) then 3.0 else if (y) then 0.5 else 0.0;
            }"#,
            "instance i { domain = d; horizon = 5; discount = 0.9; }",
        );
        let plain = Expectimax {
            memoize: false,
            ..Default::default()
        };
        let memo = Expectimax::default();
        let a = plain.value(&m, &m.init, 5).unwrap();
        let b = memo.value(&m, &m.init, 5).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn node_cap_is_enforced() {
        let m = model(
            r#"domain d {
                pvariables {
                    x : { state-fluent, bool, default = false };
                    flip : { action-fluent, bool, default = false };
                };
                cpfs { x' = if (flip) then Bernoulli(0.5) else x; };
                reward = 0;
            }"#,
            "instance i { domain = d; horizon = 12; }",
        );
        let err = Expectimax {
            node_cap: 100,
            memoize: false,
        }
        .value(&m, &m.init, 12)
        .unwrap_err();
        assert!(matches!(err, PlanError::NodeCap { cap: 100 }));
    }
}
