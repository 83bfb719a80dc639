//! Exact finite-horizon value iteration over the reachable state space.

use super::{PlanError, Policy, ValueTable};
use crate::ground::{GroundState, GroundedModel};
use rayon::prelude::*;
use std::collections::{BTreeMap, BTreeSet};

/// Default cap on state-stage entries (states summed over stages).
pub const DEFAULT_STATE_STAGE_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, Copy)]
pub struct ViLimits {
    pub max_state_stages: u64,
}

impl Default for ViLimits {
    fn default() -> Self {
        ViLimits {
            max_state_stages: DEFAULT_STATE_STAGE_CAP,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ViSolution {
    pub values: ValueTable,
    pub policy: Policy,
}

impl ViSolution {
    pub fn root_value(&self, model: &GroundedModel) -> f64 {
        self.values
            .root_value(&model.init)
            .expect("initial state is always reachable")
    }

    pub fn root_action(&self, model: &GroundedModel) -> Option<usize> {
        self.policy.action(model.horizon, &model.init)
    }
}

/// Bellman-optimal finite-horizon values and policy from the model's initial
/// state. Stage `k` of the result covers exactly the states reachable `H-k`
/// steps from the start. Argmax ties break toward the lowest action index.
///
/// Backups within a stage are independent per state and run in parallel;
/// results are identical to sequential execution.
pub fn value_iteration(model: &GroundedModel, limits: &ViLimits) -> Result<ViSolution, PlanError> {
    let horizon = model.horizon as usize;

    // forward reachability, one layer per time index
    let mut layers: Vec<Vec<GroundState>> = Vec::with_capacity(horizon + 1);
    layers.push(vec![model.init.clone()]);
    let mut entries: u64 = 1;
    for _ in 0..horizon {
        let prev = layers.last().expect("non-empty");
        let mut next: BTreeSet<GroundState> = BTreeSet::new();
        for s in prev {
            for action in 0..model.actions.len() {
                for (succ, _) in model.transition_distribution(s, action)? {
                    next.insert(succ);
                }
            }
        }
        entries += next.len() as u64;
        if entries > limits.max_state_stages {
            return Err(PlanError::StateCap {
                count: entries,
                cap: limits.max_state_stages,
            });
        }
        layers.push(next.into_iter().collect());
    }

    // backward induction; stages[k] holds values with k steps remaining,
    // i.e. the layer at time H-k
    let mut value_stages: Vec<BTreeMap<GroundState, f64>> = Vec::with_capacity(horizon + 1);
    let mut policy_stages: Vec<BTreeMap<GroundState, usize>> = Vec::with_capacity(horizon + 1);
    value_stages.push(layers[horizon].iter().map(|s| (s.clone(), 0.0)).collect());
    policy_stages.push(BTreeMap::new());

    for k in 1..=horizon {
        let layer = &layers[horizon - k];
        let below = &value_stages[k - 1];
        let backed: Vec<Result<(GroundState, f64, usize), PlanError>> = layer
            .par_iter()
            .map(|s| {
                let mut best_value = f64::NEG_INFINITY;
                let mut best_action = 0usize;
                for action in 0..model.actions.len() {
                    let reward = model.reward_of(s, action)?;
                    let mut expect = 0.0;
                    for (succ, p) in model.transition_distribution(s, action)? {
                        expect += p * below.get(&succ).copied().unwrap_or(0.0);
                    }
                    let q = reward + model.discount * expect;
                    if q > best_value {
                        best_value = q;
                        best_action = action;
                    }
                }
                Ok((s.clone(), best_value, best_action))
            })
            .collect();
        let mut values = BTreeMap::new();
        let mut policy = BTreeMap::new();
        for row in backed {
            let (s, v, a) = row?;
            values.insert(s.clone(), v);
            policy.insert(s, a);
        }
        value_stages.push(values);
        policy_stages.push(policy);
    }

    Ok(ViSolution {
        values: ValueTable {
            stages: value_stages,
        },
        policy: Policy {
            stages: policy_stages,
        },
    })
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
    fn horizon_zero_has_zero_values_and_an_empty_policy() {
        let m = model(
            "domain d { pvariables { x : { state-fluent, bool, default = false }; }; cpfs { x' = x; }; reward = 1.0; }",
            "instance i { domain = d; horizon = 0; }",
        );
        let sol = value_iteration(&m, &ViLimits::default()).unwrap();
        assert_eq!(sol.values.stages.len(), 1);
        assert_eq!(sol.root_value(&m), 0.0);
        assert!(sol.policy.stages.iter().all(|s| s.is_empty()));
    }

    #[test]
    fn two_action_chain_picks_the_better_reward_every_stage() {
        // single (empty) state, actions worth 1 and 2, horizon 3
        let m = model(
            r#"domain d {
                pvariables {
                    a : { action-fluent, bool, default = false };
                    b : { action-fluent, bool, default = false };
                };
                reward = if (a) then 1.0 else if (b) then 2.0 else 0.0;
            }"#,
            "instance i { domain = d; horizon = 3; discount = 1.0; }",
        );
        let sol = value_iteration(&m, &ViLimits::default()).unwrap();
        assert_eq!(sol.root_value(&m), 6.0);
        let b = m.find_action("b", &[]).unwrap();
        for k in 1..=3u32 {
            assert_eq!(sol.policy.action(k, &m.init), Some(b));
        }
    }

    #[test]
    fn ties_break_toward_the_lowest_action_index() {
        let m = model(
            r#"domain d {
                pvariables {
                    a : { action-fluent, bool, default = false };
                    b : { action-fluent, bool, default = false };
                };
                reward = if (a | b) then 1.0 else 1.0;
            }"#,
            "instance i { domain = d; horizon = 2; }",
        );
        let sol = value_iteration(&m, &ViLimits::default()).unwrap();
        // noop (index 0) ties both actions
        assert_eq!(sol.root_action(&m), Some(0));
    }

    #[test]
    fn state_cap_is_enforced_with_counts() {
        let m = model(
            r#"domain d {
                pvariables {
                    x : { state-fluent, bool, default = false };
                    y : { state-fluent, bool, default = false };
                };
                cpfs { x' = Bernoulli(0.5); y' = Bernoulli(0.5); };
                reward = 0;
            }"#,
            "instance i { domain = d; horizon = 4; }",
        );
        let err = value_iteration(&m, &ViLimits { max_state_stages: 3 }).unwrap_err();
        match err {
            PlanError::StateCap { count, cap } => {
                assert!(count > 3);
                assert_eq!(cap, 3);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn discount_scales_future_rewards() {
        let m = model(
            r#"domain d {
                pvariables { a : { action-fluent, bool, default = false }; };
                reward = if (a) then 1.0 else 0.0;
            }"#,
            "instance i { domain = d; horizon = 2; discount = 0.5; }",
        );
        let sol = value_iteration(&m, &ViLimits::default()).unwrap();
        assert_eq!(sol.root_value(&m), 1.5);
    }

    #[test]
    fn reapplying_a_backup_to_converged_stage_values_changes_nothing() {
        let m = model(
            r#"domain d {
                pvariables {
                    x : { state-fluent, bool, default = false };
                    flip : { action-fluent, bool, default = false };
                };
                cpfs { x' = if (flip) then Bernoulli(0.3) else x; };
                reward = if (x) then 1.0 else 0.0;
            }"#,
            "instance i { domain = d; horizon = 4; }",
        );
        let sol = value_iteration(&m, &ViLimits::default()).unwrap();
        // redo the stage-k backup from stage k-1 values; must reproduce
        for k in 1..=4usize {
            for (s, v) in &sol.values.stages[k] {
                let mut best = f64::NEG_INFINITY;
                for action in 0..m.actions.len() {
                    let reward = m.reward_of(s, action).unwrap();
                    let mut expect = 0.0;
                    for (succ, p) in m.transition_distribution(s, action).unwrap() {
                        expect += p * sol.values.stages[k - 1].get(&succ).copied().unwrap_or(0.0);
                    }
                    let q = reward + m.discount * expect;
                    if q > best {
                        best = q;
                    }
                }
                assert_eq!(best, *v, "stage {k}");
            }
        }
    }
}
