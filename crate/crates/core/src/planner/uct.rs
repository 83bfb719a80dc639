//! UCT: anytime Monte-Carlo tree search with UCB1 action selection and
//! uniform random rollouts.
//!
//! The tree is keyed by `(state, steps-remaining)`, so statistics merge
//! across transpositions. One iteration = one root-to-leaf descent, one node
//! expansion, and one rollout to the horizon. The recommendation is the
//! most-visited root action, ties toward the lowest index. Runs are
//! sequential and fully determined by `(model, state, remaining, config,
//! seed)`.

use super::PlanError;
use crate::ground::{GroundState, GroundedModel};
use crate::rng::rng_from_seed;
use rand::Rng;
use rand_chacha::ChaCha12Rng;
use std::collections::HashMap;

#[derive(Debug, Clone, Copy)]
pub struct UctConfig {
    /// Number of search iterations (rollouts).
    pub budget: u32,
    /// UCB1 exploration constant.
    pub exploration: f64,
}

impl Default for UctConfig {
    fn default() -> Self {
        UctConfig {
            budget: 1000,
            exploration: std::f64::consts::SQRT_2,
        }
    }
}

struct ActionStat {
    tries: u32,
    total: f64,
}

struct Node {
    visits: u32,
    actions: Vec<ActionStat>,
}

impl Node {
    fn new(action_count: usize) -> Self {
        Node {
            visits: 0,
            actions: (0..action_count)
                .map(|_| ActionStat {
                    tries: 0,
                    total: 0.0,
                })
                .collect(),
        }
    }
}

struct Tree<'a> {
    model: &'a GroundedModel,
    exploration: f64,
    arena: Vec<Node>,
    ids: HashMap<(GroundState, u32), usize>,
    rng: ChaCha12Rng,
    /// Observed return range; UCB1 assumes payoffs in [0, 1], so means are
    /// normalized by this range before the exploration term is added.
    value_min: f64,
    value_max: f64,
}

/// Chooses an action for `state` with `remaining` steps to go.
///
/// `budget >= 1` and `remaining >= 1` are required.
pub fn sampling_plan(
    model: &GroundedModel,
    state: &GroundState,
    remaining: u32,
    config: &UctConfig,
    seed: u64,
) -> Result<usize, PlanError> {
    assert!(config.budget >= 1, "budget must be at least 1");
    assert!(remaining >= 1, "cannot plan with no steps remaining");
    let mut tree = Tree {
        model,
        exploration: config.exploration,
        arena: Vec::new(),
        ids: HashMap::new(),
        rng: rng_from_seed(seed),
    };
    let root = tree.node_id(state, remaining);
    for _ in 0..config.budget {
        tree.simulate(root, state, remaining)?;
    }
    let root = &tree.arena[root];
    let mut best = 0usize;
    let mut best_tries = 0u32;
    for (i, stat) in root.actions.iter().enumerate() {
        if stat.tries > best_tries {
            best_tries = stat.tries;
            best = i;
        }
    }
    Ok(best)
}

impl Tree<'_> {
    fn node_id(&mut self, state: &GroundState, remaining: u32) -> usize {
        if let Some(id) = self.ids.get(&(state.clone(), remaining)) {
            return *id;
        }
        let id = self.arena.len();
        self.arena.push(Node::new(self.model.actions.len()));
        self.ids.insert((state.clone(), remaining), id);
        id
    }

    /// One descent from `node`; returns the sampled discounted return.
    fn simulate(&mut self, node: usize, state: &GroundState, remaining: u32) -> Result<f64, PlanError> {
        if remaining == 0 {
            return Ok(0.0);
        }
        let action = self.select_action(node);
        let (next, reward) = self.model.sample_next(state, action, &mut self.rng)?;
        let future = if remaining == 1 {
            0.0
        } else {
            match self.ids.get(&(next.clone(), remaining - 1)) {
                Some(child) => self.simulate(*child, &next, remaining - 1)?,
                None => {
                    // expand one node, then estimate the rest by rollout
                    self.node_id(&next, remaining - 1);
                    self.rollout(&next, remaining - 1)?
                }
            }
        };
        let q = reward + self.model.discount * future;
        let n = &mut self.arena[node];
        n.visits += 1;
        n.actions[action].tries += 1;
        n.actions[action].total += q;
        Ok(q)
    }

    /// Untried actions first (index order), then UCB1.
    fn select_action(&mut self, node: usize) -> usize {
        let n = &self.arena[node];
        for (i, stat) in n.actions.iter().enumerate() {
            if stat.tries == 0 {
                return i;
            }
        }
        let ln_total = (n.visits as f64).ln();
        let mut best = 0usize;
        let mut best_score = f64::NEG_INFINITY;
        for (i, stat) in n.actions.iter().enumerate() {
            let mean = stat.total / stat.tries as f64;
            let score = mean + self.exploration * (ln_total / stat.tries as f64).sqrt();
            if score > best_score {
                best_score = score;
                best = i;
            }
        }
        best
    }

    fn rollout(&mut self, state: &GroundState, remaining: u32) -> Result<f64, PlanError> {
        let mut total = 0.0;
        let mut discount = 1.0;
        let mut current = state.clone();
        for _ in 0..remaining {
            let action = self.rng.random_range(0..self.model.actions.len());
            let (next, reward) = self.model.sample_next(&current, action, &mut self.rng)?;
            total += discount * reward;
            discount *= self.model.discount;
            current = next;
        }
        Ok(total)
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
    fn single_available_action_is_returned_for_any_budget() {
        let m = model(
            "domain d { pvariables { x : { state-fluent, bool, default = false }; }; cpfs { x' = x; }; reward = 0; }",
            "instance i { domain = d; horizon = 3; }",
        );
        for budget in [1, 10, 500] {
            let a = sampling_plan(&m, &m.init, 3, &UctConfig { budget, ..Default::default() }, 1)
                .unwrap();
            assert_eq!(a, 0);
        }
    }

    #[test]
    fn two_armed_bandit_finds_the_dominant_arm() {
        let m = model(
            r#"domain d {
                pvariables {
                    zero : { action-fluent, bool, default = false };
                    one : { action-fluent, bool, default = false };
                };
                reward = if (one) then 1.0 else 0.0;
            }"#,
            "instance i { domain = d; horizon = 1; }",
        );
        let one = m.find_action("one", &[]).unwrap();
        for seed in 0..10 {
            let a = sampling_plan(
                &m,
                &m.init,
                1,
                &UctConfig {
                    budget: 100,
                    ..Default::default()
                },
                seed,
            )
            .unwrap();
            assert_eq!(a, one, "seed {seed}");
        }
    }

    #[test]
    fn identical_seeds_give_identical_choices() {
        let m = model(
            r#"domain d {
                pvariables {
                    x : { state-fluent, bool, default = false };
                    flip : { action-fluent, bool, default = false };
                    stay : { action-fluent, bool, default = false };
                };
                cpfs { x' = if (flip) then Bernoulli(0.6) else x; };
                reward = if (x) then 1.0 else 0.0;
            }"#,
            "instance i { domain = d; horizon = 4; }",
        );
        let cfg = UctConfig {
            budget: 300,
            ..Default::default()
        };
        let a = sampling_plan(&m, &m.init, 4, &cfg, 42).unwrap();
        let b = sampling_plan(&m, &m.init, 4, &cfg, 42).unwrap();
        assert_eq!(a, b);
    }
}

#[cfg(test)]
mod debug_tests {
    use super::*;
    use crate::ground::{ground, GroundingLimits};
    use crate::lang::{parse_domain, parse_instance, validate};
    use crate::scenario::*;

    #[test]
    fn inspect_root_stats() {
        let (dt, it) = build_librarian(&LibrarianConfig::walkthrough()).unwrap();
        let d = parse_domain(&dt).unwrap();
        let i = parse_instance(&it).unwrap();
        let m = ground(&validate(&d, &i).unwrap(), &GroundingLimits::default()).unwrap();
        let mut tree = Tree {
            model: &m,
            exploration: std::f64::consts::SQRT_2,
            arena: Vec::new(),
            ids: HashMap::new(),
            rng: crate::rng::rng_from_seed(1),
        };
        let root = tree.node_id(&m.init, m.horizon);
        for _ in 0..10_000 {
            tree.simulate(root, &m.init.clone(), m.horizon).unwrap();
        }
        println!("tree nodes: {}", tree.arena.len());
        let node = &tree.arena[root];
        let mut rows: Vec<(usize, u32, f64)> = node
            .actions
            .iter()
            .enumerate()
            .map(|(i, s)| (i, s.tries, s.total / s.tries.max(1) as f64))
            .collect();
        rows.sort_by(|a, b| b.1.cmp(&a.1));
        for (i, tries, mean) in rows.iter().take(8) {
            println!("  action {i} ({}) tries={tries} mean={mean:.3}", m.actions[*i]);
        }
    }
}
