//! Solvers for the grounded MDP.
//!
//! Three planners with one contract each:
//!
//! - [`value_iteration`] — exact finite-horizon backward induction over the
//!   states reachable from the initial state; the reference solver.
//! - [`expectimax`](Expectimax) — brute-force alternating max/expectation
//!   tree evaluation, used to cross-check the reference solver.
//! - [`sampling_plan`] — anytime UCT for instances past the exact cap.
//!
//! Stage indices count *steps remaining*: stage 0 is the episode end (all
//! values zero, no terminal reward), stage `H` is the root. Every argmax
//! breaks ties toward the lowest ground-action index, and most-likely
//! successor selection breaks probability ties toward the smallest state, so
//! all outputs are deterministic.

mod expectimax;
mod extract;
mod uct;
mod vi;

pub use expectimax::Expectimax;
pub use extract::{extract_plan, ExtractMode};
pub use uct::{sampling_plan, UctConfig};
pub use vi::{value_iteration, ViLimits, ViSolution};

use crate::ground::{EvalError, GroundState, GroundedModel};
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PlanError {
    #[error("state-stage entries {count} exceed the cap {cap}")]
    StateCap { count: u64, cap: u64 },
    #[error("expectimax node budget exhausted (cap {cap})")]
    NodeCap { cap: u64 },
    #[error("policy undefined {remaining} step(s) from the end in state [{state}]")]
    PolicyUndefined { remaining: u32, state: String },
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// Per-stage state values; `stages[k]` holds values with `k` steps left.
#[derive(Debug, Clone)]
pub struct ValueTable {
    pub stages: Vec<BTreeMap<GroundState, f64>>,
}

impl ValueTable {
    pub fn horizon(&self) -> u32 {
        (self.stages.len() - 1) as u32
    }

    /// Value of the root state with the full horizon remaining.
    pub fn root_value(&self, s0: &GroundState) -> Option<f64> {
        self.stages.last().and_then(|m| m.get(s0)).copied()
    }
}

/// Per-stage action choices; `stages[k]` maps states with `k` steps left to
/// the optimal ground-action index. Stage 0 is empty (nothing left to do).
#[derive(Debug, Clone)]
pub struct Policy {
    pub stages: Vec<BTreeMap<GroundState, usize>>,
}

impl Policy {
    pub fn action(&self, remaining: u32, s: &GroundState) -> Option<usize> {
        self.stages.get(remaining as usize).and_then(|m| m.get(s)).copied()
    }
}

/// One executed step of a plan or episode.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRecord {
    /// Time index from the start (0-based).
    pub stage: u32,
    pub state: GroundState,
    pub action: usize,
    pub reward: f64,
    pub next_state: GroundState,
}

/// A realized action sequence with its discounted return. Consecutive
/// records chain: each `next_state` is the following record's `state`.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanTrace {
    pub records: Vec<TraceRecord>,
    pub total_return: f64,
}

#[derive(Serialize)]
struct TraceMeta<'a> {
    total_return: f64,
    steps: usize,
    domain: &'a str,
    instance: &'a str,
}

#[derive(Serialize)]
struct TraceLine<'a> {
    stage: u32,
    state: &'a [u16],
    action: usize,
    action_text: String,
    reward: f64,
    next_state: &'a [u16],
}

impl PlanTrace {
    /// JSON lines: one meta line, then one record per line.
    pub fn to_jsonl(&self, model: &GroundedModel) -> String {
        let mut out = String::new();
        let meta = TraceMeta {
            total_return: self.total_return,
            steps: self.records.len(),
            domain: &model.domain_name,
            instance: &model.instance_name,
        };
        out.push_str(&serde_json::to_string(&meta).expect("serializable"));
        out.push('\n');
        for r in &self.records {
            let line = TraceLine {
                stage: r.stage,
                state: &r.state.0,
                action: r.action,
                action_text: model.actions[r.action].to_string(),
                reward: r.reward,
                next_state: &r.next_state.0,
            };
            out.push_str(&serde_json::to_string(&line).expect("serializable"));
            out.push('\n');
        }
        out
    }

    /// Human-readable plan; each action line ends with the action text.
    pub fn to_text(&self, model: &GroundedModel) -> String {
        let mut out = format!(
            "plan for {} ({} steps, total return {})\n",
            model.instance_name,
            self.records.len(),
            self.total_return
        );
        for r in &self.records {
            out.push_str(&format!("  {}: {}\n", r.stage, model.actions[r.action]));
        }
        out
    }

    /// Action display strings in execution order.
    pub fn action_texts(&self, model: &GroundedModel) -> Vec<String> {
        self.records
            .iter()
            .map(|r| model.actions[r.action].to_string())
            .collect()
    }
}

#[derive(Serialize)]
struct StageEntry<T: Serialize> {
    /// Mixed-radix state rank as a decimal string (may exceed u64).
    index: String,
    state: Vec<u16>,
    #[serde(flatten)]
    payload: T,
}

#[derive(Serialize)]
struct ValuePayload {
    value: f64,
}

#[derive(Serialize)]
struct ActionPayload {
    action: usize,
    action_text: String,
}

#[derive(Serialize)]
struct StageDump<T: Serialize> {
    remaining: usize,
    entries: Vec<StageEntry<T>>,
}

fn rank_string(model: &GroundedModel, s: &GroundState) -> String {
    match model.state_rank(s) {
        Some(r) => r.to_string(),
        None => "overflow".to_string(),
    }
}

/// Value table as JSON keyed by state index.
pub fn values_json(model: &GroundedModel, table: &ValueTable) -> serde_json::Value {
    let stages: Vec<StageDump<ValuePayload>> = table
        .stages
        .iter()
        .enumerate()
        .map(|(remaining, m)| StageDump {
            remaining,
            entries: m
                .iter()
                .map(|(s, v)| StageEntry {
                    index: rank_string(model, s),
                    state: s.0.clone(),
                    payload: ValuePayload { value: *v },
                })
                .collect(),
        })
        .collect();
    serde_json::json!({ "stages": stages })
}

/// Policy as JSON keyed by state index.
pub fn policy_json(model: &GroundedModel, policy: &Policy) -> serde_json::Value {
    let stages: Vec<StageDump<ActionPayload>> = policy
        .stages
        .iter()
        .enumerate()
        .map(|(remaining, m)| StageDump {
            remaining,
            entries: m
                .iter()
                .map(|(s, a)| StageEntry {
                    index: rank_string(model, s),
                    state: s.0.clone(),
                    payload: ActionPayload {
                        action: *a,
                        action_text: model.actions[*a].to_string(),
                    },
                })
                .collect(),
        })
        .collect();
    serde_json::json!({ "stages": stages })
}

