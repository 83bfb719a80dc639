//! Debug dump of a grounded model as JSON: fluent tables, the action list,
//! and, for small models, every per-`(s, a)` successor distribution.

use super::*;
use serde::Serialize;

#[derive(Serialize)]
struct FluentDump<'a> {
    index: usize,
    name: &'a str,
    args: &'a [String],
    kind: FluentTag,
    values: Vec<&'a str>,
}

#[derive(Serialize)]
struct ActionDump<'a> {
    index: usize,
    name: &'a str,
    args: &'a [String],
}

#[derive(Serialize)]
struct NonFluentDump<'a> {
    name: &'a str,
    args: &'a [String],
    value: &'a Value,
}

#[derive(Serialize)]
struct SuccessorDump {
    state: Vec<u16>,
    p: f64,
}

#[derive(Serialize)]
struct TransitionDump {
    state: Vec<u16>,
    action: usize,
    reward: f64,
    successors: Vec<SuccessorDump>,
}

#[derive(Serialize)]
struct ModelDump<'a> {
    domain: &'a str,
    instance: &'a str,
    horizon: u32,
    discount: f64,
    state_space_size: Option<String>,
    state_fluents: Vec<FluentDump<'a>>,
    actions: Vec<ActionDump<'a>>,
    non_fluents: Vec<NonFluentDump<'a>>,
    init: &'a [u16],
    reward_expr: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    transitions: Option<Vec<TransitionDump>>,
}

/// Serializes the model. Per-`(s, a)` distributions are included only when
/// `|S| * |A| <= transition_limit` (pass 0 to always omit them).
pub fn dump_json(
    model: &GroundedModel,
    transition_limit: u128,
) -> Result<serde_json::Value, EvalError> {
    let pairs = model
        .state_space_size
        .and_then(|s| s.checked_mul(model.actions.len() as u128));
    let transitions = match pairs {
        Some(pairs) if pairs <= transition_limit => {
            let mut rows = Vec::new();
            for s in model.enumerate_states().expect("enumerable") {
                for action in 0..model.actions.len() {
                    let successors = model
                        .transition_distribution(&s, action)?
                        .into_iter()
                        .map(|(state, p)| SuccessorDump { state: state.0, p })
                        .collect();
                    rows.push(TransitionDump {
                        state: s.0.clone(),
                        action,
                        reward: model.reward_of(&s, action)?,
                        successors,
                    });
                }
            }
            Some(rows)
        }
        _ => None,
    };

    let dump = ModelDump {
        domain: &model.domain_name,
        instance: &model.instance_name,
        horizon: model.horizon,
        discount: model.discount,
        state_space_size: model.state_space_size.map(|s| s.to_string()),
        state_fluents: model
            .state_fluents
            .iter()
            .map(|f| FluentDump {
                index: f.index,
                name: &f.name,
                args: &f.args,
                kind: f.tag,
                values: (0..model.domains[f.index].size())
                    .map(|v| model.domains[f.index].value_name(v))
                    .collect(),
            })
            .collect(),
        actions: model
            .actions
            .iter()
            .map(|a| ActionDump {
                index: a.index,
                name: &a.name,
                args: &a.args,
            })
            .collect(),
        non_fluents: model
            .nonfluents
            .iter()
            .zip(&model.nonfluent_values)
            .map(|(f, v)| NonFluentDump {
                name: &f.name,
                args: &f.args,
                value: v,
            })
            .collect(),
        init: &model.init.0,
        reward_expr: model.render_expr(&model.reward),
        transitions,
    };
    Ok(serde_json::to_value(dump).expect("serializable dump"))
}
