//! The probabilistic preference model.
//!
//! A [`PreferenceProfile`] stores one Bernoulli parameter per explanation
//! attribute — the probability that the user prefers `textual`, `rich`,
//! `short`, and `local` respectively — plus a `persistence` parameter
//! governing drift. Storing a single parameter per attribute makes the
//! two-value distributions normalized by construction.
//!
//! Preference fluents evolve by a persistence mixture: each step the fluent
//! keeps its value with probability `persistence` and otherwise resamples
//! from the attribute's Bernoulli parameter. The stationary marginal of that
//! chain is exactly the declared parameter, so the profile keeps its direct
//! reading under drift. A context table (calm / confused / stressed)
//! optionally swaps the resampling parameters per user context.

use crate::attrs::{DetailLevel, Duration, ExplanationAttributes, Representation, Scope};
use crate::lang::{Assignment, Cpf, EnumDecl, Expr, FluentDecl, FluentKind, Literal, Span, ValueType};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

/// User context conditioning the preference parameters.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(rename_all = "lowercase")]
pub enum UserContext {
    Calm,
    Confused,
    Stressed,
}

impl UserContext {
    pub const ALL: [UserContext; 3] = [UserContext::Calm, UserContext::Confused, UserContext::Stressed];

    pub fn name(self) -> &'static str {
        match self {
            UserContext::Calm => "calm",
            UserContext::Confused => "confused",
            UserContext::Stressed => "stressed",
        }
    }
}

impl std::fmt::Display for UserContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Per-context overrides of the four attribute parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContextParams {
    pub p_textual: f64,
    pub p_rich: f64,
    pub p_short: f64,
    pub p_local: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PreferenceProfile {
    /// P(representation preference = textual)
    pub p_textual: f64,
    /// P(detail preference = rich)
    pub p_rich: f64,
    /// P(duration preference = short)
    pub p_short: f64,
    /// P(scope preference = local)
    pub p_local: f64,
    /// Per-step probability that a preference fluent keeps its value.
    pub persistence: f64,
    /// Context-conditioned parameter overrides; empty = no context fluent.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub contexts: BTreeMap<UserContext, ContextParams>,
}

impl Default for PreferenceProfile {
    fn default() -> Self {
        PreferenceProfile {
            p_textual: 0.7,
            p_rich: 0.6,
            p_short: 0.6,
            p_local: 0.7,
            persistence: 0.9,
            contexts: BTreeMap::new(),
        }
    }
}

#[derive(Debug, Error)]
pub enum ProfileError {
    #[error("profile parameter `{name}` = {value} is outside [0, 1]")]
    OutOfRange { name: String, value: f64 },
}

impl PreferenceProfile {
    pub fn validate(&self) -> Result<(), ProfileError> {
        let mut check = |name: &str, value: f64| {
            if (0.0..=1.0).contains(&value) {
                Ok(())
            } else {
                Err(ProfileError::OutOfRange {
                    name: name.to_string(),
                    value,
                })
            }
        };
        check("p_textual", self.p_textual)?;
        check("p_rich", self.p_rich)?;
        check("p_short", self.p_short)?;
        check("p_local", self.p_local)?;
        check("persistence", self.persistence)?;
        for (ctx, params) in &self.contexts {
            check(&format!("contexts.{ctx}.p_textual"), params.p_textual)?;
            check(&format!("contexts.{ctx}.p_rich"), params.p_rich)?;
            check(&format!("contexts.{ctx}.p_short"), params.p_short)?;
            check(&format!("contexts.{ctx}.p_local"), params.p_local)?;
        }
        Ok(())
    }

    pub fn base_params(&self) -> ContextParams {
        ContextParams {
            p_textual: self.p_textual,
            p_rich: self.p_rich,
            p_short: self.p_short,
            p_local: self.p_local,
        }
    }

    /// Fills the context table with the documented derived defaults:
    /// `confused` moves `p_textual` and `p_rich` halfway toward 1, `stressed`
    /// moves `p_short` halfway toward 1, `calm` keeps the base parameters.
    pub fn with_default_contexts(mut self) -> Self {
        let base = self.base_params();
        self.contexts.insert(UserContext::Calm, base);
        self.contexts.insert(
            UserContext::Confused,
            ContextParams {
                p_textual: (base.p_textual + 1.0) / 2.0,
                p_rich: (base.p_rich + 1.0) / 2.0,
                ..base
            },
        );
        self.contexts.insert(
            UserContext::Stressed,
            ContextParams {
                p_short: (base.p_short + 1.0) / 2.0,
                ..base
            },
        );
        self
    }

    /// Probability that the user's (stationary) preference matches the
    /// chosen value of each attribute.
    pub fn match_probability(&self, attrs: &ExplanationAttributes) -> [f64; 4] {
        [
            match attrs.representation {
                Representation::Textual => self.p_textual,
                Representation::Visual => 1.0 - self.p_textual,
            },
            match attrs.detail {
                DetailLevel::Rich => self.p_rich,
                DetailLevel::Poor => 1.0 - self.p_rich,
            },
            match attrs.duration {
                Duration::Short => self.p_short,
                Duration::Long => 1.0 - self.p_short,
            },
            match attrs.scope {
                Scope::Local => self.p_local,
                Scope::Global => 1.0 - self.p_local,
            },
        ]
    }

    /// The per-attribute most-likely values (ties at 0.5 go to the stored
    /// parameter's value).
    pub fn modal_attributes(&self) -> ExplanationAttributes {
        ExplanationAttributes {
            representation: if self.p_textual >= 0.5 {
                Representation::Textual
            } else {
                Representation::Visual
            },
            detail: if self.p_rich >= 0.5 {
                DetailLevel::Rich
            } else {
                DetailLevel::Poor
            },
            duration: if self.p_short >= 0.5 {
                Duration::Short
            } else {
                Duration::Long
            },
            scope: if self.p_local >= 0.5 {
                Scope::Local
            } else {
                Scope::Global
            },
        }
    }
}

/// Expected preference-match reward of choosing `attrs`: the sum over
/// attributes of `bonus_per_attribute` times the stationary probability that
/// the preference equals the chosen value.
pub fn expected_match_reward(
    profile: &PreferenceProfile,
    attrs: &ExplanationAttributes,
    bonus_per_attribute: f64,
) -> f64 {
    profile
        .match_probability(attrs)
        .iter()
        .map(|p| bonus_per_attribute * p)
        .sum()
}

/// Static description of one preference attribute as it appears in
/// generated domains.
pub struct AttributeSpec {
    /// State fluent name (`E_*` marks it as preference state).
    pub fluent: &'static str,
    pub enum_name: &'static str,
    /// Enum values in declaration order.
    pub values: [&'static str; 2],
    /// Non-fluent holding the attribute's Bernoulli parameter.
    pub nonfluent: &'static str,
    /// Which of `values` the stored parameter refers to.
    pub param_value: usize,
}

/// The four attributes in canonical order. Note the stored duration
/// parameter refers to `short`, the second declared value.
pub const ATTRIBUTES: [AttributeSpec; 4] = [
    AttributeSpec {
        fluent: "E_r",
        enum_name: "repr_t",
        values: ["textual", "visual"],
        nonfluent: "p_r_textual",
        param_value: 0,
    },
    AttributeSpec {
        fluent: "E_dl",
        enum_name: "detail_t",
        values: ["rich", "poor"],
        nonfluent: "p_dl_rich",
        param_value: 0,
    },
    AttributeSpec {
        fluent: "E_d",
        enum_name: "duration_t",
        values: ["long", "short"],
        nonfluent: "p_d_short",
        param_value: 1,
    },
    AttributeSpec {
        fluent: "E_s",
        enum_name: "scope_t",
        values: ["local", "global"],
        nonfluent: "p_s_local",
        param_value: 0,
    },
];

pub const CONTEXT_FLUENT: &str = "user_context";
pub const CONTEXT_ENUM: &str = "context_t";
pub const PERSISTENCE_NONFLUENT: &str = "persistence";

fn ctx_param_name(base: &str, ctx: UserContext) -> String {
    format!("{base}_{ctx}")
}

fn ctx_param_value(params: &ContextParams, spec: &AttributeSpec) -> f64 {
    match spec.nonfluent {
        "p_r_textual" => params.p_textual,
        "p_dl_rich" => params.p_rich,
        "p_d_short" => params.p_short,
        "p_s_local" => params.p_local,
        _ => unreachable!(),
    }
}

fn base_param_value(profile: &PreferenceProfile, spec: &AttributeSpec) -> f64 {
    ctx_param_value(&profile.base_params(), spec)
}

/// Enum declarations for the four attributes (plus the context enum when the
/// profile carries a context table).
pub fn preference_enum_decls(profile: &PreferenceProfile) -> Vec<EnumDecl> {
    let mut out: Vec<EnumDecl> = ATTRIBUTES
        .iter()
        .map(|spec| EnumDecl {
            name: spec.enum_name.to_string(),
            values: spec.values.iter().map(|v| v.to_string()).collect(),
            span: Span::default(),
        })
        .collect();
    if !profile.contexts.is_empty() {
        out.push(EnumDecl {
            name: CONTEXT_ENUM.to_string(),
            values: UserContext::ALL.iter().map(|c| c.name().to_string()).collect(),
            span: Span::default(),
        });
    }
    out
}

/// Fluent declarations: the four preference state fluents, the probability
/// non-fluents (base and per-context), the persistence non-fluent, and the
/// context fluent when contexts are present. Non-fluent defaults are fixed
/// neutral constants; concrete values travel in the instance file.
pub fn preference_fluent_decls(profile: &PreferenceProfile) -> Vec<FluentDecl> {
    let mut out = Vec::new();
    for spec in &ATTRIBUTES {
        out.push(FluentDecl {
            name: spec.fluent.to_string(),
            kind: FluentKind::State,
            value_type: ValueType::Enum(spec.enum_name.to_string()),
            params: Vec::new(),
            default: Literal::EnumValue(spec.values[0].to_string()),
            span: Span::default(),
        });
    }
    if !profile.contexts.is_empty() {
        out.push(FluentDecl {
            name: CONTEXT_FLUENT.to_string(),
            kind: FluentKind::State,
            value_type: ValueType::Enum(CONTEXT_ENUM.to_string()),
            params: Vec::new(),
            default: Literal::EnumValue(UserContext::Calm.name().to_string()),
            span: Span::default(),
        });
    }
    for spec in &ATTRIBUTES {
        out.push(real_nonfluent(spec.nonfluent.to_string(), 0.5));
        for ctx in profile.contexts.keys() {
            out.push(real_nonfluent(ctx_param_name(spec.nonfluent, *ctx), 0.5));
        }
    }
    out.push(real_nonfluent(PERSISTENCE_NONFLUENT.to_string(), 0.5));
    out
}

fn real_nonfluent(name: String, default: f64) -> FluentDecl {
    FluentDecl {
        name,
        kind: FluentKind::NonFluent,
        value_type: ValueType::Real,
        params: Vec::new(),
        default: Literal::Num(default),
        span: Span::default(),
    }
}

/// Drift CPF body for one attribute given the resampling parameter
/// expression `p_ref` (probability of the value `spec.values[param_value]`).
fn drift_expr(spec: &AttributeSpec, p_ref: Expr) -> Expr {
    let persist = Expr::fluent(PERSISTENCE_NONFLUENT);
    let flip = Expr::sub(Expr::num(1.0), persist.clone());
    // probability of resampling to values[0] / values[1]
    let (p0, p1) = if spec.param_value == 0 {
        (p_ref.clone(), Expr::sub(Expr::num(1.0), p_ref))
    } else {
        (Expr::sub(Expr::num(1.0), p_ref.clone()), p_ref)
    };
    let keep_branch = |stay_idx: usize| {
        let b0 = if stay_idx == 0 {
            Expr::add(persist.clone(), Expr::mul(flip.clone(), p0.clone()))
        } else {
            Expr::mul(flip.clone(), p0.clone())
        };
        let b1 = if stay_idx == 1 {
            Expr::add(persist.clone(), Expr::mul(flip.clone(), p1.clone()))
        } else {
            Expr::mul(flip.clone(), p1.clone())
        };
        Expr::Discrete {
            enum_name: spec.enum_name.to_string(),
            branches: vec![
                (spec.values[0].to_string(), b0),
                (spec.values[1].to_string(), b1),
            ],
        }
    };
    Expr::ite(
        Expr::eq(Expr::fluent(spec.fluent), Expr::enum_val(spec.values[0])),
        keep_branch(0),
        keep_branch(1),
    )
}

/// CPFs realizing the persistence-mixture drift for the four preference
/// fluents. With a context table present, each CPF dispatches on the user
/// context fluent and a propagation CPF for the context fluent itself is
/// appended.
pub fn emit_preference_cpfs(profile: &PreferenceProfile) -> Vec<Cpf> {
    let mut out = Vec::new();
    for spec in &ATTRIBUTES {
        let body = if profile.contexts.is_empty() {
            drift_expr(spec, Expr::fluent(spec.nonfluent))
        } else {
            let mut body = drift_expr(spec, Expr::fluent(spec.nonfluent));
            // chain in reverse so the first context ends up outermost
            for ctx in profile.contexts.keys().rev() {
                body = Expr::ite(
                    Expr::eq(Expr::fluent(CONTEXT_FLUENT), Expr::enum_val(ctx.name())),
                    drift_expr(spec, Expr::fluent(&ctx_param_name(spec.nonfluent, *ctx))),
                    body,
                );
            }
            body
        };
        out.push(Cpf {
            target: spec.fluent.to_string(),
            params: Vec::new(),
            body,
            span: Span::default(),
        });
    }
    if !profile.contexts.is_empty() {
        out.push(Cpf {
            target: CONTEXT_FLUENT.to_string(),
            params: Vec::new(),
            body: Expr::fluent(CONTEXT_FLUENT),
            span: Span::default(),
        });
    }
    out
}

/// Assignments for every preference parameter (base, persistence, and
/// per-context), suitable for an instance `non-fluents` block.
pub fn nonfluent_assignments(profile: &PreferenceProfile) -> Vec<Assignment> {
    let mut out = Vec::new();
    let mut push = |name: String, value: f64| {
        out.push(Assignment {
            fluent: name,
            args: Vec::new(),
            value: Literal::Num(value),
            span: Span::default(),
        });
    };
    for spec in &ATTRIBUTES {
        push(spec.nonfluent.to_string(), base_param_value(profile, spec));
    }
    push(PERSISTENCE_NONFLUENT.to_string(), profile.persistence);
    for (ctx, params) in &profile.contexts {
        for spec in &ATTRIBUTES {
            push(ctx_param_name(spec.nonfluent, *ctx), ctx_param_value(params, spec));
        }
    }
    out
}

/// The instance `non-fluents` block as text, assigning every parameter.
pub fn emit_nonfluents(profile: &PreferenceProfile) -> String {
    let mut out = String::from("non-fluents {\n");
    for a in nonfluent_assignments(profile) {
        let value = match a.value {
            Literal::Num(n) => n.to_string(),
            _ => unreachable!("preference parameters are numeric"),
        };
        out.push_str(&format!("    {} = {};\n", a.fluent, value));
    }
    out.push_str("};\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::attrs::*;
    use crate::lang::{parse_instance, DomainModel};

    fn profile_domain(profile: &PreferenceProfile) -> DomainModel {
        DomainModel {
            name: "prefs".into(),
            requirements: vec![],
            enums: preference_enum_decls(profile),
            object_types: vec![],
            fluents: preference_fluent_decls(profile),
            cpfs: emit_preference_cpfs(profile),
            reward: Expr::num(0.0),
        }
    }

    fn grounded(profile: &PreferenceProfile) -> crate::ground::GroundedModel {
        let domain = profile_domain(profile);
        let instance_text = format!(
            "instance i {{ domain = prefs; {} horizon = 2; }}",
            emit_nonfluents(profile)
        );
        let instance = parse_instance(&instance_text).unwrap();
        let checked = crate::lang::validate(&domain, &instance).unwrap();
        crate::ground::ground(&checked, &Default::default()).unwrap()
    }

    #[test]
    fn default_profile_is_valid() {
        PreferenceProfile::default().validate().unwrap();
    }

    #[test]
    fn out_of_range_parameter_is_rejected() {
        let mut p = PreferenceProfile::default();
        p.p_rich = 1.2;
        assert!(p.validate().is_err());
    }

    #[test]
    fn persistence_one_freezes_preferences() {
        let mut profile = PreferenceProfile::default();
        profile.persistence = 1.0;
        let m = grounded(&profile);
        for s in m.enumerate_states().unwrap() {
            let succ = m.transition_distribution(&s, 0).unwrap();
            assert_eq!(succ.len(), 1);
            assert_eq!(succ[0].0, s);
            assert_eq!(succ[0].1, 1.0);
        }
    }

    #[test]
    fn persistence_zero_resamples_from_the_parameter() {
        let mut profile = PreferenceProfile::default();
        profile.persistence = 0.0;
        profile.p_textual = 1.0;
        profile.p_rich = 1.0;
        profile.p_short = 1.0;
        profile.p_local = 1.0;
        let m = grounded(&profile);
        let e_r = m.fluent_id("E_r", &[]).unwrap();
        let e_d = m.fluent_id("E_d", &[]).unwrap();
        let mut s = m.init.clone();
        m.set_value(&mut s, e_r, "visual");
        m.set_value(&mut s, e_d, "long");
        let succ = m.transition_distribution(&s, 0).unwrap();
        assert_eq!(succ.len(), 1);
        assert_eq!(m.value_name(e_r, succ[0].0.get(e_r)), "textual");
        assert_eq!(m.value_name(e_d, succ[0].0.get(e_d)), "short");
    }

    #[test]
    fn drift_probability_matches_the_closed_form() {
        // persistence 0.9, p_textual 0.7, current value visual:
        // P(next = textual) = (1 - 0.9) * 0.7
        let mut profile = PreferenceProfile::default();
        profile.persistence = 0.9;
        profile.p_textual = 0.7;
        let m = grounded(&profile);
        let e_r = m.fluent_id("E_r", &[]).unwrap();
        let mut s = m.init.clone();
        m.set_value(&mut s, e_r, "visual");
        let succ = m.transition_distribution(&s, 0).unwrap();
        let p_textual: f64 = succ
            .iter()
            .filter(|(ns, _)| m.value_name(e_r, ns.get(e_r)) == "textual")
            .map(|(_, p)| p)
            .sum();
        let expect = (1.0 - 0.9) * 0.7;
        assert!((p_textual - expect).abs() < 1e-12, "{p_textual} vs {expect}");
    }

    #[test]
    fn drift_reproduces_keep_plus_resample_law_exactly() {
        // per-fluent marginal over a grid of parameters
        for (persistence, p) in [(0.9, 0.7), (0.5, 0.25), (0.0, 1.0), (1.0, 0.3), (0.8, 0.0)] {
            let mut profile = PreferenceProfile::default();
            profile.persistence = persistence;
            profile.p_textual = p;
            let m = grounded(&profile);
            let e_r = m.fluent_id("E_r", &[]).unwrap();
            for current in ["textual", "visual"] {
                let mut s = m.init.clone();
                m.set_value(&mut s, e_r, current);
                let succ = m.transition_distribution(&s, 0).unwrap();
                let got: f64 = succ
                    .iter()
                    .filter(|(ns, _)| m.value_name(e_r, ns.get(e_r)) == "textual")
                    .map(|(_, q)| q)
                    .sum();
                let keep = if current == "textual" { persistence } else { 0.0 };
                let want = keep + (1.0 - persistence) * p;
                assert!(
                    (got - want).abs() < 1e-12,
                    "persistence={persistence} p={p} current={current}: {got} vs {want}"
                );
            }
        }
    }

    #[test]
    fn context_table_emits_conditional_cpfs() {
        let profile = PreferenceProfile::default().with_default_contexts();
        let m = grounded(&profile);
        let e_r = m.fluent_id("E_r", &[]).unwrap();
        let ctx = m.fluent_id("user_context", &[]).unwrap();
        // confused moves p_textual halfway to 1: 0.85
        let mut s = m.init.clone();
        m.set_value(&mut s, e_r, "visual");
        m.set_value(&mut s, ctx, "confused");
        let succ = m.transition_distribution(&s, 0).unwrap();
        let got: f64 = succ
            .iter()
            .filter(|(ns, _)| m.value_name(e_r, ns.get(e_r)) == "textual")
            .map(|(_, q)| q)
            .sum();
        let want = (1.0 - 0.9) * 0.85;
        assert!((got - want).abs() < 1e-12, "{got} vs {want}");
        // context itself never drifts
        assert!(succ.iter().all(|(ns, _)| ns.get(ctx) == s.get(ctx)));
    }

    #[test]
    fn emitted_nonfluents_parse_back_to_the_same_values() {
        let profile = PreferenceProfile {
            p_textual: 0.7,
            p_rich: 0.2,
            p_short: 0.6,
            p_local: 0.9,
            persistence: 0.85,
            contexts: BTreeMap::new(),
        }
        .with_default_contexts();
        let block = emit_nonfluents(&profile);
        let text = format!("instance i {{ domain = prefs; {block} horizon = 1; }}");
        let inst = parse_instance(&text).unwrap();
        let lookup = |name: &str| -> f64 {
            match inst
                .non_fluents
                .iter()
                .find(|a| a.fluent == name)
                .map(|a| &a.value)
            {
                Some(Literal::Num(n)) => *n,
                other => panic!("missing {name}: {other:?}"),
            }
        };
        assert_eq!(lookup("p_r_textual"), 0.7);
        assert_eq!(lookup("p_dl_rich"), 0.2);
        assert_eq!(lookup("p_d_short"), 0.6);
        assert_eq!(lookup("p_s_local"), 0.9);
        assert_eq!(lookup("persistence"), 0.85);
        assert_eq!(lookup("p_r_textual_confused"), 0.85);
        assert_eq!(lookup("p_d_short_stressed"), 0.8);
        // one parameter per attribute: complements are implied, never stored
        assert!(inst.non_fluents.iter().all(|a| !a.fluent.contains("visual")));
    }

    #[test]
    fn expected_match_reward_examples() {
        let full = PreferenceProfile {
            p_textual: 1.0,
            p_rich: 1.0,
            p_short: 1.0,
            p_local: 1.0,
            persistence: 1.0,
            contexts: BTreeMap::new(),
        };
        let matching = ExplanationAttributes::new(
            Representation::Textual,
            DetailLevel::Rich,
            Duration::Short,
            Scope::Local,
        );
        assert_eq!(expected_match_reward(&full, &matching, 1.0), 4.0);

        let even = PreferenceProfile {
            p_textual: 0.5,
            p_rich: 0.5,
            p_short: 0.5,
            p_local: 0.5,
            persistence: 0.9,
            contexts: BTreeMap::new(),
        };
        for attrs in ExplanationAttributes::all() {
            assert_eq!(expected_match_reward(&even, &attrs, 1.0), 2.0);
        }

        // hand sum: 0.7 + (1-0.2) + (1-0.6) + (1-0.9) = 2.0
        let profile = PreferenceProfile {
            p_textual: 0.7,
            p_rich: 0.2,
            p_short: 0.6,
            p_local: 0.9,
            persistence: 0.9,
            contexts: BTreeMap::new(),
        };
        let attrs = ExplanationAttributes::new(
            Representation::Textual,
            DetailLevel::Poor,
            Duration::Long,
            Scope::Global,
        );
        let got = expected_match_reward(&profile, &attrs, 1.0);
        assert!((got - 2.0).abs() < 1e-12);
        // brute force over the 16 joint preference states
        let mut brute = 0.0;
        for state in ExplanationAttributes::all() {
            let ps = profile.match_probability(&state);
            let p_state: f64 = ps.iter().product();
            let matches = (state.representation == attrs.representation) as u32
                + (state.detail == attrs.detail) as u32
                + (state.duration == attrs.duration) as u32
                + (state.scope == attrs.scope) as u32;
            brute += p_state * matches as f64;
        }
        assert!((got - brute).abs() < 1e-12, "{got} vs {brute}");
    }

    #[test]
    fn expected_match_reward_is_monotone_in_the_chosen_probability() {
        let attrs = ExplanationAttributes::new(
            Representation::Textual,
            DetailLevel::Rich,
            Duration::Short,
            Scope::Local,
        );
        let mut last = f64::NEG_INFINITY;
        for step in 0..=20 {
            let p = step as f64 / 20.0;
            let profile = PreferenceProfile {
                p_textual: p,
                ..Default::default()
            };
            let r = expected_match_reward(&profile, &attrs, 1.0);
            assert!(r >= last);
            last = r;
        }
    }

    #[test]
    fn argmax_over_tuples_is_the_per_attribute_majority() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(42);
        for _ in 0..200 {
            let profile = PreferenceProfile {
                p_textual: rng.random(),
                p_rich: rng.random(),
                p_short: rng.random(),
                p_local: rng.random(),
                persistence: 0.9,
                contexts: BTreeMap::new(),
            };
            let best = ExplanationAttributes::all()
                .max_by(|a, b| {
                    expected_match_reward(&profile, a, 1.0)
                        .partial_cmp(&expected_match_reward(&profile, b, 1.0))
                        .unwrap()
                })
                .unwrap();
            assert_eq!(
                expected_match_reward(&profile, &best, 1.0),
                expected_match_reward(&profile, &profile.modal_attributes(), 1.0)
            );
        }
    }
}
