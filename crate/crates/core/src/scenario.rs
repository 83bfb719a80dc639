//! Generator for the librarian delivery scenario.
//!
//! A robot librarian starts at `start_location`, fetches a book at
//! `book_location`, and hands it over at `visitor_location`. A step counter
//! drives a `late` flag once a configurable deadline passes; while late (and
//! not yet explained) an `explain` action earns a per-attribute bonus for
//! matching the visitor's current preference fluents. The emitted domain and
//! instance are plain XRDDL text and always re-validate.
//!
//! Reward shape (constants live in the instance, so tuning probabilities or
//! rewards never touches the domain file): `step_cost` every step,
//! `hand_over` for an effective hand-over, `attribute_bonus` per matched
//! explanation attribute while the explain gate (`late ^ ~explained`) is
//! open.
//!
//! Action templates are declared in the order `move`, `pick_up`, `explain`,
//! `hand_over`. The planner breaks exact ties by the lowest ground-action
//! index, so this order serializes an explanation before the hand-over it
//! accompanies.

use crate::attrs::ExplanationAttributes;
use crate::lang::{
    Arg, Assignment, Cpf, DomainModel, EnumDecl, Expr, FluentDecl, FluentKind, InstanceModel,
    Literal, Span, ValueType,
};
use crate::preference::{
    emit_preference_cpfs, nonfluent_assignments, preference_enum_decls, preference_fluent_decls,
    PreferenceProfile, ProfileError, UserContext, ATTRIBUTES, CONTEXT_FLUENT,
};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, VecDeque};
use thiserror::Error;

pub const START_LOCATION: &str = "start_location";
pub const BOOK_LOCATION: &str = "book_location";
pub const VISITOR_LOCATION: &str = "visitor_location";

pub const DOMAIN_NAME: &str = "librarian";
pub const INSTANCE_NAME: &str = "librarian_problem";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RewardConstants {
    /// Reward for an effective hand-over.
    pub hand_over: f64,
    /// Reward added every step (negative = cost).
    pub step_cost: f64,
    /// Bonus per explanation attribute matching the current preference.
    pub attribute_bonus: f64,
}

impl Default for RewardConstants {
    fn default() -> Self {
        RewardConstants {
            hand_over: 10.0,
            step_cost: -0.1,
            attribute_bonus: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LibrarianConfig {
    /// Location names; must include the three canonical locations.
    pub locations: Vec<String>,
    /// Step count after which `late` holds (>= 1).
    pub lateness_deadline: u32,
    pub horizon: u32,
    pub discount: f64,
    pub profile: PreferenceProfile,
    /// Initial preference fluent values; `None` uses the profile's
    /// per-attribute most-likely values.
    pub init_preferences: Option<ExplanationAttributes>,
    /// Initial user context; requires a profile context table.
    pub init_context: Option<UserContext>,
    pub rewards: RewardConstants,
    /// Directed edges the robot may traverse; `None` = fully connected.
    pub adjacency: Option<Vec<(String, String)>>,
}

impl Default for LibrarianConfig {
    fn default() -> Self {
        LibrarianConfig {
            locations: vec![
                START_LOCATION.to_string(),
                BOOK_LOCATION.to_string(),
                VISITOR_LOCATION.to_string(),
            ],
            lateness_deadline: 2,
            horizon: 5,
            discount: 1.0,
            profile: PreferenceProfile::default(),
            init_preferences: None,
            init_context: None,
            rewards: RewardConstants::default(),
            adjacency: None,
        }
    }
}

impl LibrarianConfig {
    /// The canonical walkthrough: frozen preferences initialized to
    /// (visual, poor, long, global) and a deadline that forces lateness
    /// before the hand-over.
    pub fn walkthrough() -> Self {
        use crate::attrs::*;
        let mut cfg = LibrarianConfig::default();
        cfg.profile.persistence = 1.0;
        cfg.init_preferences = Some(ExplanationAttributes::new(
            Representation::Visual,
            DetailLevel::Poor,
            Duration::Long,
            Scope::Global,
        ));
        cfg
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("locations must include `{0}`")]
    MissingLocation(&'static str),
    #[error("need at least 3 locations, got {0}")]
    TooFewLocations(usize),
    #[error("`{0}` is not a usable location name")]
    BadLocationName(String),
    #[error("duplicate location `{0}`")]
    DuplicateLocation(String),
    #[error("lateness deadline must be at least 1")]
    DeadlineZero,
    #[error("horizon {horizon} is below the minimal plan length {min_plan}")]
    HorizonTooShort { horizon: u32, min_plan: u32 },
    #[error("adjacency edge references unknown location `{0}`")]
    UnknownEdgeLocation(String),
    #[error("no path from `{from}` to `{to}` in the adjacency graph")]
    Unreachable { from: String, to: String },
    #[error("init_context given but the profile has no context table")]
    ContextWithoutTable,
    #[error("discount {0} is outside (0, 1]")]
    BadDiscount(f64),
    #[error(transparent)]
    Profile(#[from] ProfileError),
}

/// Builds the domain and instance as text. The pair always passes
/// validation.
pub fn build_librarian(config: &LibrarianConfig) -> Result<(String, String), ConfigError> {
    let (domain, instance) = build_librarian_models(config)?;
    Ok((domain.to_text(), instance.to_text()))
}

/// Builds the domain and instance as models (the text form is their
/// pretty-print).
pub fn build_librarian_models(
    config: &LibrarianConfig,
) -> Result<(DomainModel, InstanceModel), ConfigError> {
    check_config(config)?;

    let span = Span::default();
    let locations = &config.locations;
    let horizon = config.horizon;
    let step_values: Vec<String> = (0..=horizon).map(|i| format!("t{i}")).collect();

    // ---- types ----
    let mut enums = vec![
        EnumDecl {
            name: "location_t".into(),
            values: locations.clone(),
            span,
        },
        EnumDecl {
            name: "step_t".into(),
            values: step_values.clone(),
            span,
        },
    ];
    enums.extend(preference_enum_decls(&config.profile));

    // ---- fluents ----
    let pref_decls = preference_fluent_decls(&config.profile);
    let mut fluents = vec![
        state_fluent("robot_loc", ValueType::Enum("location_t".into()), Literal::EnumValue(START_LOCATION.into())),
        state_fluent("holding_book", ValueType::Bool, Literal::Bool(false)),
        state_fluent("delivered", ValueType::Bool, Literal::Bool(false)),
        state_fluent("late", ValueType::Bool, Literal::Bool(false)),
        state_fluent("explained", ValueType::Bool, Literal::Bool(false)),
        state_fluent("step", ValueType::Enum("step_t".into()), Literal::EnumValue("t0".into())),
    ];
    fluents.extend(pref_decls.iter().filter(|f| f.kind == FluentKind::State).cloned());
    // action order fixes tie-breaking: move < pick_up < explain < hand_over
    fluents.push(action_fluent("move", vec!["location_t".into(), "location_t".into()]));
    fluents.push(action_fluent("pick_up", vec![]));
    fluents.push(action_fluent(
        "explain",
        ATTRIBUTES.iter().map(|a| a.enum_name.to_string()).collect(),
    ));
    fluents.push(action_fluent("hand_over", vec![]));
    fluents.extend(pref_decls.iter().filter(|f| f.kind == FluentKind::NonFluent).cloned());
    for name in ["r_hand_over", "r_step_cost", "r_attr_bonus"] {
        fluents.push(FluentDecl {
            name: name.into(),
            kind: FluentKind::NonFluent,
            value_type: ValueType::Real,
            params: Vec::new(),
            default: Literal::Num(0.0),
            span,
        });
    }

    // ---- CPFs ----
    let at = |loc: &str| Expr::eq(Expr::fluent("robot_loc"), Expr::enum_val(loc));
    let effective_hand_over = Expr::and(
        Expr::and(Expr::fluent("hand_over"), at(VISITOR_LOCATION)),
        Expr::fluent("holding_book"),
    );
    let effective_pick = Expr::and(Expr::fluent("pick_up"), at(BOOK_LOCATION));

    let mut move_body = Expr::fluent("robot_loc");
    for (from, to) in move_edges(config).into_iter().rev() {
        let cond = Expr::and(
            Expr::fluent_args("move", vec![Arg::Value(from.clone()), Arg::Value(to.clone())]),
            at(&from),
        );
        move_body = Expr::ite(cond, Expr::enum_val(&to), move_body);
    }

    let mut step_body = Expr::enum_val(&step_values[horizon as usize]);
    for i in (0..horizon as usize).rev() {
        step_body = Expr::ite(
            Expr::eq(Expr::fluent("step"), Expr::enum_val(&step_values[i])),
            Expr::enum_val(&step_values[i + 1]),
            step_body,
        );
    }

    // late at epoch t iff t >= deadline: from `step`, the next epoch is
    // late iff step >= t(deadline-1); an unreachable threshold never fires
    let late_body = {
        let threshold = config.lateness_deadline - 1;
        if threshold <= horizon {
            Expr::or(
                Expr::fluent("late"),
                Expr::not(Expr::Cmp {
                    op: crate::lang::CmpOp::Lt,
                    lhs: Box::new(Expr::fluent("step")),
                    rhs: Box::new(Expr::enum_val(&step_values[threshold as usize])),
                }),
            )
        } else {
            Expr::fluent("late")
        }
    };

    let any_explain = Expr::any(
        ExplanationAttributes::all()
            .map(|attrs| explain_ref(&attrs))
            .collect(),
    );

    let mut cpfs = vec![
        Cpf { target: "robot_loc".into(), params: vec![], body: move_body, span },
        Cpf {
            target: "holding_book".into(),
            params: vec![],
            body: Expr::ite(
                effective_hand_over.clone(),
                Expr::bool(false),
                Expr::or(Expr::fluent("holding_book"), effective_pick),
            ),
            span,
        },
        Cpf {
            target: "delivered".into(),
            params: vec![],
            body: Expr::or(Expr::fluent("delivered"), effective_hand_over.clone()),
            span,
        },
        Cpf { target: "late".into(), params: vec![], body: late_body, span },
        Cpf {
            target: "explained".into(),
            params: vec![],
            body: Expr::or(Expr::fluent("explained"), any_explain),
            span,
        },
        Cpf { target: "step".into(), params: vec![], body: step_body, span },
    ];
    cpfs.extend(emit_preference_cpfs(&config.profile));

    // ---- reward ----
    let mut reward = Expr::fluent("r_step_cost");
    reward = Expr::add(
        reward,
        Expr::ite(effective_hand_over, Expr::fluent("r_hand_over"), Expr::num(0.0)),
    );
    let gate = Expr::and(Expr::fluent("late"), Expr::not(Expr::fluent("explained")));
    for (idx, spec) in ATTRIBUTES.iter().enumerate() {
        for value in spec.values {
            let chosen = Expr::any(
                ExplanationAttributes::all()
                    .filter(|attrs| attrs.names()[idx] == value)
                    .map(|attrs| explain_ref(&attrs))
                    .collect(),
            );
            let cond = Expr::and(
                Expr::and(gate.clone(), Expr::eq(Expr::fluent(spec.fluent), Expr::enum_val(value))),
                chosen,
            );
            reward = Expr::add(
                reward,
                Expr::ite(cond, Expr::fluent("r_attr_bonus"), Expr::num(0.0)),
            );
        }
    }

    let domain = DomainModel {
        name: DOMAIN_NAME.into(),
        requirements: vec!["enum_valued".into(), "probabilistic".into()],
        enums,
        object_types: vec![],
        fluents,
        cpfs,
        reward,
    };

    // ---- instance ----
    let mut non_fluents = nonfluent_assignments(&config.profile);
    for (name, value) in [
        ("r_hand_over", config.rewards.hand_over),
        ("r_step_cost", config.rewards.step_cost),
        ("r_attr_bonus", config.rewards.attribute_bonus),
    ] {
        non_fluents.push(Assignment {
            fluent: name.into(),
            args: vec![],
            value: Literal::Num(value),
            span,
        });
    }

    let init_prefs = config
        .init_preferences
        .unwrap_or_else(|| config.profile.modal_attributes());
    let mut init_state = vec![Assignment {
        fluent: "robot_loc".into(),
        args: vec![],
        value: Literal::EnumValue(START_LOCATION.into()),
        span,
    }];
    for (spec, value) in ATTRIBUTES.iter().zip(init_prefs.names()) {
        init_state.push(Assignment {
            fluent: spec.fluent.into(),
            args: vec![],
            value: Literal::EnumValue(value.into()),
            span,
        });
    }
    if let Some(ctx) = config.init_context {
        init_state.push(Assignment {
            fluent: CONTEXT_FLUENT.into(),
            args: vec![],
            value: Literal::EnumValue(ctx.name().into()),
            span,
        });
    }

    let instance = InstanceModel {
        name: INSTANCE_NAME.into(),
        domain_name: DOMAIN_NAME.into(),
        objects: vec![],
        non_fluents,
        init_state,
        horizon,
        discount: config.discount,
    };

    Ok((domain, instance))
}

fn state_fluent(name: &str, value_type: ValueType, default: Literal) -> FluentDecl {
    FluentDecl {
        name: name.into(),
        kind: FluentKind::State,
        value_type,
        params: Vec::new(),
        default,
        span: Span::default(),
    }
}

fn action_fluent(name: &str, params: Vec<String>) -> FluentDecl {
    FluentDecl {
        name: name.into(),
        kind: FluentKind::Action,
        value_type: ValueType::Bool,
        params,
        default: Literal::Bool(false),
        span: Span::default(),
    }
}

fn explain_ref(attrs: &ExplanationAttributes) -> Expr {
    Expr::fluent_args(
        "explain",
        attrs.names().iter().map(|n| Arg::Value(n.to_string())).collect(),
    )
}

/// Traversable directed edges (self-loops excluded).
fn move_edges(config: &LibrarianConfig) -> Vec<(String, String)> {
    match &config.adjacency {
        Some(edges) => edges.iter().filter(|(f, t)| f != t).cloned().collect(),
        None => {
            let mut out = Vec::new();
            for f in &config.locations {
                for t in &config.locations {
                    if f != t {
                        out.push((f.clone(), t.clone()));
                    }
                }
            }
            out
        }
    }
}

fn check_config(config: &LibrarianConfig) -> Result<(), ConfigError> {
    config.profile.validate()?;
    if config.locations.len() < 3 {
        return Err(ConfigError::TooFewLocations(config.locations.len()));
    }
    for canonical in [START_LOCATION, BOOK_LOCATION, VISITOR_LOCATION] {
        if !config.locations.iter().any(|l| l == canonical) {
            return Err(ConfigError::MissingLocation(canonical));
        }
    }
    let mut seen = BTreeSet::new();
    for l in &config.locations {
        if !is_usable_name(l, config.horizon) {
            return Err(ConfigError::BadLocationName(l.clone()));
        }
        if !seen.insert(l) {
            return Err(ConfigError::DuplicateLocation(l.clone()));
        }
    }
    if config.lateness_deadline == 0 {
        return Err(ConfigError::DeadlineZero);
    }
    if !(config.discount > 0.0 && config.discount <= 1.0) {
        return Err(ConfigError::BadDiscount(config.discount));
    }
    if let Some(edges) = &config.adjacency {
        for (f, t) in edges {
            for loc in [f, t] {
                if !config.locations.contains(loc) {
                    return Err(ConfigError::UnknownEdgeLocation(loc.clone()));
                }
            }
        }
    }
    if config.init_context.is_some() && config.profile.contexts.is_empty() {
        return Err(ConfigError::ContextWithoutTable);
    }

    // minimal plan: shortest start->book and book->visitor walks plus the
    // pick-up and hand-over steps
    let edges = move_edges(config);
    let sp = |from: &str, to: &str| -> Result<u32, ConfigError> {
        shortest_path(&config.locations, &edges, from, to).ok_or_else(|| ConfigError::Unreachable {
            from: from.to_string(),
            to: to.to_string(),
        })
    };
    let min_plan = sp(START_LOCATION, BOOK_LOCATION)? + sp(BOOK_LOCATION, VISITOR_LOCATION)? + 2;
    if config.horizon < min_plan {
        return Err(ConfigError::HorizonTooShort {
            horizon: config.horizon,
            min_plan,
        });
    }
    Ok(())
}

fn is_usable_name(name: &str, horizon: u32) -> bool {
    let mut chars = name.chars();
    let head_ok = chars
        .next()
        .map(|c| c.is_ascii_alphabetic() || c == '_')
        .unwrap_or(false);
    if !head_ok || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return false;
    }
    // names already taken by generated enums and keywords
    let mut reserved: BTreeSet<String> = ATTRIBUTES
        .iter()
        .flat_map(|a| a.values.iter().map(|v| v.to_string()))
        .collect();
    reserved.extend(UserContext::ALL.iter().map(|c| c.name().to_string()));
    reserved.extend((0..=horizon).map(|i| format!("t{i}")));
    for kw in [
        "domain", "instance", "requirements", "types", "pvariables", "cpfs", "reward", "cstate",
        "objects", "horizon", "discount", "object", "bool", "real", "default", "if", "then",
        "else", "true", "false", "Bernoulli", "Discrete", "KronDelta",
    ] {
        reserved.insert(kw.to_string());
    }
    !reserved.contains(name)
}

fn shortest_path(
    locations: &[String],
    edges: &[(String, String)],
    from: &str,
    to: &str,
) -> Option<u32> {
    if from == to {
        return Some(0);
    }
    let mut dist: std::collections::BTreeMap<&str, u32> = Default::default();
    dist.insert(from, 0);
    let mut queue = VecDeque::from([from]);
    while let Some(cur) = queue.pop_front() {
        let d = dist[cur];
        for (f, t) in edges {
            if f == cur && !dist.contains_key(t.as_str()) {
                if t == to {
                    return Some(d + 1);
                }
                dist.insert(t, d + 1);
                queue.push_back(t);
            }
        }
    }
    let _ = locations;
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::{ground, GroundingLimits};
    use crate::lang::{parse_domain, parse_instance, validate};

    fn checked(config: &LibrarianConfig) -> crate::lang::CheckedModel {
        let (dt, it) = build_librarian(config).unwrap();
        let d = parse_domain(&dt).unwrap();
        let i = parse_instance(&it).unwrap();
        validate(&d, &i).unwrap()
    }

    #[test]
    fn emitted_text_parses_back_to_the_construction_ast() {
        for config in [
            LibrarianConfig::default(),
            LibrarianConfig::walkthrough(),
            LibrarianConfig {
                profile: PreferenceProfile::default().with_default_contexts(),
                init_context: Some(UserContext::Confused),
                ..Default::default()
            },
        ] {
            let (dm, im) = build_librarian_models(&config).unwrap();
            let (dt, it) = build_librarian(&config).unwrap();
            assert_eq!(parse_domain(&dt).unwrap(), dm);
            assert_eq!(parse_instance(&it).unwrap(), im);
        }
    }

    #[test]
    fn emitted_pair_validates_and_grounds() {
        let m = ground(&checked(&LibrarianConfig::default()), &GroundingLimits::default()).unwrap();
        // noop + 9 moves + pick_up + 16 explains + hand_over
        assert_eq!(m.actions.len(), 28);
        // fluent partition: exactly the four preference fluents are tagged
        let prefs: Vec<&str> = m.preference_fluents().map(|f| f.name.as_str()).collect();
        assert_eq!(prefs, vec!["E_r", "E_dl", "E_d", "E_s"]);
    }

    #[test]
    fn ground_action_count_matches_template_expansion() {
        for config in [
            LibrarianConfig::default(),
            LibrarianConfig {
                locations: vec![
                    START_LOCATION.into(),
                    BOOK_LOCATION.into(),
                    VISITOR_LOCATION.into(),
                    "hallway".into(),
                    "desk".into(),
                ],
                horizon: 7,
                ..Default::default()
            },
        ] {
            let ck = checked(&config);
            let m = ground(&ck, &GroundingLimits::default()).unwrap();
            // independent count: product of parameter universe sizes per
            // action template, plus the no-op
            let mut expect = 1usize;
            for f in &ck.domain().fluents {
                if f.kind == FluentKind::Action {
                    expect += f
                        .params
                        .iter()
                        .map(|p| ck.universe(p).len())
                        .product::<usize>();
                }
            }
            let n = config.locations.len();
            assert_eq!(expect, 1 + n * n + 1 + 16 + 1);
            assert_eq!(m.actions.len(), expect);
        }
    }

    #[test]
    fn late_flag_follows_the_deadline() {
        let config = LibrarianConfig::default(); // deadline 2
        let m = ground(&checked(&config), &GroundingLimits::default()).unwrap();
        let late = m.fluent_id("late", &[]).unwrap();
        let mut s = m.init.clone();
        // epoch 0 -> not late; late turns on entering epoch 2
        for (epoch, expect) in [(0u32, 0u16), (1, 0), (2, 1), (3, 1), (4, 1)] {
            assert_eq!(s.get(late), expect, "epoch {epoch}");
            s = m.transition_distribution(&s, 0).unwrap()[0].0.clone();
        }
    }

    #[test]
    fn deadline_beyond_horizon_never_turns_late() {
        let config = LibrarianConfig {
            lateness_deadline: 99,
            ..Default::default()
        };
        let m = ground(&checked(&config), &GroundingLimits::default()).unwrap();
        let late = m.fluent_id("late", &[]).unwrap();
        let mut s = m.init.clone();
        for _ in 0..=config.horizon {
            assert_eq!(s.get(late), 0);
            s = m.transition_distribution(&s, 0).unwrap()[0].0.clone();
        }
    }

    #[test]
    fn reward_hand_evaluations() {
        let config = LibrarianConfig::walkthrough();
        let m = ground(&checked(&config), &GroundingLimits::default()).unwrap();
        let late = m.fluent_id("late", &[]).unwrap();
        let e_r = m.fluent_id("E_r", &[]).unwrap();
        let loc = m.fluent_id("robot_loc", &[]).unwrap();
        let hold = m.fluent_id("holding_book", &[]).unwrap();

        // late, E_r = textual, other preferences untouched (visual != textual
        // is the only matching slot for this action): base + one bonus
        let mut s = m.init.clone();
        s.set(late, 1);
        m.set_value(&mut s, e_r, "textual");
        let partial = m
            .find_action("explain", &["textual", "rich", "short", "local"])
            .unwrap();
        let got = m.reward_of(&s, partial).unwrap();
        assert!((got - (-0.1 + 1.0)).abs() < 1e-12, "{got}");

        // fully matched explain: base + four bonuses
        let full = m
            .find_action("explain", &["visual", "poor", "long", "global"])
            .unwrap();
        let mut s2 = m.init.clone();
        s2.set(late, 1);
        let got = m.reward_of(&s2, full).unwrap();
        assert!((got - (-0.1 + 4.0)).abs() < 1e-12, "{got}");

        // not late: the gate is closed, no bonus
        let got = m.reward_of(&m.init, full).unwrap();
        assert!((got - -0.1).abs() < 1e-12, "{got}");

        // effective hand-over
        let mut s3 = m.init.clone();
        m.set_value(&mut s3, loc, VISITOR_LOCATION);
        s3.set(hold, 1);
        let hand = m.find_action("hand_over", &[]).unwrap();
        let got = m.reward_of(&s3, hand).unwrap();
        assert!((got - (-0.1 + 10.0)).abs() < 1e-12, "{got}");
        // hand-over elsewhere or empty-handed earns nothing
        let got = m.reward_of(&m.init, hand).unwrap();
        assert!((got - -0.1).abs() < 1e-12, "{got}");
    }

    #[test]
    fn nonfluent_only_overrides_keep_the_domain_byte_identical() {
        let base = LibrarianConfig::default();
        let mut tweaked = LibrarianConfig::default();
        tweaked.profile.p_textual = 0.11;
        tweaked.profile.persistence = 0.5;
        tweaked.rewards.hand_over = 25.0;
        tweaked.rewards.attribute_bonus = 2.5;
        let (d0, i0) = build_librarian(&base).unwrap();
        let (d1, i1) = build_librarian(&tweaked).unwrap();
        assert_eq!(d0, d1);
        assert_ne!(i0, i1);
    }

    #[test]
    fn config_errors() {
        let err = build_librarian(&LibrarianConfig {
            horizon: 3,
            ..Default::default()
        })
        .unwrap_err();
        assert!(matches!(err, ConfigError::HorizonTooShort { min_plan: 4, .. }));

        let err = build_librarian(&LibrarianConfig {
            locations: vec!["start_location".into(), "book_location".into()],
            ..Default::default()
        })
        .unwrap_err();
        assert!(matches!(err, ConfigError::TooFewLocations(2)));

        let err = build_librarian(&LibrarianConfig {
            locations: vec![
                "start_location".into(),
                "book_location".into(),
                "visual".into(),
            ],
            ..Default::default()
        })
        .unwrap_err();
        assert!(matches!(err, ConfigError::MissingLocation(_)));

        let err = build_librarian(&LibrarianConfig {
            locations: vec![
                "start_location".into(),
                "book_location".into(),
                "visitor_location".into(),
                "t0".into(),
            ],
            ..Default::default()
        })
        .unwrap_err();
        assert!(matches!(err, ConfigError::BadLocationName(_)));

        let err = build_librarian(&LibrarianConfig {
            adjacency: Some(vec![
                ("start_location".into(), "book_location".into()),
                ("visitor_location".into(), "book_location".into()),
            ]),
            ..Default::default()
        })
        .unwrap_err();
        assert!(matches!(err, ConfigError::Unreachable { .. }));

        let err = build_librarian(&LibrarianConfig {
            init_context: Some(UserContext::Calm),
            ..Default::default()
        })
        .unwrap_err();
        assert!(matches!(err, ConfigError::ContextWithoutTable));
    }

    #[test]
    fn adjacency_constrains_movement_and_min_plan() {
        // a line: start -> book -> visitor, both directions
        let config = LibrarianConfig {
            adjacency: Some(vec![
                ("start_location".into(), "book_location".into()),
                ("book_location".into(), "start_location".into()),
                ("book_location".into(), "visitor_location".into()),
                ("visitor_location".into(), "book_location".into()),
            ]),
            ..Default::default()
        };
        let m = ground(&checked(&config), &GroundingLimits::default()).unwrap();
        let loc = m.fluent_id("robot_loc", &[]).unwrap();
        // direct start -> visitor move is declared but ineffective
        let jump = m
            .find_action("move", &["start_location", "visitor_location"])
            .unwrap();
        let succ = m.transition_distribution(&m.init, jump).unwrap();
        assert!(succ.iter().all(|(ns, _)| ns.get(loc) == m.init.get(loc)));
        let legal = m
            .find_action("move", &["start_location", "book_location"])
            .unwrap();
        let succ = m.transition_distribution(&m.init, legal).unwrap();
        assert_eq!(m.value_name(loc, succ[0].0.get(loc)), "book_location");
    }
}
