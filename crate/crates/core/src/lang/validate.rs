//! Cross-checking of a domain/instance pair.
//!
//! [`validate`] returns a [`CheckedModel`] only when every rule below holds;
//! otherwise it returns the full list of diagnostics:
//!
//! - every referenced type, fluent, enum value, and object is declared, with
//!   matching arity and types,
//! - action fluents are boolean; `real` is reserved for non-fluents,
//! - every state fluent has exactly one CPF whose body type matches,
//! - stochastic nodes sit only at a CPF top or under `if` arms reached from
//!   it, and the reward is fully deterministic,
//! - every constant-resolvable `Discrete` branch set sums to 1 within 1e-9,
//!   and every constant-resolvable `Bernoulli` parameter lies in [0, 1],
//! - instance assignments are well-typed; the horizon is a non-negative
//!   integer and the discount lies in (0, 1].
//!
//! Non-fluent references fold to their instance-assigned (or default) values
//! during the probability checks, so `Bernoulli(p_err)` is checked statically
//! whenever `p_err` is constant for the instance at hand.

use super::diag::{codes, Diagnostic};
use super::*;
use std::collections::{BTreeMap, BTreeSet};

/// Tolerance for the Discrete sum-to-one rule and the [0, 1] bounds on
/// constant probabilities.
pub const PROB_TOLERANCE: f64 = 1e-9;

/// A validated domain/instance pair plus the symbol tables the grounder
/// needs. Construction goes through [`validate`] only.
#[derive(Debug, Clone)]
pub struct CheckedModel {
    domain: DomainModel,
    instance: InstanceModel,
    enums: BTreeMap<String, Vec<String>>,
    /// enum value -> (enum name, index within the enum)
    value_owner: BTreeMap<String, (String, u16)>,
    /// object type -> objects (from the instance)
    objects: BTreeMap<String, Vec<String>>,
    /// ground non-fluent (name, args) -> resolved value
    nonfluent_values: BTreeMap<(String, Vec<String>), Literal>,
    /// ground state fluent (name, args) -> initial value
    init_values: BTreeMap<(String, Vec<String>), Literal>,
}

impl CheckedModel {
    pub fn domain(&self) -> &DomainModel {
        &self.domain
    }

    pub fn instance(&self) -> &InstanceModel {
        &self.instance
    }

    pub fn horizon(&self) -> u32 {
        self.instance.horizon
    }

    pub fn discount(&self) -> f64 {
        self.instance.discount
    }

    pub fn enum_values(&self, name: &str) -> &[String] {
        &self.enums[name]
    }

    /// Looks up the owning enum and index of a value name.
    pub fn enum_of_value(&self, value: &str) -> Option<(&str, u16)> {
        self.value_owner.get(value).map(|(e, i)| (e.as_str(), *i))
    }

    /// Member names for a parameter type: enum values or instance objects.
    pub fn universe(&self, type_name: &str) -> &[String] {
        if let Some(vals) = self.enums.get(type_name) {
            vals
        } else {
            self.objects
                .get(type_name)
                .map(|v| v.as_slice())
                .unwrap_or(&[])
        }
    }

    pub fn fluent(&self, name: &str) -> &FluentDecl {
        self.domain.fluent(name).expect("checked fluent")
    }

    pub fn cpf(&self, target: &str) -> &Cpf {
        self.domain
            .cpfs
            .iter()
            .find(|c| c.target == target)
            .expect("checked cpf")
    }

    pub fn nonfluent_value(&self, name: &str, args: &[String]) -> &Literal {
        &self.nonfluent_values[&(name.to_string(), args.to_vec())]
    }

    pub fn init_value(&self, name: &str, args: &[String]) -> &Literal {
        &self.init_values[&(name.to_string(), args.to_vec())]
    }

    pub(crate) fn nonfluent_table(&self) -> &BTreeMap<(String, Vec<String>), Literal> {
        &self.nonfluent_values
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Ty {
    Bool,
    Real,
    Enum(String),
    Obj(String),
}

impl std::fmt::Display for Ty {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Ty::Bool => write!(f, "bool"),
            Ty::Real => write!(f, "real"),
            Ty::Enum(n) | Ty::Obj(n) => write!(f, "{n}"),
        }
    }
}

struct Checker<'a> {
    domain: &'a DomainModel,
    instance: &'a InstanceModel,
    enums: BTreeMap<String, Vec<String>>,
    value_owner: BTreeMap<String, (String, u16)>,
    objects: BTreeMap<String, Vec<String>>,
    nonfluent_values: BTreeMap<(String, Vec<String>), Literal>,
    diags: Vec<Diagnostic>,
}

/// Validates `domain` against `instance`, producing the model the grounder
/// consumes or every diagnostic found.
pub fn validate(
    domain: &DomainModel,
    instance: &InstanceModel,
) -> Result<CheckedModel, Vec<Diagnostic>> {
    let mut ck = Checker {
        domain,
        instance,
        enums: BTreeMap::new(),
        value_owner: BTreeMap::new(),
        objects: BTreeMap::new(),
        nonfluent_values: BTreeMap::new(),
        diags: Vec::new(),
    };

    ck.check_names();
    ck.check_types_and_objects();
    ck.check_fluent_decls();
    if !ck.diags.is_empty() {
        // later passes assume resolvable symbols
        return Err(ck.diags);
    }

    ck.build_nonfluent_table();
    ck.check_assignment_sections();
    let init_values = ck.build_init_table();
    ck.check_cpf_coverage();
    ck.check_cpf_bodies();
    ck.check_reward();
    ck.check_instance_scalars();

    if ck.diags.is_empty() {
        Ok(CheckedModel {
            domain: domain.clone(),
            instance: instance.clone(),
            enums: ck.enums,
            value_owner: ck.value_owner,
            objects: ck.objects,
            nonfluent_values: ck.nonfluent_values,
            init_values,
        })
    } else {
        Err(ck.diags)
    }
}

impl<'a> Checker<'a> {
    fn diag(&mut self, code: &'static str, span: Span, message: String) {
        self.diags.push(Diagnostic::new(code, span, message));
    }

    fn check_names(&mut self) {
        if self.instance.domain_name != self.domain.name {
            self.diag(
                codes::DOMAIN,
                Span::default(),
                format!(
                    "instance `{}` references domain `{}`, but the domain file declares `{}`",
                    self.instance.name, self.instance.domain_name, self.domain.name
                ),
            );
        }
    }

    fn check_types_and_objects(&mut self) {
        for e in &self.domain.enums {
            self.enums.insert(e.name.clone(), e.values.clone());
            for (i, v) in e.values.iter().enumerate() {
                if let Some((other, _)) = self.value_owner.get(v) {
                    let msg = format!(
                        "enum value `{v}` of `{}` is already declared in `{other}`",
                        e.name
                    );
                    self.diag(codes::DUP, e.span, msg);
                } else {
                    self.value_owner
                        .insert(v.clone(), (e.name.clone(), i as u16));
                }
            }
            if e.values.len() > u16::MAX as usize {
                self.diag(codes::RANGE, e.span, format!("enum `{}` is too large", e.name));
            }
        }
        let object_types: BTreeSet<&String> = self.domain.object_types.iter().collect();
        for (ty, members) in &self.instance.objects {
            if !object_types.contains(ty) {
                self.diag(
                    codes::REF,
                    Span::default(),
                    format!("objects declared for unknown object type `{ty}`"),
                );
                continue;
            }
            let mut list = Vec::new();
            for m in members {
                if self.value_owner.contains_key(m) || list.contains(m) {
                    self.diag(
                        codes::DUP,
                        Span::default(),
                        format!("object name `{m}` collides with another object or enum value"),
                    );
                } else {
                    list.push(m.clone());
                }
            }
            self.objects.entry(ty.clone()).or_default().extend(list);
        }
        for ty in object_types {
            self.objects.entry(ty.clone()).or_default();
        }
    }

    fn param_universe_len(&self, ty: &str) -> Option<usize> {
        if let Some(v) = self.enums.get(ty) {
            Some(v.len())
        } else {
            self.objects.get(ty).map(|v| v.len())
        }
    }

    fn check_fluent_decls(&mut self) {
        let decls: Vec<FluentDecl> = self.domain.fluents.clone();
        for f in &decls {
            if f.kind == FluentKind::Action && f.value_type != ValueType::Bool {
                self.diag(
                    codes::TYPE,
                    f.span,
                    format!("action fluent `{}` must be boolean", f.name),
                );
            }
            if f.value_type == ValueType::Real && f.kind != FluentKind::NonFluent {
                self.diag(
                    codes::TYPE,
                    f.span,
                    format!("real-valued fluent `{}` is only allowed as a non-fluent", f.name),
                );
            }
            if let ValueType::Enum(en) = &f.value_type {
                if !self.enums.contains_key(en) {
                    self.diag(
                        codes::REF,
                        f.span,
                        format!("fluent `{}` uses undeclared enum type `{en}`", f.name),
                    );
                }
            }
            for p in &f.params {
                match self.param_universe_len(p) {
                    None => self.diag(
                        codes::REF,
                        f.span,
                        format!("fluent `{}` uses undeclared parameter type `{p}`", f.name),
                    ),
                    Some(0) => self.diag(
                        codes::OBJ,
                        f.span,
                        format!(
                            "parameter type `{p}` of fluent `{}` has no declared objects",
                            f.name
                        ),
                    ),
                    Some(_) => {}
                }
            }
            // default literal must inhabit the declared type
            if self.literal_ty(&f.default, f.span).as_ref() != Some(&self.fluent_ty(f)) {
                self.diag(
                    codes::TYPE,
                    f.span,
                    format!("default of fluent `{}` does not match its type", f.name),
                );
            }
        }
    }

    fn fluent_ty(&self, f: &FluentDecl) -> Ty {
        match &f.value_type {
            ValueType::Bool => Ty::Bool,
            ValueType::Real => Ty::Real,
            ValueType::Enum(n) => Ty::Enum(n.clone()),
        }
    }

    fn literal_ty(&mut self, lit: &Literal, span: Span) -> Option<Ty> {
        match lit {
            Literal::Bool(_) => Some(Ty::Bool),
            Literal::Num(_) => Some(Ty::Real),
            Literal::EnumValue(v) => match self.value_owner.get(v) {
                Some((e, _)) => Some(Ty::Enum(e.clone())),
                None => {
                    self.diag(codes::REF, span, format!("unknown enum value `{v}`"));
                    None
                }
            },
        }
    }

    /// Expands every non-fluent over its parameter universe, seeding defaults
    /// and applying instance assignments on top.
    fn build_nonfluent_table(&mut self) {
        for f in &self.domain.fluents {
            if f.kind != FluentKind::NonFluent {
                continue;
            }
            for args in self.bindings(&f.params) {
                self.nonfluent_values
                    .insert((f.name.clone(), args), f.default.clone());
            }
        }
        for a in &self.instance.non_fluents.clone() {
            let key = (a.fluent.clone(), a.args.clone());
            if self.nonfluent_values.contains_key(&key) {
                self.nonfluent_values.insert(key, a.value.clone());
            }
            // unknown keys are reported by check_assignment_sections
        }
    }

    fn build_init_table(&mut self) -> BTreeMap<(String, Vec<String>), Literal> {
        let mut init = BTreeMap::new();
        for f in &self.domain.fluents {
            if f.kind != FluentKind::State {
                continue;
            }
            for args in self.bindings(&f.params) {
                init.insert((f.name.clone(), args), f.default.clone());
            }
        }
        for a in &self.instance.init_state {
            let key = (a.fluent.clone(), a.args.clone());
            if init.contains_key(&key) {
                init.insert(key, a.value.clone());
            }
        }
        init
    }

    /// All argument tuples for a parameter list, in odometer order
    /// (last position varies fastest).
    fn bindings(&self, params: &[String]) -> Vec<Vec<String>> {
        let mut out = vec![Vec::new()];
        for p in params {
            let members = if let Some(v) = self.enums.get(p) {
                v.clone()
            } else {
                self.objects.get(p).cloned().unwrap_or_default()
            };
            let mut next = Vec::with_capacity(out.len() * members.len());
            for prefix in &out {
                for m in &members {
                    let mut row = prefix.clone();
                    row.push(m.clone());
                    next.push(row);
                }
            }
            out = next;
        }
        out
    }

    fn check_assignment_sections(&mut self) {
        let mut seen: BTreeSet<(bool, String, Vec<String>)> = BTreeSet::new();
        let sections = [
            (true, self.instance.non_fluents.clone()),
            (false, self.instance.init_state.clone()),
        ];
        for (is_nonfluent, assignments) in sections {
            let section = if is_nonfluent { "non-fluents" } else { "init-state" };
            for a in &assignments {
                let Some(f) = self.domain.fluent(&a.fluent).cloned() else {
                    self.diag(
                        codes::REF,
                        a.span,
                        format!("assignment to undeclared fluent `{}`", a.fluent),
                    );
                    continue;
                };
                let expected_kind = if is_nonfluent {
                    FluentKind::NonFluent
                } else {
                    FluentKind::State
                };
                if f.kind != expected_kind {
                    self.diag(
                        codes::INIT,
                        a.span,
                        format!(
                            "`{}` is a {}; only {} fluents may appear in `{section}`",
                            a.fluent,
                            f.kind,
                            if is_nonfluent { "non-" } else { "state " }
                        ),
                    );
                    continue;
                }
                if a.args.len() != f.params.len() {
                    self.diag(
                        codes::TYPE,
                        a.span,
                        format!(
                            "`{}` takes {} argument(s), got {}",
                            a.fluent,
                            f.params.len(),
                            a.args.len()
                        ),
                    );
                    continue;
                }
                for (arg, ty) in a.args.iter().zip(&f.params) {
                    let member_ok = self
                        .enums
                        .get(ty)
                        .map(|v| v.contains(arg))
                        .or_else(|| self.objects.get(ty).map(|v| v.contains(arg)))
                        .unwrap_or(false);
                    if !member_ok {
                        self.diag(
                            codes::INIT,
                            a.span,
                            format!("argument `{arg}` is not a member of type `{ty}`"),
                        );
                    }
                }
                if let Some(lt) = self.literal_ty(&a.value.clone(), a.span) {
                    if lt != self.fluent_ty(&f) {
                        self.diag(
                            codes::INIT,
                            a.span,
                            format!(
                                "value of `{}` has type {lt}, expected {}",
                                a.fluent,
                                self.fluent_ty(&f)
                            ),
                        );
                    }
                }
                if !seen.insert((is_nonfluent, a.fluent.clone(), a.args.clone())) {
                    self.diag(
                        codes::DUP,
                        a.span,
                        format!("duplicate assignment to `{}`", a.fluent),
                    );
                }
            }
        }
    }

    fn check_cpf_coverage(&mut self) {
        let state_fluents: Vec<FluentDecl> = self
            .domain
            .fluents
            .iter()
            .filter(|f| f.kind == FluentKind::State)
            .cloned()
            .collect();
        for f in &state_fluents {
            if !self.domain.cpfs.iter().any(|c| c.target == f.name) {
                self.diag(
                    codes::CPF,
                    f.span,
                    format!("state fluent `{}` has no CPF", f.name),
                );
            }
        }
        for c in &self.domain.cpfs.clone() {
            match self.domain.fluent(&c.target) {
                None => self.diag(
                    codes::REF,
                    c.span,
                    format!("CPF target `{}` is not a declared fluent", c.target),
                ),
                Some(f) if f.kind != FluentKind::State => {
                    let msg = format!("CPF target `{}` is not a state fluent", c.target);
                    self.diag(codes::TYPE, c.span, msg);
                }
                Some(f) => {
                    if c.params.len() != f.params.len() {
                        self.diag(
                            codes::TYPE,
                            c.span,
                            format!(
                                "CPF for `{}` binds {} parameter(s), declaration has {}",
                                c.target,
                                c.params.len(),
                                f.params.len()
                            ),
                        );
                    }
                    let mut uniq = BTreeSet::new();
                    for p in &c.params {
                        if !uniq.insert(p) {
                            self.diag(
                                codes::DUP,
                                c.span,
                                format!("parameter `?{p}` bound twice in CPF for `{}`", c.target),
                            );
                        }
                    }
                }
            }
        }
    }

    fn check_cpf_bodies(&mut self) {
        for c in self.domain.cpfs.clone() {
            let Some(f) = self.domain.fluent(&c.target).cloned() else {
                continue;
            };
            if c.params.len() != f.params.len() {
                continue;
            }
            let env: BTreeMap<String, String> = c
                .params
                .iter()
                .cloned()
                .zip(f.params.iter().cloned())
                .collect();
            self.check_stochastic_placement(&c.body, &c.target, c.span, true);
            if let Some(ty) = self.type_of(&c.body, &env, c.span) {
                let want = self.fluent_ty(&f);
                if ty != want {
                    self.diag(
                        codes::TYPE,
                        c.span,
                        format!("CPF body for `{}` has type {ty}, expected {want}", c.target),
                    );
                }
            }
            self.check_probabilities(&c.body, &c.target, c.span);
        }
    }

    /// Stochastic nodes may only appear where `allowed` holds: at the body
    /// top or under `if` arms reached from it. Their own operands must be
    /// deterministic.
    fn check_stochastic_placement(&mut self, e: &Expr, target: &str, span: Span, allowed: bool) {
        match e {
            Expr::Bernoulli(p) => {
                if !allowed {
                    self.diag(
                        codes::REWARD,
                        span,
                        format!("stochastic node in illegal position in CPF for `{target}`"),
                    );
                }
                if p.has_stochastic() {
                    self.diag(
                        codes::REWARD,
                        span,
                        format!("Bernoulli parameter must be deterministic in CPF for `{target}`"),
                    );
                }
            }
            Expr::Discrete { branches, .. } => {
                if !allowed {
                    self.diag(
                        codes::REWARD,
                        span,
                        format!("stochastic node in illegal position in CPF for `{target}`"),
                    );
                }
                for (_, p) in branches {
                    if p.has_stochastic() {
                        self.diag(
                            codes::REWARD,
                            span,
                            format!("Discrete branch must be deterministic in CPF for `{target}`"),
                        );
                    }
                }
            }
            Expr::KronDelta(inner) => {
                if !allowed {
                    self.diag(
                        codes::REWARD,
                        span,
                        format!("stochastic node in illegal position in CPF for `{target}`"),
                    );
                }
                if inner.has_stochastic() {
                    self.diag(
                        codes::REWARD,
                        span,
                        format!("KronDelta argument must be deterministic in CPF for `{target}`"),
                    );
                }
            }
            Expr::If { cond, then, els } => {
                if cond.has_stochastic() {
                    self.diag(
                        codes::REWARD,
                        span,
                        format!("if-condition must be deterministic in CPF for `{target}`"),
                    );
                }
                self.check_stochastic_placement(then, target, span, allowed);
                self.check_stochastic_placement(els, target, span, allowed);
            }
            Expr::Arith { lhs, rhs, .. } | Expr::Cmp { lhs, rhs, .. } => {
                self.check_stochastic_placement(lhs, target, span, false);
                self.check_stochastic_placement(rhs, target, span, false);
            }
            Expr::And(a, b) | Expr::Or(a, b) => {
                self.check_stochastic_placement(a, target, span, false);
                self.check_stochastic_placement(b, target, span, false);
            }
            Expr::Not(inner) => self.check_stochastic_placement(inner, target, span, false),
            Expr::Literal(_) | Expr::Fluent { .. } | Expr::Var(_) => {}
        }
    }

    fn type_of(&mut self, e: &Expr, env: &BTreeMap<String, String>, span: Span) -> Option<Ty> {
        match e {
            Expr::Literal(lit) => self.literal_ty(lit, span),
            Expr::Var(v) => match env.get(v) {
                Some(ty_name) => {
                    if self.enums.contains_key(ty_name) {
                        Some(Ty::Enum(ty_name.clone()))
                    } else {
                        Some(Ty::Obj(ty_name.clone()))
                    }
                }
                None => {
                    self.diag(codes::VAR, span, format!("unbound parameter variable `?{v}`"));
                    None
                }
            },
            Expr::Fluent { name, args } => {
                let Some(f) = self.domain.fluent(name).cloned() else {
                    self.diag(codes::REF, span, format!("reference to undeclared fluent `{name}`"));
                    return None;
                };
                if args.len() != f.params.len() {
                    self.diag(
                        codes::TYPE,
                        span,
                        format!(
                            "fluent `{name}` takes {} argument(s), got {}",
                            f.params.len(),
                            args.len()
                        ),
                    );
                    return None;
                }
                for (arg, pty) in args.iter().zip(&f.params) {
                    match arg {
                        Arg::Var(v) => match env.get(v) {
                            Some(actual) if actual == pty => {}
                            Some(actual) => {
                                self.diag(
                                    codes::TYPE,
                                    span,
                                    format!(
                                        "argument `?{v}` of `{name}` has type {actual}, expected {pty}"
                                    ),
                                );
                            }
                            None => {
                                self.diag(
                                    codes::VAR,
                                    span,
                                    format!("unbound parameter variable `?{v}`"),
                                );
                            }
                        },
                        Arg::Value(v) => {
                            let ok = self
                                .enums
                                .get(pty)
                                .map(|vals| vals.contains(v))
                                .or_else(|| self.objects.get(pty).map(|o| o.contains(v)))
                                .unwrap_or(false);
                            if !ok {
                                self.diag(
                                    codes::REF,
                                    span,
                                    format!("argument `{v}` of `{name}` is not a member of `{pty}`"),
                                );
                            }
                        }
                    }
                }
                Some(self.fluent_ty(&f))
            }
            Expr::Arith { lhs, rhs, .. } => {
                let lt = self.type_of(lhs, env, span)?;
                let rt = self.type_of(rhs, env, span)?;
                if lt != Ty::Real || rt != Ty::Real {
                    self.diag(
                        codes::TYPE,
                        span,
                        format!("arithmetic needs real operands, got {lt} and {rt}"),
                    );
                    return None;
                }
                Some(Ty::Real)
            }
            Expr::Cmp { op, lhs, rhs } => {
                let lt = self.type_of(lhs, env, span)?;
                let rt = self.type_of(rhs, env, span)?;
                if lt != rt {
                    self.diag(
                        codes::TYPE,
                        span,
                        format!("comparison operands differ: {lt} vs {rt}"),
                    );
                    return None;
                }
                if matches!(op, CmpOp::Lt | CmpOp::Le)
                    && !matches!(lt, Ty::Real | Ty::Enum(_))
                {
                    self.diag(
                        codes::TYPE,
                        span,
                        format!("ordering comparison needs real or enum operands, got {lt}"),
                    );
                    return None;
                }
                Some(Ty::Bool)
            }
            Expr::Not(inner) => {
                let t = self.type_of(inner, env, span)?;
                if t != Ty::Bool {
                    self.diag(codes::TYPE, span, format!("`~` needs a bool operand, got {t}"));
                    return None;
                }
                Some(Ty::Bool)
            }
            Expr::And(a, b) | Expr::Or(a, b) => {
                let ta = self.type_of(a, env, span)?;
                let tb = self.type_of(b, env, span)?;
                if ta != Ty::Bool || tb != Ty::Bool {
                    self.diag(
                        codes::TYPE,
                        span,
                        format!("logical operators need bool operands, got {ta} and {tb}"),
                    );
                    return None;
                }
                Some(Ty::Bool)
            }
            Expr::If { cond, then, els } => {
                if let Some(ct) = self.type_of(cond, env, span) {
                    if ct != Ty::Bool {
                        self.diag(codes::TYPE, span, format!("if-condition must be bool, got {ct}"));
                    }
                }
                let tt = self.type_of(then, env, span)?;
                let et = self.type_of(els, env, span)?;
                if tt != et {
                    self.diag(
                        codes::TYPE,
                        span,
                        format!("if-arms have different types: {tt} vs {et}"),
                    );
                    return None;
                }
                Some(tt)
            }
            Expr::Bernoulli(p) => {
                if let Some(t) = self.type_of(p, env, span) {
                    if t != Ty::Real {
                        self.diag(
                            codes::TYPE,
                            span,
                            format!("Bernoulli parameter must be real, got {t}"),
                        );
                    }
                }
                Some(Ty::Bool)
            }
            Expr::Discrete { enum_name, branches } => {
                let Some(values) = self.enums.get(enum_name).cloned() else {
                    self.diag(
                        codes::REF,
                        span,
                        format!("Discrete over undeclared enum `{enum_name}`"),
                    );
                    return None;
                };
                let mut covered = BTreeSet::new();
                for (v, p) in branches {
                    if !values.contains(v) {
                        self.diag(
                            codes::TYPE,
                            span,
                            format!("Discrete branch `{v}` is not a value of `{enum_name}`"),
                        );
                    } else if !covered.insert(v.clone()) {
                        self.diag(codes::DUP, span, format!("Discrete branch `{v}` repeated"));
                    }
                    if let Some(t) = self.type_of(p, env, span) {
                        if t != Ty::Real {
                            self.diag(
                                codes::TYPE,
                                span,
                                format!("Discrete branch probability must be real, got {t}"),
                            );
                        }
                    }
                }
                if branches.len() != values.len() {
                    self.diag(
                        codes::TYPE,
                        span,
                        format!(
                            "Discrete over `{enum_name}` lists {} branch(es), the enum has {} values",
                            branches.len(),
                            values.len()
                        ),
                    );
                }
                Some(Ty::Enum(enum_name.clone()))
            }
            Expr::KronDelta(inner) => self.type_of(inner, env, span),
        }
    }

    /// Folds an expression into a real constant when possible, resolving
    /// non-fluent references through the instance table.
    fn fold_const(&self, e: &Expr) -> Option<f64> {
        match e {
            Expr::Literal(Literal::Num(n)) => Some(*n),
            Expr::Fluent { name, args } => {
                let f = self.domain.fluent(name)?;
                if f.kind != FluentKind::NonFluent {
                    return None;
                }
                let mut key_args = Vec::with_capacity(args.len());
                for a in args {
                    match a {
                        Arg::Value(v) => key_args.push(v.clone()),
                        Arg::Var(_) => return None,
                    }
                }
                match self.nonfluent_values.get(&(name.clone(), key_args)) {
                    Some(Literal::Num(n)) => Some(*n),
                    _ => None,
                }
            }
            Expr::Arith { op, lhs, rhs } => {
                let l = self.fold_const(lhs)?;
                let r = self.fold_const(rhs)?;
                Some(match op {
                    ArithOp::Add => l + r,
                    ArithOp::Sub => l - r,
                    ArithOp::Mul => l * r,
                    ArithOp::Div => {
                        if r == 0.0 {
                            return None;
                        }
                        l / r
                    }
                })
            }
            _ => None,
        }
    }

    /// Statical probability checks on every Bernoulli/Discrete node whose
    /// parameters fold to constants.
    fn check_probabilities(&mut self, e: &Expr, target: &str, span: Span) {
        match e {
            Expr::Bernoulli(p) => {
                if let Some(v) = self.fold_const(p) {
                    if !(-PROB_TOLERANCE..=1.0 + PROB_TOLERANCE).contains(&v) {
                        self.diag(
                            codes::PROB,
                            span,
                            format!("Bernoulli parameter {v} of CPF `{target}` is outside [0, 1]"),
                        );
                    }
                }
            }
            Expr::Discrete { branches, .. } => {
                let mut sum = 0.0;
                let mut all_const = true;
                for (_, p) in branches {
                    match self.fold_const(p) {
                        Some(v) => {
                            if !(-PROB_TOLERANCE..=1.0 + PROB_TOLERANCE).contains(&v) {
                                self.diag(
                                    codes::PROB,
                                    span,
                                    format!(
                                        "Discrete branch probability {v} of CPF `{target}` is outside [0, 1]"
                                    ),
                                );
                            }
                            sum += v;
                        }
                        None => all_const = false,
                    }
                }
                if all_const && !branches.is_empty() && (sum - 1.0).abs() > PROB_TOLERANCE {
                    self.diag(
                        codes::NORM,
                        span,
                        format!("Discrete branches of CPF `{target}` sum to {sum}, expected 1"),
                    );
                }
            }
            Expr::If { cond, then, els } => {
                self.check_probabilities(cond, target, span);
                self.check_probabilities(then, target, span);
                self.check_probabilities(els, target, span);
            }
            Expr::Arith { lhs, rhs, .. } | Expr::Cmp { lhs, rhs, .. } => {
                self.check_probabilities(lhs, target, span);
                self.check_probabilities(rhs, target, span);
            }
            Expr::And(a, b) | Expr::Or(a, b) => {
                self.check_probabilities(a, target, span);
                self.check_probabilities(b, target, span);
            }
            Expr::Not(inner) | Expr::KronDelta(inner) => {
                self.check_probabilities(inner, target, span)
            }
            Expr::Literal(_) | Expr::Fluent { .. } | Expr::Var(_) => {}
        }
    }

    fn check_reward(&mut self) {
        let reward = self.domain.reward.clone();
        if reward.has_stochastic() {
            self.diag(
                codes::REWARD,
                Span::default(),
                "reward expression must be deterministic".to_string(),
            );
            return;
        }
        let env = BTreeMap::new();
        if let Some(t) = self.type_of(&reward, &env, Span::default()) {
            if t != Ty::Real {
                self.diag(
                    codes::TYPE,
                    Span::default(),
                    format!("reward must be real-valued, got {t}"),
                );
            }
        }
    }

    fn check_instance_scalars(&mut self) {
        let d = self.instance.discount;
        if !(d > 0.0 && d <= 1.0) {
            self.diag(
                codes::RANGE,
                Span::default(),
                format!("discount {d} is outside (0, 1]"),
            );
        }
    }
}
