//! Core engine: XRDDL front end, grounder, planners, and simulator for
//! explanation-aware navigation domains.

pub mod attrs;
pub mod planner;
pub mod preference;
pub mod rng;
pub mod scenario;
pub mod ground;
pub mod lang;

pub use attrs::ExplanationAttributes;
pub use ground::{
    ground, EvalError, FluentTag, GroundAction, GroundError, GroundState, GroundedModel,
    GroundingLimits,
};
pub use lang::{
    parse_domain, parse_instance, validate, CheckedModel, Diagnostic, DomainModel, InstanceModel,
    ParseError,
};
