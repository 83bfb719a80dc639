//! The four-way characterization of an explanation.
//!
//! Each attribute is a closed two-value choice; an [`ExplanationAttributes`]
//! tuple picks one value per attribute. The value names double as the enum
//! value names used by generated domains, which is how ground `explain`
//! actions are recognized and decorated.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Representation {
    Textual,
    Visual,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DetailLevel {
    Rich,
    Poor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Duration {
    Long,
    Short,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    Local,
    Global,
}

macro_rules! attr_names {
    ($ty:ident, $a:ident => $an:literal, $b:ident => $bn:literal) => {
        impl $ty {
            pub const VALUES: [$ty; 2] = [$ty::$a, $ty::$b];

            pub fn name(self) -> &'static str {
                match self {
                    $ty::$a => $an,
                    $ty::$b => $bn,
                }
            }

            pub fn from_name(name: &str) -> Option<Self> {
                match name {
                    $an => Some($ty::$a),
                    $bn => Some($ty::$b),
                    _ => None,
                }
            }
        }

        impl std::fmt::Display for $ty {
            fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
                f.write_str(self.name())
            }
        }
    };
}

attr_names!(Representation, Textual => "textual", Visual => "visual");
attr_names!(DetailLevel, Rich => "rich", Poor => "poor");
attr_names!(Duration, Long => "long", Short => "short");
attr_names!(Scope, Local => "local", Global => "global");

/// One choice per explanation attribute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ExplanationAttributes {
    pub representation: Representation,
    pub detail: DetailLevel,
    pub duration: Duration,
    pub scope: Scope,
}

impl ExplanationAttributes {
    pub fn new(
        representation: Representation,
        detail: DetailLevel,
        duration: Duration,
        scope: Scope,
    ) -> Self {
        ExplanationAttributes {
            representation,
            detail,
            duration,
            scope,
        }
    }

    /// All 16 attribute tuples, in a fixed order (representation slowest).
    pub fn all() -> impl Iterator<Item = ExplanationAttributes> {
        Representation::VALUES.into_iter().flat_map(|r| {
            DetailLevel::VALUES.into_iter().flat_map(move |dl| {
                Duration::VALUES.into_iter().flat_map(move |d| {
                    Scope::VALUES
                        .into_iter()
                        .map(move |s| ExplanationAttributes::new(r, dl, d, s))
                })
            })
        })
    }

    /// Attribute values as the four canonical names, in declaration order.
    pub fn names(&self) -> [&'static str; 4] {
        [
            self.representation.name(),
            self.detail.name(),
            self.duration.name(),
            self.scope.name(),
        ]
    }

    /// Rebuilds a tuple from four value names in any order, one per
    /// attribute. Returns `None` unless each attribute is matched exactly
    /// once.
    pub fn from_names(names: &[String]) -> Option<Self> {
        if names.len() != 4 {
            return None;
        }
        let mut repr = None;
        let mut detail = None;
        let mut duration = None;
        let mut scope = None;
        for n in names {
            if let Some(v) = Representation::from_name(n) {
                if repr.replace(v).is_some() {
                    return None;
                }
            } else if let Some(v) = DetailLevel::from_name(n) {
                if detail.replace(v).is_some() {
                    return None;
                }
            } else if let Some(v) = Duration::from_name(n) {
                if duration.replace(v).is_some() {
                    return None;
                }
            } else if let Some(v) = Scope::from_name(n) {
                if scope.replace(v).is_some() {
                    return None;
                }
            } else {
                return None;
            }
        }
        Some(ExplanationAttributes::new(repr?, detail?, duration?, scope?))
    }
}

impl std::fmt::Display for ExplanationAttributes {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({}, {}, {}, {})",
            self.representation, self.detail, self.duration, self.scope
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sixteen_distinct_tuples() {
        let all: Vec<_> = ExplanationAttributes::all().collect();
        assert_eq!(all.len(), 16);
        let set: std::collections::BTreeSet<_> = all.iter().collect();
        assert_eq!(set.len(), 16);
    }

    #[test]
    fn names_round_trip_in_any_order() {
        for attrs in ExplanationAttributes::all() {
            let mut names: Vec<String> = attrs.names().iter().map(|s| s.to_string()).collect();
            names.reverse();
            assert_eq!(ExplanationAttributes::from_names(&names), Some(attrs));
        }
        assert_eq!(ExplanationAttributes::from_names(&["textual".into()]), None);
        let twice = vec![
            "textual".into(),
            "visual".into(),
            "rich".into(),
            "long".into(),
        ];
        assert_eq!(ExplanationAttributes::from_names(&twice), None);
    }
}
