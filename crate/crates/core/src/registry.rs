use std::collections::BTreeSet;

use serde::Serialize;

/// Binding tags explaining absent arguments (`pv` passive, `imp` imperative).
pub const DEFAULT_BINDING_TAGS: [&str; 2] = ["imp", "pv"];
/// Alignment tags classifying non-literal correspondences.
pub const DEFAULT_ALIGNMENT_TAGS: [&str; 2] = ["abs-opp", "incomp"];

/// The closed sets of tag names a corpus may use.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TagRegistry {
    pub binding: BTreeSet<String>,
    pub alignment: BTreeSet<String>,
}

impl Default for TagRegistry {
    fn default() -> Self {
        TagRegistry {
            binding: DEFAULT_BINDING_TAGS.iter().map(|s| s.to_string()).collect(),
            alignment: DEFAULT_ALIGNMENT_TAGS.iter().map(|s| s.to_string()).collect(),
        }
    }
}

impl TagRegistry {
    pub fn is_binding_tag(&self, tag: &str) -> bool {
        self.binding.contains(tag)
    }

    pub fn is_alignment_tag(&self, tag: &str) -> bool {
        self.alignment.contains(tag)
    }
}

/// Partial registry from a manifest or an override file; absent halves keep
/// whatever they are applied to.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TagOverride {
    pub binding: Option<BTreeSet<String>>,
    pub alignment: Option<BTreeSet<String>>,
}

impl TagOverride {
    pub fn apply(&self, base: &TagRegistry) -> TagRegistry {
        TagRegistry {
            binding: self.binding.clone().unwrap_or_else(|| base.binding.clone()),
            alignment: self.alignment.clone().unwrap_or_else(|| base.alignment.clone()),
        }
    }
}
