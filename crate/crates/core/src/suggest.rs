use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::model::{ParallelCorpus, ResolveError};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RoleSuggestion {
    pub role: String,
    /// Prior uses of the role in the group.
    pub frequency: usize,
    /// `frequency` over all argument uses in the group.
    pub share: f64,
}

/// Ranks the role names already used with predicates of `group` in `lang`,
/// most frequent first, ties by name. Roles in `already_used` are skipped
/// since a predicate takes each role at most once.
pub fn suggest_roles(
    corpus: &ParallelCorpus,
    lang: &str,
    group: &str,
    already_used: &BTreeSet<String>,
) -> Result<Vec<RoleSuggestion>, ResolveError> {
    let tb = corpus
        .treebank(lang)
        .ok_or_else(|| ResolveError::UnknownLanguage(lang.to_string()))?;
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    let mut total = 0usize;
    for a in tb.sentences.values() {
        for arg in a.arguments() {
            if a.predicate(&arg.pred).is_some_and(|p| p.group == group) {
                *counts.entry(&arg.role).or_default() += 1;
                total += 1;
            }
        }
    }
    let mut out: Vec<RoleSuggestion> = counts
        .into_iter()
        .filter(|(role, _)| !already_used.contains(*role))
        .map(|(role, frequency)| RoleSuggestion {
            role: role.to_string(),
            frequency,
            share: frequency as f64 / total as f64,
        })
        .collect();
    out.sort_by(|a, b| b.frequency.cmp(&a.frequency).then_with(|| a.role.cmp(&b.role)));
    Ok(out)
}
