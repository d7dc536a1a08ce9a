//! A small query language over a validated corpus.
//!
//! A query is a command followed by `key=value` or `key!=value` filters,
//! all of which must hold:
//!
//! | command        | keys                                                                 |
//! |----------------|----------------------------------------------------------------------|
//! | `preds`        | class, aligned-class, tag, aligned-tag, lemma, aligned-lemma, group, aligned-group, atag, voice |
//! | `aligns`       | kind, atag                                                           |
//! | `unaligned`    | kind, lang                                                           |
//! | `realizations` | group, role, lang, class                                             |
//! | `frames`       | lemma, group, lang, class                                            |
//!
//! `tag` / `aligned-tag` test membership in a binding's tag set; `voice=diverge`
//! holds when exactly one side of a predicate alignment carries `pv`.

mod eval;

use std::fmt;

use thiserror::Error;

pub use eval::{run_query, ResultRow, RowRef};

use crate::model::{is_identifier, is_tag_name, PredClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Command {
    Preds,
    Aligns,
    Unaligned,
    Realizations,
    Frames,
}

impl Command {
    pub const ALL: [Command; 5] =
        [Command::Preds, Command::Aligns, Command::Unaligned, Command::Realizations, Command::Frames];

    pub fn as_str(self) -> &'static str {
        match self {
            Command::Preds => "preds",
            Command::Aligns => "aligns",
            Command::Unaligned => "unaligned",
            Command::Realizations => "realizations",
            Command::Frames => "frames",
        }
    }

    pub fn keys(self) -> &'static [Key] {
        use Key::*;
        match self {
            Command::Preds => &[Class, AlignedClass, Tag, AlignedTag, Lemma, AlignedLemma, Group, AlignedGroup, Atag, Voice],
            Command::Aligns => &[Kind, Atag],
            Command::Unaligned => &[Kind, Lang],
            Command::Realizations => &[Group, Role, Lang, Class],
            Command::Frames => &[Lemma, Group, Lang, Class],
        }
    }

    /// Column names of the command's result rows.
    pub fn columns(self) -> &'static [&'static str] {
        match self {
            Command::Preds => &[
                "left", "right", "left_pred", "left_lemma", "left_class", "left_tags", "right_pred",
                "right_lemma", "right_class", "right_tags", "atag",
            ],
            Command::Aligns => &[
                "left", "right", "kind", "left_element", "left_label", "right_element", "right_label", "atag",
            ],
            Command::Unaligned => &["sentence", "kind", "element", "lemma", "class", "role"],
            Command::Realizations => &["sentence", "predicate", "lemma", "class", "group", "role", "yield"],
            Command::Frames => &["lang", "group", "lemma", "class", "frame", "tags", "count"],
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Key {
    Class,
    AlignedClass,
    Tag,
    AlignedTag,
    Lemma,
    AlignedLemma,
    Group,
    AlignedGroup,
    Atag,
    Voice,
    Kind,
    Lang,
    Role,
}

impl Key {
    const ALL: [Key; 13] = [
        Key::Class, Key::AlignedClass, Key::Tag, Key::AlignedTag, Key::Lemma, Key::AlignedLemma,
        Key::Group, Key::AlignedGroup, Key::Atag, Key::Voice, Key::Kind, Key::Lang, Key::Role,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Key::Class => "class",
            Key::AlignedClass => "aligned-class",
            Key::Tag => "tag",
            Key::AlignedTag => "aligned-tag",
            Key::Lemma => "lemma",
            Key::AlignedLemma => "aligned-lemma",
            Key::Group => "group",
            Key::AlignedGroup => "aligned-group",
            Key::Atag => "atag",
            Key::Voice => "voice",
            Key::Kind => "kind",
            Key::Lang => "lang",
            Key::Role => "role",
        }
    }

    fn value_ok(self, v: &str) -> bool {
        match self {
            Key::Class | Key::AlignedClass => v.parse::<PredClass>().is_ok(),
            Key::Kind => v == "pred" || v == "arg",
            Key::Voice => v == "diverge",
            Key::Lang => is_identifier(v),
            Key::Tag | Key::AlignedTag | Key::Atag => is_tag_name(v),
            _ => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Filter {
    pub key: Key,
    pub negated: bool,
    pub value: String,
}

impl Filter {
    /// Tests a single-valued field; `None` means the field is absent.
    pub fn test(&self, actual: Option<&str>) -> bool {
        (actual == Some(self.value.as_str())) != self.negated
    }

    /// Tests membership in a set-valued field.
    pub fn test_member<'a>(&self, mut set: impl Iterator<Item = &'a str>) -> bool {
        set.any(|x| x == self.value) != self.negated
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Query {
    pub command: Command,
    pub filters: Vec<Filter>,
}

impl Query {
    pub fn filters(&self, key: Key) -> impl Iterator<Item = &Filter> {
        self.filters.iter().filter(move |f| f.key == key)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QueryErrorCode {
    Syntax,
    Key,
}

impl QueryErrorCode {
    pub fn as_str(self) -> &'static str {
        match self {
            QueryErrorCode::Syntax => "E-Q-SYNTAX",
            QueryErrorCode::Key => "E-Q-KEY",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{} at position {position}: {message}", code.as_str())]
pub struct QueryError {
    pub code: QueryErrorCode,
    /// Byte offset into the query text.
    pub position: usize,
    pub message: String,
}

fn words(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in text.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s, &text[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &text[s..]));
    }
    out
}

/// Parses `command (key[!]=value)*`.
pub fn parse_query(text: &str) -> Result<Query, QueryError> {
    let syntax = |position, message: String| QueryError { code: QueryErrorCode::Syntax, position, message };
    let words = words(text);
    let Some(&(pos, name)) = words.first() else {
        return Err(syntax(0, "empty query".into()));
    };
    let command = Command::ALL
        .into_iter()
        .find(|c| c.as_str() == name)
        .ok_or_else(|| syntax(pos, format!("unknown command `{name}`")))?;
    let mut filters = Vec::new();
    for &(pos, word) in &words[1..] {
        let (key, negated, value) = match word.split_once("!=") {
            Some((k, v)) if !k.contains('=') => (k, true, v),
            _ => match word.split_once('=') {
                Some((k, v)) => (k, false, v),
                None => return Err(syntax(pos, format!("expected key=value, found `{word}`"))),
            },
        };
        if key.is_empty() {
            return Err(syntax(pos, "missing key".into()));
        }
        let key = Key::ALL
            .into_iter()
            .find(|k| k.as_str() == key)
            .filter(|k| command.keys().contains(k))
            .ok_or_else(|| QueryError {
                code: QueryErrorCode::Key,
                position: pos,
                message: format!("`{key}` is not a filter of `{command}`"),
            })?;
        let value_pos = pos + word.len() - value.len();
        if value.is_empty() {
            return Err(syntax(value_pos, format!("empty value for `{}`", key.as_str())));
        }
        if !key.value_ok(value) {
            return Err(syntax(value_pos, format!("invalid value `{value}` for `{}`", key.as_str())));
        }
        filters.push(Filter { key, negated, value: value.to_string() });
    }
    Ok(Query { command, filters })
}
