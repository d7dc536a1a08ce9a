//! Machine-readable diagnostics shared by parsers, the loader and the
//! validator.

use std::fmt;

use serde::Serialize;

use crate::model::{ElementRef, SentenceRef};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Severity {
    Error,
    Warning,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Error => "ERROR",
            Severity::Warning => "WARNING",
        })
    }
}

macro_rules! codes {
    ($( $(#[$doc:meta])* $variant:ident => $s:literal, )*) => {
        /// The diagnostic code registry. Codes are stable strings.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum Code {
            $( $(#[$doc])* $variant, )*
        }

        impl Code {
            pub const ALL: &'static [Code] = &[$(Code::$variant,)*];

            pub fn as_str(self) -> &'static str {
                match self {
                    $( Code::$variant => $s, )*
                }
            }
        }
    };
}

codes! {
    /// A file could not be read.
    Io => "E-IO",
    /// Malformed line, missing or duplicate key, misplaced block marker.
    Syntax => "E-SYNTAX",
    /// Lemma, group or role outside the uppercase alphabet.
    Name => "E-NAME",
    /// Malformed node or element reference.
    Ref => "E-REF",
    SentDup => "E-SENT-DUP",
    TreeEmpty => "E-TREE-EMPTY",
    /// Empty form, POS or label on a tree line.
    Token => "E-TOKEN",
    NodeIdRange => "E-NODE-ID-RANGE",
    NodeDup => "E-NODE-DUP",
    ParentUnknown => "E-PARENT-UNKNOWN",
    TreeCycle => "E-TREE-CYCLE",
    /// Nonterminal without children.
    NtEmpty => "E-NT-EMPTY",
    /// Terminal after a nonterminal, or nonterminals out of id order.
    TbOrder => "E-TB-ORDER",
    Class => "E-CLASS",
    TagUnknown => "E-TAG-UNKNOWN",
    PredDup => "E-PRED-DUP",
    RoleDup => "E-ROLE-DUP",
    /// Argument line before (or without) its predicate line.
    Order => "E-ORDER",
    PairDup => "E-PAIR-DUP",
    /// Pair header languages differ from the ALIGN declaration.
    PairLang => "E-PAIR-LANG",
    ManifestLang => "E-MANIFEST-LANG",
    ManifestEmpty => "E-MANIFEST-EMPTY",
    LangDup => "E-LANG-DUP",
    AlignSetDup => "E-ALIGNSET-DUP",
    BindMissing => "E-BIND-MISSING",
    BindDangle => "E-BIND-DANGLE",
    ExclNotDesc => "E-EXCL-NOT-DESC",
    InclNested => "E-INCL-NESTED",
    YieldEmpty => "E-YIELD-EMPTY",
    Recursion => "E-RECURSION",
    TagOnArg => "E-TAG-ON-ARG",
    /// A predicate-argument block or pair header names a sentence missing
    /// from the treebank.
    SentUnknown => "E-SENT-UNKNOWN",
    AlignDangle => "E-ALIGN-DANGLE",
    AlignKind => "E-ALIGN-KIND",
    AlignDup => "E-ALIGN-DUP",
    AlignOrphanArg => "E-ALIGN-ORPHAN-ARG",
    AlignTag => "E-ALIGN-TAG",
    RoleNearDup => "W-ROLE-NEAR-DUP",
}

impl Code {
    pub fn severity(self) -> Severity {
        if self.as_str().starts_with("W-") {
            Severity::Warning
        } else {
            Severity::Error
        }
    }

    pub fn parse(s: &str) -> Option<Code> {
        Code::ALL.iter().copied().find(|c| c.as_str() == s)
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Code {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// What a validator diagnostic is about, before it is mapped to a file line.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Subject {
    Sentence {
        lang: Option<String>,
        sentence: String,
    },
    Element {
        lang: Option<String>,
        sentence: String,
        element: ElementRef,
    },
    Pair {
        left: SentenceRef,
        right: SentenceRef,
    },
    Alignment {
        left: SentenceRef,
        right: SentenceRef,
        index: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: Code,
    pub file: Option<String>,
    pub line: Option<usize>,
    pub subject: Option<Subject>,
    pub message: String,
}

impl Diagnostic {
    pub fn new(code: Code, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: code.severity(),
            code,
            file: None,
            line: None,
            subject: None,
            message: message.into(),
        }
    }

    pub fn at_line(mut self, line: usize) -> Self {
        self.line = Some(line);
        self
    }

    pub fn in_file(mut self, file: impl Into<String>) -> Self {
        self.file = Some(file.into());
        self
    }

    pub fn about(mut self, subject: Subject) -> Self {
        self.subject = Some(subject);
        self
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }

    fn sort_key(&self) -> impl Ord + '_ {
        (
            &self.file,
            self.line,
            self.code,
            &self.subject,
            &self.message,
        )
    }
}

impl PartialOrd for Diagnostic {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Diagnostic {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key()
            .cmp(&other.sort_key())
            .then(self.severity.cmp(&other.severity))
    }
}

/// `<severity>\t<code>\t<file>:<line>\t<message>`
impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let file = self.file.as_deref().unwrap_or("-");
        write!(f, "{}\t{}\t{}", self.severity, self.code, file)?;
        if let Some(line) = self.line {
            write!(f, ":{line}")?;
        }
        write!(f, "\t{}", self.message)
    }
}

/// Sorts into the canonical order and drops exact duplicates.
pub fn normalize(diags: &mut Vec<Diagnostic>) {
    diags.sort();
    diags.dedup();
}

pub fn has_errors(diags: &[Diagnostic]) -> bool {
    diags.iter().any(Diagnostic::is_error)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codes_are_unique_and_parse_back() {
        for &c in Code::ALL {
            assert_eq!(Code::parse(c.as_str()), Some(c));
        }
        let mut names: Vec<_> = Code::ALL.iter().map(|c| c.as_str()).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), Code::ALL.len());
    }

    #[test]
    fn rendering() {
        let d = Diagnostic::new(Code::Recursion, "overlap").in_file("en.pa").at_line(12);
        assert_eq!(d.to_string(), "ERROR\tE-RECURSION\ten.pa:12\toverlap");
        let w = Diagnostic::new(Code::RoleNearDup, "typo?");
        assert_eq!(w.to_string(), "WARNING\tW-ROLE-NEAR-DUP\t-\ttypo?");
    }

    #[test]
    fn ordering_is_file_line_code() {
        let mut v = vec![
            Diagnostic::new(Code::Recursion, "b").in_file("b").at_line(1),
            Diagnostic::new(Code::BindDangle, "a").in_file("a").at_line(9),
            Diagnostic::new(Code::Recursion, "a").in_file("a").at_line(2),
            Diagnostic::new(Code::BindDangle, "a").in_file("a").at_line(2),
            Diagnostic::new(Code::BindDangle, "a").in_file("a").at_line(2),
        ];
        normalize(&mut v);
        let got: Vec<_> = v.iter().map(|d| (d.file.clone().unwrap(), d.line, d.code)).collect();
        assert_eq!(
            got,
            vec![
                ("a".into(), Some(2), Code::BindDangle),
                ("a".into(), Some(2), Code::Recursion),
                ("a".into(), Some(9), Code::BindDangle),
                ("b".into(), Some(1), Code::Recursion),
            ]
        );
    }
}
