//! C interface to `fuse-core`.
//!
//! A corpus is loaded into an opaque `FuseCorpus` handle. Every call returns
//! a `FuseStatus`; on failure `fuse_last_error_message` describes what went
//! wrong on the calling thread. Strings handed out through `char **out`
//! parameters belong to the caller and must be released with
//! `fuse_string_free`.

use std::cell::RefCell;
use std::collections::BTreeSet;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fuse_core::{
    compute_stats, load_corpus, parse_query, render, run_query, suggest_roles, ValidCorpus,
};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FuseStatus {
    Ok = 0,
    /// A null pointer or a string that is not UTF-8.
    InvalidArgument = 1,
    /// A corpus file could not be read.
    Io = 2,
    /// The corpus has ERROR diagnostics.
    InvalidCorpus = 3,
    /// The query text did not parse, or named an unknown language.
    Query = 4,
    /// A bug in the library; the call had no effect.
    Internal = 5,
}

/// Opaque handle to a validated corpus.
pub struct FuseCorpus {
    inner: ValidCorpus,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

type Outcome = Result<(), (FuseStatus, String)>;

fn guard(f: impl FnOnce() -> Outcome) -> FuseStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FuseStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal error");
            FuseStatus::Internal
        }
    }
}

fn invalid(what: &str) -> (FuseStatus, String) {
    (FuseStatus::InvalidArgument, format!("{what} is null or not UTF-8"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, (FuseStatus, String)> {
    if p.is_null() {
        return Err(invalid(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| invalid(what))
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Outcome {
    let c = CString::new(s).map_err(|_| (FuseStatus::Internal, "output contains NUL".to_string()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn corpus_arg<'a>(p: *const FuseCorpus) -> Result<&'a ValidCorpus, (FuseStatus, String)> {
    p.as_ref().map(|c| &c.inner).ok_or_else(|| invalid("corpus"))
}

/// Loads and validates the corpus described by `manifest`.
///
/// On success `*out` receives a handle to free with `fuse_corpus_free`. On
/// failure `*out` is set to NULL and the diagnostics are available from
/// `fuse_last_error_message`.
///
/// # Safety
/// `manifest` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fuse_corpus_load(manifest: *const c_char, out: *mut *mut FuseCorpus) -> FuseStatus {
    guard(|| {
        if out.is_null() {
            return Err(invalid("out"));
        }
        *out = ptr::null_mut();
        let path = str_arg(manifest, "manifest")?;
        let loaded = load_corpus(path);
        match loaded.corpus {
            Some(inner) => {
                *out = Box::into_raw(Box::new(FuseCorpus { inner }));
                Ok(())
            }
            None => {
                let status = if loaded.io_failure() { FuseStatus::Io } else { FuseStatus::InvalidCorpus };
                Err((status, render::diagnostics(&loaded.diagnostics, false)))
            }
        }
    })
}

/// Releases a handle from `fuse_corpus_load`. NULL is ignored.
///
/// # Safety
/// `corpus` must come from `fuse_corpus_load` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn fuse_corpus_free(corpus: *mut FuseCorpus) {
    if !corpus.is_null() {
        drop(Box::from_raw(corpus));
    }
}

/// Validates the corpus at `manifest` and writes every diagnostic (TSV
/// lines) to `*diagnostics`. Returns `FUSE_STATUS_OK` when there is no
/// ERROR.
///
/// # Safety
/// `manifest` must be a NUL-terminated string and `diagnostics` a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn fuse_validate(manifest: *const c_char, diagnostics: *mut *mut c_char) -> FuseStatus {
    let mut status = FuseStatus::Ok;
    let outcome = guard(|| {
        if diagnostics.is_null() {
            return Err(invalid("diagnostics"));
        }
        *diagnostics = ptr::null_mut();
        let loaded = load_corpus(str_arg(manifest, "manifest")?);
        let text = render::diagnostics(&loaded.diagnostics, false);
        if loaded.io_failure() {
            status = FuseStatus::Io;
        } else if loaded.corpus.is_none() {
            status = FuseStatus::InvalidCorpus;
        }
        put_string(diagnostics, text)
    });
    if outcome != FuseStatus::Ok {
        return outcome;
    }
    if status != FuseStatus::Ok {
        set_error("corpus has errors; see diagnostics");
    }
    status
}

/// Runs `query` and writes the result rows to `*out`, as TSV with a header
/// or as JSON lines when `json` is true.
///
/// # Safety
/// `corpus` must be a live handle, `query` a NUL-terminated string and
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fuse_corpus_query(
    corpus: *const FuseCorpus,
    query: *const c_char,
    json: bool,
    out: *mut *mut c_char,
) -> FuseStatus {
    guard(|| {
        if out.is_null() {
            return Err(invalid("out"));
        }
        *out = ptr::null_mut();
        let c = corpus_arg(corpus)?;
        let q = parse_query(str_arg(query, "query")?).map_err(|e| (FuseStatus::Query, e.to_string()))?;
        put_string(out, render::rows(q.command, &run_query(c, &q), json))
    })
}

/// Writes corpus statistics to `*out`.
///
/// # Safety
/// `corpus` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fuse_corpus_stats(corpus: *const FuseCorpus, json: bool, out: *mut *mut c_char) -> FuseStatus {
    guard(|| {
        if out.is_null() {
            return Err(invalid("out"));
        }
        *out = ptr::null_mut();
        let c = corpus_arg(corpus)?;
        put_string(out, render::stats(&compute_stats(c), json))
    })
}

/// Ranks role names for predicate group `group` in language `lang`.
/// `used` is a comma-separated list of roles to skip and may be NULL.
///
/// # Safety
/// `corpus` must be a live handle; the strings NUL-terminated (or `used`
/// NULL); `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fuse_corpus_suggest(
    corpus: *const FuseCorpus,
    lang: *const c_char,
    group: *const c_char,
    used: *const c_char,
    json: bool,
    out: *mut *mut c_char,
) -> FuseStatus {
    guard(|| {
        if out.is_null() {
            return Err(invalid("out"));
        }
        *out = ptr::null_mut();
        let c = corpus_arg(corpus)?;
        let lang = str_arg(lang, "lang")?;
        let group = str_arg(group, "group")?;
        let used: BTreeSet<String> = if used.is_null() {
            BTreeSet::new()
        } else {
            str_arg(used, "used")?.split(',').filter(|s| !s.is_empty()).map(str::to_string).collect()
        };
        let s = suggest_roles(c, lang, group, &used).map_err(|e| (FuseStatus::Query, e.to_string()))?;
        put_string(out, render::suggestions(&s, json))
    })
}

/// Message for the last failed call on this thread, or NULL. The pointer
/// stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn fuse_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned through an `out` parameter. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn fuse_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn fuse_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
