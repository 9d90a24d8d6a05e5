//! C ABI over the `tauq` library.
//!
//! Quivers are passed as opaque [`TauqQuiver`] handles. Every fallible call
//! returns a [`TauqStatus`]; on failure a message is available from
//! [`tauq_last_error`] until the next call on the same thread. Strings handed
//! out by the library are UTF-8 JSON and must be released with
//! [`tauq_string_free`].

use std::cell::RefCell;
use std::collections::BTreeSet;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use serde::Serialize;
use tauq::additive::{self, Flavor, LMinusConstraint};
use tauq::chains::{self, default_bound};
use tauq::io::{corpus, format};
use tauq::{classify, rejection, TauqError, TranslationQuiver, VertexId};

/// Opaque quiver handle.
pub struct TauqQuiver(TranslationQuiver);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TauqStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    UnknownVertex = 4,
    UnknownFixture = 5,
    Precondition = 6,
    Invariant = 7,
    Structure = 8,
    InvalidArgument = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TauqChainKind {
    Theta = 0,
    Eta = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TauqFlavor {
    Right = 0,
    Left = 1,
    Both = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TauqLMinus {
    Free = 0,
    Injectives = 1,
    Sinks = 2,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(TauqStatus, String);

impl From<TauqError> for Failure {
    fn from(e: TauqError) -> Self {
        let status = match &e {
            TauqError::UnknownVertex(_) => TauqStatus::UnknownVertex,
            TauqError::Precondition(_) => TauqStatus::Precondition,
            TauqError::Invariant(_) => TauqStatus::Invariant,
            TauqError::Structure(_) => TauqStatus::Structure,
            TauqError::Parse(_) => TauqStatus::Parse,
            TauqError::UnknownFixture(_) => TauqStatus::UnknownFixture,
        };
        Failure(status, e.to_string())
    }
}

impl From<format::ParseError> for Failure {
    fn from(e: format::ParseError) -> Self {
        TauqError::from(e).into()
    }
}

fn set_error(msg: Option<String>) {
    // interior NULs cannot cross the boundary
    let msg = msg.map(|m| CString::new(m.replace('\0', " ")).expect("no interior nul"));
    LAST_ERROR.with(|slot| *slot.borrow_mut() = msg);
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> TauqStatus {
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| (*s).to_owned()))
            .unwrap_or_else(|| "panic".to_owned());
        Err(Failure(TauqStatus::Panic, msg))
    });
    match outcome {
        Ok(()) => {
            set_error(None);
            TauqStatus::Ok
        }
        Err(Failure(status, msg)) => {
            set_error(Some(msg));
            status
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(TauqStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure(TauqStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn quiver_arg<'a>(q: *const TauqQuiver) -> Result<&'a TranslationQuiver, Failure> {
    q.as_ref()
        .map(|h| &h.0)
        .ok_or_else(|| Failure(TauqStatus::NullArgument, "quiver handle is null".into()))
}

fn out_arg<T>(out: *mut T) -> Result<(), Failure> {
    if out.is_null() {
        Err(Failure(
            TauqStatus::NullArgument,
            "output pointer is null".into(),
        ))
    } else {
        Ok(())
    }
}

unsafe fn write_json(out: *mut *mut c_char, value: &impl Serialize) -> Result<(), Failure> {
    let text =
        serde_json::to_string(value).map_err(|e| Failure(TauqStatus::Invariant, e.to_string()))?;
    let c = CString::new(text).map_err(|e| Failure(TauqStatus::Invariant, e.to_string()))?;
    *out = c.into_raw();
    Ok(())
}

fn bound_or_default(q: &TranslationQuiver, bound: usize) -> usize {
    if bound == 0 {
        default_bound(q)
    } else {
        bound
    }
}

unsafe fn emit_quiver(out: *mut *mut TauqQuiver, q: TranslationQuiver) {
    *out = Box::into_raw(Box::new(TauqQuiver(q)));
}

/// Parses quiver text. The result is not checked against the translation
/// quiver axioms; use [`tauq_validate_json`] for that.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn tauq_quiver_parse(
    text: *const c_char,
    out: *mut *mut TauqQuiver,
) -> TauqStatus {
    guard(|| {
        out_arg(out)?;
        *out = ptr::null_mut();
        let text = str_arg(text, "text")?;
        let q = format::parse_quiver(text)?.lower_unchecked()?;
        emit_quiver(out, q);
        Ok(())
    })
}

/// Loads a built-in fixture by name (case-insensitive).
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn tauq_corpus_load(
    name: *const c_char,
    out: *mut *mut TauqQuiver,
) -> TauqStatus {
    guard(|| {
        out_arg(out)?;
        *out = ptr::null_mut();
        let q = corpus::load(str_arg(name, "name")?)?;
        emit_quiver(out, q);
        Ok(())
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `q` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn tauq_quiver_free(q: *mut TauqQuiver) {
    if !q.is_null() {
        drop(Box::from_raw(q));
    }
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `q` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tauq_quiver_vertex_count(q: *const TauqQuiver) -> usize {
    q.as_ref().map_or(0, |h| h.0.len())
}

/// Axiom check and admissibility as JSON `{"validation": .., "admissibility": ..}`.
///
/// # Safety
/// `q` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn tauq_validate_json(
    q: *const TauqQuiver,
    out: *mut *mut c_char,
) -> TauqStatus {
    guard(|| {
        out_arg(out)?;
        let q = quiver_arg(q)?;
        let validation = q.validate();
        let admissibility = validation.ok.then(|| q.admissibility());
        write_json(
            out,
            &serde_json::json!({ "validation": validation, "admissibility": admissibility }),
        )
    })
}

/// Full classification report as JSON. A `bound` of 0 selects the default.
///
/// # Safety
/// `q` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn tauq_classify_json(
    q: *const TauqQuiver,
    bound: usize,
    out: *mut *mut c_char,
) -> TauqStatus {
    guard(|| {
        out_arg(out)?;
        let q = quiver_arg(q)?;
        write_json(out, &classify::classify(q, bound_or_default(q, bound))?)
    })
}

/// The θ- or η-ladder of one vertex as JSON.
///
/// # Safety
/// `q` must be a live handle, `vertex` a NUL-terminated string and `out` a
/// writable pointer.
#[no_mangle]
pub unsafe extern "C" fn tauq_chain_json(
    q: *const TauqQuiver,
    kind: TauqChainKind,
    vertex: *const c_char,
    bound: usize,
    out: *mut *mut c_char,
) -> TauqStatus {
    guard(|| {
        out_arg(out)?;
        let q = quiver_arg(q)?;
        let x = q.vertex(str_arg(vertex, "vertex")?)?;
        let bound = bound_or_default(q, bound);
        let chain = match kind {
            TauqChainKind::Theta => chains::theta_chain(q, &x, bound)?,
            TauqChainKind::Eta => chains::eta_chain(q, &x, bound)?,
        };
        write_json(out, &chain)
    })
}

/// Result of the Nakayama test for one vertex as JSON.
///
/// # Safety
/// As for [`tauq_chain_json`].
#[no_mangle]
pub unsafe extern "C" fn tauq_nakayama_json(
    q: *const TauqQuiver,
    vertex: *const c_char,
    bound: usize,
    out: *mut *mut c_char,
) -> TauqStatus {
    guard(|| {
        out_arg(out)?;
        let q = quiver_arg(q)?;
        let x = q.vertex(str_arg(vertex, "vertex")?)?;
        write_json(
            out,
            &chains::nakayama_minus(q, &x, bound_or_default(q, bound))?,
        )
    })
}

/// Additive-function search as JSON.
///
/// # Safety
/// `q` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn tauq_additive_json(
    q: *const TauqQuiver,
    flavor: TauqFlavor,
    lminus: TauqLMinus,
    out: *mut *mut c_char,
) -> TauqStatus {
    guard(|| {
        out_arg(out)?;
        let q = quiver_arg(q)?;
        let flavor = match flavor {
            TauqFlavor::Right => Flavor::Right,
            TauqFlavor::Left => Flavor::Left,
            TauqFlavor::Both => Flavor::Both,
        };
        let c = match lminus {
            TauqLMinus::Free => LMinusConstraint::Free,
            TauqLMinus::Injectives => LMinusConstraint::EqualToInjectives,
            TauqLMinus::Sinks => LMinusConstraint::EqualToSinks,
        };
        write_json(out, &additive::find(q, flavor, c))
    })
}

/// Deletion analysis for a comma-separated vertex list, as JSON.
///
/// # Safety
/// `q` must be a live handle, `vertices` a NUL-terminated string and `out`
/// a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn tauq_reject_json(
    q: *const TauqQuiver,
    vertices: *const c_char,
    bound: usize,
    out: *mut *mut c_char,
) -> TauqStatus {
    guard(|| {
        out_arg(out)?;
        let q = quiver_arg(q)?;
        let mut deleted: BTreeSet<VertexId> = BTreeSet::new();
        for id in str_arg(vertices, "vertices")?
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
        {
            deleted.insert(q.vertex(id)?);
        }
        if deleted.is_empty() {
            return Err(Failure(
                TauqStatus::InvalidArgument,
                "no vertices to delete".into(),
            ));
        }
        write_json(
            out,
            &rejection::analyze_deletion(q, &deleted, bound_or_default(q, bound))?,
        )
    })
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn tauq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failed call on this thread, or null.
#[no_mangle]
pub extern "C" fn tauq_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn tauq_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
