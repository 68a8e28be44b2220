//! C ABI for the similog library: opaque knowledge-base handles, status
//! codes, and string-returning query evaluation, so other languages can bind
//! without knowing any Rust types.
//!
//! Conventions:
//! - every returned string is freshly allocated and must be released with
//!   [`similog_string_free`];
//! - every handle from [`similog_kb_parse`] or [`similog_kb_close`] must be
//!   released with [`similog_kb_free`];
//! - on any status other than `SIMILOG_STATUS_OK`, a human-readable message
//!   is available from [`similog_last_error_message`] (thread-local).

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::ptr;

use similog::eval::{outcome_json, Evaluator, QueryResult};
use similog::kb::{parse_kb, parse_query, serialize_kb, KnowledgeBase};
use similog::similarity::transitive_closure;
use similog::tnorm::TNorm;

/// Status code returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimilogStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// An input string was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The knowledge base or the query failed to parse.
    ParseError = 3,
    /// The similarity relation (or other declared object) failed validation.
    ValidationError = 4,
    /// The query could not be evaluated.
    EvalError = 5,
    /// The query result is a world set, not a number.
    NotNumeric = 6,
    /// A scalar argument (epsilon, t-norm name) was out of range.
    InvalidArgument = 7,
}

/// Opaque knowledge-base handle.
pub struct SimilogKb {
    kb: KnowledgeBase,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<Vec<u8>>) {
    let message = CString::new(message).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(message));
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

fn check_epsilon(epsilon: f64) -> Result<(), SimilogStatus> {
    if epsilon.is_finite() && epsilon > 0.0 && epsilon < 0.5 {
        Ok(())
    } else {
        set_error(format!("epsilon {epsilon} must lie in (0, 0.5)"));
        Err(SimilogStatus::InvalidArgument)
    }
}

/// Reads a UTF-8 C string; records an error and returns the status on failure.
unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, SimilogStatus> {
    if ptr.is_null() {
        set_error("null string argument");
        return Err(SimilogStatus::NullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8");
        SimilogStatus::InvalidUtf8
    })
}

fn string_out(text: String, out: *mut *mut c_char) -> SimilogStatus {
    if out.is_null() {
        set_error("null output pointer");
        return SimilogStatus::NullPointer;
    }
    match CString::new(text) {
        Ok(text) => {
            unsafe { *out = text.into_raw() };
            clear_error();
            SimilogStatus::Ok
        }
        Err(_) => {
            set_error("output contains an interior NUL byte");
            SimilogStatus::EvalError
        }
    }
}

/// Parses a knowledge-base text into a new handle.
///
/// # Safety
/// `text` must point to a NUL-terminated string and `out` to writable
/// pointer storage; both must stay valid for the duration of the call.
#[no_mangle]
pub unsafe extern "C" fn similog_kb_parse(
    text: *const c_char,
    out: *mut *mut SimilogKb,
) -> SimilogStatus {
    if out.is_null() {
        set_error("null output pointer");
        return SimilogStatus::NullPointer;
    }
    *out = ptr::null_mut();
    let text = match read_str(text) {
        Ok(text) => text,
        Err(status) => return status,
    };
    match parse_kb(text) {
        Ok(kb) => {
            *out = Box::into_raw(Box::new(SimilogKb { kb }));
            clear_error();
            SimilogStatus::Ok
        }
        Err(err) => {
            set_error(err.to_string());
            SimilogStatus::ParseError
        }
    }
}

/// Releases a knowledge-base handle. A null handle is a no-op.
///
/// # Safety
/// `kb` must be a handle returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn similog_kb_free(kb: *mut SimilogKb) {
    if !kb.is_null() {
        drop(Box::from_raw(kb));
    }
}

/// Overrides the handle's t-norm (`"min"`, `"lukasiewicz"`, `"product"`).
///
/// # Safety
/// `kb` must be a live handle from this library; `name` a NUL-terminated
/// string.
#[no_mangle]
pub unsafe extern "C" fn similog_kb_set_tnorm(
    kb: *mut SimilogKb,
    name: *const c_char,
) -> SimilogStatus {
    let Some(handle) = kb.as_mut() else {
        set_error("null knowledge-base handle");
        return SimilogStatus::NullPointer;
    };
    let name = match read_str(name) {
        Ok(name) => name,
        Err(status) => return status,
    };
    match name.parse::<TNorm>() {
        Ok(norm) => {
            handle.kb.set_norm(norm);
            clear_error();
            SimilogStatus::Ok
        }
        Err(err) => {
            set_error(err.to_string());
            SimilogStatus::InvalidArgument
        }
    }
}

/// Validates the handle's similarity relation at tolerance `epsilon`.
///
/// # Safety
/// `kb` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn similog_kb_validate(kb: *const SimilogKb, epsilon: f64) -> SimilogStatus {
    let Some(handle) = kb.as_ref() else {
        set_error("null knowledge-base handle");
        return SimilogStatus::NullPointer;
    };
    if let Err(status) = check_epsilon(epsilon) {
        return status;
    }
    match Evaluator::new(&handle.kb, epsilon) {
        Ok(_) => {
            clear_error();
            SimilogStatus::Ok
        }
        Err(err) => {
            set_error(err.to_string());
            SimilogStatus::ValidationError
        }
    }
}

/// Computes the transitive closure, returning a new handle whose similarity
/// matrix is closed. `raised_out` (optional) receives the number of raised
/// entries.
///
/// # Safety
/// `kb` must be a live handle; `out` must point to writable pointer storage;
/// `raised_out` may be null.
#[no_mangle]
pub unsafe extern "C" fn similog_kb_close(
    kb: *const SimilogKb,
    epsilon: f64,
    out: *mut *mut SimilogKb,
    raised_out: *mut usize,
) -> SimilogStatus {
    if out.is_null() {
        set_error("null output pointer");
        return SimilogStatus::NullPointer;
    }
    *out = ptr::null_mut();
    let Some(handle) = kb.as_ref() else {
        set_error("null knowledge-base handle");
        return SimilogStatus::NullPointer;
    };
    if let Err(status) = check_epsilon(epsilon) {
        return status;
    }
    match transitive_closure(handle.kb.similarity_matrix(), handle.kb.norm(), epsilon) {
        Ok(closure) => {
            if !raised_out.is_null() {
                *raised_out = closure.raised_entries;
            }
            let closed = handle.kb.with_similarity(closure.relation.matrix().clone());
            *out = Box::into_raw(Box::new(SimilogKb { kb: closed }));
            clear_error();
            SimilogStatus::Ok
        }
        Err(err) => {
            set_error(err.to_string());
            SimilogStatus::ValidationError
        }
    }
}

/// Serializes the knowledge base into its canonical text form.
///
/// # Safety
/// `kb` must be a live handle; `out` must point to writable pointer storage.
#[no_mangle]
pub unsafe extern "C" fn similog_kb_serialize(
    kb: *const SimilogKb,
    out: *mut *mut c_char,
) -> SimilogStatus {
    let Some(handle) = kb.as_ref() else {
        set_error("null knowledge-base handle");
        return SimilogStatus::NullPointer;
    };
    string_out(serialize_kb(&handle.kb), out)
}

/// Exports the knowledge base as a JSON document (world labels, similarity
/// matrix, propositions, tight necessity/possibility values).
///
/// # Safety
/// `kb` must be a live handle; `out` must point to writable pointer storage.
#[no_mangle]
pub unsafe extern "C" fn similog_kb_export_json(
    kb: *const SimilogKb,
    epsilon: f64,
    out: *mut *mut c_char,
) -> SimilogStatus {
    let Some(handle) = kb.as_ref() else {
        set_error("null knowledge-base handle");
        return SimilogStatus::NullPointer;
    };
    if let Err(status) = check_epsilon(epsilon) {
        return status;
    }
    match Evaluator::new(&handle.kb, epsilon) {
        Ok(evaluator) => string_out(evaluator.export_json().to_string(), out),
        Err(err) => {
            set_error(err.to_string());
            SimilogStatus::ValidationError
        }
    }
}

fn evaluate<'kb>(
    kb: &'kb KnowledgeBase,
    query_text: &str,
    epsilon: f64,
) -> Result<
    (
        similog::kb::Query,
        similog::eval::QueryOutcome,
        &'kb KnowledgeBase,
    ),
    (SimilogStatus, String),
> {
    let evaluator = Evaluator::new(kb, epsilon)
        .map_err(|err| (SimilogStatus::ValidationError, err.to_string()))?;
    let query =
        parse_query(query_text, kb).map_err(|err| (SimilogStatus::ParseError, err.to_string()))?;
    let outcome = evaluator
        .evaluate(&query)
        .map_err(|err| (SimilogStatus::EvalError, err.to_string()))?;
    Ok((query, outcome, kb))
}

/// Evaluates a numeric query (`I`, `C`, `nec`, `poss`, `gmp_nec`,
/// `gmp_poss`); truth-valued queries yield 1.0 or 0.0. World-set queries
/// (`pi`) return `SIMILOG_STATUS_NOT_NUMERIC` — use
/// [`similog_query_json`] for those.
///
/// # Safety
/// `kb` must be a live handle; `query` a NUL-terminated string; `value_out`
/// must point to writable storage.
#[no_mangle]
pub unsafe extern "C" fn similog_query_number(
    kb: *const SimilogKb,
    query: *const c_char,
    epsilon: f64,
    value_out: *mut f64,
) -> SimilogStatus {
    let Some(handle) = kb.as_ref() else {
        set_error("null knowledge-base handle");
        return SimilogStatus::NullPointer;
    };
    if value_out.is_null() {
        set_error("null output pointer");
        return SimilogStatus::NullPointer;
    }
    let query = match read_str(query) {
        Ok(query) => query,
        Err(status) => return status,
    };
    if let Err(status) = check_epsilon(epsilon) {
        return status;
    }
    match evaluate(&handle.kb, query, epsilon) {
        Ok((_, outcome, _)) => match outcome.result {
            QueryResult::Degree(v) => {
                *value_out = v.get();
                clear_error();
                SimilogStatus::Ok
            }
            QueryResult::Truth(b) => {
                *value_out = if b { 1.0 } else { 0.0 };
                clear_error();
                SimilogStatus::Ok
            }
            QueryResult::Worlds(_) => {
                set_error("query returns a world set; use similog_query_json");
                SimilogStatus::NotNumeric
            }
        },
        Err((status, message)) => {
            set_error(message);
            status
        }
    }
}

/// Evaluates any query and returns the structured JSON record (including the
/// witness) as a string.
///
/// # Safety
/// `kb` must be a live handle; `query` a NUL-terminated string; `out` must
/// point to writable pointer storage.
#[no_mangle]
pub unsafe extern "C" fn similog_query_json(
    kb: *const SimilogKb,
    query: *const c_char,
    epsilon: f64,
    out: *mut *mut c_char,
) -> SimilogStatus {
    let Some(handle) = kb.as_ref() else {
        set_error("null knowledge-base handle");
        return SimilogStatus::NullPointer;
    };
    let query_text = match read_str(query) {
        Ok(query) => query,
        Err(status) => return status,
    };
    if let Err(status) = check_epsilon(epsilon) {
        return status;
    }
    match evaluate(&handle.kb, query_text, epsilon) {
        Ok((query, outcome, kb)) => {
            let record = outcome_json(query_text, &query, &outcome, kb.universe());
            string_out(record.to_string(), out)
        }
        Err((status, message)) => {
            set_error(message);
            status
        }
    }
}

/// Releases a string returned by this library. A null pointer is a no-op.
///
/// # Safety
/// `s` must be a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn similog_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Returns a copy of the last error message recorded on this thread (empty
/// string if none). The caller frees it with [`similog_string_free`].
#[no_mangle]
pub extern "C" fn similog_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|slot| {
        let message = slot
            .borrow()
            .clone()
            .unwrap_or_else(|| CString::new("").unwrap());
        message.into_raw()
    })
}

/// The library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn similog_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}
