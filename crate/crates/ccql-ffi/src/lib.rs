//! C ABI for the ccql engine.
//!
//! Conventions:
//! * The engine is an opaque handle created from a backend config file and
//!   destroyed with [`ccql_engine_free`].
//! * Every fallible call returns a [`CcqlStatus`]; on failure the
//!   thread-local message behind [`ccql_last_error`] explains it. Status
//!   values mirror the CLI exit codes (0 success, 1 query-side failure,
//!   2 unusable environment) plus FFI-specific argument and panic codes.
//! * Strings returned through out-parameters are NUL-terminated UTF-8
//!   owned by the caller; release them with [`ccql_string_free`].
//! * All entry points are panic-fenced: a bug reports `CCQL_STATUS_PANIC`
//!   instead of unwinding across the ABI.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::ptr;

use ccql::backends::config::load_backends;
use ccql::backends::fixture::FixtureStore;
use ccql::engine::Engine;
use ccql::parser::{parse_program, render_statement, statement_to_json, tokenize, QueryStatement};

/// Outcome of an FFI call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CcqlStatus {
    /// The call succeeded.
    CcqlStatusOk = 0,
    /// The input statements failed to tokenize, parse, validate, or
    /// execute, or a fixture check found violations.
    CcqlStatusQueryError = 1,
    /// The environment is unusable: bad config, unreadable file.
    CcqlStatusEnvError = 2,
    /// A required pointer argument was NULL or not valid UTF-8.
    CcqlStatusInvalidArgument = 3,
    /// An internal invariant failed; the library caught a panic.
    CcqlStatusPanic = 4,
}

use CcqlStatus::*;

/// Opaque query engine bound to a fixed set of chain backends.
pub struct CcqlEngine {
    inner: Engine,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: &str) {
    let owned = CString::new(message.replace('\0', " ")).expect("NUL bytes replaced");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = owned);
}

fn clear_last_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = CString::default());
}

fn fail(status: CcqlStatus, message: impl AsRef<str>) -> CcqlStatus {
    set_last_error(message.as_ref());
    status
}

/// Message for the most recent failure on this thread, or an empty string
/// after a success. The pointer stays valid until the next ccql call on
/// the same thread.
#[no_mangle]
pub extern "C" fn ccql_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ccql_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must be NULL or a pointer previously returned through one of this
/// library's out-parameters, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ccql_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

unsafe fn required_str<'a>(ptr: *const c_char, what: &str) -> Result<&'a str, String> {
    if ptr.is_null() {
        return Err(format!("{what} is NULL"));
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| format!("{what} is not valid UTF-8"))
}

fn export_string(out: *mut *mut c_char, text: String) -> Result<(), String> {
    let owned = CString::new(text).map_err(|_| "output contains a NUL byte".to_string())?;
    unsafe { *out = owned.into_raw() };
    Ok(())
}

fn fenced(body: impl FnOnce() -> CcqlStatus) -> CcqlStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(panic) => {
            let detail = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".to_string());
            fail(CcqlStatusPanic, format!("internal panic: {detail}"))
        }
    }
}

fn parse_text(text: &str) -> Result<Vec<QueryStatement>, String> {
    let join = |diags: Vec<ccql::Diagnostic>| {
        diags.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
    };
    let tokens = tokenize(text).map_err(|d| format!("tokenize: {}", join(d)))?;
    let statements = parse_program(&tokens).map_err(|d| format!("parse: {}", join(d)))?;
    if statements.is_empty() {
        return Err("no statements in input".to_string());
    }
    Ok(statements)
}

/// Creates an engine from a backend config file (same format the CLI
/// takes). Returns NULL on failure; see [`ccql_last_error`].
///
/// # Safety
/// `config_path` must be NULL or a NUL-terminated string valid for the
/// duration of the call.
#[no_mangle]
pub unsafe extern "C" fn ccql_engine_new(config_path: *const c_char) -> *mut CcqlEngine {
    let mut engine: *mut CcqlEngine = ptr::null_mut();
    fenced(|| {
        let path = match required_str(config_path, "config_path") {
            Ok(p) => PathBuf::from(p),
            Err(e) => return fail(CcqlStatusInvalidArgument, e),
        };
        match load_backends(&path) {
            Ok(backends) => {
                engine = Box::into_raw(Box::new(CcqlEngine { inner: Engine::new(backends) }));
                clear_last_error();
                CcqlStatusOk
            }
            Err(e) => fail(CcqlStatusEnvError, e.to_string()),
        }
    });
    engine
}

/// Destroys an engine created by [`ccql_engine_new`]. NULL is ignored.
///
/// # Safety
/// `engine` must be NULL or a live pointer from [`ccql_engine_new`], not
/// yet freed.
#[no_mangle]
pub unsafe extern "C" fn ccql_engine_free(engine: *mut CcqlEngine) {
    if !engine.is_null() {
        drop(Box::from_raw(engine));
    }
}

/// Executes statements and stores a JSON array of result tables (one
/// `{columns, rows, warnings}` document per statement) in `*out_json`.
///
/// # Safety
/// `engine` must be a live pointer from [`ccql_engine_new`]; `statements`
/// a NUL-terminated string; `out_json` a valid location to store a
/// pointer. On success the caller owns `*out_json` and must release it
/// with [`ccql_string_free`].
#[no_mangle]
pub unsafe extern "C" fn ccql_execute(
    engine: *const CcqlEngine,
    statements: *const c_char,
    out_json: *mut *mut c_char,
) -> CcqlStatus {
    fenced(|| {
        if engine.is_null() {
            return fail(CcqlStatusInvalidArgument, "engine is NULL");
        }
        if out_json.is_null() {
            return fail(CcqlStatusInvalidArgument, "out_json is NULL");
        }
        let text = match required_str(statements, "statements") {
            Ok(t) => t,
            Err(e) => return fail(CcqlStatusInvalidArgument, e),
        };
        let parsed = match parse_text(text) {
            Ok(p) => p,
            Err(e) => return fail(CcqlStatusQueryError, e),
        };
        let engine = &(*engine).inner;
        let mut tables = Vec::with_capacity(parsed.len());
        for statement in &parsed {
            match engine.execute_statement(statement) {
                Ok(table) => tables.push(table.to_json()),
                Err(e) => {
                    return fail(
                        CcqlStatusQueryError,
                        format!("{e} (in: {})", render_statement(statement)),
                    )
                }
            }
        }
        match export_string(out_json, serde_json::Value::Array(tables).to_string()) {
            Ok(()) => {
                clear_last_error();
                CcqlStatusOk
            }
            Err(e) => fail(CcqlStatusQueryError, e),
        }
    })
}

/// Parses statements without executing them and stores a JSON array of
/// syntax trees (the `ccql parse --ast` format) in `*out_json`.
///
/// # Safety
/// `statements` must be a NUL-terminated string and `out_json` a valid
/// location to store a pointer. On success the caller owns `*out_json`
/// and must release it with [`ccql_string_free`].
#[no_mangle]
pub unsafe extern "C" fn ccql_parse(
    statements: *const c_char,
    out_json: *mut *mut c_char,
) -> CcqlStatus {
    fenced(|| {
        if out_json.is_null() {
            return fail(CcqlStatusInvalidArgument, "out_json is NULL");
        }
        let text = match required_str(statements, "statements") {
            Ok(t) => t,
            Err(e) => return fail(CcqlStatusInvalidArgument, e),
        };
        let parsed = match parse_text(text) {
            Ok(p) => p,
            Err(e) => return fail(CcqlStatusQueryError, e),
        };
        let trees: Vec<serde_json::Value> = parsed.iter().map(statement_to_json).collect();
        match export_string(out_json, serde_json::Value::Array(trees).to_string()) {
            Ok(()) => {
                clear_last_error();
                CcqlStatusOk
            }
            Err(e) => fail(CcqlStatusQueryError, e),
        }
    })
}

/// Validates a fixture document or directory. On a clean check stores the
/// census line in `*out_report` and returns OK; when violations exist,
/// stores one line per violation and returns the query-error status.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out_report` a valid
/// location to store a pointer. Whenever a report is stored the caller
/// owns `*out_report` and must release it with [`ccql_string_free`].
#[no_mangle]
pub unsafe extern "C" fn ccql_check_fixtures(
    path: *const c_char,
    out_report: *mut *mut c_char,
) -> CcqlStatus {
    fenced(|| {
        if out_report.is_null() {
            return fail(CcqlStatusInvalidArgument, "out_report is NULL");
        }
        let path = match required_str(path, "path") {
            Ok(p) => Path::new(p).to_path_buf(),
            Err(e) => return fail(CcqlStatusInvalidArgument, e),
        };
        let report = match FixtureStore::check(&path) {
            Ok(r) => r,
            Err(e) => return fail(CcqlStatusEnvError, e.to_string()),
        };
        let clean = report.violations.is_empty();
        let text =
            if clean { format!("ok: {}", report.summary()) } else { report.violations.join("\n") };
        if let Err(e) = export_string(out_report, text) {
            return fail(CcqlStatusQueryError, e);
        }
        if clean {
            clear_last_error();
            CcqlStatusOk
        } else {
            fail(
                CcqlStatusQueryError,
                format!("{} violations in {}", report.violations.len(), report.summary()),
            )
        }
    })
}
