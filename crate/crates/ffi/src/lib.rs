//! C ABI for the sink-placement solvers.
//!
//! Instances are opaque handles created from the same JSON documents the
//! `ksink` binary reads; solver results come back as solution-document
//! JSON strings. Every function returns a [`KsinkStatus`]; on any failure
//! the thread-local message from [`ksink_last_error_message`] describes
//! what went wrong. Strings returned through out-parameters are owned by
//! the library and must be released with [`ksink_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use ksink_core::cli::{
    run_evaluate, run_exact, run_gen_hs, run_solve, run_verify_hs, to_canonical_json,
};
use ksink_core::{Epsilon, Error};

/// Status code returned by every `ksink_*` call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KsinkStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// An input string was not valid UTF-8.
    InvalidUtf8 = 2,
    /// A document or parameter failed to parse.
    ParseError = 3,
    /// The input parsed but is semantically invalid.
    InvalidInput = 4,
    /// The enumeration budget was exceeded.
    BudgetExceeded = 5,
    /// An unexpected internal failure.
    InternalError = 6,
}

/// Opaque handle to a parsed problem instance.
pub struct KsinkInstance {
    document_text: String,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap();
    });
}

fn classify(error: &ksink_core::cli::DocumentError) -> KsinkStatus {
    use ksink_core::cli::DocumentError::*;
    match error {
        Json(_) | WrongFormat { .. } | BadSinkToken { .. } => KsinkStatus::ParseError,
        UnknownEdgeVertex { .. } | UnknownSourceVertex { .. } | DuplicateSource { .. } => {
            KsinkStatus::InvalidInput
        }
        Solver(Error::BudgetExceeded { .. }) => KsinkStatus::BudgetExceeded,
        Solver(Error::MalformedRational(_)) => KsinkStatus::ParseError,
        Solver(_) => KsinkStatus::InvalidInput,
    }
}

/// Runs a fallible body, converting panics and errors into status codes.
fn guarded(body: impl FnOnce() -> KsinkStatus) -> KsinkStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            KsinkStatus::InternalError
        }
    }
}

unsafe fn read_utf8<'a>(pointer: *const c_char) -> Result<&'a str, KsinkStatus> {
    if pointer.is_null() {
        set_error("null string argument");
        return Err(KsinkStatus::NullArgument);
    }
    unsafe { CStr::from_ptr(pointer) }.to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8");
        KsinkStatus::InvalidUtf8
    })
}

fn write_string(out: *mut *mut c_char, text: String) -> KsinkStatus {
    let c_text = match CString::new(text) {
        Ok(c) => c,
        Err(_) => {
            set_error("output contained an interior nul byte");
            return KsinkStatus::InternalError;
        }
    };
    unsafe { *out = c_text.into_raw() };
    KsinkStatus::Ok
}

/// The message of the most recent failure on this thread. The pointer is
/// owned by the library and stays valid until the next `ksink_*` call on
/// the same thread; do not free it.
#[no_mangle]
pub extern "C" fn ksink_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Parses an instance document (JSON) into an opaque handle.
///
/// # Safety
/// `document_json` must point to a nul-terminated string and `out` to a
/// writable pointer slot. On success `*out` owns the handle; release it
/// with [`ksink_instance_free`].
#[no_mangle]
pub unsafe extern "C" fn ksink_instance_parse(
    document_json: *const c_char,
    out: *mut *mut KsinkInstance,
) -> KsinkStatus {
    guarded(|| {
        if out.is_null() {
            set_error("null output argument");
            return KsinkStatus::NullArgument;
        }
        let text = match unsafe { read_utf8(document_json) } {
            Ok(text) => text,
            Err(status) => return status,
        };
        // Parse eagerly so the handle is known-good from here on.
        let document = match ksink_core::cli::InstanceDocument::parse(text) {
            Ok(document) => document,
            Err(error) => {
                set_error(&error.to_string());
                return classify(&error);
            }
        };
        if let Err(error) = document.to_instance() {
            set_error(&error.to_string());
            return classify(&error);
        }
        let handle = Box::new(KsinkInstance {
            document_text: text.to_owned(),
        });
        unsafe { *out = Box::into_raw(handle) };
        KsinkStatus::Ok
    })
}

/// Releases a handle returned by [`ksink_instance_parse`]. Null is a no-op.
///
/// # Safety
/// `instance` must be a pointer from [`ksink_instance_parse`] that has not
/// been freed already.
#[no_mangle]
pub unsafe extern "C" fn ksink_instance_free(instance: *mut KsinkInstance) {
    if !instance.is_null() {
        drop(unsafe { Box::from_raw(instance) });
    }
}

unsafe fn instance_text<'a>(
    instance: *const KsinkInstance,
) -> Result<&'a str, KsinkStatus> {
    if instance.is_null() {
        set_error("null instance handle");
        return Err(KsinkStatus::NullArgument);
    }
    Ok(unsafe { &(*instance).document_text })
}

/// Approximate solve; writes the solution document JSON to `out_solution`.
///
/// `epsilon` is an exact rational like `"1/4"` or `"0.25"`; `parallelism`
/// is the worker count (0 is treated as 1) and does not change the output
/// bytes.
///
/// # Safety
/// `instance` must be a live handle; `epsilon` a nul-terminated string;
/// `out_solution` a writable slot. Free `*out_solution` with
/// [`ksink_string_free`].
#[no_mangle]
pub unsafe extern "C" fn ksink_solve_fptas(
    instance: *const KsinkInstance,
    epsilon: *const c_char,
    parallelism: u32,
    out_solution: *mut *mut c_char,
) -> KsinkStatus {
    guarded(|| {
        if out_solution.is_null() {
            set_error("null output argument");
            return KsinkStatus::NullArgument;
        }
        let text = match unsafe { instance_text(instance) } {
            Ok(text) => text,
            Err(status) => return status,
        };
        let epsilon_text = match unsafe { read_utf8(epsilon) } {
            Ok(text) => text,
            Err(status) => return status,
        };
        let epsilon = match Epsilon::parse(epsilon_text) {
            Ok(eps) => eps,
            Err(error) => {
                set_error(&error.to_string());
                return KsinkStatus::ParseError;
            }
        };
        match run_solve(text, epsilon, None, parallelism.max(1) as usize) {
            Ok((document, _warnings)) => {
                write_string(out_solution, to_canonical_json(&document))
            }
            Err(error) => {
                set_error(&error.to_string());
                classify(&error)
            }
        }
    })
}

/// Exact solve; `budget` of 0 selects the default evaluation budget.
///
/// # Safety
/// As for [`ksink_solve_fptas`].
#[no_mangle]
pub unsafe extern "C" fn ksink_solve_exact(
    instance: *const KsinkInstance,
    budget: u64,
    parallelism: u32,
    out_solution: *mut *mut c_char,
) -> KsinkStatus {
    guarded(|| {
        if out_solution.is_null() {
            set_error("null output argument");
            return KsinkStatus::NullArgument;
        }
        let text = match unsafe { instance_text(instance) } {
            Ok(text) => text,
            Err(status) => return status,
        };
        let budget = if budget == 0 { None } else { Some(budget) };
        match run_exact(text, budget, None, parallelism.max(1) as usize) {
            Ok((document, _warnings)) => {
                write_string(out_solution, to_canonical_json(&document))
            }
            Err(error) => {
                set_error(&error.to_string());
                classify(&error)
            }
        }
    })
}

/// Evaluates an explicit sink set given as whitespace-separated tokens
/// (vertex names or `e<index>:<offset>`).
///
/// # Safety
/// As for [`ksink_solve_fptas`].
#[no_mangle]
pub unsafe extern "C" fn ksink_evaluate(
    instance: *const KsinkInstance,
    sink_tokens: *const c_char,
    out_solution: *mut *mut c_char,
) -> KsinkStatus {
    guarded(|| {
        if out_solution.is_null() {
            set_error("null output argument");
            return KsinkStatus::NullArgument;
        }
        let text = match unsafe { instance_text(instance) } {
            Ok(text) => text,
            Err(status) => return status,
        };
        let tokens_text = match unsafe { read_utf8(sink_tokens) } {
            Ok(text) => text,
            Err(status) => return status,
        };
        let tokens: Vec<String> = tokens_text
            .split_whitespace()
            .map(str::to_owned)
            .collect();
        match run_evaluate(text, &tokens) {
            Ok(document) => write_string(out_solution, to_canonical_json(&document)),
            Err(error) => {
                set_error(&error.to_string());
                classify(&error)
            }
        }
    })
}

/// Builds the sink-placement instance document of a hitting-set document.
///
/// # Safety
/// `hitting_set_json` must be nul-terminated; `out_instance` writable.
/// Free `*out_instance` with [`ksink_string_free`].
#[no_mangle]
pub unsafe extern "C" fn ksink_generate_from_hitting_set(
    hitting_set_json: *const c_char,
    out_instance: *mut *mut c_char,
) -> KsinkStatus {
    guarded(|| {
        if out_instance.is_null() {
            set_error("null output argument");
            return KsinkStatus::NullArgument;
        }
        let text = match unsafe { read_utf8(hitting_set_json) } {
            Ok(text) => text,
            Err(status) => return status,
        };
        match run_gen_hs(text) {
            Ok(document) => write_string(out_instance, to_canonical_json(&document)),
            Err(error) => {
                set_error(&error.to_string());
                classify(&error)
            }
        }
    })
}

/// Runs the hitting-set reduction equivalence check; writes 1 into
/// `out_consistent` when both decision routes agree. `budget` of 0 selects
/// the default.
///
/// # Safety
/// `hitting_set_json` must be nul-terminated; `out_consistent` writable.
#[no_mangle]
pub unsafe extern "C" fn ksink_verify_hitting_set(
    hitting_set_json: *const c_char,
    budget: u64,
    out_consistent: *mut u8,
) -> KsinkStatus {
    guarded(|| {
        if out_consistent.is_null() {
            set_error("null output argument");
            return KsinkStatus::NullArgument;
        }
        let text = match unsafe { read_utf8(hitting_set_json) } {
            Ok(text) => text,
            Err(status) => return status,
        };
        let budget = if budget == 0 { None } else { Some(budget) };
        match run_verify_hs(text, budget) {
            Ok(report) => {
                unsafe { *out_consistent = report.consistent as u8 };
                KsinkStatus::Ok
            }
            Err(error) => {
                set_error(&error.to_string());
                classify(&error)
            }
        }
    })
}

/// Releases a string returned through any out-parameter. Null is a no-op.
///
/// # Safety
/// `text` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn ksink_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(unsafe { CString::from_raw(text) });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    const INSTANCE: &str = r#"{
  "format": "ksink-instance/1",
  "vertices": ["u", "v"],
  "edges": [{ "u": "u", "v": "v", "capacity": 1, "transit": 4 }],
  "sources": [{ "vertex": "u", "supply": 2 }],
  "k": 1
}"#;

    fn c(text: &str) -> CString {
        CString::new(text).unwrap()
    }

    fn parse_instance(text: &str) -> *mut KsinkInstance {
        let mut handle: *mut KsinkInstance = ptr::null_mut();
        let status = unsafe { ksink_instance_parse(c(text).as_ptr(), &mut handle) };
        assert_eq!(status, KsinkStatus::Ok);
        assert!(!handle.is_null());
        handle
    }

    fn take_string(raw: *mut c_char) -> String {
        assert!(!raw.is_null());
        let text = unsafe { CStr::from_ptr(raw) }.to_str().unwrap().to_owned();
        unsafe { ksink_string_free(raw) };
        text
    }

    #[test]
    fn parse_solve_and_evaluate_through_the_abi() {
        let handle = parse_instance(INSTANCE);

        let mut solution: *mut c_char = ptr::null_mut();
        let status = unsafe {
            ksink_solve_fptas(handle, c("1/2").as_ptr(), 2, &mut solution)
        };
        assert_eq!(status, KsinkStatus::Ok);
        let solved = take_string(solution);
        assert!(solved.contains("\"fptas eps=1/2\""), "{solved}");
        assert!(solved.contains("\"evacuation_time\": 0"), "{solved}");

        let mut evaluated: *mut c_char = ptr::null_mut();
        let status = unsafe { ksink_evaluate(handle, c("v").as_ptr(), &mut evaluated) };
        assert_eq!(status, KsinkStatus::Ok);
        let evaluation = take_string(evaluated);
        assert!(evaluation.contains("\"evacuation_time\": 5"), "{evaluation}");

        unsafe { ksink_instance_free(handle) };
    }

    #[test]
    fn exact_solver_and_budget_refusal() {
        let handle = parse_instance(INSTANCE);
        let mut solution: *mut c_char = ptr::null_mut();
        let status = unsafe { ksink_solve_exact(handle, 0, 1, &mut solution) };
        assert_eq!(status, KsinkStatus::Ok);
        let solved = take_string(solution);
        assert!(solved.contains("\"evacuation_time\": 0"), "{solved}");

        let mut refused: *mut c_char = ptr::null_mut();
        let status = unsafe { ksink_solve_exact(handle, 2, 1, &mut refused) };
        assert_eq!(status, KsinkStatus::BudgetExceeded);
        assert!(refused.is_null());
        let message = unsafe { CStr::from_ptr(ksink_last_error_message()) }
            .to_str()
            .unwrap();
        assert!(message.contains("budget"), "{message}");

        unsafe { ksink_instance_free(handle) };
    }

    #[test]
    fn error_paths_set_statuses_and_messages() {
        let mut handle: *mut KsinkInstance = ptr::null_mut();
        let status = unsafe { ksink_instance_parse(c("{").as_ptr(), &mut handle) };
        assert_eq!(status, KsinkStatus::ParseError);
        assert!(handle.is_null());

        let status = unsafe { ksink_instance_parse(ptr::null(), &mut handle) };
        assert_eq!(status, KsinkStatus::NullArgument);

        let good = parse_instance(INSTANCE);
        let mut out: *mut c_char = ptr::null_mut();
        let status = unsafe { ksink_solve_fptas(good, c("0").as_ptr(), 1, &mut out) };
        assert_eq!(status, KsinkStatus::ParseError);
        let status = unsafe { ksink_evaluate(good, c("nope").as_ptr(), &mut out) };
        assert_eq!(status, KsinkStatus::ParseError);
        unsafe { ksink_instance_free(good) };
    }

    #[test]
    fn hitting_set_generation_and_verification() {
        let hs = r#"{
  "format": "ksink-hitting-set/1",
  "universe": ["a", "b", "c"],
  "family": [["a", "b"], ["b", "c"]],
  "k": 1
}"#;
        let mut generated: *mut c_char = ptr::null_mut();
        let status =
            unsafe { ksink_generate_from_hitting_set(c(hs).as_ptr(), &mut generated) };
        assert_eq!(status, KsinkStatus::Ok);
        let document = take_string(generated);
        assert!(document.contains("ksink-instance/1"), "{document}");

        let mut consistent = 0u8;
        let status =
            unsafe { ksink_verify_hitting_set(c(hs).as_ptr(), 0, &mut consistent) };
        assert_eq!(status, KsinkStatus::Ok);
        assert_eq!(consistent, 1);
    }
}
