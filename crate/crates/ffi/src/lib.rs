//! C interface to the autoseq core.
//!
//! Automata live behind the opaque [`AutoseqAutomaton`] handle. Every call
//! returns an [`AutoseqStatus`]; on failure the message is available from
//! [`autoseq_last_error`] until the next failing call on the same thread.
//! Strings handed out by the library are released with
//! [`autoseq_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use autoseq::group_structure::analyze_dfao;
use autoseq::numbertheory::{kloosterman, predict_prime_frequencies};
use autoseq::{catalog, Dfao, Error, StructureConfig};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AutoseqStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    Hypothesis = 4,
    CapExceeded = 5,
    NotFound = 6,
    Panic = 7,
}

/// Opaque automaton handle.
pub struct AutoseqAutomaton {
    dfao: Dfao,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(err: &Error) -> AutoseqStatus {
    match err {
        Error::Schema(_) | Error::Json(_) | Error::InvalidArgument(_) => AutoseqStatus::InvalidInput,
        Error::Hypothesis(_) | Error::NonStabilizing(_) => AutoseqStatus::Hypothesis,
        Error::CapExceeded { .. } => AutoseqStatus::CapExceeded,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (AutoseqStatus, String)>) -> AutoseqStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => AutoseqStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            AutoseqStatus::Panic
        }
    }
}

fn core(err: Error) -> (AutoseqStatus, String) {
    (status_of(&err), err.to_string())
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, (AutoseqStatus, String)> {
    if s.is_null() {
        return Err((AutoseqStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(s).to_str().map_err(|_| (AutoseqStatus::InvalidUtf8, "string is not UTF-8".into()))
}

unsafe fn handle<'a>(h: *const AutoseqAutomaton) -> Result<&'a AutoseqAutomaton, (AutoseqStatus, String)> {
    h.as_ref().ok_or((AutoseqStatus::NullPointer, "null automaton handle".into()))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), (AutoseqStatus, String)> {
    if out.is_null() {
        return Err((AutoseqStatus::NullPointer, "null output pointer".into()));
    }
    let c = CString::new(s).map_err(|_| (AutoseqStatus::InvalidInput, "output contains NUL".into()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn write_handle(out: *mut *mut AutoseqAutomaton, dfao: Dfao) -> Result<(), (AutoseqStatus, String)> {
    if out.is_null() {
        return Err((AutoseqStatus::NullPointer, "null output pointer".into()));
    }
    *out = Box::into_raw(Box::new(AutoseqAutomaton { dfao }));
    Ok(())
}

/// Message of the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn autoseq_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parse an automaton from its JSON description.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn autoseq_automaton_from_json(
    json: *const c_char,
    out: *mut *mut AutoseqAutomaton,
) -> AutoseqStatus {
    guard(|| {
        let dfao = Dfao::from_json(read_str(json)?).map_err(core)?;
        write_handle(out, dfao)
    })
}

/// Load one of the bundled automata by name.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn autoseq_automaton_bundled(
    name: *const c_char,
    out: *mut *mut AutoseqAutomaton,
) -> AutoseqStatus {
    guard(|| {
        let name = read_str(name)?;
        let text = catalog::source(name).ok_or((AutoseqStatus::NotFound, format!("no bundled automaton {name}")))?;
        write_handle(out, Dfao::from_json(text).map_err(core)?)
    })
}

/// Release a handle. Null is ignored.
///
/// # Safety
/// `h` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn autoseq_automaton_free(h: *mut AutoseqAutomaton) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Output label of the `n`-th term, as a new string.
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn autoseq_term(h: *const AutoseqAutomaton, n: u64, out: *mut *mut c_char) -> AutoseqStatus {
    guard(|| {
        let a = handle(h)?;
        write_string(out, a.dfao.term(n).symbol.clone())
    })
}

/// State reached on the base-k digits of `n`.
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn autoseq_state_at(h: *const AutoseqAutomaton, n: u64, out: *mut usize) -> AutoseqStatus {
    guard(|| {
        let a = handle(h)?;
        if out.is_null() {
            return Err((AutoseqStatus::NullPointer, "null output pointer".into()));
        }
        *out = a.dfao.state_at(n);
        Ok(())
    })
}

/// Group structure report of a strongly connected automaton, as JSON.
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn autoseq_structure_json(h: *const AutoseqAutomaton, out: *mut *mut c_char) -> AutoseqStatus {
    guard(|| {
        let a = handle(h)?;
        let an = analyze_dfao(&a.dfao, &StructureConfig::default()).map_err(core)?;
        let json = serde_json::to_string(&an.report).map_err(|e| (AutoseqStatus::InvalidInput, e.to_string()))?;
        write_string(out, json)
    })
}

/// Predicted label frequencies along the primes, as JSON.
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn autoseq_predict_primes_json(
    h: *const AutoseqAutomaton,
    out: *mut *mut c_char,
) -> AutoseqStatus {
    guard(|| {
        let a = handle(h)?;
        let pred = predict_prime_frequencies(&a.dfao, &StructureConfig::default()).map_err(core)?;
        let json = serde_json::to_string(&pred).map_err(|e| (AutoseqStatus::InvalidInput, e.to_string()))?;
        write_string(out, json)
    })
}

/// Kloosterman sum `S(a, b; c)`.
///
/// # Safety
/// `re` and `im` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn autoseq_kloosterman(a: i64, b: i64, c: u64, re: *mut f64, im: *mut f64) -> AutoseqStatus {
    guard(|| {
        if re.is_null() || im.is_null() {
            return Err((AutoseqStatus::NullPointer, "null output pointer".into()));
        }
        let s = kloosterman(a, b, c).map_err(core)?;
        *re = s.re;
        *im = s.im;
        Ok(())
    })
}

/// Release a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn autoseq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
