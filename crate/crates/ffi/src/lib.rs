//! C ABI for the solver.
//!
//! The interface follows the usual opaque-handle pattern: parse an
//! instance once into an [`AdspInstance`], run any number of operations
//! against it, and free it.  Results come back as heap-allocated JSON
//! strings (identical to the `adsp` command-line output) that must be
//! released with [`adsp_string_free`].  Every entry point returns a
//! status code:
//!
//! * `0` — success
//! * `1` — invalid input (malformed JSON, violated precondition, null
//!   pointer)
//! * `2` — internal error (a self-check or a panic; always a bug)
//! * `3` — a resource cap was exceeded
//!
//! On failure [`adsp_last_error`] returns a thread-local message that
//! stays valid until the next call on the same thread.  All functions are
//! safe to call from several threads at once as long as each
//! [`AdspInstance`] is not freed while in use.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use adsp::api;
use adsp::io::{self, ModeHint};
use adsp::rep::{construct_rigid, verify_solution};
use adsp::{Caps, ClassTuple, Error, TieBreak};

/// Opaque parsed instance: a tuple of conjugacy classes plus the mode
/// hint from the file, if any.
pub struct AdspInstance {
    tuple: ClassTuple,
    hint: Option<ModeHint>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let clean = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = clean);
}

/// Run a fallible body with panic containment and error capture.
fn guarded(body: impl FnOnce() -> Result<(), Error>) -> i32 {
    set_error("");
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => 0,
        Ok(Err(e)) => {
            set_error(&e.to_string());
            e.exit_code()
        }
        Err(_) => {
            set_error("internal error: unexpected panic");
            2
        }
    }
}

/// # Safety
/// `p` must be a valid NUL-terminated string or null.
unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Error> {
    if p.is_null() {
        return Err(Error::invalid(format!("{what} is a null pointer")));
    }
    unsafe { CStr::from_ptr(p) }
        .to_str()
        .map_err(|_| Error::invalid(format!("{what} is not valid UTF-8")))
}

unsafe fn out_arg<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Error> {
    unsafe { p.as_mut() }.ok_or_else(|| Error::invalid(format!("{what} is a null pointer")))
}

unsafe fn instance_arg<'a>(p: *const AdspInstance) -> Result<&'a AdspInstance, Error> {
    unsafe { p.as_ref() }.ok_or_else(|| Error::invalid("instance is a null pointer"))
}

fn caps_with(box_cap: u64) -> Caps {
    let mut caps = Caps::default();
    if box_cap > 0 {
        caps.box_cap = box_cap;
    }
    caps
}

fn mode_of(mode: i32) -> Result<ModeHint, Error> {
    match mode {
        0 => Ok(ModeHint::Auto),
        1 => Ok(ModeHint::General),
        2 => Ok(ModeHint::Nilpotent),
        3 => Ok(ModeHint::Generic),
        other => Err(Error::invalid(format!(
            "mode must be 0 (auto), 1 (general), 2 (nilpotent), or 3 (generic), got {other}"
        ))),
    }
}

fn emit(out: &mut *mut c_char, doc: String) -> Result<(), Error> {
    let c = CString::new(doc)
        .map_err(|_| Error::internal("output document contained a NUL byte"))?;
    *out = c.into_raw();
    Ok(())
}

/// Parse an instance document (same JSON schema as the command-line
/// `decide` input) into a handle written to `*out`.
///
/// # Safety
/// `json` must be a valid NUL-terminated string; `out` must be a valid
/// pointer.  On success the handle must eventually be released with
/// [`adsp_instance_free`].
#[no_mangle]
pub unsafe extern "C" fn adsp_instance_parse(
    json: *const c_char,
    out: *mut *mut AdspInstance,
) -> i32 {
    guarded(|| {
        let text = unsafe { str_arg(json, "instance JSON") }?;
        let out = unsafe { out_arg(out, "out handle") }?;
        *out = ptr::null_mut();
        let (tuple, hint) = io::parse_instance(text)?;
        *out = Box::into_raw(Box::new(AdspInstance { tuple, hint }));
        Ok(())
    })
}

/// Release a handle returned by [`adsp_instance_parse`].  Null is a
/// no-op.
///
/// # Safety
/// `inst` must be a handle from [`adsp_instance_parse`] not freed
/// before, or null.
#[no_mangle]
pub unsafe extern "C" fn adsp_instance_free(inst: *mut AdspInstance) {
    if !inst.is_null() {
        drop(unsafe { Box::from_raw(inst) });
    }
}

/// Decide existence of an irreducible solution.  `mode`: 0 auto,
/// 1 general, 2 nilpotent, 3 generic; a mode hint stored in the instance
/// applies when `mode` is 0.  `box_cap` of 0 means the default cap.  On
/// success `*out_json` receives the decision document.
///
/// # Safety
/// `inst` must be a live handle; `out_json` must be a valid pointer.  A
/// returned string must be released with [`adsp_string_free`].
#[no_mangle]
pub unsafe extern "C" fn adsp_decide(
    inst: *const AdspInstance,
    mode: i32,
    box_cap: u64,
    out_json: *mut *mut c_char,
) -> i32 {
    guarded(|| {
        let inst = unsafe { instance_arg(inst) }?;
        let out = unsafe { out_arg(out_json, "out string") }?;
        *out = ptr::null_mut();
        let mode = match mode_of(mode)? {
            ModeHint::Auto => inst.hint.unwrap_or(ModeHint::Auto),
            explicit => explicit,
        };
        let caps = caps_with(box_cap);
        let (built, decision) = api::decide_tuple(&inst.tuple, mode, &caps)?;
        let doc = io::decision_json(&built.quiver, &built.alpha, &built.lambda, &decision);
        emit(out, io::to_canonical_string(&doc))
    })
}

/// Report rigidity: `*out_rigid` becomes 1 when the instance has exactly
/// one irreducible solution up to conjugation, else 0.
///
/// # Safety
/// `inst` must be a live handle; `out_rigid` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn adsp_rigid(
    inst: *const AdspInstance,
    box_cap: u64,
    out_rigid: *mut i32,
) -> i32 {
    guarded(|| {
        let inst = unsafe { instance_arg(inst) }?;
        let out = unsafe { out_arg(out_rigid, "out flag") }?;
        *out = 0;
        let caps = caps_with(box_cap);
        let built = api::instance_of(&inst.tuple)?;
        let rigid = adsp::decide::is_rigid(&built.quiver, &built.alpha, &built.lambda, &caps)?;
        *out = i32::from(rigid);
        Ok(())
    })
}

/// Construct the unique irreducible solution of a rigid instance.  On
/// success `*out_json` receives a `{"matrices": …}` document.
///
/// # Safety
/// `inst` must be a live handle; `out_json` must be a valid pointer.  A
/// returned string must be released with [`adsp_string_free`].
#[no_mangle]
pub unsafe extern "C" fn adsp_construct(
    inst: *const AdspInstance,
    box_cap: u64,
    out_json: *mut *mut c_char,
) -> i32 {
    guarded(|| {
        let inst = unsafe { instance_arg(inst) }?;
        let out = unsafe { out_arg(out_json, "out string") }?;
        *out = ptr::null_mut();
        let caps = caps_with(box_cap);
        let sol = construct_rigid(&inst.tuple, &caps, TieBreak::default())?;
        emit(out, io::to_canonical_string(&sol))
    })
}

/// Check a candidate solution against the instance.  `*out_json`
/// receives `{"classes_ok": …, "sum_zero": …, "irreducible": …}`; the
/// status is 0 even when the verdicts are negative.
///
/// # Safety
/// `inst` must be a live handle; `solution_json` a valid NUL-terminated
/// string; `out_json` a valid pointer.  A returned string must be
/// released with [`adsp_string_free`].
#[no_mangle]
pub unsafe extern "C" fn adsp_verify(
    inst: *const AdspInstance,
    solution_json: *const c_char,
    out_json: *mut *mut c_char,
) -> i32 {
    guarded(|| {
        let inst = unsafe { instance_arg(inst) }?;
        let text = unsafe { str_arg(solution_json, "solution JSON") }?;
        let out = unsafe { out_arg(out_json, "out string") }?;
        *out = ptr::null_mut();
        let sol = io::parse_solution(text)?;
        let report = verify_solution(&inst.tuple, &sol)?;
        emit(out, io::to_canonical_string(&report))
    })
}

/// Root-system introspection: `α`, `λ`, root class, defect `p(α)`, and
/// the number of admissible roots below `α`.
///
/// # Safety
/// `inst` must be a live handle; `out_json` must be a valid pointer.  A
/// returned string must be released with [`adsp_string_free`].
#[no_mangle]
pub unsafe extern "C" fn adsp_roots(
    inst: *const AdspInstance,
    box_cap: u64,
    out_json: *mut *mut c_char,
) -> i32 {
    guarded(|| {
        let inst = unsafe { instance_arg(inst) }?;
        let out = unsafe { out_arg(out_json, "out string") }?;
        *out = ptr::null_mut();
        let caps = caps_with(box_cap);
        let doc = api::roots_summary(&inst.tuple, caps.box_cap)?;
        emit(out, io::to_canonical_string(&doc))
    })
}

/// Release a string returned by any of the operations.  Null is a no-op.
///
/// # Safety
/// `s` must be a string returned by this library not freed before, or
/// null.
#[no_mangle]
pub unsafe extern "C" fn adsp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Message for the most recent failure on this thread, empty after a
/// success.  The pointer stays valid until the next library call on the
/// same thread; do not free it.
#[no_mangle]
pub extern "C" fn adsp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
