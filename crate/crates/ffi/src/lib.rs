//! C interface to `vcsp-core`.
//!
//! Instances and solutions are opaque heap handles owned by the caller and
//! released with their `_free` function. Every fallible call returns a
//! [`VcspStatus`]; on failure [`vcsp_last_error`] describes the problem.
//! Strings returned as `char *` are released with [`vcsp_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use vcsp_core::format::{parse, serialize, InstanceFile};
use vcsp_core::jwp::check_jwp;
use vcsp_core::solve::{is_precondition_error, solve_file, Method, SolveOptions, SolveReport};
use vcsp_core::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VcspStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    /// The requested operation does not apply to this instance.
    Inapplicable = 4,
    InvalidArgument = 5,
    Internal = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VcspMethod {
    Auto = 0,
    Flow = 1,
    Noc = 2,
    Brute = 3,
    Mwis = 4,
}

impl From<VcspMethod> for Method {
    fn from(m: VcspMethod) -> Self {
        match m {
            VcspMethod::Auto => Method::Auto,
            VcspMethod::Flow => Method::Flow,
            VcspMethod::Noc => Method::Noc,
            VcspMethod::Brute => Method::Brute,
            VcspMethod::Mwis => Method::Mwis,
        }
    }
}

/// A parsed VCSP or NOC instance.
pub struct VcspProblem {
    file: InstanceFile,
}

/// An optimal assignment with its cost.
pub struct VcspSolution {
    report: SolveReport,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> VcspStatus {
    match e {
        Error::Parse { .. } => VcspStatus::Parse,
        e if is_precondition_error(e) => VcspStatus::Inapplicable,
        Error::InvalidArgument(_) | Error::OutOfRange(_) => VcspStatus::InvalidArgument,
        _ => VcspStatus::Internal,
    }
}

fn fail(e: Error) -> VcspStatus {
    set_error(e.to_string());
    status_of(&e)
}

// Runs `body`, turning a panic into `Internal` so it never unwinds into C.
fn guard(body: impl FnOnce() -> VcspStatus) -> VcspStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            VcspStatus::Internal
        }
    }
}

fn null() -> VcspStatus {
    set_error("null pointer argument");
    VcspStatus::NullPointer
}

/// Message for the last failed call on this thread; empty if none. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn vcsp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn vcsp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses instance text (VCSP or NOC format) into a new handle.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn vcsp_parse(text: *const c_char, out: *mut *mut VcspProblem) -> VcspStatus {
    guard(|| {
        if text.is_null() || out.is_null() {
            return null();
        }
        let Ok(text) = CStr::from_ptr(text).to_str() else {
            set_error("instance text is not UTF-8");
            return VcspStatus::InvalidUtf8;
        };
        match parse(text) {
            Ok(file) => {
                *out = Box::into_raw(Box::new(VcspProblem { file }));
                VcspStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `problem` must come from [`vcsp_parse`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn vcsp_free(problem: *mut VcspProblem) {
    if !problem.is_null() {
        drop(Box::from_raw(problem));
    }
}

/// Number of variables, or 0 for a null handle.
///
/// # Safety
/// `problem` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn vcsp_num_vars(problem: *const VcspProblem) -> usize {
    match problem.as_ref().map(|p| &p.file) {
        Some(InstanceFile::Vcsp(p)) => p.num_vars(),
        Some(InstanceFile::Noc(p)) => p.num_vars(),
        None => 0,
    }
}

/// Whether a VCSP instance has the joint-winner property.
///
/// # Safety
/// `problem` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn vcsp_check_jwp(problem: *const VcspProblem, out: *mut bool) -> VcspStatus {
    guard(|| {
        let (Some(p), false) = (problem.as_ref(), out.is_null()) else {
            return null();
        };
        match &p.file {
            InstanceFile::Vcsp(inst) => {
                *out = check_jwp(inst).is_none();
                VcspStatus::Ok
            }
            InstanceFile::Noc(_) => fail(Error::UnsupportedPattern("joint-winner check needs a VCSP instance".into())),
        }
    })
}

/// Canonical text of the instance.
///
/// # Safety
/// `problem` must be null or a live handle. Returns null on failure.
#[no_mangle]
pub unsafe extern "C" fn vcsp_serialize(problem: *const VcspProblem) -> *mut c_char {
    match problem.as_ref() {
        Some(p) => CString::new(serialize(&p.file)).map_or(ptr::null_mut(), CString::into_raw),
        None => {
            null();
            ptr::null_mut()
        }
    }
}

/// Solves the instance. `max_brute` caps brute-force enumeration; 0 keeps
/// the default.
///
/// # Safety
/// `problem` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn vcsp_solve(
    problem: *const VcspProblem,
    method: VcspMethod,
    max_brute: u64,
    out: *mut *mut VcspSolution,
) -> VcspStatus {
    guard(|| {
        let (Some(p), false) = (problem.as_ref(), out.is_null()) else {
            return null();
        };
        let mut opts = SolveOptions { method: method.into(), ..Default::default() };
        if max_brute > 0 {
            opts.max_brute = u128::from(max_brute);
        }
        match solve_file(&p.file, &opts) {
            Ok(report) => {
                *out = Box::into_raw(Box::new(VcspSolution { report }));
                VcspStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `solution` must come from [`vcsp_solve`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn vcsp_solution_free(solution: *mut VcspSolution) {
    if !solution.is_null() {
        drop(Box::from_raw(solution));
    }
}

/// Length of the assignment.
///
/// # Safety
/// `solution` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn vcsp_solution_len(solution: *const VcspSolution) -> usize {
    solution.as_ref().map_or(0, |s| s.report.assignment.len())
}

/// Writes the value index of variable `var` (0-based) to `out`.
///
/// # Safety
/// `solution` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn vcsp_solution_value(solution: *const VcspSolution, var: usize, out: *mut usize) -> VcspStatus {
    let (Some(s), false) = (solution.as_ref(), out.is_null()) else {
        return null();
    };
    match s.report.assignment.get(var) {
        Some(&v) => {
            *out = v;
            VcspStatus::Ok
        }
        None => fail(Error::OutOfRange(format!("variable {var} of {}", s.report.assignment.len()))),
    }
}

/// Whether the optimum is infinite (no feasible assignment).
///
/// # Safety
/// `solution` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn vcsp_solution_is_infinite(solution: *const VcspSolution) -> bool {
    solution.as_ref().is_some_and(|s| s.report.cost.is_infinite())
}

/// Optimal cost as text: an integer, `p/q` or `inf`. Free with
/// [`vcsp_string_free`]; null for a null handle.
///
/// # Safety
/// `solution` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn vcsp_solution_cost(solution: *const VcspSolution) -> *mut c_char {
    match solution.as_ref() {
        Some(s) => CString::new(s.report.cost.to_string()).map_or(ptr::null_mut(), CString::into_raw),
        None => ptr::null_mut(),
    }
}

/// The method that produced the solution.
///
/// # Safety
/// `solution` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn vcsp_solution_method(solution: *const VcspSolution) -> VcspMethod {
    match solution.as_ref().map(|s| s.report.method) {
        Some(Method::Flow) => VcspMethod::Flow,
        Some(Method::Noc) => VcspMethod::Noc,
        Some(Method::Brute) => VcspMethod::Brute,
        Some(Method::Mwis) => VcspMethod::Mwis,
        _ => VcspMethod::Auto,
    }
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn vcsp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
