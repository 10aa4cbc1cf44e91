//! C interface. Instances are opaque handles created from instance-file
//! text; every call returns a `MonrepStatus` and writes results through
//! out-pointers. After a failure, `monrep_last_error` describes it.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use monrep::dsl::{parse_spec, FieldSpec, Instance};
use monrep::field::{Field, PrimeField, Rationals};
use monrep::oracle::{GpOracle, GpStatus, OracleConfig, OracleMode};
use monrep::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonrepStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Validation = 4,
    NotFound = 5,
    ModeMismatch = 6,
    BufferTooSmall = 7,
    Internal = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonrepVerdict {
    Gp = 0,
    NotGp = 1,
    Unknown = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonrepMode {
    Auto = 0,
    Semisimple = 1,
    SelfInjective = 2,
    Bounded = 3,
}

enum Inner {
    Prime(Instance<PrimeField>),
    Rational(Instance<Rationals>),
}

/// A parsed and validated instance file.
pub struct MonrepInstance {
    inner: Inner,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn fail(status: MonrepStatus, msg: impl Into<String>) -> MonrepStatus {
    set_error(msg.into());
    status
}

fn from_error(e: Error) -> MonrepStatus {
    let status = match e {
        Error::Parse { .. } => MonrepStatus::Parse,
        Error::ModeMismatch { .. } => MonrepStatus::ModeMismatch,
        _ => MonrepStatus::Validation,
    };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> MonrepStatus) -> MonrepStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            fail(MonrepStatus::Internal, format!("internal error: {msg}"))
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, MonrepStatus> {
    if p.is_null() {
        return Err(fail(MonrepStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(MonrepStatus::InvalidUtf8, "argument is not UTF-8"))
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

macro_rules! with_instance {
    ($inst:expr, |$i:ident| $body:expr) => {
        match &$inst.inner {
            Inner::Prime($i) => $body,
            Inner::Rational($i) => $body,
        }
    };
}

unsafe fn instance<'a>(p: *const MonrepInstance) -> Result<&'a MonrepInstance, MonrepStatus> {
    p.as_ref()
        .ok_or_else(|| fail(MonrepStatus::NullPointer, "null instance"))
}

fn rep<'a, K: Field>(i: &'a Instance<K>, name: &str) -> Result<&'a monrep::lambda::LambdaRep<K>, MonrepStatus> {
    i.rep(name).map_err(|e| fail(MonrepStatus::NotFound, e.to_string()))
}

/// The message of the last failed call on this thread, or null. Valid
/// until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn monrep_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn monrep_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses and validates instance-file text.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn monrep_instance_parse(text: *const c_char, out: *mut *mut MonrepInstance) -> MonrepStatus {
    guard(|| {
        if out.is_null() {
            return fail(MonrepStatus::NullPointer, "null output pointer");
        }
        let text = tri!(str_arg(text));
        let spec = match parse_spec(text) {
            Ok(s) => s,
            Err(e) => return from_error(e),
        };
        let inner = match spec.field {
            FieldSpec::Prime(p) => PrimeField::new(p).and_then(|f| spec.instantiate(f)).map(Inner::Prime),
            FieldSpec::Rational => spec.instantiate(Rationals).map(Inner::Rational),
        };
        match inner {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(MonrepInstance { inner }));
                MonrepStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Releases an instance. Null is ignored.
///
/// # Safety
/// `inst` must come from `monrep_instance_parse` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn monrep_instance_free(inst: *mut MonrepInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Number of vertices of the quiver.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn monrep_vertex_count(inst: *const MonrepInstance, out: *mut usize) -> MonrepStatus {
    guard(|| {
        let inst = tri!(instance(inst));
        if out.is_null() {
            return fail(MonrepStatus::NullPointer, "null output pointer");
        }
        *out = with_instance!(inst, |i| i.lambda.vertex_count());
        MonrepStatus::Ok
    })
}

/// Dimensions of the branch of representation `name` at vertex index
/// `vertex`, one per vertex of the base algebra. `len` receives the count
/// even when `cap` is too small.
///
/// # Safety
/// Pointers must be valid; `dims` must hold `cap` entries.
#[no_mangle]
pub unsafe extern "C" fn monrep_branch_dims(
    inst: *const MonrepInstance,
    name: *const c_char,
    vertex: usize,
    dims: *mut usize,
    cap: usize,
    len: *mut usize,
) -> MonrepStatus {
    guard(|| {
        let inst = tri!(instance(inst));
        let name = tri!(str_arg(name));
        if len.is_null() || (dims.is_null() && cap > 0) {
            return fail(MonrepStatus::NullPointer, "null output pointer");
        }
        let d: Vec<usize> = tri!(with_instance!(inst, |i| {
            let x = tri!(rep(i, name));
            match x.branches().get(vertex) {
                Some(b) => Ok(b.dims().to_vec()),
                None => Err(fail(
                    MonrepStatus::NotFound,
                    format!("vertex index {vertex} out of range"),
                )),
            }
        }));
        *len = d.len();
        if cap < d.len() {
            return fail(MonrepStatus::BufferTooSmall, format!("need {} entries", d.len()));
        }
        ptr::copy_nonoverlapping(d.as_ptr(), dims, d.len());
        MonrepStatus::Ok
    })
}

/// Whether representation `name` satisfies (m1) and (m2).
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn monrep_check_monic(
    inst: *const MonrepInstance,
    name: *const c_char,
    out: *mut bool,
) -> MonrepStatus {
    guard(|| {
        let inst = tri!(instance(inst));
        let name = tri!(str_arg(name));
        if out.is_null() {
            return fail(MonrepStatus::NullPointer, "null output pointer");
        }
        *out = with_instance!(inst, |i| i.lambda.is_monic(tri!(rep(i, name))));
        MonrepStatus::Ok
    })
}

/// Gorenstein-projectivity of representation `name`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn monrep_check_gp(
    inst: *const MonrepInstance,
    name: *const c_char,
    mode: MonrepMode,
    depth: usize,
    seed: u64,
    out: *mut MonrepVerdict,
) -> MonrepStatus {
    guard(|| {
        let inst = tri!(instance(inst));
        let name = tri!(str_arg(name));
        if out.is_null() {
            return fail(MonrepStatus::NullPointer, "null output pointer");
        }
        let cfg = OracleConfig {
            mode: match mode {
                MonrepMode::Auto => OracleMode::Auto,
                MonrepMode::Semisimple => OracleMode::Semisimple,
                MonrepMode::SelfInjective => OracleMode::SelfInjective,
                MonrepMode::Bounded => OracleMode::Bounded,
            },
            depth: depth.max(1),
            seed,
            ..OracleConfig::default()
        };
        let status = with_instance!(inst, |i| {
            let x = tri!(rep(i, name));
            let oracle = match GpOracle::new(i.lambda.base(), cfg) {
                Ok(o) => o,
                Err(e) => return from_error(e),
            };
            i.lambda.is_gp(x, &oracle).status
        });
        *out = match status {
            GpStatus::Gp => MonrepVerdict::Gp,
            GpStatus::NotGp => MonrepVerdict::NotGp,
            GpStatus::Unknown { .. } => MonrepVerdict::Unknown,
        };
        MonrepStatus::Ok
    })
}
