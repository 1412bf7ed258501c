//! C ABI over the bound library.
//!
//! Joint pmfs live behind an opaque handle created by `swc_joint_new` or
//! `swc_joint_parse` and released with `swc_joint_free`. Every entry point
//! returns an [`SwcStatus`]; on failure `swc_last_error` holds a message for
//! the calling thread. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use sw_converse::converse::{self, BoundReport, Witness};
use sw_converse::dsbs::{self, DsbsSpec};
use sw_converse::oracle::{exact_opt_sw, OracleOptions};
use sw_converse::probability::{parse_pmf, JointPmf, Pmf};
use sw_converse::relaxations::{Side, SwInstance};
use sw_converse::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SwcStatus {
    Ok = 0,
    NullPointer = 1,
    NegativeMass = 2,
    MassSumMismatch = 3,
    ZeroProbability = 4,
    DimensionMismatch = 5,
    ShapeMismatch = 6,
    NumericalBreakdown = 7,
    InstanceTooLarge = 8,
    EnumerationTooLarge = 9,
    InfeasibleInput = 10,
    InvalidArgument = 11,
    ParseError = 12,
    UnknownBound = 13,
    Panic = 14,
}

impl From<&Error> for SwcStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::NegativeMass { .. } => SwcStatus::NegativeMass,
            Error::MassSumMismatch { .. } => SwcStatus::MassSumMismatch,
            Error::ZeroProbability(_) => SwcStatus::ZeroProbability,
            Error::DimensionMismatch(_) => SwcStatus::DimensionMismatch,
            Error::ShapeMismatch(_) => SwcStatus::ShapeMismatch,
            Error::NumericalBreakdown(_) => SwcStatus::NumericalBreakdown,
            Error::InstanceTooLarge { .. } => SwcStatus::InstanceTooLarge,
            Error::EnumerationTooLarge { .. } => SwcStatus::EnumerationTooLarge,
            Error::InfeasibleInput { .. } => SwcStatus::InfeasibleInput,
            Error::InvalidArgument(_) => SwcStatus::InvalidArgument,
            Error::Parse { .. } => SwcStatus::ParseError,
        }
    }
}

/// Opaque joint pmf.
pub struct SwcJointPmf(JointPmf);

/// A bound value. `t` is the optimizing threshold when the bound has one,
/// NaN otherwise.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SwcBound {
    pub raw: f64,
    pub clamped: f64,
    pub t: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(SwcStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(SwcStatus::from(&e), e.to_string())
    }
}

fn null() -> Failure {
    Failure(SwcStatus::NullPointer, "null pointer argument".into())
}

/// Run `f`, turning errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SwcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(String::new());
            SwcStatus::Ok
        }
        Ok(Err(Failure(code, msg))) => {
            let name = unsafe { CStr::from_ptr(swc_status_name(code)) }.to_string_lossy();
            set_error(format!("{}: {}", name, msg));
            code
        }
        Err(_) => {
            set_error("Panic: internal error".into());
            SwcStatus::Panic
        }
    }
}

unsafe fn c_str<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s).to_str().map_err(|_| Failure(SwcStatus::InvalidArgument, "string is not UTF-8".into()))
}

unsafe fn joint<'a>(h: *const SwcJointPmf) -> Result<&'a JointPmf, Failure> {
    h.as_ref().map(|h| &h.0).ok_or_else(null)
}

fn to_bound(r: &BoundReport) -> SwcBound {
    let t = match r.witness {
        Witness::Threshold { t } => t,
        _ => f64::NAN,
    };
    SwcBound { raw: r.raw_value, clamped: r.clamped_value, t }
}

/// `<status name>: <detail>` for the last failing call on this thread; empty
/// after a success.
/// Valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn swc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Build a joint pmf from `n1 * n2` row-major masses.
///
/// # Safety
/// `mass` must point to `n1 * n2` readable doubles and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn swc_joint_new(n1: usize, n2: usize, mass: *const f64, out: *mut *mut SwcJointPmf) -> SwcStatus {
    guard(|| {
        if mass.is_null() || out.is_null() {
            return Err(null());
        }
        let len = n1.checked_mul(n2).ok_or_else(|| Failure(SwcStatus::InvalidArgument, "size overflow".into()))?;
        let v = std::slice::from_raw_parts(mass, len).to_vec();
        let j = JointPmf::new(n1, n2, v)?;
        *out = Box::into_raw(Box::new(SwcJointPmf(j)));
        Ok(())
    })
}

/// Parse a `pmf2` text description.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn swc_joint_parse(text: *const c_char, out: *mut *mut SwcJointPmf) -> SwcStatus {
    guard(|| {
        let s = c_str(text)?;
        if out.is_null() {
            return Err(null());
        }
        match parse_pmf(s)? {
            Pmf::Joint(j) => {
                *out = Box::into_raw(Box::new(SwcJointPmf(j)));
                Ok(())
            }
            Pmf::Single(_) => Err(Failure(SwcStatus::InvalidArgument, "expected a pmf2 description".into())),
        }
    })
}

/// Release a handle; null is ignored.
///
/// # Safety
/// `h` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn swc_joint_free(h: *mut SwcJointPmf) {
    if !h.is_null() {
        let _ = catch_unwind(AssertUnwindSafe(|| drop(Box::from_raw(h))));
    }
}

/// Alphabet sizes of a joint pmf.
///
/// # Safety
/// `h` must be a live handle; `n1`, `n2` writable.
#[no_mangle]
pub unsafe extern "C" fn swc_joint_dims(h: *const SwcJointPmf, n1: *mut usize, n2: *mut usize) -> SwcStatus {
    guard(|| {
        let j = joint(h)?;
        if n1.is_null() || n2.is_null() {
            return Err(null());
        }
        let (a, b) = j.sizes();
        *n1 = a;
        *n2 = b;
        Ok(())
    })
}

fn evaluate(inst: &SwInstance, name: &str) -> Result<BoundReport, Failure> {
    let r = match name {
        "meta-sw" => converse::meta_sw(inst)?,
        "meta-je" => converse::meta_je(inst)?,
        "meta-sid12" => converse::meta_sid(inst, Side::One)?,
        "meta-sid21" => converse::meta_sid(inst, Side::Two)?,
        "max-converse" => converse::max_converse(inst)?,
        "mk" => converse::mk_classic(inst)?,
        "mk-improved" => converse::mk_improved(inst)?,
        "sid-classic12" => converse::sid_classic(inst, Side::One)?,
        "sid-classic21" => converse::sid_classic(inst, Side::Two)?,
        "sid-improved12" => converse::sid_improved(inst, Side::One)?,
        "sid-improved21" => converse::sid_improved(inst, Side::Two)?,
        "meta-sw-eta-family" => converse::meta_sw_eta_family(inst)?,
        _ => return Err(Failure(SwcStatus::UnknownBound, format!("unknown bound `{}`", name))),
    };
    Ok(r)
}

/// Evaluate a named Slepian-Wolf bound (`meta-sw`, `meta-je`, `meta-sid12`,
/// `meta-sid21`, `max-converse`, `mk`, `mk-improved`, `sid-classic12`,
/// `sid-classic21`, `sid-improved12`, `sid-improved21`, `meta-sw-eta-family`).
///
/// # Safety
/// `h` must be a live handle, `name` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn swc_bound(
    h: *const SwcJointPmf,
    m1: usize,
    m2: usize,
    name: *const c_char,
    out: *mut SwcBound,
) -> SwcStatus {
    guard(|| {
        let j = joint(h)?;
        let name = c_str(name)?;
        if out.is_null() {
            return Err(null());
        }
        let inst = SwInstance::new(j.clone(), m1, m2)?;
        *out = to_bound(&evaluate(&inst, name)?);
        Ok(())
    })
}

/// Exact optimal error probability by exhaustive search; `cap` bounds the
/// number of encoder pairs tried.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn swc_exact_opt_sw(h: *const SwcJointPmf, m1: usize, m2: usize, cap: u64, out: *mut f64) -> SwcStatus {
    guard(|| {
        let j = joint(h)?;
        if out.is_null() {
            return Err(null());
        }
        let inst = SwInstance::new(j.clone(), m1, m2)?;
        *out = exact_opt_sw(&inst, &OracleOptions { cap: cap as u128, prune: false })?;
        Ok(())
    })
}

/// Doubly symmetric binary source bound at blocklength `n`, crossover `p`
/// and rates in bits; `name` is `dsbs-converse`, `dsbs-je` or `dsbs-mk`.
///
/// # Safety
/// `name` must be NUL-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn swc_dsbs_bound(
    n: usize,
    p: f64,
    r1: f64,
    r2: f64,
    name: *const c_char,
    out: *mut SwcBound,
) -> SwcStatus {
    guard(|| {
        let name = c_str(name)?;
        if out.is_null() {
            return Err(null());
        }
        let spec = DsbsSpec::new(n, p, r1, r2)?;
        let r = match name {
            "dsbs-converse" => dsbs::dsbs_converse(&spec),
            "dsbs-je" => dsbs::dsbs_je_bound(&spec),
            "dsbs-mk" => dsbs::dsbs_mk(&spec),
            _ => return Err(Failure(SwcStatus::UnknownBound, format!("unknown bound `{}`", name))),
        };
        *out = to_bound(&r);
        Ok(())
    })
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn swc_status_name(status: SwcStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        SwcStatus::Ok => b"Ok\0",
        SwcStatus::NullPointer => b"NullPointer\0",
        SwcStatus::NegativeMass => b"NegativeMass\0",
        SwcStatus::MassSumMismatch => b"MassSumMismatch\0",
        SwcStatus::ZeroProbability => b"ZeroProbability\0",
        SwcStatus::DimensionMismatch => b"DimensionMismatch\0",
        SwcStatus::ShapeMismatch => b"ShapeMismatch\0",
        SwcStatus::NumericalBreakdown => b"NumericalBreakdown\0",
        SwcStatus::InstanceTooLarge => b"InstanceTooLarge\0",
        SwcStatus::EnumerationTooLarge => b"EnumerationTooLarge\0",
        SwcStatus::InfeasibleInput => b"InfeasibleInput\0",
        SwcStatus::InvalidArgument => b"InvalidArgument\0",
        SwcStatus::ParseError => b"ParseError\0",
        SwcStatus::UnknownBound => b"UnknownBound\0",
        SwcStatus::Panic => b"Panic\0",
    };
    s.as_ptr() as *const c_char
}
