//! C interface to `discroot`.
//!
//! Every function returns a [`DrStatus`]. Results come back through out
//! pointers; strings handed out must be released with [`dr_string_free`],
//! handles with their `_free` function. After a non-OK status,
//! [`dr_last_error_message`] describes the failure on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use discroot::curve::{CurveSpec, WeierstrassCurve};
use discroot::disc_roots::{w3, w4};
use discroot::field::Fq;
use discroot::harness::{module, run_suite, Suite, SuiteConfig};
use discroot::isogeny::coates_check;
use discroot::tate::tate_checks;
use discroot::torsion::{base_field, TorsionModule};
use discroot::torsor::{t3_elements, t4_elements};
use discroot::{Check, Error};

/// Status codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DrStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    SingularCurve = 3,
    ParseError = 4,
    UnsupportedLevel = 5,
    ComputationFailed = 6,
    Panic = 7,
}

/// A curve over a finite field.
pub struct DrCurve {
    spec: CurveSpec,
    curve: WeierstrassCurve<Fq>,
}

/// The n-torsion of a curve over the field it is defined over.
pub struct DrTorsion {
    n: u32,
    module: TorsionModule,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

struct Failure(DrStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::SingularCurve => DrStatus::SingularCurve,
            Error::UnsupportedLevel(_) => DrStatus::UnsupportedLevel,
            Error::InvalidArgument(_) | Error::InvalidField(_) | Error::UnknownSuite(_) => DrStatus::InvalidArgument,
            _ => DrStatus::ComputationFailed,
        };
        Failure(status, e.to_string())
    }
}

fn fail(status: DrStatus, msg: impl Into<String>) -> Failure {
    Failure(status, msg.into())
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> DrStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            DrStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            DrStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(fail(DrStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(DrStatus::ParseError, "string is not UTF-8"))
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| fail(DrStatus::NullPointer, "null handle"))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(fail(DrStatus::NullPointer, "null output pointer"));
    }
    out.write(value);
    Ok(())
}

fn to_c(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw()
}

fn make_curve(spec: CurveSpec) -> Result<*mut DrCurve, Failure> {
    if spec.p < 2 || spec.ext_degree == 0 {
        return Err(fail(DrStatus::InvalidArgument, "need p >= 2 and ext_degree >= 1"));
    }
    let curve = spec.curve()?;
    Ok(Box::into_raw(Box::new(DrCurve { spec, curve })))
}

fn all_ok(checks: &[Check]) -> bool {
    !checks.is_empty() && checks.iter().all(|c| c.passed)
}

/// Creates the curve `[a1, a2, a3, a4, a6]` over `F_{p^ext_degree}`.
///
/// # Safety
/// `a` must point to five integers and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dr_curve_new(p: u64, ext_degree: u32, a: *const i64, out: *mut *mut DrCurve) -> DrStatus {
    guard(|| {
        if a.is_null() {
            return Err(fail(DrStatus::NullPointer, "null coefficient array"));
        }
        let mut coeffs = [0i64; 5];
        coeffs.copy_from_slice(std::slice::from_raw_parts(a, 5));
        let handle = make_curve(CurveSpec::new(p, ext_degree as usize, coeffs))?;
        put(out, handle)
    })
}

/// Creates a curve from JSON such as `{"p":13,"a":[0,0,0,1,2]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dr_curve_from_json(json: *const c_char, out: *mut *mut DrCurve) -> DrStatus {
    guard(|| {
        let text = read_str(json)?;
        let spec: CurveSpec = serde_json::from_str(text).map_err(|e| fail(DrStatus::ParseError, e.to_string()))?;
        let handle = make_curve(CurveSpec::new(spec.p, spec.ext_degree, spec.a))?;
        put(out, handle)
    })
}

/// Releases a curve. Null is ignored.
///
/// # Safety
/// `curve` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn dr_curve_free(curve: *mut DrCurve) {
    if !curve.is_null() {
        drop(Box::from_raw(curve));
    }
}

/// The discriminant, printed as a field element.
///
/// # Safety
/// `curve` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dr_curve_discriminant(curve: *const DrCurve, out: *mut *mut c_char) -> DrStatus {
    guard(|| {
        let c = deref(curve)?;
        put(out, to_c(c.curve.discriminant().to_string()))
    })
}

/// Computes `E[n]` (n = 3 or 4) over the smallest field containing it.
///
/// # Safety
/// `curve` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dr_torsion_new(curve: *const DrCurve, n: u32, out: *mut *mut DrTorsion) -> DrStatus {
    guard(|| {
        let c = deref(curve)?;
        if n != 3 && n != 4 {
            return Err(Error::UnsupportedLevel(n).into());
        }
        let module = module(&c.curve, n)?;
        put(out, Box::into_raw(Box::new(DrTorsion { n, module })))
    })
}

/// Degree over the prime field of the field generated by the torsion points.
///
/// # Safety
/// `torsion` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dr_torsion_field_degree(torsion: *const DrTorsion, out: *mut u32) -> DrStatus {
    guard(|| {
        let t = deref(torsion)?;
        put(out, base_field(t.module.curve()).degree() as u32)
    })
}

/// Releases a torsion handle. Null is ignored.
///
/// # Safety
/// `torsion` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn dr_torsion_free(torsion: *mut DrTorsion) {
    if !torsion.is_null() {
        drop(Box::from_raw(torsion));
    }
}

unsafe fn root_values(
    torsion: *const DrTorsion,
    n: u32,
    out: *mut *mut c_char,
    values: impl Fn(&TorsionModule) -> discroot::Result<Vec<String>>,
) -> DrStatus {
    guard(|| {
        let t = deref(torsion)?;
        if t.n != n {
            return Err(fail(DrStatus::InvalidArgument, format!("handle holds {}-torsion, need {n}-torsion", t.n)));
        }
        let vals = values(&t.module)?;
        let doc = serde_json::json!({
            "field_degree": base_field(t.module.curve()).degree(),
            "values": vals,
        });
        put(out, to_c(doc.to_string()))
    })
}

/// The cube roots of the discriminant given by the 3-torsion, as JSON
/// `{"field_degree": k, "values": [...]}`.
///
/// # Safety
/// `torsion` must be a live 3-torsion handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dr_w3_values(torsion: *const DrTorsion, out: *mut *mut c_char) -> DrStatus {
    root_values(torsion, 3, out, |m| {
        t3_elements(m)?.iter().map(|t| w3(m, t).map(|r| r.value.to_string())).collect()
    })
}

/// The fourth roots of the discriminant given by the 4-torsion, same JSON shape.
///
/// # Safety
/// `torsion` must be a live 4-torsion handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dr_w4_values(torsion: *const DrTorsion, out: *mut *mut c_char) -> DrStatus {
    root_values(torsion, 4, out, |m| {
        t4_elements(m)?.iter().map(|t| w4(m, t).map(|r| r.value.to_string())).collect()
    })
}

/// Runs a suite. `config_json` may be null or a partial config object
/// (missing fields take defaults). The report is written as JSON lines to
/// `out_jsonl`, and the process-style exit code (0 pass, 1 failure) to
/// `out_exit_code`.
///
/// # Safety
/// `suite` must be a NUL-terminated string, `config_json` null or one, and
/// both out pointers writable.
#[no_mangle]
pub unsafe extern "C" fn dr_run_suite(
    suite: *const c_char,
    config_json: *const c_char,
    out_jsonl: *mut *mut c_char,
    out_exit_code: *mut i32,
) -> DrStatus {
    guard(|| {
        let suite: Suite = read_str(suite)?.parse()?;
        let cfg: SuiteConfig = if config_json.is_null() {
            SuiteConfig::default()
        } else {
            serde_json::from_str(read_str(config_json)?).map_err(|e| fail(DrStatus::ParseError, e.to_string()))?
        };
        if out_jsonl.is_null() || out_exit_code.is_null() {
            return Err(fail(DrStatus::NullPointer, "null output pointer"));
        }
        let report = run_suite(suite, &cfg)?;
        put(out_exit_code, report.exit_code())?;
        put(out_jsonl, to_c(report.to_jsonl()))
    })
}

/// Runs the Tate curve checks for `n` in {3, 4} at the given precision;
/// `out_passed` is set to 1 when all hold, else 0.
///
/// # Safety
/// `out_passed` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dr_tate_check(n: u32, precision: i64, out_passed: *mut i32) -> DrStatus {
    guard(|| {
        if n != 3 && n != 4 {
            return Err(Error::UnsupportedLevel(n).into());
        }
        let checks = tate_checks(n as i64, precision)?;
        put(out_passed, all_ok(&checks) as i32)
    })
}

/// Checks the discriminant class along every rational isogeny of prime
/// degree `l` from the curve. `out_count` receives the number of isogenies
/// and `out_passed` 1 when the class is preserved along all of them.
///
/// # Safety
/// `curve` must be a live handle and both out pointers writable.
#[no_mangle]
pub unsafe extern "C" fn dr_coates_check(
    curve: *const DrCurve,
    l: u32,
    out_count: *mut u32,
    out_passed: *mut i32,
) -> DrStatus {
    guard(|| {
        let c = deref(curve)?;
        if c.spec.ext_degree != 1 {
            return Err(fail(DrStatus::InvalidArgument, "isogenies need a curve over a prime field"));
        }
        if out_count.is_null() || out_passed.is_null() {
            return Err(fail(DrStatus::NullPointer, "null output pointer"));
        }
        let checks = coates_check(&c.curve, l)?;
        put(out_count, checks.len() as u32)?;
        put(out_passed, checks.iter().all(|c| c.passed) as i32)
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn dr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failure on this thread, or null. The pointer stays
/// valid until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn dr_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
