//! C interface: opaque morphism handles, status codes, and a thread-local
//! message for the last error. Strings returned to the caller are owned by
//! the caller and released with `ncg_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ncgauge::dga::AElement;
use ncgauge::io::{morphism_from_str, morphism_to_string, parse_polynomial, SessionConfig};
use ncgauge::solver::{mc_residual, solve_recursion, verify_component_equations, Morphism};
use ncgauge::sw::{evaluate_gauge_field, evaluate_gauge_param};
use ncgauge::Error;

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NcgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Config = 3,
    Parse = 4,
    Solver = 5,
    Degree = 6,
    Incompatible = 7,
    Panic = 8,
}

/// A solved or loaded morphism.
pub struct NcgMorphism {
    inner: Morphism,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> NcgStatus {
    match e {
        Error::Config(_) | Error::DimensionMismatch { .. } | Error::IndexOutOfRange { .. } => {
            NcgStatus::Config
        }
        Error::Parse(_) | Error::SchemaVersion { .. } => NcgStatus::Parse,
        Error::TruncationExceeded { .. } | Error::DegreeViolation(_) => NcgStatus::Degree,
        Error::Incompatible(_) => NcgStatus::Incompatible,
        _ => NcgStatus::Solver,
    }
}

enum Fail {
    Null,
    Utf8,
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

/// Run `body`, translating errors and panics into status codes.
fn guard(body: impl FnOnce() -> Result<(), Fail>) -> NcgStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => NcgStatus::Ok,
        Ok(Err(Fail::Null)) => {
            set_error("null pointer argument".into());
            NcgStatus::NullPointer
        }
        Ok(Err(Fail::Utf8)) => {
            set_error("string argument is not valid UTF-8".into());
            NcgStatus::InvalidUtf8
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic".into());
            NcgStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::Null);
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail::Utf8)
}

unsafe fn handle<'a>(p: *const NcgMorphism) -> Result<&'a Morphism, Fail> {
    p.as_ref().map(|h| &h.inner).ok_or(Fail::Null)
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null);
    }
    out.write(value);
    Ok(())
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .expect("interior NULs removed")
        .into_raw()
}

/// Message of the last failed call on this thread, or NULL. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ncg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Solve the recursion. `theta` and `theta_prime` take `0`, `sym`,
/// `sym:PREFIX` or rows `a,b;c,d`.
///
/// # Safety
/// String arguments must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ncg_solve(
    n: usize,
    theta: *const c_char,
    theta_prime: *const c_char,
    order: usize,
    degree_bound: u32,
    out: *mut *mut NcgMorphism,
) -> NcgStatus {
    guard(|| {
        let config = SessionConfig::new(
            n,
            read_str(theta)?,
            read_str(theta_prime)?,
            order,
            degree_bound,
            0,
        );
        let f = solve_recursion(config.setting()?)?;
        write_out(out, Box::into_raw(Box::new(NcgMorphism { inner: f })))
    })
}

/// Load a morphism from the JSON file format.
///
/// # Safety
/// `json` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ncg_morphism_from_json(
    json: *const c_char,
    out: *mut *mut NcgMorphism,
) -> NcgStatus {
    guard(|| {
        let f = morphism_from_str(read_str(json)?)?;
        write_out(out, Box::into_raw(Box::new(NcgMorphism { inner: f })))
    })
}

/// Serialize to the JSON file format.
///
/// # Safety
/// `f` must come from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ncg_morphism_to_json(
    f: *const NcgMorphism,
    out: *mut *mut c_char,
) -> NcgStatus {
    guard(|| {
        let text = morphism_to_string(handle(f)?);
        write_out(out, into_c_string(text))
    })
}

/// Number of solved orders, 0 for NULL.
///
/// # Safety
/// `f` must be NULL or come from this library.
#[no_mangle]
pub unsafe extern "C" fn ncg_morphism_order(f: *const NcgMorphism) -> usize {
    f.as_ref().map_or(0, |h| h.inner.order())
}

/// Check the component equations at every order on the monomial basis of
/// x-degree `≤ basis_degree` and the MC residual. `pass` receives 1 or 0.
///
/// # Safety
/// `f` must come from this library; `pass` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ncg_verify(
    f: *const NcgMorphism,
    basis_degree: u32,
    pass: *mut i32,
) -> NcgStatus {
    guard(|| {
        let f = handle(f)?;
        let mut ok = mc_residual(f).iter().all(|r| r.is_zero());
        for l in 1..=f.order() {
            let r = verify_component_equations(f, l, basis_degree)?;
            if !r.pass {
                set_error(r.summary());
                ok = false;
            }
        }
        write_out(pass, i32::from(ok))
    })
}

/// Evaluate `Â` and `λ̂`. `field` lists the components of A separated by
/// `;`. The result is a JSON object `{"A_hat": [...], "lambda_hat": ...}`
/// of rendered polynomials.
///
/// # Safety
/// String arguments must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ncg_apply(
    f: *const NcgMorphism,
    field: *const c_char,
    lambda: *const c_char,
    out: *mut *mut c_char,
) -> NcgStatus {
    guard(|| {
        let f = handle(f)?;
        let s = &f.setting;
        let parts: Vec<&str> = read_str(field)?.split(';').collect();
        if parts.len() != s.n {
            return Err(Error::DimensionMismatch {
                expected: s.n,
                found: parts.len(),
            }
            .into());
        }
        let a = AElement::one_form(
            parts
                .iter()
                .map(|p| parse_polynomial(p, s.n, &s.symbols))
                .collect::<Result<_, _>>()?,
        );
        let lam = parse_polynomial(read_str(lambda)?, s.n, &s.symbols)?;
        let ahat = evaluate_gauge_field(f, &a, f.order())?;
        let lhat = evaluate_gauge_param(f, &lam, &a, f.order())?;
        let comps: Vec<String> = (1..=s.n)
            .map(|i| ahat.component(i).render(&s.symbols))
            .collect();
        let doc = serde_json::json!({"A_hat": comps, "lambda_hat": lhat.render(&s.symbols)});
        write_out(out, into_c_string(doc.to_string()))
    })
}

/// # Safety
/// `f` must be NULL or come from this library, and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ncg_morphism_free(f: *mut NcgMorphism) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// # Safety
/// `s` must be NULL or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn ncg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
