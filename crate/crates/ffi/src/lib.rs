//! C ABI over `qlcm`.
//!
//! Polynomials, cyclotomic factorizations and verification reports cross the
//! boundary as opaque heap handles, each released with its `*_free` function.
//! Every fallible call returns a [`QlcmStatus`] and writes its result through
//! an out pointer, which is left untouched on failure. The message for the
//! most recent failure on the calling thread is available from
//! [`qlcm_last_error`]. Strings handed out through `char **` belong to the
//! caller and are released with [`qlcm_string_free`].
//!
//! # Safety
//!
//! Handle arguments must be null or pointers obtained from this library that
//! have not been freed. String arguments must be null or NUL-terminated.
//! Array arguments must point to at least `len` readable elements. Handles are
//! not synchronized; share one between threads only for reading.

#![allow(clippy::missing_safety_doc)]

use std::any::Any;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qlcm::cyclotomic::{
    cyclotomic_poly, factorization_to_poly, factorization_value_at_one, phi_at_one,
};
use qlcm::poly::{poly_exact_div, poly_gcd, poly_lcm, poly_mul};
use qlcm::qcalc::{
    bounds_check, carry_count_lhs, carry_count_rhs, classical_farhi_check,
    corollary_common_witness, lcm_qbinomials_factorization, q_binomial_factorization,
    q_binomial_poly, rhs_factorization, verify_main_identity, witness_all_carries, CommonWitness,
};
use qlcm::{CycFactorization, Depth, Error, IntPoly, QBinomialSpec, VerificationReport};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QlcmStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// Zero where a positive value is needed, an index out of range, or a
    /// value too large for the requested representation.
    InvalidArgument = 2,
    NotPrime = 3,
    NonExactDivision = 4,
    /// Division by, or lcm involving, the zero polynomial.
    ZeroPolynomial = 5,
    /// A requested carry level has no individual witness.
    HypothesisViolated = 6,
    /// No common witness exists although every level has one.
    NotFound = 7,
    Parse = 8,
    InvalidUtf8 = 9,
    Internal = 10,
    /// The library panicked; the message holds the panic payload.
    Panic = 11,
}

pub const QLCM_DEPTH_FACTORED: u32 = 0;
pub const QLCM_DEPTH_POLYNOMIAL: u32 = 1;

/// Opaque integer polynomial in `q`.
pub struct QlcmPoly(IntPoly);

/// Opaque product of cyclotomic polynomials `Phi_d^e`.
pub struct QlcmFactorization(CycFactorization);

/// Opaque outcome of checking the lcm identity for one `n`.
pub struct QlcmReport(VerificationReport);

struct Fail(QlcmStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::NonPositive { .. } | Error::OutOfRange(_) | Error::IndexTooSmall(_) => {
                QlcmStatus::InvalidArgument
            }
            Error::NotPrime(_) => QlcmStatus::NotPrime,
            Error::NonExactDivision => QlcmStatus::NonExactDivision,
            Error::ZeroDivisor | Error::ZeroPolynomialInput => QlcmStatus::ZeroPolynomial,
            Error::HypothesisViolated { .. } => QlcmStatus::HypothesisViolated,
            Error::Parse { .. } => QlcmStatus::Parse,
            Error::Internal(_) => QlcmStatus::Internal,
        };
        Fail(status, e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(QlcmStatus::NullPointer, format!("{what} is null"))
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let msg = CString::new(msg.replace('\0', "")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn panic_message(payload: &(dyn Any + Send)) -> String {
    if let Some(s) = payload.downcast_ref::<&str>() {
        format!("panic: {s}")
    } else if let Some(s) = payload.downcast_ref::<String>() {
        format!("panic: {s}")
    } else {
        "panic".to_string()
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> QlcmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QlcmStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(payload) => {
            set_last_error(panic_message(payload.as_ref()));
            QlcmStatus::Panic
        }
    }
}

unsafe fn get<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn out<'a, T>(p: *mut T) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| null("out"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Fail(QlcmStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn slice_arg<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Fail> {
    if len == 0 {
        Ok(&[])
    } else if p.is_null() {
        Err(null(what))
    } else {
        Ok(std::slice::from_raw_parts(p, len))
    }
}

fn c_string(s: String) -> Result<*mut c_char, Fail> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Fail(QlcmStatus::Internal, "string contains NUL".into()))
}

fn handle<T>(v: T) -> *mut T {
    Box::into_raw(Box::new(v))
}

fn depth_arg(depth: u32) -> Result<Depth, Fail> {
    match depth {
        QLCM_DEPTH_FACTORED => Ok(Depth::Factored),
        QLCM_DEPTH_POLYNOMIAL => Ok(Depth::Polynomial),
        _ => Err(Fail(
            QlcmStatus::InvalidArgument,
            format!("unknown depth {depth}"),
        )),
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn qlcm_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread, or null if none failed
/// yet. Valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn qlcm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

#[no_mangle]
pub unsafe extern "C" fn qlcm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

// ---- polynomials ----

/// Parses text such as `1 + q + 2*q^2 - q^5`.
#[no_mangle]
pub unsafe extern "C" fn qlcm_poly_parse(
    text: *const c_char,
    out_poly: *mut *mut QlcmPoly,
) -> QlcmStatus {
    guard(|| {
        let text = str_arg(text, "text")?;
        let out = out(out_poly)?;
        *out = handle(QlcmPoly(text.parse()?));
        Ok(())
    })
}

/// Builds `coeffs[0] + coeffs[1] q + ...`; `len == 0` gives the zero polynomial.
#[no_mangle]
pub unsafe extern "C" fn qlcm_poly_from_coeffs(
    coeffs: *const i64,
    len: usize,
    out_poly: *mut *mut QlcmPoly,
) -> QlcmStatus {
    guard(|| {
        let coeffs = slice_arg(coeffs, len, "coeffs")?;
        let out = out(out_poly)?;
        *out = handle(QlcmPoly(IntPoly::from_i64s(coeffs)));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn qlcm_poly_free(p: *mut QlcmPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Degree, or -1 for the zero polynomial.
#[no_mangle]
pub unsafe extern "C" fn qlcm_poly_degree(p: *const QlcmPoly, out_degree: *mut i64) -> QlcmStatus {
    guard(|| {
        let p = get(p, "p")?;
        let out = out(out_degree)?;
        *out = p.0.degree().map_or(-1, |d| d as i64);
        Ok(())
    })
}

/// Coefficient of `q^i`; zero past the degree. Fails with
/// `QLCM_STATUS_INVALID_ARGUMENT` if it does not fit in 64 bits.
#[no_mangle]
pub unsafe extern "C" fn qlcm_poly_coeff(
    p: *const QlcmPoly,
    i: usize,
    out_coeff: *mut i64,
) -> QlcmStatus {
    guard(|| {
        let p = get(p, "p")?;
        let out = out(out_coeff)?;
        let c = p.0.coeff(i);
        *out = i64::try_from(&c).map_err(|_| {
            Fail(
                QlcmStatus::InvalidArgument,
                format!("coefficient {c} exceeds 64 bits"),
            )
        })?;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn qlcm_poly_to_string(
    p: *const QlcmPoly,
    out_text: *mut *mut c_char,
) -> QlcmStatus {
    guard(|| {
        let p = get(p, "p")?;
        let out = out(out_text)?;
        *out = c_string(p.0.to_string())?;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn qlcm_poly_equal(
    a: *const QlcmPoly,
    b: *const QlcmPoly,
    out_equal: *mut bool,
) -> QlcmStatus {
    guard(|| {
        let (a, b) = (get(a, "a")?, get(b, "b")?);
        let out = out(out_equal)?;
        *out = a.0 == b.0;
        Ok(())
    })
}

unsafe fn binary_poly(
    a: *const QlcmPoly,
    b: *const QlcmPoly,
    out_poly: *mut *mut QlcmPoly,
    op: impl FnOnce(&IntPoly, &IntPoly) -> qlcm::Result<IntPoly>,
) -> QlcmStatus {
    guard(|| {
        let (a, b) = (get(a, "a")?, get(b, "b")?);
        let out = out(out_poly)?;
        *out = handle(QlcmPoly(op(&a.0, &b.0)?));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn qlcm_poly_mul(
    a: *const QlcmPoly,
    b: *const QlcmPoly,
    out_poly: *mut *mut QlcmPoly,
) -> QlcmStatus {
    binary_poly(a, b, out_poly, |a, b| Ok(poly_mul(a, b)))
}

/// `a / b`, failing with `QLCM_STATUS_NON_EXACT_DIVISION` on a nonzero remainder.
#[no_mangle]
pub unsafe extern "C" fn qlcm_poly_exact_div(
    a: *const QlcmPoly,
    b: *const QlcmPoly,
    out_poly: *mut *mut QlcmPoly,
) -> QlcmStatus {
    binary_poly(a, b, out_poly, poly_exact_div)
}

/// Primitive gcd with positive leading coefficient; `gcd(0, 0) = 0`.
#[no_mangle]
pub unsafe extern "C" fn qlcm_poly_gcd(
    a: *const QlcmPoly,
    b: *const QlcmPoly,
    out_poly: *mut *mut QlcmPoly,
) -> QlcmStatus {
    binary_poly(a, b, out_poly, |a, b| Ok(poly_gcd(a, b)))
}

/// Primitive lcm with positive leading coefficient.
#[no_mangle]
pub unsafe extern "C" fn qlcm_poly_lcm(
    a: *const QlcmPoly,
    b: *const QlcmPoly,
    out_poly: *mut *mut QlcmPoly,
) -> QlcmStatus {
    binary_poly(a, b, out_poly, poly_lcm)
}

/// The cyclotomic polynomial `Phi_d`, `d >= 1`.
#[no_mangle]
pub unsafe extern "C" fn qlcm_cyclotomic(d: u64, out_poly: *mut *mut QlcmPoly) -> QlcmStatus {
    guard(|| {
        let out = out(out_poly)?;
        *out = handle(QlcmPoly(cyclotomic_poly(d)?.as_ref().clone()));
        Ok(())
    })
}

/// The expanded Gaussian binomial `[n choose k]_q`.
#[no_mangle]
pub unsafe extern "C" fn qlcm_q_binomial(
    n: u64,
    k: u64,
    out_poly: *mut *mut QlcmPoly,
) -> QlcmStatus {
    guard(|| {
        let out = out(out_poly)?;
        *out = handle(QlcmPoly(q_binomial_poly(QBinomialSpec::new(n, k)?)?));
        Ok(())
    })
}

// ---- factorizations ----

unsafe fn factorization_out(
    out_f: *mut *mut QlcmFactorization,
    f: impl FnOnce() -> qlcm::Result<CycFactorization>,
) -> QlcmStatus {
    guard(|| {
        let out = out(out_f)?;
        *out = handle(QlcmFactorization(f()?));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn qlcm_q_binomial_factorization(
    n: u64,
    k: u64,
    out_f: *mut *mut QlcmFactorization,
) -> QlcmStatus {
    factorization_out(out_f, || {
        q_binomial_factorization(QBinomialSpec::new(n, k)?)
    })
}

/// `lcm` of the row `[n choose k]_q`, `0 <= k <= n`, in factored form.
#[no_mangle]
pub unsafe extern "C" fn qlcm_lcm_factorization(
    n: u64,
    out_f: *mut *mut QlcmFactorization,
) -> QlcmStatus {
    factorization_out(out_f, || lcm_qbinomials_factorization(n))
}

/// `lcm([1]_q, ..., [n+1]_q) / [n+1]_q` in factored form.
#[no_mangle]
pub unsafe extern "C" fn qlcm_rhs_factorization(
    n: u64,
    out_f: *mut *mut QlcmFactorization,
) -> QlcmStatus {
    factorization_out(out_f, || rhs_factorization(n))
}

#[no_mangle]
pub unsafe extern "C" fn qlcm_factorization_free(f: *mut QlcmFactorization) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Number of distinct cyclotomic factors.
#[no_mangle]
pub unsafe extern "C" fn qlcm_factorization_len(
    f: *const QlcmFactorization,
    out_len: *mut usize,
) -> QlcmStatus {
    guard(|| {
        let f = get(f, "f")?;
        let out = out(out_len)?;
        *out = f.0.len();
        Ok(())
    })
}

/// The `i`-th factor `Phi_d^e` in increasing order of `d`.
#[no_mangle]
pub unsafe extern "C" fn qlcm_factorization_term(
    f: *const QlcmFactorization,
    i: usize,
    out_d: *mut u64,
    out_e: *mut u32,
) -> QlcmStatus {
    guard(|| {
        let f = get(f, "f")?;
        let (out_d, out_e) = (out(out_d)?, out(out_e)?);
        let (d, e) = f.0.iter().nth(i).ok_or_else(|| {
            Fail(
                QlcmStatus::InvalidArgument,
                format!("term {i} out of range for {} factors", f.0.len()),
            )
        })?;
        *out_d = d;
        *out_e = e;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn qlcm_factorization_equal(
    a: *const QlcmFactorization,
    b: *const QlcmFactorization,
    out_equal: *mut bool,
) -> QlcmStatus {
    guard(|| {
        let (a, b) = (get(a, "a")?, get(b, "b")?);
        let out = out(out_equal)?;
        *out = a.0 == b.0;
        Ok(())
    })
}

/// `Phi_3 * Phi_4^2`, or `1` for the empty product.
#[no_mangle]
pub unsafe extern "C" fn qlcm_factorization_to_string(
    f: *const QlcmFactorization,
    out_text: *mut *mut c_char,
) -> QlcmStatus {
    guard(|| {
        let f = get(f, "f")?;
        let out = out(out_text)?;
        *out = c_string(f.0.to_string())?;
        Ok(())
    })
}

/// `[{"d":3,"e":1},{"d":4,"e":2}]`
#[no_mangle]
pub unsafe extern "C" fn qlcm_factorization_to_json(
    f: *const QlcmFactorization,
    out_json: *mut *mut c_char,
) -> QlcmStatus {
    guard(|| {
        let f = get(f, "f")?;
        let out = out(out_json)?;
        let json =
            serde_json::to_string(&f.0).map_err(|e| Fail(QlcmStatus::Internal, e.to_string()))?;
        *out = c_string(json)?;
        Ok(())
    })
}

/// Multiplies the factors out.
#[no_mangle]
pub unsafe extern "C" fn qlcm_factorization_expand(
    f: *const QlcmFactorization,
    out_poly: *mut *mut QlcmPoly,
) -> QlcmStatus {
    guard(|| {
        let f = get(f, "f")?;
        let out = out(out_poly)?;
        *out = handle(QlcmPoly(factorization_to_poly(&f.0)));
        Ok(())
    })
}

/// Value at `q = 1` as a decimal string.
#[no_mangle]
pub unsafe extern "C" fn qlcm_factorization_value_at_one(
    f: *const QlcmFactorization,
    out_text: *mut *mut c_char,
) -> QlcmStatus {
    guard(|| {
        let f = get(f, "f")?;
        let out = out(out_text)?;
        *out = c_string(factorization_value_at_one(&f.0).to_string())?;
        Ok(())
    })
}

// ---- verification ----

/// Checks the lcm identity for one `n >= 1` at `QLCM_DEPTH_FACTORED` or
/// `QLCM_DEPTH_POLYNOMIAL`. A failed identity still returns `QLCM_STATUS_OK`;
/// inspect it with `qlcm_report_passed`.
#[no_mangle]
pub unsafe extern "C" fn qlcm_verify(
    n: u64,
    depth: u32,
    out_report: *mut *mut QlcmReport,
) -> QlcmStatus {
    guard(|| {
        let depth = depth_arg(depth)?;
        let out = out(out_report)?;
        *out = handle(QlcmReport(verify_main_identity(n, depth)?));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn qlcm_report_free(r: *mut QlcmReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

#[no_mangle]
pub unsafe extern "C" fn qlcm_report_passed(
    r: *const QlcmReport,
    out_passed: *mut bool,
) -> QlcmStatus {
    guard(|| {
        let r = get(r, "r")?;
        let out = out(out_passed)?;
        *out = r.0.passed();
        Ok(())
    })
}

/// Copy of the left side's factorization.
#[no_mangle]
pub unsafe extern "C" fn qlcm_report_lhs(
    r: *const QlcmReport,
    out_f: *mut *mut QlcmFactorization,
) -> QlcmStatus {
    guard(|| {
        let r = get(r, "r")?;
        let out = out(out_f)?;
        *out = handle(QlcmFactorization(r.0.lhs_factors.clone()));
        Ok(())
    })
}

/// Copy of the right side's factorization.
#[no_mangle]
pub unsafe extern "C" fn qlcm_report_rhs(
    r: *const QlcmReport,
    out_f: *mut *mut QlcmFactorization,
) -> QlcmStatus {
    guard(|| {
        let r = get(r, "r")?;
        let out = out(out_f)?;
        *out = handle(QlcmFactorization(r.0.rhs_factors.clone()));
        Ok(())
    })
}

/// The same line `qlcm verify` prints in text mode.
#[no_mangle]
pub unsafe extern "C" fn qlcm_report_to_text(
    r: *const QlcmReport,
    out_text: *mut *mut c_char,
) -> QlcmStatus {
    guard(|| {
        let r = get(r, "r")?;
        let out = out(out_text)?;
        *out = c_string(r.0.text_line())?;
        Ok(())
    })
}

/// The same record `qlcm verify --format json` prints.
#[no_mangle]
pub unsafe extern "C" fn qlcm_report_to_json(
    r: *const QlcmReport,
    out_json: *mut *mut c_char,
) -> QlcmStatus {
    guard(|| {
        let r = get(r, "r")?;
        let out = out(out_json)?;
        let json = serde_json::to_string(&r.0.record())
            .map_err(|e| Fail(QlcmStatus::Internal, e.to_string()))?;
        *out = c_string(json)?;
        Ok(())
    })
}

// ---- integer side ----

unsafe fn scalar<T>(out_v: *mut T, f: impl FnOnce() -> qlcm::Result<T>) -> QlcmStatus {
    guard(|| {
        let out = out(out_v)?;
        *out = f()?;
        Ok(())
    })
}

/// `Phi_d(1)` for `d >= 2`: `p` when `d` is a power of the prime `p`, else 1.
#[no_mangle]
pub unsafe extern "C" fn qlcm_phi_at_one(d: u64, out_value: *mut u64) -> QlcmStatus {
    scalar(out_value, || phi_at_one(d))
}

/// Largest number of base-`p` carries over `k + (n-k)`, `0 <= k <= n`.
#[no_mangle]
pub unsafe extern "C" fn qlcm_carry_count_lhs(n: u64, p: u64, out_count: *mut u64) -> QlcmStatus {
    scalar(out_count, || carry_count_lhs(n, p))
}

/// The same count from the base-`p` digits of `n + 1`.
#[no_mangle]
pub unsafe extern "C" fn qlcm_carry_count_rhs(n: u64, p: u64, out_count: *mut u64) -> QlcmStatus {
    scalar(out_count, || carry_count_rhs(n, p))
}

/// A `k` attaining the largest carry count; requires `n >= p`.
#[no_mangle]
pub unsafe extern "C" fn qlcm_witness_all_carries(n: u64, p: u64, out_k: *mut u64) -> QlcmStatus {
    scalar(out_k, || witness_all_carries(n, p))
}

/// A single `k` carrying at every level in `levels`. `out_closed_form` tells
/// whether it came from the digit formula rather than a search.
#[no_mangle]
pub unsafe extern "C" fn qlcm_common_witness(
    n: u64,
    p: u64,
    levels: *const u32,
    len: usize,
    out_k: *mut u64,
    out_closed_form: *mut bool,
) -> QlcmStatus {
    guard(|| {
        let levels = slice_arg(levels, len, "levels")?;
        let (out_k, out_closed_form) = (out(out_k)?, out(out_closed_form)?);
        match corollary_common_witness(n, p, levels)? {
            CommonWitness::ClosedForm(k) => (*out_k, *out_closed_form) = (k, true),
            CommonWitness::Search(k) => (*out_k, *out_closed_form) = (k, false),
            CommonWitness::NotFound => {
                return Err(Fail(
                    QlcmStatus::NotFound,
                    format!("no common witness k <= {n}"),
                ));
            }
        }
        Ok(())
    })
}

/// Whether `lcm_k C(n, k) = lcm(1..n+1) / (n+1)`.
#[no_mangle]
pub unsafe extern "C" fn qlcm_classical_check(n: u64, out_holds: *mut bool) -> QlcmStatus {
    scalar(out_holds, || Ok(classical_farhi_check(n)?.holds()))
}

/// Whether `2^(n-1) <= lcm(1..n) <= 3^n`.
#[no_mangle]
pub unsafe extern "C" fn qlcm_bounds_check(n: u64, out_holds: *mut bool) -> QlcmStatus {
    scalar(out_holds, || bounds_check(n))
}
