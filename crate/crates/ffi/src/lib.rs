//! C interface to fgcalc.
//!
//! Every object crosses the boundary as an opaque heap handle released by its
//! matching `*_free` function. Fallible calls return an [`FgcStatus`] and
//! write results through out-pointers; on failure the message is kept in a
//! thread-local slot readable with [`fgc_last_error_message`]. Strings handed
//! to the caller are owned and must be released with [`fgc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fgcalc::error::ErrorClass;
use fgcalc::fgl::{height, universal_fgl_with_cancel, Fgl, Height};
use fgcalc::hopf::{self, FiniteHopf};
use fgcalc::parse::{parse_laurent, parse_ring, parse_series};
use fgcalc::residue::residue;
use fgcalc::ring::Ring;
use fgcalc::series::{LaurentSeries, TruncSeries};
use fgcalc::{weierstrass, CancelToken, Error};

/// Result of a fallible call. Values 1 to 5 agree with the CLI exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FgcStatus {
    Ok = 0,
    Cancelled = 1,
    Parse = 2,
    Precondition = 3,
    Verification = 4,
    UnsupportedRing = 5,
    /// Null pointer or text that is not UTF-8.
    InvalidInput = 6,
    /// A panic was caught at the boundary.
    Internal = 7,
}

pub struct FgcRing(Ring);
pub struct FgcSeries(TruncSeries);
pub struct FgcLaurent(LaurentSeries);
pub struct FgcFgl(Fgl);
pub struct FgcHopf(FiniteHopf);
pub struct FgcCancel(CancelToken);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FgcHeight {
    /// False when `[p](x)` vanishes to the truncation order.
    pub finite: bool,
    /// The height when finite, otherwise the truncation order.
    pub height: u32,
    /// Whether the coefficient of `x^(p^height)` is a unit.
    pub unit: bool,
}

struct LastError {
    code: &'static str,
    message: String,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<LastError>> = const { RefCell::new(None) };
}

enum Failure {
    Core(Error),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Core(e)
    }
}

type Res<T> = std::result::Result<T, Failure>;

fn record(code: &'static str, message: String) {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(LastError { code, message }));
}

fn run(f: impl FnOnce() -> Res<()>) -> FgcStatus {
    LAST_ERROR.with(|slot| slot.borrow_mut().take());
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FgcStatus::Ok,
        Ok(Err(Failure::Input(msg))) => {
            record("invalid_input", msg);
            FgcStatus::InvalidInput
        }
        Ok(Err(Failure::Core(e))) => {
            let status = match e.class() {
                ErrorClass::Parse => FgcStatus::Parse,
                ErrorClass::Precondition => FgcStatus::Precondition,
                ErrorClass::Verification => FgcStatus::Verification,
                ErrorClass::UnsupportedRing => FgcStatus::UnsupportedRing,
                ErrorClass::Cancelled => FgcStatus::Cancelled,
            };
            record(e.code(), e.to_string());
            status
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            record("internal", msg);
            FgcStatus::Internal
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Res<&'a str> {
    if p.is_null() {
        return Err(Failure::Input(format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::Input(format!("{what} is not UTF-8")))
}

unsafe fn get<'a, T>(p: *const T, what: &str) -> Res<&'a T> {
    p.as_ref().ok_or_else(|| Failure::Input(format!("{what} is null")))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Res<()> {
    if out.is_null() {
        return Err(Failure::Input("output pointer is null".into()));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

fn owned(s: String) -> *mut c_char {
    // interior NULs cannot occur in printed math, but never hand out a truncated string
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

unsafe fn free<T>(p: *mut T) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

unsafe fn cancel_token<'a>(p: *const FgcCancel) -> Option<&'a CancelToken> {
    p.as_ref().map(|c| &c.0)
}

/// Message of the last failed call on this thread, or null if the last call
/// succeeded.
#[no_mangle]
pub extern "C" fn fgc_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null_mut(), |e| owned(e.message.clone())))
}

/// Stable identifier of the last error on this thread, such as `"not_a_unit"`.
#[no_mangle]
pub extern "C" fn fgc_last_error_code() -> *mut c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null_mut(), |e| owned(e.code.to_string())))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fgc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

// ---- rings ----

/// Parses a ring such as `"Z/4"` or `"Z[e;e^2,a:-1]"`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fgc_ring_parse(text: *const c_char, out: *mut *mut FgcRing) -> FgcStatus {
    run(|| {
        let desc = parse_ring(self::text(text, "ring text")?)?;
        put(out, FgcRing(desc.into_ring()))
    })
}

/// # Safety
/// `ring` must be null or a live ring handle.
#[no_mangle]
pub unsafe extern "C" fn fgc_ring_to_string(ring: *const FgcRing) -> *mut c_char {
    ring.as_ref().map_or(ptr::null_mut(), |r| owned(r.0.to_string()))
}

/// # Safety
/// `ring` must be null or a ring handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fgc_ring_free(ring: *mut FgcRing) {
    free(ring)
}

// ---- truncated series ----

/// Parses a series in the comma-separated variables `vars` (`"x"` if null),
/// truncated below total degree `order`.
///
/// # Safety
/// `ring` must be live; `text` and `vars` NUL-terminated (`vars` may be null).
#[no_mangle]
pub unsafe extern "C" fn fgc_series_parse(
    ring: *const FgcRing,
    text: *const c_char,
    vars: *const c_char,
    order: u32,
    out: *mut *mut FgcSeries,
) -> FgcStatus {
    run(|| {
        let ring = get(ring, "ring")?;
        let vars = if vars.is_null() { "x" } else { self::text(vars, "vars")? };
        let names: Vec<&str> = vars.split(',').map(str::trim).collect();
        let s = parse_series(self::text(text, "series text")?, &ring.0, &names, order)?;
        put(out, FgcSeries(s))
    })
}

/// # Safety
/// `a`, `b` must be live series handles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fgc_series_add(a: *const FgcSeries, b: *const FgcSeries, out: *mut *mut FgcSeries) -> FgcStatus {
    run(|| {
        let s = get(a, "a")?.0.checked_add(&get(b, "b")?.0)?;
        put(out, FgcSeries(s))
    })
}

/// # Safety
/// `a`, `b` must be live series handles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fgc_series_mul(a: *const FgcSeries, b: *const FgcSeries, out: *mut *mut FgcSeries) -> FgcStatus {
    run(|| {
        let s = get(a, "a")?.0.checked_mul(&get(b, "b")?.0)?;
        put(out, FgcSeries(s))
    })
}

/// Substitutes `inners[i]` for the i-th variable of `outer`.
///
/// # Safety
/// `outer` and the `count` entries of `inners` must be live series handles.
#[no_mangle]
pub unsafe extern "C" fn fgc_series_compose(
    outer: *const FgcSeries,
    inners: *const *const FgcSeries,
    count: usize,
    out: *mut *mut FgcSeries,
) -> FgcStatus {
    run(|| {
        let outer = get(outer, "outer")?;
        if inners.is_null() && count > 0 {
            return Err(Failure::Input("inners is null".into()));
        }
        let mut args = Vec::with_capacity(count);
        for i in 0..count {
            args.push(get(*inners.add(i), "inner series")?.0.clone());
        }
        put(out, FgcSeries(outer.0.compose(&args)?))
    })
}

/// Multiplicative inverse; the constant term must be a unit.
///
/// # Safety
/// `s` must be a live series handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fgc_series_invert(s: *const FgcSeries, out: *mut *mut FgcSeries) -> FgcStatus {
    run(|| put(out, FgcSeries(get(s, "series")?.0.invert()?)))
}

/// Compositional inverse of a univariate coordinate.
///
/// # Safety
/// `s` must be a live series handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fgc_series_revert(s: *const FgcSeries, out: *mut *mut FgcSeries) -> FgcStatus {
    run(|| put(out, FgcSeries(get(s, "series")?.0.revert()?)))
}

/// Coefficient at the exponent vector `exps` (one entry per variable),
/// printed as a ring element.
///
/// # Safety
/// `s` must be live; `exps` must point to `count` values; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fgc_series_coeff(
    s: *const FgcSeries,
    exps: *const u32,
    count: usize,
    out: *mut *mut c_char,
) -> FgcStatus {
    run(|| {
        let s = &get(s, "series")?.0;
        if count != s.num_vars() {
            return Err(Failure::Input(format!("expected {} exponents, got {count}", s.num_vars())));
        }
        if exps.is_null() && count > 0 {
            return Err(Failure::Input("exps is null".into()));
        }
        let e: &[u32] = if count == 0 { &[] } else { std::slice::from_raw_parts(exps, count) };
        if out.is_null() {
            return Err(Failure::Input("output pointer is null".into()));
        }
        *out = owned(s.coeff(e).to_string());
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a live series handle.
#[no_mangle]
pub unsafe extern "C" fn fgc_series_to_string(s: *const FgcSeries) -> *mut c_char {
    s.as_ref().map_or(ptr::null_mut(), |s| owned(s.0.to_string()))
}

/// # Safety
/// `s` must be null or a series handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fgc_series_free(s: *mut FgcSeries) {
    free(s)
}

// ---- Weierstrass ----

/// Weierstrass degree of a univariate series.
///
/// # Safety
/// `g` must be a live series handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fgc_weierstrass_degree(g: *const FgcSeries, out: *mut u32) -> FgcStatus {
    run(|| {
        let report = weierstrass::degree(&get(g, "series")?.0)?;
        *out.as_mut().ok_or_else(|| Failure::Input("output pointer is null".into()))? = report.degree;
        Ok(())
    })
}

/// Splits `g = h * u` with `h` a Weierstrass polynomial and `u` a unit.
/// `h` is returned as a series of the same order.
///
/// # Safety
/// `g` must be a live series handle; `out_h` and `out_u` writable.
#[no_mangle]
pub unsafe extern "C" fn fgc_weierstrass_factor(
    g: *const FgcSeries,
    out_h: *mut *mut FgcSeries,
    out_u: *mut *mut FgcSeries,
) -> FgcStatus {
    run(|| {
        let g = &get(g, "series")?.0;
        if out_h.is_null() || out_u.is_null() {
            return Err(Failure::Input("output pointer is null".into()));
        }
        let f = weierstrass::factor(g)?;
        put(out_h, FgcSeries(TruncSeries::from_polynomial(&f.h, &g.vars()[0], g.order())))?;
        put(out_u, FgcSeries(f.u))
    })
}

// ---- Laurent series and residues ----

/// Parses a Laurent series in `var` (`"x"` if null) known below `order`.
///
/// # Safety
/// `ring` must be live; `text` and `var` NUL-terminated (`var` may be null).
#[no_mangle]
pub unsafe extern "C" fn fgc_laurent_parse(
    ring: *const FgcRing,
    text: *const c_char,
    var: *const c_char,
    order: i64,
    out: *mut *mut FgcLaurent,
) -> FgcStatus {
    run(|| {
        let ring = get(ring, "ring")?;
        let var = if var.is_null() { "x" } else { self::text(var, "var")? };
        let f = parse_laurent(self::text(text, "laurent text")?, &ring.0, var, order)?;
        put(out, FgcLaurent(f))
    })
}

/// Coefficient of `x^-1`, printed.
///
/// # Safety
/// `f` must be null or a live Laurent handle.
#[no_mangle]
pub unsafe extern "C" fn fgc_laurent_residue(f: *const FgcLaurent) -> *mut c_char {
    f.as_ref().map_or(ptr::null_mut(), |f| owned(residue(&f.0).to_string()))
}

/// # Safety
/// `f` must be null or a live Laurent handle.
#[no_mangle]
pub unsafe extern "C" fn fgc_laurent_to_string(f: *const FgcLaurent) -> *mut c_char {
    f.as_ref().map_or(ptr::null_mut(), |f| owned(f.0.to_string()))
}

/// # Safety
/// `f` must be null or a Laurent handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fgc_laurent_free(f: *mut FgcLaurent) {
    free(f)
}

// ---- formal group laws ----

/// Parses `F(x, y)` and checks the axioms below `order`.
///
/// # Safety
/// `ring` must be live; `text` NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fgc_fgl_parse(
    ring: *const FgcRing,
    text: *const c_char,
    order: u32,
    out: *mut *mut FgcFgl,
) -> FgcStatus {
    run(|| {
        let ring = get(ring, "ring")?;
        let s = parse_series(self::text(text, "fgl text")?, &ring.0, &["x", "y"], order)?;
        put(out, FgcFgl(Fgl::validate(&s, order)?))
    })
}

/// # Safety
/// `ring` must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fgc_fgl_additive(ring: *const FgcRing, order: u32, out: *mut *mut FgcFgl) -> FgcStatus {
    run(|| put(out, FgcFgl(Fgl::additive(&get(ring, "ring")?.0, order))))
}

/// # Safety
/// `ring` must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fgc_fgl_multiplicative(ring: *const FgcRing, order: u32, out: *mut *mut FgcFgl) -> FgcStatus {
    run(|| put(out, FgcFgl(Fgl::multiplicative(&get(ring, "ring")?.0, order))))
}

/// The universal law below `order` over its coefficient ring, which
/// [`fgc_fgl_ring`] returns. `cancel` may be null.
///
/// # Safety
/// `cancel` must be null or live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fgc_fgl_universal(order: u32, cancel: *const FgcCancel, out: *mut *mut FgcFgl) -> FgcStatus {
    run(|| put(out, FgcFgl(universal_fgl_with_cancel(order, cancel_token(cancel))?.fgl)))
}

/// A new handle to the coefficient ring of `fgl`.
///
/// # Safety
/// `fgl` must be null or live.
#[no_mangle]
pub unsafe extern "C" fn fgc_fgl_ring(fgl: *const FgcFgl) -> *mut FgcRing {
    fgl.as_ref().map_or(ptr::null_mut(), |f| Box::into_raw(Box::new(FgcRing(f.0.ring().clone()))))
}

/// The `[n]`-series. `cancel` may be null.
///
/// # Safety
/// `fgl` must be live; `cancel` null or live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fgc_fgl_n_series(
    fgl: *const FgcFgl,
    n: i64,
    cancel: *const FgcCancel,
    out: *mut *mut FgcSeries,
) -> FgcStatus {
    run(|| {
        let s = get(fgl, "fgl")?.0.n_series_with_cancel(n, cancel_token(cancel))?;
        put(out, FgcSeries(s))
    })
}

/// Logarithm over a Q-algebra.
///
/// # Safety
/// `fgl` must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fgc_fgl_log(fgl: *const FgcFgl, out: *mut *mut FgcSeries) -> FgcStatus {
    run(|| put(out, FgcSeries(get(fgl, "fgl")?.0.log()?)))
}

/// Height at the prime `p`; the ring must have characteristic `p`.
///
/// # Safety
/// `fgl` must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fgc_fgl_height(fgl: *const FgcFgl, p: u64, out: *mut FgcHeight) -> FgcStatus {
    run(|| {
        let h = match height(&get(fgl, "fgl")?.0, p)? {
            Height::Finite { height, unit } => FgcHeight { finite: true, height, unit },
            Height::InfiniteUpToOrder(order) => FgcHeight { finite: false, height: order, unit: false },
        };
        *out.as_mut().ok_or_else(|| Failure::Input("output pointer is null".into()))? = h;
        Ok(())
    })
}

/// # Safety
/// `fgl` must be null or live.
#[no_mangle]
pub unsafe extern "C" fn fgc_fgl_to_string(fgl: *const FgcFgl) -> *mut c_char {
    fgl.as_ref().map_or(ptr::null_mut(), |f| owned(f.0.to_string()))
}

/// # Safety
/// `fgl` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fgc_fgl_free(fgl: *mut FgcFgl) {
    free(fgl)
}

// ---- finite Hopf algebras ----

/// Reads the JSON structure-constant format.
///
/// # Safety
/// `json` must be NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fgc_hopf_from_json(json: *const c_char, out: *mut *mut FgcHopf) -> FgcStatus {
    run(|| put(out, FgcHopf(FiniteHopf::from_json(text(json, "json")?)?)))
}

/// A bundled example such as `"group:3"` or `"divided-power:2"`.
///
/// # Safety
/// `name` must be NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fgc_hopf_example(name: *const c_char, out: *mut *mut FgcHopf) -> FgcStatus {
    run(|| put(out, FgcHopf(hopf::example(text(name, "name")?)?)))
}

/// Number of failed axiom instances; zero means the algebra is valid.
///
/// # Safety
/// `h` must be live; `violations` writable.
#[no_mangle]
pub unsafe extern "C" fn fgc_hopf_check(h: *const FgcHopf, violations: *mut usize) -> FgcStatus {
    run(|| {
        let n = get(h, "hopf")?.0.check().len();
        *violations.as_mut().ok_or_else(|| Failure::Input("output pointer is null".into()))? = n;
        Ok(())
    })
}

/// A copy of `h` with its antipode computed and verified.
///
/// # Safety
/// `h` must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fgc_hopf_with_antipode(h: *const FgcHopf, out: *mut *mut FgcHopf) -> FgcStatus {
    run(|| {
        let h = &get(h, "hopf")?.0;
        let chi = h.compute_antipode()?;
        put(out, FgcHopf(h.with_antipode(chi)?))
    })
}

/// # Safety
/// `h` must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fgc_hopf_dual(h: *const FgcHopf, out: *mut *mut FgcHopf) -> FgcStatus {
    run(|| put(out, FgcHopf(get(h, "hopf")?.0.cartier_dual())))
}

/// # Safety
/// `h` must be null or live.
#[no_mangle]
pub unsafe extern "C" fn fgc_hopf_rank(h: *const FgcHopf) -> usize {
    h.as_ref().map_or(0, |h| h.0.rank())
}

/// # Safety
/// `h` must be null or live.
#[no_mangle]
pub unsafe extern "C" fn fgc_hopf_to_json(h: *const FgcHopf) -> *mut c_char {
    h.as_ref().map_or(ptr::null_mut(), |h| owned(h.0.to_json()))
}

/// # Safety
/// `h` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fgc_hopf_free(h: *mut FgcHopf) {
    free(h)
}

// ---- cancellation ----

/// A token that may be triggered from any thread while a computation that
/// received it is running.
#[no_mangle]
pub extern "C" fn fgc_cancel_new() -> *mut FgcCancel {
    Box::into_raw(Box::new(FgcCancel(CancelToken::new())))
}

/// # Safety
/// `c` must be null or live.
#[no_mangle]
pub unsafe extern "C" fn fgc_cancel_trigger(c: *const FgcCancel) {
    if let Some(c) = c.as_ref() {
        c.0.cancel();
    }
}

/// # Safety
/// `c` must be null or a token not yet freed and no longer in use.
#[no_mangle]
pub unsafe extern "C" fn fgc_cancel_free(c: *mut FgcCancel) {
    free(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_follows_error_class() {
        assert_eq!(run(|| Err(Error::Cancelled.into())), FgcStatus::Cancelled);
        assert_eq!(run(|| Err(Error::NotAUnit("2".into()).into())), FgcStatus::Precondition);
        assert_eq!(run(|| Err(Error::UnsupportedRing("Q".into()).into())), FgcStatus::UnsupportedRing);
        assert_eq!(run(|| Err(Error::VerificationFailed("x".into()).into())), FgcStatus::Verification);
        assert_eq!(run(|| Ok(())), FgcStatus::Ok);
    }

    #[test]
    fn panics_become_internal_errors() {
        let status = run(|| panic!("boom"));
        assert_eq!(status, FgcStatus::Internal);
        LAST_ERROR.with(|slot| {
            let slot = slot.borrow();
            let e = slot.as_ref().unwrap();
            assert_eq!((e.code, e.message.as_str()), ("internal", "boom"));
        });
    }
}
