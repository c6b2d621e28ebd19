//! C ABI over `harmap`.
//!
//! Maps cross the boundary as opaque `HarmapMap*` handles owned by the caller
//! and released with `harmap_map_free`. Every entry point returns a
//! `HarmapStatus`; on failure `harmap_last_error_message` describes the error
//! for the calling thread. Coefficient arrays are interleaved `re, im` pairs.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use harmap::closure::{convex_combination, convolve_harmonic};
use harmap::document::{load_map_from_reader, to_json_string};
use harmap::operator::{membership_sampled, membership_sufficient};
use harmap::radii::{
    numeric_radius_oracle, radius_fully_convex, radius_fully_starlike, CircleProperty,
};
use harmap::{Complex64, Error, HarmonicMap, MembershipVerdict, PolarGrid, TruncatedSeries};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HarmapStatus {
    Ok = 0,
    NullPointer = 1,
    Domain = 2,
    NonFinite = 3,
    InvalidParams = 4,
    Normalization = 5,
    InvalidArgument = 6,
    Degenerate = 7,
    Consistency = 8,
    Schema = 9,
    Io = 10,
    Utf8 = 11,
    Panic = 12,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HarmapProperty {
    Starlike = 0,
    Convex = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarmapParams {
    pub gamma: f64,
    pub delta: f64,
    pub lambda: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarmapGrid {
    pub radii: usize,
    pub angles: usize,
    pub r_max: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarmapVerdict {
    pub holds: bool,
    pub margin: f64,
    pub witness_re: f64,
    pub witness_im: f64,
    pub samples: usize,
    pub near_degenerate: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarmapRadius {
    pub radius: f64,
    pub bracket_lo: f64,
    pub bracket_hi: f64,
    pub residual: f64,
    pub iterations: usize,
}

/// Opaque map handle.
pub struct HarmapMap {
    inner: HarmonicMap,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let text = CString::new(message.replace('\0', " ")).expect("NULs removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(text));
}

fn status_of(err: &Error) -> HarmapStatus {
    match err {
        Error::Domain(_) => HarmapStatus::Domain,
        Error::NonFinite(_) => HarmapStatus::NonFinite,
        Error::InvalidParams(_) => HarmapStatus::InvalidParams,
        Error::Normalization(_) => HarmapStatus::Normalization,
        Error::InvalidArgument(_) => HarmapStatus::InvalidArgument,
        Error::Degenerate(_) => HarmapStatus::Degenerate,
        Error::Consistency(_) => HarmapStatus::Consistency,
        Error::Schema { .. } => HarmapStatus::Schema,
        Error::Io { .. } => HarmapStatus::Io,
    }
}

struct Failure(HarmapStatus, String);

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        Failure(status_of(&err), err.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(HarmapStatus::NullPointer, format!("{what} is null"))
}

/// Runs `body`, converting errors and panics into a status.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> HarmapStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
            HarmapStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_last_error(message);
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_last_error(format!("internal panic: {message}"));
            HarmapStatus::Panic
        }
    }
}

unsafe fn map_ref<'a>(map: *const HarmapMap) -> Result<&'a HarmonicMap, Failure> {
    map.as_ref().map(|m| &m.inner).ok_or_else(|| null("map"))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

fn boxed(map: HarmonicMap) -> *mut HarmapMap {
    Box::into_raw(Box::new(HarmapMap { inner: map }))
}

unsafe fn series_from(
    data: *const f64,
    len: usize,
    what: &str,
) -> Result<TruncatedSeries, Failure> {
    if len == 0 {
        return Ok(TruncatedSeries::zeros(1));
    }
    if data.is_null() {
        return Err(null(what));
    }
    let raw = std::slice::from_raw_parts(data, 2 * len);
    let coeffs = raw
        .chunks_exact(2)
        .map(|c| Complex64::new(c[0], c[1]))
        .collect();
    Ok(TruncatedSeries::new(coeffs)?)
}

fn params_of(p: &HarmapParams) -> Result<harmap::ClassParams, Failure> {
    Ok(harmap::ClassParams::new(p.gamma, p.delta, p.lambda)?)
}

unsafe fn params_in(p: *const HarmapParams) -> Result<harmap::ClassParams, Failure> {
    params_of(p.as_ref().ok_or_else(|| null("params"))?)
}

fn verdict_of(v: &MembershipVerdict) -> HarmapVerdict {
    HarmapVerdict {
        holds: v.holds,
        margin: v.margin,
        witness_re: v.witness.re,
        witness_im: v.witness.im,
        samples: v.samples,
        near_degenerate: v.near_degenerate,
    }
}

fn radius_of(r: &harmap::radii::RadiusReport) -> HarmapRadius {
    HarmapRadius {
        radius: r.radius,
        bracket_lo: r.bracket.0,
        bracket_hi: r.bracket.1,
        residual: r.residual,
        iterations: r.iterations,
    }
}

/// Message of the last failed call on this thread, or NULL. Valid until the next call.
#[no_mangle]
pub extern "C" fn harmap_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// The grid used when callers have no preference.
#[no_mangle]
pub extern "C" fn harmap_grid_default() -> HarmapGrid {
    let g = PolarGrid::default();
    HarmapGrid {
        radii: g.radii,
        angles: g.angles,
        r_max: g.r_max,
    }
}

/// # Safety
/// `params` must point to a valid `HarmapParams`.
#[no_mangle]
pub unsafe extern "C" fn harmap_params_validate(params: *const HarmapParams) -> HarmapStatus {
    guard(|| params_in(params).map(|_| ()))
}

/// Builds `s(z) + conj(t(z))` from `s_len`/`t_len` interleaved coefficient pairs.
/// `t_len = 0` means `t ≡ 0`.
///
/// # Safety
/// `s` must hold `2·s_len` doubles, `t` `2·t_len`, and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn harmap_map_new(
    s: *const f64,
    s_len: usize,
    t: *const f64,
    t_len: usize,
    out: *mut *mut HarmapMap,
) -> HarmapStatus {
    guard(|| {
        let s = series_from(s, s_len, "s")?;
        let t = series_from(t, t_len, "t")?;
        let map = HarmonicMap::new(s, t)?;
        write_out(out, boxed(map))
    })
}

/// # Safety
/// `params` must be valid and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn harmap_map_extremal_single(
    params: *const HarmapParams,
    m: usize,
    out: *mut *mut HarmapMap,
) -> HarmapStatus {
    guard(|| {
        let p = params_in(params)?;
        write_out(out, boxed(harmap::harmonic::make_extremal_single(&p, m)?))
    })
}

/// # Safety
/// `params` must be valid and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn harmap_map_extremal_full(
    params: *const HarmapParams,
    order: usize,
    out: *mut *mut HarmapMap,
) -> HarmapStatus {
    guard(|| {
        let p = params_in(params)?;
        write_out(out, boxed(harmap::harmonic::make_extremal_full(&p, order)?))
    })
}

/// # Safety
/// `map` must come from this library and not be used afterwards. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn harmap_map_free(map: *mut HarmapMap) {
    if !map.is_null() {
        drop(Box::from_raw(map));
    }
}

/// Truncation order N, or 0 for a NULL handle.
///
/// # Safety
/// `map` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn harmap_map_order(map: *const HarmapMap) -> usize {
    map.as_ref().map_or(0, |m| m.inner.order())
}

/// # Safety
/// `map` must be a live handle; `out_re` and `out_im` writable.
#[no_mangle]
pub unsafe extern "C" fn harmap_map_evaluate(
    map: *const HarmapMap,
    re: f64,
    im: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> HarmapStatus {
    guard(|| {
        let w = map_ref(map)?.evaluate(Complex64::new(re, im))?;
        write_out(out_re, w.re)?;
        write_out(out_im, w.im)
    })
}

/// # Safety
/// All pointers must be valid; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn harmap_membership_sampled(
    map: *const HarmapMap,
    params: *const HarmapParams,
    grid: *const HarmapGrid,
    out: *mut HarmapVerdict,
) -> HarmapStatus {
    guard(|| {
        let f = map_ref(map)?;
        let p = params_in(params)?;
        let g = grid.as_ref().ok_or_else(|| null("grid"))?;
        let grid = PolarGrid {
            radii: g.radii,
            angles: g.angles,
            r_max: g.r_max,
        };
        let verdict = membership_sampled(f, &p, &grid)?;
        write_out(out, verdict_of(&verdict))
    })
}

/// Coefficient-sum test; writes the sum and its bound `2(γ−λ)`.
///
/// # Safety
/// All pointers must be valid; outputs writable.
#[no_mangle]
pub unsafe extern "C" fn harmap_membership_sufficient(
    map: *const HarmapMap,
    params: *const HarmapParams,
    out_holds: *mut bool,
    out_sum: *mut f64,
    out_bound: *mut f64,
) -> HarmapStatus {
    guard(|| {
        let report = membership_sufficient(map_ref(map)?, &params_in(params)?);
        write_out(out_holds, report.holds)?;
        write_out(out_sum, report.sum)?;
        write_out(out_bound, report.bound)
    })
}

/// # Safety
/// `params` must be valid and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn harmap_radius_fully_convex(
    params: *const HarmapParams,
    tol: f64,
    out: *mut HarmapRadius,
) -> HarmapStatus {
    guard(|| {
        write_out(
            out,
            radius_of(&radius_fully_convex(&params_in(params)?, tol)?),
        )
    })
}

/// # Safety
/// `params` must be valid and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn harmap_radius_fully_starlike(
    params: *const HarmapParams,
    tol: f64,
    out: *mut HarmapRadius,
) -> HarmapStatus {
    guard(|| {
        write_out(
            out,
            radius_of(&radius_fully_starlike(&params_in(params)?, tol)?),
        )
    })
}

/// Numeric radius of `property` for one map, from circle tests with `n` angles.
///
/// # Safety
/// `map` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn harmap_radius_oracle(
    map: *const HarmapMap,
    property: HarmapProperty,
    tol: f64,
    n: usize,
    out: *mut HarmapRadius,
) -> HarmapStatus {
    guard(|| {
        let property = match property {
            HarmapProperty::Starlike => CircleProperty::Starlike,
            HarmapProperty::Convex => CircleProperty::Convex,
        };
        let report = numeric_radius_oracle(map_ref(map)?, property, tol, n)?;
        write_out(out, radius_of(&report))
    })
}

/// Lower and upper growth bounds at radius `r` from `terms` series terms, tails included.
///
/// # Safety
/// `params` must be valid; outputs writable.
#[no_mangle]
pub unsafe extern "C" fn harmap_growth(
    params: *const HarmapParams,
    r: f64,
    terms: usize,
    out_lower: *mut f64,
    out_upper: *mut f64,
) -> HarmapStatus {
    guard(|| {
        let p = params_in(params)?;
        let lower = harmap::bounds::growth_lower(&p, r, terms)?;
        let upper = harmap::bounds::growth_upper(&p, r, terms)?;
        write_out(out_lower, lower.value)?;
        write_out(out_upper, upper.value)
    })
}

/// Harmonic convolution `s₁∗s₂ + conj(t₁∗t₂)`.
///
/// # Safety
/// `a`, `b` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn harmap_convolve(
    a: *const HarmapMap,
    b: *const HarmapMap,
    out: *mut *mut HarmapMap,
) -> HarmapStatus {
    guard(|| {
        let map = convolve_harmonic(map_ref(a)?, map_ref(b)?);
        write_out(out, boxed(map))
    })
}

/// Weighted sum of `count` maps; weights must be non-negative and sum to 1.
///
/// # Safety
/// `maps` and `weights` must each hold `count` entries; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn harmap_convex_combination(
    maps: *const *const HarmapMap,
    weights: *const f64,
    count: usize,
    out: *mut *mut HarmapMap,
) -> HarmapStatus {
    guard(|| {
        if count > 0 && (maps.is_null() || weights.is_null()) {
            return Err(null("maps or weights"));
        }
        let handles: &[*const HarmapMap] = if count == 0 {
            &[]
        } else {
            std::slice::from_raw_parts(maps, count)
        };
        let owned = handles
            .iter()
            .map(|&h| map_ref(h).cloned())
            .collect::<Result<Vec<_>, _>>()?;
        let weights: &[f64] = if count == 0 {
            &[]
        } else {
            std::slice::from_raw_parts(weights, count)
        };
        write_out(out, boxed(convex_combination(&owned, weights)?))
    })
}

/// Parses a map document from NUL-terminated JSON.
///
/// # Safety
/// `json` must be a valid C string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn harmap_map_from_json(
    json: *const c_char,
    out: *mut *mut HarmapMap,
) -> HarmapStatus {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|e| Failure(HarmapStatus::Utf8, e.to_string()))?;
        let loaded = load_map_from_reader(text.as_bytes())?;
        write_out(out, boxed(loaded.map))
    })
}

/// Serializes a map as a document; release the string with `harmap_string_free`.
///
/// # Safety
/// `map` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn harmap_map_to_json(
    map: *const HarmapMap,
    out: *mut *mut c_char,
) -> HarmapStatus {
    guard(|| {
        let doc = harmap::document::MapDocument::from_map(map_ref(map)?, None, None);
        let text = CString::new(to_json_string(&doc)).expect("JSON has no NUL");
        write_out(out, text.into_raw())
    })
}

/// # Safety
/// `s` must come from `harmap_map_to_json`, or be NULL.
#[no_mangle]
pub unsafe extern "C" fn harmap_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
