//! C ABI for `whframe`.
//!
//! Signals cross the boundary as interleaved `double` arrays
//! (`re0, im0, re1, im1, ...`) of `2 * len` entries, where `len` is the
//! number of complex samples. Every call returns a [`WhStatus`]; on failure
//! the message is kept per thread and read with [`wh_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use whframe::duality::{dual_space, wexler_raz_check, DualSpace};
use whframe::frame::{canonical_dual, frame_bounds, tighten};
use whframe::synth::{tight_generator_from_phases, PhaseSpec};
use whframe::tightness::classify;
use whframe::{Complex64, Error, GaborLattice, Signal};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WhStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidLattice = 2,
    LengthMismatch = 3,
    InvalidArgument = 4,
    NotAFrame = 5,
    NotTight = 6,
    NotCritical = 7,
    DensityTooHigh = 8,
    Panic = 9,
}

/// Opaque lattice handle.
pub struct WhLattice(GaborLattice);

/// Opaque handle to the affine space of dual windows of one frame.
pub struct WhDualSpace(DualSpace);

/// Tightness classification of one window.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct WhTightness {
    pub lower: f64,
    pub upper: f64,
    pub is_frame: bool,
    pub normalized_tight: bool,
    pub onb: bool,
    pub riesz_basis: bool,
    pub conditions_agree: bool,
    /// Residuals of the correlation, adjoint, orthogonal-system and fixed-point conditions.
    pub residuals: [f64; 4],
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> WhStatus {
    match e {
        Error::InvalidLattice { .. } => WhStatus::InvalidLattice,
        Error::LengthMismatch { .. } | Error::CoefficientLength { .. } => WhStatus::LengthMismatch,
        Error::NotAFrame { .. } => WhStatus::NotAFrame,
        Error::NotTight { .. } => WhStatus::NotTight,
        Error::NotCritical { .. } => WhStatus::NotCritical,
        Error::DensityTooHigh { .. } => WhStatus::DensityTooHigh,
        _ => WhStatus::InvalidArgument,
    }
}

struct Fail(WhStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(WhStatus::NullPointer, format!("`{what}` is null"))
}

fn guard(body: impl FnOnce() -> Result<(), Fail>) -> WhStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            WhStatus::Ok
        }
        Ok(Err(Fail(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            WhStatus::Panic
        }
    }
}

unsafe fn lattice<'a>(lat: *const WhLattice) -> Result<&'a GaborLattice, Fail> {
    lat.as_ref().map(|l| &l.0).ok_or_else(|| null("lattice"))
}

unsafe fn read_signal(data: *const f64, len: usize, what: &str) -> Result<Signal, Fail> {
    if data.is_null() {
        return Err(null(what));
    }
    let raw = std::slice::from_raw_parts(data, 2 * len);
    let values = raw
        .chunks_exact(2)
        .map(|p| Complex64::new(p[0], p[1]))
        .collect();
    Ok(Signal::new(values)?)
}

unsafe fn write_signal(s: &Signal, out: *mut f64) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("out"));
    }
    let dst = std::slice::from_raw_parts_mut(out, 2 * s.len());
    for (pair, z) in dst.chunks_exact_mut(2).zip(s.iter()) {
        pair[0] = z.re;
        pair[1] = z.im;
    }
    Ok(())
}

fn check_len(lat: &GaborLattice, len: usize) -> Result<(), Fail> {
    if len == lat.len() {
        Ok(())
    } else {
        Err(Error::LengthMismatch {
            expected: lat.len(),
            found: len,
        }
        .into())
    }
}

/// Copies the last error message of this thread into `buf` (nul-terminated,
/// truncated to `cap`). Returns the full message length without the nul, or
/// 0 when the last call succeeded.
///
/// # Safety
/// `buf` must be null or point to `cap` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn wh_last_error(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let Some(msg) = e.as_ref() else { return 0 };
        let bytes = msg.as_bytes();
        if !buf.is_null() && cap > 0 {
            let n = bytes.len().min(cap - 1);
            ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

/// # Safety
/// `out` must be a valid pointer; the handle is released with [`wh_lattice_free`].
#[no_mangle]
pub unsafe extern "C" fn wh_lattice_new(
    len: usize,
    a: usize,
    b: usize,
    out: *mut *mut WhLattice,
) -> WhStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let lat = GaborLattice::new(len, a, b)?;
        *out = Box::into_raw(Box::new(WhLattice(lat)));
        Ok(())
    })
}

/// # Safety
/// `lat` must come from [`wh_lattice_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn wh_lattice_free(lat: *mut WhLattice) {
    if !lat.is_null() {
        drop(Box::from_raw(lat));
    }
}

/// # Safety
/// `g` holds `2 * len` doubles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn wh_classify(
    lat: *const WhLattice,
    g: *const f64,
    len: usize,
    tol: f64,
    out: *mut WhTightness,
) -> WhStatus {
    guard(|| {
        let lat = lattice(lat)?;
        check_len(lat, len)?;
        let g = read_signal(g, len, "g")?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let r = classify(lat, &g, tol)?;
        *out = WhTightness {
            lower: r.bounds.lower,
            upper: r.bounds.upper,
            is_frame: r.is_frame,
            normalized_tight: r.normalized_tight,
            onb: r.onb,
            riesz_basis: r.riesz_basis,
            conditions_agree: r.conditions_agree,
            residuals: [
                r.cond2_residual,
                r.cond3_residual,
                r.cond4_residual,
                r.cond5_residual,
            ],
        };
        Ok(())
    })
}

/// # Safety
/// `g` holds `2 * len` doubles; `lower` and `upper` are writable.
#[no_mangle]
pub unsafe extern "C" fn wh_frame_bounds(
    lat: *const WhLattice,
    g: *const f64,
    len: usize,
    lower: *mut f64,
    upper: *mut f64,
) -> WhStatus {
    guard(|| {
        let lat = lattice(lat)?;
        check_len(lat, len)?;
        let g = read_signal(g, len, "g")?;
        if lower.is_null() || upper.is_null() {
            return Err(null("lower/upper"));
        }
        let b = frame_bounds(lat, &g)?;
        *lower = b.lower;
        *upper = b.upper;
        Ok(())
    })
}

/// # Safety
/// `g` and `out` each hold `2 * len` doubles.
#[no_mangle]
pub unsafe extern "C" fn wh_canonical_dual(
    lat: *const WhLattice,
    g: *const f64,
    len: usize,
    out: *mut f64,
) -> WhStatus {
    guard(|| {
        let lat = lattice(lat)?;
        check_len(lat, len)?;
        let g = read_signal(g, len, "g")?;
        write_signal(&canonical_dual(lat, &g)?, out)
    })
}

/// # Safety
/// `g` and `out` each hold `2 * len` doubles.
#[no_mangle]
pub unsafe extern "C" fn wh_tighten(
    lat: *const WhLattice,
    g: *const f64,
    len: usize,
    out: *mut f64,
) -> WhStatus {
    guard(|| {
        let lat = lattice(lat)?;
        check_len(lat, len)?;
        let g = read_signal(g, len, "g")?;
        write_signal(&tighten(lat, &g)?, out)
    })
}

/// # Safety
/// `g` and `h` each hold `2 * len` doubles; `residual` is writable.
#[no_mangle]
pub unsafe extern "C" fn wh_wexler_raz_residual(
    lat: *const WhLattice,
    g: *const f64,
    h: *const f64,
    len: usize,
    residual: *mut f64,
) -> WhStatus {
    guard(|| {
        let lat = lattice(lat)?;
        check_len(lat, len)?;
        let g = read_signal(g, len, "g")?;
        let h = read_signal(h, len, "h")?;
        let out = residual.as_mut().ok_or_else(|| null("residual"))?;
        *out = wexler_raz_check(lat, &g, &h)?;
        Ok(())
    })
}

/// Builds a normalized tight window from an `a x b` row-major phase array
/// (`count = a * b` cycles in `[0, 1)`) on a critical lattice.
///
/// # Safety
/// `phases` holds `count` doubles; `out` holds `2 * L` doubles.
#[no_mangle]
pub unsafe extern "C" fn wh_tight_generator_from_phases(
    lat: *const WhLattice,
    phases: *const f64,
    count: usize,
    out: *mut f64,
) -> WhStatus {
    guard(|| {
        let lat = lattice(lat)?;
        if phases.is_null() {
            return Err(null("phases"));
        }
        if count != lat.a() * lat.b() {
            return Err(Fail(
                WhStatus::InvalidArgument,
                format!("expected {} phases, found {count}", lat.a() * lat.b()),
            ));
        }
        let raw = std::slice::from_raw_parts(phases, count);
        let rows = raw.chunks(lat.b()).map(<[f64]>::to_vec).collect();
        let spec = PhaseSpec::new(*lat, rows)?;
        write_signal(&tight_generator_from_phases(&spec)?, out)
    })
}

/// # Safety
/// `g` holds `2 * len` doubles; the handle is released with [`wh_dual_space_free`].
#[no_mangle]
pub unsafe extern "C" fn wh_dual_space_new(
    lat: *const WhLattice,
    g: *const f64,
    len: usize,
    out: *mut *mut WhDualSpace,
) -> WhStatus {
    guard(|| {
        let lat = lattice(lat)?;
        check_len(lat, len)?;
        let g = read_signal(g, len, "g")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let space = dual_space(lat, &g)?;
        *out = Box::into_raw(Box::new(WhDualSpace(space)));
        Ok(())
    })
}

/// Number of free complex coefficients; 0 for a null handle.
///
/// # Safety
/// `space` is null or came from [`wh_dual_space_new`].
#[no_mangle]
pub unsafe extern "C" fn wh_dual_space_dimension(space: *const WhDualSpace) -> usize {
    space.as_ref().map_or(0, |s| s.0.dimension())
}

/// Dual window with the given interleaved coefficients (`count` complex values).
///
/// # Safety
/// `coeffs` holds `2 * count` doubles (may be null when `count` is 0); `out` holds `2 * L` doubles.
#[no_mangle]
pub unsafe extern "C" fn wh_dual_space_make_dual(
    space: *const WhDualSpace,
    coeffs: *const f64,
    count: usize,
    out: *mut f64,
) -> WhStatus {
    guard(|| {
        let space = space.as_ref().ok_or_else(|| null("space"))?;
        let coeffs: Vec<Complex64> = if count == 0 {
            Vec::new()
        } else {
            read_signal(coeffs, count, "coeffs")?.into_vec()
        };
        write_signal(&space.0.alternate_dual(&coeffs)?, out)
    })
}

/// # Safety
/// `space` must come from [`wh_dual_space_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn wh_dual_space_free(space: *mut WhDualSpace) {
    if !space.is_null() {
        drop(Box::from_raw(space));
    }
}
