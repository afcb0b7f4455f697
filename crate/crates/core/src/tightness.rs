//! Deciding normalized tightness through four independent characterizations.
//!
//! A Gabor system is a normalized tight frame (`S = I`) exactly when any one of
//! the following holds, and each is computed by its own route:
//!
//! 2. correlation form: `G_0(x) = b/L` for all `x` and `G_k = 0` for `k != 0`;
//! 3. adjoint form: `g` is orthogonal to every nontrivial adjoint atom and `‖g‖² = ab/L`;
//! 4. the adjoint atoms form an orthogonal system and `‖g‖² = ab/L`;
//! 5. the system is a frame and `S g = g`.
//!
//! Every residual is an absolute maximum deviation; a condition holds when its
//! residual is at most the caller's tolerance.

use num_complex::Complex64;
use serde::Serialize;

use crate::correlation::correlation_profile;
use crate::error::Result;
use crate::frame::{frame_operator, FrameBounds};
use crate::lattice::{adjoint_atom_unchecked, adjoint_atoms, dft, inner, GaborLattice, Signal};

/// Residual charged to the fixed-point condition when the system is not a frame.
pub const FRAME_FAILURE_RESIDUAL: f64 = 1.0;

pub const DEFAULT_TOL: f64 = 1e-9;

/// `max(max_x |G_0(x) - b/L|, max_{k != 0, x} |G_k(x)|)`.
pub fn check_cond_walnut(lat: &GaborLattice, g: &Signal) -> Result<f64> {
    let profile = correlation_profile(lat, g)?;
    let target = lat.tight_profile_level();
    let mut worst: f64 = 0.0;
    for x in 0..lat.len() {
        worst = worst.max((profile.get(0, x) - target).norm());
        for k in 1..lat.b() {
            worst = worst.max(profile.get(k, x).norm());
        }
    }
    Ok(worst)
}

/// `max(max_{(k,l) != 0} |<g, E_{kp} T_{lq} g>|, |‖g‖² - ab/L|)`.
pub fn check_cond_adjoint(lat: &GaborLattice, g: &Signal) -> Result<f64> {
    lat.check_len(g)?;
    let mut worst = (g.norm_sq() - lat.tight_norm_sq()).abs();
    for k in 0..lat.a() {
        for l in 0..lat.b() {
            if (k, l) != (0, 0) {
                worst = worst.max(inner(g, &adjoint_atom_unchecked(lat, g, k, l)).norm());
            }
        }
    }
    Ok(worst)
}

/// Largest off-diagonal modulus of the adjoint Gram matrix, combined with the
/// deviation of each adjoint atom's squared norm from `ab/L`.
pub fn check_cond_orthogonal_system(lat: &GaborLattice, g: &Signal) -> Result<f64> {
    let atoms = adjoint_atoms(lat, g)?;
    let target = lat.tight_norm_sq();
    let mut worst: f64 = 0.0;
    for (i, u) in atoms.iter().enumerate() {
        worst = worst.max((u.norm_sq() - target).abs());
        for v in &atoms[i + 1..] {
            worst = worst.max(inner(u, v).norm());
        }
    }
    Ok(worst)
}

/// `‖S g - g‖_inf`, or at least [`FRAME_FAILURE_RESIDUAL`] when the system is not a frame.
pub fn check_cond_fixed_point(lat: &GaborLattice, g: &Signal) -> Result<f64> {
    let s = frame_operator(lat, g)?;
    Ok(fixed_point_residual(&s.apply(g)?, g, &s.bounds()))
}

fn fixed_point_residual(sg: &Signal, g: &Signal, bounds: &FrameBounds) -> f64 {
    let residual = sg.max_abs_diff(g);
    if bounds.is_frame() {
        residual
    } else {
        residual.max(FRAME_FAILURE_RESIDUAL)
    }
}

/// Verdicts and residuals for all tightness characterizations of one window.
#[derive(Debug, Clone, Serialize)]
pub struct TightnessReport {
    pub lattice: GaborLattice,
    pub bounds: FrameBounds,
    pub is_frame: bool,
    /// `c` with `S = c I`, present only for tight frames.
    pub tight_constant: Option<f64>,
    pub normalized_tight: bool,
    pub onb: bool,
    pub riesz_basis: bool,
    pub cond2_residual: f64,
    pub cond3_residual: f64,
    pub cond4_residual: f64,
    pub cond5_residual: f64,
    /// The four condition verdicts and `A = B = 1` all coincide.
    pub conditions_agree: bool,
    pub norm_sq: f64,
    /// `b / L`, the tight level of `G_0`.
    pub target_profile_level: f64,
    /// `ab / L`, the tight value of `‖g‖²`.
    pub target_norm_sq: f64,
    pub tol: f64,
}

impl TightnessReport {
    /// Per-condition verdicts (2), (3), (4), (5).
    pub fn verdicts(&self) -> [bool; 4] {
        [
            self.cond2_residual <= self.tol,
            self.cond3_residual <= self.tol,
            self.cond4_residual <= self.tol,
            self.cond5_residual <= self.tol,
        ]
    }
}

pub fn classify(lat: &GaborLattice, g: &Signal, tol: f64) -> Result<TightnessReport> {
    let s = frame_operator(lat, g)?;
    let bounds = s.bounds();
    let is_frame = bounds.is_frame();
    let spread = 0.5 * (bounds.upper - bounds.lower);
    let tight_constant = (is_frame && spread <= tol * bounds.upper.max(1.0))
        .then_some(0.5 * (bounds.upper + bounds.lower));
    let normalized_tight = (bounds.lower - 1.0).abs() <= tol && (bounds.upper - 1.0).abs() <= tol;
    let norm_sq = g.norm_sq();
    let onb = normalized_tight && (norm_sq.sqrt() - 1.0).abs() <= tol;
    let riesz_basis = is_frame && lat.atom_count() == lat.len();

    let cond5 = fixed_point_residual(&s.apply(g)?, g, &bounds);
    let mut report = TightnessReport {
        lattice: *lat,
        bounds,
        is_frame,
        tight_constant,
        normalized_tight,
        onb,
        riesz_basis,
        cond2_residual: check_cond_walnut(lat, g)?,
        cond3_residual: check_cond_adjoint(lat, g)?,
        cond4_residual: check_cond_orthogonal_system(lat, g)?,
        cond5_residual: cond5,
        conditions_agree: false,
        norm_sq,
        target_profile_level: lat.tight_profile_level(),
        target_norm_sq: lat.tight_norm_sq(),
        tol,
    };
    report.conditions_agree = report.verdicts().iter().all(|&v| v == normalized_tight);
    Ok(report)
}

/// Consequences of duality with the canonical window for an arbitrary frame.
#[derive(Debug, Clone, Serialize)]
pub struct DensityDiagnostics {
    /// `<S^{-1} g, g>`.
    pub canonical_inner: Complex64,
    /// `ab / L`.
    pub expected_inner: f64,
    pub inner_matches: bool,
    /// `ab <= L`.
    pub density_admissible: bool,
    pub riesz_basis: bool,
    pub critical: bool,
    /// Largest `|<S^{-1} g, E_{kp} T_{lq} g>|` over `(k, l) != (0, 0)`.
    pub max_adjoint_cross: f64,
    pub holds: bool,
}

/// Requires a frame; fails with `NotAFrame` otherwise, which is always the case when `ab > L`.
pub fn density_diagnostics(lat: &GaborLattice, g: &Signal, tol: f64) -> Result<DensityDiagnostics> {
    let s = frame_operator(lat, g)?;
    let dual = s.solve(g)?;
    let canonical_inner = inner(&dual, g);
    let expected_inner = lat.tight_norm_sq();
    let inner_matches = (canonical_inner - expected_inner).norm() <= tol;
    let mut max_adjoint_cross: f64 = 0.0;
    for k in 0..lat.a() {
        for l in 0..lat.b() {
            if (k, l) != (0, 0) {
                let v = inner(&dual, &adjoint_atom_unchecked(lat, g, k, l)).norm();
                max_adjoint_cross = max_adjoint_cross.max(v);
            }
        }
    }
    let density_admissible = lat.a() * lat.b() <= lat.len();
    let riesz_basis = lat.atom_count() == lat.len();
    let critical = lat.is_critical();
    Ok(DensityDiagnostics {
        canonical_inner,
        expected_inner,
        inner_matches,
        density_admissible,
        riesz_basis,
        critical,
        max_adjoint_cross,
        holds: inner_matches
            && density_admissible
            && riesz_basis == critical
            && max_adjoint_cross <= tol,
    })
}

/// Tightness of `(g; L, a, b)` against that of `(dft(g); L, b, a)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FourierDualReport {
    pub time_tight: bool,
    pub frequency_tight: bool,
    pub agree: bool,
}

pub fn fourier_dual_check(lat: &GaborLattice, g: &Signal, tol: f64) -> Result<FourierDualReport> {
    let time_tight = classify(lat, g, tol)?.normalized_tight;
    let frequency_tight = classify(&lat.swapped(), &dft(g), tol)?.normalized_tight;
    Ok(FourierDualReport {
        time_tight,
        frequency_tight,
        agree: time_tight == frequency_tight,
    })
}
