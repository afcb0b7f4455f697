//! Explicit normalized tight windows at critical density, and a seeded sampler.
//!
//! On a critical lattice (`ab = L`, so `N = b` and `q = a`) the window splits
//! into the `a` residue sequences `z_y(n) = g(y + n a)`, `n in [0, b)`. The
//! correlation conditions decouple per residue: `G_k` vanishing for `k != 0`
//! says `z_y` is orthogonal to its cyclic shifts, and `G_0 = b/L` fixes
//! `‖z_y‖² = b/L`. Equivalently the length-`b` unitary DFT of `z_y` has constant
//! modulus `L^{-1/2}`, so every such window is
//!
//! ```text
//! z_y = idft( L^{-1/2} exp(2 pi i phi[y][j]) )
//! ```
//!
//! for a real phase array `phi` (stored in cycles, i.e. mod 1).
//!
//! On oversampled lattices there is no such parametrization; the sampler
//! falls back to `S^{-1/2} g` for a random `g`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frame::tighten;
use crate::lattice::{dft_slice, inner_slice, GaborLattice, Signal};

/// Attempts at drawing a random frame before giving up.
pub const MAX_DRAWS: usize = 16;

/// Phase array `phi[y][j]` (`a` rows of `b` phases, in cycles) on a critical lattice.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PhaseSpecFile", into = "PhaseSpecFile")]
pub struct PhaseSpec {
    lat: GaborLattice,
    phases: Vec<Vec<f64>>,
}

#[derive(Serialize, Deserialize)]
struct PhaseSpecFile {
    #[serde(rename = "L")]
    len: usize,
    a: usize,
    b: usize,
    phases: Vec<Vec<f64>>,
}

impl TryFrom<PhaseSpecFile> for PhaseSpec {
    type Error = Error;

    fn try_from(f: PhaseSpecFile) -> Result<Self> {
        PhaseSpec::new(GaborLattice::new(f.len, f.a, f.b)?, f.phases)
    }
}

impl From<PhaseSpec> for PhaseSpecFile {
    fn from(p: PhaseSpec) -> Self {
        PhaseSpecFile {
            len: p.lat.len(),
            a: p.lat.a(),
            b: p.lat.b(),
            phases: p.phases,
        }
    }
}

impl PhaseSpec {
    pub fn new(lat: GaborLattice, phases: Vec<Vec<f64>>) -> Result<Self> {
        require_critical(&lat)?;
        let shape_ok = phases.len() == lat.a()
            && phases
                .iter()
                .all(|row| row.len() == lat.b() && row.iter().all(|v| v.is_finite()));
        if !shape_ok {
            return Err(Error::PhaseShape {
                rows: lat.a(),
                cols: lat.b(),
            });
        }
        Ok(PhaseSpec { lat, phases })
    }

    pub fn lattice(&self) -> &GaborLattice {
        &self.lat
    }

    pub fn phases(&self) -> &[Vec<f64>] {
        &self.phases
    }
}

fn require_critical(lat: &GaborLattice) -> Result<()> {
    if lat.is_critical() {
        Ok(())
    } else {
        Err(Error::NotCritical {
            len: lat.len(),
            a: lat.a(),
            b: lat.b(),
        })
    }
}

fn cyclic_shift(z: &[Complex64], s: usize) -> Vec<Complex64> {
    let n = z.len();
    (0..n).map(|i| z[(i + n - s % n) % n]).collect()
}

/// `max(max_{s=1..N-1} |<z, T_s z>|, |‖z‖² - target_norm_sq|)`.
pub fn shift_orthogonality_residual(z: &[Complex64], target_norm_sq: f64) -> f64 {
    let norm_sq: f64 = z.iter().map(|v| v.norm_sqr()).sum();
    (1..z.len())
        .map(|s| inner_slice(z, &cyclic_shift(z, s)).norm())
        .fold((norm_sq - target_norm_sq).abs(), f64::max)
}

/// `max_j ||dft(z)(j)|² - flat_value|` with the unitary length-`N` DFT.
pub fn flat_spectrum_residual(z: &[Complex64], flat_value: f64) -> f64 {
    dft_slice(z, false)
        .iter()
        .map(|w| (w.norm_sqr() - flat_value).abs())
        .fold(0.0, f64::max)
}

/// Builds `g(y + n a) = idft(L^{-1/2} exp(2 pi i phi[y]))(n)`.
pub fn tight_generator_from_phases(spec: &PhaseSpec) -> Result<Signal> {
    let lat = spec.lattice();
    let len = lat.len();
    let amplitude = 1.0 / (len as f64).sqrt();
    let mut g = vec![Complex64::new(0.0, 0.0); len];
    for (y, row) in spec.phases().iter().enumerate() {
        let spectrum: Vec<Complex64> = row
            .iter()
            .map(|&phi| Complex64::from_polar(amplitude, 2.0 * std::f64::consts::PI * phi))
            .collect();
        for (n, v) in dft_slice(&spectrum, true).into_iter().enumerate() {
            g[y + n * lat.a()] = v;
        }
    }
    Ok(Signal::from(g))
}

/// Recovers the phase array of a normalized tight window on a critical lattice.
///
/// Fails with `NotTight` if some residue spectrum has a modulus further than
/// `tol` from `L^{-1/2}`. Phases are returned in `[0, 1)`.
pub fn phases_from_tight_generator(lat: &GaborLattice, g: &Signal, tol: f64) -> Result<PhaseSpec> {
    require_critical(lat)?;
    lat.check_len(g)?;
    let amplitude = 1.0 / (lat.len() as f64).sqrt();
    let mut phases = Vec::with_capacity(lat.a());
    let mut deviation: f64 = 0.0;
    for y in 0..lat.a() {
        let z: Vec<Complex64> = (0..lat.b()).map(|n| g[y + n * lat.a()]).collect();
        let spectrum = dft_slice(&z, false);
        deviation = spectrum
            .iter()
            .map(|w| (w.norm() - amplitude).abs())
            .fold(deviation, f64::max);
        phases.push(
            spectrum
                .iter()
                .map(|w| (w.arg() / (2.0 * std::f64::consts::PI)).rem_euclid(1.0))
                .collect(),
        );
    }
    if deviation > tol {
        return Err(Error::NotTight { deviation });
    }
    PhaseSpec::new(*lat, phases)
}

/// Seeded phase array with independent uniform entries.
pub fn random_phase_spec(lat: &GaborLattice, seed: u64) -> Result<PhaseSpec> {
    require_critical(lat)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let phases = (0..lat.a())
        .map(|_| (0..lat.b()).map(|_| rng.random::<f64>()).collect())
        .collect();
    PhaseSpec::new(*lat, phases)
}

/// A normalized tight window for any lattice with `ab <= L`.
///
/// Critical lattices use uniformly random phases; oversampled lattices
/// tighten a complex Gaussian draw, redrawing if it fails to be a frame.
pub fn random_tight_generator(lat: &GaborLattice, seed: u64) -> Result<Signal> {
    let (ab, len) = lat.density_ratio();
    if ab > len {
        return Err(Error::DensityTooHigh { ab, len });
    }
    if lat.is_critical() {
        return tight_generator_from_phases(&random_phase_spec(lat, seed)?);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_DRAWS {
        let g = random_gaussian(lat.len(), &mut rng);
        match tighten(lat, &g) {
            Ok(t) => return Ok(t),
            Err(Error::NotAFrame { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::RetriesExhausted {
        attempts: MAX_DRAWS,
    })
}

/// Complex Gaussian vector with independent standard normal parts.
pub fn random_gaussian<R: Rng>(len: usize, rng: &mut R) -> Signal {
    Signal::from_fn(len, |_| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}
