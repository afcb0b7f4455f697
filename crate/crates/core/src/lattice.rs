//! Lattices, signals and the time-frequency shift operators on the cyclic group `Z_L`.
//!
//! A [`GaborLattice`] fixes the signal length `L`, the shift step `a` and the
//! modulation step `b` (in frequency bins). The Gabor system generated by a
//! window `g` consists of the `M * N` atoms
//!
//! ```text
//! g_{m,n}(x) = exp(2 pi i m b x / L) g(x - n a),    0 <= m < M = L/b,  0 <= n < N = L/a.
//! ```
//!
//! The adjoint lattice swaps the roles of the steps: translations by `q = L/b`
//! and modulations by `p = L/a`, giving `a * b` adjoint atoms.
//!
//! Constants of the continuous theory translate to `Z_L` as follows:
//!
//! | continuous                 | discrete (`Z_L`)          |
//! |----------------------------|---------------------------|
//! | `G(x) = b`                 | `G_0(x) = b / L`          |
//! | `‖g‖² = ab`                | `‖g‖² = ab / L`           |
//! | `<h, g> = ab`              | `<h, g> = ab / L`         |
//! | `ab <= 1`                  | `ab <= L`                 |
//! | critical density `ab = 1`  | `ab = L`                  |

use std::f64::consts::PI;
use std::ops::{Add, Index, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Lattice parameters of a cyclic Gabor system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "LatticeParams", into = "LatticeParams")]
pub struct GaborLattice {
    len: usize,
    shift: usize,
    modulation: usize,
}

#[derive(Serialize, Deserialize)]
struct LatticeParams {
    #[serde(rename = "L")]
    len: usize,
    a: usize,
    b: usize,
}

impl TryFrom<LatticeParams> for GaborLattice {
    type Error = Error;

    fn try_from(p: LatticeParams) -> Result<Self> {
        GaborLattice::new(p.len, p.a, p.b)
    }
}

impl From<GaborLattice> for LatticeParams {
    fn from(lat: GaborLattice) -> Self {
        LatticeParams {
            len: lat.len,
            a: lat.shift,
            b: lat.modulation,
        }
    }
}

#[allow(clippy::len_without_is_empty)]
impl GaborLattice {
    /// Validates `a | L` and `b | L`.
    pub fn new(len: usize, a: usize, b: usize) -> Result<Self> {
        if len == 0 {
            return Err(Error::InvalidLattice {
                len,
                a,
                b,
                reason: "L must be positive".into(),
            });
        }
        for (name, step) in [("a", a), ("b", b)] {
            if step == 0 || step > len {
                return Err(Error::InvalidLattice {
                    len,
                    a,
                    b,
                    reason: format!("{name} must lie in [1, L]"),
                });
            }
            if !len.is_multiple_of(step) {
                return Err(Error::InvalidLattice {
                    len,
                    a,
                    b,
                    reason: format!("{name} = {step} does not divide L = {len}"),
                });
            }
        }
        Ok(GaborLattice {
            len,
            shift: a,
            modulation: b,
        })
    }

    /// Signal length `L`.
    pub fn len(&self) -> usize {
        self.len
    }

    /// Shift step `a`.
    pub fn a(&self) -> usize {
        self.shift
    }

    /// Modulation step `b` in frequency bins.
    pub fn b(&self) -> usize {
        self.modulation
    }

    /// Number of translates `N = L / a`.
    pub fn translates(&self) -> usize {
        self.len / self.shift
    }

    /// Number of modulations `M = L / b`.
    pub fn modulations(&self) -> usize {
        self.len / self.modulation
    }

    /// Adjoint modulation step `p = L / a`.
    pub fn p(&self) -> usize {
        self.len / self.shift
    }

    /// Adjoint translation step `q = L / b`.
    pub fn q(&self) -> usize {
        self.len / self.modulation
    }

    /// Number of Gabor atoms `M * N`.
    pub fn atom_count(&self) -> usize {
        self.modulations() * self.translates()
    }

    /// Number of adjoint atoms `a * b`.
    pub fn adjoint_count(&self) -> usize {
        self.shift * self.modulation
    }

    /// `a * b / L` as a float.
    pub fn density(&self) -> f64 {
        (self.shift * self.modulation) as f64 / self.len as f64
    }

    /// Density as the unreduced fraction `(a * b, L)`.
    pub fn density_ratio(&self) -> (usize, usize) {
        (self.shift * self.modulation, self.len)
    }

    /// `a * b == L`: Gabor atoms are exactly as many as the dimension.
    pub fn is_critical(&self) -> bool {
        self.shift * self.modulation == self.len
    }

    /// Target of the power profile `G_0` for a normalized tight frame: `b / L`.
    pub fn tight_profile_level(&self) -> f64 {
        self.modulation as f64 / self.len as f64
    }

    /// Target `‖g‖²` (and `<h, g>`) for normalized tight windows and duals: `ab / L`.
    pub fn tight_norm_sq(&self) -> f64 {
        self.density()
    }

    /// The lattice `(L, b, a)` that carries the Fourier images of the atoms.
    pub fn swapped(&self) -> GaborLattice {
        GaborLattice {
            len: self.len,
            shift: self.modulation,
            modulation: self.shift,
        }
    }

    pub(crate) fn check_len(&self, s: &Signal) -> Result<()> {
        if s.len() != self.len {
            return Err(Error::LengthMismatch {
                expected: self.len,
                found: s.len(),
            });
        }
        Ok(())
    }
}

/// A complex sequence of length `L`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Signal(Vec<Complex64>);

impl Signal {
    /// Rejects NaN and infinite entries.
    pub fn new(values: Vec<Complex64>) -> Result<Self> {
        if let Some(i) = values.iter().position(|z| !z.is_finite()) {
            return Err(Error::NonFinite { index: i });
        }
        Ok(Signal(values))
    }

    pub fn zeros(len: usize) -> Self {
        Signal(vec![Complex64::new(0.0, 0.0); len])
    }

    /// The standard basis vector `e_x`.
    pub fn impulse(len: usize, at: usize) -> Self {
        let mut s = Signal::zeros(len);
        s.0[at % len] = Complex64::new(1.0, 0.0);
        s
    }

    pub fn from_real(values: &[f64]) -> Self {
        Signal(values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    pub fn from_fn(len: usize, f: impl FnMut(usize) -> Complex64) -> Self {
        Signal((0..len).map(f).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Complex64> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Complex64> {
        self.0.iter()
    }

    pub fn scale(&self, c: Complex64) -> Signal {
        Signal(self.0.iter().map(|&z| z * c).collect())
    }

    pub fn norm_sq(&self) -> f64 {
        norm_sq(self)
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `max_x |self(x) - other(x)|`.
    pub fn max_abs_diff(&self, other: &Signal) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }
}

impl Index<usize> for Signal {
    type Output = Complex64;

    fn index(&self, i: usize) -> &Complex64 {
        &self.0[i]
    }
}

impl From<Vec<Complex64>> for Signal {
    fn from(v: Vec<Complex64>) -> Self {
        Signal(v)
    }
}

impl Add for &Signal {
    type Output = Signal;

    fn add(self, rhs: &Signal) -> Signal {
        assert_eq!(self.len(), rhs.len(), "signal length mismatch");
        Signal(self.0.iter().zip(&rhs.0).map(|(x, y)| x + y).collect())
    }
}

impl Sub for &Signal {
    type Output = Signal;

    fn sub(self, rhs: &Signal) -> Signal {
        assert_eq!(self.len(), rhs.len(), "signal length mismatch");
        Signal(self.0.iter().zip(&rhs.0).map(|(x, y)| x - y).collect())
    }
}

impl Mul<Complex64> for &Signal {
    type Output = Signal;

    fn mul(self, rhs: Complex64) -> Signal {
        self.scale(rhs)
    }
}

/// `exp(2 pi i r / len)`, with `r` already reduced mod `len`.
pub(crate) fn root_of_unity(r: usize, len: usize) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * r as f64 / len as f64)
}

fn reduce(i: i64, modulus: usize) -> usize {
    i.rem_euclid(modulus as i64) as usize
}

/// Cyclic translation: `output(x) = s(x - t mod L)`.
pub fn translate(s: &Signal, t: i64) -> Signal {
    let len = s.len();
    if len == 0 {
        return s.clone();
    }
    let t = reduce(t, len);
    Signal::from_fn(len, |x| s[(x + len - t) % len])
}

/// Modulation by `m` lattice frequency steps: `output(x) = exp(2 pi i m b x / L) s(x)`.
pub fn modulate(s: &Signal, m: i64, lat: &GaborLattice) -> Signal {
    let freq = reduce(m, lat.modulations()) * lat.b();
    modulate_bins(s, freq)
}

/// Modulation by `freq` raw frequency bins.
fn modulate_bins(s: &Signal, freq: usize) -> Signal {
    let len = s.len();
    Signal::from_fn(len, |x| root_of_unity((freq * x) % len, len) * s[x])
}

/// The Gabor atom `E_{mb} T_{na} g`.
pub fn gabor_atom(lat: &GaborLattice, g: &Signal, m: usize, n: usize) -> Result<Signal> {
    lat.check_len(g)?;
    if m >= lat.modulations() || n >= lat.translates() {
        return Err(Error::IndexOutOfRange {
            what: "gabor atom (m, n)",
            index: (m, n),
            bound: (lat.modulations(), lat.translates()),
        });
    }
    Ok(gabor_atom_unchecked(lat, g, m, n))
}

pub(crate) fn gabor_atom_unchecked(lat: &GaborLattice, g: &Signal, m: usize, n: usize) -> Signal {
    let len = lat.len();
    let shift = n * lat.a();
    let freq = m * lat.b();
    Signal::from_fn(len, |x| {
        root_of_unity((freq * x) % len, len) * g[(x + len - shift) % len]
    })
}

/// The adjoint atom `E_{kp} T_{lq} g` with `p = L/a`, `q = L/b`.
pub fn adjoint_atom(lat: &GaborLattice, g: &Signal, k: usize, l: usize) -> Result<Signal> {
    lat.check_len(g)?;
    if k >= lat.a() || l >= lat.b() {
        return Err(Error::IndexOutOfRange {
            what: "adjoint atom (k, l)",
            index: (k, l),
            bound: (lat.a(), lat.b()),
        });
    }
    Ok(adjoint_atom_unchecked(lat, g, k, l))
}

pub(crate) fn adjoint_atom_unchecked(lat: &GaborLattice, g: &Signal, k: usize, l: usize) -> Signal {
    let len = lat.len();
    let shift = l * lat.q();
    let freq = k * lat.p();
    Signal::from_fn(len, |x| {
        root_of_unity((freq * x) % len, len) * g[(x + len - shift) % len]
    })
}

/// All `a * b` adjoint atoms in `k`-major order.
pub fn adjoint_atoms(lat: &GaborLattice, g: &Signal) -> Result<Vec<Signal>> {
    lat.check_len(g)?;
    let mut out = Vec::with_capacity(lat.adjoint_count());
    for k in 0..lat.a() {
        for l in 0..lat.b() {
            out.push(adjoint_atom_unchecked(lat, g, k, l));
        }
    }
    Ok(out)
}

/// Unitary DFT: `output(j) = L^{-1/2} sum_x s(x) exp(-2 pi i j x / L)`.
pub fn dft(s: &Signal) -> Signal {
    dft_slice(s.as_slice(), false).into()
}

/// Inverse of [`dft`].
pub fn idft(s: &Signal) -> Signal {
    dft_slice(s.as_slice(), true).into()
}

pub(crate) fn dft_slice(s: &[Complex64], inverse: bool) -> Vec<Complex64> {
    let len = s.len();
    if len == 0 {
        return Vec::new();
    }
    let scale = 1.0 / (len as f64).sqrt();
    (0..len)
        .map(|j| {
            let acc: Complex64 = s
                .iter()
                .enumerate()
                .map(|(x, &v)| {
                    let r = (j * x) % len;
                    let r = if inverse { r } else { (len - r) % len };
                    v * root_of_unity(r, len)
                })
                .sum();
            acc * scale
        })
        .collect()
}

/// `<s1, s2> = sum_x s1(x) conj(s2(x))`, conjugate-linear in the second argument.
pub fn inner(s1: &Signal, s2: &Signal) -> Complex64 {
    inner_slice(s1.as_slice(), s2.as_slice())
}

pub(crate) fn inner_slice(s1: &[Complex64], s2: &[Complex64]) -> Complex64 {
    s1.iter().zip(s2).map(|(x, y)| x * y.conj()).sum()
}

pub fn norm_sq(s: &Signal) -> f64 {
    s.iter().map(|z| z.norm_sqr()).sum()
}
