//! Periodized window correlations and the Walnut form of the frame operator.
//!
//! For a lattice `(L, a, b)` and window `g` the correlation functions are
//!
//! ```text
//! G_k(x) = sum_{n=0}^{N-1} g(x - n a) conj(g(x - n a - k q)),    k in [0, b)
//! ```
//!
//! Shifts `k q` repeat with period `b` modulo `L`, so the `b` functions above
//! are the full family. `G_0` is the lattice power profile. The frame
//! operator acts as `S f(x) = M sum_k G_k(x) f(x - k q)`.

use std::io::{self, Write};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{translate, GaborLattice, Signal};

/// Table of `G_k(x)` for `k in [0, b)`, `x in [0, L)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrelationProfile {
    lat: GaborLattice,
    table: Vec<Vec<Complex64>>,
}

impl CorrelationProfile {
    pub fn lattice(&self) -> &GaborLattice {
        &self.lat
    }

    pub fn get(&self, k: usize, x: usize) -> Complex64 {
        self.table[k][x]
    }

    pub fn row(&self, k: usize) -> &[Complex64] {
        &self.table[k]
    }

    /// The power profile `G_0`, which is real and nonnegative.
    pub fn power(&self) -> Vec<f64> {
        self.table[0].iter().map(|z| z.re).collect()
    }

    /// Writes `k,x,re,im,abs` rows in `k`-major order with 12 fractional digits.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "k,x,re,im,abs")?;
        for (k, row) in self.table.iter().enumerate() {
            for (x, z) in row.iter().enumerate() {
                writeln!(
                    out,
                    "{k},{x},{},{},{}",
                    fixed(z.re),
                    fixed(z.im),
                    fixed(z.norm())
                )?;
            }
        }
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)
            .expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("csv output is ascii")
    }
}

// Values that print as zero are written without a sign.
fn fixed(v: f64) -> String {
    let v = if v.abs() < 5e-13 { 0.0 } else { v };
    format!("{v:.12}")
}

pub fn correlation_profile(lat: &GaborLattice, g: &Signal) -> Result<CorrelationProfile> {
    cross_profile(lat, g, g)
}

/// `H_k(x) = sum_n h(x - n a) conj(g(x - n a - k q))`; equals the profile of `g` when `h = g`.
pub fn cross_profile(lat: &GaborLattice, h: &Signal, g: &Signal) -> Result<CorrelationProfile> {
    lat.check_len(h)?;
    lat.check_len(g)?;
    let len = lat.len();
    let (a, q) = (lat.a(), lat.q());
    let table = (0..lat.b())
        .map(|k| {
            (0..len)
                .map(|x| {
                    (0..lat.translates())
                        .map(|n| {
                            let y = (x + len - (n * a) % len) % len;
                            let z = (y + len - (k * q) % len) % len;
                            h[y] * g[z].conj()
                        })
                        .sum()
                })
                .collect()
        })
        .collect();
    Ok(CorrelationProfile { lat: *lat, table })
}

/// Folds `h * conj(translate(g, shift))` onto `fold_period` residues.
///
/// With `shift = l q` and `fold_period = a`, a flat output is equivalent to
/// `h` being orthogonal to every nontrivial adjoint modulation of
/// `translate(g, l q)`. The common value equals `<h, translate(g, shift)> / fold_period`.
pub fn periodized_correlation(
    h: &Signal,
    g: &Signal,
    shift: i64,
    fold_period: usize,
) -> Result<Vec<Complex64>> {
    let len = h.len();
    if g.len() != len {
        return Err(Error::LengthMismatch {
            expected: len,
            found: g.len(),
        });
    }
    if fold_period == 0 || !len.is_multiple_of(fold_period) {
        return Err(Error::InvalidFoldPeriod {
            period: fold_period,
            len,
        });
    }
    let shifted = translate(g, shift);
    let mut out = vec![Complex64::new(0.0, 0.0); fold_period];
    for x in 0..len {
        out[x % fold_period] += h[x] * shifted[x].conj();
    }
    Ok(out)
}

/// Largest deviation of a folded vector from its mean value.
pub fn flatness_residual(v: &[Complex64]) -> f64 {
    if v.is_empty() {
        return 0.0;
    }
    let mean: Complex64 = v.iter().sum::<Complex64>() / v.len() as f64;
    v.iter().map(|z| (z - mean).norm()).fold(0.0, f64::max)
}

/// Schur-test estimate `M * max_x sum_k |G_k(x)|`, never below the upper frame bound.
pub fn walnut_upper_bound(lat: &GaborLattice, g: &Signal) -> Result<f64> {
    let profile = correlation_profile(lat, g)?;
    Ok(profile_upper_bound(&profile))
}

pub(crate) fn profile_upper_bound(profile: &CorrelationProfile) -> f64 {
    let lat = profile.lattice();
    let row_max = (0..lat.len())
        .map(|x| (0..lat.b()).map(|k| profile.get(k, x).norm()).sum::<f64>())
        .fold(0.0, f64::max);
    lat.modulations() as f64 * row_max
}

/// The two terms of the coefficient-energy identity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IdentityTerms {
    /// `M sum_x |f(x)|^2 G_0(x)`.
    pub f1: f64,
    /// Real part of `M sum_{k>=1} sum_x conj(f(x)) f(x - k q) G_k(x)`.
    pub f2: f64,
    /// Imaginary residue of the `F2` sum; vanishes up to rounding.
    pub f2_imag: f64,
}

impl IdentityTerms {
    /// `F1 + F2`, equal to `sum_{m,n} |<f, g_{m,n}>|^2`.
    pub fn total(&self) -> f64 {
        self.f1 + self.f2
    }
}

pub fn wh_identity_terms(lat: &GaborLattice, g: &Signal, f: &Signal) -> Result<IdentityTerms> {
    lat.check_len(f)?;
    let profile = correlation_profile(lat, g)?;
    let len = lat.len();
    let scale = lat.modulations() as f64;
    let f1: f64 = (0..len)
        .map(|x| f[x].norm_sqr() * profile.get(0, x).re)
        .sum();
    let f2: Complex64 = (1..lat.b())
        .flat_map(|k| (0..len).map(move |x| (k, x)))
        .map(|(k, x)| {
            let y = (x + len - (k * lat.q()) % len) % len;
            f[x].conj() * f[y] * profile.get(k, x)
        })
        .sum();
    Ok(IdentityTerms {
        f1: scale * f1,
        f2: scale * f2.re,
        f2_imag: scale * f2.im,
    })
}
