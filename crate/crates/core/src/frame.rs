//! Frame operator, frame bounds, canonical dual and canonical tight windows.
//!
//! The frame operator `S = sum_{m,n} g_{m,n} g_{m,n}^*` is assembled densely
//! (`L x L`). Bounds are its extremal eigenvalues. A window is treated as a
//! frame only when the lower bound exceeds [`FRAME_FLOOR`] times the upper
//! bound; anything below is reported as [`Error::NotAFrame`].

use nalgebra::Cholesky;
use num_complex::Complex64;
use serde::Serialize;

use crate::correlation::correlation_profile;
use crate::error::{Error, Result};
use crate::lattice::{gabor_atom_unchecked, inner, GaborLattice, Signal};
use crate::linalg::{from_vector, hermitian_eigen, to_vector, CMatrix};

/// Relative eigenvalue floor below which `S` is considered singular.
pub const FRAME_FLOOR: f64 = 1e-10;

/// Lower and upper frame bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrameBounds {
    #[serde(rename = "A")]
    pub lower: f64,
    #[serde(rename = "B")]
    pub upper: f64,
}

impl FrameBounds {
    pub fn is_frame(&self) -> bool {
        self.upper > 0.0 && self.lower > FRAME_FLOOR * self.upper
    }

    fn require_frame(&self) -> Result<()> {
        if self.is_frame() {
            Ok(())
        } else {
            Err(Error::NotAFrame {
                lower: self.lower,
                upper: self.upper,
            })
        }
    }
}

/// Dense frame operator of a Gabor system.
#[derive(Debug, Clone)]
pub struct FrameOperatorRep {
    lat: GaborLattice,
    dense: CMatrix,
}

impl FrameOperatorRep {
    pub fn lattice(&self) -> &GaborLattice {
        &self.lat
    }

    /// `S[x][y]`.
    pub fn entry(&self, x: usize, y: usize) -> Complex64 {
        self.dense[(x, y)]
    }

    pub fn matrix(&self) -> &nalgebra::DMatrix<Complex64> {
        &self.dense
    }

    pub fn apply(&self, f: &Signal) -> Result<Signal> {
        self.lat.check_len(f)?;
        Ok(from_vector(&(&self.dense * to_vector(f))))
    }

    pub fn bounds(&self) -> FrameBounds {
        let values = hermitian_eigen(&self.dense).values;
        let lower = values.first().copied().unwrap_or(0.0).max(0.0);
        let upper = values.last().copied().unwrap_or(0.0).max(0.0);
        FrameBounds { lower, upper }
    }

    /// `S^{-1} f` through a Cholesky factorization.
    pub fn solve(&self, f: &Signal) -> Result<Signal> {
        self.lat.check_len(f)?;
        let bounds = self.bounds();
        bounds.require_frame()?;
        let chol = Cholesky::new(self.dense.clone()).ok_or(Error::NotAFrame {
            lower: bounds.lower,
            upper: bounds.upper,
        })?;
        Ok(from_vector(&chol.solve(&to_vector(f))))
    }

    /// `S^{-1/2} f` through the eigendecomposition of `S`.
    pub fn inverse_sqrt_apply(&self, f: &Signal) -> Result<Signal> {
        self.lat.check_len(f)?;
        let eig = hermitian_eigen(&self.dense);
        let bounds = FrameBounds {
            lower: eig.values[0].max(0.0),
            upper: eig.values[eig.values.len() - 1].max(0.0),
        };
        bounds.require_frame()?;
        let v = &eig.vectors;
        let mut coeffs = v.adjoint() * to_vector(f);
        for (c, &lambda) in coeffs.iter_mut().zip(&eig.values) {
            *c /= lambda.sqrt();
        }
        Ok(from_vector(&(v * coeffs)))
    }

    /// `max |S[x][y] - c delta_{xy}|`.
    pub fn deviation_from_scalar(&self, c: f64) -> f64 {
        let n = self.lat.len();
        let mut worst: f64 = 0.0;
        for x in 0..n {
            for y in 0..n {
                let target = if x == y { c } else { 0.0 };
                worst = worst.max((self.dense[(x, y)] - target).norm());
            }
        }
        worst
    }

    /// `max |S[x][y] - conj(S[y][x])|`.
    pub fn hermitian_defect(&self) -> f64 {
        (&self.dense - self.dense.adjoint())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

pub fn frame_operator(lat: &GaborLattice, g: &Signal) -> Result<FrameOperatorRep> {
    lat.check_len(g)?;
    let len = lat.len();
    let mut dense = CMatrix::zeros(len, len);
    for m in 0..lat.modulations() {
        for n in 0..lat.translates() {
            let atom = gabor_atom_unchecked(lat, g, m, n);
            for x in 0..len {
                if atom[x] == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for y in 0..len {
                    dense[(x, y)] += atom[x] * atom[y].conj();
                }
            }
        }
    }
    Ok(FrameOperatorRep { lat: *lat, dense })
}

/// `S f(x) = M sum_k G_k(x) f(x - k q)`.
pub fn walnut_apply(lat: &GaborLattice, g: &Signal, f: &Signal) -> Result<Signal> {
    lat.check_len(f)?;
    let profile = correlation_profile(lat, g)?;
    let len = lat.len();
    let scale = lat.modulations() as f64;
    Ok(Signal::from_fn(len, |x| {
        let acc: Complex64 = (0..lat.b())
            .map(|k| profile.get(k, x) * f[(x + len - (k * lat.q()) % len) % len])
            .sum();
        acc * scale
    }))
}

pub fn frame_bounds(lat: &GaborLattice, g: &Signal) -> Result<FrameBounds> {
    Ok(frame_operator(lat, g)?.bounds())
}

/// `S^{-1} g`.
pub fn canonical_dual(lat: &GaborLattice, g: &Signal) -> Result<Signal> {
    frame_operator(lat, g)?.solve(g)
}

/// `S^{-1/2} g`, which generates a normalized tight frame.
pub fn tighten(lat: &GaborLattice, g: &Signal) -> Result<Signal> {
    frame_operator(lat, g)?.inverse_sqrt_apply(g)
}

/// `sum_{m,n} <f, h_{m,n}> g_{m,n}`.
pub fn reconstruct(lat: &GaborLattice, g: &Signal, h: &Signal, f: &Signal) -> Result<Signal> {
    lat.check_len(g)?;
    lat.check_len(h)?;
    lat.check_len(f)?;
    let len = lat.len();
    let mut out = vec![Complex64::new(0.0, 0.0); len];
    for m in 0..lat.modulations() {
        for n in 0..lat.translates() {
            let coeff = inner(f, &gabor_atom_unchecked(lat, h, m, n));
            let atom = gabor_atom_unchecked(lat, g, m, n);
            for (o, z) in out.iter_mut().zip(atom.iter()) {
                *o += coeff * z;
            }
        }
    }
    Ok(Signal::from(out))
}

/// Every atom has norm `‖g‖`, so `‖g‖² <= B`; equality forces `g` orthogonal to all other atoms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormAudit {
    pub norm_sq: f64,
    pub upper_bound: f64,
    pub within_bound: bool,
    /// `|‖g‖² - B| <= tol`.
    pub saturated: bool,
    /// Largest `|<g, g_{m,n}>|` over `(m, n) != (0, 0)`; only computed when saturated.
    pub max_cross_inner: Option<f64>,
    /// Saturation implies orthogonality; false only if that implication fails numerically.
    pub passed: bool,
}

pub fn norm_audit(lat: &GaborLattice, g: &Signal, tol: f64) -> Result<NormAudit> {
    let bounds = frame_bounds(lat, g)?;
    let norm_sq = g.norm_sq();
    let within_bound = norm_sq <= bounds.upper + tol;
    let saturated = (norm_sq - bounds.upper).abs() <= tol;
    let max_cross_inner = saturated.then(|| {
        (0..lat.modulations())
            .flat_map(|m| (0..lat.translates()).map(move |n| (m, n)))
            .filter(|&mn| mn != (0, 0))
            .map(|(m, n)| inner(g, &gabor_atom_unchecked(lat, g, m, n)).norm())
            .fold(0.0, f64::max)
    });
    let orthogonal = max_cross_inner.is_none_or(|v| v <= tol);
    Ok(NormAudit {
        norm_sq,
        upper_bound: bounds.upper,
        within_bound,
        saturated,
        max_cross_inner,
        passed: within_bound && orthogonal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::lattice::gabor_atom;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn test_signal(len: usize, salt: f64) -> Signal {
        Signal::from_fn(len, |x| {
            let t = x as f64 + salt;
            c((0.9 * t).cos() + 0.5, (1.7 * t).sin())
        })
    }

    #[test]
    fn delta_fixture_operator_is_identity() {
        let (lat, g) = fixtures::delta_window();
        let s = frame_operator(&lat, &g).unwrap();
        assert!(s.deviation_from_scalar(1.0) < 1e-15);
    }

    #[test]
    fn impulse_operator_is_diagonal() {
        let (lat, g) = fixtures::impulse_window();
        let s = frame_operator(&lat, &g).unwrap();
        for x in 0..4 {
            for y in 0..4 {
                let expect = if x == y && x % 2 == 0 { 2.0 } else { 0.0 };
                assert!((s.entry(x, y) - c(expect, 0.0)).norm() < 1e-15);
            }
        }
        let b = s.bounds();
        assert!(b.lower.abs() < 1e-15);
        assert!((b.upper - 2.0).abs() < 1e-14);
        assert!(!b.is_frame());
        assert!(matches!(
            canonical_dual(&lat, &g),
            Err(Error::NotAFrame { .. })
        ));
        assert!(matches!(tighten(&lat, &g), Err(Error::NotAFrame { .. })));
    }

    #[test]
    fn zero_window() {
        let lat = GaborLattice::new(4, 2, 2).unwrap();
        let s = frame_operator(&lat, &Signal::zeros(4)).unwrap();
        assert_eq!(s.deviation_from_scalar(0.0), 0.0);
        assert!(!s.bounds().is_frame());
    }

    #[test]
    fn walnut_matches_dense() {
        let lat = GaborLattice::new(8, 2, 4).unwrap();
        let g = test_signal(8, 0.2);
        let f = test_signal(8, 3.0);
        let dense = frame_operator(&lat, &g).unwrap().apply(&f).unwrap();
        let walnut = walnut_apply(&lat, &g, &f).unwrap();
        assert!(walnut.max_abs_diff(&dense) <= 1e-10 * dense.max_abs());
        assert_eq!(
            walnut_apply(&lat, &g, &Signal::zeros(8)).unwrap(),
            Signal::zeros(8)
        );
    }

    #[test]
    fn box_walnut_is_identity() {
        let (lat, g) = fixtures::box_window();
        let f = test_signal(4, 1.0);
        assert!(walnut_apply(&lat, &g, &f).unwrap().max_abs_diff(&f) < 1e-14);
        let b = frame_bounds(&lat, &g).unwrap();
        assert!((b.lower - 1.0).abs() < 1e-14 && (b.upper - 1.0).abs() < 1e-14);
    }

    #[test]
    fn bounds_scale_quadratically() {
        let lat = GaborLattice::new(8, 2, 2).unwrap();
        let g = test_signal(8, 0.7);
        let b1 = frame_bounds(&lat, &g).unwrap();
        let b3 = frame_bounds(&lat, &g.scale(c(0.0, 3.0))).unwrap();
        assert!((b3.lower - 9.0 * b1.lower).abs() < 1e-10 * b3.upper);
        assert!((b3.upper - 9.0 * b1.upper).abs() < 1e-10 * b3.upper);
    }

    #[test]
    fn canonical_dual_of_tight_windows() {
        let (lat, g) = fixtures::box_window();
        assert!(canonical_dual(&lat, &g).unwrap().max_abs_diff(&g) < 1e-14);
        let g2 = g.scale(c(2.0, 0.0));
        let d = canonical_dual(&lat, &g2).unwrap();
        assert!(d.max_abs_diff(&g2.scale(c(0.25, 0.0))) < 1e-14);
    }

    #[test]
    fn canonical_dual_trace_identity() {
        let lat = GaborLattice::new(4, 1, 2).unwrap();
        let g = test_signal(4, 0.4);
        let d = canonical_dual(&lat, &g).unwrap();
        let v = inner(&d, &g);
        assert!((v - c(0.5, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn tighten_examples() {
        let lat = GaborLattice::new(4, 2, 2).unwrap();
        let g = Signal::from_real(&[1.0, 1.0, 0.0, 0.0]);
        let t = tighten(&lat, &g).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(t.max_abs_diff(&Signal::from_real(&[h, h, 0.0, 0.0])) < 1e-14);
        let (lat, g) = fixtures::box_window();
        assert!(tighten(&lat, &g).unwrap().max_abs_diff(&g) < 1e-10);

        let lat = GaborLattice::new(8, 2, 2).unwrap();
        let t = tighten(&lat, &test_signal(8, 0.1)).unwrap();
        assert!(frame_operator(&lat, &t).unwrap().deviation_from_scalar(1.0) < 1e-9);
    }

    #[test]
    fn reconstruct_with_canonical_dual() {
        let lat = GaborLattice::new(12, 3, 2).unwrap();
        let g = test_signal(12, 0.9);
        let d = canonical_dual(&lat, &g).unwrap();
        for x in 0..12 {
            let e = Signal::impulse(12, x);
            assert!(reconstruct(&lat, &g, &d, &e).unwrap().max_abs_diff(&e) < 1e-9);
        }
        let (lat, g) = fixtures::box_window();
        let f = test_signal(4, 2.0);
        assert!(reconstruct(&lat, &g, &g, &f).unwrap().max_abs_diff(&f) < 1e-14);
        assert_eq!(
            reconstruct(&lat, &g, &Signal::zeros(4), &f).unwrap(),
            Signal::zeros(4)
        );
    }

    #[test]
    fn operator_commutes_with_atoms() {
        let lat = GaborLattice::new(12, 2, 3).unwrap();
        let g = test_signal(12, 0.3);
        let s = frame_operator(&lat, &g).unwrap();
        assert!(s.hermitian_defect() < 1e-12);
        let f = test_signal(12, 5.0);
        for m in 0..lat.modulations() {
            for n in 0..lat.translates() {
                let lhs = s.apply(&gabor_atom(&lat, &f, m, n).unwrap()).unwrap();
                let rhs = gabor_atom(&lat, &s.apply(&f).unwrap(), m, n).unwrap();
                assert!(lhs.max_abs_diff(&rhs) < 1e-10);
            }
        }
    }

    #[test]
    fn norm_audit_fixtures() {
        let (lat, g) = fixtures::box_window();
        let audit = norm_audit(&lat, &g, 1e-9).unwrap();
        assert!(audit.saturated && audit.passed);
        assert!(audit.max_cross_inner.unwrap() < 1e-12);

        let (lat, g) = fixtures::delta_window();
        let audit = norm_audit(&lat, &g, 1e-9).unwrap();
        assert!((audit.norm_sq - 0.5).abs() < 1e-15);
        assert!((audit.upper_bound - 1.0).abs() < 1e-14);
        assert!(!audit.saturated && audit.passed);

        let audit = norm_audit(&lat, &Signal::zeros(4), 1e-9).unwrap();
        assert!(audit.passed);
    }
}
