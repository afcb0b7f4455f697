//! Brute-force ground truth for the fast paths.
//!
//! Everything here is built from explicit atom enumeration and direct inner
//! products. Nothing is shared with the correlation, frame or duality code,
//! and singular values come from a local one-sided Jacobi iteration rather
//! than the eigen solver used by the frame module.

use num_complex::Complex64;

use crate::frame::FrameBounds;
use crate::lattice::{adjoint_atom, gabor_atom, inner, GaborLattice, Signal};

/// Coefficient map `f -> (<f, g_{m,n}>)`, one row per atom.
///
/// Rows are ordered `m`-major: row `m * N + n` holds `conj(g_{m,n})`.
#[derive(Debug, Clone)]
pub struct AnalysisArray {
    lat: GaborLattice,
    rows: Vec<Vec<Complex64>>,
}

impl AnalysisArray {
    pub fn new(lat: &GaborLattice, g: &Signal) -> Self {
        assert_eq!(g.len(), lat.len(), "window length must equal L");
        let mut rows = Vec::with_capacity(lat.atom_count());
        for m in 0..lat.modulations() {
            for n in 0..lat.translates() {
                let atom = gabor_atom(lat, g, m, n).expect("indices in range, length checked");
                rows.push(atom.iter().map(|z| z.conj()).collect());
            }
        }
        AnalysisArray { lat: *lat, rows }
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, m: usize, n: usize) -> &[Complex64] {
        &self.rows[m * self.lat.translates() + n]
    }

    /// All coefficients of `f`.
    pub fn apply(&self, f: &Signal) -> Vec<Complex64> {
        self.rows
            .iter()
            .map(|r| r.iter().zip(f.iter()).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `C^* C`, i.e. the frame operator, as nested rows.
    pub fn gram(&self) -> Vec<Vec<Complex64>> {
        let len = self.lat.len();
        let mut s = vec![vec![Complex64::new(0.0, 0.0); len]; len];
        for r in &self.rows {
            for x in 0..len {
                for y in 0..len {
                    s[x][y] += r[x].conj() * r[y];
                }
            }
        }
        s
    }

    /// Squared singular values (one per column), ascending.
    pub fn squared_singular_values(&self) -> Vec<f64> {
        let len = self.lat.len();
        let mut cols: Vec<Vec<Complex64>> = (0..len)
            .map(|c| self.rows.iter().map(|r| r[c]).collect())
            .collect();
        jacobi_orthogonalize(&mut cols);
        let mut values: Vec<f64> = cols
            .iter()
            .map(|c| c.iter().map(|z| z.norm_sqr()).sum())
            .collect();
        values.sort_by(f64::total_cmp);
        values
    }
}

/// One-sided Jacobi: rotates column pairs until all are mutually orthogonal.
fn jacobi_orthogonalize(cols: &mut [Vec<Complex64>]) {
    const MAX_SWEEPS: usize = 60;
    let n = cols.len();
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for i in 0..n {
            for j in i + 1..n {
                let alpha: f64 = cols[i].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = cols[j].iter().map(|z| z.norm_sqr()).sum();
                let gamma: Complex64 = cols[i]
                    .iter()
                    .zip(&cols[j])
                    .map(|(u, v)| u.conj() * v)
                    .sum();
                let g = gamma.norm();
                if g == 0.0 || g <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let cos = 1.0 / (1.0 + t * t).sqrt();
                let sin = cos * t;
                for r in 0..cols[i].len() {
                    let u = cols[i][r];
                    let v = cols[j][r] * phase.conj();
                    cols[i][r] = u * cos - v * sin;
                    cols[j][r] = u * sin + v * cos;
                }
            }
        }
        if !rotated {
            break;
        }
    }
}

/// `A`, `B` as the squared extremal singular values of the analysis array.
pub fn oracle_frame_bounds(lat: &GaborLattice, g: &Signal) -> FrameBounds {
    let values = AnalysisArray::new(lat, g).squared_singular_values();
    FrameBounds {
        lower: values.first().copied().unwrap_or(0.0),
        upper: values.last().copied().unwrap_or(0.0),
    }
}

fn reconstruct_by_enumeration(lat: &GaborLattice, g: &Signal, h: &Signal, f: &Signal) -> Signal {
    let mut out = vec![Complex64::new(0.0, 0.0); lat.len()];
    for m in 0..lat.modulations() {
        for n in 0..lat.translates() {
            let h_atom = gabor_atom(lat, h, m, n).expect("valid atom");
            let g_atom = gabor_atom(lat, g, m, n).expect("valid atom");
            let coeff = inner(f, &h_atom);
            for (o, z) in out.iter_mut().zip(g_atom.iter()) {
                *o += coeff * z;
            }
        }
    }
    Signal::from(out)
}

/// Largest reconstruction error over the standard basis for the pair `(g, h)`.
pub fn oracle_dual_error(lat: &GaborLattice, g: &Signal, h: &Signal) -> f64 {
    (0..lat.len())
        .map(|x| {
            let e = Signal::impulse(lat.len(), x);
            reconstruct_by_enumeration(lat, g, h, &e).max_abs_diff(&e)
        })
        .fold(0.0, f64::max)
}

/// `h` reconstructs every standard basis vector through the atoms of `g`.
pub fn oracle_is_dual(lat: &GaborLattice, g: &Signal, h: &Signal, tol: f64) -> bool {
    oracle_dual_error(lat, g, h) <= tol
}

/// `c` with `S e_x = c e_x` for every `x`, if the frame is tight (`c > tol`).
pub fn oracle_tight_constant(lat: &GaborLattice, g: &Signal, tol: f64) -> Option<f64> {
    let s = AnalysisArray::new(lat, g).gram();
    let c = s[0][0].re;
    if c <= tol {
        return None;
    }
    let scalar = s.iter().enumerate().all(|(x, row)| {
        row.iter().enumerate().all(|(y, &v)| {
            let target = if x == y { c } else { 0.0 };
            (v - target).norm() <= tol * c.max(1.0)
        })
    });
    scalar.then_some(c)
}

/// Gram matrix of the adjoint atoms, `k`-major order.
pub fn oracle_adjoint_gram(lat: &GaborLattice, g: &Signal) -> Vec<Vec<Complex64>> {
    let atoms: Vec<Signal> = (0..lat.a())
        .flat_map(|k| (0..lat.b()).map(move |l| (k, l)))
        .map(|(k, l)| adjoint_atom(lat, g, k, l).expect("valid adjoint atom"))
        .collect();
    atoms
        .iter()
        .map(|u| atoms.iter().map(|v| inner(v, u)).collect())
        .collect()
}

/// `sum_{m,n} |<f, g_{m,n}>|^2`.
pub fn oracle_coefficient_energy(lat: &GaborLattice, g: &Signal, f: &Signal) -> f64 {
    AnalysisArray::new(lat, g)
        .apply(f)
        .iter()
        .map(|z| z.norm_sqr())
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn analysis_rows_are_coefficients() {
        let lat = GaborLattice::new(6, 2, 3).unwrap();
        let g = Signal::from_fn(6, |x| c(x as f64, 1.0 - x as f64));
        let f = Signal::from_fn(6, |x| c((x * x) as f64, 0.5));
        let arr = AnalysisArray::new(&lat, &g);
        assert_eq!(arr.row_count(), lat.atom_count());
        let coeffs = arr.apply(&f);
        let atom = gabor_atom(&lat, &g, 1, 2).unwrap();
        assert!((coeffs[lat.translates() + 2] - inner(&f, &atom)).norm() < 1e-12);
    }

    #[test]
    fn bounds_fixtures() {
        let (lat, g) = fixtures::box_window();
        let b = oracle_frame_bounds(&lat, &g);
        assert!((b.lower - 1.0).abs() < 1e-14 && (b.upper - 1.0).abs() < 1e-14);
        let (lat, g) = fixtures::impulse_window();
        let b = oracle_frame_bounds(&lat, &g);
        assert!(b.lower.abs() < 1e-14 && (b.upper - 2.0).abs() < 1e-14);
        let b = oracle_frame_bounds(&lat, &Signal::zeros(4));
        assert_eq!((b.lower, b.upper), (0.0, 0.0));
    }

    #[test]
    fn jacobi_matches_known_spectrum() {
        // columns (1, 1) and (1, -1) scaled: singular values sqrt 2 * (1, 3)
        let mut cols = vec![
            vec![c(1.0, 0.0), c(1.0, 0.0)],
            vec![c(3.0, 0.0), c(-3.0, 0.0)],
        ];
        jacobi_orthogonalize(&mut cols);
        let mut n: Vec<f64> = cols
            .iter()
            .map(|v| v.iter().map(|z| z.norm_sqr()).sum())
            .collect();
        n.sort_by(f64::total_cmp);
        assert!((n[0] - 2.0).abs() < 1e-14 && (n[1] - 18.0).abs() < 1e-14);

        // rank one, complex: (1, i) and (i, -1) = i (1, i)
        let mut cols = vec![
            vec![c(1.0, 0.0), c(0.0, 1.0)],
            vec![c(0.0, 1.0), c(-1.0, 0.0)],
        ];
        jacobi_orthogonalize(&mut cols);
        let mut n: Vec<f64> = cols
            .iter()
            .map(|v| v.iter().map(|z| z.norm_sqr()).sum())
            .collect();
        n.sort_by(f64::total_cmp);
        assert!(n[0].abs() < 1e-14 && (n[1] - 4.0).abs() < 1e-14);
    }

    #[test]
    fn dual_fixtures() {
        let (lat, g) = fixtures::box_window();
        assert!(oracle_is_dual(&lat, &g, &g, 1e-9));
        assert!(!oracle_is_dual(&lat, &g, &Signal::zeros(4), 1e-9));
    }

    #[test]
    fn tight_constant_fixtures() {
        let (lat, g) = fixtures::box_window();
        assert!((oracle_tight_constant(&lat, &g, 1e-9).unwrap() - 1.0).abs() < 1e-14);
        let g2 = g.scale(c(2.0, 0.0));
        assert!((oracle_tight_constant(&lat, &g2, 1e-9).unwrap() - 4.0).abs() < 1e-14);
        let (lat, g) = fixtures::impulse_window();
        assert_eq!(oracle_tight_constant(&lat, &g, 1e-9), None);
    }

    #[test]
    fn adjoint_gram_fixtures() {
        let (lat, g) = fixtures::box_window();
        let gram = oracle_adjoint_gram(&lat, &g);
        for (i, row) in gram.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((v - c(expect, 0.0)).norm() < 1e-15);
            }
        }
        let (lat, g) = fixtures::delta_window();
        let gram = oracle_adjoint_gram(&lat, &g);
        assert_eq!(gram.len(), 2);
        assert!((gram[0][0] - c(0.5, 0.0)).norm() < 1e-15);
        assert!(gram[0][1].norm() < 1e-15);
        let zero = oracle_adjoint_gram(&lat, &Signal::zeros(4));
        assert!(zero.iter().flatten().all(|z| z.norm() == 0.0));
    }
}
