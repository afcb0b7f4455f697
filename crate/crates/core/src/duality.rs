//! Wexler-Raz biorthogonality and the affine space of Gabor dual windows.
//!
//! A window `h` is a dual of the frame window `g` when
//! `f = sum_{m,n} <f, h_{m,n}> g_{m,n}` for every `f`. Two equivalent tests are
//! implemented here:
//!
//! * biorthogonality against the adjoint atoms: `<h, g> = ab/L` and
//!   `<h, E_{kp} T_{lq} g> = 0` for `(k, l) != (0, 0)`;
//! * cross-correlations: `H_0(x) = b/L` and `H_k(x) = 0` for `k != 0`, where
//!   `H_k(x) = sum_n h(x - n a) conj(g(x - n a - k q))`.
//!
//! Every dual is `S^{-1} g + f` with `f` orthogonal to all adjoint atoms, so
//! the duals form an affine space of dimension `L - rank(adjoint atoms)`.
//! The free part of a dual is orthogonal to `g` by the difference
//! `<h - S^{-1} g, g> = <h, g> - <S^{-1} g, g> = ab/L - ab/L = 0`.

use num_complex::Complex64;
use serde::Serialize;

use crate::correlation::cross_profile;
use crate::error::{Error, Result};
use crate::frame::frame_operator;
use crate::lattice::{adjoint_atom_unchecked, adjoint_atoms, inner, GaborLattice, Signal};
use crate::linalg::{columns, hermitian_eigen, CMatrix};

/// Singular values below this fraction of the largest span no direction.
pub const RANK_CUTOFF: f64 = 1e-10;

/// `max(|<h, g> - ab/L|, max_{(k,l) != 0} |<h, E_{kp} T_{lq} g>|)`.
pub fn wexler_raz_check(lat: &GaborLattice, g: &Signal, h: &Signal) -> Result<f64> {
    lat.check_len(g)?;
    lat.check_len(h)?;
    let mut worst = (inner(h, g) - lat.tight_norm_sq()).norm();
    for k in 0..lat.a() {
        for l in 0..lat.b() {
            if (k, l) != (0, 0) {
                worst = worst.max(inner(h, &adjoint_atom_unchecked(lat, g, k, l)).norm());
            }
        }
    }
    Ok(worst)
}

/// `max(max_x |H_0(x) - b/L|, max_{k != 0, x} |H_k(x)|)`.
pub fn dual_conditions_walnut(lat: &GaborLattice, g: &Signal, h: &Signal) -> Result<f64> {
    let profile = cross_profile(lat, h, g)?;
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

/// The space of free parts `f` in `h = S^{-1} g + f`.
#[derive(Debug, Clone, Serialize)]
pub struct DualSpace {
    lattice: GaborLattice,
    generator: Signal,
    canonical_dual: Signal,
    orbit_rank: usize,
    dimension: usize,
    /// Orthonormal basis of the span of the adjoint atoms.
    #[serde(skip)]
    orbit_basis: Vec<Signal>,
    complement_basis: Vec<Signal>,
}

impl DualSpace {
    pub fn lattice(&self) -> &GaborLattice {
        &self.lattice
    }

    pub fn generator(&self) -> &Signal {
        &self.generator
    }

    pub fn canonical_dual(&self) -> &Signal {
        &self.canonical_dual
    }

    /// Rank of the span of the `ab` adjoint atoms.
    pub fn orbit_rank(&self) -> usize {
        self.orbit_rank
    }

    /// `L - orbit_rank`.
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn orbit_basis(&self) -> &[Signal] {
        &self.orbit_basis
    }

    pub fn complement_basis(&self) -> &[Signal] {
        &self.complement_basis
    }

    /// `S^{-1} g + sum_i coeffs[i] e_i` over the complement basis.
    pub fn alternate_dual(&self, coeffs: &[Complex64]) -> Result<Signal> {
        if coeffs.len() != self.dimension {
            return Err(Error::CoefficientLength {
                expected: self.dimension,
                found: coeffs.len(),
            });
        }
        let mut h = self.canonical_dual.clone();
        for (c, e) in coeffs.iter().zip(&self.complement_basis) {
            h = &h + &e.scale(*c);
        }
        Ok(h)
    }

    /// Norm of the orthogonal projection of `f` onto the adjoint orbit.
    pub fn orbit_component_norm(&self, f: &Signal) -> f64 {
        self.orbit_basis
            .iter()
            .map(|u| inner(f, u).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

pub fn dual_space(lat: &GaborLattice, g: &Signal) -> Result<DualSpace> {
    let canonical_dual = frame_operator(lat, g)?.solve(g)?;
    let len = lat.len();
    let atoms = columns(&adjoint_atoms(lat, g)?, len);

    // Orbit basis from the Gram eigenproblem: u_i = A v_i / sqrt(lambda_i).
    let gram = atoms.adjoint() * &atoms;
    let eig = hermitian_eigen(&gram);
    let largest = eig.values.last().copied().unwrap_or(0.0);
    let floor = RANK_CUTOFF * RANK_CUTOFF * largest;
    let orbit_basis: Vec<Signal> = eig
        .values
        .iter()
        .enumerate()
        .filter(|(_, &lambda)| largest > 0.0 && lambda > floor)
        .map(|(i, &lambda)| {
            let u = &atoms * eig.vectors.column(i) / Complex64::new(lambda.sqrt(), 0.0);
            Signal::from(u.iter().copied().collect::<Vec<_>>())
        })
        .collect();
    let orbit_rank = orbit_basis.len();

    // Complement basis from the eigenvectors of I - P with eigenvalue 1.
    let mut projector = CMatrix::identity(len, len);
    for u in &orbit_basis {
        for x in 0..len {
            for y in 0..len {
                projector[(x, y)] -= u[x] * u[y].conj();
            }
        }
    }
    let eig = hermitian_eigen(&projector);
    let dimension = len - orbit_rank;
    let complement_basis = (len - dimension..len)
        .map(|i| Signal::from(eig.vectors.column(i).iter().copied().collect::<Vec<_>>()))
        .collect();

    Ok(DualSpace {
        lattice: *lat,
        generator: g.clone(),
        canonical_dual,
        orbit_rank,
        dimension,
        orbit_basis,
        complement_basis,
    })
}

pub fn make_alternate_dual(lat: &GaborLattice, g: &Signal, coeffs: &[Complex64]) -> Result<Signal> {
    dual_space(lat, g)?.alternate_dual(coeffs)
}

/// Split of a candidate window into its canonical and free parts.
#[derive(Debug, Clone, Serialize)]
pub struct DualReport {
    pub is_dual: bool,
    pub wexler_raz_residual: f64,
    pub walnut_residual: f64,
    pub canonical_part: Signal,
    pub free_part: Signal,
    /// Norm of the projection of the free part onto the adjoint orbit.
    pub free_part_orbit_norm: f64,
    pub free_part_in_complement: bool,
    /// The three criteria give the same verdict.
    pub criteria_agree: bool,
}

pub fn decompose_dual(lat: &GaborLattice, g: &Signal, h: &Signal, tol: f64) -> Result<DualReport> {
    lat.check_len(h)?;
    let space = dual_space(lat, g)?;
    let canonical_part = space.canonical_dual.clone();
    let free_part = h - &canonical_part;
    let free_part_orbit_norm = space.orbit_component_norm(&free_part);
    let free_part_in_complement = free_part_orbit_norm <= tol;
    let wexler_raz_residual = wexler_raz_check(lat, g, h)?;
    let walnut_residual = dual_conditions_walnut(lat, g, h)?;
    let verdicts = [
        wexler_raz_residual <= tol,
        walnut_residual <= tol,
        free_part_in_complement,
    ];
    Ok(DualReport {
        is_dual: verdicts.iter().all(|&v| v),
        wexler_raz_residual,
        walnut_residual,
        canonical_part,
        free_part,
        free_part_orbit_norm,
        free_part_in_complement,
        criteria_agree: verdicts.iter().all(|&v| v == verdicts[0]),
    })
}
