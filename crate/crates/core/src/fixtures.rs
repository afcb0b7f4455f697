//! Small reference windows with hand-checkable frame properties.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::lattice::{GaborLattice, Signal};

/// `L=4, a=2, b=2`, `g = (1, 1, 0, 0) / sqrt 2`: its atoms form an orthonormal basis.
pub fn box_window() -> (GaborLattice, Signal) {
    (
        GaborLattice::new(4, 2, 2).expect("valid lattice"),
        Signal::from_real(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0, 0.0]),
    )
}

/// `L=4, a=1, b=2`, `g = delta_0 / sqrt 2`: normalized tight, redundant by a factor 2.
pub fn delta_window() -> (GaborLattice, Signal) {
    (
        GaborLattice::new(4, 1, 2).expect("valid lattice"),
        Signal::from_real(&[FRAC_1_SQRT_2, 0.0, 0.0, 0.0]),
    )
}

/// `L=4, a=2, b=2`, `g = delta_0`: misses odd positions, so not a frame (`A = 0`, `B = 2`).
pub fn impulse_window() -> (GaborLattice, Signal) {
    (
        GaborLattice::new(4, 2, 2).expect("valid lattice"),
        Signal::impulse(4, 0),
    )
}
