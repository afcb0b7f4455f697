use num_complex::Complex64;
use proptest::prelude::*;

use whframe::correlation::{correlation_profile, cross_profile, walnut_upper_bound};
use whframe::duality::{decompose_dual, dual_space, wexler_raz_check};
use whframe::frame::{
    canonical_dual, frame_bounds, frame_operator, reconstruct, tighten, walnut_apply,
};
use whframe::lattice::{adjoint_atoms, dft, gabor_atom, idft, inner};
use whframe::oracle::{
    oracle_adjoint_gram, oracle_frame_bounds, oracle_is_dual, oracle_tight_constant,
};
use whframe::synth::{phases_from_tight_generator, tight_generator_from_phases, PhaseSpec};
use whframe::tightness::classify;
use whframe::{GaborLattice, Signal};

fn lattice_strategy(admissible_only: bool) -> impl Strategy<Value = GaborLattice> {
    prop::sample::select(vec![4usize, 6, 8, 12, 16])
        .prop_flat_map(|len| {
            let ds: Vec<usize> = (1..=len).filter(|d| len % d == 0).collect();
            (
                Just(len),
                prop::sample::select(ds.clone()),
                prop::sample::select(ds),
            )
        })
        .prop_filter("density", move |&(len, a, b)| {
            !admissible_only || a * b <= len
        })
        .prop_map(|(len, a, b)| GaborLattice::new(len, a, b).unwrap())
}

fn signal_of(len: usize) -> impl Strategy<Value = Signal> {
    prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), len).prop_map(|v| {
        Signal::from(
            v.into_iter()
                .map(|(re, im)| Complex64::new(re, im))
                .collect::<Vec<_>>(),
        )
    })
}

fn with_window(admissible_only: bool) -> impl Strategy<Value = (GaborLattice, Signal)> {
    lattice_strategy(admissible_only).prop_flat_map(|lat| (Just(lat), signal_of(lat.len())))
}

fn with_two(admissible_only: bool) -> impl Strategy<Value = (GaborLattice, Signal, Signal)> {
    lattice_strategy(admissible_only)
        .prop_flat_map(|lat| (Just(lat), signal_of(lat.len()), signal_of(lat.len())))
}

fn well_conditioned(lat: &GaborLattice, g: &Signal) -> bool {
    let b = frame_bounds(lat, g).unwrap();
    b.lower > 1e-6 * b.upper
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn frame_operator_is_hermitian_and_positive((lat, g) in with_window(false)) {
        let s = frame_operator(&lat, &g).unwrap();
        prop_assert!(s.hermitian_defect() < 1e-10);
        let b = s.bounds();
        prop_assert!(b.lower >= -1e-10 && b.lower <= b.upper + 1e-12);
    }

    #[test]
    fn bounds_match_oracle((lat, g) in with_window(false)) {
        let fast = frame_bounds(&lat, &g).unwrap();
        let slow = oracle_frame_bounds(&lat, &g);
        let scale = 1.0 + slow.upper;
        prop_assert!((fast.lower - slow.lower).abs() < 1e-9 * scale);
        prop_assert!((fast.upper - slow.upper).abs() < 1e-9 * scale);
    }

    #[test]
    fn walnut_form_matches_dense((lat, g, f) in with_two(false)) {
        let dense = frame_operator(&lat, &g).unwrap().apply(&f).unwrap();
        let fast = walnut_apply(&lat, &g, &f).unwrap();
        prop_assert!(fast.max_abs_diff(&dense) < 1e-10);
    }

    #[test]
    fn upper_bound_dominates((lat, g) in with_window(false)) {
        let upper = walnut_upper_bound(&lat, &g).unwrap();
        prop_assert!(upper >= oracle_frame_bounds(&lat, &g).upper - 1e-9);
    }

    #[test]
    fn profile_symmetries((lat, g) in with_window(false)) {
        let p = correlation_profile(&lat, &g).unwrap();
        let len = lat.len();
        let sum: f64 = p.power()[..lat.a()].iter().sum();
        prop_assert!((sum - g.norm_sq()).abs() < 1e-9 * (1.0 + g.norm_sq()));
        for k in 0..lat.b() {
            for x in 0..len {
                prop_assert!((p.get(k, x) - p.get(k, (x + lat.a()) % len)).norm() < 1e-10);
                let mirror = p.get((lat.b() - k) % lat.b(), (x + len - k * lat.q() % len) % len);
                prop_assert!((p.get(k, x) - mirror.conj()).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn cross_profile_of_self_is_profile((lat, g) in with_window(false)) {
        let p = correlation_profile(&lat, &g).unwrap();
        let q = cross_profile(&lat, &g, &g).unwrap();
        for k in 0..lat.b() {
            for x in 0..lat.len() {
                prop_assert!((p.get(k, x) - q.get(k, x)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn tightened_window_passes_every_condition((lat, g) in with_window(true)) {
        prop_assume!(frame_bounds(&lat, &g).unwrap().is_frame());
        let t = tighten(&lat, &g).unwrap();
        let r = classify(&lat, &t, 1e-8).unwrap();
        prop_assert!(r.normalized_tight);
        prop_assert!(r.verdicts().iter().all(|&v| v));
        prop_assert!((t.norm_sq() - lat.tight_norm_sq()).abs() < 1e-8);
        let c = oracle_tight_constant(&lat, &t, 1e-8).unwrap();
        prop_assert!((c - 1.0).abs() < 1e-8);
    }

    #[test]
    fn condition_verdicts_agree((lat, g) in with_window(false)) {
        let r = classify(&lat, &g, 1e-9).unwrap();
        prop_assert!(r.conditions_agree);
    }

    #[test]
    fn tightness_is_scale_sensitive((lat, g) in with_window(true), s in 1.1f64..3.0) {
        prop_assume!(frame_bounds(&lat, &g).unwrap().is_frame());
        let t = tighten(&lat, &g).unwrap().scale(Complex64::new(s, 0.0));
        let r = classify(&lat, &t, 1e-9).unwrap();
        prop_assert!(!r.normalized_tight);
        prop_assert!((r.tight_constant.unwrap() - s * s).abs() < 1e-8 * s * s);
    }

    #[test]
    fn canonical_dual_reconstructs((lat, g, f) in with_two(true)) {
        prop_assume!(well_conditioned(&lat, &g));
        let h = canonical_dual(&lat, &g).unwrap();
        let back = reconstruct(&lat, &g, &h, &f).unwrap();
        prop_assert!(back.max_abs_diff(&f) < 1e-7 * (1.0 + f.max_abs()));
        prop_assert!(wexler_raz_check(&lat, &g, &h).unwrap() < 1e-7);
        prop_assert!(oracle_is_dual(&lat, &g, &h, 1e-7));
    }

    #[test]
    fn dual_decomposition_is_consistent((lat, g, junk) in with_two(true)) {
        prop_assume!(well_conditioned(&lat, &g));
        let space = dual_space(&lat, &g).unwrap();
        prop_assert_eq!(space.dimension() + space.orbit_rank(), lat.len());
        let r = decompose_dual(&lat, &g, &junk, 1e-7).unwrap();
        prop_assert!(r.criteria_agree);
        prop_assert_eq!(r.is_dual, oracle_is_dual(&lat, &g, &junk, 1e-7));
    }

    #[test]
    fn adjoint_gram_matches_atoms((lat, g) in with_window(false)) {
        let atoms = adjoint_atoms(&lat, &g).unwrap();
        let gram = oracle_adjoint_gram(&lat, &g);
        for (i, u) in atoms.iter().enumerate() {
            for (j, v) in atoms.iter().enumerate() {
                prop_assert!((gram[i][j] - inner(v, u)).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn atom_norms_are_preserved((lat, g) in with_window(false), m in 0usize..16, n in 0usize..16) {
        let atom = gabor_atom(&lat, &g, m % lat.modulations(), n % lat.translates()).unwrap();
        prop_assert!((atom.norm_sq() - g.norm_sq()).abs() < 1e-10 * (1.0 + g.norm_sq()));
    }

    #[test]
    fn dft_is_unitary(g in signal_of(12)) {
        let spectrum = dft(&g);
        prop_assert!((spectrum.norm_sq() - g.norm_sq()).abs() < 1e-10 * (1.0 + g.norm_sq()));
        prop_assert!(idft(&spectrum).max_abs_diff(&g) < 1e-12);
    }

    #[test]
    fn phase_synthesis_round_trips(
        (len, a) in prop::sample::select(vec![(4usize, 2usize), (6, 2), (6, 3), (8, 4), (12, 3), (16, 4), (16, 8)]),
        raw in prop::collection::vec(0.0f64..1.0, 64),
    ) {
        let lat = GaborLattice::new(len, a, len / a).unwrap();
        let phases: Vec<Vec<f64>> = raw.chunks(lat.b()).take(lat.a()).map(|c| c.to_vec()).collect();
        let spec = PhaseSpec::new(lat, phases).unwrap();
        let g = tight_generator_from_phases(&spec).unwrap();
        prop_assert!(classify(&lat, &g, 1e-9).unwrap().normalized_tight);
        let back = phases_from_tight_generator(&lat, &g, 1e-9).unwrap();
        let rebuilt = tight_generator_from_phases(&back).unwrap();
        prop_assert!(rebuilt.max_abs_diff(&g) < 1e-12);
    }
}
