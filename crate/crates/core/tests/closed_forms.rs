//! End-to-end identities through the public API: state invariants, the
//! nonclassicality and entanglement measures with their numerical searches,
//! and teleportation.

use cvgauss_core::entanglement::{
    closest_separable_numeric, degree_e0, peres_simon_separable, separability_threshold_rs,
};
use cvgauss_core::fidelity::fidelity_one_mode;
use cvgauss_core::gaussian::{dsts_to_cf, local_invariants, sts_to_cf2, sts_to_cov2};
use cvgauss_core::nonclassicality::{closest_classical_numeric, degree_q0};
use cvgauss_core::teleport::{
    noise_z, sweep_fig1, teleport_cf, teleport_fidelity, teleport_fidelity_from_states,
    TeleportVariables, FIG1_NBAR_IN, FIG1_R_IN,
};
use cvgauss_core::{linspace, sech, Complex, DstsParams, TwoModeStsParams};

fn sts(n1: f64, n2: f64, r: f64, phi: f64) -> TwoModeStsParams {
    TwoModeStsParams::new(n1, n2, r, phi).unwrap()
}

fn dsts(n: f64, r: f64, phi: f64, alpha: Complex) -> DstsParams {
    DstsParams::new(n, r, phi, alpha).unwrap()
}

#[test]
fn two_mode_local_invariants() {
    let (n1, n2) = sts(1.0, 0.0, 0.5, 0.0).reduced_occupancies();
    let (c2, s2) = (0.5f64.cosh().powi(2), 0.5f64.sinh().powi(2));
    assert!((n1 + 0.5 - (1.5 * c2 + 0.5 * s2)).abs() < 1e-14);
    assert!((n2 + 0.5 - (0.5 * c2 + 1.5 * s2)).abs() < 1e-14);

    for r in [0.2, 1.0, 1.7] {
        let inv = local_invariants(&sts_to_cov2(&sts(0.0, 0.0, r, 0.4)));
        assert!((inv.det_v - 1.0 / 16.0).abs() < 1e-10 * (2.0 * r).cosh().powi(4));
    }
    let inv = local_invariants(&sts_to_cov2(&sts(0.0, 0.0, 1.0, 0.0)));
    assert!((inv.det_c + (1f64.sinh() * 1f64.cosh()).powi(2)).abs() < 1e-13);

    // sqrt(det V) = (n1 + 1/2)(n2 + 1/2) and sqrt(-det C) = (n1 + n2 + 1) sinh r cosh r.
    let p = sts(0.5, 0.2, 0.8, 0.3);
    let inv = local_invariants(&sts_to_cov2(&p));
    assert!((inv.det_v.sqrt() - 1.0 * 0.7).abs() < 1e-12);
    assert!(((-inv.det_c).sqrt() - 1.7 * 0.8f64.sinh() * 0.8f64.cosh()).abs() < 1e-12);
}

#[test]
fn nonclassicality_degree_and_search() {
    for (n, r) in [(0.5, 0.3), (2.0, 0.8), (0.0, 0.0)] {
        assert_eq!(degree_q0(&dsts(n, r, 0.2, Complex::new(0.3, 0.0))), 0.0);
    }
    let sv = dsts(0.0, 1.0, 0.0, Complex::new(0.0, 0.0));
    let q0 = degree_q0(&sv);
    assert!((q0 - (1.0 - sech(1.0).sqrt())).abs() < 1e-15);
    assert!((q0 - 0.194_981_817_805_4).abs() < 1e-12);
    let (_, numeric) = closest_classical_numeric(&sv).unwrap();
    assert!((numeric - q0).abs() < 1e-6);
}

#[test]
fn entanglement_degree_and_search() {
    let rs = separability_threshold_rs(1.0, 1.0).unwrap();
    assert!((rs - (2.0 / 3f64.sqrt()).acosh()).abs() < 1e-15);
    assert!((rs - 0.549_306).abs() < 1e-6);
    assert_eq!(separability_threshold_rs(1.0, 0.0).unwrap(), 0.0);
    assert!(peres_simon_separable(&sts_to_cov2(&sts(1.0, 1.0, 0.5, 0.0))).unwrap());
    assert!(!peres_simon_separable(&sts_to_cov2(&sts(0.0, 0.0, 0.5, 0.0))).unwrap());

    assert_eq!(degree_e0(&sts(1.0, 1.0, 0.5, 0.0)), 0.0);
    assert!((degree_e0(&sts(0.0, 0.0, 1.0, 0.0)) - 0.351_945_726_336_1).abs() < 1e-12);
    let p = sts(0.1, 0.1, 1.0, 0.0);
    let rs = separability_threshold_rs(0.1, 0.1).unwrap();
    assert!((rs - 0.091_160_778_397_0).abs() < 1e-12);
    assert!((degree_e0(&p) - 0.306_622_633_288_5).abs() < 1e-12);
    assert!((degree_e0(&p) - (1.0 - sech(1.0 - rs))).abs() < 1e-15);

    let (closest, numeric) = closest_separable_numeric(&p).unwrap();
    assert!((numeric - degree_e0(&p)).abs() < 1e-4);
    let edge = separability_threshold_rs(closest.nbar1, closest.nbar2).unwrap();
    assert!((closest.r - edge).abs() < 1e-3);
}

#[test]
fn symmetric_resource_adds_noise_only() {
    let input = dsts_to_cf(&dsts(0.3, 0.7, 1.1, Complex::new(0.5, -0.2)));
    for (n, r) in [(0.0, 0.4), (0.5, 1.2), (2.0, 0.9)] {
        let out = teleport_cf(&input, &sts_to_cf2(&sts(n, n, r, 0.0))).unwrap();
        let rs = separability_threshold_rs(n, n).unwrap();
        assert!((out.a - input.a - (-2.0 * (r - rs)).exp()).abs() < 1e-12);
        assert!((out.b - input.b).norm() < 1e-12);
        assert_eq!(out.c, input.c);
    }
}

#[test]
fn teleportation_fidelity_identities() {
    for z in linspace(0.0, 2.0, 21) {
        let f = teleport_fidelity(&TeleportVariables::new(1.0, 0.5, z).unwrap());
        assert!((f - 1.0 / (1.0 + z)).abs() < 1e-15);
    }
    // Beating N/(N+1) with coherent inputs needs r > r_s + ln(N)/2.
    for nbar in [0.0, 0.3, 1.5] {
        let rs = separability_threshold_rs(nbar, nbar).unwrap();
        for big_n in [1.0f64, 2.0, 3.0] {
            let edge = rs + 0.5 * big_n.ln();
            for (r, above) in [(edge - 1e-3, false), (edge + 1e-3, true)] {
                let z = noise_z(nbar, r.max(0.0)).unwrap();
                let f = teleport_fidelity(&TeleportVariables::new(1.0, 0.5, z).unwrap());
                assert_eq!(f > big_n / (big_n + 1.0), above, "nbar {nbar}, N {big_n}");
            }
        }
    }

    let sv = dsts(0.0, 1.0, 0.0, Complex::new(0.0, 0.0));
    let closed = teleport_fidelity_from_states(&sv, 0.0, 1.0).unwrap();
    let g = dsts_to_cf(&sv);
    let out = teleport_cf(&g, &sts_to_cf2(&sts(0.0, 0.0, 1.0, 0.0))).unwrap();
    assert!((closed - fidelity_one_mode(&g, &out).unwrap()).abs() < 1e-12);

    // A more mixed input is teleported more faithfully.
    for z in [0.1f64, 0.5, 1.0] {
        let r = -0.5 * z.ln();
        let f = |n| {
            teleport_fidelity_from_states(&dsts(n, 1.0, 0.0, Complex::new(0.0, 0.0)), 0.0, r)
                .unwrap()
        };
        assert!(f(5.0) > f(0.0));
    }
}

#[test]
fn fidelity_curves_are_ordered_by_input_mixing() {
    let grid = linspace(0.05, 0.95, 19);
    let curves = sweep_fig1(FIG1_R_IN, &FIG1_NBAR_IN, &grid).unwrap();
    for pair in curves.windows(2) {
        for (lo, hi) in pair[0].rows.iter().zip(&pair[1].rows) {
            assert!(hi.1 > lo.1, "E0 = {}", lo.0);
        }
    }
}
