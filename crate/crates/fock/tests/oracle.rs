use cvgauss_core::entanglement::entropy_of_entanglement_svs;
use cvgauss_core::fidelity::{fidelity_one_mode, fidelity_two_mode_sts};
use cvgauss_core::gaussian::{dsts_to_cf, eval_cf1};
use cvgauss_core::minimize::SplitMix64;
use cvgauss_core::{Complex, DstsParams, TwoModeStsParams};
use cvgauss_fock::*;
use proptest::prelude::*;

fn random_dsts(g: &mut SplitMix64) -> DstsParams {
    let alpha = Complex::from_polar(g.uniform(0.0, 1.0), g.uniform(-3.0, 3.0));
    DstsParams::new(
        g.uniform(0.0, 2.0),
        g.uniform(0.0, 1.0),
        g.uniform(-3.0, 3.0),
        alpha,
    )
    .unwrap()
}

fn dm(p: &DstsParams) -> FockDensityMatrix {
    dsts_dm(p, DimPolicy::ONE_MODE.one_mode_dim(p)).unwrap()
}

#[test]
fn characteristic_function_matches_closed_form() {
    let mut g = SplitMix64::new(11);
    let p = DstsParams::new(0.3, 0.4, 0.7, Complex::new(0.5, -0.2)).unwrap();
    let rho = dsts_dm(&p, 120).unwrap();
    let cf = dsts_to_cf(&p);
    for _ in 0..20 {
        let l = Complex::new(g.uniform(-1.0, 1.0), g.uniform(-1.0, 1.0));
        let got = characteristic_function(&rho, l, DEFAULT_PAD_ONE_MODE).unwrap();
        assert!((got - eval_cf1(&cf, l)).norm() < 1e-6, "lambda = {l}");
    }
}

#[test]
fn mean_photon_number_of_dsts() {
    let mut g = SplitMix64::new(12);
    for _ in 0..5 {
        let p = random_dsts(&mut g);
        let want = p.nbar * (2.0 * p.r).cosh() + p.r.sinh().powi(2) + p.alpha.norm_sqr();
        let got = mean_photon_number(&dm(&p)).unwrap();
        assert!((got - want).abs() < 1e-6, "{p:?}: {got} vs {want}");
    }
}

#[test]
fn pure_two_mode_state() {
    let p = TwoModeStsParams::new(0.0, 0.0, 1.0, 0.4).unwrap();
    let rho = sts2_dm(&p, 40).unwrap();
    assert!((purity(&rho) - 1.0).abs() < 1e-8);
    assert!(von_neumann_entropy(&rho).unwrap() < 1e-8);
    // Either half carries the entropy of entanglement.
    let half = reduce_to_mode(&rho, 1).unwrap();
    let s = von_neumann_entropy(&half).unwrap();
    assert!((s - entropy_of_entanglement_svs(1.0)).abs() < 1e-6);
}

#[test]
fn reduced_occupancies_match_local_invariants() {
    let p = TwoModeStsParams::new(0.3, 0.1, 0.6, -1.1).unwrap();
    let rho = sts2_dm(&p, 40).unwrap();
    let (n1, n2) = p.reduced_occupancies();
    let m1 = mean_photon_number(&reduce_to_mode(&rho, 0).unwrap()).unwrap();
    let m2 = mean_photon_number(&reduce_to_mode(&rho, 1).unwrap()).unwrap();
    assert!((m1 - n1).abs() < 1e-6, "{m1} vs {n1}");
    assert!((m2 - n2).abs() < 1e-6, "{m2} vs {n2}");
}

#[test]
fn two_mode_spectrum_is_thermal_product() {
    let (a, b) = (0.4, 0.25);
    let p = TwoModeStsParams::new(a, b, 0.7, 0.9).unwrap();
    let rho = sts2_dm(&p, 40).unwrap();
    // Eigenvalues are invariant under the squeeze, so they are those of the
    // thermal product. The squeeze conserves n1 - n2, so each sector is
    // diagonalized on its own.
    let d = rho.dim;
    let mut eig: Vec<f64> = Vec::new();
    for k in -(d as i64 - 1)..(d as i64) {
        let idx: Vec<usize> = (0..d * d)
            .filter(|&i| (i / d) as i64 - (i % d) as i64 == k)
            .collect();
        let block =
            nalgebra::DMatrix::from_fn(idx.len(), idx.len(), |i, j| rho.entries[(idx[i], idx[j])]);
        eig.extend(nalgebra::SymmetricEigen::new(block).eigenvalues.iter());
    }
    let w = |n: f64, k: i32| (n / (n + 1.0)).powi(k) / (n + 1.0);
    for k in 0..=6 {
        for l in 0..=(6 - k) {
            let want = w(a, k) * w(b, l);
            let nearest = eig
                .iter()
                .map(|e| (e - want).abs())
                .fold(f64::INFINITY, f64::min);
            assert!(nearest < 1e-8, "k={k} l={l}");
        }
    }
}

#[test]
fn one_mode_oracle_agrees_with_closed_form() {
    let mut g = SplitMix64::new(13);
    for _ in 0..6 {
        let (p, q) = (random_dsts(&mut g), random_dsts(&mut g));
        let dim = DimPolicy::ONE_MODE
            .one_mode_dim(&p)
            .max(DimPolicy::ONE_MODE.one_mode_dim(&q));
        let num = uhlmann_fidelity_numeric(&dsts_dm(&p, dim).unwrap(), &dsts_dm(&q, dim).unwrap())
            .unwrap();
        let closed = fidelity_one_mode(&dsts_to_cf(&p), &dsts_to_cf(&q)).unwrap();
        assert!(
            (num - closed).abs() < 1e-6,
            "{p:?} {q:?}: {num} vs {closed}"
        );
    }
}

#[test]
fn two_mode_oracle_agrees_with_closed_form() {
    let p = TwoModeStsParams::new(0.2, 0.5, 0.8, 0.3).unwrap();
    let q = TwoModeStsParams::new(0.4, 0.1, 0.5, -0.6).unwrap();
    let num =
        uhlmann_fidelity_numeric(&sts2_dm(&p, 40).unwrap(), &sts2_dm(&q, 40).unwrap()).unwrap();
    let closed = fidelity_two_mode_sts(&p, &q).unwrap();
    assert!((num - closed).abs() < 1e-4, "{num} vs {closed}");
}

#[test]
fn fidelity_converges_with_dimension() {
    let p = DstsParams::new(1.0, 0.6, 0.2, Complex::new(0.8, 0.3)).unwrap();
    let q = DstsParams::new(0.5, 0.9, -1.0, Complex::new(-0.4, 0.6)).unwrap();
    let closed = fidelity_one_mode(&dsts_to_cf(&p), &dsts_to_cf(&q)).unwrap();
    let errs: Vec<f64> = [40, 80, 120]
        .iter()
        .map(|&d| {
            let f = uhlmann_fidelity_numeric(&dsts_dm(&p, d).unwrap(), &dsts_dm(&q, d).unwrap())
                .unwrap();
            (f - closed).abs()
        })
        .collect();
    assert!(
        errs[1] <= errs[0] + 1e-9 && errs[2] <= errs[1] + 1e-9,
        "{errs:?}"
    );
    assert!(errs[2] < 1e-6);
}

#[test]
fn thermal_entropy_and_pure_entropy() {
    let n: f64 = 1.5;
    let want = (n + 1.0) * (n + 1.0).ln() - n * n.ln();
    let s = von_neumann_entropy(&thermal_dm(n, 200).unwrap()).unwrap();
    assert!((s - want).abs() < 1e-8);
    let sq = DstsParams::new(0.0, 0.7, 0.5, Complex::new(0.3, 0.3)).unwrap();
    assert!(
        von_neumann_entropy(&dsts_dm(&sq, 120).unwrap())
            .unwrap()
            .abs()
            < 1e-8
    );
}

#[test]
fn pure_pair_fidelity_is_trace_product() {
    let p = DstsParams::new(0.0, 0.5, 0.4, Complex::new(0.2, -0.3)).unwrap();
    let q = DstsParams::coherent(Complex::new(-0.1, 0.5));
    let (a, b) = (dsts_dm(&p, 120).unwrap(), dsts_dm(&q, 120).unwrap());
    let f = uhlmann_fidelity_numeric(&a, &b).unwrap();
    assert!((f - trace_product(&a, &b).unwrap()).abs() < 1e-8);
}

#[test]
fn truncation_warning_is_flagged() {
    let p = DstsParams::new(2.0, 1.0, 0.0, Complex::new(1.0, 0.0)).unwrap();
    let small = dsts_dm(&p, 20).unwrap();
    let w = small.truncation_warning().expect("dim 20 is far too small");
    assert_eq!(w.dim, 20);
    assert!(w.to_string().contains("dim 20"));
    assert!(dsts_dm(&DstsParams::vacuum(), 10)
        .unwrap()
        .truncation_warning()
        .is_none());
}

#[test]
fn dump_round_trips_through_a_file() {
    let p = TwoModeStsParams::new(0.1, 0.2, 0.3, 0.4).unwrap();
    let rho = sts2_dm(&p, 5).unwrap();
    let path = std::env::temp_dir().join(format!("cvgauss-fock-dump-{}.bin", std::process::id()));
    write_binary(&rho, std::fs::File::create(&path).unwrap()).unwrap();
    let back = read_binary(std::fs::File::open(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(back, rho);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn numeric_fidelity_is_symmetric_and_bounded(
        n1 in 0.0..1.0f64, r1 in 0.0..0.6f64, p1 in -3.0..3.0f64, a1 in -0.6..0.6f64,
        n2 in 0.0..1.0f64, r2 in 0.0..0.6f64, p2 in -3.0..3.0f64, a2 in -0.6..0.6f64,
    ) {
        let p = DstsParams::new(n1, r1, p1, Complex::new(a1, 0.2)).unwrap();
        let q = DstsParams::new(n2, r2, p2, Complex::new(0.1, a2)).unwrap();
        let (a, b) = (dsts_dm(&p, 60).unwrap(), dsts_dm(&q, 60).unwrap());
        let fab = uhlmann_fidelity_numeric(&a, &b).unwrap();
        let fba = uhlmann_fidelity_numeric(&b, &a).unwrap();
        prop_assert!((fab - fba).abs() < 1e-10);
        prop_assert!((0.0..=1.0 + 1e-10).contains(&fab));
        prop_assert!(fab >= trace_product(&a, &b).unwrap() - 1e-8);
        prop_assert!(a.hermiticity_defect() < 1e-12);
    }
}
