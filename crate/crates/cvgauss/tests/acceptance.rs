//! The ten acceptance criteria at full size. Prints one PASS/FAIL line per
//! criterion and fails if any of them does.
//!
//! Run with `cargo test -p cvgauss --test acceptance -- --nocapture` to see
//! the report.

use std::time::{Duration, Instant};

use cvgauss::config::{Config, Truncation};
use cvgauss::validate::{self, Check};

const ONE_MODE_BUDGET: Duration = Duration::from_secs(60);
const TWO_MODE_BUDGET: Duration = Duration::from_secs(600);

fn timed(budget: Duration, run: impl FnOnce() -> cvgauss::Result<Check>) -> Check {
    let start = Instant::now();
    let mut c = run().expect("check errored");
    let took = start.elapsed();
    c.summary = format!(
        "{}, {:.1} s (budget {} s)",
        c.summary,
        took.as_secs_f64(),
        budget.as_secs()
    );
    c.passed &= took <= budget;
    c
}

#[test]
fn acceptance_criteria() {
    let cfg = Config::default();
    let tol = &cfg.tolerances;
    let fixed = |d| Truncation {
        dim: Some(d),
        max_dim: None,
    };

    let mut checks = vec![
        timed(ONE_MODE_BUDGET, || {
            validate::one_mode_oracle(50, &fixed(120), tol.one_mode_oracle)
        }),
        timed(TWO_MODE_BUDGET, || {
            validate::two_mode_oracle(10, 40, tol.two_mode_oracle)
        }),
    ];
    let rest = [
        validate::separability_boundary(50, tol.separability),
        validate::entanglement_search(10, tol.entanglement, tol.boundary),
        validate::nonclassicality_search(20, tol.nonclassicality),
        validate::teleport_consistency(10, tol.teleport, tol.coherent_row),
        validate::teleport_monotonicity(10),
        validate::figure1(&cfg.sweep, tol.fig1_endpoint),
        validate::figure2(&cfg.sweep, tol.fig2_identity),
        validate::fidelity_properties(50, 10, &cfg.truncation, tol),
    ];
    checks.extend(rest.into_iter().map(|c| c.expect("check errored")));

    for c in &checks {
        println!("{}", c.line());
    }
    let ids: Vec<u8> = checks.iter().map(|c| c.id).collect();
    assert_eq!(ids, (1..=10).collect::<Vec<_>>());
    let failed: Vec<u8> = checks.iter().filter(|c| !c.passed).map(|c| c.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
