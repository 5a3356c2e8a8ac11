//! Closed form against oracle and invariant checks.
//!
//! Each check is a deterministic function of its sample count, tolerance and
//! truncation. `Suite::Full` uses the sample counts of the acceptance
//! criteria, `Suite::Fast` a subset that runs in a few seconds and skips the
//! two-mode oracle.

use std::f64::consts::PI;

use cvgauss_core::entanglement::{
    closest_separable_numeric, degree_e0, peres_simon_separable, separability_threshold_rs,
};
use cvgauss_core::fidelity::{fidelity_one_mode, fidelity_two_mode_sts};
use cvgauss_core::gaussian::{dsts_to_cf, sts_to_cf2, sts_to_cov2};
use cvgauss_core::minimize::SplitMix64;
use cvgauss_core::nonclassicality::{
    closest_classical_numeric, degree_q0, nonclassicality_threshold,
};
use cvgauss_core::teleport::{
    noise_z, resource_r_for_z, sweep_fig1, sweep_fig2, teleport_cf, teleport_fidelity,
    TeleportVariables,
};
use cvgauss_core::{linspace, Complex, DstsParams, TwoModeStsParams};
use cvgauss_fock::{dsts_dm, sts2_dm, trace_product, uhlmann_fidelity_numeric};

use crate::config::{Config, SweepConfig, Tolerances, Truncation};
use crate::output::fmt_num;
use crate::Result;

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    /// Worst deviations and the tolerances they were held to.
    pub summary: String,
}

impl Check {
    pub fn line(&self) -> String {
        format!(
            "{} [{:>2}] {}: {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.summary
        )
    }
}

/// Sample counts of a suite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteSize {
    pub one_mode_pairs: usize,
    /// Zero skips the two-mode oracle.
    pub two_mode_pairs: usize,
    pub two_mode_dim: usize,
    pub boundary_samples: usize,
    pub entangled_samples: usize,
    pub nonclassical_samples: usize,
    pub teleport_grid: usize,
    pub property_pairs: usize,
    pub oracle_property_pairs: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Fast,
    Full,
}

impl Suite {
    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "fast" => Some(Suite::Fast),
            "full" => Some(Suite::Full),
            _ => None,
        }
    }

    pub fn size(self) -> SuiteSize {
        match self {
            Suite::Full => SuiteSize {
                one_mode_pairs: 50,
                two_mode_pairs: 10,
                two_mode_dim: 40,
                boundary_samples: 50,
                entangled_samples: 10,
                nonclassical_samples: 20,
                teleport_grid: 10,
                property_pairs: 50,
                oracle_property_pairs: 10,
            },
            Suite::Fast => SuiteSize {
                one_mode_pairs: 8,
                two_mode_pairs: 0,
                two_mode_dim: 40,
                boundary_samples: 20,
                entangled_samples: 3,
                nonclassical_samples: 5,
                teleport_grid: 6,
                property_pairs: 20,
                oracle_property_pairs: 3,
            },
        }
    }
}

fn check(id: u8, name: &'static str, passed: bool, summary: String) -> Check {
    Check {
        id,
        name,
        passed,
        summary,
    }
}

fn e(v: f64) -> String {
    format!("{v:.3e}")
}

fn angle(g: &mut SplitMix64) -> f64 {
    g.uniform(-PI, PI)
}

/// DSTS with `nbar <= 2`, `r <= 1`, `|alpha| <= 1`.
fn random_dsts(g: &mut SplitMix64) -> Result<DstsParams> {
    let nbar = g.uniform(0.0, 2.0);
    let r = g.uniform(0.0, 1.0);
    let phi = angle(g);
    let alpha = Complex::from_polar(g.uniform(0.0, 1.0), angle(g));
    Ok(DstsParams::new(nbar, r, phi, alpha)?)
}

/// One-mode closed form against the truncated Fock fidelity.
pub fn one_mode_oracle(pairs: usize, trunc: &Truncation, tol: f64) -> Result<Check> {
    let mut g = SplitMix64::new(1);
    let mut worst = 0.0f64;
    let (mut dmin, mut dmax, mut warnings) = (usize::MAX, 0, 0);
    for _ in 0..pairs {
        let (p, q) = (random_dsts(&mut g)?, random_dsts(&mut g)?);
        let dim = trunc.one_mode_dim(&[p, q]);
        let (a, b) = (dsts_dm(&p, dim)?, dsts_dm(&q, dim)?);
        warnings += [&a, &b]
            .iter()
            .filter(|m| m.truncation_warning().is_some())
            .count();
        let closed = fidelity_one_mode(&dsts_to_cf(&p), &dsts_to_cf(&q))?;
        worst = worst.max((closed - uhlmann_fidelity_numeric(&a, &b)?).abs());
        dmin = dmin.min(dim);
        dmax = dmax.max(dim);
    }
    Ok(check(
        1,
        "one-mode fidelity vs Fock oracle",
        worst <= tol,
        format!(
            "max |closed - oracle| = {} over {pairs} pairs (dim {dmin}..{dmax}, {warnings} truncation warnings), tol {}",
            e(worst),
            e(tol)
        ),
    ))
}

/// Two-mode closed form against the Fock fidelity at `dim` levels per mode.
pub fn two_mode_oracle(pairs: usize, dim: usize, tol: f64) -> Result<Check> {
    let mut g = SplitMix64::new(2);
    let mut worst = 0.0f64;
    let draw = |g: &mut SplitMix64| {
        TwoModeStsParams::new(
            g.uniform(0.0, 0.6),
            g.uniform(0.0, 0.6),
            g.uniform(0.0, 1.0),
            angle(g),
        )
    };
    for _ in 0..pairs {
        let (p, q) = (draw(&mut g)?, draw(&mut g)?);
        let num = uhlmann_fidelity_numeric(&sts2_dm(&p, dim)?, &sts2_dm(&q, dim)?)?;
        worst = worst.max((fidelity_two_mode_sts(&p, &q)? - num).abs());
    }
    Ok(check(
        2,
        "two-mode STS fidelity vs Fock oracle",
        worst <= tol,
        format!(
            "max |closed - oracle| = {} over {pairs} pairs at dim {dim}/mode, tol {}",
            e(worst),
            e(tol)
        ),
    ))
}

/// Flip point of the Peres-Simon verdict along `r`, by bisection.
pub fn bisect_separability(nbar1: f64, nbar2: f64) -> Result<f64> {
    let separable = |r: f64| -> Result<bool> {
        let p = TwoModeStsParams::new(nbar1, nbar2, r, 0.0)?;
        Ok(peres_simon_separable(&sts_to_cov2(&p))?)
    };
    let (mut lo, mut hi) = (0.0, 1.0);
    while separable(hi)? {
        lo = hi;
        hi *= 2.0;
    }
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if separable(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Bisected separability edge against the closed-form threshold.
pub fn separability_boundary(samples: usize, tol: f64) -> Result<Check> {
    let mut g = SplitMix64::new(3);
    let mut points = vec![(1.0, 1.0)];
    points.extend((1..samples).map(|_| (g.uniform(0.0, 3.0), g.uniform(0.0, 3.0))));
    let mut worst = 0.0f64;
    for &(n1, n2) in &points {
        let diff = bisect_separability(n1, n2)? - separability_threshold_rs(n1, n2)?;
        worst = worst.max(diff.abs());
    }
    let exact = (2.0 / 3f64.sqrt()).acosh();
    let exact_err = (separability_threshold_rs(1.0, 1.0)? - exact).abs();
    Ok(check(
        3,
        "separability boundary",
        worst <= tol && exact_err <= tol,
        format!(
            "max |bisected - r_s| = {} over {} (nbar1, nbar2), |r_s(1,1) - arccosh(2/sqrt 3)| = {}, tol {}",
            e(worst),
            points.len(),
            e(exact_err),
            e(tol)
        ),
    ))
}

/// Minimization over separable STS's against the closed-form `E0`.
pub fn entanglement_search(samples: usize, tol: f64, boundary_tol: f64) -> Result<Check> {
    let mut g = SplitMix64::new(4);
    let (mut worst, mut worst_edge) = (0.0f64, 0.0f64);
    for _ in 0..samples {
        let (n1, n2) = (g.uniform(0.0, 1.0), g.uniform(0.0, 1.0));
        let r = separability_threshold_rs(n1, n2)? + g.uniform(0.1, 1.0);
        let p = TwoModeStsParams::new(n1, n2, r, angle(&mut g))?;
        let (q, value) = closest_separable_numeric(&p)?;
        worst = worst.max((value - degree_e0(&p)).abs());
        worst_edge = worst_edge.max((q.r - separability_threshold_rs(q.nbar1, q.nbar2)?).abs());
    }
    Ok(check(
        4,
        "entanglement degree by minimization",
        worst <= tol && worst_edge <= boundary_tol,
        format!(
            "max |numeric - E0| = {} (tol {}), max distance of minimizer from r_s = {} (tol {}) over {samples} states",
            e(worst),
            e(tol),
            e(worst_edge),
            e(boundary_tol)
        ),
    ))
}

/// Minimization over classical Gaussians against the closed-form `Q0`.
pub fn nonclassicality_search(samples: usize, tol: f64) -> Result<Check> {
    let mut g = SplitMix64::new(5);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let nbar = g.uniform(0.0, 2.0);
        let r = nonclassicality_threshold(nbar)? + g.uniform(0.1, 1.0);
        let phi = angle(&mut g);
        let alpha = Complex::from_polar(g.uniform(0.0, 1.0), angle(&mut g));
        let p = DstsParams::new(nbar, r, phi, alpha)?;
        let (_, value) = closest_classical_numeric(&p)?;
        worst = worst.max((value - degree_q0(&p)).abs());
    }
    Ok(check(
        5,
        "nonclassicality degree by minimization",
        worst <= tol,
        format!(
            "max |numeric - Q0| = {} over {samples} states, tol {}",
            e(worst),
            e(tol)
        ),
    ))
}

/// Axes of the teleportation grid: `r_in`, `nbar_in`, `z`.
pub fn teleport_grid(n: usize) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    (
        linspace(0.0, 1.5, n),
        linspace(0.0, 2.0, n),
        linspace(0.05, 1.9, n),
    )
}

/// Photons per mode of the symmetric resource used to realize each `z`.
const RESOURCE_NBAR: f64 = 0.5;

/// Closed-form teleportation fidelity against the general fidelity of the
/// input and the state produced by an explicit STS resource.
pub fn teleport_consistency(n: usize, tol: f64, coherent_tol: f64) -> Result<Check> {
    let (rs, ns, zs) = teleport_grid(n);
    let mut worst = 0.0f64;
    for &r_in in &rs {
        for &n_in in &ns {
            let input = DstsParams::new(n_in, r_in, 0.7, Complex::new(0.3, -0.2))?;
            let g = dsts_to_cf(&input);
            for &z in &zs {
                let r = resource_r_for_z(RESOURCE_NBAR, z)?.max(0.0);
                let resource = TwoModeStsParams::new(RESOURCE_NBAR, RESOURCE_NBAR, r, 0.0)?;
                let out = teleport_cf(&g, &sts_to_cf2(&resource))?;
                let closed = teleport_fidelity(&TeleportVariables::from_input(&input, z)?);
                worst = worst.max((closed - fidelity_one_mode(&g, &out)?).abs());
            }
        }
    }

    let mut coherent = 0.0f64;
    for &z in &zs {
        let f = teleport_fidelity(&TeleportVariables::new(1.0, 0.5, z)?);
        coherent = coherent.max((f - 1.0 / (1.0 + z)).abs());
    }

    // F(1, 1/2, z) > N/(N+1) exactly when r > r_s + ln(N)/2.
    let mut mismatches = 0;
    let mut tested = 0;
    for nbar in [0.0, 0.5, 2.0] {
        let r_s = separability_threshold_rs(nbar, nbar)?;
        for &r in &linspace(0.0, 3.0, 301) {
            for big_n in 1..=3 {
                let edge = r_s + 0.5 * (big_n as f64).ln();
                if (r - edge).abs() < 1e-9 {
                    continue;
                }
                let f = teleport_fidelity(&TeleportVariables::new(1.0, 0.5, noise_z(nbar, r)?)?);
                let n = big_n as f64;
                tested += 1;
                if (f > n / (n + 1.0)) != (r > edge) {
                    mismatches += 1;
                }
            }
        }
    }

    Ok(check(
        6,
        "teleportation fidelity consistency",
        worst <= tol && coherent <= coherent_tol && mismatches == 0,
        format!(
            "max |closed - general| = {} on {n}^3 grid (tol {}), coherent row max |F - 1/(1+z)| = {} (tol {}), threshold mismatches {mismatches}/{tested}",
            e(worst),
            e(tol),
            e(coherent),
            e(coherent_tol)
        ),
    ))
}

fn partial(f: impl Fn(f64) -> f64, v: f64) -> f64 {
    let h = 1e-6 * v.abs().max(1.0);
    (f(v + h) - f(v - h)) / (2.0 * h)
}

/// Signs of the partial derivatives of the teleportation fidelity at interior
/// points of the teleportation grid.
pub fn teleport_monotonicity(n: usize) -> Result<Check> {
    let (rs, ns, zs) = teleport_grid(n);
    let fid = |x: f64, y: f64, z: f64| teleport_fidelity(&TeleportVariables { x, y, z });
    let (mut max_dx, mut min_dy, mut max_dz) =
        (f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    let interior = |v: &[f64]| v[1..v.len() - 1].to_vec();
    for &r in &interior(&rs) {
        let x = (2.0 * r).cosh();
        for &nb in &interior(&ns) {
            let y = nb + 0.5;
            for &z in &interior(&zs) {
                max_dx = max_dx.max(partial(|t| fid(t, y, z), x));
                min_dy = min_dy.min(partial(|t| fid(x, t, z), y));
                max_dz = max_dz.max(partial(|t| fid(x, y, t), z));
            }
        }
    }
    Ok(check(
        7,
        "teleportation fidelity monotonicity",
        max_dx < 0.0 && min_dy > 0.0 && max_dz < 0.0,
        format!(
            "max dF/dx = {}, min dF/dy = {}, max dF/dz = {} at {} interior points",
            e(max_dx),
            e(min_dy),
            e(max_dz),
            (n.saturating_sub(2)).pow(3)
        ),
    ))
}

/// Figure 1: endpoints, monotonicity in `E0` and ordering by `nbar_in`.
pub fn figure1(sweep: &SweepConfig, tol: f64) -> Result<Check> {
    let mut grid = sweep.e0_grid();
    if grid.last() != Some(&1.0) {
        grid.push(1.0);
    }
    let mut nbars = sweep.nbar_in.clone();
    nbars.sort_by(f64::total_cmp);
    let curves = sweep_fig1(sweep.r_in, &nbars, &grid)?;
    let endpoint = curves
        .iter()
        .map(|c| (c.rows.last().expect("grid is nonempty").1 - 1.0).abs())
        .fold(0.0f64, f64::max);
    let increasing = curves
        .iter()
        .all(|c| c.rows.windows(2).all(|w| w[1].1 > w[0].1));
    let mut ordered = true;
    for pair in curves.windows(2) {
        for (lo, hi) in pair[0].rows.iter().zip(&pair[1].rows) {
            if lo.0 < 1.0 && hi.1 <= lo.1 {
                ordered = false;
            }
        }
    }
    Ok(check(
        8,
        "figure 1 reproduction",
        endpoint <= tol && increasing && ordered,
        format!(
            "{} curves x {} points: max |F(E0=1) - 1| = {} (tol {}), strictly increasing {}, ordered by nbar_in {}",
            curves.len(),
            grid.len(),
            e(endpoint),
            e(tol),
            yes(increasing),
            yes(ordered)
        ),
    ))
}

/// Figure 2: identity at `E0 = 1`, loss of nonclassicality otherwise.
pub fn figure2(sweep: &SweepConfig, tol: f64) -> Result<Check> {
    let curves = sweep_fig2(&sweep.e0_list, &sweep.q_grid())?;
    let mut identity = 0.0f64;
    let (mut below, mut monotone) = (true, true);
    for c in &curves {
        if c.e0 == 1.0 {
            for &(qi, qo) in &c.rows {
                identity = identity.max((qo - qi).abs());
            }
            continue;
        }
        for &(qi, qo) in &c.rows {
            if qi > 0.0 && qo >= qi {
                below = false;
            }
        }
        if c.rows.windows(2).any(|w| w[1].1 < w[0].1) {
            monotone = false;
        }
    }
    Ok(check(
        9,
        "figure 2 reproduction",
        identity <= tol && below && monotone,
        format!(
            "E0 list [{}]: max |Q_out - Q_in| at E0=1 = {} (tol {}), Q_out < Q_in {}, Q_out monotone {}",
            sweep
                .e0_list
                .iter()
                .map(|v| fmt_num(*v))
                .collect::<Vec<_>>()
                .join(", "),
            e(identity),
            e(tol),
            yes(below),
            yes(monotone)
        ),
    ))
}

/// Symmetry, range, multiplicativity and the trace bounds of the fidelity.
pub fn fidelity_properties(
    pairs: usize,
    oracle_pairs: usize,
    trunc: &Truncation,
    tol: &Tolerances,
) -> Result<Check> {
    let mut g = SplitMix64::new(10);
    let (mut asym, mut lo, mut hi) = (0.0f64, f64::INFINITY, f64::NEG_INFINITY);
    for _ in 0..pairs {
        let (p, q) = (random_dsts(&mut g)?, random_dsts(&mut g)?);
        let (a, b) = (dsts_to_cf(&p), dsts_to_cf(&q));
        let (fab, fba) = (fidelity_one_mode(&a, &b)?, fidelity_one_mode(&b, &a)?);
        asym = asym.max((fab - fba).abs());
        lo = lo.min(fab);
        hi = hi.max(fab);
    }

    let mut product_err = 0.0f64;
    for _ in 0..pairs {
        let n: Vec<f64> = (0..4).map(|_| g.uniform(0.0, 2.0)).collect();
        let two = fidelity_two_mode_sts(
            &TwoModeStsParams::new(n[0], n[1], 0.0, 0.0)?,
            &TwoModeStsParams::new(n[2], n[3], 0.0, 0.0)?,
        )?;
        let one = |u: f64, v: f64| {
            fidelity_one_mode(
                &dsts_to_cf(&DstsParams::thermal(u)),
                &dsts_to_cf(&DstsParams::thermal(v)),
            )
        };
        product_err = product_err.max((two - one(n[0], n[2])? * one(n[1], n[3])?).abs());
    }

    // Against Fock traces: F >= Tr(r1 r2), with equality for pure pairs.
    let (mut bound_violation, mut pure_err) = (0.0f64, 0.0f64);
    for _ in 0..oracle_pairs {
        let (p, q) = (random_dsts(&mut g)?, random_dsts(&mut g)?);
        let dim = trunc.one_mode_dim(&[p, q]);
        let t = trace_product(&dsts_dm(&p, dim)?, &dsts_dm(&q, dim)?)?;
        let f = fidelity_one_mode(&dsts_to_cf(&p), &dsts_to_cf(&q))?;
        bound_violation = bound_violation.max(t - f);

        let pure = |p: DstsParams| DstsParams::new(0.0, p.r, p.phi, p.alpha);
        let (p, q) = (pure(p)?, pure(q)?);
        let dim = trunc.one_mode_dim(&[p, q]);
        let t = trace_product(&dsts_dm(&p, dim)?, &dsts_dm(&q, dim)?)?;
        let f = fidelity_one_mode(&dsts_to_cf(&p), &dsts_to_cf(&q))?;
        pure_err = pure_err.max((f - t).abs());
    }

    let passed = asym <= tol.symmetry
        && lo >= 0.0
        && hi <= 1.0
        && product_err <= tol.multiplicativity
        && bound_violation <= tol.trace_bound
        && pure_err <= tol.trace_bound;
    Ok(check(
        10,
        "fidelity properties",
        passed,
        format!(
            "symmetry {} (tol {}), range [{}, {}], multiplicativity {} (tol {}), max Tr(r1 r2) - F = {}, pure |F - Tr(r1 r2)| = {} (tol {})",
            e(asym),
            e(tol.symmetry),
            fmt_num(lo),
            fmt_num(hi),
            e(product_err),
            e(tol.multiplicativity),
            e(bound_violation),
            e(pure_err),
            e(tol.trace_bound)
        ),
    ))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "NO"
    }
}

/// Runs every check of `suite`. A check that cannot be evaluated is a failure.
pub fn run_suite(suite: Suite, cfg: &Config) -> Vec<Check> {
    let s = suite.size();
    let t = &cfg.tolerances;
    let tr = &cfg.truncation;
    let two_mode_dim = tr.dim.unwrap_or(s.two_mode_dim);
    let two_mode_dim = tr.max_dim.map_or(two_mode_dim, |m| two_mode_dim.min(m));
    let mut jobs: Vec<(u8, &'static str, Box<dyn Fn() -> Result<Check> + '_>)> = vec![(
        1,
        "one-mode fidelity vs Fock oracle",
        Box::new(move || one_mode_oracle(s.one_mode_pairs, tr, t.one_mode_oracle)),
    )];
    if s.two_mode_pairs > 0 {
        jobs.push((
            2,
            "two-mode STS fidelity vs Fock oracle",
            Box::new(move || two_mode_oracle(s.two_mode_pairs, two_mode_dim, t.two_mode_oracle)),
        ));
    }
    jobs.push((
        3,
        "separability boundary",
        Box::new(move || separability_boundary(s.boundary_samples, t.separability)),
    ));
    jobs.push((
        4,
        "entanglement degree by minimization",
        Box::new(move || entanglement_search(s.entangled_samples, t.entanglement, t.boundary)),
    ));
    jobs.push((
        5,
        "nonclassicality degree by minimization",
        Box::new(move || nonclassicality_search(s.nonclassical_samples, t.nonclassicality)),
    ));
    jobs.push((
        6,
        "teleportation fidelity consistency",
        Box::new(move || teleport_consistency(s.teleport_grid, t.teleport, t.coherent_row)),
    ));
    jobs.push((
        7,
        "teleportation fidelity monotonicity",
        Box::new(move || teleport_monotonicity(s.teleport_grid)),
    ));
    jobs.push((
        8,
        "figure 1 reproduction",
        Box::new(move || figure1(&cfg.sweep, t.fig1_endpoint)),
    ));
    jobs.push((
        9,
        "figure 2 reproduction",
        Box::new(move || figure2(&cfg.sweep, t.fig2_identity)),
    ));
    jobs.push((
        10,
        "fidelity properties",
        Box::new(move || fidelity_properties(s.property_pairs, s.oracle_property_pairs, tr, t)),
    ));
    jobs.into_iter()
        .map(|(id, name, job)| {
            job().unwrap_or_else(|err| {
                check(id, name, false, format!("could not be evaluated: {err}"))
            })
        })
        .collect()
}

/// Check lines plus a closing tally.
pub fn report(checks: &[Check]) -> String {
    let mut out = String::new();
    for c in checks {
        out.push_str(&c.line());
        out.push('\n');
    }
    let passed = checks.iter().filter(|c| c.passed).count();
    out.push_str(&format!("{passed}/{} checks passed\n", checks.len()));
    out
}
