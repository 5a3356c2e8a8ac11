//! Command bodies. Each returns the text the binary prints.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use cvgauss_core::entanglement::{degree_e0, peres_simon_separable, separability_threshold_rs};
use cvgauss_core::fidelity::{bures_distance, fidelity_one_mode, fidelity_two_mode_sts};
use cvgauss_core::gaussian::{
    cf2_to_cov2, cf_to_cov, cf_to_dsts, dsts_to_cf, local_invariants, sts_to_cf2,
};
use cvgauss_core::nonclassicality::{degree_q0, is_classical, nonclassicality_threshold};
use cvgauss_core::teleport::{
    noise_z, sweep_fig1, sweep_fig2, teleport_fidelity_from_states, teleport_symmetric_sts,
};
use cvgauss_core::{Complex, TwoModeStsParams};
use cvgauss_fock::{dsts_dm, sts2_dm, uhlmann_fidelity_numeric, FockDensityMatrix};

use crate::config::{Config, Truncation};
use crate::descriptor::{State, StateDescriptor};
use crate::output::{csv_table, fmt_num, write_atomic};
use crate::validate::{self, Suite};
use crate::{CliError, Result};

fn kv(out: &mut String, key: &str, value: impl AsRef<str>) {
    let _ = writeln!(out, "{key:<16}{}", value.as_ref());
}

fn c(z: Complex) -> String {
    format!("[{}, {}]", fmt_num(z.re), fmt_num(z.im))
}

fn row(v: &[f64]) -> String {
    let cells: Vec<String> = v.iter().map(|x| fmt_num(*x)).collect();
    format!("[{}]", cells.join(", "))
}

fn verdict(b: bool, yes: &str, no: &str) -> String {
    (if b { yes } else { no }).to_owned()
}

/// CF coefficients, covariance matrix, parameters and thresholds of a state.
pub fn info(state: &State) -> Result<String> {
    let mut out = String::new();
    match state {
        State::One(p) => {
            let g = dsts_to_cf(p);
            let v = cf_to_cov(&g)?.to_array();
            kv(&mut out, "kind", "dsts");
            kv(&mut out, "nbar", fmt_num(p.nbar));
            kv(&mut out, "r", fmt_num(p.r));
            kv(&mut out, "phi", fmt_num(p.phi));
            kv(&mut out, "alpha", c(p.alpha));
            kv(&mut out, "A", fmt_num(g.a));
            kv(&mut out, "B", c(g.b));
            kv(&mut out, "C", c(g.c));
            kv(&mut out, "V", row(&v[0]));
            kv(&mut out, "", row(&v[1]));
            kv(
                &mut out,
                "det V",
                fmt_num(v[0][0] * v[1][1] - v[0][1] * v[1][0]),
            );
            kv(&mut out, "r_c", fmt_num(nonclassicality_threshold(p.nbar)?));
            kv(&mut out, "classical", verdict(is_classical(p), "yes", "no"));
            kv(&mut out, "Q0", fmt_num(degree_q0(p)));
        }
        State::Two(p) => {
            let t = sts_to_cf2(p);
            let m = cf2_to_cov2(&t)?;
            let inv = local_invariants(&m);
            let (n1, n2) = p.reduced_occupancies();
            kv(&mut out, "kind", "sts2");
            kv(&mut out, "nbar1", fmt_num(p.nbar1));
            kv(&mut out, "nbar2", fmt_num(p.nbar2));
            kv(&mut out, "r", fmt_num(p.r));
            kv(&mut out, "phi", fmt_num(p.phi));
            kv(&mut out, "A1", fmt_num(t.mode1.a));
            kv(&mut out, "A2", fmt_num(t.mode2.a));
            kv(&mut out, "F", c(t.f));
            kv(&mut out, "G", c(t.g));
            let v = m.to_array();
            kv(&mut out, "V", row(&v[0]));
            for r in &v[1..] {
                kv(&mut out, "", row(r));
            }
            kv(&mut out, "det V1", fmt_num(inv.det_v1));
            kv(&mut out, "det V2", fmt_num(inv.det_v2));
            kv(&mut out, "det C", fmt_num(inv.det_c));
            kv(&mut out, "det V", fmt_num(inv.det_v));
            kv(&mut out, "N1", fmt_num(n1));
            kv(&mut out, "N2", fmt_num(n2));
            kv(
                &mut out,
                "r_s",
                fmt_num(separability_threshold_rs(p.nbar1, p.nbar2)?),
            );
            kv(
                &mut out,
                "separable",
                verdict(peres_simon_separable(&m)?, "yes", "no"),
            );
            kv(&mut out, "E0", fmt_num(degree_e0(p)));
        }
    }
    Ok(out)
}

fn warnings(out: &mut String, mats: &[&FockDensityMatrix]) {
    for m in mats {
        if let Some(w) = m.truncation_warning() {
            kv(out, "warning", w.to_string());
        }
    }
}

/// Closed-form fidelity, optionally compared with the Fock oracle.
///
/// `tol` only labels the oracle delta; it does not change the exit status.
pub fn fidelity(
    a: &State,
    b: &State,
    oracle: bool,
    trunc: &Truncation,
    tol: Option<f64>,
    cfg: &Config,
) -> Result<String> {
    let mut out = String::new();
    let (closed, numeric, dim, default_tol) = match (a, b) {
        (State::One(p), State::One(q)) => {
            let f = fidelity_one_mode(&dsts_to_cf(p), &dsts_to_cf(q))?;
            let num = if oracle {
                let dim = trunc.one_mode_dim(&[*p, *q]);
                let (x, y) = (dsts_dm(p, dim)?, dsts_dm(q, dim)?);
                warnings(&mut out, &[&x, &y]);
                Some((uhlmann_fidelity_numeric(&x, &y)?, dim))
            } else {
                None
            };
            (
                f,
                num.map(|n| n.0),
                num.map(|n| n.1),
                cfg.tolerances.one_mode_oracle,
            )
        }
        (State::Two(p), State::Two(q)) => {
            let f = fidelity_two_mode_sts(p, q)?;
            let num = if oracle {
                let dim = trunc.two_mode_dim(&[*p, *q]);
                let (x, y) = (sts2_dm(p, dim)?, sts2_dm(q, dim)?);
                warnings(&mut out, &[&x, &y]);
                Some((uhlmann_fidelity_numeric(&x, &y)?, dim))
            } else {
                None
            };
            (
                f,
                num.map(|n| n.0),
                num.map(|n| n.1),
                cfg.tolerances.two_mode_oracle,
            )
        }
        _ => {
            return Err(CliError::Input(
                "fidelity needs two states of the same kind".into(),
            ))
        }
    };
    let mut head = String::new();
    kv(&mut head, "fidelity", fmt_num(closed));
    kv(&mut head, "bures", fmt_num(bures_distance(closed)?));
    if let (Some(num), Some(dim)) = (numeric, dim) {
        let tol = tol.unwrap_or(default_tol);
        let delta = (closed - num).abs();
        kv(&mut head, "oracle", fmt_num(num));
        kv(&mut head, "oracle dim", dim.to_string());
        kv(
            &mut head,
            "delta",
            format!(
                "{delta:.3e} ({} tol {tol:.1e})",
                if delta <= tol { "within" } else { "exceeds" }
            ),
        );
    }
    head.push_str(&out);
    Ok(head)
}

/// Separability threshold, Peres-Simon verdict and degree of entanglement.
pub fn entangle(state: &State) -> Result<String> {
    let State::Two(p) = state else {
        return Err(CliError::Input("entangle needs an sts2 state".into()));
    };
    let mut out = String::new();
    let separable = peres_simon_separable(&cf2_to_cov2(&sts_to_cf2(p))?)?;
    kv(
        &mut out,
        "r_s",
        fmt_num(separability_threshold_rs(p.nbar1, p.nbar2)?),
    );
    kv(
        &mut out,
        "verdict",
        verdict(separable, "separable", "entangled"),
    );
    kv(&mut out, "E0", fmt_num(degree_e0(p)));
    Ok(out)
}

/// Teleports a DSTS through a symmetric STS resource with `nbar` photons per
/// mode and squeeze factor `r`.
pub fn teleport(state: &State, nbar: f64, r: f64) -> Result<String> {
    let State::One(p) = state else {
        return Err(CliError::Input("teleport needs a dsts input state".into()));
    };
    let resource = TwoModeStsParams::new(nbar, nbar, r, 0.0)?;
    let out_cf = teleport_symmetric_sts(&dsts_to_cf(p), nbar, r)?;
    let out_state = State::One(cf_to_dsts(&out_cf)?);
    let mut out = String::new();
    kv(
        &mut out,
        "output",
        StateDescriptor::from(&out_state).to_json(),
    );
    kv(&mut out, "z", fmt_num(noise_z(nbar, r)?));
    kv(&mut out, "resource E0", fmt_num(degree_e0(&resource)));
    kv(&mut out, "A_out", fmt_num(out_cf.a));
    kv(
        &mut out,
        "fidelity",
        fmt_num(teleport_fidelity_from_states(p, nbar, r)?),
    );
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    Fig1,
    Fig2,
}

/// Writes one CSV per curve into `out_dir` and lists the files.
pub fn sweep(figure: Figure, cfg: &Config, out_dir: &Path) -> Result<String> {
    cfg.validate()?;
    std::fs::create_dir_all(out_dir)?;
    let s = &cfg.sweep;
    let mut files: Vec<(PathBuf, String, usize)> = Vec::new();
    match figure {
        Figure::Fig1 => {
            for curve in sweep_fig1(s.r_in, &s.nbar_in, &s.e0_grid())? {
                let path = out_dir.join(format!("fig1_nbar_{}.csv", fmt_num(curve.nbar_in)));
                let n = curve.rows.len();
                files.push((path, csv_table(&["e0", "fidelity"], &curve.rows), n));
            }
        }
        Figure::Fig2 => {
            for curve in sweep_fig2(&s.e0_list, &s.q_grid())? {
                let path = out_dir.join(format!("fig2_e0_{}.csv", fmt_num(curve.e0)));
                let n = curve.rows.len();
                files.push((path, csv_table(&["q_in", "q_out"], &curve.rows), n));
            }
        }
    }
    let mut out = String::new();
    for (path, contents, n) in &files {
        write_atomic(path, contents)?;
        let _ = writeln!(out, "wrote {} ({n} rows)", path.display());
    }
    Ok(out)
}

/// Runs a validation suite. The flag is true when every check passed.
pub fn validate(suite: &str, cfg: &Config) -> Result<(String, bool)> {
    let suite = Suite::parse(suite).ok_or_else(|| {
        CliError::Input(format!("unknown suite {suite:?}, expected fast or full"))
    })?;
    cfg.validate()?;
    let checks = validate::run_suite(suite, cfg);
    Ok((validate::report(&checks), checks.iter().all(|c| c.passed)))
}
