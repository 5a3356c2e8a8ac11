//! Derivative-free minimization: Nelder-Mead with seeded multistart.

use alloc::vec;
use alloc::vec::Vec;

/// Stopping and restart settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NelderMeadOptions {
    /// Stop when every vertex lies within this distance of the best one...
    pub xatol: f64,
    /// ...and the spread of objective values is below this.
    pub fatol: f64,
    pub max_evals: usize,
    /// Edge length of the initial simplex.
    pub initial_step: f64,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        Self {
            xatol: 1e-10,
            fatol: 1e-15,
            max_evals: 20_000,
            initial_step: 0.5,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub f: f64,
    pub evals: usize,
    pub converged: bool,
}

/// Minimizes `f` starting from `x0` with the standard reflection, expansion,
/// contraction and shrink coefficients (1, 2, 1/2, 1/2).
pub fn nelder_mead<F>(mut f: F, x0: &[f64], opts: &NelderMeadOptions) -> Minimum
where
    F: FnMut(&[f64]) -> f64,
{
    let n = x0.len();
    let mut evals = 0usize;
    let mut eval = |x: &[f64], evals: &mut usize| {
        *evals += 1;
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };

    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    simplex.push(x0.to_vec());
    for i in 0..n {
        let mut v = x0.to_vec();
        v[i] += opts.initial_step;
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|v| eval(v, &mut evals)).collect();
    let mut order: Vec<usize> = (0..=n).collect();
    let mut centroid = vec![0.0; n];
    let mut trial = vec![0.0; n];
    let mut trial2 = vec![0.0; n];
    let mut converged = false;

    while evals < opts.max_evals {
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        let best = order[0];
        let worst = order[n];
        let second = order[n.saturating_sub(1)];

        let spread_f = values[worst] - values[best];
        let spread_x = simplex
            .iter()
            .map(|v| {
                v.iter()
                    .zip(&simplex[best])
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max);
        if spread_x <= opts.xatol && spread_f <= opts.fatol {
            converged = true;
            break;
        }

        centroid.iter_mut().for_each(|c| *c = 0.0);
        for &i in &order[..n] {
            for (c, x) in centroid.iter_mut().zip(&simplex[i]) {
                *c += x;
            }
        }
        centroid.iter_mut().for_each(|c| *c /= n as f64);

        let along = |t: f64, out: &mut [f64], simplex: &[Vec<f64>]| {
            for ((o, c), w) in out.iter_mut().zip(&centroid).zip(&simplex[worst]) {
                *o = c + t * (c - w);
            }
        };

        along(1.0, &mut trial, &simplex);
        let fr = eval(&trial, &mut evals);
        if fr < values[best] {
            along(2.0, &mut trial2, &simplex);
            let fe = eval(&trial2, &mut evals);
            if fe < fr {
                simplex[worst].copy_from_slice(&trial2);
                values[worst] = fe;
            } else {
                simplex[worst].copy_from_slice(&trial);
                values[worst] = fr;
            }
            continue;
        }
        if fr < values[second] {
            simplex[worst].copy_from_slice(&trial);
            values[worst] = fr;
            continue;
        }
        let (t, bound) = if fr < values[worst] {
            (0.5, fr)
        } else {
            (-0.5, values[worst])
        };
        along(t, &mut trial2, &simplex);
        let fc = eval(&trial2, &mut evals);
        if fc <= bound {
            simplex[worst].copy_from_slice(&trial2);
            values[worst] = fc;
            continue;
        }
        let anchor = simplex[best].clone();
        for &i in &order[1..] {
            for (x, b) in simplex[i].iter_mut().zip(&anchor) {
                *x = b + 0.5 * (*x - b);
            }
            values[i] = eval(&simplex[i], &mut evals);
        }
    }

    let best = (0..=n)
        .min_by(|&a, &b| values[a].total_cmp(&values[b]))
        .unwrap_or(0);
    Minimum {
        x: simplex[best].clone(),
        f: values[best],
        evals,
        converged,
    }
}

/// SplitMix64; enough to seed start points reproducibly without `std`.
#[derive(Debug, Clone)]
pub struct SplitMix64(u64);

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }
}

/// Runs Nelder-Mead from each start, restarts once from the best point, and
/// returns the overall minimum.
pub fn multistart<F>(mut f: F, starts: &[Vec<f64>], opts: &NelderMeadOptions) -> Option<Minimum>
where
    F: FnMut(&[f64]) -> f64,
{
    let mut best: Option<Minimum> = None;
    let mut total = 0usize;
    for s in starts {
        let m = nelder_mead(&mut f, s, opts);
        total += m.evals;
        if best.as_ref().map_or(true, |b| m.f < b.f) {
            best = Some(m);
        }
    }
    let mut best = best?;
    let polish = NelderMeadOptions {
        initial_step: opts.initial_step * 0.1,
        ..*opts
    };
    let m = nelder_mead(&mut f, &best.x, &polish);
    total += m.evals;
    if m.f <= best.f {
        best = m;
    }
    best.evals = total;
    Some(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rosenbrock(x: &[f64]) -> f64 {
        (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2)
    }

    #[test]
    fn finds_rosenbrock_minimum() {
        let m = nelder_mead(rosenbrock, &[-1.2, 1.0], &NelderMeadOptions::default());
        assert!(m.converged);
        assert!((m.x[0] - 1.0).abs() < 1e-8 && (m.x[1] - 1.0).abs() < 1e-8);
        assert!(m.f < 1e-15);
    }

    #[test]
    fn quadratic_in_four_dimensions() {
        let f = |x: &[f64]| {
            x.iter()
                .enumerate()
                .map(|(i, v)| (i as f64 + 1.0) * (v - i as f64).powi(2))
                .sum::<f64>()
        };
        let m = nelder_mead(f, &[5.0; 4], &NelderMeadOptions::default());
        for (i, v) in m.x.iter().enumerate() {
            assert!((v - i as f64).abs() < 1e-8);
        }
    }

    #[test]
    fn one_dimensional_problem() {
        let m = nelder_mead(
            |x| (x[0] - 3.0).powi(2),
            &[0.0],
            &NelderMeadOptions::default(),
        );
        assert!((m.x[0] - 3.0).abs() < 1e-9);
    }

    #[test]
    fn nan_is_treated_as_worse() {
        let f = |x: &[f64]| {
            if x[0] < 0.0 {
                f64::NAN
            } else {
                (x[0] - 1.0).powi(2)
            }
        };
        let m = nelder_mead(f, &[0.5], &NelderMeadOptions::default());
        assert!((m.x[0] - 1.0).abs() < 1e-8);
    }

    #[test]
    fn multistart_escapes_local_minimum() {
        // Double well with the deeper well at x = -1.
        let f = |x: &[f64]| (x[0] * x[0] - 1.0).powi(2) + 0.3 * x[0];
        let starts = [vec![2.0], vec![-2.0]];
        let m = multistart(f, &starts, &NelderMeadOptions::default()).unwrap();
        assert!(m.x[0] < 0.0);
        assert!(multistart(f, &[], &NelderMeadOptions::default()).is_none());
    }

    #[test]
    fn splitmix_reference_sequence() {
        // First outputs for seed 0 from the reference implementation.
        let mut g = SplitMix64::new(0);
        assert_eq!(g.next_u64(), 0xE220_A839_7B1D_CDAF);
        assert_eq!(g.next_u64(), 0x6E78_9E6A_A1B9_65F4);
        let mut g = SplitMix64::new(7);
        for _ in 0..1000 {
            let u = g.uniform(-2.0, 3.0);
            assert!((-2.0..3.0).contains(&u));
        }
    }
}
