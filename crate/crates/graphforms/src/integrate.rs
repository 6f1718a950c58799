//! Numerical evaluation of dipole integrals: the projective form is fixed to
//! the chart `a_{last} = 1` and the resulting rational integrand is
//! integrated over `(0, infinity)^d` after the substitution `a = t/(1-t)`.

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::form::FormExpression;
use crate::forms::dipole_phi;
use crate::poly::MultiPoly;

#[derive(Debug, Error, PartialEq)]
pub enum IntegrateError {
    #[error("budget of {budget} evaluations exhausted; error estimate {error:.2e} above tolerance {tolerance:.2e}")]
    BudgetExhausted {
        budget: u64,
        error: f64,
        tolerance: f64,
    },
    #[error("chart coefficient missing (form has no top-degree term)")]
    EmptyChart,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    Quadrature,
    MonteCarlo,
}

#[derive(Debug, Clone, Copy)]
pub struct IntegrationConfig {
    pub scheme: Scheme,
    /// Function-evaluation budget (quadrature) or sample count (Monte Carlo).
    pub budget: u64,
    pub tolerance: f64,
    pub seed: u64,
}

impl IntegrationConfig {
    pub fn quadrature() -> Self {
        IntegrationConfig {
            scheme: Scheme::Quadrature,
            budget: 4_000_000,
            tolerance: 1e-4,
            seed: 0,
        }
    }

    pub fn monte_carlo() -> Self {
        IntegrationConfig {
            scheme: Scheme::MonteCarlo,
            budget: 10_000_000,
            tolerance: 1e-2,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    pub evaluations: u64,
}

/// SplitMix64: tiny, seedable, stable across platforms. Reproducibility of
/// seeded runs is part of the interface, so no external generator is used.
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in the open interval (0, 1).
    pub fn next_f64(&mut self) -> f64 {
        (((self.next_u64() >> 11) as f64) + 0.5) * (1.0 / 9007199254740992.0)
    }

    /// Uniform in `0..n`.
    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }

    /// Uniform in `lo..=hi`.
    pub fn range(&mut self, lo: usize, hi: usize) -> usize {
        lo + self.below(hi - lo + 1)
    }
}

/// The chart integrand of a projective top-form: restrict to
/// `a_{chart} = 1`, keep the coefficient of `da_1 ^ ... ^ da_{d}` for the
/// remaining labels, evaluate as an exact rational function at `f64` points.
pub struct ChartIntegrand {
    numerator: MultiPoly,
    psi: MultiPoly,
    scalar: f64,
    psi_half: u32,
    pub dim: usize,
}

impl ChartIntegrand {
    pub fn new(form: &FormExpression) -> Result<Self, IntegrateError> {
        let m = form.num_edges();
        let chart = m; // fix the last edge variable to 1
        let labels: Vec<usize> = (1..m).collect();
        let coeff = form.numerator().coefficient(&labels);
        if coeff.is_zero() {
            return Err(IntegrateError::EmptyChart);
        }
        // substitute a_chart = 1, keeping variables 0..m-2
        let images: Vec<MultiPoly> = (0..m)
            .map(|v| {
                if v + 1 == chart {
                    MultiPoly::one()
                } else {
                    MultiPoly::var(v)
                }
            })
            .collect();
        let numerator = coeff.substitute_all(&images);
        let psi = form.psi().substitute_all(&images);
        let scalar = form.scalar().numer().to_f64().unwrap_or(f64::NAN)
            / form.scalar().denom().to_f64().unwrap_or(f64::NAN)
            * std::f64::consts::PI.powi(form.pi_pow());
        Ok(ChartIntegrand {
            numerator,
            psi,
            scalar,
            psi_half: form.psi_half(),
            dim: m - 1,
        })
    }

    /// Value at a point of the positive orthant.
    pub fn eval(&self, a: &[f64]) -> f64 {
        let num = self.numerator.eval_f64(a);
        let psi = self.psi.eval_f64(a);
        self.scalar * num / psi.powf(self.psi_half as f64 / 2.0)
    }

    /// Value after `a = (t/(1-t))^2`, including the Jacobian. The squared
    /// map removes the inverse-square-root boundary singularities that the
    /// plain `t/(1-t)` substitution leaves at `t = 1`, so the transformed
    /// integrand stays bounded on the closed cube.
    fn eval_unit_cube(&self, t: &[f64], scratch: &mut Vec<f64>) -> f64 {
        scratch.clear();
        let mut jac = 1.0;
        for &ti in t {
            let denom = 1.0 - ti;
            let u = ti / denom;
            scratch.push(u * u);
            jac *= 2.0 * ti / (denom * denom * denom);
        }
        self.eval(scratch) * jac
    }
}

/// `integral of phi` over the positive projective simplex for the dipole
/// with `2i+1` edges, computed numerically in the chart `a_{2i+1} = 1`.
pub fn integrate_dipole(i: usize, config: &IntegrationConfig) -> Result<Estimate, IntegrateError> {
    let form = dipole_phi(i);
    let integrand = ChartIntegrand::new(&form)?;
    match config.scheme {
        Scheme::Quadrature => quadrature(&integrand, config),
        Scheme::MonteCarlo => monte_carlo(&integrand, config),
    }
}

fn monte_carlo(
    integrand: &ChartIntegrand,
    config: &IntegrationConfig,
) -> Result<Estimate, IntegrateError> {
    let mut rng = SplitMix64::new(config.seed);
    let n = config.budget.max(1);
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    let mut point = vec![0.0; integrand.dim];
    let mut scratch = Vec::with_capacity(integrand.dim);
    for _ in 0..n {
        for p in point.iter_mut() {
            *p = rng.next_f64();
        }
        let v = integrand.eval_unit_cube(&point, &mut scratch);
        sum += v;
        sum_sq += v * v;
    }
    let mean = sum / n as f64;
    let variance = (sum_sq / n as f64 - mean * mean).max(0.0);
    let error = (variance / n as f64).sqrt();
    if error > config.tolerance {
        return Err(IntegrateError::BudgetExhausted {
            budget: config.budget,
            error,
            tolerance: config.tolerance,
        });
    }
    Ok(Estimate {
        value: mean,
        error,
        evaluations: n,
    })
}

/// Iterated adaptive Simpson over the unit cube, with a small cutoff at the
/// cube boundary where the transformed integrand has integrable
/// inverse-square-root singularities.
fn quadrature(
    integrand: &ChartIntegrand,
    config: &IntegrationConfig,
) -> Result<Estimate, IntegrateError> {
    const EDGE: f64 = 1e-8;
    let dim = integrand.dim;
    let mut evals: u64 = 0;
    let mut point = vec![0.0; dim];
    let tol = config.tolerance / 2.0;
    let (value, err) = integrate_rec(
        integrand,
        &mut point,
        0,
        dim,
        EDGE,
        tol,
        config.budget,
        &mut evals,
    );
    let estimate = Estimate {
        value,
        error: err,
        evaluations: evals,
    };
    if evals >= config.budget || err > config.tolerance {
        return Err(IntegrateError::BudgetExhausted {
            budget: config.budget,
            error: err,
            tolerance: config.tolerance,
        });
    }
    Ok(estimate)
}

#[allow(clippy::too_many_arguments)]
fn integrate_rec(
    integrand: &ChartIntegrand,
    point: &mut [f64],
    level: usize,
    dim: usize,
    edge: f64,
    tol: f64,
    budget: u64,
    evals: &mut u64,
) -> (f64, f64) {
    // inner integrals run at a tighter tolerance; their worst observed error
    // enters the estimate additively (interval length is at most one)
    let mut inner_err: f64 = 0.0;
    let mut f = |t: f64, evals: &mut u64| -> f64 {
        point[level] = t;
        if level + 1 == dim {
            *evals += 1;
            let mut scratch = Vec::with_capacity(dim);
            integrand.eval_unit_cube(point, &mut scratch)
        } else {
            let (v, e) = integrate_rec(
                integrand,
                &mut point.to_vec(),
                level + 1,
                dim,
                edge,
                tol / 8.0,
                budget,
                evals,
            );
            inner_err = inner_err.max(e);
            v
        }
    };
    let (v, e) = adaptive_simpson(&mut f, edge, 1.0 - edge, tol, 28, budget, evals);
    (v, e + inner_err)
}

/// Classic recursive adaptive Simpson with an evaluation budget.
fn adaptive_simpson(
    f: &mut impl FnMut(f64, &mut u64) -> f64,
    a: f64,
    b: f64,
    tol: f64,
    max_depth: u32,
    budget: u64,
    evals: &mut u64,
) -> (f64, f64) {
    let fa = f(a, evals);
    let fb = f(b, evals);
    let m = 0.5 * (a + b);
    let fm = f(m, evals);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_rec(
        f, a, b, fa, fb, fm, whole, tol, max_depth, budget, evals,
    )
}

#[allow(clippy::too_many_arguments)]
fn simpson_rec(
    f: &mut impl FnMut(f64, &mut u64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fb: f64,
    fm: f64,
    whole: f64,
    tol: f64,
    depth: u32,
    budget: u64,
    evals: &mut u64,
) -> (f64, f64) {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm, evals);
    let frm = f(rm, evals);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || *evals >= budget || delta.abs() <= 15.0 * tol {
        return (left + right + delta / 15.0, delta.abs() / 15.0);
    }
    let (lv, le) = simpson_rec(
        f,
        a,
        m,
        fa,
        fm,
        flm,
        left,
        tol / 2.0,
        depth - 1,
        budget,
        evals,
    );
    let (rv, re) = simpson_rec(
        f,
        m,
        b,
        fm,
        fb,
        frm,
        right,
        tol / 2.0,
        depth - 1,
        budget,
        evals,
    );
    (lv + rv, le + re)
}
