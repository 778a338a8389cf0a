//! Error-entropy estimators and the coefficient solvers.
//!
//! Three criteria identify the linear-model coefficients:
//!
//! * MSE — closed-form least squares via the normal equations;
//! * MEE — minimum quadratic Renyi entropy of the residuals, estimated
//!   with a Parzen window (Gaussian kernel of bandwidth `sqrt(2) * sigma`),
//!   solved by fixed-point iteration;
//! * QMEE — the same objective with one summation index compressed
//!   through the online quantizer, dropping the cost per iteration from
//!   O(N^2) to O(N M).
//!
//! MEE is exactly the QMEE special case with threshold zero and shares
//! the solver path.

use std::time::Instant;

use nalgebra::{Cholesky, DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::noise::{NoiseModel, SyntheticSpec};
use crate::quantizer::{quantize, Codebook};
use crate::timeseries::LaggedDesign;

/// Coefficient-identification criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Criterion {
    Mse,
    Mee,
    Qmee,
}

impl Criterion {
    /// Lowercase tag used in file names and CLI values.
    pub fn label(&self) -> &'static str {
        match self {
            Criterion::Mse => "mse",
            Criterion::Mee => "mee",
            Criterion::Qmee => "qmee",
        }
    }

    pub const ALL: [Criterion; 3] = [Criterion::Mse, Criterion::Mee, Criterion::Qmee];
}

impl std::fmt::Display for Criterion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Criterion::Mse => "MSE",
            Criterion::Mee => "MEE",
            Criterion::Qmee => "QMEE",
        })
    }
}

impl std::str::FromStr for Criterion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "mse" => Ok(Criterion::Mse),
            "mee" => Ok(Criterion::Mee),
            "qmee" => Ok(Criterion::Qmee),
            other => Err(Error::InvalidParams(format!("unknown criterion '{other}'"))),
        }
    }
}

/// Solver and estimator settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriterionConfig {
    /// Gaussian kernel bandwidth (the entropy estimator uses
    /// `sqrt(2) * sigma` internally).
    pub sigma: f64,
    /// Quantization threshold for QMEE; ignored by MSE, forced to 0 by MEE.
    pub epsilon: f64,
    /// Hard cap on fixed-point iterations.
    pub max_iters: usize,
    /// Stop when the weight increment 2-norm drops below this; 0 runs all
    /// `max_iters` iterations.
    pub tol: f64,
    /// Relative ridge coefficient applied to the normal/fixed-point system
    /// only when the plain solve fails; the actual shift is
    /// `ridge * trace / d`.
    pub ridge: f64,
}

impl Default for CriterionConfig {
    fn default() -> Self {
        Self { sigma: 0.5, epsilon: 0.4, max_iters: 100, tol: 1e-8, ridge: 1e-10 }
    }
}

impl CriterionConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.sigma.is_finite() && self.sigma > 0.0) {
            return Err(Error::InvalidParams(format!("sigma must be > 0, got {}", self.sigma)));
        }
        if !(self.epsilon.is_finite() && self.epsilon >= 0.0) {
            return Err(Error::InvalidParams(format!("epsilon must be >= 0, got {}", self.epsilon)));
        }
        if self.max_iters < 1 {
            return Err(Error::InvalidParams("max_iters must be >= 1".into()));
        }
        if !(self.tol.is_finite() && self.tol >= 0.0) {
            return Err(Error::InvalidParams(format!("tol must be >= 0, got {}", self.tol)));
        }
        if !(self.ridge.is_finite() && self.ridge >= 0.0) {
            return Err(Error::InvalidParams(format!("ridge must be >= 0, got {}", self.ridge)));
        }
        Ok(())
    }
}

/// Quadratic Renyi entropy estimate together with its information
/// potential; `h2 = -ln(ip)` by construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntropyEstimate {
    pub h2: f64,
    pub ip: f64,
    pub quantized: bool,
    /// Codebook size M when the quantized estimator produced this value.
    pub codebook_size: Option<usize>,
}

impl EntropyEstimate {
    fn from_ip(ip: f64, quantized: bool, codebook_size: Option<usize>) -> Self {
        Self { h2: -ip.ln(), ip, quantized, codebook_size }
    }
}

/// Fitted linear model: coefficients, training residuals and solver
/// diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearModel {
    pub coefficients: DVector<f64>,
    pub residuals: DVector<f64>,
    pub criterion: Criterion,
    pub iterations_used: usize,
    pub converged: bool,
    /// True when the ridge fallback had to be applied at least once.
    pub ridge_used: bool,
}

impl LinearModel {
    /// Residual second moment about zero (the models carry no intercept,
    /// so this is the variance entering the causality indexes).
    pub fn residual_variance(&self) -> f64 {
        self.residuals.iter().map(|e| e * e).sum::<f64>() / self.residuals.len() as f64
    }
}

/// Gaussian kernel `G_sigma(a, b)` with normalization
/// `1 / (sqrt(2 pi) sigma)`.
pub fn gaussian_kernel(a: f64, b: f64, sigma: f64) -> f64 {
    let d = a - b;
    (-(d * d) / (2.0 * sigma * sigma)).exp() / (SQRT_2PI * sigma)
}

const SQRT_2PI: f64 = 2.5066282746310002;

/// Parzen window density estimate at `e` from `samples` with bandwidth
/// `sigma`.
pub fn parzen_density(e: f64, samples: &[f64], sigma: f64) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::EmptySample);
    }
    Ok(samples.iter().map(|&s| gaussian_kernel(e, s, sigma)).sum::<f64>() / samples.len() as f64)
}

fn check_errors(errors: &[f64]) -> Result<()> {
    if errors.is_empty() {
        return Err(Error::EmptySample);
    }
    if !errors.iter().all(|e| e.is_finite()) {
        return Err(Error::NonFinite("entropy estimator input"));
    }
    Ok(())
}

/// Full quadratic information potential
/// `(1/N^2) sum_i sum_j G_{sqrt(2) sigma}(e_i, e_j)` and its entropy.
/// Cost O(N^2).
pub fn information_potential(errors: &[f64], sigma: f64) -> Result<EntropyEstimate> {
    check_errors(errors)?;
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(Error::InvalidParams(format!("sigma must be > 0, got {sigma}")));
    }
    let n = errors.len();
    let q = 1.0 / (4.0 * sigma * sigma);
    // diagonal terms contribute exp(0) = 1 each; off-diagonal pairs are
    // symmetric
    let mut acc = n as f64;
    for i in 0..n {
        for j in (i + 1)..n {
            let d = errors[i] - errors[j];
            acc += 2.0 * (-q * d * d).exp();
        }
    }
    let peak = 1.0 / (SQRT_2PI * std::f64::consts::SQRT_2 * sigma);
    let ip = peak * acc / (n as f64 * n as f64);
    Ok(EntropyEstimate::from_ip(ip, false, None))
}

/// Quantized information potential
/// `(1/N^2) sum_i sum_m A_m G_{sqrt(2) sigma}(e_i, c_m)` with the codebook
/// built from `errors` at the configured threshold. Cost O(N M).
pub fn quantized_information_potential(
    errors: &[f64],
    config: &CriterionConfig,
) -> Result<(EntropyEstimate, Codebook)> {
    check_errors(errors)?;
    config.validate()?;
    let codebook = quantize(errors, config.epsilon)?;
    let estimate = quantized_ip_with_codebook(errors, &codebook, config.sigma);
    Ok((estimate, codebook))
}

/// Quantized information potential of `errors` against a fixed, externally
/// supplied codebook.
pub fn quantized_ip_with_codebook(
    errors: &[f64],
    codebook: &Codebook,
    sigma: f64,
) -> EntropyEstimate {
    let n = errors.len();
    let sums = KernelSums::compute(errors, codebook, sigma);
    let peak = 1.0 / (SQRT_2PI * std::f64::consts::SQRT_2 * sigma);
    let ip = peak * sums.lambda.iter().sum::<f64>() / (n as f64 * n as f64);
    EntropyEstimate::from_ip(ip, true, Some(codebook.len()))
}

/// Per-sample kernel aggregates against a codebook:
/// `lambda_i = sum_m A_m exp(-(e_i - c_m)^2 / (4 sigma^2))` and
/// `weighted_cw_i = sum_m A_m exp(...) c_m` (both without the Gaussian
/// normalization constant, which cancels wherever ratios or linear systems
/// are formed and is reapplied where it does not).
struct KernelSums {
    lambda: Vec<f64>,
    weighted_cw: Vec<f64>,
}

// Terms below exp(-40) of the per-sample maximum are dropped: they are
// absorbed by f64 accumulation (2^-53 ~ 1e-16 relative) long before the
// 1e-12 tolerances this crate asserts anywhere.
const EXP_WINDOW: f64 = 40.0;

impl KernelSums {
    fn compute(errors: &[f64], codebook: &Codebook, sigma: f64) -> Self {
        let m = codebook.len();
        let mut order: Vec<u32> = (0..m as u32).collect();
        let cw = codebook.codewords();
        let counts = codebook.counts();
        order.sort_unstable_by(|&a, &b| cw[a as usize].total_cmp(&cw[b as usize]));
        let sorted_cw: Vec<f64> = order.iter().map(|&i| cw[i as usize]).collect();
        let sorted_counts: Vec<f64> = order.iter().map(|&i| counts[i as usize] as f64).collect();

        let q = 1.0 / (4.0 * sigma * sigma);
        let window_sq = EXP_WINDOW / q;
        let mut lambda = Vec::with_capacity(errors.len());
        let mut weighted_cw = Vec::with_capacity(errors.len());
        for &e in errors {
            // nearest codeword fixes the dominant magnitude; everything
            // farther than sqrt(d0^2 + window^2) is negligible against it
            let at = sorted_cw.partition_point(|&c| c < e);
            let mut d0_sq = f64::INFINITY;
            if at < m {
                let d = sorted_cw[at] - e;
                d0_sq = d * d;
            }
            if at > 0 {
                let d = sorted_cw[at - 1] - e;
                d0_sq = d0_sq.min(d * d);
            }
            let reach = (d0_sq + window_sq).sqrt();
            let lo = sorted_cw.partition_point(|&c| c < e - reach);
            let hi = sorted_cw.partition_point(|&c| c <= e + reach);
            let mut lam = 0.0;
            let mut wcw = 0.0;
            for k in lo..hi {
                let d = e - sorted_cw[k];
                let g = sorted_counts[k] * (-q * d * d).exp();
                lam += g;
                wcw += g * sorted_cw[k];
            }
            lambda.push(lam);
            weighted_cw.push(wcw);
        }
        Self { lambda, weighted_cw }
    }
}

/// Gradient of the quantized information potential with respect to the
/// coefficients, with the codebook rebuilt from the residuals at `w`:
/// `tau * sum_i sum_m A_m G(e_i, c_m) (e_i - c_m) x_i`,
/// `tau = 1 / (N^2 (sqrt(2) sigma)^2)`.
pub fn qip_gradient(
    design: &LaggedDesign,
    w: &DVector<f64>,
    config: &CriterionConfig,
) -> Result<DVector<f64>> {
    config.validate()?;
    let e = design.residuals(w);
    let codebook = quantize(e.as_slice(), config.epsilon)?;
    Ok(qip_gradient_with_codebook(design, w, &codebook, config.sigma))
}

/// Same gradient against a fixed codebook (the codebook is treated as a
/// constant, matching the frozen-codebook objective).
pub fn qip_gradient_with_codebook(
    design: &LaggedDesign,
    w: &DVector<f64>,
    codebook: &Codebook,
    sigma: f64,
) -> DVector<f64> {
    let e = design.residuals(w);
    let sums = KernelSums::compute(e.as_slice(), codebook, sigma);
    let n = design.rows();
    let d = design.dim();
    let x = design.regressors().as_slice(); // column-major
    let peak = 1.0 / (SQRT_2PI * std::f64::consts::SQRT_2 * sigma);
    let tau = 1.0 / (n as f64 * n as f64 * 2.0 * sigma * sigma);
    let mut grad = DVector::zeros(d);
    for a in 0..d {
        let col = &x[a * n..(a + 1) * n];
        let mut s = 0.0;
        for i in 0..n {
            // sum_m A_m exp(.) (e_i - c_m) = e_i lambda_i - weighted_cw_i
            s += (e[i] * sums.lambda[i] - sums.weighted_cw[i]) * col[i];
        }
        grad[a] = tau * peak * s;
    }
    grad
}

/// Least-squares solution of the design via the normal equations; the
/// ridge shift is applied only if the plain Cholesky solve fails.
pub fn solve_mse(design: &LaggedDesign, ridge: f64) -> Result<LinearModel> {
    let x = design.regressors();
    let n = design.rows();
    let ones = vec![1.0; n];
    let y = design.targets().as_slice();
    let (v, u) = accumulate_system(x, &ones, y);
    let (w, ridge_used) = solve_spd(v, &u, ridge)?;
    let residuals = design.residuals(&w);
    Ok(LinearModel {
        coefficients: w,
        residuals,
        criterion: Criterion::Mse,
        iterations_used: 0,
        converged: true,
        ridge_used,
    })
}

/// Fixed-point identification under MEE or QMEE: iterate `w = V^-1 U`
/// where `U = sum_i sum_m A_m G(e_i, c_m)(y_i - c_m) x_i` and
/// `V = sum_i sum_m A_m G(e_i, c_m) x_i x_i^T`, rebuilding the codebook
/// from the current residuals every iteration. Stops after `max_iters`
/// iterations or when the weight increment drops below `tol`.
///
/// With `w_init` given the iteration runs from exactly that point. By
/// default two runs are made — one from the least-squares solution, one
/// from the zero vector — and the solution with the lower final quantized
/// error entropy wins (ties go to the least-squares run). Heavy-tailed
/// data can wreck the least-squares initializer badly enough that its
/// residuals land beyond kernel reach of each other, a region where the
/// iteration has (almost) no usable gradient and every coefficient vector
/// is (near-)stationary; the zero start keeps the bulk of the data inside
/// kernel reach and escapes this.
pub fn solve_fixed_point(
    design: &LaggedDesign,
    config: &CriterionConfig,
    criterion: Criterion,
    w_init: Option<DVector<f64>>,
) -> Result<LinearModel> {
    config.validate()?;
    let epsilon = match criterion {
        Criterion::Mee => 0.0,
        Criterion::Qmee => config.epsilon,
        Criterion::Mse => {
            return Err(Error::InvalidParams(
                "fixed-point solver handles MEE/QMEE; use solve_mse for MSE".into(),
            ))
        }
    };
    let d = design.dim();
    if let Some(w0) = w_init {
        if w0.len() != d {
            return Err(Error::LengthMismatch { left: w0.len(), right: d });
        }
        return fixed_point_leg(design, config, criterion, epsilon, w0);
    }

    let ls_leg = solve_mse(design, config.ridge)
        .and_then(|m| fixed_point_leg(design, config, criterion, epsilon, m.coefficients));
    let zero_leg = fixed_point_leg(design, config, criterion, epsilon, DVector::zeros(d));
    match (ls_leg, zero_leg) {
        (Ok(a), Ok(b)) => {
            let ecfg = CriterionConfig { epsilon, ..*config };
            let h = |m: &LinearModel| {
                quantized_information_potential(m.residuals.as_slice(), &ecfg)
                    .map(|(est, _)| est.h2)
                    .unwrap_or(f64::INFINITY)
            };
            if h(&b).total_cmp(&h(&a)) == std::cmp::Ordering::Less {
                Ok(b)
            } else {
                Ok(a)
            }
        }
        (Ok(a), Err(_)) => Ok(a),
        (Err(_), Ok(b)) => Ok(b),
        (Err(e), Err(_)) => Err(e),
    }
}

fn fixed_point_leg(
    design: &LaggedDesign,
    config: &CriterionConfig,
    criterion: Criterion,
    epsilon: f64,
    mut w: DVector<f64>,
) -> Result<LinearModel> {
    let x = design.regressors();
    let y = design.targets();
    let n = design.rows();
    let mut iterations_used = 0;
    let mut converged = false;
    let mut ridge_used = false;
    let mut uc = vec![0.0; n];
    for k in 1..=config.max_iters {
        let e = design.residuals(&w);
        let codebook = quantize(e.as_slice(), epsilon)?;
        let sums = KernelSums::compute(e.as_slice(), &codebook, config.sigma);
        for i in 0..n {
            uc[i] = sums.lambda[i] * y[i] - sums.weighted_cw[i];
        }
        let (v, u) = accumulate_system(x, &sums.lambda, &uc);
        let (w_next, used_ridge) = solve_spd(v, &u, config.ridge)?;
        ridge_used |= used_ridge;
        if !w_next.iter().all(|v| v.is_finite()) {
            return Err(Error::Diverged { iteration: k });
        }
        let delta = (&w_next - &w).norm();
        w = w_next;
        iterations_used = k;
        if delta < config.tol {
            converged = true;
            break;
        }
    }
    let residuals = design.residuals(&w);
    Ok(LinearModel {
        coefficients: w,
        residuals,
        criterion,
        iterations_used,
        converged,
        ridge_used,
    })
}

/// Fits the design under the given criterion.
pub fn fit(design: &LaggedDesign, criterion: Criterion, config: &CriterionConfig) -> Result<LinearModel> {
    match criterion {
        Criterion::Mse => solve_mse(design, config.ridge),
        Criterion::Mee | Criterion::Qmee => solve_fixed_point(design, config, criterion, None),
    }
}

// V = sum_i vw_i x_i x_i^T (symmetric), U = sum_i uc_i x_i. Column-pair
// accumulation keeps the inner loops on contiguous column slices.
fn accumulate_system(x: &DMatrix<f64>, vw: &[f64], uc: &[f64]) -> (DMatrix<f64>, DVector<f64>) {
    let (n, d) = x.shape();
    let data = x.as_slice();
    let mut v = DMatrix::zeros(d, d);
    let mut u = DVector::zeros(d);
    for a in 0..d {
        let ca = &data[a * n..(a + 1) * n];
        let mut s = 0.0;
        for i in 0..n {
            s += uc[i] * ca[i];
        }
        u[a] = s;
        for b in a..d {
            let cb = &data[b * n..(b + 1) * n];
            let mut s = 0.0;
            for i in 0..n {
                s += vw[i] * ca[i] * cb[i];
            }
            v[(a, b)] = s;
            v[(b, a)] = s;
        }
    }
    (v, u)
}

// Baseline pivot ratio below which a factorization counts as numerically
// singular (condition number beyond ~1e14).
const PIVOT_RATIO_FLOOR: f64 = 1e-7;

// Cholesky can "succeed" on an exactly singular Gram when rounding nudges
// the zero pivot positive, so the pivot ratio is checked explicitly.
fn try_spd_solve(v: &DMatrix<f64>, u: &DVector<f64>) -> Option<DVector<f64>> {
    let ch = Cholesky::new(v.clone())?;
    let l = ch.l_dirty();
    let mut dmin = f64::INFINITY;
    let mut dmax = 0.0_f64;
    for i in 0..v.nrows() {
        let p = l[(i, i)];
        dmin = dmin.min(p);
        dmax = dmax.max(p);
    }
    if !(dmin > dmax * PIVOT_RATIO_FLOOR) {
        return None;
    }
    Some(ch.solve(u))
}

// Cholesky solve with a ridge fallback: on failure add
// `ridge * trace / d` to the diagonal, escalating once by 1e6 before
// giving up.
fn solve_spd(v: DMatrix<f64>, u: &DVector<f64>, ridge: f64) -> Result<(DVector<f64>, bool)> {
    if let Some(w) = try_spd_solve(&v, u) {
        return Ok((w, false));
    }
    if ridge <= 0.0 {
        return Err(Error::SingularDesign);
    }
    let d = v.nrows();
    let trace: f64 = v.diagonal().iter().sum();
    let base = if trace > 0.0 { ridge * trace / d as f64 } else { ridge };
    for shift in [base, base * 1e6] {
        let mut ridged = v.clone();
        for i in 0..d {
            ridged[(i, i)] += shift;
        }
        if let Some(w) = try_spd_solve(&ridged, u) {
            return Ok((w, true));
        }
    }
    Err(Error::SingularDesign)
}

/// One timing measurement of [`benchmark_solver`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TimingRow {
    pub criterion: Criterion,
    pub n: usize,
    pub seconds: Vec<f64>,
    pub mean_seconds: f64,
}

/// Wall-clock solve time on synthetic regression data across an ascending
/// sample-size grid, averaged over `repeats` solves per size. Runs
/// strictly serially; parallel callers would contaminate the timings.
pub fn benchmark_solver(
    criterion: Criterion,
    n_grid: &[usize],
    config: &CriterionConfig,
    repeats: usize,
    seed: u64,
) -> Result<Vec<TimingRow>> {
    if n_grid.is_empty() || n_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParams("n_grid must be non-empty and ascending".into()));
    }
    if repeats < 1 {
        return Err(Error::InvalidParams("repeats must be >= 1".into()));
    }
    let mut rows = Vec::with_capacity(n_grid.len());
    for (gi, &n) in n_grid.iter().enumerate() {
        let spec = SyntheticSpec::regression([2.0, 1.0], NoiseModel::case1(), n, seed + gi as u64);
        let (inputs, targets) = crate::noise::generate_regression(&spec)?;
        let design = LaggedDesign::from_parts(inputs, targets)?;
        fit(&design, criterion, config)?; // warm-up
        let mut seconds = Vec::with_capacity(repeats);
        for _ in 0..repeats {
            let start = Instant::now();
            fit(&design, criterion, config)?;
            seconds.push(start.elapsed().as_secs_f64());
        }
        let mean_seconds = seconds.iter().sum::<f64>() / repeats as f64;
        rows.push(TimingRow { criterion, n, seconds, mean_seconds });
    }
    Ok(rows)
}
