//! Noise samplers and synthetic data generators.
//!
//! Three noise families drive the benchmarks: two Gaussian mixtures
//! (symmetric and asymmetric) and the Levy alpha-stable family sampled
//! with the Chambers–Mallows–Stuck transform. Generators for the
//! two-weight regression system and the unidirectionally coupled signal
//! pair are seeded and fully deterministic: a fixed `(params, n, seed)`
//! always reproduces the same draws bit for bit.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::timeseries::TimeSeries;

/// One Gaussian mixture component.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixtureComponent {
    pub weight: f64,
    pub mean: f64,
    pub std: f64,
}

/// Weighted Gaussian mixture; weights must sum to one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaussianMixtureParams {
    components: Vec<MixtureComponent>,
}

impl GaussianMixtureParams {
    pub fn new(components: Vec<MixtureComponent>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidParams("mixture needs at least one component".into()));
        }
        let mut weight_sum = 0.0;
        for c in &components {
            if !(c.weight.is_finite() && c.mean.is_finite() && c.std.is_finite()) {
                return Err(Error::NonFinite("mixture parameter"));
            }
            if c.weight < 0.0 {
                return Err(Error::InvalidParams(format!("negative weight {}", c.weight)));
            }
            if c.std <= 0.0 {
                return Err(Error::InvalidParams(format!("component std must be > 0, got {}", c.std)));
            }
            weight_sum += c.weight;
        }
        if (weight_sum - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParams(format!("weights sum to {weight_sum}, expected 1")));
        }
        Ok(Self { components })
    }

    pub fn components(&self) -> &[MixtureComponent] {
        &self.components
    }

    /// Symmetric two-mode mixture: 0.5 N(-4,1) + 0.5 N(4,1).
    pub fn case1() -> Self {
        Self::new(vec![
            MixtureComponent { weight: 0.5, mean: -4.0, std: 1.0 },
            MixtureComponent { weight: 0.5, mean: 4.0, std: 1.0 },
        ])
        .expect("valid preset")
    }

    /// Asymmetric mixture: 0.6 N(3,1) + 0.4 N(-5,1).
    pub fn case2() -> Self {
        Self::new(vec![
            MixtureComponent { weight: 0.6, mean: 3.0, std: 1.0 },
            MixtureComponent { weight: 0.4, mean: -5.0, std: 1.0 },
        ])
        .expect("valid preset")
    }
}

/// Levy alpha-stable parameters in the 1-parameterization
/// S(alpha, beta, gamma, delta; 1): the location shift is applied outside
/// the stable core, `x = gamma * z + delta`. The distinction from the
/// 0-parameterization vanishes for beta = 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StableParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
}

impl StableParams {
    pub fn new(alpha: f64, beta: f64, gamma: f64, delta: f64) -> Result<Self> {
        if !(alpha.is_finite() && beta.is_finite() && gamma.is_finite() && delta.is_finite()) {
            return Err(Error::NonFinite("stable parameter"));
        }
        if !(alpha > 0.0 && alpha <= 2.0) {
            return Err(Error::InvalidParams(format!("alpha must be in (0, 2], got {alpha}")));
        }
        if !(-1.0..=1.0).contains(&beta) {
            return Err(Error::InvalidParams(format!("beta must be in [-1, 1], got {beta}")));
        }
        if gamma <= 0.0 {
            return Err(Error::InvalidParams(format!("gamma must be > 0, got {gamma}")));
        }
        Ok(Self { alpha, beta, gamma, delta })
    }

    /// Impulsive-noise preset [1.3, 0, 0.4, 0].
    pub fn case3() -> Self {
        Self::new(1.3, 0.0, 0.4, 0.0).expect("valid preset")
    }

    /// Same scale/location with a different characteristic exponent.
    pub fn with_alpha(self, alpha: f64) -> Result<Self> {
        Self::new(alpha, self.beta, self.gamma, self.delta)
    }
}

/// Noise attached to a synthetic system.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum NoiseModel {
    GaussianMixture(GaussianMixtureParams),
    AlphaStable(StableParams),
    /// Exactly zero noise; used for identifiability checks.
    Zero,
}

impl NoiseModel {
    pub fn case1() -> Self {
        NoiseModel::GaussianMixture(GaussianMixtureParams::case1())
    }

    pub fn case2() -> Self {
        NoiseModel::GaussianMixture(GaussianMixtureParams::case2())
    }

    pub fn case3() -> Self {
        NoiseModel::AlphaStable(StableParams::case3())
    }

    fn draw(&self, n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
        match self {
            NoiseModel::GaussianMixture(p) => draw_mixture(p, n, rng),
            NoiseModel::AlphaStable(p) => draw_stable(p, n, rng),
            NoiseModel::Zero => vec![0.0; n],
        }
    }
}

/// What the synthetic generator should produce.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum SyntheticKind {
    /// Two-weight linear system `y_i = w* . x_i + noise_i` with inputs
    /// uniform over [-2,2] x [-2,2].
    Regression { true_weights: [f64; 2] },
    /// Coupled pair: `x_t` i.i.d. uniform on [-2,2],
    /// `y_t = x_{t-1} + noise_t` with the boot value `x_0 = 0`.
    CausalPair,
}

/// Fully specified synthetic dataset: what to generate, the noise to
/// inject, the sample count and the seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyntheticSpec {
    pub kind: SyntheticKind,
    pub noise: NoiseModel,
    pub n: usize,
    pub seed: u64,
}

impl SyntheticSpec {
    pub fn regression(true_weights: [f64; 2], noise: NoiseModel, n: usize, seed: u64) -> Self {
        Self { kind: SyntheticKind::Regression { true_weights }, noise, n, seed }
    }

    pub fn causal_pair(noise: NoiseModel, n: usize, seed: u64) -> Self {
        Self { kind: SyntheticKind::CausalPair, noise, n, seed }
    }
}

/// I.i.d. draws from a Gaussian mixture, deterministic for a fixed seed.
pub fn sample_gaussian_mixture(params: &GaussianMixtureParams, n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    draw_mixture(params, n, &mut rng)
}

/// I.i.d. alpha-stable draws via the Chambers–Mallows–Stuck transform,
/// deterministic for a fixed seed.
pub fn sample_alpha_stable(params: &StableParams, n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    draw_stable(params, n, &mut rng)
}

fn draw_mixture(params: &GaussianMixtureParams, n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    (0..n)
        .map(|_| {
            let u: f64 = rng.random();
            let mut acc = 0.0;
            let mut chosen = params.components[params.components.len() - 1];
            for c in &params.components {
                acc += c.weight;
                if u < acc {
                    chosen = *c;
                    break;
                }
            }
            let z: f64 = StandardNormal.sample(rng);
            chosen.mean + chosen.std * z
        })
        .collect()
}

fn draw_stable(params: &StableParams, n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let StableParams { alpha, beta, gamma, delta } = *params;
    let half_pi = std::f64::consts::FRAC_PI_2;
    (0..n)
        .map(|_| {
            let u: f64 = rng.random();
            let v = std::f64::consts::PI * (u - 0.5);
            let w: f64 = Exp1.sample(rng);
            let w = w.max(f64::MIN_POSITIVE);
            let z = if (alpha - 1.0).abs() < 1e-12 {
                let a = half_pi + beta * v;
                (2.0 / std::f64::consts::PI)
                    * (a * v.tan() - beta * (half_pi * w * v.cos() / a).ln())
            } else {
                let bt = beta * (half_pi * alpha).tan();
                let b0 = bt.atan() / alpha;
                let s0 = (1.0 + bt * bt).powf(1.0 / (2.0 * alpha));
                let phi = alpha * (v + b0);
                let ratio = (v - phi).cos() / w;
                let ratio = ratio.max(f64::MIN_POSITIVE);
                s0 * phi.sin() / v.cos().powf(1.0 / alpha) * ratio.powf((1.0 - alpha) / alpha)
            };
            gamma * z + delta
        })
        .collect()
}

/// Generates the regression system: inputs uniform over [-2,2] x [-2,2]
/// (drawn first, row by row), then the noise vector, then
/// `targets = inputs * w + noise`.
pub fn generate_regression(spec: &SyntheticSpec) -> Result<(DMatrix<f64>, DVector<f64>)> {
    let SyntheticKind::Regression { true_weights } = spec.kind else {
        return Err(Error::InvalidSpec("generate_regression needs a regression kind".into()));
    };
    if spec.n < 1 {
        return Err(Error::InvalidSpec("regression needs n >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.n;
    let mut inputs = DMatrix::zeros(n, 2);
    for i in 0..n {
        inputs[(i, 0)] = rng.random_range(-2.0..2.0);
        inputs[(i, 1)] = rng.random_range(-2.0..2.0);
    }
    let noise = spec.noise.draw(n, &mut rng);
    let targets = DVector::from_fn(n, |i, _| {
        inputs[(i, 0)] * true_weights[0] + inputs[(i, 1)] * true_weights[1] + noise[i]
    });
    Ok((inputs, targets))
}

/// Generates the coupled pair: the driver series first (n uniforms), then
/// the noise vector; `y_t = x_{t-1} + noise_t` with `x_0 = 0`.
pub fn generate_causal_pair(spec: &SyntheticSpec) -> Result<(TimeSeries, TimeSeries)> {
    if spec.kind != SyntheticKind::CausalPair {
        return Err(Error::InvalidSpec("generate_causal_pair needs a causal_pair kind".into()));
    }
    if spec.n < 2 {
        return Err(Error::InvalidSpec("causal pair needs n >= 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.n;
    let x: Vec<f64> = (0..n).map(|_| rng.random_range(-2.0..2.0)).collect();
    let psi = spec.noise.draw(n, &mut rng);
    let mut y = Vec::with_capacity(n);
    y.push(psi[0]); // x_0 = 0 boot value
    for t in 1..n {
        y.push(x[t - 1] + psi[t]);
    }
    Ok((TimeSeries::new("X", x)?, TimeSeries::new("Y", y)?))
}
