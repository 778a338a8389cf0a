//! Pairwise Granger causality analysis.
//!
//! For a channel pair (X, Y) four models are fitted under the configured
//! criterion: the restricted own-lag models AR(X), AR(Y) and the full
//! models VAR(X | X,Y), VAR(Y | Y,X). Directed indexes compare restricted
//! against full residuals: log variance ratios under MSE, quantized
//! error-entropy differences under MEE/QMEE. Embedding orders come from a
//! per-model BIC scan by default.
//!
//! The printed BIC trades `N log(H2Q(e))` against `i log(N)`, which is
//! undefined whenever the differential-entropy estimate is non-positive.
//! The default scoring therefore uses `N * H2Q(e) + i log(N)`; the
//! logarithmic form stays available as [`BicVariant::Literal`] and falls
//! back (with a warning) when it cannot be evaluated.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::criteria::{
    fit, quantized_information_potential, Criterion, CriterionConfig, EntropyEstimate, LinearModel,
};
use crate::error::{Error, Result};
use crate::timeseries::{build_ar_design, build_var_design, LaggedDesign, TimeSeries};

/// How embedding orders are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrderRule {
    /// Scan orders 1..=p_max and keep the BIC argmin.
    Bic,
    /// Use this order for every model.
    Fixed(usize),
}

/// BIC scoring form for the entropy criteria.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BicVariant {
    /// `N log(H2Q(e)) + i log(N)`; falls back per candidate when
    /// `H2Q(e) <= 0`.
    Literal,
    /// `N H2Q(e) + i log(N)` (default).
    PotentialBased,
}

/// Engine configuration: criterion, solver settings, and order selection.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GcaConfig {
    pub criterion: Criterion,
    pub criterion_config: CriterionConfig,
    pub p_max: usize,
    pub order_rule: OrderRule,
    pub bic_variant: BicVariant,
    /// Force one common order on all four models (chosen by the smallest
    /// summed BIC score) instead of selecting per model.
    pub common_order: bool,
}

impl Default for GcaConfig {
    fn default() -> Self {
        Self {
            criterion: Criterion::Qmee,
            criterion_config: CriterionConfig::default(),
            p_max: 10,
            order_rule: OrderRule::Bic,
            bic_variant: BicVariant::PotentialBased,
            common_order: false,
        }
    }
}

impl GcaConfig {
    pub fn validate(&self) -> Result<()> {
        self.criterion_config.validate()?;
        if self.p_max < 1 {
            return Err(Error::InvalidParams("p_max must be >= 1".into()));
        }
        if let OrderRule::Fixed(p) = self.order_rule {
            if p < 1 {
                return Err(Error::InvalidParams("fixed order must be >= 1".into()));
            }
        }
        Ok(())
    }

    /// Solver/estimator settings with the threshold the criterion actually
    /// uses (MEE pins it to zero).
    pub fn entropy_config(&self) -> CriterionConfig {
        let mut cc = self.criterion_config;
        if self.criterion == Criterion::Mee {
            cc.epsilon = 0.0;
        }
        cc
    }

    fn largest_order(&self) -> usize {
        match self.order_rule {
            OrderRule::Bic => self.p_max,
            OrderRule::Fixed(p) => p,
        }
    }
}

/// Residual diagnostics of one fitted model.
#[derive(Debug, Clone)]
pub struct ModelStats {
    pub order: usize,
    pub rows: usize,
    /// Residual second moment about zero.
    pub variance: f64,
    pub entropy: EntropyEstimate,
    pub iterations: usize,
    pub converged: bool,
    pub ridge_used: bool,
    pub residuals: Vec<f64>,
}

/// Selected embedding orders of the four models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelOrders {
    pub ar_x: usize,
    pub ar_y: usize,
    pub var_x: usize,
    pub var_y: usize,
}

/// Full outcome of a pair analysis.
#[derive(Debug, Clone)]
pub struct CausalityReport {
    pub criterion: Criterion,
    /// Directed index X -> Y (raw; small negatives signal estimator noise
    /// under the entropy criteria and are reported as-is).
    pub f_xy: f64,
    /// Directed index Y -> X (raw).
    pub f_yx: f64,
    pub f_xy_clamped: f64,
    pub f_yx_clamped: f64,
    /// Discrimination index `(f_xy - f_yx) / f_xy`; NaN when `f_xy = 0`.
    pub rho: f64,
    pub orders: ModelOrders,
    pub ar_x: ModelStats,
    pub ar_y: ModelStats,
    pub var_x: ModelStats,
    pub var_y: ModelStats,
    pub warnings: Vec<String>,
}

/// Outcome of a BIC order scan.
#[derive(Debug, Clone)]
pub struct OrderSelection {
    pub order: usize,
    /// Score per candidate order 1..=p_max.
    pub scores: Vec<f64>,
    /// True when the literal BIC variant was undefined for some candidate
    /// and the potential-based surrogate stood in.
    pub literal_fallback: bool,
}

struct OrderFit {
    order: usize,
    model: LinearModel,
    score: f64,
    fallback: bool,
}

fn bic_score(
    model: &LinearModel,
    order: usize,
    series_n: usize,
    config: &GcaConfig,
) -> Result<(f64, bool)> {
    let n = series_n as f64;
    let penalty = order as f64 * n.ln();
    match config.criterion {
        Criterion::Mse => Ok((n * model.residual_variance().ln() + penalty, false)),
        Criterion::Mee | Criterion::Qmee => {
            let cc = config.entropy_config();
            let (est, _) = quantized_information_potential(model.residuals.as_slice(), &cc)?;
            match config.bic_variant {
                BicVariant::Literal if est.h2 > 0.0 => Ok((n * est.h2.ln() + penalty, false)),
                BicVariant::Literal => Ok((n * est.h2 + penalty, true)),
                BicVariant::PotentialBased => Ok((n * est.h2 + penalty, false)),
            }
        }
    }
}

// Fits and scores every candidate order (a single one under Fixed).
fn fit_order_table(
    build: impl Fn(usize) -> Result<LaggedDesign>,
    series_n: usize,
    config: &GcaConfig,
) -> Result<Vec<OrderFit>> {
    let orders: Vec<usize> = match config.order_rule {
        OrderRule::Bic => (1..=config.p_max).collect(),
        OrderRule::Fixed(p) => vec![p],
    };
    let mut table = Vec::with_capacity(orders.len());
    for order in orders {
        let design = build(order)?;
        let model = fit(&design, config.criterion, &config.criterion_config)?;
        let (score, fallback) = bic_score(&model, order, series_n, config)?;
        table.push(OrderFit { order, model, score, fallback });
    }
    Ok(table)
}

fn argmin_score(table: &[OrderFit]) -> usize {
    let mut best = 0;
    for (i, row) in table.iter().enumerate().skip(1) {
        if row.score.total_cmp(&table[best].score) == std::cmp::Ordering::Less {
            best = i;
        }
    }
    best
}

fn selection_from(table: &[OrderFit], chosen: usize) -> OrderSelection {
    OrderSelection {
        order: table[chosen].order,
        scores: table.iter().map(|r| r.score).collect(),
        literal_fallback: table.iter().any(|r| r.fallback),
    }
}

/// BIC order selection for the own-lag model of `series`.
pub fn select_ar_order(series: &TimeSeries, config: &GcaConfig) -> Result<OrderSelection> {
    config.validate()?;
    let table = fit_order_table(|p| build_ar_design(series, p), series.len(), config)?;
    Ok(selection_from(&table, argmin_score(&table)))
}

/// BIC order selection for the full model of `target` driven by `driver`.
pub fn select_var_order(
    target: &TimeSeries,
    driver: &TimeSeries,
    config: &GcaConfig,
) -> Result<OrderSelection> {
    config.validate()?;
    let table =
        fit_order_table(|p| build_var_design(target, driver, p), target.len(), config)?;
    Ok(selection_from(&table, argmin_score(&table)))
}

fn model_stats(model: &LinearModel, order: usize, config: &GcaConfig) -> Result<ModelStats> {
    let cc = config.entropy_config();
    let (entropy, _) = quantized_information_potential(model.residuals.as_slice(), &cc)?;
    Ok(ModelStats {
        order,
        rows: model.residuals.len(),
        variance: model.residual_variance(),
        entropy,
        iterations: model.iterations_used,
        converged: model.converged,
        ridge_used: model.ridge_used,
        residuals: model.residuals.as_slice().to_vec(),
    })
}

/// Analyzes one channel pair and returns both directed indexes plus the
/// discrimination index.
pub fn analyze_pair(x: &TimeSeries, y: &TimeSeries, config: &GcaConfig) -> Result<CausalityReport> {
    config.validate()?;
    if x.len() != y.len() {
        return Err(Error::LengthMismatch { left: x.len(), right: y.len() });
    }
    let p = config.largest_order();
    if x.len() <= 3 * p {
        return Err(Error::OrderTooLarge { order: p, len: x.len() });
    }
    for s in [x, y] {
        if s.is_constant() {
            return Err(Error::DegenerateSeries { name: s.name().to_string() });
        }
    }
    let mut warnings = Vec::new();
    if x.samples() == y.samples() {
        warnings.push("channels carry identical samples; cross-lags duplicate own-lags".to_string());
    }

    let n = x.len();
    let ar_x_table = fit_order_table(|p| build_ar_design(x, p), n, config)?;
    let ar_y_table = fit_order_table(|p| build_ar_design(y, p), n, config)?;
    let var_x_table = fit_order_table(|p| build_var_design(x, y, p), n, config)?;
    let var_y_table = fit_order_table(|p| build_var_design(y, x, p), n, config)?;

    let tables = [&ar_x_table, &ar_y_table, &var_x_table, &var_y_table];
    let picks: [usize; 4] = if config.common_order {
        // smallest summed score across the four models
        let mut best = 0;
        for i in 1..ar_x_table.len() {
            let sum = |k: usize| tables.iter().map(|t| t[k].score).sum::<f64>();
            if sum(i).total_cmp(&sum(best)) == std::cmp::Ordering::Less {
                best = i;
            }
        }
        [best; 4]
    } else {
        [
            argmin_score(&ar_x_table),
            argmin_score(&ar_y_table),
            argmin_score(&var_x_table),
            argmin_score(&var_y_table),
        ]
    };
    for (t, &k) in tables.iter().zip(&picks) {
        if t[k].fallback {
            warnings.push("literal BIC undefined (H2Q <= 0); potential-based score used".into());
            break;
        }
    }

    let ar_x = model_stats(&ar_x_table[picks[0]].model, ar_x_table[picks[0]].order, config)?;
    let ar_y = model_stats(&ar_y_table[picks[1]].model, ar_y_table[picks[1]].order, config)?;
    let var_x = model_stats(&var_x_table[picks[2]].model, var_x_table[picks[2]].order, config)?;
    let var_y = model_stats(&var_y_table[picks[3]].model, var_y_table[picks[3]].order, config)?;

    let (f_xy, f_yx) = match config.criterion {
        // log of restricted-to-full residual variance
        Criterion::Mse => (
            (ar_y.variance / var_y.variance).ln(),
            (ar_x.variance / var_x.variance).ln(),
        ),
        // restricted-minus-full quantized error entropy
        Criterion::Mee | Criterion::Qmee => (
            ar_y.entropy.h2 - var_y.entropy.h2,
            ar_x.entropy.h2 - var_x.entropy.h2,
        ),
    };
    let rho = if f_xy != 0.0 { (f_xy - f_yx) / f_xy } else { f64::NAN };

    Ok(CausalityReport {
        criterion: config.criterion,
        f_xy,
        f_yx,
        f_xy_clamped: f_xy.max(0.0),
        f_yx_clamped: f_yx.max(0.0),
        rho,
        orders: ModelOrders {
            ar_x: ar_x.order,
            ar_y: ar_y.order,
            var_x: var_x.order,
            var_y: var_y.order,
        },
        ar_x,
        ar_y,
        var_x,
        var_y,
        warnings,
    })
}

/// One unordered channel pair outcome inside [`ChannelAnalysis`]; the
/// report's `f_xy` points `row -> col`.
#[derive(Debug)]
pub struct PairResult {
    pub row: usize,
    pub col: usize,
    pub outcome: Result<CausalityReport>,
}

/// Pairwise analysis of a channel set.
#[derive(Debug)]
pub struct ChannelAnalysis {
    pub names: Vec<String>,
    pub pairs: Vec<PairResult>,
}

/// A single directed index extracted from a pair report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DirectedIndex {
    pub from: String,
    pub to: String,
    /// Raw directed causality index.
    pub f: f64,
    /// Embedding order of the full model predicting `to`.
    pub order: usize,
    pub warnings: Vec<String>,
}

impl ChannelAnalysis {
    /// Directed index matrix `F[from][to]`; `None` on the diagonal and for
    /// failed pairs.
    pub fn index_matrix(&self) -> Vec<Vec<Option<f64>>> {
        let k = self.names.len();
        let mut m = vec![vec![None; k]; k];
        for pair in &self.pairs {
            if let Ok(report) = &pair.outcome {
                m[pair.row][pair.col] = Some(report.f_xy);
                m[pair.col][pair.row] = Some(report.f_yx);
            }
        }
        m
    }

    /// Flat list of directed indexes (two per successful pair), ordered by
    /// (from, to).
    pub fn directed_indexes(&self) -> Vec<DirectedIndex> {
        let mut out = Vec::new();
        for pair in &self.pairs {
            if let Ok(r) = &pair.outcome {
                out.push(DirectedIndex {
                    from: self.names[pair.row].clone(),
                    to: self.names[pair.col].clone(),
                    f: r.f_xy,
                    order: r.orders.var_y,
                    warnings: r.warnings.clone(),
                });
                out.push(DirectedIndex {
                    from: self.names[pair.col].clone(),
                    to: self.names[pair.row].clone(),
                    f: r.f_yx,
                    order: r.orders.var_x,
                    warnings: r.warnings.clone(),
                });
            }
        }
        out.sort_by(|a, b| (&a.from, &a.to).cmp(&(&b.from, &b.to)));
        out
    }

    /// Errors of failed pairs as `(row, col, message)`.
    pub fn failures(&self) -> Vec<(usize, usize, String)> {
        self.pairs
            .iter()
            .filter_map(|p| p.outcome.as_ref().err().map(|e| (p.row, p.col, e.to_string())))
            .collect()
    }
}

/// Runs [`analyze_pair`] on every channel pair (pairs run concurrently)
/// and collects the directed index matrix. Per-pair failures are recorded,
/// not fatal.
pub fn analyze_channels(channels: &[TimeSeries], config: &GcaConfig) -> Result<ChannelAnalysis> {
    config.validate()?;
    if channels.len() < 2 {
        return Err(Error::InvalidParams(format!(
            "need at least 2 channels, got {}",
            channels.len()
        )));
    }
    let n0 = channels[0].len();
    for c in channels {
        if c.len() != n0 {
            return Err(Error::LengthMismatch { left: n0, right: c.len() });
        }
    }
    let mut index_pairs = Vec::new();
    for i in 0..channels.len() {
        for j in (i + 1)..channels.len() {
            index_pairs.push((i, j));
        }
    }
    let pairs: Vec<PairResult> = index_pairs
        .into_par_iter()
        .map(|(i, j)| PairResult {
            row: i,
            col: j,
            outcome: analyze_pair(&channels[i], &channels[j], config),
        })
        .collect();
    Ok(ChannelAnalysis { names: channels.iter().map(|c| c.name().to_string()).collect(), pairs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::noise::{generate_causal_pair, NoiseModel, SyntheticSpec};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn white_noise(name: &str, n: usize, seed: u64) -> TimeSeries {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        TimeSeries::new(name, (0..n).map(|_| rng.random_range(-1.0..1.0)).collect()).unwrap()
    }

    fn mse_config() -> GcaConfig {
        GcaConfig { criterion: Criterion::Mse, ..Default::default() }
    }

    #[test]
    fn ar1_data_selects_order_one() {
        // strong AR(1): x_t = 0.9 x_{t-1} + noise
        let mut hits = 0;
        for seed in 0..100 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut x = vec![0.0_f64];
            for _ in 1..400 {
                let prev = *x.last().unwrap();
                x.push(0.9 * prev + rng.random_range(-1.0..1.0));
            }
            let series = TimeSeries::new("x", x).unwrap();
            let sel = select_ar_order(&series, &mse_config()).unwrap();
            assert_eq!(sel.scores.len(), 10);
            // exhaustive oracle: recompute the classical score per order
            let n = series.len() as f64;
            let mut oracle_best = (0usize, f64::INFINITY);
            for p in 1..=10usize {
                let design = build_ar_design(&series, p).unwrap();
                let model = fit(&design, Criterion::Mse, &CriterionConfig::default()).unwrap();
                let score = n * model.residual_variance().ln() + p as f64 * n.ln();
                if score < oracle_best.1 {
                    oracle_best = (p, score);
                }
            }
            assert_eq!(sel.order, oracle_best.0, "seed {seed}");
            if sel.order == 1 {
                hits += 1;
            }
        }
        assert!(hits >= 90, "order 1 selected only {hits}/100 times");
    }

    #[test]
    fn white_noise_selects_small_order() {
        let mut small = 0;
        for seed in 0..10 {
            let s = white_noise("w", 400, 50 + seed);
            let sel = select_ar_order(&s, &mse_config()).unwrap();
            if sel.order <= 3 {
                small += 1;
            }
        }
        assert!(small >= 8, "small order selected only {small}/10 times");
    }

    #[test]
    fn potential_score_penalty_is_monotone() {
        // with residual entropy held fixed the score must grow in the order
        let n = 500.0_f64;
        let h = 1.3;
        let score = |i: f64| n * h + i * n.ln();
        for i in 1..10 {
            assert!(score(i as f64 + 1.0) > score(i as f64));
        }
    }

    #[test]
    fn coupled_pair_selects_var_order_one() {
        let mut hits = 0;
        for seed in 0..20 {
            let spec = SyntheticSpec::causal_pair(NoiseModel::case1(), 500, 900 + seed);
            let (x, y) = generate_causal_pair(&spec).unwrap();
            let sel = select_var_order(&y, &x, &mse_config()).unwrap();
            if sel.order == 1 {
                hits += 1;
            }
        }
        assert!(hits >= 14, "VAR order 1 chosen only {hits}/20 times");
    }

    #[test]
    fn independent_channels_have_tiny_indexes() {
        let x = white_noise("x", 2000, 1);
        let y = white_noise("y", 2000, 2);
        let report = analyze_pair(&x, &y, &mse_config()).unwrap();
        assert!(report.f_xy.abs() < 0.02, "f_xy = {}", report.f_xy);
        assert!(report.f_yx.abs() < 0.02, "f_yx = {}", report.f_yx);
    }

    #[test]
    fn label_symmetry_swaps_directions_exactly() {
        let spec = SyntheticSpec::causal_pair(NoiseModel::case1(), 400, 3);
        let (x, y) = generate_causal_pair(&spec).unwrap();
        for config in [mse_config(), GcaConfig::default()] {
            let ab = analyze_pair(&x, &y, &config).unwrap();
            let ba = analyze_pair(&y, &x, &config).unwrap();
            assert_eq!(ab.f_xy, ba.f_yx);
            assert_eq!(ab.f_yx, ba.f_xy);
            assert_eq!(ab.orders.ar_x, ba.orders.ar_y);
            assert_eq!(ab.orders.var_x, ba.orders.var_y);
        }
    }

    #[test]
    fn mee_report_equals_qmee_at_zero_threshold() {
        let spec = SyntheticSpec::causal_pair(NoiseModel::case1(), 400, 4);
        let (x, y) = generate_causal_pair(&spec).unwrap();
        let mee = GcaConfig { criterion: Criterion::Mee, ..Default::default() };
        let qmee0 = GcaConfig {
            criterion: Criterion::Qmee,
            criterion_config: CriterionConfig { epsilon: 0.0, ..Default::default() },
            ..Default::default()
        };
        let a = analyze_pair(&x, &y, &mee).unwrap();
        let b = analyze_pair(&x, &y, &qmee0).unwrap();
        assert_eq!(a.f_xy, b.f_xy);
        assert_eq!(a.f_yx, b.f_yx);
        assert_eq!(a.rho, b.rho);
        assert_eq!(a.orders, b.orders);
        assert_eq!(a.ar_y.entropy.ip, b.ar_y.entropy.ip);
    }

    #[test]
    fn entropy_index_identity() {
        // the two algebraic routes: entropy difference vs log potential ratio
        let spec = SyntheticSpec::causal_pair(NoiseModel::case2(), 500, 5);
        let (x, y) = generate_causal_pair(&spec).unwrap();
        let report = analyze_pair(&x, &y, &GcaConfig::default()).unwrap();
        let via_ratio = (report.var_y.entropy.ip / report.ar_y.entropy.ip).ln();
        assert!(
            (report.f_xy - via_ratio).abs() < 1e-12,
            "difference route {} vs ratio route {via_ratio}",
            report.f_xy
        );
    }

    #[test]
    fn mse_nested_indexes_non_negative() {
        // nested = equal orders; in-sample least squares can only improve
        let config = GcaConfig {
            criterion: Criterion::Mse,
            order_rule: OrderRule::Fixed(3),
            ..Default::default()
        };
        for seed in 0..50 {
            let x = white_noise("x", 150, 1000 + seed);
            let y = white_noise("y", 150, 2000 + seed);
            let r = analyze_pair(&x, &y, &config).unwrap();
            assert!(r.f_xy >= -1e-12, "seed {seed}: f_xy = {}", r.f_xy);
            assert!(r.f_yx >= -1e-12, "seed {seed}: f_yx = {}", r.f_yx);
        }
    }

    #[test]
    fn coupled_pair_detected_by_qmee() {
        let mut positive = 0;
        for seed in 0..10 {
            let spec = SyntheticSpec::causal_pair(NoiseModel::case1(), 500, 777 + seed);
            let (x, y) = generate_causal_pair(&spec).unwrap();
            let r = analyze_pair(&x, &y, &GcaConfig::default()).unwrap();
            if r.rho > 0.0 {
                positive += 1;
            }
            assert_eq!(r.rho, (r.f_xy - r.f_yx) / r.f_xy);
        }
        assert_eq!(positive, 10);
    }

    #[test]
    fn degenerate_channel_is_rejected() {
        let x = TimeSeries::new("flat", vec![1.0; 100]).unwrap();
        let y = white_noise("y", 100, 6);
        assert!(matches!(
            analyze_pair(&x, &y, &mse_config()),
            Err(Error::DegenerateSeries { .. })
        ));
    }

    #[test]
    fn identical_channels_warn_but_complete() {
        let x = white_noise("x", 300, 7);
        let copy = TimeSeries::new("copy", x.samples().to_vec()).unwrap();
        let r = analyze_pair(&x, &copy, &mse_config()).unwrap();
        assert!(!r.warnings.is_empty());
        assert!(r.var_y.ridge_used || r.var_x.ridge_used);
    }

    #[test]
    fn channel_matrix_is_consistent_with_pair_analysis() {
        let spec = SyntheticSpec::causal_pair(NoiseModel::case1(), 400, 8);
        let (x, y) = generate_causal_pair(&spec).unwrap();
        let config = mse_config();
        let analysis = analyze_channels(&[x.clone(), y.clone()], &config).unwrap();
        let direct = analyze_pair(&x, &y, &config).unwrap();
        let m = analysis.index_matrix();
        assert_eq!(m[0][1], Some(direct.f_xy));
        assert_eq!(m[1][0], Some(direct.f_yx));
        assert_eq!(m[0][0], None);
        assert_eq!(analysis.directed_indexes().len(), 2);
    }

    #[test]
    fn three_channels_give_six_directed_indexes() {
        let a = white_noise("a", 300, 9);
        let b = white_noise("b", 300, 10);
        let c = white_noise("c", 300, 11);
        let analysis = analyze_channels(&[a, b, c], &mse_config()).unwrap();
        assert_eq!(analysis.directed_indexes().len(), 6);
        assert!(analysis.failures().is_empty());
    }

    #[test]
    fn too_few_channels_rejected() {
        let a = white_noise("a", 300, 12);
        assert!(analyze_channels(&[a], &mse_config()).is_err());
    }
}
