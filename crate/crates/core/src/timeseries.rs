//! Time-series containers and lag-embedded regression designs.
//!
//! Causality analysis reduces every model to the same shape: a target
//! vector predicted from lagged copies of one or two signals. This module
//! owns that reduction. Both the autoregressive (own-lags only) and the
//! bivariate vector-autoregressive (own-lags then cross-lags) embeddings
//! drop the first `p` samples instead of zero-padding, so coefficient
//! estimates are unbiased by artificial boundary values.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// A named, uniformly sampled scalar signal.
///
/// Construction rejects NaN/Inf and series shorter than two samples;
/// the sample order is fixed afterwards.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    name: String,
    samples: Vec<f64>,
}

impl TimeSeries {
    pub fn new(name: impl Into<String>, samples: Vec<f64>) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::InvalidParams(format!(
                "time series needs at least 2 samples, got {}",
                samples.len()
            )));
        }
        if !samples.iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite("time series sample"));
        }
        Ok(Self { name: name.into(), samples })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction guarantees N >= 2
    }

    /// True when every sample equals the first one.
    pub fn is_constant(&self) -> bool {
        self.samples.iter().all(|&v| v == self.samples[0])
    }

    /// Copy of the series with its mean removed. Stands in for an
    /// intercept term, which the embedded models deliberately lack.
    pub fn centered(&self) -> TimeSeries {
        let mean = self.samples.iter().sum::<f64>() / self.samples.len() as f64;
        TimeSeries {
            name: self.name.clone(),
            samples: self.samples.iter().map(|v| v - mean).collect(),
        }
    }
}

/// Which lags each regressor column holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderSpec {
    /// `p` own-lags of a single series.
    Ar { p: usize },
    /// `p` own-lags of the target followed by `p` cross-lags of the driver.
    Var { p: usize },
    /// Regressors supplied directly (synthetic benchmark problems).
    External { dim: usize },
}

impl OrderSpec {
    /// Largest lag in the embedding (rows dropped at the front).
    pub fn max_lag(&self) -> usize {
        match *self {
            OrderSpec::Ar { p } | OrderSpec::Var { p } => p,
            OrderSpec::External { .. } => 0,
        }
    }

    /// Number of regressor columns.
    pub fn dim(&self) -> usize {
        match *self {
            OrderSpec::Ar { p } => p,
            OrderSpec::Var { p } => 2 * p,
            OrderSpec::External { dim } => dim,
        }
    }
}

/// A lag-embedded linear regression problem: `rows × d` regressor matrix
/// plus the aligned target vector.
#[derive(Debug, Clone)]
pub struct LaggedDesign {
    regressors: DMatrix<f64>,
    targets: DVector<f64>,
    order_spec: OrderSpec,
}

impl LaggedDesign {
    /// Wraps an externally built regression problem (no lag structure).
    pub fn from_parts(regressors: DMatrix<f64>, targets: DVector<f64>) -> Result<Self> {
        if regressors.nrows() != targets.len() {
            return Err(Error::LengthMismatch { left: regressors.nrows(), right: targets.len() });
        }
        if regressors.nrows() <= regressors.ncols() {
            return Err(Error::OrderTooLarge { order: regressors.ncols(), len: regressors.nrows() });
        }
        if !regressors.iter().chain(targets.iter()).all(|v| v.is_finite()) {
            return Err(Error::NonFinite("design entry"));
        }
        let dim = regressors.ncols();
        Ok(Self { regressors, targets, order_spec: OrderSpec::External { dim } })
    }

    pub fn regressors(&self) -> &DMatrix<f64> {
        &self.regressors
    }

    pub fn targets(&self) -> &DVector<f64> {
        &self.targets
    }

    pub fn order_spec(&self) -> OrderSpec {
        self.order_spec
    }

    pub fn rows(&self) -> usize {
        self.targets.len()
    }

    pub fn dim(&self) -> usize {
        self.regressors.ncols()
    }

    /// Residuals `targets - regressors * w`.
    pub fn residuals(&self, w: &DVector<f64>) -> DVector<f64> {
        self.targets.clone() - &self.regressors * w
    }
}

/// Builds the autoregressive design of order `p`: row for time `t`
/// (t = p+1..N, one-based) is `[x_{t-1}, ..., x_{t-p}]` with target `x_t`.
pub fn build_ar_design(series: &TimeSeries, p: usize) -> Result<LaggedDesign> {
    let n = series.len();
    check_order(p, n, p)?;
    let x = series.samples();
    let rows = n - p;
    let regressors = DMatrix::from_fn(rows, p, |r, j| x[r + p - 1 - j]);
    let targets = DVector::from_fn(rows, |r, _| x[r + p]);
    Ok(LaggedDesign { regressors, targets, order_spec: OrderSpec::Ar { p } })
}

/// Builds the bivariate VAR design of order `p` for `target` driven by
/// `driver`: row for time `t` is
/// `[target_{t-1..t-p}, driver_{t-1..t-p}]` with target value `target_t`.
pub fn build_var_design(target: &TimeSeries, driver: &TimeSeries, p: usize) -> Result<LaggedDesign> {
    if target.len() != driver.len() {
        return Err(Error::LengthMismatch { left: target.len(), right: driver.len() });
    }
    let n = target.len();
    // rows >= d keeps the design constructible; solvers that need strict
    // overdetermination check for themselves
    if p < 1 || n <= p || n - p < 2 * p {
        return Err(Error::OrderTooLarge { order: p, len: n });
    }
    let t = target.samples();
    let d = driver.samples();
    let rows = n - p;
    let regressors = DMatrix::from_fn(rows, 2 * p, |r, j| {
        if j < p {
            t[r + p - 1 - j]
        } else {
            d[r + p - 1 - (j - p)]
        }
    });
    let targets = DVector::from_fn(rows, |r, _| t[r + p]);
    Ok(LaggedDesign { regressors, targets, order_spec: OrderSpec::Var { p } })
}

// rows = n - p must strictly exceed the column count d.
fn check_order(p: usize, n: usize, d: usize) -> Result<()> {
    if p < 1 || n <= p || n - p <= d {
        return Err(Error::OrderTooLarge { order: p, len: n });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ts(samples: &[f64]) -> TimeSeries {
        TimeSeries::new("t", samples.to_vec()).unwrap()
    }

    #[test]
    fn rejects_short_and_non_finite() {
        assert!(matches!(TimeSeries::new("x", vec![1.0]), Err(Error::InvalidParams(_))));
        assert!(matches!(
            TimeSeries::new("x", vec![1.0, f64::NAN]),
            Err(Error::NonFinite(_))
        ));
        assert!(matches!(
            TimeSeries::new("x", vec![1.0, f64::INFINITY]),
            Err(Error::NonFinite(_))
        ));
    }

    #[test]
    fn ar_design_lag_one() {
        let d = build_ar_design(&ts(&[1.0, 2.0, 3.0, 4.0]), 1).unwrap();
        assert_eq!(d.regressors().as_slice(), &[1.0, 2.0, 3.0]);
        assert_eq!(d.targets().as_slice(), &[2.0, 3.0, 4.0]);
    }

    #[test]
    fn ar_design_lag_two() {
        let d = build_ar_design(&ts(&[1.0, 2.0, 3.0, 4.0, 5.0]), 2).unwrap();
        assert_eq!(d.rows(), 3);
        assert_eq!(d.dim(), 2);
        // rows are [x_{t-1}, x_{t-2}]
        assert_eq!(d.regressors().row(0).iter().copied().collect::<Vec<_>>(), vec![2.0, 1.0]);
        assert_eq!(d.regressors().row(1).iter().copied().collect::<Vec<_>>(), vec![3.0, 2.0]);
        assert_eq!(d.regressors().row(2).iter().copied().collect::<Vec<_>>(), vec![4.0, 3.0]);
        assert_eq!(d.targets().as_slice(), &[3.0, 4.0, 5.0]);
    }

    #[test]
    fn ar_design_counts() {
        // index-arithmetic oracle: rows = N - p, d = p
        let samples: Vec<f64> = (0..500).map(|i| (i as f64 * 0.7).sin()).collect();
        let d = build_ar_design(&ts(&samples), 10).unwrap();
        assert_eq!(d.rows(), 500 - 10);
        assert_eq!(d.dim(), 10);
    }

    #[test]
    fn var_design_lag_one() {
        let t = ts(&[1.0, 2.0, 3.0]);
        let dr = ts(&[4.0, 5.0, 6.0]);
        let d = build_var_design(&t, &dr, 1).unwrap();
        assert_eq!(d.regressors().row(0).iter().copied().collect::<Vec<_>>(), vec![1.0, 4.0]);
        assert_eq!(d.regressors().row(1).iter().copied().collect::<Vec<_>>(), vec![2.0, 5.0]);
        assert_eq!(d.targets().as_slice(), &[2.0, 3.0]);
    }

    #[test]
    fn var_design_identical_series_duplicates_columns() {
        let t = ts(&[1.0, 2.0, 4.0, 8.0, 3.0]);
        let d = build_var_design(&t, &t, 1).unwrap();
        assert_eq!(d.regressors().column(0), d.regressors().column(1));
    }

    #[test]
    fn var_design_counts() {
        let a: Vec<f64> = (0..500).map(|i| (i as f64 * 0.31).cos()).collect();
        let b: Vec<f64> = (0..500).map(|i| (i as f64 * 0.17).sin()).collect();
        let d = build_var_design(&ts(&a), &ts(&b), 10).unwrap();
        assert_eq!(d.rows(), 490);
        assert_eq!(d.dim(), 20);
    }

    #[test]
    fn order_errors() {
        let s = ts(&[1.0, 2.0, 3.0, 4.0]);
        assert!(matches!(build_ar_design(&s, 2), Err(Error::OrderTooLarge { .. })));
        assert!(matches!(build_ar_design(&s, 0), Err(Error::OrderTooLarge { .. })));
        let long = ts(&(0..10).map(|i| i as f64).collect::<Vec<_>>());
        assert!(matches!(
            build_var_design(&long, &s, 1),
            Err(Error::LengthMismatch { .. })
        ));
        // VAR needs rows >= 2p: N=6, p=2 gives rows=4 = d, N=5 gives rows=3 < 4
        let five = ts(&(0..5).map(|i| i as f64).collect::<Vec<_>>());
        assert!(matches!(
            build_var_design(&five, &five, 2),
            Err(Error::OrderTooLarge { .. })
        ));
        let six = ts(&(0..6).map(|i| i as f64).collect::<Vec<_>>());
        assert!(build_var_design(&six, &six, 2).is_ok());
    }

    #[test]
    fn centered_removes_mean() {
        let c = ts(&[1.0, 2.0, 3.0]).centered();
        assert_eq!(c.samples(), &[-1.0, 0.0, 1.0]);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            // Every design row must read back from the source series at the
            // implied indices.
            #[test]
            fn ar_reconstructable(
                samples in proptest::collection::vec(-100.0f64..100.0, 10..60),
                p in 1usize..4,
            ) {
                let n = samples.len();
                prop_assume!(n - p > p);
                let s = ts(&samples);
                let d = build_ar_design(&s, p).unwrap();
                for r in 0..d.rows() {
                    let t = r + p; // zero-based target index
                    prop_assert_eq!(d.targets()[r], samples[t]);
                    for j in 0..p {
                        prop_assert_eq!(d.regressors()[(r, j)], samples[t - 1 - j]);
                    }
                }
            }

            // The first p columns of a VAR design equal the AR design of the
            // target over the same rows.
            #[test]
            fn var_prefix_matches_ar(
                a in proptest::collection::vec(-100.0f64..100.0, 20..60),
                p in 1usize..4,
            ) {
                let n = a.len();
                prop_assume!(n - p > 2 * p);
                let b: Vec<f64> = a.iter().map(|v| v * 0.5 + 1.0).collect();
                let var = build_var_design(&ts(&a), &ts(&b), p).unwrap();
                let ar = build_ar_design(&ts(&a), p).unwrap();
                prop_assert_eq!(var.targets(), ar.targets());
                for r in 0..ar.rows() {
                    for j in 0..p {
                        prop_assert_eq!(var.regressors()[(r, j)], ar.regressors()[(r, j)]);
                    }
                }
            }
        }
    }
}
