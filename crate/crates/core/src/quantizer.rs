//! Online scalar quantization of error samples.
//!
//! A single pass in input order compresses `N` error values into `M`
//! codewords with multiplicities: the first sample opens the codebook,
//! every later sample merges into the nearest codeword when its distance
//! is at most the threshold, otherwise it is appended as a new codeword.
//! Codewords never move, so every quantized value stays an element of the
//! codebook, and each input sits within the threshold of its codeword.

use crate::error::{Error, Result};

/// Codebook produced by [`quantize`]: codewords in order of first
/// appearance, their multiplicities, the threshold used, and the
/// per-sample codeword assignment.
#[derive(Debug, Clone, PartialEq)]
pub struct Codebook {
    codewords: Vec<f64>,
    counts: Vec<usize>,
    threshold: f64,
    assignments: Vec<u32>,
}

impl Codebook {
    pub fn codewords(&self) -> &[f64] {
        &self.codewords
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    /// Index of the codeword each input sample was merged into.
    pub fn assignments(&self) -> &[u32] {
        &self.assignments
    }

    /// Number of codewords M.
    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    /// Total input count N (= sum of multiplicities).
    pub fn input_len(&self) -> usize {
        self.assignments.len()
    }
}

/// Compresses `errors` into a [`Codebook`] with threshold `epsilon`.
///
/// Ties between equidistant codewords resolve to the lower index. With
/// `epsilon = 0` the codewords are exactly the distinct input values in
/// order of first appearance.
pub fn quantize(errors: &[f64], epsilon: f64) -> Result<Codebook> {
    if !errors.iter().all(|e| e.is_finite()) {
        return Err(Error::NonFinite("quantizer input"));
    }
    if !epsilon.is_finite() || epsilon < 0.0 {
        return Err(Error::InvalidParams(format!(
            "quantization threshold must be finite and >= 0, got {epsilon}"
        )));
    }
    if epsilon == 0.0 {
        return Ok(quantize_exact(errors));
    }

    let mut codewords: Vec<f64> = Vec::new();
    let mut counts: Vec<usize> = Vec::new();
    let mut assignments: Vec<u32> = Vec::with_capacity(errors.len());
    for &e in errors {
        let mut best = usize::MAX;
        let mut best_dist = f64::INFINITY;
        for (m, &c) in codewords.iter().enumerate() {
            let d = (e - c).abs();
            if d < best_dist {
                best_dist = d;
                best = m;
            }
        }
        if best != usize::MAX && best_dist <= epsilon {
            counts[best] += 1;
            assignments.push(best as u32);
        } else {
            codewords.push(e);
            counts.push(1);
            assignments.push((codewords.len() - 1) as u32);
        }
    }
    Ok(Codebook { codewords, counts, threshold: epsilon, assignments })
}

// Zero threshold merges exact duplicates only; a hash on the bit pattern
// keeps the pass O(N). -0.0 is folded into +0.0 so value equality and bit
// equality coincide.
fn quantize_exact(errors: &[f64]) -> Codebook {
    use std::collections::HashMap;
    let mut seen: HashMap<u64, u32> = HashMap::with_capacity(errors.len());
    let mut codewords: Vec<f64> = Vec::with_capacity(errors.len());
    let mut counts: Vec<usize> = Vec::with_capacity(errors.len());
    let mut assignments: Vec<u32> = Vec::with_capacity(errors.len());
    for &e in errors {
        let v = if e == 0.0 { 0.0 } else { e };
        let key = v.to_bits();
        let idx = *seen.entry(key).or_insert_with(|| {
            codewords.push(v);
            counts.push(0);
            (codewords.len() - 1) as u32
        });
        counts[idx as usize] += 1;
        assignments.push(idx);
    }
    Codebook { codewords, counts, threshold: 0.0, assignments }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn online_pass_hand_trace() {
        // 0.0 opens the codebook, 0.1 merges (|0.1| <= 0.2), 0.5 appends.
        let cb = quantize(&[0.0, 0.1, 0.5], 0.2).unwrap();
        assert_eq!(cb.codewords(), &[0.0, 0.5]);
        assert_eq!(cb.counts(), &[2, 1]);
        assert_eq!(cb.assignments(), &[0, 0, 1]);
    }

    #[test]
    fn zero_threshold_keeps_distinct_values() {
        let cb = quantize(&[3.0, 1.0, 3.0, 2.0, 1.0], 0.0).unwrap();
        assert_eq!(cb.codewords(), &[3.0, 1.0, 2.0]);
        assert_eq!(cb.counts(), &[2, 2, 1]);
        for (i, &a) in cb.assignments().iter().enumerate() {
            assert_eq!(cb.codewords()[a as usize], [3.0, 1.0, 3.0, 2.0, 1.0][i]);
        }
    }

    #[test]
    fn constant_input_single_codeword() {
        for eps in [0.0, 0.3, 10.0] {
            let cb = quantize(&[3.7; 17], eps).unwrap();
            assert_eq!(cb.len(), 1);
            assert_eq!(cb.counts(), &[17]);
        }
    }

    #[test]
    fn negative_zero_merges_with_zero() {
        let cb = quantize(&[0.0, -0.0], 0.0).unwrap();
        assert_eq!(cb.len(), 1);
        assert_eq!(cb.counts(), &[2]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(quantize(&[1.0, f64::NAN], 0.1), Err(Error::NonFinite(_))));
        assert!(matches!(quantize(&[1.0], -0.1), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn equidistant_tie_goes_to_lower_index() {
        // 1.0 is exactly 1.0 away from both 0.0 and 2.0
        let cb = quantize(&[0.0, 2.0, 1.0], 1.0).unwrap();
        assert_eq!(cb.codewords(), &[0.0, 2.0]);
        assert_eq!(cb.counts(), &[2, 1]);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            // Coverage and count conservation on random inputs.
            #[test]
            fn coverage_and_conservation(
                errors in proptest::collection::vec(-10.0f64..10.0, 1..200),
                eps in 0.0f64..2.0,
            ) {
                let cb = quantize(&errors, eps).unwrap();
                prop_assert_eq!(cb.counts().iter().sum::<usize>(), errors.len());
                for (i, &a) in cb.assignments().iter().enumerate() {
                    prop_assert!((errors[i] - cb.codewords()[a as usize]).abs() <= eps);
                }
            }

            // Codebook size must not grow as the threshold widens.
            #[test]
            fn monotone_compression(
                errors in proptest::collection::vec(-10.0f64..10.0, 1..120),
            ) {
                let grid = [0.0, 0.05, 0.1, 0.2, 0.4, 0.8, 1.6, 3.2];
                let sizes: Vec<usize> = grid
                    .iter()
                    .map(|&e| quantize(&errors, e).unwrap().len())
                    .collect();
                for w in sizes.windows(2) {
                    prop_assert!(w[1] <= w[0]);
                }
            }
        }
    }
}
