//! Weighted balls-in-bins maximum load: Monte Carlo and exact enumeration,
//! the majorization order on weight vectors, and the mean-variance bound on
//! expected maxima.

use crate::error::{Error, Result};
use crate::harness::EstimateReport;
use crate::mc;
use crate::rng::RandomStream;

/// Ball weights; finite and nonnegative by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidParams("weight vector must be nonempty".into()));
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidParams(
                "weights must be finite and nonnegative".into(),
            ));
        }
        Ok(WeightVector(weights))
    }

    pub fn weights(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.0.iter().sum()
    }

    fn sorted_desc(&self) -> Vec<f64> {
        let mut v = self.0.clone();
        v.sort_by(|a, b| b.partial_cmp(a).unwrap());
        v
    }
}

/// One throw of all balls into n bins, returning the maximum bin load.
pub fn sample_max_load(w: &WeightVector, n: usize, rng: &mut RandomStream) -> f64 {
    debug_assert!(n >= 1);
    let mut loads = vec![0.0f64; n];
    for &weight in w.weights() {
        loads[rng.below(n)] += weight;
    }
    loads.iter().fold(0.0f64, |a, &b| a.max(b))
}

/// Monte Carlo estimate of E[max bin load] under uniform placement.
pub fn expected_max_load_mc(
    w: &WeightVector,
    n: usize,
    trials: u64,
    rng: &RandomStream,
) -> EstimateReport {
    assert!(n >= 1 && trials >= 1);
    let (mean, std_error) = mc::run(trials, rng, |r| sample_max_load(w, n, r));
    EstimateReport {
        mean,
        std_error,
        trials,
        seed: rng.seed(),
    }
}

pub const ENUMERATION_BUDGET: u128 = 10_000_000;

pub(crate) fn placements(n: usize, m: usize) -> Result<u64> {
    let size = (n as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
    if size > ENUMERATION_BUDGET {
        return Err(Error::BudgetExceeded {
            size,
            budget: ENUMERATION_BUDGET,
            fallback: "use expected_max_load_mc",
        });
    }
    Ok(size as u64)
}

/// Exact E[max bin load] by enumerating all n^m placements.
///
/// Placements are visited in mixed-radix (odometer) order with incremental
/// load updates. Errors when n^m exceeds the 10^7 budget.
pub fn expected_max_load_exact(w: &WeightVector, n: usize) -> Result<f64> {
    assert!(n >= 1);
    let m = w.len();
    let count = placements(n, m)?;
    let weights = w.weights();
    let mut assign = vec![0usize; m];
    let mut loads = vec![0.0f64; n];
    loads[0] = w.total();
    let mut sum = 0.0f64;
    for step in 0..count {
        sum += loads.iter().fold(0.0f64, |a, &b| a.max(b));
        if step + 1 == count {
            break;
        }
        // odometer increment over the assignment digits
        for j in 0..m {
            let from = assign[j];
            loads[from] -= weights[j];
            if from + 1 < n {
                assign[j] = from + 1;
                loads[from + 1] += weights[j];
                break;
            }
            assign[j] = 0;
            loads[0] += weights[j];
        }
    }
    Ok(sum / count as f64)
}

/// Majorization order: does `w` majorize `w_prime`?
///
/// Both vectors are sorted non-increasing internally; the check requires
/// equal totals and dominating prefix sums, each within 1e-12, and that the
/// left vector is no longer than the right one.
pub fn majorizes(w: &WeightVector, w_prime: &WeightVector) -> Result<bool> {
    if w.len() > w_prime.len() {
        return Err(Error::MajorizationOrder {
            m: w.len(),
            m_prime: w_prime.len(),
        });
    }
    const TOL: f64 = 1e-12;
    let a = w.sorted_desc();
    let b = w_prime.sorted_desc();
    let (ta, tb) = (a.iter().sum::<f64>(), b.iter().sum::<f64>());
    if (ta - tb).abs() > TOL {
        return Ok(false);
    }
    let mut pa = 0.0;
    let mut pb = 0.0;
    for k in 0..a.len() {
        pa += a[k];
        pb += b[k];
        if pa < pb - TOL {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Mean-variance bound on the expected maximum of n common-mean,
/// common-variance (not necessarily independent) variables:
/// mu + sqrt(n−1)·sigma.
pub fn aven_bound(mu: f64, sigma: f64, n: usize) -> f64 {
    assert!(n >= 1 && sigma >= 0.0);
    mu + ((n - 1) as f64).sqrt() * sigma
}
