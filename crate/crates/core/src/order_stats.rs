//! Order statistics of minima: closed forms, Monte Carlo estimates, and the
//! moment machinery behind the monotone-hazard-rate arguments.
//!
//! `min_of_n(d, n)` is the law of the minimum of n i.i.d. draws from d;
//! `max_of_mins(d, n, m)` is the maximum of m independent such minima.

use crate::distributions::{is_nondecreasing, Distribution};
use crate::error::{Error, Result};
use crate::harness::EstimateReport;
use crate::rng::RandomStream;
use crate::special::{harmonic, ln_beta};
use crate::{mc, rng};

/// E[min of n i.i.d. draws], in closed form.
///
/// Supported kinds: uniform (affine image of the unit-interval formula
/// 1/(n+1)), exponential (1/(rate·n)), and point mass (the value itself).
pub fn expect_min_of_n(dist: &Distribution, n: u64) -> Result<f64> {
    assert!(n >= 1);
    match dist {
        Distribution::Uniform { a, b } => Ok(a + (b - a) / (n as f64 + 1.0)),
        Distribution::Exponential { rate } => Ok(1.0 / (rate * n as f64)),
        Distribution::PointMass { v } => Ok(*v),
        _ => Err(Error::NoClosedForm),
    }
}

/// E[max of m independent minima of n draws], in closed form.
///
/// Unit uniform: 1 − m·B(m, 1 + 1/n); general uniforms by affine shift.
/// Exponential: H_m / (rate·n). Point mass: the value itself.
pub fn expect_max_of_mins(dist: &Distribution, n: u64, m: u64) -> Result<f64> {
    assert!(n >= 1 && m >= 1);
    match dist {
        Distribution::Uniform { a, b } => {
            // m·B(m, 1+1/n) in log space; B alone underflows for large m.
            let m_beta = ((m as f64).ln() + ln_beta(m as f64, 1.0 + 1.0 / n as f64)).exp();
            Ok(a + (b - a) * (1.0 - m_beta))
        }
        Distribution::Exponential { rate } => Ok(harmonic(m) / (rate * n as f64)),
        Distribution::PointMass { v } => Ok(*v),
        _ => Err(Error::NoClosedForm),
    }
}

/// Stretch factor E[max of n minima] / E[one minimum] at n draws.
///
/// For the exponential this is H_n exactly; for the unit uniform,
/// (n+1)·(1 − n·B(n, 1+1/n)).
pub fn stretch_factor(dist: &Distribution, n: u64) -> Result<f64> {
    Ok(expect_max_of_mins(dist, n, n)? / expect_min_of_n(dist, n)?)
}

/// Monte Carlo estimate of E[max of m minima of n draws] (m = 1 gives the
/// plain minimum). Serves every distribution kind.
pub fn monte_carlo_order_stat(
    dist: &Distribution,
    n: u64,
    m: u64,
    trials: u64,
    rng: &RandomStream,
) -> EstimateReport {
    assert!(n >= 1 && m >= 1 && trials >= 1);
    let (mean, std_error) = mc::run(trials, rng, |r| sample_max_of_mins(dist, n, m, r));
    EstimateReport {
        mean,
        std_error,
        trials,
        seed: rng.seed(),
    }
}

/// One draw of max-of-m-minima via the generic n-draw path.
pub fn sample_max_of_mins(dist: &Distribution, n: u64, m: u64, rng: &mut RandomStream) -> f64 {
    let mut max = f64::NEG_INFINITY;
    for _ in 0..m {
        let x = dist.sample_min_of_n(n as usize, rng);
        if x > max {
            max = x;
        }
    }
    max
}

/// Outcome of the moment comparison E[X^r] vs r!·E[X]^r.
#[derive(Debug, Clone, Copy)]
pub struct MomentCheck {
    /// Estimate of E[X^r].
    pub lhs: f64,
    /// r! times the estimated mean raised to r.
    pub rhs: f64,
    pub holds: bool,
}

/// Estimate both sides of E[X^r] <= r!·E[X]^r from one shared sample set.
///
/// `holds` allows the left side to exceed the right by three relative
/// standard errors of the left estimate, so the equality case (exponential
/// laws) is not rejected on noise.
pub fn moment_inequality_check(
    dist: &Distribution,
    r: u32,
    trials: u64,
    rng: &RandomStream,
) -> MomentCheck {
    assert!(r >= 1 && trials >= 1);
    let stats = mc::try_run_paired(trials, rng, |stream| {
        let x = dist.sample(stream);
        Ok((x.powi(r as i32), x))
    })
    .expect("sampling cannot fail");
    let lhs = stats.mean_x;
    let r_fact: f64 = (1..=r as u64).map(|k| k as f64).product();
    let rhs = r_fact * stats.mean_y.powi(r as i32);
    let rel_se = if lhs > 0.0 { stats.se_x / lhs } else { 0.0 };
    MomentCheck {
        lhs,
        rhs,
        holds: lhs <= rhs * (1.0 + 3.0 * rel_se),
    }
}

/// Check that the minimum-of-n law of a continuous MHR candidate has a
/// nondecreasing hazard n·f(x)/(1−F(x)) on an evaluation grid.
pub fn first_order_stat_mhr_check(
    dist: &Distribution,
    n: u64,
    grid_points: usize,
) -> Result<bool> {
    assert!(n >= 1 && grid_points >= 2);
    if !dist.is_continuous() {
        return Err(Error::NotContinuous);
    }
    let (lo, hi) = match dist {
        Distribution::Uniform { a, b } => (*a, *b),
        Distribution::Exponential { rate } => (0.0, -(1e-9f64).ln() / rate),
        _ => unreachable!(),
    };
    let hazards: Vec<f64> = (0..grid_points)
        .map(|i| lo + (hi - lo) * i as f64 / grid_points as f64)
        .map(|x| {
            let tail = 1.0 - dist.cdf(x);
            if tail <= 0.0 {
                f64::INFINITY
            } else {
                n as f64 * dist.pdf(x).expect("continuous") / tail
            }
        })
        .collect();
    Ok(is_nondecreasing(&hazards, 1e-9))
}

/// Fresh stream helper so callers holding only a seed can query the module.
pub fn stream(seed: u64) -> RandomStream {
    rng::RandomStream::new(seed)
}
