//! Sampleable processing-time distributions with cdf/pdf/hazard access.

use crate::error::{Error, Result};
use crate::rng::RandomStream;

const PROB_TOL: f64 = 1e-12;

/// A univariate law over nonnegative processing times.
///
/// Construct through the `point_mass`, `uniform`, ... helpers, which
/// validate parameters. Five kinds cover everything the toolkit needs;
/// general MHR families are out of scope.
#[derive(Debug, Clone, PartialEq)]
pub enum Distribution {
    PointMass { v: f64 },
    Uniform { a: f64, b: f64 },
    Exponential { rate: f64 },
    TwoPoint { lo: f64, hi: f64, p_hi: f64 },
    FiniteDiscrete { support: Vec<f64>, probs: Vec<f64> },
}

impl Distribution {
    pub fn point_mass(v: f64) -> Result<Self> {
        let d = Distribution::PointMass { v };
        d.validate()?;
        Ok(d)
    }

    pub fn uniform(a: f64, b: f64) -> Result<Self> {
        let d = Distribution::Uniform { a, b };
        d.validate()?;
        Ok(d)
    }

    pub fn exponential(rate: f64) -> Result<Self> {
        let d = Distribution::Exponential { rate };
        d.validate()?;
        Ok(d)
    }

    /// Two-point law on {lo, hi} with P(hi) = p_hi. With lo = 0, hi = 1 this
    /// is the Bernoulli law used by the hard i.i.d. instances.
    pub fn two_point(lo: f64, hi: f64, p_hi: f64) -> Result<Self> {
        let d = Distribution::TwoPoint { lo, hi, p_hi };
        d.validate()?;
        Ok(d)
    }

    /// Discrete law on a sorted support with matching probabilities.
    pub fn finite_discrete(support: Vec<f64>, probs: Vec<f64>) -> Result<Self> {
        let d = Distribution::FiniteDiscrete { support, probs };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        let err = |msg: String| Err(Error::InvalidDistribution(msg));
        match self {
            Distribution::PointMass { v } => {
                if !v.is_finite() || *v < 0.0 {
                    return err(format!("point mass at {v} must be a finite nonnegative real"));
                }
            }
            Distribution::Uniform { a, b } => {
                if !a.is_finite() || !b.is_finite() || !(a < b) {
                    return err(format!("uniform requires finite a < b, got [{a}, {b}]"));
                }
                if *a < 0.0 {
                    return err(format!("uniform support must be nonnegative, got a = {a}"));
                }
            }
            Distribution::Exponential { rate } => {
                if !rate.is_finite() || *rate <= 0.0 {
                    return err(format!("exponential rate must be positive, got {rate}"));
                }
            }
            Distribution::TwoPoint { lo, hi, p_hi } => {
                if !lo.is_finite() || !hi.is_finite() || !(lo < hi) || *lo < 0.0 {
                    return err(format!("two-point requires 0 <= lo < hi, got ({lo}, {hi})"));
                }
                if !(0.0..=1.0).contains(p_hi) {
                    return err(format!("p_hi = {p_hi} is not a probability"));
                }
            }
            Distribution::FiniteDiscrete { support, probs } => {
                if support.is_empty() || support.len() != probs.len() {
                    return err("support and probs must be nonempty and equal length".into());
                }
                if support.windows(2).any(|w| !(w[0] < w[1])) {
                    return err("support must be strictly increasing".into());
                }
                if support[0] < 0.0 || !support.iter().all(|x| x.is_finite()) {
                    return err("support values must be finite and nonnegative".into());
                }
                if probs.iter().any(|p| !(0.0..=1.0).contains(p)) {
                    return err("probabilities must lie in [0, 1]".into());
                }
                let total: f64 = probs.iter().sum();
                if (total - 1.0).abs() > PROB_TOL {
                    return err(format!("probabilities sum to {total}, not 1 within 1e-12"));
                }
            }
        }
        Ok(())
    }

    pub fn is_continuous(&self) -> bool {
        matches!(
            self,
            Distribution::Uniform { .. } | Distribution::Exponential { .. }
        )
    }

    /// One draw. Deterministic given the rng state.
    #[inline]
    pub fn sample(&self, rng: &mut RandomStream) -> f64 {
        match self {
            Distribution::PointMass { v } => *v,
            Distribution::Uniform { a, b } => a + (b - a) * rng.next_f64(),
            Distribution::Exponential { rate } => -(-rng.next_f64()).ln_1p() / rate,
            Distribution::TwoPoint { lo, hi, p_hi } => {
                if rng.next_f64() < *p_hi {
                    *hi
                } else {
                    *lo
                }
            }
            Distribution::FiniteDiscrete { support, probs } => {
                let u = rng.next_f64();
                let mut acc = 0.0;
                for (x, p) in support.iter().zip(probs) {
                    acc += p;
                    if u < acc {
                        return *x;
                    }
                }
                *support.last().unwrap()
            }
        }
    }

    /// Minimum of n independent draws.
    ///
    /// Always realized by drawing n values so the same path serves every
    /// kind; see [`Distribution::sample_min_of_n_fast`] for the inverse-cdf
    /// shortcut available to the uniform and exponential kinds.
    #[inline]
    pub fn sample_min_of_n(&self, n: usize, rng: &mut RandomStream) -> f64 {
        debug_assert!(n >= 1);
        let mut min = self.sample(rng);
        for _ in 1..n {
            let x = self.sample(rng);
            if x < min {
                min = x;
            }
        }
        min
    }

    /// Minimum of n draws via the quantile function of the min law, where
    /// one exists: one uniform draw instead of n. Falls back to the generic
    /// path otherwise.
    #[inline]
    pub fn sample_min_of_n_fast(&self, n: usize, rng: &mut RandomStream) -> f64 {
        match self {
            // min of n exponentials with rate λ is exponential with rate nλ
            Distribution::Exponential { rate } => {
                -(-rng.next_f64()).ln_1p() / (rate * n as f64)
            }
            // min of n uniforms: F(x) = 1 − (1 − (x−a)/(b−a))^n
            Distribution::Uniform { a, b } => {
                let u = rng.next_f64();
                a + (b - a) * (1.0 - (1.0 - u).powf(1.0 / n as f64))
            }
            _ => self.sample_min_of_n(n, rng),
        }
    }

    /// Right-continuous cdf F(x).
    pub fn cdf(&self, x: f64) -> f64 {
        match self {
            Distribution::PointMass { v } => {
                if x >= *v {
                    1.0
                } else {
                    0.0
                }
            }
            Distribution::Uniform { a, b } => ((x - a) / (b - a)).clamp(0.0, 1.0),
            Distribution::Exponential { rate } => {
                if x < 0.0 {
                    0.0
                } else {
                    -(-rate * x).exp_m1()
                }
            }
            Distribution::TwoPoint { lo, hi, p_hi } => {
                if x < *lo {
                    0.0
                } else if x < *hi {
                    1.0 - p_hi
                } else {
                    1.0
                }
            }
            Distribution::FiniteDiscrete { support, probs } => support
                .iter()
                .zip(probs)
                .take_while(|(s, _)| **s <= x)
                .map(|(_, p)| p)
                .sum(),
        }
    }

    /// Density, defined for the continuous kinds only.
    pub fn pdf(&self, x: f64) -> Result<f64> {
        match self {
            Distribution::Uniform { a, b } => Ok(if (*a..=*b).contains(&x) {
                1.0 / (b - a)
            } else {
                0.0
            }),
            Distribution::Exponential { rate } => Ok(if x >= 0.0 {
                rate * (-rate * x).exp()
            } else {
                0.0
            }),
            _ => Err(Error::NotContinuous),
        }
    }

    /// Hazard rate h(x).
    ///
    /// Continuous kinds use f(x)/(1−F(x)); discrete kinds use the atom-wise
    /// P(X = x)/P(X >= x) and error on points outside the support. Where
    /// F(x) = 1 the hazard is reported as +inf.
    pub fn hazard_rate(&self, x: f64) -> Result<f64> {
        match self {
            Distribution::Uniform { .. } | Distribution::Exponential { .. } => {
                let tail = 1.0 - self.cdf(x);
                if tail <= 0.0 {
                    return Ok(f64::INFINITY);
                }
                Ok(self.pdf(x)? / tail)
            }
            Distribution::PointMass { v } => {
                if x == *v {
                    Ok(1.0)
                } else {
                    Err(Error::OutsideSupport(x))
                }
            }
            Distribution::TwoPoint { lo, hi, p_hi } => {
                if x == *lo {
                    Ok(1.0 - p_hi)
                } else if x == *hi {
                    if *p_hi > 0.0 {
                        Ok(1.0)
                    } else {
                        Ok(f64::INFINITY)
                    }
                } else {
                    Err(Error::OutsideSupport(x))
                }
            }
            Distribution::FiniteDiscrete { support, probs } => {
                let k = support
                    .iter()
                    .position(|s| *s == x)
                    .ok_or(Error::OutsideSupport(x))?;
                let tail: f64 = probs[k..].iter().sum();
                if tail <= 0.0 {
                    return Ok(f64::INFINITY);
                }
                Ok(probs[k] / tail)
            }
        }
    }

    /// Atoms of a discrete kind, None for continuous kinds.
    pub fn atoms(&self) -> Option<Vec<f64>> {
        match self {
            Distribution::PointMass { v } => Some(vec![*v]),
            Distribution::TwoPoint { lo, hi, .. } => Some(vec![*lo, *hi]),
            Distribution::FiniteDiscrete { support, .. } => Some(support.clone()),
            _ => None,
        }
    }

    /// Grid of hazard evaluation points: atoms for discrete kinds, an even
    /// grid over the support (to the 1 − 1e-9 quantile when unbounded) for
    /// continuous kinds.
    fn hazard_grid(&self, grid_points: usize) -> Vec<f64> {
        if let Some(atoms) = self.atoms() {
            return atoms;
        }
        let (lo, hi) = match self {
            Distribution::Uniform { a, b } => (*a, *b),
            Distribution::Exponential { rate } => (0.0, -(1e-9f64).ln() / rate),
            _ => unreachable!(),
        };
        // Half-open grid: the right endpoint of a bounded support has
        // hazard +inf and carries no monotonicity information.
        (0..grid_points)
            .map(|i| lo + (hi - lo) * i as f64 / grid_points as f64)
            .collect()
    }

    /// Numerically check the monotone-hazard-rate property on a grid.
    pub fn is_mhr_numeric(&self, grid_points: usize, tol: f64) -> bool {
        assert!(grid_points >= 2, "need at least 2 grid points");
        let grid = self.hazard_grid(grid_points);
        let hazards: Vec<f64> = grid
            .iter()
            .filter_map(|&x| self.hazard_rate(x).ok())
            .collect();
        is_nondecreasing(&hazards, tol)
    }

    /// Point masses become narrow uniforms centred at v (clamped at 0);
    /// other kinds are unchanged.
    pub fn smoothed(&self, eps: f64) -> Result<Distribution> {
        assert!(eps > 0.0, "smoothing width must be positive");
        match self {
            Distribution::PointMass { v } => Distribution::uniform((v - eps).max(0.0), v + eps),
            other => Ok(other.clone()),
        }
    }
}

/// True iff the sequence never decreases by more than `tol` (absolute,
/// plus the same amount relative to the running level). +inf entries are
/// treated as larger than everything, so a trailing +inf never fails.
pub fn is_nondecreasing(values: &[f64], tol: f64) -> bool {
    values.windows(2).all(|w| {
        if w[1].is_infinite() {
            return true;
        }
        if w[0].is_infinite() {
            return false;
        }
        w[1] >= w[0] - tol - tol * w[0].abs()
    })
}
