//! Exact optimal makespan at desk scale and lower bounds on the expected
//! optimum.

use crate::distributions::Distribution;
use crate::error::{Error, Result};
use crate::instances::{SchedulingInstance, TimeMatrix};
use crate::order_stats;
use crate::rng::RandomStream;
use crate::{balls_bins, mc};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OptMethod {
    Exhaustive,
    IdenticalDp,
    LowerBound,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptResult {
    pub value: f64,
    pub method: OptMethod,
}

/// Exact optimal makespan by enumerating all n^m assignments in mixed-radix
/// order with incremental load updates. Errors beyond the 10^7 budget.
pub fn opt_exhaustive(t: &TimeMatrix) -> Result<f64> {
    let n = t.machines();
    let m = t.tasks();
    if !t.is_finite() {
        return Err(Error::ShapeMismatch("matrix must be finite".into()));
    }
    let count = balls_bins::placements(n, m).map_err(|e| match e {
        Error::BudgetExceeded { size, budget, .. } => Error::BudgetExceeded {
            size,
            budget,
            fallback: "use opt_identical_dp (column-constant) or a lower bound",
        },
        other => other,
    })?;
    let mut assign = vec![0usize; m];
    let mut loads = vec![0.0f64; n];
    for j in 0..m {
        loads[0] += t.time(0, j);
    }
    let mut best = f64::INFINITY;
    for step in 0..count {
        let makespan = loads.iter().fold(0.0f64, |a, &b| a.max(b));
        if makespan < best {
            best = makespan;
        }
        if step + 1 == count {
            break;
        }
        for j in 0..m {
            let from = assign[j];
            loads[from] -= t.time(from, j);
            if from + 1 < n {
                assign[j] = from + 1;
                loads[from + 1] += t.time(from + 1, j);
                break;
            }
            assign[j] = 0;
            loads[0] += t.time(0, j);
        }
    }
    Ok(best)
}

const DP_TASK_BUDGET: usize = 24;

/// Exact minimum makespan partitioning `weights` into n groups, for
/// column-constant matrices. Binary search over the achievable subset sums
/// with a bitmask bin-packing feasibility check; exact, no tolerance, for
/// weights whose subset sums are exactly representable.
pub fn opt_identical_dp(weights: &[f64], n: usize) -> Result<f64> {
    let m = weights.len();
    if n == 0 || m == 0 {
        return Err(Error::InvalidParams("need n >= 1 and m >= 1".into()));
    }
    if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
        return Err(Error::InvalidParams("weights must be finite nonnegative".into()));
    }
    if m > DP_TASK_BUDGET {
        return Err(Error::BudgetExceeded {
            size: 1u128 << m,
            budget: 1u128 << DP_TASK_BUDGET,
            fallback: "use opt_exhaustive or a lower bound",
        });
    }

    let full = (1usize << m) - 1;
    // subset sums, chained from the lowest set bit
    let mut sums = vec![0.0f64; 1 << m];
    for s in 1..=full {
        let low = s.trailing_zeros() as usize;
        sums[s] = sums[s & (s - 1)] + weights[low];
    }
    let max_w = weights.iter().fold(0.0f64, |a, &b| a.max(b));
    let lower = max_w.max(sums[full] / n as f64);
    let mut candidates: Vec<f64> = sums.iter().copied().filter(|&s| s >= lower).collect();
    candidates.sort_by(|a, b| a.partial_cmp(b).unwrap());
    candidates.dedup();

    // smallest candidate T for which min-bins(T) <= n
    let mut lo = 0usize;
    let mut hi = candidates.len() - 1;
    debug_assert!(feasible(weights, &sums, candidates[hi], n));
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if feasible(weights, &sums, candidates[mid], n) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(candidates[lo])
}

/// Can the weights be packed into at most n bins of capacity t?
fn feasible(weights: &[f64], sums: &[f64], t: f64, n: usize) -> bool {
    let m = weights.len();
    let full = (1usize << m) - 1;
    if sums[full] <= t {
        return true;
    }
    // dp over packed subsets: fewest bins, then least load in the open bin
    let mut bins = vec![u8::MAX; 1 << m];
    let mut load = vec![f64::INFINITY; 1 << m];
    bins[0] = 1;
    load[0] = 0.0;
    for s in 0..=full {
        if bins[s] == u8::MAX {
            continue;
        }
        if s == full {
            return (bins[s] as usize) <= n;
        }
        let mut rest = full & !s;
        while rest != 0 {
            let low = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let w = weights[low];
            if w > t {
                return false;
            }
            let ns = s | (1 << low);
            let (nb, nl) = if load[s] + w <= t {
                (bins[s], load[s] + w)
            } else {
                (bins[s] + 1, w)
            };
            if nb < bins[ns] || (nb == bins[ns] && nl < load[ns]) {
                bins[ns] = nb;
                load[ns] = nl;
            }
        }
    }
    (bins[full] as usize) <= n
}

/// Standard lower bound on E[OPT] for machine-identical instances:
/// max of E[max_j (task j's best time)] and (1/n)·sum_j E[task j's best time].
///
/// Each term uses its closed form where one exists and Monte Carlo
/// otherwise; the returned standard error is zero on fully closed-form
/// paths.
pub fn expected_opt_lower_bound(
    inst: &SchedulingInstance,
    trials: u64,
    rng: &RandomStream,
) -> Result<(f64, f64)> {
    if !inst.is_machine_identical() {
        return Err(Error::NotMachineIdentical);
    }
    let n = inst.machines() as u64;
    let m = inst.tasks();

    // mean-workload term: (1/n) sum_j E[min of n draws from D_j]
    let mut sum_term = 0.0;
    let mut sum_term_se_sq = 0.0;
    for j in 0..m {
        let d = inst.task_dist(j)?;
        match order_stats::expect_min_of_n(d, n) {
            Ok(v) => sum_term += v,
            Err(Error::NoClosedForm) => {
                let est = order_stats::monte_carlo_order_stat(d, n, 1, trials, &rng.child(j as u64));
                sum_term += est.mean;
                sum_term_se_sq += est.std_error * est.std_error;
            }
            Err(e) => return Err(e),
        }
    }
    let mean_term = sum_term / n as f64;
    let mean_term_se = sum_term_se_sq.sqrt() / n as f64;

    // max-of-minima term
    let (max_term, max_term_se) = max_of_task_minima(inst, trials, rng)?;

    if max_term >= mean_term {
        Ok((max_term, max_term_se))
    } else {
        Ok((mean_term, mean_term_se))
    }
}

fn max_of_task_minima(
    inst: &SchedulingInstance,
    trials: u64,
    rng: &RandomStream,
) -> Result<(f64, f64)> {
    let n = inst.machines() as u64;
    let m = inst.tasks();

    // i.i.d. uniform/exponential: closed form for the max of m minima
    if let Ok(d) = inst.task_dist(0) {
        let iid = (1..m).all(|j| inst.task_dist(j).map(|dj| dj == d).unwrap_or(false));
        if iid {
            if let Ok(v) = order_stats::expect_max_of_mins(d, n, m as u64) {
                return Ok((v, 0.0));
            }
        }
    }
    // all point masses: minima are deterministic
    let mut det_max: Option<f64> = Some(f64::NEG_INFINITY);
    for j in 0..m {
        match inst.task_dist(j)? {
            Distribution::PointMass { v } => {
                det_max = det_max.map(|acc| acc.max(*v));
            }
            _ => {
                det_max = None;
                break;
            }
        }
    }
    if let Some(v) = det_max {
        return Ok((v, 0.0));
    }
    // general machine-identical: Monte Carlo over the max of per-task minima
    let dists: Vec<&Distribution> = (0..m).map(|j| inst.task_dist(j).unwrap()).collect();
    let (mean, se) = mc::run(trials, rng, |r| {
        dists
            .iter()
            .map(|d| d.sample_min_of_n(n as usize, r))
            .fold(f64::NEG_INFINITY, f64::max)
    });
    Ok((mean, se))
}
