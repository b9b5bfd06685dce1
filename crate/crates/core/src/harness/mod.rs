//! Monte Carlo experiment runner: mechanism and optimum estimates,
//! approximation ratios with attached bound checks, and config-driven
//! sweeps with CSV/JSON output.

pub mod config;
pub mod output;

pub use config::{CellConfig, DistSpec, InstanceSpec, MechanismSpec, SweepConfig};
pub use output::SweepRow;

use crate::error::{Error, Result};
use crate::instances::{SchedulingInstance, Structure, TimeMatrix};
use crate::mc;
use crate::mechanisms::{self, Allocation};
use crate::optimal_oracle;
use crate::order_stats;
use crate::rng::RandomStream;

/// A Monte Carlo estimate: mean, standard error (sample std / sqrt(trials)),
/// trial count, and the seed that reproduces it.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct EstimateReport {
    pub mean: f64,
    pub std_error: f64,
    pub trials: u64,
    pub seed: u64,
}

/// How the denominator of a ratio was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OptEstimateMethod {
    /// Solve each sampled matrix exactly and average.
    ExactPerSample,
    /// Deterministic lower bound on the expected optimum; the resulting
    /// ratio is an upper bound on the true one.
    LowerBound,
    /// Pick exact-per-sample when the enumeration budget allows, otherwise
    /// fall back to the lower bound.
    Auto,
}

impl std::fmt::Display for OptEstimateMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            OptEstimateMethod::ExactPerSample => "exact_per_sample",
            OptEstimateMethod::LowerBound => "lower_bound",
            OptEstimateMethod::Auto => "auto",
        })
    }
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct BoundCheck {
    pub name: String,
    pub bound_value: f64,
    pub satisfied: bool,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct RatioReport {
    pub mech_estimate: EstimateReport,
    pub opt_estimate: EstimateReport,
    pub opt_method: OptEstimateMethod,
    pub ratio: f64,
    /// Delta-method standard error of the ratio.
    pub ratio_se: f64,
    pub bound_checks: Vec<BoundCheck>,
}

/// Expected makespan of a mechanism on an instance: per trial, sample a
/// matrix, run the allocation rule, take the makespan.
pub fn estimate_mech_makespan(
    inst: &SchedulingInstance,
    mech: &MechanismSpec,
    trials: u64,
    seed: u64,
) -> Result<EstimateReport> {
    let base = RandomStream::new(seed);
    let (mean, std_error) = mc::try_run(trials, &base, |rng| {
        let t = inst.sample_matrix(rng);
        let a = mech.allocate(&t, rng)?;
        mechanisms::makespan(&t, &a)
    })?;
    Ok(EstimateReport {
        mean,
        std_error,
        trials,
        seed,
    })
}

const EXACT_PER_SAMPLE_TOTAL_BUDGET: u128 = 200_000_000;

fn exact_opt_of_matrix(t: &TimeMatrix) -> Result<f64> {
    match optimal_oracle::opt_exhaustive(t) {
        Ok(v) => Ok(v),
        Err(Error::BudgetExceeded { .. }) if t.is_column_constant() => {
            optimal_oracle::opt_identical_dp(t.row(0), t.machines())
        }
        Err(e) => Err(e),
    }
}

/// Expected optimal makespan, either exactly per sampled matrix or as the
/// deterministic lower bound.
pub fn estimate_expected_opt(
    inst: &SchedulingInstance,
    trials: u64,
    seed: u64,
    method: OptEstimateMethod,
) -> Result<(EstimateReport, OptEstimateMethod)> {
    let base = RandomStream::new(seed);
    match method {
        OptEstimateMethod::ExactPerSample => {
            let (mean, std_error) = mc::try_run(trials, &base, |rng| {
                exact_opt_of_matrix(&inst.sample_matrix(rng))
            })?;
            Ok((
                EstimateReport {
                    mean,
                    std_error,
                    trials,
                    seed,
                },
                OptEstimateMethod::ExactPerSample,
            ))
        }
        OptEstimateMethod::LowerBound => {
            let (mean, std_error) = optimal_oracle::expected_opt_lower_bound(inst, trials, &base)?;
            Ok((
                EstimateReport {
                    mean,
                    std_error,
                    trials,
                    seed,
                },
                OptEstimateMethod::LowerBound,
            ))
        }
        OptEstimateMethod::Auto => {
            let method = pick_opt_method(inst, trials)?;
            estimate_expected_opt(inst, trials, seed, method)
        }
    }
}

fn deterministic_column_constant(inst: &SchedulingInstance) -> bool {
    inst.is_machine_identical()
        && (0..inst.tasks()).all(|j| {
            matches!(
                inst.task_dist(j),
                Ok(crate::distributions::Distribution::PointMass { .. })
            )
        })
}

fn pick_opt_method(inst: &SchedulingInstance, trials: u64) -> Result<OptEstimateMethod> {
    let n = inst.machines() as u128;
    let states = n.checked_pow(inst.tasks() as u32).unwrap_or(u128::MAX);
    let per_matrix_ok = states <= crate::balls_bins::ENUMERATION_BUDGET;
    let total_ok = states.saturating_mul(trials as u128) <= EXACT_PER_SAMPLE_TOTAL_BUDGET;
    if per_matrix_ok && total_ok {
        return Ok(OptEstimateMethod::ExactPerSample);
    }
    if deterministic_column_constant(inst) && inst.tasks() <= 24 {
        // realizations are deterministic; one partition solve per trial
        return Ok(OptEstimateMethod::ExactPerSample);
    }
    if inst.is_machine_identical() {
        return Ok(OptEstimateMethod::LowerBound);
    }
    if per_matrix_ok {
        return Ok(OptEstimateMethod::ExactPerSample);
    }
    Err(Error::BudgetExceeded {
        size: states,
        budget: crate::balls_bins::ENUMERATION_BUDGET,
        fallback: "no lower bound is available for general structures",
    })
}

/// Ratio of expected makespans, mechanism over optimum, with every
/// applicable theoretical bound attached and checked at 3-SE slack.
///
/// The ratio is a ratio of means, not a mean of ratios. With the
/// exact-per-sample denominator, numerator and denominator share the same
/// sampled matrices and the delta-method standard error includes their
/// covariance.
pub fn ratio(
    inst: &SchedulingInstance,
    mech: &MechanismSpec,
    trials: u64,
    seed: u64,
) -> Result<RatioReport> {
    ratio_with_method(inst, mech, trials, seed, OptEstimateMethod::Auto)
}

pub fn ratio_with_method(
    inst: &SchedulingInstance,
    mech: &MechanismSpec,
    trials: u64,
    seed: u64,
    method: OptEstimateMethod,
) -> Result<RatioReport> {
    let method = match method {
        OptEstimateMethod::Auto => pick_opt_method(inst, trials)?,
        m => m,
    };
    let base = RandomStream::new(seed);
    let (mech_est, opt_est, ratio, ratio_se) = match method {
        OptEstimateMethod::ExactPerSample => {
            let stats = mc::try_run_paired(trials, &base, |rng| {
                let t = inst.sample_matrix(rng);
                let a = mech.allocate(&t, rng)?;
                let ms = mechanisms::makespan(&t, &a)?;
                let opt = exact_opt_of_matrix(&t)?;
                Ok((ms, opt))
            })?;
            let ratio = stats.mean_x / stats.mean_y;
            let se = ratio_se_paired(&stats);
            (
                EstimateReport {
                    mean: stats.mean_x,
                    std_error: stats.se_x,
                    trials,
                    seed,
                },
                EstimateReport {
                    mean: stats.mean_y,
                    std_error: stats.se_y,
                    trials,
                    seed,
                },
                ratio,
                se,
            )
        }
        OptEstimateMethod::LowerBound => {
            let mech_est = estimate_mech_makespan(inst, mech, trials, seed)?;
            let (opt_est, _) =
                estimate_expected_opt(inst, trials, seed ^ 0x5EED, OptEstimateMethod::LowerBound)?;
            let ratio = mech_est.mean / opt_est.mean;
            let rel_m = mech_est.std_error / mech_est.mean.max(f64::MIN_POSITIVE);
            let rel_o = opt_est.std_error / opt_est.mean.max(f64::MIN_POSITIVE);
            let se = ratio.abs() * (rel_m * rel_m + rel_o * rel_o).sqrt();
            (mech_est, opt_est, ratio, se)
        }
        OptEstimateMethod::Auto => unreachable!(),
    };

    let mut bound_checks = Vec::new();
    if matches!(mech, MechanismSpec::Vcg { .. }) {
        let info = DistInfo::of(inst);
        for b in theoretical_bounds(inst.machines(), inst.tasks(), &info) {
            let satisfied = match b.kind {
                BoundKind::MakespanUpper => {
                    mech_est.mean <= b.value + 3.0 * mech_est.std_error
                }
                BoundKind::RatioUpper => ratio <= b.value + 3.0 * ratio_se,
            };
            bound_checks.push(BoundCheck {
                name: b.name.to_string(),
                bound_value: b.value,
                satisfied,
            });
        }
    }

    Ok(RatioReport {
        mech_estimate: mech_est,
        opt_estimate: opt_est,
        opt_method: method,
        ratio,
        ratio_se,
        bound_checks,
    })
}

fn ratio_se_paired(s: &mc::PairedStats) -> f64 {
    // var(x̄/ȳ) ≈ (1/ȳ²)(var x̄ + r² var ȳ − 2 r cov(x̄, ȳ))
    let r = s.mean_x / s.mean_y;
    let n = s.trials as f64;
    let var_mx = s.se_x * s.se_x;
    let var_my = s.se_y * s.se_y;
    let cov_means = s.cov_per_trial / n;
    let v = (var_mx + r * r * var_my - 2.0 * r * cov_means) / (s.mean_y * s.mean_y);
    v.max(0.0).sqrt()
}

/// Distribution facts a bound may require.
#[derive(Debug, Clone, Default)]
pub struct DistInfo {
    /// E[minimum of n i.i.d. draws], when a closed form exists.
    pub e_min_of_n: Option<f64>,
    /// Stretch factor k(n) = E[max of n minima] / E[minimum], closed form.
    pub stretch: Option<f64>,
    /// Tasks are i.i.d. from a continuous law with nondecreasing hazard
    /// (verified numerically).
    pub iid_continuous_mhr: bool,
}

impl DistInfo {
    pub fn of(inst: &SchedulingInstance) -> Self {
        if inst.structure() != Structure::Iid {
            return DistInfo::default();
        }
        let d = inst.task_dist(0).expect("iid instance has a task law");
        let n = inst.machines() as u64;
        DistInfo {
            e_min_of_n: order_stats::expect_min_of_n(d, n).ok(),
            stretch: order_stats::stretch_factor(d, n).ok(),
            iid_continuous_mhr: d.is_continuous() && d.is_mhr_numeric(256, 1e-9),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    /// Upper bound on the expected makespan of the myopic rule.
    MakespanUpper,
    /// Upper bound on the approximation ratio of the myopic rule.
    RatioUpper,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NamedBound {
    pub name: &'static str,
    pub value: f64,
    pub kind: BoundKind,
    /// Human-readable hypothesis under which the bound applies.
    pub hypothesis: &'static str,
}

/// Every theoretical bound whose hypothesis is met by (n, m, dist_info).
/// Inapplicable bounds are omitted, not errored.
pub fn theoretical_bounds(n: usize, m: usize, info: &DistInfo) -> Vec<NamedBound> {
    let mut out = Vec::new();
    if !info.iid_continuous_mhr {
        return out;
    }
    let nf = n as f64;
    let mf = m as f64;
    let ln_n = nf.ln();
    if let Some(e_min) = info.e_min_of_n {
        out.push(NamedBound {
            name: "eq3_makespan_ub",
            value: 2.0 * (ln_n + mf / nf) * e_min,
            kind: BoundKind::MakespanUpper,
            hypothesis: "iid continuous MHR tasks",
        });
    }
    out.push(NamedBound {
        name: "thm33_ratio",
        value: 2.0 * (1.0 + nf * ln_n / mf),
        kind: BoundKind::RatioUpper,
        hypothesis: "iid continuous MHR tasks",
    });
    if mf >= nf * ln_n {
        out.push(NamedBound {
            name: "cor34_ratio",
            value: 4.0,
            kind: BoundKind::RatioUpper,
            hypothesis: "iid continuous MHR tasks, m >= n ln n",
        });
    }
    if mf <= nf * ln_n {
        if let Some(k) = info.stretch {
            out.push(NamedBound {
                name: "thm35_ratio",
                value: 4.0 * ln_n / k,
                kind: BoundKind::RatioUpper,
                hypothesis: "iid continuous MHR tasks, m <= n ln n, stretch k(n)",
            });
        }
    }
    if m >= n * n {
        out.push(NamedBound {
            name: "thm37_ratio",
            value: 1.0 + std::f64::consts::SQRT_2,
            kind: BoundKind::RatioUpper,
            hypothesis: "iid continuous MHR tasks, m >= n^2",
        });
    }
    out
}

/// Run every cell of a sweep config, one logical report per cell, flattened
/// to one output row per (cell, bound). Per-cell failures land in the `error`
/// column and do not stop the sweep. Rows come out in grid order no matter
/// how cells are scheduled.
pub fn sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    let cells = cfg.expand()?;
    let run_cell = |(idx, cell): (usize, &CellConfig)| -> Vec<SweepRow> {
        let seed = cell
            .seed
            .unwrap_or_else(|| RandomStream::new(cfg.seed).child(idx as u64).seed());
        let trials = cell.trials.unwrap_or(cfg.trials);
        let method = cell.opt_method.unwrap_or(cfg.opt_method);
        match run_one_cell(cell, trials, seed, method) {
            Ok(report) => output::rows_for_report(cell, &report),
            Err(e) => vec![output::error_row(cell, &e)],
        }
    };

    #[cfg(feature = "parallel")]
    let rows: Vec<Vec<SweepRow>> = {
        use rayon::prelude::*;
        cells.par_iter().enumerate().map(run_cell).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let rows: Vec<Vec<SweepRow>> = cells.iter().enumerate().map(run_cell).collect();

    Ok(rows.into_iter().flatten().collect())
}

fn run_one_cell(
    cell: &CellConfig,
    trials: u64,
    seed: u64,
    method: OptEstimateMethod,
) -> Result<RatioReport> {
    let inst = cell.instance.build(cell.n, cell.m)?;
    ratio_with_method(&inst, &cell.mechanism, trials, seed, method)
}

/// Allocation entry point shared by the estimators.
impl MechanismSpec {
    pub fn allocate(&self, t: &TimeMatrix, rng: &mut RandomStream) -> Result<Allocation> {
        match self {
            MechanismSpec::Vcg { tie_break } => mechanisms::vcg_allocate(t, *tie_break, rng),
            MechanismSpec::BoundedOverload { c, tie_break } => {
                mechanisms::bounded_overload_allocate(t, *c, *tie_break, rng)
            }
            MechanismSpec::SieveBo { c, beta, delta } => {
                let p = mechanisms::SieveParams {
                    c: *c,
                    beta: *beta,
                    delta: *delta,
                };
                mechanisms::sieve_bo_allocate(t, &p, rng)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::Distribution;
    use crate::instances::{gen_dominant_machine, gen_unit_and_small, make_iid};
    use crate::mechanisms::TieBreak;
    use approx::assert_relative_eq;

    fn vcg() -> MechanismSpec {
        MechanismSpec::Vcg {
            tie_break: TieBreak::UniformRandom,
        }
    }

    #[test]
    fn deterministic_instance_estimates_exactly() {
        let inst = make_iid(1, 3, Distribution::point_mass(1.0).unwrap()).unwrap();
        let est = estimate_mech_makespan(&inst, &vcg(), 100, 1).unwrap();
        assert_eq!(est.mean, 3.0);
        assert_eq!(est.std_error, 0.0);
    }

    #[test]
    fn tie_vcg_matches_balls_in_bins_value() {
        let inst = make_iid(2, 2, Distribution::point_mass(1.0).unwrap()).unwrap();
        let est = estimate_mech_makespan(&inst, &vcg(), 1_000_000, 77).unwrap();
        assert!((est.mean - 1.5).abs() <= 3.0 * est.std_error);
    }

    #[test]
    fn dominant_machine_is_deterministic() {
        let inst = gen_dominant_machine(2, 4, 0.1).unwrap();
        let est = estimate_mech_makespan(&inst, &vcg(), 1000, 5).unwrap();
        assert_relative_eq!(est.mean, 3.6, max_relative = 1e-15);
        assert_eq!(est.std_error, 0.0);

        let rep = ratio(&inst, &vcg(), 1000, 5).unwrap();
        assert_eq!(rep.opt_method, OptEstimateMethod::ExactPerSample);
        assert_relative_eq!(rep.opt_estimate.mean, 2.0);
        assert_relative_eq!(rep.ratio, 1.8, max_relative = 1e-15);
        // general structure: no bounds attach
        assert!(rep.bound_checks.is_empty());
    }

    #[test]
    fn expected_opt_exact_per_sample_examples() {
        let inst = gen_unit_and_small(3, 5).unwrap();
        let (est, used) =
            estimate_expected_opt(&inst, 50, 3, OptEstimateMethod::ExactPerSample).unwrap();
        assert_eq!(used, OptEstimateMethod::ExactPerSample);
        assert_eq!(est.mean, 1.0);
        assert_eq!(est.std_error, 0.0);

        let inst = make_iid(2, 4, Distribution::point_mass(1.0).unwrap()).unwrap();
        let (est, _) =
            estimate_expected_opt(&inst, 50, 3, OptEstimateMethod::ExactPerSample).unwrap();
        assert_eq!(est.mean, 2.0);
    }

    #[test]
    fn expected_opt_lower_bound_example() {
        let inst = make_iid(2, 4, Distribution::uniform(0.0, 1.0).unwrap()).unwrap();
        let (est, used) =
            estimate_expected_opt(&inst, 100, 3, OptEstimateMethod::LowerBound).unwrap();
        assert_eq!(used, OptEstimateMethod::LowerBound);
        assert_relative_eq!(est.mean, 2.0 / 3.0, max_relative = 1e-12);
    }

    #[test]
    fn iid_point_mass_ratio() {
        let inst = make_iid(2, 2, Distribution::point_mass(1.0).unwrap()).unwrap();
        let rep = ratio(&inst, &vcg(), 200_000, 9).unwrap();
        assert_relative_eq!(rep.opt_estimate.mean, 1.0);
        assert!((rep.ratio - 1.5).abs() <= 3.0 * rep.ratio_se);
    }

    #[test]
    fn lower_bound_ratio_dominates_exact_ratio() {
        // denominator lower bound <= exact denominator, so the reported
        // ratio can only grow
        let inst = make_iid(2, 4, Distribution::uniform(0.0, 1.0).unwrap()).unwrap();
        let exact = ratio_with_method(&inst, &vcg(), 50_000, 4, OptEstimateMethod::ExactPerSample)
            .unwrap();
        let lb =
            ratio_with_method(&inst, &vcg(), 50_000, 4, OptEstimateMethod::LowerBound).unwrap();
        assert!(lb.ratio >= exact.ratio - 3.0 * (lb.ratio_se + exact.ratio_se));
    }

    #[test]
    fn bound_values_match_formulas() {
        let info = DistInfo {
            e_min_of_n: Some(1.0 / 11.0),
            stretch: Some(crate::special::harmonic(10)),
            iid_continuous_mhr: true,
        };
        // n=10, m=100: the m >= n^2 constant applies
        let bounds = theoretical_bounds(10, 100, &info);
        let b37 = bounds.iter().find(|b| b.name == "thm37_ratio").unwrap();
        assert_relative_eq!(b37.value, 1.0 + std::f64::consts::SQRT_2);

        // n=10, m=24 >= n ln n: the constant-4 bound and the general form
        let bounds = theoretical_bounds(10, 24, &info);
        assert!(bounds.iter().any(|b| b.name == "cor34_ratio" && b.value == 4.0));
        let b33 = bounds.iter().find(|b| b.name == "thm33_ratio").unwrap();
        assert_relative_eq!(b33.value, 2.0 * (1.0 + 10.0 * 10f64.ln() / 24.0), max_relative = 1e-12);
        assert!((b33.value - 3.9188).abs() < 1e-3);
        assert!(!bounds.iter().any(|b| b.name == "thm35_ratio"));

        // n=10, m=10 <= n ln n: the stretch-based bound, about 3.1446
        let bounds = theoretical_bounds(10, 10, &info);
        let b35 = bounds.iter().find(|b| b.name == "thm35_ratio").unwrap();
        assert!((b35.value - 3.1446).abs() < 1e-3);
        assert!(b35.value <= 4.0);

        // hypotheses unmet: nothing emitted
        assert!(theoretical_bounds(10, 24, &DistInfo::default()).is_empty());
    }

    #[test]
    fn eq3_bound_holds_empirically() {
        for d in [
            Distribution::uniform(0.0, 1.0).unwrap(),
            Distribution::exponential(1.0).unwrap(),
        ] {
            let inst = make_iid(3, 9, d).unwrap();
            let rep = ratio(&inst, &vcg(), 50_000, 21).unwrap();
            let eq3 = rep
                .bound_checks
                .iter()
                .find(|b| b.name == "eq3_makespan_ub")
                .unwrap();
            assert!(eq3.satisfied, "{rep:?}");
        }
    }

    #[test]
    fn ratio_reports_are_reproducible() {
        let inst = make_iid(2, 4, Distribution::uniform(0.0, 1.0).unwrap()).unwrap();
        let a = ratio(&inst, &vcg(), 10_000, 123).unwrap();
        let b = ratio(&inst, &vcg(), 10_000, 123).unwrap();
        assert_eq!(a, b);
    }
}
