//! Scheduling instances (n machines, m >= n tasks, per-cell distributions)
//! and realized time matrices, including the hard instance families.

use crate::distributions::Distribution;
use crate::error::{Error, Result};
use crate::rng::RandomStream;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Structure {
    General,
    MachineIdentical,
    Iid,
}

impl std::fmt::Display for Structure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Structure::General => "general",
            Structure::MachineIdentical => "machine_identical",
            Structure::Iid => "iid",
        })
    }
}

#[derive(Debug, Clone)]
enum Cells {
    /// One law for all n·m cells.
    Iid(Distribution),
    /// One law per task, shared by all machines.
    PerTask(Vec<Distribution>),
    /// Row-major n×m grid of laws.
    General(Vec<Vec<Distribution>>),
}

/// An n-machine, m-task stochastic scheduling instance.
#[derive(Debug, Clone)]
pub struct SchedulingInstance {
    n: usize,
    m: usize,
    cells: Cells,
}

impl SchedulingInstance {
    fn require_m_ge_n(n: usize, m: usize) -> Result<()> {
        if n == 0 || m == 0 {
            return Err(Error::InvalidInstance("n and m must be positive".into()));
        }
        if m < n {
            return Err(Error::TooFewTasks { n, m });
        }
        Ok(())
    }

    /// All n·m processing times i.i.d. from one law.
    pub fn iid(n: usize, m: usize, dist: Distribution) -> Result<Self> {
        Self::require_m_ge_n(n, m)?;
        dist.validate()?;
        Ok(SchedulingInstance {
            n,
            m,
            cells: Cells::Iid(dist),
        })
    }

    /// Machine-identical: task j is drawn from `dists[j]` on every machine.
    pub fn machine_identical(n: usize, m: usize, dists: Vec<Distribution>) -> Result<Self> {
        Self::require_m_ge_n(n, m)?;
        if dists.len() != m {
            return Err(Error::InvalidInstance(format!(
                "need one distribution per task: got {} for m = {m}",
                dists.len()
            )));
        }
        for d in &dists {
            d.validate()?;
        }
        Ok(SchedulingInstance {
            n,
            m,
            cells: Cells::PerTask(dists),
        })
    }

    /// Fully general per-(machine, task) laws, row-major.
    pub fn general(n: usize, m: usize, dists: Vec<Vec<Distribution>>) -> Result<Self> {
        Self::require_m_ge_n(n, m)?;
        if dists.len() != n || dists.iter().any(|row| row.len() != m) {
            return Err(Error::InvalidInstance("distribution grid must be n x m".into()));
        }
        for row in &dists {
            for d in row {
                d.validate()?;
            }
        }
        Ok(SchedulingInstance {
            n,
            m,
            cells: Cells::General(dists),
        })
    }

    pub fn machines(&self) -> usize {
        self.n
    }

    pub fn tasks(&self) -> usize {
        self.m
    }

    pub fn structure(&self) -> Structure {
        match &self.cells {
            Cells::Iid(_) => Structure::Iid,
            Cells::PerTask(_) => Structure::MachineIdentical,
            Cells::General(_) => Structure::General,
        }
    }

    pub fn is_machine_identical(&self) -> bool {
        !matches!(self.cells, Cells::General(_))
    }

    pub fn dist(&self, machine: usize, task: usize) -> &Distribution {
        match &self.cells {
            Cells::Iid(d) => d,
            Cells::PerTask(ds) => &ds[task],
            Cells::General(grid) => &grid[machine][task],
        }
    }

    /// Per-task law of a machine-identical instance.
    pub fn task_dist(&self, task: usize) -> Result<&Distribution> {
        match &self.cells {
            Cells::Iid(d) => Ok(d),
            Cells::PerTask(ds) => Ok(&ds[task]),
            Cells::General(_) => Err(Error::NotMachineIdentical),
        }
    }

    /// Draw one realized matrix, each cell independent.
    pub fn sample_matrix(&self, rng: &mut RandomStream) -> TimeMatrix {
        let mut times = Vec::with_capacity(self.n * self.m);
        for i in 0..self.n {
            for j in 0..self.m {
                times.push(self.dist(i, j).sample(rng));
            }
        }
        TimeMatrix {
            n: self.n,
            m: self.m,
            times,
        }
    }

    /// Replace every point mass with a narrow uniform of half-width eps
    /// (clamped at zero), yielding a continuous variant of the instance.
    pub fn smoothed(&self, eps: f64) -> Result<Self> {
        let cells = match &self.cells {
            Cells::Iid(d) => Cells::Iid(d.smoothed(eps)?),
            Cells::PerTask(ds) => Cells::PerTask(
                ds.iter().map(|d| d.smoothed(eps)).collect::<Result<_>>()?,
            ),
            Cells::General(grid) => Cells::General(
                grid.iter()
                    .map(|row| row.iter().map(|d| d.smoothed(eps)).collect::<Result<_>>())
                    .collect::<Result<_>>()?,
            ),
        };
        Ok(SchedulingInstance {
            n: self.n,
            m: self.m,
            cells,
        })
    }
}

/// Shorthand for [`SchedulingInstance::iid`].
pub fn make_iid(n: usize, m: usize, dist: Distribution) -> Result<SchedulingInstance> {
    SchedulingInstance::iid(n, m, dist)
}

/// n−1 unit tasks plus m−n+1 tasks of weight 1/(m−n+1), machine-identical
/// point masses. Every realization has optimal makespan exactly 1, while a
/// myopic allocation faces an n-ball/n-bin tie pattern on the unit tasks.
pub fn gen_unit_and_small(n: usize, m: usize) -> Result<SchedulingInstance> {
    if n < 2 {
        return Err(Error::InvalidInstance(
            "unit-and-small needs at least 2 machines".into(),
        ));
    }
    SchedulingInstance::require_m_ge_n(n, m)?;
    let small = 1.0 / (m - n + 1) as f64;
    let mut dists = Vec::with_capacity(m);
    for _ in 0..n - 1 {
        dists.push(Distribution::point_mass(1.0)?);
    }
    for _ in 0..m - n + 1 {
        dists.push(Distribution::point_mass(small)?);
    }
    SchedulingInstance::machine_identical(n, m, dists)
}

/// The probability (n/2m)^(1/n) of the hard Bernoulli family.
pub fn bernoulli_p(n: usize, m: usize) -> f64 {
    (n as f64 / (2.0 * m as f64)).powf(1.0 / n as f64)
}

/// i.i.d. two-point tasks: time 1 with probability (n/2m)^(1/n), else 0.
pub fn gen_bernoulli_iid(n: usize, m: usize) -> Result<SchedulingInstance> {
    SchedulingInstance::require_m_ge_n(n, m)?;
    let p = bernoulli_p(n, m);
    SchedulingInstance::iid(n, m, Distribution::two_point(0.0, 1.0, p)?)
}

/// One machine faster by a factor (1−eps) on every task, the rest at unit
/// speed. Task-identical but not machine-identical.
pub fn gen_dominant_machine(n: usize, m: usize, eps: f64) -> Result<SchedulingInstance> {
    if !(0.0..1.0).contains(&eps) || eps <= 0.0 {
        return Err(Error::InvalidInstance(format!(
            "eps must lie in (0, 1), got {eps}"
        )));
    }
    SchedulingInstance::require_m_ge_n(n, m)?;
    let fast = Distribution::point_mass(1.0 - eps)?;
    let slow = Distribution::point_mass(1.0)?;
    let grid = (0..n)
        .map(|i| vec![if i == 0 { fast.clone() } else { slow.clone() }; m])
        .collect();
    SchedulingInstance::general(n, m, grid)
}

/// One realized matrix of nonnegative processing times. Entries may be +inf
/// only where a thresholding step deliberately placed them.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeMatrix {
    n: usize,
    m: usize,
    times: Vec<f64>,
}

impl TimeMatrix {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows[0].is_empty() {
            return Err(Error::ShapeMismatch("matrix must be nonempty".into()));
        }
        let m = rows[0].len();
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        let times: Vec<f64> = rows.into_iter().flatten().collect();
        if times.iter().any(|t| t.is_nan() || *t < 0.0) {
            return Err(Error::ShapeMismatch(
                "entries must be nonnegative and not NaN".into(),
            ));
        }
        Ok(TimeMatrix { n, m, times })
    }

    pub fn machines(&self) -> usize {
        self.n
    }

    pub fn tasks(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn time(&self, machine: usize, task: usize) -> f64 {
        self.times[machine * self.m + task]
    }

    pub fn set_time(&mut self, machine: usize, task: usize, value: f64) {
        self.times[machine * self.m + task] = value;
    }

    pub fn row(&self, machine: usize) -> &[f64] {
        &self.times[machine * self.m..(machine + 1) * self.m]
    }

    pub fn is_finite(&self) -> bool {
        self.times.iter().all(|t| t.is_finite())
    }

    /// True when every column is constant across machines (exact equality).
    pub fn is_column_constant(&self) -> bool {
        (0..self.m).all(|j| (1..self.n).all(|i| self.time(i, j) == self.time(0, j)))
    }

    /// Column minima, the per-task best times.
    pub fn column_min(&self, task: usize) -> f64 {
        (0..self.n)
            .map(|i| self.time(i, task))
            .fold(f64::INFINITY, f64::min)
    }
}
