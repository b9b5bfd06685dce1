use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("no closed form for this distribution kind; use monte_carlo_order_stat")]
    NoClosedForm,

    #[error("point {0} is outside the support of the discrete distribution")]
    OutsideSupport(f64),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("task count m = {m} must be at least the machine count n = {n}")]
    TooFewTasks { n: usize, m: usize },

    #[error("enumeration budget exceeded ({size} states > {budget}); {fallback}")]
    BudgetExceeded {
        size: u128,
        budget: u128,
        fallback: &'static str,
    },

    #[error("task {task} has no finite processing time on any machine")]
    AllInfiniteColumn { task: usize },

    #[error("infeasible capacity: {n} machines with cap {cap} cannot host {m} tasks")]
    InfeasibleCapacity { n: usize, m: usize, cap: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid mechanism parameters: {0}")]
    InvalidParams(String),

    #[error("operation requires machine-identical structure")]
    NotMachineIdentical,

    #[error("operation requires a continuous distribution")]
    NotContinuous,

    #[error("majorization check requires the shorter vector first (got {m} > {m_prime})")]
    MajorizationOrder { m: usize, m_prime: usize },

    #[error("invalid config: {0}")]
    InvalidConfig(String),

    #[error("trial {trial} failed: {source}")]
    TrialFailed {
        trial: u64,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn at_trial(self, trial: u64) -> Error {
        Error::TrialFailed {
            trial,
            source: Box::new(self),
        }
    }
}
