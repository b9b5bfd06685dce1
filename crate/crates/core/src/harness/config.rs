//! JSON configuration schema for instances, mechanisms, and sweeps.

use serde::{Deserialize, Serialize};

use crate::distributions::Distribution;
use crate::error::{Error, Result};
use crate::instances::{
    gen_bernoulli_iid, gen_dominant_machine, gen_unit_and_small, SchedulingInstance, Structure,
};
use crate::mechanisms::TieBreak;

use super::OptEstimateMethod;

/// Wire form of a distribution, e.g. `{"kind":"uniform","a":0,"b":1}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DistSpec {
    PointMass { v: f64 },
    Uniform { a: f64, b: f64 },
    Exponential { lambda: f64 },
    TwoPoint { lo: f64, hi: f64, p_hi: f64 },
    FiniteDiscrete { support: Vec<f64>, probs: Vec<f64> },
}

impl DistSpec {
    pub fn build(&self) -> Result<Distribution> {
        match self {
            DistSpec::PointMass { v } => Distribution::point_mass(*v),
            DistSpec::Uniform { a, b } => Distribution::uniform(*a, *b),
            DistSpec::Exponential { lambda } => Distribution::exponential(*lambda),
            DistSpec::TwoPoint { lo, hi, p_hi } => Distribution::two_point(*lo, *hi, *p_hi),
            DistSpec::FiniteDiscrete { support, probs } => {
                Distribution::finite_discrete(support.clone(), probs.clone())
            }
        }
    }

    pub fn from_distribution(d: &Distribution) -> Self {
        match d {
            Distribution::PointMass { v } => DistSpec::PointMass { v: *v },
            Distribution::Uniform { a, b } => DistSpec::Uniform { a: *a, b: *b },
            Distribution::Exponential { rate } => DistSpec::Exponential { lambda: *rate },
            Distribution::TwoPoint { lo, hi, p_hi } => DistSpec::TwoPoint {
                lo: *lo,
                hi: *hi,
                p_hi: *p_hi,
            },
            Distribution::FiniteDiscrete { support, probs } => DistSpec::FiniteDiscrete {
                support: support.clone(),
                probs: probs.clone(),
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorKind {
    UnitAndSmall,
    BernoulliIid,
    DominantMachine,
}

/// Wire form of an instance. Either a named generator,
/// `{"generator":"unit_and_small"}`, or an explicit structure such as
/// `{"structure":"iid","dist":{"kind":"uniform","a":0,"b":1}}`.
/// Machine counts come from the surrounding cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct InstanceSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<GeneratorKind>,
    /// Speed advantage of the dominant machine generator.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub structure: Option<Structure>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dist: Option<DistSpec>,
    /// One law per task (machine-identical structure).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dists_per_task: Option<Vec<DistSpec>>,
    /// Full n x m grid of laws (general structure), row per machine.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dists: Option<Vec<Vec<DistSpec>>>,
    /// Replace point masses by uniforms of this half-width after building.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub smooth: Option<f64>,
}

impl InstanceSpec {
    pub fn iid(dist: DistSpec) -> Self {
        InstanceSpec {
            structure: Some(Structure::Iid),
            dist: Some(dist),
            ..Default::default()
        }
    }

    pub fn generator(kind: GeneratorKind) -> Self {
        InstanceSpec {
            generator: Some(kind),
            ..Default::default()
        }
    }

    pub fn build(&self, n: usize, m: usize) -> Result<SchedulingInstance> {
        let inst = match (&self.generator, &self.structure) {
            (Some(g), None) => match g {
                GeneratorKind::UnitAndSmall => gen_unit_and_small(n, m)?,
                GeneratorKind::BernoulliIid => gen_bernoulli_iid(n, m)?,
                GeneratorKind::DominantMachine => {
                    let eps = self.eps.ok_or_else(|| {
                        Error::InvalidConfig("dominant_machine requires \"eps\"".into())
                    })?;
                    gen_dominant_machine(n, m, eps)?
                }
            },
            (None, Some(structure)) => match structure {
                Structure::Iid => {
                    let d = self
                        .dist
                        .as_ref()
                        .ok_or_else(|| Error::InvalidConfig("iid requires \"dist\"".into()))?;
                    SchedulingInstance::iid(n, m, d.build()?)?
                }
                Structure::MachineIdentical => {
                    let specs = self.dists_per_task.as_ref().ok_or_else(|| {
                        Error::InvalidConfig(
                            "machine_identical requires \"dists_per_task\"".into(),
                        )
                    })?;
                    let dists = specs.iter().map(|s| s.build()).collect::<Result<_>>()?;
                    SchedulingInstance::machine_identical(n, m, dists)?
                }
                Structure::General => {
                    let grid = self.dists.as_ref().ok_or_else(|| {
                        Error::InvalidConfig("general requires \"dists\"".into())
                    })?;
                    let dists = grid
                        .iter()
                        .map(|row| row.iter().map(|s| s.build()).collect::<Result<_>>())
                        .collect::<Result<_>>()?;
                    SchedulingInstance::general(n, m, dists)?
                }
            },
            _ => {
                return Err(Error::InvalidConfig(
                    "give exactly one of \"generator\" or \"structure\"".into(),
                ))
            }
        };
        match self.smooth {
            Some(eps) if eps > 0.0 => inst.smoothed(eps),
            Some(eps) => Err(Error::InvalidConfig(format!(
                "smooth width must be positive, got {eps}"
            ))),
            None => Ok(inst),
        }
    }

    /// Short label for result tables.
    pub fn label(&self) -> String {
        if let Some(g) = &self.generator {
            return match g {
                GeneratorKind::UnitAndSmall => "unit_and_small".into(),
                GeneratorKind::BernoulliIid => "bernoulli_iid".into(),
                GeneratorKind::DominantMachine => "dominant_machine".into(),
            };
        }
        match &self.dist {
            Some(d) => serde_json::to_string(d).unwrap_or_default(),
            None => "explicit".into(),
        }
    }
}

fn default_tie_break() -> TieBreak {
    TieBreak::UniformRandom
}

/// Wire form of a mechanism, tagged by `"mechanism"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mechanism", rename_all = "snake_case", deny_unknown_fields)]
pub enum MechanismSpec {
    Vcg {
        #[serde(default = "default_tie_break")]
        tie_break: TieBreak,
    },
    BoundedOverload {
        c: f64,
        #[serde(default = "default_tie_break")]
        tie_break: TieBreak,
    },
    SieveBo { c: f64, beta: f64, delta: f64 },
}

impl MechanismSpec {
    pub fn name(&self) -> &'static str {
        match self {
            MechanismSpec::Vcg { .. } => "vcg",
            MechanismSpec::BoundedOverload { .. } => "bounded_overload",
            MechanismSpec::SieveBo { .. } => "sieve_bo",
        }
    }

    /// JSON of the parameters minus the tag, for the `params` column.
    pub fn params_json(&self) -> String {
        let mut v = serde_json::to_value(self).unwrap_or_default();
        if let Some(obj) = v.as_object_mut() {
            obj.remove("mechanism");
        }
        serde_json::to_string(&v).unwrap_or_default()
    }
}

/// Task-count entry of a grid: a literal, or an expression in n
/// ("n", "n^2", "4*n").
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TaskCount {
    Literal(u64),
    Expr(String),
}

impl TaskCount {
    pub fn resolve(&self, n: usize) -> Result<usize> {
        match self {
            TaskCount::Literal(m) => Ok(*m as usize),
            TaskCount::Expr(s) => {
                let s = s.trim();
                if s == "n" {
                    return Ok(n);
                }
                if s == "n^2" {
                    return Ok(n * n);
                }
                if let Some(k) = s.strip_suffix("*n").or_else(|| s.strip_suffix("n")) {
                    if let Ok(k) = k.trim().parse::<usize>() {
                        return Ok(k * n);
                    }
                }
                Err(Error::InvalidConfig(format!(
                    "cannot parse task count {s:?}; use an integer, \"n\", \"n^2\", or \"<k>*n\""
                )))
            }
        }
    }
}

/// One experiment cell: an instance and a mechanism at a given size.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellConfig {
    pub n: usize,
    pub m: usize,
    pub instance: InstanceSpec,
    pub mechanism: MechanismSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub opt_method: Option<OptEstimateMethod>,
}

/// Cross-product grid: every (n, m, instance, mechanism) combination.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub n: Vec<usize>,
    pub m: Vec<TaskCount>,
    pub instances: Vec<InstanceSpec>,
    pub mechanisms: Vec<MechanismSpec>,
}

fn default_trials() -> u64 {
    100_000
}

/// Top-level sweep configuration: explicit cells, an optional grid, and
/// defaults applied to both.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    #[serde(default = "default_trials")]
    pub trials: u64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "SweepConfig::default_opt_method")]
    pub opt_method: OptEstimateMethod,
    #[serde(default)]
    pub cells: Vec<CellConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridConfig>,
}

impl SweepConfig {
    fn default_opt_method() -> OptEstimateMethod {
        OptEstimateMethod::Auto
    }

    pub fn from_json(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::InvalidConfig(e.to_string()))
    }

    /// Expanded cell list: explicit cells first, then the grid in
    /// (n, m, instance, mechanism) order, innermost last.
    pub fn expand(&self) -> Result<Vec<CellConfig>> {
        let mut cells = self.cells.clone();
        if let Some(grid) = &self.grid {
            for &n in &grid.n {
                for m_spec in &grid.m {
                    let m = m_spec.resolve(n)?;
                    for instance in &grid.instances {
                        for mechanism in &grid.mechanisms {
                            cells.push(CellConfig {
                                n,
                                m,
                                instance: instance.clone(),
                                mechanism: mechanism.clone(),
                                trials: None,
                                seed: None,
                                opt_method: None,
                            });
                        }
                    }
                }
            }
        }
        Ok(cells)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dist_spec_wire_format() {
        let d: DistSpec = serde_json::from_str(r#"{"kind":"uniform","a":0,"b":1}"#).unwrap();
        assert_eq!(d, DistSpec::Uniform { a: 0.0, b: 1.0 });
        assert_eq!(
            d.build().unwrap(),
            Distribution::uniform(0.0, 1.0).unwrap()
        );
        let d: DistSpec = serde_json::from_str(r#"{"kind":"exponential","lambda":2}"#).unwrap();
        assert_eq!(d.build().unwrap(), Distribution::exponential(2.0).unwrap());
        let d: DistSpec =
            serde_json::from_str(r#"{"kind":"two_point","lo":0,"hi":1,"p_hi":0.5}"#).unwrap();
        assert!(d.build().is_ok());
        // invalid parameters surface as build errors
        let d: DistSpec = serde_json::from_str(r#"{"kind":"uniform","a":2,"b":1}"#).unwrap();
        assert!(d.build().is_err());
        // round trip through the constructor mapping
        let orig = Distribution::exponential(3.0).unwrap();
        assert_eq!(DistSpec::from_distribution(&orig).build().unwrap(), orig);
    }

    #[test]
    fn instance_spec_forms() {
        let spec: InstanceSpec = serde_json::from_str(
            r#"{"structure":"iid","dist":{"kind":"uniform","a":0,"b":1}}"#,
        )
        .unwrap();
        let inst = spec.build(2, 4).unwrap();
        assert_eq!(inst.structure(), Structure::Iid);

        let spec: InstanceSpec =
            serde_json::from_str(r#"{"generator":"unit_and_small"}"#).unwrap();
        assert_eq!(spec.label(), "unit_and_small");
        assert!(spec.build(3, 5).is_ok());

        let spec: InstanceSpec =
            serde_json::from_str(r#"{"generator":"dominant_machine","eps":0.1}"#).unwrap();
        assert!(spec.build(2, 4).is_ok());

        // missing eps
        let spec: InstanceSpec =
            serde_json::from_str(r#"{"generator":"dominant_machine"}"#).unwrap();
        assert!(spec.build(2, 4).is_err());

        // neither generator nor structure
        let spec: InstanceSpec = serde_json::from_str(r#"{}"#).unwrap();
        assert!(spec.build(2, 4).is_err());

        // smoothing produces continuous cells
        let spec: InstanceSpec =
            serde_json::from_str(r#"{"generator":"unit_and_small","smooth":0.001}"#).unwrap();
        let inst = spec.build(2, 4).unwrap();
        assert!(inst.task_dist(0).unwrap().is_continuous());
    }

    #[test]
    fn mechanism_spec_wire_format() {
        let m: MechanismSpec =
            serde_json::from_str(r#"{"mechanism":"vcg","tie_break":"uniform_random"}"#).unwrap();
        assert_eq!(m.name(), "vcg");
        let m: MechanismSpec =
            serde_json::from_str(r#"{"mechanism":"bounded_overload","c":2}"#).unwrap();
        assert_eq!(m.name(), "bounded_overload");
        assert!(m.params_json().contains("\"c\":2"));
        let m: MechanismSpec =
            serde_json::from_str(r#"{"mechanism":"sieve_bo","c":2,"beta":0.5,"delta":0.25}"#)
                .unwrap();
        assert_eq!(m.name(), "sieve_bo");
    }

    #[test]
    fn task_count_expressions() {
        assert_eq!(TaskCount::Literal(7).resolve(3).unwrap(), 7);
        assert_eq!(TaskCount::Expr("n".into()).resolve(5).unwrap(), 5);
        assert_eq!(TaskCount::Expr("n^2".into()).resolve(5).unwrap(), 25);
        assert_eq!(TaskCount::Expr("4*n".into()).resolve(5).unwrap(), 20);
        assert_eq!(TaskCount::Expr("4n".into()).resolve(5).unwrap(), 20);
        assert!(TaskCount::Expr("m+1".into()).resolve(5).is_err());
    }

    #[test]
    fn sweep_config_expansion_order() {
        let cfg = SweepConfig::from_json(
            r#"{
                "seed": 1,
                "grid": {
                    "n": [4, 8],
                    "m": ["n"],
                    "instances": [{"generator": "unit_and_small"}],
                    "mechanisms": [{"mechanism": "vcg"}]
                }
            }"#,
        )
        .unwrap();
        let cells = cfg.expand().unwrap();
        assert_eq!(cells.len(), 2);
        assert_eq!((cells[0].n, cells[0].m), (4, 4));
        assert_eq!((cells[1].n, cells[1].m), (8, 8));
        assert_eq!(cfg.trials, 100_000);
    }

    #[test]
    fn empty_config_expands_to_nothing() {
        let cfg = SweepConfig::from_json(r#"{}"#).unwrap();
        assert!(cfg.expand().unwrap().is_empty());
    }

    #[test]
    fn bad_json_is_a_config_error() {
        assert!(matches!(
            SweepConfig::from_json("{nope"),
            Err(Error::InvalidConfig(_))
        ));
        assert!(matches!(
            SweepConfig::from_json(r#"{"unknown_field": 1}"#),
            Err(Error::InvalidConfig(_))
        ));
    }
}
