//! Flat result rows and the CSV/JSON writers.

use serde::Serialize;

use crate::error::{Error, Result};

use super::config::CellConfig;
use super::RatioReport;

/// One output row. A cell with k attached bound checks produces k rows
/// (estimates repeated); a cell with none produces a single row with the
/// bound columns empty.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub m: usize,
    pub structure: String,
    pub dist: String,
    pub mechanism: String,
    pub params: String,
    pub mech_mean: Option<f64>,
    pub mech_se: Option<f64>,
    pub opt_mean: Option<f64>,
    pub opt_se: Option<f64>,
    pub opt_method: Option<String>,
    pub ratio: Option<f64>,
    pub bound_name: Option<String>,
    pub bound_value: Option<f64>,
    pub bound_satisfied: Option<bool>,
    pub error: Option<String>,
}

fn base_row(cell: &CellConfig) -> SweepRow {
    let structure = match (&cell.instance.generator, &cell.instance.structure) {
        (Some(_), _) => cell.instance.label(),
        (None, Some(s)) => s.to_string(),
        (None, None) => String::new(),
    };
    SweepRow {
        n: cell.n,
        m: cell.m,
        structure,
        dist: cell.instance.label(),
        mechanism: cell.mechanism.name().to_string(),
        params: cell.mechanism.params_json(),
        mech_mean: None,
        mech_se: None,
        opt_mean: None,
        opt_se: None,
        opt_method: None,
        ratio: None,
        bound_name: None,
        bound_value: None,
        bound_satisfied: None,
        error: None,
    }
}

pub(super) fn rows_for_report(cell: &CellConfig, report: &RatioReport) -> Vec<SweepRow> {
    let mut filled = base_row(cell);
    filled.mech_mean = Some(report.mech_estimate.mean);
    filled.mech_se = Some(report.mech_estimate.std_error);
    filled.opt_mean = Some(report.opt_estimate.mean);
    filled.opt_se = Some(report.opt_estimate.std_error);
    filled.opt_method = Some(report.opt_method.to_string());
    filled.ratio = Some(report.ratio);
    if report.bound_checks.is_empty() {
        return vec![filled];
    }
    report
        .bound_checks
        .iter()
        .map(|b| {
            let mut row = filled.clone();
            row.bound_name = Some(b.name.clone());
            row.bound_value = Some(b.bound_value);
            row.bound_satisfied = Some(b.satisfied);
            row
        })
        .collect()
}

pub(super) fn error_row(cell: &CellConfig, err: &Error) -> SweepRow {
    let mut row = base_row(cell);
    row.error = Some(err.to_string());
    row
}

/// Serialize rows as CSV with a header. Output is bit-identical for
/// identical inputs.
pub fn to_csv(rows: &[SweepRow]) -> Result<String> {
    let mut wtr = csv::Writer::from_writer(Vec::new());
    for row in rows {
        wtr.serialize(row)
            .map_err(|e| Error::InvalidConfig(format!("csv serialization: {e}")))?;
    }
    let bytes = wtr
        .into_inner()
        .map_err(|e| Error::InvalidConfig(format!("csv flush: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::InvalidConfig(format!("csv utf8: {e}")))
}

/// Serialize rows as a JSON array, pretty-printed.
pub fn to_json(rows: &[SweepRow]) -> Result<String> {
    serde_json::to_string_pretty(rows).map_err(|e| Error::InvalidConfig(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::super::config::{InstanceSpec, MechanismSpec, SweepConfig};
    use super::super::sweep;
    use super::*;
    use crate::mechanisms::TieBreak;

    fn cell() -> CellConfig {
        CellConfig {
            n: 2,
            m: 2,
            instance: InstanceSpec::generator(super::super::config::GeneratorKind::UnitAndSmall),
            mechanism: MechanismSpec::Vcg {
                tie_break: TieBreak::UniformRandom,
            },
            trials: Some(1000),
            seed: Some(1),
            opt_method: None,
        }
    }

    #[test]
    fn csv_header_columns() {
        let row = base_row(&cell());
        let csv = to_csv(&[row]).unwrap();
        let header = csv.lines().next().unwrap();
        assert_eq!(
            header,
            "n,m,structure,dist,mechanism,params,mech_mean,mech_se,opt_mean,opt_se,\
             opt_method,ratio,bound_name,bound_value,bound_satisfied,error"
        );
    }

    #[test]
    fn sweep_is_deterministic_and_continues_past_errors() {
        let cfg = SweepConfig::from_json(
            r#"{
                "trials": 2000,
                "seed": 5,
                "cells": [
                    {"n": 4, "m": 2,
                     "instance": {"generator": "unit_and_small"},
                     "mechanism": {"mechanism": "vcg"}},
                    {"n": 2, "m": 2,
                     "instance": {"generator": "unit_and_small"},
                     "mechanism": {"mechanism": "vcg"}}
                ]
            }"#,
        )
        .unwrap();
        let rows1 = sweep(&cfg).unwrap();
        let rows2 = sweep(&cfg).unwrap();
        assert_eq!(to_csv(&rows1).unwrap(), to_csv(&rows2).unwrap());
        // first cell has m < n and must carry an error, second succeeds
        assert!(rows1[0].error.is_some());
        assert!(rows1.last().unwrap().error.is_none());
        assert!(rows1.last().unwrap().ratio.is_some());
    }

    #[test]
    fn empty_sweep_yields_empty_table() {
        let cfg = SweepConfig::from_json(r#"{}"#).unwrap();
        let rows = sweep(&cfg).unwrap();
        assert!(rows.is_empty());
        assert_eq!(to_csv(&rows).unwrap(), "");
        assert_eq!(to_json(&rows).unwrap(), "[]");
    }
}
