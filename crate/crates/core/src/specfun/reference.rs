//! Independent high-precision reference values for J0, J1, K0, K1.
//!
//! The table was produced once with mpmath at 40 digits by
//! `scripts/gen_specfun_oracle.py`; it is data, not an implementation.

use serde::Serialize;

use super::SpecialFunction;

pub const ORACLE_CSV: &str = include_str!("../../data/specfun_oracle.csv");

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleEntry {
    pub function: SpecialFunction,
    pub x: f64,
    pub value: f64,
}

pub fn oracle_table() -> Vec<OracleEntry> {
    ORACLE_CSV
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("function"))
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let mut it = l.split(',');
            let function = SpecialFunction::from_name(it.next().unwrap_or_default())
                .expect("known function name in oracle table");
            let x = it.next().and_then(|s| s.parse().ok()).expect("x column");
            let value = it.next().and_then(|s| s.parse().ok()).expect("value column");
            OracleEntry { function, x, value }
        })
        .collect()
}

/// Error metric of the accuracy contract: absolute-over-max(1, |ref|) for
/// the oscillatory J functions, plain relative for K.
pub fn contract_error(function: SpecialFunction, got: f64, reference: f64) -> f64 {
    let diff = (got - reference).abs();
    match function {
        SpecialFunction::J0 | SpecialFunction::J1 => diff / reference.abs().max(1.0),
        SpecialFunction::K0 | SpecialFunction::K1 => {
            if reference == 0.0 {
                diff
            } else {
                diff / reference.abs()
            }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleComparison {
    pub function: SpecialFunction,
    pub x: f64,
    pub reference: f64,
    pub value: f64,
    pub error: f64,
}

pub fn compare_with_oracle() -> Vec<OracleComparison> {
    oracle_table()
        .into_iter()
        .map(|e| {
            let value = e.function.value(e.x);
            OracleComparison {
                function: e.function,
                x: e.x,
                reference: e.value,
                value,
                error: contract_error(e.function, value, e.value),
            }
        })
        .collect()
}
