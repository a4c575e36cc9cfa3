//! Condition checks for the operator-field description of `C*(G)`: limit
//! sets and the limit representation `σ`, decay of the condition-(3) defect
//! along net prefixes, and vanishing at infinity.

pub mod cube;
pub mod finite;
pub mod limit;
pub mod motion;
pub mod scenario;
pub mod vanish;

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::catalog::Check;

pub use finite::{condition3_defect, FiniteNet};
pub use limit::{
    limit_set, sigma_limit, FourierField, LimitDecomposition, LimitEntry, LimitSet, OperatorField,
};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecayRow {
    /// Net index `m`, or the radius `r` in the motion scenario.
    pub index: f64,
    pub defect: f64,
    /// Largest change under quadrature doubling, where a quadrature exists.
    pub refinement_delta: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecayTable {
    pub scenario: String,
    pub metadata: serde_json::Map<String, serde_json::Value>,
    pub rows: Vec<DecayRow>,
}

impl DecayTable {
    pub fn new(scenario: &str) -> Self {
        Self {
            scenario: scenario.to_string(),
            metadata: serde_json::Map::new(),
            rows: Vec::new(),
        }
    }

    pub fn with_meta(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.metadata.insert(key.to_string(), value.into());
        self
    }

    pub fn defects(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.defect).collect()
    }

    /// Columns `index, defect, refinement_defect_delta`; values in `{:.16e}`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,defect,refinement_defect_delta\n");
        for row in &self.rows {
            let delta = row
                .refinement_delta
                .map(|d| format!("{d:.16e}"))
                .unwrap_or_default();
            writeln!(out, "{},{:.16e},{}", row.index, row.defect, delta)
                .expect("writing to a String");
        }
        out
    }
}

/// Which net rows receive a synthetic perturbation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowSelector {
    Odd,
    Even,
    All,
}

/// Replaces `F(μ_m, χ_m)` by `F(μ_m, χ_m) + shift·I` on the selected rows,
/// which adds `shift·P_{μ_m}` to the embedded operator.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Perturbation {
    pub shift: f64,
    pub rows: RowSelector,
}

impl Perturbation {
    pub fn applies(&self, m: usize) -> bool {
        match self.rows {
            RowSelector::Odd => m % 2 == 1,
            RowSelector::Even => m.is_multiple_of(2),
            RowSelector::All => true,
        }
    }
}

/// Checks that the whole table is non-increasing (with slack `slack`) and
/// that the last defect is at most `max(abs_tol, rel_tol · first)`.
pub fn decay_checks(table: &DecayTable, abs_tol: f64, rel_tol: f64, slack: f64) -> Vec<Check> {
    let d = table.defects();
    let worst_rise = d.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max);
    let mut checks = vec![Check::new("non_increasing_max_rise", worst_rise, slack)];
    if let (Some(&first), Some(&last)) = (d.first(), d.last()) {
        checks.push(Check::new(
            "final_defect",
            last,
            abs_tol.max(rel_tol * first),
        ));
    }
    checks
}

/// Largest `d[i+1] − d[i]` as a check that must be strictly negative.
pub fn strict_decrease_check(table: &DecayTable) -> Check {
    let d = table.defects();
    let worst = d
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::NEG_INFINITY, f64::max);
    Check {
        name: "strictly_decreasing_max_step".into(),
        defect: worst,
        tolerance: 0.0,
        pass: worst < 0.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(values: &[f64]) -> DecayTable {
        let mut t = DecayTable::new("t");
        t.rows = values
            .iter()
            .enumerate()
            .map(|(i, &d)| DecayRow {
                index: (i + 1) as f64,
                defect: d,
                refinement_delta: None,
            })
            .collect();
        t
    }

    #[test]
    fn alternating_table_fails_monotonicity() {
        let checks = decay_checks(&table(&[0.5, 0.0, 0.5, 0.0]), 1e-10, 1.0, 0.0);
        assert!(!checks[0].pass);
    }

    #[test]
    fn zero_table_passes() {
        let checks = decay_checks(&table(&[0.0; 5]), 1e-10, 1.0, 0.0);
        assert!(checks.iter().all(|c| c.pass));
    }

    #[test]
    fn strict_decrease_rejects_plateaus() {
        assert!(!strict_decrease_check(&table(&[0.5, 0.5, 0.1])).pass);
        assert!(strict_decrease_check(&table(&[0.5, 0.4, 0.1])).pass);
    }

    #[test]
    fn csv_has_header_and_rows() {
        let csv = table(&[0.25]).to_csv();
        assert_eq!(
            csv,
            "index,defect,refinement_defect_delta\n1,2.5000000000000000e-1,\n"
        );
    }
}
