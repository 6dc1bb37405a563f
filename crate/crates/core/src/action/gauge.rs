use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{action_zero_mode_oracle, index_pairing, ActionReport, IndexReport};
use crate::error::ActionError;
use crate::spin::{gauge_transform, GaugeField, UnitaryElement};

/// Defect of the gauge law `S(A^u) = S(A) + 2πk·ind(PuP)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GaugeCheckReport {
    pub before: ActionReport,
    pub after: ActionReport,
    pub index: IndexReport,
    /// `S(A^u) − S(A) − 2πk·ind`.
    pub defect: Complex64,
    /// `|defect| / (1 + |S(A)|)`.
    pub relative_defect: f64,
}

impl GaugeCheckReport {
    pub fn within(&self, tolerance: f64) -> bool {
        self.relative_defect <= tolerance
    }
}

pub fn check_gauge_invariance(field: &GaugeField, u: &UnitaryElement, level: i64) -> Result<GaugeCheckReport, ActionError> {
    let before = action_zero_mode_oracle(field, level)?;
    let transformed = gauge_transform(field, u)?;
    let after = action_zero_mode_oracle(&transformed, level)?;
    let index = index_pairing(u)?;
    let shift = 2.0 * PI * level as f64 * index.index as f64;
    let defect = after.total - before.total - Complex64::new(shift, 0.0);
    let relative_defect = defect.norm() / (1.0 + before.total.norm());
    Ok(GaugeCheckReport { before, after, index, defect, relative_defect })
}
