//! Serializable view of a [`ShotEstimate`].

use serde::Serialize;

use super::ShotEstimate;
use crate::scalar::{Real, C};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
}

impl<T: Real> From<C<T>> for ComplexValue {
    fn from(z: C<T>) -> Self {
        ComplexValue {
            re: z.re.to_f64_lossy(),
            im: z.im.to_f64_lossy(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormalizationFactor {
    pub name: &'static str,
    pub value: f64,
}

/// `estimate = raw · total`, or `√(raw · total)` when `sqrt` is set.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormalizationReport {
    pub factors: Vec<NormalizationFactor>,
    pub total: f64,
    pub sqrt: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EstimateReport {
    pub command: String,
    pub method: String,
    pub estimate: ComplexValue,
    pub abs: f64,
    pub stderr: f64,
    pub stderr_im: f64,
    pub shots: u64,
    pub seed: Option<u64>,
    pub normalization: NormalizationReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<ComplexValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub success_probability: Option<f64>,
    pub oracle_queries: u64,
    pub clamped: bool,
}

impl EstimateReport {
    /// `exact` is kept only when `with_exact` is set or the estimate was
    /// computed in exact mode.
    pub fn new<T: Real>(command: &str, method: &str, est: &ShotEstimate<T>, with_exact: bool) -> Self {
        let keep_exact = with_exact || est.shots == 0;
        EstimateReport {
            command: command.to_string(),
            method: method.to_string(),
            estimate: est.estimate.into(),
            abs: est.abs().to_f64_lossy(),
            stderr: est.standard_error.to_f64_lossy(),
            stderr_im: est.standard_error_imag.to_f64_lossy(),
            shots: est.shots,
            seed: est.seed,
            normalization: NormalizationReport {
                factors: est
                    .normalization
                    .factors
                    .iter()
                    .map(|&(name, value)| NormalizationFactor {
                        name,
                        value: value.to_f64_lossy(),
                    })
                    .collect(),
                total: est.normalization.total().to_f64_lossy(),
                sqrt: est.normalization.sqrt,
            },
            exact: est.exact_value.filter(|_| keep_exact).map(Into::into),
            success_probability: est.success_probability.map(|p| p.to_f64_lossy()),
            oracle_queries: est.oracle_queries,
            clamped: est.clamped,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimators::Normalization;

    #[test]
    fn exact_mode_json_shape() {
        let est = ShotEstimate::exact(C::new(4.0, 0.0), Normalization::linear(vec![("s", 1.0), ("N", 4.0)]), 4);
        let json = serde_json::to_value(EstimateReport::new("trace", "entangled", &est, false)).unwrap();
        assert_eq!(json["estimate"]["re"], 4.0);
        assert_eq!(json["exact"]["re"], 4.0);
        assert_eq!(json["stderr"], 0.0);
        assert!(json["seed"].is_null());
        assert_eq!(json["normalization"]["total"], 4.0);
        assert!(json.get("success_probability").is_none());
    }
}
