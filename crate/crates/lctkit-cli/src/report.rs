//! Serializable report types emitted by the commands. Field order is
//! fixed by the struct definitions so reports are byte-stable across
//! runs with the same inputs.

use lctkit::nalgebra::DMatrix;
use serde::Serialize;

use lctkit::io::MatrixJson;
use lctkit::signal::Grid1d;
use lctkit::uncertainty::CovarianceReport;

#[derive(Serialize)]
pub struct TransformMeta {
    pub matrix: MatrixJson,
    pub branch: String,
    pub oversample: usize,
    pub input: String,
    pub output_grid: Grid1d,
}

#[derive(Serialize)]
pub struct RadonMeta {
    pub a: f64,
    pub b: f64,
    pub offsets: Grid1d,
}

#[derive(Serialize)]
pub struct GenMeta {
    pub spec: String,
    pub grid: Grid1d,
}

fn flat(m: &DMatrix<f64>) -> Vec<f64> {
    m.row_iter()
        .flat_map(|r| r.iter().cloned().collect::<Vec<_>>())
        .collect()
}

#[derive(Serialize)]
pub struct CovarianceJson {
    pub sigma: Vec<f64>,
    pub upsilon: Vec<f64>,
    pub omega: Vec<f64>,
    pub min_eig: f64,
    pub scalar_slack: f64,
    pub positive_semidefinite: bool,
    /// Υ recomputed from the ϑ-Wigner moments, for cross-validation.
    pub upsilon_direct: Vec<f64>,
    pub upsilon_cross_residual: f64,
}

impl CovarianceJson {
    pub fn build(rep: &CovarianceReport, direct: &DMatrix<f64>) -> Self {
        Self {
            sigma: flat(&rep.sigma),
            upsilon: flat(&rep.upsilon),
            omega: flat(rep.omega.omega()),
            min_eig: rep.min_eig,
            scalar_slack: rep.scalar_slack,
            positive_semidefinite: rep.positive_semidefinite(),
            upsilon_direct: flat(direct),
            upsilon_cross_residual: (&rep.upsilon - direct).amax(),
        }
    }
}
