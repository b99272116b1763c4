//! Independent numerical cross-checks of the closed forms: forward Laplace
//! quadrature, Wright-kernel subordination, residuals of the governing
//! fractional equations, and the named identity suite used by `fracpois verify`.

mod caputo;
mod laplace;
mod subordination;
pub mod suite;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

pub use caputo::{caputo_refinement, caputo_residual, Refinement, MAX_RATIO};
pub use laplace::{
    gml_transform_pair, laplace_forward, pmf_transform, renewal_transform, try_laplace_forward, verify_transform_pairs,
    waiting_time_cdf_transform, waiting_time_pdf_transform,
};
pub use subordination::{gml_laplace_identity, subordination_pmf};
pub use suite::{check_names, run_check, run_suite};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    Linear,
    Logarithmic,
}

/// Time grid `t_min..=t_max` with `points` nodes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub t_min: f64,
    pub t_max: f64,
    pub points: usize,
    pub spacing: Spacing,
}

impl GridSpec {
    pub fn linear(t_min: f64, t_max: f64, points: usize) -> Result<Self> {
        let g = GridSpec { t_min, t_max, points, spacing: Spacing::Linear };
        g.validate()?;
        Ok(g)
    }

    pub fn logarithmic(t_min: f64, t_max: f64, points: usize) -> Result<Self> {
        let g = GridSpec { t_min, t_max, points, spacing: Spacing::Logarithmic };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t_min > 0.0 && self.t_min < self.t_max && self.t_max.is_finite()) {
            return Err(invalid(format!("grid needs 0 < t_min < t_max, got [{}, {}]", self.t_min, self.t_max)));
        }
        if self.points < 2 {
            return Err(invalid(format!("grid needs at least 2 points, got {}", self.points)));
        }
        Ok(())
    }

    /// The grid nodes, endpoints included.
    pub fn nodes(&self) -> Vec<f64> {
        let m = (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                let f = i as f64 / m;
                match self.spacing {
                    Spacing::Linear => self.t_min + f * (self.t_max - self.t_min),
                    Spacing::Logarithmic => (self.t_min.ln() + f * (self.t_max / self.t_min).ln()).exp(),
                }
            })
            .collect()
    }
}
