//! Gaussian soft-assignment maps over centered spectra.

use alloc::vec::Vec;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::error::{Error, Result};

/// Grid of blending weights in `(0, 1]`, oriented for DC-centered spectra.
///
/// The Gaussian constructor produces `exp(-D^2 / (2 * d0^2))` where `D` is
/// the distance from bin `(u, v)` to the center bin: weight 1 at the
/// center, decaying radially, never reaching 0. The cut-off `d0` is the
/// radius at which the weight falls to `e^{-1/2}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SoftAssignmentMap {
    height: usize,
    width: usize,
    cutoff: Option<f64>,
    weights: Vec<f64>,
}

impl SoftAssignmentMap {
    /// Gaussian low-pass weight map with cut-off frequency `d0` (in bins).
    pub fn gaussian(height: usize, width: usize, d0: f64) -> Result<Self> {
        if height == 0 || width == 0 {
            return Err(Error::EmptyImage { height, width });
        }
        if !(d0 > 0.0) || !d0.is_finite() {
            return Err(Error::InvalidCutoff(d0));
        }
        let denom = 2.0 * d0 * d0;
        let mut weights = Vec::with_capacity(height * width);
        for u in 0..height {
            for v in 0..width {
                let d2 = squared_center_distance(height, width, u, v);
                weights.push((-d2 / denom).exp());
            }
        }
        Ok(Self {
            height,
            width,
            cutoff: Some(d0),
            weights,
        })
    }

    /// Arbitrary weight grid, for callers substituting their own map.
    ///
    /// Only the grid shape is validated; the Gaussian guarantees
    /// (positivity, radial monotonicity) do not apply.
    pub fn from_weights(height: usize, width: usize, weights: Vec<f64>) -> Result<Self> {
        if height == 0 || width == 0 {
            return Err(Error::EmptyImage { height, width });
        }
        if weights.len() != height * width {
            return Err(Error::WeightLength {
                got: weights.len(),
                height,
                width,
            });
        }
        Ok(Self {
            height,
            width,
            cutoff: None,
            weights,
        })
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Cut-off frequency; `None` for maps injected via `from_weights`.
    pub fn cutoff(&self) -> Option<f64> {
        self.cutoff
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    #[inline]
    pub fn weight(&self, u: usize, v: usize) -> f64 {
        self.weights[u * self.width + v]
    }
}

/// Distance from bin `(u, v)` to the center bin `(floor(M/2), floor(N/2))`.
pub fn center_distance(height: usize, width: usize, u: usize, v: usize) -> f64 {
    squared_center_distance(height, width, u, v).sqrt()
}

fn squared_center_distance(height: usize, width: usize, u: usize, v: usize) -> f64 {
    let dy = u as f64 - (height / 2) as f64;
    let dx = v as f64 - (width / 2) as f64;
    dy * dy + dx * dx
}
