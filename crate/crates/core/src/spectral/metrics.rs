//! Image-quality metrics and spectrum inspection helpers.

use alloc::vec;
use alloc::vec::Vec;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::image::ImageBuffer;
use crate::spectral::dft::dft_forward;
use crate::spectral::softmap::center_distance;
use crate::spectral::spectrum::decompose;

/// Peak signal-to-noise ratio in decibels against a unit peak.
///
/// `10 * log10(1 / MSE)` with the mean squared error taken over every
/// sample of every channel. Identical images yield `f64::INFINITY`.
pub fn psnr(a: &ImageBuffer, b: &ImageBuffer) -> Result<f64> {
    if !a.same_shape(b) {
        return Err(Error::DimensionMismatch(
            a.height(),
            a.width(),
            b.height(),
            b.width(),
        ));
    }
    let mut sum = 0.0;
    for (x, y) in a.data().iter().zip(b.data()) {
        let d = x - y;
        sum += d * d;
    }
    let mse = sum / a.data().len() as f64;
    if mse == 0.0 {
        Ok(f64::INFINITY)
    } else {
        Ok(10.0 * (1.0 / mse).log10())
    }
}

/// Mean `ln(1 + A)` over annuli of equal radial width in the DC-centered
/// amplitude spectrum, averaged across channels.
///
/// Flat-spectrum images produce a flat profile; a constant image puts all
/// its energy in the innermost bin and leaves the rest at the log-floor 0.
pub fn radial_amplitude_profile(image: &ImageBuffer, bins: usize) -> Result<Vec<f64>> {
    if bins == 0 {
        return Err(Error::InvalidBinCount);
    }
    let (height, width) = (image.height(), image.width());
    let (amplitude, _) = decompose(&dft_forward(image));
    let amplitude = amplitude.shift();
    let r_max = center_distance(height, width, 0, 0);
    let mut sums = vec![0.0f64; bins];
    let mut counts = vec![0u64; bins];
    for c in 0..image.channels() {
        let plane = amplitude.channel(c);
        for u in 0..height {
            for v in 0..width {
                let bin = if r_max == 0.0 {
                    0
                } else {
                    (((center_distance(height, width, u, v) / r_max) * bins as f64) as usize)
                        .min(bins - 1)
                };
                sums[bin] += (1.0 + plane[u * width + v]).ln();
                counts[bin] += 1;
            }
        }
    }
    Ok(sums
        .iter()
        .zip(&counts)
        .map(|(&s, &n)| if n == 0 { 0.0 } else { s / n as f64 })
        .collect())
}
