//! Appearance augmentations: tone, color, noise, and blur operations that
//! keep the image geometry intact.

use alloc::vec::Vec;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::augment::OpParams;
use crate::error::{Error, Result};
use crate::image::ImageBuffer;
use crate::rng::RngStream;

/// BT.601 luma weights.
const LUMA: [f64; 3] = [0.299, 0.587, 0.114];

/// Grayscale conversion that keeps all three channels.
///
/// Writes the luma `0.299 R + 0.587 G + 0.114 B` into every channel.
pub fn grayscale3(image: &ImageBuffer) -> Result<ImageBuffer> {
    if image.channels() != 3 {
        return Err(Error::RequiresColor);
    }
    let plane = image.plane_len();
    let mut luma = Vec::with_capacity(plane);
    for i in 0..plane {
        let (r, g, b) = (
            image.channel(0)[i],
            image.channel(1)[i],
            image.channel(2)[i],
        );
        // Already-gray pixels stay put exactly; the weights sum to 1 only
        // in decimal, so the weighted form would drift by an ulp.
        luma.push(if r == g && g == b {
            r
        } else {
            LUMA[0] * r + LUMA[1] * g + LUMA[2] * b
        });
    }
    let mut data = Vec::with_capacity(plane * 3);
    for _ in 0..3 {
        data.extend_from_slice(&luma);
    }
    ImageBuffer::from_clamped(image.height(), image.width(), 3, data)
}

fn quantize_level(v: f64) -> usize {
    (v * 255.0).round() as usize
}

/// Histogram equalization per channel over 256 transient levels.
///
/// Uses the floor-division LUT with a half-step rounding offset; the LUT is
/// monotone, so pixel ranks within a channel are preserved. Channels whose
/// histogram collapses to a single step are returned unchanged.
pub fn equalize_histogram(image: &ImageBuffer) -> ImageBuffer {
    let plane = image.plane_len();
    let mut data = Vec::with_capacity(plane * image.channels());
    for c in 0..image.channels() {
        let channel = image.channel(c);
        let mut hist = [0u64; 256];
        for &v in channel {
            hist[quantize_level(v)] += 1;
        }
        let last_nonzero = (0..256).rev().find(|&i| hist[i] > 0).unwrap_or(0);
        let total: u64 = hist.iter().sum();
        let step = (total - hist[last_nonzero]) / 255;
        if step == 0 {
            data.extend_from_slice(channel);
            continue;
        }
        // LUT over the shifted cumulative histogram: lut[i] uses the mass
        // strictly below level i.
        let mut lut = [0u8; 256];
        let mut below = 0u64;
        for (i, slot) in lut.iter_mut().enumerate() {
            *slot = ((below + step / 2) / step).min(255) as u8;
            below += hist[i];
        }
        data.extend(channel.iter().map(|&v| lut[quantize_level(v)] as f64 / 255.0));
    }
    ImageBuffer::from_clamped(image.height(), image.width(), image.channels(), data)
        .expect("shape preserved")
}

/// Per-channel contrast stretch sending the darkest level to 0 and the
/// brightest to 1. The range is read off the 256-level quantized view;
/// constant channels are returned unchanged.
pub fn autocontrast(image: &ImageBuffer) -> ImageBuffer {
    let plane = image.plane_len();
    let mut data = Vec::with_capacity(plane * image.channels());
    for c in 0..image.channels() {
        let channel = image.channel(c);
        let mut lo = 255usize;
        let mut hi = 0usize;
        for &v in channel {
            let level = quantize_level(v);
            lo = lo.min(level);
            hi = hi.max(level);
        }
        if lo == hi {
            data.extend_from_slice(channel);
            continue;
        }
        let lo = lo as f64 / 255.0;
        let hi = hi as f64 / 255.0;
        data.extend(channel.iter().map(|&v| (v - lo) / (hi - lo)));
    }
    ImageBuffer::from_clamped(image.height(), image.width(), image.channels(), data)
        .expect("shape preserved")
}

/// Factors for one photometric jitter application.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhotometricParams {
    pub brightness: f64,
    pub contrast: f64,
    pub saturation: f64,
}

impl PhotometricParams {
    pub const IDENTITY: Self = Self {
        brightness: 1.0,
        contrast: 1.0,
        saturation: 1.0,
    };

    pub fn sample(rng: &mut RngStream, params: &OpParams) -> Self {
        let (lo, hi) = params.photometric_factor;
        Self {
            brightness: rng.uniform(lo, hi),
            contrast: rng.uniform(lo, hi),
            saturation: rng.uniform(lo, hi),
        }
    }
}

fn luma_mean(image: &ImageBuffer) -> f64 {
    let plane = image.plane_len();
    let mut sum = 0.0;
    if image.channels() == 3 {
        for i in 0..plane {
            sum += LUMA[0] * image.channel(0)[i]
                + LUMA[1] * image.channel(1)[i]
                + LUMA[2] * image.channel(2)[i];
        }
    } else {
        sum = image.channel(0).iter().sum();
    }
    sum / plane as f64
}

/// Brightness, contrast, and saturation jitter, applied in that order.
pub fn apply_photometric(image: &ImageBuffer, params: &PhotometricParams) -> ImageBuffer {
    let (h, w, ch) = (image.height(), image.width(), image.channels());
    // Brightness: plain gain.
    let bright: Vec<f64> = image.data().iter().map(|v| v * params.brightness).collect();
    let bright = ImageBuffer::from_clamped(h, w, ch, bright).expect("shape preserved");
    // Contrast: blend with the mean luma of the current image.
    let mean = luma_mean(&bright);
    let contrasted: Vec<f64> = bright
        .data()
        .iter()
        .map(|v| params.contrast * v + (1.0 - params.contrast) * mean)
        .collect();
    let contrasted = ImageBuffer::from_clamped(h, w, ch, contrasted).expect("shape preserved");
    if ch != 3 {
        return contrasted;
    }
    // Saturation: blend each pixel with its own luma.
    let plane = contrasted.plane_len();
    let mut data = Vec::with_capacity(plane * 3);
    for c in 0..3 {
        for i in 0..plane {
            let g = LUMA[0] * contrasted.channel(0)[i]
                + LUMA[1] * contrasted.channel(1)[i]
                + LUMA[2] * contrasted.channel(2)[i];
            data.push(params.saturation * contrasted.channel(c)[i] + (1.0 - params.saturation) * g);
        }
    }
    ImageBuffer::from_clamped(h, w, 3, data).expect("shape preserved")
}

pub fn photometric(image: &ImageBuffer, rng: &mut RngStream, params: &OpParams) -> ImageBuffer {
    apply_photometric(image, &PhotometricParams::sample(rng, params))
}

/// Channel permutation for one shuffle application.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShuffleParams {
    /// Output channel `c` is input channel `perm[c]`.
    pub perm: [usize; 3],
}

impl ShuffleParams {
    /// Uniform draw over the six channel orderings (Fisher-Yates).
    pub fn sample(rng: &mut RngStream) -> Self {
        let mut perm = [0usize, 1, 2];
        for i in (1..3).rev() {
            let j = rng.index(i + 1);
            perm.swap(i, j);
        }
        Self { perm }
    }
}

/// Reorders the RGB planes according to the drawn permutation.
pub fn apply_channel_shuffle(image: &ImageBuffer, params: &ShuffleParams) -> Result<ImageBuffer> {
    if image.channels() != 3 {
        return Err(Error::RequiresColor);
    }
    let mut data = Vec::with_capacity(image.data().len());
    for c in 0..3 {
        data.extend_from_slice(image.channel(params.perm[c]));
    }
    ImageBuffer::new(image.height(), image.width(), 3, data)
}

pub fn channel_shuffle(image: &ImageBuffer, rng: &mut RngStream) -> Result<ImageBuffer> {
    apply_channel_shuffle(image, &ShuffleParams::sample(rng))
}

/// Seed of the forked stream driving one noise application.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NoiseParams {
    pub seed: u64,
}

impl NoiseParams {
    pub fn sample(rng: &mut RngStream) -> Self {
        Self {
            seed: rand::RngCore::next_u64(rng),
        }
    }
}

/// Adds i.i.d. zero-mean Gaussian noise and clamps back into `[0, 1]`.
pub fn apply_gaussian_noise(
    image: &ImageBuffer,
    noise: &NoiseParams,
    params: &OpParams,
) -> ImageBuffer {
    let mut child = RngStream::from_seed_u64(noise.seed);
    let data = image
        .data()
        .iter()
        .map(|v| v + child.normal(params.noise_std))
        .collect();
    ImageBuffer::from_clamped(image.height(), image.width(), image.channels(), data)
        .expect("shape preserved")
}

pub fn add_gaussian_noise(
    image: &ImageBuffer,
    rng: &mut RngStream,
    params: &OpParams,
) -> ImageBuffer {
    apply_gaussian_noise(image, &NoiseParams::sample(rng), params)
}

/// Blur kernel width (fixed 7x7).
pub const BLUR_KERNEL_SIZE: usize = 7;

/// Standard deviation for one blur application.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlurParams {
    pub sigma: f64,
}

impl BlurParams {
    pub fn sample(rng: &mut RngStream, params: &OpParams) -> Self {
        let (lo, hi) = params.blur_sigma;
        Self {
            sigma: rng.uniform(lo, hi),
        }
    }
}

/// Separable 7x7 Gaussian blur with mirrored (edge-inclusive) borders.
///
/// The kernel is normalized to sum 1 and the mirroring keeps total image
/// mass, so constant images are fixed points and the mean intensity is
/// preserved.
pub fn apply_gaussian_blur(image: &ImageBuffer, params: &BlurParams) -> Result<ImageBuffer> {
    let radius = BLUR_KERNEL_SIZE / 2;
    if image.height() < BLUR_KERNEL_SIZE || image.width() < BLUR_KERNEL_SIZE {
        return Err(Error::KernelTooSmall {
            height: image.height(),
            width: image.width(),
            kernel: BLUR_KERNEL_SIZE,
        });
    }
    let mut kernel = [0.0f64; BLUR_KERNEL_SIZE];
    let denom = 2.0 * params.sigma * params.sigma;
    for (i, k) in kernel.iter_mut().enumerate() {
        let d = i as f64 - radius as f64;
        *k = (-d * d / denom).exp();
    }
    let sum: f64 = kernel.iter().sum();
    for k in &mut kernel {
        *k /= sum;
    }

    let (h, w) = (image.height(), image.width());
    let mirror = |i: isize, n: usize| -> usize {
        if i < 0 {
            (-i - 1) as usize
        } else if i as usize >= n {
            2 * n - 1 - i as usize
        } else {
            i as usize
        }
    };
    let mut data = Vec::with_capacity(image.data().len());
    let mut tmp = alloc::vec![0.0f64; h * w];
    for c in 0..image.channels() {
        let plane = image.channel(c);
        // Horizontal pass.
        for y in 0..h {
            for x in 0..w {
                let mut acc = 0.0;
                for (t, k) in kernel.iter().enumerate() {
                    let xx = mirror(x as isize + t as isize - radius as isize, w);
                    acc += k * plane[y * w + xx];
                }
                tmp[y * w + x] = acc;
            }
        }
        // Vertical pass.
        for y in 0..h {
            for x in 0..w {
                let mut acc = 0.0;
                for (t, k) in kernel.iter().enumerate() {
                    let yy = mirror(y as isize + t as isize - radius as isize, h);
                    acc += k * tmp[yy * w + x];
                }
                data.push(acc);
            }
        }
    }
    ImageBuffer::from_clamped(h, w, image.channels(), data)
}

pub fn gaussian_blur(
    image: &ImageBuffer,
    rng: &mut RngStream,
    params: &OpParams,
) -> Result<ImageBuffer> {
    apply_gaussian_blur(image, &BlurParams::sample(rng, params))
}
