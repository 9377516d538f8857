//! The spatial augmentation operations and their tuning knobs.

pub mod appearance;
pub mod geometry;

pub use appearance::{
    add_gaussian_noise, apply_channel_shuffle, apply_gaussian_blur, apply_gaussian_noise,
    apply_photometric, autocontrast, channel_shuffle, equalize_histogram, gaussian_blur,
    grayscale3, photometric, BlurParams, NoiseParams, PhotometricParams, ShuffleParams,
    BLUR_KERNEL_SIZE,
};
pub use geometry::{
    apply_affine, apply_crop, apply_low_resolution, apply_perspective, low_resolution,
    random_affine, random_crop, random_perspective, AffineParams, CropParams, LowResParams,
    PerspectiveParams,
};

use crate::error::{Error, Result};

/// The closed set of augmentation operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AugOpKind {
    Crop,
    LowResolution,
    Photometric,
    Grayscale,
    GaussianNoise,
    GaussianBlur,
    ChannelShuffle,
    HistogramEqualization,
    Autocontrast,
    RandomAffine,
    RandomPerspective,
}

impl AugOpKind {
    pub const ALL: [AugOpKind; 11] = [
        AugOpKind::Crop,
        AugOpKind::LowResolution,
        AugOpKind::Photometric,
        AugOpKind::Grayscale,
        AugOpKind::GaussianNoise,
        AugOpKind::GaussianBlur,
        AugOpKind::ChannelShuffle,
        AugOpKind::HistogramEqualization,
        AugOpKind::Autocontrast,
        AugOpKind::RandomAffine,
        AugOpKind::RandomPerspective,
    ];

    /// Short key used in configuration files and probability tables.
    pub fn key(self) -> &'static str {
        match self {
            AugOpKind::Crop => "crop",
            AugOpKind::LowResolution => "lr",
            AugOpKind::Photometric => "pho",
            AugOpKind::Grayscale => "gray",
            AugOpKind::GaussianNoise => "gn",
            AugOpKind::GaussianBlur => "gb",
            AugOpKind::ChannelShuffle => "cs",
            AugOpKind::HistogramEqualization => "he",
            AugOpKind::Autocontrast => "ac",
            AugOpKind::RandomAffine => "ra",
            AugOpKind::RandomPerspective => "rp",
        }
    }
}

/// Tunable ranges for the operations whose exact semantics the upstream
/// toolkits leave open. Defaults match the conventions documented on each
/// operation; configuration files may override them.
#[derive(Debug, Clone, PartialEq)]
pub struct OpParams {
    /// Minimum fraction of each dimension a crop must cover.
    pub crop_min_cover: f64,
    /// Downscale factor range for the low-resolution op.
    pub lowres_factor: (f64, f64),
    /// Multiplicative jitter range shared by brightness/contrast/saturation.
    pub photometric_factor: (f64, f64),
    /// Sigma range for the 7x7 Gaussian blur.
    pub blur_sigma: (f64, f64),
    /// Standard deviation of the additive Gaussian noise.
    pub noise_std: f64,
    /// Upper bound for the perspective distortion scale.
    pub perspective_max_distortion: f64,
}

impl Default for OpParams {
    fn default() -> Self {
        Self {
            crop_min_cover: 0.5,
            lowres_factor: (2.0, 8.0),
            photometric_factor: (0.6, 1.4),
            blur_sigma: (0.1, 2.0),
            noise_std: 0.1,
            perspective_max_distortion: 0.5,
        }
    }
}

impl OpParams {
    pub fn validate(&self) -> Result<()> {
        let unit = |v: f64| (0.0..=1.0).contains(&v) && v.is_finite();
        if !unit(self.crop_min_cover) || self.crop_min_cover <= 0.0 {
            return Err(Error::InvalidParamRange {
                name: "crop_min_cover",
            });
        }
        let ordered = |(lo, hi): (f64, f64)| lo.is_finite() && hi.is_finite() && lo <= hi;
        if !ordered(self.lowres_factor) || self.lowres_factor.0 < 1.0 {
            return Err(Error::InvalidParamRange {
                name: "lowres_factor",
            });
        }
        if !ordered(self.photometric_factor) || self.photometric_factor.0 < 0.0 {
            return Err(Error::InvalidParamRange {
                name: "photometric_factor",
            });
        }
        if !ordered(self.blur_sigma) || self.blur_sigma.0 <= 0.0 {
            return Err(Error::InvalidParamRange { name: "blur_sigma" });
        }
        if !(self.noise_std >= 0.0) || !self.noise_std.is_finite() {
            return Err(Error::InvalidNoiseStd(self.noise_std));
        }
        if !unit(self.perspective_max_distortion) {
            return Err(Error::InvalidParamRange {
                name: "perspective_max_distortion",
            });
        }
        Ok(())
    }
}

/// Applies one of the three delegated base augmentations.
pub fn base_augment(
    image: &crate::image::ImageBuffer,
    kind: AugOpKind,
    rng: &mut crate::rng::RngStream,
) -> Result<crate::image::ImageBuffer> {
    let params = OpParams::default();
    match kind {
        AugOpKind::Crop => Ok(random_crop(image, rng, &params)),
        AugOpKind::LowResolution => low_resolution(image, rng, &params),
        AugOpKind::Photometric => Ok(photometric(image, rng, &params)),
        _ => unreachable!("base_augment covers crop, low-resolution, and photometric"),
    }
}
