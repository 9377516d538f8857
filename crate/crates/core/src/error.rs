//! Error type shared by every fallible operation in this crate.

use alloc::string::String;

use crate::spectral::Layout;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("image dimensions must be at least 1x1 (got {height}x{width})")]
    EmptyImage { height: usize, width: usize },
    #[error("channel count must be 1 or 3 (got {0})")]
    BadChannelCount(usize),
    #[error("data length {got} does not match {height}x{width}x{channels}")]
    DataLength {
        got: usize,
        height: usize,
        width: usize,
        channels: usize,
    },
    #[error("sample {value} at index {index} lies outside [0, 1]")]
    SampleOutOfRange { index: usize, value: f64 },
    #[error("images have different channel counts ({left} vs {right})")]
    ChannelMismatch { left: usize, right: usize },
    #[error("images have different dimensions ({0}x{1} vs {2}x{3})")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("expected spectrum in {expected:?} layout, found {found:?}")]
    LayoutMismatch { expected: Layout, found: Layout },
    #[error(
        "spectrum is not conjugate-symmetric: inverse transform left imaginary \
         residue {residue:.3e} above the {threshold:.3e} threshold"
    )]
    NonHermitian { residue: f64, threshold: f64 },
    #[error("cut-off frequency must be positive and finite (got {0})")]
    InvalidCutoff(f64),
    #[error("cut-off sample set must not be empty")]
    EmptyCutoffSet,
    #[error("mask radius must be non-negative and finite (got {0})")]
    InvalidRadius(f64),
    #[error("mixing weight must lie in [0, 1] (got {0})")]
    InvalidLambda(f64),
    #[error("weight grid length {got} does not match {height}x{width}")]
    WeightLength {
        got: usize,
        height: usize,
        width: usize,
    },
    #[error("profile bin count must be at least 1")]
    InvalidBinCount,
    #[error("operation requires a 3-channel image")]
    RequiresColor,
    #[error("image {height}x{width} is smaller than the {kernel}x{kernel} blur kernel")]
    KernelTooSmall {
        height: usize,
        width: usize,
        kernel: usize,
    },
    #[error("probability for {name} must lie in [0, 1] (got {value})")]
    InvalidProbability { name: &'static str, value: f64 },
    #[error("grayscale probability is positive but neither gray_first nor gray_last is set")]
    GrayscaleNeverPlaced,
    #[error("equalization probability is positive but neither he_first nor he_last is set")]
    EqualizationNeverPlaced,
    #[error("both random-affine and random-perspective have positive probability; pick one geometry op")]
    AmbiguousGeometry,
    #[error("spectrum mixup is enabled but no real image was supplied")]
    MissingRealImage,
    #[error("unknown preset '{0}'")]
    UnknownPreset(String),
    #[error("noise standard deviation must be non-negative and finite (got {0})")]
    InvalidNoiseStd(f64),
    #[error("invalid parameter range for {name}")]
    InvalidParamRange { name: &'static str },
}
