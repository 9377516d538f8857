//! Frequency-domain data augmentation for narrowing the gap between
//! synthetic and real image corpora.
//!
//! The centerpiece is the spectrum mixup: the amplitude spectra of a
//! synthetic and a real image are blended through a Gaussian
//! soft-assignment map while the synthetic phase is kept, so the synthetic
//! image inherits realistic high-frequency texture without losing its
//! structure. Around it sit the competing frequency-mixing baselines, a
//! deterministic spatial-augmentation pipeline with the full preset
//! catalog, and PSNR/spectrum inspection metrics.
//!
//! The crate is `no_std`-compatible (requires `alloc`); the companion CLI
//! crate carries all file formats and IO.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod augment;
pub mod error;
pub mod image;
pub mod pipeline;
pub mod rng;
pub mod spectral;

pub use error::{Error, Result};
pub use image::ImageBuffer;
pub use rng::RngStream;
