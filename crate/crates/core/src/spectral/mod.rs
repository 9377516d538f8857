//! Frequency-domain machinery: transforms, spectra, soft-assignment maps,
//! amplitude mixing, and quality metrics.

pub mod dft;
pub mod metrics;
pub mod mixup;
pub mod softmap;
pub mod spectrum;

pub use dft::{dft_forward, dft_forward_raw, dft_inverse, dft_inverse_raw, RealField};
pub use metrics::{psnr, radial_amplitude_profile};
pub use mixup::{baseline_mix, smu_mix, smu_mix_with_map, MixupKind, MixupStrategy, Orientation, SmuOutcome};
pub use softmap::{center_distance, SoftAssignmentMap};
pub use spectrum::{decompose, recompose, AmplitudeGrid, Layout, PhaseGrid, Spectrum};
