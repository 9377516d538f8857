//! Amplitude-spectrum mixing between a synthetic and a real image.
//!
//! The spectrum mixup blends the two amplitude spectra through a Gaussian
//! soft-assignment map while keeping the synthetic phase: low frequencies
//! stay synthetic, high-frequency detail migrates in from the real image.
//! The hard-mask, weighted-sum, band-interpolation, and full-replacement
//! baselines from earlier frequency-mixing work are implemented alongside
//! for comparison, each with both band orientations.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::image::ImageBuffer;
use crate::spectral::dft::{dft_forward, dft_inverse_raw, RealField};
use crate::spectral::softmap::{center_distance, SoftAssignmentMap};
use crate::spectral::spectrum::{decompose, recompose, AmplitudeGrid, PhaseGrid};

/// Which band of the synthetic amplitude survives a band-limited strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// Synthetic image keeps its low band; the real image supplies the
    /// high frequencies.
    KeepSynLow,
    /// Synthetic image keeps its high band; the real image supplies the
    /// low frequencies (the convention of the earlier swap methods).
    KeepSynHigh,
}

/// Amplitude combination rule.
#[derive(Debug, Clone, PartialEq)]
pub enum MixupKind {
    /// Gaussian soft-assignment mixing with cut-off frequency `cutoff`.
    Smu { cutoff: f64 },
    /// Replace the whole amplitude spectrum with the real one.
    PhaseSwap,
    /// Swap one band inside a hard disk mask of the given radius.
    HardLowSwap { radius: f64 },
    /// `(1 - lambda) * A_syn + lambda * A_real` everywhere.
    WeightedSum { lambda: f64 },
    /// Interpolate inside one band, keep the synthetic amplitude in the
    /// other.
    BandInterp { radius: f64, lambda: f64 },
}

/// A mixing strategy plus its band orientation.
#[derive(Debug, Clone, PartialEq)]
pub struct MixupStrategy {
    pub kind: MixupKind,
    pub orientation: Orientation,
}

impl MixupStrategy {
    pub fn new(kind: MixupKind, orientation: Orientation) -> Self {
        Self { kind, orientation }
    }

    /// Strategy with the orientation the spectrum mixup argues for.
    pub fn keep_syn_low(kind: MixupKind) -> Self {
        Self::new(kind, Orientation::KeepSynLow)
    }

    pub fn validate(&self) -> Result<()> {
        match self.kind {
            MixupKind::Smu { cutoff } => {
                if !(cutoff > 0.0) || !cutoff.is_finite() {
                    return Err(Error::InvalidCutoff(cutoff));
                }
            }
            MixupKind::PhaseSwap => {}
            MixupKind::HardLowSwap { radius } => validate_radius(radius)?,
            MixupKind::WeightedSum { lambda } => validate_lambda(lambda)?,
            MixupKind::BandInterp { radius, lambda } => {
                validate_radius(radius)?;
                validate_lambda(lambda)?;
            }
        }
        Ok(())
    }
}

fn validate_radius(radius: f64) -> Result<()> {
    if radius < 0.0 || !radius.is_finite() {
        return Err(Error::InvalidRadius(radius));
    }
    Ok(())
}

fn validate_lambda(lambda: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&lambda) || !lambda.is_finite() {
        return Err(Error::InvalidLambda(lambda));
    }
    Ok(())
}

/// Everything the SMU path exposes for inspection.
#[derive(Debug, Clone)]
pub struct SmuOutcome {
    /// Final mixed image, clamped into `[0, 1]`.
    pub image: ImageBuffer,
    /// Inverse-transform output before clamping.
    pub raw: RealField,
    /// Blended amplitude in DC-centered layout, before the inverse shift.
    pub mixed_amplitude: AmplitudeGrid,
    /// Phase of the synthetic image, origin layout.
    pub syn_phase: PhaseGrid,
}

/// Spectrum mixup with a Gaussian map of the given cut-off frequency.
pub fn smu_mix(syn: &ImageBuffer, real: &ImageBuffer, cutoff: f64) -> Result<ImageBuffer> {
    let map = SoftAssignmentMap::gaussian(syn.height(), syn.width(), cutoff)?;
    Ok(smu_mix_with_map(syn, real, &map)?.image)
}

/// Spectrum mixup with an explicit weight map.
///
/// Per channel: forward-transform both images, shift both amplitude grids
/// to DC-centered, blend `A_real + G * (A_syn - A_real)`, shift back,
/// recombine with the synthetic phase, inverse-transform, clamp.
pub fn smu_mix_with_map(
    syn: &ImageBuffer,
    real: &ImageBuffer,
    map: &SoftAssignmentMap,
) -> Result<SmuOutcome> {
    if map.height() != syn.height() || map.width() != syn.width() {
        return Err(Error::DimensionMismatch(
            map.height(),
            map.width(),
            syn.height(),
            syn.width(),
        ));
    }
    let prep = prepare(syn, real)?;
    let plane = syn.plane_len();
    let mut mixed = Vec::with_capacity(plane * syn.channels());
    for c in 0..syn.channels() {
        let a_syn = prep.syn_amplitude.channel(c);
        let a_real = prep.real_amplitude.channel(c);
        for i in 0..plane {
            let g = map.weights()[i];
            // a_real + g*(a_syn - a_real): pointwise convex for g in [0, 1]
            // even in floating point, unlike the two-product form.
            mixed.push(a_real[i] + g * (a_syn[i] - a_real[i]));
        }
    }
    let mixed_amplitude = AmplitudeGrid::from_parts(
        syn.height(),
        syn.width(),
        syn.channels(),
        prep.syn_amplitude.layout(),
        mixed,
    );
    finish(mixed_amplitude, prep.syn_phase)
}

/// Applies one of the baseline strategies (or SMU itself via
/// [`MixupKind::Smu`]).
pub fn baseline_mix(
    syn: &ImageBuffer,
    real: &ImageBuffer,
    strategy: &MixupStrategy,
) -> Result<ImageBuffer> {
    strategy.validate()?;
    if let MixupKind::Smu { cutoff } = strategy.kind {
        return smu_mix(syn, real, cutoff);
    }
    let prep = prepare(syn, real)?;
    let (height, width) = (syn.height(), syn.width());
    let plane = syn.plane_len();
    let mut mixed = Vec::with_capacity(plane * syn.channels());
    for c in 0..syn.channels() {
        let a_syn = prep.syn_amplitude.channel(c);
        let a_real = prep.real_amplitude.channel(c);
        for u in 0..height {
            for v in 0..width {
                let i = u * width + v;
                let value = match strategy.kind {
                    MixupKind::PhaseSwap => a_real[i],
                    MixupKind::HardLowSwap { radius } => {
                        let inside = center_distance(height, width, u, v) < radius;
                        let real_band = match strategy.orientation {
                            // Real image supplies the high band.
                            Orientation::KeepSynLow => !inside,
                            Orientation::KeepSynHigh => inside,
                        };
                        if real_band {
                            a_real[i]
                        } else {
                            a_syn[i]
                        }
                    }
                    MixupKind::WeightedSum { lambda } => {
                        (1.0 - lambda) * a_syn[i] + lambda * a_real[i]
                    }
                    MixupKind::BandInterp { radius, lambda } => {
                        let inside = center_distance(height, width, u, v) < radius;
                        let interpolate = match strategy.orientation {
                            // Blend the high band, keep the synthetic low
                            // band untouched.
                            Orientation::KeepSynLow => !inside,
                            Orientation::KeepSynHigh => inside,
                        };
                        if interpolate {
                            (1.0 - lambda) * a_syn[i] + lambda * a_real[i]
                        } else {
                            a_syn[i]
                        }
                    }
                    MixupKind::Smu { .. } => unreachable!(),
                };
                mixed.push(value);
            }
        }
    }
    let mixed_amplitude = AmplitudeGrid::from_parts(
        height,
        width,
        syn.channels(),
        prep.syn_amplitude.layout(),
        mixed,
    );
    Ok(finish(mixed_amplitude, prep.syn_phase)?.image)
}

struct MixPrep {
    /// Synthetic amplitude, DC-centered.
    syn_amplitude: AmplitudeGrid,
    /// Real amplitude, DC-centered, resampled to the synthetic dimensions.
    real_amplitude: AmplitudeGrid,
    /// Synthetic phase, origin layout.
    syn_phase: PhaseGrid,
}

fn prepare(syn: &ImageBuffer, real: &ImageBuffer) -> Result<MixPrep> {
    if syn.channels() != real.channels() {
        return Err(Error::ChannelMismatch {
            left: syn.channels(),
            right: real.channels(),
        });
    }
    let resampled;
    let real = if real.height() == syn.height() && real.width() == syn.width() {
        real
    } else {
        resampled = real.resize_bilinear(syn.height(), syn.width())?;
        &resampled
    };
    let (syn_amplitude, syn_phase) = decompose(&dft_forward(syn));
    let (real_amplitude, _) = decompose(&dft_forward(real));
    Ok(MixPrep {
        syn_amplitude: syn_amplitude.shift(),
        real_amplitude: real_amplitude.shift(),
        syn_phase,
    })
}

fn finish(mixed_centered: AmplitudeGrid, syn_phase: PhaseGrid) -> Result<SmuOutcome> {
    let amplitude = mixed_centered.inverse_shift();
    let spec = recompose(&amplitude, &syn_phase)?;
    let raw = dft_inverse_raw(&spec)?;
    let image = raw.clamp_to_image()?;
    Ok(SmuOutcome {
        image,
        raw,
        mixed_amplitude: mixed_centered,
        syn_phase,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::RngStream;
    use crate::spectral::metrics::psnr;

    fn random_image(seed: u64, h: usize, w: usize, c: usize) -> ImageBuffer {
        let mut rng = RngStream::derive(seed, 0, 0);
        ImageBuffer::from_fn(h, w, c, |_, _, _| rng.unit()).unwrap()
    }

    fn max_abs_diff(a: &ImageBuffer, b: &ImageBuffer) -> f64 {
        a.data()
            .iter()
            .zip(b.data())
            .fold(0.0f64, |m, (x, y)| m.max((x - y).abs()))
    }

    #[test]
    fn self_mix_is_identity() {
        let img = random_image(1, 12, 12, 3);
        for &d0 in &[15.0, 30.0, 45.0, 60.0] {
            let out = smu_mix(&img, &img, d0).unwrap();
            assert!(max_abs_diff(&img, &out) < 1e-4);
        }
    }

    #[test]
    fn huge_cutoff_degenerates_to_identity() {
        let syn = random_image(2, 16, 16, 1);
        let real = random_image(3, 16, 16, 1);
        let out = smu_mix(&syn, &real, 1e6).unwrap();
        assert!(psnr(&out, &syn).unwrap() > 60.0);
    }

    #[test]
    fn zero_map_matches_phase_swap() {
        let syn = random_image(4, 10, 14, 3);
        let real = random_image(5, 10, 14, 3);
        let zeros = SoftAssignmentMap::from_weights(10, 14, alloc::vec![0.0; 140]).unwrap();
        let smu = smu_mix_with_map(&syn, &real, &zeros).unwrap().image;
        let swap = baseline_mix(
            &syn,
            &real,
            &MixupStrategy::keep_syn_low(MixupKind::PhaseSwap),
        )
        .unwrap();
        assert!(max_abs_diff(&smu, &swap) < 1e-6);
    }

    #[test]
    fn mixed_amplitude_is_pointwise_convex() {
        let syn = random_image(6, 9, 11, 1);
        let real = random_image(7, 9, 11, 1);
        let map = SoftAssignmentMap::gaussian(9, 11, 4.0).unwrap();
        let outcome = smu_mix_with_map(&syn, &real, &map).unwrap();
        let (a_syn, _) = decompose(&dft_forward(&syn));
        let (a_real, _) = decompose(&dft_forward(&real));
        let a_syn = a_syn.shift();
        let a_real = a_real.shift();
        for i in 0..outcome.mixed_amplitude.values().len() {
            let lo = a_syn.values()[i].min(a_real.values()[i]);
            let hi = a_syn.values()[i].max(a_real.values()[i]);
            let m = outcome.mixed_amplitude.values()[i];
            assert!(m >= lo && m <= hi, "bin {i}: {m} not in [{lo}, {hi}]");
        }
    }

    #[test]
    fn weighted_sum_zero_is_identity() {
        let syn = random_image(8, 12, 12, 3);
        let real = random_image(9, 12, 12, 3);
        let out = baseline_mix(
            &syn,
            &real,
            &MixupStrategy::keep_syn_low(MixupKind::WeightedSum { lambda: 0.0 }),
        )
        .unwrap();
        assert!(max_abs_diff(&syn, &out) < 1e-4);
    }

    #[test]
    fn hard_swap_zero_radius_is_identity() {
        let syn = random_image(10, 12, 12, 1);
        let real = random_image(11, 12, 12, 1);
        for orientation in [Orientation::KeepSynLow, Orientation::KeepSynHigh] {
            let out = baseline_mix(
                &syn,
                &real,
                &MixupStrategy::new(MixupKind::HardLowSwap { radius: 0.0 }, orientation),
            )
            .unwrap();
            // Radius 0 selects nothing: with the high band kept synthetic the
            // whole spectrum is synthetic; with the low band kept synthetic
            // everything outside the (empty) disk is real.
            match orientation {
                Orientation::KeepSynHigh => assert!(max_abs_diff(&syn, &out) < 1e-4),
                Orientation::KeepSynLow => {
                    let swap = baseline_mix(
                        &syn,
                        &real,
                        &MixupStrategy::keep_syn_low(MixupKind::PhaseSwap),
                    )
                    .unwrap();
                    assert!(max_abs_diff(&swap, &out) < 1e-6);
                }
            }
        }
    }

    #[test]
    fn weighted_sum_one_matches_phase_swap() {
        let syn = random_image(12, 8, 10, 3);
        let real = random_image(13, 8, 10, 3);
        let sum = baseline_mix(
            &syn,
            &real,
            &MixupStrategy::keep_syn_low(MixupKind::WeightedSum { lambda: 1.0 }),
        )
        .unwrap();
        let swap = baseline_mix(
            &syn,
            &real,
            &MixupStrategy::keep_syn_low(MixupKind::PhaseSwap),
        )
        .unwrap();
        assert!(max_abs_diff(&sum, &swap) < 1e-6);
    }

    #[test]
    fn band_interp_full_lambda_matches_hard_swap() {
        // With lambda = 1 the interpolated band becomes a full swap, for
        // either orientation.
        let syn = random_image(14, 16, 16, 1);
        let real = random_image(15, 16, 16, 1);
        for orientation in [Orientation::KeepSynLow, Orientation::KeepSynHigh] {
            let interp = baseline_mix(
                &syn,
                &real,
                &MixupStrategy::new(
                    MixupKind::BandInterp {
                        radius: 4.0,
                        lambda: 1.0,
                    },
                    orientation,
                ),
            )
            .unwrap();
            let swap = baseline_mix(
                &syn,
                &real,
                &MixupStrategy::new(MixupKind::HardLowSwap { radius: 4.0 }, orientation),
            )
            .unwrap();
            assert!(max_abs_diff(&interp, &swap) < 1e-9);
        }
        // The two orientations really touch different bands.
        let low = baseline_mix(
            &syn,
            &real,
            &MixupStrategy::new(
                MixupKind::BandInterp {
                    radius: 4.0,
                    lambda: 1.0,
                },
                Orientation::KeepSynLow,
            ),
        )
        .unwrap();
        let high = baseline_mix(
            &syn,
            &real,
            &MixupStrategy::new(
                MixupKind::BandInterp {
                    radius: 4.0,
                    lambda: 1.0,
                },
                Orientation::KeepSynHigh,
            ),
        )
        .unwrap();
        assert!(max_abs_diff(&low, &high) > 1e-3);
    }

    #[test]
    fn band_interp_zero_lambda_is_identity() {
        let syn = random_image(24, 12, 12, 3);
        let real = random_image(25, 12, 12, 3);
        for orientation in [Orientation::KeepSynLow, Orientation::KeepSynHigh] {
            let out = baseline_mix(
                &syn,
                &real,
                &MixupStrategy::new(
                    MixupKind::BandInterp {
                        radius: 4.0,
                        lambda: 0.0,
                    },
                    orientation,
                ),
            )
            .unwrap();
            assert!(max_abs_diff(&syn, &out) < 1e-4);
        }
    }

    #[test]
    fn mismatched_real_image_is_resampled() {
        let syn = random_image(16, 12, 12, 3);
        let real = random_image(17, 20, 24, 3);
        let out = smu_mix(&syn, &real, 8.0).unwrap();
        assert_eq!(out.height(), 12);
        assert_eq!(out.width(), 12);
    }

    #[test]
    fn channel_mismatch_is_rejected() {
        let syn = random_image(18, 8, 8, 3);
        let real = random_image(19, 8, 8, 1);
        assert!(matches!(
            smu_mix(&syn, &real, 10.0),
            Err(Error::ChannelMismatch { .. })
        ));
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        assert!(MixupStrategy::keep_syn_low(MixupKind::Smu { cutoff: 0.0 })
            .validate()
            .is_err());
        assert!(
            MixupStrategy::keep_syn_low(MixupKind::WeightedSum { lambda: 1.5 })
                .validate()
                .is_err()
        );
        assert!(
            MixupStrategy::keep_syn_low(MixupKind::HardLowSwap { radius: -1.0 })
                .validate()
                .is_err()
        );
    }

    #[test]
    fn phase_is_preserved_where_amplitude_survives() {
        let syn = random_image(20, 12, 12, 1);
        let real = random_image(21, 12, 12, 1);
        let map = SoftAssignmentMap::gaussian(12, 12, 5.0).unwrap();
        let outcome = smu_mix_with_map(&syn, &real, &map).unwrap();
        let raw_spec = crate::spectral::dft::dft_forward_raw(&outcome.raw);
        let (amp, phase) = decompose(&raw_spec);
        let mixed_origin = outcome.mixed_amplitude.inverse_shift();
        for i in 0..amp.values().len() {
            if mixed_origin.values()[i] > 1e-6 {
                let d = phase.values()[i] - outcome.syn_phase.values()[i];
                let wrapped = (d + core::f64::consts::PI)
                    .rem_euclid(core::f64::consts::TAU)
                    - core::f64::consts::PI;
                assert!(wrapped.abs() < 1e-4, "bin {i}: {wrapped}");
            }
        }
    }
}
