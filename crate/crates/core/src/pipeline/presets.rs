//! The named augmentation presets from the ablation study this toolkit
//! packages, each resolving to exact probabilities and ordering flags.
//!
//! Naming scheme: `SA-B<n>` tiers are progressively stronger appearance
//! chains (suffixes add one op at a listed probability: `G` grayscale,
//! `CS` channel shuffle, `GB`/`GN` blur/noise, `Per`/`Aff` geometry, `HE`
//! equalization, `AC` autocontrast). `SA-B6-O1..O8` vary only the
//! first/last placement of grayscale and equalization. `DA-S0..S5` is the
//! incremental strength ladder. Base tiers resolve as SA-B2 = SA-B1-G1,
//! SA-B3 = SA-B1-G2, SA-B4 = SA-B3-GB1-GN1, SA-B5 = SA-B4-Per1,
//! SA-B6 = SA-B5-G3-HE3.

use alloc::string::ToString;

use crate::error::{Error, Result};
use crate::pipeline::{GeometryChoice, PipelineConfig};

/// Every preset name, in catalog order.
pub const PRESET_NAMES: &[&str] = &[
    "SA-B0",
    "SA-B1",
    "SA-B0-G0",
    "SA-B0-G1",
    "SA-B1-G1",
    "SA-B1-G2",
    "SA-B0-CS0",
    "SA-B1-CS1",
    "SA-B2-CS1",
    "SA-B2-GB0",
    "SA-B2-GN0",
    "SA-B2-GB0-GN0",
    "SA-B3-GB1-GN1",
    "SA-B1-Per0",
    "SA-B1-Aff0",
    "SA-B4-Per1",
    "SA-B4-Aff1",
    "SA-B0-HE0",
    "SA-B0-HE1",
    "SA-B1-HE1",
    "SA-B1-HE2",
    "SA-B0-HE3",
    "SA-B1-HE3",
    "SA-B0-AC0",
    "SA-B0-AC1",
    "SA-B1-AC1",
    "SA-B1-AC2",
    "SA-B0-AC3",
    "SA-B1-AC3",
    "SA-B5-HE3",
    "SA-B5-G3-HE3",
    "SA-B6-O1",
    "SA-B6-O2",
    "SA-B6-O3",
    "SA-B6-O4",
    "SA-B6-O5",
    "SA-B6-O6",
    "SA-B6-O7",
    "SA-B6-O8",
    "DA-S0",
    "DA-S1",
    "DA-S2",
    "DA-S3",
    "DA-S4",
    "DA-S5",
];

fn base(p: f64) -> PipelineConfig {
    let mut cfg = PipelineConfig::default();
    cfg.probabilities.low_resolution = p;
    cfg.probabilities.crop = p;
    cfg.probabilities.photometric = p;
    cfg
}

fn gray(mut cfg: PipelineConfig, p: f64) -> PipelineConfig {
    cfg.probabilities.grayscale = p;
    cfg.order.gray_first = true;
    cfg
}

fn he(mut cfg: PipelineConfig, p: f64) -> PipelineConfig {
    cfg.probabilities.equalization = p;
    cfg.order.he_first = true;
    cfg
}

fn ac(mut cfg: PipelineConfig, p: f64) -> PipelineConfig {
    cfg.probabilities.autocontrast = p;
    cfg
}

fn cs(mut cfg: PipelineConfig, p: f64) -> PipelineConfig {
    cfg.probabilities.channel_shuffle = p;
    cfg
}

fn blur_noise(mut cfg: PipelineConfig, gb: f64, gn: f64) -> PipelineConfig {
    cfg.probabilities.gaussian_blur = gb;
    cfg.probabilities.gaussian_noise = gn;
    cfg
}

fn perspective(mut cfg: PipelineConfig, p: f64) -> PipelineConfig {
    cfg.probabilities.random_perspective = p;
    cfg.geometry = GeometryChoice::Perspective;
    cfg
}

fn affine(mut cfg: PipelineConfig, p: f64) -> PipelineConfig {
    cfg.probabilities.random_affine = p;
    cfg.geometry = GeometryChoice::Affine;
    cfg
}

fn order(mut cfg: PipelineConfig, flags: (bool, bool, bool, bool)) -> PipelineConfig {
    cfg.order.gray_first = flags.0;
    cfg.order.gray_last = flags.1;
    cfg.order.he_first = flags.2;
    cfg.order.he_last = flags.3;
    cfg
}

fn sa_b2() -> PipelineConfig {
    gray(base(0.5), 0.2)
}

fn sa_b4() -> PipelineConfig {
    blur_noise(gray(base(0.5), 0.4), 0.4, 0.4)
}

fn sa_b5() -> PipelineConfig {
    perspective(sa_b4(), 0.4)
}

fn sa_b6() -> PipelineConfig {
    he(gray(sa_b5(), 1.0), 1.0)
}

/// Resolves a catalog name to its full configuration (master seed 0).
pub fn build_preset(name: &str) -> Result<PipelineConfig> {
    let cfg = match name {
        "SA-B0" | "DA-S0" => base(0.2),
        "SA-B1" => base(0.5),
        "SA-B0-G0" | "DA-S1" => gray(base(0.2), 0.01),
        "SA-B0-G1" => gray(base(0.2), 0.2),
        "SA-B1-G1" | "DA-S2" => sa_b2(),
        "SA-B1-G2" | "DA-S3" => gray(base(0.5), 0.4),
        "SA-B0-CS0" => cs(base(0.2), 0.01),
        "SA-B1-CS1" => cs(base(0.5), 0.2),
        "SA-B2-CS1" => cs(sa_b2(), 0.2),
        "SA-B2-GB0" => blur_noise(sa_b2(), 0.2, 0.0),
        "SA-B2-GN0" => blur_noise(sa_b2(), 0.0, 0.2),
        "SA-B2-GB0-GN0" => blur_noise(sa_b2(), 0.2, 0.2),
        "SA-B3-GB1-GN1" => sa_b4(),
        "SA-B1-Per0" => perspective(base(0.5), 0.2),
        "SA-B1-Aff0" => affine(base(0.5), 0.2),
        "SA-B4-Per1" => sa_b5(),
        "SA-B4-Aff1" => affine(sa_b4(), 0.4),
        "SA-B0-HE0" => he(base(0.2), 0.05),
        "SA-B0-HE1" => he(base(0.2), 0.2),
        "SA-B1-HE1" => he(base(0.5), 0.2),
        "SA-B1-HE2" => he(base(0.5), 0.4),
        "SA-B0-HE3" => he(base(0.2), 1.0),
        "SA-B1-HE3" => he(base(0.5), 1.0),
        "SA-B0-AC0" => ac(base(0.2), 0.05),
        "SA-B0-AC1" => ac(base(0.2), 0.2),
        "SA-B1-AC1" => ac(base(0.5), 0.2),
        "SA-B1-AC2" => ac(base(0.5), 0.4),
        "SA-B0-AC3" => ac(base(0.2), 1.0),
        "SA-B1-AC3" => ac(base(0.5), 1.0),
        "SA-B5-HE3" => {
            // Equalization alone on top of the geometry tier: the grayscale
            // inherited from SA-B4-Per1 is switched off.
            let mut cfg = he(sa_b5(), 1.0);
            cfg.probabilities.grayscale = 0.0;
            cfg.order.gray_first = false;
            cfg
        }
        "SA-B5-G3-HE3" => sa_b6(),
        "SA-B6-O1" => order(sa_b6(), (true, false, false, true)),
        "SA-B6-O2" => order(sa_b6(), (false, true, false, true)),
        "SA-B6-O3" => order(sa_b6(), (false, true, true, false)),
        "SA-B6-O4" => order(sa_b6(), (true, true, true, false)),
        "SA-B6-O5" => order(sa_b6(), (false, true, true, true)),
        "SA-B6-O6" => order(sa_b6(), (true, false, true, true)),
        "SA-B6-O7" => order(sa_b6(), (true, true, false, true)),
        "SA-B6-O8" => order(sa_b6(), (true, true, true, true)),
        "DA-S4" => perspective(gray(base(0.5), 0.4), 0.4),
        "DA-S5" => blur_noise(perspective(gray(base(0.5), 0.4), 0.4), 0.4, 0.4),
        _ => return Err(Error::UnknownPreset(name.to_string())),
    };
    debug_assert!(cfg.validate().is_ok());
    Ok(cfg)
}

/// One-line summary for the preset listing.
pub fn preset_description(name: &str) -> Result<&'static str> {
    Ok(match name {
        "SA-B0" => "base appearance chain (low-res, crop, photometric) at p=0.2",
        "SA-B1" => "stronger base appearance chain at p=0.5",
        "SA-B0-G0" => "SA-B0 plus grayscale at p=0.01",
        "SA-B0-G1" => "SA-B0 plus grayscale at p=0.2",
        "SA-B1-G1" => "SA-B1 plus grayscale at p=0.2 (base tier SA-B2)",
        "SA-B1-G2" => "SA-B1 plus grayscale at p=0.4 (base tier SA-B3)",
        "SA-B0-CS0" => "SA-B0 plus channel shuffle at p=0.01",
        "SA-B1-CS1" => "SA-B1 plus channel shuffle at p=0.2",
        "SA-B2-CS1" => "SA-B1-G1 plus channel shuffle at p=0.2",
        "SA-B2-GB0" => "SA-B1-G1 plus Gaussian blur at p=0.2",
        "SA-B2-GN0" => "SA-B1-G1 plus Gaussian noise at p=0.2",
        "SA-B2-GB0-GN0" => "SA-B1-G1 plus blur and noise at p=0.2 each",
        "SA-B3-GB1-GN1" => "SA-B1-G2 plus blur and noise at p=0.4 each (base tier SA-B4)",
        "SA-B1-Per0" => "SA-B1 plus random perspective at p=0.2",
        "SA-B1-Aff0" => "SA-B1 plus random affine at p=0.2",
        "SA-B4-Per1" => "SA-B3-GB1-GN1 plus random perspective at p=0.4 (base tier SA-B5)",
        "SA-B4-Aff1" => "SA-B3-GB1-GN1 plus random affine at p=0.4",
        "SA-B0-HE0" => "SA-B0 plus histogram equalization at p=0.05",
        "SA-B0-HE1" => "SA-B0 plus histogram equalization at p=0.2",
        "SA-B1-HE1" => "SA-B1 plus histogram equalization at p=0.2",
        "SA-B1-HE2" => "SA-B1 plus histogram equalization at p=0.4",
        "SA-B0-HE3" => "SA-B0 plus histogram equalization at p=1.0",
        "SA-B1-HE3" => "SA-B1 plus histogram equalization at p=1.0",
        "SA-B0-AC0" => "SA-B0 plus autocontrast at p=0.05",
        "SA-B0-AC1" => "SA-B0 plus autocontrast at p=0.2",
        "SA-B1-AC1" => "SA-B1 plus autocontrast at p=0.2",
        "SA-B1-AC2" => "SA-B1 plus autocontrast at p=0.4",
        "SA-B0-AC3" => "SA-B0 plus autocontrast at p=1.0",
        "SA-B1-AC3" => "SA-B1 plus autocontrast at p=1.0",
        "SA-B5-HE3" => "geometry tier with equalization at p=1.0, grayscale off",
        "SA-B5-G3-HE3" => "geometry tier with grayscale and equalization at p=1.0 (base tier SA-B6)",
        "SA-B6-O1" => "SA-B6 order study: gray first, equalization last",
        "SA-B6-O2" => "SA-B6 order study: gray last, equalization last",
        "SA-B6-O3" => "SA-B6 order study: gray last, equalization first",
        "SA-B6-O4" => "SA-B6 order study: gray first+last, equalization first (final chain)",
        "SA-B6-O5" => "SA-B6 order study: gray last, equalization first+last",
        "SA-B6-O6" => "SA-B6 order study: gray first, equalization first+last",
        "SA-B6-O7" => "SA-B6 order study: gray first+last, equalization last",
        "SA-B6-O8" => "SA-B6 order study: everything first and last",
        "DA-S0" => "strength ladder 0: base chain at p=0.2",
        "DA-S1" => "strength ladder 1: weakest (grayscale p=0.01)",
        "DA-S2" => "strength ladder 2: base p=0.5, grayscale p=0.2",
        "DA-S3" => "strength ladder 3: base p=0.5, grayscale p=0.4",
        "DA-S4" => "strength ladder 4: adds perspective at p=0.4",
        "DA-S5" => "strength ladder 5: strongest (adds blur and noise at p=0.4)",
        _ => return Err(Error::UnknownPreset(name.to_string())),
    })
}
