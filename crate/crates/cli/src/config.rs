//! Pipeline configuration resolution: preset names, TOML files, and the
//! override rule (explicit keys win over the named preset), plus the
//! canonical dump used for manifests and config hashing.

use std::path::Path;

use serde::Deserialize;
use sha2::{Digest, Sha256};
use specmix_core::pipeline::{
    build_preset, CutoffSpec, GeometryChoice, PipelineConfig, SmuSettings,
};

use crate::error::{CliError, Result};

/// Cut-off used when a config enables the mixup stage without choosing one.
pub const DEFAULT_CUTOFF: f64 = 60.0;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    preset: Option<String>,
    probabilities: Option<ProbabilitySection>,
    order: Option<OrderSection>,
    smu: Option<SmuSection>,
    seed: Option<SeedSection>,
    params: Option<ParamsSection>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProbabilitySection {
    lr: Option<f64>,
    crop: Option<f64>,
    pho: Option<f64>,
    gray: Option<f64>,
    gn: Option<f64>,
    gb: Option<f64>,
    cs: Option<f64>,
    he: Option<f64>,
    ac: Option<f64>,
    ra: Option<f64>,
    rp: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct OrderSection {
    gray_first: Option<bool>,
    gray_last: Option<bool>,
    he_first: Option<bool>,
    he_last: Option<bool>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct SmuSection {
    probability: Option<f64>,
    d0: Option<CutoffValue>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum CutoffValue {
    Fixed(f64),
    Set(Vec<f64>),
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct SeedSection {
    master: Option<u64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ParamsSection {
    crop_min_cover: Option<f64>,
    lowres_min_factor: Option<f64>,
    lowres_max_factor: Option<f64>,
    pho_min_factor: Option<f64>,
    pho_max_factor: Option<f64>,
    blur_sigma_min: Option<f64>,
    blur_sigma_max: Option<f64>,
    noise_std: Option<f64>,
    perspective_max_distortion: Option<f64>,
}

/// A validated pipeline configuration plus its provenance.
#[derive(Debug, Clone)]
pub struct ResolvedConfig {
    pub pipeline: PipelineConfig,
    /// Preset the config was based on, if any.
    pub preset: Option<String>,
}

impl ResolvedConfig {
    /// Canonical `key=value` dump of the effective configuration.
    pub fn dump(&self) -> Vec<String> {
        let cfg = &self.pipeline;
        let p = &cfg.probabilities;
        let mut lines = vec![
            format!("preset={}", self.preset.as_deref().unwrap_or("-")),
            format!("prob.lr={}", p.low_resolution),
            format!("prob.crop={}", p.crop),
            format!("prob.pho={}", p.photometric),
            format!("prob.gray={}", p.grayscale),
            format!("prob.gn={}", p.gaussian_noise),
            format!("prob.gb={}", p.gaussian_blur),
            format!("prob.cs={}", p.channel_shuffle),
            format!("prob.he={}", p.equalization),
            format!("prob.ac={}", p.autocontrast),
            format!("prob.ra={}", p.random_affine),
            format!("prob.rp={}", p.random_perspective),
            format!("order.gray_first={}", cfg.order.gray_first),
            format!("order.gray_last={}", cfg.order.gray_last),
            format!("order.he_first={}", cfg.order.he_first),
            format!("order.he_last={}", cfg.order.he_last),
            format!(
                "geometry={}",
                match cfg.geometry {
                    GeometryChoice::None => "none",
                    GeometryChoice::Perspective => "perspective",
                    GeometryChoice::Affine => "affine",
                }
            ),
        ];
        match &cfg.smu {
            None => lines.push("smu.enabled=false".into()),
            Some(smu) => {
                lines.push("smu.enabled=true".into());
                lines.push(format!("smu.probability={}", smu.probability));
                let d0 = match &smu.cutoff {
                    CutoffSpec::Fixed(d0) => format!("{d0}"),
                    CutoffSpec::UniformSet(set) => set
                        .iter()
                        .map(|v| format!("{v}"))
                        .collect::<Vec<_>>()
                        .join(","),
                };
                lines.push(format!("smu.d0={d0}"));
            }
        }
        let op = &cfg.params;
        lines.push(format!("params.crop_min_cover={}", op.crop_min_cover));
        lines.push(format!(
            "params.lowres_factor={},{}",
            op.lowres_factor.0, op.lowres_factor.1
        ));
        lines.push(format!(
            "params.photometric_factor={},{}",
            op.photometric_factor.0, op.photometric_factor.1
        ));
        lines.push(format!(
            "params.blur_sigma={},{}",
            op.blur_sigma.0, op.blur_sigma.1
        ));
        lines.push(format!("params.noise_std={}", op.noise_std));
        lines.push(format!(
            "params.perspective_max_distortion={}",
            op.perspective_max_distortion
        ));
        lines.push(format!("seed={}", cfg.master_seed));
        lines
    }

    /// Hex digest of the configuration, excluding the master seed.
    pub fn hash(&self) -> String {
        let mut hasher = Sha256::new();
        for line in self.dump() {
            if line.starts_with("seed=") {
                continue;
            }
            hasher.update(line.as_bytes());
            hasher.update(b"\n");
        }
        let digest = hasher.finalize();
        digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }
}

/// Builds the effective configuration from an optional preset name, an
/// optional TOML file, and an optional seed flag (which wins over the
/// file's `[seed]` section).
pub fn resolve(
    preset: Option<&str>,
    config_path: Option<&Path>,
    seed_flag: Option<u64>,
) -> Result<ResolvedConfig> {
    let mut pipeline = PipelineConfig::default();
    let mut preset_name = None;
    if let Some(name) = preset {
        pipeline = build_preset(name)?;
        preset_name = Some(name.to_string());
    }
    if let Some(path) = config_path {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
            path: path.to_path_buf(),
            source,
        })?;
        let file: FileConfig = toml::from_str(&text).map_err(|source| CliError::Config {
            path: path.to_path_buf(),
            source: Box::new(source),
        })?;
        if let Some(name) = &file.preset {
            pipeline = build_preset(name)?;
            preset_name = Some(name.clone());
        }
        apply_file(&mut pipeline, &file);
    }
    if let Some(seed) = seed_flag {
        pipeline.master_seed = seed;
    }
    infer_geometry(&mut pipeline);
    default_order_flags(&mut pipeline);
    pipeline.validate()?;
    Ok(ResolvedConfig {
        pipeline,
        preset: preset_name,
    })
}

fn apply_file(cfg: &mut PipelineConfig, file: &FileConfig) {
    if let Some(prob) = &file.probabilities {
        let p = &mut cfg.probabilities;
        macro_rules! set {
            ($key:ident, $field:ident) => {
                if let Some(v) = prob.$key {
                    p.$field = v;
                }
            };
        }
        set!(lr, low_resolution);
        set!(crop, crop);
        set!(pho, photometric);
        set!(gray, grayscale);
        set!(gn, gaussian_noise);
        set!(gb, gaussian_blur);
        set!(cs, channel_shuffle);
        set!(he, equalization);
        set!(ac, autocontrast);
        set!(ra, random_affine);
        set!(rp, random_perspective);
    }
    if let Some(order) = &file.order {
        if let Some(v) = order.gray_first {
            cfg.order.gray_first = v;
        }
        if let Some(v) = order.gray_last {
            cfg.order.gray_last = v;
        }
        if let Some(v) = order.he_first {
            cfg.order.he_first = v;
        }
        if let Some(v) = order.he_last {
            cfg.order.he_last = v;
        }
    }
    if let Some(smu) = &file.smu {
        let cutoff = match &smu.d0 {
            None => CutoffSpec::Fixed(DEFAULT_CUTOFF),
            Some(CutoffValue::Fixed(d0)) => CutoffSpec::Fixed(*d0),
            Some(CutoffValue::Set(set)) => CutoffSpec::UniformSet(set.clone()),
        };
        cfg.smu = Some(SmuSettings::new(smu.probability.unwrap_or(1.0), cutoff));
    }
    if let Some(seed) = &file.seed {
        if let Some(master) = seed.master {
            cfg.master_seed = master;
        }
    }
    if let Some(params) = &file.params {
        let op = &mut cfg.params;
        if let Some(v) = params.crop_min_cover {
            op.crop_min_cover = v;
        }
        if let Some(v) = params.lowres_min_factor {
            op.lowres_factor.0 = v;
        }
        if let Some(v) = params.lowres_max_factor {
            op.lowres_factor.1 = v;
        }
        if let Some(v) = params.pho_min_factor {
            op.photometric_factor.0 = v;
        }
        if let Some(v) = params.pho_max_factor {
            op.photometric_factor.1 = v;
        }
        if let Some(v) = params.blur_sigma_min {
            op.blur_sigma.0 = v;
        }
        if let Some(v) = params.blur_sigma_max {
            op.blur_sigma.1 = v;
        }
        if let Some(v) = params.noise_std {
            op.noise_std = v;
        }
        if let Some(v) = params.perspective_max_distortion {
            op.perspective_max_distortion = v;
        }
    }
}

/// Derives the geometry choice from the final probabilities. Validation
/// rejects configs where both geometry probabilities are positive.
fn infer_geometry(cfg: &mut PipelineConfig) {
    cfg.geometry = if cfg.probabilities.random_perspective > 0.0 {
        GeometryChoice::Perspective
    } else if cfg.probabilities.random_affine > 0.0 {
        GeometryChoice::Affine
    } else {
        GeometryChoice::None
    };
}

/// Configs assembled purely from explicit keys get the conventional
/// placement (first slot) when they gate grayscale or equalization but set
/// no flags at all.
fn default_order_flags(cfg: &mut PipelineConfig) {
    if cfg.probabilities.grayscale > 0.0 && !cfg.order.gray_first && !cfg.order.gray_last {
        cfg.order.gray_first = true;
    }
    if cfg.probabilities.equalization > 0.0 && !cfg.order.he_first && !cfg.order.he_last {
        cfg.order.he_first = true;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_config(text: &str) -> (tempfile::TempDir, std::path::PathBuf) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cfg.toml");
        let mut f = std::fs::File::create(&path).unwrap();
        f.write_all(text.as_bytes()).unwrap();
        (dir, path)
    }

    #[test]
    fn preset_flag_resolves() {
        let resolved = resolve(Some("SA-B0"), None, Some(42)).unwrap();
        assert_eq!(resolved.pipeline.probabilities.low_resolution, 0.2);
        assert_eq!(resolved.pipeline.master_seed, 42);
        assert_eq!(resolved.preset.as_deref(), Some("SA-B0"));
    }

    #[test]
    fn explicit_keys_override_preset_values() {
        let (_dir, path) = write_config(
            r#"
preset = "SA-B0"

[probabilities]
lr = 0.9
"#,
        );
        let resolved = resolve(None, Some(&path), None).unwrap();
        assert_eq!(resolved.pipeline.probabilities.low_resolution, 0.9);
        assert_eq!(resolved.pipeline.probabilities.crop, 0.2);
    }

    #[test]
    fn smu_section_enables_the_stage() {
        let (_dir, path) = write_config(
            r#"
preset = "SA-B6-O4"

[smu]
probability = 1.0
d0 = [15.0, 30.0, 45.0, 60.0]

[seed]
master = 7
"#,
        );
        let resolved = resolve(None, Some(&path), None).unwrap();
        let smu = resolved.pipeline.smu.as_ref().unwrap();
        assert_eq!(smu.probability, 1.0);
        assert_eq!(
            smu.cutoff,
            CutoffSpec::UniformSet(vec![15.0, 30.0, 45.0, 60.0])
        );
        assert_eq!(resolved.pipeline.master_seed, 7);
        // The CLI seed flag wins over the file.
        let resolved = resolve(None, Some(&path), Some(42)).unwrap();
        assert_eq!(resolved.pipeline.master_seed, 42);
    }

    #[test]
    fn explicit_config_without_preset() {
        let (_dir, path) = write_config(
            r#"
[probabilities]
gray = 1.0
he = 0.5
ra = 0.3
"#,
        );
        let resolved = resolve(None, Some(&path), None).unwrap();
        assert!(resolved.pipeline.order.gray_first);
        assert!(resolved.pipeline.order.he_first);
        assert_eq!(resolved.pipeline.geometry, GeometryChoice::Affine);
        assert_eq!(resolved.preset, None);
    }

    #[test]
    fn ambiguous_geometry_is_rejected() {
        let (_dir, path) = write_config(
            r#"
[probabilities]
ra = 0.3
rp = 0.3
"#,
        );
        assert!(resolve(None, Some(&path), None).is_err());
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let (_dir, path) = write_config("[probabilities]\nblur = 0.5\n");
        assert!(matches!(
            resolve(None, Some(&path), None),
            Err(CliError::Config { .. })
        ));
    }

    #[test]
    fn hash_ignores_seed_but_tracks_config() {
        let a = resolve(Some("SA-B0"), None, Some(1)).unwrap();
        let b = resolve(Some("SA-B0"), None, Some(2)).unwrap();
        let c = resolve(Some("SA-B1"), None, Some(1)).unwrap();
        assert_eq!(a.hash(), b.hash());
        assert_ne!(a.hash(), c.hash());
    }

    #[test]
    fn params_section_overrides_ranges() {
        let (_dir, path) = write_config(
            r#"
preset = "SA-B0"

[params]
blur_sigma_min = 0.5
blur_sigma_max = 1.5
noise_std = 0.05
"#,
        );
        let resolved = resolve(None, Some(&path), None).unwrap();
        assert_eq!(resolved.pipeline.params.blur_sigma, (0.5, 1.5));
        assert_eq!(resolved.pipeline.params.noise_std, 0.05);
    }
}
