//! Composed augmentation pipeline: probability gating, first/last ordering
//! of grayscale and equalization, geometry choice, and the final spectrum
//! mixup stage.

pub mod presets;

pub use presets::{build_preset, preset_description, PRESET_NAMES};

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::augment::{
    self, appearance, geometry, AugOpKind, OpParams,
};
use crate::error::{Error, Result};
use crate::image::ImageBuffer;
use crate::rng::RngStream;
use crate::spectral::mixup::smu_mix;

/// Per-operation gate probabilities.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Probabilities {
    pub crop: f64,
    pub low_resolution: f64,
    pub photometric: f64,
    pub grayscale: f64,
    pub gaussian_noise: f64,
    pub gaussian_blur: f64,
    pub channel_shuffle: f64,
    pub equalization: f64,
    pub autocontrast: f64,
    pub random_affine: f64,
    pub random_perspective: f64,
}

impl Probabilities {
    pub fn get(&self, kind: AugOpKind) -> f64 {
        match kind {
            AugOpKind::Crop => self.crop,
            AugOpKind::LowResolution => self.low_resolution,
            AugOpKind::Photometric => self.photometric,
            AugOpKind::Grayscale => self.grayscale,
            AugOpKind::GaussianNoise => self.gaussian_noise,
            AugOpKind::GaussianBlur => self.gaussian_blur,
            AugOpKind::ChannelShuffle => self.channel_shuffle,
            AugOpKind::HistogramEqualization => self.equalization,
            AugOpKind::Autocontrast => self.autocontrast,
            AugOpKind::RandomAffine => self.random_affine,
            AugOpKind::RandomPerspective => self.random_perspective,
        }
    }

    pub fn set(&mut self, kind: AugOpKind, p: f64) {
        match kind {
            AugOpKind::Crop => self.crop = p,
            AugOpKind::LowResolution => self.low_resolution = p,
            AugOpKind::Photometric => self.photometric = p,
            AugOpKind::Grayscale => self.grayscale = p,
            AugOpKind::GaussianNoise => self.gaussian_noise = p,
            AugOpKind::GaussianBlur => self.gaussian_blur = p,
            AugOpKind::ChannelShuffle => self.channel_shuffle = p,
            AugOpKind::HistogramEqualization => self.equalization = p,
            AugOpKind::Autocontrast => self.autocontrast = p,
            AugOpKind::RandomAffine => self.random_affine = p,
            AugOpKind::RandomPerspective => self.random_perspective = p,
        }
    }
}

/// Whether grayscale and equalization run before and/or after the rest of
/// the chain. When both run in the same slot, grayscale goes first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct OrderFlags {
    pub gray_first: bool,
    pub gray_last: bool,
    pub he_first: bool,
    pub he_last: bool,
}

/// Which geometry operation the pipeline may apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GeometryChoice {
    #[default]
    None,
    Perspective,
    Affine,
}

/// Cut-off frequency specification for the spectrum mixup stage.
#[derive(Debug, Clone, PartialEq)]
pub enum CutoffSpec {
    Fixed(f64),
    /// One value drawn uniformly from the set per mixed image.
    UniformSet(Vec<f64>),
}

impl CutoffSpec {
    fn validate(&self) -> Result<()> {
        match self {
            CutoffSpec::Fixed(d0) => {
                if !(*d0 > 0.0) || !d0.is_finite() {
                    return Err(Error::InvalidCutoff(*d0));
                }
            }
            CutoffSpec::UniformSet(set) => {
                if set.is_empty() {
                    return Err(Error::EmptyCutoffSet);
                }
                for &d0 in set {
                    if !(d0 > 0.0) || !d0.is_finite() {
                        return Err(Error::InvalidCutoff(d0));
                    }
                }
            }
        }
        Ok(())
    }

    fn resolve(&self, rng: &mut RngStream) -> f64 {
        match self {
            CutoffSpec::Fixed(d0) => *d0,
            CutoffSpec::UniformSet(set) => set[rng.index(set.len())],
        }
    }
}

/// Spectrum-mixup stage settings.
#[derive(Debug, Clone, PartialEq)]
pub struct SmuSettings {
    pub probability: f64,
    pub cutoff: CutoffSpec,
}

impl SmuSettings {
    pub fn new(probability: f64, cutoff: CutoffSpec) -> Self {
        Self {
            probability,
            cutoff,
        }
    }
}

/// A fully specified augmentation pipeline.
#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub probabilities: Probabilities,
    pub order: OrderFlags,
    pub geometry: GeometryChoice,
    pub smu: Option<SmuSettings>,
    pub params: OpParams,
    pub master_seed: u64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            probabilities: Probabilities::default(),
            order: OrderFlags::default(),
            geometry: GeometryChoice::None,
            smu: None,
            params: OpParams::default(),
            master_seed: 0,
        }
    }
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<()> {
        for kind in AugOpKind::ALL {
            let p = self.probabilities.get(kind);
            if !(0.0..=1.0).contains(&p) || !p.is_finite() {
                return Err(Error::InvalidProbability {
                    name: kind.key(),
                    value: p,
                });
            }
        }
        if self.probabilities.grayscale > 0.0 && !self.order.gray_first && !self.order.gray_last {
            return Err(Error::GrayscaleNeverPlaced);
        }
        if self.probabilities.equalization > 0.0 && !self.order.he_first && !self.order.he_last {
            return Err(Error::EqualizationNeverPlaced);
        }
        if self.probabilities.random_affine > 0.0 && self.probabilities.random_perspective > 0.0 {
            return Err(Error::AmbiguousGeometry);
        }
        if let Some(smu) = &self.smu {
            if !(0.0..=1.0).contains(&smu.probability) || !smu.probability.is_finite() {
                return Err(Error::InvalidProbability {
                    name: "smu",
                    value: smu.probability,
                });
            }
            smu.cutoff.validate()?;
        }
        self.params.validate()
    }

    fn geometry_probability(&self) -> f64 {
        match self.geometry {
            GeometryChoice::None => 0.0,
            GeometryChoice::Perspective => self.probabilities.random_perspective,
            GeometryChoice::Affine => self.probabilities.random_affine,
        }
    }
}

/// Stable stage indices; each stage derives its random stream from
/// `(master seed, image index, stage index)`, so disabling one stage never
/// shifts another stage's draws.
mod stage {
    pub const GRAY_FIRST: u64 = 0;
    pub const HE_FIRST: u64 = 1;
    pub const AUTOCONTRAST: u64 = 2;
    pub const LOW_RESOLUTION: u64 = 3;
    pub const CROP: u64 = 4;
    pub const PHOTOMETRIC: u64 = 5;
    pub const GAUSSIAN_BLUR: u64 = 6;
    pub const GAUSSIAN_NOISE: u64 = 7;
    pub const CHANNEL_SHUFFLE: u64 = 8;
    pub const GEOMETRY: u64 = 9;
    pub const GRAY_LAST: u64 = 10;
    pub const HE_LAST: u64 = 11;
    pub const SMU: u64 = 12;
}

/// Label of one pipeline stage, as shown in traces and manifests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StageLabel {
    Gray,
    He,
    Ac,
    Lr,
    Crop,
    Pho,
    Gb,
    Gn,
    Cs,
    Per,
    Aff,
    Smu,
}

impl StageLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            StageLabel::Gray => "Gray",
            StageLabel::He => "HE",
            StageLabel::Ac => "AC",
            StageLabel::Lr => "LR",
            StageLabel::Crop => "Crop",
            StageLabel::Pho => "Pho",
            StageLabel::Gb => "GB",
            StageLabel::Gn => "GN",
            StageLabel::Cs => "CS",
            StageLabel::Per => "Per",
            StageLabel::Aff => "Aff",
            StageLabel::Smu => "SMU",
        }
    }
}

impl core::fmt::Display for StageLabel {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Parameters drawn for one executed stage.
#[derive(Debug, Clone, PartialEq)]
pub enum StageParams {
    /// The stage has no free parameters.
    Unit,
    Crop(geometry::CropParams),
    LowRes(geometry::LowResParams),
    Photometric(appearance::PhotometricParams),
    Blur(appearance::BlurParams),
    Noise(appearance::NoiseParams),
    Shuffle(appearance::ShuffleParams),
    Affine(geometry::AffineParams),
    Perspective(geometry::PerspectiveParams),
    Smu { cutoff: f64 },
}

/// Gate decision (and drawn parameters, when the gate passed) for one
/// configured stage.
#[derive(Debug, Clone, PartialEq)]
pub struct StageRecord {
    pub label: StageLabel,
    pub gate: bool,
    pub params: Option<StageParams>,
}

/// Every decision one pipeline run made.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RunTrace {
    pub stages: Vec<StageRecord>,
}

impl RunTrace {
    /// Labels of the stages that actually ran, in execution order.
    pub fn executed(&self) -> Vec<StageLabel> {
        self.stages
            .iter()
            .filter(|s| s.gate)
            .map(|s| s.label)
            .collect()
    }

    /// Cut-off frequency used by the mixup stage, if it ran.
    pub fn cutoff(&self) -> Option<f64> {
        self.stages.iter().find_map(|s| match s.params {
            Some(StageParams::Smu { cutoff }) => Some(cutoff),
            _ => None,
        })
    }
}

/// Draws a gate decision: true with probability `p`.
pub fn sample_gate(p: f64, rng: &mut RngStream) -> bool {
    rng.unit() < p
}

/// Runs the configured pipeline on one image.
pub fn run_pipeline(
    syn: &ImageBuffer,
    real: Option<&ImageBuffer>,
    cfg: &PipelineConfig,
    image_index: u64,
) -> Result<ImageBuffer> {
    Ok(run_pipeline_traced(syn, real, cfg, image_index)?.0)
}

/// Runs the pipeline and reports every gate decision and parameter draw.
pub fn run_pipeline_traced(
    syn: &ImageBuffer,
    real: Option<&ImageBuffer>,
    cfg: &PipelineConfig,
    image_index: u64,
) -> Result<(ImageBuffer, RunTrace)> {
    cfg.validate()?;
    if cfg.smu.is_some() && real.is_none() {
        return Err(Error::MissingRealImage);
    }
    let mut trace = RunTrace::default();
    let mut image = syn.clone();
    for (label, stage_index, probability) in stage_plan(cfg) {
        let mut rng = RngStream::derive(cfg.master_seed, image_index, stage_index);
        if !sample_gate(probability, &mut rng) {
            trace.stages.push(StageRecord {
                label,
                gate: false,
                params: None,
            });
            continue;
        }
        let params = apply_stage(&mut image, label, real, cfg, &mut rng)?;
        trace.stages.push(StageRecord {
            label,
            gate: true,
            params: Some(params),
        });
    }
    Ok((image, trace))
}

/// The configured stages in execution order: `(label, stage index, p)`.
fn stage_plan(cfg: &PipelineConfig) -> Vec<(StageLabel, u64, f64)> {
    let p = &cfg.probabilities;
    let mut plan = Vec::new();
    let mut push = |label, index, probability: f64| {
        if probability > 0.0 {
            plan.push((label, index, probability));
        }
    };
    if cfg.order.gray_first {
        push(StageLabel::Gray, stage::GRAY_FIRST, p.grayscale);
    }
    if cfg.order.he_first {
        push(StageLabel::He, stage::HE_FIRST, p.equalization);
    }
    push(StageLabel::Ac, stage::AUTOCONTRAST, p.autocontrast);
    push(StageLabel::Lr, stage::LOW_RESOLUTION, p.low_resolution);
    push(StageLabel::Crop, stage::CROP, p.crop);
    push(StageLabel::Pho, stage::PHOTOMETRIC, p.photometric);
    push(StageLabel::Gb, stage::GAUSSIAN_BLUR, p.gaussian_blur);
    push(StageLabel::Gn, stage::GAUSSIAN_NOISE, p.gaussian_noise);
    push(StageLabel::Cs, stage::CHANNEL_SHUFFLE, p.channel_shuffle);
    match cfg.geometry {
        GeometryChoice::None => {}
        GeometryChoice::Perspective => {
            push(StageLabel::Per, stage::GEOMETRY, cfg.geometry_probability())
        }
        GeometryChoice::Affine => {
            push(StageLabel::Aff, stage::GEOMETRY, cfg.geometry_probability())
        }
    }
    if cfg.order.gray_last {
        push(StageLabel::Gray, stage::GRAY_LAST, p.grayscale);
    }
    if cfg.order.he_last {
        push(StageLabel::He, stage::HE_LAST, p.equalization);
    }
    if let Some(smu) = &cfg.smu {
        push(StageLabel::Smu, stage::SMU, smu.probability);
    }
    plan
}

fn apply_stage(
    image: &mut ImageBuffer,
    label: StageLabel,
    real: Option<&ImageBuffer>,
    cfg: &PipelineConfig,
    rng: &mut RngStream,
) -> Result<StageParams> {
    let params = &cfg.params;
    let record = match label {
        StageLabel::Gray => {
            // Grayscale keeps three channels; single-channel inputs are
            // already gray and pass through.
            if image.channels() == 3 {
                *image = appearance::grayscale3(image)?;
            }
            StageParams::Unit
        }
        StageLabel::He => {
            *image = appearance::equalize_histogram(image);
            StageParams::Unit
        }
        StageLabel::Ac => {
            *image = appearance::autocontrast(image);
            StageParams::Unit
        }
        StageLabel::Lr => {
            let p = geometry::LowResParams::sample(rng, params);
            *image = geometry::apply_low_resolution(image, &p)?;
            StageParams::LowRes(p)
        }
        StageLabel::Crop => {
            let p = geometry::CropParams::sample(rng, image.height(), image.width(), params);
            *image = geometry::apply_crop(image, &p);
            StageParams::Crop(p)
        }
        StageLabel::Pho => {
            let p = appearance::PhotometricParams::sample(rng, params);
            *image = appearance::apply_photometric(image, &p);
            StageParams::Photometric(p)
        }
        StageLabel::Gb => {
            let p = appearance::BlurParams::sample(rng, params);
            *image = appearance::apply_gaussian_blur(image, &p)?;
            StageParams::Blur(p)
        }
        StageLabel::Gn => {
            let p = appearance::NoiseParams::sample(rng);
            *image = appearance::apply_gaussian_noise(image, &p, params);
            StageParams::Noise(p)
        }
        StageLabel::Cs => {
            let p = appearance::ShuffleParams::sample(rng);
            // As with grayscale, shuffling is a no-op on single-channel
            // images.
            if image.channels() == 3 {
                *image = appearance::apply_channel_shuffle(image, &p)?;
            }
            StageParams::Shuffle(p)
        }
        StageLabel::Per => {
            let p =
                geometry::PerspectiveParams::sample(rng, image.height(), image.width(), params);
            *image = geometry::apply_perspective(image, &p);
            StageParams::Perspective(p)
        }
        StageLabel::Aff => {
            let p = geometry::AffineParams::sample(rng, image.height(), image.width());
            *image = geometry::apply_affine(image, &p);
            StageParams::Affine(p)
        }
        StageLabel::Smu => {
            let smu = cfg.smu.as_ref().expect("stage only planned when set");
            let real = real.ok_or(Error::MissingRealImage)?;
            let cutoff = smu.cutoff.resolve(rng);
            *image = smu_mix(image, real, cutoff)?;
            StageParams::Smu { cutoff }
        }
    };
    Ok(record)
}

/// Human-readable stage list in exactly the order `run_pipeline` executes.
pub fn explain_pipeline(cfg: &PipelineConfig) -> Vec<String> {
    stage_plan(cfg)
        .into_iter()
        .map(|(label, _, p)| match (label, &cfg.smu) {
            (StageLabel::Smu, Some(smu)) => match &smu.cutoff {
                CutoffSpec::Fixed(d0) => format!("SMU@{p}(d0={d0})"),
                CutoffSpec::UniformSet(set) => {
                    let values: Vec<String> = set.iter().map(|v| format!("{v}")).collect();
                    format!("SMU@{p}(d0~{{{}}})", values.join(","))
                }
            },
            _ => format!("{label}@{p}"),
        })
        .collect()
}

/// Convenience wrapper used by tests and the augment frontend: the same
/// configuration with every configured gate forced open (p > 0 becomes 1).
pub fn with_open_gates(cfg: &PipelineConfig) -> PipelineConfig {
    let mut open = cfg.clone();
    for kind in AugOpKind::ALL {
        if open.probabilities.get(kind) > 0.0 {
            open.probabilities.set(kind, 1.0);
        }
    }
    if let Some(smu) = &mut open.smu {
        if smu.probability > 0.0 {
            smu.probability = 1.0;
        }
    }
    open
}

// Re-exported so pipeline consumers see one coherent namespace.
pub use augment::base_augment;
