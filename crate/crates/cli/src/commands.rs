//! Subcommand implementations. Every command resolves and validates its
//! full configuration before touching any input file.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use rayon::prelude::*;
use specmix_core::pipeline::{
    build_preset, explain_pipeline, preset_description, run_pipeline_traced, PRESET_NAMES,
};
use specmix_core::spectral::{
    baseline_mix, psnr, radial_amplitude_profile, MixupKind, MixupStrategy, Orientation,
};

use crate::bank::RealBank;
use crate::config::{self, ResolvedConfig};
use crate::error::{CliError, Result};
use crate::io::{export_spectrum_png, load_image, quantize8, save_image, scan_corpus};
use crate::manifest::{write_manifest, ImageRecord};

#[derive(Debug, Args)]
pub struct AugmentArgs {
    /// Directory of synthetic input images.
    #[arg(long)]
    pub syn_dir: PathBuf,
    /// Directory of real images feeding the spectrum-mixup stage.
    #[arg(long)]
    pub real_dir: Option<PathBuf>,
    /// Output directory (created if missing); also receives manifest.txt.
    #[arg(long)]
    pub out_dir: PathBuf,
    /// Preset name (see `list-presets`).
    #[arg(long, group = "pipeline")]
    pub preset: Option<String>,
    /// TOML configuration file; may name a preset and override its keys.
    #[arg(long, group = "pipeline")]
    pub config: Option<PathBuf>,
    /// Master seed; overrides the config file's [seed] section.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Process only the first N corpus entries.
    #[arg(long)]
    pub max_images: Option<usize>,
    /// Worker threads; any value produces identical outputs.
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
}

pub fn cmd_augment(args: &AugmentArgs) -> Result<()> {
    if args.workers == 0 {
        return Err(CliError::ZeroWorkers);
    }
    let resolved = config::resolve(
        args.preset.as_deref(),
        args.config.as_deref(),
        args.seed,
    )?;
    let cfg = &resolved.pipeline;
    if cfg.smu.is_some() && args.real_dir.is_none() {
        return Err(CliError::MissingRealDir);
    }

    let mut corpus = scan_corpus(&args.syn_dir)?;
    if let Some(max) = args.max_images {
        corpus.truncate(max);
    }
    if corpus.is_empty() {
        return Err(CliError::EmptyCorpus {
            path: args.syn_dir.clone(),
        });
    }

    let bank = match (&cfg.smu, &args.real_dir) {
        (Some(_), Some(dir)) => {
            let real_corpus = scan_corpus(dir)?;
            // Pre-size the bank to the first synthetic image; the mixup
            // resamples again per image if dimensions vary.
            let probe = load_image(&corpus.absolute(0))?;
            Some(RealBank::load(
                &real_corpus,
                Some((probe.height(), probe.width())),
                cfg.master_seed,
            )?)
        }
        _ => None,
    };

    std::fs::create_dir_all(&args.out_dir).map_err(|source| CliError::Write {
        path: args.out_dir.clone(),
        source,
    })?;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.workers)
        .build()
        .expect("worker pool");
    let records: Vec<ImageRecord> = pool.install(|| {
        (0..corpus.len())
            .into_par_iter()
            .map(|index| -> Result<ImageRecord> {
                let rel = corpus.relative(index);
                let syn = load_image(&corpus.absolute(index))?;
                let (real, real_index) = match &bank {
                    Some(bank) => {
                        let (img, slot) = bank.sample(index as u64);
                        (Some(img), Some(slot))
                    }
                    None => (None, None),
                };
                let (out, trace) = run_pipeline_traced(&syn, real, cfg, index as u64)?;
                let out_rel = rel.with_extension("png");
                let out_path = args.out_dir.join(&out_rel);
                if let Some(parent) = out_path.parent() {
                    std::fs::create_dir_all(parent).map_err(|source| CliError::Write {
                        path: parent.to_path_buf(),
                        source,
                    })?;
                }
                save_image(&out, &out_path)?;
                Ok(ImageRecord::new(
                    index,
                    rel.to_path_buf(),
                    out_rel,
                    &trace,
                    real_index,
                ))
            })
            .collect::<Result<Vec<_>>>()
    })?;

    write_manifest(&args.out_dir, &resolved, &records)?;
    println!(
        "augmented {} images into {} (seed {}, config {})",
        records.len(),
        args.out_dir.display(),
        cfg.master_seed,
        resolved.hash(),
    );
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyName {
    Smu,
    PhaseSwap,
    HardLowSwap,
    WeightedSum,
    BandInterp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrientationName {
    /// Real image supplies high frequencies.
    KeepSynLow,
    /// Real image supplies low frequencies.
    KeepSynHigh,
}

impl From<OrientationName> for Orientation {
    fn from(o: OrientationName) -> Self {
        match o {
            OrientationName::KeepSynLow => Orientation::KeepSynLow,
            OrientationName::KeepSynHigh => Orientation::KeepSynHigh,
        }
    }
}

#[derive(Debug, Args)]
pub struct MixArgs {
    /// Synthetic input image.
    #[arg(long)]
    pub syn: PathBuf,
    /// Real input image.
    #[arg(long)]
    pub real: PathBuf,
    /// Output path (.png).
    #[arg(long)]
    pub out: PathBuf,
    /// Cut-off frequency for the soft-assignment map, in bins.
    #[arg(long)]
    pub d0: f64,
    /// Mixing strategy.
    #[arg(long, value_enum, default_value_t = StrategyName::Smu)]
    pub strategy: StrategyName,
    /// Disk radius for the band strategies, in bins.
    #[arg(long, default_value_t = 8.0)]
    pub radius: f64,
    /// Blend weight for weighted-sum and band-interp.
    #[arg(long, default_value_t = 0.5)]
    pub lambda: f64,
    /// Which band the synthetic image keeps.
    #[arg(long, value_enum, default_value_t = OrientationName::KeepSynLow)]
    pub orientation: OrientationName,
    /// Prefix for before/after log-amplitude spectrum visualizations.
    #[arg(long)]
    pub spectrum_out: Option<PathBuf>,
}

fn strategy_from_args(args: &MixArgs) -> MixupStrategy {
    let kind = match args.strategy {
        StrategyName::Smu => MixupKind::Smu { cutoff: args.d0 },
        StrategyName::PhaseSwap => MixupKind::PhaseSwap,
        StrategyName::HardLowSwap => MixupKind::HardLowSwap {
            radius: args.radius,
        },
        StrategyName::WeightedSum => MixupKind::WeightedSum {
            lambda: args.lambda,
        },
        StrategyName::BandInterp => MixupKind::BandInterp {
            radius: args.radius,
            lambda: args.lambda,
        },
    };
    MixupStrategy::new(kind, args.orientation.into())
}

pub fn cmd_mix(args: &MixArgs) -> Result<()> {
    // The cut-off is validated unconditionally: it parameterizes the
    // default strategy and must be positive.
    if !(args.d0 > 0.0) || !args.d0.is_finite() {
        return Err(specmix_core::Error::InvalidCutoff(args.d0).into());
    }
    let strategy = strategy_from_args(args);
    strategy.validate()?;

    let syn = load_image(&args.syn)?;
    let real = load_image(&args.real)?;
    let out = baseline_mix(&syn, &real, &strategy)?;
    save_image(&out, &args.out)?;
    if let Some(prefix) = &args.spectrum_out {
        export_spectrum_png(&syn, &suffixed(prefix, "-before.png"))?;
        export_spectrum_png(&out, &suffixed(prefix, "-after.png"))?;
    }
    println!("mixed {} -> {}", args.syn.display(), args.out.display());
    Ok(())
}

fn suffixed(prefix: &Path, suffix: &str) -> PathBuf {
    let mut name = prefix.as_os_str().to_os_string();
    name.push(suffix);
    PathBuf::from(name)
}

#[derive(Debug, Args)]
pub struct InspectArgs {
    /// Image to inspect.
    #[arg(long)]
    pub image: PathBuf,
    /// Output path for the log-amplitude spectrum (.png).
    #[arg(long)]
    pub out: PathBuf,
    /// Number of annuli in the radial profile.
    #[arg(long, default_value_t = 16)]
    pub bins: usize,
    /// Optional CSV output for the radial profile.
    #[arg(long)]
    pub profile_out: Option<PathBuf>,
}

pub fn cmd_inspect(args: &InspectArgs) -> Result<()> {
    let img = load_image(&args.image)?;
    export_spectrum_png(&img, &args.out)?;
    let profile = radial_amplitude_profile(&img, args.bins)?;
    if let Some(path) = &args.profile_out {
        let mut text = String::from("bin,mean_log_amplitude\n");
        for (i, v) in profile.iter().enumerate() {
            text.push_str(&format!("{i},{v}\n"));
        }
        write_text(path, &text)?;
    } else {
        for (i, v) in profile.iter().enumerate() {
            println!("bin {i}: {v:.6}");
        }
    }
    println!("spectrum written to {}", args.out.display());
    Ok(())
}

#[derive(Debug, Args)]
pub struct PsnrReportArgs {
    /// Synthetic input image.
    #[arg(long)]
    pub syn: PathBuf,
    /// Real input image.
    #[arg(long)]
    pub real: PathBuf,
    /// Output CSV path.
    #[arg(long)]
    pub out_table: PathBuf,
}

/// The strategy grid the report sweeps: the soft mixup across its studied
/// cut-offs, plus each baseline at a typical setting, with both
/// orientations wherever a band is involved.
fn report_grid() -> Vec<(String, String, MixupStrategy)> {
    let mut rows = Vec::new();
    for d0 in [15.0, 30.0, 45.0, 60.0] {
        rows.push((
            "smu".to_string(),
            format!("d0={d0}"),
            MixupStrategy::keep_syn_low(MixupKind::Smu { cutoff: d0 }),
        ));
    }
    rows.push((
        "phase-swap".to_string(),
        "-".to_string(),
        MixupStrategy::keep_syn_low(MixupKind::PhaseSwap),
    ));
    for orientation in [Orientation::KeepSynLow, Orientation::KeepSynHigh] {
        rows.push((
            "hard-low-swap".to_string(),
            format!("radius=8,{}", orientation_key(orientation)),
            MixupStrategy::new(MixupKind::HardLowSwap { radius: 8.0 }, orientation),
        ));
    }
    rows.push((
        "weighted-sum".to_string(),
        "lambda=0.5".to_string(),
        MixupStrategy::keep_syn_low(MixupKind::WeightedSum { lambda: 0.5 }),
    ));
    for orientation in [Orientation::KeepSynLow, Orientation::KeepSynHigh] {
        rows.push((
            "band-interp".to_string(),
            format!("radius=8,lambda=0.5,{}", orientation_key(orientation)),
            MixupStrategy::new(
                MixupKind::BandInterp {
                    radius: 8.0,
                    lambda: 0.5,
                },
                orientation,
            ),
        ));
    }
    rows
}

fn orientation_key(o: Orientation) -> &'static str {
    match o {
        Orientation::KeepSynLow => "orientation=keep-syn-low",
        Orientation::KeepSynHigh => "orientation=keep-syn-high",
    }
}

pub fn cmd_psnr_report(args: &PsnrReportArgs) -> Result<()> {
    let syn = load_image(&args.syn)?;
    let real = load_image(&args.real)?;
    let mut table = String::from("strategy,parameters,psnr_db\n");
    for (name, params, strategy) in report_grid() {
        let mixed = baseline_mix(&syn, &real, &strategy)?;
        // PSNR of the augmented image as it would be stored (8-bit grid)
        // against the original synthetic input.
        let value = psnr(&quantize8(&mixed), &syn)?;
        let shown = if value.is_infinite() {
            "inf".to_string()
        } else {
            format!("{value:.4}")
        };
        table.push_str(&format!("{name},{params},{shown}\n"));
    }
    write_text(&args.out_table, &table)?;
    println!("wrote {}", args.out_table.display());
    Ok(())
}

pub fn cmd_list_presets() -> Result<()> {
    for &name in PRESET_NAMES {
        println!("{name:<16} {}", preset_description(name)?);
    }
    Ok(())
}

#[derive(Debug, Args)]
pub struct ExplainArgs {
    /// Preset name to explain.
    #[arg(long)]
    pub preset: String,
}

pub fn cmd_explain(args: &ExplainArgs) -> Result<()> {
    let cfg = build_preset(&args.preset)?;
    let resolved = ResolvedConfig {
        pipeline: cfg,
        preset: Some(args.preset.clone()),
    };
    println!("{}: {}", args.preset, preset_description(&args.preset)?);
    println!("stages: {}", explain_pipeline(&resolved.pipeline).join(" -> "));
    for line in resolved.dump() {
        println!("{line}");
    }
    Ok(())
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    let mut file = std::fs::File::create(path).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })?;
    file.write_all(text.as_bytes())
        .map_err(|source| CliError::Write {
            path: path.to_path_buf(),
            source,
        })
}
