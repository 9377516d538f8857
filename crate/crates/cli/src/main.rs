use clap::{Parser, Subcommand};
use specmix_cli::commands::{
    cmd_augment, cmd_explain, cmd_inspect, cmd_list_presets, cmd_mix, cmd_psnr_report,
    AugmentArgs, ExplainArgs, InspectArgs, MixArgs, PsnrReportArgs,
};

/// Frequency-domain mixing and spatial augmentation for image corpora.
#[derive(Parser)]
#[command(name = "specmix", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Augment a corpus of synthetic images with a preset or config file.
    Augment(AugmentArgs),
    /// Mix one synthetic/real pair in the frequency domain.
    Mix(MixArgs),
    /// Export spectrum visualizations and a radial amplitude profile.
    Inspect(InspectArgs),
    /// Compare every mixing strategy by PSNR on one image pair.
    PsnrReport(PsnrReportArgs),
    /// List the preset catalog.
    ListPresets,
    /// Show a preset's stage order and resolved configuration.
    Explain(ExplainArgs),
}

fn main() {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Augment(args) => cmd_augment(args),
        Command::Mix(args) => cmd_mix(args),
        Command::Inspect(args) => cmd_inspect(args),
        Command::PsnrReport(args) => cmd_psnr_report(args),
        Command::ListPresets => cmd_list_presets(),
        Command::Explain(args) => cmd_explain(args),
    };
    if let Err(e) = result {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
