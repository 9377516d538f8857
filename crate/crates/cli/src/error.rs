//! CLI error type; every variant carries enough context for a one-line
//! diagnostic.

use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] specmix_core::Error),
    #[error("cannot read {}: {source}", path.display())]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write {}: {source}", path.display())]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot decode {}: {source}", path.display())]
    Decode {
        path: PathBuf,
        source: image::ImageError,
    },
    #[error("cannot encode {}: {source}", path.display())]
    Encode {
        path: PathBuf,
        source: image::ImageError,
    },
    #[error("cannot parse {}: {source}", path.display())]
    Config {
        path: PathBuf,
        source: Box<toml::de::Error>,
    },
    #[error("outputs are written losslessly; {} must end in .png", path.display())]
    NonPngOutput { path: PathBuf },
    #[error("directory {} does not exist", path.display())]
    MissingDir { path: PathBuf },
    #[error("no images found under {}", path.display())]
    EmptyCorpus { path: PathBuf },
    #[error("the resolved config enables spectrum mixup but --real-dir was not given")]
    MissingRealDir,
    #[error("--workers must be at least 1")]
    ZeroWorkers,
}

pub type Result<T> = std::result::Result<T, CliError>;
