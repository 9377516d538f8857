//! The real-image bank feeding the spectrum-mixup stage.
//!
//! Only pixel data enters the bank; there is no identity or label field,
//! so nothing downstream can consume annotation information.

use specmix_core::image::ImageBuffer;
use specmix_core::rng::RngStream;

use crate::error::{CliError, Result};
use crate::io::{load_image, Corpus};

/// Stage index reserved for bank draws, outside the pipeline's stage range.
const BANK_DRAW_STAGE: u64 = 1 << 32;

/// Immutable pool of real images with deterministic per-index sampling.
#[derive(Debug)]
pub struct RealBank {
    images: Vec<ImageBuffer>,
    seed: u64,
}

impl RealBank {
    /// Loads every corpus entry, optionally pre-resized to a common target
    /// resolution.
    pub fn load(corpus: &Corpus, target: Option<(usize, usize)>, seed: u64) -> Result<Self> {
        if corpus.is_empty() {
            return Err(CliError::EmptyCorpus {
                path: corpus.root().to_path_buf(),
            });
        }
        let mut images = Vec::with_capacity(corpus.len());
        for i in 0..corpus.len() {
            let mut img = load_image(&corpus.absolute(i))?;
            if let Some((h, w)) = target {
                if img.height() != h || img.width() != w {
                    img = img.resize_bilinear(h, w)?;
                }
            }
            images.push(img);
        }
        Ok(Self { images, seed })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// Bank slot drawn for the given image index.
    pub fn index_for(&self, image_index: u64) -> usize {
        RngStream::derive(self.seed, image_index, BANK_DRAW_STAGE).index(self.images.len())
    }

    /// Uniform deterministic draw for one pipeline image.
    pub fn sample(&self, image_index: u64) -> (&ImageBuffer, usize) {
        let slot = self.index_for(image_index);
        (&self.images[slot], slot)
    }
}
