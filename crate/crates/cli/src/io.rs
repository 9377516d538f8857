//! Image and corpus IO: 8-bit raster decoding into unit-interval buffers,
//! lossless PNG output, deterministic directory scans, and spectrum
//! visualization export.

use std::path::{Path, PathBuf};

use image::{DynamicImage, GrayImage, RgbImage};
use specmix_core::image::ImageBuffer;
use specmix_core::spectral::{decompose, dft_forward};
use walkdir::WalkDir;

use crate::error::{CliError, Result};

const SUPPORTED_EXTENSIONS: [&str; 3] = ["png", "jpg", "jpeg"];

/// Decodes a raster file into `[0, 1]` samples (`v / 255`).
///
/// Gray and gray+alpha sources load as one channel, everything else as
/// three; alpha is discarded.
pub fn load_image(path: &Path) -> Result<ImageBuffer> {
    let decoded = image::open(path).map_err(|source| CliError::Decode {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(match decoded {
        DynamicImage::ImageLuma8(_)
        | DynamicImage::ImageLumaA8(_)
        | DynamicImage::ImageLuma16(_)
        | DynamicImage::ImageLumaA16(_) => {
            let gray = decoded.to_luma8();
            let (w, h) = gray.dimensions();
            let data = gray.pixels().map(|p| p.0[0] as f64 / 255.0).collect();
            ImageBuffer::new(h as usize, w as usize, 1, data)?
        }
        _ => {
            let rgb = decoded.to_rgb8();
            let (w, h) = rgb.dimensions();
            let mut data = vec![0.0f64; (w * h) as usize * 3];
            let plane = (w * h) as usize;
            for (i, p) in rgb.pixels().enumerate() {
                for c in 0..3 {
                    data[c * plane + i] = p.0[c] as f64 / 255.0;
                }
            }
            ImageBuffer::new(h as usize, w as usize, 3, data)?
        }
    })
}

/// Encodes losslessly as 8-bit PNG with round-half-up quantization.
pub fn save_image(img: &ImageBuffer, path: &Path) -> Result<()> {
    require_png(path)?;
    let (h, w) = (img.height() as u32, img.width() as u32);
    let result = if img.channels() == 1 {
        let bytes: Vec<u8> = img.channel(0).iter().map(|&v| quantize_byte(v)).collect();
        GrayImage::from_raw(w, h, bytes).expect("sized buffer").save(path)
    } else {
        let plane = img.plane_len();
        let mut bytes = vec![0u8; plane * 3];
        for i in 0..plane {
            for c in 0..3 {
                bytes[i * 3 + c] = quantize_byte(img.channel(c)[i]);
            }
        }
        RgbImage::from_raw(w, h, bytes).expect("sized buffer").save(path)
    };
    result.map_err(|source| CliError::Encode {
        path: path.to_path_buf(),
        source,
    })
}

fn require_png(path: &Path) -> Result<()> {
    let ok = path
        .extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| e.eq_ignore_ascii_case("png"));
    if ok {
        Ok(())
    } else {
        Err(CliError::NonPngOutput {
            path: path.to_path_buf(),
        })
    }
}

#[inline]
fn quantize_byte(v: f64) -> u8 {
    (v * 255.0).round() as u8
}

/// Snaps samples onto the 8-bit grid (`round(v * 255) / 255`), the values
/// an image would carry after a save/load round trip.
pub fn quantize8(img: &ImageBuffer) -> ImageBuffer {
    let data = img
        .data()
        .iter()
        .map(|&v| quantize_byte(v) as f64 / 255.0)
        .collect();
    ImageBuffer::new(img.height(), img.width(), img.channels(), data)
        .expect("quantized samples stay in range")
}

/// An ordered, reproducible list of image files under one root.
#[derive(Debug, Clone)]
pub struct Corpus {
    root: PathBuf,
    entries: Vec<PathBuf>,
}

impl Corpus {
    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Path of entry `i` relative to the corpus root.
    pub fn relative(&self, i: usize) -> &Path {
        &self.entries[i]
    }

    pub fn absolute(&self, i: usize) -> PathBuf {
        self.root.join(&self.entries[i])
    }

    /// Keeps only the first `max` entries.
    pub fn truncate(&mut self, max: usize) {
        self.entries.truncate(max);
    }
}

/// Recursively collects supported image files, sorted lexicographically by
/// relative path so rescans of identical directory contents are identical.
pub fn scan_corpus(root: &Path) -> Result<Corpus> {
    if !root.is_dir() {
        return Err(CliError::MissingDir {
            path: root.to_path_buf(),
        });
    }
    let mut entries = Vec::new();
    for entry in WalkDir::new(root).follow_links(true) {
        let entry = entry.map_err(|e| CliError::Read {
            path: root.to_path_buf(),
            source: e.into(),
        })?;
        if !entry.file_type().is_file() {
            continue;
        }
        let supported = entry
            .path()
            .extension()
            .and_then(|e| e.to_str())
            .is_some_and(|e| {
                SUPPORTED_EXTENSIONS
                    .iter()
                    .any(|s| e.eq_ignore_ascii_case(s))
            });
        if supported {
            let rel = entry
                .path()
                .strip_prefix(root)
                .expect("walked entries live under the root")
                .to_path_buf();
            entries.push(rel);
        }
    }
    entries.sort_by(|a, b| a.to_string_lossy().cmp(&b.to_string_lossy()));
    Ok(Corpus {
        root: root.to_path_buf(),
        entries,
    })
}

/// Writes the DC-centered log-amplitude spectrum (`ln(1 + A)`, min-max
/// normalized per channel) as an 8-bit PNG of the same dimensions.
pub fn export_spectrum_png(img: &ImageBuffer, path: &Path) -> Result<()> {
    let (amplitude, _) = decompose(&dft_forward(img));
    let amplitude = amplitude.shift();
    let plane = img.plane_len();
    let mut data = Vec::with_capacity(plane * img.channels());
    for c in 0..img.channels() {
        let log: Vec<f64> = amplitude.channel(c).iter().map(|a| (1.0 + a).ln()).collect();
        let lo = log.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = log.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if hi - lo < 1e-12 {
            // Flat spectrum: render mid-gray.
            data.extend(std::iter::repeat_n(128.0 / 255.0, plane));
        } else {
            data.extend(log.iter().map(|v| (v - lo) / (hi - lo)));
        }
    }
    let vis = ImageBuffer::new(img.height(), img.width(), img.channels(), data)?;
    save_image(&vis, path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use specmix_core::RngStream;

    #[test]
    fn quantization_rounds_half_up() {
        assert_eq!(quantize_byte(0.5), 128);
        assert_eq!(quantize_byte(0.0), 0);
        assert_eq!(quantize_byte(1.0), 255);
    }

    #[test]
    fn save_load_round_trip_is_exact() {
        let dir = tempfile::tempdir().unwrap();
        let mut rng = RngStream::derive(1, 0, 0);
        let img = ImageBuffer::from_fn(9, 11, 3, |_, _, _| rng.unit()).unwrap();
        let path = dir.path().join("img.png");
        save_image(&img, &path).unwrap();
        let loaded = load_image(&path).unwrap();
        let reloaded = {
            save_image(&loaded, &path).unwrap();
            load_image(&path).unwrap()
        };
        assert_eq!(loaded, reloaded);
        assert_eq!(loaded, quantize8(&img));
    }

    #[test]
    fn extremes_map_to_unit_interval_ends() {
        let dir = tempfile::tempdir().unwrap();
        let img = ImageBuffer::new(1, 2, 1, vec![0.0, 1.0]).unwrap();
        let path = dir.path().join("ends.png");
        save_image(&img, &path).unwrap();
        let loaded = load_image(&path).unwrap();
        assert_eq!(loaded.data(), &[0.0, 1.0]);
    }

    #[test]
    fn missing_file_error_names_the_path() {
        let err = load_image(Path::new("/nonexistent/p.png")).unwrap_err();
        assert!(err.to_string().contains("/nonexistent/p.png"));
    }

    #[test]
    fn non_png_output_is_rejected() {
        let img = ImageBuffer::constant(2, 2, 1, 0.5).unwrap();
        assert!(matches!(
            save_image(&img, Path::new("/tmp/x.jpg")),
            Err(CliError::NonPngOutput { .. })
        ));
    }

    #[test]
    fn corpus_scan_is_sorted_and_repeatable() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::create_dir(dir.path().join("sub")).unwrap();
        let img = ImageBuffer::constant(2, 2, 1, 0.5).unwrap();
        save_image(&img, &dir.path().join("b.png")).unwrap();
        save_image(&img, &dir.path().join("a.png")).unwrap();
        save_image(&img, &dir.path().join("sub/c.png")).unwrap();
        std::fs::write(dir.path().join("notes.txt"), "skip me").unwrap();

        let corpus = scan_corpus(dir.path()).unwrap();
        assert_eq!(corpus.len(), 3);
        assert_eq!(corpus.relative(0), Path::new("a.png"));
        assert_eq!(corpus.relative(1), Path::new("b.png"));
        assert_eq!(corpus.relative(2), Path::new("sub/c.png"));

        let again = scan_corpus(dir.path()).unwrap();
        assert_eq!(corpus.entries, again.entries);
    }

    #[test]
    fn empty_directory_scans_to_empty_corpus() {
        let dir = tempfile::tempdir().unwrap();
        assert!(scan_corpus(dir.path()).unwrap().is_empty());
        assert!(matches!(
            scan_corpus(&dir.path().join("missing")),
            Err(CliError::MissingDir { .. })
        ));
    }

    #[test]
    fn constant_image_spectrum_is_a_single_bright_pixel() {
        let dir = tempfile::tempdir().unwrap();
        let img = ImageBuffer::constant(8, 8, 1, 0.5).unwrap();
        let path = dir.path().join("spec.png");
        export_spectrum_png(&img, &path).unwrap();
        let vis = load_image(&path).unwrap();
        assert_eq!(vis.height(), 8);
        assert_eq!(vis.width(), 8);
        assert_eq!(vis.get(4, 4, 0), 1.0);
        for y in 0..8 {
            for x in 0..8 {
                if (y, x) != (4, 4) {
                    assert_eq!(vis.get(y, x, 0), 0.0);
                }
            }
        }
    }

    #[test]
    fn impulse_spectrum_renders_mid_gray() {
        let dir = tempfile::tempdir().unwrap();
        let mut data = vec![0.0; 64];
        data[0] = 1.0;
        let img = ImageBuffer::new(8, 8, 1, data).unwrap();
        let path = dir.path().join("spec.png");
        export_spectrum_png(&img, &path).unwrap();
        let vis = load_image(&path).unwrap();
        for &v in vis.data() {
            assert!((v - 128.0 / 255.0).abs() < 1e-9);
        }
    }
}
