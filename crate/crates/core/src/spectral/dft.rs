//! 2D discrete Fourier transform.
//!
//! The forward transform is unnormalized; the inverse carries the full
//! `1/(M*N)` factor. The implementation is a separable row-column transform
//! with precomputed twiddle tables, which handles every size (the grid does
//! not need power-of-two dimensions) and is fast enough at the image sizes
//! this crate targets.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use crate::error::{Error, Result};
use crate::image::ImageBuffer;
use crate::spectral::spectrum::{Layout, Spectrum};

/// Relative imaginary residue tolerated by the inverse transform before it
/// reports a non-Hermitian input.
pub const IMAG_RESIDUE_TOLERANCE: f64 = 1e-6;

/// Forward transform of one real-valued plane stored row-major.
pub fn forward_plane(plane: &[f64], height: usize, width: usize) -> Vec<Complex64> {
    debug_assert_eq!(plane.len(), height * width);
    let input: Vec<Complex64> = plane.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    transform_plane(&input, height, width, Direction::Forward)
}

/// Inverse transform of one complex plane, including the `1/(M*N)` factor.
pub fn inverse_plane(freq: &[Complex64], height: usize, width: usize) -> Vec<Complex64> {
    debug_assert_eq!(freq.len(), height * width);
    let mut out = transform_plane(freq, height, width, Direction::Inverse);
    let scale = 1.0 / (height * width) as f64;
    for v in &mut out {
        *v *= scale;
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Direction {
    Forward,
    Inverse,
}

fn transform_plane(
    input: &[Complex64],
    height: usize,
    width: usize,
    direction: Direction,
) -> Vec<Complex64> {
    // Transform rows, transpose, transform rows again, transpose back.
    let row_pass = dft_rows(input, height, width, direction);
    let transposed = transpose(&row_pass, height, width);
    let col_pass = dft_rows(&transposed, width, height, direction);
    transpose(&col_pass, width, height)
}

/// One-dimensional DFT applied to every row of a `rows x cols` grid.
fn dft_rows(
    data: &[Complex64],
    rows: usize,
    cols: usize,
    direction: Direction,
) -> Vec<Complex64> {
    let twiddles = twiddle_table(cols, direction);
    let mut out = vec![Complex64::default(); data.len()];
    for r in 0..rows {
        let row = &data[r * cols..(r + 1) * cols];
        let out_row = &mut out[r * cols..(r + 1) * cols];
        for (k, slot) in out_row.iter_mut().enumerate() {
            let mut acc = Complex64::default();
            let mut t = 0usize;
            for &v in row {
                acc += v * twiddles[t];
                t += k;
                if t >= cols {
                    t -= cols;
                }
            }
            *slot = acc;
        }
    }
    out
}

/// `e^{sign * 2*pi*i * j / n}` for one full period.
fn twiddle_table(n: usize, direction: Direction) -> Vec<Complex64> {
    let sign = match direction {
        Direction::Forward => -1.0,
        Direction::Inverse => 1.0,
    };
    let step = sign * core::f64::consts::TAU / n as f64;
    (0..n)
        .map(|j| Complex64::from_polar(1.0, step * j as f64))
        .collect()
}

fn transpose(data: &[Complex64], rows: usize, cols: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::default(); data.len()];
    for r in 0..rows {
        for c in 0..cols {
            out[c * rows + r] = data[r * cols + c];
        }
    }
    out
}

/// Forward transform of every channel of an image.
pub fn dft_forward(image: &ImageBuffer) -> Spectrum {
    let mut coeffs = Vec::with_capacity(image.plane_len() * image.channels());
    for c in 0..image.channels() {
        coeffs.extend(forward_plane(image.channel(c), image.height(), image.width()));
    }
    Spectrum::from_parts(
        image.height(),
        image.width(),
        image.channels(),
        Layout::DcAtOrigin,
        coeffs,
    )
}

/// Forward transform of unconstrained real planes.
pub fn dft_forward_raw(field: &RealField) -> Spectrum {
    let mut coeffs = Vec::with_capacity(field.data.len());
    for c in 0..field.channels {
        coeffs.extend(forward_plane(field.channel(c), field.height, field.width));
    }
    Spectrum::from_parts(
        field.height,
        field.width,
        field.channels,
        Layout::DcAtOrigin,
        coeffs,
    )
}

/// Inverse transform; clamps the real part into `[0, 1]`.
///
/// Fails if the spectrum is not in origin layout or if the discarded
/// imaginary part exceeds `1e-6` times the largest input amplitude,
/// which signals a spectrum that no real image could have produced.
pub fn dft_inverse(spec: &Spectrum) -> Result<ImageBuffer> {
    let field = dft_inverse_raw(spec)?;
    ImageBuffer::from_clamped(field.height, field.width, field.channels, field.data)
}

/// Inverse transform keeping the raw (unclamped) real samples.
pub fn dft_inverse_raw(spec: &Spectrum) -> Result<RealField> {
    if spec.layout() != Layout::DcAtOrigin {
        return Err(Error::LayoutMismatch {
            expected: Layout::DcAtOrigin,
            found: spec.layout(),
        });
    }
    let (height, width, channels) = (spec.height(), spec.width(), spec.channels());
    let mut data = Vec::with_capacity(height * width * channels);
    let mut residue = 0.0f64;
    for c in 0..channels {
        for v in inverse_plane(spec.channel(c), height, width) {
            residue = residue.max(v.im.abs());
            data.push(v.re);
        }
    }
    let threshold = IMAG_RESIDUE_TOLERANCE * spec.max_amplitude();
    if residue > threshold {
        return Err(Error::NonHermitian { residue, threshold });
    }
    Ok(RealField {
        height,
        width,
        channels,
        data,
    })
}

/// Planar real-valued samples without the `[0, 1]` constraint.
///
/// Produced by [`dft_inverse_raw`] so callers can inspect out-of-range
/// excursions before clamping.
#[derive(Debug, Clone, PartialEq)]
pub struct RealField {
    pub height: usize,
    pub width: usize,
    pub channels: usize,
    pub data: Vec<f64>,
}

impl RealField {
    pub fn channel(&self, c: usize) -> &[f64] {
        let n = self.height * self.width;
        &self.data[c * n..(c + 1) * n]
    }

    pub fn clamp_to_image(&self) -> Result<ImageBuffer> {
        ImageBuffer::from_clamped(self.height, self.width, self.channels, self.data.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;
    use rand::RngCore;

    use crate::rng::RngStream;

    /// Direct evaluation of the transform definition; the independent
    /// oracle for the separable implementation.
    fn naive_forward(plane: &[f64], m: usize, n: usize) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(m * n);
        for u in 0..m {
            for v in 0..n {
                let mut acc = Complex64::default();
                for y in 0..m {
                    for x in 0..n {
                        let angle = -core::f64::consts::TAU
                            * (u as f64 * y as f64 / m as f64 + v as f64 * x as f64 / n as f64);
                        acc += plane[y * n + x] * Complex64::from_polar(1.0, angle);
                    }
                }
                out.push(acc);
            }
        }
        out
    }

    fn naive_inverse(freq: &[Complex64], m: usize, n: usize) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(m * n);
        let scale = 1.0 / (m * n) as f64;
        for y in 0..m {
            for x in 0..n {
                let mut acc = Complex64::default();
                for u in 0..m {
                    for v in 0..n {
                        let angle = core::f64::consts::TAU
                            * (u as f64 * y as f64 / m as f64 + v as f64 * x as f64 / n as f64);
                        acc += freq[u * n + v] * Complex64::from_polar(1.0, angle);
                    }
                }
                out.push(acc * scale);
            }
        }
        out
    }

    fn random_plane(rng: &mut RngStream, len: usize) -> Vec<f64> {
        (0..len).map(|_| rng.unit()).collect()
    }

    #[test]
    fn constant_image_has_only_a_dc_term() {
        let img = ImageBuffer::constant(2, 2, 1, 0.5).unwrap();
        let spec = dft_forward(&img);
        let coeffs = spec.channel(0);
        assert!((coeffs[0] - Complex64::new(2.0, 0.0)).norm() < 1e-12);
        for &c in &coeffs[1..] {
            assert!(c.norm() < 1e-12);
        }
    }

    #[test]
    fn impulse_has_flat_spectrum() {
        let mut data = vec![0.0; 16];
        data[0] = 1.0;
        let img = ImageBuffer::new(4, 4, 1, data).unwrap();
        let spec = dft_forward(&img);
        for &c in spec.channel(0) {
            assert!((c.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn forward_matches_naive_oracle() {
        let mut rng = RngStream::derive(11, 0, 0);
        for &(m, n) in &[(1usize, 1usize), (2, 3), (4, 4), (3, 7), (7, 8), (8, 8)] {
            let plane = random_plane(&mut rng, m * n);
            let fast = forward_plane(&plane, m, n);
            let slow = naive_forward(&plane, m, n);
            for (a, b) in fast.iter().zip(&slow) {
                assert!((a - b).norm() < 1e-10, "{m}x{n}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn inverse_matches_naive_oracle() {
        let mut rng = RngStream::derive(12, 0, 0);
        for &(m, n) in &[(1usize, 2usize), (3, 3), (4, 7), (8, 4)] {
            let freq: Vec<Complex64> = (0..m * n)
                .map(|_| Complex64::new(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)))
                .collect();
            let fast = inverse_plane(&freq, m, n);
            let slow = naive_inverse(&freq, m, n);
            for (a, b) in fast.iter().zip(&slow) {
                assert!((a - b).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn dc_only_spectrum_inverts_to_constant() {
        let img = ImageBuffer::constant(4, 4, 1, 0.25).unwrap();
        let spec = dft_forward(&img);
        let back = dft_inverse(&spec).unwrap();
        for &v in back.data() {
            assert!((v - 0.25).abs() < 1e-12);
        }
        // Same spectrum built by hand: only F(0,0) = M*N*0.25.
        let mut coeffs = vec![Complex64::default(); 16];
        coeffs[0] = Complex64::new(4.0, 0.0);
        let spec = Spectrum::from_parts(4, 4, 1, Layout::DcAtOrigin, coeffs);
        let back = dft_inverse(&spec).unwrap();
        for &v in back.data() {
            assert!((v - 0.25).abs() < 1e-12);
        }
    }

    #[test]
    fn round_trip_recovers_image() {
        let mut rng = RngStream::derive(13, 0, 0);
        for &(m, n, c) in &[(1usize, 1usize, 1usize), (5, 6, 3), (7, 7, 1), (8, 3, 3)] {
            let img = ImageBuffer::new(m, n, c, random_plane(&mut rng, m * n * c)).unwrap();
            let back = dft_inverse(&dft_forward(&img)).unwrap();
            for (a, b) in img.data().iter().zip(back.data()) {
                assert!((a - b).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn non_hermitian_input_is_reported() {
        let mut rng = RngStream::derive(14, 0, 0);
        let coeffs: Vec<Complex64> = (0..25)
            .map(|_| Complex64::new(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)))
            .collect();
        let spec = Spectrum::from_parts(5, 5, 1, Layout::DcAtOrigin, coeffs);
        assert!(matches!(
            dft_inverse(&spec),
            Err(Error::NonHermitian { .. })
        ));
    }

    #[test]
    fn inverse_rejects_centered_layout() {
        let img = ImageBuffer::constant(4, 4, 1, 0.5).unwrap();
        let spec = dft_forward(&img).shift();
        assert!(matches!(
            dft_inverse(&spec),
            Err(Error::LayoutMismatch { .. })
        ));
    }

    #[test]
    fn forked_streams_do_not_collide() {
        // Guards the seed packing: forked child streams must not replay a
        // stage stream.
        let mut parent = RngStream::derive(1, 2, 3);
        let mut child = parent.fork();
        assert_ne!(child.next_u64(), RngStream::derive(1, 2, 3).next_u64());
    }
}
