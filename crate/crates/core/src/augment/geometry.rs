//! Geometric augmentations: cropping, resolution degradation, and random
//! affine/perspective warps with bilinear sampling.

use alloc::vec::Vec;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::augment::OpParams;
use crate::error::Result;
use crate::image::{bilinear_clamped, bilinear_zero, ImageBuffer};
use crate::rng::RngStream;

/// Sub-rectangle for one crop application, in continuous pixel units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CropParams {
    pub top: f64,
    pub left: f64,
    pub height: f64,
    pub width: f64,
}

impl CropParams {
    /// Rectangle covering the whole frame (crop becomes the identity).
    pub fn full_frame(height: usize, width: usize) -> Self {
        Self {
            top: 0.0,
            left: 0.0,
            height: height as f64,
            width: width as f64,
        }
    }

    /// Random rectangle covering `min_cover..1.0` of each dimension.
    pub fn sample(rng: &mut RngStream, height: usize, width: usize, params: &OpParams) -> Self {
        let h = rng.uniform(params.crop_min_cover, 1.0) * height as f64;
        let w = rng.uniform(params.crop_min_cover, 1.0) * width as f64;
        let top = rng.uniform(0.0, height as f64 - h);
        let left = rng.uniform(0.0, width as f64 - w);
        Self {
            top,
            left,
            height: h,
            width: w,
        }
    }
}

/// Crops the given window and resizes it back to the source dimensions.
pub fn apply_crop(image: &ImageBuffer, params: &CropParams) -> ImageBuffer {
    let (h, w) = (image.height(), image.width());
    let scale_y = params.height / h as f64;
    let scale_x = params.width / w as f64;
    let mut data = Vec::with_capacity(image.data().len());
    for c in 0..image.channels() {
        let plane = image.channel(c);
        for y in 0..h {
            let sy = params.top + (y as f64 + 0.5) * scale_y - 0.5;
            for x in 0..w {
                let sx = params.left + (x as f64 + 0.5) * scale_x - 0.5;
                data.push(bilinear_clamped(plane, h, w, sy, sx));
            }
        }
    }
    ImageBuffer::from_clamped(h, w, image.channels(), data).expect("shape preserved")
}

pub fn random_crop(image: &ImageBuffer, rng: &mut RngStream, params: &OpParams) -> ImageBuffer {
    apply_crop(
        image,
        &CropParams::sample(rng, image.height(), image.width(), params),
    )
}

/// Downscale factor for one low-resolution application.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LowResParams {
    pub factor: f64,
}

impl LowResParams {
    pub fn sample(rng: &mut RngStream, params: &OpParams) -> Self {
        let (lo, hi) = params.lowres_factor;
        Self {
            factor: rng.uniform(lo, hi),
        }
    }
}

/// Downscales by the drawn factor and upscales back, both bilinear.
pub fn apply_low_resolution(image: &ImageBuffer, params: &LowResParams) -> Result<ImageBuffer> {
    let down_h = ((image.height() as f64 / params.factor).round() as usize).max(1);
    let down_w = ((image.width() as f64 / params.factor).round() as usize).max(1);
    image
        .resize_bilinear(down_h, down_w)?
        .resize_bilinear(image.height(), image.width())
}

pub fn low_resolution(
    image: &ImageBuffer,
    rng: &mut RngStream,
    params: &OpParams,
) -> Result<ImageBuffer> {
    apply_low_resolution(image, &LowResParams::sample(rng, params))
}

/// Parameters for one random-affine application.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineParams {
    /// Rotation in degrees.
    pub degrees: f64,
    /// Translation in pixels, (x, y).
    pub translate: (f64, f64),
    /// Isotropic scale factor.
    pub scale: f64,
}

impl AffineParams {
    pub const IDENTITY: Self = Self {
        degrees: 0.0,
        translate: (0.0, 0.0),
        scale: 1.0,
    };

    /// Rotation in (-30, 30) degrees, translation magnitude up to half of
    /// each dimension with a random sign, scale in (0.4, 0.5), no shear.
    pub fn sample(rng: &mut RngStream, height: usize, width: usize) -> Self {
        let degrees = rng.uniform(-30.0, 30.0);
        let tx = rng.uniform(0.0, 0.5) * width as f64;
        let tx = if rng.flip() { tx } else { -tx };
        let ty = rng.uniform(0.0, 0.5) * height as f64;
        let ty = if rng.flip() { ty } else { -ty };
        let scale = rng.uniform(0.4, 0.5);
        Self {
            degrees,
            translate: (tx, ty),
            scale,
        }
    }
}

/// Rotation and scaling about the image center followed by translation;
/// bilinear sampling with zero fill outside the source frame.
pub fn apply_affine(image: &ImageBuffer, params: &AffineParams) -> ImageBuffer {
    let (h, w) = (image.height(), image.width());
    let cx = (w as f64 - 1.0) / 2.0;
    let cy = (h as f64 - 1.0) / 2.0;
    let theta = params.degrees.to_radians();
    let (sin, cos) = theta.sin_cos();
    let s = params.scale;
    // Forward map: p_out = T(translate) T(center) R S T(-center) p_in.
    // Sampling inverts it analytically.
    let inv_s = 1.0 / s;
    let sample_source = |x_out: f64, y_out: f64| -> (f64, f64) {
        let dx = x_out - params.translate.0 - cx;
        let dy = y_out - params.translate.1 - cy;
        let x_in = inv_s * (cos * dx + sin * dy) + cx;
        let y_in = inv_s * (-sin * dx + cos * dy) + cy;
        (x_in, y_in)
    };
    warp(image, sample_source)
}

pub fn random_affine(image: &ImageBuffer, rng: &mut RngStream) -> ImageBuffer {
    apply_affine(
        image,
        &AffineParams::sample(rng, image.height(), image.width()),
    )
}

/// Corner placement for one random-perspective application.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerspectiveParams {
    pub distortion: f64,
    /// Where the four frame corners land, in (x, y) order
    /// top-left, top-right, bottom-right, bottom-left.
    pub corners: [(f64, f64); 4],
}

impl PerspectiveParams {
    pub fn identity(height: usize, width: usize) -> Self {
        Self {
            distortion: 0.0,
            corners: frame_corners(height, width),
        }
    }

    /// Distortion scale `s ~ U(0, max)`; every corner moves inward by
    /// independent offsets bounded by `s * (dimension / 2)`.
    pub fn sample(rng: &mut RngStream, height: usize, width: usize, params: &OpParams) -> Self {
        let s = rng.uniform(0.0, params.perspective_max_distortion);
        let half_w = width as f64 / 2.0;
        let half_h = height as f64 / 2.0;
        let base = frame_corners(height, width);
        let mut corners = [(0.0, 0.0); 4];
        // Inward direction per corner: TL (+,+), TR (-,+), BR (-,-), BL (+,-).
        let signs = [(1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0)];
        for i in 0..4 {
            let dx = rng.uniform(0.0, s * half_w);
            let dy = rng.uniform(0.0, s * half_h);
            corners[i] = (base[i].0 + signs[i].0 * dx, base[i].1 + signs[i].1 * dy);
        }
        Self {
            distortion: s,
            corners,
        }
    }
}

fn frame_corners(height: usize, width: usize) -> [(f64, f64); 4] {
    let w = width as f64 - 1.0;
    let h = height as f64 - 1.0;
    [(0.0, 0.0), (w, 0.0), (w, h), (0.0, h)]
}

/// Projective warp pulling the frame corners to the drawn positions;
/// bilinear sampling with zero fill.
pub fn apply_perspective(image: &ImageBuffer, params: &PerspectiveParams) -> ImageBuffer {
    let base = frame_corners(image.height(), image.width());
    // Homography sending each displaced corner back to its frame corner;
    // applying it to output coordinates yields source coordinates directly.
    let m = homography_from_pairs(&params.corners, &base);
    let sample_source = move |x_out: f64, y_out: f64| -> (f64, f64) {
        let d = m[6] * x_out + m[7] * y_out + m[8];
        (
            (m[0] * x_out + m[1] * y_out + m[2]) / d,
            (m[3] * x_out + m[4] * y_out + m[5]) / d,
        )
    };
    warp(image, sample_source)
}

pub fn random_perspective(
    image: &ImageBuffer,
    rng: &mut RngStream,
    params: &OpParams,
) -> ImageBuffer {
    apply_perspective(
        image,
        &PerspectiveParams::sample(rng, image.height(), image.width(), params),
    )
}

fn warp(image: &ImageBuffer, sample_source: impl Fn(f64, f64) -> (f64, f64)) -> ImageBuffer {
    let (h, w) = (image.height(), image.width());
    let mut data = Vec::with_capacity(image.data().len());
    for c in 0..image.channels() {
        let plane = image.channel(c);
        for y in 0..h {
            for x in 0..w {
                let (sx, sy) = sample_source(x as f64, y as f64);
                data.push(bilinear_zero(plane, h, w, sy, sx));
            }
        }
    }
    ImageBuffer::from_clamped(h, w, image.channels(), data).expect("shape preserved")
}

/// Homography mapping `from[i]` to `to[i]`, solved with the standard
/// four-point direct linear transform (h8 fixed to 1).
fn homography_from_pairs(from: &[(f64, f64); 4], to: &[(f64, f64); 4]) -> [f64; 9] {
    let mut a = [[0.0f64; 9]; 8];
    for i in 0..4 {
        let (fx, fy) = from[i];
        let (tx, ty) = to[i];
        a[2 * i] = [fx, fy, 1.0, 0.0, 0.0, 0.0, -tx * fx, -tx * fy, tx];
        a[2 * i + 1] = [0.0, 0.0, 0.0, fx, fy, 1.0, -ty * fx, -ty * fy, ty];
    }
    let h = solve8(&mut a);
    [h[0], h[1], h[2], h[3], h[4], h[5], h[6], h[7], 1.0]
}

/// Gaussian elimination with partial pivoting on an 8x8 augmented system.
fn solve8(a: &mut [[f64; 9]; 8]) -> [f64; 8] {
    for col in 0..8 {
        let pivot = (col..8)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        a.swap(col, pivot);
        let diag = a[col][col];
        for row in 0..8 {
            if row == col {
                continue;
            }
            let factor = a[row][col] / diag;
            for k in col..9 {
                a[row][k] -= factor * a[col][k];
            }
        }
    }
    let mut x = [0.0f64; 8];
    for i in 0..8 {
        x[i] = a[i][8] / a[i][i];
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

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
    fn full_frame_crop_is_identity() {
        let img = random_image(70, 10, 14, 3);
        let out = apply_crop(&img, &CropParams::full_frame(10, 14));
        assert!(max_abs_diff(&img, &out) < 1e-6);
    }

    #[test]
    fn crop_samples_stay_in_bounds() {
        let img = random_image(71, 9, 9, 1);
        let mut rng = RngStream::derive(72, 0, 0);
        for _ in 0..50 {
            let p = CropParams::sample(&mut rng, 9, 9, &OpParams::default());
            assert!(p.height >= 4.5 - 1e-9 && p.height <= 9.0);
            assert!(p.top >= 0.0 && p.top + p.height <= 9.0 + 1e-9);
            assert!(p.left >= 0.0 && p.left + p.width <= 9.0 + 1e-9);
            let out = apply_crop(&img, &p);
            assert_eq!(out.height(), 9);
            assert_eq!(out.width(), 9);
        }
    }

    #[test]
    fn unit_factor_low_resolution_is_identity() {
        let img = random_image(73, 8, 12, 3);
        let out = apply_low_resolution(&img, &LowResParams { factor: 1.0 }).unwrap();
        assert!(max_abs_diff(&img, &out) < 1e-6);
    }

    #[test]
    fn low_resolution_blurs_detail() {
        let img = ImageBuffer::from_fn(16, 16, 1, |y, x, _| ((x + y) % 2) as f64).unwrap();
        let out = apply_low_resolution(&img, &LowResParams { factor: 8.0 }).unwrap();
        // The checkerboard collapses towards its mean.
        let spread = out
            .data()
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                (lo.min(v), hi.max(v))
            });
        assert!(spread.1 - spread.0 < 0.5);
    }

    #[test]
    fn identity_affine_params_change_nothing() {
        let img = random_image(74, 11, 11, 3);
        let out = apply_affine(&img, &AffineParams::IDENTITY);
        assert!(max_abs_diff(&img, &out) < 1e-6);
    }

    #[test]
    fn affine_draws_stay_in_declared_ranges() {
        let mut rng = RngStream::derive(75, 0, 0);
        for _ in 0..10_000 {
            let p = AffineParams::sample(&mut rng, 20, 30);
            assert!(p.degrees > -30.0 && p.degrees < 30.0);
            assert!(p.translate.0.abs() <= 15.0);
            assert!(p.translate.1.abs() <= 10.0);
            assert!(p.scale >= 0.4 && p.scale < 0.5);
        }
    }

    #[test]
    fn affine_is_deterministic_per_stream() {
        let img = random_image(76, 9, 9, 1);
        let a = random_affine(&img, &mut RngStream::derive(5, 6, 7));
        let b = random_affine(&img, &mut RngStream::derive(5, 6, 7));
        assert_eq!(a, b);
    }

    #[test]
    fn zero_distortion_perspective_is_identity() {
        let img = random_image(77, 10, 10, 3);
        let out = apply_perspective(&img, &PerspectiveParams::identity(10, 10));
        assert!(max_abs_diff(&img, &out) < 1e-6);
    }

    #[test]
    fn perspective_corners_stay_within_bound() {
        let mut rng = RngStream::derive(78, 0, 0);
        let base = frame_corners(20, 30);
        for _ in 0..10_000 {
            let p = PerspectiveParams::sample(&mut rng, 20, 30, &OpParams::default());
            assert!((0.0..0.5).contains(&p.distortion));
            for (corner, b) in p.corners.iter().zip(&base) {
                assert!((corner.0 - b.0).abs() <= p.distortion * 15.0);
                assert!((corner.1 - b.1).abs() <= p.distortion * 10.0);
            }
        }
    }

    #[test]
    fn perspective_is_deterministic_per_stream() {
        let img = random_image(79, 12, 12, 3);
        let a = random_perspective(&img, &mut RngStream::derive(1, 1, 1), &OpParams::default());
        let b = random_perspective(&img, &mut RngStream::derive(1, 1, 1), &OpParams::default());
        assert_eq!(a, b);
    }

    #[test]
    fn homography_maps_control_points() {
        let from = [(0.0, 0.0), (9.0, 0.0), (9.0, 9.0), (0.0, 9.0)];
        let to = [(1.0, 2.0), (8.0, 0.5), (7.5, 8.0), (0.5, 7.0)];
        let m = homography_from_pairs(&from, &to);
        for (f, t) in from.iter().zip(&to) {
            let d = m[6] * f.0 + m[7] * f.1 + m[8];
            let x = (m[0] * f.0 + m[1] * f.1 + m[2]) / d;
            let y = (m[3] * f.0 + m[4] * f.1 + m[5]) / d;
            assert!((x - t.0).abs() < 1e-9);
            assert!((y - t.1).abs() < 1e-9);
        }
    }
}
