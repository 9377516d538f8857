//! Planar image buffer with unit-interval samples, plus bilinear sampling
//! and resizing used by the geometric augmentations.

use alloc::vec;
use alloc::vec::Vec;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::error::{Error, Result};

/// H x W x C grid of intensity samples in `[0, 1]`.
///
/// Samples are stored planar (channel-major): the plane for channel `c`
/// occupies `data[c * h * w .. (c + 1) * h * w]` in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct ImageBuffer {
    height: usize,
    width: usize,
    channels: usize,
    data: Vec<f64>,
}

impl ImageBuffer {
    /// Builds an image from planar sample data, validating shape and range.
    pub fn new(height: usize, width: usize, channels: usize, data: Vec<f64>) -> Result<Self> {
        if height == 0 || width == 0 {
            return Err(Error::EmptyImage { height, width });
        }
        if channels != 1 && channels != 3 {
            return Err(Error::BadChannelCount(channels));
        }
        if data.len() != height * width * channels {
            return Err(Error::DataLength {
                got: data.len(),
                height,
                width,
                channels,
            });
        }
        if let Some((index, &value)) = data
            .iter()
            .enumerate()
            .find(|(_, v)| !v.is_finite() || **v < 0.0 || **v > 1.0)
        {
            return Err(Error::SampleOutOfRange { index, value });
        }
        Ok(Self {
            height,
            width,
            channels,
            data,
        })
    }

    /// Builds an image by clamping arbitrary real samples into `[0, 1]`.
    ///
    /// Shape must already be consistent; used by operations whose arithmetic
    /// can step slightly outside the unit interval.
    pub fn from_clamped(
        height: usize,
        width: usize,
        channels: usize,
        mut data: Vec<f64>,
    ) -> Result<Self> {
        if height == 0 || width == 0 {
            return Err(Error::EmptyImage { height, width });
        }
        if channels != 1 && channels != 3 {
            return Err(Error::BadChannelCount(channels));
        }
        if data.len() != height * width * channels {
            return Err(Error::DataLength {
                got: data.len(),
                height,
                width,
                channels,
            });
        }
        for v in &mut data {
            *v = if v.is_nan() { 0.0 } else { v.clamp(0.0, 1.0) };
        }
        Ok(Self {
            height,
            width,
            channels,
            data,
        })
    }

    /// Image filled with a single intensity.
    pub fn constant(height: usize, width: usize, channels: usize, value: f64) -> Result<Self> {
        Self::new(height, width, channels, vec![value; height * width * channels])
    }

    /// Builds an image by evaluating `f(y, x, channel)` and clamping.
    pub fn from_fn(
        height: usize,
        width: usize,
        channels: usize,
        mut f: impl FnMut(usize, usize, usize) -> f64,
    ) -> Result<Self> {
        let mut data = Vec::with_capacity(height * width * channels);
        for c in 0..channels {
            for y in 0..height {
                for x in 0..width {
                    data.push(f(y, x, c));
                }
            }
        }
        Self::from_clamped(height, width, channels, data)
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    /// Number of samples per channel plane.
    pub fn plane_len(&self) -> usize {
        self.height * self.width
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn channel(&self, c: usize) -> &[f64] {
        let n = self.plane_len();
        &self.data[c * n..(c + 1) * n]
    }

    pub fn channel_mut(&mut self, c: usize) -> &mut [f64] {
        let n = self.plane_len();
        &mut self.data[c * n..(c + 1) * n]
    }

    #[inline]
    pub fn get(&self, y: usize, x: usize, c: usize) -> f64 {
        self.data[(c * self.height + y) * self.width + x]
    }

    #[inline]
    pub fn set(&mut self, y: usize, x: usize, c: usize, value: f64) {
        self.data[(c * self.height + y) * self.width + x] = value;
    }

    pub fn same_shape(&self, other: &ImageBuffer) -> bool {
        self.height == other.height
            && self.width == other.width
            && self.channels == other.channels
    }

    /// Bilinear resize with edge-clamped sampling.
    ///
    /// Resizing to the original dimensions reproduces the image exactly.
    pub fn resize_bilinear(&self, out_height: usize, out_width: usize) -> Result<ImageBuffer> {
        if out_height == 0 || out_width == 0 {
            return Err(Error::EmptyImage {
                height: out_height,
                width: out_width,
            });
        }
        let scale_y = self.height as f64 / out_height as f64;
        let scale_x = self.width as f64 / out_width as f64;
        let mut data = Vec::with_capacity(out_height * out_width * self.channels);
        for c in 0..self.channels {
            let plane = self.channel(c);
            for y in 0..out_height {
                let sy = (y as f64 + 0.5) * scale_y - 0.5;
                for x in 0..out_width {
                    let sx = (x as f64 + 0.5) * scale_x - 0.5;
                    data.push(bilinear_clamped(plane, self.height, self.width, sy, sx));
                }
            }
        }
        ImageBuffer::from_clamped(out_height, out_width, self.channels, data)
    }
}

/// Bilinear sample with coordinates clamped to the image border.
pub(crate) fn bilinear_clamped(plane: &[f64], height: usize, width: usize, y: f64, x: f64) -> f64 {
    let yc = y.clamp(0.0, (height - 1) as f64);
    let xc = x.clamp(0.0, (width - 1) as f64);
    let y0 = yc.floor() as usize;
    let x0 = xc.floor() as usize;
    let y1 = (y0 + 1).min(height - 1);
    let x1 = (x0 + 1).min(width - 1);
    let ty = yc - y0 as f64;
    let tx = xc - x0 as f64;
    let top = lerp(plane[y0 * width + x0], plane[y0 * width + x1], tx);
    let bottom = lerp(plane[y1 * width + x0], plane[y1 * width + x1], tx);
    lerp(top, bottom, ty)
}

/// Bilinear sample that treats everything outside the image as zero.
pub(crate) fn bilinear_zero(plane: &[f64], height: usize, width: usize, y: f64, x: f64) -> f64 {
    if !(y > -1.0 && x > -1.0 && y < height as f64 && x < width as f64) {
        return 0.0;
    }
    let y0 = y.floor();
    let x0 = x.floor();
    let ty = y - y0;
    let tx = x - x0;
    let y0 = y0 as isize;
    let x0 = x0 as isize;
    let mut acc = 0.0;
    for (dy, wy) in [(0isize, 1.0 - ty), (1, ty)] {
        let yy = y0 + dy;
        if wy == 0.0 || yy < 0 || yy >= height as isize {
            continue;
        }
        for (dx, wx) in [(0isize, 1.0 - tx), (1, tx)] {
            let xx = x0 + dx;
            if wx == 0.0 || xx < 0 || xx >= width as isize {
                continue;
            }
            acc += wy * wx * plane[yy as usize * width + xx as usize];
        }
    }
    acc
}

#[inline]
fn lerp(a: f64, b: f64, t: f64) -> f64 {
    a + t * (b - a)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_shapes() {
        assert!(matches!(
            ImageBuffer::new(0, 4, 1, vec![]),
            Err(Error::EmptyImage { .. })
        ));
        assert!(matches!(
            ImageBuffer::new(2, 2, 2, vec![0.0; 8]),
            Err(Error::BadChannelCount(2))
        ));
        assert!(matches!(
            ImageBuffer::new(2, 2, 1, vec![0.0; 3]),
            Err(Error::DataLength { .. })
        ));
        assert!(matches!(
            ImageBuffer::new(1, 2, 1, vec![0.5, 1.5]),
            Err(Error::SampleOutOfRange { index: 1, .. })
        ));
    }

    #[test]
    fn from_clamped_clamps() {
        let img = ImageBuffer::from_clamped(1, 3, 1, vec![-0.5, 0.5, 2.0]).unwrap();
        assert_eq!(img.data(), &[0.0, 0.5, 1.0]);
    }

    #[test]
    fn resize_identity_is_exact() {
        let img = ImageBuffer::from_fn(5, 7, 3, |y, x, c| {
            ((y * 31 + x * 7 + c * 3) % 11) as f64 / 10.0
        })
        .unwrap();
        let resized = img.resize_bilinear(5, 7).unwrap();
        assert_eq!(img, resized);
    }

    #[test]
    fn resize_constant_stays_constant() {
        let img = ImageBuffer::constant(4, 4, 1, 0.25).unwrap();
        let up = img.resize_bilinear(9, 13).unwrap();
        assert!(up.data().iter().all(|&v| (v - 0.25).abs() < 1e-12));
    }

    #[test]
    fn bilinear_zero_outside_is_zero() {
        let plane = [1.0, 1.0, 1.0, 1.0];
        assert_eq!(bilinear_zero(&plane, 2, 2, -2.0, 0.0), 0.0);
        assert_eq!(bilinear_zero(&plane, 2, 2, 0.0, 5.0), 0.0);
        // Half a pixel outside blends with the zero fill.
        let v = bilinear_zero(&plane, 2, 2, -0.5, 0.5);
        assert!((v - 0.5).abs() < 1e-12);
    }
}
