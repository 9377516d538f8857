//! Complex spectra and their amplitude/phase decomposition.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use crate::error::{Error, Result};

/// Where the zero-frequency bin sits in the grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layout {
    /// DC at bin `(0, 0)`, as produced by the forward transform.
    DcAtOrigin,
    /// DC at bin `(floor(M/2), floor(N/2))`, as required by radial masks.
    DcCentered,
}

impl Layout {
    fn toggled(self) -> Layout {
        match self {
            Layout::DcAtOrigin => Layout::DcCentered,
            Layout::DcCentered => Layout::DcAtOrigin,
        }
    }
}

/// Per-channel grid of complex frequency coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    height: usize,
    width: usize,
    channels: usize,
    layout: Layout,
    coeffs: Vec<Complex64>,
}

impl Spectrum {
    /// Assembles a spectrum from planar coefficient storage.
    pub fn from_parts(
        height: usize,
        width: usize,
        channels: usize,
        layout: Layout,
        coeffs: Vec<Complex64>,
    ) -> Self {
        assert_eq!(coeffs.len(), height * width * channels);
        Self {
            height,
            width,
            channels,
            layout,
            coeffs,
        }
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

    pub fn layout(&self) -> Layout {
        self.layout
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn channel(&self, c: usize) -> &[Complex64] {
        let n = self.height * self.width;
        &self.coeffs[c * n..(c + 1) * n]
    }

    #[inline]
    pub fn coeff(&self, y: usize, x: usize, c: usize) -> Complex64 {
        self.coeffs[(c * self.height + y) * self.width + x]
    }

    /// Largest coefficient magnitude across all channels.
    pub fn max_amplitude(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.norm()))
    }

    /// Cyclic roll by `(floor(M/2), floor(N/2))`, toggling the layout flag.
    ///
    /// Moves bin `(0, 0)` to the grid center.
    pub fn shift(&self) -> Spectrum {
        self.rolled(self.height / 2, self.width / 2)
    }

    /// Cyclic roll by `(ceil(M/2), ceil(N/2))`, toggling the layout flag.
    ///
    /// Exact inverse of [`Spectrum::shift`] for both even and odd sizes.
    pub fn inverse_shift(&self) -> Spectrum {
        self.rolled(self.height.div_ceil(2), self.width.div_ceil(2))
    }

    fn rolled(&self, dy: usize, dx: usize) -> Spectrum {
        let mut coeffs = vec![Complex64::default(); self.coeffs.len()];
        for c in 0..self.channels {
            roll_plane(
                self.channel(c),
                self.height,
                self.width,
                dy,
                dx,
                &mut coeffs[c * self.height * self.width..(c + 1) * self.height * self.width],
            );
        }
        Spectrum {
            height: self.height,
            width: self.width,
            channels: self.channels,
            layout: self.layout.toggled(),
            coeffs,
        }
    }

    /// Largest relative deviation from conjugate symmetry
    /// `F(u,v) = conj(F((M-u) mod M, (N-v) mod N))`.
    ///
    /// Meaningful in origin layout; spectra of real images stay below
    /// `1e-9`.
    pub fn hermitian_residue(&self) -> f64 {
        let scale = self.max_amplitude().max(f64::MIN_POSITIVE);
        let mut worst = 0.0f64;
        for c in 0..self.channels {
            let plane = self.channel(c);
            for u in 0..self.height {
                for v in 0..self.width {
                    let mirrored = plane[((self.height - u) % self.height) * self.width
                        + (self.width - v) % self.width];
                    let diff = (plane[u * self.width + v] - mirrored.conj()).norm();
                    worst = worst.max(diff / scale);
                }
            }
        }
        worst
    }
}

/// Cyclic 2D roll: `dst[(y+dy) mod H][(x+dx) mod W] = src[y][x]`.
pub(crate) fn roll_plane<T: Copy>(
    src: &[T],
    height: usize,
    width: usize,
    dy: usize,
    dx: usize,
    dst: &mut [T],
) {
    for y in 0..height {
        let ny = (y + dy) % height;
        for x in 0..width {
            let nx = (x + dx) % width;
            dst[ny * width + nx] = src[y * width + x];
        }
    }
}

/// Per-channel grid of non-negative coefficient magnitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeGrid {
    height: usize,
    width: usize,
    channels: usize,
    layout: Layout,
    values: Vec<f64>,
}

/// Per-channel grid of phase angles in `(-pi, pi]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseGrid {
    height: usize,
    width: usize,
    channels: usize,
    layout: Layout,
    values: Vec<f64>,
}

macro_rules! grid_accessors {
    ($ty:ident) => {
        impl $ty {
            pub fn height(&self) -> usize {
                self.height
            }

            pub fn width(&self) -> usize {
                self.width
            }

            pub fn channels(&self) -> usize {
                self.channels
            }

            pub fn layout(&self) -> Layout {
                self.layout
            }

            pub fn values(&self) -> &[f64] {
                &self.values
            }

            pub fn channel(&self, c: usize) -> &[f64] {
                let n = self.height * self.width;
                &self.values[c * n..(c + 1) * n]
            }

            #[inline]
            pub fn get(&self, y: usize, x: usize, c: usize) -> f64 {
                self.values[(c * self.height + y) * self.width + x]
            }
        }
    };
}

grid_accessors!(AmplitudeGrid);
grid_accessors!(PhaseGrid);

impl AmplitudeGrid {
    pub(crate) fn from_parts(
        height: usize,
        width: usize,
        channels: usize,
        layout: Layout,
        values: Vec<f64>,
    ) -> Self {
        debug_assert_eq!(values.len(), height * width * channels);
        Self {
            height,
            width,
            channels,
            layout,
            values,
        }
    }

    /// Same roll as [`Spectrum::shift`].
    pub fn shift(&self) -> AmplitudeGrid {
        self.rolled(self.height / 2, self.width / 2)
    }

    /// Same roll as [`Spectrum::inverse_shift`].
    pub fn inverse_shift(&self) -> AmplitudeGrid {
        self.rolled(self.height.div_ceil(2), self.width.div_ceil(2))
    }

    fn rolled(&self, dy: usize, dx: usize) -> AmplitudeGrid {
        let mut values = vec![0.0; self.values.len()];
        let n = self.height * self.width;
        for c in 0..self.channels {
            roll_plane(
                self.channel(c),
                self.height,
                self.width,
                dy,
                dx,
                &mut values[c * n..(c + 1) * n],
            );
        }
        AmplitudeGrid {
            height: self.height,
            width: self.width,
            channels: self.channels,
            layout: self.layout.toggled(),
            values,
        }
    }
}

/// Splits a spectrum into amplitude `sqrt(R^2 + I^2)` and quadrant-aware
/// phase `atan2(I, R)`. Phase is defined as 0 wherever the amplitude is 0.
pub fn decompose(spec: &Spectrum) -> (AmplitudeGrid, PhaseGrid) {
    let mut amps = Vec::with_capacity(spec.coeffs().len());
    let mut phases = Vec::with_capacity(spec.coeffs().len());
    for &c in spec.coeffs() {
        let a = c.norm();
        amps.push(a);
        phases.push(if a == 0.0 { 0.0 } else { c.arg() });
    }
    (
        AmplitudeGrid {
            height: spec.height(),
            width: spec.width(),
            channels: spec.channels(),
            layout: spec.layout(),
            values: amps,
        },
        PhaseGrid {
            height: spec.height(),
            width: spec.width(),
            channels: spec.channels(),
            layout: spec.layout(),
            values: phases,
        },
    )
}

/// Rebuilds `A * e^{iP}` from matching amplitude and phase grids.
pub fn recompose(amplitude: &AmplitudeGrid, phase: &PhaseGrid) -> Result<Spectrum> {
    if amplitude.height != phase.height
        || amplitude.width != phase.width
        || amplitude.channels != phase.channels
    {
        return Err(Error::DimensionMismatch(
            amplitude.height,
            amplitude.width,
            phase.height,
            phase.width,
        ));
    }
    if amplitude.layout != phase.layout {
        return Err(Error::LayoutMismatch {
            expected: amplitude.layout,
            found: phase.layout,
        });
    }
    let coeffs = amplitude
        .values
        .iter()
        .zip(&phase.values)
        .map(|(&a, &p)| Complex64::from_polar(a, p))
        .collect();
    Ok(Spectrum {
        height: amplitude.height,
        width: amplitude.width,
        channels: amplitude.channels,
        layout: amplitude.layout,
        coeffs,
    })
}
