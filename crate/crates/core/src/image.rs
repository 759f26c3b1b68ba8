//! Floating-point raster and replicate-padded access.

use crate::error::{Error, Result};

/// Row-major, channel-interleaved floating-point image.
///
/// LDR content lives in `[0, 1]`; HDR content is unbounded positive.
#[derive(Debug, Clone, PartialEq)]
pub struct ImageF {
    height: usize,
    width: usize,
    channels: usize,
    data: Vec<f64>,
}

impl ImageF {
    pub fn new(height: usize, width: usize, channels: usize) -> Self {
        Self::filled(height, width, channels, 0.0)
    }

    pub fn filled(height: usize, width: usize, channels: usize, value: f64) -> Self {
        assert!(channels >= 1, "image needs at least one channel");
        Self {
            height,
            width,
            channels,
            data: vec![value; height * width * channels],
        }
    }

    pub fn from_vec(height: usize, width: usize, channels: usize, data: Vec<f64>) -> Result<Self> {
        if channels == 0 {
            return Err(Error::Parameter("channel count must be positive".into()));
        }
        if data.len() != height * width * channels {
            return Err(Error::Dimension(format!(
                "{} samples for {height}x{width}x{channels}",
                data.len()
            )));
        }
        Ok(Self {
            height,
            width,
            channels,
            data,
        })
    }

    /// Builds a single-channel image by evaluating `f(y, x)`.
    pub fn from_fn(height: usize, width: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(height * width);
        for y in 0..height {
            for x in 0..width {
                data.push(f(y, x));
            }
        }
        Self {
            height,
            width,
            channels: 1,
            data,
        }
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn channels(&self) -> usize {
        self.channels
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.data.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.data
    }

    #[inline]
    pub fn get(&self, y: usize, x: usize, c: usize) -> f64 {
        self.data[(y * self.width + x) * self.channels + c]
    }

    #[inline]
    pub fn set(&mut self, y: usize, x: usize, c: usize, value: f64) {
        let idx = (y * self.width + x) * self.channels + c;
        self.data[idx] = value;
    }

    pub fn same_shape(&self, other: &ImageF) -> bool {
        self.height == other.height && self.width == other.width && self.channels == other.channels
    }

    pub fn ensure_same_shape(&self, other: &ImageF) -> Result<()> {
        if self.same_shape(other) {
            Ok(())
        } else {
            Err(Error::Dimension(format!(
                "{}x{}x{} vs {}x{}x{}",
                self.height, self.width, self.channels, other.height, other.width, other.channels
            )))
        }
    }

    /// Extracts channel `c` as a single-channel image.
    pub fn channel(&self, c: usize) -> ImageF {
        assert!(c < self.channels);
        let data = self
            .data
            .iter()
            .skip(c)
            .step_by(self.channels)
            .copied()
            .collect();
        ImageF {
            height: self.height,
            width: self.width,
            channels: 1,
            data,
        }
    }

    /// Interleaves single-channel planes into one image.
    pub fn from_channels(planes: &[ImageF]) -> Result<ImageF> {
        let first = planes
            .first()
            .ok_or_else(|| Error::Parameter("no channels to merge".into()))?;
        for p in planes {
            if p.channels != 1 || p.height != first.height || p.width != first.width {
                return Err(Error::Dimension("planes must be single-channel and equal size".into()));
            }
        }
        let n = planes.len();
        let mut data = vec![0.0; first.height * first.width * n];
        for (c, p) in planes.iter().enumerate() {
            for (i, &v) in p.data.iter().enumerate() {
                data[i * n + c] = v;
            }
        }
        Ok(ImageF {
            height: first.height,
            width: first.width,
            channels: n,
            data,
        })
    }

    /// Applies `f` to every channel plane and reassembles the result.
    pub fn map_channels(&self, mut f: impl FnMut(&ImageF) -> ImageF) -> ImageF {
        if self.channels == 1 {
            return f(self);
        }
        let planes: Vec<ImageF> = (0..self.channels).map(|c| f(&self.channel(c))).collect();
        ImageF::from_channels(&planes).expect("planes keep source shape")
    }

    pub fn map(&self, mut f: impl FnMut(f64) -> f64) -> ImageF {
        ImageF {
            data: self.data.iter().map(|&v| f(v)).collect(),
            ..self.clone()
        }
    }

    pub fn zip_map(&self, other: &ImageF, f: impl Fn(f64, f64) -> f64) -> Result<ImageF> {
        self.ensure_same_shape(other)?;
        Ok(ImageF {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
            ..self.clone()
        })
    }

    pub fn min_max(&self) -> (f64, f64) {
        self.data
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                (lo.min(v), hi.max(v))
            })
    }

    pub fn max_abs_diff(&self, other: &ImageF) -> f64 {
        assert!(self.same_shape(other));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn has_nan(&self) -> bool {
        self.data.iter().any(|v| v.is_nan())
    }

    /// Horizontal mirror (x -> width - 1 - x).
    pub fn flip_horizontal(&self) -> ImageF {
        let mut out = self.clone();
        for y in 0..self.height {
            for x in 0..self.width {
                for c in 0..self.channels {
                    out.set(y, self.width - 1 - x, c, self.get(y, x, c));
                }
            }
        }
        out
    }

    /// Vertical mirror (y -> height - 1 - y).
    pub fn flip_vertical(&self) -> ImageF {
        let mut out = self.clone();
        for y in 0..self.height {
            for x in 0..self.width {
                for c in 0..self.channels {
                    out.set(self.height - 1 - y, x, c, self.get(y, x, c));
                }
            }
        }
        out
    }

    pub fn padded(&self, radius: usize) -> PaddedView<'_> {
        PaddedView {
            source: self,
            radius,
        }
    }
}

/// Read-only view that replicates border pixels out to `radius`.
#[derive(Debug, Clone, Copy)]
pub struct PaddedView<'a> {
    source: &'a ImageF,
    radius: usize,
}

impl<'a> PaddedView<'a> {
    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn source(&self) -> &'a ImageF {
        self.source
    }

    /// Reads at signed coordinates; anything outside the image is clamped.
    #[inline]
    pub fn get(&self, y: isize, x: isize, c: usize) -> f64 {
        let r = self.radius as isize;
        debug_assert!(y >= -r && y < self.source.height as isize + r);
        debug_assert!(x >= -r && x < self.source.width as isize + r);
        let yy = y.clamp(0, self.source.height as isize - 1) as usize;
        let xx = x.clamp(0, self.source.width as isize - 1) as usize;
        self.source.get(yy, xx, c)
    }

    /// Materializes the padded plane of channel `c` as a dense row-major buffer
    /// of size `(h + 2r) x (w + 2r)`.
    pub fn materialize(&self, c: usize) -> Vec<f64> {
        let r = self.radius as isize;
        let ph = self.source.height + 2 * self.radius;
        let pw = self.source.width + 2 * self.radius;
        let mut out = Vec::with_capacity(ph * pw);
        for py in 0..ph as isize {
            for px in 0..pw as isize {
                out.push(self.get(py - r, px - r, c));
            }
        }
        out
    }
}
