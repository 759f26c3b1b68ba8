//! Summed-area tables over replicate-padded planes.

use crate::image::ImageF;
use crate::window::WindowRect;

/// Summed-area table of one channel, padded by `pad` pixels on every side.
///
/// Rect queries take target coordinates in image space; the rect may reach
/// up to `pad` pixels outside the image.
#[derive(Debug, Clone)]
pub struct IntegralImage {
    table: Vec<f64>,
    stride: usize,
    pad: isize,
}

impl IntegralImage {
    pub fn new(img: &ImageF, channel: usize, pad: usize) -> Self {
        let plane = img.padded(pad).materialize(channel);
        Self::from_padded(&plane, img.height() + 2 * pad, img.width() + 2 * pad, pad)
    }

    /// Builds from an already padded row-major plane of size `ph x pw`.
    pub fn from_padded(plane: &[f64], ph: usize, pw: usize, pad: usize) -> Self {
        assert_eq!(plane.len(), ph * pw);
        let stride = pw + 1;
        let mut table = vec![0.0; (ph + 1) * stride];
        for y in 0..ph {
            let mut row_sum = 0.0;
            for x in 0..pw {
                row_sum += plane[y * pw + x];
                table[(y + 1) * stride + x + 1] = table[y * stride + x + 1] + row_sum;
            }
        }
        Self {
            table,
            stride,
            pad: pad as isize,
        }
    }

    /// Sum of `rect` placed at target pixel `(y, x)`.
    #[inline]
    pub fn rect_sum(&self, y: isize, x: isize, rect: &WindowRect) -> f64 {
        let top = (y + rect.row_lo + self.pad) as usize;
        let bottom = (y + rect.row_hi + self.pad + 1) as usize;
        let left = (x + rect.col_lo + self.pad) as usize;
        let right = (x + rect.col_hi + self.pad + 1) as usize;
        let s = self.stride;
        self.table[bottom * s + right] - self.table[top * s + right] - self.table[bottom * s + left]
            + self.table[top * s + left]
    }

    /// Table, row stride and padding, for callers that batch corner reads.
    #[inline]
    pub(crate) fn raw(&self) -> (&[f64], usize, isize) {
        (&self.table, self.stride, self.pad)
    }
}
