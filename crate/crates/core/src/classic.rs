//! Centered-window baseline filters: box, Gaussian, median, bilateral, guided.
//!
//! Every filter runs independently per channel with replicate borders.

use crate::error::{Error, Result};
use crate::image::ImageF;
use crate::integral::IntegralImage;
use crate::parallel::fill_rows;
use crate::window::WindowRect;

/// Kernel parameters shared by all filters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilterParams {
    /// Window radius in pixels.
    pub r: usize,
    /// Gaussian spatial sigma.
    pub sigma: f64,
    /// Bilateral spatial sigma.
    pub sigma_s: f64,
    /// Bilateral range sigma, in normalized intensity units.
    pub sigma_r: f64,
    /// Guided filter regularizer.
    pub eps: f64,
    pub iterations: usize,
}

impl Default for FilterParams {
    fn default() -> Self {
        Self {
            r: 7,
            sigma: 4.0,
            sigma_s: 7.0,
            sigma_r: 0.3,
            eps: 0.1,
            iterations: 1,
        }
    }
}

impl FilterParams {
    pub fn with_radius(r: usize) -> Self {
        Self {
            r,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_radius(self.r)?;
        for (name, v) in [
            ("sigma", self.sigma),
            ("sigma_s", self.sigma_s),
            ("sigma_r", self.sigma_r),
            ("eps", self.eps),
        ] {
            if v.is_nan() || v <= 0.0 {
                return Err(Error::Parameter(format!("{name} must be positive, got {v}")));
            }
        }
        if self.iterations == 0 {
            return Err(Error::Parameter("iterations must be at least 1".into()));
        }
        Ok(())
    }
}

pub(crate) fn check_radius(r: usize) -> Result<()> {
    if r == 0 {
        return Err(Error::Parameter("window radius must be at least 1".into()));
    }
    Ok(())
}

pub(crate) fn check_positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 {
        Ok(())
    } else {
        Err(Error::Parameter(format!("{name} must be positive, got {v}")))
    }
}

pub(crate) fn centered(r: usize) -> WindowRect {
    let r = r as isize;
    WindowRect {
        row_lo: -r,
        row_hi: r,
        col_lo: -r,
        col_hi: r,
    }
}

/// Mean over the `(2r+1)^2` neighbourhood, via a summed-area table.
pub fn box_filter(img: &ImageF, r: usize) -> Result<ImageF> {
    check_radius(r)?;
    let rect = centered(r);
    let area = rect.area() as f64;
    Ok(img.map_channels(|plane| {
        let sat = IntegralImage::new(plane, 0, r);
        let data = fill_rows(plane.height(), plane.width(), |y, row| {
            for (x, out) in row.iter_mut().enumerate() {
                *out = sat.rect_sum(y as isize, x as isize, &rect) / area;
            }
        });
        ImageF::from_vec(plane.height(), plane.width(), 1, data).unwrap()
    }))
}

/// Unnormalized 1D Gaussian taps for offsets `-r..=r`.
pub(crate) fn gaussian_taps(r: usize, sigma: f64) -> Vec<f64> {
    let r = r as isize;
    (-r..=r)
        .map(|d| (-((d * d) as f64) / (2.0 * sigma * sigma)).exp())
        .collect()
}

#[inline]
pub(crate) fn clamp_index(v: isize, n: usize) -> usize {
    v.clamp(0, n as isize - 1) as usize
}

/// Horizontal weighted sums over column offsets `lo..=hi` (clamped columns).
pub(crate) fn horizontal_pass(plane: &ImageF, taps: &[f64], r: usize, lo: isize, hi: isize) -> Vec<f64> {
    let (h, w) = (plane.height(), plane.width());
    let src = plane.data();
    fill_rows(h, w, |y, row| {
        let line = &src[y * w..(y + 1) * w];
        for (x, out) in row.iter_mut().enumerate() {
            let mut acc = 0.0;
            for d in lo..=hi {
                acc += taps[(d + r as isize) as usize] * line[clamp_index(x as isize + d, w)];
            }
            *out = acc;
        }
    })
}

/// Normalized convolution with a truncated Gaussian (separable).
pub fn gaussian_filter(img: &ImageF, r: usize, sigma: f64) -> Result<ImageF> {
    check_radius(r)?;
    check_positive("sigma", sigma)?;
    let taps = gaussian_taps(r, sigma);
    let norm: f64 = taps.iter().sum::<f64>().powi(2);
    let ri = r as isize;
    Ok(img.map_channels(|plane| {
        let (h, w) = (plane.height(), plane.width());
        let horiz = horizontal_pass(plane, &taps, r, -ri, ri);
        let data = fill_rows(h, w, |y, row| {
            for (x, out) in row.iter_mut().enumerate() {
                let mut acc = 0.0;
                for d in -ri..=ri {
                    acc += taps[(d + ri) as usize] * horiz[clamp_index(y as isize + d, h) * w + x];
                }
                *out = acc / norm;
            }
        });
        ImageF::from_vec(h, w, 1, data).unwrap()
    }))
}

/// Median of `values`; even counts average the two middle order statistics.
///
/// Reorders `values`.
pub fn median_of(values: &mut [f64]) -> f64 {
    let n = values.len();
    assert!(n > 0, "median of empty set");
    let mid = n / 2;
    let (lower, upper, _) = values.select_nth_unstable_by(mid, f64::total_cmp);
    let upper = *upper;
    if n % 2 == 1 {
        upper
    } else {
        let lower_max = lower.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        0.5 * (lower_max + upper)
    }
}

pub fn median_filter(img: &ImageF, r: usize) -> Result<ImageF> {
    check_radius(r)?;
    let rect = centered(r);
    Ok(img.map_channels(|plane| {
        let (h, w) = (plane.height(), plane.width());
        let view = plane.padded(r);
        let data = fill_rows(h, w, |y, row| {
            let mut buf = Vec::with_capacity(rect.area());
            for (x, out) in row.iter_mut().enumerate() {
                buf.clear();
                buf.extend(
                    rect.offsets()
                        .map(|(dy, dx)| view.get(y as isize + dy, x as isize + dx, 0)),
                );
                *out = median_of(&mut buf);
            }
        });
        ImageF::from_vec(h, w, 1, data).unwrap()
    }))
}

/// Spatial weights `exp(-(dy^2+dx^2) / (2 sigma^2))`, row-major over the window.
pub(crate) fn spatial_weights(r: usize, sigma_s: f64) -> Vec<f64> {
    let taps = gaussian_taps(r, sigma_s);
    taps.iter()
        .flat_map(|&a| taps.iter().map(move |&b| a * b))
        .collect()
}

pub fn bilateral_filter(img: &ImageF, r: usize, sigma_s: f64, sigma_r: f64) -> Result<ImageF> {
    check_radius(r)?;
    check_positive("sigma_s", sigma_s)?;
    check_positive("sigma_r", sigma_r)?;
    let spatial = spatial_weights(r, sigma_s);
    let inv_range = 1.0 / (2.0 * sigma_r * sigma_r);
    let ri = r as isize;
    let side = 2 * r + 1;
    Ok(img.map_channels(|plane| {
        let (h, w) = (plane.height(), plane.width());
        let src = plane.data();
        let data = fill_rows(h, w, |y, row| {
            for (x, out) in row.iter_mut().enumerate() {
                let center = src[y * w + x];
                let (mut num, mut den) = (0.0, 0.0);
                for dy in -ri..=ri {
                    let yy = clamp_index(y as isize + dy, h);
                    for dx in -ri..=ri {
                        let q = src[yy * w + clamp_index(x as isize + dx, w)];
                        let diff = q - center;
                        let wt = spatial[(dy + ri) as usize * side + (dx + ri) as usize]
                            * (-diff * diff * inv_range).exp();
                        num += wt * q;
                        den += wt;
                    }
                }
                *out = num / den;
            }
        });
        ImageF::from_vec(h, w, 1, data).unwrap()
    }))
}

/// Per-window linear model coefficients of the guided filter.
#[inline]
pub(crate) fn linear_coefficients(
    n: f64,
    sum_g: f64,
    sum_p: f64,
    sum_gg: f64,
    sum_gp: f64,
    eps: f64,
) -> (f64, f64) {
    let mean_g = sum_g / n;
    let mean_p = sum_p / n;
    let var_g = (sum_gg / n - mean_g * mean_g).max(0.0);
    let cov = sum_gp / n - mean_g * mean_p;
    let a = cov / (var_g + eps);
    (a, mean_p - a * mean_g)
}

/// Summed-area tables of guide, input and their products, padded by `pad`.
pub(crate) struct GuidedSums {
    pub g: IntegralImage,
    pub p: IntegralImage,
    pub gg: IntegralImage,
    pub gp: IntegralImage,
}

impl GuidedSums {
    pub fn new(guide: &ImageF, input: &ImageF, pad: usize) -> Self {
        let (ph, pw) = (guide.height() + 2 * pad, guide.width() + 2 * pad);
        let g = guide.padded(pad).materialize(0);
        let p = input.padded(pad).materialize(0);
        let gg: Vec<f64> = g.iter().map(|v| v * v).collect();
        let gp: Vec<f64> = g.iter().zip(&p).map(|(a, b)| a * b).collect();
        Self {
            g: IntegralImage::from_padded(&g, ph, pw, pad),
            p: IntegralImage::from_padded(&p, ph, pw, pad),
            gg: IntegralImage::from_padded(&gg, ph, pw, pad),
            gp: IntegralImage::from_padded(&gp, ph, pw, pad),
        }
    }

    #[inline]
    pub fn coefficients(&self, y: isize, x: isize, rect: &WindowRect, eps: f64) -> (f64, f64) {
        linear_coefficients(
            rect.area() as f64,
            self.g.rect_sum(y, x, rect),
            self.p.rect_sum(y, x, rect),
            self.gg.rect_sum(y, x, rect),
            self.gp.rect_sum(y, x, rect),
            eps,
        )
    }
}

/// Resolves the guide plane for channel `c`: the given grayscale guide, or
/// the channel itself when self-guided.
pub(crate) fn guide_for(guide: Option<&ImageF>, plane: &ImageF) -> ImageF {
    guide.cloned().unwrap_or_else(|| plane.clone())
}

pub(crate) fn check_guide(img: &ImageF, guide: Option<&ImageF>) -> Result<()> {
    if let Some(g) = guide {
        if g.height() != img.height() || g.width() != img.width() {
            return Err(Error::Dimension(format!(
                "guide {}x{} vs image {}x{}",
                g.height(),
                g.width(),
                img.height(),
                img.width()
            )));
        }
        if g.channels() != 1 {
            return Err(Error::Channels {
                expected: 1,
                actual: g.channels(),
            });
        }
    }
    Ok(())
}

/// Guided filter with a grayscale guide; `None` means self-guided.
///
/// Windows centred anywhere within `r` of the target (including the padded
/// border) each contribute their linear model; the output averages them.
pub fn guided_filter(img: &ImageF, guide: Option<&ImageF>, r: usize, eps: f64) -> Result<ImageF> {
    check_radius(r)?;
    check_positive("eps", eps)?;
    check_guide(img, guide)?;
    let rect = centered(r);
    let area = rect.area() as f64;
    let ri = r as isize;
    Ok(img.map_channels(|plane| {
        let (h, w) = (plane.height(), plane.width());
        let g = guide_for(guide, plane);
        let sums = GuidedSums::new(&g, plane, 2 * r);
        // Coefficients for every window centre in the r-extended domain.
        let (eh, ew) = (h + 2 * r, w + 2 * r);
        let ab = fill_rows(eh, ew, |ey, row| {
            for (ex, out) in row.iter_mut().enumerate() {
                *out = sums.coefficients(ey as isize - ri, ex as isize - ri, &rect, eps);
            }
        });
        let a: Vec<f64> = ab.iter().map(|c| c.0).collect();
        let b: Vec<f64> = ab.iter().map(|c| c.1).collect();
        let sat_a = IntegralImage::from_padded(&a, eh, ew, r);
        let sat_b = IntegralImage::from_padded(&b, eh, ew, r);
        let gd = g.data();
        let data = fill_rows(h, w, |y, row| {
            for (x, out) in row.iter_mut().enumerate() {
                let (yi, xi) = (y as isize, x as isize);
                let ma = sat_a.rect_sum(yi, xi, &rect) / area;
                let mb = sat_b.rect_sum(yi, xi, &rect) / area;
                *out = ma * gd[y * w + x] + mb;
            }
        });
        ImageF::from_vec(h, w, 1, data).unwrap()
    }))
}
