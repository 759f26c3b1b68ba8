//! Detail enhancement, HDR tone mapping and iterated denoising.

use crate::classic::FilterParams;
use crate::color::luma;
use crate::error::{Error, Result};
use crate::filter::{FilterSpec, Kernel};
use crate::image::ImageF;
use crate::swf::iterate;

/// Default detail amplification.
pub const DEFAULT_ALPHA: f64 = 5.0;
/// Default dynamic range compression factor.
pub const DEFAULT_GAMMA: f64 = 0.45;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnhanceParams {
    pub alpha: f64,
}

impl Default for EnhanceParams {
    fn default() -> Self {
        Self {
            alpha: DEFAULT_ALPHA,
        }
    }
}

/// `q + alpha * (q - smooth(q))`, unclamped.
pub fn enhance<F>(img: &ImageF, smooth: F, alpha: f64) -> Result<ImageF>
where
    F: FnOnce(&ImageF) -> Result<ImageF>,
{
    if alpha.is_nan() || alpha < 0.0 {
        return Err(Error::Parameter(format!("alpha must be >= 0, got {alpha}")));
    }
    let base = smooth(img)?;
    img.zip_map(&base, |q, b| q + alpha * (q - b))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TonemapParams {
    /// Compression applied to the base layer, in `(0, 1]`.
    pub gamma: f64,
    /// Filter producing the base layer from log10 luminance.
    pub base: FilterSpec,
}

impl Default for TonemapParams {
    fn default() -> Self {
        Self {
            gamma: DEFAULT_GAMMA,
            base: FilterSpec::new(Kernel::Bilateral, FilterParams::default(), true),
        }
    }
}

/// Base/detail tone mapping in the log10 luminance domain.
///
/// The base layer is compressed by `gamma`, the detail layer is kept, the
/// result is shifted so the brightest pixel maps to luminance 1, and colour
/// is rebuilt from the input's per-channel luminance ratios.
pub fn hdr_tonemap(hdr: &ImageF, params: &TonemapParams) -> Result<ImageF> {
    if !(params.gamma > 0.0 && params.gamma <= 1.0) {
        return Err(Error::Parameter(format!(
            "gamma must lie in (0, 1], got {}",
            params.gamma
        )));
    }
    let (h, w, c) = (hdr.height(), hdr.width(), hdr.channels());
    let lum: Vec<f64> = match c {
        1 => hdr.data().to_vec(),
        3 => hdr.data().chunks_exact(3).map(|p| luma(p[0], p[1], p[2])).collect(),
        n => {
            return Err(Error::Channels {
                expected: 3,
                actual: n,
            })
        }
    };
    if let Some(bad) = lum.iter().find(|&&l| l <= 0.0 || !l.is_finite()) {
        return Err(Error::Domain(format!("luminance must be positive and finite, found {bad}")));
    }
    let log_lum = ImageF::from_vec(h, w, 1, lum.iter().map(|l| l.log10()).collect())?;
    let base = params.base.apply(&log_lum, None)?.0;
    let mut compressed: Vec<f64> = log_lum
        .data()
        .iter()
        .zip(base.data())
        .map(|(&l, &b)| params.gamma * b + (l - b))
        .collect();
    let top = compressed.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    for v in &mut compressed {
        *v -= top;
    }
    let mut out = hdr.clone();
    for (i, px) in out.data_mut().chunks_exact_mut(c).enumerate() {
        let scale = 10f64.powf(compressed[i]) / lum[i];
        for s in px.iter_mut() {
            *s = (*s * scale).clamp(0.0, 1.0);
        }
    }
    Ok(out)
}

/// Iterated side-window smoothing with default kernel parameters (sigma 5).
pub fn denoise_preset(img: &ImageF, kernel: Kernel, r: usize, iterations: usize) -> Result<ImageF> {
    let params = FilterParams {
        r,
        sigma: 5.0,
        iterations,
        ..FilterParams::default()
    };
    denoise(img, &FilterSpec::new(kernel, params, true))
}

/// Applies `spec` `spec.params.iterations` times.
pub fn denoise(img: &ImageF, spec: &FilterSpec) -> Result<ImageF> {
    spec.params.validate()?;
    let once = FilterSpec {
        params: FilterParams {
            iterations: 1,
            ..spec.params
        },
        ..*spec
    };
    iterate(|i| Ok(once.apply_once(i, None)?.0), img, spec.params.iterations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classic::box_filter;
    use crate::swf::s_box;

    fn step(n: usize) -> ImageF {
        ImageF::from_fn(n, n, |_, x| if x < n / 2 { 0.0 } else { 1.0 })
    }

    #[test]
    fn enhance_zero_alpha_is_identity() {
        let img = step(16).map(|v| v * 0.5 + 0.2);
        let out = enhance(&img, |i| box_filter(i, 2), 0.0).unwrap();
        assert_eq!(out, img);
        assert!(enhance(&img, |i| box_filter(i, 2), -1.0).is_err());
    }

    #[test]
    fn enhance_constant_unchanged() {
        let img = ImageF::filled(8, 8, 1, 0.3);
        let out = enhance(&img, |i| box_filter(i, 2), 5.0).unwrap();
        assert!(out.max_abs_diff(&img) < 1e-12);
    }

    #[test]
    fn enhance_step_box_overshoots_side_box_does_not() {
        let img = step(64);
        let side = enhance(&img, |i| Ok(s_box(i, 7)?.0), 5.0).unwrap();
        assert!(side.max_abs_diff(&img) <= 1e-9);
        let full = enhance(&img, |i| box_filter(i, 7), 5.0).unwrap();
        // 5 * (0 - 7/15) at the dark pixel next to the edge
        assert!((full.get(32, 31, 0) + 5.0 * 7.0 / 15.0).abs() < 1e-12);
    }

    #[test]
    fn enhance_is_linear_in_alpha() {
        let img = step(16).map(|v| 0.3 + 0.4 * v);
        let base = box_filter(&img, 2).unwrap();
        let a = enhance(&img, |i| box_filter(i, 2), 1.5).unwrap();
        let b = enhance(&img, |i| box_filter(i, 2), 3.5).unwrap();
        let c = enhance(&img, |i| box_filter(i, 2), 5.0).unwrap();
        for i in 0..img.len() {
            let q = img.data()[i];
            let d = q - base.data()[i];
            assert_eq!(c.data()[i], q + 5.0 * d);
            assert!((c.data()[i] - (a.data()[i] + b.data()[i] - q)).abs() < 1e-12);
        }
    }

    fn rgb_from_lum(l: &ImageF) -> ImageF {
        ImageF::from_channels(&[l.clone(), l.clone(), l.clone()]).unwrap()
    }

    #[test]
    fn uniform_hdr_maps_to_white() {
        let hdr = rgb_from_lum(&ImageF::filled(12, 12, 1, 42.0));
        let out = hdr_tonemap(&hdr, &TonemapParams::default()).unwrap();
        assert!(out.data().iter().all(|&v| (v - 1.0).abs() < 1e-12));
    }

    #[test]
    fn unit_gamma_is_exposure_normalization() {
        let mut s = 0u64;
        let lum = ImageF::from_fn(16, 16, |_, _| {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            1.0 + (s >> 40) as f64 / 1e5
        });
        let params = TonemapParams {
            gamma: 1.0,
            ..TonemapParams::default()
        };
        let out = hdr_tonemap(&rgb_from_lum(&lum), &params).unwrap();
        let (_, max) = lum.min_max();
        for y in 0..16 {
            for x in 0..16 {
                assert!((out.get(y, x, 1) - lum.get(y, x, 0) / max).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn two_plateaus_compress_by_gamma() {
        let lum = ImageF::from_fn(48, 48, |_, x| if x < 24 { 1.0 } else { 1000.0 });
        let params = TonemapParams {
            gamma: 0.5,
            ..TonemapParams::default()
        };
        let out = hdr_tonemap(&rgb_from_lum(&lum), &params).unwrap();
        let l = crate::color::luminance(&out).unwrap();
        let (lo, hi) = l.min_max();
        let range = hi.log10() - lo.log10();
        assert!((range - 1.5).abs() < 0.05, "range {range}");
        // Plateau interiors stay flat.
        let left = l.get(20, 5, 0);
        let right = l.get(20, 40, 0);
        for y in 0..48 {
            for x in 0..20 {
                assert!((l.get(y, x, 0) - left).abs() < 1e-9);
                assert!((l.get(y, x + 28, 0) - right).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn tonemap_rejects_nonpositive() {
        let mut hdr = rgb_from_lum(&ImageF::filled(4, 4, 1, 1.0));
        hdr.set(1, 1, 0, 0.0);
        hdr.set(1, 1, 1, 0.0);
        hdr.set(1, 1, 2, 0.0);
        assert!(matches!(
            hdr_tonemap(&hdr, &TonemapParams::default()),
            Err(Error::Domain(_))
        ));
        let bad_gamma = TonemapParams {
            gamma: 0.0,
            ..TonemapParams::default()
        };
        assert!(hdr_tonemap(&rgb_from_lum(&ImageF::filled(4, 4, 1, 1.0)), &bad_gamma).is_err());
    }

    #[test]
    fn denoise_constant_unchanged() {
        let img = ImageF::filled(24, 24, 1, 0.6);
        let out = denoise_preset(&img, Kernel::Box, 10, 5).unwrap();
        assert!(out.max_abs_diff(&img) < 1e-12);
    }
}
