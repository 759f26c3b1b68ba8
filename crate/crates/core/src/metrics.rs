//! PSNR and SSIM with peak value 1.0.

use crate::error::{Error, Result};
use crate::image::ImageF;

pub fn mse(a: &ImageF, b: &ImageF) -> Result<f64> {
    a.ensure_same_shape(b)?;
    let sum: f64 = a
        .data()
        .iter()
        .zip(b.data())
        .map(|(x, y)| (x - y) * (x - y))
        .sum();
    Ok(sum / a.len() as f64)
}

/// Peak signal-to-noise ratio in dB; identical inputs give `f64::INFINITY`.
pub fn psnr(a: &ImageF, b: &ImageF) -> Result<f64> {
    let mse = mse(a, b)?;
    if mse == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(10.0 * (1.0 / mse).log10())
}

const SSIM_RADIUS: isize = 5;
const SSIM_SIGMA: f64 = 1.5;
const K1: f64 = 0.01;
const K2: f64 = 0.03;

fn ssim_kernel() -> Vec<f64> {
    let taps: Vec<f64> = (-SSIM_RADIUS..=SSIM_RADIUS)
        .map(|d| (-((d * d) as f64) / (2.0 * SSIM_SIGMA * SSIM_SIGMA)).exp())
        .collect();
    let sum: f64 = taps.iter().sum();
    taps.into_iter().map(|t| t / sum).collect()
}

/// Separable Gaussian blur with replicate borders.
fn blur(plane: &[f64], h: usize, w: usize, kernel: &[f64]) -> Vec<f64> {
    let r = SSIM_RADIUS;
    let clamp = |v: isize, n: usize| v.clamp(0, n as isize - 1) as usize;
    let mut tmp = vec![0.0; h * w];
    for y in 0..h {
        for x in 0..w {
            tmp[y * w + x] = kernel
                .iter()
                .enumerate()
                .map(|(k, &wt)| wt * plane[y * w + clamp(x as isize + k as isize - r, w)])
                .sum();
        }
    }
    let mut out = vec![0.0; h * w];
    for y in 0..h {
        for x in 0..w {
            out[y * w + x] = kernel
                .iter()
                .enumerate()
                .map(|(k, &wt)| wt * tmp[clamp(y as isize + k as isize - r, h) * w + x])
                .sum();
        }
    }
    out
}

/// Mean structural similarity over an 11x11 Gaussian window (sigma 1.5).
///
/// Grayscale only; convert colour with [`crate::color::luminance`] first.
pub fn ssim(a: &ImageF, b: &ImageF) -> Result<f64> {
    a.ensure_same_shape(b)?;
    if a.channels() != 1 {
        return Err(Error::Channels {
            expected: 1,
            actual: a.channels(),
        });
    }
    let (h, w) = (a.height(), a.width());
    let kernel = ssim_kernel();
    let (x, y) = (a.data(), b.data());
    let prod = |p: &[f64], q: &[f64]| -> Vec<f64> { p.iter().zip(q).map(|(u, v)| u * v).collect() };

    let mu_x = blur(x, h, w, &kernel);
    let mu_y = blur(y, h, w, &kernel);
    let e_xx = blur(&prod(x, x), h, w, &kernel);
    let e_yy = blur(&prod(y, y), h, w, &kernel);
    let e_xy = blur(&prod(x, y), h, w, &kernel);

    let c1 = K1 * K1;
    let c2 = K2 * K2;
    let total: f64 = (0..h * w)
        .map(|i| {
            let (mx, my) = (mu_x[i], mu_y[i]);
            let var_x = e_xx[i] - mx * mx;
            let var_y = e_yy[i] - my * my;
            let cov = e_xy[i] - mx * my;
            ((2.0 * mx * my + c1) * (2.0 * cov + c2))
                / ((mx * mx + my * my + c1) * (var_x + var_y + c2))
        })
        .sum();
    Ok(total / (h * w) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random(h: usize, w: usize, seed: u64) -> ImageF {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        ImageF::from_fn(h, w, |_, _| rng.gen())
    }

    #[test]
    fn psnr_identical_is_infinite() {
        let a = random(8, 8, 1);
        assert_eq!(psnr(&a, &a).unwrap(), f64::INFINITY);
    }

    #[test]
    fn psnr_constant_offsets() {
        let a = random(8, 8, 2).map(|v| v * 0.4);
        let b = a.map(|v| v + 0.1);
        assert!((psnr(&a, &b).unwrap() - 20.0).abs() < 1e-9);
        let c = a.map(|v| v + 0.5);
        // 10 log10(1 / 0.25)
        assert!((psnr(&a, &c).unwrap() - 6.020_599_913_279_624).abs() < 1e-4);
        assert_eq!(psnr(&a, &c).unwrap(), psnr(&c, &a).unwrap());
    }

    #[test]
    fn shape_mismatch_is_dimension_error() {
        let a = ImageF::new(4, 4, 1);
        let b = ImageF::new(4, 5, 1);
        assert!(matches!(psnr(&a, &b), Err(Error::Dimension(_))));
        assert!(matches!(ssim(&a, &b), Err(Error::Dimension(_))));
    }

    #[test]
    fn ssim_identical_is_one() {
        let a = random(16, 16, 3);
        assert_eq!(ssim(&a, &a).unwrap(), 1.0);
    }

    #[test]
    fn ssim_black_vs_white_near_zero() {
        let a = ImageF::filled(16, 16, 1, 0.0);
        let b = ImageF::filled(16, 16, 1, 1.0);
        // C1 / (1 + C1) with zero variance everywhere
        let s = ssim(&a, &b).unwrap();
        assert!((s - 1e-4 / (1.0 + 1e-4)).abs() < 1e-12);
        assert!(s < 0.01);
    }

    #[test]
    fn ssim_drops_with_noise() {
        use rand_distr::{Distribution, Normal};
        let a = random(32, 32, 4);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let n = Normal::new(0.0, 0.1).unwrap();
        let b = a.map(|v| v + n.sample(&mut rng));
        let s = ssim(&a, &b).unwrap();
        assert!(s < 1.0 && s > -1.0);
    }
}
