//! Iterated box vs side-window box on a noisy step edge.
//!
//! ```text
//! cargo run --release --example denoise [iterations]
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use sidewindow::apps::denoise;
use sidewindow::metrics::{psnr, ssim};
use sidewindow::testkit::{gen_edge_image, EdgeCase, EdgeModel};
use sidewindow::{FilterParams, FilterSpec, Kernel};

fn main() -> sidewindow::Result<()> {
    let iterations: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(5);
    let r = 10;
    let (clean, (_, px)) = gen_edge_image(&EdgeModel::new(EdgeCase::VerticalStep), r)?;
    let mut rng = ChaCha8Rng::seed_from_u64(20190601);
    let noise = Normal::new(0.0, 0.1).unwrap();
    let noisy = clean.map(|v| v + noise.sample(&mut rng));
    println!("noisy: psnr {:.2} dB", psnr(&noisy, &clean)?);

    let params = FilterParams {
        iterations,
        ..FilterParams::with_radius(r)
    };
    for kernel in [Kernel::Box, Kernel::Gaussian, Kernel::Median] {
        for side_window in [false, true] {
            let out = denoise(&noisy, &FilterSpec::new(kernel, params, side_window))?;
            let contrast: f64 = (0..out.height())
                .map(|y| out.get(y, px + 1, 0) - out.get(y, px, 0))
                .sum::<f64>()
                / out.height() as f64;
            println!(
                "{}{:<9} psnr {:6.2} dB  ssim {:.4}  edge contrast {:.3}",
                if side_window { "s-" } else { "  " },
                kernel.name(),
                psnr(&out, &clean)?,
                ssim(&out, &clean)?,
                contrast
            );
        }
    }
    Ok(())
}
