//! Smooths an image with every kernel, classic and side-window.
//!
//! ```text
//! cargo run --release --example smoothing [input.png] [out_dir]
//! ```
//! Without an input, a noisy synthetic scene is used.

use std::path::PathBuf;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use sidewindow::io::{load_image, save_image};
use sidewindow::metrics::psnr;
use sidewindow::{FilterParams, FilterSpec, ImageF, Kernel};

fn synthetic() -> ImageF {
    ImageF::from_fn(128, 128, |y, x| {
        let disc = (y as f64 - 64.0).hypot(x as f64 - 64.0) < 36.0;
        let stripe = x > 100 && y % 16 < 8;
        match (disc, stripe) {
            (true, _) => 0.8,
            (_, true) => 0.55,
            _ => 0.2,
        }
    })
}

fn main() -> sidewindow::Result<()> {
    let mut args = std::env::args().skip(1);
    let input = args.next();
    let out_dir = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("swf-smoothing"));
    std::fs::create_dir_all(&out_dir)?;

    let (clean, img) = match input {
        Some(path) => {
            let img = load_image(&path)?;
            (img.clone(), img)
        }
        None => {
            let clean = synthetic();
            let mut rng = ChaCha8Rng::seed_from_u64(3);
            let noise = Normal::new(0.0, 0.05).unwrap();
            let noisy = clean.map(|v| v + noise.sample(&mut rng));
            (clean, noisy)
        }
    };
    save_image(&img, out_dir.join("input.png"))?;

    let params = FilterParams::with_radius(3);
    println!("{:<10} {:>12} {:>12}", "kernel", "classic dB", "side dB");
    for kernel in Kernel::ALL {
        let mut row = Vec::new();
        for side_window in [false, true] {
            let (out, _) = FilterSpec::new(kernel, params, side_window).apply(&img, None)?;
            let tag = if side_window { "side" } else { "classic" };
            save_image(&out, out_dir.join(format!("{kernel}_{tag}.png")))?;
            row.push(psnr(&out, &clean)?);
        }
        println!("{:<10} {:>12.2} {:>12.2}", kernel.name(), row[0], row[1]);
    }
    println!("images written to {}", out_dir.display());
    Ok(())
}
