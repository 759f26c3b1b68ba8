//! HDR tone mapping with a side-window bilateral base layer.
//!
//! ```text
//! cargo run --release --example tonemap [input.pfm] [output.png]
//! ```
//! Without an input a synthetic scene spanning five decades is used.

use sidewindow::apps::{hdr_tonemap, TonemapParams};
use sidewindow::io::{load_image, save_image};
use sidewindow::{FilterParams, FilterSpec, ImageF, Kernel};

fn synthetic_hdr() -> sidewindow::Result<ImageF> {
    let (h, w) = (96, 128);
    let lum = |y: usize, x: usize| {
        let window = (20..60).contains(&y) && (70..110).contains(&x);
        let base = if window { 2000.0 } else { 0.5 };
        let texture = 1.0 + 0.3 * ((x as f64 * 0.7).sin() * (y as f64 * 0.5).cos());
        base * texture * (1.0 + x as f64 / w as f64)
    };
    let tints = [1.0, 0.8, 0.6];
    let planes: Vec<ImageF> = tints
        .iter()
        .map(|t| ImageF::from_fn(h, w, |y, x| lum(y, x) * t))
        .collect();
    ImageF::from_channels(&planes)
}

fn main() -> sidewindow::Result<()> {
    let mut args = std::env::args().skip(1);
    let hdr = match args.next() {
        Some(path) => load_image(path)?,
        None => synthetic_hdr()?,
    };
    let output = args
        .next()
        .unwrap_or_else(|| std::env::temp_dir().join("swf-tonemap.png").display().to_string());

    let params = FilterParams::default();
    for side_window in [true, false] {
        let tm = TonemapParams {
            base: FilterSpec::new(Kernel::Bilateral, params, side_window),
            ..TonemapParams::default()
        };
        let ldr = hdr_tonemap(&hdr, &tm)?;
        let (lo, hi) = ldr.min_max();
        let label = if side_window { "side" } else { "classic" };
        println!("{label:<8} gamma {:.2}: output range [{lo:.3}, {hi:.3}]", tm.gamma);
        if side_window {
            save_image(&ldr, &output)?;
        }
    }
    let (lo, hi) = hdr.min_max();
    println!("input range [{lo:.3}, {hi:.1}]; written {output}");
    Ok(())
}
