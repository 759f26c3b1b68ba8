//! Scribble colorization, side-window vs centred neighbourhoods.

use sidewindow::colorize::{colorize_with, ColorizeOptions, Neighborhood, ScribbleSet};
use sidewindow::io::save_image;
use sidewindow::ImageF;

fn main() -> sidewindow::Result<()> {
    let n = 48;
    // Two regions of nearly equal brightness split by a slanted boundary.
    let inside = |y: usize, x: usize| 2 * x + y < 2 * n;
    let luma = ImageF::from_fn(n, n, |y, x| if inside(y, x) { 0.45 } else { 0.55 });

    let warm = (-0.12, 0.15);
    let cool = (0.18, -0.1);
    let mut marks = ScribbleSet::new(n, n);
    for y in 10..14 {
        marks.insert(y, 8, warm.0, warm.1);
        marks.insert(y + 20, 40, cool.0, cool.1);
    }

    let out_dir = std::env::temp_dir().join("swf-colorize");
    std::fs::create_dir_all(&out_dir)?;
    for nb in [Neighborhood::Side, Neighborhood::Centered] {
        let opts = ColorizeOptions {
            r: 3,
            sigma: 0.05,
            neighborhood: nb,
            ..ColorizeOptions::default()
        };
        let result = colorize_with(&luma, &marks, &opts)?;
        let mut leak = 0.0;
        let mut count = 0;
        for y in 0..n {
            for x in 0..n {
                let target = if inside(y, x) { warm.0 } else { cool.0 };
                leak += (result.u.get(y, x, 0) - target).abs();
                count += 1;
            }
        }
        let name = format!("{nb:?}").to_lowercase();
        println!(
            "{name:<9} mean |U error| {:.4}  iterations {:?}",
            leak / count as f64,
            result.reports.map(|r| r.iterations)
        );
        save_image(&result.rgb, out_dir.join(format!("{name}.png")))?;
    }
    println!("images written to {}", out_dir.display());
    Ok(())
}
