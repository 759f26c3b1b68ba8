//! Which side window wins where.
//!
//! ```text
//! cargo run --release --example selection_map [input.png] [r]
//! ```

use sidewindow::io::{load_image, save_image};
use sidewindow::{color, ImageF, SideFilter, SideWindowId};

fn main() -> sidewindow::Result<()> {
    let mut args = std::env::args().skip(1);
    let img = match args.next() {
        Some(path) => color::luminance(&load_image(path)?)?,
        None => ImageF::from_fn(64, 64, |y, x| {
            let inside = (y as f64 - 32.0).abs() + (x as f64 - 32.0).abs() < 20.0;
            let texture = 0.03 * ((x * 7 + y * 3) as f64).sin();
            texture + if inside { 0.9 } else { 0.1 }
        }),
    };
    let r: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(3);
    let (_, sel) = SideFilter::Median { r }.apply(&img, None)?;
    let total = (img.height() * img.width()) as f64;
    for id in SideWindowId::ALL {
        let count = sel.count(id);
        println!("{:>3} {:6.2}%", id.name(), 100.0 * count as f64 / total);
    }
    let path = std::env::temp_dir().join("swf-selection.png");
    save_image(&sel.to_image(), &path)?;
    println!("selection map (index / 7) written to {}", path.display());
    Ok(())
}
