//! Converts between PNG, PGM/PPM and PFM by file extension.
//!
//! ```text
//! cargo run --example image_formats <input> <output>
//! ```

use sidewindow::io::{load_image, save_image};

fn main() -> sidewindow::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let [input, output] = args.as_slice() else {
        eprintln!("usage: image_formats <input> <output>");
        std::process::exit(2);
    };
    let img = load_image(input)?;
    let (lo, hi) = img.min_max();
    println!(
        "{}x{} with {} channel(s), range [{lo:.4}, {hi:.4}]",
        img.width(),
        img.height(),
        img.channels()
    );
    save_image(&img, output)?;
    println!("wrote {output}");
    Ok(())
}
