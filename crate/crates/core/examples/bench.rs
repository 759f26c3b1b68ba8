//! Classic vs side-window wall time for every kernel.
//!
//! ```text
//! cargo run --release --example bench [megapixels]
//! ```

use sidewindow::cli::bench;
use sidewindow::{FilterParams, Kernel};

fn main() -> sidewindow::Result<()> {
    let mp: f64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0.25);
    let params = FilterParams::default();
    println!("{:<10} {:>11} {:>11} {:>7}", "kernel", "classic s", "side s", "ratio");
    for kernel in Kernel::ALL {
        let res = bench(kernel, mp, &params, 3)?;
        println!(
            "{:<10} {:>11.4} {:>11.4} {:>7.2}",
            kernel.name(),
            res.classic_seconds,
            res.side_seconds,
            res.ratio()
        );
    }
    Ok(())
}
