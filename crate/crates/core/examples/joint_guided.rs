//! Guided filtering of a noisy signal with a separate clean guide.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sidewindow::classic::guided_filter;
use sidewindow::metrics::psnr;
use sidewindow::swf::s_guided;
use sidewindow::ImageF;

fn main() -> sidewindow::Result<()> {
    let n = 96;
    let guide = ImageF::from_fn(n, n, |y, x| if (x / 24 + y / 24) % 2 == 0 { 0.25 } else { 0.75 });
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let target = guide.map(|v| 1.0 - v);
    let noisy = target.map(|v| v + rng.gen_range(-0.15..0.15));

    for (r, eps) in [(4, 1e-3), (8, 1e-2)] {
        let classic = guided_filter(&noisy, Some(&guide), r, eps)?;
        let (side, _) = s_guided(&noisy, Some(&guide), r, eps)?;
        println!(
            "r={r} eps={eps:e}: noisy {:.2} dB, gui {:.2} dB, s-gui {:.2} dB",
            psnr(&noisy, &target)?,
            psnr(&classic, &target)?,
            psnr(&side, &target)?
        );
    }
    Ok(())
}
