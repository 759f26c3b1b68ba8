//! Detail enhancement `q + alpha (q - smooth(q))`, with and without halos.

use sidewindow::apps::{enhance, DEFAULT_ALPHA};
use sidewindow::classic::box_filter;
use sidewindow::swf::s_box;
use sidewindow::testkit::{gen_edge_image, EdgeCase, EdgeModel};

fn main() -> sidewindow::Result<()> {
    let r = 7;
    let (img, (py, px)) = gen_edge_image(&EdgeModel::new(EdgeCase::VerticalStep), r)?;
    let classic = enhance(&img, |i| box_filter(i, r), DEFAULT_ALPHA)?;
    let side = enhance(&img, |i| Ok(s_box(i, r)?.0), DEFAULT_ALPHA)?;

    println!("profile across the edge (row {py}), alpha = {DEFAULT_ALPHA}");
    println!("{:>4} {:>8} {:>10} {:>10}", "col", "input", "box", "s-box");
    for x in px - 4..=px + 5 {
        println!(
            "{x:>4} {:>8.3} {:>10.3} {:>10.3}",
            img.get(py, x, 0),
            classic.get(py, x, 0),
            side.get(py, x, 0)
        );
    }
    println!("max overshoot box   {:.4}", classic.max_abs_diff(&img));
    println!("max overshoot s-box {:.4}", side.max_abs_diff(&img));
    Ok(())
}
