//! Per-window S-BOX candidates at the probe pixel of each ideal edge.
//!
//! ```text
//! cargo run --example edge_analysis [r]
//! ```

use sidewindow::testkit::{expected_side_window, gen_edge_image, write_edge_images, EdgeCase, EdgeModel};
use sidewindow::{SideFilter, SideWindowId};

fn main() -> sidewindow::Result<()> {
    let r: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2);
    print!("case ");
    for id in SideWindowId::ALL {
        print!("{:>9}", id.name());
    }
    println!();
    for case in EdgeCase::ALL {
        let m = EdgeModel::new(case).with_size(64.max(4 * r + 2));
        let (img, (py, px)) = gen_edge_image(&m, r)?;
        let cands = SideFilter::Box { r }.candidates(&img, None)?.at(py, px, 0);
        print!("({})  ", case.label());
        for id in SideWindowId::ALL {
            let expect = expected_side_window(case, id, r, m.u, m.v, m.delta_u, m.delta_v);
            let mark = if (cands[id.index()] - expect).abs() < 1e-9 { ' ' } else { '!' };
            print!("{:>8.4}{mark}", cands[id.index()]);
        }
        println!();
    }
    let dir = std::env::temp_dir().join("swf-edges");
    let written = write_edge_images(&dir, r)?;
    println!("{} edge images written to {}", written.len(), dir.display());
    Ok(())
}
