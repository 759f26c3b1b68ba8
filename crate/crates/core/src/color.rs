//! Colour conversions (BT.601 luma with analog-YUV chroma scaling).

use crate::error::{Error, Result};
use crate::image::ImageF;

const KR: f64 = 0.299;
const KG: f64 = 0.587;
const KB: f64 = 0.114;
const U_SCALE: f64 = 0.492;
const V_SCALE: f64 = 0.877;

#[inline]
pub fn luma(r: f64, g: f64, b: f64) -> f64 {
    KR * r + KG * g + KB * b
}

fn require_rgb(img: &ImageF) -> Result<()> {
    if img.channels() != 3 {
        return Err(Error::Channels {
            expected: 3,
            actual: img.channels(),
        });
    }
    Ok(())
}

/// Y in `[0, 1]`, U and V centred on zero.
pub fn rgb_to_yuv(img: &ImageF) -> Result<ImageF> {
    require_rgb(img)?;
    let mut out = img.clone();
    for px in out.data_mut().chunks_exact_mut(3) {
        let y = luma(px[0], px[1], px[2]);
        let u = U_SCALE * (px[2] - y);
        let v = V_SCALE * (px[0] - y);
        px.copy_from_slice(&[y, u, v]);
    }
    Ok(out)
}

pub fn yuv_to_rgb(img: &ImageF) -> Result<ImageF> {
    require_rgb(img)?;
    let mut out = img.clone();
    for px in out.data_mut().chunks_exact_mut(3) {
        let (y, u, v) = (px[0], px[1], px[2]);
        let r = y + v / V_SCALE;
        let b = y + u / U_SCALE;
        let g = (y - KR * r - KB * b) / KG;
        px.copy_from_slice(&[r, g, b]);
    }
    Ok(out)
}

/// Luminance plane; single-channel input is returned unchanged.
pub fn luminance(img: &ImageF) -> Result<ImageF> {
    match img.channels() {
        1 => Ok(img.clone()),
        3 => {
            let data = img
                .data()
                .chunks_exact(3)
                .map(|p| luma(p[0], p[1], p[2]))
                .collect();
            ImageF::from_vec(img.height(), img.width(), 1, data)
        }
        n => Err(Error::Channels {
            expected: 3,
            actual: n,
        }),
    }
}
