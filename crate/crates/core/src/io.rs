//! Reading and writing PNG, binary/plain PGM/PPM and PFM.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::image::ImageF;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Png,
    Pgm,
    Ppm,
    Pfm,
}

fn format_from_extension(path: &Path) -> Result<Format> {
    let ext = path
        .extension()
        .and_then(|e| e.to_str())
        .map(|e| e.to_ascii_lowercase())
        .unwrap_or_default();
    match ext.as_str() {
        "png" => Ok(Format::Png),
        "pgm" => Ok(Format::Pgm),
        "ppm" | "pnm" => Ok(Format::Ppm),
        "pfm" => Ok(Format::Pfm),
        other => Err(Error::Format(format!("unknown extension '{other}'"))),
    }
}

/// Loads an image; 8-bit data is scaled to `[0, 1]`, PFM is passed through.
pub fn load_image(path: impl AsRef<Path>) -> Result<ImageF> {
    let bytes = fs::read(path.as_ref())?;
    decode(&bytes)
}

/// Decodes from memory, sniffing the format from the magic bytes.
pub fn decode(bytes: &[u8]) -> Result<ImageF> {
    match bytes {
        [0x89, b'P', b'N', b'G', ..] => decode_png(bytes).map(|(img, _)| img),
        [b'P', b'F' | b'f', ..] => decode_pfm(bytes),
        [b'P', b'2' | b'3' | b'5' | b'6', ..] => decode_netpbm(bytes),
        _ => Err(Error::Format("unrecognized magic bytes".into())),
    }
}

/// Loads an RGBA PNG (or any supported file) as colour plus an alpha plane.
///
/// Files without alpha report fully opaque alpha.
pub fn load_rgba(path: impl AsRef<Path>) -> Result<(ImageF, ImageF)> {
    let bytes = fs::read(path.as_ref())?;
    if bytes.starts_with(&[0x89, b'P', b'N', b'G']) {
        let (img, alpha) = decode_png(&bytes)?;
        let alpha = alpha.unwrap_or_else(|| ImageF::filled(img.height(), img.width(), 1, 1.0));
        Ok((img, alpha))
    } else {
        let img = decode(&bytes)?;
        let alpha = ImageF::filled(img.height(), img.width(), 1, 1.0);
        Ok((img, alpha))
    }
}

fn decode_png(bytes: &[u8]) -> Result<(ImageF, Option<ImageF>)> {
    use image::DynamicImage;
    let dynimg = image::load_from_memory_with_format(bytes, image::ImageFormat::Png)
        .map_err(|e| Error::Decode(e.to_string()))?;
    let (w, h) = (dynimg.width() as usize, dynimg.height() as usize);
    let scale = |b: &u8| f64::from(*b) / 255.0;
    match dynimg {
        DynamicImage::ImageLuma8(buf) => Ok((
            ImageF::from_vec(h, w, 1, buf.as_raw().iter().map(scale).collect())?,
            None,
        )),
        DynamicImage::ImageRgb8(buf) => Ok((
            ImageF::from_vec(h, w, 3, buf.as_raw().iter().map(scale).collect())?,
            None,
        )),
        DynamicImage::ImageLumaA8(buf) => {
            let raw = buf.as_raw();
            let gray = raw.iter().step_by(2).map(scale).collect();
            let alpha = raw.iter().skip(1).step_by(2).map(scale).collect();
            Ok((
                ImageF::from_vec(h, w, 1, gray)?,
                Some(ImageF::from_vec(h, w, 1, alpha)?),
            ))
        }
        DynamicImage::ImageRgba8(buf) => {
            let raw = buf.as_raw();
            let mut rgb = Vec::with_capacity(h * w * 3);
            let mut alpha = Vec::with_capacity(h * w);
            for px in raw.chunks_exact(4) {
                rgb.extend(px[..3].iter().map(scale));
                alpha.push(scale(&px[3]));
            }
            Ok((
                ImageF::from_vec(h, w, 3, rgb)?,
                Some(ImageF::from_vec(h, w, 1, alpha)?),
            ))
        }
        other => Err(Error::Format(format!(
            "unsupported PNG pixel layout {:?}",
            other.color()
        ))),
    }
}

/// Whitespace/comment aware tokenizer for netpbm-style headers.
struct HeaderReader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> HeaderReader<'a> {
    fn new(bytes: &'a [u8], pos: usize) -> Self {
        Self { bytes, pos }
    }

    fn skip_space_and_comments(&mut self) {
        while self.pos < self.bytes.len() {
            match self.bytes[self.pos] {
                b'#' => {
                    while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                b if b.is_ascii_whitespace() => self.pos += 1,
                _ => break,
            }
        }
    }

    fn token(&mut self) -> Result<&'a str> {
        self.skip_space_and_comments();
        let start = self.pos;
        while self.pos < self.bytes.len() && !self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Decode("unexpected end of header".into()));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .map_err(|_| Error::Decode("non-ascii header token".into()))
    }

    fn number<T: std::str::FromStr>(&mut self) -> Result<T> {
        let tok = self.token()?;
        tok.parse()
            .map_err(|_| Error::Decode(format!("bad header value '{tok}'")))
    }

    /// Consumes the single whitespace byte separating header and raster.
    fn end_header(&mut self) -> Result<usize> {
        if self.pos >= self.bytes.len() || !self.bytes[self.pos].is_ascii_whitespace() {
            return Err(Error::Decode("missing raster separator".into()));
        }
        Ok(self.pos + 1)
    }
}

fn decode_netpbm(bytes: &[u8]) -> Result<ImageF> {
    let kind = bytes[1];
    let channels = if matches!(kind, b'2' | b'5') { 1 } else { 3 };
    let mut hdr = HeaderReader::new(bytes, 2);
    let width: usize = hdr.number()?;
    let height: usize = hdr.number()?;
    let maxval: u32 = hdr.number()?;
    if maxval == 0 || maxval > 255 {
        return Err(Error::Format(format!("maxval {maxval} not supported (8-bit only)")));
    }
    let scale = f64::from(maxval);
    let count = width * height * channels;
    let data: Vec<f64> = if matches!(kind, b'5' | b'6') {
        let start = hdr.end_header()?;
        let raster = bytes
            .get(start..start + count)
            .ok_or_else(|| Error::Decode("truncated raster".into()))?;
        raster.iter().map(|&b| f64::from(b) / scale).collect()
    } else {
        let mut out = Vec::with_capacity(count);
        for _ in 0..count {
            let v: u32 = hdr
                .number()
                .map_err(|_| Error::Decode("truncated plain raster".into()))?;
            out.push(f64::from(v.min(maxval)) / scale);
        }
        out
    };
    ImageF::from_vec(height, width, channels, data)
}

fn decode_pfm(bytes: &[u8]) -> Result<ImageF> {
    let channels = if bytes[1] == b'F' { 3 } else { 1 };
    let mut hdr = HeaderReader::new(bytes, 2);
    let width: usize = hdr.number()?;
    let height: usize = hdr.number()?;
    let scale: f64 = hdr.number()?;
    if scale == 0.0 || !scale.is_finite() {
        return Err(Error::Decode("PFM scale must be nonzero".into()));
    }
    let little_endian = scale < 0.0;
    let start = hdr.end_header()?;
    let row_len = width * channels;
    let raster = bytes
        .get(start..start + 4 * row_len * height)
        .ok_or_else(|| Error::Decode("truncated PFM raster".into()))?;
    let mut data = vec![0.0; row_len * height];
    // PFM stores rows bottom-to-top.
    for (file_row, chunk) in raster.chunks_exact(4 * row_len).enumerate() {
        let y = height - 1 - file_row;
        for (i, b) in chunk.chunks_exact(4).enumerate() {
            let arr = [b[0], b[1], b[2], b[3]];
            let v = if little_endian {
                f32::from_le_bytes(arr)
            } else {
                f32::from_be_bytes(arr)
            };
            data[y * row_len + i] = f64::from(v);
        }
    }
    ImageF::from_vec(height, width, channels, data)
}

/// Quantizes a sample: clamp to `[0, 1]`, then round half up.
#[inline]
pub fn quantize(v: f64) -> u8 {
    let v = if v.is_nan() { 0.0 } else { v.clamp(0.0, 1.0) };
    (v * 255.0 + 0.5).floor() as u8
}

/// Writes an image; the format follows the file extension.
pub fn save_image(img: &ImageF, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let bytes = encode(img, format_from_extension(path)?)?;
    fs::write(path, bytes)?;
    Ok(())
}

fn encode(img: &ImageF, format: Format) -> Result<Vec<u8>> {
    let (h, w, c) = (img.height(), img.width(), img.channels());
    if c != 1 && c != 3 {
        return Err(Error::Channels {
            expected: 3,
            actual: c,
        });
    }
    match format {
        Format::Png => {
            let raw: Vec<u8> = img.data().iter().map(|&v| quantize(v)).collect();
            let color = if c == 1 {
                image::ExtendedColorType::L8
            } else {
                image::ExtendedColorType::Rgb8
            };
            let mut out = Vec::new();
            image::ImageEncoder::write_image(
                image::codecs::png::PngEncoder::new(&mut out),
                &raw,
                w as u32,
                h as u32,
                color,
            )
            .map_err(|e| Error::Format(e.to_string()))?;
            Ok(out)
        }
        Format::Pgm | Format::Ppm => {
            let expected = if format == Format::Pgm { 1 } else { 3 };
            if c != expected {
                return Err(Error::Channels {
                    expected,
                    actual: c,
                });
            }
            let magic = if c == 1 { "P5" } else { "P6" };
            let mut out = format!("{magic}\n{w} {h}\n255\n").into_bytes();
            out.extend(img.data().iter().map(|&v| quantize(v)));
            Ok(out)
        }
        Format::Pfm => {
            let magic = if c == 1 { "Pf" } else { "PF" };
            let mut out = format!("{magic}\n{w} {h}\n-1.0\n").into_bytes();
            let row_len = w * c;
            for y in (0..h).rev() {
                for &v in &img.data()[y * row_len..(y + 1) * row_len] {
                    out.extend_from_slice(&(v as f32).to_le_bytes());
                }
            }
            Ok(out)
        }
    }
}
