use proptest::prelude::*;
use sidewindow::io::{decode, load_image, load_rgba, save_image};
use sidewindow::{Error, ImageF};
use tempfile::tempdir;

fn gradient(h: usize, w: usize, c: usize) -> ImageF {
    let data = (0..h * w * c)
        .map(|i| (i % 97) as f64 / 96.0)
        .collect();
    ImageF::from_vec(h, w, c, data).unwrap()
}

#[test]
fn eight_bit_formats_round_trip_within_half_a_level() {
    let dir = tempdir().unwrap();
    for (name, c) in [("g.png", 1), ("c.png", 3), ("g.pgm", 1), ("c.ppm", 3)] {
        let img = gradient(9, 13, c);
        let path = dir.path().join(name);
        save_image(&img, &path).unwrap();
        let back = load_image(&path).unwrap();
        assert_eq!(back.channels(), c, "{name}");
        assert!(img.max_abs_diff(&back) <= 1.0 / 510.0 + 1e-12, "{name}");
    }
}

#[test]
fn pfm_round_trip_is_exact_for_f32_values() {
    let dir = tempdir().unwrap();
    for (name, c) in [("g.pfm", 1), ("c.pfm", 3)] {
        let img = gradient(5, 7, c).map(|v| (v * 1000.0) as f32 as f64);
        let path = dir.path().join(name);
        save_image(&img, &path).unwrap();
        assert_eq!(load_image(&path).unwrap(), img);
    }
}

#[test]
fn pfm_rows_are_stored_bottom_up() {
    let mut bytes = b"Pf\n1 2\n-1.0\n".to_vec();
    bytes.extend_from_slice(&1.5f32.to_le_bytes());
    bytes.extend_from_slice(&4.0f32.to_le_bytes());
    let img = decode(&bytes).unwrap();
    assert_eq!(img.get(0, 0, 0), 4.0);
    assert_eq!(img.get(1, 0, 0), 1.5);
}

#[test]
fn big_endian_pfm_is_read() {
    let mut bytes = b"Pf\n2 1\n1.0\n".to_vec();
    bytes.extend_from_slice(&2.0f32.to_be_bytes());
    bytes.extend_from_slice(&0.25f32.to_be_bytes());
    let img = decode(&bytes).unwrap();
    assert_eq!(img.data(), &[2.0, 0.25]);
}

#[test]
fn plain_pgm_with_comments_is_read() {
    let img = decode(b"P2\n# comment\n3 1\n# max\n10\n0 5 10\n").unwrap();
    assert_eq!(img.data(), &[0.0, 0.5, 1.0]);
}

#[test]
fn malformed_inputs_are_rejected() {
    assert!(matches!(decode(b"GIF89a"), Err(Error::Format(_))));
    assert!(decode(b"P5\n4 4\n255\n\x00\x01").is_err());
    assert!(decode(b"P5\nx 4\n255\n").is_err());
    assert!(decode(&[0x89, b'P', b'N', b'G', 0, 0]).is_err());
}

#[test]
fn unknown_extension_is_a_format_error() {
    let dir = tempdir().unwrap();
    let err = save_image(&gradient(2, 2, 1), dir.path().join("x.tiff")).unwrap_err();
    assert!(matches!(err, Error::Format(_)));
}

#[test]
fn missing_file_is_an_io_error() {
    let err = load_image("/nonexistent/dir/img.png").unwrap_err();
    assert!(matches!(err, Error::Io(_)));
}

#[test]
fn rgba_png_splits_alpha() {
    let dir = tempdir().unwrap();
    let path = dir.path().join("s.png");
    let mut buf = image::RgbaImage::new(2, 1);
    buf.put_pixel(0, 0, image::Rgba([255, 0, 0, 255]));
    buf.put_pixel(1, 0, image::Rgba([0, 0, 255, 0]));
    buf.save(&path).unwrap();
    let (rgb, alpha) = load_rgba(&path).unwrap();
    assert_eq!(rgb.channels(), 3);
    assert_eq!(rgb.get(0, 0, 0), 1.0);
    assert_eq!(alpha.data(), &[1.0, 0.0]);
}

#[test]
fn opaque_files_report_full_alpha() {
    let dir = tempdir().unwrap();
    let path = dir.path().join("g.pgm");
    save_image(&gradient(3, 3, 1), &path).unwrap();
    let (_, alpha) = load_rgba(&path).unwrap();
    assert!(alpha.data().iter().all(|&a| a == 1.0));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn pgm_round_trip_is_exact_on_the_byte_grid(
        bytes in proptest::collection::vec(any::<u8>(), 1..64),
    ) {
        let dir = tempdir().unwrap();
        let img = ImageF::from_vec(1, bytes.len(), 1, bytes.iter().map(|&b| b as f64 / 255.0).collect()).unwrap();
        let path = dir.path().join("p.pgm");
        save_image(&img, &path).unwrap();
        let back = load_image(&path).unwrap();
        prop_assert!(img.max_abs_diff(&back) < 1e-12);
    }
}
