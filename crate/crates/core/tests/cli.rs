use std::path::Path;

use sidewindow::cli::run;
use sidewindow::io::{load_image, save_image};
use sidewindow::ImageF;
use tempfile::tempdir;

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

fn swf(args: &[&str]) -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("swf").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Outcome {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn write_step(path: &Path) -> ImageF {
    let img = ImageF::from_fn(24, 24, |_, x| if x < 12 { 0.2 } else { 0.8 });
    save_image(&img, path).unwrap();
    load_image(path).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn side_window_box_keeps_a_step_file_unchanged() {
    let dir = tempdir().unwrap();
    let input = dir.path().join("step.pgm");
    let output = dir.path().join("out.pgm");
    let step = write_step(&input);
    let res = swf(&["filter", "-i", s(&input), "-o", s(&output), "--kernel", "box", "--side-window", "--r", "3"]);
    assert_eq!(res.code, 0, "{}", res.stderr);
    assert_eq!(load_image(&output).unwrap(), step);

    let res = swf(&["metrics", s(&input), s(&output)]);
    assert_eq!(res.code, 0);
    assert!(res.stdout.contains("psnr inf"), "{}", res.stdout);
    assert!(res.stdout.contains("ssim 1"), "{}", res.stdout);
}

#[test]
fn classic_filter_blurs_the_step() {
    let dir = tempdir().unwrap();
    let input = dir.path().join("step.png");
    let output = dir.path().join("out.png");
    let step = write_step(&input);
    let res = swf(&["filter", "-i", s(&input), "-o", s(&output), "--kernel", "gaussian", "--r", "3", "--sigma", "2"]);
    assert_eq!(res.code, 0, "{}", res.stderr);
    assert!(load_image(&output).unwrap().max_abs_diff(&step) > 0.1);

    let res = swf(&["metrics", "--psnr", s(&input), s(&output)]);
    assert!(res.stdout.starts_with("psnr "));
    assert!(!res.stdout.contains("ssim"));
}

#[test]
fn every_kernel_runs_in_both_modes() {
    let dir = tempdir().unwrap();
    let input = dir.path().join("step.pgm");
    write_step(&input);
    let output = dir.path().join("out.pgm");
    for kernel in ["box", "gaussian", "median", "bilateral", "guided"] {
        for side in [false, true] {
            let mut args = vec!["filter", "-i", s(&input), "-o", s(&output), "--kernel", kernel, "--r", "2", "--iterations", "2"];
            if side {
                args.push("--side-window");
            }
            let res = swf(&args);
            assert_eq!(res.code, 0, "{kernel} {side}: {}", res.stderr);
        }
    }
}

#[test]
fn selection_map_and_guide_are_written() {
    let dir = tempdir().unwrap();
    let input = dir.path().join("step.pgm");
    write_step(&input);
    let output = dir.path().join("out.pgm");
    let map = dir.path().join("map.pgm");
    let res = swf(&[
        "filter", "-i", s(&input), "-o", s(&output), "--kernel", "guided", "--side-window",
        "--guide", s(&input), "--eps", "0.01", "--r", "2", "--selection-map", s(&map),
    ]);
    assert_eq!(res.code, 0, "{}", res.stderr);
    let sel = load_image(&map).unwrap();
    assert_eq!((sel.height(), sel.width()), (24, 24));
}

#[test]
fn selection_map_needs_side_window() {
    let dir = tempdir().unwrap();
    let input = dir.path().join("step.pgm");
    write_step(&input);
    let res = swf(&[
        "filter", "-i", s(&input), "-o", s(&dir.path().join("o.pgm")),
        "--selection-map", s(&dir.path().join("m.pgm")),
    ]);
    assert_eq!(res.code, 1);
    assert!(res.stderr.contains("--side-window"));
}

#[test]
fn enhance_with_side_window_preserves_a_step() {
    let dir = tempdir().unwrap();
    let input = dir.path().join("step.pgm");
    let output = dir.path().join("enh.pgm");
    let step = write_step(&input);
    let res = swf(&["enhance", "-i", s(&input), "-o", s(&output), "--side-window", "--r", "3", "--alpha", "5"]);
    assert_eq!(res.code, 0, "{}", res.stderr);
    assert_eq!(load_image(&output).unwrap(), step);
}

#[test]
fn tonemap_reads_pfm() {
    let dir = tempdir().unwrap();
    let input = dir.path().join("hdr.pfm");
    let output = dir.path().join("ldr.png");
    let hdr = ImageF::from_fn(16, 16, |y, x| 0.01 + (y * 16 + x) as f64 * 10.0);
    save_image(&hdr, &input).unwrap();
    let res = swf(&["tonemap", "-i", s(&input), "-o", s(&output), "--gamma", "0.5", "--r", "2"]);
    assert_eq!(res.code, 0, "{}", res.stderr);
    let ldr = load_image(&output).unwrap();
    let (lo, hi) = ldr.min_max();
    assert!(lo >= 0.0 && hi <= 1.0 && hi > 0.9);
}

#[test]
fn colorize_uses_rgba_scribbles() {
    let dir = tempdir().unwrap();
    let gray = dir.path().join("gray.pgm");
    let marks = dir.path().join("marks.png");
    let output = dir.path().join("color.png");
    save_image(&ImageF::from_fn(16, 16, |_, x| if x < 8 { 0.3 } else { 0.7 }), &gray).unwrap();
    let mut buf = image::RgbaImage::new(16, 16);
    buf.put_pixel(3, 8, image::Rgba([200, 40, 40, 255]));
    buf.put_pixel(12, 8, image::Rgba([40, 40, 200, 255]));
    buf.save(&marks).unwrap();
    let res = swf(&["colorize", "-y", s(&gray), "-s", s(&marks), "-o", s(&output), "--r", "2", "--sigma", "0.05"]);
    assert_eq!(res.code, 0, "{}", res.stderr);
    let rgb = load_image(&output).unwrap();
    assert_eq!(rgb.channels(), 3);
    assert!(rgb.get(0, 0, 0) > rgb.get(0, 0, 2));
    assert!(rgb.get(15, 15, 2) > rgb.get(15, 15, 0));
}

#[test]
fn selftest_passes_and_can_emit_edge_images() {
    let dir = tempdir().unwrap();
    let res = swf(&["selftest", "--emit", s(dir.path())]);
    assert_eq!(res.code, 0, "{}", res.stdout);
    assert!(res.stdout.contains("failed 0"));
    assert!(!res.stdout.contains("FAIL"));
    for label in ['a', 'd', 'g', 'j', 'm', 'p'] {
        assert!(dir.path().join(format!("edge_{label}.pgm")).exists());
    }
}

#[test]
fn bench_prints_key_value_lines() {
    let res = swf(&["bench", "--size", "0.004096", "--kernel", "box", "--r", "2", "--repeats", "1"]);
    assert_eq!(res.code, 0, "{}", res.stderr);
    for key in ["classic_seconds ", "side_seconds ", "ratio ", "pixels 4096"] {
        assert!(res.stdout.contains(key), "{}", res.stdout);
    }
}

#[test]
fn threads_flag_is_accepted() {
    let res = swf(&["--threads", "2", "bench", "--size", "0.001", "--repeats", "1"]);
    assert_eq!(res.code, 0, "{}", res.stderr);
    assert_eq!(swf(&["--threads", "0", "selftest"]).code, 2);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(swf(&["filter", "--bogus"]).code, 2);
    assert_eq!(swf(&["filter", "-i", "a.png", "-o", "b.png", "--kernel", "mean"]).code, 2);
    assert_eq!(swf(&["filter", "-i", "a.png", "-o", "b.png", "--r", "0"]).code, 2);
    assert_eq!(swf(&["filter", "-i", "a.png", "-o", "b.png", "--sigma", "-1"]).code, 2);
    assert_eq!(swf(&[]).code, 2);
}

#[test]
fn io_errors_exit_with_one() {
    let dir = tempdir().unwrap();
    let res = swf(&["filter", "-i", s(&dir.path().join("missing.png")), "-o", s(&dir.path().join("o.png"))]);
    assert_eq!(res.code, 1);
    assert!(res.stderr.starts_with("error:"));

    let bad = dir.path().join("bad.png");
    std::fs::write(&bad, b"not an image").unwrap();
    assert_eq!(swf(&["metrics", s(&bad), s(&bad)]).code, 1);
}

#[test]
fn help_exits_cleanly() {
    let res = swf(&["--help"]);
    assert_eq!(res.code, 0);
    for cmd in ["filter", "enhance", "tonemap", "colorize", "metrics", "selftest", "bench"] {
        assert!(res.stdout.contains(cmd));
    }
}
