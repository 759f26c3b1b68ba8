//! Parametric edge images, closed-form BOX / S-BOX outputs at their probe
//! pixels, and brute-force reference filters.

use std::fmt;

use crate::classic::FilterParams;
use crate::error::{Error, Result};
use crate::filter::Kernel;
use crate::image::ImageF;
use crate::swf::SideFilter;
use crate::window::{enumerate_windows, SideWindowId, WindowRect};

/// The six edge layouts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeCase {
    /// Vertical step, dark on the left.
    VerticalStep,
    /// Horizontal step, dark on top.
    HorizontalStep,
    /// Anti-diagonal step, dark above-left (boundary pixels are dark).
    DiagonalStep,
    /// Dark top-left quadrant, probe at its inner corner.
    Corner,
    /// Flat `u` up to the probe column, then rising by `delta_v` per column.
    Ramp,
    /// Ridge of height `v` at the probe column, falling by `delta_u` per column.
    Roof,
}

impl EdgeCase {
    pub const ALL: [EdgeCase; 6] = [
        EdgeCase::VerticalStep,
        EdgeCase::HorizontalStep,
        EdgeCase::DiagonalStep,
        EdgeCase::Corner,
        EdgeCase::Ramp,
        EdgeCase::Roof,
    ];

    /// Single-letter label (a, d, g, j, m, p).
    pub fn label(self) -> char {
        match self {
            EdgeCase::VerticalStep => 'a',
            EdgeCase::HorizontalStep => 'd',
            EdgeCase::DiagonalStep => 'g',
            EdgeCase::Corner => 'j',
            EdgeCase::Ramp => 'm',
            EdgeCase::Roof => 'p',
        }
    }

    pub fn from_label(c: char) -> Option<Self> {
        Self::ALL.into_iter().find(|e| e.label() == c)
    }
}

impl fmt::Display for EdgeCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeModel {
    pub case: EdgeCase,
    pub u: f64,
    pub v: f64,
    pub delta_u: f64,
    pub delta_v: f64,
    pub size: usize,
}

impl EdgeModel {
    /// `u = 0`, `v = 1`, slopes 0.1, 64x64.
    pub fn new(case: EdgeCase) -> Self {
        Self {
            case,
            u: 0.0,
            v: 1.0,
            delta_u: 0.1,
            delta_v: 0.1,
            size: 64,
        }
    }

    pub fn with_size(mut self, size: usize) -> Self {
        self.size = size;
        self
    }

    fn validate(&self, r: usize) -> Result<()> {
        if r == 0 {
            return Err(Error::Parameter("radius must be at least 1".into()));
        }
        if self.size < 4 * r + 2 {
            return Err(Error::Parameter(format!(
                "edge image of size {} too small for radius {r} (need {})",
                self.size,
                4 * r + 2
            )));
        }
        if self.u > self.v {
            return Err(Error::Parameter("edge models need u <= v".into()));
        }
        match self.case {
            EdgeCase::Ramp if self.delta_v <= 0.0 => {
                Err(Error::Parameter("ramp needs delta_v > 0".into()))
            }
            EdgeCase::Roof if self.delta_u <= 0.0 => {
                Err(Error::Parameter("roof needs delta_u > 0".into()))
            }
            _ => Ok(()),
        }
    }

    /// Probe pixel `(row, col)`.
    pub fn probe(&self) -> (usize, usize) {
        let half = self.size / 2;
        match self.case {
            EdgeCase::HorizontalStep => (half - 1, half),
            EdgeCase::Corner => (half - 1, half - 1),
            EdgeCase::DiagonalStep => (half, self.size - 1 - half),
            _ => (half, half - 1),
        }
    }
}

/// Renders the edge image for radius `r`, returning it with its probe pixel.
pub fn gen_edge_image(model: &EdgeModel, r: usize) -> Result<(ImageF, (usize, usize))> {
    model.validate(r)?;
    let n = model.size;
    let (py, px) = model.probe();
    let EdgeModel {
        u,
        v,
        delta_u,
        delta_v,
        ..
    } = *model;
    let img = match model.case {
        EdgeCase::VerticalStep => ImageF::from_fn(n, n, |_, x| if x <= px { u } else { v }),
        EdgeCase::HorizontalStep => ImageF::from_fn(n, n, |y, _| if y <= py { u } else { v }),
        EdgeCase::DiagonalStep => {
            ImageF::from_fn(n, n, |y, x| if y + x <= py + px { u } else { v })
        }
        EdgeCase::Corner => {
            ImageF::from_fn(n, n, |y, x| if y <= py && x <= px { u } else { v })
        }
        EdgeCase::Ramp => ImageF::from_fn(n, n, |_, x| {
            if x <= px {
                u
            } else {
                (u + (x - px) as f64 * delta_v).min(v)
            }
        }),
        EdgeCase::Roof => ImageF::from_fn(n, n, |_, x| {
            (v - (x as f64 - px as f64).abs() * delta_u).max(u)
        }),
    };
    Ok((img, (py, px)))
}

/// Closed-form BOX output at the probe.
pub fn expected_box(case: EdgeCase, r: usize, u: f64, v: f64, delta_u: f64, delta_v: f64) -> f64 {
    let r = r as f64;
    let full = 2.0 * r + 1.0;
    match case {
        EdgeCase::VerticalStep | EdgeCase::HorizontalStep | EdgeCase::DiagonalStep => {
            ((r + 1.0) * u + r * v) / full
        }
        EdgeCase::Corner => {
            let dark = (r + 1.0) * (r + 1.0);
            (dark * u + (full * full - dark) * v) / (full * full)
        }
        EdgeCase::Ramp => u + r * (r + 1.0) * delta_v / (2.0 * full),
        EdgeCase::Roof => v - r * (r + 1.0) * delta_u / full,
    }
}

/// Closed-form S-BOX output at the probe.
pub fn expected_sbox(case: EdgeCase, r: usize, u: f64, v: f64, delta_u: f64, _delta_v: f64) -> f64 {
    match case {
        EdgeCase::Roof => v - r as f64 / 2.0 * delta_u,
        _ => u,
    }
}

/// Closed-form mean of side window `window` at the probe.
pub fn expected_side_window(
    case: EdgeCase,
    window: SideWindowId,
    r: usize,
    u: f64,
    v: f64,
    delta_u: f64,
    delta_v: f64,
) -> f64 {
    use SideWindowId::*;
    let r = r as f64;
    let full = 2.0 * r + 1.0;
    let half = r + 1.0;
    // Mixtures named by their dark-pixel weight.
    let band = ((r + 1.0) * u + r * v) / full;
    let edge_half = (u + r * v) / half;
    let one_dark_corner = (u + (half * half - 1.0) * v) / (half * half);
    match case {
        EdgeCase::VerticalStep => match window {
            L | NW | SW => u,
            R | NE | SE => edge_half,
            U | D => band,
        },
        EdgeCase::HorizontalStep => match window {
            U | NW | NE => u,
            D | SW | SE => edge_half,
            L | R => band,
        },
        EdgeCase::DiagonalStep => {
            let mostly_dark = ((1.5 * r + 1.0) * u + 0.5 * r * v) / full;
            let mostly_light = ((0.5 * r + 1.0) * u + 1.5 * r * v) / full;
            let split_corner = ((0.5 * r + 1.0) * u + 0.5 * r * v) / half;
            match window {
                L | U => mostly_dark,
                R | D => mostly_light,
                NW => u,
                NE | SW => split_corner,
                SE => one_dark_corner,
            }
        }
        EdgeCase::Corner => {
            let thin = (u + 2.0 * r * v) / full;
            match window {
                L | U => band,
                R | D => thin,
                NW => u,
                NE | SW => edge_half,
                SE => one_dark_corner,
            }
        }
        EdgeCase::Ramp => {
            let rising_half = u + r / 2.0 * delta_v;
            let rising_full = u + r * (r + 1.0) * delta_v / (2.0 * full);
            match window {
                L | NW | SW => u,
                R | NE | SE => rising_half,
                U | D => rising_full,
            }
        }
        EdgeCase::Roof => match window {
            U | D => v - r * (r + 1.0) * delta_u / full,
            _ => v - r / 2.0 * delta_u,
        },
    }
}

fn gaussian_weight(dy: isize, dx: isize, sigma: f64) -> f64 {
    (-((dy * dy + dx * dx) as f64) / (2.0 * sigma * sigma)).exp()
}

fn sorted_median(mut values: Vec<f64>) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        (values[n / 2 - 1] + values[n / 2]) / 2.0
    }
}

/// Guided-filter `(a, b)` over `rect` placed at `(y, x)`, by direct summation.
fn naive_coefficients(
    plane: &ImageF,
    guide: &ImageF,
    y: isize,
    x: isize,
    rect: &WindowRect,
    eps: f64,
) -> (f64, f64) {
    let pad = 4 * rect.rows().max(rect.cols());
    let pv = plane.padded(pad);
    let gv = guide.padded(pad);
    let n = rect.area() as f64;
    let (mut sg, mut sp, mut sgg, mut sgp) = (0.0, 0.0, 0.0, 0.0);
    for (dy, dx) in rect.offsets() {
        let g = gv.get(y + dy, x + dx, 0);
        let p = pv.get(y + dy, x + dx, 0);
        sg += g;
        sp += p;
        sgg += g * g;
        sgp += g * p;
    }
    let (mg, mp) = (sg / n, sp / n);
    let var = sgg / n - mg * mg;
    let a = (sgp / n - mg * mp) / (var + eps);
    (a, mp - a * mg)
}

/// Value of `kernel` restricted to `rect` at `(y, x)` of a single-channel plane.
fn naive_window_value(
    kernel: Kernel,
    plane: &ImageF,
    p: &FilterParams,
    y: usize,
    x: usize,
    rect: &WindowRect,
) -> f64 {
    let view = plane.padded(2 * p.r);
    let (yi, xi) = (y as isize, x as isize);
    let at = |dy: isize, dx: isize| view.get(yi + dy, xi + dx, 0);
    let q = plane.get(y, x, 0);
    match kernel {
        Kernel::Box => rect.offsets().map(|(dy, dx)| at(dy, dx)).sum::<f64>() / rect.area() as f64,
        Kernel::Gaussian => {
            let (mut num, mut den) = (0.0, 0.0);
            for (dy, dx) in rect.offsets() {
                let w = gaussian_weight(dy, dx, p.sigma);
                num += w * at(dy, dx);
                den += w;
            }
            num / den
        }
        Kernel::Median => sorted_median(rect.offsets().map(|(dy, dx)| at(dy, dx)).collect()),
        Kernel::Bilateral => {
            let (mut num, mut den) = (0.0, 0.0);
            for (dy, dx) in rect.offsets() {
                let s = at(dy, dx);
                let w = gaussian_weight(dy, dx, p.sigma_s)
                    * (-(s - q) * (s - q) / (2.0 * p.sigma_r * p.sigma_r)).exp();
                num += w * s;
                den += w;
            }
            num / den
        }
        Kernel::Guided => unreachable!("guided windows are handled by position lists"),
    }
}

/// Window placements `(dy, dx)` whose linear models are averaged for
/// the guided candidate of `id` (or of the centred filter when `None`).
fn guided_positions(id: Option<SideWindowId>, r: isize) -> Vec<(isize, isize)> {
    use SideWindowId::*;
    match id {
        None => (-r..=r).flat_map(|a| (-r..=r).map(move |b| (a, b))).collect(),
        Some(L | R) => (-r..=r).map(|t| (t, 0)).collect(),
        Some(U | D) => (-r..=r).map(|t| (0, t)).collect(),
        Some(_) => vec![(0, 0)],
    }
}

fn rect_for(id: Option<SideWindowId>, r: usize) -> WindowRect {
    match id {
        Some(id) => crate::window::window_rect(id, r).unwrap(),
        None => {
            let r = r as isize;
            WindowRect {
                row_lo: -r,
                row_hi: r,
                col_lo: -r,
                col_hi: r,
            }
        }
    }
}

fn naive_guided(
    plane: &ImageF,
    guide: &ImageF,
    p: &FilterParams,
    y: usize,
    x: usize,
    id: Option<SideWindowId>,
) -> f64 {
    let rect = rect_for(id, p.r);
    average_models(guide, p.r, y, x, id, |yy, xx| {
        naive_coefficients(plane, guide, yy, xx, &rect, p.eps)
    })
}

fn average_models(
    guide: &ImageF,
    r: usize,
    y: usize,
    x: usize,
    id: Option<SideWindowId>,
    mut coefficients: impl FnMut(isize, isize) -> (f64, f64),
) -> f64 {
    let positions = guided_positions(id, r as isize);
    let (mut sa, mut sb) = (0.0, 0.0);
    for &(dy, dx) in &positions {
        let (a, b) = coefficients(y as isize + dy, x as isize + dx);
        sa += a;
        sb += b;
    }
    let n = positions.len() as f64;
    sa / n * guide.get(y, x, 0) + sb / n
}

/// Directly summed `(a, b)` for one window shape at every placement within
/// `r` of the image.
struct CoefficientGrid {
    r: usize,
    width: usize,
    data: Vec<(f64, f64)>,
}

impl CoefficientGrid {
    fn new(plane: &ImageF, guide: &ImageF, rect: &WindowRect, r: usize, eps: f64) -> Self {
        let (h, w) = (plane.height() + 2 * r, plane.width() + 2 * r);
        let ri = r as isize;
        let mut data = Vec::with_capacity(h * w);
        for yy in 0..h {
            for xx in 0..w {
                data.push(naive_coefficients(plane, guide, yy as isize - ri, xx as isize - ri, rect, eps));
            }
        }
        Self { r, width: w, data }
    }

    fn get(&self, y: isize, x: isize) -> (f64, f64) {
        let r = self.r as isize;
        self.data[(y + r) as usize * self.width + (x + r) as usize]
    }
}

/// Brute-force side-window candidates at one pixel of a single-channel plane.
pub fn naive_side_candidates(
    kernel: Kernel,
    plane: &ImageF,
    guide: Option<&ImageF>,
    p: &FilterParams,
    y: usize,
    x: usize,
) -> [f64; 8] {
    let guide = guide.unwrap_or(plane);
    let windows = enumerate_windows(p.r).expect("radius checked by caller");
    std::array::from_fn(|k| {
        let (id, rect) = windows[k];
        if kernel == Kernel::Guided {
            naive_guided(plane, guide, p, y, x, Some(id))
        } else {
            naive_window_value(kernel, plane, p, y, x, &rect)
        }
    })
}

/// Direct per-pixel, per-window evaluation with no acceleration structures.
///
/// With `side_window` set, the candidate closest to the input wins, ties
/// going to the earliest window. Intended for small images.
pub fn naive_reference(
    kernel: Kernel,
    side_window: bool,
    img: &ImageF,
    params: &FilterParams,
    guide: Option<&ImageF>,
) -> Result<ImageF> {
    params.validate()?;
    let r = params.r as isize;
    let centred = WindowRect {
        row_lo: -r,
        row_hi: r,
        col_lo: -r,
        col_hi: r,
    };
    Ok(img.map_channels(|plane| {
        let g = guide.cloned().unwrap_or_else(|| plane.clone());
        let grids: Vec<CoefficientGrid> = if kernel == Kernel::Guided {
            let ids: Vec<Option<SideWindowId>> = if side_window {
                SideWindowId::ALL.iter().copied().map(Some).collect()
            } else {
                vec![None]
            };
            ids.into_iter()
                .map(|id| CoefficientGrid::new(plane, &g, &rect_for(id, params.r), params.r, params.eps))
                .collect()
        } else {
            Vec::new()
        };
        let guided = |y: usize, x: usize, k: usize, id: Option<SideWindowId>| {
            average_models(&g, params.r, y, x, id, |yy, xx| grids[k].get(yy, xx))
        };
        ImageF::from_fn(plane.height(), plane.width(), |y, x| {
            if side_window {
                let cands: [f64; 8] = if kernel == Kernel::Guided {
                    std::array::from_fn(|k| guided(y, x, k, Some(SideWindowId::ALL[k])))
                } else {
                    let windows = enumerate_windows(params.r).expect("radius validated");
                    std::array::from_fn(|k| naive_window_value(kernel, plane, params, y, x, &windows[k].1))
                };
                let q = plane.get(y, x, 0);
                let mut best = cands[0];
                for &c in &cands[1..] {
                    if (q - c).powi(2) < (q - best).powi(2) {
                        best = c;
                    }
                }
                best
            } else if kernel == Kernel::Guided {
                guided(y, x, 0, None)
            } else {
                naive_window_value(kernel, plane, params, y, x, &centred)
            }
        })
    }))
}

/// Writes every edge image (default model, radius `r`) as `edge_<label>.pgm`.
pub fn write_edge_images(dir: &std::path::Path, r: usize) -> Result<Vec<std::path::PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for case in EdgeCase::ALL {
        let (img, _) = gen_edge_image(&EdgeModel::new(case), r)?;
        let path = dir.join(format!("edge_{}.pgm", case.label()));
        crate::io::save_image(&img, &path)?;
        written.push(path);
    }
    Ok(written)
}

/// Outcome of one self-test check.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} {} {}", self.name, self.detail)
    }
}

fn check(name: String, measured: f64, expected: f64, tol: f64) -> Check {
    let err = (measured - expected).abs();
    Check {
        name,
        passed: err <= tol,
        detail: format!("measured={measured:.12} expected={expected:.12} err={err:.3e}"),
    }
}

/// Per-window S-BOX candidates at the probe against their closed forms.
pub fn side_window_table(radius: usize, tol: f64) -> Result<Vec<Check>> {
    let mut out = Vec::with_capacity(48);
    for case in EdgeCase::ALL {
        let m = EdgeModel::new(case).with_size(64.max(4 * radius + 2));
        let (img, (py, px)) = gen_edge_image(&m, radius)?;
        let cands = SideFilter::Box { r: radius }.candidates(&img, None)?.at(py, px, 0);
        for id in SideWindowId::ALL {
            let expect = expected_side_window(case, id, radius, m.u, m.v, m.delta_u, m.delta_v);
            out.push(check(
                format!("window case={case} r={radius} {id}"),
                cands[id.index()],
                expect,
                tol,
            ));
        }
    }
    Ok(out)
}

/// BOX and S-BOX at the probe against their closed forms.
pub fn box_table(radius: usize, tol: f64) -> Result<Vec<Check>> {
    let mut out = Vec::with_capacity(12);
    for case in EdgeCase::ALL {
        let m = EdgeModel::new(case).with_size(64.max(4 * radius + 2));
        let (img, (py, px)) = gen_edge_image(&m, radius)?;
        let boxed = crate::classic::box_filter(&img, radius)?.get(py, px, 0);
        let sboxed = crate::swf::s_box(&img, radius)?.0.get(py, px, 0);
        let args = (m.u, m.v, m.delta_u, m.delta_v);
        out.push(check(
            format!("box case={case} r={radius}"),
            boxed,
            expected_box(case, radius, args.0, args.1, args.2, args.3),
            tol,
        ));
        out.push(check(
            format!("s-box case={case} r={radius}"),
            sboxed,
            expected_sbox(case, radius, args.0, args.1, args.2, args.3),
            tol,
        ));
    }
    Ok(out)
}

/// Fast filters (classic and side window) against [`naive_reference`].
pub fn equivalence_checks(size: usize, seed: u64, params: &FilterParams, tol: f64) -> Result<Vec<Check>> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let img = ImageF::from_fn(size, size, |_, _| rng.gen());
    let mut out = Vec::new();
    for kernel in Kernel::ALL {
        for side in [false, true] {
            let spec = crate::filter::FilterSpec::new(kernel, *params, side);
            let fast = spec.apply_once(&img, None)?.0;
            let slow = naive_reference(kernel, side, &img, params, None)?;
            let err = fast.max_abs_diff(&slow);
            let label = if side { "side" } else { "classic" };
            out.push(Check {
                name: format!("oracle {label}-{kernel} {size}x{size} seed={seed}"),
                passed: err <= tol,
                detail: format!("max_err={err:.3e}"),
            });
        }
    }
    Ok(out)
}

/// The analytic tables at r = 2 and r = 7, plus brute-force equivalence.
pub fn run_selftest() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for r in [2, 7] {
        checks.extend(side_window_table(r, 1e-9)?);
        checks.extend(box_table(r, 1e-9)?);
    }
    let params = FilterParams {
        r: 2,
        sigma: 1.5,
        sigma_s: 2.0,
        sigma_r: 0.2,
        eps: 0.05,
        iterations: 1,
    };
    checks.extend(equivalence_checks(16, 7, &params, 1e-6)?);
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertical_step_layout() {
        let m = EdgeModel::new(EdgeCase::VerticalStep);
        let (img, probe) = gen_edge_image(&m, 7).unwrap();
        assert_eq!(probe, (32, 31));
        for x in 0..64 {
            assert_eq!(img.get(10, x, 0), if x < 32 { 0.0 } else { 1.0 });
        }
    }

    #[test]
    fn ramp_and_roof_profiles() {
        let m = EdgeModel::new(EdgeCase::Ramp);
        let (img, (py, px)) = gen_edge_image(&m, 7).unwrap();
        assert_eq!(img.get(py, px, 0), 0.0);
        for k in 1..=10 {
            assert!((img.get(py, px + k, 0) - 0.1 * k as f64).abs() < 1e-12);
        }
        assert_eq!(img.get(py, px + 20, 0), 1.0);

        let m = EdgeModel::new(EdgeCase::Roof);
        let (img, (py, px)) = gen_edge_image(&m, 7).unwrap();
        assert_eq!(img.get(py, px, 0), 1.0);
        for k in 1..=7 {
            let expect = 1.0 - 0.1 * k as f64;
            assert!((img.get(py, px + k, 0) - expect).abs() < 1e-12);
            assert!((img.get(py, px - k, 0) - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_small_images() {
        let m = EdgeModel::new(EdgeCase::Corner).with_size(29);
        assert!(gen_edge_image(&m, 7).is_err());
        assert!(gen_edge_image(&m.with_size(30), 7).is_ok());
    }

    #[test]
    fn closed_forms_at_named_points() {
        use EdgeCase::*;
        assert!((expected_box(VerticalStep, 7, 0.0, 1.0, 0.1, 0.1) - 7.0 / 15.0).abs() < 1e-15);
        assert!((expected_box(Corner, 7, 0.0, 1.0, 0.1, 0.1) - 161.0 / 225.0).abs() < 1e-15);
        assert!((expected_box(Roof, 2, 0.0, 1.0, 0.1, 0.1) - 0.88).abs() < 1e-12);
        assert!((expected_sbox(Roof, 2, 0.0, 1.0, 0.1, 0.1) - 0.9).abs() < 1e-12);
        let sw = |c, id| expected_side_window(c, id, 7, 0.0, 1.0, 0.1, 0.1);
        assert_eq!(sw(VerticalStep, SideWindowId::L), 0.0);
        assert!((sw(VerticalStep, SideWindowId::R) - 7.0 / 8.0).abs() < 1e-15);
        let p = expected_side_window(Roof, SideWindowId::U, 2, 0.0, 1.0, 0.1, 0.1);
        assert!((p - 0.88).abs() < 1e-12);
    }

    #[test]
    fn tables_hold_at_small_radii() {
        for r in [1, 2, 3, 4] {
            for c in side_window_table(r, 1e-9).unwrap() {
                assert!(c.passed, "{c}");
            }
            for c in box_table(r, 1e-9).unwrap() {
                assert!(c.passed, "{c}");
            }
        }
    }

    #[test]
    fn side_window_means_match_direct_enumeration() {
        // The closed forms against an explicit count over each window.
        for case in EdgeCase::ALL {
            let m = EdgeModel::new(case).with_size(40);
            let (img, (py, px)) = gen_edge_image(&m, 3).unwrap();
            for (id, rect) in enumerate_windows(3).unwrap() {
                let mean: f64 = rect
                    .offsets()
                    .map(|(dy, dx)| img.get((py as isize + dy) as usize, (px as isize + dx) as usize, 0))
                    .sum::<f64>()
                    / rect.area() as f64;
                let e = expected_side_window(case, id, 3, m.u, m.v, m.delta_u, m.delta_v);
                assert!((mean - e).abs() < 1e-12, "{case} {id}: {mean} vs {e}");
            }
        }
    }

    #[test]
    fn fast_paths_match_oracle() {
        let params = FilterParams {
            r: 2,
            sigma: 1.2,
            sigma_s: 1.7,
            sigma_r: 0.25,
            eps: 0.08,
            iterations: 1,
        };
        for c in equivalence_checks(12, 3, &params, 1e-6).unwrap() {
            assert!(c.passed, "{c}");
        }
    }

    #[test]
    fn naive_median_even_count() {
        assert_eq!(sorted_median(vec![3.0, 1.0, 4.0, 2.0]), 2.5);
    }
}
