//! Colorization by optimization with side-window neighbourhoods.
//!
//! Each unconstrained pixel's chroma should equal the affinity-weighted mean
//! of its neighbours. Neighbours come from the side window whose box mean of
//! the luma is closest to the pixel's own luma, so they stay on the pixel's
//! side of an intensity edge. Scribbled pixels are fixed and eliminated from
//! the system; the remaining least-squares problem is solved with
//! Jacobi-preconditioned conjugate gradients on the normal equations.

use crate::color::yuv_to_rgb;
use crate::error::{Error, Result};
use crate::image::ImageF;
use crate::swf::{s_box, SelectionMap, SideFilter};
use crate::window::{rect_unchecked, SideWindowId, WindowRect};

/// Chroma constraints.
#[derive(Debug, Clone, PartialEq)]
pub struct ScribbleSet {
    height: usize,
    width: usize,
    mask: Vec<bool>,
    u: Vec<f64>,
    v: Vec<f64>,
}

impl ScribbleSet {
    pub fn new(height: usize, width: usize) -> Self {
        let n = height * width;
        Self {
            height,
            width,
            mask: vec![false; n],
            u: vec![0.0; n],
            v: vec![0.0; n],
        }
    }

    pub fn insert(&mut self, y: usize, x: usize, u: f64, v: f64) {
        let i = y * self.width + x;
        self.mask[i] = true;
        self.u[i] = u;
        self.v[i] = v;
    }

    /// Pixels with nonzero alpha become constraints; chroma comes from `rgb`.
    pub fn from_rgba(rgb: &ImageF, alpha: &ImageF) -> Result<Self> {
        if alpha.channels() != 1 || alpha.height() != rgb.height() || alpha.width() != rgb.width() {
            return Err(Error::Dimension("alpha plane must match the scribble image".into()));
        }
        let rgb = match rgb.channels() {
            3 => rgb.clone(),
            1 => ImageF::from_channels(&[rgb.clone(), rgb.clone(), rgb.clone()])?,
            n => {
                return Err(Error::Channels {
                    expected: 3,
                    actual: n,
                })
            }
        };
        let yuv = crate::color::rgb_to_yuv(&rgb)?;
        let mut set = Self::new(rgb.height(), rgb.width());
        for y in 0..rgb.height() {
            for x in 0..rgb.width() {
                if alpha.get(y, x, 0) > 0.0 {
                    set.insert(y, x, yuv.get(y, x, 1), yuv.get(y, x, 2));
                }
            }
        }
        Ok(set)
    }

    pub fn len(&self) -> usize {
        self.mask.iter().filter(|&&m| m).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.mask.iter().any(|&m| m)
    }

    pub fn is_constrained(&self, y: usize, x: usize) -> bool {
        self.mask[y * self.width + x]
    }
}

/// Row-normalized neighbour weights, stored row by row.
#[derive(Debug, Clone)]
pub struct AffinityGraph {
    width: usize,
    row_start: Vec<usize>,
    neighbours: Vec<usize>,
    weights: Vec<f64>,
    windows: Vec<u16>,
}

/// Bit set for the centred neighbourhood in [`AffinityGraph::window_mask`].
pub const CENTERED_MASK: u16 = 1 << 8;

impl AffinityGraph {
    pub fn len(&self) -> usize {
        self.row_start.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `(pixel index, weight)` pairs of pixel `i`.
    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let span = self.row_start[i]..self.row_start[i + 1];
        self.neighbours[span.clone()]
            .iter()
            .copied()
            .zip(self.weights[span].iter().copied())
    }

    /// Windows the neighbours of `i` were drawn from: bit `k` is side window
    /// `k` in canonical order, [`CENTERED_MASK`] the full square.
    pub fn window_mask(&self, i: usize) -> u16 {
        self.windows[i]
    }

    /// Whether offset `(dy, dx)` lies in a window recorded for pixel `i`.
    pub fn window_contains(&self, i: usize, r: usize, dy: isize, dx: isize) -> bool {
        mask_contains(self.windows[i], r, dy, dx)
    }

    pub fn width(&self) -> usize {
        self.width
    }
}

/// Per pixel, the side window whose box mean of `luma` is closest to it.
pub fn select_side_neighborhoods(luma: &ImageF, r: usize) -> Result<SelectionMap> {
    require_gray(luma)?;
    Ok(s_box(luma, r)?.1)
}

fn require_gray(img: &ImageF) -> Result<()> {
    if img.channels() != 1 {
        return Err(Error::Channels {
            expected: 1,
            actual: img.channels(),
        });
    }
    Ok(())
}

fn mask_contains(mask: u16, r: usize, dy: isize, dx: isize) -> bool {
    let ri = r as isize;
    if mask & CENTERED_MASK != 0 {
        return dy.abs() <= ri && dx.abs() <= ri;
    }
    SideWindowId::ALL
        .iter()
        .any(|id| mask & (1 << id.index()) != 0 && rect_unchecked(*id, ri).contains(dy, dx))
}

fn build_graph(
    luma: &ImageF,
    r: usize,
    sigma: f64,
    window_of: impl Fn(usize, usize) -> u16,
) -> Result<AffinityGraph> {
    require_gray(luma)?;
    if sigma.is_nan() || sigma <= 0.0 {
        return Err(Error::Parameter(format!("sigma must be positive, got {sigma}")));
    }
    let (h, w) = (luma.height(), luma.width());
    let ri = r as isize;
    let full = WindowRect {
        row_lo: -ri,
        row_hi: ri,
        col_lo: -ri,
        col_hi: ri,
    };
    let inv = 1.0 / (2.0 * sigma * sigma);
    let mut row_start = Vec::with_capacity(h * w + 1);
    let mut neighbours = Vec::new();
    let mut weights = Vec::new();
    let mut windows = Vec::with_capacity(h * w);
    row_start.push(0);
    let mut scratch: Vec<(usize, f64)> = Vec::new();
    for y in 0..h {
        for x in 0..w {
            let collect = |mask: u16, out: &mut Vec<(usize, f64)>| {
                out.clear();
                for (dy, dx) in full.offsets() {
                    if !mask_contains(mask, r, dy, dx) {
                        continue;
                    }
                    let (yy, xx) = (y as isize + dy, x as isize + dx);
                    if (dy, dx) == (0, 0) || yy < 0 || xx < 0 || yy >= h as isize || xx >= w as isize {
                        continue;
                    }
                    let (yy, xx) = (yy as usize, xx as usize);
                    let d = luma.get(y, x, 0) - luma.get(yy, xx, 0);
                    out.push((yy * w + xx, d * d));
                }
            };
            let mut mask = window_of(y, x);
            collect(mask, &mut scratch);
            if scratch.is_empty() {
                // The chosen window lies entirely outside the image.
                mask = CENTERED_MASK;
                collect(mask, &mut scratch);
            }
            // Weights relative to the closest neighbour, so they never all underflow.
            let d_min = scratch.iter().map(|e| e.1).fold(f64::INFINITY, f64::min);
            let total: f64 = scratch.iter().map(|e| (-(e.1 - d_min) * inv).exp()).sum();
            for &(j, d) in &scratch {
                neighbours.push(j);
                weights.push((-(d - d_min) * inv).exp() / total);
            }
            row_start.push(neighbours.len());
            windows.push(mask);
        }
    }
    Ok(AffinityGraph {
        width: w,
        row_start,
        neighbours,
        weights,
        windows,
    })
}

/// Affinities over each pixel's selected side window (the pixel itself excluded).
pub fn build_affinities(luma: &ImageF, sel: &SelectionMap, r: usize, sigma: f64) -> Result<AffinityGraph> {
    if sel.height() != luma.height() || sel.width() != luma.width() || sel.channels() != 1 {
        return Err(Error::Dimension("selection map must match the luma plane".into()));
    }
    crate::classic::check_radius(r)?;
    build_graph(luma, r, sigma, |y, x| 1 << sel.get(y, x, 0).index())
}

/// Tolerance on `|Y(i) - mean|` under which two windows count as tied.
pub const TIE_TOLERANCE: f64 = 1e-9;

/// Affinities over the union of every side window whose box mean is as
/// close to `Y(i)` as the best one (within [`TIE_TOLERANCE`]).
///
/// Where the closest window is unique this is [`build_affinities`]. In flat
/// areas all eight windows tie and the union is the full square, so chroma
/// can travel in every direction instead of only towards the tie-break
/// window.
pub fn build_tied_affinities(luma: &ImageF, r: usize, sigma: f64) -> Result<AffinityGraph> {
    require_gray(luma)?;
    let means = SideFilter::Box { r }.candidates(luma, None)?;
    build_graph(luma, r, sigma, |y, x| {
        let q = luma.get(y, x, 0);
        let dist = means.at(y, x, 0).map(|m| (q - m).abs());
        let best = dist.iter().copied().fold(f64::INFINITY, f64::min);
        let mut mask = 0u16;
        for (k, d) in dist.iter().enumerate() {
            if *d <= best + TIE_TOLERANCE {
                mask |= 1 << k;
            }
        }
        if mask == 0xff {
            CENTERED_MASK
        } else {
            mask
        }
    })
}

/// Affinities over the centred `(2r+1)^2` neighbourhood.
pub fn build_centered_affinities(luma: &ImageF, r: usize, sigma: f64) -> Result<AffinityGraph> {
    crate::classic::check_radius(r)?;
    build_graph(luma, r, sigma, |_, _| CENTERED_MASK)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Neighborhood {
    /// Union of the closest side windows ([`build_tied_affinities`]).
    Side,
    /// Exactly the tie-broken selected window ([`build_affinities`]).
    SelectedWindow,
    /// Centred square.
    Centered,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ColorizeOptions {
    pub r: usize,
    pub sigma: f64,
    pub neighborhood: Neighborhood,
    /// Relative residual of the normal equations.
    pub tolerance: f64,
    /// `None` means ten times the pixel count.
    pub max_iterations: Option<usize>,
}

impl Default for ColorizeOptions {
    fn default() -> Self {
        Self {
            r: 3,
            sigma: 0.05,
            neighborhood: Neighborhood::Side,
            tolerance: 1e-6,
            max_iterations: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveReport {
    pub iterations: usize,
    pub relative_residual: f64,
    pub converged: bool,
}

#[derive(Debug, Clone)]
pub struct Colorization {
    pub rgb: ImageF,
    pub u: ImageF,
    pub v: ImageF,
    pub reports: [SolveReport; 2],
}

impl Colorization {
    pub fn converged(&self) -> bool {
        self.reports.iter().all(|r| r.converged)
    }
}

/// Sum over unconstrained pixels of `(x_i - sum_j w_ij x_j)^2`.
pub fn quadratic_cost(graph: &AffinityGraph, scribbles: &ScribbleSet, field: &[f64]) -> f64 {
    (0..graph.len())
        .filter(|&i| !scribbles.mask[i])
        .map(|i| {
            let e = field[i] - graph.row(i).map(|(j, w)| w * field[j]).sum::<f64>();
            e * e
        })
        .sum()
}

/// The unconstrained-row system `A x = b` over free pixels.
struct ReducedSystem<'a> {
    graph: &'a AffinityGraph,
    free: Vec<usize>,
    // pixel -> free index
    slot: Vec<Option<usize>>,
}

impl<'a> ReducedSystem<'a> {
    fn new(graph: &'a AffinityGraph, scribbles: &ScribbleSet) -> Self {
        let free: Vec<usize> = (0..graph.len()).filter(|&i| !scribbles.mask[i]).collect();
        let mut slot = vec![None; graph.len()];
        for (k, &i) in free.iter().enumerate() {
            slot[i] = Some(k);
        }
        Self { graph, free, slot }
    }

    fn rhs(&self, fixed: &[f64], scribbles: &ScribbleSet) -> Vec<f64> {
        self.free
            .iter()
            .map(|&i| {
                self.graph
                    .row(i)
                    .filter(|&(j, _)| scribbles.mask[j])
                    .map(|(j, w)| w * fixed[j])
                    .sum()
            })
            .collect()
    }

    fn apply(&self, x: &[f64], out: &mut [f64]) {
        for (k, &i) in self.free.iter().enumerate() {
            let mut acc = x[k];
            for (j, w) in self.graph.row(i) {
                if let Some(s) = self.slot[j] {
                    acc -= w * x[s];
                }
            }
            out[k] = acc;
        }
    }

    fn apply_transpose(&self, y: &[f64], out: &mut [f64]) {
        out.copy_from_slice(y);
        for (k, &i) in self.free.iter().enumerate() {
            for (j, w) in self.graph.row(i) {
                if let Some(s) = self.slot[j] {
                    out[s] -= w * y[k];
                }
            }
        }
    }

    /// Diagonal of `A^T A`.
    fn normal_diagonal(&self) -> Vec<f64> {
        let mut d = vec![0.0; self.free.len()];
        for (k, &i) in self.free.iter().enumerate() {
            // Column k gets +1 from its own row; neighbour entries are -w.
            let mut own = 1.0;
            for (j, w) in self.graph.row(i) {
                if let Some(s) = self.slot[j] {
                    if s == k {
                        own -= w;
                    } else {
                        d[s] += w * w;
                    }
                }
            }
            d[k] += own * own;
        }
        d
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Preconditioned CG on `A^T A x = A^T b`, starting from zero.
fn solve_normal_equations(sys: &ReducedSystem<'_>, b: &[f64], tol: f64, max_iter: usize) -> (Vec<f64>, SolveReport) {
    let n = sys.free.len();
    let mut x = vec![0.0; n];
    let mut rhs = vec![0.0; n];
    sys.apply_transpose(b, &mut rhs);
    let rhs_norm = dot(&rhs, &rhs).sqrt();
    if n == 0 || rhs_norm == 0.0 {
        return (
            x,
            SolveReport {
                iterations: 0,
                relative_residual: 0.0,
                converged: true,
            },
        );
    }
    let inv_diag: Vec<f64> = sys
        .normal_diagonal()
        .into_iter()
        .map(|d| if d > 0.0 { 1.0 / d } else { 1.0 })
        .collect();
    let mut r = rhs;
    let mut z: Vec<f64> = r.iter().zip(&inv_diag).map(|(a, b)| a * b).collect();
    let mut p = z.clone();
    let mut rz = dot(&r, &z);
    let mut ap = vec![0.0; n];
    let mut tmp = vec![0.0; n];
    let mut rel = 1.0;
    for it in 0..max_iter {
        sys.apply(&p, &mut tmp);
        sys.apply_transpose(&tmp, &mut ap);
        let pap = dot(&p, &ap);
        if pap <= 0.0 {
            return (
                x,
                SolveReport {
                    iterations: it,
                    relative_residual: rel,
                    converged: rel <= tol,
                },
            );
        }
        let alpha = rz / pap;
        for k in 0..n {
            x[k] += alpha * p[k];
            r[k] -= alpha * ap[k];
        }
        rel = dot(&r, &r).sqrt() / rhs_norm;
        if rel <= tol {
            return (
                x,
                SolveReport {
                    iterations: it + 1,
                    relative_residual: rel,
                    converged: true,
                },
            );
        }
        for k in 0..n {
            z[k] = r[k] * inv_diag[k];
        }
        let rz_next = dot(&r, &z);
        let beta = rz_next / rz;
        rz = rz_next;
        for k in 0..n {
            p[k] = z[k] + beta * p[k];
        }
    }
    (
        x,
        SolveReport {
            iterations: max_iter,
            relative_residual: rel,
            converged: false,
        },
    )
}

/// Propagates one chroma channel from the scribbles; returns the full field.
pub fn propagate(
    graph: &AffinityGraph,
    scribbles: &ScribbleSet,
    fixed: &[f64],
    tolerance: f64,
    max_iterations: usize,
) -> (Vec<f64>, SolveReport) {
    let sys = ReducedSystem::new(graph, scribbles);
    let b = sys.rhs(fixed, scribbles);
    let (x, report) = solve_normal_equations(&sys, &b, tolerance, max_iterations);
    let mut field: Vec<f64> = (0..graph.len())
        .map(|i| if scribbles.mask[i] { fixed[i] } else { 0.0 })
        .collect();
    for (k, &i) in sys.free.iter().enumerate() {
        field[i] = x[k];
    }
    (field, report)
}

/// Colorizes `luma` from `scribbles` using side-window neighbourhoods.
pub fn colorize(luma: &ImageF, scribbles: &ScribbleSet, r: usize, sigma: f64) -> Result<ImageF> {
    let opts = ColorizeOptions {
        r,
        sigma,
        ..ColorizeOptions::default()
    };
    Ok(colorize_with(luma, scribbles, &opts)?.rgb)
}

pub fn colorize_with(luma: &ImageF, scribbles: &ScribbleSet, opts: &ColorizeOptions) -> Result<Colorization> {
    require_gray(luma)?;
    if scribbles.height != luma.height() || scribbles.width != luma.width() {
        return Err(Error::Dimension("scribbles must match the luma plane".into()));
    }
    if scribbles.is_empty() {
        return Err(Error::Constraint("at least one scribble is required".into()));
    }
    if opts.tolerance.is_nan() || opts.tolerance <= 0.0 {
        return Err(Error::Parameter("tolerance must be positive".into()));
    }
    let graph = match opts.neighborhood {
        Neighborhood::Side => build_tied_affinities(luma, opts.r, opts.sigma)?,
        Neighborhood::SelectedWindow => {
            let sel = select_side_neighborhoods(luma, opts.r)?;
            build_affinities(luma, &sel, opts.r, opts.sigma)?
        }
        Neighborhood::Centered => build_centered_affinities(luma, opts.r, opts.sigma)?,
    };
    let max_iter = opts.max_iterations.unwrap_or(10 * luma.len());
    let (u, ru) = propagate(&graph, scribbles, &scribbles.u, opts.tolerance, max_iter);
    let (v, rv) = propagate(&graph, scribbles, &scribbles.v, opts.tolerance, max_iter);
    let (h, w) = (luma.height(), luma.width());
    let yuv: Vec<f64> = (0..h * w).flat_map(|i| [luma.data()[i], u[i], v[i]]).collect();
    let rgb = yuv_to_rgb(&ImageF::from_vec(h, w, 3, yuv)?)?.map(|c| c.clamp(0.0, 1.0));
    Ok(Colorization {
        rgb,
        u: ImageF::from_vec(h, w, 1, u)?,
        v: ImageF::from_vec(h, w, 1, v)?,
        reports: [ru, rv],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_regions(n: usize, a: f64, b: f64) -> ImageF {
        ImageF::from_fn(n, n, |_, x| if x < n / 2 { a } else { b })
    }

    #[test]
    fn constant_luma_selects_left() {
        let sel = select_side_neighborhoods(&ImageF::filled(9, 9, 1, 0.5), 2).unwrap();
        assert_eq!(sel.count(SideWindowId::L), 81);
    }

    #[test]
    fn step_luma_left_of_edge_selects_left() {
        let sel = select_side_neighborhoods(&two_regions(20, 0.0, 1.0), 3).unwrap();
        assert_eq!(sel.get(10, 9, 0), SideWindowId::L);
        assert_eq!(sel.get(10, 10, 0), SideWindowId::R);
    }

    #[test]
    fn constant_luma_uniform_weights() {
        let luma = ImageF::filled(12, 12, 1, 0.3);
        let sel = select_side_neighborhoods(&luma, 2).unwrap();
        let g = build_affinities(&luma, &sel, 2, 0.05).unwrap();
        let i = 6 * 12 + 6;
        let row: Vec<_> = g.row(i).collect();
        assert_eq!(row.len(), 15 - 1);
        for (_, w) in row {
            assert!((w - 1.0 / 14.0).abs() < 1e-15);
        }
    }

    #[test]
    fn far_neighbours_get_negligible_weight() {
        // Y(i) = 0, neighbours {0, 1} with sigma 0.1: ratio 1 : e^-50.
        let luma = ImageF::from_vec(1, 3, 1, vec![1.0, 0.0, 0.0]).unwrap();
        let g = build_centered_affinities(&luma, 1, 0.1).unwrap();
        let row: Vec<_> = g.row(1).collect();
        assert_eq!(row.len(), 2);
        let w_far = row.iter().find(|e| e.0 == 0).unwrap().1;
        let w_near = row.iter().find(|e| e.0 == 2).unwrap().1;
        assert!((w_far / w_near - (-50f64).exp()).abs() < 1e-30);
        assert!((w_near - 1.0).abs() < 1e-20);
    }

    #[test]
    fn rows_are_convex() {
        let mut s = 1u64;
        let luma = ImageF::from_fn(15, 17, |_, _| {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1);
            (s >> 11) as f64 / (1u64 << 53) as f64
        });
        let sel = select_side_neighborhoods(&luma, 2).unwrap();
        let g = build_affinities(&luma, &sel, 2, 0.1).unwrap();
        for i in 0..g.len() {
            let (y, x) = (i / 17, i % 17);
            let m = g.window_mask(i);
            assert!(m == 1 << sel.get(y, x, 0).index() || m == CENTERED_MASK);
            let total: f64 = g.row(i).map(|(_, w)| w).sum();
            assert!((total - 1.0).abs() < 1e-9);
            for (j, w) in g.row(i) {
                assert!(w >= 0.0);
                assert!(j != i);
                let (dy, dx) = ((j / 17) as isize - y as isize, (j % 17) as isize - x as isize);
                assert!(g.window_contains(i, 2, dy, dx));
            }
        }
    }

    #[test]
    fn corner_window_outside_image_falls_back() {
        // At (0, 0) the NW window holds only the pixel itself.
        let luma = ImageF::from_fn(6, 6, |y, x| if y == 0 && x == 0 { 0.9 } else { 0.1 });
        let sel = select_side_neighborhoods(&luma, 1).unwrap();
        assert_eq!(sel.get(0, 0, 0), SideWindowId::NW);
        let g = build_affinities(&luma, &sel, 1, 0.05).unwrap();
        assert_eq!(g.row(0).count(), 3);
    }

    #[test]
    fn constant_luma_single_scribble_fills_everything() {
        let luma = ImageF::filled(10, 10, 1, 0.5);
        let mut s = ScribbleSet::new(10, 10);
        s.insert(3, 4, 0.12, -0.07);
        let out = colorize_with(&luma, &s, &ColorizeOptions::default()).unwrap();
        assert!(out.converged());
        for i in 0..100 {
            assert!((out.u.data()[i] - 0.12).abs() < 1e-6);
            assert!((out.v.data()[i] + 0.07).abs() < 1e-6);
        }
    }

    #[test]
    fn tied_windows_merge_in_flat_areas_only() {
        let luma = two_regions(20, 0.2, 0.8);
        let g = build_tied_affinities(&luma, 3, 0.05).unwrap();
        // interior: full square
        assert_eq!(g.window_mask(10 * 20 + 3), CENTERED_MASK);
        assert_eq!(g.row(10 * 20 + 3).count(), 48);
        // next to the edge: L, NW and SW tie; all neighbours on the left
        let i = 10 * 20 + 9;
        assert_eq!(g.window_mask(i), 0b0101_0001);
        assert!(g.row(i).all(|(j, _)| j % 20 <= 9));
        let i = 10 * 20 + 10;
        assert!(g.row(i).all(|(j, _)| j % 20 >= 10));
    }

    #[test]
    fn strict_selection_cannot_reach_left_of_scribble_on_flat_luma() {
        // With every window tied, the tie-break window L only looks left,
        // so pixels left of the scribble are not coupled to it.
        let luma = ImageF::filled(10, 10, 1, 0.5);
        let mut s = ScribbleSet::new(10, 10);
        s.insert(5, 5, 0.1, 0.1);
        let opts = ColorizeOptions {
            neighborhood: Neighborhood::SelectedWindow,
            ..ColorizeOptions::default()
        };
        let strict = colorize_with(&luma, &s, &opts).unwrap();
        let target = ImageF::filled(10, 10, 1, 0.1);
        assert!(strict.u.max_abs_diff(&target) > 0.01);
        let tied = colorize_with(&luma, &s, &ColorizeOptions::default()).unwrap();
        assert!(tied.u.max_abs_diff(&target) < 1e-6);
    }

    #[test]
    fn no_scribbles_is_an_error() {
        let luma = ImageF::filled(4, 4, 1, 0.5);
        assert!(matches!(
            colorize(&luma, &ScribbleSet::new(4, 4), 1, 0.05),
            Err(Error::Constraint(_))
        ));
    }

    #[test]
    fn scribbles_from_rgba() {
        let rgb = ImageF::from_vec(1, 2, 3, vec![1.0, 0.0, 0.0, 0.0, 0.0, 1.0]).unwrap();
        let alpha = ImageF::from_vec(1, 2, 1, vec![0.0, 1.0]).unwrap();
        let s = ScribbleSet::from_rgba(&rgb, &alpha).unwrap();
        assert_eq!(s.len(), 1);
        assert!(!s.is_constrained(0, 0));
        assert!(s.is_constrained(0, 1));
    }

    #[test]
    fn cost_does_not_exceed_zero_initialization() {
        let luma = two_regions(16, 0.3, 0.7).map(|v| v + 0.0);
        let mut s = ScribbleSet::new(16, 16);
        s.insert(8, 2, 0.2, 0.1);
        s.insert(8, 13, -0.2, 0.05);
        let g = build_tied_affinities(&luma, 2, 0.1).unwrap();
        let zero: Vec<f64> = (0..256).map(|i| if s.mask[i] { s.u[i] } else { 0.0 }).collect();
        let (field, rep) = propagate(&g, &s, &s.u, 1e-6, 2560);
        assert!(rep.converged);
        assert!(quadratic_cost(&g, &s, &field) <= quadratic_cost(&g, &s, &zero));
    }
}
