//! Side window filtering.
//!
//! A kernel is evaluated on each of the eight side windows of a pixel, and
//! the candidate closest (in squared distance) to the input value wins.
//! Ties go to the earliest window in canonical order.

use crate::classic::{
    check_guide, check_positive, check_radius, clamp_index, gaussian_taps, guide_for,
    horizontal_pass, median_of, spatial_weights, GuidedSums,
};
use crate::error::{Error, Result};
use crate::image::ImageF;
use crate::integral::IntegralImage;
use crate::parallel::{fill_rows, fill_rows2};
use crate::window::{rect_unchecked, SideWindowId, WindowRect};

/// Per-pixel, per-channel index of the winning side window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectionMap {
    height: usize,
    width: usize,
    channels: usize,
    data: Vec<u8>,
}

impl SelectionMap {
    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn indices(&self) -> &[u8] {
        &self.data
    }

    pub fn get(&self, y: usize, x: usize, c: usize) -> SideWindowId {
        SideWindowId::from_index(self.data[(y * self.width + x) * self.channels + c] as usize)
            .expect("selection indices are always < 8")
    }

    /// Selection of channel `c` only.
    pub fn channel(&self, c: usize) -> SelectionMap {
        SelectionMap {
            height: self.height,
            width: self.width,
            channels: 1,
            data: self.data.iter().skip(c).step_by(self.channels).copied().collect(),
        }
    }

    fn from_planes(planes: Vec<SelectionMap>) -> SelectionMap {
        if planes.len() == 1 {
            return planes.into_iter().next().unwrap();
        }
        let (h, w, n) = (planes[0].height, planes[0].width, planes.len());
        let mut data = vec![0u8; h * w * n];
        for (c, p) in planes.iter().enumerate() {
            for (i, &v) in p.data.iter().enumerate() {
                data[i * n + c] = v;
            }
        }
        SelectionMap {
            height: h,
            width: w,
            channels: n,
            data,
        }
    }

    /// Eight-level gray rendering: window index `k` maps to `k / 7`.
    pub fn to_image(&self) -> ImageF {
        let data = self.data.iter().map(|&k| f64::from(k) / 7.0).collect();
        ImageF::from_vec(self.height, self.width, self.channels, data).unwrap()
    }

    pub fn count(&self, id: SideWindowId) -> usize {
        self.data.iter().filter(|&&k| k as usize == id.index()).count()
    }
}

/// The eight candidate images of one filter pass, in canonical order.
#[derive(Debug, Clone)]
pub struct CandidateSet {
    candidates: [ImageF; 8],
}

impl CandidateSet {
    pub fn new(candidates: [ImageF; 8]) -> Result<Self> {
        for c in &candidates[1..] {
            candidates[0].ensure_same_shape(c)?;
        }
        Ok(Self { candidates })
    }

    pub fn get(&self, id: SideWindowId) -> &ImageF {
        &self.candidates[id.index()]
    }

    pub fn as_array(&self) -> &[ImageF; 8] {
        &self.candidates
    }

    /// Candidate values of every window at one sample.
    pub fn at(&self, y: usize, x: usize, c: usize) -> [f64; 8] {
        std::array::from_fn(|k| self.candidates[k].get(y, x, c))
    }
}

/// First index of the minimal squared distance to `q`.
#[inline]
pub fn select_closest(q: f64, candidates: &[f64; 8]) -> usize {
    let mut best = 0;
    let mut best_d = (q - candidates[0]) * (q - candidates[0]);
    for (k, &c) in candidates.iter().enumerate().skip(1) {
        let d = (q - c) * (q - c);
        let closer = d < best_d;
        best = if closer { k } else { best };
        best_d = if closer { d } else { best_d };
    }
    best
}

/// Picks, per sample, the candidate closest to the input.
pub fn swf_select(input: &ImageF, candidates: &CandidateSet) -> Result<(ImageF, SelectionMap)> {
    input.ensure_same_shape(&candidates.candidates[0])?;
    let mut out = input.clone();
    let mut sel = vec![0u8; input.len()];
    for (i, q) in input.data().iter().enumerate() {
        let cand: [f64; 8] = std::array::from_fn(|k| candidates.candidates[k].data()[i]);
        let k = select_closest(*q, &cand);
        out.data_mut()[i] = cand[k];
        sel[i] = k as u8;
    }
    Ok((
        out,
        SelectionMap {
            height: input.height(),
            width: input.width(),
            channels: input.channels(),
            data: sel,
        },
    ))
}

/// Evaluates all eight side-window candidates of one plane at a pixel.
pub(crate) trait SideKernel: Sync {
    fn candidates(&self, y: usize, x: usize) -> [f64; 8];
}

fn run_plane<K: SideKernel>(plane: &ImageF, kernel: &K) -> (ImageF, SelectionMap) {
    let (h, w) = (plane.height(), plane.width());
    let src = plane.data();
    let (data, sel) = fill_rows2(h, w, |y, values, picks| {
        let row = &src[y * w..(y + 1) * w];
        for (x, ((out, pick), &q)) in values.iter_mut().zip(picks.iter_mut()).zip(row).enumerate() {
            let cand = kernel.candidates(y, x);
            let k = select_closest(q, &cand);
            *out = cand[k];
            *pick = k as u8;
        }
    });
    (
        ImageF::from_vec(h, w, 1, data).unwrap(),
        SelectionMap {
            height: h,
            width: w,
            channels: 1,
            data: sel,
        },
    )
}

fn candidate_planes<K: SideKernel>(plane: &ImageF, kernel: &K) -> [ImageF; 8] {
    let (h, w) = (plane.height(), plane.width());
    let all: Vec<[f64; 8]> = fill_rows(h, w, |y, row| {
        for (x, out) in row.iter_mut().enumerate() {
            *out = kernel.candidates(y, x);
        }
    });
    std::array::from_fn(|k| {
        ImageF::from_vec(h, w, 1, all.iter().map(|c| c[k]).collect()).unwrap()
    })
}

/// Runs a per-plane kernel over every channel.
fn run<K, F>(img: &ImageF, make: F) -> (ImageF, SelectionMap)
where
    K: SideKernel,
    F: Fn(&ImageF) -> K,
{
    let mut outs = Vec::with_capacity(img.channels());
    let mut sels = Vec::with_capacity(img.channels());
    for c in 0..img.channels() {
        let owned;
        let plane = if img.channels() == 1 {
            img
        } else {
            owned = img.channel(c);
            &owned
        };
        let (o, s) = run_plane(plane, &make(plane));
        outs.push(o);
        sels.push(s);
    }
    let out = if outs.len() == 1 {
        outs.pop().unwrap()
    } else {
        ImageF::from_channels(&outs).unwrap()
    };
    (out, SelectionMap::from_planes(sels))
}

fn collect_candidates<K, F>(img: &ImageF, make: F) -> CandidateSet
where
    K: SideKernel,
    F: Fn(&ImageF) -> K,
{
    let per_channel: Vec<[ImageF; 8]> = (0..img.channels())
        .map(|c| {
            let plane = img.channel(c);
            candidate_planes(&plane, &make(&plane))
        })
        .collect();
    let candidates = std::array::from_fn(|k| {
        let planes: Vec<ImageF> = per_channel.iter().map(|p| p[k].clone()).collect();
        ImageF::from_channels(&planes).unwrap()
    });
    CandidateSet { candidates }
}

fn side_rects(r: usize) -> [WindowRect; 8] {
    SideWindowId::ALL.map(|id| rect_unchecked(id, r as isize))
}

struct BoxKernel {
    sat: IntegralImage,
    bounds: [isize; 4],
    inv_area: [f64; 8],
}

impl BoxKernel {
    fn new(plane: &ImageF, r: usize) -> Self {
        let ri = r as isize;
        Self {
            sat: IntegralImage::new(plane, 0, r),
            bounds: [-ri, 0, 1, ri + 1],
            inv_area: side_rects(r).map(|rc| 1.0 / rc.area() as f64),
        }
    }
}

impl SideKernel for BoxKernel {
    #[inline]
    fn candidates(&self, y: usize, x: usize) -> [f64; 8] {
        // Rows and columns of `g` sit at offsets -r, 0, 1 and r + 1.
        let (table, stride, pad) = self.sat.raw();
        let (y, x) = (y as isize + pad, x as isize + pad);
        let b = self.bounds;
        let g: [[f64; 4]; 4] = std::array::from_fn(|i| {
            let base = (y + b[i]) as usize * stride;
            std::array::from_fn(|j| table[base + (x + b[j]) as usize])
        });
        let sums = [
            g[3][2] - g[0][2] - g[3][0] + g[0][0],
            g[3][3] - g[0][3] - g[3][1] + g[0][1],
            g[2][3] - g[0][3] - g[2][0] + g[0][0],
            g[3][3] - g[1][3] - g[3][0] + g[1][0],
            g[2][2] - g[0][2] - g[2][0] + g[0][0],
            g[2][3] - g[0][3] - g[2][1] + g[0][1],
            g[3][2] - g[1][2] - g[3][0] + g[1][0],
            g[3][3] - g[1][3] - g[3][1] + g[1][1],
        ];
        std::array::from_fn(|k| sums[k] * self.inv_area[k])
    }
}

/// Separable Gaussian restricted to each side window.
///
/// Horizontal partial sums over the left half, right half and full span are
/// combined with vertical partial sums over the upper half, lower half and
/// full span; each window renormalizes by its own weight total.
struct GaussianKernel {
    h: usize,
    w: usize,
    r: isize,
    taps: Vec<f64>,
    // left, right, full
    horiz: [Vec<f64>; 3],
    // left/up half, full
    half_norm: f64,
    full_norm: f64,
}

impl GaussianKernel {
    fn new(plane: &ImageF, r: usize, sigma: f64) -> Self {
        let taps = gaussian_taps(r, sigma);
        let ri = r as isize;
        let half_norm: f64 = taps[..=r].iter().sum();
        let full_norm: f64 = taps.iter().sum();
        Self {
            h: plane.height(),
            w: plane.width(),
            r: ri,
            horiz: [
                horizontal_pass(plane, &taps, r, -ri, 0),
                horizontal_pass(plane, &taps, r, 0, ri),
                horizontal_pass(plane, &taps, r, -ri, ri),
            ],
            taps,
            half_norm,
            full_norm,
        }
    }

    #[inline]
    fn vertical(&self, src: &[f64], y: usize, x: usize, lo: isize, hi: isize) -> f64 {
        let mut acc = 0.0;
        for d in lo..=hi {
            acc += self.taps[(d + self.r) as usize] * src[clamp_index(y as isize + d, self.h) * self.w + x];
        }
        acc
    }
}

impl SideKernel for GaussianKernel {
    fn candidates(&self, y: usize, x: usize) -> [f64; 8] {
        let r = self.r;
        let [left, right, full] = &self.horiz;
        let hn = self.half_norm;
        let fn_ = self.full_norm;
        [
            self.vertical(left, y, x, -r, r) / (fn_ * hn),
            self.vertical(right, y, x, -r, r) / (fn_ * hn),
            self.vertical(full, y, x, -r, 0) / (hn * fn_),
            self.vertical(full, y, x, 0, r) / (hn * fn_),
            self.vertical(left, y, x, -r, 0) / (hn * hn),
            self.vertical(right, y, x, -r, 0) / (hn * hn),
            self.vertical(left, y, x, 0, r) / (hn * hn),
            self.vertical(right, y, x, 0, r) / (hn * hn),
        ]
    }
}

struct MedianKernel<'a> {
    view: crate::image::PaddedView<'a>,
    rects: [WindowRect; 8],
}

impl SideKernel for MedianKernel<'_> {
    fn candidates(&self, y: usize, x: usize) -> [f64; 8] {
        let (y, x) = (y as isize, x as isize);
        let mut buf = Vec::with_capacity(self.rects[0].area());
        std::array::from_fn(|k| {
            buf.clear();
            buf.extend(
                self.rects[k]
                    .offsets()
                    .map(|(dy, dx)| self.view.get(y + dy, x + dx, 0)),
            );
            median_of(&mut buf)
        })
    }
}

/// Region of an offset: 0 = negative, 1 = zero, 2 = positive.
#[inline]
fn sign_class(d: isize) -> usize {
    (d.signum() + 1) as usize
}

/// Combines the nine sign-quadrant partial sums into the eight window sums.
///
/// `q[sy][sx]` holds the sum over offsets with row sign `sy` and column
/// sign `sx`.
#[inline]
fn combine_regions(q: &[[f64; 3]; 3]) -> [f64; 8] {
    let col = |sx: usize| q[0][sx] + q[1][sx] + q[2][sx];
    let row = |sy: usize| q[sy][0] + q[sy][1] + q[sy][2];
    let quad = |ys: [usize; 2], xs: [usize; 2]| {
        q[ys[0]][xs[0]] + q[ys[0]][xs[1]] + q[ys[1]][xs[0]] + q[ys[1]][xs[1]]
    };
    [
        col(0) + col(1),
        col(1) + col(2),
        row(0) + row(1),
        row(1) + row(2),
        quad([0, 1], [0, 1]),
        quad([0, 1], [1, 2]),
        quad([1, 2], [0, 1]),
        quad([1, 2], [1, 2]),
    ]
}

struct BilateralKernel<'a> {
    plane: &'a ImageF,
    r: isize,
    spatial: Vec<f64>,
    inv_range: f64,
}

impl SideKernel for BilateralKernel<'_> {
    fn candidates(&self, y: usize, x: usize) -> [f64; 8] {
        let (h, w) = (self.plane.height(), self.plane.width());
        let src = self.plane.data();
        let r = self.r;
        let side = (2 * r + 1) as usize;
        let center = src[y * w + x];
        let mut num = [[0.0; 3]; 3];
        let mut den = [[0.0; 3]; 3];
        for dy in -r..=r {
            let yy = clamp_index(y as isize + dy, h);
            let sy = sign_class(dy);
            for dx in -r..=r {
                let q = src[yy * w + clamp_index(x as isize + dx, w)];
                let diff = q - center;
                let wt = self.spatial[(dy + r) as usize * side + (dx + r) as usize]
                    * (-diff * diff * self.inv_range).exp();
                let sx = sign_class(dx);
                num[sy][sx] += wt * q;
                den[sy][sx] += wt;
            }
        }
        let n = combine_regions(&num);
        let d = combine_regions(&den);
        std::array::from_fn(|k| n[k] / d[k])
    }
}

/// Side-window guided filter kernel.
///
/// Edge windows (L, R, U, D) slide along the side that carries the target
/// until the target leaves them, giving `2r+1` positions whose linear
/// coefficients are averaged. Corner windows use the single position with
/// the target at the corner.
struct GuidedKernel {
    h: usize,
    w: usize,
    r: usize,
    guide: Vec<f64>,
    // For L and R: coefficients at anchors with rows in [-r, h-1+r].
    // For U and D: anchors with cols in [-r, w-1+r].
    sliding: [Vec<(f64, f64)>; 4],
    corners: [Vec<(f64, f64)>; 4],
}

impl GuidedKernel {
    fn new(plane: &ImageF, guide: &ImageF, r: usize, eps: f64) -> Self {
        let (h, w) = (plane.height(), plane.width());
        let sums = GuidedSums::new(guide, plane, 2 * r);
        let ri = r as isize;
        let rects = side_rects(r);
        let vertical_anchors = |rect: WindowRect| {
            fill_rows(h + 2 * r, w, |ey, row| {
                for (x, out) in row.iter_mut().enumerate() {
                    *out = sums.coefficients(ey as isize - ri, x as isize, &rect, eps);
                }
            })
        };
        let horizontal_anchors = |rect: WindowRect| {
            fill_rows(h, w + 2 * r, |y, row| {
                for (ex, out) in row.iter_mut().enumerate() {
                    *out = sums.coefficients(y as isize, ex as isize - ri, &rect, eps);
                }
            })
        };
        let direct = |rect: WindowRect| {
            fill_rows(h, w, |y, row| {
                for (x, out) in row.iter_mut().enumerate() {
                    *out = sums.coefficients(y as isize, x as isize, &rect, eps);
                }
            })
        };
        Self {
            h,
            w,
            r,
            guide: guide.data().to_vec(),
            sliding: [
                vertical_anchors(rects[0]),
                vertical_anchors(rects[1]),
                horizontal_anchors(rects[2]),
                horizontal_anchors(rects[3]),
            ],
            corners: [
                direct(rects[4]),
                direct(rects[5]),
                direct(rects[6]),
                direct(rects[7]),
            ],
        }
    }
}

impl SideKernel for GuidedKernel {
    fn candidates(&self, y: usize, x: usize) -> [f64; 8] {
        let (w, r) = (self.w, self.r);
        let ew = w + 2 * r;
        let g = self.guide[y * w + x];
        let n = (2 * r + 1) as f64;
        let mut out = [0.0; 8];
        for (k, coeffs) in self.sliding.iter().enumerate() {
            let (mut sa, mut sb) = (0.0, 0.0);
            for t in 0..=2 * r {
                // anchor offset t - r along the sliding direction
                let (a, b) = if k < 2 {
                    coeffs[(y + t) * w + x]
                } else {
                    coeffs[y * ew + x + t]
                };
                sa += a;
                sb += b;
            }
            out[k] = sa / n * g + sb / n;
        }
        for (k, coeffs) in self.corners.iter().enumerate() {
            let (a, b) = coeffs[y * w + x];
            out[4 + k] = a * g + b;
        }
        debug_assert!(y < self.h);
        out
    }
}

/// Side window box filter.
pub fn s_box(img: &ImageF, r: usize) -> Result<(ImageF, SelectionMap)> {
    check_radius(r)?;
    Ok(run(img, |p| BoxKernel::new(p, r)))
}

/// Side window Gaussian filter: the centred kernel truncated to each window.
pub fn s_gaussian(img: &ImageF, r: usize, sigma: f64) -> Result<(ImageF, SelectionMap)> {
    check_radius(r)?;
    check_positive("sigma", sigma)?;
    Ok(run(img, |p| GaussianKernel::new(p, r, sigma)))
}

/// Side window median filter.
pub fn s_median(img: &ImageF, r: usize) -> Result<(ImageF, SelectionMap)> {
    check_radius(r)?;
    let rects = side_rects(r);
    let mut outs = Vec::new();
    let mut sels = Vec::new();
    for c in 0..img.channels() {
        let plane = img.channel(c);
        let kernel = MedianKernel {
            view: plane.padded(r),
            rects,
        };
        let (o, s) = run_plane(&plane, &kernel);
        outs.push(o);
        sels.push(s);
    }
    Ok((ImageF::from_channels(&outs)?, SelectionMap::from_planes(sels)))
}

/// Side window bilateral filter.
pub fn s_bilateral(img: &ImageF, r: usize, sigma_s: f64, sigma_r: f64) -> Result<(ImageF, SelectionMap)> {
    check_radius(r)?;
    check_positive("sigma_s", sigma_s)?;
    check_positive("sigma_r", sigma_r)?;
    let spatial = spatial_weights(r, sigma_s);
    let inv_range = 1.0 / (2.0 * sigma_r * sigma_r);
    let mut outs = Vec::new();
    let mut sels = Vec::new();
    for c in 0..img.channels() {
        let plane = img.channel(c);
        let kernel = BilateralKernel {
            plane: &plane,
            r: r as isize,
            spatial: spatial.clone(),
            inv_range,
        };
        let (o, s) = run_plane(&plane, &kernel);
        outs.push(o);
        sels.push(s);
    }
    Ok((ImageF::from_channels(&outs)?, SelectionMap::from_planes(sels)))
}

/// Side window guided filter; `None` means self-guided per channel.
pub fn s_guided(img: &ImageF, guide: Option<&ImageF>, r: usize, eps: f64) -> Result<(ImageF, SelectionMap)> {
    check_radius(r)?;
    check_positive("eps", eps)?;
    check_guide(img, guide)?;
    Ok(run(img, |p| GuidedKernel::new(p, &guide_for(guide, p), r, eps)))
}

/// Side-window kernels, for candidate inspection and dispatch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SideFilter {
    Box { r: usize },
    Gaussian { r: usize, sigma: f64 },
    Median { r: usize },
    Bilateral { r: usize, sigma_s: f64, sigma_r: f64 },
    Guided { r: usize, eps: f64 },
}

impl SideFilter {
    pub fn apply(&self, img: &ImageF, guide: Option<&ImageF>) -> Result<(ImageF, SelectionMap)> {
        match *self {
            SideFilter::Box { r } => s_box(img, r),
            SideFilter::Gaussian { r, sigma } => s_gaussian(img, r, sigma),
            SideFilter::Median { r } => s_median(img, r),
            SideFilter::Bilateral { r, sigma_s, sigma_r } => s_bilateral(img, r, sigma_s, sigma_r),
            SideFilter::Guided { r, eps } => s_guided(img, guide, r, eps),
        }
    }

    /// All eight candidate images, before selection.
    pub fn candidates(&self, img: &ImageF, guide: Option<&ImageF>) -> Result<CandidateSet> {
        match *self {
            SideFilter::Box { r } => {
                check_radius(r)?;
                Ok(collect_candidates(img, |p| BoxKernel::new(p, r)))
            }
            SideFilter::Gaussian { r, sigma } => {
                check_radius(r)?;
                check_positive("sigma", sigma)?;
                Ok(collect_candidates(img, |p| GaussianKernel::new(p, r, sigma)))
            }
            SideFilter::Median { r } => {
                check_radius(r)?;
                let rects = side_rects(r);
                let per: Vec<[ImageF; 8]> = (0..img.channels())
                    .map(|c| {
                        let plane = img.channel(c);
                        let k = MedianKernel {
                            view: plane.padded(r),
                            rects,
                        };
                        candidate_planes(&plane, &k)
                    })
                    .collect();
                merge_candidates(per)
            }
            SideFilter::Bilateral { r, sigma_s, sigma_r } => {
                check_radius(r)?;
                check_positive("sigma_s", sigma_s)?;
                check_positive("sigma_r", sigma_r)?;
                let spatial = spatial_weights(r, sigma_s);
                let per: Vec<[ImageF; 8]> = (0..img.channels())
                    .map(|c| {
                        let plane = img.channel(c);
                        let k = BilateralKernel {
                            plane: &plane,
                            r: r as isize,
                            spatial: spatial.clone(),
                            inv_range: 1.0 / (2.0 * sigma_r * sigma_r),
                        };
                        candidate_planes(&plane, &k)
                    })
                    .collect();
                merge_candidates(per)
            }
            SideFilter::Guided { r, eps } => {
                check_radius(r)?;
                check_positive("eps", eps)?;
                check_guide(img, guide)?;
                Ok(collect_candidates(img, |p| {
                    GuidedKernel::new(p, &guide_for(guide, p), r, eps)
                }))
            }
        }
    }
}

fn merge_candidates(per_channel: Vec<[ImageF; 8]>) -> Result<CandidateSet> {
    let candidates = std::array::from_fn(|k| {
        let planes: Vec<ImageF> = per_channel.iter().map(|p| p[k].clone()).collect();
        ImageF::from_channels(&planes).unwrap()
    });
    CandidateSet::new(candidates)
}

/// Applies `filter` `n` times, feeding each output into the next pass.
pub fn iterate<F>(mut filter: F, img: &ImageF, n: usize) -> Result<ImageF>
where
    F: FnMut(&ImageF) -> Result<ImageF>,
{
    if n == 0 {
        return Err(Error::Parameter("iteration count must be at least 1".into()));
    }
    let mut cur = filter(img)?;
    for _ in 1..n {
        cur = filter(&cur)?;
    }
    Ok(cur)
}
