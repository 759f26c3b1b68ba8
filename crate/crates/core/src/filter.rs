//! Kernel choice shared by the CLI and the application pipelines.

use std::fmt;
use std::str::FromStr;

use crate::classic::{self, FilterParams};
use crate::error::{Error, Result};
use crate::image::ImageF;
use crate::swf::{SelectionMap, SideFilter};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kernel {
    Box,
    Gaussian,
    Median,
    Bilateral,
    Guided,
}

impl Kernel {
    pub const ALL: [Kernel; 5] = [
        Kernel::Box,
        Kernel::Gaussian,
        Kernel::Median,
        Kernel::Bilateral,
        Kernel::Guided,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Kernel::Box => "box",
            Kernel::Gaussian => "gaussian",
            Kernel::Median => "median",
            Kernel::Bilateral => "bilateral",
            Kernel::Guided => "guided",
        }
    }

    pub fn side(self, p: &FilterParams) -> SideFilter {
        match self {
            Kernel::Box => SideFilter::Box { r: p.r },
            Kernel::Gaussian => SideFilter::Gaussian {
                r: p.r,
                sigma: p.sigma,
            },
            Kernel::Median => SideFilter::Median { r: p.r },
            Kernel::Bilateral => SideFilter::Bilateral {
                r: p.r,
                sigma_s: p.sigma_s,
                sigma_r: p.sigma_r,
            },
            Kernel::Guided => SideFilter::Guided { r: p.r, eps: p.eps },
        }
    }

    /// Centered-window version of the kernel.
    pub fn classic(self, img: &ImageF, p: &FilterParams, guide: Option<&ImageF>) -> Result<ImageF> {
        match self {
            Kernel::Box => classic::box_filter(img, p.r),
            Kernel::Gaussian => classic::gaussian_filter(img, p.r, p.sigma),
            Kernel::Median => classic::median_filter(img, p.r),
            Kernel::Bilateral => classic::bilateral_filter(img, p.r, p.sigma_s, p.sigma_r),
            Kernel::Guided => classic::guided_filter(img, guide, p.r, p.eps),
        }
    }
}

impl fmt::Display for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kernel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Kernel::ALL
            .into_iter()
            .find(|k| k.name() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::Parameter(format!("unknown kernel '{s}'")))
    }
}

/// A fully configured filter: kernel, parameters and window mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilterSpec {
    pub kernel: Kernel,
    pub params: FilterParams,
    pub side_window: bool,
}

impl FilterSpec {
    pub fn new(kernel: Kernel, params: FilterParams, side_window: bool) -> Self {
        Self {
            kernel,
            params,
            side_window,
        }
    }

    /// One pass; the selection map is present only in side-window mode.
    pub fn apply_once(&self, img: &ImageF, guide: Option<&ImageF>) -> Result<(ImageF, Option<SelectionMap>)> {
        self.params.validate()?;
        if self.side_window {
            let (out, sel) = self.kernel.side(&self.params).apply(img, guide)?;
            Ok((out, Some(sel)))
        } else {
            Ok((self.kernel.classic(img, &self.params, guide)?, None))
        }
    }

    /// `params.iterations` passes; the map describes the final pass.
    pub fn apply(&self, img: &ImageF, guide: Option<&ImageF>) -> Result<(ImageF, Option<SelectionMap>)> {
        self.params.validate()?;
        let mut cur = self.apply_once(img, guide)?;
        for _ in 1..self.params.iterations {
            cur = self.apply_once(&cur.0, guide)?;
        }
        Ok(cur)
    }
}
