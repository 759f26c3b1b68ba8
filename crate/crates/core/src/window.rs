//! The eight discrete side windows and their pixel extents.

use std::fmt;

use crate::error::{Error, Result};

/// One of the eight side windows, in tie-break order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum SideWindowId {
    L = 0,
    R = 1,
    U = 2,
    D = 3,
    NW = 4,
    NE = 5,
    SW = 6,
    SE = 7,
}

impl SideWindowId {
    pub const ALL: [SideWindowId; 8] = [
        SideWindowId::L,
        SideWindowId::R,
        SideWindowId::U,
        SideWindowId::D,
        SideWindowId::NW,
        SideWindowId::NE,
        SideWindowId::SW,
        SideWindowId::SE,
    ];

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Self> {
        Self::ALL.get(i).copied()
    }

    /// Image under a horizontal mirror (x -> -x).
    pub fn mirror_horizontal(self) -> Self {
        use SideWindowId::*;
        match self {
            L => R,
            R => L,
            NW => NE,
            NE => NW,
            SW => SE,
            SE => SW,
            U => U,
            D => D,
        }
    }

    /// Image under a vertical mirror (y -> -y).
    pub fn mirror_vertical(self) -> Self {
        use SideWindowId::*;
        match self {
            U => D,
            D => U,
            NW => SW,
            SW => NW,
            NE => SE,
            SE => NE,
            L => L,
            R => R,
        }
    }

    pub fn name(self) -> &'static str {
        use SideWindowId::*;
        match self {
            L => "L",
            R => "R",
            U => "U",
            D => "D",
            NW => "NW",
            NE => "NE",
            SW => "SW",
            SE => "SE",
        }
    }
}

impl fmt::Display for SideWindowId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Inclusive signed offsets of a window relative to its target pixel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WindowRect {
    pub row_lo: isize,
    pub row_hi: isize,
    pub col_lo: isize,
    pub col_hi: isize,
}

impl WindowRect {
    pub fn rows(&self) -> usize {
        (self.row_hi - self.row_lo + 1) as usize
    }

    pub fn cols(&self) -> usize {
        (self.col_hi - self.col_lo + 1) as usize
    }

    pub fn area(&self) -> usize {
        self.rows() * self.cols()
    }

    pub fn contains(&self, dy: isize, dx: isize) -> bool {
        (self.row_lo..=self.row_hi).contains(&dy) && (self.col_lo..=self.col_hi).contains(&dx)
    }

    /// All offsets, row-major.
    pub fn offsets(&self) -> impl Iterator<Item = (isize, isize)> + '_ {
        (self.row_lo..=self.row_hi)
            .flat_map(move |dy| (self.col_lo..=self.col_hi).map(move |dx| (dy, dx)))
    }

    /// The same rect shifted by `(dy, dx)`.
    pub fn shifted(&self, dy: isize, dx: isize) -> WindowRect {
        WindowRect {
            row_lo: self.row_lo + dy,
            row_hi: self.row_hi + dy,
            col_lo: self.col_lo + dx,
            col_hi: self.col_hi + dx,
        }
    }
}

/// Pixel extent of side window `id` at radius `r`.
pub fn window_rect(id: SideWindowId, r: usize) -> Result<WindowRect> {
    if r == 0 {
        return Err(Error::Parameter("window radius must be at least 1".into()));
    }
    Ok(rect_unchecked(id, r as isize))
}

#[inline]
pub(crate) fn rect_unchecked(id: SideWindowId, r: isize) -> WindowRect {
    use SideWindowId::*;
    let (row_lo, row_hi) = match id {
        L | R => (-r, r),
        U | NW | NE => (-r, 0),
        D | SW | SE => (0, r),
    };
    let (col_lo, col_hi) = match id {
        U | D => (-r, r),
        L | NW | SW => (-r, 0),
        R | NE | SE => (0, r),
    };
    WindowRect {
        row_lo,
        row_hi,
        col_lo,
        col_hi,
    }
}

/// All eight windows in canonical order.
pub fn enumerate_windows(r: usize) -> Result<[(SideWindowId, WindowRect); 8]> {
    if r == 0 {
        return Err(Error::Parameter("window radius must be at least 1".into()));
    }
    Ok(SideWindowId::ALL.map(|id| (id, rect_unchecked(id, r as isize))))
}
