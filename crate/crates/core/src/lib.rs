//! Side window filtering.
//!
//! Each filter is evaluated on eight windows that touch the target pixel
//! with a side or a corner (instead of being centred on it), and the output
//! closest to the input value is kept. Edges survive because at least one
//! window usually lies entirely on the target's side of the edge.
//!
//! The crate provides the five classic filters ([`classic`]), their side
//! window counterparts ([`swf`]), application pipelines ([`apps`]),
//! colorization by optimization with side-window neighbourhoods
//! ([`colorize`]), and closed-form edge models with brute-force reference
//! filters ([`testkit`]).

pub mod apps;
pub mod classic;
pub mod cli;
pub mod color;
pub mod colorize;
pub mod error;
pub mod filter;
pub mod image;
pub mod integral;
pub mod io;
pub mod metrics;
mod parallel;
pub mod swf;
pub mod testkit;
pub mod window;

pub use crate::classic::FilterParams;
pub use crate::error::{Error, Result};
pub use crate::filter::{FilterSpec, Kernel};
pub use crate::image::{ImageF, PaddedView};
pub use crate::swf::{CandidateSet, SelectionMap, SideFilter};
pub use crate::window::{SideWindowId, WindowRect};
