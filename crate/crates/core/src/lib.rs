//! Pruned multiplierless DCT approximation toolkit.
//!
//! * [`kernels`]: transform matrices and exact fast schedules
//! * [`zonal2d`]: separable 2-D transforms and energy compaction
//! * [`codec`]: JPEG-like block compression with PSNR / zero-count metrics
//! * [`opbench`]: instrumented operation counts
//! * [`imageio`]: binary PGM and synthetic test images
//! * [`cli`]: the `pdct` command-line front end

#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod codec;
pub mod error;
pub mod imageio;
pub mod kernels;
pub mod opbench;
pub mod zonal2d;

pub use error::{Error, Result};
