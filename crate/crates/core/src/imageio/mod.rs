//! 8-bit grayscale images: binary PGM I/O, block tiling and synthetic
//! test images.

mod pgm;
mod synth;

pub use pgm::{read_pgm, read_pgm_file, write_pgm, write_pgm_file};
pub use synth::{synth_image, SynthKind};

use crate::error::{Error, Result};
use crate::zonal2d::Block8;

/// Row-major 8-bit grayscale image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    maxval: u8,
    samples: Vec<u8>,
}

impl GrayImage {
    /// A full-range (maxval 255) image.
    pub fn new(width: usize, height: usize, samples: Vec<u8>) -> Result<Self> {
        Self::with_maxval(width, height, 255, samples)
    }

    pub fn with_maxval(width: usize, height: usize, maxval: u8, samples: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 || width.checked_mul(height) != Some(samples.len()) {
            return Err(Error::InvalidDimensions { width, height });
        }
        if maxval == 0 {
            return Err(Error::UnsupportedDepth(0));
        }
        Ok(GrayImage { width, height, maxval, samples })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn maxval(&self) -> u8 {
        self.maxval
    }

    pub fn samples(&self) -> &[u8] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<u8> {
        self.samples
    }

    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.samples[y * self.width + x]
    }

    /// Number of 8×8 blocks across and down, after padding to a multiple of 8.
    pub fn block_grid(&self) -> (usize, usize) {
        (self.width.div_ceil(8), self.height.div_ceil(8))
    }

    /// All 8×8 blocks in raster order. Edges are replicated out to the next
    /// multiple of eight.
    pub fn blocks(&self) -> Vec<Block8> {
        let (bw, bh) = self.block_grid();
        let mut out = Vec::with_capacity(bw * bh);
        for by in 0..bh {
            for bx in 0..bw {
                out.push(std::array::from_fn(|i| {
                    let y = (by * 8 + i).min(self.height - 1);
                    std::array::from_fn(|j| {
                        let x = (bx * 8 + j).min(self.width - 1);
                        self.get(x, y) as f64
                    })
                }));
            }
        }
        out
    }

    /// Inverse of [`GrayImage::blocks`]: tiles blocks back into an image of
    /// the given extent, dropping padding. Samples are rounded half away from
    /// zero and clamped to `0..=255`.
    pub fn from_blocks(width: usize, height: usize, blocks: &[Block8]) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidDimensions { width, height });
        }
        let bw = width.div_ceil(8);
        if blocks.len() != bw * height.div_ceil(8) {
            return Err(Error::InvalidArgument(format!(
                "{} blocks cannot tile a {width}x{height} image",
                blocks.len()
            )));
        }
        let mut samples = vec![0u8; width * height];
        for (y, row) in samples.chunks_mut(width).enumerate() {
            for (x, v) in row.iter_mut().enumerate() {
                let b = &blocks[(y / 8) * bw + x / 8];
                *v = b[y % 8][x % 8].round().clamp(0.0, 255.0) as u8;
            }
        }
        GrayImage::new(width, height, samples)
    }
}
