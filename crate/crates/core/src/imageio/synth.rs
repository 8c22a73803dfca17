use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::GrayImage;
use crate::error::{Error, Result};

/// Deterministic synthetic test images.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SynthKind {
    /// Every sample equal to the given level.
    Flat(u8),
    /// Diagonal ramp from 0 at the top-left to 255 at the bottom-right.
    Gradient,
    /// 8×8 tiles alternating between 0 and 255.
    Checker,
    /// Uniform noise from a ChaCha8 stream with the given seed.
    Noise(u64),
}

pub fn synth_image(kind: SynthKind, width: usize, height: usize) -> Result<GrayImage> {
    if width == 0 || height == 0 {
        return Err(Error::InvalidDimensions { width, height });
    }
    let samples = match kind {
        SynthKind::Flat(v) => vec![v; width * height],
        SynthKind::Gradient => {
            let span = (width + height - 2).max(1);
            (0..height)
                .flat_map(|y| (0..width).map(move |x| ((x + y) * 255 / span) as u8))
                .collect()
        }
        SynthKind::Checker => (0..height)
            .flat_map(|y| (0..width).map(move |x| if (x / 8 + y / 8) % 2 == 0 { 0 } else { 255 }))
            .collect(),
        SynthKind::Noise(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..width * height).map(|_| rng.random()).collect()
        }
    };
    GrayImage::new(width, height, samples)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_and_gradient() {
        let img = synth_image(SynthKind::Flat(128), 16, 8).unwrap();
        assert!(img.samples().iter().all(|&v| v == 128));
        let g = synth_image(SynthKind::Gradient, 16, 16).unwrap();
        assert_eq!(g.get(0, 0), 0);
        assert_eq!(g.get(15, 15), 255);
    }

    #[test]
    fn checker_tiles() {
        let c = synth_image(SynthKind::Checker, 16, 16).unwrap();
        assert_eq!(c.get(0, 0), 0);
        assert_eq!(c.get(8, 0), 255);
        assert_eq!(c.get(8, 8), 0);
    }

    #[test]
    fn noise_is_reproducible() {
        let a = synth_image(SynthKind::Noise(42), 32, 32).unwrap();
        let b = synth_image(SynthKind::Noise(42), 32, 32).unwrap();
        let c = synth_image(SynthKind::Noise(43), 32, 32).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn zero_dimension_is_rejected() {
        assert!(synth_image(SynthKind::Gradient, 0, 8).is_err());
    }
}
