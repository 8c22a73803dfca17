use crate::error::{Error, Result};
use crate::kernels::TransformSpec;

/// JPEG luminance quantization steps (ITU-T T.81 Annex K, table K.1).
pub const JPEG_LUMINANCE: [[u16; 8]; 8] = [
    [16, 11, 10, 16, 24, 40, 51, 61],
    [12, 12, 14, 19, 26, 58, 60, 55],
    [14, 13, 16, 24, 40, 57, 69, 56],
    [14, 17, 22, 29, 51, 87, 80, 62],
    [18, 22, 37, 56, 68, 109, 103, 77],
    [24, 35, 55, 64, 81, 104, 113, 92],
    [49, 64, 78, 87, 103, 121, 120, 101],
    [72, 92, 95, 98, 112, 100, 103, 99],
];

/// 8×8 table of positive quantization steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuantTable([[u16; 8]; 8]);

impl QuantTable {
    pub fn new(steps: [[u16; 8]; 8]) -> Result<Self> {
        if steps.iter().flatten().any(|&q| q == 0) {
            return Err(Error::InvalidArgument("quantization steps must be at least 1".into()));
        }
        Ok(QuantTable(steps))
    }

    pub fn jpeg_luminance() -> Self {
        QuantTable(JPEG_LUMINANCE)
    }

    /// Every step equal to `q`; `uniform(1)` only rounds.
    pub fn uniform(q: u16) -> Result<Self> {
        Self::new([[q; 8]; 8])
    }

    pub fn step(&self, i: usize, j: usize) -> u16 {
        self.0[i][j]
    }

    pub fn steps(&self) -> &[[u16; 8]; 8] {
        &self.0
    }

    /// Steps with the transform's scaling diagonal folded in:
    /// `q'_ij = q_ij / (d_i·d_j)`. Dividing unscaled integer coefficients by
    /// this table quantizes exactly like dividing `D`-scaled ones by `q`.
    pub fn merged(&self, spec: &TransformSpec) -> [[f64; 8]; 8] {
        let n = spec.rows();
        std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                if i < n && j < n {
                    self.0[i][j] as f64 / spec.pair_scale(i, j)
                } else {
                    f64::INFINITY
                }
            })
        })
    }
}

impl Default for QuantTable {
    fn default() -> Self {
        Self::jpeg_luminance()
    }
}

/// Quantizer rounding rule: nearest integer, ties away from zero.
pub fn quantize_value(coeff: f64, step: f64) -> i32 {
    (coeff / step).round() as i32
}
