//! Separable 2-D transforms on 8×8 blocks.
//!
//! The forward transform runs the 1-D schedule down the eight columns first
//! and then along the `rows` surviving rows, so a pruned 4-row transform
//! costs 8 + 4 invocations and a full one 8 + 8.

use crate::error::{Error, Result};
use crate::kernels::{build_modified_rdct, OpCount, TransformSpec};

/// 8×8 block of samples or coefficients, row-major.
pub type Block8 = [[f64; 8]; 8];
/// 4×4 block of low-frequency coefficients.
pub type Block4 = [[f64; 4]; 4];

/// A transform-domain block: full 8×8 or pruned 4×4.
#[derive(Debug, Clone, Copy, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum CoeffBlock {
    Full(Block8),
    Pruned(Block4),
}

impl CoeffBlock {
    pub fn size(&self) -> usize {
        match self {
            CoeffBlock::Full(_) => 8,
            CoeffBlock::Pruned(_) => 4,
        }
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        match self {
            CoeffBlock::Full(b) => b[i][j],
            CoeffBlock::Pruned(b) => b[i][j],
        }
    }

    /// The block embedded in an 8×8 array, zeros at pruned positions.
    pub fn to_padded(&self) -> Block8 {
        let mut out = [[0.0; 8]; 8];
        let n = self.size();
        for (i, row) in out.iter_mut().enumerate().take(n) {
            for (j, v) in row.iter_mut().enumerate().take(n) {
                *v = self.get(i, j);
            }
        }
        out
    }

    fn from_padded(b: Block8, n: usize) -> Self {
        if n == 8 {
            return CoeffBlock::Full(b);
        }
        let mut p = [[0.0; 4]; 4];
        for (i, row) in p.iter_mut().enumerate() {
            row.copy_from_slice(&b[i][..4]);
        }
        CoeffBlock::Pruned(p)
    }

    /// Sum of squared coefficients.
    pub fn energy(&self) -> f64 {
        let n = self.size();
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| self.get(i, j).powi(2)).sum()
    }
}

fn column(a: &Block8, j: usize) -> [f64; 8] {
    std::array::from_fn(|i| a[i][j])
}

/// Forward 2-D transform: `T·A·Tᵀ` when `scaled` is false, `Ĉ·A·Ĉᵀ` when
/// it is true.
pub fn forward_2d(spec: &TransformSpec, a: &Block8, scaled: bool) -> (CoeffBlock, OpCount) {
    let n = spec.rows();
    let mut count = OpCount::ZERO;

    let mut mid = [[0.0; 8]; 8];
    for j in 0..8 {
        let (y, c) = spec.forward(column(a, j));
        count += c;
        for (k, v) in y.into_iter().enumerate() {
            mid[k][j] = v;
        }
    }

    let mut out = [[0.0; 8]; 8];
    for k in 0..n {
        let (y, c) = spec.forward(mid[k]);
        count += c;
        out[k][..n].copy_from_slice(&y);
    }

    if scaled {
        for (k, row) in out.iter_mut().enumerate().take(n) {
            for (l, v) in row.iter_mut().enumerate().take(n) {
                *v *= spec.pair_scale(k, l);
            }
        }
    }
    (CoeffBlock::from_padded(out, n), count)
}

/// Exact unscaled `T·A·Tᵀ` for integer transforms. Only the top-left
/// `rows × rows` corner of the result is meaningful. `None` for transforms
/// with irrational entries.
pub fn forward_2d_integer(spec: &TransformSpec, a: &[[i64; 8]; 8]) -> Option<([[i64; 8]; 8], OpCount)> {
    let n = spec.rows();
    let mut count = OpCount::ZERO;
    let mut mid = [[0i64; 8]; 8];
    for j in 0..8 {
        let (y, c) = spec.forward_ring(std::array::from_fn(|i| a[i][j]))?;
        count += c;
        for (k, v) in y.into_iter().enumerate() {
            mid[k][j] = v;
        }
    }
    let mut out = [[0i64; 8]; 8];
    for k in 0..n {
        let (y, c) = spec.forward_ring(mid[k])?;
        count += c;
        out[k][..n].copy_from_slice(&y);
    }
    Some((out, count))
}

/// Inverse 2-D transform.
///
/// For orthonormal transforms this is `Ĉᵀ·B·Ĉ`; a pruned block therefore
/// reconstructs exactly as the full inverse of the zero-padded block would.
/// Transforms without orthogonal rows use their stored pseudo-inverse. When
/// `scaled` is false, `b` is taken to hold unscaled `T·A·Tᵀ` coefficients.
pub fn inverse_2d(spec: &TransformSpec, b: &CoeffBlock, scaled: bool) -> Result<Block8> {
    let n = spec.rows();
    if b.size() != n {
        return Err(Error::ShapeMismatch { expected: n, found: b.size() });
    }
    let mut coeffs = b.to_padded();
    if !scaled {
        for (k, row) in coeffs.iter_mut().enumerate().take(n) {
            for (l, v) in row.iter_mut().enumerate().take(n) {
                *v *= spec.pair_scale(k, l);
            }
        }
    }
    Ok(synthesize(spec, &coeffs))
}

/// `Sᵀ·B·S` over the first `rows` coefficients of `coeffs`.
pub(crate) fn synthesize(spec: &TransformSpec, coeffs: &Block8) -> Block8 {
    let s = spec.synthesis();
    let n = spec.rows();
    let mut m = [[0.0; 8]; 8];
    for k in 0..n {
        for j in 0..8 {
            m[k][j] = (0..n).map(|l| coeffs[k][l] * s[l][j]).sum();
        }
    }
    let mut a = [[0.0; 8]; 8];
    for (i, row) in a.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = (0..n).map(|k| s[k][i] * m[k][j]).sum();
        }
    }
    a
}

/// Energy compaction measurement for one block or a whole image.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Compaction {
    /// Low-frequency energy over total energy, pooled over blocks.
    pub weighted: f64,
    /// Mean of per-block fractions over blocks with nonzero energy.
    pub unweighted: f64,
    pub blocks: usize,
}

fn split_energy(spec: &TransformSpec, a: &Block8) -> (f64, f64) {
    let (b, _) = forward_2d(spec, a, true);
    let total = b.energy();
    let low: f64 = (0..4).flat_map(|i| (0..4).map(move |j| (i, j))).map(|(i, j)| b.get(i, j).powi(2)).sum();
    (low, total)
}

/// Fraction of the scaled 2-D modified RDCT energy of `a` that lands in the
/// 4×4 low-frequency corner.
pub fn energy_compaction(a: &Block8) -> Result<f64> {
    energy_compaction_with(&build_modified_rdct(), a)
}

/// [`energy_compaction`] for an arbitrary full transform.
pub fn energy_compaction_with(spec: &TransformSpec, a: &Block8) -> Result<f64> {
    let full = if spec.is_pruned() { crate::kernels::Family::build(spec.family()) } else { spec.clone() };
    if a.iter().flatten().all(|&v| v == 0.0) {
        return Err(Error::ZeroEnergy);
    }
    let (low, total) = split_energy(&full, a);
    if total == 0.0 {
        return Err(Error::ZeroEnergy);
    }
    Ok((low / total).clamp(0.0, 1.0))
}

/// Energy compaction over many blocks. Blocks without energy contribute to
/// neither average; an input with no energy at all is an error.
pub fn image_compaction(spec: &TransformSpec, blocks: &[Block8]) -> Result<Compaction> {
    let full = if spec.is_pruned() { crate::kernels::Family::build(spec.family()) } else { spec.clone() };
    let mut low_sum = 0.0;
    let mut total_sum = 0.0;
    let mut frac_sum = 0.0;
    let mut counted = 0usize;
    for a in blocks {
        let (low, total) = split_energy(&full, a);
        if total > 0.0 {
            low_sum += low;
            total_sum += total;
            frac_sum += low / total;
            counted += 1;
        }
    }
    if counted == 0 {
        return Err(Error::ZeroEnergy);
    }
    Ok(Compaction {
        weighted: (low_sum / total_sum).clamp(0.0, 1.0),
        unweighted: (frac_sum / counted as f64).clamp(0.0, 1.0),
        blocks: blocks.len(),
    })
}
