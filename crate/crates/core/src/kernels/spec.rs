use std::f64::consts::PI;
use std::fmt;

use nalgebra::DMatrix;

use super::ops::{Field, OpCount, Ring};
use super::schedules::{fast_forward_exact, fast_forward_modified_rdct, fast_forward_pruned};
use crate::error::{Error, Result};

/// Transform families known to the registry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    ExactDct,
    Sdct,
    Rdct,
    ModifiedRdct,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::ExactDct, Family::Sdct, Family::Rdct, Family::ModifiedRdct];

    pub fn name(self) -> &'static str {
        match self {
            Family::ExactDct => "exact-dct",
            Family::Sdct => "sdct",
            Family::Rdct => "rdct",
            Family::ModifiedRdct => "modified-rdct",
        }
    }

    pub fn from_name(name: &str) -> Result<Family> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == name)
            .ok_or_else(|| Error::UnknownTransform(name.to_string()))
    }

    /// Full 8-row spec for this family.
    pub fn build(self) -> TransformSpec {
        match self {
            Family::ExactDct => build_exact_dct(),
            Family::Sdct => build_sdct(),
            Family::Rdct => build_rdct(),
            Family::ModifiedRdct => build_modified_rdct(),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How a transform-domain block is mapped back to samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InverseKind {
    /// `D·T` has orthonormal rows; its transpose is the inverse.
    TransposeOrthonormal,
    /// Rows are not mutually orthogonal; a numerical pseudo-inverse is used.
    PseudoInverse,
}

/// Fast forward schedules available for a spec.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Schedule {
    Pruned,
    ModifiedRdct,
    Exact,
}

/// Matrix entries, kept exact wherever the transform is integer.
#[derive(Debug, Clone, PartialEq)]
pub enum Entries {
    Integer(Vec<[i32; 8]>),
    Real(Vec<[f64; 8]>),
}

/// A named transform: matrix `T`, scaling diagonal `D`, optional fast
/// schedule and inverse strategy.
#[derive(Debug, Clone)]
pub struct TransformSpec {
    family: Family,
    matrix: Entries,
    scaling: Vec<f64>,
    // Squared row norms of integer matrices; lets the pairwise scale
    // d_i·d_j be computed with a single correctly rounded square root.
    row_norms: Option<Vec<u64>>,
    schedule: Option<Schedule>,
    inverse_kind: InverseKind,
    analysis: Vec<[f64; 8]>,
    synthesis: Vec<[f64; 8]>,
}

impl TransformSpec {
    fn from_integer(
        family: Family,
        rows: Vec<[i32; 8]>,
        schedule: Option<Schedule>,
        inverse_kind: InverseKind,
    ) -> Self {
        let row_norms: Vec<u64> = rows
            .iter()
            .map(|r| r.iter().map(|&v| (v as i64 * v as i64) as u64).sum())
            .collect();
        assert!(row_norms.iter().all(|&n| n > 0), "transform rows must be nonzero");
        let scaling = row_norms.iter().map(|&n| 1.0 / (n as f64).sqrt()).collect();
        Self::finish(
            family,
            Entries::Integer(rows),
            scaling,
            Some(row_norms),
            schedule,
            inverse_kind,
        )
    }

    fn finish(
        family: Family,
        matrix: Entries,
        scaling: Vec<f64>,
        row_norms: Option<Vec<u64>>,
        schedule: Option<Schedule>,
        inverse_kind: InverseKind,
    ) -> Self {
        let rows = match &matrix {
            Entries::Integer(m) => m.len(),
            Entries::Real(m) => m.len(),
        };
        assert!(rows == 4 || rows == 8, "transforms have 4 or 8 rows");
        let analysis: Vec<[f64; 8]> = (0..rows)
            .map(|i| {
                let mut r = [0.0; 8];
                for (j, v) in r.iter_mut().enumerate() {
                    *v = scaling[i] * entry(&matrix, i, j);
                }
                r
            })
            .collect();
        let synthesis = match inverse_kind {
            InverseKind::TransposeOrthonormal => analysis.clone(),
            InverseKind::PseudoInverse => pseudo_inverse_rows(&analysis),
        };
        TransformSpec { family, matrix, scaling, row_norms, schedule, inverse_kind, analysis, synthesis }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Registry name of the transform family.
    pub fn name(&self) -> &'static str {
        self.family.name()
    }

    /// Number of output coefficients (4 when pruned, 8 otherwise).
    pub fn rows(&self) -> usize {
        self.analysis.len()
    }

    pub fn is_pruned(&self) -> bool {
        self.rows() == 4
    }

    pub fn matrix(&self) -> &Entries {
        &self.matrix
    }

    /// Matrix entry `(i, j)` as a real number.
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        entry(&self.matrix, i, j)
    }

    pub fn scaling(&self) -> &[f64] {
        &self.scaling
    }

    pub fn schedule(&self) -> Option<Schedule> {
        self.schedule
    }

    pub fn has_fast_schedule(&self) -> bool {
        self.schedule.is_some()
    }

    pub fn inverse_kind(&self) -> InverseKind {
        self.inverse_kind
    }

    pub fn is_integer(&self) -> bool {
        matches!(self.matrix, Entries::Integer(_))
    }

    /// Rows of the scaled matrix `D·T`.
    pub fn analysis(&self) -> &[[f64; 8]] {
        &self.analysis
    }

    /// Rows `S` such that a coefficient block `B` maps back to `Sᵀ·B·S`.
    pub fn synthesis(&self) -> &[[f64; 8]] {
        &self.synthesis
    }

    /// `d_i · d_j`, exact whenever the product is rational.
    pub fn pair_scale(&self, i: usize, j: usize) -> f64 {
        match &self.row_norms {
            Some(n) => 1.0 / ((n[i] * n[j]) as f64).sqrt(),
            None => self.scaling[i] * self.scaling[j],
        }
    }

    /// The first four rows of this transform. For the modified RDCT this is
    /// the 10-addition pruned transform.
    pub fn pruned(&self) -> TransformSpec {
        if self.is_pruned() {
            return self.clone();
        }
        if self.family == Family::ModifiedRdct {
            return build_pruned_t();
        }
        let matrix = match &self.matrix {
            Entries::Integer(m) => Entries::Integer(m[..4].to_vec()),
            Entries::Real(m) => Entries::Real(m[..4].to_vec()),
        };
        let row_norms = self.row_norms.as_ref().map(|n| n[..4].to_vec());
        Self::finish(
            self.family,
            matrix,
            self.scaling[..4].to_vec(),
            row_norms,
            None,
            self.inverse_kind,
        )
    }

    /// Unscaled `T·x` on exact integer-like samples. `None` for transforms
    /// with irrational entries.
    pub fn forward_ring<T: Ring>(&self, x: [T; 8]) -> Option<(Vec<T>, OpCount)> {
        match self.schedule {
            Some(Schedule::Pruned) => {
                let (y, c) = fast_forward_pruned(x);
                Some((y.to_vec(), c))
            }
            Some(Schedule::ModifiedRdct) => {
                let (y, c) = fast_forward_modified_rdct(x);
                Some((y.to_vec(), c))
            }
            _ => self.direct_ring(x),
        }
    }

    /// Unscaled `T·x`, through the fast schedule when one exists.
    pub fn forward<T: Field>(&self, x: [T; 8]) -> (Vec<T>, OpCount) {
        if let Some(Schedule::Exact) = self.schedule {
            let (y, c) = fast_forward_exact(x);
            return (y.to_vec(), c);
        }
        match self.forward_ring(x) {
            Some(r) => r,
            None => self.direct_field(x),
        }
    }

    /// Direct-form `T·x` for integer matrices: zeros are skipped, ±1 entries
    /// become additions or subtractions.
    pub fn direct_ring<T: Ring>(&self, x: [T; 8]) -> Option<(Vec<T>, OpCount)> {
        let Entries::Integer(m) = &self.matrix else {
            return None;
        };
        let mut count = OpCount::ZERO;
        let mut out = Vec::with_capacity(m.len());
        for row in m {
            let mut acc: Option<T> = None;
            for (&w, &v) in row.iter().zip(x.iter()) {
                let term = match w {
                    0 => continue,
                    1 => v,
                    -1 => -v,
                    _ => unreachable!("integer transforms are multiplierless"),
                };
                acc = Some(match acc {
                    None => term,
                    Some(a) if w > 0 => {
                        count.add += 1;
                        a + v
                    }
                    Some(a) => {
                        count.add += 1;
                        a - v
                    }
                });
            }
            out.push(acc.expect("transform rows are nonzero"));
        }
        Some((out, count))
    }

    /// Direct-form `T·x` with every entry treated as a general multiplier.
    pub fn direct_field<T: Field>(&self, x: [T; 8]) -> (Vec<T>, OpCount) {
        if let Some(r) = self.direct_ring(x) {
            return r;
        }
        let mut count = OpCount::ZERO;
        let out = (0..self.rows())
            .map(|i| {
                let mut acc = x[0].scale(self.entry(i, 0));
                count.mult += 1;
                for (j, &v) in x.iter().enumerate().skip(1) {
                    acc = acc + v.scale(self.entry(i, j));
                    count.mult += 1;
                    count.add += 1;
                }
                acc
            })
            .collect();
        (out, count)
    }
}

fn entry(m: &Entries, i: usize, j: usize) -> f64 {
    match m {
        Entries::Integer(m) => m[i][j] as f64,
        Entries::Real(m) => m[i][j],
    }
}

fn pseudo_inverse_rows(analysis: &[[f64; 8]]) -> Vec<[f64; 8]> {
    let a = DMatrix::from_fn(analysis.len(), 8, |i, j| analysis[i][j]);
    let p = a.pseudo_inverse(1e-12).expect("SVD of a small dense matrix");
    // p is 8×rows; store its transpose so synthesis is Sᵀ·B·S like the
    // orthonormal case.
    (0..analysis.len())
        .map(|i| {
            let mut r = [0.0; 8];
            for (j, v) in r.iter_mut().enumerate() {
                *v = p[(j, i)];
            }
            r
        })
        .collect()
}

/// Orthonormal DCT-II matrix entry.
fn dct_entry(k: usize, n: usize) -> f64 {
    let ck = if k == 0 { (1.0f64 / 8.0).sqrt() } else { 0.5 };
    ck * ((2 * n + 1) as f64 * k as f64 * PI / 16.0).cos()
}

const PRUNED_T: [[i32; 8]; 4] = [
    [1, 1, 1, 1, 1, 1, 1, 1],
    [1, 0, 0, 0, 0, 0, 0, -1],
    [1, 0, 0, -1, -1, 0, 0, 1],
    [0, 0, -1, 0, 0, 1, 0, 0],
];

const MODIFIED_RDCT_TAIL: [[i32; 8]; 4] = [
    [1, -1, -1, 1, 1, -1, -1, 1],
    [0, -1, 0, 0, 0, 0, 1, 0],
    [0, -1, 1, 0, 0, 1, -1, 0],
    [0, 0, 0, -1, 1, 0, 0, 0],
];

/// The 4×8 pruned modified RDCT with scaling `(1/√8, 1/√2, 1/2, 1/√2)`.
pub fn build_pruned_t() -> TransformSpec {
    TransformSpec::from_integer(
        Family::ModifiedRdct,
        PRUNED_T.to_vec(),
        Some(Schedule::Pruned),
        InverseKind::TransposeOrthonormal,
    )
}

/// The full 8×8 modified RDCT; its first four rows are [`build_pruned_t`].
pub fn build_modified_rdct() -> TransformSpec {
    let rows = PRUNED_T.iter().chain(MODIFIED_RDCT_TAIL.iter()).copied().collect();
    TransformSpec::from_integer(
        Family::ModifiedRdct,
        rows,
        Some(Schedule::ModifiedRdct),
        InverseKind::TransposeOrthonormal,
    )
}

/// Orthonormal 8-point DCT-II, evaluated by the 16-mult/26-add schedule.
pub fn build_exact_dct() -> TransformSpec {
    let rows = (0..8)
        .map(|k| {
            let mut r = [0.0; 8];
            for (n, v) in r.iter_mut().enumerate() {
                *v = dct_entry(k, n);
            }
            r
        })
        .collect();
    TransformSpec::finish(
        Family::ExactDct,
        Entries::Real(rows),
        vec![1.0; 8],
        None,
        Some(Schedule::Exact),
        InverseKind::TransposeOrthonormal,
    )
}

/// Signed DCT: elementwise sign of the DCT matrix. Rows are scaled to unit
/// norm but are not mutually orthogonal, so reconstruction goes through a
/// pseudo-inverse.
pub fn build_sdct() -> TransformSpec {
    let rows = (0..8)
        .map(|k| {
            let mut r = [0; 8];
            for (n, v) in r.iter_mut().enumerate() {
                let c = dct_entry(k, n);
                *v = if c > 0.0 { 1 } else if c < 0.0 { -1 } else { 0 };
            }
            r
        })
        .collect();
    TransformSpec::from_integer(Family::Sdct, rows, None, InverseKind::PseudoInverse)
}

/// Rounded DCT: elementwise `round(2·C)`.
pub fn build_rdct() -> TransformSpec {
    let rows = (0..8)
        .map(|k| {
            let mut r = [0; 8];
            for (n, v) in r.iter_mut().enumerate() {
                *v = (2.0 * dct_entry(k, n)).round() as i32;
            }
            r
        })
        .collect();
    TransformSpec::from_integer(Family::Rdct, rows, None, InverseKind::TransposeOrthonormal)
}

/// Looks up a transform by registry name. `pruned` resolves to the 4×8
/// pruned modified RDCT.
pub fn lookup(name: &str) -> Result<TransformSpec> {
    if name == "pruned" {
        return Ok(build_pruned_t());
    }
    Family::from_name(name).map(Family::build)
}

/// Every name [`lookup`] accepts.
pub const REGISTRY_NAMES: [&str; 5] = ["exact-dct", "sdct", "rdct", "modified-rdct", "pruned"];

/// Plain matrix-vector product `T·x` (no scaling).
pub fn direct_apply(spec: &TransformSpec, x: &[f64; 8]) -> Vec<f64> {
    (0..spec.rows())
        .map(|i| (0..8).map(|j| spec.entry(i, j) * x[j]).sum())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gram(rows: &[[f64; 8]]) -> Vec<Vec<f64>> {
        rows.iter()
            .map(|a| rows.iter().map(|b| a.iter().zip(b).map(|(x, y)| x * y).sum()).collect())
            .collect()
    }

    fn max_identity_error(rows: &[[f64; 8]]) -> f64 {
        let g = gram(rows);
        let mut worst: f64 = 0.0;
        for (i, r) in g.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((v - want).abs());
            }
        }
        worst
    }

    fn int_rows(spec: &TransformSpec) -> Vec<[i32; 8]> {
        match spec.matrix() {
            Entries::Integer(m) => m.clone(),
            Entries::Real(_) => panic!("expected integer matrix"),
        }
    }

    #[test]
    fn pruned_t_matches_published_matrix() {
        let t = build_pruned_t();
        assert_eq!(int_rows(&t), PRUNED_T.to_vec());
        assert_eq!(int_rows(&t)[0], [1; 8]);
        let s = t.scaling();
        let want = [1.0 / 8f64.sqrt(), 1.0 / 2f64.sqrt(), 0.5, 1.0 / 2f64.sqrt()];
        for (a, b) in s.iter().zip(want) {
            assert!((a - b).abs() < 1e-15);
        }
        assert_eq!(t.inverse_kind(), InverseKind::TransposeOrthonormal);
        assert!(t.is_pruned());
    }

    #[test]
    fn pruned_gram_is_diagonal() {
        let m = int_rows(&build_pruned_t());
        let want = [8, 2, 4, 2];
        for i in 0..4 {
            for j in 0..4 {
                let dot: i32 = (0..8).map(|k| m[i][k] * m[j][k]).sum();
                assert_eq!(dot, if i == j { want[i] } else { 0 });
            }
        }
    }

    #[test]
    fn modified_rdct_extends_pruned() {
        let full = build_modified_rdct();
        let rows = int_rows(&full);
        assert_eq!(&rows[..4], &PRUNED_T[..]);
        assert_eq!(rows[4], [1, -1, -1, 1, 1, -1, -1, 1]);
        for r in &rows {
            assert!(r.iter().all(|v| (-1..=1).contains(v)));
        }
        let want = [8.0, 2.0, 4.0, 2.0, 8.0, 2.0, 4.0, 2.0];
        for (d, n) in full.scaling().iter().zip(want) {
            assert!((d - 1.0 / f64::sqrt(n)).abs() < 1e-15);
        }
        assert!(max_identity_error(full.analysis()) < 1e-12);
        assert!(max_identity_error(build_pruned_t().analysis()) < 1e-12);
    }

    #[test]
    fn exact_dct_is_orthonormal() {
        let c = build_exact_dct();
        for j in 0..8 {
            assert!((c.entry(0, j) - 1.0 / 8f64.sqrt()).abs() < 1e-15);
        }
        assert!(max_identity_error(c.analysis()) < 1e-12);
        let y = direct_apply(&c, &[1.0; 8]);
        assert!((y[0] - 8f64.sqrt()).abs() < 1e-12);
        assert!(y[1..].iter().all(|v| v.abs() < 1e-12));
    }

    #[test]
    fn sdct_and_rdct_matrices() {
        let s = int_rows(&build_sdct());
        assert_eq!(s[0], [1; 8]);
        assert_eq!(build_sdct().inverse_kind(), InverseKind::PseudoInverse);

        // frozen from round(2·cos((2n+1)kπ/16)·c_k) evaluated independently
        let rdct_oracle: [[i32; 8]; 8] = [
            [1, 1, 1, 1, 1, 1, 1, 1],
            [1, 1, 1, 0, 0, -1, -1, -1],
            [1, 0, 0, -1, -1, 0, 0, 1],
            [1, 0, -1, -1, 1, 1, 0, -1],
            [1, -1, -1, 1, 1, -1, -1, 1],
            [1, -1, 0, 1, -1, 0, 1, -1],
            [0, -1, 1, 0, 0, 1, -1, 0],
            [0, -1, 1, -1, 1, -1, 1, 0],
        ];
        let r = build_rdct();
        assert_eq!(int_rows(&r), rdct_oracle.to_vec());
        // pairwise row products vanish
        for i in 0..8 {
            for j in 0..8 {
                if i != j {
                    let dot: i32 = (0..8).map(|k| rdct_oracle[i][k] * rdct_oracle[j][k]).sum();
                    assert_eq!(dot, 0, "rows {i},{j}");
                }
            }
        }
        assert!(max_identity_error(r.analysis()) < 1e-12);
    }

    #[test]
    fn sdct_pseudo_inverse_reconstructs() {
        let s = build_sdct();
        // Sᵀ·Ĉ should be the identity when Ĉ is square and invertible.
        for i in 0..8 {
            for j in 0..8 {
                let v: f64 = (0..8).map(|k| s.synthesis()[k][i] * s.analysis()[k][j]).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((v - want).abs() < 1e-9, "({i},{j}) = {v}");
            }
        }
    }

    #[test]
    fn direct_apply_examples() {
        let t = build_pruned_t();
        assert_eq!(direct_apply(&t, &[1.0; 8]), vec![8.0, 0.0, 0.0, 0.0]);
        assert_eq!(direct_apply(&t, &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0]), vec![36.0, -7.0, 0.0, 3.0]);
        for name in REGISTRY_NAMES {
            let spec = lookup(name).unwrap();
            assert!(direct_apply(&spec, &[0.0; 8]).iter().all(|&v| v == 0.0));
        }
    }

    #[test]
    fn direct_form_counts() {
        let x = [0.0; 8];
        assert_eq!(build_pruned_t().direct_ring(x).unwrap().1, OpCount::adds(12));
        assert_eq!(build_exact_dct().direct_field(x).1, OpCount::new(64, 56, 0));
        assert_eq!(build_exact_dct().pruned().direct_field(x).1, OpCount::new(32, 28, 0));
    }

    #[test]
    fn pair_scale_is_exact_for_rational_products() {
        let m = build_modified_rdct();
        assert_eq!(m.pair_scale(0, 0), 0.125);
        assert_eq!(m.pair_scale(1, 1), 0.5);
        assert_eq!(m.pair_scale(0, 1), 0.25);
        assert_eq!(m.pair_scale(2, 2), 0.25);
    }

    #[test]
    fn unknown_name_is_rejected() {
        assert!(matches!(lookup("bas-2008"), Err(Error::UnknownTransform(_))));
        assert_eq!(lookup("pruned").unwrap().rows(), 4);
        assert_eq!(lookup("modified-rdct").unwrap().pruned().schedule(), Some(Schedule::Pruned));
    }
}
