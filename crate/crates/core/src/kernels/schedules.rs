//! Fast forward schedules.
//!
//! Each schedule returns its outputs together with the operation count it
//! declares. The declared counts are checked against an instrumented run in
//! the tests below and in [`crate::opbench`].

use std::f64::consts::PI;

use super::ops::{Field, OpCount, Ring};

/// Cost of [`fast_forward_pruned`].
pub const PRUNED_COST: OpCount = OpCount::adds(10);
/// Cost of [`fast_forward_modified_rdct`].
pub const MODIFIED_RDCT_COST: OpCount = OpCount::adds(14);
/// Cost of [`fast_forward_exact`].
pub const EXACT_DCT_COST: OpCount = OpCount::new(16, 26, 0);

/// Four lowest-frequency outputs of the modified RDCT in 10 additions.
///
/// Outputs are unscaled; the diagonal `(1/√8, 1/√2, 1/2, 1/√2)` is left to
/// the caller (normally merged into quantization).
pub fn fast_forward_pruned<T: Ring>(x: [T; 8]) -> ([T; 4], OpCount) {
    let a = x[0] + x[7];
    let b = x[1] + x[6];
    let c = x[2] + x[5];
    let d = x[3] + x[4];
    let e = a + d;
    let y0 = e + b + c;
    let y1 = x[0] - x[7];
    let y2 = a - d;
    let y3 = x[5] - x[2];
    ([y0, y1, y2, y3], PRUNED_COST)
}

/// Full modified RDCT in 14 additions; outputs are unscaled.
pub fn fast_forward_modified_rdct<T: Ring>(x: [T; 8]) -> ([T; 8], OpCount) {
    let a = x[0] + x[7];
    let b = x[1] + x[6];
    let c = x[2] + x[5];
    let d = x[3] + x[4];
    let e = a + d;
    let f = b + c;
    let y = [
        e + f,
        x[0] - x[7],
        a - d,
        x[5] - x[2],
        e - f,
        x[6] - x[1],
        c - b,
        x[4] - x[3],
    ];
    (y, MODIFIED_RDCT_COST)
}

// cos(kπ/16) / 2, with the orthonormal DCT normalization folded in.
fn half_cos(k: u32) -> f64 {
    (k as f64 * PI / 16.0).cos() / 2.0
}

/// Orthonormal 8-point DCT-II with 16 multiplications and 26 additions.
///
/// Chen-style factorization: an input butterfly, a 4-point even half with
/// one plane rotation, and an odd half built from a `cos(π/4)` butterfly
/// followed by two plane rotations. All normalization constants are folded
/// into the rotation multipliers.
pub fn fast_forward_exact<T: Field>(x: [T; 8]) -> ([T; 8], OpCount) {
    let c4 = (PI / 4.0).cos();

    let s0 = x[0] + x[7];
    let s1 = x[1] + x[6];
    let s2 = x[2] + x[5];
    let s3 = x[3] + x[4];
    let d0 = x[0] - x[7];
    let d1 = x[1] - x[6];
    let d2 = x[2] - x[5];
    let d3 = x[3] - x[4];

    // even half
    let t0 = s0 + s3;
    let t1 = s1 + s2;
    let t2 = s1 - s2;
    let t3 = s0 - s3;
    let y0 = (t0 + t1).scale(half_cos(4));
    let y4 = (t0 - t1).scale(half_cos(4));
    let y2 = t3.scale(half_cos(2)) + t2.scale(half_cos(6));
    let y6 = t3.scale(half_cos(6)) - t2.scale(half_cos(2));

    // odd half
    let p = (d2 - d1).scale(c4);
    let q = (d2 + d1).scale(c4);
    let b4 = d3 - p;
    let b5 = d3 + p;
    let b6 = d0 - q;
    let b7 = d0 + q;
    let y1 = b7.scale(half_cos(1)) + b4.scale(half_cos(7));
    let y7 = b7.scale(half_cos(7)) - b4.scale(half_cos(1));
    let y5 = b6.scale(half_cos(5)) + b5.scale(half_cos(3));
    let y3 = b6.scale(half_cos(3)) - b5.scale(half_cos(5));

    ([y0, y1, y2, y3, y4, y5, y6, y7], EXACT_DCT_COST)
}
