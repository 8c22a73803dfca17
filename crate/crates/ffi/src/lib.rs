//! C ABI over `pdct`.
//!
//! Transforms and codecs are exposed as opaque heap handles created by
//! `*_new` and released by `*_free`. Every fallible call returns a
//! [`PdctStatus`]; on failure a message is available from
//! [`pdct_last_error`] on the same thread. Blocks are 64 doubles in
//! row-major order.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use pdct::codec::{Codec, CodecConfig};
use pdct::imageio::GrayImage;
use pdct::kernels::{self, OpCount, TransformSpec};
use pdct::opbench::{self, Dim};
use pdct::zonal2d::{self, Block8, CoeffBlock};
use pdct::Error;

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PdctStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    UnknownTransform = 3,
    ShapeMismatch = 4,
    BufferTooSmall = 5,
    UnsupportedDepth = 6,
    EmptyImage = 7,
    ZeroEnergy = 8,
    Internal = 9,
}

/// Arithmetic operations performed by one transform call.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PdctOpCount {
    pub mult: u64,
    pub add: u64,
    pub shift: u64,
}

impl From<OpCount> for PdctOpCount {
    fn from(c: OpCount) -> Self {
        PdctOpCount { mult: c.mult, add: c.add, shift: c.shift }
    }
}

/// Image metrics. `psnr_db` is +infinity for a lossless result and
/// `energy_compaction` is NaN for an image with no energy.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PdctMetrics {
    pub psnr_db: f64,
    pub nz_pct: f64,
    pub energy_compaction: f64,
}

/// Opaque transform handle.
pub struct PdctTransform {
    spec: TransformSpec,
}

/// Opaque codec handle.
pub struct PdctCodec {
    codec: Codec,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn fail(status: PdctStatus, msg: impl Into<String>) -> PdctStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> PdctStatus {
    let status = match &e {
        Error::UnknownTransform(_) => PdctStatus::UnknownTransform,
        Error::ShapeMismatch { .. } => PdctStatus::ShapeMismatch,
        Error::UnsupportedDepth(_) => PdctStatus::UnsupportedDepth,
        Error::EmptyImage => PdctStatus::EmptyImage,
        Error::ZeroEnergy => PdctStatus::ZeroEnergy,
        _ => PdctStatus::InvalidArgument,
    };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> PdctStatus) -> PdctStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(PdctStatus::Internal, "internal panic"),
    }
}

unsafe fn name_arg<'a>(name: *const c_char) -> Result<&'a str, PdctStatus> {
    if name.is_null() {
        return Err(fail(PdctStatus::NullPointer, "name is NULL"));
    }
    CStr::from_ptr(name)
        .to_str()
        .map_err(|_| fail(PdctStatus::InvalidArgument, "name is not UTF-8"))
}

unsafe fn read_block(p: *const f64) -> Block8 {
    let s = slice::from_raw_parts(p, 64);
    std::array::from_fn(|i| std::array::from_fn(|j| s[i * 8 + j]))
}

/// Message for the last failed call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn pdct_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn pdct_status_str(status: PdctStatus) -> *const c_char {
    let s: &'static CStr = match status {
        PdctStatus::Ok => c"ok",
        PdctStatus::NullPointer => c"null pointer",
        PdctStatus::InvalidArgument => c"invalid argument",
        PdctStatus::UnknownTransform => c"unknown transform",
        PdctStatus::ShapeMismatch => c"shape mismatch",
        PdctStatus::BufferTooSmall => c"buffer too small",
        PdctStatus::UnsupportedDepth => c"unsupported bit depth",
        PdctStatus::EmptyImage => c"empty image",
        PdctStatus::ZeroEnergy => c"zero energy",
        PdctStatus::Internal => c"internal error",
    };
    s.as_ptr()
}

/// Creates a transform by registry name (`exact-dct`, `sdct`, `rdct`,
/// `modified-rdct`, `pruned`). With `pruned` only the four lowest
/// frequencies are computed.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pdct_transform_new(
    name: *const c_char,
    pruned: bool,
    out: *mut *mut PdctTransform,
) -> PdctStatus {
    guard(|| {
        if out.is_null() {
            return fail(PdctStatus::NullPointer, "out is NULL");
        }
        let name = match name_arg(name) {
            Ok(n) => n,
            Err(s) => return s,
        };
        match kernels::lookup(name) {
            Ok(spec) => {
                let spec = if pruned { spec.pruned() } else { spec };
                *out = Box::into_raw(Box::new(PdctTransform { spec }));
                PdctStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Releases a transform. NULL is ignored.
///
/// # Safety
/// `t` must come from [`pdct_transform_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn pdct_transform_free(t: *mut PdctTransform) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Output coefficients per dimension: 4 or 8. Returns 0 for NULL.
///
/// # Safety
/// `t` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pdct_transform_rows(t: *const PdctTransform) -> usize {
    t.as_ref().map_or(0, |t| t.spec.rows())
}

/// Scaling diagonal; writes `rows` values.
///
/// # Safety
/// `out` must have room for `out_len` doubles.
#[no_mangle]
pub unsafe extern "C" fn pdct_transform_scaling(t: *const PdctTransform, out: *mut f64, out_len: usize) -> PdctStatus {
    guard(|| {
        let (Some(t), false) = (t.as_ref(), out.is_null()) else {
            return fail(PdctStatus::NullPointer, "NULL argument");
        };
        let d = t.spec.scaling();
        if out_len < d.len() {
            return fail(PdctStatus::BufferTooSmall, format!("need {} doubles", d.len()));
        }
        slice::from_raw_parts_mut(out, d.len()).copy_from_slice(d);
        PdctStatus::Ok
    })
}

/// Unscaled 1-D forward transform of 8 samples into `rows` outputs.
/// `ops` may be NULL.
///
/// # Safety
/// `input` must point to 8 doubles, `out` to `out_len` doubles.
#[no_mangle]
pub unsafe extern "C" fn pdct_forward_1d(
    t: *const PdctTransform,
    input: *const f64,
    out: *mut f64,
    out_len: usize,
    ops: *mut PdctOpCount,
) -> PdctStatus {
    guard(|| {
        let Some(t) = t.as_ref() else {
            return fail(PdctStatus::NullPointer, "transform is NULL");
        };
        if input.is_null() || out.is_null() {
            return fail(PdctStatus::NullPointer, "NULL buffer");
        }
        if out_len < t.spec.rows() {
            return fail(PdctStatus::BufferTooSmall, format!("need {} doubles", t.spec.rows()));
        }
        let x: [f64; 8] = slice::from_raw_parts(input, 8).try_into().expect("8 samples");
        let (y, c) = t.spec.forward(x);
        slice::from_raw_parts_mut(out, y.len()).copy_from_slice(&y);
        if let Some(ops) = ops.as_mut() {
            *ops = c.into();
        }
        PdctStatus::Ok
    })
}

/// 2-D forward transform of a 64-sample block into `rows × rows`
/// row-major coefficients. `ops` may be NULL.
///
/// # Safety
/// `input` must point to 64 doubles, `out` to `out_len` doubles.
#[no_mangle]
pub unsafe extern "C" fn pdct_forward_2d(
    t: *const PdctTransform,
    input: *const f64,
    scaled: bool,
    out: *mut f64,
    out_len: usize,
    ops: *mut PdctOpCount,
) -> PdctStatus {
    guard(|| {
        let Some(t) = t.as_ref() else {
            return fail(PdctStatus::NullPointer, "transform is NULL");
        };
        if input.is_null() || out.is_null() {
            return fail(PdctStatus::NullPointer, "NULL buffer");
        }
        let n = t.spec.rows();
        if out_len < n * n {
            return fail(PdctStatus::BufferTooSmall, format!("need {} doubles", n * n));
        }
        let (b, c) = zonal2d::forward_2d(&t.spec, &read_block(input), scaled);
        let dst = slice::from_raw_parts_mut(out, n * n);
        for i in 0..n {
            for j in 0..n {
                dst[i * n + j] = b.get(i, j);
            }
        }
        if let Some(ops) = ops.as_mut() {
            *ops = c.into();
        }
        PdctStatus::Ok
    })
}

/// Inverse 2-D transform of `rows × rows` coefficients into 64 samples.
/// `in_len` must equal `rows * rows`.
///
/// # Safety
/// `input` must point to `in_len` doubles, `out` to 64 doubles.
#[no_mangle]
pub unsafe extern "C" fn pdct_inverse_2d(
    t: *const PdctTransform,
    input: *const f64,
    in_len: usize,
    scaled: bool,
    out: *mut f64,
) -> PdctStatus {
    guard(|| {
        let Some(t) = t.as_ref() else {
            return fail(PdctStatus::NullPointer, "transform is NULL");
        };
        if input.is_null() || out.is_null() {
            return fail(PdctStatus::NullPointer, "NULL buffer");
        }
        let src = slice::from_raw_parts(input, in_len);
        let block = match in_len {
            64 => CoeffBlock::Full(std::array::from_fn(|i| std::array::from_fn(|j| src[i * 8 + j]))),
            16 => CoeffBlock::Pruned(std::array::from_fn(|i| std::array::from_fn(|j| src[i * 4 + j]))),
            _ => return fail(PdctStatus::ShapeMismatch, format!("{in_len} coefficients is not 16 or 64")),
        };
        match zonal2d::inverse_2d(&t.spec, &block, scaled) {
            Ok(a) => {
                slice::from_raw_parts_mut(out, 64).copy_from_slice(a.as_flattened());
                PdctStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Energy fraction of a block kept by the 4×4 low-frequency corner of the
/// scaled 2-D modified RDCT.
///
/// # Safety
/// `input` must point to 64 doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pdct_energy_compaction(input: *const f64, out: *mut f64) -> PdctStatus {
    guard(|| {
        if input.is_null() || out.is_null() {
            return fail(PdctStatus::NullPointer, "NULL buffer");
        }
        match zonal2d::energy_compaction(&read_block(input)) {
            Ok(v) => {
                *out = v;
                PdctStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Instrumented operation count of a registered transform (or
/// `dct-definition`) in 1-D or 2-D.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pdct_measure(
    name: *const c_char,
    two_d: bool,
    pruned: bool,
    out: *mut PdctOpCount,
) -> PdctStatus {
    guard(|| {
        if out.is_null() {
            return fail(PdctStatus::NullPointer, "out is NULL");
        }
        let name = match name_arg(name) {
            Ok(n) => n,
            Err(s) => return s,
        };
        let dim = if two_d { Dim::Two } else { Dim::One };
        match opbench::measure(name, dim, pruned) {
            Ok(row) => {
                *out = row.count.into();
                PdctStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Creates a codec with the JPEG luminance table.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pdct_codec_new(
    name: *const c_char,
    pruned: bool,
    level_shift: bool,
    out: *mut *mut PdctCodec,
) -> PdctStatus {
    guard(|| {
        if out.is_null() {
            return fail(PdctStatus::NullPointer, "out is NULL");
        }
        let name = match name_arg(name) {
            Ok(n) => n,
            Err(s) => return s,
        };
        match CodecConfig::new(name, pruned) {
            Ok(cfg) => {
                let codec = Codec::new(cfg.with_level_shift(level_shift));
                *out = Box::into_raw(Box::new(PdctCodec { codec }));
                PdctStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Releases a codec. NULL is ignored.
///
/// # Safety
/// `c` must come from [`pdct_codec_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn pdct_codec_free(c: *mut PdctCodec) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Compresses one block of pixel values. Either output may be NULL.
///
/// # Safety
/// `input` must point to 64 doubles; non-NULL outputs to 64 elements.
#[no_mangle]
pub unsafe extern "C" fn pdct_codec_compress_block(
    c: *const PdctCodec,
    input: *const f64,
    quantized: *mut i32,
    reconstructed: *mut f64,
) -> PdctStatus {
    guard(|| {
        let Some(c) = c.as_ref() else {
            return fail(PdctStatus::NullPointer, "codec is NULL");
        };
        if input.is_null() {
            return fail(PdctStatus::NullPointer, "input is NULL");
        }
        let r = c.codec.compress_block(&read_block(input));
        if !quantized.is_null() {
            slice::from_raw_parts_mut(quantized, 64).copy_from_slice(r.quantized.as_flattened());
        }
        if !reconstructed.is_null() {
            slice::from_raw_parts_mut(reconstructed, 64).copy_from_slice(r.reconstructed.as_flattened());
        }
        PdctStatus::Ok
    })
}

/// Compresses an 8-bit grayscale image (row-major, `width * height`
/// bytes). `out_pixels` (may be NULL) receives the reconstruction.
///
/// # Safety
/// `pixels` must point to `width * height` bytes, `out_pixels` likewise
/// when non-NULL; `metrics` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pdct_codec_compress_image(
    c: *const PdctCodec,
    width: usize,
    height: usize,
    pixels: *const u8,
    out_pixels: *mut u8,
    metrics: *mut PdctMetrics,
) -> PdctStatus {
    guard(|| {
        let Some(c) = c.as_ref() else {
            return fail(PdctStatus::NullPointer, "codec is NULL");
        };
        if pixels.is_null() || metrics.is_null() {
            return fail(PdctStatus::NullPointer, "NULL buffer");
        }
        if width == 0 || height == 0 {
            return from_error(Error::EmptyImage);
        }
        let Some(len) = width.checked_mul(height) else {
            return fail(PdctStatus::InvalidArgument, "image too large");
        };
        let img = match GrayImage::new(width, height, slice::from_raw_parts(pixels, len).to_vec()) {
            Ok(img) => img,
            Err(e) => return from_error(e),
        };
        match c.codec.compress_image(&img) {
            Ok((rec, m)) => {
                if !out_pixels.is_null() {
                    slice::from_raw_parts_mut(out_pixels, len).copy_from_slice(rec.samples());
                }
                *metrics = PdctMetrics {
                    psnr_db: m.psnr_db,
                    nz_pct: m.nz_pct,
                    energy_compaction: m.energy_compaction.unwrap_or(f64::NAN),
                };
                PdctStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}
