use std::ffi::CStr;
use std::ptr;

use pdct_ffi::*;

fn transform(name: &CStr, pruned: bool) -> *mut PdctTransform {
    let mut t = ptr::null_mut();
    assert_eq!(unsafe { pdct_transform_new(name.as_ptr(), pruned, &mut t) }, PdctStatus::Ok);
    assert!(!t.is_null());
    t
}

fn last_error() -> String {
    let p = pdct_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn pruned_forward_matches_reference_vector() {
    let t = transform(c"pruned", false);
    let x = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0];
    let mut y = [0.0; 4];
    let mut ops = PdctOpCount::default();
    unsafe {
        assert_eq!(pdct_transform_rows(t), 4);
        assert_eq!(pdct_forward_1d(t, x.as_ptr(), y.as_mut_ptr(), y.len(), &mut ops), PdctStatus::Ok);
        pdct_transform_free(t);
    }
    assert_eq!(y, [36.0, -7.0, 0.0, 3.0]);
    assert_eq!(ops, PdctOpCount { mult: 0, add: 10, shift: 0 });
}

#[test]
fn forward_then_inverse_is_identity() {
    let t = transform(c"exact-dct", false);
    let a: Vec<f64> = (0..64).map(|i| ((i * 37) % 255) as f64).collect();
    let mut b = [0.0; 64];
    let mut back = [0.0; 64];
    unsafe {
        assert_eq!(pdct_forward_2d(t, a.as_ptr(), true, b.as_mut_ptr(), 64, ptr::null_mut()), PdctStatus::Ok);
        assert_eq!(pdct_inverse_2d(t, b.as_ptr(), 64, true, back.as_mut_ptr()), PdctStatus::Ok);
        pdct_transform_free(t);
    }
    for (x, y) in a.iter().zip(&back) {
        assert!((x - y).abs() < 1e-9);
    }
}

#[test]
fn pruned_2d_yields_sixteen_coefficients() {
    let t = transform(c"modified-rdct", true);
    let a = [10.0; 64];
    let mut b = [0.0; 16];
    let mut ops = PdctOpCount::default();
    let mut back = [0.0; 64];
    unsafe {
        assert_eq!(pdct_forward_2d(t, a.as_ptr(), true, b.as_mut_ptr(), 16, &mut ops), PdctStatus::Ok);
        assert_eq!(pdct_inverse_2d(t, b.as_ptr(), 16, true, back.as_mut_ptr()), PdctStatus::Ok);
        assert_eq!(pdct_inverse_2d(t, b.as_ptr(), 15, true, back.as_mut_ptr()), PdctStatus::ShapeMismatch);
        pdct_transform_free(t);
    }
    assert!((b[0] - 80.0).abs() < 1e-9);
    assert!(b[1..].iter().all(|v| v.abs() < 1e-9));
    assert_eq!(ops.add, 120);
    assert!(back.iter().all(|v| (v - 10.0).abs() < 1e-9));
}

#[test]
fn errors_are_reported() {
    let mut t = ptr::null_mut();
    unsafe {
        assert_eq!(pdct_transform_new(c"nope".as_ptr(), false, &mut t), PdctStatus::UnknownTransform);
        assert!(t.is_null());
        assert!(last_error().contains("nope"));
        assert_eq!(pdct_transform_new(ptr::null(), false, &mut t), PdctStatus::NullPointer);
        assert_eq!(pdct_transform_rows(ptr::null()), 0);
        pdct_transform_free(ptr::null_mut());
        pdct_codec_free(ptr::null_mut());
    }
    let t = transform(c"sdct", false);
    let x = [0.0; 8];
    let mut y = [0.0; 4];
    unsafe {
        assert_eq!(pdct_forward_1d(t, x.as_ptr(), y.as_mut_ptr(), 4, ptr::null_mut()), PdctStatus::BufferTooSmall);
        pdct_transform_free(t);
    }
    let zero = [0.0; 64];
    let mut e = 0.0;
    assert_eq!(unsafe { pdct_energy_compaction(zero.as_ptr(), &mut e) }, PdctStatus::ZeroEnergy);
    let s = unsafe { CStr::from_ptr(pdct_status_str(PdctStatus::ShapeMismatch)) };
    assert_eq!(s.to_str().unwrap(), "shape mismatch");
}

#[test]
fn measure_reports_instrumented_counts() {
    let mut c = PdctOpCount::default();
    unsafe {
        assert_eq!(pdct_measure(c"pruned".as_ptr(), true, false, &mut c), PdctStatus::Ok);
        assert_eq!(c.add, 120);
        assert_eq!(pdct_measure(c"exact-dct".as_ptr(), false, false, &mut c), PdctStatus::Ok);
        assert_eq!((c.mult, c.add), (16, 26));
    }
}

#[test]
fn codec_compresses_images() {
    let mut c = ptr::null_mut();
    unsafe {
        assert_eq!(pdct_codec_new(c"modified-rdct".as_ptr(), true, true, &mut c), PdctStatus::Ok);
    }
    let (w, h) = (20usize, 12usize);
    let px: Vec<u8> = (0..w * h).map(|i| ((i % w) * 10 + (i / w) * 3) as u8).collect();
    let mut out = vec![0u8; w * h];
    let mut m = PdctMetrics::default();
    let block = [128.0; 64];
    let mut q = [7i32; 64];
    let mut rec = [0.0; 64];
    unsafe {
        assert_eq!(pdct_codec_compress_image(c, w, h, px.as_ptr(), out.as_mut_ptr(), &mut m), PdctStatus::Ok);
        assert_eq!(pdct_codec_compress_block(c, block.as_ptr(), q.as_mut_ptr(), rec.as_mut_ptr()), PdctStatus::Ok);
        assert_eq!(pdct_codec_compress_image(c, 0, h, px.as_ptr(), out.as_mut_ptr(), &mut m), PdctStatus::EmptyImage);
        pdct_codec_free(c);
    }
    assert!(m.psnr_db > 20.0);
    assert!(m.nz_pct >= 75.0 && m.nz_pct <= 100.0);
    assert!(m.energy_compaction > 0.9 && m.energy_compaction <= 1.0);
    assert!(q.iter().all(|&v| v == 0));
    assert!(rec.iter().all(|v| (v - 128.0).abs() < 1e-9));
}
