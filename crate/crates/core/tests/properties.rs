use pdct::kernels::{
    build_exact_dct, build_modified_rdct, build_pruned_t, direct_apply, fast_forward_modified_rdct,
    fast_forward_pruned,
};
use pdct::zonal2d::{forward_2d, inverse_2d, Block8};
use proptest::prelude::*;

fn sample() -> impl Strategy<Value = i64> {
    -255i64..=255
}

fn block() -> impl Strategy<Value = Block8> {
    proptest::array::uniform8(proptest::array::uniform8(0u8..=255)).prop_map(|b| b.map(|r| r.map(f64::from)))
}

fn argmax_abs(v: &[f64]) -> usize {
    v.iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |(bi, bv), (i, &x)| if x.abs() > bv { (i, x.abs()) } else { (bi, bv) })
        .0
}

// The scaling diagonal is not uniform, so the dominant coefficient of T·x
// need not be the dominant coefficient of Ĉ·x.
#[test]
fn scaling_can_move_the_largest_coefficient() {
    let spec = build_pruned_t();
    let x = [3.0, 1.0, 1.0, 1.0, 0.0, 0.0, 0.0, -1.0];
    let raw = direct_apply(&spec, &x);
    assert_eq!(raw, vec![5.0, 4.0, 1.0, -1.0]);
    let scaled: Vec<f64> = raw.iter().zip(spec.scaling()).map(|(v, d)| v * d).collect();
    assert_eq!(argmax_abs(&raw), 0);
    assert_eq!(argmax_abs(&scaled), 1);
}

proptest! {
    #[test]
    fn fast_schedules_equal_direct_product(x in proptest::array::uniform8(sample())) {
        let xf = x.map(|v| v as f64);
        prop_assert_eq!(fast_forward_pruned(xf).0.to_vec(), direct_apply(&build_pruned_t(), &xf));
        prop_assert_eq!(fast_forward_modified_rdct(xf).0.to_vec(), direct_apply(&build_modified_rdct(), &xf));
    }

    #[test]
    fn pruned_is_prefix_of_full(x in proptest::array::uniform8(sample())) {
        let (p, _) = fast_forward_pruned(x);
        let (f, _) = fast_forward_modified_rdct(x);
        prop_assert_eq!(&p[..], &f[..4]);
    }

    // A positive diagonal keeps every sign and every zero of T·x.
    #[test]
    fn scaling_preserves_sign_pattern(x in proptest::array::uniform8(sample())) {
        let spec = build_pruned_t();
        let xf = x.map(|v| v as f64);
        let raw = direct_apply(&spec, &xf);
        for (a, d) in raw.iter().zip(spec.scaling()) {
            let b = a * d;
            prop_assert_eq!(a.signum(), b.signum());
            prop_assert_eq!(*a == 0.0, b == 0.0);
        }
    }

    #[test]
    fn orthonormal_transforms_conserve_energy(a in block()) {
        let input: f64 = a.iter().flatten().map(|v| v * v).sum();
        for spec in [build_modified_rdct(), build_exact_dct()] {
            let (b, _) = forward_2d(&spec, &a, true);
            prop_assert!((b.energy() - input).abs() <= 1e-9 * input.max(1.0));
        }
    }

    #[test]
    fn round_trip_full_modified_rdct(a in block()) {
        let spec = build_modified_rdct();
        let (b, _) = forward_2d(&spec, &a, true);
        let back = inverse_2d(&spec, &b, true).unwrap();
        for (x, y) in a.iter().flatten().zip(back.iter().flatten()) {
            prop_assert!((x - y).abs() < 1e-9);
        }
    }

    #[test]
    fn pruned_round_trip_never_adds_energy(a in block()) {
        let spec = build_pruned_t();
        let (b, _) = forward_2d(&spec, &a, true);
        let back = inverse_2d(&spec, &b, true).unwrap();
        let e_in: f64 = a.iter().flatten().map(|v| v * v).sum();
        let e_out: f64 = back.iter().flatten().map(|v| v * v).sum();
        prop_assert!(e_out <= e_in + 1e-6);
    }
}
