use convkit_core::cnn::{cnn_equivalence_check, group_convolve_2d, Kernel3x3, LatticeFunction};
use proptest::prelude::*;

fn image() -> impl Strategy<Value = LatticeFunction> {
    (1usize..9, 1usize..9).prop_flat_map(|(w, h)| {
        prop::collection::vec(-9i32..10, w * h).prop_map(move |v| {
            LatticeFunction::new((0, 0), w, h, v.into_iter().map(f64::from).collect()).unwrap()
        })
    })
}

fn kernel() -> impl Strategy<Value = Kernel3x3> {
    prop::array::uniform9(-5i32..6).prop_map(|k| Kernel3x3::new(k.map(f64::from)).unwrap())
}

proptest! {
    #[test]
    fn group_convolution_equals_flipped_correlation(img in image(), k in kernel()) {
        let r = cnn_equivalence_check(&img, &k).unwrap();
        prop_assert_eq!(r.discrepancy, 0.0);
    }

    #[test]
    fn translation_equivariance(img in image(), k in kernel(), tx in -5i64..6, ty in -5i64..6) {
        let kf = k.to_lattice_function();
        let shifted = group_convolve_2d(&img.translate((tx, ty)), &kf);
        let expect = group_convolve_2d(&img, &kf).translate((tx, ty));
        prop_assert_eq!(shifted.max_abs_diff(&expect), 0.0);
    }

    #[test]
    fn convolution_commutes(a in image(), b in image()) {
        let ab = group_convolve_2d(&a, &b);
        let ba = group_convolve_2d(&b, &a);
        prop_assert_eq!(ab.max_abs_diff(&ba), 0.0);
    }
}
