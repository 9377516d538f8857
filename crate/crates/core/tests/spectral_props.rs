//! Property tests for the spectral stack: transform round trips, energy
//! conservation, soft-map shape, and mixing invariants.

use num_complex::Complex64;
use proptest::prelude::*;

use specmix_core::image::ImageBuffer;
use specmix_core::spectral::{
    decompose, dft_forward, dft_inverse, psnr, smu_mix, smu_mix_with_map, SoftAssignmentMap,
};

fn arb_image() -> impl Strategy<Value = ImageBuffer> {
    (1usize..=10, 1usize..=10, prop_oneof![Just(1usize), Just(3usize)]).prop_flat_map(
        |(h, w, c)| {
            proptest::collection::vec(0.0f64..=1.0, h * w * c)
                .prop_map(move |data| ImageBuffer::new(h, w, c, data).unwrap())
        },
    )
}

proptest! {
    #[test]
    fn round_trip_is_identity(img in arb_image()) {
        let back = dft_inverse(&dft_forward(&img)).unwrap();
        for (a, b) in img.data().iter().zip(back.data()) {
            prop_assert!((a - b).abs() <= 1e-6);
        }
    }

    #[test]
    fn parseval_energy_identity(img in arb_image()) {
        // With an unnormalized forward transform:
        // sum |x|^2 = (1/MN) * sum |F|^2.
        let spec = dft_forward(&img);
        let mn = (img.height() * img.width()) as f64;
        for c in 0..img.channels() {
            let spatial: f64 = img.channel(c).iter().map(|v| v * v).sum();
            let frequency: f64 =
                spec.channel(c).iter().map(|z| z.norm_sqr()).sum::<f64>() / mn;
            prop_assert!((spatial - frequency).abs() <= 1e-9 * spatial.max(1.0));
        }
    }

    #[test]
    fn spectra_of_real_images_are_hermitian(img in arb_image()) {
        prop_assert!(dft_forward(&img).hermitian_residue() < 1e-9);
    }

    #[test]
    fn shift_round_trips(img in arb_image()) {
        let spec = dft_forward(&img);
        let back = spec.shift().inverse_shift();
        prop_assert_eq!(spec.coeffs(), back.coeffs());
    }

    #[test]
    fn decompose_recompose_identity(img in arb_image()) {
        let spec = dft_forward(&img);
        let (amp, phase) = decompose(&spec);
        let back = specmix_core::spectral::recompose(&amp, &phase).unwrap();
        for (a, b) in spec.coeffs().iter().zip(back.coeffs()) {
            prop_assert!((a - b).norm() <= 1e-9 * a.norm().max(1.0));
        }
    }

    #[test]
    fn soft_map_shape_properties(
        m in 1usize..=48,
        n in 1usize..=48,
        d0 in 0.5f64..80.0,
    ) {
        let map = SoftAssignmentMap::gaussian(m, n, d0).unwrap();
        prop_assert_eq!(map.weight(m / 2, n / 2), 1.0);
        for &w in map.weights() {
            prop_assert!(w > 0.0 && w <= 1.0);
        }
    }

    #[test]
    fn smu_self_mix_is_identity(img in arb_image(), d0 in 1.0f64..100.0) {
        let out = smu_mix(&img, &img, d0).unwrap();
        for (a, b) in img.data().iter().zip(out.data()) {
            prop_assert!((a - b).abs() <= 1e-4);
        }
    }
}

#[test]
fn smu_amplitude_convexity_holds_exactly_on_larger_images() {
    let mut rng = specmix_core::RngStream::derive(1001, 0, 0);
    let syn = ImageBuffer::from_fn(33, 47, 3, |_, _, _| rng.unit()).unwrap();
    let real = ImageBuffer::from_fn(33, 47, 3, |_, _, _| rng.unit()).unwrap();
    let map = SoftAssignmentMap::gaussian(33, 47, 12.0).unwrap();
    let outcome = smu_mix_with_map(&syn, &real, &map).unwrap();
    let (a_syn, _) = decompose(&dft_forward(&syn));
    let (a_real, _) = decompose(&dft_forward(&real));
    let (a_syn, a_real) = (a_syn.shift(), a_real.shift());
    for i in 0..outcome.mixed_amplitude.values().len() {
        let lo = a_syn.values()[i].min(a_real.values()[i]);
        let hi = a_syn.values()[i].max(a_real.values()[i]);
        let m = outcome.mixed_amplitude.values()[i];
        assert!(m >= lo && m <= hi);
    }
}

#[test]
fn impulse_round_trip_keeps_the_impulse() {
    let mut data = vec![0.0; 49];
    data[24] = 1.0;
    let img = ImageBuffer::new(7, 7, 1, data).unwrap();
    let spec = dft_forward(&img);
    for &c in spec.channel(0) {
        assert!((c.norm() - 1.0).abs() < 1e-12);
    }
    let back = dft_inverse(&spec).unwrap();
    assert!(psnr(&img, &back).unwrap() > 120.0);
}

#[test]
fn forward_of_single_pixel_is_that_pixel() {
    let img = ImageBuffer::new(1, 1, 1, vec![0.77]).unwrap();
    let spec = dft_forward(&img);
    assert_eq!(spec.channel(0)[0], Complex64::new(0.77, 0.0));
}
