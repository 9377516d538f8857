//! Property tests for the augmentation ops: every op must map valid images
//! to valid images of the same shape, deterministically per stream.

use proptest::prelude::*;

use specmix_core::augment::{
    add_gaussian_noise, autocontrast, channel_shuffle, equalize_histogram, gaussian_blur,
    grayscale3, low_resolution, photometric, random_affine, random_crop, random_perspective,
    OpParams,
};
use specmix_core::image::ImageBuffer;
use specmix_core::rng::RngStream;

fn arb_color_image() -> impl Strategy<Value = ImageBuffer> {
    (7usize..=14, 7usize..=14).prop_flat_map(|(h, w)| {
        proptest::collection::vec(0.0f64..=1.0, h * w * 3)
            .prop_map(move |data| ImageBuffer::new(h, w, 3, data).unwrap())
    })
}

fn assert_valid_same_shape(input: &ImageBuffer, output: &ImageBuffer) {
    assert!(input.same_shape(output));
    assert!(output.data().iter().all(|v| (0.0..=1.0).contains(v)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn every_op_preserves_shape_and_range(img in arb_color_image(), seed in 0u64..1000) {
        let params = OpParams::default();
        let ops: [&dyn Fn(&ImageBuffer, &mut RngStream) -> ImageBuffer; 10] = [
            &|i, _| grayscale3(i).unwrap(),
            &|i, _| equalize_histogram(i),
            &|i, _| autocontrast(i),
            &|i, r| photometric(i, r, &params),
            &|i, r| channel_shuffle(i, r).unwrap(),
            &|i, r| add_gaussian_noise(i, r, &params),
            &|i, r| gaussian_blur(i, r, &params).unwrap(),
            &|i, r| random_crop(i, r, &params),
            &|i, r| low_resolution(i, r, &params).unwrap(),
            &|i, r| random_perspective(i, r, &params),
        ];
        for (stage, op) in ops.iter().enumerate() {
            let mut rng = RngStream::derive(seed, 0, stage as u64);
            let out = op(&img, &mut rng);
            assert_valid_same_shape(&img, &out);
        }
        let mut rng = RngStream::derive(seed, 0, 99);
        let out = random_affine(&img, &mut rng);
        assert_valid_same_shape(&img, &out);
    }

    #[test]
    fn every_op_is_deterministic(img in arb_color_image(), seed in 0u64..1000) {
        let params = OpParams::default();
        let run = |stage: u64, f: &dyn Fn(&ImageBuffer, &mut RngStream) -> ImageBuffer| {
            let a = f(&img, &mut RngStream::derive(seed, 3, stage));
            let b = f(&img, &mut RngStream::derive(seed, 3, stage));
            assert_eq!(a, b);
        };
        run(0, &|i, r| photometric(i, r, &params));
        run(1, &|i, r| channel_shuffle(i, r).unwrap());
        run(2, &|i, r| add_gaussian_noise(i, r, &params));
        run(3, &|i, r| gaussian_blur(i, r, &params).unwrap());
        run(4, &|i, r| random_crop(i, r, &params));
        run(5, &|i, r| low_resolution(i, r, &params).unwrap());
        run(6, &|i, r| random_perspective(i, r, &params));
        run(7, &|i, r| random_affine(i, r));
    }

    #[test]
    fn rank_preservation_under_equalization(img in arb_color_image()) {
        let out = equalize_histogram(&img);
        for c in 0..3 {
            let a = img.channel(c);
            let b = out.channel(c);
            // Sorting indices by input value must leave output values
            // non-decreasing.
            let mut idx: Vec<usize> = (0..a.len()).collect();
            idx.sort_by(|&p, &q| a[p].total_cmp(&a[q]));
            for w in idx.windows(2) {
                prop_assert!(b[w[0]] <= b[w[1]] + 1e-12);
            }
        }
    }
}
