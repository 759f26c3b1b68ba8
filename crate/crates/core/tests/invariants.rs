use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sidewindow::colorize::{colorize_with, ColorizeOptions, ScribbleSet};
use sidewindow::{FilterParams, ImageF, Kernel, SideWindowId};

fn random_image(h: usize, w: usize, c: usize, seed: u64) -> ImageF {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ImageF::from_vec(h, w, c, (0..h * w * c).map(|_| rng.gen()).collect()).unwrap()
}

fn small_params() -> FilterParams {
    FilterParams {
        r: 2,
        sigma: 1.5,
        sigma_s: 2.0,
        sigma_r: 0.2,
        eps: 0.05,
        iterations: 1,
    }
}

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .unwrap()
        .install(f)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn side_filters_commute_with_horizontal_mirroring(seed in any::<u64>()) {
        let img = random_image(11, 13, 1, seed);
        let p = small_params();
        for k in Kernel::ALL {
            let side = k.side(&p);
            let a = side.apply(&img.flip_horizontal(), None).unwrap().0;
            let b = side.apply(&img, None).unwrap().0;
            prop_assert!(a.max_abs_diff(&b.flip_horizontal()) < 1e-9, "{k}");
            let ca = side.candidates(&img.flip_horizontal(), None).unwrap();
            let cb = side.candidates(&img, None).unwrap();
            for id in SideWindowId::ALL {
                let mirrored = cb.get(id.mirror_horizontal()).flip_horizontal();
                prop_assert!(ca.get(id).max_abs_diff(&mirrored) < 1e-9, "{k} {id}");
            }
        }
    }

    #[test]
    fn side_filters_commute_with_vertical_mirroring(seed in any::<u64>()) {
        let img = random_image(12, 9, 1, seed);
        let p = small_params();
        for k in Kernel::ALL {
            let side = k.side(&p);
            let a = side.apply(&img.flip_vertical(), None).unwrap().0;
            let b = side.apply(&img, None).unwrap().0;
            prop_assert!(a.max_abs_diff(&b.flip_vertical()) < 1e-9, "{k}");
        }
    }

    #[test]
    fn side_output_is_never_farther_than_any_candidate(seed in any::<u64>()) {
        let img = random_image(10, 10, 3, seed);
        let p = small_params();
        for k in Kernel::ALL {
            let side = k.side(&p);
            let cands = side.candidates(&img, None).unwrap();
            let (out, sel) = side.apply(&img, None).unwrap();
            for y in 0..10 {
                for x in 0..10 {
                    for c in 0..3 {
                        let q = img.get(y, x, c);
                        let d = (out.get(y, x, c) - q).abs();
                        let all = cands.at(y, x, c);
                        prop_assert!(all.iter().all(|v| d <= (v - q).abs()));
                        prop_assert_eq!(all[sel.get(y, x, c).index()], out.get(y, x, c));
                    }
                }
            }
        }
    }

    #[test]
    fn constant_images_are_fixed_points(v in 0.0f64..1.0) {
        let img = ImageF::filled(9, 9, 1, v);
        let p = small_params();
        for k in Kernel::ALL {
            prop_assert!(k.side(&p).apply(&img, None).unwrap().0.max_abs_diff(&img) < 1e-12);
            prop_assert!(k.classic(&img, &p, None).unwrap().max_abs_diff(&img) < 1e-12);
        }
    }
}

#[test]
fn mirrored_windows_pair_up() {
    for id in SideWindowId::ALL {
        assert_eq!(id.mirror_horizontal().mirror_horizontal(), id);
        assert_eq!(id.mirror_vertical().mirror_vertical(), id);
    }
}

#[test]
fn filters_are_bit_identical_across_thread_counts() {
    let img = random_image(64, 80, 3, 11);
    let p = small_params();
    for k in Kernel::ALL {
        for side in [false, true] {
            let run = || {
                if side {
                    k.side(&p).apply(&img, None).unwrap().0
                } else {
                    k.classic(&img, &p, None).unwrap()
                }
            };
            let one = in_pool(1, run);
            let four = in_pool(4, run);
            assert!(
                one.data().iter().zip(four.data()).all(|(a, b)| a.to_bits() == b.to_bits()),
                "{k} side={side}"
            );
        }
    }
}

#[test]
fn colorization_is_bit_identical_across_thread_counts() {
    let luma = random_image(20, 20, 1, 5);
    let mut s = ScribbleSet::new(20, 20);
    s.insert(2, 2, 0.1, -0.1);
    s.insert(17, 15, -0.2, 0.05);
    let opts = ColorizeOptions { r: 2, ..ColorizeOptions::default() };
    let run = || colorize_with(&luma, &s, &opts).unwrap().rgb;
    let one = in_pool(1, run);
    let four = in_pool(4, run);
    assert!(one.data().iter().zip(four.data()).all(|(a, b)| a.to_bits() == b.to_bits()));
}
