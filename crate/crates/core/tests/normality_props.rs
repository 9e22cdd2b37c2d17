mod common;

use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tsecon::dist::normal_quantile;
use tsecon::normality::shapiro_wilk;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn location_scale_invariant(seed in any::<u64>(), n in 3usize..200, a in 1e-3..1e3f64, b in -1e3..1e3f64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = normal_draws(&mut rng, n);
        let moved: Vec<f64> = x.iter().map(|v| a * v + b).collect();
        let w0 = shapiro_wilk(&x).unwrap().w_statistic;
        let w1 = shapiro_wilk(&moved).unwrap().w_statistic;
        prop_assert!((w0 - w1).abs() <= 1e-12, "{w0} vs {w1}");
    }

    #[test]
    fn order_of_input_is_irrelevant(seed in any::<u64>(), n in 3usize..100) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = normal_draws(&mut rng, n);
        let mut rev = x.clone();
        rev.reverse();
        prop_assert_eq!(shapiro_wilk(&x).unwrap(), shapiro_wilk(&rev).unwrap());
    }

    #[test]
    fn bounds_hold(seed in any::<u64>(), n in 3usize..500) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x: Vec<f64> = normal_draws(&mut rng, n).iter().map(|v| v.exp()).collect();
        let r = shapiro_wilk(&x).unwrap();
        prop_assert!(r.w_statistic > 0.0 && r.w_statistic <= 1.0);
        prop_assert!((0.0..=1.0).contains(&r.p_value));
    }
}

#[test]
fn normal_scores_give_w_near_one() {
    let n = 50;
    let x: Vec<f64> = (1..=n).map(|i| normal_quantile((i as f64 - 0.375) / (n as f64 + 0.25))).collect();
    assert!(shapiro_wilk(&x).unwrap().w_statistic > 0.99);
}

#[test]
fn p_value_increases_with_w() {
    // blend a normal sample toward a skewed one; W falls and so must p
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for n in [5, 11, 12, 30, 79, 400] {
        let z = normal_draws(&mut rng, n);
        let mut pairs: Vec<(f64, f64)> = (1..=40)
            .map(|k| {
                let s = k as f64 / 40.0 * 2.0;
                let x: Vec<f64> = z.iter().map(|v| (s * v).exp_m1() / s).collect();
                let r = shapiro_wilk(&x).unwrap();
                (r.w_statistic, r.p_value)
            })
            .collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        for w in pairs.windows(2) {
            assert!(w[1].1 >= w[0].1 - 1e-15, "n={n}: {:?} then {:?}", w[0], w[1]);
        }
    }
}

#[test]
fn rejection_rate_calibrated_on_normal_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(2026);
    let rejected = (0..200)
        .filter(|_| shapiro_wilk(&normal_draws(&mut rng, 79)).unwrap().p_value < 0.05)
        .count();
    let rate = rejected as f64 / 200.0;
    assert!((0.01..=0.10).contains(&rate), "rate {rate}");
}

#[test]
fn heavy_tails_are_rejected() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let rejected = (0..100)
        .filter(|_| {
            let x: Vec<f64> = normal_draws(&mut rng, 200).iter().map(|v| v.powi(3)).collect();
            shapiro_wilk(&x).unwrap().p_value < 0.05
        })
        .count();
    assert!(rejected >= 95);
}
