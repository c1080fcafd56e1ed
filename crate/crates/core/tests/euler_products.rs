use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use repzeta::euler::{
    divergence_probe, global_partial_product, local_log_sum, sandwich_check, EulerProductConfig,
};
use repzeta::localfactor::sl2_local_zeta;
use repzeta::primes::odd_prime_powers_up_to;
use repzeta::DegreeCensus;

#[test]
fn log_sum_is_order_independent() {
    let cfg = EulerProductConfig::new(2.5, 5_000);
    let census = DegreeCensus::from_degrees(1..=2_000_000u128);
    let v = global_partial_product(&cfg, Some(&census)).unwrap();
    let mut primes = cfg.primes();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..5 {
        primes.shuffle(&mut rng);
        let shuffled = local_log_sum(&primes, 2.5).unwrap() + v.log_archimedean;
        assert!((shuffled - v.log_value()).abs() < 1e-12);
    }
}

#[test]
fn products_increase_with_the_prime_bound() {
    for s in [1.5, 2.0, 3.0] {
        let mut prev = f64::NEG_INFINITY;
        for bound in [3, 5, 7, 11, 50, 200] {
            let cfg = EulerProductConfig {
                archimedean_exponent: 0,
                ..EulerProductConfig::new(s, bound)
            };
            let v = global_partial_product(&cfg, None).unwrap().log_value();
            assert!(v > prev, "s={s} P={bound}");
            prev = v;
        }
    }
}

#[test]
fn every_local_factor_exceeds_one() {
    for q in odd_prime_powers_up_to(200) {
        assert!(sl2_local_zeta(q, 2.0).unwrap() > 1.0);
    }
}

#[test]
fn sandwich_grid() {
    for q in odd_prime_powers_up_to(97) {
        for s in [2.0, 2.25, 2.5, 2.75, 3.0] {
            assert!(sandwich_check(q, s).unwrap().ok, "q={q} s={s}");
        }
    }
}

#[test]
fn probe_increments_track_the_upper_tail() {
    // tail of the upper bound: 100 Σ_{P<p≤P'} -log(1 - p^{1-s})
    let rep = divergence_probe(2.5, &[100, 1_000, 10_000]).unwrap();
    for w in rep.steps.windows(2) {
        let inc = w[1].increment.unwrap();
        let upper = (w[1].upper_comparator - w[0].upper_comparator).max(0.0);
        assert!(inc > 0.0 && inc <= upper, "{inc} vs {upper}");
    }
}

#[test]
fn probe_at_two_stays_between_comparators() {
    let rep = divergence_probe(2.0, &[100, 1_000, 10_000]).unwrap();
    assert!(rep.verdict.passed());
    for p in &rep.steps {
        assert!(p.lower_comparator < p.log_product && p.log_product < p.upper_comparator);
    }
    let json = rep.to_json().unwrap();
    assert!(json.contains("\"kind\": \"growth\""));
}
