mod common;

use bposit::{parse_decimal, ExactValue, FormatSpec, Rational};
use bposit_cli::sweep::binade_stats;
use bposit_cli::{
    accuracy_sweep, ceiling, decimal_accuracy, decimal_accuracy_with, format_curve, sweep_csv, AnalysisError,
    AnyCodec, BinadeStats, Stat, SweepConfig,
};
use common::pow2;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn spec(s: &str) -> FormatSpec {
    s.parse().unwrap()
}

fn q(s: &str) -> Rational {
    parse_decimal(s).unwrap()
}

fn curve(s: &str) -> Vec<BinadeStats> {
    format_curve(spec(s), 0, &SweepConfig { samples_per_binade: 4, ..SweepConfig::default() }).unwrap()
}

fn at(c: &[BinadeStats], k: i64) -> f64 {
    c.iter().find(|b| b.k == k).unwrap().worst
}

#[test]
fn exact_values_get_the_ceiling() {
    let s = spec("bposit:16:6:5");
    let d = decimal_accuracy(&ExactValue::one(), s).unwrap();
    assert_eq!(d, 16.0 * std::f64::consts::LOG10_2);
    assert_eq!(d, ceiling(&s));
    let d = decimal_accuracy(&ExactValue::from_rational(&q("-3.140625")).unwrap(), s).unwrap();
    assert_eq!(d, ceiling(&s));
}

#[test]
fn matches_direct_formula() {
    // <16,6,5> has 8 fraction bits at 1, so 1 + 3·2^-14 rounds down to 1.
    let x = 1.0 + 3.0 * 2f64.powi(-14);
    let expected = -(x.log10().abs().log10());
    let got =
        decimal_accuracy(&ExactValue::from_rational(&q(&format!("{x}"))).unwrap(), spec("bposit:16:6:5"))
            .unwrap();
    assert!((got - expected).abs() < 1e-9, "{got} vs {expected}");

    // binary16 rounds 1/3 to 1365/4096.
    let third = 1.0f64 / 3.0;
    let approx = 1365.0 / 4096.0;
    let expected = -((approx / third).log10().abs().log10());
    let codec = AnyCodec::new(spec("ieee:16")).unwrap();
    let got = decimal_accuracy_with(&codec, &q("1/3")).unwrap();
    assert!((got - expected).abs() < 1e-9, "{got} vs {expected}");
}

#[test]
fn out_of_range_and_zero_are_errors() {
    let s = spec("bposit:16:6:5");
    for x in [pow2(200), pow2(-200), q("0")] {
        let v = ExactValue::from_rational(&x).unwrap();
        assert!(matches!(decimal_accuracy(&v, s), Err(AnalysisError::OutOfRange { .. })));
    }
    assert!(matches!(
        decimal_accuracy(&ExactValue::from_rational(&pow2(16)).unwrap(), spec("ieee:16")),
        Err(AnalysisError::OutOfRange { .. })
    ));
}

#[test]
fn worst_case_follows_fraction_width() {
    // Worst case in a binade with F fraction bits sits just below the first
    // arithmetic midpoint: -log10(log10(1 + 2^-(F+1))).
    let oracle = |f: i32| -((1.0 + 2f64.powi(-(f + 1))).log10().log10());
    let b32 = curve("bposit:32:6:5");
    assert!((at(&b32, 0) - oracle(24)).abs() < 1e-6);
    assert!((at(&b32, 40) - oracle(23)).abs() < 1e-6);
    assert!((at(&b32, -100) - oracle(21)).abs() < 1e-6);
    let f32 = curve("ieee:32");
    assert!((at(&f32, 0) - oracle(23)).abs() < 1e-6);
    assert!((at(&f32, -130) - oracle(19)).abs() < 1e-6);
}

#[test]
fn bposit32_is_flat_across_the_fovea() {
    let c = curve("bposit:32:6:5");
    let fovea: Vec<f64> = c.iter().filter(|b| (-32..32).contains(&b.k)).map(|b| b.worst).collect();
    assert_eq!(fovea.len(), 64);
    let (lo, hi) = fovea.iter().fold((f64::MAX, f64::MIN), |(l, h), &d| (l.min(d), h.max(d)));
    assert!(hi - lo <= 0.05, "spread {}", hi - lo);
    let gain = at(&c, 0) - at(&curve("ieee:32"), 0);
    assert!((gain - std::f64::consts::LOG10_2).abs() < 0.01, "gain {gain}");
}

/// Largest `|k + 1/2|` whose binade keeps every exponent bit in the word.
fn full_exponent_limit(s: &FormatSpec) -> f64 {
    let widest = (s.n() - 1 - s.es()).min(s.rs());
    let run = if widest == s.rs() { s.rs() } else { widest - 1 } as i64;
    (run << s.es()) as f64 - 0.5
}

#[test]
fn posit_family_curves_are_symmetric() {
    for s in ["bposit:32:6:5", "bposit:16:6:3", "posit:16:2", "bposit:16:6:5", "posit:32:2"] {
        let c = curve(s);
        let limit = full_exponent_limit(&spec(s));
        let (first, last) = (c.first().unwrap().k, c.last().unwrap().k);
        assert_eq!(first, -1 - last, "{s}");
        for b in c.iter().filter(|b| b.center().abs() <= limit) {
            let mirror = at(&c, -1 - b.k);
            let interior = b.k > first && b.k < last;
            let tol = if interior { 1e-9 } else { 0.05 };
            assert!((b.worst - mirror).abs() <= tol, "{s} k={} {} vs {}", b.k, b.worst, mirror);
            assert_eq!(b.center(), -(at_center(&c, -1 - b.k)));
        }
    }
}

fn at_center(c: &[BinadeStats], k: i64) -> f64 {
    c.iter().find(|b| b.k == k).unwrap().center()
}

#[test]
fn sweep_is_deterministic_and_seeded() {
    let specs = [spec("bposit:16:6:3"), spec("ieee:16"), spec("posit:16:2")];
    let config = SweepConfig { samples_per_binade: 8, seed: 11, stat: Stat::Mean, range: None };
    let a = sweep_csv(&specs, &config).unwrap();
    let b = sweep_csv(&specs, &config).unwrap();
    assert_eq!(a, b);
    let c = sweep_csv(&specs, &SweepConfig { seed: 12, ..config.clone() }).unwrap();
    assert_ne!(a, c);

    let mut lines = a.lines();
    let meta = lines.next().unwrap();
    assert!(meta.starts_with("# meta: version=") && meta.contains("seed=11"), "{meta}");
    assert!(meta.contains("ieee:16=4.816480"));
    assert_eq!(lines.next().unwrap(), "format,log2_magnitude,decimals_mean");
    let first = lines.next().unwrap();
    assert!(first.starts_with("bposit:16:6:3,"), "{first}");
}

#[test]
fn mean_is_never_below_worst() {
    let codec = AnyCodec::new(spec("posit:16:2")).unwrap();
    let (lo, hi) = codec.binades();
    for k in lo..=hi {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let s = binade_stats(&codec, k, 16, &mut rng).unwrap();
        assert!(s.mean >= s.worst && s.worst >= 0.0 && s.mean <= ceiling(&codec.spec()), "k={k}");
    }
    assert!(binade_stats(&codec, hi + 1, 4, &mut ChaCha8Rng::seed_from_u64(0)).is_none());
}

#[test]
fn sweep_range_and_validation() {
    let specs = [spec("bposit:32:6:5")];
    let config = SweepConfig { samples_per_binade: 2, seed: 0, stat: Stat::Worst, range: Some((-3, 3)) };
    let rows = accuracy_sweep(&specs, &config).unwrap();
    let centers: Vec<f64> = rows.iter().map(|r| r.log2_magnitude).collect();
    assert_eq!(centers, vec![-2.5, -1.5, -0.5, 0.5, 1.5, 2.5]);
    let bad = SweepConfig { samples_per_binade: 0, ..config };
    assert!(matches!(accuracy_sweep(&specs, &bad), Err(AnalysisError::InvalidArgument(_))));
}
