use discroot::curve::CurveSpec;
use discroot::harness::{run_suite, Suite, SuiteConfig};
use proptest::prelude::*;

fn config(seed: u64, sample: usize, p: u64) -> SuiteConfig {
    SuiteConfig { primes: vec![p], sample: Some(sample), seed, samples: 20, ..Default::default() }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn identical_configs_give_identical_reports(
        seed in any::<u64>(),
        sample in 1usize..4,
        p in prop::sample::select(vec![13u64, 37]),
        suite in prop::sample::select(vec![Suite::CubeRoots, Suite::Transform, Suite::Pairing, Suite::TorsorSelftest]),
    ) {
        let cfg = config(seed, sample, p);
        let a = run_suite(suite, &cfg).unwrap().to_jsonl();
        let b = run_suite(suite, &cfg).unwrap().to_jsonl();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn configs_round_trip_through_json(seed in any::<u64>(), sample in proptest::option::of(1usize..50), timings in any::<bool>()) {
        let cfg = SuiteConfig {
            seed,
            sample,
            timings,
            curves: Some(vec![CurveSpec::short(13, 1, 2)]),
            ..Default::default()
        };
        let text = serde_json::to_string(&cfg).unwrap();
        prop_assert_eq!(serde_json::from_str::<SuiteConfig>(&text).unwrap(), cfg);
    }
}

#[test]
fn partial_json_configs_take_defaults() {
    let cfg: SuiteConfig = serde_json::from_str(r#"{"primes":[37]}"#).unwrap();
    assert_eq!(cfg, SuiteConfig { primes: vec![37], ..Default::default() });
}

#[test]
fn every_line_names_its_suite() {
    let cfg = config(1, 2, 13);
    for suite in Suite::ALL {
        let report = run_suite(suite, &cfg).unwrap();
        assert!(!report.lines.is_empty(), "{}", suite.name());
        for line in report.lines {
            assert_eq!(line.suite, suite.name());
            assert!(line.elapsed_ms.is_none());
        }
    }
}
