mod common;

use common::*;
use proptest::prelude::*;
use rand::Rng;

use rankin::banach::FunctionalFamily;
use rankin::bounds::rankin_bound;
use rankin::format::{Body, Document};
use rankin::optimizer::{minimize_coherence, OptimizerConfig};
use rankin::report::{digest, OptimizeSummary, Payload, RunReport, TOOL_VERSION};
use rankin::verify::{check_rankin, implied_coherence_floor, proof_decomposition};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn documents_round_trip_bit_exactly(seed in any::<u64>()) {
        let doc = random_document(&mut rng(seed));
        let back = Document::parse(&doc.to_text()).unwrap();
        prop_assert!(bit_identical(&doc, &back));
        prop_assert_eq!(back.to_text(), doc.to_text());
        // typed views agree as well
        prop_assert_eq!(back.space().unwrap(), doc.space().unwrap());
        match doc.body {
            Body::Space { .. } => {}
            Body::Family { .. } => prop_assert_eq!(back.family().unwrap(), doc.family().unwrap()),
            Body::FunctionalFamily { .. } => {
                prop_assert_eq!(back.functional_family().unwrap(), doc.functional_family().unwrap())
            }
        }
    }
}

#[test]
fn signed_zero_and_extremes_survive() {
    let text = r#"{"format":"rankin/1","kind":"family","dim":4,
        "atoms":[{"label":"x","weight":5e-324},{"label":"y","weight":1.7976931348623157e308}],
        "vectors":[[-0.0, 0.1, 2.2250738585072014e-308, -4.9406564584124654e-324],
                   [1e-310, 0.30000000000000004, -1.7976931348623157e308, 3.0]]}"#;
    let doc = Document::parse(text).unwrap();
    let fam = doc.family().unwrap();
    assert_eq!(fam.vector(0)[0].to_bits(), (-0.0f64).to_bits());
    assert_eq!(fam.vector(1)[1], 0.1 + 0.2);
    let again = Document::parse(&doc.to_text()).unwrap();
    assert!(bit_identical(&doc, &again));
}

fn verify_report(rng: &mut impl Rng) -> RunReport {
    let n = rng.random_range(2..=20);
    let d = rng.random_range(1..=6);
    let fam = random_family(rng, n, d);
    let text = Document::from_family(&fam).to_text();
    let payload = match rng.random_range(0..3) {
        0 => Payload::Bound(rankin_bound(fam.space()).unwrap()),
        1 => Payload::Verify {
            coherence: check_rankin(&fam).unwrap(),
            decomposition: proof_decomposition(&fam).unwrap(),
            implied_coherence_floor: implied_coherence_floor(&fam).unwrap(),
        },
        _ => Payload::FunctionalVerify(
            FunctionalFamily::from_hilbert(&fam)
                .unwrap()
                .check_functional_rankin()
                .unwrap(),
        ),
    };
    RunReport {
        command: "rankin verify".into(),
        input_digest: digest(text.as_bytes()),
        payload,
        wall_time_seconds: any_positive(rng),
        version: TOOL_VERSION.into(),
    }
}

#[test]
fn reports_round_trip_bit_exactly() {
    let mut rng = rng(40);
    for _ in 0..300 {
        let report = verify_report(&mut rng);
        let back: RunReport = serde_json::from_str(&report.to_json()).unwrap();
        assert!(bit_identical(&report, &back));
    }
    let space = random_space(&mut rng, 5);
    let cfg = OptimizerConfig {
        restarts: 2,
        max_iters: 300,
        ..OptimizerConfig::default()
    };
    let result = minimize_coherence(&space, 2, &cfg).unwrap();
    let report = RunReport {
        command: "rankin optimize".into(),
        input_digest: digest(b""),
        payload: Payload::Optimize(OptimizeSummary::new(&result, None)),
        wall_time_seconds: 0.5,
        version: TOOL_VERSION.into(),
    };
    let back: RunReport = serde_json::from_str(&report.to_json()).unwrap();
    assert!(bit_identical(&report, &back));
}
