use qortho::noise::{
    build_decoder, count_harmful, enumerate_outcomes, estimate_logical_error, exact_logical_error, run_trial,
    sample_depolarizing, trial_rng, union_bound_pl, NoiseConfig, OutcomeClass,
};
use qortho::quasi::{effective_distance, OverlapSpec};
use qortho::{builder, Field, StabilizerCode};

fn small_codes() -> Vec<StabilizerCode> {
    vec![
        builder::five_qubit().unwrap(),
        builder::eight_three(builder::eight_three_fixture()).unwrap(),
        builder::ten_four().unwrap(),
    ]
}

#[test]
fn monte_carlo_agrees_with_enumeration() {
    let code = builder::five_qubit().unwrap();
    let table = build_decoder(&code, 5).unwrap();
    for p in [0.05, 0.1, 0.2] {
        let exact = exact_logical_error(&table, p, None, u128::MAX).unwrap();
        let cfg = NoiseConfig::new(p, 200_000, 7, 1).unwrap();
        let mc = estimate_logical_error(&table, &cfg).unwrap();
        let sigma = (exact.p_l * (1.0 - exact.p_l) / cfg.trials as f64).sqrt();
        assert!(
            (mc.p_l - exact.p_l).abs() <= 4.0 * sigma,
            "p={p}: mc {} exact {}",
            mc.p_l,
            exact.p_l
        );
        assert!(mc.ci_low <= mc.p_l && mc.p_l <= mc.ci_high);
        assert_eq!(mc.failures, mc.counts[1..].iter().sum::<u64>());
    }
}

#[test]
fn monte_carlo_is_independent_of_worker_count() {
    let code = builder::eight_three(builder::eight_three_fixture()).unwrap();
    let table = build_decoder(&code, 2).unwrap();
    let a = estimate_logical_error(&table, &NoiseConfig::new(0.1, 50_000, 3, 1).unwrap()).unwrap();
    let b = estimate_logical_error(&table, &NoiseConfig::new(0.1, 50_000, 3, 3).unwrap()).unwrap();
    assert_eq!(a.counts, b.counts);
    let c = estimate_logical_error(&table, &NoiseConfig::new(0.1, 50_000, 4, 1).unwrap()).unwrap();
    assert_ne!(a.counts, c.counts);
    let z = estimate_logical_error(&table, &NoiseConfig::new(0.0, 1000, 3, 1).unwrap()).unwrap();
    assert_eq!((z.failures, z.p_l), (0, 0.0));
}

#[test]
fn depolarizing_class_frequencies() {
    let samples = 200_000u64;
    let mut counts = [0u64; 4];
    for i in 0..samples {
        let e = sample_depolarizing(Field::BINARY, 5, 0.3, &mut trial_rng(11, i));
        for j in 0..5 {
            let class = match (e.x(j), e.z(j)) {
                (0, 0) => 0,
                (1, 0) => 1,
                (1, 1) => 2,
                _ => 3,
            };
            counts[class] += 1;
        }
    }
    let total = (samples * 5) as f64;
    for (c, expect) in counts.iter().zip([0.7, 0.1, 0.1, 0.1]) {
        let sigma = (expect * (1.0 - expect) / total).sqrt();
        assert!((*c as f64 / total - expect).abs() < 4.0 * sigma, "{counts:?}");
    }
}

#[test]
fn low_weight_errors_are_always_corrected() {
    let mut codes = small_codes();
    codes.push(
        builder::quadratic_residue_code(13, 29)
            .unwrap()
            .with_distance(qortho::DistanceRecord::Exact(5)),
    );
    for code in codes {
        let t = code.t().unwrap();
        let table = build_decoder(&code, t).unwrap();
        for w in 0..=t {
            assert_eq!(
                count_harmful(&table, w, u128::MAX).unwrap().total,
                0,
                "{} w={w}",
                code.name()
            );
        }
    }
}

#[test]
fn union_bound_dominates_exact_rate() {
    for code in small_codes() {
        let table = build_decoder(&code, 6).unwrap();
        assert_eq!(table.coverage(), 1.0);
        let prof = enumerate_outcomes(&table, None, u128::MAX).unwrap();
        let h = prof.per_support_table();
        for i in 0..=20 {
            let p = 1e-3 * 300f64.powf(i as f64 / 20.0);
            let exact = prof.evaluate(p).unwrap().p_l;
            assert!(union_bound_pl(code.n(), 3, p, &h) >= exact);
            assert!(union_bound_pl(code.n(), 3, p, &[]) >= exact);
        }
    }
}

#[test]
fn five_qubit_harmful_counts_match_classification() {
    let code = builder::five_qubit().unwrap();
    let table = build_decoder(&code, 1).unwrap();
    let mut direct = 0;
    let f = Field::BINARY;
    for a in 0..5 {
        for b in a + 1..5 {
            for &(xa, za) in &f.local_pairs() {
                for &(xb, zb) in &f.local_pairs() {
                    let mut e = qortho::PauliVector::identity(f, 5);
                    e.set(a, xa, za);
                    e.set(b, xb, zb);
                    direct += run_trial(&table, &e).unwrap().is_failure() as u64;
                }
            }
        }
    }
    assert_eq!(count_harmful(&table, 2, u128::MAX).unwrap().total, direct);
    assert_eq!(count_harmful(&table, 0, u128::MAX).unwrap().total, 0);
}

#[test]
fn qr13_partial_table_reports_coverage() {
    let code = builder::quadratic_residue_code(13, 29).unwrap();
    let table = build_decoder(&code, 2).unwrap();
    assert!(table.coverage() < 1.0);
    let e = qortho::PauliVector::parse(Field::BINARY, "1110000000000|0000000000000").unwrap();
    let outcome = run_trial(&table, &e).unwrap();
    assert!(matches!(outcome, OutcomeClass::Uncorrected) || outcome.is_failure() || outcome == OutcomeClass::I);
}

#[test]
fn truncated_enumeration_brackets_the_full_value() {
    let code = builder::ten_four().unwrap();
    let table = build_decoder(&code, 6).unwrap();
    let full = exact_logical_error(&table, 0.05, None, u128::MAX).unwrap();
    let cut = exact_logical_error(&table, 0.05, Some(3), u128::MAX).unwrap();
    assert!(cut.p_l <= full.p_l && full.p_l <= cut.p_l + cut.trunc_bound);
}

#[test]
fn effective_distance_matches_distance_without_overlap() {
    let mut codes = small_codes();
    codes.push(builder::quadratic_residue_code(13, 29).unwrap());
    for (code, d) in codes.iter().zip([3, 3, 3, 5]) {
        assert_eq!(
            effective_distance(code, 0.5, OverlapSpec::orthogonal()).unwrap(),
            d,
            "{}",
            code.name()
        );
    }
}
