use adaptq::analytics::{
    crossover, ghz_exponents, ghz_idle_exponents, ghz_oracle, runtime_estimate, subroutine_oracle,
    theorem_check, w_composition_check, w_exponents, w_oracle, Comparison, LayerDurations, Subroutine, WVariant,
    BRISBANE_ADAPTIVE_55_REPORTED,
};
use adaptq::circuit::{schedule, Circuit};
use adaptq::noise::{count_exponents, evaluate, terms_from_calibration, DeviceCalibration, ExponentComparison, ExponentVector, Term};
use adaptq::protocols::{build_ghz, GhzVariant};

#[test]
fn ghz_closed_forms_match_layer_counts() {
    for n in 2..=64 {
        for v in [GhzVariant::AllToAll, GhzVariant::Linear, GhzVariant::Adaptive] {
            let r = ghz_oracle(n, v).unwrap();
            assert!(r.matches(), "{}", r.comparison);
        }
    }
}

#[test]
fn reported_adaptive_55_exponents_are_flagged() {
    let formula = ghz_exponents(55, GhzVariant::Adaptive).unwrap();
    assert_eq!(formula.get(Term::Is), 82);
    let cmp = ExponentComparison::new("reported", BRISBANE_ADAPTIVE_55_REPORTED, formula);
    assert!(!cmp.matches());
    assert_eq!(cmp.deltas(), vec![(Term::Is, -1)]);
    assert!(cmp.to_string().contains("MISMATCH"));
    assert!(ghz_oracle(55, GhzVariant::Adaptive).unwrap().matches());
}

/// The hybrid closed form is the sequential composition of `k` block
/// preparations and their idle terms with an adaptive join, using halves of
/// `n` in place of the halves of `k` that the composition produces.
#[test]
fn hybrid_closed_form_structure() {
    for n in 4..=64usize {
        for k in (2..n).filter(|k| n % k == 0) {
            let g = n / k;
            for (block, hybrid) in
                [(GhzVariant::AllToAll, GhzVariant::HybridAll { k }), (GhzVariant::Linear, GhzVariant::HybridLinear { k })]
            {
                let block_e = if g >= 2 { ghz_exponents(g, block).unwrap() } else { ExponentVector::new(1, 0, 0, 0, 0, 0, 0) };
                let block_idle = ghz_idle_exponents(g.max(2), block).unwrap();
                let join = ghz_exponents(k, GhzVariant::Adaptive).unwrap();
                let join_idle = ghz_idle_exponents(k, GhzVariant::Adaptive).unwrap();
                let composed = block_e.scale(k as u64) + block_idle.scale(k as u64) + join + join_idle.scale((n - k) as u64);
                let mut closed = ghz_exponents(n, hybrid).unwrap();
                let s_shift = n / 2 - k / 2;
                let is_shift = n.div_ceil(2) - k.div_ceil(2);
                closed.set(Term::S, closed.get(Term::S) - s_shift as u64);
                closed.set(Term::Is, closed.get(Term::Is) - is_shift as u64);
                if g >= 2 {
                    assert_eq!(closed, composed, "{hybrid} n={n}");
                }
                let oracle = ghz_oracle(n, hybrid).unwrap();
                assert!(!oracle.matches(), "{hybrid} n={n}");
                assert!(!oracle.comparison.deltas().is_empty());
            }
        }
    }
}

#[test]
fn w_nonadaptive_closed_form_and_depth() {
    for n in 2..=16 {
        let r = w_oracle(n).unwrap();
        assert!(r.matches(), "{}", r.comparison);
        assert_eq!(r.schedule.depth(), 5 * n - 7);
    }
    assert_eq!(w_exponents(4, WVariant::NonAdaptive).unwrap(), ExponentVector::new(8, 16, 7, 14, 0, 0, 0));
}

#[test]
fn w_composition_reports_are_structured() {
    for n in [2usize, 4, 8, 16] {
        let cmp = w_composition_check(n).unwrap();
        if !cmp.matches() {
            assert!(!cmp.deltas().is_empty());
            let text = cmp.to_string();
            for (t, d) in cmp.deltas() {
                assert!(text.contains(&format!("{}{:+}", t.symbol(), d)), "{text}");
            }
        }
    }
}

fn with_bystander(c: &Circuit) -> Circuit {
    let mut out = Circuit::new(c.num_qubits + 1, c.num_clbits);
    out.ops = c.ops.clone();
    out
}

#[test]
fn bystander_idles_as_predicted() {
    for n in 2..=24 {
        for v in [GhzVariant::AllToAll, GhzVariant::Linear, GhzVariant::Adaptive] {
            let c = build_ghz(n, v).unwrap();
            let base = count_exponents(&schedule(&c, None).unwrap(), true);
            let with = count_exponents(&schedule(&with_bystander(&c), None).unwrap(), true);
            let diff = ExponentVector::from_signed(with.delta(&base)).unwrap();
            assert_eq!(diff, ghz_idle_exponents(n, v).unwrap(), "{v} n={n}");
        }
    }
}

#[test]
fn fanout_closed_form_and_parity_report() {
    for n in 2..=8 {
        let f = subroutine_oracle(Subroutine::Fanout(n)).unwrap();
        assert!(f.matches(), "{}", f.comparison);
        let p = subroutine_oracle(Subroutine::Parity(n)).unwrap();
        assert_eq!(p.comparison.deltas(), vec![(Term::S, 1), (Term::Is, n as i64 - 1)], "{}", p.comparison);
    }
    assert!(subroutine_oracle(Subroutine::OrGate(3)).is_err());
}

#[test]
fn brisbane_numbers() {
    let cal = DeviceCalibration::BRISBANE;
    let terms = terms_from_calibration(&cal).unwrap();
    let durations = LayerDurations::from_calibration(&cal, None).unwrap();
    let lin = build_ghz(55, GhzVariant::Linear).unwrap();
    let ada = build_ghz(55, GhzVariant::Adaptive).unwrap();
    let p_lin = evaluate(&ghz_exponents(55, GhzVariant::Linear).unwrap(), &terms);
    let p_ada = evaluate(&ghz_exponents(55, GhzVariant::Adaptive).unwrap(), &terms);
    assert!((p_lin / 4.52e-4 - 1.0).abs() < 0.01, "{p_lin}");
    assert!((p_ada / 4.82e-2 - 1.0).abs() < 0.01, "{p_ada}");
    let t_lin = runtime_estimate(&schedule(&lin, None).unwrap(), &durations) / 1000.0;
    let t_ada = runtime_estimate(&schedule(&ada, None).unwrap(), &durations) / 1000.0;
    assert!((t_lin - 18.51).abs() < 0.1, "{t_lin}");
    assert!((t_ada - 3.99).abs() < 0.1, "{t_ada}");
}

#[test]
fn linear_threshold_grows_within_each_parity_class() {
    let t = |n| crossover(n, Comparison::LinearVsAdaptive, None).unwrap().threshold;
    for n in 6..=200 {
        assert!(t(n + 2) > t(n), "n={n}");
    }
}

#[test]
fn theorem_inequalities_are_tight() {
    for n in 3..=64 {
        for cmp in [Comparison::AllVsAdaptive, Comparison::LinearVsAdaptive] {
            let c = theorem_check(n, cmp, None).unwrap();
            if c.threshold > num_rational::Rational64::from_integer(0) {
                assert!(c.holds(), "{cmp} n={n}: {c:?}");
                for eps in [0.01, 0.1] {
                    assert!(c.log_ratio_excess(eps, 0.999).abs() < 1e-9);
                }
            }
        }
        for k in (2..n).filter(|k| n % k == 0) {
            for cmp in [Comparison::HybridAll, Comparison::HybridLinear] {
                let c = theorem_check(n, cmp, Some(k)).unwrap();
                assert_eq!(c.expected_gain, 2 * (k as i64 - 1));
                assert!(c.holds(), "{cmp} n={n} k={k}: {c:?}");
            }
        }
    }
}
