use adaptq::circuit::{decompose_controlled_1q, from_text, schedule, to_text, Circuit, Gate1};
use adaptq::noise::{evaluate, ExponentVector, SuccessTerms, Term};
use adaptq::sim::{exact_state, ShotHistogram, SimOptions};
use proptest::prelude::*;

#[derive(Debug, Clone)]
enum Step {
    H(usize),
    X(usize),
    Z(usize),
    Ry(f64, usize),
    Rz(f64, usize),
    Cnot(usize, usize),
    Cry(f64, usize, usize),
    Crz(f64, usize, usize),
}

fn step(n: usize) -> impl Strategy<Value = Step> {
    let q = 0..n;
    let pair = (0..n, 0..n).prop_filter("distinct", |(a, b)| a != b);
    let angle = -6.3f64..6.3;
    prop_oneof![
        q.clone().prop_map(Step::H),
        q.clone().prop_map(Step::X),
        q.clone().prop_map(Step::Z),
        (angle.clone(), q.clone()).prop_map(|(a, q)| Step::Ry(a, q)),
        (angle.clone(), q).prop_map(|(a, q)| Step::Rz(a, q)),
        pair.clone().prop_map(|(a, b)| Step::Cnot(a, b)),
        (angle.clone(), pair.clone()).prop_map(|(a, (c, t))| Step::Cry(a, c, t)),
        (angle, pair).prop_map(|(a, (c, t))| Step::Crz(a, c, t)),
    ]
}

fn apply(c: &mut Circuit, s: &Step) {
    match *s {
        Step::H(q) => c.h(q),
        Step::X(q) => c.x(q),
        Step::Z(q) => c.z(q),
        Step::Ry(a, q) => c.ry(a, q),
        Step::Rz(a, q) => c.rz(a, q),
        Step::Cnot(a, b) => c.cnot(a, b),
        Step::Cry(a, x, y) => c.cry(a, x, y),
        Step::Crz(a, x, y) => c.crz(a, x, y),
    };
}

fn circuit() -> impl Strategy<Value = Circuit> {
    (2usize..=6).prop_flat_map(|n| {
        prop::collection::vec(step(n), 0..24).prop_map(move |steps| {
            let mut c = Circuit::new(n, 0);
            steps.iter().for_each(|s| apply(&mut c, s));
            c
        })
    })
}

fn feedforward_circuit() -> impl Strategy<Value = Circuit> {
    (2usize..=6).prop_flat_map(|n| {
        (prop::collection::vec(step(n), 0..12), prop::collection::vec(step(n), 0..12)).prop_map(move |(a, b)| {
            let mut c = Circuit::new(n, 0);
            a.iter().for_each(|s| apply(&mut c, s));
            let bit = c.alloc_clbit();
            c.measure(0, bit, false);
            c.cond(vec![bit], Gate1::X, 1);
            b.iter().for_each(|s| apply(&mut c, s));
            c
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn decomposition_preserves_action(c in circuit()) {
        let opts = SimOptions::default();
        let a = exact_state(&c, 0, &opts).unwrap();
        let b = exact_state(&decompose_controlled_1q(&c), 0, &opts).unwrap();
        let dev = a.amplitudes.iter().zip(&b.amplitudes).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
        prop_assert!(dev <= 1e-12, "deviation {}", dev);
    }

    #[test]
    fn norm_is_preserved(c in feedforward_circuit(), seed in 0u64..1000) {
        let s = exact_state(&c, seed, &SimOptions::default()).unwrap();
        prop_assert!((s.norm() - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn schedule_replays_every_op_in_dependency_order(c in feedforward_circuit(), cap in prop::option::of(1usize..4)) {
        let d = decompose_controlled_1q(&c);
        let s = schedule(&d, cap).unwrap();
        let replay = s.replay();
        let mut sorted = replay.clone();
        sorted.sort_unstable();
        prop_assert_eq!(sorted, (0..d.ops.len()).collect::<Vec<_>>());
        let mut pos = vec![0; d.ops.len()];
        for (i, &j) in replay.iter().enumerate() {
            pos[j] = i;
        }
        for q in 0..d.num_qubits {
            let on_q: Vec<usize> = (0..d.ops.len()).filter(|&j| d.ops[j].qubits().contains(&q)).collect();
            prop_assert!(on_q.windows(2).all(|w| pos[w[0]] < pos[w[1]]));
        }
        for (j, op) in d.ops.iter().enumerate() {
            for r in op.reads() {
                let writer = (0..j).find(|&w| d.ops[w].writes().contains(&r)).unwrap();
                prop_assert!(pos[writer] < pos[j]);
            }
        }
        if let Some(m) = cap {
            prop_assert!(s.layers.iter().all(|l| l.ops.len() <= m || l.class != adaptq::circuit::LayerClass::Double));
        }
    }

    #[test]
    fn text_round_trip(c in feedforward_circuit()) {
        prop_assert_eq!(from_text(&to_text(&c)).unwrap(), c);
    }

    #[test]
    fn evaluate_is_monotone(
        e in prop::array::uniform7(0u64..50),
        p in prop::array::uniform7(0.5f64..1.0),
        which in 0usize..7,
        drop in 0.0f64..0.5,
        bump in 1u64..5,
    ) {
        let terms = SuccessTerms::new(p[0], p[1], p[2], p[3], p[4], p[5], p[6]).unwrap();
        let exp = ExponentVector(e);
        let base = evaluate(&exp, &terms);
        prop_assert!((0.0..=1.0).contains(&base));
        let mut lower = terms;
        let t = Term::ALL[which];
        let v = terms.get(t) - drop;
        match t {
            Term::S => lower.p_s = v,
            Term::Is => lower.p_is = v,
            Term::D => lower.p_d = v,
            Term::Id => lower.p_id = v,
            Term::M => lower.p_m = v,
            Term::Im => lower.p_im = v,
            Term::Ic => lower.p_ic = v,
        }
        prop_assert!(evaluate(&exp, &lower) <= base);
        let mut more = exp;
        more.bump(t, bump);
        prop_assert!(evaluate(&more, &terms) <= base);
    }

    #[test]
    fn histogram_csv_round_trip(rows in prop::collection::btree_map("[01]{5}", 1u64..1000, 1..20)) {
        let mut h = ShotHistogram::new();
        for (k, v) in &rows {
            for _ in 0..*v {
                h.record(k.clone());
            }
        }
        prop_assert_eq!(h.shots, rows.values().sum::<u64>());
        prop_assert_eq!(ShotHistogram::from_csv(&h.to_csv()).unwrap(), h);
    }
}
