use anyhow::{bail, Context, Result};

use adaptq::circuit::{decompose_controlled_1q, schedule};
use adaptq::noise::{count_exponents, evaluate, terms_from_calibration, DeviceCalibration, SuccessTerms};
use adaptq::protocols::build_w_approx_postselect;
use adaptq::sim::{postselect_parity, simulate_noisy, NoisyOptions, SimOptions};
use adaptq::Error;

use crate::protocol::{build, Protocol};
use crate::SimulateArgs;

fn interval(p: f64, shots: u64) -> (f64, f64) {
    let half = 3.0 * (p * (1.0 - p) / shots as f64).sqrt();
    (p - half, p + half)
}

fn cap_hint(e: Error) -> anyhow::Error {
    match e {
        Error::QubitCap { live, cap } => {
            anyhow::anyhow!("{live} unmeasured qubits exceed the statevector cap of {cap}; raise it with --qubit-cap")
        }
        other => other.into(),
    }
}

pub fn run(args: &SimulateArgs) -> Result<bool> {
    let mut built = build(args.protocol, &args.circuit)?;
    if let Some(bits) = &args.input {
        if !matches!(args.protocol, Protocol::Fanout | Protocol::Parity) {
            bail!("--input applies to fanout and parity only");
        }
        if bits.len() != args.circuit.n || !bits.bytes().all(|b| b == b'0' || b == b'1') {
            bail!("--input must be a bitstring of length {}", args.circuit.n);
        }
        let ones: Vec<usize> = bits.bytes().enumerate().filter(|(_, b)| *b == b'1').map(|(i, _)| i).collect();
        built.circuit = built.circuit.with_basis_input(&ones);
    }
    let terms = match (&args.cal, args.ideal) {
        (Some(path), false) => terms_from_calibration(&DeviceCalibration::load(path)?)?,
        _ => SuccessTerms::ONES,
    };
    let opts = NoisyOptions {
        sim: SimOptions { qubit_cap: args.qubit_cap, ..SimOptions::default() },
        log_events: args.events.is_some(),
        postselect: built.postselect.map(|c| (c, true)),
    };
    let report = simulate_noisy(&built.circuit, &terms, args.shots, args.seed, &opts).map_err(cap_hint)?;
    let decomposed = decompose_controlled_1q(&built.circuit);
    let predicted = evaluate(&count_exponents(&schedule(&decomposed, None)?, true), &terms);
    let (lo, hi) = interval(predicted, args.shots);
    let inside = (lo..=hi).contains(&report.clean_fraction);
    println!("shots {} seed {}", report.shots, args.seed);
    println!(
        "clean_fraction {:.4} predicted {:.4} 3-sigma [{:.4}, {:.4}] {}",
        report.clean_fraction,
        predicted,
        lo.max(0.0),
        hi.min(1.0),
        if inside { "within" } else { "OUTSIDE" }
    );
    if args.protocol == Protocol::WApprox {
        let exact = postselect_parity(&build_w_approx_postselect(args.circuit.n)?, &opts.sim).map_err(cap_hint)?;
        let rate = report.accepted as f64 / report.shots as f64;
        let (lo, hi) = interval(exact.acceptance_rate, args.shots);
        println!(
            "acceptance {:.4} exact {:.4} 3-sigma [{:.4}, {:.4}] {}",
            rate,
            exact.acceptance_rate,
            lo.max(0.0),
            hi.min(1.0),
            if (lo..=hi).contains(&rate) { "within" } else { "OUTSIDE" }
        );
        println!("postselected fidelity with W_{} (exact) {:.6}", args.circuit.n, exact.fidelity);
    }
    let hist = &report.histogram;
    let mut top: Vec<(&String, &u64)> = hist.counts.iter().collect();
    top.sort_by(|a, b| b.1.cmp(a.1).then(a.0.cmp(b.0)));
    println!("{} distinct outcomes over {} recorded shots", hist.counts.len(), hist.shots);
    for (bits, count) in top.iter().take(8) {
        println!("  {bits} {count}");
    }
    if let Some(path) = &args.out {
        let csv = if args.hamming { hist.hamming_csv() } else { hist.to_csv() };
        std::fs::write(path, csv).with_context(|| format!("writing {}", path.display()))?;
        println!("wrote {}", path.display());
    }
    if let Some(path) = &args.svg {
        let title = format!("{} n={} shots={}", crate::protocol::name(args.protocol), args.circuit.n, args.shots);
        std::fs::write(path, hist.to_svg(args.hamming, &title)).with_context(|| format!("writing {}", path.display()))?;
        println!("wrote {}", path.display());
    }
    if let (Some(path), Some(log)) = (&args.events, &report.error_event_log) {
        std::fs::write(path, serde_json::to_string(log)?).with_context(|| format!("writing {}", path.display()))?;
        println!("wrote {}", path.display());
    }
    Ok(true)
}
