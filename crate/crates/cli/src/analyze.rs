use std::fmt::Write as _;

use anyhow::{bail, Context, Result};

use adaptq::analytics::{
    ghz_oracle, runtime_estimate, subroutine_oracle, w_adaptive_approx_exponents, w_composition_check, w_exponents,
    w_oracle, LayerDurations, OracleReport, Subroutine, WVariant, BRISBANE_ADAPTIVE_55_REPORTED,
};
use adaptq::circuit::schedule;
use adaptq::noise::{evaluate, terms_from_calibration, DeviceCalibration, ExponentComparison, SuccessTerms};
use adaptq::protocols::GhzVariant;

use crate::protocol::{sig3, Protocol};
use crate::AnalyzeArgs;

struct Row {
    label: String,
    closed: String,
    counted: String,
    matches: bool,
    probability: f64,
    counted_probability: f64,
    runtime_us: f64,
}

struct Analysis {
    terms: SuccessTerms,
    durations: LayerDurations,
    max_parallel_2q: Option<usize>,
    trace: bool,
}

impl Analysis {
    fn row(&self, label: String, report: &OracleReport) -> Result<Row> {
        let sched = match self.max_parallel_2q {
            Some(_) => schedule(&report.circuit, self.max_parallel_2q)?,
            None => report.schedule.clone(),
        };
        if self.trace {
            println!("schedule of {label}:");
            print!("{}", report.trace());
        }
        let cmp = &report.comparison;
        Ok(Row {
            label,
            closed: cmp.expected.to_string(),
            counted: cmp.actual.to_string(),
            matches: cmp.matches(),
            probability: evaluate(&cmp.expected, &self.terms),
            counted_probability: evaluate(&cmp.actual, &self.terms),
            runtime_us: runtime_estimate(&sched, &self.durations) / 1000.0,
        })
    }
}

fn print_rows(rows: &[Row]) {
    println!("{:<22} {:>11} {:>11} {:>12}  exponents", "variant", "P", "P(counted)", "runtime_us");
    for r in rows {
        println!("{:<22} {:>11} {:>11} {:>12.2}  {}", r.label, sig3(r.probability), sig3(r.counted_probability), r.runtime_us, r.closed);
        if !r.matches {
            println!("{:<22} MISMATCH counted {}", "", r.counted);
        }
    }
}

pub fn run(args: &AnalyzeArgs) -> Result<bool> {
    let cal = DeviceCalibration::load(&args.cal)?;
    let mut terms = terms_from_calibration(&cal)?;
    if args.assume_easy {
        terms = terms.assume_easy();
    }
    let ctx = Analysis {
        terms,
        durations: LayerDurations::from_calibration(&cal, args.classical_ns)?,
        max_parallel_2q: args.max_parallel_2q,
        trace: args.trace,
    };
    let n = args.n;
    let mut rows = Vec::new();
    println!("{} n={n} calibration {}{}", crate::protocol::name(args.protocol), args.cal.display(), if args.assume_easy { " (assume-easy)" } else { "" });
    println!(
        "terms: p_s={:.6} p_is={:.6} p_d={:.6} p_id={:.6} p_m={:.6} p_im={:.6} p_ic={:.6}",
        terms.p_s, terms.p_is, terms.p_d, terms.p_id, terms.p_m, terms.p_im, terms.p_ic
    );
    match args.protocol {
        Protocol::Ghz => {
            let mut variants = vec![GhzVariant::AllToAll, GhzVariant::Linear, GhzVariant::Adaptive];
            if let Some(k) = args.k {
                variants.push(GhzVariant::HybridAll { k });
                variants.push(GhzVariant::HybridLinear { k });
            }
            for v in variants {
                rows.push(ctx.row(v.to_string(), &ghz_oracle(n, v)?)?);
            }
            print_rows(&rows);
            let p = |name: &str| rows.iter().find(|r| r.label == name).map(|r| r.probability);
            if let (Some(l), Some(a)) = (p("linear"), p("adaptive")) {
                println!("adaptive/linear probability ratio: {}", sig3(a / l));
            }
            if n == 55 {
                let formula = ghz_oracle(55, GhzVariant::Adaptive)?.comparison.expected;
                let reference = ExponentComparison::new("reference adaptive n=55 exponents", formula, BRISBANE_ADAPTIVE_55_REPORTED);
                println!("{reference}");
                println!("reference probability: {}", sig3(evaluate(&BRISBANE_ADAPTIVE_55_REPORTED, &terms)));
            }
        }
        Protocol::W => {
            rows.push(ctx.row("non-adaptive".into(), &w_oracle(n)?)?);
            print_rows(&rows);
            let non = rows[0].probability;
            match w_exponents(n, WVariant::AdaptiveExact) {
                Ok(e) => {
                    let p = evaluate(&e, &terms);
                    println!("{:<22} {:>11} {:>11} {:>12}  {}", "adaptive-exact", sig3(p), "-", "-", e);
                    println!("adaptive-exact/non-adaptive probability ratio: {}", sig3(p / non));
                    let check = w_composition_check(n).context("composition check")?;
                    println!("composition: {check}");
                }
                Err(e) => println!("adaptive-exact: {e}"),
            }
            match w_adaptive_approx_exponents(n) {
                Ok(e) => {
                    let p = e.evaluate(&terms);
                    println!("{:<22} {:>11} {:>11} {:>12}  {}", "adaptive-approx", sig3(p), "-", "-", e);
                }
                Err(e) => println!("adaptive-approx: {e}"),
            }
        }
        Protocol::Fanout | Protocol::Parity => {
            let kind = if args.protocol == Protocol::Fanout { Subroutine::Fanout(n) } else { Subroutine::Parity(n) };
            rows.push(ctx.row(kind.to_string(), &subroutine_oracle(kind)?)?);
            print_rows(&rows);
        }
        other => bail!("analyze supports ghz, w, fanout, and parity, not {}", crate::protocol::name(other)),
    }
    if let Some(path) = &args.csv {
        let mut s = String::from("variant,n,closed_form,counted,match,probability,counted_probability,runtime_us\n");
        for r in &rows {
            writeln!(
                s,
                "{},{n},{},{},{},{:e},{:e},{}",
                r.label, r.closed, r.counted, r.matches, r.probability, r.counted_probability, r.runtime_us
            )?;
        }
        std::fs::write(path, s).with_context(|| format!("writing {}", path.display()))?;
    }
    let all_match = rows.iter().all(|r| r.matches);
    if !all_match {
        eprintln!("closed-form and counted exponents differ{}", if args.report_only { " (report only)" } else { "" });
    }
    Ok(all_match || args.report_only)
}
