use anyhow::{bail, Result};

use adaptq::analytics::{crossover, min_n_adaptive_wins, Comparison};
use adaptq::noise::{terms_from_calibration, DeviceCalibration, SuccessTerms};

use crate::CrossoverArgs;

fn terms(args: &CrossoverArgs) -> Result<Option<SuccessTerms>> {
    let t = match (&args.cal, args.pd, args.pid) {
        (Some(_), Some(_), _) => bail!("pass either --cal or --pd/--pid, not both"),
        (Some(path), None, None) => terms_from_calibration(&DeviceCalibration::load(path)?)?,
        (None, Some(pd), Some(pid)) => SuccessTerms::new(1.0, 1.0, pd, pid, 1.0, 1.0, 1.0)?,
        _ => return Ok(None),
    };
    Ok(Some(if args.assume_easy { t.assume_easy() } else { t }))
}

fn describe(n: usize, cmp: Comparison, k: Option<usize>) -> Result<String> {
    let r = crossover(n, cmp, k)?;
    Ok(match r.exact {
        Some(q) => format!("{:.6} ({q})", r.threshold),
        None => format!("{:.6}", r.threshold),
    })
}

pub fn run(args: &CrossoverArgs) -> Result<bool> {
    let cmp = Comparison::parse(&args.comparison)?;
    let terms = terms(args)?;
    println!("comparison {cmp}{}", args.k.map(|k| format!(" k={k}")).unwrap_or_default());
    match args.n {
        Some(n) => println!("n={n} threshold {}", describe(n, cmp, args.k)?),
        None => {
            if terms.is_none() {
                bail!("a threshold table needs --cal or --pd/--pid; pass --n for a single threshold");
            }
            if args.from > args.to {
                bail!("--from must not exceed --to");
            }
            println!("{:>6}  threshold", "n");
            for n in args.from..=args.to {
                if let Ok(t) = describe(n, cmp, args.k) {
                    println!("{n:>6}  {t}");
                }
            }
        }
    }
    if let Some(t) = terms {
        if t.p_d < 1.0 && t.p_id < 1.0 {
            println!("ln(p_d)/ln(p_id) = {:.6}", t.p_d.ln() / t.p_id.ln());
        }
        match min_n_adaptive_wins(&t, cmp, args.k, args.max_n)? {
            Some(n) => println!("minimum winning n = {n}"),
            None => println!("adaptive does not win for n <= {}", args.max_n),
        }
    }
    Ok(true)
}
