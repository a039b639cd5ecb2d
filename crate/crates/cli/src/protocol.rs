use anyhow::{bail, Context, Result};
use clap::ValueEnum;

use adaptq::circuit::{decompose_controlled_1q, Circuit};
use adaptq::protocols::{
    build_fanout, build_ghz, build_mu_state, build_or_reduction, build_parity, build_w_approx_postselect,
    build_w_nonadaptive, GhzVariant,
};

use crate::CircuitArgs;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Protocol {
    Ghz,
    W,
    WApprox,
    Fanout,
    Parity,
    Mu,
    OrReduction,
}

/// Built circuit plus the clbit to postselect on, if any.
pub struct Built {
    pub circuit: Circuit,
    pub postselect: Option<usize>,
}

pub fn ghz_variant(args: &CircuitArgs) -> Result<GhzVariant> {
    let name = args.variant.as_deref().context("ghz requires --variant (all, linear, adaptive, hybrid-all, hybrid-linear)")?;
    Ok(GhzVariant::parse(name, args.k)?)
}

pub fn build(protocol: Protocol, args: &CircuitArgs) -> Result<Built> {
    if protocol != Protocol::Ghz && args.variant.is_some() {
        bail!("--variant only applies to ghz");
    }
    let n = args.n;
    let mut postselect = None;
    let circuit = match protocol {
        Protocol::Ghz => build_ghz(n, ghz_variant(args)?)?,
        Protocol::W => build_w_nonadaptive(n)?,
        Protocol::WApprox => {
            let w = build_w_approx_postselect(n)?;
            postselect = Some(w.parity_clbit);
            w.circuit
        }
        Protocol::Fanout => build_fanout(n)?,
        Protocol::Parity => build_parity(n)?,
        Protocol::Mu => build_mu_state(args.k.context("mu requires --k")?, n)?.circuit,
        Protocol::OrReduction => build_or_reduction(n)?.circuit,
    };
    let circuit = if args.decompose { decompose_controlled_1q(&circuit) } else { circuit };
    Ok(Built { circuit, postselect })
}

/// Three significant digits.
pub fn sig3(p: f64) -> String {
    format!("{p:.2e}")
}

pub fn name(p: Protocol) -> String {
    p.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
}
