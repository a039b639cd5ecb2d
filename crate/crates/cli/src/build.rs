use anyhow::{Context, Result};

use adaptq::circuit::{schedule, to_text};

use crate::protocol::build as build_circuit;
use crate::BuildArgs;

pub fn run(args: &BuildArgs) -> Result<bool> {
    let built = build_circuit(args.protocol, &args.circuit)?;
    let c = &built.circuit;
    let text = to_text(c);
    let summary = format!("qubits={} clbits={} ops={} {}", c.num_qubits, c.num_clbits, c.ops.len(), c.counts());
    match &args.out {
        Some(path) => {
            std::fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
            println!("{summary}");
            println!("wrote {}", path.display());
        }
        None => {
            print!("{text}");
            eprintln!("{summary}");
        }
    }
    if args.schedule {
        let s = schedule(c, args.circuit.max_parallel_2q)
            .context("scheduling requires a decomposed circuit; pass --decompose")?;
        eprintln!("depth {}", s.depth());
        eprint!("{}", s.trace(c));
    }
    Ok(true)
}
