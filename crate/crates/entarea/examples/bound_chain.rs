//! Certify the bound chain over the standard sweeps.
//!
//! For every point the chain
//!
//!   lower estimate <= S <= E_N <= shell-sum bound <= closed-form cap
//!
//! must hold (the closed-form cap only where the region is large enough for
//! its derivation). Prints one row per point and a violation summary.
//!
//! Run:
//!   cargo run --release --example bound_chain

use entarea::harness::{run_sweep, Measure, SweepConfig};
use entarea::lattice::Model;

fn sweep(d: usize, c: f64, n: usize, m_values: Vec<usize>) -> SweepConfig {
    SweepConfig {
        d,
        c,
        model: Model::NearestNeighbor,
        n_values: vec![n],
        m_values,
        measures: vec![Measure::S, Measure::En, Measure::Bounds, Measure::Spectrum],
    }
}

fn main() -> entarea::Result<()> {
    let configs = [
        sweep(1, 0.2, 64, (5..=20).collect()),
        sweep(2, 0.1, 24, vec![4, 6, 8, 10]),
    ];

    let mut violations = 0usize;
    for config in &configs {
        eprintln!(
            "=== d={}, c={}, n={}, m in {:?} ===",
            config.d, config.c, config.n_values[0], config.m_values
        );
        println!("d\tn\tm\tlower\tS\tE_N\tshell_sum\tclosed_form\tchain");
        let records = run_sweep(config)?;
        for r in &records {
            let ok = r.chain_ok();
            if !ok {
                violations += 1;
            }
            let cap = if r.upper_valid {
                format!("{:.6}", r.upper_bound)
            } else {
                "n/a".into()
            };
            println!(
                "{}\t{}\t{}\t{:.6}\t{:.6}\t{:.6}\t{:.6}\t{}\t{}",
                r.d,
                r.n,
                r.m,
                r.lower_estimate,
                r.s_nats,
                r.en_nats,
                r.shell_sum_bound,
                cap,
                if ok { "ok" } else { "VIOLATED" }
            );
        }
        println!();
    }

    if violations == 0 {
        eprintln!("bound chain holds on every sweep point");
        Ok(())
    } else {
        Err(entarea::Error::Numerical(format!(
            "{violations} chain violation(s)"
        )))
    }
}
