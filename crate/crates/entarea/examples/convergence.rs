//! Saturation of the measures as the lattice grows around a fixed region.
//!
//! The area statement is about the n -> infinity limit at fixed m; at the
//! couplings used here the correlation length is about one lattice unit, so
//! both measures settle to their limits within a few multiples of m.
//!
//! Run:
//!   cargo run --release --example convergence

use entarea::harness::convergence_study;
use entarea::lattice::Model;

fn main() -> entarea::Result<()> {
    for (d, m, c, n_list) in [
        (1usize, 4usize, 0.24, vec![8, 16, 32, 64]),
        (2, 4, 0.1, vec![8, 12, 16, 24]),
    ] {
        eprintln!("=== d={d}, m={m}, c={c} ===");
        println!("n\tE_N\tS\tdelta_E_N\tdelta_S");
        let study = convergence_study(d, m, c, Model::NearestNeighbor, &n_list)?;
        for row in &study.rows {
            println!(
                "{}\t{:.10}\t{:.10}\t{}\t{}",
                row.n,
                row.en_nats,
                row.s_nats,
                row.delta_en.map_or("-".into(), |x| format!("{x:.3e}")),
                row.delta_s.map_or("-".into(), |x| format!("{x:.3e}")),
            );
        }
        let final_delta = study.final_delta_en().unwrap();
        println!("final |delta E_N| = {final_delta:.3e}\n");
        assert!(
            study.saturated(1e-3),
            "d={d}: not saturated, final delta {final_delta:.3e}"
        );
    }
    eprintln!("both measures saturate in n well before the largest size");
    Ok(())
}
