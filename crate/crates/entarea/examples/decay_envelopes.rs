//! Elementwise decay of V^{+-1/2} against its analytic envelopes.
//!
//! Off-diagonal elements of V^{-1/2} are non-negative and those of V^{+1/2}
//! non-positive; their magnitudes sit between y^s/(1-y) from above (y = 2cd,
//! s the lattice-step distance) and (1/2)(c/2)^s/(1-c^2) from below. The
//! lower envelope is stated with the coupling c rather than y; it is
//! asserted on chains and only reported in d=2.
//!
//! Run:
//!   cargo run --release --example decay_envelopes

use entarea::bounds::{decay_envelope, verify_decay, EnvelopeKind, HalfPower};
use entarea::circulant::build_potential;
use entarea::lattice::{LatticeSpec, Model, SiteCoord};

fn main() -> entarea::Result<()> {
    // profile along a chain: element magnitude vs both envelopes
    let spec = LatticeSpec::new(1, 32, 0.2, Model::NearestNeighbor)?;
    let v = build_potential(&spec)?;
    let sqrt = v.fractional_power(0.5)?;
    let origin = SiteCoord(vec![0]);

    eprintln!("=== element profile, d=1, n=32, c=0.2 ===");
    println!("s\tlower_env\t|V^1/2[0,s]|\tupper_env");
    for s in 1..=10usize {
        let site = SiteCoord(vec![s]);
        let element = sqrt.element(&site, &origin)?.abs();
        println!(
            "{s}\t{:.6e}\t{element:.6e}\t{:.6e}",
            decay_envelope(spec.c, spec.d, s, EnvelopeKind::Lower),
            decay_envelope(spec.c, spec.d, s, EnvelopeKind::Upper),
        );
    }
    println!();

    // exhaustive envelope checks
    for (d, n, c_values) in [(1usize, 32usize, vec![0.1, 0.2]), (2, 12, vec![0.1, 0.2])] {
        for c in c_values {
            let spec = LatticeSpec::new(d, n, c, Model::NearestNeighbor)?;
            let v = build_potential(&spec)?;
            for (power, label) in [(HalfPower::Minus, "V^-1/2"), (HalfPower::Plus, "V^+1/2")] {
                let matrix = v.fractional_power(match power {
                    HalfPower::Minus => -0.5,
                    HalfPower::Plus => 0.5,
                })?;
                let report = verify_decay(&matrix, power)?;
                println!(
                    "d={d} n={n} c={c} {label}: sign {} | upper {} | lower {} \
                     (margins: upper {:.3e}, lower {:.3e}; {} elements)",
                    flag(report.sign_ok),
                    flag(report.upper_ok),
                    flag(report.lower_ok),
                    report.worst_upper_margin,
                    report.worst_lower_margin,
                    report.checked_elements
                );
                assert!(report.sign_ok && report.upper_ok);
                if d == 1 {
                    assert!(report.lower_ok, "lower envelope must hold on chains");
                } else if !report.lower_ok {
                    println!(
                        "  d=2 lower-envelope exception reported at {:?}",
                        report.first_violation.as_ref().map(|v| &v.displacement)
                    );
                }
            }
        }
    }
    eprintln!("sign structure and upper envelope hold everywhere");
    Ok(())
}

fn flag(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "VIOLATED"
    }
}
