//! Entanglement measures for a single lattice configuration.
//!
//! Builds the ground state of a d=2 nearest-neighbor lattice, reduces it to
//! an m x m region, and prints the symplectic spectrum, the entanglement
//! entropy, the logarithmic negativity, and the bound chain around them.
//!
//! Run:
//!   cargo run --release --example compute_measures

use entarea::bounds::{lower_bound_estimate, shell_sum_bound, upper_bound_en};
use entarea::circulant::build_potential;
use entarea::gaussian::{
    entanglement_entropy, ground_covariance, log_negativity, reduce, symplectic_spectrum,
};
use entarea::lattice::{LatticeSpec, Model, Region};

fn main() -> entarea::Result<()> {
    let spec = LatticeSpec::new(2, 16, 0.1, Model::NearestNeighbor)?;
    let m = 4;

    eprintln!(
        "=== d={} lattice, n={}, c={}, model={}, region {m}x{m} ===\n",
        spec.d, spec.n, spec.c, spec.model
    );

    let v = build_potential(&spec)?;
    println!(
        "symbol range: [{:.6}, {:.6}]",
        v.min_symbol(),
        v.max_symbol()
    );
    println!(
        "lambda_1(V^-1/2) = {:.6} (analytic (1-2cd)^-1/2 = {:.6})",
        v.fractional_power(-0.5)?.max_symbol(),
        (1.0 - spec.y()).powf(-0.5)
    );

    let gamma = ground_covariance(&v)?;
    let region = Region::at_origin(&spec, m)?;
    let state = reduce(&gamma, &region)?;
    let spectrum = symplectic_spectrum(&state)?;

    println!("\nsymplectic spectrum (top 8 of {}):", spectrum.mu().len());
    for (i, mu) in spectrum.mu().iter().take(8).enumerate() {
        println!("  mu_{i} = {mu:.12}");
    }
    let cap = ((1.0 + spec.y()) / (1.0 - spec.y())).powf(0.25);
    println!("  all mu within [1, {cap:.6}] (dispersion cap)");

    let s = entanglement_entropy(&spectrum)?;
    let en = log_negativity(&v, &region)?;
    let lower = lower_bound_estimate(&state, &spectrum)?;
    let shell = shell_sum_bound(&spec, m)?;
    let (upper, valid, reason) = upper_bound_en(spec.c, spec.d, m)?;

    println!("\nmeasures (nats):");
    println!("  lower estimate  = {lower:.9}");
    println!("  S               = {s:.9}");
    println!("  E_N             = {en:.9}");
    println!("  shell-sum bound = {shell:.9}");
    match (valid, reason) {
        (true, _) => println!("  closed-form cap = {upper:.9}"),
        (false, Some(why)) => println!("  closed-form cap = {upper:.9} (not applicable: {why})"),
        _ => {}
    }

    assert!(lower <= s && s <= en && en <= shell);
    println!("\nchain lower <= S <= E_N <= shell sum holds");
    Ok(())
}
