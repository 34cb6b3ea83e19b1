//! The uniform bound on periodic orbit sizes, in log2 and (for n = 1) exactly.
//!
//! Run with `cargo run --release --example effective_bound`.

use orbit_periodicity::arith;
use orbit_periodicity::bounds::{self, PrimePair};

fn main() {
    for n in 1..=4 {
        let b = bounds::bound_c(n, PrimePair::standard(), false).unwrap();
        match b.log2_value {
            Some(l) => println!("n = {n}: log2 {} = {:.12e}", b.label(), l.to_f64()),
            None => println!("n = {n}: log2 {} is beyond double-double range", b.label()),
        }
    }
    for p in [2, 3] {
        println!(
            "n = 1, p = {p}: {} factors, power-of-p exponent {}",
            bounds::factor_count(1, p).unwrap(),
            bounds::prime_power_exponent(1, p).unwrap()
        );
    }

    let exact = bounds::bound_c(1, PrimePair::standard(), true).unwrap();
    let v = exact.exact_value.expect("n = 1 is feasible");
    println!(
        "C(1) has {} bits; log2 from the integer = {:.12e}",
        v.bits(),
        arith::log2_biguint(&v)
    );

    // Over Z[1/6] the two smallest admissible primes are 5 and 7.
    let derived = bounds::bound_c(1, bounds::choose_primes(6), false).unwrap();
    println!(
        "over Z[1/6]: {} with primes {:?}, log2 = {:.6e}",
        derived.label(),
        derived.primes,
        derived.log2_value.unwrap().to_f64()
    );
}
