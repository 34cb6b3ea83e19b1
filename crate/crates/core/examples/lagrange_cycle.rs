//! Interpolate integer cycles and test the mod-p residue obstruction.
//!
//! Run with `cargo run --example lagrange_cycle`.

use orbit_periodicity::configaut;

fn main() {
    for cycle in [
        vec![0, 1, 2],
        vec![0, 2, 4],
        vec![1, -1],
        vec![0, 1, 3, 2],
        vec![3, -1, 4, 10],
    ] {
        let c = configaut::cycle_from_ints(&cycle);
        let f = configaut::lagrange_cycle(&c).unwrap();
        let coeffs: Vec<String> = f.coefficients().iter().map(ToString::to_string).collect();
        let obstruction = configaut::residue_obstruction(&c, 2)
            .map(|(i, j)| format!("a_{i} ≡ a_{j} but images differ mod 2"))
            .unwrap_or_else(|| "none".into());
        println!(
            "{cycle:?}: coefficients (ascending) [{}], integral = {}, mod-2 obstruction: {obstruction}",
            coeffs.join(", "),
            f.integral
        );
    }
}
