//! Automorphisms of point configurations and their level-two kernels.
//!
//! Run with `cargo run --example config_automorphisms`.

use orbit_periodicity::configaut;
use orbit_periodicity::Point;

fn describe(label: &str, pts: &[Point]) {
    let z = configaut::weight_matrix(pts, 1).unwrap();
    let g = configaut::aut_group(&z).unwrap();
    let elems: Vec<String> = g
        .elements()
        .iter()
        .map(|s| configaut::cycle_notation(s))
        .collect();
    println!("{label}: |Aut| = {}  {}", g.order(), elems.join(" "));
    for p in [2, 3, 5] {
        let gamma: Vec<String> = configaut::gamma_subgroup(&z, p)
            .unwrap()
            .iter()
            .map(|s| configaut::cycle_notation(s))
            .collect();
        let data = configaut::level2_data(&z, p).unwrap();
        println!(
            "  Γ_{p} = {{{}}}, |B/m^2| = {p}^{}",
            gamma.join(", "),
            data.quotient_exponent()
        );
    }
    println!(
        "  Γ_2 ∩ Γ_3 trivial: {}",
        configaut::injectivity_check(&z, 2, 3).unwrap()
    );
}

fn main() {
    describe("{0, 36}", &[Point::from_ints([0]), Point::from_ints([36])]);
    describe("{0, 2, 4, 6}", &[0, 2, 4, 6].map(|x| Point::from_ints([x])));
    describe(
        "4 x 6 rectangle",
        &[[0, 0], [4, 0], [0, 6], [4, 6]].map(Point::from_ints),
    );
}
