//! Decide periodicity for a few small systems on the affine line and plane.
//!
//! Run with `cargo run --example decide_periodic`.

use num_bigint::BigUint;
use orbit_periodicity::orbits::{self, AffineSystem, NotPeriodicReason, Verdict};
use orbit_periodicity::Point;

fn show(title: &str, sys: &AffineSystem, x: &Point, budget: usize, bound: Option<&BigUint>) {
    let d = orbits::decide_periodic(sys, x, budget, bound).expect("valid input");
    print!("{title:<34} from {x}: ");
    match &d.verdict {
        Verdict::Periodic {
            orbit,
            permutations,
        } => {
            let pts: Vec<String> = orbit.iter().map(ToString::to_string).collect();
            println!("periodic, orbit {{{}}}", pts.join(", "));
            for (name, perm) in permutations {
                println!("{:>38} acts as {perm:?}", name);
            }
        }
        Verdict::NotPeriodic(NotPeriodicReason::FiniteNotPermuted {
            map,
            first,
            second,
            image,
            ..
        }) => {
            println!("finite but not permuted: {map} sends {first} and {second} to {image}");
        }
        Verdict::NotPeriodic(NotPeriodicReason::ExceededProvenBound { visited, .. }) => {
            println!(
                "not periodic, {visited} points exceed the bound {}",
                d.bound.describe()
            );
        }
        Verdict::Undecided { visited } => println!("undecided after {visited} points"),
    }
}

fn main() {
    let involution = AffineSystem::parse(1, 1, &[("f", vec!["36 - x1"])]).unwrap();
    show(
        "x -> 36 - x",
        &involution,
        &Point::from_ints([0]),
        100_000,
        None,
    );

    let square = AffineSystem::parse(1, 1, &[("sq", vec!["x1^2"])]).unwrap();
    show("x -> x^2", &square, &Point::from_ints([-1]), 100_000, None);

    let shift = AffineSystem::parse(1, 1, &[("s", vec!["x1 + 1"])]).unwrap();
    show(
        "x -> x + 1 (budget 10^4)",
        &shift,
        &Point::from_ints([0]),
        10_000,
        None,
    );
    show(
        "x -> x + 1 (bound 50)",
        &shift,
        &Point::from_ints([0]),
        100_000,
        Some(&BigUint::from(50u32)),
    );

    // Two generators of the dihedral group of the square, over Z[1/2].
    let plane = AffineSystem::parse(
        2,
        2,
        &[("rot", vec!["-x2", "x1"]), ("flip", vec!["x1", "-x2"])],
    )
    .unwrap();
    let half = orbit_periodicity::report::parse_rational("1/2").unwrap();
    let x = Point::new(vec![
        half,
        orbit_periodicity::report::parse_rational("3").unwrap(),
    ]);
    show("rotation and reflection", &plane, &x, 100_000, None);
}
