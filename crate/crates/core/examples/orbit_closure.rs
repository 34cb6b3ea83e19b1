//! Grow an orbit round by round and watch the ascending chain stabilize.
//!
//! Run with `cargo run --example orbit_closure`.

use orbit_periodicity::orbits::{self, AffineSystem, OrbitState};
use orbit_periodicity::Point;

fn main() {
    let sys = AffineSystem::parse(
        2,
        1,
        &[
            ("swap", vec!["x2", "x1"]),
            ("reflect", vec!["6 - x1", "x2"]),
        ],
    )
    .unwrap();
    let mut state = OrbitState::start(Point::from_ints([1, 2]));
    while !state.stabilized {
        state.step(&sys).unwrap();
        println!(
            "round {:>2}: {:>2} points, frontier {:>2}",
            state.steps,
            state.visited.len(),
            state.frontier.len()
        );
    }
    let pts: Vec<String> = state.sorted().iter().map(ToString::to_string).collect();
    println!("closed orbit: {}", pts.join(" "));

    // An unbounded orbit stops at the size limit instead.
    let shift = AffineSystem::parse(1, 1, &[("s", vec!["2*x1 + 1"])]).unwrap();
    let capped = orbits::orbit_closure(&shift, &Point::from_ints([0]), 20).unwrap();
    println!(
        "x -> 2x + 1 from 0: {} points stored, stabilized = {}",
        capped.visited.len(),
        capped.stabilized
    );
}
