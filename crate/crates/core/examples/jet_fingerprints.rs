//! Push points through maps in the jet ring: value mod p^2 plus Jacobian mod p.
//!
//! Run with `cargo run --example jet_fingerprints`.

use orbit_periodicity::jetspace::{self, JetRingCtx};
use orbit_periodicity::{parse_poly, Point};

fn main() {
    let f = vec![
        parse_poly("x1^2 + 3*x2", 2, 1).unwrap(),
        parse_poly("x1*x2 - 1", 2, 1).unwrap(),
    ];
    let p = 3;
    let y = Point::from_ints([5, 7]);

    let ctx = JetRingCtx::new(p, vec![5 % p, 7 % p]).unwrap();
    println!("|R_a| = {} for p = {p}, n = 2", ctx.ring_size());

    let img = jetspace::jet_apply(&f, &ctx.tautological()).unwrap();
    println!("F(a) mod {}: {:?}", p * p, img.base_values());
    println!("Jacobian mod {p}: {:?}", img.tangent_matrix());

    // Lifting commutes with the map.
    let pushed = jetspace::jet_apply(&f, &jetspace::lift_point(&y, p).unwrap()).unwrap();
    let fy = Point::new(f.iter().map(|fi| fi.eval(&y).unwrap()).collect());
    let lifted = jetspace::lift_point(&fy, p).unwrap();
    println!(
        "F(y) = {fy}; lift(F(y)) equals F(lift(y)): {}",
        pushed.same_coords(&lifted)
    );

    // Chain rule: F after F through the ring, against the composed polynomial.
    let frame = jetspace::framed_point(&y, p).unwrap();
    let twice = jetspace::jet_apply(&f, &jetspace::jet_apply(&f, &frame).unwrap()).unwrap();
    let ff: Vec<_> = f.iter().map(|fi| fi.compose(&f).unwrap()).collect();
    let direct = jetspace::jet_apply(&ff, &frame).unwrap();
    println!(
        "J(F∘F) mod {p}: {:?} (stepwise agrees: {})",
        direct.tangent_matrix(),
        twice.coords == direct.coords
    );
}
