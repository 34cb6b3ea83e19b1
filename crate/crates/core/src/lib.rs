//! Exact decision procedure for periodicity of integral points under finite
//! sets of polynomial endomorphisms of affine space.
//!
//! The pieces:
//! - [`polyring`]: sparse exact polynomials, parsing, evaluation over `Z` and `Z/m`.
//! - [`jetspace`]: the first-order jet rings `Z[x]/(p, x - a)^2` and the jet action of maps.
//! - [`orbits`]: orbit closure under a monoid of maps and the periodicity verdict.
//! - [`bounds`]: the explicit uniform bound on periodic orbit sizes, in log2 and exact form.
//! - [`configaut`]: automorphisms of finite point configurations and their level-2 data.
//! - [`report`]: JSON input and output formats used by the command-line tool.
//! - [`selftest`]: seeded randomized consistency suites across the modules.

pub mod arith;
pub mod bounds;
pub mod configaut;
pub mod jetspace;
pub mod orbits;
pub mod polyring;
pub mod report;
pub mod selftest;

pub use polyring::{jacobian_mod, parse_poly, Point, Polynomial};
