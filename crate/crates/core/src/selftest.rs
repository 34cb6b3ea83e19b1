//! Randomized consistency suites over the whole library, as run by the
//! `selftest` command. Every suite draws from its own seeded generator, so a
//! run is reproducible from `(seed, scale)` alone.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arith;
use crate::bounds::{self, PrimePair};
use crate::configaut::{self, ConfigScheme};
use crate::jetspace::{self, JetElement, JetRingCtx};
use crate::orbits::{self, AffineSystem, NamedMap, Verdict};
use crate::polyring::{Point, Polynomial};
use crate::report::SuiteReport;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelftestConfig {
    pub seed: u64,
    /// Multiplier on the default case counts.
    pub scale: f64,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        SelftestConfig {
            seed: 0x5eed,
            scale: 1.0,
        }
    }
}

/// Tally for one suite; keeps the first failure message.
struct Tally {
    cases: u64,
    violations: u64,
    first: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            cases: 0,
            violations: 0,
            first: None,
        }
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.violations += 1;
            if self.first.is_none() {
                self.first = Some(msg());
            }
        }
    }

    fn finish(self, name: &str) -> SuiteReport {
        SuiteReport {
            name: name.to_string(),
            cases: self.cases,
            violations: self.violations,
            passed: self.violations == 0,
            first_violation: self.first,
        }
    }
}

type Suite = fn(&mut ChaCha8Rng, usize) -> Tally;

const SUITES: [(&str, usize, Suite); 10] = [
    ("eval_mod_matches_eval", 400, suite_eval_mod),
    ("jet_ring_axioms", 300, suite_jet_axioms),
    ("jet_routes_agree", 300, suite_jet_routes),
    ("jet_chain_rule", 300, suite_chain_rule),
    ("orbit_verdicts", 150, suite_orbits),
    ("level_two_torsion", 200, suite_torsion),
    ("aut_characterization", 200, suite_aut_characterization),
    ("aut_translation_invariance", 200, suite_translation),
    ("aut_below_bound", 100, suite_aut_bound),
    ("lagrange_obstruction", 400, suite_lagrange),
];

/// Names of all suites, in run order.
pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|s| s.0).collect()
}

/// Runs every suite; the report order is fixed regardless of scheduling.
pub fn run(cfg: SelftestConfig) -> Vec<SuiteReport> {
    SUITES
        .par_iter()
        .enumerate()
        .map(|(k, &(name, cases, suite))| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(k as u64));
            let cases = ((cases as f64 * cfg.scale).ceil() as usize).max(1);
            suite(&mut rng, cases).finish(name)
        })
        .collect()
}

fn rat(v: i64) -> BigRational {
    BigRational::from(BigInt::from(v))
}

/// A random polynomial in `n` variables with integer coefficients in `[-c, c]`.
pub fn random_poly(rng: &mut impl Rng, n: usize, max_deg: u32, c: i64, terms: usize) -> Polynomial {
    let t = (0..terms).map(|_| {
        let mut exps = vec![0u32; n];
        let mut budget = rng.gen_range(0..=max_deg);
        while budget > 0 {
            exps[rng.gen_range(0..n)] += 1;
            budget -= 1;
        }
        (exps, rat(rng.gen_range(-c..=c)))
    });
    Polynomial::from_terms(n, t.collect::<Vec<_>>()).expect("dimension matches")
}

fn random_point(rng: &mut impl Rng, n: usize, r: i64) -> Point {
    Point::from_ints((0..n).map(|_| rng.gen_range(-r..=r)))
}

fn random_config(rng: &mut impl Rng, max_n: usize, dim: usize, r: i64) -> ConfigScheme {
    let size = rng.gen_range(1..=max_n);
    let mut pts: Vec<Point> = Vec::new();
    while pts.len() < size {
        // Half the time use an arithmetic progression, which has large groups.
        let p = if rng.gen_bool(0.5) {
            let step = rng.gen_range(1..=r / 8).max(1);
            Point::from_ints((0..dim).map(|k| if k == 0 { step * pts.len() as i64 } else { 0 }))
        } else {
            random_point(rng, dim, r)
        };
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    configaut::weight_matrix(&pts, 1).expect("distinct integral points")
}

fn suite_eval_mod(rng: &mut ChaCha8Rng, cases: usize) -> Tally {
    let mut t = Tally::new();
    for _ in 0..cases {
        let n = rng.gen_range(1..=3);
        let f = random_poly(rng, n, 4, 50, 5);
        let y = random_point(rng, n, 1000);
        let m = rng.gen_range(2..=1_000_000u64);
        let exact = arith::reduce_rational(&f.eval(&y).expect("dims"), m);
        let modular = f.eval_mod(&y, m).ok();
        t.check(exact == modular, || {
            format!("{f} at {y} mod {m}: {exact:?} vs {modular:?}")
        });
    }
    t
}

fn random_jet(rng: &mut impl Rng, ctx: &JetRingCtx) -> JetElement {
    let v = (0..ctx.dim()).map(|_| rng.gen_range(0..ctx.p())).collect();
    ctx.element(rng.gen_range(0..ctx.p2()), v)
        .expect("in range")
}

fn ring_axioms(ctx: &JetRingCtx, a: &JetElement, b: &JetElement, c: &JetElement) -> bool {
    let add = |x: &JetElement, y: &JetElement| ctx.add(x, y).unwrap();
    let mul = |x: &JetElement, y: &JetElement| ctx.mul(x, y).unwrap();
    add(&add(a, b), c) == add(a, &add(b, c))
        && mul(&mul(a, b), c) == mul(a, &mul(b, c))
        && add(a, b) == add(b, a)
        && mul(a, b) == mul(b, a)
        && mul(a, &add(b, c)) == add(&mul(a, b), &mul(a, c))
        && mul(a, &ctx.one()) == *a
        && add(a, &ctx.zero()) == *a
        && add(a, &ctx.neg(a).unwrap()) == ctx.zero()
}

fn suite_jet_axioms(rng: &mut ChaCha8Rng, cases: usize) -> Tally {
    let mut t = Tally::new();
    let ctx = JetRingCtx::new(2, vec![1]).unwrap();
    let all = ctx.elements();
    t.check(all.len() == 8, || {
        format!("|R| = {} at p = 2, n = 1", all.len())
    });
    for a in &all {
        for b in &all {
            for c in &all {
                t.check(ring_axioms(&ctx, a, b, c), || format!("{a:?} {b:?} {c:?}"));
            }
        }
    }
    for _ in 0..cases {
        let p = *[3u64, 5, 7].choose(rng).unwrap();
        let ctx = JetRingCtx::new(p, vec![rng.gen_range(0..p), rng.gen_range(0..p)]).unwrap();
        let (a, b, c) = (
            random_jet(rng, &ctx),
            random_jet(rng, &ctx),
            random_jet(rng, &ctx),
        );
        t.check(ring_axioms(&ctx, &a, &b, &c), || {
            format!("p = {p}: {a:?} {b:?} {c:?}")
        });
    }
    t
}

fn random_map(rng: &mut impl Rng, n: usize) -> Vec<Polynomial> {
    (0..n).map(|_| random_poly(rng, n, 3, 9, 4)).collect()
}

fn suite_jet_routes(rng: &mut ChaCha8Rng, cases: usize) -> Tally {
    let mut t = Tally::new();
    for _ in 0..cases {
        let n = rng.gen_range(1..=2);
        let p = *[2u64, 3, 5].choose(rng).unwrap();
        let f = random_map(rng, n);
        let y = random_point(rng, n, 100);
        let frame = jetspace::framed_point(&y, p).unwrap();
        let a = jetspace::jet_apply(&f, &frame).unwrap();
        let b = jetspace::jet_apply_via_jacobian(&f, &frame).unwrap();
        t.check(a.coords == b.coords, || format!("p = {p}, y = {y}"));
    }
    t
}

fn suite_chain_rule(rng: &mut ChaCha8Rng, cases: usize) -> Tally {
    let mut t = Tally::new();
    for _ in 0..cases {
        let n = rng.gen_range(1..=2);
        let p = *[2u64, 3, 5].choose(rng).unwrap();
        let f = random_map(rng, n);
        let g = random_map(rng, n);
        let fg: Vec<Polynomial> = f.iter().map(|fi| fi.compose(&g).unwrap()).collect();
        let y = random_point(rng, n, 50);
        let frame = jetspace::framed_point(&y, p).unwrap();
        let direct = jetspace::jet_apply(&fg, &frame).unwrap();
        let stepwise = jetspace::jet_apply(&f, &jetspace::jet_apply(&g, &frame).unwrap()).unwrap();
        t.check(direct.coords == stepwise.coords, || {
            format!("p = {p}, y = {y}")
        });
    }
    t
}

/// Affine maps `x ↦ ±x_σ + c` in the plane, whose orbits are often finite.
fn random_affine_system(rng: &mut impl Rng) -> AffineSystem {
    let n = rng.gen_range(1..=2);
    let k = rng.gen_range(1..=2);
    let maps = (0..k)
        .map(|m| {
            let mut perm: Vec<usize> = (1..=n).collect();
            perm.shuffle(rng);
            let coords = perm
                .iter()
                .map(|&i| {
                    let sign = if rng.gen_bool(0.7) { -1 } else { 1 };
                    let c = rng.gen_range(-5..=5);
                    &Polynomial::var(n, i).unwrap().scale(&rat(sign)) + &Polynomial::from_int(n, c)
                })
                .collect();
            NamedMap {
                name: format!("f{}", m + 1),
                coords,
            }
        })
        .collect();
    AffineSystem::new(n, 1, maps).unwrap()
}

fn suite_orbits(rng: &mut ChaCha8Rng, cases: usize) -> Tally {
    let mut t = Tally::new();
    let bound = BigUint::from(60u32);
    for _ in 0..cases {
        let sys = random_affine_system(rng);
        let x = random_point(rng, sys.dim(), 10);
        let a = orbits::decide_periodic(&sys, &x, 100, Some(&bound)).unwrap();
        let b = orbits::decide_periodic(&sys, &x, 100, Some(&bound)).unwrap();
        t.check(a == b, || format!("nondeterministic verdict at {x}"));
        if let Verdict::Periodic {
            orbit,
            permutations,
        } = &a.verdict
        {
            let z = configaut::weight_matrix(orbit, 1).unwrap();
            for (name, perm) in permutations {
                t.check(z.preserves_weights(perm).unwrap(), || {
                    format!("{name} permutes the orbit of {x} without preserving weights")
                });
            }
        }
    }
    t
}

fn suite_torsion(rng: &mut ChaCha8Rng, cases: usize) -> Tally {
    let mut t = Tally::new();
    for _ in 0..cases {
        let dim = rng.gen_range(1..=2);
        let z = random_config(rng, 6, dim, 10_000);
        for p in [2u64, 3, 5] {
            let d = configaut::level2_data(&z, p).unwrap();
            t.check(d.contains_unit_power() && d.killed_by_unit_power(), || {
                format!("p^2 invariants fail at p = {p} for {:?}", z.points())
            });
            let rep = configaut::torsion_order_check(&z, p).unwrap();
            t.check(rep.passed(), || {
                format!("torsion order at p = {p}: {:?}", rep.violations)
            });
        }
        for (p, q) in [(2, 3), (2, 5), (3, 5)] {
            t.check(configaut::injectivity_check(&z, p, q).unwrap(), || {
                format!("nontrivial Γ_{p} ∩ Γ_{q} for {:?}", z.points())
            });
        }
    }
    t
}

fn all_perms(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for k in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                (0..=k).map(move |pos| {
                    let mut q = p.clone();
                    q.insert(pos, k);
                    q
                })
            })
            .collect();
    }
    out
}

fn suite_aut_characterization(rng: &mut ChaCha8Rng, cases: usize) -> Tally {
    let mut t = Tally::new();
    for _ in 0..cases {
        let dim = rng.gen_range(1..=2);
        let z = random_config(rng, 5, dim, 50);
        for s in all_perms(z.len()) {
            let a = z.preserves_weights(&s).unwrap();
            let b = configaut::preserves_congruence_rings(&z, &s).unwrap();
            t.check(a == b, || {
                format!(
                    "{} on {:?}: weights {a}, congruences {b}",
                    configaut::cycle_notation(&s),
                    z.points()
                )
            });
        }
    }
    t
}

fn suite_translation(rng: &mut ChaCha8Rng, cases: usize) -> Tally {
    let mut t = Tally::new();
    for _ in 0..cases {
        let dim = rng.gen_range(1..=2);
        let z = random_config(rng, 6, dim, 1000);
        let shift = random_point(rng, dim, 1_000_000);
        let moved: Vec<Point> = z
            .points()
            .iter()
            .map(|p| {
                Point::new(
                    p.coords()
                        .iter()
                        .zip(shift.coords())
                        .map(|(a, b)| a + b)
                        .collect(),
                )
            })
            .collect();
        let z2 = configaut::weight_matrix(&moved, 1).unwrap();
        let g1 = configaut::aut_group(&z).unwrap().elements();
        let g2 = configaut::aut_group(&z2).unwrap().elements();
        t.check(g1 == g2, || {
            format!("translation by {shift} changes Aut of {:?}", z.points())
        });
    }
    t
}

fn suite_aut_bound(rng: &mut ChaCha8Rng, cases: usize) -> Tally {
    let mut t = Tally::new();
    let log2_c: Vec<f64> = (1..=2)
        .map(|n| {
            bounds::bound_c(n, PrimePair::standard(), false)
                .unwrap()
                .log2_value
                .unwrap()
                .to_f64()
        })
        .collect();
    for _ in 0..cases {
        let dim = rng.gen_range(1..=2);
        let z = random_config(rng, 10, dim, 100);
        let order = configaut::aut_group(&z).unwrap().order();
        let lo = arith::log2_biguint(&order);
        t.check(lo <= log2_c[dim - 1], || {
            format!("|Aut| = {order} exceeds C({dim})")
        });
    }
    t
}

fn suite_lagrange(rng: &mut ChaCha8Rng, cases: usize) -> Tally {
    let mut t = Tally::new();
    for _ in 0..cases {
        let len = rng.gen_range(1..=5);
        let mut cycle: Vec<i64> = Vec::new();
        while cycle.len() < len {
            let v = rng.gen_range(-20..=20);
            if !cycle.contains(&v) {
                cycle.push(v);
            }
        }
        let c = configaut::cycle_from_ints(&cycle);
        let f = configaut::lagrange_cycle(&c).unwrap();
        let exact = c.iter().enumerate().all(|(i, a)| {
            f.poly.eval(&Point::from_bigints(vec![a.clone()])).unwrap()
                == BigRational::from(c[(i + 1) % len].clone())
        });
        t.check(exact, || format!("interpolant of {cycle:?} misses a value"));
        let degree_ok = f.poly.degree().is_none_or(|d| d < len as u64);
        t.check(degree_ok, || format!("degree too high for {cycle:?}"));
        if configaut::has_residue_obstruction(&c) {
            t.check(!f.integral, || {
                format!("{cycle:?} is obstructed but has integral interpolant")
            });
        }
    }
    t
}
