//! Finite point configurations `O ⊂ A^n(Z[1/N₀])` viewed through their
//! configuration scheme: the weight matrix, the weight-preserving
//! automorphism group, the level-`r` quotients at a prime `p`, and the
//! subgroups `Γ_p` acting trivially on the level-2 quotient.
//!
//! The coordinate ring of the configuration is modelled by the congruence
//! lattice `{f ∈ Z^N : f_i ≡ f_j mod g_ij}`, where `g_ij` is the gcd of the
//! coordinate differences of points `i` and `j`. Localized at `p` it is
//! spanned by the vectors `p^(k-1)·1_S` over the classes `S` of the relation
//! `v_p(g_ij) ≥ k`; all quotient computations happen modulo a power of `p`
//! large enough that nothing is lost.

mod lattice;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::arith::{coprime_part, divides_power_of, is_prime, prime_divisors, valuation};
use crate::polyring::{Point, Polynomial};

pub use lattice::ModLattice;

/// Largest configuration [`aut_group`] will handle.
pub const MAX_AUT_POINTS: usize = 10;
/// Largest configuration for which whole groups are enumerated element by element.
pub const MAX_ENUM_POINTS: usize = 8;

/// A permutation of `0..N`, as the list of images.
pub type Perm = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("configuration is empty")]
    Empty,
    #[error("points {0} and {1} coincide")]
    Duplicate(usize, usize),
    #[error("point {index} has dimension {got}, expected {expected}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        got: usize,
    },
    #[error("denominators must divide a power of {base}")]
    DenominatorNotAllowed { base: u64 },
    #[error("{got} points exceed the limit of {max}")]
    TooManyPoints { got: usize, max: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {p} divides the inverted denominator {base}")]
    PrimeDividesBase { p: u64, base: u64 },
    #[error("not a permutation of {0} points")]
    NotAPermutation(usize),
    #[error("permutation does not preserve the weights")]
    NotWeightPreserving,
    #[error("working modulus {p}^{exponent} is too large")]
    ModulusTooLarge { p: u64, exponent: u32 },
    #[error("weight {0} is too large to factor")]
    WeightTooLarge(BigUint),
    #[error("entries {0} and {1} of the cycle coincide")]
    DuplicateEntry(usize, usize),
}

/// A finite configuration with its pairwise weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigScheme {
    points: Vec<Point>,
    base: u64,
    weights: Vec<Vec<BigUint>>,
}

/// Builds the configuration of `points` over `Z[1/base]`.
///
/// The weight `g_ij` is the gcd of the coordinate differences with every prime
/// factor of `base` removed; rational coordinates are scaled by a common
/// denominator first, which only introduces such primes.
pub fn weight_matrix(points: &[Point], base: u64) -> Result<ConfigScheme, ConfigError> {
    let Some(first) = points.first() else {
        return Err(ConfigError::Empty);
    };
    let n = first.dim();
    let mut den = BigInt::one();
    for (index, pt) in points.iter().enumerate() {
        if pt.dim() != n {
            return Err(ConfigError::DimensionMismatch {
                index,
                expected: n,
                got: pt.dim(),
            });
        }
        for c in pt.coords() {
            if !divides_power_of(c.denom(), base) {
                return Err(ConfigError::DenominatorNotAllowed { base });
            }
            den = den.lcm(c.denom());
        }
    }
    let cleared: Vec<Vec<BigInt>> = points
        .iter()
        .map(|pt| {
            pt.coords()
                .iter()
                .map(|c| (c * &den).to_integer())
                .collect()
        })
        .collect();
    let size = points.len();
    let mut weights = vec![vec![BigUint::zero(); size]; size];
    for i in 0..size {
        for j in i + 1..size {
            let g = cleared[i]
                .iter()
                .zip(&cleared[j])
                .fold(BigInt::zero(), |g, (a, b)| g.gcd(&(a - b)));
            if g.is_zero() {
                return Err(ConfigError::Duplicate(i, j));
            }
            let w = coprime_part(g.magnitude(), base);
            weights[i][j] = w.clone();
            weights[j][i] = w;
        }
    }
    Ok(ConfigScheme {
        points: points.to_vec(),
        base,
        weights,
    })
}

impl ConfigScheme {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn weight(&self, i: usize, j: usize) -> &BigUint {
        &self.weights[i][j]
    }

    pub fn weights(&self) -> &[Vec<BigUint>] {
        &self.weights
    }

    /// `v_p(g_ij)`, or 0 on the diagonal.
    pub fn valuation(&self, i: usize, j: usize, p: u64) -> u32 {
        if i == j {
            0
        } else {
            valuation(&BigInt::from(self.weights[i][j].clone()), p).unwrap_or(0)
        }
    }

    /// Largest `v_p(g_ij)` over all pairs.
    pub fn max_valuation(&self, p: u64) -> u32 {
        let n = self.len();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| self.valuation(i, j, p))
            .max()
            .unwrap_or(0)
    }

    /// Primes dividing at least one weight.
    pub fn weight_primes(&self) -> Result<Vec<u64>, ConfigError> {
        let mut out = Vec::new();
        for (i, row) in self.weights.iter().enumerate() {
            for w in &row[i + 1..] {
                let w64 = w
                    .to_u64()
                    .ok_or_else(|| ConfigError::WeightTooLarge(w.clone()))?;
                out.extend(prime_divisors(w64));
            }
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// True when `sigma` is a permutation with `g_{σ(i)σ(j)} = g_ij` for all pairs.
    pub fn preserves_weights(&self, sigma: &[usize]) -> Result<bool, ConfigError> {
        check_perm(sigma, self.len())?;
        let n = self.len();
        Ok((0..n)
            .all(|i| (i + 1..n).all(|j| self.weights[sigma[i]][sigma[j]] == self.weights[i][j])))
    }

    /// Equivalence classes of `v_p(g_ij) ≥ k` (for `k = 0` a single class),
    /// each listed ascending, ordered by smallest member.
    pub fn balls(&self, p: u64, k: u32) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut class = vec![usize::MAX; n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for i in 0..n {
            if class[i] != usize::MAX {
                continue;
            }
            let id = out.len();
            let members: Vec<usize> = (i..n)
                .filter(|&j| j == i || k == 0 || self.valuation(i, j, p) >= k)
                .collect();
            for &j in &members {
                class[j] = id;
            }
            out.push(members);
        }
        out
    }

    /// Compact labels for the weights, so that searches compare small integers.
    fn weight_labels(&self) -> Vec<Vec<u32>> {
        let mut ids: BTreeMap<&BigUint, u32> = BTreeMap::new();
        self.weights
            .iter()
            .map(|row| {
                row.iter()
                    .map(|w| {
                        let next = ids.len() as u32;
                        *ids.entry(w).or_insert(next)
                    })
                    .collect()
            })
            .collect()
    }
}

fn check_perm(sigma: &[usize], n: usize) -> Result<(), ConfigError> {
    let mut seen = vec![false; n];
    if sigma.len() != n {
        return Err(ConfigError::NotAPermutation(n));
    }
    for &s in sigma {
        if s >= n || seen[s] {
            return Err(ConfigError::NotAPermutation(n));
        }
        seen[s] = true;
    }
    Ok(())
}

pub fn identity(n: usize) -> Perm {
    (0..n).collect()
}

pub fn is_identity(sigma: &[usize]) -> bool {
    sigma.iter().enumerate().all(|(i, &s)| i == s)
}

/// `(a ∘ b)(i) = a(b(i))`.
pub fn compose(a: &[usize], b: &[usize]) -> Perm {
    b.iter().map(|&i| a[i]).collect()
}

/// Disjoint cycles of length at least two, each starting at its smallest point.
pub fn cycles(sigma: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; sigma.len()];
    let mut out = Vec::new();
    for start in 0..sigma.len() {
        if seen[start] {
            continue;
        }
        let mut cyc = vec![start];
        seen[start] = true;
        let mut i = sigma[start];
        while i != start {
            seen[i] = true;
            cyc.push(i);
            i = sigma[i];
        }
        if cyc.len() > 1 {
            out.push(cyc);
        }
    }
    out
}

/// Cycle notation such as `(0 2)(1 3 4)`; the identity is `()`.
pub fn cycle_notation(sigma: &[usize]) -> String {
    let cs = cycles(sigma);
    if cs.is_empty() {
        return "()".to_string();
    }
    cs.iter()
        .map(|c| {
            format!(
                "({})",
                c.iter()
                    .map(|i| i.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            )
        })
        .collect()
}

pub fn perm_order(sigma: &[usize]) -> u64 {
    cycles(sigma)
        .iter()
        .fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
}

pub fn is_power_of(x: u64, p: u64) -> bool {
    let mut x = x;
    while x > 1 && x.is_multiple_of(p) {
        x /= p;
    }
    x == 1
}

/// Backtracking over partial weight-preserving assignments.
struct Search<'a> {
    labels: &'a [Vec<u32>],
    /// Sorted weight labels of each row, a cheap necessary condition for `i ↦ c`.
    profile: Vec<Vec<u32>>,
}

impl<'a> Search<'a> {
    fn new(labels: &'a [Vec<u32>]) -> Self {
        let profile = labels
            .iter()
            .map(|row| {
                let mut r = row.clone();
                r.sort_unstable();
                r
            })
            .collect();
        Search { labels, profile }
    }

    fn fits(&self, sigma: &[usize], i: usize, c: usize) -> bool {
        self.profile[i] == self.profile[c]
            && (0..i).all(|k| self.labels[sigma[k]][c] == self.labels[k][i])
    }

    /// Extends `sigma` (assigned on `0..sigma.len()`) to a full automorphism,
    /// calling `visit` on each; stops early when `visit` returns false.
    fn extend(
        &self,
        sigma: &mut Vec<usize>,
        used: &mut [bool],
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let n = self.labels.len();
        let i = sigma.len();
        if i == n {
            return visit(sigma);
        }
        for c in 0..n {
            if used[c] || !self.fits(sigma, i, c) {
                continue;
            }
            sigma.push(c);
            used[c] = true;
            let go_on = self.extend(sigma, used, visit);
            used[c] = false;
            sigma.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
}

/// The weight-preserving permutations of a configuration, described by a
/// stabilizer chain along the base `0, 1, ..., N-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermGroup {
    degree: usize,
    /// `transversals[i]` holds one element for each image of `i` under the
    /// pointwise stabilizer of `0..i`.
    transversals: Vec<Vec<Perm>>,
}

impl PermGroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> BigUint {
        self.transversals
            .iter()
            .map(|t| BigUint::from(t.len()))
            .product()
    }

    /// A strong generating set: the non-identity transversal elements.
    pub fn generators(&self) -> Vec<Perm> {
        self.transversals
            .iter()
            .flatten()
            .filter(|g| !is_identity(g))
            .cloned()
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.transversals.iter().all(|t| t.len() == 1)
    }

    /// Membership by sifting through the stabilizer chain.
    pub fn contains(&self, sigma: &[usize]) -> bool {
        if check_perm(sigma, self.degree).is_err() {
            return false;
        }
        let mut g = sigma.to_vec();
        for (i, t) in self.transversals.iter().enumerate() {
            let Some(u) = t.iter().find(|u| u[i] == g[i]) else {
                return false;
            };
            g = compose(&inverse(u), &g);
        }
        is_identity(&g)
    }

    /// Every element, in lexicographic order of image lists.
    pub fn elements(&self) -> Vec<Perm> {
        let mut out = vec![identity(self.degree)];
        for t in self.transversals.iter().rev() {
            out = t
                .iter()
                .flat_map(|u| out.iter().map(move |g| compose(u, g)))
                .collect();
        }
        out.sort();
        out
    }
}

pub fn inverse(sigma: &[usize]) -> Perm {
    let mut inv = vec![0; sigma.len()];
    for (i, &s) in sigma.iter().enumerate() {
        inv[s] = i;
    }
    inv
}

/// The group of weight-preserving permutations of `z`.
pub fn aut_group(z: &ConfigScheme) -> Result<PermGroup, ConfigError> {
    let n = z.len();
    if n > MAX_AUT_POINTS {
        return Err(ConfigError::TooManyPoints {
            got: n,
            max: MAX_AUT_POINTS,
        });
    }
    let labels = z.weight_labels();
    let search = Search::new(&labels);
    let mut transversals = Vec::with_capacity(n);
    for i in 0..n {
        let mut reps = Vec::new();
        for c in 0..n {
            let mut sigma: Vec<usize> = (0..i).collect();
            if c < i || !search.fits(&sigma, i, c) {
                continue;
            }
            let mut used = vec![false; n];
            used[..i].fill(true);
            used[c] = true;
            sigma.push(c);
            let mut found = None;
            search.extend(&mut sigma, &mut used, &mut |s| {
                found = Some(s.to_vec());
                false
            });
            reps.extend(found);
        }
        transversals.push(reps);
    }
    Ok(PermGroup {
        degree: n,
        transversals,
    })
}

/// All weight-preserving permutations by plain backtracking; a reference
/// enumeration independent of the stabilizer chain.
pub fn enumerate_automorphisms(z: &ConfigScheme) -> Result<Vec<Perm>, ConfigError> {
    let n = z.len();
    if n > MAX_ENUM_POINTS {
        return Err(ConfigError::TooManyPoints {
            got: n,
            max: MAX_ENUM_POINTS,
        });
    }
    let labels = z.weight_labels();
    let search = Search::new(&labels);
    let mut out = Vec::new();
    search.extend(&mut Vec::new(), &mut vec![false; n], &mut |s| {
        out.push(s.to_vec());
        true
    });
    Ok(out)
}

/// The local data of a configuration at `p`, truncated at level `r`:
/// the `p`-local coordinate lattice `B`, its radical `m` (the functions
/// vanishing at every point over `p`), and `m^r`, all modulo `p^K` with `K`
/// large enough to contain `m^r`'s full preimage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelData {
    p: u64,
    level: u32,
    exponent: u32,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    ring: ModLattice,
    ideal: ModLattice,
    ideal_power: ModLattice,
}

/// Working modulus bound: lattice entries stay below `2^62`.
const MAX_MODULUS_LOG2: f64 = 61.0;

fn check_prime(z: &ConfigScheme, p: u64) -> Result<(), ConfigError> {
    if !is_prime(p) {
        return Err(ConfigError::NotPrime(p));
    }
    if z.base.is_multiple_of(p) {
        return Err(ConfigError::PrimeDividesBase { p, base: z.base });
    }
    Ok(())
}

fn indicator(n: usize, set: &[usize], scale: i128) -> Vec<i128> {
    let mut v = vec![0i128; n];
    for &i in set {
        v[i] = scale;
    }
    v
}

/// Generators `p^(k-1)·1_S` of the `p`-local congruence lattice, plus `1`.
fn ball_generators(z: &ConfigScheme, p: u64, top: u32) -> Vec<Vec<i128>> {
    let n = z.len();
    let mut gens = vec![vec![1i128; n]];
    for k in 1..=top {
        let scale = (p as i128).pow(k - 1);
        gens.extend(z.balls(p, k).iter().map(|s| indicator(n, s, scale)));
    }
    gens
}

/// The `p`-local coordinate lattice of `z` modulo `p^exponent`.
pub fn congruence_lattice(
    z: &ConfigScheme,
    p: u64,
    exponent: u32,
) -> Result<ModLattice, ConfigError> {
    check_prime(z, p)?;
    let q = modulus(p, exponent)?;
    let top = (z.max_valuation(p) + 1).min(exponent);
    Ok(ModLattice::span(z.len(), q, &ball_generators(z, p, top)))
}

fn modulus(p: u64, exponent: u32) -> Result<i128, ConfigError> {
    if exponent as f64 * (p as f64).log2() > MAX_MODULUS_LOG2 {
        return Err(ConfigError::ModulusTooLarge { p, exponent });
    }
    Ok((p as i128).pow(exponent))
}

/// Level-`level` data of `z` at `p`.
pub fn level_data(z: &ConfigScheme, p: u64, level: u32) -> Result<LevelData, ConfigError> {
    assert!(level >= 1, "level must be positive");
    check_prime(z, p)?;
    let n = z.len();
    let maxv = z.max_valuation(p);
    // p^maxv · Z^N ⊆ B and p^level · B ⊆ m^level, so p^(maxv + level) kills the quotient.
    let exponent = maxv + level + 1;
    let q = modulus(p, exponent)?;
    let ring = ModLattice::span(n, q, &ball_generators(z, p, maxv + 1));
    let classes = z.balls(p, 1);
    let mut class_of = vec![0; n];
    for (c, members) in classes.iter().enumerate() {
        for &i in members {
            class_of[i] = c;
        }
    }
    let mut ideal_gens: Vec<Vec<i128>> =
        classes.iter().map(|c| indicator(n, c, p as i128)).collect();
    for k in 2..=maxv + 1 {
        let scale = (p as i128).pow(k - 1);
        ideal_gens.extend(z.balls(p, k).iter().map(|s| indicator(n, s, scale)));
    }
    let ideal = ModLattice::span(n, q, &ideal_gens);
    let mut ideal_power = ideal.clone();
    for _ in 1..level {
        ideal_power = ideal_power.product(&ideal);
    }
    Ok(LevelData {
        p,
        level,
        exponent,
        classes,
        class_of,
        ring,
        ideal,
        ideal_power,
    })
}

/// Level-2 data, the quotient `B/m²` on which `Γ_p` acts trivially.
pub fn level2_data(z: &ConfigScheme, p: u64) -> Result<LevelData, ConfigError> {
    level_data(z, p, 2)
}

/// `(σ·f)_i = f_{σ(i)}`.
fn act(sigma: &[usize], f: &[i128]) -> Vec<i128> {
    sigma.iter().map(|&s| f[s]).collect()
}

impl LevelData {
    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// The working modulus is `p^exponent`.
    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    /// Residue classes mod `p`: the points over each maximal ideal above `p`.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn ring(&self) -> &ModLattice {
        &self.ring
    }

    pub fn ideal(&self) -> &ModLattice {
        &self.ideal
    }

    pub fn ideal_power(&self) -> &ModLattice {
        &self.ideal_power
    }

    /// `|B/m^r| = p^e`; returns `e`.
    pub fn quotient_exponent(&self) -> u32 {
        self.ideal_power.colength(self.p) - self.ring.colength(self.p)
    }

    /// Whether `p^r · 1 ∈ m^r`.
    pub fn contains_unit_power(&self) -> bool {
        let pr = (self.p as i128).pow(self.level);
        self.ideal_power.contains(&vec![pr; self.class_of.len()])
    }

    /// Whether `p^r` kills `B/m^r`.
    pub fn killed_by_unit_power(&self) -> bool {
        let pr = (self.p as i128).pow(self.level);
        self.ring.generators().all(|g| {
            self.ideal_power
                .contains(&g.iter().map(|x| x * pr).collect::<Vec<_>>())
        })
    }

    pub fn fixes_classes(&self, sigma: &[usize]) -> bool {
        sigma
            .iter()
            .enumerate()
            .all(|(i, &s)| self.class_of[i] == self.class_of[s])
    }

    /// Whether `sigma` induces the identity on `B/m^r` (ignoring the class condition).
    pub fn acts_trivially(&self, sigma: &[usize]) -> bool {
        self.ring.generators().all(|g| {
            let diff: Vec<i128> = act(sigma, g).iter().zip(g).map(|(a, b)| a - b).collect();
            self.ideal_power.contains(&diff)
        })
    }

    /// Whether `sigma` lies in `Γ_p` at this level: it fixes every point over `p`
    /// and acts trivially on `B/m^r`.
    pub fn gamma_contains(&self, sigma: &[usize]) -> bool {
        self.fixes_classes(sigma) && self.acts_trivially(sigma)
    }

    /// Order of the automorphism of `B/m^r` induced by `sigma`.
    pub fn action_order(&self, sigma: &[usize]) -> u64 {
        let mut power = sigma.to_vec();
        let mut k = 1;
        while !self.acts_trivially(&power) {
            power = compose(sigma, &power);
            k += 1;
        }
        k
    }
}

/// Whether `sigma` lies in `Γ_p`: it fixes the points over `p` and acts as the
/// identity on the level-2 quotient.
pub fn gamma_membership(z: &ConfigScheme, sigma: &[usize], p: u64) -> Result<bool, ConfigError> {
    if !z.preserves_weights(sigma)? {
        return Err(ConfigError::NotWeightPreserving);
    }
    if is_identity(sigma) {
        check_prime(z, p)?;
        return Ok(true);
    }
    Ok(level2_data(z, p)?.gamma_contains(sigma))
}

/// Elements of `Γ_p`, ascending.
pub fn gamma_subgroup(z: &ConfigScheme, p: u64) -> Result<Vec<Perm>, ConfigError> {
    let data = level2_data(z, p)?;
    Ok(enumerate_automorphisms(z)?
        .into_iter()
        .filter(|s| data.gamma_contains(s))
        .collect())
}

/// One checked element of `Γ_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionEntry {
    pub perm: Perm,
    pub order: u64,
    /// `(r, order of the induced automorphism of B/m^r)`.
    pub level_orders: Vec<(u32, u64)>,
}

impl TorsionEntry {
    pub fn is_violation(&self, p: u64) -> bool {
        !is_power_of(self.order, p) || self.level_orders.iter().any(|&(_, o)| !is_power_of(o, p))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionReport {
    pub p: u64,
    pub entries: Vec<TorsionEntry>,
    pub violations: Vec<TorsionEntry>,
}

impl TorsionReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Levels at which the `p`-power order of `Γ_p` elements is additionally checked.
pub const TORSION_LEVELS: [u32; 2] = [3, 4];

/// Checks that every element of `Γ_p` has `p`-power order, both as a
/// permutation and on the level-3 and level-4 quotients.
pub fn torsion_order_check(z: &ConfigScheme, p: u64) -> Result<TorsionReport, ConfigError> {
    let gamma = gamma_subgroup(z, p)?;
    let deeper: Vec<LevelData> = TORSION_LEVELS
        .iter()
        .map(|&r| level_data(z, p, r))
        .collect::<Result<_, _>>()?;
    let entries: Vec<TorsionEntry> = gamma
        .into_iter()
        .map(|perm| TorsionEntry {
            order: perm_order(&perm),
            level_orders: deeper
                .iter()
                .map(|d| (d.level(), d.action_order(&perm)))
                .collect(),
            perm,
        })
        .collect();
    let violations = entries
        .iter()
        .filter(|e| e.is_violation(p))
        .cloned()
        .collect();
    Ok(TorsionReport {
        p,
        entries,
        violations,
    })
}

/// Whether `Γ_p ∩ Γ_p' = {id}`.
pub fn injectivity_check(z: &ConfigScheme, p: u64, p2: u64) -> Result<bool, ConfigError> {
    Ok(gamma_intersection(z, p, p2)?.iter().all(|s| is_identity(s)))
}

/// `Γ_p ∩ Γ_p'`, ascending.
pub fn gamma_intersection(z: &ConfigScheme, p: u64, p2: u64) -> Result<Vec<Perm>, ConfigError> {
    let a = level2_data(z, p)?;
    let b = level2_data(z, p2)?;
    Ok(enumerate_automorphisms(z)?
        .into_iter()
        .filter(|s| a.gamma_contains(s) && b.gamma_contains(s))
        .collect())
}

/// Whether `f` satisfies `f_i ≡ f_j mod p^min(r, v_p(g_ij))` for all pairs.
pub fn satisfies_congruences(z: &ConfigScheme, f: &[i128], p: u64, r: u32) -> bool {
    let n = z.len();
    (0..n).all(|i| {
        (i + 1..n).all(|j| {
            let m = (p as i128).pow(r.min(z.valuation(i, j, p)));
            (f[i] - f[j]).rem_euclid(m) == 0
        })
    })
}

/// Whether the coordinate shuffle by `sigma` maps the truncated congruence
/// ring `{f ∈ (Z/p^r)^N : f_i ≡ f_j mod p^min(r, v_p(g_ij))}` into itself, for
/// every prime dividing a weight and `r = max v_p + 1`.
pub fn preserves_congruence_rings(z: &ConfigScheme, sigma: &[usize]) -> Result<bool, ConfigError> {
    check_perm(sigma, z.len())?;
    for p in z.weight_primes()? {
        let r = z.max_valuation(p) + 1;
        let lat = congruence_lattice(z, p, r)?;
        if !lat
            .generators()
            .all(|g| satisfies_congruences(z, &act(sigma, g), p, r))
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The interpolating polynomial of a cycle `a_0 → a_1 → ... → a_{L-1} → a_0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleInterpolant {
    pub cycle: Vec<BigInt>,
    pub poly: Polynomial,
    pub integral: bool,
}

impl CycleInterpolant {
    /// Coefficients from the constant term up to the degree `L - 1` term.
    pub fn coefficients(&self) -> Vec<BigRational> {
        (0..self.cycle.len() as u32)
            .map(|k| self.poly.coefficient(&[k]))
            .collect()
    }
}

impl fmt::Display for CycleInterpolant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

/// The interpolant of least degree sending each entry to the next, by Newton
/// divided differences.
pub fn lagrange_cycle(cycle: &[BigInt]) -> Result<CycleInterpolant, ConfigError> {
    if cycle.is_empty() {
        return Err(ConfigError::Empty);
    }
    for i in 0..cycle.len() {
        for j in i + 1..cycle.len() {
            if cycle[i] == cycle[j] {
                return Err(ConfigError::DuplicateEntry(i, j));
            }
        }
    }
    let len = cycle.len();
    let xs: Vec<BigRational> = cycle.iter().map(|a| BigRational::from(a.clone())).collect();
    let mut table: Vec<BigRational> = (0..len).map(|i| xs[(i + 1) % len].clone()).collect();
    let mut newton = vec![table[0].clone()];
    for level in 1..len {
        table = (0..len - level)
            .map(|i| (&table[i + 1] - &table[i]) / (&xs[i + level] - &xs[i]))
            .collect();
        newton.push(table[0].clone());
    }
    let t = Polynomial::var(1, 1).expect("one variable");
    let mut poly = Polynomial::zero(1);
    for (k, c) in newton.iter().enumerate().rev() {
        poly = &(&poly * &(&t - &Polynomial::constant(1, xs[k].clone())))
            + &Polynomial::constant(1, c.clone());
    }
    let integral = poly.is_integral();
    Ok(CycleInterpolant {
        cycle: cycle.to_vec(),
        poly,
        integral,
    })
}

/// A pair `(i, j)` with `a_i ≡ a_j` but `a_{i+1} ≢ a_{j+1} (mod p)`, which
/// rules out any integer polynomial realizing the cycle.
pub fn residue_obstruction(cycle: &[BigInt], p: u64) -> Option<(usize, usize)> {
    let len = cycle.len();
    let pb = BigInt::from(p);
    let res: Vec<BigInt> = cycle.iter().map(|a| a.mod_floor(&pb)).collect();
    for i in 0..len {
        for j in i + 1..len {
            if res[i] == res[j] && res[(i + 1) % len] != res[(j + 1) % len] {
                return Some((i, j));
            }
        }
    }
    None
}

/// Whether some prime `p ≤ len` obstructs integrality (larger primes cannot,
/// since the residues would then be distinct).
pub fn has_residue_obstruction(cycle: &[BigInt]) -> bool {
    (2..=cycle.len() as u64)
        .filter(|&p| is_prime(p))
        .any(|p| residue_obstruction(cycle, p).is_some())
}

/// Signed entries, handy for callers that think in machine integers.
pub fn cycle_from_ints(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}
