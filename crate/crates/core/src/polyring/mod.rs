//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Coefficients are `BigRational`; for maps over the integers they are plain
//! integers, and over `Z[1/N]` their denominators are `N`-smooth. Terms are
//! kept in a `BTreeMap` keyed by [`Monomial`], whose ordering is graded
//! lexicographic, so equal polynomials always have identical term maps.

mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith;

pub use parse::{parse_poly, ParseError, ParseErrorKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("variable index {index} out of range 1..={n}")]
    VariableOutOfRange { index: usize, n: usize },
    #[error("modulus {modulus} must be at least 2")]
    BadModulus { modulus: u64 },
    #[error("a denominator is not invertible modulo {modulus}")]
    DenominatorNotInvertible { modulus: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
}

/// Exponent vector, one entry per variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    /// `x_i` with `i` zero-based.
    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

// Graded lexicographic: total degree first, then x1 > x2 > ... lexicographically.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A point of affine n-space with rational coordinates.
///
/// Points order lexicographically by coordinate, comparing each coordinate by
/// numerator and then by denominator. This is the canonical order used for
/// orbit listings and hashing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point(Vec<BigRational>);

impl Point {
    pub fn new(coords: Vec<BigRational>) -> Self {
        Point(coords)
    }

    pub fn from_ints<I: IntoIterator<Item = i64>>(coords: I) -> Self {
        Point(
            coords
                .into_iter()
                .map(|c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn from_bigints(coords: Vec<BigInt>) -> Self {
        Point(coords.into_iter().map(BigRational::from_integer).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    /// True when every denominator divides some power of `base`.
    pub fn denominators_divide(&self, base: u64) -> bool {
        self.0
            .iter()
            .all(|c| arith::divides_power_of(c.denom(), base))
    }

    /// Coordinates reduced modulo `m`.
    pub fn reduce(&self, m: u64) -> Result<Vec<u64>, PolyError> {
        self.0
            .iter()
            .map(|c| {
                arith::reduce_rational(c, m)
                    .ok_or(PolyError::DenominatorNotInvertible { modulus: m })
            })
            .collect()
    }

    /// Coordinates rendered as strings ("7", "-3/4").
    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(|c| c.to_string()).collect()
    }
}

impl Ord for Point {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.0.iter().zip(&other.0) {
            let ord = a
                .numer()
                .cmp(b.numer())
                .then_with(|| a.denom().cmp(b.denom()));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    n: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero(n: usize) -> Self {
        Polynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: BigRational) -> Self {
        let mut p = Polynomial::zero(n);
        p.add_term(Monomial::one(n), c);
        p
    }

    pub fn from_int(n: usize, c: i64) -> Self {
        Polynomial::constant(n, BigRational::from_integer(c.into()))
    }

    /// The coordinate function `x_i`, with `i` one-based as in the input grammar.
    pub fn var(n: usize, i: usize) -> Result<Self, PolyError> {
        if i == 0 || i > n {
            return Err(PolyError::VariableOutOfRange { index: i, n });
        }
        let mut p = Polynomial::zero(n);
        p.add_term(Monomial::var(n, i - 1), BigRational::one());
        Ok(p)
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs; like terms are combined.
    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Vec<u32>, BigRational)>,
    {
        let mut p = Polynomial::zero(n);
        for (exps, c) in terms {
            if exps.len() != n {
                return Err(PolyError::DimensionMismatch {
                    expected: n,
                    got: exps.len(),
                });
            }
            p.add_term(Monomial(exps), c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exps: &[u32]) -> BigRational {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// True when every coefficient denominator divides some power of `base`.
    pub fn denominators_divide(&self, base: u64) -> bool {
        self.terms
            .values()
            .all(|c| arith::divides_power_of(c.denom(), base))
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        let mut out = Polynomial::zero(self.n);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a * c);
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut acc = Polynomial::constant(self.n, BigRational::one());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitutes `x_i := g[i - 1]`; the result lives in the ring of the `g`s.
    pub fn compose(&self, g: &[Polynomial]) -> Result<Polynomial, PolyError> {
        self.check_dim(g.len())?;
        let m = g.first().map_or(0, |p| p.n);
        if let Some(bad) = g.iter().find(|p| p.n != m) {
            return Err(PolyError::DimensionMismatch {
                expected: m,
                got: bad.n,
            });
        }
        let mut out = Polynomial::zero(m);
        for (mono, c) in &self.terms {
            let mut term = Polynomial::constant(m, c.clone());
            for (gi, &e) in g.iter().zip(mono.exponents()) {
                if e > 0 {
                    term = &term * &gi.pow(e);
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    fn check_dim(&self, got: usize) -> Result<(), PolyError> {
        if got != self.n {
            return Err(PolyError::DimensionMismatch {
                expected: self.n,
                got,
            });
        }
        Ok(())
    }

    /// Exact value at a rational point.
    pub fn eval(&self, y: &Point) -> Result<BigRational, PolyError> {
        self.check_dim(y.dim())?;
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in y.coords().iter().zip(m.exponents()) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Value modulo `m`, with every intermediate product reduced mod `m`.
    pub fn eval_mod(&self, y: &Point, m: u64) -> Result<u64, PolyError> {
        self.check_dim(y.dim())?;
        let ys = y.reduce(m)?;
        self.eval_residues(&ys, m)
    }

    /// Value modulo `m` at a point already given by residues.
    pub fn eval_residues(&self, ys: &[u64], m: u64) -> Result<u64, PolyError> {
        if m < 2 {
            return Err(PolyError::BadModulus { modulus: m });
        }
        self.check_dim(ys.len())?;
        let mut total = 0u64;
        for (mono, c) in &self.terms {
            let mut t = arith::reduce_rational(c, m)
                .ok_or(PolyError::DenominatorNotInvertible { modulus: m })?;
            for (&x, &e) in ys.iter().zip(mono.exponents()) {
                if e > 0 {
                    t = arith::mul_mod(t, arith::pow_mod(x, e as u64, m), m);
                }
            }
            total = (total + t) % m;
        }
        Ok(total)
    }

    /// Formal partial derivative with respect to `x_i` (one-based).
    pub fn partial(&self, i: usize) -> Result<Polynomial, PolyError> {
        if i == 0 || i > self.n {
            return Err(PolyError::VariableOutOfRange {
                index: i,
                n: self.n,
            });
        }
        let k = i - 1;
        let mut out = Polynomial::zero(self.n);
        for (m, c) in &self.terms {
            let e = m.0[k];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[k] -= 1;
            out.add_term(Monomial(exps), c * BigRational::from_integer(e.into()));
        }
        Ok(out)
    }
}

/// Jacobian of `maps` at `a`, reduced modulo the prime `p`.
///
/// Row `j` holds the partials of the `j`-th coordinate polynomial, so entry
/// `[j][i]` is `dF_j/dx_i (a) mod p`.
pub fn jacobian_mod(maps: &[Polynomial], a: &Point, p: u64) -> Result<Vec<Vec<u64>>, PolyError> {
    if !arith::is_prime(p) {
        return Err(PolyError::NotPrime(p));
    }
    let residues = a.reduce(p)?;
    maps.iter()
        .map(|f| {
            f.check_dim(a.dim())?;
            (1..=f.dim())
                .map(|i| f.partial(i)?.eval_residues(&residues, p))
                .collect()
        })
        .collect()
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        assert_eq!(self.n, rhs.n, "polynomial dimension mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        assert_eq!(self.n, rhs.n, "polynomial dimension mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        assert_eq!(self.n, rhs.n, "polynomial dimension mismatch");
        let mut out = Polynomial::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

// Canonical text form: descending graded-lex, e.g. "3*x1^2*x2 - 5/2*x1 + 1".
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            let mut first = true;
            if !abs.is_one() || m.is_one() {
                write!(f, "{abs}")?;
                first = false;
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "x{}", i + 1)?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}
