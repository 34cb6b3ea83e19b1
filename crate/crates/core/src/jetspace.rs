//! First-order jet rings `R_a = Z[x1..xn] / (p, x1 - a1, ..., xn - an)^2`.
//!
//! Writing `e_i = x_i - a_i`, the square of the ideal is generated by `p^2`,
//! `p * e_i` and `e_i * e_j`, so every element has the unique normal form
//! `c + sum v_i e_i` with `c` in `Z/p^2` and `v` in `(Z/p)^n`. The ring has
//! `p^(n+2)` elements.
//!
//! A polynomial map acts on `R_a`-points coordinatewise. On the tautological
//! point `(a_i + e_i)_i` it returns the value `F(a) mod p^2` together with the
//! Jacobian of `F` at `a` mod `p`.

use num_bigint::BigUint;
use thiserror::Error;

use crate::arith;
use crate::polyring::{Point, PolyError, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JetError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("jet context mismatch")]
    ContextMismatch,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("coefficient denominator not invertible modulo {0}")]
    DenominatorNotInvertible(u64),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// The ring `R_a` for a prime `p` and a base point `a` in `(Z/p)^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct JetRingCtx {
    p: u64,
    base: Vec<u64>,
}

/// An element `c + sum v_i (x_i - a_i)` in normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct JetElement {
    /// Constant part, reduced mod `p^2`.
    pub c: u64,
    /// Tangent part, reduced mod `p`.
    pub v: Vec<u64>,
}

/// An `R_a`-point of affine n-space.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct JetPoint {
    pub ctx: JetRingCtx,
    pub coords: Vec<JetElement>,
}

impl JetRingCtx {
    pub fn new(p: u64, base: Vec<u64>) -> Result<Self, JetError> {
        if !arith::is_prime(p) {
            return Err(JetError::NotPrime(p));
        }
        let base = base.into_iter().map(|a| a % p).collect();
        Ok(JetRingCtx { p, base })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn p2(&self) -> u64 {
        self.p * self.p
    }

    pub fn dim(&self) -> usize {
        self.base.len()
    }

    pub fn base(&self) -> &[u64] {
        &self.base
    }

    /// `|R_a| = p^(n+2)`.
    pub fn ring_size(&self) -> BigUint {
        BigUint::from(self.p).pow(self.dim() as u32 + 2)
    }

    /// `|A^n(R_a)| = |R_a|^n`.
    pub fn point_set_size(&self) -> BigUint {
        self.ring_size().pow(self.dim() as u32)
    }

    pub fn element(&self, c: u64, v: Vec<u64>) -> Result<JetElement, JetError> {
        if v.len() != self.dim() {
            return Err(JetError::DimensionMismatch {
                expected: self.dim(),
                got: v.len(),
            });
        }
        Ok(JetElement {
            c: c % self.p2(),
            v: v.into_iter().map(|x| x % self.p).collect(),
        })
    }

    pub fn constant(&self, c: u64) -> JetElement {
        JetElement {
            c: c % self.p2(),
            v: vec![0; self.dim()],
        }
    }

    pub fn zero(&self) -> JetElement {
        self.constant(0)
    }

    pub fn one(&self) -> JetElement {
        self.constant(1)
    }

    /// The class of `x_i` (zero-based `i`): `a_i + e_i`.
    pub fn coordinate(&self, i: usize) -> JetElement {
        let mut v = vec![0; self.dim()];
        v[i] = 1;
        JetElement { c: self.base[i], v }
    }

    /// Every element of the ring, in a fixed order. Intended for small `p^(n+2)`.
    pub fn elements(&self) -> Vec<JetElement> {
        let n = self.dim();
        let tangents = (self.p as usize).pow(n as u32);
        let mut out = Vec::with_capacity(self.p2() as usize * tangents);
        for c in 0..self.p2() {
            for t in 0..tangents {
                let mut v = Vec::with_capacity(n);
                let mut rest = t as u64;
                for _ in 0..n {
                    v.push(rest % self.p);
                    rest /= self.p;
                }
                out.push(JetElement { c, v });
            }
        }
        out
    }

    fn check(&self, u: &JetElement) -> Result<(), JetError> {
        if u.v.len() != self.dim() || u.c >= self.p2() || u.v.iter().any(|&x| x >= self.p) {
            return Err(JetError::ContextMismatch);
        }
        Ok(())
    }

    pub fn add(&self, u: &JetElement, w: &JetElement) -> Result<JetElement, JetError> {
        self.check(u)?;
        self.check(w)?;
        Ok(JetElement {
            c: (u.c + w.c) % self.p2(),
            v: u.v
                .iter()
                .zip(&w.v)
                .map(|(a, b)| (a + b) % self.p)
                .collect(),
        })
    }

    pub fn neg(&self, u: &JetElement) -> Result<JetElement, JetError> {
        self.check(u)?;
        Ok(JetElement {
            c: (self.p2() - u.c) % self.p2(),
            v: u.v.iter().map(|&a| (self.p - a) % self.p).collect(),
        })
    }

    /// `(c, v) * (c', v') = (c c' mod p^2, (c mod p) v' + (c' mod p) v)`.
    pub fn mul(&self, u: &JetElement, w: &JetElement) -> Result<JetElement, JetError> {
        self.check(u)?;
        self.check(w)?;
        let (p, p2) = (self.p, self.p2());
        let (cu, cw) = (u.c % p, w.c % p);
        Ok(JetElement {
            c: arith::mul_mod(u.c, w.c, p2),
            v: u.v
                .iter()
                .zip(&w.v)
                .map(|(&vu, &vw)| (cu * vw + cw * vu) % p)
                .collect(),
        })
    }

    pub fn pow(&self, u: &JetElement, mut e: u32) -> Result<JetElement, JetError> {
        let mut acc = self.one();
        let mut base = u.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base)?;
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base)?;
            }
        }
        Ok(acc)
    }

    /// The tautological point `(a_i + e_i)_i`.
    pub fn tautological(&self) -> JetPoint {
        JetPoint {
            ctx: self.clone(),
            coords: (0..self.dim()).map(|i| self.coordinate(i)).collect(),
        }
    }

    /// Evaluates `f` at a tuple of ring elements by direct ring arithmetic.
    pub fn eval(&self, f: &Polynomial, at: &[JetElement]) -> Result<JetElement, JetError> {
        if f.dim() != at.len() || at.len() != self.dim() {
            return Err(JetError::DimensionMismatch {
                expected: self.dim(),
                got: f.dim(),
            });
        }
        let mut total = self.zero();
        for (mono, coeff) in f.terms() {
            let c = arith::reduce_rational(coeff, self.p2())
                .ok_or(JetError::DenominatorNotInvertible(self.p))?;
            let mut t = self.constant(c);
            for (x, &e) in at.iter().zip(mono.exponents()) {
                if e > 0 {
                    t = self.mul(&t, &self.pow(x, e)?)?;
                }
            }
            total = self.add(&total, &t)?;
        }
        Ok(total)
    }
}

impl JetPoint {
    /// Tangent vectors stacked as rows: row `i` is the tangent of coordinate `i`.
    pub fn tangent_matrix(&self) -> Vec<Vec<u64>> {
        self.coords.iter().map(|e| e.v.clone()).collect()
    }

    pub fn base_values(&self) -> Vec<u64> {
        self.coords.iter().map(|e| e.c).collect()
    }

    /// Equality of coordinates, ignoring which `R_a` the point was built over.
    pub fn same_coords(&self, other: &JetPoint) -> bool {
        self.coords == other.coords
    }
}

/// `|R_a| = p^(n+2)` for the ring with the given prime and dimension.
pub fn ring_size(p: u64, n: usize) -> BigUint {
    BigUint::from(p).pow(n as u32 + 2)
}

/// Applies the map `F = (F_1, ..., F_n)` to an `R_a`-point.
pub fn jet_apply(maps: &[Polynomial], point: &JetPoint) -> Result<JetPoint, JetError> {
    let ctx = &point.ctx;
    if maps.len() != ctx.dim() || point.coords.len() != ctx.dim() {
        return Err(JetError::DimensionMismatch {
            expected: ctx.dim(),
            got: maps.len(),
        });
    }
    let coords = maps
        .iter()
        .map(|f| ctx.eval(f, &point.coords))
        .collect::<Result<_, _>>()?;
    Ok(JetPoint {
        ctx: ctx.clone(),
        coords,
    })
}

/// Base `F(c) mod p^2` and tangent `J_F(c mod p) * T`, computed from formal
/// derivatives rather than ring arithmetic. Kept as an independent route for
/// cross-checking [`jet_apply`].
pub fn jet_apply_via_jacobian(maps: &[Polynomial], point: &JetPoint) -> Result<JetPoint, JetError> {
    let ctx = &point.ctx;
    let (p, p2) = (ctx.p(), ctx.p2());
    let n = ctx.dim();
    if maps.len() != n {
        return Err(JetError::DimensionMismatch {
            expected: n,
            got: maps.len(),
        });
    }
    let base = point.base_values();
    let base_mod_p: Vec<u64> = base.iter().map(|c| c % p).collect();
    let tangent = point.tangent_matrix();
    let mut coords = Vec::with_capacity(n);
    for f in maps {
        let c = f.eval_residues(&base, p2)?;
        let grads: Vec<u64> = (1..=n)
            .map(|i| f.partial(i)?.eval_residues(&base_mod_p, p))
            .collect::<Result<_, _>>()?;
        let v = (0..n)
            .map(|k| (0..n).fold(0u64, |acc, i| (acc + grads[i] * tangent[i][k]) % p))
            .collect();
        coords.push(JetElement { c, v });
    }
    Ok(JetPoint {
        ctx: ctx.clone(),
        coords,
    })
}

/// Embeds a point as the jet `(y_i mod p^2, 0)` over `a = y mod p`.
pub fn lift_point(y: &Point, p: u64) -> Result<JetPoint, JetError> {
    if !arith::is_prime(p) {
        return Err(JetError::NotPrime(p));
    }
    let p2 = p * p;
    let base = y
        .reduce(p2)
        .map_err(|_| JetError::DenominatorNotInvertible(p))?;
    let ctx = JetRingCtx::new(p, base.iter().map(|c| c % p).collect())?;
    let n = ctx.dim();
    Ok(JetPoint {
        ctx,
        coords: base
            .into_iter()
            .map(|c| JetElement { c, v: vec![0; n] })
            .collect(),
    })
}

/// The jet `(y_i mod p^2, e_i)`: the tautological tangent frame placed at `y`.
/// Applying a map to it yields `F(y) mod p^2` and the Jacobian at `y` mod `p`.
pub fn framed_point(y: &Point, p: u64) -> Result<JetPoint, JetError> {
    let mut jet = lift_point(y, p)?;
    for (i, e) in jet.coords.iter_mut().enumerate() {
        e.v[i] = 1;
    }
    Ok(jet)
}
