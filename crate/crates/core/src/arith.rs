//! Small-integer number theory shared by the modular code paths.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Deterministic primality test for `u64` (trial division up to the square root
/// is plenty for the moduli this crate touches).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime divisors of `n`, ascending.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// p-adic valuation of a nonzero integer; `None` for zero.
pub fn valuation(x: &BigInt, p: u64) -> Option<u32> {
    if x.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut x = x.clone();
    let mut v = 0;
    loop {
        let (q, r) = x.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        x = q;
        v += 1;
    }
}

/// Strips every prime factor shared with `n` from `x` (the part of `x` coprime to `n`).
pub fn coprime_part(x: &BigUint, n: u64) -> BigUint {
    let mut x = x.clone();
    if n <= 1 || x.is_zero() {
        return x;
    }
    let n = BigUint::from(n);
    loop {
        let g = x.gcd(&n);
        if g.is_one() {
            return x;
        }
        x /= g;
    }
}

/// True when every prime factor of `d` divides `n` (i.e. `d | n^k` for some `k`).
pub fn divides_power_of(d: &BigInt, n: u64) -> bool {
    coprime_part(d.magnitude(), n).is_one()
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, when it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

/// Least nonnegative residue of a big integer.
pub fn reduce_int(x: &BigInt, m: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(m));
    r.to_u64().expect("residue below modulus")
}

/// Residue of a rational modulo `m`; `None` when the denominator is not a unit.
pub fn reduce_rational(x: &BigRational, m: u64) -> Option<u64> {
    let num = reduce_int(x.numer(), m);
    let den = reduce_int(x.denom(), m);
    inv_mod(den, m).map(|inv| mul_mod(num, inv, m))
}

/// Signed residue in `(-m/2, m/2]`, used for readable output.
pub fn signed_residue(r: u64, m: u64) -> i128 {
    let r = r as i128;
    let m = m as i128;
    if 2 * r > m {
        r - m
    } else {
        r
    }
}

/// floor(log2(x)) plus the fractional part computed from the top 64 bits.
pub fn log2_biguint(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 64 {
        return (x.to_u64().unwrap() as f64).log2();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().unwrap();
    (top as f64).log2() + shift as f64
}
