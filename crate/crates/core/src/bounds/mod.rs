//! The uniform bound on sizes of periodic integral orbits in `A^n`.
//!
//! For a prime `p` put `M = (n + 2) p^n`. The per-prime factor is
//!
//! ```text
//! T(n, p) = prod_{m=1}^{M} (p^m)^(p^M) * ((p^m)^n)!
//! ```
//!
//! and the bound is `C(n) = T(n, 2) * T(n, 3)`. Over `Z[1/N]` the same
//! construction runs with the two smallest primes not dividing `N`; those
//! constants are reported as derived bounds.
//!
//! `C(n)` can only be materialized for `n = 1`, so the primary representation
//! is `log2 C(n)` in double-double precision.

mod dd;

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use thiserror::Error;

use crate::arith;

pub use dd::{ln_factorial, Dd};

/// Largest factorial argument for which the exact product is attempted.
pub const EXACT_FACTORIAL_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("bound not representable: {0}")]
    NotRepresentable(String),
    #[error("invalid prime pair ({p}, {q}) for N = {base}")]
    InvalidPair { p: u64, q: u64, base: u64 },
    #[error("dimension must be at least 1")]
    ZeroDimension,
}

/// Two distinct primes `p < p'`, neither dividing the inverted denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimePair {
    p: u64,
    q: u64,
}

impl PrimePair {
    pub fn new(a: u64, b: u64, base: u64) -> Result<Self, BoundError> {
        let (p, q) = if a < b { (a, b) } else { (b, a) };
        let ok = p != q
            && arith::is_prime(p)
            && arith::is_prime(q)
            && !base.is_multiple_of(p)
            && !base.is_multiple_of(q);
        if !ok {
            return Err(BoundError::InvalidPair { p: a, q: b, base });
        }
        Ok(PrimePair { p, q })
    }

    pub fn standard() -> Self {
        PrimePair { p: 2, q: 3 }
    }

    pub fn first(&self) -> u64 {
        self.p
    }

    pub fn second(&self) -> u64 {
        self.q
    }

    pub fn is_standard(&self) -> bool {
        (self.p, self.q) == (2, 3)
    }
}

impl fmt::Display for PrimePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p, self.q)
    }
}

/// The two smallest primes not dividing `base` (`base = 0` is read as 1).
pub fn choose_primes(base: u64) -> PrimePair {
    let base = base.max(1);
    let mut found = (2..).filter(|&k| arith::is_prime(k) && !base.is_multiple_of(k));
    let p = found.next().unwrap();
    let q = found.next().unwrap();
    PrimePair { p, q }
}

/// `M = (n + 2) p^n`, the number of factors in the per-prime product.
pub fn factor_count(n: usize, p: u64) -> Result<u64, BoundError> {
    let n32 = u32::try_from(n).map_err(|_| too_big(n, p))?;
    p.checked_pow(n32)
        .and_then(|pn| pn.checked_mul(n as u64 + 2))
        .ok_or_else(|| too_big(n, p))
}

fn too_big(n: usize, p: u64) -> BoundError {
    BoundError::NotRepresentable(format!(
        "per-prime factor for n = {n}, p = {p} is out of range"
    ))
}

/// Exponent of `p` contributed by the first factor: `p^M * (1 + 2 + ... + M)`.
pub fn prime_power_exponent(n: usize, p: u64) -> Result<BigUint, BoundError> {
    let m = factor_count(n, p)?;
    let big_m = u32::try_from(m).map_err(|_| too_big(n, p))?;
    Ok(BigUint::from(p).pow(big_m) * BigUint::from(m) * BigUint::from(m + 1) / 2u32)
}

/// `log2 T(n, p)`: exponent part plus the factorial logs.
pub fn per_prime_term_log2(n: usize, p: u64) -> Result<Dd, BoundError> {
    if n == 0 {
        return Err(BoundError::ZeroDimension);
    }
    let exponent = prime_power_exponent(n, p)?;
    let exponent = Dd::from_biguint(&exponent).ok_or_else(|| too_big(n, p))?;
    let log2_p = Dd::from_u64(p).ln() / Dd::ln2();
    let mut total = exponent * log2_p;
    let m = factor_count(n, p)?;
    let mut ln_facts = Dd::ZERO;
    for k in 1..=m {
        let arg = BigUint::from(p).pow((k * n as u64) as u32);
        ln_facts = ln_facts + ln_factorial(&arg).ok_or_else(|| too_big(n, p))?;
    }
    total = total + ln_facts / Dd::ln2();
    if !total.is_finite() {
        return Err(too_big(n, p));
    }
    Ok(total)
}

/// Exact `T(n, p)` as a big integer, when every factorial argument is at most
/// [`EXACT_FACTORIAL_LIMIT`].
pub fn per_prime_term_exact(n: usize, p: u64) -> Result<BigUint, String> {
    let m = factor_count(n, p).map_err(|e| e.to_string())?;
    let largest = m.saturating_mul(n as u64);
    let feasible = u32::try_from(largest)
        .ok()
        .and_then(|e| p.checked_pow(e))
        .is_some_and(|arg| arg <= EXACT_FACTORIAL_LIMIT);
    if !feasible {
        return Err(format!(
            "largest factorial argument {p}^{largest} exceeds {EXACT_FACTORIAL_LIMIT}"
        ));
    }
    let exponent = prime_power_exponent(n, p).map_err(|e| e.to_string())?;
    let exponent = exponent
        .to_u32()
        .ok_or_else(|| "prime-power exponent too large".to_string())?;
    let mut acc = BigUint::from(p).pow(exponent);
    for k in 1..=m {
        acc *= factorial(p.pow((k * n as u64) as u32));
    }
    Ok(acc)
}

/// `k!` by binary splitting.
pub fn factorial(k: u64) -> BigUint {
    fn range_product(lo: u64, hi: u64) -> BigUint {
        // product of lo..=hi
        if lo > hi {
            return BigUint::one();
        }
        if hi - lo < 16 {
            return (lo..=hi).fold(BigUint::one(), |acc, x| acc * x);
        }
        let mid = lo + (hi - lo) / 2;
        range_product(lo, mid) * range_product(mid + 1, hi)
    }
    range_product(2, k)
}

/// The effective bound for dimension `n` and a prime pair.
#[derive(Debug, Clone, PartialEq)]
pub struct EffectiveBound {
    pub n: usize,
    pub primes: PrimePair,
    /// `log2` of the bound; `None` when it is not representable (compares as infinity).
    pub log2_value: Option<Dd>,
    pub exact_value: Option<BigUint>,
    /// Why `exact_value` is absent when it was requested.
    pub exact_note: Option<String>,
}

impl EffectiveBound {
    /// Any pair other than (2, 3) gives a derived bound, not the displayed `C(n)`.
    pub fn is_derived(&self) -> bool {
        !self.primes.is_standard()
    }

    pub fn label(&self) -> &'static str {
        if self.is_derived() {
            "derived bound"
        } else {
            "C(n)"
        }
    }

    /// The bound as a comparison threshold.
    pub fn threshold(&self) -> SizeBound {
        match (&self.exact_value, self.log2_value) {
            (Some(v), _) => SizeBound::Exact(v.clone()),
            (None, Some(l)) => SizeBound::Log2(l),
            (None, None) => SizeBound::Unbounded,
        }
    }
}

/// Computes `log2 C(n)` for the pair, and the exact value when requested and feasible.
pub fn bound_c(
    n: usize,
    primes: PrimePair,
    want_exact: bool,
) -> Result<EffectiveBound, BoundError> {
    if n == 0 {
        return Err(BoundError::ZeroDimension);
    }
    let log2_value = match (
        per_prime_term_log2(n, primes.first()),
        per_prime_term_log2(n, primes.second()),
    ) {
        (Ok(a), Ok(b)) => Some(a + b),
        (Err(BoundError::NotRepresentable(_)), _) | (_, Err(BoundError::NotRepresentable(_))) => {
            None
        }
        (Err(e), _) | (_, Err(e)) => return Err(e),
    };
    let (exact_value, exact_note) = if want_exact {
        match (
            per_prime_term_exact(n, primes.first()),
            per_prime_term_exact(n, primes.second()),
        ) {
            (Ok(a), Ok(b)) => (Some(a * b), None),
            (Err(e), _) | (_, Err(e)) => (None, Some(e)),
        }
    } else {
        (None, None)
    };
    Ok(EffectiveBound {
        n,
        primes,
        log2_value,
        exact_value,
        exact_note,
    })
}

/// A threshold on orbit sizes.
#[derive(Debug, Clone, PartialEq)]
pub enum SizeBound {
    Exact(BigUint),
    Log2(Dd),
    Unbounded,
}

impl SizeBound {
    /// True when `count` is strictly larger than the bound.
    pub fn exceeded_by(&self, count: u64) -> bool {
        match self {
            SizeBound::Exact(b) => BigUint::from(count) > *b,
            // A log2 bound below 64 would have been materialized exactly.
            SizeBound::Log2(l) => (count as f64).log2() > l.to_f64(),
            SizeBound::Unbounded => false,
        }
    }

    /// The bound as a point budget, saturating at `usize::MAX`.
    pub fn as_limit(&self) -> usize {
        match self {
            SizeBound::Exact(b) => b.to_usize().unwrap_or(usize::MAX),
            SizeBound::Log2(l) if l.to_f64() < 63.0 => 2f64.powf(l.to_f64()).floor() as usize,
            _ => usize::MAX,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            SizeBound::Exact(b) if b.bits() <= 128 => b.to_string(),
            SizeBound::Exact(b) => format!("2^{:.14e}", arith::log2_biguint(b)),
            SizeBound::Log2(l) => format!("2^{}", l.to_sig15()),
            SizeBound::Unbounded => "unbounded".to_string(),
        }
    }
}
