//! Double-double reals: an unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`,
//! giving about 106 bits of mantissa. Only the operations the bound
//! computation needs are provided.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Dd {
    hi: f64,
    lo: f64,
}

const LN2: Dd = Dd {
    hi: std::f64::consts::LN_2,
    lo: 2.3190468138462996e-17,
};

const LN_2PI: Dd = Dd {
    hi: 1.8378770664093456,
    lo: -7.756588316134483e-17,
};

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    pub const fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn from_u64(x: u64) -> Dd {
        let hi = x as f64;
        // The rounding error of the conversion is exactly representable.
        let lo = (x as i128 - hi as i128) as f64;
        let (hi, lo) = quick_two_sum(hi, lo);
        Dd { hi, lo }
    }

    /// Nearest double-double to a big integer; `None` beyond the `f64` range.
    pub fn from_biguint(x: &BigUint) -> Option<Dd> {
        if x.is_zero() {
            return Some(Dd::ZERO);
        }
        let bits = x.bits();
        if bits > 1023 {
            return None;
        }
        if bits <= 64 {
            return Some(Dd::from_u64(x.to_u64().unwrap()));
        }
        // Two 53-bit chunks cover 106 bits, then a residual tail.
        let shift = bits.saturating_sub(106);
        let top = x >> shift;
        let head = (&top >> 53u32).to_u64().unwrap();
        let mid = (&top & BigUint::from((1u64 << 53) - 1)).to_u64().unwrap();
        let scale = 2f64.powi(shift as i32);
        let hi = head as f64 * 2f64.powi(53) * scale;
        let lo = mid as f64 * scale;
        let (hi, lo) = quick_two_sum(hi, lo);
        Some(Dd { hi, lo })
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    pub fn abs(self) -> Dd {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn ln2() -> Dd {
        LN2
    }

    /// Natural logarithm by argument reduction to `[1/sqrt 2, sqrt 2)` and the
    /// series `ln m = 2 atanh((m - 1)/(m + 1))`; relative error near `1e-31`.
    pub fn ln(self) -> Dd {
        assert!(self.hi > 0.0, "ln of non-positive value");
        let mut k = self.hi.log2().floor() as i32;
        let mut m = self.mul_pow2(-k);
        if m.hi > std::f64::consts::SQRT_2 {
            m = m.mul_pow2(-1);
            k += 1;
        }
        let s = (m - Dd::ONE) / (m + Dd::ONE);
        let s2 = s * s;
        let mut term = s;
        let mut sum = s;
        let mut j = 1u32;
        loop {
            term = term * s2;
            let add = term / Dd::from_f64((2 * j + 1) as f64);
            sum = sum + add;
            if add.hi.abs() < 1e-34 * sum.hi.abs() || j > 60 {
                break;
            }
            j += 1;
        }
        sum.mul_pow2(1) + LN2 * Dd::from_f64(k as f64)
    }

    /// `ln x` for a big integer, valid far beyond the `f64` range.
    pub fn ln_biguint(x: &BigUint) -> Dd {
        let bits = x.bits();
        if bits <= 1000 {
            return Dd::from_biguint(x).expect("in range").ln();
        }
        let shift = bits - 900;
        let top = Dd::from_biguint(&(x >> shift)).expect("in range");
        top.ln() + LN2 * Dd::from_u64(shift)
    }

    fn mul_pow2(self, k: i32) -> Dd {
        let s = 2f64.powi(k);
        Dd {
            hi: self.hi * s,
            lo: self.lo * s,
        }
    }

    /// Decimal rendering with 15 significant digits.
    pub fn to_sig15(self) -> String {
        format!("{:.14e}", self.to_f64())
    }
}

/// `ln(z!)` for a big integer `z`.
///
/// Below 30 the logarithms are summed directly; above, the Stirling series
/// with ten Bernoulli correction terms is used, whose truncation error is
/// below `1e-29` in absolute terms. Relative error per call is well under
/// `1e-25`. Returns `None` when `z ln z` leaves the `f64` range.
pub fn ln_factorial(z: &BigUint) -> Option<Dd> {
    if let Some(small) = z.to_u64().filter(|&v| v < 30) {
        let mut acc = Dd::ZERO;
        for k in 2..=small {
            acc = acc + Dd::from_u64(k).ln();
        }
        return Some(acc);
    }
    let zd = Dd::from_biguint(z)?;
    let lnz = Dd::ln_biguint(z);
    let main = zd * lnz - zd + (LN_2PI + lnz) * Dd::from_f64(0.5);
    if !main.is_finite() {
        return None;
    }
    // B_{2k} / (2k (2k - 1)) for k = 1..10.
    const NUM: [f64; 10] = [
        1.0, -1.0, 1.0, -1.0, 1.0, -691.0, 1.0, -3617.0, 43867.0, -174611.0,
    ];
    const DEN: [f64; 10] = [
        12.0, 360.0, 1260.0, 1680.0, 1188.0, 360360.0, 156.0, 122400.0, 244188.0, 125400.0,
    ];
    let inv = Dd::ONE / zd;
    let inv2 = inv * inv;
    let mut pow = inv;
    let mut corr = Dd::ZERO;
    for (num, den) in NUM.iter().zip(DEN.iter()) {
        corr = corr + pow * Dd::from_f64(*num) / Dd::from_f64(*den);
        pow = pow * inv2;
    }
    Some(main + corr)
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, b: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, b.hi);
        let (t1, t2) = two_sum(self.lo, b.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Dd { hi, lo }
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, b: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, b.hi);
        let p2 = p2 + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b * Dd::from_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b * Dd::from_f64(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::from_f64(q3)
    }
}

impl fmt::Display for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sig15())
    }
}
