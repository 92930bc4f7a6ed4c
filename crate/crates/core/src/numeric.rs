//! Fixed-point reals with a 192-bit fractional part, used only to evaluate
//! exact cyclotomic quantities numerically.
//!
//! Every elementary operation truncates at most one unit in the last place;
//! `cos`/`sin` of rational multiples of pi are accurate to well below
//! `2^-160`. [`ULP_BOUND`] is the per-value error budget callers use when
//! accumulating an error bound.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::LazyLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

const FRAC_BITS: u32 = 192;

/// Error budget of one evaluated trigonometric value, as a power of two.
pub const ULP_BOUND_LOG2: i32 = -160;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Real {
    // value = mant / 2^FRAC_BITS
    mant: BigInt,
}

static PI: LazyLock<Real> = LazyLock::new(compute_pi);

impl Real {
    pub fn zero() -> Self {
        Real { mant: BigInt::zero() }
    }

    pub fn from_int(x: &BigInt) -> Self {
        Real { mant: x << FRAC_BITS }
    }

    pub fn from_i64(x: i64) -> Self {
        Self::from_int(&BigInt::from(x))
    }

    pub fn pi() -> Self {
        PI.clone()
    }

    pub fn div_int(&self, d: &BigInt) -> Self {
        Real { mant: self.mant.div_floor(d) }
    }

    pub fn div(&self, d: &Real) -> Self {
        Real { mant: (&self.mant << FRAC_BITS).div_floor(&d.mant) }
    }

    pub fn mul_int(&self, k: &BigInt) -> Self {
        Real { mant: &self.mant * k }
    }

    pub fn abs(&self) -> Self {
        Real { mant: self.mant.abs() }
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn to_f64(&self) -> f64 {
        // keep 64 significant bits before converting
        let bits = self.mant.bits() as i64;
        let drop = (bits - 64).max(0) as u32;
        let head = (&self.mant >> drop).to_f64().unwrap_or(f64::NAN);
        head * 2f64.powi(drop as i32 - FRAC_BITS as i32)
    }

    /// `2^e` as a real (for error bounds).
    pub fn pow2(e: i32) -> Self {
        let shift = FRAC_BITS as i32 + e;
        assert!(shift >= 0, "exponent below precision");
        Real { mant: BigInt::one() << shift as u32 }
    }

    /// `(cos(pi k / m), sin(pi k / m))`.
    pub fn cos_sin_pi_ratio(k: i64, m: u64) -> (Real, Real) {
        let m = m as i64;
        let two_m = 2 * m;
        let k = k.rem_euclid(two_m);
        // sin is odd around m: angle in (pi, 2pi) mirrors with sin negated
        let (k, sin_sign) = if k > m { (two_m - k, -1) } else { (k, 1) };
        // cos is odd around pi/2
        let (k, cos_sign) = if 2 * k > m { (m - k, -1) } else { (k, 1) };
        let x = Self::pi().mul_int(&BigInt::from(k)).div_int(&BigInt::from(m));
        let (c, s) = taylor_cos_sin(&x);
        let c = if cos_sign < 0 { -&c } else { c };
        let s = if sin_sign < 0 { -&s } else { s };
        (c, s)
    }
}

fn taylor_cos_sin(x: &Real) -> (Real, Real) {
    // x in [0, pi/2]
    let mut cos = Real::from_i64(1);
    let mut sin = x.clone();
    let mut term = x.clone(); // x^j / j!
    let mut j: u64 = 1;
    loop {
        term = (&term * x).div_int(&BigInt::from(j + 1));
        j += 1;
        if term.mant.is_zero() {
            break;
        }
        let neg = (j / 2) % 2 == 1;
        let target = if j.is_multiple_of(2) { &mut cos } else { &mut sin };
        *target = if neg { &*target - &term } else { &*target + &term };
    }
    (cos, sin)
}

fn atan_inv(x: u64) -> Real {
    // atan(1/x) = sum (-1)^k / ((2k+1) x^{2k+1})
    let x2 = BigInt::from(x * x);
    let mut power = Real::from_i64(1).div_int(&BigInt::from(x));
    let mut sum = Real::zero();
    let mut k: u64 = 0;
    while !power.mant.is_zero() {
        let term = power.div_int(&BigInt::from(2 * k + 1));
        sum = if k.is_multiple_of(2) { &sum + &term } else { &sum - &term };
        power = power.div_int(&x2);
        k += 1;
    }
    sum
}

fn compute_pi() -> Real {
    // Machin: pi = 16 atan(1/5) - 4 atan(1/239)
    let a = atan_inv(5).mul_int(&BigInt::from(16));
    let b = atan_inv(239).mul_int(&BigInt::from(4));
    &a - &b
}

impl Add for &Real {
    type Output = Real;
    fn add(self, rhs: &Real) -> Real {
        Real { mant: &self.mant + &rhs.mant }
    }
}

impl Sub for &Real {
    type Output = Real;
    fn sub(self, rhs: &Real) -> Real {
        Real { mant: &self.mant - &rhs.mant }
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real { mant: -&self.mant }
    }
}

impl Mul for &Real {
    type Output = Real;
    fn mul(self, rhs: &Real) -> Real {
        Real { mant: (&self.mant * &rhs.mant) >> FRAC_BITS }
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Real {
    fn cmp(&self, other: &Self) -> Ordering {
        self.mant.cmp(&other.mant)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match f.precision() {
            Some(prec) => write!(f, "{:.*}", prec, self.to_f64()),
            None => write!(f, "{}", self.to_f64()),
        }
    }
}
