//! Univariate integer polynomials and the Chebyshev family `S_m`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Dense polynomial with integer coefficients, lowest degree first.
/// Trailing zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The monomial `c * u^d`.
    pub fn monomial(c: BigInt, d: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); d + 1];
        coeffs[d] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> BigInt {
        self.coeffs.get(d).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Multiplies by `u^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    /// Splits `self = plus - minus` where both parts have nonnegative
    /// coefficients and disjoint support.
    pub fn split_signs(&self) -> (IntPoly, IntPoly) {
        let plus = self.coeffs.iter().map(|c| if c.is_positive() { c.clone() } else { BigInt::zero() });
        let minus = self.coeffs.iter().map(|c| if c.is_negative() { -c } else { BigInt::zero() });
        (Self::from_coeffs(plus.collect()), Self::from_coeffs(minus.collect()))
    }

    /// Horner evaluation in any ring that integers embed into.
    pub fn eval_with<R>(&self, x: &R, zero: R, embed: impl Fn(&BigInt) -> R) -> R
    where
        for<'a> &'a R: Mul<&'a R, Output = R> + Add<&'a R, Output = R>,
    {
        let mut acc = zero;
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + &embed(c);
        }
        acc
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::from_coeffs((0..n).map(|d| self.coeff(d) + rhs.coeff(d)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::from_coeffs((0..n).map(|d| self.coeff(d) - rhs.coeff(d)).collect())
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(out)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match d {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if d == 1 {
                        write!(f, "u")?;
                    } else {
                        write!(f, "u^{d}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// The Chebyshev polynomials of the second kind in the normalization
/// `S_0 = 1`, `S_1 = u`, `S_m = u S_{m-1} - S_{m-2}`, so that
/// `S_m(t + 1/t) = (t^{m+1} - t^{-m-1}) / (t - 1/t)`.
///
/// Returns `[S_0, ..., S_max]`.
pub fn chebyshev_family(max: usize) -> Vec<IntPoly> {
    let u = IntPoly::monomial(BigInt::one(), 1);
    let mut out = vec![IntPoly::one()];
    if max >= 1 {
        out.push(u.clone());
    }
    for m in 2..=max {
        let next = &(&u * &out[m - 1]) - &out[m - 2];
        out.push(next);
    }
    out
}

pub fn chebyshev_s(m: usize) -> IntPoly {
    chebyshev_family(m).pop().expect("family is nonempty")
}

/// Expands `num / den` as a Laurent series in `u^{-1}`, returning the
/// coefficients of `u^{d}, u^{d-1}, ...` (`terms` of them) where
/// `d = deg num - deg den`. The divisor must be monic.
pub fn laurent_division(num: &IntPoly, den: &IntPoly, terms: usize) -> (i64, Vec<BigInt>) {
    let dd = den.degree().expect("division by zero polynomial");
    assert!(den.leading().is_some_and(One::is_one), "divisor must be monic");
    let Some(dn) = num.degree() else {
        return (0, vec![BigInt::zero(); terms]);
    };
    let top = dn as i64 - dd as i64;
    // Work with the remainder as a map from exponent (possibly negative) to
    // coefficient, stored densely with an offset.
    let low = dn as i64 - (terms as i64) - dd as i64 - 1;
    let offset = -low.min(0);
    let mut rem = vec![BigInt::zero(); (dn as i64 + offset + 1) as usize];
    for (d, c) in num.coeffs().iter().enumerate() {
        rem[(d as i64 + offset) as usize] = c.clone();
    }
    let mut out = Vec::with_capacity(terms);
    for t in 0..terms as i64 {
        let e = top - t; // exponent of the quotient term
        let lead_exp = e + dd as i64;
        let idx = lead_exp + offset;
        let c = if idx >= 0 { rem[idx as usize].clone() } else { BigInt::zero() };
        if !c.is_zero() {
            for (k, dc) in den.coeffs().iter().enumerate() {
                if dc.is_zero() {
                    continue;
                }
                let pos = e + k as i64 + offset;
                if pos >= 0 {
                    rem[pos as usize] -= &c * dc;
                }
            }
        }
        out.push(c);
    }
    (top, out)
}
