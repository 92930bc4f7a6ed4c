//! Characters of `SL_2`-modules as symmetric Laurent polynomials in `x`,
//! and their expansion in the basis of Weyl characters.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::params::Prime;

/// A finitely supported map from weight to multiplicity with
/// `coeff(w) == coeff(-w)`. Zero entries are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SymChar {
    coeffs: BTreeMap<i64, BigInt>,
}

impl SymChar {
    pub fn zero() -> Self {
        SymChar::default()
    }

    /// The trivial character `{0: 1}`.
    pub fn one() -> Self {
        Self::weyl(0)
    }

    /// Builds a character from explicit `(weight, multiplicity)` pairs,
    /// rejecting inputs that are not symmetric.
    pub fn from_coeffs(entries: impl IntoIterator<Item = (i64, BigInt)>) -> Result<Self> {
        let mut coeffs = BTreeMap::new();
        for (w, c) in entries {
            *coeffs.entry(w).or_insert_with(BigInt::zero) += c;
        }
        coeffs.retain(|_, c: &mut BigInt| !c.is_zero());
        for (w, c) in &coeffs {
            if coeffs.get(&-w) != Some(c) {
                return Err(Error::NotSymmetric(*w));
            }
        }
        Ok(SymChar { coeffs })
    }

    /// Character of the Weyl module `W_m`: weights `m, m-2, ..., -m`.
    pub fn weyl(m: u64) -> Self {
        let m = m as i64;
        SymChar { coeffs: (0..=m).map(|k| (m - 2 * k, BigInt::one())).collect() }
    }

    pub fn coeff(&self, w: i64) -> BigInt {
        self.coeffs.get(&w).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(w, c)| (*w, c))
    }

    /// Highest weight with nonzero multiplicity.
    pub fn top_weight(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Substitutes `x -> x^p`: weight `w` moves to `p w`.
    pub fn frobenius_twist(&self, p: Prime) -> Self {
        let p = p.get() as i64;
        SymChar { coeffs: self.coeffs.iter().map(|(w, c)| (w * p, c.clone())).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SymChar { coeffs: self.coeffs.iter().map(|(w, x)| (*w, x * c)).collect() }
    }

    /// Multiplicities `d[m]` with `self = sum_m d[m] * weyl(m)`.
    ///
    /// Reads the top weight, subtracts the matching Weyl character, and
    /// repeats. Negative multiplicities are reported as they arise.
    pub fn weyl_expand(&self) -> BTreeMap<u64, BigInt> {
        // Only nonnegative weights matter; a Weyl character W_m contributes 1
        // at each of m, m-2, ..., (m mod 2).
        let mut rest: BTreeMap<i64, BigInt> =
            self.coeffs.range(0..).map(|(w, c)| (*w, c.clone())).collect();
        let mut out = BTreeMap::new();
        while let Some((&top, c)) = rest.iter().next_back() {
            let c = c.clone();
            let mut w = top;
            while w >= 0 {
                let e = rest.entry(w).or_insert_with(BigInt::zero);
                *e -= &c;
                if e.is_zero() {
                    rest.remove(&w);
                }
                w -= 2;
            }
            out.insert(top as u64, c);
        }
        out
    }

    /// Inverse of [`weyl_expand`](Self::weyl_expand).
    pub fn from_weyl_multiplicities<'a>(d: impl IntoIterator<Item = (&'a u64, &'a BigInt)>) -> Self {
        let mut acc = BTreeMap::new();
        for (&m, c) in d {
            let m = m as i64;
            for k in 0..=m {
                *acc.entry(m - 2 * k).or_insert_with(BigInt::zero) += c;
            }
        }
        acc.retain(|_, c: &mut BigInt| !c.is_zero());
        SymChar { coeffs: acc }
    }

    /// The form in which Weyl characters are orthonormal.
    pub fn inner(&self, other: &SymChar) -> BigInt {
        let a = self.weyl_expand();
        let b = other.weyl_expand();
        a.iter()
            .filter_map(|(m, x)| b.get(m).map(|y| x * y))
            .fold(BigInt::zero(), |acc, t| acc + t)
    }

    /// Dimension of the module: the sum of all multiplicities.
    pub fn dim_at_one(&self) -> BigInt {
        self.coeffs.values().fold(BigInt::zero(), |acc, c| acc + c)
    }

    /// All weights share one parity.
    pub fn has_uniform_parity(&self) -> bool {
        let mut parities = self.coeffs.keys().map(|w| w.rem_euclid(2));
        match parities.next() {
            None => true,
            Some(first) => parities.all(|q| q == first),
        }
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.values().all(|c| c.is_positive())
    }
}

impl Add for &SymChar {
    type Output = SymChar;
    fn add(self, rhs: &SymChar) -> SymChar {
        let mut coeffs = self.coeffs.clone();
        for (w, c) in &rhs.coeffs {
            *coeffs.entry(*w).or_insert_with(BigInt::zero) += c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        SymChar { coeffs }
    }
}

impl Sub for &SymChar {
    type Output = SymChar;
    fn sub(self, rhs: &SymChar) -> SymChar {
        let mut coeffs = self.coeffs.clone();
        for (w, c) in &rhs.coeffs {
            *coeffs.entry(*w).or_insert_with(BigInt::zero) -= c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        SymChar { coeffs }
    }
}

impl Mul for &SymChar {
    type Output = SymChar;
    fn mul(self, rhs: &SymChar) -> SymChar {
        let mut coeffs: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (wa, ca) in &self.coeffs {
            for (wb, cb) in &rhs.coeffs {
                *coeffs.entry(wa + wb).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        SymChar { coeffs }
    }
}

impl fmt::Display for SymChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "{{}}");
        }
        let parts: Vec<String> = self.coeffs.iter().rev().map(|(w, c)| format!("{w}:{c}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Checked constructor for a Weyl character from a signed weight.
pub fn weyl_char(m: i64) -> Result<SymChar> {
    if m < 0 {
        return Err(Error::NegativeWeight(m));
    }
    Ok(SymChar::weyl(m as u64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ch(entries: &[(i64, i64)]) -> SymChar {
        SymChar::from_coeffs(entries.iter().map(|&(w, c)| (w, BigInt::from(c)))).unwrap()
    }

    fn expansion(entries: &[(u64, i64)]) -> BTreeMap<u64, BigInt> {
        entries.iter().map(|&(m, c)| (m, BigInt::from(c))).collect()
    }

    #[test]
    fn weyl_basics() {
        assert_eq!(weyl_char(0).unwrap(), ch(&[(0, 1)]));
        assert_eq!(weyl_char(1).unwrap(), ch(&[(-1, 1), (1, 1)]));
        assert_eq!(weyl_char(3).unwrap(), ch(&[(-3, 1), (-1, 1), (1, 1), (3, 1)]));
        assert_eq!(weyl_char(-1), Err(Error::NegativeWeight(-1)));
    }

    #[test]
    fn rejects_asymmetric() {
        assert_eq!(
            SymChar::from_coeffs([(1, BigInt::one())]),
            Err(Error::NotSymmetric(1))
        );
    }

    #[test]
    fn products() {
        let v = SymChar::weyl(1);
        assert_eq!(&v * &v, ch(&[(-2, 1), (0, 2), (2, 1)]));
        assert!((&v * &SymChar::zero()).is_zero());
    }

    #[test]
    fn clebsch_gordan_against_brute_force() {
        // V * W_m = W_{m-1} + W_{m+1}, compared weight by weight
        let v = SymChar::weyl(1);
        for m in 1..30u64 {
            let lhs = &v * &SymChar::weyl(m);
            let rhs = &SymChar::weyl(m - 1) + &SymChar::weyl(m + 1);
            for w in -(m as i64 + 2)..=(m as i64 + 2) {
                assert_eq!(lhs.coeff(w), rhs.coeff(w), "m={m} w={w}");
            }
        }
    }

    #[test]
    fn twist() {
        let p3 = Prime::new(3).unwrap();
        let p2 = Prime::new(2).unwrap();
        assert_eq!(ch(&[(-1, 1), (1, 1)]).frobenius_twist(p3), ch(&[(-3, 1), (3, 1)]));
        assert_eq!(ch(&[(0, 5)]).frobenius_twist(p3), ch(&[(0, 5)]));
        assert_eq!(SymChar::weyl(2).frobenius_twist(p2), ch(&[(-4, 1), (0, 1), (4, 1)]));
    }

    #[test]
    fn expand() {
        assert_eq!(SymChar::weyl(3).weyl_expand(), expansion(&[(3, 1)]));
        let v = SymChar::weyl(1);
        assert_eq!((&v * &v).weyl_expand(), expansion(&[(0, 1), (2, 1)]));
        // non-effective input: W_2 - W_0
        let d = (&SymChar::weyl(2) - &SymChar::weyl(0)).weyl_expand();
        assert_eq!(d, expansion(&[(0, -1), (2, 1)]));
    }

    #[test]
    fn inner_and_dim() {
        for m in 0..6 {
            for k in 0..6 {
                let expect = if m == k { 1 } else { 0 };
                assert_eq!(SymChar::weyl(m).inner(&SymChar::weyl(k)), BigInt::from(expect));
            }
            assert_eq!(SymChar::weyl(m).dim_at_one(), BigInt::from(m + 1));
        }
        assert_eq!(SymChar::zero().dim_at_one(), BigInt::zero());
    }
}
