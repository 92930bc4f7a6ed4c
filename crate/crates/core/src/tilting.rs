//! Indecomposable tilting modules of `SL_2` in characteristic `p`.
//!
//! Characters come from Donkin's recursion `T_{a+pb} = T_a (x) T_b^{(1)}`
//! and are memoized process-wide. Tensor products are split into
//! indecomposables by peeling off the top weight.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, LazyLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::charring::SymChar;
use crate::error::{Error, Result};
use crate::params::{Prime, Ver};
use crate::poly::{chebyshev_family, laurent_division, IntPoly};

/// A direct sum `sum_m mults[m] * T_m` of indecomposable tiltings.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TiltingSum {
    mults: BTreeMap<u64, BigInt>,
}

impl TiltingSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(m: u64) -> Self {
        let mut s = Self::new();
        s.add(m, &BigInt::one());
        s
    }

    /// Adds `c` copies of `T_m`. Entries that reach zero are dropped.
    ///
    /// Panics if a multiplicity would become negative.
    pub fn add(&mut self, m: u64, c: &BigInt) {
        let e = self.mults.entry(m).or_insert_with(BigInt::zero);
        *e += c;
        assert!(!e.is_negative(), "negative tilting multiplicity");
        if e.is_zero() {
            self.mults.remove(&m);
        }
    }

    pub fn mult(&self, m: u64) -> BigInt {
        self.mults.get(&m).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, &BigInt)> {
        self.mults.iter().map(|(m, c)| (*m, c))
    }

    pub fn is_empty(&self) -> bool {
        self.mults.is_empty()
    }

    pub fn len(&self) -> usize {
        self.mults.len()
    }

    /// The character `sum_m mults[m] * tilting_char(p, m)`.
    pub fn character(&self, p: Prime) -> SymChar {
        self.mults
            .iter()
            .fold(SymChar::zero(), |acc, (m, c)| &acc + &tilting_char(p, *m).scale(c))
    }
}

impl FromIterator<(u64, u64)> for TiltingSum {
    fn from_iter<I: IntoIterator<Item = (u64, u64)>>(iter: I) -> Self {
        let mut s = TiltingSum::new();
        for (m, c) in iter {
            s.add(m, &BigInt::from(c));
        }
        s
    }
}

impl fmt::Display for TiltingSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .mults
            .iter()
            .rev()
            .map(|(m, c)| if c.is_one() { format!("T{m}") } else { format!("{c}T{m}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

type CharCache = RwLock<HashMap<(u64, u64), Arc<SymChar>>>;

static CHAR_CACHE: LazyLock<CharCache> = LazyLock::new(Default::default);

/// Character of the indecomposable tilting module `T_m`.
pub fn tilting_char(p: Prime, m: u64) -> Arc<SymChar> {
    let key = (p.get(), m);
    if let Some(c) = CHAR_CACHE.read().expect("cache poisoned").get(&key) {
        return Arc::clone(c);
    }
    let ch = Arc::new(compute_tilting_char(p, m));
    let mut cache = CHAR_CACHE.write().expect("cache poisoned");
    Arc::clone(cache.entry(key).or_insert(ch))
}

fn compute_tilting_char(p: Prime, m: u64) -> SymChar {
    let pv = p.get();
    if m < pv {
        return SymChar::weyl(m);
    }
    if m <= 2 * pv - 2 {
        return &SymChar::weyl(m) + &SymChar::weyl(2 * pv - 2 - m);
    }
    let (a, b) = donkin_split(p, m);
    &*tilting_char(p, a) * &tilting_char(p, b).frobenius_twist(p)
}

/// `(a, b)` with `m = a + p b` and `a` in `[p-1, 2p-2]`; requires `m >= p-1`.
pub fn donkin_split(p: Prime, m: u64) -> (u64, u64) {
    let pv = p.get();
    debug_assert!(m + 1 >= pv);
    let a = (pv - 1) + (m + 1) % pv;
    (a, (m - a) / pv)
}

/// Splits a tilting character into indecomposable summands.
pub fn decompose_tilting(p: Prime, a: &SymChar) -> Result<TiltingSum> {
    let mut rest = a.clone();
    let mut out = TiltingSum::new();
    while let Some(top) = rest.top_weight() {
        let c = rest.coeff(top);
        if c.is_negative() {
            return Err(Error::NegativeLeadingCoefficient { weight: top });
        }
        rest = &rest - &tilting_char(p, top as u64).scale(&c);
        out.add(top as u64, &c);
    }
    Ok(out)
}

/// `T_i (x) T_j` as a sum of indecomposable tiltings.
pub fn tensor_decompose(p: Prime, i: u64, j: u64) -> TiltingSum {
    let prod = &*tilting_char(p, i) * &*tilting_char(p, j);
    decompose_tilting(p, &prod).expect("product of tilting modules is tilting")
}

/// Image in the quotient by the ideal generated by the `n`-th Steinberg
/// module: drops every `T_m` with `m >= p^n - 1`.
pub fn truncate(p: Prime, n: u32, s: &TiltingSum) -> TiltingSum {
    let bound = p.pow(n) - 1;
    TiltingSum { mults: s.mults.range(..bound).map(|(m, c)| (*m, c.clone())).collect() }
}

/// `dim Hom(T_i, T_j)`.
pub fn hom_dim(p: Prime, i: u64, j: u64) -> BigInt {
    tilting_char(p, i).inner(&tilting_char(p, j))
}

/// `d_m = dim Hom(1, V^{(x) 2m})` in the truncated category, `m = 0..=max`.
pub fn invariant_dims(ver: Ver, max: usize) -> Vec<BigInt> {
    let p = ver.p;
    let v = SymChar::weyl(1);
    let mut step_cache: HashMap<u64, TiltingSum> = HashMap::new();
    let mut times_v = |s: &TiltingSum| {
        let mut out = TiltingSum::new();
        for (k, c) in s.iter() {
            let prod = step_cache.entry(k).or_insert_with(|| {
                let ch = &v * &*tilting_char(p, k);
                truncate(p, ver.n, &decompose_tilting(p, &ch).expect("tilting"))
            });
            for (m, d) in prod.iter() {
                out.add(m, &(c * d));
            }
        }
        out
    };
    let unit_summands: Vec<u64> = (0..ver.n).map(|l| 2 * p.pow(l) - 2).collect();
    let mut power = TiltingSum::single(0);
    let mut out = Vec::with_capacity(max + 1);
    for m in 0..=max {
        if m > 0 {
            let once = times_v(&power);
            power = times_v(&once);
        }
        out.push(unit_summands.iter().map(|&k| power.mult(k)).sum());
    }
    out
}

/// Coefficients of `z^m = u^{-2m}`, `m = 0..=max`, in the expansion of
/// `u S_{N-2}(u) / S_{N-1}(u)` with `N = p^n`.
pub fn series_fn(ver: Ver, max: usize) -> Vec<BigInt> {
    let big_n = ver.order() as usize;
    let s = chebyshev_family(big_n - 1);
    let num = &IntPoly::monomial(BigInt::one(), 1) * &s[big_n - 2];
    let (top, coeffs) = laurent_division(&num, &s[big_n - 1], 2 * max + 1);
    debug_assert_eq!(top, 0);
    coeffs.into_iter().step_by(2).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: u64) -> Prime {
        Prime::new(v).unwrap()
    }

    fn weyl_factors(pr: u64, m: u64) -> Vec<u64> {
        tilting_char(p(pr), m).weyl_expand().into_keys().rev().collect()
    }

    #[test]
    fn small_tilting_characters() {
        assert_eq!(weyl_factors(3, 3), vec![3, 1]);
        assert_eq!(weyl_factors(3, 5), vec![5]);
        assert_eq!(weyl_factors(5, 10), vec![10, 8]);
        assert_eq!(tilting_char(p(5), 10).dim_at_one(), BigInt::from(20));
        let t3 = tilting_char(p(3), 3);
        assert_eq!(t3.coeff(3), BigInt::one());
        assert_eq!(t3.coeff(1), BigInt::from(2));
    }

    #[test]
    fn base_case_overlap() {
        // at m = 2p-2 the recursion with b = 0 must give the base case
        for pr in [2u64, 3, 5, 7, 11] {
            let pp = p(pr);
            for m in pr - 1..=2 * pr - 2 {
                let (a, b) = donkin_split(pp, m);
                assert_eq!((a, b), (m, 0));
                let via = &*tilting_char(pp, a) * &tilting_char(pp, b).frobenius_twist(pp);
                assert_eq!(via, compute_tilting_char(pp, m));
            }
        }
    }

    #[test]
    fn decompositions() {
        let p3 = p(3);
        assert_eq!(tensor_decompose(p3, 1, 1), [(2, 1), (0, 1)].into_iter().collect());
        assert_eq!(tensor_decompose(p3, 1, 2), [(3, 1)].into_iter().collect());
        for pr in [2u64, 3, 5, 7] {
            assert_eq!(tensor_decompose(p(pr), 1, pr - 1), [(pr, 1)].into_iter().collect());
        }
        assert_eq!(tensor_decompose(p(5), 2, 2), [(4, 1), (2, 1), (0, 1)].into_iter().collect());
        for i in 0..=2 {
            assert_eq!(tensor_decompose(p3, i, 10 - i).mult(10), BigInt::one());
        }
    }

    #[test]
    fn decompose_rejects_non_tilting() {
        let bad = &SymChar::weyl(0) - &SymChar::weyl(2);
        assert_eq!(
            decompose_tilting(p(3), &bad),
            Err(Error::NegativeLeadingCoefficient { weight: 2 })
        );
    }

    #[test]
    fn truncation() {
        let s: TiltingSum = [(2, 1), (0, 1)].into_iter().collect();
        assert_eq!(truncate(p(3), 1, &s), [(0, 1)].into_iter().collect());
        let s: TiltingSum = [(4, 1), (3, 2)].into_iter().collect();
        assert_eq!(truncate(p(3), 2, &s), s);
        let s: TiltingSum = [(3, 5), (1, 1)].into_iter().collect();
        assert_eq!(truncate(p(2), 2, &s), [(1, 1)].into_iter().collect());
    }

    #[test]
    fn hom_dims() {
        assert_eq!(hom_dim(p(7), 0, 0), BigInt::one());
        assert_eq!(hom_dim(p(3), 4, 6), BigInt::one());
        assert_eq!(hom_dim(p(3), 4, 4), BigInt::from(2));
        assert_eq!(hom_dim(p(3), 16, 16), BigInt::from(4));
    }

    #[test]
    fn invariants_small() {
        let d = invariant_dims(Ver::new(3, 1).unwrap(), 8);
        assert!(d.iter().all(|x| x.is_one()));
        let d = invariant_dims(Ver::new(3, 2).unwrap(), 3);
        assert_eq!(d[0], BigInt::one());
        assert_eq!(d[2], BigInt::from(2));
    }

    #[test]
    fn series_small() {
        let s = series_fn(Ver::new(2, 1).unwrap(), 5);
        assert_eq!(s, [1, 0, 0, 0, 0, 0].map(BigInt::from).to_vec());
        let s = series_fn(Ver::new(2, 2).unwrap(), 4);
        assert_eq!(s, [1, 1, 2, 4, 8].map(BigInt::from).to_vec());
        assert_eq!(series_fn(Ver::new(3, 2).unwrap(), 2)[2], BigInt::from(2));
    }

    #[test]
    fn fourth_power_of_v() {
        // V^4 = T_4 + 3 T_2 + T_0 for p = 3, n = 2
        let p3 = p(3);
        let v = SymChar::weyl(1);
        let v4 = &(&v * &v) * &(&v * &v);
        let s = truncate(p3, 2, &decompose_tilting(p3, &v4).unwrap());
        assert_eq!(s, [(4, 1), (2, 3), (0, 1)].into_iter().collect());
    }
}
