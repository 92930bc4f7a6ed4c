//! Parameters shared by every module: the characteristic `p`, the level `n`,
//! and the two label systems used for objects of `Ver_{p^n}`.

use std::fmt;

use crate::error::{Error, Result};

/// A prime number, validated on construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn is_odd(self) -> bool {
        self.0 != 2
    }

    pub fn pow(self, e: u32) -> u64 {
        self.0.pow(e)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Label of a simple object `L_i` of `Ver_{p^n}` in the digit labeling:
/// `i` ranges over `[0, p^{n-1}(p-1) - 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleLabel(pub u64);

/// Highest weight `s` of an indecomposable projective `T_s` of `Ver_{p^n}`,
/// `s` in `[p^{n-1} - 1, p^n - 2]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjIndex(pub u64);

impl fmt::Display for SimpleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L{}", self.0)
    }
}

impl fmt::Display for ProjIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T{}", self.0)
    }
}

/// The pair `(p, n)` naming the category `Ver_{p^n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ver {
    pub p: Prime,
    pub n: u32,
}

impl Ver {
    pub fn new(p: u64, n: u32) -> Result<Self> {
        let p = Prime::new(p)?;
        if n == 0 {
            return Err(Error::InvalidLevel(n));
        }
        Ok(Ver { p, n })
    }

    pub fn from_prime(p: Prime, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidLevel(n));
        }
        Ok(Ver { p, n })
    }

    /// `p^n`.
    pub fn order(self) -> u64 {
        self.p.pow(self.n)
    }

    /// Number of simple objects, `p^{n-1}(p-1)`.
    pub fn num_simples(self) -> u64 {
        self.p.pow(self.n - 1) * (self.p.get() - 1)
    }

    /// Smallest projective index, `p^{n-1} - 1`.
    pub fn first_projective(self) -> u64 {
        self.p.pow(self.n - 1) - 1
    }

    /// Largest projective index, `p^n - 2`.
    pub fn last_projective(self) -> u64 {
        self.order() - 2
    }

    pub fn projectives(self) -> impl Iterator<Item = ProjIndex> {
        (self.first_projective()..=self.last_projective()).map(ProjIndex)
    }

    pub fn simples(self) -> impl Iterator<Item = SimpleLabel> {
        (0..self.num_simples()).map(SimpleLabel)
    }

    pub fn check_simple(self, i: SimpleLabel) -> Result<()> {
        if i.0 < self.num_simples() {
            Ok(())
        } else {
            Err(Error::out_of_range("simple label", i.0, 0, self.num_simples() - 1))
        }
    }

    pub fn check_projective(self, s: ProjIndex) -> Result<()> {
        if (self.first_projective()..=self.last_projective()).contains(&s.0) {
            Ok(())
        } else {
            Err(Error::out_of_range(
                "projective index",
                s.0,
                self.first_projective(),
                self.last_projective(),
            ))
        }
    }

    /// The category one level down, `Ver_{p^{n-1}}`, if `n >= 2`.
    pub fn parent(self) -> Option<Ver> {
        (self.n >= 2).then(|| Ver { p: self.p, n: self.n - 1 })
    }

    /// Position of a projective index within `[p^{n-1}-1, p^n-2]`.
    pub fn projective_position(self, s: ProjIndex) -> usize {
        (s.0 - self.first_projective()) as usize
    }
}

impl fmt::Display for Ver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ver_{{{}^{}}}", self.p, self.n)
    }
}
