//! The Grothendieck ring `Gr(Ver_{p^n})` in the basis of simple objects.
//!
//! Products are computed by the digit recursion that expresses
//! `Gr(Ver_{p^n})` over `Gr(Ver_{p^{n-1}})`, bottoming out in the fusion
//! rule of `Ver_p`. Structure constants are small, so coefficients are
//! `i64` with checked arithmetic.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::digits::{cartan_descendant, steinberg_label};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::params::{SimpleLabel, Ver};
use crate::tilting::{donkin_split, tensor_decompose, truncate};

/// An integer combination of simple objects.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GrElement {
    ver: Ver,
    coeffs: Vec<i64>,
}

impl GrElement {
    pub fn zero(ver: Ver) -> Self {
        GrElement { ver, coeffs: vec![0; ver.num_simples() as usize] }
    }

    /// The class `[L_i]`.
    pub fn basis(ver: Ver, i: SimpleLabel) -> Result<Self> {
        ver.check_simple(i)?;
        let mut e = Self::zero(ver);
        e.coeffs[i.0 as usize] = 1;
        Ok(e)
    }

    pub fn unit(ver: Ver) -> Self {
        Self::basis(ver, SimpleLabel(0)).expect("label 0 exists")
    }

    pub fn from_coeffs(ver: Ver, coeffs: Vec<i64>) -> Result<Self> {
        let k = ver.num_simples();
        if coeffs.len() as u64 != k {
            return Err(Error::out_of_range("coefficient count", coeffs.len() as u64, k, k));
        }
        Ok(GrElement { ver, coeffs })
    }

    pub fn ver(&self) -> Ver {
        self.ver
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: u64) -> i64 {
        self.coeffs[i as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    /// Nonzero `(label, coefficient)` pairs in label order.
    pub fn terms(&self) -> impl Iterator<Item = (SimpleLabel, i64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (SimpleLabel(i as u64), c))
    }

    pub fn add_term(&mut self, i: u64, c: i64) {
        let slot = &mut self.coeffs[i as usize];
        *slot = slot.checked_add(c).expect("coefficient overflow");
    }

    pub fn add_scaled(&mut self, other: &GrElement, c: i64) {
        assert_eq!(self.ver, other.ver);
        for (i, &x) in other.coeffs.iter().enumerate() {
            if x != 0 {
                self.add_term(i as u64, x.checked_mul(c).expect("coefficient overflow"));
            }
        }
    }

    pub fn sub(&self, other: &GrElement) -> GrElement {
        let mut out = self.clone();
        out.add_scaled(other, -1);
        out
    }

    /// Sum of coefficients weighted by `w`.
    pub fn pair_with(&self, w: &[i64]) -> i64 {
        self.coeffs.iter().zip(w).map(|(a, b)| a * b).sum()
    }
}

impl fmt::Display for GrElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms()
            .map(|(i, c)| if c == 1 { format!("{i}") } else { format!("{c}{i}") })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// The fusion rule of `Ver_p`: labels `k` with `|i-j| <= k <=
/// min(i+j, 2(p-2)-i-j)` and `k = i+j (mod 2)`, each once.
pub fn base_fusion(p: u64, i: u64, j: u64) -> Vec<u64> {
    assert!(p >= 2 && i + 2 <= p && j + 2 <= p, "labels of Ver_p are 0..=p-2");
    let lo = i.abs_diff(j);
    let hi = (i + j).min(2 * (p - 2) - i - j);
    (lo..=hi).step_by(2).collect()
}

type Sparse = Vec<(u64, i64)>;

/// `Gr(Ver_{p^n})` with memoized products of simples.
#[derive(Debug)]
pub struct FusionRing {
    ver: Ver,
    parent: Option<Arc<FusionRing>>,
    products: RwLock<HashMap<(u64, u64), Arc<Sparse>>>,
    tiltings: RwLock<HashMap<u64, Arc<GrElement>>>,
    cartan: OnceLock<IntMatrix>,
}

impl FusionRing {
    /// The ring for odd `p`.
    pub fn new(ver: Ver) -> Result<Arc<Self>> {
        if !ver.p.is_odd() {
            return Err(Error::UnsupportedPrime { p: 2, op: "fusion" });
        }
        Ok(Self::build(ver))
    }

    /// Also allows `p = 2`, where the recursion is used with `V = 0` in
    /// `Ver_2`. Not covered by the tilting cross-check.
    pub fn new_experimental(ver: Ver) -> Arc<Self> {
        Self::build(ver)
    }

    fn build(ver: Ver) -> Arc<Self> {
        let parent = ver.parent().map(Self::build);
        Arc::new(FusionRing {
            ver,
            parent,
            products: RwLock::default(),
            tiltings: RwLock::default(),
            cartan: OnceLock::new(),
        })
    }

    pub fn ver(&self) -> Ver {
        self.ver
    }

    pub fn parent(&self) -> Option<&Arc<FusionRing>> {
        self.parent.as_ref()
    }

    fn product(&self, a: u64, b: u64) -> Arc<Sparse> {
        let key = (a.min(b), a.max(b));
        if let Some(v) = self.products.read().expect("cache poisoned").get(&key) {
            return Arc::clone(v);
        }
        let v = Arc::new(self.compute_product(key.0, key.1));
        Arc::clone(self.products.write().expect("cache poisoned").entry(key).or_insert(v))
    }

    fn compute_product(&self, a: u64, b: u64) -> Sparse {
        let p = self.ver.p.get();
        let Some(parent) = &self.parent else {
            return base_fusion(p, a, b).into_iter().map(|k| (k, 1)).collect();
        };
        let (a1, m) = (a / p, a % p);
        let (b1, r) = (b / p, b % p);
        let low = parent.product(a1, b1);
        let mut out = GrElement::zero(self.ver);
        let mut place = |coef: i64, k: u64, terms: &[(u64, i64)]| {
            for &(c, x) in terms {
                out.add_term(c * p + k, coef * x);
            }
        };
        let s = m + r;
        if s < p {
            for k in (m.abs_diff(r)..=s).step_by(2) {
                place(1, k, &low);
            }
        } else {
            let lo = m.abs_diff(r);
            for k in (lo..=p - 1).filter(|k| (s - k) % 2 == 0) {
                let coef = if k + s <= 2 * (p - 2) {
                    1
                } else if k + s >= 2 * (p - 1) {
                    if k == p - 1 {
                        1
                    } else {
                        2
                    }
                } else {
                    0
                };
                if coef > 0 {
                    place(coef, k, &low);
                }
            }
            let v_low = parent.times_v(&low);
            for k in (p..=s).filter(|k| (s - k) % 2 == 0) {
                place(1, k - p, &v_low);
            }
        }
        out.terms().map(|(i, c)| (i.0, c)).collect()
    }

    /// `V * x` for `V = L_1`; zero in `Ver_2`, which has no label 1.
    fn times_v(&self, x: &[(u64, i64)]) -> Sparse {
        if self.ver.num_simples() < 2 {
            return Vec::new();
        }
        let mut out = GrElement::zero(self.ver);
        for &(c, m) in x {
            for &(k, y) in self.product(1, c).iter() {
                out.add_term(k, m * y);
            }
        }
        out.terms().map(|(i, c)| (i.0, c)).collect()
    }

    /// `[L_a] [L_b]`.
    pub fn fuse(&self, a: SimpleLabel, b: SimpleLabel) -> Result<GrElement> {
        self.ver.check_simple(a)?;
        self.ver.check_simple(b)?;
        let mut out = GrElement::zero(self.ver);
        for &(k, c) in self.product(a.0, b.0).iter() {
            out.add_term(k, c);
        }
        Ok(out)
    }

    /// Bilinear extension of [`fuse`](Self::fuse).
    pub fn mul(&self, x: &GrElement, y: &GrElement) -> GrElement {
        assert_eq!(x.ver, self.ver);
        assert_eq!(y.ver, self.ver);
        let mut out = GrElement::zero(self.ver);
        for (a, ca) in x.terms() {
            for (b, cb) in y.terms() {
                let c = ca.checked_mul(cb).expect("coefficient overflow");
                for &(k, n) in self.product(a.0, b.0).iter() {
                    out.add_term(k, c.checked_mul(n).expect("coefficient overflow"));
                }
            }
        }
        out
    }

    /// Image of a class of `Ver_{p^{n-1}}` under the inclusion, `L_j -> L_{jp}`.
    pub fn lift(&self, x: &GrElement) -> GrElement {
        let p = self.ver.p.get();
        let mut out = GrElement::zero(self.ver);
        for (j, c) in x.terms() {
            out.add_term(j.0 * p, c);
        }
        out
    }

    fn cartan(&self) -> &IntMatrix {
        self.cartan.get_or_init(|| cartan_descendant(self.ver))
    }

    /// `[P_i] = sum_j c(s(j), s(i)) [L_j]`.
    pub fn projective_class(&self, i: SimpleLabel) -> Result<GrElement> {
        let ver = self.ver;
        let col = ver.projective_position(steinberg_label(ver, i)?);
        let cartan = self.cartan();
        let mut out = GrElement::zero(ver);
        for j in ver.simples() {
            let row = ver.projective_position(steinberg_label(ver, j)?);
            let c = cartan[(row, col)].to_i64().expect("small Cartan entry");
            out.add_term(j.0, c);
        }
        Ok(out)
    }

    /// Whether `P_i` is simple, i.e. `[P_i] = [L_i]`.
    pub fn is_simple_projective(&self, i: SimpleLabel) -> Result<bool> {
        Ok(self.projective_class(i)? == GrElement::basis(self.ver, i)?)
    }

    /// Class of the tilting object `T_m` for `0 <= m <= p^n - 2` (`p` odd).
    pub fn tilting_class(&self, m: u64) -> Result<GrElement> {
        let ver = self.ver;
        if !ver.p.is_odd() {
            return Err(Error::UnsupportedPrime { p: 2, op: "tilting_class" });
        }
        let last = ver.order() - 2;
        if m > last {
            return Err(Error::out_of_range("tilting index", m, 0, last));
        }
        if let Some(v) = self.tiltings.read().expect("cache poisoned").get(&m) {
            return Ok((**v).clone());
        }
        let v = self.compute_tilting_class(m)?;
        self.tiltings.write().expect("cache poisoned").insert(m, Arc::new(v.clone()));
        Ok(v)
    }

    fn compute_tilting_class(&self, m: u64) -> Result<GrElement> {
        let ver = self.ver;
        let p = ver.p.get();
        let Some(parent) = &self.parent else {
            return GrElement::basis(ver, SimpleLabel(m));
        };
        if m < p {
            return GrElement::basis(ver, SimpleLabel(m));
        }
        if m <= 2 * p - 2 {
            let mut out = GrElement::basis(ver, SimpleLabel(m))?;
            out.add_term(2 * p - 2 - m, 2);
            return Ok(out);
        }
        let (a, b) = donkin_split(ver.p, m);
        let ta = self.tilting_class(a)?;
        let tb = parent.tilting_class(b)?;
        Ok(self.mul(&ta, &self.lift(&tb)))
    }
}

/// Result of comparing tilting tensor products with fusion products.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomCheck {
    pub checked: usize,
    /// First failing pair with both sides.
    pub counterexample: Option<(u64, u64, GrElement, GrElement)>,
}

impl HomCheck {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Compares `[T_i (x) T_j]` computed from characters with
/// `[T_i] [T_j]` computed by fusion, for each given pair.
pub fn check_ring_hom_pairs(
    ring: &FusionRing,
    pairs: impl IntoIterator<Item = (u64, u64)>,
) -> Result<HomCheck> {
    let ver = ring.ver();
    let mut checked = 0;
    for (i, j) in pairs {
        let summands = truncate(ver.p, ver.n, &tensor_decompose(ver.p, i, j));
        let mut lhs = GrElement::zero(ver);
        for (k, c) in summands.iter() {
            lhs.add_scaled(&ring.tilting_class(k)?, c.to_i64().expect("small multiplicity"));
        }
        let rhs = ring.mul(&ring.tilting_class(i)?, &ring.tilting_class(j)?);
        checked += 1;
        if lhs != rhs {
            return Ok(HomCheck { checked, counterexample: Some((i, j, lhs, rhs)) });
        }
    }
    Ok(HomCheck { checked, counterexample: None })
}

/// [`check_ring_hom_pairs`] on `samples` pairs drawn with a seeded RNG.
pub fn check_ring_hom_fusion(ring: &FusionRing, samples: usize, seed: u64) -> Result<HomCheck> {
    let top = ring.ver().order() - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(u64, u64)> = (0..samples).map(|_| (rng.gen_range(0..top), rng.gen_range(0..top))).collect();
    check_ring_hom_pairs(ring, pairs)
}

/// A class written as simples plus classes of non-simple projectives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Folded {
    pub simples: Vec<(SimpleLabel, i64)>,
    /// Projective covers `P_i`, keyed by the simple label `i`.
    pub projectives: Vec<(SimpleLabel, i64)>,
    /// Negative part that no effective presentation absorbs.
    pub remainder: GrElement,
}

impl fmt::Display for Folded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for &(i, c) in &self.simples {
            for _ in 0..c {
                parts.push(format!("L{}", i.0));
            }
        }
        for &(i, c) in &self.projectives {
            for _ in 0..c {
                parts.push(format!("P{}", i.0));
            }
        }
        if !self.remainder.is_zero() {
            parts.push(format!("({})", self.remainder));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

const FOLD_SEARCH_BUDGET: usize = 200_000;

/// Peels classes of non-simple projectives off `v`, maximizing their
/// number (ties broken towards smaller labels); falls back to greedy
/// largest-first peeling when the search is too large.
pub fn fold_projectives(ring: &FusionRing, v: &GrElement) -> Result<Folded> {
    let ver = ring.ver();
    let mut cands: Vec<(SimpleLabel, GrElement)> = Vec::new();
    for i in ver.simples() {
        if !ring.is_simple_projective(i)? {
            cands.push((i, ring.projective_class(i)?));
        }
    }
    let start: Vec<i64> = v.coeffs().iter().map(|&c| c.max(0)).collect();

    let mut best: Option<Vec<i64>> = None;
    let mut counts = vec![0i64; cands.len()];
    let mut budget = FOLD_SEARCH_BUDGET;
    let exhausted = !search(0, &cands, &mut start.clone(), &mut counts, &mut best, &mut budget);
    let chosen = if exhausted { greedy(&cands, &start) } else { best.unwrap_or_else(|| vec![0; cands.len()]) };

    let mut rest = v.clone();
    let mut projectives = Vec::new();
    for ((i, class), &c) in cands.iter().zip(&chosen) {
        if c > 0 {
            rest.add_scaled(class, -c);
            projectives.push((*i, c));
        }
    }
    let simples = rest.terms().filter(|&(_, c)| c > 0).collect();
    let mut remainder = GrElement::zero(ver);
    for (i, c) in rest.terms().filter(|&(_, c)| c < 0) {
        remainder.add_term(i.0, c);
    }
    Ok(Folded { simples, projectives, remainder })
}

fn better(a: &[i64], b: &[i64]) -> bool {
    let (sa, sb): (i64, i64) = (a.iter().sum(), b.iter().sum());
    // more projectives first, then lexicographically more weight on small labels
    sa > sb || (sa == sb && a > b)
}

/// Depth-first enumeration; returns `false` if the budget runs out.
fn search(
    idx: usize,
    cands: &[(SimpleLabel, GrElement)],
    avail: &mut [i64],
    counts: &mut [i64],
    best: &mut Option<Vec<i64>>,
    budget: &mut usize,
) -> bool {
    if *budget == 0 {
        return false;
    }
    *budget -= 1;
    if idx == cands.len() {
        if best.as_ref().is_none_or(|b| better(counts, b)) {
            *best = Some(counts.to_vec());
        }
        return true;
    }
    let class = cands[idx].1.coeffs();
    let max = class
        .iter()
        .zip(avail.iter())
        .filter(|(&c, _)| c > 0)
        .map(|(&c, &a)| a / c)
        .min()
        .unwrap_or(0);
    for take in (0..=max).rev() {
        for (a, &c) in avail.iter_mut().zip(class) {
            *a -= take * c;
        }
        counts[idx] = take;
        let ok = search(idx + 1, cands, avail, counts, best, budget);
        for (a, &c) in avail.iter_mut().zip(class) {
            *a += take * c;
        }
        counts[idx] = 0;
        if !ok {
            return false;
        }
    }
    true
}

fn greedy(cands: &[(SimpleLabel, GrElement)], start: &[i64]) -> Vec<i64> {
    let mut order: Vec<usize> = (0..cands.len()).collect();
    let size = |i: usize| cands[i].1.coeffs().iter().sum::<i64>();
    order.sort_by_key(|&i| (std::cmp::Reverse(size(i)), i));
    let mut avail = start.to_vec();
    let mut counts = vec![0; cands.len()];
    for i in order {
        let class = cands[i].1.coeffs();
        let take = class
            .iter()
            .zip(&avail)
            .filter(|(&c, _)| c > 0)
            .map(|(&c, &a)| a / c)
            .min()
            .unwrap_or(0);
        for (a, &c) in avail.iter_mut().zip(class) {
            *a -= take * c;
        }
        counts[i] = take;
    }
    counts
}
