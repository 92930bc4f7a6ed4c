//! Base-`p` digit combinatorics for `Ver_{p^n}`.
//!
//! Two label systems appear throughout: projective indices `s` (highest
//! weights of the indecomposable projectives `T_s`, `s` in
//! `[p^{n-1}-1, p^n-2]`) and simple labels `i` (digit strings with leading
//! digit at most `p-2`). Matrices indexed by projectives use the position
//! `s - (p^{n-1}-1)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::params::{Prime, ProjIndex, SimpleLabel, Ver};
use crate::tilting::tilting_char;

/// The `n` base-`p` digits of an integer, most significant first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DigitString {
    p: Prime,
    digits: Vec<u64>,
}

impl DigitString {
    /// The `n`-digit expansion of `value`; fails if `value >= p^n`.
    pub fn new(p: Prime, n: u32, value: u64) -> Result<Self> {
        let top = p.pow(n);
        if value >= top {
            return Err(Error::out_of_range("value", value, 0, top - 1));
        }
        let pv = p.get();
        let mut digits = vec![0; n as usize];
        let mut v = value;
        for d in digits.iter_mut().rev() {
            *d = v % pv;
            v /= pv;
        }
        Ok(DigitString { p, digits })
    }

    pub fn from_digits(p: Prime, digits: Vec<u64>) -> Result<Self> {
        if let Some(&d) = digits.iter().find(|&&d| d >= p.get()) {
            return Err(Error::out_of_range("digit", d, 0, p.get() - 1));
        }
        Ok(DigitString { p, digits })
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn value(&self) -> u64 {
        self.digits.iter().fold(0, |acc, d| acc * self.p.get() + d)
    }

    /// Number of trailing zero digits.
    pub fn trailing_zeros(&self) -> usize {
        self.digits.iter().rev().take_while(|&&d| d == 0).count()
    }

    /// Last nonzero digit, if any.
    pub fn last_nonzero(&self) -> Option<u64> {
        self.digits.iter().rev().copied().find(|&d| d != 0)
    }
}

impl fmt::Display for DigitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.p.get() > 10 { "," } else { "" };
        let s: Vec<String> = self.digits.iter().map(u64::to_string).collect();
        write!(f, "{}_{}", s.join(sep), self.p)
    }
}

/// `a* = p - 1 - a` for a base-`p` digit.
#[inline]
pub fn star(p: Prime, d: u64) -> u64 {
    p.get() - 1 - d
}

/// All values `a_1 p^{n-1} +- a_2 p^{n-2} +- ... +- a_n`.
pub fn descendants(a: u64, p: Prime, n: u32) -> Result<BTreeSet<u64>> {
    let lo = p.pow(n - 1);
    let hi = p.pow(n) - 1;
    if !(lo..=hi).contains(&a) {
        return Err(Error::out_of_range("descendant root", a, lo, hi));
    }
    let ds = DigitString::new(p, n, a)?;
    let mut acc: BTreeSet<i64> = BTreeSet::from([ds.digits[0] as i64]);
    for &d in &ds.digits[1..] {
        let pv = p.get() as i64;
        let d = d as i64;
        acc = acc.iter().flat_map(|x| [x * pv + d, x * pv - d]).collect();
    }
    Ok(acc.into_iter().map(|x| x as u64).collect())
}

fn descendant_sets(ver: Ver) -> Vec<BTreeSet<u64>> {
    ver.projectives()
        .map(|s| descendants(s.0 + 1, ver.p, ver.n).expect("projective range"))
        .collect()
}

/// 0/1 decomposition matrix: rows are projective indices, columns `j` in
/// `[0, p^n - 2]`, `d_{ij} = 1` iff `j + 1` descends from `i + 1`.
pub fn decomposition_matrix(ver: Ver) -> IntMatrix {
    let sets = descendant_sets(ver);
    let cols = (ver.order() - 1) as usize;
    IntMatrix::from_fn(sets.len(), cols, |r, j| {
        if sets[r].contains(&(j as u64 + 1)) {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    })
}

/// Weyl multiplicities of `T_i` for any `i` in `[0, p^n - 2]`, read off the
/// tilting character.
pub fn extended_decomposition_row(ver: Ver, i: u64) -> Result<BTreeMap<u64, BigInt>> {
    let last = ver.order() - 2;
    if i > last {
        return Err(Error::out_of_range("tilting index", i, 0, last));
    }
    Ok(tilting_char(ver.p, i).weyl_expand())
}

/// The decomposition matrix rebuilt from tilting characters.
pub fn character_decomposition_matrix(ver: Ver) -> IntMatrix {
    let cols = (ver.order() - 1) as usize;
    let mut d = IntMatrix::zeros(ver.num_simples() as usize, cols);
    for (r, s) in ver.projectives().enumerate() {
        for (j, c) in extended_decomposition_row(ver, s.0).expect("projective range") {
            d[(r, j as usize)] = c;
        }
    }
    d
}

/// Cartan matrix by counting common descendants.
pub fn cartan_descendant(ver: Ver) -> IntMatrix {
    let sets = descendant_sets(ver);
    let k = sets.len();
    IntMatrix::from_fn(k, k, |i, j| BigInt::from(sets[i].intersection(&sets[j]).count()))
}

/// Cartan matrix as `D D^T` with `D` taken from tilting characters.
pub fn cartan_characters(ver: Ver) -> IntMatrix {
    let d = character_decomposition_matrix(ver);
    d.mul(&d.transpose())
}

/// Cartan matrix from the Kronecker recursion, in the recursion's native
/// order. Returns the matrix and, for each raw index, the label `a = s + 1`
/// of the projective it addresses.
///
/// For odd `p` the index of `F (x) G` is `outer * dim(G) + inner`, where
/// the outer factor addresses the least significant digit, so the label is
/// `inner_label * p + outer_digit`.
pub fn kronecker_cartan_raw(ver: Ver) -> (IntMatrix, Vec<u64>) {
    if ver.p.is_odd() {
        kronecker_odd(ver)
    } else {
        kronecker_two(ver.n)
    }
}

fn kronecker_odd(ver: Ver) -> (IntMatrix, Vec<u64>) {
    let p = ver.p.get() as usize;
    let delta = |c: bool| if c { BigInt::one() } else { BigInt::zero() };
    let a = IntMatrix::from_fn(p, p, |i, j| delta(i + 1 == j) + delta(i == j + 1));
    let b = IntMatrix::from_fn(p, p, |i, j| delta(i + j == p - 1) + delta(i + j == p + 1));
    let s = IntMatrix::from_fn(p, p, |i, j| delta(i + j == p));
    let d = IntMatrix::from_fn(p, p, |i, j| {
        if i != j {
            BigInt::zero()
        } else if i == 0 {
            BigInt::one()
        } else {
            BigInt::from(2)
        }
    });
    let two_a = a.scale(&BigInt::from(2));
    let digits: Vec<usize> = (1..p).collect();
    let mut x = IntMatrix::identity(p - 1);
    let mut z = a.submatrix(&digits, &digits);
    let mut labels: Vec<u64> = (1..p as u64).collect();
    for _ in 1..ver.n {
        let nx = d.kron(&x).add(&s.kron(&z));
        let nz = two_a.kron(&x).add(&b.kron(&z));
        labels = (0..p as u64)
            .flat_map(|outer| labels.iter().map(move |l| l * p as u64 + outer))
            .collect();
        x = nx;
        z = nz;
    }
    (x, labels)
}

fn kronecker_two(n: u32) -> (IntMatrix, Vec<u64>) {
    let m = |rows: [[i64; 2]; 2]| IntMatrix::from_rows(&rows.map(|r| r.to_vec()));
    let e00 = m([[1, 0], [0, 0]]);
    let e11 = m([[0, 0], [0, 1]]);
    let plus_top = m([[2, 1], [1, 0]]);
    let plus_bottom = m([[0, 0], [0, 2]]);

    let mut c_prev = IntMatrix::identity(1);
    let mut l_prev: Vec<u64> = vec![1];
    if n == 1 {
        return (c_prev, l_prev);
    }
    let mut c_plus = IntMatrix::from_rows(&[vec![2]]);
    let mut l_plus: Vec<u64> = vec![3];
    for k in 2..=n {
        let c = e00.kron(&c_plus).add(&e11.kron(&c_prev));
        let labels: Vec<u64> = l_plus.iter().copied().chain(l_prev.iter().map(|l| 2 * l)).collect();
        if k == n {
            return (c, labels);
        }
        c_plus = plus_top.kron(&c_plus).add(&plus_bottom.kron(&c_prev));
        l_plus = labels.iter().map(|l| 2 * l + 1).collect();
        c_prev = c;
        l_prev = labels;
    }
    unreachable!()
}

/// Kronecker-route Cartan matrix reordered to projective positions.
pub fn cartan_kronecker(ver: Ver) -> IntMatrix {
    let (raw, labels) = kronecker_cartan_raw(ver);
    let first = ver.first_projective();
    let mut perm = vec![0usize; labels.len()];
    for (raw_idx, a) in labels.iter().enumerate() {
        perm[(a - 1 - first) as usize] = raw_idx;
    }
    raw.permuted(&perm)
}

/// One block of `Ver_{p^n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Block {
    /// Number of trailing base-`p` zeros of `s + 1` for members `s`.
    pub level: u32,
    pub members: Vec<ProjIndex>,
}

impl Block {
    /// A level-`n-1` block is a single simple projective.
    pub fn is_simple_projective(&self, ver: Ver) -> bool {
        self.level + 1 == ver.n
    }

    pub fn expected_size(&self, ver: Ver) -> u64 {
        if self.is_simple_projective(ver) {
            1
        } else {
            ver.p.pow(ver.n - 2 - self.level) * (ver.p.get() - 1)
        }
    }

    pub fn expected_det(&self, ver: Ver) -> BigInt {
        if self.is_simple_projective(ver) {
            BigInt::one()
        } else {
            num_traits::pow(BigInt::from(ver.p.get()), ver.p.pow(ver.n - 2 - self.level) as usize)
        }
    }

    pub fn positions(&self, ver: Ver) -> Vec<usize> {
        self.members.iter().map(|&s| ver.projective_position(s)).collect()
    }
}

/// Partition of the projectives into blocks, ordered by smallest member.
pub fn block_partition(ver: Ver) -> Vec<Block> {
    let p = ver.p.get();
    let mut by_key: BTreeMap<(u64, u32, u64), Vec<ProjIndex>> = BTreeMap::new();
    for s in ver.projectives() {
        let ds = DigitString::new(ver.p, ver.n, s.0 + 1).expect("in range");
        let last = ds.last_nonzero().expect("nonzero");
        let key = (s.0 % 2, ds.trailing_zeros() as u32, last.min(p - last));
        by_key.entry(key).or_default().push(s);
    }
    let mut blocks: Vec<Block> = by_key
        .into_iter()
        .map(|((_, level, _), members)| Block { level, members })
        .collect();
    blocks.sort_by_key(|b| b.members[0]);
    blocks
}

/// Index of the block containing each projective position.
pub fn block_index(ver: Ver, blocks: &[Block]) -> Vec<usize> {
    let mut out = vec![usize::MAX; ver.num_simples() as usize];
    for (b, block) in blocks.iter().enumerate() {
        for &s in &block.members {
            out[ver.projective_position(s)] = b;
        }
    }
    out
}

/// Highest weight `s(i) = p^{n-1} - 1 + (i_1 i_2* ... i_n*)_p` of the
/// projective cover of `L_i`.
pub fn steinberg_label(ver: Ver, i: SimpleLabel) -> Result<ProjIndex> {
    ver.check_simple(i)?;
    let ds = DigitString::new(ver.p, ver.n, i.0)?;
    let p = ver.p.get();
    let v = ds.digits.iter().enumerate().fold(0, |acc, (k, &d)| {
        acc * p + if k == 0 { d } else { star(ver.p, d) }
    });
    Ok(ProjIndex(ver.first_projective() + v))
}

/// Inverse of [`steinberg_label`].
pub fn simple_of_projective(ver: Ver, s: ProjIndex) -> Result<SimpleLabel> {
    ver.check_projective(s)?;
    let t = DigitString::new(ver.p, ver.n, s.0 - ver.first_projective())?;
    let p = ver.p.get();
    let v = t.digits.iter().enumerate().fold(0, |acc, (k, &d)| {
        acc * p + if k == 0 { d } else { star(ver.p, d) }
    });
    Ok(SimpleLabel(v))
}

/// `dim Ext^1(L_a, L_b)`, which is 0 or 1 (`p` odd only).
pub fn ext1(ver: Ver, a: SimpleLabel, b: SimpleLabel) -> Result<u32> {
    if !ver.p.is_odd() {
        return Err(Error::UnsupportedPrime { p: 2, op: "ext1" });
    }
    ver.check_simple(a)?;
    ver.check_simple(b)?;
    let da = DigitString::new(ver.p, ver.n, a.0)?;
    let db = DigitString::new(ver.p, ver.n, b.0)?;
    let diff: Vec<usize> = (0..da.len()).filter(|&k| da.digits[k] != db.digits[k]).collect();
    let p = ver.p.get();
    let hit = match diff.as_slice() {
        [k, l] if *l == k + 1 => {
            da.digits[*k].abs_diff(db.digits[*k]) == 1 && da.digits[*l] + db.digits[*l] == p - 2
        }
        _ => false,
    };
    Ok(u32::from(hit))
}

/// Image of a simple object under the Frobenius functor
/// `Ver_{p^n} -> Ver_{p^{n-1}} (x) Ver_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FrobeniusImage {
    Zero,
    /// `L_lower (x) L_base` with `lower` a label of `Ver_{p^{n-1}}` and
    /// `base` a label of `Ver_p`.
    Pair { lower: SimpleLabel, base: SimpleLabel },
}

/// Frobenius functor on simples; needs `p` odd and `n >= 2`.
pub fn frobenius_on_simple(ver: Ver, i: SimpleLabel) -> Result<FrobeniusImage> {
    if !ver.p.is_odd() {
        return Err(Error::UnsupportedPrime { p: 2, op: "frobenius_on_simple" });
    }
    if ver.n < 2 {
        return Err(Error::InvalidLevel(ver.n));
    }
    ver.check_simple(i)?;
    let p = ver.p.get();
    let lead = ver.p.pow(ver.n - 1);
    let (r, b) = (i.0 / lead, i.0 % lead);
    if b >= lead - ver.p.pow(ver.n - 2) {
        return Ok(FrobeniusImage::Zero);
    }
    if r % 2 == 0 {
        return Ok(FrobeniusImage::Pair { lower: SimpleLabel(b), base: SimpleLabel(r) });
    }
    let sub = ver.p.pow(ver.n - 2);
    let (b1, rest) = (b / sub, b % sub);
    Ok(FrobeniusImage::Pair {
        lower: SimpleLabel((p - 2 - b1) * sub + rest),
        base: SimpleLabel(p - 2 - r),
    })
}

/// `Prod_k (i_k + 1)`, the categorical dimension of `L_i` lifted to `Z`,
/// together with its residue mod `p`.
pub fn dim_simple(ver: Ver, i: SimpleLabel) -> Result<(BigInt, u64)> {
    ver.check_simple(i)?;
    let ds = DigitString::new(ver.p, ver.n, i.0)?;
    let d = ds.digits.iter().fold(BigInt::one(), |acc, &x| acc * (x + 1));
    let r = ds.digits.iter().fold(1u64, |acc, &x| acc * (x + 1) % ver.p.get());
    Ok((d, r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::find_permutation_equivalence;

    fn v(p: u64, n: u32) -> Ver {
        Ver::new(p, n).unwrap()
    }

    fn set(xs: &[u64]) -> BTreeSet<u64> {
        xs.iter().copied().collect()
    }

    #[test]
    fn descendant_examples() {
        let p3 = Prime::new(3).unwrap();
        assert_eq!(descendants(7, p3, 2).unwrap(), set(&[7, 5]));
        assert_eq!(descendants(6, p3, 2).unwrap(), set(&[6]));
        assert_eq!(descendants(17, p3, 3).unwrap(), set(&[17, 13, 5, 1]));
        assert!(descendants(2, p3, 2).is_err());
        assert!(descendants(9, p3, 2).is_err());
    }

    #[test]
    fn decomposition_rows() {
        let d = decomposition_matrix(v(3, 2));
        let row = |m: &IntMatrix, r: usize| -> Vec<usize> {
            (0..m.cols()).filter(|&j| !m[(r, j)].is_zero()).collect()
        };
        // row i = 6 sits at position 4
        assert_eq!(row(&d, 4), vec![4, 6]);
        let d2 = decomposition_matrix(v(2, 2));
        assert_eq!(row(&d2, 0), vec![1]);
    }

    #[test]
    fn extended_rows() {
        let one = |xs: &[u64]| xs.iter().map(|&j| (j, BigInt::one())).collect::<BTreeMap<_, _>>();
        assert_eq!(extended_decomposition_row(v(3, 2), 3).unwrap(), one(&[3, 1]));
        assert_eq!(extended_decomposition_row(v(5, 2), 10).unwrap(), one(&[10, 8]));
        for i in 0..4 {
            assert_eq!(extended_decomposition_row(v(5, 1), i).unwrap(), one(&[i]));
        }
        assert!(extended_decomposition_row(v(3, 2), 8).is_err());
    }

    #[test]
    fn routes_agree_small() {
        for (p, n) in [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (5, 2), (7, 2)] {
            let ver = v(p, n);
            let c = cartan_descendant(ver);
            assert_eq!(c, cartan_characters(ver), "characters {ver}");
            assert_eq!(c, cartan_kronecker(ver), "kronecker {ver}");
            let d = decomposition_matrix(ver);
            assert_eq!(c, d.mul(&d.transpose()));
            assert_eq!(d, character_decomposition_matrix(ver));
        }
    }

    #[test]
    fn cartan_3_2_shape() {
        let c = cartan_descendant(v(3, 2));
        let target = IntMatrix::from_rows(&[
            vec![1, 0, 0, 0, 0, 0],
            vec![0, 1, 0, 0, 0, 0],
            vec![0, 0, 2, 1, 0, 0],
            vec![0, 0, 1, 2, 0, 0],
            vec![0, 0, 0, 0, 2, 1],
            vec![0, 0, 0, 0, 1, 2],
        ]);
        assert!(find_permutation_equivalence(&c, &target).is_some());
    }

    #[test]
    fn kronecker_p2_level2() {
        let (raw, labels) = kronecker_cartan_raw(v(2, 2));
        assert_eq!(raw, IntMatrix::from_rows(&[vec![2, 0], vec![0, 1]]));
        assert_eq!(labels, vec![3, 2]);
    }

    #[test]
    fn blocks_small() {
        let ms = |b: &Block| b.members.iter().map(|s| s.0).collect::<Vec<_>>();
        let blocks = block_partition(v(3, 2));
        let got: Vec<Vec<u64>> = blocks.iter().map(ms).collect();
        assert_eq!(got, vec![vec![2], vec![3, 7], vec![4, 6], vec![5]]);
        let mut sizes: Vec<usize> = block_partition(v(3, 3)).iter().map(|b| b.members.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 2, 2, 6, 6]);
        let got: Vec<Vec<u64>> = block_partition(v(2, 2)).iter().map(ms).collect();
        assert_eq!(got, vec![vec![1], vec![2]]);
    }

    #[test]
    fn steinberg_examples() {
        assert_eq!(steinberg_label(v(3, 2), SimpleLabel(0)).unwrap(), ProjIndex(4));
        assert_eq!(steinberg_label(v(3, 3), SimpleLabel(0)).unwrap(), ProjIndex(16));
        for n in 1..6 {
            let ver = v(2, n);
            for i in ver.simples() {
                let s = steinberg_label(ver, i).unwrap();
                assert_eq!(s.0, 2u64.pow(n) - 2 - i.0);
                assert_eq!(simple_of_projective(ver, s).unwrap(), i);
            }
        }
        assert!(steinberg_label(v(3, 2), SimpleLabel(6)).is_err());
    }

    #[test]
    fn ext1_examples() {
        let ver = v(3, 2);
        assert_eq!(ext1(ver, SimpleLabel(0), SimpleLabel(4)).unwrap(), 1);
        assert_eq!(ext1(ver, SimpleLabel(1), SimpleLabel(3)).unwrap(), 1);
        for a in ver.simples() {
            assert_eq!(ext1(ver, a, a).unwrap(), 0);
        }
        assert!(matches!(ext1(v(2, 3), SimpleLabel(0), SimpleLabel(1)), Err(Error::UnsupportedPrime { .. })));
    }

    #[test]
    fn frobenius_examples() {
        let ver = v(3, 2);
        let pair = |l, b| FrobeniusImage::Pair { lower: SimpleLabel(l), base: SimpleLabel(b) };
        assert_eq!(frobenius_on_simple(ver, SimpleLabel(0)).unwrap(), pair(0, 0));
        assert_eq!(frobenius_on_simple(ver, SimpleLabel(5)).unwrap(), FrobeniusImage::Zero);
        assert_eq!(frobenius_on_simple(ver, SimpleLabel(3)).unwrap(), pair(1, 0));
        assert!(frobenius_on_simple(v(2, 3), SimpleLabel(0)).is_err());
        assert!(frobenius_on_simple(v(3, 1), SimpleLabel(0)).is_err());
    }

    #[test]
    fn dims() {
        let ver = v(3, 2);
        assert_eq!(dim_simple(ver, SimpleLabel(0)).unwrap(), (BigInt::one(), 1));
        assert_eq!(dim_simple(ver, SimpleLabel(4)).unwrap(), (BigInt::from(4), 1));
        assert_eq!(dim_simple(ver, SimpleLabel(5)).unwrap(), (BigInt::from(6), 0));
    }
}
