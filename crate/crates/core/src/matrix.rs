//! Dense integer matrices with arbitrary-precision entries.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from row vectors.
    ///
    /// Panics if the rows have different lengths.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().cloned().map(Into::into));
        }
        IntMatrix { rows: r, cols: c, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> impl Iterator<Item = &BigInt> {
        self.data.iter()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &IntMatrix) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn add(&self, other: &IntMatrix) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    /// Kronecker product: the `(i, j)` block of the result is `self[i][j] * other`.
    pub fn kron(&self, other: &IntMatrix) -> Self {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        Self::from_fn(r, c, |i, j| {
            let a = &self[(i / other.rows, j / other.cols)];
            if a.is_zero() {
                BigInt::zero()
            } else {
                a * &other[(i % other.rows, j % other.cols)]
            }
        })
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    /// Simultaneous row/column permutation: `out[i][j] = self[perm[i]][perm[j]]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        self.submatrix(perm, perm)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Leading principal minors `det(M[..k, ..k])` for `k = 1..=n`, via
    /// fraction-free Bareiss elimination without pivoting.
    ///
    /// Returns `None` once a zero pivot is met (the remaining minors are then
    /// not produced by this elimination order).
    pub fn leading_principal_minors(&self) -> Option<Vec<BigInt>> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut minors = Vec::with_capacity(n);
        let mut prev = BigInt::one();
        for k in 0..n {
            let pivot = a[(k, k)].clone();
            minors.push(pivot.clone());
            if pivot.is_zero() {
                return if k + 1 == n { Some(minors) } else { None };
            }
            a.bareiss_step(k, &pivot, &prev);
            prev = pivot;
        }
        Some(minors)
    }

    /// Index sets of the connected components of the graph with an edge
    /// `i - j` whenever `a_ij` or `a_ji` is nonzero.
    pub fn components(&self) -> Vec<Vec<usize>> {
        assert!(self.is_square());
        let n = self.rows;
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut k = 0;
            while k < comp.len() {
                let i = comp[k];
                k += 1;
                for j in 0..n {
                    if !seen[j] && !(self[(i, j)].is_zero() && self[(j, i)].is_zero()) {
                        seen[j] = true;
                        comp.push(j);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Exact determinant, by Bareiss elimination with row pivoting on each
    /// connected component.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square());
        let comps = self.components();
        if comps.len() <= 1 {
            return self.det_dense();
        }
        let mut acc = BigInt::one();
        for c in comps {
            acc *= self.submatrix(&c, &c).det_dense();
            if acc.is_zero() {
                break;
            }
        }
        acc
    }

    /// Fraction-free elimination.
    fn det_dense(&self) -> BigInt {
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            let pivot = a[(k, k)].clone();
            a.bareiss_step(k, &pivot, &prev);
            prev = pivot;
        }
        sign * &a[(n - 1, n - 1)]
    }

    /// `a_ij <- (a_ij a_kk - a_ik a_kj) / prev` for `i, j > k`, then clears
    /// column `k` below the pivot.
    fn bareiss_step(&mut self, k: usize, pivot: &BigInt, prev: &BigInt) {
        let n = self.cols;
        let (top, rest) = self.data.split_at_mut((k + 1) * n);
        let row_k = &top[k * n..];
        let unit = prev.is_one();
        for row in rest.chunks_mut(n) {
            let aik = std::mem::take(&mut row[k]);
            for (x, akj) in row[k + 1..].iter_mut().zip(&row_k[k + 1..]) {
                *x *= pivot;
                if !aik.is_zero() && !akj.is_zero() {
                    *x -= &aik * akj;
                }
                if !unit {
                    *x /= prev;
                }
            }
        }
    }

    /// Positive definiteness by Sylvester's criterion.
    pub fn is_positive_definite(&self) -> bool {
        self.is_symmetric()
            && self.components().iter().all(|c| {
                self.submatrix(c, c)
                    .leading_principal_minors()
                    .is_some_and(|m| m.iter().all(|x| x.is_positive()))
            })
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub fn max_abs(&self) -> BigInt {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_default()
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.data.iter().map(|x| x.to_string().len()).max().unwrap_or(1);
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| format!("{x:>width$}")).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Searches for a permutation `perm` with `a.permuted(perm) == b`, i.e. a
/// simultaneous relabeling of rows and columns of `a` that yields `b`.
pub fn find_permutation_equivalence(a: &IntMatrix, b: &IntMatrix) -> Option<Vec<usize>> {
    if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
        return None;
    }
    let n = a.rows();
    let signature = |m: &IntMatrix, i: usize| {
        let mut row: Vec<BigInt> = (0..n).filter(|&j| j != i).map(|j| m[(i, j)].clone()).collect();
        row.sort();
        (m[(i, i)].clone(), row)
    };
    let sig_a: Vec<_> = (0..n).map(|i| signature(a, i)).collect();
    let sig_b: Vec<_> = (0..n).map(|i| signature(b, i)).collect();

    // perm[i] = index in `a` placed at position i of `b`
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn search(
        pos: usize,
        a: &IntMatrix,
        b: &IntMatrix,
        sig_a: &[(BigInt, Vec<BigInt>)],
        sig_b: &[(BigInt, Vec<BigInt>)],
        perm: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let n = perm.len();
        if pos == n {
            return true;
        }
        for cand in 0..n {
            if used[cand] || sig_a[cand] != sig_b[pos] {
                continue;
            }
            if (0..pos).any(|q| a[(cand, perm[q])] != b[(pos, q)]) {
                continue;
            }
            perm[pos] = cand;
            used[cand] = true;
            if search(pos + 1, a, b, sig_a, sig_b, perm, used) {
                return true;
            }
            used[cand] = false;
        }
        false
    }
    search(0, a, b, &sig_a, &sig_b, &mut perm, &mut used).then_some(perm)
}
