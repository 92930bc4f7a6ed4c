//! Smith normal form over `Z` with a transformation certificate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::IntMatrix;

/// `u * m * v = diag(diag)` with `u`, `v` unimodular and each diagonal
/// entry dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    pub diag: Vec<BigInt>,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    /// Re-derives the diagonal from the certificate and checks the
    /// divisibility chain and unimodularity.
    pub fn verify(&self, m: &IntMatrix) -> bool {
        let prod = self.u.mul(m).mul(&self.v);
        let diag_ok = (0..prod.rows()).all(|i| {
            (0..prod.cols()).all(|j| {
                let expect = if i == j { self.diag.get(i).cloned().unwrap_or_default() } else { BigInt::zero() };
                prod[(i, j)] == expect
            })
        });
        let chain_ok = self.diag.windows(2).all(|w| {
            if w[0].is_zero() {
                w[1].is_zero()
            } else {
                w[1].is_multiple_of(&w[0])
            }
        });
        let unimodular = |x: &IntMatrix| x.det().abs().is_one();
        diag_ok && chain_ok && unimodular(&self.u) && unimodular(&self.v)
    }

    /// Product of the nonzero invariant factors.
    pub fn order(&self) -> BigInt {
        self.diag.iter().filter(|d| !d.is_zero()).product()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let (r, c) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);

    for t in 0..r.min(c) {
        let Some((pi, pj)) = min_abs_position(&a, t) else {
            break;
        };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..r {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = a[(i, t)].div_floor(&a[(t, t)]);
                row_axpy(&mut a, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                if !a[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..c {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = a[(t, j)].div_floor(&a[(t, t)]);
                col_axpy(&mut a, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                if !a[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                bring_smallest_to_pivot(&mut a, &mut u, &mut v, t);
                continue;
            }
            // the pivot must divide everything left in the lower block
            let bad = (t + 1..r)
                .flat_map(|i| (t + 1..c).map(move |j| (i, j)))
                .find(|&(i, j)| !a[(i, j)].is_multiple_of(&a[(t, t)]));
            match bad {
                Some((i, _)) => {
                    row_axpy(&mut a, t, i, &BigInt::from(-1));
                    row_axpy(&mut u, t, i, &BigInt::from(-1));
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            negate_row(&mut a, t);
            negate_row(&mut u, t);
        }
    }
    let diag = (0..r.min(c)).map(|i| a[(i, i)].clone()).collect();
    Snf { diag, u, v }
}

fn min_abs_position(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = a[(i, j)].abs();
            if !x.is_zero() && best.as_ref().is_none_or(|(_, b)| x < *b) {
                best = Some(((i, j), x));
            }
        }
    }
    best.map(|(pos, _)| pos)
}

/// Moves the smallest nonzero entry of row `t` or column `t` to `(t, t)`.
fn bring_smallest_to_pivot(a: &mut IntMatrix, u: &mut IntMatrix, v: &mut IntMatrix, t: usize) {
    let mut best = (t, t, a[(t, t)].abs());
    for i in t + 1..a.rows() {
        let x = a[(i, t)].abs();
        if !x.is_zero() && x < best.2 {
            best = (i, t, x);
        }
    }
    for j in t + 1..a.cols() {
        let x = a[(t, j)].abs();
        if !x.is_zero() && x < best.2 {
            best = (t, j, x);
        }
    }
    let (i, j, _) = best;
    a.swap_rows(t, i);
    u.swap_rows(t, i);
    a.swap_cols(t, j);
    v.swap_cols(t, j);
}

/// `row[target] -= q * row[src]`.
fn row_axpy(m: &mut IntMatrix, target: usize, src: usize, q: &BigInt) {
    for j in 0..m.cols() {
        let d = &m[(src, j)] * q;
        if !d.is_zero() {
            m[(target, j)] -= d;
        }
    }
}

/// `col[target] -= q * col[src]`.
fn col_axpy(m: &mut IntMatrix, target: usize, src: usize, q: &BigInt) {
    for i in 0..m.rows() {
        let d = &m[(i, src)] * q;
        if !d.is_zero() {
            m[(i, target)] -= d;
        }
    }
}

fn negate_row(m: &mut IntMatrix, i: usize) {
    for j in 0..m.cols() {
        m[(i, j)] = -&m[(i, j)];
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn identity() {
        let m = IntMatrix::identity(4);
        let s = smith_normal_form(&m);
        assert_eq!(s.diag, ints(&[1, 1, 1, 1]));
        assert!(s.verify(&m));
    }

    #[test]
    fn two_by_two() {
        let m = IntMatrix::from_rows(&[vec![2, 1], vec![1, 2]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.diag, ints(&[1, 3]));
        assert!(s.verify(&m));
    }

    #[test]
    fn divisibility_fixup() {
        // diag(2, 3) is not in normal form: it must become diag(1, 6)
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.diag, ints(&[1, 6]));
        assert!(s.verify(&m));
    }

    #[test]
    fn singular_and_rectangular() {
        let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.diag, ints(&[2, 6, 12]));
        assert!(s.verify(&m));
        let z = IntMatrix::from_rows(&[vec![0, 0, 0], vec![0, 4, 6]]);
        let s = smith_normal_form(&z);
        assert_eq!(s.diag, ints(&[2, 0]));
        assert!(s.verify(&z));
    }
}
