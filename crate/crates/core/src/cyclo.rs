//! Exact arithmetic in `Z[q]`, `q = exp(pi i / p^n)` a primitive `2p^n`-th
//! root of unity, realized as `Z[x] / Phi_{2p^n}(x)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::digits::{descendants, simple_of_projective, steinberg_label, DigitString};
use crate::error::Result;
use crate::matrix::IntMatrix;
use crate::numeric::{Real, ULP_BOUND_LOG2};
use crate::params::{ProjIndex, SimpleLabel, Ver};
use crate::poly::{chebyshev_s, IntPoly};

/// Modulus data for one `(p, n)`.
#[derive(Debug)]
pub struct CycloContext {
    ver: Ver,
    /// `N = p^n`; `q^N = -1`.
    order: u64,
    degree: usize,
    /// `x^degree` is congruent to `sum c x^e` over these `(e, c)`.
    tail: Vec<(usize, i64)>,
    trig: OnceLock<Vec<(Real, Real)>>,
}

impl CycloContext {
    pub fn new(ver: Ver) -> Arc<Self> {
        let p = ver.p.get();
        let order = ver.order();
        let (degree, tail) = if ver.p.is_odd() {
            // Phi_{2N}(x) = sum_{k=0}^{p-1} (-1)^k x^{k p^{n-1}}
            let step = ver.p.pow(ver.n - 1) as usize;
            let tail = (0..p as usize - 1)
                .map(|k| (k * step, if k % 2 == 0 { -1 } else { 1 }))
                .collect();
            ((p as usize - 1) * step, tail)
        } else {
            // Phi_{2N}(x) = x^N + 1
            (order as usize, vec![(0, -1)])
        };
        Arc::new(CycloContext { ver, order, degree, tail, trig: OnceLock::new() })
    }

    pub fn ver(&self) -> Ver {
        self.ver
    }

    /// Degree of the modulus, i.e. the rank of the ring over `Z`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// The modulus polynomial `Phi_{2p^n}`.
    pub fn modulus(&self) -> IntPoly {
        let mut c = vec![BigInt::zero(); self.degree + 1];
        c[self.degree] = BigInt::one();
        for &(e, r) in &self.tail {
            c[e] -= r;
        }
        IntPoly::from_coeffs(c)
    }

    fn reduce(&self, mut c: Vec<BigInt>) -> Vec<BigInt> {
        let d = self.degree;
        for e in (d..c.len()).rev() {
            let top = std::mem::take(&mut c[e]);
            if top.is_zero() {
                continue;
            }
            for &(t, r) in &self.tail {
                c[e - d + t] += &top * r;
            }
        }
        c.resize(d, BigInt::zero());
        c
    }

    /// `(cos(pi k / N), sin(pi k / N))` for `k < degree`.
    fn trig(&self) -> &[(Real, Real)] {
        self.trig.get_or_init(|| {
            (0..self.degree).map(|k| Real::cos_sin_pi_ratio(k as i64, self.order)).collect()
        })
    }

    /// Checks that the modulus divides `x^{2N} - 1` and vanishes numerically
    /// at `q`.
    pub fn self_check(&self) -> bool {
        let two_n = 2 * self.order as usize;
        let mut target = vec![BigInt::zero(); two_n + 1];
        target[0] = BigInt::from(-1);
        target[two_n] = BigInt::one();
        let divides = rem_monic(&IntPoly::from_coeffs(target), &self.modulus()).is_zero();

        let (mut re, mut im) = (Real::zero(), Real::zero());
        for (e, c) in self.modulus().coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (cs, sn) = Real::cos_sin_pi_ratio(e as i64, self.order);
            re = &re + &cs.mul_int(c);
            im = &im + &sn.mul_int(c);
        }
        let tol = Real::pow2(-100);
        divides && re.abs() < tol && im.abs() < tol
    }
}

fn rem_monic(num: &IntPoly, den: &IntPoly) -> IntPoly {
    let dd = den.degree().expect("nonzero divisor");
    let mut r: Vec<BigInt> = num.coeffs().to_vec();
    while r.len() > dd {
        let e = r.len() - 1;
        let c = r[e].clone();
        if !c.is_zero() {
            for (k, dc) in den.coeffs().iter().enumerate() {
                r[e - dd + k] -= &c * dc;
            }
        }
        r.pop();
    }
    IntPoly::from_coeffs(r)
}

/// An element of `Z[q]` in the power basis `1, q, ..., q^{D-1}`.
#[derive(Clone, Debug)]
pub struct CycloInt {
    ctx: Arc<CycloContext>,
    coeffs: Vec<BigInt>,
}

impl PartialEq for CycloInt {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.ver == other.ctx.ver && self.coeffs == other.coeffs
    }
}

impl Eq for CycloInt {}

impl CycloInt {
    pub fn zero(ctx: &Arc<CycloContext>) -> Self {
        CycloInt { ctx: Arc::clone(ctx), coeffs: vec![BigInt::zero(); ctx.degree] }
    }

    pub fn from_int(ctx: &Arc<CycloContext>, c: BigInt) -> Self {
        let mut z = Self::zero(ctx);
        z.coeffs[0] = c;
        z
    }

    pub fn one(ctx: &Arc<CycloContext>) -> Self {
        Self::from_int(ctx, BigInt::one())
    }

    /// `q^e` for any integer `e`.
    pub fn monomial(ctx: &Arc<CycloContext>, e: i64) -> Self {
        Self::from_exponents(ctx, [(e, 1)])
    }

    /// `sum c q^e` over the given `(e, c)`.
    pub fn from_exponents(ctx: &Arc<CycloContext>, terms: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let n = ctx.order as i64;
        let mut acc = vec![0i64; (n as usize).max(ctx.degree)];
        for (e, c) in terms {
            let e = e.rem_euclid(2 * n);
            if e >= n {
                acc[(e - n) as usize] -= c;
            } else {
                acc[e as usize] += c;
            }
        }
        let c = acc.into_iter().map(BigInt::from).collect();
        CycloInt { ctx: Arc::clone(ctx), coeffs: ctx.reduce(c) }
    }

    /// Builds an element from a polynomial in `q`.
    pub fn from_poly(ctx: &Arc<CycloContext>, poly: &IntPoly) -> Self {
        let mut c = poly.coeffs().to_vec();
        c.resize(c.len().max(ctx.degree), BigInt::zero());
        CycloInt { ctx: Arc::clone(ctx), coeffs: ctx.reduce(c) }
    }

    pub fn context(&self) -> &Arc<CycloContext> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        CycloInt { ctx: Arc::clone(&self.ctx), coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// `self += k * other`.
    pub fn add_scaled(&mut self, other: &Self, k: &BigInt) {
        self.same_ring(other);
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                *a += b * k;
            }
        }
    }

    /// Image under `q -> q^{-1}` (complex conjugation).
    pub fn conj(&self) -> Self {
        let mut acc = vec![BigInt::zero(); self.ctx.degree];
        let two_n = 2 * self.ctx.order as i64;
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let m = CycloInt::monomial(&self.ctx, two_n - e as i64);
            for (k, x) in m.coeffs.iter().enumerate() {
                if !x.is_zero() {
                    acc[k] += c * x;
                }
            }
        }
        CycloInt { ctx: Arc::clone(&self.ctx), coeffs: acc }
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// `(Re, Im)` of the value at `q = exp(pi i / p^n)`.
    pub fn numeric(&self) -> (Real, Real) {
        let trig = self.ctx.trig();
        let (mut re, mut im) = (Real::zero(), Real::zero());
        for (c, (cs, sn)) in self.coeffs.iter().zip(trig) {
            if c.is_zero() {
                continue;
            }
            re = &re + &cs.mul_int(c);
            im = &im + &sn.mul_int(c);
        }
        (re, im)
    }

    /// Bound on the absolute error of [`numeric`](Self::numeric), per part.
    pub fn error_bound(&self) -> Real {
        let weight = self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc + c.abs());
        Real::pow2(ULP_BOUND_LOG2).mul_int(&(weight + 1))
    }

    fn same_ring(&self, other: &Self) {
        assert_eq!(self.ctx.ver, other.ctx.ver, "elements of different rings");
    }
}

impl Add for &CycloInt {
    type Output = CycloInt;
    fn add(self, rhs: &CycloInt) -> CycloInt {
        self.same_ring(rhs);
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
        CycloInt { ctx: Arc::clone(&self.ctx), coeffs }
    }
}

impl Sub for &CycloInt {
    type Output = CycloInt;
    fn sub(self, rhs: &CycloInt) -> CycloInt {
        self.same_ring(rhs);
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect();
        CycloInt { ctx: Arc::clone(&self.ctx), coeffs }
    }
}

impl Neg for &CycloInt {
    type Output = CycloInt;
    fn neg(self) -> CycloInt {
        CycloInt { ctx: Arc::clone(&self.ctx), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &CycloInt {
    type Output = CycloInt;
    fn mul(self, rhs: &CycloInt) -> CycloInt {
        self.same_ring(rhs);
        let d = self.ctx.degree;
        let prod = small_convolution(&self.coeffs, &rhs.coeffs).unwrap_or_else(|| {
            let mut out = vec![BigInt::zero(); 2 * d - 1];
            for (i, a) in self.coeffs.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in rhs.coeffs.iter().enumerate() {
                    if !b.is_zero() {
                        out[i + j] += a * b;
                    }
                }
            }
            out
        });
        CycloInt { ctx: Arc::clone(&self.ctx), coeffs: self.ctx.reduce(prod) }
    }
}

/// Convolution in `i128` when every partial sum provably fits.
fn small_convolution(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let a: Vec<i64> = a.iter().map(ToPrimitive::to_i64).collect::<Option<_>>()?;
    let b: Vec<i64> = b.iter().map(ToPrimitive::to_i64).collect::<Option<_>>()?;
    let ma = a.iter().map(|x| x.unsigned_abs() as u128).max().unwrap_or(0);
    let mb = b.iter().map(|x| x.unsigned_abs() as u128).max().unwrap_or(0);
    let bound = ma.checked_mul(mb)?.checked_mul(a.len() as u128)?;
    if bound >= 1u128 << 126 {
        return None;
    }
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x as i128 * y as i128;
        }
    }
    Some(out.into_iter().map(BigInt::from).collect())
}

impl fmt::Display for CycloInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            terms.push(match e {
                0 => format!("{c}"),
                1 => format!("{c}*q"),
                _ => format!("{c}*q^{e}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Quantum integer `[m]_{q^{p^t}} = sum_{k=0}^{m-1} q^{p^t (m-1-2k)}`.
pub fn qint(ctx: &Arc<CycloContext>, m: u64, t: u32) -> CycloInt {
    let step = ctx.ver.p.pow(t) as i64;
    CycloInt::from_exponents(ctx, (0..m as i64).map(|k| (step * (m as i64 - 1 - 2 * k), 1)))
}

/// `FPdim(L_i) = prod_k [i_k + 1]_{q^{p^{n-k}}}`.
pub fn fpdim_simple(ctx: &Arc<CycloContext>, i: SimpleLabel) -> Result<CycloInt> {
    let ver = ctx.ver;
    ver.check_simple(i)?;
    let ds = DigitString::new(ver.p, ver.n, i.0)?;
    let mut acc = CycloInt::one(ctx);
    for (k, &d) in ds.digits().iter().enumerate() {
        if d > 0 {
            acc = &acc * &qint(ctx, d + 1, ver.n - 1 - k as u32);
        }
    }
    Ok(acc)
}

/// `FPdim(P_i) = sum_j d_{s(i), j} [j + 1]_q`.
pub fn fpdim_projective(ctx: &Arc<CycloContext>, i: SimpleLabel) -> Result<CycloInt> {
    let ver = ctx.ver;
    let s = steinberg_label(ver, i)?;
    let terms = descendants(s.0 + 1, ver.p, ver.n)?
        .into_iter()
        .flat_map(|b| (0..b as i64).map(move |k| (b as i64 - 1 - 2 * k, 1)));
    Ok(CycloInt::from_exponents(ctx, terms))
}

/// Outcome of the exact check `C d = p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CdCheck {
    pub rows_checked: usize,
    /// First projective index whose row fails.
    pub counterexample: Option<ProjIndex>,
}

impl CdCheck {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks `sum_j C_{ij} FPdim(L_j) = FPdim(P_i)` row by row, with `C` indexed
/// by projective positions.
pub fn verify_cd_eq_p_with(ctx: &Arc<CycloContext>, cartan: &IntMatrix) -> CdCheck {
    let ver = ctx.ver;
    let simple_at: Vec<SimpleLabel> =
        ver.projectives().map(|s| simple_of_projective(ver, s).expect("projective")).collect();
    let dims: Vec<CycloInt> =
        simple_at.iter().map(|&i| fpdim_simple(ctx, i).expect("valid label")).collect();
    let mut rows_checked = 0;
    for (r, s) in ver.projectives().enumerate() {
        let mut lhs = CycloInt::zero(ctx);
        for (j, d) in dims.iter().enumerate() {
            let c = &cartan[(r, j)];
            if !c.is_zero() {
                lhs.add_scaled(d, c);
            }
        }
        let rhs = fpdim_projective(ctx, simple_at[r]).expect("valid label");
        rows_checked += 1;
        if lhs != rhs {
            return CdCheck { rows_checked, counterexample: Some(s) };
        }
    }
    CdCheck { rows_checked, counterexample: None }
}

pub fn verify_cd_eq_p(ver: Ver) -> CdCheck {
    verify_cd_eq_p_with(&CycloContext::new(ver), &crate::digits::cartan_descendant(ver))
}

/// `Q_{n,p} = S_{p^n - 1}`; `Q_{0,p} = 1`.
pub fn chebyshev_q(p: crate::params::Prime, n: u32) -> IntPoly {
    chebyshev_s(p.pow(n) as usize - 1)
}

/// Evaluates an integer polynomial at a ring element.
pub fn eval_poly(poly: &IntPoly, x: &CycloInt) -> CycloInt {
    let ctx = x.context();
    poly.eval_with(x, CycloInt::zero(ctx), |c| CycloInt::from_int(ctx, c.clone()))
}

/// `Q_{n,p}(FPdim V)` and `Q_{n-1,p}(FPdim V)` with `V = L_1`.
pub fn chebyshev_at_v(ctx: &Arc<CycloContext>) -> (CycloInt, CycloInt) {
    let ver = ctx.ver;
    let v = qint(ctx, 2, 0);
    let top = eval_poly(&chebyshev_q(ver.p, ver.n), &v);
    let below = eval_poly(&chebyshev_q(ver.p, ver.n - 1), &v);
    (top, below)
}

/// Numerical `FPdim(Ver_{p^n})` from both sides of the identity
/// `sum_i FPdim(L_i) FPdim(P_i) = p^n / (2 sin^2(pi / p^n))`.
#[derive(Clone, Debug)]
pub struct FpdimCategory {
    pub sum: Real,
    pub closed_form: Real,
    /// Rigorous bound on the accumulated evaluation error of `sum`.
    pub error_bound: Real,
}

impl FpdimCategory {
    pub fn difference(&self) -> Real {
        (&self.sum - &self.closed_form).abs()
    }

    pub fn within(&self, tol: f64) -> bool {
        self.difference().to_f64() <= tol
    }
}

pub fn fpdim_category(ctx: &Arc<CycloContext>) -> FpdimCategory {
    let ver = ctx.ver;
    let mut sum = Real::zero();
    let mut err = Real::zero();
    for i in ver.simples() {
        let l = fpdim_simple(ctx, i).expect("valid label");
        let p = fpdim_projective(ctx, i).expect("valid label");
        let (lr, _) = l.numeric();
        let (pr, _) = p.numeric();
        // |ab - a'b'| <= |a| e_b + |b| e_a + e_a e_b, plus one rounding
        let (ea, eb) = (l.error_bound(), p.error_bound());
        let bound = &(&(&lr.abs() * &eb) + &(&pr.abs() * &ea)) + &(&(&ea * &eb) + &Real::pow2(-180));
        err = &err + &bound;
        sum = &sum + &(&lr * &pr);
    }
    let (_, s) = Real::cos_sin_pi_ratio(1, ver.order());
    let denom = (&s * &s).mul_int(&BigInt::from(2));
    let closed_form = Real::from_i64(ver.order() as i64).div(&denom);
    FpdimCategory { sum, closed_form, error_bound: err }
}
