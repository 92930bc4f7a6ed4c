//! Assembly of a full [`CategoryData`] record for `Ver_{p^n}` together with
//! a cross-validation report.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::cyclo::{
    chebyshev_at_v, fpdim_category, fpdim_projective, fpdim_simple, verify_cd_eq_p_with, CycloContext, CycloInt,
};
use crate::digits::{
    block_index, block_partition, cartan_characters, cartan_descendant, cartan_kronecker, decomposition_matrix, ext1,
    simple_of_projective, steinberg_label, Block,
};
use crate::error::{Error, Result};
use crate::grring::{check_ring_hom_fusion, FusionRing};
use crate::matrix::{find_permutation_equivalence, IntMatrix};
use crate::params::{ProjIndex, SimpleLabel, Ver};
use crate::snf::smith_normal_form;
use crate::tilting::{invariant_dims, series_fn};

pub const DEFAULT_SIMPLE_BOUND: u64 = 2000;

/// Tolerance for the numerical identity on `FPdim(Ver_{p^n})`.
pub const FPDIM_TOLERANCE: f64 = 1e-9;

/// Number of `z`-coefficients compared between the two invariant series.
pub const SERIES_TERMS: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuildOptions {
    /// Largest admissible number of simple objects.
    pub bound: u64,
    /// Sample count for the fusion/tilting cross-check.
    pub samples: usize,
    pub seed: u64,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { bound: DEFAULT_SIMPLE_BOUND, samples: 40, seed: 0 }
    }
}

/// Everything computed about one category.
#[derive(Clone, Debug)]
pub struct CategoryData {
    pub ver: Ver,
    pub simples: Vec<SimpleLabel>,
    /// `s(i)` for each simple label `i`.
    pub steinberg: Vec<ProjIndex>,
    /// Rows: projectives; columns: Weyl modules `W_0 .. W_{p^n-2}`.
    pub decomposition: IntMatrix,
    /// Indexed by projective positions.
    pub cartan: IntMatrix,
    pub blocks: Vec<Block>,
    /// Determinant of each block's Cartan matrix, in block order.
    pub block_dets: Vec<BigInt>,
    pub fpdim_simple: Vec<CycloInt>,
    pub fpdim_projective: Vec<CycloInt>,
    /// Pairs `a < b` with `Ext^1(L_a, L_b) != 0`; `None` for `p = 2`.
    pub ext1: Option<Vec<(SimpleLabel, SimpleLabel)>>,
    pub fusion: Option<Arc<FusionRing>>,
    pub report: VerificationReport,
    ctx: Arc<CycloContext>,
}

impl CategoryData {
    pub fn cyclo(&self) -> &Arc<CycloContext> {
        &self.ctx
    }

    /// Cartan matrix re-indexed by simple labels: entry `(i, j)` is
    /// `c(s(i), s(j))`.
    pub fn cartan_by_simple(&self) -> IntMatrix {
        let pos: Vec<usize> = self.steinberg.iter().map(|&s| self.ver.projective_position(s)).collect();
        self.cartan.permuted(&pos)
    }

    /// Restriction of [`cartan_by_simple`](Self::cartan_by_simple) to the given simple labels.
    pub fn cartan_on(&self, labels: &[SimpleLabel]) -> IntMatrix {
        let pos: Vec<usize> =
            labels.iter().map(|i| self.ver.projective_position(self.steinberg[i.0 as usize])).collect();
        self.cartan.permuted(&pos)
    }
}

pub fn build(p: u64, n: u32) -> Result<CategoryData> {
    build_with(Ver::new(p, n)?, &BuildOptions::default())
}

pub fn build_with(ver: Ver, opts: &BuildOptions) -> Result<CategoryData> {
    let simples_count = ver.num_simples();
    if simples_count > opts.bound {
        return Err(Error::BoundExceeded { p: ver.p.get(), n: ver.n, simples: simples_count, bound: opts.bound });
    }
    let ctx = CycloContext::new(ver);
    let simples: Vec<SimpleLabel> = ver.simples().collect();
    let steinberg = simples.iter().map(|&i| steinberg_label(ver, i)).collect::<Result<Vec<_>>>()?;
    let decomposition = decomposition_matrix(ver);
    let cartan = cartan_descendant(ver);
    let blocks = block_partition(ver);
    let block_dets = blocks.iter().map(|b| block_cartan(&cartan, ver, b).det()).collect();
    let fpdim_simple = simples.par_iter().map(|&i| fpdim_simple(&ctx, i)).collect::<Result<Vec<_>>>()?;
    let fpdim_projective = simples.par_iter().map(|&i| fpdim_projective(&ctx, i)).collect::<Result<Vec<_>>>()?;
    let ext1_pairs = if ver.p.is_odd() {
        let mut pairs = Vec::new();
        for &a in &simples {
            for &b in simples.iter().filter(|b| b.0 > a.0) {
                if ext1(ver, a, b)? == 1 {
                    pairs.push((a, b));
                }
            }
        }
        Some(pairs)
    } else {
        None
    };
    let fusion = ver.p.is_odd().then(|| FusionRing::new(ver)).transpose()?;

    let mut data = CategoryData {
        ver,
        simples,
        steinberg,
        decomposition,
        cartan,
        blocks,
        block_dets,
        fpdim_simple,
        fpdim_projective,
        ext1: ext1_pairs,
        fusion,
        report: VerificationReport::default(),
        ctx,
    };
    data.report = run_checks(&data, opts);
    Ok(data)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Skipped => "skipped",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CheckResult {
    pub name: &'static str,
    pub status: CheckStatus,
    /// What was compared, or the first counterexample.
    pub witness: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    /// No check failed (skipped checks do not count against).
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail)
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{:<40} {:<8} {}", c.name, c.status.to_string(), c.witness)?;
        }
        Ok(())
    }
}

/// Names of all checks, in report order.
pub const CHECK_NAMES: [&str; 20] = [
    "cartan_routes_agree",
    "cartan_symmetric_posdef",
    "entries_powers_of_two",
    "unit_diagonal_entry",
    "simple_count",
    "block_count",
    "block_sizes",
    "same_size_blocks_identical",
    "p2_nonsemisimple_block_is_brauer_line",
    "det_total",
    "det_per_block",
    "cd_eq_p",
    "fpdim_category",
    "chebyshev_roots",
    "invariants_series",
    "ext1_within_blocks",
    "ext1_symmetric",
    "steinberg_bijection",
    "covers_compat",
    "fusion_consistency",
];

type Outcome = (CheckStatus, String);

fn verdict(ok: bool, witness: impl Into<String>) -> Outcome {
    (if ok { CheckStatus::Pass } else { CheckStatus::Fail }, witness.into())
}

fn skipped(why: &str) -> Outcome {
    (CheckStatus::Skipped, why.to_string())
}

/// Runs every check for `(p, n)` with default options.
pub fn verify_all(p: u64, n: u32) -> VerificationReport {
    verify_all_with(p, n, &BuildOptions::default())
}

pub fn verify_all_with(p: u64, n: u32, opts: &BuildOptions) -> VerificationReport {
    let single_failure = |witness: String| VerificationReport {
        checks: CHECK_NAMES
            .iter()
            .map(|&name| CheckResult { name, status: CheckStatus::Fail, witness: witness.clone() })
            .collect(),
    };
    match Ver::new(p, n).and_then(|ver| build_with(ver, opts)) {
        Ok(data) => data.report,
        Err(e) => single_failure(format!("build failed: {e}")),
    }
}

fn run_checks(data: &CategoryData, opts: &BuildOptions) -> VerificationReport {
    let checks: Vec<CheckResult> = CHECK_NAMES
        .par_iter()
        .map(|&name| {
            let (status, witness) = run_check(name, data, opts);
            CheckResult { name, status, witness }
        })
        .collect();
    VerificationReport { checks }
}

fn run_check(name: &str, d: &CategoryData, opts: &BuildOptions) -> Outcome {
    let ver = d.ver;
    let p = ver.p.get();
    let n = ver.n;
    match name {
        "cartan_routes_agree" => {
            let chars = cartan_characters(ver);
            let kron = cartan_kronecker(ver);
            let ddt = d.decomposition.mul(&d.decomposition.transpose());
            let ok = d.cartan == chars && d.cartan == kron && d.cartan == ddt;
            verdict(ok, format!("descendant, characters, kronecker, D*D^T on {} rows", d.cartan.rows()))
        }
        "cartan_symmetric_posdef" => {
            verdict(d.cartan.is_symmetric() && d.cartan.is_positive_definite(), "Sylvester criterion")
        }
        "entries_powers_of_two" => {
            let limit = BigInt::one() << (n - 1);
            let bad = d.cartan.entries().find(|&x| !(x.is_zero() || (x.sign() == Sign::Plus && x <= &limit && is_pow2(x))));
            match bad {
                None => verdict(true, format!("entries are 0 or 2^k with k < {n}")),
                Some(x) => verdict(false, format!("entry {x}")),
            }
        }
        "unit_diagonal_entry" => {
            let pos = ver.projective_position(d.steinberg[0]);
            let c = &d.cartan[(pos, pos)];
            verdict(*c == BigInt::one() << (n - 1), format!("c(1,1) = {c}"))
        }
        "simple_count" => {
            let expect = ver.p.pow(n - 1) * (p - 1);
            verdict(d.simples.len() as u64 == expect, format!("{} simples", d.simples.len()))
        }
        "block_count" => {
            let expect = n as usize * (p as usize - 1);
            verdict(d.blocks.len() == expect, format!("{} blocks, expected {expect}", d.blocks.len()))
        }
        "block_sizes" => {
            let mut got: Vec<u64> = d.blocks.iter().map(|b| b.members.len() as u64).collect();
            let mut expect: Vec<u64> = (0..p - 1)
                .flat_map(|_| std::iter::once(1).chain((0..n - 1).map(|k| ver.p.pow(k) * (p - 1))))
                .collect();
            got.sort_unstable();
            expect.sort_unstable();
            let levels_ok = d.blocks.iter().all(|b| b.members.len() as u64 == b.expected_size(ver));
            verdict(got == expect && levels_ok, format!("sizes {got:?}"))
        }
        "same_size_blocks_identical" => {
            let mut by_level: BTreeMap<u32, Vec<&Block>> = BTreeMap::new();
            for b in &d.blocks {
                by_level.entry(b.level).or_default().push(b);
            }
            for (level, group) in &by_level {
                let first = block_cartan(&d.cartan, ver, group[0]);
                for other in &group[1..] {
                    let m = block_cartan(&d.cartan, ver, other);
                    if find_permutation_equivalence(&m, &first).is_none() {
                        return verdict(false, format!("level {level}: blocks starting at {} and {} differ", group[0].members[0], other.members[0]));
                    }
                }
            }
            verdict(true, format!("{} levels compared", by_level.len()))
        }
        "p2_nonsemisimple_block_is_brauer_line" => {
            if n != 2 {
                return skipped("n != 2");
            }
            for b in d.blocks.iter().filter(|b| !b.is_simple_projective(ver)) {
                let m = block_cartan(&d.cartan, ver, b);
                let k = m.rows();
                let line = IntMatrix::from_fn(k, k, |i, j| match i.abs_diff(j) {
                    0 => BigInt::from(2),
                    1 => BigInt::one(),
                    _ => BigInt::zero(),
                });
                if find_permutation_equivalence(&m, &line).is_none() {
                    return verdict(false, format!("block starting at {} is not a line", b.members[0]));
                }
            }
            verdict(true, format!("{} blocks of size {}", p - 1, p - 1))
        }
        "det_total" => {
            let det = d.cartan.det();
            let expect = num_traits::pow(BigInt::from(p), (ver.p.pow(n - 1) - 1) as usize);
            verdict(det == expect, format!("det = {det}"))
        }
        "det_per_block" => {
            for (b, det) in d.blocks.iter().zip(&d.block_dets) {
                if *det != b.expected_det(ver) {
                    return verdict(false, format!("block starting at {}: det {det}", b.members[0]));
                }
            }
            verdict(true, format!("{} blocks", d.blocks.len()))
        }
        "cd_eq_p" => {
            let res = verify_cd_eq_p_with(&d.ctx, &d.cartan);
            match res.counterexample {
                None => verdict(true, format!("{} rows exact", res.rows_checked)),
                Some(s) => verdict(false, format!("row {s}")),
            }
        }
        "fpdim_category" => {
            let f = fpdim_category(&d.ctx);
            let ok = f.within(FPDIM_TOLERANCE) && f.error_bound.to_f64() < FPDIM_TOLERANCE;
            verdict(ok, format!("sum {:.12} vs closed form {:.12}", f.sum, f.closed_form))
        }
        "chebyshev_roots" => {
            let (top, below) = chebyshev_at_v(&d.ctx);
            verdict(top.is_zero() && !below.is_zero(), "Q_n(FPdim V) = 0, Q_{n-1}(FPdim V) != 0")
        }
        "invariants_series" => {
            let a = invariant_dims(ver, SERIES_TERMS);
            let b = series_fn(ver, SERIES_TERMS);
            verdict(a == b, format!("m = 0..={SERIES_TERMS}"))
        }
        "ext1_within_blocks" => {
            let Some(pairs) = &d.ext1 else {
                return skipped("p = 2");
            };
            let idx = block_index(ver, &d.blocks);
            let block_of = |i: SimpleLabel| idx[ver.projective_position(d.steinberg[i.0 as usize])];
            match pairs.iter().find(|(a, b)| block_of(*a) != block_of(*b)) {
                None => verdict(true, format!("{} nonzero pairs", pairs.len())),
                Some((a, b)) => verdict(false, format!("{a}, {b}")),
            }
        }
        "ext1_symmetric" => {
            if !ver.p.is_odd() {
                return skipped("p = 2");
            }
            for &a in &d.simples {
                for &b in &d.simples {
                    match (ext1(ver, a, b), ext1(ver, b, a)) {
                        (Ok(x), Ok(y)) if x == y => {}
                        _ => return verdict(false, format!("{a}, {b}")),
                    }
                }
            }
            verdict(true, "all pairs")
        }
        "steinberg_bijection" => {
            let mut seen: Vec<u64> = d.steinberg.iter().map(|s| s.0).collect();
            seen.sort_unstable();
            let onto = seen == ver.projectives().map(|s| s.0).collect::<Vec<_>>();
            let inverse = d
                .simples
                .iter()
                .zip(&d.steinberg)
                .all(|(&i, &s)| simple_of_projective(ver, s).is_ok_and(|j| j == i));
            verdict(onto && inverse, "s and its inverse")
        }
        "covers_compat" => {
            let Some(parent) = ver.parent() else {
                return skipped("n = 1");
            };
            for i in parent.simples() {
                let s_low = steinberg_label(parent, i).expect("valid");
                let s_up = steinberg_label(ver, SimpleLabel(p * i.0));
                if s_up.map(|s| s.0) != Ok(2 * p - 2 + p * s_low.0) {
                    return verdict(false, format!("{i}"));
                }
            }
            verdict(true, format!("{} labels", parent.num_simples()))
        }
        "fusion_consistency" => {
            let Some(ring) = &d.fusion else {
                return skipped("p = 2");
            };
            match check_ring_hom_fusion(ring, opts.samples, opts.seed) {
                Ok(r) if r.passed() => verdict(true, format!("{} sampled pairs, seed {}", r.checked, opts.seed)),
                Ok(r) => {
                    let (i, j, _, _) = r.counterexample.expect("failed check has a witness");
                    verdict(false, format!("T{i} (x) T{j}"))
                }
                Err(e) => verdict(false, e.to_string()),
            }
        }
        other => verdict(false, format!("unknown check {other}")),
    }
}

fn is_pow2(x: &BigInt) -> bool {
    x.trailing_zeros().is_some_and(|t| x.bits() == t + 1)
}

fn block_cartan(cartan: &IntMatrix, ver: Ver, b: &Block) -> IntMatrix {
    cartan.permuted(&b.positions(ver))
}

/// Determinant of each block's Cartan matrix.
pub fn block_cartan_dets(ver: Ver) -> Vec<(Block, BigInt)> {
    let cartan = cartan_descendant(ver);
    block_partition(ver)
        .into_iter()
        .map(|b| {
            let det = block_cartan(&cartan, ver, &b).det();
            (b, det)
        })
        .collect()
}

/// The additive group of the stable Grothendieck ring: the cokernel of
/// the Cartan matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableGr {
    pub order: BigInt,
    pub invariant_factors: Vec<BigInt>,
}

pub fn stable_gr(ver: Ver) -> StableGr {
    let snf = smith_normal_form(&cartan_descendant(ver));
    StableGr { order: snf.order(), invariant_factors: snf.diag }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_builds() {
        let d = build(3, 2).unwrap();
        assert_eq!(d.simples.len(), 6);
        assert_eq!(d.blocks.len(), 4);
        assert!(d.report.all_passed(), "{}", d.report);
        let d = build(2, 2).unwrap();
        assert_eq!((d.simples.len(), d.blocks.len()), (2, 2));
        assert!(d.report.all_passed(), "{}", d.report);
    }

    #[test]
    fn report_is_complete_and_ordered() {
        let r = verify_all(3, 2);
        let names: Vec<&str> = r.checks.iter().map(|c| c.name).collect();
        assert_eq!(names, CHECK_NAMES.to_vec());
        assert!(r.all_passed());
        let r = verify_all(4, 2);
        assert!(!r.all_passed());
        assert_eq!(r.checks.len(), CHECK_NAMES.len());
    }

    #[test]
    fn bound() {
        let opts = BuildOptions { bound: 5, ..Default::default() };
        assert!(matches!(
            build_with(Ver::new(3, 2).unwrap(), &opts),
            Err(Error::BoundExceeded { simples: 6, .. })
        ));
    }

    #[test]
    fn stable_rings() {
        let s = stable_gr(Ver::new(3, 2).unwrap());
        assert_eq!(s.order, BigInt::from(9));
        assert_eq!(s.invariant_factors, ints(&[1, 1, 1, 1, 3, 3]));
        assert_eq!(stable_gr(Ver::new(2, 2).unwrap()).order, BigInt::from(2));
        let s = stable_gr(Ver::new(2, 3).unwrap());
        assert_eq!(s.order, BigInt::from(8));
        assert_eq!(s.invariant_factors.iter().filter(|d| **d == BigInt::from(2)).count(), 3);
    }

    #[test]
    fn block_determinants() {
        let dets = block_cartan_dets(Ver::new(3, 2).unwrap());
        let of = |first: u64| dets.iter().find(|(b, _)| b.members[0].0 == first).unwrap().1.clone();
        assert_eq!(of(3), BigInt::from(3));
        assert_eq!(of(2), BigInt::one());
        let dets = block_cartan_dets(Ver::new(3, 3).unwrap());
        assert!(dets.iter().filter(|(b, _)| b.members.len() == 6).all(|(_, d)| *d == BigInt::from(27)));
    }
}
