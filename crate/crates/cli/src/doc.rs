//! Serializable output documents.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use verkit_core::catalog::{CategoryData, CheckStatus, VerificationReport};
use verkit_core::grring::{Folded, GrElement};
use verkit_core::IntMatrix;

pub const SCHEMA_VERSION: u32 = 1;

/// Integer that serializes as a JSON number when it fits in `i64` and as a
/// decimal string otherwise.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Num(pub BigInt);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match i64::try_from(&self.0) {
            Ok(v) => s.serialize_i64(v),
            Err(_) => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(Num(BigInt::from(v))),
            Raw::Text(s) => s.parse().map(Num).map_err(serde::de::Error::custom),
        }
    }
}

impl fmt::Display for Num {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<BigInt> for Num {
    fn from(v: BigInt) -> Self {
        Num(v)
    }
}

impl From<i64> for Num {
    fn from(v: i64) -> Self {
        Num(BigInt::from(v))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputDocument {
    pub schema_version: u32,
    pub payload: Payload,
}

impl OutputDocument {
    pub fn new(payload: Payload) -> Self {
        OutputDocument { schema_version: SCHEMA_VERSION, payload }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Report(Box<ReportDoc>),
    Matrix(MatrixDoc),
    Fusion(FusionDoc),
    FusionTable(FusionTableDoc),
    Blocks(BlocksDoc),
    Ext1(Ext1Doc),
    Series(SeriesDoc),
    Tilting(TiltingDoc),
    Verification(VerificationDoc),
}

/// Row-major matrix with explicit index labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub name: String,
    pub p: u64,
    pub n: u32,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    pub rows: Vec<Vec<Num>>,
}

impl MatrixDoc {
    pub fn from_matrix(name: &str, p: u64, n: u32, m: &IntMatrix, rows: Vec<String>, cols: Vec<String>) -> Self {
        let data = (0..m.rows()).map(|i| (0..m.cols()).map(|j| Num(m[(i, j)].clone())).collect()).collect();
        MatrixDoc { name: name.to_string(), p, n, row_labels: rows, col_labels: cols, rows: data }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Correspondence {
    pub simple: u64,
    pub projective: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDoc {
    pub level: u32,
    pub size: usize,
    pub projectives: Vec<u64>,
    pub simples: Vec<u64>,
    pub det: Num,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlocksDoc {
    pub p: u64,
    pub n: u32,
    pub blocks: Vec<BlockDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FpdimDoc {
    pub simple: u64,
    /// Decimal value of `FPdim(L_i)`, 15 places.
    pub simple_dim: String,
    pub projective_dim: String,
    /// Dimension of `L_i` modulo `p`.
    pub dim_mod_p: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckDoc {
    pub name: String,
    pub status: String,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationDoc {
    pub p: u64,
    pub n: u32,
    pub samples: usize,
    pub seed: u64,
    pub all_passed: bool,
    pub checks: Vec<CheckDoc>,
}

impl VerificationDoc {
    pub fn new(p: u64, n: u32, samples: usize, seed: u64, r: &VerificationReport) -> Self {
        let checks = r
            .checks
            .iter()
            .map(|c| CheckDoc {
                name: c.name.to_string(),
                status: match c.status {
                    CheckStatus::Pass => "pass",
                    CheckStatus::Fail => "fail",
                    CheckStatus::Skipped => "skipped",
                }
                .to_string(),
                witness: c.witness.clone(),
            })
            .collect();
        VerificationDoc { p, n, samples, seed, all_passed: r.all_passed(), checks }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub p: u64,
    pub n: u32,
    pub simples: Vec<u64>,
    pub correspondence: Vec<Correspondence>,
    pub cartan: MatrixDoc,
    pub decomposition: MatrixDoc,
    pub blocks: Vec<BlockDoc>,
    pub fpdims: Vec<FpdimDoc>,
    /// `None` for `p = 2`.
    pub ext1: Option<Vec<(u64, u64)>>,
    pub verification: VerificationDoc,
}

pub fn simple_labels(xs: impl IntoIterator<Item = u64>) -> Vec<String> {
    xs.into_iter().map(|i| format!("L{i}")).collect()
}

impl ReportDoc {
    pub fn from_data(d: &CategoryData, samples: usize, seed: u64) -> Self {
        let (p, n) = (d.ver.p.get(), d.ver.n);
        let simples: Vec<u64> = d.simples.iter().map(|s| s.0).collect();
        let correspondence =
            d.simples.iter().zip(&d.steinberg).map(|(i, s)| Correspondence { simple: i.0, projective: s.0 }).collect();
        let cartan = MatrixDoc::from_matrix(
            "cartan",
            p,
            n,
            &d.cartan_by_simple(),
            simple_labels(simples.iter().copied()),
            simple_labels(simples.iter().copied()),
        );
        let decomposition = MatrixDoc::from_matrix(
            "decomposition",
            p,
            n,
            &d.decomposition,
            d.ver.projectives().map(|s| format!("T{}", s.0)).collect(),
            (0..d.decomposition.cols()).map(|j| format!("W{j}")).collect(),
        );
        let blocks = d
            .blocks
            .iter()
            .zip(&d.block_dets)
            .map(|(b, det)| {
                let mut simples: Vec<u64> = b
                    .members
                    .iter()
                    .map(|s| verkit_core::digits::simple_of_projective(d.ver, *s).expect("valid").0)
                    .collect();
                simples.sort_unstable();
                BlockDoc {
                    level: b.level,
                    size: b.members.len(),
                    projectives: b.members.iter().map(|s| s.0).collect(),
                    simples,
                    det: Num(det.clone()),
                }
            })
            .collect();
        let fpdims = d
            .simples
            .iter()
            .map(|&i| FpdimDoc {
                simple: i.0,
                simple_dim: format!("{:.15}", d.fpdim_simple[i.0 as usize].numeric().0.to_f64()),
                projective_dim: format!("{:.15}", d.fpdim_projective[i.0 as usize].numeric().0.to_f64()),
                dim_mod_p: verkit_core::digits::dim_simple(d.ver, i).expect("valid").1,
            })
            .collect();
        let ext1 = d.ext1.as_ref().map(|pairs| pairs.iter().map(|(a, b)| (a.0, b.0)).collect());
        ReportDoc {
            p,
            n,
            simples,
            correspondence,
            cartan,
            decomposition,
            blocks,
            fpdims,
            ext1,
            verification: VerificationDoc::new(p, n, samples, seed, &d.report),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldedDoc {
    pub simples: Vec<(u64, i64)>,
    pub projectives: Vec<(u64, i64)>,
    pub remainder: Vec<(u64, i64)>,
    pub text: String,
}

impl From<&Folded> for FoldedDoc {
    fn from(f: &Folded) -> Self {
        FoldedDoc {
            simples: f.simples.iter().map(|(i, c)| (i.0, *c)).collect(),
            projectives: f.projectives.iter().map(|(i, c)| (i.0, *c)).collect(),
            remainder: f.remainder.terms().map(|(i, c)| (i.0, c)).collect(),
            text: f.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionDoc {
    pub p: u64,
    pub n: u32,
    pub a: u64,
    pub b: u64,
    pub vector: Vec<i64>,
    pub folded: FoldedDoc,
}

impl FusionDoc {
    pub fn new(p: u64, n: u32, a: u64, b: u64, v: &GrElement, f: &Folded) -> Self {
        FusionDoc { p, n, a, b, vector: v.coeffs().to_vec(), folded: f.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionTableDoc {
    pub p: u64,
    pub n: u32,
    pub labels: Vec<u64>,
    /// `cells[r][c]` is the folded form of `L_labels[r] (x) L_labels[c]`.
    pub cells: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ext1Doc {
    pub p: u64,
    pub n: u32,
    pub pairs: Vec<(u64, u64)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesDoc {
    pub p: u64,
    pub n: u32,
    pub max: usize,
    pub invariant_dims: Vec<Num>,
    pub series_fn: Vec<Num>,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TiltingDoc {
    pub p: u64,
    pub m: u64,
    pub dim: Num,
    /// Weyl multiplicities `(j, [T_m : W_j])`, descending `j`.
    pub weyl: Vec<(u64, Num)>,
    /// Coefficients of the character on nonnegative weights, descending.
    pub character: Vec<(i64, Num)>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn big_numbers_round_trip_as_strings() {
        let big = Num(BigInt::from(i64::MAX) * 10);
        let s = serde_json::to_string(&big).unwrap();
        assert_eq!(s, "\"92233720368547758070\"");
        assert_eq!(serde_json::from_str::<Num>(&s).unwrap(), big);
        let small = Num::from(-7);
        assert_eq!(serde_json::to_string(&small).unwrap(), "-7");
        assert_eq!(serde_json::from_str::<Num>("-7").unwrap(), small);
    }
}
