use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

use verkit_core::charring::{weyl_char, SymChar};
use verkit_core::cyclo::{fpdim_simple, CycloContext, CycloInt};
use verkit_core::digits::{
    dim_simple, ext1, frobenius_on_simple, simple_of_projective, steinberg_label, FrobeniusImage,
};
use verkit_core::grring::{fold_projectives, FusionRing, GrElement};
use verkit_core::matrix::IntMatrix;
use verkit_core::poly::IntPoly;
use verkit_core::snf::smith_normal_form;
use verkit_core::tilting::{decompose_tilting, tilting_char};
use verkit_core::{Prime, ProjIndex, SimpleLabel, Ver};

fn ver(p: u64, n: u32) -> Ver {
    Ver::new(p, n).unwrap()
}

fn config() -> ProptestConfig {
    ProptestConfig { cases: 256, failure_persistence: None, ..ProptestConfig::default() }
}

fn odd_labels() -> impl Strategy<Value = (u64, u32, u64, u64)> {
    prop::sample::select(vec![(3u64, 2u32), (3, 3), (5, 2), (7, 2), (5, 3)]).prop_flat_map(|(p, n)| {
        let count = p.pow(n - 1) * (p - 1);
        (Just(p), Just(n), 0..count, 0..count)
    })
}

/// Ext^1 by recursion on the last digit.
fn ext1_recursive(p: u64, n: u32, a: u64, b: u64) -> u32 {
    if n == 1 {
        return 0;
    }
    let (a1, m) = (a / p, a % p);
    let (b1, r) = (b / p, b % p);
    if r == m {
        ext1_recursive(p, n - 1, a1, b1)
    } else if r + m == p - 2 {
        let last = a1 % p;
        u32::from((last < p - 1 && b1 == a1 + 1) || (last > 0 && b1 + 1 == a1))
    } else {
        0
    }
}

fn small_char() -> impl Strategy<Value = SymChar> {
    prop::collection::vec(0u64..7, 1..4).prop_map(|ms| {
        ms.iter().fold(SymChar::zero(), |acc, &m| &acc + &SymChar::weyl(m))
    })
}

fn cyclo_element(ctx: Arc<CycloContext>) -> impl Strategy<Value = CycloInt> {
    prop::collection::vec(-5i64..=5, 0..20).prop_map(move |cs| {
        CycloInt::from_poly(&ctx, &IntPoly::from_i64(&cs))
    })
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn char_products_commute_and_keep_dimension(a in small_char(), b in small_char()) {
        let ab = &a * &b;
        prop_assert_eq!(&ab, &(&b * &a));
        prop_assert_eq!(ab.dim_at_one(), a.dim_at_one() * b.dim_at_one());
        prop_assert!(ab.is_effective());
    }

    #[test]
    fn weyl_expansion_round_trips(a in small_char()) {
        let e = a.weyl_expand();
        prop_assert!(e.values().all(|c| c > &BigInt::zero()));
        prop_assert_eq!(SymChar::from_weyl_multiplicities(e.iter()), a);
    }

    #[test]
    fn frobenius_twist_is_multiplicative(a in small_char(), b in small_char(), p in prop::sample::select(vec![2u64, 3, 5])) {
        let p = Prime::new(p).unwrap();
        prop_assert_eq!((&a * &b).frobenius_twist(p), &a.frobenius_twist(p) * &b.frobenius_twist(p));
    }

    #[test]
    fn tilting_tensor_products_are_tilting(p in prop::sample::select(vec![2u64, 3, 5]), i in 0u64..30, j in 0u64..30) {
        let p = Prime::new(p).unwrap();
        let ch = &*tilting_char(p, i) * &*tilting_char(p, j);
        let sum = decompose_tilting(p, &ch).unwrap();
        prop_assert_eq!(sum.character(p), ch);
    }

    #[test]
    fn weyl_char_rejects_nothing_nonnegative(m in 0i64..200) {
        let w = weyl_char(m).unwrap();
        prop_assert_eq!(w.dim_at_one(), BigInt::from(m + 1));
        prop_assert!(w.has_uniform_parity());
    }

    #[test]
    fn cyclotomic_ring_axioms(
        (a, b, c) in prop::sample::select(vec![(2u64, 3u32), (3, 2), (5, 1), (3, 3)])
            .prop_flat_map(|(p, n)| {
                let ctx = CycloContext::new(ver(p, n));
                (cyclo_element(ctx.clone()), cyclo_element(ctx.clone()), cyclo_element(ctx))
            })
    ) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &a), &CycloInt::zero(a.context()));
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
    }

    #[test]
    fn smith_form_certificate(rows in prop::collection::vec(prop::collection::vec(-9i64..=9, 4), 1..5)) {
        let m = IntMatrix::from_rows(&rows);
        let s = smith_normal_form(&m);
        prop_assert!(s.verify(&m));
        if m.rows() == m.cols() {
            prop_assert_eq!(s.diag.iter().product::<BigInt>(), m.det().magnitude().clone().into());
        }
    }

    #[test]
    fn ext1_matches_recursion((p, n, a, b) in odd_labels()) {
        let e = ext1(ver(p, n), SimpleLabel(a), SimpleLabel(b)).unwrap();
        prop_assert_eq!(e, ext1_recursive(p, n, a, b), "a = {}, b = {}", a, b);
    }

    #[test]
    fn steinberg_labels_round_trip((p, n, a, _b) in odd_labels()) {
        let v = ver(p, n);
        let s = steinberg_label(v, SimpleLabel(a)).unwrap();
        prop_assert!(s.0 >= v.first_projective() && s.0 <= v.last_projective());
        prop_assert_eq!(simple_of_projective(v, s).unwrap(), SimpleLabel(a));
    }

    #[test]
    fn dimension_mod_p_is_multiplicative((p, n, a, b) in odd_labels()) {
        let v = ver(p, n);
        let r = FusionRing::new(v).unwrap();
        let d = |i: u64| dim_simple(v, SimpleLabel(i)).unwrap().1;
        let rhs = r.fuse(SimpleLabel(a), SimpleLabel(b)).unwrap().terms()
            .fold(0i64, |acc, (c, k)| (acc + k * d(c.0) as i64).rem_euclid(p as i64));
        prop_assert_eq!((d(a) * d(b) % p) as i64, rhs);
    }

    #[test]
    fn folding_reassembles((p, n, a, b) in odd_labels()) {
        let r = FusionRing::new(ver(p, n)).unwrap();
        let prod = r.fuse(SimpleLabel(a), SimpleLabel(b)).unwrap();
        let f = fold_projectives(&r, &prod).unwrap();
        let mut back = f.remainder.clone();
        for &(i, c) in &f.simples {
            back.add_term(i.0, c);
        }
        for &(i, c) in &f.projectives {
            back.add_scaled(&r.projective_class(i).unwrap(), c);
        }
        prop_assert_eq!(back, prod);
        if n == 2 {
            prop_assert!(f.remainder.is_zero());
        }
    }
}

#[test]
fn ext1_small_categories_exhaustive() {
    for (p, n) in [(3, 2), (3, 3), (5, 2)] {
        let v = ver(p, n);
        for a in v.simples() {
            assert_eq!(ext1(v, a, a).unwrap(), 0);
            for b in v.simples() {
                assert_eq!(ext1(v, a, b).unwrap(), ext1_recursive(p, n, a.0, b.0), "({p},{n}) {a} {b}");
            }
        }
    }
}

#[test]
fn ext1_level_two_pattern() {
    // a = kp + c - 1 against (k + 2)p - c - 1 and kp - c - 1
    for p in [3u64, 5, 7] {
        let v = ver(p, 2);
        let mut expect = std::collections::BTreeSet::new();
        for k in 0..p {
            for c in 1..p {
                let a = (k * p + c) as i64 - 1;
                for b in [((k + 2) * p) as i64 - c as i64 - 1, (k * p) as i64 - c as i64 - 1] {
                    let count = (p * (p - 1)) as i64;
                    if (0..count).contains(&a) && (0..count).contains(&b) {
                        expect.insert((a.min(b) as u64, a.max(b) as u64));
                    }
                }
            }
        }
        let mut got = std::collections::BTreeSet::new();
        for a in v.simples() {
            for b in v.simples().filter(|b| b.0 > a.0) {
                if ext1(v, a, b).unwrap() == 1 {
                    got.insert((a.0, b.0));
                }
            }
        }
        assert_eq!(got, expect, "p = {p}");
    }
}

#[test]
fn simple_current_is_an_involution() {
    for (p, n) in [(3, 2), (3, 3), (5, 2), (7, 2)] {
        let v = ver(p, n);
        let r = FusionRing::new(v).unwrap();
        let g = SimpleLabel(p.pow(n - 1) * (p - 2));
        assert_eq!(r.fuse(g, g).unwrap(), GrElement::unit(v));
        let mut seen = std::collections::BTreeSet::new();
        for i in v.simples() {
            let img = r.fuse(g, i).unwrap();
            let terms: Vec<_> = img.terms().collect();
            assert_eq!(terms.len(), 1);
            let (j, c) = terms[0];
            assert_eq!(c, 1);
            assert_eq!(r.fuse(g, j).unwrap(), GrElement::basis(v, i).unwrap());
            seen.insert(j);
        }
        assert_eq!(seen.len() as u64, v.num_simples());
    }
}

#[test]
fn fusion_commutes_exhaustively_when_small() {
    for (p, n) in [(3, 2), (3, 3), (5, 2)] {
        let v = ver(p, n);
        let r = FusionRing::new(v).unwrap();
        for a in v.simples() {
            for b in v.simples() {
                assert_eq!(r.fuse(a, b).unwrap(), r.fuse(b, a).unwrap());
            }
        }
    }
}

#[test]
fn fpdims_are_positive_reals() {
    for (p, n) in [(3, 2), (5, 2), (2, 3)] {
        let ctx = CycloContext::new(ver(p, n));
        for i in ctx.ver().simples() {
            let d = fpdim_simple(&ctx, i).unwrap();
            let (re, im) = d.numeric();
            assert!(re.to_f64() >= 1.0 - 1e-12, "({p},{n}) {i}");
            assert!(im.to_f64().abs() < 1e-12);
        }
    }
}

#[test]
fn frobenius_kills_exactly_the_top_labels() {
    for (p, n) in [(3, 2), (3, 3), (5, 2)] {
        let v = ver(p, n);
        let zero = v
            .simples()
            .filter(|&i| frobenius_on_simple(v, i).unwrap() == FrobeniusImage::Zero)
            .count() as u64;
        // one label in p^(n-1) per leading digit
        assert_eq!(zero, (p - 1) * p.pow(n - 2));
    }
}

#[test]
fn projective_indices_cover_range() {
    for (p, n) in [(2, 3), (3, 2), (5, 2)] {
        let v = ver(p, n);
        for s in v.projectives() {
            let i = simple_of_projective(v, s).unwrap();
            assert_eq!(steinberg_label(v, i).unwrap(), s);
        }
        assert!(simple_of_projective(v, ProjIndex(v.first_projective() - 1)).is_err());
    }
}
