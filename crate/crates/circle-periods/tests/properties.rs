//! Property tests of the invariants, each against an independent oracle.
//! Generated inputs are kept small so that exact arithmetic stays fast.

use std::cmp::Ordering;

use num_bigint::BigInt;
use proptest::prelude::*;

use circle_periods::arith::{char_poly, fmt_rational, parse_exact, rat, sharkovskii_cmp, sharkovskii_tail, IntPoly, Rational, ShoNumber};
use circle_periods::cofiniteness;
use circle_periods::families::{instance, FamilyName};
use circle_periods::graphext::{extend_with, strip_monomial, traversal, CombGraph, Excision};
use circle_periods::lifting::{rotation_interval, RotationConfig};
use circle_periods::markov::tol_pow10;
use circle_periods::minentropy::beta;
use circle_periods::periods::{in_m_set, m_set};
use circle_periods::{Digraph, Lifting, PeriodSet};

/// Position in the Sharkovskii order, largest first: odd numbers >= 3 by
/// increasing 2-adic valuation, then powers of two downwards.
fn sharkovskii_rank(n: u64) -> (u8, i64, i64) {
    let a = n.trailing_zeros() as i64;
    let o = (n >> a) as i64;
    if o >= 3 {
        (1, -a, -o)
    } else {
        (0, a, 0)
    }
}

fn fraction() -> impl Strategy<Value = Rational> {
    (0i64..40, 1i64..13).prop_map(|(p, q)| rat(p, q))
}

fn interval() -> impl Strategy<Value = (Rational, Rational)> {
    (fraction(), fraction()).prop_filter_map("nondegenerate", |(a, b)| match a.cmp(&b) {
        Ordering::Less => Some((a, b)),
        Ordering::Greater => Some((b, a)),
        Ordering::Equal => None,
    })
}

fn poly() -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-5i64..6, 1..6).prop_map(|c| IntPoly::from_i64(&c))
}

fn digraph() -> impl Strategy<Value = Digraph> {
    (2usize..6).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(0..n, 0..3), n).prop_map(Digraph::new))
}

/// A connected graph: a spanning tree on `k` vertices plus extra edges and loops.
fn comb_graph() -> impl Strategy<Value = CombGraph> {
    (2usize..6).prop_flat_map(|k| {
        let parents = prop::collection::vec(any::<prop::sample::Index>(), k - 1);
        let extra = prop::collection::vec((0..k, 0..k), 1..4);
        (Just(k), parents, extra).prop_map(|(k, parents, extra)| {
            let name = |i: usize| format!("v{i}");
            let mut edges = Vec::new();
            for (i, p) in parents.iter().enumerate() {
                edges.push([name(p.index(i + 1)), name(i + 1)]);
            }
            for (u, v) in extra {
                edges.push([name(u), name(v)]);
            }
            CombGraph { vertices: (0..k).map(name).collect(), edges, excise: Excision::default() }
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn m_set_matches_fraction_search((c, d) in interval()) {
        let m = m_set(&c, &d).unwrap();
        for n in 1u64..60 {
            let nr = Rational::from_integer(BigInt::from(n));
            let lo = (&c * &nr).floor().to_integer();
            let found = (0..3).any(|j| {
                let k = Rational::from_integer(&lo + BigInt::from(j));
                c < &k / &nr && &k / &nr < d
            });
            prop_assert_eq!(m.contains(n), found, "n = {}", n);
            prop_assert_eq!(in_m_set(&c, &d, n), found);
        }
    }

    #[test]
    fn sharkovskii_order_matches_rank(a in 1u64..300, b in 1u64..300) {
        let got = sharkovskii_cmp(ShoNumber::Finite(a), ShoNumber::Finite(b));
        prop_assert_eq!(got, sharkovskii_rank(a).cmp(&sharkovskii_rank(b)));
        let tail = sharkovskii_tail(ShoNumber::Finite(a));
        prop_assert_eq!(tail.contains(b), sharkovskii_rank(b) <= sharkovskii_rank(a));
    }

    #[test]
    fn polynomial_product_evaluates_and_divides(p in poly(), q in poly(), x in -4i64..5) {
        let x = BigInt::from(x);
        let pq = p.mul(&q);
        prop_assert_eq!(pq.eval_int(&x), p.eval_int(&x) * q.eval_int(&x));
        if !q.is_zero() && !p.is_zero() {
            prop_assert_eq!(pq.div_exact(&q), Some(p.clone()));
        }
    }

    #[test]
    fn rome_polynomial_equals_characteristic_polynomial(g in digraph()) {
        let rome = g.find_rome();
        prop_assert!(g.validate_rome(&rome).is_ok());
        let r = g.rome_char_poly(&rome).unwrap();
        let c = char_poly(&g.matrix());
        prop_assert_eq!(strip_monomial(&r), strip_monomial(&c));
    }

    #[test]
    fn rationals_round_trip(p in -1000i64..1000, q in 1i64..1000) {
        let x = rat(p, q);
        prop_assert_eq!(parse_exact(&fmt_rational(&x)).unwrap(), x.clone());
        let dec = format!("{}e-3", p);
        prop_assert_eq!(parse_exact(&dec).unwrap(), rat(p, 1000));
    }

    #[test]
    fn cofiniteness_is_consistent(finite in prop::collection::btree_set(1u64..30, 0..10), tail in 3u64..40) {
        let ps = PeriodSet::from_parts(finite.iter().copied().filter(|&k| k < tail), Some(tail));
        let sbc = cofiniteness::sbc(&ps).unwrap();
        prop_assert_eq!(Some(sbc), ps.tail_from());
        prop_assert!(!ps.contains(sbc - 1) || sbc == 1);
        let set = cofiniteness::sbcset(&ps).unwrap();
        if let Some(bc) = cofiniteness::bc(&ps).unwrap() {
            prop_assert!(bc <= sbc);
            prop_assert_eq!(set.iter().max().copied(), Some(bc));
        }
        let brute: std::collections::BTreeSet<u64> = (3..=100)
            .filter(|&l| {
                let count = (1..=l - 2).filter(|&k| ps.contains(k)).count() as u32;
                ps.contains(l) && !ps.contains(l - 1) && 1u128 << count <= ((l - 2) as u128).pow(2)
            })
            .collect();
        prop_assert_eq!(set, brute);
    }

    #[test]
    fn translations_rotate_rigidly(p in -20i64..20, q in 1i64..12) {
        let f = Lifting::translation(rat(p, q));
        let rot = rotation_interval(&f, &RotationConfig::default()).unwrap();
        prop_assert_eq!(rot.c, rat(p, q));
        prop_assert_eq!(rot.d, rat(p, q));
    }

    #[test]
    fn traversal_has_the_partition_properties(g in comb_graph()) {
        let Ok((x, a, b)) = g.excised() else { return Ok(()); };
        if x.is_interval().unwrap() {
            prop_assert!(traversal(&x, &a, &b).is_err());
        } else {
            let t = traversal(&x, &a, &b).unwrap();
            prop_assert!(t.m % 2 == 1 && t.m >= 5);
            prop_assert_eq!(t.m, 2 * t.walk.len() - 1);
            prop_assert!(t.parity_property());
            prop_assert!(t.is_surjective_walk());
            prop_assert!(t.t() < t.m);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn extension_polynomial_ignores_the_assignment(perm in Just((0..7usize).collect::<Vec<_>>()).prop_shuffle(), t in 1usize..7) {
        let inst = instance(FamilyName::Dream, 5).unwrap();
        let base: Vec<usize> = (0..7).map(|i| i.min(t)).collect();
        let shuffled: Vec<usize> = perm.iter().map(|&i| base[i]).collect();
        let e1 = extend_with(&inst, 7, &base).unwrap();
        let e2 = extend_with(&inst, 7, &shuffled).unwrap();
        prop_assert_eq!(strip_monomial(&e1.rome_char_poly().unwrap()), strip_monomial(&e2.rome_char_poly().unwrap()));
    }

    #[test]
    fn beta_is_translation_invariant_and_monotone((c, d) in interval(), k in -2i64..3) {
        let tol = tol_pow10(8);
        let b = beta(&c, &d, &tol).unwrap();
        prop_assert!(b.method_agreement);
        let shift = Rational::from_integer(BigInt::from(k));
        let bt = beta(&(&c + &shift), &(&d + &shift), &tol).unwrap();
        prop_assert_eq!(&b.beta, &bt.beta);
        let wider = beta(&(&c - rat(1, 7)), &d, &tol).unwrap();
        prop_assert!(b.beta.lower <= wider.beta.upper);
    }
}
