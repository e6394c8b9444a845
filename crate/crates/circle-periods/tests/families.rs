//! Family members checked against oracles that share no code with the
//! rome method or the rotation-interval analysis.

use circle_periods::arith::{char_poly, to_f64};
use circle_periods::families::{dream_poly, instance, persistent_per, FamilyName};
use circle_periods::graphext::strip_monomial;
use circle_periods::markov::tol_pow10;
use circle_periods::oracle::{periods_up_to, OracleConfig};

/// Spectral radius by power iteration in floating point.
fn power_iteration(m: &[Vec<i64>]) -> f64 {
    let n = m.len();
    let mut v = vec![1.0f64; n];
    let mut lambda = 0.0;
    for _ in 0..20_000 {
        let mut w = vec![0.0; n];
        for (i, row) in m.iter().enumerate() {
            for (j, &a) in row.iter().enumerate() {
                w[i] += a as f64 * v[j];
            }
        }
        // Averaging with the previous vector removes periodic oscillation.
        for (wi, vi) in w.iter_mut().zip(&v) {
            *wi += vi;
        }
        let norm = w.iter().cloned().fold(0.0, f64::max);
        lambda = norm;
        v = w.into_iter().map(|x| x / norm).collect();
    }
    lambda - 1.0
}

#[test]
fn entropy_bracket_agrees_with_power_iteration() {
    for (name, n) in [(FamilyName::Dream, 3), (FamilyName::Dream, 6), (FamilyName::Persistent, 7), (FamilyName::Montevideo, 3)] {
        let inst = instance(name, n).unwrap();
        let sigma = inst.markov.entropy(&tol_pow10(12)).unwrap();
        let approx = power_iteration(&inst.markov.matrix());
        let (lo, hi) = (to_f64(&sigma.lower), to_f64(&sigma.upper));
        assert!((approx - 0.5 * (lo + hi)).abs() < 1e-6, "{name} {n}: {approx} vs [{lo}, {hi}]");
    }
}

#[test]
fn rome_polynomial_matches_dense_determinant() {
    for (name, n) in [(FamilyName::Dream, 3), (FamilyName::Dream, 5), (FamilyName::Persistent, 5), (FamilyName::Montevideo, 3)] {
        let inst = instance(name, n).unwrap();
        let m = &inst.markov;
        let rome = m.rome_char_poly(&m.find_rome()).unwrap();
        let dense = char_poly(&m.matrix());
        assert_eq!(strip_monomial(&rome), strip_monomial(&dense), "{name} {n}");
    }
}

#[test]
fn dream_closed_form_is_a_multiple_of_the_characteristic_polynomial() {
    for n in 3..=6u64 {
        let inst = instance(FamilyName::Dream, n).unwrap();
        let dense = strip_monomial(&char_poly(&inst.markov.matrix()));
        assert!(dream_poly(n as usize).div_exact(&dense).is_some(), "n = {n}");
    }
}

#[test]
fn oracle_reaches_beyond_the_verification_bound() {
    let cfg = OracleConfig::default();
    for n in [5u64, 7] {
        let inst = instance(FamilyName::Persistent, n).unwrap();
        let found = periods_up_to(&inst.markov, n + 8, &cfg).unwrap().periods();
        assert_eq!(found, persistent_per(n).members_up_to(n + 8), "n = {n}");
    }
    let inst = instance(FamilyName::Dream, 4).unwrap();
    let found = periods_up_to(&inst.markov, 14, &cfg).unwrap().periods();
    assert_eq!(found, (4..=14).collect());
}

#[test]
fn orbit_points_are_periodic_with_the_prescribed_rotation() {
    let inst = instance(FamilyName::Montevideo, 3).unwrap();
    let (q, p) = inst.x_orbit;
    for (tag, (period, shift)) in [(circle_periods::families::OrbitTag::X, (q, p)), (circle_periods::families::OrbitTag::Y, inst.y_orbit)] {
        let x = inst.coordinate(tag, 0);
        let y = inst.lifting.iterate(&x, period);
        assert_eq!(y - &x, circle_periods::arith::int(shift as i64));
    }
}
