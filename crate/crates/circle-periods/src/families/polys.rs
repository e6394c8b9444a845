//! Closed-form entropy polynomials of the three families and of their
//! extensions to graphs with a circuit.

use crate::arith::IntPoly;

fn p(terms: &[(i64, usize)]) -> IntPoly {
    IntPoly::from_terms(terms)
}

/// `(x^{4n-2} - 1)(x - 1) - 2 x^n (x^{2n-1} - 1)`.
pub fn dream_poly(n: usize) -> IntPoly {
    let a = p(&[(1, 4 * n - 2), (-1, 0)]).mul(&p(&[(1, 1), (-1, 0)]));
    let b = p(&[(2, 3 * n - 1), (-2, n)]);
    a.sub(&b)
}

/// `x^{2n}(x^2 - 1) - 2x^{(3n+1)/2} - 2x^{n+1} - 2x^{(n+3)/2} - m x^2 - m`;
/// the circle map is `m = 1`.
pub fn persistent_poly_m(n: usize, m: i64) -> IntPoly {
    p(&[
        (1, 2 * n + 2),
        (-1, 2 * n),
        (-2, (3 * n).div_ceil(2)),
        (-2, n + 1),
        (-2, (n + 3) / 2),
        (-m, 2),
        (-m, 0),
    ])
}

pub fn persistent_poly(n: usize) -> IntPoly {
    persistent_poly_m(n, 1)
}

/// Rome polynomial of the persistent Markov graph drawn for `n = 4k+1`:
/// `x^{2n}(x^2 - 1) - 2x^{(3n+3)/2} - 2x^{n+1} - 2x^{(n+1)/2} - m x^2 - m`.
/// For `n = 4k-1` it coincides with `persistent_poly_m`.
pub fn persistent_graph_poly_m(n: usize, m: i64) -> IntPoly {
    if n % 4 == 3 {
        return persistent_poly_m(n, m);
    }
    p(&[
        (1, 2 * n + 2),
        (-1, 2 * n),
        (-2, (3 * n + 3) / 2),
        (-2, n + 1),
        (-2, n.div_ceil(2)),
        (-m, 2),
        (-m, 0),
    ])
}

/// `(x^{4n-2} - m)(x - 1) - x^{2n-1}(2x^n - x - 1) - m x^n (x^{n-1}(x + 1) - 2)`.
pub fn dream_poly_m(n: usize, m: i64) -> IntPoly {
    let a = p(&[(1, 4 * n - 2), (-m, 0)]).mul(&p(&[(1, 1), (-1, 0)]));
    let b = p(&[(2, 3 * n - 1), (-1, 2 * n), (-1, 2 * n - 1)]);
    let c = p(&[(m, 2 * n), (m, 2 * n - 1), (-2 * m, n)]);
    a.sub(&b).sub(&c)
}

/// `q = 2n^2`, the common period of both montevideo orbits.
pub fn montevideo_q(n: usize) -> usize {
    2 * n * n
}

/// `kappa_2, kappa_1, kappa_0` of the montevideo family.
pub fn montevideo_kappas(n: usize) -> (IntPoly, IntPoly, IntPoly) {
    let k2 = p(&[(1, 4 * n), (-2, 3 * n), (-1, 2 * n + 1), (-2, 2 * n), (-3, 2 * n - 1), (-2, n), (1, 0)]);
    let k1 = p(&[(4, 2 * n), (2, n + 1), (4, n), (2, n - 1), (4, 0)]);
    let k0 = p(&[(1, 4 * n), (-2, 2 * n - 1), (1, 0)]);
    (k2, k1, k0)
}

/// `kappa_2 (x^{2q} + 1) + kappa_1 x^{q+n} - 2 kappa_0`.
pub fn montevideo_poly(n: usize) -> IntPoly {
    let q = montevideo_q(n);
    let (k2, k1, k0) = montevideo_kappas(n);
    k2.mul(&p(&[(1, 2 * q), (1, 0)])).add(&k1.shift(q + n)).sub(&k0.scale(&2.into()))
}

/// Extended `kappa~_2, kappa~_1, kappa~_0` for `m` parallel arms.
pub fn montevideo_kappas_m(n: usize, m: i64) -> (IntPoly, IntPoly, IntPoly) {
    let k2 = p(&[
        (1, 4 * n),
        (-(m + 1), 3 * n),
        (-(m + 1), 2 * n),
        (-(m + 1), n),
        (-1, 2 * n + 1),
        (-(m + 2), 2 * n - 1),
        (1, 0),
    ]);
    let k1 = p(&[
        (m - 1, 4 * n),
        (m - 1, 0),
        (2 * (m + 1), 3 * n),
        (2 * (m + 1), 2 * n),
        (2 * (m + 1), n),
        (2, 2 * n + 1),
        (2, 2 * n - 1),
    ]);
    let (_, _, k0) = montevideo_kappas(n);
    (k2, k1, k0)
}

/// `kappa~_2 (x^{2q} + 1) + kappa~_1 x^q - (m+1) kappa~_0`.
pub fn montevideo_poly_m(n: usize, m: i64) -> IntPoly {
    let q = montevideo_q(n);
    let (k2, k1, k0) = montevideo_kappas_m(n, m);
    k2.mul(&p(&[(1, 2 * q), (1, 0)])).add(&k1.shift(q)).sub(&k0.scale(&(m + 1).into()))
}

/// Cofactor the paper divides out of the montevideo polynomial.
pub fn montevideo_cofactor(n: usize) -> IntPoly {
    p(&[(1, 2 * n - 1), (-1, 0)]).mul(&p(&[(1, 2 * n + 1), (-1, 0)]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn extended_forms_reduce_to_circle_forms() {
        for n in 3..8 {
            assert_eq!(dream_poly_m(n, 1), dream_poly(n));
        }
        for n in [5, 7, 9] {
            assert_eq!(persistent_poly_m(n, 1), persistent_poly(n));
        }
        // With m = 1 the extended kappas collapse: kappa~_1 x^q = kappa_1 x^{q+n}.
        for n in 3..6 {
            let (k2, k1, _) = montevideo_kappas(n);
            let (e2, e1, _) = montevideo_kappas_m(n, 1);
            assert_eq!(k2, e2);
            assert_eq!(e1, k1.shift(n));
            assert_eq!(montevideo_poly_m(n, 1), montevideo_poly(n));
        }
    }

    #[test]
    fn dream_poly_small_case() {
        // n = 3: (x^10 - 1)(x - 1) - 2x^3(x^5 - 1).
        let t = dream_poly(3);
        assert_eq!(t.degree(), Some(11));
        assert_eq!(t.eval_int(&BigInt::from(1)), BigInt::from(0));
        assert_eq!(t.eval_int(&BigInt::from(2)), BigInt::from(1023 - 2 * 8 * 31));
    }
}
