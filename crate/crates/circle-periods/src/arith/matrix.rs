use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::IntPoly;

/// Characteristic polynomial `det(xI - M)` by fraction-free Bareiss
/// elimination over Z[x].
///
/// The leading principal minors of `xI - M` are monic, so no pivoting is
/// needed and every division is exact.
pub fn char_poly(m: &[Vec<i64>]) -> IntPoly {
    let n = m.len();
    if n == 0 {
        return IntPoly::one();
    }
    assert!(m.iter().all(|r| r.len() == n), "matrix must be square");
    let a: Vec<Vec<IntPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = IntPoly::constant(BigInt::from(-m[i][j]));
                    if i == j {
                        c.add(&IntPoly::monomial(1, 1))
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect();
    det_poly(a)
}

/// Determinant of a matrix over Z[x] by Bareiss elimination with row pivoting.
#[allow(clippy::needless_range_loop)]
pub fn det_poly(mut a: Vec<Vec<IntPoly>>) -> IntPoly {
    let n = a.len();
    if n == 0 {
        return IntPoly::one();
    }
    let mut negate = false;
    let mut prev = IntPoly::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    negate = !negate;
                }
                None => return IntPoly::zero(),
            }
        }
        let pivot = a[k][k].clone();
        let unit = prev.degree() == Some(0) && prev.lead().is_one();
        for i in k + 1..n {
            let aik = std::mem::take(&mut a[i][k]);
            for j in k + 1..n {
                let mut v = pivot.mul(&a[i][j]);
                if !aik.is_zero() && !a[k][j].is_zero() {
                    v = v.sub(&aik.mul(&a[k][j]));
                }
                a[i][j] = if unit { v } else { v.div_exact(&prev).expect("Bareiss division is exact") };
            }
        }
        prev = pivot;
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        d.neg()
    } else {
        d
    }
}

/// Exact integer determinant by Bareiss elimination with row pivoting.
pub fn det_int(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(char_poly(&[vec![1]]), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(char_poly(&[vec![1, 0], vec![0, 1]]), IntPoly::from_i64(&[1, -2, 1]));
        // Golden mean shift.
        assert_eq!(char_poly(&[vec![1, 1], vec![1, 0]]), IntPoly::from_i64(&[-1, -1, 1]));
    }

    #[test]
    fn determinant_with_pivoting() {
        let m: Vec<Vec<BigInt>> = [[0, 2, 1], [1, 0, 3], [4, 1, 0]]
            .iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        // 0*(0-3) - 2*(0-12) + 1*(1-0) = 25
        assert_eq!(det_int(&m), BigInt::from(25));
    }

    #[test]
    fn char_poly_matches_determinants() {
        let m = vec![vec![0, 1, 1, 0], vec![1, 0, 0, 1], vec![0, 1, 0, 1], vec![1, 1, 0, 0]];
        let p = char_poly(&m);
        for x in 0..4i64 {
            let xm: Vec<Vec<BigInt>> = (0..4)
                .map(|i| (0..4).map(|j| BigInt::from(if i == j { x } else { 0 } - m[i][j])).collect())
                .collect();
            assert_eq!(p.eval_int(&BigInt::from(x)), det_int(&xm));
        }
    }
}
