use num_bigint::BigInt;

use super::IntPoly;
use crate::graph::IntSymMatrix;

/// The monic-normalised Chebyshev polynomial with `T_m(z + 1/z) = z^m + z^-m`.
pub fn chebyshev_first_kind(m: usize) -> IntPoly {
    let mut prev = IntPoly::constant(2);
    if m == 0 {
        return prev;
    }
    let mut cur = IntPoly::x();
    for _ in 1..m {
        let next = &(&IntPoly::x() * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `T_m(A)` by the same three-term recurrence.
pub fn matrix_chebyshev(a: &IntSymMatrix, m: usize) -> IntSymMatrix {
    let n = a.n();
    let mut prev = IntSymMatrix::identity(n).scale(&BigInt::from(2));
    if m == 0 {
        return prev;
    }
    let mut cur = a.clone();
    for _ in 1..m {
        let next = a.mul(&cur).add(&prev.neg());
        prev = cur;
        cur = next;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_degrees() {
        assert_eq!(chebyshev_first_kind(0), IntPoly::constant(2));
        assert_eq!(chebyshev_first_kind(1), IntPoly::x());
        assert_eq!(chebyshev_first_kind(2), IntPoly::from_i64(&[-2, 0, 1]));
        assert_eq!(chebyshev_first_kind(3), IntPoly::from_i64(&[0, -3, 0, 1]));
    }

    #[test]
    fn defining_identity() {
        // z^m T_m(z + 1/z) = z^{2m} + 1
        for m in 0..=12 {
            let t = chebyshev_first_kind(m);
            let mut lhs = IntPoly::zero();
            let zz1 = IntPoly::from_i64(&[1, 0, 1]);
            for (k, c) in t.coeffs().iter().enumerate() {
                let term = &zz1.pow(k as u32) * &IntPoly::monomial(c.clone(), m - k);
                lhs = &lhs + &term;
            }
            let rhs = &IntPoly::monomial(1, 2 * m) + &IntPoly::one();
            assert_eq!(lhs, rhs, "m = {m}");
        }
    }

    #[test]
    fn matrix_version_on_an_edge() {
        let a = IntSymMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(matrix_chebyshev(&a, 1), a);
        let minus_i = IntSymMatrix::from_rows(&[vec![-1, 0], vec![0, -1]]).unwrap();
        assert_eq!(matrix_chebyshev(&a, 2), minus_i);
    }
}
