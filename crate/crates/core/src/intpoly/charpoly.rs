use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::IntPoly;
use crate::graph::IntSymMatrix;

/// `det(xI - A)` by Berkowitz's division-free algorithm.
pub fn char_poly(a: &IntSymMatrix) -> IntPoly {
    let n = a.n();
    // Coefficients highest degree first.
    let mut vect: Vec<BigInt> = vec![BigInt::one()];
    for k in 0..n {
        // Leading block M = A[..k][..k], column C = A[..k][k], row R = C^T.
        let mut q = Vec::with_capacity(k + 2);
        q.push(BigInt::one());
        q.push(-a.get(k, k));
        let mut v: Vec<BigInt> = (0..k).map(|i| a.get(i, k).clone()).collect();
        for _ in 0..k {
            let rv: BigInt = (0..k).map(|i| a.get(k, i) * &v[i]).sum();
            q.push(-rv);
            v = (0..k)
                .map(|i| {
                    (0..k)
                        .filter(|&j| !a.get(i, j).is_zero() && !v[j].is_zero())
                        .map(|j| a.get(i, j) * &v[j])
                        .sum()
                })
                .collect();
        }
        let mut next = vec![BigInt::zero(); k + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, old) in vect.iter().enumerate().take(i + 1) {
                if !old.is_zero() {
                    *slot += &q[i - j] * old;
                }
            }
        }
        vect = next;
    }
    vect.reverse();
    IntPoly::new(vect)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Laplace expansion of `det(xI - A)` along the first row.
    fn cofactor(m: &[Vec<IntPoly>]) -> IntPoly {
        let n = m.len();
        if n == 0 {
            return IntPoly::one();
        }
        let mut total = IntPoly::zero();
        for j in 0..n {
            if m[0][j].is_zero() {
                continue;
            }
            let minor: Vec<Vec<IntPoly>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, p)| p.clone())
                        .collect()
                })
                .collect();
            let term = &m[0][j] * &cofactor(&minor);
            total = if j % 2 == 0 { &total + &term } else { &total - &term };
        }
        total
    }

    fn cofactor_char_poly(a: &IntSymMatrix) -> IntPoly {
        let n = a.n();
        let m: Vec<Vec<IntPoly>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let c = IntPoly::constant(-a.get(i, j));
                        if i == j {
                            &c + &IntPoly::x()
                        } else {
                            c
                        }
                    })
                    .collect()
            })
            .collect();
        cofactor(&m)
    }

    #[test]
    fn small_cases() {
        let zero = IntSymMatrix::from_rows(&[vec![0]]).unwrap();
        assert_eq!(char_poly(&zero), IntPoly::x());
        assert_eq!(char_poly(&IntSymMatrix::zeros(0)), IntPoly::one());
        let edge = IntSymMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(char_poly(&edge), IntPoly::from_i64(&[-1, 0, 1]));
    }

    #[test]
    fn agrees_with_cofactor_expansion() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.gen_range(1..=6);
            let mut a = IntSymMatrix::zeros(n);
            for i in 0..n {
                for j in i..n {
                    a.set(i, j, BigInt::from(rng.gen_range(-3..=3)));
                }
            }
            let p = char_poly(&a);
            assert_eq!(p, cofactor_char_poly(&a));
            assert!(p.is_monic() && p.deg() == n);
        }
    }
}
