//! Exact symmetric elimination, fraction-free determinants and minors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::graph::IntSymMatrix;

/// `M = sum_k d[k] * l[k] * l[k]^T`, where `l[k]` has a 1 at `pivots[k]` and
/// zeros at earlier pivots.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ldl {
    pub pivots: Vec<usize>,
    pub d: Vec<BigRational>,
    pub l: Vec<Vec<BigRational>>,
}

impl Ldl {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Checks the factorisation against `m` exactly.
    pub fn reconstructs(&self, m: &IntSymMatrix) -> bool {
        let n = m.n();
        if self.d.iter().any(|d| !d.is_positive()) || self.l.iter().any(|c| c.len() != n) {
            return false;
        }
        (0..n).all(|i| {
            (i..n).all(|j| {
                let s: BigRational = (0..self.rank())
                    .map(|k| &self.d[k] * &self.l[k][i] * &self.l[k][j])
                    .sum();
                s == BigRational::from_integer(m.get(i, j).clone())
            })
        })
    }
}

/// Outcome of the PSD elimination.
#[derive(Debug, Clone)]
pub enum Elimination {
    Psd(Ldl),
    /// An integer vector `x` with `x^T M x < 0`.
    NotPsd(Vec<BigInt>),
}

fn rat(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

/// Symmetric elimination in diagonal order: positive pivots are eliminated,
/// a zero pivot must have a vanishing residual row, a negative pivot fails.
pub fn eliminate(m: &IntSymMatrix) -> Elimination {
    let n = m.n();
    let mut s: Vec<Vec<BigRational>> = (0..n).map(|i| (0..n).map(|j| rat(m.get(i, j))).collect()).collect();
    let mut ldl = Ldl {
        pivots: Vec::new(),
        d: Vec::new(),
        l: Vec::new(),
    };
    for k in 0..n {
        let piv = s[k][k].clone();
        if piv.is_negative() {
            return Elimination::NotPsd(witness(m, &ldl.pivots, k, None));
        }
        if piv.is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !s[k][j].is_zero()) {
                let (skj, sjj) = (s[k][j].clone(), s[j][j].clone());
                // y = t e_k + e_j gives y^T S y = 2 t S_kj + S_jj < 0.
                let t = -(sjj.abs() + BigRational::one()) / (BigRational::from_integer(2.into()) * skj);
                return Elimination::NotPsd(witness(m, &ldl.pivots, k, Some((j, t))));
            }
            continue;
        }
        let mut col = vec![BigRational::zero(); n];
        col[k] = BigRational::one();
        for i in k + 1..n {
            col[i] = &s[i][k] / &piv;
        }
        for i in k + 1..n {
            if col[i].is_zero() {
                continue;
            }
            for j in k + 1..n {
                if !s[k][j].is_zero() {
                    let delta = &col[i] * &s[k][j];
                    s[i][j] -= delta;
                }
            }
        }
        ldl.pivots.push(k);
        ldl.d.push(piv);
        ldl.l.push(col);
    }
    Elimination::Psd(ldl)
}

/// Lifts a residual direction (`e_k`, or `t e_k + e_j`) to an integer vector
/// `x` with `x^T M x` equal to a positive multiple of the residual form.
fn witness(m: &IntSymMatrix, pivots: &[usize], k: usize, extra: Option<(usize, BigRational)>) -> Vec<BigInt> {
    let n = m.n();
    let mut y = vec![BigRational::zero(); n];
    match &extra {
        Some((j, t)) => {
            y[k] = t.clone();
            y[*j] = BigRational::one();
        }
        None => y[k] = BigRational::one(),
    }
    // x_P = -M_PP^{-1} M_{P,R} y_R
    let rhs: Vec<BigRational> = pivots
        .iter()
        .map(|&p| -(0..n).map(|r| rat(m.get(p, r)) * &y[r]).sum::<BigRational>())
        .collect();
    let mpp: Vec<Vec<BigRational>> = pivots
        .iter()
        .map(|&a| pivots.iter().map(|&b| rat(m.get(a, b))).collect())
        .collect();
    let z = solve(mpp, rhs);
    for (idx, &p) in pivots.iter().enumerate() {
        y[p] = z[idx].clone();
    }
    let lcm = y.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let x: Vec<BigInt> = y.iter().map(|v| (v * rat(&lcm)).to_integer()).collect();
    debug_assert!(quadratic_form(m, &x).is_negative());
    x
}

/// Solves a nonsingular rational system by Gauss-Jordan elimination.
pub(crate) fn solve(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Vec<BigRational> {
    let n = b.len();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero()).expect("nonsingular system");
        a.swap(c, p);
        b.swap(c, p);
        let inv = BigRational::one() / &a[c][c];
        for r in 0..n {
            if r == c || a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] * &inv;
            for cc in c..n {
                let delta = &f * &a[c][cc];
                a[r][cc] -= delta;
            }
            let delta = &f * &b[c];
            b[r] -= delta;
        }
    }
    (0..n).map(|i| &b[i] / &a[i][i]).collect()
}

/// Inverse of a nonsingular rational matrix by Gauss-Jordan elimination.
pub(crate) fn inverse(mut a: Vec<Vec<BigRational>>) -> Vec<Vec<BigRational>> {
    let n = a.len();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero()).expect("nonsingular matrix");
        a.swap(c, p);
        inv.swap(c, p);
        let scale = BigRational::one() / &a[c][c];
        for j in 0..n {
            a[c][j] *= &scale;
            inv[c][j] *= &scale;
        }
        for r in 0..n {
            if r == c || a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].clone();
            for j in 0..n {
                let da = &f * &a[c][j];
                a[r][j] -= da;
                let di = &f * &inv[c][j];
                inv[r][j] -= di;
            }
        }
    }
    inv
}

pub fn quadratic_form(m: &IntSymMatrix, x: &[BigInt]) -> BigInt {
    let n = m.n();
    let mut total = BigInt::zero();
    for i in 0..n {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..n {
            if !x[j].is_zero() {
                total += m.get(i, j) * &x[i] * &x[j];
            }
        }
    }
    total
}

/// A nonzero integer vector in the kernel of a PSD matrix, if singular.
pub fn null_vector(m: &IntSymMatrix, ldl: &Ldl) -> Option<Vec<BigInt>> {
    let n = m.n();
    let k = (0..n).find(|i| !ldl.pivots.contains(i))?;
    let pivots: Vec<usize> = ldl.pivots.iter().copied().filter(|&p| p < k).collect();
    let mut y = vec![BigRational::zero(); n];
    y[k] = BigRational::one();
    let rhs: Vec<BigRational> = pivots.iter().map(|&p| -rat(m.get(p, k))).collect();
    let mpp: Vec<Vec<BigRational>> = pivots
        .iter()
        .map(|&a| pivots.iter().map(|&b| rat(m.get(a, b))).collect())
        .collect();
    for (idx, z) in solve(mpp, rhs).into_iter().enumerate() {
        y[pivots[idx]] = z;
    }
    let lcm = y.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    Some(y.iter().map(|v| (v * rat(&lcm)).to_integer()).collect())
}

pub fn mat_vec(m: &IntSymMatrix, x: &[BigInt]) -> Vec<BigInt> {
    (0..m.n())
        .map(|i| (0..m.n()).map(|j| m.get(i, j) * &x[j]).sum())
        .collect()
}

/// Leading principal minors `det M[..k][..k]` for `k = 1..=n`, stopping after
/// the first nonpositive one.
pub fn leading_minors(m: &IntSymMatrix) -> Vec<BigInt> {
    let n = m.n();
    let mut s: Vec<Vec<BigInt>> = (0..n).map(|i| (0..n).map(|j| m.get(i, j).clone()).collect()).collect();
    let mut prev = BigInt::one();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let piv = s[k][k].clone();
        out.push(piv.clone());
        if !piv.is_positive() {
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                s[i][j] = (&piv * &s[i][j] - &s[i][k] * &s[k][j]) / &prev;
            }
        }
        prev = piv;
    }
    out
}

/// Determinant by fraction-free elimination with row pivoting.
pub fn determinant(m: &IntSymMatrix) -> BigInt {
    let n = m.n();
    let mut s: Vec<Vec<BigInt>> = (0..n).map(|i| (0..n).map(|j| m.get(i, j).clone()).collect()).collect();
    let mut prev = BigInt::one();
    let mut sign = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !s[r][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            s.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                s[i][j] = (&s[k][k] * &s[i][j] - &s[i][k] * &s[k][j]) / &prev;
            }
        }
        prev = s[k][k].clone();
    }
    if n == 0 {
        BigInt::one()
    } else {
        sign * &s[n - 1][n - 1]
    }
}

/// Fast PSD (or PD when `strict`) decision on a small dense integer matrix,
/// by fraction-free elimination in `i128`. Returns `None` on overflow.
pub fn psd_i128(m: &[i64], n: usize, strict: bool) -> Option<bool> {
    let mut s: Vec<i128> = m.iter().map(|&v| v as i128).collect();
    let mut prev: i128 = 1;
    for k in 0..n {
        let piv = s[k * n + k];
        if piv < 0 || (strict && piv == 0) {
            return Some(false);
        }
        if piv == 0 {
            if (k + 1..n).any(|j| s[k * n + j] != 0) {
                return Some(false);
            }
            continue;
        }
        for i in k + 1..n {
            let sik = s[i * n + k];
            for j in i..n {
                let v = piv
                    .checked_mul(s[i * n + j])?
                    .checked_sub(sik.checked_mul(s[k * n + j])?)?;
                let v = v / prev;
                s[i * n + j] = v;
                s[j * n + i] = v;
            }
        }
        prev = piv;
    }
    Some(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[Vec<i64>]) -> IntSymMatrix {
        IntSymMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn elimination_certificates() {
        let psd = mat(&[vec![1, 1], vec![1, 1]]);
        match eliminate(&psd) {
            Elimination::Psd(ldl) => {
                assert_eq!(ldl.rank(), 1);
                assert!(ldl.reconstructs(&psd));
                let x = null_vector(&psd, &ldl).unwrap();
                assert!(mat_vec(&psd, &x).iter().all(Zero::is_zero));
            }
            Elimination::NotPsd(_) => panic!("expected psd"),
        }
        for bad in [
            mat(&[vec![0, 1], vec![1, 0]]),
            mat(&[vec![1, 2], vec![2, 1]]),
            mat(&[vec![-1]]),
        ] {
            match eliminate(&bad) {
                Elimination::NotPsd(x) => assert!(quadratic_form(&bad, &x).is_negative()),
                Elimination::Psd(_) => panic!("expected failure"),
            }
        }
    }

    #[test]
    fn determinants_and_minors() {
        let m = mat(&[vec![2, 1, 0], vec![1, 2, 1], vec![0, 1, 2]]);
        assert_eq!(determinant(&m), BigInt::from(4));
        assert_eq!(leading_minors(&m), vec![2.into(), 3.into(), 4.into()]);
        let swap = mat(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(determinant(&swap), BigInt::from(-1));
        assert_eq!(determinant(&IntSymMatrix::zeros(0)), BigInt::one());
    }

    #[test]
    fn fast_path_agrees() {
        assert_eq!(psd_i128(&[1, 1, 1, 1], 2, false), Some(true));
        assert_eq!(psd_i128(&[1, 1, 1, 1], 2, true), Some(false));
        assert_eq!(psd_i128(&[0, 1, 1, 0], 2, false), Some(false));
    }
}
