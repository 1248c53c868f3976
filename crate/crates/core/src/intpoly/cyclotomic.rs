use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::IntPoly;
use crate::error::{Error, Result};

/// A palindromic polynomial `z^n chi(z + 1/z)` of even degree `2n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReciprocalPoly {
    poly: IntPoly,
}

impl ReciprocalPoly {
    /// Wraps a polynomial, checking even degree and palindromic coefficients.
    pub fn new(poly: IntPoly) -> Result<Self> {
        let d = poly.deg();
        if d % 2 == 1 {
            return Err(Error::InvalidParameter(format!("odd degree {d}")));
        }
        if (0..=d).any(|k| poly.coeff(k) != poly.coeff(d - k)) {
            return Err(Error::InvalidParameter("not palindromic".into()));
        }
        Ok(ReciprocalPoly { poly })
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn into_poly(self) -> IntPoly {
        self.poly
    }

    pub fn factor(&self) -> Option<CyclotomicFactorization> {
        factor_into_cyclotomics(&self.poly)
    }
}

/// `z^n chi(z + 1/z)` for a polynomial `chi` of degree `n`.
pub fn reciprocal_transform(chi: &IntPoly) -> ReciprocalPoly {
    let n = chi.deg();
    let zz1 = IntPoly::from_i64(&[1, 0, 1]);
    // Horner in (z^2 + 1) with the power of z tracked by the monomial shift.
    let mut acc = IntPoly::zero();
    for (k, c) in chi.coeffs().iter().enumerate().rev() {
        acc = &(&acc * &zz1) + &IntPoly::monomial(c.clone(), n - k);
    }
    ReciprocalPoly::new(acc).expect("transform of a polynomial is palindromic")
}

/// Euler's totient by trial division.
pub fn euler_phi(m: u64) -> u64 {
    let mut result = m;
    let mut rest = m;
    let mut p = 2;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            while rest.is_multiple_of(p) {
                rest /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if rest > 1 {
        result -= result / rest;
    }
    result
}

fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            out.push(p);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

fn cache() -> &'static Mutex<BTreeMap<u64, IntPoly>> {
    static CACHE: OnceLock<Mutex<BTreeMap<u64, IntPoly>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(BTreeMap::new()))
}

/// The `m`-th cyclotomic polynomial.
///
/// Built from `Phi_1 = z - 1` through `Phi_{rp}(z) = Phi_r(z^p) / Phi_r(z)`
/// for each prime `p` of `m` not dividing `r`, then
/// `Phi_m(z) = Phi_{rad m}(z^{m / rad m})`. Every step is an exact division.
pub fn cyclotomic_poly(m: u64) -> IntPoly {
    assert!(m >= 1, "cyclotomic index must be positive");
    if let Some(p) = cache().lock().expect("cache lock").get(&m) {
        return p.clone();
    }
    let mut phi = IntPoly::from_i64(&[-1, 1]);
    let mut rad = 1;
    for p in prime_factors(m) {
        phi = phi
            .substitute_power(p as usize)
            .div_exact(&phi)
            .expect("cyclotomic step is exact");
        rad *= p;
    }
    let phi = phi.substitute_power((m / rad) as usize);
    cache().lock().expect("cache lock").insert(m, phi.clone());
    phi
}

/// A polynomial written as `sign * prod Phi_m^e`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclotomicFactorization {
    pub sign: i8,
    /// `(m, multiplicity)` with `m` ascending.
    pub factors: Vec<(u64, u32)>,
}

impl CyclotomicFactorization {
    pub fn multiplicity(&self, m: u64) -> u32 {
        self.factors.iter().find(|(k, _)| *k == m).map_or(0, |&(_, e)| e)
    }

    pub fn expand(&self) -> IntPoly {
        let mut p = IntPoly::constant(self.sign);
        for &(m, e) in &self.factors {
            p = &p * &cyclotomic_poly(m).pow(e);
        }
        p
    }

    /// Builds a factorization from `(m, e)` pairs, merging repeats.
    pub fn from_pairs(pairs: &[(u64, u32)]) -> Self {
        let mut map: BTreeMap<u64, u32> = BTreeMap::new();
        for &(m, e) in pairs {
            if e > 0 {
                *map.entry(m).or_default() += e;
            }
        }
        CyclotomicFactorization {
            sign: 1,
            factors: map.into_iter().collect(),
        }
    }
}

impl fmt::Display for CyclotomicFactorization {
    /// Renders `(z^2-1)^k` when `Phi_1` and `Phi_2` share an exponent,
    /// `(z-1)^a(z+1)^b` otherwise, and `Phi_m(z)^e` for the rest.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let power = |e: u32| if e == 1 { String::new() } else { format!("^{e}") };
        let mut parts = Vec::new();
        let (e1, e2) = (self.multiplicity(1), self.multiplicity(2));
        if e1 > 0 && e1 == e2 {
            parts.push(format!("(z^2-1){}", power(e1)));
        } else {
            if e1 > 0 {
                parts.push(format!("(z-1){}", power(e1)));
            }
            if e2 > 0 {
                parts.push(format!("(z+1){}", power(e2)));
            }
        }
        for &(m, e) in self.factors.iter().filter(|(m, _)| *m > 2) {
            parts.push(format!("Phi_{m}(z){}", power(e)));
        }
        if self.sign < 0 {
            f.write_str("-")?;
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(""))
        }
    }
}

/// Writes `r` as `±prod Phi_m^e` by trial division over every `m` with
/// `phi(m) <= deg r`, or returns `None` when that is impossible.
pub fn factor_into_cyclotomics(r: &IntPoly) -> Option<CyclotomicFactorization> {
    if r.is_zero() || !r.leading().abs().is_one() || !r.coeff(0).abs().is_one() {
        return None;
    }
    let mut rest = r.clone();
    let mut factors = Vec::new();
    let d0 = r.deg() as u64;
    // phi(m) >= sqrt(m) for m > 6, so m <= max(6, d^2) covers every candidate.
    let bound = (d0 * d0).max(6);
    let mut m = 1;
    while m <= bound && rest.deg() > 0 {
        if euler_phi(m) <= rest.deg() as u64 {
            let phi = cyclotomic_poly(m);
            let mut e = 0;
            while let Ok(q) = rest.div_exact(&phi) {
                rest = q;
                e += 1;
            }
            if e > 0 {
                factors.push((m, e));
            }
        }
        m += 1;
    }
    if rest.deg() != 0 {
        return None;
    }
    let c = rest.coeff(0);
    if !c.abs().is_one() {
        return None;
    }
    Some(CyclotomicFactorization {
        sign: if c == BigInt::one() { 1 } else { -1 },
        factors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_poly(1), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic_poly(4), IntPoly::from_i64(&[1, 0, 1]));
        assert_eq!(cyclotomic_poly(30), IntPoly::from_i64(&[1, 1, 0, -1, -1, -1, 0, 1, 1]));
        assert_eq!(cyclotomic_poly(12), IntPoly::from_i64(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn divisor_product_is_binomial() {
        for m in 1..=120u64 {
            let mut prod = IntPoly::one();
            for d in (1..=m).filter(|d| m % d == 0) {
                prod = &prod * &cyclotomic_poly(d);
            }
            let binom = &IntPoly::monomial(1, m as usize) - &IntPoly::one();
            assert_eq!(prod, binom, "m = {m}");
            assert_eq!(cyclotomic_poly(m).deg() as u64, euler_phi(m));
        }
    }

    #[test]
    fn transform_examples() {
        assert_eq!(reciprocal_transform(&IntPoly::x()).poly(), &cyclotomic_poly(4));
        let chi = IntPoly::from_i64(&[-4, 0, 1]);
        let expect = IntPoly::from_i64(&[-1, 0, 1]).pow(2);
        assert_eq!(reciprocal_transform(&chi).poly(), &expect);
    }

    #[test]
    fn factorization() {
        let r = IntPoly::from_i64(&[-1, 0, 1]).pow(16);
        let f = factor_into_cyclotomics(&r).unwrap();
        assert_eq!(f.factors, vec![(1, 16), (2, 16)]);
        assert_eq!(f.to_string(), "(z^2-1)^16");
        assert!(factor_into_cyclotomics(&IntPoly::from_i64(&[2, 1, 1])).is_none());
        // Phi_30(z^2) = Phi_60(z)
        let u5 = cyclotomic_poly(30).substitute_power(2);
        assert_eq!(u5, cyclotomic_poly(60));
        assert_eq!(factor_into_cyclotomics(&u5).unwrap().to_string(), "Phi_60(z)");
        let g = CyclotomicFactorization::from_pairs(&[(1, 2), (5, 1)]);
        assert_eq!(factor_into_cyclotomics(&g.expand()).unwrap(), g);
    }

    #[test]
    fn palindrome_check() {
        assert!(ReciprocalPoly::new(IntPoly::from_i64(&[1, 2, 1])).is_ok());
        assert!(ReciprocalPoly::new(IntPoly::from_i64(&[1, 2, 3])).is_err());
        assert!(ReciprocalPoly::new(IntPoly::from_i64(&[1, 1])).is_err());
    }
}
