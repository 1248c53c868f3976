//! Dense integer polynomials and the polynomial side of the cyclotomic test.

mod charpoly;
mod chebyshev;
mod cyclotomic;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{parse, Error, Result};

pub use charpoly::char_poly;
pub use chebyshev::{chebyshev_first_kind, matrix_chebyshev};
pub use cyclotomic::{
    cyclotomic_poly, euler_phi, factor_into_cyclotomics, reciprocal_transform, CyclotomicFactorization, ReciprocalPoly,
};

/// Integer polynomial, coefficients lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn x() -> Self {
        Self::monomial(1, 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    /// `c * x^k`.
    pub fn monomial(c: impl Into<BigInt>, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c.into();
        Self::new(coeffs)
    }

    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `(x - r)` as a polynomial.
    pub fn linear_root(r: i64) -> Self {
        Self::from_i64(&[-r, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial has no degree.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        self.eval(&BigInt::from(x))
    }

    /// Sign of `p(num / den)` for `den > 0`, computed as the sign of
    /// `den^d * p(num / den)`.
    pub fn sign_at(&self, num: &BigInt, den: &BigInt) -> i8 {
        debug_assert!(den.is_positive());
        let mut acc = BigInt::zero();
        let mut den_pow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * num + c * &den_pow;
            den_pow *= den;
        }
        sign(&acc)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// `p(-x)`.
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// `p(x^k)`.
    pub fn substitute_power(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.deg() * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        Self::new(coeffs)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Gcd of the coefficients, nonnegative.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading().is_negative() {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Quotient and remainder when the leading coefficient of `d` divides
    /// every intermediate leading term; `None` otherwise.
    pub fn div_rem(&self, d: &IntPoly) -> Option<(IntPoly, IntPoly)> {
        let dd = d.degree()?;
        let lead = d.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            for (j, c) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &q * c;
            }
            quot[k] = q;
        }
        Some((Self::new(quot), Self::new(rem)))
    }

    /// Exact division; any remainder is an error.
    pub fn div_exact(&self, d: &IntPoly) -> Result<IntPoly> {
        match self.div_rem(d) {
            Some((q, r)) if r.is_zero() => Ok(q),
            _ => Err(Error::InexactDivision),
        }
    }

    pub fn divides(&self, p: &IntPoly) -> bool {
        p.div_exact(self).is_ok()
    }

    /// Pseudo-remainder scaled by a positive constant, so sign information is
    /// preserved: `c * self = q * d + r` with `c > 0`.
    pub fn positive_prem(&self, d: &IntPoly) -> IntPoly {
        let dd = d.deg();
        if self.is_zero() || self.deg() < dd {
            return self.clone();
        }
        let delta = (self.deg() - dd + 1) as u32;
        let lead = d.leading();
        let factor = num_traits::pow(lead.abs(), delta as usize);
        let scaled = self.scale(&factor);
        // |lead|^delta is a multiple of lead^k for every k <= delta, so the
        // division below is exact at every step.
        let (_, r) = scaled.div_rem(d).expect("pseudo-division is exact");
        r
    }

    /// Exact gcd up to a constant (primitive, positive leading coefficient).
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let (mut a, mut b) = (self.primitive(), other.primitive());
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.positive_prem(&b).primitive();
            a = b;
            b = r;
        }
        a.primitive()
    }

    /// Multiplicity of the root `r` (0 for the zero polynomial).
    pub fn root_multiplicity(&self, r: i64) -> usize {
        let lin = Self::linear_root(r);
        let mut p = self.clone();
        let mut m = 0;
        while !p.is_zero() {
            match p.div_exact(&lin) {
                Ok(q) => {
                    p = q;
                    m += 1;
                }
                Err(_) => break,
            }
        }
        m
    }

    /// Text form `poly <d> c0 c1 ... cd`.
    pub fn to_text(&self) -> String {
        let mut s = format!("poly {}", self.deg());
        if self.is_zero() {
            s.push_str(" 0");
        }
        for c in &self.coeffs {
            s.push(' ');
            s.push_str(&c.to_string());
        }
        s
    }

    pub fn parse(text: &str) -> Result<IntPoly> {
        let (line, content) = text
            .lines()
            .enumerate()
            .find(|(_, l)| !l.trim().is_empty() && !l.trim().starts_with('#'))
            .ok_or_else(|| parse(1, 1, "empty input"))?;
        let line = line + 1;
        let toks: Vec<&str> = content.split_whitespace().collect();
        if toks.first() != Some(&"poly") {
            return Err(parse(line, 1, "expected `poly` header"));
        }
        let d: usize = toks
            .get(1)
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| parse(line, 6, "expected degree"))?;
        if toks.len() != d + 3 {
            return Err(parse(
                line,
                1,
                format!(
                    "degree {d} needs {} coefficients, found {}",
                    d + 1,
                    toks.len().saturating_sub(2)
                ),
            ));
        }
        let coeffs = toks[2..]
            .iter()
            .map(|t| {
                t.strip_prefix('+')
                    .unwrap_or(t)
                    .parse::<BigInt>()
                    .map_err(|_| parse(line, 1, format!("bad coefficient `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IntPoly::new(coeffs))
    }

    /// Human-readable form in the given variable, highest degree first.
    pub fn pretty(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let unit = mag.is_one() && k > 0;
            if !unit {
                out.push_str(&mag.to_string());
            }
            match k {
                0 => {}
                1 => out.push_str(var),
                _ => out.push_str(&format!("{var}^{k}")),
            }
        }
        out
    }
}

pub(crate) fn sign(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({})", self.pretty("x"))
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty("x"))
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_degree() {
        let p = IntPoly::from_i64(&[1, 1]);
        let q = IntPoly::from_i64(&[-1, 1]);
        assert_eq!(&p * &q, IntPoly::from_i64(&[-1, 0, 1]));
        assert_eq!((&p - &p).degree(), None);
        assert_eq!((&p * &q).deg(), p.deg() + q.deg());
        assert_eq!(p.reflect(), IntPoly::from_i64(&[1, -1]));
    }

    #[test]
    fn exact_division() {
        let p = IntPoly::from_i64(&[-1, 0, 0, 1]);
        let q = p.div_exact(&IntPoly::from_i64(&[-1, 1])).unwrap();
        assert_eq!(q, IntPoly::from_i64(&[1, 1, 1]));
        assert!(p.div_exact(&IntPoly::from_i64(&[1, 1])).is_err());
        assert!(IntPoly::from_i64(&[1, 0, 1])
            .div_exact(&IntPoly::from_i64(&[1, 2]))
            .is_err());
    }

    #[test]
    fn gcd_and_multiplicity() {
        let a = IntPoly::from_i64(&[-2, 1]).pow(3);
        let b = &IntPoly::from_i64(&[-2, 1]) * &IntPoly::from_i64(&[2, 1]);
        assert_eq!(a.gcd(&b), IntPoly::from_i64(&[-2, 1]));
        assert_eq!(a.root_multiplicity(2), 3);
        assert_eq!(b.root_multiplicity(2), 1);
    }

    #[test]
    fn text_round_trip() {
        let p = IntPoly::from_i64(&[-2, 0, 1]);
        assert_eq!(p.to_text(), "poly 2 -2 0 1");
        assert_eq!(IntPoly::parse(&p.to_text()).unwrap(), p);
        assert_eq!(IntPoly::parse("poly 0 0").unwrap(), IntPoly::zero());
        assert!(IntPoly::parse("poly 2 1 2").is_err());
        assert_eq!(p.pretty("x"), "x^2 - 2");
    }

    #[test]
    fn sign_at_rational_points() {
        let p = IntPoly::from_i64(&[-1, 0, 2]);
        let two = BigInt::from(2);
        assert_eq!(p.sign_at(&BigInt::from(1), &two), -1);
        assert_eq!(p.sign_at(&BigInt::from(1), &BigInt::one()), 1);
    }
}
