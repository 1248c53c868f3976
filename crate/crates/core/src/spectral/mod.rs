//! Exact tests for eigenvalues in `[-2, 2]` and `(-2, 2)`.

mod elim;
mod oracle;
mod sturm;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::graph::{ChargedSignedGraph, IntSymMatrix};

pub use elim::{determinant, leading_minors, quadratic_form, Ldl};
pub use oracle::ExtensionOracle;
pub use sturm::interlaces;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// All eigenvalues in `(-2, 2)`.
    OpenCyclotomic,
    /// All eigenvalues in `[-2, 2]`, at least one of them `±2` when returned
    /// by the open test.
    Cyclotomic,
    NotCyclotomic,
}

/// Which of `2I - A` and `2I + A` a piece of evidence refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    TwoMinusA,
    TwoPlusA,
}

impl Side {
    pub fn matrix(self, a: &IntSymMatrix) -> IntSymMatrix {
        match self {
            Side::TwoMinusA => a.neg().shift(2),
            Side::TwoPlusA => a.shift(2),
        }
    }

    /// The eigenvalue of `A` detected by a kernel vector of this side.
    pub fn eigenvalue(self) -> i64 {
        match self {
            Side::TwoMinusA => 2,
            Side::TwoPlusA => -2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Evidence {
    /// PSD factorisations of both sides; for the open test also a kernel
    /// vector of the singular side.
    Factorizations {
        minus: Ldl,
        plus: Ldl,
        kernel: Option<(Side, Vec<BigInt>)>,
    },
    /// Positive leading principal minors of both sides.
    PositiveMinors { minus: Vec<BigInt>, plus: Vec<BigInt> },
    /// `x^T M x < 0` for the given side.
    NegativeDirection { side: Side, vector: Vec<BigInt> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralCertificate {
    pub verdict: Verdict,
    pub evidence: Evidence,
}

impl SpectralCertificate {
    /// Replays the evidence against `a` and checks it supports the verdict.
    pub fn verify(&self, a: &IntSymMatrix) -> bool {
        let n = a.n();
        match (&self.verdict, &self.evidence) {
            (Verdict::Cyclotomic, Evidence::Factorizations { minus, plus, kernel }) => {
                let factors_ok =
                    minus.reconstructs(&Side::TwoMinusA.matrix(a)) && plus.reconstructs(&Side::TwoPlusA.matrix(a));
                let kernel_ok = match kernel {
                    None => true,
                    Some((side, x)) => {
                        x.len() == n
                            && x.iter().any(|v| !v.is_zero())
                            && elim::mat_vec(&side.matrix(a), x).iter().all(Zero::is_zero)
                    }
                };
                factors_ok && kernel_ok
            }
            (Verdict::OpenCyclotomic, Evidence::PositiveMinors { minus, plus }) => {
                let check = |side: Side, minors: &[BigInt]| {
                    minors.len() == n
                        && minors.iter().all(Signed::is_positive)
                        && leading_minors(&side.matrix(a)) == minors
                };
                check(Side::TwoMinusA, minus) && check(Side::TwoPlusA, plus)
            }
            (Verdict::NotCyclotomic, Evidence::NegativeDirection { side, vector }) => {
                vector.len() == n && quadratic_form(&side.matrix(a), vector).is_negative()
            }
            _ => false,
        }
    }

    pub fn is_cyclotomic(&self) -> bool {
        self.verdict != Verdict::NotCyclotomic
    }
}

/// Closed-interval test: both `2I - A` and `2I + A` positive semidefinite.
pub fn is_cyclotomic(a: &IntSymMatrix) -> SpectralCertificate {
    let minus = match elim::eliminate(&Side::TwoMinusA.matrix(a)) {
        elim::Elimination::Psd(l) => l,
        elim::Elimination::NotPsd(x) => return not_cyclotomic(Side::TwoMinusA, x),
    };
    let plus = match elim::eliminate(&Side::TwoPlusA.matrix(a)) {
        elim::Elimination::Psd(l) => l,
        elim::Elimination::NotPsd(x) => return not_cyclotomic(Side::TwoPlusA, x),
    };
    SpectralCertificate {
        verdict: Verdict::Cyclotomic,
        evidence: Evidence::Factorizations {
            minus,
            plus,
            kernel: None,
        },
    }
}

fn not_cyclotomic(side: Side, vector: Vec<BigInt>) -> SpectralCertificate {
    SpectralCertificate {
        verdict: Verdict::NotCyclotomic,
        evidence: Evidence::NegativeDirection { side, vector },
    }
}

/// Open-interval test: both sides positive definite. Falls back to the closed
/// test, with a kernel vector exhibiting the eigenvalue `±2`, otherwise.
pub fn is_open_cyclotomic(a: &IntSymMatrix) -> SpectralCertificate {
    let n = a.n();
    let minus = leading_minors(&Side::TwoMinusA.matrix(a));
    let plus = leading_minors(&Side::TwoPlusA.matrix(a));
    let pd = |m: &[BigInt]| m.len() == n && m.iter().all(Signed::is_positive);
    if pd(&minus) && pd(&plus) {
        return SpectralCertificate {
            verdict: Verdict::OpenCyclotomic,
            evidence: Evidence::PositiveMinors { minus, plus },
        };
    }
    let mut closed = is_cyclotomic(a);
    if let Evidence::Factorizations {
        minus, plus, kernel, ..
    } = &mut closed.evidence
    {
        let (side, ldl) = if minus.rank() < n {
            (Side::TwoMinusA, &*minus)
        } else {
            (Side::TwoPlusA, &*plus)
        };
        *kernel = elim::null_vector(&side.matrix(a), ldl).map(|x| (side, x));
    }
    closed
}

/// True when `det(2I - A) < 0` or `det(2I + A) < 0`, which rules out the
/// closed-interval property. False is inconclusive.
pub fn quick_reject(a: &IntSymMatrix) -> bool {
    determinant(&Side::TwoMinusA.matrix(a)).is_negative() || determinant(&Side::TwoPlusA.matrix(a)).is_negative()
}

/// Gram data for `A + 2I`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramVectors {
    pub rank: usize,
    /// `vectors[i]` has `rank` rational coordinates.
    pub vectors: Vec<Vec<BigRational>>,
    /// Positive weights: `<v_i, v_j> = sum_k weights[k] v_i[k] v_j[k]`.
    pub weights: Vec<BigRational>,
}

impl GramVectors {
    pub fn inner(&self, i: usize, j: usize) -> BigRational {
        (0..self.rank)
            .map(|k| &self.weights[k] * &self.vectors[i][k] * &self.vectors[j][k])
            .sum()
    }
}

/// Vectors realising `A + 2I` as a weighted Gram matrix, when it is PSD.
pub fn gram_vectors(a: &IntSymMatrix) -> Option<GramVectors> {
    match elim::eliminate(&Side::TwoPlusA.matrix(a)) {
        elim::Elimination::NotPsd(_) => None,
        elim::Elimination::Psd(ldl) => {
            let rank = ldl.rank();
            let vectors = (0..a.n())
                .map(|i| (0..rank).map(|k| ldl.l[k][i].clone()).collect())
                .collect();
            Some(GramVectors {
                rank,
                vectors,
                weights: ldl.d,
            })
        }
    }
}

/// `c_v^2 + deg(v) <= 4` at every vertex; necessary for the closed property
/// because the diagonal of `A^2` is bounded by its largest eigenvalue.
pub fn degree_bound_holds(g: &ChargedSignedGraph) -> bool {
    (0..g.n()).all(|v| g.charge(v).unsigned_abs() as usize + g.degree(v) <= 4)
}

/// Boolean closed or open test on a `{-1, 0, 1}` graph, using the `i128`
/// fast path when it does not overflow.
pub fn graph_passes(g: &ChargedSignedGraph, open: bool) -> bool {
    if !open && !degree_bound_holds(g) {
        return false;
    }
    let n = g.n();
    let d = g.dense();
    for sign in [-1i64, 1] {
        let m: Vec<i64> = (0..n * n)
            .map(|idx| {
                let diag = if idx / n == idx % n { 2 } else { 0 };
                diag + sign * d[idx] as i64
            })
            .collect();
        let ok = match elim::psd_i128(&m, n, open) {
            Some(ok) => ok,
            None => {
                let a = g.adjacency_matrix();
                return if open {
                    is_open_cyclotomic(&a).verdict == Verdict::OpenCyclotomic
                } else {
                    is_cyclotomic(&a).is_cyclotomic()
                };
            }
        };
        if !ok {
            return false;
        }
    }
    true
}

/// Boolean closed-interval test on a general matrix.
pub fn matrix_is_cyclotomic(a: &IntSymMatrix) -> bool {
    if let Some(rows) = a.rows_i64() {
        let n = a.n();
        let mut all = true;
        for sign in [-1i64, 1] {
            let m: Vec<i64> = (0..n * n)
                .map(|idx| {
                    let (i, j) = (idx / n, idx % n);
                    (if i == j { 2 } else { 0 }) + sign * rows[i][j]
                })
                .collect();
            match elim::psd_i128(&m, n, false) {
                Some(ok) => all &= ok,
                None => return is_cyclotomic(a).is_cyclotomic(),
            }
        }
        return all;
    }
    is_cyclotomic(a).is_cyclotomic()
}
