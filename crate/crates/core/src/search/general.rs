use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::IntSymMatrix;
use crate::spectral::matrix_is_cyclotomic;

/// Largest entry modulus searched by [`wrap_general_matrices`].
pub const ENTRY_BOUND: i64 = 4;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralClass {
    /// The lexicographically least member of the class (row-major).
    pub matrix: Vec<Vec<i64>>,
    pub maximal: bool,
}

impl GeneralClass {
    pub fn n(&self) -> usize {
        self.matrix.len()
    }

    pub fn max_abs_entry(&self) -> i64 {
        self.matrix.iter().flatten().map(|x| x.abs()).max().unwrap_or(0)
    }

    pub fn to_matrix(&self) -> IntSymMatrix {
        IntSymMatrix::from_rows(&self.matrix).expect("stored matrices are symmetric")
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Least row-major image under signed permutations and global negation.
fn weak_canon(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = m.len();
    let mut best: Option<Vec<Vec<i64>>> = None;
    for perm in permutations(n) {
        for signs in 0u32..1 << n {
            let s = |i: usize| if signs >> i & 1 == 1 { -1 } else { 1 };
            for neg in [1, -1] {
                let image: Vec<Vec<i64>> = (0..n)
                    .map(|i| (0..n).map(|j| neg * s(i) * s(j) * m[perm[i]][perm[j]]).collect())
                    .collect();
                if best.as_ref().is_none_or(|b| image < *b) {
                    best = Some(image);
                }
            }
        }
    }
    best.unwrap_or_default()
}

fn connected(m: &[Vec<i64>]) -> bool {
    let n = m.len();
    crate::graph::components_by(n, |i, j| m[i][j] != 0).len() <= 1
}

fn row_ok(m: &[Vec<i64>], i: usize) -> bool {
    m[i].iter().map(|x| x * x).sum::<i64>() <= 4
}

/// Indecomposable cyclotomic bordered extensions of `m` with entries in
/// `[-ENTRY_BOUND, ENTRY_BOUND]`.
fn extend(m: &[Vec<i64>]) -> Vec<Vec<Vec<i64>>> {
    let n = m.len();
    let width = (2 * ENTRY_BOUND + 1) as usize;
    let mut out = Vec::new();
    let total = width.pow(n as u32 + 1);
    for code in 0..total {
        let mut col = Vec::with_capacity(n + 1);
        let mut c = code;
        for _ in 0..=n {
            col.push((c % width) as i64 - ENTRY_BOUND);
            c /= width;
        }
        if col[..n].iter().all(|&x| x == 0) && n > 0 {
            continue;
        }
        let mut big: Vec<Vec<i64>> = m.to_vec();
        for (i, row) in big.iter_mut().enumerate() {
            row.push(col[i]);
        }
        big.push(col);
        if !(0..=n).all(|i| row_ok(&big, i)) {
            continue;
        }
        let a = IntSymMatrix::from_rows(&big).expect("bordered matrix is symmetric");
        if matrix_is_cyclotomic(&a) {
            out.push(big);
        }
    }
    out
}

/// All indecomposable cyclotomic integer symmetric matrices of size at most
/// `max_n` with entries in `[-4, 4]`, up to weak equivalence, each marked
/// maximal when no one-row bordering keeps it indecomposable and
/// cyclotomic. Grown one row at a time: deleting a non-cut vertex of an
/// indecomposable matrix leaves an indecomposable one.
pub fn wrap_general_matrices(max_n: usize) -> Result<Vec<GeneralClass>> {
    if !(1..=4).contains(&max_n) {
        return Err(Error::InvalidParameter("max_n must lie in 1..=4".into()));
    }
    let mut out = Vec::new();
    let mut level: BTreeMap<Vec<Vec<i64>>, ()> = extend(&[]).into_iter().map(|m| (weak_canon(&m), ())).collect();
    for n in 1..=max_n {
        let mut next = BTreeMap::new();
        for m in level.keys() {
            debug_assert!(connected(m));
            let children = extend(m);
            let maximal = children.is_empty();
            if n < max_n {
                for c in children {
                    next.insert(weak_canon(&c), ());
                }
            }
            out.push(GeneralClass {
                matrix: m.clone(),
                maximal,
            });
        }
        level = next;
    }
    Ok(out)
}
