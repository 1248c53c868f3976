//! Constant-time-per-column test for adding one vertex to a graph that
//! already passes the closed or open test.
//!
//! For a PSD matrix `M` with a maximal nonsingular principal block `M_SS`,
//! the bordered matrix `[[M, b], [b^T, d]]` is PSD iff `b` lies in the column
//! space of `M` and `d - b_S^T M_SS^{-1} b_S >= 0`. The column-space
//! condition is orthogonality to the kernel vectors
//! `n_t = det(M_SS) e_t - adj(M_SS) M_{S,t}` for `t` outside `S`. Everything
//! is scaled by `det(M_SS) > 0` to stay in integers.

use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use super::elim::{self, Elimination};
use crate::graph::{ChargedSignedGraph, IntSymMatrix};

#[derive(Debug, Clone)]
struct SideOracle {
    /// Position of each vertex in `S`, if it is a pivot.
    slot: Vec<Option<usize>>,
    det: i128,
    adj: Vec<Vec<i128>>,
    kernel: Vec<Vec<(usize, i128)>>,
    strict: bool,
}

impl SideOracle {
    fn new(m: &IntSymMatrix, strict: bool) -> Option<Self> {
        let n = m.n();
        let ldl = match elim::eliminate(m) {
            Elimination::Psd(l) => l,
            Elimination::NotPsd(_) => return None,
        };
        if strict && ldl.rank() < n {
            return None;
        }
        let s = ldl.pivots.clone();
        let r = s.len();
        let mss: Vec<Vec<BigRational>> = s
            .iter()
            .map(|&a| {
                s.iter()
                    .map(|&b| BigRational::from_integer(m.get(a, b).clone()))
                    .collect()
            })
            .collect();
        // det(M_SS) is the product of the pivots.
        let det: BigRational = ldl.d.iter().fold(BigRational::one(), |acc, d| acc * d);
        let det_int = det.to_integer();
        let adj = elim::inverse(mss)
            .iter()
            .map(|row| row.iter().map(|x| (x * &det).to_integer().to_i128()).collect())
            .collect::<Option<Vec<Vec<i128>>>>()?;
        let mut slot = vec![None; n];
        for (k, &v) in s.iter().enumerate() {
            slot[v] = Some(k);
        }
        let det = det_int.to_i128()?;
        let mut kernel = Vec::new();
        for t in (0..n).filter(|t| slot[*t].is_none()) {
            let mut vec = vec![(t, det)];
            for (a, &va) in s.iter().enumerate() {
                let v: i128 = (0..r).map(|b| adj[a][b] * m.get(s[b], t).to_i128().unwrap_or(0)).sum();
                if v != 0 {
                    vec.push((va, -v));
                }
            }
            kernel.push(vec);
        }
        Some(SideOracle {
            slot,
            det,
            adj,
            kernel,
            strict,
        })
    }

    /// `column` lists the nonzero entries `(vertex, value)` of the new column.
    fn admits(&self, column: &[(usize, i64)], diag: i64) -> bool {
        for nv in &self.kernel {
            let dot: i128 = nv
                .iter()
                .map(|&(v, c)| column.iter().find(|(u, _)| *u == v).map_or(0, |&(_, b)| c * b as i128))
                .sum();
            if dot != 0 {
                return false;
            }
        }
        let mut quad: i128 = 0;
        for &(u, bu) in column {
            let Some(a) = self.slot[u] else { continue };
            for &(w, bw) in column {
                if let Some(b) = self.slot[w] {
                    quad += self.adj[a][b] * (bu * bw) as i128;
                }
            }
        }
        let slack = self.det * diag as i128 - quad;
        if self.strict {
            slack > 0
        } else {
            slack >= 0
        }
    }
}

/// Decides, for a fixed base graph, which one-vertex extensions keep the
/// closed (or open) property.
#[derive(Debug, Clone)]
pub struct ExtensionOracle {
    minus: SideOracle,
    plus: SideOracle,
    n: usize,
}

impl ExtensionOracle {
    /// Returns `None` when the base graph itself fails the test or its
    /// adjugate does not fit in `i128`.
    pub fn new(g: &ChargedSignedGraph, open: bool) -> Option<Self> {
        let a = g.adjacency_matrix();
        let minus = SideOracle::new(&a.neg().shift(2), open)?;
        let plus = SideOracle::new(&a.shift(2), open)?;
        Some(ExtensionOracle { minus, plus, n: g.n() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Whether adding a vertex of charge `charge` joined to `edges`
    /// (`(old vertex, sign)`) keeps the property.
    pub fn admits(&self, charge: i8, edges: &[(usize, i8)]) -> bool {
        let plus: Vec<(usize, i64)> = edges.iter().map(|&(v, s)| (v, s as i64)).collect();
        if !self.plus.admits(&plus, 2 + charge as i64) {
            return false;
        }
        let minus: Vec<(usize, i64)> = edges.iter().map(|&(v, s)| (v, -(s as i64))).collect();
        self.minus.admits(&minus, 2 - charge as i64)
    }
}
