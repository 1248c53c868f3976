//! Charged signed graphs, general integer symmetric matrices and the
//! switching/permutation equivalences between them.

mod canon;
mod contains;
pub mod format;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use canon::{
    are_equivalent, canonical_form, canonical_labeling, weak_canonical_form, CanonicalForm, CanonicalLabeling,
};
pub use contains::{contains_up_to_equivalence, Embedding};

/// A general integer symmetric matrix. Entries are arbitrary precision.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntSymMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

impl IntSymMatrix {
    pub fn zeros(n: usize) -> Self {
        IntSymMatrix {
            n,
            entries: vec![BigInt::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows, checking squareness and symmetry.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DegreeMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            entries.extend(row.iter().cloned().map(Into::into));
        }
        let m = IntSymMatrix { n, entries };
        for i in 0..n {
            for j in i + 1..n {
                if m.get(i, j) != m.get(j, i) {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.entries[i * self.n + j] = value.clone();
        self.entries[j * self.n + i] = value;
    }

    pub fn rows_i64(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).to_i64()).collect())
            .collect()
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.entries.iter().map(|e| e.abs()).max().unwrap_or_else(BigInt::zero)
    }

    pub fn neg(&self) -> Self {
        IntSymMatrix {
            n: self.n,
            entries: self.entries.iter().map(|e| -e).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        IntSymMatrix {
            n: self.n,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        IntSymMatrix {
            n: self.n,
            entries: self.entries.iter().map(|e| e * k).collect(),
        }
    }

    /// `self + k * I`.
    pub fn shift(&self, k: i64) -> Self {
        let mut m = self.clone();
        for i in 0..self.n {
            m.entries[i * self.n + i] += k;
        }
        m
    }

    /// Matrix product; the product of two commuting symmetric matrices is
    /// symmetric, which is all this crate needs (powers and polynomials of
    /// one matrix).
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.entries[k * n + j];
                    if !b.is_zero() {
                        entries[i * n + j] += a * b;
                    }
                }
            }
        }
        IntSymMatrix { n, entries }
    }

    pub fn trace(&self) -> BigInt {
        (0..self.n).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn principal_submatrix(&self, subset: &[usize]) -> Self {
        let k = subset.len();
        let mut m = Self::zeros(k);
        for (a, &i) in subset.iter().enumerate() {
            for (b, &j) in subset.iter().enumerate() {
                m.entries[a * k + b] = self.get(i, j).clone();
            }
        }
        m
    }

    /// Connected components of the underlying graph, each sorted, ordered by
    /// least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        components_by(self.n, |i, j| !self.get(i, j).is_zero())
    }

    pub fn is_indecomposable(&self) -> bool {
        self.n > 0 && self.components().len() == 1
    }

    pub fn to_graph(&self) -> Result<ChargedSignedGraph> {
        ChargedSignedGraph::from_matrix(self)
    }
}

impl fmt::Debug for IntSymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntSymMatrix({})", self.n)?;
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

pub(crate) fn components_by(n: usize, adjacent: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        comp[start] = id;
        let mut stack = vec![start];
        let mut members = vec![start];
        while let Some(u) = stack.pop() {
            for w in 0..n {
                if w != u && comp[w] == usize::MAX && adjacent(u, w) {
                    comp[w] = id;
                    stack.push(w);
                    members.push(w);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// A symmetric `{-1, 0, 1}` matrix seen as a graph: off-diagonal entries are
/// edge signs, diagonal entries are vertex charges (stored separately).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ChargedSignedGraph {
    n: usize,
    charges: Vec<i8>,
    edges: Vec<i8>,
}

impl ChargedSignedGraph {
    pub fn empty(n: usize) -> Self {
        ChargedSignedGraph {
            n,
            charges: vec![0; n],
            edges: vec![0; n * n],
        }
    }

    /// Builds a graph from a list of `(i, j, sign)` edges and a charge vector.
    pub fn from_edges(n: usize, charges: &[i8], edges: &[(usize, usize, i8)]) -> Result<Self> {
        let mut g = Self::empty(n);
        if charges.len() != n {
            return Err(Error::DegreeMismatch {
                expected: n,
                found: charges.len(),
            });
        }
        for (v, &c) in charges.iter().enumerate() {
            g.set_charge(v, c)?;
        }
        for &(i, j, s) in edges {
            g.set_edge(i, j, s)?;
        }
        Ok(g)
    }

    /// Uncharged graph from a signed edge list.
    pub fn signed(n: usize, edges: &[(usize, usize, i8)]) -> Self {
        Self::from_edges(n, &vec![0; n], edges).expect("valid signed edge list")
    }

    /// Interprets a `{-1, 0, 1}` matrix as a charged signed graph.
    pub fn from_matrix(m: &IntSymMatrix) -> Result<Self> {
        let n = m.n();
        let mut g = Self::empty(n);
        for i in 0..n {
            for j in 0..n {
                let v = m.get(i, j);
                let small = v
                    .to_i8()
                    .filter(|x| (-1..=1).contains(x))
                    .ok_or_else(|| Error::EntryOutOfRange {
                        row: i,
                        col: j,
                        value: v.to_string(),
                    })?;
                if i == j {
                    g.charges[i] = small;
                } else {
                    g.edges[i * n + j] = small;
                }
            }
        }
        Ok(g)
    }

    /// Builds a graph from a dense row-major `i8` matrix (diagonal = charges).
    pub fn from_dense(n: usize, dense: &[i8]) -> Result<Self> {
        let mut g = Self::empty(n);
        for i in 0..n {
            g.set_charge(i, dense[i * n + i])?;
            for j in i + 1..n {
                if dense[i * n + j] != dense[j * n + i] {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
                g.set_edge(i, j, dense[i * n + j])?;
            }
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn charge(&self, v: usize) -> i8 {
        self.charges[v]
    }

    pub fn charges(&self) -> &[i8] {
        &self.charges
    }

    pub fn edge(&self, i: usize, j: usize) -> i8 {
        self.edges[i * self.n + j]
    }

    /// Diagonal gives the charge, off-diagonal the edge sign.
    pub fn entry(&self, i: usize, j: usize) -> i8 {
        if i == j {
            self.charges[i]
        } else {
            self.edges[i * self.n + j]
        }
    }

    fn check_index(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: v, n: self.n })
        }
    }

    pub fn set_charge(&mut self, v: usize, c: i8) -> Result<()> {
        self.check_index(v)?;
        if !(-1..=1).contains(&c) {
            return Err(Error::EntryOutOfRange {
                row: v,
                col: v,
                value: c.to_string(),
            });
        }
        self.charges[v] = c;
        Ok(())
    }

    pub fn set_edge(&mut self, i: usize, j: usize, s: i8) -> Result<()> {
        self.check_index(i)?;
        self.check_index(j)?;
        if i == j {
            return Err(Error::InvalidParameter(format!("loop at vertex {i}")));
        }
        if !(-1..=1).contains(&s) {
            return Err(Error::EntryOutOfRange {
                row: i,
                col: j,
                value: s.to_string(),
            });
        }
        self.edges[i * self.n + j] = s;
        self.edges[j * self.n + i] = s;
        Ok(())
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges[v * self.n..(v + 1) * self.n]
            .iter()
            .filter(|&&s| s != 0)
            .count()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&w| self.edge(v, w) != 0)
    }

    pub fn edge_count(&self) -> usize {
        self.edges.iter().filter(|&&s| s != 0).count() / 2
    }

    pub fn edge_list(&self) -> Vec<(usize, usize, i8)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                let s = self.edge(i, j);
                if s != 0 {
                    out.push((i, j, s));
                }
            }
        }
        out
    }

    pub fn has_charges(&self) -> bool {
        self.charges.iter().any(|&c| c != 0)
    }

    /// True when no edge is negative.
    pub fn is_unsigned(&self) -> bool {
        self.edges.iter().all(|&s| s >= 0)
    }

    /// Dense row-major matrix with charges on the diagonal.
    pub fn dense(&self) -> Vec<i8> {
        let mut d = self.edges.clone();
        for i in 0..self.n {
            d[i * self.n + i] = self.charges[i];
        }
        d
    }

    pub fn adjacency_matrix(&self) -> IntSymMatrix {
        let n = self.n;
        let mut m = IntSymMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.entries[i * n + j] = BigInt::from(self.entry(i, j));
            }
        }
        m
    }

    /// Reverses the sign of every edge at `v`.
    pub fn switch(&self, v: usize) -> Result<Self> {
        self.check_index(v)?;
        let mut g = self.clone();
        for w in 0..self.n {
            g.edges[v * self.n + w] = -g.edges[v * self.n + w];
            g.edges[w * self.n + v] = -g.edges[w * self.n + v];
        }
        Ok(g)
    }

    /// Switches every vertex in `set`.
    pub fn switch_set(&self, set: &[usize]) -> Result<Self> {
        let mut signs = vec![1i8; self.n];
        for &v in set {
            self.check_index(v)?;
            signs[v] = -signs[v];
        }
        Ok(self.apply(&EquivalenceWitness {
            perm: (0..self.n).collect(),
            signs,
            negate: false,
        }))
    }

    /// Negates every edge and charge (the adjacency matrix becomes `-A`).
    pub fn negated(&self) -> Self {
        ChargedSignedGraph {
            n: self.n,
            charges: self.charges.iter().map(|c| -c).collect(),
            edges: self.edges.iter().map(|s| -s).collect(),
        }
    }

    /// Same edges, opposite charges.
    pub fn charge_flipped(&self) -> Self {
        ChargedSignedGraph {
            n: self.n,
            charges: self.charges.iter().map(|c| -c).collect(),
            edges: self.edges.clone(),
        }
    }

    /// Relabels so that old vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        self.apply(&EquivalenceWitness {
            perm: perm.to_vec(),
            signs: vec![1; self.n],
            negate: false,
        })
    }

    /// Applies a signed permutation (and optional global negation).
    pub fn apply(&self, w: &EquivalenceWitness) -> Self {
        assert_eq!(w.perm.len(), self.n, "witness size mismatch");
        let n = self.n;
        let neg: i8 = if w.negate { -1 } else { 1 };
        let mut g = Self::empty(n);
        for i in 0..n {
            g.charges[w.perm[i]] = neg * self.charges[i];
            for j in 0..n {
                let s = self.edges[i * n + j];
                if s != 0 {
                    g.edges[w.perm[i] * n + w.perm[j]] = neg * w.signs[i] * w.signs[j] * s;
                }
            }
        }
        g
    }

    /// Induced subgraph on `subset`, keeping the given order.
    pub fn induced_subgraph(&self, subset: &[usize]) -> Result<Self> {
        for &v in subset {
            self.check_index(v)?;
        }
        let k = subset.len();
        let mut g = Self::empty(k);
        for (a, &i) in subset.iter().enumerate() {
            g.charges[a] = self.charges[i];
            for (b, &j) in subset.iter().enumerate() {
                if a != b {
                    g.edges[a * k + b] = self.edge(i, j);
                }
            }
        }
        Ok(g)
    }

    /// Deletes one vertex.
    pub fn delete_vertex(&self, v: usize) -> Result<Self> {
        self.check_index(v)?;
        let keep: Vec<usize> = (0..self.n).filter(|&w| w != v).collect();
        self.induced_subgraph(&keep)
    }

    /// Connected components, each sorted, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        components_by(self.n, |i, j| self.edge(i, j) != 0)
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.components().len() == 1
    }

    /// Appends a vertex with the given charge and edges `(old_vertex, sign)`.
    pub fn with_vertex(&self, charge: i8, edges: &[(usize, i8)]) -> Self {
        let n = self.n + 1;
        let mut g = Self::empty(n);
        for i in 0..self.n {
            g.charges[i] = self.charges[i];
            for j in 0..self.n {
                g.edges[i * n + j] = self.edges[i * self.n + j];
            }
        }
        g.charges[self.n] = charge;
        for &(u, s) in edges {
            g.edges[u * n + self.n] = s;
            g.edges[self.n * n + u] = s;
        }
        g
    }

    /// Disjoint union, `other` relabelled after `self`.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let n = self.n + other.n;
        let mut g = Self::empty(n);
        for i in 0..self.n {
            g.charges[i] = self.charges[i];
            for j in 0..self.n {
                g.edges[i * n + j] = self.edge(i, j);
            }
        }
        for i in 0..other.n {
            g.charges[self.n + i] = other.charges[i];
            for j in 0..other.n {
                g.edges[(self.n + i) * n + self.n + j] = other.edge(i, j);
            }
        }
        g
    }

    /// `A^2` as a dense `i32` matrix.
    pub fn adjacency_squared(&self) -> Vec<i32> {
        let n = self.n;
        let d = self.dense();
        let mut out = vec![0i32; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = d[i * n + k] as i32;
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += a * d[k * n + j] as i32;
                }
            }
        }
        out
    }

    /// True iff `A^2 = 4I`.
    pub fn squares_to_4i(&self) -> bool {
        let n = self.n;
        self.adjacency_squared()
            .iter()
            .enumerate()
            .all(|(idx, &v)| v == if idx / n == idx % n { 4 } else { 0 })
    }

    /// True iff no three vertices are mutually adjacent (signs ignored).
    pub fn is_triangle_free(&self) -> bool {
        let n = self.n;
        for i in 0..n {
            for j in i + 1..n {
                if self.edge(i, j) == 0 {
                    continue;
                }
                for k in j + 1..n {
                    if self.edge(i, k) != 0 && self.edge(j, k) != 0 {
                        return false;
                    }
                }
            }
        }
        true
    }
}

impl fmt::Debug for ChargedSignedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format::to_csg(self))
    }
}

/// Signed permutation plus optional global negation relating two graphs.
///
/// Applying the witness to `g` sends vertex `i` to `perm[i]`, multiplies row
/// and column `i` by `signs[i]`, and negates everything when `negate` is set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceWitness {
    pub perm: Vec<usize>,
    pub signs: Vec<i8>,
    pub negate: bool,
}

impl EquivalenceWitness {
    pub fn identity(n: usize) -> Self {
        EquivalenceWitness {
            perm: (0..n).collect(),
            signs: vec![1; n],
            negate: false,
        }
    }

    /// The witness equivalent to applying `self` first and then `next`.
    pub fn then(&self, next: &EquivalenceWitness) -> Self {
        assert_eq!(self.perm.len(), next.perm.len());
        EquivalenceWitness {
            perm: self.perm.iter().map(|&p| next.perm[p]).collect(),
            signs: self
                .perm
                .iter()
                .enumerate()
                .map(|(i, &p)| self.signs[i] * next.signs[p])
                .collect(),
            negate: self.negate ^ next.negate,
        }
    }

    pub fn inverse(&self) -> Self {
        let n = self.perm.len();
        let mut perm = vec![0; n];
        let mut signs = vec![1; n];
        for i in 0..n {
            perm[self.perm[i]] = i;
            signs[self.perm[i]] = self.signs[i];
        }
        EquivalenceWitness {
            perm,
            signs,
            negate: self.negate,
        }
    }

    /// Checks that applying the witness to `from` yields `to`.
    pub fn verify(&self, from: &ChargedSignedGraph, to: &ChargedSignedGraph) -> bool {
        self.perm.len() == from.n() && from.n() == to.n() && &from.apply(self) == to
    }
}

/// Convenience: the strong or weak equivalence test as a boolean.
pub fn equivalent(g: &ChargedSignedGraph, h: &ChargedSignedGraph, strong: bool) -> bool {
    are_equivalent(g, h, strong).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> ChargedSignedGraph {
        ChargedSignedGraph::signed(3, &[(0, 1, 1), (1, 2, 1), (0, 2, 1)])
    }

    #[test]
    fn switch_flips_incident_edges() {
        let g = ChargedSignedGraph::signed(2, &[(0, 1, 1)]);
        let s = g.switch(0).unwrap();
        assert_eq!(s.edge(0, 1), -1);
        assert_eq!(s.switch(0).unwrap(), g);
        assert!(g.switch(2).is_err());
    }

    #[test]
    fn switching_one_part_of_bipartite_graph_flips_everything() {
        // 6-cycle with parts {0,2,4} and {1,3,5}.
        let c6 = ChargedSignedGraph::signed(6, &[(0, 1, 1), (1, 2, -1), (2, 3, 1), (3, 4, 1), (4, 5, -1), (5, 0, 1)]);
        let switched = c6.switch_set(&[0, 2, 4]).unwrap();
        for (i, j, s) in c6.edge_list() {
            assert_eq!(switched.edge(i, j), -s);
        }
    }

    #[test]
    fn matrix_round_trip() {
        let g = ChargedSignedGraph::from_edges(3, &[1, 0, -1], &[(0, 1, -1), (1, 2, 1)]).unwrap();
        let m = g.adjacency_matrix();
        assert_eq!(ChargedSignedGraph::from_matrix(&m).unwrap(), g);
        let big = IntSymMatrix::from_rows(&[vec![2]]).unwrap();
        assert!(ChargedSignedGraph::from_matrix(&big).is_err());
        assert!(IntSymMatrix::from_rows(&[vec![0, 1], vec![0, 0]]).is_err());
    }

    #[test]
    fn induced_subgraph_edge_cases() {
        let t = triangle();
        assert_eq!(t.induced_subgraph(&[0, 1, 2]).unwrap(), t);
        assert_eq!(t.induced_subgraph(&[]).unwrap().n(), 0);
        assert_eq!(t.induced_subgraph(&[2, 0]).unwrap().edge_count(), 1);
        assert!(t.induced_subgraph(&[5]).is_err());
    }

    #[test]
    fn components_are_ordered_by_least_vertex() {
        let g = ChargedSignedGraph::empty(3);
        assert_eq!(g.components(), vec![vec![0], vec![1], vec![2]]);
        let h = ChargedSignedGraph::signed(4, &[(0, 3, 1), (1, 2, -1)]);
        assert_eq!(h.components(), vec![vec![0, 3], vec![1, 2]]);
        assert!(!ChargedSignedGraph::empty(0).is_connected());
    }

    #[test]
    fn witness_composition_and_inverse() {
        let g = ChargedSignedGraph::from_edges(3, &[1, 0, 0], &[(0, 1, 1), (1, 2, -1)]).unwrap();
        let a = EquivalenceWitness {
            perm: vec![2, 0, 1],
            signs: vec![1, -1, 1],
            negate: false,
        };
        let b = EquivalenceWitness {
            perm: vec![1, 2, 0],
            signs: vec![-1, 1, 1],
            negate: true,
        };
        assert_eq!(g.apply(&a).apply(&b), g.apply(&a.then(&b)));
        assert_eq!(g.apply(&a).apply(&a.inverse()), g);
        assert_eq!(g.apply(&EquivalenceWitness::identity(3)), g);
        let c = EquivalenceWitness {
            perm: vec![0, 2, 1],
            signs: vec![1, 1, -1],
            negate: false,
        };
        assert_eq!(a.then(&b).then(&c), a.then(&b.then(&c)));
    }

    #[test]
    fn triangle_free_detection() {
        assert!(!triangle().is_triangle_free());
        assert!(ChargedSignedGraph::signed(3, &[(0, 1, 1), (1, 2, 1)]).is_triangle_free());
    }
}
