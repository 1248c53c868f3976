//! The E8 line system and the search for its maximal triangle-free induced
//! subgraphs.
//!
//! Vertices are stored with doubled coordinates in a basis `e_1..e_8` of
//! squared length 2, so `<u, v> = sum(d_u * d_v) / 2`. The 8 basis vectors
//! come first, then the 112 half-sums, string by string, with the sign
//! pattern on the last three digits counted in binary.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::path::PathBuf;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{weak_canonical_form, ChargedSignedGraph};
use crate::par::{self, Jobs};

/// The 14 four-element subsets of `{1..8}` indexing the half-sum vertices.
pub const E8_STRINGS: [[u8; 4]; 14] = [
    [1, 2, 3, 4],
    [1, 2, 5, 6],
    [1, 2, 7, 8],
    [1, 3, 5, 7],
    [1, 3, 6, 8],
    [1, 4, 5, 8],
    [1, 4, 6, 7],
    [2, 3, 5, 8],
    [2, 3, 6, 7],
    [2, 4, 5, 7],
    [2, 4, 6, 8],
    [3, 4, 5, 6],
    [3, 4, 7, 8],
    [5, 6, 7, 8],
];

pub const E8_SIZE: usize = 120;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct E8Vertex {
    pub dcoords: [i8; 8],
}

impl E8Vertex {
    pub fn dot(&self, other: &E8Vertex) -> i32 {
        let s: i32 = self
            .dcoords
            .iter()
            .zip(&other.dcoords)
            .map(|(&a, &b)| a as i32 * b as i32)
            .sum();
        s / 2
    }

    pub fn norm(&self) -> i32 {
        self.dot(self)
    }

    pub fn negated(&self) -> E8Vertex {
        let mut d = self.dcoords;
        for x in &mut d {
            *x = -*x;
        }
        E8Vertex { dcoords: d }
    }

    /// Digit-string name with `-` before each negated digit, e.g. `1-23-4`.
    pub fn name(&self) -> String {
        let mut s = String::new();
        for (i, &d) in self.dcoords.iter().enumerate() {
            if d != 0 {
                if d < 0 {
                    s.push('-');
                }
                s.push(char::from(b'1' + i as u8));
            }
        }
        s
    }

    /// Parses a name such as `7`, `1234` or `1-2-56`; the first digit of a
    /// string must be positive.
    pub fn parse(name: &str) -> Result<E8Vertex> {
        let bad = || Error::InvalidParameter(format!("not an E8 vertex name: `{name}`"));
        let mut d = [0i8; 8];
        let mut neg = false;
        let mut count = 0;
        for ch in name.chars() {
            match ch {
                '-' if !neg => neg = true,
                '1'..='8' => {
                    let i = ch as usize - '1' as usize;
                    if d[i] != 0 {
                        return Err(bad());
                    }
                    d[i] = if neg { -1 } else { 1 };
                    neg = false;
                    count += 1;
                }
                _ => return Err(bad()),
            }
        }
        if neg {
            return Err(bad());
        }
        let v = match count {
            1 => {
                let i = d.iter().position(|&x| x != 0).expect("one digit");
                if d[i] < 0 {
                    return Err(bad());
                }
                d[i] = 2;
                E8Vertex { dcoords: d }
            }
            4 => E8Vertex { dcoords: d },
            _ => return Err(bad()),
        };
        if e8_index(&v).is_none() {
            return Err(bad());
        }
        Ok(v)
    }
}

impl fmt::Display for E8Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// The 120 vertices in search order.
pub fn e8_vertices() -> Vec<E8Vertex> {
    let mut out = Vec::with_capacity(E8_SIZE);
    for i in 0..8 {
        let mut d = [0i8; 8];
        d[i] = 2;
        out.push(E8Vertex { dcoords: d });
    }
    for s in E8_STRINGS {
        for pattern in 0..8u8 {
            let mut d = [0i8; 8];
            d[s[0] as usize - 1] = 1;
            for k in 0..3 {
                let neg = pattern >> (2 - k) & 1 == 1;
                d[s[k + 1] as usize - 1] = if neg { -1 } else { 1 };
            }
            out.push(E8Vertex { dcoords: d });
        }
    }
    out
}

fn index_map() -> &'static HashMap<E8Vertex, usize> {
    static MAP: std::sync::OnceLock<HashMap<E8Vertex, usize>> = std::sync::OnceLock::new();
    MAP.get_or_init(|| e8_vertices().into_iter().enumerate().map(|(i, v)| (v, i)).collect())
}

/// Index of the vertex spanning the same line as `v`, with the sign relating
/// them (`v = sign * vertex`).
pub fn e8_line(v: &E8Vertex) -> Option<(usize, i8)> {
    let map = index_map();
    map.get(v)
        .map(|&i| (i, 1))
        .or_else(|| map.get(&v.negated()).map(|&i| (i, -1)))
}

fn e8_index(v: &E8Vertex) -> Option<usize> {
    index_map().get(v).copied()
}

/// The signed graph on the 120 vertices, adjacency by inner product.
pub fn e8_graph() -> ChargedSignedGraph {
    let vs = e8_vertices();
    let mut g = ChargedSignedGraph::empty(E8_SIZE);
    for i in 0..E8_SIZE {
        for j in i + 1..E8_SIZE {
            let d = vs[i].dot(&vs[j]);
            if d != 0 {
                g.set_edge(i, j, d as i8).expect("inner products are ±1");
            }
        }
    }
    g
}

/// A symmetry of the line system: vertex `i` maps to `signs[i] * perm[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct E8Move {
    pub label: String,
    pub perm: Vec<u8>,
    pub signs: Vec<i8>,
}

impl E8Move {
    fn from_linear(label: String, f: impl Fn(&[i8; 8]) -> [i8; 8]) -> Result<E8Move> {
        let vs = e8_vertices();
        let mut perm = Vec::with_capacity(E8_SIZE);
        let mut signs = Vec::with_capacity(E8_SIZE);
        for v in &vs {
            let image = E8Vertex { dcoords: f(&v.dcoords) };
            let (j, s) =
                e8_line(&image).ok_or_else(|| Error::Verification(format!("{label} leaves the line system")))?;
            perm.push(j as u8);
            signs.push(s);
        }
        let m = E8Move { label, perm, signs };
        m.verify()?;
        Ok(m)
    }

    /// Checks that the move is a bijection preserving signed adjacency.
    pub fn verify(&self) -> Result<()> {
        let vs = e8_vertices();
        let mut seen = [false; E8_SIZE];
        for &p in &self.perm {
            if std::mem::replace(&mut seen[p as usize], true) {
                return Err(Error::Verification(format!("{} is not a bijection", self.label)));
            }
        }
        for i in 0..E8_SIZE {
            for j in i..E8_SIZE {
                let (pi, pj) = (self.perm[i] as usize, self.perm[j] as usize);
                let image = vs[pi].dot(&vs[pj]) * (self.signs[i] * self.signs[j]) as i32;
                if image != vs[i].dot(&vs[j]) {
                    return Err(Error::Verification(format!(
                        "{} changes the inner product of {} and {}",
                        self.label, vs[i], vs[j]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn apply_set(&self, set: u128) -> u128 {
        let mut out = 0u128;
        let mut rest = set;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            out |= 1u128 << self.perm[i];
        }
        out
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &E8Move) -> E8Move {
        E8Move {
            label: format!("{} ; {}", self.label, next.label),
            perm: self.perm.iter().map(|&p| next.perm[p as usize]).collect(),
            signs: (0..E8_SIZE)
                .map(|i| self.signs[i] * next.signs[self.perm[i] as usize])
                .collect(),
        }
    }
}

/// Coordinate sign changes, Klein four-group double transpositions inside
/// each string, and for each string `ijkl` the involution
/// `e_i -> (e_i+e_j+e_k+e_l)/2`, `e_j -> (e_i+e_j-e_k-e_l)/2`,
/// `e_k -> (e_i-e_j+e_k-e_l)/2`, `e_l -> (e_i-e_j-e_k+e_l)/2`.
pub fn e8_moves() -> Result<Vec<E8Move>> {
    let mut moves = Vec::new();
    for c in 0..8 {
        moves.push(E8Move::from_linear(format!("flip {}", c + 1), |d| {
            let mut out = *d;
            out[c] = -out[c];
            out
        })?);
    }
    for s in E8_STRINGS {
        let [i, j, k, l] = s.map(|x| x as usize - 1);
        for (a, b, c, d) in [(i, j, k, l), (i, k, j, l), (i, l, j, k)] {
            let label = format!("({}{})({}{})", a + 1, b + 1, c + 1, d + 1);
            moves.push(E8Move::from_linear(label, |x| {
                let mut out = *x;
                out.swap(a, b);
                out.swap(c, d);
                out
            })?);
        }
    }
    for s in E8_STRINGS {
        let [i, j, k, l] = s.map(|x| x as usize - 1);
        let label = format!("basis {}{}{}{}", i + 1, j + 1, k + 1, l + 1);
        moves.push(E8Move::from_linear(label, |x| {
            let (a, b, c, d) = (x[i] as i32, x[j] as i32, x[k] as i32, x[l] as i32);
            let mut out = *x;
            out[i] = ((a + b + c + d) / 2) as i8;
            out[j] = ((a + b - c - d) / 2) as i8;
            out[k] = ((a - b + c - d) / 2) as i8;
            out[l] = ((a - b - c + d) / 2) as i8;
            out
        })?);
    }
    Ok(moves)
}

/// Neighbourhood bitmasks of the E8 graph (signs ignored).
fn neighbourhoods() -> Vec<u128> {
    let vs = e8_vertices();
    (0..E8_SIZE)
        .map(|i| {
            (0..E8_SIZE)
                .filter(|&j| j != i && vs[i].dot(&vs[j]) != 0)
                .fold(0u128, |m, j| m | 1u128 << j)
        })
        .collect()
}

fn members(set: u128) -> Vec<usize> {
    let mut out = Vec::new();
    let mut rest = set;
    while rest != 0 {
        out.push(rest.trailing_zeros() as usize);
        rest &= rest - 1;
    }
    out
}

/// Options for [`search_e8_triangle_free`].
#[derive(Debug, Clone, Default)]
pub struct E8SearchOptions {
    pub jobs: Jobs,
    /// JSON file recording finished subtrees, so an interrupted run resumes.
    pub checkpoint: Option<PathBuf>,
    /// Process only these first-level subtrees (by first vertex index).
    pub only_roots: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct E8SearchResult {
    /// One vertex set per class, each sorted, classes in canonical order.
    pub classes: Vec<Vec<usize>>,
    /// Survivors of the move-based rejection before exact deduplication.
    pub raw_survivors: usize,
    pub nodes: u64,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
struct Checkpoint {
    done: Vec<SubtreeResult>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct SubtreeResult {
    key: (usize, usize),
    survivors: Vec<Vec<usize>>,
    nodes: u64,
}

struct Searcher<'a> {
    nbr: &'a [u128],
    moves: &'a [E8Move],
    nodes: u64,
    survivors: Vec<u128>,
}

impl Searcher<'_> {
    /// True when some move maps `set` to a lexicographically smaller set.
    fn rejected(&self, set: u128) -> bool {
        self.moves.iter().any(|m| {
            let image = m.apply_set(set);
            let diff = image ^ set;
            diff != 0 && image & (diff & diff.wrapping_neg()) != 0
        })
    }

    fn grow(&mut self, set: u128, blocked: u128, last: usize) {
        self.nodes += 1;
        let above = if last + 1 >= E8_SIZE { 0 } else { !0u128 << (last + 1) };
        let all = if E8_SIZE == 128 { !0u128 } else { (1u128 << E8_SIZE) - 1 };
        let free = !(set | blocked) & all;
        let mut cands = free & above;
        if cands == 0 {
            if free == 0 {
                self.survivors.push(set);
            }
            return;
        }
        while cands != 0 {
            let v = cands.trailing_zeros() as usize;
            cands &= cands - 1;
            let (s2, b2) = self.add(set, blocked, v);
            if !self.rejected(s2) {
                self.grow(s2, b2, v);
            }
        }
    }

    fn add(&self, set: u128, blocked: u128, v: usize) -> (u128, u128) {
        let mut b = blocked;
        let nv = self.nbr[v];
        for u in members(set & nv) {
            b |= self.nbr[u] & nv;
        }
        (set | 1u128 << v, b)
    }
}

fn run_subtree(nbr: &[u128], moves: &[E8Move], a: usize, b: usize) -> SubtreeResult {
    let mut s = Searcher {
        nbr,
        moves,
        nodes: 0,
        survivors: Vec::new(),
    };
    let (s1, b1) = s.add(0, 0, a);
    let (s2, b2) = s.add(s1, b1, b);
    if !s.rejected(s1) && !s.rejected(s2) {
        s.grow(s2, b2, b);
    }
    SubtreeResult {
        key: (a, b),
        survivors: s.survivors.iter().map(|&x| members(x)).collect(),
        nodes: s.nodes,
    }
}

/// All second-level subtree keys `(a, b)` with `a < b` and `b` not blocked.
fn subtree_keys(nbr: &[u128], moves: &[E8Move], roots: Option<&[usize]>) -> Vec<(usize, usize)> {
    let s = Searcher {
        nbr,
        moves,
        nodes: 0,
        survivors: Vec::new(),
    };
    let mut keys = Vec::new();
    for a in 0..E8_SIZE {
        if roots.is_some_and(|r| !r.contains(&a)) {
            continue;
        }
        let (s1, _) = s.add(0, 0, a);
        if s.rejected(s1) {
            continue;
        }
        for b in a + 1..E8_SIZE {
            keys.push((a, b));
        }
    }
    keys
}

/// Maximal triangle-free induced subgraphs of E8 up to equivalence.
///
/// Sets are grown by adding vertices in increasing index order; a set is
/// dropped as soon as one of the precomputed moves maps it to a
/// lexicographically smaller set, which also rules out every completion.
/// Survivors are re-checked for maximality against all 120 vertices and
/// deduplicated exactly by weak canonical form.
pub fn search_e8_triangle_free(opts: &E8SearchOptions) -> Result<E8SearchResult> {
    let moves = e8_moves()?;
    let nbr = neighbourhoods();
    let keys = subtree_keys(&nbr, &moves, opts.only_roots.as_deref());

    let mut done: Vec<SubtreeResult> = Vec::new();
    if let Some(path) = &opts.checkpoint {
        if path.exists() {
            let text = std::fs::read_to_string(path)?;
            let cp: Checkpoint = serde_json::from_str(&text)
                .map_err(|e| Error::Io(format!("bad checkpoint {}: {e}", path.display())))?;
            done = cp.done;
        }
    }
    let finished: BTreeSet<(usize, usize)> = done.iter().map(|r| r.key).collect();
    let todo: Vec<(usize, usize)> = keys.iter().copied().filter(|k| !finished.contains(k)).collect();

    let store = Mutex::new(done);
    let write_error: Mutex<Option<Error>> = Mutex::new(None);
    par::map(opts.jobs, &todo, |&(a, b)| {
        let r = run_subtree(&nbr, &moves, a, b);
        let mut guard = store.lock().expect("checkpoint lock");
        guard.push(r);
        if let Some(path) = &opts.checkpoint {
            let cp = Checkpoint { done: guard.clone() };
            let json = serde_json::to_string(&cp).expect("checkpoint serializes");
            if let Err(e) = std::fs::write(path, json) {
                *write_error.lock().expect("error lock") = Some(e.into());
            }
        }
    });
    if let Some(e) = write_error.into_inner().expect("error lock") {
        return Err(e);
    }
    let mut done = store.into_inner().expect("checkpoint lock");
    done.retain(|r| keys.contains(&r.key));
    done.sort_by_key(|r| r.key);

    let nodes = done.iter().map(|r| r.nodes).sum();
    let mut survivors: Vec<Vec<usize>> = done.into_iter().flat_map(|r| r.survivors).collect();
    survivors.sort();
    survivors.dedup();
    let raw_survivors = survivors.len();

    let graph = e8_graph();
    let mut seen: BTreeSet<_> = BTreeSet::new();
    let mut classes: Vec<(crate::graph::CanonicalForm, Vec<usize>)> = Vec::new();
    let keyed = par::map(opts.jobs, &survivors, |set| {
        let sub = graph.induced_subgraph(set).expect("valid indices");
        (weak_canonical_form(&sub).form, set.clone())
    });
    for (form, set) in keyed {
        if !is_maximal_triangle_free(&graph, &set) {
            return Err(Error::Verification(format!("survivor {set:?} is not maximal")));
        }
        if seen.insert(form.clone()) {
            classes.push((form, set));
        }
    }
    classes.sort();
    Ok(E8SearchResult {
        classes: classes.into_iter().map(|(_, s)| s).collect(),
        raw_survivors,
        nodes,
    })
}

/// Triangle-free, and every other vertex would close a triangle.
pub fn is_maximal_triangle_free(e8: &ChargedSignedGraph, set: &[usize]) -> bool {
    let sub = e8.induced_subgraph(set).expect("valid indices");
    if !sub.is_triangle_free() {
        return false;
    }
    (0..e8.n()).filter(|v| !set.contains(v)).all(|v| {
        let mut bigger = set.to_vec();
        bigger.push(v);
        !e8.induced_subgraph(&bigger).expect("valid indices").is_triangle_free()
    })
}

/// Vertex indices from a whitespace-separated list of names.
pub fn parse_e8_set(text: &str) -> Result<Vec<usize>> {
    let mut out: Vec<usize> = text
        .split_whitespace()
        .map(|name| {
            let v = E8Vertex::parse(name)?;
            Ok(e8_index(&v).expect("parse checks membership"))
        })
        .collect::<Result<_>>()?;
    out.sort_unstable();
    Ok(out)
}

pub fn format_e8_set(set: &[usize]) -> String {
    let vs = e8_vertices();
    set.iter().map(|&i| vs[i].name()).collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertex_system() {
        let vs = e8_vertices();
        assert_eq!(vs.len(), 120);
        assert!(vs.iter().all(|v| v.norm() == 2));
        for i in 0..120 {
            for j in i + 1..120 {
                assert!(vs[i].dot(&vs[j]).abs() <= 1);
            }
        }
        let v = E8Vertex::parse("14-6-7").unwrap();
        assert_eq!(v.dcoords, [1, 0, 0, 1, 0, -1, -1, 0]);
        assert!(E8Vertex::parse("1235").is_err());
        assert!(E8Vertex::parse("1467").is_ok());
        assert!(E8Vertex::parse("-1234").is_err());
        assert_eq!(vs[8].name(), "1234");
        assert_eq!(vs[9].name(), "123-4");
    }

    #[test]
    fn moves_preserve_the_system() {
        let moves = e8_moves().unwrap();
        assert_eq!(moves.len(), 8 + 42 + 14);
        let flip = &moves[0];
        let v = e8_index(&E8Vertex::parse("1234").unwrap()).unwrap();
        let w = e8_index(&E8Vertex::parse("1-2-3-4").unwrap()).unwrap();
        assert_eq!(flip.perm[v] as usize, w);
        assert_eq!(flip.signs[v], -1);
        let m = moves.iter().find(|m| m.label == "(12)(56)").unwrap();
        let a = e8_index(&E8Vertex::parse("1-23-4").unwrap()).unwrap();
        let b = e8_index(&E8Vertex::parse("1-2-34").unwrap()).unwrap();
        assert_eq!(m.perm[a] as usize, b);
    }

    #[test]
    fn composed_moves_still_preserve() {
        let moves = e8_moves().unwrap();
        for i in 0..10 {
            for j in 0..10 {
                let a = &moves[(i * 7) % moves.len()];
                let b = &moves[(j * 13 + 5) % moves.len()];
                a.then(b).verify().unwrap();
            }
        }
    }
}
