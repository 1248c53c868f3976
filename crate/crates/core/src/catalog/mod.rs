//! Named maximal graphs and families, with their expected polynomials.

mod pinned;
mod tables;

pub use pinned::{
    file_name, pinned, pinned_names, pinned_text, reconstruct_all, reconstruct_sporadic_charged, reconstruct_u,
    reconstruct_v, DATA_ENV,
};
pub use tables::{expected_poly, o_recurrence_holds, verify_tables, ExpectedPoly, TableRow};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::ChargedSignedGraph;
use crate::search::e8::{e8_graph, e8_line, e8_vertices, E8Vertex};

fn need(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidParameter(what.to_string()))
    }
}

/// The toroidal tessellation `T_2k`: vertex `2(i-1)` is `v_i` and
/// `2(i-1)+1` is `v_i*`. The `v` cycle is positive, the `v*` cycle negative,
/// `v_i v_{i+1}*` positive and `v_i v_{i-1}*` negative.
pub fn build_t(k: usize) -> Result<ChargedSignedGraph> {
    need(k >= 3, "T_2k needs k >= 3")?;
    let v = |i: usize| 2 * (i % k);
    let w = |i: usize| 2 * (i % k) + 1;
    let mut edges = Vec::new();
    for i in 0..k {
        edges.push((v(i), v(i + 1), 1));
        edges.push((w(i), w(i + 1), -1));
        edges.push((v(i), w(i + 1), 1));
        edges.push((v(i + 1), w(i), -1));
    }
    ChargedSignedGraph::from_edges(2 * k, &vec![0; 2 * k], &edges)
}

/// Vertices `0..6` and `0'..6'` (indices `7..13`); `i` is joined to `i'`,
/// `(i+1)'` and `(i+3)'` positively and to `(i-1)'` negatively.
pub fn build_s14() -> ChargedSignedGraph {
    let p = |i: usize| 7 + i % 7;
    let mut edges = Vec::new();
    for i in 0..7 {
        edges.push((i, p(i), 1));
        edges.push((i, p(i + 1), 1));
        edges.push((i, p(i + 3), 1));
        edges.push((i, p(i + 6), -1));
    }
    ChargedSignedGraph::from_edges(14, &[0; 14], &edges).expect("valid edges")
}

pub const S16_NAMES: [&str; 16] = [
    "1", "2", "3", "4", "5", "6", "7", "8", "1234", "1-256", "1-3-57", "1-4-6-7", "2-358", "2-46-8", "3-478", "5-67-8",
];

/// The hypercube: sixteen E8 vectors with adjacency by inner product.
pub fn build_s16() -> ChargedSignedGraph {
    vectors_graph(&s16_vectors())
}

pub fn s16_vectors() -> Vec<E8Vertex> {
    S16_NAMES
        .iter()
        .map(|s| E8Vertex::parse(s).expect("valid E8 names"))
        .collect()
}

fn vectors_graph(vs: &[E8Vertex]) -> ChargedSignedGraph {
    let n = vs.len();
    let mut g = ChargedSignedGraph::empty(n);
    for i in 0..n {
        for j in i + 1..n {
            let d = vs[i].dot(&vs[j]);
            if d != 0 {
                g.set_edge(i, j, d as i8).expect("inner products are ±1");
            }
        }
    }
    g
}

/// An orthogonal map (as a matrix acting on doubled coordinates, scaled by
/// 2) exchanging the two halves of [`build_s16`] up to sign.
pub const S16_PART_SWAP: [[i8; 8]; 8] = [
    [1, 1, 1, 1, 0, 0, 0, 0],
    [1, -1, 0, 0, 1, 1, 0, 0],
    [1, 0, -1, 0, -1, 0, 1, 0],
    [1, 0, 0, -1, 0, -1, -1, 0],
    [0, 1, -1, 0, 1, 0, 0, 1],
    [0, 1, 0, -1, 0, 1, 0, -1],
    [0, 0, 1, -1, 0, 0, 1, 1],
    [0, 0, 0, 0, 1, -1, 1, -1],
];

/// Image of a vector under [`S16_PART_SWAP`], or `None` if it leaves the
/// line system.
pub fn s16_part_swap(v: &E8Vertex) -> Option<(usize, i8)> {
    let mut d = [0i8; 8];
    for (r, row) in S16_PART_SWAP.iter().enumerate() {
        let s: i32 = row.iter().zip(&v.dcoords).map(|(&a, &b)| a as i32 * b as i32).sum();
        if s % 2 != 0 {
            return None;
        }
        d[r] = (s / 2) as i8;
    }
    e8_line(&E8Vertex { dcoords: d })
}

/// The cylindrical tessellations `C_2k^{++}` and `C_2k^{+-}`.
///
/// Pairs `(2i, 2i+1)` for `i < k` are linked as in [`build_t`] except that
/// the wrap-around links are missing. Both vertices of the first pair have
/// charge +1; the last pair has charge +1 or -1 according to
/// `same_sign_ends`. The internal edge of each end pair and its four links
/// to the neighbouring pair are then fixed by trying sign assignments in a
/// fixed order and keeping the first with `A^2 = 4I`.
pub fn build_c(k: usize, same_sign_ends: bool) -> Result<ChargedSignedGraph> {
    need(k >= 2, "C_2k needs k >= 2")?;
    c_candidates(k, same_sign_ends)
        .into_iter()
        .next()
        .ok_or_else(|| Error::Verification(format!("no sign completion for C_{}", 2 * k)))
}

/// Every completion of the end signs with `A^2 = 4I`, in search order.
pub fn c_candidates(k: usize, same_sign_ends: bool) -> Vec<ChargedSignedGraph> {
    let n = 2 * k;
    let last = if same_sign_ends { 1 } else { -1 };
    let mut charges = vec![0i8; n];
    charges[0] = 1;
    charges[1] = 1;
    charges[n - 2] = last;
    charges[n - 1] = last;
    // Links between pair i and pair i+1, as in T.
    let links = |i: usize| {
        let (v, w, v2, w2) = (2 * i, 2 * i + 1, 2 * i + 2, 2 * i + 3);
        [(v, v2, 1i8), (w, w2, -1), (v, w2, 1), (v2, w, -1)]
    };
    // Free signs: internal edges of both end pairs, then the links at each
    // end (shared when k = 2).
    let mut free: Vec<(usize, usize, i8)> = vec![(0, 1, 1), (n - 2, n - 1, 1)];
    free.extend(links(0));
    if k > 2 {
        free.extend(links(k - 2));
    }
    let fixed: Vec<(usize, usize, i8)> = (1..k.saturating_sub(2)).flat_map(links).collect();
    let mut out = Vec::new();
    for bits in 0u32..1 << free.len() {
        let mut edges = fixed.clone();
        for (b, &(i, j, s)) in free.iter().enumerate() {
            let flip = if bits >> b & 1 == 1 { -1 } else { 1 };
            edges.push((i, j, s * flip));
        }
        let g = ChargedSignedGraph::from_edges(n, &charges, &edges).expect("valid edges");
        if g.squares_to_4i() {
            out.push(g);
        }
    }
    out
}

/// The root system `D_n`: vectors `e_i + e_j`, `e_i - e_j` for `i < j`.
pub fn build_dn_system(n: usize) -> Result<ChargedSignedGraph> {
    need(n >= 2, "D_n needs n >= 2")?;
    let mut vs: Vec<Vec<i32>> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for s in [1, -1] {
                let mut v = vec![0; n];
                v[i] = 1;
                v[j] = s;
                vs.push(v);
            }
        }
    }
    let mut g = ChargedSignedGraph::empty(vs.len());
    for a in 0..vs.len() {
        for b in a + 1..vs.len() {
            let d: i32 = vs[a].iter().zip(&vs[b]).map(|(x, y)| x * y).sum();
            if d != 0 {
                g.set_edge(a, b, d as i8)?;
            }
        }
    }
    Ok(g)
}

pub fn build_e8_system() -> (Vec<E8Vertex>, ChargedSignedGraph) {
    (e8_vertices(), e8_graph())
}

fn path_edges(n: usize) -> Vec<(usize, usize, i8)> {
    (1..n).map(|i| (i - 1, i, 1)).collect()
}

/// `2k`-cycle with exactly one negative edge.
pub fn build_o(k: usize) -> Result<ChargedSignedGraph> {
    need(k >= 2, "O_2k needs k >= 2")?;
    let n = 2 * k;
    let mut edges = path_edges(n);
    edges.push((0, n - 1, -1));
    ChargedSignedGraph::from_edges(n, &vec![0; n], &edges)
}

/// A 4-cycle `a b c d` whose edge `d a` is negative, with a path of `h`
/// further vertices hanging from `a` and one of `k` from `c`.
pub fn build_q(h: usize, k: usize) -> Result<ChargedSignedGraph> {
    need(h >= 1 && k >= 1, "Q_hk needs h, k >= 1")?;
    let n = h + k + 4;
    let mut edges = vec![(0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 3, -1)];
    let mut prev = 0;
    for t in 0..h {
        edges.push((prev, 4 + t, 1));
        prev = 4 + t;
    }
    prev = 2;
    for t in 0..k {
        edges.push((prev, 4 + h + t, 1));
        prev = 4 + h + t;
    }
    ChargedSignedGraph::from_edges(n, &vec![0; n], &edges)
}

/// All-positive path on `n` vertices.
pub fn build_p(n: usize) -> Result<ChargedSignedGraph> {
    need(n >= 1, "P_n needs n >= 1")?;
    ChargedSignedGraph::from_edges(n, &vec![0; n], &path_edges(n))
}

/// Path with charge -1 on its first vertex.
pub fn build_p_minus(n: usize) -> Result<ChargedSignedGraph> {
    let mut g = build_p(n)?;
    g.set_charge(0, -1)?;
    Ok(g)
}

/// Path with charge +1 on its first vertex (the negation of `P_n^-`).
pub fn build_p_plus(n: usize) -> Result<ChargedSignedGraph> {
    let mut g = build_p(n)?;
    g.set_charge(0, 1)?;
    Ok(g)
}

/// Path with charges +1 and -1 on its two ends.
pub fn build_p_pm(n: usize) -> Result<ChargedSignedGraph> {
    need(n >= 2, "P_n^± needs n >= 2")?;
    let mut g = build_p(n)?;
    g.set_charge(0, 1)?;
    g.set_charge(n - 1, -1)?;
    Ok(g)
}

/// The Dynkin diagram `D_n`: a path with a second leaf at one end.
pub fn build_d_path(n: usize) -> Result<ChargedSignedGraph> {
    need(n >= 3, "D_n needs n >= 3")?;
    let mut edges = path_edges(n - 1);
    edges.push((1, n - 1, 1));
    ChargedSignedGraph::from_edges(n, &vec![0; n], &edges)
}

/// `(n+1)`-cycle, all positive.
pub fn build_a_tilde(n: usize) -> Result<ChargedSignedGraph> {
    need(n >= 2, "A~_n needs n >= 2")?;
    let mut edges = path_edges(n + 1);
    edges.push((0, n, 1));
    ChargedSignedGraph::from_edges(n + 1, &vec![0; n + 1], &edges)
}

/// `n+1` vertices: a path with two leaves at each end.
pub fn build_d_tilde(n: usize) -> Result<ChargedSignedGraph> {
    need(n >= 4, "D~_n needs n >= 4")?;
    let mut edges = path_edges(n - 1);
    edges.push((1, n - 1, 1));
    edges.push((n - 3, n, 1));
    ChargedSignedGraph::from_edges(n + 1, &vec![0; n + 1], &edges)
}

/// A tree with one branch vertex and arms of the given lengths.
fn star_tree(arms: &[usize]) -> ChargedSignedGraph {
    let n = 1 + arms.iter().sum::<usize>();
    let mut edges = Vec::new();
    let mut next = 1;
    for &len in arms {
        let mut prev = 0;
        for _ in 0..len {
            edges.push((prev, next, 1));
            prev = next;
            next += 1;
        }
    }
    ChargedSignedGraph::from_edges(n, &vec![0; n], &edges).expect("valid tree")
}

pub fn build_e6_tilde() -> ChargedSignedGraph {
    star_tree(&[2, 2, 2])
}

pub fn build_e7_tilde() -> ChargedSignedGraph {
    star_tree(&[1, 3, 3])
}

pub fn build_e8_tilde() -> ChargedSignedGraph {
    star_tree(&[1, 2, 5])
}

/// S7, S8 and S8' from the pinned data.
pub fn build_sporadic_charged() -> Result<Vec<ChargedSignedGraph>> {
    ["S7", "S8", "S8'"].iter().map(|name| pinned(name)).collect()
}

/// A named family and how many integer parameters it takes.
#[derive(Debug, Clone, Serialize)]
pub struct Family {
    pub name: &'static str,
    pub params: &'static [&'static str],
    pub description: &'static str,
    #[serde(skip)]
    pub builder: fn(&[usize]) -> Result<ChargedSignedGraph>,
}

fn no_params(ps: &[usize]) -> Result<()> {
    need(ps.is_empty(), "this graph takes no parameters")
}

fn one(ps: &[usize]) -> Result<usize> {
    match ps {
        [k] => Ok(*k),
        _ => Err(Error::InvalidParameter("expected one parameter".into())),
    }
}

macro_rules! fixed {
    ($f:expr) => {
        |ps: &[usize]| {
            no_params(ps)?;
            Ok($f)
        }
    };
}

macro_rules! pinned_family {
    ($name:expr, $desc:expr) => {
        Family {
            name: $name,
            params: &[],
            description: $desc,
            builder: |ps| {
                no_params(ps)?;
                pinned($name)
            },
        }
    };
}

/// Every family the catalog can build, in listing order.
pub fn families() -> Vec<Family> {
    let mut out = vec![
        Family {
            name: "T",
            params: &["k"],
            description: "toroidal tessellation T_2k, k >= 3",
            builder: |ps| build_t(one(ps)?),
        },
        Family {
            name: "C++",
            params: &["k"],
            description: "cylindrical tessellation C_2k^{++}, k >= 2",
            builder: |ps| build_c(one(ps)?, true),
        },
        Family {
            name: "C+-",
            params: &["k"],
            description: "cylindrical tessellation C_2k^{+-}, k >= 2",
            builder: |ps| build_c(one(ps)?, false),
        },
        Family {
            name: "S14",
            params: &[],
            description: "14-vertex sporadic signed graph",
            builder: fixed!(build_s14()),
        },
        Family {
            name: "S16",
            params: &[],
            description: "16-vertex hypercube",
            builder: fixed!(build_s16()),
        },
        pinned_family!("S7", "7-vertex sporadic charged signed graph"),
        pinned_family!("S8", "8-vertex sporadic charged signed graph"),
        pinned_family!("S8'", "second 8-vertex sporadic charged signed graph"),
    ];
    for (name, desc) in [
        ("U1", "8-vertex open-interval sporadic signed graph"),
        ("U2", "8-vertex open-interval sporadic signed graph"),
        ("U3", "8-vertex open-interval sporadic signed graph"),
        ("U4", "8-vertex open-interval sporadic signed graph"),
        ("U5", "8-vertex open-interval sporadic signed graph"),
        ("U6", "8-vertex open-interval sporadic signed graph"),
        ("U7", "8-vertex open-interval sporadic signed graph"),
        ("U8", "8-vertex open-interval sporadic signed graph"),
        ("U9", "8-vertex open-interval sporadic signed graph"),
        ("U10", "8-vertex open-interval sporadic signed graph"),
        ("U11", "8-vertex open-interval sporadic signed graph"),
        ("V1", "4-vertex open-interval sporadic charged signed graph"),
        ("V2", "4-vertex open-interval sporadic charged signed graph"),
        ("V3", "4-vertex open-interval sporadic charged signed graph"),
        ("V4", "4-vertex open-interval sporadic charged signed graph"),
        ("V5", "4-vertex open-interval sporadic charged signed graph"),
        ("V6", "4-vertex open-interval sporadic charged signed graph"),
        ("V7", "4-vertex open-interval sporadic charged signed graph"),
        ("V8", "4-vertex open-interval sporadic charged signed graph"),
    ] {
        out.push(Family {
            name,
            params: &[],
            description: desc,
            builder: pinned_builder(name),
        });
    }
    out.extend([
        Family {
            name: "V1bar",
            params: &[],
            description: "negation of V1",
            builder: |ps| {
                no_params(ps)?;
                Ok(pinned("V1")?.negated())
            },
        },
        Family {
            name: "O",
            params: &["k"],
            description: "2k-cycle with one negative edge, k >= 2",
            builder: |ps| build_o(one(ps)?),
        },
        Family {
            name: "Q",
            params: &["h", "k"],
            description: "4-cycle with one negative edge and tails of h and k vertices",
            builder: |ps| match ps {
                [h, k] => build_q(*h, *k),
                _ => Err(Error::InvalidParameter("expected two parameters".into())),
            },
        },
        Family {
            name: "P",
            params: &["n"],
            description: "path on n vertices",
            builder: |ps| build_p(one(ps)?),
        },
        Family {
            name: "P-",
            params: &["n"],
            description: "path with one end charged -1",
            builder: |ps| build_p_minus(one(ps)?),
        },
        Family {
            name: "P+",
            params: &["n"],
            description: "path with one end charged +1",
            builder: |ps| build_p_plus(one(ps)?),
        },
        Family {
            name: "P+-",
            params: &["n"],
            description: "path with ends charged +1 and -1, n >= 2",
            builder: |ps| build_p_pm(one(ps)?),
        },
        Family {
            name: "D",
            params: &["n"],
            description: "Dynkin diagram D_n, n >= 3",
            builder: |ps| build_d_path(one(ps)?),
        },
        Family {
            name: "Atilde",
            params: &["n"],
            description: "(n+1)-cycle, n >= 2",
            builder: |ps| build_a_tilde(one(ps)?),
        },
        Family {
            name: "Dtilde",
            params: &["n"],
            description: "extended Dynkin diagram on n+1 vertices, n >= 4",
            builder: |ps| build_d_tilde(one(ps)?),
        },
        Family {
            name: "E6tilde",
            params: &[],
            description: "tree with arms 2, 2, 2",
            builder: fixed!(build_e6_tilde()),
        },
        Family {
            name: "E7tilde",
            params: &[],
            description: "tree with arms 1, 3, 3",
            builder: fixed!(build_e7_tilde()),
        },
        Family {
            name: "E8tilde",
            params: &[],
            description: "tree with arms 1, 2, 5",
            builder: fixed!(build_e8_tilde()),
        },
        Family {
            name: "Dsys",
            params: &["n"],
            description: "line system D_n (vectors e_i ± e_j), n >= 2",
            builder: |ps| build_dn_system(one(ps)?),
        },
        Family {
            name: "E8",
            params: &[],
            description: "line system E8 (120 vertices)",
            builder: fixed!(e8_graph()),
        },
    ]);
    out
}

fn pinned_builder(name: &str) -> fn(&[usize]) -> Result<ChargedSignedGraph> {
    macro_rules! arms {
        ($($n:literal),*) => {
            match name {
                $($n => |ps: &[usize]| { no_params(ps)?; pinned($n) },)*
                _ => unreachable!("unknown pinned name"),
            }
        };
    }
    arms!(
        "U1", "U2", "U3", "U4", "U5", "U6", "U7", "U8", "U9", "U10", "U11", "V1", "V2", "V3", "V4", "V5", "V6", "V7",
        "V8"
    )
}

pub fn family(name: &str) -> Result<Family> {
    families()
        .into_iter()
        .find(|f| f.name == name)
        .ok_or_else(|| Error::InvalidParameter(format!("unknown catalog name `{name}`")))
}

/// Builds a catalog graph by name.
pub fn build(name: &str, params: &[usize]) -> Result<ChargedSignedGraph> {
    (family(name)?.builder)(params)
}

/// A concrete catalog graph with its expected polynomial, if tabulated.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub params: Vec<usize>,
    pub builder: fn(&[usize]) -> Result<ChargedSignedGraph>,
    pub expected_poly: Option<ExpectedPoly>,
}

impl CatalogEntry {
    pub fn build(&self) -> Result<ChargedSignedGraph> {
        (self.builder)(&self.params)
    }

    pub fn label(&self) -> String {
        if self.params.is_empty() {
            self.name.to_string()
        } else {
            let ps: Vec<String> = self.params.iter().map(|p| p.to_string()).collect();
            format!("{}({})", self.name, ps.join(","))
        }
    }
}

/// Concrete members: every fixed graph plus each family at the listed
/// parameters.
pub fn entries_with(ranges: &[(&'static str, Vec<Vec<usize>>)]) -> Result<Vec<CatalogEntry>> {
    let mut out = Vec::new();
    for (name, params) in ranges {
        let fam = family(name)?;
        for ps in params {
            out.push(CatalogEntry {
                name: fam.name,
                params: ps.clone(),
                builder: fam.builder,
                expected_poly: expected_poly(fam.name, ps),
            });
        }
    }
    Ok(out)
}

/// The catalog at the parameter ranges used for verification.
pub fn entries() -> Vec<CatalogEntry> {
    let range = |lo: usize, hi: usize| (lo..=hi).map(|k| vec![k]).collect::<Vec<_>>();
    let none = vec![Vec::new()];
    let mut q = Vec::new();
    for h in 1..=10 {
        for k in 1..=10 {
            q.push(vec![h, k]);
        }
    }
    let mut spec: Vec<(&'static str, Vec<Vec<usize>>)> = vec![
        ("T", range(3, 12)),
        ("C++", range(2, 12)),
        ("C+-", range(2, 12)),
        ("S14", none.clone()),
        ("S16", none.clone()),
        ("S7", none.clone()),
        ("S8", none.clone()),
        ("S8'", none.clone()),
    ];
    for name in [
        "U1", "U2", "U3", "U4", "U5", "U6", "U7", "U8", "U9", "U10", "U11", "V1", "V1bar", "V2", "V3", "V4", "V5",
        "V6", "V7", "V8",
    ] {
        spec.push((name, none.clone()));
    }
    spec.extend([
        ("O", range(2, 10)),
        ("Q", q),
        ("P", range(1, 10)),
        ("P-", range(1, 10)),
        ("P+-", range(2, 10)),
        ("D", range(3, 10)),
        ("Atilde", range(2, 10)),
        ("Dtilde", range(4, 10)),
        ("E6tilde", none.clone()),
        ("E7tilde", none.clone()),
        ("E8tilde", none),
    ]);
    entries_with(&spec).expect("catalog names are valid")
}
