//! Graphs known only through their counts and polynomials, reconstructed by
//! enumeration and pinned in `data/`.

use std::collections::BTreeMap;
use std::path::PathBuf;

use super::{build_c, build_o, build_p_pm, build_t, expected_poly};
use crate::error::{Error, Result};
use crate::graph::{format, ChargedSignedGraph};
use crate::intpoly::{char_poly, reciprocal_transform, IntPoly};
use crate::par::Jobs;
use crate::search::{enumerate_levels, EnumerateOptions, Mode};

/// Directory holding replacement pinned files.
pub const DATA_ENV: &str = "CYCLOTOME_DATA";

const PINNED: [(&str, &str, &str); 22] = [
    ("S7", "S7.csg", include_str!("../../data/S7.csg")),
    ("S8", "S8.csg", include_str!("../../data/S8.csg")),
    ("S8'", "S8p.csg", include_str!("../../data/S8p.csg")),
    ("U1", "U1.csg", include_str!("../../data/U1.csg")),
    ("U2", "U2.csg", include_str!("../../data/U2.csg")),
    ("U3", "U3.csg", include_str!("../../data/U3.csg")),
    ("U4", "U4.csg", include_str!("../../data/U4.csg")),
    ("U5", "U5.csg", include_str!("../../data/U5.csg")),
    ("U6", "U6.csg", include_str!("../../data/U6.csg")),
    ("U7", "U7.csg", include_str!("../../data/U7.csg")),
    ("U8", "U8.csg", include_str!("../../data/U8.csg")),
    ("U9", "U9.csg", include_str!("../../data/U9.csg")),
    ("U10", "U10.csg", include_str!("../../data/U10.csg")),
    ("U11", "U11.csg", include_str!("../../data/U11.csg")),
    ("V1", "V1.csg", include_str!("../../data/V1.csg")),
    ("V2", "V2.csg", include_str!("../../data/V2.csg")),
    ("V3", "V3.csg", include_str!("../../data/V3.csg")),
    ("V4", "V4.csg", include_str!("../../data/V4.csg")),
    ("V5", "V5.csg", include_str!("../../data/V5.csg")),
    ("V6", "V6.csg", include_str!("../../data/V6.csg")),
    ("V7", "V7.csg", include_str!("../../data/V7.csg")),
    ("V8", "V8.csg", include_str!("../../data/V8.csg")),
];

pub fn pinned_names() -> Vec<&'static str> {
    PINNED.iter().map(|p| p.0).collect()
}

pub fn file_name(name: &str) -> Option<&'static str> {
    PINNED.iter().find(|p| p.0 == name).map(|p| p.1)
}

/// The pinned graph `name`, read from `$CYCLOTOME_DATA` when set and from
/// the copy built into the library otherwise.
pub fn pinned(name: &str) -> Result<ChargedSignedGraph> {
    let &(_, file, builtin) = PINNED
        .iter()
        .find(|p| p.0 == name)
        .ok_or_else(|| Error::InvalidParameter(format!("no pinned graph `{name}`")))?;
    match std::env::var_os(DATA_ENV) {
        Some(dir) => {
            let path = PathBuf::from(dir).join(file);
            let text = std::fs::read_to_string(&path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            format::parse_csg(&text)
        }
        None => format::parse_csg(builtin),
    }
}

/// File contents for a pinned graph.
pub fn pinned_text(name: &str, g: &ChargedSignedGraph) -> String {
    format!("# pinned reconstruction v1: {name}\n{}", format::to_csg(g))
}

fn reciprocal(g: &ChargedSignedGraph) -> IntPoly {
    reciprocal_transform(&char_poly(&g.adjacency_matrix())).into_poly()
}

/// `g` or its negation, whichever has the tabulated reciprocal polynomial.
fn orient(name: &str, g: &ChargedSignedGraph) -> Result<ChargedSignedGraph> {
    let want = expected_poly(name, &[])
        .ok_or_else(|| Error::Verification(format!("no tabulated polynomial for {name}")))?
        .reciprocal;
    [g.clone(), g.negated()]
        .into_iter()
        .find(|h| reciprocal(h) == want)
        .ok_or_else(|| Error::Verification(format!("no orientation of the candidate for {name} matches")))
}

/// Maximal classes with exactly `n` vertices, in canonical order.
fn maximal_at(n: usize, mode: Mode, jobs: Jobs) -> Result<Vec<ChargedSignedGraph>> {
    let mut out = Vec::new();
    enumerate_levels(&EnumerateOptions::new(n, mode).jobs(jobs), |size, records| {
        if size == n {
            out.extend(records.iter().filter(|r| r.maximal).map(|r| r.key.to_graph()));
        }
        Ok(())
    })?;
    Ok(out)
}

/// Assigns candidates to names by polynomial (up to `z -> -z`), taking
/// names that share a polynomial in canonical order of their candidates.
fn assign(names: &[&str], candidates: Vec<ChargedSignedGraph>) -> Result<Vec<(String, ChargedSignedGraph)>> {
    if names.len() != candidates.len() {
        return Err(Error::Verification(format!(
            "expected {} candidates, found {}",
            names.len(),
            candidates.len()
        )));
    }
    let even_part = |p: &IntPoly| std::cmp::min(p.coeffs().to_vec(), p.reflect().coeffs().to_vec());
    let mut pool: BTreeMap<Vec<num_bigint::BigInt>, Vec<ChargedSignedGraph>> = BTreeMap::new();
    for g in candidates {
        pool.entry(even_part(&reciprocal(&g))).or_default().push(g);
    }
    let mut out = Vec::new();
    for name in names {
        let want = expected_poly(name, &[])
            .ok_or_else(|| Error::Verification(format!("no tabulated polynomial for {name}")))?
            .reciprocal;
        let bucket = pool
            .get_mut(&even_part(&want))
            .filter(|b| !b.is_empty())
            .ok_or_else(|| Error::Verification(format!("no candidate left for {name}")))?;
        let g = bucket.remove(0);
        out.push((name.to_string(), orient(name, &g)?));
    }
    Ok(out)
}

fn equivalent_to_any(g: &ChargedSignedGraph, others: &[ChargedSignedGraph]) -> bool {
    others.iter().any(|h| crate::graph::equivalent(g, h, false))
}

/// S7, S8, S8': maximal charged classes on 7 and 8 vertices outside the
/// tessellation families.
pub fn reconstruct_sporadic_charged(jobs: Jobs) -> Result<Vec<(String, ChargedSignedGraph)>> {
    let mode = Mode::closed(true);
    let s7: Vec<_> = maximal_at(7, mode, jobs)?;
    let families = [build_t(4)?, build_c(4, true)?, build_c(4, false)?];
    let s8: Vec<_> = maximal_at(8, mode, jobs)?
        .into_iter()
        .filter(|g| !equivalent_to_any(g, &families))
        .collect();
    if s7.len() != 1 || s8.len() != 2 {
        return Err(Error::Verification(format!(
            "expected 1 and 2 sporadic charged classes, found {} and {}",
            s7.len(),
            s8.len()
        )));
    }
    let mut out = vec![("S7".to_string(), orient("S7", &s7[0])?)];
    for (name, g) in ["S8", "S8'"].into_iter().zip(s8) {
        out.push((name.to_string(), orient(name, &g)?));
    }
    Ok(out)
}

pub const U_NAMES: [&str; 11] = ["U1", "U2", "U3", "U4", "U5", "U6", "U7", "U8", "U9", "U10", "U11"];
pub const V_NAMES: [&str; 8] = ["V1", "V2", "V3", "V4", "V5", "V6", "V7", "V8"];

/// U1..U11: maximal open-interval signed graphs on 8 vertices other than O8.
pub fn reconstruct_u(jobs: Jobs) -> Result<Vec<(String, ChargedSignedGraph)>> {
    let o8 = build_o(4)?;
    let candidates: Vec<_> = maximal_at(8, Mode::open(false), jobs)?
        .into_iter()
        .filter(|g| !crate::graph::equivalent(g, &o8, false))
        .collect();
    assign(&U_NAMES, candidates)
}

/// V1..V8: maximal open-interval charged graphs on 4 vertices other than
/// the charged path.
pub fn reconstruct_v(jobs: Jobs) -> Result<Vec<(String, ChargedSignedGraph)>> {
    let p4 = build_p_pm(4)?;
    let candidates: Vec<_> = maximal_at(4, Mode::open(true), jobs)?
        .into_iter()
        .filter(|g| g.has_charges() && !crate::graph::equivalent(g, &p4, false))
        .collect();
    assign(&V_NAMES, candidates)
}

pub fn reconstruct_all(jobs: Jobs) -> Result<Vec<(String, ChargedSignedGraph)>> {
    let mut out = reconstruct_sporadic_charged(jobs)?;
    out.extend(reconstruct_u(jobs)?);
    out.extend(reconstruct_v(jobs)?);
    Ok(out)
}
