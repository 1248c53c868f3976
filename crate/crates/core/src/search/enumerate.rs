use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::extend::{admitted_columns, Mode};
use crate::error::{Error, Result};
use crate::graph::{CanonicalForm, ChargedSignedGraph};
use crate::par::{self, Jobs};
use crate::spectral::ExtensionOracle;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerateOptions {
    pub max_n: usize,
    pub mode: Mode,
    pub maximal_only: bool,
    #[serde(skip)]
    pub jobs: Jobs,
}

impl EnumerateOptions {
    pub fn new(max_n: usize, mode: Mode) -> Self {
        EnumerateOptions {
            max_n,
            mode,
            maximal_only: false,
            jobs: Jobs::default(),
        }
    }

    pub fn maximal_only(mut self, yes: bool) -> Self {
        self.maximal_only = yes;
        self
    }

    pub fn jobs(mut self, jobs: Jobs) -> Self {
        self.jobs = jobs;
        self
    }
}

/// One enumerated class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRecord {
    pub key: CanonicalForm,
    pub graph: ChargedSignedGraph,
    pub maximal: bool,
    /// Keys of the one-vertex extensions (empty beyond `max_n - 1`).
    #[serde(skip)]
    pub children: Vec<CanonicalForm>,
}

struct Expanded {
    maximal: bool,
    children: Vec<(CanonicalForm, ChargedSignedGraph)>,
}

fn expand(g: &ChargedSignedGraph, mode: Mode, keep_children: bool) -> Result<Expanded> {
    let oracle = ExtensionOracle::new(g, mode.open)
        .ok_or_else(|| Error::Verification("enumerated graph fails the spectral test".into()))?;
    let columns = admitted_columns(g, &oracle, mode);
    let maximal = columns.is_empty();
    let mut children: BTreeMap<CanonicalForm, ChargedSignedGraph> = BTreeMap::new();
    if keep_children {
        for (c, edges) in columns {
            let h = g.with_vertex(c, &edges);
            children.entry(mode.key(&h)).or_insert(h);
        }
    }
    Ok(Expanded {
        maximal,
        children: children.into_iter().collect(),
    })
}

fn seeds(mode: Mode) -> BTreeMap<CanonicalForm, ChargedSignedGraph> {
    let mut level = BTreeMap::new();
    for &c in mode.charges() {
        let g = ChargedSignedGraph::from_edges(1, &[c], &[]).expect("valid charge");
        level.entry(mode.key(&g)).or_insert(g);
    }
    level
}

/// Visits every connected class with at most `max_n` vertices, one level
/// at a time in canonical order. Each class is reached as a one-vertex
/// extension of a smaller connected class (some non-cut vertex can always
/// be removed) and kept once per canonical key.
pub fn enumerate_levels(
    opts: &EnumerateOptions,
    mut visit: impl FnMut(usize, &[ClassRecord]) -> Result<()>,
) -> Result<()> {
    if opts.max_n == 0 {
        return Err(Error::InvalidParameter("max_n must be at least 1".into()));
    }
    let mode = opts.mode;
    let mut level = seeds(mode);
    for n in 1..=opts.max_n {
        let items: Vec<(CanonicalForm, ChargedSignedGraph)> = std::mem::take(&mut level).into_iter().collect();
        let keep_children = n < opts.max_n;
        let expanded = par::map(opts.jobs, &items, |(_, g)| expand(g, mode, keep_children));
        let mut records = Vec::with_capacity(items.len());
        for ((key, graph), ex) in items.into_iter().zip(expanded) {
            let ex = ex?;
            let mut children = Vec::with_capacity(ex.children.len());
            for (k, h) in ex.children {
                children.push(k.clone());
                level.entry(k).or_insert(h);
            }
            records.push(ClassRecord {
                key,
                graph,
                maximal: ex.maximal,
                children,
            });
        }
        visit(n, &records)?;
    }
    Ok(())
}

/// All connected classes with at most `max_n` vertices, by size and then in
/// canonical order; optionally only the maximal ones.
pub fn enumerate_cyclotomic(opts: &EnumerateOptions) -> Result<Vec<ChargedSignedGraph>> {
    let mut out = Vec::new();
    enumerate_levels(opts, |_, records| {
        out.extend(
            records
                .iter()
                .filter(|r| r.maximal || !opts.maximal_only)
                .map(|r| r.graph.clone()),
        );
        Ok(())
    })?;
    Ok(out)
}

/// Class counts per vertex count.
pub fn census(opts: &EnumerateOptions) -> Result<Vec<(usize, usize, usize)>> {
    let mut out = Vec::new();
    enumerate_levels(opts, |n, records| {
        out.push((n, records.len(), records.iter().filter(|r| r.maximal).count()));
        Ok(())
    })?;
    Ok(out)
}
