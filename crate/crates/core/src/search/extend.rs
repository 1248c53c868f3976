use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{canonical_form, weak_canonical_form, CanonicalForm, ChargedSignedGraph};
use crate::spectral::ExtensionOracle;

/// Which graphs a search ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Mode {
    /// New vertices may carry charge ±1.
    pub charged: bool,
    /// Every edge has sign +1. Classes are then taken up to strong
    /// equivalence, since global negation does not preserve the class.
    pub unsigned_only: bool,
    /// Eigenvalues in the open interval (-2, 2) instead of [-2, 2].
    pub open: bool,
}

impl Mode {
    pub fn closed(charged: bool) -> Mode {
        Mode {
            charged,
            ..Mode::default()
        }
    }

    pub fn open(charged: bool) -> Mode {
        Mode {
            charged,
            open: true,
            ..Mode::default()
        }
    }

    pub fn with_open(mut self, open: bool) -> Mode {
        self.open = open;
        self
    }

    pub fn with_charges(mut self, charged: bool) -> Mode {
        self.charged = charged;
        self
    }

    pub fn with_unsigned(mut self, unsigned_only: bool) -> Mode {
        self.unsigned_only = unsigned_only;
        self
    }

    /// Canonical key of the class of `g` within this mode.
    pub fn key(&self, g: &ChargedSignedGraph) -> CanonicalForm {
        if self.unsigned_only {
            canonical_form(g)
        } else {
            weak_canonical_form(g).form
        }
    }

    pub(crate) fn charges(&self) -> &'static [i8] {
        if self.charged {
            &[0, 1, -1]
        } else {
            &[0]
        }
    }

    /// Bound on `charge^2 + degree`: the diagonal of `A^2` is at most the
    /// largest eigenvalue of `A^2`.
    fn row_limit(&self) -> usize {
        if self.open {
            3
        } else {
            4
        }
    }

    /// Whether `g` belongs to the family this mode ranges over.
    pub fn admits_graph(&self, g: &ChargedSignedGraph) -> bool {
        (self.charged || !g.has_charges()) && (!self.unsigned_only || g.is_unsigned())
    }
}

/// A new vertex: its charge and its signed edges to existing vertices.
pub type Column = (i8, Vec<(usize, i8)>);

fn check_base(g: &ChargedSignedGraph, mode: Mode) -> Result<ExtensionOracle> {
    if g.n() == 0 || !g.is_connected() {
        return Err(Error::Precondition("graph must be nonempty and connected".into()));
    }
    if !mode.admits_graph(g) {
        return Err(Error::Precondition("graph lies outside the search mode".into()));
    }
    ExtensionOracle::new(g, mode.open).ok_or_else(|| {
        let what = if mode.open { "open-cyclotomic" } else { "cyclotomic" };
        Error::Precondition(format!("graph is not {what}"))
    })
}

/// Every new vertex that keeps `g` connected and passing the test, before
/// any deduplication. Switching the new vertex makes its first edge +1.
pub(crate) fn admitted_columns(g: &ChargedSignedGraph, oracle: &ExtensionOracle, mode: Mode) -> Vec<Column> {
    let limit = mode.row_limit();
    let avail: Vec<usize> = (0..g.n())
        .filter(|&v| g.charge(v).unsigned_abs() as usize + g.degree(v) < limit)
        .collect();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    for &c in mode.charges() {
        let max_edges = limit - c.unsigned_abs() as usize;
        columns_from(&avail, 0, max_edges, c, mode, oracle, &mut cur, &mut out);
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn columns_from(
    avail: &[usize],
    start: usize,
    max_edges: usize,
    charge: i8,
    mode: Mode,
    oracle: &ExtensionOracle,
    cur: &mut Vec<(usize, i8)>,
    out: &mut Vec<Column>,
) {
    for i in start..avail.len() {
        let signs: &[i8] = if mode.unsigned_only || cur.is_empty() {
            &[1]
        } else {
            &[1, -1]
        };
        for &s in signs {
            cur.push((avail[i], s));
            if oracle.admits(charge, cur) {
                out.push((charge, cur.clone()));
            }
            if cur.len() < max_edges {
                columns_from(avail, i + 1, max_edges, charge, mode, oracle, cur, out);
            }
            cur.pop();
        }
    }
}

/// One-vertex extensions of `g` keyed by class, first representative kept.
pub(crate) fn keyed_extensions(
    g: &ChargedSignedGraph,
    oracle: &ExtensionOracle,
    mode: Mode,
) -> BTreeMap<CanonicalForm, ChargedSignedGraph> {
    let mut out = BTreeMap::new();
    for (c, edges) in admitted_columns(g, oracle, mode) {
        let h = g.with_vertex(c, &edges);
        out.entry(mode.key(&h)).or_insert(h);
    }
    out
}

/// All connected one-vertex extensions of `g` that keep it cyclotomic (or
/// open-cyclotomic), one per equivalence class, in canonical order. The
/// original vertices keep their indices.
pub fn extensions(g: &ChargedSignedGraph, allow_charges: bool, open: bool) -> Result<Vec<ChargedSignedGraph>> {
    let mode = Mode {
        charged: allow_charges,
        unsigned_only: false,
        open,
    };
    extensions_in(g, mode)
}

pub fn extensions_in(g: &ChargedSignedGraph, mode: Mode) -> Result<Vec<ChargedSignedGraph>> {
    let oracle = check_base(g, mode)?;
    Ok(keyed_extensions(g, &oracle, mode).into_values().collect())
}

/// No connected one-vertex extension (charges allowed) passes the test.
pub fn is_maximal(g: &ChargedSignedGraph, open: bool) -> Result<bool> {
    is_maximal_in(g, Mode::closed(true).with_open(open))
}

pub fn is_maximal_in(g: &ChargedSignedGraph, mode: Mode) -> Result<bool> {
    let oracle = check_base(g, mode)?;
    Ok(admitted_columns(g, &oracle, mode).is_empty())
}

pub const DEFAULT_CAP: usize = 32;

/// Outcome of [`grow_to_maximal`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Growth {
    /// Maximal graphs containing the input, one per class.
    pub hosts: Vec<ChargedSignedGraph>,
    /// Graphs at the vertex cap that could still be extended.
    pub capped: Vec<ChargedSignedGraph>,
    /// Number of classes visited.
    pub explored: usize,
}

impl Growth {
    pub fn reached_cap(&self) -> bool {
        !self.capped.is_empty()
    }
}

/// Breadth-first closure of `g` under one-vertex extension within `mode`,
/// stopping at maximal graphs and at `cap` vertices.
pub fn grow_to_maximal(g: &ChargedSignedGraph, mode: Mode, cap: usize) -> Result<Growth> {
    check_base(g, mode)?;
    let mut hosts = BTreeMap::new();
    let mut capped = BTreeMap::new();
    let mut explored = 0;
    let mut level = BTreeMap::from([(mode.key(g), g.clone())]);
    while !level.is_empty() {
        let mut next = BTreeMap::new();
        for (key, h) in level {
            explored += 1;
            let oracle = check_base(&h, mode)?;
            let ext = keyed_extensions(&h, &oracle, mode);
            if ext.is_empty() {
                hosts.insert(key, h);
            } else if h.n() >= cap {
                capped.insert(key, h);
            } else {
                for (k, e) in ext {
                    next.entry(k).or_insert(e);
                }
            }
        }
        level = next;
    }
    Ok(Growth {
        hosts: hosts.into_values().collect(),
        capped: capped.into_values().collect(),
        explored,
    })
}

/// Depth-first search for a single maximal host, trying extensions whose
/// new vertex has the most edges first. Returns `None` when every branch
/// reaches `cap` vertices without becoming maximal.
pub fn grow_greedy(g: &ChargedSignedGraph, mode: Mode, cap: usize) -> Result<Option<ChargedSignedGraph>> {
    check_base(g, mode)?;
    let mut dead = BTreeSet::new();
    greedy_from(g.clone(), mode, cap, &mut dead)
}

fn greedy_from(
    g: ChargedSignedGraph,
    mode: Mode,
    cap: usize,
    dead: &mut BTreeSet<CanonicalForm>,
) -> Result<Option<ChargedSignedGraph>> {
    let oracle = check_base(&g, mode)?;
    let columns = admitted_columns(&g, &oracle, mode);
    if columns.is_empty() {
        return Ok(Some(g));
    }
    if g.n() >= cap {
        return Ok(None);
    }
    let mut order: Vec<(usize, CanonicalForm, ChargedSignedGraph)> = Vec::new();
    let mut seen = BTreeSet::new();
    for (c, edges) in columns {
        let h = g.with_vertex(c, &edges);
        let key = mode.key(&h);
        if seen.insert(key.clone()) && !dead.contains(&key) {
            order.push((usize::MAX - edges.len() - c.unsigned_abs() as usize, key, h));
        }
    }
    order.sort();
    for (_, key, h) in order {
        if let Some(host) = greedy_from(h, mode, cap, dead)? {
            return Ok(Some(host));
        }
        dead.insert(key);
    }
    Ok(None)
}

/// True iff no three vertices are pairwise adjacent.
pub fn triangle_free(g: &ChargedSignedGraph) -> bool {
    g.is_triangle_free()
}
