use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::{ChargedSignedGraph, EquivalenceWitness};

/// Total-order key identifying a strong equivalence class.
///
/// Layout: `[n, c, block_1, ..., block_c]` where `c` is the number of
/// components and each block is `[m, charges..., upper triangle row-major]`
/// for one component in its canonical vertex order. Blocks are sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalForm(pub Vec<i32>);

impl CanonicalForm {
    pub fn code(&self) -> &[i32] {
        &self.0
    }

    /// Rebuilds the canonical representative from the code.
    pub fn to_graph(&self) -> ChargedSignedGraph {
        let code = &self.0;
        let n = code[0] as usize;
        let mut g = ChargedSignedGraph::empty(n);
        let mut at = 2;
        let mut offset = 0;
        for _ in 0..code[1] {
            let m = code[at] as usize;
            at += 1;
            for i in 0..m {
                g.charges[offset + i] = code[at + i] as i8;
            }
            at += m;
            for i in 0..m {
                for j in i + 1..m {
                    let s = code[at] as i8;
                    at += 1;
                    g.edges[(offset + i) * n + offset + j] = s;
                    g.edges[(offset + j) * n + offset + i] = s;
                }
            }
            offset += m;
        }
        g
    }
}

/// A canonical form together with the witness mapping the input onto the
/// canonical representative.
#[derive(Debug, Clone)]
pub struct CanonicalLabeling {
    pub form: CanonicalForm,
    pub witness: EquivalenceWitness,
}

pub fn canonical_form(g: &ChargedSignedGraph) -> CanonicalForm {
    canonical_labeling(g).form
}

/// Canonical form up to switching and relabeling, with the labeling witness.
pub fn canonical_labeling(g: &ChargedSignedGraph) -> CanonicalLabeling {
    let n = g.n();
    let comps = g.components();
    let mut blocks: Vec<(Vec<i32>, Vec<usize>, Vec<i8>)> = comps
        .iter()
        .map(|comp| {
            let sub = g.induced_subgraph(comp).expect("component indices are valid");
            let (order, signs) = canonical_order(&sub);
            let code = block_code(&sub, &order, &signs);
            let verts = order.iter().map(|&p| comp[p]).collect();
            (code, verts, signs)
        })
        .collect();
    blocks.sort_by(|a, b| a.0.cmp(&b.0));

    let mut code = vec![n as i32, blocks.len() as i32];
    let mut perm = vec![0; n];
    let mut signs = vec![1i8; n];
    let mut pos = 0;
    for (block, verts, s) in &blocks {
        code.extend_from_slice(block);
        for (k, &v) in verts.iter().enumerate() {
            perm[v] = pos + k;
            signs[v] = s[k];
        }
        pos += verts.len();
    }
    CanonicalLabeling {
        form: CanonicalForm(code),
        witness: EquivalenceWitness {
            perm,
            signs,
            negate: false,
        },
    }
}

/// `min(canon(g), canon(-g))`, with the witness onto that representative.
pub fn weak_canonical_form(g: &ChargedSignedGraph) -> CanonicalLabeling {
    let plain = canonical_labeling(g);
    let neg = canonical_labeling(&g.negated());
    if neg.form < plain.form {
        let mut witness = neg.witness;
        witness.negate = true;
        CanonicalLabeling {
            form: neg.form,
            witness,
        }
    } else {
        plain
    }
}

/// Returns a witness mapping `g` onto `h` when they are equivalent.
pub fn are_equivalent(g: &ChargedSignedGraph, h: &ChargedSignedGraph, strong: bool) -> Option<EquivalenceWitness> {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return None;
    }
    let lg = canonical_labeling(g);
    let lh = canonical_labeling(h);
    let witness = if lg.form == lh.form {
        lg.witness.then(&lh.witness.inverse())
    } else if !strong {
        let ln = canonical_labeling(&h.negated());
        if lg.form != ln.form {
            return None;
        }
        let mut w = lg.witness.then(&ln.witness.inverse());
        w.negate = true;
        w
    } else {
        return None;
    };
    debug_assert!(witness.verify(g, h));
    Some(witness)
}

/// `[m, charges..., upper triangle]` for a connected graph in the given order.
fn block_code(g: &ChargedSignedGraph, order: &[usize], signs: &[i8]) -> Vec<i32> {
    let m = order.len();
    let mut code = Vec::with_capacity(1 + m + m * (m - 1) / 2);
    code.push(m as i32);
    code.extend(order.iter().map(|&v| g.charge(v) as i32));
    for i in 0..m {
        for j in i + 1..m {
            let s = g.edge(order[i], order[j]) * signs[i] * signs[j];
            code.push(s as i32);
        }
    }
    code
}

/// A vertex colour with the sorted colours and entries around it.
type RefineKey = (u32, Vec<(u32, i8, i32)>);

/// Switching-invariant vertex colours by iterated refinement.
fn refine_colours(g: &ChargedSignedGraph) -> Vec<u32> {
    let n = g.n();
    let d = g.dense();
    let sq = g.adjacency_squared();
    let initial: Vec<(i8, usize, usize, usize)> = (0..n)
        .map(|v| {
            let (mut pos, mut neg) = (0, 0);
            for u in 0..n {
                if u == v || d[v * n + u] == 0 {
                    continue;
                }
                for w in u + 1..n {
                    if w == v || d[v * n + w] == 0 || d[u * n + w] == 0 {
                        continue;
                    }
                    if d[v * n + u] * d[u * n + w] * d[w * n + v] > 0 {
                        pos += 1;
                    } else {
                        neg += 1;
                    }
                }
            }
            (1 - g.charge(v), g.degree(v), pos, neg)
        })
        .collect();
    let mut colour = rank(&initial);
    let mut classes = count_classes(&colour);
    loop {
        let keys: Vec<RefineKey> = (0..n)
            .map(|v| {
                let mut around: Vec<(u32, i8, i32)> = (0..n)
                    .filter(|&u| u != v && (d[v * n + u] != 0 || sq[v * n + u] != 0))
                    .map(|u| (colour[u], d[v * n + u].abs(), sq[v * n + u].abs()))
                    .collect();
                around.sort_unstable();
                (colour[v], around)
            })
            .collect();
        let next = rank(&keys);
        let next_classes = count_classes(&next);
        colour = next;
        if next_classes == classes {
            return colour;
        }
        classes = next_classes;
    }
}

fn rank<K: Ord + Clone>(keys: &[K]) -> Vec<u32> {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(k).expect("key present") as u32)
        .collect()
}

fn count_classes(colour: &[u32]) -> usize {
    colour.iter().copied().max().map_or(0, |m| m as usize + 1)
}

const MAX_STORED_AUTOMORPHISMS: usize = 256;

/// Entry codes: `+1 -> 0`, `-1 -> 1`, `0 -> 2`.
fn entry_code(s: i8) -> u8 {
    match s {
        1 => 0,
        -1 => 1,
        _ => 2,
    }
}

type Word = (Vec<u8>, u32);

struct Search<'a> {
    n: usize,
    d: &'a [i8],
    colour: Vec<u32>,
    placed: Vec<bool>,
    order: Vec<usize>,
    sign: Vec<i8>,
    rows: Vec<Vec<u8>>,
    words: Vec<Word>,
    best_order: Vec<usize>,
    best_signs: Vec<i8>,
    best_words: Vec<Word>,
    have_best: bool,
    auts: Vec<Vec<usize>>,
}

const NO_JUMP: usize = usize::MAX;

impl Search<'_> {
    fn leaf(&mut self, cmp: Ordering) -> usize {
        if !self.have_best || cmp == Ordering::Less {
            self.best_order = self.order.clone();
            self.best_signs = self.order.iter().map(|&v| self.sign[v]).collect();
            self.best_words = self.words.clone();
            self.have_best = true;
            return NO_JUMP;
        }
        let mut gamma = vec![0; self.n];
        for (b, &c) in self.best_order.iter().zip(&self.order) {
            gamma[*b] = c;
        }
        let diverge = self
            .best_order
            .iter()
            .zip(&self.order)
            .position(|(a, b)| a != b)
            .unwrap_or(self.n);
        if diverge < self.n && self.auts.len() < MAX_STORED_AUTOMORPHISMS {
            self.auts.push(gamma);
        }
        diverge
    }

    fn recurse(&mut self, cmp: Ordering) -> usize {
        let k = self.order.len();
        if k == self.n {
            return self.leaf(cmp);
        }
        let mut min: Option<Word> = None;
        let mut candidates = Vec::new();
        for u in 0..self.n {
            if self.placed[u] {
                continue;
            }
            let word = (self.rows[u].clone(), self.colour[u]);
            match min.as_ref().map(|m| word.cmp(m)) {
                None | Some(Ordering::Less) => {
                    min = Some(word);
                    candidates.clear();
                    candidates.push(u);
                }
                Some(Ordering::Equal) => candidates.push(u),
                Some(Ordering::Greater) => {}
            }
        }
        let word = min.expect("an unplaced vertex exists");
        let mut child_cmp = cmp;
        if self.have_best && cmp == Ordering::Equal {
            match word.cmp(&self.best_words[k]) {
                Ordering::Greater => return NO_JUMP,
                Ordering::Less => child_cmp = Ordering::Less,
                Ordering::Equal => {}
            }
        }

        let mut explored: Vec<usize> = Vec::new();
        let mut orbits: Option<(usize, Vec<usize>)> = None;
        for &c in &candidates {
            if !explored.is_empty() && !self.auts.is_empty() {
                let stale = orbits.as_ref().is_none_or(|(seen, _)| *seen != self.auts.len());
                if stale {
                    orbits = Some((self.auts.len(), self.orbit_partition()));
                }
                let parent = &orbits.as_ref().expect("just computed").1;
                let rc = find(parent, c);
                if explored.iter().any(|&e| find(parent, e) == rc) {
                    continue;
                }
            }
            explored.push(c);
            let undo = self.place(c, &word);
            let jump = self.recurse(child_cmp);
            self.unplace(c, undo);
            if jump != NO_JUMP && jump < k {
                return jump;
            }
        }
        NO_JUMP
    }

    /// Union-find parents for the orbits of stored automorphisms that fix the
    /// current prefix pointwise.
    fn orbit_partition(&self) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        for gamma in &self.auts {
            if self.order.iter().any(|&p| gamma[p] != p) {
                continue;
            }
            for v in 0..self.n {
                let (a, b) = (find(&parent, v), find(&parent, gamma[v]));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        parent
    }

    fn place(&mut self, c: usize, word: &Word) -> Vec<usize> {
        let mut signed_now = Vec::new();
        if self.sign[c] == 0 {
            self.sign[c] = 1;
            signed_now.push(c);
        }
        self.placed[c] = true;
        self.order.push(c);
        self.words.push(word.clone());
        let sc = self.sign[c];
        for u in 0..self.n {
            if self.placed[u] {
                continue;
            }
            let a = self.d[u * self.n + c];
            let code = if a == 0 {
                2
            } else if self.sign[u] == 0 {
                self.sign[u] = sc * a;
                signed_now.push(u);
                0
            } else {
                entry_code(self.sign[u] * sc * a)
            };
            self.rows[u].push(code);
        }
        signed_now
    }

    fn unplace(&mut self, c: usize, signed_now: Vec<usize>) {
        self.placed[c] = false;
        self.order.pop();
        self.words.pop();
        for u in 0..self.n {
            if !self.placed[u] && u != c {
                self.rows[u].pop();
            }
        }
        for v in signed_now {
            self.sign[v] = 0;
        }
    }
}

fn find(parent: &[usize], mut v: usize) -> usize {
    while parent[v] != v {
        v = parent[v];
    }
    v
}

/// Canonical vertex order and switching signs for a connected graph.
fn canonical_order(g: &ChargedSignedGraph) -> (Vec<usize>, Vec<i8>) {
    let n = g.n();
    let dense = g.dense();
    let mut search = Search {
        n,
        d: &dense,
        colour: refine_colours(g),
        placed: vec![false; n],
        order: Vec::with_capacity(n),
        sign: vec![0; n],
        rows: vec![Vec::with_capacity(n); n],
        words: Vec::with_capacity(n),
        best_order: Vec::new(),
        best_signs: Vec::new(),
        best_words: Vec::new(),
        have_best: false,
        auts: Vec::new(),
    };
    search.recurse(Ordering::Equal);
    (search.best_order, search.best_signs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(signs: &[i8]) -> ChargedSignedGraph {
        let edges: Vec<_> = signs.iter().enumerate().map(|(i, &s)| (i, i + 1, s)).collect();
        ChargedSignedGraph::signed(signs.len() + 1, &edges)
    }

    #[test]
    fn forests_canonicalize_to_all_positive() {
        assert_eq!(canonical_form(&path(&[1, 1])), canonical_form(&path(&[-1, 1])));
        assert_eq!(
            canonical_form(&path(&[-1, -1, 1, -1])),
            canonical_form(&path(&[1, 1, 1, 1]))
        );
    }

    #[test]
    fn cycle_sign_products_are_distinguished() {
        let c4 = |s: i8| ChargedSignedGraph::signed(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, s)]);
        assert_ne!(canonical_form(&c4(1)), canonical_form(&c4(-1)));
        let switched = c4(-1).switch(2).unwrap().switch(0).unwrap();
        assert_eq!(canonical_form(&c4(-1)), canonical_form(&switched));
    }

    #[test]
    fn form_round_trips_to_equivalent_graph() {
        let g = ChargedSignedGraph::from_edges(
            5,
            &[0, 1, 0, -1, 0],
            &[(0, 1, -1), (1, 2, 1), (2, 3, -1), (3, 0, 1), (0, 4, 1)],
        )
        .unwrap();
        let lab = canonical_labeling(&g);
        assert_eq!(g.apply(&lab.witness), lab.form.to_graph());
        assert_eq!(canonical_form(&lab.form.to_graph()), lab.form);
    }

    #[test]
    fn negation_is_weak_not_strong() {
        let one = ChargedSignedGraph::from_edges(1, &[1], &[]).unwrap();
        let minus = ChargedSignedGraph::from_edges(1, &[-1], &[]).unwrap();
        assert!(are_equivalent(&one, &minus, true).is_none());
        let w = are_equivalent(&one, &minus, false).unwrap();
        assert!(w.negate);
        assert_eq!(weak_canonical_form(&one).form, weak_canonical_form(&minus).form);
    }

    #[test]
    fn switch_witness_has_identity_permutation_up_to_automorphism() {
        let g = ChargedSignedGraph::from_edges(3, &[1, 0, 0], &[(0, 1, 1), (1, 2, 1)]).unwrap();
        let h = g.switch(1).unwrap();
        let w = are_equivalent(&g, &h, true).unwrap();
        assert!(w.verify(&g, &h));
        assert_eq!(w.perm, vec![0, 1, 2]);
        assert_eq!(w.signs[1] * w.signs[0], -1);
    }

    #[test]
    fn disconnected_graphs_sort_components() {
        let a = ChargedSignedGraph::signed(5, &[(0, 1, 1), (2, 3, 1), (3, 4, -1)]);
        let b = ChargedSignedGraph::signed(5, &[(0, 1, 1), (1, 2, 1), (3, 4, -1)]);
        assert_eq!(canonical_form(&a), canonical_form(&b));
        assert!(are_equivalent(&a, &b, true).unwrap().verify(&a, &b));
        assert_eq!(canonical_form(&ChargedSignedGraph::empty(0)).0, vec![0, 0]);
    }
}
