use serde::{Deserialize, Serialize};

use super::{ChargedSignedGraph, EquivalenceWitness};

/// An induced copy of a pattern inside a host.
///
/// `subset[i]` is the host vertex playing pattern vertex `i`; the witness maps
/// the pattern onto `host.induced_subgraph(&subset)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    pub subset: Vec<usize>,
    pub witness: EquivalenceWitness,
}

/// Finds an induced subgraph of `host` weakly equivalent to `pattern`.
pub fn contains_up_to_equivalence(host: &ChargedSignedGraph, pattern: &ChargedSignedGraph) -> Option<Embedding> {
    let k = pattern.n();
    if k > host.n() {
        return None;
    }
    let order = bfs_order(pattern);
    // Earlier neighbour in `order` used to fix the switching sign of each
    // vertex, indexed by pattern vertex.
    let mut anchor: Vec<Option<usize>> = vec![None; k];
    for (i, &p) in order.iter().enumerate() {
        anchor[p] = order[..i].iter().copied().find(|&q| pattern.edge(p, q) != 0);
    }
    for eps in [1i8, -1] {
        let mut m = Matcher {
            host,
            pattern,
            order: &order,
            anchor: &anchor,
            eps,
            image: vec![usize::MAX; k],
            sigma: vec![0; k],
            used: vec![false; host.n()],
        };
        if m.extend(0) {
            let witness = EquivalenceWitness {
                perm: (0..k).collect(),
                signs: m.sigma.clone(),
                negate: eps < 0,
            };
            debug_assert_eq!(
                pattern.apply(&witness),
                host.induced_subgraph(&m.image).expect("valid image")
            );
            return Some(Embedding {
                subset: m.image,
                witness,
            });
        }
    }
    None
}

fn bfs_order(g: &ChargedSignedGraph) -> Vec<usize> {
    let mut order = Vec::with_capacity(g.n());
    let mut seen = vec![false; g.n()];
    for root in 0..g.n() {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut head = order.len();
        order.push(root);
        while head < order.len() {
            let v = order[head];
            head += 1;
            for w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
        }
    }
    order
}

struct Matcher<'a> {
    host: &'a ChargedSignedGraph,
    pattern: &'a ChargedSignedGraph,
    order: &'a [usize],
    anchor: &'a [Option<usize>],
    eps: i8,
    image: Vec<usize>,
    sigma: Vec<i8>,
    used: Vec<bool>,
}

impl Matcher<'_> {
    fn extend(&mut self, i: usize) -> bool {
        if i == self.order.len() {
            return true;
        }
        let p = self.order[i];
        let candidates: Vec<usize> = match self.anchor[p] {
            Some(q) => self.host.neighbors(self.image[q]).collect(),
            None => (0..self.host.n()).collect(),
        };
        let need_degree = self.pattern.degree(p);
        for h in candidates {
            if self.used[h]
                || self.host.charge(h) != self.eps * self.pattern.charge(p)
                || self.host.degree(h) < need_degree
            {
                continue;
            }
            let sigma = match self.anchor[p] {
                Some(q) => self.host.edge(h, self.image[q]) * self.eps * self.sigma[q] * self.pattern.edge(p, q),
                None => 1,
            };
            let consistent = self.order[..i].iter().all(|&q| {
                self.host.edge(h, self.image[q]) == self.eps * sigma * self.sigma[q] * self.pattern.edge(p, q)
            });
            if !consistent {
                continue;
            }
            self.image[p] = h;
            self.sigma[p] = sigma;
            self.used[h] = true;
            if self.extend(i + 1) {
                return true;
            }
            self.used[h] = false;
        }
        self.image[p] = usize::MAX;
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_not_in_path() {
        let p3 = ChargedSignedGraph::signed(3, &[(0, 1, 1), (1, 2, 1)]);
        let tri = ChargedSignedGraph::signed(3, &[(0, 1, 1), (1, 2, 1), (0, 2, 1)]);
        assert!(contains_up_to_equivalence(&p3, &tri).is_none());
        assert!(contains_up_to_equivalence(&tri, &p3).is_none());
    }

    #[test]
    fn charged_pattern_matches_up_to_negation() {
        let host = ChargedSignedGraph::from_edges(3, &[0, -1, 0], &[(0, 1, 1), (1, 2, -1)]).unwrap();
        let pattern = ChargedSignedGraph::from_edges(2, &[1, 0], &[(0, 1, 1)]).unwrap();
        let e = contains_up_to_equivalence(&host, &pattern).unwrap();
        assert!(e.witness.negate);
        assert_eq!(pattern.apply(&e.witness), host.induced_subgraph(&e.subset).unwrap());
    }

    #[test]
    fn pattern_visited_out_of_index_order() {
        let host = ChargedSignedGraph::signed(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1)]);
        let pattern = ChargedSignedGraph::signed(3, &[(0, 2, 1), (1, 2, -1)]);
        let e = contains_up_to_equivalence(&host, &pattern).unwrap();
        assert_eq!(pattern.apply(&e.witness), host.induced_subgraph(&e.subset).unwrap());
    }

    #[test]
    fn empty_pattern_always_found() {
        let host = ChargedSignedGraph::empty(2);
        let e = contains_up_to_equivalence(&host, &ChargedSignedGraph::empty(0)).unwrap();
        assert!(e.subset.is_empty());
    }
}
