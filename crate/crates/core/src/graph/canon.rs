//! Canonical labeling of looped simple graphs by individualization and
//! refinement, and enumeration of graphs up to isomorphism.

use std::collections::HashSet;

use super::LoopedSimpleGraph;
use crate::canon::positional_ground;
use crate::error::{Error, Result};
use crate::subset::{GroundSet, Subset};
use crate::system::map_subset;

/// Largest graph accepted for canonical labeling.
pub const GRAPH_CANON_MAX: usize = 12;

/// Isomorphism-class key: loops mask and adjacency rows under the
/// canonical labeling.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GraphKey {
    loops: u32,
    rows: Vec<u32>,
}

impl GraphKey {
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    /// The canonical representative, labeled `a, b, c, ...`.
    pub fn to_graph(&self) -> LoopedSimpleGraph {
        LoopedSimpleGraph::from_parts(positional_ground(self.size()), self.rows.clone(), Subset(self.loops))
    }
}

type Partition = Vec<Vec<usize>>;

pub(super) fn graph_key(g: &LoopedSimpleGraph) -> Result<GraphKey> {
    let n = g.size();
    if n > GRAPH_CANON_MAX {
        return Err(Error::TooLarge {
            what: "graph canonical labeling",
            size: n,
            max: GRAPH_CANON_MAX,
        });
    }
    let mut root: Partition = if n == 0 { vec![] } else { vec![(0..n).collect()] };
    refine(&mut root, g);
    let mut best = None;
    search(&root, g, &mut best);
    Ok(best.expect("search reaches a leaf"))
}

fn refine(p: &mut Partition, g: &LoopedSimpleGraph) {
    loop {
        let masks: Vec<u32> = p.iter().map(|c| c.iter().fold(0, |m, &i| m | 1 << i)).collect();
        let mut changed = false;
        let mut next: Partition = Vec::with_capacity(p.len());
        for cell in p.iter() {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> = cell
                .iter()
                .map(|&v| {
                    let mut sig = vec![g.has_loop(v) as u32];
                    sig.extend(masks.iter().map(|m| (g.adjacency()[v] & m).count_ones()));
                    (sig, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            let mut groups = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                    start = i;
                    groups += 1;
                }
            }
            changed |= groups > 1;
        }
        *p = next;
        if !changed {
            return;
        }
    }
}

/// Swapping twins `u, w` is an automorphism.
fn twins(g: &LoopedSimpleGraph, u: usize, w: usize) -> bool {
    let adj = g.adjacency();
    g.has_loop(u) == g.has_loop(w) && adj[u] & !(1 << w) == adj[w] & !(1 << u)
}

fn search(p: &Partition, g: &LoopedSimpleGraph, best: &mut Option<GraphKey>) {
    let Some(ci) = p.iter().position(|c| c.len() > 1) else {
        let mut perm = vec![0usize; p.len()];
        for (pos, cell) in p.iter().enumerate() {
            perm[cell[0]] = pos;
        }
        let mut rows = vec![0u32; p.len()];
        for (v, &pv) in perm.iter().enumerate() {
            rows[pv] = map_subset(Subset(g.adjacency()[v]), &perm).0;
        }
        let key = GraphKey {
            loops: map_subset(g.loops(), &perm).0,
            rows,
        };
        if best.as_ref().is_none_or(|b| key < *b) {
            *best = Some(key);
        }
        return;
    };
    let cell = &p[ci];
    let mut tried: Vec<usize> = Vec::new();
    for &u in cell {
        if tried.iter().any(|&w| twins(g, u, w)) {
            continue;
        }
        tried.push(u);
        let mut child: Partition = Vec::with_capacity(p.len() + 1);
        child.extend_from_slice(&p[..ci]);
        child.push(vec![u]);
        child.push(cell.iter().copied().filter(|&x| x != u).collect());
        child.extend_from_slice(&p[ci + 1..]);
        refine(&mut child, g);
        search(&child, g, best);
    }
}

/// All loopless graphs on `n` vertices up to isomorphism, as canonical
/// forms in key order.
pub fn all_graphs(n: usize) -> Result<Vec<LoopedSimpleGraph>> {
    if n > 8 {
        return Err(Error::TooLarge {
            what: "graph enumeration",
            size: n,
            max: 8,
        });
    }
    let mut level: Vec<GraphKey> = vec![LoopedSimpleGraph::empty(GroundSet::positional(0)).canonical_key()?];
    for k in 1..=n {
        let mut seen: HashSet<GraphKey> = HashSet::new();
        for key in &level {
            for nb in 0..1u32 << (k - 1) {
                seen.insert(graph_key(&extend(&key.to_graph(), Subset(nb)))?);
            }
        }
        level = seen.into_iter().collect();
        level.sort();
    }
    Ok(level.iter().map(GraphKey::to_graph).collect())
}

/// Adds a new last vertex adjacent to `nb`.
pub(crate) fn extend(g: &LoopedSimpleGraph, nb: Subset) -> LoopedSimpleGraph {
    let k = g.size();
    let mut adj: Vec<u32> = g.adjacency().to_vec();
    for v in nb.iter() {
        adj[v] |= 1 << k;
    }
    adj.push(nb.0);
    LoopedSimpleGraph::from_parts(positional_ground(k + 1), adj, g.loops())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::all_permutations;
    use crate::graph::tests::arb_graph;
    use proptest::prelude::*;

    /// Least key over every relabeling.
    fn brute_key(g: &LoopedSimpleGraph) -> GraphKey {
        all_permutations(g.size())
            .iter()
            .map(|perm| {
                let h = g.permuted(perm);
                GraphKey {
                    loops: h.loops().0,
                    rows: h.adjacency().to_vec(),
                }
            })
            .min()
            .unwrap()
    }

    #[test]
    fn graph_counts() {
        let counts: Vec<usize> = (0..=6).map(|n| all_graphs(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156]);
        let connected: Vec<usize> = (1..=6)
            .map(|n| all_graphs(n).unwrap().iter().filter(|g| g.is_connected()).count())
            .collect();
        assert_eq!(connected, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn keys_constant_on_isomorphism_classes() {
        for n in 0..=5 {
            for g in all_graphs(n).unwrap() {
                let k = graph_key(&g).unwrap();
                for perm in all_permutations(n) {
                    assert_eq!(graph_key(&g.permuted(&perm)).unwrap(), k, "{g}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn key_is_relabeling_invariant(g in arb_graph(0, 9, true), seed in any::<u64>()) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut perm: Vec<usize> = (0..g.size()).collect();
            perm.shuffle(&mut rng);
            prop_assert_eq!(graph_key(&g).unwrap(), graph_key(&g.permuted(&perm)).unwrap());
        }

        #[test]
        fn refined_classes_match_brute_force(a in arb_graph(6, 6, true), b in arb_graph(6, 6, true)) {
            prop_assert_eq!(graph_key(&a).unwrap() == graph_key(&b).unwrap(), brute_key(&a) == brute_key(&b));
        }
    }
}
