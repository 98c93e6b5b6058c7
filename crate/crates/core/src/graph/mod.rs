//! Looped simple graphs, local complementation and vertex minors.

mod canon;
pub mod circle;
pub mod ribbon;

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf2::{delta_matroid_of_matrix, SymmetricBinaryMatrix};
use crate::subset::{GroundSet, Subset};
use crate::system::SetSystem;

pub use canon::{all_graphs, GraphKey, GRAPH_CANON_MAX};

/// Largest graph accepted by vertex-minor and circle-graph searches.
pub const SEARCH_MAX: usize = 9;

/// A graph with no parallel edges and at most one loop per vertex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LoopedSimpleGraph {
    vertices: Arc<GroundSet>,
    adj: Vec<u32>,
    loops: Subset,
}

impl LoopedSimpleGraph {
    /// Builds a graph from vertex-index pairs; a pair `(v, v)` is a loop.
    pub fn new(vertices: GroundSet, edges: &[(usize, usize)], loops: Subset) -> Result<LoopedSimpleGraph> {
        let n = vertices.len();
        let mut adj = vec![0u32; n];
        let mut loops = loops.check(n)?;
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::ElementOutOfRange { index: x, size: n });
                }
            }
            if u == v {
                loops = loops.with(u);
            } else {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
        }
        Ok(LoopedSimpleGraph {
            vertices: Arc::new(vertices),
            adj,
            loops,
        })
    }

    /// Builds a graph from adjacency rows, which must be symmetric with
    /// zero diagonal.
    pub fn from_adjacency(vertices: GroundSet, adj: Vec<u32>, loops: Subset) -> Result<LoopedSimpleGraph> {
        let n = vertices.len();
        if adj.len() != n {
            return Err(Error::Parse(format!("expected {n} adjacency rows, got {}", adj.len())));
        }
        loops.check(n)?;
        for (i, &r) in adj.iter().enumerate() {
            Subset(r).check(n)?;
            if r >> i & 1 == 1 {
                return Err(Error::Parse("adjacency diagonal must be zero; use loops".into()));
            }
            if Subset(r).iter().any(|j| adj[j] >> i & 1 == 0) {
                return Err(Error::NotSymmetric);
            }
        }
        Ok(LoopedSimpleGraph {
            vertices: Arc::new(vertices),
            adj,
            loops,
        })
    }

    pub(crate) fn from_parts(vertices: Arc<GroundSet>, adj: Vec<u32>, loops: Subset) -> LoopedSimpleGraph {
        LoopedSimpleGraph { vertices, adj, loops }
    }

    /// Edges given by vertex names, e.g. `&[("a", "b"), ("b", "c")]`.
    pub fn from_names(labels: &str, edges: &[(&str, &str)], loops: &[&str]) -> Result<LoopedSimpleGraph> {
        let g = GroundSet::new(labels.chars().map(String::from))?;
        let pairs = edges
            .iter()
            .map(|(u, v)| Ok((g.index_of(u)?, g.index_of(v)?)))
            .collect::<Result<Vec<_>>>()?;
        let l = g.subset_of(loops)?;
        LoopedSimpleGraph::new(g, &pairs, l)
    }

    pub fn empty(vertices: GroundSet) -> LoopedSimpleGraph {
        let n = vertices.len();
        LoopedSimpleGraph {
            vertices: Arc::new(vertices),
            adj: vec![0; n],
            loops: Subset::EMPTY,
        }
    }

    pub fn size(&self) -> usize {
        self.adj.len()
    }

    pub fn vertices(&self) -> &GroundSet {
        &self.vertices
    }

    pub fn vertex(&self, name: &str) -> Result<usize> {
        self.vertices.index_of(name)
    }

    pub fn adjacency(&self) -> &[u32] {
        &self.adj
    }

    pub fn neighbours(&self, v: usize) -> Subset {
        Subset(self.adj[v])
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn loops(&self) -> Subset {
        self.loops
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.loops.contains(v)
    }

    pub fn is_loopless(&self) -> bool {
        self.loops.is_empty()
    }

    /// Edges `(u, v)` with `u < v`, in order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.size())
            .flat_map(|u| Subset(self.adj[u] >> (u + 1) << (u + 1)).iter().map(move |v| (u, v)))
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.size();
        if n == 0 {
            return true;
        }
        let mut seen = 1u32;
        let mut frontier = 1u32;
        while frontier != 0 {
            let next = Subset(frontier).iter().fold(0, |m, v| m | self.adj[v]) & !seen;
            seen |= next;
            frontier = next;
        }
        seen == Subset::full(n).0
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.size() {
            return Err(Error::ElementOutOfRange {
                index: v,
                size: self.size(),
            });
        }
        Ok(())
    }

    /// Adjacency matrix with loops on the diagonal.
    pub fn to_matrix(&self) -> SymmetricBinaryMatrix {
        let rows = (0..self.size())
            .map(|v| self.adj[v] | if self.has_loop(v) { 1 << v } else { 0 })
            .collect();
        SymmetricBinaryMatrix::new((*self.vertices).clone(), rows).expect("graph matrix is symmetric")
    }

    /// `G+v`: toggles the loop at `v`.
    pub fn loop_toggle(&self, v: usize) -> Result<LoopedSimpleGraph> {
        self.check_vertex(v)?;
        let mut g = self.clone();
        g.loops = g.loops.toggled(v);
        Ok(g)
    }

    /// `G^v`: toggles adjacency between every pair of neighbours of `v`;
    /// if `v` is looped, also toggles the loops on its neighbours.
    pub fn local_complement(&self, v: usize) -> Result<LoopedSimpleGraph> {
        self.check_vertex(v)?;
        Ok(self.local_complement_at(v))
    }

    pub(crate) fn local_complement_at(&self, v: usize) -> LoopedSimpleGraph {
        let nv = self.adj[v];
        let mut g = self.clone();
        for u in Subset(nv).iter() {
            g.adj[u] ^= nv & !(1 << u);
        }
        if self.has_loop(v) {
            g.loops = g.loops ^ Subset(nv);
        }
        g
    }

    /// `((G^v)^w)^v` for adjacent `v, w` in a loopless graph.
    pub fn edge_pivot(&self, v: usize, w: usize) -> Result<LoopedSimpleGraph> {
        self.check_vertex(v)?;
        self.check_vertex(w)?;
        if !self.is_loopless() {
            return Err(Error::LoopsPresent);
        }
        if !self.adjacent(v, w) {
            return Err(Error::NotAdjacent(
                self.vertices.label(v).to_string(),
                self.vertices.label(w).to_string(),
            ));
        }
        Ok(self.local_complement_at(v).local_complement_at(w).local_complement_at(v))
    }

    /// `G∖v`: drops `v`, its edges and its loop.
    pub fn vertex_delete(&self, v: usize) -> Result<LoopedSimpleGraph> {
        self.check_vertex(v)?;
        Ok(self.delete_set(Subset::singleton(v)))
    }

    pub(crate) fn delete_set(&self, removed: Subset) -> LoopedSimpleGraph {
        let adj = (0..self.size())
            .filter(|&i| !removed.contains(i))
            .map(|i| Subset(self.adj[i]).compress(removed).0)
            .collect();
        LoopedSimpleGraph {
            vertices: Arc::new(self.vertices.without(removed)),
            adj,
            loops: self.loops.compress(removed),
        }
    }

    /// Moves vertex `i` (and its label) to position `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> LoopedSimpleGraph {
        let n = self.size();
        let mut labels = vec![String::new(); n];
        let mut adj = vec![0u32; n];
        for i in 0..n {
            labels[perm[i]] = self.vertices.label(i).to_string();
            adj[perm[i]] = crate::system::map_subset(Subset(self.adj[i]), perm).0;
        }
        LoopedSimpleGraph {
            vertices: Arc::new(GroundSet::new(labels).expect("permuted labels are distinct")),
            adj,
            loops: crate::system::map_subset(self.loops, perm),
        }
    }

    pub fn canonical_key(&self) -> Result<GraphKey> {
        canon::graph_key(self)
    }

    pub fn is_isomorphic(&self, other: &LoopedSimpleGraph) -> Result<bool> {
        if self.size() != other.size() || self.edges().len() != other.edges().len() {
            return Ok(false);
        }
        Ok(self.canonical_key()? == other.canonical_key()?)
    }
}

impl fmt::Display for LoopedSimpleGraph {
    /// One-line edge list: `a-b b-c d d-d` (isolated vertices alone, loops as `v-v`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let mut touched = Subset::EMPTY;
        for (u, v) in self.edges() {
            parts.push(format!("{}-{}", self.vertices.label(u), self.vertices.label(v)));
            touched = touched.with(u).with(v);
        }
        for v in self.loops.iter() {
            parts.push(format!("{0}-{0}", self.vertices.label(v)));
            touched = touched.with(v);
        }
        for v in (Subset::full(self.size()) ^ touched).iter() {
            parts.push(self.vertices.label(v).to_string());
        }
        f.write_str(&parts.join(" "))
    }
}

impl fmt::Debug for LoopedSimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({self})")
    }
}

/// `D(G)`: the basic binary delta-matroid of the adjacency matrix.
pub fn delta_matroid_of_graph(g: &LoopedSimpleGraph) -> SetSystem {
    delta_matroid_of_matrix(&g.to_matrix())
}

/// Closure under local complementation, optionally up to isomorphism
/// (members are then canonical forms).
pub fn lc_orbit(g: &LoopedSimpleGraph, up_to_iso: bool) -> Result<Vec<LoopedSimpleGraph>> {
    let n = g.size();
    if up_to_iso {
        let seed = g.canonical_key()?;
        let mut seen = HashSet::from([seed.clone()]);
        let mut out = vec![seed.to_graph()];
        let mut i = 0;
        while i < out.len() {
            for v in 0..n {
                let k = out[i].local_complement_at(v).canonical_key()?;
                if seen.insert(k.clone()) {
                    out.push(k.to_graph());
                }
            }
            i += 1;
        }
        Ok(out)
    } else {
        let mut seen = HashSet::from([g.clone()]);
        let mut out = vec![g.clone()];
        let mut queue = VecDeque::from([0]);
        while let Some(i) = queue.pop_front() {
            for v in 0..n {
                let h = out[i].local_complement_at(v);
                if seen.insert(h.clone()) {
                    out.push(h);
                    queue.push_back(out.len() - 1);
                }
            }
        }
        Ok(out)
    }
}

/// Least canonical key over the local-complementation orbit.
pub fn lc_orbit_key(g: &LoopedSimpleGraph) -> Result<GraphKey> {
    let orbit = lc_orbit(g, true)?;
    Ok(orbit
        .iter()
        .map(|h| h.canonical_key())
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .min()
        .expect("orbit is non-empty"))
}

fn search_guard(g: &LoopedSimpleGraph, what: &'static str) -> Result<()> {
    if g.size() > SEARCH_MAX {
        return Err(Error::TooLarge {
            what,
            size: g.size(),
            max: SEARCH_MAX,
        });
    }
    Ok(())
}

/// Whether `h` (up to isomorphism) is reachable from `g` by local
/// complementations and vertex deletions.
pub fn is_vertex_minor(g: &LoopedSimpleGraph, h: &LoopedSimpleGraph) -> Result<bool> {
    search_guard(g, "vertex-minor search")?;
    if h.size() > g.size() {
        return Ok(false);
    }
    let target = h.canonical_key()?;
    let mut explored: HashMap<GraphKey, ()> = HashMap::new();
    reach(g.canonical_key()?, &target, &mut explored)
}

fn reach(start: GraphKey, target: &GraphKey, explored: &mut HashMap<GraphKey, ()>) -> Result<bool> {
    if explored.contains_key(&start) {
        return Ok(false);
    }
    let orbit = lc_orbit(&start.to_graph(), true)?;
    for m in &orbit {
        explored.insert(m.canonical_key()?, ());
    }
    if start.size() == target.size() {
        for m in &orbit {
            if m.canonical_key()? == *target {
                return Ok(true);
            }
        }
        return Ok(false);
    }
    for m in &orbit {
        for v in 0..m.size() {
            let k = m.delete_set(Subset::singleton(v)).canonical_key()?;
            if reach(k, target, explored)? {
                return Ok(true);
            }
        }
    }
    Ok(false)
}
