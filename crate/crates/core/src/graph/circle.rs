//! Chord diagrams, circle-graph recognition by backtracking, and the
//! search for vertex-minor-minimal non-circle graphs.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::canon::extend;
use super::{lc_orbit, lc_orbit_key, GraphKey, LoopedSimpleGraph, SEARCH_MAX};
use crate::error::{Error, Result};
use crate::io::GraphJson;
use crate::subset::{GroundSet, Subset};

/// Largest vertex count for the obstruction search.
pub const OBSTRUCTION_MAX: usize = 8;

/// A double-occurrence word read around a circle.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChordDiagram {
    word: Vec<String>,
}

impl ChordDiagram {
    pub fn new<S: Into<String>, I: IntoIterator<Item = S>>(word: I) -> Result<ChordDiagram> {
        let word: Vec<String> = word.into_iter().map(Into::into).collect();
        let mut counts: HashMap<&str, usize> = HashMap::new();
        for s in &word {
            *counts.entry(s).or_default() += 1;
        }
        if let Some((s, c)) = counts.iter().find(|(_, &c)| c != 2) {
            return Err(Error::MalformedWord(format!("symbol `{s}` occurs {c} times")));
        }
        Ok(ChordDiagram { word })
    }

    /// Whitespace-separated symbols, or one symbol per character if the
    /// text has no whitespace.
    pub fn parse(text: &str) -> Result<ChordDiagram> {
        let text = text.trim();
        if text.contains(char::is_whitespace) {
            ChordDiagram::new(text.split_whitespace())
        } else {
            ChordDiagram::new(text.chars().map(String::from))
        }
    }

    pub fn word(&self) -> &[String] {
        &self.word
    }

    /// Chord names in order of first occurrence.
    pub fn chords(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for s in &self.word {
            if !out.contains(&s.as_str()) {
                out.push(s);
            }
        }
        out
    }
}

impl fmt::Display for ChordDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.word.iter().all(|s| s.chars().count() == 1) { "" } else { " " };
        f.write_str(&self.word.join(sep))
    }
}

/// Chords are adjacent when their endpoints alternate around the circle.
pub fn interlacement_graph(d: &ChordDiagram) -> Result<LoopedSimpleGraph> {
    let names = d.chords();
    let ground = GroundSet::new(names.iter().copied())?;
    let idx: Vec<usize> = d.word.iter().map(|s| ground.index_of(s)).collect::<Result<_>>()?;
    Ok(interlacement_of_indices(ground, &idx))
}

fn interlacement_of_indices(ground: GroundSet, word: &[usize]) -> LoopedSimpleGraph {
    let n = ground.len();
    let mut first = vec![usize::MAX; n];
    let mut second = vec![usize::MAX; n];
    for (pos, &v) in word.iter().enumerate() {
        if first[v] == usize::MAX {
            first[v] = pos;
        } else {
            second[v] = pos;
        }
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let inside = |x: usize| first[u] < x && x < second[u];
            if inside(first[v]) != inside(second[v]) {
                edges.push((u, v));
            }
        }
    }
    LoopedSimpleGraph::new(ground, &edges, Subset::EMPTY).expect("indices in range")
}

fn circle_guard(g: &LoopedSimpleGraph) -> Result<()> {
    if !g.is_loopless() {
        return Err(Error::LoopsPresent);
    }
    if g.size() > SEARCH_MAX {
        return Err(Error::TooLarge {
            what: "circle-graph search",
            size: g.size(),
            max: SEARCH_MAX,
        });
    }
    Ok(())
}

/// A chord diagram whose interlacement graph is `g` under its labeling.
pub fn find_chord_diagram(g: &LoopedSimpleGraph) -> Result<Option<ChordDiagram>> {
    circle_guard(g)?;
    Ok(word_for(g).map(|w| ChordDiagram {
        word: w.iter().map(|&v| g.vertices().label(v).to_string()).collect(),
    }))
}

pub fn is_circle_graph(g: &LoopedSimpleGraph) -> Result<bool> {
    circle_guard(g)?;
    Ok(word_for(g).is_some())
}

struct Search<'a> {
    adj: &'a [u32],
    full: u32,
    word: Vec<usize>,
    opened: u32,
    closed: u32,
    order: Vec<usize>,
}

impl Search<'_> {
    /// Places endpoints one at a time. A pair's crossing is decided when
    /// the first of the two chords closes: chords still open then cross it
    /// exactly when they were opened after it, and chords not yet opened
    /// never do.
    fn run(&mut self) -> bool {
        if self.closed == self.full {
            return true;
        }
        let open = self.opened & !self.closed;
        for w in Subset(open).iter() {
            if self.adj[w] & !self.opened != 0 {
                continue;
            }
            let ok = Subset(open & !(1 << w))
                .iter()
                .all(|u| (self.adj[w] >> u & 1 == 1) == (self.order[u] > self.order[w]));
            if ok {
                self.closed |= 1 << w;
                self.word.push(w);
                if self.run() {
                    return true;
                }
                self.word.pop();
                self.closed &= !(1 << w);
            }
        }
        for v in Subset(self.full & !self.opened).iter() {
            self.opened |= 1 << v;
            self.order[v] = self.word.len();
            self.word.push(v);
            if self.run() {
                return true;
            }
            self.word.pop();
            self.opened &= !(1 << v);
        }
        false
    }
}

fn word_for(g: &LoopedSimpleGraph) -> Option<Vec<usize>> {
    let n = g.size();
    if n == 0 {
        return Some(vec![]);
    }
    // rotate so the word starts by opening vertex 0
    let mut s = Search {
        adj: g.adjacency(),
        full: Subset::full(n).0,
        word: vec![0],
        opened: 1,
        closed: 0,
        order: vec![0; n],
    };
    s.run().then_some(s.word)
}

/// The wheel on `n` rim vertices: vertex 0 is the hub.
pub fn wheel(n: usize) -> LoopedSimpleGraph {
    let mut edges: Vec<(usize, usize)> = (1..=n).map(|v| (0, v)).collect();
    edges.extend((1..=n).map(|v| (v, v % n + 1)));
    LoopedSimpleGraph::new(GroundSet::positional(n + 1), &edges, Subset::EMPTY).expect("wheel")
}

/// `K4` with its three rim edges subdivided: hub 0, rim 1..=6.
pub fn subdivided_wheel3() -> LoopedSimpleGraph {
    let mut edges: Vec<(usize, usize)> = vec![(0, 1), (0, 3), (0, 5)];
    edges.extend((1..=6).map(|v| (v, v % 6 + 1)));
    LoopedSimpleGraph::new(GroundSet::positional(7), &edges, Subset::EMPTY).expect("subdivided wheel")
}

/// Loopless graphs on at most `max_n` vertices that are not circle graphs
/// but whose proper vertex minors all are, one canonical representative
/// per local-complementation orbit, ordered by size then key.
pub fn find_circle_obstructions(max_n: usize) -> Result<Vec<LoopedSimpleGraph>> {
    if max_n > OBSTRUCTION_MAX {
        return Err(Error::TooLarge {
            what: "circle-obstruction search",
            size: max_n,
            max: OBSTRUCTION_MAX,
        });
    }
    let mut memo: HashMap<GraphKey, bool> = HashMap::new();
    let mut circle_level: Vec<GraphKey> = vec![LoopedSimpleGraph::empty(GroundSet::positional(0)).canonical_key()?];
    let mut found: Vec<GraphKey> = Vec::new();
    for k in 1..=max_n {
        let mut candidates: HashSet<GraphKey> = HashSet::new();
        for key in &circle_level {
            let g = key.to_graph();
            for nb in 0..1u32 << (k - 1) {
                candidates.insert(extend(&g, Subset(nb)).canonical_key()?);
            }
        }
        let mut candidates: Vec<GraphKey> = candidates.into_iter().collect();
        candidates.sort();
        let status: Vec<bool> = candidates
            .par_iter()
            .map(|c| word_for(&c.to_graph()).is_some())
            .collect();
        let mut handled: HashSet<GraphKey> = HashSet::new();
        let mut next = Vec::new();
        for (c, circle) in candidates.into_iter().zip(status) {
            memo.insert(c.clone(), circle);
            if circle {
                next.push(c);
                continue;
            }
            if handled.contains(&c) {
                continue;
            }
            let orbit = lc_orbit(&c.to_graph(), true)?;
            let mut minimal = true;
            'outer: for m in &orbit {
                for v in 0..m.size() {
                    if !memo_circle(&m.delete_set(Subset::singleton(v)), &mut memo)? {
                        minimal = false;
                        break 'outer;
                    }
                }
            }
            for m in &orbit {
                handled.insert(m.canonical_key()?);
            }
            if minimal {
                let rep = lc_orbit_key(&c.to_graph())?;
                if !found.contains(&rep) {
                    found.push(rep);
                }
            }
        }
        circle_level = next;
    }
    found.sort_by_key(|k| (k.size(), k.clone()));
    Ok(found.iter().map(GraphKey::to_graph).collect())
}

fn memo_circle(g: &LoopedSimpleGraph, memo: &mut HashMap<GraphKey, bool>) -> Result<bool> {
    let k = g.canonical_key()?;
    if let Some(&b) = memo.get(&k) {
        return Ok(b);
    }
    let b = word_for(g).is_some();
    memo.insert(k, b);
    Ok(b)
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    graphs: Vec<GraphJson>,
    sha256: String,
}

fn checksum(graphs: &[GraphJson]) -> String {
    let body = serde_json::to_string(graphs).expect("serializable");
    hex::encode(Sha256::digest(body.as_bytes()))
}

/// Serializes derived obstructions with a checksum over the graph list.
pub fn obstruction_cache_json(graphs: &[LoopedSimpleGraph]) -> String {
    let graphs: Vec<GraphJson> = graphs.iter().map(GraphJson::from).collect();
    let sha256 = checksum(&graphs);
    let mut s = serde_json::to_string_pretty(&CacheFile { graphs, sha256 }).expect("serializable");
    s.push('\n');
    s
}

/// Parses a cache file and verifies its checksum.
pub fn parse_obstruction_cache(text: &str) -> Result<Vec<LoopedSimpleGraph>> {
    let file: CacheFile = serde_json::from_str(text).map_err(|e| Error::Cache(e.to_string()))?;
    if checksum(&file.graphs) != file.sha256 {
        return Err(Error::Cache("checksum mismatch".into()));
    }
    file.graphs.into_iter().map(LoopedSimpleGraph::try_from).collect()
}

/// The derived obstruction cache shipped with the crate.
pub const EMBEDDED_CACHE: &str = include_str!("../../data/circle_obstructions.json");

/// The three vertex-minor-minimal non-circle graphs, read from the
/// embedded cache written by [`find_circle_obstructions`]`(8)`.
pub fn circle_obstructions() -> Result<&'static [LoopedSimpleGraph]> {
    static CACHE: OnceLock<Result<Vec<LoopedSimpleGraph>>> = OnceLock::new();
    let cached = CACHE.get_or_init(|| {
        let graphs = parse_obstruction_cache(EMBEDDED_CACHE)?;
        let sizes: Vec<usize> = graphs.iter().map(LoopedSimpleGraph::size).collect();
        if sizes != [6, 7, 8] {
            return Err(Error::Cache(format!("expected graphs on 6, 7 and 8 vertices, found {sizes:?}")));
        }
        Ok(graphs)
    });
    cached.as_deref().map_err(Clone::clone)
}
