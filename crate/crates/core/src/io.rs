//! JSON formats for set systems, graphs and matrices, and the one-line
//! edge-list format for graphs.
//!
//! ```text
//! {"ground":["a","b","c"],"feasible":[[],["a","b","c"]]}
//! {"vertices":["a","b","c"],"edges":[["a","b"],["b","c"]],"loops":[]}
//! {"labels":["1","2"],"rows":["01","10"]}
//! a-b b-c c-c d
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::SymmetricBinaryMatrix;
use crate::graph::LoopedSimpleGraph;
use crate::subset::{GroundSet, Subset};
use crate::system::SetSystem;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetSystemJson {
    pub ground: Vec<String>,
    pub feasible: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
    #[serde(default)]
    pub loops: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub labels: Vec<String>,
    pub rows: Vec<String>,
}

impl From<&SetSystem> for SetSystemJson {
    fn from(s: &SetSystem) -> Self {
        let g = s.ground();
        SetSystemJson {
            ground: g.labels().to_vec(),
            feasible: s
                .feasible()
                .iter()
                .map(|&f| g.names(f).into_iter().map(String::from).collect())
                .collect(),
        }
    }
}

impl TryFrom<SetSystemJson> for SetSystem {
    type Error = Error;
    fn try_from(j: SetSystemJson) -> Result<SetSystem> {
        let g = GroundSet::new(j.ground)?;
        let fam = j
            .feasible
            .iter()
            .map(|f| g.subset_of(f))
            .collect::<Result<Vec<Subset>>>()?;
        SetSystem::new(g, fam)
    }
}

impl From<&LoopedSimpleGraph> for GraphJson {
    fn from(g: &LoopedSimpleGraph) -> Self {
        let v = g.vertices();
        GraphJson {
            vertices: v.labels().to_vec(),
            edges: g
                .edges()
                .into_iter()
                .map(|(a, b)| [v.label(a).to_string(), v.label(b).to_string()])
                .collect(),
            loops: v.names(g.loops()).into_iter().map(String::from).collect(),
        }
    }
}

impl TryFrom<GraphJson> for LoopedSimpleGraph {
    type Error = Error;
    fn try_from(j: GraphJson) -> Result<LoopedSimpleGraph> {
        let g = GroundSet::new(j.vertices)?;
        let edges = j
            .edges
            .iter()
            .map(|[a, b]| Ok((g.index_of(a)?, g.index_of(b)?)))
            .collect::<Result<Vec<_>>>()?;
        let loops = g.subset_of(&j.loops)?;
        LoopedSimpleGraph::new(g, &edges, loops)
    }
}

impl From<&SymmetricBinaryMatrix> for MatrixJson {
    fn from(a: &SymmetricBinaryMatrix) -> Self {
        MatrixJson {
            labels: a.labels().labels().to_vec(),
            rows: (0..a.size()).map(|i| a.row_string(i)).collect(),
        }
    }
}

impl TryFrom<MatrixJson> for SymmetricBinaryMatrix {
    type Error = Error;
    fn try_from(j: MatrixJson) -> Result<SymmetricBinaryMatrix> {
        SymmetricBinaryMatrix::from_strings(GroundSet::new(j.labels)?, &j.rows)
    }
}

pub fn system_to_json(s: &SetSystem) -> String {
    serde_json::to_string(&SetSystemJson::from(s)).expect("serializable")
}

pub fn system_from_json(text: &str) -> Result<SetSystem> {
    serde_json::from_str::<SetSystemJson>(text)?.try_into()
}

pub fn graph_to_json(g: &LoopedSimpleGraph) -> String {
    serde_json::to_string(&GraphJson::from(g)).expect("serializable")
}

pub fn graph_from_json(text: &str) -> Result<LoopedSimpleGraph> {
    serde_json::from_str::<GraphJson>(text)?.try_into()
}

pub fn matrix_to_json(a: &SymmetricBinaryMatrix) -> String {
    serde_json::to_string(&MatrixJson::from(a)).expect("serializable")
}

pub fn matrix_from_json(text: &str) -> Result<SymmetricBinaryMatrix> {
    serde_json::from_str::<MatrixJson>(text)?.try_into()
}

/// Parses the one-line edge list: `u-v` is an edge, `v-v` a loop and a
/// bare `v` an isolated vertex. Vertices are ordered by first appearance.
pub fn parse_edge_list(text: &str) -> Result<LoopedSimpleGraph> {
    let mut labels: Vec<String> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let index = |name: &str, labels: &mut Vec<String>| -> Result<usize> {
        if name.is_empty() {
            return Err(Error::Parse(format!("empty vertex name in {text:?}")));
        }
        Ok(match labels.iter().position(|l| l == name) {
            Some(i) => i,
            None => {
                labels.push(name.to_string());
                labels.len() - 1
            }
        })
    };
    for tok in text.split_whitespace() {
        let parts: Vec<&str> = tok.split('-').collect();
        match parts.as_slice() {
            [v] => {
                index(v, &mut labels)?;
            }
            [u, v] => {
                let a = index(u, &mut labels)?;
                let b = index(v, &mut labels)?;
                pairs.push((a, b));
            }
            _ => return Err(Error::Parse(format!("bad edge-list token {tok:?}"))),
        }
    }
    LoopedSimpleGraph::new(GroundSet::new(labels)?, &pairs, Subset::EMPTY)
}

/// Any of the three JSON documents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    System(SetSystem),
    Graph(LoopedSimpleGraph),
    Matrix(SymmetricBinaryMatrix),
}

impl Document {
    /// The set system the document denotes: `D(G)` for a graph and `D(A)`
    /// for a matrix.
    pub fn to_system(&self) -> SetSystem {
        match self {
            Document::System(s) => s.clone(),
            Document::Graph(g) => crate::graph::delta_matroid_of_graph(g),
            Document::Matrix(a) => crate::gf2::delta_matroid_of_matrix(a),
        }
    }
}

/// Parses a JSON document of any kind, or an edge list if the text is not
/// JSON.
pub fn parse_document(text: &str) -> Result<Document> {
    let value: serde_json::Value = match serde_json::from_str(text) {
        Ok(v) => v,
        Err(_) if !text.trim_start().starts_with('{') => {
            return Ok(Document::Graph(parse_edge_list(text)?));
        }
        Err(e) => return Err(e.into()),
    };
    let has = |k: &str| value.get(k).is_some();
    if has("ground") {
        Ok(Document::System(serde_json::from_value::<SetSystemJson>(value)?.try_into()?))
    } else if has("vertices") {
        Ok(Document::Graph(serde_json::from_value::<GraphJson>(value)?.try_into()?))
    } else if has("labels") {
        Ok(Document::Matrix(serde_json::from_value::<MatrixJson>(value)?.try_into()?))
    } else {
        Err(Error::Parse("expected a set system, graph or matrix document".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use proptest::prelude::*;

    #[test]
    fn parse_examples() {
        let s = system_from_json(r#"{"ground":["a","b","c"],"feasible":[[],["a","b","c"]]}"#).unwrap();
        assert_eq!(s, catalog::get("S3").unwrap());
        let g = graph_from_json(r#"{"vertices":["a","b","c"],"edges":[["a","b"],["b","c"]],"loops":[]}"#).unwrap();
        assert_eq!(g.to_string(), "a-b b-c");
        let a = matrix_from_json(r#"{"labels":["1","2"],"rows":["01","10"]}"#).unwrap();
        assert_eq!(a.rows(), &[0b10, 0b01]);
    }

    #[test]
    fn parse_errors() {
        assert!(system_from_json(r#"{"ground":["a","a"],"feasible":[[]]}"#).is_err());
        assert!(system_from_json(r#"{"ground":["a"],"feasible":[["b"]]}"#).is_err());
        assert!(system_from_json("{").is_err());
        assert!(graph_from_json(r#"{"vertices":["a"],"edges":[["a","z"]]}"#).is_err());
        assert!(matrix_from_json(r#"{"labels":["1","2"],"rows":["01","00"]}"#).is_err());
        assert!(parse_edge_list("a-b-c").is_err());
        assert!(parse_document(r#"{"x":1}"#).is_err());
    }

    #[test]
    fn serialization_is_storage_order() {
        let s = SetSystem::from_words("abc", &["abc", "", "a"]).unwrap();
        assert_eq!(system_to_json(&s), r#"{"ground":["a","b","c"],"feasible":[[],["a"],["a","b","c"]]}"#);
    }

    #[test]
    fn documents() {
        assert!(matches!(parse_document("a-b c"), Ok(Document::Graph(_))));
        let d = parse_document(r#"{"labels":["1"],"rows":["1"]}"#).unwrap();
        assert_eq!(d.to_system(), SetSystem::new(GroundSet::new(["1"]).unwrap(), [Subset(0), Subset(1)]).unwrap());
        let g = parse_edge_list("a-b b-c c-c d").unwrap();
        assert_eq!(g.vertices().labels(), ["a", "b", "c", "d"]);
        assert_eq!(g.loops(), Subset(0b100));
        assert_eq!(parse_edge_list(&g.to_string()).unwrap(), g);
    }

    proptest! {
        #[test]
        fn system_round_trip(n in 0usize..6, fam in proptest::collection::btree_set(0u32..64, 0..20)) {
            let fam: Vec<Subset> = fam.into_iter().map(|m| Subset(m & ((1 << n) - 1))).collect();
            let s = SetSystem::new(GroundSet::positional(n), fam).unwrap();
            prop_assert_eq!(system_from_json(&system_to_json(&s)).unwrap(), s);
        }

        #[test]
        fn graph_round_trip(g in crate::graph::tests::arb_graph(0, 8, true)) {
            prop_assert_eq!(graph_from_json(&graph_to_json(&g)).unwrap(), g.clone());
            prop_assert_eq!(parse_edge_list(&g.to_string()).unwrap().canonical_key().unwrap(), g.canonical_key().unwrap());
        }

        #[test]
        fn matrix_round_trip(bits in proptest::collection::vec(any::<bool>(), 21)) {
            let n = 6;
            let mut rows = vec![0u32; n];
            let mut k = 0;
            for i in 0..n {
                for j in i..n {
                    if bits[k] {
                        rows[i] |= 1 << j;
                        rows[j] |= 1 << i;
                    }
                    k += 1;
                }
            }
            let a = SymmetricBinaryMatrix::new(GroundSet::positional(n), rows).unwrap();
            prop_assert_eq!(matrix_from_json(&matrix_to_json(&a)).unwrap(), a);
        }
    }
}
