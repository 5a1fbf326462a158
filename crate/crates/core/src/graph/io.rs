//! Graph JSON: `{"n": int, "edges": [[u, v, w?], ...], "labels": [str, ...]?}`.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::WeightedGraph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum EdgeEntry {
    Weighted(usize, usize, f64),
    Plain(usize, usize),
}

/// On-disk form of a [`WeightedGraph`]. Omitted weights default to 1.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    n: usize,
    edges: Vec<EdgeEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl TryFrom<GraphFile> for WeightedGraph {
    type Error = Error;

    fn try_from(file: GraphFile) -> Result<Self> {
        if file.n == 0 {
            return Err(Error::EmptyGraph);
        }
        let edges = file.edges.into_iter().map(|e| match e {
            EdgeEntry::Weighted(u, v, w) => (u, v, w),
            EdgeEntry::Plain(u, v) => (u, v, 1.0),
        });
        let g = WeightedGraph::from_edges(file.n, edges)?;
        match file.labels {
            Some(labels) => g.with_labels(labels),
            None => Ok(g),
        }
    }
}

impl From<&WeightedGraph> for GraphFile {
    fn from(g: &WeightedGraph) -> Self {
        GraphFile {
            n: g.order(),
            edges: g.edges().map(|(u, v, w)| EdgeEntry::Weighted(u, v, w)).collect(),
            labels: g.labels().map(<[String]>::to_vec),
        }
    }
}

impl WeightedGraph {
    pub fn from_json_str(s: &str) -> Result<Self> {
        let file: GraphFile = serde_json::from_str(s)?;
        file.try_into()
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&GraphFile::from(self)).expect("graph JSON serialization is infallible")
    }

    pub fn read_json(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json_str(&fs::read_to_string(path)?)
    }

    pub fn write_json(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_json_string() + "\n")?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_weight_and_labels() {
        let g = WeightedGraph::from_json_str(r#"{"n": 3, "edges": [[0, 1], [1, 2, 2.5]], "labels": ["a", "c", "b"]}"#)
            .unwrap();
        assert_eq!(g.weight(0, 1), Some(1.0));
        assert_eq!(g.weight(2, 1), Some(2.5));
        assert_eq!(g.labels().unwrap()[1], "c");
    }

    #[test]
    fn rejects_invalid() {
        assert!(WeightedGraph::from_json_str(r#"{"n": 0, "edges": []}"#).is_err());
        assert!(WeightedGraph::from_json_str(r#"{"n": 2, "edges": [[0, 0]]}"#).is_err());
        assert!(WeightedGraph::from_json_str(r#"{"n": 2, "edges": [[0, 1, -1.0]]}"#).is_err());
        assert!(WeightedGraph::from_json_str(r#"{"n": 2, "edges": [[0, 1], [1, 0]]}"#).is_err());
        assert!(WeightedGraph::from_json_str(r#"{"n": 2, "edges": [[0, 1]], "labels": ["x"]}"#).is_err());
        assert!(WeightedGraph::from_json_str("not json").is_err());
    }

    #[test]
    fn round_trip() {
        let g = WeightedGraph::from_edges(4, [(0, 1, 0.25), (2, 3, 3.0), (1, 3, 1.0)]).unwrap();
        assert_eq!(WeightedGraph::from_json_str(&g.to_json_string()).unwrap(), g);
    }
}
