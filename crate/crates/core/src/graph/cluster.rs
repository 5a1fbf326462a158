use serde::{Deserialize, Serialize};

use super::WeightedGraph;
use crate::error::{Error, Result};

/// Relative tolerance used when comparing edge weights inside a cluster.
pub const WEIGHT_RTOL: f64 = 1e-9;

fn weights_match(a: f64, b: f64) -> bool {
    (a - b).abs() <= WEIGHT_RTOL * a.abs().max(b.abs())
}

/// A set `members` of pairwise non-adjacent false twins whose common
/// neighborhood is `neighborhood`, with `weights[i]` the weight of every
/// edge from a member to `neighborhood[i]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cluster {
    pub members: Vec<usize>,
    pub neighborhood: Vec<usize>,
    pub weights: Vec<f64>,
}

impl Cluster {
    /// Builds the cluster on `members` by reading `S` and `z` off the graph, then validates it.
    pub fn from_members(g: &WeightedGraph, members: &[usize]) -> Result<Self> {
        let first = *members
            .first()
            .ok_or_else(|| Error::InvalidCluster("empty member set".into()))?;
        g.check_vertex(first)?;
        let nbrs = g.neighbors(first);
        let cluster = Cluster {
            members: members.to_vec(),
            neighborhood: nbrs.iter().map(|&(v, _)| v).collect(),
            weights: nbrs.iter().map(|&(_, w)| w).collect(),
        };
        cluster.validate(g)?;
        Ok(cluster)
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// Sum of the weights from one member into `S`; the diagonal shift `1ᵀz`.
    pub fn weight_sum(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Re-checks every cluster condition against `g`.
    pub fn validate(&self, g: &WeightedGraph) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidCluster(msg));
        if self.members.len() < 2 {
            return bad(format!("needs at least 2 members, got {}", self.members.len()));
        }
        if self.neighborhood.len() != self.weights.len() {
            return bad("neighborhood and weight vector lengths differ".into());
        }
        for &v in self.members.iter().chain(&self.neighborhood) {
            g.check_vertex(v)?;
        }
        let mut sorted = self.members.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != self.members.len() {
            return bad("repeated member".into());
        }
        if let Some(v) = self.neighborhood.iter().find(|v| sorted.binary_search(v).is_ok()) {
            return bad(format!("vertex {v} is in both C and S"));
        }
        let mut expected: Vec<(usize, f64)> = self
            .neighborhood
            .iter()
            .copied()
            .zip(self.weights.iter().copied())
            .collect();
        expected.sort_by_key(|&(v, _)| v);
        for &u in &self.members {
            let nbrs = g.neighbors(u);
            let same = nbrs.len() == expected.len()
                && nbrs
                    .iter()
                    .zip(&expected)
                    .all(|(&(v, w), &(ev, ew))| v == ev && weights_match(w, ew));
            if !same {
                return bad(format!("vertex {u} does not have the common weighted neighborhood"));
            }
        }
        Ok(())
    }
}

/// All maximal classes of false twins with matching weights, ordered by smallest member.
///
/// Twins that are adjacent never share a neighborhood (each lies in the
/// other's neighborhood but not its own), so grouping by identical weighted
/// neighborhoods yields independent sets directly.
pub fn detect_clusters(g: &WeightedGraph) -> Vec<Cluster> {
    let n = g.order();
    let mut adj: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    for (u, v, w) in g.edges() {
        adj[u].push((v, w));
        adj[v].push((u, w));
    }
    for list in &mut adj {
        list.sort_by_key(|&(v, _)| v);
    }

    let same_nbhd = |a: &[(usize, f64)], b: &[(usize, f64)]| {
        a.len() == b.len()
            && a.iter()
                .zip(b)
                .all(|(&(va, wa), &(vb, wb))| va == vb && weights_match(wa, wb))
    };

    let mut classes: Vec<Vec<usize>> = Vec::new();
    for u in 0..n {
        match classes.iter_mut().find(|c| same_nbhd(&adj[c[0]], &adj[u])) {
            Some(class) => class.push(u),
            None => classes.push(vec![u]),
        }
    }

    classes
        .into_iter()
        .filter(|c| c.len() >= 2)
        .map(|members| {
            let rep = &adj[members[0]];
            Cluster {
                neighborhood: rep.iter().map(|&(v, _)| v).collect(),
                weights: rep.iter().map(|&(_, w)| w).collect(),
                members,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k23_has_two_clusters() {
        let g = WeightedGraph::complete_bipartite(2, 3);
        let cs = detect_clusters(&g);
        assert_eq!(cs.len(), 2);
        assert_eq!(cs[0].members, vec![0, 1]);
        assert_eq!(cs[0].neighborhood, vec![2, 3, 4]);
        assert_eq!(cs[1].members, vec![2, 3, 4]);
        assert_eq!(cs[1].neighborhood, vec![0, 1]);
        assert_eq!(cs[1].weights, vec![1.0, 1.0]);
    }

    #[test]
    fn triangle_has_none() {
        assert!(detect_clusters(&WeightedGraph::complete(3)).is_empty());
    }

    #[test]
    fn star_leaves() {
        let cs = detect_clusters(&WeightedGraph::star(4));
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].members, vec![1, 2, 3, 4]);
        assert_eq!(cs[0].neighborhood, vec![0]);
    }

    #[test]
    fn weights_split_twins() {
        let g = WeightedGraph::from_edges(3, [(0, 1, 1.0), (0, 2, 2.0)]).unwrap();
        assert!(detect_clusters(&g).is_empty());
        let g = WeightedGraph::from_edges(3, [(0, 1, 2.0), (0, 2, 2.0 * (1.0 + 1e-12))]).unwrap();
        assert_eq!(detect_clusters(&g)[0].members, vec![1, 2]);
    }

    #[test]
    fn from_members_rejects_adjacent_set() {
        let g = WeightedGraph::complete(3);
        assert!(Cluster::from_members(&g, &[0, 1]).is_err());
        let star = WeightedGraph::star(3);
        let c = Cluster::from_members(&star, &[1, 3]).unwrap();
        assert_eq!(c.weight_sum(), 1.0);
        assert!(Cluster::from_members(&star, &[0, 1]).is_err());
    }
}
