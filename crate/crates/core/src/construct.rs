//! Graph operations that manufacture state-transfer instances.
//!
//! Vertex numbering is fixed so that matrix identities can be checked entry
//! by entry:
//!
//! * joins and disjoint unions concatenate the parts in order;
//! * products use [`ProductIndex`] (first factor major);
//! * coronas place `V(G)` first, then the copies of `H` ([`CoronaIndex`]);
//! * blow-ups map `(i, j)` to `i * c + j`, same as the lexicographic product.

use crate::error::{Error, Result};
use crate::graph::{Cluster, HamiltonianModel, WeightedGraph};

/// Flat index of a pair `(i, j)` in a product with `right` vertices in the second factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProductIndex {
    pub left: usize,
    pub right: usize,
}

impl ProductIndex {
    pub fn new(left: usize, right: usize) -> Self {
        Self { left, right }
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < self.left && j < self.right);
        i * self.right + j
    }

    pub fn split(&self, k: usize) -> (usize, usize) {
        (k / self.right, k % self.right)
    }

    pub fn len(&self) -> usize {
        self.left * self.right
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Layout of a corona: `base` vertices of `G` followed by copies of `H` of size `copy_size`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoronaIndex {
    pub base: usize,
    pub copy_size: usize,
}

impl CoronaIndex {
    /// Index of vertex `j` of the `copy`-th copy of `H`.
    pub fn copy_vertex(&self, copy: usize, j: usize) -> usize {
        debug_assert!(j < self.copy_size);
        self.base + copy * self.copy_size + j
    }

    /// All vertices of the `copy`-th copy, in `H` order.
    pub fn copy_vertices(&self, copy: usize) -> Vec<usize> {
        (0..self.copy_size).map(|j| self.copy_vertex(copy, j)).collect()
    }
}

/// Overlay of `inner` onto the cluster vertices of `base`.
#[derive(Debug, Clone)]
pub struct AttachmentPlan {
    pub base: WeightedGraph,
    pub cluster: Cluster,
    pub inner: WeightedGraph,
    /// `embedding[i]` is the cluster vertex that vertex `i` of `inner` becomes.
    pub embedding: Vec<usize>,
}

impl AttachmentPlan {
    pub fn new(base: WeightedGraph, cluster: Cluster, inner: WeightedGraph, embedding: Vec<usize>) -> Result<Self> {
        let plan = Self {
            base,
            cluster,
            inner,
            embedding,
        };
        plan.validate()?;
        Ok(plan)
    }

    /// Places vertex `i` of `inner` on `cluster.members[i]`.
    pub fn in_member_order(base: WeightedGraph, cluster: Cluster, inner: WeightedGraph) -> Result<Self> {
        let embedding = cluster.members.clone();
        Self::new(base, cluster, inner, embedding)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidAttachment(m));
        self.cluster.validate(&self.base)?;
        if self.inner.order() != self.cluster.size() {
            return bad(format!(
                "inner graph has {} vertices but the cluster has {}",
                self.inner.order(),
                self.cluster.size()
            ));
        }
        if self.embedding.len() != self.inner.order() {
            return bad("embedding length differs from inner graph order".into());
        }
        let mut image = self.embedding.clone();
        image.sort_unstable();
        let mut members = self.cluster.members.clone();
        members.sort_unstable();
        if image != members {
            return bad("embedding is not a bijection onto the cluster".into());
        }
        Ok(())
    }
}

/// `G(H)`: the base graph with the inner graph's edges added on the cluster.
pub fn attach(plan: &AttachmentPlan) -> Result<WeightedGraph> {
    plan.validate()?;
    let mut g = plan.base.clone();
    for (u, v, w) in plan.inner.edges() {
        let (a, b) = (plan.embedding[u], plan.embedding[v]);
        if g.has_edge(a, b) {
            return Err(Error::InvalidAttachment(format!("edge {{{a}, {b}}} already in the base graph")));
        }
        g.add_edge(a, b, w)?;
    }
    Ok(g)
}

/// Complement of an unweighted graph.
pub fn complement(g: &WeightedGraph) -> Result<WeightedGraph> {
    if !g.is_unweighted() {
        return Err(Error::WeightedInput);
    }
    let n = g.order();
    let mut out = WeightedGraph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) {
                out.add_edge(u, v, 1.0)?;
            }
        }
    }
    Ok(out)
}

/// Rate `r` with `U_{H̄}(t)x = e^{irt} U_H(-t)x` for `x ⊥ 1`, when `1` is an
/// eigenvector of `M(H)` and `H` has `c` vertices.
///
/// `H̄` has degree matrix `(c-1)I - Δ`, so `L̄ = cI - J - L` and
/// `Q̄ = (c-2)I + J - Q`, giving `r = δ(c-1) - ζ`.
pub fn complement_phase_rate(model: HamiltonianModel, c: usize) -> f64 {
    f64::from(model.delta()) * (c as f64 - 1.0) - f64::from(model.zeta())
}

fn copy_into(dst: &mut WeightedGraph, src: &WeightedGraph, offset: usize) -> Result<()> {
    for (u, v, w) in src.edges() {
        dst.add_edge(u + offset, v + offset, w)?;
    }
    Ok(())
}

/// `G ∪ H` with `H` shifted past `G`.
pub fn disjoint_union(g: &WeightedGraph, h: &WeightedGraph) -> WeightedGraph {
    let mut out = WeightedGraph::empty(g.order() + h.order());
    copy_into(&mut out, g, 0).expect("union of valid graphs is valid");
    copy_into(&mut out, h, g.order()).expect("union of valid graphs is valid");
    out
}

/// `G ∨ H` with unit cross edges.
pub fn join(g: &WeightedGraph, h: &WeightedGraph) -> WeightedGraph {
    join_weighted(g, h, &vec![1.0; g.order()]).expect("unit weights are valid")
}

/// `G ∨ H` where every cross edge at vertex `i` of `G` has weight `weights[i]`.
///
/// With this weighting `(V(H), V(G))` is a cluster of `G ∨ H - E(H)`.
pub fn join_weighted(g: &WeightedGraph, h: &WeightedGraph, weights: &[f64]) -> Result<WeightedGraph> {
    if weights.len() != g.order() {
        return Err(Error::SizeMismatch(format!(
            "{} join weights for {} vertices",
            weights.len(),
            g.order()
        )));
    }
    let offset = g.order();
    let mut out = disjoint_union(g, h);
    for (u, &w) in weights.iter().enumerate() {
        for v in 0..h.order() {
            out.add_edge(u, offset + v, w)?;
        }
    }
    Ok(out)
}

/// `H₁ ∨ H₂ ∨ ⋯ ∨ H_k`: each part joined to the next one only.
pub fn sequential_join(parts: &[WeightedGraph]) -> Result<WeightedGraph> {
    let first = parts.first().ok_or(Error::EmptyJoin)?;
    let total: usize = parts.iter().map(WeightedGraph::order).sum();
    let mut out = WeightedGraph::empty(total);
    copy_into(&mut out, first, 0)?;
    let mut offset = 0;
    for pair in parts.windows(2) {
        let (prev, next) = (&pair[0], &pair[1]);
        let next_offset = offset + prev.order();
        copy_into(&mut out, next, next_offset)?;
        for u in 0..prev.order() {
            for v in 0..next.order() {
                out.add_edge(offset + u, next_offset + v, 1.0)?;
            }
        }
        offset = next_offset;
    }
    Ok(out)
}

/// `G₁ □ G₂`, indexed by [`ProductIndex`].
pub fn cartesian(g1: &WeightedGraph, g2: &WeightedGraph) -> WeightedGraph {
    let idx = ProductIndex::new(g1.order(), g2.order());
    let mut out = WeightedGraph::empty(idx.len());
    for (u, v, w) in g1.edges() {
        for j in 0..g2.order() {
            out.add_edge(idx.index(u, j), idx.index(v, j), w).expect("product edges are distinct");
        }
    }
    for (u, v, w) in g2.edges() {
        for i in 0..g1.order() {
            out.add_edge(idx.index(i, u), idx.index(i, v), w).expect("product edges are distinct");
        }
    }
    out
}

fn with_copies(g: &WeightedGraph, h: &WeightedGraph, copies: usize) -> (WeightedGraph, CoronaIndex) {
    let idx = CoronaIndex {
        base: g.order(),
        copy_size: h.order(),
    };
    let mut out = WeightedGraph::empty(g.order() + copies * h.order());
    copy_into(&mut out, g, 0).expect("base edges are valid");
    for k in 0..copies {
        copy_into(&mut out, h, idx.base + k * idx.copy_size).expect("copy edges are valid");
    }
    (out, idx)
}

/// Vertex corona `G ∘ H`: copy `i` of `H` is joined to vertex `i` of `G`.
pub fn vertex_corona(g: &WeightedGraph, h: &WeightedGraph) -> WeightedGraph {
    let (mut out, idx) = with_copies(g, h, g.order());
    for i in 0..g.order() {
        for v in idx.copy_vertices(i) {
            out.add_edge(i, v, 1.0).expect("corona edges are distinct");
        }
    }
    out
}

/// Edge corona: one copy of `H` per edge of `G` (in [`WeightedGraph::edges`] order),
/// joined to both endpoints.
pub fn edge_corona(g: &WeightedGraph, h: &WeightedGraph) -> WeightedGraph {
    let edges: Vec<_> = g.edges().collect();
    let (mut out, idx) = with_copies(g, h, edges.len());
    for (k, &(a, b, _)) in edges.iter().enumerate() {
        for v in idx.copy_vertices(k) {
            out.add_edge(a, v, 1.0).expect("corona edges are distinct");
            out.add_edge(b, v, 1.0).expect("corona edges are distinct");
        }
    }
    out
}

/// Neighborhood corona: copy `i` of `H` is joined to every neighbor of vertex `i` in `G`.
pub fn neighborhood_corona(g: &WeightedGraph, h: &WeightedGraph) -> WeightedGraph {
    let (mut out, idx) = with_copies(g, h, g.order());
    for i in 0..g.order() {
        for (nb, _) in g.neighbors(i) {
            for v in idx.copy_vertices(i) {
                out.add_edge(nb, v, 1.0).expect("corona edges are distinct");
            }
        }
    }
    out
}

/// Edge-perturbed blow-up: each vertex `i` of `G` becomes `inner[i]` on vertices
/// `i*c .. (i+1)*c`, and clusters of adjacent vertices are completely joined
/// with the weight of the original edge.
pub fn blow_up(g: &WeightedGraph, c: usize, inner: &[WeightedGraph]) -> Result<WeightedGraph> {
    if inner.len() != g.order() {
        return Err(Error::SizeMismatch(format!(
            "{} inner graphs for {} base vertices",
            inner.len(),
            g.order()
        )));
    }
    if let Some((i, h)) = inner.iter().enumerate().find(|(_, h)| h.order() != c) {
        return Err(Error::SizeMismatch(format!(
            "inner graph {i} has {} vertices, expected {c}",
            h.order()
        )));
    }
    let idx = ProductIndex::new(g.order(), c);
    let mut out = WeightedGraph::empty(idx.len());
    for (i, h) in inner.iter().enumerate() {
        copy_into(&mut out, h, i * c)?;
    }
    for (u, v, w) in g.edges() {
        for a in 0..c {
            for b in 0..c {
                out.add_edge(idx.index(u, a), idx.index(v, b), w)?;
            }
        }
    }
    Ok(out)
}

/// Lexicographic product `G[H]`.
pub fn lexicographic(g: &WeightedGraph, h: &WeightedGraph) -> WeightedGraph {
    let inner = vec![h.clone(); g.order()];
    blow_up(g, h.order(), &inner).expect("uniform inner graphs match")
}

/// `K_n` minus the matching `{0,1}, {2,3}, …, {2m-2, 2m-1}`.
pub fn complete_minus_matching(n: usize, m: usize) -> Result<WeightedGraph> {
    if m == 0 {
        return Err(Error::InvalidParameter("matching size must be at least 1".into()));
    }
    if 2 * m > n {
        return Err(Error::MatchingTooLarge { n, m });
    }
    let mut g = WeightedGraph::complete(n);
    for k in 0..m {
        g.remove_edge(2 * k, 2 * k + 1);
    }
    Ok(g)
}

/// `K_n` minus the cycle `0 - 1 - ⋯ - (2^k - 1) - 0`.
pub fn complete_minus_cycle(n: usize, k: u32) -> Result<WeightedGraph> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("cycle exponent must be at least 2, got {k}")));
    }
    let len = 1usize
        .checked_shl(k)
        .filter(|&l| l <= n)
        .ok_or(Error::CycleTooLarge { n, k })?;
    let mut g = WeightedGraph::complete(n);
    for u in 0..len {
        g.remove_edge(u, (u + 1) % len);
    }
    Ok(g)
}
