//! Seeded generators for randomized property checks.
//!
//! A cluster instance is a random connected base graph `G` on at most 12
//! vertices in which a random vertex set `C` has been rewired into a cluster
//! (no edges inside `C`, common neighborhood `S` with per-neighbor weights),
//! together with an inner graph `H` on `C` that has the all-ones vector as an
//! eigenvector of the requested model: any graph for `L`, a circulant (hence
//! regular, possibly with per-distance weights) graph for `A` and `Q`.

use nalgebra::DVector;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::construct::{attach, AttachmentPlan};
use crate::graph::{Cluster, HamiltonianModel, RealPureState, WeightedGraph};

pub const MAX_ORDER: usize = 12;

fn weight(rng: &mut impl Rng, weighted: bool) -> f64 {
    if weighted {
        rng.random_range(0.5..2.0)
    } else {
        1.0
    }
}

/// Random graph where each pair is an edge with probability `p`.
pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64, weighted: bool) -> WeightedGraph {
    let mut g = WeightedGraph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                g.add_edge(u, v, weight(rng, weighted)).expect("fresh pair");
            }
        }
    }
    g
}

/// Circulant graph on `c` vertices with a random connection set; every
/// vertex has the same weighted degree.
pub fn random_circulant(rng: &mut impl Rng, c: usize, weighted: bool) -> WeightedGraph {
    let mut g = WeightedGraph::empty(c);
    for d in 1..=c / 2 {
        if !rng.random_bool(0.6) {
            continue;
        }
        let w = weight(rng, weighted);
        for i in 0..c {
            let j = (i + d) % c;
            if !g.has_edge(i, j) {
                g.add_edge(i, j, w).expect("fresh pair");
            }
        }
    }
    g
}

/// Inner graph on `c` vertices with `1` as an eigenvector of `M(H)`.
pub fn random_inner(rng: &mut impl Rng, c: usize, model: HamiltonianModel, weighted: bool) -> WeightedGraph {
    match model {
        HamiltonianModel::Laplacian => random_graph(rng, c, 0.5, weighted),
        _ => random_circulant(rng, c, weighted),
    }
}

/// Uniformly random direction in `ℝⁿ`.
pub fn random_unit_state(rng: &mut impl Rng, n: usize) -> RealPureState {
    loop {
        let v = DVector::from_fn(n, |_, _| rng.random_range(-1.0..1.0));
        if v.norm() > 1e-3 {
            return RealPureState::from_vec(v).expect("nonzero");
        }
    }
}

/// Random unit vector orthogonal to the all-ones vector (`n ≥ 2`).
pub fn random_balanced_state(rng: &mut impl Rng, n: usize) -> RealPureState {
    loop {
        let mut v = DVector::from_fn(n, |_, _| rng.random_range(-1.0..1.0));
        let mean = v.mean();
        v.add_scalar_mut(-mean);
        if v.norm() > 1e-3 {
            return RealPureState::from_vec(v).expect("nonzero");
        }
    }
}

#[derive(Debug, Clone)]
pub struct ClusterInstance {
    pub model: HamiltonianModel,
    pub base: WeightedGraph,
    pub cluster: Cluster,
    pub inner: WeightedGraph,
    /// `G(H)`, with inner vertex `i` placed on `cluster.members[i]`.
    pub attached: WeightedGraph,
}

impl ClusterInstance {
    /// Pads a state on `H` to `x̃` on `G(H)`.
    pub fn lift(&self, x: &RealPureState) -> RealPureState {
        x.lift(self.attached.order(), &self.cluster.members)
            .expect("inner state has cluster dimension")
    }

    /// `1ᵀz`.
    pub fn shift(&self) -> f64 {
        self.cluster.weight_sum()
    }
}

/// Base graph on `c + s + r` vertices with a planted cluster of size `c`.
pub fn random_base_with_cluster(rng: &mut impl Rng, c: usize, s: usize, r: usize, weighted: bool) -> (WeightedGraph, Vec<usize>) {
    let n = c + s + r;
    // vertex roles before relabeling: C = 0..c, S = c..c+s, rest after
    let mut g = random_graph(rng, n, 0.5, weighted);
    for u in 0..c {
        for v in u + 1..c {
            g.remove_edge(u, v);
        }
        for v in c + s..n {
            g.remove_edge(u, v);
        }
    }
    for v in c..c + s {
        let z = weight(rng, weighted);
        for u in 0..c {
            g.remove_edge(u, v);
            g.add_edge(u, v, z).expect("edge removed above");
        }
    }
    for v in c + s..n {
        if !(c..v).any(|u| g.has_edge(u, v)) {
            let u = rng.random_range(c..v);
            g.add_edge(u, v, weight(rng, weighted)).expect("no edge yet");
        }
    }

    let mut relabel: Vec<usize> = (0..n).collect();
    relabel.shuffle(rng);
    let mut out = WeightedGraph::empty(n);
    for (u, v, w) in g.edges() {
        out.add_edge(relabel[u], relabel[v], w).expect("relabeling is a bijection");
    }
    (out, relabel[..c].to_vec())
}

pub fn random_cluster_instance(rng: &mut impl Rng, model: HamiltonianModel, weighted: bool) -> ClusterInstance {
    let c = rng.random_range(2..=5);
    let s = rng.random_range(1..=3);
    let r = rng.random_range(0..=(MAX_ORDER - c - s).min(4));
    let (base, members) = random_base_with_cluster(rng, c, s, r, weighted);
    let cluster = Cluster::from_members(&base, &members).expect("planted cluster is valid");
    let inner = random_inner(rng, c, model, weighted);
    let plan = AttachmentPlan::in_member_order(base.clone(), cluster.clone(), inner.clone()).expect("sizes agree");
    let attached = attach(&plan).expect("cluster is independent");
    ClusterInstance {
        model,
        base,
        cluster,
        inner,
        attached,
    }
}

/// A graph with a known PST instance planted in a cluster.
#[derive(Debug, Clone)]
pub struct PstInstance {
    pub model: HamiltonianModel,
    pub graph: WeightedGraph,
    pub x: RealPureState,
    pub y: RealPureState,
    pub tau: f64,
    pub description: String,
}

/// Plants one of `C₄`, `2K₂` (pair states across the two edges) or a
/// balanced combination of two pairs on `C₄` into a random base graph. All
/// three transfer at `π/2` under every model because the inner graphs are
/// regular.
pub fn random_pst_instance(rng: &mut impl Rng, model: HamiltonianModel) -> PstInstance {
    let s = rng.random_range(1..=3);
    let r = rng.random_range(0..=4);
    let (base, members) = random_base_with_cluster(rng, 4, s, r, false);
    let cluster = Cluster::from_members(&base, &members).expect("planted cluster is valid");
    let kind = rng.random_range(0..3);
    let (inner, x, y, description) = match kind {
        0 => (
            WeightedGraph::cycle(4),
            RealPureState::pair(4, 0, 1).unwrap(),
            RealPureState::pair(4, 3, 2).unwrap(),
            "C4 pair",
        ),
        1 => (
            WeightedGraph::from_unweighted(4, [(0, 1), (2, 3)]).unwrap(),
            RealPureState::pair(4, 0, 2).unwrap(),
            RealPureState::pair(4, 1, 3).unwrap(),
            "2K2 pair",
        ),
        _ => {
            // (e0 - e1) + s(e2 - e3) is carried to (e2 - e3) + s(e0 - e1)
            let coef = [2.0, 0.5, 3.0, -2.0][rng.random_range(0..4)];
            (
                WeightedGraph::cycle(4),
                RealPureState::from_slice(&[1.0, -1.0, coef, -coef]).unwrap(),
                RealPureState::from_slice(&[coef, -coef, 1.0, -1.0]).unwrap(),
                "C4 balanced combination",
            )
        }
    };
    let plan = AttachmentPlan::in_member_order(base, cluster, inner).expect("sizes agree");
    let graph = attach(&plan).expect("cluster is independent");
    let lift = |v: &RealPureState| v.lift(graph.order(), &plan.embedding).unwrap();
    PstInstance {
        model,
        x: lift(&x),
        y: lift(&y),
        tau: std::f64::consts::FRAC_PI_2,
        description: format!("{description} in cluster of a random base on {} vertices", graph.order()),
        graph,
    }
}
