//! Walk-regularity and the scaled permutation `U(τ) = γP` behind vertex PST.
//!
//! Permutation extraction works on any graph; walk-regularity is reported as
//! context only, since it is necessary but not sufficient for lying in a
//! homogeneous coherent algebra.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::error::{Error, Result};
use crate::graph::{HamiltonianModel, RealPureState, WeightedGraph};
use crate::spectral::SpectralDecomposition;

/// Default per-entry tolerance for `|U(τ) - γP|`.
pub const PERMUTATION_TOL: f64 = 1e-7;

/// True iff every power `A^k` has constant diagonal (checked for `k = 2..n-1`).
pub fn is_walk_regular(g: &WeightedGraph) -> Result<bool> {
    if !g.is_unweighted() {
        return Err(Error::WeightedInput);
    }
    let n = g.order();
    let a = g.matrix(HamiltonianModel::Adjacency);
    let mut power = a.clone();
    for _ in 2..n {
        power = &power * &a;
        let d0 = power[(0, 0)];
        if (1..n).any(|i| (power[(i, i)] - d0).abs() > 1e-9 * d0.abs().max(1.0)) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PermutationCertificate {
    pub gamma: Complex64,
    /// `U(τ) e_j = γ e_{perm[j]}`.
    pub perm: Vec<usize>,
    pub order2: bool,
    pub fixed_point_free: bool,
    pub residual: f64,
}

impl PermutationCertificate {
    pub fn image(&self, v: usize) -> usize {
        self.perm[v]
    }
}

impl Serialize for PermutationCertificate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(serde::Serialize)]
        struct Gamma {
            re: f64,
            im: f64,
        }
        let mut st = s.serialize_struct("PermutationCertificate", 5)?;
        st.serialize_field(
            "gamma",
            &Gamma {
                re: self.gamma.re,
                im: self.gamma.im,
            },
        )?;
        st.serialize_field("perm", &self.perm)?;
        st.serialize_field("order2", &self.order2)?;
        st.serialize_field("fixed_point_free", &self.fixed_point_free)?;
        st.serialize_field("residual", &self.residual)?;
        st.end()
    }
}

/// Closest scaled permutation to `U(τ)`, whatever its residual. Used as
/// evidence at near-transfer times where no exact certificate exists.
#[derive(Debug, Clone, PartialEq)]
pub struct PermutationEstimate {
    /// `None` when the column-wise dominant entries do not form a permutation.
    pub perm: Option<Vec<usize>>,
    pub gamma: Complex64,
    pub residual: f64,
}

fn scaled_permutation_fit(u: &DMatrix<Complex64>) -> PermutationEstimate {
    let n = u.nrows();
    let mut perm = Vec::with_capacity(n);
    for j in 0..n {
        let col = u.column(j);
        let (i, _) = col
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
            .expect("non-empty column");
        perm.push(i);
    }
    let mut seen = vec![false; n];
    let bijective = perm.iter().all(|&i| !std::mem::replace(&mut seen[i], true));

    let pivot = u[(perm[0], 0)];
    let gamma = if pivot.norm() > 0.0 {
        pivot / pivot.norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    let mut residual = 0.0f64;
    for j in 0..n {
        for i in 0..n {
            let target = if bijective && perm[j] == i {
                gamma
            } else {
                Complex64::new(0.0, 0.0)
            };
            residual = residual.max((u[(i, j)] - target).norm());
        }
    }
    PermutationEstimate {
        perm: bijective.then_some(perm),
        gamma,
        residual: if bijective { residual } else { residual.max(1.0) },
    }
}

pub fn permutation_estimate(dec: &SpectralDecomposition, tau: f64) -> PermutationEstimate {
    scaled_permutation_fit(&dec.transition_matrix(tau))
}

/// `U(τ) = γP` for a permutation matrix `P`, if that holds entrywise within `tol`.
pub fn extract_permutation(dec: &SpectralDecomposition, tau: f64, tol: f64) -> Result<Option<PermutationCertificate>> {
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(Error::InvalidParameter(format!("time must be positive, got {tau}")));
    }
    let est = permutation_estimate(dec, tau);
    let Some(perm) = est.perm else {
        return Ok(None);
    };
    if est.residual > tol {
        return Ok(None);
    }
    let order2 = perm.iter().enumerate().all(|(i, &p)| perm[p] == i);
    let fixed_point_free = perm.iter().enumerate().all(|(i, &p)| p != i);
    Ok(Some(PermutationCertificate {
        gamma: est.gamma,
        perm,
        order2,
        fixed_point_free,
        residual: est.residual,
    }))
}

/// Source and target s-pair states carried into each other by `U(τ) = γP`:
/// `(e_a + s e_b)/√(1+s²)` and `(e_{P a} + s e_{P b})/√(1+s²)`.
pub fn s_pair_transfer(
    cert: &PermutationCertificate,
    a: usize,
    b: usize,
    s: f64,
) -> Result<(RealPureState, RealPureState)> {
    if !(cert.order2 && cert.fixed_point_free) {
        return Err(Error::Hypothesis(
            "permutation must be a fixed-point-free involution".into(),
        ));
    }
    let n = cert.perm.len();
    for v in [a, b] {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
    }
    if a == b {
        return Err(Error::EqualVertices(a));
    }
    if cert.perm[a] == b {
        return Err(Error::Hypothesis(format!("vertices {a} and {b} already admit vertex PST")));
    }
    let source = RealPureState::s_pair(n, a, b, s)?;
    let target = RealPureState::s_pair(n, cert.perm[a], cert.perm[b], s)?;
    Ok((source, target))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    #[test]
    fn walk_regular_examples() {
        assert!(is_walk_regular(&WeightedGraph::cycle(4)).unwrap());
        assert!(!is_walk_regular(&WeightedGraph::path(3)).unwrap());
        assert!(is_walk_regular(&WeightedGraph::complete_bipartite(3, 3)).unwrap());
        let w = WeightedGraph::from_edges(2, [(0, 1, 2.0)]).unwrap();
        assert!(matches!(is_walk_regular(&w), Err(Error::WeightedInput)));
    }

    #[test]
    fn c4_permutation() {
        let d = SpectralDecomposition::of_graph(&WeightedGraph::cycle(4), HamiltonianModel::Adjacency).unwrap();
        let cert = extract_permutation(&d, FRAC_PI_2, PERMUTATION_TOL).unwrap().unwrap();
        assert!((cert.gamma + 1.0).norm() < 1e-12);
        assert_eq!(cert.perm, vec![2, 3, 0, 1]);
        assert!(cert.order2 && cert.fixed_point_free);
        assert!(extract_permutation(&d, FRAC_PI_4, PERMUTATION_TOL).unwrap().is_none());
    }

    #[test]
    fn k2_permutation() {
        let d = SpectralDecomposition::of_graph(&WeightedGraph::complete(2), HamiltonianModel::Adjacency).unwrap();
        let cert = extract_permutation(&d, FRAC_PI_2, PERMUTATION_TOL).unwrap().unwrap();
        assert!((cert.gamma - Complex64::i()).norm() < 1e-12);
        assert_eq!(cert.perm, vec![1, 0]);
    }

    #[test]
    fn s_pair_targets() {
        let d = SpectralDecomposition::of_graph(&WeightedGraph::cycle(4), HamiltonianModel::Adjacency).unwrap();
        let cert = extract_permutation(&d, FRAC_PI_2, PERMUTATION_TOL).unwrap().unwrap();
        let (x, y) = s_pair_transfer(&cert, 0, 1, 1.0).unwrap();
        assert_eq!(x, RealPureState::s_pair(4, 0, 1, 1.0).unwrap());
        assert_eq!(y, RealPureState::s_pair(4, 2, 3, 1.0).unwrap());
        let (x, _) = s_pair_transfer(&cert, 0, 1, -1.0).unwrap();
        assert_eq!(x, RealPureState::pair(4, 0, 1).unwrap());
        assert!(matches!(s_pair_transfer(&cert, 0, 2, 1.0), Err(Error::Hypothesis(_))));

        let mut not_inv = cert.clone();
        not_inv.order2 = false;
        assert!(s_pair_transfer(&not_inv, 0, 1, 1.0).is_err());
    }
}
