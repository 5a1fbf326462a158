use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use super::WeightedGraph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StateKind {
    Vertex,
    Pair,
    SPair,
    General,
}

/// A unit vector in `ℝⁿ` standing for the rank-one state `x xᵀ`.
#[derive(Debug, Clone, PartialEq)]
pub struct RealPureState {
    vec: DVector<f64>,
    kind: StateKind,
}

fn check(n: usize, v: usize) -> Result<()> {
    if v < n {
        Ok(())
    } else {
        Err(Error::VertexOutOfRange { vertex: v, n })
    }
}

impl RealPureState {
    /// Characteristic vector `e_a`.
    pub fn vertex(n: usize, a: usize) -> Result<Self> {
        check(n, a)?;
        let mut vec = DVector::zeros(n);
        vec[a] = 1.0;
        Ok(Self {
            vec,
            kind: StateKind::Vertex,
        })
    }

    /// `(e_a - e_b)/√2`.
    pub fn pair(n: usize, a: usize, b: usize) -> Result<Self> {
        check(n, a)?;
        check(n, b)?;
        if a == b {
            return Err(Error::EqualVertices(a));
        }
        let mut vec = DVector::zeros(n);
        vec[a] = std::f64::consts::FRAC_1_SQRT_2;
        vec[b] = -std::f64::consts::FRAC_1_SQRT_2;
        Ok(Self {
            vec,
            kind: StateKind::Pair,
        })
    }

    /// `(e_a + s e_b)/√(1+s²)`.
    pub fn s_pair(n: usize, a: usize, b: usize, s: f64) -> Result<Self> {
        check(n, a)?;
        check(n, b)?;
        if a == b {
            return Err(Error::EqualVertices(a));
        }
        if s == 0.0 || !s.is_finite() {
            return Err(Error::BadCoefficient(s));
        }
        if s == -1.0 {
            return Self::pair(n, a, b);
        }
        let norm = (1.0 + s * s).sqrt();
        let mut vec = DVector::zeros(n);
        vec[a] = 1.0 / norm;
        vec[b] = s / norm;
        Ok(Self {
            vec,
            kind: StateKind::SPair,
        })
    }

    /// Normalizes an arbitrary nonzero real vector.
    pub fn from_vec(v: DVector<f64>) -> Result<Self> {
        let norm = v.norm();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::ZeroVector);
        }
        Ok(Self {
            vec: v / norm,
            kind: StateKind::General,
        })
    }

    pub fn from_slice(v: &[f64]) -> Result<Self> {
        Self::from_vec(DVector::from_column_slice(v))
    }

    pub fn dim(&self) -> usize {
        self.vec.len()
    }

    pub fn kind(&self) -> StateKind {
        self.kind
    }

    pub fn vector(&self) -> &DVector<f64> {
        &self.vec
    }

    pub fn dot(&self, other: &RealPureState) -> f64 {
        self.vec.dot(&other.vec)
    }

    /// Sum of entries, `1ᵀx`.
    pub fn total(&self) -> f64 {
        self.vec.sum()
    }

    /// Embeds this state into `ℝ^n_total`, entry `i` going to `embedding[i]`.
    ///
    /// This is the padded vector `x̃ = [x; 0]` under an arbitrary vertex placement.
    pub fn lift(&self, n_total: usize, embedding: &[usize]) -> Result<Self> {
        if embedding.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: embedding.len(),
            });
        }
        let mut vec = DVector::zeros(n_total);
        for (i, &target) in embedding.iter().enumerate() {
            check(n_total, target)?;
            vec[target] = self.vec[i];
        }
        Ok(Self { vec, kind: self.kind })
    }

    /// Kronecker product `self ⊗ other`, first factor major.
    pub fn tensor(&self, other: &RealPureState) -> Self {
        let (m, n) = (self.dim(), other.dim());
        let mut vec = DVector::zeros(m * n);
        for i in 0..m {
            for j in 0..n {
                vec[i * n + j] = self.vec[i] * other.vec[j];
            }
        }
        Self {
            vec,
            kind: StateKind::General,
        }
    }

    pub fn negated(&self) -> Self {
        Self {
            vec: -&self.vec,
            kind: self.kind,
        }
    }
}

pub fn vertex_state(g: &WeightedGraph, a: usize) -> Result<RealPureState> {
    RealPureState::vertex(g.order(), a)
}

pub fn pair_state(g: &WeightedGraph, a: usize, b: usize) -> Result<RealPureState> {
    RealPureState::pair(g.order(), a, b)
}

pub fn s_pair_state(g: &WeightedGraph, a: usize, b: usize, s: f64) -> Result<RealPureState> {
    RealPureState::s_pair(g.order(), a, b, s)
}
