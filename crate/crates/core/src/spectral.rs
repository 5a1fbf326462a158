//! Eigenvalues grouped into distinct values, their orthogonal projections, and
//! the transition operator `U(t) = Σ_k e^{itλ_k} E_k`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graph::{HamiltonianModel, RealPureState, WeightedGraph};

/// Relative gap below which neighbouring eigenvalues are merged.
pub const DEFAULT_GROUPING_TOL: f64 = 1e-8;

/// `‖E_k x‖` above this counts as `λ_k ∈ σ_x`.
pub const SUPPORT_THRESHOLD: f64 = 1e-8;

/// Norms within this band around the threshold are reported as borderline.
pub const BORDERLINE_BAND: (f64, f64) = (1e-10, 1e-6);

#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    model: Option<HamiltonianModel>,
    eigenvalues: Vec<f64>,
    multiplicities: Vec<usize>,
    projections: Vec<DMatrix<f64>>,
    scale: f64,
}

fn check_symmetric(m: &DMatrix<f64>) -> Result<()> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.nrows(),
            got: m.ncols(),
        });
    }
    if m.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidParameter("matrix has non-finite entries".into()));
    }
    let n = m.nrows();
    let mut asym = 0.0f64;
    for i in 0..n {
        for j in i + 1..n {
            asym = asym.max((m[(i, j)] - m[(j, i)]).abs());
        }
    }
    if asym > 1e-12 * m.amax().max(1.0) {
        return Err(Error::NotSymmetric(asym));
    }
    Ok(())
}

impl SpectralDecomposition {
    /// Decomposes a real symmetric matrix.
    ///
    /// Eigenvalues closer than `grouping_tol * max(1, max|λ|)` to their
    /// predecessor are merged into one distinct eigenvalue (the mean of the
    /// group) whose projection is built from all of the group's eigenvectors.
    pub fn new(matrix: &DMatrix<f64>, grouping_tol: f64) -> Result<Self> {
        check_symmetric(matrix)?;
        let n = matrix.nrows();
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let eig = SymmetricEigen::try_new(matrix.clone(), f64::EPSILON, 1000 * n.max(10)).ok_or(Error::NoConvergence)?;

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let scale = eig.eigenvalues.amax();
        let gap = grouping_tol * scale.max(1.0);

        let mut groups: Vec<Vec<usize>> = Vec::new();
        for &k in &order {
            match groups.last_mut() {
                Some(g) if eig.eigenvalues[k] - eig.eigenvalues[*g.last().unwrap()] < gap => g.push(k),
                _ => groups.push(vec![k]),
            }
        }

        let mut eigenvalues = Vec::with_capacity(groups.len());
        let mut multiplicities = Vec::with_capacity(groups.len());
        let mut projections = Vec::with_capacity(groups.len());
        for group in groups {
            let mean = group.iter().map(|&k| eig.eigenvalues[k]).sum::<f64>() / group.len() as f64;
            let mut proj = DMatrix::zeros(n, n);
            for &k in &group {
                let v = eig.eigenvectors.column(k);
                proj.ger(1.0, &v, &v, 1.0);
            }
            // symmetrize away rounding in the rank-one updates
            let proj = (&proj + proj.transpose()) * 0.5;
            eigenvalues.push(mean);
            multiplicities.push(group.len());
            projections.push(proj);
        }

        Ok(Self {
            model: None,
            eigenvalues,
            multiplicities,
            projections,
            scale,
        })
    }

    /// Decomposition of `M(g)` with the default grouping tolerance.
    pub fn of_graph(g: &WeightedGraph, model: HamiltonianModel) -> Result<Self> {
        let mut dec = Self::new(&g.matrix(model), DEFAULT_GROUPING_TOL)?;
        dec.model = Some(model);
        Ok(dec)
    }

    pub fn model(&self) -> Option<HamiltonianModel> {
        self.model
    }

    /// Distinct eigenvalues, strictly increasing.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    pub fn projections(&self) -> &[DMatrix<f64>] {
        &self.projections
    }

    /// Spectral radius `max|λ|`.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn dim(&self) -> usize {
        self.projections.first().map_or(0, |p| p.nrows())
    }

    /// `Σ λ_k E_k`.
    pub fn reconstruct(&self) -> DMatrix<f64> {
        let n = self.dim();
        self.eigenvalues
            .iter()
            .zip(&self.projections)
            .fold(DMatrix::zeros(n, n), |acc, (&l, p)| acc + p * l)
    }

    fn check_dim(&self, x: &RealPureState) -> Result<()> {
        if x.dim() == self.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.dim(),
            })
        }
    }

    /// The components `E_k x` for every distinct eigenvalue.
    pub fn components(&self, x: &RealPureState) -> Result<Vec<DVector<f64>>> {
        self.check_dim(x)?;
        Ok(self.projections.iter().map(|p| p * x.vector()).collect())
    }

    /// Full transition matrix `U(t)`.
    pub fn transition_matrix(&self, t: f64) -> DMatrix<Complex64> {
        let n = self.dim();
        let mut u = DMatrix::<Complex64>::zeros(n, n);
        for (&l, p) in self.eigenvalues.iter().zip(&self.projections) {
            let phase = Complex64::from_polar(1.0, t * l);
            u.zip_apply(p, |acc, e| *acc += phase * e);
        }
        u
    }
}

/// Convenience alias for [`SpectralDecomposition::new`].
pub fn eigendecompose(matrix: &DMatrix<f64>, grouping_tol: f64) -> Result<SpectralDecomposition> {
    SpectralDecomposition::new(matrix, grouping_tol)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupportEntry {
    /// Position in [`SpectralDecomposition::eigenvalues`].
    pub index: usize,
    pub eigenvalue: f64,
    /// `‖E_k x‖`.
    pub norm: f64,
}

/// The eigenvalue support `σ_x` of a state.
#[derive(Debug, Clone, PartialEq)]
pub struct Support {
    pub entries: Vec<SupportEntry>,
    /// Eigenvalues whose projection norm lies in [`BORDERLINE_BAND`]; the
    /// in/out classification of these is sensitive to rounding.
    pub borderline: Vec<SupportEntry>,
}

impl Support {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.eigenvalue).collect()
    }

    pub fn indices(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.index).collect()
    }

    pub fn contains_index(&self, index: usize) -> bool {
        self.entries.iter().any(|e| e.index == index)
    }
}

pub fn support(dec: &SpectralDecomposition, x: &RealPureState) -> Result<Support> {
    let comps = dec.components(x)?;
    let mut entries = Vec::new();
    let mut borderline = Vec::new();
    for (index, c) in comps.iter().enumerate() {
        let entry = SupportEntry {
            index,
            eigenvalue: dec.eigenvalues[index],
            norm: c.norm(),
        };
        if entry.norm > SUPPORT_THRESHOLD {
            entries.push(entry);
        }
        if entry.norm > BORDERLINE_BAND.0 && entry.norm < BORDERLINE_BAND.1 {
            borderline.push(entry);
        }
    }
    Ok(Support { entries, borderline })
}

/// True when `x` is an eigenvector, i.e. its support is a single eigenvalue.
pub fn is_fixed(dec: &SpectralDecomposition, x: &RealPureState) -> Result<bool> {
    Ok(support(dec, x)?.len() == 1)
}

/// `U(t) x`.
pub fn evolve(dec: &SpectralDecomposition, t: f64, x: &RealPureState) -> Result<DVector<Complex64>> {
    let comps = dec.components(x)?;
    let mut out = DVector::<Complex64>::zeros(dec.dim());
    for (&l, c) in dec.eigenvalues.iter().zip(&comps) {
        let phase = Complex64::from_polar(1.0, t * l);
        out.zip_apply(c, |acc, e| *acc += phase * e);
    }
    Ok(out)
}

/// Precomputed `yᵀ U(t) x = Σ_k e^{itλ_k} (yᵀ E_k x)` for fast time sweeps.
#[derive(Debug, Clone)]
pub struct TransitionAmplitude {
    frequencies: Vec<f64>,
    weights: Vec<f64>,
}

impl TransitionAmplitude {
    pub fn new(dec: &SpectralDecomposition, x: &RealPureState, y: &RealPureState) -> Result<Self> {
        let comps = dec.components(x)?;
        dec.check_dim(y)?;
        let (frequencies, weights) = dec
            .eigenvalues
            .iter()
            .zip(&comps)
            .map(|(&l, c)| (l, y.vector().dot(c)))
            .filter(|&(_, w)| w != 0.0)
            .unzip();
        Ok(Self { frequencies, weights })
    }

    pub fn at(&self, t: f64) -> Complex64 {
        self.frequencies
            .iter()
            .zip(&self.weights)
            .map(|(&l, &w)| Complex64::from_polar(w, t * l))
            .sum()
    }

    pub fn fidelity(&self, t: f64) -> f64 {
        self.at(t).norm()
    }

    /// Largest minus smallest contributing frequency; sets the fastest oscillation.
    pub fn bandwidth(&self) -> f64 {
        let max = self.frequencies.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let min = self.frequencies.iter().copied().fold(f64::INFINITY, f64::min);
        if self.frequencies.is_empty() {
            0.0
        } else {
            max - min
        }
    }
}

/// `yᵀ U(t) x`.
pub fn amplitude(dec: &SpectralDecomposition, t: f64, x: &RealPureState, y: &RealPureState) -> Result<Complex64> {
    Ok(TransitionAmplitude::new(dec, x, y)?.at(t))
}

/// `|yᵀ U(t) x|`.
pub fn fidelity(dec: &SpectralDecomposition, t: f64, x: &RealPureState, y: &RealPureState) -> Result<f64> {
    Ok(amplitude(dec, t, x, y)?.norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::HamiltonianModel::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn dec(g: &WeightedGraph, m: HamiltonianModel) -> SpectralDecomposition {
        SpectralDecomposition::of_graph(g, m).unwrap()
    }

    fn assert_values(got: &[f64], want: &[f64]) {
        assert_eq!(got.len(), want.len(), "{got:?} vs {want:?}");
        for (g, w) in got.iter().zip(want) {
            assert_abs_diff_eq!(g, w, epsilon = 1e-10);
        }
    }

    #[test]
    fn k2_closed_form() {
        let d = dec(&WeightedGraph::complete(2), Adjacency);
        assert_values(d.eigenvalues(), &[-1.0, 1.0]);
        let half = DMatrix::from_row_slice(2, 2, &[0.5, -0.5, -0.5, 0.5]);
        assert!((d.projections()[0].clone() - half).amax() < 1e-12);
    }

    #[test]
    fn p3_laplacian_spectrum() {
        // char poly of [[1,-1,0],[-1,2,-1],[0,-1,1]] is -λ(λ-1)(λ-3)
        let d = dec(&WeightedGraph::path(3), Laplacian);
        assert_values(d.eigenvalues(), &[0.0, 1.0, 3.0]);
    }

    #[test]
    fn c4_adjacency_multiplicity() {
        // 2cos(2πj/4) for j = 0..3
        let d = dec(&WeightedGraph::cycle(4), Adjacency);
        assert_values(d.eigenvalues(), &[-2.0, 0.0, 2.0]);
        assert_eq!(d.multiplicities(), &[1, 2, 1]);
        assert_abs_diff_eq!(d.projections()[1].trace(), 2.0, epsilon = 1e-12);
    }

    #[test]
    fn rejects_non_symmetric() {
        let m = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.5, 0.0]);
        assert!(matches!(eigendecompose(&m, 1e-8), Err(Error::NotSymmetric(_))));
        let r = DMatrix::<f64>::zeros(2, 3);
        assert!(eigendecompose(&r, 1e-8).is_err());
    }

    #[test]
    fn supports() {
        let d = dec(&WeightedGraph::cycle(4), Adjacency);
        let x = RealPureState::pair(4, 0, 1).unwrap();
        let s = support(&d, &x).unwrap();
        assert_values(&s.eigenvalues(), &[-2.0, 0.0]);
        assert!(s.borderline.is_empty());
        assert!(!is_fixed(&d, &x).unwrap());

        let k5 = WeightedGraph::complete(5);
        for m in HamiltonianModel::ALL {
            let d = dec(&k5, m);
            let x = RealPureState::pair(5, 1, 3).unwrap();
            assert!(is_fixed(&d, &x).unwrap());
        }
        let d = dec(&k5, Adjacency);
        assert_values(&support(&d, &RealPureState::pair(5, 0, 4).unwrap()).unwrap().eigenvalues(), &[-1.0]);

        let ones = RealPureState::from_slice(&[1.0; 5]).unwrap();
        assert!(is_fixed(&dec(&WeightedGraph::path(5), Laplacian), &ones).unwrap());
    }

    #[test]
    fn evolve_closed_forms() {
        let d = dec(&WeightedGraph::complete(2), Adjacency);
        let e0 = RealPureState::vertex(2, 0).unwrap();
        let u0 = evolve(&d, 0.0, &e0).unwrap();
        assert_abs_diff_eq!(u0[0].re, 1.0, epsilon = 1e-14);
        let u = evolve(&d, FRAC_PI_2, &e0).unwrap();
        assert!((u[0]).norm() < 1e-12);
        assert!((u[1] - Complex64::i()).norm() < 1e-12);

        let d = dec(&WeightedGraph::cycle(4), Adjacency);
        let x = RealPureState::pair(4, 0, 1).unwrap();
        let u = evolve(&d, FRAC_PI_2, &x).unwrap();
        let want = RealPureState::pair(4, 3, 2).unwrap();
        for k in 0..4 {
            assert!((u[k] - Complex64::from(want.vector()[k])).norm() < 1e-12);
        }
    }

    #[test]
    fn fidelity_cases() {
        let d = dec(&WeightedGraph::cycle(4), Adjacency);
        let x = RealPureState::pair(4, 0, 1).unwrap();
        let y = RealPureState::pair(4, 3, 2).unwrap();
        assert_abs_diff_eq!(fidelity(&d, 0.0, &x, &x).unwrap(), 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(fidelity(&d, FRAC_PI_2, &x, &y).unwrap(), 1.0, epsilon = 1e-12);
        for t in [0.3, 1.1, 2.9] {
            assert_abs_diff_eq!(
                fidelity(&d, t, &x, &y).unwrap(),
                fidelity(&d, -t, &y, &x).unwrap(),
                epsilon = 1e-13
            );
        }
        let k2 = dec(&WeightedGraph::complete(2), Adjacency);
        let e0 = RealPureState::vertex(2, 0).unwrap();
        for t in [0.0, 0.4, 1.0, PI] {
            assert_abs_diff_eq!(fidelity(&k2, t, &e0, &e0).unwrap(), t.cos().abs(), epsilon = 1e-13);
        }
    }

    #[test]
    fn dimension_errors() {
        let d = dec(&WeightedGraph::cycle(4), Adjacency);
        let x = RealPureState::pair(3, 0, 1).unwrap();
        assert!(matches!(evolve(&d, 1.0, &x), Err(Error::DimensionMismatch { .. })));
        assert!(support(&d, &x).is_err());
    }
}
