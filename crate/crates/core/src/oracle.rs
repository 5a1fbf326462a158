//! Reference transition operator computed without any eigendecomposition.
//!
//! `exp(itM)` is evaluated by scaling and squaring a truncated Taylor series
//! on the dense matrix. It is slower and less accurate than the spectral
//! route, which is the point: the two share no code, so agreement between
//! them is evidence that both are right.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::graph::RealPureState;

/// `exp(i t M)` for a real square matrix `M`.
pub fn expm_series(m: &DMatrix<f64>, t: f64) -> DMatrix<Complex64> {
    let n = m.nrows();
    let scaled_norm = m.row_iter().map(|r| r.iter().map(|v| v.abs()).sum::<f64>()).fold(0.0, f64::max) * t.abs();
    // bring ‖tM‖ below 1/2 so the series converges in a few dozen terms
    let squarings = if scaled_norm > 0.5 {
        (scaled_norm / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let factor = Complex64::new(0.0, t / 2f64.powi(squarings));
    let b: DMatrix<Complex64> = m.map(|v| factor * v);

    let mut sum = DMatrix::<Complex64>::identity(n, n);
    let mut term = DMatrix::<Complex64>::identity(n, n);
    for k in 1..=60 {
        term = &term * &b / Complex64::from(k as f64);
        sum += &term;
        if term.iter().map(|z| z.norm()).fold(0.0, f64::max) < 1e-20 {
            break;
        }
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

/// `exp(i t M) x`.
pub fn evolve_series(m: &DMatrix<f64>, t: f64, x: &RealPureState) -> DVector<Complex64> {
    let xc: DVector<Complex64> = x.vector().map(Complex64::from);
    expm_series(m, t) * xc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k2_rotation() {
        // exp(itX) = cos t I + i sin t X
        let x = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        for t in [0.0, 0.7, 1.5, 13.0, -4.2] {
            let u = expm_series(&x, t);
            assert!((u[(0, 0)] - Complex64::new(t.cos(), 0.0)).norm() < 1e-12);
            assert!((u[(0, 1)] - Complex64::new(0.0, t.sin())).norm() < 1e-12);
        }
    }

    #[test]
    fn diagonal() {
        let d = DMatrix::from_diagonal(&DVector::from_vec(vec![0.0, 1.0, 3.0]));
        let u = expm_series(&d, 2.0);
        for (k, l) in [0.0, 1.0, 3.0].iter().enumerate() {
            assert!((u[(k, k)] - Complex64::from_polar(1.0, 2.0 * l)).norm() < 1e-12);
        }
    }
}
