//! Search Hamiltonian assembly and success-probability evaluation.
//!
//! The walk evolves under H = -(gamma*A + |w><w|) from the uniform
//! superposition. H is diagonalized once per hopping rate; each
//! probability query then costs O(n): with eigenvalues lambda_j, marked
//! overlaps w_j and uniform overlaps s_j,
//! p(t) = |sum_j exp(-i*t*lambda_j) * w_j * s_j|^2.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::matrix::Matrix;
use crate::scalar::{cast, Scalar};
use crate::spectral::{eigendecompose, EigenSystem};

/// Diagonalized search Hamiltonian for one (graph, marked vertex, gamma)
/// triple. Immutable; probability queries are pure and thread-safe.
#[derive(Debug, Clone)]
pub struct SearchSetup<T> {
    n: usize,
    gamma: T,
    marked: VertexId,
    spectrum: EigenSystem<T>,
    overlap_w: Vec<T>,
    overlap_s: Vec<T>,
}

impl<T: Scalar> SearchSetup<T> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gamma(&self) -> T {
        self.gamma
    }

    pub fn marked(&self) -> VertexId {
        self.marked
    }

    /// Spectrum of H = -(gamma*A + |w><w|), eigenvalues descending.
    pub fn spectrum(&self) -> &EigenSystem<T> {
        &self.spectrum
    }

    /// Per-eigenvector components at the marked vertex.
    pub fn overlap_w(&self) -> &[T] {
        &self.overlap_w
    }

    /// Per-eigenvector inner products with the uniform state.
    pub fn overlap_s(&self) -> &[T] {
        &self.overlap_s
    }

    /// Evolved state in the vertex basis as (re, im) pairs. O(n^2); test
    /// and diagnostics path, not used by the optimizer loop.
    pub fn state_amplitudes(&self, t: T) -> Result<Vec<(T, T)>> {
        if t < T::zero() {
            return Err(Error::NegativeTime {
                t: t.to_f64().unwrap_or(f64::NAN),
            });
        }
        let mut amps = vec![(T::zero(), T::zero()); self.n];
        for j in 0..self.n {
            let phase = -t * self.spectrum.values()[j];
            let (re, im) = (
                phase.cos() * self.overlap_s[j],
                phase.sin() * self.overlap_s[j],
            );
            let v = self.spectrum.vector(j);
            for (amp, &vj) in amps.iter_mut().zip(v) {
                amp.0 = amp.0 + re * vj;
                amp.1 = amp.1 + im * vj;
            }
        }
        Ok(amps)
    }
}

/// Penalty model for the repeated-measurement cost: t_penalty = c*ln(n).
#[derive(Debug, Clone, Copy)]
pub struct CostParams<T> {
    /// Nonnegative penalty coefficient c.
    pub coefficient: T,
}

impl<T: Scalar> CostParams<T> {
    pub fn new(coefficient: T) -> Self {
        CostParams { coefficient }
    }

    pub fn penalty(&self, n: usize) -> T {
        self.coefficient * T::from_usize(n).unwrap().ln()
    }
}

impl<T: Scalar> Default for CostParams<T> {
    fn default() -> Self {
        CostParams {
            coefficient: T::one(),
        }
    }
}

/// Builds and diagonalizes H = -(gamma*A + |w><w|).
pub fn build_setup<T: Scalar>(g: &Graph, w: VertexId, gamma: T) -> Result<SearchSetup<T>> {
    if gamma < T::zero() {
        return Err(Error::NegativeGamma {
            gamma: gamma.to_f64().unwrap_or(f64::NAN),
        });
    }
    let n = g.vertex_count();
    if w.0 >= n {
        return Err(Error::VertexOutOfRange { id: w.0, n });
    }

    let mut h: Matrix<T> = Matrix::zeros(n);
    for &(u, v) in g.edges() {
        h.set(u as usize, v as usize, -gamma);
        h.set(v as usize, u as usize, -gamma);
    }
    h.set(w.0, w.0, -T::one());

    let spectrum = eigendecompose(&h)?;
    let inv_sqrt_n = T::one() / T::from_usize(n).unwrap().sqrt();
    let overlap_w: Vec<T> = (0..n).map(|j| spectrum.vector(j)[w.0]).collect();
    let overlap_s: Vec<T> = (0..n)
        .map(|j| spectrum.vector(j).iter().copied().sum::<T>() * inv_sqrt_n)
        .collect();

    debug_assert!({
        let sw: T = overlap_w.iter().map(|&x| x * x).sum();
        let ss: T = overlap_s.iter().map(|&x| x * x).sum();
        let tol = cast::<T>(1e-10).max(T::epsilon() * cast(1e4));
        (sw - T::one()).abs() < tol && (ss - T::one()).abs() < tol
    });

    Ok(SearchSetup {
        n,
        gamma,
        marked: w,
        spectrum,
        overlap_w,
        overlap_s,
    })
}

// Round-off window: probabilities within this of [0,1] are clamped, larger
// excursions indicate a broken spectrum.
const CLAMP_WINDOW: f64 = 1e-9;

// Probabilities below this would overflow the cost ratio.
pub(crate) const MIN_PROBABILITY: f64 = 1e-300;

/// Success probability p(t) = |<w|exp(-itH)|psi_0>|^2.
pub fn success_probability<T: Scalar>(s: &SearchSetup<T>, t: T) -> Result<T> {
    if t < T::zero() {
        return Err(Error::NegativeTime {
            t: t.to_f64().unwrap_or(f64::NAN),
        });
    }
    let mut re = T::zero();
    let mut im = T::zero();
    for j in 0..s.n {
        let weight = s.overlap_w[j] * s.overlap_s[j];
        let phase = -t * s.spectrum.values()[j];
        re = re + weight * phase.cos();
        im = im + weight * phase.sin();
    }
    let p = re * re + im * im;
    if p > T::one() {
        if p > T::one() + cast(CLAMP_WINDOW) {
            return Err(Error::UnitarityViolation {
                p: p.to_f64().unwrap_or(f64::NAN),
            });
        }
        return Ok(T::one());
    }
    Ok(p)
}

/// Penalized runtime cost (t + c*ln(n))/p(t).
pub fn cost<T: Scalar>(s: &SearchSetup<T>, t: T, cp: &CostParams<T>) -> Result<T> {
    let p = success_probability(s, t)?;
    if p < cast(MIN_PROBABILITY) {
        return Err(Error::DegenerateProbability {
            p: p.to_f64().unwrap_or(0.0),
        });
    }
    let value = (t + cp.penalty(s.n)) / p;
    if !value.is_finite() {
        return Err(Error::DegenerateProbability {
            p: p.to_f64().unwrap_or(0.0),
        });
    }
    Ok(value)
}
