//! Shared test oracles, independent of the library's eigendecomposition
//! evolution path: a scaling-and-squaring matrix exponential, a cyclic
//! Jacobi eigensolver, power iteration, and dense grid scans.

#![allow(dead_code)]

use chimera_qsearch::evolution::{cost, success_probability, CostParams, SearchSetup};
use chimera_qsearch::graph::{Graph, VertexId};
use chimera_qsearch::matrix::Matrix;
use num_complex::Complex64;

/// Deterministic splitmix64 stream for reproducible random test points.
pub struct SplitMix64(pub u64);

impl SplitMix64 {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1).
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }
}

fn cmat_mul(n: usize, a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik.norm_sqr() == 0.0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    out
}

fn cmat_one_norm(n: usize, a: &[Complex64]) -> f64 {
    (0..n)
        .map(|j| (0..n).map(|i| a[i * n + j].norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// exp(M) for a complex n x n matrix by scaling and squaring: scale M down
/// to 1-norm <= 0.25, run the Taylor series to machine precision, then
/// square back up.
pub fn complex_matrix_exp(n: usize, m: &[Complex64]) -> Vec<Complex64> {
    let norm = cmat_one_norm(n, m);
    let squarings = if norm > 0.25 {
        (norm / 0.25).log2().ceil() as u32
    } else {
        0
    };
    let scale = 0.5f64.powi(squarings as i32);
    let scaled: Vec<Complex64> = m.iter().map(|&x| x * scale).collect();

    let mut result = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        result[i * n + i] = Complex64::new(1.0, 0.0);
    }
    let mut term = result.clone();
    for k in 1..200 {
        term = cmat_mul(n, &term, &scaled);
        for x in &mut term {
            *x /= k as f64;
        }
        for (r, &t) in result.iter_mut().zip(&term) {
            *r += t;
        }
        if cmat_one_norm(n, &term) < 1e-22 {
            break;
        }
    }
    for _ in 0..squarings {
        result = cmat_mul(n, &result, &result);
    }
    result
}

/// p(t) = |<w|exp(-itH)|psi_0>|^2 computed through the explicit matrix
/// exponential of -itH.
pub fn matexp_success_probability(g: &Graph, w: VertexId, gamma: f64, t: f64) -> f64 {
    let n = g.vertex_count();
    let mut m = vec![Complex64::new(0.0, 0.0); n * n];
    // -i*t*H with H = -(gamma*A + |w><w|)
    let phase = Complex64::new(0.0, t);
    for &(u, v) in g.edges() {
        m[u as usize * n + v as usize] = phase * gamma;
        m[v as usize * n + u as usize] = phase * gamma;
    }
    m[w.0 * n + w.0] = phase;
    let u = complex_matrix_exp(n, &m);
    let inv_sqrt_n = 1.0 / (n as f64).sqrt();
    let amp: Complex64 = (0..n).map(|v| u[w.0 * n + v] * inv_sqrt_n).sum();
    amp.norm_sqr()
}

/// Cyclic Jacobi eigensolver (Numerical Recipes rotations). Returns
/// (value, eigenvector) pairs sorted by descending eigenvalue.
pub fn jacobi_eigen(a: &Matrix<f64>) -> Vec<(f64, Vec<f64>)> {
    let n = a.n();
    let mut m: Vec<Vec<f64>> = (0..n).map(|i| a.row(i).to_vec()).collect();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let fro: f64 = m.iter().flatten().map(|x| x * x).sum::<f64>().sqrt();

    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|p| ((p + 1)..n).map(move |q| (p, q)))
            .map(|(p, q)| m[p][q] * m[p][q])
            .sum::<f64>()
            .sqrt();
        if off <= 1e-14 * fro.max(1.0) {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[p][q];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);

                let app = m[p][p];
                let aqq = m[q][q];
                m[p][p] = app - t * apq;
                m[q][q] = aqq + t * apq;
                m[p][q] = 0.0;
                m[q][p] = 0.0;
                for i in 0..n {
                    if i == p || i == q {
                        continue;
                    }
                    let aip = m[i][p];
                    let aiq = m[i][q];
                    m[i][p] = aip - s * (aiq + tau * aip);
                    m[p][i] = m[i][p];
                    m[i][q] = aiq + s * (aip - tau * aiq);
                    m[q][i] = m[i][q];
                }
                for row in v.iter_mut() {
                    let vip = row[p];
                    let viq = row[q];
                    row[p] = vip - s * (viq + tau * vip);
                    row[q] = viq + s * (vip - tau * viq);
                }
            }
        }
    }

    let mut pairs: Vec<(f64, Vec<f64>)> = (0..n)
        .map(|j| (m[j][j], (0..n).map(|i| v[i][j]).collect()))
        .collect();
    pairs.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
    pairs
}

/// Top |eigenvalue| of the adjacency matrix by shifted power iteration
/// (the shift breaks the +-lambda tie of bipartite spectra).
pub fn power_iteration_norm(g: &Graph) -> f64 {
    let n = g.vertex_count();
    let shift = g.max_degree() as f64 + 1.0;
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    let mut lambda = 0.0f64;
    for _ in 0..200_000 {
        let mut y = vec![0.0f64; n];
        for u in 0..n {
            let mut acc = shift * x[u];
            for &v in g.neighbors(VertexId(u)) {
                acc += x[v as usize];
            }
            y[u] = acc;
        }
        let norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        for v in &mut y {
            *v /= norm;
        }
        let rayleigh: f64 = {
            let mut acc = 0.0;
            for u in 0..n {
                let mut row = shift * y[u];
                for &v in g.neighbors(VertexId(u)) {
                    row += y[v as usize];
                }
                acc += y[u] * row;
            }
            acc
        };
        if (rayleigh - lambda).abs() <= 1e-13 * rayleigh.abs().max(1.0) {
            return rayleigh - shift;
        }
        lambda = rayleigh;
        x = y;
    }
    lambda - shift
}

/// Minimum of the penalized cost over a dense (gamma, t) grid.
pub fn dense_cost_minimum(
    g: &Graph,
    w: VertexId,
    cp: &CostParams<f64>,
    t_bound: f64,
    gamma_steps: usize,
    t_steps: usize,
) -> f64 {
    let mut best = f64::INFINITY;
    for m in 1..=gamma_steps {
        let gamma = m as f64 / gamma_steps as f64;
        let setup = chimera_qsearch::evolution::build_setup(g, w, gamma).unwrap();
        for j in 0..=t_steps {
            let t = t_bound * j as f64 / t_steps as f64;
            if let Ok(c) = cost(&setup, t, cp) {
                best = best.min(c);
            }
        }
    }
    best
}

/// Scans t/p over [0, t_max] for a fixed setup and returns
/// (best ratio, minimizer time, probability there).
pub fn dense_ratio_scan(setup: &SearchSetup<f64>, t_max: f64, steps: usize) -> (f64, f64, f64) {
    let mut best = (f64::INFINITY, 0.0, 0.0);
    for j in 1..=steps {
        let t = t_max * j as f64 / steps as f64;
        let p = success_probability(setup, t).unwrap();
        if p > 0.0 && t / p < best.0 {
            best = (t / p, t, p);
        }
    }
    best
}
