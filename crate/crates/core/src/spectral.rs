//! Dense real symmetric eigendecomposition and the spectral quantities that
//! gate fast quantum spatial search on a centralized Hamiltonian.
//!
//! The solver is the classic two-stage reduction: Householder
//! tridiagonalization followed by implicit-shift QL with accumulated
//! transformations (after the Algol procedures tred2/tql2 via EISPACK/JAMA).

use crate::analysis::{fit_log_log, FamilySpec, RegressionFit};
use crate::error::{Error, Result};
use crate::graph::{build_chimera, marked_vertex, VertexId};
use crate::matrix::Matrix;
use crate::scalar::{cast, Scalar};

/// Eigenvalues sorted descending with matching orthonormal eigenvectors;
/// `vectors()[i]` pairs with `values()[i]`.
#[derive(Debug, Clone)]
pub struct EigenSystem<T> {
    values: Vec<T>,
    vectors: Vec<Vec<T>>,
}

impl<T: Scalar> EigenSystem<T> {
    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn vectors(&self) -> &[Vec<T>] {
        &self.vectors
    }

    pub fn vector(&self, i: usize) -> &[T] {
        &self.vectors[i]
    }
}

const MAX_QL_SWEEPS: usize = 64;

/// Full eigendecomposition of a symmetric matrix (checked to 1e-12
/// elementwise). Eigenvalues come out descending, ties keeping their
/// pre-sort order; each eigenvector is normalized with its
/// largest-magnitude component positive (first such component on ties) so
/// repeated runs produce identical bytes.
pub fn eigendecompose<T: Scalar>(a: &Matrix<T>) -> Result<EigenSystem<T>> {
    for (idx, x) in a.as_slice().iter().enumerate() {
        if !x.is_finite() {
            let n = a.n();
            return Err(Error::NotSymmetric {
                i: idx / n,
                j: idx % n,
                deviation: f64::NAN,
            });
        }
    }
    a.require_symmetric(cast(1e-12))?;
    let n = a.n();
    if n == 0 {
        return Ok(EigenSystem {
            values: Vec::new(),
            vectors: Vec::new(),
        });
    }

    // Column-major working copy (the input is symmetric, so the row-major
    // slice already is one); tred2's hot loops then run down contiguous
    // columns, and each accumulated transform column doubles as a
    // contiguous eigenvector row for tql2.
    let mut vt: Vec<T> = a.as_slice().to_vec();
    let mut d = vec![T::zero(); n];
    let mut e = vec![T::zero(); n];
    tred2(n, &mut vt, &mut d, &mut e);
    tql2(n, &mut vt, &mut d, &mut e)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[j].partial_cmp(&d[i]).expect("finite eigenvalues"));

    let values: Vec<T> = order.iter().map(|&i| d[i]).collect();
    let vectors: Vec<Vec<T>> = order
        .iter()
        .map(|&i| {
            let mut vec: Vec<T> = vt[i * n..(i + 1) * n].to_vec();
            let mut lead = 0;
            for (k, x) in vec.iter().enumerate() {
                if x.abs() > vec[lead].abs() {
                    lead = k;
                }
            }
            if vec[lead] < T::zero() {
                for x in &mut vec {
                    *x = -*x;
                }
            }
            vec
        })
        .collect();

    Ok(EigenSystem { values, vectors })
}

/// Householder reduction to tridiagonal form with accumulated transforms.
/// `v` is COLUMN-major (entry (row k, col j) at v[j*n + k]), so the O(n^3)
/// loops all run down contiguous columns; on exit column j of the
/// orthogonal transform occupies v[j*n..(j+1)*n], `d` holds the diagonal
/// and `e` the subdiagonal.
fn tred2<T: Scalar>(n: usize, v: &mut [T], d: &mut [T], e: &mut [T]) {
    let idx = |row: usize, col: usize| col * n + row;

    for j in 0..n {
        d[j] = v[idx(n - 1, j)];
    }

    for i in (1..n).rev() {
        let mut scale = T::zero();
        let mut h = T::zero();
        for item in d.iter().take(i) {
            scale = scale + item.abs();
        }
        if scale == T::zero() {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[idx(i - 1, j)];
                v[idx(i, j)] = T::zero();
                v[idx(j, i)] = T::zero();
            }
        } else {
            for k in 0..i {
                d[k] = d[k] / scale;
                h = h + d[k] * d[k];
            }
            let mut f = d[i - 1];
            let mut g = h.sqrt();
            if f > T::zero() {
                g = -g;
            }
            e[i] = scale * g;
            h = h - f * g;
            d[i - 1] = f - g;
            for item in e.iter_mut().take(i) {
                *item = T::zero();
            }

            for j in 0..i {
                f = d[j];
                v[idx(j, i)] = f;
                let mut g = e[j] + v[idx(j, j)] * f;
                let col = &v[idx(j + 1, j)..idx(i, j)];
                for ((&vkj, &dk), ek) in col.iter().zip(&d[j + 1..i]).zip(&mut e[j + 1..i]) {
                    g = g + vkj * dk;
                    *ek = *ek + vkj * f;
                }
                e[j] = g;
            }
            f = T::zero();
            for j in 0..i {
                e[j] = e[j] / h;
                f = f + e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] = e[j] - hh * d[j];
            }
            for j in 0..i {
                let f = d[j];
                let g = e[j];
                let col = &mut v[idx(j, j)..idx(i, j)];
                for ((vkj, &ek), &dk) in col.iter_mut().zip(&e[j..i]).zip(&d[j..i]) {
                    *vkj = *vkj - (f * ek + g * dk);
                }
                d[j] = v[idx(i - 1, j)];
                v[idx(i, j)] = T::zero();
            }
        }
        d[i] = h;
    }

    for i in 0..(n - 1) {
        v[idx(n - 1, i)] = v[idx(i, i)];
        v[idx(i, i)] = T::one();
        let h = d[i + 1];
        if h != T::zero() {
            for k in 0..=i {
                d[k] = v[idx(k, i + 1)] / h;
            }
            let (head, tail) = v.split_at_mut((i + 1) * n);
            let col_next = &tail[..=i];
            for j in 0..=i {
                let col_j = &mut head[j * n..j * n + i + 1];
                let mut g = T::zero();
                for k in 0..=i {
                    g = g + col_next[k] * col_j[k];
                }
                for k in 0..=i {
                    col_j[k] = col_j[k] - g * d[k];
                }
            }
        }
        for k in 0..=i {
            v[idx(k, i + 1)] = T::zero();
        }
    }
    for j in 0..n {
        d[j] = v[idx(n - 1, j)];
        v[idx(n - 1, j)] = T::zero();
    }
    v[idx(n - 1, n - 1)] = T::one();
    e[0] = T::zero();
}

/// Implicit-shift QL on the tridiagonal (d, e), accumulating rotations into
/// `vt` whose ROWS are the transform columns; on exit row i of `vt` is the
/// eigenvector of eigenvalue d[i].
fn tql2<T: Scalar>(n: usize, vt: &mut [T], d: &mut [T], e: &mut [T]) -> Result<()> {
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = T::zero();

    let eps = T::epsilon();
    let mut f = T::zero();
    let mut tst1 = T::zero();
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }

        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > MAX_QL_SWEEPS {
                    return Err(Error::NotSymmetric {
                        i: l,
                        j: l,
                        deviation: f64::NAN,
                    });
                }

                let g = d[l];
                let mut p = (d[l + 1] - g) / (cast::<T>(2.0) * e[l]);
                let mut r = p.hypot(T::one());
                if p < T::zero() {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for item in d.iter_mut().take(n).skip(l + 2) {
                    *item = *item - h;
                }
                f = f + h;

                p = d[m];
                let mut c = T::one();
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = T::zero();
                let mut s2 = T::zero();
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);

                    let (lo, hi) = vt.split_at_mut((i + 1) * n);
                    let row_i = &mut lo[i * n..];
                    let row_i1 = &mut hi[..n];
                    for k in 0..n {
                        let h = row_i1[k];
                        row_i1[k] = s * row_i[k] + c * h;
                        row_i[k] = c * row_i[k] - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;

                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] = d[l] + f;
        e[l] = T::zero();
    }
    Ok(())
}

/// Affine rescaling a*A + b*I of an adjacency spectrum placing the top
/// eigenvalue at 1 and balancing |lambda_2| = |lambda_n|, which maximizes
/// the gap parameter Delta.
#[derive(Debug, Clone)]
pub struct CentralizedHamiltonian<T> {
    a: T,
    b: T,
    eigen: EigenSystem<T>,
    values: Vec<T>,
}

impl<T: Scalar> CentralizedHamiltonian<T> {
    pub fn a(&self) -> T {
        self.a
    }

    pub fn b(&self) -> T {
        self.b
    }

    /// Spectrum of the underlying adjacency matrix.
    pub fn eigen(&self) -> &EigenSystem<T> {
        &self.eigen
    }

    /// Transformed eigenvalues a*mu_i + b, descending.
    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// Bulk spectral radius max(|lambda_2|, |lambda_n|).
    pub fn delta(&self) -> T {
        let n = self.values.len();
        self.values[1].abs().max(self.values[n - 1].abs())
    }
}

// Gap tolerance separating genuine spectral gaps (>=1e-3 at experiment
// scale) from eigensolver noise (~1e-13).
const DEGENERATE_GAP_TOL: f64 = 1e-9;

/// Centralizes a connected-graph adjacency spectrum:
/// a = 2/(2*mu_1 - mu_2 - mu_n), b = -a*(mu_2 + mu_n)/2.
pub fn centralize<T: Scalar>(es: &EigenSystem<T>) -> Result<CentralizedHamiltonian<T>> {
    let n = es.n();
    if n < 2 {
        return Err(Error::DegenerateTopEigenvalue {
            value: es
                .values()
                .first()
                .and_then(|x| x.to_f64())
                .unwrap_or(f64::NAN),
        });
    }
    let mu = es.values();
    let (mu1, mu2, mun) = (mu[0], mu[1], mu[n - 1]);
    let gap_tol = cast::<T>(DEGENERATE_GAP_TOL) * T::one().max(mu1.abs());
    if mu1 - mu2 <= gap_tol {
        return Err(Error::DegenerateTopEigenvalue {
            value: mu1.to_f64().unwrap_or(f64::NAN),
        });
    }
    let a = cast::<T>(2.0) / (cast::<T>(2.0) * mu1 - mu2 - mun);
    let b = -a * (mu2 + mun) / cast::<T>(2.0);
    let values: Vec<T> = mu.iter().map(|&m| a * m + b).collect();
    Ok(CentralizedHamiltonian {
        a,
        b,
        eigen: es.clone(),
        values,
    })
}

/// Per-graph spectral quantities of the fast-search condition, all taken at
/// the marked vertex w: epsilon = |<w|v1>|^2, `delta` the bulk radius
/// max_{i>1} |lambda_i|, r = sum_{i>1} a_i^2/(1-lambda_i) and nu its
/// harmonic-to-quadratic ratio. The two theorems gating fast search use
/// different gap parameters: the overlap bound works with the bulk radius,
/// while the evolution-time theorem writes lambda_2 = 1 - Delta. The
/// condition ratio instantiates the latter, so it uses the spectral gap:
/// condition_ratio = r*(1 - lambda_2)/(nu*sqrt(eps)). Under the
/// |lambda_2| = |lambda_n| centralization the gap equals 1 - delta.
#[derive(Debug, Clone, Copy)]
pub struct ConditionMetrics<T> {
    pub n: usize,
    pub delta: T,
    pub epsilon: T,
    pub r: T,
    pub nu: T,
    pub condition_ratio: T,
    pub efficiency_estimate: T,
}

pub fn condition_metrics<T: Scalar>(
    ch: &CentralizedHamiltonian<T>,
    w: VertexId,
) -> Result<ConditionMetrics<T>> {
    let n = ch.eigen.n();
    if w.0 >= n {
        return Err(Error::VertexOutOfRange { id: w.0, n });
    }
    let epsilon = ch.eigen.vector(0)[w.0] * ch.eigen.vector(0)[w.0];
    let mut r = T::zero();
    let mut quad = T::zero();
    for i in 1..n {
        let lambda = ch.values[i];
        let gap = T::one() - lambda;
        if gap <= T::zero() {
            return Err(Error::UnitBulkEigenvalue {
                index: i,
                value: lambda.to_f64().unwrap_or(f64::NAN),
            });
        }
        let ai2 = ch.eigen.vector(i)[w.0] * ch.eigen.vector(i)[w.0];
        r = r + ai2 / gap;
        quad = quad + ai2 / (gap * gap);
    }
    let nu = r / quad;
    let delta = ch.delta();
    let gap = T::one() - ch.values[1];
    let sqrt_eps = epsilon.sqrt();
    Ok(ConditionMetrics {
        n,
        delta,
        epsilon,
        r,
        nu,
        condition_ratio: r * gap / (nu * sqrt_eps),
        efficiency_estimate: T::one() / (sqrt_eps * nu * nu * nu),
    })
}

/// Which condition metric a scaling fit runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConditionMetricKind {
    Delta,
    SqrtEpsilon,
    Nu,
    R,
    ConditionRatio,
    EfficiencyEstimate,
}

impl ConditionMetricKind {
    pub const ALL: [ConditionMetricKind; 6] = [
        ConditionMetricKind::Delta,
        ConditionMetricKind::SqrtEpsilon,
        ConditionMetricKind::Nu,
        ConditionMetricKind::R,
        ConditionMetricKind::ConditionRatio,
        ConditionMetricKind::EfficiencyEstimate,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ConditionMetricKind::Delta => "delta",
            ConditionMetricKind::SqrtEpsilon => "sqrt_epsilon",
            ConditionMetricKind::Nu => "nu",
            ConditionMetricKind::R => "r",
            ConditionMetricKind::ConditionRatio => "condition_ratio",
            ConditionMetricKind::EfficiencyEstimate => "efficiency_estimate",
        }
    }

    pub fn extract<T: Scalar>(&self, m: &ConditionMetrics<T>) -> T {
        match self {
            ConditionMetricKind::Delta => m.delta,
            ConditionMetricKind::SqrtEpsilon => m.epsilon.sqrt(),
            ConditionMetricKind::Nu => m.nu,
            ConditionMetricKind::R => m.r,
            ConditionMetricKind::ConditionRatio => m.condition_ratio,
            ConditionMetricKind::EfficiencyEstimate => m.efficiency_estimate,
        }
    }
}

/// Condition metrics for one graph of a family sweep.
#[derive(Debug, Clone)]
pub struct ConditionRow<T> {
    pub family: String,
    pub k: usize,
    pub l: usize,
    pub n: usize,
    pub metrics: ConditionMetrics<T>,
}

/// Computes condition metrics for every family member within the size cap,
/// rows sorted by graph order.
pub fn family_condition_metrics<T: Scalar>(
    family: &FamilySpec,
    size_cap: usize,
) -> Result<Vec<ConditionRow<T>>> {
    let label = family.label();
    let mut rows = Vec::new();
    for params in family.members_within(size_cap)? {
        let g = build_chimera(&params);
        let es = eigendecompose(&g.adjacency_matrix::<T>())?;
        let ch = centralize(&es)?;
        let metrics = condition_metrics(&ch, marked_vertex(&params))?;
        rows.push(ConditionRow {
            family: label.clone(),
            k: params.rows(),
            l: params.shore(),
            n: params.vertex_count(),
            metrics,
        });
    }
    rows.sort_by_key(|r| r.n);
    Ok(rows)
}

/// OLS fit of log(metric) against log(n) across a chimera family.
pub fn metric_scaling<T: Scalar>(
    family: &FamilySpec,
    metric: ConditionMetricKind,
    size_cap: usize,
) -> Result<RegressionFit<T>> {
    let rows = family_condition_metrics::<T>(family, size_cap)?;
    fit_metric(&rows, metric)
}

/// OLS fit of log(metric) against log(n) over precomputed condition rows.
pub fn fit_metric<T: Scalar>(
    rows: &[ConditionRow<T>],
    metric: ConditionMetricKind,
) -> Result<RegressionFit<T>> {
    let points: Vec<(T, T)> = rows
        .iter()
        .map(|r| (T::from_usize(r.n).unwrap(), metric.extract(&r.metrics)))
        .collect();
    fit_log_log(&points)
}

/// CSV export, header
/// `family,k,l,n,delta,sqrt_epsilon,nu,r,condition_ratio,efficiency_estimate`.
pub fn conditions_csv<T: Scalar>(rows: &[ConditionRow<T>]) -> String {
    let mut out =
        String::from("family,k,l,n,delta,sqrt_epsilon,nu,r,condition_ratio,efficiency_estimate\n");
    for row in rows {
        let m = &row.metrics;
        out.push_str(&format!(
            "{},{},{},{},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e}\n",
            row.family,
            row.k,
            row.l,
            row.n,
            m.delta,
            m.epsilon.sqrt(),
            m.nu,
            m.r,
            m.condition_ratio,
            m.efficiency_estimate,
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::ChimeraParams;

    fn kll_adjacency(l: usize) -> Matrix<f64> {
        build_chimera(&ChimeraParams::square(1, l).unwrap()).adjacency_matrix()
    }

    fn residual_norm(a: &Matrix<f64>, es: &EigenSystem<f64>, i: usize) -> f64 {
        let n = a.n();
        let v = es.vector(i);
        let lambda = es.values()[i];
        (0..n)
            .map(|r| {
                let av: f64 = (0..n).map(|c| a.get(r, c) * v[c]).sum();
                (av - lambda * v[r]).powi(2)
            })
            .sum::<f64>()
            .sqrt()
    }

    #[test]
    fn zero_matrix_gives_standard_basis() {
        let a = Matrix::<f64>::zeros(5);
        let es = eigendecompose(&a).unwrap();
        assert!(es.values().iter().all(|&v| v == 0.0));
        for i in 0..5 {
            for j in 0..5 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert_eq!(es.vector(i)[j], expect);
            }
        }
    }

    #[test]
    fn complete_bipartite_spectrum() {
        for l in [2usize, 3, 5, 8] {
            let a = kll_adjacency(l);
            let es = eigendecompose(&a).unwrap();
            let vals = es.values();
            assert!((vals[0] - l as f64).abs() < 1e-10);
            assert!((vals[2 * l - 1] + l as f64).abs() < 1e-10);
            for &v in &vals[1..2 * l - 1] {
                assert!(v.abs() < 1e-10);
            }
        }
    }

    #[test]
    fn rejects_non_symmetric_and_non_finite() {
        let mut a = Matrix::<f64>::zeros(3);
        a.set(0, 1, 1.0);
        assert!(matches!(
            eigendecompose(&a),
            Err(Error::NotSymmetric { .. })
        ));
        let mut b = Matrix::<f64>::zeros(2);
        b.set(0, 1, f64::NAN);
        b.set(1, 0, f64::NAN);
        assert!(eigendecompose(&b).is_err());
    }

    #[test]
    fn residuals_and_orthonormality_on_chimera() {
        let g = build_chimera(&ChimeraParams::square(2, 2).unwrap());
        let a = g.adjacency_matrix::<f64>();
        let es = eigendecompose(&a).unwrap();
        let norm = es.values()[0].abs();
        for i in 0..es.n() {
            assert!(residual_norm(&a, &es, i) <= 1e-8 * norm);
            for j in 0..es.n() {
                let dot: f64 = es
                    .vector(i)
                    .iter()
                    .zip(es.vector(j))
                    .map(|(x, y)| x * y)
                    .sum();
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!(
                    (dot - expect).abs() <= 1e-10,
                    "orthonormality failed at ({i},{j})"
                );
            }
        }
    }

    #[test]
    fn eigenvalues_descending_and_trace_preserved() {
        for (k, l) in [(2, 2), (3, 2), (2, 3)] {
            let g = build_chimera(&ChimeraParams::square(k, l).unwrap());
            let es = eigendecompose(&g.adjacency_matrix::<f64>()).unwrap();
            let vals = es.values();
            assert!(vals.windows(2).all(|w| w[0] >= w[1]));
            let trace: f64 = vals.iter().sum();
            assert!(trace.abs() <= 1e-8 * g.vertex_count() as f64);
        }
    }

    #[test]
    fn sign_convention_is_deterministic() {
        let a = kll_adjacency(3);
        let es1 = eigendecompose(&a).unwrap();
        let es2 = eigendecompose(&a).unwrap();
        for i in 0..es1.n() {
            assert_eq!(es1.vector(i), es2.vector(i));
            let lead = es1
                .vector(i)
                .iter()
                .cloned()
                .fold(0.0f64, |m, x| m.max(x.abs()));
            let first = es1.vector(i).iter().find(|x| x.abs() == lead).unwrap();
            assert!(*first > 0.0);
        }
    }

    #[test]
    fn centralize_complete_bipartite_closed_form() {
        for l in 2..=12 {
            let es = eigendecompose(&kll_adjacency(l)).unwrap();
            let ch = centralize(&es).unwrap();
            assert!((ch.a() - 2.0 / (3.0 * l as f64)).abs() < 1e-12);
            assert!((ch.b() - 1.0 / 3.0).abs() < 1e-12);
            assert!((ch.delta() - 1.0 / 3.0).abs() < 1e-10);
            assert!((ch.values()[0] - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn centralize_fixed_point() {
        // spectrum already satisfying lambda1 = 1, lambda2 = -lambdan
        let es: EigenSystem<f64> = EigenSystem {
            values: vec![1.0, 0.25, -0.25],
            vectors: vec![
                vec![1.0, 0.0, 0.0],
                vec![0.0, 1.0, 0.0],
                vec![0.0, 0.0, 1.0],
            ],
        };
        let ch = centralize(&es).unwrap();
        assert!((ch.a() - 1.0).abs() < 1e-14);
        assert!(ch.b().abs() < 1e-14);
    }

    #[test]
    fn centralize_chimera_332() {
        let g = build_chimera(&ChimeraParams::square(3, 2).unwrap());
        let es = eigendecompose(&g.adjacency_matrix::<f64>()).unwrap();
        let ch = centralize(&es).unwrap();
        let vals = ch.values();
        assert!((vals[0] - 1.0).abs() < 1e-10);
        assert!((vals[1] + vals[vals.len() - 1]).abs() < 1e-10);
    }

    #[test]
    fn centralize_rejects_degenerate_top() {
        // two disjoint edges: top eigenvalue 1 with multiplicity 2
        let mut a = Matrix::<f64>::zeros(4);
        a.set(0, 1, 1.0);
        a.set(1, 0, 1.0);
        a.set(2, 3, 1.0);
        a.set(3, 2, 1.0);
        let es = eigendecompose(&a).unwrap();
        assert!(matches!(
            centralize(&es),
            Err(Error::DegenerateTopEigenvalue { .. })
        ));
    }

    #[test]
    fn condition_metrics_complete_bipartite() {
        for l in [2usize, 4, 8] {
            let params = ChimeraParams::square(1, l).unwrap();
            let es = eigendecompose(&kll_adjacency(l)).unwrap();
            let ch = centralize(&es).unwrap();
            let m = condition_metrics(&ch, marked_vertex(&params)).unwrap();
            // uniform top eigenvector on K_{l,l}: epsilon = 1/(2l)
            assert!((m.epsilon - 1.0 / (2.0 * l as f64)).abs() < 1e-10);
            assert!(m.nu > 0.0 && m.r > 0.0);
        }
    }

    #[test]
    fn overlap_completeness_any_marked_vertex() {
        let g = build_chimera(&ChimeraParams::square(2, 3).unwrap());
        let es = eigendecompose(&g.adjacency_matrix::<f64>()).unwrap();
        for w in 0..g.vertex_count() {
            let total: f64 = (0..es.n()).map(|i| es.vector(i)[w] * es.vector(i)[w]).sum();
            assert!((total - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn condition_metrics_rejects_out_of_range_vertex() {
        let es = eigendecompose(&kll_adjacency(2)).unwrap();
        let ch = centralize(&es).unwrap();
        assert!(matches!(
            condition_metrics(&ch, VertexId(99)),
            Err(Error::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn nu_bounded_by_largest_gap() {
        for (k, l) in [(2, 2), (3, 2), (2, 4)] {
            let params = ChimeraParams::square(k, l).unwrap();
            let g = build_chimera(&params);
            let es = eigendecompose(&g.adjacency_matrix::<f64>()).unwrap();
            let ch = centralize(&es).unwrap();
            let m = condition_metrics(&ch, marked_vertex(&params)).unwrap();
            let max_gap = 1.0 - ch.values()[ch.values().len() - 1];
            assert!(m.nu > 0.0 && m.nu <= max_gap + 1e-12);
        }
    }
}
