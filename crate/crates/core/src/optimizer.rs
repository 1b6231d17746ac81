//! Bounded multistart optimization of the penalized runtime cost.
//!
//! The pipeline per graph: derive a coarse upper bound for the evolution
//! time from a probe at gamma = 1/(l+1), then launch a grid of Nelder-Mead
//! descents over (gamma, t) in [0,1] x [0, t_bound] and keep every local
//! optimum found.

use std::collections::{HashMap, VecDeque};
use std::sync::{Arc, Mutex};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::evolution::{build_setup, cost, success_probability, CostParams, SearchSetup};
use crate::graph::{build_chimera, marked_vertex, spectral_norm, ChimeraParams, Graph, VertexId};
use crate::scalar::{cast, Scalar};

/// Simplex coefficients and stopping rule. Defaults: reflection 1,
/// expansion 2, contraction 0.5, shrink 0.5, 500 iterations, 1e-8 relative
/// function spread, initial steps of 0.1 and 0.05 box widths.
#[derive(Debug, Clone)]
pub struct NelderMeadConfig<T> {
    pub reflection: T,
    pub expansion: T,
    pub contraction: T,
    pub shrink: T,
    pub max_iterations: usize,
    pub tolerance_f: T,
    pub initial_step_fractions: Vec<T>,
}

impl<T: Scalar> Default for NelderMeadConfig<T> {
    fn default() -> Self {
        NelderMeadConfig {
            reflection: T::one(),
            expansion: cast(2.0),
            contraction: cast(0.5),
            shrink: cast(0.5),
            max_iterations: 500,
            tolerance_f: cast(1e-8),
            initial_step_fractions: vec![cast(0.1), cast(0.05)],
        }
    }
}

impl<T: Scalar> NelderMeadConfig<T> {
    fn validate(&self, dim: usize) -> Result<()> {
        if self.reflection <= T::zero() {
            return Err(Error::InvalidNelderMeadConfig(
                "reflection must be positive".into(),
            ));
        }
        if self.expansion <= self.reflection {
            return Err(Error::InvalidNelderMeadConfig(
                "expansion must exceed reflection".into(),
            ));
        }
        if self.contraction <= T::zero() || self.contraction >= T::one() {
            return Err(Error::InvalidNelderMeadConfig(
                "contraction must be in (0,1)".into(),
            ));
        }
        if self.shrink <= T::zero() || self.shrink >= T::one() {
            return Err(Error::InvalidNelderMeadConfig(
                "shrink must be in (0,1)".into(),
            ));
        }
        if self.initial_step_fractions.len() != dim {
            return Err(Error::InvalidNelderMeadConfig(format!(
                "{} step fractions for dimension {dim}",
                self.initial_step_fractions.len()
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct NelderMeadOutcome<T> {
    pub point: Vec<T>,
    pub value: T,
    pub iterations: usize,
    pub converged: bool,
}

// Repair step for degenerate initial simplices.
const MIN_SIMPLEX_STEP: f64 = 1e-4;

/// Nelder-Mead simplex descent with box handling by projection: every
/// candidate vertex is clamped onto the box before evaluation. Terminates
/// when the simplex function spread drops below `tolerance_f` (relative) or
/// at `max_iterations`. Deterministic for fixed inputs; a non-finite
/// objective value aborts the whole run.
pub fn nelder_mead<T, F>(
    mut f: F,
    start: &[T],
    bounds: &[(T, T)],
    cfg: &NelderMeadConfig<T>,
) -> Result<NelderMeadOutcome<T>>
where
    T: Scalar,
    F: FnMut(&[T]) -> T,
{
    let dim = start.len();
    cfg.validate(dim)?;
    if bounds.len() != dim {
        return Err(Error::InvalidNelderMeadConfig(format!(
            "{} bounds for dimension {dim}",
            bounds.len()
        )));
    }
    for (d, (&x, &(lo, hi))) in start.iter().zip(bounds).enumerate() {
        if x < lo || x > hi {
            return Err(Error::StartOutOfBox {
                dim: d,
                value: x.to_f64().unwrap_or(f64::NAN),
            });
        }
    }

    let project = |x: &mut [T]| {
        for (v, &(lo, hi)) in x.iter_mut().zip(bounds) {
            *v = (*v).max(lo).min(hi);
        }
    };
    let mut eval = |x: &[T]| -> Result<T> {
        let v = f(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFiniteObjective)
        }
    };

    let mut simplex: Vec<(Vec<T>, T)> = Vec::with_capacity(dim + 1);
    let fx0 = eval(start)?;
    simplex.push((start.to_vec(), fx0));
    for d in 0..dim {
        let (lo, hi) = bounds[d];
        let width = hi - lo;
        let mut step = cfg.initial_step_fractions[d] * width;
        let min_step = cast::<T>(MIN_SIMPLEX_STEP).min(width / cast(2.0));
        if step < min_step {
            step = min_step;
        }
        let mut x = start.to_vec();
        x[d] = if start[d] + step <= hi {
            start[d] + step
        } else {
            start[d] - step
        };
        project(&mut x);
        let fx = eval(&x)?;
        simplex.push((x, fx));
    }

    let order = |s: &mut Vec<(Vec<T>, T)>| {
        s.sort_by(|a, b| a.1.partial_cmp(&b.1).expect("finite objective values"));
    };
    order(&mut simplex);

    let converged_at = |best: T, worst: T| {
        worst - best
            <= cfg.tolerance_f * (best.abs() + worst.abs()) / cast(2.0) + T::min_positive_value()
    };

    let mut iterations = 0;
    let mut converged = false;
    while iterations < cfg.max_iterations {
        if converged_at(simplex[0].1, simplex[dim].1) {
            converged = true;
            break;
        }
        iterations += 1;

        let mut centroid = vec![T::zero(); dim];
        for (x, _) in simplex.iter().take(dim) {
            for (c, &v) in centroid.iter_mut().zip(x) {
                *c = *c + v;
            }
        }
        let inv = T::one() / T::from_usize(dim).unwrap();
        for c in &mut centroid {
            *c = *c * inv;
        }

        let worst = simplex[dim].0.clone();
        let blend = |from: &[T], toward: &[T], coeff: T| -> Vec<T> {
            let mut x: Vec<T> = from
                .iter()
                .zip(toward)
                .map(|(&c, &w)| c + coeff * (c - w))
                .collect();
            project(&mut x);
            x
        };

        let reflected = blend(&centroid, &worst, cfg.reflection);
        let f_reflected = eval(&reflected)?;

        if f_reflected < simplex[0].1 {
            // expand past the reflected point
            let mut expanded: Vec<T> = centroid
                .iter()
                .zip(&reflected)
                .map(|(&c, &r)| c + cfg.expansion * (r - c))
                .collect();
            project(&mut expanded);
            let f_expanded = eval(&expanded)?;
            simplex[dim] = if f_expanded < f_reflected {
                (expanded, f_expanded)
            } else {
                (reflected, f_reflected)
            };
        } else if f_reflected < simplex[dim - 1].1 {
            simplex[dim] = (reflected, f_reflected);
        } else {
            let (toward, f_limit, strict) = if f_reflected < simplex[dim].1 {
                (reflected.clone(), f_reflected, false)
            } else {
                (worst.clone(), simplex[dim].1, true)
            };
            let mut contracted: Vec<T> = centroid
                .iter()
                .zip(&toward)
                .map(|(&c, &w)| c + cfg.contraction * (w - c))
                .collect();
            project(&mut contracted);
            let f_contracted = eval(&contracted)?;
            let accept = if strict {
                f_contracted < f_limit
            } else {
                f_contracted <= f_limit
            };
            if accept {
                simplex[dim] = (contracted, f_contracted);
            } else {
                let best = simplex[0].0.clone();
                for entry in simplex.iter_mut().skip(1) {
                    let mut x: Vec<T> = best
                        .iter()
                        .zip(&entry.0)
                        .map(|(&b, &v)| b + cfg.shrink * (v - b))
                        .collect();
                    project(&mut x);
                    let fx = eval(&x)?;
                    *entry = (x, fx);
                }
            }
        }
        order(&mut simplex);
    }
    if !converged {
        converged = converged_at(simplex[0].1, simplex[dim].1);
    }

    let (point, value) = simplex.swap_remove(0);
    Ok(NelderMeadOutcome {
        point,
        value,
        iterations,
        converged,
    })
}

/// Coarse upper bound for the evolution time: probe at gamma = 1/(l+1),
/// set t' = 1/p(1), then take the minimum of t/p(t) over t' and its ten
/// decimal fractions.
pub fn time_upperbound<T: Scalar>(params: &ChimeraParams) -> Result<T> {
    let g = build_chimera(params);
    let w = marked_vertex(params);
    let gamma = T::one() / T::from_usize(params.shore() + 1).unwrap();
    let setup = build_setup(&g, w, gamma)?;
    upperbound_scan(|t| success_probability(&setup, t))
}

fn upperbound_scan<T: Scalar>(probe: impl Fn(T) -> Result<T>) -> Result<T> {
    let p_init = probe(T::one())?;
    if p_init < cast(crate::evolution::MIN_PROBABILITY) {
        return Err(Error::PathologicalProbe);
    }
    let t_prime = T::one() / p_init;
    let mut result = t_prime;
    for j in 1..=10 {
        let t = t_prime * T::from_usize(j).unwrap() / cast(10.0);
        let p = probe(t)?;
        if p > T::zero() {
            result = result.min(t / p);
        }
    }
    Ok(result)
}

/// One multistart outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimumRecord<T> {
    pub params: ChimeraParams,
    pub graph_order: usize,
    pub family_index: usize,
    pub start: (T, T),
    pub gamma: T,
    pub time: T,
    pub probability: T,
    pub cost_value: T,
    pub raw_ratio: T,
    pub converged: bool,
}

/// Start grid: gamma_0 = 2m/(count * ||A||) for m = 1..=gamma_count (clipped
/// into [0,1]), t_0 = j * t_bound/(time_count - 1) for j = 0..time_count.
/// The defaults 40 x 16 reproduce the full sweep.
#[derive(Debug, Clone, Copy)]
pub struct MultistartGrid {
    pub gamma_count: usize,
    pub time_count: usize,
}

impl Default for MultistartGrid {
    fn default() -> Self {
        MultistartGrid {
            gamma_count: 40,
            time_count: 16,
        }
    }
}

impl MultistartGrid {
    fn start_points<T: Scalar>(&self, norm: T, t_bound: T) -> Vec<(T, T)> {
        let mut starts = Vec::with_capacity(self.gamma_count * self.time_count);
        for m in 1..=self.gamma_count {
            let gamma0 = (cast::<T>(2.0) * T::from_usize(m).unwrap()
                / (T::from_usize(self.gamma_count).unwrap() * norm))
                .min(T::one());
            if self.time_count <= 1 {
                starts.push((gamma0, T::zero()));
                continue;
            }
            for j in 0..self.time_count {
                // the j = count-1 endpoint can land one ulp above t_bound
                let t0 = (t_bound * T::from_usize(j).unwrap()
                    / T::from_usize(self.time_count - 1).unwrap())
                .min(t_bound);
                starts.push((gamma0, t0));
            }
        }
        starts
    }
}

#[derive(Debug, Clone)]
pub struct QssOptions<T> {
    pub cost: CostParams<T>,
    pub grid: MultistartGrid,
    pub nm: NelderMeadConfig<T>,
    /// Bound on memoized per-gamma setups (each holds an n x n spectrum).
    pub cache_capacity: usize,
}

impl<T: Scalar> Default for QssOptions<T> {
    fn default() -> Self {
        QssOptions {
            cost: CostParams::default(),
            grid: MultistartGrid::default(),
            nm: NelderMeadConfig::default(),
            cache_capacity: 32,
        }
    }
}

#[derive(Debug, Clone)]
pub struct QssOutcome<T> {
    /// Every local optimum found, in start-grid order (gamma_0, then t_0).
    pub records: Vec<OptimumRecord<T>>,
    pub t_bound: T,
    pub failed_starts: usize,
}

/// Full multistart sweep over one graph: every start point runs a
/// Nelder-Mead descent of (t + c*ln(n))/p(gamma, t) over
/// [0,1] x [0, t_bound]; all outcomes are kept, no deduplication.
pub fn qss_optimization<T: Scalar>(
    params: &ChimeraParams,
    opts: &QssOptions<T>,
) -> Result<QssOutcome<T>> {
    let g = build_chimera(params);
    let w = marked_vertex(params);
    let t_bound = time_upperbound::<T>(params)?;
    let norm: T = spectral_norm(&g);
    let n = g.vertex_count();
    let bounds = [(T::zero(), T::one()), (T::zero(), t_bound)];
    let starts = opts.grid.start_points(norm, t_bound);
    let cache = SetupCache::new(opts.cache_capacity);

    let results: Vec<Option<OptimumRecord<T>>> = starts
        .par_iter()
        .map(|&(gamma0, t0)| {
            let objective = |x: &[T]| -> T {
                match cache.get_or_build(&g, w, x[0]) {
                    Ok(setup) => cost(&setup, x[1], &opts.cost).unwrap_or_else(|_| T::nan()),
                    Err(_) => T::nan(),
                }
            };
            let out = nelder_mead(objective, &[gamma0, t0], &bounds, &opts.nm).ok()?;
            let setup = cache.get_or_build(&g, w, out.point[0]).ok()?;
            let probability = success_probability(&setup, out.point[1]).ok()?;
            let cost_value = cost(&setup, out.point[1], &opts.cost).ok()?;
            Some(OptimumRecord {
                params: *params,
                graph_order: n,
                family_index: 0,
                start: (gamma0, t0),
                gamma: out.point[0],
                time: out.point[1],
                probability,
                cost_value,
                raw_ratio: out.point[1] / probability,
                converged: out.converged,
            })
        })
        .collect();

    let failed_starts = results.iter().filter(|r| r.is_none()).count();
    let records = results.into_iter().flatten().collect();
    Ok(QssOutcome {
        records,
        t_bound,
        failed_starts,
    })
}

/// CSV export, header `k,l,n,gamma0,t0,gamma_opt,t_opt,p,cost,raw_ratio,converged`.
pub fn records_csv<T: Scalar>(records: &[OptimumRecord<T>]) -> String {
    let mut out = String::from("k,l,n,gamma0,t0,gamma_opt,t_opt,p,cost,raw_ratio,converged\n");
    for r in records {
        out.push_str(&format!(
            "{},{},{},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{}\n",
            r.params.rows(),
            r.params.shore(),
            r.graph_order,
            r.start.0,
            r.start.1,
            r.gamma,
            r.time,
            r.probability,
            r.cost_value,
            r.raw_ratio,
            r.converged,
        ));
    }
    out
}

/// Parses the records CSV back; used by the offline analyze path.
pub fn parse_records_csv<T: Scalar>(text: &str) -> Result<Vec<OptimumRecord<T>>> {
    let mut lines = text.lines().enumerate();
    let header = lines.next().map(|(_, l)| l.trim()).unwrap_or("");
    if header != "k,l,n,gamma0,t0,gamma_opt,t_opt,p,cost,raw_ratio,converged" {
        return Err(Error::MalformedRecords {
            line: 1,
            reason: "unexpected header".into(),
        });
    }
    let mut records = Vec::new();
    for (idx, line) in lines {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 11 {
            return Err(Error::MalformedRecords {
                line: idx + 1,
                reason: format!("expected 11 fields, got {}", fields.len()),
            });
        }
        let bad = |reason: &str| Error::MalformedRecords {
            line: idx + 1,
            reason: reason.into(),
        };
        let int = |s: &str, what: &str| -> Result<usize> {
            s.parse::<usize>().map_err(|_| bad(&format!("bad {what}")))
        };
        let num = |s: &str, what: &str| -> Result<T> {
            s.parse::<f64>()
                .ok()
                .and_then(T::from_f64)
                .ok_or_else(|| bad(&format!("bad {what}")))
        };
        let k = int(fields[0], "k")?;
        let l = int(fields[1], "l")?;
        let n = int(fields[2], "n")?;
        // k is the row count and l the shore; rectangular records recover
        // their column count from n = 2*rows*cols*shore
        if k == 0 || l == 0 || n % (2 * k * l) != 0 {
            return Err(bad("n inconsistent with k and l"));
        }
        let params = ChimeraParams::new(k, n / (2 * k * l), l)
            .map_err(|_| bad("invalid chimera parameters"))?;
        let converged = match fields[10] {
            "true" => true,
            "false" => false,
            _ => return Err(bad("bad converged flag")),
        };
        records.push(OptimumRecord {
            params,
            graph_order: n,
            family_index: 0,
            start: (num(fields[3], "gamma0")?, num(fields[4], "t0")?),
            gamma: num(fields[5], "gamma_opt")?,
            time: num(fields[6], "t_opt")?,
            probability: num(fields[7], "p")?,
            cost_value: num(fields[8], "cost")?,
            raw_ratio: num(fields[9], "raw_ratio")?,
            converged,
        });
    }
    Ok(records)
}

struct SetupCache<T> {
    capacity: usize,
    inner: Mutex<CacheInner<T>>,
}

struct CacheInner<T> {
    map: HashMap<u64, Arc<SearchSetup<T>>>,
    order: VecDeque<u64>,
}

impl<T: Scalar> SetupCache<T> {
    fn new(capacity: usize) -> Self {
        SetupCache {
            capacity: capacity.max(1),
            inner: Mutex::new(CacheInner {
                map: HashMap::new(),
                order: VecDeque::new(),
            }),
        }
    }

    fn get_or_build(&self, g: &Graph, w: VertexId, gamma: T) -> Result<Arc<SearchSetup<T>>> {
        let key = gamma.to_f64().map(f64::to_bits).unwrap_or(0);
        {
            let inner = self.inner.lock().expect("cache lock");
            if let Some(setup) = inner.map.get(&key) {
                return Ok(setup.clone());
            }
        }
        // build outside the lock; concurrent duplicate builds are identical
        let built = Arc::new(build_setup(g, w, gamma)?);
        let mut inner = self.inner.lock().expect("cache lock");
        if !inner.map.contains_key(&key) {
            while inner.map.len() >= self.capacity {
                if let Some(old) = inner.order.pop_front() {
                    inner.map.remove(&old);
                } else {
                    break;
                }
            }
            inner.map.insert(key, built.clone());
            inner.order.push_back(key);
        }
        Ok(inner.map.get(&key).cloned().unwrap_or(built))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn converges_on_smooth_quadratic() {
        let f = |x: &[f64]| (x[0] - 0.3).powi(2) + (x[1] - 2.0).powi(2);
        let out = nelder_mead(
            f,
            &[0.5, 5.0],
            &[(0.0, 1.0), (0.0, 10.0)],
            &NelderMeadConfig::default(),
        )
        .unwrap();
        assert!((out.point[0] - 0.3).abs() < 1e-4, "gamma: {}", out.point[0]);
        assert!((out.point[1] - 2.0).abs() < 1e-4, "t: {}", out.point[1]);
        assert!(out.converged);
    }

    #[test]
    fn projection_reaches_boundary_minimum() {
        let f = |x: &[f64]| x[0] + x[1];
        let out = nelder_mead(
            f,
            &[0.9, 9.0],
            &[(0.0, 1.0), (0.0, 10.0)],
            &NelderMeadConfig {
                max_iterations: 2000,
                ..NelderMeadConfig::default()
            },
        )
        .unwrap();
        assert!(out.point[0].abs() < 1e-4);
        assert!(out.point[1].abs() < 1e-4);
    }

    #[test]
    fn aborts_on_non_finite_objective() {
        let f = |x: &[f64]| if x[0] > 0.4 { f64::NAN } else { x[0] };
        let err = nelder_mead(
            f,
            &[0.5, 5.0],
            &[(0.0, 1.0), (0.0, 10.0)],
            &NelderMeadConfig::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::NonFiniteObjective));
    }

    #[test]
    fn rejects_bad_config_and_start() {
        let f = |x: &[f64]| x[0];
        let bad = NelderMeadConfig {
            contraction: 1.5,
            ..NelderMeadConfig::default()
        };
        assert!(matches!(
            nelder_mead(f, &[0.5, 1.0], &[(0.0, 1.0), (0.0, 2.0)], &bad),
            Err(Error::InvalidNelderMeadConfig(_))
        ));
        assert!(matches!(
            nelder_mead(
                f,
                &[1.5, 1.0],
                &[(0.0, 1.0), (0.0, 2.0)],
                &NelderMeadConfig::default()
            ),
            Err(Error::StartOutOfBox { dim: 0, .. })
        ));
    }

    #[test]
    fn start_on_upper_boundary_steps_inward() {
        let f = |x: &[f64]| (x[0] - 0.5).powi(2) + (x[1] - 1.0).powi(2);
        let out = nelder_mead(
            f,
            &[1.0, 2.0],
            &[(0.0, 1.0), (0.0, 2.0)],
            &NelderMeadConfig::default(),
        )
        .unwrap();
        assert!((out.point[0] - 0.5).abs() < 1e-4);
        assert!((out.point[1] - 1.0).abs() < 1e-4);
    }

    #[test]
    fn upperbound_scan_constant_probability() {
        // p = 1/n constant. Small n: the t = 0.1*t' fraction wins, giving
        // 0.1*n^2. Large n: the initializer t' = n dominates.
        let scan = |n: f64| upperbound_scan(|_t: f64| Ok(1.0 / n)).unwrap();
        assert!((scan(8.0) - 0.1 * 64.0).abs() < 1e-12);
        assert!((scan(50.0) - 50.0).abs() < 1e-12);
    }

    #[test]
    fn upperbound_never_exceeds_initializer() {
        for (k, l) in [(1, 2), (2, 2), (2, 3)] {
            let params = ChimeraParams::square(k, l).unwrap();
            let g = build_chimera(&params);
            let w = marked_vertex(&params);
            let gamma = 1.0 / (l as f64 + 1.0);
            let setup = build_setup(&g, w, gamma).unwrap();
            let p1 = success_probability(&setup, 1.0).unwrap();
            let bound: f64 = time_upperbound(&params).unwrap();
            assert!(bound <= 1.0 / p1 + 1e-12);
            assert!(bound > 0.0 && bound.is_finite());
        }
    }

    #[test]
    fn multistart_respects_box_and_descends() {
        let params = ChimeraParams::square(2, 2).unwrap();
        let opts = QssOptions::<f64> {
            grid: MultistartGrid {
                gamma_count: 4,
                time_count: 4,
            },
            ..QssOptions::default()
        };
        let out = qss_optimization(&params, &opts).unwrap();
        assert_eq!(out.records.len() + out.failed_starts, 16);

        let g = build_chimera(&params);
        let w = marked_vertex(&params);
        for r in &out.records {
            assert!(r.gamma >= 0.0 && r.gamma <= 1.0);
            assert!(r.time >= 0.0 && r.time <= out.t_bound);
            let setup = build_setup(&g, w, r.start.0).unwrap();
            let at_start = cost(&setup, r.start.1, &opts.cost).unwrap();
            assert!(
                r.cost_value <= at_start + 1e-9,
                "no descent: {} > {}",
                r.cost_value,
                at_start
            );
        }
    }

    #[test]
    fn multistart_is_deterministic() {
        let params = ChimeraParams::square(1, 3).unwrap();
        let opts = QssOptions::<f64> {
            grid: MultistartGrid {
                gamma_count: 3,
                time_count: 3,
            },
            ..QssOptions::default()
        };
        let a = qss_optimization(&params, &opts).unwrap();
        let b = qss_optimization(&params, &opts).unwrap();
        assert_eq!(a.records, b.records);
        // start grid is emitted in lexicographic (gamma0, t0) order
        let starts: Vec<_> = a.records.iter().map(|r| r.start).collect();
        let mut sorted = starts.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(starts, sorted);
    }

    #[test]
    fn records_csv_round_trip() {
        let params = ChimeraParams::square(1, 2).unwrap();
        let opts = QssOptions::<f64> {
            grid: MultistartGrid {
                gamma_count: 2,
                time_count: 2,
            },
            ..QssOptions::default()
        };
        let out = qss_optimization(&params, &opts).unwrap();
        let text = records_csv(&out.records);
        let parsed = parse_records_csv::<f64>(&text).unwrap();
        assert_eq!(parsed.len(), out.records.len());
        for (a, b) in parsed.iter().zip(&out.records) {
            assert_eq!(a.graph_order, b.graph_order);
            assert!((a.raw_ratio - b.raw_ratio).abs() <= 1e-9 * b.raw_ratio.abs().max(1.0));
            assert_eq!(a.converged, b.converged);
        }
        assert!(matches!(
            parse_records_csv::<f64>("bogus\n"),
            Err(Error::MalformedRecords { line: 1, .. })
        ));
    }
}
