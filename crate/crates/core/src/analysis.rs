//! Family sweeps and complexity-exponent extraction.
//!
//! Optimizer output is filtered (tuples with t < ln(n)/n or p < ln(n)/n are
//! degenerate measurements), reduced to the minimum unpenalized ratio t/p
//! per graph order, and fit with log(T) = log(c) + alpha*log(n); the slope
//! alpha approximates the search complexity Theta(n^alpha).

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::ChimeraParams;
use crate::optimizer::{qss_optimization, OptimumRecord, QssOptions};
use crate::scalar::Scalar;

/// The chimera sequences studied: `local` grows the grid with fixed cells,
/// `global` grows cells with a fixed grid, and the three intermediate
/// sequences grow both at different rates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    /// chi(i, i, l) with fixed shore l.
    Local,
    /// chi(k, k, i) with fixed grid k.
    Global,
    /// chi(i^2, i^2, i).
    GridQuadratic,
    /// chi(i, i, i).
    Balanced,
    /// chi(i, i, i^2).
    CellQuadratic,
}

impl FamilyKind {
    pub fn parse(name: &str) -> Result<FamilyKind> {
        match name {
            "local" => Ok(FamilyKind::Local),
            "global" => Ok(FamilyKind::Global),
            "grid-quadratic" => Ok(FamilyKind::GridQuadratic),
            "balanced" => Ok(FamilyKind::Balanced),
            "cell-quadratic" => Ok(FamilyKind::CellQuadratic),
            other => Err(Error::InvalidFamily(format!("unknown family '{other}'"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            FamilyKind::Local => "local",
            FamilyKind::Global => "global",
            FamilyKind::GridQuadratic => "grid-quadratic",
            FamilyKind::Balanced => "balanced",
            FamilyKind::CellQuadratic => "cell-quadratic",
        }
    }

    fn takes_fixed(&self) -> bool {
        matches!(self, FamilyKind::Local | FamilyKind::Global)
    }
}

/// A chimera family plus the index interval to sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    kind: FamilyKind,
    fixed: Option<usize>,
    lo: usize,
    hi: usize,
}

impl FamilySpec {
    pub fn new(kind: FamilyKind, fixed: Option<usize>, lo: usize, hi: usize) -> Result<Self> {
        match (kind.takes_fixed(), fixed) {
            (true, Some(f)) if f >= 1 => {}
            (true, _) => {
                return Err(Error::InvalidFamily(format!(
                    "family '{}' needs a fixed parameter >= 1",
                    kind.name()
                )))
            }
            (false, None) => {}
            (false, Some(_)) => {
                return Err(Error::InvalidFamily(format!(
                    "family '{}' takes no fixed parameter",
                    kind.name()
                )))
            }
        }
        if lo < 1 || hi < lo {
            return Err(Error::InvalidFamily(format!("bad index range {lo}..={hi}")));
        }
        Ok(FamilySpec {
            kind,
            fixed,
            lo,
            hi,
        })
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn index_range(&self) -> (usize, usize) {
        (self.lo, self.hi)
    }

    /// Label used in CSV/JSON outputs, e.g. `local(2)` or `balanced`.
    pub fn label(&self) -> String {
        match self.fixed {
            Some(f) => format!("{}({})", self.kind.name(), f),
            None => self.kind.name().to_string(),
        }
    }

    /// Parameters of the i-th member.
    pub fn params_at(&self, i: usize) -> Result<ChimeraParams> {
        match self.kind {
            FamilyKind::Local => ChimeraParams::square(i, self.fixed.unwrap()),
            FamilyKind::Global => ChimeraParams::square(self.fixed.unwrap(), i),
            FamilyKind::GridQuadratic => ChimeraParams::square(i * i, i),
            FamilyKind::Balanced => ChimeraParams::square(i, i),
            FamilyKind::CellQuadratic => ChimeraParams::square(i, i * i),
        }
    }

    /// Members of the index range whose order stays within `size_cap`;
    /// errors when fewer than 3 graphs remain.
    pub fn members_within(&self, size_cap: usize) -> Result<Vec<ChimeraParams>> {
        let mut members = Vec::new();
        for i in self.lo..=self.hi {
            let params = self.params_at(i)?;
            if params.vertex_count() <= size_cap {
                members.push(params);
            }
        }
        if members.len() < 3 {
            return Err(Error::FamilyTooSmall {
                lo: self.lo,
                hi: self.hi,
                cap: size_cap,
            });
        }
        Ok(members)
    }
}

/// Ordinary least squares of y = intercept + slope * x over log-log points.
#[derive(Debug, Clone)]
pub struct RegressionFit<T> {
    pub slope: T,
    pub intercept: T,
    pub r_squared: T,
    /// The fitted (log x, log y) points.
    pub points: Vec<(T, T)>,
    pub residuals: Vec<T>,
}

/// Fits log(y) = intercept + slope*log(x) by OLS over raw positive (x, y)
/// pairs. Natural logarithms; the slope is base-invariant.
pub fn fit_log_log<T: Scalar>(raw: &[(T, T)]) -> Result<RegressionFit<T>> {
    if raw.len() < 3 {
        return Err(Error::TooFewPoints(raw.len()));
    }
    let mut points = Vec::with_capacity(raw.len());
    for &(x, y) in raw {
        if x <= T::zero() || y <= T::zero() {
            return Err(Error::RegressionDomain {
                x: x.to_f64().unwrap_or(f64::NAN),
                y: y.to_f64().unwrap_or(f64::NAN),
            });
        }
        points.push((x.ln(), y.ln()));
    }

    let count = T::from_usize(points.len()).unwrap();
    let mean_x = points.iter().map(|p| p.0).sum::<T>() / count;
    let mean_y = points.iter().map(|p| p.1).sum::<T>() / count;
    let sxx = points
        .iter()
        .map(|p| (p.0 - mean_x) * (p.0 - mean_x))
        .sum::<T>();
    let sxy = points
        .iter()
        .map(|p| (p.0 - mean_x) * (p.1 - mean_y))
        .sum::<T>();
    if sxx <= T::zero() {
        return Err(Error::RegressionDomain {
            x: mean_x.to_f64().unwrap_or(f64::NAN),
            y: f64::NAN,
        });
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;

    let residuals: Vec<T> = points
        .iter()
        .map(|&(x, y)| y - (intercept + slope * x))
        .collect();
    let ss_res = residuals.iter().map(|&r| r * r).sum::<T>();
    let ss_tot = points
        .iter()
        .map(|&(_, y)| (y - mean_y) * (y - mean_y))
        .sum::<T>();
    let r_squared = if ss_tot > T::zero() {
        T::one() - ss_res / ss_tot
    } else {
        T::one()
    };

    Ok(RegressionFit {
        slope,
        intercept,
        r_squared,
        points,
        residuals,
    })
}

/// Keeps records with t >= ln(n)/n AND p >= ln(n)/n (inclusive); the rest
/// are degenerate small-time measurements.
pub fn filter_records<T: Scalar>(records: &[OptimumRecord<T>]) -> Vec<OptimumRecord<T>> {
    records
        .iter()
        .filter(|r| {
            let threshold = filter_threshold::<T>(r.graph_order);
            r.time >= threshold && r.probability >= threshold
        })
        .cloned()
        .collect()
}

/// For each graph order present, the record minimizing the unpenalized
/// ratio t/p (first record on exact ties, so results are deterministic).
pub fn per_order_minima<T: Scalar>(
    records: &[OptimumRecord<T>],
) -> BTreeMap<usize, OptimumRecord<T>> {
    let mut minima: BTreeMap<usize, OptimumRecord<T>> = BTreeMap::new();
    for r in records {
        match minima.get(&r.graph_order) {
            Some(best) if best.raw_ratio <= r.raw_ratio => {}
            _ => {
                minima.insert(r.graph_order, r.clone());
            }
        }
    }
    minima
}

/// OLS of ln(T_min) against ln(n) over the per-order minima; the slope is
/// the complexity exponent alpha.
pub fn fit_alpha<T: Scalar>(
    minima: &BTreeMap<usize, OptimumRecord<T>>,
) -> Result<RegressionFit<T>> {
    let pts: Vec<(T, T)> = minima
        .iter()
        .map(|(&n, r)| (T::from_usize(n).unwrap(), r.raw_ratio))
        .collect();
    fit_log_log(&pts)
}

#[derive(Debug, Clone)]
pub struct SweepOptions<T> {
    pub qss: QssOptions<T>,
    /// Family members with more vertices than this are skipped.
    pub size_cap: usize,
}

impl<T: Scalar> Default for SweepOptions<T> {
    fn default() -> Self {
        SweepOptions {
            qss: QssOptions::default(),
            size_cap: 700,
        }
    }
}

/// Everything a family sweep produces: raw records, surviving per-order
/// minima, the alpha fit, and bookkeeping on what was dropped.
#[derive(Debug, Clone)]
pub struct FamilySweep<T> {
    pub family: FamilySpec,
    pub records: Vec<OptimumRecord<T>>,
    pub minima: BTreeMap<usize, OptimumRecord<T>>,
    pub fit: RegressionFit<T>,
    pub filtered_out: usize,
    pub failed_starts: usize,
    /// Graph orders where no record survived the filter.
    pub skipped_orders: Vec<usize>,
}

/// Runs the multistart optimization for every family member (members in
/// parallel), filters, extracts minima and fits alpha.
pub fn family_sweep<T: Scalar>(
    family: &FamilySpec,
    opts: &SweepOptions<T>,
) -> Result<FamilySweep<T>> {
    let members = family.members_within(opts.size_cap)?;
    let sweeps: Vec<Result<_>> = members
        .par_iter()
        .map(|params| {
            let mut out = qss_optimization(params, &opts.qss)?;
            for r in &mut out.records {
                // family index = the member's index value i, not its position
                r.family_index = family_index_of(family, params);
            }
            Ok(out)
        })
        .collect();

    let mut records = Vec::new();
    let mut failed_starts = 0;
    for sweep in sweeps {
        let out = sweep?;
        failed_starts += out.failed_starts;
        records.extend(out.records);
    }

    let kept = filter_records(&records);
    let filtered_out = records.len() - kept.len();
    let minima = per_order_minima(&kept);
    let skipped_orders: Vec<usize> = members
        .iter()
        .map(|p| p.vertex_count())
        .filter(|n| !minima.contains_key(n))
        .collect();
    let fit = fit_alpha(&minima)?;

    Ok(FamilySweep {
        family: family.clone(),
        records,
        minima,
        fit,
        filtered_out,
        failed_starts,
        skipped_orders,
    })
}

fn family_index_of(family: &FamilySpec, params: &ChimeraParams) -> usize {
    match family.kind {
        FamilyKind::Local | FamilyKind::Balanced | FamilyKind::CellQuadratic => params.rows(),
        FamilyKind::Global => params.shore(),
        FamilyKind::GridQuadratic => params.shore(),
    }
}

/// CSV export of per-order minima, header `family,k,l,n,t_opt,p,t_over_p`.
pub fn minima_csv<T: Scalar>(label: &str, minima: &BTreeMap<usize, OptimumRecord<T>>) -> String {
    let mut out = String::from("family,k,l,n,t_opt,p,t_over_p\n");
    for (n, r) in minima {
        out.push_str(&format!(
            "{},{},{},{},{:.12e},{:.12e},{:.12e}\n",
            label,
            r.params.rows(),
            r.params.shore(),
            n,
            r.time,
            r.probability,
            r.raw_ratio,
        ));
    }
    out
}

/// JSON export of the alpha fit:
/// { "family", "alpha", "intercept", "r2", "n_points", "filtered_out" }.
pub fn fit_json<T: Scalar>(label: &str, fit: &RegressionFit<T>, filtered_out: usize) -> String {
    serde_json::json!({
        "family": label,
        "alpha": fit.slope.to_f64().unwrap_or(f64::NAN),
        "intercept": fit.intercept.to_f64().unwrap_or(f64::NAN),
        "r2": fit.r_squared.to_f64().unwrap_or(f64::NAN),
        "n_points": fit.points.len(),
        "filtered_out": filtered_out,
    })
    .to_string()
}

/// Filter threshold ln(n)/n, exposed for reporting.
pub fn filter_threshold<T: Scalar>(n: usize) -> T {
    let nf = T::from_usize(n).unwrap();
    nf.ln() / nf
}
