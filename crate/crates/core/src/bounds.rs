//! Cell counts from geodesic censuses, checked against polynomial growth bounds.
//!
//! Each critical geodesic of index `λ` contributes one `λ`-cell to a CW model
//! of the fiber, so per-index record counts bound its Betti numbers from
//! above. The cumulative counts are compared with `2cλ(n+1)` on the sphere
//! and `4(2(n−m)+1)²` in the plane.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geodesic::{GeodesicRecord, IndexParams};

/// Fitted degree at or below which linear growth is accepted.
pub const LINEAR_GROWTH_THRESHOLD: f64 = 1.2;
/// Fitted degree at or below which quadratic growth is accepted.
pub const QUADRATIC_GROWTH_THRESHOLD: f64 = 2.2;
/// Shortest series [`fit_growth_degree`] accepts.
pub const MIN_FIT_LENGTH: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum BoundKind {
    /// `2cλ(n+1)` for a sphere tiling with `c` tiles.
    Linear { c: u64 },
    /// `4(2(n−m)+1)²` for a planar ring tiling.
    Quadratic,
}

impl BoundKind {
    pub fn value(&self, params: &IndexParams, n: u32) -> u64 {
        match *self {
            BoundKind::Linear { c } => 2 * c * params.lambda() * (n as u64 + 1),
            BoundKind::Quadratic => {
                let r = (2 * (n as i64 - params.m) + 1).max(0) as u64;
                4 * r * r
            }
        }
    }

    pub fn growth_threshold(&self) -> f64 {
        match self {
            BoundKind::Linear { .. } => LINEAR_GROWTH_THRESHOLD,
            BoundKind::Quadratic => QUADRATIC_GROWTH_THRESHOLD,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    EllipticConsistent,
    Violation,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BettiBoundReport {
    pub case_id: Option<u32>,
    pub bound: BoundKind,
    pub params: IndexParams,
    pub lambda: u64,
    pub n_max: u32,
    /// `β̂_d` for `d = 0..=n_max`.
    pub histogram: Vec<u64>,
    /// `Σ_{i≤n} β̂_i` for `n = 0..=n_max`.
    pub cumulative: Vec<u64>,
    pub bound_values: Vec<u64>,
    pub satisfied: Vec<bool>,
    /// First `n` at which the bound fails.
    pub witness: Option<u32>,
    pub fitted_degree: Option<f64>,
    pub growth_threshold: f64,
    pub growth_within_threshold: Option<bool>,
    pub verdict: Verdict,
}

/// Record counts per index.
pub fn index_histogram(records: &[GeodesicRecord]) -> BTreeMap<u32, u64> {
    let mut h = BTreeMap::new();
    for r in records {
        *h.entry(r.index).or_insert(0) += 1;
    }
    h
}

fn build_report(
    hist: &BTreeMap<u32, u64>,
    bound: BoundKind,
    params: IndexParams,
    n_max: u32,
) -> BettiBoundReport {
    let histogram: Vec<u64> = (0..=n_max)
        .map(|d| hist.get(&d).copied().unwrap_or(0))
        .collect();
    let cumulative: Vec<u64> = histogram
        .iter()
        .scan(0u64, |acc, &x| {
            *acc += x;
            Some(*acc)
        })
        .collect();
    from_cumulative(None, cumulative, bound, params)
}

fn from_cumulative(
    case_id: Option<u32>,
    cumulative: Vec<u64>,
    bound: BoundKind,
    params: IndexParams,
) -> BettiBoundReport {
    let n_max = cumulative.len() as u32 - 1;
    let histogram = cumulative.iter().scan(0u64, |prev, &c| {
        let d = c - *prev;
        *prev = c;
        Some(d)
    });
    let histogram: Vec<u64> = histogram.collect();
    let bound_values: Vec<u64> = (0..=n_max).map(|n| bound.value(&params, n)).collect();
    let satisfied: Vec<bool> = cumulative
        .iter()
        .zip(&bound_values)
        .map(|(c, b)| c <= b)
        .collect();
    let witness = satisfied.iter().position(|s| !s).map(|n| n as u32);
    let series: Vec<f64> = cumulative.iter().map(|&c| c as f64).collect();
    let fitted_degree = fit_growth_degree(&series).ok();
    let growth_threshold = bound.growth_threshold();
    BettiBoundReport {
        case_id,
        bound,
        params,
        lambda: params.lambda(),
        n_max,
        histogram,
        cumulative,
        bound_values,
        satisfied,
        witness,
        fitted_degree,
        growth_threshold,
        growth_within_threshold: fitted_degree.map(|d| d <= growth_threshold),
        verdict: if witness.is_none() {
            Verdict::EllipticConsistent
        } else {
            Verdict::Violation
        },
    }
}

/// Compares cumulative counts with `2cλ(n+1)` for `n = 0..=n_max`.
pub fn check_linear_bound(
    hist: &BTreeMap<u32, u64>,
    c: u64,
    params: IndexParams,
    n_max: u32,
) -> BettiBoundReport {
    build_report(hist, BoundKind::Linear { c }, params, n_max)
}

/// Compares cumulative counts with `4(2(n−m)+1)²` for `n = 0..=n_max`.
pub fn check_quadratic_bound(
    hist: &BTreeMap<u32, u64>,
    params: IndexParams,
    n_max: u32,
) -> BettiBoundReport {
    build_report(hist, BoundKind::Quadratic, params, n_max)
}

/// Least-squares slope of `ln(s_n)` against `ln(n+1)` over the upper half of the series.
pub fn fit_growth_degree(series: &[f64]) -> Result<f64> {
    if series.len() < MIN_FIT_LENGTH {
        return Err(Error::UndefinedFit(format!(
            "{} points, need at least {MIN_FIT_LENGTH}",
            series.len()
        )));
    }
    let start = series.len() / 2;
    let window = &series[start..];
    if window
        .iter()
        .any(|&v| v.is_nan() || v <= 0.0 || v.is_infinite())
    {
        return Err(Error::UndefinedFit(
            "series has non-positive entries in the fit window".into(),
        ));
    }
    let xs: Vec<f64> = (start..series.len())
        .map(|n| ((n + 1) as f64).ln())
        .collect();
    let ys: Vec<f64> = window.iter().map(|v| v.ln()).collect();
    let k = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / k, ys.iter().sum::<f64>() / k);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    Ok(sxy / sxx)
}

/// Pointwise worst case over reports of one case and bound kind.
pub fn aggregate_worst_case(reports: &[BettiBoundReport]) -> Result<BettiBoundReport> {
    let first = reports
        .first()
        .ok_or_else(|| Error::Domain("no reports to aggregate".into()))?;
    if reports
        .iter()
        .any(|r| r.bound != first.bound || r.params != first.params || r.n_max != first.n_max)
    {
        return Err(Error::Domain(
            "reports differ in bound, parameters or n_max".into(),
        ));
    }
    let cumulative = (0..=first.n_max as usize)
        .map(|n| reports.iter().map(|r| r.cumulative[n]).max().unwrap())
        .collect();
    Ok(from_cumulative(
        first.case_id,
        cumulative,
        first.bound,
        first.params,
    ))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlotSeries {
    pub name: String,
    pub x: Vec<u32>,
    pub y: Vec<u64>,
}

impl BettiBoundReport {
    pub fn with_case_id(self, case_id: u32) -> Self {
        BettiBoundReport {
            case_id: Some(case_id),
            ..self
        }
    }

    pub fn all_satisfied(&self) -> bool {
        self.satisfied.iter().all(|&s| s)
    }

    /// Rows `n,cumulative,bound,satisfied`.
    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(vec![]);
        w.write_record(["n", "cumulative", "bound", "satisfied"])
            .expect("in-memory write");
        for n in 0..=self.n_max as usize {
            w.write_record([
                n.to_string(),
                self.cumulative[n].to_string(),
                self.bound_values[n].to_string(),
                self.satisfied[n].to_string(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Cumulative counts and bound values as x–y series.
    pub fn plot_series(&self) -> Vec<PlotSeries> {
        let x: Vec<u32> = (0..=self.n_max).collect();
        vec![
            PlotSeries {
                name: "cumulative".into(),
                x: x.clone(),
                y: self.cumulative.clone(),
            },
            PlotSeries {
                name: "bound".into(),
                x,
                y: self.bound_values.clone(),
            },
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn flat_hist(per_index: &[u64]) -> BTreeMap<u32, u64> {
        per_index
            .iter()
            .enumerate()
            .map(|(d, &c)| (d as u32, c))
            .collect()
    }

    #[test]
    fn empty_histogram() {
        assert!(index_histogram(&[]).is_empty());
        let r = check_linear_bound(&BTreeMap::new(), 8, IndexParams::new(0), 3);
        assert_eq!(r.cumulative, vec![0; 4]);
        assert_eq!(r.verdict, Verdict::EllipticConsistent);
        assert_eq!(r.fitted_degree, None);
    }

    #[test]
    fn linear_bound_values() {
        let r = check_linear_bound(&BTreeMap::new(), 8, IndexParams::new(0), 5);
        assert_eq!(r.bound_values[5], 96);
        let r = check_linear_bound(&BTreeMap::new(), 2, IndexParams::new(0), 0);
        assert_eq!(r.bound_values, vec![4]);
        let base = check_linear_bound(&BTreeMap::new(), 8, IndexParams::new(0), 6);
        let doubled = check_linear_bound(&BTreeMap::new(), 8, IndexParams::new(-1), 6);
        for (a, b) in base.bound_values.iter().zip(&doubled.bound_values) {
            assert_eq!(2 * a, *b);
        }
    }

    #[test]
    fn quadratic_bound_values() {
        let r = check_quadratic_bound(&BTreeMap::new(), IndexParams::new(0), 3);
        assert_eq!(r.bound_values, vec![4, 36, 100, 196]);
        let r = check_quadratic_bound(&BTreeMap::new(), IndexParams::new(-2), 0);
        assert_eq!(r.bound_values, vec![100]);
    }

    #[test]
    fn violation_is_witnessed() {
        let r = check_linear_bound(&flat_hist(&[4, 0, 10]), 1, IndexParams::new(0), 3);
        assert_eq!(r.cumulative, vec![4, 4, 14, 14]);
        assert_eq!(r.bound_values, vec![2, 4, 6, 8]);
        assert_eq!(r.witness, Some(0));
        assert_eq!(r.verdict, Verdict::Violation);
        assert_eq!(r.satisfied, vec![false, true, false, false]);
    }

    #[test]
    fn synthetic_fits() {
        let lin: Vec<f64> = (0..21).map(|n| 3.0 * (n + 1) as f64).collect();
        assert_abs_diff_eq!(fit_growth_degree(&lin).unwrap(), 1.0, epsilon = 0.05);
        let quad: Vec<f64> = (0..21).map(|n| 7.0 * ((n + 1) as f64).powi(2)).collect();
        assert_abs_diff_eq!(fit_growth_degree(&quad).unwrap(), 2.0, epsilon = 0.05);
        assert!(matches!(
            fit_growth_degree(&[0.0; 10]),
            Err(Error::UndefinedFit(_))
        ));
        assert!(matches!(
            fit_growth_degree(&[1.0, 2.0, 3.0]),
            Err(Error::UndefinedFit(_))
        ));
    }

    #[test]
    fn csv_and_plot_outputs() {
        let r = check_quadratic_bound(&flat_hist(&[1, 8]), IndexParams::new(0), 1);
        assert_eq!(
            r.to_csv(),
            "n,cumulative,bound,satisfied\n0,1,4,true\n1,9,36,true\n"
        );
        let s = r.plot_series();
        assert_eq!(s[1].y, vec![4, 36]);
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["verdict"], "elliptic-consistent");
        assert_eq!(v["bound"]["kind"], "quadratic");
    }

    #[test]
    fn worst_case_aggregation() {
        let p = IndexParams::new(0);
        let a = check_linear_bound(&flat_hist(&[2, 1, 1]), 1, p, 2);
        let b = check_linear_bound(&flat_hist(&[1, 3, 0]), 1, p, 2);
        let w = aggregate_worst_case(&[a, b]).unwrap();
        assert_eq!(w.cumulative, vec![2, 4, 4]);
        assert_eq!(w.histogram, vec![2, 2, 0]);
        assert!(aggregate_worst_case(&[]).is_err());
    }

    proptest! {
        #[test]
        fn cumulative_is_nondecreasing(counts in proptest::collection::vec(0u64..50, 1..25), c in 1u64..200) {
            let r = check_linear_bound(&flat_hist(&counts), c, IndexParams::new(0), counts.len() as u32 - 1);
            prop_assert!(r.cumulative.windows(2).all(|w| w[0] <= w[1]));
            prop_assert_eq!(r.all_satisfied(), r.verdict == Verdict::EllipticConsistent);
            prop_assert_eq!(*r.cumulative.last().unwrap(), counts.iter().sum::<u64>());
        }

        #[test]
        fn doubling_lambda_keeps_passes(counts in proptest::collection::vec(0u64..50, 1..25), c in 1u64..20) {
            let n = counts.len() as u32 - 1;
            let a = check_linear_bound(&flat_hist(&counts), c, IndexParams::new(0), n);
            let b = check_linear_bound(&flat_hist(&counts), c, IndexParams::new(-1), n);
            for k in 0..=n as usize {
                prop_assert_eq!(2 * a.bound_values[k], b.bound_values[k]);
                prop_assert!(!a.satisfied[k] || b.satisfied[k]);
            }
        }

        #[test]
        fn fit_is_scale_invariant(series in proptest::collection::vec(1.0f64..1e4, 5..30), scale in 1e-3f64..1e3) {
            let scaled: Vec<f64> = series.iter().map(|v| v * scale).collect();
            let a = fit_growth_degree(&series).unwrap();
            let b = fit_growth_degree(&scaled).unwrap();
            prop_assert!((a - b).abs() < 1e-9);
        }
    }
}
