//! Scaling experiments: run a Q-ladder of counts against a fixed rectangle
//! or a strip family and fit the log-log slope.

use num_rational::BigRational;

use crate::counting::{count_in_rectangle_streamed, count_in_strip_streamed, CountResult};
use crate::error::{Error, Result};
use crate::geometry::{DiagonalExclusion, RationalCurve, Rectangle, Strip};
use crate::polyint::PolyClassParams;
use crate::rat::fmt_rational;
use crate::report::{Cell, Table};

/// What the ladder counts.
#[derive(Debug, Clone)]
pub enum LadderKind {
    /// Fixed rectangle across all Q.
    Rect(Rectangle),
    /// Strip of width (1/2 + c5) c3 Q^(-lambda), rebuilt per Q.
    Strip {
        curve: RationalCurve,
        c3: BigRational,
        lambda: BigRational,
    },
}

#[derive(Debug, Clone)]
pub struct LadderConfig {
    pub n: usize,
    pub qs: Vec<i64>,
    pub kind: LadderKind,
    pub epsilon: BigRational,
}

impl LadderConfig {
    pub fn validate(&self) -> Result<()> {
        if self.qs.is_empty() {
            return Err(Error::InvalidConfig("empty Q ladder".into()));
        }
        if self.qs.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidConfig("Q ladder must be strictly increasing".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentReport {
    pub rows: Vec<CountResult>,
    /// OLS fit of log2(count) on log2(Q) over rows with count >= 1;
    /// undefined with fewer than two usable rows.
    pub slope: Option<f64>,
    pub residual: Option<f64>,
}

/// Ordinary least squares on the log-log pairs; returns (slope, residual
/// sum of squares).
pub fn fit_loglog(points: &[(f64, f64)]) -> Option<(f64, f64)> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let var: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    if var == 0.0 {
        return None;
    }
    let cov: f64 = points
        .iter()
        .map(|p| (p.0 - mean_x) * (p.1 - mean_y))
        .sum();
    let slope = cov / var;
    let intercept = mean_y - slope * mean_x;
    let residual: f64 = points
        .iter()
        .map(|p| (p.1 - slope * p.0 - intercept).powi(2))
        .sum();
    Some((slope, residual))
}

/// Runs the ladder with the streaming counters and fits the slope.
pub fn run_scaling_experiment(cfg: &LadderConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let exclusion = DiagonalExclusion::new(cfg.epsilon.clone())?;
    let mut rows = Vec::with_capacity(cfg.qs.len());
    for &q in &cfg.qs {
        let params = PolyClassParams::new(cfg.n, q)?;
        let started = std::time::Instant::now();
        let row = match &cfg.kind {
            LadderKind::Rect(rect) => count_in_rectangle_streamed(params, rect, &exclusion)?,
            LadderKind::Strip { curve, c3, lambda } => {
                let strip = Strip::power_law(curve.clone(), c3.clone(), lambda.clone(), q)?;
                count_in_strip_streamed(params, &strip, &exclusion)?
            }
        };
        eprintln!(
            "scaling: n={} Q={} count={} ({} ms)",
            cfg.n,
            q,
            row.count,
            started.elapsed().as_millis()
        );
        rows.push(row);
    }
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.count >= 1)
        .map(|r| ((r.q as f64).log2(), (r.count as f64).log2()))
        .collect();
    let fit = fit_loglog(&pts);
    Ok(ExperimentReport {
        rows,
        slope: fit.map(|f| f.0),
        residual: fit.map(|f| f.1),
    })
}

/// Canonical table for a scaling report: one row per Q plus a `fit` row.
pub fn scaling_table(cfg: &LadderConfig, report: &ExperimentReport) -> Table {
    let mut t = Table::new(vec![
        "kind", "n", "Q", "region", "count", "deg2", "deg3", "deg4", "deg5", "mu2", "ratio",
        "slope", "residual",
    ]);
    let kind = match &cfg.kind {
        LadderKind::Rect(_) => "rect",
        LadderKind::Strip { .. } => "strip",
    };
    for r in &report.rows {
        let deg = |d: usize| Cell::UInt(r.by_degree.get(d).copied().unwrap_or(0));
        t.push(vec![
            Cell::Text(kind.into()),
            Cell::Int(r.n as i64),
            Cell::Int(r.q),
            Cell::Text(r.region.clone()),
            Cell::UInt(r.count),
            deg(2),
            deg(3),
            deg(4),
            deg(5),
            Cell::Text(
                r.mu2
                    .as_ref()
                    .map(fmt_rational)
                    .unwrap_or_else(|| format_float_cell(r.mu2_value)),
            ),
            Cell::Float(r.normalized_ratio),
            Cell::Text(String::new()),
            Cell::Text(String::new()),
        ]);
    }
    t.push(vec![
        Cell::Text("fit".into()),
        Cell::Int(cfg.n as i64),
        Cell::Int(0),
        Cell::Text(String::new()),
        Cell::UInt(0),
        Cell::UInt(0),
        Cell::UInt(0),
        Cell::UInt(0),
        Cell::UInt(0),
        Cell::Text(String::new()),
        Cell::Text(String::new()),
        report
            .slope
            .map(Cell::Float)
            .unwrap_or(Cell::Text("undefined".into())),
        report
            .residual
            .map(Cell::Float)
            .unwrap_or(Cell::Text("undefined".into())),
    ]);
    t
}

fn format_float_cell(v: f64) -> String {
    format!("{v}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    #[test]
    fn fit_recovers_exact_power_law()
    {
        // y = x^3 exactly
        let pts: Vec<(f64, f64)> = [2.0f64, 4.0, 8.0, 16.0]
            .iter()
            .map(|&q: &f64| (q.log2(), (q.powi(3)).log2()))
            .collect();
        let (slope, residual) = fit_loglog(&pts).unwrap();
        assert!((slope - 3.0).abs() < 1e-12);
        assert!(residual < 1e-18);
        assert!(fit_loglog(&pts[..1]).is_none());
    }

    #[test]
    fn small_ladder_runs() {
        let rect = Rectangle::new(rat_int(1), rat(3, 2), rat(-3, 2), rat_int(-1)).unwrap();
        let cfg = LadderConfig {
            n: 2,
            qs: vec![4, 8],
            kind: LadderKind::Rect(rect),
            epsilon: rat_int(1),
        };
        let rep = run_scaling_experiment(&cfg).unwrap();
        assert_eq!(rep.rows.len(), 2);
        // single-Q ladder: rows emitted, slope undefined
        let cfg1 = LadderConfig {
            n: 2,
            qs: vec![8],
            kind: cfg.kind.clone(),
            epsilon: rat_int(1),
        };
        let rep1 = run_scaling_experiment(&cfg1).unwrap();
        assert_eq!(rep1.rows.len(), 1);
        assert!(rep1.slope.is_none());
        // decreasing ladder rejected
        let bad = LadderConfig {
            n: 2,
            qs: vec![8, 4],
            kind: cfg.kind.clone(),
            epsilon: rat_int(1),
        };
        assert!(run_scaling_experiment(&bad).is_err());
    }
}
