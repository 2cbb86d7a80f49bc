//! Entropies, Gilbert–Varshamov-type rates and the error-suppression metrics.

use num_rational::Ratio;

use crate::code::StabilizerCode;
use crate::error::{Error, Result};

pub const DEFAULT_DELTA_STEPS: usize = 512;
pub const DEFAULT_DELTA_MAX: f64 = 0.25;
pub const DEFAULT_Q_MIN: f64 = 1.5;
pub const DEFAULT_Q_MAX: f64 = 4.0;
pub const DEFAULT_Q_STEPS: usize = 64;

fn check_unit(x: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::domain(format!("argument must lie in [0, 1], got {x}")));
    }
    Ok(())
}

fn xlogx(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

/// Binary entropy with `H(0) = H(1) = 0`.
pub fn entropy_h2(x: f64) -> Result<f64> {
    check_unit(x)?;
    Ok(-xlogx(x) - xlogx(1.0 - x))
}

/// `H_q(x) = x log_q(q−1) − x log_q x − (1−x) log_q(1−x)`.
pub fn entropy_hq(q: f64, x: f64) -> Result<f64> {
    if !(q > 1.0 && q.is_finite()) {
        return Err(Error::domain(format!("q must exceed 1, got {q}")));
    }
    check_unit(x)?;
    let lq = q.log2();
    let first = if x == 0.0 { 0.0 } else { x * (q - 1.0).log2() };
    Ok((first - xlogx(x) - xlogx(1.0 - x)) / lq)
}

fn check_delta(delta: f64) -> Result<()> {
    if !(0.0..0.5).contains(&delta) {
        return Err(Error::domain(format!("delta must lie in [0, 0.5), got {delta}")));
    }
    Ok(())
}

/// `1 − 2δ log₂3 − H₂(2δ)`.
pub fn gvb_orthogonal(delta: f64) -> Result<f64> {
    gvb_quasi(delta, 3.0)
}

/// `1 − 2δ log₂q − H₂(2δ)`.
pub fn gvb_quasi(delta: f64, q: f64) -> Result<f64> {
    check_delta(delta)?;
    if !(q > 1.0 && q.is_finite()) {
        return Err(Error::domain(format!("q must exceed 1, got {q}")));
    }
    Ok(1.0 - 2.0 * delta * q.log2() - entropy_h2(2.0 * delta)?)
}

/// `R(q, δ) = 1 − H_q(2δ)`.
pub fn rate_hq(q: f64, delta: f64) -> Result<f64> {
    check_delta(delta)?;
    Ok(1.0 - entropy_hq(q, 2.0 * delta)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundMode {
    Orthogonal,
    Quasi,
    Surface,
}

impl BoundMode {
    pub fn label(self) -> &'static str {
        match self {
            BoundMode::Orthogonal => "orthogonal",
            BoundMode::Quasi => "quasi",
            BoundMode::Surface => "surface",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundCurve {
    pub mode: BoundMode,
    pub q: f64,
    /// `(δ, R)` with δ strictly increasing; R is unclamped.
    pub samples: Vec<(f64, f64)>,
}

/// `steps + 1` evenly spaced points on `[lo, hi]`.
pub fn linspace(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    if steps == 0 {
        return vec![lo];
    }
    (0..=steps).map(|i| lo + (hi - lo) * i as f64 / steps as f64).collect()
}

pub fn bound_curve(mode: BoundMode, q: f64, deltas: &[f64]) -> Result<BoundCurve> {
    if deltas.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::domain("delta grid must be strictly increasing"));
    }
    let samples = deltas
        .iter()
        .map(|&d| {
            let r = match mode {
                BoundMode::Orthogonal => gvb_orthogonal(d)?,
                BoundMode::Quasi => gvb_quasi(d, q)?,
                BoundMode::Surface => rate_hq(q, d)?,
            };
            Ok((d, r))
        })
        .collect::<Result<_>>()?;
    let q = if mode == BoundMode::Orthogonal { 3.0 } else { q };
    Ok(BoundCurve { mode, q, samples })
}

/// `R(q, δ) = 1 − H_q(2δ)` over the grid, row-major in `q`.
pub fn rate_surface(q_grid: &[f64], delta_grid: &[f64]) -> Result<Vec<BoundCurve>> {
    q_grid
        .iter()
        .map(|&q| bound_curve(BoundMode::Surface, q, delta_grid))
        .collect()
}

/// Bounds derived from a logical error rate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MetricsRow {
    pub p: f64,
    pub p_l: f64,
    pub fidelity_lb: f64,
    pub trace_ub: f64,
    /// `p_L / p`; `None` at `p = 0`.
    pub suppression: Option<f64>,
    pub eta: Option<f64>,
}

impl MetricsRow {
    /// `1 − √F ≤ D ≤ √(1 − F)` for the reported pair, with a small
    /// tolerance for rounding.
    pub fn fuchs_van_de_graaf_holds(&self) -> bool {
        let tol = 1e-12;
        1.0 - self.fidelity_lb.sqrt() <= self.trace_ub + tol && self.trace_ub <= (1.0 - self.fidelity_lb).sqrt() + tol
    }
}

pub fn metric_row(p: f64, p_l: f64) -> Result<MetricsRow> {
    check_unit(p)?;
    check_unit(p_l)?;
    Ok(MetricsRow {
        p,
        p_l,
        fidelity_lb: 1.0 - p_l,
        trace_ub: p_l.sqrt(),
        suppression: (p > 0.0).then(|| p_l / p),
        eta: None,
    })
}

/// Local log-log slope `d ln p_L / d ln p`: central differences inside,
/// one-sided at the ends. Points whose stencil touches a non-positive value
/// get `None`.
pub fn scaling_exponent(grid: &[(f64, f64)]) -> Result<Vec<(f64, Option<f64>)>> {
    if grid.windows(2).any(|w| w[0].0 >= w[1].0) {
        return Err(Error::domain("p grid must be strictly increasing"));
    }
    let positive = grid.iter().filter(|(p, pl)| *p > 0.0 && *pl > 0.0).count();
    if positive < 3 {
        return Err(Error::domain("scaling exponent needs at least 3 positive points"));
    }
    let logs: Vec<Option<(f64, f64)>> = grid
        .iter()
        .map(|&(p, pl)| (p > 0.0 && pl > 0.0).then(|| (p.ln(), pl.ln())))
        .collect();
    let slope = |a: usize, b: usize| match (logs[a], logs[b]) {
        (Some((x0, y0)), Some((x1, y1))) => Some((y1 - y0) / (x1 - x0)),
        _ => None,
    };
    let last = grid.len() - 1;
    Ok((0..grid.len())
        .map(|i| {
            let eta = match i {
                0 => slope(0, 1),
                i if i == last => slope(last - 1, last),
                i => slope(i - 1, i + 1),
            };
            (grid[i].0, eta)
        })
        .collect())
}

/// Attach local exponents to rows sorted by `p`.
pub fn with_exponents(rows: &mut [MetricsRow]) -> Result<()> {
    let grid: Vec<(f64, f64)> = rows.iter().map(|r| (r.p, r.p_l)).collect();
    for (row, (_, eta)) in rows.iter_mut().zip(scaling_exponent(&grid)?) {
        row.eta = eta;
    }
    Ok(())
}

/// `n / k` as an exact fraction.
pub fn overhead(code: &StabilizerCode) -> Result<Ratio<usize>> {
    if code.k() == 0 {
        return Err(Error::domain(format!("{} encodes no logical qudits", code.name())));
    }
    Ok(Ratio::new(code.n(), code.k()))
}
