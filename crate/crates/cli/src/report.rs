//! Row types and their CSV layouts.

use std::io::Write;

use anyhow::Result;

pub const SIMULATE_HEADER: [&str; 15] = [
    "code",
    "n",
    "k",
    "d_or_bound",
    "p",
    "trials",
    "failures",
    "p_L",
    "ci_low",
    "ci_high",
    "fidelity_lb",
    "trace_ub",
    "suppression",
    "eta",
    "seed",
];
pub const EXACT_HEADER: [&str; 17] = [
    "code",
    "n",
    "k",
    "p",
    "w_cut",
    "p_L",
    "q_I",
    "q_X",
    "q_Y",
    "q_Z",
    "q_other",
    "q_uncorrected",
    "trunc_bound",
    "fidelity_lb",
    "trace_ub",
    "suppression",
    "eta",
];
pub const HARMFUL_HEADER: [&str; 6] = ["code", "n", "w", "H_w", "H_per_support", "ceiling"];
pub const BOUNDS_HEADER: [&str; 5] = ["mode", "q", "delta", "R_raw", "R_clamped"];
pub const METRICS_HEADER: [&str; 15] = [
    "code",
    "n",
    "k",
    "t",
    "model",
    "epsilon",
    "phi",
    "c_lead",
    "c_leak",
    "p",
    "p_L",
    "fidelity_lb",
    "trace_ub",
    "suppression",
    "eta",
];
pub const TABLE1_HEADER: [&str; 11] = [
    "mapping",
    "code",
    "n",
    "k",
    "d",
    "d_claimed",
    "t",
    "overhead",
    "overhead_claimed",
    "exponent",
    "status",
];

/// Shortest round-trip decimal, switching to exponent form for very small or
/// very large magnitudes. Deterministic, so reruns are byte-identical.
pub fn fmt_f64(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 {
        "0".into()
    } else if (1e-4..1e15).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

pub fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

pub trait CsvRow {
    fn fields(&self) -> Vec<String>;
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimulateRow {
    pub code: String,
    pub n: usize,
    pub k: usize,
    pub d_or_bound: String,
    pub p: f64,
    pub trials: u64,
    pub failures: u64,
    pub p_l: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub fidelity_lb: f64,
    pub trace_ub: f64,
    pub suppression: Option<f64>,
    pub eta: Option<f64>,
    pub seed: u64,
}

impl CsvRow for SimulateRow {
    fn fields(&self) -> Vec<String> {
        vec![
            self.code.clone(),
            self.n.to_string(),
            self.k.to_string(),
            self.d_or_bound.clone(),
            fmt_f64(self.p),
            self.trials.to_string(),
            self.failures.to_string(),
            fmt_f64(self.p_l),
            fmt_f64(self.ci_low),
            fmt_f64(self.ci_high),
            fmt_f64(self.fidelity_lb),
            fmt_f64(self.trace_ub),
            fmt_opt(self.suppression),
            fmt_opt(self.eta),
            self.seed.to_string(),
        ]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExactRow {
    pub code: String,
    pub n: usize,
    pub k: usize,
    pub p: f64,
    pub w_cut: usize,
    pub p_l: f64,
    /// I, X, Y, Z, other, uncorrected.
    pub q: [f64; 6],
    pub trunc_bound: f64,
    pub fidelity_lb: f64,
    pub trace_ub: f64,
    pub suppression: Option<f64>,
    pub eta: Option<f64>,
}

impl CsvRow for ExactRow {
    fn fields(&self) -> Vec<String> {
        let mut v = vec![
            self.code.clone(),
            self.n.to_string(),
            self.k.to_string(),
            fmt_f64(self.p),
            self.w_cut.to_string(),
            fmt_f64(self.p_l),
        ];
        v.extend(self.q.iter().map(|&q| fmt_f64(q)));
        v.extend([
            fmt_f64(self.trunc_bound),
            fmt_f64(self.fidelity_lb),
            fmt_f64(self.trace_ub),
            fmt_opt(self.suppression),
            fmt_opt(self.eta),
        ]);
        v
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HarmfulRow {
    pub code: String,
    pub n: usize,
    pub w: usize,
    pub h_w: u64,
    pub h_per_support: f64,
    /// `m^w`, the per-support count if every pattern were harmful.
    pub ceiling: f64,
}

impl CsvRow for HarmfulRow {
    fn fields(&self) -> Vec<String> {
        vec![
            self.code.clone(),
            self.n.to_string(),
            self.w.to_string(),
            self.h_w.to_string(),
            fmt_f64(self.h_per_support),
            fmt_f64(self.ceiling),
        ]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundsRow {
    pub mode: &'static str,
    pub q: f64,
    pub delta: f64,
    pub r_raw: f64,
    pub r_clamped: f64,
}

impl CsvRow for BoundsRow {
    fn fields(&self) -> Vec<String> {
        vec![
            self.mode.to_string(),
            fmt_f64(self.q),
            fmt_f64(self.delta),
            fmt_f64(self.r_raw),
            fmt_f64(self.r_clamped),
        ]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MetricsCsvRow {
    pub code: String,
    pub n: usize,
    pub k: usize,
    pub t: usize,
    pub model: &'static str,
    pub epsilon: f64,
    pub phi: f64,
    pub c_lead: f64,
    pub c_leak: f64,
    pub p: f64,
    pub p_l: f64,
    pub fidelity_lb: f64,
    pub trace_ub: f64,
    pub suppression: Option<f64>,
    pub eta: Option<f64>,
}

impl CsvRow for MetricsCsvRow {
    fn fields(&self) -> Vec<String> {
        vec![
            self.code.clone(),
            self.n.to_string(),
            self.k.to_string(),
            self.t.to_string(),
            self.model.to_string(),
            fmt_f64(self.epsilon),
            fmt_f64(self.phi),
            fmt_f64(self.c_lead),
            fmt_f64(self.c_leak),
            fmt_f64(self.p),
            fmt_f64(self.p_l),
            fmt_f64(self.fidelity_lb),
            fmt_f64(self.trace_ub),
            fmt_opt(self.suppression),
            fmt_opt(self.eta),
        ]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table1Row {
    pub mapping: String,
    pub code: String,
    pub n: usize,
    pub k: usize,
    pub d: String,
    pub d_claimed: usize,
    pub t: usize,
    pub overhead: String,
    pub overhead_claimed: String,
    pub exponent: usize,
    pub status: String,
}

impl CsvRow for Table1Row {
    fn fields(&self) -> Vec<String> {
        vec![
            self.mapping.clone(),
            self.code.clone(),
            self.n.to_string(),
            self.k.to_string(),
            self.d.clone(),
            self.d_claimed.to_string(),
            self.t.to_string(),
            self.overhead.clone(),
            self.overhead_claimed.clone(),
            self.exponent.to_string(),
            self.status.clone(),
        ]
    }
}

pub fn write_csv<W: Write, R: CsvRow>(out: W, header: &[&str], rows: &[R]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for r in rows {
        w.write_record(r.fields())?;
    }
    w.flush()?;
    Ok(())
}
