use anyhow::{bail, ensure, Context, Result};
use qortho::bounds::{
    bound_curve, linspace, metric_row, overhead, rate_surface, with_exponents, BoundMode, MetricsRow,
    DEFAULT_DELTA_MAX, DEFAULT_DELTA_STEPS,
};
use qortho::builder;
use qortho::noise::{
    auto_decoder_weight, build_decoder_with_budget, count_harmful, enumerate_outcomes, estimate_logical_error,
    DecoderTable, NoiseConfig, WeightProfile, DEFAULT_DECODER_BUDGET, EXACT_FULL_MAX_PATTERNS,
};
use qortho::quasi::{pl_orthogonal, pl_quasi, OverlapSpec, QuasiModelParams};
use qortho::{DistanceRecord, StabilizerCode};

use crate::report::{BoundsRow, ExactRow, HarmfulRow, MetricsCsvRow, SimulateRow, Table1Row};
use crate::select::{load_code, CodeSelector, SelectOptions};
use crate::CheckFailed;

#[derive(Clone, Copy, Debug)]
pub struct DecoderOptions {
    /// Leader weight; chosen from the budget when absent.
    pub w_max: Option<usize>,
    pub budget: u128,
}

impl Default for DecoderOptions {
    fn default() -> Self {
        DecoderOptions {
            w_max: None,
            budget: DEFAULT_DECODER_BUDGET,
        }
    }
}

pub fn decoder_for(code: &StabilizerCode, opts: DecoderOptions) -> Result<DecoderTable> {
    let w = opts.w_max.unwrap_or_else(|| auto_decoder_weight(code, opts.budget));
    Ok(build_decoder_with_budget(code, w, opts.budget)?)
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Local exponents when the grid has enough positive points; left blank otherwise.
fn attach_exponents(rows: &mut [MetricsRow]) -> Result<()> {
    if rows.iter().filter(|r| r.p > 0.0 && r.p_l > 0.0).count() >= 3 {
        with_exponents(rows)?;
    }
    Ok(())
}

fn distance_label(code: &StabilizerCode) -> String {
    code.distance().to_string()
}

#[derive(Clone, Debug)]
pub struct SimulateOptions {
    pub p_grid: Vec<f64>,
    pub trials: u64,
    pub seed: u64,
    pub workers: usize,
    pub decoder: DecoderOptions,
    /// Report progress and decoder coverage on stderr.
    pub verbose: bool,
}

pub fn simulate(code: &StabilizerCode, opts: &SimulateOptions) -> Result<Vec<SimulateRow>> {
    let table = decoder_for(code, opts.decoder)?;
    if opts.verbose && table.coverage() < 1.0 {
        eprintln!(
            "note: decoder for {} covers {:.4} of syndromes (leaders up to weight {}); unmatched syndromes count as failures",
            code.name(),
            table.coverage(),
            table.w_max()
        );
    }
    let mut sims = Vec::with_capacity(opts.p_grid.len());
    for &p in &opts.p_grid {
        let cfg = NoiseConfig::new(p, opts.trials, opts.seed, opts.workers)?;
        let r = estimate_logical_error(&table, &cfg)?;
        if opts.verbose {
            eprintln!(
                "{} p={p}: {}/{} failures in {:.2}s",
                code.name(),
                r.failures,
                r.trials,
                r.wall_time_s
            );
        }
        sims.push(r);
    }
    let mut metrics = sims
        .iter()
        .map(|r| metric_row(r.p, r.p_l))
        .collect::<qortho::Result<Vec<_>>>()?;
    attach_exponents(&mut metrics)?;
    Ok(sims
        .iter()
        .zip(metrics)
        .map(|(r, m)| SimulateRow {
            code: code.name().to_string(),
            n: code.n(),
            k: code.k(),
            d_or_bound: distance_label(code),
            p: r.p,
            trials: r.trials,
            failures: r.failures,
            p_l: r.p_l,
            ci_low: r.ci_low,
            ci_high: r.ci_high,
            fidelity_lb: m.fidelity_lb,
            trace_ub: m.trace_ub,
            suppression: m.suppression,
            eta: m.eta,
            seed: r.seed,
        })
        .collect())
}

/// Full enumeration when every pattern fits the cap, otherwise truncation
/// at the largest weight up to the decoder's leader weight that still fits.
pub fn default_w_cut(code: &StabilizerCode, table: &DecoderTable) -> Option<usize> {
    if default_full(code) {
        return None;
    }
    let m = code.field().local_paulis() as f64;
    let mut total = 0.0;
    let mut cut = 0;
    for w in 0..=table.w_max() {
        total += binomial(code.n(), w) * m.powi(w as i32);
        if total > EXACT_FULL_MAX_PATTERNS as f64 {
            break;
        }
        cut = w;
    }
    Some(cut)
}

#[derive(Clone, Debug)]
pub struct ExactOptions {
    pub p_grid: Vec<f64>,
    pub w_cut: Option<usize>,
    pub decoder: DecoderOptions,
    /// Pattern cap for the enumeration itself.
    pub budget: u128,
}

pub fn weight_profile(code: &StabilizerCode, opts: &ExactOptions) -> Result<WeightProfile> {
    let table = decoder_for(code, opts.decoder)?;
    let w_cut = opts.w_cut.or_else(|| default_w_cut(code, &table));
    Ok(enumerate_outcomes(&table, w_cut, opts.budget)?)
}

pub fn exact_rows(code: &StabilizerCode, profile: &WeightProfile, p_grid: &[f64]) -> Result<Vec<ExactRow>> {
    let results = p_grid
        .iter()
        .map(|&p| profile.evaluate(p))
        .collect::<qortho::Result<Vec<_>>>()?;
    let mut metrics = results
        .iter()
        .map(|r| metric_row(r.p, r.p_l.min(1.0)))
        .collect::<qortho::Result<Vec<_>>>()?;
    attach_exponents(&mut metrics)?;
    Ok(results
        .iter()
        .zip(metrics)
        .map(|(r, m)| ExactRow {
            code: code.name().to_string(),
            n: code.n(),
            k: code.k(),
            p: r.p,
            w_cut: r.w_cut,
            p_l: r.p_l,
            q: r.q,
            trunc_bound: r.trunc_bound,
            fidelity_lb: m.fidelity_lb,
            trace_ub: m.trace_ub,
            suppression: m.suppression,
            eta: m.eta,
        })
        .collect())
}

pub fn exact(code: &StabilizerCode, opts: &ExactOptions) -> Result<(Vec<ExactRow>, WeightProfile)> {
    let profile = weight_profile(code, opts)?;
    Ok((exact_rows(code, &profile, &opts.p_grid)?, profile))
}

pub fn harmful_rows(code: &StabilizerCode, profile: &WeightProfile) -> Vec<HarmfulRow> {
    (0..=profile.w_cut)
        .map(|w| HarmfulRow {
            code: code.name().to_string(),
            n: code.n(),
            w,
            h_w: profile.harmful(w).unwrap_or(0),
            h_per_support: profile.harmful_per_support(w).unwrap_or(0.0),
            ceiling: (profile.local_paulis as f64).powi(w as i32),
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct BoundsOptions {
    pub modes: Vec<BoundMode>,
    /// Alphabet parameter of the quasi curve.
    pub q: f64,
    pub q_grid: Vec<f64>,
    pub delta_max: f64,
    pub delta_steps: usize,
}

impl Default for BoundsOptions {
    fn default() -> Self {
        BoundsOptions {
            modes: vec![BoundMode::Orthogonal, BoundMode::Quasi],
            q: 2.0,
            q_grid: linspace(
                qortho::bounds::DEFAULT_Q_MIN,
                qortho::bounds::DEFAULT_Q_MAX,
                qortho::bounds::DEFAULT_Q_STEPS,
            ),
            delta_max: DEFAULT_DELTA_MAX,
            delta_steps: DEFAULT_DELTA_STEPS,
        }
    }
}

pub fn bounds(opts: &BoundsOptions) -> Result<Vec<BoundsRow>> {
    ensure!(
        opts.delta_max > 0.0 && opts.delta_max <= 0.5,
        "delta range must end in (0, 0.5], got {}",
        opts.delta_max
    );
    let deltas = linspace(0.0, opts.delta_max, opts.delta_steps);
    let mut curves = Vec::new();
    for &mode in &opts.modes {
        match mode {
            BoundMode::Surface => curves.extend(rate_surface(&opts.q_grid, &deltas)?),
            mode => curves.push(bound_curve(mode, opts.q, &deltas)?),
        }
    }
    Ok(curves
        .iter()
        .flat_map(|c| {
            c.samples.iter().map(move |&(delta, r)| BoundsRow {
                mode: c.mode.label(),
                q: c.q,
                delta,
                r_raw: r,
                r_clamped: r.max(0.0),
            })
        })
        .collect())
}

#[derive(Clone, Debug)]
pub struct MetricsOptions {
    pub p_grid: Vec<f64>,
    pub overlap: OverlapSpec,
    pub c_lead: Option<f64>,
    pub c_leak: Option<f64>,
    pub decoder: DecoderOptions,
    pub budget: u128,
    /// Add exact-enumeration rows when full enumeration is feasible.
    pub exact: bool,
}

/// Leading coefficients of the analytic models.
#[derive(Clone, Debug)]
pub struct Coefficients {
    pub t: usize,
    pub c_lead: f64,
    pub c_leak: f64,
    /// Harmful weight-`t+1` count they were derived from, if any.
    pub harmful: Option<u64>,
    pub profile: Option<WeightProfile>,
}

/// `c_lead = Ĥ_{t+1}/m^{t+1}` and `c_leak = Ĥ_{t+1}/C(n,t+1)` unless given.
pub fn coefficients(code: &StabilizerCode, opts: &MetricsOptions) -> Result<Coefficients> {
    let t = code
        .t()
        .with_context(|| format!("{} has no known distance; cannot fix t", code.name()))?;
    let full = default_full(code);
    let need_counts = opts.c_lead.is_none() || opts.c_leak.is_none() || (opts.exact && full);
    if !need_counts {
        return Ok(Coefficients {
            t,
            c_lead: opts.c_lead.unwrap_or_default(),
            c_leak: opts.c_leak.unwrap_or_default(),
            harmful: None,
            profile: None,
        });
    }
    let table = decoder_for(code, opts.decoder)?;
    let profile = if full {
        Some(enumerate_outcomes(&table, None, opts.budget)?)
    } else {
        None
    };
    let w = t + 1;
    let harmful = match &profile {
        Some(p) => p.harmful(w).unwrap_or(0),
        None if opts.c_lead.is_some() && opts.c_leak.is_some() => 0,
        None => {
            if table.w_max() < w && table.coverage() < 1.0 {
                bail!(
                    "{}: counting harmful weight-{w} errors needs leaders up to weight {w} (table has {}); pass --c-lead and --c-leak",
                    code.name(),
                    table.w_max()
                );
            }
            count_harmful(&table, w, opts.budget)?.total
        }
    };
    let m = code.field().local_paulis() as f64;
    Ok(Coefficients {
        t,
        c_lead: opts.c_lead.unwrap_or(harmful as f64 / m.powi(w as i32)),
        c_leak: opts.c_leak.unwrap_or(harmful as f64 / binomial(code.n(), w)),
        harmful: Some(harmful),
        profile,
    })
}

fn default_full(code: &StabilizerCode) -> bool {
    let m = code.field().local_paulis() as u128;
    (m + 1)
        .checked_pow(code.n() as u32)
        .is_some_and(|s| s <= EXACT_FULL_MAX_PATTERNS)
}

pub fn metrics(code: &StabilizerCode, opts: &MetricsOptions) -> Result<Vec<MetricsCsvRow>> {
    let c = coefficients(code, opts)?;
    let eps = opts.overlap.epsilon();
    let params = QuasiModelParams::new(c.t, c.c_lead, c.c_leak, eps)?;
    let mut models: Vec<(&'static str, f64, f64, Vec<f64>)> = vec![
        (
            "orthogonal",
            0.0,
            0.0,
            opts.p_grid.iter().map(|&p| pl_orthogonal(p, c.t, c.c_lead)).collect(),
        ),
        (
            "quasi",
            eps,
            opts.overlap.phi(),
            opts.p_grid.iter().map(|&p| pl_quasi(p, &params)).collect(),
        ),
    ];
    if let (true, Some(profile)) = (opts.exact, &c.profile) {
        let vals = opts
            .p_grid
            .iter()
            .map(|&p| Ok(profile.evaluate(p)?.p_l))
            .collect::<Result<Vec<_>>>()?;
        models.push(("exact", 0.0, 0.0, vals));
    }
    let mut out = Vec::new();
    for (model, epsilon, phi, values) in models {
        // The leading-order models are asymptotic; past p_L = 1 they are
        // reported saturated.
        let mut rows = opts
            .p_grid
            .iter()
            .zip(&values)
            .map(|(&p, &pl)| metric_row(p, pl.clamp(0.0, 1.0)))
            .collect::<qortho::Result<Vec<_>>>()?;
        attach_exponents(&mut rows)?;
        out.extend(rows.into_iter().map(|r| MetricsCsvRow {
            code: code.name().to_string(),
            n: code.n(),
            k: code.k(),
            t: c.t,
            model,
            epsilon,
            phi,
            c_lead: c.c_lead,
            c_leak: c.c_leak,
            p: r.p,
            p_l: r.p_l,
            fidelity_lb: r.fidelity_lb,
            trace_ub: r.trace_ub,
            suppression: r.suppression,
            eta: r.eta,
        }));
    }
    Ok(out)
}

/// Reference parameters of the catalogued mappings.
pub struct Table1Reference {
    pub mapping: &'static str,
    pub selector: CodeSelector,
    pub d_claimed: usize,
    pub overhead_claimed: &'static str,
}

pub fn table1_reference() -> Vec<Table1Reference> {
    vec![
        Table1Reference {
            mapping: "3->8",
            selector: CodeSelector::EightThree,
            d_claimed: 3,
            overhead_claimed: "2.67",
        },
        Table1Reference {
            mapping: "4->10",
            selector: CodeSelector::TenFour,
            d_claimed: 3,
            overhead_claimed: "2.5",
        },
        Table1Reference {
            mapping: "1->13",
            selector: CodeSelector::Qr(Some(13)),
            d_claimed: builder::qr_claimed_distance(13).unwrap_or(5),
            overhead_claimed: "13",
        },
        Table1Reference {
            mapping: "1->29",
            selector: CodeSelector::Qr(Some(29)),
            d_claimed: builder::qr_claimed_distance(29).unwrap_or(11),
            overhead_claimed: "29",
        },
    ]
}

#[derive(Clone, Debug)]
pub struct Table1Options {
    pub select: SelectOptions,
    /// Search weight for codes too large to settle exactly.
    pub large_w_max: usize,
}

impl Default for Table1Options {
    fn default() -> Self {
        Table1Options {
            select: SelectOptions::default(),
            large_w_max: 5,
        }
    }
}

/// Rebuild each catalogued code and compare it with the reference values.
pub fn table1(opts: &Table1Options) -> Result<Vec<Table1Row>> {
    let mut rows = Vec::new();
    for r in table1_reference() {
        let mut sel = opts.select.clone();
        if matches!(r.selector, CodeSelector::Qr(Some(p)) if p > 13) && sel.w_max.is_none() {
            sel.w_max = Some(opts.large_w_max);
        }
        let code = load_code(&r.selector, &sel)?;
        let ratio = overhead(&code)?;
        let numeric = *ratio.numer() as f64 / *ratio.denom() as f64;
        let claimed_ratio: f64 = r.overhead_claimed.parse()?;
        let mut problems = Vec::new();
        let mut status = "ok".to_string();
        match code.distance() {
            DistanceRecord::Exact(d) if d == r.d_claimed => {}
            DistanceRecord::LowerBound { at_least, .. } if at_least <= r.d_claimed => {
                status = format!("lower-bound (no logical below weight {at_least})");
            }
            other => problems.push(format!("distance {other} vs {}", r.d_claimed)),
        }
        if (numeric - claimed_ratio).abs() >= 0.005 {
            problems.push(format!("overhead {ratio} vs {}", r.overhead_claimed));
        }
        if !problems.is_empty() {
            status = format!("mismatch: {}", problems.join("; "));
        }
        let t = (r.d_claimed - 1) / 2;
        rows.push(Table1Row {
            mapping: r.mapping.to_string(),
            code: code.name().to_string(),
            n: code.n(),
            k: code.k(),
            d: distance_label(&code),
            d_claimed: r.d_claimed,
            t,
            overhead: ratio.to_string(),
            overhead_claimed: r.overhead_claimed.to_string(),
            exponent: t + 1,
            status,
        });
    }
    Ok(rows)
}

/// Error out (as a verification failure) if any row disagrees with its reference.
pub fn check_table1(rows: &[Table1Row]) -> Result<()> {
    let bad: Vec<String> = rows
        .iter()
        .filter(|r| r.status.starts_with("mismatch"))
        .map(|r| format!("{}: {}", r.mapping, r.status))
        .collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(CheckFailed(bad.join(", ")).into())
    }
}
