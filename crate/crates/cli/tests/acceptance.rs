//! Acceptance gate: one PASS/FAIL line per primary criterion.
//!
//! Runs without the libtest harness so the lines are always printed; the
//! process exits non-zero if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use anyhow::{ensure, Context, Result};
use qortho::bounds::{gvb_orthogonal, gvb_quasi, linspace, metric_row, scaling_exponent};
use qortho::noise::{
    build_decoder, enumerate_outcomes, estimate_logical_error, exact_logical_error, union_bound_pl, NoiseConfig,
};
use qortho::quasi::{effective_distance, pl_orthogonal, pl_quasi, OverlapSpec, QuasiModelParams};
use qortho::{min_weight_logical, DistanceRecord, MinWeight, SearchBudget, StabilizerCode};
use qortho_cli::pipeline::{self, DecoderOptions, ExactOptions, MetricsOptions, SimulateOptions};
use qortho_cli::report::{self, write_csv};
use qortho_cli::{load_code, parse_p_grid, CodeSelector, SelectOptions};

type Outcome = Result<String>;
type Criterion = (&'static str, fn() -> Outcome);

fn code(sel: CodeSelector) -> Result<StabilizerCode> {
    load_code(&sel, &SelectOptions::default())
}

/// The qubit fixtures with at most 13 qubits.
fn small_fixtures() -> Result<Vec<StabilizerCode>> {
    [
        CodeSelector::Five,
        CodeSelector::EightThree,
        CodeSelector::TenFour,
        CodeSelector::Qr(Some(13)),
    ]
    .into_iter()
    .map(code)
    .collect()
}

fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    parse_p_grid(&format!("{lo}:{hi}:log:{count}")).expect("valid grid")
}

/// Ordinary least-squares slope of `ln y` against `ln x`.
fn fitted_slope(points: &[(f64, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

/// Independent rate oracle: `1 − 2δ log₂ q − H₂(2δ)` with natural logs.
fn gvb_oracle(delta: f64, q: f64) -> f64 {
    let x = 2.0 * delta;
    let h2 = if x == 0.0 || x == 1.0 {
        0.0
    } else {
        -(x * x.ln() + (1.0 - x) * (1.0 - x).ln()) / std::f64::consts::LN_2
    };
    1.0 - x * q.ln() / std::f64::consts::LN_2 - h2
}

fn code_parameters() -> Outcome {
    let mut notes = Vec::new();
    for (sel, params, d) in [
        (CodeSelector::Five, "[[5,1,3]]", 3),
        (CodeSelector::EightThree, "[[8,3,3]]", 3),
        (CodeSelector::TenFour, "[[10,4,3]]", 3),
        (CodeSelector::Qr(Some(13)), "[[13,1,5]]", 5),
    ] {
        let c = code(sel)?;
        c.verify()?;
        ensure!(c.parameters() == params, "{} has {}", c.name(), c.parameters());
        match min_weight_logical(&c, d, SearchBudget::default())? {
            MinWeight::Exact { d: found, .. } if found == d => {}
            other => anyhow::bail!("{}: search gave {other:?}", c.name()),
        }
        notes.push(params.to_string());
    }
    let qr29 = code(CodeSelector::Qr(Some(29)))?;
    ensure!((qr29.n(), qr29.k()) == (29, 1), "qr29 is [[{},{}]]", qr29.n(), qr29.k());
    let start = Instant::now();
    let found = min_weight_logical(&qr29, 5, SearchBudget::default())?;
    let took = start.elapsed();
    ensure!(found == MinWeight::NoLogicalBelow(6), "qr29 search gave {found:?}");
    ensure!(took < Duration::from_secs(300), "qr29 certificate took {took:?}");
    notes.push(format!(
        "[[29,1]] no logical of weight <= 5 ({:.2}s)",
        took.as_secs_f64()
    ));
    Ok(notes.join(", "))
}

fn monte_carlo_vs_exact() -> Outcome {
    let trials = 1_000_000;
    let mut worst: f64 = 0.0;
    let mut slowest = Duration::ZERO;
    for sel in [CodeSelector::Five, CodeSelector::EightThree] {
        let c = code(sel)?;
        let table = build_decoder(&c, c.n().min(6))?;
        for p in [0.05, 0.1, 0.2] {
            let exact = exact_logical_error(&table, p, None, u128::MAX)?.p_l;
            let start = Instant::now();
            let mc = estimate_logical_error(&table, &NoiseConfig::new(p, trials, 42, 1)?)?;
            slowest = slowest.max(start.elapsed());
            let sigma = (exact * (1.0 - exact) / trials as f64).sqrt();
            let z = (mc.p_l - exact).abs() / sigma;
            ensure!(
                z <= 3.0,
                "{} p={p}: mc {} exact {exact} ({z:.2} sigma)",
                c.name(),
                mc.p_l
            );
            worst = worst.max(z);
        }
    }
    ensure!(slowest < Duration::from_secs(60), "slowest point took {slowest:?}");
    Ok(format!(
        "max deviation {worst:.2} sigma at 1e6 trials, slowest point {:.2}s",
        slowest.as_secs_f64()
    ))
}

fn scaling_exponents() -> Outcome {
    let grid = log_grid(1e-3, 1e-2, 11);
    let mut notes = Vec::new();
    let targets = [(2.0, 0.15), (2.0, 0.15), (2.0, 0.15), (3.0, 0.3)];
    for (c, (target, tol)) in small_fixtures()?.into_iter().zip(targets) {
        let t = c.t().context("distance known")?;
        let opts = ExactOptions {
            p_grid: grid.clone(),
            w_cut: Some(2 * t + 2),
            decoder: DecoderOptions::default(),
            budget: u128::MAX,
        };
        let (rows, _) = pipeline::exact(&c, &opts)?;
        let eta = fitted_slope(&rows.iter().map(|r| (r.p, r.p_l)).collect::<Vec<_>>());
        ensure!((eta - target).abs() <= tol, "{}: eta {eta} vs {target}", c.name());
        notes.push(format!("{} {eta:.3}", c.name()));
    }
    let rows = pipeline::table1(&pipeline::Table1Options::default())?;
    let qr29 = rows.iter().find(|r| r.mapping == "1->29").context("qr29 row")?;
    ensure!(qr29.exponent == 6, "qr29 exponent {}", qr29.exponent);
    let model: Vec<(f64, f64)> = grid.iter().map(|&p| (p, pl_orthogonal(p, qr29.t, 1.0))).collect();
    for (_, eta) in scaling_exponent(&model)? {
        ensure!(
            (eta.context("positive grid")? - 6.0).abs() < 1e-9,
            "qr29 analytic slope {eta:?}"
        );
    }
    notes.push("qr29 analytic 6".into());
    Ok(notes.join(", "))
}

fn union_bound_validity() -> Outcome {
    let grid = log_grid(1e-3, 0.3, 25);
    let mut points = 0;
    for c in small_fixtures()? {
        let t = c.t().context("distance known")?;
        let table = build_decoder(&c, c.n().min(6))?;
        ensure!(table.coverage() == 1.0, "{} decoder table is partial", c.name());
        let prof = enumerate_outcomes(&table, None, u128::MAX)?;
        for w in 0..=t {
            ensure!(
                prof.harmful(w) == Some(0),
                "{}: H_{w} = {:?}",
                c.name(),
                prof.harmful(w)
            );
        }
        let h = prof.per_support_table();
        let m = c.field().local_paulis();
        for &p in &grid {
            let exact = prof.evaluate(p)?.p_l;
            let ub = union_bound_pl(c.n(), m, p, &h);
            ensure!(ub >= exact, "{} p={p}: bound {ub} < exact {exact}", c.name());
            ensure!(
                union_bound_pl(c.n(), m, p, &[]) >= ub,
                "{} ceiling bound below counted bound",
                c.name()
            );
            points += 1;
        }
    }
    Ok(format!("{points} grid points over 4 codes; H_w = 0 for w <= t"))
}

fn gvb_dominance() -> Outcome {
    let deltas: Vec<f64> = (1..=512).map(|i| 0.25 * i as f64 / 512.0).collect();
    let mut min_gap = f64::INFINITY;
    let mut max_q3 = 0.0f64;
    for &d in &deltas {
        let gap = gvb_quasi(d, 2.0)? - gvb_orthogonal(d)?;
        ensure!(gap > 0.0, "no dominance at delta={d}");
        min_gap = min_gap.min(gap);
        max_q3 = max_q3.max((gvb_quasi(d, 3.0)? - gvb_orthogonal(d)?).abs());
        ensure!(
            (gvb_orthogonal(d)? - gvb_oracle(d, 3.0)).abs() < 1e-12,
            "orthogonal rate off at {d}"
        );
    }
    ensure!(max_q3 <= 1e-12, "q=3 differs by {max_q3}");
    let (ro, rq) = (gvb_orthogonal(0.1)?, gvb_quasi(0.1, 2.0)?);
    let (oo, oq) = (gvb_oracle(0.1, 3.0), gvb_oracle(0.1, 2.0));
    ensure!(
        (ro - oo).abs() < 1e-4 && (ro - -0.0389).abs() < 1e-4,
        "R_orth(0.1) = {ro}, oracle {oo}"
    );
    ensure!(
        (rq - oq).abs() < 1e-4 && (rq - 0.0781).abs() < 1e-4,
        "R_quasi(0.1,2) = {rq}, oracle {oq}"
    );
    Ok(format!(
        "512 points, min gap {min_gap:.3e}; R_orth(0.1)={ro:.5}, R_quasi(0.1,2)={rq:.5}; q=3 max diff {max_q3:.1e}"
    ))
}

fn metrics_consistency() -> Outcome {
    let grid = log_grid(1e-3, 0.3, 15);
    let mut rows = 0;
    for c in small_fixtures()? {
        let opts = MetricsOptions {
            p_grid: grid.clone(),
            overlap: OverlapSpec::new(0.05, 0.0)?,
            c_lead: None,
            c_leak: None,
            decoder: DecoderOptions::default(),
            budget: u128::MAX,
            exact: true,
        };
        for r in pipeline::metrics(&c, &opts)? {
            let m = metric_row(r.p, r.p_l)?;
            ensure!(
                m.fuchs_van_de_graaf_holds() && m.fidelity_lb == r.fidelity_lb && m.trace_ub == r.trace_ub,
                "{} {} p={}: sandwich fails",
                c.name(),
                r.model,
                r.p
            );
            rows += 1;
        }
        let sim = pipeline::simulate(
            &c,
            &SimulateOptions {
                p_grid: vec![0.05, 0.1, 0.3],
                trials: 5000,
                seed: 42,
                workers: 1,
                decoder: DecoderOptions::default(),
                verbose: false,
            },
        )?;
        for r in sim {
            ensure!(
                metric_row(r.p, r.p_l)?.fuchs_van_de_graaf_holds(),
                "{} simulate p={}",
                c.name(),
                r.p
            );
            rows += 1;
        }
    }
    let mut worst = 0.0f64;
    for a in [0.5, 1.0, 2.0, 3.0, 6.0, 7.5] {
        for c in [1e-3, 1.0, 250.0] {
            let pts: Vec<(f64, f64)> = log_grid(1e-4, 1e-1, 13)
                .into_iter()
                .map(|p| (p, c * p.powf(a)))
                .collect();
            for (_, eta) in scaling_exponent(&pts)? {
                worst = worst.max((eta.context("positive")? - a).abs());
            }
        }
    }
    ensure!(worst < 1e-6, "power-law recovery error {worst}");
    for t in 0..6 {
        let params = QuasiModelParams::new(t, 17.0, 3.0, 0.0)?;
        for p in linspace(0.0, 1.0, 200) {
            ensure!(
                pl_quasi(p, &params).to_bits() == pl_orthogonal(p, t, 17.0).to_bits(),
                "epsilon=0 differs at t={t}, p={p}"
            );
        }
    }
    Ok(format!(
        "{rows} emitted rows satisfy the sandwich; power-law error {worst:.1e}; epsilon=0 bitwise equal"
    ))
}

fn figure_substitutes() -> Outcome {
    let dir = tempfile::tempdir()?;
    let grid = parse_p_grid("1e-3:0.3:log:12")?;
    let mut files = 0;
    for c in small_fixtures()? {
        let metrics = pipeline::metrics(
            &c,
            &MetricsOptions {
                p_grid: grid.clone(),
                overlap: OverlapSpec::new(0.05, 0.0)?,
                c_lead: None,
                c_leak: None,
                decoder: DecoderOptions::default(),
                budget: u128::MAX,
                exact: true,
            },
        )?;
        ensure!(
            metrics.len() == 3 * grid.len(),
            "{}: {} metric rows",
            c.name(),
            metrics.len()
        );
        let path = dir.path().join(format!("{}_metrics.csv", c.name()));
        write_csv(std::fs::File::create(&path)?, &report::METRICS_HEADER, &metrics)?;
        check_csv(&path, &report::METRICS_HEADER, metrics.len())?;
        let sim = pipeline::simulate(
            &c,
            &SimulateOptions {
                p_grid: grid.clone(),
                trials: 5000,
                seed: 42,
                workers: 1,
                decoder: DecoderOptions::default(),
                verbose: false,
            },
        )?;
        let path = dir.path().join(format!("{}_simulate.csv", c.name()));
        write_csv(std::fs::File::create(&path)?, &report::SIMULATE_HEADER, &sim)?;
        check_csv(&path, &report::SIMULATE_HEADER, grid.len())?;
        files += 2;

        let d = match c.distance() {
            DistanceRecord::Exact(d) => d,
            other => anyhow::bail!("{} distance {other}", c.name()),
        };
        let d_eff = effective_distance(&c, 0.5, OverlapSpec::orthogonal())?;
        ensure!(d_eff == d, "{}: d_eff {d_eff} vs d {d}", c.name());
    }
    let t = 2;
    let params = QuasiModelParams::new(t, 1.0, 1.0, 0.05)?;
    let pts: Vec<(f64, f64)> = log_grid(1e-12, 1e-1, 45)
        .into_iter()
        .map(|p| (p, pl_quasi(p, &params)))
        .collect();
    let etas: Vec<f64> = scaling_exponent(&pts)?.into_iter().map(|(_, e)| e.unwrap()).collect();
    ensure!((etas[0] - t as f64).abs() < 1e-3, "eta(0+) = {}", etas[0]);
    ensure!(etas.windows(2).all(|w| w[0] <= w[1] + 1e-12), "eta is not monotone");
    ensure!(etas.iter().all(|&e| e < t as f64 + 1.0), "eta exceeds t+1");
    Ok(format!(
        "{files} complete CSVs; d_eff(eps=0) = d on 4 codes; leakage eta(1e-12) = {:.5} -> t={t}",
        etas[0]
    ))
}

fn check_csv(path: &std::path::Path, header: &[&str], rows: usize) -> Result<()> {
    let mut r = csv::Reader::from_path(path)?;
    ensure!(
        r.headers()?.iter().eq(header.iter().copied()),
        "{}: header",
        path.display()
    );
    let p_l = header.iter().position(|h| *h == "p_L").context("p_L column")?;
    let mut count = 0;
    for rec in r.records() {
        let rec = rec?;
        ensure!(rec.len() == header.len(), "{}: ragged row", path.display());
        rec[p_l]
            .parse::<f64>()
            .with_context(|| format!("{}: p_L {:?}", path.display(), &rec[p_l]))?;
        count += 1;
    }
    ensure!(count == rows, "{}: {count} rows, expected {rows}", path.display());
    Ok(())
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir()?;
    let bin = env!("CARGO_BIN_EXE_qortho");
    let runs: [&[&str]; 3] = [
        &[
            "simulate",
            "--code",
            "five",
            "--p-grid",
            "0.05,0.1,0.2",
            "--trials",
            "20000",
            "--seed",
            "9",
        ],
        &[
            "simulate",
            "--code",
            "eight-three",
            "--p-grid",
            "0.01:0.3:log:5",
            "--trials",
            "20000",
        ],
        &["exact", "--code", "ten-four", "--p-grid", "1e-3:0.3:log:9"],
    ];
    for (i, args) in runs.iter().enumerate() {
        let mut outputs = Vec::new();
        for rep in 0..2 {
            let out = dir.path().join(format!("run{i}_{rep}.csv"));
            let status = Command::new(bin)
                .args(*args)
                .arg("--out")
                .arg(&out)
                .stderr(std::process::Stdio::null())
                .status()?;
            ensure!(status.success(), "{args:?} exited with {status}");
            outputs.push(std::fs::read(&out)?);
        }
        ensure!(
            !outputs[0].is_empty() && outputs[0] == outputs[1],
            "{args:?} reruns differ"
        );
    }
    Ok("3 commands rerun byte-identically".into())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("code parameters", code_parameters),
        ("monte carlo vs exact enumeration", monte_carlo_vs_exact),
        ("scaling exponents", scaling_exponents),
        ("union bound validity", union_bound_validity),
        ("GV bound dominance", gvb_dominance),
        ("metrics consistency", metrics_consistency),
        ("figure-claim substitutes", figure_substitutes),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let start = Instant::now();
        match f() {
            Ok(detail) => println!("PASS {name}: {detail} [{:.1}s]", start.elapsed().as_secs_f64()),
            Err(e) => {
                failed += 1;
                println!("FAIL {name}: {e:#}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
