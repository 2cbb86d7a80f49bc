use anyhow::{bail, ensure, Context, Result};

/// Parse a physical error-rate grid.
///
/// Accepts `start:stop:lin:count`, `start:stop:log:count` (both endpoints
/// included) or a comma-separated list. The result must be strictly
/// increasing and inside `[0, 1]`.
pub fn parse_p_grid(spec: &str) -> Result<Vec<f64>> {
    let spec = spec.trim();
    let parts: Vec<&str> = spec.split(':').collect();
    let grid = match parts.as_slice() {
        [start, stop, scale, count] => {
            let start: f64 = start
                .trim()
                .parse()
                .with_context(|| format!("bad grid start {start:?}"))?;
            let stop: f64 = stop.trim().parse().with_context(|| format!("bad grid stop {stop:?}"))?;
            let count: usize = count
                .trim()
                .parse()
                .with_context(|| format!("bad grid count {count:?}"))?;
            ensure!(count >= 1, "grid count must be positive");
            if count == 1 {
                vec![start]
            } else {
                let frac = |i: usize| i as f64 / (count - 1) as f64;
                match scale.trim() {
                    "lin" => (0..count).map(|i| start + (stop - start) * frac(i)).collect(),
                    "log" => {
                        ensure!(start > 0.0 && stop > 0.0, "log grid needs positive endpoints");
                        let (a, b) = (start.ln(), stop.ln());
                        (0..count)
                            .map(|i| match i {
                                0 => start,
                                i if i == count - 1 => stop,
                                i => (a + (b - a) * frac(i)).exp(),
                            })
                            .collect()
                    }
                    other => bail!("grid scale must be 'lin' or 'log', got {other:?}"),
                }
            }
        }
        [_] => spec
            .split(',')
            .map(|v| v.trim().parse::<f64>().with_context(|| format!("bad grid value {v:?}")))
            .collect::<Result<Vec<_>>>()?,
        _ => bail!("p grid must be 'start:stop:lin|log:count' or a comma list, got {spec:?}"),
    };
    ensure!(
        grid.iter().all(|p| (0.0..=1.0).contains(p)),
        "error rates must lie in [0, 1]: {spec}"
    );
    ensure!(
        grid.windows(2).all(|w| w[0] < w[1]),
        "p grid must be strictly increasing: {spec}"
    );
    Ok(grid)
}
