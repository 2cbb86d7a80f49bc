//! Depolarizing noise: syndrome-table decoding, Monte Carlo estimation,
//! exact enumeration and harmful-pattern counting.
//!
//! Every non-identity local Pauli occurs with probability `p/(q²−1)`, so a
//! pattern of weight `w` has probability `(p/(q²−1))^w (1−p)^{n−w}`.

use std::ops::ControlFlow;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::code::StabilizerCode;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::packed::{binomial, cumulative_pattern_count, Key, KeyTable};
use crate::pauli::PauliVector;

/// Default cap on decoder-table enumeration (patterns, weight 0 included).
pub const DEFAULT_DECODER_BUDGET: u128 = 60_000_000;
/// Largest leader weight that fits the packed leader encoding.
pub const MAX_LEADER_WEIGHT: usize = 6;
/// Largest pattern space, `q^{2n}`, enumerated in full without a truncation
/// weight: all Paulis on 13 qubits.
pub const EXACT_FULL_MAX_PATTERNS: u128 = 1 << 26;

const WILSON_Z: f64 = 1.959963984540054;
const TRIAL_CHUNK: u64 = 1 << 14;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseConfig {
    pub p: f64,
    pub trials: u64,
    pub seed: u64,
    pub workers: usize,
}

impl NoiseConfig {
    pub fn new(p: f64, trials: u64, seed: u64, workers: usize) -> Result<Self> {
        check_rate(p)?;
        if trials == 0 {
            return Err(Error::domain("trials must be at least 1"));
        }
        if workers == 0 {
            return Err(Error::domain("workers must be at least 1"));
        }
        Ok(NoiseConfig {
            p,
            trials,
            seed,
            workers,
        })
    }
}

fn check_rate(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::domain(format!("error rate must lie in [0, 1], got {p}")));
    }
    Ok(())
}

/// Outcome of decoding one error pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OutcomeClass {
    /// Residual in the stabilizer group.
    I,
    X,
    Y,
    Z,
    /// Non-trivial logical action outside the single-qubit X/Y/Z labels.
    Other,
    /// Syndrome absent from the table; no correction applied.
    Uncorrected,
}

impl OutcomeClass {
    pub const ALL: [OutcomeClass; 6] = [
        OutcomeClass::I,
        OutcomeClass::X,
        OutcomeClass::Y,
        OutcomeClass::Z,
        OutcomeClass::Other,
        OutcomeClass::Uncorrected,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn is_failure(self) -> bool {
        self != OutcomeClass::I
    }

    pub fn label(self) -> &'static str {
        match self {
            OutcomeClass::I => "I",
            OutcomeClass::X => "X",
            OutcomeClass::Y => "Y",
            OutcomeClass::Z => "Z",
            OutcomeClass::Other => "other",
            OutcomeClass::Uncorrected => "uncorrected",
        }
    }
}

/// Counts per [`OutcomeClass`], indexed by [`OutcomeClass::index`].
pub type ClassCounts = [u64; 6];

fn add_counts(mut a: ClassCounts, b: ClassCounts) -> ClassCounts {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

fn failures(c: &ClassCounts) -> u64 {
    c[1..].iter().sum()
}

enum LeaderMap {
    Narrow(FxHashMap<u64, u64>),
    Wide(FxHashMap<u128, u64>),
}

/// Minimum-weight coset-leader lookup. Leaders are found by ascending-weight
/// enumeration; the first pattern seen for a syndrome wins.
pub struct DecoderTable {
    code: String,
    keys: KeyTable,
    w_max: usize,
    map: LeaderMap,
    coverage: f64,
}

impl std::fmt::Debug for DecoderTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DecoderTable")
            .field("code", &self.code)
            .field("w_max", &self.w_max)
            .field("entries", &self.len())
            .field("coverage", &self.coverage)
            .finish()
    }
}

fn pack_leader(support: &[usize], locals: &[u8]) -> u64 {
    let mut v = (support.len() as u64) << 60;
    for (i, (&s, &l)) in support.iter().zip(locals).enumerate() {
        v |= (((s as u64) << 3) | l as u64) << (10 * i);
    }
    v
}

fn unpack_leader(v: u64) -> impl Iterator<Item = (usize, usize)> {
    let w = (v >> 60) as usize;
    (0..w).map(move |i| {
        let slot = (v >> (10 * i)) & 0x3ff;
        ((slot >> 3) as usize, (slot & 7) as usize)
    })
}

fn narrow_syndrome(field: Field, syn: u128) -> u64 {
    if field.is_binary() {
        syn as u64
    } else {
        (syn as u64 & 0xffff_ffff) | (((syn >> 64) as u64) << 32)
    }
}

/// Number of syndromes, `q^rank`, as a float.
fn syndrome_space(field: Field, rank: usize) -> f64 {
    (field.order() as f64).powi(rank as i32)
}

/// Largest `w ≤ MAX_LEADER_WEIGHT` whose table fits `budget`.
pub fn auto_decoder_weight(code: &StabilizerCode, budget: u128) -> usize {
    (0..=MAX_LEADER_WEIGHT.min(code.n()))
        .take_while(|&w| cumulative_pattern_count(code.field(), code.n(), w) < budget)
        .last()
        .unwrap_or(0)
}

pub fn build_decoder(code: &StabilizerCode, w_max: usize) -> Result<DecoderTable> {
    build_decoder_with_budget(code, w_max, DEFAULT_DECODER_BUDGET)
}

pub fn build_decoder_with_budget(code: &StabilizerCode, w_max: usize, budget: u128) -> Result<DecoderTable> {
    let w_max = w_max.min(code.n());
    if w_max > MAX_LEADER_WEIGHT {
        return Err(Error::Resource(format!(
            "decoder leaders are limited to weight {MAX_LEADER_WEIGHT}; use a smaller w_max"
        )));
    }
    if code.n() > 128 {
        return Err(Error::Resource("decoder tables support n <= 128".into()));
    }
    let patterns = 1 + cumulative_pattern_count(code.field(), code.n(), w_max);
    if patterns > budget {
        return Err(Error::Resource(format!(
            "decoder table with w_max={w_max} needs {patterns} patterns, budget is {budget}; use a smaller w_max"
        )));
    }
    let keys = KeyTable::new(code)?;
    let field = code.field();
    let narrow = if field.is_binary() {
        keys.rank() <= 64
    } else {
        keys.rank() <= 32
    };
    let space = syndrome_space(field, keys.rank());
    let reserve = (patterns as f64).min(space) as usize;
    let mut map = if narrow {
        LeaderMap::Narrow(FxHashMap::with_capacity_and_hasher(reserve, Default::default()))
    } else {
        LeaderMap::Wide(FxHashMap::with_capacity_and_hasher(reserve, Default::default()))
    };
    let mut len = 0usize;
    for w in 0..=w_max {
        let _ = keys.scan_weight::<()>(w, &mut |support, locals, key| {
            let inserted = match &mut map {
                LeaderMap::Narrow(m) => {
                    let mut new = false;
                    m.entry(narrow_syndrome(field, key.syn)).or_insert_with(|| {
                        new = true;
                        pack_leader(support, locals)
                    });
                    new
                }
                LeaderMap::Wide(m) => {
                    let mut new = false;
                    m.entry(key.syn).or_insert_with(|| {
                        new = true;
                        pack_leader(support, locals)
                    });
                    new
                }
            };
            len += inserted as usize;
            ControlFlow::Continue(())
        });
        if len as f64 >= space {
            break;
        }
    }
    Ok(DecoderTable {
        code: code.name().to_string(),
        keys,
        w_max,
        map,
        coverage: len as f64 / space,
    })
}

impl DecoderTable {
    pub fn code_name(&self) -> &str {
        &self.code
    }

    pub fn w_max(&self) -> usize {
        self.w_max
    }

    pub fn coverage(&self) -> f64 {
        self.coverage
    }

    pub fn len(&self) -> usize {
        match &self.map {
            LeaderMap::Narrow(m) => m.len(),
            LeaderMap::Wide(m) => m.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn keys(&self) -> &KeyTable {
        &self.keys
    }

    fn lookup(&self, syn: u128) -> Option<u64> {
        match &self.map {
            LeaderMap::Narrow(m) => m.get(&narrow_syndrome(self.keys.field(), syn)).copied(),
            LeaderMap::Wide(m) => m.get(&syn).copied(),
        }
    }

    fn leader_key(&self, packed: u64) -> Key {
        unpack_leader(packed).fold(Key::default(), |acc, (s, l)| {
            self.keys.add(acc, self.keys.contribution(s, l))
        })
    }

    fn leader_pauli(&self, packed: u64) -> PauliVector {
        let (support, locals): (Vec<usize>, Vec<u8>) = unpack_leader(packed).map(|(s, l)| (s, l as u8)).unzip();
        self.keys.pattern_to_pauli(&support, &locals)
    }

    /// Stored coset leader for the syndrome of `e`.
    pub fn leader_for(&self, e: &PauliVector) -> Option<PauliVector> {
        self.lookup(self.keys.key_of(e).syn).map(|v| self.leader_pauli(v))
    }

    /// Every stored (leader, weight) pair, in no particular order.
    pub fn leaders(&self) -> Vec<PauliVector> {
        let values: Vec<u64> = match &self.map {
            LeaderMap::Narrow(m) => m.values().copied().collect(),
            LeaderMap::Wide(m) => m.values().copied().collect(),
        };
        values.into_iter().map(|v| self.leader_pauli(v)).collect()
    }

    fn class_of_log(&self, log: u128) -> OutcomeClass {
        if log == 0 {
            return OutcomeClass::I;
        }
        if self.keys.field().is_binary() && self.keys.k() == 1 {
            match (log & 1, (log >> 1) & 1) {
                (1, 0) => OutcomeClass::X,
                (0, 1) => OutcomeClass::Z,
                _ => OutcomeClass::Y,
            }
        } else {
            OutcomeClass::Other
        }
    }

    /// Decode an error given by its key.
    #[inline]
    pub fn classify_key(&self, key: Key) -> OutcomeClass {
        match self.lookup(key.syn) {
            None => OutcomeClass::Uncorrected,
            Some(leader) => {
                let residual = self.keys.sub(key, self.leader_key(leader));
                debug_assert_eq!(residual.syn, 0);
                self.class_of_log(residual.log)
            }
        }
    }
}

/// Decode `e` and report the logical action of the residual `e − leader`.
pub fn run_trial(table: &DecoderTable, e: &PauliVector) -> Result<OutcomeClass> {
    if e.n() != table.keys.n() || e.field() != table.keys.field() {
        return Err(Error::dim("error pattern does not match the decoder's code"));
    }
    Ok(table.classify_key(table.keys.key_of(e)))
}

/// Syndrome of `e` against the independent stabilizer basis.
pub fn syndrome(code: &StabilizerCode, e: &PauliVector) -> Result<Vec<u8>> {
    code.stabilizer_basis()
        .iter()
        .map(|g| g.symplectic_product(e))
        .collect()
}

#[inline]
fn draw_local(r: f64, p: f64, m: usize) -> Option<usize> {
    (r < p).then(|| ((m as f64 * r / p) as usize).min(m - 1))
}

/// One i.i.d. depolarizing pattern.
pub fn sample_depolarizing<R: Rng + ?Sized>(field: Field, n: usize, p: f64, rng: &mut R) -> PauliVector {
    let locals = field.local_pairs();
    let mut e = PauliVector::identity(field, n);
    for j in 0..n {
        if let Some(l) = draw_local(rng.random::<f64>(), p, locals.len()) {
            let (x, z) = locals[l];
            e.set(j, x, z);
        }
    }
    e
}

/// Random stream for trial `index`: ChaCha8 keyed by the seed, stream = index.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimResult {
    pub code: String,
    pub p: f64,
    pub trials: u64,
    pub seed: u64,
    pub counts: ClassCounts,
    pub failures: u64,
    pub p_l: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub wall_time_s: f64,
}

impl SimResult {
    pub fn count(&self, class: OutcomeClass) -> u64 {
        self.counts[class.index()]
    }

    /// Binomial standard error of `p_l`.
    pub fn std_error(&self) -> f64 {
        (self.p_l * (1.0 - self.p_l) / self.trials as f64).sqrt()
    }
}

/// Wilson 95% interval; zero failures give `[0, 3/trials]`.
pub fn wilson_interval(failures: u64, trials: u64) -> (f64, f64) {
    let n = trials as f64;
    if failures == 0 {
        return (0.0, (3.0 / n).min(1.0));
    }
    let phat = failures as f64 / n;
    let z2 = WILSON_Z * WILSON_Z;
    let denom = 1.0 + z2 / n;
    let center = (phat + z2 / (2.0 * n)) / denom;
    let half = WILSON_Z * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((center - half).max(0.0).min(phat), (center + half).min(1.0).max(phat))
}

fn simulate_range(table: &DecoderTable, base: &ChaCha8Rng, p: f64, lo: u64, hi: u64) -> ClassCounts {
    let keys = &table.keys;
    let (n, m) = (keys.n(), keys.local_count());
    let mut counts = ClassCounts::default();
    for t in lo..hi {
        let mut rng = base.clone();
        rng.set_stream(t);
        let mut key = Key::default();
        for j in 0..n {
            if let Some(l) = draw_local(rng.random::<f64>(), p, m) {
                key = keys.add(key, keys.contribution(j, l));
            }
        }
        counts[table.classify_key(key).index()] += 1;
    }
    counts
}

/// Monte Carlo estimate of `p_L`. Trial `i` draws from [`trial_rng`]`(seed, i)`,
/// so the counts depend only on `(seed, trials, p)`, not on `workers`.
pub fn estimate_logical_error(table: &DecoderTable, cfg: &NoiseConfig) -> Result<SimResult> {
    NoiseConfig::new(cfg.p, cfg.trials, cfg.seed, cfg.workers)?;
    let start = Instant::now();
    let base = ChaCha8Rng::seed_from_u64(cfg.seed);
    let chunks = cfg.trials.div_ceil(TRIAL_CHUNK);
    let run = || {
        (0..chunks)
            .into_par_iter()
            .map(|c| {
                let lo = c * TRIAL_CHUNK;
                let hi = (lo + TRIAL_CHUNK).min(cfg.trials);
                simulate_range(table, &base, cfg.p, lo, hi)
            })
            .reduce(ClassCounts::default, add_counts)
    };
    let counts = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::Resource(format!("thread pool: {e}")))?
        .install(run);
    let fails = failures(&counts);
    let (ci_low, ci_high) = wilson_interval(fails, cfg.trials);
    Ok(SimResult {
        code: table.code.clone(),
        p: cfg.p,
        trials: cfg.trials,
        seed: cfg.seed,
        counts,
        failures: fails,
        p_l: fails as f64 / cfg.trials as f64,
        ci_low,
        ci_high,
        wall_time_s: start.elapsed().as_secs_f64(),
    })
}

/// Outcome counts of every pattern of weight `0..=w_cut`, grouped by weight.
/// Independent of `p`; evaluate at any rate with [`WeightProfile::evaluate`].
#[derive(Clone, Debug, PartialEq)]
pub struct WeightProfile {
    pub code: String,
    pub n: usize,
    pub local_paulis: usize,
    pub w_cut: usize,
    pub by_weight: Vec<ClassCounts>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExactResult {
    pub p: f64,
    pub w_cut: usize,
    /// Probability mass of each outcome class over enumerated weights.
    pub q: [f64; 6],
    pub p_l: f64,
    /// Total probability of the patterns above `w_cut` (0 when complete).
    pub trunc_bound: f64,
}

impl ExactResult {
    pub fn q(&self, class: OutcomeClass) -> f64 {
        self.q[class.index()]
    }
}

/// Probability that a specific weight-`w` pattern occurs.
pub fn pattern_probability(n: usize, m: usize, w: usize, p: f64) -> f64 {
    (p / m as f64).powi(w as i32) * (1.0 - p).powi((n - w) as i32)
}

/// `Σ_{w > w_cut} C(n,w) p^w (1−p)^{n−w}`.
pub fn truncation_bound(n: usize, w_cut: usize, p: f64) -> f64 {
    (w_cut + 1..=n)
        .map(|w| binomial(n, w) as f64 * p.powi(w as i32) * (1.0 - p).powi((n - w) as i32))
        .sum()
}

impl WeightProfile {
    pub fn is_complete(&self) -> bool {
        self.w_cut == self.n
    }

    /// Raw number of harmful weight-`w` patterns, `Ĥ_w`.
    pub fn harmful(&self, w: usize) -> Option<u64> {
        self.by_weight.get(w).map(failures)
    }

    /// `Ĥ_w / C(n,w)`.
    pub fn harmful_per_support(&self, w: usize) -> Option<f64> {
        self.harmful(w).map(|h| h as f64 / binomial(self.n, w) as f64)
    }

    /// Per-support harmful counts for `w = 0..=w_cut`.
    pub fn per_support_table(&self) -> Vec<Option<f64>> {
        (0..=self.w_cut).map(|w| self.harmful_per_support(w)).collect()
    }

    pub fn evaluate(&self, p: f64) -> Result<ExactResult> {
        check_rate(p)?;
        let mut q = [0.0; 6];
        for (w, counts) in self.by_weight.iter().enumerate() {
            let pr = pattern_probability(self.n, self.local_paulis, w, p);
            for (acc, &c) in q.iter_mut().zip(counts) {
                *acc += c as f64 * pr;
            }
        }
        let p_l = q[1..].iter().sum();
        Ok(ExactResult {
            p,
            w_cut: self.w_cut,
            q,
            p_l,
            trunc_bound: truncation_bound(self.n, self.w_cut, p),
        })
    }
}

fn count_weight(table: &DecoderTable, w: usize) -> ClassCounts {
    let keys = &table.keys;
    if w == 0 {
        let mut c = ClassCounts::default();
        c[table.classify_key(Key::default()).index()] += 1;
        return c;
    }
    (0..keys.n())
        .into_par_iter()
        .map(|first| {
            let mut c = ClassCounts::default();
            let _ = keys.scan_partition::<()>(w, first, &mut |_, _, key| {
                c[table.classify_key(key).index()] += 1;
                ControlFlow::Continue(())
            });
            c
        })
        .reduce(ClassCounts::default, add_counts)
}

/// Classify every pattern of weight `0..=w_cut` (full enumeration when `None`,
/// allowed up to 13 qubits).
pub fn enumerate_outcomes(table: &DecoderTable, w_cut: Option<usize>, budget: u128) -> Result<WeightProfile> {
    let n = table.keys.n();
    let space = ((table.keys.local_count() + 1) as u128).checked_pow(n as u32);
    let w_cut = match w_cut {
        Some(w) => w.min(n),
        None if space.is_some_and(|s| s <= EXACT_FULL_MAX_PATTERNS) => n,
        None => {
            return Err(Error::Resource(format!(
            "full enumeration is limited to {EXACT_FULL_MAX_PATTERNS} patterns (13 qubits); pass a truncation weight"
        )))
        }
    };
    let patterns = 1 + cumulative_pattern_count(table.keys.field(), n, w_cut);
    if patterns > budget {
        return Err(Error::Resource(format!(
            "enumeration to weight {w_cut} needs {patterns} patterns, budget is {budget}"
        )));
    }
    Ok(WeightProfile {
        code: table.code.clone(),
        n,
        local_paulis: table.keys.local_count(),
        w_cut,
        by_weight: (0..=w_cut).map(|w| count_weight(table, w)).collect(),
    })
}

/// Exact `p_L` and logical channel `q_α` by enumeration.
pub fn exact_logical_error(table: &DecoderTable, p: f64, w_cut: Option<usize>, budget: u128) -> Result<ExactResult> {
    check_rate(p)?;
    enumerate_outcomes(table, w_cut, budget)?.evaluate(p)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HarmfulCount {
    pub w: usize,
    /// `Ĥ_w`: harmful weight-`w` patterns in total.
    pub total: u64,
    /// `Ĥ_w / C(n,w)`.
    pub per_support: f64,
}

pub fn count_harmful(table: &DecoderTable, w: usize, budget: u128) -> Result<HarmfulCount> {
    let n = table.keys.n();
    if w > n {
        return Ok(HarmfulCount {
            w,
            total: 0,
            per_support: 0.0,
        });
    }
    let patterns = crate::packed::pattern_count(table.keys.field(), n, w);
    if patterns > budget {
        return Err(Error::Resource(format!(
            "weight {w} has {patterns} patterns, budget is {budget}"
        )));
    }
    let total = failures(&count_weight(table, w));
    Ok(HarmfulCount {
        w,
        total,
        per_support: total as f64 / binomial(n, w) as f64,
    })
}

/// `Σ_{w ≥ 1} H_w C(n,w) p^w (1−p)^{n−w}` with per-support `H_w`; entries
/// that are missing (or beyond the slice) take the ceiling `(q²−1)^w`.
pub fn union_bound_pl(n: usize, local_paulis: usize, p: f64, per_support: &[Option<f64>]) -> f64 {
    (1..=n)
        .map(|w| {
            let h = per_support
                .get(w)
                .copied()
                .flatten()
                .unwrap_or_else(|| (local_paulis as f64).powi(w as i32));
            h * binomial(n, w) as f64 * p.powi(w as i32) * (1.0 - p).powi((n - w) as i32)
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder;

    #[test]
    fn leader_packing_round_trips() {
        let v = pack_leader(&[0, 17, 127], &[2, 0, 7]);
        assert_eq!(unpack_leader(v).collect::<Vec<_>>(), vec![(0, 2), (17, 0), (127, 7)]);
        assert_eq!(unpack_leader(pack_leader(&[], &[])).count(), 0);
    }

    #[test]
    fn five_qubit_table_is_perfect() {
        let code = builder::five_qubit().unwrap();
        let t = build_decoder(&code, 1).unwrap();
        assert_eq!(t.len(), 16);
        assert_eq!(t.coverage(), 1.0);
        let t0 = build_decoder(&code, 0).unwrap();
        assert_eq!(t0.len(), 1);
        assert!(t0.leaders()[0].is_identity());
    }

    #[test]
    fn weight_two_errors_fail_on_five_qubit_code() {
        let code = builder::five_qubit().unwrap();
        let t = build_decoder(&code, 1).unwrap();
        let e = PauliVector::parse(Field::BINARY, "11000|00000").unwrap();
        assert!(run_trial(&t, &e).unwrap().is_failure());
        for g in code.generators() {
            assert_eq!(run_trial(&t, g).unwrap(), OutcomeClass::I);
        }
        assert_eq!(
            run_trial(&t, &PauliVector::identity(Field::BINARY, 5)).unwrap(),
            OutcomeClass::I
        );
        let prof = enumerate_outcomes(&t, None, u128::MAX).unwrap();
        assert_eq!(prof.harmful(1), Some(0));
        assert_eq!(prof.harmful(2), Some(90));
    }

    #[test]
    fn syndromes() {
        let code = builder::five_qubit().unwrap();
        for l in code.logicals() {
            assert!(syndrome(&code, &l.x).unwrap().iter().all(|&s| s == 0));
        }
        let x3 = PauliVector::single(Field::BINARY, 5, 3, 1, 0);
        assert!(syndrome(&code, &x3).unwrap().iter().any(|&s| s != 0));
    }

    #[test]
    fn exact_normalization_and_zero_rate() {
        let code = builder::five_qubit().unwrap();
        let t = build_decoder(&code, 5).unwrap();
        let r = exact_logical_error(&t, 0.1, None, u128::MAX).unwrap();
        assert!((r.q.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert_eq!(r.trunc_bound, 0.0);
        assert_eq!(exact_logical_error(&t, 0.0, None, u128::MAX).unwrap().p_l, 0.0);
    }

    #[test]
    fn wilson_contains_estimate() {
        let (lo, hi) = wilson_interval(10, 1000);
        assert!(lo < 0.01 && 0.01 < hi);
        assert_eq!(wilson_interval(0, 100), (0.0, 0.03));
        assert_eq!(wilson_interval(0, 1), (0.0, 1.0));
    }

    #[test]
    fn sampling_extremes() {
        let mut rng = trial_rng(1, 0);
        assert!(sample_depolarizing(Field::BINARY, 7, 0.0, &mut rng).is_identity());
        assert_eq!(sample_depolarizing(Field::BINARY, 7, 1.0, &mut rng).weight(), 7);
        assert_eq!(sample_depolarizing(Field::TERNARY, 7, 1.0, &mut rng).weight(), 7);
    }

    #[test]
    fn union_bound_cases() {
        assert_eq!(union_bound_pl(5, 3, 0.1, &[Some(0.0); 6]), 0.0);
        let ceiling = union_bound_pl(5, 3, 0.1, &[]);
        assert!((ceiling - ((1.0f64 - 0.1 + 0.3).powi(5) - 0.9f64.powi(5))).abs() < 1e-12);
    }

    #[test]
    fn decoder_budget_errors() {
        let code = builder::five_qubit().unwrap();
        assert!(matches!(
            build_decoder_with_budget(&code, 3, 10),
            Err(Error::Resource(_))
        ));
    }
}
