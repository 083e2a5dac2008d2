//! Monte Carlo campaigns over random instances.
//!
//! Each `(n, trial)` pair owns a random stream derived from the master seed,
//! so a campaign's records depend only on its configuration. Trials run on a
//! rayon pool and are collected in `(n, trial)` order before anything is
//! written.

use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytic::{expected_rowgreedy_exp, ks_statistic, lower_bound};
use crate::error::{Error, Result};
use crate::greedy::{complete_in_order, default_steps, global_greedy, row_greedy, GLOBAL_GREEDY_MAX_TUPLES};
use crate::model::{
    make_factorized, make_independent, CostModel, CostTensor, HashedUniformInstance, Instance, MAX_DIM, MAX_ENTRIES,
};
use crate::rng::RngSpec;

pub const SUMMARY_HEADER: &str = "model,d,n,m,algo,trial,seed,total,partial_total,lower_bound,runtime_ms";
pub const PER_STEP_HEADER: &str = "model,d,n,algo,trial,step,remaining,step_weight";

/// Limit on `n^d` per sample in [`gg_compare`].
pub const GG_COMPARE_MAX_TUPLES: u64 = 10_000_000;

// Stream tags keep the experiment families on disjoint streams.
const TAG_SMALL_M: u64 = 0x736d_616c_6c2d_6d00;
const TAG_GG: u64 = 0x6767_2d63_6d70_0000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algo {
    RowGreedy,
    GlobalGreedy,
}

impl Algo {
    pub fn as_str(&self) -> &'static str {
        match self {
            Algo::RowGreedy => "row-greedy",
            Algo::GlobalGreedy => "global-greedy",
        }
    }
}

impl std::str::FromStr for Algo {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "row-greedy" => Ok(Algo::RowGreedy),
            "global-greedy" => Ok(Algo::GlobalGreedy),
            other => Err(Error::parse(format!("unknown algorithm `{other}`"))),
        }
    }
}

/// How many row-greedy rounds to run before completing in order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MRule {
    /// `n - ceil(n^(1/(d+1)))`.
    #[default]
    Default,
    /// All `n` rounds.
    Full,
    Explicit(usize),
}

impl MRule {
    pub fn steps(&self, n: usize, d: usize) -> usize {
        match *self {
            MRule::Default => default_steps(n, d),
            MRule::Full => n,
            MRule::Explicit(m) => m,
        }
    }
}

impl std::str::FromStr for MRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "default" => Ok(MRule::Default),
            "full" => Ok(MRule::Full),
            other => other
                .parse::<usize>()
                .map(MRule::Explicit)
                .map_err(|_| Error::parse(format!("m must be `default`, `full` or an integer, got `{other}`"))),
        }
    }
}

impl Serialize for MRule {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            MRule::Default => ser.serialize_str("default"),
            MRule::Full => ser.serialize_str("full"),
            MRule::Explicit(m) => ser.serialize_u64(*m as u64),
        }
    }
}

impl<'de> Deserialize<'de> for MRule {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(u64),
            Text(String),
        }
        match Raw::deserialize(de)? {
            Raw::Int(m) => usize::try_from(m)
                .map(MRule::Explicit)
                .map_err(serde::de::Error::custom),
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Emit {
    #[default]
    Summary,
    PerStep,
}

impl std::str::FromStr for Emit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "summary" => Ok(Emit::Summary),
            "per-step" => Ok(Emit::PerStep),
            other => Err(Error::parse(format!("emit must be `summary` or `per-step`, got `{other}`"))),
        }
    }
}

/// A partially specified configuration, as read from a JSON file or
/// assembled from command-line flags. [`ConfigPatch::overlay`] lets flags
/// win over the file.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigPatch {
    pub model: Option<CostModel>,
    pub d: Option<usize>,
    pub n_values: Option<Vec<usize>>,
    pub m_rule: Option<MRule>,
    pub alpha: Option<f64>,
    pub algo: Option<Algo>,
    pub trials: Option<usize>,
    pub master_seed: Option<u64>,
    pub emit: Option<Emit>,
    pub out_path: Option<PathBuf>,
    pub threads: Option<usize>,
    pub lower_bound: Option<bool>,
    pub timing: Option<bool>,
}

impl ConfigPatch {
    pub fn from_json_str(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::config(e.to_string()))
    }

    /// Fields set in `top` replace those in `self`.
    pub fn overlay(self, top: ConfigPatch) -> ConfigPatch {
        ConfigPatch {
            model: top.model.or(self.model),
            d: top.d.or(self.d),
            n_values: top.n_values.or(self.n_values),
            m_rule: top.m_rule.or(self.m_rule),
            alpha: top.alpha.or(self.alpha),
            algo: top.algo.or(self.algo),
            trials: top.trials.or(self.trials),
            master_seed: top.master_seed.or(self.master_seed),
            emit: top.emit.or(self.emit),
            out_path: top.out_path.or(self.out_path),
            threads: top.threads.or(self.threads),
            lower_bound: top.lower_bound.or(self.lower_bound),
            timing: top.timing.or(self.timing),
        }
    }

    pub fn resolve(self) -> Result<ExperimentConfig> {
        let missing = |field: &str| Error::config(format!("missing required field `{field}`"));
        let config = ExperimentConfig {
            model: self.model.ok_or_else(|| missing("model"))?,
            d: self.d.ok_or_else(|| missing("d"))?,
            n_values: self.n_values.ok_or_else(|| missing("n_values"))?,
            m_rule: self.m_rule.unwrap_or_default(),
            alpha: self.alpha,
            algo: self.algo.unwrap_or(Algo::RowGreedy),
            trials: self.trials.ok_or_else(|| missing("trials"))?,
            master_seed: self.master_seed.ok_or_else(|| missing("master_seed"))?,
            emit: self.emit.unwrap_or_default(),
            out_path: self.out_path,
            threads: self.threads,
            lower_bound: self.lower_bound.unwrap_or(true),
            timing: self.timing.unwrap_or(true),
        };
        config.validated()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub model: CostModel,
    pub d: usize,
    /// Sorted, duplicate-free.
    pub n_values: Vec<usize>,
    pub m_rule: MRule,
    /// Exponent of the uniform-int scale `M = round(n^alpha)`.
    pub alpha: Option<f64>,
    pub algo: Algo,
    pub trials: usize,
    pub master_seed: u64,
    pub emit: Emit,
    pub out_path: Option<PathBuf>,
    /// Worker threads; `None` uses the machine's parallelism.
    pub threads: Option<usize>,
    /// Compute the plane-minimum lower bound for every trial.
    pub lower_bound: bool,
    /// Record wall-clock runtime per trial.
    pub timing: bool,
}

impl ExperimentConfig {
    pub fn from_json_str(text: &str) -> Result<Self> {
        ConfigPatch::from_json_str(text)?.resolve()
    }

    /// Checks invariants and memory guards; sorts and deduplicates `n_values`.
    pub fn validated(mut self) -> Result<Self> {
        if self.d < 2 || self.d > MAX_DIM {
            return Err(Error::config(format!("d must lie in [2, {MAX_DIM}], got {}", self.d)));
        }
        if self.trials < 1 {
            return Err(Error::config("trials must be at least 1"));
        }
        if self.n_values.is_empty() {
            return Err(Error::config("n_values must be nonempty"));
        }
        if self.n_values.contains(&0) {
            return Err(Error::config("every n must be at least 1"));
        }
        self.n_values.sort_unstable();
        self.n_values.dedup();
        match (self.model, self.alpha) {
            (CostModel::UniformInt, None) => return Err(Error::config("uniform-int model needs alpha")),
            (CostModel::UniformInt, Some(a)) if !(a.is_finite() && a >= 0.0) => {
                return Err(Error::config(format!("alpha must be a finite nonnegative real, got {a}")))
            }
            (CostModel::Factorized | CostModel::Exp1, Some(_)) => {
                return Err(Error::config("alpha applies only to the uniform-int model"))
            }
            _ => {}
        }
        if self.threads == Some(0) {
            return Err(Error::config("threads must be at least 1"));
        }
        let smallest = self.n_values[0];
        match (self.algo, self.m_rule) {
            (Algo::GlobalGreedy, MRule::Explicit(_)) => {
                return Err(Error::config("global greedy always runs to completion; use m = full"))
            }
            (Algo::RowGreedy, MRule::Explicit(m)) if m > smallest => {
                return Err(Error::config(format!("m = {m} exceeds the smallest n = {smallest}")))
            }
            _ => {}
        }
        let largest = *self.n_values.last().unwrap();
        let entries = match self.model {
            CostModel::Factorized => (largest as u128)
                .checked_pow(self.d as u32 - 1)
                .and_then(|e| e.checked_mul(self.d as u128)),
            _ => (largest as u128).checked_pow(self.d as u32),
        };
        if entries.map_or(true, |e| e > MAX_ENTRIES as u128) {
            return Err(Error::capacity(format!(
                "{} instance with d = {}, n = {largest} exceeds {MAX_ENTRIES} stored entries",
                self.model, self.d
            )));
        }
        if self.algo == Algo::GlobalGreedy {
            let tuples = (largest as u128).checked_pow(self.d as u32);
            if tuples.map_or(true, |t| t > GLOBAL_GREEDY_MAX_TUPLES as u128) {
                return Err(Error::capacity(format!(
                    "global greedy at d = {}, n = {largest} exceeds {GLOBAL_GREEDY_MAX_TUPLES} tuples",
                    self.d
                )));
            }
        }
        Ok(self)
    }

    /// Uniform-int scale for side `n`.
    pub fn scale_for(&self, n: usize) -> Option<u64> {
        self.alpha.map(|a| uniform_scale(n, a))
    }

    pub fn trial_rng(&self, n: usize, trial: usize) -> RngSpec {
        RngSpec::derive(self.master_seed, &[n as u64, trial as u64])
    }
}

/// `M = round(n^alpha)`, at least 1.
pub fn uniform_scale(n: usize, alpha: f64) -> u64 {
    ((n as f64).powf(alpha).round() as u64).max(1)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub model: CostModel,
    pub d: usize,
    pub n: usize,
    pub m: usize,
    pub algo: Algo,
    pub trial: usize,
    /// Stream id of the trial's instance.
    pub seed: u64,
    pub total: f64,
    pub partial_total: f64,
    pub lower_bound: Option<f64>,
    pub runtime_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    pub model: CostModel,
    pub d: usize,
    pub n: usize,
    pub algo: Algo,
    pub trial: usize,
    /// 1-based selection step.
    pub step: usize,
    /// `n - step + 1`.
    pub remaining: usize,
    pub step_weight: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Campaign {
    pub records: Vec<TrialRecord>,
    /// Empty unless the configuration emits per-step rows.
    pub steps: Vec<StepRecord>,
}

pub fn build_instance(config: &ExperimentConfig, n: usize, rng: RngSpec) -> Result<Instance> {
    Ok(match config.model {
        CostModel::Factorized => make_factorized(config.d, n, rng)?.into(),
        model => make_independent(config.d, n, model, config.scale_for(n), rng)?.into(),
    })
}

/// Runs the configured algorithm on one instance.
pub fn run_trial_on_instance(
    config: &ExperimentConfig,
    instance: &Instance,
    trial: usize,
    seed: u64,
) -> Result<(TrialRecord, Vec<StepRecord>)> {
    let n = instance.side();
    let d = instance.dim();
    let started = Instant::now();
    let (m, trace) = match config.algo {
        Algo::RowGreedy => {
            let m = config.m_rule.steps(n, d);
            let partial = row_greedy(instance, m)?;
            (m, complete_in_order(&partial, instance)?)
        }
        Algo::GlobalGreedy => (n, global_greedy(instance)?),
    };
    let elapsed = started.elapsed().as_secs_f64() * 1e3;
    let record = TrialRecord {
        model: instance.model(),
        d,
        n,
        m,
        algo: config.algo,
        trial,
        seed,
        total: trace.total.expect("completed trace"),
        partial_total: trace.partial_total,
        lower_bound: config.lower_bound.then(|| lower_bound(instance)),
        runtime_ms: config.timing.then_some(elapsed),
    };
    let steps = match config.emit {
        Emit::Summary => Vec::new(),
        Emit::PerStep => trace
            .step_weights
            .iter()
            .enumerate()
            .map(|(idx, &w)| StepRecord {
                model: record.model,
                d,
                n,
                algo: config.algo,
                trial,
                step: idx + 1,
                remaining: n - idx,
                step_weight: w,
            })
            .collect(),
    };
    Ok((record, steps))
}

/// Runs every `(n, trial)` of the configuration. The result is independent
/// of the number of worker threads.
pub fn run_campaign(config: &ExperimentConfig) -> Result<Campaign> {
    let config = config.clone().validated()?;
    let work: Vec<(usize, usize)> = config
        .n_values
        .iter()
        .flat_map(|&n| (0..config.trials).map(move |t| (n, t)))
        .collect();
    let run = |&(n, trial): &(usize, usize)| -> Result<(TrialRecord, Vec<StepRecord>)> {
        let rng = config.trial_rng(n, trial);
        let instance = build_instance(&config, n, rng)?;
        run_trial_on_instance(&config, &instance, trial, rng.stream_id)
    };
    let results: Vec<_> = with_pool(config.threads, || work.par_iter().map(run).collect::<Result<Vec<_>>>())??;
    let mut campaign = Campaign::default();
    for (record, steps) in results {
        campaign.records.push(record);
        campaign.steps.extend(steps);
    }
    Ok(campaign)
}

fn with_pool<T: Send>(threads: Option<usize>, job: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .map_err(|e| Error::config(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(job))
}

fn csv_writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out)
}

pub fn write_trial_csv<W: Write>(out: W, records: &[TrialRecord]) -> Result<()> {
    let mut w = csv_writer(out);
    if records.is_empty() {
        w.write_record(SUMMARY_HEADER.split(','))?;
    }
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_step_csv<W: Write>(out: W, steps: &[StepRecord]) -> Result<()> {
    let mut w = csv_writer(out);
    if steps.is_empty() {
        w.write_record(PER_STEP_HEADER.split(','))?;
    }
    for r in steps {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

fn read_with_header<R: Read, T: serde::de::DeserializeOwned>(input: R, header: &str) -> Result<Vec<T>> {
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let found = reader.headers()?.iter().collect::<Vec<_>>().join(",");
    if found != header {
        return Err(Error::parse(format!("unexpected CSV header `{found}`, expected `{header}`")));
    }
    reader
        .deserialize()
        .map(|row| row.map_err(Error::from))
        .collect()
}

pub fn read_trial_csv<R: Read>(input: R) -> Result<Vec<TrialRecord>> {
    read_with_header(input, SUMMARY_HEADER)
}

pub fn read_step_csv<R: Read>(input: R) -> Result<Vec<StepRecord>> {
    read_with_header(input, PER_STEP_HEADER)
}

/// Reads columns `x` and `y` of any headed CSV, drops rows with `x < min_x`,
/// and returns the mean of `y` for each distinct `x`, sorted by `x`.
pub fn column_means<R: Read>(input: R, x: &str, y: &str, min_x: Option<f64>) -> Result<Vec<(f64, f64)>> {
    let mut reader = csv::Reader::from_reader(input);
    let headers = reader.headers()?.clone();
    let column = |name: &str| {
        headers.iter().position(|h| h == name).ok_or_else(|| {
            Error::parse(format!(
                "column `{name}` not found; available: {}",
                headers.iter().collect::<Vec<_>>().join(",")
            ))
        })
    };
    let (xi, yi) = (column(x)?, column(y)?);
    let mut groups: BTreeMap<u64, (f64, f64, usize)> = BTreeMap::new();
    for row in reader.records() {
        let row = row?;
        let parse = |i: usize, name: &str| -> Result<f64> {
            let cell = row.get(i).unwrap_or("");
            cell.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::parse(format!("column `{name}`: `{cell}` is not a finite number")))
        };
        let (xv, yv) = (parse(xi, x)?, parse(yi, y)?);
        if min_x.is_some_and(|lo| xv < lo) {
            continue;
        }
        // Normalize -0.0 so it groups with 0.0.
        let entry = groups.entry((xv + 0.0).to_bits()).or_insert((xv, 0.0, 0));
        entry.1 += yv;
        entry.2 += 1;
    }
    if groups.is_empty() {
        return Err(Error::parse("CSV has no data rows"));
    }
    let mut points: Vec<(f64, f64)> = groups.values().map(|&(xv, sum, count)| (xv, sum / count as f64)).collect();
    points.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(points)
}

/// Writes the campaign's selected CSV to `path` (or the configured out_path).
pub fn write_campaign(config: &ExperimentConfig, campaign: &Campaign, path: Option<&Path>) -> Result<PathBuf> {
    let path = path
        .map(Path::to_path_buf)
        .or_else(|| config.out_path.clone())
        .ok_or_else(|| Error::config("no output path"))?;
    let mut file = std::io::BufWriter::new(std::fs::File::create(&path)?);
    match config.emit {
        Emit::Summary => write_trial_csv(&mut file, &campaign.records)?,
        Emit::PerStep => write_step_csv(&mut file, &campaign.steps)?,
    }
    file.flush()?;
    Ok(path)
}

/// Mean and standard error of one field within a group.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Stat {
    pub mean: f64,
    /// Sample standard deviation over `sqrt(count)`; 0 when `count == 1`.
    pub std_error: f64,
    pub count: usize,
}

pub fn mean_and_se(values: &[f64]) -> Result<Stat> {
    if values.is_empty() {
        return Err(Error::domain("cannot summarize an empty group"));
    }
    let count = values.len();
    let mean = values.iter().sum::<f64>() / count as f64;
    let std_error = if count == 1 {
        0.0
    } else {
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (count - 1) as f64;
        (var / count as f64).sqrt()
    };
    Ok(Stat { mean, std_error, count })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupSummary {
    pub n: usize,
    pub count: usize,
    /// True when the group has one record and its standard errors are placeholders.
    pub single_sample: bool,
    pub m: Stat,
    pub total: Stat,
    pub partial_total: Stat,
    pub lower_bound: Option<Stat>,
    pub runtime_ms: Option<Stat>,
}

/// Per-`n` mean and standard error of every numeric field.
pub fn summarize(records: &[TrialRecord]) -> Result<Vec<GroupSummary>> {
    if records.is_empty() {
        return Err(Error::domain("cannot summarize an empty record set"));
    }
    let mut groups: BTreeMap<usize, Vec<&TrialRecord>> = BTreeMap::new();
    for r in records {
        groups.entry(r.n).or_default().push(r);
    }
    groups
        .into_iter()
        .map(|(n, rows)| {
            let field = |f: &dyn Fn(&TrialRecord) -> f64| -> Result<Stat> {
                mean_and_se(&rows.iter().map(|r| f(r)).collect::<Vec<_>>())
            };
            let optional = |f: &dyn Fn(&TrialRecord) -> Option<f64>| -> Result<Option<Stat>> {
                let vals: Option<Vec<f64>> = rows.iter().map(|r| f(r)).collect();
                vals.map(|v| mean_and_se(&v)).transpose()
            };
            Ok(GroupSummary {
                n,
                count: rows.len(),
                single_sample: rows.len() == 1,
                m: field(&|r| r.m as f64)?,
                total: field(&|r| r.total)?,
                partial_total: field(&|r| r.partial_total)?,
                lower_bound: optional(&|r| r.lower_bound)?,
                runtime_ms: optional(&|r| r.runtime_ms)?,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SmallMReport {
    pub n: usize,
    pub alpha: f64,
    #[serde(rename = "M")]
    pub scale: u64,
    /// Greedy rounds, `n - ceil(ln n)`.
    pub m: usize,
    pub greedy_total: f64,
    pub partial_total: f64,
    /// `greedy_total / n`; every cost is at least 1, so this is at least 1.
    pub ratio: f64,
    pub evaluations: u64,
}

/// Row greedy on uniform integer costs in `{1, ..., round(n^alpha)}` with
/// `n - ceil(ln n)` rounds and in-order completion, `d = 3`.
///
/// The instance is generated on demand from a keyed hash, so `n^3` is
/// limited only by 64-bit indexing.
pub fn small_m_experiment(n: usize, alpha: f64, seed: u64) -> Result<SmallMReport> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::domain(format!("alpha must lie in (0, 1), got {alpha}")));
    }
    if n < 1 {
        return Err(Error::domain("side length must be at least 1"));
    }
    let scale = uniform_scale(n, alpha);
    let rng = RngSpec::derive(seed, &[TAG_SMALL_M, n as u64]);
    let instance = HashedUniformInstance::new(3, n, scale, rng)?;
    let m = n.saturating_sub((n as f64).ln().ceil() as usize);
    let partial = row_greedy(&instance, m)?;
    let done = complete_in_order(&partial, &instance)?;
    let total = done.total.expect("completed trace");
    Ok(SmallMReport {
        n,
        alpha,
        scale,
        m,
        greedy_total: total,
        partial_total: done.partial_total,
        ratio: total / n as f64,
        evaluations: done.evaluations,
    })
}

/// Paired samples of row-greedy (run to completion) and global-greedy
/// totals on the same exp1 instances.
#[derive(Debug, Clone, PartialEq)]
pub struct GgSamples {
    pub row_greedy: Vec<f64>,
    pub global_greedy: Vec<f64>,
}

pub fn gg_samples(d: usize, n: usize, samples: usize, seed: u64, threads: Option<usize>) -> Result<GgSamples> {
    if samples < 1 {
        return Err(Error::domain("need at least one sample"));
    }
    if !(2..=MAX_DIM).contains(&d) || n < 1 {
        return Err(Error::domain(format!("invalid d = {d}, n = {n}")));
    }
    let tuples = (n as u128).checked_pow(d as u32);
    if tuples.map_or(true, |t| t > GG_COMPARE_MAX_TUPLES as u128) {
        return Err(Error::capacity(format!(
            "gg-compare at d = {d}, n = {n} exceeds {GG_COMPARE_MAX_TUPLES} tuples per sample"
        )));
    }
    let one = |s: usize| -> Result<(f64, f64)> {
        let rng = RngSpec::derive(seed, &[TAG_GG, d as u64, n as u64, s as u64]);
        let inst = make_independent(d, n, CostModel::Exp1, None, rng)?;
        let g1 = row_greedy(&inst, n)?.partial_total;
        let g2 = global_greedy(&inst)?.total.expect("completed trace");
        Ok((g1, g2))
    };
    let pairs = with_pool(threads, || (0..samples).into_par_iter().map(one).collect::<Result<Vec<_>>>())??;
    let (row_greedy, global_greedy) = pairs.into_iter().unzip();
    Ok(GgSamples {
        row_greedy,
        global_greedy,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GgReport {
    pub d: usize,
    pub n: usize,
    pub samples: usize,
    pub mean_row_greedy: f64,
    pub se_row_greedy: f64,
    pub mean_global_greedy: f64,
    pub se_global_greedy: f64,
    /// `sum_{k=1}^n k^-(d-1)`.
    pub analytic_mean: f64,
    pub ks: f64,
}

impl GgSamples {
    pub fn report(&self, d: usize, n: usize) -> Result<GgReport> {
        let g1 = mean_and_se(&self.row_greedy)?;
        let g2 = mean_and_se(&self.global_greedy)?;
        Ok(GgReport {
            d,
            n,
            samples: self.row_greedy.len(),
            mean_row_greedy: g1.mean,
            se_row_greedy: g1.std_error,
            mean_global_greedy: g2.mean,
            se_global_greedy: g2.std_error,
            analytic_mean: expected_rowgreedy_exp(d as u32, n)?,
            ks: ks_statistic(&self.row_greedy, &self.global_greedy)?,
        })
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv_writer(out);
        w.write_record(["sample", "row_greedy", "global_greedy"])?;
        for (s, (a, b)) in self.row_greedy.iter().zip(&self.global_greedy).enumerate() {
            w.serialize((s, a, b))?;
        }
        w.flush()?;
        Ok(())
    }
}

pub fn gg_compare(d: usize, n: usize, samples: usize, seed: u64) -> Result<GgReport> {
    gg_samples(d, n, samples, seed, None)?.report(d, n)
}
