//! Problem instances, tuple weights and assignments.
//!
//! Tuples are 0-based internally: a tuple is a slice of `d` coordinates,
//! each in `0..n`, and coordinate 0 is the "row". Serialized forms (instance
//! files, printed assignments) are converted at the boundary.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{bounded, RngSpec};

/// Largest number of stored tensor entries any constructor will allocate (2 GiB of `f64`).
pub const MAX_ENTRIES: usize = 1 << 28;
/// Largest supported dimension.
pub const MAX_DIM: usize = 32;

/// The three random cost models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CostModel {
    /// Sum of `d` factor tensors of i.i.d. uniforms.
    Factorized,
    /// Independent exponential weights with rate 1.
    Exp1,
    /// Independent integers uniform on `{1, ..., M}`.
    UniformInt,
}

impl CostModel {
    pub fn as_str(&self) -> &'static str {
        match self {
            CostModel::Factorized => "factorized",
            CostModel::Exp1 => "exp1",
            CostModel::UniformInt => "uniform-int",
        }
    }
}

impl std::fmt::Display for CostModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for CostModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "factorized" => Ok(CostModel::Factorized),
            "exp1" => Ok(CostModel::Exp1),
            "uniform-int" => Ok(CostModel::UniformInt),
            other => Err(Error::parse(format!("unknown cost model `{other}`"))),
        }
    }
}

/// Minimum over a box `{first} x S_1 x ... x S_{d-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxMin {
    pub weight: f64,
    /// Lexicographically smallest tuple attaining `weight`.
    pub tuple: Vec<usize>,
    /// Number of weights evaluated by the scan.
    pub evaluations: u64,
}

/// Read access to the weight tensor of an instance.
pub trait CostTensor: Sync {
    fn dim(&self) -> usize;

    fn side(&self) -> usize;

    /// Weight of an in-range tuple. Out-of-range tuples may panic.
    fn weight_at(&self, tuple: &[usize]) -> f64;

    /// A weight that is both a lower bound on every entry and attainable with
    /// positive probability. Box scans may stop as soon as they reach it.
    fn support_floor(&self) -> Option<f64> {
        None
    }

    fn weight(&self, tuple: &[usize]) -> Result<f64> {
        check_tuple(self.dim(), self.side(), tuple)?;
        Ok(self.weight_at(tuple))
    }

    /// Minimum weight over `{first} x sets[0] x ... x sets[d-2]`.
    ///
    /// Each set must be nonempty, strictly increasing and within `0..n`;
    /// callers validate with [`check_box`].
    fn box_min(&self, first: usize, sets: &[Vec<usize>]) -> BoxMin {
        let d = self.dim();
        let mut buf = vec![0usize; d];
        scan_box(d, first, sets, self.support_floor(), |outer, inner, best| {
            buf.copy_from_slice(outer);
            for (idx, &k) in inner.iter().enumerate() {
                buf[d - 1] = k;
                let w = self.weight_at(&buf);
                if w < best.weight {
                    best.improve(w, &buf);
                    if best.at_floor() {
                        best.evaluations += idx as u64 + 1;
                        return true;
                    }
                }
            }
            best.evaluations += inner.len() as u64;
            false
        })
    }
}

pub(crate) fn check_tuple(d: usize, n: usize, tuple: &[usize]) -> Result<()> {
    if tuple.len() != d {
        return Err(Error::domain(format!(
            "tuple has {} coordinates, instance has d = {d}",
            tuple.len()
        )));
    }
    if let Some(&c) = tuple.iter().find(|&&c| c >= n) {
        return Err(Error::domain(format!(
            "coordinate {} outside [1, {n}]",
            c + 1
        )));
    }
    Ok(())
}

/// Validates the arguments of [`CostTensor::box_min`].
pub fn check_box(d: usize, n: usize, first: usize, sets: &[Vec<usize>]) -> Result<()> {
    if first >= n {
        return Err(Error::domain(format!("row {} outside [1, {n}]", first + 1)));
    }
    if sets.len() + 1 != d {
        return Err(Error::domain(format!(
            "expected {} value sets, got {}",
            d - 1,
            sets.len()
        )));
    }
    for (t, set) in sets.iter().enumerate() {
        if set.is_empty() {
            return Err(Error::domain(format!("value set for coordinate {} is empty", t + 2)));
        }
        if set.iter().any(|&v| v >= n) {
            return Err(Error::domain(format!(
                "value set for coordinate {} leaves [1, {n}]",
                t + 2
            )));
        }
        if set.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::domain(format!(
                "value set for coordinate {} is not strictly increasing",
                t + 2
            )));
        }
    }
    Ok(())
}

pub(crate) struct Best {
    pub weight: f64,
    pub tuple: Vec<usize>,
    pub evaluations: u64,
    floor: Option<f64>,
}

impl Best {
    #[inline]
    pub fn improve(&mut self, weight: f64, tuple: &[usize]) {
        self.weight = weight;
        self.tuple.clear();
        self.tuple.extend_from_slice(tuple);
    }

    #[inline]
    pub fn improve_last(&mut self, weight: f64, outer: &[usize], last: usize) {
        self.weight = weight;
        self.tuple.clear();
        self.tuple.extend_from_slice(outer);
        *self.tuple.last_mut().unwrap() = last;
    }

    #[inline]
    pub fn at_floor(&self) -> bool {
        matches!(self.floor, Some(f) if self.weight <= f)
    }
}

/// Drives an odometer over the outer coordinates `1..d-1` of the box and
/// hands each outer position to `kernel` together with the innermost set.
/// The kernel returns `true` to stop early.
///
/// Outer positions are visited in lexicographic order and the kernel only
/// accepts strict improvements, so the recorded argmin is the
/// lexicographically smallest minimizer.
pub(crate) fn scan_box<K>(
    d: usize,
    first: usize,
    sets: &[Vec<usize>],
    floor: Option<f64>,
    mut kernel: K,
) -> BoxMin
where
    K: FnMut(&[usize], &[usize], &mut Best) -> bool,
{
    debug_assert_eq!(sets.len() + 1, d);
    let mut best = Best {
        weight: f64::INFINITY,
        tuple: Vec::with_capacity(d),
        evaluations: 0,
        floor,
    };
    let outer_sets = &sets[..d - 2];
    let inner = &sets[d - 2];
    let mut tuple = vec![0usize; d];
    tuple[0] = first;
    let mut pos = vec![0usize; outer_sets.len()];
    for (t, set) in outer_sets.iter().enumerate() {
        tuple[t + 1] = set[0];
    }
    'outer: loop {
        if kernel(&tuple, inner, &mut best) {
            break;
        }
        let mut t = outer_sets.len();
        loop {
            if t == 0 {
                break 'outer;
            }
            t -= 1;
            pos[t] += 1;
            if pos[t] < outer_sets[t].len() {
                tuple[t + 1] = outer_sets[t][pos[t]];
                break;
            }
            pos[t] = 0;
            tuple[t + 1] = outer_sets[t][0];
        }
    }
    BoxMin {
        weight: best.weight,
        tuple: best.tuple,
        evaluations: best.evaluations,
    }
}

fn check_dim(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::domain(format!("dimension must be at least 2, got {d}")));
    }
    if d > MAX_DIM {
        return Err(Error::domain(format!("dimension {d} exceeds the supported maximum {MAX_DIM}")));
    }
    Ok(())
}

fn checked_entries(base: usize, exp: usize, times: usize) -> Option<usize> {
    if base <= 1 {
        return Some(if exp == 0 { times } else { times * base });
    }
    let mut acc = times;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

fn capacity_check(what: &str, entries: Option<usize>) -> Result<usize> {
    match entries {
        Some(e) if e <= MAX_ENTRIES => Ok(e),
        Some(e) => Err(Error::capacity(format!(
            "{what} needs {e} entries, limit is {MAX_ENTRIES}"
        ))),
        None => Err(Error::capacity(format!("{what} size overflows"))),
    }
}

/// Decomposable weights `W(t) = sum_j A_j(t without coordinate j)`.
///
/// Factor `j` has `n^(d-1)` entries laid out row-major over the retained
/// coordinates in increasing coordinate order. For `d = 3` the factors are
/// `c[j][k]`, `b[i][k]`, `a[i][j]`, in that order.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorizedInstance {
    d: usize,
    n: usize,
    factors: Vec<Vec<f64>>,
    // strides[t * d + s]: stride of coordinate s inside factor t (0 when s == t)
    strides: Vec<usize>,
}

impl FactorizedInstance {
    pub fn from_factors(d: usize, n: usize, factors: Vec<Vec<f64>>) -> Result<Self> {
        check_dim(d)?;
        if n < 1 {
            return Err(Error::domain("side length must be at least 1"));
        }
        let per_factor = capacity_check("factor tensor", checked_entries(n, d - 1, 1))?;
        capacity_check("factorized instance", per_factor.checked_mul(d))?;
        if factors.len() != d {
            return Err(Error::domain(format!(
                "expected {d} factors, got {}",
                factors.len()
            )));
        }
        for (j, f) in factors.iter().enumerate() {
            if f.len() != per_factor {
                return Err(Error::domain(format!(
                    "factor {j} has {} entries, expected {per_factor}",
                    f.len()
                )));
            }
            if let Some(v) = f.iter().find(|v| !(0.0..1.0).contains(*v)) {
                return Err(Error::domain(format!("factor {j} entry {v} outside [0, 1)")));
            }
        }
        Ok(Self::assemble(d, n, factors))
    }

    fn assemble(d: usize, n: usize, factors: Vec<Vec<f64>>) -> Self {
        let mut strides = vec![0usize; d * d];
        for t in 0..d {
            let mut stride = 1usize;
            for s in (0..d).rev().filter(|&s| s != t) {
                strides[t * d + s] = stride;
                stride = stride.wrapping_mul(n);
            }
        }
        FactorizedInstance {
            d,
            n,
            factors,
            strides,
        }
    }

    /// All-zero factors.
    pub fn zeros(d: usize, n: usize) -> Result<Self> {
        let per = capacity_check("factor tensor", checked_entries(n, d.saturating_sub(1), 1))?;
        Self::from_factors(d, n, vec![vec![0.0; per]; d])
    }

    pub fn factors(&self) -> &[Vec<f64>] {
        &self.factors
    }

    /// Number of stored factor entries, `d * n^(d-1)`.
    pub fn entry_count(&self) -> usize {
        self.factors.iter().map(Vec::len).sum()
    }

    /// Heap bytes held by the factor tensors.
    pub fn heap_bytes(&self) -> usize {
        self.factors
            .iter()
            .map(|f| f.capacity() * std::mem::size_of::<f64>())
            .sum::<usize>()
            + self.strides.capacity() * std::mem::size_of::<usize>()
    }

    #[inline]
    fn factor_index(&self, t: usize, tuple: &[usize]) -> usize {
        let strides = &self.strides[t * self.d..(t + 1) * self.d];
        tuple.iter().zip(strides).map(|(&c, &s)| c * s).sum()
    }
}

impl CostTensor for FactorizedInstance {
    fn dim(&self) -> usize {
        self.d
    }

    fn side(&self) -> usize {
        self.n
    }

    #[inline]
    fn weight_at(&self, tuple: &[usize]) -> f64 {
        let mut w = 0.0;
        for t in 0..self.d {
            w += self.factors[t][self.factor_index(t, tuple)];
        }
        w
    }

    fn box_min(&self, first: usize, sets: &[Vec<usize>]) -> BoxMin {
        let d = self.d;
        let n = self.n;
        let last = d - 1;
        let mut bases = vec![0usize; d];
        // Inner loops sum factors in index order so results match weight_at bit for bit.
        scan_box(d, first, sets, None, |outer, inner, best| {
            for (t, base) in bases.iter_mut().enumerate() {
                let strides = &self.strides[t * d..t * d + last];
                *base = outer[..last].iter().zip(strides).map(|(&c, &s)| c * s).sum();
            }
            let konst = self.factors[last][bases[last]];
            let mut local = best.weight;
            let mut arg = None;
            if d == 3 {
                let r0 = &self.factors[0][bases[0]..bases[0] + n];
                let r1 = &self.factors[1][bases[1]..bases[1] + n];
                for &k in inner {
                    let w = r0[k] + r1[k] + konst;
                    if w < local {
                        local = w;
                        arg = Some(k);
                    }
                }
            } else {
                let rows: Vec<&[f64]> = (0..last)
                    .map(|t| &self.factors[t][bases[t]..bases[t] + n])
                    .collect();
                for &k in inner {
                    let mut w = 0.0;
                    for row in &rows {
                        w += row[k];
                    }
                    w += konst;
                    if w < local {
                        local = w;
                        arg = Some(k);
                    }
                }
            }
            best.evaluations += inner.len() as u64;
            if let Some(k) = arg {
                best.improve_last(local, outer, k);
            }
            false
        })
    }
}

/// Tag of an independent-weights instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndependentModel {
    Exp1,
    /// Integers uniform on `{1, ..., scale}`.
    UniformInt { scale: u64 },
}

impl IndependentModel {
    pub fn cost_model(&self) -> CostModel {
        match self {
            IndependentModel::Exp1 => CostModel::Exp1,
            IndependentModel::UniformInt { .. } => CostModel::UniformInt,
        }
    }
}

/// Explicit `n^d` weight tensor, row-major over coordinates `0..d`.
#[derive(Debug, Clone, PartialEq)]
pub struct IndependentInstance {
    d: usize,
    n: usize,
    model: IndependentModel,
    weights: Vec<f64>,
}

impl IndependentInstance {
    pub fn from_weights(
        d: usize,
        n: usize,
        model: IndependentModel,
        weights: Vec<f64>,
    ) -> Result<Self> {
        check_dim(d)?;
        if n < 1 {
            return Err(Error::domain("side length must be at least 1"));
        }
        let len = capacity_check("weight tensor", checked_entries(n, d, 1))?;
        if weights.len() != len {
            return Err(Error::domain(format!(
                "weight tensor has {} entries, expected {len}",
                weights.len()
            )));
        }
        match model {
            IndependentModel::Exp1 => {
                if let Some(v) = weights.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
                    return Err(Error::domain(format!("exp1 weight {v} is not a finite nonnegative real")));
                }
            }
            IndependentModel::UniformInt { scale } => {
                if scale < 1 {
                    return Err(Error::domain("uniform-int scale M must be at least 1"));
                }
                let top = scale as f64;
                if let Some(v) = weights
                    .iter()
                    .find(|v| !(v.fract() == 0.0 && **v >= 1.0 && **v <= top))
                {
                    return Err(Error::domain(format!("uniform-int weight {v} outside {{1, ..., {scale}}}")));
                }
            }
        }
        Ok(IndependentInstance {
            d,
            n,
            model,
            weights,
        })
    }

    pub fn model(&self) -> IndependentModel {
        self.model
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    #[inline]
    fn linear(&self, tuple: &[usize]) -> usize {
        tuple.iter().fold(0usize, |acc, &c| acc * self.n + c)
    }
}

impl CostTensor for IndependentInstance {
    fn dim(&self) -> usize {
        self.d
    }

    fn side(&self) -> usize {
        self.n
    }

    #[inline]
    fn weight_at(&self, tuple: &[usize]) -> f64 {
        self.weights[self.linear(tuple)]
    }

    fn support_floor(&self) -> Option<f64> {
        match self.model {
            IndependentModel::Exp1 => None,
            IndependentModel::UniformInt { .. } => Some(1.0),
        }
    }

    fn box_min(&self, first: usize, sets: &[Vec<usize>]) -> BoxMin {
        let d = self.d;
        let n = self.n;
        scan_box(d, first, sets, self.support_floor(), |outer, inner, best| {
            let base = outer[..d - 1].iter().fold(0usize, |acc, &c| acc * n + c) * n;
            let row = &self.weights[base..base + n];
            let mut local = best.weight;
            let mut arg = None;
            for (idx, &k) in inner.iter().enumerate() {
                let w = row[k];
                if w < local {
                    local = w;
                    arg = Some(k);
                    if matches!(best.floor, Some(f) if w <= f) {
                        best.evaluations += idx as u64 + 1;
                        best.improve_last(local, outer, k);
                        return true;
                    }
                }
            }
            best.evaluations += inner.len() as u64;
            if let Some(k) = arg {
                best.improve_last(local, outer, k);
            }
            false
        })
    }
}

/// Uniform-integer weights generated on demand from a keyed hash of the
/// tuple's linear index. Memory is O(1), so `n^d` may far exceed what a
/// dense tensor could hold.
#[derive(Debug, Clone, PartialEq)]
pub struct HashedUniformInstance {
    d: usize,
    n: usize,
    scale: u64,
    rng: RngSpec,
}

impl HashedUniformInstance {
    pub fn new(d: usize, n: usize, scale: u64, rng: RngSpec) -> Result<Self> {
        check_dim(d)?;
        if n < 1 {
            return Err(Error::domain("side length must be at least 1"));
        }
        if scale < 1 {
            return Err(Error::domain("uniform-int scale M must be at least 1"));
        }
        if checked_entries(n, d, 1).and_then(|e| u64::try_from(e).ok()).is_none() {
            return Err(Error::capacity("tuple index space overflows 64 bits"));
        }
        Ok(HashedUniformInstance { d, n, scale, rng })
    }

    pub fn scale(&self) -> u64 {
        self.scale
    }
}

impl CostTensor for HashedUniformInstance {
    fn dim(&self) -> usize {
        self.d
    }

    fn side(&self) -> usize {
        self.n
    }

    fn weight_at(&self, tuple: &[usize]) -> f64 {
        let linear = tuple.iter().fold(0u64, |acc, &c| acc * self.n as u64 + c as u64);
        let mut word = self.rng.hash_counter(linear);
        let draw = bounded(self.scale, || {
            let w = word;
            word = crate::rng::mix64(word);
            w
        });
        (draw + 1) as f64
    }

    fn support_floor(&self) -> Option<f64> {
        Some(1.0)
    }
}

/// Either kind of stored instance.
#[derive(Debug, Clone, PartialEq)]
pub enum Instance {
    Factorized(FactorizedInstance),
    Independent(IndependentInstance),
}

impl Instance {
    pub fn model(&self) -> CostModel {
        match self {
            Instance::Factorized(_) => CostModel::Factorized,
            Instance::Independent(inst) => inst.model().cost_model(),
        }
    }
}

impl From<FactorizedInstance> for Instance {
    fn from(inst: FactorizedInstance) -> Self {
        Instance::Factorized(inst)
    }
}

impl From<IndependentInstance> for Instance {
    fn from(inst: IndependentInstance) -> Self {
        Instance::Independent(inst)
    }
}

impl CostTensor for Instance {
    fn dim(&self) -> usize {
        match self {
            Instance::Factorized(i) => i.dim(),
            Instance::Independent(i) => i.dim(),
        }
    }

    fn side(&self) -> usize {
        match self {
            Instance::Factorized(i) => i.side(),
            Instance::Independent(i) => i.side(),
        }
    }

    #[inline]
    fn weight_at(&self, tuple: &[usize]) -> f64 {
        match self {
            Instance::Factorized(i) => i.weight_at(tuple),
            Instance::Independent(i) => i.weight_at(tuple),
        }
    }

    fn support_floor(&self) -> Option<f64> {
        match self {
            Instance::Factorized(i) => i.support_floor(),
            Instance::Independent(i) => i.support_floor(),
        }
    }

    fn box_min(&self, first: usize, sets: &[Vec<usize>]) -> BoxMin {
        match self {
            Instance::Factorized(i) => i.box_min(first, sets),
            Instance::Independent(i) => i.box_min(first, sets),
        }
    }
}

/// Builds a factorized instance with i.i.d. uniform `[0, 1)` factor entries,
/// drawn factor by factor in storage order from `rng`'s stream.
pub fn make_factorized(d: usize, n: usize, rng: RngSpec) -> Result<FactorizedInstance> {
    check_dim(d)?;
    if n < 1 {
        return Err(Error::domain("side length must be at least 1"));
    }
    let per = capacity_check("factor tensor", checked_entries(n, d - 1, 1))?;
    capacity_check("factorized instance", per.checked_mul(d))?;
    let mut stream = rng.stream();
    let factors = (0..d)
        .map(|_| (0..per).map(|_| stream.next_f64()).collect())
        .collect();
    Ok(FactorizedInstance::assemble(d, n, factors))
}

/// Builds an explicit weight tensor for the exp1 or uniform-int model.
pub fn make_independent(
    d: usize,
    n: usize,
    model: CostModel,
    scale: Option<u64>,
    rng: RngSpec,
) -> Result<IndependentInstance> {
    check_dim(d)?;
    if n < 1 {
        return Err(Error::domain("side length must be at least 1"));
    }
    let len = capacity_check("weight tensor", checked_entries(n, d, 1))?;
    let mut stream = rng.stream();
    let (model, weights) = match model {
        CostModel::Exp1 => (
            IndependentModel::Exp1,
            (0..len).map(|_| stream.next_exp1()).collect(),
        ),
        CostModel::UniformInt => {
            let scale = match scale {
                Some(m) if m >= 1 => m,
                Some(_) => return Err(Error::domain("uniform-int scale M must be at least 1")),
                None => return Err(Error::domain("uniform-int model requires a scale M")),
            };
            (
                IndependentModel::UniformInt { scale },
                (0..len).map(|_| stream.next_int_inclusive(scale) as f64).collect(),
            )
        }
        CostModel::Factorized => {
            return Err(Error::domain("factorized instances are built by make_factorized"))
        }
    };
    Ok(IndependentInstance {
        d,
        n,
        model,
        weights,
    })
}

/// A full assignment: `n` coordinate-disjoint tuples, row `i` being
/// `(i, perms[0][i], ..., perms[d-2][i])`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment {
    d: usize,
    n: usize,
    perms: Vec<Vec<usize>>,
}

impl Assignment {
    pub fn new(d: usize, n: usize, perms: Vec<Vec<usize>>) -> Result<Self> {
        check_dim(d)?;
        if perms.len() != d - 1 {
            return Err(Error::domain(format!(
                "expected {} permutations, got {}",
                d - 1,
                perms.len()
            )));
        }
        for (t, p) in perms.iter().enumerate() {
            if !is_permutation(p, n) {
                return Err(Error::domain(format!(
                    "coordinate {} is not a permutation of [1, {n}]",
                    t + 2
                )));
            }
        }
        Ok(Assignment { d, n, perms })
    }

    pub fn identity(d: usize, n: usize) -> Result<Self> {
        check_dim(d)?;
        Self::new(d, n, vec![(0..n).collect(); d.saturating_sub(1)])
    }

    /// Builds an assignment from any ordering of `n` tuples covering every row.
    pub fn from_tuples(d: usize, n: usize, tuples: &[Vec<usize>]) -> Result<Self> {
        let mut partial = PartialAssignment::new(d, n)?;
        for t in tuples {
            partial.push(t.clone())?;
        }
        partial.into_assignment()
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn side(&self) -> usize {
        self.n
    }

    pub fn perms(&self) -> &[Vec<usize>] {
        &self.perms
    }

    /// Callers must keep every entry a permutation of `0..n`.
    pub(crate) fn perms_mut(&mut self) -> &mut [Vec<usize>] {
        &mut self.perms
    }

    pub fn tuple(&self, row: usize) -> Vec<usize> {
        let mut t = vec![0; self.d];
        self.write_tuple(row, &mut t);
        t
    }

    #[inline]
    pub(crate) fn write_tuple(&self, row: usize, out: &mut [usize]) {
        out[0] = row;
        for (slot, p) in out[1..].iter_mut().zip(&self.perms) {
            *slot = p[row];
        }
    }

    pub fn tuples(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|i| self.tuple(i)).collect()
    }

    /// Permutations with 1-based values, as printed in reports.
    pub fn one_based_perms(&self) -> Vec<Vec<usize>> {
        self.perms
            .iter()
            .map(|p| p.iter().map(|&v| v + 1).collect())
            .collect()
    }
}

fn is_permutation(p: &[usize], n: usize) -> bool {
    if p.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    p.iter().all(|&v| v < n && !std::mem::replace(&mut seen[v], true))
}

/// Coordinate-disjoint set of tuples under construction.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialAssignment {
    d: usize,
    n: usize,
    tuples: Vec<Vec<usize>>,
    used: Vec<Vec<bool>>,
}

impl PartialAssignment {
    pub fn new(d: usize, n: usize) -> Result<Self> {
        check_dim(d)?;
        Ok(PartialAssignment {
            d,
            n,
            tuples: Vec::new(),
            used: vec![vec![false; n]; d],
        })
    }

    /// Adds `tuple`, rejecting it if any coordinate value is already used.
    pub fn push(&mut self, tuple: Vec<usize>) -> Result<()> {
        check_tuple(self.d, self.n, &tuple)?;
        if let Some(t) = (0..self.d).find(|&t| self.used[t][tuple[t]]) {
            return Err(Error::domain(format!(
                "value {} of coordinate {} already used",
                tuple[t] + 1,
                t + 1
            )));
        }
        for (t, &c) in tuple.iter().enumerate() {
            self.used[t][c] = true;
        }
        self.tuples.push(tuple);
        Ok(())
    }

    pub fn is_used(&self, coordinate: usize, value: usize) -> bool {
        self.used[coordinate][value]
    }

    /// Unused values of `coordinate` in increasing order.
    pub fn remaining(&self, coordinate: usize) -> Vec<usize> {
        (0..self.n).filter(|&v| !self.used[coordinate][v]).collect()
    }

    pub fn tuples(&self) -> &[Vec<usize>] {
        &self.tuples
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn into_assignment(self) -> Result<Assignment> {
        if self.tuples.len() != self.n {
            return Err(Error::domain(format!(
                "assignment needs {} tuples, have {}",
                self.n,
                self.tuples.len()
            )));
        }
        let mut perms = vec![vec![0usize; self.n]; self.d - 1];
        for t in &self.tuples {
            for (p, &c) in perms.iter_mut().zip(&t[1..]) {
                p[t[0]] = c;
            }
        }
        Ok(Assignment {
            d: self.d,
            n: self.n,
            perms,
        })
    }
}

/// Sum of the weights of the assignment's tuples, accumulated in row order.
pub fn total_cost<W: CostTensor + ?Sized>(instance: &W, assignment: &Assignment) -> Result<f64> {
    if assignment.dim() != instance.dim() || assignment.side() != instance.side() {
        return Err(Error::domain(format!(
            "assignment is for d = {}, n = {} but instance has d = {}, n = {}",
            assignment.dim(),
            assignment.side(),
            instance.dim(),
            instance.side()
        )));
    }
    Ok(assignment_cost(instance, assignment))
}

#[inline]
pub(crate) fn assignment_cost<W: CostTensor + ?Sized>(instance: &W, assignment: &Assignment) -> f64 {
    let mut buf = vec![0usize; assignment.dim()];
    let mut total = 0.0;
    for i in 0..assignment.side() {
        assignment.write_tuple(i, &mut buf);
        total += instance.weight_at(&buf);
    }
    total
}
