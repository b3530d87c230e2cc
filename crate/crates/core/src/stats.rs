//! Paired hypothesis tests and effect sizes for comparing two treatments.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};
use statrs::function::erf::erfc;

/// Below this many discordant pairs (McNemar) or non-zero differences
/// (Wilcoxon) p-values are computed exactly.
pub const EXACT_THRESHOLD: usize = 25;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum StatsError {
    #[error("degenerate test: {0}")]
    DegenerateTest(String),
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("need at least {need} observations, got {got}")]
    TooFewSamples { need: usize, got: usize },
    #[error("duplicate id {0}")]
    DuplicateId(String),
    #[error("treatments cover different ids ({0} ids differ)")]
    MismatchedIds(usize),
    #[error("p-value {0} outside [0, 1]")]
    InvalidProbability(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairedOutcomes {
    pub ids: Vec<String>,
    pub a: Vec<bool>,
    pub b: Vec<bool>,
}

impl PairedOutcomes {
    pub fn new(ids: Vec<String>, a: Vec<bool>, b: Vec<bool>) -> Result<Self, StatsError> {
        check_aligned(&ids, a.len(), b.len())?;
        Ok(PairedOutcomes { ids, a, b })
    }

    /// Align two id-keyed outcome maps; both must cover the same ids.
    pub fn from_maps(a: &BTreeMap<String, bool>, b: &BTreeMap<String, bool>) -> Result<Self, StatsError> {
        let (ids, a, b) = align_maps(a, b)?;
        Ok(PairedOutcomes { ids, a, b })
    }

    pub fn counts(&self) -> ConfusionCounts {
        let mut c = ConfusionCounts::default();
        for (&x, &y) in self.a.iter().zip(&self.b) {
            match (x, y) {
                (true, true) => c.n11 += 1,
                (true, false) => c.n10 += 1,
                (false, true) => c.n01 += 1,
                (false, false) => c.n00 += 1,
            }
        }
        c
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairedScores {
    pub ids: Vec<String>,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

impl PairedScores {
    pub fn new(ids: Vec<String>, a: Vec<f64>, b: Vec<f64>) -> Result<Self, StatsError> {
        check_aligned(&ids, a.len(), b.len())?;
        Ok(PairedScores { ids, a, b })
    }

    pub fn from_maps(a: &BTreeMap<String, f64>, b: &BTreeMap<String, f64>) -> Result<Self, StatsError> {
        let (ids, a, b) = align_maps(a, b)?;
        Ok(PairedScores { ids, a, b })
    }
}

fn check_aligned(ids: &[String], a: usize, b: usize) -> Result<(), StatsError> {
    if a != b {
        return Err(StatsError::LengthMismatch(a, b));
    }
    if ids.len() != a {
        return Err(StatsError::LengthMismatch(ids.len(), a));
    }
    let mut seen = HashSet::with_capacity(ids.len());
    for id in ids {
        if !seen.insert(id) {
            return Err(StatsError::DuplicateId(id.clone()));
        }
    }
    Ok(())
}

type Aligned<T> = (Vec<String>, Vec<T>, Vec<T>);

fn align_maps<T: Copy>(a: &BTreeMap<String, T>, b: &BTreeMap<String, T>) -> Result<Aligned<T>, StatsError> {
    let differ = a.keys().filter(|k| !b.contains_key(*k)).count() + b.keys().filter(|k| !a.contains_key(*k)).count();
    if differ > 0 {
        return Err(StatsError::MismatchedIds(differ));
    }
    let ids: Vec<String> = a.keys().cloned().collect();
    let av = ids.iter().map(|k| a[k]).collect();
    let bv = ids.iter().map(|k| b[k]).collect();
    Ok((ids, av, bv))
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionCounts {
    pub n11: u64,
    pub n10: u64,
    pub n01: u64,
    pub n00: u64,
}

impl ConfusionCounts {
    pub fn total(&self) -> u64 {
        self.n11 + self.n10 + self.n01 + self.n00
    }

    pub fn swapped(&self) -> Self {
        ConfusionCounts { n11: self.n11, n10: self.n01, n01: self.n10, n00: self.n00 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EffectKind {
    OddsRatio,
    CliffsDelta,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EffectSize {
    pub kind: EffectKind,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestResult {
    pub test_name: String,
    pub statistic: f64,
    pub p_value: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub adjusted_p: Option<f64>,
    pub effect_size: EffectSize,
    pub n: usize,
    #[serde(default)]
    pub degenerate: bool,
}

/// ln C(n, k) via log-gamma.
fn ln_choose(n: u64, k: u64) -> f64 {
    use statrs::function::gamma::ln_gamma;
    ln_gamma(n as f64 + 1.0) - ln_gamma(k as f64 + 1.0) - ln_gamma((n - k) as f64 + 1.0)
}

/// Two-sided exact binomial p-value for `k` successes out of `n` at p = 1/2.
pub fn binomial_two_sided_half(k: u64, n: u64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let m = k.min(n - k);
    if n <= 60 {
        // Exact integer arithmetic is available at this size.
        let mut c: u128 = 1;
        let mut tail: u128 = 0;
        for i in 0..=m {
            if i > 0 {
                c = c * (n - i + 1) as u128 / i as u128;
            }
            tail += c;
        }
        let p = 2.0 * tail as f64 / 2f64.powi(n as i32);
        return p.min(1.0);
    }
    let tail: f64 = (0..=m).map(|i| (ln_choose(n, i) - n as f64 * std::f64::consts::LN_2).exp()).sum();
    (2.0 * tail).min(1.0)
}

/// Upper tail of a chi-square variable with one degree of freedom.
pub fn chi2_1_sf(x: f64) -> f64 {
    if x <= 0.0 {
        1.0
    } else {
        erfc((x / 2.0).sqrt())
    }
}

/// Standard normal CDF.
pub fn normal_cdf(z: f64) -> f64 {
    0.5 * erfc(-z / std::f64::consts::SQRT_2)
}

pub fn mcnemar(counts: ConfusionCounts) -> TestResult {
    let (b, c) = (counts.n10, counts.n01);
    let discordant = b + c;
    let n = counts.total() as usize;
    if discordant == 0 {
        return TestResult {
            test_name: "mcnemar".into(),
            statistic: 0.0,
            p_value: 1.0,
            adjusted_p: None,
            effect_size: EffectSize { kind: EffectKind::OddsRatio, value: 1.0 },
            n,
            degenerate: true,
        };
    }
    let (name, statistic, p) = if (discordant as usize) < EXACT_THRESHOLD {
        ("mcnemar_exact", b.min(c) as f64, binomial_two_sided_half(b, discordant))
    } else {
        let d = (b as f64 - c as f64).abs() - 1.0;
        let x = d * d / discordant as f64;
        ("mcnemar_chi2", x, chi2_1_sf(x))
    };
    let or = if b == 0 || c == 0 { (b as f64 + 0.5) / (c as f64 + 0.5) } else { b as f64 / c as f64 };
    TestResult {
        test_name: name.into(),
        statistic,
        p_value: p.clamp(0.0, 1.0),
        adjusted_p: None,
        effect_size: EffectSize { kind: EffectKind::OddsRatio, value: or },
        n,
        degenerate: false,
    }
}

/// Step-up false discovery rate adjustment; output in input order.
pub fn benjamini_hochberg(p_values: &[f64]) -> Result<Vec<f64>, StatsError> {
    if let Some(&bad) = p_values.iter().find(|p| !(0.0..=1.0).contains(*p)) {
        return Err(StatsError::InvalidProbability(bad));
    }
    let m = p_values.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&i, &j| p_values[i].total_cmp(&p_values[j]).then(i.cmp(&j)));
    let mut out = vec![0.0; m];
    let mut running = 1.0f64;
    for (rank, &i) in order.iter().enumerate().rev() {
        // The ratio is >= 1, so rounding never takes q below the raw value.
        let q = p_values[i] * (m as f64 / (rank + 1) as f64);
        running = running.min(q);
        out[i] = running.min(1.0);
    }
    Ok(out)
}

/// Mid-ranks (1-based) of `xs`, plus the sizes of tie groups.
fn midranks(xs: &[f64]) -> (Vec<f64>, Vec<usize>) {
    let mut idx: Vec<usize> = (0..xs.len()).collect();
    idx.sort_by(|&i, &j| xs[i].total_cmp(&xs[j]));
    let mut ranks = vec![0.0; xs.len()];
    let mut ties = Vec::new();
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && xs[idx[j + 1]] == xs[idx[i]] {
            j += 1;
        }
        let r = (i + j) as f64 / 2.0 + 1.0;
        for &k in &idx[i..=j] {
            ranks[k] = r;
        }
        if j > i {
            ties.push(j - i + 1);
        }
        i = j + 1;
    }
    (ranks, ties)
}

/// Number of sign assignments per doubled positive-rank sum.
fn signed_rank_distribution(doubled: &[u64]) -> Vec<u64> {
    let total: u64 = doubled.iter().sum();
    let mut dist = vec![0u64; total as usize + 1];
    dist[0] = 1;
    let mut reach = 0usize;
    for &r in doubled {
        let r = r as usize;
        for s in (0..=reach).rev() {
            if dist[s] > 0 {
                dist[s + r] += dist[s];
            }
        }
        reach += r;
    }
    dist
}

pub fn wilcoxon_signed_rank(a: &[f64], b: &[f64]) -> Result<TestResult, StatsError> {
    if a.len() != b.len() {
        return Err(StatsError::LengthMismatch(a.len(), b.len()));
    }
    if a.is_empty() {
        return Err(StatsError::TooFewSamples { need: 1, got: 0 });
    }
    let diffs: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).filter(|d| *d != 0.0).collect();
    if diffs.is_empty() {
        return Err(StatsError::DegenerateTest("all paired differences are zero".into()));
    }
    let n = diffs.len();
    let abs: Vec<f64> = diffs.iter().map(|d| d.abs()).collect();
    let (ranks, ties) = midranks(&abs);
    let w_plus: f64 = ranks.iter().zip(&diffs).filter(|(_, d)| **d > 0.0).map(|(r, _)| r).sum();
    let w_minus: f64 = ranks.iter().zip(&diffs).filter(|(_, d)| **d < 0.0).map(|(r, _)| r).sum();
    let w = w_plus.min(w_minus);
    let (name, p) = if n <= EXACT_THRESHOLD {
        let doubled: Vec<u64> = ranks.iter().map(|r| (r * 2.0).round() as u64).collect();
        let dist = signed_rank_distribution(&doubled);
        let limit = (w * 2.0).round() as usize;
        let below: u64 = dist[..=limit.min(dist.len() - 1)].iter().sum();
        let p = 2.0 * below as f64 / 2f64.powi(n as i32);
        ("wilcoxon_exact", p.min(1.0))
    } else {
        let nf = n as f64;
        let mean = nf * (nf + 1.0) / 4.0;
        let tie_term: f64 = ties.iter().map(|&t| (t * t * t - t) as f64).sum::<f64>() / 48.0;
        let var = nf * (nf + 1.0) * (2.0 * nf + 1.0) / 24.0 - tie_term;
        let z = ((w - mean).abs() - 0.5).max(0.0) / var.sqrt();
        ("wilcoxon_normal", (2.0 * (1.0 - normal_cdf(z))).min(1.0))
    };
    Ok(TestResult {
        test_name: name.into(),
        statistic: w,
        p_value: p,
        adjusted_p: None,
        effect_size: EffectSize { kind: EffectKind::None, value: 0.0 },
        n,
        degenerate: false,
    })
}

/// Cliff's delta by comparing every pair.
pub fn cliffs_delta_quadratic(a: &[f64], b: &[f64]) -> f64 {
    if a.is_empty() || b.is_empty() {
        return 0.0;
    }
    let mut s: i64 = 0;
    for x in a {
        for y in b {
            s += (x > y) as i64 - (x < y) as i64;
        }
    }
    s as f64 / (a.len() * b.len()) as f64
}

/// Cliff's delta via sorting and binary search.
pub fn cliffs_delta(a: &[f64], b: &[f64]) -> f64 {
    if a.is_empty() || b.is_empty() {
        return 0.0;
    }
    let mut sorted = b.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut s: i64 = 0;
    for &x in a {
        let less = sorted.partition_point(|&y| y < x);
        let not_greater = sorted.partition_point(|&y| y <= x);
        let greater = sorted.len() - not_greater;
        s += less as i64 - greater as i64;
    }
    s as f64 / (a.len() * b.len()) as f64
}

/// Magnitude label using the usual 0.147 / 0.33 / 0.474 cut points.
pub fn cliffs_magnitude(d: f64) -> &'static str {
    match d.abs() {
        x if x < 0.147 => "negligible",
        x if x < 0.33 => "small",
        x if x < 0.474 => "medium",
        _ => "large",
    }
}

pub const AD_MIN_SAMPLES: usize = 8;

/// Anderson-Darling normality test with estimated mean and variance.
/// The statistic is the small-sample corrected A*².
pub fn anderson_darling_normality(x: &[f64]) -> Result<TestResult, StatsError> {
    let n = x.len();
    if n < AD_MIN_SAMPLES {
        return Err(StatsError::TooFewSamples { need: AD_MIN_SAMPLES, got: n });
    }
    let nf = n as f64;
    let mean = x.iter().sum::<f64>() / nf;
    let var = x.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (nf - 1.0);
    if var <= 0.0 {
        return Err(StatsError::DegenerateTest("zero variance".into()));
    }
    let sd = var.sqrt();
    let mut z: Vec<f64> = x.iter().map(|v| (v - mean) / sd).collect();
    z.sort_by(f64::total_cmp);
    let mut s = 0.0;
    for i in 0..n {
        let lower = normal_cdf(z[i]).ln();
        let upper = (0.5 * erfc(z[n - 1 - i] / std::f64::consts::SQRT_2)).ln();
        s += (2 * i + 1) as f64 * (lower + upper);
    }
    let a2 = -nf - s / nf;
    let a = a2 * (1.0 + 0.75 / nf + 2.25 / (nf * nf));
    let p = if a >= 0.6 {
        (1.2937 - 5.709 * a + 0.0186 * a * a).exp()
    } else if a > 0.34 {
        (0.9177 - 4.279 * a - 1.38 * a * a).exp()
    } else if a > 0.2 {
        1.0 - (-8.318 + 42.796 * a - 59.938 * a * a).exp()
    } else {
        1.0 - (-13.436 + 101.14 * a - 223.73 * a * a).exp()
    };
    Ok(TestResult {
        test_name: "anderson_darling".into(),
        statistic: a,
        p_value: p.clamp(0.0, 1.0),
        adjusted_p: None,
        effect_size: EffectSize { kind: EffectKind::None, value: 0.0 },
        n,
        degenerate: false,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Treatments {
    Binary(PairedOutcomes),
    Continuous(PairedScores),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub label: String,
    pub data: Treatments,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonResult {
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counts: Option<ConfusionCounts>,
    pub result: TestResult,
}

/// Run the matching test for every comparison, then adjust p-values
/// across the whole family.
pub fn compare_models(family: &[Comparison]) -> Result<Vec<ComparisonResult>, StatsError> {
    let mut rows = Vec::with_capacity(family.len());
    for c in family {
        let (counts, result) = match &c.data {
            Treatments::Binary(p) => {
                let counts = p.counts();
                (Some(counts), mcnemar(counts))
            }
            Treatments::Continuous(s) => {
                let mut r = match wilcoxon_signed_rank(&s.a, &s.b) {
                    Ok(r) => r,
                    Err(StatsError::DegenerateTest(_)) => TestResult {
                        test_name: "wilcoxon_exact".into(),
                        statistic: 0.0,
                        p_value: 1.0,
                        adjusted_p: None,
                        effect_size: EffectSize { kind: EffectKind::None, value: 0.0 },
                        n: 0,
                        degenerate: true,
                    },
                    Err(e) => return Err(e),
                };
                r.effect_size = EffectSize { kind: EffectKind::CliffsDelta, value: cliffs_delta(&s.a, &s.b) };
                (None, r)
            }
        };
        rows.push(ComparisonResult { label: c.label.clone(), counts, result });
    }
    let raw: Vec<f64> = rows.iter().map(|r| r.result.p_value).collect();
    for (row, adj) in rows.iter_mut().zip(benjamini_hochberg(&raw)?) {
        row.result.adjusted_p = Some(adj.max(row.result.p_value));
    }
    Ok(rows)
}
