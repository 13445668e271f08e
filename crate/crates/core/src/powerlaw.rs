//! Discrete power-law fitting for degree sequences.
//!
//! The model is P(X = k) = k^(-alpha) / zeta(alpha, xmin) on integers
//! k >= xmin. Fitting scans every distinct sample value as an xmin
//! candidate, estimates alpha for each by maximum likelihood, scores the
//! candidate by the Kolmogorov-Smirnov distance between the empirical tail
//! and the fitted model, and keeps the candidate with the smallest distance
//! (ties to the smaller xmin). Significance comes from a semi-parametric
//! bootstrap: replicates draw tail values from the fitted model and body
//! values from the sub-xmin empirical sample, are refit from scratch, and
//! the p-value is the share of replicates at least as far from their fit as
//! the data was from its own.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PowerLawError {
    #[error("empty sample")]
    EmptySample,
    #[error("sample contains zero; degrees of zero cannot enter a log-scale fit")]
    ZeroValue,
    #[error("sample has fewer than two distinct values")]
    ZeroVarianceTail,
    #[error("bootstrap needs at least one replicate")]
    NoReplicates,
    #[error("{direction}-degree sequence has only {nonzero} nonzero entries (need 10)")]
    TooFewDegrees { direction: &'static str, nonzero: usize },
}

/// Hurwitz zeta, sum over k >= 0 of (a + k)^(-s), for s > 1, a >= 1.
/// Direct series summation; the tail past the summed terms is closed with
/// its integral estimate plus Euler-Maclaurin corrections, with the summed
/// prefix grown until the correction bound clears 1e-10.
pub fn hurwitz_zeta(s: f64, a: f64) -> f64 {
    assert!(s > 1.0 && a >= 1.0, "zeta({s}, {a}) out of the supported range");
    let mut n = 32usize;
    loop {
        let x = a + n as f64;
        let bound = s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) * x.powf(-s - 5.0) / 30240.0;
        if bound < 1e-12 || n >= 1 << 22 {
            let mut sum = 0.0f64;
            for k in (0..n).rev() {
                sum += (a + k as f64).powf(-s);
            }
            return sum
                + x.powf(1.0 - s) / (s - 1.0)
                + 0.5 * x.powf(-s)
                + s * x.powf(-s - 1.0) / 12.0
                - s * (s + 1.0) * (s + 2.0) * x.powf(-s - 3.0) / 720.0;
        }
        n *= 2;
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PowerLawFit {
    pub alpha: f64,
    pub xmin: u64,
    /// KS distance between the empirical tail and the fitted model.
    pub ks: f64,
    /// Sample values >= xmin.
    pub ntail: usize,
    /// Bootstrap significance; None until `ks_pvalue` has run.
    pub pvalue: Option<f64>,
    pub replicates: usize,
    pub seed: Option<u64>,
}

const ALPHA_LO: f64 = 1.000_001;
const ALPHA_HI: f64 = 50.0;

/// Maximizes f on [lo, hi] by golden-section search. The discrete power-law
/// log-likelihood is concave in alpha (one-parameter exponential family), so
/// the bracket always contains the maximum.
fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > 1e-9 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        }
    }
    0.5 * (lo + hi)
}

fn alpha_mle(ntail: f64, sum_ln: f64, xmin: u64) -> f64 {
    let a = xmin as f64;
    golden_max(|alpha| -ntail * hurwitz_zeta(alpha, a).ln() - alpha * sum_ln, ALPHA_LO, ALPHA_HI)
}

/// Sup distance between the empirical tail CDF and the model CDF, evaluated
/// at every distinct tail value and just before every jump (the empirical
/// CDF is flat between jumps while the model keeps growing).
/// `distinct_cum[i]` is (value, count of sample values <= value).
fn ks_stat(distinct_cum: &[(u64, u64)], start: usize, alpha: f64, xmin: u64) -> f64 {
    let z0 = hurwitz_zeta(alpha, xmin as f64);
    let model = |k: u64| 1.0 - hurwitz_zeta(alpha, (k + 1) as f64) / z0;
    let before = if start == 0 { 0 } else { distinct_cum[start - 1].1 };
    let ntail = (distinct_cum.last().unwrap().1 - before) as f64;
    let mut d = 0.0f64;
    for i in start..distinct_cum.len() {
        let (v, cum) = distinct_cum[i];
        let s_here = (cum - before) as f64 / ntail;
        d = d.max((s_here - model(v)).abs());
        if let Some(&(next, _)) = distinct_cum.get(i + 1) {
            d = d.max((s_here - model(next - 1)).abs());
        }
    }
    d
}

fn distinct_with_cumulative(sample: &[u64]) -> Result<Vec<(u64, u64)>, PowerLawError> {
    if sample.is_empty() {
        return Err(PowerLawError::EmptySample);
    }
    if sample.contains(&0) {
        return Err(PowerLawError::ZeroValue);
    }
    let mut sorted = sample.to_vec();
    sorted.sort_unstable();
    let mut distinct: Vec<(u64, u64)> = Vec::new();
    let mut cum = 0u64;
    for &v in &sorted {
        cum += 1;
        match distinct.last_mut() {
            Some((lv, c)) if *lv == v => *c = cum,
            _ => distinct.push((v, cum)),
        }
    }
    if distinct.len() < 2 {
        return Err(PowerLawError::ZeroVarianceTail);
    }
    Ok(distinct)
}

pub fn fit_discrete_power_law(sample: &[u64]) -> Result<PowerLawFit, PowerLawError> {
    let distinct = distinct_with_cumulative(sample)?;
    let k = distinct.len();
    let total = distinct[k - 1].1;
    // Suffix log-sums so each candidate's tail statistics are O(1).
    let mut suffix_ln = vec![0.0f64; k + 1];
    for i in (0..k).rev() {
        let count = distinct[i].1 - if i == 0 { 0 } else { distinct[i - 1].1 };
        suffix_ln[i] = suffix_ln[i + 1] + count as f64 * (distinct[i].0 as f64).ln();
    }
    let mut best: Option<PowerLawFit> = None;
    // The largest distinct value is no candidate: its tail has one value.
    for ci in 0..k - 1 {
        let xmin = distinct[ci].0;
        let before = if ci == 0 { 0 } else { distinct[ci - 1].1 };
        let ntail = total - before;
        let alpha = alpha_mle(ntail as f64, suffix_ln[ci], xmin);
        let ks = ks_stat(&distinct, ci, alpha, xmin);
        if best.as_ref().is_none_or(|b| ks < b.ks) {
            best = Some(PowerLawFit {
                alpha,
                xmin,
                ks,
                ntail: ntail as usize,
                pvalue: None,
                replicates: 0,
                seed: None,
            });
        }
    }
    Ok(best.expect("at least one candidate"))
}

/// Inversion sampler for the fitted tail model. Draws come from a cumulative
/// table covering all but 1e-6 of the mass; the rare draw beyond the table
/// inverts the model CDF directly.
struct TailSampler {
    alpha: f64,
    xmin: u64,
    z0: f64,
    cum: Vec<f64>,
}

impl TailSampler {
    fn new(alpha: f64, xmin: u64) -> Self {
        let z0 = hurwitz_zeta(alpha, xmin as f64);
        let mut cum = Vec::new();
        let mut acc = 0.0f64;
        let mut k = xmin;
        while acc < 1.0 - 1e-6 && cum.len() < 2_000_000 {
            acc += (k as f64).powf(-alpha) / z0;
            cum.push(acc);
            k += 1;
        }
        TailSampler { alpha, xmin, z0, cum }
    }

    fn model_cdf(&self, k: u64) -> f64 {
        1.0 - hurwitz_zeta(self.alpha, (k + 1) as f64) / self.z0
    }

    fn draw(&self, rng: &mut impl Rng) -> u64 {
        let u: f64 = rng.random();
        let last = *self.cum.last().unwrap();
        if u < last {
            return self.xmin + self.cum.partition_point(|&c| c <= u) as u64;
        }
        // Smallest k with F(k) >= u, by doubling then bisection.
        let mut lo = self.xmin;
        if self.model_cdf(lo) >= u {
            return lo;
        }
        let mut hi = lo.saturating_mul(2).max(lo + 1);
        while self.model_cdf(hi) < u && hi < 1 << 52 {
            lo = hi;
            hi = hi.saturating_mul(2);
        }
        while lo + 1 < hi {
            let mid = lo + (hi - lo) / 2;
            if self.model_cdf(mid) >= u {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    }
}

/// Semi-parametric bootstrap p-value for a fit. Replicate r is seeded with
/// seed + r, so the result is a pure function of (sample, fit, replicates,
/// seed). Returns the fit with `pvalue`, `replicates`, and `seed` filled in.
pub fn ks_pvalue(
    sample: &[u64],
    fit: &PowerLawFit,
    replicates: usize,
    seed: u64,
) -> Result<PowerLawFit, PowerLawError> {
    if replicates == 0 {
        return Err(PowerLawError::NoReplicates);
    }
    let n = sample.len();
    if n == 0 {
        return Err(PowerLawError::EmptySample);
    }
    let body: Vec<u64> = sample.iter().copied().filter(|&v| v < fit.xmin).collect();
    let p_tail = (n - body.len()) as f64 / n as f64;
    let sampler = TailSampler::new(fit.alpha, fit.xmin);
    let mut at_least_as_far = 0usize;
    for r in 0..replicates {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(r as u64));
        let synth: Vec<u64> = (0..n)
            .map(|_| {
                if rng.random::<f64>() < p_tail {
                    sampler.draw(&mut rng)
                } else {
                    body[rng.random_range(0..body.len())]
                }
            })
            .collect();
        // A degenerate replicate cannot beat the observed fit.
        let ks_r = fit_discrete_power_law(&synth).map_or(f64::INFINITY, |f| f.ks);
        if ks_r >= fit.ks {
            at_least_as_far += 1;
        }
    }
    Ok(PowerLawFit {
        pvalue: Some(at_least_as_far as f64 / replicates as f64),
        replicates,
        seed: Some(seed),
        ..fit.clone()
    })
}

/// Degree histogram as (degree, node count) rows, ascending, zero included.
pub fn degree_histogram(seq: &[usize]) -> Vec<(u64, u64)> {
    let mut hist: BTreeMap<u64, u64> = BTreeMap::new();
    for &d in seq {
        *hist.entry(d as u64).or_default() += 1;
    }
    hist.into_iter().collect()
}

pub fn histogram_tsv(hist: &[(u64, u64)]) -> String {
    let mut out = String::new();
    for (degree, count) in hist {
        out.push_str(&format!("{degree}\t{count}\n"));
    }
    out
}

/// One direction's fit. The histogram keeps every degree including zero;
/// the fit itself sees only the nonzero entries.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeFit {
    pub fit: PowerLawFit,
    pub zeros_excluded: usize,
    pub histogram: Vec<(u64, u64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DegreeDistributionReport {
    pub indeg: DegreeFit,
    pub outdeg: DegreeFit,
    pub total: DegreeFit,
}

/// Fits the in-, out-, and total-degree distributions of a graph. Each
/// direction needs at least 10 nodes of nonzero degree. Bootstrap p-values
/// are not computed here; run `ks_pvalue` on the directions you care about.
pub fn degree_distribution_report(g: &Graph) -> Result<DegreeDistributionReport, PowerLawError> {
    let table = g.degrees();
    let directions: [(&'static str, &[usize]); 3] =
        [("in", &table.indeg), ("out", &table.outdeg), ("total", &table.total)];
    // Size checks across all directions come before any fitting, so a thin
    // direction is reported as thin rather than as whatever the fit on some
    // other direction stumbles over first.
    for (direction, seq) in directions {
        let nonzero = seq.iter().filter(|&&d| d > 0).count();
        if nonzero < 10 {
            return Err(PowerLawError::TooFewDegrees { direction, nonzero });
        }
    }
    let one = |seq: &[usize]| -> Result<DegreeFit, PowerLawError> {
        Ok(DegreeFit {
            fit: fit_discrete_power_law(&nonzero_degrees(seq))?,
            zeros_excluded: seq.iter().filter(|&&d| d == 0).count(),
            histogram: degree_histogram(seq),
        })
    };
    Ok(DegreeDistributionReport {
        indeg: one(&table.indeg)?,
        outdeg: one(&table.outdeg)?,
        total: one(&table.total)?,
    })
}

/// Nonzero degree sequence of one direction, ready for fitting.
pub fn nonzero_degrees(seq: &[usize]) -> Vec<u64> {
    seq.iter().filter(|&&d| d > 0).map(|&d| d as u64).collect()
}
