use std::collections::BTreeMap;

use num_integer::gcd;
use num_rational::Ratio;
use serde::Serialize;

use super::{euler_phi, SieveTables};
use crate::automaton::{digits_of, Dfao};
use crate::error::{Error, Result};
use crate::group_structure::{analyze_dfao, reduce_to_special, Analysis, StructureConfig};
use crate::perm::Perm;

#[derive(Debug, Clone, Serialize)]
pub struct PrimePrediction {
    pub power: u32,
    pub base: u32,
    pub d_prime: u64,
    /// Limiting share of each element of `G` among `T(q₀, (p)_k)`.
    pub group_weights: Vec<(Perm, Ratio<u64>)>,
    pub stationary: Vec<f64>,
    pub state_weights: Vec<f64>,
    pub frequencies: BTreeMap<String, f64>,
    #[serde(skip)]
    pub analysis: Analysis,
    #[serde(skip)]
    pub reduced: Dfao,
}

const POWER_TOL: f64 = 1e-13;
const POWER_MAX_ITER: usize = 100_000;

/// Limiting frequency of each output label along the primes.
///
/// Requires a strongly connected automaton whose initial state loops on
/// digit 0.
pub fn predict_prime_frequencies(a: &Dfao, cfg: &StructureConfig) -> Result<PrimePrediction> {
    if !a.is_strongly_connected() {
        return Err(Error::Hypothesis("automaton is not strongly connected".into()));
    }
    if a.step(a.initial(), 0) != a.initial() {
        return Err(Error::Hypothesis("initial state does not loop on digit 0".into()));
    }
    let reduction = reduce_to_special(a, cfg)?;
    let reduced = reduction.automaton;
    if !reduced.is_strongly_connected() {
        return Err(Error::Hypothesis("power automaton is not strongly connected".into()));
    }
    let analysis = analyze_dfao(&reduced, cfg)?;
    let r = &analysis.report;
    if r.d != 1 || r.k0 != 1 {
        return Err(Error::Hypothesis("reduction did not reach d = k0 = 1".into()));
    }
    let dp = r.d_prime;
    let share = Ratio::new(dp, euler_phi(dp) * r.group.len() as u64);
    let group_weights: Vec<(Perm, Ratio<u64>)> = r
        .group
        .iter()
        .zip(&r.s0)
        .map(|(g, &s)| (g.clone(), if gcd(s, dp) == 1 { share } else { Ratio::from_integer(0) }))
        .collect();

    let t = &analysis.transducer;
    let n = t.num_states();
    let kb = t.k();
    let mut pi = vec![1.0 / n as f64; n];
    for iter in 0.. {
        let mut next = vec![0.0; n];
        for q in 0..n {
            for d in 0..kb {
                next[t.step(q, d)] += pi[q] / kb as f64;
            }
        }
        let diff: f64 = next.iter().zip(&pi).map(|(x, y)| (x - y).abs()).sum();
        pi = next;
        if diff < POWER_TOL {
            break;
        }
        if iter >= POWER_MAX_ITER {
            return Err(Error::NonStabilizing(POWER_MAX_ITER));
        }
    }

    let coprime: Vec<u32> = (0..kb).filter(|&d| gcd(d, kb) == 1).collect();
    let mut state_weights = vec![0.0; n];
    for &d in &coprime {
        for q in 0..n {
            state_weights[t.step(q, d)] += pi[q] / coprime.len() as f64;
        }
    }

    let mut frequencies: BTreeMap<String, f64> =
        reduced.labels().iter().map(|l| (l.symbol.clone(), 0.0)).collect();
    for q in 0..n {
        for (g, f) in &group_weights {
            if *f.numer() == 0 {
                continue;
            }
            let first = g.act(t.tuple(q))[0] as usize;
            let fg = *f.numer() as f64 / *f.denom() as f64;
            *frequencies.get_mut(&reduced.label(first).symbol).unwrap() += state_weights[q] * fg;
        }
    }
    Ok(PrimePrediction {
        power: reduction.power,
        base: reduction.base,
        d_prime: dp,
        group_weights,
        stationary: pi,
        state_weights,
        frequencies,
        analysis,
        reduced,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct EmpiricalPrimeStats {
    pub lo: u64,
    pub hi: u64,
    pub modulus: Option<(u64, u64)>,
    pub prime_count: u64,
    pub counts: BTreeMap<String, u64>,
    pub frequencies: BTreeMap<String, f64>,
}

/// Label counts over primes `p` in `[lo, hi)` not dividing `k`, optionally
/// restricted to `p ≡ residue (mod modulus)`.
pub fn empirical_prime_frequencies(
    a: &Dfao,
    sieve: &SieveTables,
    lo: u64,
    hi: u64,
    filter: Option<(u64, u64)>,
) -> Result<EmpiricalPrimeStats> {
    if hi > sieve.limit() + 1 {
        return Err(Error::InvalidArgument(format!("sieve covers n ≤ {}", sieve.limit())));
    }
    if let Some((m, _)) = filter {
        if m == 0 {
            return Err(Error::InvalidArgument("modulus must be positive".into()));
        }
    }
    let k = a.k() as u64;
    let mut counts: BTreeMap<String, u64> = a.labels().iter().map(|l| (l.symbol.clone(), 0)).collect();
    let mut total = 0;
    for p in sieve.primes_in(lo, hi) {
        if k.is_multiple_of(p) || filter.is_some_and(|(m, res)| p % m != res % m) {
            continue;
        }
        *counts.get_mut(&a.term(p).symbol).unwrap() += 1;
        total += 1;
    }
    let frequencies = counts
        .iter()
        .map(|(l, &c)| (l.clone(), if total == 0 { 0.0 } else { c as f64 / total as f64 }))
        .collect();
    Ok(EmpiricalPrimeStats { lo, hi, modulus: filter, prime_count: total, counts, frequencies })
}

/// How often each element of `G` occurs as `T(q₀, (p)_k)` over primes
/// `p < limit` not dividing `k`. Requires `d = 1`.
pub fn prime_weight_counts(an: &Analysis, sieve: &SieveTables, limit: u64) -> Result<Vec<u64>> {
    if limit > sieve.limit() + 1 {
        return Err(Error::InvalidArgument(format!("sieve covers n ≤ {}", sieve.limit())));
    }
    let t = &an.transducer;
    let k = t.k() as u64;
    let group = an.group_table();
    let mut counts = vec![0u64; group.len()];
    for p in sieve.primes_in(0, limit) {
        if k.is_multiple_of(p) {
            continue;
        }
        let (_, w) = t.run(t.initial(), &digits_of(p, t.k()));
        let i = group
            .position(&w)
            .ok_or_else(|| Error::Hypothesis("weight outside G; d must be 1".into()))?;
        counts[i] += 1;
    }
    Ok(counts)
}
