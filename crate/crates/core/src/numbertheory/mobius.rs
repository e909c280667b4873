use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;

use super::SieveTables;
use crate::automaton::Dfao;
use crate::error::{Error, Result};
use crate::group_structure::ProductGraph;
use crate::transducer::Transducer;

#[derive(Debug, Clone, Serialize)]
pub struct LabelCorrelation {
    /// `N⁻¹ Σ_{n<N} μ(n) 1[a_{n+r} = b]`.
    pub raw: f64,
    /// Share of `n < N` with `a_{n+r} = b`.
    pub mean: f64,
    /// `raw − mean · Σ_{n<N} μ(n) / N`.
    pub centered: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct MobiusCorrelation {
    pub n: u64,
    pub shift: u64,
    pub mertens: i64,
    pub embedded: Option<Complex64>,
    pub per_label: BTreeMap<String, LabelCorrelation>,
}

impl MobiusCorrelation {
    pub fn max_centered(&self) -> f64 {
        self.per_label.values().map(|c| c.centered.abs()).fold(0.0, f64::max)
    }
}

/// Correlation of the sequence, shifted by `shift`, with `μ` over `n < N`.
pub fn mobius_correlation(a: &Dfao, sieve: &SieveTables, n: u64, shift: u64) -> Result<MobiusCorrelation> {
    if n == 0 || n - 1 > sieve.limit() {
        return Err(Error::InvalidArgument(format!("need 0 < N ≤ {}", sieve.limit() + 1)));
    }
    let states = a.state_sequence((n + shift) as usize);
    let labels = a.labels().len();
    let mut raw = vec![0i64; labels];
    let mut hits = vec![0u64; labels];
    let mut mertens = 0i64;
    let mut embedded = Complex64::new(0.0, 0.0);
    let emb: Option<Vec<Complex64>> =
        a.has_embedding().then(|| a.labels().iter().map(|l| l.embedding.unwrap()).collect());
    let mu = sieve.mu_slice();
    for m in 0..n as usize {
        let label = a.label_id(states[m + shift as usize] as usize);
        hits[label] += 1;
        let mu_m = mu[m] as i64;
        if mu_m != 0 {
            raw[label] += mu_m;
            mertens += mu_m;
            if let Some(e) = &emb {
                embedded += e[label] * mu_m as f64;
            }
        }
    }
    let nf = n as f64;
    let per_label = a
        .labels()
        .iter()
        .enumerate()
        .map(|(i, l)| {
            let raw = raw[i] as f64 / nf;
            let mean = hits[i] as f64 / nf;
            (l.symbol.clone(), LabelCorrelation { raw, mean, centered: raw - mean * mertens as f64 / nf })
        })
        .collect();
    Ok(MobiusCorrelation {
        n,
        shift,
        mertens,
        embedded: emb.map(|_| embedded / nf),
        per_label,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct WindowedSum {
    pub n: u64,
    pub nu: u32,
    pub lambda1: u32,
    pub lambda2: u32,
    pub b: u64,
    pub m: u64,
    pub r: u64,
    /// Sum of `μ(n)` per group element of `T(q₀, (n+r)_k)`, divided by `N`.
    pub vector: Vec<f64>,
    pub norm: f64,
}

/// Möbius sum restricted to `n ≡ m (mod k^λ₂)` and to `n + r` whose top
/// `λ₁` digits below `k^ν` spell `b`, with the transducer weight realized as
/// a group-element indicator vector.
#[allow(clippy::too_many_arguments)]
pub fn windowed_mobius_sum(
    t: &Transducer,
    sieve: &SieveTables,
    n: u64,
    lambda1: u32,
    lambda2: u32,
    b: u64,
    m: u64,
    r: u64,
    group_cap: usize,
) -> Result<WindowedSum> {
    if n == 0 || n - 1 > sieve.limit() {
        return Err(Error::InvalidArgument(format!("need 0 < N ≤ {}", sieve.limit() + 1)));
    }
    let k = t.k() as u64;
    let mut nu = 0u32;
    while k.pow(nu) <= n {
        nu += 1;
    }
    if lambda1 + lambda2 >= nu {
        return Err(Error::InvalidArgument(format!("λ1 + λ2 must be below ν = {nu}")));
    }
    let (kl1, kl2, knu) = (k.pow(lambda1), k.pow(lambda2), k.pow(nu));
    if b >= kl1 || m >= kl2 {
        return Err(Error::InvalidArgument("window digits out of range".into()));
    }
    let pg = ProductGraph::new(t, group_cap)?;
    let len = (n + r) as usize;
    let mut node = vec![0u32; len];
    let start = pg.node(t.initial(), 0);
    for x in 0..len {
        node[x] = if x == 0 {
            start as u32
        } else {
            let parent = if (x as u64) < k { start } else { node[x / k as usize] as usize };
            pg.succ(parent, (x as u64 % k) as u32) as u32
        };
    }
    let window_lo = b * (knu / kl1);
    let window = knu / kl1;
    let mut vector = vec![0i64; pg.group().len()];
    let mu = sieve.mu_slice();
    for x in (m..n).step_by(kl2 as usize) {
        let mu_x = mu[x as usize];
        if mu_x == 0 {
            continue;
        }
        let y = (x + r) % knu;
        if (y + knu - window_lo) % knu >= window {
            continue;
        }
        let (_, g) = pg.split(node[(x + r) as usize] as usize);
        vector[g] += mu_x as i64;
    }
    let vector: Vec<f64> = vector.iter().map(|&v| v as f64 / n as f64).collect();
    let norm = vector.iter().map(|v| v * v).sum::<f64>().sqrt();
    Ok(WindowedSum { n, nu, lambda1, lambda2, b, m, r, vector, norm })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn constant_sequence_gives_mertens() {
        let a = Dfao::new(2, vec!["c".into()], vec![0, 0], 0, &["c".into()], None).unwrap();
        let s = SieveTables::new(10_000).unwrap();
        for shift in [0, 1, 17] {
            let c = mobius_correlation(&a, &s, 10_000, shift).unwrap();
            assert_eq!(c.mertens, s.mertens(9_999));
            assert!((c.per_label["c"].raw - s.mertens(9_999) as f64 / 1e4).abs() < 1e-15);
            assert!(c.per_label["c"].centered.abs() < 1e-15);
        }
    }

    #[test]
    fn trivial_window_matches_label_correlation() {
        let a = catalog::load("thue-morse");
        let t = Transducer::induced(&a, 1 << 10).unwrap();
        let s = SieveTables::new(50_000).unwrap();
        let w = windowed_mobius_sum(&t, &s, 50_000, 0, 0, 0, 0, 0, 100).unwrap();
        let c = mobius_correlation(&a, &s, 50_000, 0).unwrap();
        // one-state transducer: weight id reads label 0, the swap reads 1
        assert!((w.vector[0] - c.per_label["0"].raw).abs() < 1e-15);
        assert!((w.vector[1] - c.per_label["1"].raw).abs() < 1e-15);
    }

    #[test]
    fn windows_partition_the_full_sum() {
        let a = catalog::load("rudin-shapiro");
        let t = Transducer::induced(&a, 1 << 10).unwrap();
        let s = SieveTables::new(40_000).unwrap();
        let full = windowed_mobius_sum(&t, &s, 40_000, 0, 0, 0, 0, 3, 100).unwrap();
        let mut total = vec![0.0; full.vector.len()];
        for b in 0..4 {
            for m in 0..2 {
                let w = windowed_mobius_sum(&t, &s, 40_000, 2, 1, b, m, 3, 100).unwrap();
                for (acc, v) in total.iter_mut().zip(&w.vector) {
                    *acc += v;
                }
            }
        }
        for (x, y) in total.iter().zip(&full.vector) {
            assert!((x - y).abs() < 1e-12);
        }
        assert!(windowed_mobius_sum(&t, &s, 40_000, 2, 0, 4, 0, 0, 100).is_err());
    }
}
