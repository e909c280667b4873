use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;
use serde::Serialize;

use super::{FourierValue, GroupContext, Realization, RepresentationSpec};
use crate::automaton::digits_of;
use crate::error::{Error, Result};
use crate::numbertheory::{e, SieveTables};

#[derive(Debug, Clone, Serialize)]
pub struct PrimeFourierRow {
    pub nu: u32,
    pub prime_count: u64,
    /// `sup_t ‖k^{-ν} Σ_{p<k^ν} D(T(q₀,(p)_k)) e(−pt)‖` over the grid.
    pub sup_norm: f64,
    pub argmax_t: f64,
    /// The same norm at `t = 0`.
    pub at_zero: f64,
}

fn prime_weights(ctx: &GroupContext, sieve: &SieveTables, hi: u64) -> Vec<(u64, usize)> {
    let tr = ctx.transducer();
    let k = tr.k() as u64;
    let primes: Vec<u64> = sieve.primes_in(0, hi).filter(|p| !k.is_multiple_of(*p)).collect();
    primes
        .par_iter()
        .map(|&p| (p, ctx.walk(tr.initial(), &digits_of(p, tr.k())).1))
        .collect()
}

fn sieve_bound(ctx: &GroupContext, sieve: &SieveTables, nu: u32) -> Result<u64> {
    let hi = (ctx.transducer().k() as u64)
        .checked_pow(nu)
        .filter(|&h| h <= sieve.limit() + 1)
        .ok_or_else(|| Error::InvalidArgument(format!("sieve does not reach k^{nu}")))?;
    Ok(hi)
}

/// `k^{-ν} Σ_{p<k^ν, p∤k} D(T(q₀,(p)_k)) e(−pt)` at a single `t`.
pub fn prime_fourier_at(
    ctx: &GroupContext,
    rep: &RepresentationSpec,
    sieve: &SieveTables,
    nu: u32,
    t: f64,
) -> Result<FourierValue> {
    let hi = sieve_bound(ctx, sieve, nu)?;
    let real = Realization::new(ctx, rep)?;
    let mut c = vec![Complex64::new(0.0, 0.0); ctx.group().len()];
    for (p, g) in prime_weights(ctx, sieve, hi) {
        c[g] += e(-((p as f64 * t).rem_euclid(1.0)));
    }
    let scale = hi as f64;
    let c: Vec<Complex64> = c.into_iter().map(|z| z / scale).collect();
    Ok(FourierValue::from_data(real.realize(&c)))
}

/// Supremum over `t = j/grid` of the prime exponential sum with the residue
/// characters removed, for each `ν`.
pub fn prime_fourier_residual(
    ctx: &GroupContext,
    sieve: &SieveTables,
    nus: &[u32],
    grid: usize,
) -> Result<Vec<PrimeFourierRow>> {
    if grid == 0 {
        return Err(Error::InvalidArgument("empty grid".into()));
    }
    let real = Realization::new(ctx, &RepresentationSpec::Regular)?;
    let gl = ctx.group().len();
    let fft = FftPlanner::new().plan_fft_forward(grid);
    let mut rows = Vec::new();
    for &nu in nus {
        let hi = sieve_bound(ctx, sieve, nu)?;
        let weights = prime_weights(ctx, sieve, hi);
        let mut bins = vec![vec![Complex64::new(0.0, 0.0); grid]; gl];
        for &(p, g) in &weights {
            bins[g][(p % grid as u64) as usize] += 1.0;
        }
        for b in &mut bins {
            fft.process(b);
        }
        let scale = hi as f64;
        let norms: Vec<f64> = (0..grid)
            .map(|j| {
                let c: Vec<Complex64> = bins.iter().map(|b| b[j] / scale).collect();
                FourierValue::from_data(real.realize(&c)).norm
            })
            .collect();
        let (j, &sup) = norms.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).unwrap();
        rows.push(PrimeFourierRow {
            nu,
            prime_count: weights.len() as u64,
            sup_norm: sup,
            argmax_t: j as f64 / grid as f64,
            at_zero: norms[0],
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::group_structure::{analyze_dfao, StructureConfig};

    fn ctx(name: &str) -> GroupContext {
        GroupContext::new(&analyze_dfao(&catalog::load(name), &StructureConfig::default()).unwrap()).unwrap()
    }

    #[test]
    fn fft_grid_matches_direct_sum() {
        let c = ctx("rudin-shapiro");
        let s = SieveTables::new(1 << 14).unwrap();
        let rows = prime_fourier_residual(&c, &s, &[12], 64).unwrap();
        let mut best: f64 = 0.0;
        for j in 0..64 {
            let v = prime_fourier_at(&c, &RepresentationSpec::Regular, &s, 12, j as f64 / 64.0).unwrap();
            best = best.max(v.norm);
        }
        assert!((rows[0].sup_norm - best).abs() < 1e-12);
    }

    #[test]
    fn zero_column_is_the_distribution_deviation() {
        // d′ = 1: the projection removes the mean, leaving the deviation from
        // the uniform share 1/|G|
        let c = ctx("thue-morse");
        let s = SieveTables::new(1 << 16).unwrap();
        let rows = prime_fourier_residual(&c, &s, &[16], 32).unwrap();
        let counts = crate::numbertheory::prime_weight_counts(
            &analyze_dfao(&catalog::load("thue-morse"), &StructureConfig::default()).unwrap(),
            &s,
            1 << 16,
        )
        .unwrap();
        let total: u64 = counts.iter().sum();
        let dev = counts
            .iter()
            .map(|&n| (n as f64 / total as f64 - 0.5).powi(2))
            .sum::<f64>()
            .sqrt();
        let expected = total as f64 / 65536.0 * dev;
        assert!((rows[0].at_zero - expected).abs() < 1e-12);
    }

    #[test]
    fn trivial_group_has_no_residual() {
        let a = crate::automaton::Dfao::new(2, vec!["c".into()], vec![0, 0], 0, &["c".into()], None).unwrap();
        let c = GroupContext::new(&analyze_dfao(&a, &StructureConfig::default()).unwrap()).unwrap();
        let s = SieveTables::new(1 << 12).unwrap();
        for row in prime_fourier_residual(&c, &s, &[8, 12], 64).unwrap() {
            assert!(row.sup_norm < 1e-15);
        }
    }

    #[test]
    fn thue_morse_residual_shrinks() {
        let c = ctx("thue-morse");
        let s = SieveTables::new(1 << 20).unwrap();
        let rows = prime_fourier_residual(&c, &s, &[10, 20], 1024).unwrap();
        assert!(rows[1].sup_norm < rows[0].sup_norm);
    }
}
