use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group_structure::ProductGraph;
use crate::transducer::Transducer;

const WORK_CAP: u128 = 100_000_000;
const TABLE_CAP: u128 = 1 << 25;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct CarryCount {
    pub lambda: u32,
    pub alpha: u32,
    pub rho: u32,
    pub r: u64,
    pub violations: u64,
}

/// `η = log(k^ℓ₀ / (k^ℓ₀ − 1)) / log(k^ℓ₀)`, taken as 1 when every word
/// synchronizes (`ℓ₀ = 0`) and capped at 1.
pub fn carry_exponent(k: u32, l0: usize) -> f64 {
    if l0 == 0 {
        return 1.0;
    }
    let kl = (k as f64).powi(l0 as i32);
    ((kl / (kl - 1.0)).ln() / kl.ln()).min(1.0)
}

/// Number of `ℓ < k^λ` for which some `n₁, n₂ < k^α` give
/// `f(x)⁻¹ f(y) ≠ f'(x)⁻¹ f'(y)` with `y = ℓk^α + n₁`, `x = y + n₂`,
/// `f(n) = T(q₀, (n+r)_k)` and `f'(n)` the weight of the last `α+ρ` digits
/// of `n+r`, leading zeros included.
pub fn carry_violation_count(
    t: &Transducer,
    lambda: u32,
    alpha: u32,
    rho: u32,
    r: u64,
    group_cap: usize,
) -> Result<CarryCount> {
    if rho >= lambda {
        return Err(Error::InvalidArgument("need ρ < λ".into()));
    }
    let k = t.k() as u128;
    if k.pow(lambda + 2 * alpha) > WORK_CAP {
        return Err(Error::CapExceeded { what: "k^(λ+2α)", cap: WORK_CAP as u64 });
    }
    let ka = k.pow(alpha) as u64;
    let len = k.pow(lambda + alpha) + 2 * ka as u128 + r as u128;
    if len > TABLE_CAP {
        return Err(Error::CapExceeded { what: "weight table length", cap: TABLE_CAP as u64 });
    }
    let pg = ProductGraph::new(t, group_cap)?;
    let group = pg.group();
    let cayley = group.cayley();
    let inverses = group.inverses();
    let gl = group.len();

    let k64 = k as u64;
    let len = len as usize;
    let start = pg.node(t.initial(), 0);
    let mut nodes = vec![0u32; len];
    for x in 1..len {
        let parent = if (x as u64) < k64 { start } else { nodes[x / k64 as usize] as usize };
        nodes[x] = pg.succ(parent, (x as u64 % k64) as u32) as u32;
    }
    nodes[0] = start as u32;
    // weights of the last α+ρ digits, read with leading zeros
    let mut fixed = vec![start as u32];
    for _ in 0..alpha + rho {
        fixed = (0..fixed.len() * k64 as usize)
            .map(|m| pg.succ(fixed[m / k64 as usize] as usize, (m as u64 % k64) as u32) as u32)
            .collect();
    }
    let trunc = k.pow(alpha + rho) as u64;
    let f = |n: u64| pg.split(nodes[(n + r) as usize] as usize).1;
    let f_trunc = |n: u64| pg.split(fixed[((n + r) % trunc) as usize] as usize).1;
    let ratio = |x: usize, y: usize| cayley[inverses[x] as usize * gl + y];

    let violations = (0..k.pow(lambda) as u64)
        .into_par_iter()
        .filter(|&l| {
            (0..ka).any(|n1| {
                let y = l * ka + n1;
                (0..ka).any(|n2| {
                    let x = y + n2;
                    ratio(f(x), f(y)) != ratio(f_trunc(x), f_trunc(y))
                })
            })
        })
        .count() as u64;
    Ok(CarryCount { lambda, alpha, rho, r, violations })
}

/// Smallest `C` with `violations ≤ C·k^{λ−ηρ}` on every count.
pub fn fit_carry_constant(counts: &[CarryCount], k: u32, eta: f64) -> f64 {
    counts
        .iter()
        .map(|c| c.violations as f64 / (k as f64).powf(c.lambda as f64 - eta * c.rho as f64))
        .fold(0.0, f64::max)
}
