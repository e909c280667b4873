//! Exponential sums of transducer weights.
//!
//! Sums are accumulated in the group algebra `C[G]` and only realized in a
//! representation at the end, so one dynamic program serves every
//! representation.

mod carry;
mod prime_fourier;

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

pub use carry::{carry_exponent, carry_violation_count, fit_carry_constant, CarryCount};
pub use prime_fourier::{prime_fourier_at, prime_fourier_residual, PrimeFourierRow};

use crate::automaton::fixed_digits;
use crate::error::{Error, Result};
use crate::group_structure::Analysis;
use crate::numbertheory::e;
use crate::perm::GroupTable;
use crate::transducer::Transducer;

const DIRECT_MAX_LAMBDA: u32 = 22;
const FIT_MIN_LAMBDA: u32 = 8;
const GOLDEN_STEPS: usize = 60;
const BEAM_WIDTH: usize = 64;
const BEAM_SPREAD: i32 = 8;

/// A normalized transducer with `d = 1`, so every weight lies in `G`.
#[derive(Debug, Clone)]
pub struct GroupContext {
    transducer: Transducer,
    group: GroupTable,
    cayley: Vec<u32>,
    letters: Vec<u32>,
    s0: Vec<u64>,
    d_prime: u64,
}

impl GroupContext {
    pub fn new(an: &Analysis) -> Result<Self> {
        if an.report.d != 1 {
            return Err(Error::Hypothesis(format!("need d = 1, found d = {}", an.report.d)));
        }
        let t = an.transducer.clone();
        let group = an.group_table();
        let k = t.k();
        let mut letters = Vec::with_capacity(t.num_states() * k as usize);
        for q in 0..t.num_states() {
            for a in 0..k {
                let g = group
                    .position(t.weight(q, a))
                    .ok_or_else(|| Error::Hypothesis("transducer weight outside G".into()))?;
                letters.push(g as u32);
            }
        }
        Ok(GroupContext {
            cayley: group.cayley(),
            letters,
            s0: an.report.s0.clone(),
            d_prime: an.report.d_prime,
            group,
            transducer: t,
        })
    }

    pub fn transducer(&self) -> &Transducer {
        &self.transducer
    }
    pub fn group(&self) -> &GroupTable {
        &self.group
    }
    pub fn d_prime(&self) -> u64 {
        self.d_prime
    }
    pub fn s0(&self) -> &[u64] {
        &self.s0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cayley[a * self.group.len() + b] as usize
    }

    #[inline]
    pub fn letter(&self, q: usize, a: u32) -> usize {
        self.letters[q * self.transducer.k() as usize + a as usize] as usize
    }

    /// End state and `G`-index of `T(q, w)`.
    pub fn walk(&self, q: usize, w: &[u32]) -> (usize, usize) {
        w.iter().fold((q, 0), |(q, g), &a| (self.transducer.step(q, a), self.mul(g, self.letter(q, a))))
    }

    /// The `d′` characters `g ↦ e(ℓ·s₀(g)/d′)`.
    pub fn residue_characters(&self) -> Vec<Vec<Complex64>> {
        (0..self.d_prime)
            .map(|l| self.s0.iter().map(|&s| e((l * s % self.d_prime) as f64 / self.d_prime as f64)).collect())
            .collect()
    }

    /// `h·v` for a group-algebra vector `v`.
    fn left_mul_add(&self, h: usize, coef: Complex64, v: &[Complex64], out: &mut [Complex64]) {
        let n = self.group.len();
        let row = &self.cayley[h * n..(h + 1) * n];
        for (g, &x) in v.iter().enumerate() {
            out[row[g] as usize] += coef * x;
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RepresentationSpec {
    /// `g ↦ e(ℓ·s₀(g)/d′)`.
    DEll(u64),
    /// A one-dimensional character given by its values on `G` in order.
    Character(Vec<Complex64>),
    /// `g ↦ sign(g)`.
    Sign,
    /// Group-element indicator vectors with the residue characters removed.
    Regular,
}

impl FromStr for RepresentationSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "char" | "sign" => Ok(RepresentationSpec::Sign),
            "regular" => Ok(RepresentationSpec::Regular),
            _ => s
                .strip_prefix("dl:")
                .and_then(|l| l.parse().ok())
                .map(RepresentationSpec::DEll)
                .ok_or_else(|| Error::InvalidArgument(format!("unknown representation {s:?}"))),
        }
    }
}

impl fmt::Display for RepresentationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepresentationSpec::DEll(l) => write!(f, "dl:{l}"),
            RepresentationSpec::Character(_) => f.write_str("character"),
            RepresentationSpec::Sign => f.write_str("sign"),
            RepresentationSpec::Regular => f.write_str("regular"),
        }
    }
}

enum Realization {
    Scalar(Vec<Complex64>),
    Regular(Vec<Vec<Complex64>>),
}

impl Realization {
    fn new(ctx: &GroupContext, rep: &RepresentationSpec) -> Result<Self> {
        let g = ctx.group();
        let values = match rep {
            RepresentationSpec::DEll(l) => {
                if *l >= ctx.d_prime {
                    return Err(Error::InvalidArgument(format!("ℓ must be below d′ = {}", ctx.d_prime)));
                }
                return Ok(Realization::Scalar(ctx.residue_characters().swap_remove(*l as usize)));
            }
            RepresentationSpec::Regular => return Ok(Realization::Regular(ctx.residue_characters())),
            RepresentationSpec::Sign => g.elements().iter().map(|p| Complex64::new(p.sign() as f64, 0.0)).collect(),
            RepresentationSpec::Character(v) => v.clone(),
        };
        if values.len() != g.len() {
            return Err(Error::InvalidArgument(format!("character needs {} values", g.len())));
        }
        for a in 0..g.len() {
            for b in 0..g.len() {
                if (values[a] * values[b] - values[ctx.mul(a, b)]).norm() > 1e-9 {
                    return Err(Error::InvalidArgument("values are not multiplicative on G".into()));
                }
            }
        }
        Ok(Realization::Scalar(values))
    }

    /// Whether the realization is one of the residue characters, or (for the
    /// regular case) has nothing left after removing them.
    fn is_residue_character(&self, ctx: &GroupContext) -> bool {
        match self {
            Realization::Regular(_) => ctx.group().len() as u64 == ctx.d_prime,
            Realization::Scalar(v) => ctx
                .residue_characters()
                .iter()
                .any(|c| c.iter().zip(v).all(|(x, y)| (x - y).norm() < 1e-9)),
        }
    }

    fn realize(&self, c: &[Complex64]) -> Vec<Complex64> {
        match self {
            Realization::Scalar(chi) => vec![c.iter().zip(chi).map(|(x, y)| x * y).sum()],
            Realization::Regular(chars) => {
                let n = c.len() as f64;
                let mut out = c.to_vec();
                for chi in chars {
                    let coef: Complex64 = c.iter().zip(chi).map(|(x, y)| x * y.conj()).sum::<Complex64>() / n;
                    for (o, y) in out.iter_mut().zip(chi) {
                        *o -= coef * y;
                    }
                }
                out
            }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FourierValue {
    pub data: Vec<Complex64>,
    pub norm: f64,
}

impl FourierValue {
    fn from_data(data: Vec<Complex64>) -> Self {
        let norm = data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        FourierValue { data, norm }
    }
}

fn check_suffix(k: u32, alpha: u32, r: u64) -> Result<()> {
    if (k as u128).pow(alpha) <= r as u128 {
        return Err(Error::InvalidArgument(format!("r = {r} needs r < k^α")));
    }
    Ok(())
}

/// Group-algebra values of `ψ_λ` for every state and every `λ ≤ lambda_max`.
fn psi_levels(ctx: &GroupContext, lambda_max: u32, alpha: u32, t: f64, r: u64) -> Vec<Vec<Vec<Complex64>>> {
    let tr = ctx.transducer();
    let (k, n, gl) = (tr.k(), tr.num_states(), ctx.group().len());
    let suffix = fixed_digits(r, k, alpha as usize);
    let base: Vec<Vec<Complex64>> = (0..n)
        .map(|q| {
            let mut v = vec![Complex64::new(0.0, 0.0); gl];
            v[ctx.walk(q, &suffix).1] = Complex64::new(1.0, 0.0);
            v
        })
        .collect();
    let mut levels = vec![base];
    let mut scale = t.rem_euclid(1.0);
    for _ in 0..lambda_max {
        let prev = levels.last().unwrap();
        let next = (0..n)
            .map(|q| {
                let mut out = vec![Complex64::new(0.0, 0.0); gl];
                for a in 0..k {
                    let coef = e(-(a as f64) * scale) / k as f64;
                    ctx.left_mul_add(ctx.letter(q, a), coef, &prev[tr.step(q, a)], &mut out);
                }
                out
            })
            .collect();
        levels.push(next);
        scale = (scale * k as f64).rem_euclid(1.0);
    }
    levels
}

/// `ψ^q_{λ,α}(t, r) = k^{-λ} Σ_{u<k^λ} D(T(q, (u)^λ (r)^α)) e(-ut)` by the
/// digit recurrence.
pub fn psi_recurrence(
    ctx: &GroupContext,
    rep: &RepresentationSpec,
    q: usize,
    lambda: u32,
    alpha: u32,
    t: f64,
    r: u64,
) -> Result<FourierValue> {
    check_suffix(ctx.transducer().k(), alpha, r)?;
    let real = Realization::new(ctx, rep)?;
    let levels = psi_levels(ctx, lambda, alpha, t, r);
    Ok(FourierValue::from_data(real.realize(&levels[lambda as usize][q])))
}

/// `ψ` by enumerating all `u < k^λ`.
pub fn psi_direct(
    ctx: &GroupContext,
    rep: &RepresentationSpec,
    q: usize,
    lambda: u32,
    alpha: u32,
    t: f64,
    r: u64,
) -> Result<FourierValue> {
    check_suffix(ctx.transducer().k(), alpha, r)?;
    let k = ctx.transducer().k();
    let suffix = fixed_digits(r, k, alpha as usize);
    direct_sum(ctx, rep, lambda, t, |u| {
        let mut w = fixed_digits(u, k, lambda as usize);
        w.extend_from_slice(&suffix);
        ctx.walk(q, &w).1
    })
}

/// `φ^q_{λ,α}(t, r) = k^{-λ} Σ_{u<k^λ} D(T(q, (u k^α + r)_k)) e(-ut)`, for any `r`.
pub fn phi_direct(
    ctx: &GroupContext,
    rep: &RepresentationSpec,
    q: usize,
    lambda: u32,
    alpha: u32,
    t: f64,
    r: u64,
) -> Result<FourierValue> {
    let k = ctx.transducer().k() as u64;
    let top = (k as u128).pow(lambda + alpha) + r as u128;
    if top > u64::MAX as u128 {
        return Err(Error::InvalidArgument("u·k^α + r overflows".into()));
    }
    let ka = k.pow(alpha);
    direct_sum(ctx, rep, lambda, t, |u| ctx.walk(q, &crate::automaton::digits_of(u * ka + r, k as u32)).1)
}

fn direct_sum(
    ctx: &GroupContext,
    rep: &RepresentationSpec,
    lambda: u32,
    t: f64,
    weight: impl Fn(u64) -> usize,
) -> Result<FourierValue> {
    if lambda > DIRECT_MAX_LAMBDA {
        return Err(Error::CapExceeded { what: "direct enumeration λ", cap: DIRECT_MAX_LAMBDA as u64 });
    }
    let real = Realization::new(ctx, rep)?;
    let count = (ctx.transducer().k() as u64).pow(lambda);
    let t = t.rem_euclid(1.0);
    let mut c = vec![Complex64::new(0.0, 0.0); ctx.group().len()];
    for u in 0..count {
        c[weight(u)] += e(-((u as f64 * t).rem_euclid(1.0)));
    }
    for x in &mut c {
        *x /= count as f64;
    }
    Ok(FourierValue::from_data(real.realize(&c)))
}

/// Right side of the estimate
/// `‖φ_λ‖ ≤ Σ_{1≤j≤λ} (k−1) k^{-j} max_q ‖ψ_{λ−j}(t, r mod k^α)‖ + k^{-λ}`.
pub fn phi_bound(
    ctx: &GroupContext,
    rep: &RepresentationSpec,
    lambda: u32,
    alpha: u32,
    t: f64,
    r: u64,
) -> Result<f64> {
    let k = ctx.transducer().k() as u64;
    let r3 = r % k.pow(alpha);
    let real = Realization::new(ctx, rep)?;
    let levels = psi_levels(ctx, lambda, alpha, t, r3);
    let kf = k as f64;
    let mut bound = kf.powi(-(lambda as i32));
    for j in 1..=lambda {
        let max = levels[(lambda - j) as usize]
            .iter()
            .map(|c| FourierValue::from_data(real.realize(c)).norm)
            .fold(0.0, f64::max);
        bound += (kf - 1.0) * kf.powi(-(j as i32)) * max;
    }
    Ok(bound)
}

#[derive(Debug, Clone, Serialize)]
pub struct DecayFit {
    pub representation: String,
    pub lambdas: Vec<u32>,
    pub sup_norms: Vec<f64>,
    /// Where each supremum was attained, after refinement.
    pub argmax_t: Vec<f64>,
    pub grid: usize,
    pub alpha: u32,
    pub r: u64,
    pub eta_hat: f64,
    pub r2: f64,
    /// Smallest `λ` used in the regression.
    pub fit_from: u32,
}

fn sup_over_states(ctx: &GroupContext, real: &Realization, lambda_max: u32, alpha: u32, t: f64, r: u64) -> Vec<f64> {
    psi_levels(ctx, lambda_max, alpha, t, r)
        .iter()
        .map(|lvl| lvl.iter().map(|c| FourierValue::from_data(real.realize(c)).norm).fold(0.0, f64::max))
        .collect()
}

fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - phi * (hi - lo);
    let mut x2 = lo + phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..GOLDEN_STEPS {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = f(x1);
        }
    }
    if f1 > f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Ordinary least squares `y = a + b x`; returns `(b, r²)`.
pub(crate) fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    (slope, r2)
}

/// Supremum over `t` and `q` of `‖ψ_λ‖` for each `λ`, and the exponent of
/// the fitted decay `sup ≈ C k^{-η λ}`.
pub fn decay_fit(
    ctx: &GroupContext,
    rep: &RepresentationSpec,
    lambdas: RangeInclusive<u32>,
    grid: usize,
    alpha: u32,
    r: u64,
) -> Result<DecayFit> {
    check_suffix(ctx.transducer().k(), alpha, r)?;
    if grid == 0 || lambdas.is_empty() {
        return Err(Error::InvalidArgument("empty grid or λ range".into()));
    }
    let real = Realization::new(ctx, rep)?;
    if matches!(rep, RepresentationSpec::DEll(_)) || real.is_residue_character(ctx) {
        return Err(Error::InvalidArgument(format!(
            "{rep} is a residue character of G; its sums do not decay"
        )));
    }
    let lmax = *lambdas.end();
    let per_t: Vec<Vec<f64>> = (0..grid)
        .into_par_iter()
        .map(|j| sup_over_states(ctx, &real, lmax, alpha, j as f64 / grid as f64, r))
        .collect();
    // max_q ‖ψ_λ(t)‖ never exceeds max_q ‖ψ_{λ−1}(t)‖, so large values at
    // level λ sit near large values at level λ−1; a beam follows them down at
    // the resolution k^{-λ}.
    let k = ctx.transducer().k() as f64;
    let lambda_list: Vec<u32> = lambdas.clone().collect();
    let mut beam: Vec<(f64, f64)> = Vec::new();
    let mut sup_norms = Vec::new();
    let mut argmax_t = Vec::new();
    for l in 0..=lmax {
        let step = k.powi(-(l as i32)) / BEAM_SPREAD as f64;
        let refined: Vec<f64> = beam
            .iter()
            .flat_map(|&(t, _)| (-BEAM_SPREAD..=BEAM_SPREAD).map(move |j| (t + j as f64 * step).rem_euclid(1.0)))
            .collect();
        let mut pool: Vec<(f64, f64)> = refined
            .into_par_iter()
            .map(|t| (t, sup_over_states(ctx, &real, l, alpha, t, r)[l as usize]))
            .collect();
        pool.extend(per_t.iter().enumerate().map(|(j, v)| (j as f64 / grid as f64, v[l as usize])));
        pool.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.total_cmp(&b.0)));
        pool.truncate(BEAM_WIDTH);
        beam = pool;
        if lambdas.contains(&l) {
            let (t0, best) = beam[0];
            let (t1, v1) =
                golden_max(|t| sup_over_states(ctx, &real, l, alpha, t, r)[l as usize], t0 - step, t0 + step);
            let (t, v) = if v1 > best { (t1.rem_euclid(1.0), v1) } else { (t0, best) };
            sup_norms.push(v);
            argmax_t.push(t);
        }
    }
    let fit: Vec<(f64, f64)> = lambda_list
        .iter()
        .zip(&sup_norms)
        .filter(|(&l, _)| l >= FIT_MIN_LAMBDA)
        .map(|(&l, &s)| (l as f64, s.max(f64::MIN_POSITIVE).ln() / k.ln()))
        .collect();
    if fit.len() < 2 {
        return Err(Error::InvalidArgument(format!("need at least two λ ≥ {FIT_MIN_LAMBDA}")));
    }
    let (xs, ys): (Vec<f64>, Vec<f64>) = fit.into_iter().unzip();
    let (slope, r2) = linear_fit(&xs, &ys);
    Ok(DecayFit {
        representation: rep.to_string(),
        lambdas: lambda_list,
        sup_norms,
        argmax_t,
        grid,
        alpha,
        r,
        eta_hat: -slope,
        r2,
        fit_from: FIT_MIN_LAMBDA,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::group_structure::{analyze_dfao, StructureConfig};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ctx(name: &str) -> GroupContext {
        GroupContext::new(&analyze_dfao(&catalog::load(name), &StructureConfig::default()).unwrap()).unwrap()
    }

    #[test]
    fn thue_morse_sign_vanishes_at_zero() {
        let c = ctx("thue-morse");
        let v = psi_recurrence(&c, &RepresentationSpec::Sign, 0, 5, 0, 0.0, 0).unwrap();
        assert!(v.norm < 1e-12);
        let triv = RepresentationSpec::Character(vec![Complex64::new(1.0, 0.0); 2]);
        let one = phi_direct(&c, &triv, 0, 7, 0, 0.0, 0).unwrap();
        assert!((one.norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn lambda_zero_is_a_single_term() {
        let c = ctx("rudin-shapiro");
        for r in 0..8 {
            let v = psi_recurrence(&c, &RepresentationSpec::Sign, 1, 0, 3, 0.3, r).unwrap();
            assert!((v.norm - 1.0).abs() < 1e-12);
        }
        assert!(psi_recurrence(&c, &RepresentationSpec::Sign, 0, 2, 2, 0.0, 4).is_err());
    }

    #[test]
    fn recurrence_matches_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for name in ["thue-morse", "rudin-shapiro", "five-state", "base3-parity"] {
            let c = ctx(name);
            let k = c.transducer().k() as u64;
            for rep in [RepresentationSpec::Sign, RepresentationSpec::Regular] {
                for _ in 0..10 {
                    let alpha = rng.gen_range(0..3);
                    let r = rng.gen_range(0..k.pow(alpha));
                    let q = rng.gen_range(0..c.transducer().num_states());
                    let t: f64 = rng.gen();
                    let lambda = if k == 2 { 10 } else { 6 };
                    let a = psi_recurrence(&c, &rep, q, lambda, alpha, t, r).unwrap();
                    let b = psi_direct(&c, &rep, q, lambda, alpha, t, r).unwrap();
                    for (x, y) in a.data.iter().zip(&b.data) {
                        assert!((x - y).norm() < 1e-10, "{name} {rep}");
                    }
                    assert!(a.norm <= 1.0 + 1e-12);
                }
            }
        }
    }

    #[test]
    fn phi_respects_the_psi_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for name in ["rudin-shapiro", "five-state", "base3-parity"] {
            let c = ctx(name);
            for _ in 0..20 {
                let t: f64 = rng.gen();
                let r = rng.gen_range(0..500);
                let alpha = rng.gen_range(0..3);
                let phi = phi_direct(&c, &RepresentationSpec::Regular, 0, 6, alpha, t, r).unwrap();
                let bound = phi_bound(&c, &RepresentationSpec::Regular, 6, alpha, t, r).unwrap();
                assert!(phi.norm <= bound + 1e-12, "{name}: {} > {bound}", phi.norm);
            }
        }
    }

    #[test]
    fn periodic_in_t() {
        let c = ctx("five-state");
        let a = psi_recurrence(&c, &RepresentationSpec::Regular, 1, 8, 1, 0.137, 1).unwrap();
        let b = psi_recurrence(&c, &RepresentationSpec::Regular, 1, 8, 1, 1.137, 1).unwrap();
        assert!((a.norm - b.norm).abs() < 1e-12);
    }

    #[test]
    fn residue_characters_are_orthonormal_and_refused() {
        let c = ctx("base3-parity");
        assert_eq!(c.d_prime(), 2);
        let chars = c.residue_characters();
        let n = c.group().len() as f64;
        for (i, a) in chars.iter().enumerate() {
            for (j, b) in chars.iter().enumerate() {
                let ip: Complex64 = a.iter().zip(b).map(|(x, y)| x * y.conj()).sum::<Complex64>() / n;
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((ip - want).norm() < 1e-12);
            }
        }
        // |G| = d′ here: every character is a residue character
        assert!(decay_fit(&c, &RepresentationSpec::Regular, 8..=10, 16, 0, 0).is_err());
        assert!(decay_fit(&c, &RepresentationSpec::DEll(1), 8..=10, 16, 0, 0).is_err());
        assert!(decay_fit(&c, &RepresentationSpec::Sign, 8..=10, 16, 0, 0).is_err());
    }

    #[test]
    fn residue_character_tracks_the_value() {
        for name in ["base3-parity", "thue-morse", "rudin-shapiro"] {
            let c = ctx(name);
            let (dp, k) = (c.d_prime(), c.transducer().k());
            for n in 0..10_000u64 {
                let (_, g) = c.walk(c.transducer().initial(), &crate::automaton::digits_of(n, k));
                assert_eq!(c.s0()[g], n % dp, "{name} {n}");
            }
        }
    }

    #[test]
    fn trivial_group_refuses_trivial_character() {
        let a = crate::automaton::Dfao::new(2, vec!["c".into()], vec![0, 0], 0, &["c".into()], None).unwrap();
        let c = GroupContext::new(&analyze_dfao(&a, &StructureConfig::default()).unwrap()).unwrap();
        let triv = RepresentationSpec::Character(vec![Complex64::new(1.0, 0.0)]);
        assert!(decay_fit(&c, &triv, 8..=9, 8, 0, 0).is_err());
    }

    #[test]
    fn parses_representations() {
        assert_eq!("dl:2".parse::<RepresentationSpec>().unwrap(), RepresentationSpec::DEll(2));
        assert_eq!("regular".parse::<RepresentationSpec>().unwrap(), RepresentationSpec::Regular);
        assert!("dl:x".parse::<RepresentationSpec>().is_err());
    }
}
