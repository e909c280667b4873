//! End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use autoseq::automaton::digits_of;
use autoseq::catalog;
use autoseq::group_structure::{analyze_dfao, compute_l0, reduce_to_special, verify_structure};
use autoseq::harmonic::{
    carry_exponent, carry_violation_count, decay_fit, fit_carry_constant, psi_direct, psi_recurrence, CarryCount,
    GroupContext, RepresentationSpec,
};
use autoseq::numbertheory::{
    empirical_prime_frequencies, kloosterman, mobius_correlation, predict_prime_frequencies, SieveTables,
};
use autoseq::{Dfao, Perm, StructureConfig, Transducer};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Duration, Box<dyn Fn() -> Outcome + 'a>);

fn cfg() -> StructureConfig {
    StructureConfig::default()
}

/// Strongly connected pieces to test: the automaton itself, or each final
/// component when it is not strongly connected.
fn pieces(a: &Dfao) -> Vec<(String, Dfao)> {
    if a.is_strongly_connected() {
        return vec![(String::new(), a.clone())];
    }
    a.reachable_final_components()
        .iter()
        .map(|c| {
            let names: Vec<&str> = c.iter().map(|&q| a.state_name(q)).collect();
            (format!("{{{}}}", names.join(",")), a.restrict(c).expect("final component"))
        })
        .collect()
}

struct Row {
    tuple: &'static [&'static str],
    edges: [(&'static str, usize); 2],
}

fn check_table(name: &str, n0: usize, rows: &[Row]) -> Result<(), String> {
    let a = catalog::load(name);
    let t = Transducer::induced(&a, cfg().subset_cap).map_err(|e| e.to_string())?;
    if t.width() != n0 || t.num_states() != rows.len() {
        return Err(format!("{name}: width {} with {} states", t.width(), t.num_states()));
    }
    if t.initial() != 0 {
        return Err(format!("{name}: initial state {}", t.initial()));
    }
    for (q, row) in rows.iter().enumerate() {
        let tuple: Vec<&str> = t.tuple(q).iter().map(|&s| a.state_name(s as usize)).collect();
        if tuple != row.tuple {
            return Err(format!("{name}: state {q} is {tuple:?}, expected {:?}", row.tuple));
        }
        for (digit, (weight, target)) in row.edges.iter().enumerate() {
            let got = (t.weight(q, digit as u32).to_string(), t.step(q, digit as u32));
            if got != (weight.to_string(), *target) {
                return Err(format!("{name}: edge ({q},{digit}) is {got:?}, expected ({weight}, {target})"));
            }
        }
    }
    Ok(())
}

fn golden_transducers() -> Outcome {
    check_table(
        "rudin-shapiro",
        2,
        &[
            Row { tuple: &["q0", "q1"], edges: [("id", 0), ("id", 1)] },
            Row { tuple: &["q2", "q3"], edges: [("id", 0), ("(12)", 1)] },
        ],
    )?;
    check_table(
        "five-state",
        3,
        &[
            Row { tuple: &["q0", "q1", "q2"], edges: [("(12)", 0), ("(23)", 1)] },
            Row { tuple: &["q0", "q3", "q4"], edges: [("(12)", 0), ("id", 0)] },
        ],
    )?;
    check_table(
        "six-state",
        3,
        &[
            Row { tuple: &["q0", "q1", "q2"], edges: [("(23)", 0), ("(12)", 1)] },
            Row { tuple: &["q3", "q4", "q5"], edges: [("(23)", 0), ("(23)", 1)] },
        ],
    )?;
    Ok("rudin-shapiro, five-state and six-state tables match".into())
}

fn reconstruction() -> Outcome {
    const LIMIT: u64 = 100_000;
    let mut checked = 0;
    for name in catalog::names() {
        for (label, a) in pieces(&catalog::load(name)) {
            let t = Transducer::induced(&a, cfg().subset_cap).map_err(|e| format!("{name}{label}: {e}"))?;
            let bad = (0..LIMIT)
                .filter(|&n| t.reconstruct(&digits_of(n, a.k())) as usize != a.state_at(n))
                .count();
            if bad > 0 {
                return Err(format!("{name}{label}: {bad} mismatches below {LIMIT}"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} transducers, zero mismatches for n < {LIMIT}"))
}

fn perm_set(cycles: &[&str]) -> BTreeSet<Perm> {
    cycles.iter().map(|c| Perm::parse_cycles(c, 3).unwrap()).collect()
}

fn structure_invariants() -> Outcome {
    let six = catalog::load("six-state");
    let an = analyze_dfao(&six, &cfg()).map_err(|e| e.to_string())?;
    let r = &an.report;
    if r.d != 2 {
        return Err(format!("six-state d = {}", r.d));
    }
    let group: BTreeSet<Perm> = r.group.iter().cloned().collect();
    if group != perm_set(&["id", "(123)", "(132)"]) {
        return Err(format!("six-state G = {:?}", r.group));
    }
    let odd: BTreeSet<Perm> = r.cosets[1].iter().cloned().collect();
    if odd != perm_set(&["(12)", "(13)", "(23)"]) {
        return Err(format!("six-state odd coset = {odd:?}"));
    }
    if (r.d_prime, r.k0) != (1, 1) || r.d_dprime.iter().flatten().any(|&x| x != 2) {
        return Err(format!("six-state d′ = {}, d″ = {:?}, k₀ = {}", r.d_prime, r.d_dprime, r.k0));
    }
    let red = reduce_to_special(&six, &cfg()).map_err(|e| e.to_string())?;
    if red.power != 2 || !red.is_special() {
        return Err(format!("six-state reduction: power {} special {}", red.power, red.is_special()));
    }
    Ok("six-state d=2, G={id,(123),(132)}, odd coset = transpositions, d′=1, d″=2, k₀=1; square has d=k₀=1".into())
}

fn brute_force_cosets() -> Outcome {
    let mut checked = 0;
    for name in catalog::names() {
        for (label, a) in pieces(&catalog::load(name)) {
            let an = analyze_dfao(&a, &cfg()).map_err(|e| format!("{name}{label}: {e}"))?;
            let check = verify_structure(&an, 10);
            if !check.passed() {
                let first = check.failures.first().cloned().unwrap_or_else(|| "no stabilized length".into());
                return Err(format!("{name}{label}: {first}"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} transducers agree with the coset families up to length 10"))
}

fn prime_frequencies(sieve: &SieveTables) -> Outcome {
    const TOL: f64 = 5e-3;
    let mut lines = Vec::new();
    let mut failed = false;
    for name in ["thue-morse", "rudin-shapiro"] {
        let a = catalog::load(name);
        let pred = predict_prime_frequencies(&a, &cfg()).map_err(|e| e.to_string())?;
        let emp = empirical_prime_frequencies(&a, sieve, 0, sieve.limit() + 1, None).map_err(|e| e.to_string())?;
        let gap = pred
            .frequencies
            .iter()
            .map(|(l, f)| (f - emp.frequencies.get(l).copied().unwrap_or(0.0)).abs())
            .fold(0.0, f64::max);
        failed |= gap > TOL;
        let shown: Vec<String> = emp.frequencies.iter().map(|(l, f)| format!("{l}:{f:.6}")).collect();
        lines.push(format!("{name} gap {gap:.5} [{}]", shown.join(" ")));
    }
    let msg = format!("{} (tolerance {TOL})", lines.join("; "));
    if failed {
        Err(msg)
    } else {
        Ok(msg)
    }
}

fn nonexistence(sieve: &SieveTables) -> Outcome {
    let a = catalog::load("base3-intro");
    let p = 3u64.pow(12);
    let lower = empirical_prime_frequencies(&a, sieve, p, 2 * p, None).map_err(|e| e.to_string())?;
    let upper = empirical_prime_frequencies(&a, sieve, 2 * p, 3 * p, None).map_err(|e| e.to_string())?;
    let (fl, fu) = (lower.frequencies["b"], upper.frequencies["b"]);
    let msg = format!("b-frequency {fl:.4} on [3^12, 2·3^12) vs {fu:.4} on [2·3^12, 3^13)");
    if (fl - fu).abs() >= 0.3 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn mobius(sieve: &SieveTables) -> Outcome {
    const SIZES: [u64; 3] = [100_000, 1_000_000, 10_000_000];
    let mut worst: f64 = 0.0;
    let mut series = 0;
    let mut bad = Vec::new();
    for name in ["rudin-shapiro", "five-state"] {
        let a = catalog::load(name);
        for shift in [0, 1, 17] {
            let runs = SIZES
                .iter()
                .map(|&n| mobius_correlation(&a, sieve, n, shift))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| e.to_string())?;
            for label in runs[0].per_label.keys() {
                let vals: Vec<f64> = runs.iter().map(|r| r.per_label[label].centered.abs()).collect();
                worst = worst.max(vals[2]);
                series += 1;
                if vals[2] > 0.02 || vals.windows(2).any(|w| w[1] > 1.2 * w[0]) {
                    let shown: Vec<String> = vals.iter().map(|v| format!("{v:.2e}")).collect();
                    bad.push(format!("{name} r={shift} b={label} |c| = [{}]", shown.join(", ")));
                }
            }
        }
    }
    let summary = format!("{series} series, largest |centered| at N=1e7 is {worst:.2e}");
    if bad.is_empty() {
        Ok(format!("{summary}; magnitudes non-increasing within 20%"))
    } else {
        Err(format!("{summary}; {} series break the bounds: {}", bad.len(), bad.join("; ")))
    }
}

fn fourier_decay() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut lines = Vec::new();
    for (name, rep) in [("thue-morse", RepresentationSpec::Sign), ("rudin-shapiro", RepresentationSpec::Regular)] {
        let an = analyze_dfao(&catalog::load(name), &cfg()).map_err(|e| e.to_string())?;
        let ctx = GroupContext::new(&an).map_err(|e| e.to_string())?;
        let mut err: f64 = 0.0;
        for lambda in 0..=12 {
            for _ in 0..3 {
                let t: f64 = rng.gen();
                let q = rng.gen_range(0..an.transducer.num_states());
                let a = psi_recurrence(&ctx, &rep, q, lambda, 0, t, 0).map_err(|e| e.to_string())?;
                let b = psi_direct(&ctx, &rep, q, lambda, 0, t, 0).map_err(|e| e.to_string())?;
                err = a.data.iter().zip(&b.data).map(|(x, y)| (x - y).norm()).fold(err, f64::max);
            }
        }
        let fit = decay_fit(&ctx, &rep, 8..=20, 4096, 0, 0).map_err(|e| e.to_string())?;
        let line = format!("{name} {rep}: eta_hat {:.4} r² {:.4} recurrence err {err:.1e}", fit.eta_hat, fit.r2);
        if fit.eta_hat <= 0.05 || fit.r2 <= 0.9 || err > 1e-10 {
            return Err(line);
        }
        lines.push(line);
    }
    Ok(lines.join("; "))
}

/// Fit `C` on `λ ≤ 6` and check that it bounds every count up to `λ = 10`.
fn carry() -> Outcome {
    const FIT_MAX: u32 = 6;
    let mut lines = Vec::new();
    let mut failed = Vec::new();
    for name in catalog::names() {
        let a = catalog::load(name);
        if a.k() != 2 {
            continue;
        }
        for (label, piece) in pieces(&a) {
            let t = Transducer::induced(&piece, cfg().subset_cap).map_err(|e| e.to_string())?;
            let l0 = compute_l0(&t, cfg().subset_cap).map_err(|e| e.to_string())?;
            let eta = carry_exponent(2, l0);
            let mut counts: Vec<CarryCount> = Vec::new();
            for lambda in 1..=10 {
                for alpha in 0..=4 {
                    for rho in 0..lambda {
                        counts.push(
                            carry_violation_count(&t, lambda, alpha, rho, 0, cfg().group_cap)
                                .map_err(|e| e.to_string())?,
                        );
                    }
                }
            }
            let train: Vec<CarryCount> = counts.iter().copied().filter(|c| c.lambda <= FIT_MAX).collect();
            let c_fit = fit_carry_constant(&train, 2, eta);
            let c_all = fit_carry_constant(&counts, 2, eta);
            let line = format!("{name}{label} η={eta:.4} C(λ≤6)={c_fit:.3} C(λ≤10)={c_all:.3}");
            if c_all > c_fit * (1.0 + 1e-12) {
                failed.push(line.clone());
            }
            lines.push(line);
        }
    }
    if failed.is_empty() {
        Ok(lines.join("; "))
    } else {
        Err(format!("held-out λ exceed the fitted constant: {}", failed.join("; ")))
    }
}

fn kloosterman_mobius() -> Outcome {
    let sieve = SieveTables::new(50).map_err(|e| e.to_string())?;
    for c in 1..=50u64 {
        let s = kloosterman(1, 0, c).map_err(|e| e.to_string())?;
        let rounded = ((s.re * 1e10).round() / 1e10, (s.im * 1e10).round() / 1e10);
        if rounded != (sieve.mu(c) as f64, 0.0) {
            return Err(format!("S(1,0;{c}) = {s}, μ = {}", sieve.mu(c)));
        }
    }
    Ok("S(1,0;c) = μ(c) for c ≤ 50".into())
}

fn main() -> ExitCode {
    let sieve = SieveTables::new(10_000_000 + 17).expect("sieve");
    let criteria: Vec<Criterion> = vec![
        ("golden transducers", Duration::from_secs(1), Box::new(golden_transducers)),
        ("reconstruction oracle", Duration::from_secs(5), Box::new(reconstruction)),
        ("structure invariants", Duration::from_secs(5), Box::new(structure_invariants)),
        ("brute-force cosets", Duration::from_secs(60), Box::new(brute_force_cosets)),
        ("prime frequencies", Duration::from_secs(120), Box::new(|| prime_frequencies(&sieve))),
        ("non-existence along primes", Duration::from_secs(60), Box::new(|| nonexistence(&sieve))),
        ("Möbius correlations", Duration::from_secs(120), Box::new(|| mobius(&sieve))),
        ("Fourier decay", Duration::from_secs(120), Box::new(fourier_decay)),
        ("carry property", Duration::from_secs(60), Box::new(carry)),
        ("Kloosterman at b = 0", Duration::from_secs(1), Box::new(kloosterman_mobius)),
    ];
    let mut failures = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let (status, detail) = match &outcome {
            Ok(m) if took <= *budget => ("PASS", m.clone()),
            Ok(m) => ("FAIL", format!("{m} (took {took:.2?}, budget {budget:?})")),
            Err(m) => ("FAIL", m.clone()),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!("{status} criterion {}: {name} [{took:.2?}] {detail}", i + 1);
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
