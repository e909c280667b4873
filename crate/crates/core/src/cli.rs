//! Command-line front end. The binary only calls [`run`].

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::automaton::{find_sync_word, Dfao};
use crate::catalog;
use crate::group_structure::{analyze_dfao, reduce_to_special, verify_structure, StructureConfig};
use crate::harmonic::{
    carry_exponent, carry_violation_count, decay_fit, prime_fourier_residual, psi_direct, psi_recurrence,
    GroupContext, RepresentationSpec,
};
use crate::numbertheory::{
    empirical_prime_frequencies, kloosterman, mobius_correlation, predict_prime_frequencies,
    windowed_mobius_sum, SieveTables,
};
use crate::transducer::Transducer;

const PREFIX_LEN: usize = 60;
const ORACLE_LIMIT: u64 = 10_000;

#[derive(Parser, Debug)]
#[command(name = "autoseq", version, about = "Automatic sequences through their induced transducers")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Directory for JSON and CSV reports.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Print the JSON report instead of a table.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for randomized spot checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug, Clone)]
struct Source {
    /// Automaton JSON file or the name of a bundled automaton.
    automaton: String,
    /// Restrict to a final component, given by index or by one of its states.
    #[arg(long)]
    component: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Basic facts about an automaton and a prefix of its sequence.
    Inspect(Source),
    /// Build the induced transducer and check it.
    Transduce(Source),
    /// Group structure of the induced transducer.
    Structure {
        #[command(flatten)]
        src: Source,
        /// Word length for the brute-force cross-check.
        #[arg(long, default_value_t = 10)]
        depth: usize,
    },
    /// Reduce to an automaton with d = k₀ = 1 on every final component.
    Reduce(Source),
    /// Predicted label frequencies along the primes.
    #[command(alias = "predict")]
    PredictPrimes(Source),
    /// Label frequencies over primes, compared with the prediction.
    #[command(alias = "verify")]
    VerifyPrimes {
        #[command(flatten)]
        src: Source,
        #[arg(long, default_value_t = 10_000_000)]
        limit: u64,
        #[arg(long, default_value_t = 0)]
        lo: u64,
        #[arg(long = "mod")]
        modulus: Option<u64>,
        #[arg(long, requires = "modulus")]
        res: Option<u64>,
        /// Allowed gap between prediction and count.
        #[arg(long, default_value_t = 5e-3)]
        tol: f64,
    },
    /// Correlations of the shifted sequence with the Möbius function.
    Mobius {
        #[command(flatten)]
        src: Source,
        #[arg(long, default_value_t = 1_000_000)]
        limit: u64,
        #[arg(long, value_delimiter = ',', default_value = "0,1,17")]
        shifts: Vec<u64>,
    },
    /// Möbius sum over a digit window and a residue class of the weight.
    WindowedMobius {
        #[command(flatten)]
        src: Source,
        #[arg(long, default_value_t = 1_000_000)]
        limit: u64,
        #[arg(long, default_value_t = 0)]
        lambda1: u32,
        #[arg(long, default_value_t = 0)]
        lambda2: u32,
        #[arg(long, default_value_t = 0)]
        b: u64,
        #[arg(long, default_value_t = 0)]
        m: u64,
        #[arg(long, default_value_t = 0)]
        r: u64,
    },
    /// Decay of digit exponential sums of the weights.
    Fourier {
        #[command(flatten)]
        src: Source,
        /// `dl:ℓ`, `char` (the sign character) or `regular`.
        #[arg(long, default_value = "regular")]
        rep: String,
        #[arg(long, default_value = "8..20")]
        lambda: String,
        #[arg(long, default_value_t = 4096)]
        grid: usize,
        #[arg(long, default_value_t = 0)]
        alpha: u32,
        #[arg(long, default_value_t = 0)]
        r: u64,
    },
    /// Exponential sums of the weights over primes below k^ν.
    PrimeFourier {
        #[command(flatten)]
        src: Source,
        #[arg(long, default_value = "10..20")]
        nu: String,
        #[arg(long, default_value_t = 1024)]
        grid: usize,
    },
    /// Carry violations against the truncated weight function.
    Carry {
        #[command(flatten)]
        src: Source,
        #[arg(long, default_value_t = 8)]
        lambda: u32,
        #[arg(long, default_value_t = 2)]
        alpha: u32,
        /// Omit to sweep every ρ < λ.
        #[arg(long)]
        rho: Option<u32>,
        #[arg(long, default_value_t = 0)]
        r: u64,
    },
    /// Kloosterman sum S(a, b; c).
    Kloosterman {
        #[arg(long)]
        a: i64,
        #[arg(long, default_value_t = 0)]
        b: i64,
        #[arg(long)]
        c: u64,
    },
    /// List the bundled automata.
    List,
}

/// Parse arguments and run; returns the process exit code.
pub fn run<I, T>(args: I) -> anyhow::Result<i32>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::parse_from(args);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.unwrap_or(0))
        .build()
        .context("building thread pool")?;
    pool.install(|| dispatch(&cli))
}

/// Load a file path, or a bundled automaton when no such file exists.
pub fn load_automaton(spec: &str) -> anyhow::Result<Dfao> {
    let path = Path::new(spec);
    if path.exists() {
        let text = fs::read_to_string(path).with_context(|| format!("reading {spec}"))?;
        return Dfao::from_json(&text).with_context(|| format!("parsing {spec}"));
    }
    match catalog::source(spec) {
        Some(text) => Ok(Dfao::from_json(text)?),
        None => bail!(
            "{spec} is neither a file nor a bundled automaton ({})",
            catalog::names().collect::<Vec<_>>().join(", ")
        ),
    }
}

fn load_source(src: &Source) -> anyhow::Result<Dfao> {
    let a = load_automaton(&src.automaton)?;
    let Some(sel) = &src.component else {
        return Ok(a);
    };
    let finals = a.reachable_final_components();
    let comp = match sel.parse::<usize>() {
        Ok(i) => finals.get(i).with_context(|| format!("only {} final components", finals.len()))?,
        Err(_) => {
            let q = a.state_index(sel).with_context(|| format!("no state named {sel}"))?;
            finals
                .iter()
                .find(|c| c.contains(&q))
                .with_context(|| format!("{sel} is not in a final component"))?
        }
    };
    Ok(a.restrict(comp)?)
}

struct Reporter<'a> {
    cli: &'a Cli,
    name: &'static str,
}

impl Reporter<'_> {
    fn emit<T: Serialize>(&self, report: &T, table: impl FnOnce()) -> anyhow::Result<()> {
        let text = serde_json::to_string_pretty(report)?;
        if self.cli.json {
            println!("{text}");
        } else {
            table();
        }
        if let Some(dir) = &self.cli.out {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            fs::write(dir.join(format!("{}.json", self.name)), text + "\n")?;
        }
        Ok(())
    }

    fn csv<R: Serialize>(&self, suffix: &str, rows: &[R]) -> anyhow::Result<()> {
        let Some(dir) = &self.cli.out else {
            return Ok(());
        };
        fs::create_dir_all(dir)?;
        let mut w = csv::Writer::from_path(dir.join(format!("{}{suffix}.csv", self.name)))?;
        for r in rows {
            w.serialize(r)?;
        }
        w.flush()?;
        Ok(())
    }
}

fn parse_range(s: &str) -> anyhow::Result<(u32, u32)> {
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a.parse()?, b.trim_start_matches('=').parse()?),
        None => {
            let v = s.parse()?;
            (v, v)
        }
    };
    if a > b {
        bail!("empty range {s}");
    }
    Ok((a, b))
}

fn sieve_for(limit: u64) -> anyhow::Result<SieveTables> {
    Ok(SieveTables::new(limit.max(2))?)
}

fn status(ok: bool) -> i32 {
    if ok {
        0
    } else {
        1
    }
}

fn dispatch(cli: &Cli) -> anyhow::Result<i32> {
    let cfg = StructureConfig::default();
    let rep = |name| Reporter { cli, name };
    match &cli.command {
        Command::List => {
            for n in catalog::names() {
                let a = catalog::load(n);
                println!("{n:<16} k={} states={}", a.k(), a.num_states());
            }
            Ok(0)
        }
        Command::Inspect(src) => {
            let a = load_source(src)?;
            let scc = a.scc();
            let sync = find_sync_word(&a, cfg.subset_cap)?;
            let prefix: Vec<String> =
                (0..PREFIX_LEN as u64).map(|n| a.term(n).symbol.clone()).collect();
            let names = |c: &Vec<usize>| c.iter().map(|&q| a.state_name(q).to_string()).collect::<Vec<_>>();
            let report = json!({
                "k": a.k(),
                "states": a.state_names(),
                "initial": a.state_name(a.initial()),
                "components": scc.components.iter().map(names).collect::<Vec<_>>(),
                "final_components": scc.final_components().map(names).collect::<Vec<_>>(),
                "periods": scc.period,
                "strongly_connected": a.is_strongly_connected(),
                "sync_word": sync,
                "prefix": prefix,
            });
            rep("inspect").emit(&report, || {
                println!("base        {}", a.k());
                println!("states      {}", a.state_names().join(" "));
                println!("initial     {}", a.state_name(a.initial()));
                for (i, c) in scc.components.iter().enumerate() {
                    let tag = if scc.is_final[i] { " final" } else { "" };
                    println!("component   {{{}}} period {}{tag}", names(c).join(","), scc.period[i]);
                }
                match &sync {
                    Some(w) => println!("sync word   {w:?}"),
                    None => println!("sync word   none"),
                }
                let sep = if prefix.iter().all(|s| s.chars().count() == 1) { "" } else { " " };
                println!("prefix      {}", prefix.join(sep));
            })?;
            Ok(0)
        }
        Command::Transduce(src) => {
            let a = load_source(src)?;
            if src.component.is_none() && !a.is_strongly_connected() {
                bail!("automaton is not strongly connected; select a final component with --component");
            }
            let t = Transducer::induced(&a, cfg.subset_cap)?;
            let diag = t.verify_induced(&a, cfg.subset_cap);
            let mismatches: Vec<u64> = (0..ORACLE_LIMIT)
                .filter(|&n| {
                    let w = crate::automaton::digits_of(n, a.k());
                    t.reconstruct(&w) as usize != a.state_at(n)
                })
                .take(10)
                .collect();
            let ok = diag.all_passed() && mismatches.is_empty();
            let report = json!({
                "transducer": t.to_doc(Some(&a)),
                "checks": diag.checks,
                "reconstruction": { "limit": ORACLE_LIMIT, "mismatches": mismatches },
                "passed": ok,
            });
            rep("transduce").emit(&report, || {
                let doc = t.to_doc(Some(&a));
                let label = |q: usize| format!("({})", doc.states[q].join(","));
                println!("n0 = {}, {} states, initial {}", t.width(), t.num_states(), label(doc.initial));
                for q in 0..doc.states.len() {
                    let row: Vec<String> = (0..a.k())
                        .map(|d| format!("{}|{}", d, t.weight(q, d)))
                        .zip(&doc.transitions[q])
                        .map(|(l, &to)| format!("{l} -> {}", label(to as usize)))
                        .collect();
                    println!("  {:<24} {}", label(q), row.join("   "));
                }
                for c in &diag.checks {
                    println!("  [{}] property {} {}", if c.passed { "ok" } else { "FAIL" }, c.id, c.name);
                }
                println!(
                    "  reconstruction n < {ORACLE_LIMIT}: {} mismatches",
                    if mismatches.is_empty() { "no".to_string() } else { format!("{:?}", mismatches) }
                );
            })?;
            Ok(status(ok))
        }
        Command::Structure { src, depth } => {
            let a = load_source(src)?;
            let an = analyze_dfao(&a, &cfg)?;
            let check = verify_structure(&an, *depth);
            let r = &an.report;
            let report = json!({ "report": r, "check": check });
            rep("structure").emit(&report, || {
                let list = |v: &[crate::Perm]| v.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ");
                println!("d = {}, m0 = {}, |Δ| = {}", r.d, r.m0, r.delta_order);
                println!("G  = {{{}}}", list(&r.group));
                println!("g0 = {}", r.g0);
                for (l, c) in r.cosets.iter().enumerate() {
                    println!("  length ≡ {l}: {{{}}}", list(c));
                }
                println!("l0 = {}, K = {}, d' = {}, m0' = {}, k0 = {}", r.l0, r.modulus, r.d_prime, r.m0_prime, r.k0);
                println!("d'' = {:?}", r.d_dprime);
                println!("G0 = {{{}}}, g0' = {}", list(&r.group0), r.g0_prime);
                println!(
                    "brute force up to length {depth}: {}",
                    if check.passed() { "agrees".to_string() } else { format!("{} failures", check.failures.len()) }
                );
            })?;
            Ok(status(check.passed()))
        }
        Command::Reduce(src) => {
            let a = load_source(src)?;
            let red = reduce_to_special(&a, &cfg)?;
            if let Some(dir) = &cli.out {
                fs::create_dir_all(dir)?;
                fs::write(dir.join("reduced.json"), red.automaton.to_json() + "\n")?;
            }
            rep("reduce").emit(&red, || {
                println!("power {} (base {}), fresh initial state: {}", red.power, red.base, red.added_zero_loop_initial);
                for (before, after) in red.components.iter().zip(&red.reduced_components) {
                    println!(
                        "  {{{}}}: d={} k0={} d'={}  ->  d={} k0={}",
                        before.states.join(","),
                        before.d,
                        before.k0,
                        before.d_prime,
                        after.d,
                        after.k0
                    );
                }
            })?;
            Ok(status(red.is_special()))
        }
        Command::PredictPrimes(src) => {
            let a = load_source(src)?;
            let p = predict_prime_frequencies(&a, &cfg)?;
            rep("predict").emit(&p, || {
                println!("power {} (base {}), d' = {}", p.power, p.base, p.d_prime);
                for (g, f) in &p.group_weights {
                    println!("  f({g}) = {f}");
                }
                for (b, f) in &p.frequencies {
                    println!("  {b:<8} {f:.6}");
                }
            })?;
            Ok(0)
        }
        Command::VerifyPrimes { src, limit, lo, modulus, res, tol } => {
            let a = load_source(src)?;
            let sieve = sieve_for(*limit)?;
            let filter = modulus.map(|m| (m, res.unwrap_or(0)));
            let emp = empirical_prime_frequencies(&a, &sieve, *lo, *limit + 1, filter)?;
            let pred = if filter.is_none() { predict_prime_frequencies(&a, &cfg).ok() } else { None };
            let gaps: Vec<(String, f64)> = pred
                .iter()
                .flat_map(|p| p.frequencies.iter().map(|(b, f)| (b.clone(), (f - emp.frequencies[b]).abs())))
                .collect();
            let ok = gaps.iter().all(|(_, g)| *g <= *tol);
            let report = json!({
                "empirical": emp,
                "predicted": pred.as_ref().map(|p| &p.frequencies),
                "tolerance": tol,
                "passed": ok,
            });
            rep("verify").emit(&report, || {
                println!("{} primes in [{}, {}]", emp.prime_count, lo, limit);
                for (b, f) in &emp.frequencies {
                    match &pred {
                        Some(p) => println!("  {b:<8} {f:.6}  predicted {:.6}", p.frequencies[b]),
                        None => println!("  {b:<8} {f:.6}"),
                    }
                }
                if pred.is_none() {
                    println!("  no prediction (residue filter or hypotheses not met)");
                }
            })?;
            Ok(status(ok))
        }
        Command::Mobius { src, limit, shifts } => {
            let a = load_source(src)?;
            let sieve = sieve_for(*limit)?;
            let rows = shifts
                .iter()
                .map(|&r| mobius_correlation(&a, &sieve, *limit, r))
                .collect::<crate::Result<Vec<_>>>()?;
            #[derive(Serialize)]
            struct Row<'a> {
                shift: u64,
                label: &'a str,
                raw: f64,
                mean: f64,
                centered: f64,
            }
            let flat: Vec<Row> = rows
                .iter()
                .flat_map(|c| {
                    c.per_label.iter().map(|(b, v)| Row {
                        shift: c.shift,
                        label: b,
                        raw: v.raw,
                        mean: v.mean,
                        centered: v.centered,
                    })
                })
                .collect();
            rep("mobius").csv("", &flat)?;
            rep("mobius").emit(&rows, || {
                println!("N = {limit}, Mertens sum {}", rows.first().map_or(0, |c| c.mertens));
                println!("{:>6} {:<8} {:>14} {:>14}", "shift", "label", "raw", "centered");
                for r in &flat {
                    println!("{:>6} {:<8} {:>14.3e} {:>14.3e}", r.shift, r.label, r.raw, r.centered);
                }
            })?;
            Ok(0)
        }
        Command::WindowedMobius { src, limit, lambda1, lambda2, b, m, r } => {
            let a = load_source(src)?;
            let t = Transducer::induced(&a, cfg.subset_cap)?;
            let sieve = sieve_for(*limit)?;
            let w = windowed_mobius_sum(&t, &sieve, *limit, *lambda1, *lambda2, *b, *m, *r, cfg.group_cap)?;
            rep("windowed-mobius").emit(&w, || {
                println!("N = {}, ν = {}, norm {:.3e}", w.n, w.nu, w.norm);
            })?;
            Ok(0)
        }
        Command::Fourier { src, rep: spec, lambda, grid, alpha, r } => {
            let a = load_source(src)?;
            let ctx = GroupContext::new(&analyze_dfao(&a, &cfg)?)?;
            let spec: RepresentationSpec = spec.parse()?;
            let (lo, hi) = parse_range(lambda)?;
            let fit = decay_fit(&ctx, &spec, lo..=hi, *grid, *alpha, *r)?;
            // spot check of the recurrence against enumeration
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let k = ctx.transducer().k() as u64;
            let check_lambda = if k == 2 { 12 } else { 6 };
            let mut worst: f64 = 0.0;
            for _ in 0..5 {
                let t: f64 = rng.gen();
                let q = rng.gen_range(0..ctx.transducer().num_states());
                let x = psi_recurrence(&ctx, &spec, q, check_lambda, *alpha, t, *r)?;
                let y = psi_direct(&ctx, &spec, q, check_lambda, *alpha, t, *r)?;
                for (u, v) in x.data.iter().zip(&y.data) {
                    worst = worst.max((u - v).norm());
                }
            }
            let ok = worst < 1e-10;
            #[derive(Serialize)]
            struct Row {
                lambda: u32,
                sup_norm: f64,
                argmax_t: f64,
            }
            let rows: Vec<Row> = fit
                .lambdas
                .iter()
                .zip(&fit.sup_norms)
                .zip(&fit.argmax_t)
                .map(|((&lambda, &sup_norm), &argmax_t)| Row { lambda, sup_norm, argmax_t })
                .collect();
            rep("fourier").csv("", &rows)?;
            let report = json!({ "fit": fit, "recurrence_check": { "lambda": check_lambda, "max_error": worst } });
            rep("fourier").emit(&report, || {
                println!("representation {}, grid {}, α = {}, r = {}", fit.representation, grid, alpha, r);
                for row in &rows {
                    println!("  λ = {:>2}  sup {:.6e}  at t = {:.9}", row.lambda, row.sup_norm, row.argmax_t);
                }
                println!("η̂ = {:.4}, r² = {:.4} (fit over λ ≥ {})", fit.eta_hat, fit.r2, fit.fit_from);
                println!("recurrence vs enumeration at λ = {check_lambda}: {worst:.2e}");
            })?;
            Ok(status(ok))
        }
        Command::PrimeFourier { src, nu, grid } => {
            let a = load_source(src)?;
            let ctx = GroupContext::new(&analyze_dfao(&a, &cfg)?)?;
            let (lo, hi) = parse_range(nu)?;
            let k = ctx.transducer().k() as u64;
            let limit = k.checked_pow(hi).context("k^ν overflows")?;
            let sieve = sieve_for(limit)?;
            let nus: Vec<u32> = (lo..=hi).collect();
            let rows = prime_fourier_residual(&ctx, &sieve, &nus, *grid)?;
            rep("prime-fourier").csv("", &rows)?;
            rep("prime-fourier").emit(&rows, || {
                for r in &rows {
                    println!("  ν = {:>2}  primes {:>9}  sup {:.6e}  t=0 {:.6e}", r.nu, r.prime_count, r.sup_norm, r.at_zero);
                }
            })?;
            Ok(0)
        }
        Command::Carry { src, lambda, alpha, rho, r } => {
            let a = load_source(src)?;
            let t = Transducer::induced(&a, cfg.subset_cap)?;
            let l0 = crate::group_structure::compute_l0(&t, cfg.subset_cap)?;
            let eta = carry_exponent(a.k(), l0);
            let rhos: Vec<u32> = match rho {
                Some(p) => vec![*p],
                None => (0..*lambda).collect(),
            };
            let counts = rhos
                .iter()
                .map(|&p| carry_violation_count(&t, *lambda, *alpha, p, *r, cfg.group_cap))
                .collect::<crate::Result<Vec<_>>>()?;
            rep("carry").csv("", &counts)?;
            let report = json!({ "l0": l0, "eta": eta, "counts": counts });
            rep("carry").emit(&report, || {
                println!("l0 = {l0}, η = {eta:.4}");
                for c in &counts {
                    let scale = (a.k() as f64).powf(c.lambda as f64 - eta * c.rho as f64);
                    println!(
                        "  λ={} α={} ρ={}: {} violations, k^(λ−ηρ) = {:.1}",
                        c.lambda, c.alpha, c.rho, c.violations, scale
                    );
                }
            })?;
            Ok(0)
        }
        Command::Kloosterman { a, b, c } => {
            let s = kloosterman(*a, *b, *c)?;
            rep("kloosterman").emit(&json!({ "a": a, "b": b, "c": c, "re": s.re, "im": s.im }), || {
                println!("S({a}, {b}; {c}) = {:.12} {:+.12}i", s.re, s.im);
            })?;
            Ok(0)
        }
    }
}
