//! Group structure of a naturally induced transducer.
//!
//! Everything here is computed on the product graph whose nodes are pairs
//! `(q, g)` of a transducer state and an element of the group generated by
//! the outputs; reading digit `a` moves `(q, g)` to `(δ(q,a), g ∘ λ(q,a))`.
//! Walk lengths modulo the period `d` of that graph split the reachable
//! weights into cosets of `G`, and residues of `[w]_k` refine `G` further
//! into cosets of `G0`.

use std::collections::{BTreeSet, HashMap, VecDeque};

use num_integer::{gcd, lcm};
use serde::Serialize;

use crate::automaton::{scc_decompose, sync_lengths, Dfao, Word};
use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::perm::{GroupTable, Perm};
use crate::transducer::Transducer;

#[derive(Debug, Clone, Copy)]
pub struct StructureConfig {
    pub subset_cap: usize,
    pub group_cap: usize,
    /// Longest walk-length sequence explored before giving up.
    pub length_cap: usize,
    /// Largest residue product graph, in nodes.
    pub node_cap: usize,
}

impl Default for StructureConfig {
    fn default() -> Self {
        StructureConfig { subset_cap: 1 << 20, group_cap: 1_000_000, length_cap: 1 << 14, node_cap: 1 << 24 }
    }
}

pub struct ProductGraph<'a> {
    t: &'a Transducer,
    group: GroupTable,
    letter: Vec<u32>,
    slot: Vec<u32>,
    rmul: Vec<Vec<u32>>,
}

impl<'a> ProductGraph<'a> {
    pub fn new(t: &'a Transducer, group_cap: usize) -> Result<Self> {
        let group = GroupTable::generate(t.width(), t.weights(), group_cap)?;
        let letter: Vec<u32> =
            t.weights().iter().map(|p| group.position(p).unwrap() as u32).collect();
        let mut gens: Vec<u32> = letter.clone();
        gens.sort_unstable();
        gens.dedup();
        let slot = letter.iter().map(|l| gens.binary_search(l).unwrap() as u32).collect();
        let rmul = gens
            .iter()
            .map(|&h| {
                let h = group.get(h as usize);
                group
                    .elements()
                    .iter()
                    .map(|g| group.position(&g.compose(h)).unwrap() as u32)
                    .collect()
            })
            .collect();
        Ok(ProductGraph { t, group, letter, slot, rmul })
    }

    pub fn transducer(&self) -> &Transducer {
        self.t
    }
    /// The group generated by all outputs, with the identity at index 0.
    pub fn group(&self) -> &GroupTable {
        &self.group
    }
    pub fn node_count(&self) -> usize {
        self.t.num_states() * self.group.len()
    }
    #[inline]
    pub fn node(&self, q: usize, g: usize) -> usize {
        q * self.group.len() + g
    }
    #[inline]
    pub fn split(&self, v: usize) -> (usize, usize) {
        (v / self.group.len(), v % self.group.len())
    }
    /// Group index of `λ(q, a)`.
    pub fn letter(&self, q: usize, a: u32) -> usize {
        self.letter[q * self.t.k() as usize + a as usize] as usize
    }
    #[inline]
    pub fn succ(&self, v: usize, a: u32) -> usize {
        let (q, g) = self.split(v);
        let i = q * self.t.k() as usize + a as usize;
        self.node(self.t.step(q, a), self.rmul[self.slot[i] as usize][g] as usize)
    }

    /// Breadth-first levels from `start`; `u32::MAX` marks unreached nodes.
    pub fn levels(&self, start: usize) -> Vec<u32> {
        let mut level = vec![u32::MAX; self.node_count()];
        level[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for a in 0..self.t.k() {
                let w = self.succ(v, a);
                if level[w] == u32::MAX {
                    level[w] = level[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        level
    }

    /// gcd of closed-walk lengths in the component reached from `start`.
    pub fn period(&self, start: usize) -> u64 {
        let level = self.levels(start);
        let mut g = 0u64;
        for v in (0..self.node_count()).filter(|&v| level[v] != u32::MAX) {
            for a in 0..self.t.k() {
                let w = self.succ(v, a);
                g = gcd(g, (level[v] as u64 + 1).abs_diff(level[w] as u64));
            }
        }
        g
    }

    /// Walk length modulo `d` of every node reached from `(q, id)`.
    pub fn classes(&self, q: usize, d: u64) -> Vec<u32> {
        self.levels(self.node(q, 0))
            .into_iter()
            .map(|l| if l == u32::MAX { l } else { (l as u64 % d) as u32 })
            .collect()
    }

    /// `G_{q q̄}(ℓ)` for every target `q̄` and `ℓ < d`, as sorted lists.
    pub fn weight_classes(&self, q: usize, d: u64) -> Vec<Vec<Vec<Perm>>> {
        let classes = self.classes(q, d);
        let n = self.t.num_states();
        let mut out = vec![vec![Vec::new(); d as usize]; n];
        for (v, &c) in classes.iter().enumerate() {
            if c != u32::MAX {
                let (target, g) = self.split(v);
                out[target][c as usize].push(self.group.get(g).clone());
            }
        }
        out
    }
}

/// Period `d` of the product graph: the gcd of lengths of closed walks with
/// identity weight.
pub fn compute_d(pg: &ProductGraph) -> u64 {
    pg.period(pg.node(pg.transducer().initial(), 0))
}

/// Smallest `m` such that for every start `q` and every `n ≥ m`, the walks of
/// length `n·d` from `q` realize every weight their coset allows.
pub fn compute_m0(pg: &ProductGraph, d: u64, cap: usize) -> Result<usize> {
    let t = pg.transducer();
    let mut worst = 0;
    for q in 0..t.num_states() {
        let classes = pg.classes(q, d);
        let mut target = BitSet::new(pg.node_count());
        for (v, &c) in classes.iter().enumerate() {
            if c == 0 {
                target.insert(v);
            }
        }
        let mut current = BitSet::new(pg.node_count());
        current.insert(pg.node(q, 0));
        let mut n = 0;
        while current != target {
            if n >= cap {
                return Err(Error::NonStabilizing(cap));
            }
            for _ in 0..d {
                let mut next = BitSet::new(pg.node_count());
                for v in current.iter() {
                    for a in 0..t.k() {
                        next.insert(pg.succ(v, a));
                    }
                }
                current = next;
            }
            n += 1;
        }
        worst = worst.max(n);
    }
    Ok(worst)
}

/// `G`, the weights of walks from `q₀` back to `q₀` of length divisible by
/// `d`, and `g₀`, the least element of the length-one class.
pub fn compute_group(pg: &ProductGraph, d: u64) -> (GroupTable, Perm) {
    let q0 = pg.transducer().initial();
    let classes = pg.weight_classes(q0, d);
    let group = GroupTable::from_trusted(pg.group().degree(), classes[q0][0].clone());
    let g0 = classes[q0][(1 % d) as usize].iter().min().expect("nonempty coset").clone();
    (group, g0)
}

/// Reorder tuples so that the identity lies in `G_{q₀ q}(0)` for every `q`.
pub fn normalize_id_cosets(t: &Transducer, pg: &ProductGraph, d: u64) -> Result<(Transducer, Vec<Perm>)> {
    let classes = pg.classes(t.initial(), d);
    let sigmas: Vec<Perm> = (0..t.num_states())
        .map(|q| {
            (0..pg.group().len())
                .find(|&g| classes[pg.node(q, g)] == 0)
                .map(|g| pg.group().get(g).clone())
                .ok_or_else(|| Error::Hypothesis("transducer is not strongly connected".into()))
        })
        .collect::<Result<_>>()?;
    Ok((t.reorder(&sigmas)?, sigmas))
}

/// Largest over target states of the shortest word sending every state there.
pub fn compute_l0(t: &Transducer, cap: usize) -> Result<usize> {
    sync_lengths(t, cap)?
        .into_iter()
        .map(|l| l.ok_or_else(|| Error::Hypothesis("transducer is not synchronizing".into())))
        .try_fold(0, |m, l| l.map(|l| m.max(l)))
}

/// Split `d` as `d′·d″` where `d″` collects the primes dividing `k`.
pub fn split_coprime(d: u64, k: u64) -> (u64, u64) {
    let (mut coprime, mut smooth) = (d, 1);
    loop {
        let g = gcd(coprime, k);
        if g == 1 {
            return (coprime, smooth);
        }
        coprime /= g;
        smooth *= g;
    }
}

#[derive(Debug, Clone)]
pub struct Arithmetic {
    pub modulus: u64,
    pub d_pair: Vec<Vec<u64>>,
    pub d_prime: u64,
    pub d_dprime: Vec<Vec<u64>>,
    pub m0_prime: usize,
    pub k0: u64,
    /// `s₀` on the elements of `G`, in the order of `G`.
    pub s0: Vec<u64>,
}

/// The sets of `(state, weight, [w] mod K)` reached by walks of length `L·d`
/// from a fixed start, up to the point where the sequence of sets repeats.
struct ResidueOrbit {
    sets: Vec<BitSet>,
    cycle_start: usize,
}

impl ResidueOrbit {
    fn at(&self, l: usize) -> &BitSet {
        if l < self.sets.len() {
            &self.sets[l]
        } else {
            let per = self.sets.len() - self.cycle_start;
            &self.sets[self.cycle_start + (l - self.cycle_start) % per]
        }
    }
}

fn residue_orbit(pg: &ProductGraph, q: usize, d: u64, modulus: u64, cap: usize) -> Result<ResidueOrbit> {
    let t = pg.transducer();
    let k = t.k() as u64;
    let nodes = pg.node_count() * modulus as usize;
    let mut current = BitSet::new(nodes);
    current.insert(pg.node(q, 0) * modulus as usize);
    let mut seen: HashMap<BitSet, usize> = HashMap::new();
    let mut sets = Vec::new();
    loop {
        if let Some(&start) = seen.get(&current) {
            return Ok(ResidueOrbit { sets, cycle_start: start });
        }
        if sets.len() >= cap {
            return Err(Error::NonStabilizing(cap));
        }
        seen.insert(current.clone(), sets.len());
        sets.push(current.clone());
        for _ in 0..d {
            let mut next = BitSet::new(nodes);
            for v in current.iter() {
                let (pv, r) = (v / modulus as usize, v as u64 % modulus);
                for a in 0..t.k() {
                    let r2 = (r * k + a as u64) % modulus;
                    next.insert(pg.succ(pv, a) * modulus as usize + r2 as usize);
                }
            }
            current = next;
        }
    }
}

/// For each product node, the gcd with `K` of all residue differences, or
/// `None` when the node is not reached.
fn residue_gcds(set: &BitSet, node_count: usize, modulus: u64) -> Vec<Option<u64>> {
    let mut out: Vec<Option<u64>> = vec![None; node_count];
    let mut first = vec![0u64; node_count];
    for v in set.iter() {
        let (pv, r) = (v / modulus as usize, v as u64 % modulus);
        match out[pv] {
            None => {
                out[pv] = Some(0);
                first[pv] = r;
            }
            Some(g) => out[pv] = Some(gcd(g, r - first[pv])),
        }
    }
    out.into_iter().map(|g| g.map(|g| gcd(g, modulus))).collect()
}

fn residues_mod(set: &BitSet, pg: &ProductGraph, q: usize, modulus: u64, m: u64) -> Vec<Option<u64>> {
    let mut out = vec![None; pg.group().len()];
    for v in set.iter() {
        let (pv, r) = (v / modulus as usize, v as u64 % modulus);
        let (state, g) = pg.split(pv);
        if state == q {
            out[g] = Some(r % m);
        }
    }
    out
}

/// Residue invariants of a transducer normalized by [`normalize_id_cosets`].
pub fn compute_arithmetic(
    pg: &ProductGraph,
    d: u64,
    l0: usize,
    group: &GroupTable,
    cfg: &StructureConfig,
) -> Result<Arithmetic> {
    let t = pg.transducer();
    let k = t.k() as u64;
    let modulus = k
        .checked_pow(l0 as u32)
        .and_then(|a| k.checked_pow(d as u32).and_then(|b| a.checked_mul(b - 1)))
        .filter(|&m| (m as u128) * (pg.node_count() as u128) <= cfg.node_cap as u128)
        .ok_or(Error::CapExceeded { what: "residue product graph", cap: cfg.node_cap as u64 })?;
    let n = t.num_states();
    let q0 = t.initial();
    let mut d_pair = vec![vec![0u64; n]; n];
    let mut m0_prime = 0;
    let mut q0_orbit = None;
    for q in 0..n {
        let orbit = residue_orbit(pg, q, d, modulus, cfg.length_cap)?;
        let summaries: Vec<Vec<Option<u64>>> = orbit
            .sets
            .iter()
            .map(|s| residue_gcds(s, pg.node_count(), modulus))
            .collect();
        let limit = &summaries[orbit.cycle_start];
        if summaries[orbit.cycle_start..].iter().any(|s| s != limit) {
            return Err(Error::NonStabilizing(orbit.sets.len()));
        }
        for target in 0..n {
            let values: BTreeSet<u64> = (0..pg.group().len())
                .filter_map(|g| limit[pg.node(target, g)])
                .collect();
            let id_value = limit[pg.node(target, 0)].ok_or_else(|| {
                Error::Hypothesis("identity weight missing from a coset; normalize first".into())
            })?;
            if values.len() != 1 {
                return Err(Error::Hypothesis("residue gcd depends on the weight".into()));
            }
            d_pair[q][target] = id_value;
        }
        let stable_from = (0..orbit.sets.len())
            .rev()
            .take_while(|&l| &summaries[l] == limit)
            .last()
            .unwrap_or(orbit.sets.len());
        m0_prime = m0_prime.max(stable_from);
        if q == q0 {
            q0_orbit = Some(orbit);
        }
    }

    let (d_prime, _) = split_coprime(d_pair[q0][q0], k);
    let mut d_dprime = vec![vec![0u64; n]; n];
    for q in 0..n {
        for r in 0..n {
            let (c, s) = split_coprime(d_pair[q][r], k);
            if c != d_prime {
                return Err(Error::Hypothesis("coprime residue part differs between state pairs".into()));
            }
            d_dprime[q][r] = s;
        }
    }

    let orbit = q0_orbit.expect("initial state visited");
    let s_at = |l: usize| residues_mod(orbit.at(l), pg, q0, modulus, d_prime);
    let step = (s_at(m0_prime + 1)[0].unwrap() + d_prime - s_at(m0_prime)[0].unwrap()) % d_prime;
    let k0 = d_prime / gcd(step, d_prime);
    let base_len = m0_prime.max(1).div_ceil(k0 as usize) * k0 as usize;
    let at_base = s_at(base_len);
    let s0 = group
        .elements()
        .iter()
        .map(|g| {
            at_base[pg.group().position(g).unwrap()]
                .ok_or_else(|| Error::Hypothesis("element of G not realized at a stable length".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Arithmetic { modulus, d_pair, d_prime, d_dprime, m0_prime, k0, s0 })
}

/// Reorder tuples so that long walks from `q₀` of length divisible by
/// `d·k₀` with `[w] ≡ 0 (mod d′)` reach each state with identity weight.
pub fn normalize_residues(
    t: &Transducer,
    pg: &ProductGraph,
    d: u64,
    k0: u64,
    d_prime: u64,
) -> Result<(Transducer, Vec<Perm>)> {
    let len_mod = (d * k0) as usize;
    let dp = d_prime as usize;
    let k = t.k() as usize;
    let width = len_mod * dp;
    let mut seen = vec![false; pg.node_count() * width];
    let start = pg.node(t.initial(), 0) * width;
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        let (pv, rest) = (v / width, v % width);
        let (l, r) = (rest / dp, rest % dp);
        for a in 0..k {
            let w = pg.succ(pv, a as u32) * width + ((l + 1) % len_mod) * dp + (r * k + a) % dp;
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    let sigmas: Vec<Perm> = (0..t.num_states())
        .map(|q| {
            (0..pg.group().len())
                .find(|&g| seen[pg.node(q, g) * width])
                .map(|g| pg.group().get(g).clone())
                .ok_or_else(|| Error::Hypothesis("state unreachable at residue zero".into()))
        })
        .collect::<Result<_>>()?;
    Ok((t.reorder(&sigmas)?, sigmas))
}

#[derive(Debug, Clone, Serialize)]
pub struct StructureReport {
    pub d: u64,
    pub m0: usize,
    pub delta_order: usize,
    #[serde(rename = "G")]
    pub group: Vec<Perm>,
    pub g0: Perm,
    /// `g₀^ℓ ∘ G` for `ℓ < d`.
    pub cosets: Vec<Vec<Perm>>,
    pub l0: usize,
    pub modulus: u64,
    pub d_pair: Vec<Vec<u64>>,
    pub d_prime: u64,
    pub d_dprime: Vec<Vec<u64>>,
    pub m0_prime: usize,
    pub k0: u64,
    pub s0: Vec<u64>,
    #[serde(rename = "G0")]
    pub group0: Vec<Perm>,
    pub g0_prime: Perm,
    /// `g₀′^ℓ ∘ G₀` for `ℓ < d′`.
    pub residue_cosets: Vec<Vec<Perm>>,
    /// Per-state reordering applied to reach the normalized transducer.
    pub normalization: Vec<Perm>,
}

impl StructureReport {
    pub fn s0_of(&self, g: &Perm) -> Option<u64> {
        self.group.binary_search(g).ok().map(|i| self.s0[i])
    }
}

/// A normalized transducer together with its structure report.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub transducer: Transducer,
    pub report: StructureReport,
}

impl Analysis {
    pub fn group_table(&self) -> GroupTable {
        GroupTable::from_trusted(self.transducer.width(), self.report.group.clone())
    }
}

/// Full structure analysis of a strongly connected synchronizing transducer.
pub fn analyze(t: &Transducer, cfg: &StructureConfig) -> Result<Analysis> {
    if scc_decompose(t).components.len() != 1 {
        return Err(Error::Hypothesis("transducer is not strongly connected".into()));
    }
    let pg = ProductGraph::new(t, cfg.group_cap)?;
    let d = compute_d(&pg);
    let (t1, sigma1) = normalize_id_cosets(t, &pg, d)?;
    let pg1 = ProductGraph::new(&t1, cfg.group_cap)?;
    let (group, g0) = compute_group(&pg1, d);
    let m0 = compute_m0(&pg1, d, cfg.length_cap)?;
    let l0 = compute_l0(&t1, cfg.subset_cap)?;
    let arith = compute_arithmetic(&pg1, d, l0, &group, cfg)?;
    let (t2, sigma2) = normalize_residues(&t1, &pg1, d, arith.k0, arith.d_prime)?;

    let cosets = (0..d).map(|l| GroupTable::left_coset(&g0.pow(l), group.elements())).collect();
    let group0: Vec<Perm> = group
        .elements()
        .iter()
        .zip(&arith.s0)
        .filter(|(_, &s)| s == 0)
        .map(|(g, _)| g.clone())
        .collect();
    let g0_prime = group
        .elements()
        .iter()
        .zip(&arith.s0)
        .filter(|(_, &s)| s == 1 % arith.d_prime)
        .map(|(g, _)| g.clone())
        .min()
        .expect("s0 is onto");
    let residue_cosets =
        (0..arith.d_prime).map(|l| GroupTable::left_coset(&g0_prime.pow(l), &group0)).collect();
    let normalization = sigma2.iter().zip(&sigma1).map(|(b, a)| b.compose(a)).collect();
    let report = StructureReport {
        d,
        m0,
        delta_order: pg.group().len(),
        group: group.elements().to_vec(),
        g0,
        cosets,
        l0,
        modulus: arith.modulus,
        d_pair: arith.d_pair,
        d_prime: arith.d_prime,
        d_dprime: arith.d_dprime,
        m0_prime: arith.m0_prime,
        k0: arith.k0,
        s0: arith.s0,
        group0,
        g0_prime,
        residue_cosets,
        normalization,
    };
    Ok(Analysis { transducer: t2, report })
}

/// Build the induced transducer of `a` and analyze it.
pub fn analyze_dfao(a: &Dfao, cfg: &StructureConfig) -> Result<Analysis> {
    analyze(&Transducer::induced(a, cfg.subset_cap)?, cfg)
}

/// Shortest word `v` with `δ(q, w v) = q` and `T(q, w v) = id`.
pub fn inverse_path(pg: &ProductGraph, q: usize, w: &[u32]) -> Option<Word> {
    let t = pg.transducer();
    let (end, weight) = t.run(q, w);
    let start = pg.node(end, pg.group().position(&weight)?);
    let goal = pg.node(q, 0);
    let mut parent: HashMap<usize, (usize, u32)> = HashMap::new();
    let mut queue = VecDeque::from([start]);
    let mut found = start == goal;
    parent.insert(start, (start, 0));
    while let Some(v) = queue.pop_front() {
        if found {
            break;
        }
        for a in 0..t.k() {
            let x = pg.succ(v, a);
            if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(x) {
                e.insert((v, a));
                if x == goal {
                    found = true;
                    break;
                }
                queue.push_back(x);
            }
        }
    }
    if !found {
        return None;
    }
    let mut out = Vec::new();
    let mut v = goal;
    while v != start {
        let (p, a) = parent[&v];
        out.push(a);
        v = p;
    }
    out.reverse();
    Some(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct StructureCheck {
    pub lengths_checked: Vec<usize>,
    pub residue_lengths_checked: Vec<usize>,
    pub failures: Vec<String>,
}

impl StructureCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && !self.lengths_checked.is_empty() && !self.residue_lengths_checked.is_empty()
    }
}

/// Enumerate every word up to `depth` digits from every state and compare
/// the weights seen with the coset families in the report.
pub fn verify_structure(an: &Analysis, depth: usize) -> StructureCheck {
    let t = &an.transducer;
    let r = &an.report;
    let n = t.num_states();
    let k = t.k() as u64;
    let dp = r.d_prime;
    let mut failures = Vec::new();
    let lengths: Vec<usize> = (0..=depth).filter(|&l| l as u64 >= r.m0 as u64 * r.d).collect();
    let stable = r.d as usize * r.m0.max(r.m0_prime);
    let residue_lengths: Vec<usize> = (stable..=depth)
        .filter(|&l| (l as u64).is_multiple_of(r.d * r.k0))
        .collect();
    for q in 0..n {
        // seen[(target, len, residue)] = weights
        let mut seen: HashMap<(usize, usize, u64), BTreeSet<Perm>> = HashMap::new();
        let mut stack = vec![(q, Perm::identity(t.width()), 0u64, 0usize)];
        while let Some((state, weight, res, len)) = stack.pop() {
            if len < depth {
                for a in 0..t.k() {
                    let w = weight.compose(t.weight(state, a));
                    stack.push((t.step(state, a), w, (res * k + a as u64) % dp, len + 1));
                }
            }
            seen.entry((state, len, res)).or_default().insert(weight);
        }
        for &len in &lengths {
            let expected: BTreeSet<Perm> = r.cosets[len % r.d as usize].iter().cloned().collect();
            for target in 0..n {
                let got: BTreeSet<Perm> = (0..dp)
                    .filter_map(|res| seen.get(&(target, len, res)))
                    .flatten()
                    .cloned()
                    .collect();
                if got != expected {
                    failures.push(format!("weights {q}->{target} at length {len} differ from the coset"));
                }
            }
        }
        for &len in &residue_lengths {
            for target in 0..n {
                for res in 0..dp {
                    let expected: BTreeSet<Perm> = r.residue_cosets[res as usize].iter().cloned().collect();
                    let got = seen.get(&(target, len, res)).cloned().unwrap_or_default();
                    if got != expected {
                        failures.push(format!(
                            "weights {q}->{target} at length {len}, residue {res} differ from the coset"
                        ));
                    }
                }
            }
        }
    }
    StructureCheck { lengths_checked: lengths, residue_lengths_checked: residue_lengths, failures }
}

#[derive(Debug, Clone, Serialize)]
pub struct ComponentSummary {
    pub states: Vec<String>,
    pub d: u64,
    pub k0: u64,
    pub d_prime: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Reduction {
    pub power: u32,
    pub base: u32,
    pub added_zero_loop_initial: bool,
    pub components: Vec<ComponentSummary>,
    pub reduced_components: Vec<ComponentSummary>,
    #[serde(skip)]
    pub automaton: Dfao,
}

impl Reduction {
    pub fn is_special(&self) -> bool {
        self.reduced_components.iter().all(|c| c.d == 1 && c.k0 == 1)
    }
}

fn summarize_components(a: &Dfao, cfg: &StructureConfig) -> Result<Vec<ComponentSummary>> {
    a.reachable_final_components()
        .iter()
        .map(|comp| {
            let sub = a.restrict(comp)?;
            let an = analyze_dfao(&sub, cfg)?;
            Ok(ComponentSummary {
                states: comp.iter().map(|&q| a.state_name(q).to_string()).collect(),
                d: an.report.d,
                k0: an.report.k0,
                d_prime: an.report.d_prime,
            })
        })
        .collect()
}

/// Replace `a` by a power automaton in which every final component has
/// `d = k₀ = 1`. A fresh initial state looping on zero is added first when
/// needed so that the generated sequence is unchanged.
pub fn reduce_to_special(a: &Dfao, cfg: &StructureConfig) -> Result<Reduction> {
    let components = summarize_components(a, cfg)?;
    let power = components.iter().fold(1u64, |p, c| lcm(p, c.d * c.k0));
    let power = u32::try_from(power).map_err(|_| Error::CapExceeded { what: "power", cap: u32::MAX as u64 })?;
    let padded = a.with_zero_loop_initial();
    let added = padded.num_states() != a.num_states();
    let reduced = padded.power(power)?;
    let reduced_components = summarize_components(&reduced, cfg)?;
    Ok(Reduction {
        power,
        base: reduced.k(),
        added_zero_loop_initial: added,
        components,
        reduced_components,
        automaton: reduced,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn analysis(name: &str) -> Analysis {
        analyze_dfao(&catalog::load(name), &StructureConfig::default()).unwrap()
    }

    fn p(s: &str, n: usize) -> Perm {
        Perm::parse_cycles(s, n).unwrap()
    }

    #[test]
    fn split_coprime_parts() {
        assert_eq!(split_coprime(12, 2), (3, 4));
        assert_eq!(split_coprime(6, 3), (2, 3));
        assert_eq!(split_coprime(1, 5), (1, 1));
    }

    #[test]
    fn single_state_example_has_period_one() {
        let t = Transducer::new(
            2,
            vec![vec![0, 1, 2]],
            vec![0, 0],
            vec![p("(23)", 3), p("(123)", 3)],
            0,
        )
        .unwrap();
        let pg = ProductGraph::new(&t, 100).unwrap();
        assert_eq!(compute_d(&pg), 1);
        // closed identity walks exist for every length except 1
        let id_lengths: Vec<usize> = (1..8)
            .filter(|&len| crate::transducer::all_words(2, len).any(|w| t.run(0, &w).1.is_identity()))
            .collect();
        assert_eq!(id_lengths, vec![2, 3, 4, 5, 6, 7]);
    }

    #[test]
    fn six_state_group() {
        let an = analysis("six-state");
        let r = &an.report;
        assert_eq!(r.d, 2);
        assert_eq!(r.group, vec![p("id", 3), p("(123)", 3), p("(132)", 3)].into_iter().collect::<BTreeSet<_>>().into_iter().collect::<Vec<_>>());
        let odd: BTreeSet<Perm> = [p("(12)", 3), p("(13)", 3), p("(23)", 3)].into();
        assert_eq!(r.cosets[1].iter().cloned().collect::<BTreeSet<_>>(), odd);
        assert_eq!((r.d_prime, r.k0), (1, 1));
        assert!(r.d_dprime.iter().flatten().all(|&x| x == 2));
    }

    #[test]
    fn residue_refinement_on_sym3() {
        let r = analysis("base3-sym3").report;
        assert_eq!((r.d, r.d_prime, r.k0), (1, 2, 2));
        assert_eq!(r.group.len(), 6);
        assert!(r.group0.iter().all(|g| g.sign() == 1));
        assert_eq!(r.group0.len(), 3);
        assert_eq!(r.g0_prime, p("(23)", 3));
    }

    #[test]
    fn length_parity_has_k0_two() {
        let r = analysis("length-parity").report;
        assert_eq!((r.d, r.d_prime, r.k0, r.l0), (1, 2, 2, 0));
    }

    #[test]
    fn inverse_paths_return_home() {
        let an = analysis("five-state");
        let t = &an.transducer;
        let pg = ProductGraph::new(t, 1000).unwrap();
        for len in 0..=6 {
            for w in crate::transducer::all_words(2, len) {
                for q in 0..t.num_states() {
                    let back = inverse_path(&pg, q, &w).unwrap();
                    let full: Vec<u32> = w.iter().chain(&back).copied().collect();
                    let (end, weight) = t.run(q, &full);
                    assert_eq!(end, q);
                    assert!(weight.is_identity());
                }
            }
        }
    }

    #[test]
    fn coset_product_law() {
        let an = analysis("six-state");
        let t = &an.transducer;
        let pg = ProductGraph::new(t, 1000).unwrap();
        let d = an.report.d;
        let fams: Vec<_> = (0..t.num_states()).map(|q| pg.weight_classes(q, d)).collect();
        let n = t.num_states();
        for (q1, q2, q3) in (0..n).flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c)))) {
            for l1 in 0..d as usize {
                for l2 in 0..d as usize {
                    let prod: BTreeSet<Perm> = fams[q1][q2][l1]
                        .iter()
                        .flat_map(|a| fams[q2][q3][l2].iter().map(move |b| a.compose(b)))
                        .collect();
                    let direct: BTreeSet<Perm> = fams[q1][q3][(l1 + l2) % d as usize].iter().cloned().collect();
                    assert_eq!(prod, direct);
                }
            }
        }
    }
}
