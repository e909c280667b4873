//! Deterministic finite automata with output (DFAO) over base-k digits.
//!
//! Words are read most-significant digit first and the base-k expansion of
//! zero is the empty word. Output labels are opaque strings; an optional
//! complex embedding turns the sequence into a numeric one.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bits::BitSet;
use crate::error::{Error, Result};

/// A word over the digit alphabet `{0, .., k-1}`, most significant first.
pub type Word = Vec<u32>;

/// Base-k expansion of `n` without leading zeros. Zero maps to the empty word.
pub fn digits_of(mut n: u64, k: u32) -> Word {
    assert!(k >= 2, "base must be at least 2");
    let mut out = Vec::new();
    while n > 0 {
        out.push((n % k as u64) as u32);
        n /= k as u64;
    }
    out.reverse();
    out
}

/// `n mod k^t` written with exactly `t` digits.
pub fn fixed_digits(n: u64, k: u32, t: usize) -> Word {
    let mut out = vec![0; t];
    let mut m = n;
    for slot in out.iter_mut().rev() {
        *slot = (m % k as u64) as u32;
        m /= k as u64;
    }
    out
}

/// Integer value of a word. Panics if the value does not fit in `u128`.
pub fn value_of(w: &[u32], k: u32) -> u128 {
    w.iter().fold(0u128, |acc, &a| {
        acc.checked_mul(k as u128)
            .and_then(|x| x.checked_add(a as u128))
            .expect("word value overflows u128")
    })
}

/// Value of a word reduced modulo `m`.
pub fn value_mod(w: &[u32], k: u32, m: u64) -> u64 {
    let m = m as u128;
    w.iter()
        .fold(0u128, |acc, &a| (acc * k as u128 + a as u128) % m) as u64
}

/// Anything that reads digits deterministically: automata and transducers.
pub trait DigitSystem {
    fn base(&self) -> u32;
    fn state_count(&self) -> usize;
    fn next(&self, q: usize, a: u32) -> usize;

    fn run_from(&self, q: usize, w: &[u32]) -> usize {
        w.iter().fold(q, |s, &a| self.next(s, a))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Label {
    pub symbol: String,
    pub embedding: Option<Complex64>,
}

/// Strongly connected components of a digit graph.
#[derive(Debug, Clone, Serialize)]
pub struct SccDecomposition {
    /// Components as sorted state lists, in order of their smallest state.
    pub components: Vec<Vec<usize>>,
    pub component_of: Vec<usize>,
    /// A component is final when no edge leaves it.
    pub is_final: Vec<bool>,
    /// gcd of cycle lengths; 0 for a component without cycles.
    pub period: Vec<u64>,
}

impl SccDecomposition {
    pub fn final_components(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.components
            .iter()
            .zip(&self.is_final)
            .filter_map(|(c, &f)| f.then_some(c))
    }
}

pub fn scc_decompose<S: DigitSystem + ?Sized>(sys: &S) -> SccDecomposition {
    let n = sys.state_count();
    let k = sys.base();
    let succ = |v: usize, i: u32| sys.next(v, i);

    // iterative Tarjan
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comp_id = vec![usize::MAX; n];
    let mut raw: Vec<Vec<usize>> = Vec::new();
    let mut counter = 0;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut call: Vec<(usize, u32)> = vec![(root, 0)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut next_digit)) = call.last_mut() {
            if *next_digit < k {
                let w = succ(v, *next_digit);
                *next_digit += 1;
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        comp_id[w] = raw.len();
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    raw.push(comp);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..raw.len()).collect();
    order.sort_by_key(|&c| raw[c][0]);
    let mut renumber = vec![0; raw.len()];
    for (new, &old) in order.iter().enumerate() {
        renumber[old] = new;
    }
    let components: Vec<Vec<usize>> = order.iter().map(|&c| raw[c].clone()).collect();
    let component_of: Vec<usize> = comp_id.iter().map(|&c| renumber[c]).collect();

    let mut is_final = vec![true; components.len()];
    for v in 0..n {
        for a in 0..k {
            if component_of[succ(v, a)] != component_of[v] {
                is_final[component_of[v]] = false;
            }
        }
    }

    let mut level = vec![u64::MAX; n];
    let mut period = vec![0u64; components.len()];
    for (c, comp) in components.iter().enumerate() {
        let start = comp[0];
        level[start] = 0;
        let mut queue = VecDeque::from([start]);
        let mut g = 0u64;
        while let Some(v) = queue.pop_front() {
            for a in 0..k {
                let w = succ(v, a);
                if component_of[w] != c {
                    continue;
                }
                if level[w] == u64::MAX {
                    level[w] = level[v] + 1;
                    queue.push_back(w);
                } else {
                    g = num_integer::gcd(g, (level[v] + 1).abs_diff(level[w]));
                }
            }
        }
        period[c] = g;
    }

    SccDecomposition { components, component_of, is_final, period }
}

fn image<S: DigitSystem + ?Sized>(sys: &S, set: &BitSet, a: u32) -> BitSet {
    let mut out = BitSet::new(sys.state_count());
    for q in set.iter() {
        out.insert(sys.next(q, a));
    }
    out
}

/// Breadth-first search over subsets starting from the full state set.
/// Returns the discovered subsets in order with their parent links.
pub(crate) struct SubsetSearch {
    pub sets: Vec<BitSet>,
    pub parent: Vec<Option<(usize, u32)>>,
    pub depth: Vec<usize>,
}

impl SubsetSearch {
    pub fn word_to(&self, mut i: usize) -> Word {
        let mut w = Vec::new();
        while let Some((p, a)) = self.parent[i] {
            w.push(a);
            i = p;
        }
        w.reverse();
        w
    }
}

/// Explore reachable subsets from the full set. `stop` ends the search early
/// when it returns true for a freshly discovered set.
pub(crate) fn subset_search<S: DigitSystem + ?Sized>(
    sys: &S,
    cap: usize,
    mut stop: impl FnMut(&BitSet, usize) -> bool,
) -> Result<SubsetSearch> {
    let full = BitSet::full(sys.state_count());
    let mut seen: HashMap<BitSet, usize> = HashMap::new();
    let mut search = SubsetSearch { sets: vec![full.clone()], parent: vec![None], depth: vec![0] };
    seen.insert(full.clone(), 0);
    if stop(&full, 0) {
        return Ok(search);
    }
    let mut head = 0;
    while head < search.sets.len() {
        for a in 0..sys.base() {
            let img = image(sys, &search.sets[head], a);
            if seen.contains_key(&img) {
                continue;
            }
            if search.sets.len() >= cap {
                return Err(Error::CapExceeded { what: "subset search", cap: cap as u64 });
            }
            let id = search.sets.len();
            seen.insert(img.clone(), id);
            search.parent.push(Some((head, a)));
            search.depth.push(search.depth[head] + 1);
            search.sets.push(img);
            if stop(&search.sets[id], id) {
                return Ok(search);
            }
        }
        head += 1;
    }
    Ok(search)
}

/// Shortest word mapping every state to a single state, if one exists.
pub fn find_sync_word<S: DigitSystem + ?Sized>(sys: &S, cap: usize) -> Result<Option<Word>> {
    let search = subset_search(sys, cap, |s, _| s.count() == 1)?;
    let last = search.sets.len() - 1;
    Ok((search.sets[last].count() == 1).then(|| search.word_to(last)))
}

/// For each state q, the length of the shortest word w with δ(Q, w) = {q}.
pub fn sync_lengths<S: DigitSystem + ?Sized>(sys: &S, cap: usize) -> Result<Vec<Option<usize>>> {
    let n = sys.state_count();
    let mut found = vec![None; n];
    let mut remaining = n;
    subset_search(sys, cap, |s, id| {
        if s.count() == 1 {
            let q = s.iter().next().unwrap();
            if found[q].is_none() {
                found[q] = Some(id);
                remaining -= 1;
            }
        }
        remaining == 0
    })
    .map(|search| found.iter().map(|f| f.map(|id| search.depth[id])).collect())
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DfaoDoc {
    k: u32,
    states: Vec<String>,
    initial: String,
    transitions: BTreeMap<String, Vec<String>>,
    output: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    embedding: Option<BTreeMap<String, [f64; 2]>>,
}

/// A DFAO with a dense transition table.
#[derive(Debug, Clone, PartialEq)]
pub struct Dfao {
    k: u32,
    names: Vec<String>,
    delta: Vec<u32>,
    initial: usize,
    output: Vec<u32>,
    labels: Vec<Label>,
}

impl DigitSystem for Dfao {
    fn base(&self) -> u32 {
        self.k
    }
    fn state_count(&self) -> usize {
        self.names.len()
    }
    #[inline]
    fn next(&self, q: usize, a: u32) -> usize {
        self.delta[q * self.k as usize + a as usize] as usize
    }
}

impl Dfao {
    /// Build from parts. `outputs[q]` is the label symbol of state `q`;
    /// labels are numbered in order of first appearance.
    pub fn new(
        k: u32,
        names: Vec<String>,
        delta: Vec<u32>,
        initial: usize,
        outputs: &[String],
        embedding: Option<&BTreeMap<String, Complex64>>,
    ) -> Result<Self> {
        if k < 2 {
            return Err(Error::Schema(format!("base k = {k} must be at least 2")));
        }
        let n = names.len();
        if n == 0 {
            return Err(Error::Schema("no states".into()));
        }
        if initial >= n || outputs.len() != n || delta.len() != n * k as usize {
            return Err(Error::Schema("inconsistent table sizes".into()));
        }
        if let Some(&bad) = delta.iter().find(|&&t| t as usize >= n) {
            return Err(Error::Schema(format!("transition target {bad} out of range")));
        }
        let mut labels: Vec<Label> = Vec::new();
        let mut output = Vec::with_capacity(n);
        for sym in outputs {
            let id = match labels.iter().position(|l| &l.symbol == sym) {
                Some(i) => i,
                None => {
                    let embedding = match embedding {
                        Some(map) => Some(*map.get(sym).ok_or_else(|| {
                            Error::Schema(format!("embedding missing for label {sym:?}"))
                        })?),
                        None => None,
                    };
                    labels.push(Label { symbol: sym.clone(), embedding });
                    labels.len() - 1
                }
            };
            output.push(id as u32);
        }
        Ok(Dfao { k, names, delta, initial, output, labels })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: DfaoDoc = serde_json::from_str(text)?;
        let index: HashMap<&str, usize> =
            doc.states.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        if index.len() != doc.states.len() {
            return Err(Error::Schema("duplicate state names".into()));
        }
        let lookup = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| Error::Schema(format!("unknown state {name:?}")))
        };
        let initial = lookup(&doc.initial)?;
        if doc.transitions.len() != doc.states.len() || doc.output.len() != doc.states.len() {
            return Err(Error::Schema(
                "transitions and output must list every state exactly once".into(),
            ));
        }
        let mut delta = Vec::with_capacity(doc.states.len() * doc.k as usize);
        let mut outputs = Vec::with_capacity(doc.states.len());
        for s in &doc.states {
            let row = doc
                .transitions
                .get(s)
                .ok_or_else(|| Error::Schema(format!("no transitions for {s:?}")))?;
            if row.len() != doc.k as usize {
                return Err(Error::Schema(format!(
                    "state {s:?} has {} transitions, expected {}",
                    row.len(),
                    doc.k
                )));
            }
            for t in row {
                delta.push(lookup(t)? as u32);
            }
            outputs.push(
                doc.output
                    .get(s)
                    .ok_or_else(|| Error::Schema(format!("no output for {s:?}")))?
                    .clone(),
            );
        }
        let embedding = doc.embedding.map(|m| {
            m.into_iter()
                .map(|(l, [re, im])| (l, Complex64::new(re, im)))
                .collect::<BTreeMap<_, _>>()
        });
        if let Some(map) = &embedding {
            if let Some(extra) = map.keys().find(|l| !outputs.contains(l)) {
                return Err(Error::Schema(format!("embedding for unknown label {extra:?}")));
            }
        }
        Dfao::new(doc.k, doc.states, delta, initial, &outputs, embedding.as_ref())
    }

    pub fn to_json(&self) -> String {
        let k = self.k as usize;
        let doc = DfaoDoc {
            k: self.k,
            states: self.names.clone(),
            initial: self.names[self.initial].clone(),
            transitions: (0..self.names.len())
                .map(|q| {
                    let row = (0..k)
                        .map(|a| self.names[self.delta[q * k + a] as usize].clone())
                        .collect();
                    (self.names[q].clone(), row)
                })
                .collect(),
            output: (0..self.names.len())
                .map(|q| (self.names[q].clone(), self.label(q).symbol.clone()))
                .collect(),
            embedding: self.has_embedding().then(|| {
                self.labels
                    .iter()
                    .map(|l| {
                        let z = l.embedding.unwrap();
                        (l.symbol.clone(), [z.re, z.im])
                    })
                    .collect()
            }),
        };
        serde_json::to_string_pretty(&doc).expect("serializable")
    }

    pub fn k(&self) -> u32 {
        self.k
    }
    pub fn num_states(&self) -> usize {
        self.names.len()
    }
    pub fn initial(&self) -> usize {
        self.initial
    }
    pub fn state_name(&self, q: usize) -> &str {
        &self.names[q]
    }
    pub fn state_names(&self) -> &[String] {
        &self.names
    }
    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
    pub fn labels(&self) -> &[Label] {
        &self.labels
    }
    pub fn label_id(&self, q: usize) -> usize {
        self.output[q] as usize
    }
    pub fn label(&self, q: usize) -> &Label {
        &self.labels[self.output[q] as usize]
    }
    pub fn has_embedding(&self) -> bool {
        self.labels.iter().all(|l| l.embedding.is_some())
    }
    pub fn step(&self, q: usize, a: u32) -> usize {
        self.next(q, a)
    }
    pub fn run(&self, q: usize, w: &[u32]) -> usize {
        self.run_from(q, w)
    }

    /// State reached from the initial state on the base-k expansion of `n`.
    pub fn state_at(&self, n: u64) -> usize {
        self.run(self.initial, &digits_of(n, self.k))
    }

    pub fn term(&self, n: u64) -> &Label {
        self.label(self.state_at(n))
    }

    /// States reached on `(n)_k` for every `n < limit`, via
    /// `state(n) = δ(state(n / k), n mod k)`.
    pub fn state_sequence(&self, limit: usize) -> Vec<u32> {
        let k = self.k as usize;
        let mut out = vec![0u32; limit];
        if limit == 0 {
            return out;
        }
        out[0] = self.initial as u32;
        for n in 1..limit {
            let parent = if n < k { self.initial } else { out[n / k] as usize };
            out[n] = self.delta[parent * k + n % k];
        }
        out
    }

    /// The same automaton with transitions restricted to a closed set of
    /// states. The first listed state becomes initial.
    pub fn restrict(&self, states: &[usize]) -> Result<Dfao> {
        let mut map = vec![u32::MAX; self.num_states()];
        for (i, &q) in states.iter().enumerate() {
            map[q] = i as u32;
        }
        let k = self.k as usize;
        let mut delta = Vec::with_capacity(states.len() * k);
        for &q in states {
            for a in 0..k {
                let t = map[self.delta[q * k + a] as usize];
                if t == u32::MAX {
                    return Err(Error::InvalidArgument("state set is not closed".into()));
                }
                delta.push(t);
            }
        }
        self.rebuild(states, delta, 0, self.k)
    }

    fn rebuild(&self, states: &[usize], delta: Vec<u32>, initial: usize, k: u32) -> Result<Dfao> {
        let names = states.iter().map(|&q| self.names[q].clone()).collect();
        let outputs: Vec<String> = states.iter().map(|&q| self.label(q).symbol.clone()).collect();
        let emb = self.embedding_map();
        Dfao::new(k, names, delta, initial, &outputs, emb.as_ref())
    }

    fn embedding_map(&self) -> Option<BTreeMap<String, Complex64>> {
        self.has_embedding().then(|| {
            self.labels
                .iter()
                .map(|l| (l.symbol.clone(), l.embedding.unwrap()))
                .collect()
        })
    }

    /// The automaton over base `k^p` in which digit `D` acts as the
    /// `p`-digit word `fixed_digits(D, k, p)`.
    pub fn power(&self, p: u32) -> Result<Dfao> {
        if p == 0 {
            return Err(Error::InvalidArgument("power must be positive".into()));
        }
        let big = self
            .k
            .checked_pow(p)
            .filter(|&b| (b as u64) * (self.num_states() as u64) <= 1 << 26)
            .ok_or(Error::CapExceeded { what: "power alphabet", cap: 1 << 26 })?;
        let mut delta = Vec::with_capacity(self.num_states() * big as usize);
        for q in 0..self.num_states() {
            for d in 0..big {
                let w = fixed_digits(d as u64, self.k, p as usize);
                delta.push(self.run(q, &w) as u32);
            }
        }
        let all: Vec<usize> = (0..self.num_states()).collect();
        self.rebuild(&all, delta, self.initial, big)
    }

    /// An equivalent automaton whose initial state loops on digit 0, so that
    /// leading zeros do not change the output. Returns a copy when the
    /// initial state already loops.
    pub fn with_zero_loop_initial(&self) -> Dfao {
        if self.next(self.initial, 0) == self.initial {
            return self.clone();
        }
        let n = self.num_states();
        let k = self.k as usize;
        let mut names = self.names.clone();
        let mut fresh = format!("{}*", self.names[self.initial]);
        while names.contains(&fresh) {
            fresh.push('*');
        }
        names.push(fresh);
        let mut delta = self.delta.clone();
        delta.push(n as u32);
        for a in 1..k {
            delta.push(self.delta[self.initial * k + a]);
        }
        let mut outputs: Vec<String> = (0..n).map(|q| self.label(q).symbol.clone()).collect();
        outputs.push(self.label(self.initial).symbol.clone());
        Dfao::new(self.k, names, delta, n, &outputs, self.embedding_map().as_ref())
            .expect("valid extension")
    }

    pub fn reachable_from_initial(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        seen[self.initial] = true;
        let mut queue = VecDeque::from([self.initial]);
        while let Some(q) = queue.pop_front() {
            for a in 0..self.k {
                let t = self.next(q, a);
                if !seen[t] {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
        seen
    }

    pub fn is_strongly_connected(&self) -> bool {
        scc_decompose(self).components.len() == 1
    }

    pub fn scc(&self) -> SccDecomposition {
        scc_decompose(self)
    }

    /// Final components reachable from the initial state.
    pub fn reachable_final_components(&self) -> Vec<Vec<usize>> {
        let reach = self.reachable_from_initial();
        let scc = self.scc();
        scc.final_components()
            .filter(|c| reach[c[0]])
            .cloned()
            .collect()
    }
}
