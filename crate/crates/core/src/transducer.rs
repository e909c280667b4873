//! Naturally induced transducers.
//!
//! Each transducer state is a tuple of distinct automaton states. Reading a
//! digit moves every coordinate independently; the resulting tuple is a
//! permutation of another state tuple, and that permutation is the output.

use std::collections::HashMap;

use serde::Serialize;

use crate::automaton::{find_sync_word, scc_decompose, subset_search, Dfao, DigitSystem, Word};
use crate::error::{Error, Result};
use crate::perm::{GroupTable, Perm};

#[derive(Debug, Clone, PartialEq)]
pub struct Transducer {
    k: u32,
    tuples: Vec<Vec<u32>>,
    delta: Vec<u32>,
    lambda: Vec<Perm>,
    initial: usize,
}

impl DigitSystem for Transducer {
    fn base(&self) -> u32 {
        self.k
    }
    fn state_count(&self) -> usize {
        self.tuples.len()
    }
    #[inline]
    fn next(&self, q: usize, a: u32) -> usize {
        self.delta[q * self.k as usize + a as usize] as usize
    }
}

impl Transducer {
    /// Build from explicit tables indexed by `q * k + a`.
    pub fn new(
        k: u32,
        tuples: Vec<Vec<u32>>,
        delta: Vec<u32>,
        lambda: Vec<Perm>,
        initial: usize,
    ) -> Result<Self> {
        let n = tuples.len();
        let width = tuples.first().map_or(0, Vec::len);
        if k < 2 || n == 0 || initial >= n {
            return Err(Error::InvalidArgument("empty transducer or bad base".into()));
        }
        if delta.len() != n * k as usize || lambda.len() != delta.len() {
            return Err(Error::InvalidArgument("table sizes do not match".into()));
        }
        if tuples.iter().any(|t| t.len() != width) || lambda.iter().any(|p| p.degree() != width) {
            return Err(Error::InvalidArgument("inconsistent tuple width".into()));
        }
        if delta.iter().any(|&t| t as usize >= n) {
            return Err(Error::InvalidArgument("transition target out of range".into()));
        }
        Ok(Transducer { k, tuples, delta, lambda, initial })
    }

    /// The naturally induced transducer of `a`.
    ///
    /// States are the reachable subsets of minimal size, in breadth-first
    /// discovery order from the full set. Tuples list their members with the
    /// initial automaton state first and the rest in declared order.
    pub fn induced(a: &Dfao, subset_cap: usize) -> Result<Self> {
        let search = subset_search(a, subset_cap, |_, _| false)?;
        let n0 = search.sets.iter().map(|s| s.count()).min().expect("nonempty search");
        let q0 = a.initial();
        let rank = |q: &u32| {
            let q = *q as usize;
            if q == q0 {
                0
            } else if q < q0 {
                q + 1
            } else {
                q
            }
        };
        let tuples: Vec<Vec<u32>> = search
            .sets
            .iter()
            .filter(|s| s.count() == n0)
            .map(|s| {
                let mut t: Vec<u32> = s.iter().map(|q| q as u32).collect();
                t.sort_by_key(rank);
                t
            })
            .collect();
        let mut index: HashMap<Vec<u32>, u32> = HashMap::new();
        for (i, t) in tuples.iter().enumerate() {
            let mut key = t.clone();
            key.sort_unstable();
            index.insert(key, i as u32);
        }
        let k = a.k();
        let mut delta = Vec::with_capacity(tuples.len() * k as usize);
        let mut lambda = Vec::with_capacity(delta.capacity());
        for t in &tuples {
            for d in 0..k {
                let image: Vec<u32> = t.iter().map(|&q| a.step(q as usize, d) as u32).collect();
                let mut key = image.clone();
                key.sort_unstable();
                let target = index[&key];
                lambda.push(Perm::unsorting(&image, rank));
                delta.push(target);
            }
        }
        let initial = tuples
            .iter()
            .position(|t| t.contains(&(q0 as u32)))
            .ok_or_else(|| Error::Hypothesis("the initial state lies in no minimal subset".into()))?;
        Transducer::new(k, tuples, delta, lambda, initial)
    }

    /// One-coordinate transducer with identity outputs; equal to the induced
    /// transducer exactly when `a` is synchronizing.
    pub fn trivial(a: &Dfao) -> Self {
        let n = a.num_states();
        let k = a.k();
        let delta = (0..n).flat_map(|q| (0..k).map(move |d| a.step(q, d) as u32)).collect();
        Transducer {
            k,
            tuples: (0..n as u32).map(|q| vec![q]).collect(),
            delta,
            lambda: vec![Perm::identity(1); n * k as usize],
            initial: a.initial(),
        }
    }

    pub fn k(&self) -> u32 {
        self.k
    }
    pub fn num_states(&self) -> usize {
        self.tuples.len()
    }
    pub fn width(&self) -> usize {
        self.tuples[0].len()
    }
    pub fn initial(&self) -> usize {
        self.initial
    }
    pub fn tuple(&self, q: usize) -> &[u32] {
        &self.tuples[q]
    }
    pub fn step(&self, q: usize, a: u32) -> usize {
        self.next(q, a)
    }
    pub fn weight(&self, q: usize, a: u32) -> &Perm {
        &self.lambda[q * self.k as usize + a as usize]
    }
    pub fn weights(&self) -> &[Perm] {
        &self.lambda
    }

    /// End state and accumulated permutation `T(q, w)`.
    pub fn run(&self, q: usize, w: &[u32]) -> (usize, Perm) {
        let mut state = q;
        let mut acc = Perm::identity(self.width());
        for &a in w {
            acc = acc.compose(self.weight(state, a));
            state = self.next(state, a);
        }
        (state, acc)
    }

    /// Automaton state recovered from the transducer: `π₁(T(q₀,w)·δ(q₀,w))`.
    pub fn reconstruct(&self, w: &[u32]) -> u32 {
        let (end, t) = self.run(self.initial, w);
        // (t·x)[0] = x[t⁻¹(0)]
        self.tuples[end][t.inverse().apply(0)]
    }

    /// Reorder every tuple by `σ_q` and adjust outputs to
    /// `σ_q ∘ λ(q,a) ∘ σ_{δ(q,a)}⁻¹`. The first coordinate of the initial
    /// tuple must not move.
    pub fn reorder(&self, sigmas: &[Perm]) -> Result<Self> {
        if sigmas.len() != self.num_states() || sigmas.iter().any(|s| s.degree() != self.width()) {
            return Err(Error::InvalidArgument("one permutation per state required".into()));
        }
        let q0 = self.initial;
        if sigmas[q0].act(&self.tuples[q0])[0] != self.tuples[q0][0] {
            return Err(Error::InvalidArgument(
                "reordering moves the first coordinate of the initial tuple".into(),
            ));
        }
        let inv: Vec<Perm> = sigmas.iter().map(Perm::inverse).collect();
        let k = self.k as usize;
        let tuples = self.tuples.iter().zip(sigmas).map(|(t, s)| s.act(t)).collect();
        let lambda = (0..self.lambda.len())
            .map(|i| {
                let (q, target) = (i / k, self.delta[i] as usize);
                sigmas[q].compose(&self.lambda[i]).compose(&inv[target])
            })
            .collect();
        Transducer::new(self.k, tuples, self.delta.clone(), lambda, q0)
    }

    /// Check the defining properties of a naturally induced transducer of `a`.
    pub fn verify_induced(&self, a: &Dfao, subset_cap: usize) -> InducedDiagnostics {
        let mut checks = Vec::new();
        let mut add = |id: u8, name: &str, passed: bool, detail: String| {
            checks.push(PropertyCheck { id, name: name.into(), passed, detail });
        };
        let n0 = self.width();
        let min_size = subset_search(a, subset_cap, |_, _| false)
            .map(|s| s.sets.iter().map(|x| x.count()).min().unwrap());
        match min_size {
            Ok(m) => add(1, "tuple width is the minimal image size", m == n0, format!("n0 = {n0}, minimum = {m}")),
            Err(e) => add(1, "tuple width is the minimal image size", false, e.to_string()),
        }
        let first = self.tuples[self.initial][0] as usize;
        add(2, "initial tuple starts with the initial state", first == a.initial(), format!("first coordinate {}", a.state_name(first)));

        match GroupTable::generate(n0, &self.lambda, 1_000_000) {
            Ok(g) => add(3, "permutation group generated by outputs", true, format!("order {}", g.len())),
            Err(e) => add(3, "permutation group generated by outputs", false, e.to_string()),
        }

        let mut consistent = a.k() == self.k;
        if consistent {
            'outer: for q in 0..self.num_states() {
                for d in 0..self.k {
                    let moved: Vec<u32> =
                        self.tuples[q].iter().map(|&s| a.step(s as usize, d) as u32).collect();
                    if moved != self.weight(q, d).act(&self.tuples[self.next(q, d)]) {
                        consistent = false;
                        break 'outer;
                    }
                }
            }
        }
        add(4, "automaton step equals output applied to next tuple", consistent, String::new());

        let distinct = self.tuples.iter().all(|t| {
            let mut s = t.clone();
            s.sort_unstable();
            s.windows(2).all(|w| w[0] != w[1])
        });
        add(5, "tuple coordinates are distinct", distinct, String::new());

        let mut keys: Vec<Vec<u32>> = self
            .tuples
            .iter()
            .map(|t| {
                let mut s = t.clone();
                s.sort_unstable();
                s
            })
            .collect();
        keys.sort();
        let no_perm_pairs = keys.windows(2).all(|w| w[0] != w[1]);
        add(6, "no state is a permutation of another", no_perm_pairs, String::new());

        let sc = scc_decompose(self).components.len() == 1;
        add(7, "strongly connected", sc, String::new());

        match find_sync_word(self, subset_cap) {
            Ok(Some(w)) => add(8, "synchronizing", true, format!("word length {}", w.len())),
            Ok(None) => add(8, "synchronizing", false, "no synchronizing word".into()),
            Err(e) => add(8, "synchronizing", false, e.to_string()),
        }
        InducedDiagnostics { checks }
    }

    pub fn to_doc(&self, a: Option<&Dfao>) -> TransducerDoc {
        let name = |q: u32| match a {
            Some(a) => a.state_name(q as usize).to_string(),
            None => q.to_string(),
        };
        let k = self.k as usize;
        TransducerDoc {
            k: self.k,
            n0: self.width(),
            initial: self.initial,
            states: self.tuples.iter().map(|t| t.iter().map(|&q| name(q)).collect()).collect(),
            transitions: self.delta.chunks(k).map(|r| r.to_vec()).collect(),
            outputs: self.lambda.chunks(k).map(|r| r.to_vec()).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TransducerDoc {
    pub k: u32,
    pub n0: usize,
    pub initial: usize,
    pub states: Vec<Vec<String>>,
    pub transitions: Vec<Vec<u32>>,
    pub outputs: Vec<Vec<Perm>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PropertyCheck {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct InducedDiagnostics {
    pub checks: Vec<PropertyCheck>,
}

impl InducedDiagnostics {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
    pub fn check(&self, id: u8) -> &PropertyCheck {
        self.checks.iter().find(|c| c.id == id).expect("known property id")
    }
}

/// Words of length `len`, in lexicographic order.
pub fn all_words(k: u32, len: usize) -> impl Iterator<Item = Word> {
    let total = (k as u64).pow(len as u32);
    (0..total).map(move |n| crate::automaton::fixed_digits(n, k, len))
}
