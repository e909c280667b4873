//! Permutations of tuple positions and finite permutation groups.
//!
//! A permutation is stored as a 0-based forward map. It acts on tuples by
//! moving the entry at position `i` to position `σ(i)`, and `a.compose(b)`
//! is ordinary composition `a ∘ b`, so `(a ∘ b)·x = a·(b·x)`.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u32).collect())
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            let slot = seen
                .get_mut(i as usize)
                .ok_or_else(|| Error::InvalidArgument(format!("image {i} out of range")))?;
            if std::mem::replace(slot, true) {
                return Err(Error::InvalidArgument(format!("image {i} repeated")));
            }
        }
        Ok(Perm(images))
    }

    /// Parse 1-based cycle notation such as `(12)(34)`, `(1,10)` or `id`.
    pub fn parse_cycles(s: &str, n: usize) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("bad cycle notation {s:?}"));
        let mut images: Vec<u32> = (0..n as u32).collect();
        let s = s.trim();
        if s == "id" {
            return Ok(Perm(images));
        }
        let mut rest = s;
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(bad)?;
            let close = body.find(')').ok_or_else(bad)?;
            let inner = &body[..close];
            rest = body[close + 1..].trim_start();
            let points: Vec<u32> = if inner.contains(',') {
                inner
                    .split(',')
                    .map(|p| p.trim().parse::<u32>().map_err(|_| bad()))
                    .collect::<Result<_>>()?
            } else {
                inner
                    .chars()
                    .map(|c| c.to_digit(10).ok_or_else(bad))
                    .collect::<Result<_>>()?
            };
            if points.iter().any(|&p| p == 0 || p as usize > n) {
                return Err(bad());
            }
            for (i, &p) in points.iter().enumerate() {
                images[p as usize - 1] = points[(i + 1) % points.len()] - 1;
            }
        }
        Perm::from_images(images)
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i as u32 == v)
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v as usize] = i as u32;
        }
        Perm(inv)
    }

    pub fn pow(&self, e: u64) -> Perm {
        let mut out = Perm::identity(self.degree());
        for _ in 0..e {
            out = out.compose(self);
        }
        out
    }

    /// `σ·x`, with `(σ·x)[σ(i)] = x[i]`.
    pub fn act<T: Clone>(&self, x: &[T]) -> Vec<T> {
        let mut out = x.to_vec();
        for (i, v) in x.iter().enumerate() {
            out[self.0[i] as usize] = v.clone();
        }
        out
    }

    /// The permutation σ with `x = σ·sorted`, where `sorted` lists the
    /// entries of `x` in increasing `key` order. Entries must be distinct.
    pub fn unsorting<T, K: Ord>(x: &[T], key: impl Fn(&T) -> K) -> Perm {
        let mut order: Vec<u32> = (0..x.len() as u32).collect();
        order.sort_by_key(|&i| key(&x[i as usize]));
        Perm(order)
    }

    pub fn sign(&self) -> i8 {
        let mut seen = vec![false; self.degree()];
        let mut parity = 0;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i] as usize;
                len += 1;
            }
            parity += len - 1;
        }
        if parity % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            let mut cyc = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cyc.push(i as u32);
                i = self.0[i] as usize;
            }
            out.push(cyc);
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("id");
        }
        let sep = if self.degree() > 9 { "," } else { "" };
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
            write!(f, "({})", pts.join(sep))?;
        }
        Ok(())
    }
}

/// A finite group of permutations with its elements in lexicographic order,
/// so the identity is element 0.
#[derive(Clone, Debug)]
pub struct GroupTable {
    degree: usize,
    elements: Vec<Perm>,
    index: HashMap<Perm, u32>,
}

impl GroupTable {
    /// Closure of `gens` under composition.
    pub fn generate(degree: usize, gens: &[Perm], cap: usize) -> Result<Self> {
        let id = Perm::identity(degree);
        let mut seen: HashMap<Perm, ()> = HashMap::from([(id.clone(), ())]);
        let mut queue = VecDeque::from([id]);
        let mut elements = Vec::new();
        while let Some(g) = queue.pop_front() {
            for h in gens {
                let gh = g.compose(h);
                if !seen.contains_key(&gh) {
                    if seen.len() >= cap {
                        return Err(Error::CapExceeded { what: "group order", cap: cap as u64 });
                    }
                    seen.insert(gh.clone(), ());
                    queue.push_back(gh);
                }
            }
            elements.push(g);
        }
        Ok(Self::from_sorted(degree, elements))
    }

    /// Group from an explicit element list; fails unless the list is closed
    /// under composition and contains the identity.
    pub fn from_elements(degree: usize, elements: Vec<Perm>) -> Result<Self> {
        let table = Self::from_sorted(degree, elements);
        if table.position(&Perm::identity(degree)).is_none() {
            return Err(Error::InvalidArgument("element list lacks the identity".into()));
        }
        for a in &table.elements {
            for b in &table.elements {
                if table.position(&a.compose(b)).is_none() {
                    return Err(Error::InvalidArgument("element list is not closed".into()));
                }
            }
        }
        Ok(table)
    }

    /// Group from elements already known to form a group.
    pub(crate) fn from_trusted(degree: usize, elements: Vec<Perm>) -> Self {
        Self::from_sorted(degree, elements)
    }

    fn from_sorted(degree: usize, mut elements: Vec<Perm>) -> Self {
        elements.sort();
        elements.dedup();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        GroupTable { degree, elements, index }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }
    pub fn len(&self) -> usize {
        self.elements.len()
    }
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }
    pub fn get(&self, i: usize) -> &Perm {
        &self.elements[i]
    }
    pub fn position(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).map(|&i| i as usize)
    }
    pub fn contains(&self, p: &Perm) -> bool {
        self.index.contains_key(p)
    }

    /// Row-major table of `i ∘ j` as element indices.
    pub fn cayley(&self) -> Vec<u32> {
        let n = self.len();
        let mut out = Vec::with_capacity(n * n);
        for a in &self.elements {
            for b in &self.elements {
                out.push(self.index[&a.compose(b)]);
            }
        }
        out
    }

    /// Indices of inverses.
    pub fn inverses(&self) -> Vec<u32> {
        self.elements.iter().map(|g| self.index[&g.inverse()]).collect()
    }

    /// The left coset `g ∘ H` for a list of elements `H`.
    pub fn left_coset(g: &Perm, h: &[Perm]) -> Vec<Perm> {
        let mut out: Vec<Perm> = h.iter().map(|x| g.compose(x)).collect();
        out.sort();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str, n: usize) -> Perm {
        Perm::parse_cycles(s, n).unwrap()
    }

    #[test]
    fn composition_order_matches_walk_products() {
        // (12)∘(23)∘id∘(12) = (13)
        let t = p("(12)", 3).compose(&p("(23)", 3)).compose(&p("id", 3)).compose(&p("(12)", 3));
        assert_eq!(t, p("(13)", 3));
        assert_eq!(p("(23)", 3).compose(&p("(12)", 3)), p("(132)", 3));
    }

    #[test]
    fn action_moves_entries_forward() {
        let x = ["a", "b", "c"];
        assert_eq!(p("(13)", 3).act(&x), vec!["c", "b", "a"]);
        assert_eq!(p("(123)", 3).act(&x), vec!["c", "a", "b"]);
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(p("(132)", 3).to_string(), "(132)");
        assert_eq!(Perm::identity(4).to_string(), "id");
        assert_eq!(p("(1,10)", 10).to_string(), "(1,10)");
        assert!(Perm::parse_cycles("(14)", 3).is_err());
    }

    #[test]
    fn symmetric_group_of_three() {
        let g = GroupTable::generate(3, &[p("(12)", 3), p("(123)", 3)], 100).unwrap();
        assert_eq!(g.len(), 6);
        assert!(g.get(0).is_identity());
        let alt = GroupTable::generate(3, &[p("(123)", 3)], 100).unwrap();
        assert_eq!(alt.len(), 3);
        assert!(GroupTable::generate(3, &[p("(12)", 3), p("(123)", 3)], 4).is_err());
        assert!(GroupTable::from_elements(3, vec![Perm::identity(3), p("(123)", 3)]).is_err());
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = Perm> {
        Just((0..n as u32).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Perm::from_images(v).unwrap())
    }

    proptest! {
        #[test]
        fn action_is_compatible_with_composition(a in arb_perm(5), b in arb_perm(5)) {
            let x: Vec<u32> = (10..15).collect();
            prop_assert_eq!(a.compose(&b).act(&x), a.act(&b.act(&x)));
        }

        #[test]
        fn inverse_and_sign(a in arb_perm(6), b in arb_perm(6)) {
            prop_assert!(a.compose(&a.inverse()).is_identity());
            prop_assert_eq!(a.compose(&b).sign(), a.sign() * b.sign());
            prop_assert_eq!(Perm::parse_cycles(&a.to_string(), 6).unwrap(), a);
        }

        #[test]
        fn unsorting_recovers_tuple(a in arb_perm(6)) {
            let sorted: Vec<u32> = (0..6).map(|i| i * 7).collect();
            let x = a.act(&sorted);
            prop_assert_eq!(Perm::unsorting(&x, |v| *v), a);
        }
    }
}
